//! Combinatorial measures of an instance set: per-column majority and
//! balance (MAJ, MAX, MAMI), hitting sets, specifying sets and the teaching
//! dimensions they induce (ETD, SETD), the density DEN, and a consolidated
//! report of all the inequalities that tie them to the optimal tree depth.

use rand::Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::instance::InstanceSet;
use crate::solvers;

/// `ceil(log2 n)` for `n >= 1`, without float round-off.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Per-column majority vector; a tie counts as 1.
pub fn maj(a: &InstanceSet) -> BitVector {
    let n = a.len();
    BitVector::from_fn(a.width(), |j| 2 * a.col(j).count_ones() >= n)
}

/// Largest number of ones in any single column.
pub fn max_ones(a: &InstanceSet) -> usize {
    (0..a.width()).map(|j| a.col(j).count_ones()).max().unwrap()
}

/// Best balanced split over all columns: `max_j min(|A_{j,0}|, |A_{j,1}|)`.
/// Equals `MAX(A + MAJ(A))`, the least achievable column maximum under
/// shifting.
pub fn mami(a: &InstanceSet) -> usize {
    let n = a.len();
    let value = (0..a.width())
        .map(|j| {
            let ones = a.col(j).count_ones();
            ones.min(n - ones)
        })
        .max()
        .unwrap();
    debug_assert_eq!(
        value,
        max_ones(&a.xor_shift(&maj(a)).expect("widths agree")),
        "the two characterizations of MAMI disagree"
    );
    value
}

// ---------------------------------------------------------------------------
// Minimum covers: the shared engine behind hitting sets and strong
// specifying sets. `sets[j]` is the set of row indices column j covers;
// `targets` are the rows that must be covered.
// ---------------------------------------------------------------------------

fn greedy_cover(sets: &[BitVector], targets: &BitVector) -> Option<Vec<usize>> {
    let mut unhit = targets.clone();
    let mut picks = Vec::new();
    while !unhit.is_zero() {
        let mut best = (0usize, 0usize);
        for (j, s) in sets.iter().enumerate() {
            let hits = s.and(&unhit).count_ones();
            if hits > best.1 {
                best = (j, hits);
            }
        }
        if best.1 == 0 {
            return None;
        }
        picks.push(best.0);
        unhit = unhit.and_not(&sets[best.0]);
    }
    picks.sort_unstable();
    Some(picks)
}

struct CoverSearch<'a> {
    sets: &'a [BitVector],
    banned: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    bound: usize,
}

impl CoverSearch<'_> {
    fn run(&mut self, unhit: &BitVector) {
        if unhit.is_zero() {
            if self.chosen.len() < self.bound {
                self.bound = self.chosen.len();
                let mut sol = self.chosen.clone();
                sol.sort_unstable();
                self.best = Some(sol);
            }
            return;
        }
        // Each usable column covers at most max_cover residual rows, so at
        // least ceil(residual/max_cover) more picks are needed.
        let mut max_cover = 0;
        for (j, s) in self.sets.iter().enumerate() {
            if !self.banned[j] {
                max_cover = max_cover.max(s.and(unhit).count_ones());
            }
        }
        if max_cover == 0 {
            return;
        }
        let floor = unhit.count_ones().div_ceil(max_cover);
        if self.chosen.len() + floor >= self.bound {
            return;
        }
        let r = unhit.first_one().unwrap();
        let candidates: Vec<usize> = (0..self.sets.len())
            .filter(|&j| !self.banned[j] && self.sets[j].get(r))
            .collect();
        // Branch over the columns covering row r; once a column's branch is
        // explored, later branches may exclude it without losing solutions.
        for &j in &candidates {
            self.chosen.push(j);
            self.run(&unhit.and_not(&self.sets[j]));
            self.chosen.pop();
            self.banned[j] = true;
        }
        for &j in &candidates {
            self.banned[j] = false;
        }
    }
}

/// Exact minimum cover, or `None` when no cover of size <= `cap` exists
/// (with `cap = None`: no cover at all, i.e. some target is uncoverable).
fn min_cover(sets: &[BitVector], targets: &BitVector, cap: Option<usize>) -> Option<Vec<usize>> {
    if targets.is_zero() {
        return Some(Vec::new());
    }
    let greedy = greedy_cover(sets, targets)?;
    let (best, bound) = match cap {
        Some(c) if greedy.len() > c => (None, c + 1),
        _ => {
            let b = greedy.len();
            (Some(greedy), b)
        }
    };
    let mut search = CoverSearch {
        sets,
        banned: vec![false; sets.len()],
        chosen: Vec::new(),
        best,
        bound,
    };
    search.run(targets);
    search.best
}

// ---------------------------------------------------------------------------
// Hitting sets
// ---------------------------------------------------------------------------

fn nonzero_rows(a: &InstanceSet) -> BitVector {
    BitVector::from_fn(a.len(), |i| !a.row(i).is_zero())
}

/// A minimum set of columns touching a 1 in every nonzero row. Exact
/// branch-and-bound with the `(|A|-1)/MAX(A)` counting floor for pruning.
pub fn hitting_set_min(a: &InstanceSet) -> Vec<usize> {
    min_cover(&cols_of(a), &nonzero_rows(a), None)
        .expect("every nonzero row has a 1, so a hitting set exists")
}

/// Greedy hitting set: repeatedly the column hitting the most unhit rows,
/// lowest index on ties. Every pick removes at least a `1/DEN(A)` fraction
/// of the residual rows beyond one, bounding the size by
/// `DEN(A) ln(n-1) + 2`.
pub fn hitting_set_greedy(a: &InstanceSet) -> Vec<usize> {
    let targets = nonzero_rows(a);
    if targets.is_zero() {
        return Vec::new();
    }
    greedy_cover(&cols_of(a), &targets).expect("every nonzero row has a 1")
}

fn cols_of(a: &InstanceSet) -> Vec<BitVector> {
    (0..a.width()).map(|j| a.col(j).clone()).collect()
}

// ---------------------------------------------------------------------------
// Specifying sets
// ---------------------------------------------------------------------------

/// Row/column agreement structure of a hypothesis against an instance set:
/// `agree[j]` holds the rows whose bit j matches `h`, and `h_row` is the row
/// equal to `h` itself, when present. This is the shifted set `A + h` in
/// disguise: row i of `A + h` has a 1 in column j exactly when i is missing
/// from `agree[j]`.
struct HypothesisView {
    agree: Vec<BitVector>,
    h_row: Option<usize>,
}

fn hypothesis_view(a: &InstanceSet, h: &BitVector) -> Result<HypothesisView> {
    if h.width() != a.width() {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: h.width(),
        });
    }
    let agree = (0..a.width())
        .map(|j| {
            if h.get(j) {
                a.col(j).clone()
            } else {
                a.col(j).not()
            }
        })
        .collect();
    Ok(HypothesisView {
        agree,
        h_row: a.position(h),
    })
}

/// Searches all column subsets of size exactly `k` (lexicographic order) for
/// one on which at most one row agrees with the hypothesis.
fn spec_set_of_size(view: &HypothesisView, n: usize, k: usize) -> Option<Vec<usize>> {
    fn go(
        agree: &[BitVector],
        start: usize,
        left: usize,
        live: &BitVector,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if live.count_ones() <= 1 {
            return true;
        }
        if left == 0 {
            return false;
        }
        for j in start..=(agree.len() - left) {
            chosen.push(j);
            let next = live.and(&agree[j]);
            if go(agree, j + 1, left - 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let all = BitVector::ones(n);
    let mut chosen = Vec::with_capacity(k);
    go(&view.agree, 0, k, &all, &mut chosen).then_some(chosen)
}

/// Minimum specifying set for `h` with respect to `A`: the smallest set of
/// columns on which at most one row of `A` agrees with `h`. Iterative
/// deepening over sizes; `budget` aborts the search early.
pub fn specifying_set_min(
    a: &InstanceSet,
    h: &BitVector,
    budget: Option<usize>,
) -> Result<Vec<usize>> {
    let view = hypothesis_view(a, h)?;
    for k in 0..=a.width() {
        if let Some(b) = budget {
            if k > b {
                return Err(Error::Overbudget { budget: b });
            }
        }
        if let Some(s) = spec_set_of_size(&view, a.len(), k) {
            return Ok(s);
        }
    }
    unreachable!("the full column set always specifies: rows are distinct")
}

/// Greedy specifying set: peel off the rows agreeing with `h` by repeatedly
/// querying the column that eliminates the most of them, until at most one
/// remains. Polynomial time; size at most `DEN(A) ln n + 1`.
pub fn specifying_set_greedy(a: &InstanceSet, h: &BitVector) -> Result<Vec<usize>> {
    let view = hypothesis_view(a, h)?;
    let mut live = BitVector::ones(a.len());
    let mut picks = Vec::new();
    while live.count_ones() > 1 {
        let mut best = (0usize, 0usize);
        for (j, agree) in view.agree.iter().enumerate() {
            let eliminated = live.and_not(agree).count_ones();
            if eliminated > best.1 {
                best = (j, eliminated);
            }
        }
        assert!(best.1 > 0, "distinct live rows always split on some column");
        picks.push(best.0);
        live = live.and(&view.agree[best.0]);
    }
    picks.sort_unstable();
    Ok(picks)
}

/// Minimum strong specifying set: exactly one agreeing row when `h` is in
/// `A`, none otherwise. Equals a minimum hitting set of the shifted set
/// `A + h`.
pub fn strong_specifying_set_min(a: &InstanceSet, h: &BitVector) -> Result<Vec<usize>> {
    let view = hypothesis_view(a, h)?;
    Ok(strong_from_view(&view, a.len()))
}

fn strong_from_view(view: &HypothesisView, n: usize) -> Vec<usize> {
    let targets = BitVector::from_fn(n, |i| view.h_row != Some(i));
    let disagree: Vec<BitVector> = view.agree.iter().map(|a| a.not()).collect();
    min_cover(&disagree, &targets, None)
        .expect("distinct rows each differ from h somewhere, so a cover exists")
}

// ---------------------------------------------------------------------------
// The teaching dimensions: maxima over all 2^m hypotheses
// ---------------------------------------------------------------------------

fn check_etd_limit(a: &InstanceSet, limits: &Limits) -> Result<()> {
    if a.width() > limits.etd_exact_m_limit {
        return Err(Error::ExactLimitExceeded {
            what: "width m",
            value: a.width(),
            limit: limits.etd_exact_m_limit,
        });
    }
    Ok(())
}

/// Exact extended teaching dimension: `max_h ETD(A, h)` over all of `B_m`.
pub fn etd(a: &InstanceSet, limits: &Limits) -> Result<usize> {
    check_etd_limit(a, limits)?;
    let m = a.width();
    let n = a.len();
    let mut best = 0usize;
    for idx in 0..(1u64 << m) {
        let h = BitVector::from_index(m, idx);
        let view = hypothesis_view(a, &h).expect("widths agree");
        // A specifying set of the current max size rules this h out cheaply.
        if spec_set_of_size(&view, n, best).is_some() {
            continue;
        }
        for k in best + 1..=m {
            if spec_set_of_size(&view, n, k).is_some() {
                best = k;
                break;
            }
        }
    }
    Ok(best)
}

/// `ETD(A, 0)`: the zero-hypothesis specialization.
pub fn etd_z(a: &InstanceSet) -> usize {
    specifying_set_min(a, &BitVector::zeros(a.width()), None)
        .expect("widths agree")
        .len()
}

/// Sampled lower bound on ETD when the exact sweep is out of reach: the
/// majority vector, every row of `A`, and `samples` random hypotheses.
pub fn etd_sampled(a: &InstanceSet, samples: usize, rng: &mut impl Rng) -> usize {
    let mut candidates = vec![maj(a)];
    candidates.extend(a.rows().iter().cloned());
    for _ in 0..samples {
        candidates.push(BitVector::from_fn(a.width(), |_| rng.gen::<bool>()));
    }
    candidates
        .iter()
        .map(|h| specifying_set_min(a, h, None).expect("widths agree").len())
        .max()
        .unwrap()
}

/// Exact strong extended teaching dimension: `max_h HS(A + h)`.
pub fn setd(a: &InstanceSet, limits: &Limits) -> Result<usize> {
    check_etd_limit(a, limits)?;
    let m = a.width();
    let n = a.len();
    let mut best = 0usize;
    for idx in 0..(1u64 << m) {
        let h = BitVector::from_index(m, idx);
        let view = hypothesis_view(a, &h).expect("widths agree");
        let targets = BitVector::from_fn(n, |i| view.h_row != Some(i));
        let disagree: Vec<BitVector> = view.agree.iter().map(|a| a.not()).collect();
        if min_cover(&disagree, &targets, Some(best)).is_some() {
            continue;
        }
        best = min_cover(&disagree, &targets, None)
            .expect("a cover always exists")
            .len();
    }
    Ok(best)
}

/// `SETD(A, 0) = HS(A)`.
pub fn setd_z(a: &InstanceSet) -> usize {
    strong_specifying_set_min(a, &BitVector::zeros(a.width()))
        .expect("widths agree")
        .len()
}

/// Strong specifying set size recomputed from the definition by subset
/// search, independent of the hitting-set route. Used to cross-check
/// the `HS(A) = SETDz(A)` identity.
pub fn strong_specifying_size_by_definition(a: &InstanceSet, h: &BitVector) -> Result<usize> {
    let view = hypothesis_view(a, h)?;
    let n = a.len();
    let want = usize::from(view.h_row.is_some());
    fn go(agree: &[BitVector], start: usize, left: usize, live: &BitVector, want: usize) -> bool {
        if live.count_ones() == want {
            return true;
        }
        if left == 0 {
            return false;
        }
        for j in start..=(agree.len() - left) {
            if go(agree, j + 1, left - 1, &live.and(&agree[j]), want) {
                return true;
            }
        }
        false
    }
    let all = BitVector::ones(n);
    for k in 0..=a.width() {
        if go(&view.agree, 0, k, &all, want) {
            return Ok(k);
        }
    }
    unreachable!("the full column set is always strongly specifying")
}

// ---------------------------------------------------------------------------
// Density
// ---------------------------------------------------------------------------

/// Exact density `max_B (|B|-1)/MAMI(B)` by enumerating every subset of at
/// least two rows, plus one maximizing subset (the first in enumeration
/// order). A single row has density 0 with the empty witness.
pub fn den_exact(a: &InstanceSet, limits: &Limits) -> Result<(Fraction, Vec<usize>)> {
    let n = a.len();
    if n > limits.den_exact_n_limit {
        return Err(Error::ExactLimitExceeded {
            what: "row count n",
            value: n,
            limit: limits.den_exact_n_limit,
        });
    }
    assert!(n <= 60, "subset enumeration requires n <= 60");
    if n == 1 {
        return Ok((Fraction::zero(), Vec::new()));
    }
    let cols: Vec<u64> = (0..a.width()).map(|j| a.col(j).low_word()).collect();
    let mut best = Fraction::zero();
    let mut witness_mask = 0u64;
    for mask in 1u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let value = Fraction::new((size - 1) as u64, mask_mami(&cols, mask, size) as u64);
        if value > best {
            best = value;
            witness_mask = mask;
        }
    }
    let witness = (0..n).filter(|&i| witness_mask >> i & 1 == 1).collect();
    Ok((best, witness))
}

fn mask_mami(cols: &[u64], mask: u64, size: usize) -> usize {
    let value = cols
        .iter()
        .map(|&c| {
            let ones = (c & mask).count_ones() as usize;
            ones.min(size - ones)
        })
        .max()
        .unwrap();
    debug_assert!(value >= 1, "distinct rows always split on some column");
    value
}

fn subset_value(a: &InstanceSet, members: &BitVector) -> Option<Fraction> {
    let size = members.count_ones();
    if size < 2 {
        return None;
    }
    let mami = (0..a.width())
        .map(|j| {
            let ones = a.col(j).and(members).count_ones();
            ones.min(size - ones)
        })
        .max()
        .unwrap();
    Some(Fraction::new((size - 1) as u64, mami as u64))
}

/// Valid lower bound on the density from hill climbing: start from `B = A`
/// (plus `effort` random restarts), toggle single rows while the fraction
/// improves, preferring the larger subset on value ties.
pub fn den_lower(a: &InstanceSet, effort: usize, rng: &mut impl Rng) -> (Fraction, Vec<usize>) {
    let n = a.len();
    if n == 1 {
        return (Fraction::zero(), Vec::new());
    }

    let climb = |start: BitVector| -> (Fraction, BitVector) {
        let mut cur = start;
        let mut cur_val = subset_value(a, &cur).expect("start has >= 2 rows");
        loop {
            let mut improved = false;
            let mut best_move = (cur_val, cur.count_ones(), 0usize);
            for i in 0..n {
                let mut cand = cur.clone();
                cand.set(i, !cand.get(i));
                let Some(val) = subset_value(a, &cand) else {
                    continue;
                };
                let key = (val, cand.count_ones());
                if key > (best_move.0, best_move.1) {
                    best_move = (val, key.1, i);
                    improved = true;
                }
            }
            if !improved {
                return (cur_val, cur);
            }
            cur.set(best_move.2, !cur.get(best_move.2));
            cur_val = best_move.0;
        }
    };

    let mut best = climb(BitVector::ones(n));
    for _ in 0..effort {
        let start = loop {
            let cand = BitVector::from_fn(n, |_| rng.gen::<bool>());
            if cand.count_ones() >= 2 {
                break cand;
            }
        };
        let result = climb(start);
        if (result.0, result.1.count_ones()) > (best.0, best.1.count_ones()) {
            best = result;
        }
    }
    (best.0, best.1.iter_ones().collect())
}

// ---------------------------------------------------------------------------
// Consolidated report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BoundFlag {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Every measure of one instance set, each named inequality between them
/// evaluated, and the optimal depth when the exact solver is in reach.
/// Fields out of reach of their exact limits are `None` and explained in
/// `notes`.
#[derive(Clone, Debug, Serialize)]
pub struct MeasuresReport {
    pub n: usize,
    pub m: usize,
    pub mami: usize,
    pub hs: usize,
    pub etd: Option<usize>,
    /// Sampled lower bound, filled only when the exact sweep was skipped and
    /// sampling was requested.
    pub etd_sampled: Option<usize>,
    pub setd: Option<usize>,
    pub den: Option<Fraction>,
    pub den_witness: Option<Vec<usize>>,
    pub log2n: f64,
    pub opt: Option<usize>,
    pub notes: Vec<String>,
    pub flags: Vec<BoundFlag>,
}

impl MeasuresReport {
    pub fn all_pass(&self) -> bool {
        self.flags.iter().all(|f| f.pass)
    }
}

/// Upper bound on OPT from the halving algorithm's query count, with the
/// small-ETD conventions: `n-1` for ETD <= 1 and `4 log n` for ETD = 2.
pub fn halving_depth_bound(etd: usize, n: usize) -> f64 {
    let log_n = (n as f64).log2();
    match etd {
        0 | 1 => (n - 1) as f64,
        2 => 4.0 * log_n,
        e => e as f64 + e as f64 / (e as f64).log2() * log_n,
    }
}

pub fn bounds_report(a: &InstanceSet, limits: &Limits) -> MeasuresReport {
    let n = a.len();
    let m = a.width();
    let mami_v = mami(a);
    let hs = hitting_set_min(a).len();
    let log2n = (n as f64).log2();
    let mut notes = Vec::new();

    let etd_v = match etd(a, limits) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("etd skipped: {e}"));
            None
        }
    };
    let setd_v = match setd(a, limits) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("setd skipped: {e}"));
            None
        }
    };
    let den_v = match den_exact(a, limits) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("den skipped: {e}"));
            None
        }
    };
    let opt_v = match solvers::opt_exact(a, limits) {
        Ok(r) => Some(r.depth),
        Err(e) => {
            notes.push(format!("opt skipped: {e}"));
            None
        }
    };

    let mut flags = Vec::new();
    let mut flag = |name: &'static str, lhs: String, rhs: String, pass: bool| {
        flags.push(BoundFlag {
            name,
            lhs,
            rhs,
            pass,
        });
    };

    flag(
        "mami_eq_max_shift",
        mami_v.to_string(),
        max_ones(&a.xor_shift(&maj(a)).expect("widths agree")).to_string(),
        mami_v == max_ones(&a.xor_shift(&maj(a)).expect("widths agree")),
    );
    let max1 = max_ones(a);
    if max1 > 0 {
        let floor = (n - 1).div_ceil(max1);
        flag("hs_floor", hs.to_string(), floor.to_string(), hs >= floor);
    } else {
        flag("hs_floor", hs.to_string(), "0".into(), true);
    }
    if let (Some(e), Some(s)) = (etd_v, setd_v) {
        flag("etd_le_setd", e.to_string(), s.to_string(), e <= s);
        flag(
            "setd_le_etd_plus_1",
            s.to_string(),
            (e + 1).to_string(),
            s <= e + 1,
        );
    }
    if setd_v.is_some() {
        let by_def =
            strong_specifying_size_by_definition(a, &BitVector::zeros(m)).expect("widths agree");
        flag(
            "hs_eq_setd_z",
            hs.to_string(),
            by_def.to_string(),
            hs == by_def,
        );
    }
    if let (Some(e), Some((den, _))) = (etd_v, den_v.as_ref()) {
        flag(
            "den_minus_1_le_etd",
            format!("{den} - 1"),
            e.to_string(),
            den.le_int((e + 1) as u64),
        );
        let ln_bound = den.as_f64() * (n as f64).ln() + 1.0;
        flag(
            "etd_le_ln_n_den_plus_1",
            e.to_string(),
            format!("{ln_bound:.6}"),
            (e as f64) <= ln_bound + 1e-9,
        );
    }
    if let Some(opt) = opt_v {
        flag(
            "log2_n_le_opt",
            ceil_log2(n).to_string(),
            opt.to_string(),
            ceil_log2(n) <= opt,
        );
        flag(
            "opt_le_n_minus_1",
            opt.to_string(),
            (n - 1).to_string(),
            opt < n,
        );
        if let Some(e) = etd_v {
            flag("etd_le_opt", e.to_string(), opt.to_string(), e <= opt);
            let ub = halving_depth_bound(e, n);
            flag(
                "opt_le_halving_bound",
                opt.to_string(),
                format!("{ub:.6}"),
                (opt as f64) <= ub + 1e-9,
            );
        }
        if let Some((den, _)) = den_v.as_ref() {
            flag(
                "den_le_opt",
                den.to_string(),
                opt.to_string(),
                den.le_int(opt as u64),
            );
        }
    }

    let report = MeasuresReport {
        n,
        m,
        mami: mami_v,
        hs,
        etd: etd_v,
        etd_sampled: None,
        setd: setd_v,
        den: den_v.as_ref().map(|(f, _)| *f),
        den_witness: den_v.map(|(_, w)| w.iter().map(|i| i + 1).collect()),
        log2n,
        opt: opt_v,
        notes,
        flags,
    };
    debug_assert!(report.all_pass(), "a bound flag failed: {report:?}");
    report
}
