//! Tree construction and query-game execution: the exact minimum-depth
//! recursion, the most-balanced-split greedy builder, the specifying-set
//! halving learner and its balanced-split variant, and the majority
//! adversary that realizes the density lower bound.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::BitVector;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::instance::InstanceSet;
use crate::measures::{self, ceil_log2};
use crate::tree::DecisionTree;

pub struct OptResult {
    pub depth: usize,
    pub tree: DecisionTree,
}

/// Exact minimum depth and one witness tree, by the recursion
/// `OPT(B) = 1 + min_j max(OPT(B_{j,0}), OPT(B_{j,1}))` over the columns
/// that split `B`, memoized on the surviving row mask. Ties go to the lowest
/// column, and a column branch is cut as soon as its first child already
/// matches the best depth found.
pub fn opt_exact(a: &InstanceSet, limits: &Limits) -> Result<OptResult> {
    let n = a.len();
    let limit = limits.opt_exact_n_limit.min(60);
    if n > limit {
        return Err(Error::ExactLimitExceeded {
            what: "row count n",
            value: n,
            limit,
        });
    }
    let cols: Vec<u64> = (0..a.width()).map(|j| a.col(j).low_word()).collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut memo: HashMap<u64, (usize, usize)> = HashMap::new();
    let depth = opt_rec(&cols, full, &mut memo);
    let tree = rebuild(a, &cols, full, &memo);
    debug_assert_eq!(tree.depth(), depth);
    Ok(OptResult { depth, tree })
}

fn opt_rec(cols: &[u64], mask: u64, memo: &mut HashMap<u64, (usize, usize)>) -> usize {
    let count = mask.count_ones() as usize;
    if count <= 1 {
        return 0;
    }
    if let Some(&(depth, _)) = memo.get(&mask) {
        return depth;
    }
    let lb = ceil_log2(count);
    let mut best = usize::MAX;
    let mut best_col = usize::MAX;
    for (j, &c) in cols.iter().enumerate() {
        let ones = mask & c;
        let zeros = mask & !c;
        if ones == 0 || zeros == 0 {
            continue; // the query learns nothing on this subset
        }
        let d0 = opt_rec(cols, zeros, memo);
        if 1 + d0 >= best {
            continue;
        }
        let d1 = opt_rec(cols, ones, memo);
        let d = 1 + d0.max(d1);
        if d < best {
            best = d;
            best_col = j;
            if best == lb {
                break;
            }
        }
    }
    assert!(
        best < usize::MAX,
        "distinct rows always split on some column"
    );
    memo.insert(mask, (best, best_col));
    best
}

fn rebuild(
    a: &InstanceSet,
    cols: &[u64],
    mask: u64,
    memo: &HashMap<u64, (usize, usize)>,
) -> DecisionTree {
    if mask.count_ones() == 1 {
        return DecisionTree::Leaf(a.row(mask.trailing_zeros() as usize).clone());
    }
    let (_, col) = memo[&mask];
    let ones = mask & cols[col];
    let zeros = mask & !cols[col];
    DecisionTree::node(
        col,
        rebuild(a, cols, zeros, memo),
        rebuild(a, cols, ones, memo),
    )
}

/// The most-balanced-split construction: at every node pick the column
/// maximizing `min(|B_{j,0}|, |B_{j,1}|)` (lowest index on ties) and recurse
/// on both restrictions.
pub fn greedy_tree(a: &InstanceSet) -> DecisionTree {
    greedy_rec(a, (0..a.len()).collect())
}

fn greedy_rec(a: &InstanceSet, rows: Vec<usize>) -> DecisionTree {
    if rows.len() == 1 {
        return DecisionTree::Leaf(a.row(rows[0]).clone());
    }
    let mut best = (0usize, 0usize); // (column, min split)
    for j in 0..a.width() {
        let ones = rows.iter().filter(|&&i| a.row(i).get(j)).count();
        let split = ones.min(rows.len() - ones);
        if split > best.1 {
            best = (j, split);
        }
    }
    assert!(best.1 > 0, "distinct rows always split on some column");
    let (zeros, ones): (Vec<usize>, Vec<usize>) =
        rows.into_iter().partition(|&i| !a.row(i).get(best.0));
    DecisionTree::node(best.0, greedy_rec(a, zeros), greedy_rec(a, ones))
}

// ---------------------------------------------------------------------------
// Query games
// ---------------------------------------------------------------------------

/// Answers queries for a committed assignment. `finalize` exposes the
/// element the oracle stands behind; its answers must agree with it.
pub trait AnswerOracle {
    fn name(&self) -> String;
    fn answer(&mut self, index: usize) -> bool;
    fn finalize(&self) -> BitVector;
}

/// Oracle committed to one fixed hidden element.
pub struct FixedOracle {
    element: BitVector,
}

impl FixedOracle {
    pub fn new(element: BitVector) -> Self {
        FixedOracle { element }
    }
}

impl AnswerOracle for FixedOracle {
    fn name(&self) -> String {
        "hidden".into()
    }

    fn answer(&mut self, index: usize) -> bool {
        self.element.get(index)
    }

    fn finalize(&self) -> BitVector {
        self.element.clone()
    }
}

/// The density adversary: fixes a subset `B` of `A` up front and answers
/// every query `i` with `MAJ(B)_i`, so each answer eliminates at most
/// `MAX(B + MAJ(B)) = MAMI(B)` elements of `B`. Any learner therefore needs
/// at least `(|B|-1)/MAMI(B)` queries before one element of `B` remains.
pub struct AdversaryOracle {
    b_rows: Vec<BitVector>,
    all_rows: Vec<BitVector>,
    maj: BitVector,
    answered: Vec<(usize, bool)>,
}

impl AdversaryOracle {
    /// `b` holds row indices into `a`; it must be non-empty.
    pub fn new(a: &InstanceSet, b: &[usize]) -> Self {
        assert!(!b.is_empty(), "the adversary needs a non-empty subset");
        let subset = a.subset(b);
        AdversaryOracle {
            maj: measures::maj(&subset),
            b_rows: subset.rows().to_vec(),
            all_rows: a.rows().to_vec(),
            answered: Vec::new(),
        }
    }

    /// Adversary on a density witness: the exact one within limits, the
    /// hill-climbing lower bound otherwise.
    pub fn from_density(
        a: &InstanceSet,
        limits: &Limits,
        effort: usize,
        rng: &mut impl rand::Rng,
    ) -> Self {
        let witness = match measures::den_exact(a, limits) {
            Ok((_, w)) => w,
            Err(_) => measures::den_lower(a, effort, rng).1,
        };
        if witness.is_empty() {
            Self::new(a, &[0])
        } else {
            Self::new(a, &witness)
        }
    }
}

impl AnswerOracle for AdversaryOracle {
    fn name(&self) -> String {
        "adversary".into()
    }

    fn answer(&mut self, index: usize) -> bool {
        let ans = self.maj.get(index);
        self.answered.push((index, ans));
        ans
    }

    /// Lowest-index survivor of `B`; if the learner asked past the point
    /// where `B` is exhausted, any consistent row of `A`, and failing that
    /// the majority vector itself (always consistent with its own answers).
    fn finalize(&self) -> BitVector {
        let consistent = |r: &&BitVector| self.answered.iter().all(|&(i, ans)| r.get(i) == ans);
        self.b_rows
            .iter()
            .find(consistent)
            .or_else(|| self.all_rows.iter().find(consistent))
            .cloned()
            .unwrap_or_else(|| self.maj.clone())
    }
}

/// Ordered record of one learner-vs-oracle game.
#[derive(Clone, Debug)]
pub struct QueryTranscript {
    pub learner: String,
    pub oracle: String,
    pub queries: Vec<(usize, bool)>,
    pub result: Option<BitVector>,
}

#[derive(Serialize)]
struct QueryJson {
    index: usize,
    answer: u8,
}

#[derive(Serialize)]
struct TranscriptJson {
    learner: String,
    oracle: String,
    queries: Vec<QueryJson>,
    result: Option<String>,
    count: usize,
}

impl QueryTranscript {
    fn new(learner: &str, oracle: String) -> Self {
        QueryTranscript {
            learner: learner.into(),
            oracle,
            queries: Vec::new(),
            result: None,
        }
    }

    fn record(&mut self, index: usize, answer: bool) {
        assert!(
            !self.queries.iter().any(|&(i, _)| i == index),
            "index {index} queried twice"
        );
        self.queries.push((index, answer));
    }

    pub fn count(&self) -> usize {
        self.queries.len()
    }

    /// The result agrees with every recorded answer.
    pub fn result_consistent(&self) -> bool {
        match &self.result {
            Some(r) => self.queries.iter().all(|&(i, ans)| r.get(i) == ans),
            None => false,
        }
    }

    /// Stable JSON form; indices are 1-based here.
    pub fn to_json(&self) -> String {
        let view = TranscriptJson {
            learner: self.learner.clone(),
            oracle: self.oracle.clone(),
            queries: self
                .queries
                .iter()
                .map(|&(i, a)| QueryJson {
                    index: i + 1,
                    answer: u8::from(a),
                })
                .collect(),
            result: self.result.as_ref().map(|r| r.to_string()),
            count: self.count(),
        };
        serde_json::to_string_pretty(&view).expect("transcript serializes")
    }
}

/// Callback producing a specifying set for a hypothesis against the current
/// live set.
pub type SpecOracle<'a> = dyn FnMut(&InstanceSet, &BitVector) -> Result<Vec<usize>> + 'a;

/// The specifying-set halving learner. Each phase takes the majority of the
/// live set as hypothesis, fetches a specifying set `S`, and repeatedly
/// queries the index of `S` minimizing the number of live rows that agree
/// with the hypothesis there (lowest index on ties), until an answer
/// disagrees or one row remains. A disagreement ends the phase having shrunk
/// the live set by a factor of at least `max(2, k)` after `k` queries.
pub fn moshkov_learn(
    a: &InstanceSet,
    oracle: &mut dyn AnswerOracle,
    spec_oracle: &mut SpecOracle,
    e_bound: usize,
) -> Result<QueryTranscript> {
    let mut t = QueryTranscript::new("moshkov", oracle.name());
    let mut live: Vec<usize> = (0..a.len()).collect();
    while live.len() >= 2 {
        let phase_start = live.len();
        let live_set = a.subset(&live);
        let h = measures::maj(&live_set);
        let mut s = spec_oracle(&live_set, &h)?;
        s.sort_unstable();
        s.dedup();
        if s.len() > e_bound {
            return Err(Error::SpecSetTooLarge {
                size: s.len(),
                bound: e_bound,
            });
        }
        let mut k = 0usize;
        let disagreed = loop {
            assert!(
                !s.is_empty(),
                "specifying set exhausted with {} live rows",
                live.len()
            );
            let mut best = (usize::MAX, usize::MAX); // (agreeing count, column)
            for &z in &s {
                let agree = live
                    .iter()
                    .filter(|&&i| a.row(i).get(z) == h.get(z))
                    .count();
                if agree < best.0 {
                    best = (agree, z);
                }
            }
            let y = best.1;
            let ans = oracle.answer(y);
            t.record(y, ans);
            k += 1;
            live.retain(|&i| a.row(i).get(y) == ans);
            if live.is_empty() {
                return Err(Error::InconsistentOracle);
            }
            s.retain(|&z| z != y);
            if ans != h.get(y) {
                break true;
            }
            if live.len() == 1 {
                break false;
            }
        };
        if disagreed {
            assert!(
                live.len() * k.max(2) <= phase_start,
                "phase shrink below max(2, {k})"
            );
        }
    }
    t.result = Some(a.row(live[0]).clone());
    Ok(t)
}

/// The proof's suggested split threshold `ln(E)/E`, clamped into `(0, 1/2]`.
pub fn default_epsilon(e_bound: usize) -> f64 {
    let e = e_bound as f64;
    let x = e.ln() / e;
    if x > 0.0 {
        x.min(0.5)
    } else {
        0.5
    }
}

/// The balanced-split learner: query any column splitting the live set no
/// worse than `eps : 1-eps` while one exists; otherwise run one majority
/// specifying-set phase. Consistent phases isolate the hidden element; a
/// disagreement shrinks the live set to at most an `eps` fraction.
pub fn epsilon_learn(
    a: &InstanceSet,
    oracle: &mut dyn AnswerOracle,
    eps: f64,
    spec_oracle: &mut SpecOracle,
    e_bound: usize,
) -> Result<QueryTranscript> {
    assert!(eps > 0.0 && eps < 1.0, "epsilon must lie in (0, 1)");
    let mut t = QueryTranscript::new("epsilon", oracle.name());
    let mut live: Vec<usize> = (0..a.len()).collect();
    'outer: while live.len() >= 2 {
        let total = live.len() as f64;
        let balanced = (0..a.width()).find(|&j| {
            let zeros = live.iter().filter(|&&i| !a.row(i).get(j)).count() as f64;
            eps * total <= zeros && zeros <= (1.0 - eps) * total
        });
        if let Some(j) = balanced {
            let ans = oracle.answer(j);
            t.record(j, ans);
            live.retain(|&i| a.row(i).get(j) == ans);
            if live.is_empty() {
                return Err(Error::InconsistentOracle);
            }
            continue;
        }
        let live_set = a.subset(&live);
        let h = measures::maj(&live_set);
        let mut s = spec_oracle(&live_set, &h)?;
        s.sort_unstable();
        s.dedup();
        if s.len() > e_bound {
            return Err(Error::SpecSetTooLarge {
                size: s.len(),
                bound: e_bound,
            });
        }
        for &y in &s {
            // Skip queries whose answer the live set already forces; they
            // carry no information and may repeat an earlier index.
            if live.iter().all(|&i| a.row(i).get(y) == h.get(y)) {
                continue;
            }
            let ans = oracle.answer(y);
            t.record(y, ans);
            live.retain(|&i| a.row(i).get(y) == ans);
            if live.is_empty() {
                return Err(Error::InconsistentOracle);
            }
            if ans != h.get(y) {
                continue 'outer;
            }
            if live.len() == 1 {
                break;
            }
        }
        assert!(
            live.len() <= 1,
            "a fully consistent specifying phase must isolate one row"
        );
    }
    t.result = Some(a.row(live[0]).clone());
    Ok(t)
}

/// Worst-case query count of the halving learner for a specifying-set bound
/// `e` on `n` candidates: `e + (e/log e) log n` once `e >= 4`, the doubled
/// form for smaller `e`.
pub fn halving_query_bound(e: usize, n: usize) -> f64 {
    if n <= 1 || e == 0 {
        return 0.0;
    }
    let log_n = (n as f64).log2();
    match e {
        1..=3 => 2.0 * e as f64 / (e.max(2) as f64).log2() * log_n,
        _ => e as f64 + e as f64 / (e as f64).log2() * log_n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnerKind {
    Greedy,
    Moshkov,
    Epsilon,
    ExactTree,
}

impl std::str::FromStr for LearnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(LearnerKind::Greedy),
            "moshkov" => Ok(LearnerKind::Moshkov),
            "epsilon" => Ok(LearnerKind::Epsilon),
            "exact-tree" => Ok(LearnerKind::ExactTree),
            other => Err(Error::Format(format!("unknown learner {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PlayConfig {
    pub limits: Limits,
    /// Split threshold for the epsilon learner; `ln(E)/E` when unset.
    pub epsilon: Option<f64>,
    /// Use the greedy polynomial specifying sets instead of exact minimum
    /// ones (the query-count guarantees then follow the density bound).
    pub greedy_spec: bool,
}

/// Runs one learner against one oracle and checks the transcript: the final
/// result must be consistent with every answer.
pub fn play_game(
    a: &InstanceSet,
    learner: LearnerKind,
    oracle: &mut dyn AnswerOracle,
    cfg: &PlayConfig,
) -> Result<QueryTranscript> {
    let t = match learner {
        LearnerKind::Greedy => walk_tree("greedy", &greedy_tree(a), oracle),
        LearnerKind::ExactTree => {
            let solved = opt_exact(a, &cfg.limits)?;
            walk_tree("exact-tree", &solved.tree, oracle)
        }
        LearnerKind::Moshkov | LearnerKind::Epsilon => {
            let (mut spec, e_bound): (Box<SpecOracle>, usize) = if cfg.greedy_spec {
                (
                    Box::new(|live: &InstanceSet, h: &BitVector| {
                        measures::specifying_set_greedy(live, h)
                    }),
                    a.width(),
                )
            } else {
                (
                    Box::new(|live: &InstanceSet, h: &BitVector| {
                        measures::specifying_set_min(live, h, None)
                    }),
                    measures::etd(a, &cfg.limits)?,
                )
            };
            match learner {
                LearnerKind::Moshkov => moshkov_learn(a, oracle, &mut spec, e_bound)?,
                _ => {
                    let eps = cfg.epsilon.unwrap_or_else(|| default_epsilon(e_bound));
                    epsilon_learn(a, oracle, eps, &mut spec, e_bound)?
                }
            }
        }
    };
    assert!(
        t.result_consistent() || t.queries.is_empty(),
        "learner result contradicts recorded answers"
    );
    Ok(t)
}

fn walk_tree(name: &str, tree: &DecisionTree, oracle: &mut dyn AnswerOracle) -> QueryTranscript {
    let mut t = QueryTranscript::new(name, oracle.name());
    let mut cur = tree;
    loop {
        match cur {
            DecisionTree::Leaf(label) => {
                t.result = Some(label.clone());
                return t;
            }
            DecisionTree::Node { index, zero, one } => {
                let ans = oracle.answer(*index);
                t.record(*index, ans);
                cur = if ans { one } else { zero };
            }
        }
    }
}
