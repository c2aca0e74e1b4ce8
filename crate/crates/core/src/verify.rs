//! Seeded verification suites: every inequality the measures and solvers
//! promise, exercised over an exhaustive corpus of small instance sets plus
//! randomized instances and games. The command-line `verify` subcommand and
//! the acceptance tests both run these; all randomness flows from one seeded
//! generator, so identical configurations give identical summaries.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVector;
use crate::config::Limits;
use crate::fraction::Fraction;
use crate::instance::InstanceSet;
use crate::lattice::{self, HasseDiagram};
use crate::measures::{self, ceil_log2};
use crate::solvers::{self, AdversaryOracle, FixedOracle, LearnerKind, PlayConfig, SpecOracle};
use crate::tree::DecisionTree;

pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One fully analyzed corpus instance: every exact measure it admits.
pub struct CorpusItem {
    pub set: InstanceSet,
    pub opt: usize,
    pub tree: DecisionTree,
    pub etd: usize,
    pub setd: usize,
    pub hs: usize,
    pub den: Fraction,
    pub den_witness: Vec<usize>,
    pub greedy_tree: DecisionTree,
}

/// Every instance set over four columns with one through six rows.
pub fn exhaustive_corpus() -> Vec<InstanceSet> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << 16) {
        let count = mask.count_ones();
        if !(1..=6).contains(&count) {
            continue;
        }
        let rows: Vec<BitVector> = (0..16)
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| BitVector::from_index(4, e as u64))
            .collect();
        out.push(InstanceSet::new(4, rows).expect("distinct rows by construction"));
    }
    out
}

pub fn analyze(set: InstanceSet, limits: &Limits) -> CorpusItem {
    let solved = solvers::opt_exact(&set, limits).expect("within limits");
    let (den, den_witness) = measures::den_exact(&set, limits).expect("within limits");
    CorpusItem {
        opt: solved.depth,
        tree: solved.tree,
        etd: measures::etd(&set, limits).expect("within limits"),
        setd: measures::setd(&set, limits).expect("within limits"),
        hs: measures::hitting_set_min(&set).len(),
        den,
        den_witness,
        greedy_tree: solvers::greedy_tree(&set),
        set,
    }
}

pub fn analyzed_corpus() -> Vec<CorpusItem> {
    let limits = Limits::default();
    exhaustive_corpus()
        .into_iter()
        .map(|set| analyze(set, &limits))
        .collect()
}

/// A random duplicate-free instance set with at most `max_n` rows over at
/// most `max_m` columns.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> InstanceSet {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n.min(1 << m.min(20)));
    let mut seen = HashSet::new();
    let mut rows = Vec::with_capacity(n);
    while rows.len() < n {
        let row = BitVector::from_fn(m, |_| rng.gen::<bool>());
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    InstanceSet::new(m, rows).expect("rows are distinct")
}

fn exact_spec() -> Box<SpecOracle<'static>> {
    Box::new(|live: &InstanceSet, h: &BitVector| measures::specifying_set_min(live, h, None))
}

// ---------------------------------------------------------------------------
// The suites
// ---------------------------------------------------------------------------

/// `ceil(log n) <= max(ETD, ceil(log n)) <= OPT <= n - 1`, with both emitted
/// trees validating.
pub fn suite_sandwich(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("sandwich");
    for item in items {
        let n = item.set.len();
        let floor = ceil_log2(n).max(item.etd);
        let ok = ceil_log2(n) <= floor
            && floor <= item.opt
            && item.opt < n
            && item.tree.validates(&item.set)
            && item.greedy_tree.validates(&item.set);
        out.check(ok, || {
            format!(
                "sandwich failed on n={n} etd={} opt={}: {}",
                item.etd,
                item.opt,
                item.set.render().replace('\n', "|")
            )
        });
    }
    out
}

/// OPT, ETD and SETD are invariant under XOR shifts, and the explicit tree
/// transformation carries an optimal tree to the shifted set.
pub fn suite_shift(seed: u64, cases: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("shift");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5349_4654);
    let limits = Limits::default();
    for _ in 0..cases {
        let a = random_instance(&mut rng, 10, 8);
        let h = BitVector::from_fn(a.width(), |_| rng.gen::<bool>());
        let shifted = a.xor_shift(&h).expect("widths agree");
        let solved = solvers::opt_exact(&a, &limits).expect("within limits");
        let opt_shifted = solvers::opt_exact(&shifted, &limits)
            .expect("within limits")
            .depth;
        let transformed = solved.tree.xor_transform(&h);
        let ok = solved.depth == opt_shifted
            && measures::etd(&a, &limits).unwrap() == measures::etd(&shifted, &limits).unwrap()
            && measures::setd(&a, &limits).unwrap() == measures::setd(&shifted, &limits).unwrap()
            && transformed.validates(&shifted)
            && transformed.depth() == solved.depth;
        out.check(ok, || {
            format!(
                "shift invariance failed on {} h={h}",
                a.render().replace('\n', "|")
            )
        });
    }
    out
}

/// Lemma chain for specifying sets: `ETD <= SETD <= ETD + 1` pointwise and
/// globally, `HS(A) = SETDz(A)`, and `SETD(A,h) = HS(A+h)` with the strong
/// size recomputed from its definition.
pub fn suite_strong(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("strong-sets");
    for item in items {
        let a = &item.set;
        let m = a.width();
        out.check(item.etd <= item.setd && item.setd <= item.etd + 1, || {
            format!("lemma 2 failed: etd={} setd={}", item.etd, item.setd)
        });
        out.check(item.hs == measures::setd_z(a), || {
            format!("HS != SETDz on {}", a.render().replace('\n', "|"))
        });
        for idx in 0..(1u64 << m) {
            let h = BitVector::from_index(m, idx);
            let weak = measures::specifying_set_min(a, &h, None).unwrap().len();
            let strong = measures::strong_specifying_set_min(a, &h).unwrap().len();
            let by_def = measures::strong_specifying_size_by_definition(a, &h).unwrap();
            let hs_shifted = measures::hitting_set_min(&a.xor_shift(&h).unwrap()).len();
            let ok =
                weak <= strong && strong <= weak + 1 && strong == by_def && strong == hs_shifted;
            out.check(ok, || {
                format!(
                    "strong-set identities failed at h={h} on {}",
                    a.render().replace('\n', "|")
                )
            });
        }
    }
    out
}

/// Density bounds: `DEN <= OPT` (cross-multiplied), `DEN - 1 <= ETD`, and
/// `ETD <= ln(n) DEN + 1`.
pub fn suite_density(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("density");
    for item in items {
        let n = item.set.len();
        let ln_bound = item.den.as_f64() * (n as f64).ln() + 1.0;
        let ok = item.den.le_int(item.opt as u64)
            && item.den.le_int(item.etd as u64 + 1)
            && (item.etd as f64) <= ln_bound + 1e-9;
        out.check(ok, || {
            format!(
                "density bounds failed: den={} etd={} opt={} on {}",
                item.den,
                item.etd,
                item.opt,
                item.set.render().replace('\n', "|")
            )
        });
    }
    out
}

/// Greedy construction bound: depth at most `ceil(DEN ln n)` and at most
/// `ceil(min((ln 2) DEN, ln n) OPT)`.
pub fn suite_greedy(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("greedy");
    for item in items {
        let n = item.set.len();
        if n < 2 {
            continue;
        }
        let depth = item.greedy_tree.depth() as f64;
        let den_bound = (item.den.as_f64() * (n as f64).ln()).ceil();
        let ratio = (2f64.ln() * item.den.as_f64()).min((n as f64).ln());
        let opt_bound = (ratio * item.opt as f64 + 1e-9).ceil();
        let ok = depth <= den_bound && depth <= opt_bound;
        out.check(ok, || {
            format!(
                "greedy depth {depth} exceeds bounds {den_bound}/{opt_bound} on {}",
                item.set.render().replace('\n', "|")
            )
        });
    }
    out
}

/// The halving learner meets its query bound with the exact specifying-set
/// oracle and `E = ETD(A)`, for every hidden element; per-phase shrink is
/// asserted inside the learner.
pub fn suite_moshkov(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("moshkov");
    for item in items {
        let a = &item.set;
        let n = a.len();
        let bound = solvers::halving_query_bound(item.etd, n);
        for hidden in a.rows() {
            let mut oracle = FixedOracle::new(hidden.clone());
            let t = solvers::moshkov_learn(a, &mut oracle, &mut exact_spec(), item.etd.max(1))
                .expect("consistent oracle");
            let ok = t.result.as_ref() == Some(hidden)
                && (n == 1 && t.count() == 0 || (t.count() as f64) <= bound + 1e-9);
            out.check(ok, || {
                format!(
                    "halving bound failed: {} queries, bound {bound:.3}, hidden {hidden} on {}",
                    t.count(),
                    a.render().replace('\n', "|")
                )
            });
        }
    }
    out
}

/// The majority adversary on a density witness forces at least
/// `ceil(DEN(A))` queries out of the exact tree.
pub fn suite_adversary(items: &[CorpusItem]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("adversary");
    let cfg = PlayConfig::default();
    for item in items {
        let a = &item.set;
        let witness: &[usize] = if item.den_witness.is_empty() {
            &[0]
        } else {
            &item.den_witness
        };
        let mut oracle = AdversaryOracle::new(a, witness);
        let t = solvers::play_game(a, LearnerKind::ExactTree, &mut oracle, &cfg)
            .expect("within limits");
        let ok = t.count() as u64 >= item.den.ceil();
        out.check(ok, || {
            format!(
                "adversary game took {} < ceil({}) queries on {}",
                t.count(),
                item.den,
                a.render().replace('\n', "|")
            )
        });
    }
    out
}

fn lattice_families() -> Vec<(&'static str, HasseDiagram)> {
    let mut out = Vec::new();
    for (name, n, m) in [("ray-2-2", 2, 2), ("ray-3-2", 3, 2), ("ray-4-2", 4, 2)] {
        let (domain, preds) = lattice::gen_ray(n, m, 64).expect("small grids");
        out.push((
            name,
            lattice::hasse_build(domain, preds).expect("valid family"),
        ));
    }
    let (domain, preds) = lattice::gen_ray_sum();
    out.push((
        "ray-sum",
        lattice::hasse_build(domain, preds).expect("valid family"),
    ));
    out
}

/// The lattice suite: closure sizes and degrees from the ray families, the
/// lca/join identity, witness uniqueness among immediate descendants, the
/// polynomial specifying sets verified against the exhaustive minimum, the
/// teaching-dimension equality, and the degree-bounded learner.
pub fn suite_lattice() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("lattice");
    for (name, h) in lattice_families() {
        match name {
            "ray-2-2" => {
                out.check(h.len() == 5, || format!("{name}: closure size {}", h.len()));
                out.check(h.degree() == 3, || format!("{name}: degree {}", h.degree()));
            }
            "ray-4-2" => {
                out.check(h.degree() == 4, || format!("{name}: degree {}", h.degree()));
            }
            "ray-sum" => {
                out.check(h.degree() >= 3, || format!("{name}: degree {}", h.degree()));
            }
            _ => {}
        }
        if let Some((_, m)) = h.domain.grid {
            if name != "ray-sum" {
                out.check(h.degree() <= 2 * m, || {
                    format!("{name}: degree {} above 2m", h.degree())
                });
            }
        }

        out.check(h.validate_lemma_lca(), || {
            format!("{name}: lca/join identity")
        });

        // Witness uniqueness: a point separating one immediate descendant
        // from its parent satisfies every other immediate descendant.
        for g in 0..h.len() {
            for (i, &c1) in h.children[g].iter().enumerate() {
                let diff = h.table(g).and_not(h.table(c1));
                for a in diff.iter_ones() {
                    let ok = h.children[g]
                        .iter()
                        .enumerate()
                        .all(|(j, &c2)| i == j || h.table(c2).get(a));
                    out.check(ok, || {
                        format!("{name}: witness {a} of child {c1} under {g} not unique")
                    });
                }
            }
        }

        // Polynomial specifying sets against the exhaustive minimum.
        let matrix = h.induced_matrix();
        let deg = h.degree();
        let points = h.domain.size;
        if points <= 16 {
            let mut etd_exhaustive = 0usize;
            for idx in 0..(1u64 << points) {
                let hyp = BitVector::from_index(points, idx);
                let poly = h.specifying_set_poly(&hyp, false);
                let consistent = matrix
                    .rows()
                    .iter()
                    .filter(|r| poly.iter().all(|&p| r.get(p) == hyp.get(p)))
                    .count();
                let min_size = measures::specifying_set_min(&matrix, &hyp, None)
                    .expect("widths agree")
                    .len();
                etd_exhaustive = etd_exhaustive.max(min_size);
                let ok = consistent <= 1 && poly.len() <= deg && poly.len() >= min_size;
                out.check(ok, || {
                    format!(
                        "{name}: poly specifying set broke at h={hyp}: {} consistent, size {} vs min {min_size}",
                        consistent,
                        poly.len()
                    )
                });
            }

            // Teaching-dimension equality.
            let component_max = (0..h.len())
                .map(|g| {
                    let (de, hs) = h.etd_components(g);
                    de + hs
                })
                .max()
                .unwrap();
            let td = h.teaching_dim();
            out.check(etd_exhaustive == td && td == component_max, || {
                format!(
                    "{name}: ETD {etd_exhaustive}, TD {td}, max(|De|+HS) {component_max} differ"
                )
            });
        }

        // The learner identifies every element within the degree bound.
        let bound = solvers::halving_query_bound(deg, h.len());
        for g in 0..h.len() {
            let mut oracle = FixedOracle::new(h.table(g).clone());
            let (found, t) = lattice::learn_disjunction(&h, &mut oracle).expect("valid oracle");
            let ok = found == g && (h.len() == 1 || (t.count() as f64) <= bound + 1e-9);
            out.check(ok, || {
                format!(
                    "{name}: learning element {g} took {} queries, bound {bound:.3}",
                    t.count()
                )
            });
        }
    }
    out
}

/// Randomized games: every learner returns exactly the committed element and
/// never repeats a query.
pub fn suite_learners(seed: u64, cases: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("learners");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4c45_4152);
    let cfg = PlayConfig::default();
    let learners = [
        LearnerKind::Greedy,
        LearnerKind::Moshkov,
        LearnerKind::Epsilon,
        LearnerKind::ExactTree,
    ];
    for case in 0..cases {
        let a = random_instance(&mut rng, 10, 8);
        let hidden = a.row(rng.gen_range(0..a.len())).clone();
        let learner = learners[case % learners.len()];
        let mut oracle = FixedOracle::new(hidden.clone());
        let t = solvers::play_game(&a, learner, &mut oracle, &cfg).expect("within limits");
        let mut indices: Vec<usize> = t.queries.iter().map(|&(i, _)| i).collect();
        indices.sort_unstable();
        indices.dedup();
        let ok = t.result.as_ref() == Some(&hidden) && indices.len() == t.count();
        out.check(ok, || {
            format!(
                "learner {learner:?} failed on hidden {hidden} over {}",
                a.render().replace('\n', "|")
            )
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

pub const SUITE_NAMES: [&str; 9] = [
    "sandwich",
    "shift",
    "strong-sets",
    "density",
    "greedy",
    "moshkov",
    "adversary",
    "lattice",
    "learners",
];

/// Runs the selected suites (all of them by default) in a fixed order.
pub fn run_all(seed: u64, cases: usize, only: Option<&[String]>) -> Vec<SuiteOutcome> {
    let selected = |name: &str| only.is_none_or(|list| list.iter().any(|s| s == name));
    let corpus_needed = [
        "sandwich",
        "strong-sets",
        "density",
        "greedy",
        "moshkov",
        "adversary",
    ]
    .iter()
    .any(|s| selected(s));
    let items = if corpus_needed {
        analyzed_corpus()
    } else {
        Vec::new()
    };

    let mut out = Vec::new();
    if selected("sandwich") {
        out.push(suite_sandwich(&items));
    }
    if selected("shift") {
        out.push(suite_shift(seed, cases));
    }
    if selected("strong-sets") {
        out.push(suite_strong(&items));
    }
    if selected("density") {
        out.push(suite_density(&items));
    }
    if selected("greedy") {
        out.push(suite_greedy(&items));
    }
    if selected("moshkov") {
        out.push(suite_moshkov(&items));
    }
    if selected("adversary") {
        out.push(suite_adversary(&items));
    }
    if selected("lattice") {
        out.push(suite_lattice());
    }
    if selected("learners") {
        out.push(suite_learners(seed, cases));
    }
    out
}

/// Deterministic human-readable summary; identical configurations produce
/// byte-identical output.
pub fn summary(seed: u64, cases: usize, outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed: {seed}");
    let _ = writeln!(out, "cases: {cases}");
    for o in outcomes {
        let _ = writeln!(
            out,
            "suite {}: {} checks, {} failures",
            o.name,
            o.checked,
            o.failures.len()
        );
        for f in o.failures.iter().take(3) {
            let _ = writeln!(out, "  FAIL {f}");
        }
    }
    let total_failures: usize = outcomes.iter().map(|o| o.failures.len()).sum();
    let _ = writeln!(
        out,
        "result: {}",
        if total_failures == 0 { "PASS" } else { "FAIL" }
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_every_small_set() {
        let corpus = exhaustive_corpus();
        // sum of C(16, k) for k = 1..6
        assert_eq!(corpus.len(), 16 + 120 + 560 + 1820 + 4368 + 8008);
    }

    #[test]
    fn random_instances_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = random_instance(&mut rng, 10, 8);
            assert!(a.len() <= 10);
            assert!(a.width() <= 8);
        }
    }

    #[test]
    fn summaries_are_deterministic() {
        let a = summary(
            7,
            25,
            &run_all(7, 25, Some(&["shift".into(), "learners".into()])),
        );
        let b = summary(
            7,
            25,
            &run_all(7, 25, Some(&["shift".into(), "learners".into()])),
        );
        assert_eq!(a, b);
        assert!(a.contains("result: PASS"));
    }
}
