//! Randomized game and measure checks past the desk-size corpus: learner
//! query bounds on larger instances, the greedy specifying-set oracle, and
//! the pointwise shift identities.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use idtree::measures;
use idtree::solvers::{
    self, default_epsilon, halving_query_bound, FixedOracle, LearnerKind, PlayConfig, SpecOracle,
};
use idtree::verify::random_instance;
use idtree::{BitVector, InstanceSet, Limits};

fn exact_spec() -> Box<SpecOracle<'static>> {
    Box::new(|live: &InstanceSet, h: &BitVector| measures::specifying_set_min(live, h, None))
}

fn greedy_spec() -> Box<SpecOracle<'static>> {
    Box::new(|live: &InstanceSet, h: &BitVector| measures::specifying_set_greedy(live, h))
}

#[test]
fn moshkov_meets_the_piecewise_bound_on_larger_sets() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..250 {
        let a = random_instance(&mut rng, 64, 12);
        let e = measures::etd(&a, &limits).unwrap();
        let hidden = a.row(rng.gen_range(0..a.len())).clone();
        let mut oracle = FixedOracle::new(hidden.clone());
        let t = solvers::moshkov_learn(&a, &mut oracle, &mut exact_spec(), e.max(1)).unwrap();
        assert_eq!(t.result.as_ref(), Some(&hidden));
        let bound = halving_query_bound(e, a.len());
        assert!(
            a.len() == 1 || (t.count() as f64) <= bound + 1e-9,
            "{} queries > bound {bound:.3} with E={e} n={}",
            t.count(),
            a.len()
        );
    }
}

#[test]
fn epsilon_meets_both_query_bounds() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut checked = 0;
    for _ in 0..250 {
        let a = random_instance(&mut rng, 64, 12);
        let n = a.len();
        let e = measures::etd(&a, &limits).unwrap();
        if e < 2 {
            continue;
        }
        checked += 1;
        let eps = default_epsilon(e);
        let hidden = a.row(rng.gen_range(0..n)).clone();
        let mut oracle = FixedOracle::new(hidden.clone());
        let t = solvers::epsilon_learn(&a, &mut oracle, eps, &mut exact_spec(), e).unwrap();
        assert_eq!(t.result.as_ref(), Some(&hidden));

        let log_n = (n as f64).log2();
        let doubled = 2.0 * e as f64 / (e as f64).log2() * log_n;
        assert!(
            (t.count() as f64) <= doubled + 1e-9,
            "{} queries > 2E/logE bound {doubled:.3} with E={e} n={n}",
            t.count()
        );
        let displayed = (e as f64 * (log_n / (1.0 / eps).log2()).ceil())
            .max((log_n / (1.0 / (1.0 - eps)).log2()).ceil());
        assert!(
            (t.count() as f64) <= displayed + 1e-9,
            "{} queries > displayed bound {displayed:.3} with E={e} n={n} eps={eps:.4}",
            t.count()
        );
    }
    assert!(checked > 100, "the corpus should produce many E >= 2 cases");
}

#[test]
fn greedy_specifying_oracle_still_identifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let a = random_instance(&mut rng, 32, 10);
        let hidden = a.row(rng.gen_range(0..a.len())).clone();
        let mut oracle = FixedOracle::new(hidden.clone());
        let t = solvers::moshkov_learn(&a, &mut oracle, &mut greedy_spec(), a.width()).unwrap();
        assert_eq!(t.result.as_ref(), Some(&hidden));
        let mut oracle = FixedOracle::new(hidden.clone());
        let t =
            solvers::epsilon_learn(&a, &mut oracle, 0.25, &mut greedy_spec(), a.width()).unwrap();
        assert_eq!(t.result.as_ref(), Some(&hidden));
    }
}

#[test]
fn play_game_supports_the_greedy_spec_flag() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let cfg = PlayConfig {
        greedy_spec: true,
        ..PlayConfig::default()
    };
    for _ in 0..50 {
        let a = random_instance(&mut rng, 16, 8);
        let hidden = a.row(rng.gen_range(0..a.len())).clone();
        let mut oracle = FixedOracle::new(hidden.clone());
        let t = solvers::play_game(&a, LearnerKind::Moshkov, &mut oracle, &cfg).unwrap();
        assert_eq!(t.result.as_ref(), Some(&hidden));
    }
}

#[test]
fn etd_is_monotone_and_shift_reducible() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..120 {
        let a = random_instance(&mut rng, 8, 6);
        let h = BitVector::from_fn(a.width(), |_| rng.gen::<bool>());

        // Pointwise reduction to the zero hypothesis on the shifted set.
        let shifted = a.xor_shift(&h).unwrap();
        assert_eq!(
            measures::specifying_set_min(&a, &h, None).unwrap().len(),
            measures::etd_z(&shifted)
        );
        assert_eq!(
            measures::strong_specifying_set_min(&a, &h).unwrap().len(),
            measures::setd_z(&shifted)
        );

        // Monotonicity under subsets.
        if a.len() >= 2 {
            let keep: Vec<usize> = (0..a.len()).filter(|_| rng.gen::<bool>()).collect();
            if !keep.is_empty() {
                let b = a.subset(&keep);
                assert!(measures::etd(&b, &limits).unwrap() <= measures::etd(&a, &limits).unwrap());
                assert!(
                    measures::setd(&b, &limits).unwrap() <= measures::setd(&a, &limits).unwrap()
                );
            }
        }
    }
}

#[test]
fn bounds_report_flags_pass_on_random_instances() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..150 {
        let a = random_instance(&mut rng, 10, 8);
        let report = measures::bounds_report(&a, &limits);
        assert!(report.all_pass(), "flags failed on {}", a.render());
        assert!(report.etd.is_some() && report.opt.is_some());
    }
}

#[test]
fn sampled_etd_never_exceeds_the_exact_value() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..80 {
        let a = random_instance(&mut rng, 10, 8);
        let exact = measures::etd(&a, &limits).unwrap();
        let sampled = measures::etd_sampled(&a, 5, &mut rng);
        assert!(sampled <= exact);
    }
}

#[test]
fn epsilon_default_is_clamped() {
    assert_eq!(default_epsilon(0), 0.5);
    assert_eq!(default_epsilon(1), 0.5);
    let e2 = default_epsilon(2);
    assert!(e2 > 0.0 && e2 <= 0.5);
    assert!((default_epsilon(3) - 3f64.ln() / 3.0).abs() < 1e-12);
}
