//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 1 and 3-7 run over the exhaustive corpus of all instance sets
//! with n in 1..=6 over m in 1..=4 columns (14,892 sets), shared across the
//! tests. Criteria 2 and 9 run seeded randomized instances and games;
//! criterion 8 runs the ray families; criterion 10 drives the real binary
//! twice and compares bytes.

use std::process::Command;
use std::sync::OnceLock;

use idtree::verify::{self, CorpusItem, SuiteOutcome};

const SEED: u64 = 20260811;

fn corpus() -> &'static [CorpusItem] {
    static CORPUS: OnceLock<Vec<CorpusItem>> = OnceLock::new();
    CORPUS.get_or_init(verify::analyzed_corpus)
}

fn report(label: &str, outcome: &SuiteOutcome) {
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {label}: {} checks, {} failures -> {verdict}",
        outcome.checked,
        outcome.failures.len()
    );
    assert!(
        outcome.passed(),
        "criterion {label} failed, first failure: {}",
        outcome.failures.first().map(String::as_str).unwrap_or("-")
    );
}

#[test]
fn criterion_01_exhaustive_sandwich() {
    report("1 sandwich", &verify::suite_sandwich(corpus()));
}

#[test]
fn criterion_02_shift_invariance() {
    report("2 shift-invariance", &verify::suite_shift(SEED, 1000));
}

#[test]
fn criterion_03_specifying_set_identities() {
    report("3 strong-sets", &verify::suite_strong(corpus()));
}

#[test]
fn criterion_04_density_bounds() {
    report("4 density", &verify::suite_density(corpus()));
}

#[test]
fn criterion_05_greedy_depth_bounds() {
    report("5 greedy", &verify::suite_greedy(corpus()));
}

#[test]
fn criterion_06_halving_learner_bounds() {
    report("6 moshkov", &verify::suite_moshkov(corpus()));
}

#[test]
fn criterion_07_adversary_lower_bound() {
    report("7 adversary", &verify::suite_adversary(corpus()));
}

#[test]
fn criterion_08_lattice_suite() {
    report("8 lattice", &verify::suite_lattice());
}

#[test]
fn criterion_09_learner_correctness() {
    report("9 learners", &verify::suite_learners(SEED, 10_000));
}

#[test]
fn criterion_10_verify_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_idtree"))
            .args([
                "verify",
                "--seed",
                "7",
                "--cases",
                "120",
                "--suite",
                "shift",
                "--suite",
                "learners",
                "--suite",
                "adversary",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "verify run failed: {first:?}");
    assert_eq!(
        first.stdout, second.stdout,
        "same seed must give byte-identical summaries"
    );
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("result: PASS"));
    println!("criterion 10 determinism: byte-identical summaries -> PASS");
}
