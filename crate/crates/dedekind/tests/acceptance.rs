//! Acceptance battery: one test per criterion, each printing a pass/fail
//! line. Criteria 1-11 are the entries of `verify_suite`; criterion 12 is
//! determinism of that suite's serialized results across repeated runs and
//! across 1-, 4-, and 16-way thread pools.

use dedekind::verify::{verify_suite, SuiteResult};
use std::sync::OnceLock;

fn suite() -> &'static SuiteResult {
    static SUITE: OnceLock<SuiteResult> = OnceLock::new();
    SUITE.get_or_init(|| verify_suite().expect("suite runs"))
}

fn check(n: usize, id_fragment: &str) {
    let s = suite();
    let entry = s
        .entries
        .iter()
        .find(|e| e.id.contains(id_fragment))
        .unwrap_or_else(|| panic!("no suite entry matching {id_fragment}"));
    println!(
        "criterion {n:2}: {} [{}]",
        if entry.pass { "PASS" } else { "FAIL" },
        entry.id
    );
    assert!(entry.pass, "{}: {:?}", entry.id, entry.metrics);
}

#[test]
fn criterion_01_thm3_densities() {
    check(1, "criterion-01");
}

#[test]
fn criterion_02_cor1_cor2_densities() {
    check(2, "criterion-02");
}

#[test]
fn criterion_03_cor3_densities() {
    check(3, "criterion-03");
}

#[test]
fn criterion_04_lemma3_equivalence() {
    check(4, "criterion-04");
}

#[test]
fn criterion_05_thm3_identity() {
    check(5, "criterion-05");
}

#[test]
fn criterion_06_thm2_kappa() {
    check(6, "criterion-06");
}

#[test]
fn criterion_07_prop1_equivalence() {
    check(7, "criterion-07");
}

#[test]
fn criterion_08_lemma2_extension() {
    check(8, "criterion-08");
}

#[test]
fn criterion_09_quadratic_factorization() {
    check(9, "criterion-09");
}

#[test]
fn criterion_10_residue() {
    check(10, "criterion-10");
}

#[test]
fn criterion_11_cor4_witnesses() {
    check(11, "criterion-11");
}

#[test]
fn criterion_12_determinism() {
    let baseline = suite().results_json();
    // second plain run
    let rerun = verify_suite().expect("suite runs").results_json();
    let mut pass = rerun == baseline;
    // pinned-width thread pools
    for threads in [1usize, 4, 16] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool");
        let out = pool.install(|| verify_suite().expect("suite runs").results_json());
        if out != baseline {
            pass = false;
            eprintln!("{threads}-way output differs from baseline");
        }
    }
    println!(
        "criterion 12: {} [determinism across reruns and 1/4/16-way pools]",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}
