//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) and asserting every check.

use matroid_forge_core::budget::Budget;
use matroid_forge_core::verify::{self, CheckResult, Scale};

fn big_budget() -> Budget {
    Budget::new(2_000_000_000)
}

fn assert_criterion(name: &str, checks: Vec<CheckResult>) {
    let pass = checks.iter().all(|c| c.pass);
    println!("{} {}", if pass { "PASS" } else { "FAIL" }, name);
    for c in &checks {
        if !c.pass {
            eprintln!("  {}", c.report_line());
        }
    }
    assert!(pass, "{name} failed: {:#?}", checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
}

#[test]
fn criterion_01_size_formulas() {
    let b = big_budget();
    assert_criterion(
        "criterion-01 size formulas |DG| and |LG+| (k <= 6, groups through order 4)",
        verify::criterion_size_formulas(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_02_identifications() {
    let b = big_budget();
    assert_criterion(
        "criterion-02 identifications DG(3,{1})=M(K4), LG+(3,Z2)=F7, contraction collapses",
        verify::criterion_identifications(&b).unwrap(),
    );
}

#[test]
fn criterion_03_minor_exclusions() {
    let b = big_budget();
    assert_criterion(
        "criterion-03 line-minor thresholds of DG(k,G) and PG(2,2)",
        verify::criterion_minor_exclusions(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_04_kung_bound() {
    let b = big_budget();
    assert_criterion(
        "criterion-04 Kung bound with equality exactly at PG(2,2), PG(2,3)",
        verify::criterion_kung(&b).unwrap(),
    );
}

#[test]
fn criterion_05_representability() {
    let b = big_budget();
    assert_criterion(
        "criterion-05 representability of DG(3,Z2) and LG+(3,Z2) over small fields",
        verify::criterion_representability(&b).unwrap(),
    );
}

#[test]
fn criterion_06_group_recovery() {
    let b = big_budget();
    assert_criterion(
        "criterion-06 group recovery round trip (groups through order 4, m in {4,5})",
        verify::criterion_group_recovery(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_07_tangle_threshold() {
    let b = big_budget();
    assert_criterion(
        "criterion-07 standard tangle of DG(n,Z2) exists iff 3 <= k <= ceil(2n/3)+1",
        verify::criterion_tangle_threshold(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_08_linking() {
    let b = big_budget();
    assert_criterion(
        "criterion-08 linking minors on 200 seeded matroids against the separation oracle",
        verify::criterion_linking(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_09_circuit_rank_equivalence() {
    let b = big_budget();
    assert_criterion(
        "criterion-09 circuit-rule oracle equals rank formulas on 100 seeded biased graphs",
        verify::criterion_circuit_rank_equivalence(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_10_star_structure() {
    let b = big_budget();
    assert_criterion(
        "criterion-10 star circuit structure; rank-5 free spike is not a star",
        verify::criterion_star_structure(&b).unwrap(),
    );
}

#[test]
fn criterion_11_reid() {
    let b = big_budget();
    assert_criterion(
        "criterion-11 Reid incidence cycles and the R(2) restriction of LG+(3,Z2)",
        verify::criterion_reid(&b).unwrap(),
    );
}

#[test]
fn criterion_12_delta_modular() {
    let b = big_budget();
    assert_criterion(
        "criterion-12 delta-modular certification, reduction, bounds, minor commutation",
        verify::criterion_delta(Scale::Desk, &b).unwrap(),
    );
}

#[test]
fn criterion_13_heller() {
    let b = big_budget();
    assert_criterion(
        "criterion-13 exhaustive binary rank-3 extremal instance",
        verify::criterion_heller(&b).unwrap(),
    );
}
