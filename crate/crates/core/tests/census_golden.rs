use atlas_core::complex::{census, commuting_pair_count, Complex};
use atlas_core::golden::{diff_census, golden_table};
use atlas_core::group::{build_named_group, BuildOptions};

fn check(label: &str) {
    let g = build_named_group(&label.parse().unwrap(), BuildOptions::default()).unwrap();
    let c = Complex::build(&g).unwrap();
    assert_eq!(c.triangle_count(), g.order() * g.order() - commuting_pair_count(&g));
    let rows = census(&c.all_invariants().unwrap());
    let diff = diff_census(&rows, &golden_table(label).unwrap());
    assert!(diff.is_empty(), "{label}: {diff:#?}");
}

#[test]
fn small_groups_match_reference_tables() {
    for label in ["S3", "A4", "S4", "SL2(3)", "A5", "S5", "SL2(5)", "PSL2(7)"] {
        check(label);
    }
}

#[test]
fn sl2_7_matches_reference_table() {
    check("SL2(7)");
}

#[test]
fn a6_matches_reference_table() {
    check("A6");
}

#[test]
fn s6_matches_reference_table() {
    check("S6");
}

#[test]
fn a7_matches_reference_table() {
    check("A7");
}
