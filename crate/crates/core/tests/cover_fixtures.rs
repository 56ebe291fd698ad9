use atlas_core::cover::{analyze_central_cover, analyze_cover, CoverOptions, CoverReport, Ramification};
use atlas_core::group::{build_named_group, BuildOptions, GroupTable};

fn group(spec: &str) -> GroupTable {
    build_named_group(&spec.parse().unwrap(), BuildOptions::default()).unwrap()
}

fn r(ell: u32, ell_x: u32, ell_y: u32) -> Ramification {
    Ramification { ell, ell_x, ell_y }
}

type Lift = (String, u32, Ramification, u32);

/// Sorted (symbol, faces, ramification, m) of every lift over each base type.
fn lifts_by_base(report: &CoverReport) -> Vec<(String, u32, Vec<Lift>)> {
    let mut out: Vec<_> = report
        .bases
        .iter()
        .map(|b| {
            let mut lifts: Vec<_> = b
                .lifts
                .iter()
                .map(|l| (l.symbol.clone(), l.invariants.faces, l.ramification, l.m))
                .collect();
            lifts.sort();
            (b.symbol.clone(), b.invariants.faces, lifts)
        })
        .collect();
    out.sort();
    out
}

fn s4_klein() -> (GroupTable, Vec<u32>) {
    let g = group("S4");
    let gens = [g.parse_element("(1 2)(3 4)").unwrap(), g.parse_element("(1 3)(2 4)").unwrap()];
    let n = g.subgroup_closure(&gens);
    (g, n)
}

#[test]
fn symmetric_four_over_symmetric_three() {
    let (g, n) = s4_klein();
    assert_eq!(n.len(), 4);
    let report = analyze_cover(&g, &n, CoverOptions::default()).unwrap();
    assert_eq!(report.base_order, 6);
    let sphere = |s: &str, f: u32, ram: Ramification, m: u32| (s.to_owned(), f, ram, m);
    let expected = vec![
        (
            "{3,2}".to_owned(),
            2,
            vec![
                sphere("{3,2}", 2, r(1, 1, 1), 1),
                sphere("{3,2}", 2, r(1, 1, 1), 1),
                sphere("{3,2}", 2, r(1, 1, 1), 1),
                sphere("{3,2}", 2, r(1, 1, 1), 1),
                sphere("{3,4}", 8, r(1, 2, 2), 4),
                sphere("{6,2-4}", 8, r(2, 1, 2), 8),
            ],
        ),
        (
            "{4,2-3}".to_owned(),
            3,
            vec![
                sphere("{4,2-3}", 3, r(1, 1, 1), 1),
                sphere("{4,2-3}", 3, r(1, 1, 1), 1),
                sphere("{4,2-3}", 3, r(1, 1, 1), 1),
                sphere("{4,2-3}", 3, r(1, 1, 1), 1),
                sphere("{4,3-4}", 12, r(1, 1, 2), 4),
                sphere("{8,2-3}", 6, r(2, 1, 1), 4),
                sphere("{8,3-4}", 6, r(2, 1, 2), 4),
            ],
        ),
    ];
    let got = lifts_by_base(&report);
    assert_eq!(got.iter().map(|b| (&b.0, b.1)).collect::<Vec<_>>(), expected.iter().map(|b| (&b.0, b.1)).collect::<Vec<_>>());
    // Multiplicities over {4,2-3} follow from F' = (m/ℓ)F.
    assert_eq!(got, expected);
    for b in &report.bases {
        assert_eq!(b.multiplicity_sum(), 16);
    }
}

#[test]
fn lift_choice_does_not_change_lift_data() {
    let (g, n) = s4_klein();
    let reference = analyze_cover(&g, &n, CoverOptions::default()).unwrap().lift_data();
    for seed in 1..6 {
        let shuffled = analyze_cover(&g, &n, CoverOptions { lift_seed: Some(seed) }).unwrap();
        assert_eq!(shuffled.lift_data(), reference, "seed {seed}");
    }
}

#[test]
fn special_linear_three_over_its_center() {
    let g = group("SL2(3)");
    let center = g.center();
    let report = analyze_central_cover(&g, &center, CoverOptions::default()).unwrap();
    println!("{}", report.render_text());
    assert_eq!(report.base_order, 12);
    assert_eq!(report.kernel_exponent, 2);
    let mut doubled = 0;
    for b in &report.bases {
        let mut lifts: Vec<_> = b.lifts.iter().map(|l| (l.symbol.as_str(), l.invariants.faces, l.ramification, l.m)).collect();
        lifts.sort();
        if b.symbol == "{3,3}" && b.invariants.faces == 4 {
            assert_eq!(
                lifts,
                vec![("{3,3}", 4, r(1, 1, 1), 1), ("{3,3}", 4, r(1, 1, 1), 1), ("{6,3}", 4, r(2, 1, 1), 2)]
            );
            let ramified = b.lifts.iter().find(|l| l.ramification.ell == 2).unwrap();
            let mono = ramified.monodromy.as_ref().unwrap();
            assert_eq!(mono.order, 2);
            assert_eq!(mono.name, "[[2,0],[0,2]]");
            doubled += 1;
        } else {
            assert!(b.lifts.iter().all(|l| l.ramification == r(1, 1, 1)), "{}", b.symbol);
            assert!(b.lifts.iter().all(|l| l.invariants.type_key() == b.invariants.type_key()));
        }
    }
    assert_eq!(doubled, 2);
    assert_eq!(report.bases.len(), 5);
}
