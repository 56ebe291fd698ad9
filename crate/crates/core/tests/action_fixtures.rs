use atlas_core::action::{all_reports, conjugation_report, simple_group_shortcut, AutomorphismAction, Conjugation};
use atlas_core::complex::Complex;
use atlas_core::group::{automorphism_group, build_named_group, BuildOptions, GroupTable, DEFAULT_AUT_CAP};

fn group(spec: &str) -> GroupTable {
    build_named_group(&spec.parse().unwrap(), BuildOptions::default()).unwrap()
}

#[test]
fn psl27_genus_three_attains_hurwitz_bound() {
    let g = group("PSL2(7)");
    let c = Complex::build(&g).unwrap();
    let reports = all_reports(&c, &Conjugation(&g)).unwrap();
    let hurwitz: Vec<_> = reports.iter().filter(|r| r.invariants.genus == 3 && r.symbol == "{14,2-3}").collect();
    assert_eq!(hurwitz.len(), 2);
    for r in &hurwitz {
        assert_eq!((r.q_order, r.invariants.edges, r.vertex_orbits), (168, 168, 2));
        let h = r.hurwitz.unwrap();
        assert!(h.equality && h.bound == 168);
        let mut branch = r.branch;
        branch.sort();
        assert_eq!(branch, [2, 3, 7]);
        assert_eq!(simple_group_shortcut(&g, hurwitz.len()), Some(r.q_order));
    }
    // Equality occurs on genus-3 components only, each with full symmetry.
    let equality: Vec<_> = reports.iter().filter(|r| r.hurwitz.is_some_and(|h| h.equality)).collect();
    assert!(!equality.is_empty());
    assert!(equality.iter().all(|r| r.invariants.genus == 3 && r.q_order == 168));
}

#[test]
fn a5_platonic_components() {
    let g = group("A5");
    let c = Complex::build(&g).unwrap();
    let reports = all_reports(&c, &Conjugation(&g)).unwrap();
    for symbol in ["{5,3}", "{3,5}"] {
        let matching: Vec<_> = reports.iter().filter(|r| r.symbol == symbol && r.invariants.genus == 0).collect();
        assert_eq!(matching.len(), 2, "{symbol}");
        for r in matching {
            assert_eq!(r.q_order, 60);
            assert_eq!(simple_group_shortcut(&g, 2), Some(60));
        }
    }
}

#[test]
fn dihedral_symmetry_is_inner_quotient() {
    for n in 3..=8u32 {
        let g = group(&format!("D{}", 2 * n));
        let center = g.center().len() as u64;
        let c = Complex::build(&g).unwrap();
        let reports = all_reports(&c, &Conjugation(&g)).unwrap();
        assert!(reports.iter().all(|r| r.quotient_genus == 0 && r.invariants.genus == 0));
        // The sphere with the rotations at its poles.
        let spheres: Vec<_> = reports.iter().filter(|r| r.symbol == format!("{{{n},2}}")).collect();
        assert!(!spheres.is_empty(), "D{}", 2 * n);
        for r in spheres {
            assert_eq!(r.stabilizer_order, 2 * n as u64);
            assert_eq!(r.q_order, 2 * n as u64 / center, "D{}", 2 * n);
        }
    }
}

#[test]
fn d12_sphere_has_two_vertex_orbits() {
    let g = group("D12");
    let c = Complex::build(&g).unwrap();
    let r = (0..c.component_count())
        .map(|k| conjugation_report(&c, k).unwrap())
        .find(|r| r.symbol == "{6,2}")
        .unwrap();
    assert_eq!((r.q_order, r.invariants.edges, r.vertex_orbits), (6, 6, 2));
}

#[test]
fn extraspecial_automorphism_quotients() {
    for (p, genus) in [(3u64, 1u32), (5, 6)] {
        let g = group(&format!("ES({p})"));
        let c = Complex::build(&g).unwrap();
        let auts = automorphism_group(&g, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(auts.len() as u64, p * p * (p * p - 1) * (p * p - p));
        let action = AutomorphismAction::new(&g, &auts).unwrap();
        let reports = all_reports(&c, &action).unwrap();
        for r in &reports {
            assert_eq!(r.q_order, 2 * p * p);
            assert_eq!(r.q_order, 2 * r.invariants.edges as u64);
            assert_eq!(r.invariants.genus, genus);
            assert_eq!(r.symbol, format!("{{{},{p}}}", 2 * p));
        }
    }
}

#[test]
fn a7_strong_symmetric_genus_components() {
    let g = group("A7");
    let c = Complex::build(&g).unwrap();
    let invariants = c.all_invariants().unwrap();
    let ks: Vec<usize> = (0..invariants.len())
        .filter(|&k| invariants[k].genus == 136 && invariants[k].symbol() == "{14,2-4}")
        .collect();
    assert_eq!(ks.len(), 4);
    for k in ks {
        let r = conjugation_report(&c, k).unwrap();
        assert_eq!((r.q_order, r.invariants.edges), (2520, 2520));
        assert_eq!(r.quotient_genus, 0);
    }
    assert_eq!(simple_group_shortcut(&g, 4), Some(2520));
}
