mod common;

use commcent::group::{validate_axioms, AssocScan, AxiomFailure, Validation};
use commcent::iso::isomorphic;
use commcent::presentations::{
    central_extension, cyclic, direct_product, heisenberg_mod, make_l, semidirect_cyclic, ExtensionParams,
};
use commcent::{Error, Group};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn table(g: &Group) -> Vec<Vec<usize>> {
    (0..g.order()).map(|x| (0..g.order()).map(|y| g.product(x, y)).collect()).collect()
}

#[test]
fn light_agrees_with_full_scan_on_catalog() {
    for (name, g) in common::catalog(512) {
        let rule = |x, y| g.product(x, y);
        for scan in [AssocScan::Light, AssocScan::Full] {
            let v = validate_axioms(g.order(), &rule, g.identity(), Some(g.generators()), scan).unwrap();
            assert_eq!(v, Validation::Pass, "{name} {scan:?}");
        }
    }
}

#[test]
fn light_agrees_with_full_scan_on_corrupted_tables() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, g) in common::catalog(64) {
        if g.order() < 2 {
            continue;
        }
        for _ in 0..5 {
            let mut t = table(&g);
            let (x, y) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
            let old = t[x][y];
            t[x][y] = (old + rng.gen_range(1..g.order())) % g.order();
            let rule = move |a: usize, b: usize| t[a][b];
            let light = validate_axioms(g.order(), &rule, g.identity(), Some(g.generators()), AssocScan::Light).unwrap();
            let full = validate_axioms(g.order(), &rule, g.identity(), Some(g.generators()), AssocScan::Full).unwrap();
            assert!(!light.passed() && !full.passed(), "{name}: corrupted entry ({x}, {y}) accepted");
        }
    }
}

#[test]
fn full_scan_is_bounded() {
    let g = heisenberg_mod(9).unwrap();
    let rule = |x, y| g.product(x, y);
    let r = validate_axioms(g.order(), &rule, 0, None, AssocScan::Full);
    assert!(matches!(r, Err(Error::BoundExceeded { bound: 512, .. })));
}

#[test]
fn failures_are_reported_as_values() {
    let out_of_range = validate_axioms(3, &|x, y| x + y, 0, None, AssocScan::Light).unwrap();
    assert!(matches!(out_of_range, Validation::Fail(AxiomFailure::OutOfRange { .. })));
    let not_generated = validate_axioms(4, &|x, y| (x + y) % 4, 0, Some(&[2]), AssocScan::Light).unwrap();
    assert_eq!(not_generated, Validation::Fail(AxiomFailure::NotGenerated { reached: 2 }));
    // x∘y = x − y mod 3 has no two-sided identity.
    let minus = validate_axioms(3, &|x, y| (x + 3 - y) % 3, 0, None, AssocScan::Full).unwrap();
    assert!(matches!(minus, Validation::Fail(AxiomFailure::Identity { .. })));
}

#[test]
fn inverses_and_orders() {
    for (name, g) in common::catalog(512) {
        for x in 0..g.order() {
            assert_eq!(g.product(x, g.inverse(x)), g.identity(), "{name}");
            let o = g.element_order(x);
            assert_eq!(g.power(x, o as u64), g.identity(), "{name}");
            assert_eq!(g.order() % o, 0, "{name}: Lagrange");
        }
    }
}

#[test]
fn center_and_centralizers_are_subgroups() {
    for (name, g) in common::catalog(256) {
        let z = g.center();
        assert!(z.contains(g.identity()));
        assert_eq!(g.order() % z.size(), 0, "{name}");
        for x in [1 % g.order(), g.order() - 1] {
            let c = g.centralizer_of(x);
            assert!(c.contains(x) && z.is_subset_of(&c), "{name}");
            assert_eq!(g.subgroup_generated(&c.iter().collect::<Vec<_>>()), c, "{name}");
        }
    }
}

#[test]
fn checked_multiplication() {
    let g = make_l(2, 1).unwrap();
    assert_eq!(g.mul(3, 5).unwrap(), g.product(3, 5));
    assert!(matches!(g.mul(16, 0), Err(Error::IndexOutOfRange { index: 16, order: 16 })));
}

#[test]
fn constructors_reject_bad_parameters() {
    assert!(matches!(semidirect_cyclic(4, 2, 2), Err(Error::InvalidAction(_))));
    assert!(matches!(semidirect_cyclic(7, 2, 2), Err(Error::InvalidAction(_))));
    assert!(matches!(direct_product(&cyclic(100), &cyclic(100), 1000), Err(Error::BoundExceeded { .. })));
    assert!(matches!(heisenberg_mod(6), Err(Error::InvalidParameters(_))));
    assert!(matches!(make_l(4, 0), Err(Error::InvalidParameters(_))));
}

#[test]
fn central_extension_examples() {
    // Heisenberg groups reappear as twisted-free extensions.
    for p in [2, 3] {
        let g = central_extension(ExtensionParams::new(p, 0, p * p, 0, 0, 1)).unwrap();
        assert!(isomorphic(&g, &heisenberg_mod(p * p).unwrap()).unwrap().is_some());
    }
    let g = central_extension(ExtensionParams::new(2, 0, 4, 0, 0, 1)).unwrap();
    assert_eq!(g.order(), 64);
    // Valid, but b³ is central so the center outgrows ⟨z⟩.
    let g = central_extension(ExtensionParams::new(3, 1, 3, 0, 0, 1)).unwrap();
    assert!(g.center().size() > 3);
    let bad = central_extension(ExtensionParams::new(3, 1, 9, 1, 0, 1));
    assert!(matches!(bad, Err(Error::Axioms(AxiomFailure::NotAssociative { .. }))));
}

#[test]
fn full_scan_confirms_order_243_extension() {
    let g = central_extension(ExtensionParams::new(3, 1, 3, 1, 0, 1)).unwrap();
    let rule = |x, y| g.product(x, y);
    let full = validate_axioms(243, &rule, 0, None, AssocScan::Full).unwrap();
    let light = validate_axioms(243, &rule, 0, Some(g.generators()), AssocScan::Light).unwrap();
    assert_eq!((full, light), (Validation::Pass, Validation::Pass));
}

#[test]
fn quotient_by_center() {
    let g = heisenberg_mod(4).unwrap();
    let q = g.quotient_by_central(&g.center()).unwrap();
    let z4 = cyclic(4);
    assert!(isomorphic(&q, &direct_product(&z4, &z4, 100).unwrap()).unwrap().is_some());
    let d8 = semidirect_cyclic(4, 2, 3).unwrap();
    let not_central = d8.subgroup_generated(&[2]);
    assert!(matches!(d8.quotient_by_central(&not_central), Err(Error::NotCentral)));
}
