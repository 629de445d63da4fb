use commcent::iso::isomorphic;
use commcent::presentations::{
    first_extension, heisenberg_mod, make_l, order_formula, search_extensions, ExtensionParams, FamilySpec,
    NormalForm, QuotientKind,
};
use commcent::Error;

fn names(p: usize, r: usize, ms: &[usize]) -> Vec<String> {
    search_extensions(p, r, ms).unwrap().iter().map(|e| e.params.to_string()).collect()
}

#[test]
fn search_goldens() {
    assert_eq!(names(3, 1, &[3]), ["ce:p=3,r=1,m=3,a=1,b=0,g=0"]);
    assert_eq!(
        names(2, 0, &[4]),
        ["ce:p=2,r=0,m=4,a=0,b=0,g=1", "ce:p=2,r=0,m=4,a=0,b=1,g=1", "ce:p=2,r=0,m=4,a=2,b=2,g=1"]
    );
    assert!(names(2, 0, &[2]).is_empty());
    assert!(names(3, 0, &[3]).is_empty());
}

#[test]
fn order_81_extensions_are_not_capable_targets_for_p2() {
    assert!(search_extensions(2, 1, &[2, 4]).unwrap().is_empty());
}

#[test]
fn exemplar_quotients() {
    let ex = search_extensions(3, 1, &[3]).unwrap().remove(0);
    let g = &ex.group;
    let q = g.quotient_by_central(&g.center()).unwrap();
    assert!(isomorphic(&q, &make_l(3, 1).unwrap()).unwrap().is_some());
    assert_eq!(ex.descriptor.z_order, 3);
    assert_eq!(ex.descriptor.quotient_kind, QuotientKind::Nonabelian);

    let found = search_extensions(2, 0, &[4]).unwrap();
    let heis = heisenberg_mod(4).unwrap();
    assert!(found.iter().any(|e| isomorphic(&e.group, &heis).unwrap().is_some()));
}

#[test]
fn pth_powers_commute_in_twisted_exemplars() {
    for ex in search_extensions(3, 1, &[3]).unwrap() {
        let g = &ex.group;
        let c = g.codec().unwrap();
        let a = c.encode(NormalForm::new(1, 0, 0));
        let b = c.encode(NormalForm::new(0, 1, 0));
        assert!(g.commute(g.power(a, 3), g.power(b, 3)), "{}", ex.params);
    }
}

#[test]
fn first_extension_matches_search_head() {
    let first = first_extension(3, 1, &[3, 9]).unwrap().unwrap();
    assert_eq!(first.params, search_extensions(3, 1, &[3]).unwrap()[0].params);
    assert!(first_extension(2, 1, &[2]).unwrap().is_none());
}

#[test]
fn search_rejects_bad_input() {
    assert!(matches!(search_extensions(4, 0, &[4]), Err(Error::InvalidParameters(_))));
    assert!(matches!(search_extensions(3, 2, &[3]), Err(Error::InvalidParameters(_))));
    assert!(matches!(search_extensions(3, 1, &[0]), Err(Error::InvalidParameters(_))));
    assert!(matches!(search_extensions(7, 1, &[1000]), Err(Error::BoundExceeded { .. })));
}

#[test]
fn element_orders_in_l() {
    for (p, r) in [(2, 0), (2, 1), (3, 0), (3, 1), (5, 1)] {
        let g = make_l(p, r).unwrap();
        let c = *g.codec().unwrap();
        for i in 0..p * p {
            for j in 0..p * p {
                let x = c.encode(NormalForm::new(i, j, 0));
                assert_eq!(g.element_order(x), order_formula(p, i, j), "L({p},{r}) x^{i}y^{j}");
            }
        }
    }
}

#[test]
fn normal_form_labels() {
    let g = heisenberg_mod(9).unwrap();
    let c = g.codec().unwrap();
    assert_eq!(c.render(NormalForm::new(0, 0, 0)), "1");
    assert_eq!(c.render(NormalForm::new(1, 2, 0)), "ab^2");
    assert_eq!(g.label(c.encode(NormalForm::new(0, 0, 4))), "z^4");
    for x in [0, 17, 728] {
        assert_eq!(c.encode(c.decode(x)), x);
    }
}

#[test]
fn family_strings_round_trip() {
    for s in ["L:p=3,r=1", "heis:q=9", "ce:p=3,r=1,m=3,a=1,b=0,g=1", "search:p=3,r=1,m=3,9"] {
        let spec: FamilySpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
        let g = spec.build().unwrap();
        if !matches!(spec, FamilySpec::Search { .. }) {
            assert_eq!(spec.order(), Some(g.order()));
        }
    }
    for bad in ["", "heis", "heis:q=x", "L:p=3", "ce:p=3,r=1", "nope:p=2"] {
        assert!(matches!(bad.parse::<FamilySpec>(), Err(Error::Parse(_))), "{bad:?}");
    }
}

#[test]
fn extension_orders() {
    assert_eq!(ExtensionParams::new(3, 1, 9, 0, 0, 1).order(), 729);
    assert_eq!(ExtensionParams::new(2, 0, 4, 0, 0, 1).order(), 64);
}
