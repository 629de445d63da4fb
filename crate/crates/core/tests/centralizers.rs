mod common;

use std::collections::BTreeMap;

use commcent::centralizers::{
    cent_count, centralizer_inclusions, distinct_centralizers, distinct_centralizers_naive, predicted_cent_count,
};
use commcent::presentations::{heisenberg_mod, make_l};

#[test]
fn coset_method_matches_naive_on_catalog() {
    for (name, g) in common::catalog(512) {
        let fast = distinct_centralizers(&g).unwrap();
        let slow = distinct_centralizers_naive(&g).unwrap();
        assert_eq!(fast, slow, "{name}");
    }
}

#[test]
fn assignment_names_each_centralizer() {
    let g = heisenberg_mod(4).unwrap();
    let r = distinct_centralizers(&g).unwrap();
    for x in 0..g.order() {
        assert_eq!(r.centralizer_of(x), &g.centralizer_of(x));
    }
    for (i, &w) in r.witnesses.iter().enumerate() {
        assert_eq!(r.assignment[w] as usize, i);
        assert!(r.assignment[..w].iter().all(|&a| a as usize != i), "witness is least");
    }
    assert_eq!(r.distinct[0].size(), g.order());
}

// Values frozen from the one-scan-per-element reference.
#[test]
fn frozen_counts() {
    type Case = (&'static str, commcent::Group, usize, &'static [(usize, usize)]);
    let cases: [Case; 6] = [
        ("heis:q=3", heisenberg_mod(3).unwrap(), 5, &[(9, 4), (27, 1)]),
        ("heis:q=4", heisenberg_mod(4).unwrap(), 10, &[(16, 6), (32, 3), (64, 1)]),
        ("heis:q=5", heisenberg_mod(5).unwrap(), 7, &[(25, 6), (125, 1)]),
        ("heis:q=8", heisenberg_mod(8).unwrap(), 22, &[(64, 12), (128, 6), (256, 3), (512, 1)]),
        ("L:p=2,r=1", make_l(2, 1).unwrap(), 4, &[(8, 3), (16, 1)]),
        ("L:p=3,r=1", make_l(3, 1).unwrap(), 5, &[(27, 4), (81, 1)]),
    ];
    for (name, g, count, orders) in cases {
        let r = distinct_centralizers(&g).unwrap();
        assert_eq!(r.count, count, "{name}");
        assert_eq!(r.orders, orders.iter().copied().collect::<BTreeMap<_, _>>(), "{name}");
    }
}

#[test]
fn predicted_counts_hold_for_heisenberg_squares() {
    assert_eq!(cent_count(&heisenberg_mod(4).unwrap()).unwrap(), predicted_cent_count(2));
    assert_eq!(cent_count(&heisenberg_mod(9).unwrap()).unwrap(), predicted_cent_count(3));
}

#[test]
fn inclusions_respect_size() {
    let r = distinct_centralizers(&heisenberg_mod(9).unwrap()).unwrap();
    let inc = centralizer_inclusions(&r);
    for &(u, v) in &inc {
        assert!(r.distinct[u].size() < r.distinct[v].size());
        assert!(r.distinct[u].is_subset_of(&r.distinct[v]));
    }
    // Every proper centralizer sits inside the whole group.
    assert_eq!(inc.iter().filter(|&&(_, v)| v == 0).count(), r.count - 1);
}
