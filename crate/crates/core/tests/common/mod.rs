#![allow(dead_code)]

use commcent::presentations::{
    central_extension, cyclic, direct_product, heisenberg_mod, make_l, semidirect_cyclic, ExtensionParams,
};
use commcent::{Group, SimpleGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Small groups from every constructor, sorted by order.
pub fn catalog(max_order: usize) -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> = Vec::new();
    let mut add = |name: String, g: commcent::Result<Group>| {
        let g = g.unwrap_or_else(|e| panic!("{name}: {e}"));
        if g.order() <= max_order {
            out.push((name, g));
        }
    };
    for n in [1, 2, 6, 16, 27] {
        add(format!("Z{n}"), Ok(cyclic(n)));
    }
    add("Z4xZ4".into(), direct_product(&cyclic(4), &cyclic(4), 1000));
    add("Z2xZ2xZ2".into(), direct_product(&direct_product(&cyclic(2), &cyclic(2), 100).unwrap(), &cyclic(2), 100));
    add("S3".into(), semidirect_cyclic(3, 2, 2));
    add("D8".into(), semidirect_cyclic(4, 2, 3));
    add("D10".into(), semidirect_cyclic(5, 2, 4));
    add("Z7:Z3".into(), semidirect_cyclic(7, 3, 2));
    add("Z9:Z3".into(), semidirect_cyclic(9, 3, 4));
    add("S3xZ4".into(), direct_product(&semidirect_cyclic(3, 2, 2).unwrap(), &cyclic(4), 1000));
    for (p, r) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
        add(format!("L:p={p},r={r}"), make_l(p, r));
    }
    for q in [2, 3, 4, 5, 7, 8] {
        add(format!("heis:q={q}"), heisenberg_mod(q));
    }
    for (p, r, m, a, b, c) in [(2, 0, 2, 1, 0, 1), (2, 0, 2, 0, 1, 1), (2, 0, 4, 2, 0, 1), (3, 1, 3, 1, 0, 1), (3, 0, 3, 0, 0, 1)] {
        let params = ExtensionParams::new(p, r, m, a, b, c);
        add(params.to_string(), central_extension(params));
    }
    out.sort_by_key(|(_, g)| g.order());
    out
}

/// Isomorphism by trying every permutation; only for tiny graphs.
pub fn brute_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> bool {
    let n = g1.n_vertices();
    if n != g2.n_vertices() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|u| (u + 1..n).all(|v| g1.has_edge(u, v) == g2.has_edge(perm[u], perm[v]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot has a successor");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Pairs of graphs on at most 8 vertices: half relabelled copies, half
/// independent draws with equal edge counts where possible.
pub fn small_graph_pairs(seed: u64, count: usize) -> Vec<(SimpleGraph, SimpleGraph)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(1..=8);
            let d = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, d);
            let h = if k % 2 == 0 {
                g.permuted(&random_permutation(&mut rng, n))
            } else {
                let mut h = random_graph(&mut rng, n, d);
                for _ in 0..20 {
                    if h.edge_count() == g.edge_count() {
                        break;
                    }
                    h = random_graph(&mut rng, n, d);
                }
                h
            };
            (g, h)
        })
        .collect()
}
