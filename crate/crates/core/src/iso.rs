//! Isomorphism testing for small groups by backtracking over generator
//! images.

use std::collections::VecDeque;

use crate::conjugacy::orbit_partition;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

pub const DEFAULT_ISO_BOUND: usize = 10_000;

const POWER_PROBES: [u64; 3] = [2, 3, 5];

/// Per-element fingerprints preserved by every isomorphism.
#[derive(Clone, Debug)]
pub struct Invariants {
    fingerprint: Vec<[u64; 6]>,
    sorted: Vec<[u64; 6]>,
}

impl Invariants {
    pub fn of(g: &Group) -> Invariants {
        let mut class_size = vec![0u64; g.order()];
        for class in orbit_partition(g) {
            for &x in &class {
                class_size[x as usize] = class.len() as u64;
            }
        }
        let mut roots = vec![0u64; g.order()];
        for (shift, k) in POWER_PROBES.iter().enumerate() {
            for y in 0..g.order() {
                roots[g.power(y, *k)] += 1 << (21 * shift);
            }
        }
        let relative = relative_orders(g);
        let base = |x: Elem| ((g.element_order(x) as u64) << 32) | class_size[x];
        let fingerprint: Vec<[u64; 6]> = (0..g.order())
            .map(|x| {
                let mut f = [base(x), 0, 0, 0, roots[x], relative[x]];
                for (slot, k) in f[1..4].iter_mut().zip(POWER_PROBES) {
                    *slot = base(g.power(x, k));
                }
                f
            })
            .collect();
        let mut sorted = fingerprint.clone();
        sorted.sort_unstable();
        Invariants { fingerprint, sorted }
    }
}

/// Returns images of `g1`'s generators under an isomorphism onto `g2`.
pub fn isomorphic(g1: &Group, g2: &Group) -> Result<Option<Vec<(Elem, Elem)>>> {
    isomorphic_bounded(g1, g2, DEFAULT_ISO_BOUND)
}

pub fn isomorphic_bounded(g1: &Group, g2: &Group, bound: usize) -> Result<Option<Vec<(Elem, Elem)>>> {
    for g in [g1, g2] {
        if g.order() > bound {
            return Err(Error::BoundExceeded { order: g.order(), bound });
        }
    }
    if g1.order() != g2.order() {
        return Ok(None);
    }
    Ok(isomorphic_with(g1, &Invariants::of(g1), g2, &Invariants::of(g2)))
}

/// As [`isomorphic`], with invariants supplied by the caller.
pub fn isomorphic_with(g1: &Group, i1: &Invariants, g2: &Group, i2: &Invariants) -> Option<Vec<(Elem, Elem)>> {
    if g1.order() != g2.order() || i1.sorted != i2.sorted {
        return None;
    }
    let gens = irredundant(g1);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| (0..g2.order()).filter(|&y| i2.fingerprint[y] == i1.fingerprint[s]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    let phi = search(g1, i1, g2, i2, &gens, &candidates, &mut images)?;
    Some(g1.generators().iter().map(|&s| (s, phi[s] as usize)).collect())
}

/// Orders of each element modulo characteristic subgroups, packed into one
/// word. p is the least prime dividing |G|.
fn relative_orders(g: &Group) -> Vec<u64> {
    let n = g.order();
    let mut commutators: Vec<Elem> = Vec::new();
    let gens = g.generators();
    for &s in gens {
        for &t in gens {
            commutators.push(g.product(g.product(g.inverse(s), g.inverse(t)), g.product(s, t)));
        }
    }
    let mut derived = g.subgroup_generated(&commutators);
    loop {
        let missing: Option<Elem> =
            derived.iter().find_map(|h| gens.iter().map(|&s| g.conjugate(s, h)).find(|&c| !derived.contains(c)));
        match missing {
            Some(c) => {
                commutators.push(c);
                derived = g.subgroup_generated(&commutators);
            }
            None => break,
        }
    }
    let p = (2..=n.max(2)).find(|d| n % d == 0).unwrap_or(1) as u64;
    let mut powers: Vec<Elem> = Vec::new();
    let mut agemo = g.subgroup_generated(&[]);
    for x in 0..n {
        let y = g.power(x, p);
        if !agemo.contains(y) {
            powers.push(y);
            agemo = g.subgroup_generated(&powers);
        }
    }
    let center = g.center();
    let modulo = |x: Elem, h: &crate::group::ElementSet| -> u64 {
        let (mut y, mut k) = (x, 1u64);
        while !h.contains(y) {
            y = g.product(y, x);
            k += 1;
        }
        k
    };
    (0..n).map(|x| (modulo(x, &center) << 40) | (modulo(x, &derived) << 20) | modulo(x, &agemo)).collect()
}

fn irredundant(g: &Group) -> Vec<Elem> {
    let mut kept: Vec<Elem> = Vec::new();
    let mut span = g.subgroup_generated(&[g.identity()]);
    for &s in g.generators() {
        if !span.contains(s) {
            kept.push(s);
            span = g.subgroup_generated(&kept);
        }
    }
    kept
}

fn search(
    g1: &Group,
    i1: &Invariants,
    g2: &Group,
    i2: &Invariants,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
) -> Option<Vec<u32>> {
    let d = images.len();
    if d == gens.len() {
        return extend(g1, g2, gens, images);
    }
    let s = gens[d];
    'cand: for &y in &candidates[d] {
        for (&t, &u) in gens[..d].iter().zip(images.iter()) {
            let words1 = [g1.product(t, s), g1.product(g1.inverse(t), s), g1.product(t, g1.product(s, s))];
            let words2 = [g2.product(u, y), g2.product(g2.inverse(u), y), g2.product(u, g2.product(y, y))];
            if g1.commute(t, s) != g2.commute(u, y)
                || words1.iter().zip(&words2).any(|(&w1, &w2)| i1.fingerprint[w1] != i2.fingerprint[w2])
            {
                continue 'cand;
            }
        }
        images.push(y);
        if let Some(phi) = search(g1, i1, g2, i2, gens, candidates, images) {
            return Some(phi);
        }
        images.pop();
    }
    None
}

/// Extends a generator assignment along the Cayley graph and checks that
/// the result is a well-defined bijection.
fn extend(g1: &Group, g2: &Group, gens: &[Elem], images: &[Elem]) -> Option<Vec<u32>> {
    let n = g1.order();
    let mut phi = vec![u32::MAX; n];
    let mut hit = vec![false; n];
    phi[g1.identity()] = g2.identity() as u32;
    hit[g2.identity()] = true;
    let mut queue = VecDeque::from([g1.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g1.product(x, s);
            let w = g2.product(fx, t) as u32;
            if phi[y] == u32::MAX {
                if hit[w as usize] {
                    return None;
                }
                hit[w as usize] = true;
                phi[y] = w;
                queue.push_back(y);
            } else if phi[y] != w {
                return None;
            }
        }
    }
    phi.iter().all(|&v| v != u32::MAX).then_some(phi)
}
