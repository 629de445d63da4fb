//! The set Cent(G) of distinct element centralizers.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::conjugacy::DEFAULT_MAX_ORDER;
use crate::error::{Error, Result};
use crate::group::{Elem, ElementSet, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentReport {
    /// Whole group first, then proper centralizers by (size, members).
    pub distinct: Vec<ElementSet>,
    pub count: usize,
    /// Size → number of distinct centralizers of that size.
    pub orders: BTreeMap<usize, usize>,
    /// Least element whose centralizer is `distinct[i]`.
    pub witnesses: Vec<Elem>,
    /// `assignment[x]` is the index in `distinct` of the centralizer of `x`.
    pub assignment: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentFragment {
    pub cent_count: usize,
    pub predicted: usize,
    pub orders: BTreeMap<usize, usize>,
}

impl CentReport {
    fn assemble(order: usize, found: Vec<(ElementSet, Elem)>, owner: &[Elem]) -> CentReport {
        let mut found = found;
        found.sort_by(|(a, _), (b, _)| {
            let whole = |s: &ElementSet| s.size() != order;
            (whole(a), a.size(), a).cmp(&(whole(b), b.size(), b))
        });
        let mut orders = BTreeMap::new();
        for (s, _) in &found {
            *orders.entry(s.size()).or_insert(0) += 1;
        }
        let (distinct, witnesses): (Vec<_>, Vec<_>) = found.into_iter().unzip();
        let position: HashMap<Elem, u32> = witnesses.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
        let assignment = owner.iter().map(|w| position[w]).collect();
        CentReport { count: distinct.len(), distinct, orders, witnesses, assignment }
    }

    pub fn fragment(&self, predicted: usize) -> CentFragment {
        CentFragment { cent_count: self.count, predicted, orders: self.orders.clone() }
    }

    /// Index of `centralizer` among `distinct`.
    pub fn index_of(&self, centralizer: &ElementSet) -> Option<usize> {
        self.distinct.iter().position(|s| s == centralizer)
    }

    pub fn centralizer_of(&self, x: Elem) -> &ElementSet {
        &self.distinct[self.assignment[x] as usize]
    }
}

fn check_bound(g: &Group, bound: usize) -> Result<()> {
    if g.order() > bound {
        Err(Error::BoundExceeded { order: g.order(), bound })
    } else {
        Ok(())
    }
}

pub fn distinct_centralizers(g: &Group) -> Result<CentReport> {
    distinct_centralizers_bounded(g, DEFAULT_MAX_ORDER)
}

/// Uses `C(xz) = C(x)` for central `z`: only one element per coset of the
/// center is examined, and commuting is decided coset by coset.
pub fn distinct_centralizers_bounded(g: &Group, bound: usize) -> Result<CentReport> {
    check_bound(g, bound)?;
    let n = g.order();
    let center = g.center();
    let mut coset = vec![u32::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    for x in 0..n {
        if coset[x] == u32::MAX {
            let id = reps.len() as u32;
            reps.push(x);
            for z in center.iter() {
                coset[g.product(x, z)] = id;
            }
        }
    }
    let sets: Vec<ElementSet> = reps
        .par_iter()
        .map(|&x| {
            let commuting: Vec<bool> = reps.iter().map(|&y| g.commute(x, y)).collect();
            ElementSet::from_sorted(
                (0..n).filter(|&w| commuting[coset[w] as usize]).map(|w| w as u32).collect(),
            )
        })
        .collect();
    Ok(dedupe(n, sets.into_iter().zip(reps.iter().copied()), |x| reps[coset[x] as usize]))
}

/// Reference implementation: one full scan per element.
pub fn distinct_centralizers_naive(g: &Group) -> Result<CentReport> {
    check_bound(g, DEFAULT_MAX_ORDER)?;
    let sets: Vec<ElementSet> = (0..g.order()).into_par_iter().map(|x| g.centralizer_of(x)).collect();
    Ok(dedupe(g.order(), sets.into_iter().zip(0..g.order()), |x| x))
}

/// `sets` pairs each examined element with its centralizer, in increasing
/// element order; `examined(x)` names the examined element sharing the
/// centralizer of `x`.
fn dedupe(
    order: usize,
    sets: impl Iterator<Item = (ElementSet, Elem)>,
    examined: impl Fn(Elem) -> Elem,
) -> CentReport {
    let mut seen: HashMap<ElementSet, Elem> = HashMap::new();
    let mut owner_of: HashMap<Elem, Elem> = HashMap::new();
    for (s, x) in sets {
        let w = *seen.entry(s).or_insert(x);
        owner_of.insert(x, w);
    }
    let owner: Vec<Elem> = (0..order).map(|x| owner_of[&examined(x)]).collect();
    CentReport::assemble(order, seen.into_iter().collect(), &owner)
}

pub fn cent_count(g: &Group) -> Result<usize> {
    Ok(distinct_centralizers(g)?.count)
}

/// `(p+1)² + 1`.
pub fn predicted_cent_count(p: usize) -> usize {
    (p + 1).pow(2) + 1
}

/// `(p+1)ⁿ + 1`.
pub fn predicted_cent_count_conjecture(p: usize, n: u32) -> usize {
    (p + 1).pow(n) + 1
}

/// Pairs `(u, v)` with `distinct[u]` a proper subset of `distinct[v]`.
pub fn centralizer_inclusions(report: &CentReport) -> Vec<(usize, usize)> {
    let d = &report.distinct;
    let mut out = Vec::new();
    for u in 0..d.len() {
        for v in 0..d.len() {
            if u != v && d[u].size() < d[v].size() && d[u].is_subset_of(&d[v]) {
                out.push((u, v));
            }
        }
    }
    out
}
