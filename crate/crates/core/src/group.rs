//! Finite groups on element indices `0..N`.
//!
//! A group is defined by a multiplication rule. Small groups get a dense
//! Cayley table; large ones evaluate the rule on demand with inverses and
//! element orders cached at construction.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{NormalForm, NormalFormCodec};

pub type Elem = usize;

/// Largest order for which a dense multiplication table is materialized.
pub const DENSE_TABLE_LIMIT: usize = 4096;

/// Largest order accepted by the exhaustive associativity scan.
pub const FULL_SCAN_LIMIT: usize = 512;

const PARALLEL_THRESHOLD: usize = 2048;

pub type MulRule = Arc<dyn Fn(Elem, Elem) -> Elem + Send + Sync>;

#[derive(Clone)]
enum Backend {
    Dense(Arc<[u16]>),
    Rule(MulRule),
}

#[derive(Clone, Debug, Default)]
pub enum Labels {
    #[default]
    Index,
    NormalForm(NormalFormCodec),
    Explicit(Arc<[String]>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub family: String,
    pub parameters: BTreeMap<String, i64>,
    pub order: usize,
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    identity: Elem,
    generators: Vec<Elem>,
    inverses: Arc<[u32]>,
    orders: Arc<[u32]>,
    backend: Backend,
    labels: Labels,
    family: String,
    parameters: BTreeMap<String, i64>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("family", &self.family)
            .field("parameters", &self.parameters)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Which triples the associativity check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocScan {
    /// Middle element restricted to a generating set.
    Light,
    /// Every triple; only for orders up to [`FULL_SCAN_LIMIT`].
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomFailure {
    EmptyCarrier,
    OutOfRange { x: Elem, y: Elem, product: Elem },
    Identity { x: Elem },
    NotGenerated { reached: usize },
    NotAssociative { x: Elem, s: Elem, y: Elem },
    NoInverse { x: Elem },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::EmptyCarrier => write!(f, "empty carrier"),
            AxiomFailure::OutOfRange { x, y, product } => {
                write!(f, "product of {x} and {y} is {product}, outside the carrier")
            }
            AxiomFailure::Identity { x } => write!(f, "identity law fails at {x}"),
            AxiomFailure::NotGenerated { reached } => {
                write!(f, "generators reach only {reached} elements")
            }
            AxiomFailure::NotAssociative { x, s, y } => {
                write!(f, "associativity fails on triple ({x}, {s}, {y})")
            }
            AxiomFailure::NoInverse { x } => write!(f, "element {x} has no inverse"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Fail(AxiomFailure),
}

impl Validation {
    pub fn passed(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

/// Sorted, duplicate-free set of element indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    members: Vec<u32>,
}

impl ElementSet {
    pub fn from_unsorted(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSet { members }
    }

    pub(crate) fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ElementSet { members }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(it: I) -> Self {
        Self::from_unsorted(it.into_iter().map(|x| x as u32).collect())
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&(x as u32)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|&x| x as usize)
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn first(&self) -> Option<Elem> {
        self.members.first().map(|&x| x as usize)
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        if self.size() > other.size() {
            return false;
        }
        let mut it = other.members.iter();
        'outer: for x in &self.members {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

impl Group {
    /// Builds a group from a rule, validating the axioms with Light's test.
    pub fn from_rule<F>(order: usize, rule: F, identity: Elem, generators: Vec<Elem>) -> Result<Group>
    where
        F: Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
    {
        let rule: MulRule = Arc::new(rule);
        let (inverses, orders) =
            check_axioms(order, &*rule, identity, &generators, AssocScan::Light).map_err(Error::Axioms)?;
        Ok(Self::assemble(order, rule, identity, generators, inverses, orders))
    }

    /// Builds a group whose rule is known to be correct by construction.
    pub(crate) fn trusted<F>(order: usize, rule: F, identity: Elem, generators: Vec<Elem>) -> Group
    where
        F: Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
    {
        let rule: MulRule = Arc::new(rule);
        let (inverses, orders) = powers_to_identity(order, &*rule, identity)
            .expect("trusted rule defines a group");
        Self::assemble(order, rule, identity, generators, inverses, orders)
    }

    fn assemble(
        order: usize,
        rule: MulRule,
        identity: Elem,
        mut generators: Vec<Elem>,
        inverses: Vec<u32>,
        orders: Vec<u32>,
    ) -> Group {
        if generators.is_empty() {
            generators.push(identity);
        }
        let backend = if order <= DENSE_TABLE_LIMIT {
            let mut table = vec![0u16; order * order];
            table.par_chunks_mut(order.max(1)).enumerate().for_each(|(x, row)| {
                for (y, slot) in row.iter_mut().enumerate() {
                    *slot = rule(x, y) as u16;
                }
            });
            Backend::Dense(table.into())
        } else {
            Backend::Rule(rule)
        };
        Group {
            order,
            identity,
            generators,
            inverses: inverses.into(),
            orders: orders.into(),
            backend,
            labels: Labels::Index,
            family: String::from("custom"),
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_family(mut self, family: &str, parameters: &[(&str, i64)]) -> Group {
        self.family = family.to_string();
        self.parameters = parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self
    }

    pub fn with_labels(mut self, labels: Labels) -> Group {
        self.labels = labels;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn has_dense_table(&self) -> bool {
        matches!(self.backend, Backend::Dense(_))
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            family: self.family.clone(),
            parameters: self.parameters.clone(),
            order: self.order,
        }
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn codec(&self) -> Option<&NormalFormCodec> {
        match &self.labels {
            Labels::NormalForm(c) => Some(c),
            _ => None,
        }
    }

    pub fn normal_form(&self, x: Elem) -> Option<NormalForm> {
        self.codec().map(|c| c.decode(x))
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Labels::Index => format!("g{x}"),
            Labels::NormalForm(c) => c.render(c.decode(x)),
            Labels::Explicit(v) => v[x].clone(),
        }
    }

    fn check(&self, x: Elem) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, order: self.order })
        }
    }

    /// Checked product.
    pub fn mul(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.product(x, y))
    }

    /// Product of two in-range elements. Panics on out-of-range input when
    /// the dense table is in use.
    #[inline]
    pub fn product(&self, x: Elem, y: Elem) -> Elem {
        match &self.backend {
            Backend::Dense(t) => t[x * self.order + y] as usize,
            Backend::Rule(r) => {
                debug_assert!(x < self.order && y < self.order);
                r(x, y)
            }
        }
    }

    #[inline]
    pub fn inverse(&self, x: Elem) -> Elem {
        self.inverses[x] as usize
    }

    pub fn power(&self, x: Elem, mut k: u64) -> Elem {
        let mut result = self.identity;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                result = self.product(result, base);
            }
            base = self.product(base, base);
            k >>= 1;
        }
        result
    }

    pub fn element_order(&self, x: Elem) -> usize {
        self.orders[x] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    #[inline]
    pub fn commute(&self, x: Elem, y: Elem) -> bool {
        self.product(x, y) == self.product(y, x)
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.product(self.product(g, x), self.inverse(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &s)| gens[i + 1..].iter().all(|&t| self.commute(s, t)))
    }

    fn scan<P>(&self, pred: P) -> ElementSet
    where
        P: Fn(Elem) -> bool + Sync,
    {
        let members: Vec<u32> = if self.order >= PARALLEL_THRESHOLD {
            (0..self.order).into_par_iter().filter(|&y| pred(y)).map(|y| y as u32).collect()
        } else {
            (0..self.order).filter(|&y| pred(y)).map(|y| y as u32).collect()
        };
        ElementSet::from_sorted(members)
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> ElementSet {
        self.scan(|x| self.generators.iter().all(|&s| self.commute(x, s)))
    }

    pub fn centralizer_of(&self, x: Elem) -> ElementSet {
        self.scan(|y| self.commute(x, y))
    }

    pub fn subgroup_generated(&self, gens: &[Elem]) -> ElementSet {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.product(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        ElementSet::from_sorted(
            seen.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect(),
        )
    }

    /// Quotient by a central subgroup. Cosets are numbered by their least
    /// element, in increasing order.
    pub fn quotient_by_central(&self, n: &ElementSet) -> Result<Group> {
        if let Some(bad) = n.iter().find(|&x| x >= self.order) {
            return Err(Error::IndexOutOfRange { index: bad, order: self.order });
        }
        if !n.contains(self.identity) {
            return Err(Error::NotSubgroup);
        }
        for x in n.iter() {
            for y in n.iter() {
                if !n.contains(self.product(x, y)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        if !n.iter().all(|x| self.generators.iter().all(|&s| self.commute(x, s))) {
            return Err(Error::NotCentral);
        }

        let mut coset = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for z in n.iter() {
                coset[self.product(x, z)] = id;
            }
        }
        let q = reps.len();
        let coset = Arc::new(coset);
        let reps = Arc::new(reps);
        let parent = self.clone();
        let identity = coset[self.identity] as usize;
        let mut generators: Vec<Elem> = Vec::new();
        for &s in &self.generators {
            let c = coset[s] as usize;
            if c != identity && !generators.contains(&c) {
                generators.push(c);
            }
        }
        let labels: Vec<String> = reps.iter().map(|&r| format!("{}Z", self.label(r))).collect();
        let (c2, r2) = (coset.clone(), reps.clone());
        let g = Group::trusted(q, move |x, y| c2[parent.product(r2[x], r2[y])] as usize, identity, generators)
            .with_labels(Labels::Explicit(labels.into()));
        let mut out = g.with_family(&format!("{}/N", self.family), &[]);
        out.parameters = self.parameters.clone();
        Ok(out)
    }
}

/// Validates group axioms for an arbitrary rule. When `generators` is
/// `None` a generating set is found greedily.
pub fn validate_axioms(
    order: usize,
    rule: &(dyn Fn(Elem, Elem) -> Elem + Sync),
    identity: Elem,
    generators: Option<&[Elem]>,
    scan: AssocScan,
) -> Result<Validation> {
    if scan == AssocScan::Full && order > FULL_SCAN_LIMIT {
        return Err(Error::BoundExceeded { order, bound: FULL_SCAN_LIMIT });
    }
    let found;
    let gens = match generators {
        Some(g) => g,
        None => {
            if order == 0 || identity >= order {
                return Ok(Validation::Fail(AxiomFailure::EmptyCarrier));
            }
            match greedy_generators(order, rule, identity) {
                Ok(g) => {
                    found = g;
                    &found[..]
                }
                Err(f) => return Ok(Validation::Fail(f)),
            }
        }
    };
    Ok(match check_axioms(order, rule, identity, gens, scan) {
        Ok(_) => Validation::Pass,
        Err(f) => Validation::Fail(f),
    })
}

fn in_range(order: usize, x: Elem, y: Elem, p: Elem) -> std::result::Result<Elem, AxiomFailure> {
    if p < order {
        Ok(p)
    } else {
        Err(AxiomFailure::OutOfRange { x, y, product: p })
    }
}

/// Generating set for the magma closure of `{identity}` under right
/// multiplication.
fn greedy_generators(
    order: usize,
    rule: &(dyn Fn(Elem, Elem) -> Elem + Sync),
    identity: Elem,
) -> std::result::Result<Vec<Elem>, AxiomFailure> {
    let mut seen = vec![false; order];
    let mut reached = vec![identity];
    seen[identity] = true;
    let mut gens: Vec<Elem> = Vec::new();
    for t in 0..order {
        if seen[t] {
            continue;
        }
        gens.push(t);
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for &m in &reached {
            let y = in_range(order, m, t, rule(m, t))?;
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
        while let Some(x) = queue.pop_front() {
            reached.push(x);
            for &s in &gens {
                let y = in_range(order, x, s, rule(x, s))?;
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(gens)
}

type AxiomOutcome = std::result::Result<(Vec<u32>, Vec<u32>), AxiomFailure>;

fn check_axioms(
    order: usize,
    rule: &(dyn Fn(Elem, Elem) -> Elem + Sync),
    identity: Elem,
    gens: &[Elem],
    scan: AssocScan,
) -> AxiomOutcome {
    if order == 0 || identity >= order {
        return Err(AxiomFailure::EmptyCarrier);
    }
    if let Some(&s) = gens.iter().find(|&&s| s >= order) {
        return Err(AxiomFailure::OutOfRange { x: s, y: s, product: s });
    }

    for x in 0..order {
        let l = in_range(order, identity, x, rule(identity, x))?;
        let r = in_range(order, x, identity, rule(x, identity))?;
        if l != x || r != x {
            return Err(AxiomFailure::Identity { x });
        }
    }

    let mut seen = vec![false; order];
    seen[identity] = true;
    let mut queue = VecDeque::from([identity]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = in_range(order, x, s, rule(x, s))?;
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    if reached != order {
        return Err(AxiomFailure::NotGenerated { reached });
    }

    let middles: Vec<Elem> = match scan {
        AssocScan::Light => irredundant(order, rule, identity, gens),
        AssocScan::Full => (0..order).collect(),
    };
    for &s in &middles {
        let mut left = Vec::with_capacity(order);
        for y in 0..order {
            left.push(in_range(order, s, y, rule(s, y))?);
        }
        let failure = (0..order).into_par_iter().find_map_first(|x| {
            let xs = match in_range(order, x, s, rule(x, s)) {
                Ok(v) => v,
                Err(f) => return Some(f),
            };
            (0..order).find(|&y| rule(x, left[y]) != rule(xs, y)).map(|y| AxiomFailure::NotAssociative { x, s, y })
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }

    powers_to_identity(order, rule, identity)
}

/// Drops generators, last first, while the rest still reach every element.
fn irredundant(order: usize, rule: &(dyn Fn(Elem, Elem) -> Elem + Sync), identity: Elem, gens: &[Elem]) -> Vec<Elem> {
    let mut kept = gens.to_vec();
    for k in (0..gens.len()).rev() {
        if kept.len() == 1 {
            break;
        }
        let Some(pos) = kept.iter().position(|&s| s == gens[k]) else { continue };
        let trial: Vec<Elem> = kept.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &s)| s).collect();
        if reach(order, rule, identity, &trial) == order {
            kept = trial;
        }
    }
    kept
}

fn reach(order: usize, rule: &(dyn Fn(Elem, Elem) -> Elem + Sync), identity: Elem, gens: &[Elem]) -> usize {
    let mut seen = vec![false; order];
    seen[identity] = true;
    let mut queue = VecDeque::from([identity]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = rule(x, s);
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    reached
}

/// Inverse and order of every element, found by repeated multiplication.
fn powers_to_identity(
    order: usize,
    rule: &(dyn Fn(Elem, Elem) -> Elem + Sync),
    identity: Elem,
) -> AxiomOutcome {
    let pairs: std::result::Result<Vec<(u32, u32)>, AxiomFailure> = (0..order)
        .into_par_iter()
        .map(|x| {
            let mut prev = identity;
            let mut cur = x;
            let mut k = 1usize;
            while cur != identity {
                prev = cur;
                cur = rule(cur, x);
                k += 1;
                if k > order {
                    return Err(AxiomFailure::NoInverse { x });
                }
            }
            Ok((prev as u32, k as u32))
        })
        .collect();
    let (inverses, orders) = pairs?.into_iter().unzip();
    Ok((inverses, orders))
}
