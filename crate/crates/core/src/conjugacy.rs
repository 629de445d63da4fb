//! Conjugacy classes, class-size censuses and the Type 1–8 labelling.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, ElementSet, Group};
use crate::presentations::{FamilyDescriptor, NormalForm, QuotientKind};

pub const DEFAULT_MAX_ORDER: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Elem,
    pub members: ElementSet,
    pub size: usize,
    pub type_label: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusRow {
    pub type_label: u8,
    pub class_size: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCensus {
    pub rows: Vec<CensusRow>,
    pub total_classes: usize,
}

impl ClassCensus {
    fn from_rows(mut rows: Vec<CensusRow>) -> Self {
        rows.sort();
        let total_classes = rows.iter().map(|r| r.count).sum();
        ClassCensus { rows, total_classes }
    }

    /// Histogram of non-central class sizes.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for r in &self.rows {
            *h.entry(r.class_size).or_insert(0) += r.count;
        }
        h
    }

    /// Number of elements in non-central classes.
    pub fn covered(&self) -> usize {
        self.rows.iter().map(|r| r.class_size * r.count).sum()
    }
}

/// Conjugation orbits in order of their least element. Each orbit is sorted.
pub(crate) fn orbit_partition(g: &Group) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        let mut orbit = vec![x as u32];
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &s in g.generators() {
                let w = g.conjugate(s, y);
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w as u32);
                    queue.push_back(w);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

fn check_bound(g: &Group, bound: usize) -> Result<()> {
    if g.order() > bound {
        Err(Error::BoundExceeded { order: g.order(), bound })
    } else {
        Ok(())
    }
}

/// Classes sorted by (size, representative).
pub fn conjugacy_classes(g: &Group) -> Result<Vec<ConjugacyClass>> {
    conjugacy_classes_bounded(g, DEFAULT_MAX_ORDER)
}

pub fn conjugacy_classes_bounded(g: &Group, bound: usize) -> Result<Vec<ConjugacyClass>> {
    check_bound(g, bound)?;
    let mut classes: Vec<ConjugacyClass> = orbit_partition(g)
        .into_iter()
        .map(|orbit| ConjugacyClass {
            representative: orbit[0] as usize,
            size: orbit.len(),
            members: ElementSet::from_unsorted(orbit),
            type_label: None,
        })
        .collect();
    classes.sort_by_key(|c| (c.size, c.representative));
    Ok(classes)
}

pub fn class_size_histogram(g: &Group) -> Result<BTreeMap<usize, usize>> {
    let mut h = BTreeMap::new();
    for c in conjugacy_classes(g)? {
        *h.entry(c.size).or_insert(0) += 1;
    }
    Ok(h)
}

/// Census printed in the class tables: eight rows for an abelian quotient,
/// seven for a non-abelian one with Type 7 folded into Type 4.
pub fn predicted_census(desc: &FamilyDescriptor) -> Result<ClassCensus> {
    let p = desc.p;
    let n = desc.n;
    if desc.z_order != n * p {
        return Err(Error::InvalidParameters("|Z| ≠ n·p".into()));
    }
    let row = |type_label, class_size, count| CensusRow { type_label, class_size, count };
    let rows = match desc.quotient_kind {
        QuotientKind::Abelian => {
            let m = desc
                .m_coef
                .ok_or_else(|| Error::InvalidParameters("abelian quotient needs p² | |Z|".into()))?;
            if m * p * p != desc.z_order {
                return Err(Error::InvalidParameters("|Z| ≠ m·p²".into()));
            }
            let q = p - 1;
            vec![
                row(1, p, n * q),
                row(2, p * p, m * p * q),
                row(3, p, n * q),
                row(4, p * p, m * p * q),
                row(5, p, n * q * q),
                row(6, p * p, m * p * q * q),
                row(7, p * p, m * p * q * q),
                row(8, p * p, m * p * p * q * q),
            ]
        }
        QuotientKind::Nonabelian => {
            if p == 2 {
                return Err(Error::InvalidParameters("non-abelian quotient needs odd p".into()));
            }
            let q = p - 1;
            vec![
                row(1, p, n * q),
                row(2, p * p, n * q),
                row(3, p, n * q),
                row(4, p * p, n * p * q),
                row(5, p, n * q * q),
                row(6, p * p, n * q * q),
                row(8, p * p, n * p * q * q),
            ]
        }
    };
    Ok(ClassCensus::from_rows(rows))
}

/// Type of `a^i b^j` from divisibility of the exponents; `None` for `i = j = 0`.
pub fn raw_type(nf: NormalForm, p: usize) -> Option<u8> {
    let (i, j) = (nf.i, nf.j);
    Some(match (i == 0, j == 0) {
        (true, true) => return None,
        (false, true) => {
            if i % p == 0 {
                1
            } else {
                2
            }
        }
        (true, false) => {
            if j % p == 0 {
                3
            } else {
                4
            }
        }
        (false, false) => match (i % p == 0, j % p == 0) {
            (true, true) => 5,
            (false, true) => 6,
            (true, false) => 7,
            (false, false) => 8,
        },
    })
}

fn scheme_type(nf: NormalForm, p: usize, kind: QuotientKind) -> Option<u8> {
    match (raw_type(nf, p), kind) {
        (Some(7), QuotientKind::Nonabelian) => Some(4),
        (t, _) => t,
    }
}

/// Type of a class representative as used for vertex ordering, or `None`
/// when the group carries no p²-radix normal form.
pub(crate) fn representative_type(g: &Group, x: Elem) -> Option<u8> {
    let codec = g.codec()?;
    let p = codec.prime?;
    raw_type(codec.decode(x), p)
}

/// Conjugacy classes with Type 1–8 labels on the non-central ones, checked
/// to be constant on every class.
pub fn label_types(g: &Group, desc: &FamilyDescriptor) -> Result<Vec<ConjugacyClass>> {
    let codec = g
        .codec()
        .ok_or_else(|| Error::InvalidParameters("group has no normal-form decoder".into()))?;
    if codec.ab_radix != desc.p * desc.p {
        return Err(Error::InvalidParameters(format!(
            "normal form radix {} does not match p² = {}",
            codec.ab_radix,
            desc.p * desc.p
        )));
    }
    let mut classes = conjugacy_classes(g)?;
    for class in classes.iter_mut().filter(|c| c.size > 1) {
        let label = |x: Elem| scheme_type(codec.decode(x), desc.p, desc.quotient_kind);
        let t = label(class.representative);
        if t.is_none() || class.members.iter().any(|x| label(x) != t) {
            return Err(Error::LabelMismatch(g.label(class.representative)));
        }
        class.type_label = t;
    }
    Ok(classes)
}

/// Census of labelled classes; central classes are left out.
pub fn observed_census(classes: &[ConjugacyClass]) -> ClassCensus {
    let mut counts: BTreeMap<(u8, usize), usize> = BTreeMap::new();
    for c in classes.iter().filter(|c| c.size > 1) {
        *counts.entry((c.type_label.unwrap_or(0), c.size)).or_insert(0) += 1;
    }
    ClassCensus::from_rows(
        counts
            .into_iter()
            .map(|((type_label, class_size), count)| CensusRow { type_label, class_size, count })
            .collect(),
    )
}
