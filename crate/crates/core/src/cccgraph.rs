//! Commuting conjugacy class graph.

use rayon::prelude::*;

use crate::conjugacy::{conjugacy_classes_bounded, representative_type, ConjugacyClass, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::Group;

/// Whether some member of `a` commutes with some member of `b`. Only the
/// representative of `a` is tried: conjugating a commuting pair moves its
/// first entry onto the representative and keeps the second inside `b`.
pub fn classes_commute(g: &Group, a: &ConjugacyClass, b: &ConjugacyClass) -> Result<bool> {
    for c in [a, b] {
        if c.size <= 1 {
            return Err(Error::CentralClass(c.representative));
        }
    }
    let x = a.representative;
    Ok(b.members.iter().any(|y| g.commute(x, y)))
}

/// Reference implementation trying every pair.
pub fn classes_commute_exhaustive(g: &Group, a: &ConjugacyClass, b: &ConjugacyClass) -> bool {
    a.members.iter().any(|x| b.members.iter().any(|y| g.commute(x, y)))
}

/// Non-central classes ordered by (type, representative); untyped classes
/// come first with type 0.
pub fn noncentral_classes(g: &Group) -> Result<Vec<ConjugacyClass>> {
    noncentral_classes_bounded(g, DEFAULT_MAX_ORDER)
}

fn noncentral_classes_bounded(g: &Group, bound: usize) -> Result<Vec<ConjugacyClass>> {
    let mut classes: Vec<ConjugacyClass> = conjugacy_classes_bounded(g, bound)?
        .into_iter()
        .filter(|c| c.size > 1)
        .map(|mut c| {
            c.type_label = representative_type(g, c.representative);
            c
        })
        .collect();
    classes.sort_by_key(|c| (c.type_label.unwrap_or(0), c.representative));
    Ok(classes)
}

pub fn ccc_graph(g: &Group) -> Result<SimpleGraph> {
    Ok(ccc_graph_with_classes(g, DEFAULT_MAX_ORDER)?.0)
}

/// The graph together with the class behind each vertex. Vertex names are
/// `T{type}:{representative}`.
pub fn ccc_graph_with_classes(g: &Group, bound: usize) -> Result<(SimpleGraph, Vec<ConjugacyClass>)> {
    let classes = noncentral_classes_bounded(g, bound)?;
    let n = classes.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let x = classes[u].representative;
            (u + 1..n).filter(|&v| classes[v].members.iter().any(|y| g.commute(x, y))).collect()
        })
        .collect();
    let labels = classes
        .iter()
        .map(|c| format!("T{}:{}", c.type_label.unwrap_or(0), g.label(c.representative)))
        .collect();
    let mut graph = SimpleGraph::new(n).with_labels(labels);
    for (u, row) in rows.into_iter().enumerate() {
        for v in row {
            graph.add_edge(u, v);
        }
    }
    Ok((graph, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{cyclic, heisenberg_mod, NormalForm};

    #[test]
    fn abelian_graph_is_empty() {
        assert_eq!(ccc_graph(&cyclic(5)).unwrap().n_vertices(), 0);
    }

    #[test]
    fn heisenberg_4_examples() {
        let g = heisenberg_mod(4).unwrap();
        let c = *g.codec().unwrap();
        let classes = noncentral_classes(&g).unwrap();
        let class_of = |i, j| {
            let x = c.encode(NormalForm::new(i, j, 0));
            classes.iter().find(|k| k.members.contains(x)).unwrap().clone()
        };
        let (a, a3, b) = (class_of(1, 0), class_of(3, 0), class_of(0, 1));
        assert!(classes_commute(&g, &a, &a3).unwrap());
        assert!(!classes_commute(&g, &a, &b).unwrap());
        assert!(!classes_commute_exhaustive(&g, &a, &b));
        let centre = crate::conjugacy::conjugacy_classes(&g).unwrap().remove(0);
        assert!(matches!(classes_commute(&g, &centre, &a), Err(Error::CentralClass(_))));
        let graph = ccc_graph(&g).unwrap();
        assert_eq!(graph.n_vertices(), 18);
        assert!(graph.labels()[0].starts_with("T1:"));
    }
}
