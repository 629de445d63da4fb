//! Joins of cliques: construction, the two predicted shapes, decomposition
//! by closed neighbourhoods and (weighted) graph isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{quote, SimpleGraph};
use crate::presentations::is_prime;

pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;
pub const GRAPH_ISO_VERTEX_LIMIT: usize = 1000;

/// A quotient graph H whose vertex `i` stands for a clique of
/// `part_sizes[i]` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSpec {
    pub name: String,
    pub quotient: SimpleGraph,
    pub part_sizes: Vec<usize>,
    pub part_names: Vec<String>,
}

#[derive(Serialize)]
struct JoinSpecJson<'a> {
    name: &'a str,
    quotient_edges: Vec<(usize, usize)>,
    sizes: &'a [usize],
    names: &'a [String],
}

impl JoinSpec {
    pub fn new(name: &str, quotient: SimpleGraph, part_sizes: Vec<usize>, part_names: Vec<String>) -> Result<Self> {
        let k = quotient.n_vertices();
        for len in [part_sizes.len(), part_names.len()] {
            if len != k {
                return Err(Error::LengthMismatch { expected: k, got: len });
            }
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidParameters("part sizes must be positive".into()));
        }
        Ok(JoinSpec { name: name.to_string(), quotient, part_sizes, part_names })
    }

    pub fn vertex_count(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn size_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &s in &self.part_sizes {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    }

    /// Merges adjacent parts with equal closed neighbourhoods in the
    /// quotient; the realized graph is unchanged.
    pub fn coarsen(&self) -> JoinSpec {
        let groups = closed_neighbourhood_groups(&self.quotient);
        let mut sizes = vec![0; groups.len()];
        let mut names = Vec::with_capacity(groups.len());
        for (gi, members) in groups.iter().enumerate() {
            sizes[gi] = members.iter().map(|&u| self.part_sizes[u]).sum();
            names.push(members.iter().map(|&u| self.part_names[u].as_str()).collect::<Vec<_>>().join("+"));
        }
        JoinSpec {
            name: self.name.clone(),
            quotient: group_quotient(&self.quotient, &groups),
            part_sizes: sizes,
            part_names: names,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JoinSpecJson {
            name: &self.name,
            quotient_edges: self.quotient.edges(),
            sizes: &self.part_sizes,
            names: &self.part_names,
        })
        .expect("join spec serializes")
    }

    /// DOT of the realized graph with one cluster per part.
    pub fn to_dot(&self) -> String {
        let g = realize(self);
        let mut out = String::new();
        writeln!(out, "graph {} {{", quote(&self.name)).unwrap();
        let mut v = 0;
        for (i, (&size, name)) in self.part_sizes.iter().zip(&self.part_names).enumerate() {
            writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{i}"))).unwrap();
            writeln!(out, "    label={};", quote(name)).unwrap();
            for _ in 0..size {
                writeln!(out, "    {};", quote(&g.labels()[v])).unwrap();
                v += 1;
            }
            out.push_str("  }\n");
        }
        for (a, b) in g.edges() {
            writeln!(out, "  {} -- {};", quote(&g.labels()[a]), quote(&g.labels()[b])).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Disjoint cliques `K_{sizes[i]}`, fully joined along the edges of `h`.
pub fn h_join(h: &SimpleGraph, sizes: &[usize]) -> Result<SimpleGraph> {
    if sizes.len() != h.n_vertices() {
        return Err(Error::LengthMismatch { expected: h.n_vertices(), got: sizes.len() });
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidParameters("part sizes must be positive".into()));
    }
    let mut start = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        start.push(total);
        total += s;
    }
    let mut g = SimpleGraph::new(total);
    for (i, &s) in sizes.iter().enumerate() {
        for a in start[i]..start[i] + s {
            for b in a + 1..start[i] + s {
                g.add_edge(a, b);
            }
        }
    }
    for (i, j) in h.edges() {
        for a in start[i]..start[i] + sizes[i] {
            for b in start[j]..start[j] + sizes[j] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// Realized graph; vertex `k` of part `name` is labelled `name.k`.
pub fn realize(spec: &JoinSpec) -> SimpleGraph {
    let g = h_join(&spec.quotient, &spec.part_sizes).expect("JoinSpec invariants hold");
    let labels = spec
        .part_names
        .iter()
        .zip(&spec.part_sizes)
        .flat_map(|(name, &s)| (0..s).map(move |k| format!("{name}.{k}")))
        .collect();
    g.with_labels(labels)
}

/// Hubs `1..=p+1` forming a clique; hub `h` has pendants `h_1..h_k` where
/// `pendants[h-1] = (k, size)`.
fn hub_spec(name: &str, p: usize, hub_size: usize, pendants: &[(usize, usize)]) -> Result<JoinSpec> {
    let hubs = p + 1;
    let total = hubs + pendants.iter().map(|(k, _)| k).sum::<usize>();
    let mut h = SimpleGraph::new(total);
    let mut sizes = vec![hub_size; hubs];
    let mut names: Vec<String> = (1..=hubs).map(|i| i.to_string()).collect();
    for a in 0..hubs {
        for b in a + 1..hubs {
            h.add_edge(a, b);
        }
    }
    let mut next = hubs;
    for (hub, &(count, size)) in pendants.iter().enumerate() {
        for k in 1..=count {
            h.add_edge(hub, next);
            sizes.push(size);
            names.push(format!("{}_{k}", hub + 1));
            next += 1;
        }
    }
    let labels = names.clone();
    JoinSpec::new(name, h.with_labels(labels), sizes, names)
}

/// Shape predicted for an abelian central quotient.
pub fn build_m1(p: usize, z_order: usize) -> Result<JoinSpec> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
    }
    if z_order == 0 || z_order % (p * p) != 0 {
        return Err(Error::InvalidParameters(format!("p² = {} does not divide |Z| = {z_order}", p * p)));
    }
    let n = z_order / p;
    let m = z_order / (p * p);
    hub_spec("M1", p, n * (p - 1), &vec![(p, m * (p * p - p)); p + 1])
}

/// Shape predicted for a non-abelian central quotient; hub 2 carries the
/// single large pendant.
pub fn build_m2(p: usize, z_order: usize) -> Result<JoinSpec> {
    if p == 2 {
        return Err(Error::InvalidParameters("p must be odd".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
    }
    if z_order == 0 || z_order % p != 0 {
        return Err(Error::InvalidParameters(format!("p = {p} does not divide |Z| = {z_order}")));
    }
    let n = z_order / p;
    let mut pendants = vec![(p, n * (p - 1)); p + 1];
    pendants[1] = (1, n * p * (p - 1));
    hub_spec("M2", p, n * (p - 1), &pendants)
}

fn closed_neighbourhood_groups(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for u in 0..g.n_vertices() {
        let mut row = g.row(u).to_vec();
        row[u / 64] |= 1 << (u % 64);
        let id = *index.entry(row).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[id].push(u);
    }
    groups
}

fn group_quotient(g: &SimpleGraph, groups: &[Vec<usize>]) -> SimpleGraph {
    let mut q = SimpleGraph::new(groups.len());
    for a in 0..groups.len() {
        for b in a + 1..groups.len() {
            if g.has_edge(groups[a][0], groups[b][0]) {
                q.add_edge(a, b);
            }
        }
    }
    q
}

/// Finest partition into vertex groups with equal closed neighbourhoods.
pub fn decompose_join(graph: &SimpleGraph) -> Result<JoinSpec> {
    let groups = closed_neighbourhood_groups(graph);
    for (gi, members) in groups.iter().enumerate() {
        for (k, &a) in members.iter().enumerate() {
            if members[k + 1..].iter().any(|&b| !graph.has_edge(a, b)) {
                return Err(Error::NotJoinOfCliques(gi));
            }
        }
    }
    let names: Vec<String> = groups.iter().map(|m| graph.labels()[m[0]].clone()).collect();
    let quotient = group_quotient(graph, &groups).with_labels(names.clone());
    JoinSpec::new("decomposition", quotient, groups.iter().map(Vec::len).collect(), names)
}

/// Decomposes `graph` and compares the weighted quotient with the coarsened
/// `spec`.
pub fn verify_join_structure(graph: &SimpleGraph, spec: &JoinSpec) -> Result<bool> {
    verify_join_structure_with_budget(graph, spec, DEFAULT_ISO_BUDGET)
}

pub fn verify_join_structure_with_budget(graph: &SimpleGraph, spec: &JoinSpec, budget: u64) -> Result<bool> {
    if graph.n_vertices() != spec.vertex_count() {
        return Ok(false);
    }
    let Ok(found) = decompose_join(graph) else {
        return Ok(false);
    };
    let want = spec.coarsen();
    let c1: Vec<u64> = found.part_sizes.iter().map(|&s| s as u64).collect();
    let c2: Vec<u64> = want.part_sizes.iter().map(|&s| s as u64).collect();
    Ok(find_isomorphism(&found.quotient, &want.quotient, &c1, &c2, budget)?.is_some())
}

/// `graphs_isomorphic(graph, realize(spec))`.
pub fn verify_join_structure_full(graph: &SimpleGraph, spec: &JoinSpec, budget: u64) -> Result<bool> {
    if graph.n_vertices() != spec.vertex_count() {
        return Ok(false);
    }
    graphs_isomorphic_with_budget(graph, &realize(spec), budget)
}

pub fn graphs_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    graphs_isomorphic_with_budget(g1, g2, DEFAULT_ISO_BUDGET)
}

pub fn graphs_isomorphic_with_budget(g1: &SimpleGraph, g2: &SimpleGraph, budget: u64) -> Result<bool> {
    let c1 = vec![0; g1.n_vertices()];
    let c2 = vec![0; g2.n_vertices()];
    Ok(find_isomorphism(g1, g2, &c1, &c2, budget)?.is_some())
}

/// Colour-preserving isomorphism `g1 → g2` as a vertex map, if one exists.
/// Each candidate tried counts one node against `budget`.
pub fn find_isomorphism(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    c1: &[u64],
    c2: &[u64],
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = g1.n_vertices();
    for g in [g1, g2] {
        if g.n_vertices() > GRAPH_ISO_VERTEX_LIMIT {
            return Err(Error::BoundExceeded { order: g.n_vertices(), bound: GRAPH_ISO_VERTEX_LIMIT });
        }
    }
    for (c, g) in [(c1, g1), (c2, g2)] {
        if c.len() != g.n_vertices() {
            return Err(Error::LengthMismatch { expected: g.n_vertices(), got: c.len() });
        }
    }
    if n != g2.n_vertices() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let r1 = Reduced::new(g1, c1);
    let r2 = Reduced::new(g2, c2);
    if r1.members.len() != r2.members.len() {
        return Ok(None);
    }
    let Some(small) = match_reduced(&r1.graph, &r2.graph, &r1.colours, &r2.colours, budget)? else {
        return Ok(None);
    };
    let mut map = vec![usize::MAX; n];
    for (a, &b) in small.iter().enumerate() {
        for (&u, &v) in r1.members[a].iter().zip(&r2.members[b]) {
            map[u] = v;
        }
    }
    let preserved = (0..n).all(|u| {
        c1[u] == c2[map[u]] && (u + 1..n).all(|w| g1.has_edge(u, w) == g2.has_edge(map[u], map[w]))
    });
    Ok(preserved.then_some(map))
}

/// A graph with twin classes collapsed. Vertices with the same colour and
/// the same open or closed neighbourhood are merged until none remain; the
/// merged vertex's colour records its old colour, twin kind and multiplicity.
struct Reduced {
    graph: SimpleGraph,
    colours: Vec<u64>,
    members: Vec<Vec<usize>>,
}

impl Reduced {
    fn new(g: &SimpleGraph, c: &[u64]) -> Reduced {
        let mut r = Reduced {
            graph: g.clone(),
            colours: c.to_vec(),
            members: (0..g.n_vertices()).map(|v| vec![v]).collect(),
        };
        loop {
            let before = r.members.len();
            r.collapse(true);
            r.collapse(false);
            if r.members.len() == before {
                return r;
            }
        }
    }

    fn collapse(&mut self, closed: bool) {
        let g = &self.graph;
        let mut index: HashMap<(u64, Vec<u64>), usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for u in 0..g.n_vertices() {
            let mut row = g.row(u).to_vec();
            if closed {
                row[u / 64] |= 1 << (u % 64);
            }
            let id = *index.entry((self.colours[u], row)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[id].push(u);
        }
        if groups.len() == g.n_vertices() {
            return;
        }
        let colours = groups
            .iter()
            .map(|m| {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                (self.colours[m[0]], closed, m.len()).hash(&mut h);
                h.finish()
            })
            .collect();
        let members = groups.iter().map(|m| m.iter().flat_map(|&v| self.members[v].iter().copied()).collect()).collect();
        self.graph = group_quotient(g, &groups);
        self.colours = colours;
        self.members = members;
    }
}

fn match_reduced(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    c1: &[u64],
    c2: &[u64],
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = g1.n_vertices();
    if g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let Some((col1, col2)) = refine(g1, g2, c1, c2) else {
        return Ok(None);
    };

    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in &col1 {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let order = search_order(g1, &col1, &class_size);
    let back: Vec<Vec<usize>> = {
        let mut pos = vec![usize::MAX; n];
        for (d, &u) in order.iter().enumerate() {
            pos[u] = d;
        }
        order.iter().enumerate().map(|(d, &u)| g1.neighbors(u).filter(|&w| pos[w] < d).collect()).collect()
    };
    let mut candidates: HashMap<u64, Vec<usize>> = HashMap::new();
    for (v, &c) in col2.iter().enumerate() {
        candidates.entry(c).or_default().push(v);
    }

    let mut state = Search {
        g2,
        order: &order,
        back: &back,
        col1: &col1,
        candidates: &candidates,
        map: vec![usize::MAX; n],
        used: vec![0u64; g2.words()],
        nodes: 0,
        budget,
    };
    Ok(if state.extend(0)? { Some(state.map) } else { None })
}

/// Joint colour refinement. Returns `None` when the colour histograms of
/// the two graphs differ.
fn refine(g1: &SimpleGraph, g2: &SimpleGraph, c1: &[u64], c2: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = g1.n_vertices();
    let mut colours: Vec<u64> = c1.iter().chain(c2).copied().collect();
    let adj = |v: usize| -> Vec<usize> {
        if v < n {
            g1.neighbors(v).collect()
        } else {
            g2.neighbors(v - n).map(|w| w + n).collect()
        }
    };
    let neighbours: Vec<Vec<usize>> = (0..2 * n).map(adj).collect();
    let mut distinct = usize::MAX;
    loop {
        let keys: Vec<(u64, Vec<u64>)> = (0..2 * n)
            .map(|v| {
                let mut around: Vec<u64> = neighbours[v].iter().map(|&w| colours[w]).collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect();
        let mut ids: BTreeMap<&(u64, Vec<u64>), u64> = BTreeMap::new();
        for k in &keys {
            ids.insert(k, 0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i as u64;
        }
        let next: Vec<u64> = keys.iter().map(|k| ids[k]).collect();
        let now = ids.len();
        colours = next;
        let mut h1: Vec<u64> = colours[..n].to_vec();
        let mut h2: Vec<u64> = colours[n..].to_vec();
        h1.sort_unstable();
        h2.sort_unstable();
        if h1 != h2 {
            return None;
        }
        if now == distinct {
            break;
        }
        distinct = now;
    }
    let col2 = colours.split_off(n);
    Some((colours, col2))
}

/// Vertices of `g1` in the order they are assigned: each step takes the
/// vertex with most already-placed neighbours, then the rarest colour,
/// then the higher degree, then the lower index.
fn search_order(g1: &SimpleGraph, col: &[u64], class_size: &HashMap<u64, usize>) -> Vec<usize> {
    let n = g1.n_vertices();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| (std::cmp::Reverse(links[u]), class_size[&col[u]], std::cmp::Reverse(g1.degree(u)), u))
            .expect("unplaced vertex remains");
        placed[u] = true;
        order.push(u);
        for w in g1.neighbors(u) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g2: &'a SimpleGraph,
    order: &'a [usize],
    back: &'a [Vec<usize>],
    col1: &'a [u64],
    candidates: &'a HashMap<u64, Vec<usize>>,
    map: Vec<usize>,
    used: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, d: usize) -> Result<bool> {
        if d == self.order.len() {
            return Ok(true);
        }
        let u = self.order[d];
        let candidates = self.candidates;
        let cands = &candidates[&self.col1[u]];
        for &v in cands {
            if self.used[v / 64] >> (v % 64) & 1 == 1 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { budget: self.budget });
            }
            if !self.back[d].iter().all(|&w| self.g2.has_edge(self.map[w], v)) {
                continue;
            }
            let placed_links: usize = self
                .g2
                .row(v)
                .iter()
                .zip(&self.used)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            if placed_links != self.back[d].len() {
                continue;
            }
            self.map[u] = v;
            self.used[v / 64] |= 1 << (v % 64);
            if self.extend(d + 1)? {
                return Ok(true);
            }
            self.used[v / 64] &= !(1 << (v % 64));
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_of_two_cliques_is_a_clique() {
        let g = h_join(&SimpleGraph::complete(2), &[2, 3]).unwrap();
        assert_eq!(g.edge_count(), 10);
        let d = decompose_join(&g).unwrap();
        assert_eq!(d.part_sizes, vec![5]);
    }

    #[test]
    fn h_join_edge_cases() {
        let g = h_join(&SimpleGraph::new(3), &[2, 3, 1]).unwrap();
        assert_eq!(g.edge_count(), 1 + 3);
        let p = h_join(&SimpleGraph::path(3), &[1, 1, 1]).unwrap();
        assert_eq!(p.edges(), SimpleGraph::path(3).edges());
        assert_eq!(
            h_join(&SimpleGraph::path(3), &[1, 1]).unwrap_err(),
            Error::LengthMismatch { expected: 3, got: 2 }
        );
    }

    #[test]
    fn cycle_decomposes_into_units() {
        let d = decompose_join(&SimpleGraph::cycle(5)).unwrap();
        assert_eq!(d.part_sizes, vec![1; 5]);
        assert_eq!(d.quotient.edge_count(), 5);
    }

    #[test]
    fn shapes() {
        let m1 = build_m1(2, 4).unwrap();
        assert_eq!((m1.quotient.n_vertices(), m1.vertex_count()), (9, 18));
        assert_eq!(build_m1(3, 9).unwrap().vertex_count(), 96);
        assert_eq!(build_m1(5, 25).unwrap().vertex_count(), 720);
        let m2 = build_m2(3, 3).unwrap();
        assert_eq!(m2.vertex_count(), 32);
        assert_eq!(m2.size_multiset(), BTreeMap::from([(2, 13), (6, 1)]));
        assert_eq!(build_m2(3, 9).unwrap().vertex_count(), 96);
        let m25 = build_m2(5, 5).unwrap();
        assert_eq!((m25.vertex_count(), m25.size_multiset()), (144, BTreeMap::from([(4, 31), (20, 1)])));
        assert!(build_m2(2, 4).is_err());
        assert!(build_m1(3, 3).is_err());
    }

    #[test]
    fn small_isomorphism_cases() {
        assert!(!graphs_isomorphic(&SimpleGraph::complete(4), &SimpleGraph::cycle(4)).unwrap());
        assert!(graphs_isomorphic(&SimpleGraph::cycle(6), &SimpleGraph::cycle(6).permuted(&[3, 1, 5, 0, 2, 4])).unwrap());
        let two_triangles = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!graphs_isomorphic(&SimpleGraph::cycle(6), &two_triangles).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = SimpleGraph::cycle(12);
        assert_eq!(graphs_isomorphic_with_budget(&g, &g, 3).unwrap_err(), Error::BudgetExhausted { budget: 3 });
    }

    #[test]
    fn m1_and_m2_are_told_apart() {
        let a = realize(&build_m1(3, 9).unwrap());
        let b = realize(&build_m2(3, 9).unwrap());
        assert_eq!(a.n_vertices(), b.n_vertices());
        assert!(!graphs_isomorphic(&a, &b).unwrap());
        assert!(!verify_join_structure(&realize(&build_m1(2, 4).unwrap()), &build_m2(3, 3).unwrap()).unwrap());
    }

    #[test]
    fn dot_has_clusters() {
        let dot = build_m1(2, 4).unwrap().to_dot();
        assert_eq!(dot.matches("subgraph").count(), 9);
        assert!(dot.contains("\"1.0\" -- \"1.1\";"));
    }
}
