//! Checks of the predicted centralizer counts, class censuses and graph
//! shapes on concrete exemplars, packaged as serializable reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::cccgraph::ccc_graph_with_classes;
use crate::centralizers::{
    distinct_centralizers_bounded, predicted_cent_count, predicted_cent_count_conjecture, CentReport,
};
use crate::conjugacy::{label_types, observed_census, predicted_census, ClassCensus};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupDescriptor};
use crate::iso::{self, Invariants};
use crate::joins::{
    build_m1, build_m2, decompose_join, verify_join_structure_full, verify_join_structure_with_budget, JoinSpec,
    DEFAULT_ISO_BUDGET,
};
use crate::presentations::{
    first_extension, heisenberg_mod, make_l, order_formula, search_extensions, FamilyDescriptor, NormalForm,
    NormalFormCodec, QuotientKind,
};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_order: usize,
    pub iso_budget: u64,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_order: 20_000, iso_budget: DEFAULT_ISO_BUDGET, timings: false }
    }
}

/// A group with its family data.
#[derive(Clone, Debug)]
pub struct Subject {
    pub name: String,
    pub group: Group,
    pub descriptor: FamilyDescriptor,
}

impl Subject {
    fn codec(&self) -> Result<NormalFormCodec> {
        self.group
            .codec()
            .copied()
            .ok_or_else(|| Error::InvalidParameters(format!("{} has no normal form", self.name)))
    }
}

fn within(order: usize, opts: &VerifyOptions) -> Result<()> {
    if order > opts.max_order {
        Err(Error::BoundExceeded { order, bound: opts.max_order })
    } else {
        Ok(())
    }
}

/// `heisenberg_mod(p²)` unless another |Z| is asked for, in which case the
/// first extension with that center is used.
pub fn abelian_subject(p: usize, z: Option<usize>, opts: &VerifyOptions) -> Result<Subject> {
    match z {
        None => heis_subject(p, opts),
        Some(z) if z == p * p => heis_subject(p, opts),
        Some(z) => search_subject(p, 0, &[z], opts),
    }
}

fn heis_subject(p: usize, opts: &VerifyOptions) -> Result<Subject> {
    within(p.pow(6), opts)?;
    let group = heisenberg_mod(p * p)?;
    let descriptor = FamilyDescriptor::new(p, p * p, QuotientKind::Abelian)?;
    Ok(Subject { name: format!("heis:q={}", p * p), group, descriptor })
}

/// First extension with a non-abelian central quotient; |Z| ∈ {p, p²} unless
/// given.
pub fn nonabelian_subject(p: usize, z: Option<usize>, opts: &VerifyOptions) -> Result<Subject> {
    if p == 2 {
        return Err(Error::InvalidParameters("a non-abelian central quotient needs odd p".into()));
    }
    let zs = z.map(|z| vec![z]).unwrap_or_else(|| vec![p, p * p]);
    search_subject(p, 1, &zs, opts)
}

fn search_subject(p: usize, r: usize, zs: &[usize], opts: &VerifyOptions) -> Result<Subject> {
    let m = zs.iter().copied().max().unwrap_or(0);
    within(p.pow(4) * m, opts)?;
    let e = first_extension(p, r, zs)?.ok_or_else(|| {
        Error::NoExemplar(format!("no extension with p = {p}, r = {r}, |Z| in {zs:?}"))
    })?;
    Ok(Subject { name: e.params.to_string(), group: e.group, descriptor: e.descriptor })
}

pub fn subject(p: usize, kind: QuotientKind, z: Option<usize>, opts: &VerifyOptions) -> Result<Subject> {
    match kind {
        QuotientKind::Abelian => abelian_subject(p, z, opts),
        QuotientKind::Nonabelian => nonabelian_subject(p, z, opts),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentCheck {
    pub count: usize,
    pub predicted: usize,
    pub orders: BTreeMap<usize, usize>,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureCheck {
    /// Proper centralizer sizes as multiples of |Z|, with multiplicities.
    pub observed: BTreeMap<usize, usize>,
    pub expected: BTreeMap<usize, usize>,
    pub spectrum_ok: bool,
    pub strictly_between: bool,
    /// Distinct centralizers of `a^s b`, p ∤ s.
    pub generic_distinct: usize,
    pub generic_expected: usize,
    pub generic_smallest: bool,
    pub inclusions_ok: bool,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusCheck {
    pub observed: ClassCensus,
    pub predicted: ClassCensus,
    pub central: usize,
    pub total: usize,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphCheck {
    pub vertices: usize,
    pub expected_vertices: usize,
    pub spec_name: String,
    pub connected: bool,
    /// Part size → number of parts, in the decomposition of the graph.
    pub observed_parts: BTreeMap<usize, usize>,
    pub expected_parts: BTreeMap<usize, usize>,
    pub cheap: bool,
    pub full: bool,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub subject: String,
    pub detail: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub name: String,
    pub descriptor: FamilyDescriptor,
    pub group: GroupDescriptor,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cent: Option<CentCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<NamedCheck>,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<BTreeMap<String, u64>>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn new(check: &str, subject: Option<&Subject>) -> Self {
        VerificationReport {
            check: check.to_string(),
            family: subject.map(|s| FamilyInfo {
                name: s.name.clone(),
                descriptor: s.descriptor,
                group: s.group.descriptor(),
            }),
            cent: None,
            structure: None,
            census: None,
            graph: None,
            checks: Vec::new(),
            matched: true,
            elapsed_ms: None,
        }
    }

    fn finish(mut self) -> Self {
        self.matched = self.cent.as_ref().map_or(true, |c| c.matched)
            && self.structure.as_ref().map_or(true, |c| c.matched)
            && self.census.as_ref().map_or(true, |c| c.matched)
            && self.graph.as_ref().map_or(true, |c| c.matched)
            && self.checks.iter().all(|c| c.matched);
        self
    }
}

struct Stopwatch {
    on: bool,
    laps: BTreeMap<String, u64>,
    start: Instant,
}

impl Stopwatch {
    fn new(on: bool) -> Self {
        Stopwatch { on, laps: BTreeMap::new(), start: Instant::now() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.laps.insert(stage.to_string(), (now - self.start).as_millis() as u64);
        self.start = now;
    }

    fn into_report(self) -> Option<BTreeMap<String, u64>> {
        self.on.then_some(self.laps)
    }
}

pub fn cent_check(subject: &Subject, report: &CentReport) -> CentCheck {
    let predicted = predicted_cent_count(subject.descriptor.p);
    CentCheck { count: report.count, predicted, orders: report.orders.clone(), matched: report.count == predicted }
}

/// Sizes of proper centralizers against the listed structure: p+1 of size
/// p³|Z|, p²+p of size p²|Z|; the p²−p centralizers of `a^s b` (p ∤ s) are
/// distinct and of least size; listed inclusions hold.
pub fn structure_check(subject: &Subject, report: &CentReport) -> Result<StructureCheck> {
    let g = &subject.group;
    let p = subject.descriptor.p;
    let z = subject.descriptor.z_order;
    let codec = subject.codec()?;
    let proper: Vec<_> = report.distinct.iter().filter(|s| s.size() != g.order()).collect();

    let mut observed = BTreeMap::new();
    let mut spectrum_ok = true;
    for s in &proper {
        if s.size() % z != 0 {
            spectrum_ok = false;
        }
        *observed.entry(s.size() / z).or_insert(0) += 1;
    }
    spectrum_ok &= observed.keys().all(|&k| k == p || k == p * p || k == p * p * p);
    let expected = BTreeMap::from([(p * p, p * p + p), (p * p * p, p + 1)]);

    let center = g.center();
    let strictly_between =
        proper.iter().all(|s| s.size() > center.size() && center.is_subset_of(s)) && center.size() == z;

    let enc = |i: usize, j: usize| codec.encode(NormalForm::new(i % (p * p), j % (p * p), 0));
    let cent = |x: Elem| report.centralizer_of(x);
    let generic: Vec<usize> = (1..p * p).filter(|s| s % p != 0).collect();
    let mut generic_sets: Vec<_> = generic.iter().map(|&s| cent(enc(s, 1))).collect();
    let smallest = proper.iter().map(|s| s.size()).min().unwrap_or(0);
    let generic_smallest = generic_sets.iter().all(|s| s.size() == smallest);
    generic_sets.sort();
    generic_sets.dedup();

    let mut inclusions = vec![(enc(1, 0), enc(p, 0)), (enc(0, 1), enc(0, p))];
    for s in 1..p {
        inclusions.push((enc(1, s * p), enc(p, 0)));
        inclusions.push((enc(s * p, 1), enc(0, p)));
    }
    for &s in &generic {
        inclusions.push((enc(s, 1), enc(s * p, p)));
    }
    let inclusions_ok = inclusions.iter().all(|&(x, y)| {
        let (cx, cy) = (cent(x), cent(y));
        cx.size() < cy.size() && cx.is_subset_of(cy)
    });

    let generic_distinct = generic_sets.len();
    let generic_expected = p * p - p;
    let matched = spectrum_ok
        && strictly_between
        && observed == expected
        && generic_distinct == generic_expected
        && generic_smallest
        && inclusions_ok;
    Ok(StructureCheck {
        observed,
        expected,
        spectrum_ok,
        strictly_between,
        generic_distinct,
        generic_expected,
        generic_smallest,
        inclusions_ok,
        matched,
    })
}

pub fn census_check(subject: &Subject) -> Result<CensusCheck> {
    let classes = label_types(&subject.group, &subject.descriptor)?;
    let observed = observed_census(&classes);
    let predicted = predicted_census(&subject.descriptor)?;
    let central = classes.iter().filter(|c| c.size == 1).count();
    let total = classes.iter().map(|c| c.size).sum();
    let matched = observed.rows == predicted.rows
        && central == subject.descriptor.z_order
        && total == subject.group.order()
        && observed.covered() + central == total;
    Ok(CensusCheck { observed, predicted, central, total, matched })
}

/// Predicted join shape for the subject's quotient kind.
pub fn predicted_shape(desc: &FamilyDescriptor) -> Result<JoinSpec> {
    match desc.quotient_kind {
        QuotientKind::Abelian => build_m1(desc.p, desc.z_order),
        QuotientKind::Nonabelian => build_m2(desc.p, desc.z_order),
    }
}

/// Vertex count `n(p²−1) + m(p⁴−p²)` or `n(p−1)(p+1)²`.
pub fn predicted_vertices(desc: &FamilyDescriptor) -> usize {
    let (p, n) = (desc.p, desc.n);
    match desc.quotient_kind {
        QuotientKind::Abelian => n * (p * p - 1) + desc.m_coef.unwrap_or(0) * (p.pow(4) - p * p),
        QuotientKind::Nonabelian => n * (p - 1) * (p + 1) * (p + 1),
    }
}

pub fn graph_check(subject: &Subject, opts: &VerifyOptions) -> Result<GraphCheck> {
    let spec = predicted_shape(&subject.descriptor)?;
    let (graph, _) = ccc_graph_with_classes(&subject.group, opts.max_order)?;
    graph_check_against(&graph, &spec, predicted_vertices(&subject.descriptor), opts)
}

pub fn graph_check_against(
    graph: &crate::graph::SimpleGraph,
    spec: &JoinSpec,
    expected_vertices: usize,
    opts: &VerifyOptions,
) -> Result<GraphCheck> {
    let cheap = verify_join_structure_with_budget(graph, spec, opts.iso_budget)?;
    let full = verify_join_structure_full(graph, spec, opts.iso_budget)?;
    let observed_parts = decompose_join(graph).map(|d| d.size_multiset()).unwrap_or_default();
    let expected_parts = spec.coarsen().size_multiset();
    let connected = graph.is_connected();
    let vertices = graph.n_vertices();
    Ok(GraphCheck {
        vertices,
        expected_vertices,
        spec_name: spec.name.clone(),
        connected,
        observed_parts,
        expected_parts,
        cheap,
        full,
        matched: cheap && full && connected && vertices == expected_vertices,
    })
}

/// Centralizer count and structure list.
pub fn verify_thm1(subject: &Subject, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut watch = Stopwatch::new(opts.timings);
    let mut r = VerificationReport::new("thm1", Some(subject));
    let report = distinct_centralizers_bounded(&subject.group, opts.max_order)?;
    watch.lap("centralizers");
    r.cent = Some(cent_check(subject, &report));
    r.structure = Some(structure_check(subject, &report)?);
    watch.lap("structure");
    r.elapsed_ms = watch.into_report();
    Ok(r.finish())
}

pub fn verify_thm2(subject: &Subject, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut watch = Stopwatch::new(opts.timings);
    let mut r = VerificationReport::new("thm2", Some(subject));
    r.graph = Some(graph_check(subject, opts)?);
    watch.lap("graph");
    r.elapsed_ms = watch.into_report();
    Ok(r.finish())
}

pub fn verify_tables(subject: &Subject, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut watch = Stopwatch::new(opts.timings);
    let mut r = VerificationReport::new("tables", Some(subject));
    r.census = Some(census_check(subject)?);
    watch.lap("census");
    r.elapsed_ms = watch.into_report();
    Ok(r.finish())
}

fn named(name: &str, subject: &str, matched: bool, detail: String) -> NamedCheck {
    NamedCheck { name: name.to_string(), subject: subject.to_string(), detail, matched }
}

/// Element orders in L(p, r) agree with the closed formula.
pub fn order_formula_check(p: usize, r: usize) -> Result<NamedCheck> {
    let g = make_l(p, r)?;
    let c = *g.codec().expect("L has a normal form");
    let mut bad = Vec::new();
    for i in 0..p * p {
        for j in 0..p * p {
            let x = c.encode(NormalForm::new(i, j, 0));
            if g.element_order(x) != order_formula(p, i, j) {
                bad.push((i, j));
            }
        }
    }
    Ok(named(
        "order_formula",
        &format!("L:p={p},r={r}"),
        bad.is_empty(),
        format!("{} of {} pairs disagree {:?}", bad.len(), p.pow(4), &bad[..bad.len().min(5)]),
    ))
}

/// `(x^i y^j)^k = x^{k(k−1)/2·ijp + ki} y^{kj}` in L(p, 1).
pub fn power_formula_check(p: usize) -> Result<NamedCheck> {
    let g = make_l(p, 1)?;
    let c = *g.codec().expect("L has a normal form");
    let p2 = p * p;
    let mut bad = 0usize;
    for i in 0..p2 {
        for j in 0..p2 {
            let x = c.encode(NormalForm::new(i, j, 0));
            for k in 0..p2 {
                let e = (k * k.saturating_sub(1) / 2 * i * j * p + k * i) % p2;
                let want = c.encode(NormalForm::new(e, k * j % p2, 0));
                if g.power(x, k as u64) != want {
                    bad += 1;
                }
            }
        }
    }
    Ok(named(
        "power_formula",
        &format!("L:p={p},r=1"),
        bad == 0,
        format!("{bad} of {} triples disagree", p2.pow(3)),
    ))
}

/// `(a^u b^v)⁻¹ (a^i b^j) (a^u b^v)` has exponents `(i + (uj − vi)p, j)`.
pub fn conjugation_formula_check(subject: &Subject) -> Result<NamedCheck> {
    let g = &subject.group;
    let c = subject.codec()?;
    let p = subject.descriptor.p;
    let p2 = p * p;
    let mut bad = 0usize;
    for i in 0..p2 {
        for j in 0..p2 {
            let x = c.encode(NormalForm::new(i, j, 0));
            for u in 0..p2 {
                for v in 0..p2 {
                    let y = c.encode(NormalForm::new(u, v, 0));
                    let nf = c.decode(g.conjugate(g.inverse(y), x));
                    let want_i = (i + ((u * j + p2 * p2 - v * i % p2) % p2) * p) % p2;
                    if nf.i != want_i || nf.j != j {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok(named(
        "conjugation_formula",
        &subject.name,
        bad == 0,
        format!("{bad} of {} quadruples disagree", p2.pow(4)),
    ))
}

/// `a^i b^j ≠ b^j a^i` whenever p ∤ i or p ∤ j, 1 ≤ i, j < p².
pub fn noncommuting_check(subject: &Subject) -> Result<NamedCheck> {
    let g = &subject.group;
    let c = subject.codec()?;
    let p = subject.descriptor.p;
    let mut bad = 0usize;
    for i in 1..p * p {
        for j in 1..p * p {
            if i % p != 0 || j % p != 0 {
                let a = c.encode(NormalForm::new(i, 0, 0));
                let b = c.encode(NormalForm::new(0, j, 0));
                if g.commute(a, b) {
                    bad += 1;
                }
            }
        }
    }
    Ok(named("noncommuting_normal_forms", &subject.name, bad == 0, format!("{bad} commuting pairs")))
}

/// The centralizers of `a^s b`, 1 ≤ s < p², are pairwise distinct.
pub fn distinct_generic_check(subject: &Subject, report: &CentReport) -> Result<NamedCheck> {
    let c = subject.codec()?;
    let p = subject.descriptor.p;
    let mut ids: Vec<u32> =
        (1..p * p).map(|s| report.assignment[c.encode(NormalForm::new(s, 1, 0))]).collect();
    ids.sort_unstable();
    ids.dedup();
    Ok(named(
        "distinct_centralizers_a_s_b",
        &subject.name,
        ids.len() == p * p - 1,
        format!("{} distinct of {}", ids.len(), p * p - 1),
    ))
}

/// `C(x^k) = C(x)` for k coprime to p, over every x with `x^{p²}` central.
pub fn coprime_power_check(subject: &Subject, report: &CentReport) -> Result<NamedCheck> {
    let g = &subject.group;
    let p = subject.descriptor.p;
    let center = g.center();
    let mut bad = 0usize;
    let mut tested = 0usize;
    for x in 0..g.order() {
        if !center.contains(g.power(x, (p * p) as u64)) {
            continue;
        }
        for k in (1..p * p).filter(|k| k % p != 0) {
            tested += 1;
            if report.assignment[g.power(x, k as u64)] != report.assignment[x] {
                bad += 1;
            }
        }
    }
    Ok(named(
        "coprime_power_centralizers",
        &subject.name,
        bad == 0 && tested > 0,
        format!("{bad} of {tested} (x, k) pairs disagree"),
    ))
}

/// `a^p b^p = b^p a^p`.
pub fn pth_powers_commute_check(subject: &Subject) -> Result<NamedCheck> {
    let g = &subject.group;
    let c = subject.codec()?;
    let p = subject.descriptor.p;
    let a = c.encode(NormalForm::new(1, 0, 0));
    let b = c.encode(NormalForm::new(0, 1, 0));
    let ok = g.commute(g.power(a, p as u64), g.power(b, p as u64));
    Ok(named("pth_powers_commute", &subject.name, ok, String::new()))
}

/// `G/Z(G) ≅ L(p, r)`.
pub fn quotient_check(subject: &Subject) -> Result<NamedCheck> {
    let g = &subject.group;
    let r = usize::from(subject.descriptor.quotient_kind == QuotientKind::Nonabelian);
    let q = g.quotient_by_central(&g.center())?;
    let l = make_l(subject.descriptor.p, r)?;
    let ok = iso::isomorphic_with(&q, &Invariants::of(&q), &l, &Invariants::of(&l)).is_some();
    Ok(named("central_quotient", &subject.name, ok, format!("G/Z ≅ L:p={},r={r}", subject.descriptor.p)))
}

/// No extension with `G/Z ≅ Z₄ ⋊ Z₄` and |Z| ∈ {2, 4}.
pub fn capability_check() -> Result<NamedCheck> {
    let found = search_extensions(2, 1, &[2, 4])?;
    Ok(named("no_p2_nonabelian_quotient", "search:p=2,r=1,m=2,4", found.is_empty(), format!("{} found", found.len())))
}

pub fn verify_lemmas(p: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut watch = Stopwatch::new(opts.timings);
    let mut r = VerificationReport::new("lemmas", None);
    for rr in [0, 1] {
        r.checks.push(order_formula_check(p, rr)?);
    }
    r.checks.push(power_formula_check(p)?);
    watch.lap("formulas");
    let mut kinds = vec![QuotientKind::Abelian];
    if p != 2 {
        kinds.push(QuotientKind::Nonabelian);
    }
    for kind in kinds {
        let s = subject(p, kind, None, opts)?;
        let report = distinct_centralizers_bounded(&s.group, opts.max_order)?;
        r.checks.push(quotient_check(&s)?);
        r.checks.push(noncommuting_check(&s)?);
        r.checks.push(distinct_generic_check(&s, &report)?);
        r.checks.push(coprime_power_check(&s, &report)?);
        if kind == QuotientKind::Nonabelian {
            r.checks.push(pth_powers_commute_check(&s)?);
            r.checks.push(conjugation_formula_check(&s)?);
        }
    }
    watch.lap("exemplars");
    if p == 2 {
        r.checks.push(capability_check()?);
        watch.lap("search");
    }
    r.elapsed_ms = watch.into_report();
    Ok(r.finish())
}

/// Centralizer count against `(p+1)ⁿ + 1`: n = 1 on `heisenberg_mod(p)`,
/// n = 2 on the exemplars.
pub fn verify_conjecture(p: usize, n: u32, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let predicted = predicted_cent_count_conjecture(p, n);
    let subjects: Vec<Subject> = match n {
        1 => {
            within(p.pow(3), opts)?;
            let group = heisenberg_mod(p)?;
            if !crate::presentations::is_prime(p) {
                return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
            }
            // Central quotient Z_p × Z_p: abelian, but outside the p² family.
            let descriptor =
                FamilyDescriptor { p, z_order: p, n: 1, m_coef: None, quotient_kind: QuotientKind::Abelian };
            vec![Subject { name: format!("heis:q={p}"), group, descriptor }]
        }
        2 => {
            let mut v = vec![abelian_subject(p, None, opts)?];
            if p != 2 {
                v.push(nonabelian_subject(p, None, opts)?);
            }
            v
        }
        _ => return Err(Error::InvalidParameters(format!("conjecture is checked only for n ∈ {{1, 2}}, got {n}"))),
    };
    let mut out = Vec::new();
    for s in &subjects {
        let mut watch = Stopwatch::new(opts.timings);
        let mut r = VerificationReport::new("conjecture", Some(s));
        let report = distinct_centralizers_bounded(&s.group, opts.max_order)?;
        watch.lap("centralizers");
        r.cent = Some(CentCheck {
            count: report.count,
            predicted,
            orders: report.orders.clone(),
            matched: report.count == predicted,
        });
        r.elapsed_ms = watch.into_report();
        out.push(r.finish());
    }
    Ok(out)
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Human-readable rendering, with expected and computed values side by side
/// on every mismatch.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match &r.family {
        Some(f) => line(format!(
            "[{}] {} (p={}, |Z|={}, {:?} quotient, order {})",
            r.check,
            f.name,
            f.descriptor.p,
            f.descriptor.z_order,
            f.descriptor.quotient_kind,
            f.group.order
        )),
        None => line(format!("[{}]", r.check)),
    }
    if let Some(c) = &r.cent {
        line(format!("  centralizers: {} (predicted {}) {}", c.count, c.predicted, yes(c.matched)));
        if !c.matched {
            line(format!("    sizes: {:?}", c.orders));
        }
    }
    if let Some(s) = &r.structure {
        line(format!("  structure: {}", yes(s.matched)));
        if !s.matched {
            line(format!("    sizes/|Z| expected {:?}, computed {:?}", s.expected, s.observed));
            line(format!(
                "    spectrum {}, strict {}, a^s b centralizers {} of {} (least size: {}), inclusions {}",
                s.spectrum_ok, s.strictly_between, s.generic_distinct, s.generic_expected, s.generic_smallest,
                s.inclusions_ok
            ));
        }
    }
    if let Some(c) = &r.census {
        line(format!(
            "  census: {} non-central classes, {} central, {} elements {}",
            c.observed.total_classes,
            c.central,
            c.total,
            yes(c.matched)
        ));
        if !c.matched {
            line("    (type, size, count) expected | computed".into());
            let n = c.predicted.rows.len().max(c.observed.rows.len());
            for k in 0..n {
                let fmt = |row: Option<&crate::conjugacy::CensusRow>| {
                    row.map_or("-".to_string(), |r| format!("({}, {}, {})", r.type_label, r.class_size, r.count))
                };
                line(format!("    {} | {}", fmt(c.predicted.rows.get(k)), fmt(c.observed.rows.get(k))));
            }
        }
    }
    if let Some(g) = &r.graph {
        line(format!(
            "  graph: {} vertices (predicted {}), join shape {} {}",
            g.vertices,
            g.expected_vertices,
            g.spec_name,
            yes(g.matched)
        ));
        if !g.matched {
            line(format!("    part sizes expected {:?}, computed {:?}", g.expected_parts, g.observed_parts));
            line(format!("    connected {}, quotient check {}, full check {}", g.connected, g.cheap, g.full));
        }
    }
    for c in &r.checks {
        let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
        line(format!("  {} on {}: {}{}", c.name, c.subject, yes(c.matched), detail));
    }
    if let Some(t) = &r.elapsed_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
        line(format!("  time: {}", parts.join(", ")));
    }
    line(format!("  => {}", if r.matched { "MATCH" } else { "MISMATCH" }));
    out
}
