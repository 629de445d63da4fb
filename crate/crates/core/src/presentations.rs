//! Concrete groups: cyclic blocks, products, the order-p⁴ groups L(p, r),
//! Heisenberg groups mod q and the central-extension family with its
//! exemplar search.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Labels};
use crate::iso::{self, Invariants};

/// Upper bound on p²·m accepted by [`central_extension`].
pub const EXTENSION_BOUND: usize = 30_000;

/// Upper bound on q accepted by [`heisenberg_mod`].
pub const HEISENBERG_MAX_Q: usize = 128;

/// Exponent triple of `a^i b^j z^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalForm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl NormalForm {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        NormalForm { i, j, k }
    }
}

/// Mixed-radix encoding `index = (i·ab_radix + j)·z_radix + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalFormCodec {
    pub ab_radix: usize,
    pub z_radix: usize,
    /// Prime p with `ab_radix = p²`, when the family has one.
    pub prime: Option<usize>,
    pub letters: [&'static str; 3],
}

impl NormalFormCodec {
    pub fn encode(&self, nf: NormalForm) -> Elem {
        (nf.i * self.ab_radix + nf.j) * self.z_radix + nf.k
    }

    pub fn decode(&self, x: Elem) -> NormalForm {
        let k = x % self.z_radix;
        let ab = x / self.z_radix;
        NormalForm { i: ab / self.ab_radix, j: ab % self.ab_radix, k }
    }

    pub fn render(&self, nf: NormalForm) -> String {
        let mut out = String::new();
        for (letter, e) in self.letters.iter().zip([nf.i, nf.j, nf.k]) {
            match e {
                0 => {}
                1 => out.push_str(letter),
                _ => out.push_str(&format!("{letter}^{e}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtensionParams {
    pub p: usize,
    pub r: usize,
    pub m: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl ExtensionParams {
    pub fn new(p: usize, r: usize, m: usize, alpha: usize, beta: usize, gamma: usize) -> Self {
        ExtensionParams { p, r, m, alpha, beta, gamma }
    }

    pub fn order(&self) -> usize {
        self.p.pow(4) * self.m
    }

    fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidParameters(format!("p = {} is not prime", self.p)));
        }
        if self.r > 1 {
            return Err(Error::InvalidParameters(format!("r = {} is not 0 or 1", self.r)));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameters("m must be positive".into()));
        }
        if self.alpha >= self.m || self.beta >= self.m || self.gamma >= self.m {
            return Err(Error::InvalidParameters(format!(
                "alpha, beta, gamma must be below m = {}",
                self.m
            )));
        }
        let bound = self.p * self.p * self.m;
        if bound > EXTENSION_BOUND {
            return Err(Error::BoundExceeded { order: bound, bound: EXTENSION_BOUND });
        }
        Ok(())
    }
}

impl fmt::Display for ExtensionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ce:p={},r={},m={},a={},b={},g={}",
            self.p, self.r, self.m, self.alpha, self.beta, self.gamma
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Abelian,
    Nonabelian,
}

impl QuotientKind {
    pub fn from_twist(r: usize) -> Self {
        if r == 0 {
            QuotientKind::Abelian
        } else {
            QuotientKind::Nonabelian
        }
    }
}

/// Size data of a group with `G/Z ≅ L(p, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub p: usize,
    pub z_order: usize,
    pub n: usize,
    pub m_coef: Option<usize>,
    pub quotient_kind: QuotientKind,
}

impl FamilyDescriptor {
    pub fn new(p: usize, z_order: usize, quotient_kind: QuotientKind) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
        }
        if z_order == 0 || z_order % p != 0 {
            return Err(Error::InvalidParameters(format!("p = {p} does not divide |Z| = {z_order}")));
        }
        let m_coef = (z_order % (p * p) == 0).then(|| z_order / (p * p));
        if quotient_kind == QuotientKind::Abelian && m_coef.is_none() {
            return Err(Error::InvalidParameters(format!(
                "abelian quotient needs p² | |Z|, got p = {p}, |Z| = {z_order}"
            )));
        }
        Ok(FamilyDescriptor { p, z_order, n: z_order / p, m_coef, quotient_kind })
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime p with q = p^e, e ≥ 1.
pub fn prime_power_base(q: usize) -> Option<usize> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(base: usize, mut e: usize, m: usize) -> usize {
    let mut result = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1, "cyclic group needs n ≥ 1");
    let gens = if n > 1 { vec![1] } else { vec![0] };
    Group::trusted(n, move |x, y| (x + y) % n, 0, gens).with_family("cyclic", &[("n", n as i64)])
}

/// Direct product; `(x₁, x₂)` has index `x₁·|g₂| + x₂`.
pub fn direct_product(g1: &Group, g2: &Group, max_order: usize) -> Result<Group> {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1.saturating_mul(n2);
    if order > max_order {
        return Err(Error::BoundExceeded { order, bound: max_order });
    }
    let mut gens: Vec<Elem> = g1.generators().iter().map(|&s| s * n2 + g2.identity()).collect();
    gens.extend(g2.generators().iter().map(|&t| g1.identity() * n2 + t));
    let (a, b) = (g1.clone(), g2.clone());
    let identity = g1.identity() * n2 + g2.identity();
    let labels: Vec<String> = (0..order)
        .map(|x| format!("({},{})", g1.label(x / n2), g2.label(x % n2)))
        .collect();
    Ok(Group::trusted(
        order,
        move |x, y| a.product(x / n2, y / n2) * n2 + b.product(x % n2, y % n2),
        identity,
        gens,
    )
    .with_labels(Labels::Explicit(labels.into()))
    .with_family("product", &[("n1", n1 as i64), ("n2", n2 as i64)]))
}

/// `Z_nN ⋊ Z_nH` with `h x h⁻¹ = x^t`. Element `x^u h^v` has index `u·nH + v`.
pub fn semidirect_cyclic(n_n: usize, n_h: usize, t: usize) -> Result<Group> {
    if n_n == 0 || n_h == 0 {
        return Err(Error::InvalidAction("factor orders must be positive".into()));
    }
    if gcd(t % n_n, n_n) != 1 && n_n > 1 {
        return Err(Error::InvalidAction(format!("gcd({t}, {n_n}) ≠ 1")));
    }
    if pow_mod(t, n_h, n_n) != 1 % n_n {
        return Err(Error::InvalidAction(format!("{t}^{n_h} ≢ 1 mod {n_n}")));
    }
    let tp: Arc<Vec<usize>> = Arc::new((0..n_h).map(|v| pow_mod(t, v, n_n)).collect());
    let order = n_n * n_h;
    let mut gens = Vec::new();
    if n_n > 1 {
        gens.push(n_h);
    }
    if n_h > 1 {
        gens.push(1);
    }
    Ok(Group::trusted(
        order,
        move |x, y| {
            let (u1, v1) = (x / n_h, x % n_h);
            let (u2, v2) = (y / n_h, y % n_h);
            ((u1 + u2 * tp[v1]) % n_n) * n_h + (v1 + v2) % n_h
        },
        0,
        gens,
    )
    .with_family("semidirect", &[("n", n_n as i64), ("h", n_h as i64), ("t", t as i64)]))
}

/// `⟨x, y | x^{p²} = y^{p²} = 1, yx = x^{rp+1}y⟩`, order p⁴.
pub fn make_l(p: usize, r: usize) -> Result<Group> {
    let g = extension_group(ExtensionParams::new(p, r, 1, 0, 0, 0), true)?;
    Ok(g.with_family("L", &[("p", p as i64), ("r", r as i64)]))
}

/// Unitriangular 3×3 matrices over Z_q, written as `(i, j, k)` with
/// `(i₁,j₁,k₁)(i₂,j₂,k₂) = (i₁+i₂, j₁+j₂, k₁+k₂+j₁i₂)`.
pub fn heisenberg_mod(q: usize) -> Result<Group> {
    if q > HEISENBERG_MAX_Q {
        return Err(Error::BoundExceeded { order: q, bound: HEISENBERG_MAX_Q });
    }
    let base = prime_power_base(q)
        .ok_or_else(|| Error::InvalidParameters(format!("q = {q} is not a prime power")))?;
    let prime = (base * base == q).then_some(base);
    let codec = NormalFormCodec { ab_radix: q, z_radix: q, prime, letters: ["a", "b", "z"] };
    let gens = vec![
        codec.encode(NormalForm::new(1, 0, 0)),
        codec.encode(NormalForm::new(0, 1, 0)),
    ];
    let order = q * q * q;
    Ok(Group::trusted(
        order,
        move |x, y| {
            let (a, b) = (codec.decode(x), codec.decode(y));
            codec.encode(NormalForm {
                i: (a.i + b.i) % q,
                j: (a.j + b.j) % q,
                k: (a.k + b.k + a.j * b.i) % q,
            })
        },
        0,
        gens,
    )
    .with_labels(Labels::NormalForm(codec))
    .with_family("heis", &[("q", q as i64)]))
}

/// Group on `a^i b^j z^k` multiplied by collection; rejected with the failing
/// triple when the parameters do not define a group.
pub fn central_extension(params: ExtensionParams) -> Result<Group> {
    let g = extension_group(params, false)?;
    let ExtensionParams { p, r, m, alpha, beta, gamma } = params;
    Ok(g.with_family(
        "ce",
        &[
            ("p", p as i64),
            ("r", r as i64),
            ("m", m as i64),
            ("a", alpha as i64),
            ("b", beta as i64),
            ("g", gamma as i64),
        ],
    ))
}

fn collection_rule(params: ExtensionParams, codec: NormalFormCodec) -> impl Fn(Elem, Elem) -> Elem + Send + Sync {
    let ExtensionParams { p, r, m, alpha, beta, gamma } = params;
    let p2 = p * p;
    let modulus = p2 * m;
    let q = 1 + r * p;
    let mut twist = Vec::with_capacity(p2);
    let mut partial = Vec::with_capacity(p2);
    let (mut qp, mut s) = (1 % modulus, 0usize);
    for _ in 0..p2 {
        twist.push(qp);
        partial.push(s);
        s = (s + qp) % m;
        qp = qp * q % modulus;
    }
    move |x, y| {
        let (u, v) = (codec.decode(x), codec.decode(y));
        let e = v.i * twist[u.j] % modulus;
        let mut k = u.k + v.k + (gamma * v.i % m) * partial[u.j];
        let ea = u.i + e;
        k += alpha * (ea / p2);
        let mut eb = u.j + v.j;
        if eb >= p2 {
            eb -= p2;
            k += beta;
        }
        codec.encode(NormalForm { i: ea % p2, j: eb, k: k % m })
    }
}

fn extension_group(params: ExtensionParams, trusted: bool) -> Result<Group> {
    params.validate()?;
    let (p, m) = (params.p, params.m);
    let letters = if trusted { ["x", "y", "z"] } else { ["a", "b", "z"] };
    let codec = NormalFormCodec { ab_radix: p * p, z_radix: m, prime: Some(p), letters };
    let mut gens = vec![
        codec.encode(NormalForm::new(1, 0, 0)),
        codec.encode(NormalForm::new(0, 1, 0)),
    ];
    if m > 1 {
        gens.push(codec.encode(NormalForm::new(0, 0, 1)));
    }
    let rule = collection_rule(params, codec);
    let g = if trusted {
        Group::trusted(params.order(), rule, 0, gens)
    } else {
        Group::from_rule(params.order(), rule, 0, gens)?
    };
    Ok(g.with_labels(Labels::NormalForm(codec)))
}

/// Order of `x^i y^j` in L(p, r): 1, p or p².
pub fn order_formula(p: usize, i: usize, j: usize) -> usize {
    if i == 0 && j == 0 {
        1
    } else if i % p == 0 && j % p == 0 {
        p
    } else {
        p * p
    }
}

/// A group found by [`search_extensions`].
#[derive(Clone, Debug)]
pub struct Exemplar {
    pub params: ExtensionParams,
    pub group: Group,
    pub descriptor: FamilyDescriptor,
}

const SEARCH_CHUNK: usize = 48;

fn tuples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..m).flat_map(move |a| (0..m).flat_map(move |b| (0..m).map(move |c| (a, b, c))))
}

/// Elements commuting with `a`, `b` and `z` under the raw rule. For a group
/// this is the center; anything else is rejected later regardless.
fn generator_centralizer_size(params: ExtensionParams) -> usize {
    let p2 = params.p * params.p;
    let codec = NormalFormCodec { ab_radix: p2, z_radix: params.m, prime: Some(params.p), letters: ["a", "b", "z"] };
    let rule = collection_rule(params, codec);
    let gens = [NormalForm::new(1, 0, 0), NormalForm::new(0, 1, 0), NormalForm::new(0, 0, 1 % params.m)].map(|f| codec.encode(f));
    (0..params.order()).filter(|&x| gens.iter().all(|&s| rule(x, s) == rule(s, x))).count()
}

fn accept(params: ExtensionParams, target: &Group, target_inv: &Invariants) -> Option<Group> {
    if generator_centralizer_size(params) != params.m {
        return None;
    }
    let g = central_extension(params).ok()?;
    let z = g.center();
    if z.size() != params.m || g.order() / z.size() != params.p.pow(4) {
        return None;
    }
    let q = g.quotient_by_central(&z).ok()?;
    let q_inv = Invariants::of(&q);
    iso::isomorphic_with(&q, &q_inv, target, target_inv).map(|_| g)
}

fn search_setup(p: usize, r: usize, z_orders: &[usize]) -> Result<(Vec<usize>, Group, Invariants)> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
    }
    if r > 1 {
        return Err(Error::InvalidParameters(format!("r = {r} is not 0 or 1")));
    }
    let mut ms: Vec<usize> = z_orders.to_vec();
    ms.sort_unstable();
    ms.dedup();
    for &m in &ms {
        if m == 0 {
            return Err(Error::InvalidParameters("|Z| must be positive".into()));
        }
        if p * p * m > EXTENSION_BOUND {
            return Err(Error::BoundExceeded { order: p * p * m, bound: EXTENSION_BOUND });
        }
    }
    let target = make_l(p, r)?;
    let inv = Invariants::of(&target);
    Ok((ms, target, inv))
}

/// Enumerates `(m, α, β, γ)` lexicographically and keeps the first
/// representative of each isomorphism type with `G/Z(G) ≅ L(p, r)` and
/// `|Z(G)| = m`.
pub fn search_extensions(p: usize, r: usize, z_orders: &[usize]) -> Result<Vec<Exemplar>> {
    let (ms, target, target_inv) = search_setup(p, r, z_orders)?;
    let mut kept: Vec<(Exemplar, Invariants)> = Vec::new();
    for m in ms {
        let all: Vec<(usize, usize, usize)> = tuples(m).collect();
        for chunk in all.chunks(SEARCH_CHUNK) {
            let found: Vec<Option<Group>> = chunk
                .par_iter()
                .map(|&(a, b, c)| accept(ExtensionParams::new(p, r, m, a, b, c), &target, &target_inv))
                .collect();
            for (&(a, b, c), g) in chunk.iter().zip(found) {
                let Some(g) = g else { continue };
                let inv = Invariants::of(&g);
                if kept.iter().any(|(e, ei)| iso::isomorphic_with(&g, &inv, &e.group, ei).is_some()) {
                    continue;
                }
                let descriptor = FamilyDescriptor::new(p, m, QuotientKind::from_twist(r))?;
                kept.push((Exemplar { params: ExtensionParams::new(p, r, m, a, b, c), group: g, descriptor }, inv));
            }
        }
    }
    Ok(kept.into_iter().map(|(e, _)| e).collect())
}

/// First exemplar in search order, without the isomorphism sweep.
pub fn first_extension(p: usize, r: usize, z_orders: &[usize]) -> Result<Option<Exemplar>> {
    let (ms, target, target_inv) = search_setup(p, r, z_orders)?;
    for m in ms {
        let all: Vec<(usize, usize, usize)> = tuples(m).collect();
        for chunk in all.chunks(SEARCH_CHUNK) {
            let hit = chunk.par_iter().find_map_first(|&(a, b, c)| {
                let params = ExtensionParams::new(p, r, m, a, b, c);
                accept(params, &target, &target_inv).map(|g| (params, g))
            });
            if let Some((params, group)) = hit {
                let descriptor = FamilyDescriptor::new(p, m, QuotientKind::from_twist(r))?;
                return Ok(Some(Exemplar { params, group, descriptor }));
            }
        }
    }
    Ok(None)
}

/// Parsed CLI family string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    L { p: usize, r: usize },
    Heis { q: usize },
    Ce(ExtensionParams),
    Search { p: usize, r: usize, ms: Vec<usize> },
}

impl FamilySpec {
    /// Order of the group the spec describes, when known before building.
    pub fn order(&self) -> Option<usize> {
        match self {
            FamilySpec::L { p, .. } => Some(p.pow(4)),
            FamilySpec::Heis { q } => Some(q.pow(3)),
            FamilySpec::Ce(params) => Some(params.order()),
            FamilySpec::Search { p, ms, .. } => ms.iter().max().map(|m| p.pow(4) * m),
        }
    }

    /// Builds the group; search specs yield their first exemplar.
    pub fn build(&self) -> Result<Group> {
        match self {
            FamilySpec::L { p, r } => make_l(*p, *r),
            FamilySpec::Heis { q } => heisenberg_mod(*q),
            FamilySpec::Ce(params) => central_extension(*params),
            FamilySpec::Search { p, r, ms } => first_extension(*p, *r, ms)?
                .map(|e| e.group)
                .ok_or_else(|| Error::NoExemplar(format!("{self}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::L { p, r } => write!(f, "L:p={p},r={r}"),
            FamilySpec::Heis { q } => write!(f, "heis:q={q}"),
            FamilySpec::Ce(params) => write!(f, "{params}"),
            FamilySpec::Search { p, r, ms } => {
                let ms: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "search:p={p},r={r},m={}", ms.join(","))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in family spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let mut fields: Vec<(String, Vec<usize>)> = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = match tok.split_once('=') {
                Some((k, v)) => (Some(k.trim()), v.trim()),
                None => (None, tok),
            };
            let value: usize = value.parse().map_err(|_| bad(&format!("bad number {value:?}")))?;
            match key {
                Some(k) => {
                    if fields.iter().any(|(f, _)| f == k) {
                        return Err(bad(&format!("duplicate key {k:?}")));
                    }
                    fields.push((k.to_string(), vec![value]));
                }
                None => match fields.last_mut() {
                    Some((k, vs)) if k == "m" => vs.push(value),
                    _ => return Err(bad(&format!("stray value {tok:?}"))),
                },
            }
        }
        let take = |fields: &mut Vec<(String, Vec<usize>)>, key: &str| -> Result<Vec<usize>> {
            let pos = fields.iter().position(|(k, _)| k == key).ok_or_else(|| bad(&format!("missing {key}")))?;
            Ok(fields.remove(pos).1)
        };
        let one = |v: Vec<usize>, key: &str| -> Result<usize> {
            if v.len() == 1 {
                Ok(v[0])
            } else {
                Err(bad(&format!("{key} takes one value")))
            }
        };
        let spec = match kind.trim() {
            "L" => {
                let p = one(take(&mut fields, "p")?, "p")?;
                let r = one(take(&mut fields, "r")?, "r")?;
                FamilySpec::L { p, r }
            }
            "heis" => FamilySpec::Heis { q: one(take(&mut fields, "q")?, "q")? },
            "ce" => {
                let p = one(take(&mut fields, "p")?, "p")?;
                let r = one(take(&mut fields, "r")?, "r")?;
                let m = one(take(&mut fields, "m")?, "m")?;
                let a = one(take(&mut fields, "a")?, "a")?;
                let b = one(take(&mut fields, "b")?, "b")?;
                let g = one(take(&mut fields, "g")?, "g")?;
                FamilySpec::Ce(ExtensionParams::new(p, r, m, a, b, g))
            }
            "search" => {
                let p = one(take(&mut fields, "p")?, "p")?;
                let r = one(take(&mut fields, "r")?, "r")?;
                let ms = take(&mut fields, "m")?;
                FamilySpec::Search { p, r, ms }
            }
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        if let Some((k, _)) = fields.first() {
            return Err(bad(&format!("unexpected key {k:?}")));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codec_round_trip() {
        let c = NormalFormCodec { ab_radix: 9, z_radix: 3, prime: Some(3), letters: ["a", "b", "z"] };
        for x in 0..243 {
            assert_eq!(c.encode(c.decode(x)), x);
        }
        assert_eq!(c.render(NormalForm::new(0, 0, 0)), "1");
        assert_eq!(c.render(NormalForm::new(1, 2, 0)), "ab^2");
        assert_eq!(c.render(NormalForm::new(3, 0, 1)), "a^3z");
    }

    #[test]
    fn l2_collection() {
        let g = make_l(3, 1).unwrap();
        let c = *g.codec().unwrap();
        let x = c.encode(NormalForm::new(1, 0, 0));
        let y = c.encode(NormalForm::new(0, 1, 0));
        assert_eq!(c.decode(g.mul(y, x).unwrap()), NormalForm::new(4, 1, 0));
        let xy = g.product(x, y);
        assert_eq!(c.decode(g.power(xy, 3)), NormalForm::new(3, 3, 0));
        assert_eq!(g.power(xy, 9), g.identity());
        assert_eq!(g.element_order(c.encode(NormalForm::new(3, 3, 0))), 3);
        let l12 = make_l(2, 0).unwrap();
        assert_eq!(l12.element_order(l12.codec().unwrap().encode(NormalForm::new(2, 0, 0))), 2);
        let l21 = make_l(2, 1).unwrap();
        let c21 = *l21.codec().unwrap();
        assert_eq!(l21.element_order(c21.encode(NormalForm::new(1, 1, 0))), 4);
    }

    #[test]
    fn order_formula_cases() {
        assert_eq!(order_formula(3, 0, 0), 1);
        assert_eq!(order_formula(3, 3, 6), 3);
        assert_eq!(order_formula(3, 1, 0), 9);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("L:p=3,r=1".parse::<FamilySpec>().unwrap(), FamilySpec::L { p: 3, r: 1 });
        assert_eq!("heis:q=9".parse::<FamilySpec>().unwrap(), FamilySpec::Heis { q: 9 });
        assert_eq!(
            "ce:p=3,r=1,m=3,a=1,b=0,g=1".parse::<FamilySpec>().unwrap(),
            FamilySpec::Ce(ExtensionParams::new(3, 1, 3, 1, 0, 1))
        );
        assert_eq!(
            "search:p=3,r=1,m=3,9".parse::<FamilySpec>().unwrap(),
            FamilySpec::Search { p: 3, r: 1, ms: vec![3, 9] }
        );
        for bad in ["heis", "heis:q=x", "L:p=3", "foo:p=1", "heis:q=9,q=4", "L:p=3,r=1,z=2", "heis:q=9,4"] {
            assert!(matches!(bad.parse::<FamilySpec>(), Err(Error::Parse(_))), "{bad}");
        }
        for s in ["L:p=3,r=1", "heis:q=9", "ce:p=3,r=1,m=3,a=1,b=0,g=1", "search:p=3,r=1,m=3,9"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn semidirect_checks_action() {
        assert!(matches!(semidirect_cyclic(9, 9, 3), Err(Error::InvalidAction(_))));
        assert!(matches!(semidirect_cyclic(9, 2, 4), Err(Error::InvalidAction(_))));
        let s3 = semidirect_cyclic(3, 2, 2).unwrap();
        let mut orders: Vec<usize> = (0..6).map(|x| s3.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn prime_helpers() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && !is_prime(1) && !is_prime(9));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn extension_rejects_bad_params() {
        assert!(matches!(central_extension(ExtensionParams::new(4, 0, 1, 0, 0, 0)), Err(Error::InvalidParameters(_))));
        assert!(matches!(central_extension(ExtensionParams::new(3, 2, 1, 0, 0, 0)), Err(Error::InvalidParameters(_))));
        assert!(matches!(central_extension(ExtensionParams::new(3, 0, 3, 3, 0, 0)), Err(Error::InvalidParameters(_))));
        assert!(matches!(
            central_extension(ExtensionParams::new(7, 0, 700, 0, 0, 0)),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            central_extension(ExtensionParams::new(3, 1, 9, 1, 0, 1)),
            Err(Error::Axioms(_))
        ));
    }

    #[test]
    fn descriptor_arithmetic() {
        let d = FamilyDescriptor::new(3, 9, QuotientKind::Abelian).unwrap();
        assert_eq!((d.n, d.m_coef), (3, Some(1)));
        let d = FamilyDescriptor::new(3, 3, QuotientKind::Nonabelian).unwrap();
        assert_eq!((d.n, d.m_coef), (1, None));
        assert!(FamilyDescriptor::new(3, 3, QuotientKind::Abelian).is_err());
        assert!(FamilyDescriptor::new(3, 4, QuotientKind::Nonabelian).is_err());
    }
}
