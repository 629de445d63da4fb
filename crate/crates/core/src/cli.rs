//! `commcent` command line: build a group, run verifications, export graphs.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cccgraph::ccc_graph_with_classes;
use crate::conjugacy::{label_types, observed_census, predicted_census};
use crate::error::{Error, Result};
use crate::group::{Group, GroupDescriptor};
use crate::iso::{self, DEFAULT_ISO_BOUND};
use crate::joins::{build_m1, build_m2, DEFAULT_ISO_BUDGET};
use crate::presentations::{
    cyclic, direct_product, is_prime, make_l, prime_power_base, FamilyDescriptor, FamilySpec, QuotientKind,
};
use crate::verify::{self, Subject, VerificationReport, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "commcent", version, about = "Centralizer counts and commuting class graphs of finite p-groups")]
struct Cli {
    /// Largest group order any command will build.
    #[arg(long, global = true, default_value_t = 20_000)]
    max_order: usize,
    /// Node budget for graph isomorphism searches (accepts `10^7`).
    #[arg(long, global = true, value_parser = parse_budget, default_value_t = DEFAULT_ISO_BUDGET)]
    iso_budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format: text or json for build/verify, dot or json for export.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a group from a family string and summarize it.
    Build {
        /// `L:p=3,r=1`, `heis:q=9`, `ce:p=3,r=1,m=3,a=1,b=0,g=1` or `search:p=3,r=1,m=3,9`.
        family: String,
    },
    /// Check predicted counts and shapes on exemplars.
    Verify {
        #[arg(value_enum)]
        thm: Thm,
        #[command(flatten)]
        params: Params,
        /// Exponent for the conjecture check (1 or 2; default both).
        #[arg(long)]
        n: Option<u32>,
        /// Include p = 5 in `verify all`.
        #[arg(long)]
        extended: bool,
        /// Add per-stage wall-clock times to the report.
        #[arg(long)]
        timings: bool,
    },
    /// Write a graph or a predicted join shape as DOT or JSON.
    Export {
        #[arg(value_enum)]
        what: What,
        #[command(flatten)]
        params: Params,
        /// Family string for `ccc`.
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Debug, Args)]
struct Params {
    #[arg(long)]
    p: Option<usize>,
    /// Order of the center.
    #[arg(long)]
    z: Option<usize>,
    /// 0 for an abelian central quotient, 1 for a non-abelian one.
    #[arg(long)]
    r: Option<usize>,
    /// Shorthand `p=3 z=9 r=0 n=1`.
    #[arg(value_name = "KEY=VALUE")]
    rest: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Thm {
    Thm1,
    Thm2,
    Tables,
    Lemmas,
    Conjecture,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Ccc,
    M1,
    M2,
}

fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.trim().parse().map_err(|_| format!("bad base in {s:?}"))?;
        let e: u32 = e.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        b.checked_pow(e).ok_or_else(|| format!("{s} overflows"))
    } else {
        s.trim().parse().map_err(|_| format!("bad number {s:?}"))
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Resolved {
    p: Option<usize>,
    z: Option<usize>,
    r: Option<usize>,
    n: Option<u32>,
}

impl Params {
    fn resolve(&self, n: Option<u32>) -> Result<Resolved> {
        let mut out = Resolved { p: self.p, z: self.z, r: self.r, n };
        for kv in &self.rest {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected KEY=VALUE, got {kv:?}")))?;
            let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad number in {kv:?}")))?;
            match k {
                "p" => out.p = Some(v),
                "z" => out.z = Some(v),
                "r" => out.r = Some(v),
                "n" => out.n = Some(v as u32),
                _ => return Err(Error::Parse(format!("unknown key {k:?}"))),
            }
        }
        if let Some(p) = out.p {
            if !is_prime(p) {
                return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
            }
        }
        if let Some(r) = out.r {
            if r > 1 {
                return Err(Error::InvalidParameters(format!("r = {r} is not 0 or 1")));
            }
        }
        Ok(out)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Axioms(_) | Error::NoExemplar(_) => EXIT_INCONSISTENT,
        Error::Io(_) => EXIT_IO,
        Error::BudgetExhausted { .. } => EXIT_BUDGET,
        Error::Parse(_)
        | Error::InvalidParameters(_)
        | Error::InvalidAction(_)
        | Error::LengthMismatch { .. }
        | Error::BoundExceeded { .. }
        | Error::IndexOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidParameters(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok((body, code)) => match emit(&cli, &body, stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, body: &str, stdout: &mut dyn Write) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(body.as_bytes()).map_err(Error::from),
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Build { family } => cmd_build(cli, family),
        Command::Verify { thm, params, n, extended, timings } => {
            let opts = VerifyOptions { max_order: cli.max_order, iso_budget: cli.iso_budget, timings: *timings };
            cmd_verify(cli, *thm, params.resolve(*n)?, *extended, &opts)
        }
        Command::Export { what, params, family } => cmd_export(cli, *what, params.resolve(None)?, family.as_deref()),
    }
}

fn text_or_json(cli: &Cli) -> Result<bool> {
    match cli.format {
        None | Some(Format::Text) => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(Format::Dot) => Err(Error::Parse("dot output is only available for export".into())),
    }
}

#[derive(Serialize)]
struct BuildSummary {
    family: GroupDescriptor,
    order: usize,
    center: usize,
    abelian: bool,
    quotient: String,
}

fn build_group(spec: &FamilySpec, max_order: usize) -> Result<Group> {
    if let Some(order) = spec.order() {
        if order > max_order {
            return Err(Error::BoundExceeded { order, bound: max_order });
        }
    }
    spec.build()
}

/// Names the central quotient when it is one of the groups this crate builds.
pub fn identify_quotient(g: &Group) -> Result<String> {
    let q = g.quotient_by_central(&g.center())?;
    let n = q.order();
    if n == 1 {
        return Ok("trivial".into());
    }
    if n > DEFAULT_ISO_BOUND {
        return Ok(format!("order {n}"));
    }
    if let Some(p) = prime_power_base(n) {
        if p.pow(4) == n {
            for (r, name) in [(0, format!("Z{0}xZ{0}", p * p)), (1, format!("Z{0}:Z{0}", p * p))] {
                if iso::isomorphic(&q, &make_l(p, r)?)?.is_some() {
                    return Ok(name);
                }
            }
        }
        let root = (1..=n).find(|k| k * k >= n).unwrap_or(1);
        if root * root == n {
            let c = cyclic(root);
            if iso::isomorphic(&q, &direct_product(&c, &c, DEFAULT_ISO_BOUND)?)?.is_some() {
                return Ok(format!("Z{root}xZ{root}"));
            }
        }
    }
    Ok(format!("order {n}"))
}

fn cmd_build(cli: &Cli, family: &str) -> Result<(String, i32)> {
    let json = text_or_json(cli)?;
    let spec: FamilySpec = family.parse()?;
    let g = build_group(&spec, cli.max_order)?;
    let summary = BuildSummary {
        family: g.descriptor(),
        order: g.order(),
        center: g.center().size(),
        abelian: g.is_abelian(),
        quotient: identify_quotient(&g)?,
    };
    let body = if json {
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
    } else {
        let params: Vec<String> = summary.family.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "family: {} {}\norder: {}\ncenter: {}\nabelian: {}\nquotient: {}\n",
            summary.family.family,
            params.join(","),
            summary.order,
            summary.center,
            summary.abelian,
            summary.quotient
        )
    };
    Ok((body, EXIT_OK))
}

fn kinds_for(p: usize, r: Option<usize>) -> Vec<QuotientKind> {
    match r {
        Some(r) => vec![QuotientKind::from_twist(r)],
        None if p == 2 => vec![QuotientKind::Abelian],
        None => vec![QuotientKind::Abelian, QuotientKind::Nonabelian],
    }
}

fn cmd_verify(cli: &Cli, thm: Thm, params: Resolved, extended: bool, opts: &VerifyOptions) -> Result<(String, i32)> {
    let json = text_or_json(cli)?;
    let ps: Vec<usize> = match (thm, params.p) {
        (_, Some(p)) => vec![p],
        (Thm::All, None) if extended => vec![2, 3, 5],
        (Thm::All, None) => vec![2, 3],
        (_, None) => vec![3],
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for p in ps {
        let subjects = |kinds: &[QuotientKind]| -> Result<Vec<Subject>> {
            kinds.iter().map(|&k| verify::subject(p, k, params.z, opts)).collect()
        };
        match thm {
            Thm::Thm1 => {
                for s in subjects(&kinds_for(p, params.r))? {
                    reports.push(verify::verify_thm1(&s, opts)?);
                }
            }
            Thm::Thm2 => {
                for s in subjects(&kinds_for(p, params.r))? {
                    reports.push(verify::verify_thm2(&s, opts)?);
                }
            }
            Thm::Tables => {
                for s in subjects(&kinds_for(p, params.r))? {
                    reports.push(verify::verify_tables(&s, opts)?);
                }
            }
            Thm::Lemmas => reports.push(verify::verify_lemmas(p, opts)?),
            Thm::Conjecture => {
                let ns = params.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2]);
                for n in ns {
                    reports.extend(verify::verify_conjecture(p, n, opts)?);
                }
            }
            Thm::All => {
                for s in subjects(&kinds_for(p, params.r))? {
                    reports.push(verify::verify_thm1(&s, opts)?);
                    reports.push(verify::verify_tables(&s, opts)?);
                    reports.push(verify::verify_thm2(&s, opts)?);
                }
                reports.push(verify::verify_lemmas(p, opts)?);
                for n in [1, 2] {
                    reports.extend(verify::verify_conjecture(p, n, opts)?);
                }
            }
        }
    }
    let ok = reports.iter().all(|r| r.matched);
    let body = if json {
        #[derive(Serialize)]
        struct Top<'a> {
            reports: &'a [VerificationReport],
        }
        serde_json::to_string_pretty(&Top { reports: &reports }).expect("report serializes") + "\n"
    } else {
        let mut s: String = reports.iter().map(verify::render_text).collect();
        s.push_str(if ok { "all checks match\n" } else { "some checks do not match\n" });
        s
    };
    Ok((body, if ok { EXIT_OK } else { EXIT_MISMATCH }))
}

#[derive(Serialize)]
struct ClassJson {
    rep: String,
    size: usize,
    #[serde(rename = "type")]
    type_label: Option<u8>,
}

#[derive(Serialize)]
struct CccJson {
    family: GroupDescriptor,
    classes: Vec<ClassJson>,
    edges: Vec<(usize, usize)>,
    census_match: Option<bool>,
}

/// Descriptor of `g` when its central quotient has order p⁴ and the family
/// string fixes the quotient kind.
fn family_descriptor(spec: &FamilySpec, g: &Group) -> Option<FamilyDescriptor> {
    let p = g.codec()?.prime?;
    let kind = match spec {
        FamilySpec::Heis { .. } => QuotientKind::Abelian,
        FamilySpec::Ce(params) => QuotientKind::from_twist(params.r),
        FamilySpec::Search { r, .. } => QuotientKind::from_twist(*r),
        FamilySpec::L { .. } => return None,
    };
    let z = g.center().size();
    (g.order() == p.pow(4) * z).then(|| FamilyDescriptor::new(p, z, kind).ok()).flatten()
}

fn cmd_export(cli: &Cli, what: What, params: Resolved, family: Option<&str>) -> Result<(String, i32)> {
    let json = match cli.format {
        None | Some(Format::Dot) => false,
        Some(Format::Json) => true,
        Some(Format::Text) => return Err(Error::Parse("export writes dot or json".into())),
    };
    let body = match what {
        What::M1 | What::M2 => {
            let p = params.p.ok_or_else(|| Error::Parse("--p is required".into()))?;
            let spec = match what {
                What::M1 => build_m1(p, params.z.unwrap_or(p * p))?,
                _ => build_m2(p, params.z.unwrap_or(p))?,
            };
            if json {
                spec.to_json() + "\n"
            } else {
                spec.to_dot()
            }
        }
        What::Ccc => {
            let family = family.ok_or_else(|| Error::Parse("--family is required for ccc".into()))?;
            let spec: FamilySpec = family.parse()?;
            let g = build_group(&spec, cli.max_order)?;
            let (graph, classes) = ccc_graph_with_classes(&g, cli.max_order)?;
            if json {
                let census_match = match family_descriptor(&spec, &g) {
                    Some(desc) => {
                        let labelled = label_types(&g, &desc)?;
                        Some(observed_census(&labelled).rows == predicted_census(&desc)?.rows)
                    }
                    None => None,
                };
                let out = CccJson {
                    family: g.descriptor(),
                    classes: classes
                        .iter()
                        .map(|c| ClassJson { rep: g.label(c.representative), size: c.size, type_label: c.type_label })
                        .collect(),
                    edges: graph.edges(),
                    census_match,
                };
                serde_json::to_string_pretty(&out).expect("graph serializes") + "\n"
            } else {
                graph.to_dot("ccc")
            }
        }
    };
    Ok((body, EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<&str> = std::iter::once("commcent").chain(args.iter().copied()).collect();
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn budget_syntax() {
        assert_eq!(parse_budget("10^7"), Ok(10_000_000));
        assert_eq!(parse_budget("42"), Ok(42));
        assert!(parse_budget("x").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["build", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["export", "m2", "--p", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "thm1", "p=4"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }
}
