//! Command-line front end.
//!
//! `siltgeo <algebra.toml> enumerate|interval|verify-paper [options]`, or
//! `siltgeo verify-paper` with the built-in inputs.

use crate::algebra::{from_quiver, AlgRef, AlgebraError, Quiver};
use crate::cpx2::{self, CpxError};
use crate::interval::{IntervalContext, IntervalError};
use crate::qlinalg::{q, to_i64_vec, Q};
use crate::reduction::RedError;
use crate::repmod::share;
use crate::siltfan::{self, SiltError};
use anyhow::Context;
use clap::Parser;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

pub const DEFAULT_CAP: usize = 10000;

pub const A2_TOML: &str = include_str!("../data/a2.toml");
pub const A4_TOML: &str = include_str!("../data/a4.toml");
pub const A4_U_TOML: &str = include_str!("../data/a4_u.toml");
pub const GOLDEN_TOML: &str = include_str!("../data/golden.toml");

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFF: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "siltgeo", version, about = "Interval neighborhoods of 2-term presilting complexes")]
pub struct Args {
    /// algebra file (or the command `verify-paper` alone)
    pub first: String,
    /// enumerate | interval | verify-paper
    pub command: Option<String>,
    /// presilting complexes (`[[complex]]` tables)
    #[arg(long = "U")]
    pub u: Option<PathBuf>,
    /// enumeration cap; SILTGEO_CAP sets the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// maximal path length when building the algebra
    #[arg(long, default_value_t = 64)]
    pub path_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// slice plane `a1,..,an=c`
    #[arg(long, default_value = "2,1,1,0=1")]
    pub plane: String,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Enumerate,
    Interval,
    VerifyPaper,
}

/// Resolved job settings.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub algebra: Option<PathBuf>,
    pub command: Command,
    pub complexes: Option<PathBuf>,
    pub cap: usize,
    pub path_cap: usize,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub plane: (Vec<Q>, Q),
    pub verbose: u8,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(e: impl Into<anyhow::Error>) -> Failure {
        Failure { code: EXIT_INPUT, error: e.into() }
    }
}

type Res<T> = Result<T, Failure>;

fn classify(e: anyhow::Error) -> Failure {
    let capability = e.chain().any(|c| {
        matches!(c.downcast_ref::<IntervalError>(), Some(IntervalError::IncompleteReduction | IntervalError::NotLocated))
            || matches!(c.downcast_ref::<SiltError>(), Some(SiltError::IncompleteAtlas | SiltError::NotLocated))
            || matches!(c.downcast_ref::<AlgebraError>(), Some(AlgebraError::NonSplitSemisimple | AlgebraError::InfiniteDimensional(_)))
            || matches!(c.downcast_ref::<CpxError>(), Some(CpxError::CompletionNotVerified(_)))
            || matches!(c.downcast_ref::<RedError>(), Some(RedError::CertificationFailed(_)))
    });
    Failure { code: if capability { EXIT_CAPABILITY } else { EXIT_INPUT }, error: e }
}

pub fn parse_plane(text: &str) -> anyhow::Result<(Vec<Q>, Q)> {
    let (lhs, rhs) = text.split_once('=').context("plane must look like `a1,...,an=c`")?;
    let coeffs = lhs.split(',').map(|t| parse_q(t.trim())).collect::<anyhow::Result<Vec<Q>>>()?;
    Ok((coeffs, parse_q(rhs.trim())?))
}

fn parse_q(t: &str) -> anyhow::Result<Q> {
    match t.split_once('/') {
        Some((a, b)) => Ok(Q::new(a.trim().parse()?, b.trim().parse()?)),
        None => Ok(Q::from_integer(t.parse()?)),
    }
}

impl JobConfig {
    pub fn from_args(args: Args, env_cap: Option<String>) -> anyhow::Result<JobConfig> {
        let (algebra, command) = match (args.first.as_str(), args.command.as_deref()) {
            ("verify-paper", None) => (None, Command::VerifyPaper),
            (path, Some(cmd)) => {
                let c = match cmd {
                    "enumerate" => Command::Enumerate,
                    "interval" => Command::Interval,
                    "verify-paper" => Command::VerifyPaper,
                    other => anyhow::bail!("unknown command `{other}`"),
                };
                (Some(PathBuf::from(path)), c)
            }
            (other, None) => anyhow::bail!("missing command after `{other}`"),
        };
        let default_cap = match env_cap {
            Some(v) => v.trim().parse().context("SILTGEO_CAP must be a positive integer")?,
            None => DEFAULT_CAP,
        };
        let cap = args.cap.unwrap_or(default_cap);
        if cap == 0 || args.path_cap == 0 {
            anyhow::bail!("caps must be positive");
        }
        if command == Command::Interval && args.u.is_none() {
            anyhow::bail!("`interval` needs --U <complexes.toml>");
        }
        for p in algebra.iter().chain(args.u.iter()) {
            if command != Command::VerifyPaper && !p.exists() {
                anyhow::bail!("no such file: {}", p.display());
            }
        }
        siltfan::set_threads(args.threads);
        Ok(JobConfig {
            algebra,
            command,
            complexes: args.u,
            cap,
            path_cap: args.path_cap,
            out: args.out,
            dot: args.dot,
            svg: args.svg,
            plane: parse_plane(&args.plane)?,
            verbose: args.verbose,
        })
    }
}

pub fn algebra_from_toml(text: &str, path_cap: usize) -> anyhow::Result<AlgRef> {
    let quiver = Quiver::from_toml(text)?;
    Ok(share(from_quiver(&quiver, path_cap)?))
}

fn read(path: &PathBuf) -> Res<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::input)
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Res<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(Failure::input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_enumerate(cfg: &JobConfig) -> Res<()> {
    let text = read(cfg.algebra.as_ref().expect("algebra path"))?;
    let alg = algebra_from_toml(&text, cfg.path_cap).map_err(classify)?;
    let atlas = siltfan::enumerate(&alg, cfg.cap).map_err(|e| classify(e.into()))?;
    if !atlas.complete {
        eprintln!("warning: enumeration stopped at the cap of {} siltings; atlas is incomplete", cfg.cap);
    }
    if cfg.verbose > 0 {
        eprintln!("{} siltings, {} arrows", atlas.len(), atlas.arrows.len());
    }
    write_or_print(&cfg.out, &to_json(&siltfan::atlas_json(&atlas)))?;
    if let Some(p) = &cfg.dot {
        write_or_print(&Some(p.clone()), &siltfan::atlas_dot(&atlas))?;
    }
    Ok(())
}

/// Sample parameters ξ for the ρ table: nonzero vectors with entries in {-1, 0, 1}.
pub fn rho_samples(k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..k)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        if v.iter().any(|x| *x != 0) {
            out.push(v);
        }
    }
    out.sort();
    out
}

pub fn cmd_interval(cfg: &JobConfig) -> Res<()> {
    let text = read(cfg.algebra.as_ref().expect("algebra path"))?;
    let alg = algebra_from_toml(&text, cfg.path_cap).map_err(classify)?;
    let ctext = read(cfg.complexes.as_ref().expect("complex path"))?;
    let u = cpx2::complexes_from_toml(&alg, &ctext).map_err(Failure::input)?;
    let total = cpx2::sum_of(&alg, &u);
    if !u.is_empty() && !cpx2::is_presilting(&total).map_err(Failure::input)? {
        return Err(Failure::input(CpxError::NotPresilting));
    }
    let ctx = IntervalContext::new(&alg, &u, cfg.cap).map_err(|e| classify(e.into()))?;
    if cfg.verbose > 0 {
        eprintln!("D(U): {} facets, {} siltings contain U", ctx.facets.len(), ctx.constrained.len());
    }
    let report = ctx.report(&rho_samples(ctx.n() - ctx.m())).map_err(|e| classify(e.into()))?;
    write_or_print(&cfg.out, &to_json(&report))?;
    if let Some(p) = &cfg.svg {
        let (plane, rhs) = &cfg.plane;
        if plane.len() != ctx.n() {
            return Err(Failure::input(anyhow::anyhow!("slice plane needs {} coefficients", ctx.n())));
        }
        write_or_print(&Some(p.clone()), &ctx.svg(plane, rhs))?;
    }
    Ok(())
}

#[derive(Deserialize)]
struct Golden {
    pentagon: PentagonGolden,
    a4: A4Golden,
}

#[derive(Deserialize)]
struct PentagonGolden {
    vertices: usize,
    paths: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
struct FacetGolden {
    i: usize,
    eps: String,
    label: Vec<i64>,
}

#[derive(Deserialize)]
struct RhoGolden {
    xi: Vec<i64>,
    rho: Vec<i64>,
}

#[derive(Deserialize)]
struct SigmaGolden {
    rays: Vec<Vec<i64>>,
    maximal: usize,
}

#[derive(Deserialize)]
struct A4Golden {
    s_gvectors: Vec<Vec<i64>>,
    t_gvectors: Vec<Vec<i64>>,
    smc_s: Vec<Vec<i64>>,
    smc_t: Vec<Vec<i64>>,
    b_dim: usize,
    b_arrows: Vec<(String, String)>,
    m_dimvecs: Vec<Vec<i64>>,
    rays: Vec<Vec<i64>>,
    census: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
    facet: Vec<FacetGolden>,
    rho: Vec<RhoGolden>,
    sigma_2: SigmaGolden,
}

/// Outcome of the embedded verification: one line per check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl VerifyReport {
    fn check<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, want: T, got: T) {
        if want == got {
            self.lines.push(format!("PASS {name}"));
        } else {
            self.failures += 1;
            self.lines.push(format!("FAIL {name}: expected {want:?}, got {got:?}"));
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push_str(&format!("\n{} checks, {} failed\n", self.lines.len(), self.failures));
        s
    }
}

/// Pentagon label paths from A to A[1] through left mutations, sorted.
pub fn label_paths(atlas: &siltfan::SiltingAtlas) -> Vec<Vec<Vec<i64>>> {
    let Some(start) = siltfan::regular_vertex(atlas) else { return Vec::new() };
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Vec<i64>>)> = vec![(start, Vec::new())];
    while let Some((v, labels)) = stack.pop() {
        let next: Vec<&siltfan::ExchangeArrow> = atlas.arrows.iter().filter(|a| a.src == v).collect();
        if next.is_empty() {
            out.push(labels);
            continue;
        }
        for a in next {
            let mut l = labels.clone();
            l.push(a.label.dimvec());
            stack.push((a.dst, l));
        }
    }
    out.sort();
    out
}

pub fn verify_paper(golden_text: &str, cap: usize) -> anyhow::Result<VerifyReport> {
    let golden: Golden = toml::from_str(golden_text).context("parsing reference data")?;
    let mut r = VerifyReport { lines: Vec::new(), failures: 0 };

    let a2 = algebra_from_toml(A2_TOML, 16)?;
    let atlas = siltfan::enumerate(&a2, cap)?;
    r.check("pentagon: number of siltings", golden.pentagon.vertices, atlas.len());
    r.check("pentagon: complete", true, atlas.complete);
    r.check("pentagon: label paths", golden.pentagon.paths, label_paths(&atlas));

    let a4 = algebra_from_toml(A4_TOML, 16)?;
    let u = cpx2::complexes_from_toml(&a4, A4_U_TOML)?;
    let ctx = IntervalContext::new(&a4, &u, cap)?;
    let g = golden.a4;
    let gv = |xs: &[cpx2::TwoTerm]| xs.iter().map(|x| x.gvector()).collect::<Vec<_>>();
    r.check("a4: maximal completion", g.s_gvectors, gv(ctx.red.s()));
    r.check("a4: minimal completion", g.t_gvectors, gv(ctx.red.t()));
    r.check("a4: smc of S", g.smc_s, ctx.red.x.iter().map(|p| p.signed_dimvec()).collect());
    r.check("a4: smc of T", g.smc_t, ctx.red.y.iter().map(|p| p.signed_dimvec()).collect());
    r.check("a4: dim B", g.b_dim, ctx.red.b.dim());
    let arrows: Option<Vec<(String, String)>> =
        ctx.red.b_quiver().map(|qv| qv.arrows.iter().map(|a| (a.from.clone(), a.to.clone())).collect());
    r.check("a4: B is a path algebra with arrows", Some(g.b_arrows), arrows);
    r.check("a4: dimension vectors of M_i", g.m_dimvecs, ctx.red.m_modules.iter().map(|m| m.dimvec()).collect());
    let mut rays: Vec<Vec<i64>> = ctx.dcu.rays().iter().map(|x| to_i64_vec(x)).collect();
    rays.sort();
    r.check("a4: rays of D(U)", g.rays, rays);
    let want_facets: Vec<(usize, bool, Vec<i64>)> = g.facet.iter().map(|f| (f.i, f.eps == "+", f.label.clone())).collect();
    let got_facets: Vec<(usize, bool, Vec<i64>)> =
        ctx.facets.iter().map(|f| (f.i + 1, f.plus, f.label.dimvec())).collect();
    r.check("a4: facet labels", want_facets, got_facets);
    let census: Vec<(Vec<usize>, Vec<(usize, usize)>)> = ctx
        .face_census()
        .into_iter()
        .map(|(set, c)| (set.iter().map(|i| i + 1).collect(), c.into_iter().collect()))
        .collect();
    let mut want_census = g.census;
    want_census.sort();
    let mut census = census;
    census.sort();
    r.check("a4: face census by I and dimension", want_census, census);
    r.check("a4: dim F = (m - #I) + dim pi(F)", true, ctx.dimension_formula_holds());
    for row in &g.rho {
        let xi: Vec<Q> = row.xi.iter().map(|x| q(*x)).collect();
        let got = ctx.rho(&xi).map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).ok();
        let want = Some(row.rho.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        r.check(&format!("a4: rho({:?})", row.xi), want, got);
    }
    let mut fans = BTreeMap::new();
    for set in ctx.subsets() {
        let geo = ctx.sigma_i(&set)?;
        let mtf = ctx.sigma_mi(&set)?;
        let name: Vec<usize> = set.iter().map(|i| i + 1).collect();
        r.check(&format!("a4: Sigma_{name:?} = Sigma(M_{name:?})"), true, geo == mtf);
        r.check(&format!("a4: Sigma_{name:?} is a complete fan"), true, geo.check().is_complete);
        fans.insert(set, geo);
    }
    let s2 = &fans[&vec![1]];
    let mut rays2: Vec<Vec<i64>> =
        s2.cones().iter().filter(|c| c.dim() == 1).map(|c| to_i64_vec(&c.rays()[0])).collect();
    rays2.sort();
    r.check("a4: rays of Sigma_[2]", g.sigma_2.rays, rays2);
    r.check("a4: maximal cones of Sigma_[2]", g.sigma_2.maximal, s2.maximal().len());
    let refined = fans[&vec![0]].common_refinement(&fans[&vec![1]]);
    r.check("a4: Sigma_[1, 2] refines Sigma_[1] and Sigma_[2]", true, refined == fans[&vec![0, 1]]);
    Ok(r)
}

pub fn cmd_verify_paper(cfg: &JobConfig) -> Res<bool> {
    let report = verify_paper(GOLDEN_TOML, cfg.cap).map_err(classify)?;
    write_or_print(&cfg.out, &report.text())?;
    Ok(report.failures == 0)
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let cfg = match JobConfig::from_args(args, std::env::var("SILTGEO_CAP").ok()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_INPUT;
        }
    };
    let outcome = match cfg.command {
        Command::Enumerate => cmd_enumerate(&cfg).map(|_| true),
        Command::Interval => cmd_interval(&cfg).map(|_| true),
        Command::VerifyPaper => cmd_verify_paper(&cfg),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_DIFF,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            if f.code == EXIT_CAPABILITY {
                eprintln!("hint: raise --cap or SILTGEO_CAP if the enumeration was cut short");
            }
            f.code
        }
    }
}
