//! The `bcl` command line. [`run`] parses arguments, writes one JSON (or
//! facet file) result to `out` and diagnostics to `err`, and returns the exit
//! code: 0 on success or a passing verdict, 1 on a failing verdict, 2 on
//! usage, input or precondition errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificate::{Certificate, Verdict};
use crate::certify::{self, GraphTriple};
use crate::coloring::{self, Coloring};
use crate::complex::Complex;
use crate::constructions::{self, LabeledComplex};
use crate::covers::{self, Cocycle};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{self, AlexanderDuality, CoefficientField, ColorDeletionCheck};
use crate::io::{self, FacetFile};
use crate::iso;
use crate::search::{self, SearchSpec, Target};

#[derive(Parser, Debug)]
#[command(name = "bcl", version, about = "Balanced triangulations: constructions, invariants, certificates and searches")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "BCL_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and write it as a facet file.
    Build(BuildArgs),
    /// f-vector, h-vector and reduced Betti numbers of a facet file.
    Info(InfoArgs),
    /// Evaluate structural predicates.
    Check(CheckArgs),
    /// Build a cyclic cover from a cocycle.
    Cover(CoverArgs),
    /// Run an instance checker and print its certificate.
    Certify(CertifyArgs),
    /// Enumerate balanced closed manifolds with given color class sizes.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuildKind {
    /// Boundary of the d-dimensional cross-polytope.
    CrossPolytope,
    /// Stacked cross-polytopal sphere on --n vertices.
    Stacked,
    /// The 3d-vertex handle construction BM_d.
    Bm,
    /// BM_d assembled by two connected sums and a handle addition.
    BmGlued,
}

#[derive(Args, Debug)]
struct BuildArgs {
    kind: BuildKind,
    /// Number of colors, one more than the dimension.
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InfoArgs {
    input: PathBuf,
    /// Coefficient field: Q or a prime p (also Z/p). Repeatable.
    #[arg(long = "field", value_parser = parse_field)]
    fields: Vec<CoefficientField>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("predicates").required(true).multiple(true)))]
struct CheckArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_field, default_value = "Q")]
    field: CoefficientField,
    #[arg(long, group = "predicates")]
    balanced: bool,
    #[arg(long, group = "predicates")]
    pseudomanifold: bool,
    #[arg(long, group = "predicates")]
    manifold: bool,
    #[arg(long, group = "predicates")]
    sphere: bool,
    #[arg(long, group = "predicates")]
    buchsbaum: bool,
    #[arg(long, group = "predicates")]
    buchsbaum_star: bool,
}

#[derive(Args, Debug)]
struct CoverArgs {
    input: PathBuf,
    /// `handle` or the path of a cocycle file.
    #[arg(long)]
    cocycle: String,
    #[arg(long)]
    t: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Claim {
    AlexanderDuality,
    ColorDeletionInvariance,
    GraphLemma,
    CoverHIdentity,
    CoverBuchsbaumStar,
    LowerBoundInequality,
    LinkEdgeBound,
    BmUniquenessHypotheses,
    ExtraVertexClass,
    FacetCountContradiction,
    RankSelectedBuchsbaumStar,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    claim: Claim,
    #[arg(long)]
    input: Option<PathBuf>,
    /// `handle` or the path of a cocycle file.
    #[arg(long)]
    cocycle: Option<String>,
    /// Sheet count for covers; the t of the weaker lower bound.
    #[arg(long)]
    t: Option<u64>,
    #[arg(long, value_parser = parse_field, default_value = "Q")]
    field: CoefficientField,
    /// Vertex set as a comma list. Repeatable; each value gives one certificate.
    #[arg(long = "w")]
    w: Vec<String>,
    /// Vertex id. Repeatable.
    #[arg(long = "v")]
    v: Vec<usize>,
    /// Dimension parameter. Repeatable.
    #[arg(long = "d")]
    d: Vec<usize>,
    /// Color set as a comma list of 1-based colors.
    #[arg(long, value_delimiter = ',')]
    colors: Vec<usize>,
    /// Graph triple file with lines `s N`, `vertices ..`, `g1 a-b ..`, `g2 ..`, `g3 ..`.
    #[arg(long)]
    graphs: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    class_sizes: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<i64>,
    #[arg(long)]
    require_beta1: bool,
    /// Reduced rational Betti numbers from degree 0, comma separated.
    #[arg(long, value_delimiter = ',')]
    betti: Vec<u64>,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    no_ridge_prune: bool,
    #[arg(long)]
    no_link_prune: bool,
    #[arg(long)]
    no_fix_first_facet: bool,
    #[arg(long)]
    graph_prune: bool,
    /// Directory for `census.json` and one facet file per class.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_field(s: &str) -> std::result::Result<CoefficientField, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_face(s: &str) -> Result<Face> {
    let vs = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::BadParameters(format!("bad vertex {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Face::from_vertices(vs)
}

enum Output {
    Json(Value, i32),
    Text(String, i32),
}

/// Runs the command line on `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
            } else {
                let _ = write!(err, "{}", e.render());
                let _ = writeln!(out, "{}", json!({"error": "usage"}));
            }
            return code;
        }
    };
    let result = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Error::BadParameters(e.to_string())),
        }
    } else {
        dispatch(cli.command)
    };
    match result {
        Ok(Output::Json(v, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            code
        }
        Ok(Output::Text(s, code)) => {
            let _ = write!(out, "{s}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(out, "{}", json!({"error": e.to_string()}));
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Build(a) => build(a),
        Command::Info(a) => info(a),
        Command::Check(a) => check(a),
        Command::Cover(a) => cover(a),
        Command::Certify(a) => certify_cmd(a),
        Command::Search(a) => search_cmd(a),
    }
}

fn read_file(path: &Path) -> Result<FacetFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    io::parse_complex(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes the facet file to `path`, or returns it as the output.
fn emit_complex(c: &Complex, k: Option<&Coloring>, path: Option<&Path>) -> Result<Output> {
    let text = io::write_complex(c, k);
    match path {
        Some(p) => {
            write_file(p, &text)?;
            Ok(Output::Json(json!({"written": p.display().to_string(), "f_vector": c.f_vector().counts()}), 0))
        }
        None => Ok(Output::Text(text, 0)),
    }
}

fn build(a: BuildArgs) -> Result<Output> {
    let lc = match a.kind {
        BuildKind::CrossPolytope => constructions::cross_polytope_boundary(a.d)?,
        BuildKind::Stacked => {
            let n = a.n.ok_or_else(|| Error::BadParameters("stacked needs --n".into()))?;
            constructions::stacked_cross_polytopal_sphere(n, a.d)?
        }
        BuildKind::Bm => constructions::bm(a.d)?,
        BuildKind::BmGlued => constructions::bm_by_gluing(a.d)?,
    };
    emit_complex(&lc.complex, Some(&lc.coloring), a.output.as_deref())
}

fn info(a: InfoArgs) -> Result<Output> {
    let ff = read_file(&a.input)?;
    let c = &ff.complex;
    let fields = if a.fields.is_empty() { vec![CoefficientField::Rationals] } else { a.fields };
    let betti: BTreeMap<String, Value> =
        fields.iter().map(|&f| (f.to_string(), json!(homology::betti(c, f).values()))).collect();
    let h = c.h_vector().ok().map(|h| h.counts().to_vec());
    let f = c.f_vector();
    Ok(Output::Json(
        json!({
            "vertices": c.num_vertices(),
            "dim": c.dim(),
            "facets": c.num_facets(),
            "pure": c.is_pure(),
            "f_vector": f.counts(),
            "h_vector": h,
            "euler_characteristic": f.euler_characteristic(),
            "betti": betti,
            "balanced": ff.coloring.as_ref().map(|k| coloring::validate(c, k)),
        }),
        0,
    ))
}

fn coloring_of(ff: &FacetFile) -> Result<Coloring> {
    match &ff.coloring {
        Some(k) => Ok(k.clone()),
        None => coloring::find_balanced_coloring(&ff.complex)
            .ok_or_else(|| Error::InvalidColoring("no colors line and no balanced coloring exists".into())),
    }
}

fn is_pseudomanifold(c: &Complex) -> bool {
    if !c.is_pure() || c.dim() < 0 {
        return false;
    }
    let k = c.dim() as usize;
    c.faces_of_size(k).iter().all(|&r| c.facets().iter().filter(|f| r.is_subset_of(**f)).count() == 2)
}

fn check(a: CheckArgs) -> Result<Output> {
    let ff = read_file(&a.input)?;
    let c = &ff.complex;
    let f = a.field;
    let mut checks = BTreeMap::new();
    if a.balanced {
        let ok = ff.coloring.as_ref().map_or_else(|| coloring::find_balanced_coloring(c).is_some(), |k| coloring::validate(c, k));
        checks.insert("balanced", ok);
    }
    if a.pseudomanifold {
        checks.insert("pseudomanifold", is_pseudomanifold(c));
    }
    if a.manifold {
        checks.insert("manifold", c.is_pure() && homology::is_homology_manifold(c, f)?);
    }
    if a.sphere {
        checks.insert("sphere", c.is_pure() && homology::is_homology_sphere(c, f)?);
    }
    if a.buchsbaum {
        checks.insert("buchsbaum", c.is_pure() && homology::is_buchsbaum(c, f)?);
    }
    if a.buchsbaum_star {
        let ok = match homology::is_buchsbaum_star(c, f) {
            Ok(b) => b,
            Err(Error::NotBuchsbaum(_)) | Err(Error::NotPure) => false,
            Err(e) => return Err(e),
        };
        checks.insert("buchsbaum_star", ok);
    }
    let pass = checks.values().all(|&b| b);
    Ok(Output::Json(json!({"field": f.to_string(), "checks": checks, "pass": pass}), if pass { 0 } else { 1 }))
}

/// The handle cocycle of `BM_d`, carried to `c` along an isomorphism.
fn transported_handle_cocycle(c: &Complex, t: u64) -> Result<Cocycle> {
    let d = (c.dim() + 1).max(0) as usize;
    let b: LabeledComplex = constructions::bm(d)?;
    let phi = iso::find_isomorphism(&b.complex, c)
        .ok_or_else(|| Error::BadParameters(format!("the handle cocycle needs a complex isomorphic to BM_{d}")))?;
    let omega = covers::handle_cocycle(&b, t)?;
    let values = omega
        .values()
        .into_iter()
        .map(|((u, v), x)| {
            let (pu, pv) = (phi[&u], phi[&v]);
            if pu < pv {
                ((pu, pv), x)
            } else {
                ((pv, pu), -x)
            }
        })
        .collect();
    Cocycle::new(t, &values)
}

fn load_cocycle(spec: &str, c: &Complex, t: u64) -> Result<Cocycle> {
    if spec == "handle" {
        return transported_handle_cocycle(c, t);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    let omega = Cocycle::new(t, &io::parse_cocycle(&text)?)?;
    omega.validate(c)?;
    Ok(omega)
}

fn cover(a: CoverArgs) -> Result<Output> {
    let ff = read_file(&a.input)?;
    let omega = load_cocycle(&a.cocycle, &ff.complex, a.t)?;
    let cov = covers::cyclic_cover(&ff.complex, &omega)?;
    let k = ff.coloring.as_ref().map(|k| covers::lift_coloring(k, ff.complex.n(), a.t));
    emit_complex(&cov, k.as_ref(), a.output.as_deref())
}

fn need<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::BadParameters(format!("this claim needs {what}")))
}

fn nonempty<T: Clone>(xs: &[T], what: &str) -> Result<Vec<T>> {
    if xs.is_empty() {
        Err(Error::BadParameters(format!("this claim needs {what}")))
    } else {
        Ok(xs.to_vec())
    }
}

/// Parses a graph triple file.
pub fn parse_graph_triple(text: &str) -> Result<GraphTriple> {
    let mut s = None;
    let mut u = None;
    let mut g: [Vec<(usize, usize)>; 3] = Default::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut toks = line.split_whitespace();
        let Some(key) = toks.next() else { continue };
        let bad = |msg: String| Error::Parse { line: i + 1, msg };
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad(format!("bad integer {t:?}")));
        match key {
            "s" => s = Some(num(toks.next().ok_or_else(|| bad("missing s".into()))?)?),
            "vertices" => u = Some(Face::from_vertices(toks.map(num).collect::<Result<Vec<_>>>()?)?),
            "g1" | "g2" | "g3" => {
                let k = key[1..].parse::<usize>().unwrap() - 1;
                for e in toks {
                    let (a, b) = e.split_once('-').ok_or_else(|| bad(format!("bad edge {e:?}")))?;
                    g[k].push((num(a)?, num(b)?));
                }
            }
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    let s = s.ok_or(Error::Parse { line: 0, msg: "missing s line".into() })?;
    let u = u.ok_or(Error::Parse { line: 0, msg: "missing vertices line".into() })?;
    GraphTriple::new(u, [&g[0], &g[1], &g[2]], s)
}

fn certify_cmd(a: CertifyArgs) -> Result<Output> {
    let certs: Vec<Certificate> = match a.claim {
        Claim::FacetCountContradiction => {
            nonempty(&a.d, "--d")?.par_iter().map(|&d| certify::facet_count_contradiction(d)).collect::<Result<_>>()?
        }
        Claim::GraphLemma => {
            let path = need(a.graphs.as_ref(), "--graphs")?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            vec![certify::graph_lemma_check(&parse_graph_triple(&text)?)?]
        }
        claim => {
            let ff = read_file(need(a.input.as_ref(), "--input")?)?;
            let c = &ff.complex;
            match claim {
                Claim::AlexanderDuality => {
                    let ad = AlexanderDuality::new(c)?;
                    let ws = nonempty(&a.w, "--w")?.iter().map(|w| parse_face(w)).collect::<Result<Vec<_>>>()?;
                    ws.par_iter().map(|&w| ad.check(w)).collect()
                }
                Claim::ColorDeletionInvariance => {
                    let k = coloring_of(&ff)?;
                    let cd = ColorDeletionCheck::new(c, &k)?;
                    let ws = nonempty(&a.w, "--w")?.iter().map(|w| parse_face(w)).collect::<Result<Vec<_>>>()?;
                    ws.par_iter().map(|&w| cd.check(w)).collect::<Result<_>>()?
                }
                Claim::CoverHIdentity => {
                    let t = need(a.t, "--t")?;
                    let omega = load_cocycle(need(a.cocycle.as_deref(), "--cocycle")?, c, t)?;
                    vec![covers::cover_h_identity_check(c, &omega)?]
                }
                Claim::CoverBuchsbaumStar => {
                    let t = need(a.t, "--t")?;
                    let omega = load_cocycle(need(a.cocycle.as_deref(), "--cocycle")?, c, t)?;
                    vec![covers::cover_buchsbaum_star_check(c, &omega, a.field)?]
                }
                Claim::LowerBoundInequality => vec![certify::lbt_inequality_check(c, &coloring_of(&ff)?, a.t)?],
                Claim::LinkEdgeBound => {
                    let k = coloring_of(&ff)?;
                    let vs = if a.v.is_empty() { c.vertex_set().to_vec() } else { a.v.clone() };
                    vs.par_iter().map(|&v| certify::balanced_link_lbt_check(c, &k, v)).collect::<Result<_>>()?
                }
                Claim::BmUniquenessHypotheses => vec![certify::bm_uniqueness_hypotheses(c, &coloring_of(&ff)?)?],
                Claim::ExtraVertexClass => vec![certify::extra_vertex_class_check(c, &coloring_of(&ff)?)?],
                Claim::RankSelectedBuchsbaumStar => {
                    let s = coloring::color_set(&nonempty(&a.colors, "--colors")?)?;
                    vec![certify::rank_selected_buchsbaum_star_check(c, &coloring_of(&ff)?, s, a.field)?]
                }
                Claim::FacetCountContradiction | Claim::GraphLemma => unreachable!(),
            }
        }
    };
    let code = if certs.iter().any(|c| c.verdict == Verdict::Fail) { 1 } else { 0 };
    let value = if certs.len() == 1 {
        serde_json::to_value(&certs[0]).expect("json")
    } else {
        serde_json::to_value(&certs).expect("json")
    };
    Ok(Output::Json(value, code))
}

fn search_cmd(a: SearchArgs) -> Result<Output> {
    let target = Target {
        manifold: true,
        connected: true,
        chi: a.chi,
        require_beta1: a.require_beta1,
        betti: (!a.betti.is_empty()).then_some(a.betti),
    };
    let mut spec = SearchSpec::new(a.d, a.class_sizes, target)?;
    spec.limits.max_nodes = a.budget_nodes;
    spec.limits.max_seconds = a.budget_seconds;
    spec.prunes.ridge_degree = !a.no_ridge_prune;
    spec.prunes.link_cycles = !a.no_link_prune;
    spec.prunes.fix_first_facet = !a.no_fix_first_facet;
    spec.prunes.graph_completeness = a.graph_prune;
    let census = search::enumerate(&spec)?;
    if let Some(dir) = &a.output {
        search::write_census_dir(dir, &census, &spec).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    let verified = search::verify_census(&census, &spec);
    let mut report = search::census_json(&census, &spec);
    report["verification"] = serde_json::to_value(&verified).expect("json");
    let code = if census.exhausted && verified.passed() { 0 } else { 1 };
    Ok(Output::Json(report, code))
}
