//! Command-line front end. [`run`] parses arguments, dispatches and returns the exit code.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 `NO_GKM`, 3 `UNKNOWN_TREE`,
//! 4 precondition failure, 5 internal invariant breach.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cohomology::{kt_basis, variable_count, variable_names, verify_kt_class, KtClass};
use crate::fixed::{
    enumerate_fixed_points, evaluate, flag_shape, initial_parameters, permutation_of_fixed_point,
    poincare_from_dimensions, render_permutation, FixedPoint,
};
use crate::fixtures;
use crate::grading::{alignment_for, AlignedBasis, check_alignment, is_constructible, Alignment, GradingError};
use crate::instance::Instance;
use crate::moment::{build_moment_graph, enumerate_mutations, hall_strata, MomentGraph};
use crate::oracles::brute::brute_force_fixed_points;
use crate::oracles::finite_field::{count_points_fq, DEFAULT_BUDGET};
use crate::oracles::hom::hom_dim_triples;
use crate::poly::Poly;
use crate::reduction::{classify_gkm, ReductionError, VerdictTag};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_GKM: i32 = 2;
pub const EXIT_UNKNOWN_TREE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "quiver-gkm", version, about = "Fixed points, cells, moment graphs and KT classes of quiver Grassmannians")]
struct Cli {
    /// Allow forests with tree components (component-wise grading, results unproven).
    #[arg(long, global = true)]
    experimental: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance document and print its data.
    Validate { instance: String },
    /// Reduce the instance and decide its GKM status.
    Classify { instance: String },
    /// Print the cocharacter and weight table, or check a user grading.
    Grading {
        instance: String,
        /// JSON file `{"weights": {"<basis id>": <int>, ...}}` to check.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// List torus fixed points with fibers and cell dimensions.
    FixedPoints { instance: String },
    /// Poincaré polynomial coefficients, or its value at `--at`.
    Poincare {
        instance: String,
        #[arg(long)]
        at: Option<u64>,
    },
    /// Build the moment graph; write DOT and/or plain data files.
    MomentGraph {
        instance: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Knutson–Tao basis; write it with `--out` or re-check a stored one with `--verify`.
    KtBasis {
        instance: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Tangent space dimension at every fixed point.
    Tangent { instance: String },
    /// Group fixed points by the isomorphism types of sub and quotient.
    HallStrata { instance: String },
    /// Brute-force cross checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Write a built-in instance document.
    Fixture {
        /// fl_N, x3124, a2_p1, no_gkm_sink, no_gkm_source or point.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Count points over the prime field with `p` elements.
    CountPoints {
        instance: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// `dim Hom(U, M/U)` by triple enumeration at every fixed point.
    HomDim { instance: String },
    /// Fixed points by filtering all basis subsets.
    FixedPoints { instance: String },
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn fail<T>(code: i32, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure { code, message: message.into() })
}

type Outcome = Result<(String, i32), Failure>;

/// Runs the tool on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(spec: &str) -> Result<Instance, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Instance::load(path).map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() });
    }
    match fixtures::by_name(spec) {
        Some(inst) => Ok(inst),
        None => fail(EXIT_USAGE, format!("`{spec}` is neither a readable file nor a fixture name")),
    }
}

fn feasible(inst: &Instance) -> Result<(), Failure> {
    if let Some(v) = inst.infeasible_vertex() {
        return fail(
            EXIT_PRECONDITION,
            format!("e exceeds dim M at vertex `{}`: the Grassmannian is empty", inst.quiver.vertex_label(v)),
        );
    }
    Ok(())
}

fn alignment(inst: &Instance, experimental: bool) -> Result<Alignment, Failure> {
    alignment_for(inst, experimental).map_err(|e| match e {
        GradingError::NotStraight { .. } => Failure {
            code: EXIT_PRECONDITION,
            message: format!("{e}; rerun with --experimental for tree components"),
        },
        other => Failure { code: EXIT_PRECONDITION, message: other.to_string() },
    })
}

fn graph(inst: &Instance, align: &Alignment) -> Result<MomentGraph, Failure> {
    build_moment_graph(&inst.forest, align, &inst.dims)
        .map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("moment graph: {e}") })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure { code: EXIT_USAGE, message: format!("cannot write `{}`: {e}", path.display()) })
}

fn experimental_note(align: &Alignment, text: &mut String) {
    if align.experimental {
        text.push_str("experimental: forest has tree components; results are not covered by the straight case\n");
    }
}

/// Point label: the permutation for flag instances, else the fiber index sets.
fn point_label(inst: &Instance, basis: &AlignedBasis, u: &FixedPoint) -> String {
    if flag_shape(inst).is_ok() {
        if let Ok(p) = permutation_of_fixed_point(inst, u) {
            return render_permutation(&p);
        }
    }
    render_fibers(&u.fibers(basis))
}

fn render_fibers(fibers: &[Vec<usize>]) -> String {
    fibers
        .iter()
        .map(|k| format!("{{{}}}", k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("|")
}

fn dispatch(cli: &Cli) -> Outcome {
    let exp = cli.experimental;
    match &cli.command {
        Command::Validate { instance } => cmd_validate(&load(instance)?),
        Command::Classify { instance } => cmd_classify(&load(instance)?),
        Command::Grading { instance, check } => cmd_grading(&load(instance)?, exp, check.as_deref()),
        Command::FixedPoints { instance } => cmd_fixed_points(&load(instance)?, exp),
        Command::Poincare { instance, at } => cmd_poincare(&load(instance)?, exp, *at),
        Command::MomentGraph { instance, dot, data } => cmd_moment_graph(&load(instance)?, exp, dot.as_deref(), data.as_deref()),
        Command::KtBasis { instance, out, verify } => cmd_kt_basis(&load(instance)?, exp, out.as_deref(), verify.as_deref()),
        Command::Tangent { instance } => cmd_tangent(&load(instance)?, exp),
        Command::HallStrata { instance } => cmd_hall_strata(&load(instance)?, exp),
        Command::Oracle { command } => match command {
            OracleCommand::CountPoints { instance, p, budget } => {
                let inst = load(instance)?;
                let r = count_points_fq(&inst.forest, &inst.dims, *p, *budget)
                    .map_err(|e| Failure { code: EXIT_PRECONDITION, message: e.to_string() })?;
                Ok((format!("p {}\ncount {}\nenumerated {}\n", r.p, r.count, r.enumerated), EXIT_OK))
            }
            OracleCommand::HomDim { instance } => {
                let inst = load(instance)?;
                let mut text = String::from("point\thom_dim\n");
                for (x, u) in enumerate_fixed_points(&inst.forest, &inst.dims).iter().enumerate() {
                    let h = hom_dim_triples(&inst.forest, u)
                        .map_err(|e| Failure { code: EXIT_PRECONDITION, message: e.to_string() })?;
                    let _ = writeln!(text, "{x}\t{h}");
                }
                Ok((text, EXIT_OK))
            }
            OracleCommand::FixedPoints { instance } => {
                let inst = load(instance)?;
                let points = brute_force_fixed_points(&inst.forest, &inst.dims)
                    .map_err(|e| Failure { code: EXIT_PRECONDITION, message: e.to_string() })?;
                let mut text = String::from("point\tselected\n");
                for (x, u) in points.iter().enumerate() {
                    let _ = writeln!(text, "{x}\t{}", u.ids(&inst.forest).join(","));
                }
                Ok((text, EXIT_OK))
            }
        },
        Command::Fixture { name, out } => {
            let inst = fixtures::by_name(name)
                .ok_or_else(|| Failure { code: EXIT_USAGE, message: format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", ")) })?;
            let json = inst.to_json_string();
            match out {
                Some(path) => {
                    write_file(path, &json)?;
                    Ok((format!("wrote {}\n", path.display()), EXIT_OK))
                }
                None => Ok((json, EXIT_OK)),
            }
        }
    }
}

fn cmd_validate(inst: &Instance) -> Outcome {
    let mut text = String::new();
    let _ = writeln!(text, "quiver: {}", inst.quiver);
    let _ = writeln!(text, "components: {}", inst.forest.component_count());
    let _ = writeln!(text, "straight: {}", inst.forest.is_straight());
    let _ = writeln!(text, "dim M: {}", inst.ambient_dims().render());
    let _ = writeln!(text, "e: {}", inst.dims.render());
    Ok((text, EXIT_OK))
}

fn cmd_classify(inst: &Instance) -> Outcome {
    let verdict = classify_gkm(inst).map_err(|e| match e {
        ReductionError::InfeasibleDimension { .. } => Failure { code: EXIT_PRECONDITION, message: e.to_string() },
        other => Failure { code: EXIT_INTERNAL, message: other.to_string() },
    })?;
    let mut text = String::new();
    let _ = writeln!(text, "verdict: {}", verdict.tag);
    if let Some(w) = &verdict.witness {
        let _ = writeln!(text, "witness: {w}");
    }
    let r = &verdict.reduced;
    let _ = writeln!(text, "reduced quiver: {}", r.quiver);
    let _ = writeln!(text, "reduced e: {}", r.dims.render());
    let _ = writeln!(text, "reduced dim M: {}", r.ambient_dims().render());
    let _ = writeln!(text, "trace: {} step(s)", verdict.trace.len());
    for step in &verdict.trace {
        let _ = writeln!(text, "  {step}");
    }
    let code = match verdict.tag {
        VerdictTag::GkmStraight | VerdictTag::PointOrEmpty => EXIT_OK,
        VerdictTag::NoGkm => EXIT_NO_GKM,
        VerdictTag::UnknownTree => EXIT_UNKNOWN_TREE,
    };
    Ok((text, code))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingDoc {
    weights: BTreeMap<String, i64>,
}

fn cmd_grading(inst: &Instance, exp: bool, check: Option<&Path>) -> Outcome {
    let align = alignment(inst, exp)?;
    let f = &inst.forest;
    let q = &inst.quiver;
    let mut text = String::new();
    experimental_note(&align, &mut text);
    if let Some(path) = check {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("cannot read `{}`: {e}", path.display()) })?;
        let doc: GradingDoc = serde_json::from_str(&raw).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("parse error at line {}, column {}: {e}", e.line(), e.column()),
        })?;
        let wt = (0..f.len())
            .map(|b| {
                doc.weights.get(f.id(b)).copied().ok_or_else(|| Failure {
                    code: EXIT_USAGE,
                    message: format!("no weight for basis vector `{}`", f.id(b)),
                })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        if let Some(extra) = doc.weights.keys().find(|k| f.basis_index(k).is_none()) {
            return fail(EXIT_USAGE, format!("weight given for unknown basis vector `{extra}`"));
        }
        let mut ok = true;
        match is_constructible(&wt, f) {
            Ok(edge) => {
                let parts: Vec<String> = edge
                    .iter()
                    .enumerate()
                    .filter_map(|(a, w)| w.map(|w| format!("{}={w}", q.arrow(a).id)))
                    .collect();
                let _ = writeln!(text, "constructible: yes ({})", parts.join(", "));
            }
            Err(conflicts) => {
                ok = false;
                for c in conflicts {
                    let d: Vec<String> = c.differences.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(text, "constructible: no, arrow {} has differences {{{}}}", q.arrow(c.arrow).id, d.join(","));
                }
            }
        }
        let report = check_alignment(f, &align.basis, &wt);
        if report.ag1.is_empty() {
            let _ = writeln!(text, "attractive for the aligned fiber order: yes");
        } else {
            ok = false;
            for (i, lo, hi) in &report.ag1 {
                let _ = writeln!(
                    text,
                    "attractive: no, over {} weight({}) <= weight({})",
                    q.vertex_label(*i),
                    f.id(*hi),
                    f.id(*lo)
                );
            }
        }
        let _ = writeln!(text, "result: {}", if ok { "pass" } else { "fail" });
        return Ok((text, if ok { EXIT_OK } else { EXIT_PRECONDITION }));
    }
    let supported: Vec<&str> = align.basis.supported.iter().map(|&a| q.arrow(a).id.as_str()).collect();
    let _ = writeln!(text, "cocharacter: {}", align.chi);
    let _ = writeln!(text, "supported arrows: [{}]", supported.join(", "));
    let report = check_alignment(f, &align.basis, &align.weights);
    let status = |v: bool| if v { "ok" } else { "violated" };
    let _ = writeln!(
        text,
        "AG1 {} AG2 {} SA1 {} SA2 {}",
        status(report.ag1.is_empty()),
        status(report.ag2.is_empty()),
        status(report.sa1.is_empty()),
        status(report.sa2.is_empty())
    );
    for c in &align.sa1_conflicts {
        let _ = writeln!(text, "note: {c}");
    }
    let _ = writeln!(text, "basis\tvertex\tcomponent\tfiber_index\tweight");
    for b in 0..f.len() {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}",
            f.id(b),
            q.vertex_label(f.over(b)),
            f.component_of(b) + 1,
            align.basis.position[b] + 1,
            align.weights[b]
        );
    }
    Ok((text, EXIT_OK))
}

fn cmd_fixed_points(inst: &Instance, exp: bool) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let f = &inst.forest;
    let flag = flag_shape(inst).is_ok();
    let mut text = String::new();
    experimental_note(&align, &mut text);
    let _ = writeln!(text, "point\tfibers\tdim\t{}selected", if flag { "permutation\t" } else { "" });
    for (x, u) in enumerate_fixed_points(f, &inst.dims).iter().enumerate() {
        let cell = initial_parameters(f, &align.basis, u);
        let perm = if flag {
            format!("{}\t", render_permutation(&permutation_of_fixed_point(inst, u).expect("flag shape")))
        } else {
            String::new()
        };
        let _ = writeln!(text, "{x}\t{}\t{}\t{perm}{}", render_fibers(&u.fibers(&align.basis)), cell.dimension, u.ids(f).join(","));
    }
    Ok((text, EXIT_OK))
}

fn poincare(inst: &Instance, align: &Alignment) -> Vec<u64> {
    let f = &inst.forest;
    poincare_from_dimensions(enumerate_fixed_points(f, &inst.dims).iter().map(|u| initial_parameters(f, &align.basis, u).dimension))
}

fn cmd_poincare(inst: &Instance, exp: bool, at: Option<u64>) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let coeffs = poincare(inst, &align);
    let mut text = String::new();
    experimental_note(&align, &mut text);
    match at {
        Some(q) => {
            let _ = writeln!(text, "{}", evaluate(&coeffs, q));
        }
        None => {
            let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(text, "[{}]", parts.join(", "));
        }
    }
    Ok((text, EXIT_OK))
}

fn moment_data(inst: &Instance, g: &MomentGraph) -> String {
    let q = &inst.quiver;
    let f = &inst.forest;
    let mut text = String::new();
    let _ = writeln!(text, "points {}", g.len());
    for (x, u) in g.points.iter().enumerate() {
        let _ = writeln!(text, "point {x} {} selected {} out {}", point_label(inst, &g.basis, u), u.ids(f).join(","), g.out_degree(x));
    }
    let _ = writeln!(text, "edges {}", g.edges.len());
    for e in &g.edges {
        let m = &e.mutation;
        let _ = writeln!(
            text,
            "edge {} -> {} vertex {} k {} l {} character {}",
            e.source,
            e.target,
            q.vertex_label(m.vertex),
            m.k_pos + 1,
            m.l_pos + 1,
            e.character.render(q, &g.basis.supported)
        );
    }
    let _ = writeln!(text, "palais-smale {}", g.is_palais_smale());
    text
}

fn moment_dot(inst: &Instance, g: &MomentGraph) -> String {
    let q = &inst.quiver;
    let mut text = String::from("digraph moment_graph {\n");
    for (x, u) in g.points.iter().enumerate() {
        let _ = writeln!(text, "  n{x} [label=\"{}\"];", point_label(inst, &g.basis, u));
    }
    for e in &g.edges {
        let _ = writeln!(text, "  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.character.render(q, &g.basis.supported));
    }
    text.push_str("}\n");
    text
}

fn cmd_moment_graph(inst: &Instance, exp: bool, dot: Option<&Path>, data: Option<&Path>) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let g = graph(inst, &align)?;
    let mut text = String::new();
    experimental_note(&align, &mut text);
    if let Some(path) = dot {
        write_file(path, &moment_dot(inst, &g))?;
    }
    if let Some(path) = data {
        write_file(path, &moment_data(inst, &g))?;
    }
    if dot.is_none() && data.is_none() {
        text.push_str(&moment_data(inst, &g));
    } else {
        let _ = writeln!(text, "points {}\nedges {}\npalais-smale {}", g.len(), g.edges.len(), g.is_palais_smale());
    }
    if g.experimental {
        for (x, y) in crate::moment::branched_exchanges(&inst.forest, &g.points) {
            let _ = writeln!(text, "note: points {x} and {y} differ by isomorphic branched pieces; no mutation relates them");
        }
    }
    Ok((text, EXIT_OK))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KtDoc {
    variables: Vec<String>,
    points: Vec<Vec<String>>,
    unique: bool,
    classes: Vec<ClassDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    base: usize,
    degree: usize,
    unique: bool,
    components: Vec<ComponentDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    point: usize,
    polynomial: String,
    terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    exponents: Vec<u32>,
    coefficient: String,
}

fn cmd_kt_basis(inst: &Instance, exp: bool, out: Option<&Path>, verify: Option<&Path>) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let g = graph(inst, &align)?;
    let names = variable_names(&g, &inst.quiver);
    let mut text = String::new();
    experimental_note(&align, &mut text);
    if let Some(path) = verify {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("cannot read `{}`: {e}", path.display()) })?;
        let doc: KtDoc = serde_json::from_str(&raw).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("parse error at line {}, column {}: {e}", e.line(), e.column()),
        })?;
        return verify_doc(inst, &g, &names, &doc).map(|n| {
            let _ = writeln!(text, "verified {n} classes");
            (text, EXIT_OK)
        });
    }
    let basis = kt_basis(&g).map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })?;
    let doc = KtDoc {
        variables: names.clone(),
        points: g.points.iter().map(|u| u.ids(&inst.forest).into_iter().map(String::from).collect()).collect(),
        unique: basis.unique,
        classes: basis
            .classes
            .iter()
            .map(|c| ClassDoc {
                base: c.base,
                degree: c.degree,
                unique: c.unique,
                components: c
                    .components
                    .iter()
                    .map(|(&y, p)| ComponentDoc {
                        point: y,
                        polynomial: p.render(&names),
                        terms: p.terms().map(|(m, c)| TermDoc { exponents: m.0.clone(), coefficient: c.to_string() }).collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let _ = writeln!(text, "classes {}\nunique {}", basis.classes.len(), basis.unique);
    for c in &basis.classes {
        let _ = writeln!(text, "class {} {} degree {}", c.base, point_label(inst, &g.basis, &g.points[c.base]), c.degree);
        for (y, p) in &c.components {
            let _ = writeln!(text, "  at {y}: {}", p.render(&names));
        }
    }
    if let Some(path) = out {
        let mut json = serde_json::to_string_pretty(&doc).expect("serializable");
        json.push('\n');
        write_file(path, &json)?;
    }
    Ok((text, EXIT_OK))
}

fn verify_doc(inst: &Instance, g: &MomentGraph, names: &[String], doc: &KtDoc) -> Result<usize, Failure> {
    let bad = |m: String| Failure { code: EXIT_PRECONDITION, message: m };
    if doc.variables != names {
        return Err(bad("variables do not match this instance".into()));
    }
    let expected: Vec<Vec<String>> = g.points.iter().map(|u| u.ids(&inst.forest).into_iter().map(String::from).collect()).collect();
    if doc.points != expected {
        return Err(bad("fixed points do not match this instance".into()));
    }
    let reach = g.partial_order();
    let nvars = variable_count(g);
    let mut seen = vec![false; g.len()];
    for c in &doc.classes {
        if c.base >= g.len() || seen[c.base] {
            return Err(bad(format!("class base {} is out of range or repeated", c.base)));
        }
        seen[c.base] = true;
        let mut components = BTreeMap::new();
        for comp in &c.components {
            let mut terms = Vec::new();
            for t in &comp.terms {
                if t.exponents.len() != nvars {
                    return Err(bad(format!("class {}: exponent vector of wrong length", c.base)));
                }
                let coef = BigRational::from_str(&t.coefficient)
                    .map_err(|_| bad(format!("class {}: bad coefficient `{}`", c.base, t.coefficient)))?;
                terms.push((t.exponents.clone(), coef));
            }
            components.insert(comp.point, Poly::from_terms(nvars, terms));
        }
        let class = KtClass { base: c.base, degree: c.degree, components, unique: c.unique };
        verify_kt_class(g, &reach, &class).map_err(|e| bad(e.to_string()))?;
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return Err(bad(format!("no class based at point {x}")));
    }
    Ok(doc.classes.len())
}

fn cmd_tangent(inst: &Instance, exp: bool) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let g = graph(inst, &align)?;
    let mut text = String::new();
    experimental_note(&align, &mut text);
    let _ = writeln!(text, "point\ttangent\tdegree\tcell_dim");
    for (x, u) in g.points.iter().enumerate() {
        let t = enumerate_mutations(&inst.forest, &align.basis, u).len();
        let d = initial_parameters(&inst.forest, &align.basis, u).dimension;
        let _ = writeln!(text, "{x}\t{t}\t{}\t{d}", g.degree(x));
    }
    Ok((text, EXIT_OK))
}

fn cmd_hall_strata(inst: &Instance, exp: bool) -> Outcome {
    feasible(inst)?;
    let align = alignment(inst, exp)?;
    let f = &inst.forest;
    let points = enumerate_fixed_points(f, &inst.dims);
    let mut text = String::new();
    experimental_note(&align, &mut text);
    for (k, s) in hall_strata(f, &points).iter().enumerate() {
        let tangents: std::collections::BTreeSet<usize> =
            s.members.iter().map(|&x| enumerate_mutations(f, &align.basis, &points[x]).len()).collect();
        let members: Vec<String> = s.members.iter().map(|x| x.to_string()).collect();
        let tangents: Vec<String> = tangents.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(text, "stratum {k}");
        let _ = writeln!(text, "  sub: {}", s.sub.render(&inst.quiver));
        let _ = writeln!(text, "  quotient: {}", s.quotient.render(&inst.quiver));
        let _ = writeln!(text, "  points: [{}]", members.join(", "));
        let _ = writeln!(text, "  tangent: {{{}}}", tangents.join(", "));
    }
    Ok((text, EXIT_OK))
}
