//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 a check failed, 2 malformed input or usage.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::builders::{build_lemma34, build_prop35, build_section5, surgery_connect, BuildError};
use crate::diag::Diagnostic;
use crate::doc::{emit_graph, emit_template, parse_graph, parse_template, DocError};
use crate::dot::export_dot;
use crate::lyapgraph::{
    balance_diagnostics, check_s3, check_template_vertex, cycle_rank, nsf_balance_check, required_residual,
    summand_lower_bound, validate_abstract, Condition, GraphError, LyapunovGraph,
};
use crate::template::{
    build_lorenz, lemma41_sides, template_genus, thicken_boundary, validate_template, BoundaryError, BoundaryReport,
    SurfaceComponent, Template,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "nsflow", version, about = "Lyapunov graphs and templates of nonsingular Smale flows")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse a Lyapunov graph document.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Generate graph documents.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Analyse template documents.
    #[command(subcommand)]
    Template(TemplateCmd),
    /// Export to other formats.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Args, Debug)]
struct OutFile {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Structural checks plus Poincaré–Hopf balance.
    Validate { file: PathBuf },
    /// Realizability by a Smale flow on S³.
    S3check { file: PathBuf },
    /// Lower bound on S¹×S² summands with its certificate.
    Summands { file: PathBuf },
    /// Per-vertex balance table.
    Residuals { file: PathBuf },
    /// Connected sum of two graphs along attractor edges.
    Surgery {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        left_edge: String,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        right_edge: String,
        #[command(flatten)]
        out: OutFile,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Singular tree on S³ with a central edge of weight n+1.
    Lemma34 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        n: u32,
        #[command(flatten)]
        out: OutFile,
    },
    /// Nonsingular graph on a connected sum of n copies of S¹×S².
    Prop35 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        n: u32,
        #[command(flatten)]
        out: OutFile,
    },
    /// The two S¹×S² example graphs, written as G.json and L.json.
    Section5 {
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum TemplateCmd {
    /// Check chart/strip consistency.
    Validate { file: PathBuf },
    /// Entrance and exit components of the thickened template.
    Boundary { file: PathBuf },
    /// Template genus g(T).
    Genus { file: PathBuf },
    /// Write the Lorenz template.
    Lorenz {
        #[command(flatten)]
        out: OutFile,
    },
    /// Compare a saddle vertex against the template modelling it.
    CheckVertex {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        template: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCmd {
    /// Graphviz DOT text for a graph document.
    Dot {
        file: PathBuf,
        #[command(flatten)]
        out: OutFile,
    },
}

/// Failure that ends a command with exit code 2.
#[derive(Debug)]
enum Malformed {
    Unreadable(PathBuf, std::io::Error),
    Unwritable(PathBuf, std::io::Error),
    Document(PathBuf, DocError),
    Reference(GraphError),
}

impl Malformed {
    fn render(&self) -> String {
        match self {
            Malformed::Unreadable(p, e) => format!("[unreadable] {}: {e}", p.display()),
            Malformed::Unwritable(p, e) => format!("[unwritable] {}: {e}", p.display()),
            Malformed::Document(p, e @ DocError::Syntax { .. }) => format!("[syntax] {}: {e}", p.display()),
            Malformed::Document(p, e @ DocError::Schema { .. }) => format!("[schema] {}: {e}", p.display()),
            Malformed::Reference(e) => format!("[reference] {e}"),
        }
    }
}

struct Ctx {
    json: bool,
    out: String,
    err: String,
}

impl Ctx {
    fn emit_json<T: Serialize>(&mut self, value: &T) {
        self.out.push_str(&serde_json::to_string_pretty(value).expect("reports always serialize"));
        self.out.push('\n');
    }

    fn write(&mut self, target: &OutFile, text: &str) -> Result<(), Malformed> {
        match &target.output {
            Some(path) => write_file(path, text),
            None => {
                self.out.push_str(text);
                Ok(())
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Malformed> {
    fs::read_to_string(path).map_err(|e| Malformed::Unreadable(path.to_owned(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Malformed> {
    fs::write(path, text).map_err(|e| Malformed::Unwritable(path.to_owned(), e))
}

fn load_graph(path: &Path) -> Result<LyapunovGraph, Malformed> {
    parse_graph(&read(path)?).map_err(|e| Malformed::Document(path.to_owned(), e))
}

fn load_template(path: &Path) -> Result<Template, Malformed> {
    parse_template(&read(path)?).map_err(|e| Malformed::Document(path.to_owned(), e))
}

fn status(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn list_diagnostics(out: &mut String, ds: &[Diagnostic]) {
    for d in ds {
        let _ = writeln!(out, "  {d}");
    }
}

#[derive(Serialize)]
struct ValidateReport {
    ok: bool,
    vertices: usize,
    edges: usize,
    cycle_rank: Option<usize>,
    diagnostics: Vec<Diagnostic>,
}

fn graph_validate(ctx: &mut Ctx, g: &LyapunovGraph) -> i32 {
    let mut diagnostics = validate_abstract(g);
    diagnostics.extend(balance_diagnostics(g, &nsf_balance_check(g)));
    let report = ValidateReport {
        ok: diagnostics.is_empty(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cycle_rank: cycle_rank(g).ok(),
        diagnostics,
    };
    if ctx.json {
        ctx.emit_json(&report);
    } else if report.ok {
        let _ = writeln!(
            ctx.out,
            "ok: {} vertices, {} edges, cycle rank {}",
            report.vertices,
            report.edges,
            report.cycle_rank.unwrap_or(0)
        );
    } else {
        let _ = writeln!(ctx.out, "invalid: {} problem(s)", report.diagnostics.len());
        list_diagnostics(&mut ctx.out, &report.diagnostics);
    }
    status(report.ok)
}

fn graph_s3check(ctx: &mut Ctx, g: &LyapunovGraph) -> i32 {
    let report = check_s3(g);
    if ctx.json {
        ctx.emit_json(&report);
        return status(report.pass);
    }
    let mark = |pass: bool| if pass { "pass" } else { "FAIL" };
    if !report.preconditions.is_empty() {
        let _ = writeln!(ctx.out, "preconditions: FAIL");
        list_diagnostics(&mut ctx.out, &report.preconditions);
    }
    let conditions: [(&str, &Condition); 3] = [
        ("tree with terminal sinks and sources", &report.condition1),
        ("saddle edge counts", &report.condition2),
        ("balance", &report.condition3),
    ];
    for (name, c) in conditions {
        let _ = writeln!(ctx.out, "{name}: {}", mark(c.pass));
        list_diagnostics(&mut ctx.out, &c.details);
    }
    let _ = writeln!(ctx.out, "S3 realizable: {}", if report.pass { "yes" } else { "no" });
    status(report.pass)
}

fn graph_summands(ctx: &mut Ctx, g: &LyapunovGraph) -> i32 {
    let bound = summand_lower_bound(g);
    if ctx.json {
        ctx.emit_json(&bound);
        return status(bound.ok);
    }
    let _ = writeln!(ctx.out, "summand lower bound: {}", bound.n);
    let _ = writeln!(ctx.out, "certificate: [{}]", bound.certificate.join(", "));
    match bound.cycle_rank {
        Some(r) => {
            let _ = writeln!(ctx.out, "cycle rank: {r} ({})", if bound.rank_bound_holds { ">= bound" } else { "< bound" });
        }
        None => {
            let _ = writeln!(ctx.out, "cycle rank: undefined");
        }
    }
    let _ = writeln!(ctx.out, "ok: {}", bound.ok);
    list_diagnostics(&mut ctx.out, &bound.diagnostics);
    status(bound.ok)
}

#[derive(Serialize)]
struct ResidualRow {
    vertex: String,
    kind: &'static str,
    e_plus: usize,
    e_minus: usize,
    g_plus: u64,
    g_minus: u64,
    residual: i64,
    required: Option<i64>,
    ok: bool,
}

fn graph_residuals(ctx: &mut Ctx, g: &LyapunovGraph) -> i32 {
    let rows: Vec<ResidualRow> = g
        .vertices()
        .map(|(id, v)| {
            let s = g.stats(id);
            let required = required_residual(&v.label);
            ResidualRow {
                vertex: v.name.clone(),
                kind: v.label.kind(),
                e_plus: s.e_plus,
                e_minus: s.e_minus,
                g_plus: s.g_plus,
                g_minus: s.g_minus,
                residual: s.residual(),
                required,
                ok: required.is_none_or(|r| r == s.residual()),
            }
        })
        .collect();
    let ok = rows.iter().all(|r| r.ok);
    if ctx.json {
        ctx.emit_json(&rows);
        return status(ok);
    }
    let width = rows.iter().map(|r| r.vertex.len()).max().unwrap_or(0).max(6);
    let _ = writeln!(
        ctx.out,
        "{:<width$}  {:<11}  {:>3}  {:>3}  {:>3}  {:>3}  {:>8}  {:>8}",
        "vertex", "kind", "e+", "e-", "g+", "g-", "residual", "required"
    );
    for r in &rows {
        let required = r.required.map_or("-".to_owned(), |x| x.to_string());
        let _ = writeln!(
            ctx.out,
            "{:<width$}  {:<11}  {:>3}  {:>3}  {:>3}  {:>3}  {:>8}  {:>8}{}",
            r.vertex,
            r.kind,
            r.e_plus,
            r.e_minus,
            r.g_plus,
            r.g_minus,
            r.residual,
            required,
            if r.ok { "" } else { "  !" }
        );
    }
    status(ok)
}

fn report_failure(ctx: &mut Ctx, what: &str, diagnostics: &[Diagnostic]) -> i32 {
    if ctx.json {
        ctx.emit_json(&diagnostics);
    } else {
        let _ = writeln!(ctx.out, "{what}: {} problem(s)", diagnostics.len());
        list_diagnostics(&mut ctx.out, diagnostics);
    }
    EXIT_FAILED
}

fn build_failure(ctx: &mut Ctx, e: BuildError) -> Result<i32, Malformed> {
    match e {
        BuildError::Graph(g @ (GraphError::UnknownEdge(_) | GraphError::UnknownVertex(_))) => Err(Malformed::Reference(g)),
        other => {
            let _ = writeln!(ctx.err, "[build] {other}");
            Ok(EXIT_FAILED)
        }
    }
}

fn components_table(out: &mut String, title: &str, cs: &[SurfaceComponent]) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  {:>3}  {:>5}  {:>7}  {:>12}", "#", "euler", "circles", "capped genus");
    for (i, c) in cs.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {:>5}  {:>7}  {:>12}", i, c.euler_char, c.boundary_circles, c.capped_genus);
    }
}

fn boundary_text(out: &mut String, r: &BoundaryReport) {
    components_table(out, "entrance set", &r.entrance);
    components_table(out, "exit set", &r.exit);
    let _ = writeln!(out, "dividing curves: {}", r.dividing_curves);
    for (i, c) in r.curves.iter().enumerate() {
        let _ = writeln!(out, "  c{}: entrance {} | exit {}", i + 1, c.entrance, c.exit);
    }
    let closed: Vec<String> = r.closed_components.iter().map(|c| format!("genus {}", c.genus)).collect();
    let _ = writeln!(out, "boundary surface: euler {} [{}]", r.total_boundary_euler, closed.join(", "));
    let _ = writeln!(out, "s0 {}  s1 {}  t0 {}  t1 {}", r.s0, r.s1, r.t0, r.t1);
    let (lhs, rhs) = lemma41_sides(r);
    let _ = writeln!(out, "entrance/exit identity: {lhs} = {rhs} ({})", if lhs == rhs { "holds" } else { "VIOLATED" });
    let _ = writeln!(out, "g(T) = {}", template_genus(r));
}

fn boundary_or_fail(ctx: &mut Ctx, t: &Template) -> Result<BoundaryReport, i32> {
    match thicken_boundary(t) {
        Ok(r) => Ok(r),
        Err(BoundaryError::Invalid(ds)) => Err(report_failure(ctx, "invalid template", &ds)),
        Err(other) => {
            let _ = writeln!(ctx.err, "[boundary] {other}");
            Err(EXIT_FAILED)
        }
    }
}

#[derive(Serialize)]
struct GenusReport {
    genus: u32,
    entrance_excess: i64,
    exit_excess: i64,
}

fn execute(ctx: &mut Ctx, command: Command) -> Result<i32, Malformed> {
    Ok(match command {
        Command::Graph(cmd) => match cmd {
            GraphCmd::Validate { file } => graph_validate(ctx, &load_graph(&file)?),
            GraphCmd::S3check { file } => graph_s3check(ctx, &load_graph(&file)?),
            GraphCmd::Summands { file } => graph_summands(ctx, &load_graph(&file)?),
            GraphCmd::Residuals { file } => graph_residuals(ctx, &load_graph(&file)?),
            GraphCmd::Surgery { left, left_edge, right, right_edge, out } => {
                let (l, r) = (load_graph(&left)?, load_graph(&right)?);
                match surgery_connect(&l, &left_edge, &r, &right_edge) {
                    Ok(g) => {
                        ctx.write(&out, &emit_graph(&g))?;
                        EXIT_OK
                    }
                    Err(e) => build_failure(ctx, e)?,
                }
            }
        },
        Command::Gen(cmd) => match cmd {
            GenCmd::Lemma34 { n, out } => match build_lemma34(n as usize) {
                Ok(g) => {
                    ctx.write(&out, &emit_graph(&g))?;
                    EXIT_OK
                }
                Err(e) => build_failure(ctx, e)?,
            },
            GenCmd::Prop35 { n, out } => match build_prop35(n as usize) {
                Ok(g) => {
                    ctx.write(&out, &emit_graph(&g))?;
                    EXIT_OK
                }
                Err(e) => build_failure(ctx, e)?,
            },
            GenCmd::Section5 { output } => {
                fs::create_dir_all(&output).map_err(|e| Malformed::Unwritable(output.clone(), e))?;
                let s = build_section5();
                write_file(&output.join("G.json"), &emit_graph(&s.g))?;
                write_file(&output.join("L.json"), &emit_graph(&s.l))?;
                EXIT_OK
            }
        },
        Command::Template(cmd) => match cmd {
            TemplateCmd::Validate { file } => {
                let t = load_template(&file)?;
                let ds = validate_template(&t);
                if !ds.is_empty() {
                    return Ok(report_failure(ctx, "invalid template", &ds));
                }
                if ctx.json {
                    ctx.emit_json(&ds);
                } else {
                    let _ = writeln!(
                        ctx.out,
                        "ok: {} charts, {} strips, euler characteristic {}",
                        t.charts.len(),
                        t.strips.len(),
                        t.euler_char()
                    );
                }
                EXIT_OK
            }
            TemplateCmd::Boundary { file } => {
                let t = load_template(&file)?;
                let r = match boundary_or_fail(ctx, &t) {
                    Ok(r) => r,
                    Err(code) => return Ok(code),
                };
                if ctx.json {
                    ctx.emit_json(&r);
                } else {
                    boundary_text(&mut ctx.out, &r);
                }
                EXIT_OK
            }
            TemplateCmd::Genus { file } => {
                let t = load_template(&file)?;
                let r = match boundary_or_fail(ctx, &t) {
                    Ok(r) => r,
                    Err(code) => return Ok(code),
                };
                let report =
                    GenusReport { genus: template_genus(&r), entrance_excess: r.entrance_excess(), exit_excess: r.exit_excess() };
                if ctx.json {
                    ctx.emit_json(&report);
                } else {
                    let _ = writeln!(ctx.out, "{}", report.genus);
                }
                EXIT_OK
            }
            TemplateCmd::Lorenz { out } => {
                ctx.write(&out, &emit_template(&build_lorenz()))?;
                EXIT_OK
            }
            TemplateCmd::CheckVertex { graph, vertex, template } => {
                let g = load_graph(&graph)?;
                let t = load_template(&template)?;
                let r = match boundary_or_fail(ctx, &t) {
                    Ok(r) => r,
                    Err(code) => return Ok(code),
                };
                let check = check_template_vertex(&g, &vertex, &r).map_err(Malformed::Reference)?;
                let pass = check.s_ok && check.genus_ok && check.summand_ok;
                if ctx.json {
                    ctx.emit_json(&check);
                } else {
                    let side = match check.side {
                        crate::lyapgraph::Side::Entrance => "entrance",
                        crate::lyapgraph::Side::Exit => "exit",
                    };
                    let _ = writeln!(ctx.out, "side: {side}, g(T) = {}", check.g_t);
                    let _ = writeln!(ctx.out, "heavy edges: {} (bucket {}): {}", check.s, check.bucket, check.s_ok);
                    let _ = writeln!(ctx.out, "heavy weights {:?} cover g(T): {}", check.heavy_weights, check.genus_ok);
                    let _ = writeln!(ctx.out, "cuttable weight-0 edges [{}]: {}", check.certificate.join(", "), check.summand_ok);
                }
                status(pass)
            }
        },
        Command::Export(ExportCmd::Dot { file, out }) => {
            let g = load_graph(&file)?;
            ctx.write(&out, &export_dot(&g))?;
            EXIT_OK
        }
    })
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                ErrorKind::InvalidSubcommand => {
                    Outcome { code: EXIT_MALFORMED, stdout: String::new(), stderr: format!("[unknown-command] {text}") }
                }
                _ => Outcome { code: EXIT_MALFORMED, stdout: String::new(), stderr: format!("[usage] {text}") },
            };
        }
    };
    let mut ctx = Ctx { json: cli.json, out: String::new(), err: String::new() };
    let code = match execute(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(m) => {
            ctx.err.push_str(&m.render());
            ctx.err.push('\n');
            EXIT_MALFORMED
        }
    };
    Outcome { code, stdout: ctx.out, stderr: ctx.err }
}
