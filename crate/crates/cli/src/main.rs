//! `wpl`: command-line queries on the weighted projective line of type (2,2,n).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;
use wpl_core::{dot, BundlePoint, LElement, MeshWindow, TiltingCandidate, TiltingFile, Wpl};

#[derive(Parser, Debug)]
#[command(name = "wpl", version, about = "Exact Hom/Ext, tilting and missing-part queries for type (2,2,n)")]
struct Cli {
    /// Weight n of the third exceptional point.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(2..))]
    n: Option<i64>,

    /// Tau-radius of search windows (default n+2).
    #[arg(long, global = true, env = "WPL_WINDOW_RADIUS", value_parser = clap::value_parser!(i64).range(1..))]
    radius: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic in the grading group L.
    #[command(subcommand)]
    Group(GroupCmd),
    /// dim S_x of the graded coordinate ring.
    Sdim { x: String },
    /// dim Hom(X, Y).
    Hom(PairArgs),
    /// dim Ext^1(X, Y).
    Ext(PairArgs),
    /// Slice beginning at X (or ending at X with --to).
    Slice {
        x: String,
        #[arg(long)]
        to: bool,
    },
    /// Dom(X), or its parts Dom+(X) / Dom-(X).
    Dom {
        x: String,
        #[arg(long, conflicts_with = "minus")]
        plus: bool,
        #[arg(long)]
        minus: bool,
    },
    #[command(subcommand)]
    Tilting(TiltingCmd),
    /// Missing part C of the tilting bundle in FILE.
    Missing { file: PathBuf },
    /// The AR quiver on tau-powers A..=B.
    Quiver {
        #[arg(long, value_name = "A:B", allow_hyphen_values = true)]
        window: String,
        /// Shorthand for --output dot.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    Normalize { x: String },
    Add { x: String, y: String },
    Neg { x: String },
    Delta { x: String },
    /// Compare two elements in the partial order of L.
    Order { x: String, y: String },
    /// The dualizing element.
    Omega,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(allow_hyphen_values = true)]
    x: String,
    #[arg(allow_hyphen_values = true)]
    y: String,
    /// Recompute in the mesh category and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand, Debug)]
enum TiltingCmd {
    /// Test whether FILE describes a tilting bundle and classify it.
    Check { file: PathBuf },
    /// Classified form of the tilting bundle in FILE.
    Classify { file: PathBuf },
    /// All tilting bundles in the window.
    Enumerate {
        /// One representative per twist / tau-shift class.
        #[arg(long)]
        normalized: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] wpl_core::Error),
    #[error("oracle disagrees with the Euler form")]
    Unverified,
    #[error("writing output: {0}")]
    Io(io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Unverified | CliError::Io(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Ctx {
    output: Output,
    radius: Option<i64>,
    n: Option<i64>,
}

impl Ctx {
    fn wpl(&self) -> Result<Wpl> {
        let n = self.n.ok_or_else(|| CliError::Usage("this command needs --n".into()))?;
        Ok(Wpl::new(n)?)
    }

    fn radius(&self, wpl: &Wpl) -> i64 {
        self.radius.unwrap_or(i64::from(wpl.n()) + 2)
    }

    /// Reads a tilting file; `--n`, when given, must agree with it.
    fn tilting_file(&self, path: &Path) -> Result<(Wpl, TiltingCandidate)> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let file = TiltingFile::from_json(&text)?;
        let wpl = Wpl::new(self.n.unwrap_or(file.n))?;
        let t = wpl.candidate_from_file(&file)?;
        Ok((wpl, t))
    }

    fn emit(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value, dot: Option<String>) -> Result<()> {
        let body = match self.output {
            Output::Text => text() + "\n",
            Output::Json => serde_json::to_string_pretty(&json()).expect("json value") + "\n",
            Output::Dot => dot.ok_or_else(|| CliError::Usage("dot output is not available for this command".into()))?,
        };
        let mut out = io::stdout().lock();
        match out.write_all(body.as_bytes()).and_then(|()| out.flush()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Io(e)),
            _ => Ok(()),
        }
    }
}

fn element_json(x: LElement) -> Value {
    json!(x.to_array())
}

fn points_json(wpl: &Wpl, pts: &[BundlePoint]) -> Value {
    json!(pts.iter().map(|&p| wpl.format_point(p)).collect::<Vec<_>>())
}

fn points_text(wpl: &Wpl, pts: &[BundlePoint]) -> String {
    pts.iter().map(|&p| wpl.format_point(p)).collect::<Vec<_>>().join("\n")
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || CliError::Usage(format!("--window expects A:B with integers A <= B, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn group(ctx: &Ctx, cmd: GroupCmd) -> Result<()> {
    let wpl = ctx.wpl()?;
    let el = |s: &str| wpl.parse_element(s);
    match cmd {
        GroupCmd::Normalize { x } => {
            let x = el(&x)?;
            ctx.emit(|| x.to_string(), || json!({ "normal_form": element_json(x) }), None)
        }
        GroupCmd::Add { x, y } => {
            let s = el(&x)?.checked_add(el(&y)?)?;
            ctx.emit(|| s.to_string(), || json!({ "sum": element_json(s) }), None)
        }
        GroupCmd::Neg { x } => {
            let x = -el(&x)?;
            ctx.emit(|| x.to_string(), || json!({ "negation": element_json(x) }), None)
        }
        GroupCmd::Delta { x } => {
            let d = el(&x)?.delta();
            ctx.emit(|| d.to_string(), || json!({ "delta": d }), None)
        }
        GroupCmd::Order { x, y } => {
            let (a, b) = (el(&x)?, el(&y)?);
            let rel = match (a.leq(&b), b.leq(&a)) {
                (true, true) => "=",
                (true, false) => "<",
                (false, true) => ">",
                (false, false) => "incomparable",
            };
            ctx.emit(|| rel.to_string(), || json!({ "x": element_json(a), "y": element_json(b), "relation": rel }), None)
        }
        GroupCmd::Omega => {
            let w = wpl.omega();
            ctx.emit(|| w.to_string(), || json!({ "omega": element_json(w) }), None)
        }
    }
}

fn pair(ctx: &Ctx, args: PairArgs, ext: bool) -> Result<()> {
    let wpl = ctx.wpl()?;
    let x = wpl.parse_point(&args.x)?;
    let y = wpl.parse_point(&args.y)?;
    let dim = if ext { wpl.ext_dim(x, y) } else { wpl.hom_dim(x, y) };
    let key = if ext { "ext" } else { "hom" };
    let verified = if args.oracle {
        let lo = x.m.min(y.m) - 1;
        let hi = x.m.max(y.m) + 2;
        let mesh = MeshWindow::new(&wpl, lo, hi)?;
        let other = if ext { mesh.ext_dim(x, y)? } else { mesh.hom_dim(x, y)? };
        Some(other == dim)
    } else {
        None
    };
    ctx.emit(
        || match verified {
            Some(v) => format!("{dim}\nverified: {v}"),
            None => dim.to_string(),
        },
        || {
            let mut v = json!({ "x": wpl.format_point(x), "y": wpl.format_point(y), key: dim });
            if let Some(ok) = verified {
                v["verified"] = json!(ok);
            }
            v
        },
        None,
    )?;
    if verified == Some(false) {
        return Err(CliError::Unverified);
    }
    Ok(())
}

fn tilting(ctx: &Ctx, cmd: TiltingCmd) -> Result<()> {
    match cmd {
        TiltingCmd::Check { file } => {
            let (wpl, t) = ctx.tilting_file(&file)?;
            let ok = wpl.is_tilting(&t);
            let (form, reason) = match wpl.classify(&t) {
                Ok(f) => (Some(f), None),
                Err(e) if !ok => (None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            ctx.emit(
                || match (&form, &reason) {
                    (Some(f), _) => format!("tilting: true; form: {f}"),
                    (None, Some(r)) => format!("tilting: false; reason: {r}"),
                    (None, None) => "tilting: false".to_string(),
                },
                || {
                    json!({
                        "tilting": ok,
                        "form": form.as_ref().map(|f| serde_json::to_value(wpl.form_json(f)).expect("json value")),
                        "reason": reason,
                    })
                },
                Some(dot::render(&wpl, "tilting", t.summands(), |_| dot::NodeStyle::default())),
            )
        }
        TiltingCmd::Classify { file } => {
            let (wpl, t) = ctx.tilting_file(&file)?;
            let form = wpl.classify(&t)?;
            ctx.emit(|| form.to_string(), || serde_json::to_value(wpl.form_json(&form)).expect("json value"), None)
        }
        TiltingCmd::Enumerate { normalized } => {
            let wpl = ctx.wpl()?;
            let radius = ctx.radius(&wpl);
            let all = wpl.enumerate_tilting(radius, normalized)?;
            let rows: Vec<(TiltingCandidate, &'static str, bool)> = all
                .into_iter()
                .map(|t| {
                    let kind = if t.all_lines() { "canonical" } else { "rank-two" };
                    let slice = wpl.is_slice(t.summands());
                    (t, kind, slice)
                })
                .collect();
            ctx.emit(
                || {
                    let mut out: Vec<String> = rows
                        .iter()
                        .map(|(t, kind, slice)| {
                            let tag = if *slice { "slice" } else { "not-slice" };
                            format!("{}  {kind} {tag}", wpl.format_candidate(t))
                        })
                        .collect();
                    out.push(format!("{} tilting bundles (radius {radius})", rows.len()));
                    out.join("\n")
                },
                || {
                    json!({
                        "n": wpl.n(),
                        "radius": radius,
                        "normalized": normalized,
                        "count": rows.len(),
                        "results": rows.iter().map(|(t, kind, slice)| json!({
                            "summands": points_json(&wpl, t.summands()),
                            "kind": kind,
                            "slice": slice,
                        })).collect::<Vec<_>>(),
                    })
                },
                None,
            )
        }
    }
}

fn missing(ctx: &Ctx, file: &Path) -> Result<()> {
    let (wpl, t) = ctx.tilting_file(file)?;
    let radius = ctx.radius(&wpl);
    let mp = wpl.missing_part(&t, radius)?;
    let report = wpl.missing_report(&mp)?;
    let window: Vec<BundlePoint> = wpl
        .orbits()
        .into_iter()
        .flat_map(|o| (mp.tau_min..=mp.tau_max).map(move |m| BundlePoint::new(o, m)))
        .collect();
    ctx.emit(
        || {
            let mut out = vec![format!("form: {}", mp.form), format!("|C| = {}", mp.len())];
            let names = |v: &[String]| v.join(", ");
            out.push(format!("C: {}", names(&report.all)));
            if let (Some(c1), Some(c2)) = (&report.c1, &report.c2) {
                out.push(format!("C1: {}", names(c1)));
                out.push(format!("C2: {}", names(c2)));
            }
            out.push(format!("factor homs over [{}]:", names(&report.factor_homs.order)));
            for row in &report.factor_homs.matrix {
                out.push(row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
            }
            out.join("\n")
        },
        || serde_json::to_value(&report).expect("json value"),
        Some(dot::torsion_overlay(&wpl, &t, &window)),
    )
}

fn run(cli: Cli) -> Result<()> {
    let mut ctx = Ctx { output: cli.output, radius: cli.radius, n: cli.n };
    match cli.command {
        Command::Group(cmd) => group(&ctx, cmd),
        Command::Sdim { x } => {
            let wpl = ctx.wpl()?;
            let x = wpl.parse_element(&x)?;
            let d = wpl.sdim().dim(x);
            ctx.emit(|| d.to_string(), || json!({ "x": element_json(x), "dim": d }), None)
        }
        Command::Hom(args) => pair(&ctx, args, false),
        Command::Ext(args) => pair(&ctx, args, true),
        Command::Slice { x, to } => {
            let wpl = ctx.wpl()?;
            let p = wpl.parse_point(&x)?;
            let s = if to { wpl.slice_to(p)? } else { wpl.slice_from(p)? };
            let name = if to { format!("S(-> {})", wpl.format_point(p)) } else { format!("S({} ->)", wpl.format_point(p)) };
            ctx.emit(
                || points_text(&wpl, &s),
                || json!({ "x": wpl.format_point(p), "direction": if to { "to" } else { "from" }, "slice": points_json(&wpl, &s) }),
                Some(dot::render(&wpl, &name, &s, |_| dot::NodeStyle::default())),
            )
        }
        Command::Dom { x, plus, minus } => {
            let wpl = ctx.wpl()?;
            let p = wpl.parse_point(&x)?;
            let (part, d) = if plus {
                ("plus", wpl.dom_plus(p)?)
            } else if minus {
                ("minus", wpl.dom_minus(p)?)
            } else {
                ("all", wpl.dom(p)?)
            };
            ctx.emit(
                || points_text(&wpl, &d),
                || json!({ "x": wpl.format_point(p), "part": part, "size": d.len(), "dom": points_json(&wpl, &d) }),
                Some(dot::render(&wpl, "Dom", &d, |q| dot::NodeStyle { fill: None, bold: q == p })),
            )
        }
        Command::Tilting(cmd) => tilting(&ctx, cmd),
        Command::Missing { file } => missing(&ctx, &file),
        Command::Quiver { window, dot: as_dot } => {
            if as_dot {
                ctx.output = Output::Dot;
            }
            let wpl = ctx.wpl()?;
            let (a, b) = parse_window(&window)?;
            let mesh = MeshWindow::new(&wpl, a, b)?;
            ctx.emit(
                || {
                    let mut out = vec![format!("{} vertices, {} arrows, {} mesh relations", mesh.vertices().len(), mesh.arrows().len(), mesh.relations().len())];
                    for &(u, v) in mesh.arrows() {
                        out.push(format!("{} -> {}", wpl.format_point(u), wpl.format_point(v)));
                    }
                    out.join("\n")
                },
                || {
                    json!({
                        "window": [a, b],
                        "vertices": points_json(&wpl, mesh.vertices()),
                        "arrows": mesh.arrows().iter().map(|&(u, v)| json!([wpl.format_point(u), wpl.format_point(v)])).collect::<Vec<_>>(),
                        "relations": mesh.relations().len(),
                    })
                },
                Some(dot::window(&wpl, &mesh)),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
