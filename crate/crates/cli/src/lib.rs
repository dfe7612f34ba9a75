//! The `infgon` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use infgon_core::arcs::{Arc, ArcFamily, Window};
use infgon_core::document::{parse_family, serialize_family};
use infgon_core::homcalc::{hom_dim, morphism_kind, Ind};
use infgon_core::mutation::{exchange_arc, mutate};
use infgon_core::oracle;
use infgon_core::quiver::{cluster_quiver, QuiverView};
use infgon_core::render::{render_family, render_quiver};
use infgon_core::triangulation::{
    certify_global_maximal, functorially_finite, is_window_maximal, GlobalCertificate,
    MaximalityVerdict,
};

pub mod serve;

pub const ORACLE_LIMIT_VAR: &str = "INFGON_ORACLE_LIMIT";
const DEFAULT_ORACLE_LIMIT: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "infgon", version, about = "Arc families on the integer line")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a family document.
    Validate { file: PathBuf },
    /// Report fountains and local finiteness.
    Classify { file: PathBuf },
    /// Check maximality on a window, or certify it globally.
    Maximal {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// Decide functorial finiteness of a certified maximal family.
    Ff { file: PathBuf },
    /// Dimension of Hom(x, y).
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        x: Arc,
        #[arg(long, allow_hyphen_values = true)]
        y: Arc,
    },
    /// Replace one arc by the other diagonal of its quadrilateral.
    Mutate {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        arc: Arc,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Cluster quiver on a window.
    Quiver {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long)]
        dot: bool,
    },
    /// Draw the arc diagram, or the quiver, as SVG.
    Render {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long)]
        quiver: bool,
    },
    /// Exhaustive checks on all maximal families of a small polygon.
    Oracle {
        #[arg(long)]
        vertices: usize,
    },
    /// Serve the JSON API on 127.0.0.1.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Outcome of a command that did not succeed.
#[derive(Debug)]
enum Failure {
    /// A well-formed question with a negative answer.
    Domain(String),
    /// Bad arguments, unreadable files, malformed documents.
    Usage(String),
}

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: serde_json::Value, text: impl FnOnce() -> String) -> Outcome {
        let s = if self.json { value.to_string() } else { text() };
        writeln!(self.out, "{s}").map_err(|e| Failure::Usage(e.to_string()))
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        out,
    };
    match execute(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "{m}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn load(path: &Path) -> Result<ArcFamily, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_family(&text)
        .map_err(|e| Failure::Usage(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    std::fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn list(arcs: impl IntoIterator<Item = i64>) -> String {
    let v: Vec<String> = arcs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

fn certificate_text(c: &GlobalCertificate) -> String {
    match c {
        GlobalCertificate::Certified(w) => format!("certified maximal (window {w})"),
        GlobalCertificate::Refuted(a) => format!("not maximal: {a} crosses no member"),
        GlobalCertificate::Unknown(why) => format!("undecided: {why}"),
    }
}

fn execute(command: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match command {
        Command::Validate { file } => {
            let f = load(&file)?;
            let canonical = serialize_family(&f);
            ctx.emit(json!({ "valid": true, "family": canonical }), || {
                format!(
                    "valid: {} orbit(s), {} removal(s)",
                    f.orbits().len(),
                    f.removed().len()
                )
            })
        }
        Command::Classify { file } => {
            let f = load(&file)?;
            let c = f.classify();
            ctx.emit(json!(c), || {
                format!(
                    "locally finite: {}\nfountains: {}\nleft fountains: {}\nright fountains: {}",
                    if c.locally_finite { "yes" } else { "no" },
                    list(c.fountains.iter().copied()),
                    list(c.left_fountains.iter().copied()),
                    list(c.right_fountains.iter().copied()),
                )
            })
        }
        Command::Maximal { file, window } => {
            let f = load(&file)?;
            let internal = |e: infgon_core::FamilyError| Failure::Usage(e.to_string());
            if let Some(w) = window {
                let v = is_window_maximal(&f, w).map_err(internal)?;
                ctx.emit(json!({ "window": w, "verdict": v }), || match &v {
                    MaximalityVerdict::Maximal => format!("maximal on {w}"),
                    MaximalityVerdict::Missing(a) => {
                        format!("not maximal on {w}: {a} crosses no member")
                    }
                    MaximalityVerdict::Crossing(a, b) => {
                        format!("not maximal on {w}: {a} and {b} cross")
                    }
                })?;
                return match v {
                    MaximalityVerdict::Maximal => Ok(()),
                    _ => Err(Failure::Domain("not maximal".into())),
                };
            }
            let c = certify_global_maximal(&f).map_err(internal)?;
            ctx.emit(json!({ "certificate": c }), || certificate_text(&c))?;
            if c.is_certified() {
                Ok(())
            } else {
                Err(Failure::Domain("not certified".into()))
            }
        }
        Command::Ff { file } => {
            let f = load(&file)?;
            let v = functorially_finite(&f).map_err(|e| Failure::Domain(e.to_string()))?;
            ctx.emit(json!(v), || {
                let verdict = if v.functorially_finite {
                    "functorially finite"
                } else {
                    "not functorially finite"
                };
                format!("{verdict} ({:?})", v.reason)
            })?;
            if v.functorially_finite {
                Ok(())
            } else {
                Err(Failure::Domain("not functorially finite".into()))
            }
        }
        Command::Hom { x, y } => {
            let (x, y) = (Ind::from(x), Ind::from(y));
            let d = hom_dim(x, y);
            ctx.emit(
                json!({ "x": x, "y": y, "hom": d, "kind": morphism_kind(x, y) }),
                || d.to_string(),
            )
        }
        Command::Mutate { file, arc, output } => {
            let f = load(&file)?;
            let domain = |e: infgon_core::MutationError| Failure::Domain(e.to_string());
            let star = exchange_arc(&f, arc).map_err(domain)?;
            let g = mutate(&f, arc).map_err(domain)?;
            let doc = serialize_family(&g);
            if let Some(path) = output {
                write_file(&path, &doc)?;
                ctx.emit(
                    json!({ "arc": arc, "exchange": star, "written": path }),
                    || format!("{arc} -> {star}, written to {}", path.display()),
                )
            } else {
                ctx.emit(
                    json!({ "arc": arc, "exchange": star, "family": doc }),
                    || doc.trim_end().to_string(),
                )
            }
        }
        Command::Quiver { file, window, dot } => {
            let f = load(&file)?;
            let q = cluster_quiver(&f, window);
            ctx.emit(json!(QuiverView::from(&q)), || {
                if dot {
                    q.to_dot().trim_end().to_string()
                } else {
                    format!(
                        "{} vertices, {} arrows\n{}",
                        q.vertices().len(),
                        q.arrow_count(),
                        q
                    )
                    .trim_end()
                    .to_string()
                }
            })
        }
        Command::Render {
            file,
            window,
            output,
            quiver,
        } => {
            let f = load(&file)?;
            let svg = if quiver {
                render_quiver(&cluster_quiver(&f, window), window)
            } else {
                render_family(&f, window, &Default::default())
            };
            write_file(&output, &svg)?;
            ctx.emit(json!({ "written": output, "bytes": svg.len() }), || {
                format!("wrote {}", output.display())
            })
        }
        Command::Oracle { vertices } => {
            let limit = oracle_limit()?;
            if vertices > limit {
                return Err(Failure::Usage(format!(
                    "--vertices {vertices} exceeds the limit {limit} (set {ORACLE_LIMIT_VAR} to raise it)"
                )));
            }
            if vertices < 3 {
                return Err(Failure::Usage("--vertices must be at least 3".into()));
            }
            let r = oracle::run(vertices);
            ctx.emit(json!({ "report": r, "passed": r.passed() }), || {
                oracle_text(&r)
            })?;
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Domain("oracle checks failed".into()))
            }
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Usage(e.to_string()))?;
            rt.block_on(serve::serve(port))
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn oracle_limit() -> Result<usize, Failure> {
    match std::env::var(ORACLE_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{ORACLE_LIMIT_VAR}={v:?} is not a vertex count"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn oracle_text(r: &oracle::OracleReport) -> String {
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    [
        format!(
            "polygon on {} vertices: {} maximal sets",
            r.vertices, r.maximal_sets
        ),
        format!(
            "perp equals members: {}/{} {}",
            r.perp_agreements,
            r.maximal_sets,
            mark(r.perp_agreements == r.maximal_sets)
        ),
        format!(
            "flips: {} checked, {} mismatches {}",
            r.flips_checked,
            r.flip_mismatches.len(),
            mark(r.flip_mismatches.is_empty())
        ),
        format!(
            "involution failures: {} {}",
            r.involution_failures,
            mark(r.involution_failures == 0)
        ),
        format!("flip graph connected: {}", mark(r.flip_graph_connected)),
        format!(
            "quivers without loops or 2-cycles: {}",
            mark(r.quiver_defects == 0)
        ),
        format!(
            "FZ compatibility: {} checked, {} failures {}",
            r.fz_checked,
            r.fz_failures,
            mark(r.fz_failures == 0)
        ),
        format!(
            "all checks {}",
            if r.passed() { "passed" } else { "FAILED" }
        ),
    ]
    .join("\n")
}
