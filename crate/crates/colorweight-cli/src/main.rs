//! Command-line front end for the chord-diagram weight system: evaluate
//! framed or deframed weights by the memoized recurrence or by the
//! enveloping-algebra walk, print whole weight tables, and run the
//! verification suites.
//!
//! Exit codes are a stable contract: `0` success, `1` a verification or
//! cross-method disagreement, `2` bad input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use colorweight::colorlie::{
    a1_epsilon, check_casimir_conditions, check_color_axioms, check_derived_data,
    check_s_lie_axioms,
};
use colorweight::diagram::{enumerate_canonical, ChordDiagram, JacobiDiagram};
use colorweight::envelope;
use colorweight::poly::{CenterPoly, EpsSign};
use colorweight::report::CheckReport;
use colorweight::weights::{self, WeightSystem};

/// Universal weights of chord and Jacobi diagrams over the minimal color
/// Lie algebra, as exact polynomials in the central generators `c` and `y`.
#[derive(Parser)]
#[command(name = "colorweight", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the weight polynomial of a chord diagram.
    Weight(WeightArgs),
    /// Evaluate a Jacobi diagram through its STU resolution.
    Jacobi(JacobiArgs),
    /// Print the weight table of every canonical diagram, order by order.
    Table(TableArgs),
    /// Run a verification suite and report per-identity results.
    Verify(VerifyArgs),
}

/// How to treat the formal sign `ε` in results.
#[derive(Clone, Copy, ValueEnum)]
enum EpsilonMode {
    /// Keep `ε` symbolic (rendered as `e`).
    Sym,
    /// Substitute `ε = +1`.
    #[value(name = "+1")]
    Plus,
    /// Substitute `ε = −1`.
    #[value(name = "-1")]
    Minus,
}

impl EpsilonMode {
    fn apply(self, p: &CenterPoly) -> CenterPoly {
        match self {
            EpsilonMode::Sym => p.clone(),
            EpsilonMode::Plus => p.eval_eps(EpsSign::Plus),
            EpsilonMode::Minus => p.eval_eps(EpsSign::Minus),
        }
    }
}

/// Evaluation route for chord-diagram weights.
#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Method {
    /// Memoized pivot recurrence.
    Recurrence,
    /// Enveloping-algebra walk (exponential in the order; capped at 8).
    Oracle,
    /// Run both routes and compare.
    Both,
}

/// Output format.
#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    /// Human-readable lines.
    Text,
    /// JSON (polynomials in the documented coefficient-map shape).
    Json,
}

#[derive(Args)]
struct WeightArgs {
    /// Inline diagram code: chord labels in circle order, each appearing
    /// twice, e.g. "1 2 1 2"; the empty string is the empty diagram.
    #[arg(short, long, value_name = "CODE")]
    diagram: Option<String>,
    /// Read the diagram code from a file instead.
    #[arg(short, long, value_name = "PATH", conflicts_with = "diagram")]
    file: Option<PathBuf>,
    /// Treatment of the formal sign ε.
    #[arg(long, value_enum, default_value = "sym", allow_hyphen_values = true)]
    epsilon: EpsilonMode,
    /// Evaluation route.
    #[arg(long, value_enum, default_value = "recurrence")]
    method: Method,
    /// Circle position where the enveloping-algebra walk starts reading.
    #[arg(long, value_name = "N", default_value_t = 0)]
    cut: usize,
    /// Deframe: substitute c = 0 in the result.
    #[arg(long)]
    deframed: bool,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct JacobiArgs {
    /// Inline Jacobi diagram as JSON (legs, vertices, edges).
    #[arg(short, long, value_name = "JSON")]
    diagram: Option<String>,
    /// Read the Jacobi JSON from a file instead.
    #[arg(short, long, value_name = "PATH", conflicts_with = "diagram")]
    file: Option<PathBuf>,
    /// Treatment of the formal sign ε.
    #[arg(long, value_enum, default_value = "sym", allow_hyphen_values = true)]
    epsilon: EpsilonMode,
    /// Also print the signed chord-diagram resolution.
    #[arg(long)]
    dump_stu: bool,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Print tables for every order up to this one (1..=6).
    #[arg(long, value_name = "N", default_value_t = 4)]
    max_order: usize,
    /// Keep only diagrams that are not connected sums.
    #[arg(long)]
    indecomposable: bool,
    /// Treatment of the formal sign ε.
    #[arg(long, value_enum, default_value = "sym", allow_hyphen_values = true)]
    epsilon: EpsilonMode,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// The verification suites.
#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    /// Bracket and braiding axioms, form conditions, and derived data of
    /// the minimal color Lie algebra.
    Axioms,
    /// The four-term relation on generated quadruples.
    #[value(name = "4t")]
    FourTerm,
    /// STU resolution-order independence and vertex-flip antisymmetry.
    Stu,
    /// Cut-position and reflection scans (report-only, always exits 0).
    Cut,
    /// Deframing: projector, derivative, and deframed recurrence.
    Deframe,
    /// Vertex-reduction relations in spectator contexts.
    Props,
    /// Recurrence against the enveloping-algebra walk, order by order.
    Oracle,
    /// Enveloping-algebra tensor relations with spectator chords.
    Tenrel,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// Size bound: maximum diagram order for 4t/cut/deframe/oracle, and the
    /// maximum number of spectator chords for tenrel.
    #[arg(long, value_name = "N")]
    max_order: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failures that decide the exit code.
enum CliError {
    /// Bad input (exit 2).
    Input(String),
    /// A computation or verification failed (exit 1).
    Check(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Weight(args) => cmd_weight(args),
        Command::Jacobi(args) => cmd_jacobi(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Resolve the inline-vs-file input choice to the input text.
fn read_input(inline: &Option<String>, file: &Option<PathBuf>) -> Result<String, CliError> {
    match (inline, file) {
        (Some(text), None) => Ok(text.clone()),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display()))),
        _ => Err(CliError::Input(
            "an input is required: --diagram or --file".into(),
        )),
    }
}

fn emit_poly(p: &CenterPoly, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&p.to_json()).expect("polynomial JSON serializes")
        ),
    }
}

/// The enveloping-algebra route: walk the diagram, then express the central
/// value as a polynomial.
fn oracle_value(d: &ChordDiagram, cut: usize) -> Result<CenterPoly, CliError> {
    let walked = envelope::oracle_weight(d, cut);
    envelope::express_in_center(&walked, d.order() as u32)
        .map_err(|e| CliError::Check(format!("the walk value did not land in the center: {e}")))
}

fn cmd_weight(args: WeightArgs) -> Result<ExitCode, CliError> {
    let code = read_input(&args.diagram, &args.file)?;
    let d = ChordDiagram::parse(&code).map_err(|e| CliError::Input(e.to_string()))?;
    if args.method != Method::Recurrence {
        if d.order() > 8 {
            return Err(CliError::Input(format!(
                "the enveloping-algebra walk is capped at order 8; \"{d}\" has order {}",
                d.order()
            )));
        }
        if args.cut > 0 && args.cut >= d.positions() {
            return Err(CliError::Input(format!(
                "cut {} is out of range: the diagram has {} endpoints",
                args.cut,
                d.positions()
            )));
        }
    }
    let finish = |p: &CenterPoly| {
        let q = if args.deframed {
            p.substitute_c_zero()
        } else {
            p.clone()
        };
        args.epsilon.apply(&q)
    };
    match args.method {
        Method::Recurrence => {
            let w = WeightSystem::new().weight_recurrence(&d);
            emit_poly(&finish(&w), args.format);
            Ok(ExitCode::SUCCESS)
        }
        Method::Oracle => {
            let w = oracle_value(&d, args.cut)?;
            emit_poly(&finish(&w), args.format);
            Ok(ExitCode::SUCCESS)
        }
        Method::Both => {
            let recurred = WeightSystem::new().weight_recurrence(&d);
            let walked = oracle_value(&d, args.cut)?;
            let agree = recurred == walked;
            match args.format {
                Format::Text => {
                    println!("recurrence: {}", finish(&recurred));
                    println!("oracle:     {}", finish(&walked));
                    println!("agreement:  {}", if agree { "yes" } else { "NO" });
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "recurrence": finish(&recurred).to_json(),
                        "oracle": finish(&walked).to_json(),
                        "agree": agree,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&value).expect("report JSON serializes")
                    );
                }
            }
            if agree {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn cmd_jacobi(args: JacobiArgs) -> Result<ExitCode, CliError> {
    let text = read_input(&args.diagram, &args.file)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    let j = JacobiDiagram::from_json(&value).map_err(|e| CliError::Input(e.to_string()))?;
    let resolution = j
        .stu_resolve()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let weight = WeightSystem::new()
        .weight_sum(&resolution)
        .map_err(|e| CliError::Check(e.to_string()))?;
    let finished = args.epsilon.apply(&weight);
    match args.format {
        Format::Text => {
            if args.dump_stu {
                println!("{}", resolution.render());
                println!("weight: {finished}");
            } else {
                println!("{finished}");
            }
        }
        Format::Json if args.dump_stu => {
            let rows: Vec<serde_json::Value> = resolution
                .terms()
                .map(|(d, q)| {
                    serde_json::json!({ "coeff": q.to_string(), "diagram": d.code() })
                })
                .collect();
            let value = serde_json::json!({
                "weight": finished.to_json(),
                "resolution": rows,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("report JSON serializes")
            );
        }
        Format::Json => emit_poly(&finished, Format::Json),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    if args.max_order == 0 || args.max_order > 6 {
        return Err(CliError::Input(format!(
            "supported orders are 1 through 6, got {}",
            args.max_order
        )));
    }
    let mut ws = WeightSystem::new();
    let mut sections: Vec<(usize, Vec<(String, CenterPoly)>)> = Vec::new();
    for order in 1..=args.max_order {
        let mut rows = Vec::new();
        for d in enumerate_canonical(order) {
            if args.indecomposable && !d.is_indecomposable() {
                continue;
            }
            rows.push((d.code(), args.epsilon.apply(&ws.weight_recurrence(&d))));
        }
        sections.push((order, rows));
    }
    match args.format {
        Format::Text => {
            for (order, rows) in &sections {
                println!("order {order} ({} diagram(s))", rows.len());
                let width = rows.iter().map(|(code, _)| code.len()).max().unwrap_or(0);
                for (code, w) in rows {
                    println!("  {code:<width$}  {w}");
                }
            }
        }
        Format::Json => {
            let value: Vec<serde_json::Value> = sections
                .iter()
                .map(|(order, rows)| {
                    let entries: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(code, w)| {
                            serde_json::json!({ "diagram": code, "weight": w.to_json() })
                        })
                        .collect();
                    serde_json::json!({ "order": order, "rows": entries })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(value))
                    .expect("table JSON serializes")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Centrality of the two polynomial generators inside the enveloping algebra.
fn center_report() -> CheckReport {
    let mut report = CheckReport::new("envelope-center");
    let mut failures = Vec::new();
    for (name, poly) in [("c", CenterPoly::c()), ("y", CenterPoly::y())] {
        if !envelope::is_central(&envelope::expand_center(&poly)) {
            failures.push(format!("{name} does not expand to a central element"));
        }
    }
    report.record(
        "the polynomial generators expand to central elements",
        2,
        failures,
    );
    report
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let reports: Vec<CheckReport> = match args.suite {
        Suite::Axioms => {
            let g = a1_epsilon();
            let casimir =
                check_casimir_conditions(&g).map_err(|e| CliError::Check(e.to_string()))?;
            let derived = check_derived_data(&g).map_err(|e| CliError::Check(e.to_string()))?;
            vec![
                check_color_axioms(&g),
                check_s_lie_axioms(&g),
                casimir,
                derived,
                center_report(),
            ]
        }
        Suite::FourTerm => vec![weights::check_four_term(args.max_order.unwrap_or(4))],
        Suite::Stu => vec![weights::check_stu_independence()],
        Suite::Cut => {
            let n = args.max_order.unwrap_or(4);
            vec![weights::check_cut_scan(n), weights::check_reflection(n)]
        }
        Suite::Deframe => {
            let n = args.max_order.unwrap_or(4);
            vec![weights::check_deframing(n, n + 1)]
        }
        Suite::Props => vec![weights::prop_reduction_checks()],
        Suite::Oracle => vec![weights::check_oracle_agreement(args.max_order.unwrap_or(4))],
        Suite::Tenrel => vec![envelope::check_tensor_relations(args.max_order.unwrap_or(2))],
    };
    match args.format {
        Format::Text => {
            for report in &reports {
                print!("{report}");
            }
        }
        Format::Json => {
            let value: Vec<serde_json::Value> = reports.iter().map(CheckReport::to_json).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(value))
                    .expect("report JSON serializes")
            );
        }
    }
    let report_only = args.suite == Suite::Cut;
    if report_only || reports.iter().all(CheckReport::passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
