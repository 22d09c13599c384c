//! `drgdist` command-line front end.
//!
//! Every subcommand is a thin adapter over the library. Output goes to the
//! supplied writers so the whole tool can be driven from tests. Exit codes:
//! `0` success, `1` parse/usage error or failed check, `2` infeasible array.

use std::io::Write;

use clap::{Parser, Subcommand};

use crate::conjectures::{check_corpus_with_tol, CorpusRecord, LineOutcome};
use crate::error::Error;
use crate::families::{Family, FAMILY_NAMES};
use crate::intersection_array::parse_intersection_array;
use crate::oracle::{check_graph, EmbeddingCheck, GraphKind, GRAPH_KINDS};
use crate::report::{render_bound_table, Report};
use crate::tables::{evaluate_table, sig6, value_text, TableResult, TABLE_IDS};
use crate::tol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "drgdist", version, about = "Least Euclidean distortion of distance-regular graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Relative tolerance for certification and comparisons.
    #[arg(long, global = true, default_value_t = tol::REL, value_name = "REL")]
    pub tol: f64,
    /// Print the full (r, j) bound table.
    #[arg(long = "all-r", global = true)]
    pub all_r: bool,
    /// Corpus: exit 0 even when lines fail or are malformed.
    #[arg(long = "keep-going", global = true)]
    pub keep_going: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one intersection array, e.g. "{3,2;1,1}".
    Analyze { array: String },
    /// Check every array in a corpus file (one `[name :] {…}` per line).
    Corpus { path: String },
    /// Analyze a named family member and compare with its closed form.
    Family {
        name: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Build a small explicit graph and measure its spectral embedding.
    Oracle {
        kind: String,
        params: Vec<String>,
        /// Eigenvalue index in descending order.
        #[arg(long, default_value_t = 1)]
        theta: usize,
    },
    /// Recompute a reference table: antipodal, antipodal-bipartite, classical, classical-negative or all.
    Table { id: String },
    /// List family names and oracle graph kinds.
    List,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        let _ = writeln!(err, "error: --tol must lie in (0, 1)");
        return EXIT_FAILURE;
    }
    let result = match &cli.command {
        Command::Analyze { array } => cmd_analyze(&cli, array, out),
        Command::Corpus { path } => cmd_corpus(&cli, path, out),
        Command::Family { name, params } => cmd_family(&cli, name, params, out),
        Command::Oracle { kind, params, theta } => cmd_oracle(&cli, kind, params, *theta, out),
        Command::Table { id } => cmd_table(&cli, id, out),
        Command::List => cmd_list(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

fn emit_report(cli: &Cli, report: &Report, out: &mut dyn Write) -> CmdResult {
    if cli.json {
        writeln!(out, "{}", report.to_json()).map_err(io)?;
    } else {
        write!(out, "{}", report.render(cli.all_r)).map_err(io)?;
    }
    Ok(if report.feasibility.passes() { EXIT_OK } else { EXIT_INFEASIBLE })
}

pub fn cmd_analyze(cli: &Cli, array: &str, out: &mut dyn Write) -> CmdResult {
    let ia = parse_intersection_array(array)?;
    let report = Report::build(array, &ia, cli.tol)?;
    emit_report(cli, &report, out)
}

pub fn cmd_family(cli: &Cli, name: &str, params: &[String], out: &mut dyn Write) -> CmdResult {
    let fam = Family::parse(name, params)?;
    let ia = fam.intersection_array()?;
    let mut report = Report::build(fam.label(), &ia, cli.tol)?;
    report.closed_form_c2_sq = Some(fam.closed_form_c2_sq()?);
    emit_report(cli, &report, out)
}

pub fn cmd_corpus(cli: &Cli, path: &str, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let (records, summary) = check_corpus_with_tol(&text, cli.tol);
    for rec in &records {
        if cli.json {
            writeln!(out, "{}", serde_json::to_string(rec).expect("record serializes")).map_err(io)?;
        } else {
            write!(out, "{}", render_record(rec, cli.all_r)).map_err(io)?;
        }
    }
    if cli.json {
        let summary_line = serde_json::json!({ "summary": summary });
        writeln!(out, "{summary_line}").map_err(io)?;
    } else {
        writeln!(
            out,
            "summary: {} lines, {} analyzed, {} errors, {} skipped (d = 1), {} certified, {} infeasible; \
             conj1 {}, conj2 {}, conj3 {}, all {} of {}",
            summary.lines,
            summary.analyzed,
            summary.errors,
            summary.skipped,
            summary.certified,
            summary.infeasible,
            summary.conj1_pass,
            summary.conj2_pass,
            summary.conj3_pass,
            summary.all_pass,
            summary.analyzed - summary.skipped,
        )
        .map_err(io)?;
        if !summary.failing_lines.is_empty() {
            let lines: Vec<String> = summary.failing_lines.iter().map(|l| l.to_string()).collect();
            writeln!(out, "failing lines: {}", lines.join(", ")).map_err(io)?;
        }
    }
    Ok(if summary.clean() || cli.keep_going { EXIT_OK } else { EXIT_FAILURE })
}

fn render_record(rec: &CorpusRecord, all_r: bool) -> String {
    let name = rec.name.as_deref().map_or(String::new(), |n| format!("{n} "));
    let head = format!("line {:>4}  {name}{}", rec.line, rec.input);
    match &rec.outcome {
        LineOutcome::Error(e) => format!("{head}\n    ERROR {e}\n"),
        LineOutcome::Analyzed(a) => {
            let d = &a.distortion;
            let c2 = if d.certified {
                format!("c2^2 = {} (certified, r = {})", value_text(d.embedding_distortion_sq), d.best_r)
            } else {
                format!("c2^2 in [{}, {}]", sig6(d.best_lower_bound_sq), sig6(d.embedding_distortion_sq))
            };
            let feas = if a.feasibility.passes() {
                String::new()
            } else {
                format!("  infeasible ({})", a.feasibility.failures().join(", "))
            };
            let mut s = match &a.verdict {
                None => format!("{head}\n    {c2}  conjectures skipped (d = 1){feas}\n"),
                Some(v) if v.all_hold() => format!("{head}\n    {c2}  all conjectures hold{feas}\n"),
                Some(v) => {
                    let mut msg = format!("{head}\n    {c2}  FAIL:");
                    if !v.conj1_holds {
                        msg += &format!(" conj1 (argmin r = {})", v.conj1_argmin_r);
                    }
                    if !v.conj2_holds {
                        let (r, j) = v.conj2_witness.expect("failing conj2 has a witness");
                        msg += &format!(" conj2 (witness r = {r}, j = {j})");
                    }
                    if !v.conj3_holds {
                        msg += &format!(" conj3 (most contracted r = {})", d.most_contracted_r);
                    }
                    if !v.antipodal_consistent {
                        msg += " antipodal-consistency";
                    }
                    msg + &feas + "\n" + &render_bound_table(d)
                }
            };
            if all_r && a.verdict.as_ref().is_none_or(|v| v.all_hold()) {
                s += &render_bound_table(d);
            }
            s
        }
    }
}

pub fn cmd_oracle(cli: &Cli, kind: &str, params: &[String], theta: usize, out: &mut dyn Write) -> CmdResult {
    let kind = GraphKind::parse(kind, params)?;
    let check = check_graph(&kind, theta)?;
    if cli.json {
        writeln!(out, "{}", serde_json::to_string(&check).expect("check serializes")).map_err(io)?;
    } else {
        write!(out, "{}", render_check(&check)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn render_check(c: &EmbeddingCheck) -> String {
    let join = |xs: &[f64]| xs.iter().map(|&x| sig6(x)).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    for (key, value) in [
        ("graph", c.graph.clone()),
        ("array", c.array.clone()),
        ("vertices", c.n.to_string()),
        ("theta", format!("{} (index {}, multiplicity {})", sig6(c.theta), c.theta_index, c.multiplicity)),
        ("predicted S_r", join(&c.predicted_s)),
        ("realized S_r", join(&c.realized_s)),
        ("max rel deviation", format!("{:.3e}", c.max_rel_deviation)),
        ("expansion", sig6(c.expansion)),
        ("distortion^2", value_text(c.distortion_sq)),
        ("eigenvector cosines", join(&c.eigen_cosines)),
        ("recurrence cosines", join(&c.recurrence_cosines)),
        ("cosine deviation", format!("{:.3e}", c.cosine_deviation)),
    ] {
        s += &format!("{key:<24}{value}\n");
    }
    s
}

pub fn cmd_table(cli: &Cli, id: &str, out: &mut dyn Write) -> CmdResult {
    let ids: Vec<&str> = if id == "all" { TABLE_IDS.to_vec() } else { vec![id] };
    let mut ok = true;
    for id in ids {
        let table = evaluate_table(id, cli.tol)?;
        ok &= table.all_match();
        if cli.json {
            writeln!(out, "{}", serde_json::to_string(&table).expect("table serializes")).map_err(io)?;
        } else {
            write!(out, "{}", render_table(&table)).map_err(io)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn render_table(t: &TableResult) -> String {
    let mut s = format!("table {}: {}\n", t.id, t.title);
    let label_w = t.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(5);
    let array_w = t.rows.iter().map(|r| r.array.len()).max().unwrap_or(0).max(5);
    s += &format!(
        "{:<label_w$}  {:<array_w$}  {:>12}  {:>12}  {:>10}  {}\n",
        "row", "array", "expected", "computed", "rel err", "status"
    );
    for r in &t.rows {
        let status = match (r.matches, r.certified) {
            (true, _) => "match",
            (false, false) => "MISMATCH (not certified)",
            (false, true) => "MISMATCH",
        };
        s += &format!(
            "{:<label_w$}  {:<array_w$}  {:>12}  {:>12}  {:>10.2e}  {}\n",
            r.label, r.array, r.expected_text, r.computed_text, r.rel_error, status
        );
    }
    let matched = t.rows.iter().filter(|r| r.matches).count();
    s += &format!("{matched}/{} rows match\n", t.rows.len());
    s
}

fn cmd_list(out: &mut dyn Write) -> CmdResult {
    writeln!(out, "families (drgdist family <name> <params…>):").map_err(io)?;
    for (name, params) in FAMILY_NAMES {
        writeln!(out, "  {name:<24}{params}").map_err(io)?;
    }
    writeln!(out, "oracle graphs (drgdist oracle <kind> <params…>):").map_err(io)?;
    for (name, params) in GRAPH_KINDS {
        writeln!(out, "  {name:<24}{params}").map_err(io)?;
    }
    writeln!(out, "tables: {}", TABLE_IDS.join(", ")).map_err(io)?;
    Ok(EXIT_OK)
}
