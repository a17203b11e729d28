use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use h4audit::audit::{run_full_audit, run_scan};
use h4audit::groups::{cross_check, exceptional_table, export_csv, order, parse_descriptor};
use h4audit::params::{admissible, Admission, PremiseId, PremiseSet};
use h4audit::selftest::run_selftest;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "h4audit", version, about = "Exact-arithmetic audit of the Aschbacher-class elimination for the H4 Hecke image")]
struct Cli {
    /// Output format; `csv` is accepted by `table` only.
    #[arg(long, global = true, value_enum, env = "H4AUDIT_FORMAT", default_value = "text")]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Audit one parameter point (p, e).
    Audit {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        e: u64,
        /// Withdraw a premise (repeatable).
        #[arg(long, value_parser = parse_premise)]
        withdraw: Vec<PremiseId>,
    },
    /// Audit every admissible point with q <= q_max.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=h4audit::field::FIELD_SIZE_LIMIT))]
        q_max: u64,
        /// Worker threads for the fan-out.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
        jobs: u32,
        #[arg(long, value_parser = parse_premise)]
        withdraw: Vec<PremiseId>,
    },
    /// Exact order of a group descriptor such as `SU(5,11)` or `2.A8`.
    Order { descriptor: String },
    /// Dump the table of exceptional quasisimple groups.
    Table,
    /// Run the embedded oracle-equivalence suite.
    Selftest,
}

fn parse_premise(s: &str) -> Result<PremiseId, String> {
    s.parse::<PremiseId>().map_err(|e| e.to_string())
}

fn premises(withdrawn: &[PremiseId]) -> PremiseSet {
    withdrawn.iter().fold(PremiseSet::default(), |set, &id| set.withdraw(id))
}

struct Outcome {
    body: String,
    code: u8,
}

fn usage(message: impl std::fmt::Display) -> Result<Outcome, String> {
    Err(message.to_string())
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table) {
        return usage("--format csv is only available for `table`");
    }
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Audit { p, e, withdraw } => {
            let admission = admissible(*p, *e).map_err(|err| err.to_string())?;
            match admission {
                Admission::Rejected(rejection) => {
                    let body = if json_out {
                        json_text(&json!({
                            "status": "rejected",
                            "p": p,
                            "e": e,
                            "rejection": rejection,
                            "message": rejection.to_string(),
                        }))
                    } else {
                        format!("point: p={p} e={e}\nrejected: {rejection}\n")
                    };
                    Ok(Outcome { body, code: EXIT_NEGATIVE })
                }
                Admission::Accepted(pt) => {
                    let report = run_full_audit(&pt, &premises(withdraw));
                    let body = if json_out { report.to_json() + "\n" } else { report.to_text() };
                    let code = if report.is_concluded() { EXIT_OK } else { EXIT_NEGATIVE };
                    Ok(Outcome { body, code })
                }
            }
        }
        Command::Scan { q_max, jobs, withdraw } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(*jobs as usize)
                .build()
                .map_err(|err| err.to_string())?;
            let summary = pool.install(|| run_scan(*q_max, &premises(withdraw))).map_err(|err| err.to_string())?;
            let body = if json_out { summary.to_json() + "\n" } else { summary.to_text() };
            let code = if summary.all_concluded { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome { body, code })
        }
        Command::Order { descriptor } => {
            let spec = parse_descriptor(descriptor).map_err(|err| err.to_string())?;
            let value = order(&spec).map_err(|err| err.to_string())?;
            let body = if json_out {
                json_text(&json!({ "group": spec.to_string(), "order": value.to_string() }))
            } else {
                format!("{value}\n")
            };
            Ok(Outcome { body, code: EXIT_OK })
        }
        Command::Table => {
            let rows = exceptional_table();
            let all_ok = rows.iter().all(cross_check);
            let body = match cli.format {
                Format::Csv => export_csv(&rows),
                Format::Json => {
                    let values: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|row| {
                            let mut v = serde_json::to_value(row).expect("rows serialize");
                            v["cross_check"] = json!(cross_check(row));
                            v
                        })
                        .collect();
                    json_text(&json!(values))
                }
                Format::Text => table_text(&rows),
            };
            Ok(Outcome { body, code: if all_ok { EXIT_OK } else { EXIT_NEGATIVE } })
        }
        Command::Selftest => {
            let cases = run_selftest();
            let passed = cases.iter().all(|c| c.passed);
            let body = if json_out {
                json_text(&json!({ "passed": passed, "cases": cases }))
            } else {
                let mut out = String::new();
                for c in &cases {
                    let state = if c.passed { "pass" } else { "FAIL" };
                    out += &format!("{state} {} ({} checked)", c.name, c.checked);
                    if !c.detail.is_empty() {
                        out += &format!(": {}", c.detail);
                    }
                    out.push('\n');
                }
                out += if passed { "selftest: pass\n" } else { "selftest: FAIL\n" };
                out
            };
            Ok(Outcome { body, code: if passed { EXIT_OK } else { EXIT_NEGATIVE } })
        }
    }
}

fn table_text(rows: &[h4audit::groups::ExceptionalTableRow]) -> String {
    let orders: Vec<String> = rows.iter().map(|r| r.order.to_string()).collect();
    let names: Vec<String> = rows.iter().map(|r| r.group.to_string()).collect();
    let ow = orders.iter().map(String::len).max().unwrap_or(0).max("order".len());
    let nw = names.iter().map(String::len).max().unwrap_or(0).max("group".len());
    let lw = rows.iter().map(|r| r.ell_condition.chars().count()).max().unwrap_or(0).max("ell".len());
    let fw = rows.iter().map(|r| r.field_condition.len()).max().unwrap_or(0).max("field".len());
    let mut out = format!("{:>3}  {:<nw$}  {:<lw$}  {:<fw$}  {:>ow$}  check\n", "#", "group", "ell", "field", "order");
    for ((row, name), ord) in rows.iter().zip(&names).zip(&orders) {
        // Pad by characters: the ell column contains a multibyte sign.
        let ell_pad = lw - row.ell_condition.chars().count();
        out += &format!(
            "{:>3}  {:<nw$}  {}{}  {:<fw$}  {:>ow$}  {}\n",
            row.index,
            name,
            row.ell_condition,
            " ".repeat(ell_pad),
            row.field_condition,
            ord,
            if cross_check(row) { "ok" } else { "MISMATCH" }
        );
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.body),
        None => io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
