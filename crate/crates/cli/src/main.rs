//! Command line front end: class enumerations, sequence and polynomial
//! tables, and named verification suites with JSON reports.
//!
//! Exit codes: 0 when everything passed, 1 when a verification check
//! failed, 2 on usage or cap errors.

mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use suites::{all_pass, Caps, Params, Suite, SuiteReport};
use webperm_core::chord::b_plus_capped;
use webperm_core::grid::tilde_webs_capped;
use webperm_core::perm::{enumerate_capped, is_andre, is_up_down};
use webperm_core::poly::{d_web_capped, eulerian_capped, gamma_expand};
use webperm_core::seq::{entringer_rows, SeidelTriangle};
use webperm_core::Permutation;

const HARD_MAX_N: usize = 10;
const HARD_MAX_CHORDS: usize = 9;
const MAX_TABLE_ROWS: usize = 64;

#[derive(Parser)]
#[command(
    name = "webperm",
    version,
    about = "Exact enumeration and verification for web permutations"
)]
struct Cli {
    /// Largest permutation size commands may touch (hard limit 10).
    #[arg(long, global = true, default_value_t = 8)]
    max_n: usize,
    /// Largest chord count for expansion work (hard limit 9).
    #[arg(long, global = true, default_value_t = 6)]
    max_chords: usize,
    /// Lifts the hard limits; sizes beyond them can run for a very long
    /// time.
    #[arg(long, global = true)]
    unsafe_no_cap: bool,
    /// Worker threads for verification suites; 0 picks a default.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prints every member of a permutation class, one per line.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        /// Permutation size; must stay within --max-n.
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Prints rows 1..=bound of a numeric or polynomial table.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Inclusive row bound.
        bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs a named verification suite and prints a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    /// Permutations whose cycles all read as Andre words.
    Web,
    /// Resolution leaves of the identity with the adjacent matching.
    TildeWeb,
    /// Permutations whose cycles all read as up-down words.
    Delta,
    /// Andre words on 1..=n.
    Andre,
    /// Up-down words on 1..=n.
    Updown,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    /// Boustrophedon triangle rows.
    Seidel,
    /// Zigzag refinement rows.
    Entringer,
    /// First-letter counts of adjacent-matching leaves.
    F,
    /// Necklace multiplicities from chord expansion.
    BPlus,
    /// Gamma coefficients of the descent polynomial (integers).
    Gamma,
    /// Gamma building blocks as polynomials in t and alpha.
    D,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct TableRow {
    row: usize,
    values: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    if !cli.unsafe_no_cap {
        if cli.max_n > HARD_MAX_N {
            return Err(format!(
                "--max-n {} exceeds the hard limit {HARD_MAX_N}; pass --unsafe-no-cap to override",
                cli.max_n
            ));
        }
        if cli.max_chords > HARD_MAX_CHORDS {
            return Err(format!(
                "--max-chords {} exceeds the hard limit {HARD_MAX_CHORDS}; \
                 pass --unsafe-no-cap to override",
                cli.max_chords
            ));
        }
    }
    match cli.command {
        Command::Enumerate { kind, n, format } => {
            let members = class_members(kind, n, cli.max_n)?;
            emit_list(&members, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            kind,
            bound,
            format,
        } => {
            let rows = table_rows(kind, bound, &cli)?;
            emit_table(&rows, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => verify(suite, &cli),
    }
}

fn core_err(e: webperm_core::Error) -> String {
    e.to_string()
}

fn class_members(kind: EnumKind, n: usize, cap: usize) -> Result<Vec<String>, String> {
    let filtered = |keep: fn(&Permutation) -> bool| -> Result<Vec<String>, String> {
        Ok(enumerate_capped(n, cap)
            .map_err(core_err)?
            .filter(keep)
            .map(|s| s.to_string())
            .collect())
    };
    match kind {
        EnumKind::Web => filtered(|s| s.is_web()),
        EnumKind::Delta => filtered(|s| s.is_cycle_up_down()),
        EnumKind::Andre => filtered(|s| is_andre(s.oneline())),
        EnumKind::Updown => filtered(|s| is_up_down(s.oneline())),
        EnumKind::TildeWeb => Ok(tilde_webs_capped(n, cap)
            .map_err(core_err)?
            .iter()
            .map(ToString::to_string)
            .collect()),
    }
}

fn emit_list(lines: &[String], format: Format) {
    match format {
        Format::Text => {
            for line in lines {
                println!("{line}");
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string(lines).expect("a string list serializes")
        ),
    }
}

fn table_rows(kind: TableKind, bound: usize, cli: &Cli) -> Result<Vec<TableRow>, String> {
    let within_n = |label: &str| -> Result<(), String> {
        if bound > cli.max_n {
            Err(format!(
                "{label} table bound {bound} exceeds --max-n {}",
                cli.max_n
            ))
        } else {
            Ok(())
        }
    };
    let mut rows = Vec::new();
    match kind {
        TableKind::Seidel => {
            if !cli.unsafe_no_cap && bound > MAX_TABLE_ROWS {
                return Err(format!(
                    "bound {bound} exceeds the table limit {MAX_TABLE_ROWS}; \
                     pass --unsafe-no-cap to override"
                ));
            }
            let triangle = SeidelTriangle::with_rows(bound);
            for n in 1..=bound {
                let values = triangle
                    .row(n)
                    .map_err(core_err)?
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                rows.push(TableRow { row: n, values });
            }
        }
        TableKind::Entringer => {
            if !cli.unsafe_no_cap && bound > MAX_TABLE_ROWS {
                return Err(format!(
                    "bound {bound} exceeds the table limit {MAX_TABLE_ROWS}; \
                     pass --unsafe-no-cap to override"
                ));
            }
            for (i, row) in entringer_rows(bound).iter().enumerate() {
                // Skip the structural zero at index 0.
                let values = row[1..].iter().map(ToString::to_string).collect();
                rows.push(TableRow { row: i + 1, values });
            }
        }
        TableKind::F => {
            within_n("first-letter")?;
            for n in 1..=bound {
                let count = suites::first_letter_counts(n, cli.max_n).map_err(core_err)?;
                let values = (1..=n).map(|k| count[k].to_string()).collect();
                rows.push(TableRow { row: n, values });
            }
        }
        TableKind::BPlus => {
            if bound + 1 > cli.max_chords {
                return Err(format!(
                    "necklace table bound {bound} needs {} chords, exceeding --max-chords {}",
                    bound + 1,
                    cli.max_chords
                ));
            }
            for n in 1..=bound {
                let values = (0..=n)
                    .map(|k| {
                        b_plus_capped(n, k, cli.max_chords)
                            .map(|v| v.to_string())
                            .map_err(core_err)
                    })
                    .collect::<Result<_, _>>()?;
                rows.push(TableRow { row: n, values });
            }
        }
        TableKind::Gamma => {
            within_n("gamma")?;
            for n in 1..=bound {
                let descents = eulerian_capped(n, cli.max_n).map_err(core_err)?;
                let values = gamma_expand(&descents, n)
                    .map_err(core_err)?
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                rows.push(TableRow { row: n, values });
            }
        }
        TableKind::D => {
            within_n("gamma block")?;
            for n in 1..=bound {
                let values = (0..=(n - 1) / 2)
                    .map(|i| {
                        d_web_capped(n, i as u32, cli.max_n)
                            .map(|p| p.to_string())
                            .map_err(core_err)
                    })
                    .collect::<Result<_, _>>()?;
                rows.push(TableRow { row: n, values });
            }
        }
    }
    Ok(rows)
}

fn emit_table(rows: &[TableRow], format: Format) {
    match format {
        Format::Text => {
            for row in rows {
                println!("{}", row.values.join(", "));
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string(rows).expect("a table serializes")
        ),
    }
}

fn verify(suite: Suite, cli: &Cli) -> Result<ExitCode, String> {
    let caps = Caps {
        max_n: cli.max_n,
        max_chords: cli.max_chords,
    };
    let started = Instant::now();
    let checks = if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| suites::run(suites::plan(suite, caps)))
    } else {
        suites::run(suites::plan(suite, caps))
    };
    let passed = all_pass(&checks);
    let report = SuiteReport {
        suite: suite.name(),
        params: Params {
            max_n: caps.max_n,
            max_chords: caps.max_chords,
        },
        checks,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("a report serializes")
    );
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
