//! Workbench front end: named-group catalog, verification suites and the
//! command-line dispatcher.

pub mod catalog;
pub mod report;
pub mod suites;

use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use sylowlab_core::filters::{self, candidate_scan, parse_extra_list};
use sylowlab_core::pipeline::{prove, validate_trace};
use sylowlab_core::sylow::count_sylow;
use sylowlab_core::{Caps, PermGroup};

use catalog::{builtin, parse_catalog, standard_catalog, CatalogEntry};
use report::{OutputMode, Table};
use suites::{RowStatus, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sylowlab",
    about = "Permutation-group workbench for Sylow subgroup counting and pseudo Sylow number derivations",
    disable_version_flag = true
)]
struct Cli {
    /// Emit tab-separated output instead of aligned columns.
    #[arg(long, global = true)]
    tsv: bool,
    /// Cap for brute-force element enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    cap_elements: usize,
    /// Cap for explicitly enumerated conjugation orbits.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_orbit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree, order and generators of a group.
    Info {
        /// Group reference: builtin:<spec> or file:<path>:<name>.
        group: String,
    },
    /// Full Sylow report for a group at a prime.
    Sylow {
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Catalog-wide verification sweeps.
    Lemmas {
        /// centalt, nc, cyc2, brodkey, frobenius or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Skip catalog groups above this order in the cyc2 sweep.
        #[arg(long, default_value_t = 2000)]
        max_order: u64,
    },
    /// Classify candidate Sylow counts n = 1 mod p up to a bound.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max: u64,
        /// File of known simple-group Sylow counts, one integer per line.
        #[arg(long)]
        extra: Option<String>,
    },
    /// Run the derivation engine on a hypothetical Sylow count.
    Prove {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Run every verification suite and aggregate the results.
    Selftest {
        #[arg(long, default_value_t = 2000)]
        max_order: u64,
    },
}

fn caps_from(cli: &Cli) -> Caps {
    Caps {
        elements: cli.cap_elements,
        orbit: cli.cap_orbit,
        ..Caps::default()
    }
}

fn mode_from(cli: &Cli) -> OutputMode {
    if cli.tsv {
        OutputMode::Tsv
    } else {
        OutputMode::Human
    }
}

/// Resolves `builtin:<spec>` or `file:<path>:<name>` to a group.
fn resolve_group(reference: &str) -> Result<(String, PermGroup), String> {
    if let Some(spec) = reference.strip_prefix("builtin:") {
        let group = builtin(spec).map_err(|e| e.to_string())?;
        return Ok((spec.trim().to_string(), group));
    }
    if let Some(rest) = reference.strip_prefix("file:") {
        let (path, name) = rest
            .rsplit_once(':')
            .ok_or_else(|| "file reference needs the form file:<path>:<name>".to_string())?;
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let entries = parse_catalog(&text).map_err(|e| format!("{path}: {e}"))?;
        let entry = entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| format!("{path} has no group named {name:?}"))?;
        let group = entry.build().map_err(|e| e.to_string())?;
        return Ok((name.to_string(), group));
    }
    Err(format!(
        "group reference {reference:?} must start with builtin: or file:"
    ))
}

fn catalog_for_suites() -> Vec<CatalogEntry> {
    standard_catalog()
}

fn suite_table(outcome: &SuiteOutcome, mode: OutputMode) -> String {
    let mut sorted: Vec<&suites::SuiteRow> = outcome.rows.iter().collect();
    sorted.sort_by(|a, b| (a.suite, &a.item).cmp(&(b.suite, &b.item)));
    let mut table = Table::new(vec!["suite", "item", "status", "detail"]);
    for row in sorted {
        table.push(vec![
            row.suite.to_string(),
            row.item.clone(),
            row.status.to_string(),
            row.detail.clone(),
        ]);
    }
    table.render(mode)
}

fn run_lemma_suites(
    which: &str,
    max_order: u64,
    caps: &Caps,
) -> Result<SuiteOutcome, String> {
    let catalog = catalog_for_suites();
    let outcome = match which {
        "centalt" => suites::centalt_suite(caps),
        "nc" => suites::nc_suite(&catalog, caps),
        "cyc2" => suites::cyc2_suite(&catalog, caps, max_order),
        "brodkey" => suites::brodkey_suite(&catalog, caps),
        "frobenius" => suites::frobenius_suite(&catalog, caps),
        "all" => suites::centalt_suite(caps)
            .merge(suites::nc_suite(&catalog, caps))
            .merge(suites::cyc2_suite(&catalog, caps, max_order))
            .merge(suites::brodkey_suite(&catalog, caps))
            .merge(suites::frobenius_suite(&catalog, caps)),
        other => {
            return Err(format!(
                "unknown suite {other:?}; expected centalt, nc, cyc2, brodkey, frobenius or all"
            ))
        }
    };
    Ok(outcome)
}

/// Executes one command line. Returns the exit status; report text goes to
/// `out`, diagnostics to `err`.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let caps = caps_from(&cli);
    let mode = mode_from(&cli);
    match &cli.command {
        Command::Info { group } => {
            let (name, group) = match resolve_group(group) {
                Ok(g) => g,
                Err(msg) => return usage_error(err, &msg),
            };
            let mut table = Table::new(vec!["field", "value"]);
            table.push(vec!["name".to_string(), name]);
            table.push(vec!["degree".to_string(), group.degree().to_string()]);
            table.push(vec!["order".to_string(), group.order().to_string()]);
            table.push(vec!["abelian".to_string(), group.is_abelian().to_string()]);
            let gens: Vec<String> = group
                .generators()
                .iter()
                .map(|g| {
                    let s = g.to_string();
                    if s.is_empty() {
                        "()".to_string()
                    } else {
                        s
                    }
                })
                .collect();
            table.push(vec![
                "generators".to_string(),
                if gens.is_empty() {
                    "(none)".to_string()
                } else {
                    gens.join(" ")
                },
            ]);
            let _ = write!(out, "{}", table.render(mode));
            EXIT_OK
        }
        Command::Sylow { group, p } => {
            if !filters::is_prime(*p) {
                return usage_error(err, &format!("{p} is not prime"));
            }
            let (name, group) = match resolve_group(group) {
                Ok(g) => g,
                Err(msg) => return usage_error(err, &msg),
            };
            let report = match count_sylow(&group, *p, &caps) {
                Ok(r) => r,
                Err(e) => return usage_error(err, &format!("sylow computation refused: {e}")),
            };
            let mut table = Table::new(vec![
                "group",
                "p",
                "sylow_order",
                "count",
                "normalizer_order",
                "p_core_order",
                "action_kernel_order",
            ]);
            table.push(vec![
                name,
                report.p.to_string(),
                report.sylow_order.to_string(),
                report.count.to_string(),
                report.normalizer_order.to_string(),
                report.p_core_order.to_string(),
                report.action_kernel_order.to_string(),
            ]);
            let _ = write!(out, "{}", table.render(mode));
            EXIT_OK
        }
        Command::Lemmas { suite, max_order } => {
            let outcome = match run_lemma_suites(suite, *max_order, &caps) {
                Ok(o) => o,
                Err(msg) => return usage_error(err, &msg),
            };
            let _ = write!(out, "{}", suite_table(&outcome, mode));
            let _ = writeln!(
                out,
                "total: {} passed, {} failed, {} skipped",
                outcome.passed(),
                outcome.failed(),
                outcome.skipped()
            );
            if outcome.failed() > 0 {
                EXIT_VERIFICATION_FAILURE
            } else {
                EXIT_OK
            }
        }
        Command::Scan { p, max, extra } => {
            if !filters::is_prime(*p) {
                return usage_error(err, &format!("{p} is not prime"));
            }
            let extra_counts = match extra {
                None => Vec::new(),
                Some(path) => {
                    let text = match fs::read_to_string(path) {
                        Ok(t) => t,
                        Err(e) => return usage_error(err, &format!("cannot read {path}: {e}")),
                    };
                    match parse_extra_list(&text) {
                        Ok(v) => v,
                        Err(e) => return usage_error(err, &format!("{path}: {e}")),
                    }
                }
            };
            let rows = candidate_scan(*p, *max, &extra_counts);
            let mut table = Table::new(vec![
                "n",
                "cong_mod_p",
                "phall",
                "mhall",
                "witness",
                "frobenius",
                "status",
            ]);
            for v in rows {
                table.push(vec![
                    v.n.to_string(),
                    v.cong_mod_p.to_string(),
                    v.phall_solvable.to_string(),
                    v.mhall_witness.is_some().to_string(),
                    match &v.mhall_witness {
                        Some(w) if w.is_empty() => "1".to_string(),
                        Some(w) => w
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join("*"),
                        None => "-".to_string(),
                    },
                    v.frobenius_class.to_string(),
                    v.status.to_string(),
                ]);
            }
            let _ = write!(out, "{}", table.render(mode));
            EXIT_OK
        }
        Command::Prove { p, n } => {
            if !filters::is_prime(*p) {
                return usage_error(err, &format!("{p} is not prime"));
            }
            if *n == 0 {
                return usage_error(err, "n must be positive");
            }
            let trace = prove(*p, *n);
            if let Err(e) = validate_trace(&trace) {
                let _ = writeln!(err, "trace failed re-validation: {e}");
                return EXIT_VERIFICATION_FAILURE;
            }
            let _ = writeln!(out, "{trace}");
            EXIT_OK
        }
        Command::Selftest { max_order } => {
            let catalog = catalog_for_suites();
            let named: Vec<(&str, SuiteOutcome)> = vec![
                ("congruence", suites::congruence_suite(&catalog, &caps)),
                ("dihedral", suites::dihedral_suite(&caps)),
                ("centalt", suites::centalt_suite(&caps)),
                ("nc", suites::nc_suite(&catalog, &caps)),
                ("cyc2", suites::cyc2_suite(&catalog, &caps, *max_order)),
                ("brodkey", suites::brodkey_suite(&catalog, &caps)),
                ("frobenius", suites::frobenius_suite(&catalog, &caps)),
                ("crossval", suites::crossval_suite(&catalog, &caps, 200)),
                ("soundness", suites::soundness_suite(&catalog, &caps)),
            ];
            let mut table = Table::new(vec!["suite", "passed", "failed", "skipped"]);
            let mut failed_total = 0usize;
            for (name, outcome) in &named {
                table.push(vec![
                    name.to_string(),
                    outcome.passed().to_string(),
                    outcome.failed().to_string(),
                    outcome.skipped().to_string(),
                ]);
                failed_total += outcome.failed();
            }
            let _ = write!(out, "{}", table.render(mode));
            if failed_total > 0 {
                for (_, outcome) in &named {
                    for row in &outcome.rows {
                        if row.status == RowStatus::Fail {
                            let _ = writeln!(
                                err,
                                "FAIL {} {}: {}",
                                row.suite, row.item, row.detail
                            );
                        }
                    }
                }
                EXIT_VERIFICATION_FAILURE
            } else {
                EXIT_OK
            }
        }
    }
}

fn usage_error(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}
