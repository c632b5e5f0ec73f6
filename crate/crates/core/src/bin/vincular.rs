//! Command-line front end: expand series, run enumeration counts, execute
//! the verification harness, and list the catalog.
//!
//! Exit codes: 0 = success (for `verify`: every observed status equals its
//! pinned expectation), 1 = unexpected verification mismatch, 2 = usage or
//! parse error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use vincular::closed_forms::{
    build_catalog, series_for_pattern, CatalogEntry, F_G_HORIZON, H_PHI_HORIZON,
};
use vincular::enumerate::{count_avoiders_matching, count_exactly_one_matching, Family};
use vincular::pattern::{parse_pattern, PatternMatcher};
use vincular::verify::{run_verification, EntryFilter};

#[derive(Parser)]
#[command(
    name = "vincular",
    version,
    about = "Exact counting of 1-3-2-restricted permutations under vincular patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a counting series and print its exact coefficients
    Series {
        /// Counting family: F, G, H or PHI (with --pattern)
        #[arg(long)]
        family: Option<String>,
        /// Pattern in the dash grammar, e.g. "1-23"
        #[arg(long)]
        pattern: Option<String>,
        /// Catalog entry or group id, e.g. "G.g21" (narrow with --k/--d/--head)
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Two-letter head for parameterized families: 12, 1-2, 21 or 2-1
        #[arg(long)]
        head: Option<String>,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Enumerate a single count by brute force
    Count {
        #[arg(long)]
        family: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        /// Enumerate past the oracle horizon (may be slow)
        #[arg(long)]
        force: bool,
    },
    /// Check every catalog formula against enumeration
    Verify {
        /// Verify the whole catalog
        #[arg(long)]
        all: bool,
        /// Verify one entry or group id
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        head: Option<String>,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Cap the enumeration bound of every entry
        #[arg(long)]
        max_n: Option<usize>,
        /// Write the report here instead of standard output
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List catalog entry ids with their formula references
    Catalog,
}

fn main() -> ExitCode {
    // Die quietly when output is piped into `head` and the pipe closes.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Series { family, pattern, entry, k, d, head, order, format } => {
            cmd_series(family, pattern, entry, k, d, head, order, format)
        }
        Command::Count { family, pattern, n, force } => cmd_count(&family, &pattern, n, force),
        Command::Verify { all, entry, pattern, k, d, head, order, max_n, report, format } => {
            cmd_verify(all, entry, pattern, k, d, head, order, max_n, report, format)
        }
        Command::Catalog => {
            cmd_catalog();
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn horizon_of(family: Family) -> usize {
    match family {
        Family::F | Family::G | Family::Mixed => F_G_HORIZON,
        Family::H | Family::Phi => H_PHI_HORIZON,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    family: Option<String>,
    pattern: Option<String>,
    entry: Option<String>,
    k: Option<u32>,
    d: Option<u32>,
    head: Option<String>,
    order: usize,
    format: Format,
) -> Result<ExitCode, String> {
    let catalog = build_catalog();
    let (series, family_name, pattern_text, source) = if let Some(entry_id) = entry {
        let filter = EntryFilter { entry: Some(entry_id.clone()), pattern, k, d, head };
        let picked: Vec<&CatalogEntry> = catalog.iter().filter(|e| filter.matches(e)).collect();
        match picked.as_slice() {
            [] => return Err(format!("unknown entry {entry_id:?}")),
            [one] => {
                let series = one.closed_form(order).map_err(|e| e.to_string())?;
                (
                    series,
                    one.family.to_string(),
                    one.pattern.to_string(),
                    format!("closed-form:{}", one.id),
                )
            }
            many => {
                let ids: Vec<&str> = many.iter().map(|e| e.id.as_str()).collect();
                return Err(format!(
                    "entry {entry_id:?} is ambiguous; narrow with --k/--d/--head/--pattern: {}",
                    ids.join(", ")
                ));
            }
        }
    } else {
        let family: Family = family
            .ok_or("either --entry or --family with --pattern is required")?
            .parse()?;
        let text = pattern.ok_or("--pattern is required with --family")?;
        let pat = parse_pattern(&text).map_err(|e| e.to_string())?;
        let (series, source) =
            series_for_pattern(&catalog, family, &pat, order).map_err(|e| e.to_string())?;
        (series, family.to_string(), pat.to_string(), source)
    };

    match format {
        Format::Tsv => {
            println!("n\tcoeff");
            for n in 0..=series.order() {
                println!("{n}\t{}", series.coeff_string(n));
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "family": family_name,
                "pattern": pattern_text,
                "order": series.order(),
                "coefficients": series.coeff_strings(),
                "source": source,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(family: &str, pattern: &str, n: usize, force: bool) -> Result<ExitCode, String> {
    let family: Family = family.parse()?;
    if family == Family::Mixed {
        return Err("family MIXED has no direct count command".into());
    }
    let pat = parse_pattern(pattern).map_err(|e| e.to_string())?;
    let horizon = horizon_of(family);
    if n > horizon && !force {
        return Err(format!(
            "n = {n} exceeds the {family} oracle horizon {horizon}; pass --force to enumerate anyway"
        ));
    }
    let matcher = PatternMatcher::new(&pat);
    let start = Instant::now();
    let count = match family {
        Family::F => count_avoiders_matching(n, |p| matcher.avoids(p)),
        Family::G => count_avoiders_matching(n, |p| matcher.contains_exactly_once(p)),
        Family::H => count_exactly_one_matching(n, |p| matcher.avoids(p)),
        Family::Phi => count_exactly_one_matching(n, |p| matcher.contains_exactly_once(p)),
        Family::Mixed => unreachable!(),
    };
    let elapsed = start.elapsed();
    println!("{count}");
    eprintln!("family={family} pattern={pat} n={n} elapsed={:.3}s", elapsed.as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    all: bool,
    entry: Option<String>,
    pattern: Option<String>,
    k: Option<u32>,
    d: Option<u32>,
    head: Option<String>,
    order: usize,
    max_n: Option<usize>,
    report_path: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, String> {
    if !all && entry.is_none() && pattern.is_none() {
        return Err("select entries with --all, --entry or --pattern".into());
    }
    let catalog = build_catalog();
    let filter = EntryFilter { entry, pattern, k, d, head };
    let report = run_verification(&catalog, &filter, order, max_n).map_err(|e| e.to_string())?;
    if report.entries.is_empty() {
        return Err("no catalog entries match the selection".into());
    }

    for e in &report.entries {
        let verdict = if e.observed_status == e.expected_status { "ok" } else { "UNEXPECTED" };
        let detail = match e.first_mismatch_n {
            Some(n) => format!("first mismatch at n={n}"),
            None => format!("agrees to n={}", e.max_n),
        };
        eprintln!(
            "{verdict:<10} {:<28} {:<19} {detail} [{}]",
            e.entry_id, e.observed_status.to_string(), e.pattern
        );
    }

    let body = match format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    match report_path {
        Some(path) => std::fs::write(&path, &body)
            .map_err(|e| format!("cannot write report {}: {e}", path.display()))?,
        None => print!("{body}"),
    }

    let failures =
        report.entries.iter().filter(|e| e.observed_status != e.expected_status).count();
    if failures == 0 {
        eprintln!("verified {} entries, all statuses as pinned", report.entries.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "{failures} of {} entries diverge from their pinned status",
            report.entries.len()
        );
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_catalog() {
    let catalog = build_catalog();
    println!("id\tfamily\tpattern\tbound\texpected_status\treference");
    for e in &catalog {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.id, e.family, e.pattern, e.bound, e.expected_status, e.reference
        );
    }
}
