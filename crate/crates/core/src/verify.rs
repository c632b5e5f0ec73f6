//! The verification harness: run catalog entries against enumeration and
//! report per-entry agreement.
//!
//! Every selected entry is expanded three ways where possible (closed form,
//! recursion engine, enumeration) and compared coefficient by coefficient,
//! exactly, up to the entry's enumeration bound. An entry whose routes all
//! agree is observed `expected-match`; any divergence makes it
//! `documented-erratum` with the first differing `n` recorded. A run
//! succeeds when every observed status equals the pinned expected status, so
//! known source-formula discrepancies are assertions rather than failures.

use crate::closed_forms::{CatalogEntry, CfError, Status};
use crate::enumerate::{count_series, CountTable, Family};
use crate::series::QSeries;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Selection predicate for catalog entries, as exposed by the CLI flags.
#[derive(Debug, Clone, Default)]
pub struct EntryFilter {
    /// Matches either a full instance id or a group id.
    pub entry: Option<String>,
    pub pattern: Option<String>,
    pub k: Option<u32>,
    pub d: Option<u32>,
    pub head: Option<String>,
}

impl EntryFilter {
    pub fn all() -> Self {
        EntryFilter::default()
    }

    pub fn matches(&self, entry: &CatalogEntry) -> bool {
        if let Some(want) = &self.entry {
            if entry.id != *want && entry.group != want {
                return false;
            }
        }
        if let Some(want) = &self.pattern {
            if entry.pattern.to_string() != *want {
                return false;
            }
        }
        if let Some(want) = self.k {
            if entry.k != Some(want) {
                return false;
            }
        }
        if let Some(want) = self.d {
            if entry.d != Some(want) {
                return false;
            }
        }
        if let Some(want) = &self.head {
            if entry.head.as_deref() != Some(want.as_str()) {
                return false;
            }
        }
        true
    }
}

/// One verified catalog entry in the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub entry_id: String,
    pub pattern: String,
    pub family: String,
    pub max_n: usize,
    pub closed_form_coeffs: Vec<String>,
    pub enumeration_coeffs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_coeffs: Option<Vec<String>>,
    #[serde(rename = "match")]
    pub is_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_n: Option<usize>,
    pub expected_status: Status,
    pub observed_status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    /// True when every observed status equals its pinned expectation.
    pub fn all_as_expected(&self) -> bool {
        self.entries.iter().all(|e| e.observed_status == e.expected_status)
    }

    /// Canonical serialization: pretty JSON, stable key order, trailing
    /// newline. Parsing and re-serializing is byte-identical.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "entry_id\tfamily\tpattern\tmax_n\tmatch\tfirst_mismatch_n\texpected_status\tobserved_status\n",
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                e.entry_id,
                e.family,
                e.pattern,
                e.max_n,
                e.is_match,
                e.first_mismatch_n.map_or(String::from("-"), |n| n.to_string()),
                e.expected_status,
                e.observed_status,
            ));
        }
        out
    }
}

/// Expand, enumerate and compare each selected entry.
///
/// `order` is the series expansion order (coefficients beyond the
/// enumeration bound are not compared); `max_n` caps the enumeration bound
/// of every entry, so a cheap smoke run can pass a small value.
pub fn run_verification(
    catalog: &[CatalogEntry],
    filter: &EntryFilter,
    order: usize,
    max_n: Option<usize>,
) -> Result<VerifyReport, CfError> {
    let selected: Vec<&CatalogEntry> = catalog.iter().filter(|e| filter.matches(e)).collect();

    // The same (family, pattern, bound) ground truth backs several entries;
    // enumerate each distinct job once, in parallel.
    let mut jobs: Vec<(Family, &CatalogEntry, usize)> = Vec::new();
    let mut seen: HashMap<(Family, String, usize), ()> = HashMap::new();
    for entry in &selected {
        let bound = entry.bound.min(max_n.unwrap_or(usize::MAX)).min(order);
        if seen.insert((entry.family, entry.pattern.to_string(), bound), ()).is_none() {
            jobs.push((entry.family, entry, bound));
        }
    }
    let tables: HashMap<(Family, String, usize), CountTable> = jobs
        .into_par_iter()
        .map(|(family, entry, bound)| {
            let table = count_series(family, &entry.pattern, bound);
            ((family, entry.pattern.to_string(), bound), table)
        })
        .collect();

    let mut entries = selected
        .par_iter()
        .map(|entry| {
            let bound = entry.bound.min(max_n.unwrap_or(usize::MAX)).min(order);
            let truth = &tables[&(entry.family, entry.pattern.to_string(), bound)];
            verify_entry(entry, truth, order, bound)
        })
        .collect::<Result<Vec<VerifyEntry>, CfError>>()?;
    entries.sort_by(|a, b| a.entry_id.cmp(&b.entry_id));
    Ok(VerifyReport { entries })
}

fn verify_entry(
    entry: &CatalogEntry,
    truth: &CountTable,
    order: usize,
    bound: usize,
) -> Result<VerifyEntry, CfError> {
    let closed = entry.closed_form(order.max(bound))?;
    let engine = entry.engine(order.max(bound)).transpose()?;
    let truth_series = truth.to_series();

    let compare_to = bound
        .min(closed.order())
        .min(engine.as_ref().map_or(usize::MAX, QSeries::order));
    let mut first_mismatch = None;
    for n in 0..=compare_to {
        let enum_c = truth_series.coeff(n);
        let mut bad = closed.coeff(n) != enum_c;
        if let Some(engine) = &engine {
            bad = bad || engine.coeff(n) != enum_c;
        }
        if bad {
            first_mismatch = Some(n);
            break;
        }
    }
    let is_match = first_mismatch.is_none();
    let observed_status = if is_match { Status::ExpectedMatch } else { Status::DocumentedErratum };

    let coeff_strings = |s: &QSeries| -> Vec<String> {
        (0..=compare_to.min(s.order())).map(|n| s.coeff_string(n)).collect()
    };
    Ok(VerifyEntry {
        entry_id: entry.id.clone(),
        pattern: entry.pattern.to_string(),
        family: entry.family.to_string(),
        max_n: compare_to,
        closed_form_coeffs: coeff_strings(&closed),
        enumeration_coeffs: (0..=compare_to).map(|n| truth.counts[n].to_string()).collect(),
        engine_coeffs: engine.as_ref().map(coeff_strings),
        is_match,
        first_mismatch_n: first_mismatch,
        expected_status: entry.expected_status,
        observed_status,
        note: entry.note.clone(),
    })
}
