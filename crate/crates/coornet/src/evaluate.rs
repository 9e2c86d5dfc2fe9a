//! Scoring predicted bot sets against ground truth, and the Threshold-2
//! sweep harness.
//!
//! Recall is the headline metric here: the positive class is tiny next to
//! the human population, so accuracy says almost nothing and reports print
//! recall first.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detect::{classify_bots, DetectionParams};
use crate::error::{Error, Result};
use crate::ingest::TweetGroup;

/// Confusion-matrix counts and the derived rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
    pub accuracy: f64,
}

impl Metrics {
    /// Derive the rates from raw counts. Zero denominators yield 0 so that
    /// sweeps stay total.
    pub fn from_counts(tp: u64, fp: u64, fn_: u64, tn: u64) -> Metrics {
        let ratio = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        let accuracy = ratio(tp + tn, tp + fp + fn_ + tn);
        Metrics {
            tp,
            fp,
            fn_,
            tn,
            recall,
            precision,
            f1,
            accuracy,
        }
    }
}

/// Score `predicted` against `truth` over `universe`.
///
/// Both sets must be subsets of the universe; violations are reported with
/// the offending account names.
pub fn evaluate(
    predicted: &BTreeSet<String>,
    truth: &BTreeSet<String>,
    universe: &BTreeSet<String>,
) -> Result<Metrics> {
    if universe.is_empty() {
        return Err(Error::Evaluation(
            "universe is empty; supply the account population to score against".into(),
        ));
    }
    for (name, set) in [("predicted", predicted), ("truth", truth)] {
        let outside: Vec<&String> = set.difference(universe).take(5).collect();
        if !outside.is_empty() {
            return Err(Error::Evaluation(format!(
                "{name} set contains accounts outside the universe: {}",
                outside
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }
    let tp = predicted.intersection(truth).count() as u64;
    let fp = predicted.difference(truth).count() as u64;
    let fn_ = truth.difference(predicted).count() as u64;
    let tn = universe.len() as u64 - tp - fp - fn_;
    Ok(Metrics::from_counts(tp, fp, fn_, tn))
}

/// Which predicted tier(s) to score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TierSelector {
    Tier1,
    Tier2,
    #[default]
    Both,
}

impl TierSelector {
    pub fn select(&self, tier1: &BTreeSet<String>, tier2: &BTreeSet<String>) -> BTreeSet<String> {
        match self {
            TierSelector::Tier1 => tier1.clone(),
            TierSelector::Tier2 => tier2.clone(),
            TierSelector::Both => tier1.union(tier2).cloned().collect(),
        }
    }
}

impl std::str::FromStr for TierSelector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "1" | "tier1" => Ok(TierSelector::Tier1),
            "2" | "tier2" => Ok(TierSelector::Tier2),
            "both" => Ok(TierSelector::Both),
            other => Err(format!("unknown tier `{other}` (expected 1, 2 or both)")),
        }
    }
}

/// One row of a Threshold-2 sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t2: u64,
    pub total_predicted: u64,
    pub predicted_correctly: u64,
    pub total_bots: u64,
    pub metrics: Metrics,
}

/// Re-run classification once per Threshold-2 value and score the selected
/// tier union. Rows come back in input order.
pub fn sweep_t2(
    groups: &[TweetGroup],
    truth: &BTreeSet<String>,
    universe: &BTreeSet<String>,
    t2_values: &[u64],
    tier: TierSelector,
    base_params: &DetectionParams,
) -> Result<Vec<SweepRow>> {
    if t2_values.is_empty() {
        return Err(Error::InvalidConfig("t2 sweep list is empty".into()));
    }
    if t2_values.contains(&0) {
        return Err(Error::InvalidConfig("t2 values must be positive".into()));
    }
    t2_values
        .iter()
        .map(|&t2| {
            let params = DetectionParams {
                t2_override: Some(t2),
                ..base_params.clone()
            };
            let report = classify_bots(groups, &params)?;
            let predicted = tier.select(&report.tier1, &report.tier2);
            let metrics = evaluate(&predicted, truth, universe)?;
            Ok(SweepRow {
                t2,
                total_predicted: predicted.len() as u64,
                predicted_correctly: metrics.tp,
                total_bots: truth.len() as u64,
                metrics,
            })
        })
        .collect()
}

/// Parse a ground-truth file: newline-delimited account names, UTF-8,
/// `#` comment lines and blank lines ignored.
pub fn parse_truth<R: BufRead>(reader: R) -> Result<BTreeSet<String>> {
    let mut accounts = BTreeSet::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io("<truth>", e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        accounts.insert(trimmed.to_string());
    }
    Ok(accounts)
}

pub fn read_truth_file(path: &Path) -> Result<BTreeSet<String>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_truth(std::io::BufReader::new(file))
}

/// Write account names one per line.
pub fn write_truth_file(path: &Path, accounts: &BTreeSet<String>) -> Result<()> {
    let mut body = String::new();
    for account in accounts {
        body.push_str(account);
        body.push('\n');
    }
    std::fs::write(path, body).map_err(|e| Error::io(path.display().to_string(), e))
}
