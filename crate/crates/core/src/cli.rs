//! Dataset ingestion and report assembly for the command-line front end.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::density::{digit_distribution, pushforward_log10, stack, total_variation_torus};
use crate::digitcore::{benford_vector, first_digit, DigitDistribution};
use crate::laws::LawSpec;
use crate::mixer::MixResult;
use crate::{Error, Result};

/// Schema version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Digit counts and deviation statistics for an empirical dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpiricalDigits {
    pub counts: [u64; 9],
    pub n_total: u64,
    /// Non-positive, non-finite, or unparseable rows.
    pub n_skipped: u64,
    pub freqs: DigitDistribution,
    /// max over digits of |freq[k] − log((k+1)/k)|
    pub max_abs_dev: f64,
    /// Pearson statistic against the Benford vector, 8 degrees of freedom.
    pub chi_square: f64,
}

impl EmpiricalDigits {
    /// Tally first digits from raw values; anything non-positive or
    /// non-finite counts as skipped.
    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> Result<EmpiricalDigits> {
        let mut counts = [0u64; 9];
        let mut skipped = 0u64;
        for v in values {
            match first_digit(v) {
                Ok(d) => counts[(d - 1) as usize] += 1,
                Err(_) => skipped += 1,
            }
        }
        EmpiricalDigits::from_counts(counts, skipped)
    }

    pub fn from_counts(counts: [u64; 9], n_skipped: u64) -> Result<EmpiricalDigits> {
        let n_total: u64 = counts.iter().sum();
        if n_total == 0 {
            return Err(Error::NoUsableRows);
        }
        let mut p = [0.0; 9];
        for i in 0..9 {
            p[i] = counts[i] as f64 / n_total as f64;
        }
        let freqs = DigitDistribution::with_tolerance(p, 1e-12)?;
        let benford = benford_vector();
        let max_abs_dev = freqs.max_abs_dev(&benford);
        let chi_square = (0..9)
            .map(|i| {
                let expected = n_total as f64 * benford.as_array()[i];
                let diff = counts[i] as f64 - expected;
                diff * diff / expected
            })
            .sum();
        Ok(EmpiricalDigits { counts, n_total, n_skipped, freqs, max_abs_dev, chi_square })
    }
}

/// CSV column selection: a 0-based index or a header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl std::fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Index(i) => write!(f, "{i}"),
            ColumnSelector::Name(n) => write!(f, "{n}"),
        }
    }
}

/// Ingest one numeric column of a comma-separated file.
///
/// Decimal points only, no thousands separators. Cells that fail to parse,
/// are non-finite, or are ≤ 0 are counted in `n_skipped`.
pub fn ingest_csv(
    path: &Path,
    column: &ColumnSelector,
    has_header: bool,
) -> Result<EmpiricalDigits> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::UnreadableInput {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;

    let index = match column {
        ColumnSelector::Index(i) => *i,
        ColumnSelector::Name(name) => {
            if !has_header {
                return Err(Error::MissingColumn(format!("{name} (no header row)")));
            }
            let headers = reader.headers().map_err(|e| Error::UnreadableInput {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::MissingColumn(name.clone()))?
        }
    };

    let mut counts = [0u64; 9];
    let mut skipped = 0u64;
    let mut saw_column = false;
    for record in reader.records() {
        let record = record.map_err(|e| Error::UnreadableInput {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        match record.get(index) {
            None => skipped += 1,
            Some(cell) => {
                saw_column = true;
                match cell.trim().parse::<f64>().ok().and_then(|v| first_digit(v).ok()) {
                    Some(d) => counts[(d - 1) as usize] += 1,
                    None => skipped += 1,
                }
            }
        }
    }
    if !saw_column {
        return Err(Error::MissingColumn(column.to_string()));
    }
    EmpiricalDigits::from_counts(counts, skipped)
}

/// Stacked-profile facts carried by reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub window: (i64, i64),
    pub truncation_error: f64,
    /// Torus total variation of ḡ; absent for shapes without one.
    pub tv_torus: Option<f64>,
}

/// Full analysis of one parametric law.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub schema_version: u32,
    pub law: LawSpec,
    pub tol: f64,
    pub grid_size: usize,
    pub digit_distribution: DigitDistribution,
    pub benford: DigitDistribution,
    pub max_abs_dev_from_benford: f64,
    pub profile: ProfileSummary,
    pub bounds: BoundReport,
}

/// Build the full report for a law: digits, profile summary, bound ladder.
pub fn law_report(spec: &LawSpec, tol: f64, grid_size: usize) -> Result<LawReport> {
    let f = spec.f_model()?;
    let g = pushforward_log10(&f)?;
    let profile = stack(&g, tol)?;
    let digits = digit_distribution(&profile)?;
    let benford = benford_vector();
    let bounds = BoundReport::build(&g, &profile, grid_size)?;
    Ok(LawReport {
        schema_version: SCHEMA_VERSION,
        law: spec.clone(),
        tol,
        grid_size,
        max_abs_dev_from_benford: digits.max_abs_dev(&benford),
        digit_distribution: digits,
        benford,
        profile: ProfileSummary {
            window: profile.window(),
            truncation_error: profile.truncation_error(),
            tv_torus: total_variation_torus(&profile).ok(),
        },
        bounds,
    })
}

/// Report for an empirical dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub schema_version: u32,
    pub source: String,
    pub column: String,
    pub empirical: EmpiricalDigits,
    pub benford: DigitDistribution,
}

/// Report for a scale-mixing run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixReport {
    pub schema_version: u32,
    pub law: LawSpec,
    #[serde(flatten)]
    pub result: MixResult,
    pub max_abs_dev_from_benford: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn tallies_and_skips() {
        let e = EmpiricalDigits::from_values([1.2, 0.013, 950.0, -3.0, f64::NAN]).unwrap();
        assert_eq!(e.counts[0], 2);
        assert_eq!(e.counts[8], 1);
        assert_eq!(e.n_total, 3);
        assert_eq!(e.n_skipped, 2);
    }

    #[test]
    fn four_digit_integers_are_uniform() {
        let e = EmpiricalDigits::from_values((1000..=9999).map(f64::from)).unwrap();
        for k in 1..=9u8 {
            assert!((e.freqs.p(k) - 1.0 / 9.0).abs() < 1e-12);
        }
        assert!((e.max_abs_dev - (1.0 / 9.0 - 2f64.log10()).abs()).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            EmpiricalDigits::from_values(std::iter::empty()),
            Err(Error::NoUsableRows)
        ));
        assert!(matches!(
            EmpiricalDigits::from_values([0.0, -1.0]),
            Err(Error::NoUsableRows)
        ));
    }

    #[test]
    fn csv_by_name_and_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vals.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "id,amount").unwrap();
        writeln!(f, "a,1.2").unwrap();
        writeln!(f, "b,0.013").unwrap();
        writeln!(f, "c,950").unwrap();
        writeln!(f, "d,-3").unwrap();
        writeln!(f, "e,n/a").unwrap();
        drop(f);

        let by_name = ingest_csv(&path, &ColumnSelector::Name("amount".into()), true).unwrap();
        assert_eq!(by_name.counts[0], 2);
        assert_eq!(by_name.counts[8], 1);
        assert_eq!(by_name.n_skipped, 2);

        let by_index = ingest_csv(&path, &ColumnSelector::Index(1), true).unwrap();
        assert_eq!(by_index.counts, by_name.counts);

        assert!(matches!(
            ingest_csv(&path, &ColumnSelector::Name("missing".into()), true),
            Err(Error::MissingColumn(_))
        ));
        assert!(ingest_csv(Path::new("/no/such/file.csv"), &ColumnSelector::Index(0), true)
            .is_err());
    }

    #[test]
    fn unit_rescaling_by_ten_is_invisible() {
        // the meters-vs-feet point: a decimal shift changes nothing,
        // an odd factor generally does
        let base: Vec<f64> = (1..400).map(|i| 1.7 + 0.83 * i as f64).collect();
        let e1 = EmpiricalDigits::from_values(base.iter().copied()).unwrap();
        let e10 = EmpiricalDigits::from_values(base.iter().map(|v| v * 10.0)).unwrap();
        assert_eq!(e1.counts, e10.counts);
        let e_ft = EmpiricalDigits::from_values(base.iter().map(|v| v * 3.048)).unwrap();
        assert_ne!(e1.counts, e_ft.counts);
    }
}
