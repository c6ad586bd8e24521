//! Feature selection: Pearson correlation with the target grade,
//! significance filtering, pairwise collinearity pruning, and ranking.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::features::{FeatureCode, FeatureVector};

/// Default significance threshold on |r| against the target grade.
pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;
/// Default pairwise collinearity threshold on |r| between two features.
pub const DEFAULT_PAIR_THRESHOLD: f64 = 0.85;

/// Errors from correlation and selection.
#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("{0} series has zero variance")]
    ZeroVariance(&'static str),
    #[error("feature matrix has {rows} rows but {grades} grades")]
    MisalignedGrades { rows: usize, grades: usize },
    #[error("every text has the same grade; correlation with the grade is undefined")]
    ConstantGrades,
    #[error("{path}:{line}: malformed selection table: {message}")]
    MalformedTable {
        path: String,
        line: usize,
        message: String,
    },
    #[error("selection table is missing feature {0}")]
    MissingFeature(FeatureCode),
    #[error("{0}: {1}")]
    Io(String, String),
}

/// Pearson product-moment correlation, two-pass mean-centered.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, SelectionError> {
    if x.len() != y.len() {
        return Err(SelectionError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(SelectionError::TooFewSamples(x.len()));
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 {
        return Err(SelectionError::ZeroVariance("first"));
    }
    if var_y == 0.0 {
        return Err(SelectionError::ZeroVariance("second"));
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// One feature's correlation with the target grade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureCorrelation {
    pub r: f64,
    pub sample_count: usize,
    /// True when the feature column had zero variance and r was recorded
    /// as 0 by convention.
    pub degenerate: bool,
}

/// Correlation of all 29 features with the target grade.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    entries: [FeatureCorrelation; 29],
}

impl CorrelationReport {
    /// Build a report from explicit values (fixture input).
    pub fn from_values(values: &[(FeatureCode, f64)], sample_count: usize) -> CorrelationReport {
        let mut entries = [FeatureCorrelation {
            r: 0.0,
            sample_count,
            degenerate: false,
        }; 29];
        for &(code, r) in values {
            entries[code.index()].r = r;
        }
        CorrelationReport { entries }
    }

    pub fn get(&self, code: FeatureCode) -> FeatureCorrelation {
        self.entries[code.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (FeatureCode, FeatureCorrelation)> + '_ {
        FeatureCode::ALL.iter().map(move |&c| (c, self.get(c)))
    }
}

/// Correlate every feature column with the grades.
pub fn correlate_features(
    matrix: &[FeatureVector],
    grades: &[f64],
) -> Result<CorrelationReport, SelectionError> {
    if matrix.len() != grades.len() {
        return Err(SelectionError::MisalignedGrades {
            rows: matrix.len(),
            grades: grades.len(),
        });
    }
    if matrix.len() < 3 {
        return Err(SelectionError::TooFewSamples(matrix.len()));
    }
    let mut entries = [FeatureCorrelation {
        r: 0.0,
        sample_count: matrix.len(),
        degenerate: false,
    }; 29];
    for code in FeatureCode::ALL {
        let column: Vec<f64> = matrix.iter().map(|v| v.get(code)).collect();
        match pearson(&column, grades) {
            Ok(r) => entries[code.index()].r = r,
            Err(SelectionError::ZeroVariance("first")) => {
                entries[code.index()].degenerate = true;
            }
            Err(SelectionError::ZeroVariance("second")) => {
                return Err(SelectionError::ConstantGrades)
            }
            Err(other) => return Err(other),
        }
    }
    Ok(CorrelationReport { entries })
}

/// Features whose |r| strictly exceeds the threshold.
pub fn significance_filter(report: &CorrelationReport, threshold: f64) -> Vec<FeatureCode> {
    FeatureCode::ALL
        .iter()
        .copied()
        .filter(|&c| report.get(c).r.abs() > threshold)
        .collect()
}

/// An over-threshold feature pair, with its pairwise correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearPair {
    pub a: FeatureCode,
    pub b: FeatureCode,
    pub r_pair: f64,
}

/// Why a feature was excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    /// |r| with the grade did not exceed the significance threshold.
    Insignificant,
    /// Lost a collinear pair against the named feature.
    CollinearLoser(FeatureCode),
}

/// The outcome of significance filtering plus collinearity pruning.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Included features in canonical order.
    pub included: Vec<FeatureCode>,
    /// Excluded features and why.
    pub excluded: BTreeMap<FeatureCode, ExclusionReason>,
    /// Included features by descending |r| with the grade.
    pub ranking: Vec<FeatureCode>,
    /// The over-threshold pairs that were processed.
    pub pairs: Vec<CollinearPair>,
    pub significance_threshold: f64,
    pub pair_threshold: f64,
}

/// Compute pairwise correlations among `survivors` and return the pairs
/// whose |r| strictly exceeds `pair_threshold`, in processing order:
/// descending |r|, ties by canonical order.
pub fn collinear_pairs(
    matrix: &[FeatureVector],
    survivors: &[FeatureCode],
    pair_threshold: f64,
) -> Result<Vec<CollinearPair>, SelectionError> {
    let columns: BTreeMap<FeatureCode, Vec<f64>> = survivors
        .iter()
        .map(|&c| (c, matrix.iter().map(|v| v.get(c)).collect()))
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in survivors.iter().enumerate() {
        for &b in &survivors[i + 1..] {
            let r_pair = pearson(&columns[&a], &columns[&b])?;
            if r_pair.abs() > pair_threshold {
                pairs.push(CollinearPair { a, b, r_pair });
            }
        }
    }
    sort_pairs(&mut pairs);
    Ok(pairs)
}

fn sort_pairs(pairs: &mut [CollinearPair]) {
    pairs.sort_by(|p, q| {
        q.r_pair
            .abs()
            .partial_cmp(&p.r_pair.abs())
            .expect("finite correlations")
            .then_with(|| (p.a.index(), p.b.index()).cmp(&(q.a.index(), q.b.index())))
    });
}

/// Resolve collinear pairs over the surviving features: for each pair in
/// descending |r_pair|, drop whichever member has the lower |r| with the
/// grade (canonical order wins ties). A pair whose member is already gone
/// is skipped, so removals cascade deterministically.
pub fn prune_with_pairs(
    survivors: &[FeatureCode],
    pairs: &[CollinearPair],
    report: &CorrelationReport,
) -> (Vec<FeatureCode>, BTreeMap<FeatureCode, ExclusionReason>) {
    let mut pairs: Vec<CollinearPair> = pairs.to_vec();
    sort_pairs(&mut pairs);

    let mut alive: Vec<FeatureCode> = survivors.to_vec();
    let mut excluded = BTreeMap::new();
    for pair in &pairs {
        if !alive.contains(&pair.a) || !alive.contains(&pair.b) {
            continue;
        }
        let ra = report.get(pair.a).r.abs();
        let rb = report.get(pair.b).r.abs();
        // Keep the higher |r| with the grade; on a tie the canonically
        // earlier code wins.
        let (keep, drop) = if ra > rb {
            (pair.a, pair.b)
        } else if rb > ra {
            (pair.b, pair.a)
        } else if pair.a.index() < pair.b.index() {
            (pair.a, pair.b)
        } else {
            (pair.b, pair.a)
        };
        alive.retain(|&c| c != drop);
        excluded.insert(drop, ExclusionReason::CollinearLoser(keep));
    }
    (alive, excluded)
}

/// Included features by descending |r| with the grade, ties by canonical
/// order.
pub fn rank_features(included: &[FeatureCode], report: &CorrelationReport) -> Vec<FeatureCode> {
    let mut ranking = included.to_vec();
    ranking.sort_by(|&a, &b| {
        report
            .get(b)
            .r
            .abs()
            .partial_cmp(&report.get(a).r.abs())
            .expect("finite correlations")
            .then_with(|| a.index().cmp(&b.index()))
    });
    ranking
}

/// Run the full selection over a feature matrix and grades.
pub fn select_features(
    matrix: &[FeatureVector],
    grades: &[f64],
    significance_threshold: f64,
    pair_threshold: f64,
) -> Result<(CorrelationReport, SelectionResult), SelectionError> {
    let report = correlate_features(matrix, grades)?;
    let survivors = significance_filter(&report, significance_threshold);
    let pairs = collinear_pairs(matrix, &survivors, pair_threshold)?;
    let result = finish_selection(
        &report,
        &survivors,
        &pairs,
        significance_threshold,
        pair_threshold,
    );
    Ok((report, result))
}

/// Assemble a [`SelectionResult`] from filtering output and pairs. Public
/// so fixture correlations and pair lists can drive the same logic.
pub fn finish_selection(
    report: &CorrelationReport,
    survivors: &[FeatureCode],
    pairs: &[CollinearPair],
    significance_threshold: f64,
    pair_threshold: f64,
) -> SelectionResult {
    let (included, mut excluded) = prune_with_pairs(survivors, pairs, report);
    for code in FeatureCode::ALL {
        if !survivors.contains(&code) {
            excluded.insert(code, ExclusionReason::Insignificant);
        }
    }
    let ranking = rank_features(&included, report);
    SelectionResult {
        included,
        excluded,
        ranking,
        pairs: pairs.to_vec(),
        significance_threshold,
        pair_threshold,
    }
}

// ---------------------------------------------------------------------------
// Tabular export / import
// ---------------------------------------------------------------------------

/// A selection table: one row per feature with its correlation,
/// significance verdict, collinear partners, and include verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionTable {
    pub rows: Vec<SelectionRow>,
}

/// One row of the selection table.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionRow {
    pub code: FeatureCode,
    pub r: f64,
    pub significant: bool,
    pub partners: Vec<FeatureCode>,
    pub included: bool,
}

impl SelectionTable {
    /// Build the table from a report and a selection result.
    pub fn build(report: &CorrelationReport, result: &SelectionResult) -> SelectionTable {
        let rows = FeatureCode::ALL
            .iter()
            .map(|&code| {
                let mut partners: Vec<FeatureCode> = result
                    .pairs
                    .iter()
                    .filter_map(|p| {
                        if p.a == code {
                            Some(p.b)
                        } else if p.b == code {
                            Some(p.a)
                        } else {
                            None
                        }
                    })
                    .collect();
                partners.sort_by_key(|c| c.index());
                partners.dedup();
                SelectionRow {
                    code,
                    r: report.get(code).r,
                    significant: report.get(code).r.abs() > result.significance_threshold,
                    partners,
                    included: result.included.contains(&code),
                }
            })
            .collect();
        SelectionTable { rows }
    }

    /// Tab-separated form: `code  cor  sig  pair  include` with full-precision
    /// decimal correlations. Parses back via [`SelectionTable::parse`].
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("code\tcor\tsig\tpair\tinclude\n");
        for row in &self.rows {
            let partners = if row.partners.is_empty() {
                "-".to_string()
            } else {
                row.partners
                    .iter()
                    .map(|c| c.code())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                row.code,
                row.r,
                if row.significant { "yes" } else { "no" },
                partners,
                if row.included { "yes" } else { "no" },
            )
            .expect("string write");
        }
        out
    }

    /// Aligned plain-text form for terminal output.
    pub fn to_aligned(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<6} {:>10} {:<4} {:<12} include",
            "code", "cor", "sig", "pair"
        )
        .expect("string write");
        for row in &self.rows {
            let partners = if row.partners.is_empty() {
                "-".to_string()
            } else {
                row.partners
                    .iter()
                    .map(|c| c.code())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(
                out,
                "{:<6} {:>10.5} {:<4} {:<12} {}",
                row.code.code(),
                row.r,
                if row.significant { "yes" } else { "no" },
                partners,
                if row.included { "yes" } else { "no" },
            )
            .expect("string write");
        }
        out
    }

    /// Parse the TSV form back.
    pub fn parse(content: &str, origin: &str) -> Result<SelectionTable, SelectionError> {
        let mut rows = Vec::new();
        for (lineno, line) in content.lines().enumerate() {
            if lineno == 0 || line.trim().is_empty() {
                continue;
            }
            let malformed = |message: String| SelectionError::MalformedTable {
                path: origin.to_string(),
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 5 {
                return Err(malformed(format!(
                    "expected 5 fields, got {}",
                    fields.len()
                )));
            }
            let code: FeatureCode = fields[0]
                .parse()
                .map_err(|_| malformed(format!("unknown feature code {:?}", fields[0])))?;
            let r: f64 = fields[1]
                .parse()
                .map_err(|_| malformed(format!("bad correlation {:?}", fields[1])))?;
            let partners = if fields[3] == "-" {
                Vec::new()
            } else {
                fields[3]
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<FeatureCode>()
                            .map_err(|_| malformed(format!("unknown partner code {p:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            rows.push(SelectionRow {
                code,
                r,
                significant: fields[2] == "yes",
                partners,
                included: fields[4] == "yes",
            });
        }
        Ok(SelectionTable { rows })
    }

    /// Load the TSV form from a file.
    pub fn load(path: &Path) -> Result<SelectionTable, SelectionError> {
        let display = path.display().to_string();
        let content = std::fs::read_to_string(path)
            .map_err(|e| SelectionError::Io(display.clone(), e.to_string()))?;
        Self::parse(&content, &display)
    }

    /// Reconstruct a correlation report and pair list from the table, so a
    /// saved table can drive [`finish_selection`] again.
    pub fn to_fixture(&self) -> (CorrelationReport, Vec<CollinearPair>) {
        let values: Vec<(FeatureCode, f64)> = self.rows.iter().map(|r| (r.code, r.r)).collect();
        let report = CorrelationReport::from_values(&values, self.rows.len());
        let mut pairs = Vec::new();
        for row in &self.rows {
            for &partner in &row.partners {
                if row.code.index() < partner.index() {
                    pairs.push(CollinearPair {
                        a: row.code,
                        b: partner,
                        // The table stores partners, not pairwise r; any
                        // over-threshold value keeps processing order
                        // canonical.
                        r_pair: 1.0,
                    });
                }
            }
        }
        (report, pairs)
    }
}
