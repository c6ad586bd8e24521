//! Grade regression: ordinary least squares on selected features, the
//! seven feature-family versions, evaluation, and model persistence.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::corpus::Grade;
use crate::features::{FeatureCode, FeatureVector};
use crate::selection::SelectionResult;

const MODEL_FORMAT: &str = "lxper-model/1";

/// Errors from training, prediction and persistence.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("underdetermined: {rows} rows for {features} features")]
    Underdetermined { rows: usize, features: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("{rows} feature rows but {targets} targets")]
    LengthMismatch { rows: usize, targets: usize },
    #[error("row {0} has {1} values but the model has {2} features")]
    RowWidth(usize, usize, usize),
    #[error("no features to train on")]
    NoFeatures,
    #[error("vector is missing feature {0}")]
    MissingFeature(FeatureCode),
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("unknown version name {0:?}")]
    UnknownVersion(String),
    #[error("{path}:{line}: malformed model file: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: unsupported model format {found:?} (expected {MODEL_FORMAT:?})")]
    FormatVersion { path: String, found: String },
    #[error("{path}: truncated model file: missing {missing}")]
    Truncated { path: String, missing: &'static str },
    #[error("{0}: {1}")]
    Io(String, String),
}

/// Training provenance stored inside a model file.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingMeta {
    pub corpus_id: String,
    pub text_count: usize,
    pub version_tag: String,
    pub significance_threshold: f64,
    pub pair_threshold: f64,
    /// Per-feature training means, aligned with the feature codes.
    pub feature_means: Vec<f64>,
    /// True when rank deficiency forced ridge damping of the normal system.
    pub ridge_damped: bool,
}

impl Default for TrainingMeta {
    fn default() -> Self {
        TrainingMeta {
            corpus_id: String::new(),
            text_count: 0,
            version_tag: String::new(),
            significance_threshold: crate::selection::DEFAULT_SIGNIFICANCE,
            pair_threshold: crate::selection::DEFAULT_PAIR_THRESHOLD,
            feature_means: Vec::new(),
            ridge_damped: false,
        }
    }
}

/// A linear model from feature values to a grade estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionModel {
    pub feature_codes: Vec<FeatureCode>,
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub training_meta: TrainingMeta,
}

/// Ridge damping applied to the normal system when the design matrix is
/// rank-deficient.
const RIDGE_DAMPING: f64 = 1e-8;

/// Fit ordinary least squares with an intercept. Solved by singular value
/// decomposition of the design matrix; a rank-deficient design falls back
/// to a ridge-damped normal system and records the fact in the metadata.
pub fn train(
    codes: &[FeatureCode],
    rows: &[Vec<f64>],
    targets: &[f64],
    mut meta: TrainingMeta,
) -> Result<RegressionModel, ModelError> {
    if codes.is_empty() {
        return Err(ModelError::NoFeatures);
    }
    let k = codes.len();
    if rows.len() <= k {
        return Err(ModelError::Underdetermined {
            rows: rows.len(),
            features: k,
        });
    }
    if rows.len() != targets.len() {
        return Err(ModelError::LengthMismatch {
            rows: rows.len(),
            targets: targets.len(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != k {
            return Err(ModelError::RowWidth(i, row.len(), k));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::NonFinite("feature rows"));
        }
    }
    if targets.iter().any(|v| !v.is_finite()) {
        return Err(ModelError::NonFinite("targets"));
    }

    let n = rows.len();
    let cols = k + 1;
    let design = DMatrix::from_fn(n, cols, |r, c| if c == 0 { 1.0 } else { rows[r][c - 1] });
    let y = DVector::from_iterator(n, targets.iter().copied());

    let svd = design.clone().svd(true, true);
    let tol = f64::EPSILON * n.max(cols) as f64 * svd.singular_values.max();
    let full_rank = svd.rank(tol) == cols;
    let beta = if full_rank {
        svd.solve(&y, tol)
            .map_err(|_| ModelError::NonFinite("solver"))?
    } else {
        meta.ridge_damped = true;
        let xtx = design.transpose() * &design;
        let damped = xtx + DMatrix::identity(cols, cols) * RIDGE_DAMPING;
        let xty = design.transpose() * &y;
        damped
            .lu()
            .solve(&xty)
            .ok_or(ModelError::NonFinite("ridge solver"))?
    };
    if beta.iter().any(|v| !v.is_finite()) {
        return Err(ModelError::NonFinite("coefficients"));
    }

    meta.text_count = n;
    meta.feature_means = (0..k)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();

    Ok(RegressionModel {
        feature_codes: codes.to_vec(),
        weights: beta.iter().skip(1).copied().collect(),
        intercept: beta[0],
        training_meta: meta,
    })
}

impl RegressionModel {
    /// Intercept plus dot product. Unclamped: estimates may exceed the
    /// label range.
    pub fn predict(&self, vector: &FeatureVector) -> f64 {
        self.intercept
            + self
                .feature_codes
                .iter()
                .zip(&self.weights)
                .map(|(&c, &w)| w * vector.get(c))
                .sum::<f64>()
    }

    /// Predict from an explicit code → value map, erroring on any feature
    /// the model needs but the map lacks.
    pub fn predict_partial(&self, values: &BTreeMap<FeatureCode, f64>) -> Result<f64, ModelError> {
        let mut estimate = self.intercept;
        for (&code, &weight) in self.feature_codes.iter().zip(&self.weights) {
            let value = values.get(&code).ok_or(ModelError::MissingFeature(code))?;
            estimate += weight * value;
        }
        Ok(estimate)
    }

    /// Row values for this model's features, in model order.
    pub fn project(&self, vector: &FeatureVector) -> Vec<f64> {
        self.feature_codes.iter().map(|&c| vector.get(c)).collect()
    }
}

/// Per-grade means and mean absolute error of a model on a test set.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    /// Mean prediction per grade present in the test set.
    pub per_grade_mean: BTreeMap<Grade, f64>,
    /// Mean absolute error per grade.
    pub per_grade_error: BTreeMap<Grade, f64>,
    /// Mean absolute error over all texts.
    pub average_error: f64,
    pub text_count: usize,
}

/// Evaluate a model against labeled feature vectors.
pub fn evaluate(
    model: &RegressionModel,
    rows: &[(Grade, FeatureVector)],
) -> Result<EvaluationReport, ModelError> {
    if rows.is_empty() {
        return Err(ModelError::EmptyTestSet);
    }
    let mut sums: BTreeMap<Grade, (f64, f64, usize)> = BTreeMap::new();
    let mut abs_error = 0.0;
    for (grade, vector) in rows {
        let prediction = model.predict(vector);
        let entry = sums.entry(*grade).or_insert((0.0, 0.0, 0));
        entry.0 += prediction;
        entry.1 += (prediction - grade.value()).abs();
        entry.2 += 1;
        abs_error += (prediction - grade.value()).abs();
    }
    let mut per_grade_mean = BTreeMap::new();
    let mut per_grade_error = BTreeMap::new();
    for (grade, (sum, err, count)) in sums {
        per_grade_mean.insert(grade, sum / count as f64);
        per_grade_error.insert(grade, err / count as f64);
    }
    Ok(EvaluationReport {
        per_grade_mean,
        per_grade_error,
        average_error: abs_error / rows.len() as f64,
        text_count: rows.len(),
    })
}

/// The seven feature-family combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureFamilyVersion {
    Simple,
    Cognitive,
    WordDifficulty,
    SimpleCognitive,
    CognitiveWordDifficulty,
    SimpleWordDifficulty,
    All,
}

use FeatureCode::*;

/// The simple-family subset used by versions (M3S and nSBr lose their
/// collinear pairs and are not part of any version).
const SIMPLE_SET: [FeatureCode; 13] = [
    WordsPerSentence,
    SyllablesPerWord,
    NounPhrasesPerSentence,
    ProperNounsPerSentence,
    VerbPhrasesPerSentence,
    AdjectivesPerSentence,
    SubClausesPerSentence,
    PrepPhrasesPerSentence,
    NounPhraseTotal,
    ProperNounTotal,
    VerbPhraseTotal,
    AdjectiveTotal,
    PrepPhraseTotal,
];
const COGNITIVE_SET: [FeatureCode; 4] = [
    EntityMentionsPerSentence,
    UniqueEntitiesPerSentence,
    LexicalChainTotal,
    LexicalChainsPerWord,
];
const WORD_DIFFICULTY_SET: [FeatureCode; 5] = [
    LevelCRatio,
    LevelCTotal,
    LevelDTotal,
    LevelETotal,
    LevelFTotal,
];

impl FeatureFamilyVersion {
    pub const ALL_VERSIONS: [FeatureFamilyVersion; 7] = [
        FeatureFamilyVersion::Simple,
        FeatureFamilyVersion::Cognitive,
        FeatureFamilyVersion::WordDifficulty,
        FeatureFamilyVersion::SimpleCognitive,
        FeatureFamilyVersion::CognitiveWordDifficulty,
        FeatureFamilyVersion::SimpleWordDifficulty,
        FeatureFamilyVersion::All,
    ];

    /// The fixed feature subset of this version, in canonical order.
    pub fn codes(self) -> Vec<FeatureCode> {
        let families: &[&[FeatureCode]] = match self {
            FeatureFamilyVersion::Simple => &[&SIMPLE_SET],
            FeatureFamilyVersion::Cognitive => &[&COGNITIVE_SET],
            FeatureFamilyVersion::WordDifficulty => &[&WORD_DIFFICULTY_SET],
            FeatureFamilyVersion::SimpleCognitive => &[&SIMPLE_SET, &COGNITIVE_SET],
            FeatureFamilyVersion::CognitiveWordDifficulty => {
                &[&COGNITIVE_SET, &WORD_DIFFICULTY_SET]
            }
            FeatureFamilyVersion::SimpleWordDifficulty => &[&SIMPLE_SET, &WORD_DIFFICULTY_SET],
            FeatureFamilyVersion::All => &[&SIMPLE_SET, &COGNITIVE_SET, &WORD_DIFFICULTY_SET],
        };
        let mut codes: Vec<FeatureCode> = families.iter().flat_map(|f| f.iter().copied()).collect();
        codes.sort_by_key(|c| c.index());
        codes
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureFamilyVersion::Simple => "S",
            FeatureFamilyVersion::Cognitive => "CM",
            FeatureFamilyVersion::WordDifficulty => "WD",
            FeatureFamilyVersion::SimpleCognitive => "S+CM",
            FeatureFamilyVersion::CognitiveWordDifficulty => "CM+WD",
            FeatureFamilyVersion::SimpleWordDifficulty => "S+WD",
            FeatureFamilyVersion::All => "S+CM+WD",
        }
    }
}

impl fmt::Display for FeatureFamilyVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureFamilyVersion {
    type Err = ModelError;

    /// Accepts `+` or `&` as the family separator, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.trim().to_uppercase().replace('&', "+");
        FeatureFamilyVersion::ALL_VERSIONS
            .iter()
            .copied()
            .find(|v| v.name() == normalized)
            .ok_or_else(|| ModelError::UnknownVersion(s.to_string()))
    }
}

/// Train all seven versions on the training rows and evaluate each on the
/// test rows. A version that fails to train is reported as an error entry
/// without aborting the rest.
pub fn train_versions(
    train_rows: &[(Grade, FeatureVector)],
    test_rows: &[(Grade, FeatureVector)],
    selection: &SelectionResult,
    base_meta: &TrainingMeta,
) -> BTreeMap<FeatureFamilyVersion, Result<(RegressionModel, EvaluationReport), ModelError>> {
    let mut out = BTreeMap::new();
    for version in FeatureFamilyVersion::ALL_VERSIONS {
        let codes: Vec<FeatureCode> = version
            .codes()
            .into_iter()
            .filter(|c| selection.included.contains(c))
            .collect();
        let outcome = train_single_version(version, &codes, train_rows, test_rows, base_meta);
        out.insert(version, outcome);
    }
    out
}

fn train_single_version(
    version: FeatureFamilyVersion,
    codes: &[FeatureCode],
    train_rows: &[(Grade, FeatureVector)],
    test_rows: &[(Grade, FeatureVector)],
    base_meta: &TrainingMeta,
) -> Result<(RegressionModel, EvaluationReport), ModelError> {
    let rows: Vec<Vec<f64>> = train_rows
        .iter()
        .map(|(_, v)| codes.iter().map(|&c| v.get(c)).collect())
        .collect();
    let targets: Vec<f64> = train_rows.iter().map(|(g, _)| g.value()).collect();
    let meta = TrainingMeta {
        version_tag: version.name().to_string(),
        ..base_meta.clone()
    };
    let model = train(codes, &rows, &targets, meta)?;
    let report = evaluate(&model, test_rows)?;
    Ok((model, report))
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

/// Serialize a model as structured text. Weights use Rust's shortest
/// round-trip decimal form, so reloading reproduces every `f64` bit for
/// bit.
pub fn save_model(model: &RegressionModel, path: &Path) -> Result<(), ModelError> {
    std::fs::write(path, render_model(model))
        .map_err(|e| ModelError::Io(path.display().to_string(), e.to_string()))
}

fn render_model(model: &RegressionModel) -> String {
    let meta = &model.training_meta;
    let mut out = String::new();
    writeln!(out, "format: {MODEL_FORMAT}").expect("string write");
    writeln!(out, "version_tag: {}", meta.version_tag).expect("string write");
    writeln!(out, "corpus_id: {}", meta.corpus_id).expect("string write");
    writeln!(out, "text_count: {}", meta.text_count).expect("string write");
    writeln!(out, "sig_threshold: {}", meta.significance_threshold).expect("string write");
    writeln!(out, "pair_threshold: {}", meta.pair_threshold).expect("string write");
    writeln!(out, "ridge_damped: {}", meta.ridge_damped).expect("string write");
    writeln!(out, "intercept: {}", model.intercept).expect("string write");
    for (i, (&code, &weight)) in model.feature_codes.iter().zip(&model.weights).enumerate() {
        let mean = meta.feature_means.get(i).copied().unwrap_or(f64::NAN);
        writeln!(out, "feature: {code} {weight} {mean}").expect("string write");
    }
    out
}

/// Load a model saved by [`save_model`].
pub fn load_model(path: &Path) -> Result<RegressionModel, ModelError> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Io(display.clone(), e.to_string()))?;
    parse_model(&content, &display)
}

fn parse_model(content: &str, origin: &str) -> Result<RegressionModel, ModelError> {
    let mut lines = content.lines().enumerate();
    let malformed = |line: usize, message: String| ModelError::Malformed {
        path: origin.to_string(),
        line: line + 1,
        message,
    };

    let (_, first) = lines.next().ok_or(ModelError::Truncated {
        path: origin.to_string(),
        missing: "format line",
    })?;
    let found = first
        .strip_prefix("format: ")
        .ok_or_else(|| malformed(0, "expected a format line".into()))?;
    if found != MODEL_FORMAT {
        return Err(ModelError::FormatVersion {
            path: origin.to_string(),
            found: found.to_string(),
        });
    }

    let mut meta = TrainingMeta::default();
    let mut intercept: Option<f64> = None;
    let mut feature_codes = Vec::new();
    let mut weights = Vec::new();
    let mut means = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(": ")
            .ok_or_else(|| malformed(lineno, format!("expected 'key: value', got {line:?}")))?;
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| malformed(lineno, format!("bad number {v:?}")))
        };
        match key {
            "version_tag" => meta.version_tag = value.to_string(),
            "corpus_id" => meta.corpus_id = value.to_string(),
            "text_count" => {
                meta.text_count = value
                    .parse()
                    .map_err(|_| malformed(lineno, format!("bad count {value:?}")))?
            }
            "sig_threshold" => meta.significance_threshold = parse_f64(value)?,
            "pair_threshold" => meta.pair_threshold = parse_f64(value)?,
            "ridge_damped" => {
                meta.ridge_damped = value
                    .parse()
                    .map_err(|_| malformed(lineno, format!("bad bool {value:?}")))?
            }
            "intercept" => intercept = Some(parse_f64(value)?),
            "feature" => {
                let fields: Vec<&str> = value.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(malformed(
                        lineno,
                        "feature line needs: code weight mean".into(),
                    ));
                }
                let code: FeatureCode = fields[0]
                    .parse()
                    .map_err(|_| malformed(lineno, format!("unknown code {:?}", fields[0])))?;
                feature_codes.push(code);
                weights.push(parse_f64(fields[1])?);
                means.push(parse_f64(fields[2])?);
            }
            other => return Err(malformed(lineno, format!("unknown key {other:?}"))),
        }
    }

    let intercept = intercept.ok_or(ModelError::Truncated {
        path: origin.to_string(),
        missing: "intercept",
    })?;
    if feature_codes.is_empty() {
        return Err(ModelError::Truncated {
            path: origin.to_string(),
            missing: "feature lines",
        });
    }
    meta.feature_means = means;
    Ok(RegressionModel {
        feature_codes,
        weights,
        intercept,
        training_meta: meta,
    })
}
