//! Curriculum-calibrated text readability assessment.
//!
//! The pipeline: annotate raw prose ([`textproc`]), extract 29 linguistic
//! features in three families ([`features`]), select features by Pearson
//! correlation with the target grade and pairwise collinearity
//! ([`selection`]), fit a linear-regression grade predictor ([`model`]),
//! and compare against classic readability formulas ([`baselines`]).
//! [`corpus`] defines the graded text and word list formats everything
//! else consumes.

pub mod baselines;
pub mod corpus;
pub mod features;
pub mod model;
pub mod selection;
pub mod textproc;

pub use corpus::{Grade, GradedText, GradedTextCorpus, GradedWordList};
pub use features::{FeatureCode, FeatureVector};
pub use model::RegressionModel;
pub use textproc::{AnalyzedText, ParseSource, ParseTree};
