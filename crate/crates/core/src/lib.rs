//! Expert/novice pilot classification from flight-simulator logs.
//!
//! The crate turns raw per-participant eye-tracking and flight-dynamics logs
//! into a labeled feature table, ranks the features (mutual information,
//! SVM recursive feature elimination, or random-forest importance), trains
//! one of five binary classifiers, and scores it with leave-one-out
//! cross-validation. On top of that sit the experiment drivers (proportion
//! sweep, selector x model grid, dataset ablation, decision-tree export) and
//! a synthetic cohort generator, so everything runs without the original
//! human-subject recordings.
//!
//! Module map:
//!
//! - [`telemetry`]: CSV log and manifest parsing into typed sample streams
//! - [`synth`]: seeded synthetic participants and cohort directories
//! - [`features`]: eye-movement, AOI dwell and flight-recorder features
//! - [`select`]: feature rankers and top-proportion selection
//! - [`models`]: SVM (SMO), KNN, logistic regression, CART, boosted trees
//! - [`eval`]: confusion matrix, metrics, ROC and the LOOCV harness
//! - [`stats`]: Student t-test and Cohen's d
//! - [`experiments`]: sweep / grid / ablation / interpretability drivers
//! - [`cli`]: the `skyselect` command-line front end

pub mod cli;
pub mod data;
pub mod eval;
pub mod experiments;
pub mod features;
pub mod geo;
pub mod models;
pub mod numfmt;
pub mod seed;
pub mod select;
pub mod stats;
pub mod synth;
pub mod telemetry;

mod error;

pub use data::FeatureMatrix;
pub use error::{Error, Result};
pub use features::registry::{DatasetCombo, FeatureGroup, FeatureRegistry};
pub use models::{ModelKind, TrainedModel};
pub use select::{RankedFeatures, SelectorKind};
pub use telemetry::{Cohort, FlightSample, GazeSample, Label, ParticipantRecord};
