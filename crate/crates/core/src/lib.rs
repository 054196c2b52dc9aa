//! Discrete-choice estimation with random utility (multinomial and mixed
//! logit) and random regret models.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod choicedata;
pub mod engine;
pub mod error;
pub mod model;
pub mod postest;
pub mod rng;
pub mod rrm;
pub mod rum;
pub mod scalar;
pub mod synth;
pub mod validate;

pub use choicedata::{
    load_csv, read_csv, save_csv, split_kfold, split_kfold_by, validate_dataset, write_csv, AlternativeRecord,
    AttributeKind, AttributeSchema, ChoiceSituation, ChoiceTask, FoldUnit, ValidationReport,
};
pub use engine::{estimate, null_loglik, EstimateOptions, Estimation, EstimationReport, EstimationResult, MaximizeSettings};
pub use error::{Error, Result};
pub use model::{ChoiceModel, ModelKind};
pub use postest::{model_ratio, percent_difference, wtp, wtp_density, WtpConvention};
pub use rum::draws::{DrawGenerator, DrawMatrix};
pub use rum::params::ParameterVector;
pub use rum::spec::{CompiledSpec, ModelSpec, RandomCoefficient};
pub use scalar::Scalar;
pub use validate::{cross_validate, mape, ValidateOptions, ValidationSummary};

pub type Dataset = choicedata::ChoiceDataset<f64>;
pub type Situation = choicedata::ChoiceSituation<f64>;
pub type Task = choicedata::ChoiceTask<f64>;
pub type Design = choicedata::Design<f64>;
pub type Params = ParameterVector<f64>;
pub type Draws = DrawMatrix<f64>;
pub type Model = ChoiceModel<f64>;
pub type Estimate = Estimation<f64>;
pub type Fit = EstimationResult<f64>;
