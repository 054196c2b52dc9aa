//! K-fold estimate-then-predict validation scored by MAPE on market shares.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choicedata::{split_kfold_by, ChoiceDataset, Fold, FoldUnit};
use crate::engine::{estimate, EstimateOptions};
use crate::error::{Error, Result};
use crate::model::{simulated_log_likelihood, ChoiceModel, FeatureMatrix, ModelKind};
use crate::rum::draws::DrawMatrix;
use crate::rum::params::ParameterVector;
use crate::rum::spec::{CompiledSpec, ModelSpec};
use crate::scalar::Scalar;

pub const SHARE_DEFINITION: &str =
    "per-alternative market shares of the test fold: predicted = mean probability, observed = choice frequency";

/// `100/N Σ |(Y - Ŷ)/Y|`.
pub fn mape(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    if actual.len() != predicted.len() || actual.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "MAPE needs two non-empty vectors of equal length (got {} and {})",
            actual.len(),
            predicted.len()
        )));
    }
    if let Some(i) = actual.iter().position(|y| *y == 0.0) {
        return Err(Error::ZeroDenominator(format!("MAPE with actual value 0 at position {i}")));
    }
    let total: f64 = actual.iter().zip(predicted).map(|(y, p)| ((y - p) / y).abs()).sum();
    Ok(100.0 * total / actual.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold_index: usize,
    pub train_loglik: f64,
    pub predicted_shares: Vec<f64>,
    pub observed_shares: Vec<f64>,
    pub fold_mape: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailedFold {
    pub fold_index: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub model_kind: ModelKind,
    pub alternatives: Vec<String>,
    pub folds: Vec<FoldResult>,
    pub failed: Vec<FailedFold>,
    pub average_mape: f64,
    pub definition: String,
}

impl ValidationSummary {
    pub fn warnings(&self) -> usize {
        self.failed.len()
    }

    /// One row per fold: observed shares, predicted shares, MAPE.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("fold,train_loglik");
        for a in &self.alternatives {
            let _ = write!(out, ",observed_{a}");
        }
        for a in &self.alternatives {
            let _ = write!(out, ",predicted_{a}");
        }
        out.push_str(",mape\n");
        for f in &self.folds {
            let _ = write!(out, "{},{}", f.fold_index, f.train_loglik);
            for v in f.observed_shares.iter().chain(&f.predicted_shares) {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{}", f.fold_mape);
        }
        for f in &self.failed {
            let _ = writeln!(out, "# fold {} failed: {}", f.fold_index, f.error);
        }
        out
    }

    pub fn summary_line(&self) -> String {
        format!(
            "model_kind={} folds={} failed={} average_mape={:.6} scored={}",
            self.model_kind,
            self.folds.len() + self.failed.len(),
            self.failed.len(),
            self.average_mape,
            SHARE_DEFINITION
        )
    }
}

/// How each fold obtains its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidateOptions {
    pub estimate: EstimateOptions,
    /// Score with these parameters instead of estimating on the training part.
    pub fixed: Option<ParameterVector<f64>>,
    pub unit: FoldUnit,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            estimate: EstimateOptions::default(),
            fixed: None,
            unit: FoldUnit::Situation,
        }
    }
}

enum FoldOutcome {
    Done(FoldResult),
    Failed(FailedFold),
}

/// Splits `ds` into `folds`, fits on each training part and scores the
/// predicted shares of its test part. Estimation failures mark the fold as
/// failed; a zero observed share is an error naming the fold.
pub fn cross_validate<T: Scalar>(
    ds: &ChoiceDataset<T>,
    spec: &ModelSpec,
    kind: ModelKind,
    folds: usize,
    seed: u64,
    options: &ValidateOptions,
) -> Result<ValidationSummary> {
    let parts = split_kfold_by(ds, folds, seed, options.unit)?;
    for f in &parts {
        debug_assert_eq!(f.train_indices.len() + f.test_indices.len(), ds.len());
    }
    let alternatives = ds.alternative_ids();
    let mut estimate_options = options.estimate.clone();
    estimate_options.seed = seed;

    let outcomes: Vec<Result<FoldOutcome>> = parts
        .par_iter()
        .map(|fold| run_fold(fold, spec, kind, &alternatives, &estimate_options, options.fixed.as_ref()))
        .collect();

    let mut done = Vec::new();
    let mut failed = Vec::new();
    for outcome in outcomes {
        match outcome? {
            FoldOutcome::Done(r) => done.push(r),
            FoldOutcome::Failed(f) => failed.push(f),
        }
    }
    if done.is_empty() {
        return Err(Error::Numeric(format!(
            "every fold failed; first error: {}",
            failed.first().map_or("", |f| f.error.as_str())
        )));
    }
    let average_mape = done.iter().map(|f| f.fold_mape).sum::<f64>() / done.len() as f64;
    Ok(ValidationSummary {
        model_kind: kind,
        alternatives,
        folds: done,
        failed,
        average_mape,
        definition: SHARE_DEFINITION.to_string(),
    })
}

fn run_fold<T: Scalar>(
    fold: &Fold<T>,
    spec: &ModelSpec,
    kind: ModelKind,
    alternatives: &[String],
    options: &EstimateOptions,
    fixed: Option<&ParameterVector<f64>>,
) -> Result<FoldOutcome> {
    let fail = |e: Error| {
        FoldOutcome::Failed(FailedFold {
            fold_index: fold.index,
            error: e.to_string(),
        })
    };
    let (params, train_loglik) = match fixed {
        Some(p) => {
            let compiled = CompiledSpec::compile(spec, fold.train.schema())?;
            let values: Vec<T> = p.arrange(compiled.parameter_names())?.into_iter().map(T::lit).collect();
            let fm = FeatureMatrix::build(&compiled, &fold.train)?;
            let draws = fold_draws(&compiled, fm.n_units(), options)?;
            let ll = simulated_log_likelihood(kind, &compiled, &fm, &values, draws.as_ref(), false)?;
            (ParameterVector::new(compiled.parameter_names().to_vec(), values)?, ll.loglik)
        }
        None => match estimate(&fold.train, spec, kind, options) {
            Ok(est) => (est.result.params, est.result.loglik_final),
            Err(e) => return Ok(fail(e)),
        },
    };

    let compiled = CompiledSpec::compile(spec, fold.test.schema())?;
    let (_, test_units) = crate::model::draw_units(&fold.test);
    let draws = fold_draws(&compiled, test_units, options)?;
    let model = ChoiceModel::new(kind, compiled, &params, draws)?;
    let probabilities = model.predict(&fold.test)?;

    let n = fold.test.len() as f64;
    let mut predicted = vec![0.0; alternatives.len()];
    let mut observed = vec![0.0; alternatives.len()];
    for (s, probs) in fold.test.situations().iter().zip(&probabilities) {
        for (j, alt) in s.alternatives.iter().enumerate() {
            if let Some(slot) = alternatives.iter().position(|a| *a == alt.alt_id) {
                predicted[slot] += probs[j].to_f64_lossy();
                if j == s.chosen {
                    observed[slot] += 1.0;
                }
            }
        }
    }
    predicted.iter_mut().for_each(|v| *v /= n);
    observed.iter_mut().for_each(|v| *v /= n);
    let fold_mape = mape(&observed, &predicted).map_err(|e| Error::Fold {
        fold: fold.index,
        source: Box::new(e),
    })?;
    Ok(FoldOutcome::Done(FoldResult {
        fold_index: fold.index,
        train_loglik: train_loglik.to_f64_lossy(),
        predicted_shares: predicted,
        observed_shares: observed,
        fold_mape,
    }))
}

fn fold_draws<T: Scalar>(
    compiled: &CompiledSpec,
    units: usize,
    options: &EstimateOptions,
) -> Result<Option<DrawMatrix<T>>> {
    if compiled.n_random() == 0 {
        return Ok(None);
    }
    DrawMatrix::generate(units, options.draws, compiled.n_random(), options.generator, options.seed).map(Some)
}
