//! Maximum-likelihood estimation shared by the utility and regret models.

pub mod covariance;
pub mod optimize;
pub mod report;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::choicedata::ChoiceDataset;
use crate::error::{Error, Result};
use crate::model::{simulated_log_likelihood, ChoiceModel, FeatureMatrix, ModelKind};
use crate::rum::draws::{DrawGenerator, DrawMatrix};
use crate::rum::params::{NamedValues, ParameterVector};
use crate::rum::spec::{CompiledSpec, ModelSpec};
use crate::scalar::Scalar;

pub use covariance::{covariance, covariance_from_hessian, numerical_hessian, Covariance, SINGULAR_RATIO};
pub use optimize::{maximize, MaximizeOutcome, MaximizeSettings, Termination};
pub use report::{EstimationReport, ReportHeader};

/// Two-sided critical values for the significance marks.
pub const CRITICAL_5: f64 = 1.960;
pub const CRITICAL_10: f64 = 1.645;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Significance {
    #[serde(rename = "**")]
    FivePercent,
    #[serde(rename = "*")]
    TenPercent,
    #[serde(rename = "none")]
    None,
}

impl Significance {
    pub fn from_t<T: Scalar>(t: T) -> Self {
        let t = t.to_f64_lossy().abs();
        if t >= CRITICAL_5 {
            Significance::FivePercent
        } else if t >= CRITICAL_10 {
            Significance::TenPercent
        } else {
            Significance::None
        }
    }

    pub fn mark(self) -> &'static str {
        match self {
            Significance::FivePercent => "**",
            Significance::TenPercent => "*",
            Significance::None => "",
        }
    }
}

impl fmt::Display for Significance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Significance::None => "none",
            other => other.mark(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMark {
    pub name: String,
    pub mark: Significance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct EstimationResult<T> {
    pub params: ParameterVector<T>,
    pub std_errors: NamedValues<T>,
    pub t_stats: NamedValues<T>,
    pub significance: Vec<NamedMark>,
    pub loglik_final: T,
    pub loglik_null: T,
    pub rho_squared: T,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: T,
}

impl<T: Scalar> EstimationResult<T> {
    /// Assembles the result from a maximum and its standard errors.
    pub fn assemble(
        params: ParameterVector<T>,
        std_errors: Vec<T>,
        loglik_final: T,
        loglik_null: T,
        iterations: usize,
        converged: bool,
        gradient_norm: T,
    ) -> Self {
        let names = params.names().to_vec();
        let t: Vec<T> = params
            .values()
            .iter()
            .zip(&std_errors)
            .map(|(b, se)| if *se > T::zero() { *b / *se } else { T::zero() })
            .collect();
        let significance = names
            .iter()
            .zip(&t)
            .map(|(name, t)| NamedMark {
                name: name.clone(),
                mark: Significance::from_t(*t),
            })
            .collect();
        Self {
            std_errors: params.with_values(std_errors),
            t_stats: params.with_values(t),
            significance,
            rho_squared: rho_squared(loglik_final, loglik_null),
            params,
            loglik_final,
            loglik_null,
            iterations,
            converged,
            gradient_norm,
        }
    }

    pub fn std_error(&self, name: &str) -> Option<T> {
        self.std_errors.get(name)
    }

    pub fn mark(&self, name: &str) -> Option<Significance> {
        self.significance.iter().find(|m| m.name == name).map(|m| m.mark)
    }
}

/// `1 - LL / LL0`.
pub fn rho_squared<T: Scalar>(loglik: T, loglik_null: T) -> T {
    if loglik_null == T::zero() {
        return T::zero();
    }
    T::one() - loglik / loglik_null
}

/// Log-likelihood of equal shares over each situation's available set.
pub fn null_loglik<T: Scalar>(ds: &ChoiceDataset<T>) -> T {
    ds.situations()
        .iter()
        .map(|s| -T::from_usize_lossy(s.n_available()).ln())
        .fold(T::zero(), |a, b| a + b)
}

/// How [`estimate`] simulates random coefficients and where it starts.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateOptions {
    pub draws: usize,
    pub generator: DrawGenerator,
    pub seed: u64,
    pub settings: MaximizeSettings,
    /// Starting values by name; missing names fall back to the default start.
    pub start: Option<ParameterVector<f64>>,
    /// Initial spread of random coefficients after the fixed-coefficient stage.
    pub initial_sd: f64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            draws: 500,
            generator: DrawGenerator::Halton,
            seed: 0,
            settings: MaximizeSettings::default(),
            start: None,
            initial_sd: 0.1,
        }
    }
}

/// A fitted model together with its estimation diagnostics.
#[derive(Clone, Debug)]
pub struct Estimation<T> {
    pub result: EstimationResult<T>,
    pub covariance: Covariance<T>,
    pub model: ChoiceModel<T>,
    pub termination: Termination,
    /// Situations whose chosen probability was clamped at the final point.
    pub clamped: usize,
    pub trace: Vec<T>,
}

/// Maximizes the simulated likelihood of `spec` on `ds`.
///
/// Without explicit start values the fixed-coefficient model starts from
/// zeros; a model with random coefficients first fits its fixed counterpart
/// and starts from those means with spreads of `initial_sd`.
pub fn estimate<T: Scalar>(
    ds: &ChoiceDataset<T>,
    spec: &ModelSpec,
    kind: ModelKind,
    options: &EstimateOptions,
) -> Result<Estimation<T>> {
    if spec.has_random() && kind == ModelKind::Rrm {
        return Err(Error::Unsupported("random coefficients are only supported for the utility model".into()));
    }
    let compiled = CompiledSpec::compile(spec, ds.schema())?;
    let names = compiled.parameter_names().to_vec();
    let fm = FeatureMatrix::build(&compiled, ds)?;
    let draws = if compiled.n_random() > 0 {
        Some(DrawMatrix::<T>::generate(
            fm.n_units(),
            options.draws,
            compiled.n_random(),
            options.generator,
            options.seed,
        )?)
    } else {
        None
    };

    let mut start = vec![T::zero(); names.len()];
    if compiled.n_random() > 0 && !covers(&options.start, &names) {
        let warm = estimate::<T>(
            ds,
            &spec.fixed_counterpart(),
            kind,
            &EstimateOptions {
                start: options.start.clone(),
                ..options.clone()
            },
        )?;
        for (slot, name) in start.iter_mut().zip(&names) {
            if let Some(v) = warm.result.params.get(name) {
                *slot = v;
            }
        }
        for &(_, sd) in compiled.random_terms() {
            start[sd] = T::lit(options.initial_sd);
        }
    }
    if let Some(given) = &options.start {
        for (slot, name) in start.iter_mut().zip(&names) {
            if let Some(v) = given.get(name) {
                *slot = T::lit(v);
            }
        }
    }

    let objective = |theta: &[T]| {
        let eval = simulated_log_likelihood(kind, &compiled, &fm, theta, draws.as_ref(), true)?;
        Ok((eval.loglik, eval.gradient))
    };
    let outcome = maximize(objective, &start, &options.settings)?;

    let gradient = |theta: &[T]| {
        simulated_log_likelihood(kind, &compiled, &fm, theta, draws.as_ref(), true).map(|e| e.gradient)
    };
    let cov = covariance(gradient, &outcome.params, &names)?;
    let final_eval = simulated_log_likelihood(kind, &compiled, &fm, &outcome.params, draws.as_ref(), false)?;

    let params = ParameterVector::new(names, outcome.params.clone())?;
    let result = EstimationResult::assemble(
        params.clone(),
        cov.std_errors.clone(),
        outcome.value,
        null_loglik(ds),
        outcome.iterations,
        outcome.converged(),
        outcome.gradient_norm(),
    );
    let model = ChoiceModel::new(kind, compiled, &params, draws)?;
    Ok(Estimation {
        result,
        covariance: cov,
        model,
        termination: outcome.termination,
        clamped: final_eval.clamped,
        trace: outcome.trace,
    })
}

fn covers(start: &Option<ParameterVector<f64>>, names: &[String]) -> bool {
    start.as_ref().is_some_and(|s| names.iter().all(|n| s.get(n).is_some()))
}
