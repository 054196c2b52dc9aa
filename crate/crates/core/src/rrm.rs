//! Random regret minimization.
//!
//! The regret of alternative `i` sums, over every other available
//! alternative `j` and every term `t`, the softplus
//! `ln(1 + exp(β_t (x_jt - x_it)))`. Choice probabilities are the softmax of
//! negative regrets. Constants and other indicator terms enter as ordinary
//! features, so the term layout is shared with the utility model.

use crate::choicedata::{ChoiceDataset, ChoiceTask};
use crate::error::{Error, Result};
use crate::model::{self, FeatureMatrix, LikelihoodEval, ModelKind};
use crate::rum::draws::DrawMatrix;
use crate::rum::params::ParameterVector;
use crate::rum::spec::CompiledSpec;
use crate::scalar::{logistic, softmax_in_place, softplus, Scalar};

/// Specification and coefficients for regret evaluation.
#[derive(Clone, Debug)]
pub struct RegretContext<T> {
    pub spec: CompiledSpec,
    pub params: ParameterVector<T>,
}

impl<T: Scalar> RegretContext<T> {
    pub fn new(spec: CompiledSpec, params: ParameterVector<T>) -> Result<Self> {
        params.arrange(spec.parameter_names())?;
        Ok(Self { spec, params })
    }

    fn term_coefficients(&self) -> Result<Vec<T>> {
        if self.spec.n_random() > 0 {
            return Err(Error::Unsupported(
                "regret of a single realization needs fixed coefficients".into(),
            ));
        }
        self.params.arrange(self.spec.parameter_names())
    }
}

/// Regret of `i` relative to `j` on one attribute.
#[inline]
pub fn pairwise_regret<T: Scalar>(beta_k: T, x_jk: T, x_ik: T) -> T {
    softplus(beta_k * (x_jk - x_ik))
}

/// Total regret of alternative `i` against every other available alternative.
pub fn total_regret<T: Scalar>(ctx: &RegretContext<T>, task: &ChoiceTask<T>, i: usize) -> Result<T> {
    let beta = ctx.term_coefficients()?;
    match task.alternatives.get(i) {
        Some(alt) if alt.available => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "alternative {i} of situation `{}` is not available",
                task.situation_id
            )))
        }
    }
    let mut x = Vec::new();
    let positions = ctx.spec.features_into(task, &mut x);
    let row = positions.iter().position(|&j| j == i).expect("available");
    let p = beta.len();
    let mine = &x[row * p..(row + 1) * p];
    let mut total = T::zero();
    for other in (0..positions.len()).filter(|&o| o != row) {
        let theirs = &x[other * p..(other + 1) * p];
        for t in 0..p {
            total = total + pairwise_regret(beta[t], theirs[t], mine[t]);
        }
    }
    Ok(total)
}

/// Regret-based choice probabilities (zero for unavailable alternatives).
pub fn rrm_probability<T: Scalar>(ctx: &RegretContext<T>, task: &ChoiceTask<T>) -> Result<Vec<T>> {
    let values = ctx.term_coefficients()?;
    model::task_probabilities(ModelKind::Rrm, &ctx.spec, &values, task, None)
}

/// Simulated log-likelihood of the regret model; `draws` is required exactly
/// when the specification has random coefficients.
pub fn rrm_log_likelihood<T: Scalar>(
    ctx: &RegretContext<T>,
    ds: &ChoiceDataset<T>,
    draws: Option<&DrawMatrix<T>>,
) -> Result<LikelihoodEval<T>> {
    let fm = FeatureMatrix::build(&ctx.spec, ds)?;
    let values = ctx.params.arrange(ctx.spec.parameter_names())?;
    model::simulated_log_likelihood(ModelKind::Rrm, &ctx.spec, &fm, &values, draws, true)
}

/// Regret kernel. `scratch` receives the `n_alts x P` matrix of regret
/// derivatives when a gradient is requested.
#[inline]
pub(crate) fn rrm_kernel<T: Scalar>(
    x: &[T],
    n_alts: usize,
    beta: &[T],
    chosen: usize,
    probs: &mut [T],
    grad: Option<&mut [T]>,
    scratch: &mut Vec<T>,
) -> bool {
    let p = beta.len();
    let want = grad.is_some();
    if want {
        scratch.clear();
        scratch.resize(n_alts * p, T::zero());
    }
    for i in 0..n_alts {
        let mine = &x[i * p..(i + 1) * p];
        let mut regret = T::zero();
        for j in (0..n_alts).filter(|&j| j != i) {
            let theirs = &x[j * p..(j + 1) * p];
            for t in 0..p {
                let delta = theirs[t] - mine[t];
                let z = beta[t] * delta;
                regret = regret + softplus(z);
                if want {
                    scratch[i * p + t] = scratch[i * p + t] + logistic(z) * delta;
                }
            }
        }
        probs[i] = -regret;
    }
    if !softmax_in_place(&mut probs[..n_alts]) {
        return false;
    }
    if let Some(grad) = grad {
        let pc = probs[chosen];
        for t in 0..p {
            let mean = (0..n_alts).fold(T::zero(), |acc, i| acc + probs[i] * scratch[i * p + t]);
            grad[t] = pc * (mean - scratch[chosen * p + t]);
        }
    }
    true
}
