//! Shared evaluation machinery for the utility and regret models: cached
//! feature rows, the draw-averaged probability and the simulated
//! log-likelihood with its exact gradient.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choicedata::{ChoiceDataset, ChoiceTask};
use crate::error::{Error, Result};
use crate::rrm;
use crate::rum;
use crate::rum::draws::{DrawBlock, DrawMatrix};
use crate::rum::spec::CompiledSpec;
use crate::scalar::Scalar;

/// Probabilities of chosen alternatives are clamped at this floor.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

/// Situations per parallel work item. Partial sums are combined in chunk
/// order, so results do not depend on the thread count.
const CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rum,
    Rrm,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Rum => "rum",
            ModelKind::Rrm => "rrm",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rum" | "mnl" | "mixed-logit" => Ok(ModelKind::Rum),
            "rrm" => Ok(ModelKind::Rrm),
            other => Err(Error::InvalidArgument(format!("unknown model kind `{other}`"))),
        }
    }
}

/// Fills `probs` (one entry per available alternative) and, when `grad` is
/// given, the derivative of the chosen alternative's probability with
/// respect to each term coefficient. Returns `false` on non-finite values.
#[allow(clippy::too_many_arguments)]
#[inline]
pub(crate) fn kernel<T: Scalar>(
    kind: ModelKind,
    x: &[T],
    n_alts: usize,
    beta: &[T],
    chosen: usize,
    probs: &mut [T],
    grad: Option<&mut [T]>,
    scratch: &mut Vec<T>,
) -> bool {
    match kind {
        ModelKind::Rum => rum::mnl_kernel(x, n_alts, beta, chosen, probs, grad),
        ModelKind::Rrm => rrm::rrm_kernel(x, n_alts, beta, chosen, probs, grad, scratch),
    }
}

/// Assigns each situation a draw unit: its respondent, or the situation
/// itself when respondent ids are blank.
pub fn draw_units<T: Scalar>(ds: &ChoiceDataset<T>) -> (Vec<usize>, usize) {
    if ds.situations().iter().any(|s| s.respondent_id.is_empty()) {
        return ((0..ds.len()).collect(), ds.len());
    }
    let mut slot: HashMap<&str, usize> = HashMap::new();
    let units = ds
        .situations()
        .iter()
        .map(|s| {
            let next = slot.len();
            *slot.entry(s.respondent_id.as_str()).or_insert(next)
        })
        .collect();
    (units, slot.len())
}

/// Feature rows of every available alternative, computed once per dataset.
#[derive(Clone, Debug)]
pub struct FeatureMatrix<T> {
    n_terms: usize,
    starts: Vec<usize>,
    counts: Vec<usize>,
    features: Vec<T>,
    chosen: Vec<usize>,
    units: Vec<usize>,
    n_units: usize,
}

impl<T: Scalar> FeatureMatrix<T> {
    pub fn build(spec: &CompiledSpec, ds: &ChoiceDataset<T>) -> Result<Self> {
        let (units, n_units) = draw_units(ds);
        let mut features = Vec::new();
        let mut starts = Vec::with_capacity(ds.len());
        let mut counts = Vec::with_capacity(ds.len());
        let mut chosen = Vec::with_capacity(ds.len());
        for s in ds.situations() {
            starts.push(features.len() / spec.n_terms().max(1));
            let positions = spec.features_into(&s.task, &mut features);
            let c = positions.iter().position(|&j| j == s.chosen).ok_or_else(|| Error::Integrity {
                situation: s.situation_id.clone(),
                reason: "chosen alternative is unavailable".into(),
            })?;
            if positions.len() < 2 {
                return Err(Error::Integrity {
                    situation: s.situation_id.clone(),
                    reason: "fewer than 2 available alternatives".into(),
                });
            }
            counts.push(positions.len());
            chosen.push(c);
        }
        Ok(Self {
            n_terms: spec.n_terms(),
            starts,
            counts,
            features,
            chosen,
            units,
            n_units,
        })
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    fn rows(&self, n: usize) -> &[T] {
        let start = self.starts[n] * self.n_terms;
        &self.features[start..start + self.counts[n] * self.n_terms]
    }
}

/// Simulated log-likelihood and its gradient in canonical parameter order.
#[derive(Clone, Debug, PartialEq)]
pub struct LikelihoodEval<T> {
    pub loglik: T,
    pub gradient: Vec<T>,
    /// Situations whose chosen probability hit [`PROBABILITY_FLOOR`].
    pub clamped: usize,
}

fn check_draws<T: Scalar>(spec: &CompiledSpec, draws: Option<&DrawMatrix<T>>, units: usize) -> Result<()> {
    if spec.n_random() == 0 {
        return Ok(());
    }
    let draws = draws.ok_or_else(|| Error::InvalidArgument("random coefficients need a draw matrix".into()))?;
    if draws.dims() < spec.n_random() {
        return Err(Error::InvalidArgument(format!(
            "draw matrix has {} dimensions, model needs {}",
            draws.dims(),
            spec.n_random()
        )));
    }
    if draws.units() < units {
        return Err(Error::InvalidArgument(format!(
            "draw matrix covers {} units, data has {units}",
            draws.units()
        )));
    }
    Ok(())
}

struct Workspace<T> {
    beta: Vec<T>,
    probs: Vec<T>,
    dprob: Vec<T>,
    scratch: Vec<T>,
}

impl<T: Scalar> Workspace<T> {
    fn new(n_terms: usize) -> Self {
        Self {
            beta: vec![T::zero(); n_terms],
            probs: Vec::new(),
            dprob: vec![T::zero(); n_terms],
            scratch: Vec::new(),
        }
    }
}

/// Draw-averaged probability of `chosen` and, if requested, its derivative
/// with respect to every parameter (accumulated into `dparams`).
#[allow(clippy::too_many_arguments)]
fn simulated_chosen<T: Scalar>(
    kind: ModelKind,
    spec: &CompiledSpec,
    params: &[T],
    x: &[T],
    n_alts: usize,
    chosen: usize,
    block: Option<DrawBlock<'_, T>>,
    mut dparams: Option<&mut [T]>,
    ws: &mut Workspace<T>,
) -> Option<T> {
    let n_terms = spec.n_terms();
    ws.probs.resize(n_alts, T::zero());
    ws.beta.copy_from_slice(&params[..n_terms]);
    if let Some(d) = dparams.as_deref_mut() {
        d.iter_mut().for_each(|v| *v = T::zero());
    }

    let block = match block {
        Some(b) if spec.n_random() > 0 => b,
        _ => {
            let want = dparams.is_some();
            let grad = if want { Some(&mut ws.dprob[..]) } else { None };
            if !kernel(kind, x, n_alts, &ws.beta, chosen, &mut ws.probs, grad, &mut ws.scratch) {
                return None;
            }
            if let Some(d) = dparams {
                d[..n_terms].copy_from_slice(&ws.dprob);
            }
            return Some(ws.probs[chosen]);
        }
    };

    let mut total = T::zero();
    for r in 0..block.draws {
        let z = block.row(r);
        for (d, &(term, sd)) in spec.random_terms().iter().enumerate() {
            ws.beta[term] = params[term] + params[sd].abs() * z[d];
        }
        let grad = if dparams.is_some() { Some(&mut ws.dprob[..]) } else { None };
        if !kernel(kind, x, n_alts, &ws.beta, chosen, &mut ws.probs, grad, &mut ws.scratch) {
            return None;
        }
        total = total + ws.probs[chosen];
        if let Some(d) = dparams.as_deref_mut() {
            for (dt, &g) in d.iter_mut().zip(&ws.dprob[..n_terms]) {
                *dt = *dt + g;
            }
            for (k, &(term, sd)) in spec.random_terms().iter().enumerate() {
                let sign = if params[sd] >= T::zero() { T::one() } else { -T::one() };
                d[sd] = d[sd] + ws.dprob[term] * sign * z[k];
            }
        }
    }
    let r = T::from_usize_lossy(block.draws);
    if let Some(d) = dparams {
        d.iter_mut().for_each(|v| *v = *v / r);
    }
    Some(total / r)
}

/// `Σ_n ln P̄_n(chosen)` over the cached situations, with the exact gradient
/// of the simulated objective when `with_gradient` is set.
pub fn simulated_log_likelihood<T: Scalar>(
    kind: ModelKind,
    spec: &CompiledSpec,
    fm: &FeatureMatrix<T>,
    params: &[T],
    draws: Option<&DrawMatrix<T>>,
    with_gradient: bool,
) -> Result<LikelihoodEval<T>> {
    if params.len() != spec.n_params() {
        return Err(Error::InvalidArgument(format!(
            "{} parameter values for {} parameters",
            params.len(),
            spec.n_params()
        )));
    }
    check_draws(spec, draws, fm.n_units())?;
    let n_params = spec.n_params();
    let floor = T::lit(PROBABILITY_FLOOR);
    let n_chunks = fm.len().div_ceil(CHUNK);

    let partials: Vec<Result<(T, Vec<T>, usize)>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut ws = Workspace::new(spec.n_terms());
            let mut ll = T::zero();
            let mut grad = vec![T::zero(); if with_gradient { n_params } else { 0 }];
            let mut dp = vec![T::zero(); n_params];
            let mut clamped = 0;
            for n in c * CHUNK..((c + 1) * CHUNK).min(fm.len()) {
                let block = draws.filter(|_| spec.n_random() > 0).map(|d| d.block(fm.units[n]));
                let d = if with_gradient { Some(&mut dp[..]) } else { None };
                let p = simulated_chosen(kind, spec, params, fm.rows(n), fm.counts[n], fm.chosen[n], block, d, &mut ws)
                    .ok_or_else(|| Error::Numeric(format!("non-finite utility or regret in situation {n}")))?;
                if p < floor || p.is_nan() {
                    ll = ll + floor.ln();
                    clamped += 1;
                    continue;
                }
                ll = ll + p.ln();
                if with_gradient {
                    for (g, v) in grad.iter_mut().zip(&dp) {
                        *g = *g + *v / p;
                    }
                }
            }
            Ok((ll, grad, clamped))
        })
        .collect();

    let mut loglik = T::zero();
    let mut gradient = vec![T::zero(); if with_gradient { n_params } else { 0 }];
    let mut clamped = 0;
    for part in partials {
        let (ll, g, c) = part?;
        loglik = loglik + ll;
        for (a, b) in gradient.iter_mut().zip(g) {
            *a = *a + b;
        }
        clamped += c;
    }
    Ok(LikelihoodEval {
        loglik,
        gradient,
        clamped,
    })
}

/// Probability vector over all alternatives of `task` (zero for unavailable
/// ones), averaged over the draws in `block` when the model has random
/// coefficients.
pub fn task_probabilities<T: Scalar>(
    kind: ModelKind,
    spec: &CompiledSpec,
    params: &[T],
    task: &ChoiceTask<T>,
    block: Option<DrawBlock<'_, T>>,
) -> Result<Vec<T>> {
    if params.len() != spec.n_params() {
        return Err(Error::InvalidArgument("parameter count does not match the model".into()));
    }
    if spec.n_random() > 0 {
        let b = block.ok_or_else(|| Error::InvalidArgument("random coefficients need draws".into()))?;
        if b.draws == 0 {
            return Err(Error::InvalidArgument("draw count R must be positive".into()));
        }
        if b.dims < spec.n_random() {
            return Err(Error::InvalidArgument("draw block has too few dimensions".into()));
        }
    }
    let mut x = Vec::new();
    let positions = spec.features_into(task, &mut x);
    if positions.len() < 2 {
        return Err(Error::Integrity {
            situation: task.situation_id.clone(),
            reason: "fewer than 2 available alternatives".into(),
        });
    }
    let n_alts = positions.len();
    let mut ws = Workspace::new(spec.n_terms());
    let mut avg = vec![T::zero(); n_alts];
    let numeric = || Error::Numeric(format!("non-finite utility or regret in situation `{}`", task.situation_id));
    match block.filter(|_| spec.n_random() > 0) {
        None => {
            ws.probs.resize(n_alts, T::zero());
            ws.beta.copy_from_slice(&params[..spec.n_terms()]);
            if !kernel(kind, &x, n_alts, &ws.beta, 0, &mut avg, None, &mut ws.scratch) {
                return Err(numeric());
            }
        }
        Some(b) => {
            ws.probs.resize(n_alts, T::zero());
            ws.beta.copy_from_slice(&params[..spec.n_terms()]);
            for r in 0..b.draws {
                let z = b.row(r);
                for (d, &(term, sd)) in spec.random_terms().iter().enumerate() {
                    ws.beta[term] = params[term] + params[sd].abs() * z[d];
                }
                if !kernel(kind, &x, n_alts, &ws.beta, 0, &mut ws.probs, None, &mut ws.scratch) {
                    return Err(numeric());
                }
                for (a, p) in avg.iter_mut().zip(&ws.probs) {
                    *a = *a + *p;
                }
            }
            let r = T::from_usize_lossy(b.draws);
            avg.iter_mut().for_each(|v| *v = *v / r);
        }
    }
    let mut out = vec![T::zero(); task.alternatives.len()];
    for (p, &j) in avg.into_iter().zip(&positions) {
        out[j] = p;
    }
    Ok(out)
}

/// A fitted (or given) model ready to predict.
#[derive(Clone, Debug)]
pub struct ChoiceModel<T> {
    pub kind: ModelKind,
    pub spec: CompiledSpec,
    pub params: Vec<T>,
    pub draws: Option<DrawMatrix<T>>,
}

impl<T: Scalar> ChoiceModel<T> {
    pub fn new(
        kind: ModelKind,
        spec: CompiledSpec,
        params: &crate::rum::params::ParameterVector<T>,
        draws: Option<DrawMatrix<T>>,
    ) -> Result<Self> {
        let params = params.arrange(spec.parameter_names())?;
        if spec.n_random() > 0 && draws.is_none() {
            return Err(Error::InvalidArgument("random coefficients need a draw matrix".into()));
        }
        Ok(Self {
            kind,
            spec,
            params,
            draws,
        })
    }

    /// Probabilities for `task`, using the draw block of `unit`.
    pub fn probabilities(&self, task: &ChoiceTask<T>, unit: usize) -> Result<Vec<T>> {
        let block = match &self.draws {
            Some(d) if self.spec.n_random() > 0 => {
                if unit >= d.units() {
                    return Err(Error::InvalidArgument(format!("no draws for unit {unit}")));
                }
                Some(d.block(unit))
            }
            _ => None,
        };
        task_probabilities(self.kind, &self.spec, &self.params, task, block)
    }

    /// Probability vectors for every situation of `ds`, in order.
    pub fn predict(&self, ds: &ChoiceDataset<T>) -> Result<Vec<Vec<T>>> {
        let (units, n_units) = draw_units(ds);
        if let Some(d) = &self.draws {
            if self.spec.n_random() > 0 && d.units() < n_units {
                return Err(Error::InvalidArgument(format!(
                    "draw matrix covers {} units, data has {n_units}",
                    d.units()
                )));
            }
        }
        ds.situations()
            .par_iter()
            .zip(units.par_iter())
            .map(|(s, &u)| self.probabilities(&s.task, u))
            .collect()
    }
}
