//! Stated-preference designs on the courier attribute grid and choice
//! simulation from known parameters.

use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choicedata::{
    AlternativeRecord, AttributeKind, AttributeSchema, ChoiceDataset, ChoiceSituation, ChoiceTask, Design,
};
use crate::error::{Error, Result};
use crate::model::{task_probabilities, ModelKind};
use crate::rng::{substream, Stream};
use crate::rum::draws::DrawBlock;
use crate::rum::params::ParameterVector;
use crate::rum::spec::{CompiledSpec, ModelSpec};
use crate::scalar::Scalar;

const RESPONDENT_STREAM: u64 = 1 << 47;

/// How the three reputation levels are coded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReputationCoding {
    /// One column coded 0 (low), 1 (medium), 2 (high).
    #[default]
    Linear,
    /// Indicators for medium and high against low.
    Dummies,
}

/// Attribute levels of the courier choice experiment. Delivery time is in
/// hours with "once a day" coded 24 and "within 2-4 days" coded 72.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignGrid {
    pub shipping_cost: Vec<f64>,
    pub delivery_time: Vec<f64>,
    pub reputation_levels: usize,
    pub tracking: Vec<f64>,
    pub e_notification: Vec<f64>,
    pub p_time_window: Vec<f64>,
    /// Home, other location, pickup point.
    pub p_location_levels: usize,
    /// On app, by cash.
    pub payment_levels: usize,
    pub tip: Vec<f64>,
    pub reputation_coding: ReputationCoding,
    /// Consecutive situations answered by the same respondent.
    pub tasks_per_respondent: usize,
}

impl Default for DesignGrid {
    fn default() -> Self {
        Self {
            shipping_cost: vec![14.0, 18.0, 22.0, 26.0],
            delivery_time: vec![1.5, 3.0, 5.0, 24.0, 72.0],
            reputation_levels: 3,
            tracking: vec![0.0, 1.0],
            e_notification: vec![0.0, 1.0],
            p_time_window: vec![0.0, 1.0],
            p_location_levels: 3,
            payment_levels: 2,
            tip: vec![0.0, 1.0, 2.0, 3.0],
            reputation_coding: ReputationCoding::Linear,
            tasks_per_respondent: 1,
        }
    }
}

pub const COVARIATES: [&str; 2] = ["age", "income"];

impl DesignGrid {
    /// Level counts in the order cost, time, reputation, tracking,
    /// e-notification, time window, location, payment, tip.
    pub fn level_counts(&self) -> [usize; 9] {
        [
            self.shipping_cost.len(),
            self.delivery_time.len(),
            self.reputation_levels,
            self.tracking.len(),
            self.e_notification.len(),
            self.p_time_window.len(),
            self.p_location_levels,
            self.payment_levels,
            self.tip.len(),
        ]
    }

    pub fn schema(&self) -> AttributeSchema {
        use AttributeKind::*;
        let mut cols: Vec<(&str, AttributeKind)> = vec![("cost", Continuous), ("time", Continuous)];
        match self.reputation_coding {
            ReputationCoding::Linear => cols.push((
                "reputation",
                Categorical {
                    levels: self.reputation_levels,
                },
            )),
            ReputationCoding::Dummies => {
                cols.push(("reputation_med", Binary));
                cols.push(("reputation_high", Binary));
            }
        }
        cols.extend([
            ("tracking", Binary),
            ("e_notification", Binary),
            ("p_time_window", Binary),
            ("p_location_other", Binary),
            ("p_location_pickup", Binary),
            ("payment_cash", Binary),
            ("tip", Continuous),
        ]);
        AttributeSchema::new(
            cols.iter().map(|(n, _)| n.to_string()).collect(),
            cols.iter().map(|(_, k)| *k).collect(),
            COVARIATES.iter().map(|s| s.to_string()).collect(),
        )
        .expect("static schema is valid")
    }

    fn check(&self) -> Result<()> {
        let counts = self.level_counts();
        if counts.contains(&0) || self.reputation_levels < 2 || self.p_location_levels != 3 {
            return Err(Error::InvalidArgument("design grid has an attribute without levels".into()));
        }
        if self.tasks_per_respondent == 0 {
            return Err(Error::InvalidArgument("tasks_per_respondent must be positive".into()));
        }
        Ok(())
    }

    fn sample_alternative<R: Rng>(&self, rng: &mut R, cost: f64, time: f64) -> Vec<f64> {
        let mut row = vec![cost, time];
        let reputation = rng.random_range(0..self.reputation_levels);
        match self.reputation_coding {
            ReputationCoding::Linear => row.push(reputation as f64),
            ReputationCoding::Dummies => {
                row.push(f64::from(u8::from(reputation == 1)));
                row.push(f64::from(u8::from(reputation == 2)));
            }
        }
        let pick = |rng: &mut R, levels: &[f64]| *levels.choose(rng).expect("non-empty levels");
        row.push(pick(rng, &self.tracking));
        row.push(pick(rng, &self.e_notification));
        row.push(pick(rng, &self.p_time_window));
        let location = rng.random_range(0..self.p_location_levels);
        row.push(f64::from(u8::from(location == 1)));
        row.push(f64::from(u8::from(location == 2)));
        row.push(f64::from(u8::from(rng.random_range(0..self.payment_levels) == 1)));
        row.push(pick(rng, &self.tip));
        row
    }
}

/// Draws a design: every attribute uniform over its levels. With four
/// alternatives the fourth courier is the slow, cheap one: its time is drawn
/// from levels at least the slowest of couriers 1-3 and its cost from levels
/// at most the cheapest of them.
pub fn generate_design<T: Scalar>(
    grid: &DesignGrid,
    n_situations: usize,
    n_alternatives: usize,
    seed: u64,
) -> Result<Design<T>> {
    if n_situations == 0 {
        return Err(Error::InvalidArgument("n_situations must be positive".into()));
    }
    if n_alternatives < 2 {
        return Err(Error::InvalidArgument("at least 2 alternatives required".into()));
    }
    grid.check()?;
    let schema = grid.schema();
    let per = grid.tasks_per_respondent;

    let n_respondents = n_situations.div_ceil(per);
    let covariates: Vec<Vec<T>> = (0..n_respondents)
        .map(|r| {
            let mut rng = substream(seed, Stream::Design, RESPONDENT_STREAM | r as u64);
            let age = rng.random_range(18..=75) as f64;
            let income = rng.random_range(1..=5) as f64;
            vec![T::lit(age), T::lit(income)]
        })
        .collect();

    let tasks = (0..n_situations)
        .into_par_iter()
        .map(|n| {
            let mut rng = substream(seed, Stream::Design, n as u64);
            let constrained = n_alternatives == 4;
            let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_alternatives);
            for j in 0..n_alternatives {
                let (cost, time) = if constrained && j == 3 {
                    let cheapest = rows.iter().map(|r| r[0]).fold(f64::INFINITY, f64::min);
                    let slowest = rows.iter().map(|r| r[1]).fold(f64::NEG_INFINITY, f64::max);
                    let costs: Vec<f64> = grid.shipping_cost.iter().copied().filter(|&c| c <= cheapest).collect();
                    let times: Vec<f64> = grid.delivery_time.iter().copied().filter(|&t| t >= slowest).collect();
                    (*costs.choose(&mut rng).unwrap(), *times.choose(&mut rng).unwrap())
                } else {
                    (
                        *grid.shipping_cost.choose(&mut rng).unwrap(),
                        *grid.delivery_time.choose(&mut rng).unwrap(),
                    )
                };
                rows.push(grid.sample_alternative(&mut rng, cost, time));
            }
            ChoiceTask {
                situation_id: format!("s{}", n + 1),
                respondent_id: format!("r{}", n / per + 1),
                alternatives: rows
                    .into_iter()
                    .enumerate()
                    .map(|(j, row)| AlternativeRecord {
                        alt_id: format!("c{}", j + 1),
                        attributes: row.into_iter().map(T::lit).collect(),
                        available: true,
                    })
                    .collect(),
                covariates: covariates[n / per].clone(),
            }
        })
        .collect();
    Design::new(schema, tasks)
}

/// Samples one choice per situation from the model probabilities at `truth`.
/// Random coefficients get one realization per respondent.
pub fn simulate_choices<T: Scalar>(
    design: &Design<T>,
    spec: &ModelSpec,
    truth: &ParameterVector<T>,
    kind: ModelKind,
    seed: u64,
) -> Result<ChoiceDataset<T>> {
    if kind == ModelKind::Rrm && spec.has_random() {
        return Err(Error::Unsupported(
            "simulating regret models with random coefficients is not supported".into(),
        ));
    }
    let compiled = CompiledSpec::compile(spec, design.schema())?;
    let params = truth.arrange(compiled.parameter_names())?;
    let dims = compiled.n_random();

    let units = respondent_units(design);
    let n_units = units.iter().copied().max().map_or(0, |m| m + 1);
    let realizations: Vec<T> = (0..n_units)
        .flat_map(|u| {
            let mut rng = substream(seed, Stream::Simulation, RESPONDENT_STREAM | u as u64);
            (0..dims)
                .map(move |_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    T::lit(z)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let situations = design
        .tasks()
        .par_iter()
        .enumerate()
        .map(|(n, task)| {
            let block = (dims > 0).then(|| DrawBlock {
                draws: 1,
                dims,
                values: &realizations[units[n] * dims..(units[n] + 1) * dims],
            });
            let probs = task_probabilities(kind, &compiled, &params, task, block)?;
            let mut rng = substream(seed, Stream::Simulation, n as u64);
            let u = T::lit(rng.random::<f64>());
            let mut cumulative = T::zero();
            let mut chosen = None;
            for (j, &p) in probs.iter().enumerate() {
                if !task.alternatives[j].available {
                    continue;
                }
                cumulative = cumulative + p;
                chosen = Some(j);
                if u < cumulative {
                    break;
                }
            }
            Ok(ChoiceSituation {
                task: task.clone(),
                chosen: chosen.expect("at least one available alternative"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ChoiceDataset::new(design.schema().clone(), situations)
}

fn respondent_units<T: Scalar>(design: &Design<T>) -> Vec<usize> {
    if design.tasks().iter().any(|t| t.respondent_id.is_empty()) {
        return (0..design.len()).collect();
    }
    let mut slot: HashMap<&str, usize> = HashMap::new();
    design
        .tasks()
        .iter()
        .map(|t| {
            let next = slot.len();
            *slot.entry(t.respondent_id.as_str()).or_insert(next)
        })
        .collect()
}

/// Metadata written next to a simulated dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub seed: u64,
    pub model_kind: ModelKind,
    pub spec: String,
    pub spec_hash: String,
    pub truth: ParameterVector<f64>,
    pub n_situations: usize,
    pub n_alternatives: usize,
    pub tasks_per_respondent: usize,
}
