//! Post-estimation analytics: willingness-to-pay ratios and their densities,
//! model comparisons and direct elasticities.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choicedata::{AttributeKind, ChoiceDataset, ChoiceTask};
use crate::error::{Error, Result};
use crate::model::{draw_units, ChoiceModel, ModelKind};
use crate::rng::{substream, Stream};
use crate::rum::params::ParameterVector;
use crate::rum::spec::ModelSpec;
use crate::scalar::Scalar;

/// Relative step of the central difference used for elasticities.
pub const ELASTICITY_STEP: f64 = 1e-4;
/// Denominator draws closer to zero than this are discarded.
pub const DENOMINATOR_CUTOFF: f64 = 1e-8;
pub const DENSITY_BINS: usize = 100;
pub const MIN_DENSITY_DRAWS: usize = 1000;
pub const ELASTICITY_METHOD: &str =
    "probability-weighted sample enumeration of (x/P) dP/dx, central difference at relative step 1e-4";

/// `|numerator / denominator|`.
pub fn wtp<T: Scalar>(numerator: T, denominator: T) -> Result<T> {
    if denominator == T::zero() {
        return Err(Error::ZeroDenominator("willingness to pay with a zero denominator coefficient".into()));
    }
    Ok((numerator / denominator).abs())
}

/// Which coefficient sits in the denominator of a willingness-to-pay ratio.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WtpConvention {
    /// `|β_ref / β_i|` with the reference (time) coefficient on top.
    #[default]
    ReferenceOverAttribute,
    /// `|β_i / β_ref|`, the usual cost-denominated ratio.
    AttributeOverReference,
}

impl FromStr for WtpConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reference-over-attribute" | "time-over-attribute" => Ok(Self::ReferenceOverAttribute),
            "attribute-over-reference" | "attribute-over-cost" => Ok(Self::AttributeOverReference),
            other => Err(Error::InvalidArgument(format!("unknown WTP convention `{other}`"))),
        }
    }
}

impl std::fmt::Display for WtpConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ReferenceOverAttribute => "reference-over-attribute",
            Self::AttributeOverReference => "attribute-over-reference",
        })
    }
}

/// WTP of `attribute` relative to `reference` under `convention`.
pub fn wtp_with<T: Scalar>(convention: WtpConvention, attribute: T, reference: T) -> Result<T> {
    match convention {
        WtpConvention::ReferenceOverAttribute => wtp(reference, attribute),
        WtpConvention::AttributeOverReference => wtp(attribute, reference),
    }
}

/// A normally distributed coefficient; `sd = 0` is a fixed value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalCoefficient {
    pub mean: f64,
    pub sd: f64,
}

impl NormalCoefficient {
    pub fn fixed(value: f64) -> Self {
        Self { mean: value, sd: 0.0 }
    }
}

/// Equal-width histogram of a simulated ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `masses.len() + 1` edges; a point mass has two equal edges.
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub median: f64,
    /// Share of draws discarded for a near-zero denominator.
    pub truncated_fraction: f64,
    pub n_draws: usize,
}

impl Histogram {
    fn point(value: f64, n_draws: usize) -> Self {
        Self {
            edges: vec![value, value],
            masses: vec![1.0],
            median: value,
            truncated_fraction: 0.0,
            n_draws,
        }
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Two-column CSV (`bin_midpoint,mass`), optionally after a comment line.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("bin_midpoint,mass\n");
        for (m, p) in self.midpoints().iter().zip(&self.masses) {
            let _ = writeln!(out, "{m},{p}");
        }
        out
    }
}

/// Density of `|numerator / d|` with `d ~ Normal(mu, sd)`.
pub fn wtp_density(numerator: f64, mu: f64, sd: f64, n_draws: usize, seed: u64) -> Result<Histogram> {
    ratio_density(NormalCoefficient::fixed(numerator), NormalCoefficient { mean: mu, sd }, n_draws, seed)
}

/// Density of `|a / b|` for independent normal coefficients. Bins span the
/// 0.5 to 99.5 percentile range; masses are renormalized over the draws kept.
pub fn ratio_density(
    numerator: NormalCoefficient,
    denominator: NormalCoefficient,
    n_draws: usize,
    seed: u64,
) -> Result<Histogram> {
    if numerator.sd < 0.0 || denominator.sd < 0.0 {
        return Err(Error::InvalidArgument("standard deviation must be non-negative".into()));
    }
    if n_draws < MIN_DENSITY_DRAWS {
        return Err(Error::InvalidArgument(format!("density needs at least {MIN_DENSITY_DRAWS} draws")));
    }
    if numerator.sd == 0.0 && denominator.sd == 0.0 {
        return Ok(Histogram::point(wtp(numerator.mean, denominator.mean)?, n_draws));
    }
    let mut rng = substream(seed, Stream::Density, 0);
    let mut values = Vec::with_capacity(n_draws);
    for _ in 0..n_draws {
        let za: f64 = rng.sample(StandardNormal);
        let zb: f64 = rng.sample(StandardNormal);
        let b = denominator.mean + denominator.sd * zb;
        if b.abs() < DENOMINATOR_CUTOFF {
            continue;
        }
        values.push(((numerator.mean + numerator.sd * za) / b).abs());
    }
    let kept = values.len();
    if kept == 0 {
        return Err(Error::Numeric("every denominator draw was truncated".into()));
    }
    values.sort_by(f64::total_cmp);
    let truncated_fraction = (n_draws - kept) as f64 / n_draws as f64;
    let median = quantile(&values, 0.5);
    let (lo, hi) = (quantile(&values, 0.005), quantile(&values, 0.995));
    if hi <= lo {
        let mut h = Histogram::point(lo, n_draws);
        h.median = median;
        h.truncated_fraction = truncated_fraction;
        return Ok(h);
    }
    let width = (hi - lo) / DENSITY_BINS as f64;
    let mut counts = vec![0usize; DENSITY_BINS];
    let mut inside = 0usize;
    for &v in values.iter().filter(|v| **v >= lo && **v <= hi) {
        let bin = (((v - lo) / width) as usize).min(DENSITY_BINS - 1);
        counts[bin] += 1;
        inside += 1;
    }
    let edges = (0..=DENSITY_BINS).map(|k| lo + width * k as f64).collect();
    let masses = counts.iter().map(|&c| c as f64 / inside as f64).collect();
    Ok(Histogram {
        edges,
        masses,
        median,
        truncated_fraction,
        n_draws,
    })
}

// Linear interpolation between order statistics of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    } else {
        sorted[i]
    }
}

/// `rrm / rum`.
pub fn model_ratio<T: Scalar>(rrm_value: T, rum_value: T) -> Result<T> {
    if rum_value == T::zero() {
        return Err(Error::ZeroDenominator("model ratio with a zero utility-model value".into()));
    }
    Ok(rrm_value / rum_value)
}

/// `(a_rrm - a_rum) / a_rrm * 100`, signed.
pub fn percent_difference<T: Scalar>(a_rrm: T, a_rum: T) -> Result<T> {
    if a_rrm == T::zero() {
        return Err(Error::ZeroDenominator("percent difference with a zero regret-model value".into()));
    }
    Ok((a_rrm - a_rum) / a_rrm * T::lit(100.0))
}

/// Closed-form direct elasticity of a fixed-coefficient logit.
pub fn mnl_elasticity<T: Scalar>(beta: T, x: T, p: T) -> T {
    beta * x * (T::one() - p)
}

/// Aggregated direct elasticity with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Elasticity {
    pub value: f64,
    /// Situations contributing to the average.
    pub used: usize,
    /// Situations skipped because the attribute was zero there.
    pub zero_attribute: usize,
}

fn continuous_attribute<T: Scalar>(ds: &ChoiceDataset<T>, attribute: &str) -> Result<usize> {
    let k = ds
        .schema()
        .attribute_index(attribute)
        .ok_or_else(|| Error::Spec(format!("unknown attribute `{attribute}`")))?;
    if ds.schema().attribute_kinds()[k] != AttributeKind::Continuous {
        return Err(Error::InvalidArgument(format!("attribute `{attribute}` is not continuous")));
    }
    Ok(k)
}

/// `(x / P_i) dP_i/dx` for one situation, by central difference.
pub fn point_elasticity<T: Scalar>(
    model: &ChoiceModel<T>,
    task: &ChoiceTask<T>,
    unit: usize,
    attribute: usize,
    alternative: usize,
) -> Result<Option<(T, T)>> {
    let x = task.alternatives[alternative].attributes[attribute];
    if x == T::zero() {
        return Ok(None);
    }
    let p = model.probabilities(task, unit)?[alternative];
    let h = T::lit(ELASTICITY_STEP) * x.abs();
    let mut shifted = task.clone();
    shifted.alternatives[alternative].attributes[attribute] = x + h;
    let up = model.probabilities(&shifted, unit)?[alternative];
    shifted.alternatives[alternative].attributes[attribute] = x - h;
    let down = model.probabilities(&shifted, unit)?[alternative];
    let width = (x + h) - (x - h);
    Ok(Some(((x / p) * (up - down) / width, p)))
}

/// Probability-weighted average of the point elasticities of `alternative`
/// with respect to its own `attribute` over the situations of `ds`.
pub fn direct_elasticity<T: Scalar>(
    model: &ChoiceModel<T>,
    ds: &ChoiceDataset<T>,
    attribute: &str,
    alternative: &str,
) -> Result<Elasticity> {
    let k = continuous_attribute(ds, attribute)?;
    let (units, _) = draw_units(ds);
    let points: Vec<Result<Option<(T, T)>>> = ds
        .situations()
        .par_iter()
        .zip(units.par_iter())
        .map(|(s, &u)| match s.alternative_index(alternative) {
            Some(i) if s.alternatives[i].available => point_elasticity(model, &s.task, u, k, i),
            _ => Ok(None),
        })
        .collect();
    let mut weighted = 0.0;
    let mut weight = 0.0;
    let mut used = 0;
    let mut zero_attribute = 0;
    for (s, point) in ds.situations().iter().zip(points) {
        match point? {
            Some((e, p)) => {
                weighted += e.to_f64_lossy() * p.to_f64_lossy();
                weight += p.to_f64_lossy();
                used += 1;
            }
            None => {
                if let Some(i) = s.alternative_index(alternative) {
                    if s.alternatives[i].available {
                        zero_attribute += 1;
                    }
                }
            }
        }
    }
    if used == 0 {
        return Err(Error::Undefined("elasticity undefined at zero attribute".into()));
    }
    Ok(Elasticity {
        value: weighted / weight,
        used,
        zero_attribute,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElasticityRow {
    pub attribute: String,
    pub alternative: String,
    pub elasticity: f64,
    pub used: usize,
    pub zero_attribute: usize,
}

/// Direct elasticities of one model for every (attribute, alternative) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElasticityTable {
    pub model_kind: ModelKind,
    pub method: String,
    pub rows: Vec<ElasticityRow>,
}

impl ElasticityTable {
    /// Pairs whose attribute is zero in every situation are left out.
    pub fn compute<T: Scalar>(
        model: &ChoiceModel<T>,
        ds: &ChoiceDataset<T>,
        attributes: &[String],
        alternatives: &[String],
    ) -> Result<Self> {
        let mut rows = Vec::new();
        for attribute in attributes {
            for alternative in alternatives {
                match direct_elasticity(model, ds, attribute, alternative) {
                    Ok(e) => rows.push(ElasticityRow {
                        attribute: attribute.clone(),
                        alternative: alternative.clone(),
                        elasticity: e.value,
                        used: e.used,
                        zero_attribute: e.zero_attribute,
                    }),
                    Err(Error::Undefined(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(Self {
            model_kind: model.kind,
            method: ELASTICITY_METHOD.to_string(),
            rows,
        })
    }

    pub fn get(&self, attribute: &str, alternative: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.attribute == attribute && r.alternative == alternative)
            .map(|r| r.elasticity)
    }

    /// `attribute,alternative,elasticity,used,zero_attribute`.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "# model_kind={} method={}", self.model_kind, self.method);
        out.push_str("attribute,alternative,elasticity,used,zero_attribute\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.attribute, r.alternative, r.elasticity, r.used, r.zero_attribute
            );
        }
        out
    }
}

/// Elasticities of two models side by side: per alternative the utility
/// value, the regret value and their percent difference.
pub fn elasticity_comparison_csv(
    rum: &ElasticityTable,
    rrm: &ElasticityTable,
    attributes: &[String],
    alternatives: &[String],
    comment: Option<&str>,
) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str("attribute");
    for alt in alternatives {
        let _ = write!(out, ",{alt}_rum,{alt}_rrm,{alt}_pct");
    }
    out.push('\n');
    for attribute in attributes {
        out.push_str(attribute);
        for alt in alternatives {
            let a = rum.get(attribute, alt);
            let b = rrm.get(attribute, alt);
            let pct = match (b, a) {
                (Some(b), Some(a)) => percent_difference(b, a).ok(),
                _ => None,
            };
            let _ = write!(out, ",{},{},{}", cell(a), cell(b), cell(pct));
        }
        out.push('\n');
    }
    out
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WtpEntry {
    pub coefficient: String,
    pub wtp_value: f64,
    pub density: Option<Histogram>,
}

/// Willingness to pay of every coefficient against a reference coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WtpReport {
    pub reference: String,
    pub convention: WtpConvention,
    pub entries: Vec<WtpEntry>,
}

impl WtpReport {
    /// Uses the mean of random coefficients for `wtp_value` and simulates a
    /// density with `density_draws` draws whenever either side is random.
    /// Constants and spread parameters are not valued.
    pub fn compute(
        params: &ParameterVector<f64>,
        spec: &ModelSpec,
        reference: &str,
        convention: WtpConvention,
        density_draws: usize,
        seed: u64,
    ) -> Result<Self> {
        let coefficient = |name: &str| -> Result<NormalCoefficient> {
            let mean = params.require(name)?;
            let sd = match spec.random_coefficients().iter().find(|r| r.mean_name == name) {
                Some(r) => params.require(&r.sd_name)?.abs(),
                None => 0.0,
            };
            Ok(NormalCoefficient { mean, sd })
        };
        let reference_coef = coefficient(reference)?;
        let mut entries = Vec::new();
        for (index, term) in spec.terms().iter().enumerate() {
            let name = spec
                .random_coefficients()
                .iter()
                .find(|r| r.coefficient == term.name)
                .map_or(term.name.as_str(), |r| r.mean_name.as_str());
            if name == reference {
                continue;
            }
            let own = coefficient(name)?;
            let (num, den) = match convention {
                WtpConvention::ReferenceOverAttribute => (reference_coef, own),
                WtpConvention::AttributeOverReference => (own, reference_coef),
            };
            let wtp_value = match wtp(num.mean, den.mean) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let density = if num.sd > 0.0 || den.sd > 0.0 {
                Some(ratio_density(num, den, density_draws, seed.wrapping_add(index as u64))?)
            } else {
                None
            };
            entries.push(WtpEntry {
                coefficient: name.to_string(),
                wtp_value,
                density,
            });
        }
        Ok(Self {
            reference: reference.to_string(),
            convention,
            entries,
        })
    }

    pub fn get(&self, coefficient: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.coefficient == coefficient).map(|e| e.wtp_value)
    }

    /// `coefficient,wtp` rows.
    pub fn to_csv(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "# reference={} convention={}", self.reference, self.convention);
        out.push_str("coefficient,wtp\n");
        for e in &self.entries {
            let _ = writeln!(out, "{},{}", e.coefficient, e.wtp_value);
        }
        out
    }
}

/// WTP of two models with the regret-over-utility ratio per coefficient.
/// Fails when the two reports value different coefficients.
pub fn wtp_comparison_csv(rum: &WtpReport, rrm: &WtpReport, comment: Option<&str>) -> Result<String> {
    let left: Vec<&str> = rum.entries.iter().map(|e| e.coefficient.as_str()).collect();
    let right: Vec<&str> = rrm.entries.iter().map(|e| e.coefficient.as_str()).collect();
    if left != right {
        let missing: Vec<&str> = left
            .iter()
            .filter(|n| !right.contains(n))
            .chain(right.iter().filter(|n| !left.contains(n)))
            .copied()
            .collect();
        return Err(Error::InvalidArgument(format!(
            "coefficient names differ between models: {}",
            if missing.is_empty() { "order differs".to_string() } else { missing.join(", ") }
        )));
    }
    let mut out = String::new();
    if let Some(c) = comment {
        let _ = writeln!(out, "# {c}");
    }
    out.push_str("coefficient,rum,rrm,ratio\n");
    for (a, b) in rum.entries.iter().zip(&rrm.entries) {
        let ratio = model_ratio(b.wtp_value, a.wtp_value).ok();
        let _ = writeln!(out, "{},{},{},{}", a.coefficient, a.wtp_value, b.wtp_value, cell(ratio));
    }
    Ok(out)
}
