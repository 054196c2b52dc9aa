use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Estimation, EstimateOptions, EstimationResult, Termination};
use crate::error::Result;
use crate::model::ModelKind;
use crate::rum::spec::ModelSpec;

pub const NULL_MODEL: &str = "equal shares over available alternatives: LL0 = sum_n -ln(J_n)";
pub const RHO_SQUARED: &str = "rho_squared = 1 - LL/LL0";

/// Settings needed to reproduce an estimation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool_version: String,
    /// Hash of the run configuration that produced the report, if any.
    #[serde(default)]
    pub config_hash: String,
    pub spec_hash: String,
    pub seed: u64,
    pub draws: usize,
    pub draw_generator: String,
    pub gradient_tolerance: f64,
    pub relative_tolerance: f64,
    pub max_iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimationReport {
    pub header: ReportHeader,
    pub model_kind: ModelKind,
    pub spec: ModelSpec,
    /// Attribute declaration of the estimation data.
    pub schema: String,
    pub n_situations: usize,
    pub termination: Termination,
    pub clamped_situations: usize,
    pub null_model: String,
    pub fit_measure: String,
    pub result: EstimationResult<f64>,
}

impl EstimationReport {
    pub fn new(
        estimation: &Estimation<f64>,
        spec: &ModelSpec,
        schema: String,
        n_situations: usize,
        options: &EstimateOptions,
    ) -> Self {
        let random = spec.has_random();
        Self {
            header: ReportHeader {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                config_hash: String::new(),
                spec_hash: spec.hash(),
                seed: options.seed,
                draws: if random { options.draws } else { 0 },
                draw_generator: if random {
                    options.generator.to_string()
                } else {
                    "none".to_string()
                },
                gradient_tolerance: options.settings.gradient_tolerance,
                relative_tolerance: options.settings.relative_tolerance,
                max_iterations: options.settings.max_iterations,
            },
            model_kind: estimation.model.kind,
            spec: spec.clone(),
            schema,
            n_situations,
            termination: estimation.termination,
            clamped_situations: estimation.clamped,
            null_model: NULL_MODEL.to_string(),
            fit_measure: RHO_SQUARED.to_string(),
            result: estimation.result.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// `key = value` lines followed by a coefficient table.
    pub fn to_text(&self) -> String {
        let h = &self.header;
        let r = &self.result;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("tool_version", h.tool_version.clone());
        if !h.config_hash.is_empty() {
            kv("config_hash", h.config_hash.clone());
        }
        kv("model_kind", self.model_kind.to_string());
        kv("spec_hash", h.spec_hash.clone());
        kv("spec", self.spec.canonical_text().trim_end().replace('\n', "; "));
        kv("schema", self.schema.clone());
        kv("seed", h.seed.to_string());
        kv("draws", h.draws.to_string());
        kv("draw_generator", h.draw_generator.clone());
        kv("gradient_tolerance", format!("{:e}", h.gradient_tolerance));
        kv("relative_tolerance", format!("{:e}", h.relative_tolerance));
        kv("max_iterations", h.max_iterations.to_string());
        kv("n_situations", self.n_situations.to_string());
        kv("iterations", r.iterations.to_string());
        kv("converged", r.converged.to_string());
        kv("termination", format!("{:?}", self.termination));
        kv("gradient_norm", format!("{:e}", r.gradient_norm));
        kv("clamped_situations", self.clamped_situations.to_string());
        kv("loglik_final", format!("{:.6}", r.loglik_final));
        kv("loglik_null", format!("{:.6}", r.loglik_null));
        kv("null_model", self.null_model.clone());
        kv("rho_squared", format!("{:.6}", r.rho_squared));
        kv("fit_measure", self.fit_measure.clone());
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<24} {:>14} {:>12} {:>10}  sig", "parameter", "estimate", "std_error", "t_stat");
        for (i, name) in r.params.names().iter().enumerate() {
            let _ = writeln!(
                out,
                "{:<24} {:>14.6} {:>12.6} {:>10.3}  {}",
                name,
                r.params.values()[i],
                r.std_errors.values()[i],
                r.t_stats.values()[i],
                r.significance[i].mark.mark()
            );
        }
        let _ = writeln!(out, "# ** |t| >= 1.960 (5%), * |t| >= 1.645 (10%), two-sided");
        out
    }
}
