//! Run configuration: a TOML file whose keys can each be overridden by the
//! command-line flag of the same name.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "CHOICEKIT_OUT";

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    /// Long-format choice data (CSV).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Attribute declaration, e.g. "cost, tracking:binary, rep:categorical(3)".
    #[arg(long)]
    pub attributes: Option<String>,
    /// Respondent covariate names.
    #[arg(long)]
    pub covariates: Option<String>,
    /// Terms, e.g. "b_cost:cost, b_time:time, b_age:cost*age".
    #[arg(long)]
    pub terms: Option<String>,
    /// Alternatives that receive a constant.
    #[arg(long)]
    pub constants: Option<String>,
    /// Reference alternative for the constants.
    #[arg(long)]
    pub reference: Option<String>,
    /// Random coefficients, e.g. "b_cost~normal(sd_cost)".
    #[arg(long)]
    pub random: Option<String>,
    /// rum or rrm.
    #[arg(long)]
    pub model: Option<String>,
    /// Simulation draws R per draw unit.
    #[arg(long)]
    pub draws: Option<usize>,
    /// halton or pseudo-random.
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub folds: Option<usize>,
    /// Fold unit: situation or respondent.
    #[arg(long)]
    pub fold_unit: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub n_situations: Option<usize>,
    #[arg(long)]
    pub alternatives: Option<usize>,
    #[arg(long)]
    pub tasks_per_respondent: Option<usize>,
    /// Parameter values, e.g. "b_cost=-0.15, b_time=-0.3".
    #[arg(long)]
    pub truth: Option<String>,
    /// Score validation folds with these values instead of estimating.
    #[arg(long)]
    pub params: Option<String>,
    /// Estimation result files (JSON) to analyze, comma separated.
    #[arg(long)]
    pub results: Option<String>,
    /// Reference coefficient of willingness-to-pay ratios.
    #[arg(long)]
    pub wtp_reference: Option<String>,
    /// reference-over-attribute or attribute-over-reference.
    #[arg(long)]
    pub wtp_convention: Option<String>,
    #[arg(long)]
    pub density_draws: Option<usize>,
    /// Attributes for elasticities (default: continuous attributes in the model).
    #[arg(long)]
    pub elasticity: Option<String>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),* $(,)?) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg: Self = toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
        // A relative dataset path is taken relative to the config file.
        if let (Some(data), Some(dir)) = (&cfg.data, path.parent()) {
            if data.is_relative() {
                cfg.data = Some(dir.join(data));
            }
        }
        Ok(cfg)
    }

    /// `self` with every key set in `flags` replaced.
    pub fn overridden_by(mut self, flags: &RunConfig) -> Self {
        overlay!(
            self,
            flags,
            data,
            attributes,
            covariates,
            terms,
            constants,
            reference,
            random,
            model,
            draws,
            generator,
            seed,
            folds,
            fold_unit,
            out,
            n_situations,
            alternatives,
            tasks_per_respondent,
            truth,
            params,
            results,
            wtp_reference,
            wtp_convention,
            density_draws,
            elasticity,
            max_iterations,
            threads,
        );
        self
    }

    /// Short SHA-256 of the settings that influence results (not the output
    /// directory or the thread count).
    pub fn hash(&self, command: &str) -> String {
        let mut canonical = self.clone();
        canonical.out = None;
        canonical.threads = None;
        let text = serde_json::to_string(&canonical).expect("config serializes");
        let digest = Sha256::digest(format!("{command}\n{text}").as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn require_seed(&self, command: &str) -> Result<u64, String> {
        self.seed.ok_or_else(|| format!("`{command}` needs a seed (set `seed` in the config or pass --seed)"))
    }
}
