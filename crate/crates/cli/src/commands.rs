use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use choicekit::choicedata::Severity;
use choicekit::engine::EstimationReport;
use choicekit::postest::{elasticity_comparison_csv, wtp_comparison_csv, ElasticityTable, WtpConvention, WtpReport};
use choicekit::rum::spec::TermSource;
use choicekit::synth::{generate_design, simulate_choices, DesignGrid, SimulationRecord};
use choicekit::validate::{cross_validate, ValidateOptions};
use choicekit::{
    estimate as fit, load_csv, save_csv, validate_dataset, AttributeKind, AttributeSchema, ChoiceModel, CompiledSpec,
    Dataset, DrawGenerator, DrawMatrix, EstimateOptions, FoldUnit, MaximizeSettings, ModelKind, ModelSpec, Params,
};
use serde::Serialize;

use crate::config::RunConfig;

pub enum Outcome {
    Success,
    NotConverged,
}

type CmdResult = Result<Outcome, String>;

const DEFAULT_DENSITY_DRAWS: usize = 100_000;
const DEFAULT_WTP_REFERENCE: &str = "b_time";

/// Header stored in JSON outputs in place of a comment line.
#[derive(Serialize)]
struct FileHeader<'a> {
    tool: &'a str,
    version: &'a str,
    config_hash: String,
    seed: Option<u64>,
}

fn header_line(cfg: &RunConfig, command: &str, seed: Option<u64>) -> String {
    format!(
        "choicekit {} config={} seed={}",
        env!("CARGO_PKG_VERSION"),
        cfg.hash(command),
        seed.map_or_else(|| "none".to_string(), |s| s.to_string())
    )
}

pub fn configure_threads(cfg: &RunConfig) -> Result<(), String> {
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err("`threads` must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("cannot configure {n} threads: {e}"))?;
    }
    Ok(())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

/// Declared schema, or the courier design grid when none is given.
fn schema(cfg: &RunConfig) -> Result<AttributeSchema, String> {
    match &cfg.attributes {
        Some(a) => AttributeSchema::parse(a, cfg.covariates.as_deref().unwrap_or("")).map_err(err),
        None => Ok(DesignGrid::default().schema()),
    }
}

fn spec(cfg: &RunConfig, schema: &AttributeSchema) -> Result<ModelSpec, String> {
    let terms = cfg.terms.as_deref().ok_or("no model terms given (`terms`)")?;
    ModelSpec::parse(
        terms,
        cfg.constants.as_deref().unwrap_or(""),
        cfg.reference.as_deref().unwrap_or(""),
        cfg.random.as_deref().unwrap_or(""),
        schema,
    )
    .map_err(err)
}

fn kind(cfg: &RunConfig) -> Result<ModelKind, String> {
    cfg.model.as_deref().unwrap_or("rum").parse().map_err(err)
}

fn estimate_options(cfg: &RunConfig, spec: &ModelSpec, command: &str) -> Result<EstimateOptions, String> {
    let seed = if spec.has_random() {
        cfg.require_seed(command)?
    } else {
        cfg.seed.unwrap_or(0)
    };
    let generator: DrawGenerator = cfg.generator.as_deref().unwrap_or("halton").parse().map_err(err)?;
    let defaults = MaximizeSettings::default();
    Ok(EstimateOptions {
        draws: cfg.draws.unwrap_or(500),
        generator,
        seed,
        settings: MaximizeSettings {
            max_iterations: cfg.max_iterations.unwrap_or(defaults.max_iterations),
            ..defaults
        },
        ..EstimateOptions::default()
    })
}

/// Loads the dataset and rejects structural problems. Attributes without
/// within-situation variation are only reported: the model may not use them,
/// and a used one surfaces as a singular Hessian.
fn load_data(cfg: &RunConfig, schema: &AttributeSchema) -> Result<Dataset, String> {
    let path = cfg.data.as_ref().ok_or("no dataset given (`data`)")?;
    let ds: Dataset = load_csv(path, schema).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = validate_dataset(&ds);
    let mut fatal = Vec::new();
    for f in &report.findings {
        if f.severity == Severity::Error && f.code != "non-identified" {
            fatal.push(f.message.clone());
        } else {
            eprintln!("warning: {}", f.message);
        }
    }
    if !fatal.is_empty() {
        let more = if fatal.len() > 3 { format!(" (and {} more)", fatal.len() - 3) } else { String::new() };
        return Err(format!("invalid dataset: {}{more}", fatal[..fatal.len().min(3)].join("; ")));
    }
    Ok(ds)
}

pub fn estimate(cfg: &RunConfig) -> CmdResult {
    let schema = schema(cfg)?;
    let spec = spec(cfg, &schema)?;
    let kind = kind(cfg)?;
    let options = estimate_options(cfg, &spec, "estimate")?;
    let ds = load_data(cfg, &schema)?;
    let est = fit(&ds, &spec, kind, &options).map_err(err)?;

    let mut report = EstimationReport::new(&est, &spec, schema.declaration(), ds.len(), &options);
    report.header.config_hash = cfg.hash("estimate");
    let out = cfg.out_dir();
    let json = write(&out, &format!("estimate_{kind}.json"), &report.to_json().map_err(err)?)?;
    let text = format!("# {}\n{}", header_line(cfg, "estimate", Some(options.seed)), report.to_text());
    write(&out, &format!("estimate_{kind}.txt"), &text)?;
    println!(
        "{kind}: loglik {:.4}, rho_squared {:.4}, converged={} -> {}",
        report.result.loglik_final,
        report.result.rho_squared,
        report.result.converged,
        json.display()
    );
    Ok(if report.result.converged {
        Outcome::Success
    } else {
        Outcome::NotConverged
    })
}

pub fn simulate(cfg: &RunConfig) -> CmdResult {
    let seed = cfg.require_seed("simulate")?;
    let grid = DesignGrid {
        tasks_per_respondent: cfg.tasks_per_respondent.unwrap_or(1),
        ..DesignGrid::default()
    };
    let grid_schema = grid.schema();
    if let Some(a) = &cfg.attributes {
        let declared = AttributeSchema::parse(a, cfg.covariates.as_deref().unwrap_or("")).map_err(err)?;
        if declared.declaration() != grid_schema.declaration() {
            return Err(format!(
                "simulate uses the built-in attribute grid `{}`; `attributes` must match it or be omitted",
                grid_schema.declaration()
            ));
        }
    }
    let spec = spec(cfg, &grid_schema)?;
    let kind = kind(cfg)?;
    let truth = Params::parse(cfg.truth.as_deref().ok_or("no true parameter values given (`truth`)")?).map_err(err)?;
    let n = cfg.n_situations.unwrap_or(1000);
    let alternatives = cfg.alternatives.unwrap_or(4);

    let design = generate_design::<f64>(&grid, n, alternatives, seed).map_err(err)?;
    let ds = simulate_choices(&design, &spec, &truth, kind, seed).map_err(err)?;
    let out = cfg.out_dir();
    fs::create_dir_all(&out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let data = out.join("data.csv");
    save_csv(&data, &ds, Some(&header_line(cfg, "simulate", Some(seed)))).map_err(err)?;

    let compiled = CompiledSpec::compile(&spec, &grid_schema).map_err(err)?;
    let record = SimulationRecord {
        seed,
        model_kind: kind,
        spec: spec.canonical_text(),
        spec_hash: spec.hash(),
        truth: Params::new(
            compiled.parameter_names().to_vec(),
            truth.arrange(compiled.parameter_names()).map_err(err)?,
        )
        .map_err(err)?,
        n_situations: n,
        n_alternatives: alternatives,
        tasks_per_respondent: grid.tasks_per_respondent,
    };
    #[derive(Serialize)]
    struct Sidecar<'a> {
        header: FileHeader<'a>,
        schema: String,
        record: SimulationRecord,
    }
    let sidecar = Sidecar {
        header: FileHeader {
            tool: "choicekit",
            version: env!("CARGO_PKG_VERSION"),
            config_hash: cfg.hash("simulate"),
            seed: Some(seed),
        },
        schema: grid_schema.declaration(),
        record,
    };
    let json = serde_json::to_string_pretty(&sidecar).map_err(err)? + "\n";
    write(&out, "truth.json", &json)?;
    println!("simulated {n} situations x {alternatives} alternatives -> {}", data.display());
    Ok(Outcome::Success)
}

pub fn validate(cfg: &RunConfig) -> CmdResult {
    let seed = cfg.require_seed("validate")?;
    let schema = schema(cfg)?;
    let spec = spec(cfg, &schema)?;
    let kind = kind(cfg)?;
    let folds = cfg.folds.unwrap_or(5);
    let unit = match cfg.fold_unit.as_deref().unwrap_or("situation") {
        "situation" => FoldUnit::Situation,
        "respondent" => FoldUnit::Respondent,
        other => return Err(format!("unknown fold unit `{other}` (situation or respondent)")),
    };
    let fixed = cfg.params.as_deref().map(Params::parse).transpose().map_err(err)?;
    let mut estimate = estimate_options(cfg, &spec, "validate")?;
    estimate.seed = seed;
    let ds = load_data(cfg, &schema)?;
    let options = ValidateOptions { estimate, fixed, unit };
    let summary = cross_validate(&ds, &spec, kind, folds, seed, &options).map_err(err)?;

    let header = header_line(cfg, "validate", Some(seed));
    let out = cfg.out_dir();
    let csv = write(&out, &format!("validate_{kind}.csv"), &summary.to_csv(Some(&header)))?;
    write(&out, &format!("validate_{kind}.txt"), &format!("# {header}\n{}\n", summary.summary_line()))?;
    for f in &summary.failed {
        eprintln!("warning: fold {} failed: {}", f.fold_index, f.error);
    }
    println!("{} -> {}", summary.summary_line(), csv.display());
    Ok(Outcome::Success)
}

/// Continuous attributes that enter any term of `spec`.
fn model_attributes(spec: &ModelSpec, schema: &AttributeSchema) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for term in spec.terms() {
        let attribute = match &term.source {
            TermSource::Attribute(a) => a,
            TermSource::AttributeAt { attribute, .. } => attribute,
            TermSource::Interaction { attribute, .. } => attribute,
            _ => continue,
        };
        let continuous = schema
            .attribute_index(attribute)
            .is_some_and(|k| schema.attribute_kinds()[k] == AttributeKind::Continuous);
        if continuous && seen.insert(attribute.clone()) {
            out.push(attribute.clone());
        }
    }
    out
}

fn model_for(report: &EstimationReport, ds: &Dataset) -> Result<ChoiceModel<f64>, String> {
    let compiled = CompiledSpec::compile(&report.spec, ds.schema()).map_err(err)?;
    let draws = if compiled.n_random() > 0 {
        let generator: DrawGenerator = report.header.draw_generator.parse().map_err(err)?;
        let (_, units) = choicekit::model::draw_units(ds);
        Some(
            DrawMatrix::generate(units, report.header.draws, compiled.n_random(), generator, report.header.seed)
                .map_err(err)?,
        )
    } else {
        None
    };
    ChoiceModel::new(report.model_kind, compiled, &report.result.params, draws).map_err(err)
}

pub fn analyze(cfg: &RunConfig) -> CmdResult {
    let list = cfg.results.as_deref().ok_or("no estimation results given (`results`)")?;
    let paths: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if paths.is_empty() || paths.len() > 2 {
        return Err(format!("`results` needs one or two result files, got {}", paths.len()));
    }
    let reports = paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| format!("cannot read {p}: {e}"))?;
            EstimationReport::from_json(&text).map_err(|e| format!("{p}: {e}"))
        })
        .collect::<Result<Vec<_>, String>>()?;
    if reports.len() == 2 {
        if reports[0].model_kind == reports[1].model_kind {
            return Err(format!("both result files hold `{}` models; give one rum and one rrm", reports[0].model_kind));
        }
        let a = reports[0].result.params.names();
        let b = reports[1].result.params.names();
        if a != b {
            let only_a: Vec<&str> = a.iter().filter(|n| !b.contains(n)).map(String::as_str).collect();
            let only_b: Vec<&str> = b.iter().filter(|n| !a.contains(n)).map(String::as_str).collect();
            return Err(format!(
                "coefficient names differ between models: only in {}: [{}]; only in {}: [{}]",
                reports[0].model_kind,
                only_a.join(", "),
                reports[1].model_kind,
                only_b.join(", ")
            ));
        }
    }

    let seed = cfg.seed.unwrap_or(reports[0].header.seed);
    let header = header_line(cfg, "analyze", Some(seed));
    let reference = cfg.wtp_reference.as_deref().unwrap_or(DEFAULT_WTP_REFERENCE);
    let convention: WtpConvention = cfg
        .wtp_convention
        .as_deref()
        .map(str::parse)
        .transpose()
        .map_err(err)?
        .unwrap_or_default();
    let density_draws = cfg.density_draws.unwrap_or(DEFAULT_DENSITY_DRAWS);
    let out = cfg.out_dir();
    let schema = schema(cfg)?;
    let ds = match &cfg.data {
        Some(_) => Some(load_data(cfg, &schema)?),
        None => {
            eprintln!("notice: no dataset given; elasticities skipped");
            None
        }
    };

    let mut wtps = Vec::new();
    let mut tables = Vec::new();
    for report in &reports {
        let kind = report.model_kind;
        let wtp = WtpReport::compute(&report.result.params, &report.spec, reference, convention, density_draws, seed)
            .map_err(|e| format!("{kind} willingness to pay: {e}"))?;
        write(&out, &format!("wtp_{kind}.csv"), &wtp.to_csv(Some(&header)))?;
        for entry in &wtp.entries {
            if let Some(h) = &entry.density {
                write(&out, &format!("density_{kind}_{}.csv", entry.coefficient), &h.to_csv(Some(&header)))?;
            }
        }
        wtps.push(wtp);
        if let Some(ds) = &ds {
            let attributes = match &cfg.elasticity {
                Some(list) => list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                None => model_attributes(&report.spec, ds.schema()),
            };
            let model = model_for(report, ds)?;
            let table = ElasticityTable::compute(&model, ds, &attributes, &ds.alternative_ids()).map_err(err)?;
            write(&out, &format!("elasticity_{kind}.csv"), &table.to_csv(Some(&header)))?;
            tables.push((table, attributes));
        }
    }

    if reports.len() == 2 {
        let (rum, rrm) = if reports[0].model_kind == ModelKind::Rum { (0, 1) } else { (1, 0) };
        let csv = wtp_comparison_csv(&wtps[rum], &wtps[rrm], Some(&header)).map_err(err)?;
        write(&out, "wtp_comparison.csv", &csv)?;
        if let (Some(ds), 2) = (&ds, tables.len()) {
            let csv = elasticity_comparison_csv(
                &tables[rum].0,
                &tables[rrm].0,
                &tables[rum].1,
                &ds.alternative_ids(),
                Some(&header),
            );
            write(&out, "elasticity_comparison.csv", &csv)?;
        }
        println!("analysis of rum and rrm written to {}", out.display());
    } else {
        eprintln!("notice: one model result given; comparison skipped");
        println!("analysis of {} written to {}", reports[0].model_kind, out.display());
    }
    Ok(Outcome::Success)
}
