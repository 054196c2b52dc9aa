#![allow(dead_code)]

use choicekit::synth::{generate_design, simulate_choices, DesignGrid};
use choicekit::{Dataset, ModelKind, ModelSpec, Params};

pub fn courier_spec(constants: bool) -> ModelSpec {
    let schema = DesignGrid::default().schema();
    let (c, r) = if constants { ("c1, c2", "c4") } else { ("", "") };
    ModelSpec::parse("b_cost:cost, b_time:time, b_track:tracking", c, r, "", &schema).unwrap()
}

pub fn simulate(spec: &ModelSpec, truth: &Params, kind: ModelKind, n: usize, seed: u64) -> Dataset {
    let design = generate_design(&DesignGrid::default(), n, 4, seed).unwrap();
    simulate_choices(&design, spec, truth, kind, seed + 1).unwrap()
}

pub fn within_se(est: &choicekit::Fit, truth: &Params, k: f64) -> Vec<String> {
    let mut misses = Vec::new();
    for (name, value) in truth.iter() {
        let got = est.params.get(name).unwrap();
        let se = est.std_error(name).unwrap();
        if (got - value).abs() > k * se {
            misses.push(format!("{name}: {got} vs {value} (se {se})"));
        }
    }
    misses
}

/// One situation over `rows.len()` alternatives with the given attribute rows.
pub fn task(schema_len: usize, rows: &[Vec<f64>]) -> choicekit::Task {
    assert!(rows.iter().all(|r| r.len() == schema_len));
    choicekit::Task {
        situation_id: "s".into(),
        respondent_id: "r".into(),
        alternatives: rows
            .iter()
            .enumerate()
            .map(|(j, r)| choicekit::AlternativeRecord {
                alt_id: format!("a{}", j + 1),
                attributes: r.clone(),
                available: true,
            })
            .collect(),
        covariates: Vec::new(),
    }
}
