mod common;

use choicekit::engine::{estimate, null_loglik, EstimateOptions};
use choicekit::rum::rum_log_likelihood;
use choicekit::{
    AlternativeRecord, AttributeSchema, ChoiceSituation, CompiledSpec, Dataset, Error, ModelKind, ModelSpec, Params,
    Task,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Binary logit data on one attribute, choices drawn from `beta`.
fn binary_data(n: usize, beta: f64, seed: u64, duplicate: bool) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: &[&str] = if duplicate { &["x", "x_copy"] } else { &["x"] };
    let schema = AttributeSchema::continuous(names).unwrap();
    let situations = (0..n)
        .map(|i| {
            let xs: [f64; 2] = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let p0 = 1.0 / (1.0 + (-beta * (xs[0] - xs[1])).exp());
            let chosen = usize::from(rng.random::<f64>() >= p0);
            let alternatives = xs
                .iter()
                .enumerate()
                .map(|(j, &x)| AlternativeRecord {
                    alt_id: format!("a{j}"),
                    attributes: if duplicate { vec![x, x] } else { vec![x] },
                    available: true,
                })
                .collect();
            ChoiceSituation {
                task: Task {
                    situation_id: format!("s{i}"),
                    respondent_id: format!("r{i}"),
                    alternatives,
                    covariates: Vec::new(),
                },
                chosen,
            }
        })
        .collect();
    Dataset::new(schema, situations).unwrap()
}

#[test]
fn standard_error_shrinks_with_root_n() {
    let spec = ModelSpec::generic(&[("b", "x")]).unwrap();
    let se = |n| {
        let ds = binary_data(n, 0.8, n as u64, false);
        estimate(&ds, &spec, ModelKind::Rum, &EstimateOptions::default())
            .unwrap()
            .result
            .std_error("b")
            .unwrap()
    };
    let ratio = se(2_000) / se(8_000);
    assert!((ratio - 2.0).abs() / 2.0 < 0.10, "ratio {ratio}");
}

#[test]
fn duplicated_attribute_is_reported_as_singular() {
    let ds = binary_data(500, 0.8, 1, true);
    let spec = ModelSpec::generic(&[("b", "x"), ("b_copy", "x_copy")]).unwrap();
    match estimate(&ds, &spec, ModelKind::Rum, &EstimateOptions::default()) {
        Err(Error::SingularHessian { first, second, .. }) => {
            assert_eq!((first.as_str(), second.as_str()), ("b", "b_copy"));
        }
        other => panic!("expected singular Hessian, got {:?}", other.map(|e| e.result)),
    }
}

#[test]
fn null_loglik_for_four_alternatives() {
    let spec = common::courier_spec(false);
    let truth = Params::from_pairs(&[("b_cost", -0.1), ("b_time", -0.1), ("b_track", 0.2)]);
    let ds = common::simulate(&spec, &truth, ModelKind::Rum, 100, 5);
    assert!((null_loglik(&ds) + 100.0 * 4f64.ln()).abs() < 1e-9);
    let compiled = CompiledSpec::compile(&spec, ds.schema()).unwrap();
    let zero = Params::zeros(compiled.parameter_names());
    let ll = rum_log_likelihood(&compiled, &zero, &ds, None).unwrap().loglik;
    assert!((null_loglik(&ds) - ll).abs() < 1e-9);
}

#[test]
fn estimates_do_not_depend_on_start() {
    let spec = common::courier_spec(true);
    let truth = Params::from_pairs(&[
        ("b_cost", -0.15),
        ("b_time", -0.3),
        ("b_track", 0.5),
        ("asc_c1", 0.4),
        ("asc_c2", -0.2),
    ]);
    let ds = common::simulate(&spec, &truth, ModelKind::Rum, 5_000, 77);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let fits: Vec<Vec<f64>> = (0..3)
        .map(|_| {
            let start = Params::from_pairs(
                &truth
                    .iter()
                    .map(|(n, v)| (n.to_string(), v + rng.random_range(-0.1..0.1)))
                    .collect::<Vec<_>>(),
            );
            let options = EstimateOptions {
                start: Some(start),
                ..EstimateOptions::default()
            };
            let est = estimate(&ds, &spec, ModelKind::Rum, &options).unwrap();
            assert!(est.result.converged);
            est.result.params.values().to_vec()
        })
        .collect();
    for other in &fits[1..] {
        for (a, b) in fits[0].iter().zip(other) {
            assert!((a - b).abs() < 1e-4, "{:?} vs {:?}", fits[0], other);
        }
    }
}

#[test]
fn estimation_trace_is_monotone_and_report_round_trips() {
    let spec = common::courier_spec(true);
    let truth = Params::from_pairs(&[
        ("b_cost", -0.15),
        ("b_time", -0.3),
        ("b_track", 0.5),
        ("asc_c1", 0.4),
        ("asc_c2", -0.2),
    ]);
    let ds = common::simulate(&spec, &truth, ModelKind::Rrm, 2_000, 3);
    let options = EstimateOptions::default();
    let est = estimate(&ds, &spec, ModelKind::Rrm, &options).unwrap();
    assert!(est.trace.windows(2).all(|w| w[1] >= w[0]));
    let r = &est.result;
    assert!(r.loglik_final >= r.loglik_null);
    assert!((0.0..=1.0).contains(&r.rho_squared));
    for ((b, se), t) in r.params.values().iter().zip(r.std_errors.values()).zip(r.t_stats.values()) {
        assert!((b / se - t).abs() < 1e-12);
    }
    let report = choicekit::EstimationReport::new(&est, &spec, ds.schema().declaration(), ds.len(), &options);
    let back = choicekit::EstimationReport::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);
    let text = report.to_text();
    assert!(text.contains(&format!("spec_hash = {}", spec.hash())));
    assert!(text.contains("rho_squared = "));
}
