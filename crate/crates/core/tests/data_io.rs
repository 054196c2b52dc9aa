mod common;

use choicekit::synth::{generate_design, DesignGrid};
use choicekit::{load_csv, save_csv, Dataset, DrawGenerator, DrawMatrix, ModelKind, Params};

#[test]
fn simulated_dataset_survives_a_file_round_trip() {
    let spec = common::courier_spec(false);
    let truth = Params::from_pairs(&[("b_cost", -0.15), ("b_time", -0.3), ("b_track", 0.5)]);
    let ds = common::simulate(&spec, &truth, ModelKind::Rum, 250, 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    save_csv(&path, &ds, Some("choicekit test")).unwrap();
    let back: Dataset = load_csv(&path, ds.schema()).unwrap();
    assert_eq!(back, ds);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# choicekit test\n"));
    assert_eq!(text.lines().count(), 2 + 250 * 4);
}

#[test]
fn design_and_simulation_are_reproducible() {
    let a = generate_design::<f64>(&DesignGrid::default(), 300, 4, 12).unwrap();
    let b = generate_design::<f64>(&DesignGrid::default(), 300, 4, 12).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, generate_design::<f64>(&DesignGrid::default(), 300, 4, 13).unwrap());
    for task in a.tasks() {
        let cost = |j: usize| task.alternatives[j].attributes[0];
        let time = |j: usize| task.alternatives[j].attributes[1];
        assert!((0..3).all(|j| cost(3) <= cost(j) && time(3) >= time(j)));
    }
}

#[test]
fn draw_sidecar_round_trips_through_a_file() {
    let draws = DrawMatrix::<f64>::generate(7, 25, 2, DrawGenerator::Halton, 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("draws.bin");
    draws.write_binary(std::fs::File::create(&path).unwrap()).unwrap();
    let back = DrawMatrix::<f64>::read_binary(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(back, draws);
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 16 + 7 * 25 * 2 * 8);
}
