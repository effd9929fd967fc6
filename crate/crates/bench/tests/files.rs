use coneps_bench::config::ExperimentConfig;
use coneps_bench::records::{read_records_from, write_records_to, RunRecord};
use coneps_bench::EpsilonChoice;
use coneps_core::algorithms::AlgorithmId;
use proptest::prelude::*;

const CONFIG: &str = r#"
runs = 3
base_seed = 7
epsilon = "calculated"

[metrics]
cs = false

[[cell]]
problem = "ZDT1"
algorithm = "cone-eps-moea"
evaluations = 5000
kappa = 0.3

[[cell]]
problem = "DTLZ2"
objectives = 4
algorithm = "EPSMOEA"
epsilon = [0.2]

[[cell]]
problem = "DEB52"
algorithm = "NSGA2"
pop_size = 40
eta_xover = 5.0
"#;

#[test]
fn config_resolves_with_defaults_and_overrides() {
    let cfg = ExperimentConfig::from_toml(CONFIG).unwrap();
    assert_eq!(cfg.runs, 3);
    assert_eq!(cfg.epsilon, EpsilonChoice::Calculated);
    assert!(!cfg.record_wall_time);
    assert!(cfg.metrics.gamma && !cfg.metrics.cs);
    let cells = cfg.resolve().unwrap();
    assert_eq!(cells[0].config.algorithm, AlgorithmId::ConeEpsMoea);
    assert_eq!(cells[0].config.budget, 5000);
    assert_eq!(cells[0].config.kappa, 0.3);
    assert_eq!(cells[0].config.eps.as_ref().unwrap().as_slice(), &[0.0198, 0.0198]);
    assert_eq!(cells[0].config.variation.eta_xover, 15.0);
    assert_eq!(cells[1].label(), "DTLZ2_4");
    assert_eq!(cells[1].config.eps.as_ref().unwrap().as_slice(), &[0.2; 4]);
    assert_eq!(cells[2].config.pop_size, 40);
    assert_eq!(cells[2].config.variation.eta_xover, 5.0);
    assert_eq!(cells[2].config.budget, 20_000);
}

#[test]
fn config_round_trips_through_toml() {
    let cfg = ExperimentConfig::from_toml(CONFIG).unwrap();
    assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
}

#[test]
fn unknown_keys_are_errors() {
    assert!(ExperimentConfig::from_toml("runs = 1\ncolour = 3\n").is_err());
    let bad_cell = "[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"NSGA2\"\nmutation = 0.1\n";
    assert!(ExperimentConfig::from_toml(bad_cell).is_err());
    assert!(ExperimentConfig::from_toml("[metrics]\nigd = true\n").is_err());
}

#[test]
fn invalid_cells_are_rejected_before_running() {
    let resolve = |text: &str| ExperimentConfig::from_toml(text).unwrap().resolve();
    assert!(resolve("[[cell]]\nproblem = \"ZDT9\"\nalgorithm = \"NSGA2\"\n").is_err());
    assert!(resolve("[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"MOEAD\"\n").is_err());
    assert!(resolve("runs = 0\n[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"NSGA2\"\n").is_err());
    assert!(resolve("runs = 1\n").is_err());
    assert!(resolve("[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"CONEEPSMOEA\"\nkappa = 1.0\n").is_err());
    assert!(resolve("[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"EPSMOEA\"\nepsilon = [0.1, 0.1, 0.1]\n").is_err());
    let dup = "[[cell]]\nproblem = \"ZDT1\"\nalgorithm = \"NSGA2\"\n[[cell]]\nproblem = \"zdt1\"\nalgorithm = \"nsga-ii\"\n";
    assert!(resolve(dup).is_err());
}

#[test]
fn empty_record_set_still_writes_the_header() {
    let mut buf = Vec::new();
    write_records_to(&mut buf, &[]).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap().trim(),
        "problem,algorithm,run,seed,cardinality,gamma,delta,hv,cs,wall_ms"
    );
}

#[test]
fn missing_metrics_are_empty_fields() {
    let mut r = RunRecord::new("DTLZ8", "SPEA2", 2, 9);
    r.cardinality = 5;
    r.gamma = Some(0.25);
    let mut buf = Vec::new();
    write_records_to(&mut buf, &[r]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "problem,algorithm,run,seed,cardinality,gamma,delta,hv,cs,wall_ms");
    assert_eq!(lines.next().unwrap(), "DTLZ8,SPEA2,2,9,5,0.25,,,,");
}

fn opt() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![Just(None), (-1e6..1e6f64).prop_map(Some), (0.0..1e-6f64).prop_map(Some)]
}

proptest! {
    #[test]
    fn records_round_trip_through_csv(
        rows in prop::collection::vec(
            ("[A-Z0-9_]{1,8}", "[A-Z]{1,8}", 0usize..100, any::<u64>(), 0usize..500, opt(), opt(), opt(), opt(), opt()),
            0..20,
        )
    ) {
        let records: Vec<RunRecord> = rows
            .into_iter()
            .map(|(p, a, run, seed, cardinality, gamma, delta, hv, cs, wall_ms)| RunRecord {
                problem: p,
                algorithm: a,
                run,
                seed,
                cardinality,
                gamma,
                delta,
                hv,
                cs,
                wall_ms,
            })
            .collect();
        let mut buf = Vec::new();
        write_records_to(&mut buf, &records).unwrap();
        prop_assert_eq!(read_records_from(buf.as_slice()).unwrap(), records);
    }
}

#[test]
fn shipped_configs_resolve() {
    let smoke = ExperimentConfig::from_toml(include_str!("../../../configs/smoke.toml")).unwrap();
    assert_eq!(smoke.resolve().unwrap().len(), 6);
    let campaign = ExperimentConfig::from_toml(include_str!("../../../configs/campaign.toml")).unwrap();
    assert_eq!(campaign.runs, 50);
    assert_eq!(campaign.resolve().unwrap().len(), 96);
}
