use osoma_core::dynamic::{io, simulate, ReplayProvider, SimulationConfig};
use osoma_core::experiment::{
    generate_scenario, read_convergence, read_history, read_summary, run_benchmark_suite, run_dtsp_scenario,
    ExperimentConfig, InstanceStyle, Mode,
};
use osoma_core::tsp::{subtract, Tour};
use osoma_core::Algorithm;
use proptest::prelude::*;

#[test]
fn one_cell_one_seed_gives_one_row_and_one_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = ExperimentConfig::new(Mode::Benchmark, dir.path());
    c.algorithms = vec![Algorithm::Pso];
    c.functions = vec!["f4".into()];
    let out = run_benchmark_suite(&c).unwrap();
    let (rows, aggregates) = read_summary(&out.summary).unwrap();
    assert_eq!(rows, out.rows);
    assert_eq!(aggregates.len(), 1);
    assert_eq!(aggregates[0].mean, rows[0].final_fitness);
    assert_eq!(read_convergence(&out.convergence).unwrap().len(), 101);
}

#[test]
fn empty_schedule_gives_four_series_from_iteration_zero() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = generate_scenario(7, 1, InstanceStyle::RandomAsymmetric, 15, 35).unwrap();
    let instance = dir.path().join("instance.json");
    io::write_instance(&instance, &scenario.instance).unwrap();
    let mut c = ExperimentConfig::new(Mode::Dtsp, dir.path().join("out"));
    c.instance = Some(instance);
    c.max_iterations = Some(20);
    let out = run_dtsp_scenario(&c).unwrap();
    assert_eq!((out.histories.len(), out.tours.len()), (1, 4));
    let rows = read_history(&out.histories[0]).unwrap();
    assert_eq!(rows.len(), 4 * 21);
    for alg in Algorithm::ALL {
        let series: Vec<_> = rows.iter().filter(|r| r.algorithm == alg).collect();
        assert_eq!(series[0].iteration, 0);
        assert!(series.windows(2).all(|w| w[1].best_cost <= w[0].best_cost));
    }
}

fn tour_pair(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    let base: Vec<usize> = (0..n).collect();
    (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subtraction_needs_at_most_n_minus_one_swaps((a, b) in (2usize..12).prop_flat_map(tour_pair)) {
        let n = a.len();
        let seq = subtract(&Tour::new(a).unwrap(), &Tour::new(b).unwrap()).unwrap();
        prop_assert!(seq.len() < n);
    }

    #[test]
    fn best_cost_only_moves_at_events(seed in 0u64..1000, alg in 0usize..4) {
        let scenario = generate_scenario(6, seed, InstanceStyle::Euclidean, 5, 12).unwrap();
        let provider = ReplayProvider::new(scenario.instance.to_matrix().unwrap(), scenario.schedule).unwrap();
        let config = SimulationConfig { population_size: 8, max_iterations: 20, ..SimulationConfig::default() };
        let r = simulate(&provider, Algorithm::ALL[alg], &config, seed).unwrap();
        for w in r.history.windows(2) {
            prop_assert!(!w[1].events.is_empty() || w[1].best_cost <= w[0].best_cost);
        }
        let tour = Tour::new(r.final_tour.as_slice().to_vec()).unwrap();
        prop_assert_eq!(tour.len(), 7);
    }
}

#[test]
fn reinit_restarts_from_random_tours() {
    let scenario = generate_scenario(8, 2, InstanceStyle::Euclidean, 3, 6).unwrap();
    let provider = ReplayProvider::new(scenario.instance.to_matrix().unwrap(), scenario.schedule).unwrap();
    let base = SimulationConfig {
        population_size: 10,
        max_iterations: 10,
        ..SimulationConfig::default()
    };
    let repaired = simulate(&provider, Algorithm::Osoma, &base, 4).unwrap();
    let restarted = simulate(
        &provider,
        Algorithm::Osoma,
        &SimulationConfig {
            reinit_on_event: true,
            ..base
        },
        4,
    )
    .unwrap();
    assert_eq!(repaired.history[..3], restarted.history[..3]);
    assert_eq!(restarted.final_tour.len(), 9);
}
