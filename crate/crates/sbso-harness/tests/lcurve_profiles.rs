//! File-level behavior of the L-curve and profile emitters, including the
//! Beale comparison: the hybrid's mean curve collapses by ten orders of
//! magnitude within 2,000 evaluations while plain BSO's does not.

use sbso_core::run_seed;
use sbso_core::suite::{make_problem, Family};
use sbso_core::vci::{HistoryMatrix, ProblemInfo};
use sbso_core::RunTrace;

use sbso_harness::config::SolverSpec;
use sbso_harness::formats::{
    emit_lcurves, emit_profiles, lcurve_value_at, read_lcurve, ACCURACY_FLOOR,
};

fn beale_history(budget: usize, runs: usize) -> HistoryMatrix {
    let problem = make_problem(Family::Beale, 2).unwrap();
    let specs = [SolverSpec::SimplexBso, SolverSpec::Bso];
    HistoryMatrix::from_fn(
        budget,
        specs.iter().map(|s| s.name()).collect(),
        vec![ProblemInfo {
            name: "beale-2".into(),
            dim: 2,
        }],
        runs,
        |i, _, r| {
            let seed = run_seed(42, i as u64, 0, r as u64);
            (specs[i].run(&problem, budget, seed), seed)
        },
    )
    .unwrap()
}

#[test]
fn beale_lcurves_show_the_expected_decay_gap() {
    let h = beale_history(2_000, 20);
    let dir = tempfile::tempdir().unwrap();
    let written = emit_lcurves(&h, &[0.0], dir.path(), None).unwrap();
    assert_eq!(written.len(), 2);

    let decay_over = |solver: &str| -> f64 {
        let rows = read_lcurve(&dir.path().join(format!("beale-2__{solver}.csv"))).unwrap();
        assert!(rows.iter().all(|&(_, v)| v >= ACCURACY_FLOOR));
        let start = lcurve_value_at(&rows, 1).unwrap();
        let end = lcurve_value_at(&rows, 2_000).unwrap();
        start / end
    };
    let sbso_decay = decay_over("sbso");
    let bso_decay = decay_over("bso");
    assert!(
        sbso_decay >= 1e10,
        "sbso mean accuracy should fall by >= 10 orders, got {sbso_decay:.2e}"
    );
    assert!(
        bso_decay < 1e10,
        "bso mean accuracy should stay orders above, got {bso_decay:.2e}"
    );
}

#[test]
fn constant_traces_give_constant_columns_with_floor() {
    let constant = |len: usize| {
        let mut t = RunTrace::new();
        for _ in 0..len {
            t.push(5.0);
        }
        t
    };
    let h = HistoryMatrix::from_fn(
        10,
        vec!["s".into()],
        vec![ProblemInfo {
            name: "flat".into(),
            dim: 1,
        }],
        2,
        |_, _, _| (constant(10), 0),
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    // f_min equal to the trace value floors the shifted accuracy.
    emit_lcurves(&h, &[5.0], dir.path(), None).unwrap();
    let rows = read_lcurve(&dir.path().join("flat__s.csv")).unwrap();
    assert_eq!(rows, vec![(1, ACCURACY_FLOOR), (10, ACCURACY_FLOOR)]);
}

#[test]
fn problem_filter_limits_output() {
    let h = beale_history(150, 2);
    let dir = tempfile::tempdir().unwrap();
    let none = emit_lcurves(&h, &[0.0], dir.path(), Some(&["nosuch-1".into()])).unwrap();
    assert!(none.is_empty());
    let some = emit_lcurves(&h, &[0.0], dir.path(), Some(&["beale-2".into()])).unwrap();
    assert_eq!(some.len(), 2);
}

#[test]
fn profile_emission_writes_curves_and_report_per_tau() {
    let h = beale_history(300, 3);
    let dir = tempfile::tempdir().unwrap();
    let written = emit_profiles(&h, &[1e-7, 1e-3], dir.path()).unwrap();
    assert_eq!(written.len(), 8, "two taus, four files each");
    assert!(dir.path().join("profiles-step1-evals-tau1e-7.csv").is_file());

    let step1 = std::fs::read_to_string(dir.path().join("profiles-step1-tau1e-7.csv")).unwrap();
    let mut solvers_seen = std::collections::HashSet::new();
    for line in step1.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        solvers_seen.insert(fields[0].to_string());
        let fraction: f64 = fields[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&fraction));
    }
    assert_eq!(solvers_seen.len(), 2, "one curve per solver");

    let report = std::fs::read_to_string(dir.path().join("report-tau1e-3.txt")).unwrap();
    assert!(report.contains("winner,"));
    assert!(report.contains("verdict,"));
    assert!(report.contains("step1_final_fraction"));
    assert!(report.contains("step2_final_fraction"));
}
