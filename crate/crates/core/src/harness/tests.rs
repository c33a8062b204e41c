use super::*;
use crate::code::hgp_rep3;
use rand::Rng;

fn rep3() -> PreparedCode {
    PreparedCode::new(hgp_rep3())
}

#[test]
fn stderr_examples() {
    assert_eq!(stderr_estimate(0, 100), 0.0);
    assert!((stderr_estimate(25, 100) - 0.0433).abs() < 1e-4);
}

#[test]
fn stderr_matches_bootstrap() {
    let mut rng = trial_rng(5, 0.0, 0.0, 0);
    for &(k, n) in &[(25u64, 100u64), (7, 200), (300, 1000)] {
        let data: Vec<bool> = (0..n).map(|i| i < k).collect();
        let reps = 4000;
        let means: Vec<f64> = (0..reps)
            .map(|_| {
                let hits = (0..n).filter(|_| data[rng.random_range(0..n as usize)]).count();
                hits as f64 / n as f64
            })
            .collect();
        let mean = means.iter().sum::<f64>() / reps as f64;
        let sd = (means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (reps - 1) as f64).sqrt();
        let se = stderr_estimate(k, n);
        assert!((sd - se).abs() / se < 0.1, "bootstrap {sd} vs {se}");
    }
}

#[test]
fn classify_trivial_and_stabilizer_residuals() {
    let pc = rep3();
    let n = pc.code.n;
    let e = PauliErrorVector::identity(n);
    let z = BitVector::zeros(n);
    assert_eq!(classify(&pc, &e, &z, &z).unwrap(), Classification::Success);
    for i in 0..pc.code.h_x.rows() {
        let row = pc.code.h_x.row_vector(i);
        assert_eq!(classify(&pc, &e, &row, &z).unwrap(), Classification::Success);
    }
    for i in 0..pc.code.h_z.rows() {
        let row = pc.code.h_z.row_vector(i);
        assert_eq!(classify(&pc, &e, &z, &row).unwrap(), Classification::Success);
    }
    let single = BitVector::from_support(n, &[0]);
    assert_eq!(classify(&pc, &e, &single, &z).unwrap(), Classification::LogicalError);
    assert!(classify(&pc, &e, &BitVector::zeros(n + 1), &z).is_err());
}

#[test]
fn classify_depends_only_on_residual() {
    let pc = rep3();
    let n = pc.code.n;
    let mut rng = trial_rng(9, 0.0, 0.0, 0);
    for _ in 0..200 {
        let e = sample_depolarizing(n, 0.3, &mut rng);
        let a = sample_depolarizing(n, 0.3, &mut rng);
        let xh = e.e_x.xor(&a.e_x);
        let zh = e.e_z.xor(&a.e_z);
        let direct = classify(&pc, &e, &xh, &zh).unwrap();
        let shifted = classify(&pc, &PauliErrorVector::identity(n), &a.e_x, &a.e_z).unwrap();
        assert_eq!(direct, shifted);
        assert_eq!(direct, classify_residuals(&pc.code, &a.e_x, &a.e_z).unwrap());
    }
}

#[test]
fn noiseless_trial_succeeds_in_one_iteration() {
    let pc = rep3();
    let cfg = DecoderConfig::default();
    let params = NoiseParams::new(0.0, 0.0).unwrap();
    let d = run_trial::<f64, _>(&pc, params, &cfg, &mut trial_rng(1, 0.0, 0.0, 0)).unwrap();
    assert_eq!(d.outcome.classification, Classification::Success);
    assert_eq!((d.outcome.iterations_x, d.outcome.iterations_z), (1, 1));
}

#[test]
fn degenerate_estimate_counts_as_success() {
    // the decoder returning e plus an X stabilizer is still a success
    let pc = rep3();
    let n = pc.code.n;
    let e = PauliErrorVector::new(BitVector::from_support(n, &[2]), BitVector::zeros(n)).unwrap();
    let x_hat = e.e_x.xor(&pc.code.h_x.row_vector(0));
    assert_eq!(
        classify(&pc, &e, &x_hat, &BitVector::zeros(n)).unwrap(),
        Classification::Success
    );
}

#[test]
fn perfect_and_noiseless_soft_agree_per_trial() {
    let pc = rep3();
    let params = NoiseParams::new(0.08, 0.0).unwrap();
    for t in 0..300 {
        let perfect = DecoderConfig::default().with_mode(DecoderMode::Perfect);
        let soft = DecoderConfig::default().with_mode(DecoderMode::Soft);
        let a = run_trial::<f64, _>(&pc, params, &perfect, &mut trial_rng(3, 0.08, 0.0, t)).unwrap();
        let b = run_trial::<f64, _>(&pc, params, &soft, &mut trial_rng(3, 0.08, 0.0, t)).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.x_side, b.x_side);
    }
}

fn config(p: f64, sigma: f64, rule: StopRule) -> ExperimentConfig {
    ExperimentConfig {
        code: CodeSpec::Builtin("hgp_rep3".into()),
        name: None,
        p_grid: vec![p],
        sigma_grid: vec![sigma],
        modes: vec![DecoderMode::Hard, DecoderMode::Soft],
        decoder: DecoderConfig::default(),
        stop_rule: rule,
        master_seed: 42,
    }
}

#[test]
fn noiseless_experiment() {
    let pc = rep3();
    let cfg = config(0.0, 0.0, StopRule::Trials { trials: 100 });
    let rows = run_experiment::<f64>(&cfg, &pc, 2, &mut |_| {}).unwrap();
    for r in rows {
        assert_eq!(r.trials, 100);
        assert_eq!(r.ler, 0.0);
        assert_eq!(r.avg_iterations, 1.0);
    }
}

#[test]
fn results_independent_of_workers() {
    let pc = rep3();
    let cfg = config(0.1, 0.4, StopRule::Trials { trials: 3000 });
    let one = run_experiment::<f64>(&cfg, &pc, 1, &mut |_| {}).unwrap();
    let eight = run_experiment::<f64>(&cfg, &pc, 8, &mut |_| {}).unwrap();
    assert_eq!(format!("{one:?}"), format!("{eight:?}"));
    assert!(one[0].logical_errors > 0);
}

#[test]
fn error_target_stops_at_exact_trial() {
    let pc = rep3();
    let cfg = config(0.15, 0.3, StopRule::LogicalErrors { logical_errors: 37, max_trials: 1_000_000 });
    let rows = run_experiment::<f64>(&cfg, &pc, 4, &mut |_| {}).unwrap();
    let again = run_experiment::<f64>(&cfg, &pc, 1, &mut |_| {}).unwrap();
    assert_eq!(format!("{rows:?}"), format!("{again:?}"));
    for r in &rows {
        assert_eq!(r.logical_errors, 37);
        // the last trial counted is itself a failure
        let fixed = config(0.15, 0.3, StopRule::Trials { trials: r.trials - 1 });
        let fixed = ExperimentConfig { modes: vec![r.mode], ..fixed };
        let before = run_experiment::<f64>(&fixed, &pc, 4, &mut |_| {}).unwrap();
        assert_eq!(before[0].logical_errors, 36);
    }
    let capped = config(0.15, 0.3, StopRule::LogicalErrors { logical_errors: 1_000_000, max_trials: 500 });
    let rows = run_experiment::<f64>(&capped, &pc, 4, &mut |_| {}).unwrap();
    assert!(rows.iter().all(|r| r.trials == 500));
}

#[test]
fn csv_layout() {
    let stats = AggregateStats {
        code: "c".into(),
        mode: DecoderMode::Soft,
        p: 0.05,
        sigma: 0.3,
        beta: 0.75,
        gamma_cutoff: 5.0,
        l_max: 100,
        trials: 4,
        logical_errors: 1,
        ler: 0.25,
        ler_stderr: stderr_estimate(1, 4),
        avg_iterations: 2.5,
        avg_iterations_converged: 2.0,
        seed: 9,
    };
    let mut buf = Vec::new();
    write_csv(&mut buf, &[stats]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_SCHEMA_LINE);
    assert_eq!(lines[1], CSV_HEADER);
    assert_eq!(lines[2], "c,soft,0.05,0.3,0.75,5,100,4,1,0.25,0.21650635094610965,2.5,2,9");
}
