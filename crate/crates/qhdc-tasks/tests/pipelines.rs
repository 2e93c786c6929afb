//! End-to-end pipeline checks on the synthetic dataset.

use qhdc_tasks::{
    cross_validate, dimensionality_sweep, preprocess, synthetic_dataset, ClassifyConfig,
    ClassifyMode, SweepConfig,
};

fn pool() -> Vec<qhdc_tasks::Sample> {
    let ds = synthetic_dataset(42, 200).unwrap();
    preprocess(&ds).unwrap()
}

#[test]
fn classical_pipeline_beats_the_floor_at_both_dims() {
    let pool = pool();
    let big = cross_validate(&pool, &ClassifyConfig::new(10_000, 42, ClassifyMode::Classical))
        .unwrap();
    let small =
        cross_validate(&pool, &ClassifyConfig::new(128, 42, ClassifyMode::Classical)).unwrap();
    println!(
        "classical: D=10000 F1 {:.4} (auc {:.4}), D=128 F1 {:.4} (auc {:.4})",
        big.f1_mean, big.auc, small.f1_mean, small.auc
    );
    assert!(big.f1_mean >= 0.80, "D=10000 f1 {}", big.f1_mean);
    assert!(
        (big.f1_mean - small.f1_mean).abs() <= 0.03,
        "gap {} vs {}",
        big.f1_mean,
        small.f1_mean
    );
    assert_eq!(big.confusion.total(), (5 * 50) as u64);
}

#[test]
fn quantum_exact_tracks_classical_at_dim_128() {
    let pool = pool();
    let classical =
        cross_validate(&pool, &ClassifyConfig::new(128, 42, ClassifyMode::Classical)).unwrap();
    let quantum =
        cross_validate(&pool, &ClassifyConfig::new(128, 42, ClassifyMode::QuantumExact)).unwrap();
    println!(
        "D=128: classical F1 {:.4}, quantum-exact F1 {:.4}",
        classical.f1_mean, quantum.f1_mean
    );
    assert!(
        (classical.f1_mean - quantum.f1_mean).abs() <= 0.10,
        "classical {} vs quantum {}",
        classical.f1_mean,
        quantum.f1_mean
    );
}

#[test]
fn sweep_orders_f1_and_depth_as_expected() {
    let pool = pool();
    let rows = dimensionality_sweep(&pool, &SweepConfig::default()).unwrap();
    for r in &rows {
        println!(
            "sweep: D={} f1 {:.4} depth {} cnots {}",
            r.dim, r.f1, r.hadamard_test_depth, r.hadamard_test_cnots
        );
    }
    for pair in rows.windows(2) {
        assert!(pair[1].hadamard_test_depth > pair[0].hadamard_test_depth);
    }
    let f1_16 = rows.iter().find(|r| r.dim == 16).unwrap().f1;
    let f1_128 = rows.iter().find(|r| r.dim == 128).unwrap().f1;
    assert!(f1_16 < f1_128, "f1(16) {f1_16} vs f1(128) {f1_128}");
}
