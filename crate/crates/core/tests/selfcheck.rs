use fracpolylog::validation::run_selfcheck;
use fracpolylog::ToleranceConfig;

#[test]
fn default_config_passes() {
    let reports = run_selfcheck(&ToleranceConfig::default());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    for r in &failed {
        eprintln!("FAIL {}", r.to_json_line());
    }
    assert!(
        failed.is_empty(),
        "{} of {} checks failed",
        failed.len(),
        reports.len()
    );
}

#[test]
fn loose_target_still_passes() {
    let cfg = ToleranceConfig {
        target_abs_err: 1e-4,
        ..ToleranceConfig::default()
    };
    let reports = run_selfcheck(&cfg);
    let failed: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.to_json_line())
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn few_direct_terms_keep_bounds_honest() {
    let cfg = ToleranceConfig {
        ml_direct_terms: 2,
        ..ToleranceConfig::default()
    };
    let reports = run_selfcheck(&cfg);
    let ml: Vec<_> = reports
        .iter()
        .filter(|r| r.name.contains("MittagLeffler") || r.name.starts_with("ml_vs"))
        .collect();
    assert!(!ml.is_empty());
    for r in ml {
        assert!(r.passed, "{}", r.to_json_line());
    }
}

#[test]
fn deterministic_and_sorted() {
    let a = run_selfcheck(&ToleranceConfig::default());
    let b = run_selfcheck(&ToleranceConfig::default());
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].name <= w[1].name));
}
