use dq_core::certify::{diff_reports, run, Report, RunConfig, Suite};
use dq_core::scalars::rat;

fn small(n: usize, suites: &[Suite]) -> RunConfig {
    let mut c = RunConfig::defaults(n);
    c.suites = suites.to_vec();
    c.max_degree = 2;
    c.horizon = 2;
    c.derham_max_k = 2;
    c.derham_max_m = 1;
    c
}

#[test]
fn n2_small_run_passes_and_round_trips() {
    let r = run(&small(2, &Suite::ALL)).unwrap();
    for s in &r.suites {
        assert!(s.pass, "suite {} failed: {:?}", s.name, s.certificates.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
    assert_eq!(r.suites.len(), 5);
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert!(diff_reports(&r, &back).is_empty());
}

#[test]
fn rank_change_shows_in_diff() {
    let a = run(&small(2, &[Suite::Rmatrix])).unwrap();
    let b = run(&small(3, &[Suite::Rmatrix])).unwrap();
    assert!(a.pass && b.pass);
    let d = diff_reports(&a, &b);
    assert!(d.iter().any(|l| l.starts_with("config")));
}

#[test]
fn suite_order_is_canonical() {
    let a = run(&small(2, &[Suite::Qlie, Suite::Rmatrix])).unwrap();
    let b = run(&small(2, &[Suite::Rmatrix, Suite::Qlie])).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.suites[0].name, "rmatrix");
}

#[test]
fn invalid_orbit_is_a_config_error() {
    let mut c = small(2, &[Suite::Orbit]);
    c.eigenvalues = vec![rat(1, 1), rat(2, 1)];
    assert!(matches!(run(&c), Err(dq_core::Error::Config(_))));
}

#[test]
fn scaled_orbit_scales_character() {
    use dq_core::graded::GradedContext;
    use dq_core::orbit::{OrbitContext, OrbitSpec};
    use dq_core::qlie::QuantumLie;
    let g = GradedContext::new(std::sync::Arc::new(QuantumLie::new(2).unwrap())).unwrap();
    let a = OrbitContext::new(&g, OrbitSpec::new(2, vec![rat(1, 1), rat(-1, 1)]).unwrap(), 2).unwrap();
    let b = OrbitContext::new(&g, OrbitSpec::new(2, vec![rat(3, 1), rat(-3, 1)]).unwrap(), 2).unwrap();
    assert_eq!(a.character.generator_values[0].1 * rat(9, 1), b.character.generator_values[0].1);
}
