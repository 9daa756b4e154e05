use varjet::hierarchy::{l2, schwarzian};
use varjet::numeric::{derive_ode, eval, integrate_rk4, monitor, JetPoint, Trajectory};
use varjet::{jacobi, krivonos, parse_expr, Atom, Expr, NumericError};

fn terminal_error(run: &Trajectory, reference: &Trajectory) -> f64 {
    let (t_run, a) = run.last();
    let (t_ref, b) = reference.last();
    assert_eq!(t_run, t_ref);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[test]
fn evaluation_at_points() {
    let s = schwarzian();
    assert_eq!(
        eval(&s, &JetPoint::from_jets(&[0.0, 1.0, 0.0, 0.0])).unwrap(),
        0.0
    );
    assert_eq!(
        eval(&s, &JetPoint::from_jets(&[0.0, 1.0, 1.0, 1.0])).unwrap(),
        -0.5
    );
    assert_eq!(
        eval(&l2(), &JetPoint::from_jets(&[0.0, 2.0, 2.0])).unwrap(),
        0.5
    );

    let e = parse_expr("k*t + log(q)").unwrap();
    let p = JetPoint::from_jets(&[1.0])
        .with(Atom::Time, 2.0)
        .with(Atom::param("k"), 0.25);
    assert_eq!(eval(&e, &p).unwrap(), 0.5);
    assert!(matches!(
        eval(&e, &JetPoint::from_jets(&[1.0]).with(Atom::Time, 2.0)),
        Err(NumericError::MissingAtom(_))
    ));
}

#[test]
fn l2_and_schwarzian_share_their_equation_of_motion() {
    let a = derive_ode(&l2()).unwrap();
    let b = derive_ode(&schwarzian()).unwrap();
    assert_eq!(a.order, 4);
    assert_eq!(a.rhs, parse_expr("(4*q'*q''*q''' - 3*q''^3)/q'^2").unwrap());
    assert_eq!(a.rhs, b.rhs);
}

#[test]
fn jacobi_integral_is_conserved() {
    let sys = derive_ode(&l2()).unwrap();
    let traj = integrate_rk4(&sys, &[0.0, 1.0, 1.0, 0.0], 0.0, 1.0, 1e-3).unwrap();
    assert_eq!(traj.samples.len(), 1001);
    let report = monitor(&traj, &jacobi(&l2())).unwrap();
    assert_eq!(report.samples[0].1, 1.5);
    assert!(
        report.max_rel_drift <= 1e-6,
        "drift {}",
        report.max_rel_drift
    );
}

#[test]
fn mobius_data_stays_on_the_schwarzian_zero_set() {
    // q = 1/(1 + t) at t = 0
    let sys = derive_ode(&l2()).unwrap();
    let traj = integrate_rk4(&sys, &[1.0, -1.0, 2.0, -6.0], 0.0, 1.0, 1e-3).unwrap();
    let report = monitor(&traj, &schwarzian()).unwrap();
    let worst = report
        .samples
        .iter()
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-8, "|sigma(3)| reached {worst}");
    let (t, end) = traj.last();
    assert_eq!(*t, 1.0);
    assert!((end[0] - 0.5).abs() < 1e-9);
}

#[test]
fn rk4_is_fourth_order() {
    let sys = derive_ode(&l2()).unwrap();
    let init = [0.0, 1.0, 1.0, 0.0];
    let reference = integrate_rk4(&sys, &init, 0.0, 1.0, 1.25e-4).unwrap();
    let coarse = integrate_rk4(&sys, &init, 0.0, 1.0, 1e-3).unwrap();
    let fine = integrate_rk4(&sys, &init, 0.0, 1.0, 5e-4).unwrap();
    let ratio = terminal_error(&coarse, &reference) / terminal_error(&fine, &reference);
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn drift_shrinks_with_the_step() {
    let cases = [
        (l2(), vec![0.0, 1.0, 1.0, 0.0]),
        (schwarzian(), vec![0.0, 1.0, 1.0, 0.0]),
        (krivonos(5).unwrap(), vec![0.0, 1.0, 1.0, 0.0, 0.0, 0.0]),
    ];
    for (l, init) in cases {
        let sys = derive_ode(&l).unwrap();
        let j = jacobi(&l);
        let drifts: Vec<f64> = [0.1, 0.05, 0.025, 0.0125]
            .iter()
            .map(|&h| {
                let traj = integrate_rk4(&sys, &init, 0.0, 1.0, h).unwrap();
                monitor(&traj, &j).unwrap().max_rel_drift
            })
            .collect();
        assert!(drifts.windows(2).all(|w| w[1] < w[0]), "{l}: {drifts:?}");
    }
}

#[test]
fn singular_start_is_reported() {
    let sys = derive_ode(&l2()).unwrap();
    match integrate_rk4(&sys, &[0.0, 0.0, 1.0, 0.0], 0.0, 1.0, 1e-3) {
        Err(NumericError::NumericSingularity { t, partial }) => {
            assert_eq!(t, 0.0);
            assert!(partial.is_empty());
        }
        other => panic!("expected a singularity, got {other:?}"),
    }
}

#[test]
fn singularity_mid_run_keeps_the_partial_trajectory() {
    // q = 1 - 2t is a solution and the leading coefficient q vanishes at t = 1/2.
    let sys = derive_ode(&parse_expr("q*q''^2/2").unwrap()).unwrap();
    assert_eq!(sys.singular_set, Expr::jet(0));
    let result = integrate_rk4(&sys, &[1.0, -2.0, 0.0, 0.0], 0.0, 1.0, 0.125);
    match result {
        Err(NumericError::NumericSingularity { t, partial }) => {
            assert_eq!(t, 0.375);
            assert_eq!(partial.len(), 4);
            assert_eq!(partial.last().unwrap().0, t);
        }
        Ok(traj) => panic!("expected a singularity, reached t = {}", traj.last().0),
        Err(other) => panic!("unexpected error {other}"),
    }
}

#[test]
fn null_lagrangians_have_no_dynamics() {
    assert!(matches!(
        derive_ode(&krivonos(6).unwrap()),
        Err(NumericError::NullOde)
    ));
}

#[test]
fn invalid_setups() {
    let sys = derive_ode(&l2()).unwrap();
    for (init, t0, t1, h) in [
        (vec![0.0, 1.0, 1.0], 0.0, 1.0, 1e-3),
        (vec![0.0, 1.0, 1.0, 0.0], 0.0, 1.0, -1e-3),
        (vec![0.0, 1.0, 1.0, 0.0], 1.0, 1.0, 1e-3),
    ] {
        assert!(matches!(
            integrate_rk4(&sys, &init, t0, t1, h),
            Err(NumericError::InvalidSetup(_))
        ));
    }
}

#[test]
fn sixth_order_dynamics() {
    let s5 = krivonos(5).unwrap();
    let sys = derive_ode(&s5).unwrap();
    assert_eq!(sys.order, 6);
    let den = sys.rhs.den().terms();
    assert_eq!(den.len(), 1);
    assert_eq!(den[0].0, Expr::jet(1).pow(4).unwrap().num().terms()[0].0);

    let traj = integrate_rk4(&sys, &[0.0, 1.0, 0.5, 0.5, 0.5, 0.5], 0.0, 0.5, 1e-4).unwrap();
    let report = monitor(&traj, &jacobi(&s5)).unwrap();
    assert!(
        report.max_rel_drift <= 1e-5,
        "drift {}",
        report.max_rel_drift
    );

    let flat = monitor(&traj, &Expr::one()).unwrap();
    assert_eq!((flat.max_abs_drift, flat.max_rel_drift), (0.0, 0.0));
}
