use varjet::hierarchy::{l2, pre_schwarzian, schwarzian};
use varjet::{krivonos, mobius_substitute, schippers, sl2_finite_check, sl2_residues, Expr};

fn corpus() -> Vec<(String, Expr)> {
    let mut out = vec![
        ("presch".to_string(), pre_schwarzian()),
        ("L2".to_string(), l2()),
    ];
    for n in 3..=6 {
        out.push((format!("sigma({n})"), krivonos(n).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("schippers({n})"), schippers(n).unwrap()));
    }
    out
}

#[test]
fn infinitesimal_and_finite_checks_agree() {
    for (name, e) in corpus() {
        let infinitesimal = sl2_residues(&e).unwrap().invariant;
        let finite = sl2_finite_check(&e).unwrap();
        assert_eq!(infinitesimal, finite, "{name}");
        let expected = name.starts_with("sigma") || name == "schippers(3)";
        assert_eq!(infinitesimal, expected, "{name}");
    }
}

type Matrix = [Expr; 4];

fn matrix(entries: [(i64, i64); 4]) -> Matrix {
    entries.map(|(n, d)| Expr::ratio(n, d))
}

fn product(x: &Matrix, y: &Matrix) -> Matrix {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

fn act(e: &Expr, m: &Matrix) -> Expr {
    mobius_substitute(e, &m[0], &m[1], &m[2], &m[3]).unwrap()
}

#[test]
fn substitutions_compose_like_matrices() {
    // determinants 2*1 - 1*1 = 1 and (1/2)*3 - (1/4)*2 = 1
    let m1 = matrix([(2, 1), (1, 1), (1, 1), (1, 1)]);
    let m2 = matrix([(1, 2), (1, 4), (2, 1), (3, 1)]);
    for e in [schwarzian(), pre_schwarzian()] {
        let twice = act(&act(&e, &m1), &m2);
        assert_eq!(twice, act(&e, &product(&m1, &m2)));
    }
    assert_ne!(act(&pre_schwarzian(), &m1), pre_schwarzian());
}

#[test]
fn invariants_form_a_ring() {
    let s3 = schwarzian();
    let s4 = krivonos(4).unwrap();
    for e in [
        &s3 * &s4,
        s3.pow(2).unwrap(),
        &(&Expr::ratio(3, 7) * &s3) - &(&Expr::integer(5) * &s4),
    ] {
        assert!(sl2_residues(&e).unwrap().invariant);
        assert!(sl2_finite_check(&e).unwrap());
    }
}

#[test]
fn special_residue_of_the_pre_schwarzian() {
    let r = sl2_residues(&pre_schwarzian()).unwrap();
    assert!(r.residue_translation.is_zero());
    assert!(r.residue_scaling.is_zero());
    assert_eq!(r.residue_special, &Expr::integer(2) * &Expr::jet(1));
}

#[test]
fn schippers_four_fails_only_the_special_generator() {
    let r = sl2_residues(&schippers(4).unwrap()).unwrap();
    assert!(r.residue_translation.is_zero());
    assert!(r.residue_scaling.is_zero());
    assert!(!r.residue_special.is_zero());
}
