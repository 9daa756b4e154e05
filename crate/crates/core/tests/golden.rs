//! Frozen engine output for the fifth and sixth members of the hierarchy.
//! Regenerate with `varjet el "sigma(5)"` and friends after review.

use varjet::{
    euler_lagrange, extract_gauge, jacobi, krivonos, parse_expr, render, Expr, RenderMode,
};

fn check(file: &str, computed: &Expr) {
    let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
    let frozen = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        render(computed, RenderMode::CanonicalText),
        frozen.trim_end(),
        "{file}"
    );
    assert_eq!(&parse_expr(&frozen).unwrap(), computed, "{file}");
}

#[test]
fn euler_lagrange_of_sigma5() {
    check("el_sigma5.txt", &euler_lagrange(&krivonos(5).unwrap()));
}

#[test]
fn jacobi_of_sigma5() {
    check("jacobi_sigma5.txt", &jacobi(&krivonos(5).unwrap()));
}

#[test]
fn gauge_of_sigma6() {
    check(
        "gauge_sigma6.txt",
        &extract_gauge(&krivonos(6).unwrap()).unwrap().gauge,
    );
}
