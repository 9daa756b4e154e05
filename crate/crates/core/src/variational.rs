//! Euler-Lagrange operator, Jacobi integral, null-Lagrangian detection and
//! gauge extraction for Lagrangians of arbitrary jet order.

use num_traits::Zero;

use crate::cancel::Cancellation;
use crate::error::VariationalError;
use crate::expr::{gcd, Atom, Expr, Monomial, Polynomial, Rational};
use crate::jet::{jet_order, total_derivative};

/// A gauge `P` with `D_t P = L`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeResult {
    pub gauge: Expr,
    /// Additive constant of the gauge; fixed to zero by convention.
    pub residual_constant: Rational,
}

/// `E = C * q^(order) + R` with `C` and `R` free of `q^(order)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TopIsolation {
    pub order: u32,
    pub coefficient: Expr,
    pub remainder: Expr,
}

fn jet_partials(l: &Expr, n: u32) -> Vec<Expr> {
    (0..=n)
        .map(|k| {
            l.partial(&Atom::Jet(k))
                .expect("jet atoms are differentiable")
        })
        .collect()
}

/// Nested sums `Σ_{k=0}^{n-r} (-1)^k D_t^k ∂L/∂q^(r+k)` for `r = 0..=n`,
/// built from the top down as `inner[r] = ∂L/∂q^(r) - D_t inner[r+1]`.
fn alternating_sums(
    l: &Expr,
    n: u32,
    cancel: &Cancellation,
) -> Result<Vec<Expr>, VariationalError> {
    let partials = jet_partials(l, n);
    let mut inner = vec![Expr::zero(); n as usize + 1];
    inner[n as usize] = partials[n as usize].clone();
    for r in (0..n as usize).rev() {
        cancel.check()?;
        inner[r] = &partials[r] - &total_derivative(&inner[r + 1], 1);
    }
    Ok(inner)
}

/// Higher-order Euler-Lagrange expression `Σ_i (-1)^i D_t^i ∂L/∂q^(i)`.
pub fn euler_lagrange(l: &Expr) -> Expr {
    euler_lagrange_with(l, &Cancellation::new()).expect("not cancelled")
}

pub fn euler_lagrange_with(l: &Expr, cancel: &Cancellation) -> Result<Expr, VariationalError> {
    let Some(n) = jet_order(l) else {
        return Ok(Expr::zero());
    };
    let mut inner = alternating_sums(l, n, cancel)?;
    Ok(inner.swap_remove(0))
}

/// Jacobi integral `Σ_{r=1}^n q^(r) Σ_{k=0}^{n-r} (-1)^k D_t^k ∂L/∂q^(r+k) - L`.
pub fn jacobi(l: &Expr) -> Expr {
    jacobi_with(l, &Cancellation::new()).expect("not cancelled")
}

pub fn jacobi_with(l: &Expr, cancel: &Cancellation) -> Result<Expr, VariationalError> {
    let Some(n) = jet_order(l) else {
        return Ok(-l);
    };
    let inner = alternating_sums(l, n, cancel)?;
    let mut acc = -l;
    for (r, sum) in inner.iter().enumerate().skip(1) {
        acc = &acc + &(&Expr::jet(r as u32) * sum);
    }
    Ok(acc)
}

/// Whether the Euler-Lagrange expression of `l` vanishes identically.
pub fn is_null(l: &Expr) -> bool {
    euler_lagrange(l).is_zero()
}

/// Gauge function of a null Lagrangian, found by peeling off the top jet
/// order one integration at a time.
pub fn extract_gauge(l: &Expr) -> Result<GaugeResult, VariationalError> {
    extract_gauge_with(l, &Cancellation::new())
}

pub fn extract_gauge_with(
    l: &Expr,
    cancel: &Cancellation,
) -> Result<GaugeResult, VariationalError> {
    if !euler_lagrange_with(l, cancel)?.is_zero() {
        return Err(VariationalError::NotNull);
    }
    let mut rest = l.clone();
    let mut gauge = Expr::zero();
    loop {
        cancel.check()?;
        match jet_order(&rest) {
            None => {
                if !rest.is_zero() {
                    gauge = &gauge + &integrate(&rest, &Atom::Time)?;
                }
                break;
            }
            // a null remainder cannot depend on q alone
            Some(0) => return Err(VariationalError::NotNull),
            Some(n) => {
                let top = rest.partial(&Atom::Jet(n))?;
                if top.depends_on(&Atom::Jet(n)) {
                    return Err(VariationalError::NonexactTop(n));
                }
                let piece = integrate(&top, &Atom::Jet(n - 1))?;
                rest = &rest - &total_derivative(&piece, 1);
                gauge = &gauge + &piece;
                if jet_order(&rest).is_some_and(|m| m >= n) {
                    return Err(VariationalError::NonexactTop(n));
                }
            }
        }
    }
    Ok(GaugeResult {
        gauge: strip_constant(gauge),
        residual_constant: Rational::zero(),
    })
}

fn strip_constant(e: Expr) -> Expr {
    if !e.is_polynomial() {
        return e;
    }
    let constant: Rational = e
        .num()
        .terms()
        .iter()
        .filter(|(m, _)| m.is_one())
        .map(|(_, c)| c.clone())
        .sum();
    if constant.is_zero() {
        return e;
    }
    let den = e.den().as_constant().expect("polynomial expression");
    &e - &Expr::rational(constant / den)
}

/// Antiderivative in `x` of integrands polynomial in `x` plus `c / (linear
/// in x)` pieces, which integrate to log atoms.
fn integrate(f: &Expr, x: &Atom) -> Result<Expr, VariationalError> {
    if f.is_zero() {
        return Ok(Expr::zero());
    }
    let unsupported = || VariationalError::IntegrationUnsupported(format!("d{x} of {f}"));
    if f.atoms()
        .iter()
        .any(|a| matches!(a, Atom::Log(arg) if arg.depends_on(x)))
    {
        return Err(unsupported());
    }
    if !f.den().contains_atom(x) {
        return Ok(integrate_polynomial(f.num(), f.den(), x));
    }

    let coeffs: Vec<Polynomial> = f
        .den()
        .to_univariate(x)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    let mut content = coeffs[0].clone();
    for c in &coeffs[1..] {
        content = gcd(&content, c);
    }
    let linear = f
        .den()
        .div_exact(&content)
        .expect("content divides denominator");
    if linear.degree_in(x) != 1 {
        return Err(unsupported());
    }
    let parts = linear.to_univariate(x);
    let alpha = Expr::from_polynomial(parts[1].clone());
    let beta = Expr::from_polynomial(parts[0].clone());
    let root = -(&beta / &alpha);
    let num = Expr::from_polynomial(f.num().clone());
    let residue = num.substitute(x, &root)?;
    let linear_expr = Expr::from_polynomial(linear);
    let content_expr = Expr::from_polynomial(content);
    let quotient = &(&num - &residue) / &linear_expr;
    let poly_part = &quotient / &content_expr;
    if poly_part.den().contains_atom(x) {
        return Err(unsupported());
    }
    let poly_int = integrate_polynomial(poly_part.num(), poly_part.den(), x);
    let log_coeff = &residue / &(&content_expr * &alpha);
    Ok(&poly_int + &(&log_coeff * &Expr::log(linear_expr)?))
}

fn integrate_polynomial(num: &Polynomial, den: &Polynomial, x: &Atom) -> Expr {
    let terms = num
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = m.exponent(x);
            let raised = m.mul(&Monomial::atom(x.clone(), 1));
            (raised, c / Rational::from_integer((e + 1).into()))
        })
        .collect();
    Expr::fraction(Polynomial::from_terms(terms), den.clone()).expect("nonzero denominator")
}

/// Splits `e` as `C * q^(m) + R` for its top jet order `m`.
pub fn isolate_top(e: &Expr) -> Result<TopIsolation, VariationalError> {
    let order = jet_order(e).ok_or(VariationalError::NoJet)?;
    let x = Atom::Jet(order);
    let inside_log = e
        .atoms()
        .iter()
        .any(|a| matches!(a, Atom::Log(arg) if arg.depends_on(&x)));
    if inside_log || e.den().contains_atom(&x) || e.num().degree_in(&x) != 1 {
        return Err(VariationalError::NonlinearTop(order));
    }
    let parts = e.num().to_univariate(&x);
    Ok(TopIsolation {
        order,
        coefficient: Expr::fraction(parts[1].clone(), e.den().clone())?,
        remainder: Expr::fraction(parts[0].clone(), e.den().clone())?,
    })
}
