//! Total derivative and prolongation of evolutionary vector fields.

use crate::expr::{Atom, Expr};

/// `D_t = ∂/∂t + Σ q^(j+1) ∂/∂q^(j)` applied `k` times.
pub fn total_derivative(e: &Expr, k: u32) -> Expr {
    let mut out = e.clone();
    for _ in 0..k {
        out = total_derivative_once(&out);
    }
    out
}

fn total_derivative_once(e: &Expr) -> Expr {
    e.derive(&|a: &Atom| match a {
        Atom::Time => Some(Expr::one()),
        Atom::Jet(k) => Some(Expr::jet(k + 1)),
        _ => None,
    })
}

/// Largest `k` with `q^(k)` occurring in `e`, log arguments included.
pub fn jet_order(e: &Expr) -> Option<u32> {
    e.max_jet()
}

/// Characteristic `φ` of the evolutionary field `φ ∂/∂q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic(pub Expr);

impl Characteristic {
    pub fn new(phi: Expr) -> Self {
        Characteristic(phi)
    }

    pub fn phi(&self) -> &Expr {
        &self.0
    }
}

impl From<Expr> for Characteristic {
    fn from(phi: Expr) -> Self {
        Characteristic(phi)
    }
}

/// `pr v(e) = Σ_k D_t^k(φ) ∂e/∂q^(k)`, summed up to the jet order of `e`.
pub fn prolong(phi: &Characteristic, e: &Expr) -> Expr {
    let Some(n) = jet_order(e) else {
        return Expr::zero();
    };
    let mut coeff = phi.0.clone();
    let mut acc = Expr::zero();
    for k in 0..=n {
        let de = e
            .partial(&Atom::Jet(k))
            .expect("jet atoms are differentiable");
        if !de.is_zero() {
            acc = &acc + &(&coeff * &de);
        }
        if k < n {
            coeff = total_derivative_once(&coeff);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: u32) -> Expr {
        Expr::jet(k)
    }

    fn schwarzian() -> Expr {
        &(&q(3) / &q(1)) - &(&Expr::ratio(3, 2) * &(&q(2) / &q(1)).pow(2).unwrap())
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&q(0), 1), q(1));
        let c1 = Expr::param("c1");
        let gauge = &(&c1 / &Expr::integer(2)) * &q(0).pow(2).unwrap();
        assert_eq!(total_derivative(&gauge, 1), &(&c1 * &q(0)) * &q(1));
        let pre = &q(2) / &q(1);
        let alt = &total_derivative(&pre, 1) - &(&Expr::ratio(1, 2) * &pre.pow(2).unwrap());
        assert_eq!(alt, schwarzian());
        assert_eq!(total_derivative(&Expr::time(), 1), Expr::one());
        assert_eq!(total_derivative(&q(0), 3), q(3));
    }

    #[test]
    fn total_derivative_of_log() {
        let l = Expr::log(q(1)).unwrap();
        assert_eq!(total_derivative(&l, 1), &q(2) / &q(1));
    }

    #[test]
    fn jet_order_examples() {
        assert_eq!(jet_order(&schwarzian()), Some(3));
        assert_eq!(jet_order(&Expr::param("c1")), None);
        assert_eq!(jet_order(&Expr::log(q(4)).unwrap()), Some(4));
    }

    #[test]
    fn prolongation_examples() {
        let s = schwarzian();
        assert!(prolong(&Expr::one().into(), &s).is_zero());
        assert!(prolong(&q(0).into(), &s).is_zero());
        let special: Characteristic = q(0).pow(2).unwrap().into();
        assert_eq!(
            prolong(&special, &(&q(2) / &q(1))),
            &Expr::integer(2) * &q(1)
        );
    }
}
