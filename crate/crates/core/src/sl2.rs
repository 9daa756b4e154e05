//! SL(2,R) invariance of jet expressions under `q -> (a q + b)/(c q + d)`.
//!
//! Two independent routes: the infinitesimal one prolongs the generators
//! with characteristics `1`, `q`, `q^2`; the finite one substitutes the
//! prolonged Möbius map with symbolic unimodular entries.

use crate::error::Sl2Error;
use crate::expr::{Atom, Expr};
use crate::jet::{jet_order, prolong, total_derivative, Characteristic};

const RESERVED: [&str; 4] = ["a", "b", "c", "d"];

/// Prolongation residues of the three sl(2) generators.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub residue_translation: Expr,
    pub residue_scaling: Expr,
    pub residue_special: Expr,
    pub invariant: bool,
}

fn check_reserved(e: &Expr) -> Result<(), Sl2Error> {
    for atom in e.base_atoms() {
        if let Atom::Param(name) = &atom {
            if RESERVED.contains(&name.as_ref()) {
                return Err(Sl2Error::ReservedParameter(name.to_string()));
            }
        }
    }
    Ok(())
}

pub fn sl2_residues(e: &Expr) -> Result<InvarianceReport, Sl2Error> {
    check_reserved(e)?;
    let q = Expr::jet(0);
    let residue = |phi: Expr| prolong(&Characteristic::new(phi), e);
    let residue_translation = residue(Expr::one());
    let residue_scaling = residue(q.clone());
    let residue_special = residue(&q * &q);
    let invariant =
        residue_translation.is_zero() && residue_scaling.is_zero() && residue_special.is_zero();
    Ok(InvarianceReport {
        residue_translation,
        residue_scaling,
        residue_special,
        invariant,
    })
}

/// `d = (1 + b c) / a`, the entry fixed by `a d - b c = 1`.
pub fn unimodular_d(a: &Expr, b: &Expr, c: &Expr) -> Result<Expr, Sl2Error> {
    Ok((&Expr::one() + &(b * c)).checked_div(a)?)
}

/// Rewrites `e` in terms of the jets of `w = (a q + b)/(c q + d)`, i.e.
/// substitutes `D_t^k w` for every `q^(k)`.
pub fn mobius_substitute(
    e: &Expr,
    a: &Expr,
    b: &Expr,
    c: &Expr,
    d: &Expr,
) -> Result<Expr, Sl2Error> {
    for entry in [a, b, c, d] {
        if entry.depends_on(&Atom::Time) || jet_order(entry).is_some() {
            return Err(Sl2Error::NonConstantEntry);
        }
    }
    let Some(n) = jet_order(e) else {
        return Ok(e.clone());
    };
    let q = Expr::jet(0);
    let mut w = (&(a * &q) + b).checked_div(&(&(c * &q) + d))?;
    let mut subs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        if k > 0 {
            w = total_derivative(&w, 1);
        }
        subs.push((Atom::Jet(k), w.clone()));
    }
    Ok(e.substitute_all(&subs)?)
}

/// Whether `e` is unchanged by a generic unimodular Möbius map.
pub fn sl2_finite_check(e: &Expr) -> Result<bool, Sl2Error> {
    check_reserved(e)?;
    let (a, b, c) = (Expr::param("a"), Expr::param("b"), Expr::param("c"));
    let d = unimodular_d(&a, &b, &c)?;
    let moved = mobius_substitute(e, &a, &b, &c, &d)?;
    Ok((&moved - e).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{pre_schwarzian, schwarzian};

    #[test]
    fn schwarzian_is_invariant_both_ways() {
        let s = schwarzian();
        let report = sl2_residues(&s).unwrap();
        assert!(report.invariant);
        assert!(sl2_finite_check(&s).unwrap());
        let one = Expr::one();
        let zero = Expr::zero();
        assert_eq!(mobius_substitute(&s, &one, &zero, &zero, &one).unwrap(), s);
        let (a, b, c) = (Expr::param("a"), Expr::param("b"), Expr::param("c"));
        let d = unimodular_d(&a, &b, &c).unwrap();
        assert_eq!(mobius_substitute(&s, &a, &b, &c, &d).unwrap(), s);
    }

    #[test]
    fn pre_schwarzian_is_not() {
        let pre = pre_schwarzian();
        let report = sl2_residues(&pre).unwrap();
        assert!(report.residue_translation.is_zero());
        assert!(report.residue_scaling.is_zero());
        assert_eq!(report.residue_special, &Expr::integer(2) * &Expr::jet(1));
        assert!(!report.invariant);
        let one = Expr::one();
        let moved = mobius_substitute(&pre, &one, &Expr::zero(), &one, &one).unwrap();
        assert_ne!(moved, pre);
        assert!(!sl2_finite_check(&pre).unwrap());
    }

    #[test]
    fn reserved_names_are_rejected() {
        let e = &Expr::param("a") * &Expr::jet(1);
        assert_eq!(
            sl2_residues(&e),
            Err(Sl2Error::ReservedParameter("a".into()))
        );
        assert!(sl2_finite_check(&e).is_err());
    }

    #[test]
    fn entries_must_be_constant() {
        let one = Expr::one();
        let q = Expr::jet(0);
        assert_eq!(
            mobius_substitute(&schwarzian(), &q, &one, &one, &one),
            Err(Sl2Error::NonConstantEntry)
        );
    }
}
