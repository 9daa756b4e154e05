use std::collections::BTreeMap;

use super::{gcd, Atom, Expr, Monomial, Polynomial};
use crate::error::ExprError;

impl Expr {
    /// Applies the derivation fixed by its action on non-log atoms.
    ///
    /// `delta` returns the image of a time, jet or parameter atom (`None`
    /// for zero). Log atoms follow `δ log R = δR / R`.
    pub fn derive(&self, delta: &dyn Fn(&Atom) -> Option<Expr>) -> Expr {
        let (n_poly, n_rat) = derive_poly(&self.num, delta);
        let (d_poly, d_rat) = derive_poly(&self.den, delta);
        if n_rat.is_zero() && d_rat.is_zero() {
            if d_poly.is_zero() {
                // (N'/D): only the numerator moves
                return Expr::fraction(n_poly, self.den.clone()).expect("nonzero denominator");
            }
            let num = &(&n_poly * &self.den) - &(&self.num * &d_poly);
            let den = &self.den * &self.den;
            return Expr::fraction(num, den).expect("nonzero denominator");
        }
        let dn = &Expr::from_polynomial(n_poly) + &n_rat;
        let dd = &Expr::from_polynomial(d_poly) + &d_rat;
        let inv_den = Expr::coprime(Polynomial::one(), self.den.clone());
        &(&dn - &(self * &dd)) * &inv_den
    }

    /// Partial derivative with respect to a time, jet or parameter atom, all
    /// other atoms held fixed. Log atoms are differentiated by the chain rule.
    pub fn partial(&self, atom: &Atom) -> Result<Expr, ExprError> {
        if atom.is_log() {
            return Err(ExprError::UnsupportedAtom(atom.to_string()));
        }
        let target = atom.clone();
        Ok(self.derive(&move |a: &Atom| (*a == target).then(Expr::one)))
    }

    /// Replaces `atom` by `value` everywhere, log arguments included.
    pub fn substitute(&self, atom: &Atom, value: &Expr) -> Result<Expr, ExprError> {
        self.substitute_all(&[(atom.clone(), value.clone())])
    }

    /// Simultaneous substitution: every listed atom is replaced by its value
    /// in one pass, so values may mention the atoms being replaced.
    pub fn substitute_all(&self, subs: &[(Atom, Expr)]) -> Result<Expr, ExprError> {
        let table: BTreeMap<Atom, Expr> = subs.iter().cloned().collect();
        self.substitute_table(&table)
    }

    fn substitute_table(&self, table: &BTreeMap<Atom, Expr>) -> Result<Expr, ExprError> {
        let top = substitute_poly(&self.num, table)?;
        let bottom = substitute_poly(&self.den, table)?;
        top.checked_div(&bottom)
    }
}

/// `δp` split into a polynomial part and a rational part coming from log
/// atoms and non-polynomial atom images.
fn derive_poly(p: &Polynomial, delta: &dyn Fn(&Atom) -> Option<Expr>) -> (Polynomial, Expr) {
    let mut poly_part = Polynomial::zero();
    let mut rat_part = Expr::zero();
    for atom in p.atoms() {
        let image = match &atom {
            Atom::Log(arg) => {
                let d = arg.derive(delta);
                if d.is_zero() {
                    continue;
                }
                &d / arg.as_ref()
            }
            _ => match delta(&atom) {
                Some(v) if !v.is_zero() => v,
                _ => continue,
            },
        };
        let dp = p.formal_partial(&atom);
        if image.is_polynomial() {
            let scale = image
                .den()
                .as_constant()
                .expect("constant denominator")
                .recip();
            poly_part = &poly_part + &(&dp * &image.num().scale(&scale));
        } else {
            rat_part = &rat_part + &(&Expr::from_polynomial(dp) * &image);
        }
    }
    (poly_part, rat_part)
}

/// Substitutes into a polynomial, clearing every value denominator by
/// homogenising, then cancels the result against those denominators.
fn substitute_poly(p: &Polynomial, table: &BTreeMap<Atom, Expr>) -> Result<Expr, ExprError> {
    let mut values: BTreeMap<Atom, Expr> = BTreeMap::new();
    for atom in p.atoms() {
        if let Some(v) = table.get(&atom) {
            values.insert(atom, v.clone());
        } else if let Atom::Log(arg) = &atom {
            let new_arg = arg.substitute_table(table)?;
            if new_arg != **arg {
                values.insert(atom, Expr::log(new_arg)?);
            }
        }
    }
    if values.is_empty() {
        return Ok(Expr::from_polynomial(p.clone()));
    }

    // Write every value as `num / Π bᵢ^eᵢ` over a shared basis of primitive
    // factors, so powers of one denominator are not multiplied out twice.
    let mut ordered: Vec<(&Atom, &Expr)> = values.iter().collect();
    ordered.sort_by_key(|(_, v)| {
        (
            v.den().len(),
            v.den().terms().first().map(|(m, _)| m.degree()),
        )
    });
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut split: BTreeMap<Atom, (Polynomial, Vec<u32>)> = BTreeMap::new();
    for (atom, v) in ordered {
        let mut rest = v.den().clone();
        let mut exps = vec![0; basis.len()];
        for (i, b) in basis.iter().enumerate() {
            while !rest.is_constant() {
                match rest.div_exact(b) {
                    Some(q) => {
                        rest = q;
                        exps[i] += 1;
                    }
                    None => break,
                }
            }
        }
        let (c, prim) = rest.primitive_part();
        if !prim.is_constant() {
            basis.push(prim);
            exps.push(1);
        }
        split.insert(atom.clone(), (v.num().scale(&c.recip()), exps));
    }

    let powers = |base: &Polynomial, n: u32| {
        let mut out = vec![Polynomial::one()];
        for i in 0..n as usize {
            out.push(&out[i] * base);
        }
        out
    };
    let num_pows: BTreeMap<&Atom, Vec<Polynomial>> = split
        .iter()
        .map(|(a, (num, _))| (a, powers(num, p.degree_in(a))))
        .collect();

    let term_exps = |m: &Monomial| {
        let mut out = vec![0u32; basis.len()];
        for (atom, (_, exps)) in &split {
            let e = m.exponent(atom);
            for (o, x) in out.iter_mut().zip(exps) {
                *o += e * x;
            }
        }
        out
    };
    let mut lcm = vec![0u32; basis.len()];
    for (m, _) in p.terms() {
        for (l, e) in lcm.iter_mut().zip(term_exps(m)) {
            *l = (*l).max(e);
        }
    }
    let basis_pows: Vec<Vec<Polynomial>> =
        basis.iter().zip(&lcm).map(|(b, &n)| powers(b, n)).collect();

    let mut acc: Vec<(Monomial, super::Rational)> = Vec::new();
    for (m, c) in p.terms() {
        let mut term = Polynomial::term(m.restrict(|a| !values.contains_key(a)), c.clone());
        for (atom, pows) in &num_pows {
            let e = m.exponent(atom);
            if e > 0 {
                term = &term * &pows[e as usize];
            }
        }
        for (i, e) in term_exps(m).into_iter().enumerate() {
            if lcm[i] > e {
                term = &term * &basis_pows[i][(lcm[i] - e) as usize];
            }
        }
        acc.extend(term.terms().iter().cloned());
    }
    let num = Polynomial::from_terms(acc);
    Ok(cancel_against(num, basis.into_iter().zip(lcm).collect()))
}

/// A primitive polynomial of degree one in some atom whose two coefficients
/// are coprime cannot factor.
fn provably_irreducible(f: &Polynomial) -> bool {
    f.atoms().iter().any(|x| {
        f.degree_in(x) == 1 && {
            let u = f.to_univariate(x);
            gcd(&u[0], &u[1]).is_constant()
        }
    })
}

/// `num / Π fᵢ^kᵢ` in lowest terms, cancelling one factor copy at a time.
fn cancel_against(mut num: Polynomial, factors: Vec<(Polynomial, u32)>) -> Expr {
    let mut den = Polynomial::one();
    for (f, k) in factors {
        let mut irreducible = None;
        for used in 0..k {
            if num.is_zero() {
                return Expr::zero();
            }
            if let Some(q) = num.div_exact(&f) {
                num = q;
                continue;
            }
            if *irreducible.get_or_insert_with(|| provably_irreducible(&f)) {
                den = &den * &f.pow(k - used);
                break;
            }
            let g = gcd(&num, &f);
            if g.is_constant() {
                den = &den * &f.pow(k - used);
                break;
            }
            num = num.div_exact(&g).expect("gcd divides");
            den = &den * &f.div_exact(&g).expect("gcd divides");
        }
    }
    Expr::coprime(num, den)
}
