//! Multivariate polynomial GCD over the rationals.
//!
//! Recursive content/primitive-part scheme: monomial content is split off
//! first, atoms private to one operand are eliminated by taking contents
//! over the shared atoms, and the remaining problem is solved by a primitive
//! pseudo-remainder sequence in a main atom chosen to minimise degree.

use std::collections::BTreeSet;

use num_traits::One;

use super::poly::numeric_content;
use super::{Atom, Polynomial};

/// Greatest common divisor normalized to coprime integer coefficients and a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_raw(a, b).primitive_part().1
}

fn gcd_raw(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    gcd_monomial_free(&a, &b).mul_monomial(&mg)
}

fn gcd_monomial_free(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let (_, pa) = a.primitive_part();
    let (_, pb) = b.primitive_part();
    if pa == pb {
        return pa;
    }
    let (small, large) = if pa.len() <= pb.len() {
        (&pa, &pb)
    } else {
        (&pb, &pa)
    };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    let va = pa.atoms();
    let vb = pb.atoms();
    if va != vb {
        let common: BTreeSet<Atom> = va.intersection(&vb).cloned().collect();
        if common.is_empty() {
            return Polynomial::one();
        }
        // A common divisor cannot involve atoms private to either operand,
        // so it must divide every coefficient over the shared atoms.
        let mut parts = Vec::new();
        for (p, vars) in [(&pa, &va), (&pb, &vb)] {
            if vars.len() > common.len() {
                parts.extend(p.coefficients_over(&common));
            } else {
                parts.push(p.clone());
            }
        }
        return gcd_many(parts);
    }

    let x = va
        .iter()
        .min_by_key(|x| {
            let da = pa.degree_in(x);
            let db = pb.degree_in(x);
            (da.min(db), da + db)
        })
        .cloned()
        .expect("non-constant polynomial has atoms");
    let (ca, ua) = split_content(pa.to_univariate(&x));
    let (cb, ub) = split_content(pb.to_univariate(&x));
    let content = gcd_raw(&ca, &cb);
    let g = primitive_prs(ua, ub);
    &content * &Polynomial::from_univariate(&x, &g)
}

fn gcd_many(mut parts: Vec<Polynomial>) -> Polynomial {
    parts.sort_by_key(|p| p.len());
    let mut iter = parts.into_iter();
    let Some(mut g) = iter.next() else {
        return Polynomial::zero();
    };
    for p in iter {
        if g.is_constant() {
            return Polynomial::one();
        }
        g = gcd_raw(&g, &p);
    }
    g.primitive_part().1
}

/// Splits a univariate polynomial (coefficient vector) into its content
/// over the remaining atoms and its primitive part, also clearing the
/// numeric content of the primitive part.
fn split_content(u: Vec<Polynomial>) -> (Polynomial, Vec<Polynomial>) {
    let nonzero: Vec<Polynomial> = u.iter().filter(|c| !c.is_zero()).cloned().collect();
    let content = gcd_many(nonzero);
    let mut pp: Vec<Polynomial> = if content.is_constant() {
        u
    } else {
        u.iter()
            .map(|c| {
                c.div_exact(&content)
                    .expect("content divides every coefficient")
            })
            .collect()
    };
    let k = numeric_content(pp.iter().flat_map(|c| c.terms().iter().map(|(_, k)| k)));
    if !k.is_one() {
        let inv = k.recip();
        for c in pp.iter_mut() {
            *c = c.scale(&inv);
        }
    }
    (content, pp)
}

fn trim(u: &mut Vec<Polynomial>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn pseudo_remainder(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lc = &g[dg];
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = lc * &*c;
        }
        for (j, gj) in g.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * gj);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn primitive_prs(a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim(&mut f);
    trim(&mut g);
    loop {
        if g.len() == 1 {
            return vec![Polynomial::one()];
        }
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            return g;
        }
        if r.len() == 1 {
            return vec![Polynomial::one()];
        }
        let (_, rp) = split_content(r);
        f = g;
        g = rp;
    }
}
