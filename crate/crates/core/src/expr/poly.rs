use std::collections::BTreeSet;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Atom, Monomial, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in decreasing monomial order with no zero
/// coefficients, so the leading term is always `terms[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn atom(atom: Atom) -> Self {
        Polynomial {
            terms: vec![(Monomial::atom(atom, 1), Rational::one())],
        }
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects arbitrary terms, combining like monomials.
    pub fn from_terms(mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Atoms occurring at the top level (not inside log arguments).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            for (a, _) in m.factors() {
                out.insert(a.clone());
            }
        }
        out
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(atom) > 0)
    }

    pub fn degree_in(&self, atom: &Atom) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(atom))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        if mono.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, mono: &Monomial) -> Polynomial {
        if mono.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let q = m.div(mono).expect("monomial does not divide polynomial");
                    (q, c.clone())
                })
                .collect(),
        }
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.iter();
        let Some((first, _)) = iter.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in iter {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative, treating every atom (log atoms included)
    /// as an independent variable.
    pub fn formal_partial(&self, atom: &Atom) -> Polynomial {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(atom);
            if e == 0 {
                continue;
            }
            let rest = if e > 1 {
                rest.mul(&Monomial::atom(atom.clone(), e - 1))
            } else {
                rest
            };
            out.push((rest, c * Rational::from_integer(BigInt::from(e))));
        }
        Polynomial::from_terms(out)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `atom`,
    /// indexed by degree.
    pub fn to_univariate(&self, atom: &Atom) -> Vec<Polynomial> {
        let deg = self.degree_in(atom) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(atom);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    pub fn from_univariate(atom: &Atom, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let x = Monomial::atom(atom.clone(), e as u32);
            for (m, k) in c.terms() {
                terms.push((m.mul(&x), k.clone()));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Groups terms by their exponents on atoms outside `keep`; each group's
    /// coefficient involves only atoms in `keep`.
    pub fn coefficients_over(&self, keep: &BTreeSet<Atom>) -> Vec<Polynomial> {
        let mut groups: std::collections::BTreeMap<Monomial, Vec<(Monomial, Rational)>> =
            std::collections::BTreeMap::new();
        for (m, c) in &self.terms {
            let outer = m.restrict(|a| !keep.contains(a));
            let inner = m.restrict(|a| keep.contains(a));
            groups.entry(outer).or_default().push((inner, c.clone()));
        }
        groups.into_values().map(Polynomial::from_terms).collect()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading().expect("division by the zero polynomial");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if divisor.is_monomial() {
            let inv = lc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(lm)?, c * &inv));
            }
            return Some(Polynomial { terms });
        }
        // leading and trailing terms of a product are products of those
        // of its factors under a monomial order
        let Some((sm, _)) = self.leading() else {
            return Some(Polynomial::zero());
        };
        let (dm, _) = divisor.terms.last().expect("nonzero divisor");
        sm.div(lm)?;
        self.terms.last().expect("nonzero dividend").0.div(dm)?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        let tail = Polynomial {
            terms: divisor.terms[1..].to_vec(),
        };
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(lm)?;
            let qc = &rc / lc;
            // rem - q*divisor; the leading terms cancel exactly
            let mut next = Polynomial {
                terms: rem.terms[1..].to_vec(),
            };
            next = &next - &tail.mul_term(&qm, &qc);
            quotient.push((qm, qc));
            rem = next;
        }
        Some(Polynomial::from_terms(quotient))
    }

    /// Factor `self = k * p` with `p` having coprime integer coefficients and a
    /// positive leading coefficient. Returns `(k, p)`; zero maps to `(0, 0)`.
    pub fn primitive_part(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero());
        }
        let k = numeric_content(self.terms.iter().map(|(_, c)| c));
        let k = if self.leading_coeff().is_negative() {
            -k
        } else {
            k
        };
        let inv = k.recip();
        (k, self.scale(&inv))
    }
}

/// Positive rational `k` such that every `c / k` is an integer and the
/// resulting integers are jointly coprime.
pub(crate) fn numeric_content<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in coeffs {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(num_gcd, den_lcm)
}

fn merge_add(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> Polynomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        let c = if negate_b { -c } else { c.clone() };
        out.push((m.clone(), c));
    }
    Polynomial { terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge_add(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge_add(&self.terms, &rhs.terms, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
