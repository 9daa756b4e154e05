use std::cmp::Ordering;
use std::sync::Arc;

use super::Expr;

/// A symbol that can occur in an expression.
///
/// Atoms are totally ordered: `Time < Jet(0) < Jet(1) < ... < Param` (by
/// name) `< Log` (by the canonical form of the argument). The order drives
/// both the monomial order and the printed form of every expression.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Atom {
    /// The independent variable `t`.
    Time,
    /// The jet coordinate `q^(k)`.
    Jet(u32),
    /// A named constant parameter.
    Param(Arc<str>),
    /// `log(arg)`, treated as algebraically independent of every other atom.
    Log(Arc<Expr>),
}

impl Atom {
    pub fn param(name: &str) -> Self {
        Atom::Param(Arc::from(name))
    }

    pub fn is_log(&self) -> bool {
        matches!(self, Atom::Log(_))
    }

    fn rank(&self) -> u8 {
        match self {
            Atom::Time => 0,
            Atom::Jet(_) => 1,
            Atom::Param(_) => 2,
            Atom::Log(_) => 3,
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Atom::Time, Atom::Time) => Ordering::Equal,
            (Atom::Jet(a), Atom::Jet(b)) => a.cmp(b),
            (Atom::Param(a), Atom::Param(b)) => a.cmp(b),
            (Atom::Log(a), Atom::Log(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A power product of atoms with positive exponents, kept sorted by atom.
///
/// Monomials are ordered degree-lexicographically; ties in total degree are
/// broken by the exponent of the greatest atom first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Atom, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(atom: Atom, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(atom, exp)],
            degree: exp,
        }
    }

    /// Builds a monomial from arbitrary `(atom, exp)` pairs, merging repeats.
    pub fn from_factors(mut factors: Vec<(Atom, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Atom, u32)> = Vec::with_capacity(factors.len());
        for (atom, exp) in factors {
            match merged.last_mut() {
                Some((last, e)) if *last == atom => *e += exp,
                _ => merged.push((atom, exp)),
            }
        }
        merged.retain(|(_, e)| *e > 0);
        let degree = merged.iter().map(|(_, e)| e).sum();
        Monomial {
            factors: merged,
            degree,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.factors
    }

    pub fn exponent(&self, atom: &Atom) -> u32 {
        self.factors
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.is_one() {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (a, ea) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 == *a {
                let eb = other.factors[j].1;
                if eb > *ea {
                    return None;
                }
                if eb < *ea {
                    out.push((a.clone(), ea - eb));
                }
                j += 1;
            } else {
                if j < other.factors.len() && other.factors[j].0 < *a {
                    return None;
                }
                out.push((a.clone(), *ea));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial {
            factors: out,
            degree: self.degree - other.degree,
        })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a.clone(), *ea.min(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let degree = out.iter().map(|(_, e)| e).sum();
        Monomial {
            factors: out,
            degree,
        }
    }

    /// Removes `atom` entirely, returning its exponent and the rest.
    pub fn split_off(&self, atom: &Atom) -> (u32, Monomial) {
        match self.factors.binary_search_by(|(a, _)| a.cmp(atom)) {
            Ok(i) => {
                let mut rest = self.factors.clone();
                let (_, e) = rest.remove(i);
                (
                    e,
                    Monomial {
                        factors: rest,
                        degree: self.degree - e,
                    },
                )
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Keeps only the atoms accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(&Atom) -> bool) -> Monomial {
        let factors: Vec<_> = self
            .factors
            .iter()
            .filter(|(a, _)| keep(a))
            .cloned()
            .collect();
        let degree = factors.iter().map(|(_, e)| e).sum();
        Monomial { factors, degree }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let mut lhs = self.factors.iter().rev();
            let mut rhs = other.factors.iter().rev();
            loop {
                match (lhs.next(), rhs.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((a, ea)), Some((b, eb))) => match a.cmp(b).then(ea.cmp(eb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
