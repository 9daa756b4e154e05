//! Canonical exact rational functions over jet atoms.

mod atom;
mod calculus;
mod gcd;
mod poly;
mod tree;

use std::collections::BTreeSet;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use atom::{Atom, Monomial};
pub use gcd::gcd;
pub use poly::Polynomial;
pub use tree::{normalize, Tree};

use crate::error::ExprError;
use poly::numeric_content;

/// Exact rational coefficient. Always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A rational function `num / den` in canonical form.
///
/// `num` and `den` are coprime, all coefficients are integers with joint
/// content one, and the leading coefficient of `den` is positive. Zero is
/// `0 / 1`. Structural equality therefore coincides with equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Expr {
    num: Polynomial,
    den: Polynomial,
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl Expr {
    pub fn zero() -> Self {
        Expr {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Expr::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Expr::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n / d`; panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Expr::rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(r: Rational) -> Self {
        Expr::coprime(Polynomial::constant(r), Polynomial::one())
    }

    pub fn atom(atom: Atom) -> Self {
        Expr {
            num: Polynomial::atom(atom),
            den: Polynomial::one(),
        }
    }

    pub fn jet(order: u32) -> Self {
        Expr::atom(Atom::Jet(order))
    }

    pub fn time() -> Self {
        Expr::atom(Atom::Time)
    }

    pub fn param(name: &str) -> Self {
        Expr::atom(Atom::param(name))
    }

    /// `log(arg)`. `log(1)` folds to zero; other numeric arguments have no
    /// representation in the rational-function field.
    pub fn log(arg: Expr) -> Result<Self, ExprError> {
        if let Some(c) = arg.as_constant() {
            if c.is_one() {
                return Ok(Expr::zero());
            }
            return Err(ExprError::LogOfConstant(c.to_string()));
        }
        Ok(Expr::atom(Atom::Log(Arc::new(arg))))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Expr::coprime(p, Polynomial::one())
    }

    /// `num / den`, reduced to canonical form.
    pub fn fraction(num: Polynomial, den: Polynomial) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        let g = gcd(&num, &den);
        if g.is_constant() {
            return Ok(Expr::coprime(num, den));
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Expr::coprime(num, den))
    }

    /// Numeric normalization of an already coprime pair.
    fn coprime(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Expr::zero();
        }
        let mut k = numeric_content(num.terms().iter().chain(den.terms().iter()).map(|(_, c)| c));
        if den.leading_coeff().is_negative() {
            k = -k;
        }
        if k.is_one() {
            return Expr { num, den };
        }
        let inv = k.recip();
        Expr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// True when the denominator is a numeric constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Atoms at the top level of numerator and denominator.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.num.atoms();
        out.extend(self.den.atoms());
        out
    }

    /// Every non-log atom, including those inside log arguments.
    pub fn base_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for atom in self.atoms() {
            match &atom {
                Atom::Log(arg) => out.extend(arg.base_atoms()),
                _ => {
                    out.insert(atom);
                }
            }
        }
        out
    }

    /// Whether `atom` occurs anywhere, including inside log arguments.
    pub fn depends_on(&self, atom: &Atom) -> bool {
        self.atoms().iter().any(|a| match a {
            Atom::Log(arg) => a == atom || arg.depends_on(atom),
            _ => a == atom,
        })
    }

    /// Highest jet order occurring anywhere in the expression.
    pub fn max_jet(&self) -> Option<u32> {
        self.base_atoms()
            .iter()
            .filter_map(|a| match a {
                Atom::Jet(k) => Some(*k),
                _ => None,
            })
            .max()
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr::coprime(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expr::coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Expr) -> Result<Expr, ExprError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Expr, ExprError> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let e = u32::try_from(exp).expect("exponent too large");
        if e == 0 {
            return Ok(Expr::one());
        }
        Ok(Expr::coprime(self.num.pow(e), self.den.pow(e)))
    }

    fn add_impl(&self, rhs: &Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return Expr::fraction(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return Expr::coprime(num, &self.den * &rhs.den);
        }
        let ad = self.den.div_exact(&g).expect("gcd divides");
        let bd = rhs.den.div_exact(&g).expect("gcd divides");
        let mut num = &(&self.num * &bd) + &(&rhs.num * &ad);
        let mut den = &ad * &rhs.den;
        let g2 = gcd(&num, &g);
        if !g2.is_constant() {
            num = num.div_exact(&g2).expect("gcd divides");
            den = den.div_exact(&g2).expect("gcd divides");
        }
        Expr::coprime(num, den)
    }

    fn mul_impl(&self, rhs: &Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        let cancel = |p: &Polynomial, q: &Polynomial| -> (Polynomial, Polynomial) {
            let g = gcd(p, q);
            if g.is_constant() {
                (p.clone(), q.clone())
            } else {
                (
                    p.div_exact(&g).expect("gcd divides"),
                    q.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let (an, bd) = cancel(&self.num, &rhs.den);
        let (bn, ad) = cancel(&rhs.num, &self.den);
        Expr::coprime(&an * &bn, &ad * &bd)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::integer(n)
    }
}

impl From<Atom> for Expr {
    fn from(a: Atom) -> Self {
        Expr::atom(a)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        self.add_impl(rhs)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self.add_impl(&-rhs)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero, like integer division; see
/// [`Expr::checked_div`] for the fallible form.
impl Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

macro_rules! forward_expr_ops {
    ($tr:ident, $method:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}
forward_expr_ops!(Add, add);
forward_expr_ops!(Sub, sub);
forward_expr_ops!(Mul, mul);
forward_expr_ops!(Div, div);

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| acc + e)
    }
}
