//! Built-in Lagrangians: the pre-Schwarzian, `L2`, the Schwarzian and its
//! two higher-order families.

use std::fmt;
use std::str::FromStr;

use crate::error::HierarchyError;
use crate::expr::Expr;
use crate::jet::total_derivative;

/// Identifies a built-in Lagrangian family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HierarchyId {
    /// `q''/q'`.
    PreSchwarzian,
    /// `(1/2) (q''/q')^2`.
    L2,
    /// Schippers' recurrence, `n >= 3`; not SL(2,R) invariant beyond `n = 3`.
    Schippers(u32),
    /// The invariant hierarchy `σ_3 .. σ_6`.
    Krivonos(u32),
}

impl HierarchyId {
    /// Parses a family name as used on the command line, with an optional
    /// order.
    pub fn from_name(name: &str, order: Option<u32>) -> Result<Self, String> {
        let family = name.parse::<Family>()?;
        match (family, order) {
            (Family::PreSchwarzian, _) => Ok(HierarchyId::PreSchwarzian),
            (Family::L2, _) => Ok(HierarchyId::L2),
            (Family::Schippers, Some(n)) => Ok(HierarchyId::Schippers(n)),
            (Family::Krivonos, Some(n)) => Ok(HierarchyId::Krivonos(n)),
            (_, None) => Err(format!("builtin `{name}` needs an order")),
        }
    }
}

#[derive(Clone, Copy)]
enum Family {
    PreSchwarzian,
    L2,
    Schippers,
    Krivonos,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "presch" | "pre-schwarzian" => Ok(Family::PreSchwarzian),
            "L2" | "l2" => Ok(Family::L2),
            "schippers" => Ok(Family::Schippers),
            "sigma" | "krivonos" => Ok(Family::Krivonos),
            other => Err(format!("unknown builtin `{other}`")),
        }
    }
}

impl fmt::Display for HierarchyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyId::PreSchwarzian => write!(f, "presch()"),
            HierarchyId::L2 => write!(f, "L2()"),
            HierarchyId::Schippers(n) => write!(f, "schippers({n})"),
            HierarchyId::Krivonos(n) => write!(f, "sigma({n})"),
        }
    }
}

pub fn builtin(id: HierarchyId) -> Result<Expr, HierarchyError> {
    match id {
        HierarchyId::PreSchwarzian => Ok(pre_schwarzian()),
        HierarchyId::L2 => Ok(l2()),
        HierarchyId::Schippers(n) => schippers(n),
        HierarchyId::Krivonos(n) => krivonos(n),
    }
}

pub fn pre_schwarzian() -> Expr {
    &Expr::jet(2) / &Expr::jet(1)
}

pub fn l2() -> Expr {
    &Expr::ratio(1, 2) * &pre_schwarzian().pow(2).expect("nonnegative power")
}

/// `q'''/q' - (3/2)(q''/q')^2`.
pub fn schwarzian() -> Expr {
    let pre = pre_schwarzian();
    &(&Expr::jet(3) / &Expr::jet(1))
        - &(&Expr::ratio(3, 2) * &pre.pow(2).expect("nonnegative power"))
}

/// `S_3 = σ_3`, `S_{n+1} = D_t S_n - (n-1) (q''/q') S_n`.
pub fn schippers(n: u32) -> Result<Expr, HierarchyError> {
    if n < 3 {
        return Err(HierarchyError::UnsupportedOrder {
            family: "schippers",
            order: n,
        });
    }
    let pre = pre_schwarzian();
    let mut s = schwarzian();
    for k in 3..n {
        let weight = Expr::integer(i64::from(k) - 1);
        s = &total_derivative(&s, 1) - &(&(&weight * &pre) * &s);
    }
    Ok(s)
}

/// `σ_3` is the Schwarzian, `σ_4 = D_t σ_3`, `σ_5 = D_t σ_4 - σ_3^2` and
/// `σ_6 = D_t σ_5`. Higher orders are not defined here.
pub fn krivonos(n: u32) -> Result<Expr, HierarchyError> {
    if !(3..=6).contains(&n) {
        return Err(HierarchyError::UnsupportedOrder {
            family: "sigma",
            order: n,
        });
    }
    let s3 = schwarzian();
    if n == 3 {
        return Ok(s3);
    }
    let s4 = total_derivative(&s3, 1);
    if n == 4 {
        return Ok(s4);
    }
    let s5 = &total_derivative(&s4, 1) - &s3.pow(2).expect("nonnegative power");
    if n == 5 {
        return Ok(s5);
    }
    Ok(total_derivative(&s5, 1))
}
