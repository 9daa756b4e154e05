//! Floating-point evaluation, explicit equations of motion, fixed-step RK4
//! and conserved-quantity drift monitoring.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::NumericError;
use crate::expr::{Atom, Expr, Polynomial, Rational};
use crate::variational::{euler_lagrange, isolate_top};

/// Threshold below which the top-derivative coefficient counts as singular.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

/// Numeric values for time, jet and parameter atoms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JetPoint {
    values: BTreeMap<Atom, f64>,
}

impl JetPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, atom: Atom, value: f64) -> Self {
        self.values.insert(atom, value);
        self
    }

    pub fn set(&mut self, atom: Atom, value: f64) {
        self.values.insert(atom, value);
    }

    pub fn get(&self, atom: &Atom) -> Option<f64> {
        self.values.get(atom).copied()
    }

    /// Point with `q^(k) = values[k]`.
    pub fn from_jets(values: &[f64]) -> Self {
        let mut p = JetPoint::new();
        for (k, v) in values.iter().enumerate() {
            p.set(Atom::Jet(k as u32), *v);
        }
        p
    }
}

#[derive(Debug)]
enum Failure {
    Missing(Atom),
    Singular,
}

enum Slot {
    Base(Atom),
    Log(Box<Compiled>),
}

struct Term {
    coeff: f64,
    powers: Vec<(usize, i32)>,
}

/// An expression flattened for repeated double-precision evaluation.
pub struct Compiled {
    slots: Vec<Slot>,
    num: Vec<Term>,
    den: Vec<Term>,
}

fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

impl Compiled {
    pub fn new(e: &Expr) -> Self {
        let atoms: Vec<Atom> = e.atoms().into_iter().collect();
        let index: BTreeMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let compile_poly = |p: &Polynomial| -> Vec<Term> {
            p.terms()
                .iter()
                .map(|(m, c)| Term {
                    coeff: to_f64(c),
                    powers: m
                        .factors()
                        .iter()
                        .map(|(a, e)| (index[a], *e as i32))
                        .collect(),
                })
                .collect()
        };
        let num = compile_poly(e.num());
        let den = compile_poly(e.den());
        let slots = atoms
            .iter()
            .map(|a| match a {
                Atom::Log(arg) => Slot::Log(Box::new(Compiled::new(arg))),
                other => Slot::Base(other.clone()),
            })
            .collect();
        Compiled { slots, num, den }
    }

    fn eval_with(&self, lookup: &dyn Fn(&Atom) -> Option<f64>) -> Result<f64, Failure> {
        let mut vals = Vec::with_capacity(self.slots.len());
        for slot in &self.slots {
            let v = match slot {
                Slot::Base(a) => lookup(a).ok_or_else(|| Failure::Missing(a.clone()))?,
                Slot::Log(arg) => {
                    let x = arg.eval_with(lookup)?;
                    if x <= 0.0 {
                        return Err(Failure::Singular);
                    }
                    x.ln()
                }
            };
            vals.push(v);
        }
        let poly = |terms: &[Term]| -> f64 {
            terms
                .iter()
                .map(|t| {
                    t.powers
                        .iter()
                        .fold(t.coeff, |acc, &(i, e)| acc * vals[i].powi(e))
                })
                .sum()
        };
        let den = poly(&self.den);
        if den == 0.0 {
            return Err(Failure::Singular);
        }
        let value = poly(&self.num) / den;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Failure::Singular)
        }
    }
}

fn singular(t: f64, partial: Vec<(f64, Vec<f64>)>) -> NumericError {
    NumericError::NumericSingularity { t, partial }
}

/// IEEE double evaluation of `e` at `p`.
pub fn eval(e: &Expr, p: &JetPoint) -> Result<f64, NumericError> {
    Compiled::new(e)
        .eval_with(&|a| p.get(a))
        .map_err(|f| match f {
            Failure::Missing(a) => NumericError::MissingAtom(a),
            Failure::Singular => singular(p.get(&Atom::Time).unwrap_or(f64::NAN), Vec::new()),
        })
}

/// `q^(order) = rhs(t, q, ..., q^(order-1))`, singular where
/// `singular_set` vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeSystem {
    pub order: u32,
    pub rhs: Expr,
    pub singular_set: Expr,
}

/// Solves the Euler-Lagrange equation of `l` for its top derivative.
pub fn derive_ode(l: &Expr) -> Result<OdeSystem, NumericError> {
    let e = euler_lagrange(l);
    if e.is_zero() {
        return Err(NumericError::NullOde);
    }
    let top = isolate_top(&e)?;
    let rhs = -(&top.remainder / &top.coefficient);
    Ok(OdeSystem {
        order: top.order,
        rhs,
        singular_set: top.coefficient,
    })
}

/// Samples `(t, [q, q', ..., q^(m-1)])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<(f64, Vec<f64>)>,
}

impl Trajectory {
    pub fn last(&self) -> &(f64, Vec<f64>) {
        self.samples.last().expect("trajectories are never empty")
    }
}

/// Classical fixed-step fourth-order Runge-Kutta on the companion
/// first-order system. The final step is shortened to land on `t1`.
pub fn integrate_rk4(
    sys: &OdeSystem,
    init: &[f64],
    t0: f64,
    t1: f64,
    h: f64,
) -> Result<Trajectory, NumericError> {
    let m = sys.order as usize;
    if init.len() != m {
        return Err(NumericError::InvalidSetup(format!(
            "expected {m} initial values (q .. q^({})), got {}",
            m - 1,
            init.len()
        )));
    }
    let valid = h > 0.0 && t1 > t0 && h.is_finite() && t0.is_finite() && t1.is_finite();
    if !valid {
        return Err(NumericError::InvalidSetup("need h > 0 and t1 > t0".into()));
    }
    let rhs = Compiled::new(&sys.rhs);
    let guard = Compiled::new(&sys.singular_set);

    let field = |t: f64, y: &[f64]| -> Result<Vec<f64>, Failure> {
        let lookup = |a: &Atom| match a {
            Atom::Time => Some(t),
            Atom::Jet(k) => y.get(*k as usize).copied(),
            _ => None,
        };
        let c = guard.eval_with(&lookup)?;
        if c.abs() < SINGULAR_THRESHOLD {
            return Err(Failure::Singular);
        }
        let top = rhs.eval_with(&lookup)?;
        let mut dy = Vec::with_capacity(y.len());
        dy.extend_from_slice(&y[1..]);
        dy.push(top);
        Ok(dy)
    };
    let fail = |f: Failure, t: f64, samples: &Vec<(f64, Vec<f64>)>| match f {
        Failure::Missing(a) => NumericError::MissingAtom(a),
        Failure::Singular => singular(t, samples.clone()),
    };

    let span = t1 - t0;
    let steps = ((span / h) - 1e-9).ceil().max(1.0) as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut y = init.to_vec();
    let mut t = t0;
    if let Err(f) = field(t, &y) {
        return Err(fail(f, t, &samples));
    }
    samples.push((t, y.clone()));

    let axpy = |y: &[f64], k: &[f64], s: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + s * b).collect()
    };
    for i in 1..=steps {
        let t_next = if i == steps { t1 } else { t0 + i as f64 * h };
        let dt = t_next - t;
        let stage = || -> Result<Vec<f64>, Failure> {
            let k1 = field(t, &y)?;
            let k2 = field(t + dt / 2.0, &axpy(&y, &k1, dt / 2.0))?;
            let k3 = field(t + dt / 2.0, &axpy(&y, &k2, dt / 2.0))?;
            let k4 = field(t + dt, &axpy(&y, &k3, dt))?;
            Ok((0..m)
                .map(|j| y[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
                .collect())
        };
        match stage() {
            Ok(next) => {
                y = next;
                t = t_next;
                samples.push((t, y.clone()));
            }
            Err(f) => return Err(fail(f, t, &samples)),
        }
    }
    Ok(Trajectory { samples })
}

/// Values of a monitored quantity along a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct DriftReport {
    pub samples: Vec<(f64, f64)>,
    pub max_abs_drift: f64,
    /// Relative to the initial value; equals the absolute drift when the
    /// initial value is zero.
    pub max_rel_drift: f64,
}

pub fn monitor(traj: &Trajectory, e: &Expr) -> Result<DriftReport, NumericError> {
    let compiled = Compiled::new(e);
    let mut samples = Vec::with_capacity(traj.samples.len());
    for (t, state) in &traj.samples {
        let lookup = |a: &Atom| match a {
            Atom::Time => Some(*t),
            Atom::Jet(k) => state.get(*k as usize).copied(),
            _ => None,
        };
        let v = compiled.eval_with(&lookup).map_err(|f| match f {
            Failure::Missing(a) => NumericError::MissingAtom(a),
            Failure::Singular => singular(*t, Vec::new()),
        })?;
        samples.push((*t, v));
    }
    let v0 = samples.first().map(|s| s.1).unwrap_or(0.0);
    let max_abs_drift = samples
        .iter()
        .map(|(_, v)| (v - v0).abs())
        .fold(0.0, f64::max);
    let max_rel_drift = if v0 != 0.0 {
        max_abs_drift / v0.abs()
    } else {
        max_abs_drift
    };
    Ok(DriftReport {
        samples,
        max_abs_drift,
        max_rel_drift,
    })
}
