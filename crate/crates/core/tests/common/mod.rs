//! Random expression generators shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use varjet::{Atom, Expr, Rational};

/// Which atoms a generated expression may contain.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_jet: u32,
    pub time: bool,
    pub params: bool,
}

impl Shape {
    pub const fn autonomous(max_jet: u32) -> Self {
        Shape {
            max_jet,
            time: false,
            params: true,
        }
    }

    pub const fn with_time(max_jet: u32) -> Self {
        Shape {
            max_jet,
            time: true,
            params: true,
        }
    }
}

/// `n/d` with `|n| <= 100`, `1 <= d <= 100`.
pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn nonzero_coefficient() -> impl Strategy<Value = Rational> {
    coefficient().prop_map(|c| {
        if c == Rational::from_integer(0.into()) {
            Rational::from_integer(1.into())
        } else {
            c
        }
    })
}

pub fn atom(shape: Shape) -> BoxedStrategy<Atom> {
    let mut choices: Vec<BoxedStrategy<Atom>> =
        vec![(0..=shape.max_jet).prop_map(Atom::Jet).boxed()];
    if shape.time {
        choices.push(Just(Atom::Time).boxed());
    }
    if shape.params {
        choices.push(prop_oneof![Just(Atom::param("k")), Just(Atom::param("m"))].boxed());
    }
    proptest::strategy::Union::new(choices).boxed()
}

fn monomial(atoms: BoxedStrategy<Atom>) -> impl Strategy<Value = Expr> {
    proptest::collection::vec((atoms, 1i64..=2), 0..=3).prop_map(|factors| {
        factors.into_iter().fold(Expr::one(), |acc, (a, e)| {
            &acc * &Expr::atom(a).pow(e).unwrap()
        })
    })
}

fn sum_of_terms(
    atoms: BoxedStrategy<Atom>,
    terms: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Expr> {
    proptest::collection::vec((coefficient(), monomial(atoms)), terms).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, m)| &Expr::rational(c) * &m)
            .sum()
    })
}

/// Random polynomial in the atoms of `shape`.
pub fn polynomial(shape: Shape) -> impl Strategy<Value = Expr> {
    sum_of_terms(atom(shape), 1..=4)
}

/// Random rational function in the atoms of `shape`.
pub fn rational(shape: Shape) -> impl Strategy<Value = Expr> {
    (
        sum_of_terms(atom(shape), 1..=4),
        sum_of_terms(atom(shape), 1..=2),
    )
        .prop_map(|(num, den)| if den.is_zero() { num } else { &num / &den })
}

/// Random rational function that may also carry a log of a linear form.
pub fn with_log(shape: Shape) -> impl Strategy<Value = Expr> {
    (
        rational(shape),
        nonzero_coefficient(),
        nonzero_coefficient(),
        0..=shape.max_jet,
        any::<bool>(),
    )
        .prop_map(|(e, c, alpha, k, keep)| {
            if !keep {
                return e;
            }
            let arg = &(&Expr::rational(alpha) * &Expr::jet(k)) + &Expr::param("k");
            &e + &(&Expr::rational(c) * &Expr::log(arg).unwrap())
        })
}

/// A gauge the peeling integrator can recover: a polynomial in `t`, `q`,
/// `q'` and parameters, plus terms carrying `q''` or `q'''` over a power of
/// `q'`, plus an optional `c log(alpha q + beta)`.
pub fn peelable_gauge(time: bool) -> impl Strategy<Value = Expr> {
    let low = Shape {
        max_jet: 1,
        time,
        params: true,
    };
    let high = prop_oneof![Just(Atom::Jet(2)), Just(Atom::Jet(3))].boxed();
    let carrying = proptest::collection::vec(
        (coefficient(), high, 1i64..=2, monomial(atom(low)), 0i64..=2),
        0..=2,
    )
    .prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, top, e, rest, q1_power)| {
                &(&(&Expr::rational(c) * &Expr::atom(top).pow(e).unwrap()) * &rest)
                    * &Expr::jet(1).pow(-q1_power).unwrap()
            })
            .sum::<Expr>()
    });
    let log_term = (
        any::<bool>(),
        nonzero_coefficient(),
        nonzero_coefficient(),
        nonzero_coefficient(),
    )
        .prop_map(|(keep, c, alpha, beta)| {
            if keep {
                let arg = &(&Expr::rational(alpha) * &Expr::jet(0)) + &Expr::rational(beta);
                &Expr::rational(c) * &Expr::log(arg).unwrap()
            } else {
                Expr::zero()
            }
        });
    (sum_of_terms(atom(low), 1..=3), carrying, log_term).prop_map(|(a, b, c)| &(&a + &b) + &c)
}

/// Deterministic runner for the acceptance harness.
pub fn seeded_runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(
        config,
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

/// Draws `n` values from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, n: usize, seed: u8) -> Vec<S::Value> {
    let mut runner = seeded_runner(n as u32, seed);
    (0..n)
        .map(|_| {
            strategy
                .new_tree(&mut runner)
                .expect("strategy draws")
                .current()
        })
        .collect()
}
