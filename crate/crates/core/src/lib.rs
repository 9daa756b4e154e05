//! Exact variational calculus on the jet space of one dependent variable.
//!
//! Expressions are canonical rational functions in `t`, the jet coordinates
//! `q, q', q'', ...`, named parameters and independent log atoms. On top of
//! that representation the crate provides the total derivative, the
//! higher-order Euler-Lagrange operator, Jacobi integrals, gauge extraction
//! for null Lagrangians, the Schwarzian hierarchies, SL(2,R) invariance
//! checks and a small numeric integrator for the resulting equations of
//! motion.

pub mod cancel;
pub mod cli;
pub mod error;
pub mod expr;
pub mod hierarchy;
pub mod jet;
pub mod numeric;
pub mod parse;
pub mod render;
pub mod sl2;
pub mod variational;

pub use cancel::Cancellation;
pub use cli::run_cli;
pub use error::{ExprError, HierarchyError, NumericError, ParseError, Sl2Error, VariationalError};
pub use expr::{Atom, Expr, Rational, Tree};
pub use hierarchy::{builtin, krivonos, schippers, HierarchyId};
pub use jet::{jet_order, prolong, total_derivative, Characteristic};
pub use numeric::{
    derive_ode, eval, integrate_rk4, monitor, DriftReport, JetPoint, OdeSystem, Trajectory,
};
pub use parse::{parse, parse_expr};
pub use render::{render, RenderMode};
pub use sl2::{mobius_substitute, sl2_finite_check, sl2_residues, unimodular_d, InvarianceReport};
pub use variational::{
    euler_lagrange, extract_gauge, is_null, isolate_top, jacobi, GaugeResult, TopIsolation,
};
