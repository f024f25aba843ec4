//! Exact symbolic engine for the kappa-Minkowski coordinate algebra, its
//! dual momentum Hopf algebra, the five-dimensional bicovariant calculus,
//! the associated Dirac operators and the deformed U(1) gauge theory.

pub mod action;
pub mod config;
pub mod dirac;
pub mod error;
pub mod eval;
pub mod expr;
pub mod forms;
pub mod gauge;
pub mod hopf;
pub mod metric;
pub mod minkowski;
pub mod momentum;
pub mod oracle;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod tensor;

pub use error::{KminkError, Result};
pub use eval::{eval_str, Value};
pub use expr::{parse, Expr};
pub use minkowski::{PlaneWave, PositionElement};
pub use momentum::{constants, MomentumElement};
pub use scalar::{GaussianRational, ScalarValue};
