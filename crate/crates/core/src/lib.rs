//! Alternating projected subgradient solver for convex-concave
//! saddle-point problems
//!
//!   minimize over x ∈ X, maximize over y ∈ Y:  f(x, y)
//!
//! driven by one subgradient step per block and projection back onto the
//! feasible sets:
//!
//!   x^{k+1} = P_X(x^k − t_k g_k),  y^{k+1} = P_Y(y^k − t_k h_k)
//!
//! with g_k ∈ ∂ₓf(x^k, y^k) and h_k ∈ ∂ᵧ(−f)(x^k, y^k). Step sizes are
//! pluggable; with a nonsummable, square-summable sequence both the
//! step-weighted running value and the value at the step-weighted average
//! point converge to the saddle value, and the solver tracks both.
//!
//! The crate ships problem oracles ([`problem::SaddleProblem`]), a
//! gallery of concrete problems ([`gallery`]), closed-form and Dykstra
//! projectors ([`projection`]), step schedules ([`schedule`]), the solver
//! itself ([`solver`]), and runtime certificates that re-check the
//! analysis inequalities along a finished run ([`diagnostics`]).

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod gallery;
pub mod matrixio;
pub mod problem;
pub mod projection;
pub mod runner;
mod sampling;
pub mod schedule;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use problem::{Reference, SaddleProblem};
pub use schedule::{ScheduleKind, StepSchedule, SummabilityClass};
pub use solver::{solve, RunResult, SolverConfig};
pub use space::{inner, norm, Matrix, PrimalDualPoint, Vector};
