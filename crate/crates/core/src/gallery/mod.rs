//! The concrete saddle problems shipped with the solver: a scalar
//! Lagrangian with a known saddle at (2, 2), the Lagrangian of an
//! inequality-form LP, the Lagrangian of least squares with ℓ₁
//! regularization, a two-player matrix game on probability simplices,
//! and a robust Markowitz portfolio problem.

mod lp;
mod lsl1;
mod markowitz;
mod matrix_game;
mod toy;

pub use lp::LpProblem;
pub use lsl1::LsL1Problem;
pub use markowitz::MarkowitzProblem;
pub use matrix_game::MatrixGameProblem;
pub use toy::ToyProblem;

pub(crate) fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}
