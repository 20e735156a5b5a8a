//! Two-player zero-sum matrix game: f(x, y) = xᵀCy with both strategies
//! on probability simplices. For a 2×2 payoff with a mixed equilibrium
//! the reference saddle point comes from the closed-form solution; the
//! exact duality gap is available because the sup/inf of a bilinear form
//! over a simplex are attained at vertices.

use crate::error::Result;
use crate::problem::{Reference, SaddleProblem};
use crate::projection::proj_simplex;
use crate::space::{Matrix, PrimalDualPoint, Vector};

#[derive(Debug, Clone)]
pub struct MatrixGameProblem {
    c: Matrix,
    reference: Option<Reference>,
}

impl MatrixGameProblem {
    pub fn new(c: Matrix) -> Self {
        let reference = mixed_equilibrium_2x2(&c);
        Self { c, reference }
    }

    /// Payoff [[1, 2], [3, 1]]; equilibrium value 5/3.
    pub fn canonical_2x2() -> Self {
        Self::new(Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]).expect("finite"))
    }

    pub fn payoff(&self) -> &Matrix {
        &self.c
    }

    /// max_j (Cᵀx)_j − min_i (Cy)_i: the exact duality gap at (x, y),
    /// nonnegative everywhere and zero exactly at a saddle point.
    pub fn exact_gap(&self, x: &Vector, y: &Vector) -> Result<f64> {
        let ct_x = self.c.t_matvec(x)?;
        let cy = self.c.matvec(y)?;
        let sup = ct_x.iter().fold(f64::NEG_INFINITY, |a, b| a.max(*b));
        let inf = cy.iter().fold(f64::INFINITY, |a, b| a.min(*b));
        Ok(sup - inf)
    }
}

/// Closed-form mixed equilibrium of a 2×2 game, when it is interior.
fn mixed_equilibrium_2x2(c: &Matrix) -> Option<Reference> {
    if c.rows() != 2 || c.cols() != 2 {
        return None;
    }
    let (c11, c12, c21, c22) = (c.get(0, 0), c.get(0, 1), c.get(1, 0), c.get(1, 1));
    let d = c11 - c12 - c21 + c22;
    if d.abs() < 1e-12 {
        return None;
    }
    let p = (c22 - c21) / d;
    let q = (c22 - c12) / d;
    if !(0.0 < p && p < 1.0 && 0.0 < q && q < 1.0) {
        return None;
    }
    let x = Vector::new(vec![p, 1.0 - p]).ok()?;
    let y = Vector::new(vec![q, 1.0 - q]).ok()?;
    let cy0 = c11 * q + c12 * (1.0 - q);
    let cy1 = c21 * q + c22 * (1.0 - q);
    let value = p * cy0 + (1.0 - p) * cy1;
    Some(Reference {
        value,
        point: Some(PrimalDualPoint::new(x, y)),
    })
}

impl SaddleProblem for MatrixGameProblem {
    fn dims(&self) -> (usize, usize) {
        (self.c.rows(), self.c.cols())
    }

    fn value(&self, x: &Vector, y: &Vector) -> f64 {
        let cy = self.c.matvec(y).expect("dims");
        x.dot(&cy).expect("dims")
    }

    fn subgrad_x(&self, _x: &Vector, y: &Vector) -> Result<Vector> {
        self.c.matvec(y)
    }

    fn subgrad_neg_y(&self, x: &Vector, _y: &Vector) -> Result<Vector> {
        self.c.t_matvec(x)?.scale(-1.0)
    }

    fn project_x(&self, z: &Vector) -> Vector {
        proj_simplex(z)
    }

    fn project_y(&self, z: &Vector) -> Vector {
        proj_simplex(z)
    }

    fn reference(&self) -> Option<Reference> {
        self.reference.clone()
    }
}
