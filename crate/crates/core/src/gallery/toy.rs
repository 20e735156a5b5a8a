//! Scalar Lagrangian of: minimize x² + 1 subject to (x−2)(x−4) ≤ 0.
//!
//! f(x, y) = x²(1+y) − 6xy + 8y + 1 on X = R, Y = R₊. The saddle point
//! is (2, 2) with value 5, and both partial subgradients vanish there.

use crate::error::Result;
use crate::problem::{Reference, SaddleProblem};
use crate::projection::proj_nonneg;
use crate::space::{PrimalDualPoint, Vector};

#[derive(Debug, Clone, Copy, Default)]
pub struct ToyProblem;

impl SaddleProblem for ToyProblem {
    fn dims(&self) -> (usize, usize) {
        (1, 1)
    }

    fn value(&self, x: &Vector, y: &Vector) -> f64 {
        let (x, y) = (x[0], y[0]);
        x * x * (1.0 + y) - 6.0 * x * y + 8.0 * y + 1.0
    }

    fn subgrad_x(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let (x, y) = (x[0], y[0]);
        Vector::new(vec![2.0 * x * (1.0 + y) - 6.0 * y])
    }

    fn subgrad_neg_y(&self, x: &Vector, _y: &Vector) -> Result<Vector> {
        let x = x[0];
        Vector::new(vec![-(x * x - 6.0 * x + 8.0)])
    }

    fn project_x(&self, z: &Vector) -> Vector {
        z.clone()
    }

    fn project_y(&self, z: &Vector) -> Vector {
        proj_nonneg(z)
    }

    fn reference(&self) -> Option<Reference> {
        Some(Reference {
            value: 5.0,
            point: Some(PrimalDualPoint::new(
                Vector::new(vec![2.0]).expect("finite"),
                Vector::new(vec![2.0]).expect("finite"),
            )),
        })
    }
}
