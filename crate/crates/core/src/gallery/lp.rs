//! Lagrangian of the inequality-form LP: minimize cᵀx subject to Ax ≤ b.
//!
//! f(x, y) = yᵀAx + cᵀx − bᵀy on X = Rⁿ, Y = R^m₊.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::{Reference, SaddleProblem};
use crate::projection::proj_nonneg;
use crate::sampling::standard_normal;
use crate::space::{Matrix, PrimalDualPoint, Vector};

#[derive(Debug, Clone)]
pub struct LpProblem {
    a: Matrix,
    b: Vector,
    c: Vector,
    reference: Option<Reference>,
}

impl LpProblem {
    pub fn new(a: Matrix, b: Vector, c: Vector) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: b.len(),
            });
        }
        if c.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: c.len(),
            });
        }
        Ok(Self {
            a,
            b,
            c,
            reference: None,
        })
    }

    /// Random instance with standard normal entries. b = A·x_feas + s with
    /// s > 0, so the primal is strictly feasible by construction.
    pub fn random(m: usize, n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a_data: Vec<f64> = (0..m * n).map(|_| standard_normal(&mut rng)).collect();
        let a = Matrix::new(m, n, a_data).expect("finite");
        let x_feas: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let x_feas = Vector::new(x_feas).expect("finite");
        let ax = a.matvec(&x_feas).expect("dims");
        let b =
            Vector::new(ax.iter().map(|v| v + rng.gen_range(0.1..1.1)).collect()).expect("finite");
        let c: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let c = Vector::new(c).expect("finite");
        Self {
            a,
            b,
            c,
            reference: None,
        }
    }

    pub fn with_reference(mut self, value: f64, point: Option<PrimalDualPoint>) -> Self {
        self.reference = Some(Reference { value, point });
        self
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }
    pub fn b(&self) -> &Vector {
        &self.b
    }
    pub fn c(&self) -> &Vector {
        &self.c
    }
}

impl SaddleProblem for LpProblem {
    fn dims(&self) -> (usize, usize) {
        (self.a.cols(), self.a.rows())
    }

    fn value(&self, x: &Vector, y: &Vector) -> f64 {
        let ax = self.a.matvec(x).expect("dims");
        y.dot(&ax).expect("dims") + self.c.dot(x).expect("dims") - self.b.dot(y).expect("dims")
    }

    fn subgrad_x(&self, _x: &Vector, y: &Vector) -> Result<Vector> {
        self.a.t_matvec(y)?.add_scaled(1.0, &self.c)
    }

    fn subgrad_neg_y(&self, x: &Vector, _y: &Vector) -> Result<Vector> {
        self.b.add_scaled(-1.0, &self.a.matvec(x)?)
    }

    fn project_x(&self, z: &Vector) -> Vector {
        z.clone()
    }

    fn project_y(&self, z: &Vector) -> Vector {
        proj_nonneg(z)
    }

    fn reference(&self) -> Option<Reference> {
        self.reference.clone()
    }
}
