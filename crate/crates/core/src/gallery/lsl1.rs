//! Lagrangian of least squares with ℓ₁ regularization:
//! minimize ½‖u‖² + γ‖x‖₁ subject to u = Ax − b.
//!
//! f((x,u), y) = ½‖u‖² + γ‖x‖₁ + yᵀ(Ax − b − u). The primal block is the
//! concatenation (x, u) ∈ R^{n+m}; both projections are the identity,
//! matching the projection-free update this Lagrangian is solved with.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gallery::sign;
use crate::problem::{Reference, SaddleProblem};
use crate::sampling::standard_normal;
use crate::space::{Matrix, PrimalDualPoint, Vector};

#[derive(Debug, Clone)]
pub struct LsL1Problem {
    a: Matrix,
    b: Vector,
    gamma: f64,
    reference: Option<Reference>,
}

impl LsL1Problem {
    pub fn new(a: Matrix, b: Vector, gamma: f64) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: b.len(),
            });
        }
        if gamma.is_nan() || gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidParameter(
                "gamma must be finite and > 0".into(),
            ));
        }
        Ok(Self {
            a,
            b,
            gamma,
            reference: None,
        })
    }

    /// Random instance with standard normal A and b; always feasible and
    /// bounded.
    pub fn random(m: usize, n: usize, gamma: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a_data: Vec<f64> = (0..m * n).map(|_| standard_normal(&mut rng)).collect();
        let b_data: Vec<f64> = (0..m).map(|_| standard_normal(&mut rng)).collect();
        Self::new(Matrix::new(m, n, a_data)?, Vector::new(b_data)?, gamma)
    }

    pub fn with_reference(mut self, value: f64, point: Option<PrimalDualPoint>) -> Self {
        self.reference = Some(Reference { value, point });
        self
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn split<'z>(&self, z: &'z Vector) -> (&'z [f64], &'z [f64]) {
        let n = self.n();
        (&z.as_slice()[..n], &z.as_slice()[n..])
    }

    /// Original primal objective ½‖Ax − b‖² + γ‖x‖₁ at an x block.
    pub fn primal_objective(&self, x: &Vector) -> Result<f64> {
        let r = self.a.matvec(x)?.sub(&self.b)?;
        Ok(0.5 * r.dot(&r)? + self.gamma * x.iter().map(|v| v.abs()).sum::<f64>())
    }
}

impl SaddleProblem for LsL1Problem {
    fn dims(&self) -> (usize, usize) {
        (self.n() + self.m(), self.m())
    }

    fn value(&self, xu: &Vector, y: &Vector) -> f64 {
        let (x, u) = self.split(xu);
        let half_u = 0.5 * u.iter().map(|v| v * v).sum::<f64>();
        let l1 = self.gamma * x.iter().map(|v| v.abs()).sum::<f64>();
        let x_vec = Vector::from_slice(x).expect("finite block");
        let ax = self.a.matvec(&x_vec).expect("dims");
        let coupling: f64 = y
            .iter()
            .zip(ax.iter().zip(self.b.iter().zip(u.iter())))
            .map(|(yi, (axi, (bi, ui)))| yi * (axi - bi - ui))
            .sum();
        half_u + l1 + coupling
    }

    fn subgrad_x(&self, xu: &Vector, y: &Vector) -> Result<Vector> {
        let (x, u) = self.split(xu);
        let aty = self.a.t_matvec(y)?;
        let mut out: Vec<f64> = aty
            .iter()
            .zip(x.iter())
            .map(|(a, xi)| a + self.gamma * sign(*xi))
            .collect();
        out.extend(u.iter().zip(y.iter()).map(|(ui, yi)| ui - yi));
        Vector::new(out)
    }

    fn subgrad_neg_y(&self, xu: &Vector, _y: &Vector) -> Result<Vector> {
        let (x, u) = self.split(xu);
        let x_vec = Vector::from_slice(x)?;
        let ax = self.a.matvec(&x_vec)?;
        Vector::new(
            self.b
                .iter()
                .zip(ax.iter().zip(u.iter()))
                .map(|(bi, (axi, ui))| bi - axi + ui)
                .collect(),
        )
    }

    fn project_x(&self, z: &Vector) -> Vector {
        z.clone()
    }

    fn project_y(&self, z: &Vector) -> Vector {
        z.clone()
    }

    fn reference(&self) -> Option<Reference> {
        self.reference.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::check_subgradient_x;

    fn v(entries: &[f64]) -> Vector {
        Vector::from_slice(entries).unwrap()
    }

    #[test]
    fn sign_convention() {
        // sign((1.5, 0, −2)) = (1, 0, −1), read off the gamma-weighted part
        // of the x block with y = 0, u = 0
        let p = LsL1Problem::new(Matrix::identity(3), v(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let xu = v(&[1.5, 0.0, -2.0, 0.0, 0.0, 0.0]);
        let y = v(&[0.0, 0.0, 0.0]);
        let g = p.subgrad_x(&xu, &y).unwrap();
        assert_eq!(&g.as_slice()[..3], &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn u_equal_y_zeroes_second_block() {
        let p = LsL1Problem::new(Matrix::identity(2), v(&[1.0, -1.0]), 0.5).unwrap();
        let xu = v(&[0.3, -0.4, 0.7, -0.2]);
        let y = v(&[0.7, -0.2]);
        let g = p.subgrad_x(&xu, &y).unwrap();
        assert_eq!(&g.as_slice()[2..], &[0.0, 0.0]);
    }

    #[test]
    fn neg_y_subgradient_formula() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let p = LsL1Problem::new(a, v(&[3.0]), 1.0).unwrap();
        // x = (1, 1), u = (4): h = b − Ax + u = 3 − 3 + 4 = 4
        let xu = v(&[1.0, 1.0, 4.0]);
        let h = p.subgrad_neg_y(&xu, &v(&[0.0])).unwrap();
        assert_eq!(h.as_slice(), &[4.0]);
    }

    #[test]
    fn one_dim_soft_threshold_optimum() {
        // minimize ½(x−2)² + |x|: optimum x* = 1 with value 1.5, from the
        // 1-D grid oracle below
        let p = LsL1Problem::new(Matrix::identity(1), v(&[2.0]), 1.0).unwrap();
        let objective = |x: f64| 0.5 * (x - 2.0) * (x - 2.0) + x.abs();
        let mut best = (f64::INFINITY, 0.0);
        let mut t = -4.0;
        while t <= 4.0 {
            if objective(t) < best.0 {
                best = (objective(t), t);
            }
            t += 1e-4;
        }
        assert!((best.1 - 1.0).abs() <= 1e-3);
        assert!((best.0 - 1.5).abs() <= 1e-6);
        assert!((p.primal_objective(&v(&[1.0])).unwrap() - 1.5).abs() <= 1e-12);
    }

    #[test]
    fn subgradient_valid_at_zero_coordinate() {
        // flipping a zero coordinate must not violate the subgradient
        // inequality: sign(0) = 0 is a valid choice
        let p = LsL1Problem::new(Matrix::identity(2), v(&[1.0, -2.0]), 1.0).unwrap();
        let xu = v(&[0.0, 1.0, 0.5, -0.5]);
        let y = v(&[0.2, -0.3]);
        let probes = vec![
            v(&[0.7, 1.0, 0.5, -0.5]),
            v(&[-0.7, 1.0, 0.5, -0.5]),
            v(&[0.0, -1.0, 0.5, -0.5]),
        ];
        let worst = check_subgradient_x(&p, &xu, &y, &probes).unwrap();
        assert!(worst <= 1e-12, "worst violation {worst}");
    }
}
