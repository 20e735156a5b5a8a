//! Robust Markowitz portfolio construction.
//!
//! f((μ, Σ), w) = μᵀw − γ wᵀΣw. The adversary block x = (μ, Σ) ranges
//! over a box around the nominal mean and, for the covariance, the PSD
//! matrices within an entrywise box around the nominal covariance; the
//! portfolio block w lives on the probability simplex (long-only, fully
//! invested). The covariance set has no closed-form projector, so it is
//! handled with Dykstra over the PSD and box projectors.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::problem::SaddleProblem;
use crate::projection::{
    proj_box, proj_intersection_dykstra, proj_psd, proj_simplex, BoxSpec, DykstraConfig, SymMatrix,
};
use crate::space::Vector;

pub struct MarkowitzProblem {
    mu_bar: Vector,
    sigma_bar: SymMatrix,
    rho: Vector,
    eta: f64,
    gamma: f64,
    mu_box: BoxSpec,
    sigma_box: BoxSpec,
    dykstra: DykstraConfig,
    dykstra_failures: AtomicUsize,
}

impl MarkowitzProblem {
    pub fn new(
        mu_bar: Vector,
        sigma_bar: SymMatrix,
        rho: Vector,
        eta: f64,
        gamma: f64,
    ) -> Result<Self> {
        let n = mu_bar.len();
        if sigma_bar.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma_bar.dim(),
            });
        }
        if rho.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rho.len(),
            });
        }
        if rho.iter().any(|r| r.is_nan() || *r <= 0.0) {
            return Err(Error::InvalidParameter("rho must be entrywise > 0".into()));
        }
        if eta.is_nan() || eta <= 0.0 || eta >= 1.0 {
            return Err(Error::InvalidParameter("eta must lie in (0, 1)".into()));
        }
        if gamma.is_nan() || gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidParameter(
                "gamma must be finite and > 0".into(),
            ));
        }
        if sigma_bar.min_eigenvalue()? <= 0.0 {
            return Err(Error::InvalidParameter(
                "sigma_bar must be positive definite".into(),
            ));
        }
        let mu_box = BoxSpec::around(mu_bar.as_slice(), rho.as_slice())?;
        let mut radius = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                radius[i * n + j] = eta * (sigma_bar.get(i, i) * sigma_bar.get(j, j)).sqrt();
            }
        }
        let sigma_box = BoxSpec::around(sigma_bar.as_flat(), &radius)?;
        Ok(Self {
            mu_bar,
            sigma_bar,
            rho,
            eta,
            gamma,
            mu_box,
            sigma_box,
            // tighter than the general default so the composed projector
            // stays idempotent at the 1e-12 contract
            dykstra: DykstraConfig {
                max_iters: 5000,
                tol: 1e-14,
            },
            dykstra_failures: AtomicUsize::new(0),
        })
    }

    /// Small synthetic two-asset instance with no external data:
    /// μ̄ = (0.1, 0.2), Σ̄ = diag(0.04, 0.09), ρ = (0.05, 0.05), η = 0.5,
    /// γ = 1.
    pub fn synthetic2() -> Self {
        Self::new(
            Vector::new(vec![0.1, 0.2]).expect("finite"),
            SymMatrix::diag(&[0.04, 0.09]).expect("finite"),
            Vector::new(vec![0.05, 0.05]).expect("finite"),
            0.5,
            1.0,
        )
        .expect("valid synthetic instance")
    }

    pub fn n_assets(&self) -> usize {
        self.mu_bar.len()
    }

    pub fn mu_bar(&self) -> &Vector {
        &self.mu_bar
    }

    pub fn sigma_bar(&self) -> &SymMatrix {
        &self.sigma_bar
    }

    pub fn rho(&self) -> &Vector {
        &self.rho
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Number of covariance projections that hit the Dykstra iteration cap
    /// without meeting the tolerance.
    pub fn dykstra_failures(&self) -> usize {
        self.dykstra_failures.load(Ordering::Relaxed)
    }

    /// Entrywise box the perturbed covariance must stay in.
    pub fn sigma_box(&self) -> &BoxSpec {
        &self.sigma_box
    }

    fn split<'z>(&self, z: &'z Vector) -> (&'z [f64], &'z [f64]) {
        let n = self.n_assets();
        (&z.as_slice()[..n], &z.as_slice()[n..])
    }
}

impl SaddleProblem for MarkowitzProblem {
    fn dims(&self) -> (usize, usize) {
        let n = self.n_assets();
        (n + n * n, n)
    }

    fn value(&self, x: &Vector, w: &Vector) -> f64 {
        let n = self.n_assets();
        let (mu, sigma) = self.split(x);
        let mut quad = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad += w[i] * sigma[i * n + j] * w[j];
            }
        }
        let lin: f64 = mu.iter().zip(w.iter()).map(|(m, wi)| m * wi).sum();
        lin - self.gamma * quad
    }

    fn subgrad_x(&self, _x: &Vector, w: &Vector) -> Result<Vector> {
        // gradient blocks: ∂f/∂μ = w and, in the Frobenius pairing,
        // ∂f/∂Σ = −γ wwᵀ
        let n = self.n_assets();
        let mut out = Vec::with_capacity(n + n * n);
        out.extend(w.iter());
        for i in 0..n {
            for j in 0..n {
                out.push(-self.gamma * w[i] * w[j]);
            }
        }
        Vector::new(out)
    }

    fn subgrad_neg_y(&self, x: &Vector, w: &Vector) -> Result<Vector> {
        // −∂f/∂w = 2γΣw − μ
        let n = self.n_assets();
        let (mu, sigma) = self.split(x);
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut sw = 0.0;
            for j in 0..n {
                sw += sigma[i * n + j] * w[j];
            }
            *o = 2.0 * self.gamma * sw - mu[i];
        }
        Vector::new(out)
    }

    fn project_x(&self, z: &Vector) -> Vector {
        let n = self.n_assets();
        let (mu, sigma) = self.split(z);
        let mu_proj = proj_box(&Vector::from_slice(mu).expect("finite block"), &self.mu_box);
        let sym = SymMatrix::from_flat(n, sigma).expect("finite block");
        let sigma_vec = Vector::from_slice(sym.as_flat()).expect("finite");
        let psd = |v: &Vector| {
            let m = SymMatrix::from_flat(n, v.as_slice()).expect("finite");
            Vector::from_slice(proj_psd(&m).expect("eigensolver converges").as_flat())
                .expect("finite")
        };
        let boxed = |v: &Vector| proj_box(v, &self.sigma_box);
        let projs: Vec<&dyn Fn(&Vector) -> Vector> = vec![&psd, &boxed];
        let result = proj_intersection_dykstra(&sigma_vec, &projs, &self.dykstra);
        if !result.converged {
            self.dykstra_failures.fetch_add(1, Ordering::Relaxed);
        }
        mu_proj.concat(&result.point)
    }

    fn project_y(&self, z: &Vector) -> Vector {
        proj_simplex(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[f64]) -> Vector {
        Vector::from_slice(entries).unwrap()
    }

    #[test]
    fn oracles_at_zero_portfolio() {
        // w = 0 is outside the simplex, but the oracle formulas are defined
        // pointwise: f = 0, g = (0, 0), h = −μ
        let p = MarkowitzProblem::synthetic2();
        let x = v(&[0.1, 0.2, 0.04, 0.0, 0.0, 0.09]);
        let w0 = v(&[0.0, 0.0]);
        assert_eq!(p.value(&x, &w0), 0.0);
        assert!(p.subgrad_x(&x, &w0).unwrap().iter().all(|g| *g == 0.0));
        assert_eq!(p.subgrad_neg_y(&x, &w0).unwrap().as_slice(), &[-0.1, -0.2]);
    }

    #[test]
    fn zero_covariance_makes_f_bilinear() {
        let p = MarkowitzProblem::synthetic2();
        let x = v(&[0.1, 0.2, 0.0, 0.0, 0.0, 0.0]);
        let w = v(&[0.3, 0.7]);
        assert!((p.value(&x, &w) - (0.1 * 0.3 + 0.2 * 0.7)).abs() <= 1e-15);
    }

    #[test]
    fn projection_clamps_mean_and_keeps_covariance_feasible() {
        let p = MarkowitzProblem::synthetic2();
        let z = v(&[0.5, -0.5, 1.0, 0.9, 0.9, -1.0]);
        let proj = p.project_x(&z);
        assert!((proj[0] - 0.15).abs() <= 1e-12); // 0.1 + 0.05
        assert!((proj[1] - 0.15).abs() <= 1e-12); // 0.2 − 0.05
        let sigma = SymMatrix::from_flat(2, &proj.as_slice()[2..]).unwrap();
        assert!(sigma.min_eigenvalue().unwrap() >= -1e-10);
        assert!(p.sigma_box().contains(&v(&proj.as_slice()[2..]), 1e-10));
        assert_eq!(p.dykstra_failures(), 0);
    }

    #[test]
    fn nominal_covariance_is_fixed_point() {
        // Σ̄ ≻ 0 sits inside both sets
        let p = MarkowitzProblem::synthetic2();
        let z = v(&[0.1, 0.2, 0.04, 0.0, 0.0, 0.09]);
        let proj = p.project_x(&z);
        assert!(proj.dist(&z).unwrap() <= 1e-12);
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        let mu = v(&[0.1, 0.2]);
        let sig = SymMatrix::diag(&[0.04, 0.09]).unwrap();
        let rho = v(&[0.05, 0.05]);
        assert!(MarkowitzProblem::new(mu.clone(), sig.clone(), rho.clone(), 1.5, 1.0).is_err());
        assert!(MarkowitzProblem::new(mu.clone(), sig.clone(), rho.clone(), 0.5, 0.0).is_err());
        assert!(MarkowitzProblem::new(mu.clone(), sig.clone(), v(&[0.0, 0.1]), 0.5, 1.0).is_err());
        let indefinite = SymMatrix::diag(&[0.04, -0.09]).unwrap();
        assert!(MarkowitzProblem::new(mu, indefinite, rho, 0.5, 1.0).is_err());
    }
}
