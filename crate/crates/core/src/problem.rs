//! The oracle interface every saddle problem implements: the value
//! f(x, y), one subgradient from ∂ₓf and one from ∂ᵧ(−f), and the
//! projectors onto the feasible sets X and Y.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sampling::uniform_in_ball;
use crate::space::{PrimalDualPoint, Vector};

/// Known saddle data for a problem: the saddle value f(x*, y*) and,
/// when available, the saddle point itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub value: f64,
    pub point: Option<PrimalDualPoint>,
}

/// Oracle bundle for a convex-concave saddle problem on X × Y.
///
/// Implementations must be pure functions of their arguments: no hidden
/// state that changes results between calls, so concurrent evaluation is
/// safe. Subgradient oracles return one deterministic element of the
/// subdifferential.
pub trait SaddleProblem {
    /// (n_x, n_y) block dimensions.
    fn dims(&self) -> (usize, usize);

    /// f(x, y). May return a non-finite value on overflow; the solver
    /// checks and aborts.
    fn value(&self, x: &Vector, y: &Vector) -> f64;

    /// Some g ∈ ∂ₓf(x, y).
    fn subgrad_x(&self, x: &Vector, y: &Vector) -> Result<Vector>;

    /// Some h ∈ ∂ᵧ(−f)(x, y).
    fn subgrad_neg_y(&self, x: &Vector, y: &Vector) -> Result<Vector>;

    /// P_X(z); idempotent and nonexpansive.
    fn project_x(&self, z: &Vector) -> Vector;

    /// P_Y(z); idempotent and nonexpansive.
    fn project_y(&self, z: &Vector) -> Vector;

    /// Known saddle value/point, if any.
    fn reference(&self) -> Option<Reference> {
        None
    }
}

/// Wrap a problem with an externally supplied saddle value (for example
/// from a config file). The wrapped reference carries no point.
pub struct WithReferenceValue<P> {
    inner: P,
    value: f64,
}

impl<P: SaddleProblem> WithReferenceValue<P> {
    pub fn new(inner: P, value: f64) -> Self {
        Self { inner, value }
    }
}

impl<P: SaddleProblem> SaddleProblem for WithReferenceValue<P> {
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }
    fn value(&self, x: &Vector, y: &Vector) -> f64 {
        self.inner.value(x, y)
    }
    fn subgrad_x(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.inner.subgrad_x(x, y)
    }
    fn subgrad_neg_y(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.inner.subgrad_neg_y(x, y)
    }
    fn project_x(&self, z: &Vector) -> Vector {
        self.inner.project_x(z)
    }
    fn project_y(&self, z: &Vector) -> Vector {
        self.inner.project_y(z)
    }
    fn reference(&self) -> Option<Reference> {
        Some(Reference {
            value: self.value,
            point: None,
        })
    }
}

impl SaddleProblem for Box<dyn SaddleProblem> {
    fn dims(&self) -> (usize, usize) {
        (**self).dims()
    }
    fn value(&self, x: &Vector, y: &Vector) -> f64 {
        (**self).value(x, y)
    }
    fn subgrad_x(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        (**self).subgrad_x(x, y)
    }
    fn subgrad_neg_y(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        (**self).subgrad_neg_y(x, y)
    }
    fn project_x(&self, z: &Vector) -> Vector {
        (**self).project_x(z)
    }
    fn project_y(&self, z: &Vector) -> Vector {
        (**self).project_y(z)
    }
    fn reference(&self) -> Option<Reference> {
        (**self).reference()
    }
}

/// Sampling parameters for the saddle residual estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledResidualConfig {
    pub n_samples: usize,
    pub sample_radius: f64,
    pub rng_seed: u64,
}

impl SampledResidualConfig {
    pub fn new(n_samples: usize, sample_radius: f64, rng_seed: u64) -> Result<Self> {
        if n_samples < 1 {
            return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
        }
        if sample_radius.is_nan() || sample_radius <= 0.0 {
            return Err(Error::InvalidParameter("sample_radius must be > 0".into()));
        }
        Ok(Self {
            n_samples,
            sample_radius,
            rng_seed,
        })
    }
}

/// Sampled estimate of sup over feasible (x, y) of f(cand.x, y) − f(x, cand.y):
/// zero exactly at a saddle point, a lower bound on the true gap otherwise.
///
/// Samples are drawn from a ball around the candidate and projected into
/// X × Y. The candidate itself is always among the comparisons, so the
/// result is >= 0 exactly.
pub fn saddle_residual(
    p: &dyn SaddleProblem,
    cand: &PrimalDualPoint,
    cfg: &SampledResidualConfig,
) -> f64 {
    let (n_x, n_y) = p.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut worst = 0.0_f64; // self-sample: f(x̄,ȳ) − f(x̄,ȳ) = 0
    for _ in 1..cfg.n_samples {
        let d = uniform_in_ball(&mut rng, n_x + n_y, cfg.sample_radius);
        let dx = Vector::from_slice(&d[..n_x]).expect("ball sample is finite");
        let dy = Vector::from_slice(&d[n_x..]).expect("ball sample is finite");
        let xs = p.project_x(&cand.x().add_scaled(1.0, &dx).expect("finite shift"));
        let ys = p.project_y(&cand.y().add_scaled(1.0, &dy).expect("finite shift"));
        let term = p.value(cand.x(), &ys) - p.value(&xs, cand.y());
        if term > worst {
            worst = term;
        }
    }
    worst
}

/// Worst violation of the subgradient inequality for g ∈ ∂ₓf(x, y) over
/// the probe points: max over x' of f(x,y) + ⟨g, x'−x⟩ − f(x',y).
/// Nonpositive (up to tolerance) iff g is a valid subgradient on the probes.
pub fn check_subgradient_x(
    p: &dyn SaddleProblem,
    x: &Vector,
    y: &Vector,
    probes: &[Vector],
) -> Result<f64> {
    let g = p.subgrad_x(x, y)?;
    let f0 = p.value(x, y);
    let mut worst = f64::NEG_INFINITY;
    for probe in probes {
        let shift = g.dot(&probe.sub(x)?)?;
        let violation = f0 + shift - p.value(probe, y);
        if violation > worst {
            worst = violation;
        }
    }
    Ok(worst)
}

/// Mirror of [`check_subgradient_x`] for h ∈ ∂ᵧ(−f)(x, y):
/// max over y' of f(x,y') − f(x,y) + ⟨h, y'−y⟩.
pub fn check_subgradient_neg_y(
    p: &dyn SaddleProblem,
    x: &Vector,
    y: &Vector,
    probes: &[Vector],
) -> Result<f64> {
    let h = p.subgrad_neg_y(x, y)?;
    let f0 = p.value(x, y);
    let mut worst = f64::NEG_INFINITY;
    for probe in probes {
        let shift = h.dot(&probe.sub(y)?)?;
        let violation = p.value(x, probe) - f0 + shift;
        if violation > worst {
            worst = violation;
        }
    }
    Ok(worst)
}

/// Uniform draw from the ball of the given radius around the origin,
/// projected into X × Y.
pub fn random_feasible_init(p: &dyn SaddleProblem, radius: f64, seed: u64) -> PrimalDualPoint {
    let (n_x, n_y) = p.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = uniform_in_ball(&mut rng, n_x + n_y, radius);
    let x = Vector::from_slice(&d[..n_x]).expect("ball sample is finite");
    let y = Vector::from_slice(&d[n_x..]).expect("ball sample is finite");
    PrimalDualPoint::new(p.project_x(&x), p.project_y(&y))
}
