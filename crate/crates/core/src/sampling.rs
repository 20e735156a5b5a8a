//! Small sampling helpers shared by residual diagnostics, random problem
//! instances, and random initial points.

use rand::Rng;

pub(crate) fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    loop {
        let u1: f64 = rng.gen();
        if u1 > 0.0 {
            let u2: f64 = rng.gen();
            return (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        }
    }
}

/// Uniform sample from the closed ball of the given radius in R^dim.
pub(crate) fn uniform_in_ball<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: f64) -> Vec<f64> {
    if dim == 0 {
        return Vec::new();
    }
    loop {
        let dir: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            let u: f64 = rng.gen();
            let r = radius * u.powf(1.0 / dim as f64);
            return dir.into_iter().map(|v| v * r / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ball_samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let p = uniform_in_ball(&mut rng, 4, 2.5);
            let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(norm <= 2.5 + 1e-12);
        }
    }

    #[test]
    fn normal_has_plausible_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 20_000;
        let samples: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
