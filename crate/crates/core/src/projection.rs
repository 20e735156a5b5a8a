//! Euclidean projectors used by the problem gallery: nonnegative orthant,
//! box, probability simplex, PSD cone, and a Dykstra intersection
//! combinator for sets only reachable through their individual projectors.

use crate::error::{Error, Result};
use crate::space::Vector;

/// Entrywise max(z, 0); the projector onto the nonnegative orthant.
pub fn proj_nonneg(z: &Vector) -> Vector {
    Vector::new(z.iter().map(|v| v.max(0.0)).collect()).expect("clamp of finite input is finite")
}

/// Entrywise bounds, ±∞ allowed on either side.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxSpec {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.iter().chain(upper.iter()).any(|v| v.is_nan()) {
            return Err(Error::NonFinite("box bounds".into()));
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidParameter(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// Box [center - radius, center + radius].
    pub fn around(center: &[f64], radius: &[f64]) -> Result<Self> {
        if center.len() != radius.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                found: radius.len(),
            });
        }
        if radius.iter().any(|r| *r < 0.0) {
            return Err(Error::InvalidParameter("negative box radius".into()));
        }
        Self::new(
            center.iter().zip(radius).map(|(c, r)| c - r).collect(),
            center.iter().zip(radius).map(|(c, r)| c + r).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, z: &Vector, tol: f64) -> bool {
        z.len() == self.dim()
            && z.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(v, (l, u))| *v >= l - tol && *v <= u + tol)
    }
}

/// Entrywise clamp onto the box.
pub fn proj_box(z: &Vector, spec: &BoxSpec) -> Vector {
    assert_eq!(z.len(), spec.dim(), "proj_box dimension mismatch");
    Vector::new(
        z.iter()
            .zip(spec.lower.iter().zip(spec.upper.iter()))
            .map(|(v, (l, u))| v.max(*l).min(*u))
            .collect(),
    )
    .expect("clamp of finite input is finite")
}

/// Euclidean projection onto the standard probability simplex
/// {x : Σx_i = 1, x ≥ 0} via the sort-and-threshold method.
pub fn proj_simplex(z: &Vector) -> Vector {
    let n = z.len();
    assert!(n >= 1, "proj_simplex needs dim >= 1");
    let mut sorted: Vec<f64> = z.as_slice().to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (j as f64 + 1.0);
        if u - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    Vector::new(z.iter().map(|v| (v - theta).max(0.0)).collect())
        .expect("threshold of finite input is finite")
}

/// Symmetric n×n matrix; symmetrized on construction so symmetry is exact
/// by storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Build from a row-major n×n slice; the stored matrix is (A + Aᵀ)/2.
    pub fn from_flat(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("symmetric matrix entries".into()));
        }
        let mut sym = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (data[i * n + j] + data[j * n + i]);
                sym[i * n + j] = v;
                sym[j * n + i] = v;
            }
        }
        Ok(Self { n, data: sym })
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        let mut data = vec![0.0; n * n];
        for (i, v) in entries.iter().enumerate() {
            data[i * n + i] = *v;
        }
        Self::from_flat(n, &data)
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1.0; n]).expect("identity is finite")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Smallest eigenvalue, via the same symmetric eigensolver the PSD
    /// projector uses.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = jacobi_eigh(self)?;
        Ok(vals.into_iter().fold(f64::INFINITY, f64::min))
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns (eigenvalues, eigenvectors) with eigenvector k stored in
/// column k of the row-major n×n vector. Reconstruction satisfies
/// ‖QΛQᵀ − M‖_F ≤ 1e-9 ‖M‖_F (tested).
pub fn jacobi_eigh(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.n;
    let mut a = m.data.clone();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    if n <= 1 {
        return Ok((a, q));
    }
    let frob = m.frobenius_norm();
    let target = 1e-13 * frob.max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    s += 2.0 * a[i * n + j] * a[i * n + j];
                }
            }
            s.sqrt()
        };
        if off <= target {
            let vals = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((vals, q));
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = a[p * n + r];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[r * n + r] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rotate rows/columns p and r
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + r];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + r] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[r * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[r * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let qkp = q[k * n + p];
                    let qkq = q[k * n + r];
                    q[k * n + p] = c * qkp - s * qkq;
                    q[k * n + r] = s * qkp + c * qkq;
                }
            }
        }
    }
    Err(Error::EigenFailure(JACOBI_MAX_SWEEPS))
}

/// Projection onto the PSD cone: eigendecompose, clamp negative
/// eigenvalues to zero, reassemble.
pub fn proj_psd(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.n;
    let (vals, q) = jacobi_eigh(m)?;
    let clamped: Vec<f64> = vals.iter().map(|v| v.max(0.0)).collect();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for k in 0..n {
                s += q[i * n + k] * clamped[k] * q[j * n + k];
            }
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
    }
    SymMatrix::from_flat(n, &out)
}

/// Dykstra stopping parameters: `tol` is the threshold on the change of
/// the iterate over one full cycle through the projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DykstraConfig {
    pub max_iters: usize,
    pub tol: f64,
}

impl DykstraConfig {
    pub fn new(max_iters: usize, tol: f64) -> Result<Self> {
        if max_iters < 1 {
            return Err(Error::InvalidParameter(
                "dykstra max_iters must be >= 1".into(),
            ));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter("dykstra tol must be > 0".into()));
        }
        Ok(Self { max_iters, tol })
    }
}

impl Default for DykstraConfig {
    fn default() -> Self {
        Self {
            max_iters: 1000,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DykstraResult {
    pub point: Vector,
    pub iterations: usize,
    pub converged: bool,
}

/// Dykstra's alternating projection scheme for the nearest point in an
/// intersection of closed convex sets. Unlike plain alternating
/// projections this converges to the projection itself, which the
/// projector contract requires. Non-convergence within `max_iters` is
/// reported through the `converged` flag, never silently.
pub fn proj_intersection_dykstra(
    z: &Vector,
    projectors: &[&dyn Fn(&Vector) -> Vector],
    cfg: &DykstraConfig,
) -> DykstraResult {
    assert!(
        projectors.len() >= 2,
        "dykstra needs at least two projectors"
    );
    let mut x = z.clone();
    let mut increments = vec![Vector::zeros(z.len()); projectors.len()];
    for cycle in 1..=cfg.max_iters {
        let x_prev = x.clone();
        for (inc, proj) in increments.iter_mut().zip(projectors.iter()) {
            let shifted = x
                .add_scaled(1.0, inc)
                .expect("dykstra iterate stays finite");
            let projected = proj(&shifted);
            *inc = shifted
                .sub(&projected)
                .expect("dykstra increment stays finite");
            x = projected;
        }
        if x.dist(&x_prev).expect("matching dims") <= cfg.tol {
            return DykstraResult {
                point: x,
                iterations: cycle,
                converged: true,
            };
        }
    }
    DykstraResult {
        point: x,
        iterations: cfg.max_iters,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(entries: &[f64]) -> Vector {
        Vector::from_slice(entries).unwrap()
    }

    #[test]
    fn nonneg_examples() {
        assert_eq!(proj_nonneg(&v(&[-1.0, 2.0])).as_slice(), &[0.0, 2.0]);
        assert_eq!(proj_nonneg(&v(&[0.0, 0.0])).as_slice(), &[0.0, 0.0]);
        assert_eq!(proj_nonneg(&v(&[-3.5])).as_slice(), &[0.0]);
    }

    #[test]
    fn box_examples() {
        let unit = BoxSpec::new(vec![0.0], vec![1.0]).unwrap();
        assert_eq!(proj_box(&v(&[5.0]), &unit).as_slice(), &[1.0]);
        assert_eq!(proj_box(&v(&[0.5]), &unit).as_slice(), &[0.5]);
        let two = BoxSpec::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(proj_box(&v(&[-2.0, 0.5]), &two).as_slice(), &[-1.0, 0.5]);
    }

    #[test]
    fn box_rejects_inverted_bounds() {
        assert!(BoxSpec::new(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn box_allows_infinite_bounds() {
        let b = BoxSpec::new(vec![f64::NEG_INFINITY], vec![0.0]).unwrap();
        assert_eq!(proj_box(&v(&[3.0]), &b).as_slice(), &[0.0]);
        assert_eq!(proj_box(&v(&[-7.0]), &b).as_slice(), &[-7.0]);
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(proj_simplex(&v(&[0.5, 0.5])).as_slice(), &[0.5, 0.5]);
        let p = proj_simplex(&v(&[2.0, 0.0]));
        assert!((p[0] - 1.0).abs() <= 1e-12 && p[1].abs() <= 1e-12);
        let q = proj_simplex(&v(&[0.4, 0.4]));
        assert!((q[0] - 0.5).abs() <= 1e-12 && (q[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn simplex_output_is_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = v(&[
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            ]);
            let p = proj_simplex(&z);
            let sum: f64 = p.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12, "sum {sum}");
            assert!(p.iter().all(|e| *e >= 0.0));
        }
    }

    /// Brute-force oracle: nearest grid point on the simplex.
    fn grid_simplex_oracle(z: &Vector, resolution: f64) -> Vector {
        let steps = (1.0 / resolution).round() as usize;
        let n = z.len();
        assert!(n == 2 || n == 3);
        let mut best = Vector::zeros(n);
        let mut best_d = f64::INFINITY;
        if n == 2 {
            for i in 0..=steps {
                let a = i as f64 * resolution;
                let cand = v(&[a, 1.0 - a]);
                let d = cand.dist(z).unwrap();
                if d < best_d {
                    best_d = d;
                    best = cand;
                }
            }
        } else {
            for i in 0..=steps {
                for j in 0..=(steps - i) {
                    let a = i as f64 * resolution;
                    let b = j as f64 * resolution;
                    let cand = v(&[a, b, 1.0 - a - b]);
                    let d = cand.dist(z).unwrap();
                    if d < best_d {
                        best_d = d;
                        best = cand;
                    }
                }
            }
        }
        best
    }

    #[test]
    fn simplex_matches_grid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let z = v(&[
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ]);
            let exact = proj_simplex(&z);
            let oracle = grid_simplex_oracle(&z, 1e-3);
            assert!(exact.dist(&oracle).unwrap() <= 2e-3);
        }
    }

    #[test]
    fn psd_identity_is_fixed() {
        let m = SymMatrix::identity(3);
        let p = proj_psd(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((p.get(i, j) - expect).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn psd_clamps_negative_diagonal() {
        let m = SymMatrix::diag(&[1.0, -2.0]).unwrap();
        let p = proj_psd(&m).unwrap();
        assert!((p.get(0, 0) - 1.0).abs() <= 1e-12);
        assert!(p.get(1, 1).abs() <= 1e-12);
        assert!(p.get(0, 1).abs() <= 1e-12);
    }

    #[test]
    fn psd_offdiagonal_example() {
        // eigenpairs (1, -1) with vectors ±(1,1)/sqrt(2); clamping -1 leaves
        // the rank-one matrix 0.5 * ones.
        let m = SymMatrix::from_flat(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let p = proj_psd(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p.get(i, j) - 0.5).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_reconstruction_error_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 3, 5, 8] {
            let raw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let m = SymMatrix::from_flat(n, &raw).unwrap();
            let (vals, q) = jacobi_eigh(&m).unwrap();
            let mut err = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += q[i * n + k] * vals[k] * q[j * n + k];
                    }
                    err += (s - m.get(i, j)).powi(2);
                }
            }
            assert!(err.sqrt() <= 1e-9 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn psd_variational_inequality() {
        // P(z) minimizes Frobenius distance: <z - P(z), S - P(z)> <= 0 for
        // PSD probes S.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 3;
        for _ in 0..100 {
            let raw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let z = SymMatrix::from_flat(n, &raw).unwrap();
            let p = proj_psd(&z).unwrap();
            // random PSD probe: B Bᵀ
            let braw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let mut s = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0.0;
                    for k in 0..n {
                        acc += braw[i * n + k] * braw[j * n + k];
                    }
                    s[i * n + j] = acc;
                }
            }
            let probe = SymMatrix::from_flat(n, &s).unwrap();
            let mut ip = 0.0;
            for idx in 0..n * n {
                ip += (z.as_flat()[idx] - p.as_flat()[idx])
                    * (probe.as_flat()[idx] - p.as_flat()[idx]);
            }
            assert!(ip <= 1e-9, "variational inequality violated: {ip}");
        }
    }

    #[test]
    fn dykstra_fixed_point_in_intersection() {
        let b1 = BoxSpec::new(vec![0.0], vec![2.0]).unwrap();
        let b2 = BoxSpec::new(vec![1.0], vec![3.0]).unwrap();
        let p1 = move |z: &Vector| proj_box(z, &b1);
        let p2 = move |z: &Vector| proj_box(z, &b2);
        let projs: Vec<&dyn Fn(&Vector) -> Vector> = vec![&p1, &p2];
        let r = proj_intersection_dykstra(&v(&[1.5]), &projs, &DykstraConfig::default());
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert!((r.point[0] - 1.5).abs() <= 1e-12);
    }

    #[test]
    fn dykstra_two_boxes() {
        // intersection of [0,2] and [1,3] is [1,2]; nearest point to 0 is 1.
        let b1 = BoxSpec::new(vec![0.0], vec![2.0]).unwrap();
        let b2 = BoxSpec::new(vec![1.0], vec![3.0]).unwrap();
        let p1 = move |z: &Vector| proj_box(z, &b1);
        let p2 = move |z: &Vector| proj_box(z, &b2);
        let projs: Vec<&dyn Fn(&Vector) -> Vector> = vec![&p1, &p2];
        let r = proj_intersection_dykstra(&v(&[0.0]), &projs, &DykstraConfig::default());
        assert!(r.converged);
        assert!((r.point[0] - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn dykstra_matches_closed_form_on_random_inputs() {
        let lo = [0.0, -1.0, 2.0];
        let hi = [2.0, 1.0, 4.0];
        let lo2 = [1.0, -3.0, 1.0];
        let hi2 = [3.0, 0.5, 3.0];
        let b1 = BoxSpec::new(lo.to_vec(), hi.to_vec()).unwrap();
        let b2 = BoxSpec::new(lo2.to_vec(), hi2.to_vec()).unwrap();
        // closed form: clamp onto the intersection box
        let ilo: Vec<f64> = lo.iter().zip(lo2).map(|(a, b)| a.max(b)).collect();
        let ihi: Vec<f64> = hi.iter().zip(hi2).map(|(a, b)| a.min(b)).collect();
        let inter = BoxSpec::new(ilo, ihi).unwrap();
        let p1 = move |z: &Vector| proj_box(z, &b1);
        let p2 = move |z: &Vector| proj_box(z, &b2);
        let projs: Vec<&dyn Fn(&Vector) -> Vector> = vec![&p1, &p2];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let z = v(&[
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
            ]);
            let r = proj_intersection_dykstra(&z, &projs, &DykstraConfig::default());
            assert!(r.converged);
            let exact = proj_box(&z, &inter);
            assert!(r.point.dist(&exact).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn dykstra_psd_box_fixed_point() {
        // z strictly inside both sets stays put.
        let sigma = SymMatrix::diag(&[0.04, 0.09]).unwrap();
        let center = sigma.as_flat().to_vec();
        let radius: Vec<f64> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| 0.5 * (sigma.get(i, i) * sigma.get(j, j)).sqrt())
            .collect();
        let b = BoxSpec::around(&center, &radius).unwrap();
        let pb = move |z: &Vector| proj_box(z, &b);
        let ppsd = |z: &Vector| {
            let m = SymMatrix::from_flat(2, z.as_slice()).unwrap();
            Vector::from_slice(proj_psd(&m).unwrap().as_flat()).unwrap()
        };
        let projs: Vec<&dyn Fn(&Vector) -> Vector> = vec![&ppsd, &pb];
        let z = v(&center);
        let r = proj_intersection_dykstra(&z, &projs, &DykstraConfig::default());
        assert!(r.converged);
        assert!(r.point.dist(&z).unwrap() <= 1e-10);
    }

    proptest! {
        #[test]
        fn projectors_idempotent_and_nonexpansive(
            a in prop::collection::vec(-10.0..10.0f64, 3),
            b in prop::collection::vec(-10.0..10.0f64, 3),
        ) {
            let za = v(&a);
            let zb = v(&b);
            let spec = BoxSpec::new(vec![-1.0, 0.0, -2.0], vec![1.0, 5.0, -1.0]).unwrap();
            for proj in [
                &proj_nonneg as &dyn Fn(&Vector) -> Vector,
                &(|z: &Vector| proj_box(z, &spec)) as &dyn Fn(&Vector) -> Vector,
                &proj_simplex as &dyn Fn(&Vector) -> Vector,
            ] {
                let pa = proj(&za);
                let pb = proj(&zb);
                prop_assert!(proj(&pa).dist(&pa).unwrap() <= 1e-12);
                prop_assert!(pa.dist(&pb).unwrap() <= za.dist(&zb).unwrap() + 1e-12);
            }
        }

        #[test]
        fn psd_idempotent_and_nonexpansive(
            a in prop::collection::vec(-4.0..4.0f64, 9),
            b in prop::collection::vec(-4.0..4.0f64, 9),
        ) {
            let ma = SymMatrix::from_flat(3, &a).unwrap();
            let mb = SymMatrix::from_flat(3, &b).unwrap();
            let pa = proj_psd(&ma).unwrap();
            let pb = proj_psd(&mb).unwrap();
            let ppa = proj_psd(&pa).unwrap();
            let d: f64 = pa
                .as_flat()
                .iter()
                .zip(ppa.as_flat())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            prop_assert!(d <= 1e-12);
            let dp: f64 = pa
                .as_flat()
                .iter()
                .zip(pb.as_flat())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            let dz: f64 = ma
                .as_flat()
                .iter()
                .zip(mb.as_flat())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            prop_assert!(dp <= dz + 1e-12);
        }
    }
}
