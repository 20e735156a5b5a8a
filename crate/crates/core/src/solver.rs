//! The alternating projected subgradient iteration
//!
//!   x^{k+1} = P_X(x^k − t_k g_k),  y^{k+1} = P_Y(y^k − t_k h_k)
//!
//! with running step-weighted averages (x̂_k, ŷ_k) and the weighted value
//! Σ_{i≤k} (t_i / Σ_{j≤k} t_j) f(x^i, y^i), both maintained in O(1)
//! memory. Full per-iterate storage is opt-in for the certificate checks.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::problem::SaddleProblem;
use crate::schedule::StepSchedule;
use crate::space::{norm, PrimalDualPoint, Vector};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Number of update steps K; the run evaluates iterates 0..=K.
    pub max_iters: usize,
    pub schedule: StepSchedule,
    pub init: PrimalDualPoint,
    /// Trace thinning; k = 0 and k = K are always recorded.
    pub record_every: usize,
    /// Seed handed to sampled diagnostics downstream of the run.
    pub rng_seed: u64,
    /// Keep all iterates, subgradients, and averaged points for the
    /// certificate checks. Off by default: long runs stay O(1) memory.
    pub store_iterates: bool,
}

impl SolverConfig {
    pub fn new(max_iters: usize, schedule: StepSchedule, init: PrimalDualPoint) -> Self {
        Self {
            max_iters,
            schedule,
            init,
            record_every: 1,
            rng_seed: 0,
            store_iterates: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IterateRecord {
    pub k: usize,
    pub t_k: f64,
    /// f(x^k, y^k)
    pub f_iter: f64,
    /// Σ_{i≤k} (t_i / Σ_{j≤k} t_j) f(x^i, y^i)
    pub f_weighted: f64,
    /// f(x̂_k, ŷ_k)
    pub f_avg_point: f64,
    /// ‖(g_k, h_k)‖
    pub subgrad_norm: f64,
    /// ‖(x^k, y^k) − (x*, y*)‖ when a reference point exists
    pub dist_to_ref: Option<f64>,
}

/// Everything the certificate checks need beyond the thinned trace,
/// indexed by k = 0..=K.
#[derive(Debug, Clone)]
pub struct DiagnosticsData {
    pub iterates: Vec<PrimalDualPoint>,
    pub subgradients: Vec<PrimalDualPoint>,
    pub averages: Vec<PrimalDualPoint>,
    pub steps: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub trace: Vec<IterateRecord>,
    pub final_iterate: PrimalDualPoint,
    pub final_average: PrimalDualPoint,
    /// max_k ‖(g_k, h_k)‖ — empirical surrogate for the uniform
    /// subgradient bound, which is an assumption, not a computable.
    pub empirical_subgrad_bound: f64,
    /// max_k ‖(x^k, y^k)‖
    pub empirical_iterate_bound: f64,
    /// max_k ‖(x̂_k, ŷ_k)‖
    pub empirical_average_bound: f64,
    pub step_sum: f64,
    pub step_sq_sum: f64,
    pub wall_time: Duration,
    pub diagnostics: Option<DiagnosticsData>,
}

impl RunResult {
    pub fn final_record(&self) -> &IterateRecord {
        self.trace
            .last()
            .expect("trace always holds k = 0 and k = K")
    }
}

/// One incremental step of the weighted running average:
/// ((prev_weight·prev_avg + t_k·new_point)/(prev_weight + t_k), prev_weight + t_k).
/// Zero-weight points leave the average bit-exactly unchanged, and the
/// first positive weight makes the average the new point itself.
pub fn update_average(
    prev_avg: &Vector,
    prev_weight: f64,
    new_point: &Vector,
    t_k: f64,
) -> Result<(Vector, f64)> {
    if prev_weight + t_k <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    if t_k == 0.0 {
        return Ok((prev_avg.clone(), prev_weight));
    }
    if prev_weight == 0.0 {
        return Ok((new_point.clone(), t_k));
    }
    let total = prev_weight + t_k;
    if new_point == prev_avg {
        // averaging a point with itself is exact
        return Ok((prev_avg.clone(), total));
    }
    let avg = Vector::new(
        prev_avg
            .iter()
            .zip(new_point.iter())
            .map(|(a, p)| (prev_weight * a + t_k * p) / total)
            .collect(),
    )?;
    Ok((avg, total))
}

/// Scalar analogue of [`update_average`].
pub fn update_weighted_value(
    prev_val: f64,
    prev_weight: f64,
    f_k: f64,
    t_k: f64,
) -> Result<(f64, f64)> {
    if prev_weight + t_k <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    if t_k == 0.0 {
        return Ok((prev_val, prev_weight));
    }
    if prev_weight == 0.0 {
        return Ok((f_k, t_k));
    }
    let total = prev_weight + t_k;
    if f_k == prev_val {
        return Ok((prev_val, total));
    }
    Ok(((prev_weight * prev_val + t_k * f_k) / total, total))
}

fn ensure_finite_value(v: f64, k: usize, oracle: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIterate {
            k,
            oracle: oracle.into(),
        })
    }
}

fn oracle_abort(e: Error, k: usize, oracle: &str) -> Error {
    match e {
        Error::NonFinite(_) => Error::NonFiniteIterate {
            k,
            oracle: oracle.into(),
        },
        other => other,
    }
}

/// Run the iteration for `cfg.max_iters` steps. Deterministic: two runs
/// with the same problem and config produce bit-identical traces.
pub fn solve(p: &dyn SaddleProblem, cfg: &SolverConfig) -> Result<RunResult> {
    let started = Instant::now();
    if cfg.max_iters < 1 {
        return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
    }
    if cfg.record_every < 1 {
        return Err(Error::InvalidParameter("record_every must be >= 1".into()));
    }
    let (n_x, n_y) = p.dims();
    let (i_x, i_y) = cfg.init.dims();
    if (i_x, i_y) != (n_x, n_y) {
        return Err(Error::DimensionMismatch {
            expected: n_x + n_y,
            found: i_x + i_y,
        });
    }

    // the iteration assumes a feasible start; project defensively
    let mut x = p.project_x(cfg.init.x());
    let mut y = p.project_y(cfg.init.y());

    let reference_point = p.reference().and_then(|r| r.point);
    let k_max = cfg.max_iters;

    let mut trace = Vec::new();
    let mut diag = cfg.store_iterates.then(|| DiagnosticsData {
        iterates: Vec::with_capacity(k_max + 1),
        subgradients: Vec::with_capacity(k_max + 1),
        averages: Vec::with_capacity(k_max + 1),
        steps: Vec::with_capacity(k_max + 1),
        values: Vec::with_capacity(k_max + 1),
    });

    let mut x_avg = Vector::zeros(n_x);
    let mut y_avg = Vector::zeros(n_y);
    let mut f_weighted = 0.0;
    let mut weight = 0.0;
    let mut step_sum = 0.0;
    let mut step_sq_sum = 0.0;
    let mut max_subgrad = 0.0_f64;
    let mut max_iterate = 0.0_f64;
    let mut max_average = 0.0_f64;

    for k in 0..=k_max {
        let t_k = cfg.schedule.step_at(k)?;
        let f_k = ensure_finite_value(p.value(&x, &y), k, "value")?;
        let g = p
            .subgrad_x(&x, &y)
            .map_err(|e| oracle_abort(e, k, "subgrad_x"))?;
        let h = p
            .subgrad_neg_y(&x, &y)
            .map_err(|e| oracle_abort(e, k, "subgrad_neg_y"))?;
        if g.len() != n_x {
            return Err(Error::DimensionMismatch {
                expected: n_x,
                found: g.len(),
            });
        }
        if h.len() != n_y {
            return Err(Error::DimensionMismatch {
                expected: n_y,
                found: h.len(),
            });
        }
        let subgrad = PrimalDualPoint::new(g, h);
        let subgrad_norm = norm(&subgrad);

        let (new_x_avg, _) = update_average(&x_avg, weight, &x, t_k)?;
        let (new_y_avg, _) = update_average(&y_avg, weight, &y, t_k)?;
        let (new_f_weighted, new_weight) = update_weighted_value(f_weighted, weight, f_k, t_k)?;
        x_avg = new_x_avg;
        y_avg = new_y_avg;
        f_weighted = new_f_weighted;
        weight = new_weight;
        step_sum += t_k;
        step_sq_sum += t_k * t_k;

        let f_avg_point =
            ensure_finite_value(p.value(&x_avg, &y_avg), k, "value at averaged point")?;

        let current = PrimalDualPoint::new(x.clone(), y.clone());
        let average = PrimalDualPoint::new(x_avg.clone(), y_avg.clone());
        max_subgrad = max_subgrad.max(subgrad_norm);
        max_iterate = max_iterate.max(norm(&current));
        max_average = max_average.max(norm(&average));

        let dist_to_ref = reference_point.as_ref().map(|z_star| {
            let dx = current.x().dist(z_star.x()).expect("reference dims match");
            let dy = current.y().dist(z_star.y()).expect("reference dims match");
            (dx * dx + dy * dy).sqrt()
        });

        if k % cfg.record_every == 0 || k == k_max {
            trace.push(IterateRecord {
                k,
                t_k,
                f_iter: f_k,
                f_weighted,
                f_avg_point,
                subgrad_norm,
                dist_to_ref,
            });
        }
        if let Some(d) = diag.as_mut() {
            d.iterates.push(current);
            d.subgradients.push(subgrad.clone());
            d.averages.push(average);
            d.steps.push(t_k);
            d.values.push(f_k);
        }

        if k < k_max {
            let stepped_x = x
                .add_scaled(-t_k, subgrad.x())
                .map_err(|e| oracle_abort(e, k, "x update"))?;
            let stepped_y = y
                .add_scaled(-t_k, subgrad.y())
                .map_err(|e| oracle_abort(e, k, "y update"))?;
            x = p.project_x(&stepped_x);
            y = p.project_y(&stepped_y);
        }
    }

    Ok(RunResult {
        trace,
        final_iterate: PrimalDualPoint::new(x, y),
        final_average: PrimalDualPoint::new(x_avg, y_avg),
        empirical_subgrad_bound: max_subgrad,
        empirical_iterate_bound: max_iterate,
        empirical_average_bound: max_average,
        step_sum,
        step_sq_sum,
        wall_time: started.elapsed(),
        diagnostics: diag,
    })
}
