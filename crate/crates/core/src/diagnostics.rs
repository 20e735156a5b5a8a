//! Runtime certificates: the per-iterate and averaged inequalities the
//! convergence analysis rests on, evaluated along a completed run. These
//! are theorems for a correct implementation, so any violation beyond
//! [`CHECK_TOLERANCE`] indicates a bug in an oracle, a projector, or the
//! solver loop.

use crate::error::Result;
use crate::problem::SaddleProblem;
use crate::solver::RunResult;
use crate::space::{inner, norm, PrimalDualPoint, Vector};

/// Absolute tolerance for every certificate inequality. Gallery values
/// are O(1)–O(10²), so this leaves ample double-precision headroom over
/// ~10⁴ accumulations.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub applicable: bool,
    /// Why the check was skipped, when it was.
    pub reason: Option<String>,
    pub worst_violation: f64,
    pub k_at_worst: usize,
    pub pass: bool,
}

impl CheckEntry {
    fn inapplicable(name: &str, reason: &str) -> Self {
        Self {
            name: name.into(),
            applicable: false,
            reason: Some(reason.into()),
            worst_violation: 0.0,
            k_at_worst: 0,
            pass: true,
        }
    }

    fn from_worst(name: &str, worst: f64, k_at_worst: usize) -> Self {
        Self {
            name: name.into(),
            applicable: true,
            reason: None,
            worst_violation: worst,
            k_at_worst,
            pass: worst <= CHECK_TOLERANCE,
        }
    }
}

/// Pass/fail ledger over all certificate checks, plus the empirical
/// surrogates for the analysis constants (which are assumptions, not
/// computables; the run reports what it actually saw).
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub entries: Vec<CheckEntry>,
    pub tolerance: f64,
    pub empirical_subgrad_bound: f64,
    pub empirical_iterate_bound: f64,
    pub empirical_average_bound: f64,
    pub step_sum: f64,
    pub step_sq_sum: f64,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().filter(|e| e.applicable).all(|e| e.pass)
    }

    /// Human-readable table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<28} {:>6} {:>14} {:>10} {:>6}\n",
            "check", "applic", "worst_viol", "k_at_worst", "pass"
        ));
        for e in &self.entries {
            if e.applicable {
                out.push_str(&format!(
                    "{:<28} {:>6} {:>14.3e} {:>10} {:>6}\n",
                    e.name,
                    "yes",
                    e.worst_violation,
                    e.k_at_worst,
                    if e.pass { "pass" } else { "FAIL" }
                ));
            } else {
                out.push_str(&format!(
                    "{:<28} {:>6} {:>14} {:>10} {:>6}  ({})\n",
                    e.name,
                    "no",
                    "-",
                    "-",
                    "n/a",
                    e.reason.as_deref().unwrap_or("")
                ));
            }
        }
        out.push_str(&format!(
            "empirical: max‖(g,h)‖ = {:.6e}, max‖(x,y)‖ = {:.6e}, max‖(x̂,ŷ)‖ = {:.6e}, Σt = {:.6e}, Σt² = {:.6e}\n",
            self.empirical_subgrad_bound,
            self.empirical_iterate_bound,
            self.empirical_average_bound,
            self.step_sum,
            self.step_sq_sum,
        ));
        out
    }

    /// Machine-readable CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,applicable,worst_violation,k_at_worst,pass,reason\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.name,
                e.applicable,
                if e.applicable {
                    format!("{:.16e}", e.worst_violation)
                } else {
                    String::new()
                },
                if e.applicable {
                    e.k_at_worst.to_string()
                } else {
                    String::new()
                },
                e.pass,
                e.reason.as_deref().unwrap_or(""),
            ));
        }
        out
    }
}

fn reference_point(p: &dyn SaddleProblem) -> Option<(f64, PrimalDualPoint)> {
    p.reference().and_then(|r| r.point.map(|pt| (r.value, pt)))
}

/// Per-iterate inequality at the given feasible probes (x, y):
///
///   t_k (f(x^k,y^k) − f(x,y^k)) ≤ ½(‖x^k−x‖² − ‖x^{k+1}−x‖²) + ½ t_k²‖g_k‖²
///
/// and the mirrored y-side. Requires a run with stored iterates.
pub fn check_lemma_per_iterate(
    run: &RunResult,
    p: &dyn SaddleProblem,
    probe_x: &Vector,
    probe_y: &Vector,
) -> Result<CheckEntry> {
    let name = "per_iterate_lemma";
    let Some(d) = run.diagnostics.as_ref() else {
        return Ok(CheckEntry::inapplicable(name, "iterates not stored"));
    };
    let mut worst = f64::NEG_INFINITY;
    let mut k_at_worst = 0;
    let k_max = d.iterates.len() - 1;
    for k in 0..k_max {
        let t_k = d.steps[k];
        let x_k = d.iterates[k].x();
        let y_k = d.iterates[k].y();
        let x_next = d.iterates[k + 1].x();
        let y_next = d.iterates[k + 1].y();
        let g_k = d.subgradients[k].x();
        let h_k = d.subgradients[k].y();
        let f_k = d.values[k];

        let lhs_x = t_k * (f_k - p.value(probe_x, y_k));
        let rhs_x = 0.5 * (x_k.dist(probe_x)?.powi(2) - x_next.dist(probe_x)?.powi(2))
            + 0.5 * t_k * t_k * g_k.norm().powi(2);
        let viol_x = lhs_x - rhs_x;

        let lhs_y = t_k * (p.value(x_k, probe_y) - f_k);
        let rhs_y = 0.5 * (y_k.dist(probe_y)?.powi(2) - y_next.dist(probe_y)?.powi(2))
            + 0.5 * t_k * t_k * h_k.norm().powi(2);
        let viol_y = lhs_y - rhs_y;

        let v = viol_x.max(viol_y);
        if v > worst {
            worst = v;
            k_at_worst = k;
        }
    }
    Ok(CheckEntry::from_worst(name, worst, k_at_worst))
}

/// Sandwich bound on the weighted running value around the saddle value:
/// for every k,
///
///   −(‖y⁰−y*‖² + Σ t_i²‖h_i‖²) / (2 Σ t_j)
///     ≤ Σ (t_i/Σt_j) f(x^i,y^i) − f(x*,y*)
///     ≤ (‖x⁰−x*‖² + Σ t_i²‖g_i‖²) / (2 Σ t_j).
pub fn check_weighted_sandwich(run: &RunResult, p: &dyn SaddleProblem) -> Result<CheckEntry> {
    let name = "weighted_value_sandwich";
    let Some(d) = run.diagnostics.as_ref() else {
        return Ok(CheckEntry::inapplicable(name, "iterates not stored"));
    };
    let Some((f_star, z_star)) = reference_point(p) else {
        return Ok(CheckEntry::inapplicable(name, "no reference saddle point"));
    };
    let x0 = d.iterates[0].x();
    let y0 = d.iterates[0].y();
    let dx0 = x0.dist(z_star.x())?.powi(2);
    let dy0 = y0.dist(z_star.y())?.powi(2);

    let mut worst = f64::NEG_INFINITY;
    let mut k_at_worst = 0;
    let mut wsum = 0.0;
    let mut fsum = 0.0;
    let mut gsq = 0.0;
    let mut hsq = 0.0;
    for k in 0..d.iterates.len() {
        let t_k = d.steps[k];
        wsum += t_k;
        fsum += t_k * d.values[k];
        gsq += t_k * t_k * d.subgradients[k].x().norm().powi(2);
        hsq += t_k * t_k * d.subgradients[k].y().norm().powi(2);

        let deviation = fsum / wsum - f_star;
        let lower = -(dy0 + hsq) / (2.0 * wsum);
        let upper = (dx0 + gsq) / (2.0 * wsum);
        let v = (lower - deviation).max(deviation - upper);
        if v > worst {
            worst = v;
            k_at_worst = k;
        }
    }
    Ok(CheckEntry::from_worst(name, worst, k_at_worst))
}

/// Sandwich bound on the value at the averaged point: for every k,
///
///   −(‖x⁰−x̂_k‖² + ‖y⁰−y*‖² + Σ t_i²(‖g_i‖²+‖h_i‖²)) / (2 Σ t_j)
///     ≤ f(x̂_k, ŷ_k) − f(x*,y*)
///     ≤ (‖x⁰−x*‖² + ‖y⁰−ŷ_k‖² + Σ t_i²(‖g_i‖²+‖h_i‖²)) / (2 Σ t_j).
pub fn check_avg_point_sandwich(run: &RunResult, p: &dyn SaddleProblem) -> Result<CheckEntry> {
    let name = "avg_point_sandwich";
    let Some(d) = run.diagnostics.as_ref() else {
        return Ok(CheckEntry::inapplicable(name, "iterates not stored"));
    };
    let Some((f_star, z_star)) = reference_point(p) else {
        return Ok(CheckEntry::inapplicable(name, "no reference saddle point"));
    };
    let x0 = d.iterates[0].x();
    let y0 = d.iterates[0].y();
    let dx0_star = x0.dist(z_star.x())?.powi(2);
    let dy0_star = y0.dist(z_star.y())?.powi(2);

    let mut worst = f64::NEG_INFINITY;
    let mut k_at_worst = 0;
    let mut wsum = 0.0;
    let mut ghsq = 0.0;
    for k in 0..d.iterates.len() {
        let t_k = d.steps[k];
        wsum += t_k;
        ghsq += t_k * t_k * norm(&d.subgradients[k]).powi(2);

        let avg = &d.averages[k];
        let f_avg = p.value(avg.x(), avg.y());
        let deviation = f_avg - f_star;
        let lower = -(x0.dist(avg.x())?.powi(2) + dy0_star + ghsq) / (2.0 * wsum);
        let upper = (dx0_star + y0.dist(avg.y())?.powi(2) + ghsq) / (2.0 * wsum);
        let v = (lower - deviation).max(deviation - upper);
        if v > worst {
            worst = v;
            k_at_worst = k;
        }
    }
    Ok(CheckEntry::from_worst(name, worst, k_at_worst))
}

/// Nonexpansiveness of the projected step towards the saddle point:
///
///   ‖z^{k+1}−z*‖² ≤ ‖z^k−z*‖² − 2 t_k ⟨z^k−z*, (g_k,h_k)⟩ + t_k²‖(g_k,h_k)‖².
pub fn check_per_step_contraction(run: &RunResult, p: &dyn SaddleProblem) -> Result<CheckEntry> {
    let name = "per_step_contraction";
    let Some(d) = run.diagnostics.as_ref() else {
        return Ok(CheckEntry::inapplicable(name, "iterates not stored"));
    };
    let Some((_, z_star)) = reference_point(p) else {
        return Ok(CheckEntry::inapplicable(name, "no reference saddle point"));
    };
    let mut worst = f64::NEG_INFINITY;
    let mut k_at_worst = 0;
    for k in 0..d.iterates.len() - 1 {
        let t_k = d.steps[k];
        let diff = crate::space::axpy(-1.0, &z_star, &d.iterates[k])?;
        let diff_next = crate::space::axpy(-1.0, &z_star, &d.iterates[k + 1])?;
        let ip = inner(&diff, &d.subgradients[k])?;
        let lhs = norm(&diff_next).powi(2);
        let rhs =
            norm(&diff).powi(2) - 2.0 * t_k * ip + t_k * t_k * norm(&d.subgradients[k]).powi(2);
        let v = lhs - rhs;
        if v > worst {
            worst = v;
            k_at_worst = k;
        }
    }
    Ok(CheckEntry::from_worst(name, worst, k_at_worst))
}

/// Monotonicity of the subgradient pair towards the saddle point:
/// ⟨(x^k,y^k)−(x*,y*), (g_k,h_k)⟩ ≥ 0 for every k.
pub fn check_monotonicity(run: &RunResult, p: &dyn SaddleProblem) -> Result<CheckEntry> {
    let name = "subgradient_monotonicity";
    let Some(d) = run.diagnostics.as_ref() else {
        return Ok(CheckEntry::inapplicable(name, "iterates not stored"));
    };
    let Some((_, z_star)) = reference_point(p) else {
        return Ok(CheckEntry::inapplicable(name, "no reference saddle point"));
    };
    let mut worst = f64::NEG_INFINITY;
    let mut k_at_worst = 0;
    for k in 0..d.iterates.len() {
        let diff = crate::space::axpy(-1.0, &z_star, &d.iterates[k])?;
        let v = -inner(&diff, &d.subgradients[k])?;
        if v > worst {
            worst = v;
            k_at_worst = k;
        }
    }
    Ok(CheckEntry::from_worst(name, worst, k_at_worst))
}

/// First recorded k at which each tracked metric is within eps of the
/// reference value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSummary {
    pub k_eps_weighted: Option<usize>,
    pub k_eps_avg: Option<usize>,
    pub k_eps_iter: Option<usize>,
}

/// Scan the trace for the first k with |metric − f*| ≤ eps, per metric.
/// `None` when the problem has no reference value.
pub fn convergence_summary(
    run: &RunResult,
    p: &dyn SaddleProblem,
    eps: f64,
) -> Option<ConvergenceSummary> {
    let f_star = p.reference()?.value;
    let first = |metric: &dyn Fn(&crate::solver::IterateRecord) -> f64| {
        run.trace
            .iter()
            .find(|r| (metric(r) - f_star).abs() <= eps)
            .map(|r| r.k)
    };
    Some(ConvergenceSummary {
        k_eps_weighted: first(&|r| r.f_weighted),
        k_eps_avg: first(&|r| r.f_avg_point),
        k_eps_iter: first(&|r| r.f_iter),
    })
}

/// Run every certificate check. Probes for the per-iterate inequality are
/// the reference saddle point when available, otherwise the final
/// averaged point (feasible by convexity).
pub fn certify(run: &RunResult, p: &dyn SaddleProblem) -> Result<CertificateReport> {
    let (probe_x, probe_y) = match reference_point(p) {
        Some((_, z_star)) => (z_star.x().clone(), z_star.y().clone()),
        None => (run.final_average.x().clone(), run.final_average.y().clone()),
    };
    let entries = vec![
        check_lemma_per_iterate(run, p, &probe_x, &probe_y)?,
        check_weighted_sandwich(run, p)?,
        check_avg_point_sandwich(run, p)?,
        check_per_step_contraction(run, p)?,
        check_monotonicity(run, p)?,
    ];
    Ok(CertificateReport {
        entries,
        tolerance: CHECK_TOLERANCE,
        empirical_subgrad_bound: run.empirical_subgrad_bound,
        empirical_iterate_bound: run.empirical_iterate_bound,
        empirical_average_bound: run.empirical_average_bound,
        step_sum: run.step_sum,
        step_sq_sum: run.step_sq_sum,
    })
}
