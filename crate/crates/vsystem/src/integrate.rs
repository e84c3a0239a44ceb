//! Adaptive Dormand-Prince 5(4) integration with dense output.
//!
//! The systems integrated here are tiny (1 to 4 dimensions) affine linear
//! ODEs, so a classic explicit embedded pair with the standard fourth-order
//! interpolant is both sufficient and fully deterministic.  Step-size control
//! follows the usual elementary-controller recipe: RMS error scaled by
//! `abs_tol + rel_tol * |x|`, safety factor 0.9, growth clamped to [0.2, 5].

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::generator::Generator;

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// Fifth-order weights (also the last stage row: first-same-as-last).
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the fifth- and the embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output coefficients of the standard fourth-order interpolant.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const MAX_STEPS: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: u64,
    pub rejected: u64,
}

/// Integrates `dx/dt = A x + d` from `t = 0`, returning the solution at each
/// of the `sample_times` (which must be non-decreasing and non-negative).
/// Samples are produced by the dense interpolant of whichever accepted step
/// covers them, so the cost is governed by the dynamics, not the sampling.
pub fn integrate_affine(
    gen: &Generator,
    x0: DVector<f64>,
    sample_times: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(Vec<DVector<f64>>, Stats)> {
    debug_assert!(sample_times.windows(2).all(|w| w[0] <= w[1]));
    debug_assert!(sample_times.first().map_or(true, |&t| t >= 0.0));
    let n = gen.dim();
    debug_assert_eq!(x0.len(), n);
    let t_end = sample_times.last().copied().unwrap_or(0.0);

    let mut out = Vec::with_capacity(sample_times.len());
    let mut next_sample = 0;
    while next_sample < sample_times.len() && sample_times[next_sample] <= 0.0 {
        out.push(x0.clone());
        next_sample += 1;
    }
    if next_sample == sample_times.len() {
        return Ok((out, Stats::default()));
    }

    let mut t = 0.0f64;
    let mut x = x0;
    let mut k1 = DVector::zeros(n);
    let mut k2 = DVector::zeros(n);
    let mut k3 = DVector::zeros(n);
    let mut k4 = DVector::zeros(n);
    let mut k5 = DVector::zeros(n);
    let mut k6 = DVector::zeros(n);
    let mut k7 = DVector::zeros(n);
    let mut ytmp = DVector::zeros(n);
    let mut x_new = DVector::zeros(n);

    gen.apply(&x, &mut k1);
    let mut h = initial_step(gen, &x, &k1, t_end, rel_tol, abs_tol);
    let mut stats = Stats::default();

    while t < t_end {
        if stats.accepted + stats.rejected > MAX_STEPS {
            return Err(Error::StepFailure { t, step: h });
        }
        if h < 1e-14 * t_end.max(1.0) {
            return Err(Error::StepFailure { t, step: h });
        }
        let last = h >= t_end - t;
        if last {
            h = t_end - t;
        }

        for i in 0..n {
            ytmp[i] = x[i] + h * A21 * k1[i];
        }
        gen.apply(&ytmp, &mut k2);
        for i in 0..n {
            ytmp[i] = x[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        gen.apply(&ytmp, &mut k3);
        for i in 0..n {
            ytmp[i] = x[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        gen.apply(&ytmp, &mut k4);
        for i in 0..n {
            ytmp[i] = x[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        gen.apply(&ytmp, &mut k5);
        for i in 0..n {
            ytmp[i] =
                x[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        gen.apply(&ytmp, &mut k6);
        for i in 0..n {
            x_new[i] = x[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        gen.apply(&x_new, &mut k7);

        let mut err_sq = 0.0;
        for i in 0..n {
            let err_i =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = abs_tol + rel_tol * x[i].abs().max(x_new[i].abs());
            err_sq += (err_i / scale) * (err_i / scale);
        }
        let mut err = (err_sq / n as f64).sqrt();
        if !err.is_finite() {
            err = 1e10;
        }

        if err <= 1.0 {
            stats.accepted += 1;
            if next_sample < sample_times.len() && sample_times[next_sample] <= t + h {
                let interp = DenseInterpolant::new(h, &x, &x_new, &k1, &k3, &k4, &k5, &k6, &k7);
                while next_sample < sample_times.len() && sample_times[next_sample] <= t + h {
                    let theta = ((sample_times[next_sample] - t) / h).clamp(0.0, 1.0);
                    out.push(interp.eval(theta));
                    next_sample += 1;
                }
            }
            t += h;
            std::mem::swap(&mut x, &mut x_new);
            std::mem::swap(&mut k1, &mut k7);
            if last && next_sample >= sample_times.len() {
                break;
            }
            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            h *= factor;
        } else {
            stats.rejected += 1;
            h *= (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
        }
    }

    // Trailing samples that coincide with t_end up to roundoff.
    while next_sample < sample_times.len() {
        out.push(x.clone());
        next_sample += 1;
    }
    Ok((out, stats))
}

/// Standard starting-step heuristic: balance the scaled sizes of the state,
/// its derivative, and an Euler estimate of the second derivative.
fn initial_step(
    gen: &Generator,
    x0: &DVector<f64>,
    f0: &DVector<f64>,
    t_end: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> f64 {
    let sc_norm = |v: &DVector<f64>, reference: &DVector<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..v.len() {
            let scale = abs_tol + rel_tol * reference[i].abs();
            s += (v[i] / scale) * (v[i] / scale);
        }
        (s / v.len() as f64).sqrt()
    };
    let d0 = sc_norm(x0, x0);
    let d1 = sc_norm(f0, x0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let x1 = x0 + h0 * f0;
    let mut f1 = DVector::zeros(x0.len());
    gen.apply(&x1, &mut f1);
    let d2 = sc_norm(&(&f1 - f0), x0) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(t_end)
}

/// Fourth-order interpolant over one accepted step, evaluated at
/// `theta ∈ [0, 1]`.
struct DenseInterpolant {
    r1: DVector<f64>,
    r2: DVector<f64>,
    r3: DVector<f64>,
    r4: DVector<f64>,
    r5: DVector<f64>,
}

impl DenseInterpolant {
    #[allow(clippy::too_many_arguments)]
    fn new(
        h: f64,
        x: &DVector<f64>,
        x_new: &DVector<f64>,
        k1: &DVector<f64>,
        k3: &DVector<f64>,
        k4: &DVector<f64>,
        k5: &DVector<f64>,
        k6: &DVector<f64>,
        k7: &DVector<f64>,
    ) -> Self {
        let ydiff = x_new - x;
        let bspl = h * k1 - &ydiff;
        let r4 = &ydiff - h * k7 - &bspl;
        let r5 = h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7);
        DenseInterpolant {
            r1: x.clone(),
            r2: ydiff,
            r3: bspl,
            r4,
            r5,
        }
    }

    fn eval(&self, theta: f64) -> DVector<f64> {
        let theta1 = 1.0 - theta;
        &self.r1 + theta * (&self.r2 + theta1 * (&self.r3 + theta * (&self.r4 + theta1 * &self.r5)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::VParams;

    fn linspace(t_end: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
    }

    /// With nbar = 0 the excited sector decays freely: the population falls
    /// as exp(-γt) and the coherence spirals as exp(-(γ+γ_d)t - iΔt).
    #[test]
    fn free_decay_matches_analytic_solution() {
        let params = VParams::new(1.0, 1.0, 0.0, 3.0, 0.0, 0.5).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let x0 = DVector::from_column_slice(&[0.3, 0.2, -0.1]);
        let times = linspace(4.0, 41);
        let (sol, stats) = integrate_affine(&gen, x0.clone(), &times, 1e-12, 1e-14).unwrap();
        assert!(stats.accepted > 0);
        for (i, &t) in times.iter().enumerate() {
            let pop = 0.3 * (-t).exp();
            let decay = (-1.5 * t).exp();
            let (s, c) = (3.0 * t).sin_cos();
            let re = decay * (0.2 * c - 0.1 * s);
            let im = decay * (-0.1 * c - 0.2 * s);
            assert!(
                (sol[i][0] - pop).abs() < 1e-11,
                "t={t}: pop {} vs {pop}",
                sol[i][0]
            );
            assert!(
                (sol[i][1] - re).abs() < 1e-11,
                "t={t}: re {} vs {re}",
                sol[i][1]
            );
            assert!(
                (sol[i][2] - im).abs() < 1e-11,
                "t={t}: im {} vs {im}",
                sol[i][2]
            );
        }
    }

    #[test]
    fn no_drive_from_ground_state_stays_zero() {
        let params = VParams::symmetric(0.0, 1.0).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let times = linspace(10.0, 11);
        let (sol, _) = integrate_affine(&gen, DVector::zeros(3), &times, 1e-10, 1e-12).unwrap();
        for s in &sol {
            assert_eq!(s.norm(), 0.0);
        }
    }

    #[test]
    fn halving_tolerance_converges() {
        let params = VParams::symmetric(1.0, 1.0).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let times = vec![0.0, 8.0];
        for rel in [1e-6, 1e-8, 1e-10] {
            let (coarse, _) =
                integrate_affine(&gen, DVector::zeros(3), &times, rel, rel * 1e-2).unwrap();
            let (fine, _) =
                integrate_affine(&gen, DVector::zeros(3), &times, rel / 2.0, rel * 5e-3).unwrap();
            let diff = (coarse.last().unwrap() - fine.last().unwrap()).norm();
            assert!(diff < rel, "rel_tol {rel}: diff {diff}");
        }
    }

    #[test]
    fn dense_output_consistent_with_tight_reintegration() {
        let params = VParams::symmetric(0.5, 8.0).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let times = linspace(6.0, 257);
        let (coarse, _) = integrate_affine(&gen, DVector::zeros(3), &times, 1e-9, 1e-11).unwrap();
        let (tight, _) = integrate_affine(&gen, DVector::zeros(3), &times, 1e-13, 1e-15).unwrap();
        for i in 0..times.len() {
            let diff = (&coarse[i] - &tight[i]).norm();
            assert!(diff < 1e-8, "t={}: diff {diff}", times[i]);
        }
    }

    #[test]
    fn unreachable_tolerance_reports_step_failure() {
        let params = VParams::symmetric(1.0, 1.0).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let times = vec![0.0, 1.0];
        let err = integrate_affine(
            &gen,
            DVector::from_column_slice(&[0.1, 0.05, 0.0]),
            &times,
            1e-300,
            1e-300,
        )
        .unwrap_err();
        assert!(matches!(err, Error::StepFailure { .. }));
    }

    #[test]
    fn samples_at_zero_and_endpoint_are_exact() {
        let params = VParams::symmetric(2.0, 1.0).unwrap();
        let gen = Generator::symmetric(&params).unwrap();
        let times = vec![0.0, 0.0, 5.0];
        let x0 = DVector::from_column_slice(&[0.1, 0.0, 0.0]);
        let (sol, _) = integrate_affine(&gen, x0.clone(), &times, 1e-10, 1e-12).unwrap();
        assert_eq!(sol[0], x0);
        assert_eq!(sol[1], x0);
        assert_eq!(sol.len(), 3);
    }
}
