//! Fixed points of the V-system and the coherence measures built on them.
//!
//! For symmetric decay the fixed point of the reduced system has the exact
//! rational form (writing `r = nbar*γ`, `u = r + γ + γ_d`, `Γ = gamma_rel`):
//!
//! ```text
//! D      = (3r+γ+Γ)(Δ² + u²) − 3r²u
//! ρ_aa   = r (Δ² + (γ+γ_d) u) / D
//! ρ^R_ab = r (γ+Γ) u / D
//! ρ^I_ab = −Δ/u · ρ^R_ab
//! ```
//!
//! `D > 0` at all valid parameters, so the state is unique.  Two independent
//! routes to the same numbers are kept side by side: [`closed_form`]
//! evaluates these expressions, [`solve_linear`] inverts the assembled drift
//! matrix; tests and the acceptance suite hold them together (and against
//! long-time propagation) everywhere on the working grids.
//!
//! The radiative-only fixed point satisfies the population-coherence
//! identity `ρ^R = (ρ^c − ρ_aa)/ρ^c` against the canonical population
//! `ρ^c = r/(3r+γ)` of the interference-free system, and the ratio
//! `C = ρ^R/ρ_aa = 1/(1 + γ_d/γ + Δ²/(γ u))` is bounded by 1.  Pure
//! dephasing is non-monotone: for `Δ > r + γ` the coherence peaks at
//! `γ_d* = Δ − r − γ`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::generator::{determinant, Generator};
use crate::params::{DensityState, VParams};

/// Which route produced a steady state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    LinearSolve,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::ClosedForm => write!(f, "closed-form"),
            Method::LinearSolve => write!(f, "linear-solve"),
        }
    }
}

/// A steady state with its defect `‖A x + d‖` and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub rho_aa: f64,
    pub rho_bb: f64,
    pub re_ab: f64,
    pub im_ab: f64,
    pub rho_gg: f64,
    pub residual: f64,
    pub method: Method,
}

impl SteadyState {
    pub fn density_state(&self) -> DensityState {
        DensityState {
            rho_gg: self.rho_gg,
            rho_aa: self.rho_aa,
            rho_bb: self.rho_bb,
            re_ab: self.re_ab,
            im_ab: self.im_ab,
        }
    }

    /// Coherence-to-population ratio of this state.
    pub fn coherence_ratio(&self) -> f64 {
        self.re_ab / self.rho_aa
    }
}

/// Exact rational fixed point for symmetric decay rates.
pub fn closed_form(params: &VParams) -> Result<SteadyState> {
    let gamma = params.sym_gamma()?;
    let r = params.nbar() * gamma;
    let delta = params.delta();
    let grel = params.gamma_rel();
    let u = r + gamma + params.gamma_d();
    let d = (3.0 * r + gamma + grel) * (delta * delta + u * u) - 3.0 * r * r * u;
    let rho_aa = r * (delta * delta + (gamma + params.gamma_d()) * u) / d;
    let re_ab = r * (gamma + grel) * u / d;
    let im_ab = -delta / u * re_ab;
    let state = SteadyState {
        rho_aa,
        rho_bb: rho_aa,
        re_ab,
        im_ab,
        rho_gg: 1.0 - 2.0 * rho_aa,
        residual: 0.0,
        method: Method::ClosedForm,
    };
    let gen = Generator::symmetric(params)?;
    let x = DVector::from_column_slice(&[state.rho_aa, state.re_ab, state.im_ab]);
    Ok(SteadyState {
        residual: gen.residual(&x),
        ..state
    })
}

/// Generic fixed point `x = -A⁻¹ d` of an assembled generator.  Refuses
/// near-singular systems: for degenerate splitting under strong pumping the
/// long-time state is population-locked and initial-condition dependent, so
/// reporting the algebraic solution would be misleading.
pub fn solve_linear(gen: &Generator) -> Result<SteadyState> {
    let det = gen.det();
    let threshold = gen.singularity_threshold();
    if det.abs() < threshold {
        return Err(Error::SingularGenerator {
            determinant: det,
            threshold,
        });
    }
    let x = gen
        .a_matrix()
        .clone()
        .lu()
        .solve(&(-gen.drive()))
        .ok_or(Error::SingularGenerator {
            determinant: det,
            threshold,
        })?;
    let residual = gen.residual(&x);
    let s = gen.vec_to_state(&x);
    Ok(SteadyState {
        rho_aa: s.rho_aa,
        rho_bb: s.rho_bb,
        re_ab: s.re_ab,
        im_ab: s.im_ab,
        rho_gg: s.rho_gg,
        residual,
        method: Method::LinearSolve,
    })
}

/// Default entry point: singularity-gated dispatch to [`closed_form`] for
/// symmetric decay (exact, branch-free) and to [`solve_linear`] on the
/// general 4-dim system otherwise.
pub fn steady_state(params: &VParams) -> Result<SteadyState> {
    let det = determinant(params)?;
    if det.singular {
        return Err(Error::SingularGenerator {
            determinant: det.value,
            threshold: det.threshold,
        });
    }
    if params.is_symmetric() {
        closed_form(params)
    } else {
        solve_linear(&Generator::general(params)?)
    }
}

/// Excited population `r/(3r+γ)` of the interference-free (canonical)
/// reference at the same pump strength.
pub fn canonical_population(params: &VParams) -> Result<f64> {
    let gamma = params.sym_gamma()?;
    let r = params.nbar() * gamma;
    Ok(r / (3.0 * r + gamma))
}

/// Residual of the identity `ρ^R = (ρ^c − ρ_aa)/ρ^c` linking the stationary
/// coherence to the population deficit below the canonical value.  Exact (up
/// to rounding) whenever relaxation is purely radiative, *including* with
/// pure dephasing: substituting `u = r + γ + γ_d` into the closed forms, the
/// deficit `ρ^c − ρ_aa` reduces to `(r/(3r+γ)) · rγu/D`, which is `ρ^c ρ^R`
/// for every `γ_d`.  Nonradiative relaxation `Γ > 0` breaks the identity and
/// the returned value measures by how much.
pub fn population_coherence_identity(params: &VParams) -> Result<f64> {
    let ss = closed_form(params)?;
    let canonical = canonical_population(params)?;
    if canonical == 0.0 {
        // No pump: both the coherence and the population deficit vanish.
        return Ok(ss.re_ab.abs());
    }
    Ok((ss.re_ab - (canonical - ss.rho_aa) / canonical).abs())
}

/// Coherence-to-population ratio
/// `C = ρ^R/ρ_aa = (γ+Γ) u / (Δ² + (γ+γ_d) u)` with `u = r + γ + γ_d`,
/// evaluated in its rational form so the `nbar → 0` limit is well defined.
/// Without relaxation this is `1/(1 + γ_d/γ + Δ²/(γ u))`, which never
/// exceeds 1.
pub fn c_ratio(params: &VParams) -> Result<f64> {
    let gamma = params.sym_gamma()?;
    let u = params.nbar() * gamma + gamma + params.gamma_d();
    Ok((gamma + params.gamma_rel()) * u
        / (params.delta() * params.delta() + (gamma + params.gamma_d()) * u))
}

/// First derivatives of the radiative-only stationary coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceDerivatives {
    /// `∂ρ^R/∂nbar` at fixed `Δ/γ`; strictly positive.
    pub wrt_nbar: f64,
    /// `∂ρ^R/∂(Δ/γ)` at fixed `nbar`; zero at `Δ = 0`, strictly negative
    /// for `Δ > 0`.
    pub wrt_delta: f64,
}

/// Analytic derivatives of `ρ^R(nbar, Δ/γ)` for the radiative-only symmetric
/// system.  Writing `x = nbar`, `y = Δ/γ`, the coherence is
/// `ρ^R = x(x+1) / P` with `P = (3x+1) y² + 4x² + 5x + 1`, whence
///
/// ```text
/// ∂ρ^R/∂x = [ (3x²+2x+1) y² + (x+1)² ] / P²
/// ∂ρ^R/∂y = −2 x (x+1) (3x+1) y / P²
/// ```
///
/// Both follow from the quotient rule and are pinned against central finite
/// differences of [`closed_form`] in the tests; the signs prove `ρ^R` has no
/// interior extrema in either variable.
pub fn derivatives(params: &VParams) -> Result<CoherenceDerivatives> {
    let gamma = params.sym_gamma()?;
    if params.gamma_rel() != 0.0 || params.gamma_d() != 0.0 {
        return Err(Error::RegimeMismatch {
            detail: "coherence derivatives are defined for the radiative-only system \
                     (gamma_rel = gamma_d = 0)"
                .into(),
        });
    }
    let x = params.nbar();
    let y = params.delta() / gamma;
    let p = (3.0 * x + 1.0) * y * y + 4.0 * x * x + 5.0 * x + 1.0;
    let p2 = p * p;
    let wrt_nbar = ((3.0 * x * x + 2.0 * x + 1.0) * y * y + (x + 1.0) * (x + 1.0)) / p2;
    let wrt_delta = -2.0 * x * (x + 1.0) * (3.0 * x + 1.0) * y / p2;
    Ok(CoherenceDerivatives {
        wrt_nbar,
        wrt_delta,
    })
}

/// Dephasing rate maximizing the stationary coherence: `γ_d* = Δ − r − γ`
/// when that is positive, absent otherwise (then `ρ^R` decreases
/// monotonically in `γ_d`).
pub fn optimal_dephasing(params: &VParams) -> Result<Option<f64>> {
    let gamma = params.sym_gamma()?;
    let root = params.delta() - params.nbar() * gamma - gamma;
    Ok(if root > 0.0 { Some(root) } else { None })
}
