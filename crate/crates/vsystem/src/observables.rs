//! Fluorescence observables: what a detector sees of the Fano coherence.
//!
//! A V-system with parallel transition dipoles along `x` radiates the
//! angular pattern
//!
//! ```text
//! I(θ, φ) = I⁰ [ (1 + cos²θ)/2 (ρ_aa + ρ_bb)
//!              + sin²θ (cos 2φ ρ^R_ab − sin 2φ ρ^I_ab) ]
//! ```
//!
//! where `I⁰` collects refractive index, transition frequency, and detector
//! distance into one positive prefactor.  The coherence term integrates to
//! zero over the sphere, so the total emission `(16π/3) I⁰ ρ_aa` (for equal
//! excited populations) sees only the population, while a fixed-angle
//! detector sees the coherence directly.
//!
//! The coherence nevertheless leaves a fingerprint in the total intensity:
//! relative to the interference-free (canonical) steady state at the same
//! pump rate, the polarized drive keeps a fraction `ρ^R_ab` of the excitation
//! locked in the ground-coherence cycle, suppressing the fluorescence by
//! exactly that fraction.  [`relative_intensity_difference`] computes the
//! suppression and [`coherence_free_reference`] propagates the comparison
//! dynamics used in transient intensity-ratio traces.

use crate::dynamics::{propagate, PropagateOptions, TimeSeries};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::params::{DensityState, VParams};
use crate::steadystate::{canonical_population, closed_form};

/// Detector geometry and calibration for [`angular_intensity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionConfig {
    i0: f64,
    theta: f64,
    phi: f64,
}

impl EmissionConfig {
    /// Builds a config, requiring `i0 > 0`, `theta` in `[0, pi]`, and `phi`
    /// in `[0, 2 pi)`.
    pub fn new(i0: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(i0 > 0.0) {
            return Err(Error::NonpositiveFrequency {
                name: "i0",
                value: i0,
            });
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidAngle {
                name: "theta",
                value: theta,
            });
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidAngle {
                name: "phi",
                value: phi,
            });
        }
        Ok(EmissionConfig { i0, theta, phi })
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Emitted intensity into the direction `(theta, phi)`.
pub fn angular_intensity(state: &DensityState, cfg: &EmissionConfig) -> f64 {
    let cos_t = cfg.theta.cos();
    let sin_t2 = cfg.theta.sin().powi(2);
    let pops = state.rho_aa + state.rho_bb;
    let coherence = (2.0 * cfg.phi).cos() * state.re_ab - (2.0 * cfg.phi).sin() * state.im_ab;
    cfg.i0 * (0.5 * (1.0 + cos_t * cos_t) * pops + sin_t2 * coherence)
}

/// Solid-angle integral of the emission, `(16π/3) i0 ρ_aa`.  Defined for
/// equal excited populations; the coherence never contributes because its
/// angular pattern averages to zero.
pub fn total_intensity(state: &DensityState, i0: f64) -> Result<f64> {
    if !state.is_population_symmetric(DensityState::DEFAULT_TOL) {
        return Err(Error::AsymmetricState {
            rho_aa: state.rho_aa,
            rho_bb: state.rho_bb,
        });
    }
    Ok(16.0 * std::f64::consts::PI / 3.0 * i0 * state.rho_aa)
}

/// Fractional suppression of the steady-state fluorescence under polarized
/// drive relative to the interference-free reference at the same pump rate:
/// `ΔI/I = (ρ^c − ρ_aa)/ρ^c`.  For the radiative-only system this equals the
/// stationary coherence `ρ^R_ab` identically; with extra relaxation or
/// dephasing it remains the operational definition.  Zero pump means zero
/// emission on both sides, reported as zero difference.
pub fn relative_intensity_difference(params: &VParams) -> Result<f64> {
    let canonical = canonical_population(params)?;
    if canonical == 0.0 {
        return Ok(0.0);
    }
    let ss = closed_form(params)?;
    let diff = (canonical - ss.rho_aa) / canonical;
    debug_assert!(
        params.gamma_rel() != 0.0 || params.gamma_d() != 0.0 || (diff - ss.re_ab).abs() <= 1e-12,
        "suppression {diff} drifted from the stationary coherence {}",
        ss.re_ab
    );
    Ok(diff)
}

/// Propagates the interference-free population equation
/// `dρ/dt = −(3r + γ)ρ + r` from `initial`, the comparison trajectory for
/// intensity-ratio traces.  With `isotropic_rescaling` the pump is
/// quadrupled, modelling an unpolarized bath that drives each transition
/// four times as fast; default calibration keeps the same `r`, whose steady
/// state is the canonical population `r/(3r+γ)`.
pub fn coherence_free_reference(
    params: &VParams,
    initial: &DensityState,
    t_end: f64,
    opts: &PropagateOptions,
    isotropic_rescaling: bool,
) -> Result<TimeSeries> {
    let gen = Generator::coherence_free(params, isotropic_rescaling)?;
    propagate(&gen, initial, t_end, opts)
}

/// Pointwise ratio of total emitted intensities of two trajectories on the
/// same time grid (polarized over reference).  Prefactors cancel, leaving
/// the population ratio; where both populations vanish (the common ground
/// start) the ratio is taken as 1, its analytic limit.
pub fn fluorescence_ratio(polarized: &TimeSeries, reference: &TimeSeries) -> Result<Vec<f64>> {
    if polarized.times() != reference.times() {
        return Err(Error::ConfigMismatch {
            reason: "intensity ratio needs both trajectories on the same time grid".into(),
        });
    }
    Ok(polarized
        .states()
        .iter()
        .zip(reference.states())
        .map(|(p, r)| {
            let num = p.rho_aa + p.rho_bb;
            let den = r.rho_aa + r.rho_bb;
            if den == 0.0 && num == 0.0 {
                1.0
            } else {
                num / den
            }
        })
        .collect())
}
