//! Two-site excitation transport driven by two independent baths.
//!
//! Two coupled qubits share at most one excitation; the hopping `g` splits
//! the single-excitation eigenstates by `Δ = 2g`, so together with the ground
//! state they form exactly the V-system of the rest of this crate.  Each bath
//! `α ∈ {L, R}` pumps and damps both eigenstates with flat coupling spectra
//! `γ^α_ii` and occupancy `n̄_α`, and drives the `a`–`b` coherence through
//! cross terms weighted by an interference factor `f_α ∈ [0, 1]`
//! (`γ^α_ab = √f_α √(γ^α_aa γ^α_bb)`).  Interference acts on the
//! occupancy-driven (stimulated) rates; emitted quanta go into
//! distinguishable bath modes, so no spontaneous cross terms arise.  The
//! aggregated rates are
//!
//! ```text
//! r_i    = Σ_α n̄_α γ^α_ii                (stimulated, per level)
//! γ_i    = Σ_α γ^α_ii                    (spontaneous, per level)
//! c      = Σ_α √f_α √(r^α_aa r^α_bb)     (coherence pump/damping)
//! σ      = (r_a + r_b + γ_a + γ_b) / 2   (coherence decay)
//! ```
//!
//! and the drift over `[ρ_aa, ρ_bb, ρ^R, ρ^I]` has exactly the shape of the
//! general V-system generator.  With the left bath fully interfering and the
//! right bath empty (`f_L = 1`, `f_R = 0`, `n̄_R = 0`) the model reduces
//! entry-by-entry to the V-system driven by polarized incoherent light; the
//! reduced occupancy `r_i/γ_i = n̄_L γ^L_ii/(γ^L_ii + γ^R_ii)` is deliberately
//! smaller than the bath occupancy because the right bath adds decay without
//! driving, breaking the fluctuation-dissipation tie `r = n̄γ`.
//!
//! The stationary coherence carries the energy current: the flux from the
//! driven site into the undriven one is `J = 4g·Im ρ_ab`, so a nonzero
//! imaginary coherence is equivalent to heat transport.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::generator::{Basis, Generator};
use crate::params::{DensityState, VParams};

/// Parameters of the two-qubit, two-bath model.  Energies and rates are in
/// units of the reference decay rate; `eps_a`, `eps_b` are the excited
/// eigenstate energies above the ground state and must straddle the hopping:
/// `eps_a - eps_b = 2g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBathParams {
    pub eps_a: f64,
    pub eps_b: f64,
    /// Inter-qubit hopping; the eigenstate splitting is `Δ = 2g`.
    pub g: f64,
    pub nbar_l: f64,
    pub nbar_r: f64,
    pub gamma_l_aa: f64,
    pub gamma_l_bb: f64,
    pub gamma_r_aa: f64,
    pub gamma_r_bb: f64,
    /// Interference weight of the left bath, in `[0, 1]`.
    pub f_l: f64,
    /// Interference weight of the right bath, in `[0, 1]`.
    pub f_r: f64,
}

impl TwoBathParams {
    /// Polarized-drive equivalent of a V-system: the left bath carries all
    /// the interference and all the occupancy, the right bath only decay.
    /// Splitting each decay rate in half and doubling the occupancy keeps
    /// every aggregated rate bit-identical to the V-system one.  Requires a
    /// model without extra relaxation or dephasing channels, which the
    /// two-bath system does not have.
    pub fn from_vsystem(params: &VParams, eps_b: f64) -> Result<Self> {
        if params.gamma_rel() != 0.0 || params.gamma_d() != 0.0 {
            return Err(Error::ConfigMismatch {
                reason: "the two-bath model has no relaxation or pure-dephasing channel; \
                         gamma_rel and gamma_d must be zero"
                    .into(),
            });
        }
        let delta = params.delta();
        let tp = TwoBathParams {
            eps_a: eps_b + delta,
            eps_b,
            g: 0.5 * delta,
            nbar_l: 2.0 * params.nbar(),
            nbar_r: 0.0,
            gamma_l_aa: 0.5 * params.gamma_a(),
            gamma_l_bb: 0.5 * params.gamma_b(),
            gamma_r_aa: 0.5 * params.gamma_a(),
            gamma_r_bb: 0.5 * params.gamma_b(),
            f_l: 1.0,
            f_r: 0.0,
        };
        tp.validate()?;
        Ok(tp)
    }

    /// Checks ranges and the splitting-hopping relation.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("nbar_L", self.nbar_l),
            ("nbar_R", self.nbar_r),
            ("gamma_L_aa", self.gamma_l_aa),
            ("gamma_L_bb", self.gamma_l_bb),
            ("gamma_R_aa", self.gamma_r_aa),
            ("gamma_R_bb", self.gamma_r_bb),
            ("g", self.g),
        ] {
            if !(value >= 0.0) {
                return Err(Error::NegativeRate { name, value });
            }
        }
        for (name, value) in [("eps_a", self.eps_a), ("eps_b", self.eps_b)] {
            if !(value > 0.0) {
                return Err(Error::NonpositiveFrequency { name, value });
            }
        }
        for (name, value) in [("f_L", self.f_l), ("f_R", self.f_r)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ConfigMismatch {
                    reason: format!("interference weight {name} must lie in [0, 1], got {value}"),
                });
            }
        }
        let splitting = self.eps_a - self.eps_b;
        let scale = self
            .eps_a
            .abs()
            .max(self.eps_b.abs())
            .max(2.0 * self.g)
            .max(1.0);
        if (splitting - 2.0 * self.g).abs() > 1e-9 * scale {
            return Err(Error::ConfigMismatch {
                reason: format!(
                    "eigenstate splitting eps_a - eps_b = {splitting} must equal twice the \
                     hopping 2g = {}",
                    2.0 * self.g
                ),
            });
        }
        Ok(())
    }

    /// Total stimulated rates `r_i`, spontaneous rates `γ_i`, interference
    /// cross rate `c`, and the splitting `Δ = 2g`.
    fn aggregated(&self) -> (f64, f64, f64, f64, f64, f64) {
        let rl_aa = self.nbar_l * self.gamma_l_aa;
        let rl_bb = self.nbar_l * self.gamma_l_bb;
        let rr_aa = self.nbar_r * self.gamma_r_aa;
        let rr_bb = self.nbar_r * self.gamma_r_bb;
        let ra = rl_aa + rr_aa;
        let rb = rl_bb + rr_bb;
        let ga = self.gamma_l_aa + self.gamma_r_aa;
        let gb = self.gamma_l_bb + self.gamma_r_bb;
        let cross =
            self.f_l.sqrt() * (rl_aa * rl_bb).sqrt() + self.f_r.sqrt() * (rr_aa * rr_bb).sqrt();
        (ra, rb, ga, gb, cross, 2.0 * self.g)
    }
}

/// Trace-eliminated affine system over `[ρ_aa, ρ_bb, ρ^R, ρ^I]` for the
/// two-bath model.  The assembly mirrors the general V-system generator
/// term by term, so the polarized-drive configuration reproduces it without
/// any rounding slack.
pub fn build_transport_generator(tp: &TwoBathParams) -> Result<Generator> {
    tp.validate()?;
    let (ra, rb, ga, gb, cross, delta) = tp.aggregated();
    let sigma = 0.5 * (ra + rb + ga + gb);
    let a = DMatrix::from_row_slice(
        4,
        4,
        &[
            -(2.0 * ra + ga),
            -ra,
            -cross,
            0.0,
            -rb,
            -(2.0 * rb + gb),
            -cross,
            0.0,
            -1.5 * cross,
            -1.5 * cross,
            -sigma,
            delta,
            0.0,
            0.0,
            -delta,
            -sigma,
        ],
    );
    let drive = DVector::from_column_slice(&[ra, rb, cross, 0.0]);
    Ok(Generator::from_parts(
        a,
        drive,
        Basis::GeneralTraceEliminated,
        delta,
        sigma,
    ))
}

/// Maps the polarized-drive configuration (`f_L = 1`, `f_R = 0`, `n̄_R = 0`)
/// onto V-system parameters with `γ_i = γ^L_ii + γ^R_ii` and
/// `r_i = n̄_L γ^L_ii`.  The returned occupancy is the effective ratio
/// `r_i/γ_i`, not the bath occupancy `n̄_L`: the undriven bath adds decay
/// without pumping.  Both levels must share the ratio, otherwise no single
/// occupancy represents the system.
pub fn reduce_to_vsystem(tp: &TwoBathParams) -> Result<VParams> {
    tp.validate()?;
    if tp.f_l != 1.0 || tp.f_r != 0.0 || tp.nbar_r != 0.0 {
        return Err(Error::ConfigMismatch {
            reason: format!(
                "reduction requires f_L = 1, f_R = 0, nbar_R = 0 (fully interfering drive, \
                 empty second bath); got f_L = {}, f_R = {}, nbar_R = {}",
                tp.f_l, tp.f_r, tp.nbar_r
            ),
        });
    }
    let gamma_a = tp.gamma_l_aa + tp.gamma_r_aa;
    let gamma_b = tp.gamma_l_bb + tp.gamma_r_bb;
    if gamma_a <= 0.0 || gamma_b <= 0.0 {
        return Err(Error::NonpositiveDecay {
            name: if gamma_a <= 0.0 { "gamma_a" } else { "gamma_b" },
            value: gamma_a.min(gamma_b),
        });
    }
    let ratio_a = tp.nbar_l * tp.gamma_l_aa / gamma_a;
    let ratio_b = tp.nbar_l * tp.gamma_l_bb / gamma_b;
    let scale = ratio_a.abs().max(ratio_b.abs());
    if (ratio_a - ratio_b).abs() > 1e-12 * scale {
        return Err(Error::ConfigMismatch {
            reason: format!(
                "levels carry different pump-to-decay ratios ({ratio_a} vs {ratio_b}); \
                 no single occupancy represents this system"
            ),
        });
    }
    VParams::new(gamma_a, gamma_b, ratio_a, 2.0 * tp.g, 0.0, 0.0)
}

/// Energy flux from the driven qubit into the undriven one, `J = 4g·Im ρ_ab`,
/// in units of decay rate times energy.  Negative at a driven steady state:
/// the stationary `Im ρ_ab` is negative, and energy flows against the
/// labelling direction, from the hot side through the coherence into the
/// emission channel.
pub fn heat_flux(state: &DensityState, g: f64) -> f64 {
    4.0 * g * state.im_ab
}
