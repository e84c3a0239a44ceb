//! Model parameters and density-state record for the three-level V-system.
//!
//! The system has one ground level `g` and two near-degenerate excited levels
//! `a`, `b` with spontaneous decay rates `gamma_a`, `gamma_b`.  A polarized
//! incoherent drive with mean photon occupation `nbar` pumps both transitions,
//! so the incoherent pumping rates are tied to decay by `r_i = nbar * gamma_i`.
//! All rates and the excited-state splitting `delta` are dimensionless
//! multiples of the reference decay rate (the symmetric case fixes
//! `gamma_a = gamma_b = 1`, which defines the time unit).

use crate::error::{Error, Result};

/// Rates and splitting that define one V-system configuration.
///
/// Constructed values are always validated: decay rates strictly positive,
/// every other rate (and the splitting) non-negative, nothing NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VParams {
    gamma_a: f64,
    gamma_b: f64,
    nbar: f64,
    delta: f64,
    gamma_rel: f64,
    gamma_d: f64,
}

impl VParams {
    /// Fully general constructor; rejects out-of-range values.
    pub fn new(
        gamma_a: f64,
        gamma_b: f64,
        nbar: f64,
        delta: f64,
        gamma_rel: f64,
        gamma_d: f64,
    ) -> Result<Self> {
        let params = VParams {
            gamma_a,
            gamma_b,
            nbar,
            delta,
            gamma_rel,
            gamma_d,
        };
        params.validate()
    }

    /// Symmetric radiative-only system: `gamma_a = gamma_b = 1`, no
    /// relaxation, no dephasing.
    pub fn symmetric(nbar: f64, delta: f64) -> Result<Self> {
        VParams::new(1.0, 1.0, nbar, delta, 0.0, 0.0)
    }

    /// Re-checks every range constraint and returns the params unchanged.
    /// Valid params round-trip through this exactly.
    pub fn validate(self) -> Result<Self> {
        check_positive("gamma_a", self.gamma_a)?;
        check_positive("gamma_b", self.gamma_b)?;
        check_non_negative("nbar", self.nbar)?;
        check_non_negative("delta", self.delta)?;
        check_non_negative("gamma_rel", self.gamma_rel)?;
        check_non_negative("gamma_d", self.gamma_d)?;
        Ok(self)
    }

    pub fn with_nbar(self, nbar: f64) -> Result<Self> {
        VParams { nbar, ..self }.validate()
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        VParams { delta, ..self }.validate()
    }

    pub fn with_gamma_rel(self, gamma_rel: f64) -> Result<Self> {
        VParams { gamma_rel, ..self }.validate()
    }

    pub fn with_gamma_d(self, gamma_d: f64) -> Result<Self> {
        VParams { gamma_d, ..self }.validate()
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma_rel(&self) -> f64 {
        self.gamma_rel
    }

    pub fn gamma_d(&self) -> f64 {
        self.gamma_d
    }

    /// Pump rate into level a, `r_a = nbar * gamma_a`.
    pub fn pump_a(&self) -> f64 {
        self.nbar * self.gamma_a
    }

    /// Pump rate into level b, `r_b = nbar * gamma_b`.
    pub fn pump_b(&self) -> f64 {
        self.nbar * self.gamma_b
    }

    pub fn is_symmetric(&self) -> bool {
        self.gamma_a == self.gamma_b
    }

    /// The common decay rate of the symmetric case.
    pub fn sym_gamma(&self) -> Result<f64> {
        if self.is_symmetric() {
            Ok(self.gamma_a)
        } else {
            Err(Error::AsymmetricInput {
                gamma_a: self.gamma_a,
                gamma_b: self.gamma_b,
            })
        }
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    // `!(value > 0.0)` also rejects NaN.
    if !(value > 0.0) {
        return Err(Error::NonpositiveDecay { name, value });
    }
    if !value.is_finite() {
        return Err(Error::NonpositiveDecay { name, value });
    }
    Ok(())
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::NegativeRate { name, value });
    }
    Ok(())
}

/// Planck occupancy `(exp(omega / temperature) - 1)^-1` in natural units
/// (`hbar = k_B = 1`, so `omega / temperature` is the usual `ħω / k_B T`).
/// Returns 0 at zero temperature.
pub fn nbar_from_temperature(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::NonpositiveFrequency {
            name: "omega",
            value: omega,
        });
    }
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::NegativeRate {
            name: "temperature",
            value: temperature,
        });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    // exp_m1 keeps full precision in the high-temperature limit ħω ≪ kT.
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// One snapshot of the reduced density matrix in the energy eigenbasis:
/// three populations plus the excited-state coherence
/// `rho_ab = re_ab + i * im_ab`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityState {
    pub rho_gg: f64,
    pub rho_aa: f64,
    pub rho_bb: f64,
    pub re_ab: f64,
    pub im_ab: f64,
}

impl DensityState {
    /// Default slack for the trace, range, and Cauchy-Schwarz checks.
    pub const DEFAULT_TOL: f64 = 1e-9;

    /// All population in the ground level, no coherence.
    pub fn ground() -> Self {
        DensityState {
            rho_gg: 1.0,
            rho_aa: 0.0,
            rho_bb: 0.0,
            re_ab: 0.0,
            im_ab: 0.0,
        }
    }

    /// Validating constructor with the default tolerance.
    pub fn new(rho_gg: f64, rho_aa: f64, rho_bb: f64, re_ab: f64, im_ab: f64) -> Result<Self> {
        let state = DensityState {
            rho_gg,
            rho_aa,
            rho_bb,
            re_ab,
            im_ab,
        };
        state.check(Self::DEFAULT_TOL)?;
        Ok(state)
    }

    pub fn trace(&self) -> f64 {
        self.rho_gg + self.rho_aa + self.rho_bb
    }

    /// `|rho_ab|^2`.
    pub fn coherence_sq(&self) -> f64 {
        self.re_ab * self.re_ab + self.im_ab * self.im_ab
    }

    /// How far the state violates the Cauchy-Schwarz bound
    /// `|rho_ab|^2 <= rho_aa * rho_bb`; non-positive means satisfied.
    pub fn cauchy_schwarz_excess(&self) -> f64 {
        self.coherence_sq() - self.rho_aa * self.rho_bb
    }

    /// Verifies unit trace, populations in `[0, 1]`, and the Cauchy-Schwarz
    /// bound, each within `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        for (name, value) in [
            ("rho_gg", self.rho_gg),
            ("rho_aa", self.rho_aa),
            ("rho_bb", self.rho_bb),
        ] {
            if !value.is_finite() || value < -tol || value > 1.0 + tol {
                return Err(Error::InvalidInitial {
                    reason: format!("population {name} = {value} outside [0, 1]"),
                });
            }
        }
        if !self.re_ab.is_finite() || !self.im_ab.is_finite() {
            return Err(Error::InvalidInitial {
                reason: "non-finite coherence".into(),
            });
        }
        let trace = self.trace();
        if (trace - 1.0).abs() > tol {
            return Err(Error::InvalidInitial {
                reason: format!("trace = {trace} differs from 1"),
            });
        }
        if self.cauchy_schwarz_excess() > tol {
            return Err(Error::InvalidInitial {
                reason: format!(
                    "coherence violates |rho_ab|^2 <= rho_aa*rho_bb by {}",
                    self.cauchy_schwarz_excess()
                ),
            });
        }
        Ok(())
    }

    /// True when the excited populations agree within `tol`.
    pub fn is_population_symmetric(&self, tol: f64) -> bool {
        (self.rho_aa - self.rho_bb).abs() <= tol * self.rho_aa.abs().max(self.rho_bb.abs()).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_params_round_trip() {
        let p = VParams::symmetric(1.0, 1.0).unwrap();
        assert_eq!(p.pump_a(), 1.0);
        assert_eq!(p.pump_b(), 1.0);
        assert_eq!(p.validate().unwrap(), p);
    }

    #[test]
    fn negative_nbar_rejected() {
        match VParams::symmetric(-0.1, 1.0) {
            Err(Error::NegativeRate { name: "nbar", .. }) => {}
            other => panic!("expected NegativeRate, got {other:?}"),
        }
    }

    #[test]
    fn zero_decay_rejected() {
        match VParams::new(0.0, 1.0, 1.0, 1.0, 0.0, 0.0) {
            Err(Error::NonpositiveDecay {
                name: "gamma_a", ..
            }) => {}
            other => panic!("expected NonpositiveDecay, got {other:?}"),
        }
    }

    #[test]
    fn negative_delta_rejected() {
        assert!(VParams::symmetric(1.0, -1.0).is_err());
    }

    #[test]
    fn nan_rejected() {
        assert!(VParams::symmetric(f64::NAN, 1.0).is_err());
        assert!(VParams::new(1.0, 1.0, 1.0, 1.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn pump_decay_ratio_is_exactly_nbar() {
        for nbar in [0.0, 1e-3, 0.37, 12.0, 1e3] {
            for gamma in [0.25, 1.0, 3.5] {
                let p = VParams::new(gamma, gamma, nbar, 1.0, 0.0, 0.0).unwrap();
                assert_eq!(p.pump_a() / p.gamma_a(), nbar);
                assert_eq!(p.pump_b() / p.gamma_b(), nbar);
            }
        }
    }

    #[test]
    fn planck_zero_temperature_is_vacuum() {
        assert_eq!(nbar_from_temperature(1.0, 0.0).unwrap(), 0.0);
        // Deep in the Wien tail the exponential overflows and the occupancy
        // underflows cleanly to zero instead of producing NaN or a panic.
        assert_eq!(nbar_from_temperature(551.9071822497818, 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn planck_ln2_gives_unit_occupancy() {
        let nbar = nbar_from_temperature(std::f64::consts::LN_2, 1.0).unwrap();
        assert!((nbar - 1.0).abs() < 1e-14, "nbar = {nbar}");
    }

    #[test]
    fn planck_high_temperature_diverges_as_kt_over_omega() {
        // n̄ → kT/ħω - 1/2 + O(ħω/kT); the leading term dominates.
        let nbar = nbar_from_temperature(1e-8, 1.0).unwrap();
        assert!((nbar * 1e-8 - 1.0).abs() < 1e-6, "nbar = {nbar}");
    }

    #[test]
    fn planck_rejects_bad_inputs() {
        assert!(nbar_from_temperature(0.0, 1.0).is_err());
        assert!(nbar_from_temperature(-1.0, 1.0).is_err());
        assert!(nbar_from_temperature(1.0, -1.0).is_err());
    }

    #[test]
    fn ground_state_is_valid() {
        DensityState::ground().check(1e-15).unwrap();
    }

    #[test]
    fn trace_violations_caught() {
        let s = DensityState {
            rho_gg: 0.5,
            rho_aa: 0.3,
            rho_bb: 0.3,
            re_ab: 0.0,
            im_ab: 0.0,
        };
        assert!(s.check(1e-9).is_err());
    }

    #[test]
    fn cauchy_schwarz_violations_caught() {
        let s = DensityState {
            rho_gg: 0.8,
            rho_aa: 0.1,
            rho_bb: 0.1,
            re_ab: 0.2,
            im_ab: 0.0,
        };
        assert!(s.check(1e-9).is_err());
        let ok = DensityState {
            rho_gg: 0.8,
            rho_aa: 0.1,
            rho_bb: 0.1,
            re_ab: 0.1,
            im_ab: 0.0,
        };
        ok.check(1e-12).unwrap();
    }

    #[cfg(test)]
    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Monotone in T, antitone in ω, for T > 0. Strict ordering only
            // holds while the occupancy is representable: past ω/T ≈ 709 the
            // exponential overflows and every occupancy collapses to 0.0, so
            // the claim is restricted to the regime where 1/(e^(ω/T) - 1)
            // survives in f64 (down to ~1e-304).
            #[test]
            fn planck_monotonicity(
                omega in 1e-3f64..1e3,
                temperature in 1e-3f64..1e3,
            ) {
                prop_assume!(omega / temperature < 700.0);
                let base = nbar_from_temperature(omega, temperature).unwrap();
                let hotter = nbar_from_temperature(omega, temperature * 1.01).unwrap();
                let stiffer = nbar_from_temperature(omega * 1.01, temperature).unwrap();
                prop_assert!(hotter > base);
                prop_assert!(stiffer < base);
            }

            #[test]
            fn valid_params_always_round_trip(
                gamma in 1e-3f64..1e3,
                nbar in 0.0f64..1e3,
                delta in 0.0f64..1e3,
                gamma_rel in 0.0f64..1e2,
                gamma_d in 0.0f64..1e2,
            ) {
                let p = VParams::new(gamma, gamma, nbar, delta, gamma_rel, gamma_d).unwrap();
                prop_assert_eq!(p.validate().unwrap(), p);
                // Two roundings (multiply, divide), so up to a couple ulp.
                prop_assert!((p.pump_a() / p.gamma_a() - nbar).abs() <= 4.0 * f64::EPSILON * nbar);
            }
        }
    }
}
