//! Error type shared by every module of the crate.

use std::fmt;

/// Everything that can go wrong when building or querying a V-system model.
#[derive(Debug)]
pub enum Error {
    /// A pump or relaxation rate that must be `>= 0` was negative.
    NegativeRate { name: &'static str, value: f64 },
    /// A spontaneous-decay rate that must be `> 0` was zero or negative.
    NonpositiveDecay { name: &'static str, value: f64 },
    /// A quantity that must be strictly positive (frequency, temperature,
    /// intensity prefactor) was not.
    NonpositiveFrequency { name: &'static str, value: f64 },
    /// An emission angle fell outside its range (`theta` in `[0, pi]`,
    /// `phi` in `[0, 2 pi)`).
    InvalidAngle { name: &'static str, value: f64 },
    /// An operation defined only for `gamma_a == gamma_b` received unequal rates.
    AsymmetricInput { gamma_a: f64, gamma_b: f64 },
    /// The drift matrix is singular (or numerically near-singular) relative to
    /// its own scale, so the steady state is not trustworthy.  This happens for
    /// degenerate excited levels under strong pumping, where the long-time
    /// state becomes population-locked and depends on the initial condition.
    SingularGenerator { determinant: f64, threshold: f64 },
    /// The adaptive integrator could not meet the requested tolerance.
    StepFailure { t: f64, step: f64 },
    /// An initial density state violated trace, range, or symmetry requirements.
    InvalidInitial { reason: String },
    /// A quantity was requested outside the parameter regime where its
    /// defining approximation holds.
    RegimeMismatch { detail: String },
    /// Inputs fail the structural preconditions of the requested operation
    /// (bath weights, occupancies, level-splitting relations, grid shapes).
    ConfigMismatch { reason: String },
    /// An observable defined only for `rho_aa == rho_bb` received an
    /// asymmetric state.
    AsymmetricState { rho_aa: f64, rho_bb: f64 },
    /// A sweep axis name was not recognized.
    UnknownAxis { name: String },
    /// A sweep observable name was not recognized.
    UnknownObservable { name: String },
    /// A figure id was not recognized.
    UnknownFigure { name: String },
    /// Reading or writing an output file failed.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeRate { name, value } => {
                write!(f, "rate `{name}` must be non-negative, got {value}")
            }
            Error::NonpositiveDecay { name, value } => {
                write!(f, "decay rate `{name}` must be positive, got {value}")
            }
            Error::NonpositiveFrequency { name, value } => {
                write!(f, "`{name}` must be positive, got {value}")
            }
            Error::InvalidAngle { name, value } => {
                write!(
                    f,
                    "emission angle `{name}` out of range, got {value} \
                     (theta in [0, pi], phi in [0, 2 pi))"
                )
            }
            Error::AsymmetricInput { gamma_a, gamma_b } => {
                write!(
                    f,
                    "operation requires equal decay rates, got gamma_a = {gamma_a}, \
                     gamma_b = {gamma_b}"
                )
            }
            Error::SingularGenerator {
                determinant,
                threshold,
            } => {
                write!(
                    f,
                    "drift matrix is singular at this scale (|det| = {:.3e} below \
                     threshold {:.3e}); the long-time state is population-locked and \
                     depends on the initial condition, so no steady state is reported",
                    determinant.abs(),
                    threshold
                )
            }
            Error::StepFailure { t, step } => {
                write!(
                    f,
                    "integrator step size underflowed at t = {t} (h = {step:.3e}); \
                     requested tolerance is unreachable"
                )
            }
            Error::InvalidInitial { reason } => {
                write!(f, "invalid initial state: {reason}")
            }
            Error::RegimeMismatch { detail } => {
                write!(f, "parameter regime mismatch: {detail}")
            }
            Error::ConfigMismatch { reason } => {
                write!(f, "configuration mismatch: {reason}")
            }
            Error::AsymmetricState { rho_aa, rho_bb } => {
                write!(
                    f,
                    "observable requires rho_aa == rho_bb, got rho_aa = {rho_aa}, \
                     rho_bb = {rho_bb}"
                )
            }
            Error::UnknownAxis { name } => {
                write!(
                    f,
                    "unknown sweep axis `{name}` (expected nbar, delta, gamma_d, or gamma_rel)"
                )
            }
            Error::UnknownObservable { name } => {
                write!(
                    f,
                    "unknown observable `{name}` (expected rho_aa, re_ab, im_ab, c_ratio, \
                     rel_intensity_diff, or flux)"
                )
            }
            Error::UnknownFigure { name } => {
                write!(
                    f,
                    "unknown figure id `{name}` (expected fig2a..fig2d, fig3a..fig3c, \
                     fig4a..fig4c, fig5, or fig6)"
                )
            }
            Error::Io(err) => write!(f, "I/O failure: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
