//! Steady-state and transient coherences of a three-level V-system driven by
//! polarized incoherent light.
//!
//! The model is a ground level coupled to two near-degenerate excited levels
//! by a weak, broadband, x-polarized thermal drive.  Because both transition
//! dipoles project onto the same field polarization, absorption pumps the two
//! excited levels coherently and the secular approximation cannot be applied
//! to the excited-state pair.  The resulting Bloch-Redfield dynamics close on
//! a small affine linear system whose unique fixed point carries a *nonzero
//! stationary coherence* between the excited levels, in sharp contrast to
//! isotropic driving where such coherences are transient.
//!
//! The crate provides:
//!
//! * [`params`]: validated model parameters and density-state records;
//! * [`generator`]: the drift matrix / drive vector in symmetric (dim 3),
//!   general (dim 4), and coherence-free reference (dim 1) bases;
//! * [`dynamics`]: adaptive Runge-Kutta propagation with dense output,
//!   eigenvalue analysis, and timescale heuristics;
//! * [`steadystate`]: exact closed-form fixed points, the linear solve,
//!   coherence-to-population ratios, parameter derivatives, and the optimal
//!   dephasing rate;
//! * [`transport`]: the two-bath single-excitation model whose generator
//!   reduces to the V-system, plus the steady-state heat flux;
//! * [`observables`]: angle-resolved and total fluorescence intensity and the
//!   coherence-free reference dynamics;
//! * [`sweep`]: deterministic parameter sweeps (data-parallel with the
//!   `parallel` feature, sequential otherwise) and the figure drivers that
//!   export the standard panels as CSV.
//!
//! All quantities are expressed in units of the spontaneous decay rate: the
//! symmetric case sets `gamma_a = gamma_b = 1`, pump rates are `r = nbar`,
//! and times are reported in `1/gamma`.

pub mod dynamics;
pub mod error;
pub mod generator;
mod integrate;
pub mod observables;
pub mod params;
pub mod steadystate;
pub mod sweep;
pub mod transport;

pub use error::{Error, Result};
pub use generator::{determinant, Basis, Determinant, Generator};
pub use params::{nbar_from_temperature, DensityState, VParams};
