//! Truncated Fock-space numerics for nonlinear coherent and squeezed states.
//!
//! A single bosonic mode is represented by its amplitudes `c_0..c_N` in the
//! number basis. Deformed ladder operators `A = a f(a†a)` are described by a
//! [`SpectrumModel`], which fixes the deformation function `f(n)` and the
//! spectrum `e_n = n f²(n)`. On top of that the crate provides
//!
//! * state builders for canonical and nonlinear coherent states, and for
//!   squeezed states obtained either from the three-term recurrence or from
//!   the closed hypergeometric forms ([`states`]);
//! * quadrature moments and position-space densities ([`observables`]);
//! * the beam-splitter entanglement test with a reduced density matrix and
//!   linear entropy, evaluated both by partial trace and by the explicit
//!   quadruple series ([`entanglement`]);
//! * a bundled cross-check suite used by the command-line `verify` command
//!   ([`verify`]).
//!
//! Everything that involves generalized factorials is computed in log space,
//! since `e_n!` for a quadratic spectrum at `n = 40` is `(40!)²`.

pub mod entanglement;
pub mod error;
pub mod fock;
pub mod observables;
pub mod special;
pub mod states;
pub mod verify;

pub use entanglement::{
    entropy_sweep, linear_entropy, linear_entropy_matrix, linear_entropy_series,
    linear_entropy_series_at, reduce_a, split_fock, split_state, BeamSplitterConfig, DensityMatrix,
    EntropyEstimate, SweepRow, TwoModeState,
};
pub use error::{Error, Result};
pub use fock::{inner_product, normalize, FockExpansion, LogAmplitude, ModelKind, SpectrumModel};
pub use observables::{
    density_fwhm, ladder_moments, position_density, quadrature_report, LadderMoments,
    QuadratureConvention, QuadratureReport,
};
pub use states::{
    build_coherent_canonical, build_nonlinear_coherent, build_nonlinear_squeezed,
    build_squeezed_canonical, closed_form_linear_quadratic, closed_form_quadratic,
    solve_recurrence, RecurrenceTable,
};

pub use num_complex::Complex64 as C64;

/// Truncation level used when none is given.
pub const DEFAULT_LEVELS: usize = 40;

/// Truncation level for linear-plus-quadratic entropy sweeps.
pub const DEFAULT_LQ_LEVELS: usize = 30;

/// Tail weight above which a built expansion is reported as not converged.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;
