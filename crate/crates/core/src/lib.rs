//! Exact trapezoidal-rule bias for periodic functions.
//!
//! The `P`-point rule samples each Fourier mode `e^{2 pi i k x}` and returns
//! the grid average `chi~_P(k/P)`, where
//!
//! ```text
//! chi~_P(y) = (1/P) sum_{j=0}^{P-1} e^{2 pi i y j}
//! ```
//!
//! is the grid resonance function. Its real part `chi_P` is 1 at integers
//! and 0 at `n/P` for `n` not a multiple of `P`, so the bias of a periodic
//! `f` is its spectrum filtered by `chi~_P`.
//!
//! ```
//! use rbf_core::{chi_tilde, GridSize, RelativeFrequency};
//!
//! let p = GridSize::new(5)?;
//! assert_eq!(chi_tilde(p, RelativeFrequency::new(1.0)?).re, 1.0);
//! assert!(chi_tilde(p, RelativeFrequency::new(0.2)?).norm() < 1e-15);
//! # Ok::<(), rbf_core::RbfError>(())
//! ```

pub mod error;
pub mod landscape;
pub mod numeric;
pub mod prototype;
pub mod quadrature;
pub mod resonance;
pub mod spectrum;
pub mod tensor2d;
pub mod verify;
pub mod zeta;

pub use error::{RbfError, Result};
pub use landscape::{
    filter_view, format_number, sample_landscape, sample_landscape_2d, sweep_bias, to_csv, to_json,
    Classification, CsvRow, FilterViewRow, Landscape2DRow, LandscapeSample, SweepRow,
};
pub use prototype::{bias_sin2, classical_bound_sin2, correction_term, finite_cosine_sum, PrototypeParams};
pub use quadrature::{
    direct_bias, direct_bias_2d, trapezoid_1d, trapezoid_2d, Builtin, Builtin1D, Builtin2D, FnPeriodic,
    FnPeriodic2D, PeriodicFunction, PeriodicFunction2D,
};
pub use resonance::{
    arrows, character_orthogonality_check, chi_real, chi_taylor_lobe, chi_tilde, chi_tilde_closed,
    chi_tilde_naive, Branch, GridSize, RelativeFrequency, ResonanceValue,
};
pub use spectrum::{
    bias_classical_alias, bias_rbf_general, bias_real_reduction, bound_algebraic, bound_exponential,
    estimate_spectrum_dft, DecayModel, FilterMode, FourierSpectrum,
};
pub use tensor2d::{bias_classical_2d, bias_rbf_2d, chi2d, Spectrum2D};
pub use zeta::riemann_zeta;
