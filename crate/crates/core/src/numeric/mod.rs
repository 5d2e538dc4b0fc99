//! Floating-point checks of the spectral claims: orthogonality, the deformed
//! potential, Schrödinger residuals and the x-space Wronskian constants.
//!
//! Polynomials are always built exactly first and only evaluated in f64 here.

pub mod jet;
pub mod quadrature;
pub mod wave;

pub use jet::Jet;
pub use quadrature::{gram_matrix, gram_of, orthogonality_check, Gram, OrthoResult, QuadratureSpec};
pub use wave::{
    deformed_potential, potential_fd_gap, residual_samples, schrodinger_residual, validate_x_wronskian,
    wavefunction, weight_density, x_wronskians, xwronskian_samples, WaveContext, XWronskianCheck,
};
