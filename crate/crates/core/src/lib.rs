//! Exact construction of multi-indexed Laguerre and Jacobi polynomials.
//!
//! The crate builds the denominator polynomial Ξ_D and the multi-indexed
//! polynomials P_{D,n} three ways (a quasi-polynomial Wronskian and two
//! derivative-free determinant forms), checks that they agree exactly, and
//! verifies the spectral claims numerically.
//!
//! Layers, bottom up:
//! * [`rational`], [`poly`], [`matrix`], [`sturm`]: exact arithmetic in ℚ[η];
//! * [`classical`]: Laguerre/Jacobi series and their identities;
//! * [`seed`]: parameters, index sets, virtual states, eigen-data;
//! * [`engine`]: the three routes, parity, and [`suite`] drivers;
//! * [`numeric`]: floating-point orthogonality, potentials and residuals.

pub mod case;
pub mod classical;
pub mod engine;
pub mod error;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod rational;
pub mod seed;
pub mod sturm;
pub mod suite;

pub use case::CaseKey;
pub use engine::{MiResult, Route};
pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use rational::Rational;
pub use seed::{Family, IndexSpec, Seed, SeedType, SystemParams};
