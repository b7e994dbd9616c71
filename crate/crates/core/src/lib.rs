//! Discrete phase-space quantum mechanics: the Weyl-Wigner transform on a
//! double-density grid, star products, Wigner functions of states, and the
//! kernel-case factorisation of phase-space automorphism generators.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the common case. Units have `hbar = 1`.

pub mod error;
pub mod grid;
pub mod io;
pub mod kernel;
pub mod scalar;
pub mod star;
pub mod wigner;

pub use error::{GridError, IoError};
pub use grid::{hermite_basis, inner_h, make_grid, BasisFamily, GridSpec};
pub use kernel::{
    alpha_kernel_from_a, alpha_kernel_value, autv_residual, kernel_to_r, recover_a, recover_at, xi_consistency,
    AlphaKernel, FactorizeError, GaussianAlphaSpec, Gauge, KernelAxes, ProbeLattice, QuadratureBox, RFunction,
    RecoverOptions, Recovered,
};
pub use scalar::Real;
pub use star::{
    discrete_identity, moyal_bracket, purity_residual, star, star_twisted_oracle, star_unitary_residual, TwistedOracle,
    TwistedTable,
    PurityResidual,
};
pub use wigner::{
    inner_k, parity, phi_rs, weyl_wigner, weyl_wigner_inv, wigner_of_state, z_inv, z_map, KernelMatrix,
    ParityLayout, PhaseFunction, StateVector,
};

pub type C64 = num_complex::Complex<f64>;
pub type Grid64 = GridSpec<f64>;
pub type Grid32 = GridSpec<f32>;
pub type Basis64 = BasisFamily<f64>;
pub type Kernel64 = KernelMatrix<f64>;
pub type Kernel32 = KernelMatrix<f32>;
pub type Phase64 = PhaseFunction<f64>;
pub type Phase32 = PhaseFunction<f32>;
pub type State64 = StateVector<f64>;
