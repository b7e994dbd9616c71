//! Worked group representations on phase space and their factorisation
//! into Hilbert-space generators.
//!
//! Examples: Heisenberg-Weyl translations with the generalised tower of
//! generators, the Galilei group, two representations of sp(2, R) (Cases A
//! and B), and time reversal. Grid actions are generic over [`Real`];
//! operator algebra is exact over rationals.
//!
//! ```
//! use phasespace_reps::*;
//!
//! let r = sp2_generators(&Sp2Params::case_a()).unwrap();
//! assert!(r.factorization.all_hold());
//! assert_eq!(r.factorization.casimir.unwrap().re, expected_casimir(&Sp2Params::case_a()));
//! ```

pub mod error;
pub mod galilei;
pub mod hw;
pub mod report;
pub mod resample;
pub mod sp2;
pub mod time_reversal;

pub use error::RepsError;
pub use galilei::{
    free_evolution_residual, free_gaussian, galilei_action, galilei_factorize, galilei_generators,
    galilei_momentum_kernel, galilei_momentum_residual, GalileiElement, GaussianSymbol,
};
pub use hw::{
    gen_heisenberg_tower, hw_action, hw_cocycle, hw_cocycle_residual, hw_factorize, hw_generators, hw_hilbert_action,
    tower_beta, tower_checks, HWElement, TowerLevel,
};
pub use phasespace::Real;
pub use report::{op_residual, ExampleReport, FactorizationResult, RelationCheck};
pub use sp2::{expected_casimir, sp2_generators, sp2_phase_generators, Sp2Case, Sp2Params, Sp2Result};
pub use time_reversal::{time_reversal_action, time_reversal_check, time_reversal_kernel, TimeReversal};

pub type HW64 = HWElement<f64>;
pub type Galilei64 = GalileiElement<f64>;
