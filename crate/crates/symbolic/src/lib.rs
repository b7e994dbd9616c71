//! Exact symbolic calculus for polynomial phase-space observables.
//!
//! Symbols are commutative polynomials in `q` and `p` ([`PolySymbol`]);
//! operators are polynomials in non-commuting `Q`, `P` with `[Q, P] = i`
//! ([`NCPoly`]). The Weyl correspondence between them is exact, as are the
//! star product and Moyal bracket, which terminate on polynomials.
//!
//! Generators on phase space are differential operators with polynomial
//! coefficients ([`DiffOp`]). [`xi_lift`] sends an observable to its
//! generator; [`read_off_generator`] inverts it, returning the observable
//! with zero constant term (the physical generator is only defined up to
//! that constant).
//!
//! Everything is generic over the coefficient field; `BigRational` gives
//! exact arithmetic and is the default.
//!
//! ```
//! use phasespace_symbolic::*;
//!
//! let a: Symbol = "q^3".parse().unwrap();
//! let alpha = xi_lift(&a).unwrap();
//! assert_eq!(alpha.to_string(), "-(1/4)i*dp^3 + 3i*q^2*dp");
//! assert_eq!(read_off_generator(&alpha).unwrap(), a);
//! ```

pub mod coeff;
pub mod diffop;
pub mod liftgen;
pub mod ncpoly;
pub mod parse;
pub mod symbol;
pub mod weyl;

pub use coeff::{Coefficient, Cx};
pub use diffop::{DiffOp, PairVars, PhaseVars, TwoVarOp, Vars, XOp};
pub use liftgen::{
    anticommutator_defect, generic_row_alpha, hilbert_generator, ncpoly_to_xop, read_off_generator, split_test,
    table1_check, xi_lift, xi_lift_linear, xi_monomial, xi_potential, xop_to_ncpoly, z_conjugate, z_conjugate_hbar,
    LiftError, PhaseOp, RejectReason, Rejection, Table1Report, Table1Row,
};
pub use ncpoly::{Letter, NCPoly};
pub use parse::{parse_symbol, ParseError};
pub use symbol::PolySymbol;
pub use weyl::{
    j_power, moyal_symbolic, moyal_via_star, star_symbolic, star_symbolic_right, weyl_quantize,
    weyl_quantize_symmetrized, weyl_symbol,
};

pub use num_rational::BigRational;

/// Exact complex rational.
pub type Cq = Cx<BigRational>;
pub type Symbol = PolySymbol<BigRational>;
pub type Operator = NCPoly<BigRational>;
pub type Generator = DiffOp<BigRational, PhaseVars>;
pub type PairOp = TwoVarOp<BigRational>;
pub type LineOp = XOp<BigRational>;
