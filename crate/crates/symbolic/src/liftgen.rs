//! Generators on phase space lifted from polynomial observables, and the
//! way back.
//!
//! `xi_lift(A)` is the operator `B -> A*B - B*A = i{A, B}`. Conjugating a
//! generator with `Z` turns it into an operator on functions of `(x, y)`;
//! the generator comes from an observable exactly when that operator splits
//! as `A(x, -i d/dx) - conj(A(y, -i d/dy))`.

use std::fmt;

use num_rational::BigRational;

use crate::coeff::{self, Coefficient, Cx};
use crate::diffop::{DiffOp, PhaseVars, TwoVarOp, XOp};
use crate::ncpoly::{Letter, NCPoly};
use crate::symbol::PolySymbol;
use crate::weyl::{star_symbolic, weyl_symbol};

pub type PhaseOp<R = BigRational> = DiffOp<R, PhaseVars>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LiftError {
    #[error("observable has non-real coefficients: {0}")]
    NotReal(String),
    #[error("potential must depend on q only: {0}")]
    NotPotential(String),
}

/// Weight of the order-`j` term of the odd series, `2 (-1)^((j-1)/2) / (j! 2^j)`.
fn odd_weight<R: Coefficient>(j: u32) -> R {
    let w = R::from_u32(2).unwrap() / (coeff::factorial::<R>(j) * num_traits::pow(R::from_u32(2).unwrap(), j as usize));
    if (j / 2) % 2 == 1 {
        -w
    } else {
        w
    }
}

/// `B -> A*B - B*A` for any polynomial `A`; complex-linear in `A`.
pub fn xi_lift_linear<R: Coefficient>(a: &PolySymbol<R>) -> PhaseOp<R> {
    let mut out = PhaseOp::zero();
    let i = coeff::imag::<R>(1, 1);
    for j in (1..=a.degree()).step_by(2) {
        let wj = odd_weight::<R>(j);
        for l in 0..=j {
            let mut w = wj.clone() * coeff::binomial::<R>(j, l);
            if l % 2 == 1 {
                w = -w;
            }
            let c = i.clone() * Cx::new(w, R::zero());
            for ((e, f), d) in a.derivative(j - l, l).terms() {
                out.add_term([*e, *f, l, j - l], c.clone() * d.clone());
            }
        }
    }
    out
}

/// The generator `alpha` with `alpha B = i{A, B}` for a real observable.
/// Constants in `A` drop out.
pub fn xi_lift<R: Coefficient>(a: &PolySymbol<R>) -> Result<PhaseOp<R>, LiftError> {
    if !a.is_real() {
        return Err(LiftError::NotReal(a.to_string()));
    }
    Ok(xi_lift_linear(a))
}

/// Lift of `V(q)` truncated after the derivative of order `max_order`:
/// `i V' dp - (i/(3! 4)) V''' dp^3 + (i/(5! 4^2)) V^(5) dp^5 - ...`.
pub fn xi_potential<R: Coefficient>(v: &PolySymbol<R>, max_order: u32) -> Result<PhaseOp<R>, LiftError> {
    if v.degree_p() > 0 {
        return Err(LiftError::NotPotential(v.to_string()));
    }
    if !v.is_real() {
        return Err(LiftError::NotReal(v.to_string()));
    }
    let mut out = PhaseOp::zero();
    for j in (1..=max_order).step_by(2) {
        let c = coeff::imag::<R>(1, 1) * Cx::new(odd_weight::<R>(j), R::zero());
        for ((e, _), d) in v.derivative(j, 0).terms() {
            out.add_term([*e, 0, 0, j], c.clone() * d.clone());
        }
    }
    Ok(out)
}

/// `2^-m sum_r C(m,r) [Q+^(m-r) P-^n Q+^r - Q-^(m-r) P+^n Q-^r]` with
/// `Q+- = q +- (i/2) dp` and `P-+ = p -+ (i/2) dq`.
pub fn xi_monomial<R: Coefficient>(m: u32, n: u32) -> PhaseOp<R> {
    let half_i = coeff::imag::<R>(1, 2);
    let q = PhaseOp::<R>::var(0);
    let p = PhaseOp::<R>::var(1);
    let dq = PhaseOp::<R>::deriv(0);
    let dp = PhaseOp::<R>::deriv(1);
    let qp = &q + &dp.scale(&half_i);
    let qm = &q - &dp.scale(&half_i);
    let pm = &p - &dq.scale(&half_i);
    let pp = &p + &dq.scale(&half_i);
    let scale = R::one() / num_traits::pow(R::from_u32(2).unwrap(), m as usize);
    let mut out = PhaseOp::zero();
    for r in 0..=m {
        let left = qp.pow(m - r).compose(&pm.pow(n)).compose(&qp.pow(r));
        let right = qm.pow(m - r).compose(&pp.pow(n)).compose(&qm.pow(r));
        let w = Cx::new(coeff::binomial::<R>(m, r) * scale.clone(), R::zero());
        out = &out + &(&left - &right).scale(&w);
    }
    out
}

/// `Z^dagger alpha Z` with `hbar = 1`.
pub fn z_conjugate<R: Coefficient>(alpha: &PhaseOp<R>) -> TwoVarOp<R> {
    z_conjugate_hbar(alpha, &R::one())
}

/// `Z^dagger alpha Z` for the intertwiner carrying `hbar`:
/// `q -> (x + y)/2`, `i dp -> (x - y)/hbar`,
/// `p -> (hbar/2)(-i dx + i dy)`, `i dq -> i dx + i dy`.
pub fn z_conjugate_hbar<R: Coefficient>(alpha: &PhaseOp<R>, hbar: &R) -> TwoVarOp<R> {
    let x = TwoVarOp::<R>::var(0);
    let y = TwoVarOp::<R>::var(1);
    let dx = TwoVarOp::<R>::deriv(0);
    let dy = TwoVarOp::<R>::deriv(1);
    let h = Cx::new(hbar.clone(), R::zero());
    let q_img = (&x + &y).scale(&coeff::real(1, 2));
    let p_img = (&dy - &dx).scale(&(coeff::imag::<R>(1, 2) * h.clone()));
    let dq_img = &dx + &dy;
    let dp_img = (&x - &y).scale(&(coeff::imag::<R>(-1, 1) / h));
    let mut out = TwoVarOp::zero();
    for (k, c) in alpha.terms() {
        let t = q_img
            .pow(k[0])
            .compose(&p_img.pow(k[1]))
            .compose(&dq_img.pow(k[2]))
            .compose(&dp_img.pow(k[3]));
        out = &out + &t.scale(c);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// A term couples `x` and `y`.
    CrossTerm,
    /// The `y` part is not minus the conjugate of the `x` part.
    Mismatch,
    /// The split exists but the one-variable operator is not hermitian.
    NotHermitian,
    /// The constant term has a real part, which no split can produce.
    RealConstant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rejection<R: Coefficient = BigRational> {
    pub reason: RejectReason,
    /// The obstruction: cross terms, the unmatched remainder, `A - A^dagger`,
    /// or the offending constant.
    pub witness: TwoVarOp<R>,
}

impl<R: Coefficient> fmt::Display for Rejection<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.reason {
            RejectReason::CrossTerm => "operator couples x and y",
            RejectReason::Mismatch => "y part is not minus the conjugate of the x part",
            RejectReason::NotHermitian => "one-variable operator is not hermitian",
            RejectReason::RealConstant => "constant term has a real part",
        };
        write!(f, "{what}: {}", self.witness)
    }
}

impl<R: Coefficient> std::error::Error for Rejection<R> {}

/// Writes `t = A(x, -i dx) - conj(A(y, -i dy))` and returns `A` as an
/// operator in `x` and `dx`. The real part of the constant in `A` is
/// invisible in `t` and returned as zero.
pub fn split_test<R: Coefficient>(t: &TwoVarOp<R>) -> Result<XOp<R>, Rejection<R>> {
    let cross = TwoVarOp::from_terms(
        t.terms()
            .filter(|(k, _)| (k[0] > 0 || k[2] > 0) && (k[1] > 0 || k[3] > 0))
            .map(|(k, c)| (*k, c.clone())),
    );
    if !cross.is_zero() {
        return Err(Rejection { reason: RejectReason::CrossTerm, witness: cross });
    }
    let c0 = t.coeff([0, 0, 0, 0]);
    if !c0.re.is_zero() {
        return Err(Rejection { reason: RejectReason::RealConstant, witness: TwoVarOp::scalar(c0) });
    }
    let mut a = XOp::from_terms(t.terms().filter(|(k, _)| k[1] == 0 && k[3] == 0 && **k != [0, 0, 0, 0]).map(|(k, c)| (*k, c.clone())));
    a.add_term([0, 0, 0, 0], c0 * coeff::real(1, 2));
    let rebuilt = &a - &a.conj().to_second();
    let rest = t - &rebuilt;
    if !rest.is_zero() {
        return Err(Rejection { reason: RejectReason::Mismatch, witness: rest });
    }
    let defect = &a - &a.adjoint();
    if !defect.is_zero() {
        return Err(Rejection { reason: RejectReason::NotHermitian, witness: defect });
    }
    Ok(a)
}

/// The Hilbert-space generator `A` with `hbar Z^dagger alpha Z = A(x) - conj(A(y))`.
pub fn hilbert_generator<R: Coefficient>(alpha: &PhaseOp<R>, hbar: &R) -> Result<XOp<R>, Rejection<R>> {
    let h = Cx::new(hbar.clone(), R::zero());
    split_test(&z_conjugate_hbar(alpha, hbar).scale(&h))
}

/// `x -> Q`, `dx -> (i/hbar) P`.
pub fn xop_to_ncpoly<R: Coefficient>(a: &XOp<R>, hbar: &R) -> NCPoly<R> {
    let d = NCPoly::<R>::p().scale(&(coeff::imag::<R>(1, 1) / Cx::new(hbar.clone(), R::zero())));
    let mut out = NCPoly::zero();
    for (k, c) in a.terms() {
        debug_assert!(k[1] == 0 && k[3] == 0, "operator depends on y");
        let word = NCPoly::word(c.clone(), vec![Letter::Q; k[0] as usize]);
        out = &out + &(&word * &d.pow(k[2]));
    }
    out.normalize()
}

/// `Q -> x`, `P -> -i hbar dx`.
pub fn ncpoly_to_xop<R: Coefficient>(a: &NCPoly<R>, hbar: &R) -> XOp<R> {
    let x = XOp::<R>::var(0);
    let p = XOp::<R>::deriv(0).scale(&(coeff::imag::<R>(-1, 1) * Cx::new(hbar.clone(), R::zero())));
    let mut out = XOp::zero();
    for (c, w) in a.terms() {
        let t = w.iter().fold(XOp::scalar(c.clone()), |acc, l| acc.compose(if *l == Letter::Q { &x } else { &p }));
        out = &out + &t;
    }
    out
}

/// Recovers the observable behind a generator, with its constant set to zero.
pub fn read_off_generator<R: Coefficient>(alpha: &PhaseOp<R>) -> Result<PolySymbol<R>, Rejection<R>> {
    let a = split_test(&z_conjugate(alpha))?;
    let sym = weyl_symbol(&xop_to_ncpoly(&a, &R::one())).without_constant();
    debug_assert!(sym.is_real());
    Ok(sym)
}

/// `Xi(A) Xi(B) + Xi(B) Xi(A) - Xi(A*B + B*A)`.
pub fn anticommutator_defect<R: Coefficient>(a: &PolySymbol<R>, b: &PolySymbol<R>) -> PhaseOp<R> {
    let (xa, xb) = (xi_lift_linear(a), xi_lift_linear(b));
    let sym = &star_symbolic(a, b) + &star_symbolic(b, a);
    &(&xa.compose(&xb) + &xb.compose(&xa)) - &xi_lift_linear(&sym)
}

/// One concrete row of the table of observables and their generators.
#[derive(Debug, Clone)]
pub struct Table1Row<R: Coefficient = BigRational> {
    pub label: &'static str,
    pub operator: NCPoly<R>,
    pub printed_symbol: PolySymbol<R>,
    pub printed_alpha: PhaseOp<R>,
    pub computed_symbol: PolySymbol<R>,
    pub computed_alpha: PhaseOp<R>,
}

impl<R: Coefficient> Table1Row<R> {
    pub fn symbol_matches(&self) -> bool {
        self.printed_symbol == self.computed_symbol
    }

    pub fn alpha_matches(&self) -> bool {
        self.printed_alpha == self.computed_alpha
    }

    pub fn matches(&self) -> bool {
        self.symbol_matches() && self.alpha_matches()
    }
}

#[derive(Debug, Clone)]
pub struct Table1Report<R: Coefficient = BigRational> {
    pub rows: Vec<Table1Row<R>>,
    /// Polynomials on which the generic `P(q, p)` row disagreed with the lift.
    pub generic_failures: Vec<PolySymbol<R>>,
    pub generic_cases: usize,
    /// `V = q^4 + q^2` through the fifth-derivative term.
    pub potential_matches: bool,
}

impl<R: Coefficient> Table1Report<R> {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(Table1Row::matches) && self.generic_failures.is_empty() && self.potential_matches
    }

    pub fn mismatched_rows(&self) -> Vec<&Table1Row<R>> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }

    /// `Err` listing every disagreeing row.
    pub fn into_result(self) -> Result<Self, String> {
        if self.all_match() {
            return Ok(self);
        }
        let mut msg: Vec<String> = self
            .mismatched_rows()
            .iter()
            .map(|r| format!("row {}: printed {} but computed {}", r.label, r.printed_alpha, r.computed_alpha))
            .collect();
        msg.extend(self.generic_failures.iter().map(|p| format!("generic row fails on {p}")));
        if !self.potential_matches {
            msg.push("potential row fails".into());
        }
        Err(msg.join("; "))
    }
}

/// The generic row as printed, through fifth order: first order
/// `i(P_q dp - P_p dq)`, third order
/// `-(i/(3! 4))(P_qqq dp^3 - 3 P_qqp dq dp^2 + 3 P_qpp dq^2 dp - P_ppp dq^3)`
/// and fifth order `(i/(5! 4^2))(P_qqqqq dp^5 - ...)` continuing the same
/// alternating binomial pattern.
pub fn generic_row_alpha<R: Coefficient>(p: &PolySymbol<R>) -> PhaseOp<R> {
    let prefactors = [(1u32, coeff::imag::<R>(1, 1)), (3, coeff::imag::<R>(-1, 24)), (5, coeff::imag::<R>(1, 1920))];
    let mut out = PhaseOp::zero();
    for (j, pre) in prefactors {
        for l in 0..=j {
            let mut w = coeff::binomial::<R>(j, l);
            if l % 2 == 1 {
                w = -w;
            }
            let c = pre.clone() * Cx::new(w, R::zero());
            for ((e, f), d) in p.derivative(j - l, l).terms() {
                out.add_term([*e, *f, l, j - l], c.clone() * d.clone());
            }
        }
    }
    out
}

fn printed<R: Coefficient>(terms: &[([u32; 4], Cx<R>)]) -> PhaseOp<R> {
    PhaseOp::from_terms(terms.iter().cloned())
}

fn table_rows<R: Coefficient>() -> Vec<(&'static str, NCPoly<R>, PolySymbol<R>, PhaseOp<R>)> {
    use Letter::{P, Q};
    let i = |n, d| coeff::imag::<R>(n, d);
    let w = |l: &[Letter]| NCPoly::word(coeff::int(1), l.to_vec());
    let half_anti = (&w(&[Q, P]) + &w(&[P, Q])).scale(&coeff::real(1, 2));
    vec![
        ("I", NCPoly::one(), PolySymbol::one(), PhaseOp::zero()),
        ("Q", w(&[Q]), PolySymbol::q(), printed(&[([0, 0, 0, 1], i(1, 1))])),
        ("P", w(&[P]), PolySymbol::p(), printed(&[([0, 0, 1, 0], i(-1, 1))])),
        ("Q^2", w(&[Q, Q]), PolySymbol::monomial(2, 0), printed(&[([1, 0, 0, 1], i(2, 1))])),
        ("P^2", w(&[P, P]), PolySymbol::monomial(0, 2), printed(&[([0, 1, 1, 0], i(-2, 1))])),
        (
            "(QP+PQ)/2",
            half_anti,
            PolySymbol::monomial(1, 1),
            printed(&[([0, 1, 0, 1], i(1, 1)), ([1, 0, 1, 0], i(-1, 1))]),
        ),
        (
            "Q^3",
            w(&[Q, Q, Q]),
            PolySymbol::monomial(3, 0),
            printed(&[([2, 0, 0, 1], i(3, 1)), ([0, 0, 0, 3], i(-1, 4))]),
        ),
        (
            "P^3",
            w(&[P, P, P]),
            PolySymbol::monomial(0, 3),
            printed(&[([0, 2, 1, 0], i(-3, 1)), ([0, 0, 3, 0], i(1, 4))]),
        ),
        (
            "QPQ",
            w(&[Q, P, Q]),
            PolySymbol::monomial(2, 1),
            printed(&[([1, 1, 0, 1], i(2, 1)), ([2, 0, 1, 0], i(-1, 1)), ([0, 0, 1, 2], i(1, 8))]),
        ),
        (
            "PQP",
            w(&[P, Q, P]),
            PolySymbol::monomial(1, 2),
            printed(&[([0, 2, 0, 1], i(1, 1)), ([1, 1, 1, 0], i(-2, 1)), ([0, 0, 2, 1], i(-1, 8))]),
        ),
    ]
}

/// Compares every concrete row of the table with the computed symbol and
/// lift, the generic row on every monomial of degree at most 5 (which spans
/// all such polynomials), and the potential row on `q^4 + q^2`.
pub fn table1_check<R: Coefficient>() -> Table1Report<R> {
    let rows = table_rows::<R>()
        .into_iter()
        .map(|(label, op, sym, alpha)| {
            let computed_symbol = weyl_symbol(&op);
            let computed_alpha = xi_lift_linear(&computed_symbol);
            Table1Row { label, operator: op, printed_symbol: sym, printed_alpha: alpha, computed_symbol, computed_alpha }
        })
        .collect();
    let monomials: Vec<PolySymbol<R>> =
        (0..=5u32).flat_map(|d| (0..=d).map(move |a| PolySymbol::monomial(a, d - a))).collect();
    let generic_failures =
        monomials.iter().filter(|m| generic_row_alpha(m) != xi_lift_linear(m)).cloned().collect();
    let v: PolySymbol<R> = &PolySymbol::monomial(4, 0) + &PolySymbol::monomial(2, 0);
    let potential_matches = xi_potential(&v, 5).ok() == xi_lift(&v).ok();
    Table1Report { rows, generic_failures, generic_cases: monomials.len(), potential_matches }
}

