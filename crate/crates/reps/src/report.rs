use num_traits::ToPrimitive;
use phasespace_symbolic::{BigRational, Cq, DiffOp, Generator, LineOp, Vars};
use serde::Serialize;

/// One checked identity: its name and how far it is from holding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    pub residual: f64,
    /// Zero for exact identities.
    pub tol: f64,
}

impl RelationCheck {
    pub fn exact<V: Vars>(name: impl Into<String>, lhs: &DiffOp<BigRational, V>, rhs: &DiffOp<BigRational, V>) -> Self {
        let d = lhs - rhs;
        RelationCheck { name: name.into(), holds: d.is_zero(), residual: op_residual(&d), tol: 0.0 }
    }

    pub fn numeric(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        RelationCheck { name: name.into(), holds: residual <= tol, residual, tol }
    }

    /// A yes/no property; residual 1 when it fails.
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        RelationCheck { name: name.into(), holds, residual: if holds { 0.0 } else { 1.0 }, tol: 0.0 }
    }
}

pub(crate) fn cq_abs(c: &Cq) -> f64 {
    let re = c.re.to_f64().unwrap_or(f64::INFINITY);
    let im = c.im.to_f64().unwrap_or(f64::INFINITY);
    re.hypot(im)
}

/// Largest coefficient modulus; zero iff the operator vanishes.
pub fn op_residual<V: Vars>(d: &DiffOp<BigRational, V>) -> f64 {
    d.terms().map(|(_, c)| cq_abs(c)).fold(0.0, f64::max)
}

/// Phase-space generators, their Hilbert-space factorisation and the checks
/// tying the two together.
///
/// The cocycle is fixed to zero and free additive constants to zero; any
/// constant that the relations force is listed with its value.
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub example: String,
    pub hbar: BigRational,
    pub phase_generators: Vec<(String, Generator)>,
    pub hilbert_generators: Vec<(String, LineOp)>,
    pub additive_constants: Vec<(String, Cq)>,
    pub cocycle_phase: f64,
    pub relations: Vec<RelationCheck>,
    pub casimir: Option<Cq>,
}

impl FactorizationResult {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn relation(&self, name: &str) -> Option<&RelationCheck> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn hilbert(&self, name: &str) -> Option<&LineOp> {
        self.hilbert_generators.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn report(&self) -> ExampleReport {
        ExampleReport {
            example: self.example.clone(),
            passed: self.all_hold(),
            relations_checked: self.relations.clone(),
            max_residual: self.max_residual(),
            casimir_value: self.casimir.as_ref().map(pretty_scalar),
            factorized_generators_pretty: self
                .hilbert_generators
                .iter()
                .map(|(n, a)| format!("{n} = {}", pretty_op(a)))
                .collect(),
            phase_generators_pretty: self
                .phase_generators
                .iter()
                .map(|(n, a)| format!("{n} = {a}"))
                .collect(),
            additive_constants: self
                .additive_constants
                .iter()
                .map(|(n, c)| format!("{n} = {}", pretty_scalar(c)))
                .collect(),
            cocycle_phase: self.cocycle_phase,
        }
    }
}

fn pretty_op(a: &LineOp) -> String {
    if a.is_zero() {
        "0".into()
    } else {
        a.to_string()
    }
}

pub(crate) fn pretty_scalar(c: &Cq) -> String {
    if c.im == BigRational::from_integer(0.into()) {
        c.re.to_string()
    } else {
        DiffOp::<BigRational, phasespace_symbolic::PairVars>::scalar(c.clone()).to_string()
    }
}

/// Machine-readable summary of one example.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub passed: bool,
    pub relations_checked: Vec<RelationCheck>,
    pub max_residual: f64,
    pub casimir_value: Option<String>,
    pub factorized_generators_pretty: Vec<String>,
    pub phase_generators_pretty: Vec<String>,
    pub additive_constants: Vec<String>,
    pub cocycle_phase: f64,
}
