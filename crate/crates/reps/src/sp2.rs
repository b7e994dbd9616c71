//! Two representations of sp(2, R) on phase space. Case A is the linear
//! (metaplectic) one; Case B carries third-order terms and a real parameter.

use num_traits::{One, Zero};
use phasespace_symbolic::coeff;
use phasespace_symbolic::{hilbert_generator, read_off_generator, BigRational, Cq, Generator, LineOp, Symbol};

use crate::error::RepsError;
use crate::report::{FactorizationResult, RelationCheck};

#[derive(Debug, Clone, PartialEq)]
pub enum Sp2Case {
    A,
    B { a: BigRational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sp2Params {
    pub case: Sp2Case,
}

impl Sp2Params {
    pub fn case_a() -> Self {
        Sp2Params { case: Sp2Case::A }
    }

    pub fn case_b(a: BigRational) -> Self {
        Sp2Params { case: Sp2Case::B { a } }
    }

    pub fn label(&self) -> String {
        match &self.case {
            Sp2Case::A => "sp2-case-A".into(),
            Sp2Case::B { a } => format!("sp2-case-B(a={a})"),
        }
    }
}

fn t(re: i64, im: i64, d: i64, key: [u32; 4]) -> ([u32; 4], Cq) {
    (key, coeff::cx(BigRational::new(re.into(), d.into()), BigRational::new(im.into(), d.into())))
}

/// The three generators as printed.
pub fn sp2_phase_generators(params: &Sp2Params) -> [Generator; 3] {
    match &params.case {
        Sp2Case::A => [
            Generator::from_terms([t(0, 1, 2, [0, 1, 0, 1]), t(0, -1, 2, [1, 0, 1, 0])]),
            Generator::from_terms([t(0, 1, 2, [1, 0, 0, 1]), t(0, 1, 2, [0, 1, 1, 0])]),
            Generator::from_terms([t(0, 1, 2, [1, 0, 0, 1]), t(0, -1, 2, [0, 1, 1, 0])]),
        ],
        Sp2Case::B { a } => {
            let shared = Generator::from_terms([
                t(0, -1, 2, [0, 2, 0, 1]),
                t(0, 1, 1, [1, 1, 1, 0]),
                t(0, 1, 8, [0, 0, 2, 1]),
                ([0, 0, 1, 0], Cq::new(BigRational::zero(), -a / BigRational::from_integer(2.into()))),
            ]);
            let half_dp = Generator::from_terms([t(0, 1, 2, [0, 0, 0, 1])]);
            [
                &shared + &half_dp,
                Generator::from_terms([t(0, -1, 1, [1, 0, 1, 0]), t(0, 1, 1, [0, 1, 0, 1])]),
                &shared - &half_dp,
            ]
        }
    }
}

/// Generators, their observables, Hilbert-space images with the additive
/// constants forced by the algebra, and the quadratic Casimir.
#[derive(Debug, Clone)]
pub struct Sp2Result {
    pub generators: [Generator; 3],
    pub symbols: [Symbol; 3],
    pub factorization: FactorizationResult,
}

/// Builds the printed generators and factorises them with `hbar = 1`.
///
/// The relations `[A1, A2] = -i A3`, `[A2, A3] = i A1`, `[A3, A1] = i A2`
/// hold on the Hilbert side only up to constants; those constants are
/// solved for and added, and the Casimir `-A1^2 - A2^2 + A3^2` is then
/// required to be a scalar.
pub fn sp2_generators(params: &Sp2Params) -> Result<Sp2Result, RepsError> {
    let [a1, a2, a3] = sp2_phase_generators(params);
    let i = coeff::imag::<BigRational>(1, 1);
    let one = BigRational::one();
    let mut relations = vec![
        RelationCheck::exact("[alpha1, alpha2] = -i alpha3", &a1.commutator(&a2), &a3.scale(&-i.clone())),
        RelationCheck::exact("[alpha2, alpha3] = i alpha1", &a2.commutator(&a3), &a1.scale(&i)),
        RelationCheck::exact("[alpha3, alpha1] = i alpha2", &a3.commutator(&a1), &a2.scale(&i)),
    ];
    let symbols = [read_off_generator(&a1)?, read_off_generator(&a2)?, read_off_generator(&a3)?];
    let raw = [hilbert_generator(&a1, &one)?, hilbert_generator(&a2, &one)?, hilbert_generator(&a3, &one)?];

    // c3 = i[A1,A2] - A3, c1 = -i[A2,A3] - A1, c2 = -i[A3,A1] - A2
    let forced = |lhs: LineOp, own: &LineOp, name: &str, relations: &mut Vec<RelationCheck>| -> Cq {
        let d = &lhs - own;
        match d.as_scalar() {
            Some(c) => c,
            None => {
                relations.push(RelationCheck::exact(format!("{name} is a scalar"), &d, &LineOp::zero()));
                Cq::zero()
            }
        }
    };
    let c3 = forced(raw[0].commutator(&raw[1]).scale(&i), &raw[2], "c3", &mut relations);
    let c1 = forced(raw[1].commutator(&raw[2]).scale(&-i.clone()), &raw[0], "c1", &mut relations);
    let c2 = forced(raw[2].commutator(&raw[0]).scale(&-i.clone()), &raw[1], "c2", &mut relations);
    let h = [
        &raw[0] + &LineOp::scalar(c1.clone()),
        &raw[1] + &LineOp::scalar(c2.clone()),
        &raw[2] + &LineOp::scalar(c3.clone()),
    ];
    relations.push(RelationCheck::exact("[A1, A2] = -i A3", &h[0].commutator(&h[1]), &h[2].scale(&-i.clone())));
    relations.push(RelationCheck::exact("[A2, A3] = i A1", &h[1].commutator(&h[2]), &h[0].scale(&i)));
    relations.push(RelationCheck::exact("[A3, A1] = i A2", &h[2].commutator(&h[0]), &h[1].scale(&i)));
    for (k, c) in [&c1, &c2, &c3].into_iter().enumerate() {
        relations.push(RelationCheck::flag(format!("c{} is real", k + 1), c.im.is_zero()));
    }
    let cas = &(&h[2].pow(2) - &h[0].pow(2)) - &h[1].pow(2);
    let casimir = cas.as_scalar();
    relations.push(RelationCheck {
        name: "Casimir is a scalar".into(),
        holds: casimir.is_some(),
        residual: if casimir.is_some() { 0.0 } else { crate::report::op_residual(&cas) },
        tol: 0.0,
    });
    let factorization = FactorizationResult {
        example: params.label(),
        hbar: one,
        phase_generators: vec![("alpha1".into(), a1.clone()), ("alpha2".into(), a2.clone()), ("alpha3".into(), a3.clone())],
        hilbert_generators: vec![("A1".into(), h[0].clone()), ("A2".into(), h[1].clone()), ("A3".into(), h[2].clone())],
        additive_constants: vec![("c1".into(), c1), ("c2".into(), c2), ("c3".into(), c3)],
        cocycle_phase: 0.0,
        relations,
        casimir,
    };
    Ok(Sp2Result { generators: [a1, a2, a3], symbols, factorization })
}

/// `-3/16` for Case A, `-(a^2 + 1)/4` for Case B.
pub fn expected_casimir(params: &Sp2Params) -> BigRational {
    match &params.case {
        Sp2Case::A => BigRational::new((-3).into(), 16.into()),
        Sp2Case::B { a } => -(a * a + BigRational::one()) / BigRational::from_integer(4.into()),
    }
}
