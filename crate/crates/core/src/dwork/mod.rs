//! Closed forms for `#X_λ^d(F_q)`, `X_λ^d: x_1^d + ... + x_d^d = dλ x_1...x_d`,
//! in degrees 4, 5 and 6, and the Gauss-sum route through `Ker(f_{q-1})`
//! (see [`miyatani`]).
//!
//! Notation: `t = (q-1)/d`, `ω_β = ω^{(q-1)/β}`, and every hypergeometric
//! function is evaluated at `1/λ^d`.

pub mod miyatani;
pub mod snf;

use num_complex::Complex64;

use crate::chars::{round_count, AlgValue, Characters, MultChar, RoundedCount, ROUND_TOL};
use crate::diagonal::{class_contribution, DiagonalParams};
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::hyper::{greene_f, GreeneParams};

pub use miyatani::{
    enumerate_kernel, enumerate_kernel_brute, gamma_s, gamma_s_product, miyatani_dwork6_count,
    miyatani_f_s, miyatani_identities, preflight, KernelElement, Preflight,
};
pub use snf::smith_normal_form;

/// The Dwork member of degree `degree` at `λ` over one field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DworkParams {
    pub degree: u32,
    pub lambda: FqElem,
}

impl DworkParams {
    /// Checks `degree ∈ {4, 5, 6}`, `q ≡ 1 (mod degree)`, `λ ≠ 0`, `λ^degree ≠ 1`.
    pub fn new(ch: &Characters, degree: u32, lambda: FqElem) -> Result<DworkParams> {
        if !(4..=6).contains(&degree) {
            return Err(Error::BadParams(format!("closed forms exist for degrees 4, 5, 6, not {degree}")));
        }
        ch.step(degree)?;
        check_lambda(ch, degree, lambda)?;
        Ok(DworkParams { degree, lambda })
    }

    /// `1/λ^degree`.
    pub fn argument(&self, ch: &Characters) -> FqElem {
        let f = ch.field();
        f.inv(f.pow(self.lambda, self.degree as i64)).expect("λ ≠ 0")
    }
}

pub(crate) fn check_lambda(ch: &Characters, degree: u32, lambda: FqElem) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::BadLambda("λ must be nonzero".into()));
    }
    if ch.field().pow(lambda, degree as i64) == FqElem::ONE {
        return Err(Error::BadLambda(format!(
            "λ = {} has λ^{degree} = 1",
            ch.field().format(lambda)
        )));
    }
    Ok(())
}

/// Values of `λ` with `λ ≠ 0` and `λ^degree ≠ 1`, in field-element order.
pub fn valid_lambdas(ch: &Characters, degree: u32) -> Vec<FqElem> {
    ch.field()
        .nonzero()
        .filter(|&l| check_lambda(ch, degree, l).is_ok())
        .collect()
}

/// One labelled summand of a closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub label: &'static str,
    pub value: AlgValue,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Shorthand for the repeated building blocks of the closed forms.
struct Ctx<'a> {
    ch: &'a Characters,
    t: i64,
    x: FqElem,
    q: f64,
}

impl<'a> Ctx<'a> {
    fn new(ch: &'a Characters, params: &DworkParams) -> Ctx<'a> {
        Ctx {
            ch,
            t: (ch.order() / params.degree) as i64,
            x: params.argument(ch),
            q: ch.q() as f64,
        }
    }

    /// `ω^{k t}`.
    fn w(&self, k: i64) -> MultChar {
        self.ch.omega_pow(k * self.t)
    }

    fn greene(&self, upper: &[i64], lower: &[i64]) -> Result<AlgValue> {
        let p = GreeneParams::new(
            upper.iter().map(|&k| self.w(k)).collect(),
            lower.iter().map(|&k| self.w(k)).collect(),
            self.x,
        );
        greene_f(self.ch, &p)
    }

    fn jacobi(&self, ks: &[i64]) -> Result<AlgValue> {
        let cs: Vec<MultChar> = ks.iter().map(|&k| self.w(k)).collect();
        self.ch.jacobi_fast(&cs)
    }

    /// `ω^{kt}(-1)`.
    fn sign(&self, k: i64) -> f64 {
        self.ch.sign(self.w(k))
    }

    /// `ω^{kt}(y)`.
    fn value(&self, k: i64, y: FqElem) -> AlgValue {
        self.ch.value(self.w(k), y)
    }

    fn one_minus_lambda_pow(&self, lambda: FqElem, d: i64) -> FqElem {
        let f = self.ch.field();
        f.sub(FqElem::ONE, f.pow(lambda, d))
    }
}

fn require_degree(params: &DworkParams, degree: u32) -> Result<()> {
    if params.degree != degree {
        return Err(Error::BadParams(format!("expected degree {degree}, got {}", params.degree)));
    }
    Ok(())
}

fn total(terms: &[Term]) -> AlgValue {
    terms.iter().map(|t| t.value).sum()
}

/// The four summands of the degree-4 count (`ω^{kt}` written `k`):
/// `(q³-1)/(q-1) + 12q ω^t(-1) ω^{2t}(1-λ⁴) + q² ₃F₂(1,2,3; 0,0)
/// + 3q² (ω^{3t}; ω^t) ₂F₁(3,1; 2)`.
pub fn dwork4_greene_terms(ch: &Characters, params: &DworkParams) -> Result<Vec<Term>> {
    require_degree(params, 4)?;
    let c = Ctx::new(ch, params);
    let q = c.q;
    let binom = ch.norm_jacobi(c.w(3), c.w(1))?;
    Ok(vec![
        Term { label: "(q^3-1)/(q-1)", value: real((q.powi(3) - 1.0) / (q - 1.0)) },
        Term {
            label: "12q w^t(-1) w^2t(1-l^4)",
            value: 12.0 * q * c.sign(1) * c.value(2, c.one_minus_lambda_pow(params.lambda, 4)),
        },
        Term { label: "q^2 3F2", value: q * q * c.greene(&[1, 2, 3], &[0, 0])? },
        Term { label: "3q^2 (w^3t;w^t) 2F1", value: 3.0 * q * q * binom * c.greene(&[3, 1], &[2])? },
    ])
}

/// The six summands of the degree-5 count:
/// `(q⁴-1)/(q-1) + q³ ₄F₃(1,2,3,4; 0,0,0) + 20q² ₂F₁(2,3; 0)
/// + 20q² ₂F₁(1,4; 0) + 30q² ₂F₁(1,3; 4) + 30q² ₂F₁(1,2; 3)`.
pub fn dwork5_greene_terms(ch: &Characters, params: &DworkParams) -> Result<Vec<Term>> {
    require_degree(params, 5)?;
    let c = Ctx::new(ch, params);
    let q = c.q;
    let q2 = q * q;
    Ok(vec![
        Term { label: "(q^4-1)/(q-1)", value: real((q.powi(4) - 1.0) / (q - 1.0)) },
        Term { label: "q^3 4F3", value: q.powi(3) * c.greene(&[1, 2, 3, 4], &[0, 0, 0])? },
        Term { label: "20q^2 2F1(2t,3t;e)", value: 20.0 * q2 * c.greene(&[2, 3], &[0])? },
        Term { label: "20q^2 2F1(t,4t;e)", value: 20.0 * q2 * c.greene(&[1, 4], &[0])? },
        Term { label: "30q^2 2F1(t,3t;4t)", value: 30.0 * q2 * c.greene(&[1, 3], &[4])? },
        Term { label: "30q^2 2F1(t,2t;3t)", value: 30.0 * q2 * c.greene(&[1, 2], &[3])? },
    ])
}

/// The fifteen summands of the degree-6 count, with `ω₆ = ω^t`,
/// `ω₃ = ω^{2t}`, `ω₂ = ω^{3t}`, `ω̄₃ = ω^{4t}`, `ω̄₆ = ω^{5t}`.
pub fn dwork6_greene_terms(ch: &Characters, params: &DworkParams) -> Result<Vec<Term>> {
    require_degree(params, 6)?;
    let c = Ctx::new(ch, params);
    let q = c.q;
    let (q2, q3) = (q * q, q.powi(3));
    let s6 = c.sign(1);
    // J(ω₆,ω₃,ω₂) and J(ω₂,ω̄₃,ω̄₆)
    let j632 = c.jacobi(&[1, 2, 3])?;
    let j234 = c.jacobi(&[3, 4, 5])?;
    Ok(vec![
        Term { label: "(q^5-1)/(q-1)", value: real((q.powi(5) - 1.0) / (q - 1.0)) },
        Term {
            label: "360q^2 w2(1-l^6)",
            value: 360.0 * q2 * c.value(3, c.one_minus_lambda_pow(params.lambda, 6)),
        },
        Term { label: "q^4 5F4", value: q.powi(4) * c.greene(&[1, 2, 3, 4, 5], &[0, 0, 0, 0])? },
        Term { label: "30q^3 w6(-1) 3F2(w3,w2,~w3;e,e)", value: 30.0 * q3 * s6 * c.greene(&[2, 3, 4], &[0, 0])? },
        Term { label: "30q^3 3F2(w6,w2,~w6;e,e)", value: 30.0 * q3 * c.greene(&[1, 3, 5], &[0, 0])? },
        Term {
            label: "-15q^3 w6(-1) J(w2,~w3,~w6) 4F3",
            value: -15.0 * q3 * s6 * j234 * c.greene(&[1, 5, 4, 2], &[0, 0, 3])?,
        },
        Term {
            label: "-20q^3 w6(-1) J(w6,w3,w2) 4F3",
            value: -20.0 * q3 * s6 * j632 * c.greene(&[1, 3, 4, 5], &[0, 2, 2])?,
        },
        Term {
            label: "60q^2 w6(-1) J(w6,w6,~w3) J(w2,~w3,~w6) 3F2",
            value: 60.0 * q2 * s6 * c.jacobi(&[1, 1, 4])? * j234 * c.greene(&[1, 4, 3], &[0, 5])?,
        },
        Term {
            label: "60q^2 J(w3,w3,w3) J(w2,~w3,~w6) 3F2",
            value: 60.0 * q2 * c.jacobi(&[2, 2, 2])? * j234 * c.greene(&[2, 5, 3], &[0, 1])?,
        },
        Term { label: "90q^3 3F2(w2,~w3,~w6;w6,w3)", value: 90.0 * q3 * c.greene(&[3, 4, 5], &[1, 2])? },
        Term {
            label: "-30q^2 J(w6,w6) J(w6,w3,w2) 3F2",
            value: -30.0 * q2 * c.jacobi(&[1, 1])? * j632 * c.greene(&[1, 3, 5], &[2, 4])?,
        },
        Term { label: "-120q^2 J(w6,w3,w2) 2F1(w6,w3;e)", value: -120.0 * q2 * j632 * c.greene(&[1, 2], &[0])? },
        Term { label: "-120q^2 J(w2,~w3,~w6) 2F1(~w3,~w6;e)", value: -120.0 * q2 * j234 * c.greene(&[4, 5], &[0])? },
        Term { label: "-180q^2 J(w6,w3,w2) 2F1(w3,~w3;w2)", value: -180.0 * q2 * j632 * c.greene(&[2, 4], &[3])? },
        Term { label: "-180q^2 J(w6,w3,w2) 2F1(w3,~w6;~w3)", value: -180.0 * q2 * j632 * c.greene(&[2, 5], &[4])? },
    ])
}

pub fn dwork4_greene_count(ch: &Characters, params: &DworkParams) -> Result<RoundedCount> {
    round_count(total(&dwork4_greene_terms(ch, params)?), ROUND_TOL)
}

pub fn dwork5_greene_count(ch: &Characters, params: &DworkParams) -> Result<RoundedCount> {
    round_count(total(&dwork5_greene_terms(ch, params)?), ROUND_TOL)
}

pub fn dwork6_greene_count(ch: &Characters, params: &DworkParams) -> Result<RoundedCount> {
    round_count(total(&dwork6_greene_terms(ch, params)?), ROUND_TOL)
}

/// Dispatches on `params.degree`.
pub fn greene_count(ch: &Characters, params: &DworkParams) -> Result<RoundedCount> {
    match params.degree {
        4 => dwork4_greene_count(ch, params),
        5 => dwork5_greene_count(ch, params),
        _ => dwork6_greene_count(ch, params),
    }
}

/// A closed form for the Koblitz contribution of one or more weight
/// classes of the degree-6 family.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassIdentity {
    /// Classes whose contributions `Σ N_q(0,w) + S_[w]` are summed.
    pub classes: Vec<[u32; 6]>,
    pub closed_form: AlgValue,
}

/// Weight classes of `W/~` for `d = n = 6`, one per orbit, with orbit sizes.
pub const DWORK6_CLASSES: [([u32; 6], usize); 14] = [
    ([0, 0, 0, 0, 0, 0], 1),
    ([0, 0, 0, 0, 1, 5], 30),
    ([0, 0, 0, 0, 2, 4], 30),
    ([0, 0, 0, 0, 3, 3], 15),
    ([0, 0, 0, 1, 1, 4], 60),
    ([0, 0, 0, 1, 2, 3], 120),
    ([0, 0, 0, 2, 2, 2], 20),
    ([0, 0, 0, 2, 5, 5], 60),
    ([0, 0, 0, 3, 4, 5], 120),
    ([0, 0, 1, 1, 2, 2], 90),
    ([0, 0, 2, 2, 4, 4], 30),
    ([0, 0, 2, 2, 3, 5], 180),
    ([0, 0, 1, 3, 3, 5], 180),
    ([0, 0, 1, 2, 4, 5], 360),
];

/// Closed forms for the per-class contributions of the degree-6 family.
/// The classes `[0,0,0,1,1,4]` and `[0,0,0,2,5,5]` only have a closed
/// form for their sum.
pub fn dwork6_class_identities(ch: &Characters, params: &DworkParams) -> Result<Vec<ClassIdentity>> {
    require_degree(params, 6)?;
    let c = Ctx::new(ch, params);
    let q = c.q;
    let (q2, q3) = (q * q, q.powi(3));
    let s6 = c.sign(1);
    let j632 = c.jacobi(&[1, 2, 3])?;
    let j234 = c.jacobi(&[3, 4, 5])?;
    let one = |w: [u32; 6], v: AlgValue| ClassIdentity { classes: vec![w], closed_form: v };
    Ok(vec![
        one(
            [0, 0, 0, 0, 0, 0],
            real((q.powi(5) - 1.0) / (q - 1.0)) + q.powi(4) * c.greene(&[1, 2, 3, 4, 5], &[0, 0, 0, 0])?,
        ),
        one([0, 0, 0, 0, 1, 5], q3 * s6 * c.greene(&[2, 3, 4], &[0, 0])?),
        one([0, 0, 0, 0, 2, 4], q3 * c.greene(&[1, 3, 5], &[0, 0])?),
        one([0, 0, 1, 1, 2, 2], q3 * c.greene(&[3, 4, 5], &[1, 2])?),
        one([0, 0, 0, 0, 3, 3], -q3 * s6 * j234 * c.greene(&[1, 5, 4, 2], &[0, 0, 3])?),
        one([0, 0, 2, 2, 4, 4], -q2 * c.jacobi(&[1, 1])? * j632 * c.greene(&[1, 3, 5], &[2, 4])?),
        one([0, 0, 0, 2, 2, 2], -q3 * s6 * j632 * c.greene(&[1, 3, 4, 5], &[0, 2, 2])?),
        ClassIdentity {
            classes: vec![[0, 0, 0, 1, 1, 4], [0, 0, 0, 2, 5, 5]],
            closed_form: q2 * s6 * c.jacobi(&[1, 1, 4])? * j234 * c.greene(&[1, 4, 3], &[0, 5])?
                + q2 * c.jacobi(&[2, 2, 2])? * j234 * c.greene(&[2, 5, 3], &[0, 1])?,
        },
        one([0, 0, 0, 1, 2, 3], -q2 * j632 * c.greene(&[1, 2], &[0])?),
        one([0, 0, 0, 3, 4, 5], -q2 * j234 * c.greene(&[4, 5], &[0])?),
        one([0, 0, 1, 3, 3, 5], -q2 * j632 * c.greene(&[2, 4], &[3])?),
        one([0, 0, 2, 2, 3, 5], -q2 * j632 * c.greene(&[2, 5], &[4])?),
        one(
            [0, 0, 1, 2, 4, 5],
            q2 * c.value(3, c.one_minus_lambda_pow(params.lambda, 6)),
        ),
    ])
}

/// Residual `|Σ contributions - closed form|` for one class identity.
pub fn class_identity_residual(ch: &Characters, params: &DworkParams, id: &ClassIdentity) -> Result<f64> {
    let diag = DiagonalParams::dwork(ch, 6, params.lambda)?;
    let mut lhs = Complex64::new(0.0, 0.0);
    for w in &id.classes {
        lhs += class_contribution(ch, &diag, w)?;
    }
    Ok((lhs - id.closed_form).norm())
}
