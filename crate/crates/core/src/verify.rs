//! Numerical verification of the character-sum and hypergeometric
//! identities over one field.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::chars::Characters;
use crate::dwork::miyatani::kernel_identity_residual;
use crate::dwork::{
    class_identity_residual, dwork6_class_identities, miyatani_identities, valid_lambdas, DworkParams,
};
use crate::error::Result;
use crate::field::FqElem;
use crate::hyper::{mccarthy_f, mccarthy_to_greene, McCarthyParams};

/// Number of λ values each λ-dependent identity is checked at.
pub const LAMBDAS_PER_CHECK: usize = 3;

/// Number of random parameter tuples for the Greene/McCarthy comparison.
pub const TRANSFORM_SAMPLES: usize = 200;

/// Outcome of one family of identity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Number of instances evaluated; zero when the check does not apply.
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }

    fn from_residuals(name: &'static str, tolerance: f64, residuals: impl IntoIterator<Item = f64>) -> Self {
        let (cases, max_residual) = residuals
            .into_iter()
            .fold((0, 0.0f64), |(n, m), r| (n + 1, if r.is_nan() { f64::INFINITY } else { m.max(r) }));
        CheckResult { name, cases, max_residual, tolerance }
    }
}

fn lambdas(ch: &Characters) -> Vec<FqElem> {
    let all = valid_lambdas(ch, 6);
    all.into_iter().take(LAMBDAS_PER_CHECK).collect()
}

/// `g(ε) = -1`, `g(χ)g(χ̄) = qχ(-1)` and cache coherence.
pub fn check_gauss(ch: &Characters) -> Vec<CheckResult> {
    let q = ch.q() as f64;
    let tol = 1e-6 * q.powi(3);
    let n = ch.order() as i64;
    vec![
        CheckResult::from_residuals(
            "gauss sum of trivial character",
            tol,
            [(ch.gauss(ch.trivial()) + 1.0).norm()],
        ),
        CheckResult::from_residuals(
            "gauss conjugate product",
            tol,
            (1..n).map(|k| {
                let chi = ch.omega_pow(k);
                (ch.gauss(chi) * ch.gauss(chi.conj()) - q * ch.sign(chi)).norm()
            }),
        ),
        CheckResult::from_residuals(
            "gauss table coherence",
            tol,
            (0..n).map(|k| (ch.gauss(ch.omega_pow(k)) - ch.gauss_direct(ch.omega_pow(k))).norm()),
        ),
    ]
}

/// Hasse–Davenport for `m ∈ {2, 3, 6}` dividing `q - 1`, every `ψ`.
pub fn check_hasse_davenport(ch: &Characters) -> CheckResult {
    let tol = 1e-6 * (ch.q() as f64).powi(3);
    let n = ch.order() as i64;
    let residuals = [2u32, 3, 6]
        .into_iter()
        .filter(|m| ch.order().is_multiple_of(*m))
        .flat_map(|m| (0..n).map(move |k| (m, k)))
        .map(|(m, k)| ch.check_hasse_davenport(m, ch.omega_pow(k)).unwrap_or(f64::INFINITY));
    CheckResult::from_residuals("hasse-davenport product", tol, residuals)
}

/// The sextic product relation for every `j`.
pub fn check_sextic_product(ch: &Characters) -> CheckResult {
    let tol = 1e-6 * (ch.q() as f64).powi(3);
    let residuals: Vec<f64> = if ch.order().is_multiple_of(6) {
        (0..ch.order() as i64).map(|j| ch.check_sextic_product(j).unwrap_or(f64::INFINITY)).collect()
    } else {
        Vec::new()
    };
    CheckResult::from_residuals("sextic gauss product", tol, residuals)
}

/// The twisted Gauss-sum convolution for all `a, b ∈ tZ` and a few `λ`.
pub fn check_turai(ch: &Characters) -> CheckResult {
    let tol = 1e-6 * (ch.q() as f64).powi(3);
    let mut residuals = Vec::new();
    if let Ok(t) = ch.step(6) {
        let t = t as i64;
        for lambda in lambdas(ch) {
            for a in 0..6 {
                for b in 0..6 {
                    residuals.push(ch.check_turai(a * t, b * t, lambda).unwrap_or(f64::INFINITY));
                }
            }
        }
    }
    CheckResult::from_residuals("gauss convolution with lambda", tol, residuals)
}

/// Closed forms of the per-class Koblitz contributions.
pub fn check_class_identities(ch: &Characters) -> Result<CheckResult> {
    let tol = 1e-6 * (ch.q() as f64).powi(4);
    let mut residuals = Vec::new();
    for lambda in lambdas(ch) {
        let params = DworkParams::new(ch, 6, lambda)?;
        for id in dwork6_class_identities(ch, &params)? {
            residuals.push(class_identity_residual(ch, &params, &id)?);
        }
    }
    Ok(CheckResult::from_residuals("per-class closed forms", tol, residuals))
}

/// Closed forms of `γ(s)F(s)` at the kernel orbit representatives.
pub fn check_kernel_identities(ch: &Characters) -> Result<CheckResult> {
    let tol = 1e-6 * (ch.q() as f64).powi(4);
    let mut residuals = Vec::new();
    for lambda in lambdas(ch) {
        let params = DworkParams::new(ch, 6, lambda)?;
        for id in miyatani_identities(ch, &params)? {
            residuals.push(kernel_identity_residual(ch, &params, &id)?);
        }
    }
    Ok(CheckResult::from_residuals("kernel closed forms", tol, residuals))
}

/// Random `F̃(A₀..Aₙ; ε, B₁..Bₙ | x)` with `A₀ ≠ ε`, `Aᵢ ≠ Bᵢ`, `n ≤ 3`.
pub fn random_transform_params(ch: &Characters, rng: &mut StdRng) -> McCarthyParams {
    let n = ch.order() as i64;
    loop {
        let len = rng.gen_range(1..=4);
        let mut upper = vec![ch.omega_pow(rng.gen_range(1..n))];
        let mut lower = vec![ch.trivial()];
        for _ in 1..len {
            upper.push(ch.omega_pow(rng.gen_range(0..n)));
            lower.push(ch.omega_pow(rng.gen_range(0..n)));
        }
        if upper[1..].iter().zip(&lower[1..]).any(|(a, b)| a == b) {
            continue;
        }
        let x = FqElem::from_index(rng.gen_range(0..ch.q() as usize));
        return McCarthyParams::new(upper, lower, x);
    }
}

/// McCarthy's function against its Greene form on seeded random tuples.
pub fn check_transform(ch: &Characters, samples: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut residuals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_transform_params(ch, &mut rng);
        let d: Complex64 = mccarthy_f(ch, &p)? - mccarthy_to_greene(ch, &p)?;
        residuals.push(d.norm());
    }
    Ok(CheckResult::from_residuals("mccarthy to greene", 1e-6, residuals))
}

/// Every check that applies to the field.
pub fn run_all(ch: &Characters) -> Result<Vec<CheckResult>> {
    let mut out = check_gauss(ch);
    out.push(check_hasse_davenport(ch));
    out.push(check_sextic_product(ch));
    out.push(check_turai(ch));
    if ch.order().is_multiple_of(6) {
        out.push(check_class_identities(ch)?);
        out.push(check_kernel_identities(ch)?);
    }
    out.push(check_transform(ch, TRANSFORM_SAMPLES, 0x5eed)?);
    Ok(out)
}
