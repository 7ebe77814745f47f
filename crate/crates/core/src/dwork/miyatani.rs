//! The degree-6 count as a sum over `Ker(f_{q-1})`:
//! `#X_λ(F_q) = (q⁵-1)/(q-1) - Σ_s γ(s) F(s)`, with `γ(s) = -Π g(ω^{-s_i})` and
//! `F(s)` a reduced McCarthy function at `1/λ⁶`.
//!
//! `f_{q-1}` is multiplication by `A' = 6I - J` on `(Z/(q-1))^6 / Δ`, where
//! `Δ` is spanned by `(1,...,1)`. Classes are represented by their member
//! with first coordinate 0; every such member has `s_i ∈ tZ` and
//! `Σ s_i ≡ 0 (mod q-1)`, `t = (q-1)/6`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::snf::smith_normal_form;
use super::{check_lambda, DworkParams};
use crate::chars::{round_count, AlgValue, Characters, MultChar, RoundedCount, ROUND_TOL};
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::hyper::{mccarthy_f, reduce_params, McCarthyParams};

/// Largest `(q-1)^5` the exhaustive kernel search will scan.
const KERNEL_SCAN_BUDGET: u64 = 100_000_000;

/// A representative `s ∈ {0..q-2}^6` of a class in `Ker(f_{q-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelElement {
    pub s: [u32; 6],
}

impl KernelElement {
    /// `|s| = Σ s_i` as an integer.
    pub fn abs(&self) -> u64 {
        self.s.iter().map(|&x| x as u64).sum()
    }

    /// 1 if `|s| ≡ 0 (mod q-1)`, else 0.
    pub fn delta(&self, order: u32) -> u32 {
        u32::from(self.abs().is_multiple_of(order as u64))
    }

    pub fn is_zero(&self) -> bool {
        self.s == [0; 6]
    }

    /// `s / t`, the weight vector in `(Z/6)^6`.
    pub fn weights(&self, t: u32) -> [u32; 6] {
        self.s.map(|x| x / t)
    }
}

/// `A'` for the degree-6 Dwork family: 5 on the diagonal, -1 elsewhere.
pub fn dwork6_a_prime() -> Vec<Vec<i64>> {
    (0..6).map(|i| (0..6).map(|j| if i == j { 5 } else { -1 }).collect()).collect()
}

/// The `6^4` classes `t·w` with `w_1 = 0` and `Σw ≡ 0 (mod 6)`, ordered
/// lexicographically.
pub fn enumerate_kernel(ch: &Characters) -> Result<Vec<KernelElement>> {
    let t = ch.step(6)?;
    let mut out = Vec::with_capacity(1296);
    for code in 0..6u32.pow(4) {
        let mut w = [0u32; 6];
        let mut c = code;
        for i in (1..5).rev() {
            w[i] = c % 6;
            c /= 6;
        }
        w[5] = (6 - w[1..5].iter().sum::<u32>() % 6) % 6;
        out.push(KernelElement { s: w.map(|x| x * t) });
    }
    Ok(out)
}

/// `Ker(f_{q-1})` by scanning every `x ∈ (Z/(q-1))^6` with `x_1 = 0` and
/// testing `A'x ≡ 0` directly. Independent of the description used by
/// [`enumerate_kernel`].
pub fn enumerate_kernel_brute(order: u32) -> Result<Vec<KernelElement>> {
    let n = order as u64;
    let points = n.pow(5);
    if points > KERNEL_SCAN_BUDGET {
        return Err(Error::BudgetExceeded { points, budget: KERNEL_SCAN_BUDGET });
    }
    let a = dwork6_a_prime();
    let mut out = Vec::new();
    for code in 0..points {
        let mut x = [0u32; 6];
        let mut c = code;
        for xi in x[1..].iter_mut().rev() {
            *xi = (c % n) as u32;
            c /= n;
        }
        let in_kernel = a.iter().all(|row| {
            let v: i64 = row.iter().zip(&x).map(|(&r, &xi)| r * xi as i64).sum();
            v.rem_euclid(n as i64) == 0
        });
        if in_kernel {
            out.push(KernelElement { s: x });
        }
    }
    Ok(out)
}

/// `γ(s) = -Π g(ω^{-s_i})`.
pub fn gamma_s(ch: &Characters, s: &KernelElement) -> AlgValue {
    -s.s.iter().map(|&x| ch.gauss_exp(-(x as i64))).product::<Complex64>()
}

/// `γ(s)` from the general product form with `α_i = 1`, `α = 6`, `c_i = 1`
/// and the family parameter `6λ`:
/// `g(ω^{6t̄}) ω^{-6t̄}(6) · ω^{|s|}(-6/(6λ)) · Π g(ω^{-s_i})`, `t̄ = |s|/6`.
pub fn gamma_s_product(ch: &Characters, s: &KernelElement, lambda: FqElem) -> Result<AlgValue> {
    if lambda.is_zero() {
        return Err(Error::BadLambda("λ must be nonzero".into()));
    }
    let f = ch.field();
    let abs = s.abs();
    if !abs.is_multiple_of(6) {
        return Err(Error::BadParams(format!("|s| = {abs} is not divisible by 6")));
    }
    let six_tbar = (abs / 6 * 6) as i64;
    let arg = f.neg(f.inv(lambda)?);
    let front = ch.gauss_exp(six_tbar)
        * ch.value_at_int(ch.omega_pow(-six_tbar), 6)
        * ch.value(ch.omega_pow(abs as i64), arg);
    Ok(front * s.s.iter().map(|&x| ch.gauss_exp(-(x as i64))).product::<Complex64>())
}

/// The McCarthy parameters of `F(s)` before reduction: upper
/// `ω^{|s|/6 + it}` for `i = 0..5`, lower `ω^{s_i}`.
pub fn miyatani_params(ch: &Characters, s: &KernelElement, x: FqElem) -> Result<McCarthyParams> {
    let t = ch.step(6)? as i64;
    let shift = (s.abs() / 6) as i64;
    Ok(McCarthyParams::new(
        (0..6).map(|i| ch.omega_pow(shift + i * t)).collect(),
        s.s.iter().map(|&x| ch.omega_pow(x as i64)).collect(),
        x,
    ))
}

/// `F(s) = q^{δ(s)-1} F̃ Red(...)` at `1/λ⁶` (no power of `q` for `s = 0`).
pub fn miyatani_f_s(ch: &Characters, s: &KernelElement, lambda: FqElem) -> Result<AlgValue> {
    ch.step(6)?;
    check_lambda(ch, 6, lambda)?;
    let f = ch.field();
    let x = f.inv(f.pow(lambda, 6))?;
    let reduced = reduce_params(&miyatani_params(ch, s, x)?);
    let value = mccarthy_f(ch, &reduced)?;
    if s.is_zero() {
        return Ok(value);
    }
    let scale = (ch.q() as f64).powi(s.delta(ch.order()) as i32 - 1);
    Ok(value * scale)
}

fn require_sextic(params: &DworkParams) -> Result<()> {
    if params.degree != 6 {
        return Err(Error::BadParams(format!("expected degree 6, got {}", params.degree)));
    }
    Ok(())
}

/// `#X_λ⁶(F_q) = (q⁵-1)/(q-1) - Σ_s γ(s) F(s)` over all `6^4` classes.
pub fn miyatani_dwork6_count(ch: &Characters, params: &DworkParams) -> Result<RoundedCount> {
    require_sextic(params)?;
    let kernel = enumerate_kernel(ch)?;
    let parts = kernel
        .par_iter()
        .map(|s| Ok(gamma_s(ch, s) * miyatani_f_s(ch, s, params.lambda)?))
        .collect::<Result<Vec<_>>>()?;
    let q = ch.q() as f64;
    let main = Complex64::new((q.powi(5) - 1.0) / (q - 1.0), 0.0);
    round_count(main - parts.into_iter().sum::<Complex64>(), ROUND_TOL)
}

/// Closed form for `γ(s)F(s)` at one kernel class, `s = t·weights`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelIdentity {
    pub weights: [u32; 6],
    pub closed_form: AlgValue,
}

/// Closed forms for `γ(s)F(s)` at the fourteen orbit representatives of
/// `Ker(f_{q-1})` under `S_6`.
pub fn miyatani_identities(ch: &Characters, params: &DworkParams) -> Result<Vec<KernelIdentity>> {
    require_sextic(params)?;
    let t = ch.step(6)? as i64;
    let x = params.argument(ch);
    let q = ch.q() as f64;
    let w = |k: i64| ch.omega_pow(k * t);
    let m = |upper: &[i64], lower: &[i64]| -> Result<AlgValue> {
        let p = McCarthyParams::new(
            upper.iter().map(|&k| w(k)).collect::<Vec<MultChar>>(),
            lower.iter().map(|&k| w(k)).collect(),
            x,
        );
        mccarthy_f(ch, &p)
    };
    let j = |ks: &[i64]| ch.jacobi_fast(&ks.iter().map(|&k| w(k)).collect::<Vec<_>>());
    let s1 = ch.sign(w(1));
    let id = |weights, closed_form| KernelIdentity { weights, closed_form };
    Ok(vec![
        id([0, 0, 0, 0, 0, 0], -m(&[1, 2, 3, 4, 5], &[0; 5])?),
        id([0, 0, 0, 0, 1, 5], -q * s1 * m(&[2, 3, 4], &[0; 3])?),
        id([0, 0, 0, 0, 2, 4], -q * m(&[1, 3, 5], &[0; 3])?),
        id([0, 0, 0, 0, 3, 3], -q * s1 * m(&[1, 2, 4, 5], &[0, 0, 0, 3])?),
        id([0, 0, 0, 1, 1, 4], -q * j(&[2, 5, 5])? * m(&[2, 3, 5], &[0, 0, 1])?),
        id([0, 0, 0, 2, 5, 5], -q * j(&[1, 1, 4])? * m(&[3, 4, 1], &[0, 0, 5])?),
        id([0, 0, 0, 2, 2, 2], -q * j(&[4, 4, 4])? * m(&[1, 3, 4, 5], &[0, 0, 2, 2])?),
        id([0, 0, 0, 3, 4, 5], -q * j(&[1, 2, 3])? * m(&[2, 1], &[0, 0])?),
        id([0, 0, 0, 1, 2, 3], -q * j(&[3, 4, 5])? * m(&[4, 5], &[0, 0])?),
        id([0, 0, 1, 1, 2, 2], q * j(&[4, 4, 5, 5])? * m(&[3, 4, 5], &[0, 1, 2])?),
        id([0, 0, 2, 2, 4, 4], -q * q * m(&[3, 5, 1], &[0, 2, 4])?),
        id([0, 0, 1, 3, 4, 4], q * j(&[2, 2, 3, 5])? * m(&[2, 5], &[0, 4])?),
        id([0, 0, 1, 3, 3, 5], -q * q * m(&[2, 4], &[0, 3])?),
        id([0, 0, 1, 2, 4, 5], -q * q * s1 * m(&[3], &[0])?),
    ])
}

/// `|γ(s)F(s) - closed form|` for one identity.
pub fn kernel_identity_residual(ch: &Characters, params: &DworkParams, id: &KernelIdentity) -> Result<f64> {
    let t = ch.step(6)?;
    let s = KernelElement { s: id.weights.map(|w| w * t) };
    let lhs = gamma_s(ch, &s) * miyatani_f_s(ch, &s, params.lambda)?;
    Ok((lhs - id.closed_form).norm())
}

/// Whether the hypotheses of the kernel-sum formula hold for the degree-6
/// Dwork family over this field.
#[derive(Clone, Debug, PartialEq)]
pub struct Preflight {
    /// `q - 1` divisible by every `α_i` and by `α`.
    pub condition1: bool,
    /// Every `s_i` divisible by `α_i` and every `|s|` by `α`.
    pub condition2: bool,
    /// Elementary divisors of every `[A_J; 1...1]` divide `q - 1`.
    pub condition3: bool,
    /// Elementary divisors of `A'`.
    pub divisors: Vec<i64>,
    /// Product of the nonzero divisors.
    pub kernel_size: u64,
}

impl Preflight {
    pub fn ok(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

/// Checks the hypotheses with `A = 6I` (exponent matrix), `α_i = 1`, `α = 6`.
pub fn preflight(ch: &Characters) -> Preflight {
    let order = ch.order() as i64;
    let alpha_i = [1i64; 6];
    let alpha: i64 = alpha_i.iter().sum();
    let divisors = smith_normal_form(&dwork6_a_prime());
    let kernel_size = divisors.iter().filter(|&&d| d != 0).map(|&d| d as u64).product();

    let condition1 = alpha_i.iter().all(|a| order % a == 0) && order % alpha == 0;
    let condition2 = condition1
        && enumerate_kernel(ch).is_ok_and(|k| {
            k.iter().all(|s| {
                s.s.iter().zip(&alpha_i).all(|(&x, &a)| x as i64 % a == 0) && s.abs() as i64 % alpha == 0
            })
        });

    let a: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| if i == j { 6 } else { 0 }).collect()).collect();
    let mut condition3 = true;
    for mask in 0u32..64 {
        let size = mask.count_ones();
        if !(3..=5).contains(&size) {
            continue;
        }
        let in_j = |j: usize| mask >> j & 1 == 1;
        // Monomials whose variables all lie in J.
        let cols: Vec<usize> = (0..6).filter(|&i| (0..6).all(|j| in_j(j) || a[i][j] == 0)).collect();
        let mut m: Vec<Vec<i64>> = (0..6).filter(|&j| in_j(j)).map(|j| cols.iter().map(|&i| a[j][i]).collect()).collect();
        m.push(vec![1; cols.len()]);
        condition3 &= smith_normal_form(&m).iter().all(|&d| d == 0 || order % d == 0);
    }
    Preflight { condition1, condition2, condition3, divisors, kernel_size }
}
