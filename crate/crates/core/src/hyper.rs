//! Finite-field hypergeometric functions in Greene's and McCarthy's
//! normalizations.
//!
//! Both are sums over the `q - 1` characters `χ = ω^c`. Greene's `ₙ₊₁Fₙ`
//! multiplies normalized Jacobi sums; McCarthy's `F̃` multiplies ratios of
//! Gauss sums. Each term reads the Gauss table in O(1), so one evaluation
//! costs O(q·n).

use num_complex::Complex64;

use crate::chars::{check_same_field, AlgValue, Characters, MultChar};
use crate::error::{Error, Result};
use crate::field::FqElem;

/// Greene's `ₙ₊₁Fₙ(A₀, A₁..Aₙ; B₁..Bₙ | x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GreeneParams {
    /// `A₀, A₁, ..., Aₙ`.
    pub upper: Vec<MultChar>,
    /// `B₁, ..., Bₙ`.
    pub lower: Vec<MultChar>,
    pub x: FqElem,
}

/// McCarthy's `ₘF̃ₘ(A₁..Aₘ; B₁..Bₘ | x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct McCarthyParams {
    pub upper: Vec<MultChar>,
    pub lower: Vec<MultChar>,
    pub x: FqElem,
}

impl GreeneParams {
    pub fn new(upper: Vec<MultChar>, lower: Vec<MultChar>, x: FqElem) -> GreeneParams {
        GreeneParams { upper, lower, x }
    }

    fn validate(&self, ch: &Characters) -> Result<()> {
        check_same_field(&self.upper, ch.field().tag())?;
        check_same_field(&self.lower, ch.field().tag())?;
        if self.lower.is_empty() || self.upper.len() != self.lower.len() + 1 {
            return Err(Error::BadParams(format!(
                "Greene function needs n + 1 upper and n >= 1 lower parameters, got {} and {}",
                self.upper.len(),
                self.lower.len()
            )));
        }
        Ok(())
    }
}

impl McCarthyParams {
    pub fn new(upper: Vec<MultChar>, lower: Vec<MultChar>, x: FqElem) -> McCarthyParams {
        McCarthyParams { upper, lower, x }
    }

    fn validate(&self, ch: &Characters) -> Result<()> {
        check_same_field(&self.upper, ch.field().tag())?;
        check_same_field(&self.lower, ch.field().tag())?;
        if self.upper.len() != self.lower.len() {
            return Err(Error::BadParams(format!(
                "McCarthy function needs equally many upper and lower parameters, got {} and {}",
                self.upper.len(),
                self.lower.len()
            )));
        }
        Ok(())
    }
}

/// Greene's function.
///
/// For `n >= 2` this is `q/(q-1) Σ_χ (A₀χ; χ) Π_i (Aᵢχ; Bᵢχ) χ(x)`.
/// For `n = 1` it is the separate one-variable form
/// `ε(x) A₁B₁(-1)/q Σ_y A₁(y) Ā₁B₁(1-y) Ā₀(1-xy)`.
pub fn greene_f(ch: &Characters, params: &GreeneParams) -> Result<AlgValue> {
    params.validate(ch)?;
    if params.lower.len() == 1 {
        return Ok(greene_2f1_sum(ch, params));
    }
    let n = ch.order() as i64;
    let q = ch.q() as f64;
    let Some(xk) = params.x.exponent() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let a0 = params.upper[0];
    let mut total = Complex64::new(0.0, 0.0);
    for c in 0..n {
        let chi = ch.omega_pow(c);
        let mut term = ch.norm_jacobi_unchecked(a0 * chi, chi);
        for (&a, &b) in params.upper[1..].iter().zip(&params.lower) {
            term *= ch.norm_jacobi_unchecked(a * chi, b * chi);
        }
        total += term * ch.zeta(c as u64 * xk as u64);
    }
    Ok(total * (q / (q - 1.0)))
}

fn greene_2f1_sum(ch: &Characters, params: &GreeneParams) -> AlgValue {
    if params.x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let f = ch.field();
    let (a0, a1, b1) = (params.upper[0], params.upper[1], params.lower[0]);
    let middle = a1.conj() * b1;
    let outer = a0.conj();
    let sum: Complex64 = f
        .nonzero()
        .map(|y| {
            ch.value(a1, y)
                * ch.value(middle, f.sub(FqElem::ONE, y))
                * ch.value(outer, f.sub(FqElem::ONE, f.mul(params.x, y)))
        })
        .sum();
    sum * (ch.sign(a1 * b1) / ch.q() as f64)
}

/// Greene's function evaluated from its defining double sum, with every
/// normalized Jacobi sum recomputed by summation over the field. Independent
/// of the Gauss table; O(n·q²). Used as an oracle for [`greene_f`].
pub fn greene_f_direct(ch: &Characters, params: &GreeneParams) -> Result<AlgValue> {
    params.validate(ch)?;
    if params.lower.len() == 1 {
        return Ok(greene_2f1_sum(ch, params));
    }
    let q = ch.q() as f64;
    let binom = |a: MultChar, b: MultChar| ch.jacobi2_direct(a, b.conj()) * (ch.sign(b) / q);
    let a0 = params.upper[0];
    let mut total = Complex64::new(0.0, 0.0);
    for c in 0..ch.order() as i64 {
        let chi = ch.omega_pow(c);
        let mut term = binom(a0 * chi, chi);
        for (&a, &b) in params.upper[1..].iter().zip(&params.lower) {
            term *= binom(a * chi, b * chi);
        }
        total += term * ch.value(chi, params.x);
    }
    Ok(total * (q / (q - 1.0)))
}

/// McCarthy's function
/// `-1/(q-1) Σ_χ Π_i g(Aᵢχ)/g(Aᵢ) · g(B̄ᵢχ̄)/g(B̄ᵢ) · χ(-1)^m χ(x)`.
pub fn mccarthy_f(ch: &Characters, params: &McCarthyParams) -> Result<AlgValue> {
    params.validate(ch)?;
    let Some(xk) = params.x.exponent() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let n = ch.order() as i64;
    let m = params.upper.len() as u64;
    // χ(-1)^m = ω(-1)^{cm}, and ω(-1) = ζ^{(q-1)/2}.
    let half = if ch.q().is_multiple_of(2) { 0 } else { n as u64 / 2 };
    let base: Complex64 = params
        .upper
        .iter()
        .zip(&params.lower)
        .map(|(&a, &b)| ch.gauss(a) * ch.gauss(b.conj()))
        .product();
    let mut total = Complex64::new(0.0, 0.0);
    for c in 0..n {
        let mut term = Complex64::new(1.0, 0.0);
        for (&a, &b) in params.upper.iter().zip(&params.lower) {
            term *= ch.gauss(a.shift(c)) * ch.gauss(b.conj().shift(-c));
        }
        let phase = c as u64 * (half * m + xk as u64);
        total += term * ch.zeta(phase);
    }
    Ok(-total / base / (n as f64))
}

/// Removes the largest multiset of characters shared by the upper and
/// lower lists. The survivors keep their relative order.
pub fn reduce_params(params: &McCarthyParams) -> McCarthyParams {
    let mut lower: Vec<Option<MultChar>> = params.lower.iter().copied().map(Some).collect();
    let mut upper = Vec::with_capacity(params.upper.len());
    for &a in &params.upper {
        match lower.iter_mut().find(|b| **b == Some(a)) {
            Some(slot) => *slot = None,
            None => upper.push(a),
        }
    }
    McCarthyParams { upper, lower: lower.into_iter().flatten().collect(), x: params.x }
}

/// Evaluates `F̃(A₀..Aₙ; ε, B₁..Bₙ | x)` through Greene's function:
/// `Π (Aᵢ; Bᵢ)^{-1} · ₙ₊₁Fₙ(A₀..Aₙ; B₁..Bₙ | x)`.
///
/// With no `Bᵢ` the right side is `₁F₀(A₀; x) = ε(x) Ā₀(1 - x)`.
pub fn mccarthy_to_greene(ch: &Characters, params: &McCarthyParams) -> Result<AlgValue> {
    params.validate(ch)?;
    let (Some(&a0), Some(&b0)) = (params.upper.first(), params.lower.first()) else {
        return Err(Error::BadParams("need at least one parameter pair".into()));
    };
    if !b0.is_trivial() {
        return Err(Error::PreconditionViolated("first lower parameter must be trivial".into()));
    }
    if a0.is_trivial() {
        return Err(Error::PreconditionViolated("first upper parameter must be nontrivial".into()));
    }
    let pairs = params.upper[1..].iter().zip(&params.lower[1..]);
    if let Some(i) = pairs.clone().position(|(a, b)| a == b) {
        return Err(Error::PreconditionViolated(format!("upper and lower parameter {} coincide", i + 1)));
    }
    if params.upper.len() == 1 {
        return Ok(greene_1f0_char(ch, a0, params.x));
    }
    let greene = GreeneParams {
        upper: params.upper.clone(),
        lower: params.lower[1..].to_vec(),
        x: params.x,
    };
    let scale: Complex64 = pairs.map(|(&a, &b)| ch.norm_jacobi_unchecked(a, b)).product();
    Ok(greene_f(ch, &greene)? / scale)
}

/// `₁F₀(ω_α; x) = ε(x) ω̄_α(1 - x)`.
pub fn greene_1f0(ch: &Characters, alpha: u32, x: FqElem) -> Result<AlgValue> {
    Ok(greene_1f0_char(ch, ch.omega_beta(alpha)?, x))
}

/// `₁F₀(A; x) = ε(x) Ā(1 - x)` for an arbitrary character `A`.
pub fn greene_1f0_char(ch: &Characters, a: MultChar, x: FqElem) -> AlgValue {
    if x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    ch.value(a.conj(), ch.field().sub(FqElem::ONE, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn chars(p: u32) -> Characters {
        Characters::for_field(p, 1).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-6
    }

    /// `1/λ^6`.
    fn arg6(ch: &Characters, lambda: i64) -> FqElem {
        let f = ch.field();
        f.inv(f.pow(f.from_int(lambda), 6)).unwrap()
    }

    #[test]
    fn greene_vanishes_at_zero() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let p3 = GreeneParams::new(vec![w(2), w(6), w(10)], vec![w(0), w(0)], FqElem::Zero);
        assert_eq!(greene_f(&c, &p3).unwrap(), Complex64::new(0.0, 0.0));
        let p1 = GreeneParams::new(vec![w(2), w(6)], vec![w(0)], FqElem::Zero);
        assert_eq!(greene_f(&c, &p1).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn greene_table_matches_direct_sum() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        // ₃F₂(ω₆, ω₂, ω̄₆; ε, ε | 1/2^6)
        let p = GreeneParams::new(vec![w(2), w(6), w(10)], vec![w(0), w(0)], arg6(&c, 2));
        assert!(close(greene_f(&c, &p).unwrap(), greene_f_direct(&c, &p).unwrap()));
        let p = GreeneParams::new(vec![w(1), w(5), w(7), w(3)], vec![w(2), w(0), w(9)], c.field().from_int(5));
        assert!(close(greene_f(&c, &p).unwrap(), greene_f_direct(&c, &p).unwrap()));
    }

    #[test]
    fn greene_pair_permutation_invariance() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let x = c.field().from_int(7);
        let a = GreeneParams::new(vec![w(1), w(4), w(9), w(2)], vec![w(3), w(0), w(6)], x);
        let b = GreeneParams::new(vec![w(1), w(2), w(4), w(9)], vec![w(6), w(3), w(0)], x);
        assert!(close(greene_f(&c, &a).unwrap(), greene_f(&c, &b).unwrap()));
    }

    #[test]
    fn greene_rejects_bad_shapes() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let p = GreeneParams::new(vec![w(1)], vec![], FqElem::ONE);
        assert!(matches!(greene_f(&c, &p), Err(Error::BadParams(_))));
        let other = chars(7);
        let p = GreeneParams::new(vec![w(1), other.omega_pow(1)], vec![w(0)], FqElem::ONE);
        assert_eq!(greene_f(&c, &p), Err(Error::MixedFields));
    }

    #[test]
    fn mccarthy_vanishes_at_zero() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let p = McCarthyParams::new(vec![w(2), w(6)], vec![w(0), w(0)], FqElem::Zero);
        assert_eq!(mccarthy_f(&c, &p).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn one_f_one_is_one_f_zero() {
        let c = chars(13);
        for lambda in [2, 6, 7, 11] {
            let x = arg6(&c, lambda);
            let p = McCarthyParams::new(vec![c.omega_pow(6)], vec![c.trivial()], x);
            let expected = greene_1f0(&c, 2, x).unwrap();
            assert!(close(mccarthy_f(&c, &p).unwrap(), expected));
            assert!(close(mccarthy_to_greene(&c, &p).unwrap(), expected));
        }
    }

    #[test]
    fn mccarthy_two_routes_examples() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let p = McCarthyParams::new(vec![w(2), w(6), w(10)], vec![w(0); 3], arg6(&c, 2));
        assert!(close(mccarthy_f(&c, &p).unwrap(), mccarthy_to_greene(&c, &p).unwrap()));
        let c7 = chars(7);
        let w = |k| c7.omega_pow(k);
        let p = McCarthyParams::new(vec![w(4), w(5)], vec![w(0); 2], c7.field().from_int(3));
        assert!(close(mccarthy_f(&c7, &p).unwrap(), mccarthy_to_greene(&c7, &p).unwrap()));
    }

    #[test]
    fn mccarthy_to_greene_preconditions() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let x = FqElem::ONE;
        let same = McCarthyParams::new(vec![w(2), w(5)], vec![w(0), w(5)], x);
        assert!(matches!(mccarthy_to_greene(&c, &same), Err(Error::PreconditionViolated(_))));
        let trivial_top = McCarthyParams::new(vec![w(0), w(5)], vec![w(0), w(1)], x);
        assert!(matches!(mccarthy_to_greene(&c, &trivial_top), Err(Error::PreconditionViolated(_))));
        let lower = McCarthyParams::new(vec![w(2), w(5)], vec![w(1), w(0)], x);
        assert!(matches!(mccarthy_to_greene(&c, &lower), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn mccarthy_to_greene_random_tuples() {
        let mut rng = StdRng::seed_from_u64(7);
        for p in [7, 13] {
            let c = chars(p);
            let n = c.order() as i64;
            let mut checked = 0;
            while checked < 60 {
                let len = rng.gen_range(1..=4);
                let upper: Vec<_> = (0..len)
                    .map(|i| c.omega_pow(if i == 0 { rng.gen_range(1..n) } else { rng.gen_range(0..n) }))
                    .collect();
                let lower: Vec<_> = (0..len)
                    .map(|i| c.omega_pow(if i == 0 { 0 } else { rng.gen_range(0..n) }))
                    .collect();
                if upper[1..].iter().zip(&lower[1..]).any(|(a, b)| a == b) {
                    continue;
                }
                let x = FqElem::from_index(rng.gen_range(0..p as usize));
                let params = McCarthyParams::new(upper, lower, x);
                let lhs = mccarthy_f(&c, &params).unwrap();
                assert!(close(lhs, mccarthy_to_greene(&c, &params).unwrap()), "{params:?}");
                assert!(lhs.norm() <= c.q() as f64);
                checked += 1;
            }
        }
    }

    #[test]
    fn reduction() {
        let c = chars(13);
        let w = |k| c.omega_pow(k);
        let eps = w(0);
        let p = McCarthyParams::new(vec![eps, w(2)], vec![eps, eps], FqElem::ONE);
        let r = reduce_params(&p);
        assert_eq!((r.upper, r.lower), (vec![w(2)], vec![eps]));

        let p = McCarthyParams::new(vec![eps, w(2), w(4), w(6), w(8), w(10)], vec![eps; 6], FqElem::ONE);
        let r = reduce_params(&p);
        assert_eq!(r.upper, vec![w(2), w(4), w(6), w(8), w(10)]);
        assert_eq!(r.lower, vec![eps; 5]);
        assert_eq!(reduce_params(&r), r);

        let p = McCarthyParams::new(vec![w(1), w(2)], vec![w(3), w(4)], FqElem::ONE);
        assert_eq!(reduce_params(&p), p);

        let p = McCarthyParams::new(vec![w(4), w(4), w(1)], vec![w(4), w(3), w(1)], FqElem::ONE);
        let r = reduce_params(&p);
        assert_eq!((r.upper, r.lower), (vec![w(4)], vec![w(3)]));
    }

    #[test]
    fn one_f_zero() {
        let c = chars(13);
        let f = c.field();
        assert_eq!(greene_1f0(&c, 2, FqElem::Zero).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(greene_1f0(&c, 2, FqElem::ONE).unwrap(), Complex64::new(0.0, 0.0));
        // 1 - 3 = -2 = 11 is not a square mod 13.
        assert!(close(greene_1f0(&c, 2, f.from_int(3)).unwrap(), Complex64::new(-1.0, 0.0)));
        assert_eq!(greene_1f0(&c, 5, f.from_int(3)), Err(Error::BadDivisor { divisor: 5, order: 12 }));
    }
}
