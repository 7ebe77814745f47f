//! Multiplicative characters, Gauss sums and Jacobi sums over a fixed field.
//!
//! A character is `ω^k` where `ω(g^m) = ζ_{q-1}^m` for the field's generator
//! `g`. Every character, the trivial one included, is extended by `χ(0) = 0`.
//! Values are carried as complex doubles ([`AlgValue`]); all identities hold
//! exactly in `Q(ζ_{lcm(p, q-1)})`, so residuals are pure rounding noise.

use std::f64::consts::PI;
use std::ops::Mul;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::field::{FieldTag, FqElem, FqField};

/// Numeric carrier for elements of a cyclotomic field.
pub type AlgValue = Complex64;

/// Default tolerance when rounding a point count to an integer.
pub const ROUND_TOL: f64 = 1e-3;

/// A point count rounded from an [`AlgValue`], with the distance to the
/// nearest integer (imaginary part included).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundedCount {
    pub count: i64,
    pub residual: f64,
}

/// Rounds `value` to the nearest integer, failing if it is further than
/// `tolerance` away (in either real or imaginary part).
pub fn round_count(value: AlgValue, tolerance: f64) -> Result<RoundedCount> {
    let nearest = value.re.round();
    let residual = (value.re - nearest).abs().max(value.im.abs());
    if !value.re.is_finite() || !value.im.is_finite() || residual > tolerance {
        return Err(Error::RoundingFailure { re: value.re, im: value.im, tolerance });
    }
    Ok(RoundedCount { count: nearest as i64, residual })
}

/// The character `ω^k` on one particular field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultChar {
    k: u32,
    tag: FieldTag,
}

impl MultChar {
    #[inline]
    pub fn exponent(self) -> u32 {
        self.k
    }

    #[inline]
    pub fn tag(self) -> FieldTag {
        self.tag
    }

    #[inline]
    fn order(self) -> u32 {
        self.tag.q - 1
    }

    pub fn is_trivial(self) -> bool {
        self.k == 0
    }

    pub fn conj(self) -> MultChar {
        MultChar { k: (self.order() - self.k) % self.order(), ..self }
    }

    pub fn pow(self, n: i64) -> MultChar {
        let m = self.order() as i64;
        MultChar { k: (self.k as i64 * n.rem_euclid(m)).rem_euclid(m) as u32, ..self }
    }

    /// `ω^{k + shift}`.
    pub fn shift(self, shift: i64) -> MultChar {
        let m = self.order() as i64;
        MultChar { k: (self.k as i64 + shift).rem_euclid(m) as u32, ..self }
    }

    pub fn same_field(self, other: MultChar) -> bool {
        self.tag == other.tag
    }
}

impl Mul for MultChar {
    type Output = MultChar;

    fn mul(self, rhs: MultChar) -> MultChar {
        assert!(self.same_field(rhs), "product of characters on different fields");
        MultChar { k: (self.k + rhs.k) % self.order(), ..self }
    }
}

pub(crate) fn check_same_field(chars: &[MultChar], tag: FieldTag) -> Result<()> {
    if chars.iter().all(|c| c.tag == tag) {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

/// The character group of a field with its Gauss-sum table.
///
/// Everything is computed at construction; afterwards the table is
/// read-only and may be shared freely across threads.
#[derive(Clone, Debug)]
pub struct Characters {
    field: Arc<FqField>,
    /// `ζ_{q-1}^m`.
    zeta: Vec<Complex64>,
    /// `ζ_p^a`.
    zeta_p: Vec<Complex64>,
    gauss: Vec<Complex64>,
    /// `one_minus[m]` = `1 - g^m`.
    one_minus: Vec<FqElem>,
}

fn roots_of_unity(n: u32) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64))
        .collect()
}

impl Characters {
    pub fn new(field: Arc<FqField>) -> Characters {
        let n = field.order();
        let zeta = roots_of_unity(n);
        let zeta_p = roots_of_unity(field.p());
        let one_minus = field
            .nonzero()
            .map(|x| field.sub(FqElem::ONE, x))
            .collect();

        // g(ω^k) = Σ_m ζ_{q-1}^{km} ζ_p^{tr(g^m)}: one unnormalized inverse DFT.
        let mut gauss: Vec<Complex64> = field
            .nonzero()
            .map(|x| zeta_p[field.trace(x) as usize])
            .collect();
        FftPlanner::new().plan_fft_inverse(n as usize).process(&mut gauss);

        Characters { field, zeta, zeta_p, gauss, one_minus }
    }

    /// Convenience: build the field and its character table in one go.
    pub fn for_field(p: u32, e: u32) -> Result<Characters> {
        Ok(Characters::new(Arc::new(FqField::new(p, e)?)))
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FqField> {
        Arc::clone(&self.field)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// `ω^k`, exponent taken modulo `q - 1`.
    pub fn omega_pow(&self, k: i64) -> MultChar {
        let m = self.order() as i64;
        MultChar { k: k.rem_euclid(m) as u32, tag: self.field.tag() }
    }

    /// The fixed generator `ω` of the character group.
    pub fn omega(&self) -> MultChar {
        self.omega_pow(1)
    }

    pub fn trivial(&self) -> MultChar {
        self.omega_pow(0)
    }

    /// `ω_β = ω^{(q-1)/β}`, the character of order `β` in the fixed convention.
    pub fn omega_beta(&self, beta: u32) -> Result<MultChar> {
        if beta == 0 || !self.order().is_multiple_of(beta) {
            return Err(Error::BadDivisor { divisor: beta, order: self.order() });
        }
        Ok(self.omega_pow((self.order() / beta) as i64))
    }

    /// `(q - 1) / d`, checking that `d` divides `q - 1`.
    pub fn step(&self, d: u32) -> Result<u32> {
        if d == 0 || !self.order().is_multiple_of(d) {
            return Err(Error::BadModulus { q: self.q(), modulus: d });
        }
        Ok(self.order() / d)
    }

    #[inline]
    pub fn zeta(&self, m: u64) -> Complex64 {
        self.zeta[(m % self.order() as u64) as usize]
    }

    /// `χ(x)`, with `χ(0) = 0` for every character.
    #[inline]
    pub fn value(&self, chi: MultChar, x: FqElem) -> AlgValue {
        match x {
            FqElem::Zero => Complex64::new(0.0, 0.0),
            FqElem::Pow(m) => self.zeta(chi.k as u64 * m as u64),
        }
    }

    /// `χ(n)` for an integer `n`, read in the prime field.
    pub fn value_at_int(&self, chi: MultChar, n: i64) -> AlgValue {
        self.value(chi, self.field.from_int(n))
    }

    /// `χ(-1)`, always `±1`.
    pub fn sign(&self, chi: MultChar) -> f64 {
        self.value(chi, self.field.from_int(-1)).re.round()
    }

    /// Cached Gauss sum `g(χ)`.
    #[inline]
    pub fn gauss(&self, chi: MultChar) -> AlgValue {
        self.gauss[chi.k as usize]
    }

    /// `g(ω^k)` for any integer exponent.
    #[inline]
    pub fn gauss_exp(&self, k: i64) -> AlgValue {
        self.gauss[k.rem_euclid(self.order() as i64) as usize]
    }

    /// Gauss sum by direct summation over the field, bypassing the cache.
    pub fn gauss_direct(&self, chi: MultChar) -> AlgValue {
        self.field
            .elements()
            .map(|x| self.value(chi, x) * self.zeta_p[self.field.trace(x) as usize])
            .sum()
    }

    /// n-ary Jacobi sum `Σ_{x_1+...+x_n=1} χ_1(x_1)...χ_n(x_n)`.
    ///
    /// Two characters are summed directly. Longer lists fold the first
    /// `n - 1` characters into a distribution over the additive group,
    /// one O(q^2) convolution per character.
    pub fn jacobi(&self, chars: &[MultChar]) -> Result<AlgValue> {
        if chars.len() < 2 {
            return Err(Error::BadParams("Jacobi sum needs at least two characters".into()));
        }
        check_same_field(chars, self.field.tag())?;
        if chars.len() == 2 {
            return Ok(self.jacobi2_direct(chars[0], chars[1]));
        }
        let f = &*self.field;
        let q = f.q() as usize;
        let zero = Complex64::new(0.0, 0.0);
        // dist[i] = Σ over x_1 + ... + x_k = element(i) of the character product.
        let mut dist: Vec<Complex64> =
            (0..q).map(|i| self.value(chars[0], FqElem::from_index(i))).collect();
        let (last, middle) = chars[1..].split_last().unwrap();
        for &chi in middle {
            let mut next = vec![zero; q];
            for x in f.nonzero() {
                let cx = self.value(chi, x);
                for (i, &d) in dist.iter().enumerate() {
                    if d == zero {
                        continue;
                    }
                    let s = f.add(FqElem::from_index(i), x);
                    next[s.index()] += d * cx;
                }
            }
            dist = next;
        }
        Ok(f.nonzero()
            .map(|x| dist[f.sub(FqElem::ONE, x).index()] * self.value(*last, x))
            .sum())
    }

    /// n-ary Jacobi sum from the Gauss table when no character is trivial:
    /// `Π g(χᵢ) / g(Π χᵢ)`, or `-Π g(χᵢ) / q` when the product is trivial.
    /// Falls back to [`Characters::jacobi`] otherwise.
    pub fn jacobi_fast(&self, chars: &[MultChar]) -> Result<AlgValue> {
        if chars.len() < 2 || chars.iter().any(|c| c.is_trivial()) {
            return self.jacobi(chars);
        }
        check_same_field(chars, self.field.tag())?;
        let num: Complex64 = chars.iter().map(|&c| self.gauss(c)).product();
        let prod = chars.iter().fold(self.trivial(), |acc, &c| acc * c);
        if prod.is_trivial() {
            Ok(-num / self.q() as f64)
        } else {
            Ok(num / self.gauss(prod))
        }
    }

    /// Binary Jacobi sum by the O(q) defining sum.
    pub fn jacobi2_direct(&self, a: MultChar, b: MultChar) -> AlgValue {
        let n = self.order() as u64;
        let (ka, kb) = (a.k as u64, b.k as u64);
        self.one_minus
            .iter()
            .enumerate()
            .filter_map(|(m, &y)| y.exponent().map(|l| self.zeta(ka * m as u64 + kb * l as u64 % n)))
            .sum()
    }

    /// Binary Jacobi sum in O(1) from the Gauss-sum table.
    ///
    /// `J(ε,ε) = q-2`, `J(ε,χ) = J(χ,ε) = -1`, `J(χ,χ̄) = -χ(-1)` and
    /// `J(χ,ψ) = g(χ)g(ψ)/g(χψ)` otherwise.
    pub fn jacobi2(&self, a: MultChar, b: MultChar) -> AlgValue {
        match (a.is_trivial(), b.is_trivial()) {
            (true, true) => Complex64::new(self.q() as f64 - 2.0, 0.0),
            (true, false) | (false, true) => Complex64::new(-1.0, 0.0),
            (false, false) => {
                let ab = a * b;
                if ab.is_trivial() {
                    Complex64::new(-self.sign(a), 0.0)
                } else {
                    self.gauss(a) * self.gauss(b) / self.gauss(ab)
                }
            }
        }
    }

    /// Greene's binomial coefficient `(A; B) = B(-1)/q · J(A, B̄)`.
    pub fn norm_jacobi(&self, a: MultChar, b: MultChar) -> Result<AlgValue> {
        check_same_field(&[a, b], self.field.tag())?;
        Ok(self.norm_jacobi_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn norm_jacobi_unchecked(&self, a: MultChar, b: MultChar) -> AlgValue {
        self.jacobi2(a, b.conj()) * (self.sign(b) / self.q() as f64)
    }

    /// Hasse–Davenport product relation for the order-`m` character
    /// `χ = ω^{(q-1)/m}`:
    /// `Π g(χ^i ψ) = -g(ψ^m) ψ^{-m}(m) Π g(χ^i)`. Returns `|LHS - RHS|`.
    pub fn check_hasse_davenport(&self, m: u32, psi: MultChar) -> Result<f64> {
        check_same_field(&[psi], self.field.tag())?;
        let step = self.step(m)? as i64;
        let chi = self.omega_pow(step);
        let lhs: Complex64 = (0..m as i64).map(|i| self.gauss(chi.pow(i) * psi)).product();
        let base: Complex64 = (0..m as i64).map(|i| self.gauss(chi.pow(i))).product();
        let rhs = -self.gauss(psi.pow(m as i64))
            * self.value_at_int(psi.pow(-(m as i64)), m as i64)
            * base;
        Ok((lhs - rhs).norm())
    }

    /// `g(ω^{6j}) = Π_{i=0}^{5} g(ω^{it+j}) / (ω^{-6j}(6) Π_{i=1}^{5} g(ω^{it}))`.
    pub fn check_sextic_product(&self, j: i64) -> Result<f64> {
        let t = self.step(6)? as i64;
        let lhs = self.gauss_exp(6 * j);
        let num: Complex64 = (0..6).map(|i| self.gauss_exp(i * t + j)).product();
        let den: Complex64 = (1..6).map(|i| self.gauss_exp(i * t)).product::<Complex64>()
            * self.value_at_int(self.omega_pow(-6 * j), 6);
        Ok((lhs - num / den).norm())
    }

    /// `Σ_j g(ω^{j+a}) g(ω^{-j+b}) ω^j(-1) ω^{6j}(λ)
    ///   = (q-1) g(ω^{a+b}) ω^b(-1) ω^{-(a+b)}(1-λ^6)` for `a, b` multiples of `t`.
    pub fn check_turai(&self, a: i64, b: i64, lambda: FqElem) -> Result<f64> {
        let t = self.step(6)? as i64;
        if a.rem_euclid(t) != 0 || b.rem_euclid(t) != 0 {
            return Err(Error::BadParams(format!("a = {a} and b = {b} must be multiples of t = {t}")));
        }
        let f = &*self.field;
        let lambda6 = f.pow(lambda, 6);
        if lambda.is_zero() || lambda6 == FqElem::ONE {
            return Err(Error::BadLambda("need λ ≠ 0 and λ^6 ≠ 1".into()));
        }
        let minus_one = f.from_int(-1);
        let lhs: Complex64 = (0..self.order() as i64)
            .map(|j| {
                self.gauss_exp(j + a)
                    * self.gauss_exp(-j + b)
                    * self.value(self.omega_pow(j), minus_one)
                    * self.value(self.omega_pow(6 * j), lambda)
            })
            .sum();
        let rhs = self.gauss_exp(a + b)
            * (self.order() as f64)
            * self.value(self.omega_pow(b), minus_one)
            * self.value(self.omega_pow(-(a + b)), f.sub(FqElem::ONE, lambda6));
        Ok((lhs - rhs).norm())
    }
}
