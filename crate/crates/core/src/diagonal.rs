//! Diagonal hypersurfaces `x_1^d + ... + x_n^d - dλ x_1^{h_1}...x_n^{h_n} = 0`
//! counted by Koblitz's Gauss-sum formula.
//!
//! Weights `w ∈ (Z/d)^n` with `Σw ≡ 0` index Weil's count of the Fermat
//! hypersurface. Two weights are equivalent when they differ by a multiple
//! of `h`. Each class `[w]` contributes `Σ_{w'∈[w]} N_q(0,w') + S_[w]`, and
//! permutations fixing `h` permute the classes without changing the
//! contribution, so the count is a sum over orbits weighted by orbit size.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::chars::{round_count, AlgValue, Characters, RoundedCount};
use crate::error::{Error, Result};
use crate::field::FqElem;

/// The family member `x_1^d + ... + x_n^d = dλ x^h` over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalParams {
    pub d: u32,
    pub h: Vec<u32>,
    pub lambda: FqElem,
}

impl DiagonalParams {
    /// Checks `d | q - 1`, `Σh = d`, `gcd(d, h) = 1`, `λ ≠ 0` and
    /// `λ^d ≠ (Π h_i^{h_i})^{-1}`.
    pub fn new(ch: &Characters, d: u32, h: Vec<u32>, lambda: FqElem) -> Result<DiagonalParams> {
        check_degree(ch, d)?;
        check_h(d, &h)?;
        if lambda.is_zero() {
            return Err(Error::BadLambda("λ must be nonzero".into()));
        }
        let f = ch.field();
        let hh = h.iter().fold(FqElem::ONE, |acc, &hi| {
            f.mul(acc, f.pow(f.from_int(hi as i64), hi as i64))
        });
        if f.mul(f.pow(lambda, d as i64), hh) == FqElem::ONE {
            return Err(Error::BadLambda(format!(
                "λ = {} gives a singular fiber (λ^d Π h_i^h_i = 1)",
                f.format(lambda)
            )));
        }
        Ok(DiagonalParams { d, h, lambda })
    }

    /// The Dwork member `x_1^d + ... + x_d^d = dλ x_1...x_d`.
    pub fn dwork(ch: &Characters, d: u32, lambda: FqElem) -> Result<DiagonalParams> {
        DiagonalParams::new(ch, d, vec![1; d as usize], lambda)
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }
}

/// One orbit of weight classes under the permutations fixing `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Lexicographically smallest weight vector in the orbit.
    pub rep: Vec<u32>,
    /// Number of classes `[w]` in the orbit.
    pub size: usize,
}

fn check_degree(ch: &Characters, d: u32) -> Result<u32> {
    if d == 0 || !ch.order().is_multiple_of(d) {
        return Err(Error::BadDegree { degree: d, order: ch.order() });
    }
    Ok(ch.order() / d)
}

fn check_h(d: u32, h: &[u32]) -> Result<()> {
    if h.is_empty() || h.iter().sum::<u32>() != d {
        return Err(Error::BadParams(format!("exponents {h:?} must be nonempty and sum to d = {d}")));
    }
    if h.iter().fold(d, |g, &x| gcd(g, x)) != 1 {
        return Err(Error::BadParams(format!("gcd of d = {d} and {h:?} must be 1")));
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// All `w ∈ {0..d-1}^n` with `Σw ≡ 0 (mod d)`, in lexicographic order.
pub fn weight_vectors(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    let total = (d as usize).pow(n as u32 - 1);
    (0..total)
        .map(|mut code| {
            let mut w = vec![0; n];
            for i in (0..n - 1).rev() {
                w[i] = (code % d as usize) as u32;
                code /= d as usize;
            }
            let s: u32 = w.iter().sum();
            w[n - 1] = (d - s % d) % d;
            w
        })
        .collect()
}

/// Weil's count `N_q(0, w)` with `t = (q-1)/d`:
/// `(q^{n-1}-1)/(q-1)` if `w = 0`, `(1/q) Π g(ω^{w_i t})` if no entry is
/// zero, and 0 otherwise.
pub fn weil_n(ch: &Characters, d: u32, w: &[u32]) -> Result<AlgValue> {
    let t = check_degree(ch, d)? as i64;
    if w.iter().map(|&x| x as u64).sum::<u64>() % d as u64 != 0 {
        return Err(Error::BadWeight(d));
    }
    Ok(weil_n_unchecked(ch, d, t, w))
}

fn weil_n_unchecked(ch: &Characters, d: u32, t: i64, w: &[u32]) -> AlgValue {
    let q = ch.q() as f64;
    if w.iter().all(|&x| x % d == 0) {
        Complex64::new((q.powi(w.len() as i32 - 1) - 1.0) / (q - 1.0), 0.0)
    } else if w.iter().all(|&x| x % d != 0) {
        w.iter().map(|&x| ch.gauss_exp(x as i64 * t)).product::<Complex64>() / q
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Points of `x_1^d + ... + x_n^d = 0` in `P^{n-1}(F_q)`: `Σ_{w∈W} N_q(0,w)`.
pub fn fermat_count(ch: &Characters, d: u32, n: usize) -> Result<RoundedCount> {
    let t = check_degree(ch, d)? as i64;
    let total: Complex64 = weight_vectors(d, n)
        .iter()
        .map(|w| weil_n_unchecked(ch, d, t, w))
        .sum();
    round_count(total, crate::ROUND_TOL)
}

/// The distinct members `w + m·h`, `m = 0..d-1`, of the class of `w`.
pub fn class_members(w: &[u32], d: u32, h: &[u32]) -> Vec<Vec<u32>> {
    let mut members: Vec<Vec<u32>> = (0..d)
        .map(|m| w.iter().zip(h).map(|(&wi, &hi)| (wi + m * hi) % d).collect())
        .collect();
    members.sort();
    members.dedup();
    members
}

/// Smallest member of the class of `w`.
pub fn class_key(w: &[u32], d: u32, h: &[u32]) -> Vec<u32> {
    class_members(w, d, h).swap_remove(0)
}

/// Smallest vector over the class of `w` and every permutation fixing `h`.
///
/// A permutation fixing `h` only shuffles positions with equal exponent, so
/// the minimum over permutations sorts the entries within each such block.
pub fn orbit_key(w: &[u32], d: u32, h: &[u32]) -> Vec<u32> {
    let mut blocks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &hi) in h.iter().enumerate() {
        blocks.entry(hi).or_default().push(i);
    }
    class_members(w, d, h)
        .into_iter()
        .map(|mut v| {
            for idx in blocks.values() {
                let mut vals: Vec<u32> = idx.iter().map(|&i| v[i]).collect();
                vals.sort_unstable();
                for (&i, x) in idx.iter().zip(vals) {
                    v[i] = x;
                }
            }
            v
        })
        .min()
        .unwrap()
}

/// Partitions `W/~` into orbits under the permutations fixing `h`.
/// Orbits are returned in increasing order of representative.
pub fn enumerate_orbits(d: u32, h: &[u32]) -> Result<Vec<OrbitClass>> {
    check_h(d, h)?;
    let mut classes: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for w in weight_vectors(d, h.len()) {
        let key = class_key(&w, d, h);
        classes.entry(key.clone()).or_insert_with(|| orbit_key(&key, d, h));
    }
    let mut sizes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for orbit in classes.into_values() {
        *sizes.entry(orbit).or_default() += 1;
    }
    Ok(sizes.into_iter().map(|(rep, size)| OrbitClass { rep, size }).collect())
}

/// `S_[w] = 1/(q-1) Σ_j Π_i g(ω^{w_i t + h_i j}) / g(ω^{dj}) · ω^{dj}(dλ)`.
pub fn class_s(ch: &Characters, params: &DiagonalParams, w: &[u32]) -> Result<AlgValue> {
    let t = check_degree(ch, params.d)? as i64;
    if w.len() != params.n() {
        return Err(Error::BadParams(format!("weight {w:?} has the wrong length")));
    }
    let f = ch.field();
    let d = params.d as i64;
    let dl = f.mul(f.from_int(d), params.lambda).exponent().ok_or_else(|| {
        Error::BadLambda("dλ vanishes".into())
    })? as u64;
    let n = ch.order() as i64;
    let total: Complex64 = (0..n)
        .map(|j| {
            let num: Complex64 = w
                .iter()
                .zip(&params.h)
                .map(|(&wi, &hi)| ch.gauss_exp(wi as i64 * t + hi as i64 * j))
                .product();
            num / ch.gauss_exp(d * j) * ch.zeta((d * j) as u64 * dl)
        })
        .sum();
    Ok(total / n as f64)
}

/// `Σ_{w'∈[w]} N_q(0, w') + S_[w]` for the class of `w`.
pub fn class_contribution(ch: &Characters, params: &DiagonalParams, w: &[u32]) -> Result<AlgValue> {
    let t = check_degree(ch, params.d)? as i64;
    if w.iter().map(|&x| x as u64).sum::<u64>() % params.d as u64 != 0 {
        return Err(Error::BadWeight(params.d));
    }
    let members = class_members(w, params.d, &params.h);
    let weil: Complex64 = members.iter().map(|m| weil_n_unchecked(ch, params.d, t, m)).sum();
    Ok(weil + class_s(ch, params, w)?)
}

/// Contribution of one class of the orbit (multiply by `orbit.size` for the
/// whole orbit).
pub fn orbit_contribution(ch: &Characters, params: &DiagonalParams, orbit: &OrbitClass) -> Result<AlgValue> {
    class_contribution(ch, params, &orbit.rep)
}

/// Unrounded Koblitz sum over orbits.
pub fn koblitz_value(ch: &Characters, params: &DiagonalParams) -> Result<AlgValue> {
    let orbits = enumerate_orbits(params.d, &params.h)?;
    let parts = orbits
        .par_iter()
        .map(|o| Ok(orbit_contribution(ch, params, o)? * o.size as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().sum())
}

/// `#D_λ(F_q)` by Koblitz's formula, one representative per orbit.
pub fn koblitz_count(ch: &Characters, params: &DiagonalParams) -> Result<RoundedCount> {
    round_count(koblitz_value(ch, params)?, crate::ROUND_TOL)
}

/// `#D_λ(F_q)` summing every class separately. Checks the assumption that
/// classes in one orbit contribute equally.
pub fn koblitz_count_exhaustive(ch: &Characters, params: &DiagonalParams) -> Result<RoundedCount> {
    check_h(params.d, &params.h)?;
    let mut keys: Vec<Vec<u32>> = weight_vectors(params.d, params.n())
        .iter()
        .map(|w| class_key(w, params.d, &params.h))
        .collect();
    keys.sort();
    keys.dedup();
    let parts = keys
        .par_iter()
        .map(|w| class_contribution(ch, params, w))
        .collect::<Result<Vec<_>>>()?;
    round_count(parts.into_iter().sum(), crate::ROUND_TOL)
}
