//! Brute-force point counts in `P^{n-1}(F_q)`.
//!
//! Points are enumerated once each in normalized form: the first nonzero
//! coordinate is 1. Stratum `k` fixes `x_1 = ... = x_k = 0`, `x_{k+1} = 1`
//! and lets the remaining `n - k - 1` coordinates run over `F_q`. Work is
//! split across threads by the value of the first free coordinate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};

/// Largest number of points `brute_count` will visit (about `q^{n-1}`).
pub const BRUTE_BUDGET: u64 = 1_000_000_000;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

/// A polynomial over `F_q` as a list of `(coefficient, exponent vector)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(FqElem, Vec<u32>)>,
}

impl Polynomial {
    /// Terms with zero coefficient are dropped.
    pub fn new(nvars: usize, terms: Vec<(FqElem, Vec<u32>)>) -> Result<Polynomial> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::BadParams(format!("need 1 to {MAX_VARS} variables, got {nvars}")));
        }
        if let Some((_, e)) = terms.iter().find(|(_, e)| e.len() != nvars) {
            return Err(Error::BadParams(format!("exponent vector {e:?} has the wrong length")));
        }
        let terms = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        Ok(Polynomial { nvars, terms })
    }

    /// `x_1^d + ... + x_n^d - dλ x_1^{h_1}...x_n^{h_n}`.
    pub fn diagonal(f: &FqField, d: u32, h: &[u32], lambda: FqElem) -> Result<Polynomial> {
        let n = h.len();
        let mut terms: Vec<(FqElem, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = d;
                (FqElem::ONE, e)
            })
            .collect();
        let c = f.neg(f.mul(f.from_int(d as i64), lambda));
        terms.push((c, h.to_vec()));
        Polynomial::new(n, terms)
    }

    /// `x_1^d + ... + x_d^d - dλ x_1...x_d`.
    pub fn dwork(f: &FqField, d: u32, lambda: FqElem) -> Result<Polynomial> {
        Polynomial::diagonal(f, d, &vec![1; d as usize], lambda)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(FqElem, Vec<u32>)] {
        &self.terms
    }

    /// Total degree shared by every term, `None` for the zero polynomial.
    /// Fails if the terms have different degrees.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.iter().map(|(_, e)| e.iter().sum::<u32>());
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn eval(&self, f: &FqField, x: &[FqElem]) -> FqElem {
        let order = f.order() as u64;
        self.terms.iter().fold(FqElem::Zero, |acc, (c, e)| {
            let mut k = c.exponent().unwrap() as u64;
            for (&xi, &ei) in x.iter().zip(e) {
                if ei == 0 {
                    continue;
                }
                match xi {
                    FqElem::Zero => return acc,
                    FqElem::Pow(m) => k += m as u64 * ei as u64,
                }
            }
            f.add(acc, FqElem::Pow((k % order) as u32))
        })
    }
}

/// Number of normalized points `(q^n - 1)/(q - 1)`, saturating.
pub fn projective_size(q: u32, n: usize) -> u64 {
    let q = q as u128;
    let total = (q.pow(n as u32) - 1) / (q - 1);
    total.min(u64::MAX as u128) as u64
}

fn check_budget(q: u32, n: usize, budget: u64) -> Result<()> {
    let points = projective_size(q, n);
    if points > budget {
        return Err(Error::BudgetExceeded { points, budget });
    }
    Ok(())
}

/// Work items: `(lead, first free value)`; `None` when the stratum has no
/// free coordinate.
fn work_items(q: u32, n: usize) -> Vec<(usize, Option<usize>)> {
    (0..n)
        .flat_map(|lead| {
            let free = n - lead - 1;
            let firsts: Vec<Option<usize>> =
                if free == 0 { vec![None] } else { (0..q as usize).map(Some).collect() };
            firsts.into_iter().map(move |v| (lead, v))
        })
        .collect()
}

/// Calls `visit` on every point of the work item, reusing one buffer.
fn for_each_in_item(q: u32, n: usize, item: (usize, Option<usize>), mut visit: impl FnMut(&[FqElem])) {
    let (lead, first) = item;
    let mut x = vec![FqElem::Zero; n];
    x[lead] = FqElem::ONE;
    let Some(v) = first else {
        visit(&x);
        return;
    };
    x[lead + 1] = FqElem::from_index(v);
    let tail = lead + 2;
    let mut idx = vec![0usize; n - tail];
    loop {
        visit(&x);
        // Odometer over the tail coordinates.
        let mut i = idx.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < q as usize {
                x[tail + i] = FqElem::from_index(idx[i]);
                break;
            }
            idx[i] = 0;
            x[tail + i] = FqElem::Zero;
        }
    }
}

/// Points of `P^{n-1}(F_q)` on the homogeneous polynomial `poly`.
pub fn brute_count(f: &FqField, poly: &Polynomial) -> Result<u64> {
    brute_count_with_budget(f, poly, BRUTE_BUDGET)
}

pub fn brute_count_with_budget(f: &FqField, poly: &Polynomial, budget: u64) -> Result<u64> {
    poly.degree()?;
    let n = poly.nvars();
    check_budget(f.q(), n, budget)?;
    Ok(work_items(f.q(), n)
        .into_par_iter()
        .map(|item| {
            let mut count = 0u64;
            for_each_in_item(f.q(), n, item, |x| count += u64::from(poly.eval(f, x).is_zero()));
            count
        })
        .sum())
}

/// `#X_λ^d(F_q)` for every `λ ∈ F_q` from one scan of `P^{d-1}`.
///
/// A point with `Π x_i ≠ 0` lies on exactly one fiber, `λ = Σx_i^d / (d Π x_i)`.
/// A point with `Π x_i = 0` lies on every fiber if `Σ x_i^d = 0` and on none
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkSweep {
    pub degree: u32,
    /// Points on every fiber.
    pub common: u64,
    /// Points on exactly one fiber, indexed by [`FqElem::index`] of `λ`.
    pub by_lambda: Vec<u64>,
}

impl DworkSweep {
    pub fn count(&self, lambda: FqElem) -> u64 {
        self.common + self.by_lambda[lambda.index()]
    }
}

pub fn dwork_sweep(f: &FqField, d: u32) -> Result<DworkSweep> {
    dwork_sweep_with_budget(f, d, BRUTE_BUDGET)
}

pub fn dwork_sweep_with_budget(f: &FqField, d: u32, budget: u64) -> Result<DworkSweep> {
    let n = d as usize;
    if n == 0 || n > MAX_VARS {
        return Err(Error::BadParams(format!("degree must be 1 to {MAX_VARS}, got {d}")));
    }
    check_budget(f.q(), n, budget)?;
    let q = f.q() as usize;
    let order = f.order() as u64;
    let d_elem = f.from_int(d as i64);
    let pow_d: Vec<FqElem> = (0..q).map(|i| f.pow(FqElem::from_index(i), d as i64)).collect();

    let (common, by_lambda) = work_items(f.q(), n)
        .into_par_iter()
        .fold(
            || (0u64, vec![0u64; q]),
            |(mut common, mut tally), item| {
                for_each_in_item(f.q(), n, item, |x| {
                    let mut s = FqElem::Zero;
                    let mut p: Option<u64> = Some(0);
                    for &xi in x {
                        s = f.add(s, pow_d[xi.index()]);
                        p = match (p, xi) {
                            (Some(acc), FqElem::Pow(k)) => Some(acc + k as u64),
                            _ => None,
                        };
                    }
                    match (p, d_elem) {
                        (Some(pk), FqElem::Pow(dk)) => {
                            let denom = FqElem::Pow(((pk + dk as u64) % order) as u32);
                            let lambda = f.div(s, denom).expect("nonzero denominator");
                            tally[lambda.index()] += 1;
                        }
                        _ => common += u64::from(s.is_zero()),
                    }
                });
                (common, tally)
            },
        )
        .reduce(
            || (0u64, vec![0u64; q]),
            |(c1, mut t1), (c2, t2)| {
                for (a, b) in t1.iter_mut().zip(t2) {
                    *a += b;
                }
                (c1 + c2, t1)
            },
        );
    Ok(DworkSweep { degree: d, common, by_lambda })
}
