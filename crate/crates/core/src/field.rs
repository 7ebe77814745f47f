//! Finite fields `F_q`, `q = p^e`, in index (discrete-log) representation.
//!
//! Elements are stored as [`FqElem`]: either zero or `g^k` for the field's
//! fixed generator `g`. Multiplication is exponent addition; addition goes
//! through a Zech logarithm table, so every field operation is O(1).
//!
//! Each element also has an integer *code* `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! for its coefficient vector over `F_p[x]/(f)`. Codes are only used at the
//! boundary (parsing, printing, the trace table).

use crate::error::{Error, Result};

/// Largest supported field order. All tables are dense in `q`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// A field element in index form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FqElem {
    Zero,
    /// `g^k` with `0 <= k < q - 1`.
    Pow(u32),
}

impl FqElem {
    pub const ONE: FqElem = FqElem::Pow(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        matches!(self, FqElem::Zero)
    }

    #[inline]
    pub fn exponent(self) -> Option<u32> {
        match self {
            FqElem::Zero => None,
            FqElem::Pow(k) => Some(k),
        }
    }

    /// Dense index: 0 for zero, `k + 1` for `g^k`.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            FqElem::Zero => 0,
            FqElem::Pow(k) => k as usize + 1,
        }
    }

    #[inline]
    pub fn from_index(i: usize) -> FqElem {
        if i == 0 {
            FqElem::Zero
        } else {
            FqElem::Pow((i - 1) as u32)
        }
    }
}

/// Identifies a field together with its choice of generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldTag {
    pub q: u32,
    pub generator: u32,
}

/// A finite field with precomputed discrete-log, Zech and trace tables.
///
/// Immutable after construction and cheap to share behind an `Arc`.
#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[k]` = code of `g^k`.
    exp: Vec<u32>,
    /// `log[code]`, `NONE` at code 0.
    log: Vec<u32>,
    /// `zech[k]` = log of `1 + g^k`, `NONE` when that sum is zero.
    zech: Vec<u32>,
    /// Trace to `F_p`, indexed by code.
    trace: Vec<u32>,
    neg_one: u32,
}

impl FqField {
    /// Builds `F_{p^e}` with the smallest primitive element as generator.
    pub fn new(p: u32, e: u32) -> Result<FqField> {
        FqField::with_generator_rank(p, e, 0)
    }

    /// Builds `F_{p^e}` using the `rank`-th primitive element (0-based, in
    /// code order) as generator. Rank 1 is the "alternate generator" used to
    /// check that final counts do not depend on the choice of `ω`.
    pub fn with_generator_rank(p: u32, e: u32, rank: usize) -> Result<FqField> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::BadParams("extension degree must be at least 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.saturating_mul(p as u64);
            if q > MAX_FIELD_ORDER {
                return Err(Error::FieldTooLarge(q));
            }
        }
        let q = q as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            poly::smallest_irreducible(p, e as usize)
        };
        let arith = CodeArith { p, e: e as usize, modulus: &modulus };

        let order = q - 1;
        let order_primes = prime_factors(order as u64);
        let is_primitive = |x: u32| -> bool {
            order_primes
                .iter()
                .all(|&r| arith.pow(x, order as u64 / r) != 1)
        };
        let generator = (1..q)
            .filter(|&x| is_primitive(x))
            .nth(rank)
            .ok_or_else(|| {
                Error::BadParams(format!("F_{q} has fewer than {} primitive elements", rank + 1))
            })?;

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NONE; q as usize];
        let mut x = 1u32;
        for k in 0..order {
            debug_assert_eq!(log[x as usize], NONE);
            exp.push(x);
            log[x as usize] = k;
            x = arith.mul(x, generator);
        }
        debug_assert_eq!(x, 1);

        let zech = exp
            .iter()
            .map(|&c| {
                let c0 = c % p;
                let sum = c - c0 + (c0 + 1) % p;
                log[sum as usize]
            })
            .collect();

        let neg_one = if p == 2 { 0 } else { order / 2 };

        let mut field = FqField {
            p,
            e,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
            trace: Vec::new(),
            neg_one,
        };
        field.trace = field.build_trace_table();
        Ok(field)
    }

    // Trace is F_p-linear, so it is enough to know it on the basis 1, x, ..., x^{e-1}.
    fn build_trace_table(&self) -> Vec<u32> {
        let p = self.p;
        let basis: Vec<u32> = (0..self.e)
            .map(|i| self.trace_by_frobenius(self.from_code(p.pow(i)).unwrap()))
            .collect();
        (0..self.q)
            .map(|code| {
                let mut c = code;
                let mut acc = 0u64;
                for &t in &basis {
                    acc += (c % p) as u64 * t as u64;
                    c /= p;
                }
                (acc % p as u64) as u32
            })
            .collect()
    }

    /// `x + x^p + ... + x^{p^{e-1}}`, evaluated with field operations.
    pub fn trace_by_frobenius(&self, x: FqElem) -> u32 {
        let mut acc = FqElem::Zero;
        let mut y = x;
        for _ in 0..self.e {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as i64);
        }
        let code = self.to_code(acc);
        debug_assert!(code < self.p, "trace must land in the prime field");
        code
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Defining polynomial, coefficients low degree first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        FqElem::Pow(1 % self.order().max(1))
    }

    /// Code of the generator.
    pub fn generator_code(&self) -> u32 {
        self.generator
    }

    pub fn tag(&self) -> FieldTag {
        FieldTag { q: self.q, generator: self.generator }
    }

    pub fn from_code(&self, code: u32) -> Result<FqElem> {
        if code >= self.q {
            return Err(Error::BadParams(format!("code {code} out of range for F_{}", self.q)));
        }
        Ok(match self.log[code as usize] {
            NONE => FqElem::Zero,
            k => FqElem::Pow(k),
        })
    }

    pub fn to_code(&self, x: FqElem) -> u32 {
        match x {
            FqElem::Zero => 0,
            FqElem::Pow(k) => self.exp[k as usize],
        }
    }

    /// Element with the given coefficient vector (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadParams(format!(
                "coefficients {coeffs:?} do not describe an element of F_{}",
                self.q
            )));
        }
        let code = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        self.from_code(code)
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        let mut c = self.to_code(x);
        (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.from_code(r).expect("prime-field residue is a valid code")
    }

    /// All elements: zero first, then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as usize).map(FqElem::from_index)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (0..self.order()).map(FqElem::Pow)
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match (a, b) {
            (FqElem::Pow(i), FqElem::Pow(j)) => FqElem::Pow(add_mod(i, j, self.order())),
            _ => FqElem::Zero,
        }
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        match (a, b) {
            (FqElem::Zero, x) | (x, FqElem::Zero) => x,
            (FqElem::Pow(i), FqElem::Pow(j)) => {
                let n = self.order();
                let d = if j >= i { j - i } else { j + n - i };
                match self.zech[d as usize] {
                    NONE => FqElem::Zero,
                    z => FqElem::Pow(add_mod(i, z, n)),
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        match a {
            FqElem::Zero => FqElem::Zero,
            FqElem::Pow(i) => FqElem::Pow(add_mod(i, self.neg_one, self.order())),
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        match a {
            FqElem::Zero => Err(Error::ZeroArgument),
            FqElem::Pow(i) => Ok(FqElem::Pow((self.order() - i) % self.order())),
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`. By convention `0^0 = 1` and `0^n = 0` for `n != 0`.
    pub fn pow(&self, a: FqElem, n: i64) -> FqElem {
        match a {
            FqElem::Zero if n == 0 => FqElem::ONE,
            FqElem::Zero => FqElem::Zero,
            FqElem::Pow(i) => {
                let m = self.order() as i64;
                FqElem::Pow((i as i64 * n.rem_euclid(m)).rem_euclid(m) as u32)
            }
        }
    }

    /// Discrete logarithm to base `g`.
    pub fn dlog(&self, x: FqElem) -> Result<u32> {
        x.exponent().ok_or(Error::ZeroArgument)
    }

    /// Trace to the prime field, as an integer in `0..p`.
    #[inline]
    pub fn trace(&self, x: FqElem) -> u32 {
        self.trace[self.to_code(x) as usize]
    }

    /// Human-readable form: the integer for prime fields, the coefficient
    /// list otherwise.
    pub fn format(&self, x: FqElem) -> String {
        if self.e == 1 {
            self.to_code(x).to_string()
        } else {
            let c: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
            c.join(",")
        }
    }
}

#[inline]
fn add_mod(a: u32, b: u32, n: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % n as u64) as u32
}

/// Arithmetic on element codes, used only while building the tables.
struct CodeArith<'a> {
    p: u32,
    e: usize,
    modulus: &'a [u32],
}

impl CodeArith<'_> {
    fn digits(&self, mut c: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (j, &y) in db.iter().enumerate() {
            if y == 0 {
                continue;
            }
            for (i, &x) in da.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce modulo the monic modulus from the top down.
        for k in (self.e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..self.e {
                let m = self.modulus[i] as u64;
                prod[k - self.e + i] = (prod[k - self.e + i] + (p - c) * m) % p;
            }
        }
        prod[..self.e]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + d) as u32
    }

    fn pow(&self, mut base: u32, mut n: u64) -> u32 {
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over `F_p`, coefficients low degree first.
pub(crate) mod poly {
    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + (p64 - lead) * c as u64) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg <= 1 {
            return deg == 1;
        }
        for k in 1..=deg / 2 {
            let count = (p as u64).pow(k as u32);
            for code in 0..count {
                let mut g = Vec::with_capacity(k + 1);
                let mut c = code;
                for _ in 0..k {
                    g.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// The monic irreducible of degree `e` whose coefficient vector
    /// `(c_0, ..., c_{e-1})` is lexicographically smallest.
    pub fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
        let mut coeffs = vec![0u32; e];
        loop {
            let mut f = coeffs.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
            // Odometer with c_{e-1} as the fastest digit.
            let mut i = e;
            loop {
                assert!(i > 0, "an irreducible polynomial of every degree exists");
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }
}
