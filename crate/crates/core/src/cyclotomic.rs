//! Exact arithmetic in `Q(ζ_N)`, represented modulo the cyclotomic polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    phi_memo(n, &mut memo)
}

fn phi_memo(n: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = phi_memo(d, memo);
            num = exact_div_monic(&num, &div);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// `a / b` for integer polynomials with `b` monic and exact division.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut rem = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut quo = vec![BigInt::zero(); dq + 1];
    for s in (0..=dq).rev() {
        let c = rem[s + db].clone();
        if c.is_zero() {
            continue;
        }
        for (t, bt) in b.iter().enumerate() {
            rem[s + t] -= &c * bt;
        }
        quo[s] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quo
}

/// The field `Q(ζ_N)`, `ζ_N = exp(2πi/N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u32,
    // monic Φ_N over Q, lowest degree first
    modulus: Vec<BigRational>,
}

/// An element of `Q(ζ_N)` as a polynomial in `ζ_N` of degree `< φ(N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    pub conductor: u32,
    pub coeffs: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn new(n: u32) -> Self {
        let modulus = cyclotomic_polynomial(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        CyclotomicField { n, modulus }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `φ(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn value(&self, coeffs: Vec<BigRational>) -> CyclotomicValue {
        CyclotomicValue {
            conductor: self.n,
            coeffs,
        }
    }

    pub fn zero(&self) -> CyclotomicValue {
        self.value(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> CyclotomicValue {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> CyclotomicValue {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> CyclotomicValue {
        let mut v = self.zero();
        v.coeffs[0] = q;
        v
    }

    pub fn is_zero(&self, a: &CyclotomicValue) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self, a: &CyclotomicValue) -> bool {
        a.coeffs[0].is_one() && a.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `ζ_N^e`.
    pub fn zeta_pow(&self, e: i64) -> CyclotomicValue {
        let e = e.rem_euclid(i64::from(self.n)) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        self.value(self.reduce(p))
    }

    /// Reduce a polynomial in `ζ` modulo `Φ_N`.
    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().expect("len > d >= 1");
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for t in 0..d {
                p[shift + t] -= &top * &self.modulus[t];
            }
        }
        p.resize(d, BigRational::zero());
        p
    }

    pub fn add(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        self.value(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        self.value(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &CyclotomicValue) -> CyclotomicValue {
        self.value(a.coeffs.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &CyclotomicValue, c: &BigRational) -> CyclotomicValue {
        self.value(a.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        let d = self.degree();
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let mut p = vec![BigRational::zero(); 2 * d - 1];
        for (s, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[s + t] += x * y;
                }
            }
        }
        self.value(self.reduce(p))
    }

    pub fn pow(&self, a: &CyclotomicValue, n: u64) -> CyclotomicValue {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(a, Φ_N)` over `Q[x]`.
    pub fn inv(&self, a: &CyclotomicValue) -> Result<CyclotomicValue> {
        if self.is_zero(a) {
            return Err(Error::InvalidInput("division by zero in Q(ζ)".into()));
        }
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        // invariant: r_k ≡ s_k · a (mod Φ)
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r1 is a nonzero constant because Φ is irreducible
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(self.value(self.reduce(inv)))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self, a: &CyclotomicValue) -> CyclotomicValue {
        let mut acc = self.zero();
        for (e, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(&self.zeta_pow(-(e as i64)), c));
            }
        }
        acc
    }

    /// Move a value from `Q(ζ_d)` into this field (`d | N`).
    pub fn embed(&self, a: &CyclotomicValue) -> Result<CyclotomicValue> {
        if self.n % a.conductor != 0 {
            return Err(Error::AmbientMismatch);
        }
        let step = i64::from(self.n / a.conductor);
        let mut acc = self.zero();
        for (e, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(&self.zeta_pow(e as i64 * step), c));
            }
        }
        Ok(acc)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (s, x) in a.iter().enumerate() {
        for (t, y) in b.iter().enumerate() {
            out[s + t] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let dq = rem.len() - 1 - db;
    let mut quo = vec![BigRational::zero(); dq + 1];
    for s in (0..=dq).rev() {
        let c = &rem[s + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (t, bt) in b.iter().enumerate() {
            rem[s + t] -= &c * bt;
        }
        quo[s] = c;
    }
    rem.truncate(db.max(1));
    (trim(quo), trim(rem))
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.conductor)?,
                _ => write!(f, "({c})*z{}^{e}", self.conductor)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
