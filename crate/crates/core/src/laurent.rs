//! Laurent polynomials in the parameters `t_ijk` with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coxeter::CoxeterMatrix;
use crate::cyclotomic::{CyclotomicField, CyclotomicValue};
use crate::{Error, Result};

/// The canonical parameter `t_{i,j,k}` with `i < j` and `k ∈ {1, …, m}`,
/// `m = m_ij`. The non-canonical `t_{j,i,k}` equals `t_{i,j,-k}^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamIndex {
    pub i: u8,
    pub j: u8,
    pub m: u32,
    pub k: u32,
}

impl ParamIndex {
    /// Canonical parameter for `(i, j, k)` in either index order, with the
    /// exponent sign it carries: `t_{ijk} = t_canon^sign`.
    pub fn new(i: u8, j: u8, m: u32, k: i64) -> (ParamIndex, i8) {
        assert!(i != j && m >= 2);
        if i < j {
            (ParamIndex { i, j, m, k: residue(k, m) }, 1)
        } else {
            (
                ParamIndex {
                    i: j,
                    j: i,
                    m,
                    k: residue(-k, m),
                },
                -1,
            )
        }
    }

    /// `σ(t_{ijk}) = t_{jik} = t_{ij,-k}^{-1}`: the index this one maps to
    /// (the exponent is negated).
    pub fn sigma(self) -> ParamIndex {
        ParamIndex {
            k: residue(-i64::from(self.k), self.m),
            ..self
        }
    }

    /// All parameters of a matrix, in order.
    pub fn all(matrix: &CoxeterMatrix) -> Vec<ParamIndex> {
        let mut out = Vec::new();
        for (i, j, m) in matrix.finite_pairs() {
            for k in 1..=m {
                out.push(ParamIndex {
                    i: i as u8,
                    j: j as u8,
                    m,
                    k,
                });
            }
        }
        out
    }
}

/// Representative of `k mod m` in `1..=m`.
pub fn residue(k: i64, m: u32) -> u32 {
    let r = k.rem_euclid(i64::from(m)) as u32;
    if r == 0 {
        m
    } else {
        r
    }
}

impl fmt::Display for ParamIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{}{}{}", self.i, self.j, self.k)
    }
}

/// A monomial `∏ t^e`, sorted by parameter, no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(ParamIndex, BigInt)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(p: ParamIndex, e: impl Into<BigInt>) -> Self {
        Monomial::one().times_var(p, &e.into())
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (ParamIndex, BigInt)>) -> Self {
        let mut m = Monomial::one();
        for (p, e) in exps {
            m = m.times_var(p, &e);
        }
        m
    }

    pub fn exponents(&self) -> &[(ParamIndex, BigInt)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn times_var(mut self, p: ParamIndex, e: &BigInt) -> Self {
        match self.0.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(pos) => {
                self.0[pos].1 += e;
                if self.0[pos].1.is_zero() {
                    self.0.remove(pos);
                }
            }
            Err(pos) => {
                if !e.is_zero() {
                    self.0.insert(pos, (p, e.clone()));
                }
            }
        }
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((pa, ea)), Some((pb, eb))) => {
                    if pa < pb {
                        out.push((*pa, ea.clone()));
                        a.next();
                    } else if pb < pa {
                        out.push((*pb, eb.clone()));
                        b.next();
                    } else {
                        let e = ea + eb;
                        if !e.is_zero() {
                            out.push((*pa, e));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((pa, ea)), None) => {
                    out.push((*pa, ea.clone()));
                    a.next();
                }
                (None, Some((pb, eb))) => {
                    out.push((*pb, eb.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(p, e)| (*p, -e)).collect())
    }

    pub fn pow(&self, n: &BigInt) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(p, e)| {
                    let e = e * n;
                    (!e.is_zero()).then_some((*p, e))
                })
                .collect(),
        )
    }

    pub fn sigma(&self) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|(p, e)| (p.sigma(), -e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (p, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of `R = Q[t_ijk^{±1}]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(p: ParamIndex) -> Self {
        Self::term(BigRational::one(), Monomial::var(p, 1))
    }

    /// `t_{ijk}` in either index order.
    pub fn param(i: u8, j: u8, m: u32, k: i64) -> Self {
        let (p, sign) = ParamIndex::new(i, j, m, k);
        Self::term(BigRational::one(), Monomial::var(p, sign))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The single term, if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = LaurentPoly::mul(&out, self);
        }
        out
    }

    /// Inverse of a unit `c · t^e`; anything else is `NotAUnit`.
    pub fn invert_unit(&self) -> Result<LaurentPoly> {
        let (m, c) = self.as_monomial().ok_or(Error::NotAUnit)?;
        Ok(LaurentPoly::term(c.recip(), m.inverse()))
    }

    /// The parity twist `t_{ijk} ↦ t_{jik}`, i.e. `s_p c = σ(c) s_p`.
    pub fn sigma(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.sigma(), c.clone())))
    }

    /// Every parameter occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<ParamIndex> {
        let mut vs: Vec<ParamIndex> = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|(p, _)| *p))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Exact evaluation at a point with nonzero rational coordinates.
    pub fn specialize_rational(
        &self,
        assignment: &BTreeMap<ParamIndex, BigRational>,
    ) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (p, e) in m.exponents() {
                let x = assignment
                    .get(p)
                    .ok_or_else(|| Error::MissingAssignment(format!("{p}")))?;
                if x.is_zero() {
                    return Err(Error::ZeroAssignment(format!("{p}")));
                }
                v *= rational_pow(x, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitute `t_{ijk} ↦ ζ_m^k` in `Q(ζ_N)`; `N` must be a multiple of
    /// every `m` that occurs.
    pub fn specialize_group(&self, field: &CyclotomicField) -> Result<CyclotomicValue> {
        let n = i64::from(field.conductor());
        let mut total = field.zero();
        for (m, c) in &self.terms {
            let mut exp = BigInt::zero();
            for (p, e) in m.exponents() {
                if n % i64::from(p.m) != 0 {
                    return Err(Error::InvalidInput(format!(
                        "conductor {n} is not a multiple of m = {}",
                        p.m
                    )));
                }
                exp += e * BigInt::from(i64::from(p.k) * (n / i64::from(p.m)));
            }
            let exp = (exp % BigInt::from(n) + BigInt::from(n)) % BigInt::from(n);
            let e: i64 = i64::try_from(&exp).expect("reduced modulo the conductor");
            total = field.add(&total, &field.scale(&field.zeta_pow(e), c));
        }
        Ok(total)
    }
}

pub(crate) fn rational_pow(x: &BigRational, e: &BigInt) -> BigRational {
    let base = if e.is_negative() { x.recip() } else { x.clone() };
    let mut n = e.abs();
    let mut acc = BigRational::one();
    let mut sq = base;
    let two = BigInt::from(2);
    while !n.is_zero() {
        if (&n % &two).is_one() {
            acc *= &sq;
        }
        sq = &sq * &sq;
        n /= &two;
    }
    acc
}

/// Render a rational as `p/q` (always with a denominator).
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$method(self, rhs)
            }
        }
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(m: u32, k: u32) -> ParamIndex {
        ParamIndex { i: 0, j: 1, m, k }
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_examples() {
        let a = LaurentPoly::var(t(3, 1));
        assert!((&a + &(-&a)).is_zero());
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv, LaurentPoly::term(q(1, 1), Monomial::var(t(3, 1), -1)));
        assert!((&a * &inv).is_one());
        let b = LaurentPoly::var(t(3, 2));
        let lhs = (&a + &b) * inv.clone();
        let rhs = LaurentPoly::one() + &b * &inv;
        assert_eq!(lhs, rhs);
        assert_eq!((&a + &b).invert_unit(), Err(Error::NotAUnit));
        assert_eq!(LaurentPoly::zero().invert_unit(), Err(Error::NotAUnit));
        let half = LaurentPoly::constant(q(2, 1)).invert_unit().unwrap();
        assert_eq!(half, LaurentPoly::constant(q(1, 2)));
    }

    #[test]
    fn noncanonical_params() {
        // t_{10k} = t_{01,-k}^{-1}
        assert_eq!(
            LaurentPoly::param(1, 0, 3, 1),
            LaurentPoly::term(q(1, 1), Monomial::var(t(3, 2), -1))
        );
        assert_eq!(
            LaurentPoly::param(0, 1, 3, 4),
            LaurentPoly::var(t(3, 1))
        );
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(
            LaurentPoly::var(t(3, 1)).sigma(),
            LaurentPoly::term(q(1, 1), Monomial::var(t(3, 2), -1))
        );
        assert_eq!(
            LaurentPoly::var(t(2, 2)).sigma(),
            LaurentPoly::term(q(1, 1), Monomial::var(t(2, 2), -1))
        );
        // σ(t_{ijk}) is t_{jik}
        for k in 1..=5 {
            assert_eq!(
                LaurentPoly::param(0, 1, 5, k).sigma(),
                LaurentPoly::param(1, 0, 5, k)
            );
        }
    }

    #[test]
    fn rational_examples() {
        let mut a = BTreeMap::new();
        a.insert(t(3, 1), q(2, 3));
        assert_eq!(LaurentPoly::one().specialize_rational(&a).unwrap(), q(1, 1));
        assert_eq!(
            LaurentPoly::var(t(3, 1)).specialize_rational(&a).unwrap(),
            q(2, 3)
        );
        let x = LaurentPoly::var(t(3, 1));
        let unit = &x * &x.invert_unit().unwrap();
        assert_eq!(unit.specialize_rational(&a).unwrap(), q(1, 1));
        let cube = LaurentPoly::term(q(1, 1), Monomial::var(t(3, 1), -3));
        assert_eq!(cube.specialize_rational(&a).unwrap(), q(27, 8));
        assert!(matches!(
            LaurentPoly::var(t(3, 2)).specialize_rational(&a),
            Err(Error::MissingAssignment(_))
        ));
        a.insert(t(3, 2), q(0, 1));
        assert!(matches!(
            LaurentPoly::var(t(3, 2)).specialize_rational(&a),
            Err(Error::ZeroAssignment(_))
        ));
    }

    #[test]
    fn group_examples() {
        let f2 = CyclotomicField::new(2);
        assert_eq!(
            LaurentPoly::var(t(2, 1)).specialize_group(&f2).unwrap(),
            f2.from_int(-1)
        );
        for m in 2..=7u32 {
            let field = CyclotomicField::new(m);
            let mut e1 = LaurentPoly::zero();
            let mut prod = LaurentPoly::one();
            for k in 1..=m {
                e1 = e1 + LaurentPoly::var(t(m, k));
                prod = prod * LaurentPoly::var(t(m, k));
            }
            assert!(field.is_zero(&e1.specialize_group(&field).unwrap()));
            let sign = if m % 2 == 0 { -1 } else { 1 };
            assert_eq!(prod.specialize_group(&field).unwrap(), field.from_int(sign));
        }
    }

    #[test]
    fn group_point_is_sigma_invariant() {
        // J is σ-stable: t_{jik} - ζ^k generates the same ideal.
        let field = CyclotomicField::new(60);
        for m in [2u32, 3, 4, 5, 6] {
            for k in 1..=m {
                for e in [-2i64, -1, 1, 3] {
                    let mono = LaurentPoly::term(q(1, 1), Monomial::var(t(m, k), e));
                    assert_eq!(
                        mono.sigma().specialize_group(&field).unwrap(),
                        mono.specialize_group(&field).unwrap()
                    );
                }
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let term = (
            -5i64..=5,
            1i64..=3,
            proptest::collection::vec((1u32..=3, -2i64..=2), 0..3),
        );
        proptest::collection::vec(term, 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(n, d, exps)| {
                let mono = Monomial::from_exponents(
                    exps.into_iter().map(|(k, e)| (t(3, k), BigInt::from(e))),
                );
                (mono, q(n, d))
            }))
        })
    }

    proptest! {
        #[test]
        fn sigma_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.sigma().sigma(), a.clone());
            prop_assert_eq!((&a * &b).sigma(), &a.sigma() * &b.sigma());
            prop_assert_eq!((&a + &b).sigma(), &a.sigma() + &b.sigma());
        }

        #[test]
        fn evaluation_is_homomorphism(a in arb_poly(), b in arb_poly(), v in proptest::collection::vec((1i64..=7, 1i64..=5), 3)) {
            let point: BTreeMap<_, _> = v.iter().enumerate()
                .map(|(k, &(n, d))| (t(3, k as u32 + 1), q(n, d)))
                .collect();
            let ev = |p: &LaurentPoly| p.specialize_rational(&point).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        }
    }
}
