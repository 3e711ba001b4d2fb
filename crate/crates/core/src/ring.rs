//! Coefficient rings for the deformed algebra.
//!
//! The algebra code is written once against [`CoeffRing`]: a commutative
//! ring with the parity twist `σ` (`s_p c = σ(c) s_p`) and a homomorphism
//! from the symbolic ring `R`. Three instances:
//!
//! * [`Symbolic`]: `R` itself.
//! * [`GenericPoint`]: evaluation at a rational point `a`. `σ` does not act on
//!   a single value, so an element is stored as the pair `(f(a), (σf)(a))`;
//!   the twist swaps the pair. This is the ring `Q × Q` with the swap, and
//!   `f ↦ (f(a), σf(a))` is a twist-compatible homomorphism.
//! * [`GroupPoint`]: `t_ijk ↦ ζ^k` in `Q(ζ_N)`. The ideal `J` is σ-stable and
//!   `σ` acts trivially on the quotient, so the twist is the identity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::CoxeterMatrix;
use crate::cyclotomic::{CyclotomicField, CyclotomicValue};
use crate::laurent::{LaurentPoly, ParamIndex};
use crate::Result;

pub trait CoeffRing: Clone + Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `σ(a)`, the coefficient obtained by moving `a` past one generator.
    fn twist(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a symbolic coefficient.
    fn embed(&self, p: &LaurentPoly) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `σ^parity(a)`.
    fn twist_by(&self, a: &Self::Elem, parity: usize) -> Self::Elem {
        if parity % 2 == 1 {
            self.twist(a)
        } else {
            a.clone()
        }
    }
}

/// The Laurent polynomial ring `R` itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Symbolic;

impl CoeffRing for Symbolic {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn twist(&self, a: &LaurentPoly) -> LaurentPoly {
        a.sigma()
    }
    fn embed(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(p.clone())
    }
}

/// `(f(a), (σf)(a))` for a fixed point `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedPair {
    pub value: BigRational,
    pub twisted: BigRational,
}

/// Evaluation at a rational point with nonzero coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPoint {
    assignment: BTreeMap<ParamIndex, BigRational>,
}

impl GenericPoint {
    pub fn new(assignment: BTreeMap<ParamIndex, BigRational>) -> Self {
        GenericPoint { assignment }
    }

    /// Seeded random point: every parameter of `matrix` gets `±p/q` with
    /// `1 ≤ p ≤ 9`, `1 ≤ q ≤ 7`, never `±1`.
    pub fn seeded(matrix: &CoxeterMatrix, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut assignment = BTreeMap::new();
        for p in ParamIndex::all(matrix) {
            let v = loop {
                let num: i64 = rng.gen_range(1..=9);
                let den: i64 = rng.gen_range(1..=7);
                let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
                let v = BigRational::new((sign * num).into(), den.into());
                if !(v.is_one() || (-v.clone()).is_one()) {
                    break v;
                }
            };
            assignment.insert(p, v);
        }
        GenericPoint { assignment }
    }

    pub fn assignment(&self) -> &BTreeMap<ParamIndex, BigRational> {
        &self.assignment
    }

    pub fn eval(&self, p: &LaurentPoly) -> Result<BigRational> {
        p.specialize_rational(&self.assignment)
    }
}

impl CoeffRing for GenericPoint {
    type Elem = TwistedPair;

    fn zero(&self) -> TwistedPair {
        TwistedPair {
            value: BigRational::zero(),
            twisted: BigRational::zero(),
        }
    }
    fn one(&self) -> TwistedPair {
        TwistedPair {
            value: BigRational::one(),
            twisted: BigRational::one(),
        }
    }
    fn is_zero(&self, a: &TwistedPair) -> bool {
        a.value.is_zero() && a.twisted.is_zero()
    }
    fn add(&self, a: &TwistedPair, b: &TwistedPair) -> TwistedPair {
        TwistedPair {
            value: &a.value + &b.value,
            twisted: &a.twisted + &b.twisted,
        }
    }
    fn mul(&self, a: &TwistedPair, b: &TwistedPair) -> TwistedPair {
        TwistedPair {
            value: &a.value * &b.value,
            twisted: &a.twisted * &b.twisted,
        }
    }
    fn neg(&self, a: &TwistedPair) -> TwistedPair {
        TwistedPair {
            value: -&a.value,
            twisted: -&a.twisted,
        }
    }
    fn twist(&self, a: &TwistedPair) -> TwistedPair {
        TwistedPair {
            value: a.twisted.clone(),
            twisted: a.value.clone(),
        }
    }
    fn embed(&self, p: &LaurentPoly) -> Result<TwistedPair> {
        Ok(TwistedPair {
            value: self.eval(p)?,
            twisted: self.eval(&p.sigma())?,
        })
    }
}

/// The group specialization `t_ijk ↦ exp(2πik/m_ij)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPoint {
    field: CyclotomicField,
}

impl GroupPoint {
    /// Conductor `lcm` of all finite `m_ij` (1 if there are none).
    pub fn for_matrix(matrix: &CoxeterMatrix) -> Self {
        let n = matrix.finite_pairs().fold(1u32, |acc, (_, _, m)| acc.lcm(&m));
        GroupPoint {
            field: CyclotomicField::new(n),
        }
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }
}

impl CoeffRing for GroupPoint {
    type Elem = CyclotomicValue;

    fn zero(&self) -> CyclotomicValue {
        self.field.zero()
    }
    fn one(&self) -> CyclotomicValue {
        self.field.one()
    }
    fn is_zero(&self, a: &CyclotomicValue) -> bool {
        self.field.is_zero(a)
    }
    fn add(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        self.field.add(a, b)
    }
    fn mul(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        self.field.mul(a, b)
    }
    fn neg(&self, a: &CyclotomicValue) -> CyclotomicValue {
        self.field.neg(a)
    }
    fn twist(&self, a: &CyclotomicValue) -> CyclotomicValue {
        a.clone()
    }
    fn embed(&self, p: &LaurentPoly) -> Result<CyclotomicValue> {
        p.specialize_group(&self.field)
    }
}

/// Apply a ring map coefficient-wise.
pub fn map_coeffs<R: CoeffRing, K: Clone + Ord>(
    ring: &R,
    terms: &BTreeMap<K, LaurentPoly>,
) -> Result<Vec<(K, R::Elem)>> {
    terms
        .iter()
        .map(|(k, c)| Ok((k.clone(), ring.embed(c)?)))
        .collect()
}
