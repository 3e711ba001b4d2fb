//! Exact model of the rank-2 algebra.
//!
//! With `a = s_i s_j` the even part is `R[a^{±1}] / (P(a))`,
//! `P(a) = ∏_k (a - t_ijk)`, and the whole algebra is `even ⊕ even · s_i`
//! with `s_i c = σ(c) s_i` and `s_i a = a^{-1} s_i`. Elements are stored as a
//! pair of polynomials of degree `< m` in `a`. Everything the rewriting
//! system needs about a pair `{i, j}` is computed here.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coxeter::{alternating, Word};
use crate::laurent::{LaurentPoly, ParamIndex};
use crate::{Error, Result};

/// `Σ even[d] a^d + Σ odd[d] a^d s_i`, coefficients on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Element {
    pub even: Vec<LaurentPoly>,
    pub odd: Vec<LaurentPoly>,
}

#[derive(Debug, Clone)]
pub struct Rank2Model {
    i: u8,
    j: u8,
    m: u32,
    /// `P(a) = a^m + Σ_{l<m} c[l] a^l`.
    c: Vec<LaurentPoly>,
    /// `a^{-1}` in the standard basis.
    a_inv: Vec<LaurentPoly>,
}

impl Rank2Model {
    /// Model for the pair `i < j` with `m_ij = m` finite.
    pub fn new(i: u8, j: u8, m: u32) -> Result<Self> {
        if i >= j || m < 2 {
            return Err(Error::InvalidInput("rank-2 model needs i < j and m >= 2".into()));
        }
        // expand ∏ (a - t_k), lowest degree first
        let mut p = vec![LaurentPoly::one()];
        for k in 1..=m {
            let t = LaurentPoly::var(ParamIndex { i, j, m, k });
            let mut next = vec![LaurentPoly::zero(); p.len() + 1];
            for (d, coef) in p.iter().enumerate() {
                next[d + 1] = &next[d + 1] + coef;
                next[d] = &next[d] - &(coef * &t);
            }
            p = next;
        }
        let c: Vec<LaurentPoly> = p[..m as usize].to_vec();
        // a^{-1} = -c_0^{-1} (a^{m-1} + c_{m-1} a^{m-2} + ... + c_1)
        let minus_inv_c0 = c[0].invert_unit()?.neg();
        let mut a_inv = vec![LaurentPoly::zero(); m as usize];
        for d in 0..m as usize {
            let coef = if d + 1 == m as usize {
                LaurentPoly::one()
            } else {
                c[d + 1].clone()
            };
            a_inv[d] = &minus_inv_c0 * &coef;
        }
        Ok(Rank2Model { i, j, m, c, a_inv })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn pair(&self) -> (u8, u8) {
        (self.i, self.j)
    }

    /// Coefficients `c_0..c_{m-1}` of the monic relation `P(a)`.
    pub fn relation(&self) -> &[LaurentPoly] {
        &self.c
    }

    /// `a^{-1}` as a polynomial of degree `< m` in `a`.
    pub fn a_inverse(&self) -> &[LaurentPoly] {
        &self.a_inv
    }

    fn n(&self) -> usize {
        self.m as usize
    }

    fn zero_poly(&self) -> Vec<LaurentPoly> {
        vec![LaurentPoly::zero(); self.n()]
    }

    fn reduce(&self, mut p: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
        let n = self.n();
        while p.len() > n {
            let top = p.pop().expect("len > n");
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - n;
            for l in 0..n {
                p[shift + l] = &p[shift + l] - &(&top * &self.c[l]);
            }
        }
        p.resize(n, LaurentPoly::zero());
        p
    }

    fn poly_mul(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); 2 * self.n() - 1];
        for (s, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    out[s + t] = &out[s + t] + &(a * b);
                }
            }
        }
        self.reduce(out)
    }

    fn times_a(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut v = Vec::with_capacity(self.n() + 1);
        v.push(LaurentPoly::zero());
        v.extend_from_slice(x);
        self.reduce(v)
    }

    fn times_a_inv(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        self.poly_mul(x, &self.a_inv)
    }

    /// `p(a) ↦ σ(p)(a^{-1})`, i.e. the even part of `s_i p(a) s_i`.
    fn conjugate_by_s(&self, p: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = self.zero_poly();
        let mut power = self.zero_poly();
        power[0] = LaurentPoly::one();
        for coef in p {
            if !coef.is_zero() {
                let c = coef.sigma();
                for (o, q) in out.iter_mut().zip(&power) {
                    *o = &*o + &(&c * q);
                }
            }
            power = self.times_a_inv(&power);
        }
        out
    }

    pub fn zero(&self) -> Rank2Element {
        Rank2Element {
            even: self.zero_poly(),
            odd: self.zero_poly(),
        }
    }

    pub fn one(&self) -> Rank2Element {
        self.scalar(LaurentPoly::one())
    }

    pub fn scalar(&self, c: LaurentPoly) -> Rank2Element {
        let mut e = self.zero();
        e.even[0] = c;
        e
    }

    /// Image of the generator `s_i` or `s_j` (letter must be `i` or `j`).
    pub fn generator(&self, letter: u8) -> Result<Rank2Element> {
        let mut e = self.zero();
        if letter == self.i {
            e.odd[0] = LaurentPoly::one();
        } else if letter == self.j {
            // s_j = s_i a = a^{-1} s_i
            e.odd = self.a_inv.clone();
        } else {
            return Err(Error::InvalidWord {
                letter: usize::from(letter),
                rank: 2,
            });
        }
        Ok(e)
    }

    pub fn add(&self, x: &Rank2Element, y: &Rank2Element) -> Rank2Element {
        Rank2Element {
            even: x.even.iter().zip(&y.even).map(|(a, b)| a + b).collect(),
            odd: x.odd.iter().zip(&y.odd).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly, x: &Rank2Element) -> Rank2Element {
        Rank2Element {
            even: x.even.iter().map(|a| c * a).collect(),
            odd: x.odd.iter().map(|a| c * a).collect(),
        }
    }

    /// `(p + q s)(p' + q' s) = (p p' + q σ(q')(a^{-1})) + (p q' + q σ(p')(a^{-1})) s`.
    pub fn mul(&self, x: &Rank2Element, y: &Rank2Element) -> Rank2Element {
        let ce = self.conjugate_by_s(&y.even);
        let co = self.conjugate_by_s(&y.odd);
        let add = |a: Vec<LaurentPoly>, b: Vec<LaurentPoly>| -> Vec<LaurentPoly> {
            a.iter().zip(&b).map(|(u, v)| u + v).collect()
        };
        Rank2Element {
            even: add(self.poly_mul(&x.even, &y.even), self.poly_mul(&x.odd, &co)),
            odd: add(self.poly_mul(&x.even, &y.odd), self.poly_mul(&x.odd, &ce)),
        }
    }

    /// `T_w` for a word in the letters `i`, `j`.
    pub fn word(&self, w: &[u8]) -> Result<Rank2Element> {
        let mut acc = self.one();
        for &l in w {
            acc = self.mul_gen(&acc, l)?;
        }
        Ok(acc)
    }

    /// `x · s_l`: `(p + q s_i) s_i = q + p s_i` and
    /// `(p + q s_i) s_j = q a + p a^{-1} s_i`.
    pub fn mul_gen(&self, x: &Rank2Element, l: u8) -> Result<Rank2Element> {
        if l == self.i {
            Ok(Rank2Element {
                even: x.odd.clone(),
                odd: x.even.clone(),
            })
        } else if l == self.j {
            Ok(Rank2Element {
                even: self.times_a(&x.odd),
                odd: self.times_a_inv(&x.even),
            })
        } else {
            Err(Error::InvalidWord {
                letter: usize::from(l),
                rank: 2,
            })
        }
    }

    /// Standard basis element `a^d` (odd: `a^d s_i`), `0 ≤ d < m`.
    pub fn basis_element(&self, odd: bool, d: usize) -> Rank2Element {
        let mut e = self.zero();
        let slot = if odd { &mut e.odd } else { &mut e.even };
        slot[d] = LaurentPoly::one();
        e
    }

    /// Full multiplication table on the standard basis
    /// `{a^d, a^d s_i : 0 ≤ d < m}`; entry `[(x, y)]` is `x · y`.
    pub fn multiplication_table(&self) -> Vec<((bool, usize), (bool, usize), Rank2Element)> {
        let basis: Vec<(bool, usize)> = [false, true]
            .iter()
            .flat_map(|&o| (0..self.n()).map(move |d| (o, d)))
            .collect();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for &x in &basis {
            for &y in &basis {
                let p = self.mul(
                    &self.basis_element(x.0, x.1),
                    &self.basis_element(y.0, y.1),
                );
                table.push((x, y, p));
            }
        }
        table
    }

    fn shift(&self, p: &[LaurentPoly], by: usize) -> Vec<LaurentPoly> {
        let mut v = p.to_vec();
        for _ in 0..by {
            v = self.times_a(&v);
        }
        v
    }

    /// The alternating word representing `a^e` (odd: `a^e s_i`).
    pub fn power_word(&self, e: i64, odd: bool) -> Word {
        let (i, j) = (self.i, self.j);
        let len = |k: i64| k.unsigned_abs() as usize;
        Word::new(match (odd, e >= 0) {
            (false, true) => alternating(i, j, 2 * len(e)),
            (false, false) => alternating(j, i, 2 * len(e)),
            (true, true) => alternating(i, j, 2 * len(e) + 1),
            (true, false) => alternating(j, i, 2 * len(e) - 1),
        })
    }

    /// Coordinates on the canonical words `T_{w(x)}` of the dihedral group
    /// (ShortLex-minimal alternating words), zero coefficients dropped.
    pub fn to_basis(&self, x: &Rank2Element) -> BTreeMap<Word, LaurentPoly> {
        let n = self.n();
        let mut out = BTreeMap::new();
        // even exponents lie in [-(m-1)/2, m/2], odd in [-m/2, (m-1)/2]
        let even_shift = (n - 1) / 2;
        let odd_shift = n / 2;
        let even = self.shift(&x.even, even_shift);
        let odd = self.shift(&x.odd, odd_shift);
        for (d, coef) in even.into_iter().enumerate() {
            if !coef.is_zero() {
                out.insert(self.power_word(d as i64 - even_shift as i64, false), coef);
            }
        }
        for (d, coef) in odd.into_iter().enumerate() {
            if !coef.is_zero() {
                out.insert(self.power_word(d as i64 - odd_shift as i64, true), coef);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn t(m: u32, k: u32) -> LaurentPoly {
        LaurentPoly::var(ParamIndex { i: 0, j: 1, m, k })
    }

    #[test]
    fn quadratic_inverse() {
        let model = Rank2Model::new(0, 1, 2).unwrap();
        let prod_inv = (t(2, 1) * t(2, 2)).invert_unit().unwrap();
        let expected = vec![&(t(2, 1) + t(2, 2)) * &prod_inv, prod_inv.neg()];
        assert_eq!(model.a_inverse(), &expected[..]);
        // a · a^{-1} = 1
        let a = model.word(&[0, 1]).unwrap();
        let mut ainv = model.zero();
        ainv.even = expected;
        assert_eq!(model.mul(&a, &ainv), model.one());
    }

    #[test]
    fn relation_is_expanded_product() {
        // a · a^{m-1} = -Σ c_l a^l, with c_{m-1} = -e_1, c_{m-2} = e_2, ...
        for m in 2..=5u32 {
            let model = Rank2Model::new(0, 1, m).unwrap();
            let c = model.relation();
            let e1: LaurentPoly = (1..=m).fold(LaurentPoly::zero(), |acc, k| acc + t(m, k));
            assert_eq!(c[m as usize - 1], e1.neg());
            let e_m = (1..=m).fold(LaurentPoly::one(), |acc, k| acc * t(m, k));
            let sign = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(c[0], e_m.scale(&BigRational::from_integer(sign.into())));
            // brute-force: evaluate ∏(x - t_k) at x = 2 against Σ c_l 2^l + 2^m
            let two = LaurentPoly::from_int(2);
            let direct = (1..=m).fold(LaurentPoly::one(), |acc, k| acc * (&two - &t(m, k)));
            let mut horner = LaurentPoly::from_int(1 << m);
            for (l, cl) in c.iter().enumerate() {
                horner = horner + cl * &LaurentPoly::from_int(1 << l);
            }
            assert_eq!(direct, horner);
        }
    }

    #[test]
    fn involutions_and_braid_shape() {
        for m in 2..=6u32 {
            let model = Rank2Model::new(0, 1, m).unwrap();
            assert_eq!(model.word(&[0, 0]).unwrap(), model.one());
            assert_eq!(model.word(&[1, 1]).unwrap(), model.one());
            // basis words map to themselves
            let basis = model.to_basis(&model.word(&[1, 0]).unwrap());
            if m > 2 {
                assert_eq!(basis.len(), 1);
                assert!(basis[&Word::from([1, 0])].is_one());
            }
        }
    }

    #[test]
    fn twisted_commutation() {
        let model = Rank2Model::new(0, 1, 3).unwrap();
        let s = model.generator(0).unwrap();
        let c = t(3, 1);
        let lhs = model.mul(&s, &model.scalar(c.clone()));
        let rhs = model.mul(&model.scalar(c.sigma()), &s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generator_product_matches_general_product() {
        let model = Rank2Model::new(0, 1, 4).unwrap();
        let x = model.add(
            &model.scale(&t(4, 1), &model.word(&[1, 0, 1]).unwrap()),
            &model.word(&[0, 1]).unwrap(),
        );
        for l in 0..2u8 {
            assert_eq!(
                model.mul_gen(&x, l).unwrap(),
                model.mul(&x, &model.generator(l).unwrap())
            );
        }
    }

    #[test]
    fn table_size() {
        let model = Rank2Model::new(0, 1, 3).unwrap();
        assert_eq!(model.multiplication_table().len(), 36);
    }
}
