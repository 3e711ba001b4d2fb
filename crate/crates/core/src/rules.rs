//! Deformed braid relations as rewrite rules.
//!
//! Multiplying `∏_k (s_i s_j - t_ijk) = 0` by an alternating word turns it
//! into "alternating word of length `m` = unit · opposite alternating word +
//! strictly shorter alternating words". With `a = s_i s_j`, the word starting
//! with `j` is `a^e` (times `s_i` for odd `m`), `e = -⌈m/2⌉`, and
//! `a^e P(a) = 0` gives `a^e = -c_0^{-1} Σ_{l ≥ 1} c_l a^{l+e}`. All exponents
//! `l + e` fall in the window of canonical words, so this is the rule.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::coxeter::{alternating, CoxeterMatrix, Order, Word};
use crate::laurent::{LaurentPoly, ParamIndex};
use crate::rank2::Rank2Model;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub i: u8,
    pub j: u8,
    pub m: u32,
    /// Alternating word of length `m` being rewritten.
    pub lhs: Word,
    /// The opposite alternating word of length `m`.
    pub leading_word: Word,
    /// Unit coefficient of `leading_word`.
    pub leading: LaurentPoly,
    /// Strictly shorter alternating words and their coefficients.
    pub lower: Vec<(Word, LaurentPoly)>,
}

impl RewriteRule {
    /// All right-hand side terms, leading term first.
    pub fn rhs(&self) -> Vec<(Word, LaurentPoly)> {
        let mut out = Vec::with_capacity(self.lower.len() + 1);
        out.push((self.leading_word.clone(), self.leading.clone()));
        out.extend(self.lower.iter().cloned());
        out
    }

    /// The same relation solved for the opposite word:
    /// `T_opp = κ^{-1} T_lhs - Σ κ^{-1} d T_short`.
    pub fn reversed(&self) -> Result<RewriteRule> {
        let inv = self.leading.invert_unit()?;
        Ok(RewriteRule {
            i: self.i,
            j: self.j,
            m: self.m,
            lhs: self.leading_word.clone(),
            leading_word: self.lhs.clone(),
            leading: inv.clone(),
            lower: self
                .lower
                .iter()
                .map(|(w, d)| (w.clone(), (&inv * d).neg()))
                .collect(),
        })
    }
}

/// Braid rule for `{i, j}` rewriting the alternating word that starts with
/// the larger index.
pub fn braid_rule(matrix: &CoxeterMatrix, i: usize, j: usize) -> Result<RewriteRule> {
    if i == j || i >= matrix.rank() || j >= matrix.rank() {
        return Err(Error::InvalidInput("braid_rule needs two distinct generators".into()));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let Order::Finite(m) = matrix.order(i, j) else {
        return Err(Error::NoRule { i, j });
    };
    rule_for_pair(i as u8, j as u8, m)
}

pub(crate) fn rule_for_pair(i: u8, j: u8, m: u32) -> Result<RewriteRule> {
    let model = Rank2Model::new(i, j, m)?;
    let odd = m % 2 == 1;
    let e = -(i64::from(m) + 1) / 2;
    let minus_inv_c0 = model.relation()[0].invert_unit()?.neg();
    let mut lower = Vec::with_capacity(m as usize - 1);
    let mut leading = LaurentPoly::zero();
    for l in 1..=m as usize {
        let coef = match model.relation().get(l) {
            Some(c) => &minus_inv_c0 * c,
            None => minus_inv_c0.clone(),
        };
        if l == m as usize {
            leading = coef;
        } else if !coef.is_zero() {
            lower.push((model.power_word(l as i64 + e, odd), coef));
        }
    }
    lower.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RewriteRule {
        i,
        j,
        m,
        lhs: model.power_word(e, odd),
        leading_word: Word::new(alternating(i, j, m as usize)),
        leading,
        lower,
    })
}

/// `(-1)^{m+1} (∏_k t_ijk)^{-1}`: the leading coefficient predicted by
/// swapping `i` and `j` in `t_ij = (-1)^{m+1} t_ij1 ... t_ijm`.
pub fn predicted_leading(i: u8, j: u8, m: u32) -> LaurentPoly {
    let prod = (1..=m).fold(LaurentPoly::one(), |acc, k| {
        acc.mul(&LaurentPoly::var(ParamIndex { i, j, m, k }))
    });
    let sign = if m % 2 == 1 { 1 } else { -1 };
    prod.invert_unit()
        .expect("monomial")
        .scale(&BigRational::from_integer(sign.into()))
}
