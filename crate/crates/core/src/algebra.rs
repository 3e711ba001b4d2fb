//! The deformed algebra `A(M)` as a left `R`-module on the spanning set
//! `T_{w(x)}`, `w(x)` the ShortLex-minimal reduced word of `x ∈ W(M)`.
//!
//! Reduction is a fold over the letters of a word. Multiplying a basis
//! element `T_{w(x)}` by a generator (the *kernel* product, memoized):
//!
//! * length goes up: walk a shortest braid-move path from `w(x)·i` to
//!   `w(x s_i)`, applying the deformed braid rule at each step;
//! * length goes down: walk from `w(x)` to a reduced word ending in `i`,
//!   cancel `s_i^2 = 1` exactly, recurse on the rest.
//!
//! Each braid step contributes strictly shorter words, which are reduced
//! recursively. A coefficient moved past a prefix of length `p` is twisted
//! by `σ^p`. For a flat matrix the result does not depend on the choices
//! made along the way; [`Strategy`] exposes those choices so that this can
//! be tested.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::coxeter::{CoxeterMatrix, Word};
use crate::group::{BraidMove, CoxeterGroup, Side};
use crate::laurent::{LaurentPoly, ParamIndex};
use crate::ring::{CoeffRing, Symbolic};
use crate::rules::{rule_for_pair, RewriteRule};
use crate::{Budget, Error, Result};

/// Order in which the letters of a word are absorbed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Fold {
    /// `((1 · s_{w1}) · s_{w2}) · ...`
    #[default]
    LeftToRight,
    /// `s_{w1} · (s_{w2} · (... · 1))`
    RightToLeft,
}

/// The choices the reduction makes. The default is the reference strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Strategy {
    pub fold: Fold,
    /// Explore braid moves right-to-left in path searches.
    pub reverse_tiebreak: bool,
}

impl Strategy {
    pub const REFERENCE: Strategy = Strategy {
        fold: Fold::LeftToRight,
        reverse_tiebreak: false,
    };

    /// The reference strategy and the variants used for confluence tests.
    pub fn all() -> [Strategy; 4] {
        [
            Strategy::REFERENCE,
            Strategy {
                fold: Fold::RightToLeft,
                reverse_tiebreak: false,
            },
            Strategy {
                fold: Fold::LeftToRight,
                reverse_tiebreak: true,
            },
            Strategy {
                fold: Fold::RightToLeft,
                reverse_tiebreak: true,
            },
        ]
    }
}

/// A finite left `R`-combination `Σ c_x T_{w(x)}`; keys are canonical words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    terms: BTreeMap<Word, E>,
}

impl<E> Default for AlgebraElement<E> {
    fn default() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &E)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&E> {
        self.terms.get(w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every key has even length (the element lies in `A₊(M)`).
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|w| w.len() % 2 == 0)
    }

    /// Filtration degree: longest key, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// Per pair `{i < j}`, the braid rule in the target ring, indexed by which
/// letter the rewritten segment starts with.
#[derive(Debug, Clone)]
struct MoveRule<E> {
    leading: E,
    lower: Vec<(Vec<u8>, E)>,
}

#[derive(Debug, Clone)]
struct PairRules<E> {
    // segment starts with i (smaller index)
    from_low: MoveRule<E>,
    // segment starts with j
    from_high: MoveRule<E>,
}

/// `A(M)` over a coefficient ring, with one fixed reduction strategy.
#[derive(Debug, Clone)]
pub struct DeformedAlgebra<R: CoeffRing> {
    group: CoxeterGroup,
    ring: R,
    strategy: Strategy,
    rules: BTreeMap<(u8, u8), PairRules<R::Elem>>,
    symbolic_rules: Vec<RewriteRule>,
    kernels: BTreeMap<(Word, u8, bool), AlgebraElement<R::Elem>>,
    budget: Budget,
}

impl DeformedAlgebra<Symbolic> {
    /// Symbolic algebra over `R` with the reference strategy.
    pub fn symbolic(matrix: CoxeterMatrix) -> Result<Self> {
        Self::new(matrix, Symbolic, Strategy::REFERENCE, Budget::default())
    }
}

impl<R: CoeffRing> DeformedAlgebra<R> {
    pub fn new(matrix: CoxeterMatrix, ring: R, strategy: Strategy, budget: Budget) -> Result<Self> {
        let mut rules = BTreeMap::new();
        let mut symbolic_rules = Vec::new();
        for (i, j, m) in matrix.finite_pairs() {
            let rule = rule_for_pair(i as u8, j as u8, m)?;
            let back = rule.reversed()?;
            let convert = |r: &RewriteRule| -> Result<MoveRule<R::Elem>> {
                Ok(MoveRule {
                    leading: ring.embed(&r.leading)?,
                    lower: r
                        .lower
                        .iter()
                        .map(|(w, c)| Ok((w.letters().to_vec(), ring.embed(c)?)))
                        .collect::<Result<_>>()?,
                })
            };
            rules.insert(
                (i as u8, j as u8),
                PairRules {
                    from_high: convert(&rule)?,
                    from_low: convert(&back)?,
                },
            );
            symbolic_rules.push(rule);
        }
        Ok(DeformedAlgebra {
            group: CoxeterGroup::with_budget(matrix, budget),
            ring,
            strategy,
            rules,
            symbolic_rules,
            kernels: BTreeMap::new(),
            budget,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.group.matrix()
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn group(&mut self) -> &mut CoxeterGroup {
        &mut self.group
    }

    /// The symbolic braid rules, one per finite pair.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.symbolic_rules
    }

    pub fn cached_kernels(&self) -> usize {
        self.kernels.len()
    }

    // ----- element arithmetic -------------------------------------------

    pub fn basis(&self, w: Word) -> AlgebraElement<R::Elem> {
        self.monomial(self.ring.one(), w)
    }

    pub fn monomial(&self, c: R::Elem, w: Word) -> AlgebraElement<R::Elem> {
        let mut terms = BTreeMap::new();
        if !self.ring.is_zero(&c) {
            terms.insert(w, c);
        }
        AlgebraElement { terms }
    }

    pub fn one(&self) -> AlgebraElement<R::Elem> {
        self.basis(Word::empty())
    }

    pub fn scalar(&self, c: R::Elem) -> AlgebraElement<R::Elem> {
        self.monomial(c, Word::empty())
    }

    /// Build from arbitrary (word, coefficient) pairs; words are reduced.
    pub fn from_terms(
        &mut self,
        terms: impl IntoIterator<Item = (Vec<u8>, R::Elem)>,
    ) -> Result<AlgebraElement<R::Elem>> {
        let mut acc = AlgebraElement::zero();
        for (w, c) in terms {
            let t = self.normal_form(&w)?;
            self.add_scaled(&mut acc, &c, &t);
        }
        Ok(acc)
    }

    fn add_term(&self, acc: &mut AlgebraElement<R::Elem>, w: &Word, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match acc.terms.get_mut(w) {
            Some(v) => {
                let s = self.ring.add(v, &c);
                if self.ring.is_zero(&s) {
                    acc.terms.remove(w);
                } else {
                    *v = s;
                }
            }
            None => {
                acc.terms.insert(w.clone(), c);
            }
        }
    }

    /// `acc += c · x` (left scalar).
    fn add_scaled(
        &self,
        acc: &mut AlgebraElement<R::Elem>,
        c: &R::Elem,
        x: &AlgebraElement<R::Elem>,
    ) {
        for (w, v) in &x.terms {
            self.add_term(acc, w, self.ring.mul(c, v));
        }
    }

    pub fn add(
        &self,
        x: &AlgebraElement<R::Elem>,
        y: &AlgebraElement<R::Elem>,
    ) -> AlgebraElement<R::Elem> {
        let mut acc = x.clone();
        self.add_scaled(&mut acc, &self.ring.one(), y);
        acc
    }

    pub fn sub(
        &self,
        x: &AlgebraElement<R::Elem>,
        y: &AlgebraElement<R::Elem>,
    ) -> AlgebraElement<R::Elem> {
        let mut acc = x.clone();
        self.add_scaled(&mut acc, &self.ring.neg(&self.ring.one()), y);
        acc
    }

    /// `c · x`.
    pub fn scale(&self, c: &R::Elem, x: &AlgebraElement<R::Elem>) -> AlgebraElement<R::Elem> {
        let mut acc = AlgebraElement::zero();
        self.add_scaled(&mut acc, c, x);
        acc
    }

    // ----- rewriting ----------------------------------------------------

    /// Rule for the alternating segment of length `len` at `pos` in `w`.
    fn segment_rule(&self, w: &[u8], pos: usize) -> &MoveRule<R::Elem> {
        let (a, b) = (w[pos], w[pos + 1]);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let pr = &self.rules[&(lo, hi)];
        if a == hi {
            &pr.from_high
        } else {
            &pr.from_low
        }
    }

    /// Walk a braid path from `start`. Returns `(lead, lower, end)` with
    /// `T_start = lead · T_end + lower`.
    fn rewrite_along(
        &mut self,
        start: &[u8],
        path: &[BraidMove],
    ) -> Result<(R::Elem, AlgebraElement<R::Elem>, Vec<u8>)> {
        let mut lead = self.ring.one();
        let mut lower = AlgebraElement::zero();
        let mut cur = start.to_vec();
        for mv in path {
            let rule = self.segment_rule(&cur, mv.pos).clone();
            for (short, d) in &rule.lower {
                let mut w = Vec::with_capacity(cur.len());
                w.extend_from_slice(&cur[..mv.pos]);
                w.extend_from_slice(short);
                w.extend_from_slice(&cur[mv.pos + mv.len..]);
                let coeff = self.ring.mul(&lead, &self.ring.twist_by(d, mv.pos));
                let reduced = self.normal_form_unchecked(&w)?;
                self.add_scaled(&mut lower, &coeff, &reduced);
            }
            lead = self
                .ring
                .mul(&lead, &self.ring.twist_by(&rule.leading, mv.pos));
            cur = crate::coxeter::apply_braid_move(&cur, mv.pos, mv.len);
        }
        Ok((lead, lower, cur))
    }

    /// `T_v` for a reduced word `v`.
    fn reduce_reduced(&mut self, v: &[u8]) -> Result<AlgebraElement<R::Elem>> {
        let target = self.group.reduce(v)?;
        if target.letters() == v {
            return Ok(self.basis(target));
        }
        let (path, _) = self
            .group
            .braid_path(v, self.strategy.reverse_tiebreak, |u| u == target.letters())?;
        let (lead, mut lower, end) = self.rewrite_along(v, &path)?;
        self.add_term(&mut lower, &Word::new(end), lead);
        Ok(lower)
    }

    /// `T_{w(x)} · s_i` (right) or `s_i · T_{w(x)}` (left), memoized.
    fn kernel(&mut self, x: &Word, i: u8, side: Side) -> Result<AlgebraElement<R::Elem>> {
        let key = (x.clone(), i, side == Side::Left);
        if let Some(k) = self.kernels.get(&key) {
            return Ok(k.clone());
        }
        let reverse = self.strategy.reverse_tiebreak;
        let result = if !self.group.is_descent(x, i, side)? {
            let word = match side {
                Side::Right => x.concat(&[i]),
                Side::Left => {
                    let mut v = vec![i];
                    v.extend_from_slice(x);
                    Word::new(v)
                }
            };
            self.reduce_reduced(&word)?
        } else {
            let (path, _) = self.group.braid_path(x, reverse, |u| match side {
                Side::Right => u.last() == Some(&i),
                Side::Left => u.first() == Some(&i),
            })?;
            let (lead, lower, end) = self.rewrite_along(x, &path)?;
            let (rest, lead) = match side {
                Side::Right => (&end[..end.len() - 1], lead),
                Side::Left => (&end[1..], self.ring.twist(&lead)),
            };
            let rest = rest.to_vec();
            let mut acc = self.reduce_reduced(&rest)?;
            acc = self.scale(&lead, &acc);
            let tail = self.mul_gen(&lower, i, side)?;
            self.add_scaled(&mut acc, &self.ring.one(), &tail);
            acc
        };
        if self.kernels.len() >= self.budget.kernel_cache {
            return Err(Error::BudgetExceeded {
                what: "kernel product cache",
                limit: self.budget.kernel_cache,
            });
        }
        self.kernels.insert(key, result.clone());
        Ok(result)
    }

    /// `x · s_i` (right) or `s_i · x` (left).
    pub fn mul_gen(
        &mut self,
        x: &AlgebraElement<R::Elem>,
        i: u8,
        side: Side,
    ) -> Result<AlgebraElement<R::Elem>> {
        self.matrix().check_word(&[i])?;
        let mut acc = AlgebraElement::zero();
        for (w, c) in &x.terms {
            let k = self.kernel(w, i, side)?;
            let c = match side {
                Side::Right => c.clone(),
                Side::Left => self.ring.twist(c),
            };
            self.add_scaled(&mut acc, &c, &k);
        }
        Ok(acc)
    }

    fn normal_form_unchecked(&mut self, w: &[u8]) -> Result<AlgebraElement<R::Elem>> {
        let mut acc = self.one();
        match self.strategy.fold {
            Fold::LeftToRight => {
                for &l in w {
                    acc = self.mul_gen(&acc, l, Side::Right)?;
                }
            }
            Fold::RightToLeft => {
                for &l in w.iter().rev() {
                    acc = self.mul_gen(&acc, l, Side::Left)?;
                }
            }
        }
        Ok(acc)
    }

    /// `T_w` expressed on the spanning set `T_{w(x)}`.
    pub fn normal_form(&mut self, w: &[u8]) -> Result<AlgebraElement<R::Elem>> {
        self.matrix().check_word(w)?;
        self.normal_form_unchecked(w)
    }

    /// `T_u · T_v` for canonical `u`, `v`.
    fn basis_product(&mut self, u: &Word, v: &Word) -> Result<AlgebraElement<R::Elem>> {
        match self.strategy.fold {
            Fold::LeftToRight => {
                let mut acc = self.basis(u.clone());
                for &l in v.iter() {
                    acc = self.mul_gen(&acc, l, Side::Right)?;
                }
                Ok(acc)
            }
            Fold::RightToLeft => {
                let mut acc = self.basis(v.clone());
                for &l in u.iter().rev() {
                    acc = self.mul_gen(&acc, l, Side::Left)?;
                }
                Ok(acc)
            }
        }
    }

    /// `x · y`, using `T_u c = σ^{ℓ(u)}(c) T_u`.
    pub fn multiply(
        &mut self,
        x: &AlgebraElement<R::Elem>,
        y: &AlgebraElement<R::Elem>,
    ) -> Result<AlgebraElement<R::Elem>> {
        let rank = self.matrix().rank();
        if x.terms.keys().chain(y.terms.keys()).any(|w| w.iter().any(|&l| usize::from(l) >= rank)) {
            return Err(Error::AmbientMismatch);
        }
        let mut acc = AlgebraElement::zero();
        for (u, c) in &x.terms {
            for (v, d) in &y.terms {
                let coeff = self.ring.mul(c, &self.ring.twist_by(d, u.len()));
                let p = self.basis_product(u, v)?;
                self.add_scaled(&mut acc, &coeff, &p);
            }
        }
        Ok(acc)
    }

    /// The derived generator `a_ij = s_i s_j` of `A₊(M)`.
    pub fn a(&mut self, i: u8, j: u8) -> Result<AlgebraElement<R::Elem>> {
        self.normal_form(&[i, j])
    }

    /// Products `T_{w(x)} T_{w(y)}` for all `x`, `y` of length `≤ max_len`.
    pub fn structure_constants(&mut self, max_len: usize) -> Result<StructureConstants<R::Elem>> {
        let basis: Vec<Word> = self
            .group
            .enumerate(max_len)?
            .into_iter()
            .flatten()
            .collect();
        let mut entries = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let p = self.basis_product(x, y)?;
                entries.push((x.clone(), y.clone(), p));
            }
        }
        Ok(StructureConstants { entries })
    }

    /// Apply `σ₀` (the involution of `A₊(M)` attached to `base`) to an even
    /// element: `t_ijk ↦ t_jik`, `a_ij ↦ a_ji` when `base ∈ {i, j}`,
    /// `a_ij ↦ a_{base,i} a_{j,base}` otherwise.
    pub fn sigma0(
        &mut self,
        base: u8,
        x: &AlgebraElement<R::Elem>,
    ) -> Result<AlgebraElement<R::Elem>> {
        self.matrix().check_word(&[base])?;
        if !x.is_even() {
            return Err(Error::OddElement);
        }
        let mut acc = AlgebraElement::zero();
        for (w, c) in &x.terms {
            let mut image = Vec::with_capacity(2 * w.len());
            for pair in w.chunks(2) {
                let (p, q) = (pair[0], pair[1]);
                if p == base || q == base {
                    image.extend_from_slice(&[q, p]);
                } else {
                    image.extend_from_slice(&[base, p, q, base]);
                }
            }
            let t = self.normal_form_unchecked(&image)?;
            let c = self.ring.twist(c);
            self.add_scaled(&mut acc, &c, &t);
        }
        Ok(acc)
    }

    /// Map every coefficient through `f`, dropping zeros.
    pub fn map_element<S: CoeffRing>(
        &self,
        target: &S,
        x: &AlgebraElement<R::Elem>,
        mut f: impl FnMut(&R::Elem) -> Result<S::Elem>,
    ) -> Result<AlgebraElement<S::Elem>> {
        let mut terms = BTreeMap::new();
        for (w, c) in &x.terms {
            let v = f(c)?;
            if !target.is_zero(&v) {
                terms.insert(w.clone(), v);
            }
        }
        Ok(AlgebraElement { terms })
    }
}

/// Even (or any) symbolic element to another ring.
pub fn specialize_element<S: CoeffRing>(
    target: &S,
    x: &AlgebraElement<LaurentPoly>,
) -> Result<AlgebraElement<S::Elem>> {
    let mut terms = BTreeMap::new();
    for (w, c) in &x.terms {
        let v = target.embed(c)?;
        if !target.is_zero(&v) {
            terms.insert(w.clone(), v);
        }
    }
    Ok(AlgebraElement { terms })
}

/// Table of products of basis elements.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<E> {
    pub entries: Vec<(Word, Word, AlgebraElement<E>)>,
}

impl<E: Clone> StructureConstants<E> {
    /// Distinct keys that occur in some product.
    pub fn support(&self) -> Vec<Word> {
        let mut keys: Vec<Word> = self
            .entries
            .iter()
            .flat_map(|(_, _, p)| p.terms.keys().cloned())
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }
}

/// Connected components of the graph on `I` joining `i`, `j` when `m_ij` is
/// odd. Braid moves preserve the letter count summed over each component.
pub fn odd_components(matrix: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let r = matrix.rank();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, j, m) in matrix.finite_pairs() {
        if m % 2 == 1 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..r {
        let root = find(&mut parent, i);
        comps.entry(root).or_default().push(i);
    }
    comps.into_values().collect()
}

/// Letter counts of a word summed over each odd component.
pub fn component_counts(matrix: &CoxeterMatrix, w: &[u8]) -> Vec<usize> {
    let counts = Word::from(w).letter_counts(matrix.rank());
    odd_components(matrix)
        .iter()
        .map(|c| c.iter().map(|&i| counts[i]).sum())
        .collect()
}

/// Multidegree of an element: per odd component of `Γ(M)`, the largest
/// letter count (summed over the component) among its keys.
pub fn multidegree<E: Clone>(matrix: &CoxeterMatrix, x: &AlgebraElement<E>) -> Vec<usize> {
    let ncomp = odd_components(matrix).len();
    let mut out = vec![0; ncomp];
    for w in x.terms.keys() {
        for (o, c) in out.iter_mut().zip(component_counts(matrix, w)) {
            *o = (*o).max(c);
        }
    }
    out
}

/// Outcome of checking the presentation of `A₊(M)` and the isomorphism
/// `A₀(M) → A(M)`, `a_ij ↦ s_i s_j`, `σ₀ ↦ s_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub checks: Vec<(String, bool)>,
}

impl IsoReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Verify through normal forms that the images `s_i s_j` satisfy the
/// defining relations of `A₊(M)`, that `f^{-1}(s_i) = σ₀ a_{0i}` inverts `f` on
/// generators, and that `σ₀` is conjugation by `s_0`.
pub fn iso_check(matrix: &CoxeterMatrix) -> Result<IsoReport> {
    let mut alg = DeformedAlgebra::symbolic(matrix.clone())?;
    let r = matrix.rank() as u8;
    let one = alg.one();
    let mut checks = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let v = alg.normal_form(&[i, j, j, i])?;
            checks.push((format!("a_{i}{j} a_{j}{i} = 1"), v == one));
        }
    }
    for i in 0..r {
        for j in 0..r {
            for p in 0..r {
                if i == j || j == p || p == i {
                    continue;
                }
                let v = alg.normal_form(&[i, j, j, p, p, i])?;
                checks.push((format!("a_{i}{j} a_{j}{p} a_{p}{i} = 1"), v == one));
            }
        }
    }
    for (i, j, m) in matrix.finite_pairs() {
        let (i, j) = (i as u8, j as u8);
        let a = alg.a(i, j)?;
        let mut prod = alg.one();
        for k in 1..=m {
            let t = LaurentPoly::var(ParamIndex { i, j, m, k });
            let factor = alg.sub(&a, &alg.scalar(t));
            prod = alg.multiply(&prod, &factor)?;
        }
        checks.push((format!("minimal polynomial of a_{i}{j}"), prod.is_empty()));
    }
    for i in 1..r {
        // f(σ₀ a_{0i}) = s_0 s_0 s_i
        let v = alg.normal_form(&[0, 0, i])?;
        checks.push((format!("f(f^-1(s_{i})) = s_{i}"), v == alg.basis(Word::from([i]))));
    }
    let s0 = alg.basis(Word::from([0]));
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let a = alg.a(i, j)?;
            let lhs = alg.sigma0(0, &a)?;
            let conj = alg.multiply(&s0, &a)?;
            let rhs = alg.multiply(&conj, &s0)?;
            checks.push((format!("f(σ₀(a_{i}{j})) = s_0 a_{i}{j} s_0"), lhs == rhs));
        }
    }
    Ok(IsoReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;
    use crate::rank2::Rank2Model;
    use crate::ring::{GenericPoint, GroupPoint};
    use num_rational::BigRational;

    fn f(m: u32) -> Order {
        Order::Finite(m)
    }

    fn t(i: u8, j: u8, m: u32, k: u32) -> LaurentPoly {
        LaurentPoly::var(ParamIndex { i, j, m, k })
    }

    #[test]
    fn square_cancels() {
        let mut alg = DeformedAlgebra::symbolic(CoxeterMatrix::dihedral(f(3)).unwrap()).unwrap();
        assert_eq!(alg.normal_form(&[0, 0]).unwrap(), alg.one());
        assert_eq!(alg.normal_form(&[]).unwrap(), alg.one());
        assert!(matches!(
            alg.normal_form(&[0, 5]),
            Err(Error::InvalidWord { letter: 5, .. })
        ));
        let big = DeformedAlgebra::symbolic(CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap()).unwrap();
        let x = big.basis(Word::from([2]));
        assert_eq!(alg.multiply(&x, &alg.one()), Err(Error::AmbientMismatch));
    }

    #[test]
    fn rank2_word_matches_model_and_rule() {
        let matrix = CoxeterMatrix::dihedral(f(3)).unwrap();
        let mut alg = DeformedAlgebra::symbolic(matrix.clone()).unwrap();
        let nf = alg.normal_form(&[1, 0, 1]).unwrap();
        let model = Rank2Model::new(0, 1, 3).unwrap();
        let expected = model.to_basis(&model.word(&[1, 0, 1]).unwrap());
        let got: BTreeMap<Word, LaurentPoly> =
            nf.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        assert_eq!(got, expected);
        let rule = crate::rules::braid_rule(&matrix, 0, 1).unwrap();
        assert_eq!(nf.coefficient(&Word::from([0, 1, 0])), Some(&rule.leading));
        for (w, c) in &rule.lower {
            assert_eq!(nf.coefficient(w), Some(c));
        }
    }

    #[test]
    fn twisted_scalar_commutation() {
        // T_[0] · (t_011 T_[]) = σ(t_011) T_[0] = t_01,m-1^{-1} T_[0]
        for m in 2..=5u32 {
            let mut alg =
                DeformedAlgebra::symbolic(CoxeterMatrix::dihedral(f(m)).unwrap()).unwrap();
            let s0 = alg.basis(Word::from([0]));
            let c = alg.scalar(t(0, 1, m, 1));
            let p = alg.multiply(&s0, &c).unwrap();
            let expected = t(0, 1, m, m - 1).invert_unit().unwrap();
            assert_eq!(p, alg.monomial(expected, Word::from([0])));
            assert_eq!(alg.multiply(&s0, &s0).unwrap(), alg.one());
        }
    }

    #[test]
    fn even_words_do_not_twist() {
        let mut alg =
            DeformedAlgebra::symbolic(CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap()).unwrap();
        let a = alg.a(0, 1).unwrap();
        let c = alg.scalar(t(0, 2, 3, 1));
        let lhs = alg.multiply(&a, &c).unwrap();
        let rhs = alg.multiply(&c, &a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_specialization_gives_group_element() {
        let matrix = CoxeterMatrix::triangle(f(2), f(3), f(3)).unwrap();
        let mut alg = DeformedAlgebra::symbolic(matrix.clone()).unwrap();
        let gp = GroupPoint::for_matrix(&matrix);
        let words: [&[u8]; 4] = [&[2, 1, 2, 1], &[1, 0, 2, 1, 0, 1], &[0, 2, 0, 2], &[2, 1, 0, 1, 2]];
        for w in words {
            let nf = alg.normal_form(w).unwrap();
            let sp = specialize_element(&gp, &nf).unwrap();
            let canon = matrix.canonical_word(w).unwrap();
            assert_eq!(sp.len(), 1, "word {w:?}");
            assert!(gp.field().is_one(sp.coefficient(&canon).unwrap()));
        }
    }

    #[test]
    fn strategies_agree_symbolically_on_flat_rank3() {
        let matrix = CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap();
        let mut algs: Vec<_> = Strategy::all()
            .into_iter()
            .map(|s| DeformedAlgebra::new(matrix.clone(), Symbolic, s, Budget::default()).unwrap())
            .collect();
        let words: [&[u8]; 4] = [&[2, 1, 0, 1], &[1, 2, 1, 0, 1], &[0, 1, 2, 0, 1], &[2, 0, 2, 1, 2]];
        for w in words {
            let reference = algs[0].normal_form(w).unwrap();
            for alg in algs.iter_mut().skip(1) {
                assert_eq!(alg.normal_form(w).unwrap(), reference, "{:?}", alg.strategy());
            }
        }
    }

    #[test]
    fn strategies_disagree_on_a1_cubed() {
        // (2,2,2): the hexagon of commutations in 2 1 0 is not confluent
        let matrix = CoxeterMatrix::triangle(f(2), f(2), f(2)).unwrap();
        let pt = GenericPoint::seeded(&matrix, 0);
        let mut nfs = Vec::new();
        for s in Strategy::all() {
            let mut alg = DeformedAlgebra::new(matrix.clone(), pt.clone(), s, Budget::default())
                .unwrap();
            let mut v = Vec::new();
            for w in [&[2u8, 1, 0][..], &[2, 1, 0, 2], &[1, 2, 0, 1, 2]] {
                v.push(alg.normal_form(w).unwrap());
            }
            nfs.push(v);
        }
        assert!(nfs.iter().any(|v| v != &nfs[0]));
    }

    #[test]
    fn multidegree_examples() {
        let matrix = CoxeterMatrix::dihedral(f(3)).unwrap();
        let alg = DeformedAlgebra::symbolic(matrix.clone()).unwrap();
        assert_eq!(alg.one().degree(), 0);
        assert_eq!(odd_components(&matrix), vec![vec![0, 1]]);
        let x = alg.basis(Word::from([0, 1, 0]));
        assert_eq!(multidegree(&matrix, &x), vec![3]);
        assert_eq!(component_counts(&matrix, &[1, 0, 1]), vec![3]);
        let even = CoxeterMatrix::dihedral(f(2)).unwrap();
        assert_eq!(odd_components(&even), vec![vec![0], vec![1]]);
        assert_eq!(component_counts(&even, &[0, 1]), component_counts(&even, &[1, 0]));
    }

    #[test]
    fn sigma0_examples() {
        let matrix = CoxeterMatrix::triangle(f(3), f(2), f(4)).unwrap();
        let mut alg = DeformedAlgebra::symbolic(matrix.clone()).unwrap();
        // σ₀(a_{0i}) = a_{i0}
        for i in 1..3u8 {
            let a = alg.a(0, i).unwrap();
            assert_eq!(alg.sigma0(0, &a).unwrap(), alg.a(i, 0).unwrap());
        }
        // σ₀(t_ijk · 1) = t_jik · 1
        let c = alg.scalar(t(1, 2, 4, 1));
        assert_eq!(
            alg.sigma0(0, &c).unwrap(),
            alg.scalar(LaurentPoly::param(2, 1, 4, 1))
        );
        // σ₀² = id on generators
        for (i, j) in [(0u8, 1u8), (1, 2), (2, 1), (2, 0)] {
            let a = alg.a(i, j).unwrap();
            let once = alg.sigma0(0, &a).unwrap();
            assert_eq!(alg.sigma0(0, &once).unwrap(), a);
        }
        let odd = alg.basis(Word::from([1]));
        assert_eq!(alg.sigma0(0, &odd), Err(Error::OddElement));
    }

    #[test]
    fn iso_check_small() {
        for matrix in [
            CoxeterMatrix::dihedral(f(2)).unwrap(),
            CoxeterMatrix::dihedral(f(3)).unwrap(),
            CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap(),
            CoxeterMatrix::triangle(f(2), f(3), Order::Infinite).unwrap(),
        ] {
            let report = iso_check(&matrix).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn structure_constant_identity_row() {
        let matrix = CoxeterMatrix::dihedral(f(3)).unwrap();
        let mut alg = DeformedAlgebra::symbolic(matrix).unwrap();
        let sc = alg.structure_constants(3).unwrap();
        assert_eq!(sc.entries.len(), 36);
        for (x, y, p) in &sc.entries {
            if x.is_empty() {
                assert_eq!(p, &alg.basis(y.clone()));
            }
            if y.is_empty() {
                assert_eq!(p, &alg.basis(x.clone()));
            }
        }
        assert_eq!(sc.support().len(), 6);
    }

    #[test]
    fn generic_point_matches_symbolic_evaluation() {
        let matrix = CoxeterMatrix::triangle(f(3), f(2), f(3)).unwrap();
        let pt = GenericPoint::seeded(&matrix, 3);
        let mut sym = DeformedAlgebra::symbolic(matrix.clone()).unwrap();
        let mut num =
            DeformedAlgebra::new(matrix, pt.clone(), Strategy::REFERENCE, Budget::default())
                .unwrap();
        for w in [&[2u8, 1, 0, 2, 1][..], &[1, 2, 1, 0]] {
            let s = specialize_element(&pt, &sym.normal_form(w).unwrap()).unwrap();
            assert_eq!(s, num.normal_form(w).unwrap());
        }
        let _ = BigRational::from_integer(0.into());
    }
}
