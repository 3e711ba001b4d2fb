//! The quiver with relations `B` of constructible sheaves on `Y`, modules over
//! it built from representations of `W₊`, and first-order deformations to
//! `B(τ)`.
//!
//! Vertices: `N`, `S`, one per generator `i`, one per ordered pair `(i, j)`
//! with `m_ij < ∞`. Arrows `f_Ni: N → i`, `f_Si: S → i`, `h_ij: i → (ij)`,
//! `g_ij: (ij) → (ji)`. Relations for `i < j`, `m_ij < ∞`:
//!
//! * `g_ij h_ij f_Ni = h_ji f_Nj`   (both `N → (ji)`)
//! * `g_ji h_ji f_Sj = h_ij f_Si`   (both `S → (ij)`)
//! * `∏_k (g - t_ijk) = 0` for `g = g_ij g_ji`, which is `g^m = 1` in `B`.
//!
//! Matrices act on column vectors, so a path `A_1 A_2 ⋯ A_n` applies `A_n`
//! first.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use crate::coxeter::{CoxeterMatrix, Word};
use crate::cyclotomic::{CyclotomicField, CyclotomicValue};
use crate::group::{CoxeterGroup, Side};
use crate::laurent::ParamIndex;
use crate::linalg::{
    express_in_span, identity, is_zero_matrix, mat_add, mat_mul, mat_scale, span_rank, Equation,
    Matrix, ParametricSystem, SparseVec,
};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuiverVertex {
    N,
    S,
    Edge(u8),
    Corner(u8, u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    FN(u8),
    FS(u8),
    H(u8, u8),
    G(u8, u8),
}

impl Arrow {
    pub fn source(self) -> QuiverVertex {
        match self {
            Arrow::FN(_) => QuiverVertex::N,
            Arrow::FS(_) => QuiverVertex::S,
            Arrow::H(i, _) => QuiverVertex::Edge(i),
            Arrow::G(i, j) => QuiverVertex::Corner(i, j),
        }
    }

    pub fn target(self) -> QuiverVertex {
        match self {
            Arrow::FN(i) | Arrow::FS(i) => QuiverVertex::Edge(i),
            Arrow::H(i, j) => QuiverVertex::Corner(i, j),
            Arrow::G(i, j) => QuiverVertex::Corner(j, i),
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::FN(i) => write!(f, "f_N{i}"),
            Arrow::FS(i) => write!(f, "f_S{i}"),
            Arrow::H(i, j) => write!(f, "h_{i}{j}"),
            Arrow::G(i, j) => write!(f, "g_{i}{j}"),
        }
    }
}

impl fmt::Display for QuiverVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverVertex::N => f.write_str("N"),
            QuiverVertex::S => f.write_str("S"),
            QuiverVertex::Edge(i) => write!(f, "{i}"),
            QuiverVertex::Corner(i, j) => write!(f, "({i}{j})"),
        }
    }
}

/// Relations, indexed by the pair `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    North(u8, u8),
    South(u8, u8),
    MinimalPolynomial(u8, u8, u32),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::North(i, j) => write!(f, "g_{i}{j} h_{i}{j} f_N{i} = h_{j}{i} f_N{j}"),
            Relation::South(i, j) => write!(f, "g_{j}{i} h_{j}{i} f_S{j} = h_{i}{j} f_S{i}"),
            Relation::MinimalPolynomial(i, j, m) => write!(f, "(g_{i}{j} g_{j}{i})^{m} = 1"),
        }
    }
}

/// A signed sum of paths; each path is listed outermost arrow first.
type PathSum = Vec<(i64, Vec<Arrow>)>;

impl Relation {
    fn target_and_source(self) -> (QuiverVertex, QuiverVertex) {
        match self {
            Relation::North(i, j) => (QuiverVertex::Corner(j, i), QuiverVertex::N),
            Relation::South(i, j) => (QuiverVertex::Corner(i, j), QuiverVertex::S),
            Relation::MinimalPolynomial(i, j, _) => (QuiverVertex::Corner(j, i), QuiverVertex::Corner(j, i)),
        }
    }

    /// The two sides as paths (`lhs - rhs`); `None` for the polynomial.
    fn paths(self) -> Option<PathSum> {
        match self {
            Relation::North(i, j) => Some(vec![
                (1, vec![Arrow::G(i, j), Arrow::H(i, j), Arrow::FN(i)]),
                (-1, vec![Arrow::H(j, i), Arrow::FN(j)]),
            ]),
            Relation::South(i, j) => Some(vec![
                (1, vec![Arrow::G(j, i), Arrow::H(j, i), Arrow::FS(j)]),
                (-1, vec![Arrow::H(i, j), Arrow::FS(i)]),
            ]),
            Relation::MinimalPolynomial(..) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub matrix: CoxeterMatrix,
    pub vertices: Vec<QuiverVertex>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

pub fn build_quiver(matrix: &CoxeterMatrix) -> Quiver {
    let r = matrix.rank() as u8;
    let mut vertices = vec![QuiverVertex::N, QuiverVertex::S];
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for i in 0..r {
        vertices.push(QuiverVertex::Edge(i));
        arrows.push(Arrow::FN(i));
        arrows.push(Arrow::FS(i));
    }
    for (i, j, m) in matrix.finite_pairs() {
        let (i, j) = (i as u8, j as u8);
        vertices.push(QuiverVertex::Corner(i, j));
        vertices.push(QuiverVertex::Corner(j, i));
        arrows.extend([Arrow::H(i, j), Arrow::H(j, i), Arrow::G(i, j), Arrow::G(j, i)]);
        relations.extend([
            Relation::North(i, j),
            Relation::South(i, j),
            Relation::MinimalPolynomial(i, j, m),
        ]);
    }
    vertices.sort();
    arrows.sort();
    Quiver {
        matrix: matrix.clone(),
        vertices,
        arrows,
        relations,
    }
}

/// A representation of `W₊` by matrices `ρ(a_ij)` for all ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub a: BTreeMap<(u8, u8), Matrix<CyclotomicValue>>,
}

/// `Q(ζ_N)` with `N` the lcm of the finite orders.
pub fn field_for(matrix: &CoxeterMatrix) -> CyclotomicField {
    CyclotomicField::new(matrix.finite_pairs().fold(1u32, |acc, (_, _, m)| acc.lcm(&m)))
}

impl Representation {
    /// `W₊` acting on itself by left multiplication (finite `W` only).
    pub fn regular(matrix: &CoxeterMatrix, budget: Budget) -> Result<Self> {
        let field = field_for(matrix);
        let mut group = CoxeterGroup::with_budget(matrix.clone(), budget);
        if matrix.pairs().any(|(_, _, m)| !m.is_finite()) {
            return Err(Error::InvalidInput("regular module needs a finite group".into()));
        }
        let even: Vec<Word> = group
            .enumerate_all()?
            .into_iter()
            .step_by(2)
            .flatten()
            .collect();
        let index: BTreeMap<Word, usize> = even.iter().enumerate().map(|(n, w)| (w.clone(), n)).collect();
        let dim = even.len();
        let r = matrix.rank() as u8;
        let mut a = BTreeMap::new();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let mut m = crate::linalg::zeros(&field, dim, dim);
                for (n, x) in even.iter().enumerate() {
                    let y = group.mul_gen(x, j, Side::Left)?;
                    let y = group.mul_gen(&y, i, Side::Left)?;
                    m.set(index[&y], n, field.one());
                }
                a.insert((i, j), m);
            }
        }
        Ok(Representation { dim, a })
    }

    /// Every `a_ij ↦ 1`.
    pub fn trivial(matrix: &CoxeterMatrix) -> Self {
        let field = field_for(matrix);
        let r = matrix.rank() as u8;
        let mut a = BTreeMap::new();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    a.insert((i, j), identity(&field, 1));
                }
            }
        }
        Representation { dim: 1, a }
    }
}

/// Dimensions and exact matrices for every arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverModule {
    pub quiver: Quiver,
    pub field: CyclotomicField,
    pub dims: BTreeMap<QuiverVertex, usize>,
    pub maps: BTreeMap<Arrow, Matrix<CyclotomicValue>>,
}

/// All spaces equal to `U`; `f_Ni = h = 1`, `f_Si = ρ(a_i0)`, and for `i < j`
/// `g_ij = 1`, `g_ji = ρ(a_ij)`.
pub fn module_from_representation(matrix: &CoxeterMatrix, rep: &Representation) -> Result<QuiverModule> {
    let quiver = build_quiver(matrix);
    let field = field_for(matrix);
    let n = rep.dim;
    let id = identity(&field, n);
    let get = |i: u8, j: u8| -> Result<Matrix<CyclotomicValue>> {
        let m = rep
            .a
            .get(&(i, j))
            .ok_or_else(|| Error::DimensionMismatch(format!("representation lacks a_{i}{j}")))?;
        if m.rows != n || m.cols != n {
            return Err(Error::DimensionMismatch(format!("a_{i}{j} is not {n}x{n}")));
        }
        Ok(m.clone())
    };
    let mut maps = BTreeMap::new();
    for &arrow in &quiver.arrows {
        let m = match arrow {
            Arrow::FN(_) | Arrow::H(..) => id.clone(),
            Arrow::FS(0) => id.clone(),
            Arrow::FS(i) => get(i, 0)?,
            Arrow::G(i, j) if i < j => id.clone(),
            Arrow::G(i, j) => get(j, i)?,
        };
        maps.insert(arrow, m);
    }
    let dims = quiver.vertices.iter().map(|v| (*v, n)).collect();
    Ok(QuiverModule {
        quiver,
        field,
        dims,
        maps,
    })
}

pub fn regular_module(matrix: &CoxeterMatrix, budget: Budget) -> Result<QuiverModule> {
    module_from_representation(matrix, &Representation::regular(matrix, budget)?)
}

pub fn trivial_module(matrix: &CoxeterMatrix) -> Result<QuiverModule> {
    module_from_representation(matrix, &Representation::trivial(matrix))
}

impl QuiverModule {
    fn check_shapes(&self) -> Result<()> {
        for (&arrow, m) in &self.maps {
            let (s, t) = (self.dims[&arrow.source()], self.dims[&arrow.target()]);
            if m.rows != t || m.cols != s {
                return Err(Error::DimensionMismatch(format!(
                    "{arrow} is {}x{}, expected {t}x{s}",
                    m.rows, m.cols
                )));
            }
        }
        Ok(())
    }

    fn path_matrix(&self, path: &[Arrow]) -> Result<Matrix<CyclotomicValue>> {
        let f = &self.field;
        let last = path.last().expect("nonempty path");
        let mut acc = identity(f, self.dims[&last.source()]);
        for a in path.iter().rev() {
            acc = mat_mul(f, &self.maps[a], &acc)?;
        }
        Ok(acc)
    }

    /// `g_ij g_ji` on `V_ji`.
    fn monodromy(&self, i: u8, j: u8) -> Result<Matrix<CyclotomicValue>> {
        self.path_matrix(&[Arrow::G(i, j), Arrow::G(j, i)])
    }

    /// Left side minus right side of a relation of `B`.
    pub fn relation_defect(&self, rel: Relation) -> Result<Matrix<CyclotomicValue>> {
        let f = &self.field;
        match rel.paths() {
            Some(paths) => {
                let (t, s) = rel.target_and_source();
                let mut acc = crate::linalg::zeros(f, self.dims[&t], self.dims[&s]);
                for (sign, p) in paths {
                    let m = self.path_matrix(&p)?;
                    acc = mat_add(f, &acc, &mat_scale(f, &f.from_int(sign), &m))?;
                }
                Ok(acc)
            }
            None => {
                let Relation::MinimalPolynomial(i, j, m) = rel else { unreachable!() };
                let g = self.monodromy(i, j)?;
                let mut p = identity(f, g.rows);
                for _ in 0..m {
                    p = mat_mul(f, &g, &p)?;
                }
                mat_add(f, &p, &mat_scale(f, &f.from_int(-1), &identity(f, g.rows)))
            }
        }
    }
}

/// Relations of `B` that fail on the module.
pub fn verify_module(module: &QuiverModule) -> Result<Vec<Relation>> {
    module.check_shapes()?;
    let mut bad = Vec::new();
    for &rel in &module.quiver.relations {
        if !is_zero_matrix(&module.field, &module.relation_defect(rel)?) {
            bad.push(rel);
        }
    }
    Ok(bad)
}

/// Unknown layout: entries of every arrow's correction, arrow by arrow.
#[derive(Debug, Clone)]
struct Layout {
    offsets: BTreeMap<Arrow, (usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(module: &QuiverModule) -> Self {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (&a, m) in &module.maps {
            offsets.insert(a, (total, m.rows, m.cols));
            total += m.rows * m.cols;
        }
        Layout { offsets, total }
    }
}

/// The linear system for first-order corrections `X_a` to every arrow
/// such that all relations of `B(τ)` hold modulo `ε²`, with
/// `t_ijk = ζ^k (1 + ε τ_ijk)`. The right-hand side is linear in `τ`.
#[derive(Debug, Clone)]
pub struct DeformationSystem {
    pub params: Vec<ParamIndex>,
    field: CyclotomicField,
    layout: Layout,
    equations: Vec<Equation<CyclotomicValue>>,
    system: ParametricSystem<CyclotomicField>,
}

/// A vector `y` with `yᵀA = 0` and `yᵀb(τ) = functional · τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub combination: SparseVec<CyclotomicValue>,
    pub functional: BTreeMap<ParamIndex, CyclotomicValue>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeformationOutcome {
    Feasible {
        correction: BTreeMap<Arrow, Matrix<CyclotomicValue>>,
    },
    Infeasible {
        certificate: Certificate,
        /// `functional · τ`, nonzero.
        value: CyclotomicValue,
    },
}

/// `Σ_{a,b} P[r,a] X[a,b] Q[b,c]` added to the rows of an equation block.
fn add_sandwich(
    f: &CyclotomicField,
    rows: &mut [SparseVec<CyclotomicValue>],
    cols: usize,
    coeff: &CyclotomicValue,
    p: &Matrix<CyclotomicValue>,
    offset: (usize, usize, usize),
    q: &Matrix<CyclotomicValue>,
) {
    let (base, xr, xc) = offset;
    debug_assert_eq!((p.cols, q.rows), (xr, xc));
    for r in 0..p.rows {
        for a in 0..xr {
            let pa = p.get(r, a);
            if f.is_zero(pa) {
                continue;
            }
            let pa = f.mul(coeff, pa);
            for b in 0..xc {
                for c in 0..cols {
                    let qb = q.get(b, c);
                    if f.is_zero(qb) {
                        continue;
                    }
                    let v = f.mul(&pa, qb);
                    let slot = rows[r * cols + c].entry(base + a * xc + b).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &v);
                }
            }
        }
    }
}

impl DeformationSystem {
    pub fn new(module: &QuiverModule, track: bool) -> Result<Self> {
        module.check_shapes()?;
        let f = module.field.clone();
        let layout = Layout::new(module);
        let params = ParamIndex::all(&module.quiver.matrix);
        let pidx: BTreeMap<ParamIndex, usize> = params.iter().enumerate().map(|(n, p)| (*p, n)).collect();
        let n_conductor = f.conductor();
        let mut equations = Vec::new();
        for &rel in &module.quiver.relations {
            let (t, s) = rel.target_and_source();
            let (rows_n, cols_n) = (module.dims[&t], module.dims[&s]);
            let mut rows = vec![SparseVec::new(); rows_n * cols_n];
            let mut rhs = vec![SparseVec::<CyclotomicValue>::new(); rows_n * cols_n];
            match rel.paths() {
                Some(paths) => {
                    for (sign, path) in paths {
                        let coeff = f.from_int(sign);
                        for k in 0..path.len() {
                            let left = if k == 0 {
                                identity(&f, module.dims[&path[0].target()])
                            } else {
                                module.path_matrix(&path[..k])?
                            };
                            let right = if k + 1 == path.len() {
                                identity(&f, module.dims[&path[k].source()])
                            } else {
                                module.path_matrix(&path[k + 1..])?
                            };
                            add_sandwich(&f, &mut rows, cols_n, &coeff, &left, layout.offsets[&path[k]], &right);
                        }
                    }
                }
                None => {
                    let Relation::MinimalPolynomial(i, j, m) = rel else { unreachable!() };
                    let g0 = module.monodromy(i, j)?;
                    let dim = g0.rows;
                    let step = i64::from(n_conductor / m);
                    let factor = |l: u32| -> Result<Matrix<CyclotomicValue>> {
                        let z = f.neg(&f.zeta_pow(step * i64::from(l)));
                        mat_add(&f, &g0, &mat_scale(&f, &z, &identity(&f, dim)))
                    };
                    let factors = (1..=m).map(factor).collect::<Result<Vec<_>>>()?;
                    let prod = |range: &mut dyn Iterator<Item = usize>| -> Result<Matrix<CyclotomicValue>> {
                        let mut acc = identity(&f, dim);
                        for l in range {
                            acc = mat_mul(&f, &acc, &factors[l])?;
                        }
                        Ok(acc)
                    };
                    let (gij, gji) = (&module.maps[&Arrow::G(i, j)], &module.maps[&Arrow::G(j, i)]);
                    let one = f.one();
                    for k in 0..m as usize {
                        let lk = prod(&mut (0..k))?;
                        let rk = prod(&mut (k + 1..m as usize))?;
                        // G' = X_gij g_ji + g_ij X_gji
                        add_sandwich(&f, &mut rows, cols_n, &one, &lk, layout.offsets[&Arrow::G(i, j)], &mat_mul(&f, gji, &rk)?);
                        add_sandwich(&f, &mut rows, cols_n, &one, &mat_mul(&f, &lk, gij)?, layout.offsets[&Arrow::G(j, i)], &rk);
                        // τ-term: ζ^k τ_k ∏_{l≠k} (G - ζ^l), moved to the right side
                        let others = prod(&mut (0..m as usize).filter(|&l| l != k))?;
                        let kk = k as u32 + 1;
                        let zk = f.zeta_pow(step * i64::from(kk));
                        let p = pidx[&ParamIndex { i, j, m, k: kk }];
                        for (n, v) in others.data.iter().enumerate() {
                            if !f.is_zero(v) {
                                rhs[n].insert(p, f.mul(&zk, v));
                            }
                        }
                    }
                }
            }
            for (coeffs, rhs) in rows.into_iter().zip(rhs) {
                let coeffs: SparseVec<_> = coeffs.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
                if coeffs.is_empty() && rhs.is_empty() {
                    continue;
                }
                equations.push(Equation { coeffs, rhs });
            }
        }
        let mut system = ParametricSystem::new(f.clone(), layout.total, params.len(), track);
        for eq in &equations {
            system.push(eq.clone())?;
        }
        Ok(DeformationSystem {
            params,
            field: f,
            layout,
            equations,
            system,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.layout.total
    }

    pub fn equations(&self) -> usize {
        self.equations.len()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    fn to_params(&self, l: &SparseVec<CyclotomicValue>) -> BTreeMap<ParamIndex, CyclotomicValue> {
        l.iter().map(|(p, v)| (self.params[*p], v.clone())).collect()
    }

    fn from_params(&self, l: &BTreeMap<ParamIndex, CyclotomicValue>) -> Result<SparseVec<CyclotomicValue>> {
        l.iter()
            .map(|(p, v)| {
                let n = self
                    .params
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::MissingAssignment(format!("{p:?}")))?;
                Ok((n, v.clone()))
            })
            .collect()
    }

    /// A basis of the functionals `τ ↦ yᵀb(τ)` over left-kernel vectors `y`:
    /// deformation is possible exactly on their common zero set.
    pub fn obstruction_space(&self) -> Result<Vec<BTreeMap<ParamIndex, CyclotomicValue>>> {
        let f = &self.field;
        let mut basis: Vec<SparseVec<CyclotomicValue>> = Vec::new();
        for r in self.system.residuals() {
            if r.functional.is_empty() {
                continue;
            }
            let mut candidate = basis.clone();
            candidate.push(r.functional.clone());
            if span_rank(f, &candidate)? > basis.len() {
                basis.push(r.functional.clone());
            }
        }
        Ok(basis.iter().map(|l| self.to_params(l)).collect())
    }

    /// A certificate whose functional is `target`, if `target` is in the
    /// obstruction space. Requires a system built with tracking.
    pub fn certificate_for(&self, target: &BTreeMap<ParamIndex, CyclotomicValue>) -> Result<Option<Certificate>> {
        let f = &self.field;
        let residuals = self.system.residuals();
        let gens: Vec<_> = residuals.iter().map(|r| r.functional.clone()).collect();
        let Some(coeffs) = express_in_span(f, &gens, &self.from_params(target)?)? else {
            return Ok(None);
        };
        let mut combination = SparseVec::new();
        for (c, r) in coeffs.iter().zip(residuals) {
            if f.is_zero(c) {
                continue;
            }
            let y = r
                .combination
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("system was built without tracking".into()))?;
            for (row, v) in y {
                let slot = combination.entry(*row).or_insert_with(|| f.zero());
                *slot = f.add(slot, &f.mul(c, v));
            }
        }
        combination.retain(|_, v| !f.is_zero(v));
        Ok(Some(Certificate {
            combination,
            functional: target.clone(),
        }))
    }

    /// Recompute `yᵀA` and `yᵀb` from the stored equations.
    pub fn check_certificate(&self, cert: &Certificate) -> Result<bool> {
        let f = &self.field;
        let mut lhs: SparseVec<CyclotomicValue> = SparseVec::new();
        let mut rhs: SparseVec<CyclotomicValue> = SparseVec::new();
        for (row, y) in &cert.combination {
            let eq = self
                .equations
                .get(*row)
                .ok_or_else(|| Error::InvalidInput("certificate row out of range".into()))?;
            for (k, v) in &eq.coeffs {
                let slot = lhs.entry(*k).or_insert_with(|| f.zero());
                *slot = f.add(slot, &f.mul(y, v));
            }
            for (k, v) in &eq.rhs {
                let slot = rhs.entry(*k).or_insert_with(|| f.zero());
                *slot = f.add(slot, &f.mul(y, v));
            }
        }
        lhs.retain(|_, v| !f.is_zero(v));
        rhs.retain(|_, v| !f.is_zero(v));
        let target = self.from_params(&cert.functional)?;
        let mut target = target;
        target.retain(|_, v| !f.is_zero(v));
        Ok(lhs.is_empty() && rhs == target)
    }

    pub fn solve(&self, tau: &BTreeMap<ParamIndex, BigRational>) -> Result<DeformationOutcome> {
        let f = &self.field;
        let tau_vec: Vec<CyclotomicValue> = self
            .params
            .iter()
            .map(|p| tau.get(p).map(|q| f.from_rational(q.clone())).unwrap_or_else(|| f.zero()))
            .collect();
        if let Some(x) = self.system.solve_at(&tau_vec) {
            let mut correction = BTreeMap::new();
            for (&a, &(base, rows, cols)) in &self.layout.offsets {
                correction.insert(
                    a,
                    Matrix {
                        rows,
                        cols,
                        data: x[base..base + rows * cols].to_vec(),
                    },
                );
            }
            return Ok(DeformationOutcome::Feasible { correction });
        }
        for r in self.system.residuals() {
            let value = crate::linalg::eval_functional(f, &r.functional, &tau_vec);
            if !f.is_zero(&value) {
                let certificate = Certificate {
                    combination: r.combination.clone().unwrap_or_default(),
                    functional: self.to_params(&r.functional),
                };
                return Ok(DeformationOutcome::Infeasible { certificate, value });
            }
        }
        unreachable!("infeasible system has a nonvanishing residual")
    }
}

/// Solve for first-order corrections at `τ`; an infeasible system comes
/// with a left-kernel certificate.
pub fn first_order_deformation(
    module: &QuiverModule,
    tau: &BTreeMap<ParamIndex, BigRational>,
) -> Result<DeformationOutcome> {
    DeformationSystem::new(module, true)?.solve(tau)
}
