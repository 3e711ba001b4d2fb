//! Exact linear algebra over `Q` and `Q(ζ_N)`: dense matrices for module
//! data, and sparse Gaussian elimination for the first-order deformation
//! systems, with a right-hand side that depends linearly on parameters.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{CyclotomicField, CyclotomicValue};
use crate::{Error, Result};

pub trait Field: Clone + Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(n.into()))
    }
}

/// `Q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        Ok(a.recip())
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicValue;

    fn zero(&self) -> CyclotomicValue {
        CyclotomicField::zero(self)
    }
    fn one(&self) -> CyclotomicValue {
        CyclotomicField::one(self)
    }
    fn is_zero(&self, a: &CyclotomicValue) -> bool {
        CyclotomicField::is_zero(self, a)
    }
    fn add(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicField::add(self, a, b)
    }
    fn sub(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicField::sub(self, a, b)
    }
    fn mul(&self, a: &CyclotomicValue, b: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicField::mul(self, a, b)
    }
    fn neg(&self, a: &CyclotomicValue) -> CyclotomicValue {
        CyclotomicField::neg(self, a)
    }
    fn inv(&self, a: &CyclotomicValue) -> Result<CyclotomicValue> {
        CyclotomicField::inv(self, a)
    }
    fn from_rational(&self, q: &BigRational) -> CyclotomicValue {
        CyclotomicField::from_rational(self, q.clone())
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![v; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(f, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(k, c);
                if !f.is_zero(y) {
                    let v = f.add(out.get(r, c), &f.mul(x, y));
                    out.set(r, c, v);
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{}x{} plus {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
    })
}

pub fn mat_scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| f.mul(c, x)).collect(),
    }
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// Sparse vector keyed by index.
pub type SparseVec<E> = BTreeMap<usize, E>;

fn axpy<F: Field>(f: &F, y: &mut SparseVec<F::Elem>, c: &F::Elem, x: &SparseVec<F::Elem>) {
    for (k, v) in x {
        let d = f.mul(c, v);
        match y.get_mut(k) {
            Some(w) => {
                let s = f.add(w, &d);
                if f.is_zero(&s) {
                    y.remove(k);
                } else {
                    *w = s;
                }
            }
            None => {
                if !f.is_zero(&d) {
                    y.insert(*k, d);
                }
            }
        }
    }
}

fn scale_sparse<F: Field>(f: &F, c: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    x.iter().map(|(k, v)| (*k, f.mul(c, v))).collect()
}

/// One equation `Σ coeffs[c] x_c = Σ rhs[p] τ_p`.
#[derive(Debug, Clone)]
pub struct Equation<E> {
    pub coeffs: SparseVec<E>,
    pub rhs: SparseVec<E>,
}

#[derive(Debug, Clone)]
struct Row<E> {
    coeffs: SparseVec<E>,
    rhs: SparseVec<E>,
    combo: SparseVec<E>,
}

/// A left-kernel vector `y` (`yᵀA = 0`) and the functional `yᵀb(τ)` it
/// forces to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<E> {
    pub functional: SparseVec<E>,
    /// Row combination, present when tracking was requested.
    pub combination: Option<SparseVec<E>>,
}

/// Echelon form of `A x = b(τ)` with `b` linear in parameters.
#[derive(Debug, Clone)]
pub struct ParametricSystem<F: Field> {
    field: F,
    unknowns: usize,
    params: usize,
    track: bool,
    rows_added: usize,
    pivots: BTreeMap<usize, Row<F::Elem>>,
    residuals: Vec<Residual<F::Elem>>,
}

impl<F: Field> ParametricSystem<F> {
    pub fn new(field: F, unknowns: usize, params: usize, track: bool) -> Self {
        ParametricSystem {
            field,
            unknowns,
            params,
            track,
            rows_added: 0,
            pivots: BTreeMap::new(),
            residuals: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn equations(&self) -> usize {
        self.rows_added
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Residual functionals, one per dependent equation.
    pub fn residuals(&self) -> &[Residual<F::Elem>] {
        &self.residuals
    }

    /// Reduce a new equation against the current pivots.
    pub fn push(&mut self, eq: Equation<F::Elem>) -> Result<()> {
        let f = self.field.clone();
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(self.rows_added, f.one());
        }
        self.rows_added += 1;
        let mut row = Row {
            coeffs: eq.coeffs,
            rhs: eq.rhs,
            combo,
        };
        row.coeffs.retain(|_, v| !f.is_zero(v));
        let mut from = 0usize;
        loop {
            let next = row
                .coeffs
                .range(from..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, v)| (*k, v.clone()));
            let Some((k, c)) = next else { break };
            let pivot = &self.pivots[&k];
            let minus = f.neg(&c);
            axpy(&f, &mut row.coeffs, &minus, &pivot.coeffs);
            axpy(&f, &mut row.rhs, &minus, &pivot.rhs);
            if self.track {
                axpy(&f, &mut row.combo, &minus, &pivot.combo);
            }
            from = k + 1;
        }
        match row.coeffs.iter().next().map(|(k, v)| (*k, v.clone())) {
            None => {
                if !row.rhs.is_empty() || self.track {
                    self.residuals.push(Residual {
                        functional: row.rhs,
                        combination: self.track.then_some(row.combo),
                    });
                }
            }
            Some((k, lead)) => {
                let inv = f.inv(&lead)?;
                let row = Row {
                    coeffs: scale_sparse(&f, &inv, &row.coeffs),
                    rhs: scale_sparse(&f, &inv, &row.rhs),
                    combo: scale_sparse(&f, &inv, &row.combo),
                };
                self.pivots.insert(k, row);
            }
        }
        Ok(())
    }

    /// Whether every residual functional vanishes at `tau`.
    pub fn feasible_at(&self, tau: &[F::Elem]) -> bool {
        self.residuals
            .iter()
            .all(|r| self.field.is_zero(&eval_functional(&self.field, &r.functional, tau)))
    }

    /// A solution at `tau` (free unknowns set to zero), if one exists.
    pub fn solve_at(&self, tau: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.feasible_at(tau) {
            return None;
        }
        let f = &self.field;
        let mut x = alloc::vec![f.zero(); self.unknowns];
        for (&k, row) in self.pivots.iter().rev() {
            let mut v = eval_functional(f, &row.rhs, tau);
            for (c, a) in row.coeffs.range(k + 1..) {
                if !f.is_zero(&x[*c]) {
                    v = f.sub(&v, &f.mul(a, &x[*c]));
                }
            }
            x[k] = v;
        }
        Some(x)
    }
}

pub fn eval_functional<F: Field>(f: &F, l: &SparseVec<F::Elem>, tau: &[F::Elem]) -> F::Elem {
    l.iter()
        .fold(f.zero(), |acc, (p, c)| f.add(&acc, &f.mul(c, &tau[*p])))
}

/// Row-reduce a list of sparse vectors and decide whether `target` lies in their span. Returns the coefficients
/// expressing `target` when it does.
pub fn express_in_span<F: Field>(
    f: &F,
    generators: &[SparseVec<F::Elem>],
    target: &SparseVec<F::Elem>,
) -> Result<Option<Vec<F::Elem>>> {
    // eliminate on the generators, tracking combinations
    let mut pivots: BTreeMap<usize, (SparseVec<F::Elem>, SparseVec<F::Elem>)> = BTreeMap::new();
    for (g, v) in generators.iter().enumerate() {
        let mut row = v.clone();
        row.retain(|_, x| !f.is_zero(x));
        let mut combo: SparseVec<F::Elem> = SparseVec::new();
        combo.insert(g, f.one());
        let mut from = 0usize;
        loop {
            let next = row
                .range(from..)
                .find(|(k, _)| pivots.contains_key(k))
                .map(|(k, v)| (*k, v.clone()));
            let Some((k, c)) = next else { break };
            let (pr, pc) = &pivots[&k];
            let minus = f.neg(&c);
            axpy(f, &mut row, &minus, pr);
            axpy(f, &mut combo, &minus, pc);
            from = k + 1;
        }
        if let Some((k, lead)) = row.iter().next().map(|(k, v)| (*k, v.clone())) {
            let inv = f.inv(&lead)?;
            pivots.insert(k, (scale_sparse(f, &inv, &row), scale_sparse(f, &inv, &combo)));
        }
    }
    let mut row = target.clone();
    row.retain(|_, x| !f.is_zero(x));
    let mut combo = SparseVec::new();
    let mut from = 0usize;
    loop {
        let next = row
            .range(from..)
            .find(|(k, _)| pivots.contains_key(k))
            .map(|(k, v)| (*k, v.clone()));
        let Some((k, c)) = next else { break };
        let (pr, pc) = &pivots[&k];
        let minus = f.neg(&c);
        axpy(f, &mut row, &minus, pr);
        axpy(f, &mut combo, &c, pc);
        from = k + 1;
    }
    if !row.is_empty() {
        return Ok(None);
    }
    let mut out = alloc::vec![f.zero(); generators.len()];
    for (g, c) in combo {
        out[g] = c;
    }
    Ok(Some(out))
}

/// Dimension of the span of some sparse vectors.
pub fn span_rank<F: Field>(f: &F, vectors: &[SparseVec<F::Elem>]) -> Result<usize> {
    let mut sys = ParametricSystem::new(f.clone(), 0, 0, false);
    for v in vectors {
        sys.push(Equation {
            coeffs: v.clone(),
            rhs: SparseVec::new(),
        })?;
    }
    Ok(sys.rank())
}
