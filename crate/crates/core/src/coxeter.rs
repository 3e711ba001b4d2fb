//! Coxeter matrices, words and Tits' solution of the word problem.
//!
//! Words are sequences of generator indices. Two reduced words represent the
//! same element iff they are connected by braid moves, and a word is reduced
//! iff no word in its braid orbit contains a square. Everything below is a
//! direct search over braid orbits.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use num_rational::Ratio;

use crate::{Budget, Error, Result};

/// Largest supported rank; descent sets are stored as `u64` bitmasks.
pub const MAX_RANK: usize = 64;

/// An entry `m_ij` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    /// `1/m`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> Ratio<u64> {
        match self {
            Order::Finite(m) => Ratio::new(1, u64::from(m)),
            Order::Infinite => Ratio::new(0, 1),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A word in the generators `s_0, ..., s_{r-1}`.
///
/// Ordered ShortLex (length first, then lexicographic), so ordered maps keyed
/// by words iterate in ShortLex order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(&self, other: &[u8]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of each generator, indexed `0..rank`.
    pub fn letter_counts(&self, rank: usize) -> Vec<usize> {
        let mut counts = alloc::vec![0; rank];
        for &l in &self.0 {
            counts[usize::from(l)] += 1;
        }
        counts
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(v: [u8; N]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

pub fn shortlex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A Coxeter matrix over `I = {0, ..., rank-1}`, stored on unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    // upper triangle, row-major: (0,1), (0,2), ..., (1,2), ...
    orders: Vec<Order>,
}

fn pair_slot(rank: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < rank);
    i * rank - i * (i + 1) / 2 + (j - i - 1)
}

impl CoxeterMatrix {
    /// Build from an explicit list of `(i, j, m_ij)`. Every unordered pair
    /// must appear exactly once.
    pub fn new<I>(rank: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Order)>,
    {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        let npairs = rank * (rank - 1) / 2;
        let mut slots: Vec<Option<Order>> = alloc::vec![None; npairs];
        for (a, b, m) in entries {
            if a == b || a >= rank || b >= rank {
                return Err(Error::InvalidMatrix(format!("bad pair ({a},{b})")));
            }
            if let Order::Finite(v) = m {
                if v < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "order m_{a}{b} = {v} is below 2"
                    )));
                }
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            let slot = &mut slots[pair_slot(rank, i, j)];
            if slot.is_some() {
                return Err(Error::InvalidMatrix(format!("pair ({i},{j}) listed twice")));
            }
            *slot = Some(m);
        }
        let mut orders = Vec::with_capacity(npairs);
        for i in 0..rank {
            for j in i + 1..rank {
                match slots[pair_slot(rank, i, j)] {
                    Some(m) => orders.push(m),
                    None => {
                        return Err(Error::InvalidMatrix(format!("pair ({i},{j}) missing")))
                    }
                }
            }
        }
        Ok(CoxeterMatrix { rank, orders })
    }

    /// Build from a function on pairs `i < j`.
    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize) -> Order) -> Result<Self> {
        let mut entries = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                entries.push((i, j, f(i, j)));
            }
        }
        Self::new(rank, entries)
    }

    pub fn rank_one() -> Self {
        CoxeterMatrix {
            rank: 1,
            orders: Vec::new(),
        }
    }

    pub fn dihedral(m: Order) -> Result<Self> {
        Self::new(2, [(0, 1, m)])
    }

    /// Rank 3 with `m_01`, `m_02`, `m_12`.
    pub fn triangle(m01: Order, m02: Order, m12: Order) -> Result<Self> {
        Self::new(3, [(0, 1, m01), (0, 2, m02), (1, 2, m12)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `m_ij`; panics on `i == j` or out-of-range indices.
    pub fn order(&self, i: usize, j: usize) -> Order {
        assert!(i != j, "diagonal entries are not part of a Coxeter matrix");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(b < self.rank, "index out of range");
        self.orders[pair_slot(self.rank, a, b)]
    }

    /// All pairs `i < j` with their orders.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Order)> + '_ {
        (0..self.rank).flat_map(move |i| {
            (i + 1..self.rank).map(move |j| (i, j, self.orders[pair_slot(self.rank, i, j)]))
        })
    }

    pub fn finite_pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.pairs().filter_map(|(i, j, m)| m.finite().map(|m| (i, j, m)))
    }

    pub fn check_word(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&l| usize::from(l) >= self.rank) {
            Some(&l) => Err(Error::InvalidWord {
                letter: usize::from(l),
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// Restriction to `subset`; `translation[new] = old`.
    pub fn parabolic(&self, subset: &[usize]) -> Result<Parabolic> {
        if subset.is_empty() {
            return Err(Error::InvalidInput("parabolic subset must be nonempty".into()));
        }
        let mut translation = subset.to_vec();
        translation.sort_unstable();
        translation.dedup();
        if translation.len() != subset.len() {
            return Err(Error::InvalidInput("parabolic subset has repeated indices".into()));
        }
        if let Some(&bad) = translation.iter().find(|&&i| i >= self.rank) {
            return Err(Error::InvalidInput(format!("index {bad} out of range")));
        }
        let matrix = CoxeterMatrix::from_fn(translation.len(), |a, b| {
            self.order(translation[a], translation[b])
        })?;
        Ok(Parabolic {
            matrix,
            translation,
        })
    }

    /// Positions where a braid move applies: `(start, m)` for every
    /// alternating `{a,b}`-segment of length `m_ab` starting at `start`.
    pub fn braid_moves(&self, w: &[u8]) -> Vec<(usize, usize)> {
        let mut moves = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[p], w[p + 1]);
            if a == b {
                continue;
            }
            let Order::Finite(m) = self.order(usize::from(a), usize::from(b)) else {
                continue;
            };
            let m = m as usize;
            if p + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|q| w[p + q] == if q % 2 == 0 { a } else { b });
            if alternating {
                moves.push((p, m));
            }
        }
        moves
    }

    /// Braid-move orbit of `w`, sorted ShortLex.
    pub fn braid_orbit(&self, w: &[u8], budget: &Budget) -> Result<Vec<Word>> {
        self.check_word(w)?;
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            for (p, m) in self.braid_moves(&cur) {
                let next = apply_braid_move(&cur, p, m);
                if !seen.contains(&next) {
                    if seen.len() >= budget.orbit_nodes {
                        return Err(Error::BudgetExceeded {
                            what: "braid orbit nodes",
                            limit: budget.orbit_nodes,
                        });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().map(Word).collect())
    }

    /// Tits: a word is reduced iff nothing in its braid orbit has a square.
    pub fn is_reduced(&self, w: &[u8]) -> Result<bool> {
        self.is_reduced_with(w, &Budget::default())
    }

    pub fn is_reduced_with(&self, w: &[u8], budget: &Budget) -> Result<bool> {
        self.check_word(w)?;
        if has_square(w).is_some() {
            return Ok(false);
        }
        Ok(self
            .braid_orbit(w, budget)?
            .iter()
            .all(|u| has_square(u).is_none()))
    }

    /// ShortLex-minimal reduced word for the element represented by `w`.
    pub fn canonical_word(&self, w: &[u8]) -> Result<Word> {
        self.canonical_word_with(w, &Budget::default())
    }

    pub fn canonical_word_with(&self, w: &[u8], budget: &Budget) -> Result<Word> {
        self.check_word(w)?;
        let mut cur = w.to_vec();
        loop {
            if let Some(p) = has_square(&cur) {
                cur.drain(p..p + 2);
                continue;
            }
            let orbit = self.braid_orbit(&cur, budget)?;
            match orbit.iter().find_map(|u| has_square(u).map(|p| (u, p))) {
                Some((u, p)) => {
                    let mut v = u.0.clone();
                    v.drain(p..p + 2);
                    cur = v;
                }
                None => return Ok(orbit.into_iter().next().expect("orbit contains w")),
            }
        }
    }
}

/// A parabolic submatrix with its index translation (`translation[new] = old`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parabolic {
    pub matrix: CoxeterMatrix,
    pub translation: Vec<usize>,
}

/// Replace the alternating segment `w[p..p+m]` by the opposite one.
pub fn apply_braid_move(w: &[u8], p: usize, m: usize) -> Vec<u8> {
    let (a, b) = (w[p], w[p + 1]);
    let mut out = w.to_vec();
    for q in 0..m {
        out[p + q] = if q % 2 == 0 { b } else { a };
    }
    out
}

/// Position of the first adjacent pair of equal letters.
pub fn has_square(w: &[u8]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

/// `ξ(w) = (-1)^{len w}`.
pub fn sign_character(w: &[u8]) -> i8 {
    if w.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Alternating word `a, b, a, ...` of length `len`.
pub fn alternating(a: u8, b: u8, len: usize) -> Vec<u8> {
    (0..len).map(|q| if q % 2 == 0 { a } else { b }).collect()
}

/// Whether the rank-3 Coxeter group with these orders is finite:
/// `1/m12 + 1/m13 + 1/m23 > 1`.
pub fn rank3_is_finite(m12: Order, m13: Order, m23: Order) -> bool {
    m12.reciprocal() + m13.reciprocal() + m23.reciprocal() > Ratio::new(1, 1)
}
