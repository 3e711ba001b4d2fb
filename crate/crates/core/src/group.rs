//! Group-level computations in `W(M)` on canonical (ShortLex) words, with
//! memoized multiplication by generators.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::coxeter::{apply_braid_move, CoxeterMatrix, Word};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Descent sets of an element, as bitmasks over generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Descents {
    pub left: u64,
    pub right: u64,
}

impl Descents {
    pub fn contains(&self, side: Side, i: u8) -> bool {
        let mask = match side {
            Side::Left => self.left,
            Side::Right => self.right,
        };
        mask & (1 << i) != 0
    }
}

/// A single braid move: replace the alternating segment of length `len`
/// starting at `pos` by the opposite alternating segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidMove {
    pub pos: usize,
    pub len: usize,
}

/// `W(M)` with caches. Elements are identified with their canonical words.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    budget: Budget,
    descents: BTreeMap<Word, Descents>,
    products: BTreeMap<(Word, u8, bool), Word>,
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        Self::with_budget(matrix, Budget::default())
    }

    pub fn with_budget(matrix: CoxeterMatrix, budget: Budget) -> Self {
        CoxeterGroup {
            matrix,
            budget,
            descents: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn record_orbit(&mut self, orbit: &[Word]) -> Word {
        let mut left = 0u64;
        let mut right = 0u64;
        for u in orbit {
            if let (Some(&a), Some(&b)) = (u.first(), u.last()) {
                left |= 1 << a;
                right |= 1 << b;
            }
        }
        let canonical = orbit[0].clone();
        self.descents
            .entry(canonical.clone())
            .or_insert(Descents { left, right });
        canonical
    }

    /// Descent sets of a canonical word.
    pub fn descents(&mut self, x: &Word) -> Result<Descents> {
        if let Some(d) = self.descents.get(x) {
            return Ok(*d);
        }
        let orbit = self.matrix.braid_orbit(x, &self.budget)?;
        debug_assert_eq!(&orbit[0], x, "descents() expects a canonical word");
        self.record_orbit(&orbit);
        Ok(self.descents[x])
    }

    /// Whether `ℓ(x s_i) < ℓ(x)` (right) or `ℓ(s_i x) < ℓ(x)` (left).
    pub fn is_descent(&mut self, x: &Word, i: u8, side: Side) -> Result<bool> {
        Ok(self.descents(x)?.contains(side, i))
    }

    /// Canonical word of `x s_i` (right) or `s_i x` (left), `x` canonical.
    pub fn mul_gen(&mut self, x: &Word, i: u8, side: Side) -> Result<Word> {
        self.matrix.check_word(&[i])?;
        let key = (x.clone(), i, side == Side::Left);
        if let Some(y) = self.products.get(&key) {
            return Ok(y.clone());
        }
        let y = if self.is_descent(x, i, side)? {
            let orbit = self.matrix.braid_orbit(x, &self.budget)?;
            let shorter = orbit
                .into_iter()
                .filter_map(|u| match side {
                    Side::Right if u.last() == Some(&i) => Some(Word::from(&u[..u.len() - 1])),
                    Side::Left if u.first() == Some(&i) => Some(Word::from(&u[1..])),
                    _ => None,
                })
                .min()
                .expect("descent implies a reduced word ending in the generator");
            self.descents(&shorter)?;
            shorter
        } else {
            let longer = match side {
                Side::Right => x.concat(&[i]),
                Side::Left => {
                    let mut v = Vec::with_capacity(x.len() + 1);
                    v.push(i);
                    v.extend_from_slice(x);
                    Word::new(v)
                }
            };
            let orbit = self.matrix.braid_orbit(&longer, &self.budget)?;
            self.record_orbit(&orbit)
        };
        self.products.insert(key, y.clone());
        Ok(y)
    }

    /// Canonical word of the element represented by an arbitrary word.
    pub fn reduce(&mut self, w: &[u8]) -> Result<Word> {
        self.matrix.check_word(w)?;
        let mut x = Word::empty();
        for &l in w {
            x = self.mul_gen(&x, l, Side::Right)?;
        }
        Ok(x)
    }

    /// Canonical word of `x y` for canonical `x`, arbitrary `y`.
    pub fn mul(&mut self, x: &Word, y: &[u8]) -> Result<Word> {
        let mut z = x.clone();
        for &l in y {
            z = self.mul_gen(&z, l, Side::Right)?;
        }
        Ok(z)
    }

    pub fn inverse(&mut self, x: &Word) -> Result<Word> {
        self.reduce(&x.reversed())
    }

    /// All elements of length `≤ max_len`, grouped by length, each layer
    /// sorted ShortLex. Stops early when a layer is empty (finite group).
    pub fn enumerate(&mut self, max_len: usize) -> Result<Vec<Vec<Word>>> {
        let mut layers: Vec<Vec<Word>> = alloc::vec![alloc::vec![Word::empty()]];
        let mut total = 1usize;
        for _ in 0..max_len {
            let mut next = BTreeSet::new();
            for x in layers.last().expect("nonempty") {
                for i in 0..self.rank() as u8 {
                    if !self.is_descent(x, i, Side::Right)? {
                        next.insert(self.mul_gen(x, i, Side::Right)?);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > self.budget.elements {
                return Err(Error::BudgetExceeded {
                    what: "enumerated elements",
                    limit: self.budget.elements,
                });
            }
            layers.push(next.into_iter().collect());
        }
        Ok(layers)
    }

    /// The whole group, or a budget error if it is (or looks) infinite.
    pub fn enumerate_all(&mut self) -> Result<Vec<Vec<Word>>> {
        let cap = self.budget.elements;
        let layers = self.enumerate(cap)?;
        Ok(layers)
    }

    /// Number of elements of each length `0..=max_len` (truncated early for
    /// finite groups).
    pub fn growth_series(&mut self, max_len: usize) -> Result<Vec<usize>> {
        Ok(self.enumerate(max_len)?.iter().map(Vec::len).collect())
    }

    /// Shortest braid-move path from `start` to the first word satisfying
    /// `target`. Neighbours are explored by increasing position, or by
    /// decreasing position when `reverse` is set; the first discovery wins.
    pub fn braid_path(
        &self,
        start: &[u8],
        reverse: bool,
        target: impl Fn(&[u8]) -> bool,
    ) -> Result<(Vec<BraidMove>, Word)> {
        let mut parent: BTreeMap<Vec<u8>, Option<(Vec<u8>, BraidMove)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        parent.insert(start.to_vec(), None);
        queue.push_back(start.to_vec());
        let found = loop {
            let Some(cur) = queue.pop_front() else {
                return Err(Error::InvalidInput(alloc::format!(
                    "no braid path from {} to the requested target",
                    Word::from(start)
                )));
            };
            if target(&cur) {
                break cur;
            }
            let mut moves = self.matrix.braid_moves(&cur);
            if reverse {
                moves.reverse();
            }
            for (pos, len) in moves {
                let next = apply_braid_move(&cur, pos, len);
                if !parent.contains_key(&next) {
                    if parent.len() >= self.budget.orbit_nodes {
                        return Err(Error::BudgetExceeded {
                            what: "braid path search nodes",
                            limit: self.budget.orbit_nodes,
                        });
                    }
                    parent.insert(next.clone(), Some((cur.clone(), BraidMove { pos, len })));
                    queue.push_back(next);
                }
            }
        };
        let mut path = Vec::new();
        let mut cur = found.clone();
        while let Some(Some((prev, mv))) = parent.get(&cur) {
            path.push(*mv);
            cur = prev.clone();
        }
        path.reverse();
        Ok((path, Word::new(found)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;
    use alloc::vec;

    fn f(m: u32) -> Order {
        Order::Finite(m)
    }

    #[test]
    fn dihedral_counts() {
        let mut g = CoxeterGroup::new(CoxeterMatrix::dihedral(f(3)).unwrap());
        assert_eq!(g.growth_series(3).unwrap(), vec![1, 2, 2, 1]);
        let mut g = CoxeterGroup::new(CoxeterMatrix::dihedral(f(4)).unwrap());
        assert_eq!(g.growth_series(10).unwrap(), vec![1, 2, 2, 2, 1]);
        for m in 2..=9 {
            let mut g = CoxeterGroup::new(CoxeterMatrix::dihedral(f(m)).unwrap());
            let layers = g.enumerate(2 * m as usize).unwrap();
            let total: usize = layers.iter().map(Vec::len).sum();
            assert_eq!(total, 2 * m as usize);
            assert_eq!(layers.len(), m as usize + 1);
            assert_eq!(layers[m as usize].len(), 1);
        }
    }

    #[test]
    fn rank3_counts() {
        let mut g = CoxeterGroup::new(CoxeterMatrix::triangle(f(2), f(3), f(3)).unwrap());
        let layers = g.enumerate(6).unwrap();
        assert_eq!(layers.iter().map(Vec::len).sum::<usize>(), 24);
        assert_eq!(layers[6].len(), 1);
        let mut g = CoxeterGroup::new(CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap());
        assert_eq!(g.growth_series(2).unwrap(), vec![1, 3, 6]);
        let mut g = CoxeterGroup::new(CoxeterMatrix::rank_one());
        assert_eq!(g.growth_series(5).unwrap(), vec![1, 1]);
        assert_eq!(g.enumerate(0).unwrap(), vec![vec![Word::empty()]]);
    }

    #[test]
    fn element_budget() {
        let m = CoxeterMatrix::triangle(f(3), f(3), f(3)).unwrap();
        let mut g = CoxeterGroup::with_budget(m, Budget::uniform(50));
        assert!(g.enumerate(20).unwrap_err().is_budget());
    }

    #[test]
    fn reduce_agrees_with_canonical_word() {
        let m = CoxeterMatrix::triangle(f(2), f(3), f(4)).unwrap();
        let mut g = CoxeterGroup::new(m.clone());
        let words: [&[u8]; 5] = [
            &[0, 1, 2, 1, 0, 2, 1],
            &[2, 1, 2, 1, 2, 1, 2, 1],
            &[0, 0, 1],
            &[1, 2, 0, 1, 2, 0, 1, 2],
            &[],
        ];
        for w in words {
            assert_eq!(g.reduce(w).unwrap(), m.canonical_word(w).unwrap());
        }
    }

    #[test]
    fn left_and_right_descents() {
        let mut g = CoxeterGroup::new(CoxeterMatrix::dihedral(f(3)).unwrap());
        let x = Word::from([0, 1]);
        assert!(g.is_descent(&x, 1, Side::Right).unwrap());
        assert!(!g.is_descent(&x, 0, Side::Right).unwrap());
        assert!(g.is_descent(&x, 0, Side::Left).unwrap());
        assert_eq!(g.mul_gen(&x, 1, Side::Left).unwrap(), Word::from([0, 1, 0]));
        assert_eq!(g.mul_gen(&x, 0, Side::Left).unwrap(), Word::from([1]));
    }

    #[test]
    fn path_search() {
        let g = CoxeterGroup::new(CoxeterMatrix::triangle(f(3), f(2), f(3)).unwrap());
        // 1 0 2 1 -> 1 2 0 1 (commute 0,2)
        let (path, end) = g
            .braid_path(&[1, 0, 2, 1], false, |w| w == [1, 2, 0, 1])
            .unwrap();
        assert_eq!(end, Word::from([1, 2, 0, 1]));
        assert_eq!(path, vec![BraidMove { pos: 1, len: 2 }]);
        assert!(g.braid_path(&[0, 1], false, |w| w == [1, 0]).is_err());
    }
}
