//! The 2-complex `Σ` of `W(M)` and its quotient orbifold `Y = Σ / W₊`.
//!
//! Vertices are the elements of `W`, edges join `w` and `s_i w`, and for each
//! finite `m_ij` every coset `W_ij w` bounds a `2m_ij`-gon
//! `w, s_i w, s_j s_i w, ...`. `W` acts on the right.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::coxeter::{rank3_is_finite, CoxeterMatrix, Order, Word};
use crate::group::{CoxeterGroup, Side};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    /// Elements of length `≤ L`; faces only when all their vertices are in.
    Ball(usize),
    /// The whole (finite) group.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub i: u8,
    pub j: u8,
    /// Vertex indices `w, s_i w, s_j s_i w, ...` (length `2m_ij`).
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex2 {
    pub vertices: Vec<Word>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

impl CellComplex2 {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Faces per pair `{i, j}`.
    pub fn face_counts(&self) -> BTreeMap<(u8, u8), usize> {
        let mut out = BTreeMap::new();
        for f in &self.faces {
            *out.entry((f.i, f.j)).or_insert(0) += 1;
        }
        out
    }

    /// Every face boundary is a closed path of edges of the complex.
    pub fn boundaries_closed(&self) -> bool {
        let edges: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.a.min(e.b), e.a.max(e.b)))
            .collect();
        self.faces.iter().all(|f| {
            let n = f.cycle.len();
            (0..n).all(|k| {
                let (u, v) = (f.cycle[k], f.cycle[(k + 1) % n]);
                edges.contains(&(u.min(v), u.max(v)))
            })
        })
    }
}

pub fn euler_characteristic(c: &CellComplex2) -> i64 {
    c.euler_characteristic()
}

pub fn build_sigma(matrix: &CoxeterMatrix, extent: Extent, budget: Budget) -> Result<CellComplex2> {
    let mut group = CoxeterGroup::with_budget(matrix.clone(), budget);
    let layers = match extent {
        Extent::Ball(l) => group.enumerate(l)?,
        Extent::Full => {
            if matrix.rank() == 3
                && !rank3_is_finite(matrix.order(0, 1), matrix.order(0, 2), matrix.order(1, 2))
            {
                return Err(Error::InfiniteTriple);
            }
            if matrix.pairs().any(|(_, _, m)| m == Order::Infinite) {
                return Err(Error::InvalidInput("W is infinite; use a ball".into()));
            }
            group.enumerate_all()?
        }
    };
    let vertices: Vec<Word> = layers.into_iter().flatten().collect();
    let index: BTreeMap<Word, usize> = vertices
        .iter()
        .enumerate()
        .map(|(n, w)| (w.clone(), n))
        .collect();
    let rank = matrix.rank() as u8;
    let mut edges = Vec::new();
    for (n, w) in vertices.iter().enumerate() {
        for i in 0..rank {
            let v = group.mul_gen(w, i, Side::Left)?;
            if let Some(&k) = index.get(&v) {
                if n < k {
                    edges.push(Edge { a: n, b: k, label: i });
                }
            }
        }
    }
    let mut faces = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, j, m) in matrix.finite_pairs() {
        let (i, j) = (i as u8, j as u8);
        for w in &vertices {
            let mut cycle = Vec::with_capacity(2 * m as usize);
            let mut cur = w.clone();
            let mut complete = true;
            for step in 0..2 * m as usize {
                match index.get(&cur) {
                    Some(&k) => cycle.push(k),
                    None => {
                        complete = false;
                        break;
                    }
                }
                let g = if step % 2 == 0 { i } else { j };
                cur = group.mul_gen(&cur, g, Side::Left)?;
            }
            if !complete {
                continue;
            }
            let mut key = cycle.clone();
            key.sort_unstable();
            if seen.insert((i, j, key)) {
                faces.push(Face { i, j, cycle });
            }
        }
    }
    Ok(CellComplex2 {
        vertices,
        edges,
        faces,
    })
}

/// `Y`: poles `N`, `S`, one edge per generator, one disk per finite pair
/// with a cone point of order `m_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldStats {
    pub vertices: usize,
    pub edges: usize,
    pub disks: Vec<(usize, usize, u32)>,
}

impl OrbifoldStats {
    /// `2 - r + Σ 1/m_ij`.
    pub fn euler_characteristic(&self) -> Ratio<i64> {
        let mut chi = Ratio::from_integer(self.vertices as i64 - self.edges as i64);
        for (_, _, m) in &self.disks {
            chi += Ratio::new(1, i64::from(*m));
        }
        chi
    }
}

pub fn orbifold_stats(matrix: &CoxeterMatrix) -> OrbifoldStats {
    OrbifoldStats {
        vertices: 2,
        edges: matrix.rank(),
        disks: matrix.finite_pairs().collect(),
    }
}

/// Right action of `g` (a word) on vertex indices; `None` if an image leaves
/// the complex.
fn act(group: &mut CoxeterGroup, c: &CellComplex2, index: &BTreeMap<Word, usize>, g: &Word) -> Result<Option<Vec<usize>>> {
    let mut out = Vec::with_capacity(c.vertices.len());
    for v in &c.vertices {
        let image = group.mul(v, g)?;
        match index.get(&image) {
            Some(&k) => out.push(k),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Stabilizer orders under the right action, for a complex of the full
/// finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionStats {
    /// Largest number of `g ∈ W` fixing a vertex.
    pub max_vertex_stabilizer: usize,
    /// Largest number of `g ∈ W₊` fixing an (unoriented) edge.
    pub max_even_edge_stabilizer: usize,
    /// Largest number of `g ∈ W` fixing an (unoriented) edge.
    pub max_edge_stabilizer: usize,
    /// For each face, the number of `g ∈ W₊` mapping it to itself, and its `m_ij`.
    pub even_face_stabilizers: Vec<(usize, u32)>,
}

pub fn action_stats(matrix: &CoxeterMatrix, c: &CellComplex2) -> Result<ActionStats> {
    let mut group = CoxeterGroup::new(matrix.clone());
    let index: BTreeMap<Word, usize> = c
        .vertices
        .iter()
        .enumerate()
        .map(|(n, w)| (w.clone(), n))
        .collect();
    let mut perms = Vec::with_capacity(c.vertices.len());
    for g in &c.vertices {
        let p = act(&mut group, c, &index, g)?
            .ok_or_else(|| Error::InvalidInput("complex is not closed under W".into()))?;
        perms.push((g.len() % 2 == 0, p));
    }
    let mut stats = ActionStats {
        max_vertex_stabilizer: 0,
        max_even_edge_stabilizer: 0,
        max_edge_stabilizer: 0,
        even_face_stabilizers: Vec::new(),
    };
    for v in 0..c.vertices.len() {
        let n = perms.iter().filter(|(_, p)| p[v] == v).count();
        stats.max_vertex_stabilizer = stats.max_vertex_stabilizer.max(n);
    }
    for e in &c.edges {
        let fixes = |p: &Vec<usize>| {
            let (a, b) = (p[e.a], p[e.b]);
            (a, b) == (e.a, e.b) || (a, b) == (e.b, e.a)
        };
        let all = perms.iter().filter(|(_, p)| fixes(p)).count();
        let even = perms.iter().filter(|(ev, p)| *ev && fixes(p)).count();
        stats.max_edge_stabilizer = stats.max_edge_stabilizer.max(all);
        stats.max_even_edge_stabilizer = stats.max_even_edge_stabilizer.max(even);
    }
    let m_of = |f: &Face| matrix.order(f.i as usize, f.j as usize).finite().unwrap_or(0);
    for f in &c.faces {
        let mut key = f.cycle.clone();
        key.sort_unstable();
        let n = perms
            .iter()
            .filter(|(ev, p)| {
                if !*ev {
                    return false;
                }
                let mut img: Vec<usize> = f.cycle.iter().map(|&v| p[v]).collect();
                img.sort_unstable();
                img == key
            })
            .count();
        stats.even_face_stabilizers.push((n, m_of(f)));
    }
    Ok(stats)
}
