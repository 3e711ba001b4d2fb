//! Hecke algebras of polygonal Fuchsian groups
//! `Γ(m_1..m_r) = ⟨c_j | c_j^{m_j} = 1, c_1 ⋯ c_r = 1⟩` as even parts `A₊(M)`
//! of the cyclic Coxeter matrix `m_{j,j+1} = m_j`, `∞` elsewhere, under
//! `c_j ↦ a_{j,j+1} = s_j s_{j+1}` (indices mod `r`).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_rational::Ratio;

use crate::coxeter::{CoxeterMatrix, Order, Word};
use crate::group::CoxeterGroup;
use crate::laurent::LaurentPoly;
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuchsianSignature {
    orders: Vec<Order>,
}

impl FuchsianSignature {
    pub fn new(orders: Vec<Order>) -> Result<Self> {
        if orders.len() < 3 {
            return Err(Error::InvalidInput("a signature needs at least 3 orders".into()));
        }
        if orders.iter().any(|m| matches!(m, Order::Finite(k) if *k < 2)) {
            return Err(Error::InvalidInput("orders must be at least 2".into()));
        }
        Ok(FuchsianSignature { orders })
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn r(&self) -> usize {
        self.orders.len()
    }
}

pub fn cyclic_matrix(sig: &FuchsianSignature) -> Result<CoxeterMatrix> {
    let r = sig.r();
    CoxeterMatrix::from_fn(r, |i, j| {
        if (i + 1) % r == j {
            sig.orders[i]
        } else if (j + 1) % r == i {
            sig.orders[j]
        } else {
            Order::Infinite
        }
    })
}

/// `Σ_j (1 - 1/m_j) ≥ 2`, with `1/∞ = 0`.
pub fn fuchsian_is_flat(sig: &FuchsianSignature) -> bool {
    let total: Ratio<u64> = sig
        .orders
        .iter()
        .map(|m| Ratio::from_integer(1) - m.reciprocal())
        .sum();
    total >= Ratio::from_integer(2)
}

/// The parameter `t_jk` of `Γ`, i.e. `t_{j,j+1,k}` (a non-canonical index
/// when `j = r - 1`).
pub fn fuchsian_param(sig: &FuchsianSignature, j: usize, k: i64) -> Result<LaurentPoly> {
    let r = sig.r();
    if j >= r {
        return Err(Error::InvalidInput(alloc::format!("no generator c_{j}")));
    }
    let m = sig.orders[j].finite().ok_or(Error::NoRule { i: j, j: (j + 1) % r })?;
    Ok(LaurentPoly::param(j as u8, ((j + 1) % r) as u8, m, k))
}

/// A letter `c_j` or `c_j^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CLetter {
    pub j: usize,
    pub inverse: bool,
}

/// `a_pq` in the `c` generators: `c_p c_{p+1} ⋯ c_{q-1}` going forward, or
/// `c_{p-1}^{-1} ⋯ c_q^{-1}` going backward, whichever is shorter (forward
/// on ties).
pub fn a_in_c(r: usize, p: usize, q: usize) -> Vec<CLetter> {
    let forward = (q + r - p) % r;
    let backward = r - forward;
    if forward <= backward {
        (0..forward)
            .map(|s| CLetter {
                j: (p + s) % r,
                inverse: false,
            })
            .collect()
    } else {
        (1..=backward)
            .map(|s| CLetter {
                j: (p + r - s) % r,
                inverse: true,
            })
            .collect()
    }
}

/// An even element with its expression in the `c_j^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeBasisElement {
    pub word: Word,
    pub c_word: Vec<CLetter>,
}

impl HeckeBasisElement {
    pub fn c_string(&self) -> String {
        if self.c_word.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        for (n, l) in self.c_word.iter().enumerate() {
            if n > 0 {
                s.push(' ');
            }
            let _ = write!(s, "c{}", l.j);
            if l.inverse {
                s.push_str("^-1");
            }
        }
        s
    }
}

/// Even elements of length `≤ max_len`, i.e. the basis `T_{w(x)}`, `x` even,
/// of `H(Γ)` up to that length.
pub fn hecke_basis(sig: &FuchsianSignature, max_len: usize, budget: Budget) -> Result<Vec<HeckeBasisElement>> {
    let matrix = cyclic_matrix(sig)?;
    let r = sig.r();
    let mut group = CoxeterGroup::with_budget(matrix, budget);
    let layers = group.enumerate(max_len)?;
    let mut out = Vec::new();
    for layer in layers.iter().step_by(2) {
        for w in layer {
            let c_word = w
                .chunks(2)
                .flat_map(|pair| a_in_c(r, pair[0] as usize, pair[1] as usize))
                .collect();
            out.push(HeckeBasisElement {
                word: w.clone(),
                c_word,
            });
        }
    }
    Ok(out)
}
