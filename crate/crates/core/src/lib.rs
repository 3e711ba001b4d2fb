//! Exact computation in deformed Coxeter group algebras.
//!
//! For a Coxeter matrix `M` the algebra `A(M)` keeps the involutions
//! `s_i^2 = 1` and deforms each braid relation to
//! `(s_i s_j - t_ij1) ... (s_i s_j - t_ijm) = 0` over the Laurent ring
//! `R = Q[t_ijk^{±1}]`. This crate rewrites words to the spanning set
//! `T_{w(x)}` (one ShortLex-minimal reduced word per group element),
//! multiplies, checks flatness, builds obstruction witnesses and the cell
//! complex / quiver constructions that go with them.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the `coxdef` companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod coxeter;
pub mod cyclotomic;
mod error;
pub mod flatness;
pub mod fuchsian;
pub mod group;
pub mod laurent;
pub mod linalg;
pub mod quiver;
pub mod rank2;
pub mod ring;
pub mod rules;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Resource caps shared by the combinatorial searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of words visited by a single braid-orbit search.
    pub orbit_nodes: usize,
    /// Maximum number of group elements produced by an enumeration.
    pub elements: usize,
    /// Maximum number of cached kernel products per algebra instance.
    pub kernel_cache: usize,
}

impl Budget {
    pub const DEFAULT_ORBIT_NODES: usize = 1_000_000;

    /// The same cap applied to every resource.
    pub fn uniform(cap: usize) -> Self {
        Budget {
            orbit_nodes: cap,
            elements: cap,
            kernel_cache: cap,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::uniform(Self::DEFAULT_ORBIT_NODES)
    }
}
