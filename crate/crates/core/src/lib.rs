//! Random 2-dimensional simplicial complexes generated by 3-uniform
//! hypergraphs, their homology over F₂, the minimal obstruction to
//! homological connectivity, and the face-addition process.
//!
//! Everything in this crate is pure computation over `alloc` collections.
//! File formats, experiments and the command-line front end live in the
//! `homconn-lab` crate.
//!
//! Vertices are 1-indexed throughout: a complex on `n` vertices uses the
//! vertex set `1..=n`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod complex;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod obstructions;
pub mod process;
pub mod stats;
pub mod triple;
pub mod union_find;

mod shadow;

pub use complex::{Complex, Edge, EdgeId, ModelKind};
pub use error::{Error, Result};
pub use gf2::{EchelonBasis, Gf2Matrix, Gf2Vector};
pub use homology::{EdgeFunction, HomologyReport};
pub use obstructions::{MCopy, RootedTriple, SupportReport};
pub use process::{BirthTimeTable, HittingTimes, ProcessTrace, StepRecord};
pub use triple::{Triple, Vertex};

/// Binomial coefficient `C(n, k)` in `u64`.
///
/// Saturates at `u64::MAX` instead of overflowing; every count used in
/// this crate (`C(n, 3)` for desk-scale `n`) is far below that.
pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}
