//! Exact wall-and-chamber computations for Bridgeland stability conditions
//! on an abelian surface `X` with `NS(X) = ZH`, `(H^2) = 2n`.
//!
//! All geometry is carried out over `Q` or `Q(sqrt(k))`; floats appear only
//! in phases, the feature-gated oracle and diagram output.

pub mod charge;
pub mod error;
pub mod fmgroup;
pub mod lattice;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod pell;
pub mod surd;
pub mod walls;

pub use error::{Error, Result};
pub use lattice::{Context, MukaiVector};
pub use pell::PellContext;
pub use surd::{QnComplex, QnNumber, Rat, Surd};
pub use walls::{Shape, Wall};

/// Execution strategy for the enumeration loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, else runs sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// `cells.flat_map(f)`, order preserved.
pub(crate) fn flat_map_cells<T, U, F>(exec: Exec, cells: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            cells.par_iter().flat_map_iter(f).collect()
        }
        _ => cells.iter().flat_map(f).collect(),
    }
}
