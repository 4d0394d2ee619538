//! Leray numbers of simplicial complexes, facet-ordering upper bounds and the
//! Stanley-Reisner side of the story (Hochster Betti tables, regularity and a
//! weak Eisenbud-Goto inequality).
//!
//! All homology is computed with coefficients in the two-element field.
//!
//! ```
//! use leray_lab::complex::{SimplicialComplex, VertexSet};
//! use leray_lab::{leray, ordering};
//!
//! let labels: Vec<String> = (1..=6).map(|v| v.to_string()).collect();
//! let facets = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]]
//!     .iter()
//!     .map(|f| VertexSet::from_indices(f.iter().copied()).unwrap())
//!     .collect();
//! let x = SimplicialComplex::from_facets(facets, labels).unwrap();
//! assert_eq!(leray::leray_number(&x).unwrap().leray, 2);
//! assert_eq!(ordering::m_number(&x, ordering::Limits::default()).unwrap().m, 3);
//! ```

pub mod cli;
pub mod complex;
pub mod error;
pub mod facet_graph;
pub mod gf2;
pub mod homology;
pub mod leray;
pub mod ordering;
pub mod stanley_reisner;
pub mod structure;

mod par;
mod union_find;

pub use error::{Error, Result};

/// Run `f` with parallel work capped at `threads` workers (0 means the
/// default pool). A no-op wrapper when the `parallel` feature is off.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    par::with_threads(threads, f)
}
