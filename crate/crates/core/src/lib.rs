//! Weighted finite automata over finite alphabets: evaluation, exact
//! minimization, Gramians, singular value automata and their truncation,
//! l2 norms and distances, and brute-force Hankel blocks.
//!
//! ```
//! use wfa_sva::{catalog, compute_sva, truncate, distance_l2};
//!
//! let a = catalog::dynamic_det_free();
//! let s = compute_sva(&a).unwrap();
//! let t = truncate(&s, 1).unwrap();
//! let d = distance_l2(&a, &t.truncated).unwrap();
//! assert!(d * d <= t.bound + 1e-9);
//! ```

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod gramian;
pub mod io;
pub mod minimize;
pub mod numerics;
pub mod random;
mod refine;
pub mod sva;
pub mod wfa;

pub use analysis::{check_l2, distance_l2, exact_truncation_error_sq, hankel_block, hankel_svd, norm_l2, HankelBlock, L2Report};
pub use error::{Error, Result};
pub use gramian::{gramians, gramians_fixed_point, gramians_linear, GramianPair, GramianRoute};
pub use minimize::{minimize, MinimizationResult};
pub use numerics::{Matrix, Vector};
pub use sva::{compute_sva, pad_truncation, sva_diagnostics, truncate, SvaForm, TruncationResult};
pub use wfa::{Alphabet, Wfa, Word};
