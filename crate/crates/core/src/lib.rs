//! Positive semidefinite completion of partial Hermitian matrices whose
//! specification pattern is a chordal graph.
//!
//! The completion fills one clique-tree edge at a time with `X = B C⁺ D`
//! and, when every clique is of maximal rank, is the unique PSD completion
//! that maximizes the generalized determinant among rank-preserving fills;
//! its pseudoinverse then vanishes on every unspecified position.
//!
//! ```
//! use psdcomplete::{complete, HermitianMatrix, PartialHermitianMatrix, TolerancePolicy};
//!
//! let h = HermitianMatrix::from_real_rows(&[&[1.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 1.0]])?;
//! let p = PartialHermitianMatrix::from_pattern(&h, |i, j| j == i + 1);
//! let r = complete(&p, &TolerancePolicy::default())?;
//! assert!((r.completed[(0, 2)].re - 0.5).abs() < 1e-12);
//! # Ok::<(), psdcomplete::Error>(())
//! ```

pub mod chordal;
pub mod cli;
pub mod completion;
pub mod error;
pub mod generate;
pub mod numeric;
pub mod semidefinite;

pub use chordal::{is_chordal, Chordality, CliqueTree, PatternGraph};
pub use completion::{complete, CompletionReport, PartialHermitianMatrix};
pub use error::{Error, Result};
pub use numeric::{CMatrix, HermitianMatrix, TolerancePolicy, C64};
