//! Free graded Lie algebras, truncated by word length.

pub mod basis;
pub mod bch;
pub mod format;
pub mod linalg;
pub mod presentation;
pub mod tensor;
pub mod tree;

pub use basis::LieBasis;
pub use presentation::{FreeCdglPresentation, Generator, HomologyReport};
pub use tensor::{Letter, TensorPoly, Word};
pub use tree::{BracketTree, LieElement};
