//! Quillen's side: finite simplicial sets, the simplicial Lie algebra `LL` and `lambda`.

pub mod chains;
pub mod loop_lie;
pub mod sset;

pub use chains::{aw_delta, ez_nabla, shuffles, Shuffle};
pub use loop_lie::{Lambda, LoopLie};
pub use sset::{FiniteSimplicialSet, Simplex, Simplicial};
