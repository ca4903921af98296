//! Exact linear algebra over the integers and prime fields.

mod group;
mod homology;
mod matrix;
mod ring;
mod snf;

pub use group::AbelianGroup;
pub use homology::{exact_at, homology_of_pair, homology_of_pair_over, GroupHom, LinError, Presentation, Solver};
pub use matrix::IntMatrix;
pub use ring::{Ring, RingParseError};
pub use snf::{invariant_factors, rank_and_kernel, rank_and_kernel_over, rank_over, snf, snf_over, Snf};
