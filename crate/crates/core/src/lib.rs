//! Exact homological algebra for circle-action functors on graded chain complexes.

pub mod chain;
pub mod circle;
pub mod connsum;
pub mod flavors;
pub mod error;
pub mod exactlin;
pub mod random;

pub use error::{Error, Result};
