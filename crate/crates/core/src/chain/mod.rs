//! Graded chain complexes with circle actions, maps, homology and exact sequences.

mod complex;
mod exact;
mod homology;
mod map;
mod module;
mod ops;
mod window;

pub use complex::{ChainComplex, Law, LawResult, ValidationReport};
pub use exact::{verify_exact_at, LesCertificate, LesMaps, LesNode, LesSpot, ShortExact};
pub use homology::{
    default_degrees, embed, homology, homology_at, homology_in, induced_between, induced_on_homology, is_chain_map,
    localize, HomologyCache, HomologyTable, InducedMap,
};
pub use map::{DirectSum, GradedMap};
pub use module::{Generator, GradedModule, ModuleRef};
pub use ops::{
    cone, contracting_homotopy, direct_sum, suspension, tensor, tensor_name, verify_homotopy, PMorphism,
    TensorProduct,
};
pub use window::{Completeness, Window};
