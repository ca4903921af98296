//! Filtered complexes, the connected-sum product and its comparison maps.

mod filtered;
mod maps;
mod product;

pub use filtered::{check_positivity, cm_flavors, CmFlavors, FilteredComplex, Laurent};
pub use maps::{verify_sum_maps, ConnSumMaps, SumCheck, SumIdentity, SumMapsReport};
pub use product::{case1_check, case1_model, case2_check, product_complex, s_u_sum, CASE1_SHIFT};
