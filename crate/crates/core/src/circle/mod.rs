//! The functors `S_U` and `E^∘_Y`, their fundamental sequences and Koszul duality.

mod flavor;
mod functor;
mod koszul;
mod sequences;

pub use flavor::{default_window, e_completeness, e_map, e_module, e_name, e_y, e_y_partial, u_power, EComplex, Flavor};
pub use functor::{s_u, s_u_completeness, s_u_map, s_u_plain, su_module, su_name};
pub(crate) use functor::s_u_map_unchecked;
pub use koszul::{
    e1_page, esu_name, iota, kappa, koszul_a, koszul_b, lambda, pinned_shift_a, truncate, KoszulReport, MapCheck,
    ShiftReport, PINNED_SHIFT_B, SHIFT_RANGE,
};
pub use sequences::{fundamental_sequences, FundamentalSequences};
