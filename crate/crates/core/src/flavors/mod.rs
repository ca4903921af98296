//! Balanced flavor assembly, the cone comparison, the reducible tower and the flavor ladder.

mod assemble;
mod cone;
mod four;
mod ladder;
mod components;
mod tower;

pub use cone::{check_cone, cone_data, cone_identities, ConeCheck, ConeData, ConeIdentity, ConeReport};
pub use assemble::{assemble, assemble_unchecked, BundleCheck, BundleLaw, FlavorBundle};
pub use four::{four_flavors, four_flavors_partial, localization_check, FourFlavors, Localization};
pub use ladder::{ladder_check, ladder_squares, LadderReport, Row, Square, SquareCheck};
pub use components::{BalancedComponents, Comp, Kind, Part};
pub use tower::{
    coupled_tower_s, coupled_tower_u, coupled_triangle, pair, point, random_decoupled,
    tower_model, tower_name, tower_vanishing, TowerParams, TowerVanishing,
};
