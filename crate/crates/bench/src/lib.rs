pub use flavorkit_core as core;
