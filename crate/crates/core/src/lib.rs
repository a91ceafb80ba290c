//! Information bounds of the observable universe and their consequences.
//!
//! Quantities carry runtime-checked dimensions ([`units`]); horizon
//! integrals come from [`cosmology`]; [`bounds`] turns horizon areas into
//! bit counts; [`vacuum`], [`quantum`] and [`predictability`] apply those
//! counts to dark energy, qubit specifiability and prediction horizons.

pub mod bounds;
pub mod cosmology;
pub mod predictability;
pub mod quad;
pub mod quantum;
pub mod units;
pub mod vacuum;
