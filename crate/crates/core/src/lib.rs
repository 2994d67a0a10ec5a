//! Exploitative no-limit hold'em opponent modeling.
//!
//! Opponent hands are tracked as weighted grids over the 1,326 two-card
//! combos. Each observed action reshapes the grid through a template over an
//! eleven-point relative strength scale, and the resulting picture drives a
//! small set of decision modules arbitrated into one action. A six-max
//! fast-fold simulator with archetype bots and a results ledger close the loop.

pub mod action;
pub mod brain;
pub mod cards;
pub mod error;
pub mod heatmap;
pub mod learning;
pub mod metrics;
pub mod profile;
pub mod range;
pub mod ret;
pub mod rsm;
pub mod scenario;
pub mod table;

pub use error::{Error, Result};
