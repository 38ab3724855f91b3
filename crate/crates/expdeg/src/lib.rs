//! Combinatorial engine for expanded degenerations of the local model
//! `xyz = t`: unbroken blow-up bookkeeping, base strata and their
//! equivalences, expanded fibres as line arrangements in the tropical
//! triangle, stability conditions on point supports, limit enumeration for
//! point configurations, properness audits, and the edge-sliding smoothing
//! criterion.
//!
//! Start with [`pairs::UnbrokenPair`] and [`strata::Stratum`], build fibres
//! with [`fibres::build_fibre`], and see the `examples/` directory for one
//! runnable walkthrough per capability.

pub mod codec;
pub mod enumerate;
pub mod error;
pub mod fibres;
pub mod lattice;
pub mod limits;
pub mod pairs;
pub mod render;
pub mod smoothing;
pub mod stability;
pub mod strata;
pub mod tropical;

pub use error::{Error, Result};
