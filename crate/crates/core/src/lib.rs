//! Matroids on group-labeled graphs, at desk scale.
//!
//! Finite groups as operation tables, biased graphs with balanced-cycle
//! families, a matroid kernel with interchangeable rank backends, the named
//! geometries (Dowling, lift, projective, Reid), connectivity and tangle
//! machinery, structural predicates (spikes, porcupines, stars, stacks),
//! Delta-modular integer matrix analysis, and an exhaustive verification
//! harness for the constructions' size formulas, exclusions, and round
//! trips. Everything favors exact, budgeted, exhaustive computation over
//! scale.

pub mod budget;
pub mod connectivity;
pub mod error;
pub mod extremal;
pub mod geometries;
pub mod gf;
pub mod glgraph;
pub mod graph;
pub mod groups;
pub mod matroid;
pub mod modular;
pub mod set;
pub mod structures;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use matroid::{Matroid, MinorSpec};
pub use set::ElemSet;
