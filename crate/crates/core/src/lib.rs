pub mod actions;
pub mod analysis;
pub mod bsgs;
pub mod catalog;
pub mod ct;
pub mod error;
pub mod gf;
pub mod group;
pub mod orbits;
pub mod perm;

pub use actions::Limits;
pub use bsgs::{schreier_sims, Bsgs};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use orbits::{is_primitive, is_transitive, orbits, OrbitPartition};
pub use perm::Perm;
