//! Simplex categories, the functors between them, reduced bar constructions
//! of finite monoids, and strict Segal checks for truncated simplicial and
//! bisimplicial objects in finite sets.

pub mod bisimplicial;
pub mod cli;
pub mod finset;
pub mod functors;
mod jsonfmt;
pub mod label;
pub mod render;
pub mod segal;
pub mod verify;
pub mod simplex;
pub mod sset;
