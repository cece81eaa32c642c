//! Exact solvers and target analysis for list-homomorphism deletion.
//!
//! Given a fixed target graph H (loops allowed), `LHomVD(H)` asks for the
//! fewest vertices of G to delete and `LHomED(H)` for the fewest edges, so
//! that what remains has a list homomorphism to H.

pub mod analysis;
pub mod auto;
pub mod dp;
pub mod error;
pub mod formats;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod lists;
pub mod oracle;
pub mod poly;
pub mod reductions;
pub mod selftest;
pub mod td;

pub use error::{Error, Result};
pub use graph::{Deleted, Instance, Mode, Solution, Stats, TargetGraph};
