//! Repair of coverage holes in planar wireless networks.
//!
//! Surviving nodes, fictional perimeter nodes and candidate nodes form a
//! Vietoris-Rips or Čech complex. Candidates are added until the complex has
//! one component and no hole, then pruned while its Betti numbers stay
//! `(1, 0)`.

pub mod baseline;
pub mod clique;
pub mod complex;
pub mod dpp;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod harness;
pub mod placement;
pub mod recovery;
pub mod seeding;

pub use error::{Error, Result};
