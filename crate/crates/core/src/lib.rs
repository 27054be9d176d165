pub mod band;
pub mod construct;
pub mod cw;
pub mod error;
pub mod graph;
pub mod intlattice;
pub mod json;
pub mod pathalg;
pub mod presentation;
pub mod quiver;
pub mod report;
pub mod support;
pub mod zalgebra;

pub use error::{Error, Result};
