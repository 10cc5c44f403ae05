//! Energy-extremal steady 2D Euler flows by vorticity rearrangement.

pub mod convexgeo;
pub mod error;
pub mod fieldcore;
pub mod lab;
pub mod poisson;
pub mod rearrange;
pub mod steady;

pub use error::{Error, Result};
