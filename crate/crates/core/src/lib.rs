pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod almostinner;
pub mod catalog;
pub mod derivations;
pub mod io;
pub mod prehom;
pub mod quasired;
pub mod report;
pub mod supercore;
