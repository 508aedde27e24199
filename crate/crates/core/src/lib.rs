pub mod error;
pub mod expansion;
pub mod lie_group;
pub mod principal_series;
pub mod report;
pub mod special;
pub mod wigner;
pub mod ymap;

pub use error::{Error, Result};
