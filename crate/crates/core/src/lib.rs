pub mod dance;
pub mod error;
pub mod group;
pub mod intlinalg;
pub mod llt;
pub mod measure;

pub use error::{Error, Result};
