pub mod arith;
pub mod classify;
pub mod criteria;
pub mod error;
pub mod field;
pub mod group_ring;
pub mod instance;
pub mod orbits;
pub mod psl2;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use instance::Instance;
