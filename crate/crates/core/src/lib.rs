pub mod amalgam;
pub mod config;
pub mod construction;
pub mod error;
pub mod factors;
pub mod genericity;
pub mod hnn;
pub mod witness;
pub mod wordspec;

pub use construction::{FreeConstruction, PowerTest, RootSet};
pub use error::{Error, Result};
