pub mod cli;
pub mod combinat;
pub mod designs;
pub mod complexes;
pub mod error;
pub mod exactmath;
pub mod incidence;
pub mod polytope;
pub mod threepoint;
pub mod toric;

pub use error::{Error, Result};
