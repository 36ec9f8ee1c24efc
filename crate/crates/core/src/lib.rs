pub mod algebra;
pub mod cli;
pub mod error;
pub mod family;
pub mod isogeny;
pub mod moduli;
pub mod periods;
pub mod projline;
pub mod sampling;
pub mod selftest;
pub mod torsion;

pub use error::{Error, Result};
