pub mod braid;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod gram;
pub mod gaussian;
pub mod linalg;
mod modular;
pub mod poly;
pub mod quon;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use poly::{MPoly, Monomial, Point, UPoly, URat, VarId};
