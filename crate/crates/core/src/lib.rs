pub mod arc;
pub mod classify;
pub mod clique;
pub mod cut;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod intersection;
pub mod layout;
pub mod render;
pub mod ribbon;
pub mod slope;
pub mod surface;
pub mod system;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};
