mod error;
pub mod bits;
pub mod canonical;
pub mod density;
pub mod enumerate;
pub mod forbidden;
pub mod pdg;
pub mod sat;

pub use error::{Error, Result};
pub use pdg::{Edge, Pdg};
