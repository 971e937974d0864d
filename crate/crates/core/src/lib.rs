//! Deciding whether multizeta values over F_q[θ] are Eulerian or zeta-like,
//! via torsion tests in explicitly constructed t-modules.

pub mod algebra;
pub mod carlitz;
pub mod criterion;
pub mod error;
pub mod families;
pub mod motive;
pub mod oracle;
pub mod sweep;
pub mod tmodule;

pub use error::{Error, Result};
