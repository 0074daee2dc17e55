//! Exact computations with Mackey and Tambara functors over small finite groups.

pub mod bispan;
pub mod error;
pub mod gsets;
pub mod io;
pub mod kahler;
pub mod mackey;
pub mod poly;
pub mod report;
pub mod tambara;
pub mod verify;
pub mod zmod;

pub use error::{Error, Result};
