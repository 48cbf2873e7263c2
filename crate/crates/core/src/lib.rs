//! Generalized bicycle quantum codes: ring arithmetic, code construction,
//! distance computation, structural maps, bounds and parameter search.

pub mod bounds;
pub mod codes;
pub mod distance;
pub mod error;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod maps;
pub mod num;
pub mod poly;
pub mod ring;
pub mod search;
pub mod text;

pub use error::{Error, Result};
