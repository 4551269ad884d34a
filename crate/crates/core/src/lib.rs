pub mod algebra;
pub mod checks;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldCtx, Fq2};
