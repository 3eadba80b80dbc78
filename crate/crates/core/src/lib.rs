pub mod arith;
pub mod chars;
pub mod error;
pub mod ffield;
pub mod jordan;
pub mod linalg;
pub mod modeng;
pub mod poly;
pub mod report;
pub mod sl2;

pub use error::{Error, Result};
