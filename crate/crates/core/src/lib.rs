pub mod arith;
pub mod bijection;
pub mod error;
pub mod identities;
pub mod perms;
pub mod poly;
pub mod qary;
pub mod subsets;
pub mod verify;
pub mod words;

pub use arith::{ExactInt, Valuation2};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
