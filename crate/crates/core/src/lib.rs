//! Exact polynomial algebra for elimination, regularity and lex-segment
//! computations over prime fields and the rationals.

pub mod error;
pub mod field;
pub mod groebner;
pub mod harness;
pub mod monomial;
pub mod monomial_tools;
pub mod order;
pub mod poly;
pub mod power_map;
pub mod report;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
