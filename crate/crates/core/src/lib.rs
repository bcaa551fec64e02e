//! Exact construction of Schett polynomials, their production, output and
//! Hankel matrices, and bounded certification of coefficientwise total
//! positivity.

pub mod cli;
pub mod egfseries;
pub mod error;
pub mod matrixkit;
pub mod outputmat;
pub mod permoracle;
pub mod polyring;
pub mod schett;
pub mod totalpos;

pub use error::{Error, Result};

/// Which subsequence (even or odd index) an object belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `0` for even, `1` for odd.
    pub fn offset(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}
