//! Words and noncommutative *-polynomials over two generator families.

mod parse;
mod poly;
mod word;

pub use parse::{parse_expression, Symbols};
pub use poly::NCPolynomial;
pub use word::{AlternatingForm, Family, Generator, Letter, Word};
