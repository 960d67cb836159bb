//! Exact scalar, polynomial and rational-function arithmetic.
//!
//! All quantities downstream (weights, areas, Chern numbers, the T-integrals,
//! minimum scalar curvatures) live in `Q(a, b, c, pi)` where `pi` is a formal
//! positive symbol, never a float. Rational functions are kept in a canonical
//! form (coprime, denominator leading coefficient 1 under graded-lex) so that
//! structural equality is mathematical equality.

mod linalg;
mod parse;
mod poly;
mod ratfunc;
pub mod ratserde;
mod roots;

pub use linalg::solve_linear;
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;
pub use roots::{isolate_real_roots, sign_on_interval, SignVerdict, UniPoly};

use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at evaluation point")]
    Pole,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("expected univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("division is not exact")]
    InexactDivision,
}

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `-3/4`, `7`, `0` style rational strings.
pub fn parse_rat(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad integer `{num}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad integer `{den}`")))?;
    if d == BigInt::from(0) {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// Lossless `num/den` form (plain integer when the denominator is 1).
pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        for s in ["0", "-3/4", "7", "22/7", "-1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_to_string(&parse_rat("4/8").unwrap()), "1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(parse_rat("1/0"), Err(ExactError::ZeroDenominator));
    }
}
