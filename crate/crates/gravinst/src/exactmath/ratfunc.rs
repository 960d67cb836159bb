//! Normalized rational functions num/den over named parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
#[allow(unused_imports)]
use num_traits::Signed as _;
use serde::{Deserialize, Serialize};

use super::{BigRational, ExactError, MultiPoly};

/// A rational function in canonical form: `gcd(num, den)` is a unit, the
/// denominator's graded-lex leading coefficient is 1, and both parts are
/// expressed over exactly the variables they use (sorted by name). Structural
/// equality is therefore mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

/// Canonical form of `n / d`.
pub fn rf_normalize(n: &MultiPoly, d: &MultiPoly) -> Result<RatFunc, ExactError> {
    if d.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    if n.is_zero() {
        return Ok(RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        });
    }
    let (mut num, mut den) = if n.is_constant() || d.is_constant() {
        (n.clone(), d.clone())
    } else if let Some(q) = n.div_exact(d) {
        (q, MultiPoly::one())
    } else {
        let g = MultiPoly::gcd(n, d);
        (
            n.div_exact(&g).ok_or(ExactError::InexactDivision)?,
            d.div_exact(&g).ok_or(ExactError::InexactDivision)?,
        )
    };
    let lc = den.leading_coeff();
    let inv = BigRational::one() / lc;
    num = num.scale(&inv).pruned();
    den = den.scale(&inv).pruned();
    Ok(RatFunc { num, den })
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        rf_normalize(&num, &den)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p.pruned(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_rat(r: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Is a constant rational (no parameters at all).
    pub fn as_rat(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // work over the least common denominator
        let g = MultiPoly::gcd(&self.den, &other.den);
        let db = other.den.div_exact(&g).expect("gcd divides");
        let dd = self.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&db).add(&other.num.mul(&dd));
        let d = self.den.mul(&db);
        rf_normalize(&n, &d).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel first; the remaining factors are pairwise coprime,
        // so no further gcd is needed
        let g1 = MultiPoly::gcd(&self.num, &other.den);
        let g2 = MultiPoly::gcd(&other.num, &self.den);
        let n = self
            .num
            .div_exact(&g1)
            .expect("gcd divides")
            .mul(&other.num.div_exact(&g2).expect("gcd divides"));
        let d = self
            .den
            .div_exact(&g2)
            .expect("gcd divides")
            .mul(&other.den.div_exact(&g1).expect("gcd divides"));
        let lc = d.leading_coeff();
        let inv = BigRational::one() / lc;
        RatFunc {
            num: n.scale(&inv).pruned(),
            den: d.scale(&inv).pruned(),
        }
    }

    /// Integer power; numerator and denominator are coprime, so their powers
    /// are too and no normalization gcd is required.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return RatFunc::one();
        }
        let n = self.num.pow(e);
        let d = self.den.pow(e);
        let lc = d.leading_coeff();
        let inv = BigRational::one() / lc;
        RatFunc {
            num: n.scale(&inv).pruned(),
            den: d.scale(&inv).pruned(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let inv = RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        };
        let mut r = self.mul(&inv);
        // re-normalize the sign convention on the denominator
        let lc = r.den.leading_coeff();
        if !lc.is_one() {
            let s = BigRational::one() / lc;
            r = RatFunc {
                num: r.num.scale(&s),
                den: r.den.scale(&s),
            };
        }
        Ok(r)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        rf_normalize(&self.num.scale(r), &self.den).expect("nonzero denominator")
    }

    /// Exact evaluation with every parameter bound.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, ExactError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ExactError::Pole);
        }
        let n = self.num.eval(point)?;
        Ok(n / d)
    }

    /// Substitutes a polynomial value for one variable.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<Self, ExactError> {
        rf_normalize(
            &self.num.substitute(var, value),
            &self.den.substitute(var, value),
        )
    }

    /// Splits off the net power of `var`: returns `(k, f / var^k)` where the
    /// remaining function has no `var` factor in numerator or denominator.
    /// Used with `var = "pi"` to treat pi as a positive symbol in sign tests.
    pub fn factor_out(&self, var: &str) -> (i64, RatFunc) {
        let (kn, n) = self.num.factor_out_var(var);
        let (kd, d) = self.den.factor_out_var(var);
        (
            kn as i64 - kd as i64,
            RatFunc {
                num: n.pruned(),
                den: d.pruned(),
            },
        )
    }

    /// All parameters appearing in the function.
    pub fn used_vars(&self) -> Vec<String> {
        let mut v = self.num.used_vars();
        v.extend(self.den.used_vars());
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_poly, parse_rat, parse_ratfunc, rat, ratio};

    #[test]
    fn common_factor_cancellation() {
        // (a^2-1)/(a-1) -> (a+1)/1
        let f = rf_normalize(
            &parse_poly("a^2 - 1").unwrap(),
            &parse_poly("a - 1").unwrap(),
        )
        .unwrap();
        assert_eq!(f, RatFunc::from_poly(parse_poly("a + 1").unwrap()));
    }

    #[test]
    fn sign_normalization_canonical() {
        // 4*pi/(a - a^2) equals -4*pi/(a^2 - a) structurally after normalization
        let f = rf_normalize(
            &parse_poly("4*pi").unwrap(),
            &parse_poly("a - a^2").unwrap(),
        )
        .unwrap();
        let g = rf_normalize(
            &parse_poly("-4*pi").unwrap(),
            &parse_poly("a^2 - a").unwrap(),
        )
        .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn zero_numerator_and_zero_denominator() {
        let z = rf_normalize(&MultiPoly::zero(), &parse_poly("a").unwrap()).unwrap();
        assert_eq!(z, RatFunc::zero());
        assert!(rf_normalize(&parse_poly("a").unwrap(), &MultiPoly::zero()).is_err());
    }

    #[test]
    fn multiplying_through_is_invariant() {
        let n = parse_poly("a^2 + a*b").unwrap();
        let d = parse_poly("b - 1").unwrap();
        let g = parse_poly("a*b^2 - 7").unwrap();
        let f1 = rf_normalize(&n, &d).unwrap();
        let f2 = rf_normalize(&n.mul(&g), &d.mul(&g)).unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn eval_and_pole() {
        let f = parse_ratfunc("(a + 1)/a").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), rat(1));
        assert_eq!(f.eval(&pt).unwrap(), rat(2));
        pt.insert("a".to_string(), rat(0));
        assert_eq!(f.eval(&pt), Err(ExactError::Pole));
    }

    #[test]
    fn case_3c_value_at_one_half() {
        // 4*pi/(a-a^2) at a = 1/2 is 16*pi, i.e. coefficient 16 on pi
        let f = parse_ratfunc("4*pi/(a - a^2)").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), ratio(1, 2));
        pt.insert("pi".to_string(), rat(1));
        assert_eq!(f.eval(&pt).unwrap(), rat(16));
        // and the pi-degree is exactly 1
        let (k, rest) = f.factor_out("pi");
        assert_eq!(k, 1);
        assert_eq!(rest, parse_ratfunc("4/(a - a^2)").unwrap());
    }

    #[test]
    fn constant_value_detection() {
        let f = parse_ratfunc("24/7").unwrap();
        assert_eq!(f.as_rat().unwrap(), parse_rat("24/7").unwrap());
    }
}
