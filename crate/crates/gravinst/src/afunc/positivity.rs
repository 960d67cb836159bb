//! Positivity analysis of the minimum scalar curvature over the Kähler cone.
//!
//! One free parameter: an exact verdict via Sturm root isolation on the
//! derived interval. Two or three parameters: a dense rational grid over the
//! cone (the verdict is labeled "sampled"), plus near-boundary shells.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{rat, ratio, sign_on_interval, BigRational, RatFunc, SignVerdict};

use super::AFuncError;

#[derive(Debug, Clone, Copy)]
pub struct PositivityOptions {
    /// Minimum number of in-domain sample points for multivariate verdicts.
    pub min_points: usize,
    /// Grid density per axis; when `None`, derived from `min_points`.
    pub density: Option<usize>,
}

impl Default for PositivityOptions {
    fn default() -> Self {
        PositivityOptions {
            min_points: 2500,
            density: None,
        }
    }
}

/// The verdict, with its provenance: exact verdicts come from root
/// isolation, sampled verdicts from grid evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum PositivityVerdict {
    IdenticallyZero,
    ExactStrictlyPositive,
    ExactStrictlyNegative,
    ExactHasZero,
    ExactHasPole,
    SampledStrictlyPositive {
        points: usize,
    },
    SampledStrictlyNegative {
        points: usize,
    },
    SampledSignChange {
        points: usize,
        witness: Vec<(String, String)>,
    },
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::IdenticallyZero => write!(f, "identically-zero"),
            PositivityVerdict::ExactStrictlyPositive => write!(f, "exact:strictly-positive"),
            PositivityVerdict::ExactStrictlyNegative => write!(f, "exact:strictly-negative"),
            PositivityVerdict::ExactHasZero => write!(f, "exact:has-zero"),
            PositivityVerdict::ExactHasPole => write!(f, "exact:has-pole"),
            PositivityVerdict::SampledStrictlyPositive { points } => {
                write!(f, "sampled:strictly-positive({points} points)")
            }
            PositivityVerdict::SampledStrictlyNegative { points } => {
                write!(f, "sampled:strictly-negative({points} points)")
            }
            PositivityVerdict::SampledSignChange { witness, .. } => {
                write!(f, "sampled:sign-change(witness {witness:?})")
            }
        }
    }
}

/// Free parameters of a domain (everything except the formal `pi`).
fn free_params(f: &RatFunc, domain: &[RatFunc]) -> Vec<String> {
    let mut v = f.used_vars();
    for d in domain {
        v.extend(d.used_vars());
    }
    v.sort();
    v.dedup();
    v.retain(|x| x != "pi");
    v
}

/// Extracts the interval cut out by linear univariate constraints.
fn interval_of(domain: &[RatFunc], var: &str) -> Option<(BigRational, BigRational)> {
    // default bounds; every case domain is bounded below by 0 via some
    // constraint, and we fall back to a wide window otherwise
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for d in domain {
        let num = d.num();
        if !d.den().is_constant() || num.degree_in(var) > 1 {
            return None;
        }
        let coeffs = num.univariate_coeffs(var);
        let c0 = if coeffs.is_empty() {
            BigRational::zero()
        } else {
            coeffs[0].constant_term()
        };
        let c1 = if coeffs.len() > 1 {
            coeffs[1].constant_term()
        } else {
            BigRational::zero()
        };
        if c1.is_zero() {
            continue;
        }
        let bound = -c0 / c1.clone();
        if c1.is_positive() {
            if lo.as_ref().map(|l| bound > *l).unwrap_or(true) {
                lo = Some(bound);
            }
        } else if hi.as_ref().map(|h| bound < *h).unwrap_or(true) {
            hi = Some(bound);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l < h => Some((l, h)),
        _ => None,
    }
}

/// Sign analysis of `f` over the open domain `{g > 0 for each g}`.
pub fn positivity_report(
    f: &RatFunc,
    domain: &[RatFunc],
    opts: &PositivityOptions,
) -> Result<PositivityVerdict, AFuncError> {
    if f.is_zero() {
        return Ok(PositivityVerdict::IdenticallyZero);
    }
    let params = free_params(f, domain);
    match params.len() {
        0 => {
            // constant times a power of pi
            let (_, rest) = f.factor_out("pi");
            let c = rest.as_rat().expect("constant after factoring pi");
            Ok(if c.is_positive() {
                PositivityVerdict::ExactStrictlyPositive
            } else if c.is_negative() {
                PositivityVerdict::ExactStrictlyNegative
            } else {
                PositivityVerdict::IdenticallyZero
            })
        }
        1 => {
            let var = &params[0];
            let (lo, hi) = interval_of(domain, var).ok_or_else(|| {
                AFuncError::Profile(format!("domain does not bound `{var}` to an interval"))
            })?;
            let verdict = sign_on_interval(f, &lo, &hi)?;
            Ok(match verdict {
                SignVerdict::StrictlyPositive => PositivityVerdict::ExactStrictlyPositive,
                SignVerdict::StrictlyNegative => PositivityVerdict::ExactStrictlyNegative,
                SignVerdict::HasZero => PositivityVerdict::ExactHasZero,
                SignVerdict::HasPole => PositivityVerdict::ExactHasPole,
                SignVerdict::IdenticallyZero => PositivityVerdict::IdenticallyZero,
            })
        }
        dim => Ok(sample_grid(f, domain, &params, dim, opts)),
    }
}

fn in_domain(domain: &[RatFunc], pt: &BTreeMap<String, BigRational>) -> bool {
    domain.iter().all(|d| match d.eval(pt) {
        Ok(v) => v.is_positive(),
        Err(_) => false,
    })
}

fn sample_grid(
    f: &RatFunc,
    domain: &[RatFunc],
    params: &[String],
    dim: usize,
    opts: &PositivityOptions,
) -> PositivityVerdict {
    let mut density = opts
        .density
        .unwrap_or_else(|| (opts.min_points as f64).powf(1.0 / dim as f64).ceil() as usize + 1);
    loop {
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut total = 0usize;
        let mut witness: Option<Vec<(String, String)>> = None;
        let mut first_sign: Option<bool> = None;
        // grid over (0, 4)^dim, half-offset to stay interior, plus
        // near-boundary shells at 1/1000 and 100 on each axis
        let mut axis_values: Vec<BigRational> = (0..density)
            .map(|i| ratio(4 * (2 * i as i64 + 1), 2 * density as i64))
            .collect();
        axis_values.push(ratio(1, 1000));
        axis_values.push(rat(100));
        let m = axis_values.len();
        let mut idx = vec![0usize; dim];
        'outer: loop {
            let mut pt = BTreeMap::new();
            for (k, var) in params.iter().enumerate() {
                pt.insert(var.clone(), axis_values[idx[k]].clone());
            }
            pt.insert("pi".to_string(), ratio(355, 113));
            if in_domain(domain, &pt) {
                total += 1;
                if let Ok(v) = f.eval(&pt) {
                    let sign = v.is_positive();
                    if v.is_zero() {
                        witness = Some(render_point(params, &pt));
                    } else {
                        match first_sign {
                            None => first_sign = Some(sign),
                            Some(s) if s != sign && witness.is_none() => {
                                witness = Some(render_point(params, &pt));
                            }
                            _ => {}
                        }
                        if sign {
                            pos += 1;
                        } else {
                            neg += 1;
                        }
                    }
                }
            }
            // advance the multi-index
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == dim {
                    break 'outer;
                }
            }
        }
        if total < opts.min_points && opts.density.is_none() && density < 4 * opts.min_points {
            density *= 2;
            continue;
        }
        return if let Some(w) = witness {
            PositivityVerdict::SampledSignChange {
                points: total,
                witness: w,
            }
        } else if neg == 0 && pos > 0 {
            PositivityVerdict::SampledStrictlyPositive { points: total }
        } else if pos == 0 && neg > 0 {
            PositivityVerdict::SampledStrictlyNegative { points: total }
        } else {
            PositivityVerdict::SampledSignChange {
                points: total,
                witness: Vec::new(),
            }
        };
    }
}

fn render_point(
    params: &[String],
    pt: &BTreeMap<String, BigRational>,
) -> Vec<(String, String)> {
    params
        .iter()
        .map(|p| (p.clone(), crate::exactmath::rat_to_string(&pt[p])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_ratfunc as rf;

    #[test]
    fn univariate_exact_verdicts() {
        let f = rf("4*pi/(a - a^2)").unwrap();
        let domain = vec![rf("a").unwrap(), rf("1 - a").unwrap()];
        assert_eq!(
            positivity_report(&f, &domain, &PositivityOptions::default()).unwrap(),
            PositivityVerdict::ExactStrictlyPositive
        );
        let g = rf("(a - 1/2)").unwrap();
        assert_eq!(
            positivity_report(&g, &domain, &PositivityOptions::default()).unwrap(),
            PositivityVerdict::ExactHasZero
        );
    }

    #[test]
    fn constant_verdicts() {
        let f = rf("24*pi/7").unwrap();
        assert_eq!(
            positivity_report(&f, &[], &PositivityOptions::default()).unwrap(),
            PositivityVerdict::ExactStrictlyPositive
        );
        assert_eq!(
            positivity_report(&RatFunc::zero(), &[], &PositivityOptions::default()).unwrap(),
            PositivityVerdict::IdenticallyZero
        );
    }

    #[test]
    fn sampled_positive_two_params() {
        // (a+b)/(1+a*b) on a,b > 0
        let f = rf("(a + b)/(1 + a*b)").unwrap();
        let domain = vec![rf("a").unwrap(), rf("b").unwrap()];
        let opts = PositivityOptions {
            min_points: 400,
            density: Some(21),
        };
        match positivity_report(&f, &domain, &opts).unwrap() {
            PositivityVerdict::SampledStrictlyPositive { points } => assert!(points >= 400),
            v => panic!("unexpected verdict {v}"),
        }
    }

    #[test]
    fn sampled_sign_change_has_witness() {
        let f = rf("a - b").unwrap();
        let domain = vec![rf("a").unwrap(), rf("b").unwrap()];
        let opts = PositivityOptions {
            min_points: 100,
            density: Some(11),
        };
        match positivity_report(&f, &domain, &opts).unwrap() {
            PositivityVerdict::SampledSignChange { witness, .. } => assert!(!witness.is_empty()),
            v => panic!("unexpected verdict {v}"),
        }
    }
}
