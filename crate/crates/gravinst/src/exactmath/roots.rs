//! Exact real-root isolation by Sturm sequences, and sign certificates for
//! univariate rational functions on open rational intervals.

use num_traits::{One, Signed, Zero};

use super::{BigRational, ExactError, MultiPoly, RatFunc};

/// Dense univariate polynomial over the rationals, `coeffs[i]` on `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Extracts a univariate polynomial (in its single used variable). A
    /// constant polynomial is accepted as degree 0.
    pub fn from_multipoly(p: &MultiPoly) -> Result<(UniPoly, Option<String>), ExactError> {
        let used = p.used_vars();
        if used.len() > 1 {
            return Err(ExactError::NotUnivariate(used));
        }
        let var = used.first().cloned();
        let coeffs = match &var {
            None => vec![p.constant_term()],
            Some(v) => p
                .univariate_coeffs(v)
                .into_iter()
                .map(|c| c.constant_term())
                .collect(),
        };
        Ok((UniPoly::new(coeffs), var))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::new(Vec::new());
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean remainder.
    fn rem(&self, g: &UniPoly) -> UniPoly {
        let mut r = self.coeffs.clone();
        let dg = g.degree();
        let lg = g.coeffs.last().expect("nonzero divisor").clone();
        while r.len() > dg {
            let lr = r.last().unwrap().clone();
            if lr.is_zero() {
                r.pop();
                continue;
            }
            let shift = r.len() - 1 - dg;
            let q = lr / lg.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                let v = r[shift + i].clone() - &q * gc;
                r[shift + i] = v;
            }
            // leading entry is now exactly zero
            r.pop();
        }
        UniPoly::new(r)
    }

    fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = BigRational::one() / l.clone();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Scales by a positive constant so the leading coefficient has
    /// absolute value 1 (sign-preserving, for Sturm chains).
    fn positive_monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = BigRational::one() / l.abs();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean gcd (monic), for external degree checks.
    pub fn gcd_of(a: &UniPoly, b: &UniPoly) -> UniPoly {
        Self::gcd(a, b)
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut f = a.clone();
        let mut g = b.clone();
        while !g.is_zero() {
            let r = f.rem(&g);
            f = g;
            g = r.monic();
        }
        f.monic()
    }

    /// Square-free part `f / gcd(f, f')`.
    pub fn square_free(&self) -> UniPoly {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = UniPoly::gcd(self, &self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, g: &UniPoly) -> UniPoly {
        let mut r = self.coeffs.clone();
        let dg = g.degree();
        let lg = g.coeffs.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dg)];
        while r.len() > dg {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - dg;
            let c = lr / lg.clone();
            q[shift] = c.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                let v = r[shift + i].clone() - &c * gc;
                r[shift + i] = v;
            }
            r.pop();
        }
        UniPoly::new(q)
    }

    /// Removes a root at `x` (exact synthetic division), repeatedly.
    fn deflate_at(&self, x: &BigRational) -> UniPoly {
        let mut f = self.clone();
        while !f.is_zero() && f.eval(x).is_zero() {
            // divide by (X - x)
            let divisor = UniPoly::new(vec![-x.clone(), BigRational::one()]);
            f = f.div_exact(&divisor);
        }
        f
    }
}

/// Sturm chain of the square-free part.
struct Sturm {
    chain: Vec<UniPoly>,
}

impl Sturm {
    fn new(f: &UniPoly) -> Self {
        let f = f.square_free();
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let neg = UniPoly::new(r.coeffs.iter().map(|c| -c).collect());
            chain.push(neg.positive_monic());
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots strictly inside `(lo, hi)`, assuming the
    /// chain head does not vanish at either endpoint.
    fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let (a, b) = (self.variations(lo), self.variations(hi));
        debug_assert!(a >= b, "Sturm variation count not monotone");
        a.saturating_sub(b)
    }
}

/// Isolating intervals for the distinct real roots of `p` in the open
/// interval `(lo, hi)`. Intervals are pairwise disjoint and each contains
/// exactly one root; a root hit exactly during bisection is returned as the
/// degenerate interval `(r, r)`.
pub fn isolate_real_roots(
    p: &MultiPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Vec<(BigRational, BigRational)>, ExactError> {
    let (f, _) = UniPoly::from_multipoly(p)?;
    if f.is_zero() {
        return Err(ExactError::NotUnivariate(vec!["zero polynomial".into()]));
    }
    Ok(isolate_unipoly(&f, lo, hi))
}

fn isolate_unipoly(
    f: &UniPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    if lo >= hi || f.degree() == 0 {
        return Vec::new();
    }
    // strip roots at the open endpoints so Sturm counts the interior only
    let f = f.deflate_at(lo).deflate_at(hi);
    if f.is_zero() || f.degree() == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(&f);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_open(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                if f.eval(&mid).is_zero() {
                    out.push((mid.clone(), mid.clone()));
                    let g = f.deflate_at(&mid);
                    out.extend(isolate_unipoly(&g, &a, &mid));
                    out.extend(isolate_unipoly(&g, &mid, &b));
                } else {
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}


/// Verdict of an exact sign analysis on an open interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVerdict {
    StrictlyPositive,
    StrictlyNegative,
    HasZero,
    HasPole,
    IdenticallyZero,
}

/// Exact sign of a univariate rational function on `(lo, hi)`, with `pi`
/// treated as a positive formal symbol (any net power of pi is factored out
/// and ignored). Root isolation decides zero/pole presence; one interior
/// sample fixes the sign.
pub fn sign_on_interval(
    f: &RatFunc,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<SignVerdict, ExactError> {
    if f.is_zero() {
        return Ok(SignVerdict::IdenticallyZero);
    }
    let (_, g) = f.factor_out("pi");
    let (num, _) = UniPoly::from_multipoly(g.num())?;
    let (den, _) = UniPoly::from_multipoly(g.den())?;
    {
        // num and den must be univariate in the same variable
        let mut vars = g.num().used_vars();
        vars.extend(g.den().used_vars());
        vars.sort();
        vars.dedup();
        if vars.len() > 1 {
            return Err(ExactError::NotUnivariate(vars));
        }
    }
    if !isolate_unipoly(&den, lo, hi).is_empty() {
        return Ok(SignVerdict::HasPole);
    }
    if !isolate_unipoly(&num, lo, hi).is_empty() {
        return Ok(SignVerdict::HasZero);
    }
    // sample the midpoint; endpoints themselves may be zeros of num or den,
    // which is fine for an open interval
    let mid = (lo + hi) / BigRational::from_integer(2.into());
    let dv = den.eval(&mid);
    if dv.is_zero() {
        return Ok(SignVerdict::HasPole);
    }
    let nv = num.eval(&mid);
    if nv.is_zero() {
        return Ok(SignVerdict::HasZero);
    }
    Ok(if (nv / dv).is_positive() {
        SignVerdict::StrictlyPositive
    } else {
        SignVerdict::StrictlyNegative
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_poly, parse_ratfunc, rat, ratio};

    #[test]
    fn sqrt2_isolated() {
        let p = parse_poly("a^2 - 2").unwrap();
        let roots = isolate_real_roots(&p, &rat(0), &rat(2)).unwrap();
        assert_eq!(roots.len(), 1);
        let (l, r) = &roots[0];
        // 1.414... lies inside
        assert!(l < &ratio(1415, 1000));
        assert!(r > &ratio(1414, 1000));
    }

    #[test]
    fn case_3a_numerator_has_no_root_in_01() {
        let p = parse_poly("9*a^3 - 26*a^2 + 24*a - 8").unwrap();
        let roots = isolate_real_roots(&p, &rat(0), &rat(1)).unwrap();
        assert_eq!(roots, vec![]);
    }

    #[test]
    fn open_interval_excludes_endpoint_roots() {
        // a - a^2 = a(1-a): roots at 0 and 1 only
        let p = parse_poly("a - a^2").unwrap();
        assert_eq!(isolate_real_roots(&p, &rat(0), &rat(1)).unwrap(), vec![]);
        // widen: the roots appear
        assert_eq!(
            isolate_real_roots(&p, &ratio(-1, 2), &ratio(3, 2))
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn multiple_close_roots_separate() {
        // (a-1/3)(a-1/2)(a-2/3)
        let p = parse_poly("(3*a - 1)*(2*a - 1)*(3*a - 2)").unwrap();
        let roots = isolate_real_roots(&p, &rat(0), &rat(1)).unwrap();
        assert_eq!(roots.len(), 3);
        for w in roots.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }

    #[test]
    fn non_univariate_rejected() {
        let p = parse_poly("a*b").unwrap();
        assert!(matches!(
            isolate_real_roots(&p, &rat(0), &rat(1)),
            Err(ExactError::NotUnivariate(_))
        ));
    }

    #[test]
    fn sign_verdicts() {
        let f = parse_ratfunc("4*pi/(a - a^2)").unwrap();
        assert_eq!(
            sign_on_interval(&f, &rat(0), &rat(1)).unwrap(),
            SignVerdict::StrictlyPositive
        );
        let g = parse_ratfunc("(a - 1/2)/a").unwrap();
        assert_eq!(
            sign_on_interval(&g, &rat(0), &rat(1)).unwrap(),
            SignVerdict::HasZero
        );
        let h = parse_ratfunc("1/(a - 1/2)").unwrap();
        assert_eq!(
            sign_on_interval(&h, &rat(0), &rat(1)).unwrap(),
            SignVerdict::HasPole
        );
        let n = parse_ratfunc("-pi^2*(a^2 + 1)").unwrap();
        assert_eq!(
            sign_on_interval(&n, &rat(-5), &rat(5)).unwrap(),
            SignVerdict::StrictlyNegative
        );
    }

    #[test]
    fn root_isolation_count_matches_dense_sampling_oracle() {
        // randomized degree <= 6 polynomials vs a sign-change sampling oracle
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(1..=6usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let mut p = MultiPoly::zero();
            for (i, &c) in coeffs.iter().enumerate() {
                p = p.add(
                    &MultiPoly::var("a")
                        .pow(i as u32)
                        .scale(&rat(c)),
                );
            }
            if p.is_zero() || p.total_degree() == 0 {
                continue;
            }
            let lo = rat(-4);
            let hi = rat(4);
            let isolated = isolate_real_roots(&p, &lo, &hi).unwrap();
            // dense sampling oracle: count strict sign changes over a fine grid;
            // equals the root count when no grid point is a root and roots are
            // farther apart than the step (overwhelmingly true here, and any
            // rare collision would only make the oracle a lower bound)
            let steps = 4096i64;
            let mut changes = 0usize;
            let (uni, _) = UniPoly::from_multipoly(&p).unwrap();
            let mut last: Option<bool> = None;
            let mut on_grid_root = false;
            for k in 0..=steps {
                let x = &lo + (&hi - &lo) * ratio(k, steps);
                let v = uni.eval(&x);
                if v.is_zero() {
                    on_grid_root = true;
                    break;
                }
                let s = v.is_positive();
                if let Some(prev) = last {
                    if prev != s {
                        changes += 1;
                    }
                }
                last = Some(s);
            }
            if on_grid_root {
                continue;
            }
            // square-free distinct-root count >= sign changes; for random
            // polynomials with simple roots they agree
            assert!(
                isolated.len() >= changes,
                "p = {p}, isolated = {}, sign changes = {}",
                isolated.len(),
                changes
            );
            if uni.square_free().monic() == uni.monic() {
                // all roots simple: multiplicity-one crossings only, but
                // even-multiplicity touches are excluded, so equality can
                // still fail only on double roots; simple-rooted case is exact
                assert_eq!(isolated.len(), changes, "p = {p}");
            }
        }
    }
}
