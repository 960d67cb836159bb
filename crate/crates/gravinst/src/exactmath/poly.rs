//! Multivariate polynomials over `BigRational` with a graded-lex term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rat, rat_to_string, BigRational, ExactError};

/// Exponent vector ordered by total degree, then lexicographically on the
/// declared variable list. `BTreeMap` iteration is ascending, so the leading
/// term is the last entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u64 = self.0.iter().map(|&e| e as u64).sum();
        let db: u64 = other.0.iter().map(|&e| e as u64).sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in named variables. Zero coefficients are never stored and
/// every exponent vector has the arity of the variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The polynomial `name` (a single variable with exponent 1).
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), rat(1));
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    /// The constant term (the value, when `is_constant`).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .find(|(m, _)| m.0.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.0.iter().map(|&e| e as u64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        }
    }

    /// Variables that actually occur with positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-expresses the polynomial over exactly the variables that occur,
    /// sorted by name.
    pub fn pruned(&self) -> Self {
        let used = self.used_vars();
        self.remap(&used)
    }

    /// Re-expresses over `new_vars` (must contain every used variable).
    pub fn remap(&self, new_vars: &[String]) -> Self {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exp = vec![0u32; new_vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let j = map[i].expect("remap loses a used variable");
                    exp[j] = e;
                }
            }
            terms.insert(Mono(exp), c.clone());
        }
        MultiPoly {
            vars: new_vars.to_vec(),
            terms,
        }
    }

    /// Common sorted variable list for a binary operation.
    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        vars.sort();
        vars.dedup();
        (a.remap(&vars), b.remap(&vars))
    }

    fn insert_term(terms: &mut BTreeMap<Mono, BigRational>, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let mut terms = a.terms.clone();
        for (m, c) in b.terms {
            Self::insert_term(&mut terms, m, c);
        }
        MultiPoly {
            vars: a.vars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exp: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, Mono(exp), ca * cb);
            }
        }
        MultiPoly {
            vars: a.vars,
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading (graded-lex greatest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact evaluation; every used variable must be bound. Powers of each
    /// variable are computed once up to the maximal exponent.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, ExactError> {
        let mut tables: Vec<Vec<BigRational>> = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
            let mut tab = Vec::with_capacity(max_e + 1);
            tab.push(BigRational::one());
            if max_e > 0 {
                let x = point
                    .get(v)
                    .ok_or_else(|| ExactError::UnboundVariable(v.clone()))?;
                for k in 1..=max_e {
                    let next = &tab[k - 1] * x;
                    tab.push(next);
                }
            }
            tables.push(tab);
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &tables[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact multivariate division; `None` when the quotient does not exist.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        let (mut f, g) = Self::unify(self, g);
        let (glm, glc) = {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut q = BTreeMap::new();
        while !f.is_zero() {
            let (flm, flc) = {
                let (m, c) = f.leading().unwrap();
                (m.clone(), c.clone())
            };
            if flm.0.len() != glm.0.len() {
                return None;
            }
            let mut exp = Vec::with_capacity(flm.0.len());
            for (a, b) in flm.0.iter().zip(&glm.0) {
                if a < b {
                    return None;
                }
                exp.push(a - b);
            }
            let coef = &flc / &glc;
            let mono = Mono(exp);
            let mut t = BTreeMap::new();
            t.insert(mono.clone(), coef.clone());
            let tpoly = MultiPoly {
                vars: f.vars.clone(),
                terms: t,
            };
            f = f.sub(&tpoly.mul(&g));
            Self::insert_term(&mut q, mono, coef);
        }
        Some(MultiPoly {
            vars: g.vars,
            terms: q,
        })
    }

    /// Coefficients as a univariate polynomial in `var` (ascending degree),
    /// with coefficients over the remaining variables.
    pub fn univariate_coeffs(&self, var: &str) -> Vec<MultiPoly> {
        let idx = self.vars.iter().position(|v| v == var);
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![
            MultiPoly {
                vars: rest.clone(),
                terms: BTreeMap::new()
            };
            deg + 1
        ];
        for (m, c) in &self.terms {
            let (d, exp): (usize, Vec<u32>) = match idx {
                None => (0, m.0.clone()),
                Some(i) => {
                    let mut e = m.0.clone();
                    let d = e.remove(i);
                    (d as usize, e)
                }
            };
            Self::insert_term(&mut coeffs[d].terms, Mono(exp), c.clone());
        }
        coeffs
    }

    /// Rebuilds from univariate coefficients in `var`.
    pub fn from_univariate_coeffs(coeffs: &[MultiPoly], var: &str) -> MultiPoly {
        let x = MultiPoly::var(var);
        let mut acc = MultiPoly::zero();
        let mut xp = MultiPoly::one();
        for c in coeffs {
            acc = acc.add(&c.mul(&xp));
            xp = xp.mul(&x);
        }
        acc
    }

    /// GCD, normalized to leading coefficient 1. Shared monomial factors are
    /// stripped first (this removes the formal `pi` and bare parameter
    /// factors cheaply); the rest is content + univariate recursion in the
    /// last declared variable, with an integer-coefficient primitive
    /// pseudo-remainder sequence for the univariate steps.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized_lead_one();
        }
        if b.is_zero() {
            return a.normalized_lead_one();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (mut a, mut b) = Self::unify(&a.pruned(), &b.pruned());
        // shared monomial factors
        let vars = a.vars.clone();
        let mut mono_factor = Self::one();
        for v in &vars {
            let (ka, fa) = a.factor_out_var(v);
            let (kb, fb) = b.factor_out_var(v);
            let k = ka.min(kb);
            if k > 0 {
                mono_factor = mono_factor.mul(&Self::var(v).pow(k));
            }
            if ka > 0 || kb > 0 {
                // keep the non-common remainder of the power on each side
                a = fa.mul(&Self::var(v).pow(ka - k));
                b = fb.mul(&Self::var(v).pow(kb - k));
            }
        }
        let core = Self::gcd_core(&a.pruned().int_scaled(), &b.pruned().int_scaled());
        mono_factor.mul(&core).normalized_lead_one()
    }

    fn gcd_core(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (a, b) = Self::unify(&a.pruned(), &b.pruned());
        if a.vars.is_empty() || b.vars.is_empty() {
            return Self::one();
        }
        let var = a.vars.last().unwrap().clone();
        let da = a.degree_in(&var);
        let db = b.degree_in(&var);
        if da == 0 && db == 0 {
            let ra = a.pruned();
            let rb = b.pruned();
            if ra.vars.len() < a.vars.len() || rb.vars.len() < b.vars.len() {
                return Self::gcd_core(&ra, &rb);
            }
            return Self::one();
        }
        // quick divisor checks
        if let Some(_q) = a.div_exact(&b) {
            return b;
        }
        if let Some(_q) = b.div_exact(&a) {
            return a;
        }
        let ca = a.content_wrt(&var);
        let cb = b.content_wrt(&var);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let cont_gcd = Self::gcd_core(&ca, &cb);
        let pp_gcd = if Self::specialized_gcd_is_constant(&pa, &pb, &var) {
            Self::one()
        } else if let Some(g) = Self::gcd_heuristic(&pa, &pb) {
            g
        } else {
            Self::primitive_prs_gcd(&pa, &pb, &var)
        };
        cont_gcd.mul(&pp_gcd)
    }

    /// Integer height of a polynomial with integer coefficients.
    fn height(&self) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let mut h = BigInt::from(0);
        for c in self.terms.values() {
            let a = c.numer().abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Substitutes an integer for a variable.
    fn substitute_int(&self, var: &str, value: &num_bigint::BigInt) -> Self {
        let coeffs = self.univariate_coeffs(var);
        let x = BigRational::from_integer(value.clone());
        let mut acc = MultiPoly::zero();
        let mut power = BigRational::one();
        for c in &coeffs {
            acc = acc.add(&c.scale(&power));
            power *= &x;
        }
        acc
    }

    /// Balanced remainder of every coefficient modulo xi; returns
    /// (digit, quotient) with self = digit + xi * quotient.
    fn smod_digit(&self, xi: &num_bigint::BigInt) -> (Self, Self) {
        use num_bigint::BigInt;
        let half = xi / BigInt::from(2);
        let mut digit = BTreeMap::new();
        let mut quot = BTreeMap::new();
        for (m, c) in &self.terms {
            let n = c.numer().clone();
            let mut r = n.clone() % xi;
            if r < BigInt::from(0) {
                r += xi;
            }
            if r > half {
                r -= xi;
            }
            let q = (n - &r) / xi;
            if r != BigInt::from(0) {
                digit.insert(m.clone(), BigRational::from_integer(r));
            }
            if q != BigInt::from(0) {
                quot.insert(m.clone(), BigRational::from_integer(q));
            }
        }
        (
            MultiPoly {
                vars: self.vars.clone(),
                terms: digit,
            },
            MultiPoly {
                vars: self.vars.clone(),
                terms: quot,
            },
        )
    }

    /// Heuristic gcd by integer evaluation and balanced reconstruction,
    /// verified by exact division; the cofactors are certified coprime by a
    /// specialization bound, so a success is the true gcd. Inputs must have
    /// integer coefficients.
    fn gcd_heuristic(a: &Self, b: &Self) -> Option<Self> {
        let g = Self::heu(a, b, 0)?;
        let qa = a.div_exact(&g)?;
        let qb = b.div_exact(&g)?;
        // maximality certificate: the cofactors must be coprime
        if qa.is_constant() || qb.is_constant() {
            return Some(g);
        }
        let shared: Vec<String> = qa
            .used_vars()
            .into_iter()
            .filter(|v| qb.used_vars().contains(v))
            .collect();
        match shared.last() {
            // nonconstant polynomials in disjoint variables are coprime
            None => Some(g),
            Some(var) => {
                if Self::specialized_gcd_is_constant(&qa, &qb, var) {
                    Some(g)
                } else {
                    None
                }
            }
        }
    }

    fn heu(a: &Self, b: &Self, depth: usize) -> Option<Self> {
        use num_bigint::BigInt;
        if depth > 8 {
            return None;
        }
        let mut vars = a.used_vars();
        vars.extend(b.used_vars());
        vars.sort();
        vars.dedup();
        if vars.is_empty() {
            let ga = a.constant_term().numer().clone();
            let gb = b.constant_term().numer().clone();
            return Some(Self::constant(BigRational::from_integer(ga.gcd(&gb))));
        }
        let var = vars.last().unwrap().clone();
        let ha = a.height();
        let hb = b.height();
        let mut xi: BigInt = BigInt::from(2) * if ha < hb { ha } else { hb } + BigInt::from(29);
        for _ in 0..6 {
            let fa = a.substitute_int(&var, &xi);
            let fb = b.substitute_int(&var, &xi);
            if fa.is_zero() || fb.is_zero() {
                xi = &xi * BigInt::from(73) / BigInt::from(32) + BigInt::from(1);
                continue;
            }
            if let Some(h) = Self::heu(&fa, &fb, depth + 1) {
                // reconstruct in balanced base xi
                let mut gcand = Self::zero();
                let mut rest = h;
                let mut power = 0u32;
                let bound = a.degree_in(&var).min(b.degree_in(&var)) + 1;
                let mut ok = true;
                while !rest.is_zero() {
                    if power > bound {
                        ok = false;
                        break;
                    }
                    let (digit, quot) = rest.smod_digit(&xi);
                    gcand = gcand.add(&digit.mul(&Self::var(&var).pow(power)));
                    rest = quot;
                    power += 1;
                }
                if ok && !gcand.is_zero() {
                    let gcand = gcand.int_scaled();
                    if a.div_exact(&gcand).is_some() && b.div_exact(&gcand).is_some() {
                        return Some(gcand);
                    }
                }
            }
            xi = &xi * BigInt::from(73) / BigInt::from(32) + BigInt::from(1);
        }
        None
    }

    /// Degree bound by specialization: evaluating every variable but `var`
    /// at a point where both leading coefficients survive, the univariate
    /// gcd degree bounds the true gcd degree in `var`. A degree-0 result for
    /// primitive inputs proves the gcd is a unit.
    fn specialized_gcd_is_constant(f: &Self, g: &Self, var: &str) -> bool {
        use super::roots::UniPoly;
        let others: Vec<String> = f
            .vars
            .iter()
            .chain(g.vars.iter())
            .filter(|v| *v != var)
            .cloned()
            .collect();
        // small deterministic pseudo-random points
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 251 + 2) as i64
        };
        'attempt: for _ in 0..6 {
            let mut point = BTreeMap::new();
            for v in &others {
                point.insert(v.clone(), rat(next()));
            }
            let fc = f.univariate_coeffs(var);
            let gc = g.univariate_coeffs(var);
            let lf = fc.last().unwrap().eval(&point);
            let lg = gc.last().unwrap().eval(&point);
            match (lf, lg) {
                (Ok(lf), Ok(lg)) => {
                    if lf.is_zero() || lg.is_zero() {
                        continue 'attempt;
                    }
                }
                _ => continue 'attempt,
            }
            let eval_coeffs = |cs: &[MultiPoly]| -> Option<Vec<BigRational>> {
                cs.iter().map(|c| c.eval(&point).ok()).collect()
            };
            let (fu, gu) = match (eval_coeffs(&fc), eval_coeffs(&gc)) {
                (Some(a), Some(b)) => (UniPoly::new(a), UniPoly::new(b)),
                _ => continue 'attempt,
            };
            return UniPoly::gcd_of(&fu, &gu).degree() == 0;
        }
        false
    }

    /// Scales to integer coefficients with integer content 1.
    fn int_scaled(&self) -> Self {
        use num_bigint::BigInt;
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::from(1);
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::from(0);
        for c in self.terms.values() {
            let n = c.numer() * &denom_lcm / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let scale = BigRational::new(denom_lcm, num_gcd);
        self.scale(&scale)
    }

    /// Content with respect to `var`: gcd of the univariate coefficients.
    fn content_wrt(&self, var: &str) -> MultiPoly {
        let coeffs = self.univariate_coeffs(var);
        let mut g = MultiPoly::zero();
        for c in &coeffs {
            if !c.is_zero() {
                g = if g.is_zero() {
                    c.clone()
                } else {
                    Self::gcd(&g, c)
                };
                if g.is_constant() {
                    break;
                }
            }
        }
        if g.is_zero() {
            MultiPoly::one()
        } else {
            g
        }
    }

    fn primitive_part_wrt(&self, var: &str) -> MultiPoly {
        let c = self.content_wrt(var);
        self.div_exact(&c).expect("content divides")
    }

    fn primitive_prs_gcd(f: &Self, g: &Self, var: &str) -> Self {
        let mut f = f.int_scaled();
        let mut g = g.int_scaled();
        if f.degree_in(var) < g.degree_in(var) {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            if g.degree_in(var) == 0 {
                // A nonzero "constant" (in var) divides only via content,
                // already factored out: primitive gcd is 1.
                return Self::one();
            }
            let r = Self::pseudo_rem(&f, &g, var);
            f = g;
            g = if r.is_zero() {
                r
            } else {
                r.int_scaled().primitive_part_wrt(var).int_scaled()
            };
        }
        f.primitive_part_wrt(var)
    }

    /// Pseudo-remainder of `f` by `g` in `var`.
    fn pseudo_rem(f: &Self, g: &Self, var: &str) -> Self {
        let df = f.degree_in(var);
        let dg = g.degree_in(var);
        debug_assert!(dg > 0 && df >= dg);
        let gc = g.univariate_coeffs(var);
        let lg = gc.last().unwrap().clone();
        let mut r = f.clone();
        while !r.is_zero() && r.degree_in(var) >= dg {
            let dr = r.degree_in(var);
            let rc = r.univariate_coeffs(var);
            let lr = rc.last().unwrap().clone();
            // r <- lg*r - lr*x^(dr-dg)*g
            let shift = MultiPoly::var(var).pow(dr - dg);
            r = r.mul(&lg).sub(&g.mul(&shift).mul(&lr));
        }
        r
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn normalized_lead_one(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = BigRational::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Self {
        let idx = match self.vars.iter().position(|v| v == var) {
            Some(i) => i,
            None => return MultiPoly::zero(),
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e > 0 {
                let mut exp = m.0.clone();
                exp[idx] = e - 1;
                Self::insert_term(&mut terms, Mono(exp), c * rat(e as i64));
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let coeffs = self.univariate_coeffs(var);
        let mut acc = MultiPoly::zero();
        let mut vp = MultiPoly::one();
        for c in &coeffs {
            acc = acc.add(&c.mul(&vp));
            vp = vp.mul(value);
        }
        acc
    }

    /// Factors out the largest power of `var`: returns `(k, self / var^k)`.
    pub fn factor_out_var(&self, var: &str) -> (u32, MultiPoly) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let idx = match self.vars.iter().position(|v| v == var) {
            Some(i) => i,
            None => return (0, self.clone()),
        };
        let k = self.terms.keys().map(|m| m.0[idx]).min().unwrap_or(0);
        if k == 0 {
            return (0, self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exp = m.0.clone();
            exp[idx] -= k;
            terms.insert(Mono(exp), c.clone());
        }
        (
            k,
            MultiPoly {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    /// Terms in descending graded-lex order as (coefficient, exponents).
    pub fn terms_desc(&self) -> Vec<(BigRational, Vec<u32>)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (c.clone(), m.0.clone()))
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: descending graded-lex terms, explicit `^`
    /// exponents, `*` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut mono = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    if !mono.is_empty() {
                        mono.push('*');
                    }
                    mono.push_str(&self.vars[i]);
                    if e > 1 {
                        mono.push_str(&format!("^{e}"));
                    }
                }
            }
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), mono)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<(String, Vec<u32>)>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (rat_to_string(c), m.0.clone()))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for (c, exp) in repr.terms {
            if exp.len() != repr.vars.len() {
                return Err(D::Error::custom("exponent arity mismatch"));
            }
            let c = super::parse_rat(&c).map_err(D::Error::custom)?;
            MultiPoly::insert_term(&mut terms, Mono(exp), c);
        }
        Ok(MultiPoly {
            vars: repr.vars,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_poly;

    #[test]
    fn graded_lex_leading_term() {
        // a^2 < a*b under lex with a<b? graded-lex: both degree 2; lex on
        // exponents (2,0) vs (1,1): (2,0) > (1,1), so a^2 leads.
        let p = parse_poly("a^2 + a*b").unwrap();
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.0, vec![2, 0]);
        // degree dominates: b^3 beats a^2*... of lower total degree
        let q = parse_poly("b^3 + 5*a^2").unwrap();
        assert_eq!(q.leading().unwrap().0 .0, vec![0, 3]);
    }

    #[test]
    fn arithmetic_and_display() {
        let p = parse_poly("(a - 1)*(a + 1)").unwrap();
        assert_eq!(p.to_string(), "a^2 - 1");
        let q = parse_poly("a^2 - 1").unwrap();
        assert_eq!(p, q);
        let r = parse_poly("3*a^6 - 18*a^5 + 3*a^4").unwrap();
        assert_eq!(r.to_string(), "3*a^6 - 18*a^5 + 3*a^4");
    }

    #[test]
    fn exact_division() {
        let p = parse_poly("a^2 - 1").unwrap();
        let d = parse_poly("a - 1").unwrap();
        assert_eq!(p.div_exact(&d).unwrap(), parse_poly("a + 1").unwrap());
        assert!(p.div_exact(&parse_poly("a - 2").unwrap()).is_none());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let f = parse_poly("(a + b)^2 * (a - b)").unwrap();
        let g = parse_poly("(a + b) * (a^2 + 1)").unwrap();
        let h = MultiPoly::gcd(&f, &g);
        assert_eq!(h, parse_poly("a + b").unwrap());
    }

    #[test]
    fn gcd_multivariate_with_pi() {
        let f = parse_poly("pi*a^2 - pi").unwrap();
        let g = parse_poly("a^2*pi + a*pi").unwrap();
        let h = MultiPoly::gcd(&f, &g);
        // common factor pi*(a+1), normalized to leading coeff 1
        assert_eq!(h, parse_poly("a*pi + pi").unwrap());
    }

    #[test]
    fn eval_exact() {
        let p = parse_poly("a^2*b - 3").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), crate::exactmath::ratio(1, 2));
        pt.insert("b".to_string(), crate::exactmath::rat(8));
        assert_eq!(p.eval(&pt).unwrap(), crate::exactmath::rat(-1));
    }

    #[test]
    fn serde_round_trip_is_bit_exact() {
        let p = parse_poly("-48*a*pi + 3/2*a^2 - 7").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let q: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, q);
        assert_eq!(json, serde_json::to_string(&q).unwrap());
    }

    #[test]
    fn display_parse_round_trip() {
        let p = parse_poly("9*a^3 - 26*a^2 + 24*a - 8").unwrap();
        let q = parse_poly(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }
}
