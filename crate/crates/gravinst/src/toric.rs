//! Quotient-singularity catalog and equivariant resolution data.
//!
//! Cyclic quotients `C^2/L(q,p)` resolve to a chain of rational curves whose
//! self-intersections come from the Hirzebruch-Jung continued fraction of
//! `q/p`; the fan vertices obey `v_{i+1} = e_i v_i - v_{i-1}` and lifted
//! `C^*`-weights obey the same recursion. Non-cyclic groups resolve to a
//! star: three chains meeting one central curve.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{rat, rat_to_string, BigRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cannot parse group label `{0}`")]
    ParseLabel(String),
    #[error("weights do not determine a group: {0}")]
    Recover(String),
}

/// The cyclic group `L(q,p)`, generated by `diag(e^{2πi/p}, e^{2πiq/p})`.
/// `p = 1` is the trivial group (empty resolution).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicGroup {
    pub q: u64,
    pub p: u64,
}

impl CyclicGroup {
    pub fn new(q: u64, p: u64) -> Result<Self, ToricError> {
        if p == 0 {
            return Err(ToricError::InvalidGroup("p must be positive".into()));
        }
        if p == 1 {
            return Ok(CyclicGroup { q: 0, p: 1 });
        }
        let q = q % p;
        if q == 0 || q.gcd(&p) != 1 {
            return Err(ToricError::InvalidGroup(format!(
                "L({q},{p}) requires gcd(q,p)=1 and 1 <= q < p"
            )));
        }
        Ok(CyclicGroup { q, p })
    }

    /// Normalizes a possibly negative first argument, as in the `L(-m, n)`
    /// entries of the star-resolution table.
    pub fn new_signed(q: i64, p: u64) -> Result<Self, ToricError> {
        let pp = p as i64;
        if pp <= 0 {
            return Err(ToricError::InvalidGroup("p must be positive".into()));
        }
        let q = q.rem_euclid(pp) as u64;
        Self::new(q, p)
    }

    pub fn is_trivial(&self) -> bool {
        self.p == 1
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn label(&self) -> String {
        format!("L({},{})", self.q, self.p)
    }
}

/// Non-cyclic finite subgroups of `U(2)` acting freely on `S^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonCyclicFamily {
    BinaryDihedral,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    J2,
    J3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NonCyclicGroup {
    pub family: NonCyclicFamily,
    pub m: u64,
    /// Only binary-dihedral and J2 take the second parameter.
    pub n: Option<u64>,
}

impl NonCyclicGroup {
    pub fn new(family: NonCyclicFamily, m: u64, n: Option<u64>) -> Result<Self, ToricError> {
        use NonCyclicFamily::*;
        if m == 0 {
            return Err(ToricError::InvalidGroup("m must be positive".into()));
        }
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(ToricError::InvalidGroup(format!(
                    "{family:?}(m={m},n={n:?}) violates {what}"
                )))
            }
        };
        match family {
            BinaryDihedral => {
                let n = n.ok_or_else(|| ToricError::InvalidGroup("missing n".into()))?;
                check(n >= 1 && m.gcd(&(2 * n)) == 1, "(m,2n)=1")?;
            }
            BinaryTetrahedral | BinaryOctahedral => check(m.gcd(&6) == 1, "(m,6)=1")?,
            BinaryIcosahedral => check(m.gcd(&30) == 1, "(m,30)=1")?,
            J2 => {
                let n = n.ok_or_else(|| ToricError::InvalidGroup("missing n".into()))?;
                check(n >= 1 && m % 2 == 0 && m.gcd(&n) == 1, "(m,2)=2 and (m,n)=1")?;
            }
            J3 => check(m.gcd(&6) == 3, "(m,6)=3")?,
        }
        Ok(NonCyclicGroup { family, m, n })
    }

    /// Group order per the catalog table.
    pub fn order(&self) -> u64 {
        use NonCyclicFamily::*;
        match self.family {
            BinaryDihedral | J2 => 4 * self.m * self.n.unwrap(),
            BinaryTetrahedral | J3 => 24 * self.m,
            BinaryOctahedral => 48 * self.m,
            BinaryIcosahedral => 120 * self.m,
        }
    }

    pub fn label(&self) -> String {
        use NonCyclicFamily::*;
        match self.family {
            BinaryDihedral => format!("D*({},{})", self.m, self.n.unwrap()),
            BinaryTetrahedral => format!("T*({})", self.m),
            BinaryOctahedral => format!("O*({})", self.m),
            BinaryIcosahedral => format!("I*({})", self.m),
            J2 => format!("J2({},{})", self.m, self.n.unwrap()),
            J3 => format!("J3({})", self.m),
        }
    }

    /// The three cyclic groups whose chains form the star's arms.
    pub fn arm_groups(&self) -> [CyclicGroup; 3] {
        use NonCyclicFamily::*;
        let m = self.m as i64;
        let l = |q: i64, p: u64| CyclicGroup::new_signed(q, p).expect("arm group valid");
        match self.family {
            BinaryDihedral | J2 => {
                let n = self.n.unwrap();
                [l(1, 2), l(1, 2), l(-m, n)]
            }
            BinaryTetrahedral => [l(1, 2), l(-m, 3), l(-m, 3)],
            BinaryOctahedral => [l(1, 2), l(-m, 3), l(-m, 4)],
            BinaryIcosahedral => [l(1, 2), l(-m, 3), l(-m, 5)],
            J3 => [l(1, 2), l(1, 3), l(2, 3)],
        }
    }
}

/// Any group label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupLabel {
    Cyclic(CyclicGroup),
    NonCyclic(NonCyclicGroup),
}

impl GroupLabel {
    pub fn order(&self) -> u64 {
        match self {
            GroupLabel::Cyclic(g) => g.order(),
            GroupLabel::NonCyclic(g) => g.order(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupLabel::Cyclic(g) => g.label(),
            GroupLabel::NonCyclic(g) => g.label(),
        }
    }
}

/// Parses `L(q,p)`, `D*(m,n)`, `T*(m)`, `O*(m)`, `I*(m)`, `J2(m,n)`, `J3(m)`.
pub fn parse_group_label(s: &str) -> Result<GroupLabel, ToricError> {
    let s = s.trim();
    let err = || ToricError::ParseLabel(s.to_string());
    let open = s.find('(').ok_or_else(err)?;
    if !s.ends_with(')') {
        return Err(err());
    }
    let head = &s[..open];
    let args: Vec<i64> = s[open + 1..s.len() - 1]
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    let two = |f: NonCyclicFamily| -> Result<GroupLabel, ToricError> {
        if args.len() != 2 || args[0] < 0 || args[1] < 0 {
            return Err(err());
        }
        Ok(GroupLabel::NonCyclic(NonCyclicGroup::new(
            f,
            args[0] as u64,
            Some(args[1] as u64),
        )?))
    };
    let one = |f: NonCyclicFamily| -> Result<GroupLabel, ToricError> {
        if args.len() != 1 || args[0] < 0 {
            return Err(err());
        }
        Ok(GroupLabel::NonCyclic(NonCyclicGroup::new(
            f,
            args[0] as u64,
            None,
        )?))
    };
    match head {
        "L" => {
            if args.len() != 2 || args[1] <= 0 {
                return Err(err());
            }
            Ok(GroupLabel::Cyclic(CyclicGroup::new_signed(
                args[0],
                args[1] as u64,
            )?))
        }
        "D*" => two(NonCyclicFamily::BinaryDihedral),
        "J2" => two(NonCyclicFamily::J2),
        "T*" => one(NonCyclicFamily::BinaryTetrahedral),
        "O*" => one(NonCyclicFamily::BinaryOctahedral),
        "I*" => one(NonCyclicFamily::BinaryIcosahedral),
        "J3" => one(NonCyclicFamily::J3),
        _ => Err(err()),
    }
}

/// Hirzebruch-Jung expansion `q/p = 1/(e_1 - 1/(e_2 - ...))`, all `e_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HJChain {
    pub e: Vec<u64>,
}

/// Lattice vertices `v_0 .. v_{k+1}` of the minimal-resolution fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanChain {
    pub v: Vec<(i64, i64)>,
}

/// Weights `w_0 .. w_{k+1}` of the lifted action, with the defining data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightChain {
    #[serde(with = "crate::exactmath::ratserde::rat_vec")]
    pub w: Vec<BigRational>,
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub theta: BigRational,
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub tau: BigRational,
}

/// Ceiling-expansion of `q/p` with exact arithmetic.
pub fn hj_expand(g: &CyclicGroup) -> HJChain {
    if g.is_trivial() {
        return HJChain { e: Vec::new() };
    }
    let mut e = Vec::new();
    // x = p/q, then repeatedly e = ceil(x), x <- 1/(e - x)
    let mut num = g.p as i128;
    let mut den = g.q as i128;
    loop {
        // ceil(num/den) with positive den
        let c = (num + den - 1).div_euclid(den);
        e.push(c as u64);
        // next x = 1/(c - num/den) = den / (c*den - num)
        let new_den = c * den - num;
        if new_den == 0 {
            break;
        }
        num = den;
        den = new_den;
    }
    HJChain { e: e.into_iter().collect() }
}

/// Evaluates the nested fraction of a chain back to `q/p`.
pub fn hj_evaluate(chain: &HJChain) -> Option<(u64, u64)> {
    // from the tail: x_k = 1/e_k, x_i = 1/(e_i - x_{i+1})
    let mut num: i128 = 0;
    let mut den: i128 = 1;
    for &e in chain.e.iter().rev() {
        // x = 1/(e - num/den) = den/(e*den - num)
        let nd = e as i128 * den - num;
        num = den;
        den = nd;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    if den <= 0 || num < 0 {
        return None;
    }
    Some((num as u64, den as u64))
}

/// Fan vertices from the expansion: `v_0=(0,1)`, `v_1=(1,0)`,
/// `v_{i+1} = e_i v_i - v_{i-1}`; the endpoint must be `(p,-q)`.
pub fn fan_chain(g: &CyclicGroup) -> FanChain {
    if g.is_trivial() {
        return FanChain {
            v: vec![(0, 1), (1, 0)],
        };
    }
    let e = hj_expand(g).e;
    let mut v: Vec<(i64, i64)> = vec![(0, 1), (1, 0)];
    for &ei in &e {
        let k = v.len();
        let (u1, u2) = v[k - 1];
        let (w1, w2) = v[k - 2];
        v.push((ei as i64 * u1 - w1, ei as i64 * u2 - w2));
    }
    debug_assert_eq!(*v.last().unwrap(), (g.p as i64, -(g.q as i64)));
    FanChain { v }
}

/// Weights of the lifted action `t.(x,y) = (t^θ x, t^τ y)` on the chain:
/// `w_i = θ(p v_{i,V} + q v_{i,U}) - τ v_{i,U}`.
pub fn weight_chain(g: &CyclicGroup, theta: &BigRational, tau: &BigRational) -> WeightChain {
    let fan = fan_chain(g);
    let p = rat(g.p as i64);
    let q = rat(g.q as i64);
    let w = fan
        .v
        .iter()
        .map(|&(vu, vv)| {
            let vu = rat(vu);
            let vv = rat(vv);
            theta * (&p * &vv + &q * &vu) - tau * vu
        })
        .collect();
    WeightChain {
        w,
        theta: theta.clone(),
        tau: tau.clone(),
    }
}

/// Which end of the chain a weight pair was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSide {
    /// `[w_0, -w_1]`, the end meeting the transform of `y = 0`.
    Y0Side,
    /// `[w_k, -w_{k+1}]`, the end meeting the transform of `x = 0`.
    X0Side,
}

/// Recovers `L(q,p)` from an endpoint weight pair together with `(θ, τ)`.
pub fn recover_group(
    pair: (&BigRational, &BigRational),
    theta: &BigRational,
    tau: &BigRational,
    side: ChainSide,
) -> Result<CyclicGroup, ToricError> {
    let to_u64 = |r: &BigRational, what: &str| -> Result<u64, ToricError> {
        if !r.is_integer() || r.is_negative() {
            return Err(ToricError::Recover(format!("{what} = {} not a nonnegative integer", rat_to_string(r))));
        }
        u64::try_from(r.to_integer()).map_err(|_| ToricError::Recover(format!("{what} out of range")))
    };
    match side {
        ChainSide::Y0Side => {
            // pair = [w_0, -w_1]; w_0 = θp, w_1 = θq - τ
            if theta.is_zero() {
                return Err(ToricError::Recover("θ = 0 on the y=0 side".into()));
            }
            let w0 = pair.0;
            let w1 = -pair.1;
            let p = to_u64(&(w0 / theta), "p")?;
            let q = to_u64(&((w1 + tau) / theta), "q")?;
            CyclicGroup::new(q, p)
        }
        ChainSide::X0Side => {
            // pair = [w_k, -w_{k+1}]; w_{k+1} = -τp, w_k = θ - τ q^{-1 mod p}
            if tau.is_zero() {
                return Err(ToricError::Recover("τ = 0 on the x=0 side".into()));
            }
            let wk = pair.0;
            let wk1 = -pair.1;
            let p = to_u64(&(-&wk1 / tau), "p")?;
            let qinv = to_u64(&((theta - wk) / tau), "q^{-1}")?;
            if p == 1 {
                return CyclicGroup::new(0, 1);
            }
            if qinv == 0 || qinv.gcd(&p) != 1 {
                return Err(ToricError::Recover(format!("q^-1 = {qinv} not a unit mod {p}")));
            }
            // invert qinv modulo p
            let q = mod_inverse(qinv % p, p)
                .ok_or_else(|| ToricError::Recover("no modular inverse".into()))?;
            CyclicGroup::new(q, p)
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let e = num_integer::ExtendedGcd::from(
        (a as i128).extended_gcd(&(p as i128)),
    );
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(p as i128) as u64)
}

/// Central-curve self-intersection magnitude for the non-cyclic resolutions:
/// `b_Γ = 2 + (4m/|Γ|)(m - (m mod |Γ|/4m))`.
pub fn b_gamma(g: &NonCyclicGroup) -> i64 {
    let order = g.order();
    let m = g.m;
    let k = order / (4 * m);
    (2 + (m - m % k) / k) as i64
}

/// One arm of a star resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarArm {
    pub source: CyclicGroup,
    pub chain: HJChain,
    /// Weights along the arm when decorated: the τ=0 chain with θ=1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightChain>,
}

/// The star-shaped exceptional set of a non-cyclic quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarResolution {
    pub group: NonCyclicGroup,
    pub central_self_intersection: i64,
    pub arms: [StarArm; 3],
    /// Set when decorated: the central curve is fixed under the lifted
    /// action and the orbifold-point weights are `[1/2m, 1/2m]`.
    #[serde(
        with = "crate::exactmath::ratserde::rat_pair_opt",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub orbifold_weights: Option<(BigRational, BigRational)>,
}

/// Star resolution: three arm chains (from the catalog table, `-m` reduced
/// mod the arm order) meeting a central curve of self-intersection `-b_Γ`.
pub fn star_resolution(g: &NonCyclicGroup) -> StarResolution {
    let arms = g.arm_groups().map(|src| StarArm {
        source: src,
        chain: hj_expand(&src),
        weights: None,
    });
    StarResolution {
        group: *g,
        central_self_intersection: -b_gamma(g),
        arms,
        orbifold_weights: None,
    }
}

/// Star resolution decorated with the lifted weights of the primitive action
/// `t.(x,y) = (t^{1/2m} x, t^{1/2m} y)`: the central curve is fixed, each arm
/// carries the τ=0 weight chain with θ=1, and the orbifold point on the
/// partial resolution has the equal pair `[1/2m, 1/2m]`.
pub fn noncyclic_weight_star(g: &NonCyclicGroup) -> StarResolution {
    let mut star = star_resolution(g);
    for arm in &mut star.arms {
        arm.weights = Some(weight_chain(&arm.source, &rat(1), &rat(0)));
    }
    let half = BigRational::new(1.into(), (2 * g.m).into());
    star.orbifold_weights = Some((half.clone(), half));
    star
}

/// Checks the exceptional-curve parametrization facts used by the appendix
/// proof: positive determinants `det(v_i, v_j) > 0` for `j < i`, positive
/// exponents of `P_i Q_{i+1}`, and membership of that monomial in the dual
/// cone of the singularity.
pub fn verify_exceptional_parametrization(g: &CyclicGroup) -> bool {
    if g.is_trivial() {
        return true;
    }
    let fan = fan_chain(g);
    let v = &fan.v;
    let k = v.len() - 2;
    let det = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    for i in 1..v.len() {
        for j in 0..i {
            if det(v[i], v[j]) <= 0 {
                return false;
            }
        }
    }
    let p = g.p as i64;
    let q = g.q as i64;
    for i in 1..=k {
        // exponents of P_i * Q_{i+1} = U^{v_{i,V}-v_{i+1,V}} V^{v_{i+1,U}-v_{i,U}}
        let a = v[i].1 - v[i + 1].1;
        let b = v[i + 1].0 - v[i].0;
        if a <= 0 || b <= 0 {
            return false;
        }
        // inside the dual cone spanned by (1,0) and (q,p): b >= 0, p*a - q*b >= 0
        if p * a - q * b < 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    fn l(q: u64, p: u64) -> CyclicGroup {
        CyclicGroup::new(q, p).unwrap()
    }

    #[test]
    fn hj_expansion_basics() {
        assert_eq!(hj_expand(&l(1, 2)).e, vec![2]);
        assert_eq!(hj_expand(&l(3, 4)).e, vec![2, 2, 2]);
        assert_eq!(hj_expand(&l(2, 3)).e, vec![2, 2]);
        assert_eq!(hj_expand(&l(1, 3)).e, vec![3]);
        assert_eq!(hj_expand(&l(2, 5)).e, vec![3, 2]);
        assert_eq!(hj_expand(&CyclicGroup::new(0, 1).unwrap()).e, Vec::<u64>::new());
    }

    #[test]
    fn nested_fraction_reconstructs_q_over_p() {
        for p in 2..=40u64 {
            for q in 1..p {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let chain = hj_expand(&l(q, p));
                assert!(chain.e.iter().all(|&e| e >= 2), "L({q},{p})");
                assert_eq!(hj_evaluate(&chain), Some((q, p)), "L({q},{p})");
            }
        }
    }

    #[test]
    fn fan_chain_endpoints_and_unimodularity() {
        assert_eq!(fan_chain(&l(1, 2)).v, vec![(0, 1), (1, 0), (2, -1)]);
        assert_eq!(
            fan_chain(&l(3, 4)).v,
            vec![(0, 1), (1, 0), (2, -1), (3, -2), (4, -3)]
        );
        for p in 2..=30u64 {
            for q in 1..p {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let fan = fan_chain(&l(q, p));
                assert_eq!(*fan.v.last().unwrap(), (p as i64, -(q as i64)));
                for w in fan.v.windows(2) {
                    let det = w[1].0 * w[0].1 - w[1].1 * w[0].0;
                    assert_eq!(det, 1, "L({q},{p})");
                }
            }
        }
    }

    #[test]
    fn weight_chain_examples() {
        // L(1,2), θ=τ=1: w = [2, 0, -2]
        let w = weight_chain(&l(1, 2), &rat(1), &rat(1));
        assert_eq!(w.w, vec![rat(2), rat(0), rat(-2)]);
        // L(3,4), θ=2, τ=1: w = [8, 5, 2, -1, -4]
        let w = weight_chain(&l(3, 4), &rat(2), &rat(1));
        assert_eq!(w.w, vec![rat(8), rat(5), rat(2), rat(-1), rat(-4)]);
    }

    #[test]
    fn weight_recursion_matches_formula() {
        for p in 2..=20u64 {
            for q in 1..p {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let theta = ratio(7, 3);
                let tau = ratio(2, 5);
                let wc = weight_chain(&l(q, p), &theta, &tau);
                let e = hj_expand(&l(q, p)).e;
                // endpoints
                assert_eq!(wc.w[0], &theta * rat(p as i64));
                assert_eq!(wc.w[1], &theta * rat(q as i64) - &tau);
                assert_eq!(*wc.w.last().unwrap(), -&tau * rat(p as i64));
                // inductive relation w_{i+1} = e_i w_i - w_{i-1}
                for i in 1..wc.w.len() - 1 {
                    assert_eq!(
                        wc.w[i + 1],
                        rat(e[i - 1] as i64) * &wc.w[i] - &wc.w[i - 1]
                    );
                }
            }
        }
    }

    #[test]
    fn tau_zero_weights_all_positive() {
        for p in 2..=15u64 {
            for q in 1..p {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let wc = weight_chain(&l(q, p), &rat(1), &rat(0));
                // w_{k+1} = 0 (the x=0 side becomes a fixed curve); interior all positive
                assert!(wc.w.last().unwrap().is_zero());
                assert!(wc.w[..wc.w.len() - 1].iter().all(|w| w.is_positive()));
            }
        }
    }

    #[test]
    fn su2_chains_are_arithmetic_progressions() {
        for p in 2..=12u64 {
            let g = l(p - 1, p);
            let theta = ratio(3, 2);
            let tau = ratio(1, 2);
            let wc = weight_chain(&g, &theta, &tau);
            let d = &wc.w[1] - &wc.w[0];
            for win in wc.w.windows(2) {
                assert_eq!(&win[1] - &win[0], d);
            }
            assert!(wc.w.windows(2).all(|w| w[1] < w[0]));
            assert_eq!(wc.w[0], theta * rat(p as i64));
            assert_eq!(*wc.w.last().unwrap(), -tau * rat(p as i64));
        }
    }

    #[test]
    fn recover_group_round_trips() {
        // [8, -5] with θ=2, τ=1 on the y=0 side is L(3,4)
        let g = recover_group((&rat(8), &rat(-5)), &rat(2), &rat(1), ChainSide::Y0Side).unwrap();
        assert_eq!(g, l(3, 4));
        // [w_k, -w_{k+1}] = [-1, 4]: w_k = θ - τ q^{-1 mod p} = 2 - 3 = -1,
        // so q^{-1 mod 4} = 3 recovers q = 3
        let g = recover_group((&rat(-1), &rat(4)), &rat(2), &rat(1), ChainSide::X0Side).unwrap();
        assert_eq!(g, l(3, 4));
        // round trip over a sweep
        for p in 2..=20u64 {
            for q in 1..p {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let theta = ratio(5, 2);
                let tau = ratio(3, 7);
                let wc = weight_chain(&l(q, p), &theta, &tau);
                let k1 = wc.w.len() - 1;
                let y0 = recover_group(
                    (&wc.w[0], &-&wc.w[1]),
                    &theta,
                    &tau,
                    ChainSide::Y0Side,
                )
                .unwrap();
                assert_eq!(y0, l(q, p));
                let x0 = recover_group(
                    (&wc.w[k1 - 1], &-&wc.w[k1]),
                    &theta,
                    &tau,
                    ChainSide::X0Side,
                )
                .unwrap();
                assert_eq!(x0, l(q, p));
            }
        }
    }

    #[test]
    fn recover_rejects_non_integral() {
        assert!(recover_group((&rat(7), &rat(-5)), &rat(2), &rat(1), ChainSide::Y0Side).is_err());
    }

    #[test]
    fn b_gamma_values() {
        let d4 = NonCyclicGroup::new(NonCyclicFamily::BinaryDihedral, 1, Some(2)).unwrap();
        assert_eq!(b_gamma(&d4), 2);
        let e8 = NonCyclicGroup::new(NonCyclicFamily::BinaryIcosahedral, 1, None).unwrap();
        assert_eq!(b_gamma(&e8), 2);
        // every family with m=1 gives 2
        for g in [
            NonCyclicGroup::new(NonCyclicFamily::BinaryDihedral, 1, Some(3)).unwrap(),
            NonCyclicGroup::new(NonCyclicFamily::BinaryTetrahedral, 1, None).unwrap(),
            NonCyclicGroup::new(NonCyclicFamily::BinaryOctahedral, 1, None).unwrap(),
        ] {
            assert_eq!(b_gamma(&g), 2);
        }
        // larger m exercises the correction term: D*(3,2): |Γ|=24, k=2, b=2+1
        let d = NonCyclicGroup::new(NonCyclicFamily::BinaryDihedral, 3, Some(2)).unwrap();
        assert_eq!(b_gamma(&d), 3);
    }

    #[test]
    fn star_resolutions_match_dynkin_diagrams() {
        let d4 = NonCyclicGroup::new(NonCyclicFamily::BinaryDihedral, 1, Some(2)).unwrap();
        let s = star_resolution(&d4);
        assert_eq!(s.central_self_intersection, -2);
        assert_eq!(s.arms[0].chain.e, vec![2]);
        assert_eq!(s.arms[1].chain.e, vec![2]);
        assert_eq!(s.arms[2].chain.e, vec![2]);

        let e6 = NonCyclicGroup::new(NonCyclicFamily::BinaryTetrahedral, 1, None).unwrap();
        let s = star_resolution(&e6);
        assert_eq!(s.arms[0].chain.e, vec![2]);
        assert_eq!(s.arms[1].chain.e, vec![2, 2]);
        assert_eq!(s.arms[2].chain.e, vec![2, 2]);

        let e8 = NonCyclicGroup::new(NonCyclicFamily::BinaryIcosahedral, 1, None).unwrap();
        let s = star_resolution(&e8);
        assert_eq!(s.arms[1].chain.e, vec![2, 2]);
        assert_eq!(s.arms[2].chain.e, vec![2, 2, 2, 2]);
    }

    #[test]
    fn noncyclic_star_weights() {
        let d4 = NonCyclicGroup::new(NonCyclicFamily::BinaryDihedral, 1, Some(2)).unwrap();
        let s = noncyclic_weight_star(&d4);
        assert_eq!(
            s.orbifold_weights,
            Some((ratio(1, 2), ratio(1, 2)))
        );
        for arm in &s.arms {
            let w = arm.weights.as_ref().unwrap();
            // τ=0 chains: strictly positive until the terminal 0
            assert!(w.w[..w.w.len() - 1].iter().all(|x| x.is_positive()));
            assert!(w.w.last().unwrap().is_zero());
        }
        // m=2 family: weights [1/4, 1/4]
        let j2 = NonCyclicGroup::new(NonCyclicFamily::J2, 2, Some(3)).unwrap();
        assert_eq!(
            noncyclic_weight_star(&j2).orbifold_weights,
            Some((ratio(1, 4), ratio(1, 4)))
        );
    }

    #[test]
    fn exceptional_parametrization_checks() {
        assert!(verify_exceptional_parametrization(&l(1, 2)));
        assert!(verify_exceptional_parametrization(&l(3, 4)));
        for p in 2..=9u64 {
            assert!(verify_exceptional_parametrization(&l(p - 1, p)), "p = {p}");
        }
        for p in 2..=20u64 {
            for q in 1..p {
                if q.gcd(&p) == 1 {
                    assert!(verify_exceptional_parametrization(&l(q, p)), "L({q},{p})");
                }
            }
        }
    }

    #[test]
    fn group_label_parsing() {
        assert_eq!(
            parse_group_label("L(3,4)").unwrap(),
            GroupLabel::Cyclic(l(3, 4))
        );
        assert_eq!(
            parse_group_label("I*(1)").unwrap().order(),
            120
        );
        assert_eq!(parse_group_label("D*(1,2)").unwrap().order(), 8);
        assert_eq!(parse_group_label("J2(2,3)").unwrap().order(), 24);
        assert_eq!(parse_group_label("J3(3)").unwrap().order(), 72);
        assert!(parse_group_label("Q(1)").is_err());
        assert!(parse_group_label("L(2,4)").is_err());
        assert!(parse_group_label("D*(2,2)").is_err());
    }
}
