//! Moment data extraction and the localization integrals.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{rat, rat_to_string, BigRational, MultiPoly, RatFunc};
use crate::surface::{
    ClassificationCandidate, CurveId, FlowExtreme, IncKind, PointId, SurfaceConfig,
};

use super::{AFuncError, KahlerAssignment};

/// One end of the flow: how the Chern number of the orbifold circle bundle
/// is computed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EndpointDesc {
    /// A (possibly orbifold) fixed point with cover weights `[r, s]` and
    /// local group order `d`.
    Point {
        #[serde(with = "crate::exactmath::ratserde::rat_pair")]
        weights: (BigRational, BigRational),
        order: u64,
    },
    /// A fixed curve with the given self-intersection on the orbifold cover
    /// and local group order `d`.
    Curve { cover_self_int: i64, order: u64 },
}

impl EndpointDesc {
    /// `c_1(Y)[Σ]` at this end. The repulsive end takes `-1/(d r s)` for a
    /// point and `+n/d` for a curve; the attractive end flips the sign.
    pub fn chern(&self, attractive: bool) -> BigRational {
        let v = match self {
            EndpointDesc::Point { weights, order } => {
                let prod = &weights.0 * &weights.1;
                -rat(1) / (rat(*order as i64) * prod)
            }
            EndpointDesc::Curve {
                cover_self_int,
                order,
            } => rat(*cover_self_int) / rat(*order as i64),
        };
        if attractive {
            -v
        } else {
            v
        }
    }
}

/// An interior fixed point of the circle fibration with its flow chains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InteriorPoint {
    /// Positive weight.
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub r: BigRational,
    /// Negative weight.
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub s: BigRational,
    /// Curves of the chain toward the attractive set.
    pub up_chain: Vec<String>,
    /// Curves of the chain toward the repulsive set.
    pub down_chain: Vec<String>,
    pub omega_up: RatFunc,
    pub omega_down: RatFunc,
}

/// Everything the localization integrals need.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentData {
    pub omega_c_plus: RatFunc,
    pub omega_c_minus: RatFunc,
    pub omega_f: RatFunc,
    pub interior: Vec<InteriorPoint>,
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub chern_plus: BigRational,
    #[serde(with = "crate::exactmath::ratserde::rat_str")]
    pub chern_minus: BigRational,
    pub c1_omega: RatFunc,
    /// Strict positivity conditions cutting out the Kähler cone.
    pub domain: Vec<RatFunc>,
}

/// The four moment integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TVector {
    pub ts: RatFunc,
    pub t0: RatFunc,
    pub t1: RatFunc,
    pub t2: RatFunc,
}

fn pi() -> RatFunc {
    RatFunc::var("pi")
}

/// Extracts the moment data of a candidate under a Kähler assignment:
/// endpoint Chern numbers (derived, then checked against the crossing
/// formula), interior fixed points with their chains and chain areas, and
/// the anticanonical degree of the class.
pub fn moment_data(
    cand: &ClassificationCandidate,
    ka: &KahlerAssignment,
) -> Result<MomentData, AFuncError> {
    let cfg = &cand.config;
    let err_surface = |e: crate::surface::SurfaceError| AFuncError::Surface(e.to_string());
    let c_minus = cfg.repulsive_set().map_err(err_surface)?;
    let c_plus = cfg.attractive_set().map_err(err_surface)?;

    let end_desc = |ext: &FlowExtreme, is_minus: bool| -> EndpointDesc {
        // the repulsive set of a candidate lies in the contracted exceptional
        // locus: the endpoint is the orbifold point itself
        if is_minus {
            EndpointDesc::Point {
                weights: cand.orbifold_weights.clone(),
                order: cand.group.order(),
            }
        } else {
            match ext {
                FlowExtreme::Point(p) => {
                    let (a, b) = cfg.points[p].eigen_weights();
                    EndpointDesc::Point {
                        weights: (rat(a), rat(b)),
                        order: 1,
                    }
                }
                FlowExtreme::Curve(c) => EndpointDesc::Curve {
                    cover_self_int: cfg.self_int(*c),
                    order: 1,
                },
            }
        }
    };
    let minus_desc = end_desc(&c_minus, true);
    let plus_desc = end_desc(&c_plus, false);

    let area_of_extreme = |ext: &FlowExtreme| -> RatFunc {
        match ext {
            FlowExtreme::Point(_) => RatFunc::zero(),
            FlowExtreme::Curve(c) => ka.area(&cfg.curves[c].class),
        }
    };
    // contracted curves carry area zero, so the repulsive end contributes 0
    let omega_c_minus = area_of_extreme(&c_minus);
    let omega_c_plus = area_of_extreme(&c_plus);
    let omega_f = ka.area(&cfg.fiber);

    let interior = interior_points(cand, ka, &omega_f)?;

    // crossing formula, exactly
    let chern_minus = minus_desc.chern(false);
    let chern_plus = plus_desc.chern(true);
    let mut jump_sum = BigRational::zero();
    for ip in &interior {
        jump_sum += -rat(1) / (&ip.r * &ip.s);
    }
    let diff = &chern_plus - &chern_minus;
    if jump_sum != diff {
        return Err(AFuncError::Crossing {
            lhs: rat_to_string(&jump_sum),
            rhs: rat_to_string(&diff),
        });
    }

    let minus_k = {
        let mut k = cfg.canonical_class();
        for c in k.0.iter_mut() {
            *c = -*c;
        }
        k
    };
    Ok(MomentData {
        omega_c_plus,
        omega_c_minus,
        omega_f,
        interior,
        chern_plus,
        chern_minus,
        c1_omega: ka.area(&minus_k),
        domain: ka.domain.clone(),
    })
}

/// Interior fixed points: isolated mixed-weight points away from the
/// exceptional set and the flow extremes, with their up/down chains.
fn interior_points(
    cand: &ClassificationCandidate,
    ka: &KahlerAssignment,
    omega_f: &RatFunc,
) -> Result<Vec<InteriorPoint>, AFuncError> {
    let cfg = &cand.config;
    let mut out = Vec::new();
    for pid in cfg.isolated_points() {
        let p = &cfg.points[&pid];
        let (a, b) = p.eigen_weights();
        if !(a < 0 && b > 0) {
            continue; // extremes and points on fixed curves are not interior
        }
        if p.incidences
            .iter()
            .any(|i| cand.exceptional.contains(&i.curve))
        {
            continue; // lies over the contracted point
        }
        let up = walk_chain(cfg, cand, pid, true)?;
        let down = walk_chain(cfg, cand, pid, false)?;
        let area_sum = |ids: &[CurveId]| -> RatFunc {
            let mut acc = RatFunc::zero();
            for id in ids {
                acc = acc.add(&ka.area(&cfg.curves[id].class));
            }
            acc
        };
        let omega_up = area_sum(&up);
        let omega_down = area_sum(&down);
        let (r, s) = (rat(b), rat(a));
        // generic fibers break as r·(up chain) - s·(down chain)
        let check = omega_up.scale(&r).add(&omega_down.scale(&(-&s)));
        if check != *omega_f {
            return Err(AFuncError::Chain(format!(
                "r ω(E') + |s| ω(E) = {check} but ω(F) = {omega_f}"
            )));
        }
        out.push(InteriorPoint {
            r,
            s,
            up_chain: up.iter().map(|c| cfg.curves[c].name.clone()).collect(),
            down_chain: down.iter().map(|c| cfg.curves[c].name.clone()).collect(),
            omega_up,
            omega_down,
        });
    }
    Ok(out)
}

/// Follows the flow from an interior point toward the attractive (`up`) or
/// repulsive (`!up`) set, collecting the curves traversed until a flow
/// extreme or the exceptional set is reached.
fn walk_chain(
    cfg: &SurfaceConfig,
    cand: &ClassificationCandidate,
    start: PointId,
    up: bool,
) -> Result<Vec<CurveId>, AFuncError> {
    let mut chain = Vec::new();
    let mut point = start;
    let mut arrived_via: Option<CurveId> = None;
    loop {
        let p = &cfg.points[&point];
        let next = p
            .incidences
            .iter()
            .filter(|i| matches!(i.kind, IncKind::Axis))
            .filter(|i| Some(i.curve) != arrived_via)
            .find(|i| if up { i.weight > 0 } else { i.weight < 0 });
        let inc = match next {
            Some(i) => i,
            None => {
                return Err(AFuncError::Chain(format!(
                    "no outgoing {} direction",
                    if up { "ascending" } else { "descending" }
                )))
            }
        };
        let cur = inc.curve;
        if cfg.curves[&cur].fixed || cand.exceptional.contains(&cur) {
            // reached a fixed curve or the contracted set without moving
            return Ok(chain);
        }
        chain.push(cur);
        // the other endpoint record of this curve
        let other = cfg
            .points
            .iter()
            .find(|(id, q)| **id != point && q.incidences.iter().any(|i| i.curve == cur))
            .map(|(id, _)| *id)
            .ok_or_else(|| AFuncError::Chain("open-ended curve".into()))?;
        point = other;
        arrived_via = Some(cur);
        let q = &cfg.points[&point];
        // stop at flow extremes, one-signed points, fixed curves, or the
        // exceptional set
        if cfg.on_fixed_curve(point)
            || q.is_repulsive()
            || q.is_attractive()
            || q.incidences
                .iter()
                .any(|i| cand.exceptional.contains(&i.curve))
        {
            return Ok(chain);
        }
        if chain.len() > cfg.curves.len() {
            return Err(AFuncError::Chain("flow does not terminate".into()));
        }
    }
}

/// The localization integrals from the bracketed formulas, with `pi`
/// symbolic. `T_s` is the scalar-curvature moment, `T_0` the volume, `T_1`
/// and `T_2` the first and second moments of the Hamiltonian.
pub fn compute_t(md: &MomentData) -> TVector {
    let wf = &md.omega_f;
    let wp = &md.omega_c_plus;
    let wm = &md.omega_c_minus;
    let ts = wf.mul(&wp.sub(wm));

    let sum_pow = |k: u32| -> RatFunc {
        let mut acc = RatFunc::zero();
        for ip in &md.interior {
            let coeff = RatFunc::from_rat(rat(1) / (&ip.r * &ip.s));
            let delta = ip
                .omega_up
                .scale(&ip.r)
                .sub(&ip.omega_down.scale(&-&ip.s))
                .div(wf)
                .expect("ω(F) != 0");
            acc = acc.add(&coeff.mul(&delta.pow(k)));
        }
        acc
    };
    let chern_diff = RatFunc::from_rat(&md.chern_plus - &md.chern_minus);
    let chern_sum = RatFunc::from_rat(&md.chern_plus + &md.chern_minus);

    let wf2 = wf.mul(wf);
    let wf3 = wf2.mul(wf);
    let wf4 = wf3.mul(wf);
    let frac = |n: &RatFunc, d: i64| n.scale(&BigRational::new(1.into(), d.into()));

    let t0 = frac(&wf2, 8).mul(
        &wp.add(wm)
            .div(wf)
            .unwrap()
            .scale(&rat(4))
            .add(&sum_pow(2))
            .add(&chern_diff),
    );
    let t1 = wf3
        .div(&pi().scale(&rat(96)))
        .unwrap()
        .mul(
            &wp.sub(wm)
                .div(wf)
                .unwrap()
                .scale(&rat(6))
                .sub(&sum_pow(3))
                .add(&chern_sum),
        );
    let t2 = wf4
        .div(&pi().mul(&pi()).scale(&rat(768)))
        .unwrap()
        .mul(
            &wp.add(wm)
                .div(wf)
                .unwrap()
                .scale(&rat(8))
                .add(&sum_pow(4))
                .add(&chern_diff),
        );
    TVector { ts, t0, t1, t2 }
}

/// Average scalar curvature `s_0 = 4π c_1[ω] / T_0`.
pub fn s_zero(md: &MomentData, t0: &RatFunc) -> RatFunc {
    pi().scale(&rat(4)).mul(&md.c1_omega).div(t0).expect("T0 != 0")
}

/// Result of the extremal-potential normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum HResult {
    /// `-T_s + s_0 T_1 = 0`: the class can never support an extremal metric
    /// with this extremal field.
    Degenerate,
    H(RatFunc),
}

/// `h = (-T_2 + T_1²/T_0) / (-T_s + s_0 T_1)`, or the degenerate marker.
pub fn compute_h(t: &TVector, s0: &RatFunc) -> HResult {
    let den = t.ts.neg().add(&s0.mul(&t.t1));
    if den.is_zero() {
        return HResult::Degenerate;
    }
    let num = t
        .t2
        .neg()
        .add(&t.t1.mul(&t.t1).div(&t.t0).expect("T0 != 0"));
    HResult::H(num.div(&den).expect("nonzero"))
}

/// The Futaki invariant `-(1/h) T_s + s_0 (1/h) T_1`.
pub fn futaki(t: &TVector, s0: &RatFunc, h: &HResult) -> Result<RatFunc, AFuncError> {
    match h {
        HResult::Degenerate => Err(AFuncError::Degenerate),
        HResult::H(h) => Ok(t
            .ts
            .neg()
            .add(&s0.mul(&t.t1))
            .div(h)
            .expect("h != 0")),
    }
}

/// Exact minimum of the scalar curvature over the class, or the degenerate
/// marker.
#[derive(Debug, Clone, PartialEq)]
pub enum MinScalar {
    Exact(RatFunc),
    Degenerate,
}

/// `min s_g = -ω(F)/(4πh) - T_1/(h T_0) + 4π c_1[ω]/T_0`.
///
/// When `-T_s + s_0 T_1` vanishes identically the potential relation
/// `t - t_0 = h (s_g - s_0)` admits no finite `h`, so no extremal metric in
/// the class has extremal field proportional to the generator. If moreover
/// `T_s` and `T_1` vanish identically and the class moves in a family, an
/// extremal representative can only be constant-scalar-curvature and the
/// minimum is the average `s_0` itself; with no free parameter left the
/// degenerate marker is reported.
pub fn min_scalar(md: &MomentData) -> MinScalar {
    let t = compute_t(md);
    let s0 = s_zero(md, &t.t0);
    match compute_h(&t, &s0) {
        HResult::Degenerate => {
            let mut params = md.omega_f.used_vars();
            params.extend(md.c1_omega.used_vars());
            for ip in &md.interior {
                params.extend(ip.omega_up.used_vars());
                params.extend(ip.omega_down.used_vars());
            }
            params.retain(|v| v != "pi");
            if t.ts.is_zero() && t.t1.is_zero() && !params.is_empty() {
                MinScalar::Exact(s0)
            } else {
                MinScalar::Degenerate
            }
        }
        HResult::H(h) => {
            let term1 = md
                .omega_f
                .div(&pi().scale(&rat(4)).mul(&h))
                .expect("h != 0")
                .neg();
            let term2 = t.t1.div(&h.mul(&t.t0)).expect("nonzero").neg();
            let term3 = pi()
                .scale(&rat(4))
                .mul(&md.c1_omega)
                .div(&t.t0)
                .expect("T0 != 0");
            MinScalar::Exact(term1.add(&term2).add(&term3))
        }
    }
}

/// Builds moment data directly from endpoint descriptors (used by the
/// fixtures that are not census candidates, e.g. the quotient-plane example
/// and the Hirzebruch entry).
pub struct RawMomentInput {
    pub omega_c_plus: RatFunc,
    pub omega_c_minus: RatFunc,
    pub omega_f: RatFunc,
    pub c_plus: EndpointDesc,
    pub c_minus: EndpointDesc,
    pub interior: Vec<InteriorPoint>,
    pub c1_omega: RatFunc,
}

pub fn moment_data_from_raw(raw: RawMomentInput) -> Result<MomentData, AFuncError> {
    let chern_minus = raw.c_minus.chern(false);
    let chern_plus = raw.c_plus.chern(true);
    let mut jump_sum = BigRational::zero();
    for ip in &raw.interior {
        if !ip.r.is_positive() || !ip.s.is_negative() {
            return Err(AFuncError::Chain("interior weights must satisfy r>0>s".into()));
        }
        jump_sum += -rat(1) / (&ip.r * &ip.s);
    }
    let diff = &chern_plus - &chern_minus;
    if jump_sum != diff {
        return Err(AFuncError::Crossing {
            lhs: rat_to_string(&jump_sum),
            rhs: rat_to_string(&diff),
        });
    }
    Ok(MomentData {
        omega_c_plus: raw.omega_c_plus,
        omega_c_minus: raw.omega_c_minus,
        omega_f: raw.omega_f,
        interior: raw.interior,
        chern_plus,
        chern_minus,
        c1_omega: raw.c1_omega,
        domain: Vec::new(),
    })
}

#[allow(unused)]
fn poly(s: &str) -> MultiPoly {
    crate::exactmath::parse_poly(s).unwrap()
}
