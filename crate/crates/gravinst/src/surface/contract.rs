//! Contraction of an ADE set to an orbifold candidate: orbifold weights from
//! the chain endpoint data, orbifold group recognition, and the Fano filter.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactmath::{rat, BigRational};
use crate::toric::{
    recover_group, weight_chain, ChainSide, CyclicGroup, GroupLabel, NonCyclicFamily,
    NonCyclicGroup,
};

use super::{
    find_ade_components, AdeClass, AdeType, CurveId, FlowExtreme, Incidence, PointId,
    SurfaceConfig, SurfaceError,
};

/// A contracted configuration: the orbifold candidate data attached to a
/// surface with its ADE exceptional set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationCandidate {
    pub config: SurfaceConfig,
    pub exceptional: BTreeSet<CurveId>,
    pub ade: AdeType,
    #[serde(with = "crate::exactmath::ratserde::rat_pair")]
    pub orbifold_weights: (BigRational, BigRational),
    pub group: GroupLabel,
    /// Degree of the contraction, `(-K)^2` (discrepancy 0 for SU(2) sets).
    pub degree: i64,
    /// Picard rank after contracting the exceptional set.
    pub picard_rank: usize,
    /// Marks the Hirzebruch-surface entry (the reversed Eguchi-Hanson,
    /// anti-self-dual branch).
    pub eguchi_hanson: bool,
}

impl ClassificationCandidate {
    pub fn same_weights(&self) -> bool {
        self.orbifold_weights.0 == self.orbifold_weights.1
    }
}

/// Weight of the action along `curve` at the point, when recorded.
fn weight_along(incs: &[Incidence], curve: CurveId) -> Option<i64> {
    incs.iter().find(|i| i.curve == curve).map(|i| i.weight)
}

/// The recorded points of a curve.
fn points_of<'a>(
    cfg: &'a SurfaceConfig,
    curve: CurveId,
) -> impl Iterator<Item = (PointId, &'a super::FixedPoint)> {
    cfg.points
        .iter()
        .filter(move |(_, p)| p.incidences.iter().any(|i| i.curve == curve))
        .map(|(id, p)| (*id, p))
}

/// Reads the weight sequences `w_0 .. w_{k+1}` along an ordered chain. A
/// one-curve chain is read from both ends; longer chains are oriented by the
/// path. Returns every reading consistent with the recorded data.
fn read_chain_weights(cfg: &SurfaceConfig, path: &[CurveId]) -> Vec<Vec<BigRational>> {
    let k = path.len();
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        return read_single_curve(cfg, path[0]);
    }
    let mut nodes: Vec<PointId> = Vec::new();
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let shared = cfg.points.iter().find(|(_, p)| {
            p.incidences.iter().any(|i| i.curve == a) && p.incidences.iter().any(|i| i.curve == b)
        });
        match shared {
            Some((id, _)) => nodes.push(*id),
            None => return Vec::new(),
        }
    }
    // outer ends: the recorded points of the end curves away from the chain
    // nodes; all landings of a fixed end curve carry the same normal weight
    let outer = |curve: CurveId| -> Option<(i64, i64)> {
        let mut cands: Vec<(i64, i64)> = Vec::new();
        for (pid, p) in points_of(cfg, curve) {
            if nodes.contains(&pid) {
                continue;
            }
            let along = weight_along(&p.incidences, curve)?;
            let (a, b) = p.eigen_weights();
            let transversal = if along == a { b } else { a };
            cands.push((transversal, along));
        }
        if cands.is_empty() || cands.iter().any(|c| *c != cands[0]) {
            return None;
        }
        Some(cands[0])
    };
    let (t0, a0) = match outer(path[0]) {
        Some(x) => x,
        None => return Vec::new(),
    };
    let (tk, ak) = match outer(path[k - 1]) {
        Some(x) => x,
        None => return Vec::new(),
    };
    let mut w: Vec<BigRational> = Vec::with_capacity(k + 2);
    w.push(rat(t0));
    w.push(rat(-a0));
    for (i, node) in nodes.iter().enumerate() {
        let p = &cfg.points[node];
        // consistency: along path[i] the weight must be +w_{i+1}
        let along_prev = match weight_along(&p.incidences, path[i]) {
            Some(x) => x,
            None => return Vec::new(),
        };
        if rat(along_prev) != w[i + 1] {
            return Vec::new();
        }
        let along_next = match weight_along(&p.incidences, path[i + 1]) {
            Some(x) => x,
            None => return Vec::new(),
        };
        w.push(rat(-along_next));
    }
    // the last chain weight must match the outer record of the end curve
    if rat(ak) != w[k] {
        return Vec::new();
    }
    w.push(rat(-tk));
    vec![w]
}

/// Readings of a chain consisting of one curve.
fn read_single_curve(cfg: &SurfaceConfig, curve: CurveId) -> Vec<Vec<BigRational>> {
    let mut ends: Vec<(i64, i64)> = Vec::new();
    for (_, p) in points_of(cfg, curve) {
        let along = match weight_along(&p.incidences, curve) {
            Some(x) => x,
            None => return Vec::new(),
        };
        let (a, b) = p.eigen_weights();
        let transversal = if along == a { b } else { a };
        ends.push((transversal, along));
    }
    if cfg.curves[&curve].fixed {
        // landings of a fixed curve all see the same normal weight
        if ends.is_empty() || ends.iter().any(|e| *e != ends[0]) {
            return Vec::new();
        }
        let (t, _) = ends[0];
        return vec![vec![rat(t), rat(0), rat(-t)]];
    }
    if ends.len() != 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (first, second) in [(0usize, 1usize), (1, 0)] {
        let (t1, a1) = ends[first];
        let (t2, _) = ends[second];
        out.push(vec![rat(t1), rat(-a1), rat(-t2)]);
    }
    out
}

/// Fits `(p, q, θ, τ)` of a cyclic SU(2) chain to a weight sequence.
fn fit_cyclic(w: &[BigRational]) -> Option<(CyclicGroup, BigRational, BigRational)> {
    let k = w.len() - 2;
    let p = (k + 1) as u64;
    let g = CyclicGroup::new(p - 1, p).ok()?;
    let theta = &w[0] / rat(p as i64);
    let tau = -(w[w.len() - 1].clone()) / rat(p as i64);
    if theta <= BigRational::zero() {
        return None;
    }
    let expect = weight_chain(&g, &theta, &tau);
    if expect.w == w {
        Some((g, theta, tau))
    } else {
        None
    }
}

/// Contraction of `component` inside `cfg`. Verifies the preconditions: a
/// connected ADE set of (-2)-curves containing the repulsive set, with the
/// complement satisfying the Fano filter. Orbifold weights come from the
/// chain endpoints (cyclic case, checked from both ends via the recovery of
/// `(p,q)`) or are the equal pair forced by non-cyclic symmetry.
pub fn contract(
    cfg: &SurfaceConfig,
    component: &AdeClass,
) -> Result<ClassificationCandidate, SurfaceError> {
    let ade = component
        .ade
        .ok_or_else(|| SurfaceError::Contract("component is not an ADE tree".into()))?;
    let err = |m: String| SurfaceError::Contract(m);

    // c- must be inside the component
    match cfg.repulsive_set()? {
        FlowExtreme::Curve(c) => {
            if !component.curves.contains(&c) {
                return Err(err("repulsive curve outside the exceptional set".into()));
            }
        }
        FlowExtreme::Point(p) => {
            let ok = cfg.points[&p]
                .incidences
                .iter()
                .all(|i| component.curves.contains(&i.curve));
            if !ok {
                return Err(err("repulsive point not interior to the exceptional set".into()));
            }
        }
    }

    // Fano filter on the complement
    for (&id, c) in &cfg.curves {
        if component.curves.contains(&id) {
            debug_assert_eq!(cfg.minus_k_dot(id), 0);
            continue;
        }
        if cfg.minus_k_dot(id) <= 0 {
            return Err(err(format!("-K.{} <= 0 outside the exceptional set", c.name)));
        }
    }
    let degree = cfg.degree();
    if degree <= 0 {
        return Err(err(format!("contraction degree {degree} not positive")));
    }

    let (group, weights) = match ade {
        AdeType::A(_) => {
            let reversed: Vec<CurveId> = component.order.iter().rev().copied().collect();
            let mut readings = read_chain_weights(cfg, &component.order);
            readings.extend(read_chain_weights(cfg, &reversed));
            let fit = readings
                .iter()
                .find_map(|w| fit_cyclic(w))
                .ok_or_else(|| err("chain weights do not fit a cyclic SU(2) action".into()))?;
            let (g, theta, tau) = fit;
            // cross-check via the endpoint recovery from both sides
            let wc = weight_chain(&g, &theta, &tau);
            let k1 = wc.w.len() - 1;
            if !theta.is_zero() {
                let y0 = recover_group((&wc.w[0], &-&wc.w[1]), &theta, &tau, ChainSide::Y0Side)
                    .map_err(SurfaceError::Toric)?;
                if y0 != g {
                    return Err(err("endpoint recovery disagrees (y0 side)".into()));
                }
            }
            if !tau.is_zero() {
                let x0 = recover_group(
                    (&wc.w[k1 - 1], &-&wc.w[k1]),
                    &theta,
                    &tau,
                    ChainSide::X0Side,
                )
                .map_err(SurfaceError::Toric)?;
                if x0 != g {
                    return Err(err("endpoint recovery disagrees (x0 side)".into()));
                }
            }
            (GroupLabel::Cyclic(g), (theta, tau))
        }
        AdeType::D(_) | AdeType::E(_) => {
            let center = component.order[0];
            if !cfg.curves[&center].fixed {
                return Err(err("star center is not a fixed curve".into()));
            }
            // arms must carry the τ=0 chains with a common scale θ
            let scale = validate_star_arms(cfg, component, center)?;
            let family = match ade {
                AdeType::D(_) => NonCyclicFamily::BinaryDihedral,
                AdeType::E(6) => NonCyclicFamily::BinaryTetrahedral,
                AdeType::E(7) => NonCyclicFamily::BinaryOctahedral,
                AdeType::E(8) => NonCyclicFamily::BinaryIcosahedral,
                _ => unreachable!(),
            };
            let g = match ade {
                AdeType::D(n) => {
                    NonCyclicGroup::new(family, 1, Some(n as u64 - 2)).map_err(SurfaceError::Toric)?
                }
                _ => NonCyclicGroup::new(family, 1, None).map_err(SurfaceError::Toric)?,
            };
            // primitive normalization gives [θ/2, θ/2] on the orbifold cover
            // (m = 1 for every SU(2) family)
            let half = &scale / rat(2);
            (GroupLabel::NonCyclic(g), (half.clone(), half))
        }
    };

    Ok(ClassificationCandidate {
        config: cfg.clone(),
        exceptional: component.curves.clone(),
        ade,
        orbifold_weights: weights,
        group,
        degree,
        picard_rank: cfg.rank() - component.curves.len(),
        eguchi_hanson: false,
    })
}

/// Checks each arm of a star against the τ=0 weight chain of its source
/// group; returns the common scale θ.
fn validate_star_arms(
    cfg: &SurfaceConfig,
    component: &AdeClass,
    center: CurveId,
) -> Result<BigRational, SurfaceError> {
    let err = |m: String| SurfaceError::Contract(m);
    // rebuild the arms from the order: center, then arms in order
    let mut arms: Vec<Vec<CurveId>> = Vec::new();
    let mut cur: Vec<CurveId> = Vec::new();
    for &c in &component.order[1..] {
        let touches_center = cfg.curves[&c]
            .class
            .dot(&cfg.curves[&center].class, cfg.lattice)
            == 1;
        if touches_center && !cur.is_empty() {
            arms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        arms.push(cur);
    }
    if arms.len() != 3 {
        return Err(err(format!("star with {} arms", arms.len())));
    }
    let mut scale: Option<BigRational> = None;
    for arm in &arms {
        // the arm read outward: from the free end toward the center; the
        // toric chain's y0 side is the free end
        let outward: Vec<CurveId> = arm.iter().rev().copied().collect();
        let readings = read_chain_weights(cfg, &outward);
        let p = arm.len() as u64 + 1;
        let g = CyclicGroup::new(p - 1, p).map_err(SurfaceError::Toric)?;
        let fit = readings.iter().find_map(|w| {
            let s = &w[0] / rat(p as i64);
            if s > BigRational::zero() && weight_chain(&g, &s, &rat(0)).w == *w {
                Some(s)
            } else {
                None
            }
        });
        let s = fit.ok_or_else(|| err("arm weights do not match the τ=0 chain".into()))?;
        match &scale {
            None => scale = Some(s),
            Some(prev) if *prev == s => {}
            _ => return Err(err("arms disagree on the action scale".into())),
        }
    }
    Ok(scale.unwrap())
}

/// Assembles the candidate of a configuration, when it is one: all
/// (-2)-curves form a single ADE component containing the repulsive set, the
/// Fano filter holds, and (optionally) the orbifold weights are equal.
pub fn candidate_of(
    cfg: &SurfaceConfig,
    require_same_weights: bool,
) -> Option<ClassificationCandidate> {
    let comps = find_ade_components(cfg);
    if comps.len() != 1 {
        return None;
    }
    // the generic orbit closure is a curve of the contraction too
    let k = cfg.canonical_class();
    if -k.dot(&cfg.fiber, cfg.lattice) <= 0 {
        return None;
    }
    let cand = contract(cfg, &comps[0]).ok()?;
    if require_same_weights && !cand.same_weights() {
        return None;
    }
    Some(cand)
}

/// The Hirzebruch-surface candidate: contracting the (-2)-section gives an
/// `A_1` point with weights `[1/2, 1/2]`; flows run from it to the
/// (+2)-section. This is the reversed Eguchi-Hanson entry.
pub fn h2_candidate() -> ClassificationCandidate {
    let cfg = super::seed_h2();
    let cinf = cfg.curve_id_by_name("Cinf").unwrap();
    let mut exceptional = BTreeSet::new();
    exceptional.insert(cinf);
    let half = BigRational::new(1.into(), 2.into());
    ClassificationCandidate {
        degree: cfg.degree(),
        picard_rank: cfg.rank() - 1,
        config: cfg,
        exceptional,
        ade: AdeType::A(1),
        orbifold_weights: (half.clone(), half),
        group: GroupLabel::Cyclic(CyclicGroup::new(1, 2).unwrap()),
        eguchi_hanson: true,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{blow_up, seed_p2, BlowupCenter, SeedAction};
    use super::*;
    use crate::exactmath::ratio;

    fn pt(cfg: &SurfaceConfig, names: &[&str]) -> BlowupCenter {
        BlowupCenter::Point(
            cfg.point_of_curves(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .unwrap(),
        )
    }

    fn build(seed: SeedAction, steps: &[&[&str]]) -> SurfaceConfig {
        let mut cfg = seed_p2(seed).unwrap();
        for step in steps {
            let center = if step.len() == 1 {
                BlowupCenter::GenericOn(cfg.curve_id_by_name(step[0]).unwrap())
            } else {
                pt(&cfg, step)
            };
            cfg = blow_up(&cfg, center).unwrap();
        }
        cfg.validate().unwrap();
        cfg
    }

    #[test]
    fn case_1a_contracts_to_a1_with_half_half() {
        let cfg = build(SeedAction::TypeI, &[&["X", "Y"], &["X", "E1"]]);
        let cand = candidate_of(&cfg, true).expect("1A is a candidate");
        assert_eq!(cand.ade, AdeType::A(1));
        assert_eq!(cand.orbifold_weights, (ratio(1, 2), ratio(1, 2)));
        assert_eq!(cand.degree, 7);
        assert_eq!(cand.picard_rank, 2);
    }

    #[test]
    fn case_2d_contracts_to_a3_with_half_half() {
        let cfg = build(
            SeedAction::TypeII,
            &[
                &["X", "Z"],
                &["Z"],
                &["Y", "Z"],
                &["X", "E1"],
                &["Y", "E3"],
            ],
        );
        let cand = candidate_of(&cfg, true).expect("2D is a candidate");
        assert_eq!(cand.ade, AdeType::A(3));
        assert_eq!(cand.orbifold_weights, (ratio(1, 2), ratio(1, 2)));
        assert_eq!(cand.degree, 4);
        assert_eq!(cand.picard_rank, 3);
        assert_eq!(cand.group.order(), 4);
    }

    #[test]
    fn case_2c_fails_same_weights_with_two_thirds_one_third() {
        // the 2C shape: X∩Z, generic Z, Y∩Z, X∩E1 - an A2 with weights [2/3,1/3]
        let cfg = build(
            SeedAction::TypeII,
            &[&["X", "Z"], &["Z"], &["Y", "Z"], &["X", "E1"]],
        );
        let cand = candidate_of(&cfg, false).expect("2C contracts");
        assert_eq!(cand.ade, AdeType::A(2));
        let (a, b) = (&cand.orbifold_weights.0, &cand.orbifold_weights.1);
        let pair = if a > b { (a, b) } else { (b, a) };
        assert_eq!(pair, (&ratio(2, 3), &ratio(1, 3)));
        assert!(!cand.same_weights());
        assert!(candidate_of(&cfg, true).is_none());
    }

    #[test]
    fn case_3m_contracts_to_e8_degree_one() {
        let cfg = build(
            SeedAction::TypeIII { alpha: 3, beta: 1 },
            &[
                &["X", "Y"],
                &["X", "E1"],
                &["X", "E2"],
                &["E3"],
                &["E4", "F1"],
                &["E5", "F1"],
                &["E6", "F1"],
                &["E7", "F1"],
            ],
        );
        let cand = candidate_of(&cfg, true).expect("3M is a candidate");
        assert_eq!(cand.ade, AdeType::E(8));
        assert_eq!(cand.degree, 1);
        assert_eq!(cand.picard_rank, 1);
        assert_eq!(cand.group.order(), 120);
        assert_eq!(cand.orbifold_weights, (ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn h2_entry() {
        let c = h2_candidate();
        assert!(c.eguchi_hanson);
        assert_eq!(c.degree, 8);
        assert_eq!(c.picard_rank, 1);
        assert_eq!(c.group.order(), 2);
    }
}
