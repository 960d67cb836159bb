//! Quotient by the automorphisms of the pair: tracked curves that are
//! indistinguishable from generic orbit closures are forgotten.
//!
//! A non-fixed curve is free exactly when its class equals the generic fiber
//! class and each of its two ends is at a generic position: a two-record
//! landing on a fixed curve, or a non-eigendirection approach to a flow
//! extreme (any direction at an equal-weight point, a tangent branch at an
//! unequal one). The choices such a curve encodes are moved by automorphisms
//! of the configuration, so dropping it produces the intrinsic object; this
//! is what identifies, say, a marked intersection with a coordinate line and
//! a fresh generic point of the same fixed curve once the line has lost its
//! distinguishing fixed points.

use super::{CurveId, IncKind, PointId, SurfaceConfig};

fn end_is_generic(cfg: &SurfaceConfig, pid: PointId, curve: CurveId) -> bool {
    let p = &cfg.points[&pid];
    let inc = p
        .incidences
        .iter()
        .find(|i| i.curve == curve)
        .expect("incidence exists");
    // landing on a fixed curve, nothing else marked there
    if p.incidences.len() == 2 {
        if let Some(other) = p.incidences.iter().find(|i| i.curve != curve) {
            if cfg.curves[&other.curve].fixed && matches!(inc.kind, IncKind::Axis) {
                return true;
            }
        }
    }
    // generic approach to a flow extreme
    let (w1, w2) = p.weights;
    let extremal = (w1 > 0 && w2 > 0) || (w1 < 0 && w2 < 0);
    if !extremal {
        return false;
    }
    if w1 == w2 {
        // every direction is an eigendirection; all are equivalent
        matches!(inc.kind, IncKind::Axis)
    } else {
        // tangent approaches are generic; so is the slow eigendirection when
        // the weight ratio is integral (it belongs to the tangent family)
        let (slow, fast) = if w1.abs() <= w2.abs() {
            (w1, w2)
        } else {
            (w2, w1)
        };
        match inc.kind {
            IncKind::Tangent { .. } => true,
            IncKind::Axis => inc.weight == slow && fast % slow == 0 && fast / slow >= 2,
        }
    }
}

fn is_free(cfg: &SurfaceConfig, curve: CurveId) -> bool {
    let c = &cfg.curves[&curve];
    if c.fixed || c.class != cfg.fiber {
        return false;
    }
    let ends: Vec<PointId> = cfg
        .points
        .iter()
        .filter(|(_, p)| p.incidences.iter().any(|i| i.curve == curve))
        .map(|(id, _)| *id)
        .collect();
    ends.len() == 2 && ends.iter().all(|&e| end_is_generic(cfg, e, curve))
}

fn forget(cfg: &mut SurfaceConfig, curve: CurveId) {
    cfg.curves.remove(&curve);
    let point_ids: Vec<PointId> = cfg.points.keys().copied().collect();
    for pid in point_ids {
        let p = cfg.points.get_mut(&pid).unwrap();
        let had = p.incidences.iter().any(|i| i.curve == curve);
        if !had {
            continue;
        }
        p.incidences.retain(|i| i.curve != curve);
        // a landing point of the forgotten orbit is a mere marking on the
        // fixed curve; drop it entirely
        let landing = p.incidences.len() == 1
            && cfg.curves[&p.incidences[0].curve].fixed
            && (p.weights.0 == 0 || p.weights.1 == 0);
        if landing {
            cfg.points.remove(&pid);
        }
    }
}

/// Forgets every free orbit, to a fixpoint.
pub fn normalize(cfg: &SurfaceConfig) -> SurfaceConfig {
    let mut out = cfg.clone();
    loop {
        let free: Vec<CurveId> = out
            .curves
            .keys()
            .copied()
            .filter(|&c| is_free(&out, c))
            .collect();
        if free.is_empty() {
            return out;
        }
        for c in free {
            forget(&mut out, c);
        }
    }
}
