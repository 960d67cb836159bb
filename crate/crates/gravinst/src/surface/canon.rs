//! Canonical byte strings for configurations, invariant under relabeling.
//!
//! The encoding forgets names, ids, the seed tag and the raw Picard basis,
//! keeping only the abstract invariant data: per curve its self-intersection
//! and fixedness, and per fixed point the incident curves with the direction
//! weights and branch types. Two configurations related by a biholomorphism
//! compatible with the actions produce identical strings.

use std::collections::BTreeMap;

use super::{CurveId, FixedPoint, IncKind, Incidence, SurfaceConfig};

/// Kind code of an incidence, up to the local automorphisms of the point.
/// At a one-signed point with weights `(w, kw)` the substitution
/// `v -> v + c u^k` moves the slow eigendirection into the family of
/// tangent branches of contact `k`, so both encode identically.
fn kind_code(p: &FixedPoint, inc: &Incidence) -> (i64, i64, i64) {
    let (w1, w2) = p.weights;
    let same_sign = (w1 > 0 && w2 > 0) || (w1 < 0 && w2 < 0);
    if same_sign {
        let (slow, fast) = if w1.abs() <= w2.abs() {
            (w1, w2)
        } else {
            (w2, w1)
        };
        if fast % slow == 0 {
            let k = fast / slow;
            let in_family = match inc.kind {
                IncKind::Axis => k >= 2 && inc.weight == slow,
                IncKind::Tangent { mult, contact } => {
                    mult == 1 && contact == k && inc.weight == slow
                }
            };
            if in_family {
                return (2, 1, k);
            }
        }
    }
    match inc.kind {
        IncKind::Axis => (0, 1, 1),
        IncKind::Tangent { mult, contact } => (1, mult, contact),
    }
}

/// Canonical form of the configuration.
pub fn canonical_form(cfg: &SurfaceConfig) -> Vec<u8> {
    let ids: Vec<CurveId> = cfg.curves.keys().copied().collect();
    let n = ids.len();
    let index_of: BTreeMap<CurveId, usize> =
        ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // base invariants per curve
    let base: Vec<(i64, bool)> = ids
        .iter()
        .map(|&c| (cfg.self_int(c), cfg.curves[&c].fixed))
        .collect();

    // iterative refinement: a curve's color is refined by the multiset of
    // (own weight, own kind, sorted multiset of co-incident (color, weight,
    // kind)) over its endpoint records
    let mut colors: Vec<u64> = {
        let mut keys: Vec<(i64, bool)> = base.clone();
        keys.sort();
        keys.dedup();
        base.iter()
            .map(|b| keys.binary_search(b).unwrap() as u64)
            .collect()
    };
    loop {
        let mut sigs: Vec<(u64, Vec<(i64, i64, i64, i64, u64)>)> = Vec::with_capacity(n);
        for (i, &cid) in ids.iter().enumerate() {
            let mut recs: Vec<Vec<(i64, i64, i64, i64, u64)>> = Vec::new();
            for p in cfg.points.values() {
                if let Some(own) = p.incidences.iter().find(|x| x.curve == cid) {
                    let (ok, om, oc) = kind_code(p, own);
                    let mut others: Vec<(i64, i64, i64, i64, u64)> = p
                        .incidences
                        .iter()
                        .filter(|x| x.curve != cid)
                        .map(|x| {
                            let (k, m, c) = kind_code(p, x);
                            (x.weight, k, m, c, colors[index_of[&x.curve]])
                        })
                        .collect();
                    others.sort();
                    let mut rec = vec![(own.weight, ok, om, oc, 0)];
                    rec.extend(others);
                    recs.push(rec);
                }
            }
            recs.sort();
            sigs.push((colors[i], recs.into_iter().flatten().collect()));
        }
        let mut keys = sigs.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<u64> = sigs
            .iter()
            .map(|s| keys.binary_search(s).unwrap() as u64)
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }

    // enumerate color-respecting permutations, keep the minimal encoding
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(i);
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = vec![usize::MAX; n]; // original index -> canonical position
    enumerate_perms(
        cfg,
        &ids,
        &base,
        &class_list,
        0,
        &mut perm,
        &mut 0,
        &mut best,
    );
    best.expect("at least one permutation")
}

#[allow(clippy::too_many_arguments)]
fn enumerate_perms(
    cfg: &SurfaceConfig,
    ids: &[CurveId],
    base: &[(i64, bool)],
    classes: &[Vec<usize>],
    class_idx: usize,
    perm: &mut Vec<usize>,
    next_pos: &mut usize,
    best: &mut Option<Vec<u8>>,
) {
    if class_idx == classes.len() {
        let enc = encode(cfg, ids, base, perm);
        if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
            *best = Some(enc);
        }
        return;
    }
    let members = &classes[class_idx];
    permute_class(
        cfg, ids, base, classes, class_idx, perm, next_pos, best, members, &mut vec![false; members.len()],
    );
}

#[allow(clippy::too_many_arguments)]
fn permute_class(
    cfg: &SurfaceConfig,
    ids: &[CurveId],
    base: &[(i64, bool)],
    classes: &[Vec<usize>],
    class_idx: usize,
    perm: &mut Vec<usize>,
    next_pos: &mut usize,
    best: &mut Option<Vec<u8>>,
    members: &[usize],
    used: &mut Vec<bool>,
) {
    if used.iter().all(|&u| u) {
        enumerate_perms(cfg, ids, base, classes, class_idx + 1, perm, next_pos, best);
        return;
    }
    for i in 0..members.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        perm[members[i]] = *next_pos;
        *next_pos += 1;
        permute_class(
            cfg, ids, base, classes, class_idx, perm, next_pos, best, members, used,
        );
        *next_pos -= 1;
        perm[members[i]] = usize::MAX;
        used[i] = false;
    }
}

fn encode(cfg: &SurfaceConfig, ids: &[CurveId], base: &[(i64, bool)], perm: &[usize]) -> Vec<u8> {
    let index_of: BTreeMap<CurveId, usize> =
        ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let n = ids.len();
    let mut curve_line: Vec<(usize, i64, bool)> = (0..n)
        .map(|i| (perm[i], base[i].0, base[i].1))
        .collect();
    curve_line.sort();
    let mut points: Vec<Vec<(usize, i64, i64, i64, i64)>> = cfg
        .points
        .values()
        .map(|p| {
            let mut incs: Vec<(usize, i64, i64, i64, i64)> = p
                .incidences
                .iter()
                .map(|x| {
                    let (k, m, c) = kind_code(p, x);
                    (perm[index_of[&x.curve]], x.weight, k, m, c)
                })
                .collect();
            incs.sort();
            incs
        })
        .collect();
    points.sort();
    let mut out = Vec::new();
    for (pos, si, fx) in curve_line {
        out.extend_from_slice(format!("c{pos}:{si}:{}|", u8::from(fx)).as_bytes());
    }
    for p in points {
        out.push(b'p');
        for (pos, w, k, m, c) in p {
            out.extend_from_slice(format!("({pos},{w},{k},{m},{c})").as_bytes());
        }
        out.push(b';');
    }
    out
}
