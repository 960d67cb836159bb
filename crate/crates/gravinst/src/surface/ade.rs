//! Recognition of ADE configurations among the (-2)-curves.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CurveId, SurfaceConfig};

/// Dynkin type of a connected (-2)-configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdeType {
    A(usize),
    D(usize),
    E(usize),
}

impl AdeType {
    pub fn label(&self) -> String {
        match self {
            AdeType::A(n) => format!("A{n}"),
            AdeType::D(n) => format!("D{n}"),
            AdeType::E(n) => format!("E{n}"),
        }
    }

    /// Order of the corresponding finite subgroup of SU(2).
    pub fn group_order(&self) -> u64 {
        match self {
            AdeType::A(n) => *n as u64 + 1,
            AdeType::D(n) => 4 * (*n as u64 - 2),
            AdeType::E(6) => 24,
            AdeType::E(7) => 48,
            AdeType::E(8) => 120,
            AdeType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

/// A connected component of the (-2)-curve graph, classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeClass {
    pub curves: BTreeSet<CurveId>,
    /// `None` when the component is not an ADE tree (a cycle, a vertex of
    /// degree > 3, more than one branch vertex, bad arm lengths, or a
    /// double edge).
    pub ade: Option<AdeType>,
    /// Path order for chains; for D/E types the center followed by the arms
    /// (shortest arm first), each arm listed from the center outward.
    pub order: Vec<CurveId>,
}

/// Connected components of the (-2)-curve intersection graph, classified
/// against the Dynkin shapes.
pub fn find_ade_components(cfg: &SurfaceConfig) -> Vec<AdeClass> {
    let neg2: Vec<CurveId> = cfg
        .curves
        .keys()
        .copied()
        .filter(|&c| cfg.self_int(c) == -2)
        .collect();
    let dot = |a: CurveId, b: CurveId| {
        cfg.curves[&a]
            .class
            .dot(&cfg.curves[&b].class, cfg.lattice)
    };
    // adjacency with multiplicity
    let mut adj: BTreeMap<CurveId, Vec<(CurveId, i64)>> = BTreeMap::new();
    for &a in &neg2 {
        for &b in &neg2 {
            if a < b {
                let d = dot(a, b);
                if d != 0 {
                    adj.entry(a).or_default().push((b, d));
                    adj.entry(b).or_default().push((a, d));
                }
            }
        }
    }
    let mut seen: BTreeSet<CurveId> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &neg2 {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if !comp.insert(c) {
                continue;
            }
            for (n, _) in adj.get(&c).into_iter().flatten() {
                if !comp.contains(n) {
                    stack.push(*n);
                }
            }
        }
        seen.extend(comp.iter().copied());
        out.push(classify(&comp, &adj));
    }
    out
}

fn classify(comp: &BTreeSet<CurveId>, adj: &BTreeMap<CurveId, Vec<(CurveId, i64)>>) -> AdeClass {
    let invalid = |comp: &BTreeSet<CurveId>| AdeClass {
        curves: comp.clone(),
        ade: None,
        order: Vec::new(),
    };
    let n = comp.len();
    let deg = |c: CurveId| adj.get(&c).map(|v| v.len()).unwrap_or(0);
    // double edges or tangencies break the tree shape
    for &c in comp {
        for (d, m) in adj.get(&c).into_iter().flatten() {
            if comp.contains(d) && *m != 1 {
                return invalid(comp);
            }
        }
    }
    // a tree has n-1 edges; count each edge once
    let edges: usize = comp.iter().map(|&c| deg(c)).sum::<usize>() / 2;
    if edges != n - 1 {
        return invalid(comp); // contains a cycle
    }
    if comp.iter().any(|&c| deg(c) > 3) {
        return invalid(comp);
    }
    let branch: Vec<CurveId> = comp.iter().copied().filter(|&c| deg(c) == 3).collect();
    match branch.len() {
        0 => {
            // chain: order it from one end
            let mut order = Vec::with_capacity(n);
            let end = comp
                .iter()
                .copied()
                .find(|&c| deg(c) <= 1)
                .expect("a tree has leaves");
            let mut prev = None;
            let mut cur = end;
            loop {
                order.push(cur);
                let next = adj
                    .get(&cur)
                    .into_iter()
                    .flatten()
                    .map(|(d, _)| *d)
                    .find(|d| comp.contains(d) && Some(*d) != prev);
                match next {
                    None => break,
                    Some(nx) => {
                        prev = Some(cur);
                        cur = nx;
                    }
                }
            }
            AdeClass {
                curves: comp.clone(),
                ade: Some(AdeType::A(n)),
                order,
            }
        }
        1 => {
            let center = branch[0];
            let mut arms: Vec<Vec<CurveId>> = Vec::new();
            for (first, _) in adj.get(&center).into_iter().flatten() {
                let mut arm = vec![*first];
                let mut prev = center;
                let mut cur = *first;
                loop {
                    let next = adj
                        .get(&cur)
                        .into_iter()
                        .flatten()
                        .map(|(d, _)| *d)
                        .find(|&d| comp.contains(&d) && d != prev);
                    match next {
                        None => break,
                        Some(nx) => {
                            arm.push(nx);
                            prev = cur;
                            cur = nx;
                        }
                    }
                }
                arms.push(arm);
            }
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            let ade = match (lens[0], lens[1], lens[2]) {
                (1, 1, k) => Some(AdeType::D(k + 3)),
                (1, 2, 2) => Some(AdeType::E(6)),
                (1, 2, 3) => Some(AdeType::E(7)),
                (1, 2, 4) => Some(AdeType::E(8)),
                _ => None,
            };
            let mut order = vec![center];
            for arm in &arms {
                order.extend(arm.iter().copied());
            }
            AdeClass {
                curves: comp.clone(),
                ade: ade.filter(|_| ade_is_consistent(&lens, n)),
                order,
            }
        }
        _ => invalid(comp),
    }
}

fn ade_is_consistent(lens: &[usize], n: usize) -> bool {
    lens.iter().sum::<usize>() + 1 == n
}

#[cfg(test)]
mod tests {
    use super::super::{blow_up, seed_p2, BlowupCenter, SeedAction};
    use super::*;

    fn pt(cfg: &SurfaceConfig, names: &[&str]) -> BlowupCenter {
        BlowupCenter::Point(
            cfg.point_of_curves(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .unwrap(),
        )
    }

    #[test]
    fn no_minus_two_curves_empty_list() {
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        assert!(find_ade_components(&cfg).is_empty());
    }

    #[test]
    fn case_1a_gives_a1() {
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        let m2 = blow_up(&m1, pt(&m1, &["X", "E1"])).unwrap();
        let comps = find_ade_components(&m2);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].ade, Some(AdeType::A(1)));
        let e1 = m2.curve_id_by_name("E1").unwrap();
        assert!(comps[0].curves.contains(&e1));
    }

    #[test]
    fn case_2e_gives_d4() {
        let mut cfg = seed_p2(SeedAction::TypeII).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "Z"])).unwrap();
        let z = cfg.curve_id_by_name("Z").unwrap();
        cfg = blow_up(&cfg, BlowupCenter::GenericOn(z)).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["Y", "Z"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["Y", "E3"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["F1", "E2"])).unwrap();
        let comps = find_ade_components(&cfg);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].ade, Some(AdeType::D(4)));
        assert_eq!(comps[0].order[0], z); // the center is the fixed curve Z
    }

    #[test]
    fn case_3m_gives_e8() {
        let mut cfg = seed_p2(SeedAction::TypeIII { alpha: 3, beta: 1 }).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E2"])).unwrap();
        let e3 = cfg.curve_id_by_name("E3").unwrap();
        cfg = blow_up(&cfg, BlowupCenter::GenericOn(e3)).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["E4", "F1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["E5", "F1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["E6", "F1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["E7", "F1"])).unwrap();
        cfg.validate().unwrap();
        let comps = find_ade_components(&cfg);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].ade, Some(AdeType::E(8)));
        assert_eq!(cfg.degree(), 1);
    }
}
