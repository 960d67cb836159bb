//! Equivariant blow-ups with exact weight and class propagation.
//!
//! At a fixed point with eigendirection weights `[θ, τ]` the lifted action
//! has two fixed points on the exceptional curve, with weights `[θ, τ-θ]`
//! and `[θ-τ, τ]`; when `θ = τ` the exceptional curve is a fixed curve and
//! every incident curve lands on it at its own marked point. A blow-up at a
//! fresh generic point of a fixed curve creates the exceptional curve
//! together with the orbit closure through the chosen point, which becomes a
//! tracked curve.

use num_integer::Integer;

use super::{
    Curve, CurveId, FixedPoint, FlowExtreme, IncKind, Incidence, HistoryStep, Lattice,
    PicardClass, PointId, SurfaceConfig, SurfaceError,
};

/// A blow-up center: a recorded fixed point, or a fresh generic point of a
/// fixed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlowupCenter {
    Point(PointId),
    GenericOn(CurveId),
}

/// Which legality filters to apply during a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PruneMode {
    /// Forbid only what the lattice forces: no curve may drop below
    /// self-intersection -2 (subsumes "no center on a (-2)-curve").
    LatticeOnly,
    /// Additionally forbid mixed-sign-weight intersections of two curves of
    /// negative self-intersection.
    Corollary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PruneVerdict {
    Allowed,
    Forbidden(String),
}

/// Legality check for a proposed center.
pub fn prune_filter(cfg: &SurfaceConfig, center: BlowupCenter, mode: PruneMode) -> PruneVerdict {
    match center {
        BlowupCenter::GenericOn(cid) => {
            let c = &cfg.curves[&cid];
            if !c.fixed {
                return PruneVerdict::Forbidden("generic point of a non-fixed curve".into());
            }
            if cfg.self_int(cid) - 1 < -2 {
                return PruneVerdict::Forbidden(format!(
                    "{} would drop below -2",
                    cfg.curves[&cid].name
                ));
            }
            PruneVerdict::Allowed
        }
        BlowupCenter::Point(pid) => {
            let p = match cfg.points.get(&pid) {
                Some(p) => p,
                None => return PruneVerdict::Forbidden("unknown point".into()),
            };
            for inc in &p.incidences {
                let m = inc.kind.mult();
                if cfg.self_int(inc.curve) - m * m < -2 {
                    return PruneVerdict::Forbidden(format!(
                        "{} would drop below -2",
                        cfg.curves[&inc.curve].name
                    ));
                }
            }
            if mode == PruneMode::Corollary && p.incidences.len() >= 2 {
                let all_negative = p
                    .incidences
                    .iter()
                    .all(|i| cfg.self_int(i.curve) < 0);
                let (a, b) = p.eigen_weights();
                let strictly_one_sign = (a > 0 && b > 0) || (a < 0 && b < 0);
                if all_negative && !strictly_one_sign {
                    return PruneVerdict::Forbidden(
                        "mixed-sign intersection of two negative curves".into(),
                    );
                }
            }
            PruneVerdict::Allowed
        }
    }
}

/// Multiplicity of the generic orbit closure at a repulsive or attractive
/// point with eigen weights `(a, b)`: `min(|a|,|b|) / gcd(|a|,|b|)`.
fn orbit_mult(a: i64, b: i64) -> i64 {
    let (x, y) = (a.abs(), b.abs());
    x.min(y) / x.gcd(&y)
}

/// Local type of an orbit branch flowing into/out of a point with eigen
/// weights `(wa, wb)` (same sign): (incidence kind, tangent axis weight).
fn orbit_branch(wa: i64, wb: i64) -> (IncKind, i64) {
    let g = wa.abs().gcd(&wb.abs());
    let (a, b) = ((wa.abs().min(wb.abs())) / g, (wa.abs().max(wb.abs())) / g);
    if a == b {
        // equal-weight point: every direction is an eigendirection
        (IncKind::Axis, wa)
    } else {
        // tangent to the slow axis (smaller absolute weight)
        let axis = if wa.abs() <= wb.abs() { wa } else { wb };
        (IncKind::Tangent { mult: a, contact: b }, axis)
    }
}

fn extend_class(c: &mut PicardClass) {
    c.0.push(0);
}

/// Blows up the configuration at the given center, returning the new
/// configuration. The model is only defined over the plane lattice.
pub fn blow_up(cfg: &SurfaceConfig, center: BlowupCenter) -> Result<SurfaceConfig, SurfaceError> {
    if cfg.lattice != Lattice::BlowupOfP2 {
        return Err(SurfaceError::Inconsistent(
            "blow-ups are only performed over the plane lattice".into(),
        ));
    }
    let mut out = cfg.clone();
    out.n_blowups += 1;
    for c in out.curves.values_mut() {
        extend_class(&mut c.class);
    }
    extend_class(&mut out.fiber);
    let rank = out.rank();
    let mut e_new = PicardClass(vec![0; rank]);
    e_new.0[rank - 1] = 1;
    let new_curve_id = out.curves.keys().max().map(|m| m + 1).unwrap_or(0);
    let exc_name = format!("E{}", out.n_blowups);

    match center {
        BlowupCenter::Point(pid) => {
            let point = out
                .points
                .remove(&pid)
                .ok_or(SurfaceError::UnknownId)?;
            let names: Vec<String> = point
                .incidences
                .iter()
                .map(|i| out.curves[&i.curve].name.clone())
                .collect();
            out.history.push(if names.is_empty() {
                HistoryStep::Extreme {
                    repulsive: point.is_repulsive(),
                }
            } else {
                HistoryStep::At(names)
            });
            let (w1, w2) = point.eigen_weights();
            // drop classes by branch multiplicity
            for inc in &point.incidences {
                let m = inc.kind.mult();
                let c = out.curves.get_mut(&inc.curve).unwrap();
                c.class.0[rank - 1] -= m;
            }
            // the generic orbit passes through repulsive/attractive centers
            if (w1 > 0 && w2 > 0) || (w1 < 0 && w2 < 0) {
                out.fiber.0[rank - 1] -= orbit_mult(w1, w2);
            }

            if w1 != w2 {
                out.curves.insert(
                    new_curve_id,
                    Curve {
                        name: exc_name,
                        class: e_new,
                        fixed: false,
                        normal_weight: None,
                    },
                );
                // two new fixed points: side of each eigendirection
                let mut p_side1 = FixedPoint::new(
                    w1,
                    w2 - w1,
                    vec![Incidence {
                        curve: new_curve_id,
                        weight: w2 - w1,
                        kind: IncKind::Axis,
                    }],
                );
                let mut p_side2 = FixedPoint::new(
                    w2,
                    w1 - w2,
                    vec![Incidence {
                        curve: new_curve_id,
                        weight: w1 - w2,
                        kind: IncKind::Axis,
                    }],
                );
                for inc in &point.incidences {
                    match inc.kind {
                        IncKind::Axis => {
                            let target = if inc.weight == w1 {
                                &mut p_side1
                            } else {
                                &mut p_side2
                            };
                            target.incidences.push(Incidence {
                                curve: inc.curve,
                                weight: inc.weight,
                                kind: IncKind::Axis,
                            });
                        }
                        IncKind::Tangent { mult, contact } => {
                            // Euclid step on (mult, contact)
                            let (axis_w, other_w) = if inc.weight == w1 {
                                (w1, w2)
                            } else {
                                (w2, w1)
                            };
                            let target = if inc.weight == w1 {
                                &mut p_side1
                            } else {
                                &mut p_side2
                            };
                            let rem = contact - mult;
                            let e_dir_weight = other_w - axis_w;
                            if rem > mult {
                                target.incidences.push(Incidence {
                                    curve: inc.curve,
                                    weight: axis_w,
                                    kind: IncKind::Tangent {
                                        mult,
                                        contact: rem,
                                    },
                                });
                            } else if rem < mult {
                                target.incidences.push(Incidence {
                                    curve: inc.curve,
                                    weight: e_dir_weight,
                                    kind: if rem == 1 && mult == 1 {
                                        IncKind::Axis
                                    } else {
                                        IncKind::Tangent {
                                            mult: rem,
                                            contact: mult,
                                        }
                                    },
                                });
                            } else {
                                // rem == mult forces mult = 1, contact = 2: the
                                // branch lands transversally at an equal-weight
                                // point, where every direction is an eigendirection
                                debug_assert_eq!(axis_w, e_dir_weight,
                                    "radial branch at a non-equal-weight point");
                                target.incidences.push(Incidence {
                                    curve: inc.curve,
                                    weight: axis_w,
                                    kind: IncKind::Axis,
                                });
                            }
                        }
                    }
                }
                let id1 = out.next_point_id;
                out.points.insert(id1, p_side1);
                out.points.insert(id1 + 1, p_side2);
                out.next_point_id += 2;
            } else {
                // equal weights: the exceptional curve is a fixed curve and
                // every branch lands transversally at its own point of it
                let w = w1;
                if w == 0 {
                    return Err(SurfaceError::NotFixed(
                        "equal-weight point with zero weight".into(),
                    ));
                }
                out.curves.insert(
                    new_curve_id,
                    Curve {
                        name: exc_name,
                        class: e_new,
                        fixed: true,
                        normal_weight: Some(w),
                    },
                );
                for inc in &point.incidences {
                    if matches!(inc.kind, IncKind::Tangent { .. }) {
                        return Err(SurfaceError::Inconsistent(
                            "tangent branch at an equal-weight point".into(),
                        ));
                    }
                    let id = out.next_point_id;
                    out.next_point_id += 1;
                    out.points.insert(
                        id,
                        FixedPoint::new(
                            w,
                            0,
                            vec![
                                Incidence {
                                    curve: inc.curve,
                                    weight: w,
                                    kind: IncKind::Axis,
                                },
                                Incidence {
                                    curve: new_curve_id,
                                    weight: 0,
                                    kind: IncKind::Axis,
                                },
                            ],
                        ),
                    );
                }
            }
        }
        BlowupCenter::GenericOn(cid) => {
            let fixed_curve = out
                .curves
                .get(&cid)
                .ok_or(SurfaceError::UnknownId)?
                .clone();
            if !fixed_curve.fixed {
                return Err(SurfaceError::NotFixed(fixed_curve.name));
            }
            out.history.push(HistoryStep::GenericOn(fixed_curve.name.clone()));
            let theta = fixed_curve
                .normal_weight
                .ok_or_else(|| SurfaceError::Inconsistent("fixed curve without normal weight".into()))?;
            // the far flow extreme, computed before mutating anything
            let far = if theta > 0 {
                cfg.attractive_set()?
            } else {
                cfg.repulsive_set()?
            };
            // orbit closure through the chosen point becomes tracked
            let orbit_id = new_curve_id;
            let exc_id = new_curve_id + 1;
            let mut orbit_class = out.fiber.clone();
            orbit_class.0[rank - 1] -= 1;
            let orbit_name = format!(
                "F{}",
                out.curves.values().filter(|c| c.name.starts_with('F')).count() + 1
            );
            out.curves.insert(
                orbit_id,
                Curve {
                    name: orbit_name,
                    class: orbit_class,
                    fixed: false,
                    normal_weight: None,
                },
            );
            out.curves.insert(
                exc_id,
                Curve {
                    name: exc_name,
                    class: e_new,
                    fixed: false,
                    normal_weight: None,
                },
            );
            out.curves.get_mut(&cid).unwrap().class.0[rank - 1] -= 1;

            // the two ends of the exceptional curve
            let p_on_curve = out.next_point_id;
            let p_on_orbit = out.next_point_id + 1;
            out.next_point_id += 2;
            out.points.insert(
                p_on_curve,
                FixedPoint::new(
                    0,
                    theta,
                    vec![
                        Incidence {
                            curve: cid,
                            weight: 0,
                            kind: IncKind::Axis,
                        },
                        Incidence {
                            curve: exc_id,
                            weight: theta,
                            kind: IncKind::Axis,
                        },
                    ],
                ),
            );
            out.points.insert(
                p_on_orbit,
                FixedPoint::new(
                    -theta,
                    theta,
                    vec![
                        Incidence {
                            curve: exc_id,
                            weight: -theta,
                            kind: IncKind::Axis,
                        },
                        Incidence {
                            curve: orbit_id,
                            weight: theta,
                            kind: IncKind::Axis,
                        },
                    ],
                ),
            );
            // attach the orbit's far end
            match far {
                FlowExtreme::Curve(far_c) => {
                    let nu = out.curves[&far_c].normal_weight.unwrap();
                    let id = out.next_point_id;
                    out.next_point_id += 1;
                    out.points.insert(
                        id,
                        FixedPoint::new(
                            0,
                            nu,
                            vec![
                                Incidence {
                                    curve: far_c,
                                    weight: 0,
                                    kind: IncKind::Axis,
                                },
                                Incidence {
                                    curve: orbit_id,
                                    weight: nu,
                                    kind: IncKind::Axis,
                                },
                            ],
                        ),
                    );
                }
                FlowExtreme::Point(far_p) => {
                    let (wa, wb) = out.points[&far_p].eigen_weights();
                    let (kind, axis_w) = orbit_branch(wa, wb);
                    out.points.get_mut(&far_p).unwrap().incidences.push(Incidence {
                        curve: orbit_id,
                        weight: axis_w,
                        kind,
                    });
                }
            }
        }
    }
    debug_assert!(out.fiber.self_int(out.lattice) >= 0);
    Ok(out)
}

/// All available centers: every recorded fixed point plus one generic slot
/// per fixed curve.
pub fn available_centers(cfg: &SurfaceConfig) -> Vec<BlowupCenter> {
    let mut v: Vec<BlowupCenter> = cfg.points.keys().map(|&p| BlowupCenter::Point(p)).collect();
    v.extend(cfg.fixed_curves().into_iter().map(BlowupCenter::GenericOn));
    v
}

#[cfg(test)]
mod tests {
    use super::super::{seed_p2, SeedAction};
    use super::*;

    fn pt(cfg: &SurfaceConfig, names: &[&str]) -> BlowupCenter {
        BlowupCenter::Point(
            cfg.point_of_curves(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .unwrap_or_else(|| panic!("no point {names:?}")),
        )
    }

    fn by_name(cfg: &SurfaceConfig, name: &str) -> CurveId {
        cfg.curve_id_by_name(name).unwrap()
    }

    #[test]
    fn type_iii_first_blowup_weights() {
        // blowing up [0:0:1] (weights {1,2}) gives fixed points {1,1} and {-1,2}
        let cfg = seed_p2(SeedAction::TypeIII { alpha: 2, beta: 1 }).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        m1.validate().unwrap();
        let mut pairs: Vec<(i64, i64)> = m1
            .points
            .values()
            .map(|p| p.eigen_weights())
            .collect();
        pairs.sort();
        assert!(pairs.contains(&(1, 1)));
        assert!(pairs.contains(&(-1, 2)));
        // X is now h - e1
        let x = by_name(&m1, "X");
        assert_eq!(m1.self_int(x), 0);
        assert_eq!(m1.fiber.self_int(m1.lattice), 3); // (2h - e1)^2
    }

    #[test]
    fn type_i_blowup_at_equal_weight_point_makes_fixed_curve() {
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        m1.validate().unwrap();
        let e1 = by_name(&m1, "E1");
        assert!(m1.curves[&e1].fixed);
        assert_eq!(m1.curves[&e1].normal_weight, Some(1));
        // X and Y land on E1 at their own marked points with pairs [1,0]/[0,1]
        let landings: Vec<_> = m1
            .points
            .values()
            .filter(|p| p.incidences.iter().any(|i| i.curve == e1))
            .collect();
        assert_eq!(landings.len(), 2);
        // c- is now the fixed curve E1
        assert_eq!(m1.repulsive_set().unwrap(), FlowExtreme::Curve(e1));
    }

    #[test]
    fn generic_slot_blowup_tracks_orbit() {
        // type-ii: blow up X∩Z then a generic point of Z; the orbit through it
        // flows to c+ = X∩Y
        let cfg = seed_p2(SeedAction::TypeII).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Z"])).unwrap();
        let z = by_name(&m1, "Z");
        let m2 = blow_up(&m1, BlowupCenter::GenericOn(z)).unwrap();
        m2.validate().unwrap();
        let f = by_name(&m2, "F1");
        // orbit class is h - e2: a 0-curve
        assert_eq!(m2.self_int(f), 0);
        // its far end is the attractive point X∩Y, radially
        let cplus = m2.attractive_set().unwrap();
        match cplus {
            FlowExtreme::Point(p) => {
                assert!(m2.points[&p]
                    .incidences
                    .iter()
                    .any(|i| i.curve == f && matches!(i.kind, IncKind::Axis)));
            }
            _ => panic!("expected point"),
        }
    }

    #[test]
    fn prune_forbids_minus_two_centers() {
        // 1A shape: type-i blow-ups at X∩Y then X∩E1 leave X at -1; blowing up
        // the marked point X∩Z would push X to -2 (allowed), and a further
        // center on a -2 curve is forbidden
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        let m2 = blow_up(&m1, pt(&m1, &["X", "E1"])).unwrap();
        m2.validate().unwrap();
        let x = by_name(&m2, "X");
        assert_eq!(m2.self_int(x), -1);
        let m3 = blow_up(&m2, pt(&m2, &["X", "Z"])).unwrap();
        let x = by_name(&m3, "X");
        assert_eq!(m3.self_int(x), -2);
        // any center on X is now forbidden
        let p = m3
            .points
            .iter()
            .find(|(_, pt)| pt.incidences.iter().any(|i| i.curve == x))
            .map(|(id, _)| *id)
            .unwrap();
        assert!(matches!(
            prune_filter(&m3, BlowupCenter::Point(p), PruneMode::LatticeOnly),
            PruneVerdict::Forbidden(_)
        ));
    }

    #[test]
    fn corollary_mode_forbids_mixed_negative_intersections() {
        // after type-i X∩Y and X∩E1: the point X∩E2 has weights {-1,1} and
        // both X and E2 are (-1)-curves
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        let m1 = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        let m2 = blow_up(&m1, pt(&m1, &["X", "E1"])).unwrap();
        let center = pt(&m2, &["X", "E2"]);
        assert!(matches!(
            prune_filter(&m2, center, PruneMode::Corollary),
            PruneVerdict::Forbidden(_)
        ));
        assert!(matches!(
            prune_filter(&m2, center, PruneMode::LatticeOnly),
            PruneVerdict::Allowed
        ));
    }

    #[test]
    fn euler_count_maintained_along_case_histories() {
        // the 2E history: six blow-ups from type-ii
        let mut cfg = seed_p2(SeedAction::TypeII).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "Z"])).unwrap();
        let z = by_name(&cfg, "Z");
        cfg = blow_up(&cfg, BlowupCenter::GenericOn(z)).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["Y", "Z"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["Y", "E3"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["F1", "E2"])).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.n_blowups, 6);
        assert_eq!(cfg.degree(), 3);
        // D4: central fixed Z with three (-2) arms
        let neg2: Vec<_> = cfg
            .curves
            .keys()
            .filter(|&&c| cfg.self_int(c) == -2)
            .collect();
        assert_eq!(neg2.len(), 4);
    }

    #[test]
    fn cusp_branch_bookkeeping_on_attractor_blowup() {
        // type-iii(3,1): an orbit cusp at c+ = Y∩Z has multiplicity 2, so
        // blowing up c+ drops the orbit class by 2 (the paper's "decrease by 4"
        // in self-intersection)
        let mut cfg = seed_p2(SeedAction::TypeIII { alpha: 3, beta: 1 }).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E1"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E2"])).unwrap();
        let e3 = by_name(&cfg, "E3");
        assert!(cfg.curves[&e3].fixed);
        cfg = blow_up(&cfg, BlowupCenter::GenericOn(e3)).unwrap();
        cfg.validate().unwrap();
        let f = by_name(&cfg, "F1");
        // F = 3h - e1 - e2 - e3 - e4 with a (2,3) cusp at c+
        assert_eq!(cfg.self_int(f), 5);
        let cplus = match cfg.attractive_set().unwrap() {
            FlowExtreme::Point(p) => p,
            _ => panic!(),
        };
        let inc = cfg.points[&cplus]
            .incidences
            .iter()
            .find(|i| i.curve == f)
            .unwrap();
        assert_eq!(inc.kind, IncKind::Tangent { mult: 2, contact: 3 });
        // blow up c+: F drops by 2e, self-intersection by 4
        let next = blow_up(&cfg, BlowupCenter::Point(cplus)).unwrap();
        next.validate().unwrap();
        let f = by_name(&next, "F1");
        assert_eq!(next.self_int(f), 1);
    }

    #[test]
    fn smooth_orbit_drop_on_attractor_blowup() {
        // type-iii(2,1): the orbit is smooth at c+, self-intersection drops by 1
        let mut cfg = seed_p2(SeedAction::TypeIII { alpha: 2, beta: 1 }).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "Y"])).unwrap();
        cfg = blow_up(&cfg, pt(&cfg, &["X", "E1"])).unwrap();
        let e2 = by_name(&cfg, "E2");
        cfg = blow_up(&cfg, BlowupCenter::GenericOn(e2)).unwrap();
        cfg.validate().unwrap();
        let f = by_name(&cfg, "F1");
        let before = cfg.self_int(f);
        let cplus = match cfg.attractive_set().unwrap() {
            FlowExtreme::Point(p) => p,
            _ => panic!(),
        };
        let next = blow_up(&cfg, BlowupCenter::Point(cplus)).unwrap();
        next.validate().unwrap();
        let f = by_name(&next, "F1");
        assert_eq!(next.self_int(f), before - 1);
    }
}
