//! Seed configurations: the three primitive `C*`-actions on the projective
//! plane, and the Hirzebruch-surface entry.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    Curve, FixedPoint, IncKind, Incidence, Lattice, PicardClass, SeedTag, SurfaceConfig,
    SurfaceError,
};

/// The primitive actions on the plane: `[tx:ty:z]`, `[t^-1 x:t^-1 y:z]`, and
/// `[t^α x : t^β y : z]` with coprime `α > β > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SeedAction {
    #[serde(rename = "type-i")]
    TypeI,
    #[serde(rename = "type-ii")]
    TypeII,
    #[serde(rename = "type-iii")]
    TypeIII { alpha: u64, beta: u64 },
}

impl SeedAction {
    pub fn tag(&self) -> SeedTag {
        match self {
            SeedAction::TypeI => SeedTag::TypeI,
            SeedAction::TypeII => SeedTag::TypeII,
            SeedAction::TypeIII { alpha, beta } => SeedTag::TypeIII {
                alpha: *alpha,
                beta: *beta,
            },
        }
    }
}

/// Builds the seed plane with its coordinate lines `X = {x=0}`, `Y`, `Z` and
/// the fixed-point data of the chosen action.
pub fn seed_p2(action: SeedAction) -> Result<SurfaceConfig, SurfaceError> {
    let h = || PicardClass(vec![1]);
    let mut curves = BTreeMap::new();
    let mut points = BTreeMap::new();

    let (fiber_deg, fixed_z, weights): (i64, bool, [[i64; 2]; 3]) = match action {
        // at X∩Y, X∩Z, Y∩Z: [along-first, along-second] in the id order below
        SeedAction::TypeI => (1, true, [[1, 1], [-1, 0], [-1, 0]]),
        SeedAction::TypeII => (1, true, [[-1, -1], [1, 0], [1, 0]]),
        SeedAction::TypeIII { alpha, beta } => {
            let (a, b) = (alpha as i64, beta as i64);
            if !(a > b && b > 0) || num_integer::gcd(a, b) != 1 {
                return Err(SurfaceError::InvalidSeed(format!(
                    "type-iii requires coprime alpha > beta > 0, got ({alpha},{beta})"
                )));
            }
            (a, false, [[b, a], [-b, a - b], [-a, b - a]])
        }
    };

    let normal_z = if fixed_z {
        // weight transversal to Z at its marked points
        Some(weights[1][0])
    } else {
        None
    };
    curves.insert(
        0,
        Curve {
            name: "X".into(),
            class: h(),
            fixed: false,
            normal_weight: None,
        },
    );
    curves.insert(
        1,
        Curve {
            name: "Y".into(),
            class: h(),
            fixed: false,
            normal_weight: None,
        },
    );
    curves.insert(
        2,
        Curve {
            name: "Z".into(),
            class: h(),
            fixed: fixed_z,
            normal_weight: normal_z,
        },
    );

    let inc = |curve, weight| Incidence {
        curve,
        weight,
        kind: IncKind::Axis,
    };
    // X∩Y = [0:0:1], X∩Z = [0:1:0], Y∩Z = [1:0:0]
    points.insert(
        0,
        FixedPoint::new(
            weights[0][0],
            weights[0][1],
            vec![inc(0, weights[0][0]), inc(1, weights[0][1])],
        ),
    );
    let zw = |i: usize| if fixed_z { 0 } else { weights[i][1] };
    points.insert(
        1,
        FixedPoint::new(
            weights[1][0],
            zw(1),
            vec![inc(0, weights[1][0]), inc(2, zw(1))],
        ),
    );
    points.insert(
        2,
        FixedPoint::new(
            weights[2][0],
            zw(2),
            vec![inc(1, weights[2][0]), inc(2, zw(2))],
        ),
    );

    let cfg = SurfaceConfig {
        lattice: Lattice::BlowupOfP2,
        seed: action.tag(),
        n_blowups: 0,
        curves,
        points,
        fiber: PicardClass(vec![fiber_deg]),
        history: Vec::new(),
        next_point_id: 3,
    };
    cfg.euler_check()?;
    Ok(cfg)
}

/// The Hirzebruch surface `H_2` with the action fixing both sections and
/// flowing from the `(-2)`-section toward the `(+2)`-section. Every fiber is
/// invariant, so no individual fiber is tracked; the fiber class is `f`.
pub fn seed_h2() -> SurfaceConfig {
    let mut curves = BTreeMap::new();
    curves.insert(
        0,
        Curve {
            name: "C0".into(),
            class: PicardClass(vec![1, 0]),
            fixed: true,
            normal_weight: Some(-1),
        },
    );
    curves.insert(
        1,
        Curve {
            name: "Cinf".into(),
            class: PicardClass(vec![1, -2]),
            fixed: true,
            normal_weight: Some(1),
        },
    );
    SurfaceConfig {
        lattice: Lattice::Hirzebruch2,
        seed: SeedTag::H2,
        n_blowups: 0,
        curves,
        points: BTreeMap::new(),
        fiber: PicardClass(vec![0, 1]),
        history: Vec::new(),
        next_point_id: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_validate() {
        for a in [
            SeedAction::TypeI,
            SeedAction::TypeII,
            SeedAction::TypeIII { alpha: 2, beta: 1 },
            SeedAction::TypeIII { alpha: 5, beta: 3 },
        ] {
            let cfg = seed_p2(a).unwrap();
            cfg.validate().unwrap();
        }
        assert!(seed_p2(SeedAction::TypeIII { alpha: 4, beta: 2 }).is_err());
        assert!(seed_p2(SeedAction::TypeIII { alpha: 1, beta: 1 }).is_err());
    }

    #[test]
    fn type_iii_weights_per_action_chart() {
        let cfg = seed_p2(SeedAction::TypeIII { alpha: 2, beta: 1 }).unwrap();
        // at [0:0:1]: [β, α] = {1, 2}
        let p = &cfg.points[&0];
        let mut ws: Vec<i64> = p.incidences.iter().map(|i| i.weight).collect();
        ws.sort();
        assert_eq!(ws, vec![1, 2]);
        assert!(p.is_repulsive());
        // c+ is [1:0:0] with [β-α, -α] = {-1, -2}
        let q = &cfg.points[&2];
        let mut ws: Vec<i64> = q.incidences.iter().map(|i| i.weight).collect();
        ws.sort();
        assert_eq!(ws, vec![-2, -1]);
        assert!(q.is_attractive());
    }

    #[test]
    fn type_i_has_fixed_line_and_equal_weight_point() {
        let cfg = seed_p2(SeedAction::TypeI).unwrap();
        assert!(cfg.curves[&2].fixed);
        assert_eq!(cfg.points[&0].eigen_weights(), (1, 1));
        // c- = [0:0:1], c+ = Z
        assert_eq!(
            cfg.repulsive_set().unwrap(),
            super::super::FlowExtreme::Point(0)
        );
        assert_eq!(
            cfg.attractive_set().unwrap(),
            super::super::FlowExtreme::Curve(2)
        );
    }

    #[test]
    fn h2_seed_shape() {
        let cfg = seed_h2();
        assert_eq!(cfg.self_int(0), 2);
        assert_eq!(cfg.self_int(1), -2);
        assert_eq!(cfg.degree(), 8);
        assert_eq!(cfg.minus_k_dot(1), 0);
        assert_eq!(cfg.minus_k_dot(0), 4);
        cfg.euler_check().unwrap();
        // fiber meets both sections once
        assert_eq!(cfg.fiber.dot(&cfg.curves[&0].class, cfg.lattice), 1);
        assert_eq!(cfg.fiber.dot(&cfg.curves[&1].class, cfg.lattice), 1);
    }
}
