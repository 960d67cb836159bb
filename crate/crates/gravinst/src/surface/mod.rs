//! Equivariant rational surfaces over a Picard intersection lattice.
//!
//! A [`SurfaceConfig`] records the invariant curves (with exact Picard
//! classes), the fixed points of the `C*`-action (with the weight of the
//! action in the direction of each incident curve), and the class of a
//! generic orbit closure. Blow-ups propagate all of this exactly; the
//! recorded data is enough to recognize ADE exceptional sets, contract them
//! to orbifold candidates, and later assign Kähler areas by linearity.

mod ade;
mod blowup;
mod canon;
mod contract;
mod normalize;
mod seeds;

pub use ade::{find_ade_components, AdeClass, AdeType};
pub use blowup::{available_centers, blow_up, prune_filter, BlowupCenter, PruneMode, PruneVerdict};
pub use canon::canonical_form;
pub use normalize::normalize;
pub use contract::{candidate_of, contract, h2_candidate, ClassificationCandidate};
pub use seeds::{seed_h2, seed_p2, SeedAction};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{rat_to_string, BigRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("unknown curve or point id")]
    UnknownId,
    #[error("blow-up center is not a fixed point: {0}")]
    NotFixed(String),
    #[error("model invariant violated: {0}")]
    Inconsistent(String),
    #[error("contraction failed: {0}")]
    Contract(String),
    #[error("{0}")]
    Toric(#[from] crate::toric::ToricError),
}

pub type CurveId = u32;
pub type PointId = u32;

/// Intersection lattices supported by the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lattice {
    /// Basis `(h; e_1..e_n)`: `h·h = 1`, `e_i·e_i = -1`, mixed products 0;
    /// canonical class `-3h + Σ e_i`.
    BlowupOfP2,
    /// Basis `(c0, f)` on the second Hirzebruch surface: `c0·c0 = 2`,
    /// `c0·f = 1`, `f·f = 0`; canonical class `-2 c0`.
    Hirzebruch2,
}

/// A divisor class in the configured basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicardClass(pub Vec<i64>);

impl PicardClass {
    pub fn dot(&self, other: &PicardClass, lattice: Lattice) -> i64 {
        match lattice {
            Lattice::BlowupOfP2 => {
                let mut s = self.0[0] * other.0[0];
                for i in 1..self.0.len() {
                    s -= self.0[i] * other.0[i];
                }
                s
            }
            Lattice::Hirzebruch2 => {
                2 * self.0[0] * other.0[0] + self.0[0] * other.0[1] + self.0[1] * other.0[0]
            }
        }
    }

    pub fn self_int(&self, lattice: Lattice) -> i64 {
        self.dot(self, lattice)
    }
}

/// How an invariant curve sits at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IncKind {
    /// The curve is one of the two eigendirections (smooth, transversal to
    /// the other).
    Axis,
    /// Locally `v^mult = c·u^contact` along the eigendirection whose weight
    /// the incidence carries; `mult` is the curve multiplicity at the point,
    /// `contact` its contact order with that eigendirection. At an
    /// equal-weight point every direction is an eigendirection, so the Axis
    /// kind covers all branches there.
    Tangent { mult: i64, contact: i64 },
}

impl IncKind {
    pub fn mult(&self) -> i64 {
        match self {
            IncKind::Axis => 1,
            IncKind::Tangent { mult, .. } => *mult,
        }
    }

    /// Delta invariant of the local branch (0 unless genuinely singular).
    pub fn delta(&self) -> i64 {
        match self {
            IncKind::Tangent { mult, contact } => (mult - 1) * (contact - 1) / 2,
            _ => 0,
        }
    }
}

/// One curve through a fixed point, with the weight of the action in the
/// curve's tangent direction there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub curve: CurveId,
    pub weight: i64,
    pub kind: IncKind,
}

/// A fixed point of the action: isolated when no incident curve is a fixed
/// curve, otherwise a marked point on that fixed curve. The eigendirection
/// weight pair is stored explicitly: incident curves may be forgotten by the
/// normalization when they are indistinguishable from generic orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    /// The two eigendirection weights, sorted.
    pub weights: (i64, i64),
    pub incidences: Vec<Incidence>,
}

impl FixedPoint {
    pub fn new(w1: i64, w2: i64, incidences: Vec<Incidence>) -> Self {
        let weights = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        FixedPoint {
            weights,
            incidences,
        }
    }

    /// The two eigendirection weights (equal at an equal-weight point).
    pub fn eigen_weights(&self) -> (i64, i64) {
        self.weights
    }

    pub fn is_repulsive(&self) -> bool {
        let (a, b) = self.weights;
        a > 0 && b > 0
    }

    pub fn is_attractive(&self) -> bool {
        let (a, b) = self.weights;
        a < 0 && b < 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub class: PicardClass,
    pub fixed: bool,
    /// Weight of the action on the normal bundle, for fixed curves.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_weight: Option<i64>,
}

/// Where the generic flow starts and ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowExtreme {
    Point(PointId),
    Curve(CurveId),
}

/// Seed actions a configuration can originate from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "seed")]
pub enum SeedTag {
    #[serde(rename = "type-i")]
    TypeI,
    #[serde(rename = "type-ii")]
    TypeII,
    #[serde(rename = "type-iii")]
    TypeIII { alpha: u64, beta: u64 },
    #[serde(rename = "h2")]
    H2,
}

/// A named step of the blow-up history, replayable across implementations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HistoryStep {
    /// Blow up the fixed point where the named curves meet.
    At(Vec<String>),
    /// Blow up a fresh generic point of the named fixed curve.
    GenericOn(String),
    /// Blow up the repulsive (or attractive) fixed point.
    Extreme { repulsive: bool },
}

/// An equivariant rational surface with its full fixed-point data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub lattice: Lattice,
    pub seed: SeedTag,
    pub n_blowups: usize,
    pub curves: BTreeMap<CurveId, Curve>,
    pub points: BTreeMap<PointId, FixedPoint>,
    /// Class of the closure of a generic orbit.
    pub fiber: PicardClass,
    pub history: Vec<HistoryStep>,
    pub(crate) next_point_id: PointId,
}

impl SurfaceConfig {
    pub fn rank(&self) -> usize {
        match self.lattice {
            Lattice::BlowupOfP2 => 1 + self.n_blowups,
            Lattice::Hirzebruch2 => 2,
        }
    }

    /// Canonical class in the configured basis.
    pub fn canonical_class(&self) -> PicardClass {
        match self.lattice {
            Lattice::BlowupOfP2 => {
                let mut v = vec![1i64; self.rank()];
                v[0] = -3;
                PicardClass(v)
            }
            Lattice::Hirzebruch2 => PicardClass(vec![-2, 0]),
        }
    }

    pub fn curve(&self, id: CurveId) -> &Curve {
        &self.curves[&id]
    }

    pub fn self_int(&self, id: CurveId) -> i64 {
        self.curves[&id].class.self_int(self.lattice)
    }

    pub fn minus_k_dot(&self, id: CurveId) -> i64 {
        let k = self.canonical_class();
        -k.dot(&self.curves[&id].class, self.lattice)
    }

    /// Degree `K^2` of the surface.
    pub fn degree(&self) -> i64 {
        let k = self.canonical_class();
        k.self_int(self.lattice)
    }

    pub fn curve_id_by_name(&self, name: &str) -> Option<CurveId> {
        self.curves
            .iter()
            .find(|(_, c)| c.name == name)
            .map(|(id, _)| *id)
    }

    /// The point where all the named curves meet (unique match required).
    pub fn point_of_curves(&self, names: &[String]) -> Option<PointId> {
        let ids: Vec<CurveId> = names
            .iter()
            .map(|n| self.curve_id_by_name(n))
            .collect::<Option<_>>()?;
        let mut found = None;
        for (pid, pt) in &self.points {
            if ids
                .iter()
                .all(|id| pt.incidences.iter().any(|i| i.curve == *id))
            {
                if found.is_some() {
                    return None;
                }
                found = Some(*pid);
            }
        }
        found
    }

    /// True when the point lies on a fixed curve (not isolated).
    pub fn on_fixed_curve(&self, pid: PointId) -> bool {
        self.points[&pid]
            .incidences
            .iter()
            .any(|i| self.curves[&i.curve].fixed)
    }

    pub fn isolated_points(&self) -> Vec<PointId> {
        self.points
            .keys()
            .copied()
            .filter(|&p| !self.on_fixed_curve(p))
            .collect()
    }

    pub fn fixed_curves(&self) -> Vec<CurveId> {
        self.curves
            .iter()
            .filter(|(_, c)| c.fixed)
            .map(|(id, _)| *id)
            .collect()
    }

    /// The repulsive set `c_-`: the unique all-positive isolated point or
    /// positively-normal fixed curve.
    pub fn repulsive_set(&self) -> Result<FlowExtreme, SurfaceError> {
        self.extreme(true)
    }

    /// The attractive set `c_+`.
    pub fn attractive_set(&self) -> Result<FlowExtreme, SurfaceError> {
        self.extreme(false)
    }

    fn extreme(&self, repulsive: bool) -> Result<FlowExtreme, SurfaceError> {
        let mut found: Vec<FlowExtreme> = Vec::new();
        for pid in self.isolated_points() {
            let p = &self.points[&pid];
            if (repulsive && p.is_repulsive()) || (!repulsive && p.is_attractive()) {
                found.push(FlowExtreme::Point(pid));
            }
        }
        for cid in self.fixed_curves() {
            let w = self.curves[&cid].normal_weight.ok_or_else(|| {
                SurfaceError::Inconsistent("fixed curve without normal weight".into())
            })?;
            if (repulsive && w > 0) || (!repulsive && w < 0) {
                found.push(FlowExtreme::Curve(cid));
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            n => Err(SurfaceError::Inconsistent(format!(
                "{n} candidate {} sets",
                if repulsive { "repulsive" } else { "attractive" }
            ))),
        }
    }

    /// Isolated fixed points plus twice the fixed curves must equal the
    /// Euler number of the surface.
    pub fn euler_check(&self) -> Result<(), SurfaceError> {
        let expected = match self.lattice {
            Lattice::BlowupOfP2 => 3 + self.n_blowups as i64,
            Lattice::Hirzebruch2 => 4,
        };
        let got = self.isolated_points().len() as i64 + 2 * self.fixed_curves().len() as i64;
        if got == expected {
            Ok(())
        } else {
            Err(SurfaceError::Inconsistent(format!(
                "Euler count {got} != {expected}"
            )))
        }
    }

    /// Full structural validation: Euler count, adjunction (with delta
    /// corrections for singular orbit closures), per-curve endpoint speeds,
    /// and lattice-vs-incidence intersection bookkeeping.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        self.euler_check()?;
        let fail = |msg: String| Err(SurfaceError::Inconsistent(msg));

        for (id, c) in &self.curves {
            let deltas: i64 = self
                .points
                .values()
                .flat_map(|p| &p.incidences)
                .filter(|i| i.curve == *id)
                .map(|i| i.kind.delta())
                .sum();
            let lhs = self.self_int(*id) - self.minus_k_dot(*id);
            if lhs != -2 + 2 * deltas {
                return fail(format!(
                    "adjunction fails for {}: C^2+K.C = {} with delta sum {}",
                    c.name, lhs, deltas
                ));
            }
        }

        for p in self.points.values() {
            for i in &p.incidences {
                if matches!(i.kind, IncKind::Axis)
                    && i.weight != p.weights.0
                    && i.weight != p.weights.1
                {
                    return fail("axis incidence disagrees with the point weights".into());
                }
                if self.curves[&i.curve].fixed && i.weight != 0 {
                    return fail("nonzero weight along a fixed curve".into());
                }
            }
        }

        // non-fixed curves have exactly two endpoint records with opposite
        // parameter speeds (weight scaled by branch multiplicity)
        for (id, c) in &self.curves {
            let ends: Vec<&Incidence> = self
                .points
                .values()
                .flat_map(|p| &p.incidences)
                .filter(|i| i.curve == *id)
                .collect();
            if !c.fixed {
                if ends.len() != 2 {
                    return fail(format!("{} has {} endpoint records", c.name, ends.len()));
                }
                let (a, b) = (ends[0], ends[1]);
                if a.weight * b.kind.mult() + b.weight * a.kind.mult() != 0 {
                    return fail(format!("{} endpoint speeds inconsistent", c.name));
                }
            }
        }

        // lattice intersection numbers match the recorded incidences
        let ids: Vec<CurveId> = self.curves.keys().copied().collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let want = self.curves[&a]
                    .class
                    .dot(&self.curves[&b].class, self.lattice);
                let mut got = 0i64;
                for p in self.points.values() {
                    let ia = p.incidences.iter().find(|x| x.curve == a);
                    let ib = p.incidences.iter().find(|x| x.curve == b);
                    if let (Some(ia), Some(ib)) = (ia, ib) {
                        got += pair_contact(ia, ib);
                    }
                }
                if want != got {
                    return fail(format!(
                        "{} . {} = {} in the lattice but {} from incidences",
                        self.curves[&a].name, self.curves[&b].name, want, got
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Local intersection number of two branches at a common fixed point.
fn pair_contact(a: &Incidence, b: &Incidence) -> i64 {
    use IncKind::*;
    match (&a.kind, &b.kind) {
        (Axis, Axis) => 1,
        (Axis, Tangent { mult, contact }) => {
            // tangent to the axis carried by `a` exactly when the weights agree
            if a.weight == b.weight {
                *contact
            } else {
                *mult
            }
        }
        (Tangent { .. }, Axis) => pair_contact(b, a),
        (
            Tangent {
                mult: m1,
                contact: c1,
            },
            Tangent {
                mult: m2,
                contact: c2,
            },
        ) => {
            if a.weight == b.weight {
                std::cmp::min(c1 * m2, c2 * m1)
            } else {
                m1 * m2
            }
        }
    }
}

/// Renders a weight pair for reports.
pub fn weight_pair_string(w: &(BigRational, BigRational)) -> String {
    format!("[{}, {}]", rat_to_string(&w.0), rat_to_string(&w.1))
}
