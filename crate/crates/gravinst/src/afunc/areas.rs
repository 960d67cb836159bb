//! Kähler-class assignment: areas extend to a linear functional on the
//! Picard lattice, pinned on a spanning set and vanishing on the contracted
//! exceptional curves.

use crate::exactmath::{solve_linear, RatFunc};
use crate::surface::{ClassificationCandidate, PicardClass};

use super::AFuncError;

/// A linear functional on the lattice: the area of each basis class.
#[derive(Debug, Clone)]
pub struct KahlerAssignment {
    pub basis_areas: Vec<RatFunc>,
    /// Positivity conditions cutting out the Kähler cone: the areas of the
    /// non-contracted tracked curves.
    pub domain: Vec<RatFunc>,
}

impl KahlerAssignment {
    pub fn area(&self, class: &PicardClass) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (i, &c) in class.0.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.basis_areas[i].scale(&crate::exactmath::rat(c)));
            }
        }
        acc
    }
}

/// Solves for the areas from the pins: one equation per exceptional curve
/// (area 0) and one per pin. The system must be square and nonsingular,
/// which is exactly the spec's "pins determine a basis of the contraction's
/// Picard lattice dual".
pub fn assign_kahler(
    cand: &ClassificationCandidate,
    pins: &[(String, RatFunc)],
) -> Result<KahlerAssignment, AFuncError> {
    let cfg = &cand.config;
    let rank = cfg.rank();
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut rhs: Vec<RatFunc> = Vec::new();
    let as_row = |class: &PicardClass| -> Vec<RatFunc> {
        class.0.iter().map(|&c| RatFunc::from_int(c)).collect()
    };
    for &e in &cand.exceptional {
        rows.push(as_row(&cfg.curves[&e].class));
        rhs.push(RatFunc::zero());
    }
    for (name, value) in pins {
        let id = cfg
            .curve_id_by_name(name)
            .ok_or_else(|| AFuncError::UnknownCurve(name.clone()))?;
        if cand.exceptional.contains(&id) {
            return Err(AFuncError::PinnedExceptional(name.clone()));
        }
        rows.push(as_row(&cfg.curves[&id].class));
        rhs.push(value.clone());
    }
    if rows.len() != rank {
        return Err(AFuncError::Pins(format!(
            "{} equations for rank {rank}",
            rows.len()
        )));
    }
    let basis_areas = solve_linear(&rows, &rhs)
        .map_err(|_| AFuncError::Pins("pins do not span the dual lattice".into()))?;
    let assignment = KahlerAssignment {
        basis_areas,
        domain: Vec::new(),
    };
    // the Kähler cone: positivity of every non-contracted tracked curve
    let mut domain = Vec::new();
    for (id, c) in &cfg.curves {
        if cand.exceptional.contains(id) {
            continue;
        }
        let a = assignment.area(&c.class);
        if a.as_rat().is_none() {
            domain.push(a);
        }
    }
    Ok(KahlerAssignment {
        basis_areas: assignment.basis_areas,
        domain,
    })
}
