//! The shipped case catalog: blow-up histories, Kähler pins, and expected
//! values for every case, as language-neutral JSON data. The default catalog
//! is compiled in from `fixtures/cases.json`; the `GRAVINST_FIXTURES`
//! environment variable points at an alternative directory.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::afunc::{
    moment_data, EndpointDesc, InteriorPoint, KahlerAssignment, MomentData, RawMomentInput,
};
use crate::exactmath::{parse_ratfunc, RatFunc};
use crate::surface::{
    blow_up, candidate_of, h2_candidate, normalize, seed_p2, BlowupCenter,
    ClassificationCandidate, FlowExtreme, HistoryStep, SeedAction, SeedTag, SurfaceConfig,
    SurfaceError,
};

pub const DEFAULT_CASES_JSON: &str = include_str!("../../../fixtures/cases.json");
pub const DEFAULT_EXAMPLE_JSON: &str = include_str!("../../../fixtures/example_quotient_plane.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectedData {
    /// ADE label of the orbifold group ("A1", "D4", ...).
    pub group: String,
    pub picard_rank: usize,
    pub degree: i64,
    /// Closed form of the minimum scalar curvature, when the catalog pins
    /// one ("num" and "den" as expression strings), or "degenerate"/"zero".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_s: Option<MinSExpected>,
    /// "exact" or "sampled" positivity expectation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MinSExpected {
    Closed { num: String, den: String },
    Degenerate,
    Zero,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseFixtureData {
    pub case: String,
    pub seed: SeedTag,
    #[serde(default)]
    pub history: Vec<HistoryStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biholomorphic_to: Option<String>,
    #[serde(default)]
    pub rejected: bool,
    /// Kähler pins: curve name (replay naming) to value expression.
    #[serde(default)]
    pub pins: Vec<(String, String)>,
    pub expected: ExpectedData,
}

/// A loaded fixture with its replayed candidate.
#[derive(Debug, Clone)]
pub struct CaseFixture {
    pub case: String,
    pub seed: SeedTag,
    pub history: Vec<HistoryStep>,
    pub biholomorphic_to: Option<String>,
    pub rejected: bool,
    pub pins: Vec<(String, RatFunc)>,
    pub expected: ExpectedData,
    pub replayed: ClassificationCandidate,
}

impl CaseFixture {
    pub fn seed_label(&self) -> String {
        match self.seed {
            SeedTag::TypeI => "type-i".into(),
            SeedTag::TypeII => "type-ii".into(),
            SeedTag::TypeIII { alpha, beta } => format!("type-iii({alpha},{beta})"),
            SeedTag::H2 => "h2".into(),
        }
    }

    pub fn is_primary(&self) -> bool {
        self.biholomorphic_to.is_none() && !self.rejected && self.seed != SeedTag::H2
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CatalogData {
    cases: Vec<CaseFixtureData>,
}

/// The full catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    fixtures: BTreeMap<String, CaseFixture>,
    order: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot parse catalog: {0}")]
    Parse(String),
    #[error("cannot replay `{case}`: {err}")]
    Replay { case: String, err: String },
    #[error("io: {0}")]
    Io(String),
}

/// Replays a blow-up history from its seed.
pub fn replay_history(
    seed: &SeedTag,
    history: &[HistoryStep],
) -> Result<SurfaceConfig, SurfaceError> {
    let action = match seed {
        SeedTag::TypeI => SeedAction::TypeI,
        SeedTag::TypeII => SeedAction::TypeII,
        SeedTag::TypeIII { alpha, beta } => SeedAction::TypeIII {
            alpha: *alpha,
            beta: *beta,
        },
        SeedTag::H2 => {
            return Ok(crate::surface::seed_h2());
        }
    };
    let mut cfg = normalize(&seed_p2(action)?);
    for step in history {
        let center = match step {
            HistoryStep::At(names) => BlowupCenter::Point(
                cfg.point_of_curves(names)
                    .ok_or_else(|| SurfaceError::Inconsistent(format!("no point {names:?}")))?,
            ),
            HistoryStep::GenericOn(name) => BlowupCenter::GenericOn(
                cfg.curve_id_by_name(name).ok_or(SurfaceError::UnknownId)?,
            ),
            HistoryStep::Extreme { repulsive } => {
                let ext = if *repulsive {
                    cfg.repulsive_set()?
                } else {
                    cfg.attractive_set()?
                };
                match ext {
                    FlowExtreme::Point(p) => BlowupCenter::Point(p),
                    FlowExtreme::Curve(_) => {
                        return Err(SurfaceError::NotFixed(
                            "flow extreme is a curve, not a point".into(),
                        ))
                    }
                }
            }
        };
        cfg = normalize(&blow_up(&cfg, center)?);
    }
    Ok(cfg)
}

impl Catalog {
    pub fn from_json(json: &str) -> Result<Catalog, FixtureError> {
        let data: CatalogData =
            serde_json::from_str(json).map_err(|e| FixtureError::Parse(e.to_string()))?;
        let mut fixtures = BTreeMap::new();
        let mut order = Vec::new();
        for d in data.cases {
            let case = d.case.clone();
            let replayed = if d.seed == SeedTag::H2 {
                h2_candidate()
            } else {
                let cfg = replay_history(&d.seed, &d.history).map_err(|e| {
                    FixtureError::Replay {
                        case: case.clone(),
                        err: e.to_string(),
                    }
                })?;
                candidate_of(&cfg, false).ok_or_else(|| FixtureError::Replay {
                    case: case.clone(),
                    err: "replayed configuration is not a contractible candidate".into(),
                })?
            };
            let pins = d
                .pins
                .iter()
                .map(|(n, v)| {
                    parse_ratfunc(v)
                        .map(|rv| (n.clone(), rv))
                        .map_err(|e| FixtureError::Replay {
                            case: case.clone(),
                            err: e.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            fixtures.insert(
                case.clone(),
                CaseFixture {
                    case: case.clone(),
                    seed: d.seed,
                    history: d.history,
                    biholomorphic_to: d.biholomorphic_to,
                    rejected: d.rejected,
                    pins,
                    expected: d.expected,
                    replayed,
                },
            );
            order.push(case);
        }
        Ok(Catalog { fixtures, order })
    }

    /// Loads the catalog from `GRAVINST_FIXTURES/cases.json` when the
    /// environment variable is set, else the compiled-in default.
    pub fn load_default() -> Result<Catalog, FixtureError> {
        match std::env::var("GRAVINST_FIXTURES") {
            Ok(dir) => {
                let path = std::path::Path::new(&dir).join("cases.json");
                let json =
                    std::fs::read_to_string(&path).map_err(|e| FixtureError::Io(e.to_string()))?;
                Catalog::from_json(&json)
            }
            Err(_) => Catalog::from_json(DEFAULT_CASES_JSON),
        }
    }

    pub fn case(&self, label: &str) -> Option<&CaseFixture> {
        self.fixtures.get(label)
    }

    pub fn cases_in_order(&self) -> impl Iterator<Item = &CaseFixture> {
        self.order.iter().map(|c| &self.fixtures[c])
    }

    pub fn primary_cases(&self) -> Vec<&CaseFixture> {
        self.cases_in_order().filter(|f| f.is_primary()).collect()
    }

    pub fn merged_cases(&self) -> Vec<(&CaseFixture, String)> {
        self.cases_in_order()
            .filter_map(|f| f.biholomorphic_to.clone().map(|t| (f, t)))
            .collect()
    }

    pub fn rejected_case(&self, label: &str) -> Option<ClassificationCandidate> {
        self.fixtures
            .get(label)
            .filter(|f| f.rejected)
            .map(|f| f.replayed.clone())
    }

    pub fn eguchi_hanson(&self) -> Option<&CaseFixture> {
        self.cases_in_order().find(|f| f.seed == SeedTag::H2)
    }

    /// Assembles the moment data of a case from its pins.
    pub fn moment_data_of(&self, label: &str) -> Result<MomentData, FixtureError> {
        let fx = self
            .case(label)
            .ok_or_else(|| FixtureError::Parse(format!("no case {label}")))?;
        if fx.seed == SeedTag::H2 {
            return eguchi_hanson_moment_data().map_err(|e| FixtureError::Replay {
                case: label.into(),
                err: e.to_string(),
            });
        }
        let ka: KahlerAssignment = crate::afunc::assign_kahler(&fx.replayed, &fx.pins)
            .map_err(|e| FixtureError::Replay {
                case: label.into(),
                err: e.to_string(),
            })?;
        moment_data(&fx.replayed, &ka).map_err(|e| FixtureError::Replay {
            case: label.into(),
            err: e.to_string(),
        })
    }
}

/// Moment data of the Hirzebruch entry with the class pinned by
/// `ω(C_0) = 1`: fiber area 1/2, both Chern numbers -2, no interior points.
pub fn eguchi_hanson_moment_data() -> Result<MomentData, crate::afunc::AFuncError> {
    use crate::exactmath::ratio;
    crate::afunc::moment_data_from_raw(RawMomentInput {
        omega_c_plus: RatFunc::one(),
        omega_c_minus: RatFunc::zero(),
        omega_f: RatFunc::from_rat(ratio(1, 2)),
        c_plus: EndpointDesc::Curve {
            cover_self_int: 2,
            order: 1,
        },
        c_minus: EndpointDesc::Point {
            weights: (ratio(1, 2), ratio(1, 2)),
            order: 2,
        },
        interior: Vec::new(),
        c1_omega: RatFunc::from_int(2),
    })
}

/// The serialized form of the quotient-plane example (`example_quotient_plane.json`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMomentFixture {
    pub omega_c_plus: String,
    pub omega_c_minus: String,
    pub omega_f: String,
    pub c_plus: EndpointDesc,
    pub c_minus: EndpointDesc,
    #[serde(default)]
    pub interior: Vec<InteriorPoint>,
    pub c1_omega: String,
}

impl RawMomentFixture {
    pub fn load_default() -> Result<MomentData, FixtureError> {
        let json = match std::env::var("GRAVINST_FIXTURES") {
            Ok(dir) => std::fs::read_to_string(
                std::path::Path::new(&dir).join("example_quotient_plane.json"),
            )
            .map_err(|e| FixtureError::Io(e.to_string()))?,
            Err(_) => DEFAULT_EXAMPLE_JSON.to_string(),
        };
        let raw: RawMomentFixture =
            serde_json::from_str(&json).map_err(|e| FixtureError::Parse(e.to_string()))?;
        raw.build().map_err(|e| FixtureError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<MomentData, crate::afunc::AFuncError> {
        let p = |s: &str| parse_ratfunc(s).map_err(crate::afunc::AFuncError::Exact);
        crate::afunc::moment_data_from_raw(RawMomentInput {
            omega_c_plus: p(&self.omega_c_plus)?,
            omega_c_minus: p(&self.omega_c_minus)?,
            omega_f: p(&self.omega_f)?,
            c_plus: self.c_plus.clone(),
            c_minus: self.c_minus.clone(),
            interior: self.interior.clone(),
            c1_omega: p(&self.c1_omega)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_replays() {
        let cat = Catalog::load_default().unwrap();
        assert_eq!(cat.primary_cases().len(), 14);
        assert_eq!(cat.merged_cases().len(), 6);
        assert!(cat.rejected_case("2C").is_some());
        assert!(cat.eguchi_hanson().is_some());
        for fx in cat.cases_in_order() {
            if fx.seed == SeedTag::H2 || fx.rejected {
                continue;
            }
            assert_eq!(
                fx.replayed.ade.label(),
                fx.expected.group,
                "case {}",
                fx.case
            );
            assert_eq!(fx.replayed.picard_rank, fx.expected.picard_rank, "case {}", fx.case);
            assert_eq!(fx.replayed.degree, fx.expected.degree, "case {}", fx.case);
        }
    }

    #[test]
    fn example_fixture_loads() {
        let md = RawMomentFixture::load_default().unwrap();
        assert_eq!(md.chern_minus, crate::exactmath::ratio(-1, 3));
    }
}
