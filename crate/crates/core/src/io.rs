//! JSON instance files.
//!
//! ```json
//! {"group": {"named": "cyclic", "n": 2},
//!  "space": {"points": ["a", "b"], "min_nbhd": {"a": ["a"], "b": ["b"]}},
//!  "carriers": {"1": ["a"]},
//!  "theta": {"1": {"a": "a"}}}
//! ```
//!
//! A global action gives `"act": {"g": {"x": "y"}}` instead of carriers and
//! maps. Groups may also be `{"elements": [...], "table": [[...]]}` and spaces
//! `{"points": [...], "subbasis": [[...]]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::actions::{GlobalAction, PartialAction};
use crate::error::{Error, Result};
use crate::groups::FinGroup;
use crate::hyperspace::Kind;
use crate::point::Point;
use crate::topology::{FinSpace, GenMode};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_nbhd: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subbasis: Option<Vec<Vec<String>>>,
}

type PointAssignment = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub group: GroupSpec,
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carriers: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<PointAssignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<PointAssignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

/// A parsed and structurally checked instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub action: PartialAction,
    /// Present when the file gave a global action.
    pub global: Option<GlobalAction>,
    pub kind: Option<Kind>,
    pub checks: Vec<String>,
}

fn at(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        path: path.into(),
        message: e.to_string(),
    }
}

/// Parse JSON text into an [`InstanceSpec`], reporting the key path and
/// line of any error.
pub fn parse_spec(text: &str) -> Result<InstanceSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            path,
            message: format!("{inner} (line {}, column {})", inner.line(), inner.column()),
        }
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_spec(text)?.build()
}

impl GroupSpec {
    pub fn build(&self) -> Result<FinGroup> {
        match (&self.named, &self.elements, &self.table) {
            (Some(name), None, None) => {
                let n = || self.n.ok_or_else(|| at("group.n", format!("`{name}` needs n")));
                match name.as_str() {
                    "trivial" => Ok(FinGroup::trivial()),
                    "cyclic" => FinGroup::cyclic(n()?),
                    "klein4" => Ok(FinGroup::klein4()),
                    "sym" => FinGroup::sym(n()?),
                    other => Err(at("group.named", format!("unknown group `{other}`"))),
                }
            }
            (None, Some(elements), Some(table)) => FinGroup::from_named_table(elements.clone(), table),
            _ => Err(at("group", "give either `named` or both `elements` and `table`")),
        }
    }

    pub fn of(group: &FinGroup) -> Self {
        let names = group.elements();
        GroupSpec {
            elements: Some(names.to_vec()),
            table: Some(
                group
                    .table()
                    .iter()
                    .map(|row| row.iter().map(|&k| names[k].clone()).collect())
                    .collect(),
            ),
            ..Default::default()
        }
    }
}

impl SpaceSpec {
    pub fn build(&self) -> Result<FinSpace> {
        let points: Vec<Point> = self.points.iter().map(|p| Point::atom(p.clone())).collect();
        match (&self.min_nbhd, &self.subbasis) {
            (Some(nbhd), None) => {
                let owned: Vec<(&str, Vec<&str>)> = nbhd
                    .iter()
                    .map(|(p, u)| (p.as_str(), u.iter().map(String::as_str).collect()))
                    .collect();
                let refs: Vec<(&str, &[&str])> = owned.iter().map(|(p, u)| (*p, u.as_slice())).collect();
                let labels: Vec<&str> = self.points.iter().map(String::as_str).collect();
                FinSpace::from_labels(&labels, &refs)
            }
            (None, Some(gens)) => {

                let probe = FinSpace::discrete_points(points.clone())?;
                let sets = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        probe.set_of(g.iter().map(String::as_str)).map_err(|e| at(&format!("space.subbasis[{i}]"), e))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FinSpace::mk_space(points, &sets, GenMode::Subbasis)
            }
            _ => Err(at("space", "give exactly one of `min_nbhd` and `subbasis`")),
        }
    }

    pub fn of(space: &FinSpace) -> Self {
        let label = |i: usize| space.point(i).to_string();
        SpaceSpec {
            points: (0..space.len()).map(label).collect(),
            min_nbhd: Some(
                (0..space.len())
                    .map(|p| (label(p), space.nbhd(p).ones().map(label).collect()))
                    .collect(),
            ),
            subbasis: None,
        }
    }
}

fn borrow_assignment(a: &PointAssignment) -> Vec<(String, Vec<(String, String)>)> {
    a.iter()
        .map(|(g, m)| (g.clone(), m.iter().map(|(x, y)| (x.clone(), y.clone())).collect()))
        .collect()
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Instance> {
        let group = self.group.build()?;
        let space = self.space.build()?;
        for (key, names) in [("carriers", self.carriers.as_ref().map(|c| c.keys().collect::<Vec<_>>())),
            ("theta", self.theta.as_ref().map(|c| c.keys().collect())),
            ("act", self.act.as_ref().map(|c| c.keys().collect()))]
        {
            for g in names.unwrap_or_default() {
                group.index_of(g).map_err(|e| at(&format!("{key}.{g}"), e))?;
            }
        }
        let (action, global) = match (&self.act, &self.carriers, &self.theta) {
            (Some(act), None, None) => {
                let owned = borrow_assignment(act);
                let pairs: Vec<Vec<(&str, &str)>> = owned
                    .iter()
                    .map(|(_, m)| m.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect())
                    .collect();
                let refs: Vec<(&str, &[(&str, &str)])> =
                    owned.iter().zip(&pairs).map(|((g, _), m)| (g.as_str(), m.as_slice())).collect();
                let ga = GlobalAction::from_labels(group, space, &refs)?;
                (ga.to_partial(), Some(ga))
            }
            (None, carriers, theta) => {
                let no_carriers = BTreeMap::new();
                let no_theta = BTreeMap::new();
                let carriers: Vec<(&str, Vec<&str>)> = carriers
                    .as_ref()
                    .unwrap_or(&no_carriers)
                    .iter()
                    .map(|(g, xs)| (g.as_str(), xs.iter().map(String::as_str).collect()))
                    .collect();
                let carrier_refs: Vec<(&str, &[&str])> = carriers.iter().map(|(g, x)| (*g, x.as_slice())).collect();
                let owned = borrow_assignment(theta.as_ref().unwrap_or(&no_theta));
                let pairs: Vec<Vec<(&str, &str)>> = owned
                    .iter()
                    .map(|(_, m)| m.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect())
                    .collect();
                let refs: Vec<(&str, &[(&str, &str)])> =
                    owned.iter().zip(&pairs).map(|((g, _), m)| (g.as_str(), m.as_slice())).collect();
                (PartialAction::from_labels(group, space, &carrier_refs, &refs)?, None)
            }
            _ => return Err(at("act", "`act` cannot be combined with `carriers` or `theta`")),
        };
        Ok(Instance {
            action,
            global,
            kind: self.kind,
            checks: self.checks.clone().unwrap_or_default(),
        })
    }

    /// Spec of a partial action, listing every carrier and map.
    pub fn of_partial(pa: &PartialAction) -> Self {
        let g = pa.group();
        let s = pa.space();
        let label = |i: usize| s.point(i).to_string();
        InstanceSpec {
            group: GroupSpec::of(g),
            space: SpaceSpec::of(s),
            carriers: Some(
                (0..g.order())
                    .map(|k| (g.name(k).to_string(), pa.carrier(k).ones().map(label).collect()))
                    .collect(),
            ),
            theta: Some(
                (0..g.order())
                    .map(|k| {
                        let m = (0..s.len())
                            .filter_map(|x| pa.apply(k, x).map(|y| (label(x), label(y))))
                            .collect();
                        (g.name(k).to_string(), m)
                    })
                    .collect(),
            ),
            act: None,
            kind: None,
            checks: None,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serialisable")
    }
}
