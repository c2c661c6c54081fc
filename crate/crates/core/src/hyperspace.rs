//! Vietoris hyperspaces of finite spaces.
//!
//! Points of a hyperspace are nonempty subsets of the base space (all of them
//! for `H1`, connected ones for `H2`). The least open neighbourhood of `A` is
//! `{B : B ⊆ ∪_{a∈A} U_a, B ∩ U_a ≠ ∅ for all a ∈ A}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::actions::PartialAction;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::report::{hyps, CheckReport};
use crate::topology::{is_partial_homeomorphism, set_with, FinSpace, PointMap, PointSet};

/// Largest base space accepted by [`build_hyperspace`] for `H1` and `H3`.
pub const BASE_CAP: usize = 10;
/// Largest base space scanned for connected subsets (`H2`).
pub const CONNECTED_BASE_CAP: usize = 16;
/// Largest number of points in any hyperspace.
pub const POINT_CAP: usize = (1 << BASE_CAP) - 1;
/// Bases up to this size have their topology cross-checked against the
/// subbasis construction.
pub const ORACLE_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// All nonempty subsets.
    H1,
    /// Nonempty connected subsets.
    H2,
    /// Finite nonempty subsets; same points as `H1` over a finite base.
    H3,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::H1 => "h1",
            Kind::H2 => "h2",
            Kind::H3 => "h3",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Some(Kind::H1),
            "h2" => Some(Kind::H2),
            "h3" => Some(Kind::H3),
            _ => None,
        }
    }

    /// Whether every nonempty subset is a point.
    pub fn is_full(self) -> bool {
        !matches!(self, Kind::H2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperspace {
    base: FinSpace,
    kind: Kind,
    space: FinSpace,
    members: Vec<PointSet>,
    lookup: HashMap<PointSet, usize>,
}

/// Nonempty subsets of `base` admitted by `kind`, ordered by bitmask value.
fn kind_members(base: &FinSpace, kind: Kind) -> Result<Vec<PointSet>> {
    let n = base.len();
    let cap = if kind.is_full() { BASE_CAP } else { CONNECTED_BASE_CAP };
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "{} hyperspace of a {n}-point space exceeds the {cap}-point cap",
            kind.name()
        )));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let s = set_with(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if kind.is_full() || base.is_connected(&s)? {
            out.push(s);
            if out.len() > POINT_CAP {
                return Err(Error::SizeLimit(format!("hyperspace exceeds {POINT_CAP} points")));
            }
        }
    }
    Ok(out)
}

fn subset_label(base: &FinSpace, s: &PointSet) -> Point {
    Point::Set(base.labels_of(s))
}

/// Least Vietoris neighbourhood of `a` among `members`.
fn vietoris_nbhd(base: &FinSpace, members: &[PointSet], a: &PointSet) -> PointSet {
    let cover = base.open_hull(a);
    let us: Vec<&PointSet> = a.ones().map(|p| base.nbhd(p)).collect();
    set_with(
        members.len(),
        members
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_subset(&cover) && us.iter().all(|u| !u.is_disjoint(b)))
            .map(|(i, _)| i),
    )
}

pub fn build_hyperspace(base: &FinSpace, kind: Kind) -> Result<Hyperspace> {
    let members = kind_members(base, kind)?;
    let points: Vec<Point> = members.iter().map(|s| subset_label(base, s)).collect();
    let nbhd: Vec<PointSet> = members.iter().map(|a| vietoris_nbhd(base, &members, a)).collect();
    let space = FinSpace::from_min_nbhd(points, nbhd)?;
    if base.len() <= ORACLE_CAP {
        let oracle = vietoris_subbasis_space(base, kind)?;
        if oracle != space {
            return Err(Error::Validation(
                "Vietoris neighbourhoods disagree with the subbasis topology".into(),
            ));
        }
    }
    let lookup = members.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(Hyperspace {
        base: base.clone(),
        kind,
        space,
        members,
        lookup,
    })
}

/// The hyperspace topology generated from the subbasis `⟨U⟩`, `⟨X, U⟩` with
/// `U` ranging over the open sets of `base`.
pub fn vietoris_subbasis_space(base: &FinSpace, kind: Kind) -> Result<FinSpace> {
    let members = kind_members(base, kind)?;
    let opens = base.open_sets(1 << BASE_CAP)?;
    let mut gens = Vec::with_capacity(2 * opens.len());
    for u in &opens {
        gens.push(set_with(
            members.len(),
            members.iter().enumerate().filter(|(_, b)| b.is_subset(u)).map(|(i, _)| i),
        ));
        gens.push(set_with(
            members.len(),
            members.iter().enumerate().filter(|(_, b)| !b.is_disjoint(u)).map(|(i, _)| i),
        ));
    }
    let points = members.iter().map(|s| subset_label(base, s)).collect();
    FinSpace::from_subbasis(points, &gens)
}

impl Hyperspace {
    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The base subset represented by hyperspace point `i`.
    pub fn member(&self, i: usize) -> &PointSet {
        &self.members[i]
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    /// Hyperspace index of a base subset, if it is a point of this kind.
    pub fn index_of_set(&self, s: &PointSet) -> Option<usize> {
        let mut s = s.clone();
        s.grow(self.base.len());
        self.lookup.get(&s).copied()
    }

    pub fn index_of_labels(&self, labels: &[&str]) -> Result<usize> {
        let s = self.base.set_of(labels.iter().copied())?;
        self.index_of_set(&s)
            .ok_or_else(|| Error::ForeignPoint(format!("{labels:?} is not a point of the hyperspace")))
    }

    /// `⟨U⟩`: points contained in `u`.
    pub fn carrier(&self, u: &PointSet) -> PointSet {
        set_with(
            self.len(),
            self.members.iter().enumerate().filter(|(_, b)| b.is_subset(u)).map(|(i, _)| i),
        )
    }

    /// Point `{x}`.
    pub fn singleton(&self, x: usize) -> usize {
        self.index_of_set(&set_with(self.base.len(), [x]))
            .expect("singletons are connected")
    }
}

/// `x ↦ {x}`.
pub fn singleton_map(h: &Hyperspace) -> PointMap<'_> {
    let assignment = (0..h.base.len()).map(|x| h.singleton(x)).collect();
    PointMap::total(&h.base, &h.space, assignment).expect("indices in range")
}

/// `A ↦ ∪A` from `outer = H(inner.space)` to `inner`. Unions that are not
/// points of `inner` (possible for `H2`) are left unassigned.
pub fn union_map<'a>(outer: &'a Hyperspace, inner: &'a Hyperspace) -> Result<PointMap<'a>> {
    if outer.base != inner.space {
        return Err(Error::CarrierMismatch(
            "outer hyperspace is not built over the inner one".into(),
        ));
    }
    let assignment = outer
        .members
        .iter()
        .map(|a| {
            let mut u = inner.base.empty_set();
            for i in a.ones() {
                u.union_with(&inner.members[i]);
            }
            inner.index_of_set(&u)
        })
        .collect();
    PointMap::partial(&outer.space, &inner.space, assignment)
}

/// `2^f : ⟨U⟩ -> ⟨V⟩, A ↦ f(A)` for a homeomorphism `f : U -> V` between
/// open subsets of the base. The result is a partial assignment on the
/// hyperspace with domain `⟨U⟩`.
pub fn lift_homeo(h: &Hyperspace, u: &PointSet, v: &PointSet, f: &[Option<usize>]) -> Result<Vec<Option<usize>>> {
    let base = &h.base;
    for s in [u, v] {
        if !base.is_open(s)? {
            return Err(Error::NotOpen(format!(
                "{:?}",
                base.labels_of(s).iter().map(|p| p.to_string()).collect::<Vec<_>>()
            )));
        }
    }
    if !is_partial_homeomorphism(base, u, v, f) {
        return Err(Error::NotHomeomorphism("base map".into()));
    }
    let lifted = image_lift(h, u, f)?;
    let (hu, hv) = (h.carrier(u), h.carrier(v));
    if !is_partial_homeomorphism(&h.space, &hu, &hv, &lifted) {
        return Err(Error::NotHomeomorphism("lifted map".into()));
    }
    let mut inverse = vec![None; base.len()];
    for x in u.ones() {
        inverse[f[x].expect("total on u")] = Some(x);
    }
    let lifted_inverse = image_lift(h, v, &inverse)?;
    for a in hu.ones() {
        let b = lifted[a].expect("total on ⟨u⟩");
        if lifted_inverse[b] != Some(a) {
            return Err(Error::NotHomeomorphism("lift of the inverse is not the inverse".into()));
        }
    }
    Ok(lifted)
}

/// `A ↦ f(A)` on `⟨dom⟩`, failing when an image is not a point of `h`.
fn image_lift(h: &Hyperspace, dom: &PointSet, f: &[Option<usize>]) -> Result<Vec<Option<usize>>> {
    let carrier = h.carrier(dom);
    (0..h.len())
        .map(|i| {
            if !carrier.contains(i) {
                return Ok(None);
            }
            let img = set_with(h.base.len(), h.members[i].ones().map(|x| f[x].expect("defined on dom")));
            h.index_of_set(&img).map(Some).ok_or_else(|| {
                Error::NotHomeomorphism(format!("image of {} is not a point of the hyperspace", h.space.point(i)))
            })
        })
        .collect()
}

/// A partial action lifted to a hyperspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub hyper: Hyperspace,
    pub action: PartialAction,
}

/// `2^θ`: carriers `⟨X_g⟩` and maps `2^{θ_g}` on the hyperspace of kind `kind`.
pub fn lift_pa(pa: &PartialAction, kind: Kind) -> Result<Lifted> {
    let hyper = build_hyperspace(pa.space(), kind)?;
    let g = pa.group();
    let carriers: Vec<PointSet> = (0..g.order()).map(|k| hyper.carrier(pa.carrier(k))).collect();
    let theta = (0..g.order())
        .map(|k| lift_homeo(&hyper, pa.carrier(g.inv(k)), pa.carrier(k), pa.map(k)))
        .collect::<Result<Vec<_>>>()?;
    let action = PartialAction::new(g.clone(), hyper.space.clone(), carriers, theta)?;
    Ok(Lifted { hyper, action })
}

/// Lifting a topological partial action yields a topological partial action,
/// and openness of the domain, continuity and globality carry over.
///
/// Size limits are returned as errors; any other lifting failure is reported.
pub fn check_lift_transfer(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let topological = pa.is_topological_action();
    let hypotheses = hyps([("topological", topological)]);
    let lifted = match lift_pa(pa, kind) {
        Ok(l) => l,
        Err(e @ Error::SizeLimit(_)) => return Err(e),
        Err(e) => {
            return Ok(CheckReport::new(
                "thm3.2",
                hypotheses,
                false,
                Some(json!({"reason": "lift failed", "error": e.to_string()})),
            ))
        }
    };
    let lift = &lifted.action;
    let valid = lift.is_valid();
    let lift_topological = lift.topological_failure().is_none();
    let open_transfer = !pa.domain_topology().open || lift.domain_topology().open;
    let continuity_transfer = !pa.is_continuous_action() || lift.is_continuous_action();
    let global_transfer = !pa.is_global() || lift.is_global();
    let items = [
        ("valid", valid),
        ("topological", lift_topological),
        ("open-domain", open_transfer),
        ("continuity", continuity_transfer),
        ("globality", global_transfer),
    ];
    let failed: Vec<&str> = items.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let witness = (!failed.is_empty()).then(|| json!({"failed": failed, "kind": kind.name()}));
    Ok(CheckReport::new("thm3.2", hypotheses, failed.is_empty(), witness))
}

/// A closed domain lifts to a closed domain.
pub fn check_closed_domain_lift(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let hypotheses = hyps([
        ("topological", pa.is_topological_action()),
        ("domain closed", pa.domain_topology().closed),
    ]);
    match lift_pa(pa, kind) {
        Ok(l) => Ok(CheckReport::new("prop3.5", hypotheses, l.action.domain_topology().closed, None)),
        Err(e @ Error::SizeLimit(_)) => Err(e),
        Err(e) => Ok(CheckReport::new(
            "prop3.5",
            hypotheses,
            false,
            Some(json!({"reason": "lift failed", "error": e.to_string()})),
        )),
    }
}

/// The singleton map is an embedding, and for bases of at most three points
/// the union map on the double hyperspace is continuous.
pub fn check_singleton_union(base: &FinSpace) -> Result<CheckReport> {
    let h = build_hyperspace(base, Kind::H1)?;
    let embedding = singleton_map(&h).is_embedding()?;
    let union_continuous = if h.len() <= 7 {
        let hh = build_hyperspace(h.space(), Kind::H1)?;
        let u = union_map(&hh, &h)?;
        Some(u.is_total() && u.is_continuous()?)
    } else {
        None
    };
    let ok = embedding && union_continuous != Some(false);
    let witness = (!ok).then(|| json!({"singleton_embedding": embedding, "union_continuous": union_continuous}));
    Ok(CheckReport::unconditional("hyperspace-maps", ok, witness))
}
