//! Partial and global group actions on finite spaces.
//!
//! A partial action is stored as the family `θ_g : X_{g⁻¹} -> X_g`. The
//! domain `G*X = {(g, x) : x ∈ X_{g⁻¹}}` is always derived from the carriers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::FinGroup;
use crate::report::{hyps, CheckReport};
use crate::topology::{is_continuous_on, is_partial_homeomorphism, set_with, FinSpace, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    group: FinGroup,
    space: FinSpace,
    carriers: Vec<PointSet>,
    theta: Vec<Vec<Option<usize>>>,
}

/// Openness and closedness of `G*X` inside `G × X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainTopology {
    pub open: bool,
    pub closed: bool,
    /// The product-space computation and the per-element computation agree.
    pub routes_agree: bool,
}

impl PartialAction {
    /// Assemble a partial action, checking only its shape: one carrier and one
    /// map per group element, with `dom θ_g = X_{g⁻¹}`. The axioms are checked
    /// by [`PartialAction::verify`].
    pub fn new(
        group: FinGroup,
        space: FinSpace,
        carriers: Vec<PointSet>,
        theta: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let (ng, n) = (group.order(), space.len());
        if carriers.len() != ng || theta.len() != ng {
            return Err(Error::Structural(format!(
                "expected {ng} carriers and maps, got {} and {}",
                carriers.len(),
                theta.len()
            )));
        }
        let mut carriers = carriers;
        for c in carriers.iter_mut() {
            space.check(c)?;
            c.grow(n);
        }
        for (g, map) in theta.iter().enumerate() {
            if map.len() != n {
                return Err(Error::Structural(format!(
                    "map for `{}` has {} entries, space has {n} points",
                    group.name(g),
                    map.len()
                )));
            }
            if map.iter().flatten().any(|&y| y >= n) {
                return Err(Error::Structural(format!("map for `{}` leaves the space", group.name(g))));
            }
            let dom = set_with(n, map.iter().enumerate().filter_map(|(x, y)| y.map(|_| x)));
            if dom != carriers[group.inv(g)] {
                return Err(Error::Structural(format!(
                    "domain of θ_{} differs from X_{}",
                    group.name(g),
                    group.name(group.inv(g))
                )));
            }
        }
        Ok(PartialAction {
            group,
            space,
            carriers,
            theta,
        })
    }

    /// Build from labels. Elements missing from `carriers` get `X_1 = X` with
    /// the identity map for the unit and the empty carrier otherwise.
    pub fn from_labels(
        group: FinGroup,
        space: FinSpace,
        carriers: &[(&str, &[&str])],
        theta: &[(&str, &[(&str, &str)])],
    ) -> Result<Self> {
        let (ng, n) = (group.order(), space.len());
        let mut cs: Vec<Option<PointSet>> = vec![None; ng];
        for (g, xs) in carriers {
            cs[group.index_of(g)?] = Some(space.set_of(xs.iter().copied())?);
        }
        let mut maps: Vec<Vec<Option<usize>>> = vec![vec![None; n]; ng];
        let mut given = vec![false; ng];
        for (g, pairs) in theta {
            let gi = group.index_of(g)?;
            given[gi] = true;
            for (x, y) in *pairs {
                maps[gi][space.index_of_label(x)?] = Some(space.index_of_label(y)?);
            }
        }
        let e = group.identity();
        if cs[e].is_none() {
            cs[e] = Some(space.full_set());
        }
        if !given[e] {
            maps[e] = (0..n).map(Some).collect();
        }
        let carriers = cs
            .into_iter()
            .map(|c| c.unwrap_or_else(|| space.empty_set()))
            .collect();
        Self::new(group, space, carriers, maps)
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    /// `X_g`.
    pub fn carrier(&self, g: usize) -> &PointSet {
        &self.carriers[g]
    }

    pub fn carriers(&self) -> &[PointSet] {
        &self.carriers
    }

    /// `θ_g` as a partial assignment on the points of the space.
    pub fn map(&self, g: usize) -> &[Option<usize>] {
        &self.theta[g]
    }

    /// `g·x`, when defined.
    pub fn apply(&self, g: usize, x: usize) -> Option<usize> {
        self.theta[g][x]
    }

    /// Copy with one entry of `θ_g` replaced; shape is re-checked.
    pub fn with_theta_entry(&self, g: usize, x: usize, y: Option<usize>) -> Result<Self> {
        let mut theta = self.theta.clone();
        theta[g][x] = y;
        Self::new(self.group.clone(), self.space.clone(), self.carriers.clone(), theta)
    }

    /// Copy with new carriers and maps for `g` and `g⁻¹`; shape is re-checked.
    pub fn with_carrier_pair(
        &self,
        g: usize,
        carrier_g: PointSet,
        carrier_ginv: PointSet,
        theta_g: Vec<Option<usize>>,
        theta_ginv: Vec<Option<usize>>,
    ) -> Result<Self> {
        let gi = self.group.inv(g);
        let mut carriers = self.carriers.clone();
        let mut theta = self.theta.clone();
        carriers[g] = carrier_g;
        carriers[gi] = carrier_ginv;
        theta[g] = theta_g;
        theta[gi] = theta_ginv;
        Self::new(self.group.clone(), self.space.clone(), carriers, theta)
    }

    fn gname(&self, g: usize) -> &str {
        self.group.name(g)
    }

    fn pname(&self, x: usize) -> String {
        self.space.point(x).to_string()
    }

    /// Indices of `G*X` inside `product(G, X)` (index `g * |X| + x`).
    pub fn domain_set(&self) -> PointSet {
        let n = self.space.len();
        let mut s = PointSet::with_capacity(self.group.order() * n);
        for g in 0..self.group.order() {
            for x in self.carriers[self.group.inv(g)].ones() {
                s.insert(g * n + x);
            }
        }
        s
    }

    /// The set-theoretic axioms on the partially defined map `(g, x) ↦ g·x`.
    pub fn check_pa_axioms(&self) -> std::result::Result<(), Value> {
        let (ng, n) = (self.group.order(), self.space.len());
        let e = self.group.identity();
        for x in 0..n {
            if self.apply(e, x) != Some(x) {
                return Err(json!({"axiom": "PA3", "g": self.gname(e), "x": self.pname(x)}));
            }
        }
        for g in 0..ng {
            for x in 0..n {
                if let Some(y) = self.apply(g, x) {
                    if self.apply(self.group.inv(g), y) != Some(x) {
                        return Err(json!({"axiom": "PA1", "g": self.gname(g), "x": self.pname(x)}));
                    }
                }
            }
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = self.group.mul(g, h);
                for x in 0..n {
                    if let Some(z) = self.apply(h, x).and_then(|y| self.apply(g, y)) {
                        if self.apply(gh, x) != Some(z) {
                            return Err(json!({
                                "axiom": "PA2", "g": self.gname(g), "h": self.gname(h), "x": self.pname(x)
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The family formulation: bijections `X_{g⁻¹} -> X_g` with `X_1 = X`,
    /// `θ_1 = id`, `θ_g(X_{g⁻¹} ∩ X_h) = X_g ∩ X_{gh}` and
    /// `θ_g θ_h = θ_{gh}` on `X_{h⁻¹} ∩ X_{h⁻¹g⁻¹}`.
    pub fn check_family_conditions(&self) -> std::result::Result<(), Value> {
        let (ng, n) = (self.group.order(), self.space.len());
        let e = self.group.identity();
        for g in 0..ng {
            let img = set_with(n, self.theta[g].iter().flatten().copied());
            let injective = img.count_ones(..) == self.carriers[self.group.inv(g)].count_ones(..);
            if !injective || img != self.carriers[g] {
                return Err(json!({"condition": "bijection", "g": self.gname(g)}));
            }
        }
        if self.carriers[e] != self.space.full_set() || (0..n).any(|x| self.apply(e, x) != Some(x)) {
            return Err(json!({"condition": "i", "g": self.gname(e)}));
        }
        for g in 0..ng {
            let gi = self.group.inv(g);
            for h in 0..ng {
                let gh = self.group.mul(g, h);
                let mut lhs_dom = self.carriers[gi].clone();
                lhs_dom.intersect_with(&self.carriers[h]);
                let lhs = set_with(n, lhs_dom.ones().filter_map(|x| self.apply(g, x)));
                let mut rhs = self.carriers[g].clone();
                rhs.intersect_with(&self.carriers[gh]);
                if lhs != rhs {
                    return Err(json!({"condition": "ii", "g": self.gname(g), "h": self.gname(h)}));
                }
            }
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = self.group.mul(g, h);
                let mut dom = self.carriers[self.group.inv(h)].clone();
                dom.intersect_with(&self.carriers[self.group.inv(gh)]);
                for x in dom.ones() {
                    let composite = self.apply(h, x).and_then(|y| self.apply(g, y));
                    if composite.is_none() || composite != self.apply(gh, x) {
                        return Err(json!({
                            "condition": "iii", "g": self.gname(g), "h": self.gname(h), "x": self.pname(x)
                        }));
                    }
                }
            }
        }
        Ok(())
    }

    /// Both axiom systems; the two verdicts must coincide.
    pub fn verify(&self) -> CheckReport {
        let pa = self.check_pa_axioms();
        let fam = self.check_family_conditions();
        let agree = pa.is_ok() == fam.is_ok();
        let witness = match (&pa, &fam) {
            (Ok(()), Ok(())) => None,
            _ => Some(json!({
                "pa_axioms": pa.as_ref().err(),
                "family_conditions": fam.as_ref().err(),
                "routes_agree": agree,
            })),
        };
        CheckReport::unconditional("partial-action", pa.is_ok() && fam.is_ok() && agree, witness)
    }

    pub fn is_valid(&self) -> bool {
        self.check_pa_axioms().is_ok() && self.check_family_conditions().is_ok()
    }

    /// Every carrier open and every `θ_g` a homeomorphism between carriers.
    pub fn topological_failure(&self) -> Option<Value> {
        for g in 0..self.group.order() {
            if !self.space.open_set(&self.carriers[g]) {
                return Some(json!({"reason": "carrier not open", "g": self.gname(g)}));
            }
        }
        for g in 0..self.group.order() {
            let dom = &self.carriers[self.group.inv(g)];
            if !is_partial_homeomorphism(&self.space, dom, &self.carriers[g], &self.theta[g]) {
                return Some(json!({"reason": "map is not a homeomorphism", "g": self.gname(g)}));
            }
        }
        None
    }

    pub fn is_topological_action(&self) -> bool {
        self.is_valid() && self.topological_failure().is_none()
    }

    pub fn is_topological(&self) -> CheckReport {
        let failure = self.topological_failure();
        CheckReport::new(
            "topological",
            hyps([("partial action", self.is_valid())]),
            failure.is_none(),
            failure,
        )
    }

    /// Continuity of `θ : G*X -> X` on the subspace `G*X ⊆ G × X`.
    pub fn continuity_via_product(&self) -> bool {
        let n = self.space.len();
        let gx = FinSpace::product(&self.group.discrete_space(), &self.space);
        let dom = self.domain_set();
        let f: Vec<Option<usize>> = (0..gx.len())
            .map(|i| {
                let (g, x) = (i / n, i % n);
                self.apply(g, x)
            })
            .collect();
        is_continuous_on(&gx, &dom, &self.space, &f)
    }

    /// Continuity element by element: each `θ_g : X_{g⁻¹} -> X`.
    pub fn continuity_per_element(&self) -> bool {
        (0..self.group.order()).all(|g| {
            is_continuous_on(&self.space, &self.carriers[self.group.inv(g)], &self.space, &self.theta[g])
        })
    }

    pub fn is_continuous_action(&self) -> bool {
        self.continuity_via_product()
    }

    pub fn is_continuous_pa(&self) -> CheckReport {
        let product = self.continuity_via_product();
        let per_element = self.continuity_per_element();
        let witness = if product == per_element {
            None
        } else {
            Some(json!({"product_route": product, "per_element_route": per_element}))
        };
        CheckReport::new(
            "continuous",
            hyps([("partial action", self.is_valid())]),
            product && product == per_element,
            witness,
        )
    }

    pub fn is_global(&self) -> bool {
        self.carriers.iter().all(|c| *c == self.space.full_set())
    }

    pub fn domain_topology(&self) -> DomainTopology {
        let gx = FinSpace::product(&self.group.discrete_space(), &self.space);
        let dom = self.domain_set();
        let open = gx.open_set(&dom);
        let closed = gx.closed_set(&dom);
        let per_open = self.carriers.iter().all(|c| self.space.open_set(c));
        let per_closed = self.carriers.iter().all(|c| self.space.closed_set(c));
        DomainTopology {
            open,
            closed,
            routes_agree: open == per_open && closed == per_closed,
        }
    }
}

/// A total action of a finite group by homeomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalAction {
    group: FinGroup,
    space: FinSpace,
    act: Vec<Vec<usize>>,
}

impl GlobalAction {
    pub fn new(group: FinGroup, space: FinSpace, act: Vec<Vec<usize>>) -> Result<Self> {
        let (ng, n) = (group.order(), space.len());
        if act.len() != ng || act.iter().any(|row| row.len() != n) {
            return Err(Error::NotAnAction(format!("action table must be {ng}x{n}")));
        }
        if act.iter().flatten().any(|&y| y >= n) {
            return Err(Error::NotAnAction("action leaves the space".into()));
        }
        let e = group.identity();
        if let Some(x) = (0..n).find(|&x| act[e][x] != x) {
            return Err(Error::NotAnAction(format!("unit moves `{}`", space.point(x))));
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = group.mul(g, h);
                if let Some(x) = (0..n).find(|&x| act[g][act[h][x]] != act[gh][x]) {
                    return Err(Error::NotAnAction(format!(
                        "{}·({}·{}) != ({}{})·{}",
                        group.name(g),
                        group.name(h),
                        space.point(x),
                        group.name(g),
                        group.name(h),
                        space.point(x)
                    )));
                }
            }
        }
        for g in 0..ng {
            let f: Vec<Option<usize>> = act[g].iter().copied().map(Some).collect();
            if !is_partial_homeomorphism(&space, &space.full_set(), &space.full_set(), &f) {
                return Err(Error::NotAnAction(format!(
                    "`{}` does not act by a homeomorphism",
                    group.name(g)
                )));
            }
        }
        Ok(GlobalAction { group, space, act })
    }

    pub fn from_labels(group: FinGroup, space: FinSpace, act: &[(&str, &[(&str, &str)])]) -> Result<Self> {
        let (ng, n) = (group.order(), space.len());
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; ng];
        for (g, pairs) in act {
            let gi = group.index_of(g)?;
            for (x, y) in *pairs {
                table[gi][space.index_of_label(x)?] = Some(space.index_of_label(y)?);
            }
        }
        let e = group.identity();
        if table[e].iter().all(Option::is_none) {
            table[e] = (0..n).map(Some).collect();
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(g, row)| {
                row.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::NotAnAction(format!("`{}` is not total", group.name(g))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, space, table)
    }

    /// The action of `group` on `space` where every element acts trivially.
    pub fn trivial(group: FinGroup, space: FinSpace) -> Self {
        let n = space.len();
        let act = vec![(0..n).collect(); group.order()];
        GlobalAction { group, space, act }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn to_partial(&self) -> PartialAction {
        PartialAction {
            group: self.group.clone(),
            space: self.space.clone(),
            carriers: vec![self.space.full_set(); self.group.order()],
            theta: self.act.iter().map(|row| row.iter().copied().map(Some).collect()).collect::<Vec<Vec<_>>>(),
        }
    }

    /// Restriction to an open subset `x`: `X_g = X ∩ μ_g(X)`, `θ_g = μ_g`
    /// on `X_{g⁻¹}`. The result lives on the subspace `x`.
    pub fn restrict(&self, x: &PointSet) -> Result<PartialAction> {
        if x.ones().next().is_none() {
            return Err(Error::EmptyCarrier);
        }
        if !self.space.is_open(x)? {
            return Err(Error::NotOpen(format!(
                "{:?}",
                self.space.labels_of(x).iter().map(|p| p.to_string()).collect::<Vec<_>>()
            )));
        }
        let (sub, members) = self.space.subspace_with_indices(x)?;
        self.restrict_onto(x, &members, sub)
    }

    /// The set-theoretic restriction to a nonempty `x`, placed on `space`
    /// (one point per member of `x`, in increasing order). Neither `x` nor
    /// `space` need relate to the topology of the action.
    pub fn restrict_with_topology(&self, x: &PointSet, space: FinSpace) -> Result<PartialAction> {
        let members: Vec<usize> = x.ones().collect();
        if members.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if space.len() != members.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} points for a {}-point subset",
                space.len(),
                members.len()
            )));
        }
        self.restrict_onto(x, &members, space)
    }

    fn restrict_onto(&self, x: &PointSet, members: &[usize], sub: FinSpace) -> Result<PartialAction> {
        let m = members.len();
        let mut local = vec![usize::MAX; self.space.len()];
        for (k, &p) in members.iter().enumerate() {
            local[p] = k;
        }
        let ng = self.group.order();
        let carriers: Vec<PointSet> = (0..ng)
            .map(|g| {
                set_with(
                    m,
                    members
                        .iter()
                        .map(|&p| self.act[g][p])
                        .filter(|&y| x.contains(y))
                        .map(|y| local[y]),
                )
            })
            .collect();
        let theta = (0..ng)
            .map(|g| {
                let dom = &carriers[self.group.inv(g)];
                (0..m)
                    .map(|k| dom.contains(k).then(|| local[self.act[g][members[k]]]))
                    .collect()
            })
            .collect();
        PartialAction::new(self.group.clone(), sub, carriers, theta)
    }
}

/// Size bounds for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_group: usize,
    pub max_space: usize,
}

impl Limits {
    pub fn new(max_group: usize, max_space: usize) -> Self {
        Limits { max_group, max_space }
    }
}

/// Groups the generator draws from: cyclic groups, the Klein group and `S_3`.
pub fn group_catalog(max_order: usize) -> Vec<FinGroup> {
    let mut v: Vec<FinGroup> = (1..=max_order.max(1))
        .map(|n| FinGroup::cyclic(n).expect("n >= 1"))
        .collect();
    if max_order >= 4 {
        v.push(FinGroup::klein4());
    }
    if max_order >= 6 {
        v.push(FinGroup::sym(3).expect("n <= 4"));
    }
    v
}

/// A random instance: an ambient global action, an open subset of it, and
/// the restricted partial action.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub ambient: GlobalAction,
    pub subset: PointSet,
    pub action: PartialAction,
}

const MAX_ATTEMPTS: usize = 64;

/// Random global action on a union of coset spaces `G/H` carrying a random
/// `G`-invariant preorder topology.
pub fn random_global<R: Rng>(rng: &mut R, limits: Limits) -> Result<GlobalAction> {
    if limits.max_group == 0 || limits.max_space == 0 {
        return Err(Error::SizeLimit("limits must be positive".into()));
    }
    let group = group_catalog(limits.max_group)
        .choose(rng)
        .cloned()
        .expect("catalog is nonempty");
    random_global_for(rng, group, limits.max_space)
}

pub fn random_global_for<R: Rng>(rng: &mut R, group: FinGroup, max_space: usize) -> Result<GlobalAction> {
    let ng = group.order();
    let subgroups = group.subgroups();
    let target = rng.gen_range(1..=max_space.max(1));
    // points are cosets aH, stored as sorted element lists; orbits are contiguous
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut orbit_range: Vec<(usize, usize)> = Vec::new();
    while cosets.len() < target {
        let room = target - cosets.len();
        let fitting: Vec<&Vec<usize>> = subgroups.iter().filter(|h| ng / h.len() <= room).collect();
        let h = fitting.choose(rng).expect("the whole group always fits");
        let mut orbit: Vec<Vec<usize>> = Vec::new();
        for a in 0..ng {
            let mut c: Vec<usize> = h.iter().map(|&k| group.mul(a, k)).collect();
            c.sort_unstable();
            if !orbit.contains(&c) {
                orbit.push(c);
            }
        }
        let range = (cosets.len(), cosets.len() + orbit.len());
        orbit_range.extend(std::iter::repeat(range).take(orbit.len()));
        cosets.extend(orbit);
    }
    let n = cosets.len();
    let act: Vec<Vec<usize>> = (0..ng)
        .map(|g| {
            (0..n)
                .map(|p| {
                    let ga = group.mul(g, cosets[p][0]);
                    let (lo, hi) = orbit_range[p];
                    (lo..hi)
                        .find(|&q| cosets[q].binary_search(&ga).is_ok())
                        .expect("cosets of one subgroup partition the group")
                })
                .collect()
        })
        .collect();

    let density = *[0.0, 0.15, 0.35, 0.6].choose(rng).expect("nonempty");
    let mut below: Vec<PointSet> = (0..n).map(|p| set_with(n, [p])).collect();
    for p in 0..n {
        for q in 0..n {
            if p != q && rng.gen_bool(density) {
                for g in 0..ng {
                    below[act[g][p]].insert(act[g][q]);
                }
            }
        }
    }
    // transitive closure: U_p absorbs U_q for every q in U_p
    loop {
        let mut changed = false;
        for p in 0..n {
            let members: Vec<usize> = below[p].ones().collect();
            for q in members {
                if q != p && !below[q].is_subset(&below[p]) {
                    let add = below[q].clone();
                    below[p].union_with(&add);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let points = (0..n).map(|i| crate::point::Point::atom(format!("y{i}"))).collect();
    let space = FinSpace::from_min_nbhd(points, below)?;
    GlobalAction::new(group, space, act)
}

/// Random open subset of the ambient space.
pub fn random_open_subset<R: Rng>(rng: &mut R, space: &FinSpace) -> Result<PointSet> {
    for _ in 0..MAX_ATTEMPTS {
        let raw = set_with(space.len(), (0..space.len()).filter(|_| rng.gen_bool(0.5)));
        if raw.ones().next().is_some() {
            return Ok(space.open_hull(&raw));
        }
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

pub fn random_instance(seed: u64, limits: Limits) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient = random_global(&mut rng, limits)?;
    let subset = random_open_subset(&mut rng, ambient.space())?;
    let action = ambient.restrict(&subset)?;
    Ok(RandomInstance {
        ambient,
        subset,
        action,
    })
}

/// Random finite topology on `n` points labelled `z0..`, with no relation to
/// any group action.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> Result<FinSpace> {
    let density = *[0.0, 0.2, 0.5].choose(rng).expect("nonempty");
    let gens: Vec<PointSet> = (0..n)
        .map(|p| set_with(n, (0..n).filter(|&q| q == p || rng.gen_bool(density))))
        .collect();
    let points = (0..n).map(|i| crate::point::Point::atom(format!("z{i}"))).collect();
    FinSpace::mk_space(points, &gens, crate::topology::GenMode::Subbasis)
}

/// Partial action with no topological guarantees: a random global action
/// restricted to an arbitrary nonempty subset, carrying an unrelated random
/// topology. Always a partial action; often neither topological nor
/// continuous.
pub fn random_wild_pa(seed: u64, limits: Limits) -> Result<PartialAction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let ambient = random_global(&mut rng, limits)?;
    let n = ambient.space().len();
    let mut x = set_with(n, (0..n).filter(|_| rng.gen_bool(0.6)));
    if x.ones().next().is_none() {
        x.insert(rng.gen_range(0..n));
    }
    let space = random_space(&mut rng, x.count_ones(..))?;
    ambient.restrict_with_topology(&x, space)
}

/// Deterministic random partial action, obtained by restricting a random
/// global action to a random open set.
pub fn random_pa(seed: u64, limits: Limits) -> Result<PartialAction> {
    Ok(random_instance(seed, limits)?.action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::Status;

    #[test]
    fn swap_fixture_verifies() {
        let pa = fixtures::swap();
        assert_eq!(pa.verify().status, Status::Verified);
        assert!(pa.is_topological().is_verified());
        assert!(pa.is_continuous_pa().is_verified());
        assert!(!pa.is_global());
        let d = pa.domain_topology();
        assert!(d.open && d.closed && d.routes_agree);
    }

    #[test]
    fn trivial_group_verifies() {
        let pa = GlobalAction::trivial(FinGroup::trivial(), FinSpace::sierpinski()).to_partial();
        assert!(pa.verify().is_verified());
        assert!(pa.is_global());
    }

    #[test]
    fn broken_bijection_is_reported() {
        let pa = fixtures::swap();
        let g = pa.group().index_of("1").unwrap();
        let a = pa.space().index_of_label("a").unwrap();
        // θ_1 = {a -> a, b -> a}
        let bad = pa.with_theta_entry(g, a, Some(a)).unwrap();
        let r = bad.verify();
        assert_eq!(r.status, Status::Counterexample);
        let w = r.witness.unwrap();
        assert_eq!(w["routes_agree"], true);
        assert_eq!(w["family_conditions"]["condition"], "bijection");
        assert!(w["pa_axioms"]["axiom"].is_string());
    }

    #[test]
    fn domain_mismatch_is_structural() {
        let pa = fixtures::swap();
        let g = pa.group().index_of("1").unwrap();
        let c = pa.space().index_of_label("c").unwrap();
        assert!(matches!(pa.with_theta_entry(g, c, Some(c)), Err(Error::Structural(_))));
    }

    #[test]
    fn kh12_is_topological_with_open_non_closed_domain() {
        let pa = fixtures::kh12();
        assert!(pa.verify().is_verified());
        assert!(pa.is_topological().is_verified());
        let d = pa.domain_topology();
        assert!(d.open && !d.closed && d.routes_agree);
    }

    #[test]
    fn global_action_domain_is_everything() {
        let pa = fixtures::swap2_global();
        assert!(pa.is_global());
        let d = pa.domain_topology();
        assert!(d.open && d.closed);
    }

    #[test]
    fn continuous_but_not_topological() {
        // Z2 on Sierpinski with the non-open carrier {0} and identity map.
        let pa = PartialAction::from_labels(
            FinGroup::cyclic(2).unwrap(),
            FinSpace::sierpinski(),
            &[("1", &["0"])],
            &[("1", &[("0", "0")])],
        )
        .unwrap();
        assert!(pa.verify().is_verified());
        assert!(!pa.is_topological().conclusion);
        assert!(pa.is_continuous_pa().is_verified());
    }

    #[test]
    fn restriction_of_doubled_swap() {
        // Z2 swaps {a,b,c} with {a',b',c'}; restrict to X = {a,b,c,a'}.
        let space = FinSpace::discrete(&["a", "b", "c", "a'", "b'", "c'"]).unwrap();
        let ga = GlobalAction::from_labels(
            FinGroup::cyclic(2).unwrap(),
            space,
            &[("1", &[("a", "a'"), ("b", "b'"), ("c", "c'"), ("a'", "a"), ("b'", "b"), ("c'", "c")])],
        )
        .unwrap();
        let x = ga.space().set_of(["a", "b", "c", "a'"]).unwrap();
        let pa = ga.restrict(&x).unwrap();
        // μ_1(X) = {a', b', c', a}, so X_1 = {a, a'}.
        assert_eq!(pa.carrier(1), &pa.space().set_of(["a", "a'"]).unwrap());
        assert!(pa.verify().is_verified());
        assert!(pa.is_topological().is_verified());
    }

    #[test]
    fn restriction_of_rotation_to_arc() {
        let space = FinSpace::discrete(&["0", "1", "2", "3", "4", "5", "6", "7"]).unwrap();
        let act: Vec<Vec<usize>> = (0..4).map(|k| (0..8).map(|p| (p + 2 * k) % 8).collect()).collect();
        let ga = GlobalAction::new(FinGroup::cyclic(4).unwrap(), space, act).unwrap();
        let arc = ga.space().set_of(["0", "1", "2"]).unwrap();
        let pa = ga.restrict(&arc).unwrap();
        let s = pa.space();
        assert_eq!(pa.carrier(1), &s.set_of(["2"]).unwrap());
        assert_eq!(pa.carrier(3), &s.set_of(["0"]).unwrap());
        assert_eq!(pa.carrier(2), &s.empty_set());
        assert!(pa.verify().is_verified());
    }

    #[test]
    fn restriction_errors() {
        let ga = GlobalAction::trivial(FinGroup::cyclic(2).unwrap(), FinSpace::sierpinski());
        let s = ga.space();
        assert!(matches!(ga.restrict(&s.set_of(["0"]).unwrap()), Err(Error::NotOpen(_))));
        assert_eq!(ga.restrict(&s.empty_set()), Err(Error::EmptyCarrier));
        let whole = ga.restrict(&s.full_set()).unwrap();
        assert_eq!(whole, ga.to_partial());
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = random_pa(0, Limits::new(4, 6)).unwrap();
        let b = random_pa(0, Limits::new(4, 6)).unwrap();
        assert_eq!(a, b);
        assert!(a.verify().is_verified());
        for seed in 0..200 {
            let pa = random_pa(seed, Limits::new(8, 8)).unwrap();
            assert!(pa.verify().is_verified(), "seed {seed}");
            assert!(pa.is_topological().is_verified(), "seed {seed}");
            assert!(pa.domain_topology().routes_agree);
        }
    }

    #[test]
    fn non_action_rejected() {
        let space = FinSpace::discrete(&["a", "b"]).unwrap();
        let e = GlobalAction::new(FinGroup::cyclic(3).unwrap(), space, vec![vec![0, 1], vec![1, 0], vec![1, 0]]);
        assert!(matches!(e, Err(Error::NotAnAction(_))));
    }
}
