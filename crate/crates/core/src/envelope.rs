//! Enveloping actions.
//!
//! Pairs `(g, x) ∈ G × X` are indexed `g * |X| + x`. Two pairs are related
//! when `(g, x) R (h, y) ⇔ x ∈ X_{g⁻¹h} ∧ θ_{h⁻¹g}(x) = y`; the enveloping
//! space `X_G` is the quotient of `G × X` by `R`, each class labelled by its
//! least pair.

use serde_json::{json, Value};

use crate::actions::{GlobalAction, PartialAction};
use crate::category::{is_equivalence, GMap};
use crate::error::{Error, Result};
use crate::hyperspace::{build_hyperspace, lift_pa, Kind, Lifted};
use crate::point::Point;
use crate::report::{hyps, CheckReport};
use crate::topology::{set_with, FinSpace, PointMap, PointSet};

/// Largest `|G| · |X|` accepted by [`globalize`].
pub const PAIR_CAP: usize = 4096;

/// A relation on the pairs of `G × X`, one row per pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn related(&self, p: usize, q: usize) -> bool {
        self.rows[p].contains(q)
    }

    pub fn row(&self, p: usize) -> &PointSet {
        &self.rows[p]
    }

    /// Number of related ordered pairs.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// First failure of reflexivity, symmetry or transitivity.
    pub fn equivalence_failure(&self) -> Option<(&'static str, usize, usize)> {
        let n = self.len();
        if let Some(p) = (0..n).find(|&p| !self.related(p, p)) {
            return Some(("reflexive", p, p));
        }
        for p in 0..n {
            if let Some(q) = self.rows[p].ones().find(|&q| !self.related(q, p)) {
                return Some(("symmetric", p, q));
            }
        }
        for p in 0..n {
            if let Some(q) = self.rows[p].ones().find(|&q| !self.rows[q].is_subset(&self.rows[p])) {
                return Some(("transitive", p, q));
            }
        }
        None
    }
}

fn check_pairs(pa: &PartialAction) -> Result<()> {
    let pairs = pa.group().order() * pa.space().len();
    if pairs > PAIR_CAP {
        return Err(Error::SizeLimit(format!("{pairs} pairs exceed the {PAIR_CAP}-pair cap")));
    }
    Ok(())
}

fn pair_name(pa: &PartialAction, p: usize) -> String {
    let n = pa.space().len();
    format!("({},{})", pa.group().name(p / n), pa.space().point(p % n))
}

/// The relation `R` together with a report that it is an equivalence.
pub fn build_relation(pa: &PartialAction) -> Result<(Relation, CheckReport)> {
    check_pairs(pa)?;
    let g = pa.group();
    let n = pa.space().len();
    let total = g.order() * n;
    let rows = (0..total)
        .map(|p| {
            let (gi, x) = (p / n, p % n);
            set_with(
                total,
                (0..g.order()).filter_map(|h| {
                    let k = g.mul(g.inv(h), gi);
                    pa.apply(k, x).map(|y| h * n + y)
                }),
            )
        })
        .collect();
    let rel = Relation { rows };
    let witness = rel
        .equivalence_failure()
        .map(|(prop, p, q)| json!({"property": prop, "p": pair_name(pa, p), "q": pair_name(pa, q)}));
    let report = CheckReport::unconditional("relation-equivalence", witness.is_none(), witness);
    Ok((rel, report))
}

/// `X_G` with its quotient topology, the action `μ` and the maps `q`, `ι`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopingSpace {
    source: PartialAction,
    pairs: FinSpace,
    relation: Relation,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    space: FinSpace,
    action: GlobalAction,
    iota: Vec<usize>,
}

pub fn globalize(pa: &PartialAction) -> Result<EnvelopingSpace> {
    let (relation, report) = build_relation(pa)?;
    if !report.is_verified() {
        return Err(Error::NotAPartialAction(format!(
            "relation is not an equivalence: {}",
            report.witness.unwrap_or(Value::Null)
        )));
    }
    let g = pa.group();
    let n = pa.space().len();
    let pairs = FinSpace::product(&g.discrete_space(), pa.space());
    let mut class_of = vec![usize::MAX; pairs.len()];
    let mut reps = Vec::new();
    for p in 0..pairs.len() {
        if class_of[p] == usize::MAX {
            for q in relation.row(p).ones() {
                class_of[q] = reps.len();
            }
            reps.push(p);
        }
    }
    let labels = reps.iter().map(|&p| pairs.point(p).clone()).collect();
    let space = pairs.quotient_by_map(&class_of, labels)?;
    let act = (0..g.order())
        .map(|k| {
            reps.iter()
                .map(|&p| class_of[g.mul(k, p / n) * n + p % n])
                .collect()
        })
        .collect();
    let action = GlobalAction::new(g.clone(), space.clone(), act)?;
    let iota = (0..n).map(|x| class_of[g.identity() * n + x]).collect();
    Ok(EnvelopingSpace {
        source: pa.clone(),
        pairs,
        relation,
        class_of,
        reps,
        space,
        action,
        iota,
    })
}

impl EnvelopingSpace {
    pub fn source(&self) -> &PartialAction {
        &self.source
    }

    /// `G × X`.
    pub fn pairs(&self) -> &FinSpace {
        &self.pairs
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn class_of(&self, pair: usize) -> usize {
        self.class_of[pair]
    }

    /// Class of `(g, x)`.
    pub fn class_of_pair(&self, g: usize, x: usize) -> usize {
        self.class_of[g * self.source.space().len() + x]
    }

    /// Least pair of each class.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Members of class `c` as pair indices.
    pub fn class_members(&self, c: usize) -> PointSet {
        self.relation.row(self.reps[c]).clone()
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn action(&self) -> &GlobalAction {
        &self.action
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `ι(x) = [1, x]`.
    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    pub fn iota_map(&self) -> PointMap<'_> {
        PointMap::total(self.source.space(), &self.space, self.iota.clone()).expect("indices in range")
    }

    /// `q(g, x) = [g, x]`.
    pub fn q_map(&self) -> PointMap<'_> {
        PointMap::total(&self.pairs, &self.space, self.class_of.clone()).expect("indices in range")
    }

    pub fn iota_image(&self) -> PointSet {
        set_with(self.len(), self.iota.iter().copied())
    }

    /// Class label as a `(g, x)` point.
    pub fn label(&self, c: usize) -> &Point {
        self.space.point(c)
    }
}

/// The enveloping action satisfies `μ_g([h, x]) = [gh, x]` on every pair,
/// which also shows it is well defined, and acts by homeomorphisms.
fn check_enveloping_action(env: &EnvelopingSpace) -> CheckReport {
    let pa = &env.source;
    let g = pa.group();
    let n = pa.space().len();
    for k in 0..g.order() {
        for p in 0..env.pairs.len() {
            let lhs = env.action.act(k, env.class_of[p]);
            let rhs = env.class_of[g.mul(k, p / n) * n + p % n];
            if lhs != rhs {
                return CheckReport::unconditional(
                    "enveloping-action",
                    false,
                    Some(json!({"g": g.name(k), "pair": pair_name(pa, p)})),
                );
            }
        }
    }
    CheckReport::unconditional("enveloping-action", true, None)
}

/// Every construction around the enveloping action, checked on one instance.
pub fn check_globalization(pa: &PartialAction) -> Result<Vec<CheckReport>> {
    let (_, relation_report) = build_relation(pa)?;
    let env = globalize(pa)?;
    let topological = pa.is_topological_action();
    let continuous = pa.is_continuous_action();
    let domain = pa.domain_topology();
    let mut out = vec![relation_report, check_enveloping_action(&env)];

    let q = env.q_map();
    let q_open = q.is_open_map()?;
    let q_continuous = q.is_continuous()?;
    out.push(CheckReport::new(
        "quotient-open",
        hyps([("topological", topological)]),
        q_open && q_continuous,
        (!(q_open && q_continuous)).then(|| json!({"open": q_open, "continuous": q_continuous})),
    ));

    let mut orbit = env.space.empty_set();
    for k in 0..pa.group().order() {
        for &c in &env.iota {
            orbit.insert(env.action.act(k, c));
        }
    }
    out.push(CheckReport::unconditional("orbit-cover", orbit == env.space.full_set(), None));

    let embedding = env.iota_map().is_embedding()?;
    // without an open domain the criterion fails, see `embedding_needs_open_domain`
    out.push(CheckReport::new(
        "iota-embedding",
        hyps([("domain open", domain.open)]),
        embedding == continuous,
        Some(json!({"embedding": embedding, "continuous": continuous})),
    ));

    let image = env.iota_image();
    let image_open = env.space.open_set(&image);
    out.push(CheckReport::new(
        "iota-open",
        hyps([("domain open", domain.open)]),
        image_open,
        None,
    ));

    out.push(check_restriction_equivalence(pa, &env, topological)?);

    let image_closed = env.space.closed_set(&image);
    let image_regular = env.space.subspace(&image)?.separation().regular;
    out.push(CheckReport::new(
        "regular-transfer",
        hyps([
            ("orbit cover", orbit == env.space.full_set()),
            ("iota image closed", image_closed),
            ("iota image regular", image_regular),
        ]),
        env.space.separation().regular,
        None,
    ));
    Ok(out)
}

/// The restriction of `μ` to `ι(X)` is equivalent to `pa` through `ι`.
fn check_restriction_equivalence(
    pa: &PartialAction,
    env: &EnvelopingSpace,
    topological: bool,
) -> Result<CheckReport> {
    let hypotheses = hyps([("topological", topological)]);
    let restricted = match env.action.restrict(&env.iota_image()) {
        Ok(r) => r,
        Err(e) => {
            return Ok(CheckReport::new(
                "restriction-equivalence",
                hypotheses,
                false,
                Some(json!({"reason": "restriction failed", "error": e.to_string()})),
            ))
        }
    };
    // restricted points are the classes of ι(X) in increasing order
    let members: Vec<usize> = env.iota_image().ones().collect();
    let map = env
        .iota
        .iter()
        .map(|c| members.binary_search(c).expect("ι lands in its image"))
        .collect();
    let f = GMap::new(pa.clone(), restricted, map)?;
    let r = is_equivalence(&f)?;
    Ok(CheckReport::new("restriction-equivalence", hypotheses, r.conclusion, r.witness))
}

/// Lemma-style check for an arbitrary global action: if `G·U = Y` with `U`
/// closed and regular then `Y` is regular.
pub fn check_regular_transfer(ga: &GlobalAction, u: &PointSet) -> Result<CheckReport> {
    let y = ga.space();
    let mut orbit = y.empty_set();
    for k in 0..ga.group().order() {
        for p in u.ones() {
            orbit.insert(ga.act(k, p));
        }
    }
    let u_regular = u.ones().next().is_some() && y.subspace(u)?.separation().regular;
    Ok(CheckReport::new(
        "regular-transfer",
        hyps([
            ("orbit cover", orbit == y.full_set()),
            ("closed", y.closed_set(u)),
            ("regular", u_regular),
        ]),
        y.separation().regular,
        None,
    ))
}

/// Closedness of a relation on the points of `space`, as a subset of
/// `space × space`: every pair of points in the closures of a related pair
/// must be related.
pub fn relation_is_closed(space: &FinSpace, rel: &Relation) -> Option<(usize, usize)> {
    let n = space.len();
    // closure of a point p is {a : p ∈ U_a}
    let point_closure: Vec<Vec<usize>> = (0..n)
        .map(|p| (0..n).filter(|&a| space.nbhd(a).contains(p)).collect())
        .collect();
    for p in 0..n {
        for q in rel.row(p).ones() {
            for &a in &point_closure[p] {
                if let Some(&b) = point_closure[q].iter().find(|&&b| !rel.related(a, b)) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

fn space_closedness(pa: &PartialAction) -> Result<(bool, Option<Value>)> {
    let (rel, _) = build_relation(pa)?;
    let pairs = FinSpace::product(&pa.group().discrete_space(), pa.space());
    Ok(match relation_is_closed(&pairs, &rel) {
        None => (true, None),
        Some((a, b)) => (false, Some(json!({"outside": [pair_name(pa, a), pair_name(pa, b)]}))),
    })
}

fn lifted(pa: &PartialAction, kind: Kind) -> Result<Lifted> {
    let h = build_hyperspace(pa.space(), kind)?;
    let pairs = pa.group().order() * h.len();
    if pairs > PAIR_CAP {
        return Err(Error::SizeLimit(format!("{pairs} hyperspace pairs exceed the {PAIR_CAP}-pair cap")));
    }
    lift_pa(pa, kind)
}

/// `R` is closed exactly when `X_G` is Hausdorff, and the same for `2R`.
pub fn check_relation_closed(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let (r_closed, _) = space_closedness(pa)?;
    let xg = globalize(pa)?;
    let xg_hausdorff = xg.space().separation().hausdorff;
    let l = lifted(pa, kind)?;
    let (r2_closed, _) = space_closedness(&l.action)?;
    let hg_hausdorff = globalize(&l.action)?.space().separation().hausdorff;
    let ok = r_closed == xg_hausdorff && r2_closed == hg_hausdorff;
    Ok(CheckReport::new(
        "relation-closed",
        hyps([
            ("topological", pa.is_topological_action()),
            ("X Hausdorff", pa.space().separation().hausdorff),
        ]),
        ok,
        Some(json!({
            "R_closed": r_closed, "XG_hausdorff": xg_hausdorff,
            "2R_closed": r2_closed, "HG_hausdorff": hg_hausdorff,
        })),
    ))
}

/// `2R` is closed provided `R` is.
pub fn check_l2(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let (r_closed, _) = space_closedness(pa)?;
    let l = lifted(pa, kind)?;
    let (r2_closed, witness) = space_closedness(&l.action)?;
    Ok(CheckReport::new(
        "lemma-l2",
        hyps([("topological", pa.is_topological_action()), ("R closed", r_closed)]),
        r2_closed,
        witness,
    ))
}

/// `Θ : X_G -> H_G, [g, x] ↦ [g, {x}]`, as an assignment on classes.
pub fn theta_embedding(pa: &PartialAction, kind: Kind) -> Result<(Vec<usize>, CheckReport)> {
    let xg = globalize(pa)?;
    let l = lifted(pa, kind)?;
    let hg = globalize(&l.action)?;
    let n = pa.space().len();
    let mut theta = vec![usize::MAX; xg.len()];
    let mut well_defined = true;
    for p in 0..xg.pairs.len() {
        let (g, x) = (p / n, p % n);
        let image = hg.class_of_pair(g, l.hyper.singleton(x));
        let c = xg.class_of[p];
        if theta[c] == usize::MAX {
            theta[c] = image;
        } else if theta[c] != image {
            well_defined = false;
        }
    }
    let map = PointMap::total(xg.space(), hg.space(), theta.clone())?;
    let injective = map.is_injective();
    let embedding = map.is_embedding()?;
    let ok = well_defined && injective && embedding;
    let report = CheckReport::new(
        "lemma-l1",
        hyps([("topological", pa.is_topological_action())]),
        ok,
        (!ok).then(|| json!({"well_defined": well_defined, "injective": injective, "embedding": embedding})),
    );
    Ok((theta, report))
}

/// `X_G` is Hausdorff exactly when `H_G` is.
pub fn check_equivh(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let xg = globalize(pa)?.space().separation().hausdorff;
    let l = lifted(pa, kind)?;
    let hg = globalize(&l.action)?.space().separation().hausdorff;
    Ok(CheckReport::new(
        "thm-equivh",
        hyps([
            ("topological", pa.is_topological_action()),
            ("X Hausdorff", pa.space().separation().hausdorff),
        ]),
        xg == hg,
        Some(json!({"XG_hausdorff": xg, "HG_hausdorff": hg, "kind": kind.name()})),
    ))
}

/// `X_G` T1 implies `(H3)_G` T1, plus the converse as a second report.
pub fn check_fin(pa: &PartialAction) -> Result<(CheckReport, CheckReport)> {
    let xg = globalize(pa)?.space().separation().t1;
    let l = lifted(pa, Kind::H3)?;
    let hg = globalize(&l.action)?.space().separation().t1;
    let topological = pa.is_topological_action();
    let hausdorff = pa.space().separation().hausdorff;
    let values = json!({"XG_t1": xg, "H3G_t1": hg});
    let forward = CheckReport::new(
        "prop-fin",
        hyps([("topological", topological), ("X Hausdorff", hausdorff), ("XG T1", xg)]),
        hg,
        Some(values.clone()),
    );
    let converse = CheckReport::new(
        "prop-fin-converse",
        hyps([("topological", topological), ("X Hausdorff", hausdorff), ("H3G T1", hg)]),
        xg,
        Some(values),
    );
    Ok((forward, converse))
}

/// A continuous partial action with closed domain has regular `X_G` and `H_G`.
pub fn check_regu(pa: &PartialAction, kind: Kind) -> Result<CheckReport> {
    let xg = globalize(pa)?.space().separation().regular;
    let l = lifted(pa, kind)?;
    let hg = globalize(&l.action)?.space().separation().regular;
    Ok(CheckReport::new(
        "thm-regu",
        hyps([
            ("continuous", pa.is_continuous_action()),
            ("domain closed", pa.domain_topology().closed),
            ("X Hausdorff", pa.space().separation().hausdorff),
        ]),
        xg && hg,
        Some(json!({"XG_regular": xg, "HG_regular": hg, "kind": kind.name()})),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::FinGroup;
    use crate::report::Status;

    #[test]
    fn embedding_needs_open_domain() {
        // Z3 on Sierpinski: X_1 = {1} is open, X_2 = {0} is not
        let pa = PartialAction::from_labels(
            FinGroup::cyclic(3).unwrap(),
            FinSpace::sierpinski(),
            &[("1", &["1"]), ("2", &["0"])],
            &[("1", &[("0", "1")]), ("2", &[("1", "0")])],
        )
        .unwrap();
        assert!(pa.is_valid());
        assert!(pa.is_continuous_action());
        assert!(!pa.domain_topology().open);
        let env = globalize(&pa).unwrap();
        assert!(!env.iota_map().is_embedding().unwrap());
        let reports = check_globalization(&pa).unwrap();
        let r = reports.iter().find(|r| r.check_id == "iota-embedding").unwrap();
        assert_eq!(r.status, Status::HypothesisFailed);
        assert!(!r.conclusion);
    }

    #[test]
    fn swap_relation_by_definition() {
        let pa = fixtures::swap();
        let (rel, report) = build_relation(&pa).unwrap();
        assert!(report.is_verified());
        let n = 3;
        let (a, b, c) = (0, 1, 2);
        assert!(rel.related(a, n + b));
        assert!(!rel.related(c, n + c));
    }

    #[test]
    fn swap_envelope() {
        let pa = fixtures::swap();
        let env = globalize(&pa).unwrap();
        assert_eq!(env.len(), 4);
        let n = 3;
        // classes {(0,a),(1,b)}, {(0,b),(1,a)}, {(0,c)}, {(1,c)}
        assert_eq!(env.representatives(), &[0, 1, 2, n + 2]);
        let mu: Vec<usize> = (0..4).map(|c| env.action().act(1, c)).collect();
        assert_eq!(mu, vec![1, 0, 3, 2]);
        assert!(env.space().separation().hausdorff);
        for r in check_globalization(&pa).unwrap() {
            assert!(r.is_verified(), "{r:?}");
        }
    }

    #[test]
    fn trivial_group_envelope_is_the_space() {
        let pa = fixtures::trivial();
        let env = globalize(&pa).unwrap();
        assert_eq!(env.len(), pa.space().len());
        assert_eq!(env.relation().size(), pa.space().len());
        assert!(env.iota_map().is_homeomorphism().unwrap());
    }

    #[test]
    fn kh12_envelope() {
        let pa = fixtures::kh12();
        let env = globalize(&pa).unwrap();
        // four points lie in no proper carrier and give classes of size one;
        // the other eight lie in exactly one and give classes of size two
        assert_eq!(env.len(), 4 * 4 + 4 * 8 / 2);
        for r in check_globalization(&pa).unwrap() {
            assert!(!r.is_counterexample(), "{r:?}");
        }
    }

    #[test]
    fn continuous_non_topological_embedding() {
        let pa = fixtures::sierpinski();
        let reports = check_globalization(&pa).unwrap();
        let emb = reports.iter().find(|r| r.check_id == "iota-embedding").unwrap();
        assert!(emb.is_verified());
    }

    #[test]
    fn swap_enveloping_checks() {
        let pa = fixtures::swap();
        assert!(check_relation_closed(&pa, Kind::H1).unwrap().is_verified());
        assert!(check_l2(&pa, Kind::H1).unwrap().is_verified());
        let (theta, r) = theta_embedding(&pa, Kind::H1).unwrap();
        assert!(r.is_verified());
        assert_eq!(theta.len(), 4);
        assert!(check_equivh(&pa, Kind::H1).unwrap().is_verified());
        let (f, c) = check_fin(&pa).unwrap();
        assert!(f.is_verified() && c.is_verified());
        assert!(check_regu(&pa, Kind::H1).unwrap().is_verified());
    }

    #[test]
    fn kh12_equivh_is_hypothesis_failed() {
        let pa = fixtures::kh12();
        let r = check_equivh(&pa, Kind::H2).unwrap();
        assert_eq!(r.status, Status::HypothesisFailed);
    }

    #[test]
    fn diagonal_closedness() {
        let discrete = GlobalAction::trivial(FinGroup::trivial(), FinSpace::discrete(&["a", "b"]).unwrap());
        let (ok, _) = space_closedness(&discrete.to_partial()).unwrap();
        assert!(ok);
        let sierpinski = GlobalAction::trivial(FinGroup::trivial(), FinSpace::sierpinski());
        let (ok, _) = space_closedness(&sierpinski.to_partial()).unwrap();
        assert!(!ok);
    }

    #[test]
    fn regular_transfer_on_global_action() {
        let ga = fixtures::swap2_global_action();
        let u = ga.space().set_of(["a"]).unwrap();
        assert!(check_regular_transfer(&ga, &u).unwrap().is_verified());
    }
}
