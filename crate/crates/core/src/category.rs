//! G-maps between partial actions, the hyperspace functor, and the unit and
//! multiplication `η`, `μ` with their laws.

use fixedbitset::FixedBitSet;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{random_global, random_open_subset, GlobalAction, Limits, PartialAction};
use crate::error::{Error, Result};
use crate::groups::FinGroup;
use crate::hyperspace::{lift_pa, singleton_map, union_map, Kind};
use crate::report::{hyps, CheckReport};
use crate::topology::{FinSpace, PointMap};
use crate::tower::{self, Level3, MaskAction, L1};

/// A map between the spaces of two partial actions of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    source: PartialAction,
    target: PartialAction,
    map: Vec<usize>,
}

impl GMap {
    pub fn new(source: PartialAction, target: PartialAction, map: Vec<usize>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        PointMap::total(source.space(), target.space(), map.clone())?;
        Ok(GMap { source, target, map })
    }

    pub fn identity(pa: &PartialAction) -> Self {
        GMap {
            source: pa.clone(),
            target: pa.clone(),
            map: (0..pa.space().len()).collect(),
        }
    }

    pub fn source(&self) -> &PartialAction {
        &self.source
    }

    pub fn target(&self) -> &PartialAction {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn point_map(&self) -> PointMap<'_> {
        PointMap::total(self.source.space(), self.target.space(), self.map.clone()).expect("checked on construction")
    }
}

fn gmap_failure(f: &GMap) -> Result<Option<Value>> {
    if !f.point_map().is_continuous()? {
        return Ok(Some(json!({"condition": "continuity"})));
    }
    let (src, tgt) = (&f.source, &f.target);
    let g = src.group();
    for k in 0..g.order() {
        if let Some(x) = src.carrier(k).ones().find(|&x| !tgt.carrier(k).contains(f.map[x])) {
            return Ok(Some(json!({
                "condition": "carrier", "g": g.name(k), "x": src.space().point(x).to_string()
            })));
        }
    }
    for k in 0..g.order() {
        for x in src.carrier(g.inv(k)).ones() {
            let lhs = src.apply(k, x).map(|y| f.map[y]);
            let rhs = tgt.apply(k, f.map[x]);
            if lhs != rhs {
                return Ok(Some(json!({
                    "condition": "equivariance", "g": g.name(k), "x": src.space().point(x).to_string()
                })));
            }
        }
    }
    Ok(None)
}

/// Continuity, `f(X_g) ⊆ Y_g`, and `f(θ_g(x)) = ψ_g(f(x))` on `X_{g⁻¹}`.
pub fn is_gmap(f: &GMap) -> Result<CheckReport> {
    let failure = gmap_failure(f)?;
    Ok(CheckReport::unconditional("g-map", failure.is_none(), failure))
}

/// A G-map that is a homeomorphism whose inverse is also a G-map.
pub fn is_equivalence(f: &GMap) -> Result<CheckReport> {
    if let Some(w) = gmap_failure(f)? {
        return Ok(CheckReport::unconditional("equivalence", false, Some(w)));
    }
    if !f.point_map().is_homeomorphism()? {
        return Ok(CheckReport::unconditional(
            "equivalence",
            false,
            Some(json!({"condition": "homeomorphism"})),
        ));
    }
    let mut inverse = vec![0; f.map.len()];
    for (x, &y) in f.map.iter().enumerate() {
        inverse[y] = x;
    }
    let back = GMap::new(f.target.clone(), f.source.clone(), inverse)?;
    let failure = gmap_failure(&back)?.map(|w| json!({"inverse": w}));
    Ok(CheckReport::unconditional("equivalence", failure.is_none(), failure))
}

/// `g ∘ f`.
pub fn compose(f: &GMap, g: &GMap) -> Result<GMap> {
    if f.target != g.source {
        return Err(Error::CarrierMismatch("maps are not composable".into()));
    }
    let map = f.map.iter().map(|&y| g.map[y]).collect();
    GMap::new(f.source.clone(), g.target.clone(), map)
}

/// `2^f : 2^X -> 2^Y, A ↦ f(A)` between the lifted partial actions.
pub fn functor_on_map(f: &GMap, kind: Kind) -> Result<GMap> {
    let ls = lift_pa(&f.source, kind)?;
    let lt = lift_pa(&f.target, kind)?;
    let pm = f.point_map();
    let map = (0..ls.hyper.len())
        .map(|i| {
            let img = pm.image_of(ls.hyper.member(i));
            lt.hyper
                .index_of_set(&img)
                .ok_or_else(|| Error::CarrierMismatch(format!("image of {} is not a point", ls.hyper.space().point(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    GMap::new(ls.action, lt.action, map)
}

/// `η : X -> 2^X, x ↦ {x}`.
pub fn eta(pa: &PartialAction) -> Result<GMap> {
    let l = lift_pa(pa, Kind::H1)?;
    let map = singleton_map(&l.hyper).assignment().iter().map(|y| y.expect("total")).collect();
    GMap::new(pa.clone(), l.action, map)
}

/// `μ : 2^{2^X} -> 2^X, 𝒜 ↦ ∪𝒜`.
pub fn mu(pa: &PartialAction) -> Result<GMap> {
    let l1 = lift_pa(pa, Kind::H1)?;
    let l2 = lift_pa(&l1.action, Kind::H1)?;
    let u = union_map(&l2.hyper, &l1.hyper)?;
    let map = u.assignment().iter().map(|y| y.expect("unions of nonempty sets are nonempty")).collect();
    GMap::new(l2.action, l1.action, map)
}

/// `2^{id} = id` on both ends and `2^{g∘f} = 2^g ∘ 2^f`, with every lifted
/// map a G-map.
pub fn check_functor_laws(f: &GMap, g: &GMap, kind: Kind) -> Result<CheckReport> {
    let gf = compose(f, g)?;
    let (lf, lg, lgf) = (functor_on_map(f, kind)?, functor_on_map(g, kind)?, functor_on_map(&gf, kind)?);
    let mut failed: Vec<&str> = Vec::new();
    for pa in [&f.source, &f.target, &g.target] {
        let lid = functor_on_map(&GMap::identity(pa), kind)?;
        if lid.map.iter().enumerate().any(|(i, &j)| i != j) {
            failed.push("identity");
        }
    }
    if compose(&lf, &lg)?.map != lgf.map {
        failed.push("composition");
    }
    for (name, m) in [("lift of f", &lf), ("lift of g", &lg), ("lift of g∘f", &lgf)] {
        if gmap_failure(m)?.is_some() {
            failed.push(name);
        }
    }
    failed.dedup();
    let hypotheses = hyps([
        ("f is a G-map", gmap_failure(f)?.is_none()),
        ("g is a G-map", gmap_failure(g)?.is_none()),
    ]);
    let witness = (!failed.is_empty()).then(|| json!({"failed": failed, "kind": kind.name()}));
    Ok(CheckReport::new("functor-laws", hypotheses, failed.is_empty(), witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transformation {
    Eta,
    Mu,
}

/// Number of level-two points sampled for the `μ` square over bases too
/// large to enumerate.
const NATURALITY_SAMPLES: usize = 4096;

/// Commutativity of the naturality square of `η` or `μ` along `f`.
pub fn check_naturality(f: &GMap, which: Transformation) -> Result<CheckReport> {
    let hypotheses = hyps([("f is a G-map", gmap_failure(f)?.is_none())]);
    match which {
        Transformation::Eta => {
            let (ea, eb) = (eta(&f.source)?, eta(&f.target)?);
            let lf = functor_on_map(f, Kind::H1)?;
            let bad = (0..f.map.len()).find(|&x| lf.map[ea.map[x]] != eb.map[f.map[x]]);
            let gmaps = gmap_failure(&ea)?.is_none() && gmap_failure(&eb)?.is_none();
            let witness = match bad {
                Some(x) => Some(json!({"x": f.source.space().point(x).to_string()})),
                None if !gmaps => Some(json!({"reason": "η is not a G-map"})),
                None => None,
            };
            Ok(CheckReport::new("naturality-eta", hypotheses, bad.is_none() && gmaps, witness))
        }
        Transformation::Mu => {
            let (checked, bad) = mu_square_masks(f)?;
            let mut ok = bad.is_none();
            let mut witness = bad.map(|a| json!({"level2_mask": a}));
            // the structural square, whenever both double hyperspaces fit
            if ok && f.source.space().len() <= 3 && f.target.space().len() <= 3 {
                let (ma, mb) = (mu(&f.source)?, mu(&f.target)?);
                let lf = functor_on_map(f, Kind::H1)?;
                let llf = functor_on_map(&lf, Kind::H1)?;
                let square = (0..ma.map.len()).all(|a| lf.map[ma.map[a]] == mb.map[llf.map[a]]);
                let gmaps = gmap_failure(&ma)?.is_none() && gmap_failure(&mb)?.is_none();
                ok = square && gmaps;
                if !ok {
                    witness = Some(json!({"structural_square": square, "mu_gmaps": gmaps}));
                }
            }
            let mut r = CheckReport::new("naturality-mu", hypotheses, ok, witness);
            if r.witness.is_none() {
                r.witness = Some(json!({"checked": checked}));
            }
            Ok(r)
        }
    }
}

/// `2^f(∪𝒜) = ∪(2^{2^f}(𝒜))` on level-two masks: every point for bases of
/// at most four atoms, a seeded sample otherwise.
fn mu_square_masks(f: &GMap) -> Result<(usize, Option<u64>)> {
    let (n, m) = (f.source.space().len(), f.target.space().len());
    if n > tower::MAX_ATOMS || m > tower::MAX_ATOMS {
        return Err(Error::SizeLimit("μ square needs at most six points on each side".into()));
    }
    let t1 = tower::table1(&f.map);
    let holds = |a: u64| tower::image1(&f.map, tower::mu1(a)) == tower::mu1(tower::image2(&t1, a));
    if n <= tower::MAX_ATOMS_LEVEL3 {
        let count = tower::level2_count(n) as u64;
        Ok((count as usize, (1..=count).find(|&a| !holds(a))))
    } else {
        let width = tower::level1_count(n);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut bad = None;
        for _ in 0..NATURALITY_SAMPLES {
            let a = loop {
                let a = rng.next_u64() & ((1u64 << width) - 1);
                if a != 0 {
                    break a;
                }
            };
            if !holds(a) {
                bad = Some(a);
                break;
            }
        }
        Ok((NATURALITY_SAMPLES, bad))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// Per-law tally of a monad check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCount {
    pub law: String,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Value>,
}

impl LawCount {
    fn new(law: &str) -> Self {
        LawCount {
            law: law.into(),
            checked: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(witness());
            }
        }
    }

    fn merge(&mut self, other: LawCount) {
        self.checked += other.checked;
        self.violations += other.violations;
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonadReport {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub laws: Vec<LawCount>,
}

impl MonadReport {
    pub fn violations(&self) -> u64 {
        self.laws.iter().map(|l| l.violations).sum()
    }

    pub fn to_check_report(&self, topological: bool) -> CheckReport {
        CheckReport::new(
            "monad",
            hyps([("topological", topological)]),
            self.violations() == 0,
            Some(serde_json::to_value(self).expect("serialisable")),
        )
    }
}

/// Largest base for exhaustive monad checks (the triple hyperspace has 127
/// points at two).
pub const EXHAUSTIVE_MONAD_CAP: usize = 2;

/// Unit and associativity laws of `(2^-, η, μ)` on one partial action, with
/// each composite re-checked as a G-map.
pub fn check_monad_laws(pa: &PartialAction, sampling: Sampling) -> Result<(MonadReport, CheckReport)> {
    let topological = pa.is_topological_action();
    let report = match sampling {
        Sampling::Exhaustive => monad_exhaustive(pa)?,
        Sampling::Sampled { samples, seed } => monad_sampled(pa, samples, seed)?,
    };
    let check = report.to_check_report(topological);
    Ok((report, check))
}

fn monad_exhaustive(pa: &PartialAction) -> Result<MonadReport> {
    let n = pa.space().len();
    if n > EXHAUSTIVE_MONAD_CAP {
        return Err(Error::SizeLimit(format!(
            "exhaustive monad check needs at most {EXHAUSTIVE_MONAD_CAP} points, got {n}"
        )));
    }
    let eta_x = eta(pa)?; // X -> T
    let t = eta_x.target().clone();
    let eta_t = eta(&t)?; // T -> TT
    let mu_x = mu(pa)?; // TT -> T
    let tt = mu_x.source().clone();
    let mu_t = mu(&t)?; // TTT -> TT
    let t_eta = functor_on_map(&eta_x, Kind::H1)?; // T -> TT
    let t_mu = functor_on_map(&mu_x, Kind::H1)?; // TTT -> TT
    debug_assert_eq!(eta_t.target(), &tt);

    let left = compose(&t_eta, &mu_x)?;
    let right = compose(&eta_t, &mu_x)?;
    let assoc_a = compose(&mu_t, &mu_x)?;
    let assoc_b = compose(&t_mu, &mu_x)?;

    let name = |s: &FinSpace, i: usize| s.point(i).to_string();
    let mut laws = Vec::new();
    for (law, m) in [("left-unit", &left), ("right-unit", &right)] {
        let mut c = LawCount::new(law);
        for a in 0..t.space().len() {
            c.record(m.map[a] == a, || json!({"point": name(t.space(), a)}));
        }
        laws.push(c);
    }
    let mut c = LawCount::new("associativity");
    for a in 0..assoc_a.map.len() {
        c.record(assoc_a.map[a] == assoc_b.map[a], || json!({"point": name(assoc_a.source.space(), a)}));
    }
    laws.push(c);
    for (law, m) in [
        ("g-map:left-unit", &left),
        ("g-map:right-unit", &right),
        ("g-map:mu-after-mu", &assoc_a),
        ("g-map:mu-after-lifted-mu", &assoc_b),
    ] {
        let mut c = LawCount::new(law);
        let failure = gmap_failure(m)?;
        c.record(failure.is_none(), || failure.clone().unwrap_or(Value::Null));
        laws.push(c);
    }
    Ok(MonadReport {
        mode: "exhaustive",
        seed: None,
        samples: None,
        laws,
    })
}

const CHUNK: usize = 256;

/// Uniform random nonempty subset of `0..width`.
fn random_level3<R: RngCore>(rng: &mut R, width: usize) -> FixedBitSet {
    let blocks = width.div_ceil(usize::BITS as usize);
    loop {
        let mut words: Vec<usize> = (0..blocks).map(|_| rng.next_u64() as usize).collect();
        let tail = width % usize::BITS as usize;
        if tail != 0 {
            *words.last_mut().expect("width > 0") &= (1usize << tail) - 1;
        }
        if words.iter().any(|&w| w != 0) {
            return FixedBitSet::with_capacity_and_blocks(width, words);
        }
    }
}

/// Uniform random nonempty subset of `items`, or `None` when it is empty.
fn random_subset_of<R: Rng>(rng: &mut R, width: usize, items: &[usize]) -> Option<FixedBitSet> {
    if items.is_empty() {
        return None;
    }
    loop {
        let mut s = FixedBitSet::with_capacity(width);
        for chunk in items.chunks(64) {
            let bits = rng.next_u64();
            for (k, &j) in chunk.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    s.insert(j);
                }
            }
        }
        if s.ones().next().is_some() {
            return Some(s);
        }
    }
}

struct SampledContext {
    l3: Level3,
    ma: MaskAction,
    t1: Vec<Vec<L1>>,
    t2: Vec<Vec<u64>>,
    inside: Vec<Vec<usize>>,
}

fn monad_sampled(pa: &PartialAction, samples: usize, seed: u64) -> Result<MonadReport> {
    let ma = MaskAction::from_partial(pa)?;
    let l3 = Level3::new(ma.n)?;
    let t1: Vec<Vec<L1>> = (0..ma.order()).map(|g| ma.table1(g)).collect();
    let t2 = t1.iter().map(|t| l3.table2(t)).collect();
    let inside = ma.carriers.iter().map(|&c| l3.inside(c)).collect();
    let ctx = SampledContext { l3, ma, t1, t2, inside };

    let mut laws = unit_laws_masks(&ctx);
    let chunks = samples.div_ceil(CHUNK);
    let tallies: Vec<[LawCount; 3]> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = CHUNK.min(samples - chunk * CHUNK);
            sample_chunk(&ctx, &mut rng, chunk * CHUNK, count)
        })
        .collect();
    let mut assoc = [
        LawCount::new("associativity"),
        LawCount::new("g-map:mu-after-mu"),
        LawCount::new("g-map:mu-after-lifted-mu"),
    ];
    for t in tallies {
        for (acc, c) in assoc.iter_mut().zip(t) {
            acc.merge(c);
        }
    }
    laws.extend(assoc);
    Ok(MonadReport {
        mode: "sampled",
        seed: Some(seed),
        samples: Some(samples),
        laws,
    })
}

/// Unit laws and their G-map conditions over every point of `2^X`.
fn unit_laws_masks(ctx: &SampledContext) -> Vec<LawCount> {
    let ma = &ctx.ma;
    let left = |a: L1| tower::mu1(tower::singletons(a));
    let right = |a: L1| tower::mu1(tower::eta1(a));
    let mut out = Vec::new();
    for (law, f) in [("left-unit", &left as &dyn Fn(L1) -> L1), ("right-unit", &right)] {
        let mut c = LawCount::new(law);
        for a in 1..1u64 << ma.n {
            c.record(f(a) == a, || json!({"mask": a}));
        }
        out.push(c);
        let mut c = LawCount::new(&format!("g-map:{law}"));
        for g in 0..ma.order() {
            let dom = ma.carriers[ma.inv[g]];
            for a in 1..1u64 << ma.n {
                if a & !ma.carriers[g] == 0 {
                    c.record(f(a) & !ma.carriers[g] == 0, || json!({"g": g, "mask": a, "condition": "carrier"}));
                }
                if a & !dom == 0 {
                    let ok = f(ctx.t1[g][a as usize]) == ctx.t1[g][f(a) as usize];
                    c.record(ok, || json!({"g": g, "mask": a, "condition": "equivariance"}));
                }
            }
        }
        out.push(c);
    }
    out
}

fn sample_chunk(ctx: &SampledContext, rng: &mut ChaCha8Rng, start: usize, count: usize) -> [LawCount; 3] {
    let (l3, ma) = (&ctx.l3, &ctx.ma);
    let mut assoc = LawCount::new("associativity");
    let mut gm_a = LawCount::new("g-map:mu-after-mu");
    let mut gm_b = LawCount::new("g-map:mu-after-lifted-mu");
    let fa = |a: &FixedBitSet| tower::mu1(l3.mu2(a));
    let fb = |a: &FixedBitSet| tower::mu1(l3.image_mu(a));
    for i in start..start + count {
        let a = random_level3(rng, l3.width());
        assoc.record(fa(&a) == fb(&a), || json!({"sample": i}));

        let g = i % ma.order();
        let gi = ma.inv[g];
        if let Some(b) = random_subset_of(rng, l3.width(), &ctx.inside[gi]) {
            let moved = l3.image3(&ctx.t2[g], &b);
            for (c, f) in [(&mut gm_a, &fa as &dyn Fn(&FixedBitSet) -> L1), (&mut gm_b, &fb)] {
                let v = f(&b);
                let ok = v & !ma.carriers[gi] == 0 && f(&moved) == ctx.t1[g][v as usize];
                c.record(ok, || json!({"sample": i, "g": g}));
            }
        }
    }
    [assoc, gm_a, gm_b]
}

/// Two composable G-maps built from a random global action `Y`: the
/// inclusion of restrictions `X1 ⊆ X2 ⊆ Y`, followed either by `μ_z` into
/// `Y` for a central `z`, or by the map to a one-point space.
pub fn random_gmap_pair(seed: u64, limits: Limits) -> Result<(GMap, GMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ga = random_global(&mut rng, limits)?;
    let x2 = random_open_subset(&mut rng, ga.space())?;
    let (sub2, members2) = ga.space().subspace_with_indices(&x2)?;
    let x1_local = random_open_subset(&mut rng, &sub2)?;
    let mut x1 = ga.space().empty_set();
    for k in x1_local.ones() {
        x1.insert(members2[k]);
    }
    let pa1 = ga.restrict(&x1)?;
    let pa2 = ga.restrict(&x2)?;
    let members1: Vec<usize> = x1.ones().collect();
    let inclusion = members1
        .iter()
        .map(|p| members2.binary_search(p).expect("x1 ⊆ x2"))
        .collect();
    let f = GMap::new(pa1, pa2.clone(), inclusion)?;
    let g = if rng.gen_bool(0.5) {
        let center = ga.group().center();
        let z = center[rng.gen_range(0..center.len())];
        let map = members2.iter().map(|&p| ga.act(z, p)).collect();
        GMap::new(pa2, ga.to_partial(), map)?
    } else {
        let point = FinSpace::discrete(&["*"]).expect("nonempty");
        let target = GlobalAction::trivial(ga.group().clone(), point).to_partial();
        GMap::new(pa2, target, vec![0; members2.len()])?
    };
    Ok((f, g))
}

/// A one-point partial action of `group` (every element acts trivially).
pub fn point_action(group: &FinGroup) -> PartialAction {
    GlobalAction::trivial(group.clone(), FinSpace::discrete(&["*"]).expect("nonempty")).to_partial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn swap_exchange() -> GMap {
        let pa = fixtures::swap();
        GMap::new(pa.clone(), pa, vec![1, 0, 2]).unwrap()
    }

    #[test]
    fn identity_is_equivalence() {
        let f = GMap::identity(&fixtures::swap());
        assert!(is_gmap(&f).unwrap().is_verified());
        assert!(is_equivalence(&f).unwrap().is_verified());
    }

    #[test]
    fn constant_to_moved_point_is_not_a_gmap() {
        let pa = fixtures::swap2_global();
        // constant onto `a`, which `1` moves to `b`
        let f = GMap::new(pa.clone(), pa, vec![0, 0]).unwrap();
        let r = is_gmap(&f).unwrap();
        assert!(r.is_counterexample());
        assert_eq!(r.witness.unwrap()["condition"], "equivariance");
    }

    #[test]
    fn group_mismatch() {
        let a = fixtures::swap();
        let b = fixtures::trivial();
        assert_eq!(GMap::new(a, b, vec![0, 0, 0]), Err(Error::GroupMismatch));
    }

    #[test]
    fn swap_exchange_lifts() {
        let f = swap_exchange();
        assert!(is_equivalence(&f).unwrap().is_verified());
        let lf = functor_on_map(&f, Kind::H1).unwrap();
        let h = crate::hyperspace::build_hyperspace(f.source().space(), Kind::H1).unwrap();
        let ix = |l: &[&str]| h.index_of_labels(l).unwrap();
        assert_eq!(lf.apply(ix(&["a"])), ix(&["b"]));
        assert_eq!(lf.apply(ix(&["a", "c"])), ix(&["b", "c"]));
        assert!(is_gmap(&lf).unwrap().is_verified());
        let id = functor_on_map(&GMap::identity(f.source()), Kind::H1).unwrap();
        assert!(id.map().iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn eta_and_mu_on_small_actions() {
        let pa = fixtures::swap();
        let e = eta(&pa).unwrap();
        assert!(is_gmap(&e).unwrap().is_verified());
        let m = mu(&fixtures::swap2_global()).unwrap();
        assert!(is_gmap(&m).unwrap().is_verified());
    }

    #[test]
    fn naturality_on_fixture_morphisms() {
        for f in [swap_exchange(), GMap::identity(&fixtures::swap())] {
            assert!(check_naturality(&f, Transformation::Eta).unwrap().is_verified());
            assert!(check_naturality(&f, Transformation::Mu).unwrap().is_verified());
            assert!(check_functor_laws(&f, &f, Kind::H1).unwrap().is_verified());
        }
    }

    #[test]
    fn monad_exhaustive_swap2() {
        let (m, r) = check_monad_laws(&fixtures::swap2_global(), Sampling::Exhaustive).unwrap();
        assert!(r.is_verified(), "{m:?}");
        let checked: Vec<(String, u64)> = m.laws.iter().map(|l| (l.law.clone(), l.checked)).collect();
        assert_eq!(checked[0], ("left-unit".to_string(), 3));
        assert_eq!(checked[2], ("associativity".to_string(), 127));
    }

    #[test]
    fn monad_exhaustive_cap() {
        assert!(matches!(
            check_monad_laws(&fixtures::swap(), Sampling::Exhaustive),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn monad_sampled_swap_is_deterministic() {
        let s = Sampling::Sampled { samples: 600, seed: 7 };
        let (a, r) = check_monad_laws(&fixtures::swap(), s).unwrap();
        assert!(r.is_verified(), "{a:?}");
        let (b, _) = check_monad_laws(&fixtures::swap(), s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.laws[0].checked, 7);
    }

    #[test]
    fn random_pairs_compose() {
        for seed in 0..20 {
            let (f, g) = random_gmap_pair(seed, Limits::new(4, 4)).unwrap();
            assert!(is_gmap(&f).unwrap().is_verified());
            assert!(is_gmap(&g).unwrap().is_verified());
            assert!(compose(&f, &g).is_ok());
        }
    }
}
