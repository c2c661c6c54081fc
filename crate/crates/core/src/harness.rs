//! Theorem registry and the seeded property harness.

use std::collections::BTreeMap;

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{random_instance, random_wild_pa, Limits, PartialAction};
use crate::category::{check_functor_laws, check_monad_laws, check_naturality, random_gmap_pair, Sampling, Transformation};
use crate::envelope::{
    check_equivh, check_fin, check_globalization, check_l2, check_regu, check_regular_transfer, check_relation_closed,
    theta_embedding,
};
use crate::error::{Error, Result};
use crate::hyperspace::{
    build_hyperspace, check_closed_domain_lift, check_lift_transfer, check_singleton_union, vietoris_subbasis_space, Kind,
};
use crate::report::{CheckReport, Status};
use crate::topology::FinSpace;
use crate::tower::MAX_ATOMS_LEVEL3;

/// Settings shared by the theorem runners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub kind: Kind,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            kind: Kind::H1,
            samples: 10_000,
            seed: 0,
            exhaustive: false,
        }
    }
}

type Runner = fn(&PartialAction, &Options) -> Result<Vec<CheckReport>>;

/// A checkable statement with its command-line id.
pub struct Theorem {
    pub id: &'static str,
    pub description: &'static str,
    runner: Runner,
}

impl Theorem {
    pub fn run(&self, pa: &PartialAction, opts: &Options) -> Result<Vec<CheckReport>> {
        (self.runner)(pa, opts)
    }
}

impl std::fmt::Debug for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theorem").field("id", &self.id).finish()
    }
}

/// The set-theoretic axioms and the family conditions give the same verdict.
pub fn axiom_agreement(pa: &PartialAction) -> CheckReport {
    let axioms = pa.check_pa_axioms();
    let family = pa.check_family_conditions();
    let agree = axioms.is_ok() == family.is_ok();
    CheckReport::unconditional(
        "prop2.3",
        agree,
        Some(json!({
            "pa_axioms": axioms.is_ok(),
            "family_conditions": family.is_ok(),
            "pa_witness": axioms.err(),
            "family_witness": family.err(),
        })),
    )
}

fn run_prop23(pa: &PartialAction, _: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![axiom_agreement(pa)])
}

fn run_thm32(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![check_lift_transfer(pa, o.kind)?])
}

fn run_prop35(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![check_closed_domain_lift(pa, o.kind)?])
}

fn run_l1(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![theta_embedding(pa, o.kind)?.1])
}

fn run_l2(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![check_l2(pa, o.kind)?, check_relation_closed(pa, o.kind)?])
}

fn run_equivh(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![check_equivh(pa, o.kind)?])
}

fn run_fin(pa: &PartialAction, _: &Options) -> Result<Vec<CheckReport>> {
    let (forward, converse) = check_fin(pa)?;
    Ok(vec![forward, converse])
}

fn run_regu(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![check_regu(pa, o.kind)?])
}

fn run_monad(pa: &PartialAction, o: &Options) -> Result<Vec<CheckReport>> {
    let sampling = if o.exhaustive {
        Sampling::Exhaustive
    } else {
        Sampling::Sampled {
            samples: o.samples,
            seed: o.seed,
        }
    };
    Ok(vec![check_monad_laws(pa, sampling)?.1])
}

pub static THEOREMS: &[Theorem] = &[
    Theorem {
        id: "prop2.3",
        description: "the partial-action axioms agree with the bijection-family conditions",
        runner: run_prop23,
    },
    Theorem {
        id: "thm3.2",
        description: "the hyperspace lift is a topological partial action; open domain, continuity and globality transfer",
        runner: run_thm32,
    },
    Theorem {
        id: "prop3.5",
        description: "a closed domain lifts to a closed domain",
        runner: run_prop35,
    },
    Theorem {
        id: "lemma-l1",
        description: "[g,x] -> [g,{x}] embeds the enveloping space into that of the lift",
        runner: run_l1,
    },
    Theorem {
        id: "lemma-l2",
        description: "the lifted relation is closed when the relation is closed",
        runner: run_l2,
    },
    Theorem {
        id: "thm-equivh",
        description: "the enveloping space is Hausdorff exactly when that of the lift is",
        runner: run_equivh,
    },
    Theorem {
        id: "prop-fin",
        description: "T1 enveloping space gives T1 enveloping space of the finite-subset lift, and conversely",
        runner: run_fin,
    },
    Theorem {
        id: "thm-regu",
        description: "continuous with closed domain gives regular enveloping spaces",
        runner: run_regu,
    },
    Theorem {
        id: "monad",
        description: "unit and associativity laws of the hyperspace monad, with G-map checks",
        runner: run_monad,
    },
];

pub fn find_theorem(id: &str) -> Result<&'static Theorem> {
    THEOREMS
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownTheoremId(id.to_string()))
}

/// Minimal-neighbourhood Vietoris topology against the subbasis topology.
pub fn vietoris_oracle(base: &FinSpace, kind: Kind) -> Result<CheckReport> {
    let fast = build_hyperspace(base, kind)?;
    let oracle = vietoris_subbasis_space(base, kind)?;
    let ok = fast.space() == &oracle;
    Ok(CheckReport::unconditional(
        "vietoris-oracle",
        ok,
        (!ok).then(|| json!({"kind": kind.name(), "points": fast.len()})),
    ))
}

/// Bounds and budgets for [`fuzz`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seeds: u64,
    pub first_seed: u64,
    pub max_group: usize,
    pub max_space: usize,
    /// Hyperspace-based checks run only on spaces up to this size.
    pub hyper_max_space: usize,
    pub kind: Kind,
    /// Sample count for the monad check; zero disables it.
    pub monad_samples: usize,
    /// Random G-map pairs are checked when true.
    pub morphisms: bool,
}

impl FuzzConfig {
    pub fn new(seeds: u64, max_group: usize, max_space: usize) -> Self {
        FuzzConfig {
            seeds,
            first_seed: 0,
            max_group,
            max_space,
            hyper_max_space: 5,
            kind: Kind::H1,
            monad_samples: 256,
            morphisms: true,
        }
    }

    fn limits(&self) -> Limits {
        Limits::new(self.max_group, self.max_space)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub verified: u64,
    pub hypothesis_failed: u64,
    pub counterexample: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub check_id: String,
    pub witness: Option<Value>,
}

/// Outcome of the checks on one seed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SeedOutcome {
    pub seed: u64,
    pub reports: Vec<CheckReport>,
    /// Checks not run because an instance exceeded a size cap.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub instances: u64,
    pub tallies: BTreeMap<String, Tally>,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzSummary {
    pub fn total_counterexamples(&self) -> u64 {
        self.tallies.values().map(|t| t.counterexample).sum()
    }
}

struct Collector<'a> {
    out: &'a mut SeedOutcome,
}

impl Collector<'_> {
    fn push(&mut self, id: &str, r: Result<Vec<CheckReport>>) {
        match r {
            Ok(reports) => self.out.reports.extend(reports),
            Err(Error::SizeLimit(_)) => self.out.skipped.push(id.to_string()),
            Err(e) => self.out.reports.push(CheckReport::unconditional(
                id,
                false,
                Some(json!({"error": e.to_string()})),
            )),
        }
    }

    fn skip(&mut self, ids: &[&str]) {
        self.out.skipped.extend(ids.iter().map(|s| s.to_string()));
    }
}

const HYPER_CHECKS: &[&str] = &[
    "vietoris-oracle", "hyperspace-maps", "thm3.2", "prop3.5", "lemma-l1", "lemma-l2", "thm-equivh", "prop-fin",
    "thm-regu",
];

/// A copy of `pa` with one map entry redirected inside its carrier, or
/// `None` when no entry can change.
pub fn mutate<R: Rng>(rng: &mut R, pa: &PartialAction) -> Option<PartialAction> {
    let g = pa.group();
    let choices = (0..g.order()).flat_map(|k| {
        let target = pa.carrier(k);
        pa.carrier(g.inv(k))
            .ones()
            .flat_map(move |x| target.ones().map(move |y| (k, x, y)))
            .collect::<Vec<_>>()
    });
    let (k, x, y) = choices.filter(|&(k, x, y)| pa.apply(k, x) != Some(y)).choose(rng)?;
    pa.with_theta_entry(k, x, Some(y)).ok()
}

/// Every harness property on the instance drawn from `seed`.
pub fn fuzz_seed(seed: u64, config: &FuzzConfig) -> SeedOutcome {
    let mut out = SeedOutcome {
        seed,
        ..Default::default()
    };
    let mut c = Collector { out: &mut out };
    let inst = match random_instance(seed, config.limits()) {
        Ok(i) => i,
        Err(e) => {
            c.push("generation", Err(e));
            return out;
        }
    };
    let pa = &inst.action;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    c.push("prop2.3", Ok(vec![axiom_agreement(pa)]));
    if let Some(m) = mutate(&mut rng, pa) {
        c.push("prop2.3", Ok(vec![axiom_agreement(&m)]));
    }
    // restrictions of global actions to open sets are topological
    c.push("topological", Ok(vec![pa.is_topological()]));
    let routes = pa.domain_topology().routes_agree
        && pa.continuity_via_product() == pa.continuity_per_element();
    c.push("routes", Ok(vec![CheckReport::unconditional("routes", routes, None)]));
    c.push("globalization", check_globalization(pa));

    let wild = random_wild_pa(seed, config.limits());
    match &wild {
        Ok(w) => {
            c.push("prop2.3", Ok(vec![axiom_agreement(w)]));
            if let Some(m) = mutate(&mut rng, w) {
                c.push("prop2.3", Ok(vec![axiom_agreement(&m)]));
            }
            c.push("globalization", check_globalization(w));
        }
        Err(e) => c.push("generation", Err(e.clone())),
    }

    let amb = inst.ambient.space();
    let p = rng.gen_range(0..amb.len());
    let u = amb.closure_set(&crate::topology::set_with(amb.len(), [p]));
    c.push("regular-transfer", check_regular_transfer(&inst.ambient, &u).map(|r| vec![r]));

    let n = pa.space().len();
    if n <= config.hyper_max_space {
        let opts = Options {
            kind: config.kind,
            ..Default::default()
        };
        for kind in [Kind::H1, Kind::H2] {
            c.push("vietoris-oracle", vietoris_oracle(pa.space(), kind).map(|r| vec![r]));
        }
        c.push("hyperspace-maps", check_singleton_union(pa.space()).map(|r| vec![r]));
        // lifting needs a topological action
        let wild_small = wild
            .as_ref()
            .ok()
            .filter(|w| w.space().len() <= config.hyper_max_space && w.is_topological_action());
        for t in THEOREMS.iter().filter(|t| t.id != "prop2.3" && t.id != "monad") {
            c.push(t.id, t.run(pa, &opts));
            if let Some(w) = wild_small {
                c.push(t.id, t.run(w, &opts));
            }
        }
    } else {
        c.skip(HYPER_CHECKS);
    }

    if config.monad_samples > 0 && n <= MAX_ATOMS_LEVEL3 {
        let sampling = Sampling::Sampled {
            samples: config.monad_samples,
            seed,
        };
        c.push("monad", check_monad_laws(pa, sampling).map(|(_, r)| vec![r]));
    } else {
        c.skip(&["monad"]);
    }

    if config.morphisms {
        let limits = Limits::new(config.max_group, config.max_space.min(config.hyper_max_space).min(4));
        match random_gmap_pair(seed, limits) {
            Ok((f, g)) => {
                c.push("functor-laws", check_functor_laws(&f, &g, Kind::H1).map(|r| vec![r]));
                for h in [&f, &g] {
                    c.push("naturality-eta", check_naturality(h, Transformation::Eta).map(|r| vec![r]));
                    c.push("naturality-mu", check_naturality(h, Transformation::Mu).map(|r| vec![r]));
                }
            }
            Err(e) => c.push("functor-laws", Err(e)),
        }
    }
    out
}

/// Run [`fuzz_seed`] over `config.seeds` consecutive seeds in parallel; the
/// summary is assembled in seed order.
pub fn fuzz(config: &FuzzConfig) -> FuzzSummary {
    let outcomes: Vec<SeedOutcome> = (config.first_seed..config.first_seed + config.seeds)
        .into_par_iter()
        .map(|s| fuzz_seed(s, config))
        .collect();
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for o in &outcomes {
        for r in &o.reports {
            let t = tallies.entry(r.check_id.clone()).or_default();
            match r.status {
                Status::Verified => t.verified += 1,
                Status::HypothesisFailed => t.hypothesis_failed += 1,
                Status::Counterexample => {
                    t.counterexample += 1;
                    counterexamples.push(Counterexample {
                        seed: o.seed,
                        check_id: r.check_id.clone(),
                        witness: r.witness.clone(),
                    });
                }
            }
        }
        for id in &o.skipped {
            tallies.entry(id.clone()).or_default().skipped += 1;
        }
    }
    FuzzSummary {
        config: *config,
        instances: outcomes.len() as u64,
        tallies,
        counterexamples,
    }
}
