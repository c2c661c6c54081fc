//! Acceptance criteria 1 to 9, one verdict line each.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use hyperact::actions::{random_instance, random_pa, random_wild_pa, Limits};
use hyperact::category::{check_functor_laws, check_monad_laws, check_naturality, random_gmap_pair, Transformation};
use hyperact::envelope::{check_globalization, globalize};
use hyperact::fixtures;
use hyperact::harness::{axiom_agreement, fuzz, mutate, FuzzConfig, Options, THEOREMS};
use hyperact::hyperspace::{build_hyperspace, check_lift_transfer, lift_pa, vietoris_subbasis_space};
use hyperact::{CheckReport, FinSpace, GMap, Kind, PartialAction, Sampling, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn report<'a>(reports: &'a [CheckReport], id: &str) -> &'a CheckReport {
    reports.iter().find(|r| r.check_id == id).unwrap_or_else(|| panic!("no {id} report"))
}

fn family(seeds: u64, limits: Limits) -> Vec<PartialAction> {
    let mut out: Vec<PartialAction> = fixtures::all().into_iter().map(|(_, pa)| pa).collect();
    for seed in 0..seeds {
        out.push(random_pa(seed, limits).unwrap());
        out.push(random_wild_pa(seed, limits).unwrap());
    }
    out
}

fn axiom_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut checked, mut disagreements, mut invalid) = (0, 0, 0);
    for pa in family(1000, Limits::new(8, 8)) {
        let mut cases = vec![pa.clone()];
        cases.extend(mutate(&mut rng, &pa));
        for c in cases {
            checked += 1;
            if !axiom_agreement(&c).is_verified() {
                disagreements += 1;
            }
            if !c.is_valid() {
                invalid += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        disagreements == 0 && invalid > 0 && secs < 30.0,
        format!("{checked} instances ({invalid} invalid), {disagreements} disagreements, {secs:.1} s"),
    )
}

fn globalization_suite() -> Verdict {
    let ids = [
        "relation-equivalence",
        "enveloping-action",
        "quotient-open",
        "orbit-cover",
        "restriction-equivalence",
    ];
    let (mut topological, mut failures) = (0, Vec::new());
    // (continuous, embedding) over instances with open domain
    let mut embedding_cases: BTreeMap<(bool, bool), usize> = BTreeMap::new();
    for pa in family(1000, Limits::new(8, 8)) {
        let reports = check_globalization(&pa).unwrap();
        let open = pa.domain_topology().open;
        if open {
            let env = globalize(&pa).unwrap();
            let key = (pa.is_continuous_action(), env.iota_map().is_embedding().unwrap());
            *embedding_cases.entry(key).or_default() += 1;
        }
        if !pa.is_topological_action() {
            continue;
        }
        topological += 1;
        for id in ids.iter().chain(["iota-embedding"].iter()) {
            if !report(&reports, id).is_verified() {
                failures.push(id.to_string());
            }
        }
    }
    let both_directions = embedding_cases.get(&(true, true)).is_some() && embedding_cases.get(&(false, false)).is_some();
    let mismatched: usize = embedding_cases.iter().filter(|((c, e), _)| c != e).map(|(_, n)| n).sum();
    verdict(
        failures.is_empty() && both_directions && mismatched == 0,
        format!(
            "{topological} topological instances, {} failures; open-domain (continuous, embedding) counts {:?}",
            failures.len(),
            embedding_cases
        ),
    )
}

/// Classes of `(g, x)` pairs by union-find on the defining relation.
fn class_oracle(pa: &PartialAction) -> Vec<usize> {
    let (g, n) = (pa.group(), pa.space().len());
    let total = g.order() * n;
    let mut label: Vec<usize> = (0..total).collect();
    loop {
        let mut changed = false;
        for a in 0..g.order() {
            for x in 0..n {
                for b in 0..g.order() {
                    if let Some(y) = pa.apply(g.mul(g.inv(b), a), x) {
                        let (p, q) = (a * n + x, b * n + y);
                        let m = label[p].min(label[q]);
                        if label[p] != m || label[q] != m {
                            label[p] = m;
                            label[q] = m;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

fn swap_golden() -> Verdict {
    let pa = fixtures::swap();
    let env = globalize(&pa).unwrap();
    let oracle = class_oracle(&pa);
    let reps: BTreeSet<usize> = oracle.iter().copied().collect();
    let n = 3;
    // μ_g([h, x]) = [gh, x] on oracle labels
    let mu: BTreeMap<usize, usize> = reps.iter().map(|&r| (r, oracle[((1 + r / n) % 2) * n + r % n])).collect();
    let fixed = mu.iter().filter(|(a, b)| a == b).count();
    let involution = mu.iter().all(|(a, b)| mu[b] == *a);
    let lib_mu: Vec<usize> = (0..env.len()).map(|c| env.action().act(1, c)).collect();
    let oracle_mu: Vec<usize> = reps.iter().map(|r| reps.iter().position(|s| *s == mu[r]).unwrap()).collect();

    let l = lift_pa(&pa, Kind::H1).unwrap();
    let h = &l.hyper;
    let ix = |labels: &[&str]| h.index_of_labels(labels).unwrap();
    let lift_ok = l.action.apply(1, ix(&["a"])) == Some(ix(&["b"]))
        && l.action.apply(1, ix(&["b"])) == Some(ix(&["a"]))
        && l.action.apply(1, ix(&["a", "b"])) == Some(ix(&["a", "b"]));
    let pass = env.len() == 4 && reps.len() == 4 && fixed == 0 && involution && lib_mu == oracle_mu && lift_ok;
    verdict(pass, format!("{} classes, mu_g = {lib_mu:?}, lift swaps {{a}},{{b}} and fixes {{a,b}}: {lift_ok}", env.len()))
}

fn vietoris_oracle() -> Verdict {
    let mut spaces: Vec<FinSpace> = family(1000, Limits::new(4, 5)).iter().map(|pa| pa.space().clone()).collect();
    spaces.retain(|s| s.len() <= 5);
    let mut mismatches = 0;
    for s in &spaces {
        for kind in [Kind::H1, Kind::H2, Kind::H3] {
            let fast = build_hyperspace(s, kind).unwrap();
            if fast.space() != &vietoris_subbasis_space(s, kind).unwrap() {
                mismatches += 1;
            }
        }
    }
    let h = build_hyperspace(&FinSpace::sierpinski(), Kind::H1).unwrap();
    let opens = h.space().open_sets(64).unwrap();
    let chain = opens.len() == 4 && opens.windows(2).all(|w| w[0].is_subset(&w[1]));
    verdict(
        mismatches == 0 && chain,
        format!("{} spaces x 3 kinds, {mismatches} mismatches; Sierpinski H1 opens = {} (chain: {chain})", spaces.len(), opens.len()),
    )
}

fn lift_transfer() -> Verdict {
    let mut instances: Vec<(PartialAction, Kind)> = fixtures::all()
        .into_iter()
        .map(|(name, pa)| (pa, if name == "kh12" { Kind::H2 } else { Kind::H1 }))
        .collect();
    for seed in 0..200 {
        instances.push((random_pa(seed, Limits::new(4, 5)).unwrap(), Kind::H1));
    }
    let mut bad = 0;
    for (pa, kind) in &instances {
        if !check_lift_transfer(pa, *kind).unwrap().is_verified() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("{} instances, {bad} failures", instances.len()))
}

fn enveloping_space_checkers() -> Verdict {
    let ids = ["prop3.5", "lemma-l1", "lemma-l2", "relation-closed", "thm-equivh", "prop-fin", "prop-fin-converse", "thm-regu"];
    let mut config = FuzzConfig::new(200, 4, 5);
    config.monad_samples = 0;
    config.morphisms = false;
    let summary = fuzz(&config);
    let mut tallies: BTreeMap<&str, (u64, u64, u64)> = ids
        .iter()
        .map(|id| {
            let t = summary.tallies.get(*id).cloned().unwrap_or_default();
            (*id, (t.verified, t.hypothesis_failed, t.counterexample))
        })
        .collect();
    let opts = Options::default();
    for t in THEOREMS.iter().filter(|t| t.id != "monad" && t.id != "prop2.3") {
        for r in t.run(&fixtures::swap(), &opts).unwrap() {
            let e = tallies.entry(Box::leak(r.check_id.clone().into_boxed_str())).or_default();
            match r.status {
                Status::Verified => e.0 += 1,
                Status::HypothesisFailed => e.1 += 1,
                Status::Counterexample => e.2 += 1,
            }
        }
    }
    let counterexamples: u64 = tallies.values().map(|t| t.2).sum();
    let all_exercised = tallies.values().all(|t| t.0 > 0);
    verdict(
        counterexamples == 0 && all_exercised,
        format!("{counterexamples} counterexamples; (verified, hypothesis-failed) {:?}",
            tallies.iter().map(|(k, t)| (*k, t.0, t.1)).collect::<Vec<_>>()),
    )
}

fn monad_laws() -> Verdict {
    let start = Instant::now();
    let mut exhaustive: Vec<PartialAction> = vec![fixtures::swap2_global(), hyperact::category::point_action(&hyperact::FinGroup::cyclic(3).unwrap())];
    let mut sampled: Vec<PartialAction> = vec![fixtures::swap(), fixtures::trivial(), fixtures::sierpinski()];
    for seed in 0..40 {
        let pa = random_pa(seed, Limits::new(4, 4)).unwrap();
        match pa.space().len() {
            0..=2 => exhaustive.push(pa),
            _ if sampled.len() < 12 => sampled.push(pa),
            _ => {}
        }
    }
    let (mut violations, mut assoc_exhaustive, mut assoc_sampled) = (0, 0, 0);
    let mut min_samples = u64::MAX;
    for pa in &exhaustive {
        let (m, _) = check_monad_laws(pa, Sampling::Exhaustive).unwrap();
        violations += m.violations();
        assoc_exhaustive += m.laws.iter().find(|l| l.law == "associativity").unwrap().checked;
    }
    for (i, pa) in sampled.iter().enumerate() {
        let (m, _) = check_monad_laws(pa, Sampling::Sampled { samples: 10_000, seed: i as u64 }).unwrap();
        violations += m.violations();
        let n = m.laws.iter().find(|l| l.law == "associativity").unwrap().checked;
        assoc_sampled += n;
        min_samples = min_samples.min(n);
    }
    let secs = start.elapsed().as_secs_f64();
    let four = sampled.iter().filter(|pa| pa.space().len() == 4).count();
    verdict(
        violations == 0 && min_samples >= 10_000 && four > 0 && secs < 60.0,
        format!(
            "{} exhaustive instances ({assoc_exhaustive} associativity points), {} sampled ({four} with |X| = 4, {assoc_sampled} points), {violations} violations, {secs:.1} s",
            exhaustive.len(),
            sampled.len()
        ),
    )
}

fn functor_naturality() -> Verdict {
    let swap = fixtures::swap();
    let exchange = GMap::new(swap.clone(), swap.clone(), vec![1, 0, 2]).unwrap();
    let mut pairs: Vec<(GMap, GMap)> = fixtures::all()
        .into_iter()
        .filter(|(_, pa)| pa.space().len() <= 4)
        .map(|(_, pa)| (GMap::identity(&pa), GMap::identity(&pa)))
        .collect();
    pairs.push((GMap::identity(&swap), exchange.clone()));
    pairs.push((exchange.clone(), exchange));
    let fixture_pairs = pairs.len();
    for seed in 0..100 {
        pairs.push(random_gmap_pair(seed, Limits::new(4, 4)).unwrap());
    }
    let mut bad = 0;
    for (f, g) in &pairs {
        let mut reports = vec![check_functor_laws(f, g, Kind::H1).unwrap()];
        for m in [f, g] {
            reports.push(check_naturality(m, Transformation::Eta).unwrap());
            reports.push(check_naturality(m, Transformation::Mu).unwrap());
        }
        bad += reports.iter().filter(|r| !r.is_verified()).count();
    }
    let kh12 = fixtures::kh12();
    let kh_ok = check_functor_laws(&GMap::identity(&kh12), &GMap::identity(&kh12), Kind::H2).unwrap().is_verified();
    verdict(
        bad == 0 && kh_ok,
        format!("{fixture_pairs} fixture pairs + 100 random pairs (+ kh12 on H2), {bad} failures"),
    )
}

fn determinism() -> Verdict {
    let fx = |n: &str| format!("{}/../../fixtures/{n}.json", env!("CARGO_MANIFEST_DIR"));
    let dir = std::env::temp_dir().join(format!("hyperact-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g.dot").to_string_lossy().into_owned();
    let commands: Vec<Vec<String>> = vec![
        vec!["validate".into(), fx("kh12")],
        vec!["globalize".into(), fx("swap"), "--dot".into(), dot.clone()],
        vec!["lift".into(), fx("kh12")],
        vec!["check".into(), fx("swap")],
        vec!["check".into(), fx("sierpinski"), "monad".into(), "--seed".into(), "7".into()],
        vec!["monad".into(), fx("trivial"), "--samples".into(), "2000".into(), "--seed".into(), "3".into()],
        vec!["fuzz".into(), "--seeds".into(), "25".into(), "--first-seed".into(), "100".into()],
        vec!["list".into()],
    ];
    let mut differing = Vec::new();
    for args in &commands {
        let runs: Vec<(Vec<u8>, Option<Vec<u8>>)> = (0..2)
            .map(|_| {
                let out = Command::new(env!("CARGO_BIN_EXE_hyperact")).args(args).output().unwrap();
                let dot_bytes = args.contains(&dot).then(|| std::fs::read(&dot).unwrap());
                (out.stdout, dot_bytes)
            })
            .collect();
        if runs[0] != runs[1] || runs[0].0.is_empty() {
            differing.push(args[0].clone());
        }
    }
    let lib_a = fuzz(&FuzzConfig::new(30, 4, 4));
    let lib_b = fuzz(&FuzzConfig::new(30, 4, 4));
    let inst = random_instance(42, Limits::new(8, 8)).unwrap().action == random_instance(42, Limits::new(8, 8)).unwrap().action;
    verdict(
        differing.is_empty() && lib_a == lib_b && inst,
        format!("{} commands run twice, differing: {differing:?}; library fuzz and generator repeatable: {}", commands.len(), lib_a == lib_b && inst),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("axiom equivalence", axiom_equivalence),
        ("globalization suite", globalization_suite),
        ("swap golden values", swap_golden),
        ("Vietoris oracle", vietoris_oracle),
        ("lift transfer", lift_transfer),
        ("enveloping-space checkers", enveloping_space_checkers),
        ("monad laws", monad_laws),
        ("functor and naturality", functor_naturality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!("criterion {} {name}: {} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
