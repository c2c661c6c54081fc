//! Property tests with brute-force oracles that avoid the library's own
//! shortcuts (minimal neighbourhoods, comparability graphs, subbasis closure).

use std::collections::BTreeSet;

use hyperact::actions::{random_instance, random_wild_pa, Limits};
use hyperact::envelope::{build_relation, globalize};
use hyperact::harness::{axiom_agreement, mutate};
use hyperact::hyperspace::{build_hyperspace, lift_homeo, singleton_map, Kind};
use hyperact::topology::{set_with, GenMode};
use hyperact::{FinGroup, FinSpace, Point, PointSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Mask = u32;

fn mask(s: &PointSet) -> Mask {
    s.ones().fold(0, |m, i| m | 1 << i)
}

fn unmask(n: usize, m: Mask) -> PointSet {
    set_with(n, (0..n).filter(|i| m >> i & 1 == 1))
}

fn space_from(n: usize, gens: &[Mask]) -> FinSpace {
    let points = (0..n).map(|i| Point::atom(format!("p{i}"))).collect();
    let sets: Vec<PointSet> = gens.iter().map(|&g| unmask(n, g)).collect();
    FinSpace::mk_space(points, &sets, GenMode::Subbasis).unwrap()
}

/// Open sets as the closure of `gens ∪ {∅, X}` under pairwise union and
/// intersection.
fn open_family_oracle(n: usize, gens: &[Mask]) -> BTreeSet<Mask> {
    let full: Mask = (1 << n) - 1;
    let mut fam: BTreeSet<Mask> = gens.iter().copied().collect();
    fam.insert(0);
    fam.insert(full);
    loop {
        let current: Vec<Mask> = fam.iter().copied().collect();
        let before = fam.len();
        for &a in &current {
            for &b in &current {
                fam.insert(a | b);
                fam.insert(a & b);
            }
        }
        if fam.len() == before {
            return fam;
        }
    }
}

fn arb_space(max_points: usize) -> impl Strategy<Value = (usize, Vec<Mask>)> {
    (1..=max_points).prop_flat_map(|n| {
        let full: Mask = (1 << n) - 1;
        (Just(n), prop::collection::vec(0..=full, 0..=n + 2))
    })
}

fn opens_of(s: &FinSpace) -> Vec<Mask> {
    s.open_sets(1 << 12).unwrap().iter().map(mask).collect()
}

fn closure_oracle(opens: &[Mask], full: Mask, s: Mask) -> Mask {
    let outside = opens.iter().filter(|&&u| u & s == 0).fold(0, |acc, &u| acc | u);
    full & !outside
}

fn interior_oracle(opens: &[Mask], s: Mask) -> Mask {
    opens.iter().filter(|&&u| u & !s == 0).fold(0, |acc, &u| acc | u)
}

/// Connected: no split into two nonempty pieces each relatively open.
fn connected_oracle(opens: &[Mask], s: Mask) -> bool {
    let rel: BTreeSet<Mask> = opens.iter().map(|&u| u & s).collect();
    !rel.iter().any(|&a| a != 0 && a != s && rel.contains(&(s & !a)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn open_family_matches_generator_closure((n, gens) in arb_space(8)) {
        let s = space_from(n, &gens);
        let fast: BTreeSet<Mask> = opens_of(&s).into_iter().collect();
        prop_assert_eq!(fast, open_family_oracle(n, &gens));
    }

    #[test]
    fn closure_and_interior_laws((n, gens) in arb_space(6)) {
        let s = space_from(n, &gens);
        let opens = opens_of(&s);
        let full: Mask = (1 << n) - 1;
        for m in 0..=full {
            let set = unmask(n, m);
            let cl = mask(&s.closure(&set).unwrap());
            let int = mask(&s.interior(&set).unwrap());
            prop_assert_eq!(cl, closure_oracle(&opens, full, m));
            prop_assert_eq!(int, interior_oracle(&opens, m));
            // extensive, idempotent, dual under complement
            prop_assert_eq!(cl & m, m);
            prop_assert_eq!(int & !m, 0);
            prop_assert_eq!(mask(&s.closure(&unmask(n, cl)).unwrap()), cl);
            prop_assert_eq!(mask(&s.interior(&unmask(n, int)).unwrap()), int);
            let dual = full & !mask(&s.interior(&unmask(n, full & !m)).unwrap());
            prop_assert_eq!(cl, dual);
            for sub in 0..=full {
                if sub & !m == 0 {
                    prop_assert_eq!(mask(&s.closure(&unmask(n, sub)).unwrap()) & !cl, 0);
                    prop_assert_eq!(mask(&s.interior(&unmask(n, sub)).unwrap()) & !int, 0);
                }
            }
        }
    }

    #[test]
    fn separation_flags_match_open_sets((n, gens) in arb_space(6)) {
        let s = space_from(n, &gens);
        let opens = opens_of(&s);
        let full: Mask = (1 << n) - 1;
        let sep = s.separation();
        let pairs = || (0..n).flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)));
        let t0 = pairs().all(|(p, q)| opens.iter().any(|u| (u >> p & 1) != (u >> q & 1)));
        let t1 = pairs().all(|(p, q)| opens.iter().any(|u| u >> p & 1 == 1 && u >> q & 1 == 0));
        let t2 = pairs().all(|(p, q)| {
            opens.iter().any(|u| opens.iter().any(|v| u >> p & 1 == 1 && v >> q & 1 == 1 && u & v == 0))
        });
        // regular: a point and a closed set missing it have disjoint neighbourhoods
        let regular = opens.iter().all(|&o| {
            let closed = full & !o;
            (0..n).filter(|&p| closed >> p & 1 == 0).all(|p| {
                opens.iter().any(|&u| {
                    u >> p & 1 == 1 && opens.iter().any(|&v| v & closed == closed && u & v == 0)
                })
            })
        });
        prop_assert_eq!(sep.t0, t0);
        prop_assert_eq!(sep.t1, t1);
        prop_assert_eq!(sep.hausdorff, t2);
        prop_assert_eq!(sep.regular, regular);
        prop_assert!(!t2 || t1);
        prop_assert!(!t1 || t0);
    }

    #[test]
    fn connectedness_matches_bipartitions((n, gens) in arb_space(6)) {
        let s = space_from(n, &gens);
        let opens = opens_of(&s);
        for m in 1..(1 << n) {
            prop_assert_eq!(s.is_connected(&unmask(n, m)).unwrap(), connected_oracle(&opens, m));
        }
    }

    #[test]
    fn trivial_quotient_and_product((n, gens) in arb_space(6)) {
        let s = space_from(n, &gens);
        let classes: Vec<PointSet> = (0..n).map(|p| set_with(n, [p])).collect();
        let q = s.quotient(&classes).unwrap();
        let one = FinSpace::discrete(&["*"]).unwrap();
        let prod = FinSpace::product(&one, &s);
        for p in 0..n {
            prop_assert_eq!(q.nbhd(p), s.nbhd(p));
            prop_assert_eq!(prod.nbhd(p), s.nbhd(p));
        }
    }

    #[test]
    fn random_restrictions_are_topological(seed in any::<u64>()) {
        let inst = random_instance(seed, Limits::new(6, 6)).unwrap();
        let pa = &inst.action;
        prop_assert!(pa.verify().is_verified());
        prop_assert!(pa.is_topological_action());
        prop_assert!(pa.is_continuous_action());
        prop_assert!(pa.domain_topology().routes_agree);
        prop_assert!(pa.domain_topology().open);
    }

    #[test]
    fn axiom_routes_agree_on_mutants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pa in [random_instance(seed, Limits::new(8, 6)).unwrap().action, random_wild_pa(seed, Limits::new(8, 6)).unwrap()] {
            prop_assert!(axiom_agreement(&pa).is_verified());
            prop_assert!(pa.is_valid());
            if let Some(m) = mutate(&mut rng, &pa) {
                prop_assert!(axiom_agreement(&m).is_verified());
            }
            prop_assert_eq!(pa.continuity_via_product(), pa.continuity_per_element());
            // topological implies continuous; the converse fails (see unit tests)
            prop_assert!(!pa.is_topological_action() || pa.is_continuous_action());
        }
    }

    #[test]
    fn classes_match_union_find(seed in any::<u64>()) {
        let pa = random_wild_pa(seed, Limits::new(6, 6)).unwrap();
        let (ng, n) = (pa.group().order(), pa.space().len());
        let g = pa.group();
        // union-find joining (a, x) with (b, θ_{b⁻¹a}(x)) whenever defined
        let mut parent: Vec<usize> = (0..ng * n).collect();
        fn find(parent: &mut [usize], a: usize) -> usize {
            let mut a = a;
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for a in 0..ng {
            for x in 0..n {
                for b in 0..ng {
                    let k = g.mul(g.inv(b), a);
                    if let Some(y) = pa.apply(k, x) {
                        let (ra, rb) = (find(&mut parent, a * n + x), find(&mut parent, b * n + y));
                        parent[ra] = rb;
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = (0..ng * n).map(|p| find(&mut parent, p)).collect();
        let (_, report) = build_relation(&pa).unwrap();
        prop_assert!(report.is_verified());
        prop_assert_eq!(globalize(&pa).unwrap().len(), roots.len());
    }

    #[test]
    fn vietoris_neighbourhoods_match_basic_sets((n, gens) in arb_space(4)) {
        let s = space_from(n, &gens);
        let opens = opens_of(&s);
        let h = build_hyperspace(&s, Kind::H1).unwrap();
        let members: Vec<Mask> = h.members().iter().map(mask).collect();
        // basic sets ⟨U_1, ..., U_k⟩ for every nonempty family of opens
        let mut basics: Vec<Mask> = Vec::new();
        for fam in 1u32..(1 << opens.len()) {
            let chosen: Vec<Mask> = (0..opens.len()).filter(|i| fam >> i & 1 == 1).map(|i| opens[i]).collect();
            let cover = chosen.iter().fold(0, |a, &u| a | u);
            let basic = members
                .iter()
                .enumerate()
                .filter(|(_, &b)| b & !cover == 0 && chosen.iter().all(|&u| u & b != 0))
                .fold(0u32, |acc, (i, _)| acc | 1 << i);
            basics.push(basic);
        }
        let all: Mask = (1u32 << members.len()) - 1;
        for i in 0..members.len() {
            let least = basics.iter().filter(|&&b| b >> i & 1 == 1).fold(all, |acc, &b| acc & b);
            prop_assert_eq!(mask(h.space().nbhd(i)), least);
        }
    }

    #[test]
    fn singletons_lie_in_every_kind((n, gens) in arb_space(6)) {
        let s = space_from(n, &gens);
        let h1 = build_hyperspace(&s, Kind::H1).unwrap();
        let h2 = build_hyperspace(&s, Kind::H2).unwrap();
        let h3 = build_hyperspace(&s, Kind::H3).unwrap();
        for x in 0..n {
            let one = set_with(n, [x]);
            prop_assert!(h2.index_of_set(&one).is_some());
            prop_assert!(h3.index_of_set(&one).is_some());
        }
        prop_assert!(singleton_map(&h1).is_embedding().unwrap());
    }

    #[test]
    fn lift_is_functorial(seed in any::<u64>()) {
        let inst = random_instance(seed, Limits::new(6, 5)).unwrap();
        let ga = &inst.ambient;
        let sp = ga.space();
        let h = build_hyperspace(sp, Kind::H1).unwrap();
        let full = sp.full_set();
        let g = ga.group();
        let lift = |k: usize| {
            let f: Vec<Option<usize>> = (0..sp.len()).map(|x| Some(ga.act(k, x))).collect();
            lift_homeo(&h, &full, &full, &f).unwrap()
        };
        for a in 0..g.order() {
            for b in 0..g.order() {
                let (la, lb, lab) = (lift(a), lift(b), lift(g.mul(a, b)));
                for p in 0..h.len() {
                    prop_assert_eq!(lab[p], la[lb[p].unwrap()]);
                }
            }
        }
    }
}

#[test]
fn groups_are_latin_with_inverse_laws() {
    let mut groups = hyperact::actions::group_catalog(8);
    groups.push(FinGroup::sym(4).unwrap());
    for g in groups {
        let n = g.order();
        for a in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|b| g.mul(a, b)).collect();
            let col: BTreeSet<usize> = (0..n).map(|b| g.mul(b, a)).collect();
            assert_eq!(row.len(), n, "{}", g.name(a));
            assert_eq!(col.len(), n);
            assert_eq!(g.inv(g.inv(a)), a);
            for b in 0..n {
                assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
            }
        }
    }
}
