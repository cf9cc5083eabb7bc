use fairdiv::algorithms::{
    build_cut_and_choose_graph, cut_and_choose_graph_procedure, lemma_pair_demand_mu, match_and_freeze,
    reversed_round_robin, reversed_round_robin_traced, sufficient_no_envy,
};
use fairdiv::document::{instance_from_json, instance_to_json};
use fairdiv::instances::{
    gen_mnw_counterexample, gen_nonexistence_stars, gen_pmms_not_efx_example, gen_separation3,
    gen_table1_example, random_allocation, sample_random, stars_parameters, BinaryMode, GeneratorKind,
    GeneratorSpec,
};
use fairdiv::matching::{
    brute_force_matching_oracle, connected_components, max_cardinality_max_weight_matching, Edge, RoundGraph,
};
use fairdiv::oracles::{
    check_efx, check_efx_positive, check_mms, check_mms_feasible, check_pmms, exists_fair_allocation, mu,
    nash_welfare_maximizers, CompatGraph, CompatNode, Witness,
};
use fairdiv::{
    frac, int, Allocation, AllocationViolation, Budget, Bundle, Error, FairnessNotion, Instance, Valuation,
    Value,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: Budget = Budget::DEFAULT;

fn additive(values: &[i64]) -> Valuation {
    Valuation::additive(values.iter().map(|&x| int(x)).collect())
}

fn pair_demand(values: &[i64]) -> Valuation {
    Valuation::pair_demand(values.iter().map(|&x| int(x)).collect())
}

fn items(list: &[usize]) -> Bundle {
    Bundle::from_items(list.iter().copied())
}

#[test]
fn value_examples() {
    assert_eq!(pair_demand(&[1, 2, 3, 4]).value(Bundle::full(4)).unwrap(), int(7));
    let bv = Valuation::bivalued(int(3), int(1), items(&[0]), 3);
    assert_eq!(bv.value(items(&[0, 1, 2])).unwrap(), int(5));
    for v in [additive(&[1, 2]), pair_demand(&[1, 2]), Valuation::bivalued(int(2), int(1), items(&[0]), 2)] {
        assert_eq!(v.value(Bundle::EMPTY).unwrap(), int(0));
    }
    assert!(matches!(additive(&[1, 2]).value(items(&[2])), Err(Error::InvalidBundle { .. })));
}

#[test]
fn allocation_validation_examples() {
    let inst = Instance::new(2, vec![additive(&[1, 1]); 2]).unwrap();
    assert_eq!(Allocation::from_item_lists(&[&[0], &[1]]).validate(&inst), Ok(()));
    assert_eq!(
        Allocation::from_item_lists(&[&[0], &[0, 1]]).validate(&inst),
        Err(AllocationViolation::Overlap { item: 0, first: 0, second: 1 })
    );
    assert_eq!(
        Allocation::from_item_lists(&[&[0], &[]]).validate(&inst),
        Err(AllocationViolation::Uncovered { item: 1 })
    );
}

#[test]
fn representations_agree_on_small_item_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let m = rng.gen_range(0..=4);
        let values: Vec<i64> = (0..m).map(|_| rng.gen_range(0..6)).collect();
        let add = additive(&values);
        let table = Valuation::table_from_fn(m, |s| s.items().map(|g| int(values[g])).sum());
        let pd = pair_demand(&values);
        let pd_table = Valuation::table_from_fn(m, |s| {
            let mut vs: Vec<i64> = s.items().map(|g| values[g]).collect();
            vs.sort_unstable_by(|a, b| b.cmp(a));
            int(vs.iter().take(2).sum())
        });
        let high: Bundle = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        let bv = Valuation::bivalued(int(5), int(2), high, m);
        let bv_add = Valuation::additive((0..m).map(|g| int(if high.contains(g) { 5 } else { 2 })).collect());
        let binary = Valuation::binary_from_fn(m, |s| s.len() % 2 == 1);
        let binary_table = Valuation::table_from_fn(m, |s| int((s.len() % 2) as i64));
        for s in Bundle::full(m).subsets() {
            assert_eq!(add.eval(s), table.eval(s));
            assert_eq!(pd.eval(s), pd_table.eval(s));
            assert_eq!(bv.eval(s), bv_add.eval(s));
            assert_eq!(binary.eval(s), binary_table.eval(s));
        }
        assert_eq!(add.materialize().unwrap(), table.materialize().unwrap());
    }
}

#[test]
fn share_examples() {
    assert_eq!(mu(&additive(&[1, 2, 3, 4]), Bundle::full(4), 2, B).unwrap().mu, int(5));
    let empty = mu(&additive(&[1, 2]), Bundle::EMPTY, 3, B).unwrap();
    assert_eq!(empty.mu, int(0));
    assert_eq!(empty.witness, vec![Bundle::EMPTY; 3]);

    let stars = gen_nonexistence_stars(3).unwrap();
    for v in stars.valuations() {
        assert_eq!(mu(v, stars.items(), 3, B).unwrap().mu, int(2));
    }
    let sep = gen_separation3();
    assert_eq!(mu(sep.valuation(2), sep.items(), 2, B).unwrap().mu, int(310));
}

#[test]
fn share_respects_the_budget() {
    let v = additive(&[1; 10]);
    assert!(matches!(mu(&v, Bundle::full(10), 3, Budget(100)), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn efx_examples() {
    let ex = gen_pmms_not_efx_example();
    let x = Allocation::from_item_lists(&[&[0], &[1, 2]]);
    let report = check_efx(&ex, &x);
    assert!(!report.holds);
    assert_eq!(report.violations[0].envier, 0);
    assert_eq!(report.violations[0].witness, Witness::Item(1));

    let single = Instance::new(3, vec![additive(&[1, 2, 3])]).unwrap();
    assert!(check_efx(&single, &Allocation::from_item_lists(&[&[0, 1, 2]])).holds);

    let mnw = gen_mnw_counterexample();
    let y = Allocation::from_item_lists(&[&[0], &[1, 2, 3]]);
    assert!(check_efx(&mnw, &y).violated_by(0));
}

#[test]
fn efx_positive_examples() {
    let ex = gen_pmms_not_efx_example();
    let x = Allocation::from_item_lists(&[&[0], &[1, 2]]);
    assert!(check_efx_positive(&ex, &x).unwrap().holds);

    let positive = Instance::new(3, vec![additive(&[1, 2, 3]), additive(&[3, 1, 1])]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let y = random_allocation(&mut rng, 2, 3);
        let a = check_efx(&positive, &y);
        let b = check_efx_positive(&positive, &y).unwrap();
        assert_eq!((a.holds, a.violations), (b.holds, b.violations));
    }

    let sym = Instance::new(2, vec![additive(&[1, 1]); 2]).unwrap();
    assert!(check_efx_positive(&sym, &Allocation::from_item_lists(&[&[0], &[1]])).unwrap().holds);

    let binary = Instance::new(2, vec![Valuation::binary_from_fn(2, |s| s.len() == 2); 2]).unwrap();
    let z = Allocation::from_item_lists(&[&[0], &[1]]);
    assert!(matches!(check_efx_positive(&binary, &z), Err(Error::WrongClass { .. })));
}

#[test]
fn pmms_examples() {
    let ex = gen_pmms_not_efx_example();
    assert!(check_pmms(&ex, &Allocation::from_item_lists(&[&[0], &[1, 2]]), B).unwrap().holds);

    let two = Instance::new(2, vec![additive(&[1, 1]); 2]).unwrap();
    let report = check_pmms(&two, &Allocation::from_item_lists(&[&[0, 1], &[]]), B).unwrap();
    assert!(!report.holds);
    assert!(report.violated_by(1) && !report.violated_by(0));
}

#[test]
fn mms_examples() {
    for n in 3..=4 {
        let inst = gen_nonexistence_stars(n).unwrap();
        let x = stars_parameters(n).unwrap().mms_allocation();
        assert!(check_mms(&inst, &x, B).unwrap().holds, "n={n}");
    }
    let one = Instance::new(3, vec![additive(&[1, 0, 2])]).unwrap();
    assert!(check_mms(&one, &Allocation::from_item_lists(&[&[0, 1, 2]]), B).unwrap().holds);
    let two = Instance::new(2, vec![additive(&[1, 1]); 2]).unwrap();
    assert!(check_mms(&two, &Allocation::from_item_lists(&[&[0], &[1]]), B).unwrap().holds);
}

#[test]
fn feasibility_examples() {
    assert!(check_mms_feasible(&additive(&[5, 1, 2, 2, 7]), B).unwrap());
    let two_pairs = Valuation::binary_from_fn(4, |s| items(&[0, 1]).is_subset(s) || items(&[2, 3]).is_subset(s));
    assert!(!check_mms_feasible(&two_pairs, B).unwrap());
    assert!(check_mms_feasible(&Valuation::binary_from_fn(4, |_| false), B).unwrap());
}

#[test]
fn small_classes_are_mms_feasible() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let values: Vec<i64> = (0..m).map(|_| rng.gen_range(0..8)).collect();
        let high: Bundle = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        assert!(check_mms_feasible(&additive(&values), B).unwrap());
        assert!(check_mms_feasible(&Valuation::bivalued(int(3), int(1), high, m), B).unwrap());
        assert!(check_mms_feasible(&pair_demand(&values), B).unwrap());
    }
}

#[test]
fn nash_examples() {
    let mnw = nash_welfare_maximizers(&gen_mnw_counterexample(), B).unwrap();
    assert_eq!(mnw.max_nw, int(25));
    assert_eq!(
        mnw.argmax,
        vec![
            Allocation::from_item_lists(&[&[0], &[1, 2, 3]]),
            Allocation::from_item_lists(&[&[1], &[0, 2, 3]]),
        ]
    );
    let one = Instance::new(2, vec![additive(&[2, 3])]).unwrap();
    let out = nash_welfare_maximizers(&one, B).unwrap();
    assert_eq!((out.max_nw, out.argmax.len()), (int(5), 1));
    let two = Instance::new(2, vec![additive(&[1, 1]); 2]).unwrap();
    let out = nash_welfare_maximizers(&two, B).unwrap();
    assert_eq!((out.max_nw, out.argmax.len(), out.scanned), (int(1), 2, 4));
}

#[test]
fn existence_examples() {
    let sep = gen_separation3();
    let pmms = exists_fair_allocation(&sep, FairnessNotion::Pmms, B).unwrap();
    assert_eq!((pmms.scanned, pmms.found), (729, None));
    let mms = exists_fair_allocation(&sep, FairnessNotion::Mms, B).unwrap();
    assert!(check_mms(&sep, &mms.found.unwrap(), B).unwrap().holds);
    let stars = gen_nonexistence_stars(2).unwrap();
    assert_eq!(exists_fair_allocation(&stars, FairnessNotion::Pmms, B).unwrap().found, None);
    assert!(matches!(
        exists_fair_allocation(&sep, FairnessNotion::Pmms, Budget(100)),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn compat_graph_examples() {
    let sep = gen_separation3();
    assert!(CompatGraph::build(&sep, B).unwrap().find_triangle().is_none());

    let two = Instance::new(4, vec![additive(&[1, 1, 1, 1]); 2]).unwrap();
    let g = CompatGraph::build(&two, B).unwrap();
    assert!(g.find_triangle().is_none());
    assert!(g.has_edge(
        CompatNode { agent: 0, bundle: items(&[0, 1]) },
        CompatNode { agent: 1, bundle: items(&[2, 3]) },
    ));
}

#[test]
fn stars_instances_match_their_layout() {
    let two = stars_parameters(2).unwrap();
    assert_eq!((two.k, two.m), (2, 4));
    let three = stars_parameters(3).unwrap();
    assert_eq!((three.k, three.m), (2, 5));
    let inst = gen_nonexistence_stars(3).unwrap();
    for v in inst.valuations() {
        assert_eq!(v.eval(items(&[0])), int(2));
        assert!(v.is_monotone().unwrap());
    }
}

#[test]
fn named_instance_values() {
    let sep = gen_separation3();
    assert_eq!(sep.value(0, items(&[2, 4])), int(6));
    assert_eq!(sep.value(0, items(&[0, 1])), int(6));
    assert_eq!(sep.value(1, items(&[0, 1])), int(3));
    assert_eq!(sep.value(0, items(&[4, 5])), int(3));
    assert_eq!(sep.value(1, items(&[4, 5])), int(4));
    let mnw = gen_mnw_counterexample();
    assert_eq!(mnw.value(0, items(&[0])), int(5));
    assert_eq!(mnw.value(1, items(&[1, 2, 3])), int(5));
    assert!(mnw.valuations().iter().all(Valuation::is_factored));
    let t1 = gen_table1_example();
    assert_eq!((t1.n(), t1.m()), (4, 18));
    assert_eq!(t1.value(0, items(&[0])), frac(5, 2));
    assert_eq!(t1.value(2, items(&[0])), int(1));
}

#[test]
fn documents_round_trip() {
    let mut instances = vec![
        gen_separation3(),
        gen_mnw_counterexample(),
        gen_pmms_not_efx_example(),
        gen_table1_example(),
        gen_nonexistence_stars(4).unwrap(),
    ];
    let kinds = [
        GeneratorKind::RandomBivalued { n: 3, m: 7, allow_zero_b: true },
        GeneratorKind::RandomFactoredBivalued { n: 2, m: 5 },
        GeneratorKind::RandomPairDemand { n: 3, m: 6 },
        GeneratorKind::RandomBinaryMmsFeasible { n: 2, m: 4, mode: BinaryMode::default() },
        GeneratorKind::RandomBinaryAdditive { n: 2, m: 5 },
        GeneratorKind::RandomAdditive { n: 2, m: 5 },
    ];
    for (seed, kind) in kinds.into_iter().enumerate() {
        instances.push(sample_random(&GeneratorSpec::new(kind, seed as u64)).unwrap().instance);
    }
    for inst in instances {
        let text = instance_to_json(&inst);
        let back = instance_from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(instance_to_json(&back), text);
        assert!(!text.contains('.'), "no floating point in {text}");
    }
}

#[test]
fn generators_are_seed_deterministic() {
    let kind = GeneratorKind::RandomBinaryMmsFeasible { n: 3, m: 5, mode: BinaryMode::default() };
    let a = sample_random(&GeneratorSpec::new(kind.clone(), 4)).unwrap();
    let b = sample_random(&GeneratorSpec::new(kind, 4)).unwrap();
    assert_eq!((a.instance, a.rejections), (b.instance, b.rejections));
}

#[test]
fn binary_additive_generator_is_additive() {
    for seed in 0..20 {
        let kind = GeneratorKind::RandomBinaryAdditive { n: 2, m: 6 };
        let inst = sample_random(&GeneratorSpec::new(kind, seed)).unwrap().instance;
        for v in inst.valuations() {
            for s in inst.items().subsets() {
                let sum: Value = s.items().map(|g| v.singleton(g)).sum();
                assert_eq!(v.eval(s), sum);
            }
            assert!((0..6).all(|g| v.singleton(g) == int(0) || v.singleton(g) == int(1)));
        }
    }
}

fn graph(edges: &[(usize, usize, Value)]) -> RoundGraph {
    let mut agents: Vec<usize> = edges.iter().map(|e| e.0).collect();
    let mut its: Vec<usize> = edges.iter().map(|e| e.1).collect();
    agents.sort_unstable();
    agents.dedup();
    its.sort_unstable();
    its.dedup();
    RoundGraph {
        agents,
        items: its,
        edges: edges.iter().map(|&(agent, item, weight)| Edge { agent, item, weight }).collect(),
    }
}

#[test]
fn matching_examples() {
    let g = graph(&[(1, 0, int(3)), (2, 0, int(5))]);
    assert_eq!(max_cardinality_max_weight_matching(&g).pairs, vec![(2, 0)]);
    let g = graph(&[(1, 1, int(1)), (1, 2, int(1)), (2, 1, int(1))]);
    assert_eq!(max_cardinality_max_weight_matching(&g).pairs, vec![(1, 2), (2, 1)]);
    assert_eq!(brute_force_matching_oracle(&graph(&[])).unwrap().pairs, vec![]);
    let single = graph(&[(0, 4, int(2))]);
    assert_eq!(brute_force_matching_oracle(&single).unwrap().pairs, vec![(0, 4)]);

    let (_, trace) = match_and_freeze(&gen_table1_example()).unwrap();
    assert_eq!(trace.rounds[0].matching.pairs, vec![(1, 0), (3, 1)]);
}

#[test]
fn component_examples() {
    let (_, trace) = match_and_freeze(&gen_table1_example()).unwrap();
    let comps = connected_components(&trace.rounds[0].graph);
    let with_agents: Vec<(Vec<usize>, Vec<usize>)> = comps
        .iter()
        .filter(|c| !c.agents.is_empty())
        .map(|c| (c.agents.clone(), c.items.clone()))
        .collect();
    assert_eq!(with_agents, vec![(vec![0, 1], vec![0]), (vec![2, 3], vec![1])]);

    let empty = RoundGraph { agents: vec![0, 1], items: vec![0], edges: vec![] };
    assert_eq!(connected_components(&empty).len(), 3);
    let path = graph(&[(0, 0, int(1)), (1, 0, int(1))]);
    assert_eq!(connected_components(&path).len(), 1);
}

#[test]
fn match_and_freeze_single_agent() {
    let inst = Instance::new(5, vec![Valuation::bivalued(int(2), int(1), items(&[3]), 5)]).unwrap();
    let (x, trace) = match_and_freeze(&inst).unwrap();
    assert_eq!(x.bundle(0), Bundle::full(5));
    assert_eq!(trace.rounds.len(), 5);
}

#[test]
fn certificate_examples() {
    let v = Valuation::bivalued(frac(13, 2), int(1), Bundle::EMPTY, 7);
    assert!(sufficient_no_envy(&v, items(&[0, 1, 2, 3, 4, 5]), items(&[6])).unwrap().efx_safe);

    let v = Valuation::bivalued(int(4), int(1), items(&[3]), 7);
    let (own, other) = (items(&[0, 1, 2]), items(&[3]));
    assert_eq!((v.eval(own), v.eval(other)), (int(3), int(4)));
    let cert = sufficient_no_envy(&v, own, other).unwrap();
    assert!(cert.pmms_safe);
    let rest = items(&[4, 5, 6]);
    let inst = Instance::new(7, vec![v.clone(), v.clone(), v.clone()]).unwrap();
    let x = Allocation::new(vec![own, other, rest]);
    let report = check_pmms(&inst, &x, B).unwrap();
    assert!(!report.violations.iter().any(|viol| viol.envier == 0 && viol.envied == Some(1)));

    let zero = sufficient_no_envy(&Valuation::bivalued(int(5), int(1), Bundle::full(1), 6), Bundle::EMPTY, items(&[0])).unwrap();
    assert!(!zero.efx_safe);
}

fn random_binary(seed: u64, n: usize, m: usize) -> Instance {
    let mode = match seed % 3 {
        0 => BinaryMode { monotone: true, normalized: true },
        1 => BinaryMode { monotone: false, normalized: true },
        _ => BinaryMode::default(),
    };
    let kind = GeneratorKind::RandomBinaryMmsFeasible { n, m, mode };
    sample_random(&GeneratorSpec::new(kind, seed)).unwrap().instance
}

#[test]
fn pointer_graph_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..150 {
        let (n, m) = (rng.gen_range(2..=4), rng.gen_range(1..=7));
        let inst = random_binary(seed, n, m);
        let x = random_allocation(&mut rng, n, m);
        for s in 0..n {
            let pi = build_cut_and_choose_graph(&inst, &x, s).unwrap();
            for (i, &j) in pi.iter().enumerate() {
                let v = inst.valuation(i);
                if j == s {
                    let all_zero = (0..n).all(|k| mu(v, x.bundle(s) | x.bundle(k), 2, B).unwrap().mu == int(0));
                    assert!(v.eval(x.bundle(s)) == int(1) || all_zero);
                } else {
                    assert_eq!(v.eval(x.bundle(j)), int(1), "seed {seed}");
                    assert_eq!(mu(v, x.bundle(s) | x.bundle(j), 2, B).unwrap().mu, int(1));
                }
            }
        }
    }
}

#[test]
fn pointer_graph_degenerate_cases() {
    let ones = Instance::with_flags(3, vec![Valuation::binary_from_fn(3, |_| true); 2], fairdiv::Flags::RELAXED).unwrap();
    let x = Allocation::from_item_lists(&[&[0], &[1, 2]]);
    assert_eq!(build_cut_and_choose_graph(&ones, &x, 1).unwrap(), vec![1, 1]);
    let zeros = Instance::new(3, vec![Valuation::binary_from_fn(3, |_| false); 2]).unwrap();
    assert_eq!(build_cut_and_choose_graph(&zeros, &x, 0).unwrap(), vec![0, 0]);
}

#[test]
fn non_normalized_binary_tables_terminate_pmms() {
    let mut worked = 0;
    for seed in 0..200 {
        let kind = GeneratorKind::RandomBinaryMmsFeasible { n: 3, m: 5, mode: BinaryMode::default() };
        let inst = sample_random(&GeneratorSpec::new(kind, seed)).unwrap().instance;
        if inst.valuations().iter().all(|v| v.eval(Bundle::EMPTY) == int(0)) {
            continue;
        }
        let (x, trace) = cut_and_choose_graph_procedure(&inst).unwrap();
        assert!(check_pmms(&inst, &x, B).unwrap().holds, "seed {seed}");
        assert!(trace.iterations.len() <= 9 && trace.potential_strictly_increases());
        worked += !trace.iterations.is_empty() as usize;
    }
    assert!(worked >= 5, "only {worked} non-normalized runs needed an iteration");
}

#[test]
fn rrr_examples() {
    let inst = Instance::new(4, vec![pair_demand(&[4, 3, 2, 1]); 2]).unwrap();
    let x = reversed_round_robin(&inst).unwrap();
    assert_eq!(x, Allocation::from_item_lists(&[&[0, 3], &[1, 2]]));
    let share = mu(inst.valuation(0), inst.items(), 2, B).unwrap().mu;
    assert_eq!(x.own_values(&inst), vec![share, share]);

    let one = Instance::new(3, vec![pair_demand(&[1, 5, 2])]).unwrap();
    assert_eq!(reversed_round_robin(&one).unwrap().bundle(0), Bundle::full(3));
}

#[test]
fn rrr_pick_dominance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..300 {
        let (n, m) = (rng.gen_range(1..=5), rng.gen_range(1..=12));
        let kind = GeneratorKind::RandomPairDemand { n, m };
        let inst = sample_random(&GeneratorSpec::new(kind, seed)).unwrap().instance;
        let owner = rng.gen_range(0..n);
        let (_, trace) = reversed_round_robin_traced(&inst, owner).unwrap();
        let val = |i: usize, g: usize| if g < m { inst.valuation(i).singleton(g) } else { int(0) };
        // padded bundles, so every agent holds its two picks
        let held = |j: usize| {
            let (g, h) = trace.picks(j);
            let mut all = vec![g, h];
            if j == owner {
                all.extend(&trace.leftovers);
            }
            all
        };
        for i in 0..n {
            let (gi, hi) = trace.picks(i);
            for j in (0..n).filter(|&j| j != i) {
                let mut vals: Vec<Value> = held(j).into_iter().map(|g| val(i, g)).collect();
                vals.sort_unstable_by(|a, b| b.cmp(a));
                if i < j {
                    assert!(vals.iter().all(|&x| val(i, gi) >= x), "seed {seed}: {i} vs {j}");
                } else {
                    assert!(val(i, gi) >= vals[1] && val(i, hi) >= vals[1], "seed {seed}: {i} vs {j}");
                }
            }
        }
    }
}

#[test]
fn pair_demand_closed_form_examples() {
    assert_eq!(lemma_pair_demand_mu(&[int(1), int(2), int(3), int(4)]).unwrap(), int(5));
    assert_eq!(lemma_pair_demand_mu(&[int(0); 4]).unwrap(), int(0));
    assert_eq!(lemma_pair_demand_mu(&[int(1), int(1), int(1), int(9)]).unwrap(), int(2));
    assert!(lemma_pair_demand_mu(&[int(1); 3]).is_err());
}

proptest! {
    #[test]
    fn pair_demand_is_monotone_and_subadditive(values in proptest::collection::vec(0i64..10, 1..=6)) {
        let m = values.len();
        let v = pair_demand(&values);
        for s in Bundle::full(m).subsets() {
            for t in Bundle::full(m).subsets() {
                if s.is_subset(t) {
                    prop_assert!(v.eval(s) <= v.eval(t));
                }
                prop_assert!(v.eval(s | t) <= v.eval(s) + v.eval(t));
            }
        }
    }

    #[test]
    fn share_is_monotone_in_k(values in proptest::collection::vec(0i64..10, 1..=6), k in 1usize..4) {
        let v = additive(&values);
        let set = Bundle::full(values.len());
        let coarse = mu(&v, set, k, B).unwrap();
        let fine = mu(&v, set, k + 1, B).unwrap();
        prop_assert!(fine.mu <= coarse.mu);
    }

    #[test]
    fn share_witness_reevaluates(values in proptest::collection::vec(0i64..10, 0..=6), k in 1usize..4) {
        let v = pair_demand(&values);
        let set = Bundle::full(values.len());
        let out = mu(&v, set, k, B).unwrap();
        prop_assert_eq!(out.witness.len(), k);
        let union: Bundle = out.witness.iter().fold(Bundle::EMPTY, |acc, &p| acc | p);
        prop_assert_eq!(union, set);
        prop_assert_eq!(out.witness.iter().map(|p| p.len()).sum::<usize>(), set.len());
        prop_assert_eq!(out.witness.iter().map(|&p| v.eval(p)).min().unwrap(), out.mu);
    }
}
