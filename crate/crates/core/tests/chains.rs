use std::collections::BTreeMap;

use hypertrees::hypertree::Hypertree;
use hypertrees::perm::{Partition, Permutation};
use hypertrees::poset::{leq, ChainSpec, ChainVariant, Poset};
use proptest::prelude::*;

/// Refinement order: each edge of `t` lies inside some edge of `s`.
fn oracle_leq(s: &Hypertree, t: &Hypertree) -> bool {
    t.edges().iter().all(|f| s.edges().iter().any(|e| f.mask() & !e.mask() == 0))
}

fn fixed(t: &Hypertree, sigma: &Permutation) -> bool {
    &t.permuted(sigma).unwrap() == t
}

fn start_weight(t: &Hypertree, sigma: &Permutation, edge: bool, root: bool) -> i128 {
    let fixed_edges: Vec<u32> = t
        .edges()
        .iter()
        .map(|e| e.mask())
        .filter(|&m| sigma.apply_mask(m) == m)
        .collect();
    let fixed_vertex = |v: u32| v != 0 && sigma.apply(v) == v;
    match (edge, root) {
        (false, false) => 1,
        (false, true) => (1..=sigma.degree()).filter(|&v| fixed_vertex(v)).count() as i128,
        (true, false) => fixed_edges.len() as i128,
        (true, true) => fixed_edges
            .iter()
            .map(|&m| (0..32).filter(|&v| m >> v & 1 == 1 && fixed_vertex(v)).count() as i128)
            .sum(),
    }
}

/// Every `k`-tuple `x_1 ⪯ ... ⪯ x_k` of `sigma`-fixed elements, weighted by
/// the variant's decoration of `x_1` or `x_k`, keyed by the rank of `x_k`.
fn brute_force(elements: &[Hypertree], spec: &ChainSpec, sigma: &Permutation) -> BTreeMap<i32, i128> {
    let fixed: Vec<&Hypertree> = elements.iter().filter(|t| fixed(t, sigma)).collect();
    let mut out = BTreeMap::new();
    let mut stack: Vec<Vec<usize>> = (0..fixed.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        if chain.len() < spec.k as usize {
            let last = fixed[*chain.last().unwrap()];
            for (j, t) in fixed.iter().enumerate() {
                if oracle_leq(last, t) {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
            continue;
        }
        let first = fixed[chain[0]];
        let last = fixed[*chain.last().unwrap()];
        use ChainVariant::*;
        let w = match spec.variant {
            Plain => 1,
            MinRooted => start_weight(first, sigma, false, true),
            MinEdgePointed => start_weight(first, sigma, true, false),
            MinEdgePointedRooted => start_weight(first, sigma, true, true),
            MaxEdgePointed => start_weight(last, sigma, true, false),
            MaxEdgePointedRooted => start_weight(last, sigma, true, true),
            HollowMin => first.is_hollow() as i128,
            HollowMinSingleEdge => (first.edges().len() == 1) as i128,
        };
        let rank = if spec.weighted {
            last.edges().len() as i32 - 1
        } else {
            0
        };
        if w != 0 {
            *out.entry(rank).or_insert(0) += w;
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn spec_strategy() -> impl Strategy<Value = (ChainSpec, Permutation)> {
    (
        1u32..=4,
        1u32..=3,
        prop::sample::select(ChainVariant::ALL.to_vec()),
        any::<bool>(),
    )
        .prop_flat_map(|(n, k, variant, weighted)| {
            Just((1..=n).collect::<Vec<u32>>())
                .prop_shuffle()
                .prop_map(move |images| {
                    (
                        ChainSpec::new(n, k, variant, weighted).unwrap(),
                        Permutation::from_images(&images).unwrap(),
                    )
                })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counts_match_brute_force((spec, sigma) in spec_strategy()) {
        let poset = Poset::new(spec.n, spec.variant.uses_gap()).unwrap();
        let count = poset.count_large_chains(&spec, &sigma).unwrap();
        let expected = brute_force(poset.elements(), &spec, &sigma);
        let got: BTreeMap<i32, i128> = count.terms().filter(|&(_, c)| c != 0).collect();
        prop_assert_eq!(got, expected, "{:?}", spec);
    }

    #[test]
    fn counts_are_class_functions((spec, sigma) in spec_strategy(), tau_seed in any::<u64>()) {
        let n = spec.n;
        let perms = Permutation::all(n);
        let tau = &perms[(tau_seed % perms.len() as u64) as usize];
        let conj = tau.compose(&sigma).unwrap().compose(&tau.inverse()).unwrap();
        let poset = Poset::new(n, spec.variant.uses_gap()).unwrap();
        prop_assert_eq!(poset.count_large_chains(&spec, &sigma).unwrap(), poset.count_large_chains(&spec, &conj).unwrap());
    }

    #[test]
    fn order_is_equivariant(n in 2u32..=5, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), images in Just(()).prop_flat_map(|_| Just((1..=5u32).collect::<Vec<_>>()).prop_shuffle())) {
        let poset = Poset::new(n, false).unwrap();
        let s = poset.element(a.index(poset.len()));
        let t = poset.element(b.index(poset.len()));
        let small: Vec<u32> = images.into_iter().filter(|&x| x <= n).collect();
        let sigma = Permutation::from_images(&small).unwrap();
        let (ss, ts) = (s.permuted(&sigma).unwrap(), t.permuted(&sigma).unwrap());
        prop_assert_eq!(leq(s, t).unwrap(), oracle_leq(s, t));
        prop_assert_eq!(leq(&ss, &ts).unwrap(), leq(s, t).unwrap());
    }
}

#[test]
fn multichains_from_strict_chains() {
    // A k-multichain is a strict chain of j distinct elements padded with
    // k - j repeats, chosen in C(k-1, j-1) ways.
    for n in 2..=4 {
        let poset = Poset::new(n, false).unwrap();
        for lambda in Partition::all(n) {
            let sigma = lambda.representative();
            let strict = |m: i32| poset.count_strict_chains(m, &sigma).unwrap();
            let with_bottom = |j: i32| strict(j - 1) + strict(j - 2);
            for k in 1..=5u32 {
                let spec = ChainSpec::new(n, k, ChainVariant::Plain, false).unwrap();
                let multi = poset.count_large_chains(&spec, &sigma).unwrap().total();
                let expected: i128 = (1..=k as i32)
                    .map(|j| binomial(k as u64 - 1, j as u64 - 1) * with_bottom(j))
                    .sum();
                assert_eq!(multi, expected, "n = {n}, class {lambda}, k = {k}");
            }
        }
    }
}

#[test]
fn interval_structure() {
    for n in 2..=5 {
        let poset = Poset::new(n, false).unwrap();
        assert_eq!(poset.element(poset.bottom()).edges().len(), 1);
        for (c, p) in poset.cover_relations() {
            assert_eq!(poset.rank(p), poset.rank(c) + 1, "graded");
            assert!(poset.leq_index(c, p));
        }
    }
}
