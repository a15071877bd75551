mod common;

use common::corpus;
use proptest::prelude::*;
use sigmalat_core::sigma::{self, Rest};
use sigmalat_core::{Group, Limits, Permutation, SigmaPartition};

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn same_degree_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=8).prop_flat_map(|n| {
        let one = Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
        (one.clone(), one.clone(), one).prop_map(|(a, b, c)| {
            (
                Permutation::from_images(a).unwrap(),
                Permutation::from_images(b).unwrap(),
                Permutation::from_images(c).unwrap(),
            )
        })
    })
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// A partition of the listed primes into labelled blocks, everything else
/// in singletons.
fn partition() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..4, PRIMES.len())
}

fn build(labels: &[usize]) -> SigmaPartition {
    let mut classes: Vec<Vec<u64>> = vec![Vec::new(); 4];
    for (&p, &c) in PRIMES.iter().zip(labels) {
        classes[c].push(p);
    }
    classes.retain(|c| !c.is_empty());
    SigmaPartition::new(classes, Rest::Singletons).unwrap()
}

fn small_groups() -> Vec<(String, std::sync::Arc<Group>)> {
    corpus(48)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_group_axioms((a, b, c) in same_degree_triple()) {
        let id = Permutation::identity(a.degree());
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert_eq!(a.then(&id), a.clone());
        prop_assert_eq!(id.then(&a), a.clone());
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }

    #[test]
    fn order_is_the_lcm_of_cycle_lengths(a in permutation(9)) {
        let mut x = a.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.then(&a);
            k += 1;
        }
        prop_assert_eq!(a.order(), k);
        let lcm = a.cycles().iter().map(|c| c.len()).fold(1usize, |acc, n| {
            let (mut u, mut v) = (acc, n);
            while v != 0 {
                (u, v) = (v, u % v);
            }
            acc / u * n
        });
        prop_assert_eq!(a.order(), lcm);
    }

    #[test]
    fn cycle_notation_round_trips(a in permutation(9)) {
        let text = a.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(a.degree(), &text).unwrap(), a);
    }

    #[test]
    fn generated_group_orders_divide_the_symmetric_order((a, b, _) in same_degree_triple()) {
        let g = Group::generate(a.degree(), &[a.clone(), b.clone()], Limits::default()).unwrap();
        let factorial: usize = (1..=a.degree()).product();
        prop_assert_eq!(factorial % g.order(), 0);
        prop_assert!(g.index_of(&a).is_some() && g.index_of(&b).is_some());
    }

    #[test]
    fn lattice_meets_and_joins_are_consistent(pick in 0usize..1000, i in 0usize..1000, j in 0usize..1000) {
        let groups = small_groups();
        let (name, g) = &groups[pick % groups.len()];
        let l = g.lattice().unwrap();
        let (i, j) = (i % l.len(), j % l.len());
        let (m, v) = (l.meet(i, j), l.join(i, j));
        let mut bits = l.sub(i).bits().clone();
        bits.intersect_with(l.sub(j).bits());
        prop_assert_eq!(l.sub(m).bits(), &bits, "{}", name);
        prop_assert!(l.le(i, v) && l.le(j, v), "{}", name);
        prop_assert_eq!(l.meet(i, v), i);
        prop_assert_eq!(l.join(i, m), i);
        prop_assert_eq!(g.order() % l.sub(i).order(), 0);
        let both: Vec<_> = l.sub(i).gens().iter().chain(l.sub(j).gens()).copied().collect();
        prop_assert_eq!(l.sub(v), &g.closure(&both));
    }

    #[test]
    fn coarser_partitions_keep_sigma_subnormality(
        pick in 0usize..1000,
        labels in partition(),
        from in 0usize..4,
        to in 0usize..4,
    ) {
        let groups = small_groups();
        let (name, g) = &groups[pick % groups.len()];
        let fine = build(&labels);
        let merged: Vec<usize> = labels.iter().map(|&c| if c == from { to } else { c }).collect();
        let coarse = build(&merged);
        let a = sigma::sigma_subnormal_reach(&fine, g).unwrap();
        let b = sigma::sigma_subnormal_reach(&coarse, g).unwrap();
        let l = g.lattice().unwrap();
        for h in 0..l.len() {
            prop_assert!(a[h].is_subset(&b[h]), "{} {} -> {}", name, fine, coarse);
        }
        let sub = sigma::subnormal_reach(g).unwrap();
        for h in 0..l.len() {
            prop_assert!(sub[h].is_subset(&a[h]), "{} {}", name, fine);
        }
    }
}
