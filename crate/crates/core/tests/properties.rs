//! Randomised properties over small groups.

mod common;

use common::*;
use monoball::bohr::{bohr_norm, cor53_check, linbohr, CharSet};
use monoball::exact::Q;
use monoball::group::{GroupRef, GroupSpec, GroupSubset};
use monoball::harmonic::LinGroup;
use monoball::metric::{ball_axioms_check, ball_dimension, validate_norm};
use monoball::pipeline::find_l;
use monoball::setops::{growth_profile, normalize_set, NormalizeOptions};
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (2usize..40).prop_map(cyclic),
        (2usize..16).prop_map(|n| dihedral(2 * n)),
        Just(GroupSpec::Quaternion8),
        Just(GroupSpec::symmetric(4)),
        Just(GroupSpec::Heisenberg { p: 3 }),
        (2usize..6, 2usize..6).prop_map(|(a, b)| product(vec![cyclic(a), cyclic(b)])),
    ]
}

/// A group with a nonempty subset drawn from element indices.
fn group_and_set() -> impl Strategy<Value = (GroupRef, GroupSubset)> {
    group_strategy().prop_flat_map(|spec| {
        let g = build(&spec);
        let n = g.order();
        proptest::collection::btree_set(0..n, 1..=n.min(5)).prop_map(move |s| (g.clone(), subset(&g, s)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn growth_matches_cayley_walk((g, a) in group_and_set()) {
        let elems: Vec<usize> = a.iter().collect();
        let profile = growth_profile(&a, 12).unwrap();
        prop_assert_eq!(profile.sizes, bfs_power_sizes(&g, &elems, 12));
    }

    #[test]
    fn normalized_sets_are_symmetric_normal_neighbourhoods((g, a) in group_and_set()) {
        let b = normalize_set(&a, NormalizeOptions::all());
        prop_assert!(b.contains(g.identity()));
        prop_assert!(a.is_subset(&b));
        prop_assert_eq!(&b.inverse(), &b);
        for y in 0..g.order() {
            prop_assert_eq!(&b.conjugate(y), &b);
        }
        prop_assert_eq!(normalize_set(&b, NormalizeOptions::all()), b);
    }

    #[test]
    fn bohr_norms_are_bi_invariant(spec in group_strategy(), picks in proptest::collection::vec(0usize..64, 0..4)) {
        let g = build(&spec);
        let lin = LinGroup::new(&g);
        let gamma = CharSet::new(&lin, picks.iter().map(|p| p % lin.len())).unwrap();
        let rho = bohr_norm(&gamma);
        prop_assert!(validate_norm(&rho).valid);
        prop_assert!(ball_axioms_check(&rho).all_hold());
        let dim = ball_dimension(&rho, Q::new(1, 2)).unwrap();
        prop_assert!(dim.bounded_by_bits(2 * gamma.len() as u32));
    }

    #[test]
    fn kfold_identity_on_cyclic_groups(n in 3usize..90, j in 1i64..40, k in 1usize..5, den in 4i64..60) {
        let g = build(&cyclic(n));
        let delta = Q::new(1, den);
        prop_assume!(delta * (k as i64) < Q::new(1, 3));
        let phases: Vec<Q> = (0..n).map(|x| {
            let t = Q::new(j * x as i64, n as i64);
            t - t.floor()
        }).collect();
        let lambda = vec![vec![Q::from_integer(0); n], phases];
        let oracle = brute_bohr(n, &lambda, delta);
        let lin = LinGroup::new(&g);
        let set = CharSet::new(&lin, [0, (j as usize) % n]).unwrap();
        prop_assert_eq!(set_of(&linbohr(&set, delta)), oracle);
        let report = cor53_check(&set, k, delta).unwrap();
        prop_assert!(report.equal);
    }

    #[test]
    fn find_l_is_the_first_level_with_small_growth((g, a) in group_and_set()) {
        let a = normalize_set(&a, NormalizeOptions::all());
        let choice = find_l(&a).unwrap();
        let elems: Vec<usize> = a.iter().collect();
        let mut sizes = vec![1usize];
        sizes.extend(bfs_power_sizes(&g, &elems, choice.l + 1));
        // P(A^{l+1})² < 2 P(A^{l−1})², first such l
        let small = |l: usize| sizes[l + 1] * sizes[l + 1] < 2 * sizes[l - 1] * sizes[l - 1];
        prop_assert!(small(choice.l));
        prop_assert!((1..choice.l).all(|l| !small(l)));
        prop_assert_eq!(choice.sizes, [sizes[choice.l - 1], sizes[choice.l], sizes[choice.l + 1]]);
    }
}
