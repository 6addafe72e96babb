use num_complex::Complex64;
use proptest::prelude::*;

use gpk_core::fourier::{fourier_transform, inverse_fourier_transform};
use gpk_core::{
    annihilator, char_eval, image_description, make_fbi_instance, marker_selection,
    subgroup_closure, trial_rng, CandidateOrder, GroupSpec,
};

fn group() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2usize..7, 1..4).prop_map(|o| GroupSpec::new(&o).unwrap())
}

fn group_with_indices(k: usize) -> impl Strategy<Value = (GroupSpec, Vec<usize>)> {
    with_indices(group(), k)
}

fn with_indices(
    groups: impl Strategy<Value = GroupSpec>,
    k: usize,
) -> impl Strategy<Value = (GroupSpec, Vec<usize>)> {
    groups.prop_flat_map(move |g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, k))
    })
}

proptest! {
    #[test]
    fn group_axioms((g, idx) in group_with_indices(3)) {
        let [a, b, c] = [0, 1, 2].map(|i| g.element_at(idx[i]).unwrap());
        let ab = g.add(&a, &b).unwrap();
        prop_assert_eq!(&ab, &g.add(&b, &a).unwrap());
        prop_assert_eq!(g.add(&ab, &c).unwrap(), g.add(&a, &g.add(&b, &c).unwrap()).unwrap());
        prop_assert!(g.add(&a, &g.neg(&a).unwrap()).unwrap().is_zero());
        prop_assert_eq!(g.add(&a, &g.zero()).unwrap(), a);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear((g, idx) in group_with_indices(3)) {
        let [a, b, c] = [0, 1, 2].map(|i| g.element_at(idx[i]).unwrap());
        let ab = char_eval(&g, &a, &b).unwrap();
        prop_assert!((ab - char_eval(&g, &b, &a).unwrap()).norm() < 1e-9);
        let lhs = char_eval(&g, &a, &g.add(&b, &c).unwrap()).unwrap();
        prop_assert!((lhs - ab * char_eval(&g, &a, &c).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn annihilator_is_an_involution((g, idx) in group_with_indices(2)) {
        let gens: Vec<_> = idx.iter().map(|&i| g.element_at(i).unwrap()).collect();
        let s = subgroup_closure(&g, &gens).unwrap();
        let perp = annihilator(&s).unwrap();
        prop_assert_eq!(perp.order() * s.order(), g.order());
        prop_assert_eq!(annihilator(&perp).unwrap(), s);
    }

    #[test]
    fn fourier_inverse_round_trip(g in group(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = trial_rng(seed, 0);
        let f: Vec<Complex64> = (0..g.order())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let back = inverse_fourier_transform(&g, &fourier_transform(&g, &f).unwrap()).unwrap();
        for (x, y) in back.iter().zip(&f) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn marker_selection_finds_random_images(
        (h, idx) in with_indices(prop::collection::vec(2usize..5, 1..3).prop_map(|o| GroupSpec::new(&o).unwrap()), 3),
        domain in prop::collection::vec(2usize..4, 1..3),
        seed in any::<u64>(),
    ) {
        let gens: Vec<_> = idx[..2].iter().map(|&i| h.element_at(i).unwrap()).collect();
        let k = subgroup_closure(&h, &gens).unwrap();
        let mut orders = domain;
        if k.order() > 1 {
            orders.push(k.order());
        }
        let g = GroupSpec::new(&orders).unwrap();
        let shift = h.element_at(idx[2]).unwrap();
        let inst = make_fbi_instance(&g, &k, &shift, &mut trial_rng(seed, 0)).unwrap();
        let mut f = inst.oracle.fresh();
        let sel = marker_selection(&mut f, &CandidateOrder::Shuffled { seed }, &mut trial_rng(seed, 1)).unwrap();
        prop_assert_eq!(sel.image_order, k.order());
        prop_assert_eq!(image_description(&sel.ledger).unwrap(), k);
        prop_assert_eq!(f.calls(), sel.ledger.calls);
    }
}
