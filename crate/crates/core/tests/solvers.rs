mod common;

use common::{arb_sequence, arb_tree, Oracle};
use domino::constructions::{generate, CenterPos, FamilySpec};
use domino::domination::{is_feasible, is_valid_chain, Variant};
use domino::exact::naive::min_chain_size;
use domino::exact::{opt_inc, opt_off, Witness};
use proptest::prelude::*;

fn gen(family: &str, params: &str) -> domino::graph::ArrivalSequence {
    generate(&FamilySpec::from_params(family, params).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn offline_matches_brute_force(seq in arb_sequence(10, false)) {
        let oracle = Oracle::new(&seq);
        for variant in Variant::ALL {
            let r = opt_off(variant, &seq, 20).unwrap();
            prop_assert_eq!(r.size, oracle.opt_off(variant), "{} {:?}", variant, seq.arrivals());
            let Witness::Set(s) = &r.witness else { panic!("offline witness is a set") };
            prop_assert!(is_feasible(variant, seq.full(), s));
            prop_assert_eq!(s.len(), r.size);
        }
    }

    #[test]
    fn incremental_matches_reachability_oracle(seq in arb_sequence(10, false)) {
        let oracle = Oracle::new(&seq);
        for variant in Variant::ALL {
            let r = opt_inc(variant, &seq, 14).unwrap();
            prop_assert_eq!(Some(r.size), oracle.opt_inc(variant), "{} {:?}", variant, seq.arrivals());
            let chain = r.chain().unwrap();
            prop_assert!(is_valid_chain(variant, &seq, chain));
            prop_assert_eq!(chain.size(), r.size);
        }
    }

    #[test]
    fn memoized_chain_search_agrees_with_naive_enumeration(seq in arb_sequence(8, false)) {
        for variant in Variant::ALL {
            let memo = opt_inc(variant, &seq, 14).unwrap().size;
            prop_assert_eq!(memo, min_chain_size(variant, &seq).unwrap(), "{}", variant);
        }
    }

    #[test]
    fn offline_is_order_invariant(seq in arb_sequence(9, false), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut order: Vec<usize> = (1..=seq.n()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = seq.permuted(&order).unwrap();
        for variant in Variant::ALL {
            prop_assert_eq!(
                opt_off(variant, &seq, 20).unwrap().size,
                opt_off(variant, &shuffled, 20).unwrap().size
            );
        }
    }

    #[test]
    fn sandwich_and_incremental_ordering(seq in arb_sequence(10, true)) {
        let off = |v| opt_off(v, &seq, 20).unwrap().size;
        let inc = |v| opt_inc(v, &seq, 14).unwrap().size;
        for v in Variant::ALL {
            prop_assert!(off(v) <= inc(v));
        }
        prop_assert!(off(Variant::Ds) <= off(Variant::Cds));
        if seq.n() >= 3 {
            prop_assert!(inc(Variant::Ds) <= inc(Variant::Tds));
            prop_assert!(inc(Variant::Tds) <= inc(Variant::Cds) + 1);
        }
    }

    #[test]
    fn trees_have_leafless_optima(seq in arb_tree(12)) {
        // On trees with n >= 3 both incremental CDS and TDS select every
        // internal vertex, plus v_1 when it is a leaf.
        prop_assume!(seq.n() >= 3);
        let g = seq.full();
        let internal = g.vertices().filter(|&v| g.degree(v) > 1).count();
        let extra = usize::from(g.degree(1) == 1);
        prop_assert_eq!(opt_inc(Variant::Cds, &seq, 14).unwrap().size, internal + extra);
        prop_assert_eq!(opt_off(Variant::Cds, &seq, 20).unwrap().size, internal);
    }
}

#[test]
fn named_examples() {
    assert_eq!(opt_off(Variant::Ds, &gen("path", "n=9"), 20).unwrap().size, 3);
    assert_eq!(opt_off(Variant::Cds, &gen("path", "n=9"), 20).unwrap().size, 7);
    let star = generate(&FamilySpec::Star {
        n: 5,
        center: CenterPos::Second,
    })
    .unwrap();
    assert_eq!(opt_off(Variant::Ids, &star, 20).unwrap().size, 1);
    assert_eq!(opt_inc(Variant::Ids, &star, 14).unwrap().size, 4);
    assert_eq!(opt_inc(Variant::Ds, &gen("fan", "delta=5"), 14).unwrap().size, 3);
    let rotor = gen("rotor", "delta=8");
    assert_eq!(opt_off(Variant::Cds, &rotor, 20).unwrap().size, 1);
    assert_eq!(opt_off(Variant::Tds, &rotor, 20).unwrap().size, 2);
    assert_eq!(opt_inc(Variant::Tds, &rotor, 14).unwrap().size, 8);
    let stars = gen("disjoint-stars", "i=2,delta=5");
    assert_eq!(opt_inc(Variant::Ds, &stars, 14).unwrap().size, 10);
    assert_eq!(opt_off(Variant::Ds, &stars, 20).unwrap().size, 2);
}

#[test]
fn fan_and_alternating_fan_offline_values() {
    for delta in 3..=8 {
        let fan = gen("fan", &format!("delta={delta}"));
        assert_eq!(opt_off(Variant::Ds, &fan, 20).unwrap().size, 1);
        assert_eq!(opt_off(Variant::Cds, &fan, 20).unwrap().size, 1);
        assert_eq!(opt_off(Variant::Tds, &fan, 20).unwrap().size, 2);
    }
    for k in 1..=3 {
        let alt = gen("alternating-fan", &format!("k={k},delta=4"));
        assert_eq!(opt_off(Variant::Ds, &alt, 20).unwrap().size, k);
    }
}

#[test]
fn caps_refuse_large_instances() {
    let p = gen("path", "n=21");
    assert!(opt_off(Variant::Ds, &p, 20).is_err());
    assert!(opt_inc(Variant::Ds, &gen("path", "n=15"), 14).is_err());
    assert_eq!(opt_off(Variant::Ds, &p, 21).unwrap().size, 7);
}
