use proptest::prelude::*;

use goodred_core::arith;
use goodred_core::criterion::{
    branching_gate, decide, decide_with_branching, CriterionError, FieldProfile, Status,
};
use goodred_core::groups::{
    enumerate_elements, family_profile, profile, FamilySpec, GroupProfile, PermutationGroup,
    DEFAULT_ENUMERATION_CAP,
};
use num_bigint::BigUint;

fn small_group() -> impl Strategy<Value = PermutationGroup> {
    prop_oneof![
        (2..=12usize).prop_map(PermutationGroup::cyclic),
        (3..=10usize).prop_map(PermutationGroup::dihedral),
        (2..=4usize).prop_map(PermutationGroup::symmetric),
        prop::sample::select(vec![(3u64, 1u32, 2u64), (5, 1, 2), (5, 1, 4), (7, 1, 3), (7, 1, 6), (3, 2, 2)])
            .prop_map(|(p, s, m)| PermutationGroup::semidirect(p, s, m).unwrap()),
        prop::sample::select(vec![2u64, 3, 4, 5, 7]).prop_map(|q| PermutationGroup::pgl2(q).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_count_times_m_is_p_minus_one(g in small_group(), pick in 0usize..8) {
        let order = enumerate_elements(&g, DEFAULT_ENUMERATION_CAP).unwrap().len() as u64;
        let primes = arith::prime_factors(order);
        let p = primes[pick % primes.len()];
        let gp = profile(&g, p, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(gp.order.clone(), BigUint::from(order));
        prop_assert!(gp.p_valuation >= 1);
        if gp.sylow_cyclic {
            let m = gp.m_invariant.unwrap();
            prop_assert_eq!(m * gp.order_p_class_count, p - 1);
            prop_assert_eq!((p - 1) % m, 0);
        } else {
            prop_assert_eq!(gp.m_invariant, None);
        }
    }

    #[test]
    fn decide_is_monotone_in_e(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 31, 101]),
                               pick in 0usize..16, center in 1u64..6, e in 1u64..40) {
        let divisors: Vec<u64> = (1..p).filter(|m| (p - 1) % m == 0).collect();
        let m = divisors[pick % divisors.len()];
        let gp = synthetic(p, m, center);
        let v = decide(&gp, &FieldProfile::new(p, e).unwrap()).unwrap();
        if v.status == Status::Inconclusive {
            for e2 in e + 1..e + 10 {
                let w = decide(&gp, &FieldProfile::new(p, e2).unwrap()).unwrap();
                prop_assert_eq!(w.status, Status::Inconclusive);
            }
        }
        // equal inputs, equal verdicts
        prop_assert_eq!(decide(&gp.clone(), &FieldProfile::new(p, e).unwrap()).unwrap(), v);
    }

    #[test]
    fn branching_multiples_of_p_never_good(p in prop::sample::select(vec![5u64, 7, 11, 13]),
                                           indices in prop::collection::vec(1u64..60, 1..5)) {
        let gp = synthetic(p, 2, 1);
        let fp = FieldProfile::new(p, 1).unwrap();
        match decide_with_branching(&gp, &fp, &indices) {
            Ok(v) => prop_assert!(v.status != Status::PotentiallyGood || branching_gate(&indices, p)),
            Err(e) => {
                let contradiction = matches!(e, CriterionError::BranchingContradiction { .. });
                prop_assert!(contradiction);
                prop_assert!(!branching_gate(&indices, p));
            }
        }
    }
}

fn synthetic(p: u64, m: u64, center: u64) -> GroupProfile {
    GroupProfile {
        order: BigUint::from(p * m * center),
        p,
        p_valuation: 1,
        sylow_cyclic: true,
        m_invariant: Some(m),
        order_p_class_count: (p - 1) / m,
        center_exponent: center,
    }
}

#[test]
fn pgl2_closed_form_matches_models() {
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19] {
        let g = PermutationGroup::pgl2(q).unwrap();
        for p in (3..=q + 1).filter(|&p| arith::is_prime(p) && q % p != 0) {
            if arith::unit_order(q % p, p, p - 1) != 2 {
                continue;
            }
            let closed = family_profile(&FamilySpec::Pgl { m: 2, q, p }, DEFAULT_ENUMERATION_CAP).unwrap();
            let model = profile(&g, p, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(closed, model, "PGL2({q}) at p = {p}");
            checked += 1;
        }
    }
    assert!(checked >= 8, "only {checked} cases");
}

#[test]
fn semidirect_closed_form_matches_models() {
    for (p, s, m) in [(3u64, 1u32, 2u64), (5, 1, 2), (5, 1, 4), (7, 1, 2), (7, 1, 3), (7, 1, 6), (3, 2, 2), (5, 2, 4)] {
        let spec = FamilySpec::Semidirect { p, s, m };
        let closed = family_profile(&spec, DEFAULT_ENUMERATION_CAP).unwrap();
        let model = spec.permutation_model().unwrap().unwrap();
        let enumerated = profile(&model, p, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(closed, enumerated, "Z/{p}^{s} x| Z/{m}");
    }
}
