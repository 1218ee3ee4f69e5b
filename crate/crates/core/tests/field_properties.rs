mod support;

use num_bigint::BigUint;
use proptest::prelude::*;

use goodred_core::dvfclassify::{
    classify, low_ram_forces_naive, pval0_divisibility, ExtensionClass, ExtensionDescriptor,
};
use goodred_core::examples::{search, SearchParams};
use goodred_core::gf::{Fq, GaloisField};
use goodred_core::groups::{enumerate_elements, PermutationGroup, DEFAULT_ENUMERATION_CAP};
use goodred_core::localfield::{
    as_conductor, herbrand_phi, herbrand_psi, jumps_share_fractional_part, upper_jumps, BreakSequence,
    LaurentRepresentative, SemidirectAction,
};
use goodred_core::rational::rat;

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 4), (3, 1), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1)])
}

fn terms(q: u64) -> impl Strategy<Value = Vec<(i64, u32)>> {
    prop::collection::vec((-40i64..=0, 0..q as u32), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conductor_is_reduced_and_bounded((p, k) in field_strategy(), seed in terms(1 << 20)) {
        let field = GaloisField::new(p, k).unwrap();
        let q = field.order() as u32;
        let f = LaurentRepresentative::new(&field, seed.into_iter().map(|(e, c)| (e, Fq(c % q)))).unwrap();
        let c = as_conductor(&f, &field).unwrap();
        prop_assert!(c.conductor == 0 || c.conductor % p != 0);
        prop_assert!(c.conductor <= f.pole_order());
        // reducing again changes nothing
        prop_assert_eq!(as_conductor(&c.reduced, &field).unwrap(), c);
    }

    #[test]
    fn herbrand_functions_are_inverse(breaks in prop::collection::vec(1u64..12, 1..5),
                                      p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                      tame in 1u64..5, num in 0i64..400, den in 1i64..13) {
        let mut acc = 0;
        let lower: Vec<u64> = breaks.iter().map(|b| { acc += b; acc }).collect();
        let n = lower.len() as u32;
        let b = BreakSequence::with_tame_index(lower, (0..n).map(|i| p.pow(n - i)).collect(), tame).unwrap();
        let u = rat(num, den);
        prop_assert_eq!(herbrand_psi(&b, herbrand_phi(&b, u).unwrap()).unwrap(), u);
        prop_assert_eq!(herbrand_phi(&b, herbrand_psi(&b, u).unwrap()).unwrap(), u);
        if n == 1 && tame == 1 {
            prop_assert_eq!(upper_jumps(&b).unwrap(), vec![rat(b.lower_breaks[0] as i64, 1)]);
        }
    }

    #[test]
    fn mu_type_is_never_ramified(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..=3,
                                 e_k in 1u64..10, v_a in -3i64..4, pth: bool, zeta: bool,
                                 idx_exp in 0u32..=3, sep in prop::option::of(any::<bool>())) {
        let d = ExtensionDescriptor {
            p, n, e_k, v_a,
            residue_is_pth_power: pth,
            contains_zeta: zeta,
            uniformizer_index: p.pow(idx_exp.min(n)),
            residue_separable: sep,
        };
        if let Ok(ExtensionClass::MuType) = classify(&d) {
            prop_assert_eq!(d.uniformizer_index, 1);
        }
    }
}

#[test]
fn low_ramification_never_holds_at_two() {
    for e_k in 1..200 {
        let d = descriptor(2, 1, e_k, 1, true, false, 2);
        assert!(!low_ram_forces_naive(&d).unwrap());
    }
}

#[allow(clippy::too_many_arguments)]
fn descriptor(p: u64, n: u32, e_k: u64, v_a: i64, pth: bool, zeta: bool, index: u64) -> ExtensionDescriptor {
    ExtensionDescriptor {
        p,
        n,
        e_k,
        v_a,
        residue_is_pth_power: pth,
        contains_zeta: zeta,
        uniformizer_index: index,
        residue_separable: None,
    }
}

/// With roots of unity present and a unit generator, the class is a function
/// of `residue_is_pth_power` alone.
#[test]
fn unit_generator_truth_table() {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7, 11] {
        for n in 1..=3u32 {
            for e_k in [1u64, 2, 4, 10] {
                let mu = classify(&descriptor(p, n, e_k, 0, false, true, 1)).unwrap();
                let other = classify(&descriptor(p, n, e_k, 0, true, true, 1)).unwrap();
                assert_eq!(mu, ExtensionClass::MuType);
                assert_eq!(other, ExtensionClass::Indeterminate);
                cases += 2;
            }
        }
    }
    assert!(cases <= 200);
}

#[test]
fn pval0_rejects_valuations_prime_to_p() {
    for p in [3u64, 5, 7, 11, 13] {
        for nu in 2..p {
            let action = SemidirectAction::from_nu(p, nu).unwrap();
            for v in -30..30i64 {
                assert_eq!(pval0_divisibility(&action, v).unwrap(), v % p as i64 == 0);
            }
        }
    }
}

#[test]
fn jumps_share_fractional_part_on_constructed_breaks() {
    for p in [2u64, 3, 5] {
        for m_b in 1..=4u64 {
            for a in 1..=3u32 {
                let mut lower = vec![1 + m_b];
                for i in 1..a {
                    let step = p.pow(i) * m_b * (i as u64 + 1);
                    lower.push(lower[i as usize - 1] + step);
                }
                let orders = (0..a).map(|i| p.pow(a - i)).collect();
                let b = BreakSequence::with_tame_index(lower.clone(), orders, m_b).unwrap();
                assert!(jumps_share_fractional_part(&b).unwrap(), "{lower:?}");
            }
        }
    }
    let b = BreakSequence::with_tame_index(vec![1, 2], vec![9, 3], 2).unwrap();
    assert!(!jumps_share_fractional_part(&b).unwrap());
}

#[test]
fn search_records_verified_directly() {
    for (m, n, p, q_max) in [(2u64, 1u32, 5u64, 400u64), (2, 2, 5, 400), (3, 1, 7, 400), (3, 2, 7, 2000), (2, 1, 13, 300), (4, 1, 13, 300)] {
        let records = search(&SearchParams { m, n, p, q_max }).unwrap();
        let qs: Vec<u64> = records.iter().map(|r| r.q).collect();
        assert_eq!(qs, support::sieve_examples(m, n, p, q_max), "(m, n, p) = ({m}, {n}, {p})");
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        let pn = p.pow(n) as u128;
        for r in &records {
            let q = r.q as u128;
            let mut x = 1u128;
            for j in 1..=m {
                x = x * q % pn;
                assert_eq!(x == 1, j == m, "q = {q}, j = {j}");
            }
            assert!(r.sylow_order_exponent >= n);
            assert!(r.verdict.good_reduction_outright);
        }
    }
}

#[test]
fn search_matches_enumerated_orders() {
    let records = search(&SearchParams { m: 2, n: 1, p: 5, q_max: 30 }).unwrap();
    for r in records.iter().filter(|r| r.q <= 19) {
        let g = PermutationGroup::pgl2(r.q).unwrap();
        let n = enumerate_elements(&g, DEFAULT_ENUMERATION_CAP).unwrap().len();
        assert_eq!(r.group_order, BigUint::from(n), "q = {}", r.q);
    }
}

#[test]
fn search_is_stable_across_thread_counts() {
    let params = SearchParams { m: 3, n: 1, p: 7, q_max: 5000 };
    let reference = search(&params).unwrap();
    for threads in [1, 2, 7] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        assert_eq!(pool.install(|| search(&params).unwrap()), reference);
    }
}
