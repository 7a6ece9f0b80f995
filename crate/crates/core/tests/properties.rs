use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use prym_core::fpmodule::FpMatrix;
use prym_core::galoiscert::{verdict_from_types, ChebotarevOutcome};
use prym_core::intpoly::{discriminant, resultant, trinomial_disc, CycleType, IntPoly};
use prym_core::primes::odd_primes_up_to;
use prym_core::prymcalc::{
    anti_invariant_partition, dim_prym, multiplicities_coprime, multiplicity_table, omega_basis,
};
use prym_core::{GroupDescriptor, SignedPerm};

fn monic(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(|d| {
        prop::collection::vec(-9i64..=9, d).prop_map(|mut c| {
            c.push(1);
            IntPoly::from_i64(&c)
        })
    })
}

fn any_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 2..=max_deg + 1)
        .prop_map(|c| IntPoly::from_i64(&c))
        .prop_filter("degree at least 1", |f| f.degree().is_some_and(|d| d >= 1))
}

fn signed_perm(m: usize) -> impl Strategy<Value = SignedPerm> {
    (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), m))
        .prop_map(|(s, neg)| SignedPerm::new(s, neg.iter().map(|&n| if n { -1 } else { 1 }).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resultant_is_graded_antisymmetric(a in monic(6), b in monic(6)) {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let sign = if (da * db) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(resultant(&a, &b).unwrap(), sign * resultant(&b, &a).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(a in monic(6), b in monic(4), c in monic(4)) {
        let bc = &b * &c;
        prop_assert_eq!(resultant(&a, &bc).unwrap(), resultant(&a, &b).unwrap() * resultant(&a, &c).unwrap());
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_factor(f in any_poly(8), g in any_poly(3), square in any::<bool>()) {
        let f = if square && f.degree().unwrap() + 2 * g.degree().unwrap() <= 8 { &(&f * &g) * &g } else { f };
        let d = discriminant(&f).unwrap();
        let common = f.gcd(&f.derivative());
        prop_assert_eq!(d.is_zero(), common.degree().is_some_and(|k| k > 0));
    }

    #[test]
    fn fp_rank_nullity(rows in 1usize..6, cols in 1usize..6, p in prop::sample::select(vec![2u64, 3, 5, 7]), seed in prop::collection::vec(0u64..7, 36)) {
        let data: Vec<Vec<u64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j] % p).collect()).collect();
        let a = FpMatrix::from_rows(p, data).unwrap();
        let kernel = a.null_space();
        prop_assert_eq!(a.rank() + kernel.len(), cols);
        for v in kernel {
            let col = FpMatrix::from_rows(p, v.iter().map(|&x| vec![x]).collect()).unwrap();
            let image = a.mul(&col).unwrap();
            prop_assert!(image.to_rows().iter().all(|r| r[0] == 0));
        }
    }

    #[test]
    fn wdm_elements_have_census_types(g in (3usize..=6).prop_flat_map(signed_perm)) {
        let m = g.m();
        let census = GroupDescriptor::WDm { m }.census(1 << 20).unwrap();
        prop_assert_eq!(census.counts.contains_key(&g.induced_cycle_type()), g.in_wdm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn injected_type_outside_wdm_refutes(
        (m, g) in (3usize..=5).prop_flat_map(|m| (Just(m), signed_perm(m))),
        at in 0usize..40,
    ) {
        prop_assume!(!g.in_wdm());
        let census = GroupDescriptor::WDm { m }.census(1 << 20).unwrap();
        let t = g.induced_cycle_type();
        // An odd permutation of the 2m roots: never in the census.
        prop_assert!(!census.counts.contains_key(&t));
        let mut stream: Vec<(u64, CycleType)> = (0..40).map(|i| (1000 + i as u64, CycleType::new(vec![1; 2 * m]))).collect();
        stream[at] = (7, t.clone());
        match verdict_from_types(&stream, &GroupDescriptor::WDm { m }).unwrap() {
            ChebotarevOutcome::Refuted { witness_type, sample_index, .. } => {
                prop_assert_eq!(witness_type, t);
                prop_assert_eq!(sample_index, at + 1);
            }
            other => prop_assert!(false, "{other:?}"),
        }
    }
}

#[test]
fn trinomial_discriminant_is_odd() {
    for m in (3..=15u64).step_by(2) {
        for c in (1..=9i64).step_by(2).flat_map(|c| [c, -c]) {
            assert!(trinomial_disc(m, c).unwrap().is_odd(), "m={m} c={c}");
        }
    }
}

#[test]
fn prym_grid_identities() {
    for p in odd_primes_up_to(13) {
        for r in 2..=6u64 {
            let m = p * r - 1;
            let table = multiplicity_table(p, r).unwrap();
            assert_eq!(table.total(), dim_prym(p, m));
            let parts = anti_invariant_partition(p, r).unwrap();
            assert_eq!(parts.values().map(Vec::len).sum::<usize>() as u64, dim_prym(p, m));
            let anti = omega_basis(2 * p * r - 1, p).unwrap().iter().filter(|f| f.delta_2_sign == -1).count();
            assert_eq!(anti as u64, dim_prym(p, m));
            assert_eq!(multiplicities_coprime(p, r).unwrap(), r % 2 == 0);
        }
    }
}
