use di4_core::checks::brute_force_coker_order;
use di4_core::linalg::{coker_2local, kernel_mod2, snf, IntMatrix};
use di4_core::padic::{dlog3, inv_odd, modpow2, rat_to_residue, val2, val2_i64, Val2};
use di4_core::{OddRational, PadicResidue};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-20i64..=20, rows * cols).prop_map(move |v| {
        IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn odd() -> impl Strategy<Value = i64> {
    (-100_000i64..100_000).prop_map(|x| 2 * x + 1)
}

proptest! {
    #[test]
    fn inverse_of_odd(a in odd(), prec in 1u32..64) {
        let inv = inv_odd(&BigInt::from(a), prec).unwrap();
        let prod = PadicResidue::new(a, prec).unwrap().mul(&inv);
        prop_assert_eq!(prod.value(), &BigInt::one());
    }

    #[test]
    fn dlog_inverts_powers(x in 0u64..1 << 30, prec in 3u32..32) {
        let three = BigInt::from(3);
        let u = modpow2(&three, &BigInt::from(x), prec).unwrap();
        let dl = dlog3(&u).unwrap();
        prop_assert_eq!(modpow2(&three, &dl.exponent, prec).unwrap(), u);
        let order = BigInt::one() << (prec - 2);
        prop_assert_eq!(dl.exponent, BigInt::from(x) % order);
    }

    #[test]
    fn valuation_is_additive(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
        let prod = val2(&(BigInt::from(a) * BigInt::from(b)));
        match (val2_i64(a), val2_i64(b)) {
            (Val2::Finite(x), Val2::Finite(y)) => prop_assert_eq!(prod, Val2::Finite(x + y)),
            _ => prop_assert_eq!(prod, Val2::Infinity),
        }
    }

    #[test]
    fn residue_map_is_a_ring_map(a in -5000i64..5000, b in odd(), c in -5000i64..5000, d in odd(), prec in 1u32..40) {
        let p = OddRational::new(a, b).unwrap();
        let q = OddRational::new(c, d).unwrap();
        let r = |x: &OddRational| rat_to_residue(x, prec).unwrap();
        prop_assert_eq!(r(&(p.clone() + q.clone())), r(&p).add(&r(&q)));
        prop_assert_eq!(r(&(p.clone() * q.clone())), r(&p).mul(&r(&q)));
    }

    #[test]
    fn snf_witnesses((rows, cols) in (1usize..=5, 1usize..=5), seed in any::<u64>()) {
        let a = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-30i64..=30)))
        };
        let s = snf(&a);
        prop_assert!(s.verify(&a).is_ok(), "{}", a);
    }

    #[test]
    fn coker_order_is_det(a in matrix(3, 3)) {
        let det = a.det().unwrap();
        prop_assume!(det != BigInt::from(0));
        let p = coker_2local(&a, false);
        let v = val2(&det).finite().unwrap() as u32;
        prop_assert_eq!(p.unwrap().group.log2_order(), Some(v));
    }

    #[test]
    fn quotient_walk_counts_det(a in matrix(3, 3)) {
        let det = a.det().unwrap();
        prop_assume!(det != BigInt::from(0) && det.magnitude() <= &2000u32.into());
        let full: BigInt = snf(&a).diagonal().iter().product();
        prop_assert_eq!(BigInt::from(brute_force_coker_order(&a).unwrap()), full.clone());
        prop_assert_eq!(full.magnitude(), det.magnitude());
    }

    #[test]
    fn doubling_adds_one_per_summand(a in matrix(3, 3)) {
        prop_assume!(a.det().unwrap() != BigInt::from(0));
        let two_a = a.map(|x| x * 2);
        let g = coker_2local(&a, false).unwrap().group;
        let h = coker_2local(&two_a, false).unwrap().group;
        prop_assert_eq!(h.log2_order(), g.log2_order().map(|o| o + 3));
    }

    #[test]
    fn mod2_kernel_is_annihilated(a in matrix(4, 5)) {
        let m = a.mod2();
        let kernel = kernel_mod2(&m);
        prop_assert_eq!(kernel.len() + m.rank_f2(), 5);
        for v in kernel {
            prop_assert!(m.apply_f2(&v).iter().all(|x| !x));
        }
    }
}
