use cantor_approx::cantor::{sup_distance, Bits, ClopenSet, CylinderRecoding, DyadicValue, Transducer};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// A bijective recoding of the depth-`k` cylinders given by a permutation.
fn arb_recoding() -> impl Strategy<Value = (usize, Transducer)> {
    (1usize..=5).prop_flat_map(|k| {
        let n = 1usize << k;
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| {
            let pairs = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (Bits::from_index(i as u64, k), Bits::from_index(j as u64, k)))
                .collect();
            (k, Transducer::recoding("r", CylinderRecoding::new(pairs).unwrap(), 12))
        })
    })
}

fn arb_clopen() -> impl Strategy<Value = ClopenSet> {
    subsequence((0u64..16).collect::<Vec<_>>(), 0..=16)
        .prop_map(|ix| ClopenSet::normalize(ix.into_iter().map(|i| Bits::from_index(i, 4))))
}

proptest! {
    #[test]
    fn recodings_invert((k, t) in arb_recoding()) {
        prop_assert!(t.is_homeomorphism());
        let inv = t.inverse().unwrap();
        for w in Bits::all(k + 3) {
            let back = inv.image(&t.image(&w));
            prop_assert_eq!(back.as_slice(), w.as_slice());
        }
    }

    #[test]
    fn odometer_and_inverse_cancel(x in 0u64..1 << 12, steps in 1usize..20) {
        let odo = Transducer::odometer(16);
        let inv = odo.inverse().unwrap();
        let w = Bits::from_index(x, 12);
        let there = odo.iterate(&w, steps);
        let back = inv.iterate(&there, steps);
        prop_assert_eq!(back.as_slice(), w.as_slice());
    }

    #[test]
    fn distance_bounds_are_ordered((_, a) in arb_recoding(), (_, b) in arb_recoding()) {
        let ab = sup_distance(&a, &b, 6).unwrap();
        let ba = sup_distance(&b, &a, 6).unwrap();
        prop_assert!(ab.lower <= ab.upper);
        prop_assert_eq!(ab.upper, ba.upper);
        prop_assert_eq!(sup_distance(&a, &a, 6).unwrap().upper, DyadicValue::Zero);
    }

    #[test]
    fn dyadic_text_round_trips(k in 0u32..60) {
        let v = DyadicValue::pow(k);
        prop_assert_eq!(v.to_string().parse::<DyadicValue>().unwrap(), v);
        prop_assert!(v.half() < v);
        prop_assert_eq!(v.half().double(), Some(v));
    }

    #[test]
    fn clopen_algebra(a in arb_clopen(), b in arb_clopen()) {
        prop_assert!(a.union(&a.complement()).is_whole());
        prop_assert!(a.intersection(&a.complement()).is_empty());
        prop_assert!(a.intersection(&b).is_subset(&a));
        prop_assert!(a.is_subset(&a.union(&b)));
        prop_assert_eq!(a.difference(&b).union(&a.intersection(&b)), a.clone());
        prop_assert_eq!(ClopenSet::normalize(a.words().to_vec()), a);
    }
}
