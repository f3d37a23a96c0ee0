use std::collections::BTreeSet;

use cantor_approx::cantor::{depth_partition, Transducer};
use cantor_approx::dynamics::itinerary_map;
use cantor_approx::marker::{
    check_markers, coding_tables, search_markers, small_period_orbits, synthesize_code, target_spacing,
    SubshiftWindow,
};
use cantor_approx::symbolic::{build_graph, Sft, Symbol};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Cycles over a small alphabet that are not powers of a shorter word.
fn arb_cycle() -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0 as Symbol..3, 1..12).prop_filter("primitive word", |c| {
        let n = c.len();
        (1..n).all(|j| n % j != 0 || (0..n).any(|i| c[i] != c[(i + j) % n]))
    })
}

fn marks_along(words: &BTreeSet<Vec<Symbol>>, t: &[Symbol], l: usize) -> Vec<usize> {
    (l..t.len() - l).filter(|&i| words.contains(&t[i - l..=i + l])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn markers_on_periodic_orbits_are_spaced(cycle in arb_cycle(), n in 2usize..5) {
        let lambda = SubshiftWindow::periodic_orbit(labels(3), &cycle, 60).unwrap();
        let set = search_markers(&lambda, n, 6).unwrap();
        prop_assert!(check_markers(&lambda, &set).unwrap().holds());
        let words: BTreeSet<Vec<Symbol>> = set.words.iter().map(|w| w.to_vec()).collect();
        let t: Vec<Symbol> = (0..60).map(|i| cycle[i % cycle.len()]).collect();
        let marks = marks_along(&words, &t, set.radius);
        prop_assert!(marks.windows(2).all(|p| p[1] - p[0] >= n));
        if cycle.len() >= n {
            // non-periodic centers are marked within n-1
            let k = set.k;
            for c in k.max(set.radius + n)..t.len() - k.max(set.radius + n) {
                prop_assert!(marks.iter().any(|&m| m.abs_diff(c) < n));
            }
        }
    }

    #[test]
    fn odometer_itineraries_are_full_cycles(d in 1usize..=4) {
        let m = itinerary_map(&Transducer::odometer(16), &depth_partition(d).unwrap(), 2 << d).unwrap();
        let words = m.window.words(2 << d).unwrap();
        prop_assert_eq!(words.len(), 1 << d);
        prop_assert!(m.shift_invariant());
        for w in &words {
            let distinct: BTreeSet<Symbol> = w[..1 << d].iter().copied().collect();
            prop_assert_eq!(distinct.len(), 1 << d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn codes_from_long_cycles_commute(len in 8usize..20, seed in any::<u64>()) {
        // a cycle of distinct symbols is aperiodic below its length
        let mut cycle: Vec<Symbol> = (0..len as Symbol).collect();
        let mut s = seed;
        for i in (1..len).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cycle.swap(i, (s >> 33) as usize % (i + 1));
        }
        let sigma = Sft::new(build_graph(["0", "1"], [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]).unwrap());
        let targets = vec![sigma.graph().parse_word("1").unwrap()];
        let n = target_spacing(&sigma, &targets).unwrap();
        let lambda = SubshiftWindow::periodic_orbit(labels(len), &cycle, 8 * n + 8 * len).unwrap();
        let orbits = small_period_orbits(&lambda, n, n + 1).unwrap();
        let tables = coding_tables(&sigma, &targets, &orbits).unwrap();
        let markers = search_markers(&lambda, n, 2 * n).unwrap();
        let (code, check) = synthesize_code(&lambda, &sigma, &markers, &tables).unwrap();
        prop_assert!(check.holds());
        let t: Vec<Symbol> = (0..4 * code.window_radius + 2 * len).map(|i| cycle[i % len]).collect();
        let img = code.apply(&t);
        let shifted = code.apply(&t[1..]);
        prop_assert_eq!(&img[1..], &shifted[..]);
    }
}
