use std::collections::BTreeSet;

use cantor_approx::symbolic::{mixing_certificate, period_spectrum, DirectedGraph, Sft, Symbol};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Option<DirectedGraph> {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| ((b / n) as Symbol, (b % n) as Symbol));
    DirectedGraph::from_indexed(labels, edges).ok()
}

fn arb_graph() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=6, any::<u64>()).prop_filter_map("degree invariant", |(n, m)| graph_from_mask(n, m))
}

fn matrix(g: &DirectedGraph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u as Symbol, v as Symbol) as u64).collect())
        .collect()
}

/// Boolean product, saturated to 0/1.
fn mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] * b[k][j] > 0) as u64).collect())
        .collect()
}

proptest! {
    #[test]
    fn exponent_is_least_positive_power(g in arb_graph()) {
        let a = matrix(&g);
        let n = a.len();
        let mut p = a.clone();
        let mut expected = None;
        for e in 1..=(n - 1) * (n - 1) + 1 {
            if p.iter().flatten().all(|&x| x == 1) {
                expected = Some(e);
                break;
            }
            p = mul(&p, &a);
        }
        let cert = mixing_certificate(&g);
        prop_assert_eq!(cert.exponent, expected);
        prop_assert_eq!(cert.primitive, expected.is_some());
        prop_assert_eq!(cert.wielandt_bound, (n - 1) * (n - 1) + 1);
    }

    #[test]
    fn spectrum_matches_matrix_traces(g in arb_graph()) {
        let bound = 10;
        let a = matrix(&g);
        let mut p = a.clone();
        let mut expected = BTreeSet::new();
        for k in 1..=bound {
            if (0..a.len()).any(|i| p[i][i] == 1) {
                expected.insert(k);
            }
            p = mul(&p, &a);
        }
        let s = period_spectrum(&g, bound);
        prop_assert_eq!(&s.present, &expected);
        if let Some(t) = s.full_tail_from {
            prop_assert!((t..=bound).all(|k| s.present.contains(&k)));
        }
    }

    #[test]
    fn language_words_are_exactly_the_paths(g in arb_graph(), len in 1usize..5) {
        let sft = Sft::new(g.clone());
        let words = sft.language(len);
        let n = g.vertex_count() as u64;
        let mut count = 0;
        for code in 0..n.pow(len as u32) {
            let w: Vec<Symbol> = (0..len).map(|i| (code / n.pow(i as u32) % n) as Symbol).collect();
            if g.is_path(&w) {
                count += 1;
                prop_assert!(words.iter().any(|x| x.as_slice() == w.as_slice()));
            }
        }
        prop_assert_eq!(words.len(), count);
        prop_assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn graph_json_round_trips(g in arb_graph()) {
        let back = DirectedGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }
}
