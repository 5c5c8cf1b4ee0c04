use anysort::estimators::{
    delta_scores, estimate_from_scores, exact_average_heights, info_scores, linear_extensions,
    linear_extensions_with_budget, rho_scores,
};
use anysort::{Error, PartialOrder, Ratio, ScoreVector};
use itertools::Itertools;
use proptest::prelude::*;

/// Every permutation of `0..n` consistent with `po`, by brute force.
fn brute_extensions(po: &PartialOrder) -> Vec<Vec<usize>> {
    let n = po.len();
    (0..n)
        .permutations(n)
        .filter(|order| {
            order
                .iter()
                .enumerate()
                .all(|(p, &i)| order[p + 1..].iter().all(|&j| !po.leq(j, i)))
        })
        .collect()
}

fn brute_heights(po: &PartialOrder) -> Vec<f64> {
    let n = po.len();
    let exts = brute_extensions(po);
    let mut sums = vec![0usize; n];
    for order in &exts {
        for (p, &i) in order.iter().enumerate() {
            sums[i] += p;
        }
    }
    sums.iter().map(|&s| s as f64 / exts.len() as f64).collect()
}

/// Partial orders reached after every prefix of a random comparison sequence.
fn prefix_posets(max_n: usize) -> impl Strategy<Value = Vec<PartialOrder>> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec((0..n, 0..n), 0..2 * n * n),
        )
            .prop_map(move |(values, pairs)| {
                let mut po = PartialOrder::new(n).unwrap();
                let mut seen = vec![po.clone()];
                for (i, j) in pairs {
                    if po.incomparable(i, j) {
                        let (lo, hi) = if values[i] < values[j] {
                            (i, j)
                        } else {
                            (j, i)
                        };
                        po.record(lo, hi).unwrap();
                        seen.push(po.clone());
                    }
                }
                seen
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn score_estimates_are_linear_extensions(posets in prefix_posets(8)) {
        for po in &posets {
            let exts = brute_extensions(po);
            let rho = estimate_from_scores(&rho_scores(po));
            let delta = estimate_from_scores(&delta_scores(po));
            prop_assert!(exts.iter().any(|e| e == rho.as_slice()), "rho {:?}", rho);
            prop_assert!(exts.iter().any(|e| e == delta.as_slice()), "delta {:?}", delta);
            prop_assert!(rho.extends(po));
            prop_assert!(delta.extends(po));
        }
    }

    #[test]
    fn enumeration_matches_brute_force(posets in prefix_posets(7)) {
        for po in &posets {
            let fast: Vec<Vec<usize>> = linear_extensions(po)
                .unwrap()
                .into_iter()
                .map(|e| e.into_vec())
                .collect();
            // brute force also yields lexicographic order
            prop_assert_eq!(fast, brute_extensions(po));
        }
    }

    #[test]
    fn average_heights_match_enumeration(posets in prefix_posets(8)) {
        for po in &posets {
            let fast = exact_average_heights(po).unwrap();
            let slow = brute_heights(po);
            for (a, b) in fast.as_slice().iter().zip(&slow) {
                prop_assert!((a - b).abs() < 1e-9, "{:?} vs {:?}", fast.as_slice(), slow);
            }
        }
    }

    #[test]
    fn total_orders_estimate_themselves(order in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle()) {
        let mut po = PartialOrder::new(order.len()).unwrap();
        for w in order.windows(2) {
            po.record(w[0], w[1]).unwrap();
        }
        let sorted = po.sorted_order().unwrap();
        prop_assert_eq!(&sorted, &estimate_from_scores(&rho_scores(&po)));
        prop_assert_eq!(&sorted, &estimate_from_scores(&delta_scores(&po)));
        prop_assert_eq!(&sorted, &estimate_from_scores(&exact_average_heights(&po).unwrap()));
        prop_assert!(info_scores(&po).as_slice().iter().all(|&s| s == order.len() as i64 + 1));
    }

    #[test]
    fn estimates_are_permutations(scores in prop::collection::vec(-5i64..5, 1..40)) {
        let est = estimate_from_scores(&ScoreVector(scores.clone()));
        let mut seen = est.as_slice().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
        for w in est.as_slice().windows(2) {
            let (i, j) = (w[0], w[1]);
            prop_assert!(scores[i] < scores[j] || (scores[i] == scores[j] && i < j));
        }
    }
}

#[test]
fn documented_examples() {
    let mut po = PartialOrder::new(3).unwrap();
    assert_eq!(delta_scores(&po).0, vec![0, 0, 0]);
    assert_eq!(info_scores(&po).0, vec![2, 2, 2]);
    assert_eq!(rho_scores(&po).0, vec![Ratio::new(1, 2); 3]);
    assert_eq!(linear_extensions(&po).unwrap().len(), 6);

    po.record(0, 1).unwrap();
    po.record(0, 2).unwrap();
    let exts: Vec<Vec<usize>> = linear_extensions(&po)
        .unwrap()
        .into_iter()
        .map(|e| e.into_vec())
        .collect();
    assert_eq!(exts, vec![vec![0, 1, 2], vec![0, 2, 1]]);
    assert_eq!(exact_average_heights(&po).unwrap().0, vec![0.0, 1.5, 1.5]);

    let mut four = PartialOrder::new(4).unwrap();
    four.record(0, 1).unwrap();
    assert_eq!(info_scores(&four).0, vec![3, 3, 2, 2]);

    assert_eq!(
        estimate_from_scores(&ScoreVector(vec![0.75, 0.25, 0.5])).as_slice(),
        &[1, 2, 0]
    );
    assert_eq!(
        estimate_from_scores(&ScoreVector(vec![Ratio::new(2, 3), Ratio::new(1, 3)])).as_slice(),
        &[1, 0]
    );
}

#[test]
fn enumeration_limits() {
    let big = PartialOrder::new(13).unwrap();
    assert!(matches!(
        linear_extensions(&big),
        Err(Error::TooLarge { .. })
    ));
    assert!(matches!(
        exact_average_heights(&big),
        Err(Error::TooLarge { .. })
    ));
    let antichain = PartialOrder::new(5).unwrap();
    assert_eq!(
        linear_extensions_with_budget(&antichain, 100),
        Err(Error::ExtensionBudget(100))
    );
    assert_eq!(
        linear_extensions_with_budget(&antichain, 120)
            .unwrap()
            .len(),
        120
    );
}
