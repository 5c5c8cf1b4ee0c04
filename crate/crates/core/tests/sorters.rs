use std::ops::ControlFlow;

use anysort::estimators::{delta_scores, estimate_from_scores, rho_scores};
use anysort::metrics::{max_tau, profile};
use anysort::sorters::{corsort_next_pair, count_comparisons, run, run_with};
use anysort::{Algorithm, Error, Estimator, HiddenList, PartialOrder, SorterSpec};
use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_specs() -> Vec<SorterSpec> {
    Algorithm::ALL
        .into_iter()
        .cartesian_product([Estimator::Natural, Estimator::Rho, Estimator::Delta])
        .filter_map(|(a, e)| SorterSpec::new(a, e).ok())
        .collect()
}

fn spec(s: &str) -> SorterSpec {
    s.parse().unwrap()
}

fn tau_against(values: &[usize], order: &[usize]) -> u64 {
    let mut inv = 0;
    for p in 0..order.len() {
        for q in p + 1..order.len() {
            inv += (values[order[p]] > values[order[q]]) as u64;
        }
    }
    inv
}

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

#[test]
fn every_spec_sorts_every_small_input() {
    for spec in all_specs() {
        for n in 1..=8 {
            for perm in (0..n).permutations(n) {
                let input = HiddenList::new(perm.clone()).unwrap();
                let count = count_comparisons(spec, &input).unwrap();
                assert!(
                    count <= n * (n - 1) / 2 || spec.algorithm() == Algorithm::Heapsort,
                    "{spec} {perm:?} {count}"
                );
                if n <= 6 {
                    let trace = run(spec, &input).unwrap();
                    assert_eq!(trace.total_comparisons(), count);
                    let order = trace.final_order.as_slice();
                    assert!(
                        order.windows(2).all(|w| perm[w[0]] < perm[w[1]]),
                        "{spec} {perm:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn streamed_estimates_and_distances_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for spec in all_specs() {
        for n in [2, 3, 7, 31, 64, 100] {
            let values = shuffled(n, &mut rng);
            let input = HiddenList::new(values.clone()).unwrap();
            let mut last = None;
            let mut step = 0;
            run_with(spec, &input, |snap| {
                step += 1;
                assert_eq!(snap.step(), step);
                // distance first, then estimate, to exercise both lazy paths
                let tau = if step % 2 == 0 {
                    let t = snap.tau();
                    assert_eq!(t, tau_against(&values, snap.estimate()));
                    t
                } else {
                    let t = tau_against(&values, snap.estimate());
                    assert_eq!(snap.tau(), t);
                    t
                };
                let est = snap.estimate();
                let mut seen = est.to_vec();
                seen.sort_unstable();
                assert_eq!(seen, (0..n).collect::<Vec<_>>(), "{spec}");
                last = Some(tau);
                ControlFlow::Continue(())
            })
            .unwrap();
            assert_eq!(last, Some(0), "{spec} must end sorted");
        }
    }
}

#[test]
fn profile_matches_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for spec in all_specs() {
        let values = shuffled(40, &mut rng);
        let trace = run(spec, &HiddenList::new(values.clone()).unwrap()).unwrap();
        let total = trace.total_comparisons();
        let prof = profile(&trace, total + 10);
        assert_eq!(prof.tau_by_step.len(), total + 10);
        for k in 1..=total + 10 {
            let expected = tau_against(&values, trace.estimate_at(k).as_slice());
            assert_eq!(prof.tau_by_step[k - 1], expected, "{spec} step {k}");
        }
        assert!(prof.normalized().iter().all(|t| (0.0..=1.0).contains(t)));
        assert_eq!(profile(&trace, 0).tau_by_step.len(), total);
    }
}

#[test]
fn score_estimates_replay_from_comparison_log() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for spec in all_specs()
        .into_iter()
        .filter(|s| s.estimator() != Estimator::Natural)
    {
        let n = 30;
        let trace = run(spec, &HiddenList::new(shuffled(n, &mut rng)).unwrap()).unwrap();
        let mut po = PartialOrder::new(n).unwrap();
        for (step, est) in trace.steps.iter().zip(&trace.estimates) {
            let (lo, hi) = step.ordered();
            po.record(lo, hi).unwrap();
            let replayed = match spec.estimator() {
                Estimator::Rho => estimate_from_scores(&rho_scores(&po)),
                _ => estimate_from_scores(&delta_scores(&po)),
            };
            assert_eq!(&replayed, est, "{spec}");
        }
    }
}

/// Corsort's rule evaluated over every incomparable pair.
fn reference_pair(po: &PartialOrder) -> (usize, usize) {
    let delta = |i: usize| po.descendants(i) as i64 - po.ancestors(i) as i64;
    let info = |i: usize| po.descendants(i) + po.ancestors(i);
    po.incomparable_pairs()
        .into_iter()
        .min_by_key(|&(i, j)| ((delta(i) - delta(j)).abs(), info(i).max(info(j)), i, j))
        .unwrap()
}

proptest! {
    #[test]
    fn corsort_pair_matches_reference(
        (values, pairs) in (2..24usize).prop_flat_map(|n| (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec((0..n, 0..n), 0..3 * n),
        ))
    ) {
        let n = values.len();
        let mut po = PartialOrder::new(n).unwrap();
        for (i, j) in pairs {
            if po.is_total() {
                break;
            }
            prop_assert_eq!(corsort_next_pair(&po).unwrap(), reference_pair(&po));
            if po.incomparable(i, j) {
                let (lo, hi) = if values[i] < values[j] { (i, j) } else { (j, i) };
                po.record(lo, hi).unwrap();
            }
        }
    }
}

#[test]
fn corsort_examples() {
    assert_eq!(
        corsort_next_pair(&PartialOrder::new(2).unwrap()),
        Ok((0, 1))
    );
    assert_eq!(
        corsort_next_pair(&PartialOrder::new(3).unwrap()),
        Ok((0, 1))
    );
    let mut po = PartialOrder::new(4).unwrap();
    po.record(0, 1).unwrap();
    assert_eq!(corsort_next_pair(&po), Ok((2, 3)));
    let mut total = PartialOrder::new(2).unwrap();
    total.record(1, 0).unwrap();
    assert_eq!(corsort_next_pair(&total), Err(Error::AlreadyTotal));
}

fn check_corsort_queries(values: &[usize]) {
    let n = values.len();
    let trace = run(
        spec("corsort:rho"),
        &HiddenList::new(values.to_vec()).unwrap(),
    )
    .unwrap();
    assert!(trace.total_comparisons() <= n * (n - 1) / 2);
    let mut po = PartialOrder::new(n).unwrap();
    for step in &trace.steps {
        assert!(po.incomparable(step.i, step.j));
        let (lo, hi) = step.ordered();
        po.record(lo, hi).unwrap();
    }
    assert!(po.is_total());
}

#[test]
fn corsort_only_asks_open_questions() {
    for n in 1..=6 {
        for perm in (0..n).permutations(n) {
            check_corsort_queries(&perm);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        check_corsort_queries(&shuffled(64, &mut rng));
    }
}

fn median(mut xs: Vec<usize>) -> usize {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

#[test]
fn corsort_beats_quicksort_at_termination() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let inputs: Vec<HiddenList<usize>> = (0..101)
        .map(|_| HiddenList::new(shuffled(64, &mut rng)).unwrap())
        .collect();
    let counts = |s: SorterSpec| -> Vec<usize> {
        inputs
            .iter()
            .map(|i| count_comparisons(s, i).unwrap())
            .collect()
    };
    assert!(median(counts(spec("corsort:rho"))) < median(counts(spec("quicksort:natural"))));
}

fn worst_case(spec: SorterSpec, n: usize) -> usize {
    (0..n)
        .permutations(n)
        .map(|p| count_comparisons(spec, &HiddenList::new(p).unwrap()).unwrap())
        .max()
        .unwrap()
}

#[test]
fn ford_johnson_worst_cases() {
    let expected = [0, 1, 3, 5, 7, 10, 13, 16];
    for n in 1..=8 {
        // sum of ceil(log2(3k/4)) for k = 1..=n
        let bound: usize = (1..=n)
            .map(|k| (3.0 * k as f64 / 4.0).log2().ceil().max(0.0) as usize)
            .sum();
        assert_eq!(bound, expected[n - 1]);
        assert_eq!(worst_case(spec("ford_johnson:rho"), n), bound, "n = {n}");
    }
}

#[test]
fn mergesort_worst_case_bound() {
    let bound = |n: usize| {
        let c = n.next_power_of_two().trailing_zeros() as usize;
        n * c + 1 - (1 << c)
    };
    for n in 1..=8 {
        assert_eq!(worst_case(spec("mergesort_dfs:natural"), n), bound(n));
        assert!(worst_case(spec("mergesort_bfs:rho"), n) >= n - 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [17, 100, 257] {
        let input = HiddenList::new(shuffled(n, &mut rng)).unwrap();
        assert!(count_comparisons(spec("mergesort_dfs:natural"), &input).unwrap() <= bound(n));
    }
}

#[test]
fn mergesort_variants_agree_on_powers_of_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..50 {
        let input = HiddenList::new(shuffled(16, &mut rng)).unwrap();
        assert_eq!(
            count_comparisons(spec("mergesort_dfs:natural"), &input).unwrap(),
            count_comparisons(spec("mergesort_bfs:rho"), &input).unwrap()
        );
    }
}

#[test]
fn small_documented_runs() {
    let sorted = HiddenList::new(vec![1, 2, 3, 4]).unwrap();
    assert_eq!(count_comparisons(spec("quicksort:natural"), &sorted), Ok(6));
    for perm in (0..3).permutations(3) {
        let c = count_comparisons(spec("asort:rho"), &HiddenList::new(perm).unwrap()).unwrap();
        assert!((2..=3).contains(&c));
    }
    let trace = run(
        spec("heapsort:natural"),
        &HiddenList::new(vec![2, 0, 1]).unwrap(),
    )
    .unwrap();
    assert_eq!(trace.final_order.as_slice(), &[1, 2, 0]);
    assert_eq!(
        trace.estimates.last().map(|e| e.as_slice().to_vec()),
        Some(vec![1, 2, 0])
    );
}

#[test]
fn distances_stay_in_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 50;
    for spec in all_specs() {
        let input = HiddenList::new(shuffled(n, &mut rng)).unwrap();
        run_with(spec, &input, |snap| {
            assert!(snap.tau() <= max_tau(n));
            ControlFlow::Continue(())
        })
        .unwrap();
    }
}
