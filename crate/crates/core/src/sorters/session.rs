use std::ops::ControlFlow;

use super::worklist::WorkList;
use super::{Comparison, Estimator};
use crate::error::Error;
use crate::estimators::{delta_key, key_index, rho_key};
use crate::metrics::permutation_inversions;
use crate::poset::PartialOrder;

/// Why an algorithm stopped before finishing.
#[derive(Debug)]
pub(crate) enum Halt {
    Interrupted,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

pub(crate) type Step<T> = Result<T, Halt>;

pub(crate) type Observer<'o> = dyn FnMut(&mut Snapshot<'_>) -> ControlFlow<()> + 'o;

/// Scratch buffers reused across snapshots of one run.
#[derive(Default)]
struct Scratch {
    keys: Vec<u64>,
    order: Vec<usize>,
    ranks: Vec<usize>,
    tree: Vec<u32>,
}

/// Comparison oracle shared by every algorithm.
///
/// Each call to [`Session::less`] is one step. The estimate for that step is
/// published lazily, right before the next comparison or at the end of the
/// run, so classic sorts can rearrange their working list in between.
pub(crate) struct Session<'a, 'o, K> {
    values: &'a [K],
    estimator: Estimator,
    pub(crate) poset: Option<PartialOrder>,
    pub(crate) work: WorkList,
    count: usize,
    pending: Option<Comparison>,
    observer: Option<&'a mut Observer<'o>>,
    rank: Vec<usize>,
    scratch: Scratch,
}

impl<'a, 'o, K: Ord> Session<'a, 'o, K> {
    pub(crate) fn new(
        values: &'a [K],
        estimator: Estimator,
        keep_poset: bool,
        observer: Option<&'a mut Observer<'o>>,
    ) -> Self {
        let n = values.len();
        let rank = if observer.is_some() {
            let mut by_rank: Vec<usize> = (0..n).collect();
            by_rank.sort_by(|&i, &j| values[i].cmp(&values[j]));
            let mut rank = vec![0; n];
            for (r, &i) in by_rank.iter().enumerate() {
                rank[i] = r;
            }
            rank
        } else {
            Vec::new()
        };
        let track = observer.is_some() && estimator == Estimator::Natural;
        let needs_poset = keep_poset || (observer.is_some() && estimator != Estimator::Natural);
        Self {
            values,
            estimator,
            poset: needs_poset.then(|| PartialOrder::new(n).expect("nonempty input")),
            work: WorkList::new(n, track.then(|| rank.clone())),
            count: 0,
            pending: None,
            observer,
            rank,
            scratch: Scratch::default(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn comparisons(&self) -> usize {
        self.count
    }

    /// Compares the hidden values at `i` and `j`: true iff `values[i] < values[j]`.
    pub(crate) fn less(&mut self, i: usize, j: usize) -> Step<bool> {
        self.flush()?;
        if i == j {
            return Err(Error::SelfComparison(i).into());
        }
        let lt = match self.values[i].cmp(&self.values[j]) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => return Err(Error::DuplicateValues(i, j).into()),
        };
        if let Some(po) = self.poset.as_mut() {
            if lt {
                po.record(i, j)?;
            } else {
                po.record(j, i)?;
            }
        }
        self.count += 1;
        self.pending = Some(Comparison { i, j, less: lt });
        Ok(lt)
    }

    /// Like [`Session::less`], but answers from the recorded partial order
    /// without a comparison when the outcome is already implied.
    pub(crate) fn less_unless_known(&mut self, i: usize, j: usize) -> Step<bool> {
        if let Some(po) = self.poset.as_ref() {
            if i != j && po.leq(i, j) {
                return Ok(true);
            }
            if i != j && po.leq(j, i) {
                return Ok(false);
            }
        }
        self.less(i, j)
    }

    /// Publishes the estimate of the last comparison, if any.
    fn flush(&mut self) -> Step<()> {
        let Some(comparison) = self.pending.take() else {
            return Ok(());
        };
        let Some(observer) = self.observer.as_mut() else {
            return Ok(());
        };
        let view = match (self.estimator, self.poset.as_ref()) {
            (Estimator::Natural, _) => View::List(&self.work),
            (kind, Some(po)) => View::Scores { po, kind },
            (_, None) => unreachable!("score estimators always keep a poset"),
        };
        let mut snapshot = Snapshot {
            step: self.count,
            comparison,
            view,
            rank: &self.rank,
            scratch: &mut self.scratch,
            estimate_ready: false,
        };
        match observer(&mut snapshot) {
            ControlFlow::Continue(()) => Ok(()),
            ControlFlow::Break(()) => Err(Halt::Interrupted),
        }
    }

    /// Ends the run: publishes the last step and checks `order` is sorted.
    pub(crate) fn finish(&mut self, order: Vec<usize>) -> Step<Vec<usize>> {
        self.flush()?;
        let sorted = order.len() == self.values.len()
            && order
                .windows(2)
                .all(|w| self.values[w[0]] < self.values[w[1]]);
        if !sorted {
            return Err(Error::Unsorted.into());
        }
        Ok(order)
    }
}

enum View<'s> {
    Scores {
        po: &'s PartialOrder,
        kind: Estimator,
    },
    List(&'s WorkList),
}

/// The state of a run right after one comparison.
///
/// The estimate and its distance to the true order are computed on demand,
/// so observers that only need one of them do not pay for the other.
pub struct Snapshot<'s> {
    step: usize,
    comparison: Comparison,
    view: View<'s>,
    rank: &'s [usize],
    scratch: &'s mut Scratch,
    estimate_ready: bool,
}

impl Snapshot<'_> {
    /// Number of comparisons performed so far (1-based step index).
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    /// The current estimate `X_k`.
    pub fn estimate(&mut self) -> &[usize] {
        if !self.estimate_ready {
            let order = &mut self.scratch.order;
            match &self.view {
                View::Scores { po, kind } => {
                    let keys = &mut self.scratch.keys;
                    refresh_keys(keys, po, *kind);
                    // keys still sit in the previous estimate's order, which is
                    // nearly sorted; the stable sort exploits the existing runs
                    keys.sort();
                    order.clear();
                    order.extend(keys.iter().map(|&k| key_index(k)));
                }
                View::List(work) => work.write_view(order),
            }
            self.estimate_ready = true;
        }
        &self.scratch.order
    }

    /// Kendall-tau distance between the current estimate and the true order.
    pub fn tau(&mut self) -> u64 {
        match &self.view {
            View::List(work) => work.view_tau(),
            View::Scores { .. } => {
                self.estimate();
                let rank = self.rank;
                let Scratch {
                    order, ranks, tree, ..
                } = &mut *self.scratch;
                ranks.clear();
                ranks.extend(order.iter().map(|&i| rank[i]));
                permutation_inversions(ranks, tree)
            }
        }
    }
}

/// Recomputes the packed keys in place, keeping their current order.
fn refresh_keys(keys: &mut Vec<u64>, po: &PartialOrder, kind: Estimator) {
    let n = po.len();
    if keys.len() != n {
        keys.clear();
        keys.extend(0..n as u64);
    }
    let (desc, anc) = (po.descendant_counts(), po.ancestor_counts());
    for k in keys.iter_mut() {
        let i = key_index(*k);
        *k = match kind {
            Estimator::Delta => delta_key(desc[i], anc[i], n, i),
            _ => rho_key(desc[i], anc[i], i),
        };
    }
}
