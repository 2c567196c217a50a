//! Sorted-map reference for `BoundedQueue` and a randomized replay driver.

use std::collections::{BTreeMap, BTreeSet};

use bmssp_core::{BoundedQueue, Dist};
use rand::Rng;

/// Min-merge queue over a `BTreeSet` of `(value, key)` pairs.
pub struct ReferenceQueue {
    batch: usize,
    bound: Dist<u64>,
    values: BTreeMap<u32, u64>,
    order: BTreeSet<(u64, u32)>,
}

impl ReferenceQueue {
    pub fn new(batch: usize, bound: Dist<u64>) -> Self {
        Self {
            batch,
            bound,
            values: BTreeMap::new(),
            order: BTreeSet::new(),
        }
    }

    pub fn min(&self) -> Option<u64> {
        self.order.first().map(|&(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn insert(&mut self, key: u32, value: u64) {
        match self.values.get(&key) {
            Some(&old) if old <= value => {}
            old => {
                if let Some(&old) = old {
                    self.order.remove(&(old, key));
                }
                self.values.insert(key, value);
                self.order.insert((value, key));
            }
        }
    }

    /// The `batch` smallest keys plus every key tied with the largest of
    /// them, and the smallest remaining value (or the bound when empty).
    pub fn pull(&mut self) -> (Dist<u64>, BTreeSet<u32>, Option<u64>) {
        let mut taken = BTreeSet::new();
        let mut last = None;
        while let Some(&(v, k)) = self.order.first() {
            if taken.len() >= self.batch && Some(v) != last {
                break;
            }
            self.order.pop_first();
            self.values.remove(&k);
            taken.insert(k);
            last = Some(v);
        }
        let bound = self.min().map_or(self.bound, Dist::Finite);
        (bound, taken, last)
    }
}

/// Pulls checked by [`replay_random_sequence`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ReplayCounts {
    pub pulls: usize,
    /// Pulls made while more than `batch` keys were stored.
    pub full_pulls: usize,
}

impl std::ops::AddAssign for ReplayCounts {
    fn add_assign(&mut self, other: Self) {
        self.pulls += other.pulls;
        self.full_pulls += other.full_pulls;
    }
}

/// Replays one random operation sequence against both queues; returns the
/// pulls checked, or a description of the first mismatch.
pub fn replay_random_sequence(rng: &mut impl Rng, batch: usize) -> Result<ReplayCounts, String> {
    let value_range: u64 = [4, 64, 1_000, 1_000_000][rng.random_range(0..4)];
    let bound = if rng.random_bool(0.5) {
        Dist::Infinite
    } else {
        Dist::Finite(value_range)
    };
    let key_space = rng.random_range(1..=3 * batch as u32 + 8);
    let ops = rng.random_range(1..=(4 * batch + 40).min(1200));
    // Percent of operations that pull; low rates let the queue grow past `batch`.
    let pull_rate = [2, 10, 30][rng.random_range(0..3)];

    let mut queue = BoundedQueue::<u32, u64>::new(batch, bound).map_err(|e| e.to_string())?;
    let mut reference = ReferenceQueue::new(batch, bound);
    let mut counts = ReplayCounts::default();

    for step in 0..ops {
        let roll = rng.random_range(0..100);
        if roll < pull_rate {
            counts.pulls += 1;
            if reference.len() > batch {
                counts.full_pulls += 1;
            }
            let got = queue.pull();
            let (_, expected, max_pulled) = reference.pull();
            let got_keys: BTreeSet<u32> = got.keys.iter().copied().collect();
            if got_keys.len() != got.keys.len() {
                return Err(format!(
                    "step {step}: duplicate keys in pull {:?}",
                    got.keys
                ));
            }
            if got_keys != expected {
                return Err(format!(
                    "step {step} (M={batch}): pulled {got_keys:?}, reference {expected:?}"
                ));
            }
            // Separating bound: above every pulled value, at most every remaining one.
            let remaining_min = reference.min().map_or(bound, Dist::Finite);
            let above = max_pulled.is_none_or(|v| Dist::Finite(v) < got.bound);
            if !above || got.bound > remaining_min {
                return Err(format!(
                    "step {step}: bound {:?} does not separate max pulled {max_pulled:?} from {remaining_min:?}",
                    got.bound
                ));
            }
        } else if roll < pull_rate + 20 {
            let ceiling = reference.min().unwrap_or(value_range);
            if ceiling == 0 {
                continue;
            }
            let floor = ceiling.saturating_sub(value_range / 4 + 1);
            // Mostly short batches; some long enough to be split into blocks.
            let max_len = if rng.random_bool(0.1) {
                2 * batch + 2
            } else {
                batch.min(6) + 2
            };
            let len = rng.random_range(0..=max_len);
            let pairs: Vec<(u32, u64)> = (0..len)
                .map(|_| {
                    (
                        rng.random_range(0..key_space),
                        rng.random_range(floor..ceiling),
                    )
                })
                .collect();
            for &(k, v) in &pairs {
                reference.insert(k, v);
            }
            queue.batch_prepend(pairs);
        } else {
            let key = rng.random_range(0..key_space);
            let value = rng.random_range(0..value_range);
            queue
                .insert(key, value)
                .map_err(|e| format!("step {step}: {e}"))?;
            reference.insert(key, value);
        }
        if queue.len() != reference.len() || queue.is_empty() != (reference.len() == 0) {
            return Err(format!(
                "step {step}: size {} vs reference {}",
                queue.len(),
                reference.len()
            ));
        }
    }

    // Drain: bounds must be non-decreasing and end at the queue bound.
    let mut last = Dist::Finite(0);
    while !queue.is_empty() {
        let full = reference.len() > batch;
        let got = queue.pull();
        let (_, expected, _) = reference.pull();
        let got_keys: BTreeSet<u32> = got.keys.into_iter().collect();
        if got_keys != expected {
            return Err(format!(
                "drain (M={batch}): pulled {got_keys:?}, reference {expected:?}"
            ));
        }
        if got.bound < last {
            return Err(format!(
                "drain: bound decreased from {last:?} to {:?}",
                got.bound
            ));
        }
        last = got.bound;
        counts.pulls += 1;
        counts.full_pulls += usize::from(full);
    }
    if queue.pull().bound != bound {
        return Err("empty queue did not return its bound".into());
    }
    Ok(counts)
}
