//! Block-based partial priority queue with `insert`, `batch_prepend` and `pull`.
//!
//! Values live in unsorted blocks of roughly `M` entries. Two block sequences
//! are kept:
//!
//! * the *prepend region*, a deque of blocks filled by [`BoundedQueue::batch_prepend`],
//!   ordered so that every value of a block is `<=` every value of the next;
//! * the *insert region*, blocks indexed by an upper bound in a `BTreeMap`.
//!   A block with bound `b` holds values in `(previous bound, b]`, so bounds
//!   are strictly increasing. An insert goes to the first block whose bound is
//!   `>=` the value; a block that grows past `M` is split around its median.
//!
//! Each key keeps a single live entry, tracked by a stamp in a hash map.
//! Superseded entries stay in their blocks and are dropped when next touched.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use thiserror::Error;

use crate::select::Selection;
use crate::weight::Dist;

/// An upper bound: `Infinite` means unbounded.
pub type Bound<V> = Dist<V>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueueError {
    #[error("batch size must be positive")]
    ZeroBatch,
    #[error("value is not below the queue bound")]
    ValueNotBelowBound,
}

#[derive(Clone, Copy, Debug)]
struct Entry<K, V> {
    key: K,
    value: V,
    stamp: u64,
}

/// Operation counters, for checking amortized cost empirically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueueStats {
    pub inserts: u64,
    pub prepended: u64,
    pub pulls: u64,
    pub pulled: u64,
    pub splits: u64,
    /// Entries examined by pulls, splits and minimum scans.
    pub scanned: u64,
}

/// Result of [`BoundedQueue::pull`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pulled<K, V> {
    /// Strictly above every pulled value and at most every remaining value;
    /// equal to the queue bound once the queue is empty.
    pub bound: Bound<V>,
    pub keys: Vec<K>,
}

#[derive(Debug)]
pub struct BoundedQueue<K, V> {
    batch: usize,
    bound: Bound<V>,
    selection: Selection,
    best: HashMap<K, (V, u64)>,
    next_stamp: u64,
    prepended: VecDeque<Vec<Entry<K, V>>>,
    inserted: BTreeMap<Bound<V>, Vec<Entry<K, V>>>,
    stats: QueueStats,
}

impl<K, V> BoundedQueue<K, V>
where
    K: Copy + Eq + Hash,
    V: Copy + Ord,
{
    /// An empty queue pulling batches of `batch` keys, holding values `< bound`.
    pub fn new(batch: usize, bound: Bound<V>) -> Result<Self, QueueError> {
        Self::with_selection(batch, bound, Selection::default())
    }

    pub fn with_selection(
        batch: usize,
        bound: Bound<V>,
        selection: Selection,
    ) -> Result<Self, QueueError> {
        if batch == 0 {
            return Err(QueueError::ZeroBatch);
        }
        Ok(Self {
            batch,
            bound,
            selection,
            best: HashMap::new(),
            next_stamp: 0,
            prepended: VecDeque::new(),
            inserted: BTreeMap::new(),
            stats: QueueStats::default(),
        })
    }

    pub fn batch_size(&self) -> usize {
        self.batch
    }

    pub fn bound(&self) -> Bound<V> {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    pub fn stats(&self) -> QueueStats {
        self.stats
    }

    /// Current value of `key`, if stored.
    pub fn get(&self, key: &K) -> Option<V> {
        self.best.get(key).map(|&(v, _)| v)
    }

    #[inline]
    fn is_live(&self, e: &Entry<K, V>) -> bool {
        matches!(self.best.get(&e.key), Some(&(_, s)) if s == e.stamp)
    }

    /// Records `value` for `key` if it beats the stored one; returns the stamp.
    fn claim(&mut self, key: K, value: V) -> Option<u64> {
        if matches!(self.best.get(&key), Some(&(old, _)) if old <= value) {
            return None;
        }
        let stamp = self.next_stamp;
        self.next_stamp += 1;
        self.best.insert(key, (value, stamp));
        Some(stamp)
    }

    /// Stores `(key, value)`, keeping the smaller value if `key` is present.
    pub fn insert(&mut self, key: K, value: V) -> Result<(), QueueError> {
        if Dist::Finite(value) >= self.bound {
            return Err(QueueError::ValueNotBelowBound);
        }
        self.stats.inserts += 1;
        let Some(stamp) = self.claim(key, value) else {
            return Ok(());
        };
        let entry = Entry { key, value, stamp };
        let slot = self
            .inserted
            .range(Dist::Finite(value)..)
            .next()
            .map(|(b, _)| *b)
            .unwrap_or(self.bound);
        let block = self.inserted.entry(slot).or_default();
        block.push(entry);
        if block.len() > self.batch {
            let block = self.inserted.remove(&slot).expect("block just touched");
            self.place_inserted(slot, block);
        }
        Ok(())
    }

    /// Adds pairs whose values are all smaller than every stored value.
    ///
    /// Duplicate keys keep their minimum. Violating the ordering precondition
    /// is only detected in debug builds.
    pub fn batch_prepend(&mut self, pairs: impl IntoIterator<Item = (K, V)>) {
        let mut smallest: HashMap<K, V> = HashMap::new();
        for (key, value) in pairs {
            smallest
                .entry(key)
                .and_modify(|v| *v = (*v).min(value))
                .or_insert(value);
        }
        if smallest.is_empty() {
            return;
        }
        #[cfg(debug_assertions)]
        {
            let top = smallest.values().max().copied().expect("non-empty");
            debug_assert!(
                Dist::Finite(top) < self.bound,
                "prepended value not below bound"
            );
            if let Some(min) = self.peek_min() {
                debug_assert!(top < min, "prepended value not below stored values");
            }
        }
        self.stats.prepended += smallest.len() as u64;
        let mut entries = Vec::with_capacity(smallest.len());
        for (key, value) in smallest {
            if let Some(stamp) = self.claim(key, value) {
                entries.push(Entry { key, value, stamp });
            }
        }
        if entries.len() <= self.batch {
            self.prepended.push_front(entries);
            return;
        }
        let mut chunks = Vec::new();
        self.chunk(&mut entries, self.batch.div_ceil(2), &mut chunks);
        for chunk in chunks.into_iter().rev() {
            self.prepended.push_front(chunk);
        }
    }

    /// Removes and returns up to `M` keys with the smallest values, plus any
    /// keys tied with the largest of them, and a separating bound.
    pub fn pull(&mut self) -> Pulled<K, V> {
        self.stats.pulls += 1;
        let m = self.batch;

        let mut from_prepended = Vec::new();
        while from_prepended.len() < m {
            let Some(block) = self.prepended.pop_front() else {
                break;
            };
            self.take_live(block, &mut from_prepended);
        }
        let mut from_inserted = Vec::new();
        let mut last_bound = None;
        while from_inserted.len() < m {
            let Some((b, block)) = self.inserted.pop_first() else {
                break;
            };
            last_bound = Some(b);
            self.take_live(block, &mut from_inserted);
        }

        let total = from_prepended.len() + from_inserted.len();
        if total == 0 {
            return Pulled {
                bound: self.bound,
                keys: Vec::new(),
            };
        }
        let threshold = if total > m {
            let mut values: Vec<V> = from_prepended
                .iter()
                .chain(&from_inserted)
                .map(|e| e.value)
                .collect();
            self.selection
                .select_nth_by(&mut values, m - 1, |a, b| a.cmp(b));
            values[m - 1]
        } else {
            from_prepended
                .iter()
                .chain(&from_inserted)
                .map(|e| e.value)
                .max()
                .expect("non-empty")
        };

        // Prepend blocks may share a value across the block boundary.
        while let Some(block) = self.prepended.front() {
            if !block.iter().any(|e| e.value <= threshold) {
                break;
            }
            let block = self.prepended.pop_front().expect("front exists");
            self.take_live(block, &mut from_prepended);
        }

        let mut keys = Vec::with_capacity(m);
        let rest_prepended: Vec<_> = from_prepended
            .into_iter()
            .filter(|e| {
                let keep = e.value > threshold;
                if !keep {
                    keys.push(e.key);
                }
                keep
            })
            .collect();
        let rest_inserted: Vec<_> = from_inserted
            .into_iter()
            .filter(|e| {
                let keep = e.value > threshold;
                if !keep {
                    keys.push(e.key);
                }
                keep
            })
            .collect();
        for key in &keys {
            self.best.remove(key);
        }
        if !rest_prepended.is_empty() {
            self.prepended.push_front(rest_prepended);
        }
        if let (Some(b), false) = (last_bound, rest_inserted.is_empty()) {
            self.place_inserted(b, rest_inserted);
        }

        self.stats.pulled += keys.len() as u64;
        let bound = match self.min_remaining() {
            Some(v) => Dist::Finite(v),
            None => self.bound,
        };
        Pulled { bound, keys }
    }

    fn take_live(&mut self, block: Vec<Entry<K, V>>, out: &mut Vec<Entry<K, V>>) {
        self.stats.scanned += block.len() as u64;
        out.extend(block.into_iter().filter(|e| self.is_live(e)));
    }

    /// Smallest live value, dropping leading blocks that hold only stale entries.
    fn min_remaining(&mut self) -> Option<V> {
        let mut best = None;
        while let Some(block) = self.prepended.front_mut() {
            self.stats.scanned += block.len() as u64;
            let live =
                |e: &Entry<K, V>| matches!(self.best.get(&e.key), Some(&(_, s)) if s == e.stamp);
            block.retain(live);
            if let Some(v) = block.iter().map(|e| e.value).min() {
                best = Some(v);
                break;
            }
            self.prepended.pop_front();
        }
        while let Some(mut slot) = self.inserted.first_entry() {
            let block = slot.get_mut();
            self.stats.scanned += block.len() as u64;
            let live =
                |e: &Entry<K, V>| matches!(self.best.get(&e.key), Some(&(_, s)) if s == e.stamp);
            block.retain(live);
            if let Some(v) = block.iter().map(|e| e.value).min() {
                best = Some(best.map_or(v, |b: V| b.min(v)));
                break;
            }
            slot.remove();
        }
        best
    }

    /// Like `min_remaining` but read-only.
    #[cfg(debug_assertions)]
    fn peek_min(&self) -> Option<V> {
        let first_live = |block: &Vec<Entry<K, V>>| {
            block
                .iter()
                .filter(|e| self.is_live(e))
                .map(|e| e.value)
                .min()
        };
        let a = self.prepended.iter().find_map(first_live);
        let b = self.inserted.values().find_map(first_live);
        match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Stores an insert-region block with bound `slot`, splitting it around
    /// its median while it holds more than `M` live entries.
    fn place_inserted(&mut self, slot: Bound<V>, mut block: Vec<Entry<K, V>>) {
        self.stats.scanned += block.len() as u64;
        block.retain(|e| self.is_live(e));
        if block.is_empty() {
            return;
        }
        if block.len() <= self.batch {
            self.inserted.insert(slot, block);
            return;
        }
        self.stats.splits += 1;
        let mid = block.len() / 2;
        self.selection
            .select_nth_by(&mut block, mid, |a, b| a.value.cmp(&b.value));
        let pivot = block[mid].value;
        let (mut lower, upper): (Vec<_>, Vec<_>) =
            block.into_iter().partition(|e| e.value <= pivot);
        if upper.is_empty() {
            // The pivot is the block maximum: split off the strictly smaller values.
            let (below, at): (Vec<_>, Vec<_>) = lower.into_iter().partition(|e| e.value < pivot);
            if below.is_empty() {
                // All values equal; the block cannot be separated.
                self.inserted.insert(slot, at);
                return;
            }
            let below_max = below.iter().map(|e| e.value).max().expect("non-empty");
            self.place_inserted(slot, at);
            self.place_inserted(Dist::Finite(below_max), below);
            return;
        }
        lower.shrink_to_fit();
        self.place_inserted(slot, upper);
        self.place_inserted(Dist::Finite(pivot), lower);
    }

    /// Splits `entries` into value-ordered chunks of at most `max` entries.
    fn chunk(&mut self, entries: &mut [Entry<K, V>], max: usize, out: &mut Vec<Vec<Entry<K, V>>>) {
        if entries.len() <= max {
            out.push(entries.to_vec());
            return;
        }
        self.stats.splits += 1;
        self.stats.scanned += entries.len() as u64;
        let mid = entries.len() / 2;
        self.selection
            .select_nth_by(entries, mid, |a, b| a.value.cmp(&b.value));
        let (lower, upper) = entries.split_at_mut(mid);
        self.chunk(lower, max, out);
        self.chunk(upper, max, out);
    }
}
