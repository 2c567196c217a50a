//! In-place order-statistic selection.

use std::cmp::Ordering;

/// How `k`-th element selection is performed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Groups-of-five median-of-medians pivoting: worst-case linear.
    #[default]
    MedianOfMedians,
    /// The standard library's introselect (`select_nth_unstable_by`).
    Introselect,
}

impl Selection {
    /// Reorders `v` so that `v[nth]` holds the element of rank `nth`, with
    /// everything before it `<=` and everything after it `>=`.
    ///
    /// Panics if `nth >= v.len()`.
    pub fn select_nth_by<T: Copy>(self, v: &mut [T], nth: usize, cmp: impl Fn(&T, &T) -> Ordering) {
        assert!(
            nth < v.len(),
            "selection rank {nth} out of bounds for length {}",
            v.len()
        );
        match self {
            Selection::MedianOfMedians => median_of_medians_select(v, nth, &cmp),
            Selection::Introselect => {
                v.select_nth_unstable_by(nth, cmp);
            }
        }
    }
}

const SMALL: usize = 10;

fn insertion_sort<T: Copy>(v: &mut [T], cmp: &impl Fn(&T, &T) -> Ordering) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && cmp(&v[j - 1], &v[j]) == Ordering::Greater {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// Three-way partition around `pivot`: returns `(lt, gt)` with
/// `v[..lt] < pivot`, `v[lt..gt] == pivot`, `v[gt..] > pivot`.
fn partition3<T: Copy>(v: &mut [T], pivot: T, cmp: &impl Fn(&T, &T) -> Ordering) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, v.len());
    while i < gt {
        match cmp(&v[i], &pivot) {
            Ordering::Less => {
                v.swap(lt, i);
                lt += 1;
                i += 1;
            }
            Ordering::Greater => {
                gt -= 1;
                v.swap(i, gt);
            }
            Ordering::Equal => i += 1,
        }
    }
    (lt, gt)
}

/// Moves the median of each full group of five to the front and returns the
/// median of those medians.
fn pivot_of<T: Copy>(v: &mut [T], cmp: &impl Fn(&T, &T) -> Ordering) -> T {
    let groups = v.len() / 5;
    for g in 0..groups {
        let group = &mut v[g * 5..g * 5 + 5];
        insertion_sort(group, cmp);
        v.swap(g, g * 5 + 2);
    }
    let medians = &mut v[..groups];
    median_of_medians_select(medians, groups / 2, cmp);
    medians[groups / 2]
}

fn median_of_medians_select<T: Copy>(v: &mut [T], nth: usize, cmp: &impl Fn(&T, &T) -> Ordering) {
    let (mut lo, mut hi) = (0, v.len());
    loop {
        let window = &mut v[lo..hi];
        if window.len() <= SMALL {
            insertion_sort(window, cmp);
            return;
        }
        let pivot = pivot_of(window, cmp);
        let (lt, gt) = partition3(window, pivot, cmp);
        let rank = nth - lo;
        if rank < lt {
            hi = lo + lt;
        } else if rank < gt {
            return;
        } else {
            lo += gt;
        }
    }
}
