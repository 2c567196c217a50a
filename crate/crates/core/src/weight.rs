//! Edge weights and tentative distances.

use std::fmt::{self, Debug, Display};

/// An ordered, additive edge weight.
///
/// Every algorithm in this crate only compares and adds weights, so any totally
/// ordered monoid with a zero works. Integer weights make results exact; floats
/// can be used through a total-order wrapper such as [`TotalF64`].
pub trait Weight: Copy + Ord + Debug + Send + Sync + 'static {
    const ZERO: Self;

    /// Path-length addition. Integer implementations saturate rather than wrap.
    fn add(self, other: Self) -> Self;
}

macro_rules! impl_int_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            const ZERO: Self = 0;

            #[inline]
            fn add(self, other: Self) -> Self {
                self.saturating_add(other)
            }
        }
    )*};
}

impl_int_weight!(u8, u16, u32, u64, u128, usize);

/// A non-negative `f64` with a total order, usable as a [`Weight`].
#[derive(Clone, Copy, Debug)]
pub struct TotalF64(f64);

impl TotalF64 {
    /// Returns `None` for NaN or negative values. `-0.0` becomes `0.0`.
    pub fn new(value: f64) -> Option<Self> {
        (value >= 0.0).then_some(Self(value + 0.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl PartialEq for TotalF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for TotalF64 {}

impl PartialOrd for TotalF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TotalF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Weight for TotalF64 {
    const ZERO: Self = TotalF64(0.0);

    #[inline]
    fn add(self, other: Self) -> Self {
        TotalF64(self.0 + other.0)
    }
}

/// A tentative distance: either a finite path length or unreached.
///
/// The derived order places every `Finite` value below `Infinite`, which also
/// makes this type usable as an upper bound (`Infinite` meaning "no bound").
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist<W> {
    Finite(W),
    Infinite,
}

impl<W: Copy> Dist<W> {
    pub fn finite(self) -> Option<W> {
        match self {
            Dist::Finite(w) => Some(w),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl<W: Display> Display for Dist<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(w) => write!(f, "{w}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}
