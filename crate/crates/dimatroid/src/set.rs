//! Subsets of a fixed ground set `{0..n-1}`, stored as `u64` bitsets.
//!
//! Every set carries its universe size; combining sets from different
//! universes is a programming error and panics. Public operations that take
//! user-supplied sets validate universes and return
//! [`Error::UniverseMismatch`](crate::Error::UniverseMismatch) instead.

use serde::{Serialize, Serializer};
use std::fmt;

/// Hard cap on ground-set size: one machine word.
pub const MAX_UNIVERSE: usize = 64;

/// A subset of `{0..universe-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    bits: u64,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_UNIVERSE, "universe {universe} exceeds {MAX_UNIVERSE}");
        ElementSet { universe, bits: 0 }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= MAX_UNIVERSE, "universe {universe} exceeds {MAX_UNIVERSE}");
        ElementSet { universe, bits: full_mask(universe) }
    }

    pub fn singleton(universe: usize, e: usize) -> Self {
        Self::empty(universe).with(e)
    }

    /// Builds a set from member indices, rejecting out-of-range members.
    pub fn from_members<I>(universe: usize, members: I) -> crate::Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if universe > MAX_UNIVERSE {
            return Err(crate::Error::TooLarge { n: universe, cap: MAX_UNIVERSE });
        }
        let mut bits = 0u64;
        for m in members {
            if m >= universe {
                return Err(crate::Error::InvalidSpec(format!(
                    "element {m} out of range for ground size {universe}"
                )));
            }
            bits |= 1 << m;
        }
        Ok(ElementSet { universe, bits })
    }

    pub(crate) fn from_bits(universe: usize, bits: u64) -> Self {
        debug_assert!(universe <= MAX_UNIVERSE);
        debug_assert_eq!(bits & !full_mask(universe), 0);
        ElementSet { universe, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.universe && self.bits & (1 << e) != 0
    }

    pub fn with(&self, e: usize) -> Self {
        assert!(e < self.universe, "element {e} out of range {}", self.universe);
        ElementSet { universe: self.universe, bits: self.bits | 1 << e }
    }

    pub fn without(&self, e: usize) -> Self {
        assert!(e < self.universe, "element {e} out of range {}", self.universe);
        ElementSet { universe: self.universe, bits: self.bits & !(1 << e) }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check(other);
        ElementSet { universe: self.universe, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other);
        ElementSet { universe: self.universe, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check(other);
        ElementSet { universe: self.universe, bits: self.bits & !other.bits }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.check(other);
        ElementSet { universe: self.universe, bits: self.bits ^ other.bits }
    }

    pub fn complement(&self) -> Self {
        ElementSet { universe: self.universe, bits: !self.bits & full_mask(self.universe) }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.check(other);
        self.bits & other.bits == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across universes {} and {}",
            self.universe, other.universe
        );
    }
}

pub(crate) fn full_mask(universe: usize) -> u64 {
    if universe == 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.universe)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
