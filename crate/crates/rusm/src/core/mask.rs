//! Ground sets and bit-mask subsets.
//!
//! A subset of a ground set of at most [`MAX_GROUND`] elements is a single
//! machine word, so exhaustive enumeration over all `2^n` subsets, popcounts
//! and set algebra are all O(1)-per-step word operations.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, RusmError};

/// Largest supported ground-set size for the bit-mask representation.
pub const MAX_GROUND: usize = 63;

/// A fixed finite universe `{0, 1, .., n-1}` with optional element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(RusmError::param("n", "ground set must be non-empty"));
        }
        if n > MAX_GROUND {
            return Err(RusmError::GroundSetTooLarge { n, max: MAX_GROUND });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self> {
        let mut ground = GroundSet::new(n)?;
        if labels.len() != n {
            return Err(RusmError::param(
                "labels",
                format!("expected {n} labels, got {}", labels.len()),
            ));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(RusmError::param("labels", format!("duplicate label `{a}`")));
            }
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Label of element `u`, falling back to its index.
    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(ls) if u < ls.len() => ls[u].clone(),
            _ => u.to_string(),
        }
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// All `2^n` subsets in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0u64..(1u64 << self.n)).map(SubsetMask)
    }

    /// Human-readable rendering of a subset, e.g. `{a, b1}`.
    pub fn describe(&self, s: SubsetMask) -> String {
        let names: Vec<String> = s.iter().map(|u| self.label(u)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// A subset of the ground set, one bit per element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 0 {
            SubsetMask(0)
        } else {
            SubsetMask(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(u: usize) -> Self {
        debug_assert!(u < MAX_GROUND);
        SubsetMask(1u64 << u)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u64;
        for u in elements {
            debug_assert!(u < MAX_GROUND);
            bits |= 1u64 << u;
        }
        SubsetMask(bits)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, u: usize) -> bool {
        u < 64 && (self.0 >> u) & 1 == 1
    }

    /// `S + u`.
    pub fn with(self, u: usize) -> Self {
        SubsetMask(self.0 | (1u64 << u))
    }

    /// `S - u`.
    pub fn without(self, u: usize) -> Self {
        SubsetMask(self.0 & !(1u64 << u))
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// `N \ S` relative to a ground set of size `n`.
    pub fn complement_in(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    /// Elements in ascending index order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All submasks of `self`, in ascending mask order, including `∅` and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, cur: 0, done: false }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, u) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, "}}")
    }
}

/// Masks serialize as sorted element-index arrays so reports stay readable.
impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let elems: Vec<u32> = self.iter().map(|u| u as u32).collect();
        elems.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<u32>::deserialize(deserializer)?;
        let mut bits = 0u64;
        for u in elems {
            if u as usize >= MAX_GROUND {
                return Err(D::Error::custom(format!("element index {u} out of range")));
            }
            bits |= 1u64 << u;
        }
        Ok(SubsetMask(bits))
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let u = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(u)
    }
}

pub struct Subsets {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        let out = self.cur;
        // standard submask-enumeration step: (cur - mask) & mask walks all
        // submasks in ascending numeric order and wraps to 0 after `mask`
        self.cur = self.cur.wrapping_sub(self.mask) & self.mask;
        if self.cur == 0 {
            self.done = true;
        }
        Some(SubsetMask(out))
    }
}
