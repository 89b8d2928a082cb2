//! Strict partitions: the index set of every Q-function expansion.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition with strictly decreasing positive parts. The empty partition is allowed.
///
/// Ordering is by size first, then decreasing lexicographic on the parts, so
/// `(5) < (4,1) < (3,2)` and every partition of 4 precedes every partition of 5.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if ok {
            Ok(StrictPartition(parts))
        } else {
            Err(Error::NonStrict(parts))
        }
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts, written `l(lambda)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        StrictPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All strict partitions of `weight`, in decreasing lexicographic order.
pub fn enumerate_strict(weight: u32) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(weight, weight, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
    if remaining == 0 {
        out.push(StrictPartition(current.clone()));
        return;
    }
    // The largest usable part is bounded by both the remainder and the previous part.
    for part in (1..=remaining.min(max_part)).rev() {
        // parts below `part` are distinct, so they sum to at most part*(part-1)/2
        if part + part * (part - 1) / 2 < remaining {
            break;
        }
        current.push(part);
        fill(remaining - part, part - 1, current, out);
        current.pop();
    }
}

/// Concatenation of [`enumerate_strict`] for weights `0..=max_weight`.
pub fn enumerate_strict_upto(max_weight: u32) -> Vec<StrictPartition> {
    (0..=max_weight).flat_map(enumerate_strict).collect()
}

/// Partitions of `weight` into odd parts, as exponent vectors indexed by `(k-1)/2`.
///
/// These label the monomials of weight `weight` in the odd times.
pub fn odd_part_exponents(weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut exps = Vec::new();
    let top = if weight % 2 == 1 { weight } else { weight.saturating_sub(1) };
    odd_fill(weight, top, &mut exps, &mut out);
    out
}

fn odd_fill(remaining: u32, max_odd: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        let mut e = exps.clone();
        while e.last() == Some(&0) {
            e.pop();
        }
        out.push(e);
        return;
    }
    if max_odd == 0 {
        return;
    }
    let idx = ((max_odd - 1) / 2) as usize;
    if exps.len() <= idx {
        exps.resize(idx + 1, 0);
    }
    for count in (0..=remaining / max_odd).rev() {
        exps[idx] = count;
        let next = if max_odd >= 3 { max_odd - 2 } else { 0 };
        odd_fill(remaining - count * max_odd, next, exps, out);
    }
    exps[idx] = 0;
}
