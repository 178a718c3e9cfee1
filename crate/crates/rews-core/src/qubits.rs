//! Subsets of qubit positions, used to address tensor-factor blocks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of 1-based qubit indices packed as a mask (bit j−1 ⇔ qubit j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QubitSet {
    mask: u32,
}

impl QubitSet {
    pub const EMPTY: QubitSet = QubitSet { mask: 0 };

    pub fn from_mask(mask: u32) -> Self {
        QubitSet { mask }
    }

    pub fn singleton(qubit: u32) -> Self {
        debug_assert!(qubit >= 1);
        QubitSet {
            mask: 1 << (qubit - 1),
        }
    }

    pub fn full(n: u32) -> Self {
        QubitSet {
            mask: ((1u64 << n) - 1) as u32,
        }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, qubit: u32) -> bool {
        qubit >= 1 && (self.mask >> (qubit - 1)) & 1 == 1
    }

    pub fn union(self, other: QubitSet) -> QubitSet {
        QubitSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn complement(self, n: u32) -> QubitSet {
        QubitSet {
            mask: Self::full(n).mask & !self.mask,
        }
    }

    pub fn is_within(self, n: u32) -> bool {
        self.mask & !Self::full(n).mask == 0
    }

    /// Qubit indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mask = self.mask;
        (1..=32u32).filter(move |q| (mask >> (q - 1)) & 1 == 1)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Validates a nonempty proper subset of {1..n}.
    pub fn check_proper_subset(self, n: u32) -> Result<()> {
        if !self.is_within(n) {
            return Err(Error::InvalidSubset {
                detail: format!("{self} is not contained in {{1..{n}}}"),
            });
        }
        if self.is_empty() || self == Self::full(n) {
            return Err(Error::InvalidSubset {
                detail: format!("{self} must be a nonempty proper subset of {{1..{n}}}"),
            });
        }
        Ok(())
    }

    /// Packs the bits of `x` at this set's qubit positions into a local
    /// index, the smallest member becoming the local most significant bit.
    ///
    /// Qubit j of an n-qubit index occupies bit position n − j.
    pub fn extract(self, x: u64, n: u32) -> u64 {
        let mut local = 0u64;
        for q in self.iter() {
            local = (local << 1) | ((x >> (n - q)) & 1);
        }
        local
    }

    /// Inverse of [`extract`](Self::extract): spreads a local index back onto
    /// this set's qubit positions (all other positions zero).
    pub fn scatter(self, local: u64, n: u32) -> u64 {
        let k = self.len();
        let mut x = 0u64;
        for (t, q) in self.iter().enumerate() {
            if (local >> (k as usize - 1 - t)) & 1 == 1 {
                x |= 1u64 << (n - q);
            }
        }
        x
    }

    /// All k-element subsets of {1..n} in ascending mask order.
    pub fn subsets_of_size(n: u32, k: u32) -> impl Iterator<Item = QubitSet> {
        SubsetIter::new(n, k)
    }

    /// Every unordered bipartition of {1..n}, visited once as the side that
    /// contains qubit 1, in ascending mask order.
    pub fn bipartition_sides(n: u32) -> impl Iterator<Item = QubitSet> {
        let full = Self::full(n).mask;
        (1..full).step_by(2).map(QubitSet::from_mask)
    }
}

/// Ascending enumeration of fixed-size masks (Gosper's hack).
struct SubsetIter {
    current: u32,
    limit: u32,
    done: bool,
}

impl SubsetIter {
    fn new(n: u32, k: u32) -> Self {
        if k == 0 || k > n {
            return SubsetIter {
                current: 0,
                limit: 0,
                done: true,
            };
        }
        SubsetIter {
            current: (1 << k) - 1,
            limit: QubitSet::full(n).mask,
            done: false,
        }
    }
}

impl Iterator for SubsetIter {
    type Item = QubitSet;

    fn next(&mut self) -> Option<QubitSet> {
        if self.done || self.current > self.limit {
            return None;
        }
        let out = QubitSet::from_mask(self.current);
        let c = self.current;
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        if ripple > self.limit || low == 0 {
            self.done = true;
        } else {
            self.current = ripple | (((c ^ ripple) >> 2) / low);
        }
        Some(out)
    }
}

impl fmt::Display for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "q{q}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for QubitSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extract_and_scatter_invert() {
        let s = QubitSet::from_mask(0b101); // qubits 1 and 3 of n = 4
        let n = 4;
        for local in 0..4u64 {
            let x = s.scatter(local, n);
            assert_eq!(s.extract(x, n), local);
        }
        // qubit 1 is the MSB of both the global and the local index
        assert_eq!(s.scatter(0b10, n), 0b1000);
        assert_eq!(s.scatter(0b01, n), 0b0010);
    }

    #[test]
    fn subsets_are_ascending_and_complete() {
        let subs: Vec<u32> = QubitSet::subsets_of_size(4, 2).map(|s| s.mask()).collect();
        assert_eq!(subs, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(QubitSet::subsets_of_size(6, 3).count(), 20);
        assert_eq!(QubitSet::subsets_of_size(3, 3).count(), 1);
        assert_eq!(QubitSet::subsets_of_size(3, 4).count(), 0);
    }

    #[test]
    fn bipartitions_contain_qubit_one_once_each() {
        let sides: Vec<u32> = QubitSet::bipartition_sides(3).map(|s| s.mask()).collect();
        assert_eq!(sides, vec![0b001, 0b011, 0b101]);
        assert!(QubitSet::bipartition_sides(1).next().is_none());
    }

    #[test]
    fn proper_subset_validation() {
        assert!(QubitSet::from_mask(0b01).check_proper_subset(2).is_ok());
        assert!(QubitSet::EMPTY.check_proper_subset(2).is_err());
        assert!(QubitSet::full(2).check_proper_subset(2).is_err());
        assert!(QubitSet::from_mask(0b100).check_proper_subset(2).is_err());
    }

    #[test]
    fn display_lists_qubits() {
        assert_eq!(QubitSet::from_mask(0b101).to_string(), "{q1,q3}");
        assert_eq!(QubitSet::EMPTY.to_string(), "{}");
    }
}
