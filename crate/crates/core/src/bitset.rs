//! Vertex sets as word-packed bitsets, bound to a universe size.

use serde::{Deserialize, Serialize};

pub(crate) const WORD_BITS: usize = 64;

#[inline(always)]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A subset of the vertices {0..n-1} of a specific graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: u32,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: u32) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n as usize)],
        }
    }

    pub fn full(n: u32) -> Self {
        let mut set = Self::empty(n);
        for w in 0..set.words.len() {
            set.words[w] = !0u64;
        }
        set.trim();
        set
    }

    pub fn from_members(n: u32, members: &[u32]) -> Self {
        let mut set = Self::empty(n);
        for &v in members {
            assert!(v < n, "vertex {v} out of range for universe {n}");
            set.insert(v);
        }
        set
    }

    /// Clears bits at or beyond `n`.
    fn trim(&mut self) {
        let rem = self.n as usize % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline(always)]
    pub fn universe(&self) -> u32 {
        self.n
    }

    #[inline(always)]
    pub fn contains(&self, v: u32) -> bool {
        debug_assert!(v < self.n);
        self.words[v as usize / WORD_BITS] >> (v as usize % WORD_BITS) & 1 == 1
    }

    #[inline(always)]
    pub fn insert(&mut self, v: u32) {
        debug_assert!(v < self.n);
        self.words[v as usize / WORD_BITS] |= 1u64 << (v as usize % WORD_BITS);
    }

    #[inline(always)]
    pub fn remove(&mut self, v: u32) {
        debug_assert!(v < self.n);
        self.words[v as usize / WORD_BITS] &= !(1u64 << (v as usize % WORD_BITS));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(wi as u32 * WORD_BITS as u32 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<u32>::deserialize(deserializer)?;
        let n = members.iter().copied().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_members(n, &members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let mut a = VertexSet::from_members(70, &[0, 5, 63, 64, 69]);
        assert_eq!(a.len(), 5);
        assert!(a.contains(64));
        assert!(!a.contains(1));
        a.remove(64);
        assert_eq!(a.to_vec(), vec![0, 5, 63, 69]);

        let b = VertexSet::from_members(70, &[5, 69]);
        assert!(b.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));

        let mut c = a.clone();
        c.subtract(&b);
        assert_eq!(c.to_vec(), vec![0, 63]);
        assert!(c.is_disjoint(&b));

        c.union_with(&b);
        assert_eq!(c.to_vec(), vec![0, 5, 63, 69]);
    }

    #[test]
    fn full_respects_universe_boundary() {
        for n in [1u32, 63, 64, 65, 128, 130] {
            let f = VertexSet::full(n);
            assert_eq!(f.len(), n as usize);
            assert_eq!(f.to_vec(), (0..n).collect::<Vec<_>>());
        }
        assert!(VertexSet::full(0).is_empty());
    }

    #[test]
    fn serializes_as_sorted_member_list() {
        let a = VertexSet::from_members(10, &[7, 2, 4]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[2,4,7]");
    }
}
