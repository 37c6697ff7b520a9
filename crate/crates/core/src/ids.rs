//! Dense membership masks over vertex and edge ids.

use std::fmt;
use std::marker::PhantomData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeTag;

/// Fixed-capacity bit set over the ids `0..capacity`.
///
/// The tag only keeps vertex masks and edge masks from being mixed up.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet<T> {
    words: Vec<u64>,
    capacity: usize,
    _tag: PhantomData<T>,
}

pub type VertexSet = IdSet<VertexTag>;
pub type EdgeSet = IdSet<EdgeTag>;

impl<T> IdSet<T> {
    pub fn new(capacity: usize) -> Self {
        IdSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
            _tag: PhantomData,
        }
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        id < self.capacity && self.words[id >> 6] >> (id & 63) & 1 == 1
    }

    /// Panics if `id` is not below the capacity.
    #[inline]
    pub fn insert(&mut self, id: usize) {
        assert!(id < self.capacity, "id {id} out of range {}", self.capacity);
        self.words[id >> 6] |= 1 << (id & 63);
    }

    #[inline]
    pub fn remove(&mut self, id: usize) {
        if id < self.capacity {
            self.words[id >> 6] &= !(1 << (id & 63));
        }
    }

    #[inline]
    pub fn toggle(&mut self, id: usize) {
        assert!(id < self.capacity);
        self.words[id >> 6] ^= 1 << (id & 63);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Symmetric difference in place; both sets must share a capacity.
    #[inline]
    pub fn xor_with(&mut self, other: &Self) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl<T> fmt::Debug for IdSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_xor() {
        let mut a = EdgeSet::from_ids(130, [0, 63, 64, 129]);
        assert_eq!(a.to_vec(), vec![0, 63, 64, 129]);
        assert_eq!(a.len(), 4);
        let b = EdgeSet::from_ids(130, [63, 100]);
        a.xor_with(&b);
        assert_eq!(a.to_vec(), vec![0, 64, 100, 129]);
        assert!(!a.contains(63));
        assert!(!a.contains(500));
    }

    #[test]
    fn subset_and_disjoint() {
        let a = VertexSet::from_ids(10, [1, 2]);
        let b = VertexSet::from_ids(10, [1, 2, 3]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.is_disjoint(&VertexSet::from_ids(10, [4])));
    }
}
