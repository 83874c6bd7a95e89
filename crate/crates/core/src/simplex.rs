//! Vertex sets packed into a single machine word.

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible vertex label plus one.
pub const MAX_VERTICES: u32 = 64;

/// A nonempty finite set of vertex labels in `0..64`, stored as a bitmask.
///
/// Ordering is numeric on the mask ("canonical bit order"), which is what the
/// searches use to break ties deterministically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(u64);

impl Simplex {
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::EmptySimplex);
        }
        Ok(Simplex(mask))
    }

    /// Builds a simplex from labels; duplicate labels are merged.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(labels: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in labels {
            if v >= MAX_VERTICES {
                return Err(Error::LabelOutOfRange(v));
            }
            mask |= 1 << v;
        }
        Self::from_mask(mask)
    }

    pub fn vertex(v: u32) -> Result<Self> {
        Self::from_vertices([v])
    }

    /// Caller guarantees `mask != 0`.
    pub(crate) fn from_mask_unchecked(mask: u64) -> Self {
        debug_assert!(mask != 0);
        Simplex(mask)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false; a simplex is never empty.
    pub fn is_empty(self) -> bool {
        false
    }

    /// `len() - 1`.
    #[inline]
    pub fn dim(self) -> usize {
        self.len() - 1
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Simplex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    /// `None` when the intersection is empty.
    pub fn intersection(self, other: Simplex) -> Option<Simplex> {
        nonzero(self.0 & other.0)
    }

    /// `None` when nothing is left.
    pub fn difference(self, other: Simplex) -> Option<Simplex> {
        nonzero(self.0 & !other.0)
    }

    pub fn min_vertex(self) -> u32 {
        self.0.trailing_zeros()
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// All nonempty subsets, including `self`.
    pub fn faces(self) -> impl Iterator<Item = Simplex> {
        SubMasks::new(self.0).map(Simplex)
    }

    /// Subsets of size `len() - 1`; empty for a vertex.
    pub fn boundary(self) -> impl Iterator<Item = Simplex> {
        let mask = self.0;
        Vertices(mask).filter_map(move |v| nonzero(mask & !(1 << v)))
    }

    /// Applies a relabelling; `map[v]` is the new label of `v`.
    pub fn relabel(self, map: &[u32]) -> Simplex {
        let mut out = 0u64;
        for v in self.vertices() {
            out |= 1 << map[v as usize];
        }
        Simplex(out)
    }
}

impl serde::Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

impl<'de> serde::Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<u32>::deserialize(d)?;
        Simplex::from_vertices(labels).map_err(serde::de::Error::custom)
    }
}

fn nonzero(mask: u64) -> Option<Simplex> {
    (mask != 0).then_some(Simplex(mask))
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Whitespace separated labels, the facet-list token syntax.
impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Iterator over set bits of a mask, ascending.
#[derive(Clone)]
pub struct Vertices(u64);

impl Vertices {
    pub fn of_mask(mask: u64) -> Self {
        Vertices(mask)
    }
}

impl Iterator for Vertices {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Nonempty submasks of a mask, in decreasing numeric order.
pub struct SubMasks {
    full: u64,
    next: u64,
    done: bool,
}

impl SubMasks {
    pub fn new(full: u64) -> Self {
        SubMasks { full, next: full, done: full == 0 }
    }
}

impl Iterator for SubMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let cur = self.next;
        self.next = (cur - 1) & self.full;
        if self.next == 0 {
            self.done = true;
        }
        Some(cur)
    }
}

/// Binomial coefficient with `u128` intermediates.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All `k`-element submasks of `full`, ascending.
pub fn k_subsets(full: u64, k: usize) -> Vec<u64> {
    let verts: Vec<u32> = Vertices(full).collect();
    let n = verts.len();
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let deposit = |compact: u64| Vertices(compact).fold(0u64, |m, i| m | 1 << verts[i as usize]);
    // Gosper's hack over the compact index space.
    let mut out = Vec::with_capacity(binomial(n as u64, k as u64) as usize);
    let mut x: u128 = (1u128 << k) - 1;
    let limit: u128 = 1u128 << n;
    while x < limit {
        out.push(deposit(x as u64));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_large_labels() {
        assert!(matches!(Simplex::from_mask(0), Err(Error::EmptySimplex)));
        assert!(matches!(Simplex::from_vertices([3, 64]), Err(Error::LabelOutOfRange(64))));
        assert!(Simplex::from_vertices([63]).is_ok());
    }

    #[test]
    fn faces_and_boundary() {
        let s = Simplex::from_vertices([1, 2, 3]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.faces().count(), 7);
        let b: Vec<_> = s.boundary().collect();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|t| t.len() == 2 && t.is_subset_of(s)));
        assert_eq!(Simplex::vertex(4).unwrap().boundary().count(), 0);
        assert_eq!(s.to_string(), "1 2 3");
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..10u32 {
            let full = (1u64 << n) - 1;
            for k in 0..=n as usize + 1 {
                let subs = k_subsets(full, k);
                assert_eq!(subs.len() as u64, binomial(n as u64, k as u64), "n={n} k={k}");
                assert!(subs.iter().all(|m| m.count_ones() as usize == k));
                assert!(subs.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(k_subsets(0b1011_0000, 2), vec![0b0011_0000, 0b1001_0000, 0b1010_0000]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }
}
