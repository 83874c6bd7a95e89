//! Finite simplicial complexes stored as facet antichains.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{binomial, Simplex};

/// A nonempty simplicial complex on labels `0..64`.
///
/// Only the facets (maximal faces) are stored. The full face set is expanded
/// lazily the first time it is needed and then kept.
pub struct Complex {
    universe: Simplex,
    facets: Vec<Simplex>,
    faces: OnceLock<Vec<Simplex>>,
}

/// Face counts `f_0..f_d` and the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceProfile {
    pub counts: Vec<u64>,
    pub euler: i64,
}

impl FaceProfile {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let euler = counts.iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        FaceProfile { counts, euler }
    }

    pub fn dim(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for FaceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "), chi={}", self.euler)
    }
}

/// Result of [`Complex::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NotPure,
    /// Every ridge lies in exactly two facets, but the facet graph is disconnected.
    WeakPm,
    WeakPmWithBoundary,
    /// Weak pseudomanifold with connected facet graph.
    Pseudomanifold,
    Other,
}

impl Classification {
    /// True for both the disconnected and the strongly connected closed case.
    pub fn is_weak_pm(self) -> bool {
        matches!(self, Classification::WeakPm | Classification::Pseudomanifold)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::NotPure => "not_pure",
            Classification::WeakPm => "weak_pm",
            Classification::WeakPmWithBoundary => "weak_pm_with_boundary",
            Classification::Pseudomanifold => "pseudomanifold",
            Classification::Other => "other",
        };
        f.write_str(s)
    }
}

/// The facet adjacency graph of a pure complex: two facets are adjacent when
/// they share a codimension-one face.
#[derive(Clone, Debug)]
pub struct FacetGraph {
    pub facets: Vec<Simplex>,
    pub adjacency: Vec<Vec<usize>>,
}

impl FacetGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components as lists of facet indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.facets.len()];
        let mut out = Vec::new();
        for start in 0..self.facets.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for &j in &self.adjacency[comp[i]] {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Maximal elements of a family, sorted ascending.
pub(crate) fn maximal_elements(mut sets: Vec<Simplex>) -> Vec<Simplex> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl Complex {
    /// Builds a complex from a list of faces; non-maximal entries are absorbed.
    pub fn build<I: IntoIterator<Item = Simplex>>(faces: I) -> Result<Complex> {
        let sets: Vec<Simplex> = faces.into_iter().collect();
        if sets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(Self::from_antichain(maximal_elements(sets)))
    }

    /// Convenience wrapper over [`Complex::build`] taking raw label lists.
    pub fn from_vertex_lists<L, I>(lists: L) -> Result<Complex>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = u32>,
    {
        let sets = lists.into_iter().map(Simplex::from_vertices).collect::<Result<Vec<_>>>()?;
        Self::build(sets)
    }

    /// `facets` must be a nonempty sorted antichain.
    pub(crate) fn from_antichain(facets: Vec<Simplex>) -> Complex {
        debug_assert!(!facets.is_empty());
        let universe = Simplex::from_mask_unchecked(facets.iter().fold(0, |m, f| m | f.mask()));
        Complex { universe, facets, faces: OnceLock::new() }
    }

    /// The full simplex on `s`.
    pub fn simplex(s: Simplex) -> Complex {
        Self::from_antichain(vec![s])
    }

    pub fn universe(&self) -> Simplex {
        self.universe
    }

    pub fn n_vertices(&self) -> usize {
        self.universe.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        self.universe.vertices()
    }

    /// Maximal faces, ascending in bit order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn is_face(&self, s: Simplex) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(*f))
    }

    pub fn is_facet(&self, s: Simplex) -> bool {
        self.facets.binary_search(&s).is_ok()
    }

    /// Every face, ordered by size then bit order.
    pub fn faces(&self) -> &[Simplex] {
        self.faces.get_or_init(|| {
            let mut set: HashSet<Simplex> = HashSet::new();
            for f in &self.facets {
                set.extend(f.faces());
            }
            let mut v: Vec<Simplex> = set.into_iter().collect();
            v.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            v
        })
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.faces().iter().copied().filter(move |f| f.dim() == k)
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn face_profile(&self) -> FaceProfile {
        let mut counts = vec![0u64; self.dim() + 1];
        for f in self.faces() {
            counts[f.dim()] += 1;
        }
        FaceProfile::from_counts(counts)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_profile().euler
    }

    /// Faces `τ` disjoint from `σ` with `σ ∪ τ` a face.
    pub fn link(&self, sigma: Simplex) -> Result<Complex> {
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let rests: Vec<Simplex> =
            self.facets.iter().filter(|f| sigma.is_subset_of(**f)).filter_map(|f| f.difference(sigma)).collect();
        if rests.is_empty() {
            return Err(Error::LinkOfFacet(sigma));
        }
        // Facets through sigma stay an antichain once sigma is removed.
        let mut rests = rests;
        rests.sort_unstable();
        Ok(Self::from_antichain(rests))
    }

    /// Number of vertices in the link of `σ`.
    pub fn degree(&self, sigma: Simplex) -> Result<usize> {
        Ok(self.link(sigma)?.n_vertices())
    }

    /// Star of a face: facets containing it.
    pub fn star(&self, sigma: Simplex) -> Result<Complex> {
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        Ok(Self::from_antichain(self.facets.iter().copied().filter(|f| sigma.is_subset_of(*f)).collect()))
    }

    pub fn join(&self, other: &Complex) -> Result<Complex> {
        if let Some(shared) = self.universe.intersection(other.universe) {
            return Err(Error::OverlappingUniverses(shared));
        }
        let mut facets: Vec<Simplex> =
            self.facets.iter().flat_map(|a| other.facets.iter().map(move |b| a.union(*b))).collect();
        facets.sort_unstable();
        Ok(Self::from_antichain(facets))
    }

    pub fn disjoint_union(&self, other: &Complex) -> Result<Complex> {
        if let Some(shared) = self.universe.intersection(other.universe) {
            return Err(Error::OverlappingUniverses(shared));
        }
        let mut facets = self.facets.clone();
        facets.extend_from_slice(&other.facets);
        facets.sort_unstable();
        Ok(Self::from_antichain(facets))
    }

    /// Cone with apex `v`.
    pub fn cone(&self, apex: u32) -> Result<Complex> {
        self.join(&Complex::simplex(Simplex::vertex(apex)?))
    }

    /// The induced (full) subcomplex on `w`.
    pub fn induced(&self, w: Simplex) -> Result<Complex> {
        if !w.is_subset_of(self.universe) {
            return Err(Error::ForeignVertices);
        }
        let parts: Vec<Simplex> = self.facets.iter().filter_map(|f| f.intersection(w)).collect();
        Ok(Self::from_antichain(maximal_elements(parts)))
    }

    /// Simplicial neighbourhood `N(L, K)` and simplicial complement `C(L, K)`
    /// of a vertex set `L`.
    pub fn neighbourhood_and_complement(&self, l: Simplex) -> Result<(Complex, Complex)> {
        if !l.is_subset_of(self.universe) || l == self.universe {
            return Err(Error::ImproperVertexSet);
        }
        let near: Vec<Simplex> = self.facets.iter().copied().filter(|f| !f.is_disjoint(l)).collect();
        let rest = self.universe.difference(l).expect("proper subset");
        Ok((Self::from_antichain(near), self.induced(rest)?))
    }

    /// `f_{k-1} = C(f_0, k)`. Trivially true for `k == 0`.
    pub fn is_k_neighbourly(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let n = self.n_vertices() as u64;
        let have = self.faces().iter().filter(|f| f.len() == k).count() as u64;
        have == binomial(n, k as u64)
    }

    /// Facets containing each ridge, keyed by ridge mask. For 0-dimensional
    /// complexes the only ridge is the empty set (key 0).
    pub(crate) fn ridge_counts(&self) -> HashMap<u64, usize> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for f in &self.facets {
            if f.len() == 1 {
                *counts.entry(0).or_default() += 1;
            } else {
                for r in f.boundary() {
                    *counts.entry(r.mask()).or_default() += 1;
                }
            }
        }
        counts
    }

    pub fn classify(&self) -> Classification {
        if !self.is_pure() {
            return Classification::NotPure;
        }
        let counts = self.ridge_counts();
        if counts.values().all(|&c| c == 2) {
            let graph = self.facet_graph().expect("pure");
            if graph.is_connected() {
                Classification::Pseudomanifold
            } else {
                Classification::WeakPm
            }
        } else if counts.values().all(|&c| c == 1 || c == 2) {
            Classification::WeakPmWithBoundary
        } else {
            Classification::Other
        }
    }

    pub fn facet_graph(&self) -> Result<FacetGraph> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let d = self.dim();
        let mut by_ridge: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            if d == 0 {
                by_ridge.entry(0).or_default().push(i);
            } else {
                for r in f.boundary() {
                    by_ridge.entry(r.mask()).or_default().push(i);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); self.facets.len()];
        for members in by_ridge.values() {
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        Ok(FacetGraph { facets: self.facets.clone(), adjacency })
    }

    /// True when every facet of `other` is a face of `self`.
    pub fn contains_subcomplex(&self, other: &Complex) -> bool {
        other.facets.iter().all(|f| self.is_face(*f))
    }

    /// Applies a vertex relabelling; `map[v]` is the new label of `v` and must
    /// be injective on the universe.
    pub fn relabel(&self, map: &[u32]) -> Complex {
        let mut facets: Vec<Simplex> = self.facets.iter().map(|f| f.relabel(map)).collect();
        facets.sort_unstable();
        Self::from_antichain(facets)
    }

    /// Histogram of the number of facets containing each `k`-face.
    pub fn cofacet_histogram(&self, k: usize) -> Result<BTreeMap<usize, usize>> {
        let dim = self.dim();
        if k > dim {
            return Err(Error::DimensionOutOfRange { k, dim });
        }
        let mut hist = BTreeMap::new();
        for face in self.faces_of_dim(k) {
            let c = self.facets.iter().filter(|f| face.is_subset_of(**f)).count();
            *hist.entry(c).or_insert(0) += 1;
        }
        Ok(hist)
    }
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex { universe: self.universe, facets: self.facets.clone(), faces: self.faces.clone() }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex").field("facets", &self.facets).finish()
    }
}
