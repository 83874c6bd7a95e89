//! Canonical labelling by partition refinement and individualisation.
//!
//! Vertices are first split by a relabelling-invariant signature (for each
//! facet through the vertex: its size and how many of its vertices fall in
//! each current cell), iterated to a fixed point. Remaining ties are broken by
//! individualising each vertex of the first non-singleton cell in turn. Every
//! discrete leaf yields a relabelled facet list and the lexicographically
//! least one is the canonical form. Automorphisms discovered between equal
//! leaves prune sibling branches that lie in the same orbit.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::simplex::{Simplex, Vertices};

/// A relabelling-invariant normal form: vertices renamed `0..n` and facets
/// sorted by bit order. Two complexes are isomorphic iff their forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n_vertices: usize,
    pub facets: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_complex(&self) -> Complex {
        Complex::from_antichain(self.facets.iter().map(|&m| Simplex::from_mask_unchecked(m)).collect())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<Simplex> = self.facets.iter().map(|&m| Simplex::from_mask_unchecked(m)).collect();
        write!(f, "CanonicalForm({}, {:?})", self.n_vertices, fs)
    }
}

/// A vertex bijection witnessing `K ≅ L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    /// `(vertex of K, vertex of L)`, ascending in the first coordinate.
    pub mapping: Vec<(u32, u32)>,
}

impl IsoCertificate {
    pub fn image(&self, v: u32) -> Option<u32> {
        self.mapping.iter().find(|(a, _)| *a == v).map(|(_, b)| *b)
    }

    fn table(&self) -> Vec<u32> {
        let mut t = vec![0u32; 64];
        for &(a, b) in &self.mapping {
            t[a as usize] = b;
        }
        t
    }

    pub fn apply(&self, k: &Complex) -> Complex {
        k.relabel(&self.table())
    }

    /// Checks the bijection against the full face sets.
    pub fn verify(&self, k: &Complex, l: &Complex) -> bool {
        if self.mapping.len() != k.n_vertices() || self.mapping.len() != l.n_vertices() {
            return false;
        }
        let dom = self.mapping.iter().fold(0u64, |m, (a, _)| m | 1 << a);
        let img = self.mapping.iter().fold(0u64, |m, (_, b)| m | 1 << b);
        if dom != k.universe().mask() || img != l.universe().mask() {
            return false;
        }
        let table = self.table();
        let mut mapped: Vec<Simplex> = k.faces().iter().map(|f| f.relabel(&table)).collect();
        mapped.sort_unstable();
        let mut target: Vec<Simplex> = l.faces().to_vec();
        target.sort_unstable();
        mapped == target
    }
}

struct Search {
    n: usize,
    facets: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

impl Search {
    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let profiles: Vec<Vec<u16>> = self
                .facets
                .iter()
                .map(|&f| {
                    let mut p = vec![0u16; cells.len() + 1];
                    p[0] = f.count_ones() as u16;
                    for v in Vertices::of_mask(f) {
                        p[cell_of[v as usize] + 1] += 1;
                    }
                    p
                })
                .collect();
            let mut signature: Vec<Vec<&Vec<u16>>> = vec![Vec::new(); self.n];
            for (f, p) in self.facets.iter().zip(&profiles) {
                for v in Vertices::of_mask(*f) {
                    signature[v as usize].push(p);
                }
            }
            for s in &mut signature {
                s.sort_unstable();
            }
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by(|&a, &b| signature[a].cmp(&signature[b]).then(a.cmp(&b)));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || signature[sorted[i]] != signature[sorted[start]] {
                        let mut part = sorted[start..i].to_vec();
                        part.sort_unstable();
                        next.push(part);
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn leaf(&mut self, cells: &Partition) {
        let mut label = vec![0usize; self.n];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let mut form: Vec<u64> =
            self.facets.iter().map(|&f| Vertices::of_mask(f).fold(0u64, |m, v| m | 1 << label[v as usize])).collect();
        form.sort_unstable();
        match &self.best {
            None => self.best = Some((form, label)),
            Some((best, best_label)) => match form.cmp(best) {
                Ordering::Less => self.best = Some((form, label)),
                Ordering::Equal => {
                    // best_label^{-1} ∘ label is an automorphism.
                    let mut inv = vec![0usize; self.n];
                    for (v, &l) in best_label.iter().enumerate() {
                        inv[l] = v;
                    }
                    let auto: Vec<usize> = label.iter().map(|&l| inv[l]).collect();
                    if auto.iter().enumerate().any(|(i, &j)| i != j) {
                        self.automorphisms.push(auto);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn explore(&mut self, cells: Partition, fixed: &mut Vec<usize>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.same_orbit(fixed, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = candidates.iter().copied().filter(|&u| u != v).collect();
            next.splice(target..=target, [vec![v], rest]);
            fixed.push(v);
            self.explore(next, fixed);
            fixed.pop();
        }
    }

    /// Whether `v` shares an orbit with an already explored vertex under the
    /// automorphisms found so far that fix `fixed` pointwise.
    fn same_orbit(&self, fixed: &[usize], tried: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.automorphisms {
            if fixed.iter().all(|&x| a[x] == x) {
                any = true;
                for (i, &j) in a.iter().enumerate() {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

/// Canonical form plus the labelling that produced it: `labelling[i]` is the
/// canonical index of the `i`-th smallest vertex of `k`.
pub fn canonical_labelling(k: &Complex) -> (CanonicalForm, Vec<u32>) {
    let verts: Vec<u32> = k.vertices().collect();
    let n = verts.len();
    let mut index = [0u32; 64];
    for (i, &v) in verts.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let facets: Vec<u64> =
        k.facets().iter().map(|f| f.vertices().fold(0u64, |m, v| m | 1 << index[v as usize])).collect();
    let mut search = Search { n, facets, best: None, automorphisms: Vec::new() };
    search.explore(vec![(0..n).collect()], &mut Vec::new());
    let (form, label) = search.best.expect("at least one leaf");
    (CanonicalForm { n_vertices: n, facets: form }, label.into_iter().map(|l| l as u32).collect())
}

pub fn canonical_form(k: &Complex) -> CanonicalForm {
    canonical_labelling(k).0
}

/// Returns a verified certificate when `k` and `l` are isomorphic.
pub fn is_isomorphic(k: &Complex, l: &Complex) -> Option<IsoCertificate> {
    if k.n_vertices() != l.n_vertices() || k.facets().len() != l.facets().len() {
        return None;
    }
    let (fk, lk) = canonical_labelling(k);
    let (fl, ll) = canonical_labelling(l);
    if fk != fl {
        return None;
    }
    let lverts: Vec<u32> = l.vertices().collect();
    let mut by_canon = vec![0u32; lverts.len()];
    for (i, &c) in ll.iter().enumerate() {
        by_canon[c as usize] = lverts[i];
    }
    let mapping: Vec<(u32, u32)> = k.vertices().zip(&lk).map(|(v, &c)| (v, by_canon[c as usize])).collect();
    let cert = IsoCertificate { mapping };
    cert.verify(k, l).then_some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(labels: &[u32]) -> Complex {
        let n = labels.len();
        Complex::from_vertex_lists((0..n).map(|i| [labels[i], labels[(i + 1) % n]])).unwrap()
    }

    #[test]
    fn cycles_vs_two_triangles() {
        let c6 = cycle(&[0, 1, 2, 3, 4, 5]);
        let two = cycle(&[0, 1, 2]).disjoint_union(&cycle(&[3, 4, 5])).unwrap();
        assert_eq!(c6.face_profile(), two.face_profile());
        assert_ne!(canonical_form(&c6), canonical_form(&two));
        assert!(is_isomorphic(&c6, &two).is_none());
    }

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let a = cycle(&[0, 1, 2, 3, 4, 5]);
        let b = cycle(&[10, 7, 30, 2, 44, 5]);
        let cert = is_isomorphic(&a, &b).expect("isomorphic");
        assert!(cert.verify(&a, &b));
        assert_eq!(cert.apply(&a), b);
        assert_eq!(canonical_form(&a).to_complex(), canonical_form(&b).to_complex());
    }

    #[test]
    fn full_simplex_is_cheap_with_pruning() {
        let s = Complex::simplex(Simplex::from_mask((1 << 9) - 1).unwrap());
        assert_eq!(canonical_form(&s).facets, vec![(1 << 9) - 1]);
        let sphere = Complex::build(Simplex::from_mask(255).unwrap().boundary()).unwrap();
        assert_eq!(canonical_form(&sphere).facets.len(), 8);
    }
}
