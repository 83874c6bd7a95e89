//! Exhaustive generation of small complexes up to isomorphism, and the
//! brute-force checks built on it.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homotopy::{homology, is_collapsible};
use crate::report::EnumerationReport;
use crate::simplex::{k_subsets, Simplex};

/// Predicate applied to labelled complexes before isomorph rejection.
pub type Filter<'a> = &'a (dyn Fn(&Complex) -> bool + Sync);

/// Order in which candidate faces are offered to the antichain generator.
/// Both orders visit every labelled antichain exactly once.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchOrder {
    /// Larger sets first, ties by ascending bit order.
    #[default]
    LargestFirst,
    /// Ascending bit order.
    BitOrder,
}

/// Largest vertex count for unfiltered enumeration.
pub const MAX_UNFILTERED: usize = 5;
/// Largest vertex count when a filter is supplied.
pub const MAX_FILTERED: usize = 6;

struct Antichains<'a> {
    candidates: Vec<u64>,
    full: u64,
    filter: Option<Filter<'a>>,
    chosen: Vec<u64>,
    classes: BTreeSet<CanonicalForm>,
    labeled: u64,
    nodes: u64,
}

impl Antichains<'_> {
    fn run(&mut self, i: usize, covered: u64) {
        self.nodes += 1;
        if i == self.candidates.len() {
            if covered == self.full && !self.chosen.is_empty() {
                let k = Complex::from_antichain({
                    let mut v: Vec<Simplex> = self.chosen.iter().map(|&m| Simplex::from_mask_unchecked(m)).collect();
                    v.sort_unstable();
                    v
                });
                if self.filter.is_none_or(|f| f(&k)) {
                    self.labeled += 1;
                    self.classes.insert(canonical_form(&k));
                }
            }
            return;
        }
        // Prune when the remaining candidates cannot cover the universe.
        let reachable = self.candidates[i..].iter().fold(covered, |m, c| m | c);
        if reachable != self.full {
            return;
        }
        let c = self.candidates[i];
        if self.chosen.iter().all(|&s| c & !s != 0 && s & !c != 0) {
            self.chosen.push(c);
            self.run(i + 1, covered | c);
            self.chosen.pop();
        }
        self.run(i + 1, covered);
    }
}

/// All isomorphism classes of complexes on exactly `n` vertices accepted by
/// `filter`. Labelled facet antichains are generated exhaustively and
/// rejected by canonical form.
pub fn enumerate_complexes(n: usize, filter: Option<Filter<'_>>, order: BranchOrder) -> Result<EnumerationReport> {
    let limit = if filter.is_some() { MAX_FILTERED } else { MAX_UNFILTERED };
    if n == 0 || n > limit {
        return Err(Error::InvalidParameters(format!(
            "enumeration supports 1..={limit} vertices{}, got {n}",
            if filter.is_some() { " with a filter" } else { " without a filter" }
        )));
    }
    let start = Instant::now();
    let full = (1u64 << n) - 1;
    let mut candidates: Vec<u64> = (1..=full).collect();
    if order == BranchOrder::LargestFirst {
        candidates.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    }
    let mut gen =
        Antichains { candidates, full, filter, chosen: Vec::new(), classes: BTreeSet::new(), labeled: 0, nodes: 0 };
    gen.run(0, 0);
    Ok(EnumerationReport {
        kind: "complexes".into(),
        parameters: BTreeMap::from([("vertices".into(), n as u64)]),
        classes: gen.classes.into_iter().collect(),
        labeled_count: gen.labeled,
        complete: true,
        nodes: gen.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicityRow {
    pub vertices: usize,
    pub classes: usize,
    pub acyclic: usize,
    pub collapsible: usize,
}

/// Outcome of checking "integrally acyclic implies collapsible".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicityReport {
    pub rows: Vec<AcyclicityRow>,
    /// Acyclic classes for which no collapse to a point exists.
    pub counterexamples: Vec<CanonicalForm>,
    /// Acyclic classes with Euler characteristic other than 1 (must be empty).
    pub euler_violations: Vec<CanonicalForm>,
}

impl AcyclicityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.euler_violations.is_empty()
    }
}

/// For every class on `1..=n` vertices: if its reduced integral homology
/// vanishes, it must collapse to a point. Each returned trace is replayed.
pub fn verify_acyclic_implies_collapsible(n: usize) -> Result<AcyclicityReport> {
    if n == 0 || n > MAX_UNFILTERED {
        return Err(Error::InvalidParameters(format!("need 1 <= n <= {MAX_UNFILTERED}, got {n}")));
    }
    let mut report = AcyclicityReport::default();
    for m in 1..=n {
        let classes = enumerate_complexes(m, None, BranchOrder::default())?.classes;
        let mut row = AcyclicityRow { vertices: m, classes: classes.len(), ..Default::default() };
        for form in classes {
            let k = form.to_complex();
            if !homology(&k).is_trivial() {
                continue;
            }
            row.acyclic += 1;
            if k.euler_characteristic() != 1 {
                report.euler_violations.push(form.clone());
            }
            match is_collapsible(&k)? {
                Some(trace) => {
                    trace.replay(&k)?;
                    row.collapsible += 1;
                }
                None => report.counterexamples.push(form),
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

/// Outcome of the triangle-configuration check on 5 vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSphereReport {
    pub configurations: usize,
    /// Nonempty configurations in which every edge lies in at least two
    /// triangles.
    pub hypothesis_holds: usize,
    pub contains_tetrahedron_boundary: usize,
    pub contains_suspended_triangle: usize,
    /// Triangle sets (bit `i` = `i`-th triangle in bit order) violating the
    /// conclusion.
    pub exceptions: Vec<u32>,
}

fn edges_of(t: u64) -> impl Iterator<Item = u64> {
    Simplex::from_mask_unchecked(t).boundary().map(|s| s.mask())
}

/// Does the triangle set contain the boundary of a tetrahedron, or a
/// suspension of a triangle boundary, as a subcomplex?
pub fn contains_two_sphere(triangles: &BTreeSet<u64>, full: u64) -> (bool, bool) {
    let tetra = k_subsets(full, 4).into_iter().any(|w| k_subsets(w, 3).iter().all(|t| triangles.contains(t)));
    let suspension = k_subsets(full, 5).into_iter().any(|five| {
        k_subsets(five, 2).into_iter().any(|poles| {
            let equator = five & !poles;
            k_subsets(equator, 2)
                .into_iter()
                .all(|e| crate::simplex::Vertices::of_mask(poles).all(|p| triangles.contains(&(e | 1 << p))))
        })
    });
    (tetra, suspension)
}

/// Every 2-dimensional configuration on at most five vertices in which each
/// edge lies in two or more triangles contains a 2-sphere: checked over all
/// `2^10` triangle subsets of a 5-set.
pub fn verify_two_sphere_containment() -> TwoSphereReport {
    let full = 0b11111u64;
    let all: Vec<u64> = k_subsets(full, 3);
    let mut report = TwoSphereReport { configurations: 1 << all.len(), ..Default::default() };
    for bits in 0u32..1 << all.len() {
        let tris: BTreeSet<u64> = (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i]).collect();
        if tris.is_empty() {
            continue;
        }
        let mut edge_count: BTreeMap<u64, usize> = BTreeMap::new();
        for &t in &tris {
            for e in edges_of(t) {
                *edge_count.entry(e).or_default() += 1;
            }
        }
        if edge_count.values().any(|&c| c < 2) {
            continue;
        }
        report.hypothesis_holds += 1;
        let (tetra, susp) = contains_two_sphere(&tris, full);
        report.contains_tetrahedron_boundary += usize::from(tetra);
        report.contains_suspended_triangle += usize::from(susp);
        if !tetra && !susp {
            report.exceptions.push(bits);
        }
    }
    report
}

/// Candidate facet states during weak pseudomanifold generation.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Pick {
    Undecided,
    In,
    Out,
}

struct WeakPmSearch {
    n: usize,
    candidates: Vec<u64>,
    ridges_of: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    state: Vec<Pick>,
    inside: Vec<u8>,
    open: Vec<u8>,
    trail: Vec<usize>,
    classes: BTreeSet<CanonicalForm>,
    labeled: u64,
    nodes: u64,
}

impl WeakPmSearch {
    fn set(&mut self, c: usize, pick: Pick) {
        self.state[c] = pick;
        self.trail.push(c);
        for &r in &self.ridges_of[c] {
            self.open[r] -= 1;
            if pick == Pick::In {
                self.inside[r] += 1;
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let c = self.trail.pop().unwrap();
            let was_in = self.state[c] == Pick::In;
            self.state[c] = Pick::Undecided;
            for &r in &self.ridges_of[c] {
                self.open[r] += 1;
                if was_in {
                    self.inside[r] -= 1;
                }
            }
        }
    }

    /// Ridges must end with 0 or 2 facets. Returns false on conflict.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(r) = queue.pop() {
            let (inn, open) = (self.inside[r], self.open[r]);
            let force = match (inn, open) {
                (i, _) if i > 2 => return false,
                (1, 0) => return false,
                (2, o) if o > 0 => Some(Pick::Out),
                (1, 1) => Some(Pick::In),
                (0, 1) => Some(Pick::Out),
                _ => None,
            };
            if let Some(pick) = force {
                let targets: Vec<usize> =
                    self.cofacets[r].iter().copied().filter(|&c| self.state[c] == Pick::Undecided).collect();
                for c in targets {
                    self.set(c, pick);
                    queue.extend(self.ridges_of[c].iter().copied());
                }
            }
        }
        true
    }

    fn decide(&mut self, c: usize, pick: Pick) -> bool {
        self.set(c, pick);
        let q = self.ridges_of[c].clone();
        self.propagate(q)
    }

    fn run(&mut self) {
        self.nodes += 1;
        // Most constrained open ridge: one facet in, fewest candidates left.
        let mut branch = None;
        let mut best = u8::MAX;
        for r in 0..self.inside.len() {
            if self.inside[r] == 1 && self.open[r] < best {
                best = self.open[r];
                branch = self.cofacets[r].iter().copied().find(|&c| self.state[c] == Pick::Undecided);
            }
        }
        if branch.is_none() {
            branch = self.state.iter().position(|&s| s == Pick::Undecided);
        }
        let Some(c) = branch else {
            self.record();
            return;
        };
        for pick in [Pick::In, Pick::Out] {
            let mark = self.trail.len();
            if self.decide(c, pick) {
                self.run();
            }
            self.undo_to(mark);
        }
    }

    fn record(&mut self) {
        let chosen: Vec<Simplex> = (0..self.candidates.len())
            .filter(|&c| self.state[c] == Pick::In)
            .map(|c| Simplex::from_mask_unchecked(self.candidates[c]))
            .collect();
        let covered = chosen.iter().fold(0u64, |m, s| m | s.mask());
        if chosen.is_empty() || covered != (1u64 << self.n) - 1 {
            return;
        }
        self.labeled += 1;
        self.classes.insert(canonical_form(&Complex::from_antichain(chosen)));
    }
}

/// All classes of `n`-vertex `d`-dimensional weak pseudomanifolds without
/// boundary (every ridge in exactly two facets), connected or not.
///
/// Candidate facets are decided by backtracking with ridge-count propagation.
/// The facet `{0, .., d}` is fixed, since every nonempty complex can be
/// relabelled to contain it; classes are then separated by canonical form.
pub fn enumerate_weak_pseudomanifolds(n: usize, d: usize) -> Result<EnumerationReport> {
    let feasible = d >= 1 && n >= d + 2 && (n <= 8 && d == 2 || n <= d + 4 && n <= 10 || d == 1 && n <= 12);
    if !feasible {
        return Err(Error::InvalidParameters(format!(
            "weak pseudomanifold enumeration is limited to d=1 (n<=12), d=2 (n<=8) or n<=d+4<=10; got n={n}, d={d}"
        )));
    }
    let start = Instant::now();
    let full = (1u64 << n) - 1;
    let candidates = k_subsets(full, d + 1);
    let ridges = k_subsets(full, d);
    let ridge_index: BTreeMap<u64, usize> = ridges.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let ridges_of: Vec<Vec<usize>> =
        candidates.iter().map(|&c| edges_of(c).map(|r| ridge_index[&r]).collect()).collect();
    let mut cofacets = vec![Vec::new(); ridges.len()];
    for (c, rs) in ridges_of.iter().enumerate() {
        for &r in rs {
            cofacets[r].push(c);
        }
    }
    let open = cofacets.iter().map(|c| c.len() as u8).collect();
    let mut search = WeakPmSearch {
        n,
        state: vec![Pick::Undecided; candidates.len()],
        inside: vec![0; ridges.len()],
        open,
        candidates,
        ridges_of,
        cofacets,
        trail: Vec::new(),
        classes: BTreeSet::new(),
        labeled: 0,
        nodes: 0,
    };
    let seed = search.candidates.iter().position(|&c| c == (1u64 << (d + 1)) - 1).expect("first facet");
    if search.decide(seed, Pick::In) {
        search.run();
    }
    Ok(EnumerationReport {
        kind: "weak-pm".into(),
        parameters: BTreeMap::from([("vertices".into(), n as u64), ("dim".into(), d as u64)]),
        classes: search.classes.into_iter().collect(),
        labeled_count: search.labeled,
        complete: true,
        nodes: search.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Largest number of non-edges through a single vertex.
pub fn max_non_edges_at_vertex(k: &Complex) -> usize {
    let n = k.n_vertices();
    k.vertices()
        .map(|v| {
            let nbrs = k.faces_of_dim(1).filter(|e| e.contains(v)).count();
            n - 1 - nbrs
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_complexes(1, None, BranchOrder::default()).unwrap().class_count(), 1);
        assert_eq!(enumerate_complexes(2, None, BranchOrder::default()).unwrap().class_count(), 2);
        assert_eq!(enumerate_complexes(3, None, BranchOrder::default()).unwrap().class_count(), 5);
        assert!(enumerate_complexes(6, None, BranchOrder::default()).is_err());
        assert!(enumerate_complexes(0, None, BranchOrder::default()).is_err());
    }

    #[test]
    fn branch_orders_agree() {
        for n in 1..=4 {
            let a = enumerate_complexes(n, None, BranchOrder::LargestFirst).unwrap();
            let b = enumerate_complexes(n, None, BranchOrder::BitOrder).unwrap();
            assert_eq!(a.classes, b.classes);
            assert_eq!(a.labeled_count, b.labeled_count);
        }
    }

    #[test]
    fn acyclic_small() {
        let r = verify_acyclic_implies_collapsible(3).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows.len(), 3);
    }

    #[test]
    fn weak_pm_small() {
        let r = enumerate_weak_pseudomanifolds(4, 2).unwrap();
        assert_eq!(r.class_count(), 1);
        assert!(enumerate_weak_pseudomanifolds(3, 2).is_err());
        // Cycles: one class per vertex count, plus disjoint unions from 6 on.
        assert_eq!(enumerate_weak_pseudomanifolds(5, 1).unwrap().class_count(), 1);
        assert_eq!(enumerate_weak_pseudomanifolds(6, 1).unwrap().class_count(), 2);
    }
}
