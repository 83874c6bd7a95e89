//! Free faces, elementary collapses, the exact collapsibility decision and
//! reduced integral homology.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::complex::{maximal_elements, Complex};
use crate::error::{Error, Result};
use crate::io::parse_simplex;
use crate::linalg::{smith_normal_form, Matrix};
use crate::simplex::{Simplex, Vertices};

/// All `(τ, σ)` with `τ` free in `σ`: `σ` is the only face properly containing
/// `τ`. Sorted by `dim τ` descending, then bit order of `τ`.
pub fn free_faces(k: &Complex) -> Vec<(Simplex, Simplex)> {
    let faces: HashSet<Simplex> = k.faces().iter().copied().collect();
    let universe = k.universe().mask();
    let mut out = Vec::new();
    for &tau in k.faces() {
        let mut cofaces = Vertices::of_mask(universe & !tau.mask())
            .map(|v| Simplex::from_mask_unchecked(tau.mask() | 1 << v))
            .filter(|s| faces.contains(s));
        if let (Some(sigma), None) = (cofaces.next(), cofaces.next()) {
            debug_assert!(k.is_facet(sigma) && sigma.dim() == tau.dim() + 1);
            out.push((tau, sigma));
        }
    }
    out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    out
}

fn is_free_pair(k: &Complex, tau: Simplex, sigma: Simplex) -> bool {
    tau.len() + 1 == sigma.len()
        && tau.is_subset_of(sigma)
        && k.is_facet(sigma)
        && k.facets().iter().filter(|f| tau.is_subset_of(**f)).count() == 1
}

/// Removes a free pair. Fails when `τ` is not free in `σ`, or when the pair is
/// the whole complex (a single edge collapsing onto nothing is impossible, as
/// one endpoint always survives).
pub fn collapse_step(k: &Complex, tau: Simplex, sigma: Simplex) -> Result<Complex> {
    if !is_free_pair(k, tau, sigma) {
        return Err(Error::NotFree(tau, sigma));
    }
    let mut rest: Vec<Simplex> = k.facets().iter().copied().filter(|f| *f != sigma).collect();
    rest.extend(sigma.boundary().filter(|b| *b != tau));
    if rest.is_empty() {
        return Err(Error::NotFree(tau, sigma));
    }
    Ok(Complex::from_antichain(maximal_elements(rest)))
}

/// Where a sequence of collapses ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residue {
    Point(u32),
    Complex(Complex),
}

/// An ordered list of elementary collapses and the resulting complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseTrace {
    pub steps: Vec<(Simplex, Simplex)>,
    pub residue: Residue,
}

impl CollapseTrace {
    pub fn is_collapse_to_point(&self) -> bool {
        matches!(self.residue, Residue::Point(_))
    }

    /// Replays the steps from `start`, checking each for legality.
    pub fn replay(&self, start: &Complex) -> Result<Complex> {
        let mut cur = start.clone();
        for &(tau, sigma) in &self.steps {
            cur = collapse_step(&cur, tau, sigma)?;
        }
        let expected_ok = match &self.residue {
            Residue::Point(v) => cur.facets() == [Simplex::vertex(*v)?],
            Residue::Complex(c) => *c == cur,
        };
        if !expected_ok {
            return Err(Error::Verification("replayed residue differs from the recorded one".into()));
        }
        Ok(cur)
    }

    /// Parses the line format written by `Display`; the residue is recomputed
    /// by replaying on `start`.
    pub fn parse(text: &str, start: &Complex) -> Result<CollapseTrace> {
        let steps = parse_steps(text)?;
        let mut cur = start.clone();
        for &(tau, sigma) in &steps {
            cur = collapse_step(&cur, tau, sigma)?;
        }
        let residue = residue_of(cur);
        Ok(CollapseTrace { steps, residue })
    }
}

/// Reads `tau -> sigma` lines without checking them against a complex.
pub fn parse_steps(text: &str) -> Result<Vec<(Simplex, Simplex)>> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (a, b) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse { line: i + 1, message: "expected `tau -> sigma`".into() })?;
        steps.push((parse_simplex(a, i + 1)?, parse_simplex(b, i + 1)?));
    }
    Ok(steps)
}

fn residue_of(k: Complex) -> Residue {
    match k.facets() {
        [f] if f.len() == 1 => Residue::Point(f.min_vertex()),
        _ => Residue::Complex(k),
    }
}

/// One `τ -> σ` line per step.
impl fmt::Display for CollapseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (tau, sigma) in &self.steps {
            writeln!(f, "{tau} -> {sigma}")?;
        }
        Ok(())
    }
}

/// Collapses greedily along the first free pair until stuck.
pub fn greedy_collapse(k: &Complex) -> CollapseTrace {
    let mut cur = k.clone();
    let mut steps = Vec::new();
    while let Some(&(tau, sigma)) = free_faces(&cur).first() {
        match collapse_step(&cur, tau, sigma) {
            Ok(next) => {
                steps.push((tau, sigma));
                cur = next;
            }
            Err(_) => break,
        }
    }
    CollapseTrace { steps, residue: residue_of(cur) }
}

/// Largest vertex count accepted by [`is_collapsible`].
pub const COLLAPSE_MAX_VERTICES: usize = 12;

/// Face set over a compact vertex range, one bit per subset mask.
#[derive(Clone, PartialEq, Eq, Hash)]
struct FaceBits(Vec<u64>);

impl FaceBits {
    fn get(&self, m: u64) -> bool {
        self.0[(m >> 6) as usize] >> (m & 63) & 1 == 1
    }
    fn set(&mut self, m: u64, on: bool) {
        let w = &mut self.0[(m >> 6) as usize];
        if on {
            *w |= 1 << (m & 63);
        } else {
            *w &= !(1 << (m & 63));
        }
    }
}

struct CollapseSearch {
    n: u32,
    dead: HashSet<FaceBits>,
    nodes: u64,
}

impl CollapseSearch {
    fn free_pairs(&self, faces: &FaceBits, live: &[u64]) -> Vec<(u64, u64)> {
        let full = (1u64 << self.n) - 1;
        let mut out = Vec::new();
        for &t in live {
            let mut only = None;
            let mut count = 0;
            for v in Vertices::of_mask(full & !t) {
                let s = t | 1 << v;
                if faces.get(s) {
                    count += 1;
                    only = Some(s);
                    if count > 1 {
                        break;
                    }
                }
            }
            if count == 1 {
                out.push((t, only.unwrap()));
            }
        }
        out.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
        out
    }

    fn run(&mut self, faces: &mut FaceBits, live: &mut Vec<u64>, path: &mut Vec<(u64, u64)>) -> bool {
        self.nodes += 1;
        if live.len() == 1 {
            return true;
        }
        if self.dead.contains(faces) {
            return false;
        }
        for (t, s) in self.free_pairs(faces, live) {
            faces.set(t, false);
            faces.set(s, false);
            let saved = live.clone();
            live.retain(|&m| m != t && m != s);
            path.push((t, s));
            if self.run(faces, live, path) {
                return true;
            }
            path.pop();
            *live = saved;
            faces.set(t, true);
            faces.set(s, true);
        }
        self.dead.insert(faces.clone());
        false
    }
}

/// Exact collapsibility: exhaustive search over free-pair choices with the
/// exact remaining face set memoised as dead. Returns a trace ending at a
/// point, or `None` when no collapse sequence reaches a point.
///
/// Limited to [`COLLAPSE_MAX_VERTICES`] vertices; larger inputs return an
/// error.
pub fn is_collapsible(k: &Complex) -> Result<Option<CollapseTrace>> {
    let verts: Vec<u32> = k.vertices().collect();
    let n = verts.len();
    if n > COLLAPSE_MAX_VERTICES {
        return Err(Error::InvalidParameters(format!(
            "collapsibility search supports at most {COLLAPSE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    if k.euler_characteristic() != 1 {
        return Ok(None);
    }
    let mut index = [0u32; 64];
    for (i, &v) in verts.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let compact = |s: Simplex| s.vertices().fold(0u64, |m, v| m | 1 << index[v as usize]);
    let expand =
        |m: u64| Simplex::from_mask_unchecked(Vertices::of_mask(m).fold(0u64, |acc, i| acc | 1 << verts[i as usize]));
    let words = (1usize << n).div_ceil(64);
    let mut faces = FaceBits(vec![0; words]);
    let mut live: Vec<u64> = Vec::with_capacity(k.face_count());
    for &f in k.faces() {
        let m = compact(f);
        faces.set(m, true);
        live.push(m);
    }
    let mut search = CollapseSearch { n: n as u32, dead: HashSet::new(), nodes: 0 };
    let mut path = Vec::new();
    if !search.run(&mut faces, &mut live, &mut path) {
        return Ok(None);
    }
    let steps: Vec<(Simplex, Simplex)> = path.into_iter().map(|(t, s)| (expand(t), expand(s))).collect();
    let last = expand(live[0]);
    Ok(Some(CollapseTrace { steps, residue: Residue::Point(last.min_vertex()) }))
}

/// One reduced homology group: free rank and torsion coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Elementary divisors `> 1`, each dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Reduced integral homology, one entry per dimension `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }

    pub fn reduced_betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "H{k}={g}")?;
        }
        Ok(())
    }
}

/// Matrix of `∂_k : C_k → C_{k-1}` with rows indexed by `(k-1)`-faces and
/// columns by `k`-faces, both in bit order. `∂_0` is the augmentation
/// `C_0 → Z`. Removing the `i`-th smallest vertex carries sign `(-1)^i`.
pub fn boundary_matrix<T>(k: &Complex, dim: usize) -> Matrix<T>
where
    T: Clone + Integer + Signed,
{
    let cols: Vec<Simplex> = k.faces_of_dim(dim).collect();
    if dim == 0 {
        let mut m = Matrix::zeros(1, cols.len());
        for j in 0..cols.len() {
            m[(0, j)] = T::one();
        }
        return m;
    }
    let rows: Vec<Simplex> = k.faces_of_dim(dim - 1).collect();
    let index: HashMap<Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, v) in s.vertices().enumerate() {
            let face = s.difference(Simplex::from_mask_unchecked(1 << v)).expect("dim >= 1");
            let sign = if i % 2 == 0 { T::one() } else { T::zero() - T::one() };
            m[(index[&face], j)] = sign;
        }
    }
    m
}

/// Checks `∂_{k-1} ∘ ∂_k = 0` for every `k`, without dense products.
fn assert_boundary_squared_zero(k: &Complex) {
    for face in k.faces().iter().filter(|f| f.len() >= 2) {
        let mut acc: HashMap<u64, i64> = HashMap::new();
        for (i, v) in face.vertices().enumerate() {
            let sub = face.mask() & !(1 << v);
            let s1: i64 = if i % 2 == 0 { 1 } else { -1 };
            if sub.count_ones() == 1 {
                *acc.entry(0).or_default() += s1;
                continue;
            }
            for (j, w) in Vertices::of_mask(sub).enumerate() {
                let s2: i64 = if j % 2 == 0 { 1 } else { -1 };
                *acc.entry(sub & !(1 << w)).or_default() += s1 * s2;
            }
        }
        assert!(acc.values().all(|&c| c == 0), "boundary of boundary is nonzero at {face:?}");
    }
}

/// Reduced homology over an integer scalar `T`.
pub fn homology_with<T>(k: &Complex) -> HomologyProfile
where
    T: Clone + Integer + Signed + ToPrimitive,
{
    assert_boundary_squared_zero(k);
    let d = k.dim();
    let counts = k.face_profile().counts;
    // ranks[j] = rank of ∂_j; torsion[j] = torsion of ∂_j.
    let mut ranks = vec![0usize; d + 2];
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); d + 2];
    for j in 0..=d {
        let snf = smith_normal_form(&boundary_matrix::<T>(k, j), false);
        ranks[j] = snf.rank();
        torsion[j] = snf.torsion().iter().map(|t| t.abs().to_u64().expect("torsion coefficient fits in u64")).collect();
    }
    let groups = (0..=d)
        .map(|j| HomologyGroup { rank: counts[j] as usize - ranks[j] - ranks[j + 1], torsion: torsion[j + 1].clone() })
        .collect();
    HomologyProfile { groups }
}

/// Reduced integral homology with arbitrary-precision arithmetic.
pub fn homology(k: &Complex) -> HomologyProfile {
    homology_with::<BigInt>(k)
}

/// All reduced integral homology groups vanish.
pub fn is_acyclic(k: &Complex) -> bool {
    homology(k).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[u32]]) -> Complex {
        Complex::from_vertex_lists(lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    fn s(v: &[u32]) -> Simplex {
        Simplex::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn free_faces_of_triangle_and_circle() {
        let tri = cx(&[&[1, 2, 3]]);
        let ff = free_faces(&tri);
        assert_eq!(ff.len(), 3);
        assert!(ff.iter().all(|(t, s)| t.len() == 2 && *s == tri.facets()[0]));
        assert!(free_faces(&cx(&[&[0, 1], &[1, 2], &[0, 2]])).is_empty());
    }

    #[test]
    fn collapse_steps() {
        let tri = cx(&[&[1, 2, 3]]);
        let next = collapse_step(&tri, s(&[1, 2]), s(&[1, 2, 3])).unwrap();
        assert_eq!(next, cx(&[&[1, 3], &[2, 3]]));
        assert_eq!(next.face_count() + 2, tri.face_count());
        assert!(collapse_step(&tri, s(&[1]), s(&[1, 2])).is_err());
        let edge = cx(&[&[4, 5]]);
        let pt = collapse_step(&edge, s(&[4]), s(&[4, 5])).unwrap();
        assert_eq!(pt, cx(&[&[5]]));
    }

    #[test]
    fn collapsibility() {
        let tet = cx(&[&[0, 1, 2, 3]]);
        let trace = is_collapsible(&tet).unwrap().expect("cone collapses");
        assert!(trace.is_collapse_to_point());
        trace.replay(&tet).unwrap();
        let s2 = cx(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert!(is_collapsible(&s2).unwrap().is_none());
        assert!(is_collapsible(&cx(&[&[3]])).unwrap().unwrap().steps.is_empty());
    }

    #[test]
    fn trace_text_round_trip() {
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        let trace = is_collapsible(&k).unwrap().unwrap();
        let parsed = CollapseTrace::parse(&trace.to_string(), &k).unwrap();
        assert_eq!(parsed, trace);
        assert!(CollapseTrace::parse("0 1 => 0 1 2\n", &k).is_err());
        assert!(CollapseTrace::parse("0 -> 0 1 2\n", &k).is_err());
    }

    #[test]
    fn homology_of_spheres_and_cones() {
        let circle = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let h = homology(&circle);
        assert_eq!(h.group(0), HomologyGroup::default());
        assert_eq!(h.group(1), HomologyGroup { rank: 1, torsion: vec![] });
        assert!(!is_acyclic(&circle));
        assert!(is_acyclic(&circle.cone(9).unwrap()));
        assert!(is_acyclic(&cx(&[&[0, 1, 2, 3]])));
        let two_points = cx(&[&[0], &[1]]);
        assert_eq!(homology(&two_points).group(0).rank, 1);
        assert_eq!(homology_with::<i64>(&circle), h);
    }
}
