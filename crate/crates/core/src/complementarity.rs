//! Complementarity predicates and the exact counting identities for a
//! hypothetical 12-vertex 6-dimensional complementary weak pseudomanifold.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, FaceProfile};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Solution};
use crate::simplex::{binomial, Simplex};
use crate::Rational;

/// For every nonempty proper `A ⊂ V`, exactly one of `A`, `V ∖ A` is a face.
///
/// A one-vertex complex has no complementary pairs and is complementary
/// vacuously. The face count is checked first: a complementary complex on
/// `n` vertices has exactly `2^(n-1) - 1` faces.
pub fn is_complementary(k: &Complex) -> bool {
    let n = k.n_vertices();
    if n == 1 {
        return true;
    }
    if n > 40 {
        return false;
    }
    if k.face_count() as u64 != (1u64 << (n - 1)) - 1 {
        return false;
    }
    let full = k.universe().mask();
    // With the right count it suffices that no face has a face as complement.
    k.faces().iter().all(|f| match Simplex::from_mask(full & !f.mask()) {
        Ok(rest) => !k.is_face(rest),
        Err(_) => true,
    })
}

/// Solves the face counts forced on an `n`-vertex `d`-dimensional
/// complementary weak pseudomanifold.
///
/// Sets of size `≤ n-d-2` are faces (their complements are too big to be
/// faces), sets of size `≥ d+2` are not, each complementary pair of middle
/// sizes contributes exactly one face, and ridges lie in two facets:
/// `(d+1)·f_d = 2·f_{d-1}`. The resulting linear system is solved exactly.
pub fn forced_profile(n: usize, d: usize) -> Result<FaceProfile> {
    if n == 0 || d + 1 > n || n > 63 {
        return Err(Error::InvalidParameters(format!("need 1 <= d+1 <= n <= 63, got n={n}, d={d}")));
    }
    let lo = (n as isize - d as isize - 1).max(1) as usize;
    let hi = (d + 1).min(n - 1);
    let middle: Vec<usize> = (lo..=hi).collect();
    let slot = |size: usize| middle.iter().position(|&s| s == size);

    // Known count of a size, or `None` when it is an unknown.
    let known = |size: usize| -> Option<u64> {
        if slot(size).is_some() {
            None
        } else if size == 0 || size > d + 1 {
            Some(0)
        } else if size + d + 2 <= n {
            Some(binomial(n as u64, size as u64))
        } else {
            Some(0)
        }
    };

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let big = |x: u64| Rational::from_integer(BigInt::from(x));
    let unknowns = middle.len();
    for &s in &middle {
        let t = n - s;
        if t < s {
            continue;
        }
        let mut row = vec![Rational::zero(); unknowns];
        row[slot(s).unwrap()] += Rational::one();
        match slot(t) {
            Some(j) => row[j] += Rational::one(),
            None => unreachable!("middle sizes pair among themselves"),
        }
        rows.push(row);
        rhs.push(big(binomial(n as u64, s as u64)));
    }
    // (d+1)·#(size d+1) - 2·#(size d) = 0, moving known terms to the right.
    if d >= 1 {
        let mut row = vec![Rational::zero(); unknowns];
        let mut constant = Rational::zero();
        for (size, coeff) in [(d + 1, (d + 1) as i64), (d, -2i64)] {
            let c = Rational::from_integer(BigInt::from(coeff));
            match slot(size) {
                Some(j) => row[j] += c,
                None => constant -= c * big(known(size).unwrap()),
            }
        }
        rows.push(row);
        rhs.push(constant);
    }

    let values: Vec<Rational> = if unknowns == 0 {
        Vec::new()
    } else {
        let a = Matrix::from_rows(rows.clone());
        match solve(&a, &rhs) {
            Solution::Unique(v) => v,
            Solution::Underdetermined(free) => return Err(Error::Underdetermined { dim: middle[free[0]] - 1 }),
            Solution::Inconsistent => return Err(Error::Inconsistent(format!("no solution for n={n}, d={d}"))),
        }
    };
    if unknowns == 0 {
        // Only the ridge identity can fail.
        if rows.iter().zip(&rhs).any(|(_, r)| !r.is_zero()) {
            return Err(Error::Inconsistent(format!("ridge double count fails for n={n}, d={d}")));
        }
    }

    let mut counts = Vec::with_capacity(d + 1);
    for size in 1..=d + 1 {
        let c = match slot(size) {
            Some(j) => {
                let v = &values[j];
                if !v.is_integer() || v < &Rational::zero() {
                    return Err(Error::Inconsistent(format!("f_{} = {v} is not a count", size - 1)));
                }
                v.to_integer().to_u64().ok_or_else(|| Error::Inconsistent("overflow".into()))?
            }
            None => known(size).unwrap(),
        };
        if c > binomial(n as u64, size as u64) {
            return Err(Error::Inconsistent(format!("f_{} = {c} exceeds C({n},{size})", size - 1)));
        }
        counts.push(c);
    }
    if counts[d] == 0 {
        return Err(Error::Inconsistent(format!("no facets for n={n}, d={d}")));
    }
    Ok(FaceProfile::from_counts(counts))
}

/// An ordered triple of disjoint faces covering the vertex set, the link of
/// each being the standard sphere on the next (indices mod 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AmicablePartition {
    pub parts: [Simplex; 3],
}

/// `k` is the standard sphere on its own vertex set `w`: all proper nonempty
/// subsets of `w`, with `|w| ≥ 2`.
pub fn is_standard_sphere_on(k: &Complex, w: Simplex) -> bool {
    k.universe() == w
        && w.len() >= 2
        && k.facets().len() == w.len()
        && k.facets().iter().all(|f| f.len() == w.len() - 1)
}

/// All amicable partitions, each reported once up to cyclic rotation, with
/// the part holding the smallest vertex first.
pub fn find_amicable_partitions(k: &Complex) -> Vec<AmicablePartition> {
    let full = k.universe();
    let sphere_link = |a: Simplex| -> Option<Simplex> {
        let l = k.link(a).ok()?;
        let w = l.universe();
        is_standard_sphere_on(&l, w).then_some(w)
    };
    let mut found = BTreeSet::new();
    for &a1 in k.faces() {
        let Some(a2) = sphere_link(a1) else { continue };
        if !k.is_face(a2) {
            continue;
        }
        let Some(a3) = full.difference(a1.union(a2)) else { continue };
        if !k.is_face(a3) || sphere_link(a2) != Some(a3) || sphere_link(a3) != Some(a1) {
            continue;
        }
        let mut parts = [a1, a2, a3];
        let first = parts.iter().position(|p| p.contains(full.min_vertex())).unwrap();
        parts.rotate_left(first);
        found.insert(AmicablePartition { parts });
    }
    found.into_iter().collect()
}

/// Histogram of `|α ∩ β|` over the facets `β ≠ α`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub by_overlap: BTreeMap<usize, usize>,
}

impl IntersectionProfile {
    pub fn total(&self) -> usize {
        self.by_overlap.values().sum()
    }
}

pub fn intersection_profile(k: &Complex, alpha: Simplex) -> Result<IntersectionProfile> {
    if !k.is_facet(alpha) {
        return Err(Error::NotAFacet(alpha));
    }
    let mut by_overlap = BTreeMap::new();
    for &beta in k.facets().iter().filter(|b| **b != alpha) {
        let c = (alpha.mask() & beta.mask()).count_ones() as usize;
        *by_overlap.entry(c).or_insert(0) += 1;
    }
    Ok(IntersectionProfile { by_overlap })
}

/// Histogram over `k`-faces of how many facets contain each.
pub fn cofacet_histogram(complex: &Complex, k: usize) -> Result<BTreeMap<usize, usize>> {
    complex.cofacet_histogram(k)
}

/// Every count the non-existence argument for a 12-vertex 6-dimensional
/// complementary weak pseudomanifold relies on, recomputed from first
/// principles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub forced_profile: FaceProfile,
    /// `e_1 = slope·e_0 + offset`, likewise for `e_2`.
    pub e1_relation: (i64, i64),
    pub e2_relation: (i64, i64),
    /// `(e_0, e_1, e_2)`: `(6-j)`-faces meeting a facet in `6-j` vertices.
    pub e: (i64, i64, i64),
    /// Facets meeting a fixed facet in 3, 4, 5 and 6 vertices.
    pub facet_meet: (i64, i64, i64, i64),
    /// `(Σa_i, Σi·a_i, Σi(i-1)·a_i)` where `a_i` counts edges in `i` facets.
    pub moments: (i64, i64, i64),
    pub mean_edge_facets: i64,
    /// `Σ(i - mean)²·a_i`.
    pub edge_variance: i64,
    pub edge_facet_count: i64,
    pub vertex_facet_count: i64,
    pub facets_meeting_edge: i64,
    pub facets_missing_edge: i64,
    pub edge_4face_count: i64,
    pub edge_link_profile: FaceProfile,
    /// `(Σc_i, Σi·c_i)` where `c_i` counts 3-faces of degree `i`.
    pub tetra_sums: (i64, i64),
    /// `Σ(2i-4)·c_i`.
    pub tetra_weighted: i64,
    /// Pairs (3-face, facet): the upper bound for `tetra_weighted`.
    pub tetra_facet_pairs: i64,
    pub euler: i64,
    /// Euler characteristic is odd while the dimension is `≡ 2 (mod 4)`.
    pub parity_contradiction: bool,
}

fn c(n: usize, k: usize) -> i64 {
    binomial(n as u64, k as u64) as i64
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(format!("audit identity failed: {what}")))
    }
}

/// Affine coefficients `(p, q)` with `d_j = p·d_0 + q` for the face counts of a
/// 2-sphere link (Euler characteristic 2, every edge in two triangles).
fn two_sphere_relations() -> Result<[(i64, i64); 2]> {
    let r = |x: i64| Ratio::from_integer(x);
    // unknowns (d1, d2): -d1 + d2 = 2 - d0, 2·d1 - 3·d2 = 0
    let a = Matrix::from_rows(vec![vec![r(-1), r(1)], vec![r(2), r(-3)]]);
    let at = |d0: i64| match solve(&a, &[r(2 - d0), r(0)]) {
        Solution::Unique(v) => Ok((v[0], v[1])),
        _ => Err(Error::Verification("2-sphere relations are singular".into())),
    };
    let (a0, b0) = at(0)?;
    let (a1, b1) = at(1)?;
    let int = |x: Ratio<i64>| x.to_integer();
    Ok([(int(a1 - a0), int(a0)), (int(b1 - b0), int(b0))])
}

/// Recomputes the counting chain. Any internal inconsistency is an error.
pub fn m612_audit() -> Result<AuditReport> {
    let (n, d) = (12usize, 6usize);
    let fp = forced_profile(n, d)?;
    let f = |i: usize| fp.counts[i] as i64;
    let facet = d + 1;
    let outside = n - facet;
    let facets = f(d);

    // 4-neighbourly: every 4-set is a face, so 3-faces avoiding a facet are
    // exactly the 4-subsets of the remaining vertices.
    check(f(3) == c(n, 4), "4-neighbourliness")?;
    let disjoint_tetra = c(outside, 4);

    let [(p1, q1), (p2, q2)] = two_sphere_relations()?;
    // e_j = outside·C(facet, j+1) - Σ d_j, with Σ d_0 = outside·facet - e_0.
    let base = |j: usize| outside as i64 * c(facet, j + 1);
    let sum_d0_offset = base(0);
    let e1_relation = (p1, base(1) - p1 * sum_d0_offset - q1 * disjoint_tetra);
    let e2_relation = (p2, base(2) - p2 * sum_d0_offset - q2 * disjoint_tetra);
    // Each ridge of a facet lies in exactly one other facet.
    let e0 = facet as i64;
    let e1 = e1_relation.0 * e0 + e1_relation.1;
    let e2 = e2_relation.0 * e0 + e2_relation.1;

    // Facets meeting a fixed facet.
    let meet6 = e0;
    // A 7-set meeting the facet in 3 vertices is a facet iff its complement,
    // a 5-set meeting it in 4, is not a face.
    let meet3 = c(facet, 3) * c(outside, 4) - e2;
    let inner_4faces = c(facet, 5);
    let sum_circle_vertices = e1 + 2 * inner_4faces;
    let meet5 = sum_circle_vertices - 3 * inner_4faces;
    let meet4 = facets - 1 - meet3 - meet5 - meet6;
    check(meet3 >= 0 && meet4 >= 0 && meet5 >= 0, "facet meeting counts are nonnegative")?;

    let s0 = c(n, 2);
    let s1 = facets * c(facet, 2);
    let s2 = facets * (meet3 * c(3, 2) + meet4 * c(4, 2) + meet5 * c(5, 2) + meet6 * c(6, 2));
    check(s1 % s0 == 0, "mean edge degree is integral")?;
    let mean = s1 / s0;
    // Σ(i-m)²a_i = Σi(i-1)a_i + Σi·a_i - 2m·Σi·a_i + m²·Σa_i
    let variance = s2 + s1 - 2 * mean * s1 + mean * mean * s0;
    check(variance == 0, "edge degrees are constant")?;
    let r_num = (n as i64 - 1) * mean;
    check(r_num % (facet as i64 - 1) == 0, "vertex degree is integral")?;
    let r = r_num / (facet as i64 - 1);

    let meeting_edge = 2 * r - mean;
    let missing_edge = facets - meeting_edge;
    // A 5-set through the edge is a face iff its complement, a 7-set missing
    // the edge, is not a facet.
    let edge_4faces = c(n - 2, 3) - missing_edge;
    let link_f4 = mean;
    check((5 * link_f4) % 2 == 0, "edge link ridge count is integral")?;
    let link = FaceProfile::from_counts(vec![
        (n - 2) as u64,
        c(n - 2, 2) as u64,
        edge_4faces as u64,
        (5 * link_f4 / 2) as u64,
        link_f4 as u64,
    ]);

    let tetra_sums = (f(3), f(4) * 5);
    let tetra_weighted = 2 * tetra_sums.1 - 4 * tetra_sums.0;
    let tetra_facet_pairs = facets * c(facet, 4);
    check(tetra_weighted <= tetra_facet_pairs, "3-face link bound")?;

    let euler = fp.euler;
    let parity_contradiction = d % 4 == 2 && euler.rem_euclid(2) == 1;
    Ok(AuditReport {
        forced_profile: fp,
        e1_relation,
        e2_relation,
        e: (e0, e1, e2),
        facet_meet: (meet3, meet4, meet5, meet6),
        moments: (s0, s1, s2),
        mean_edge_facets: mean,
        edge_variance: variance,
        edge_facet_count: mean,
        vertex_facet_count: r,
        facets_meeting_edge: meeting_edge,
        facets_missing_edge: missing_edge,
        edge_4face_count: edge_4faces,
        edge_link_profile: link,
        tetra_sums,
        tetra_weighted,
        tetra_facet_pairs,
        euler,
        parity_contradiction,
    })
}

impl AuditReport {
    /// True when the 3-face bound is attained and the parity contradiction
    /// is reached.
    pub fn passes(&self) -> bool {
        self.edge_variance == 0
            && self.tetra_weighted == self.tetra_facet_pairs
            && self.edge_link_profile.euler == 2
            && self.parity_contradiction
    }
}

/// Flat `key=value` lines, one identity per line, ending in a verdict line.
impl fmt::Display for AuditReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.forced_profile.counts.iter().enumerate() {
            writeln!(out, "f{i}={c}")?;
        }
        writeln!(out, "euler={}", self.euler)?;
        writeln!(out, "e1_slope={}", self.e1_relation.0)?;
        writeln!(out, "e1_offset={}", self.e1_relation.1)?;
        writeln!(out, "e2_slope={}", self.e2_relation.0)?;
        writeln!(out, "e2_offset={}", self.e2_relation.1)?;
        writeln!(out, "e0={}", self.e.0)?;
        writeln!(out, "e1={}", self.e.1)?;
        writeln!(out, "e2={}", self.e.2)?;
        writeln!(out, "meet3={}", self.facet_meet.0)?;
        writeln!(out, "meet4={}", self.facet_meet.1)?;
        writeln!(out, "meet5={}", self.facet_meet.2)?;
        writeln!(out, "meet6={}", self.facet_meet.3)?;
        writeln!(out, "sum_a={}", self.moments.0)?;
        writeln!(out, "sum_i_a={}", self.moments.1)?;
        writeln!(out, "sum_i_i1_a={}", self.moments.2)?;
        writeln!(out, "edge_variance={}", self.edge_variance)?;
        writeln!(out, "edge_facets={}", self.edge_facet_count)?;
        writeln!(out, "vertex_facets={}", self.vertex_facet_count)?;
        writeln!(out, "facets_meeting_edge={}", self.facets_meeting_edge)?;
        writeln!(out, "facets_missing_edge={}", self.facets_missing_edge)?;
        writeln!(out, "edge_4faces={}", self.edge_4face_count)?;
        for (i, c) in self.edge_link_profile.counts.iter().enumerate() {
            writeln!(out, "edge_link_f{i}={c}")?;
        }
        writeln!(out, "edge_link_euler={}", self.edge_link_profile.euler)?;
        writeln!(out, "sum_c={}", self.tetra_sums.0)?;
        writeln!(out, "sum_i_c={}", self.tetra_sums.1)?;
        writeln!(out, "sum_2i4_c={}", self.tetra_weighted)?;
        writeln!(out, "tetra_facet_pairs={}", self.tetra_facet_pairs)?;
        writeln!(out, "parity_contradiction={}", u8::from(self.parity_contradiction))?;
        writeln!(out, "verdict={}", if self.passes() { "PASS" } else { "FAIL" })
    }
}
