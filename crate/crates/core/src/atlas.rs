//! Constructors for the named complexes. Each constructor checks the
//! defining properties of its output on every build.
//!
//! Default labels are `0..n`. Use [`relabel_onto`] to move a complex onto
//! other labels, e.g. before a join.

use crate::canon::is_isomorphic;
use crate::complementarity::is_complementary;
use crate::complex::{Classification, Complex};
use crate::error::{Error, Result};
use crate::homotopy::homology;
use crate::io::parse_persisted;
use crate::simplex::{k_subsets, Simplex};

/// The persisted 6-vertex complementary 2-dimensional weak pseudomanifold,
/// as written by `cotopo search-complementary --n 6 --d 2 --emit-atlas`.
pub const RP2_6_DATA: &str = include_str!("../data/rp2_6.cplx");

fn verify(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(format!("constructor check failed: {what}")))
    }
}

fn first_n(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Moves `k` onto `labels`: the `i`-th smallest vertex becomes `labels[i]`.
pub fn relabel_onto(k: &Complex, labels: &[u32]) -> Result<Complex> {
    if labels.len() != k.n_vertices() {
        return Err(Error::InvalidParameters(format!("need {} labels, got {}", k.n_vertices(), labels.len())));
    }
    let target = Simplex::from_vertices(labels.iter().copied())?;
    if target.len() != labels.len() {
        return Err(Error::InvalidParameters("labels must be distinct".into()));
    }
    let mut map = vec![0u32; 64];
    for (v, &l) in k.vertices().zip(labels) {
        map[v as usize] = l;
    }
    Ok(k.relabel(&map))
}

/// `S^d_{d+2}`: all proper nonempty subsets of `{0, .., d+1}`.
pub fn standard_sphere(d: usize) -> Result<Complex> {
    if d + 2 > 64 {
        return Err(Error::InvalidParameters(format!("dimension {d} needs more than 64 labels")));
    }
    standard_sphere_on(Simplex::from_mask(first_n(d + 2))?)
}

/// The standard sphere on a given label set of size at least 2.
pub fn standard_sphere_on(labels: Simplex) -> Result<Complex> {
    if labels.len() < 2 {
        return Err(Error::InvalidParameters("a standard sphere needs at least 2 labels".into()));
    }
    let k = Complex::build(labels.boundary())?;
    let d = labels.len() - 2;
    verify(k.classify() == Classification::Pseudomanifold, "standard sphere is a pseudomanifold")?;
    verify(k.euler_characteristic() == if d.is_multiple_of(2) { 2 } else { 0 }, "standard sphere euler")?;
    Ok(k)
}

/// The `n`-cycle `S^1_n` on `0..n`.
pub fn cycle(n: usize) -> Result<Complex> {
    if !(3..=64).contains(&n) {
        return Err(Error::InvalidParameters(format!("a cycle needs 3..=64 vertices, got {n}")));
    }
    let k = Complex::from_vertex_lists((0..n as u32).map(|i| [i, (i + 1) % n as u32]))?;
    verify(k.classify() == Classification::Pseudomanifold, "cycle is a pseudomanifold")?;
    Ok(k)
}

/// True when `k` is a single circle (a connected 2-regular graph).
pub fn is_circle(k: &Complex) -> bool {
    k.dim() == 1 && k.n_vertices() >= 3 && k.classify() == Classification::Pseudomanifold
}

/// `K^d_{2d+3}` on the cycle `Z_{2d+3}`: for every path of `d+2` consecutive
/// vertices, delete one of its `d` interior vertices.
pub fn kuehnel_complex(d: usize) -> Result<Complex> {
    if !(2..=30).contains(&d) {
        return Err(Error::InvalidParameters(format!("need 2 <= d <= 30, got {d}")));
    }
    let m = 2 * d + 3;
    let mut facets = Vec::new();
    for i in 0..m {
        let path: Vec<u32> = (0..d + 2).map(|j| ((i + j) % m) as u32).collect();
        for skip in 1..=d {
            let f = path.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v);
            facets.push(Simplex::from_vertices(f)?);
        }
    }
    let k = Complex::build(facets)?;
    verify(k.facets().len() == d * m, "facet count d(2d+3)")?;
    verify(k.is_pure() && k.dim() == d, "pure of dimension d")?;
    verify(k.n_vertices() == m, "vertex count 2d+3")?;
    if d <= 3 {
        for v in k.vertices() {
            let link = k.link(Simplex::vertex(v)?)?;
            verify(link.classify() == Classification::Pseudomanifold, "vertex links are pseudomanifolds")?;
            if d == 3 {
                for w in link.vertices() {
                    verify(is_circle(&link.link(Simplex::vertex(w)?)?), "edge links are circles")?;
                }
            } else {
                verify(is_circle(&link), "vertex links are circles")?;
            }
        }
    }
    Ok(k)
}

/// The 7-vertex complementary weak pseudomanifold with boundary with facets
/// `{i, i+3, i+5, i+6}` over `Z_7`.
pub fn example2_complex() -> Complex {
    let k = Complex::from_vertex_lists((0..7u32).map(|i| [i, (i + 3) % 7, (i + 5) % 7, (i + 6) % 7]))
        .expect("valid labels");
    assert!(is_complementary(&k));
    assert_eq!(k.classify(), Classification::WeakPmWithBoundary);
    assert_eq!(k.cofacet_histogram(1).expect("dim 3"), [(2, 21)].into_iter().collect());
    for (i, a) in k.facets().iter().enumerate() {
        for b in &k.facets()[i + 1..] {
            assert_eq!((a.mask() & b.mask()).count_ones(), 2, "facets share exactly one edge");
        }
    }
    k
}

/// `S^1_3 * S^0_2` on `0..5`: the suspension of a triangle boundary.
pub fn suspended_triangle() -> Complex {
    let tri = standard_sphere(1).expect("small");
    let poles = relabel_onto(&standard_sphere(0).expect("small"), &[3, 4]).expect("distinct");
    tri.join(&poles).expect("disjoint")
}

/// The 12-vertex complex on `A_1 = {0..3}`, `A_2 = {4..7}`, `A_3 = {8..11}`
/// with facets `A_i ∪ (A_{i+1} ∖ {v})`; its unique amicable partition is
/// `(A_1, A_2, A_3)`.
pub fn amicable_example() -> Complex {
    let parts = [0b1111u64, 0b1111 << 4, 0b1111 << 8];
    let mut facets = Vec::new();
    for i in 0..3 {
        let next = parts[(i + 1) % 3];
        for r in k_subsets(next, 3) {
            facets.push(Simplex::from_mask(parts[i] | r).expect("nonempty"));
        }
    }
    Complex::build(facets).expect("nonempty")
}

/// Validates the properties a persisted 6-vertex real projective plane
/// must have.
pub fn validate_rp2_6(k: &Complex) -> Result<()> {
    verify(k.n_vertices() == 6, "6 vertices")?;
    verify(k.face_profile().counts == [6, 15, 10], "f-vector (6,15,10)")?;
    verify(is_complementary(k), "complementary")?;
    verify(k.classify() == Classification::Pseudomanifold, "pseudomanifold")?;
    verify(k.euler_characteristic() == 1, "euler characteristic 1")?;
    for v in k.vertices() {
        verify(is_circle(&k.link(Simplex::vertex(v)?)?), "vertex links are circles")?;
    }
    let h = homology(k);
    verify(h.group(1).rank == 0 && h.group(1).torsion == [2], "H1 = Z/2")?;
    verify(h.group(2).is_trivial() && h.group(0).is_trivial(), "H0 = H2 = 0")?;
    Ok(())
}

/// The 6-vertex real projective plane, loaded from the persisted search
/// output and revalidated.
pub fn rp2_6() -> Result<Complex> {
    rp2_6_from(RP2_6_DATA)
}

/// Like [`rp2_6`] but reading the facet-list text from elsewhere.
pub fn rp2_6_from(text: &str) -> Result<Complex> {
    let k = parse_persisted(text)?;
    validate_rp2_6(&k)?;
    Ok(k)
}

/// Names accepted by [`construct`], with their parameter lists.
pub const NAMES: &[(&str, &str)] = &[
    ("standard-sphere", "D"),
    ("cycle", "N"),
    ("kuehnel", "D"),
    ("example2", ""),
    ("rp2-6", ""),
    ("suspended-triangle", ""),
    ("amicable-example", ""),
];

/// Builds a named complex from integer parameters.
pub fn construct(name: &str, params: &[usize]) -> Result<Complex> {
    let one = || {
        params
            .first()
            .copied()
            .filter(|_| params.len() == 1)
            .ok_or_else(|| Error::InvalidParameters(format!("{name} takes exactly one integer parameter")))
    };
    let none = || {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{name} takes no parameters")))
        }
    };
    match name {
        "standard-sphere" => standard_sphere(one()?),
        "cycle" => cycle(one()?),
        "kuehnel" => kuehnel_complex(one()?),
        "example2" => none().map(|_| example2_complex()),
        "rp2-6" => none().and_then(|_| rp2_6()),
        "suspended-triangle" => none().map(|_| suspended_triangle()),
        "amicable-example" => none().map(|_| amicable_example()),
        _ => Err(Error::InvalidParameters(format!("unknown complex {name:?}"))),
    }
}

/// The join of the standard `a`- and `b`-spheres is an `(a+b+1)`-sphere on
/// `a+b+4` vertices: a pseudomanifold with the homology of a sphere, and
/// the same up to isomorphism in either order. It is never the standard
/// `(a+b+1)`-sphere, which has one vertex fewer.
pub fn sphere_join_is_sphere(a: usize, b: usize) -> Result<bool> {
    let left = standard_sphere(a)?;
    let right = relabel_onto(&standard_sphere(b)?, &(a as u32 + 2..a as u32 + b as u32 + 4).collect::<Vec<_>>())?;
    let joined = left.join(&right)?;
    let swapped = relabel_onto(&standard_sphere(b)?, &(0..b as u32 + 2).collect::<Vec<_>>())?
        .join(&relabel_onto(&standard_sphere(a)?, &(b as u32 + 2..a as u32 + b as u32 + 4).collect::<Vec<_>>())?)?;
    let dim = a + b + 1;
    let h = homology(&joined);
    let sphere_homology = h.reduced_betti().iter().enumerate().all(|(k, &r)| r == usize::from(k == dim))
        && (0..=dim).all(|k| h.group(k).torsion.is_empty());
    Ok(joined.n_vertices() == a + b + 4
        && joined.dim() == dim
        && joined.classify() == Classification::Pseudomanifold
        && sphere_homology
        && is_isomorphic(&joined, &swapped).is_some()
        && is_isomorphic(&joined, &standard_sphere(dim)?).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::is_collapsible;

    #[test]
    fn spheres() {
        let s0 = standard_sphere(0).unwrap();
        assert_eq!(s0.facets().len(), 2);
        assert!(s0.facets().iter().all(|f| f.len() == 1));
        assert_eq!(standard_sphere(2).unwrap().face_profile().counts, vec![4, 6, 4]);
        let s3 = standard_sphere(3).unwrap();
        assert_eq!(s3.facets().len(), 5);
        assert!(is_collapsible(&s3).unwrap().is_none());
        assert!(standard_sphere_on(Simplex::vertex(3).unwrap()).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle(3).unwrap(), standard_sphere(1).unwrap());
        assert_eq!(cycle(9).unwrap().n_vertices(), 9);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn kuehnel() {
        let k3 = kuehnel_complex(3).unwrap();
        assert_eq!(k3.facets().len(), 27);
        assert!(k3.is_k_neighbourly(2));
        assert_eq!(k3.face_profile().counts, vec![9, 36, 54, 27]);
        assert_eq!(k3.euler_characteristic(), 0);
        let k2 = kuehnel_complex(2).unwrap();
        assert_eq!((k2.n_vertices(), k2.facets().len()), (7, 14));
        assert!(kuehnel_complex(1).is_err());
    }

    #[test]
    fn example2_checks() {
        let k = example2_complex();
        assert_eq!(k.face_profile().counts, vec![7, 21, 28, 7]);
    }

    #[test]
    fn join_spheres() {
        for (a, b) in [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)] {
            assert!(sphere_join_is_sphere(a, b).unwrap(), "S^{a} * S^{b}");
        }
    }

    #[test]
    fn named_construction() {
        assert_eq!(construct("cycle", &[5]).unwrap().n_vertices(), 5);
        assert!(construct("cycle", &[]).is_err());
        assert!(construct("example2", &[1]).is_err());
        assert!(construct("nope", &[]).is_err());
        for (name, params) in NAMES {
            let p: Vec<usize> = if params.is_empty() { vec![] } else { vec![3] };
            construct(name, &p).unwrap();
        }
    }
}
