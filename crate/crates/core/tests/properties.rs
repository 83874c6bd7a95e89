use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use cotopo::atlas;
use cotopo::homotopy::{boundary_matrix, collapse_step, free_faces, homology, homology_with, is_collapsible};
use cotopo::linalg::{determinant, smith_normal_form, solve, Matrix, Solution};
use cotopo::{canonical_form, is_isomorphic, Complex, Rational, Simplex};

fn arb_complex(max_vertices: u32, max_facets: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(prop::collection::btree_set(0..max_vertices, 1..=4), 1..=max_facets)
        .prop_map(|facets| Complex::from_vertex_lists(facets).unwrap())
}

fn atlas_complexes() -> Vec<(String, Complex)> {
    let mut out = Vec::new();
    for d in 0..=4 {
        out.push((format!("S^{d}"), atlas::standard_sphere(d).unwrap()));
    }
    for n in [4, 5, 8] {
        out.push((format!("C{n}"), atlas::cycle(n).unwrap()));
    }
    out.push(("K2".into(), atlas::kuehnel_complex(2).unwrap()));
    out.push(("K3".into(), atlas::kuehnel_complex(3).unwrap()));
    out.push(("example2".into(), atlas::example2_complex()));
    out.push(("rp2".into(), atlas::rp2_6().unwrap()));
    out.push(("suspension".into(), atlas::suspended_triangle()));
    out.push(("amicable".into(), atlas::amicable_example()));
    out
}

#[test]
fn standard_sphere_homology() {
    for d in 0..=4 {
        let h = homology(&atlas::standard_sphere(d).unwrap());
        for (k, g) in h.groups.iter().enumerate() {
            assert_eq!(g.rank, usize::from(k == d), "S^{d} rank in degree {k}");
            assert!(g.torsion.is_empty());
        }
    }
}

#[test]
fn canonical_form_survives_relabelling() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut labels: Vec<u32> = (0..64).collect();
    for (name, k) in atlas_complexes() {
        let form = canonical_form(&k);
        for _ in 0..1000 {
            labels.shuffle(&mut rng);
            let l = k.relabel(&labels);
            assert_eq!(canonical_form(&l), form, "{name}");
        }
        let l = k.relabel(&labels);
        let cert = is_isomorphic(&k, &l).expect("relabelled copy is isomorphic");
        assert!(cert.verify(&k, &l), "{name}");
    }
}

#[test]
fn distinct_atlas_entries_are_distinct() {
    let forms: Vec<_> = atlas_complexes().into_iter().map(|(_, k)| canonical_form(&k)).collect();
    for (i, a) in forms.iter().enumerate() {
        for b in &forms[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

fn integer_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, cols), rows)
}

fn to_big(m: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boundary_of_boundary_vanishes(k in arb_complex(7, 6)) {
        for dim in 1..=k.dim() {
            let outer = boundary_matrix::<BigInt>(&k, dim - 1);
            let inner = boundary_matrix::<BigInt>(&k, dim);
            prop_assert!(outer.mul(&inner).is_zero());
        }
    }

    #[test]
    fn collapses_preserve_homology(k in arb_complex(6, 5), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let before = homology(&k);
        let mut cur = k.clone();
        loop {
            let free = free_faces(&cur);
            if free.is_empty() || (cur.facets().len() == 1 && cur.facets()[0].len() == 1) {
                break;
            }
            let (tau, sigma) = free[rng.gen_range(0..free.len())];
            cur = collapse_step(&cur, tau, sigma).unwrap();
            let after = homology(&cur);
            for d in 0..before.groups.len().max(after.groups.len()) {
                prop_assert_eq!(after.group(d), before.group(d));
            }
        }
    }

    #[test]
    fn collapsible_implies_acyclic(k in arb_complex(6, 5)) {
        if let Some(trace) = is_collapsible(&k).unwrap() {
            prop_assert!(trace.is_collapse_to_point());
            prop_assert!(homology(&k).is_trivial());
            trace.replay(&k).unwrap();
        }
    }

    #[test]
    fn homology_independent_of_integer_type(k in arb_complex(6, 5)) {
        prop_assert_eq!(homology_with::<i64>(&k), homology(&k));
    }

    #[test]
    fn euler_matches_betti(k in arb_complex(7, 6)) {
        // Reduced betti numbers give chi - 1.
        let h = homology(&k);
        let alt: i64 = h.reduced_betti().iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, k.euler_characteristic() - 1);
    }

    #[test]
    fn smith_form_factors(rows in 1usize..=5, cols in 1usize..=5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let raw: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-12..=12)).collect()).collect();
        let a = to_big(&raw);
        let snf = smith_normal_form(&a, true);
        let (u, v) = (snf.u.clone().unwrap(), snf.v.clone().unwrap());
        prop_assert_eq!(u.mul(&a).mul(&v), snf.d.clone());
        prop_assert!(determinant(&u) == BigInt::from(1) || determinant(&u) == BigInt::from(-1));
        prop_assert!(determinant(&v) == BigInt::from(1) || determinant(&v) == BigInt::from(-1));
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(snf.d[(i, j)].clone(), BigInt::from(0));
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        prop_assert!(f.iter().all(|x| *x > BigInt::from(0)));
    }

    #[test]
    fn smith_form_generic_over_i64(raw in integer_matrix(4, 3)) {
        let big = smith_normal_form(&to_big(&raw), false).invariant_factors();
        let small = smith_normal_form(&Matrix::from_rows(raw.clone()), false).invariant_factors();
        prop_assert_eq!(big, small.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn solve_recovers_solution(raw in integer_matrix(4, 4), x in prop::collection::vec(-9i64..=9, 4)) {
        let a: Matrix<Rational> = Matrix::from_rows(
            raw.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect(),
        );
        let xs: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let b: Vec<Rational> = (0..4).map(|i| (0..4).map(|j| a[(i, j)].clone() * xs[j].clone()).sum()).collect();
        let det = determinant(&to_big(&raw));
        match solve(&a, &b) {
            Solution::Unique(found) => {
                prop_assert!(det != BigInt::from(0));
                prop_assert_eq!(found, xs);
            }
            Solution::Underdetermined(_) => prop_assert_eq!(det, BigInt::from(0)),
            Solution::Inconsistent => prop_assert!(false, "b lies in the image"),
        }
    }

    #[test]
    fn link_faces_are_disjoint_cofaces(k in arb_complex(7, 6), pick in any::<prop::sample::Index>()) {
        let sigma = *pick.get(k.faces());
        if let Ok(l) = k.link(sigma) {
            for &t in l.faces() {
                prop_assert!(t.is_disjoint(sigma));
                prop_assert!(k.is_face(t.union(sigma)));
            }
            for &f in k.faces() {
                if f.is_disjoint(sigma) && k.is_face(f.union(sigma)) {
                    prop_assert!(l.is_face(f));
                }
            }
        } else {
            prop_assert!(k.is_facet(sigma));
        }
    }
}

#[test]
fn simplex_is_collapsible_and_contractible() {
    for n in 1..=6u32 {
        let k = Complex::simplex(Simplex::from_vertices(0..n).unwrap());
        assert!(is_collapsible(&k).unwrap().is_some());
        assert!(homology(&k).is_trivial());
    }
}
