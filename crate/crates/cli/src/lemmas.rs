//! Registry of reproducible claims, each bound to a runner that recomputes
//! it from scratch and compares against the published numbers.

use std::fmt::Debug;

use cotopo::atlas::{example2_complex, is_circle, kuehnel_complex, rp2_6, standard_sphere, suspended_triangle};
use cotopo::complementarity::{forced_profile, is_complementary, m612_audit};
use cotopo::enumerate::{
    enumerate_weak_pseudomanifolds, max_non_edges_at_vertex, verify_acyclic_implies_collapsible,
    verify_two_sphere_containment,
};
use cotopo::homotopy::homology;
use cotopo::search::{search_complementary, SearchOptions};
use cotopo::{is_isomorphic, Classification, Complex, Result, Simplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Tier {
    Fast,
    Long,
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

fn compact<T: Debug>(x: &T) -> String {
    format!("{x:?}").replace(", ", ",")
}

fn eq<T: Debug + PartialEq>(label: &str, expected: T, found: T) -> Check {
    Check { label: label.into(), pass: expected == found, expected: compact(&expected), found: compact(&found) }
}

fn holds(label: &str, ok: bool) -> Check {
    eq(label, true, ok)
}

/// Reported but not compared.
fn info<T: Debug>(label: &str, found: T) -> Check {
    Check { label: label.into(), expected: "-".into(), found: compact(&found), pass: true }
}

pub struct LemmaCheck {
    pub id: &'static str,
    pub tier: Tier,
    pub statement: &'static str,
    pub run: fn() -> Result<Vec<Check>>,
}

pub const REGISTRY: &[LemmaCheck] = &[
    LemmaCheck {
        id: "L3.2",
        tier: Tier::Fast,
        statement: "on 5 vertices, triangles covering each edge at least twice contain a 2-sphere",
        run: two_sphere_containment,
    },
    LemmaCheck {
        id: "L3.3",
        tier: Tier::Fast,
        statement: "every integrally acyclic complex on at most 5 vertices is collapsible",
        run: acyclic_collapsible,
    },
    LemmaCheck {
        id: "L4.1",
        tier: Tier::Fast,
        statement: "a complementary 6-dimensional weak pseudomanifold on 12 vertices has f = (12,66,220,495,660,462,132)",
        run: forced_12_6,
    },
    LemmaCheck {
        id: "L4.5-count",
        tier: Tier::Fast,
        statement: "3-face degree sums: 495, 3300 and 2*3300-4*495 = 4620 = 132*35",
        run: tetra_count,
    },
    LemmaCheck {
        id: "L4.10",
        tier: Tier::Fast,
        statement: "faces meeting a facet in 6-j vertices: e = (7, 51, 139)",
        run: audit_e,
    },
    LemmaCheck {
        id: "L4.11",
        tier: Tier::Fast,
        statement: "facets meeting a facet in 3, 4, 5, 6 vertices: 36, 58, 30, 7",
        run: audit_meet,
    },
    LemmaCheck {
        id: "L4.12",
        tier: Tier::Fast,
        statement: "each edge lies in 42 facets and each vertex in 77",
        run: audit_moments,
    },
    LemmaCheck {
        id: "L4.13",
        tier: Tier::Fast,
        statement: "edge links have f = (10,45,100,105,42) and euler characteristic 2, forcing the parity contradiction",
        run: audit_edge_link,
    },
    LemmaCheck {
        id: "E1",
        tier: Tier::Fast,
        statement: "the 9-vertex Kuehnel 3-complex: 27 facets, 2-neighbourly, euler 0, consecutive 4-sets span 2-spheres",
        run: kuehnel,
    },
    LemmaCheck {
        id: "E2",
        tier: Tier::Fast,
        statement: "the 7-vertex complementary weak pseudomanifold with boundary",
        run: example2,
    },
    LemmaCheck {
        id: "U4WPM",
        tier: Tier::Fast,
        statement: "the only 4-vertex 2-dimensional weak pseudomanifold is the tetrahedron boundary",
        run: unique_4,
    },
    LemmaCheck {
        id: "U5WPM",
        tier: Tier::Fast,
        statement: "the only 5-vertex 2-dimensional weak pseudomanifold is the suspended triangle; on 6 vertices each vertex misses at most two edges",
        run: unique_5,
    },
    LemmaCheck {
        id: "RP26",
        tier: Tier::Fast,
        statement: "exactly one complementary 2-dimensional weak pseudomanifold on 6 vertices, the real projective plane",
        run: rp2,
    },
    LemmaCheck {
        id: "CP29",
        tier: Tier::Long,
        statement: "exactly one complementary 4-dimensional weak pseudomanifold on 9 vertices",
        run: cp2,
    },
];

pub fn find(id: &str) -> Option<&'static LemmaCheck> {
    REGISTRY.iter().find(|l| l.id.eq_ignore_ascii_case(id))
}

fn two_sphere_containment() -> Result<Vec<Check>> {
    let r = verify_two_sphere_containment();
    Ok(vec![
        eq("triangle subsets examined", 1024, r.configurations),
        info("configurations meeting the hypothesis", r.hypothesis_holds),
        info("containing a tetrahedron boundary", r.contains_tetrahedron_boundary),
        info("containing a suspended triangle", r.contains_suspended_triangle),
        eq("exceptions", 0, r.exceptions.len()),
    ])
}

fn acyclic_collapsible() -> Result<Vec<Check>> {
    let r = verify_acyclic_implies_collapsible(5)?;
    let mut checks: Vec<Check> = r
        .rows
        .iter()
        .map(|row| {
            info(
                &format!("{} vertices: classes, acyclic, collapsible", row.vertices),
                (row.classes, row.acyclic, row.collapsible),
            )
        })
        .collect();
    checks.push(eq("acyclic classes with euler characteristic != 1", 0, r.euler_violations.len()));
    checks.push(eq("acyclic but not collapsible", 0, r.counterexamples.len()));
    Ok(checks)
}

fn forced_12_6() -> Result<Vec<Check>> {
    let p = forced_profile(12, 6)?;
    Ok(vec![eq("f-vector", vec![12, 66, 220, 495, 660, 462, 132], p.counts), eq("euler characteristic", 1, p.euler)])
}

fn tetra_count() -> Result<Vec<Check>> {
    let a = m612_audit()?;
    Ok(vec![
        eq("(sum c_i, sum i*c_i)", (495, 3300), a.tetra_sums),
        eq("sum (2i-4) c_i", 4620, a.tetra_weighted),
        eq("facets * 35", 4620, a.tetra_facet_pairs),
    ])
}

fn audit_e() -> Result<Vec<Check>> {
    let a = m612_audit()?;
    Ok(vec![
        eq("(slope, offset) of e1 in e0", (3, 30), a.e1_relation),
        eq("(slope, offset) of e2 in e0", (2, 125), a.e2_relation),
        eq("e", (7, 51, 139), a.e),
    ])
}

fn audit_meet() -> Result<Vec<Check>> {
    let a = m612_audit()?;
    Ok(vec![eq("facets meeting in 3, 4, 5, 6 vertices", (36, 58, 30, 7), a.facet_meet)])
}

fn audit_moments() -> Result<Vec<Check>> {
    let a = m612_audit()?;
    Ok(vec![
        eq("(sum a_i, sum i*a_i, sum i(i-1)*a_i)", (66, 2772, 113652), a.moments),
        eq("sum (i-42)^2 a_i", 0, a.edge_variance),
        eq("facets per edge", 42, a.edge_facet_count),
        eq("facets per vertex", 77, a.vertex_facet_count),
    ])
}

fn audit_edge_link() -> Result<Vec<Check>> {
    let a = m612_audit()?;
    Ok(vec![
        eq("facets meeting an edge", 112, a.facets_meeting_edge),
        eq("facets missing an edge", 20, a.facets_missing_edge),
        eq("4-faces through an edge", 100, a.edge_4face_count),
        eq("edge link f-vector", vec![10, 45, 100, 105, 42], a.edge_link_profile.counts.clone()),
        eq("edge link euler characteristic", 2, a.edge_link_profile.euler),
        eq("euler characteristic of the complex", 1, a.euler),
        holds("odd euler characteristic in dimension 6 (mod 4 = 2): contradiction", a.parity_contradiction),
    ])
}

fn kuehnel() -> Result<Vec<Check>> {
    let k3 = kuehnel_complex(3)?;
    let s2 = standard_sphere(2)?;
    let consecutive_spheres = (0..9u32).all(|i| {
        let w = Simplex::from_vertices((0..4).map(|j| (i + j) % 9)).expect("labels < 9");
        k3.induced(w).is_ok_and(|l| is_isomorphic(&l, &s2).is_some())
    });
    let k2 = kuehnel_complex(2)?;
    let circles = k2.vertices().all(|v| k2.link(Simplex::vertex(v).expect("small")).is_ok_and(|l| is_circle(&l)));
    Ok(vec![
        eq("facets of K^3_9", 27, k3.facets().len()),
        eq("f-vector of K^3_9", vec![9, 36, 54, 27], k3.face_profile().counts),
        holds("K^3_9 is 2-neighbourly", k3.is_k_neighbourly(2)),
        eq("euler characteristic of K^3_9", 0, k3.euler_characteristic()),
        holds("4 consecutive cycle vertices induce S^2_4", consecutive_spheres),
        holds("vertex links of K^2_7 are circles", circles),
    ])
}

fn example2() -> Result<Vec<Check>> {
    let k = example2_complex();
    let one_edge = k
        .facets()
        .iter()
        .enumerate()
        .all(|(i, a)| k.facets()[i + 1..].iter().all(|b| (a.mask() & b.mask()).count_ones() == 2));
    Ok(vec![
        holds("complementary", is_complementary(&k)),
        eq("classification", Classification::WeakPmWithBoundary, k.classify()),
        eq("f-vector", vec![7, 21, 28, 7], k.face_profile().counts),
        eq("euler characteristic", 7, k.euler_characteristic()),
        eq("edges by number of facets", vec![(2, 21)], k.cofacet_histogram(1)?.into_iter().collect::<Vec<_>>()),
        holds("every two facets share exactly one edge", one_edge),
    ])
}

fn classes(n: usize, d: usize) -> Result<Vec<Complex>> {
    let r = enumerate_weak_pseudomanifolds(n, d)?;
    Ok(r.classes.iter().map(|c| c.to_complex()).collect())
}

fn unique_4() -> Result<Vec<Check>> {
    let c = classes(4, 2)?;
    Ok(vec![
        eq("classes at (4,2)", 1, c.len()),
        holds("the class is S^2_4", c.len() == 1 && is_isomorphic(&c[0], &standard_sphere(2)?).is_some()),
    ])
}

fn unique_5() -> Result<Vec<Check>> {
    let c = classes(5, 2)?;
    let six = classes(6, 2)?;
    Ok(vec![
        eq("classes at (5,2)", 1, c.len()),
        holds("the class is S^1_3 * S^0_2", c.len() == 1 && is_isomorphic(&c[0], &suspended_triangle()).is_some()),
        info("classes at (6,2)", six.len()),
        holds(
            "at (6,2) each vertex lies on at most two non-edges",
            six.iter().all(|k| max_non_edges_at_vertex(k) <= 2),
        ),
    ])
}

fn rp2() -> Result<Vec<Check>> {
    let r = search_complementary(6, 2, &SearchOptions::default())?;
    let mut checks = vec![holds("search exhausted", r.complete), eq("classes", 1, r.class_count())];
    if let Some(form) = r.classes.first() {
        let k = form.to_complex();
        let h = homology(&k);
        let links = k.vertices().all(|v| k.link(Simplex::vertex(v).expect("small")).is_ok_and(|l| is_circle(&l)));
        checks.extend([
            eq("f-vector", vec![6, 15, 10], k.face_profile().counts),
            eq("euler characteristic", 1, k.euler_characteristic()),
            holds("vertex links are circles", links),
            eq("H1 (rank, torsion)", (0, vec![2]), (h.group(1).rank, h.group(1).torsion.clone())),
            holds("H2 = 0", h.group(2).is_trivial()),
            holds("matches the persisted atlas copy", is_isomorphic(&k, &rp2_6()?).is_some()),
        ]);
    }
    Ok(checks)
}

fn cp2() -> Result<Vec<Check>> {
    let r = search_complementary(9, 4, &SearchOptions::default())?;
    let mut checks = vec![
        holds("search exhausted within the node budget", r.complete),
        info("nodes", r.nodes),
        eq("classes", 1, r.class_count()),
    ];
    if let Some(form) = r.classes.first() {
        let k = form.to_complex();
        checks.extend([
            eq("f-vector", forced_profile(9, 4)?.counts, k.face_profile().counts),
            eq("euler characteristic", 3, k.euler_characteristic()),
            holds("3-neighbourly", k.is_k_neighbourly(3)),
            holds("complementary", is_complementary(&k)),
        ]);
    }
    Ok(checks)
}
