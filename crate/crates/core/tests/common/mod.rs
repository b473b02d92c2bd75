//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use tightcheck::bounds::gale_cyclic_boundary;
use tightcheck::complex::{bit, bits, Mask};
use tightcheck::search::{annotate, assemble};
use tightcheck::spheres::enumerate_spheres;
use tightcheck::standard::{join, path_stacked_3_sphere, simplex_boundary, suspension};
use tightcheck::SimplicialComplex;

/// The unique 8-vertex sphere that is stacked and has Property T_1.
pub fn t1_sphere() -> SimplicialComplex {
    let mut cat = enumerate_spheres(8).unwrap().records;
    annotate(&mut cat, &[1]).unwrap();
    let hits: Vec<_> = cat.into_iter().filter(|r| r.stacked && r.tk_flags[&1]).collect();
    assert_eq!(hits.len(), 1);
    hits[0].complex.clone()
}

/// The 9-vertex twisted S²-bundle over S¹, assembled from nine copies of
/// the T_1 sphere.
pub fn klein_bottle_9() -> SimplicialComplex {
    let out = assemble(&vec![t1_sphere(); 9], 9).unwrap();
    assert_eq!(out.len(), 1);
    out.into_iter().next().unwrap()
}

pub fn cyclic_3_sphere(n: u32) -> SimplicialComplex {
    gale_cyclic_boundary(4, n).unwrap()
}

/// Closed 3-manifolds on at most 10 vertices, tight and not tight.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    let tri = simplex_boundary(1);
    vec![
        ("boundary of the 4-simplex", simplex_boundary(3)),
        ("suspension of the tetrahedron boundary", suspension(&simplex_boundary(2))),
        ("join of two triangles", join(&tri, &tri)),
        ("stacked 3-sphere on 7 vertices", path_stacked_3_sphere(7)),
        ("cyclic 3-sphere on 7 vertices", cyclic_3_sphere(7)),
        ("cyclic 3-sphere on 8 vertices", cyclic_3_sphere(8)),
        ("stacked 3-sphere on 9 vertices", path_stacked_3_sphere(9)),
        ("cyclic 3-sphere on 10 vertices", cyclic_3_sphere(10)),
    ]
}

/// Calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(prefix: &mut Vec<usize>, used: Mask, n: usize, f: &mut dyn FnMut(&[usize])) {
        if prefix.len() == n {
            f(prefix);
            return;
        }
        for v in 0..n {
            if used & bit(v) == 0 {
                prefix.push(v);
                rec(prefix, used | bit(v), n, f);
                prefix.pop();
            }
        }
    }
    rec(&mut Vec::new(), 0, n, f);
}

/// Closed 2-neighbourly 3-manifolds on `n` vertices by completing a facet
/// list one open triangle at a time, starting from the facet {0,1,2,3}.
/// Keyed by canonical signature.
pub fn brute_force_neighbourly_3_manifolds(n: usize) -> BTreeMap<String, SimplicialComplex> {
    fn close(n: usize, facets: &mut Vec<Mask>, count: &mut Vec<u8>, out: &mut Vec<Vec<Mask>>) {
        let open = facets
            .iter()
            .flat_map(|&f| bits(f).map(move |v| f & !bit(v)))
            .filter(|&t| count[t as usize] == 1)
            .min();
        let t = match open {
            None => {
                out.push(facets.clone());
                return;
            }
            Some(t) => t,
        };
        for x in 0..n {
            let f = t | bit(x);
            if t & bit(x) != 0 || facets.contains(&f) || bits(f).any(|v| count[(f & !bit(v)) as usize] >= 2) {
                continue;
            }
            for v in bits(f) {
                count[(f & !bit(v)) as usize] += 1;
            }
            facets.push(f);
            close(n, facets, count, out);
            facets.pop();
            for v in bits(f) {
                count[(f & !bit(v)) as usize] -= 1;
            }
        }
    }
    let mut raw = Vec::new();
    let mut count = vec![0u8; 1 << n];
    for v in 0..4 {
        count[(0b1111 & !bit(v)) as usize] = 1;
    }
    close(n, &mut vec![0b1111], &mut count, &mut raw);
    let mut out = BTreeMap::new();
    for f in raw {
        let c = SimplicialComplex::from_masks(f);
        if c.vertex_count() == n && c.is_k_neighbourly(2) && c.is_combinatorial_3_manifold().unwrap() {
            out.entry(c.canonical_signature()).or_insert(c);
        }
    }
    out
}

/// Vertex links in vertex order.
pub fn links(c: &SimplicialComplex) -> Vec<SimplicialComplex> {
    (0..c.vertex_count()).map(|v| c.vertex_link(v).unwrap()).collect()
}

/// Link multiset as sorted canonical signatures.
pub fn link_key(c: &SimplicialComplex) -> Vec<String> {
    let mut k: Vec<String> = links(c).iter().map(|l| l.canonical_signature()).collect();
    k.sort();
    k
}
