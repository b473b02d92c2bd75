mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use tightcheck::search::{assemble, has_link_multiset};
use tightcheck::SimplicialComplex;

/// For every link multiset occurring among the brute-force manifolds, the
/// assembler returns exactly the brute-force manifolds with that multiset.
fn check_against_oracle(n: usize) {
    let oracle = brute_force_neighbourly_3_manifolds(n);
    assert!(!oracle.is_empty());
    let mut by_links: BTreeMap<Vec<String>, BTreeSet<String>> = BTreeMap::new();
    for (sig, c) in &oracle {
        by_links.entry(link_key(c)).or_default().insert(sig.clone());
    }
    for (sig, c) in &oracle {
        let want = &by_links[&link_key(c)];
        let got: BTreeSet<String> = assemble(&links(c), n).unwrap().iter().map(|m| m.canonical_signature()).collect();
        assert_eq!(&got, want, "link multiset of {sig}");
    }
}

#[test]
fn matches_brute_force_on_6_vertices() {
    check_against_oracle(6);
}

#[test]
fn matches_brute_force_on_7_vertices() {
    check_against_oracle(7);
}

#[test]
fn matches_brute_force_on_8_vertices() {
    let oracle = brute_force_neighbourly_3_manifolds(8);
    assert_eq!(oracle.len(), 4);
    check_against_oracle(8);
}

#[test]
fn output_does_not_depend_on_link_order() {
    for c in [cyclic_3_sphere(9), klein_bottle_9(), cyclic_3_sphere(10)] {
        let n = c.vertex_count();
        let mut ls = links(&c);
        let reference: Vec<String> = assemble(&ls, n).unwrap().iter().map(|m| m.canonical_signature()).collect();
        assert!(reference.contains(&c.canonical_signature()));
        for _ in 0..n {
            ls.rotate_left(1);
            let got: Vec<String> = assemble(&ls, n).unwrap().iter().map(|m| m.canonical_signature()).collect();
            assert_eq!(got, reference);
        }
    }
}

#[test]
fn outputs_are_manifolds_with_the_requested_links() {
    for c in [cyclic_3_sphere(9), cyclic_3_sphere(10), klein_bottle_9()] {
        let ls = links(&c);
        for m in assemble(&ls, c.vertex_count()).unwrap() {
            assert!(m.is_combinatorial_3_manifold().unwrap());
            assert!(has_link_multiset(&m, &ls));
        }
    }
}

#[test]
fn klein_bottle_properties() {
    let k = klein_bottle_9();
    assert!(k.is_combinatorial_3_manifold().unwrap());
    assert_eq!(k.f_vector().0, vec![9, 36, 54, 27]);
    assert!(k.is_k_neighbourly(2));
    assert!(!k.is_k_neighbourly(3));
    assert!(!k.is_orientable().unwrap());
    // all nine links are the same sphere
    let keys: BTreeSet<String> = link_key(&k).into_iter().collect();
    assert_eq!(keys.len(), 1);
}

#[test]
fn parity_violating_multiset_assembles_nothing() {
    // eight links of the 9-vertex cyclic sphere plus one foreign 8-vertex link
    let c = cyclic_3_sphere(9);
    let mut ls = links(&c);
    ls[8] = tightcheck::standard::path_stacked_sphere(8);
    let out = assemble(&ls, 9).unwrap();
    assert!(out.is_empty());
}

#[test]
fn non_neighbourly_links_are_rejected() {
    let c = cyclic_3_sphere(7);
    let mut ls: Vec<SimplicialComplex> = links(&c);
    ls[1] = tightcheck::standard::bipyramid();
    assert!(assemble(&ls, 7).is_err());
}

#[test]
fn twelve_vertex_cyclic_sphere_reassembles() {
    let c = cyclic_3_sphere(12);
    let mut ls = links(&c);
    for shift in [0, 5] {
        ls.rotate_left(shift);
        let sigs: Vec<String> = assemble(&ls, 12).unwrap().iter().map(|m| m.canonical_signature()).collect();
        assert!(sigs.contains(&c.canonical_signature()));
    }
}
