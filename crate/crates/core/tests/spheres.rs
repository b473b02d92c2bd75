use std::collections::BTreeSet;

use tightcheck::complex::{subsets_of_size, Mask};
use tightcheck::spheres::*;
use tightcheck::SimplicialComplex;

/// Isomorphism classes of triangulated 2-spheres on exactly `n` vertices, by
/// trying every set of `2n - 4` triangles.
fn brute_force_spheres(n: usize) -> BTreeSet<String> {
    let triangles = subsets_of_size((1 << n) - 1, 3);
    let mut out = BTreeSet::new();
    let mut pick: Vec<usize> = (0..2 * n - 4).collect();
    loop {
        let masks: Vec<Mask> = pick.iter().map(|&i| triangles[i]).collect();
        let c = SimplicialComplex::from_masks(masks);
        if c.vertex_count() == n && c.euler_characteristic() == 2 && c.is_closed_surface().unwrap() {
            out.insert(c.canonical_signature());
        }
        // next combination
        let m = pick.len();
        let mut i = m;
        while i > 0 && pick[i - 1] == triangles.len() - m + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        pick[i - 1] += 1;
        for t in i..m {
            pick[t] = pick[t - 1] + 1;
        }
    }
}

#[test]
fn census_matches_brute_force_up_to_six() {
    for n in 4..=6 {
        let brute = brute_force_spheres(n);
        let cat = enumerate_spheres(n).unwrap();
        let ours: BTreeSet<String> = cat.records.iter().map(|r| r.signature.clone()).collect();
        assert_eq!(ours, brute, "n = {n}");
    }
}

#[test]
fn census_counts() {
    let counts: Vec<usize> = enumerate_levels(10, true).unwrap().iter().map(|c| c.len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 14, 50, 233]);
}

#[test]
fn records_are_distinct_spheres() {
    let cat = enumerate_spheres(9).unwrap();
    let mut seen = BTreeSet::new();
    for r in &cat.records {
        let c = &r.complex;
        assert!(c.is_closed_surface().unwrap());
        let f = c.f_vector();
        assert_eq!(f.0, vec![9, 21, 14]);
        assert_eq!(r.degree_sequence, c.degree_sequence());
        assert_eq!(r.signature, c.canonical_signature());
        assert!(seen.insert(r.signature.clone()));
    }
}

#[test]
fn stacked_counts() {
    // stacked spheres with n vertices correspond to trees of n - 3 tetrahedra
    let want = [(4, 1), (5, 1), (6, 1), (7, 3), (8, 7), (9, 24)];
    for (n, count) in want {
        let cat = enumerate_spheres(n).unwrap();
        assert_eq!(cat.records.iter().filter(|r| r.stacked).count(), count, "n = {n}");
    }
}

#[test]
fn catalog_file_round_trip() {
    let cat = enumerate_spheres(8).unwrap();
    let text = cat.to_text();
    assert!(text.starts_with("spheres n=8 count=14\n"));
    let back = SphereCatalog::parse(&text).unwrap();
    assert_eq!(back.len(), 14);
    for (a, b) in back.records.iter().zip(&cat.records) {
        assert_eq!(a.signature, b.signature);
        assert_eq!(a.complex.canonical_signature(), b.signature);
    }
    let broken = text.replacen("count=14", "count=15", 1);
    assert!(SphereCatalog::parse(&broken).is_err());
}

#[test]
fn caps() {
    assert!(enumerate_spheres(3).is_err());
    assert!(enumerate_spheres(ENUMERATION_CAP + 1).is_err());
}

#[test]
fn every_level_is_a_sphere_catalog() {
    for cat in enumerate_levels(9, true).unwrap() {
        for r in &cat.records {
            let f = r.complex.f_vector();
            assert_eq!(f.0, vec![cat.n as u64, 3 * cat.n as u64 - 6, 2 * cat.n as u64 - 4]);
            assert!(r.complex.is_closed_surface().unwrap());
        }
    }
}

#[test]
fn enumeration_ignores_thread_count() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = one.install(|| enumerate_spheres(10).unwrap().to_text());
    assert_eq!(serial, enumerate_spheres(10).unwrap().to_text());
}
