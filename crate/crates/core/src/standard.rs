//! Small named complexes used throughout the tests and the command line.

use crate::complex::{bit, bits, full_mask, Mask, SimplicialComplex};

/// Boundary of the `(d+1)`-simplex, a `d`-sphere on `d + 2` vertices.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    let n = d + 2;
    let full = full_mask(n);
    SimplicialComplex::from_masks((0..n).map(|v| full & !bit(v)))
}

/// The full simplex on `n` vertices.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_masks([full_mask(n)])
}

/// Simplicial join: every face of `a` united with every face of `b`, vertices
/// of `b` shifted past those of `a`.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let shift = a.vertex_count();
    let mut masks = Vec::new();
    for &fa in a.facets() {
        for &fb in b.facets() {
            masks.push(fa | (fb << shift));
        }
    }
    SimplicialComplex::from_masks(masks)
}

/// Suspension: join with two isolated points.
pub fn suspension(c: &SimplicialComplex) -> SimplicialComplex {
    let poles = SimplicialComplex::from_masks([0b01, 0b10]);
    join(c, &poles)
}

pub fn octahedron() -> SimplicialComplex {
    let circle = SimplicialComplex::from_masks([0b0011, 0b0110, 0b1100, 0b1001]);
    suspension(&circle)
}

/// Suspension of a triangle boundary.
pub fn bipyramid() -> SimplicialComplex {
    suspension(&simplex_boundary(1))
}

/// Seven-vertex torus with triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut masks = Vec::new();
    for i in 0..7 {
        masks.push(bit(i) | bit((i + 1) % 7) | bit((i + 3) % 7));
        masks.push(bit(i) | bit((i + 2) % 7) | bit((i + 3) % 7));
    }
    SimplicialComplex::from_masks(masks)
}

/// Six-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ])
    .expect("static facet list")
}

/// Stacked 2-sphere on `n >= 4` vertices where vertex `k` is stacked onto the
/// triangle spanned by the three previous vertices.
pub fn path_stacked_sphere(n: usize) -> SimplicialComplex {
    assert!(n >= 4);
    let mut tris: Vec<Mask> = simplex_boundary(2).facets().to_vec();
    for k in 4..n {
        let target = bit(k - 1) | bit(k - 2) | bit(k - 3);
        let pos = tris.iter().position(|&t| t == target).expect("stacking target present");
        tris.swap_remove(pos);
        for v in bits(target) {
            tris.push((target & !bit(v)) | bit(k));
        }
    }
    SimplicialComplex::from_masks(tris)
}

/// Stacked 3-sphere on `n >= 5` vertices, stacking each new vertex onto the
/// tetrahedron spanned by the four previous vertices.
pub fn path_stacked_3_sphere(n: usize) -> SimplicialComplex {
    assert!(n >= 5);
    let mut facets: Vec<Mask> = simplex_boundary(3).facets().to_vec();
    for k in 5..n {
        let target = bit(k - 1) | bit(k - 2) | bit(k - 3) | bit(k - 4);
        let pos = facets.iter().position(|&t| t == target).expect("stacking target present");
        facets.swap_remove(pos);
        for v in bits(target) {
            facets.push((target & !bit(v)) | bit(k));
        }
    }
    SimplicialComplex::from_masks(facets)
}
