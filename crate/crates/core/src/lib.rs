//! Tightness of combinatorial manifolds: simplicial complexes on bit masks,
//! homology over prime fields, slicings and rsl-functions, exact bounds,
//! 2-sphere enumeration and the link-assembly search for tight 3-manifolds.

pub mod bounds;
pub mod canon;
pub mod complex;
pub mod error;
pub mod homology;
pub mod search;
pub mod slicing;
pub mod spheres;
pub mod standard;

pub use complex::{FVector, Graph, Mask, SimplicialComplex, MAX_VERTICES};
pub use error::{Error, Result};
pub use homology::{betti, reduced_betti, BettiVector, PrimeField};
