//! Isomorph-free enumeration of triangulated 2-spheres.
//!
//! Every triangulated 2-sphere with more than four vertices has an edge whose
//! contraction leaves a triangulated sphere, so all of them arise from the
//! tetrahedron boundary by repeated vertex splits. Each level is generated
//! from the previous one and deduplicated by canonical certificate.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::canon::{canonical_form_masks, parse_signature, signature_string};
use crate::complex::{bit, bits, Mask, SimplicialComplex};
use crate::error::{Error, Result};

/// Largest vertex count [`enumerate_spheres`] accepts.
pub const ENUMERATION_CAP: usize = 13;

#[derive(Debug, Clone)]
pub struct SphereRecord {
    pub complex: SimplicialComplex,
    pub signature: String,
    pub degree_sequence: Vec<usize>,
    pub stacked: bool,
    /// Filled in by the search stage.
    pub sigma0: Option<BigRational>,
    /// Property `T_k` verdicts by `k`, filled in by the search stage.
    pub tk_flags: BTreeMap<u32, bool>,
}

impl SphereRecord {
    /// Record for a complex already in canonical labelling.
    fn from_canonical(n: usize, certificate: Vec<Mask>) -> Self {
        let signature = signature_string(n, &certificate);
        Self::with_signature(SimplicialComplex::from_masks(certificate), signature)
    }

    fn with_signature(complex: SimplicialComplex, signature: String) -> Self {
        let degree_sequence = complex.degree_sequence();
        let stacked = is_stacked(&complex);
        SphereRecord { complex, signature, degree_sequence, stacked, sigma0: None, tk_flags: BTreeMap::new() }
    }

    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        if !complex.is_closed_surface()? || complex.euler_characteristic() != 2 {
            return Err(Error::OutOfRange("complex is not a triangulated 2-sphere".into()));
        }
        let form = crate::canon::canonical_form(complex);
        Ok(Self::from_canonical(complex.vertex_count(), form.certificate))
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }
}

#[derive(Debug, Clone)]
pub struct SphereCatalog {
    pub n: usize,
    /// Sorted by signature.
    pub records: Vec<SphereRecord>,
}

impl SphereCatalog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Header line, then one `signature<TAB>a,b,c;d,e,f;...` line per record.
    pub fn to_text(&self) -> String {
        let mut out = format!("spheres n={} count={}\n", self.n, self.records.len());
        for r in &self.records {
            let tris: Vec<String> = r
                .complex
                .facet_lists()
                .iter()
                .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            out.push_str(&r.signature);
            out.push('\t');
            out.push_str(&tris.join(";"));
            out.push('\n');
        }
        out
    }

    /// Parses the catalog format and checks every stored signature against
    /// the facet list next to it.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let bad_header = || Error::Parse { line: 1, msg: format!("bad header {header:?}") };
        let mut parts = header.split_whitespace();
        if parts.next() != Some("spheres") {
            return Err(bad_header());
        }
        let field = |s: Option<&str>, key: &str| -> Option<usize> { s?.strip_prefix(key)?.parse().ok() };
        let n = field(parts.next(), "n=").ok_or_else(bad_header)?;
        let count = field(parts.next(), "count=").ok_or_else(bad_header)?;
        let mut records = Vec::with_capacity(count);
        for (i, line) in lines {
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (sig, facets) = line.split_once('\t').ok_or_else(|| err("expected a tab".into()))?;
            let tris = facets
                .split(';')
                .map(|t| t.split(',').map(|x| x.trim().parse::<u32>()).collect::<std::result::Result<Vec<_>, _>>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| err(format!("bad facet list: {e}")))?;
            let complex = SimplicialComplex::from_facets(tris).map_err(|e| err(e.to_string()))?;
            if complex.vertex_count() != n {
                return Err(err(format!("record has {} vertices, expected {n}", complex.vertex_count())));
            }
            if parse_signature(sig).is_none() || complex.canonical_signature() != sig {
                return Err(err("signature does not match the facet list".into()));
            }
            records.push(SphereRecord::with_signature(complex, sig.to_string()));
        }
        if records.len() != count {
            return Err(Error::Parse { line: 1, msg: format!("header says {count} records, found {}", records.len()) });
        }
        records.sort_by(|a, b| a.signature.cmp(&b.signature));
        Ok(SphereCatalog { n, records })
    }
}

/// Cyclic order of the link of `v` in a 2-sphere given by triangle masks.
fn link_cycle(tris: &[Mask], v: usize) -> Vec<usize> {
    let edges: Vec<Mask> = tris.iter().filter(|&&t| t & bit(v) != 0).map(|&t| t & !bit(v)).collect();
    let start = edges[0].trailing_zeros() as usize;
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = edges
            .iter()
            .filter(|&&e| e & bit(cur) != 0)
            .map(|&e| (e & !bit(cur)).trailing_zeros() as usize)
            .find(|&u| u != prev)
            .expect("link is a cycle");
        if next == start {
            return cycle;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
}

/// Splits `v` along the link vertices at positions `i < j`: the arc from
/// `u_i` to `u_j` stays with `v`, the other arc moves to the new vertex `m`.
fn split(tris: &[Mask], m: usize, v: usize, cycle: &[usize], i: usize, j: usize) -> Vec<Mask> {
    let d = cycle.len();
    let mut out: Vec<Mask> = tris.iter().copied().filter(|&t| t & bit(v) == 0).collect();
    for t in 0..d {
        let e = bit(cycle[t]) | bit(cycle[(t + 1) % d]);
        let owner = if t >= i && t < j { v } else { m };
        out.push(e | bit(owner));
    }
    out.push(bit(v) | bit(m) | bit(cycle[i]));
    out.push(bit(v) | bit(m) | bit(cycle[j]));
    out
}

fn children(n: usize, parent: &[Mask], prune_orbits: bool) -> Vec<Vec<Mask>> {
    let m = n;
    let autos = if prune_orbits { canonical_form_masks(n, parent).automorphisms } else { Vec::new() };
    let mut out = Vec::new();
    for v in 0..n {
        let cycle = link_cycle(parent, v);
        let d = cycle.len();
        for i in 0..d {
            for j in i + 1..d {
                if prune_orbits {
                    let key = |a: &[usize]| {
                        let (x, y) = (a[cycle[i]], a[cycle[j]]);
                        (a[v], x.min(y), x.max(y))
                    };
                    let identity: Vec<usize> = (0..n).collect();
                    let mine = key(&identity);
                    if autos.iter().any(|a| key(a) < mine) {
                        continue;
                    }
                }
                out.push(split(parent, m, v, &cycle, i, j));
            }
        }
    }
    out
}

fn next_level(n: usize, parents: &[Vec<Mask>], prune_orbits: bool) -> Vec<Vec<Mask>> {
    let mut certs: Vec<Vec<Mask>> = parents
        .par_iter()
        .flat_map_iter(|p| children(n, p, prune_orbits).into_iter().map(|c| canonical_form_masks(n + 1, &c).certificate))
        .collect();
    certs.par_sort_unstable();
    certs.dedup();
    certs
}

/// All triangulated 2-spheres on `n` vertices up to isomorphism, sorted by
/// signature.
pub fn enumerate_spheres(n: usize) -> Result<SphereCatalog> {
    enumerate_spheres_with(n, true)
}

/// As [`enumerate_spheres`]; `prune_orbits` restricts splits to one
/// representative per orbit of the parent's automorphism group.
pub fn enumerate_spheres_with(n: usize, prune_orbits: bool) -> Result<SphereCatalog> {
    Ok(enumerate_levels(n, prune_orbits)?.pop().expect("at least one level"))
}

/// Catalogs for every vertex count from 4 to `n`.
pub fn enumerate_levels(n: usize, prune_orbits: bool) -> Result<Vec<SphereCatalog>> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("2-spheres need at least 4 vertices, got {n}")));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "sphere enumeration", n, cap: ENUMERATION_CAP });
    }
    let mut level: Vec<Vec<Mask>> = vec![canonical_form_masks(4, crate::standard::simplex_boundary(2).facets()).certificate];
    let mut out = vec![level.clone()];
    for m in 4..n {
        level = next_level(m, &level, prune_orbits);
        out.push(level.clone());
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, certs)| {
            let m = i + 4;
            let mut records: Vec<SphereRecord> =
                certs.into_par_iter().map(|c| SphereRecord::from_canonical(m, c)).collect();
            records.sort_by(|a, b| a.signature.cmp(&b.signature));
            SphereCatalog { n: m, records }
        })
        .collect())
}

/// Whether the sphere reduces to the tetrahedron boundary by removing
/// degree-3 vertices. Removing a degree-3 vertex keeps a stacked sphere
/// stacked, so the removal order does not matter.
pub fn is_stacked(s: &SimplicialComplex) -> bool {
    let mut tris: Vec<Mask> = s.facets().to_vec();
    let mut alive = s.vertices();
    loop {
        if alive.count_ones() == 4 {
            return tris.len() == 4;
        }
        let candidate = bits(alive).find(|&v| tris.iter().filter(|&&t| t & bit(v) != 0).count() == 3);
        let v = match candidate {
            Some(v) => v,
            None => return false,
        };
        let around: Mask = tris.iter().filter(|&&t| t & bit(v) != 0).fold(0, |a, &t| a | t) & !bit(v);
        if tris.contains(&around) {
            return false;
        }
        tris.retain(|&t| t & bit(v) == 0);
        tris.push(around);
        alive &= !bit(v);
    }
}
