//! Canonical labelling of simplicial complexes by individualization and
//! refinement.
//!
//! Vertex colours are refined by the multiset of coloured facets through each
//! vertex until stable; the first non-singleton colour class is then split by
//! individualizing each of its vertices in turn. Every discrete colouring is a
//! relabelling, and the lexicographically least relabelled facet list over
//! all leaves is the canonical form. The whole tree is explored, so the leaves
//! attaining the minimum enumerate the automorphism group as well.

use crate::complex::{bit, bits, Mask, SimplicialComplex};

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Relabelled facet masks, sorted.
    pub certificate: Vec<Mask>,
    /// `labelling[v]` is the canonical index of vertex `v`.
    pub labelling: Vec<usize>,
    /// All automorphisms as vertex permutations (`perm[v]` is the image of `v`).
    pub automorphisms: Vec<Vec<usize>>,
    vertex_count: usize,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Printable one-line signature with no whitespace: the vertex count,
    /// then the canonical facets as base-32 digit strings joined by dots.
    pub fn signature(&self) -> String {
        signature_string(self.vertex_count, &self.certificate)
    }
}

const DIGITS: &[u8; 32] = b"0123456789abcdefghijklmnopqrstuv";

pub fn signature_string(n: usize, certificate: &[Mask]) -> String {
    let mut s = format!("{n}:");
    for (i, &f) in certificate.iter().enumerate() {
        if i > 0 {
            s.push('.');
        }
        for v in bits(f) {
            s.push(DIGITS[v] as char);
        }
    }
    s
}

/// Parses a signature back into `(n, certificate)`.
pub fn parse_signature(sig: &str) -> Option<(usize, Vec<Mask>)> {
    let (n, rest) = sig.split_once(':')?;
    let n: usize = n.parse().ok()?;
    let mut facets = Vec::new();
    if !rest.is_empty() {
        for part in rest.split('.') {
            let mut m: Mask = 0;
            for c in part.bytes() {
                let d = DIGITS.iter().position(|&x| x == c)?;
                if d >= n {
                    return None;
                }
                m |= bit(d);
            }
            facets.push(m);
        }
    }
    Some((n, facets))
}

struct Search<'a> {
    n: usize,
    facets: &'a [Mask],
    incident: Vec<Vec<Mask>>,
    best: Option<Vec<Mask>>,
    best_labellings: Vec<Vec<usize>>,
}

fn rank_signatures<T: Ord + Clone>(sigs: &[T]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    let colours = sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect();
    (colours, sorted.len())
}

impl<'a> Search<'a> {
    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colours);
        loop {
            let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.incident[v]
                        .iter()
                        .map(|&f| {
                            let mut c: Vec<u32> = bits(f & !bit(v)).map(|w| colours[w]).collect();
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    around.sort_unstable();
                    (colours[v], around)
                })
                .collect();
            let (next, k) = rank_signatures(&sigs);
            colours = next;
            if k == classes {
                return colours;
            }
            classes = k;
        }
    }

    fn explore(&mut self, colours: Vec<u32>) {
        let classes = count_classes(&colours);
        if classes == self.n {
            let labelling: Vec<usize> = colours.iter().map(|&c| c as usize).collect();
            let mut cert: Vec<Mask> = self
                .facets
                .iter()
                .map(|&f| bits(f).fold(0, |a, v| a | bit(labelling[v])))
                .collect();
            cert.sort_unstable();
            match &self.best {
                Some(b) if cert > *b => {}
                Some(b) if cert == *b => self.best_labellings.push(labelling),
                _ => {
                    self.best = Some(cert);
                    self.best_labellings = vec![labelling];
                }
            }
            return;
        }
        // first non-singleton class in colour order
        let mut size = vec![0usize; self.n];
        for &c in &colours {
            size[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| size[c] > 1).unwrap() as u32;
        for v in 0..self.n {
            if colours[v] != target {
                continue;
            }
            let split: Vec<(u32, u8)> = colours
                .iter()
                .enumerate()
                .map(|(w, &c)| (c, u8::from(c == target && w != v)))
                .collect();
            let (c, _) = rank_signatures(&split);
            let refined = self.refine(c);
            self.explore(refined);
        }
    }
}

fn count_classes(colours: &[u32]) -> usize {
    let mut c: Vec<u32> = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Canonical form of the complex on its own vertex set.
pub fn canonical_form(c: &SimplicialComplex) -> CanonicalForm {
    canonical_form_masks(c.vertex_count(), c.facets())
}

/// Canonical form of a complex given by facet masks over `0..n`.
pub fn canonical_form_masks(n: usize, facets: &[Mask]) -> CanonicalForm {
    if n == 0 {
        return CanonicalForm {
            certificate: Vec::new(),
            labelling: Vec::new(),
            automorphisms: vec![Vec::new()],
            vertex_count: 0,
        };
    }
    let mut incident = vec![Vec::new(); n];
    for &f in facets {
        for v in bits(f) {
            incident[v].push(f);
        }
    }
    let mut search =
        Search { n, facets, incident, best: None, best_labellings: Vec::new() };
    let start = search.refine(vec![0; n]);
    search.explore(start);
    let labellings = search.best_labellings;
    let first = &labellings[0];
    let mut inverse_first = vec![0; n];
    for (v, &l) in first.iter().enumerate() {
        inverse_first[l] = v;
    }
    // first^{-1} ∘ other maps v to the vertex that plays v's role
    let automorphisms = labellings
        .iter()
        .map(|lab| (0..n).map(|v| inverse_first[lab[v]]).collect())
        .collect();
    CanonicalForm {
        certificate: search.best.unwrap(),
        labelling: first.clone(),
        automorphisms,
        vertex_count: n,
    }
}

impl SimplicialComplex {
    /// A string that agrees for two complexes exactly when they are
    /// isomorphic.
    pub fn canonical_signature(&self) -> String {
        canonical_form(self).signature()
    }

    /// The complex relabelled into canonical order.
    pub fn canonical(&self) -> SimplicialComplex {
        SimplicialComplex::from_masks(canonical_form(self).certificate)
    }
}
