//! Pure simplicial complexes stored by their facets.
//!
//! Vertices are dense indices `0..n` inside the library; every complex also
//! remembers the positive integer label each vertex carried on input, and the
//! text formats use those labels. A face is a bit mask over vertex indices,
//! which caps the vertex count at [`MAX_VERTICES`].

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A set of vertex indices.
pub type Mask = u32;

pub const MAX_VERTICES: usize = 32;

/// Iterates the set bits of `m` in increasing order.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[inline]
pub fn bit(v: usize) -> Mask {
    1 << v
}

/// All `k`-element subsets of the bits of `universe`, in increasing numeric order.
pub fn subsets_of_size(universe: Mask, k: usize) -> Vec<Mask> {
    let elems: Vec<usize> = bits(universe).collect();
    let m = elems.len();
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut idx: u64 = (1 << k) - 1;
    while idx < (1 << m) {
        out.push(bits(idx as Mask).fold(0, |a, i| a | bit(elems[i])));
        let c = idx & idx.wrapping_neg();
        let r = idx + c;
        idx = (((r ^ idx) >> 2) / c) | r;
    }
    out.sort_unstable();
    out
}

/// Face counts `f_0, ..., f_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A simple undirected graph on vertices `0..n`, stored as adjacency masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Mask>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![0; n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a] |= bit(b);
            self.adj[b] |= bit(a);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn all_vertices(&self) -> Mask {
        full_mask(self.adj.len())
    }

    pub fn neighbours(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &[Mask] {
        &self.adj
    }

    /// Number of connected components of the subgraph induced by `w`.
    pub fn component_count(&self, w: Mask) -> usize {
        component_count(&self.adj, w)
    }

    pub fn is_independent(&self, w: Mask) -> bool {
        bits(w).all(|v| self.adj[v] & w == 0)
    }
}

/// Connected components of the subgraph induced by `w` in the graph given by
/// adjacency masks.
pub fn component_count(adj: &[Mask], w: Mask) -> usize {
    let mut rest = w;
    let mut comps = 0;
    while rest != 0 {
        let mut frontier = rest & rest.wrapping_neg();
        let mut seen = frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & w & !seen;
            seen |= new;
            frontier |= new;
        }
        rest &= !seen;
        comps += 1;
    }
    comps
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// An immutable simplicial complex given by its inclusion-maximal faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<u32>,
    facets: Vec<Mask>,
    faces: OnceLock<Vec<Vec<Mask>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.vertex_count())
            .field("facets", &self.facet_lists())
            .finish()
    }
}

/// Removes duplicates and faces contained in another face.
fn maximal_faces(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.retain(|&m| m != 0);
    masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    masks.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & m == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// The empty complex (no vertices, no faces).
    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: Vec::new(), faces: OnceLock::new() }
    }

    /// Builds a complex from facet lists with arbitrary positive labels.
    ///
    /// Vertices are renumbered densely in increasing label order; facets are
    /// deduplicated and faces contained in other faces are dropped.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let facets: Vec<Vec<u32>> = facets.into_iter().map(|f| f.as_ref().to_vec()).collect();
        if facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut labels: Vec<u32> = Vec::new();
        for f in &facets {
            if f.is_empty() {
                return Err(Error::EmptyFacet(f.clone()));
            }
            if f.contains(&0) {
                return Err(Error::NonPositiveLabel);
            }
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex(f.clone()));
            }
            labels.extend_from_slice(&s);
        }
        labels.sort_unstable();
        labels.dedup();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let masks = facets
            .iter()
            .map(|f| f.iter().fold(0, |m, l| m | bit(index[l])))
            .collect();
        Ok(SimplicialComplex { labels, facets: maximal_faces(masks), faces: OnceLock::new() })
    }

    /// Builds a complex from masks over vertex indices `0..n`, labelling vertex
    /// `i` as `i + 1`. Vertices not used by any mask are dropped.
    pub fn from_masks<I: IntoIterator<Item = Mask>>(masks: I) -> Self {
        let masks: Vec<Mask> = masks.into_iter().collect();
        let used = masks.iter().fold(0, |a, &m| a | m);
        let labels: Vec<u32> = (1..=32).collect();
        Self::compact(&labels, used, masks)
    }

    /// Restricts to the vertices in `used`, renumbers them densely and carries
    /// the labels along.
    fn compact(labels: &[u32], used: Mask, masks: Vec<Mask>) -> Self {
        let verts: Vec<usize> = bits(used).collect();
        let mut remap = [0usize; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            remap[v] = i;
        }
        let new_masks = masks
            .into_iter()
            .map(|m| bits(m).fold(0, |a, v| a | bit(remap[v])))
            .collect();
        SimplicialComplex {
            labels: verts.iter().map(|&v| labels[v]).collect(),
            facets: maximal_faces(new_masks),
            faces: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> Mask {
        full_mask(self.labels.len())
    }

    /// Input label of each vertex index.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn facets(&self) -> &[Mask] {
        &self.facets
    }

    /// Facets as sorted label lists.
    pub fn facet_lists(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> =
            self.facets.iter().map(|&m| bits(m).map(|v| self.labels[v]).collect()).collect();
        out.sort();
        out
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|m| m.count_ones() as usize).max().map(|s| s - 1)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|m| m.count_ones() == f.count_ones()),
        }
    }

    fn face_table(&self) -> &Vec<Vec<Mask>> {
        self.faces.get_or_init(|| {
            let d = match self.dimension() {
                Some(d) => d,
                None => return Vec::new(),
            };
            let mut table: Vec<Vec<Mask>> = vec![Vec::new(); d + 1];
            for &f in &self.facets {
                let mut sub = f;
                loop {
                    if sub != 0 {
                        table[sub.count_ones() as usize - 1].push(sub);
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & f;
                }
            }
            for t in &mut table {
                t.sort_unstable();
                t.dedup();
            }
            table
        })
    }

    /// All faces of dimension `dim`, sorted.
    pub fn faces(&self, dim: usize) -> &[Mask] {
        self.face_table().get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn contains_face(&self, face: Mask) -> bool {
        face != 0 && self.facets.iter().any(|&f| f & face == face)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.face_table().iter().map(|t| t.len() as u64).collect())
    }

    /// Euler characteristic by direct iteration over all faces.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for t in self.face_table() {
            for &face in t {
                if face.count_ones() % 2 == 1 {
                    chi += 1;
                } else {
                    chi -= 1;
                }
            }
        }
        chi
    }

    /// All faces with vertex set inside `w`. The result keeps the labels of
    /// the surviving vertices.
    pub fn induced_subcomplex(&self, w: Mask) -> Self {
        let masks: Vec<Mask> = self.facets.iter().map(|&f| f & w).filter(|&m| m != 0).collect();
        let used = masks.iter().fold(0, |a, &m| a | m);
        Self::compact(&self.labels, used, masks)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::UnknownVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn vertex_link(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let masks: Vec<Mask> = self
            .facets
            .iter()
            .filter(|&&f| f & bit(v) != 0)
            .map(|&f| f & !bit(v))
            .filter(|&m| m != 0)
            .collect();
        let used = masks.iter().fold(0, |a, &m| a | m);
        Ok(Self::compact(&self.labels, used, masks))
    }

    pub fn vertex_star(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let masks: Vec<Mask> = self.facets.iter().copied().filter(|&f| f & bit(v) != 0).collect();
        let used = masks.iter().fold(0, |a, &m| a | m);
        Ok(Self::compact(&self.labels, used, masks))
    }

    /// Vertex link as masks over the ambient vertex indices (no renumbering).
    pub fn link_masks(&self, v: usize) -> Vec<Mask> {
        self.facets.iter().filter(|&&f| f & bit(v) != 0).map(|&f| f & !bit(v)).collect()
    }

    /// True iff every `k`-subset of the vertices spans a face.
    pub fn is_k_neighbourly(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let n = self.vertex_count() as u64;
        let expected = crate::bounds::binomial_u64(n, k as u64);
        self.faces(k - 1).len() as u64 == expected && self.dimension().is_some_and(|d| k <= d + 1)
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        for &e in self.faces(1) {
            let mut it = bits(e);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            g.add_edge(a, b);
        }
        g
    }

    /// Vertex degrees in the 1-skeleton, sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let g = self.one_skeleton();
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let g = self.one_skeleton();
        g.component_count(self.vertices()) == 1
    }

    /// Number of facets containing each codimension-one face.
    pub fn ridge_degrees(&self) -> HashMap<Mask, usize> {
        let mut deg = HashMap::new();
        for &f in &self.facets {
            for v in bits(f) {
                *deg.entry(f & !bit(v)).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Closed pseudomanifold: pure and every ridge lies in exactly two facets.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        !self.is_empty()
            && self.is_pure()
            && self.dimension() != Some(0)
            && self.ridge_degrees().values().all(|&c| c == 2)
    }

    /// Connected closed surface: every edge in two triangles and every vertex
    /// link a single cycle.
    pub fn is_closed_surface(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dimension() != Some(2) {
            return Ok(false);
        }
        if !self.ridge_degrees().values().all(|&c| c == 2) {
            return Ok(false);
        }
        for v in 0..self.vertex_count() {
            if !is_cycle(&self.link_masks(v)) {
                return Ok(false);
            }
        }
        Ok(self.is_connected())
    }

    /// Closed combinatorial 3-manifold: every triangle in two facets and every
    /// vertex link a 2-sphere (connected closed surface with χ = 2).
    pub fn is_combinatorial_3_manifold(&self) -> Result<bool> {
        Ok(self.three_manifold_defect()?.is_none())
    }

    /// `Ok(None)` for a closed combinatorial 3-manifold, otherwise a short
    /// description of the first failed condition.
    pub fn three_manifold_defect(&self) -> Result<Option<String>> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dimension() != Some(3) {
            let d = self.dimension().map_or("undefined".to_string(), |d| d.to_string());
            return Ok(Some(format!("dimension is {d}, expected 3")));
        }
        for (r, c) in self.ridge_degrees() {
            if c != 2 {
                return Ok(Some(format!(
                    "triangle {:?} lies in {c} facets",
                    bits(r).map(|v| self.labels[v]).collect::<Vec<_>>()
                )));
            }
        }
        for v in 0..self.vertex_count() {
            let lk = self.vertex_link(v)?;
            if !lk.is_closed_surface()? || lk.euler_characteristic() != 2 {
                return Ok(Some(format!("link of vertex {} is not a 2-sphere", self.labels[v])));
            }
        }
        Ok(None)
    }

    /// Consistent orientation of all facets across ridges.
    pub fn is_orientable(&self) -> Result<bool> {
        if !self.is_closed_pseudomanifold() {
            return Err(Error::NotClosedPseudomanifold(
                "every ridge must lie in exactly two facets".into(),
            ));
        }
        let mut ridges: HashMap<Mask, Vec<(usize, i8)>> = HashMap::new();
        for (fi, &f) in self.facets.iter().enumerate() {
            for (pos, v) in bits(f).enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                ridges.entry(f & !bit(v)).or_default().push((fi, sign));
            }
        }
        let mut orient: Vec<i8> = vec![0; self.facets.len()];
        for start in 0..self.facets.len() {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut stack = vec![start];
            while let Some(fi) = stack.pop() {
                let f = self.facets[fi];
                for (pos, v) in bits(f).enumerate() {
                    let r = f & !bit(v);
                    let induced = orient[fi] * if pos % 2 == 0 { 1 } else { -1 };
                    for &(gi, gsign) in &ridges[&r] {
                        if gi == fi {
                            continue;
                        }
                        // the neighbour must induce the opposite orientation on r
                        let want = -induced * gsign;
                        if orient[gi] == 0 {
                            orient[gi] = want;
                            stack.push(gi);
                        } else if orient[gi] != want {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`. Labels
    /// become `1..n` in the new numbering.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let masks = self.facets.iter().map(|&f| bits(f).fold(0, |a, v| a | bit(perm[v])));
        SimplicialComplex::from_masks(masks)
    }

    /// Same complex with labels reset to `1..n`.
    pub fn with_dense_labels(&self) -> Self {
        SimplicialComplex::from_masks(self.facets.iter().copied())
    }

    /// Parses the facet-list text format: one facet per line,
    /// whitespace-separated positive labels, `#` comment lines, blank lines
    /// ignored.
    pub fn parse_facet_list(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let facet = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: format!("bad vertex label {tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            if facet.contains(&0) {
                return Err(Error::Parse { line: i + 1, msg: "vertex labels must be positive".into() });
            }
            facets.push(facet);
        }
        Self::from_facets(facets)
    }

    pub fn to_facet_list(&self) -> String {
        let mut out = String::new();
        for f in self.facet_lists() {
            let line: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// True iff the 1-dimensional complex given by edge masks is a single cycle.
fn is_cycle(edges: &[Mask]) -> bool {
    if edges.len() < 3 || edges.iter().any(|e| e.count_ones() != 2) {
        return false;
    }
    let mut adj = [0 as Mask; MAX_VERTICES];
    let mut used = 0;
    for &e in edges {
        let mut it = bits(e);
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        adj[a] |= bit(b);
        adj[b] |= bit(a);
        used |= e;
    }
    bits(used).all(|v| adj[v].count_ones() == 2) && component_count(&adj, used) == 1
}

/// Renders a sorted degree sequence as `d1^e1 d2^e2 ...`.
pub fn format_degree_sequence(degrees: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i];
        let mut j = i;
        while j < degrees.len() && degrees[j] == d {
            j += 1;
        }
        parts.push(format!("{d}^{}", j - i));
        i = j;
    }
    parts.join(" ")
}
