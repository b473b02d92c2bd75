//! Rsl-functions as vertex orders, their critical points, and slicings.
//!
//! An rsl-function is represented only by the order in which it visits the
//! vertices. The multiplicity of a vertex `v` as a critical point of index
//! `i` is the reduced Betti number `β̃_{i-1}` of the part of `lk(v)` spanned
//! by the vertices before `v`; an empty lower link counts as one critical
//! point of index 0.
//!
//! A slicing is given by the set `W` of vertices below the level. For a
//! closed 3-manifold it is a closed surface whose cells are a triangle or a
//! quadrilateral per facet meeting both sides, whose edges are the cut
//! triangles and whose vertices are the cut edges.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::complex::{bit, bits, subsets_of_size, FVector, Mask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_betti, BettiVector, PrimeField};

/// Largest vertex count for which [`all_rsl_perfect`] enumerates orderings.
pub const RSL_ORDERING_CAP: usize = 9;

/// A vertex order; `order[0]` has the smallest function value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RslOrdering {
    order: Vec<usize>,
}

impl RslOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || seen[v] {
                return Err(Error::InvalidOrdering);
            }
            seen[v] = true;
        }
        Ok(RslOrdering { order })
    }

    pub fn identity(n: usize) -> Self {
        RslOrdering { order: (0..n).collect() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The order of `-g`.
    pub fn reversed(&self) -> Self {
        RslOrdering { order: self.order.iter().rev().copied().collect() }
    }

    /// Vertex sets below each level strictly between consecutive vertices.
    pub fn sublevel_sets(&self) -> Vec<Mask> {
        let mut acc = 0;
        let mut out = Vec::new();
        for &v in &self.order[..self.order.len().saturating_sub(1)] {
            acc |= bit(v);
            out.push(acc);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalPoint {
    pub vertex: usize,
    pub index: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalReport {
    pub points: Vec<CriticalPoint>,
    /// Total multiplicity per index `0..=d`.
    pub per_index: Vec<u64>,
}

impl CriticalReport {
    pub fn total(&self) -> u64 {
        self.per_index.iter().sum()
    }
}

/// Critical multiplicities of every vertex for every possible lower link,
/// indexed by the set of earlier vertices among its neighbours.
pub struct CriticalTable {
    dim: usize,
    neighbours: Vec<Mask>,
    table: Vec<HashMap<Mask, Vec<u64>>>,
}

fn lower_link_multiplicities(link: &SimplicialComplex, dim: usize, field: PrimeField) -> Vec<u64> {
    let mut m = vec![0u64; dim + 1];
    if link.is_empty() {
        m[0] = 1;
        return m;
    }
    let b: BettiVector = reduced_betti(link, field);
    for (i, &x) in b.values.iter().enumerate() {
        if i < dim {
            m[i + 1] = x as u64;
        }
    }
    m
}

impl CriticalTable {
    pub fn new(c: &SimplicialComplex, field: PrimeField) -> Result<Self> {
        let dim = c.dimension().ok_or(Error::EmptyInput)?;
        let g = c.one_skeleton();
        let mut table = Vec::with_capacity(c.vertex_count());
        let mut neighbours = Vec::new();
        for v in 0..c.vertex_count() {
            let nb = g.neighbours(v);
            let link = SimplicialComplex::from_masks(c.link_masks(v));
            // link vertex i corresponds to the i-th set bit of nb
            let nb_list: Vec<usize> = bits(nb).collect();
            let mut per = HashMap::new();
            for size in 0..=nb_list.len() {
                for local in subsets_of_size(crate::complex::full_mask(nb_list.len()), size) {
                    let ambient = bits(local).fold(0, |a, i| a | bit(nb_list[i]));
                    let lower = restrict_to(&link, ambient);
                    per.insert(ambient, lower_link_multiplicities(&lower, dim, field));
                }
            }
            neighbours.push(nb);
            table.push(per);
        }
        Ok(CriticalTable { dim, neighbours, table })
    }

    /// Multiplicities of `v` when `earlier` are the vertices before it.
    pub fn multiplicities(&self, v: usize, earlier: Mask) -> &[u64] {
        &self.table[v][&(earlier & self.neighbours[v])]
    }

    pub fn report(&self, ord: &RslOrdering) -> CriticalReport {
        let mut per_index = vec![0u64; self.dim + 1];
        let mut points = Vec::new();
        let mut earlier = 0;
        for &v in ord.order() {
            for (i, &m) in self.multiplicities(v, earlier).iter().enumerate() {
                if m > 0 {
                    points.push(CriticalPoint { vertex: v, index: i, multiplicity: m });
                    per_index[i] += m;
                }
            }
            earlier |= bit(v);
        }
        CriticalReport { points, per_index }
    }

    fn total(&self, v: usize, earlier: Mask) -> u64 {
        self.multiplicities(v, earlier).iter().sum()
    }
}

/// The subcomplex of `link` (built by `from_masks`, so labels are ambient
/// index + 1) induced by the ambient vertex set `ambient`.
fn restrict_to(link: &SimplicialComplex, ambient: Mask) -> SimplicialComplex {
    let local = link
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, &l)| ambient & bit(l as usize - 1) != 0)
        .fold(0, |a, (i, _)| a | bit(i));
    link.induced_subcomplex(local)
}

fn check_ordering(c: &SimplicialComplex, ord: &RslOrdering) -> Result<()> {
    if ord.len() != c.vertex_count() {
        Err(Error::InvalidOrdering)
    } else {
        Ok(())
    }
}

pub fn critical_points(c: &SimplicialComplex, ord: &RslOrdering, field: PrimeField) -> Result<CriticalReport> {
    check_ordering(c, ord)?;
    let dim = c.dimension().ok_or(Error::EmptyInput)?;
    let mut per_index = vec![0u64; dim + 1];
    let mut points = Vec::new();
    let mut earlier = 0;
    for &v in ord.order() {
        let link = SimplicialComplex::from_masks(c.link_masks(v));
        let lower = restrict_to(&link, earlier);
        for (i, m) in lower_link_multiplicities(&lower, dim, field).into_iter().enumerate() {
            if m > 0 {
                points.push(CriticalPoint { vertex: v, index: i, multiplicity: m });
                per_index[i] += m;
            }
        }
        earlier |= bit(v);
    }
    Ok(CriticalReport { points, per_index })
}

fn betti_total(c: &SimplicialComplex, field: PrimeField) -> u64 {
    crate::homology::betti(c, field).total() as u64
}

pub fn is_perfect(c: &SimplicialComplex, ord: &RslOrdering, field: PrimeField) -> Result<bool> {
    Ok(critical_points(c, ord, field)?.total() == betti_total(c, field))
}

/// Whether every vertex order is perfect. Enumerates all `n!` orders, so
/// `n` is capped at [`RSL_ORDERING_CAP`].
pub fn all_rsl_perfect(c: &SimplicialComplex, field: PrimeField) -> Result<bool> {
    let n = c.vertex_count();
    if n > RSL_ORDERING_CAP {
        return Err(Error::CapExceeded { what: "exhaustive rsl orderings", n, cap: RSL_ORDERING_CAP });
    }
    let table = CriticalTable::new(c, field)?;
    let target = betti_total(c, field);
    // multiplicities are nonnegative, so a partial sum above the target
    // already decides the branch
    fn dfs(t: &CriticalTable, n: usize, placed: Mask, sum: u64, target: u64) -> bool {
        if sum > target {
            return false;
        }
        if placed.count_ones() as usize == n {
            return sum == target;
        }
        (0..n).filter(|&v| placed & bit(v) == 0).all(|v| dfs(t, n, placed | bit(v), sum + t.total(v, placed), target))
    }
    Ok((0..n).into_par_iter().all(|v| dfs(&table, n, bit(v), table.total(v, 0), target)))
}

fn check_bipartition(c: &SimplicialComplex, w: Mask) -> Result<()> {
    if w & !c.vertices() != 0 {
        return Err(Error::InvalidSubset);
    }
    if w == 0 || w == c.vertices() {
        return Err(Error::TrivialBipartition);
    }
    Ok(())
}

fn splits(face: Mask, w: Mask) -> bool {
    face & w != 0 && face & !w != 0
}

/// `f_i` of the slicing at `W` is the number of `(i+1)`-faces meeting both
/// `W` and its complement.
pub fn slicing_f_vector(c: &SimplicialComplex, w: Mask) -> Result<FVector> {
    check_bipartition(c, w)?;
    let d = c.dimension().unwrap_or(0);
    Ok(FVector((1..=d).map(|k| c.faces(k).iter().filter(|&&f| splits(f, w)).count() as u64).collect()))
}

/// One connected component of a slicing surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub euler_characteristic: i64,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicingSurface {
    pub lower: Mask,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub quadrilaterals: usize,
    pub components: Vec<SurfaceComponent>,
}

impl SlicingSurface {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + (self.triangles + self.quadrilaterals) as i64
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(vec![self.vertices as u64, self.edges as u64, (self.triangles + self.quadrilaterals) as u64])
    }

    /// Betti numbers of the closed surface over `F`, from the classification
    /// of its components.
    pub fn betti(&self, field: PrimeField) -> BettiVector {
        let mut b = [0i64; 3];
        for comp in &self.components {
            let top = if comp.orientable || field.characteristic() == 2 { 1 } else { 0 };
            b[0] += 1;
            b[1] += 1 + top - comp.euler_characteristic;
            b[2] += top;
        }
        BettiVector { values: b.to_vec(), reduced: false }
    }
}

/// Builds slicing surfaces of one closed 3-manifold, validated once.
pub struct Slicer<'a> {
    c: &'a SimplicialComplex,
}

impl<'a> Slicer<'a> {
    pub fn new(c: &'a SimplicialComplex) -> Result<Self> {
        if let Some(why) = c.three_manifold_defect()? {
            return Err(Error::NotThreeManifold(why));
        }
        Ok(Slicer { c })
    }

    pub fn surface(&self, w: Mask) -> Result<SlicingSurface> {
        check_bipartition(self.c, w)?;
        Ok(build_surface(self.c, w))
    }
}

pub fn slicing_surface(c: &SimplicialComplex, w: Mask) -> Result<SlicingSurface> {
    Slicer::new(c)?.surface(w)
}

fn build_surface(c: &SimplicialComplex, w: Mask) -> SlicingSurface {
    let cut_edges: Vec<Mask> = c.faces(1).iter().copied().filter(|&e| splits(e, w)).collect();
    let cut_tris: Vec<Mask> = c.faces(2).iter().copied().filter(|&t| splits(t, w)).collect();
    let cells: Vec<Mask> = c.facets().iter().copied().filter(|&f| splits(f, w)).collect();
    let edge_index = |e: Mask| cut_edges.binary_search(&e).unwrap();

    // per cell: directed polygon edges (surface edge id, from, to) walking its boundary cycle
    let mut tri_cells: HashMap<Mask, Vec<(usize, i8)>> = HashMap::new();
    let mut quads = 0;
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    for (ci, &f) in cells.iter().enumerate() {
        if (f & w).count_ones() == 2 {
            quads += 1;
        }
        let my_tris: Vec<Mask> = bits(f).map(|v| f & !bit(v)).filter(|&t| splits(t, w)).collect();
        // walk the cycle: each cut triangle joins its two cut edges
        let ends = |t: Mask| -> (usize, usize) {
            let es: Vec<usize> = bits(t).map(|v| t & !bit(v)).filter(|&e| splits(e, w)).map(edge_index).collect();
            (es[0], es[1])
        };
        let mut order: Vec<(Mask, usize, usize)> = Vec::new();
        let (s, mut cur) = ends(my_tris[0]);
        order.push((my_tris[0], s, cur));
        let mut used = vec![false; my_tris.len()];
        used[0] = true;
        while order.len() < my_tris.len() {
            let j = (0..my_tris.len())
                .find(|&j| !used[j] && { let (a, b) = ends(my_tris[j]); a == cur || b == cur })
                .expect("cell boundary is a cycle");
            used[j] = true;
            let (a, b) = ends(my_tris[j]);
            let next = if a == cur { b } else { a };
            order.push((my_tris[j], cur, next));
            cur = next;
        }
        for (t, a, b) in order {
            let dir = if a < b { 1 } else { -1 };
            tri_cells.entry(t).or_default().push((ci, dir));
        }
    }

    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for uses in tri_cells.values() {
        if let [(a, _), (b, _)] = uses[..] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }

    // orientation propagation: adjacent cells traverse their common edge oppositely
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); cells.len()];
    for uses in tri_cells.values() {
        if let [(a, da), (b, db)] = uses[..] {
            // orient[b] must equal -orient[a] * da * db
            adj[a].push((b, -da * db));
            adj[b].push((a, -da * db));
        }
    }
    let mut orient = vec![0i8; cells.len()];
    let mut comp_orientable: HashMap<usize, bool> = HashMap::new();
    for start in 0..cells.len() {
        if orient[start] != 0 {
            continue;
        }
        orient[start] = 1;
        let mut ok = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, rel) in &adj[x] {
                let want = orient[x] * rel;
                if orient[y] == 0 {
                    orient[y] = want;
                    stack.push(y);
                } else if orient[y] != want {
                    ok = false;
                }
            }
        }
        comp_orientable.insert(find(&mut parent, start), ok);
    }

    // χ per component: cells, plus edges and vertices attributed through any incident cell
    let mut chi: HashMap<usize, i64> = HashMap::new();
    for ci in 0..cells.len() {
        *chi.entry(find(&mut parent, ci)).or_default() += 1;
    }
    for uses in tri_cells.values() {
        *chi.entry(find(&mut parent, uses[0].0)).or_default() -= 1;
    }
    let mut vertex_owner: HashMap<usize, usize> = HashMap::new();
    for (ci, &f) in cells.iter().enumerate() {
        for e in bits(f).flat_map(|a| bits(f).filter(move |&b| b > a).map(move |b| bit(a) | bit(b))) {
            if splits(e, w) {
                vertex_owner.entry(edge_index(e)).or_insert(ci);
            }
        }
    }
    for &ci in vertex_owner.values() {
        *chi.entry(find(&mut parent, ci)).or_default() += 1;
    }
    let mut roots: Vec<usize> = chi.keys().copied().collect();
    roots.sort_unstable();
    let components = roots
        .into_iter()
        .map(|r| SurfaceComponent { euler_characteristic: chi[&r], orientable: comp_orientable[&r] })
        .collect();
    SlicingSurface {
        lower: w,
        vertices: cut_edges.len(),
        edges: cut_tris.len(),
        triangles: cells.len() - quads,
        quadrilaterals: quads,
        components,
    }
}

/// Exact averages of the slicing f-vector and Euler characteristic over all
/// `W` with `|W| = k`, by direct enumeration.
pub fn average_slicing_stats(c: &SimplicialComplex, k: usize) -> Result<(Vec<BigRational>, BigRational)> {
    let n = c.vertex_count();
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    let subsets = subsets_of_size(c.vertices(), k);
    let count = BigInt::from(subsets.len());
    let d = c.dimension().unwrap_or(0);
    let mut sums = vec![0u64; d];
    let mut chi_sum = 0i64;
    for &w in &subsets {
        let f = slicing_f_vector(c, w)?;
        for (s, x) in sums.iter_mut().zip(&f.0) {
            *s += x;
        }
        chi_sum += f.euler_characteristic();
    }
    let avg_f = sums.iter().map(|&s| BigRational::new(BigInt::from(s), count.clone())).collect();
    Ok((avg_f, BigRational::new(BigInt::from(chi_sum), count)))
}

/// All nontrivial bipartitions `W` (as lower sets), in increasing order.
pub fn all_bipartitions(c: &SimplicialComplex) -> impl Iterator<Item = Mask> {
    let full = c.vertices();
    (1..full).filter(move |&w| w & !full == 0)
}

/// Whether `β_i(S) <= β_i(M) + β_{i+1}(M)` holds for every slicing of `c`.
pub fn slicing_betti_inequality_holds(c: &SimplicialComplex, field: PrimeField) -> Result<bool> {
    let slicer = Slicer::new(c)?;
    let b = crate::homology::betti(c, field);
    let bound: Vec<i64> = (0..3).map(|i| b.get(i) + b.get(i + 1)).collect();
    let masks: Vec<Mask> = all_bipartitions(c).collect();
    Ok(masks.par_iter().all(|&w| {
        let s = slicer.surface(w).expect("nontrivial bipartition").betti(field);
        (0..3).all(|i| s.get(i) <= bound[i])
    }))
}
