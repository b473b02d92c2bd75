//! Backtracking reconstruction of closed 3-manifolds from a multiset of
//! vertex links.
//!
//! Ambient vertices receive links one at a time. Vertex 0 gets the first
//! link in a fixed labelling; afterwards the unassigned vertex with the
//! largest partial link is chosen next, and every link type that remains is
//! tried in every placement compatible with the facets already present. A
//! placement is a bijection from the link's vertices onto the other ambient
//! vertices: the partial link must map onto link triangles, the link
//! triangles meeting already assigned vertices must be exactly the partial
//! link, and ambient vertices that no facet touches yet are interchangeable,
//! so they are filled in one fixed order.
//!
//! After each placement the partial link of every unassigned vertex is
//! checked: every vertex of it must have an edge link that is a union of
//! paths or a single cycle, and the resulting exact and minimum vertex
//! degrees must fit some link type still available.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::canonical_form_masks;
use crate::complex::{bit, bits, full_mask, Mask, SimplicialComplex, MAX_VERTICES};
use crate::error::{Error, Result};

/// A link type in canonical labelling on `0..m`.
struct LinkType {
    triangles: Vec<Mask>,
    adj: Vec<Mask>,
    degree: Vec<usize>,
    sorted_degrees: Vec<usize>,
    is_triangle: Vec<bool>,
}

impl LinkType {
    fn new(m: usize, triangles: Vec<Mask>) -> Self {
        let mut adj = vec![0; m];
        let mut is_triangle = vec![false; 1 << m];
        for &t in &triangles {
            is_triangle[t as usize] = true;
            for v in bits(t) {
                adj[v] |= t & !bit(v);
            }
        }
        let degree: Vec<usize> = adj.iter().map(|a| a.count_ones() as usize).collect();
        let mut sorted_degrees = degree.clone();
        sorted_degrees.sort_unstable();
        LinkType { triangles, adj, degree, sorted_degrees, is_triangle }
    }

    /// Whether some vertex degrees of this type can be `exact` (as a
    /// multiset) and, on distinct other vertices, at least `lower`.
    fn admits(&self, exact: &[usize], lower: &[usize]) -> bool {
        let mut rest = self.sorted_degrees.clone();
        for &d in exact {
            match rest.binary_search(&d) {
                Ok(i) => {
                    rest.remove(i);
                }
                Err(_) => return false,
            }
        }
        // largest bounds against largest remaining degrees
        let mut bounds = lower.to_vec();
        bounds.sort_unstable_by(|a, b| b.cmp(a));
        if bounds.len() > rest.len() {
            return false;
        }
        bounds.iter().zip(rest.iter().rev()).all(|(b, d)| b <= d)
    }
}

struct Ctx {
    n: usize,
    types: Vec<LinkType>,
}

#[derive(Clone)]
struct State {
    facets: Vec<Mask>,
    tri_count: Vec<u8>,
    assigned: Mask,
    touched: Mask,
    remaining: Vec<usize>,
}

fn triangles_of(f: Mask) -> impl Iterator<Item = Mask> {
    bits(f).map(move |v| f & !bit(v))
}

impl State {
    fn partial_link(&self, v: usize) -> Vec<Mask> {
        self.facets.iter().filter(|&&f| f & bit(v) != 0).map(|&f| f & !bit(v)).collect()
    }
}

/// Exact degrees (closed edge links) and lower bounds (open ones) of the
/// vertices of a partial link on `others`, or `None` if some edge link is
/// neither a union of paths nor a single cycle.
fn degree_constraints(partial: &[Mask], others: Mask) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut exact = Vec::new();
    let mut lower = Vec::new();
    for x in bits(others) {
        let mut adj = [0 as Mask; MAX_VERTICES];
        let mut verts: Mask = 0;
        let mut edges = 0usize;
        for &t in partial {
            if t & bit(x) != 0 {
                let e = t & !bit(x);
                let (a, b) = (e.trailing_zeros() as usize, 31 - e.leading_zeros() as usize);
                adj[a] |= bit(b);
                adj[b] |= bit(a);
                verts |= e;
                edges += 1;
            }
        }
        if edges == 0 {
            lower.push(3);
            continue;
        }
        let vcount = verts.count_ones() as usize;
        if edges == vcount {
            // with all degrees at most 2 this is a disjoint union of cycles
            if crate::complex::component_count(&adj, verts) != 1 {
                return None;
            }
            exact.push(vcount);
        } else {
            // a cycle together with further edges would leave fewer edges
            // than vertices only if some component is a path; rule out any
            // component that closes up
            let mut rest = verts;
            while rest != 0 {
                let mut seen = rest & rest.wrapping_neg();
                let mut frontier = seen;
                while frontier != 0 {
                    let y = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = adj[y] & !seen;
                    seen |= new;
                    frontier |= new;
                }
                let comp_edges: u32 = bits(seen).map(|y| (adj[y] & seen).count_ones()).sum::<u32>() / 2;
                if comp_edges as usize >= seen.count_ones() as usize {
                    return None;
                }
                rest &= !seen;
            }
            lower.push(vcount.max(3));
        }
    }
    Some((exact, lower))
}

impl Ctx {
    fn others(&self, v: usize) -> Mask {
        full_mask(self.n) & !bit(v)
    }

    fn feasible(&self, state: &State, u: usize) -> bool {
        let partial = state.partial_link(u);
        let (exact, lower) = match degree_constraints(&partial, self.others(u)) {
            Some(c) => c,
            None => return false,
        };
        self.types.iter().zip(&state.remaining).any(|(t, &c)| c > 0 && t.admits(&exact, &lower))
    }

    /// Adds the star of `v` with the given ambient link; `None` if some
    /// triangle would lie in more than two facets or some unassigned vertex
    /// is left with an impossible partial link.
    fn place(&self, state: &State, v: usize, ty: usize, link: &[Mask]) -> Option<State> {
        let mut next = state.clone();
        for &t in link {
            if t & state.assigned != 0 {
                continue;
            }
            let f = t | bit(v);
            for r in triangles_of(f) {
                let c = &mut next.tri_count[r as usize];
                *c += 1;
                if *c > 2 {
                    return None;
                }
            }
            next.facets.push(f);
            next.touched |= f;
        }
        next.assigned |= bit(v);
        next.remaining[ty] -= 1;
        for u in bits(next.touched & !next.assigned) {
            if !self.feasible(&next, u) {
                return None;
            }
        }
        Some(next)
    }

    /// All ambient links of type `ty` that `v` can receive: images of the
    /// type's triangles, deduplicated.
    fn placements(&self, state: &State, v: usize, ty: usize) -> Vec<Vec<Mask>> {
        let t = &self.types[ty];
        let partial = state.partial_link(v);
        let others = self.others(v);
        let mut results: HashSet<Vec<Mask>> = HashSet::new();
        let mut out = Vec::new();

        let p_verts: Mask = partial.iter().fold(0, |a, &x| a | x);
        let mut p_adj = [0 as Mask; MAX_VERTICES];
        for &tri in &partial {
            for x in bits(tri) {
                p_adj[x] |= tri & !bit(x);
            }
        }
        // exact degrees for assigned vertices (their discs are complete)
        let assigned_here = p_verts & state.assigned;
        let mut need_exact: Vec<usize> =
            bits(assigned_here).map(|x| p_adj[x].count_ones() as usize).collect();
        need_exact.sort_unstable();
        if !t.admits(&need_exact, &[]) {
            return out;
        }

        // BFS order over the partial link's 1-skeleton, each component
        // started from an assigned vertex of largest degree when possible
        let mut order: Vec<usize> = Vec::new();
        let mut seen: Mask = 0;
        while seen != p_verts {
            let rest = p_verts & !seen;
            let start = bits(rest & state.assigned)
                .max_by_key(|&x| (p_adj[x].count_ones(), std::cmp::Reverse(x)))
                .unwrap_or(rest.trailing_zeros() as usize);
            let mut queue = vec![start];
            seen |= bit(start);
            let mut i = 0;
            while i < queue.len() {
                let x = queue[i];
                i += 1;
                for y in bits(p_adj[x] & !seen) {
                    seen |= bit(y);
                    queue.push(y);
                }
            }
            order.extend(queue);
        }

        let m = self.n - 1;
        let mut psi = vec![usize::MAX; MAX_VERTICES]; // ambient -> type vertex
        let meets_assigned_count = |psi: &[usize]| -> usize {
            let img: Mask = bits(assigned_here).fold(0, |a, x| a | bit(psi[x]));
            t.triangles.iter().filter(|&&tr| tr & img != 0).count()
        };

        let mut complete_maps: Vec<Vec<usize>> = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            t: &LinkType,
            order: &[usize],
            idx: usize,
            used: Mask,
            psi: &mut [usize],
            p_adj: &[Mask],
            partial: &[Mask],
            assigned: Mask,
            m: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if idx == order.len() {
                out.push(psi.to_vec());
                return;
            }
            let x = order[idx];
            let mut cands = full_mask(m) & !used;
            for y in bits(p_adj[x]) {
                if psi[y] != usize::MAX {
                    cands &= t.adj[psi[y]];
                }
            }
            let dx = p_adj[x].count_ones() as usize;
            for c in bits(cands) {
                if assigned & bit(x) != 0 {
                    if t.degree[c] != dx {
                        continue;
                    }
                } else if t.degree[c] < dx {
                    continue;
                }
                psi[x] = c;
                let ok = partial.iter().filter(|&&tr| tr & bit(x) != 0).all(|&tr| {
                    let imgs: Vec<usize> = bits(tr).map(|z| psi[z]).collect();
                    if imgs.contains(&usize::MAX) {
                        return true;
                    }
                    t.is_triangle[imgs.iter().fold(0usize, |a, &z| a | (1 << z))]
                });
                if ok {
                    rec(t, order, idx + 1, used | bit(c), psi, p_adj, partial, assigned, m, out);
                }
                psi[x] = usize::MAX;
            }
        }
        rec(t, &order, 0, 0, &mut psi, &p_adj, &partial, state.assigned, m, &mut complete_maps);

        for psi in complete_maps {
            if meets_assigned_count(&psi) != partial.len() {
                continue;
            }
            let used_type: Mask = bits(p_verts).fold(0, |a, x| a | bit(psi[x]));
            let free_type: Vec<usize> = bits(full_mask(m) & !used_type).collect();
            let rest_ambient = others & !p_verts;
            let touched: Vec<usize> = bits(rest_ambient & state.touched).collect();
            let untouched: Vec<usize> = bits(rest_ambient & !state.touched).collect();
            // injections of the touched ambient vertices into the free type vertices
            let mut phi = vec![usize::MAX; m]; // type -> ambient
            for x in bits(p_verts) {
                phi[psi[x]] = x;
            }
            let emit = |phi: &[usize], results: &mut HashSet<Vec<Mask>>, out: &mut Vec<Vec<Mask>>| {
                let mut img: Vec<Mask> = t
                    .triangles
                    .iter()
                    .map(|&tr| bits(tr).fold(0, |a, z| a | bit(phi[z])))
                    .collect();
                img.sort_unstable();
                if results.insert(img.clone()) {
                    out.push(img);
                }
            };
            fn inject(
                k: usize,
                touched: &[usize],
                untouched: &[usize],
                free: &[usize],
                taken: &mut Vec<bool>,
                phi: &mut Vec<usize>,
                emit: &mut dyn FnMut(&[usize]),
            ) {
                if k == touched.len() {
                    let mut u = untouched.iter();
                    let mut filled = Vec::new();
                    for (i, &f) in free.iter().enumerate() {
                        if !taken[i] {
                            phi[f] = *u.next().unwrap();
                            filled.push(f);
                        }
                    }
                    emit(phi);
                    for f in filled {
                        phi[f] = usize::MAX;
                    }
                    return;
                }
                for i in 0..free.len() {
                    if taken[i] {
                        continue;
                    }
                    taken[i] = true;
                    phi[free[i]] = touched[k];
                    inject(k + 1, touched, untouched, free, taken, phi, emit);
                    phi[free[i]] = usize::MAX;
                    taken[i] = false;
                }
            }
            let mut taken = vec![false; free_type.len()];
            let mut sink = |p: &[usize]| emit(p, &mut results, &mut out);
            inject(0, &touched, &untouched, &free_type, &mut taken, &mut phi, &mut sink);
        }
        out
    }

    fn choose_vertex(&self, state: &State) -> usize {
        bits(full_mask(self.n) & !state.assigned)
            .max_by_key(|&u| (state.facets.iter().filter(|&&f| f & bit(u) != 0).count(), std::cmp::Reverse(u)))
            .expect("an unassigned vertex")
    }

    fn children(&self, state: &State) -> Vec<State> {
        let v = self.choose_vertex(state);
        let mut out = Vec::new();
        for ty in 0..self.types.len() {
            if state.remaining[ty] == 0 {
                continue;
            }
            for link in self.placements(state, v, ty) {
                if let Some(s) = self.place(state, v, ty, &link) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn solve(&self, state: State, depth: usize) -> Vec<Vec<Mask>> {
        if state.assigned == full_mask(self.n) {
            return vec![canonical_form_masks(self.n, &state.facets).certificate];
        }
        let kids = self.children(&state);
        if depth < 3 {
            kids.into_par_iter().flat_map_iter(|s| self.solve(s, depth + 1)).collect()
        } else {
            kids.into_iter().flat_map(|s| self.solve(s, depth + 1)).collect()
        }
    }
}

/// All closed 3-manifolds on `n` vertices, up to isomorphism, whose vertex
/// links are exactly the given 2-spheres (one per vertex, each on `n - 1`
/// vertices). Output is sorted by canonical certificate.
pub fn assemble(links: &[SimplicialComplex], n: usize) -> Result<Vec<SimplicialComplex>> {
    if links.len() != n {
        return Err(Error::OutOfRange(format!("{} links given for {n} vertices", links.len())));
    }
    if !(5..=13).contains(&n) {
        return Err(Error::OutOfRange(format!("assembly supports 5 to 13 vertices, got {n}")));
    }
    let mut certs: Vec<Vec<Mask>> = Vec::new();
    for l in links {
        if l.vertex_count() != n - 1 {
            return Err(Error::OutOfRange(format!(
                "link has {} vertices, expected {}",
                l.vertex_count(),
                n - 1
            )));
        }
        if !l.is_closed_surface()? || l.euler_characteristic() != 2 {
            return Err(Error::OutOfRange("every link must be a 2-sphere".into()));
        }
        certs.push(canonical_form_masks(n - 1, l.facets()).certificate);
    }
    let first = certs[0].clone();
    let mut distinct = certs.clone();
    distinct.sort();
    distinct.dedup();
    let remaining: Vec<usize> = distinct.iter().map(|d| certs.iter().filter(|c| *c == d).count()).collect();
    let ctx = Ctx { n, types: distinct.iter().map(|d| LinkType::new(n - 1, d.clone())).collect() };
    let first_ty = distinct.iter().position(|d| *d == first).unwrap();

    let start = State {
        facets: Vec::new(),
        tri_count: vec![0; 1 << n],
        assigned: 0,
        touched: 0,
        remaining,
    };
    // vertex 0 takes the first link with link vertex i on ambient vertex i + 1
    let link0: Vec<Mask> = first.iter().map(|&t| t << 1).collect();
    let mut results = match ctx.place(&start, 0, first_ty, &link0) {
        Some(s) => ctx.solve(s, 0),
        None => Vec::new(),
    };
    results.sort_unstable();
    results.dedup();
    Ok(results.into_iter().map(SimplicialComplex::from_masks).collect())
}
