//! σ-vectors, the average criterion for tight 3-manifolds, Property `T_k`,
//! link combinations and the classification pipeline for small `β_1`.
//!
//! σ₀ counts the empty vertex set as `-1`: then the average σ₀ over the
//! vertex links of the 4-simplex boundary is `β_1 - 1 = -1`, as the average
//! criterion requires. Nonempty sets contribute the number of connected
//! components minus one.

pub mod assembly;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

pub use assembly::assemble;

use crate::bounds::{binomial, format_rational, max_vertices, tightness_bound, THREE_MANIFOLD_LOWER_BOUNDS};
use crate::complex::{component_count, subsets_of_size, Mask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{betti, is_tight_exhaustive, reduced_betti, PrimeField};
use crate::spheres::{enumerate_spheres, SphereRecord};

/// Largest vertex count for which σ-values are computed (all `2^n` subsets).
pub const SIGMA_CAP: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVector(pub Vec<BigRational>);

fn check_sigma_cap(n: usize) -> Result<()> {
    if n > SIGMA_CAP {
        return Err(Error::CapExceeded { what: "sigma vector", n, cap: SIGMA_CAP });
    }
    Ok(())
}

/// `Σ_j counts[j] / C(n, j)`.
fn weighted_average(n: usize, counts: &[i64]) -> BigRational {
    counts
        .iter()
        .enumerate()
        .map(|(j, &s)| BigRational::new(BigInt::from(s), binomial(n as i64, j as i64)))
        .sum()
}

/// σ₀ from the 1-skeleton alone: components of induced subgraphs.
pub fn sigma0(c: &SimplicialComplex) -> Result<BigRational> {
    let n = c.vertex_count();
    check_sigma_cap(n)?;
    let g = c.one_skeleton();
    let adj = g.adjacency();
    let mut counts = vec![0i64; n + 1];
    counts[0] = -1;
    for w in 1..=c.vertices() {
        counts[w.count_ones() as usize] += component_count(adj, w) as i64 - 1;
    }
    Ok(weighted_average(n, &counts))
}

/// `σ_0, ..., σ_{i_max}`, with reduced Betti numbers over F₂ above degree 0.
pub fn sigma(c: &SimplicialComplex, i_max: usize) -> Result<SigmaVector> {
    let n = c.vertex_count();
    check_sigma_cap(n)?;
    let mut out = vec![sigma0(c)?];
    if i_max > 0 {
        let sums: Vec<Vec<i64>> = (1..=c.vertices())
            .into_par_iter()
            .map(|w| {
                let b = reduced_betti(&c.induced_subcomplex(w), PrimeField::F2);
                (1..=i_max).map(|i| b.get(i)).collect()
            })
            .collect();
        for i in 1..=i_max {
            let mut counts = vec![0i64; n + 1];
            for (w, s) in (1..=c.vertices()).zip(&sums) {
                counts[w.count_ones() as usize] += s[i - 1];
            }
            out.push(weighted_average(n, &counts));
        }
    }
    Ok(SigmaVector(out))
}

fn require_3_manifold(c: &SimplicialComplex) -> Result<()> {
    if let Some(why) = c.three_manifold_defect()? {
        return Err(Error::NotThreeManifold(why));
    }
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Average σ₀ over the vertex links.
pub fn average_link_sigma0(c: &SimplicialComplex) -> Result<BigRational> {
    let n = c.vertex_count();
    let total: BigRational = (0..n)
        .map(|v| sigma0(&c.vertex_link(v)?))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(total / BigRational::from_integer(BigInt::from(n)))
}

/// The average criterion: a closed 3-manifold is tight iff it is
/// 2-neighbourly and the average σ₀ of its vertex links is `β_1 - 1`.
pub fn is_tight_bd(c: &SimplicialComplex, field: PrimeField) -> Result<bool> {
    require_3_manifold(c)?;
    if !c.is_k_neighbourly(2) {
        return Ok(false);
    }
    let b1 = betti(c, field).get(1);
    Ok(average_link_sigma0(c)? == BigRational::from_integer(BigInt::from(b1 - 1)))
}

/// Property `T_k` of a 2-sphere on `n` vertices: `k` reaches the vertex
/// bound for `n + 1` vertices, the 1-skeleton has no independent set of
/// `k + 2` vertices, and no 6 vertices induce a subgraph with `k + 1`
/// components.
pub fn property_tk(s: &SimplicialComplex, k: u32) -> bool {
    let n = s.vertex_count();
    let bound = tightness_bound(1, n as u32 + 1).expect("sphere has at least 4 vertices");
    if BigInt::from(k) < bound {
        return false;
    }
    let g = s.one_skeleton();
    let all = s.vertices();
    let size = k as usize + 2;
    if size <= n && subsets_of_size(all, size).into_iter().any(|w| g.is_independent(w)) {
        return false;
    }
    if n >= 6 && subsets_of_size(all, 6).into_iter().any(|w| g.component_count(w) == k as usize + 1) {
        return false;
    }
    true
}

/// Computes σ₀ and, for each `k` in `ks`, Property `T_k` for every record.
pub fn annotate(records: &mut [SphereRecord], ks: &[u32]) -> Result<()> {
    records.par_iter_mut().try_for_each(|r| -> Result<()> {
        r.sigma0 = Some(sigma0(&r.complex)?);
        for &k in ks {
            r.tk_flags.insert(k, property_tk(&r.complex, k));
        }
        Ok(())
    })
}

/// A multiset of link types given as indices into a record list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCombination {
    /// Sorted record indices, one per ambient vertex.
    pub links: Vec<usize>,
    pub sigma_sum: BigRational,
    /// Total number of vertices of each degree over all links.
    pub degree_counts: BTreeMap<usize, u64>,
}

/// Both stages of combination generation.
#[derive(Debug, Clone)]
pub struct Combinations {
    /// Multisets of σ₀ values (sorted) summing to `n (β_1 - 1)`.
    pub value_multisets: Vec<Vec<BigRational>>,
    pub combinations: Vec<LinkCombination>,
}

/// All multisets of `n` records whose σ₀ values sum to `n (β_1 - 1)`.
/// Records without a σ₀ value get one computed.
pub fn link_combinations(records: &[SphereRecord], n: usize, beta1: i64) -> Result<Combinations> {
    let sig: Vec<BigRational> = records
        .iter()
        .map(|r| r.sigma0.clone().map(Ok).unwrap_or_else(|| sigma0(&r.complex)))
        .collect::<Result<_>>()?;
    let mut values: Vec<BigRational> = sig.clone();
    values.sort();
    values.dedup();
    let target = BigRational::from_integer(BigInt::from(n as i64 * (beta1 - 1)));

    let mut value_sets: Vec<Vec<usize>> = Vec::new();
    fn rec(
        values: &[BigRational],
        from: usize,
        left: usize,
        need: BigRational,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            if need.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        if from >= values.len() {
            return;
        }
        let l = BigRational::from_integer(BigInt::from(left));
        // values are sorted, so the reachable sums lie in this range
        if &values[from] * &l > need || values.last().unwrap() * &l < need {
            return;
        }
        for i in from..values.len() {
            cur.push(i);
            rec(values, i, left - 1, &need - &values[i], cur, out);
            cur.pop();
        }
    }
    if !values.is_empty() {
        rec(&values, 0, n, target.clone(), &mut Vec::new(), &mut value_sets);
    }

    let by_value: Vec<Vec<usize>> =
        values.iter().map(|v| (0..records.len()).filter(|&i| &sig[i] == v).collect()).collect();
    let mut combinations = Vec::new();
    for vs in &value_sets {
        // per distinct value: multisets of records of that value
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &i in vs {
            match groups.last_mut() {
                Some((v, c)) if *v == i => *c += 1,
                _ => groups.push((i, 1)),
            }
        }
        let choices: Vec<Vec<Vec<usize>>> =
            groups.iter().map(|&(v, c)| multisets(&by_value[v], c)).collect();
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for ch in &choices {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    ch.iter().map(move |m| {
                        let mut p = prefix.clone();
                        p.extend_from_slice(m);
                        p
                    })
                })
                .collect();
        }
        for mut links in acc {
            links.sort_unstable();
            let mut degree_counts = BTreeMap::new();
            for &i in &links {
                for &d in &records[i].degree_sequence {
                    *degree_counts.entry(d).or_insert(0) += 1;
                }
            }
            combinations.push(LinkCombination { links, sigma_sum: target.clone(), degree_counts });
        }
    }
    let value_multisets = value_sets.into_iter().map(|vs| vs.into_iter().map(|i| values[i].clone()).collect()).collect();
    Ok(Combinations { value_multisets, combinations })
}

/// All multisets of size `k` drawn from `items`, each sorted.
fn multisets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// In a 2-neighbourly closed 3-manifold the degree of `w` in the link of `u`
/// and the degree of `u` in the link of `w` are both the length of the link
/// of the edge `uw`, so every degree occurs an even number of times over
/// all vertex links.
pub fn parity_filter(comb: &LinkCombination) -> bool {
    comb.degree_counts.values().all(|&c| c % 2 == 0)
}

/// One manifold found by the search.
#[derive(Debug, Clone)]
pub struct FoundManifold {
    pub complex: SimplicialComplex,
    pub signature: String,
    pub orientable: bool,
    pub betti_f2: Vec<i64>,
    pub tight_exhaustive: bool,
}

/// One row of the search report.
#[derive(Debug, Clone)]
pub struct CombinationRow {
    pub n: usize,
    pub id: usize,
    pub sigma_values: Vec<BigRational>,
    pub parity_ok: bool,
    pub manifolds: Vec<String>,
}

/// What the search did for one candidate vertex count.
#[derive(Debug, Clone)]
pub enum CaseOutcome {
    /// 3-neighbourly forcing: the only candidate is the simplex boundary.
    SimplexBoundary,
    /// Delegated to an external census; nothing computed.
    ExternallyClassified,
    /// Combinations generated and assembled.
    Searched {
        catalog_size: usize,
        filtered: usize,
        value_multisets: usize,
        combinations: usize,
        parity_survivors: usize,
    },
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub n: usize,
    pub outcome: CaseOutcome,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub beta1: u32,
    pub cases: Vec<CaseReport>,
    pub rows: Vec<CombinationRow>,
    pub manifolds: Vec<FoundManifold>,
}

impl SearchReport {
    pub fn summary(&self) -> String {
        let mut s = format!("tight combinatorial 3-manifolds with beta1 = {}\n", self.beta1);
        for case in &self.cases {
            let _ = match &case.outcome {
                CaseOutcome::SimplexBoundary => {
                    writeln!(s, "n = {}: 3-neighbourly, only the boundary of the 4-simplex", case.n)
                }
                CaseOutcome::ExternallyClassified => writeln!(
                    s,
                    "n = {}: not searched; no combinatorial 3-manifold with at most 11 vertices has beta1 > 1 by the published census",
                    case.n
                ),
                CaseOutcome::Searched { catalog_size, filtered, value_multisets, combinations, parity_survivors } => {
                    writeln!(
                        s,
                        "n = {}: {} link spheres, {} pass T_{}, {} sigma0 multisets, {} link combinations, {} pass parity",
                        case.n, catalog_size, filtered, self.beta1, value_multisets, combinations, parity_survivors
                    )
                }
            };
        }
        let _ = writeln!(s, "manifolds found: {}", self.manifolds.len());
        for m in &self.manifolds {
            let _ = writeln!(
                s,
                "  {} f={} betti(F2)={:?} {} tight={}",
                m.signature,
                m.complex.f_vector(),
                m.betti_f2,
                if m.orientable { "orientable" } else { "nonorientable" },
                m.tight_exhaustive
            );
        }
        s
    }

    /// TSV: `n, combination id, σ₀ multiset, parity verdict, manifold count, signatures`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tcombination\tsigma0\tparity\tmanifolds\tsignatures\n");
        for r in &self.rows {
            let vals: Vec<String> = r.sigma_values.iter().map(format_rational).collect();
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                r.id,
                vals.join(","),
                if r.parity_ok { "even" } else { "odd" },
                r.manifolds.len(),
                r.manifolds.join(",")
            );
        }
        s
    }
}

fn describe(c: SimplicialComplex) -> Result<FoundManifold> {
    let tight_exhaustive = is_tight_exhaustive(&c, PrimeField::F2)?;
    Ok(FoundManifold {
        signature: c.canonical_signature(),
        orientable: c.is_orientable()?,
        betti_f2: betti(&c, PrimeField::F2).values,
        tight_exhaustive,
        complex: c,
    })
}

fn first_candidate(beta1: u32) -> usize {
    THREE_MANIFOLD_LOWER_BOUNDS[beta1 as usize] as usize
}

/// Classification of tight 3-manifolds with the given first Betti number
/// for `β_1 <= 2`. The case `β_1 = 2`, `n = 11` is reported as settled by
/// the published census of 11-vertex 3-manifolds and is not searched.
pub fn search_tight_3manifolds(beta1: u32) -> Result<SearchReport> {
    if beta1 > 2 {
        return Err(Error::OutOfRange(format!("beta1 = {beta1} is not supported (0, 1 or 2)")));
    }
    let mut report = SearchReport { beta1, cases: Vec::new(), rows: Vec::new(), manifolds: Vec::new() };
    let lo = first_candidate(beta1);
    let hi = max_vertices(1, beta1 as u64)? as usize;
    let mut found: Vec<SimplicialComplex> = Vec::new();
    for n in lo..=hi {
        if beta1 == 0 {
            // the bound is 0 only at n = 5, where 2-neighbourliness makes
            // every vertex link a 4-vertex sphere
            let links = vec![crate::standard::simplex_boundary(2); n];
            found.extend(assemble(&links, n)?);
            report.cases.push(CaseReport { n, outcome: CaseOutcome::SimplexBoundary });
            continue;
        }
        if beta1 == 2 && n == 11 {
            report.cases.push(CaseReport { n, outcome: CaseOutcome::ExternallyClassified });
            continue;
        }
        let mut catalog = enumerate_spheres(n - 1)?.records;
        annotate(&mut catalog, &[beta1])?;
        let filtered: Vec<SphereRecord> = catalog.iter().filter(|r| r.tk_flags[&beta1]).cloned().collect();
        let combos = link_combinations(&filtered, n, beta1 as i64)?;
        let mut survivors = 0;
        for (id, comb) in combos.combinations.iter().enumerate() {
            let mut sigma_values: Vec<BigRational> =
                comb.links.iter().map(|&i| filtered[i].sigma0.clone().unwrap()).collect();
            sigma_values.sort();
            let parity_ok = parity_filter(comb);
            let mut sigs = Vec::new();
            if parity_ok {
                survivors += 1;
                let links: Vec<SimplicialComplex> = comb.links.iter().map(|&i| filtered[i].complex.clone()).collect();
                for m in assemble(&links, n)? {
                    sigs.push(m.canonical_signature());
                    found.push(m);
                }
            }
            report.rows.push(CombinationRow {
                n,
                id,
                sigma_values,
                parity_ok,
                manifolds: sigs,
            });
        }
        report.cases.push(CaseReport {
            n,
            outcome: CaseOutcome::Searched {
                catalog_size: catalog.len(),
                filtered: filtered.len(),
                value_multisets: combos.value_multisets.len(),
                combinations: combos.combinations.len(),
                parity_survivors: survivors,
            },
        });
    }
    let mut manifolds: Vec<FoundManifold> = found.into_iter().map(describe).collect::<Result<_>>()?;
    manifolds.retain(|m| m.betti_f2.get(1).copied() == Some(beta1 as i64) && m.tight_exhaustive);
    manifolds.sort_by(|a, b| a.signature.cmp(&b.signature));
    manifolds.dedup_by(|a, b| a.signature == b.signature);
    report.manifolds = manifolds;
    Ok(report)
}

/// Distribution of σ₀ values as sorted `(value, multiplicity)` pairs.
pub fn sigma0_distribution(records: &[SphereRecord]) -> Vec<(BigRational, usize)> {
    let mut map: BTreeMap<BigRational, usize> = BTreeMap::new();
    for r in records {
        if let Some(s) = &r.sigma0 {
            *map.entry(s.clone()).or_insert(0) += 1;
        }
    }
    map.into_iter().collect()
}

/// Checks that every vertex link of `c` is among `links`, counted with
/// multiplicity, by canonical signature.
pub fn has_link_multiset(c: &SimplicialComplex, links: &[SimplicialComplex]) -> bool {
    let mut a: Vec<String> = (0..c.vertex_count())
        .map(|v| c.vertex_link(v).map(|l| l.canonical_signature()).unwrap_or_default())
        .collect();
    let mut b: Vec<String> = links.iter().map(|l| l.canonical_signature()).collect();
    a.sort();
    b.sort();
    a == b
}

/// Components of the induced subgraph on `w`, as a plain count.
pub fn induced_components(c: &SimplicialComplex, w: Mask) -> usize {
    c.one_skeleton().component_count(w)
}
