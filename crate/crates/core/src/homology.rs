//! Simplicial homology over prime fields.
//!
//! Boundary matrices are reduced by Gaussian elimination, with rows packed
//! into 64-bit words over F₂ and stored densely mod `p` otherwise. Only ranks
//! are ever computed; the injectivity test for induced subcomplexes is
//! expressed through ranks as well.

use rayon::prelude::*;

use crate::complex::{bits, subsets_of_size, Mask, SimplicialComplex};
use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const F2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    fn neg_one(self) -> u32 {
        self.p - 1
    }

    fn inverse(self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::F2
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Betti numbers `β_0, ..., β_d`. Reduced vectors of the empty complex are
/// empty except for the convention `β̃_0(∅) = -1` used by the σ-vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiVector {
    pub values: Vec<i64>,
    pub reduced: bool,
}

impl BettiVector {
    pub fn get(&self, i: usize) -> i64 {
        self.values.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn alternating_sum(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b } else { -b })
            .sum()
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A sparse matrix row: `(column, coefficient)` pairs with nonzero coefficients.
type SparseRow = Vec<(usize, u32)>;

/// Incremental row echelon form over a prime field.
enum Reducer {
    Binary { words: usize, pivot_row: Vec<Option<usize>>, rows: Vec<Vec<u64>> },
    Modular { field: PrimeField, pivot_row: Vec<Option<usize>>, rows: Vec<Vec<u32>> },
}

impl Reducer {
    fn new(field: PrimeField, cols: usize) -> Self {
        if field.p == 2 {
            Reducer::Binary { words: cols.div_ceil(64).max(1), pivot_row: vec![None; cols], rows: Vec::new() }
        } else {
            Reducer::Modular { field, pivot_row: vec![None; cols], rows: Vec::new() }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Reducer::Binary { rows, .. } => rows.len(),
            Reducer::Modular { rows, .. } => rows.len(),
        }
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    fn insert(&mut self, row: &[(usize, u32)]) -> bool {
        match self {
            Reducer::Binary { words, pivot_row, rows } => {
                let mut r = vec![0u64; *words];
                for &(c, a) in row {
                    if a % 2 == 1 {
                        r[c / 64] ^= 1 << (c % 64);
                    }
                }
                loop {
                    let lead = match r.iter().position(|&w| w != 0) {
                        None => return false,
                        Some(i) => i * 64 + r[i].trailing_zeros() as usize,
                    };
                    match pivot_row[lead] {
                        Some(pr) => {
                            for (x, y) in r.iter_mut().zip(&rows[pr]) {
                                *x ^= y;
                            }
                        }
                        None => {
                            pivot_row[lead] = Some(rows.len());
                            rows.push(r);
                            return true;
                        }
                    }
                }
            }
            Reducer::Modular { field, pivot_row, rows } => {
                let p = field.p as u64;
                let mut r = vec![0u32; pivot_row.len()];
                for &(c, a) in row {
                    r[c] = ((r[c] as u64 + a as u64) % p) as u32;
                }
                loop {
                    let lead = match r.iter().position(|&x| x != 0) {
                        None => return false,
                        Some(i) => i,
                    };
                    match pivot_row[lead] {
                        Some(pr) => {
                            // basis rows are normalized to leading coefficient 1
                            let factor = r[lead] as u64;
                            for (x, &y) in r.iter_mut().zip(&rows[pr]) {
                                *x = ((*x as u64 + p * p - factor * y as u64) % p) as u32;
                            }
                        }
                        None => {
                            let inv = field.inverse(r[lead]) as u64;
                            for x in r.iter_mut() {
                                *x = (*x as u64 * inv % p) as u32;
                            }
                            pivot_row[lead] = Some(rows.len());
                            rows.push(r);
                            return true;
                        }
                    }
                }
            }
        }
    }
}

fn rank_of<'a>(field: PrimeField, cols: usize, rows: impl Iterator<Item = &'a SparseRow>) -> usize {
    if cols == 0 {
        return 0;
    }
    let mut red = Reducer::new(field, cols);
    for r in rows {
        red.insert(r);
    }
    red.rank()
}

/// Boundary data of one complex: faces per dimension and the rows of each
/// boundary map `∂_k : C_k → C_{k-1}` (one row per `k`-face).
struct ChainComplex {
    faces: Vec<Vec<Mask>>,
    boundary: Vec<Vec<SparseRow>>,
}

impl ChainComplex {
    fn new(c: &SimplicialComplex, field: PrimeField) -> Self {
        let d = match c.dimension() {
            Some(d) => d,
            None => return ChainComplex { faces: Vec::new(), boundary: Vec::new() },
        };
        let faces: Vec<Vec<Mask>> = (0..=d).map(|k| c.faces(k).to_vec()).collect();
        let mut boundary = vec![Vec::new()];
        for k in 1..=d {
            let lower = &faces[k - 1];
            let rows = faces[k]
                .iter()
                .map(|&f| {
                    bits(f)
                        .enumerate()
                        .map(|(i, v)| {
                            let col = lower.binary_search(&(f & !(1 << v))).expect("face closure");
                            (col, if i % 2 == 0 { 1 } else { field.neg_one() })
                        })
                        .collect()
                })
                .collect();
            boundary.push(rows);
        }
        ChainComplex { faces, boundary }
    }

    fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    fn boundary_rank(&self, field: PrimeField, k: usize) -> usize {
        if k == 0 || k >= self.faces.len() {
            return 0;
        }
        rank_of(field, self.faces[k - 1].len(), self.boundary[k].iter())
    }

    /// Rank of `∂_k` restricted to faces inside `w`.
    fn restricted_rank(&self, field: PrimeField, k: usize, w: Mask) -> usize {
        if k == 0 || k >= self.faces.len() {
            return 0;
        }
        let rows = self.faces[k].iter().zip(&self.boundary[k]).filter(|(&f, _)| f & !w == 0).map(|(_, r)| r);
        rank_of(field, self.faces[k - 1].len(), rows)
    }

    /// Rank of `∂_k` with every column indexed by a face inside `w` deleted.
    fn projected_rank(&self, field: PrimeField, k: usize, w: Mask) -> usize {
        if k == 0 || k >= self.faces.len() {
            return 0;
        }
        let lower = &self.faces[k - 1];
        let rows: Vec<SparseRow> = self.boundary[k]
            .iter()
            .map(|r| r.iter().copied().filter(|&(c, _)| lower[c] & !w != 0).collect())
            .collect();
        rank_of(field, lower.len(), rows.iter())
    }
}

pub fn betti(c: &SimplicialComplex, field: PrimeField) -> BettiVector {
    let cc = ChainComplex::new(c, field);
    let d = match cc.dim() {
        Some(d) => d,
        None => return BettiVector { values: Vec::new(), reduced: false },
    };
    let ranks: Vec<usize> = (0..=d + 1).map(|k| cc.boundary_rank(field, k)).collect();
    let values = (0..=d).map(|k| (cc.faces[k].len() - ranks[k] - ranks[k + 1]) as i64).collect();
    BettiVector { values, reduced: false }
}

/// Reduced Betti numbers; `(-1)` for the empty complex.
pub fn reduced_betti(c: &SimplicialComplex, field: PrimeField) -> BettiVector {
    let mut b = betti(c, field);
    b.reduced = true;
    if b.values.is_empty() {
        b.values.push(-1);
    } else {
        b.values[0] -= 1;
    }
    b
}

/// Whether `H_k(c[W]; F) → H_k(c; F)` is injective.
///
/// A `k`-chain supported on `W` is a cycle of `c[W]` exactly when it is a
/// cycle of `c`, so the kernel of the map is `(B_k(c) ∩ C_k(W)) / B_k(c[W])`.
/// The dimension of `B_k(c) ∩ C_k(W)` is `rank ∂_{k+1}` minus the rank of
/// `∂_{k+1}` with the columns of faces inside `W` deleted.
pub fn induced_map_injective(c: &SimplicialComplex, w: Mask, k: usize, field: PrimeField) -> Result<bool> {
    let cc = ChainComplex::new(c, field);
    let d = cc.dim().ok_or(Error::EmptyInput)?;
    if k > d {
        return Err(Error::DimensionOutOfRange { k, d });
    }
    if w & !c.vertices() != 0 {
        return Err(Error::InvalidSubset);
    }
    let full = cc.boundary_rank(field, k + 1);
    Ok(injective_with(&cc, field, w, k, full))
}

fn injective_with(cc: &ChainComplex, field: PrimeField, w: Mask, k: usize, full_rank: usize) -> bool {
    let inside = full_rank - cc.projected_rank(field, k + 1, w);
    inside == cc.restricted_rank(field, k + 1, w)
}

/// Tightness by the subset definition: every induced inclusion is injective
/// in every dimension. Subsets are tried by increasing size.
pub fn is_tight_exhaustive(c: &SimplicialComplex, field: PrimeField) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    let cc = ChainComplex::new(c, field);
    let d = cc.dim().unwrap();
    let full: Vec<usize> = (0..=d).map(|k| cc.boundary_rank(field, k + 1)).collect();
    let n = c.vertex_count();
    for size in 1..n {
        let subsets = subsets_of_size(c.vertices(), size);
        let ok = subsets
            .par_iter()
            .all(|&w| (0..=d).all(|k| injective_with(&cc, field, w, k, full[k])));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
