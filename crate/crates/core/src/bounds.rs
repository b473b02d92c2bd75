//! Exact arithmetic kernel: Pochhammer symbols, the odd-dimensional tightness
//! bound and its vertex-count table, cyclic polytope face numbers with the
//! Gale evenness oracle, average slicing formulas and the finite sweeps that
//! check the hypergeometric identities behind them.
//!
//! Binomial coefficients with a negative or out-of-range argument are zero
//! throughout, which makes every double sum safe to run over a rectangular
//! index box.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{bit, FVector, Mask, SimplicialComplex};
use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(int(p), int(q))
}

pub fn rat_int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// `p/q`, or a bare integer when `q = 1`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`.
pub fn pochhammer(a: &BigRational, m: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..m {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

pub fn pochhammer_int(a: i64, m: u32) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, i| acc * int(a + i))
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m as i64).fold(BigInt::one(), |acc, i| acc * int(i))
}

/// `C(n, k)` with the zero convention for negative or out-of-range arguments.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `C(a, m) = (-1)^m (-a)_m / m!`, defined for every integer `a`.
pub fn binomial_via_pochhammer(a: i64, m: u32) -> BigRational {
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let p = pochhammer(&BigRational::from_integer(int(-a)), m);
    p * BigRational::from_integer(int(sign)) / BigRational::from_integer(factorial(m))
}

/// Least integer not below `r`, by exact integer division.
pub fn ceil_rational(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    if rem.is_zero() {
        q
    } else {
        q + 1
    }
}

fn check_bound_args(ell: u32, n: u32) -> Result<()> {
    if ell == 0 {
        return Err(Error::OutOfRange("ell must be positive".into()));
    }
    if n < 2 * ell + 3 {
        return Err(Error::OutOfRange(format!(
            "n = {n} is below the simplex boundary minimum {} for ell = {ell}",
            2 * ell + 3
        )));
    }
    Ok(())
}

/// The per-`k` lower bound `(-1)^{ℓ+1} (1-k)_{ℓ+1} (1-n+k)_{ℓ+1} / ((ℓ+1)! (1-n)_{ℓ+1})`
/// on `β_ℓ` coming from slicings that separate `k` vertices.
pub fn bound_for_split(ell: u32, n: u32, k: u32) -> Result<BigRational> {
    check_bound_args(ell, n)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let m = ell + 1;
    let (n, k) = (n as i64, k as i64);
    let num = pochhammer_int(1 - k, m) * pochhammer_int(1 - n + k, m);
    let den = factorial(m) * pochhammer_int(1 - n, m);
    let sign = if (ell + 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(BigRational::new(num * sign, den))
}

/// Exact rational bound before taking the ceiling (the split `k = ⌊n/2⌋`).
pub fn tightness_bound_exact(ell: u32, n: u32) -> Result<BigRational> {
    bound_for_split(ell, n, n / 2)
}

/// Least `β_ℓ` a tight `(ℓ-1)`-connected `(2ℓ+1)`-manifold on `n` vertices can have.
pub fn tightness_bound(ell: u32, n: u32) -> Result<BigInt> {
    Ok(ceil_rational(&tightness_bound_exact(ell, n)?))
}

/// Largest vertex count whose tightness bound does not exceed `beta`.
pub fn max_vertices(ell: u32, beta: u64) -> Result<u32> {
    let beta = BigInt::from(beta);
    let mut n = 2 * ell + 3;
    if tightness_bound(ell, n)? > beta {
        return Err(Error::OutOfRange(format!("no admissible vertex count for ell = {ell}")));
    }
    while tightness_bound(ell, n + 1)? <= beta {
        n += 1;
    }
    Ok(n)
}

/// Known lower bounds on the number of vertices of a combinatorial
/// 3-manifold with `β_1 = 0, ..., 12`. Reference data, not derived here.
pub const THREE_MANIFOLD_LOWER_BOUNDS: [u32; 13] = [5, 9, 11, 13, 14, 15, 16, 17, 18, 18, 19, 20, 20];

/// Maximal vertex counts, `rows[beta][ell - 1]`, for `beta = 0..=beta_max` and
/// odd dimensions `d = 3, 5, ..., 2 ell_max + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub ell_max: u32,
    pub rows: Vec<Vec<u32>>,
}

pub fn bound_table(ell_max: u32, beta_max: u64) -> Result<BoundTable> {
    let rows = (0..=beta_max)
        .map(|b| (1..=ell_max).map(|ell| max_vertices(ell, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { ell_max, rows })
}

impl BoundTable {
    /// TSV with a header row; every entry explicit.
    pub fn to_tsv(&self) -> String {
        self.render(false)
    }

    /// TSV where an entry equal to the one above it is printed as `"`.
    pub fn to_tsv_ditto(&self) -> String {
        self.render(true)
    }

    fn render(&self, ditto: bool) -> String {
        let mut out = String::from("beta");
        for ell in 1..=self.ell_max {
            out.push_str(&format!("\td={}", 2 * ell + 1));
        }
        out.push('\n');
        for (b, row) in self.rows.iter().enumerate() {
            out.push_str(&b.to_string());
            for (j, v) in row.iter().enumerate() {
                if ditto && b > 0 && self.rows[b - 1][j] == *v {
                    out.push_str("\t\"");
                } else {
                    out.push_str(&format!("\t{v}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Face numbers of the boundary of the cyclic `(2ℓ+2)`-polytope on `n`
/// vertices, from the closed formula `f_{i-1} = n/(n-i) Σ_j C(n-j-1, i-j) C(n-i, 2j-i)`.
pub fn cyclic_fvector(ell: u32, n: u32) -> Result<FVector> {
    check_bound_args(ell, n)?;
    let n = n as i64;
    let mut f = Vec::new();
    for i in 1..=(2 * ell as i64 + 2) {
        let mut sum = BigInt::zero();
        for j in 0..=(ell as i64 + 1) {
            sum += binomial(n - j - 1, i - j) * binomial(n - i, 2 * j - i);
        }
        let v = BigRational::new(sum * n, int(n - i));
        assert!(v.is_integer(), "cyclic face number must be integral");
        f.push(v.to_integer().to_u64().expect("face number fits in u64"));
    }
    Ok(FVector(f))
}

/// Boundary complex of the cyclic `d`-polytope (`d` even) on `n` vertices,
/// with facets the `d`-subsets satisfying Gale's evenness condition.
pub fn gale_cyclic_boundary(d: u32, n: u32) -> Result<SimplicialComplex> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("dimension {d} must be positive and even")));
    }
    if n < d + 1 {
        return Err(Error::OutOfRange(format!("need at least {} vertices", d + 1)));
    }
    if n as usize > crate::complex::MAX_VERTICES {
        return Err(Error::TooManyVertices(n as usize));
    }
    let facets: Vec<Mask> = crate::complex::subsets_of_size(crate::complex::full_mask(n as usize), d as usize)
        .into_iter()
        .filter(|&s| satisfies_gale_evenness(s, n))
        .collect();
    Ok(SimplicialComplex::from_masks(facets))
}

fn satisfies_gale_evenness(s: Mask, n: u32) -> bool {
    let outside: Vec<u32> = (0..n).filter(|&v| s & bit(v as usize) == 0).collect();
    outside.windows(2).all(|w| {
        let between = (w[0] + 1..w[1]).filter(|&v| s & bit(v as usize) != 0).count();
        between % 2 == 0
    })
}

fn check_split(n: u64, k: u64) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// Average number of `i`-faces over the slicings separating `k` of `n`
/// vertices: `f_{i+1} (1 - (C(k,i+2) + C(n-k,i+2)) / C(n,i+2))`.
pub fn avg_f_formula(f: &FVector, n: u64, k: u64, i: usize) -> Result<BigRational> {
    check_split(n, k)?;
    let (n, k, i) = (n as i64, k as i64, i as i64);
    let whole = binomial(n, i + 2);
    if whole.is_zero() {
        return Ok(BigRational::zero());
    }
    let fi = rat_int(&BigInt::from(f.get(i as usize + 1)));
    let part = BigRational::new(binomial(k, i + 2) + binomial(n - k, i + 2), whole);
    Ok(fi * (BigRational::one() - part))
}

/// Average Euler characteristic of those slicings,
/// `Σ_i (-1)^i f_i / C(n,i+1) (C(k,i+1) + C(n-k,i+1))`. Valid for complexes of
/// vanishing Euler characteristic (closed odd-dimensional manifolds).
pub fn avg_chi_formula(f: &FVector, n: u64, k: u64) -> Result<BigRational> {
    check_split(n, k)?;
    let (n, k) = (n as i64, k as i64);
    let mut acc = BigRational::zero();
    for (i, &fi) in f.0.iter().enumerate() {
        let i = i as i64;
        let whole = binomial(n, i + 1);
        if whole.is_zero() {
            continue;
        }
        let term = BigRational::new(
            BigInt::from(fi) * (binomial(k, i + 1) + binomial(n - k, i + 1)),
            whole,
        );
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `s_{i,j}(k,n) = (-1)^i C(k,i) C(n-1,i)^{-1} C(n-j-1,i-j) C(n-i,2j-i)`.
///
/// The quotient `C(n-j-1,i-j) / C(n-1,i)` is evaluated in its reduced form
/// `i^(j) / (n-1)^(j)` (falling factorials). This agrees with the literal
/// quotient for `i <= n-1` and removes the `0/0` that otherwise appears at
/// `i >= n`. `None` when `(n-1)^(j)` vanishes.
pub fn s_term(i: i64, j: i64, k: i64, n: i64) -> Option<BigRational> {
    if i < j || i > 2 * j {
        return Some(BigRational::zero());
    }
    let num = binomial(k, i) * binomial(n - i, 2 * j - i) * falling(i, j);
    if num.is_zero() {
        return Some(BigRational::zero());
    }
    let den = falling(n - 1, j);
    if den.is_zero() {
        return None;
    }
    let sign = if i % 2 == 0 { 1 } else { -1 };
    Some(BigRational::new(num * sign, den))
}

fn falling(a: i64, m: i64) -> BigInt {
    (0..m).map(|t| BigInt::from(a - t)).product()
}

fn sum_terms(mut terms: impl Iterator<Item = Option<BigRational>>) -> Option<BigRational> {
    terms.try_fold(BigRational::zero(), |acc, t| Some(acc + t?))
}

/// Row sum `Σ_i s_{i,j} = (-1)^j C(k,j) C(n-k,j) / C(n-1,j)` for `0 <= j <= n-1`.
pub fn verify_identity_row(j: i64, k: i64, n: i64) -> bool {
    let lhs = sum_terms((0..=2 * j).map(|i| s_term(i, j, k, n)));
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let rhs = BigRational::new(binomial(k, j) * binomial(n - k, j) * sign, binomial(n - 1, j));
    lhs == Some(rhs)
}

/// Column sum `Σ_j s_{i,j} = (-1)^i C(k,i)` for `0 <= i <= n-1`.
pub fn verify_identity_col(i: i64, k: i64, n: i64) -> bool {
    let lhs = sum_terms((0..=i).map(|j| s_term(i, j, k, n)));
    let sign = if i % 2 == 0 { 1 } else { -1 };
    lhs == Some(rat_int(&(binomial(k, i) * sign)))
}

/// `Σ_{i<=2ℓ+2} Σ_{j<=ℓ+1} s_{i,j}(k,n) = (1-k)_{ℓ+1} (1-n+k)_{ℓ+1} / ((ℓ+1)! (1-n)_{ℓ+1})`
/// for `n >= 2ℓ+3`.
pub fn verify_double_sum(ell: u32, k: i64, n: i64) -> bool {
    let m = ell as i64 + 1;
    let lhs = sum_terms((0..=2 * m).flat_map(|i| (0..=m).map(move |j| s_term(i, j, k, n))));
    let rhs = BigRational::new(
        pochhammer_int(1 - k, m as u32) * pochhammer_int(1 - n + k, m as u32),
        factorial(m as u32) * pochhammer_int(1 - n, m as u32),
    );
    lhs == Some(rhs)
}

/// `Σ_{j=1}^{i+1} C(k,j) C(n-k,i+2-j) = C(n,i+2) - C(k,i+2) - C(n-k,i+2)`.
pub fn verify_vandermonde_cut(i: i64, k: i64, n: i64) -> bool {
    let lhs: BigInt = (1..=i + 1).map(|j| binomial(k, j) * binomial(n - k, i + 2 - j)).sum();
    lhs == binomial(n, i + 2) - binomial(k, i + 2) - binomial(n - k, i + 2)
}

/// `Σ_j C(n-j-1, i-j) C(n-i, 2j-i) = C(n-1, i)`.
pub fn verify_cyclic_sum(i: i64, n: i64) -> bool {
    let lhs: BigInt = (0..=i).map(|j| binomial(n - j - 1, i - j) * binomial(n - i, 2 * j - i)).sum();
    lhs == binomial(n - 1, i)
}

/// Outcome of an identity sweep: number of instances checked and the failures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} instances, {} failures", self.checked, self.failures.len())
    }
}

/// Per-identity sweep results over `ℓ <= ell_max`, `n <= n_max`, `0 <= k <= n`.
#[derive(Debug, Clone, Default)]
pub struct IdentitySweep {
    pub row_sums: SweepReport,
    pub column_sums: SweepReport,
    pub double_sum: SweepReport,
    pub vandermonde_cut: SweepReport,
    pub cyclic_sum: SweepReport,
}

impl IdentitySweep {
    pub fn passed(&self) -> bool {
        [&self.row_sums, &self.column_sums, &self.double_sum, &self.vandermonde_cut, &self.cyclic_sum]
            .iter()
            .all(|r| r.passed())
    }
}

pub fn sweep_identities(ell_max: u32, n_max: i64) -> IdentitySweep {
    let mut out = IdentitySweep::default();
    let jmax = ell_max as i64 + 1;
    let imax = 2 * jmax;
    for n in 2..=n_max {
        for k in 0..=n {
            for j in 0..=jmax.min(n - 1) {
                out.row_sums.record(verify_identity_row(j, k, n), || format!("row j={j} k={k} n={n}"));
            }
            for i in 0..=imax.min(n - 1) {
                out.column_sums.record(verify_identity_col(i, k, n), || format!("col i={i} k={k} n={n}"));
            }
            for i in 0..=n {
                out.vandermonde_cut
                    .record(verify_vandermonde_cut(i, k, n), || format!("cut i={i} k={k} n={n}"));
            }
            for ell in 1..=ell_max {
                if n >= 2 * ell as i64 + 3 {
                    out.double_sum
                        .record(verify_double_sum(ell, k, n), || format!("double ell={ell} k={k} n={n}"));
                }
            }
        }
        for ell in 1..=ell_max {
            if n >= 2 * ell as i64 + 3 {
                for i in 0..=ell as i64 + 1 {
                    out.cyclic_sum.record(verify_cyclic_sum(i, n), || format!("cyclic i={i} n={n}"));
                }
            }
        }
    }
    out
}

/// Largest absolute value of a finite rational, for diagnostics.
pub fn abs_rational(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(-4, 1), 2), rat(12, 1));
        assert_eq!(pochhammer(&rat(5, 3), 0), rat(1, 1));
        assert_eq!(pochhammer_int(-4, 2), int(12));
    }

    #[test]
    fn pochhammer_duplication() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let a = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
            let m: u32 = rng.gen_range(0..9);
            let two = rat(2, 1);
            let lhs = pochhammer(&a, 2 * m);
            let rhs = BigRational::from_integer(int(4).pow(m))
                * pochhammer(&(&a / &two), m)
                * pochhammer(&((&a + BigRational::one()) / &two), m);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn binomial_conventions() {
        for a in 0..20 {
            for m in 0..20u32 {
                assert_eq!(binomial_via_pochhammer(a, m), rat_int(&binomial(a, m as i64)), "{a} {m}");
                assert_eq!(binomial_u64(a as u64, m as u64), binomial(a, m as i64).to_u64().unwrap());
            }
        }
        assert_eq!(binomial(-3, 2), int(0));
        assert_eq!(binomial(3, -1), int(0));
        // the generalized value for a negative upper argument is not zero
        assert_eq!(binomial_via_pochhammer(-3, 2), rat(6, 1));
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_rational(&rat(4, 3)), int(2));
        assert_eq!(ceil_rational(&rat(-4, 3)), int(-1));
        assert_eq!(ceil_rational(&rat(6, 3)), int(2));
        assert_eq!(ceil_rational(&rat(0, 3)), int(0));
    }

    #[test]
    fn tightness_bound_values() {
        assert_eq!(tightness_bound_exact(1, 10).unwrap(), rat(1, 1));
        assert_eq!(tightness_bound(1, 10).unwrap(), int(1));
        assert_eq!(tightness_bound_exact(1, 11).unwrap(), rat(4, 3));
        assert_eq!(tightness_bound(1, 11).unwrap(), int(2));
        assert_eq!(tightness_bound(2, 13).unwrap(), int(1));
        assert_eq!(tightness_bound(1, 5).unwrap(), int(0));
        assert!(tightness_bound(1, 4).is_err());
        assert!(tightness_bound(0, 9).is_err());
    }

    #[test]
    fn max_vertex_values() {
        assert_eq!(max_vertices(1, 2).unwrap(), 12);
        assert_eq!(max_vertices(1, 0).unwrap(), 5);
        assert_eq!(max_vertices(7, 0).unwrap(), 17);
        assert_eq!(max_vertices(1, 10).unwrap(), 22);
    }

    #[test]
    fn bound_is_monotone_in_n() {
        for ell in 1..=7 {
            let mut prev = tightness_bound_exact(ell, 2 * ell + 3).unwrap();
            for n in 2 * ell + 4..=60 {
                let cur = tightness_bound_exact(ell, n).unwrap();
                assert!(cur >= prev, "ell={ell} n={n}");
                prev = cur;
            }
        }
    }

    #[test]
    fn middle_split_is_most_restrictive() {
        for ell in 1..=5 {
            for n in 2 * ell + 3..=40 {
                let mid = bound_for_split(ell, n, n / 2).unwrap();
                for k in 1..=n / 2 {
                    assert!(bound_for_split(ell, n, k).unwrap() <= mid, "ell={ell} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn cyclic_formula_small() {
        assert_eq!(cyclic_fvector(1, 9).unwrap(), FVector(vec![9, 36, 54, 27]));
        let c = gale_cyclic_boundary(4, 9).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![9, 36, 54, 27]));
        assert_eq!(cyclic_fvector(2, 13).unwrap(), gale_cyclic_boundary(6, 13).unwrap().f_vector());
        assert!(gale_cyclic_boundary(5, 9).is_err());
    }

    #[test]
    fn average_formulas() {
        let f = FVector(vec![5, 10, 10, 5]);
        assert_eq!(avg_chi_formula(&f, 5, 2).unwrap(), rat(2, 1));
        assert_eq!(avg_f_formula(&f, 5, 2, 0).unwrap(), rat(6, 1));
        assert_eq!(avg_f_formula(&f, 5, 2, 1).unwrap(), rat(9, 1));
        assert_eq!(avg_f_formula(&f, 5, 2, 2).unwrap(), rat(5, 1));
        assert!(avg_chi_formula(&f, 5, 0).is_err());
        let c9 = cyclic_fvector(1, 9).unwrap();
        for k in 1..9 {
            assert_eq!(avg_chi_formula(&c9, 9, k).unwrap(), avg_chi_formula(&c9, 9, 9 - k).unwrap());
        }
        assert_eq!(avg_chi_formula(&c9, 9, 1).unwrap(), rat(2, 1));
    }

    #[test]
    fn identity_instances() {
        assert_eq!(s_term(0, 0, 5, 9), Some(rat(1, 1)));
        let row: BigRational = (2..=4).map(|i| s_term(i, 2, 3, 9).unwrap()).sum();
        assert_eq!(row, rat(45, 28));
        assert!(verify_identity_row(0, 4, 9));
        assert!(verify_identity_row(2, 3, 9));
        assert!(verify_identity_col(3, 4, 9));
        assert!(verify_double_sum(1, 4, 9));
        assert!(verify_vandermonde_cut(1, 3, 7));
        assert!(verify_cyclic_sum(2, 9));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(-9, 70)), "-9/70");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational("-27/140"), Some(rat(-27, 140)));
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn ditto_rendering() {
        let t = bound_table(3, 4).unwrap();
        let plain = t.to_tsv();
        assert!(plain.starts_with("beta\td=3\td=5\td=7\n0\t5\t7\t9\n"));
        let ditto = t.to_tsv_ditto();
        assert!(ditto.contains('"'));
    }
}
