//! Counting over `F_2`: group orders, the symmetric-matrix rank census, the
//! bounds used to control graph counts, and the scaled average minimum rank.
//!
//! Everything asserted here is computed in exact arbitrary-precision
//! arithmetic (`BigUint` / `BigRational`); floating point appears only in
//! Monte Carlo summaries, never in an asserted comparison. Each closed-form
//! count has a brute-force oracle next to it, and the library's own tests
//! hold the two sides equal on every instance small enough to enumerate.
//!
//! Cast of characters, all over `F_2`:
//!
//! * `C(n) = prod_{i=1}^{floor((n-1)/2)} (1 - 2^{-2i})` and the orthogonal
//!   group order `O(n) = C(n) * 2^{n(n-1)/2}` — [`orth_order`].
//! * `N(n, k) = (2^n - 1)(2^n - 2) ... (2^n - 2^{k-1})`, the number of
//!   linearly independent `k`-tuples in `F_2^n` — [`n_rank_k_count`].
//! * `|Sym(2n)| = O(2n + 1)`, the symplectic group order —
//!   [`symplectic_order`].
//! * `theta(n, k)`, the number of symmetric `n x n` matrices of rank `k`:
//!   `N(n,k)/O(k)`, plus `N(n,k)/O(k+1)` when `k` is even — [`theta`].
//! * The graph-count bound `16 * 2^{(n-(k-1)/2)k}` on the number of graphs
//!   with minimum rank at most `k` — [`mr_le_k_graph_bound`].
//! * `alpha_n = (sum_G mr(F_2, G)) / (n * 2^{C(n,2)})`, the scaled average
//!   minimum rank over all labeled graphs — [`alpha_exact`] and
//!   [`alpha_montecarlo`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::f2;
use crate::graph::{enumerate_labeled_graphs, random_graph, GraphError};
use crate::minrank::{f2_minrank, MinRankError};

/// Brute-force census of symmetric matrices tops out here (`2^15` at n = 5).
pub const BRUTE_SYMMETRIC_MAX: usize = 5;
/// Brute-force orthogonal enumeration tops out here (`2^16` at n = 4).
pub const BRUTE_ORTHOGONAL_MAX: usize = 4;
/// Brute-force symplectic enumeration handles these dimensions.
pub const BRUTE_SYMPLECTIC_DIMS: [usize; 2] = [2, 4];
/// Exact alpha enumerates all `2^{n(n-1)/2}` graphs; 6 gives `2^15`.
pub const ALPHA_EXACT_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    /// Symplectic groups live in even dimension.
    OddDimension { dim: usize },
    /// A census division left a remainder: the formulas guarantee exactness,
    /// so this signals an implementation bug, surfaced loudly.
    NonIntegralDivision { n: usize, k: usize },
    /// A brute-force enumeration was asked to exceed its instance limit.
    TooLarge { what: &'static str, n: usize, max: usize },
    /// An underlying minimum-rank computation failed.
    Solver(String),
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::OddDimension { dim } => {
                write!(f, "symplectic dimension must be even, got {dim}")
            }
            CensusError::NonIntegralDivision { n, k } => {
                write!(f, "census division for (n, k) = ({n}, {k}) is not exact")
            }
            CensusError::TooLarge { what, n, max } => {
                write!(f, "{what} supports at most {max}, got {n}")
            }
            CensusError::Solver(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CensusError {}

impl From<MinRankError> for CensusError {
    fn from(e: MinRankError) -> Self {
        CensusError::Solver(e.to_string())
    }
}

impl From<GraphError> for CensusError {
    fn from(e: GraphError) -> Self {
        CensusError::Solver(e.to_string())
    }
}

// ============================================================================
// Closed forms
// ============================================================================

/// Exact `2^e` for a signed exponent.
pub fn pow2_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// `C(n) = prod_{i=1}^{floor((n-1)/2)} (1 - 2^{-2i})`, with `C(1) = C(2) = 1`.
pub fn c_factor(n: usize) -> BigRational {
    assert!(n >= 1, "C(n) needs n >= 1");
    let mut prod = BigRational::one();
    for i in 1..=(n - 1) / 2 {
        let denom = BigInt::one() << (2 * i);
        prod *= BigRational::new(&denom - BigInt::one(), denom);
    }
    prod
}

/// Order of the orthogonal group of `n x n` matrices over `F_2`:
/// `O(n) = C(n) * 2^{n(n-1)/2}`, always an integer.
pub fn orth_order(n: usize) -> BigUint {
    assert!(n >= 1, "O(n) needs n >= 1");
    let value = c_factor(n) * pow2_rational((n * (n - 1) / 2) as i64);
    assert!(value.is_integer(), "orthogonal order came out non-integral");
    value
        .to_integer()
        .to_biguint()
        .expect("group orders are positive")
}

/// Number of `k`-tuples of linearly independent vectors in `F_2^n`,
/// equivalently `n x k` matrices of rank `k`:
/// `N(n, k) = (2^n - 1)(2^n - 2) ... (2^n - 2^{k-1})`, `N(n, 0) = 1`.
pub fn n_rank_k_count(n: usize, k: usize) -> BigUint {
    assert!(k <= n, "N(n, k) needs k <= n");
    let two_n = BigUint::one() << n;
    let mut prod = BigUint::one();
    for i in 0..k {
        prod *= &two_n - (BigUint::one() << i);
    }
    prod
}

/// Order of the symplectic group in (even) dimension `dim` over `F_2`,
/// which equals `O(dim + 1)`.
pub fn symplectic_order(dim: usize) -> Result<BigUint, CensusError> {
    if dim == 0 || dim % 2 != 0 {
        return Err(CensusError::OddDimension { dim });
    }
    Ok(orth_order(dim + 1))
}

/// Number of symmetric `n x n` matrices over `F_2` of rank exactly `k`:
/// `N(n,k)/O(k)` for odd `k`, `N(n,k)/O(k) + N(n,k)/O(k+1)` for even `k > 0`,
/// and `1` for `k = 0` (the zero matrix).
///
/// The two terms count the matrices whose quadratic form is non-alternating
/// (factoring through a Gram product) and, for even rank, the alternating
/// ones.
pub fn theta(n: usize, k: usize) -> Result<BigUint, CensusError> {
    assert!(k <= n, "theta(n, k) needs k <= n");
    if k == 0 {
        return Ok(BigUint::one());
    }
    let count = n_rank_k_count(n, k);
    let exact_div = |num: &BigUint, den: BigUint| -> Result<BigUint, CensusError> {
        let (quot, rem) = num.div_rem(&den);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(CensusError::NonIntegralDivision { n, k })
        }
    };
    let mut total = exact_div(&count, orth_order(k))?;
    if k % 2 == 0 {
        total += exact_div(&count, orth_order(k + 1))?;
    }
    Ok(total)
}

/// Total number of symmetric `n x n` matrices over `F_2`: `2^{n(n+1)/2}`.
pub fn symmetric_total(n: usize) -> BigUint {
    BigUint::one() << (n * (n + 1) / 2)
}

/// Total number of labeled graphs on `n` vertices: `2^{n(n-1)/2}`.
pub fn graph_total(n: usize) -> BigUint {
    BigUint::one() << (n * (n - 1) / 2)
}

// ============================================================================
// Bounds
// ============================================================================

/// The doubled exponent `2e = (2n - k + 1)k` of the rank-census bounds
/// `2^{e-2} < theta(n, k) < 2^{e+3}`. `(2n - k + 1)k` is always even, so `e`
/// itself is integral, but comparisons are still done on doubled exponents
/// (squared quantities) to keep the half-power convention explicit.
pub fn theta_bound_doubled_exponent(n: usize, k: usize) -> u64 {
    ((2 * n - k + 1) * k) as u64
}

/// Checks the strict bounds `2^{e-2} < theta(n, k) < 2^{e+3}` with
/// `e = (n - (k-1)/2)k`, comparing `theta^2` against `2^{2e -/+ ...}` so only
/// integer powers of two are ever formed; a negative doubled exponent makes
/// the lower bound trivially true.
pub fn theta_bounds_hold(n: usize, k: usize) -> Result<bool, CensusError> {
    let th = theta(n, k)?;
    let th_sq = &th * &th;
    let e2 = theta_bound_doubled_exponent(n, k);
    let lower_ok = if e2 < 4 {
        !th.is_zero()
    } else {
        th_sq > (BigUint::one() << (e2 - 4))
    };
    let upper_ok = th_sq < (BigUint::one() << (e2 + 6));
    Ok(lower_ok && upper_ok)
}

/// The rank-census bounds as exact rationals `(2^{e-2}, 2^{e+3})`.
pub fn theta_bound_values(n: usize, k: usize) -> (BigRational, BigRational) {
    let e = (theta_bound_doubled_exponent(n, k) / 2) as i64;
    (pow2_rational(e - 2), pow2_rational(e + 3))
}

/// `1 >= C(n) > 1/4` and `2^{nk} > N(n, k) > 2^{nk-2}` for `1 <= k <= n`.
pub fn count_bounds_hold(n: usize, k: usize) -> bool {
    let c = c_factor(n);
    let c_ok = c <= BigRational::one() && c > pow2_rational(-2);
    let count = n_rank_k_count(n, k);
    let nk = n * k;
    // The lower comparison is against 2^{nk-2}, which for nk < 2 is a proper
    // fraction and trivially below the (integral, >= 1) count.
    let lower_ok = nk < 2 || count > (BigUint::one() << (nk - 2));
    let n_ok = (BigUint::one() << nk) > count && lower_ok;
    c_ok && n_ok
}

/// Partial product `prod_{j=1}^{n-1} (1 - 2^{-j})`, returned together with
/// its limiting lower bound `1/4`. The product is strictly decreasing in `n`
/// and stays strictly inside `(1/4, 1)`.
pub fn product_bound_check(n: usize) -> (BigRational, BigRational) {
    assert!(n >= 2, "the partial product starts at n = 2");
    let mut prod = BigRational::one();
    for j in 1..n {
        let denom = BigInt::one() << j;
        prod *= BigRational::new(&denom - BigInt::one(), denom);
    }
    let quarter = pow2_rational(-2);
    assert!(prod > quarter && prod < BigRational::one());
    (quarter, prod)
}

/// Upper bound `16 * 2^{(n-(k-1)/2)k}` on the number of labeled graphs on
/// `n` vertices with minimum rank at most `k` over `F_2`. The exponent
/// `(2n-k+1)k/2` is always integral.
pub fn mr_le_k_graph_bound(n: usize, k: usize) -> BigUint {
    assert!((1..=n).contains(&k), "bound needs 1 <= k <= n");
    let e2 = theta_bound_doubled_exponent(n, k);
    debug_assert!(e2 % 2 == 0);
    BigUint::one() << (e2 / 2 + 4)
}

// ============================================================================
// Brute-force oracles
// ============================================================================

/// Counts symmetric `n x n` matrices over `F_2` by rank via full enumeration.
/// Returns counts indexed by rank `0..=n`.
pub fn brute_symmetric_rank_census(n: usize) -> Result<Vec<u64>, CensusError> {
    if n > BRUTE_SYMMETRIC_MAX {
        return Err(CensusError::TooLarge {
            what: "symmetric rank census",
            n,
            max: BRUTE_SYMMETRIC_MAX,
        });
    }
    // Bits of `m` fill the upper triangle (diagonal included) row by row.
    let bits = n * (n + 1) / 2;
    let mut counts = vec![0u64; n + 1];
    let mut rows = vec![0u64; n];
    for m in 0u64..1 << bits {
        rows.iter_mut().for_each(|r| *r = 0);
        let mut t = 0;
        for i in 0..n {
            for j in i..n {
                if m >> t & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                t += 1;
            }
        }
        counts[f2::rank_in_place(&mut rows)] += 1;
    }
    Ok(counts)
}

/// `A * B` for bit-row matrices (row `i` of the product is the XOR of the
/// rows of `B` selected by row `i` of `A`).
fn bit_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|&row| {
            let mut acc = 0u64;
            let mut bits = row;
            while bits != 0 {
                acc ^= b[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            acc
        })
        .collect()
}

fn bit_transpose(a: &[u64], n: usize) -> Vec<u64> {
    (0..n)
        .map(|j| {
            a.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &row)| acc | (row >> j & 1) << i)
        })
        .collect()
}

fn unpack_square(mask: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|i| (mask >> (i * n)) & ((1u64 << n) - 1))
        .collect()
}

/// Counts `n x n` matrices `Q` over `F_2` with `Q Q^T = I` by enumeration.
pub fn brute_orthogonal_count(n: usize) -> Result<u64, CensusError> {
    if n == 0 || n > BRUTE_ORTHOGONAL_MAX {
        return Err(CensusError::TooLarge {
            what: "orthogonal enumeration",
            n,
            max: BRUTE_ORTHOGONAL_MAX,
        });
    }
    let mut count = 0u64;
    for mask in 0u64..1 << (n * n) {
        let rows = unpack_square(mask, n);
        let orthogonal = (0..n).all(|i| {
            (0..n).all(|j| ((rows[i] & rows[j]).count_ones() & 1 == 1) == (i == j))
        });
        count += u64::from(orthogonal);
    }
    Ok(count)
}

/// Counts `dim x dim` matrices `T` over `F_2` with `T^T J T = J`, where `J`
/// is the block-diagonal sum of `[[0,1],[1,0]]` blocks, by enumeration.
pub fn brute_symplectic_count(dim: usize) -> Result<u64, CensusError> {
    if !BRUTE_SYMPLECTIC_DIMS.contains(&dim) {
        return Err(CensusError::TooLarge {
            what: "symplectic enumeration",
            n: dim,
            max: BRUTE_SYMPLECTIC_DIMS[1],
        });
    }
    let j: Vec<u64> = (0..dim).map(|i| 1u64 << (i ^ 1)).collect();
    let mut count = 0u64;
    for mask in 0u64..1 << (dim * dim) {
        let t = unpack_square(mask, dim);
        let tt = bit_transpose(&t, dim);
        let prod = bit_mul(&bit_mul(&tt, &j), &t);
        count += u64::from(prod == j);
    }
    Ok(count)
}

/// Counts `n x k` matrices over `F_2` of rank `k` by enumeration.
pub fn brute_rank_k_matrix_count(n: usize, k: usize) -> Result<u64, CensusError> {
    if n * k > 16 {
        return Err(CensusError::TooLarge { what: "rank-k matrix enumeration", n: n * k, max: 16 });
    }
    let mut count = 0u64;
    let mut rows = vec![0u64; n];
    for mask in 0u64..1 << (n * k) {
        for (i, row) in rows.iter_mut().enumerate() {
            *row = (mask >> (i * k)) & ((1u64 << k) - 1);
        }
        count += u64::from(f2::rank_in_place(&mut rows) == k);
    }
    Ok(count)
}

// ============================================================================
// Minimum-rank distribution and the scaled average
// ============================================================================

/// Counts labeled graphs on `n` vertices by `mr(F_2, G)`, indexed `0..=n`,
/// by full enumeration.
pub fn mr_distribution(n: usize) -> Result<Vec<u64>, CensusError> {
    if n > ALPHA_EXACT_MAX {
        return Err(CensusError::TooLarge {
            what: "graph enumeration",
            n,
            max: ALPHA_EXACT_MAX,
        });
    }
    let mut counts = vec![0u64; n + 1];
    for g in enumerate_labeled_graphs(n)? {
        counts[f2_minrank(&g)?.mr] += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    Exact,
    MonteCarlo,
}

/// The scaled average minimum rank `alpha_n(F_2)`, exactly or estimated.
#[derive(Debug, Clone)]
pub struct AlphaReport {
    pub n: usize,
    pub mode: AlphaMode,
    /// Present in exact mode.
    pub exact: Option<BigRational>,
    /// Numeric value of the average in both modes.
    pub estimate: f64,
    /// Monte Carlo metadata.
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub stderr: Option<f64>,
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Good to f64 precision for every magnitude used here.
    let scale = BigInt::one() << 64;
    let scaled: BigInt = (r.numer() * &scale) / r.denom();
    let mut value = 0.0;
    let mut digits = scaled.abs().to_biguint().expect("abs is nonnegative");
    let mut place = 0u32;
    while !digits.is_zero() {
        let low: BigUint = &digits & BigUint::from(u32::MAX);
        value += f64::from(u32::try_from(low).expect("masked to 32 bits"))
            * 2f64.powi(place as i32);
        digits >>= 32;
        place += 32;
    }
    if r.is_negative() {
        value = -value;
    }
    value / 2f64.powi(64)
}

/// Exact `alpha_n(F_2) = (sum_G mr(F_2, G)) / (n * 2^{n(n-1)/2})` over all
/// labeled graphs, via [`mr_distribution`]. Satisfies
/// `0 <= alpha_n <= (n-1)/n`.
pub fn alpha_exact(n: usize) -> Result<AlphaReport, CensusError> {
    assert!(n >= 1, "alpha needs n >= 1");
    let counts = mr_distribution(n)?;
    let total_rank: BigUint = counts
        .iter()
        .enumerate()
        .map(|(r, &c)| BigUint::from(r) * BigUint::from(c))
        .sum();
    let denom = BigUint::from(n) * graph_total(n);
    let alpha = BigRational::new(total_rank.into(), denom.into());
    assert!(alpha >= BigRational::zero());
    assert!(
        alpha <= BigRational::new(BigInt::from(n as i64 - 1), BigInt::from(n as i64)).max(BigRational::zero()),
        "alpha exceeded (n-1)/n"
    );
    Ok(AlphaReport {
        n,
        mode: AlphaMode::Exact,
        estimate: rational_to_f64(&alpha),
        exact: Some(alpha),
        samples: None,
        seed: None,
        stderr: None,
    })
}

/// Monte Carlo estimate of `alpha_n(F_2)`: the mean of `mr(F_2, G)/n` over
/// `samples` uniform labeled graphs. Sample `i` is drawn from the seeded
/// generator stream `seed + i` (wrapping), so estimates are reproducible and
/// independent of any execution order.
pub fn alpha_montecarlo(n: usize, samples: u64, seed: u64) -> Result<AlphaReport, CensusError> {
    assert!(n >= 1, "alpha needs n >= 1");
    assert!(samples >= 1, "at least one sample");
    let mut values = Vec::with_capacity(samples as usize);
    for i in 0..samples {
        let g = random_graph(n, seed.wrapping_add(i));
        values.push(f2_minrank(&g)?.mr as f64 / n as f64);
    }
    let mean = values.iter().sum::<f64>() / samples as f64;
    let stderr = (samples > 1).then(|| {
        let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
        (var / samples as f64).sqrt()
    });
    Ok(AlphaReport {
        n,
        mode: AlphaMode::MonteCarlo,
        exact: None,
        estimate: mean,
        samples: Some(samples),
        seed: Some(seed),
        stderr,
    })
}

// ============================================================================
// Assembled report
// ============================================================================

/// One rank level of the census table.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub k: usize,
    pub theta: BigUint,
    /// Filled when brute-force verification was requested and feasible.
    pub theta_brute: Option<u64>,
    pub lower: BigRational,
    pub upper: BigRational,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    pub orthogonal_order: BigUint,
    /// Present for even `n`.
    pub symplectic_order: Option<BigUint>,
    /// `2^{n(n+1)/2}`, equal to the sum of the theta column.
    pub total: BigUint,
}

/// Builds the full rank-census table for symmetric `n x n` matrices over
/// `F_2`, optionally cross-checked against brute-force enumeration.
pub fn census_report(n: usize, brute: bool) -> Result<CensusReport, CensusError> {
    assert!(n >= 1, "census needs n >= 1");
    let brute_counts = if brute {
        Some(brute_symmetric_rank_census(n)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(n + 1);
    let mut sum = BigUint::zero();
    for k in 0..=n {
        let th = theta(n, k)?;
        sum += &th;
        let (lower, upper) = theta_bound_values(n, k);
        rows.push(CensusRow {
            k,
            theta: th,
            theta_brute: brute_counts.as_ref().map(|c| c[k]),
            lower,
            upper,
        });
    }
    let total = symmetric_total(n);
    assert_eq!(sum, total, "theta column does not sum to the matrix count");
    if let Some(counts) = &brute_counts {
        for row in &rows {
            assert_eq!(
                BigUint::from(counts[row.k]),
                row.theta,
                "brute census disagrees with the formula at k = {}",
                row.k
            );
        }
    }
    Ok(CensusReport {
        n,
        rows,
        orthogonal_order: orth_order(n),
        symplectic_order: (n % 2 == 0).then(|| symplectic_order(n))
            .transpose()?,
        total,
    })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn orthogonal_orders_match_brute_force() {
        assert_eq!(orth_order(1), big(1));
        assert_eq!(orth_order(2), big(2));
        assert_eq!(orth_order(3), big(6));
        assert_eq!(orth_order(4), big(48));
        assert_eq!(orth_order(5), big(720));
        for n in 1..=4 {
            assert_eq!(
                orth_order(n),
                big(brute_orthogonal_count(n).unwrap()),
                "O({n})"
            );
        }
        assert!(brute_orthogonal_count(5).is_err());
    }

    #[test]
    fn independent_tuple_counts_match_brute_force() {
        assert_eq!(n_rank_k_count(2, 1), big(3));
        assert_eq!(n_rank_k_count(2, 2), big(6));
        assert_eq!(n_rank_k_count(3, 2), big(42));
        assert_eq!(n_rank_k_count(4, 0), big(1));
        for n in 1..=4 {
            for k in 0..=n {
                assert_eq!(
                    n_rank_k_count(n, k),
                    big(brute_rank_k_matrix_count(n, k).unwrap()),
                    "N({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn symplectic_orders_match_brute_force() {
        assert_eq!(symplectic_order(2).unwrap(), big(6));
        assert_eq!(symplectic_order(4).unwrap(), big(720));
        assert_eq!(symplectic_order(2).unwrap(), big(brute_symplectic_count(2).unwrap()));
        assert_eq!(symplectic_order(4).unwrap(), big(brute_symplectic_count(4).unwrap()));
        for n in 1..=4 {
            assert_eq!(symplectic_order(2 * n).unwrap(), orth_order(2 * n + 1));
        }
        assert!(matches!(
            symplectic_order(3),
            Err(CensusError::OddDimension { dim: 3 })
        ));
        assert!(symplectic_order(0).is_err());
    }

    #[test]
    fn rank_census_formula_matches_brute_force() {
        assert_eq!(theta(2, 1).unwrap(), big(3));
        assert_eq!(theta(2, 2).unwrap(), big(4));
        for n in 1..=BRUTE_SYMMETRIC_MAX {
            let counts = brute_symmetric_rank_census(n).unwrap();
            for (k, &count) in counts.iter().enumerate() {
                assert_eq!(theta(n, k).unwrap(), big(count), "theta({n}, {k})");
            }
        }
        assert!(brute_symmetric_rank_census(6).is_err());
    }

    #[test]
    fn rank_census_sums_to_symmetric_matrix_count() {
        for n in 1..=8 {
            let sum: BigUint = (0..=n).map(|k| theta(n, k).unwrap()).sum();
            assert_eq!(sum, symmetric_total(n), "n = {n}");
        }
    }

    #[test]
    fn rank_census_bounds_are_strict() {
        for n in 1..=8 {
            for k in 1..=n {
                assert!(theta_bounds_hold(n, k).unwrap(), "bounds at ({n}, {k})");
                let (lower, upper) = theta_bound_values(n, k);
                let th = BigRational::from_integer(
                    theta(n, k).unwrap().into(),
                );
                assert!(lower < th && th < upper, "rational bounds at ({n}, {k})");
            }
        }
    }

    #[test]
    fn factor_and_tuple_count_bounds() {
        for n in 1..=16 {
            for k in 1..=n {
                assert!(count_bounds_hold(n, k), "bounds at ({n}, {k})");
            }
        }
    }

    #[test]
    fn partial_products_stay_in_the_band() {
        let (quarter, p2) = product_bound_check(2);
        assert_eq!(p2, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(quarter, pow2_rational(-2));
        let (_, p4) = product_bound_check(4);
        assert_eq!(p4, BigRational::new(BigInt::from(21), BigInt::from(64)));
        let (_, p20) = product_bound_check(20);
        assert!(p20 > pow2_rational(-2));
        assert!(p20 < BigRational::new(BigInt::from(29), BigInt::from(100)));
        // Strictly decreasing in n.
        let mut prev = BigRational::one();
        for n in 2..=20 {
            let (_, p) = product_bound_check(n);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn graph_count_bound_dominates_the_truth() {
        for n in 1..=ALPHA_EXACT_MAX {
            let dist = mr_distribution(n).unwrap();
            for k in 1..=n {
                let true_count: u64 = dist[..=k].iter().sum();
                assert!(
                    mr_le_k_graph_bound(n, k) > big(true_count),
                    "bound fails at ({n}, {k})"
                );
            }
        }
    }

    /// With `k/n` fixed below 1 the bound becomes a vanishing fraction of all
    /// graphs; check the exact ratio is strictly decreasing and tiny by
    /// n = 60.
    #[test]
    fn graph_count_bound_ratio_tends_to_zero() {
        for (num, den) in [(1usize, 2usize), (3, 4)] {
            let ratios: Vec<BigRational> = (2 * den..=60)
                .step_by(2 * den)
                .map(|n| {
                    let k = n * num / den;
                    BigRational::new(
                        (BigUint::from(k) * mr_le_k_graph_bound(n, k)).into(),
                        graph_total(n).into(),
                    )
                })
                .collect();
            // The sequence decreases once the quadratic exponent gap takes
            // over (it may tick up among the first couple of terms).
            for pair in ratios[2..].windows(2) {
                assert!(pair[1] < pair[0], "ratio stopped decreasing, t = {num}/{den}");
            }
            assert!(ratios.last().unwrap() < &pow2_rational(-30));
            assert!(ratios.last().unwrap() < ratios.first().unwrap());
        }
    }

    #[test]
    fn exact_average_minimum_rank() {
        let a1 = alpha_exact(1).unwrap();
        assert_eq!(a1.exact.unwrap(), BigRational::zero());

        let a2 = alpha_exact(2).unwrap();
        assert_eq!(
            a2.exact.unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );

        // All 8 graphs on 3 vertices: empty (0), three single edges (1),
        // three paths (2), triangle (1) — total 10 over 3 * 8.
        let a3 = alpha_exact(3).unwrap();
        assert_eq!(
            a3.exact.unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(12))
        );

        for n in 1..=5 {
            let a = alpha_exact(n).unwrap();
            let v = a.exact.unwrap();
            assert!(v >= BigRational::zero());
            assert!(v <= BigRational::new(BigInt::from(n as i64 - 1), BigInt::from(n as i64)).max(BigRational::zero()));
        }
        assert!(alpha_exact(7).is_err());
    }

    #[test]
    fn montecarlo_average_is_reproducible() {
        let a = alpha_montecarlo(8, 50, 12345).unwrap();
        let b = alpha_montecarlo(8, 50, 12345).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.stderr, b.stderr);
        assert!(a.estimate > 0.0 && a.estimate < 1.0);
        assert!(a.stderr.unwrap() > 0.0);

        let c = alpha_montecarlo(8, 50, 54321).unwrap();
        assert_ne!(a.estimate, c.estimate, "different seeds gave identical streams");
    }

    #[test]
    fn montecarlo_agrees_with_exact_on_small_n() {
        // At n = 5 the sample mean over many draws should land within a few
        // standard errors of the exact value.
        let exact = alpha_exact(5).unwrap().estimate;
        let mc = alpha_montecarlo(5, 400, 2024).unwrap();
        let gap = (mc.estimate - exact).abs();
        assert!(
            gap <= 4.0 * mc.stderr.unwrap(),
            "MC estimate {} vs exact {} gap {gap}",
            mc.estimate,
            exact
        );
    }

    #[test]
    fn report_assembles_and_cross_checks() {
        let report = census_report(4, true).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert_eq!(report.orthogonal_order, big(48));
        assert_eq!(report.symplectic_order, Some(big(720)));
        assert_eq!(report.total, big(1 << 10));
        for row in &report.rows {
            assert_eq!(row.theta_brute.map(BigUint::from), Some(row.theta.clone()));
        }
        let no_brute = census_report(5, false).unwrap();
        assert!(no_brute.rows.iter().all(|r| r.theta_brute.is_none()));
        assert!(no_brute.symplectic_order.is_none());
    }

    #[test]
    fn rational_to_f64_is_accurate() {
        let r = BigRational::new(BigInt::from(5), BigInt::from(12));
        assert!((rational_to_f64(&r) - 5.0 / 12.0).abs() < 1e-12);
        let z = BigRational::zero();
        assert_eq!(rational_to_f64(&z), 0.0);
        let neg = BigRational::new(BigInt::from(-7), BigInt::from(3));
        assert!((rational_to_f64(&neg) + 7.0 / 3.0).abs() < 1e-12);
    }
}
