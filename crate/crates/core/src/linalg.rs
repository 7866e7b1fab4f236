//! Dense exact linear algebra over the fields in [`crate::field`].
//!
//! [`FMatrix`] is a row-major matrix of canonical element encodings tied to a
//! shared [`Field`]. On top of elimination (rank, determinant, inverse,
//! Schur complements) this module implements *symmetric congruence
//! decomposition*: every symmetric matrix of rank `k` factors as
//! `X * S * X^T` with `X` of full column rank `k` and `S` one of a short list
//! of canonical forms:
//!
//! * characteristic 2: `S = I_k` (a Gram matrix of `k` columns), or — exactly
//!   when the matrix has zero diagonal, forcing `k` even — `S` a direct sum
//!   of `k/2` blocks `[[0,1],[1,0]]`;
//! * odd characteristic: `S = I_k`, or `S = diag(1, .., 1, eps)` with `eps`
//!   the smallest non-square.
//!
//! The two cases per characteristic are genuinely distinct congruence
//! classes, and the decomposition picks the right one constructively. The
//! minimum-rank searches enumerate exactly these forms.

use std::fmt;
use std::sync::Arc;

use crate::f2;
use crate::field::{Field, FieldElement};

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    NotSquare { rows: usize, cols: usize },
    NotSymmetric,
    Singular,
    /// The trailing block of a 2x2 partition must be invertible to form a
    /// Schur complement.
    SingularTrailingBlock,
    DimensionMismatch(String),
    /// Congruence scaling by a vector with a zero entry is not invertible.
    ZeroScale { index: usize },
    /// A block split must leave both blocks nonempty.
    BadSplit { head: usize, n: usize },
    BadText(String),
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            LinAlgError::NotSymmetric => write!(f, "matrix is not symmetric"),
            LinAlgError::Singular => write!(f, "matrix is singular"),
            LinAlgError::SingularTrailingBlock => write!(f, "trailing block is singular"),
            LinAlgError::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            LinAlgError::ZeroScale { index } => write!(f, "zero scale factor at index {index}"),
            LinAlgError::BadSplit { head, n } => {
                write!(f, "block split {head} invalid for order {n} (need 1 <= head < n)")
            }
            LinAlgError::BadText(s) => write!(f, "bad matrix text: {s}"),
        }
    }
}

impl std::error::Error for LinAlgError {}

// ============================================================================
// FMatrix
// ============================================================================

/// Block split of a square matrix into a leading `head x head` block and the
/// complementary trailing block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSplit {
    pub head: usize,
}

/// A dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    field: Arc<Field>,
    data: Vec<FieldElement>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over {}:", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// The on-disk text format: a `rows cols q` header line, then one line per
/// row of space-separated element encodings.
impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.field.order())?;
        for i in 0..self.rows {
            let words: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", words.join(" "))?;
        }
        Ok(())
    }
}

impl FMatrix {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> FMatrix {
        FMatrix { rows, cols, field: Arc::clone(field), data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(field: &Arc<Field>, entries: &[FieldElement]) -> FMatrix {
        let mut m = FMatrix::zeros(field, entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: Vec<Vec<FieldElement>>) -> FMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            for &e in row {
                debug_assert!(u64::from(e) < field.order());
                data.push(e);
            }
        }
        FMatrix { rows: r, cols: c, field: Arc::clone(field), data }
    }

    pub fn from_fn(field: &Arc<Field>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> FMatrix {
        let mut m = FMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert!(i < self.rows && j < self.cols);
        debug_assert!(u64::from(v) < self.field.order());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_field(&self, other: &FMatrix) {
        assert!(self.field == other.field, "mixed fields: {} vs {}", self.field, other.field);
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = FMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &FMatrix) -> FMatrix {
        self.same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FMatrix { rows: self.rows, cols: self.cols, field: Arc::clone(f), data }
    }

    pub fn sub(&self, other: &FMatrix) -> FMatrix {
        self.same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FMatrix { rows: self.rows, cols: self.cols, field: Arc::clone(f), data }
    }

    pub fn scale(&self, c: FieldElement) -> FMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        FMatrix { rows: self.rows, cols: self.cols, field: Arc::clone(f), data }
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        self.same_field(other);
        assert_eq!(self.cols, other.rows, "mul shape mismatch");
        let f = &self.field;
        let mut out = FMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    out.set(i, j, f.add(out.get(i, j), t));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Copy of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        FMatrix::from_fn(&self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, other: &FMatrix) {
        self.same_field(other);
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for i in 0..other.rows {
            for j in 0..other.cols {
                self.set(r0 + i, c0 + j, other.get(i, j));
            }
        }
    }

    /// Assembles the symmetric matrix `[[a11, a12], [a12^T, a22]]`.
    pub fn assemble_symmetric(a11: &FMatrix, a12: &FMatrix, a22: &FMatrix) -> FMatrix {
        let k = a11.rows();
        let t = a22.rows();
        assert!(a11.is_square() && a22.is_square());
        assert_eq!((a12.rows(), a12.cols()), (k, t), "off-diagonal block shape");
        let mut m = FMatrix::zeros(a11.field(), k + t, k + t);
        m.set_block(0, 0, a11);
        m.set_block(0, k, a12);
        m.set_block(k, 0, &a12.transpose());
        m.set_block(k, k, a22);
        m
    }

    /// `P^T A P` for the vertex relabeling `perm`, where `perm[i]` is the old
    /// index of new index `i`: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> FMatrix {
        assert!(self.is_square() && perm.len() == self.rows);
        FMatrix::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(perm[i], perm[j]))
    }

    // ------------------------------------------------------------------
    // Elimination
    // ------------------------------------------------------------------

    /// Rank. Over `F_2` (with at most 64 columns) this dispatches to the
    /// bit-packed kernel; tests pin both paths to the same answers.
    pub fn rank(&self) -> usize {
        self.rank_capped(usize::MAX)
    }

    /// Rank, stopping early once `cap` pivots are found (then returns `cap`;
    /// any smaller return value is exact).
    pub fn rank_capped(&self, cap: usize) -> usize {
        if self.field.order() == 2 && self.cols <= 64 {
            let mut words: Vec<u64> = (0..self.rows)
                .map(|i| self.row(i).iter().enumerate().fold(0u64, |w, (j, &e)| w | (u64::from(e) << j)))
                .collect();
            return f2::rank_capped_in_place(&mut words, cap);
        }
        self.rank_dense_capped(cap)
    }

    /// Rank by generic Gaussian elimination, never taking the bit-packed
    /// shortcut. Public so the two paths can be compared.
    pub fn rank_dense(&self) -> usize {
        self.rank_dense_capped(usize::MAX)
    }

    fn rank_dense_capped(&self, cap: usize) -> usize {
        if cap == 0 {
            return 0;
        }
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(rank * cols + j, piv * cols + j);
                }
            }
            let inv = f.inv(a[rank * cols + col]);
            for r in rank + 1..rows {
                let factor = a[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let scale = f.mul(factor, inv);
                for j in col..cols {
                    let t = f.mul(scale, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(a[r * cols + j], t);
                }
            }
            rank += 1;
            if rank >= cap {
                return cap;
            }
        }
        rank
    }

    pub fn det(&self) -> Result<FieldElement, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det: FieldElement = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(0);
            };
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[col * n + col];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for r in col + 1..n {
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                let scale = f.mul(factor, inv);
                for j in col..n {
                    let t = f.mul(scale, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<FMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = FMatrix::identity(f, n);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a.get(r, col) != 0) else {
                return Err(LinAlgError::Singular);
            };
            if piv != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(piv, j));
                    a.set(col, j, y);
                    a.set(piv, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(piv, j));
                    inv.set(col, j, y);
                    inv.set(piv, j, x);
                }
            }
            let scale = f.inv(a.get(col, col));
            for j in 0..n {
                a.set(col, j, f.mul(scale, a.get(col, j)));
                inv.set(col, j, f.mul(scale, inv.get(col, j)));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(factor, a.get(col, j));
                    a.set(r, j, f.sub(a.get(r, j), t));
                    let t = f.mul(factor, inv.get(col, j));
                    inv.set(r, j, f.sub(inv.get(r, j), t));
                }
            }
        }
        Ok(inv)
    }

    /// Schur complement `A11 - A12 * A22^{-1} * A12^T` of the trailing block
    /// in a symmetric 2x2 partition after `split.head` rows.
    pub fn schur_complement(&self, split: BlockSplit) -> Result<FMatrix, LinAlgError> {
        let n = self.rows;
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if !self.is_symmetric() {
            return Err(LinAlgError::NotSymmetric);
        }
        let k = split.head;
        if k == 0 || k >= n {
            return Err(LinAlgError::BadSplit { head: k, n });
        }
        let a11 = self.block(0, k, 0, k);
        let a12 = self.block(0, k, k, n);
        let a22 = self.block(k, n, k, n);
        let a22_inv = a22.inverse().map_err(|_| LinAlgError::SingularTrailingBlock)?;
        Ok(a11.sub(&a12.mul(&a22_inv).mul(&a12.transpose())))
    }

    /// Congruence by an invertible diagonal: `out[i][j] = d[i] * d[j] * a[i][j]`.
    /// Preserves rank and the off-diagonal zero pattern.
    pub fn congruence_diag(&self, d: &[FieldElement]) -> Result<FMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if d.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} scale factors for order {}",
                d.len(),
                self.rows
            )));
        }
        if let Some(index) = d.iter().position(|&x| x == 0) {
            return Err(LinAlgError::ZeroScale { index });
        }
        let f = &self.field;
        Ok(FMatrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.mul(f.mul(d[i], d[j]), self.get(i, j))
        }))
    }

    // ------------------------------------------------------------------
    // Text I/O
    // ------------------------------------------------------------------

    /// Parses the text format produced by `Display` (`rows cols q` header,
    /// then rows of decimal encodings).
    pub fn from_text(text: &str) -> Result<FMatrix, LinAlgError> {
        let bad = |s: &str| LinAlgError::BadText(s.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [r, c, q] = parts.as_slice() else {
            return Err(bad("header must be `rows cols q`"));
        };
        let rows: usize = r.parse().map_err(|_| bad("bad row count"))?;
        let cols: usize = c.parse().map_err(|_| bad("bad column count"))?;
        let field = Arc::new(Field::parse(q).map_err(|e| bad(&e.to_string()))?);
        let mut m = FMatrix::zeros(&field, rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| bad(&format!("missing row {}", i + 1)))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(bad(&format!("row {} has {} entries, expected {cols}", i + 1, entries.len())));
            }
            for (j, e) in entries.iter().enumerate() {
                let v: u64 = e.parse().map_err(|_| bad(&format!("bad entry {e:?}")))?;
                if v >= field.order() {
                    return Err(bad(&format!("entry {v} out of range for order {}", field.order())));
                }
                m.set(i, j, v as FieldElement);
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing rows"));
        }
        Ok(m)
    }
}

// ============================================================================
// Canonical symmetric forms and congruence decomposition
// ============================================================================

/// The congruence-class representative `S` in a factorization `X * S * X^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalForm {
    /// `S = I_r`: the matrix is a Gram matrix of `r` columns.
    Gram,
    /// `S` is a direct sum of `r/2` blocks `[[0,1],[1,0]]`. Characteristic 2
    /// only; occurs exactly for zero-diagonal (alternating) matrices, whose
    /// rank is necessarily even.
    AlternatingBlock,
    /// `S = diag(1, .., 1, eps)` with `eps` the smallest non-square. Odd
    /// characteristic only.
    NonsquareGram,
}

impl CanonicalForm {
    pub fn label(&self) -> &'static str {
        match self {
            CanonicalForm::Gram => "gram",
            CanonicalForm::AlternatingBlock => "alternating-block",
            CanonicalForm::NonsquareGram => "nonsquare-gram",
        }
    }

    /// The `r x r` representative matrix.
    pub fn matrix(&self, field: &Arc<Field>, r: usize) -> FMatrix {
        match self {
            CanonicalForm::Gram => FMatrix::identity(field, r),
            CanonicalForm::AlternatingBlock => {
                assert!(field.char_two() && r % 2 == 0, "alternating form needs char 2, even rank");
                let mut m = FMatrix::zeros(field, r, r);
                for b in 0..r / 2 {
                    m.set(2 * b, 2 * b + 1, 1);
                    m.set(2 * b + 1, 2 * b, 1);
                }
                m
            }
            CanonicalForm::NonsquareGram => {
                assert!(!field.char_two() && r >= 1, "nonsquare form needs odd char, rank >= 1");
                let eps = field.smallest_nonsquare().expect("odd characteristic has a non-square");
                let mut m = FMatrix::identity(field, r);
                m.set(r - 1, r - 1, eps);
                m
            }
        }
    }
}

/// The complete list of congruence classes of symmetric rank-`r` invertible
/// `r x r` matrices over the field, as canonical representatives.
///
/// A search that proves "no `X` with `X * S * X^T` matching the pattern
/// exists for every listed `S`" has proved no symmetric matrix of rank *at
/// most* `r` matches (rank-deficient `X` covers the smaller ranks: every
/// lower-rank form embeds into some listed form under zero-padding of `X`).
pub fn canonical_rank_forms(field: &Arc<Field>, r: usize) -> Vec<CanonicalForm> {
    if r == 0 {
        return vec![CanonicalForm::Gram];
    }
    if field.char_two() {
        if r % 2 == 0 {
            vec![CanonicalForm::Gram, CanonicalForm::AlternatingBlock]
        } else {
            vec![CanonicalForm::Gram]
        }
    } else {
        vec![CanonicalForm::Gram, CanonicalForm::NonsquareGram]
    }
}

/// Factors a symmetric matrix as `X * S * X^T` where `S` is the canonical
/// form of its congruence class at `r = rank(A)` and `X` is `n x r` of full
/// column rank. The factorization is verified before returning.
pub fn symmetric_decompose(a: &FMatrix) -> Result<(CanonicalForm, FMatrix), LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !a.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let (form, x) = if a.field().char_two() {
        decompose_char_two(a)
    } else {
        decompose_odd_char(a)
    };
    let s = form.matrix(a.field(), x.cols());
    let back = x.mul(&s).mul(&x.transpose());
    assert!(back == *a, "congruence decomposition failed to reconstruct its input");
    assert_eq!(x.rank(), x.cols(), "decomposition produced rank-deficient factor");
    Ok((form, x))
}

/// Subtracts the rank-one (or rank-two) contribution of a pivot from `rem`.
fn subtract_outer(rem: &mut FMatrix, u: &[FieldElement], v: &[FieldElement], scale: FieldElement) {
    // rem -= scale * (u^T v + v^T u when u != v; u^T u when aliased by caller)
    let f = Arc::clone(rem.field());
    let n = rem.rows();
    for i in 0..n {
        for j in 0..n {
            let t = f.mul(scale, f.add(f.mul(u[i], v[j]), f.mul(v[i], u[j])));
            rem.set(i, j, f.sub(rem.get(i, j), t));
        }
    }
}

fn decompose_char_two(a: &FMatrix) -> (CanonicalForm, FMatrix) {
    let f = Arc::clone(a.field());
    let n = a.rows();
    let mut rem = a.clone();
    let mut gram: Vec<Vec<FieldElement>> = Vec::new();
    let mut pairs: Vec<(Vec<FieldElement>, Vec<FieldElement>)> = Vec::new();

    loop {
        if let Some(i) = (0..n).find(|&i| rem.get(i, i) != 0) {
            // Gram pivot: rem -= d^{-1} u^T u, column sqrt(d^{-1}) * u.
            let d = rem.get(i, i);
            let u: Vec<FieldElement> = rem.row(i).to_vec();
            let dinv = f.inv(d);
            let s = f.sqrt(dinv).expect("char 2: every element is a square");
            let col: Vec<FieldElement> = u.iter().map(|&x| f.mul(s, x)).collect();
            for r in 0..n {
                for c in 0..n {
                    let t = f.mul(dinv, f.mul(u[r], u[c]));
                    rem.set(r, c, f.sub(rem.get(r, c), t));
                }
            }
            gram.push(col);
        } else if let Some((i, j)) = first_offdiag_nonzero(&rem) {
            // Alternating pivot pair: rem -= d^{-1}(u^T v + v^T u),
            // pair columns (u, d^{-1} v) so their block is [[0,1],[1,0]].
            let d = rem.get(i, j);
            let u: Vec<FieldElement> = rem.row(i).to_vec();
            let v: Vec<FieldElement> = rem.row(j).to_vec();
            subtract_outer(&mut rem, &u, &v, f.inv(d));
            let dinv = f.inv(d);
            let v_scaled: Vec<FieldElement> = v.iter().map(|&x| f.mul(dinv, x)).collect();
            pairs.push((u, v_scaled));
        } else {
            break;
        }
    }

    if pairs.is_empty() {
        return (CanonicalForm::Gram, columns_to_matrix(&f, n, &gram));
    }
    if gram.is_empty() {
        let mut cols = Vec::new();
        for (x, y) in &pairs {
            cols.push(x.clone());
            cols.push(y.clone());
        }
        return (CanonicalForm::AlternatingBlock, columns_to_matrix(&f, n, &cols));
    }

    // Mixed pivots: fold each alternating pair into the Gram part. With any
    // Gram column w, the rank-3 piece w w^T + x y^T + y x^T is the Gram
    // matrix of the three columns (w+x, w+x+y, w+y) — a 0/1 identity that
    // holds over every field of characteristic 2.
    let mut w = gram.pop().unwrap();
    for (x, y) in pairs {
        let c0 = vec_add(&f, &w, &x);
        let c1 = vec_add(&f, &c0, &y);
        let c2 = vec_add(&f, &w, &y);
        gram.push(c1);
        gram.push(c2);
        w = c0;
    }
    gram.push(w);
    (CanonicalForm::Gram, columns_to_matrix(&f, n, &gram))
}

fn decompose_odd_char(a: &FMatrix) -> (CanonicalForm, FMatrix) {
    let f = Arc::clone(a.field());
    let n = a.rows();
    let mut rem = a.clone();
    // Columns with weight 1 or eps: A = sum of weight * col * col^T.
    let mut plain: Vec<Vec<FieldElement>> = Vec::new();
    let mut scaled: Vec<Vec<FieldElement>> = Vec::new();
    let eps = f.smallest_nonsquare().expect("odd characteristic");

    loop {
        // Pivot vector v with d = v^T rem v != 0: either a coordinate vector,
        // or e_i + e_j which gives d = 2 * rem[i][j] != 0 in odd characteristic.
        let (u, d) = if let Some(i) = (0..n).find(|&i| rem.get(i, i) != 0) {
            (rem.row(i).to_vec(), rem.get(i, i))
        } else if let Some((i, j)) = first_offdiag_nonzero(&rem) {
            let u: Vec<FieldElement> =
                (0..n).map(|c| f.add(rem.get(i, c), rem.get(j, c))).collect();
            (u, f.mul(f.embed(2), rem.get(i, j)))
        } else {
            break;
        };
        // rem -= d^{-1} u^T u; contribution is d * c c^T with c = d^{-1} u.
        let dinv = f.inv(d);
        for r in 0..n {
            for c in 0..n {
                let t = f.mul(dinv, f.mul(u[r], u[c]));
                rem.set(r, c, f.sub(rem.get(r, c), t));
            }
        }
        let col: Vec<FieldElement> = u.iter().map(|&x| f.mul(dinv, x)).collect();
        // Normalize the weight to a square-class representative: d = s^2 or
        // d = s^2 * eps; scale the column by s.
        if f.is_square(d) {
            let s = f.sqrt(d).unwrap();
            plain.push(col.iter().map(|&x| f.mul(s, x)).collect());
        } else {
            let s = f.sqrt(f.div(d, eps)).expect("d/eps is a square when d is not");
            scaled.push(col.iter().map(|&x| f.mul(s, x)).collect());
        }
    }

    // Two eps-weighted columns fold into two plain ones: with a^2 + b^2 = eps,
    // eps(x x^T + y y^T) is the Gram matrix of (a x + b y, -b x + a y).
    let (sa, sb) = sum_of_two_squares(&f, eps);
    while scaled.len() >= 2 {
        let y = scaled.pop().unwrap();
        let x = scaled.pop().unwrap();
        let c0: Vec<FieldElement> =
            (0..n).map(|i| f.add(f.mul(sa, x[i]), f.mul(sb, y[i]))).collect();
        let c1: Vec<FieldElement> =
            (0..n).map(|i| f.add(f.mul(f.neg(sb), x[i]), f.mul(sa, y[i]))).collect();
        plain.push(c0);
        plain.push(c1);
    }

    if let Some(last) = scaled.pop() {
        plain.push(last); // eps-weighted column goes last: S = diag(1,..,1,eps)
        (CanonicalForm::NonsquareGram, columns_to_matrix(&f, n, &plain))
    } else {
        (CanonicalForm::Gram, columns_to_matrix(&f, n, &plain))
    }
}

fn first_offdiag_nonzero(m: &FMatrix) -> Option<(usize, usize)> {
    let n = m.rows();
    for i in 0..n {
        for j in i + 1..n {
            if m.get(i, j) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

fn vec_add(f: &Arc<Field>, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn columns_to_matrix(f: &Arc<Field>, n: usize, cols: &[Vec<FieldElement>]) -> FMatrix {
    FMatrix::from_fn(f, n, cols.len(), |i, j| cols[j][i])
}

/// The lexicographically first `(a, b)` with `a^2 + b^2 = target`. Every
/// element of a finite field is a sum of two squares, so this always
/// terminates.
fn sum_of_two_squares(f: &Arc<Field>, target: FieldElement) -> (FieldElement, FieldElement) {
    for a in f.elements() {
        let aa = f.mul(a, a);
        for b in f.elements() {
            if f.add(aa, f.mul(b, b)) == target {
                return (a, b);
            }
        }
    }
    unreachable!("sum of two squares exists for every target")
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn field(name: &str) -> Arc<Field> {
        Arc::new(Field::parse(name).unwrap())
    }

    fn m(f: &Arc<Field>, rows: Vec<Vec<u32>>) -> FMatrix {
        FMatrix::from_rows(f, rows)
    }

    #[test]
    fn rank_examples() {
        let f3 = field("3");
        assert_eq!(m(&f3, vec![vec![1, 2], vec![2, 4 % 3]]).rank(), 1);
        assert_eq!(FMatrix::identity(&f3, 4).rank(), 4);
        assert_eq!(FMatrix::zeros(&f3, 3, 5).rank(), 0);
        // Rank caps.
        let i4 = FMatrix::identity(&f3, 4);
        assert_eq!(i4.rank_capped(2), 2);
        assert_eq!(i4.rank_capped(9), 4);
    }

    #[test]
    fn bit_packed_and_dense_ranks_agree_over_f2() {
        let f2f = field("2");
        // All 512 binary 3x3 matrices.
        for bits in 0u32..512 {
            let mm = FMatrix::from_fn(&f2f, 3, 3, |i, j| (bits >> (3 * i + j)) & 1);
            assert_eq!(mm.rank(), mm.rank_dense(), "disagreement at bits={bits}");
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let f5 = field("5");
        let a = m(&f5, vec![vec![1, 2], vec![3, 4]]);
        // det = 4 - 6 = -2 = 3 mod 5.
        assert_eq!(a.det().unwrap(), 3);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FMatrix::identity(&f5, 2));
        assert_eq!(inv.mul(&a), FMatrix::identity(&f5, 2));

        let singular = m(&f5, vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det().unwrap(), 0);
        assert_eq!(singular.inverse(), Err(LinAlgError::Singular));
    }

    #[test]
    fn inverse_round_trips_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for name in ["2", "3", "4", "5", "9"] {
            let f = field(name);
            let q = f.order() as u32;
            for _ in 0..40 {
                let n = rng.gen_range(1..=5);
                let a = FMatrix::from_fn(&f, n, n, |_, _| rng.gen_range(0..q));
                match a.inverse() {
                    Ok(inv) => {
                        assert_eq!(a.mul(&inv), FMatrix::identity(&f, n));
                        assert_eq!(a.rank(), n);
                    }
                    Err(LinAlgError::Singular) => assert!(a.rank() < n),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn schur_complement_examples() {
        let f3 = field("3");
        // [[1,1],[1,1]] with head 1: 1 - 1*1*1 = 0.
        let a = m(&f3, vec![vec![1, 1], vec![1, 1]]);
        let s = a.schur_complement(BlockSplit { head: 1 }).unwrap();
        assert_eq!(s, m(&f3, vec![vec![0]]));

        // Block-diagonal: complement is just A11.
        let a = m(&f3, vec![vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, 2]]);
        let s = a.schur_complement(BlockSplit { head: 2 }).unwrap();
        assert_eq!(s, a.block(0, 2, 0, 2));

        // Singular trailing block is reported.
        let a = m(&f3, vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(
            a.schur_complement(BlockSplit { head: 1 }),
            Err(LinAlgError::SingularTrailingBlock)
        );
        assert_eq!(
            a.schur_complement(BlockSplit { head: 2 }),
            Err(LinAlgError::BadSplit { head: 2, n: 2 })
        );
    }

    /// Rank of the Schur complement plus rank of the trailing block equals
    /// the rank of the whole matrix when the trailing block is invertible.
    #[test]
    fn schur_rank_additivity_on_random_symmetric_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for name in ["3", "5", "9"] {
            let f = field(name);
            let q = f.order() as u32;
            let mut tested = 0;
            while tested < 25 {
                let n = rng.gen_range(2..=5);
                let mut a = FMatrix::zeros(&f, n, n);
                for i in 0..n {
                    for j in i..n {
                        let v = rng.gen_range(0..q);
                        a.set(i, j, v);
                        a.set(j, i, v);
                    }
                }
                let k = rng.gen_range(1..n);
                if let Ok(s) = a.schur_complement(BlockSplit { head: k }) {
                    assert_eq!(s.rank() + (n - k), a.rank());
                    tested += 1;
                }
            }
        }
    }

    #[test]
    fn congruence_diag_examples() {
        let f3 = field("3");
        let a = m(&f3, vec![vec![0, 2], vec![2, 0]]);
        let out = a.congruence_diag(&[1, 2]).unwrap();
        assert_eq!(out, m(&f3, vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(out.rank(), a.rank());
        assert_eq!(
            a.congruence_diag(&[1, 0]),
            Err(LinAlgError::ZeroScale { index: 1 })
        );
    }

    #[test]
    fn canonical_form_lists() {
        let f2f = field("2");
        let f3 = field("3");
        assert_eq!(canonical_rank_forms(&f2f, 2), vec![CanonicalForm::Gram, CanonicalForm::AlternatingBlock]);
        assert_eq!(canonical_rank_forms(&f2f, 3), vec![CanonicalForm::Gram]);
        assert_eq!(canonical_rank_forms(&f3, 3), vec![CanonicalForm::Gram, CanonicalForm::NonsquareGram]);
        assert_eq!(canonical_rank_forms(&f3, 0), vec![CanonicalForm::Gram]);

        // F_3, r = 3: diag(1,1,2) since 2 is the smallest non-square mod 3.
        let s = CanonicalForm::NonsquareGram.matrix(&f3, 3);
        assert_eq!(s, m(&f3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]));

        let h = CanonicalForm::AlternatingBlock.matrix(&f2f, 4);
        assert_eq!(
            h,
            m(&f2f, vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]])
        );
    }

    #[test]
    fn decompose_simple_cases() {
        let f2f = field("2");
        // The 2x2 all-ones matrix has rank 1 and nonzero diagonal: Gram.
        let a = m(&f2f, vec![vec![1, 1], vec![1, 1]]);
        let (form, x) = symmetric_decompose(&a).unwrap();
        assert_eq!(form, CanonicalForm::Gram);
        assert_eq!(x.cols(), 1);

        // The 2x2 swap matrix is alternating.
        let a = m(&f2f, vec![vec![0, 1], vec![1, 0]]);
        let (form, x) = symmetric_decompose(&a).unwrap();
        assert_eq!(form, CanonicalForm::AlternatingBlock);
        assert_eq!(x.cols(), 2);

        // Odd characteristic: diag(2) over F_3 is congruent to (eps).
        let f3 = field("3");
        let a = m(&f3, vec![vec![2]]);
        let (form, x) = symmetric_decompose(&a).unwrap();
        assert_eq!(form, CanonicalForm::NonsquareGram);
        assert_eq!(x.cols(), 1);

        // Zero matrix: empty factor.
        let (form, x) = symmetric_decompose(&FMatrix::zeros(&f3, 3, 3)).unwrap();
        assert_eq!(form, CanonicalForm::Gram);
        assert_eq!(x.cols(), 0);

        assert_eq!(
            symmetric_decompose(&m(&f3, vec![vec![0, 1], vec![2, 0]])),
            Err(LinAlgError::NotSymmetric)
        );
    }

    /// Exhaustive: every symmetric matrix over F_2 and F_3 up to order 4
    /// decomposes, reconstructs, and lands in a legal form whose column
    /// count is the rank. (The decomposition itself asserts reconstruction.)
    #[test]
    fn decompose_all_small_symmetric_matrices() {
        for name in ["2", "3"] {
            let f = field(name);
            let q = f.order() as u32;
            for n in 0..=4usize {
                let slots = n * (n + 1) / 2;
                let total = (q as u64).pow(slots as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut a = FMatrix::zeros(&f, n, n);
                    for i in 0..n {
                        for j in i..n {
                            let v = (c % q as u64) as u32;
                            c /= q as u64;
                            a.set(i, j, v);
                            a.set(j, i, v);
                        }
                    }
                    let (form, x) = symmetric_decompose(&a).unwrap();
                    assert_eq!(x.cols(), a.rank());
                    match form {
                        CanonicalForm::AlternatingBlock => {
                            assert!(f.char_two() && x.cols() % 2 == 0);
                            assert!((0..n).all(|i| a.get(i, i) == 0));
                        }
                        CanonicalForm::NonsquareGram => assert!(!f.char_two()),
                        CanonicalForm::Gram => {}
                    }
                }
            }
        }
    }

    #[test]
    fn text_format_round_trip() {
        let f9 = field("9");
        let a = m(&f9, vec![vec![0, 5, 8], vec![5, 1, 3]]);
        let text = a.to_string();
        assert!(text.starts_with("2 3 9\n"));
        let b = FMatrix::from_text(&text).unwrap();
        assert_eq!(a, b);

        assert!(FMatrix::from_text("").is_err());
        assert!(FMatrix::from_text("1 1 7\n9").is_err()); // out of range
        assert!(FMatrix::from_text("2 1 7\n3").is_err()); // missing row
    }

    #[test]
    fn permute_symmetric_relabels_both_axes() {
        let f3 = field("3");
        let a = m(&f3, vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]]);
        let p = a.permute_symmetric(&[2, 0, 1]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.get(i, j), a.get([2, 0, 1][i], [2, 0, 1][j]));
            }
        }
        assert_eq!(p.rank(), a.rank());
    }
}
