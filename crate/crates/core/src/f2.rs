//! Word-parallel kernels over `F_2`.
//!
//! A matrix with at most 64 columns is stored as one `u64` per row (bit `j`
//! of word `i` = entry `(i, j)`), so row elimination is a handful of XORs.
//! The diagonal-enumeration minimum-rank solver and the brute-force counting
//! oracles both live on top of these.

/// Rank of the matrix whose rows are `rows` (at most 64 columns). The slice
/// is consumed as scratch space.
pub fn rank_in_place(rows: &mut [u64]) -> usize {
    rank_capped_in_place(rows, usize::MAX)
}

/// Like [`rank_in_place`], but stops as soon as `cap` independent rows are
/// found and returns `cap`. A return value `< cap` is the exact rank.
pub fn rank_capped_in_place(rows: &mut [u64], cap: usize) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let mut row = rows[i];
        if row == 0 {
            continue;
        }
        // Reduce against established pivots (kept in rows[..rank], each with
        // a unique leading bit).
        for j in 0..rank {
            let pivot = rows[j];
            if row & (1u64 << (63 - pivot.leading_zeros())) != 0 {
                row ^= pivot;
            }
        }
        if row != 0 {
            rows[rank] = row;
            rank += 1;
            if rank >= cap {
                return cap;
            }
        }
    }
    rank
}

/// Rank without consuming the input.
pub fn rank(rows: &[u64]) -> usize {
    let mut scratch = rows.to_vec();
    rank_in_place(&mut scratch)
}

/// Rank with an early-out cap; see [`rank_capped_in_place`].
pub fn rank_capped(rows: &[u64], cap: usize) -> usize {
    let mut scratch = rows.to_vec();
    rank_capped_in_place(&mut scratch, cap)
}

/// `A * B^T` over F_2 for row-packed operands: `out[i]` has bit `j` set iff
/// `row_i(a) . row_j(b)` is odd.
pub fn mul_transposed(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|&ra| {
            let mut word = 0u64;
            for (j, &rb) in b.iter().enumerate() {
                word |= u64::from((ra & rb).count_ones() & 1) << j;
            }
            word
        })
        .collect()
}

/// Whether the row-packed matrix is symmetric (first `n` columns of `n` rows).
pub fn is_symmetric(rows: &[u64]) -> bool {
    let n = rows.len();
    for i in 0..n {
        for j in i + 1..n {
            if (rows[i] >> j) & 1 != (rows[j] >> i) & 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[0, 0, 0]), 0);
        assert_eq!(rank(&[0b1]), 1);
        // Two equal rows, one independent.
        assert_eq!(rank(&[0b011, 0b011, 0b100]), 2);
        // Identity.
        assert_eq!(rank(&[0b001, 0b010, 0b100]), 3);
        // Third row is the sum of the first two.
        assert_eq!(rank(&[0b011, 0b101, 0b110]), 2);
    }

    #[test]
    fn rank_cap_is_an_early_out() {
        let rows = [0b0001u64, 0b0010, 0b0100, 0b1000];
        assert_eq!(rank_capped(&rows, 2), 2);
        assert_eq!(rank_capped(&rows, 4), 4);
        assert_eq!(rank_capped(&rows, 10), 4);
        assert_eq!(rank_capped(&[0u64, 0b1], 10), 1);
    }

    #[test]
    fn full_width_rows() {
        let rows: Vec<u64> = (0..64).map(|i| 1u64 << i).collect();
        assert_eq!(rank(&rows), 64);
        assert_eq!(rank(&[u64::MAX, u64::MAX ^ 1, 1]), 2);
    }

    #[test]
    fn mul_transposed_matches_definition() {
        // a = [[1,1,0],[0,1,1]], b = [[1,0,0],[1,1,1]]
        let a = [0b011u64, 0b110];
        let b = [0b001u64, 0b111];
        // a . b^T = [[1, 0], [0, 0]] column-packed per row.
        assert_eq!(mul_transposed(&a, &b), vec![0b01, 0b00]);
    }

    #[test]
    fn symmetry_check() {
        assert!(is_symmetric(&[0b01, 0b10])); // diag(1, 1)
        assert!(is_symmetric(&[0b10, 0b01])); // [[0,1],[1,0]]
        assert!(!is_symmetric(&[0b10, 0b00]));
    }
}
