//! Saddle-set matrices: nonnegative integer transition matrices, their
//! reduction mod 2, and the `k` invariant `dim ker(I - B)` over GF(2).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest dimension accepted by the search utilities in this module.
pub const SEARCH_DIM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
}

/// Square matrix with nonnegative integer entries (an SSFT transition matrix).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(MatrixError::NotSquare { row, len: r.len(), expected: dim });
            }
            entries.extend(r);
        }
        Ok(Self { dim, entries })
    }

    /// `dim x dim` matrix with `diag` on the diagonal and `off` elsewhere.
    pub fn constant_off_diagonal(dim: usize, diag: u64, off: u64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let entries = (0..dim * dim)
            .map(|idx| if idx / dim == idx % dim { diag } else { off })
            .collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    pub fn mod2(&self) -> Gf2Matrix {
        mod2_reduce(self)
    }

    pub fn k_invariant(&self) -> usize {
        ssft_k(self)
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(self)
    }
}

impl TryFrom<Vec<Vec<u64>>> for IntMatrix {
    type Error = MatrixError;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self, Self::Error> {
        Self::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<u64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, a) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

const WORD: usize = 64;

/// Square matrix over GF(2), one bitset per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    dim: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(dim: usize) -> Self {
        let words_per_row = dim.div_ceil(WORD);
        Self { dim, words_per_row, bits: vec![0; dim * words_per_row] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::Empty);
        }
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(MatrixError::NotSquare { row: i, len: r.len(), expected: dim });
            }
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = i * self.words_per_row + j / WORD;
        let mask = 1u64 << (j % WORD);
        if value {
            self.bits[w] |= mask;
        } else {
            self.bits[w] &= !mask;
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    /// `I + self`, which is `I - self` in characteristic 2.
    pub fn identity_minus(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            let v = !m.get(i, i);
            m.set(i, i, v);
        }
        m
    }

    /// Rank by Gaussian elimination on the row bitsets.
    pub fn rank(&self) -> usize {
        let wpr = self.words_per_row;
        let mut rows: Vec<Vec<u64>> = (0..self.dim).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.dim {
            let (w, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & mask != 0 {
                    for k in 0..wpr {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

pub fn mod2_reduce(a: &IntMatrix) -> Gf2Matrix {
    let mut b = Gf2Matrix::zeros(a.dim());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            b.set(i, j, a.get(i, j) % 2 == 1);
        }
    }
    b
}

/// `dim ker(I - B)` over GF(2), i.e. `m - rank(I - B)`.
pub fn kernel_dim(b: &Gf2Matrix) -> usize {
    b.dim() - b.identity_minus().rank()
}

/// The `k` invariant of a saddle label: `kernel_dim(mod2_reduce(a))`.
pub fn ssft_k(a: &IntMatrix) -> usize {
    kernel_dim(&mod2_reduce(a))
}

/// Strong connectivity of the support digraph (arc `i -> j` iff `a_ij > 0`).
/// A 1x1 matrix additionally needs its loop: `[[0]]` carries no orbit.
pub fn is_irreducible(a: &IntMatrix) -> bool {
    let m = a.dim();
    if m == 1 {
        return a.get(0, 0) > 0;
    }
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                let arc = if forward { a.get(i, j) } else { a.get(j, i) };
                if arc > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reaches_all(true) && reaches_all(false)
}

/// A deterministic irreducible matrix whose `k` invariant is `k_target`.
///
/// For `k >= 1` this is the `k x k` matrix with 1 on the diagonal and 2 off
/// it: its reduction is the identity, so `I - B = 0`, and its support is the
/// complete digraph. For `k = 0` it is `[[2]]`, whose reduction is zero.
pub fn find_matrix_with_k(k_target: usize) -> IntMatrix {
    match k_target {
        0 => IntMatrix::constant_off_diagonal(1, 2, 0),
        k => IntMatrix::constant_off_diagonal(k, 1, 2),
    }
}

/// Smallest irreducible matrix, in dimension then entry order, with entries
/// bounded by `max_entry` whose `k` invariant is `k_target`.
///
/// Exhaustive search; `dim` is capped at [`SEARCH_DIM_CAP`] but the search
/// is only practical for very small dimensions.
pub fn search_matrix_with_k(k_target: usize, max_dim: usize, max_entry: u64) -> Option<IntMatrix> {
    let max_dim = max_dim.min(SEARCH_DIM_CAP);
    for dim in k_target.max(1)..=max_dim {
        let cells = dim * dim;
        let base = max_entry + 1;
        let mut entries = vec![0u64; cells];
        loop {
            let a = IntMatrix { dim, entries: entries.clone() };
            if ssft_k(&a) == k_target && is_irreducible(&a) {
                return Some(a);
            }
            // odometer increment, last cell fastest
            let mut idx = cells;
            loop {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                entries[idx] += 1;
                if entries[idx] < base {
                    break;
                }
                entries[idx] = 0;
            }
            if entries.iter().all(|&e| e == 0) {
                break;
            }
        }
    }
    None
}
