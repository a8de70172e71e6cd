//! Dense matrices over GF(q) with exact Gaussian elimination.

use crate::error::{Error, Result};
use crate::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>, // row-major element codes
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Internal("ragged matrix rows".into()));
        }
        Ok(FMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FMatrix, f: &FiniteField) -> Result<FMatrix> {
        if self.cols != other.rows {
            return Err(Error::Internal(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row-echelon rank by exact Gaussian elimination.
    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(pr) = pivot else { continue };
            m.swap_rows(rank, pr);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(rank, c, f.mul(inv, m.get(rank, c)));
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in col..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// A matrix whose columns form a basis of the null space.
    pub fn kernel_basis(&self, f: &FiniteField) -> FMatrix {
        // Reduce to row-echelon form, remembering pivot columns.
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(rank, c, f.mul(inv, m.get(rank, c)));
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in col..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FMatrix::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, f.neg(m.get(row, fc)));
            }
        }
        out
    }

    /// Whether A·x = rhs has a solution: rank(A) == rank(A | rhs).
    pub fn solvable(&self, rhs: &[u64], f: &FiniteField) -> Result<bool> {
        if rhs.len() != self.rows {
            return Err(Error::Internal("rhs length differs from row count".into()));
        }
        let mut aug = FMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        Ok(self.rank(f) == aug.rank(f))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
