//! Matrices of algebra elements, i.e. maps between direct sums of
//! indecomposable projectives.
//!
//! An `AlgMatrix` with row labels `rows` and column labels `cols` represents
//! a map `⊕_c P_{cols[c]} -> ⊕_r P_{rows[r]}`; entry `(r, c)` lies in
//! `e_{rows[r]} Λ e_{cols[c]}` and acts by left multiplication. Composition
//! is ordinary matrix multiplication.

use crate::algebra::{AlgebraTable, Elem};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    entries: Vec<Elem>,
}

impl AlgMatrix {
    pub fn zeros(alg: &AlgebraTable, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let entries = vec![alg.zero(); rows.len() * cols.len()];
        AlgMatrix { rows, cols, entries }
    }

    pub fn identity(alg: &AlgebraTable, labels: &[usize]) -> Self {
        let mut m = Self::zeros(alg, labels.to_vec(), labels.to_vec());
        for (i, &v) in labels.iter().enumerate() {
            m.set(i, i, alg.scaled_idempotent(v, 1));
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols.len() + c]
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Elem {
        let n = self.cols.len();
        &mut self.entries[r * n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: Elem) {
        let n = self.cols.len();
        self.entries[r * n + c] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| AlgebraTable::is_zero(e))
    }

    pub fn mul(&self, alg: &AlgebraTable, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, other.rows, "label mismatch in composition");
        let mut out = AlgMatrix::zeros(alg, self.rows.clone(), other.cols.clone());
        for r in 0..self.nrows() {
            for m in 0..self.ncols() {
                let a = self.get(r, m);
                if AlgebraTable::is_zero(a) {
                    continue;
                }
                for c in 0..other.ncols() {
                    let b = other.get(m, c);
                    if AlgebraTable::is_zero(b) {
                        continue;
                    }
                    let prod = alg.mul(a, b);
                    let slot = out.get_mut(r, c);
                    *slot = alg.add(slot, &prod);
                }
            }
        }
        out
    }

    pub fn add(&self, alg: &AlgebraTable, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!((&self.rows, &self.cols), (&other.rows, &other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| alg.add(a, b)).collect();
        AlgMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn sub(&self, alg: &AlgebraTable, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!((&self.rows, &self.cols), (&other.rows, &other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| alg.sub(a, b)).collect();
        AlgMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn scale(&self, alg: &AlgebraTable, c: u32) -> AlgMatrix {
        let entries = self.entries.iter().map(|a| alg.scale(a, c)).collect();
        AlgMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn neg(&self, alg: &AlgebraTable) -> AlgMatrix {
        self.scale(alg, alg.field().neg(1))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> AlgMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        AlgMatrix {
            rows: rows.iter().map(|&r| self.rows[r]).collect(),
            cols: cols.iter().map(|&c| self.cols[c]).collect(),
            entries,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &AlgMatrix, b: &AlgMatrix, c: &AlgMatrix, d: &AlgMatrix) -> AlgMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for (top, bottom, n) in [(a, b, a.nrows()), (c, d, c.nrows())] {
            for r in 0..n {
                for k in 0..top.ncols() {
                    entries.push(top.get(r, k).clone());
                }
                for k in 0..bottom.ncols() {
                    entries.push(bottom.get(r, k).clone());
                }
            }
        }
        AlgMatrix { rows, cols, entries }
    }

    pub fn block_diag(alg: &AlgebraTable, parts: &[&AlgMatrix]) -> AlgMatrix {
        let rows: Vec<usize> = parts.iter().flat_map(|m| m.rows.iter().copied()).collect();
        let cols: Vec<usize> = parts.iter().flat_map(|m| m.cols.iter().copied()).collect();
        let mut out = AlgMatrix::zeros(alg, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    out.set(r0 + r, c0 + c, m.get(r, c).clone());
                }
            }
            r0 += m.nrows();
            c0 += m.ncols();
        }
        out
    }

    /// Stack maps with a common source vertically.
    pub fn vstack(alg: &AlgebraTable, cols: &[usize], parts: &[&AlgMatrix]) -> AlgMatrix {
        let rows: Vec<usize> = parts.iter().flat_map(|m| m.rows.iter().copied()).collect();
        let mut out = AlgMatrix::zeros(alg, rows, cols.to_vec());
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    out.set(r0 + r, c, m.get(r, c).clone());
                }
            }
            r0 += m.nrows();
        }
        out
    }

    /// Stack maps with a common target horizontally.
    pub fn hstack(alg: &AlgebraTable, rows: &[usize], parts: &[&AlgMatrix]) -> AlgMatrix {
        let cols: Vec<usize> = parts.iter().flat_map(|m| m.cols.iter().copied()).collect();
        let mut out = AlgMatrix::zeros(alg, rows.to_vec(), cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    out.set(r, c0 + c, m.get(r, c).clone());
                }
            }
            c0 += m.ncols();
        }
        out
    }

    /// Reduction modulo the radical: the field matrix of idempotent
    /// coefficients (zero between different vertices).
    pub fn top(&self, alg: &AlgebraTable) -> Matrix {
        let mut m = Matrix::zeros(self.nrows(), self.ncols());
        for r in 0..self.nrows() {
            for c in 0..self.ncols() {
                if self.rows[r] == self.cols[c] {
                    m.set(r, c, self.get(r, c)[alg.idempotent(self.rows[r])]);
                }
            }
        }
        m
    }

    /// First entry with an invertible component (nonzero idempotent
    /// coefficient), scanning row-major.
    pub fn invertible_entry(&self, alg: &AlgebraTable) -> Option<(usize, usize)> {
        for r in 0..self.nrows() {
            for c in 0..self.ncols() {
                if self.rows[r] == self.cols[c] && self.get(r, c)[alg.idempotent(self.rows[r])] != 0 {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// True when every entry lies in the radical.
    pub fn is_radical(&self, alg: &AlgebraTable) -> bool {
        self.invertible_entry(alg).is_none()
    }

    /// Inverse of a map that is invertible modulo the radical. The labels of
    /// the result are swapped.
    pub fn inverse(&self, alg: &AlgebraTable) -> Option<AlgMatrix> {
        let f = alg.field();
        if self.nrows() != self.ncols() {
            return None;
        }
        let top_inv = self.top(alg).inverse(f)?;
        // lift the inverse of the top, then correct by a nilpotent series
        let mut a = AlgMatrix::zeros(alg, self.cols.clone(), self.rows.clone());
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                let x = top_inv.get(r, c);
                if x != 0 {
                    debug_assert_eq!(a.rows[r], a.cols[c]);
                    a.set(r, c, alg.scaled_idempotent(a.rows[r], x));
                }
            }
        }
        // a * self = 1 + n with n nilpotent
        let id = AlgMatrix::identity(alg, &self.cols);
        let n = a.mul(alg, self).sub(alg, &id);
        let mut series = id.clone();
        let mut term = id.clone();
        let neg_n = n.neg(alg);
        for _ in 0..alg.loewy_length() + 1 {
            term = term.mul(alg, &neg_n);
            if term.is_zero() {
                break;
            }
            series = series.add(alg, &term);
        }
        Some(series.mul(alg, &a))
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }
}
