//! Dense linear algebra over F_p: matrices, row reduction, kernels and
//! incrementally built subspaces.

use crate::field::Fp;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    /// Build a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * cols + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = f.char() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Matrix { rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u32).collect() }
    }

    pub fn apply(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = f.char() as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    s = (s + *a as u64 * *b as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(*a, *b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: Fp, c: u32) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(*a, c)).collect() }
    }

    pub fn sub_identity_scaled(&self, f: Fp, c: u32) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.set(i, i, f.sub(v, c));
        }
        m
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: Fp) -> Vec<usize> {
        let p = f.char() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]) as u64;
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = ((*x as u64 * inv) % p) as u32;
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, tail) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c] as u64;
                if factor == 0 {
                    return;
                }
                let m = p - factor;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + m * prow[j] as u64) % p) as u32;
                }
            };
            head.chunks_mut(cols).for_each(eliminate);
            tail.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: Fp) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref(f).len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, f: Fp) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, f: Fp) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }
}

/// A subspace of F_p^n kept in reduced row echelon form. When tracking is on,
/// every echelon row remembers its expression in terms of the independent
/// vectors that were inserted, so membership queries return coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    f: Fp,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<u32>>>,
}

impl Subspace {
    pub fn new(f: Fp, n: usize) -> Self {
        Subspace { f, n, rows: Vec::new(), pivots: Vec::new(), combos: None }
    }

    pub fn tracked(f: Fp, n: usize) -> Self {
        Subspace { f, n, rows: Vec::new(), pivots: Vec::new(), combos: Some(Vec::new()) }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduce `v` modulo the subspace; returns the coefficients used on each
    /// echelon row.
    fn reduce_with(&self, v: &mut [u32]) -> Vec<u32> {
        let f = self.f;
        let p = f.char() as u64;
        let mut coeffs = vec![0u32; self.rows.len()];
        for (k, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            coeffs[k] = c;
            let m = p - c as u64;
            for j in pc..self.n {
                if row[j] != 0 {
                    v[j] = ((v[j] as u64 + m * row[j] as u64) % p) as u32;
                }
            }
        }
        coeffs
    }

    pub fn reduce(&self, v: &mut [u32]) {
        self.reduce_with(v);
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce_with(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true if it enlarged the subspace.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let f = self.f;
        let mut w = v.to_vec();
        let coeffs = self.reduce_with(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        let new_combo = self.combos.as_ref().map(|combos| {
            let gens = self.rows.len() + 1;
            let mut c = vec![0u32; gens];
            c[gens - 1] = 1;
            for (k, &ck) in coeffs.iter().enumerate() {
                if ck != 0 {
                    for (g, &x) in combos[k].iter().enumerate() {
                        c[g] = f.sub(c[g], f.mul(ck, x));
                    }
                }
            }
            c.iter().map(|&x| f.mul(x, inv)).collect::<Vec<u32>>()
        });
        // keep the echelon rows fully reduced
        for k in 0..self.rows.len() {
            let c = self.rows[k][pc];
            if c == 0 {
                continue;
            }
            for j in pc..self.n {
                if w[j] != 0 {
                    self.rows[k][j] = f.sub(self.rows[k][j], f.mul(c, w[j]));
                }
            }
            if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo.as_ref()) {
                combos[k].push(0);
                for (g, &x) in nc.iter().enumerate() {
                    combos[k][g] = f.sub(combos[k][g], f.mul(c, x));
                }
            }
        }
        if let Some(combos) = self.combos.as_mut() {
            for c in combos.iter_mut() {
                c.resize(self.rows.len() + 1, 0);
            }
            combos.push(new_combo.unwrap());
        }
        // insert keeping pivots sorted
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        if let Some(combos) = self.combos.as_mut() {
            let c = combos.pop().unwrap();
            combos.insert(at, c);
        }
        true
    }

    /// Coordinates of `v` with respect to the independent vectors inserted so
    /// far (in insertion order). Requires tracking.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let combos = self.combos.as_ref().expect("coords on an untracked subspace");
        let f = self.f;
        let mut w = v.to_vec();
        let coeffs = self.reduce_with(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u32; self.rows.len()];
        for (k, &ck) in coeffs.iter().enumerate() {
            if ck != 0 {
                for (g, &x) in combos[k].iter().enumerate() {
                    out[g] = f.add(out[g], f.mul(ck, x));
                }
            }
        }
        Some(out)
    }
}

/// Sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow = Vec<(usize, u32)>;

/// Row echelon form of a sparse system, built with a greedy fill-reducing
/// pivot order. Each pivot row is normalized and contains no earlier pivot
/// column.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    f: Fp,
    n: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseRow>,
    is_pivot: Vec<bool>,
}

fn axpy_sparse(f: Fp, target: &SparseRow, c: u32, src: &SparseRow) -> SparseRow {
    // target - c * src
    let p = f.char() as u64;
    let m = p - c as u64;
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ti = target.get(i).map_or(usize::MAX, |x| x.0);
        let sj = src.get(j).map_or(usize::MAX, |x| x.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else if sj < ti {
            out.push((sj, ((m * src[j].1 as u64) % p) as u32));
            j += 1;
        } else {
            let v = ((target[i].1 as u64 + m * src[j].1 as u64) % p) as u32;
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(f: Fp, n: usize, input: Vec<SparseRow>) -> Self {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let p = f.char() as u64;
        let mut rows: Vec<SparseRow> = input;
        let mut alive = vec![true; rows.len()];
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut heap = BinaryHeap::new();
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c].push(i);
            }
            heap.push(Reverse((r.len(), i)));
        }
        let mut pivots = Vec::new();
        let mut out_rows = Vec::new();
        let mut is_pivot = vec![false; n];
        while let Some(Reverse((len, r))) = heap.pop() {
            if !alive[r] || rows[r].len() != len {
                continue;
            }
            alive[r] = false;
            if len == 0 {
                continue;
            }
            let row = std::mem::take(&mut rows[r]);
            let &(pc, pv) = row.iter().min_by_key(|(c, _)| col_rows[*c].len()).unwrap();
            let inv = f.inv(pv) as u64;
            let row: SparseRow = row.into_iter().map(|(c, v)| (c, ((v as u64 * inv) % p) as u32)).collect();
            let touching = std::mem::take(&mut col_rows[pc]);
            for s in touching {
                if !alive[s] {
                    continue;
                }
                let Ok(at) = rows[s].binary_search_by_key(&pc, |x| x.0) else {
                    continue;
                };
                let c = rows[s][at].1;
                let old = std::mem::take(&mut rows[s]);
                let new = axpy_sparse(f, &old, c, &row);
                // register columns that appeared
                let mut k = 0;
                for &(col, _) in &new {
                    while k < old.len() && old[k].0 < col {
                        k += 1;
                    }
                    if k >= old.len() || old[k].0 != col {
                        col_rows[col].push(s);
                    }
                }
                heap.push(Reverse((new.len(), s)));
                rows[s] = new;
            }
            is_pivot[pc] = true;
            pivots.push(pc);
            out_rows.push(row);
        }
        SparseEchelon { f, n, pivots, rows: out_rows, is_pivot }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.is_pivot[c]
    }

    /// Reduce a dense vector modulo the row space; the result vanishes on
    /// every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.f.char() as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let m = p - c as u64;
            for &(j, x) in row {
                v[j] = ((v[j] as u64 + m * x as u64) % p) as u32;
            }
        }
    }

    /// Free (non-pivot) columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| !self.is_pivot[c]).collect()
    }

    /// Null space basis: one vector per free column, equal to 1 there and 0
    /// on the other free columns.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.f;
        let p = f.char() as u64;
        self.free_columns()
            .into_iter()
            .map(|t| {
                let mut x = vec![0u32; self.n];
                x[t] = 1;
                for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
                    let mut acc = 0u64;
                    for &(j, v) in row {
                        if j != pc && x[j] != 0 {
                            acc = (acc + v as u64 * x[j] as u64) % p;
                        }
                    }
                    x[pc] = ((p - acc) % p) as u32;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let f = Fp::new(7).unwrap();
        let m = Matrix::from_rows(2, 3, vec![1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(f), 1);
        let k = m.kernel(f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(f, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Fp::new(101).unwrap();
        let m = Matrix::from_rows(3, 3, vec![2, 1, 0, 0, 1, 5, 7, 0, 1]);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(f, &inv), Matrix::identity(3));
        assert!(Matrix::from_rows(2, 2, vec![1, 2, 2, 4]).inverse(f).is_none());
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let f = Fp::new(7).unwrap();
        let dense = Matrix::from_rows(3, 4, vec![1, 2, 0, 3, 2, 4, 0, 6, 0, 1, 5, 0]);
        let rows: Vec<SparseRow> = (0..3)
            .map(|i| dense.row(i).iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
            .collect();
        let e = SparseEchelon::new(f, 4, rows);
        assert_eq!(e.rank(), dense.rank(f));
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dense.apply(f, v).iter().all(|&x| x == 0));
        }
        let mut v = dense.row(0).to_vec();
        e.reduce(&mut v);
        assert!(v.iter().all(|&x| x == 0));
    }

    #[test]
    fn tracked_coordinates() {
        let f = Fp::new(11).unwrap();
        let mut s = Subspace::tracked(f, 3);
        let a = vec![0, 1, 2];
        let b = vec![1, 1, 0];
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&[1, 2, 2]));
        // 3a + 5b
        let v: Vec<u32> = (0..3).map(|i| f.add(f.mul(3, a[i]), f.mul(5, b[i]))).collect();
        assert_eq!(s.coords(&v), Some(vec![3, 5]));
        assert_eq!(s.coords(&[0, 0, 1]), None);
    }
}
