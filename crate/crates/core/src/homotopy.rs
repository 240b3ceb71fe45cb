//! Bounded complexes of projectives and their homotopy category.
//!
//! Term `n` is a list of vertex labels (a direct sum of indecomposable
//! projectives) and the differential `d^n: X^n -> X^{n+1}` is an
//! [`AlgMatrix`]. Morphisms in the homotopy category are computed as chain
//! maps modulo null-homotopic maps, both as sparse linear systems over the
//! path-basis coefficients of the entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraTable;
use crate::algmat::AlgMatrix;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::poly::{coprime_factor, lcm, matrix_minpoly, primary_idempotent};
use crate::rep::{algmat_to_hom, cokernel, projective_sum, radical_basis, Module};

const SPLIT_TRIALS: usize = 24;
const ISO_TRIALS: usize = 24;
const SEED: u64 = 0xc0_4e_11;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<AlgMatrix>,
}

fn check_entry(alg: &AlgebraTable, m: &AlgMatrix) -> Result<()> {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let e = m.get(r, c);
            if e.len() != alg.dim() {
                return Err(Error::AlgebraMismatch);
            }
            let allowed = alg.paths(m.rows[r], m.cols[c]);
            for (u, &x) in e.iter().enumerate() {
                if x != 0 && !allowed.contains(&u) {
                    return Err(Error::InvalidComplex(format!(
                        "entry ({r}, {c}) leaves e_{}Λe_{}",
                        m.rows[r], m.cols[c]
                    )));
                }
            }
        }
    }
    Ok(())
}

impl ProjComplex {
    /// Build a complex with terms in degrees `lo, lo+1, ...`. `diffs[k]` maps
    /// `terms[k]` to `terms[k+1]`. Checks labels, entry supports and `d² = 0`.
    pub fn new(alg: &AlgebraTable, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AlgMatrix>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        let n = alg.num_vertices();
        for t in &terms {
            if let Some(&v) = t.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols != terms[k] || d.rows != terms[k + 1] {
                return Err(Error::InvalidComplex(format!("differential in degree {} has wrong labels", lo + k as i32)));
            }
            check_entry(alg, d)?;
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(alg, &diffs[k - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at degree {}", lo + k as i32 - 1)));
            }
        }
        Ok(Self::trimmed(lo, terms, diffs))
    }

    fn trimmed(mut lo: i32, mut terms: Vec<Vec<usize>>, mut diffs: Vec<AlgMatrix>) -> Self {
        while terms.last().is_some_and(|t| t.is_empty()) {
            terms.pop();
            diffs.pop();
        }
        let lead = terms.iter().take_while(|t| t.is_empty()).count();
        if lead == terms.len() {
            return ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() };
        }
        terms.drain(..lead);
        diffs.drain(..lead);
        lo += lead as i32;
        ProjComplex { lo, terms, diffs }
    }

    pub fn zero() -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_labels` concentrated in one degree.
    pub fn stalk(labels: &[usize], degree: i32) -> Self {
        Self::trimmed(degree, vec![labels.to_vec()], Vec::new())
    }

    /// The regular module `Λ = ⊕_i P_i` in degree 0.
    pub fn regular(alg: &AlgebraTable) -> Self {
        Self::stalk(&(0..alg.num_vertices()).collect::<Vec<_>>(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn term(&self, n: i32) -> &[usize] {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// `d^n: X^n -> X^{n+1}`, zero outside the stored range.
    pub fn d(&self, alg: &AlgebraTable, n: i32) -> AlgMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            AlgMatrix::zeros(alg, self.term(n + 1).to_vec(), self.term(n).to_vec())
        }
    }

    fn d_ref(&self, n: i32) -> Option<&AlgMatrix> {
        let k = n - self.lo;
        (k >= 0).then(|| self.diffs.get(k as usize)).flatten()
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn diffs(&self) -> &[AlgMatrix] {
        &self.diffs
    }

    /// Number of indecomposable projectives over all degrees.
    pub fn size(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Multiplicity of each `P_i` in degree `n`.
    pub fn multiplicities(&self, num_vertices: usize, n: i32) -> Vec<usize> {
        let mut out = vec![0; num_vertices];
        for &v in self.term(n) {
            out[v] += 1;
        }
        out
    }

    /// `X[k]`: degree `n` holds `X^{n+k}`, differential `(-1)^k d`.
    pub fn shift(&self, alg: &AlgebraTable, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg(alg)).collect() };
        ProjComplex { lo: self.lo - k, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(alg: &AlgebraTable, parts: &[&ProjComplex]) -> Self {
        let live: Vec<&&ProjComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        let Some(lo) = live.iter().map(|p| p.lo()).min() else {
            return Self::zero();
        };
        let hi = live.iter().map(|p| p.hi()).max().unwrap();
        let terms = (lo..=hi).map(|n| live.iter().flat_map(|p| p.term(n).iter().copied()).collect()).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let ds: Vec<AlgMatrix> = live.iter().map(|p| p.d(alg, n)).collect();
                AlgMatrix::block_diag(alg, &ds.iter().collect::<Vec<_>>())
            })
            .collect();
        Self::trimmed(lo, terms, diffs)
    }

    /// No differential has an entry outside the radical.
    pub fn is_minimal(&self, alg: &AlgebraTable) -> bool {
        self.diffs.iter().all(|d| d.is_radical(alg))
    }
}

/// A degree-preserving chain map. `maps[k]` is the component in degree
/// `lo + k` where `lo` is the lowest degree of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    pub lo: i32,
    pub maps: Vec<AlgMatrix>,
}

impl ChainMap {
    pub fn zero(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex) -> Self {
        let maps = x.degrees().map(|n| AlgMatrix::zeros(alg, y.term(n).to_vec(), x.term(n).to_vec())).collect();
        ChainMap { lo: x.lo(), maps }
    }

    pub fn identity(alg: &AlgebraTable, x: &ProjComplex) -> Self {
        ChainMap { lo: x.lo(), maps: x.degrees().map(|n| AlgMatrix::identity(alg, x.term(n))).collect() }
    }

    /// Component in degree `n`, or `None` outside the source range.
    pub fn at(&self, n: i32) -> Option<&AlgMatrix> {
        let k = n - self.lo;
        (k >= 0).then(|| self.maps.get(k as usize)).flatten()
    }

    fn at_or_zero(&self, alg: &AlgebraTable, n: i32, x: &ProjComplex, y: &ProjComplex) -> AlgMatrix {
        self.at(n).cloned().unwrap_or_else(|| AlgMatrix::zeros(alg, y.term(n).to_vec(), x.term(n).to_vec()))
    }

    pub fn add(&self, alg: &AlgebraTable, other: &ChainMap) -> ChainMap {
        ChainMap { lo: self.lo, maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(alg, b)).collect() }
    }

    pub fn scale(&self, alg: &AlgebraTable, c: u32) -> ChainMap {
        ChainMap { lo: self.lo, maps: self.maps.iter().map(|a| a.scale(alg, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(AlgMatrix::is_zero)
    }

    /// `g ∘ self` for `self: X -> Y` and `g: Y -> Z`.
    pub fn then(&self, alg: &AlgebraTable, g: &ChainMap, y: &ProjComplex, z: &ProjComplex) -> ChainMap {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let n = self.lo + k as i32;
                let gn = g.at(n).cloned().unwrap_or_else(|| AlgMatrix::zeros(alg, z.term(n).to_vec(), y.term(n).to_vec()));
                gn.mul(alg, f)
            })
            .collect();
        ChainMap { lo: self.lo, maps }
    }

    /// Reduction of every component modulo the radical.
    pub fn tops(&self, alg: &AlgebraTable) -> Vec<Matrix> {
        self.maps.iter().map(|m| m.top(alg)).collect()
    }
}

pub fn is_chain_map(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex, f: &ChainMap) -> bool {
    if x.is_zero() {
        return true;
    }
    x.degrees().all(|n| {
        let lhs = y.d(alg, n).mul(alg, &f.at_or_zero(alg, n, x, y));
        let rhs = f.at_or_zero(alg, n + 1, x, y).mul(alg, &x.d(alg, n));
        lhs == rhs
    })
}

/// Coordinates for a family of algebra matrices: block `k` has the given
/// row and column labels, entry `(r, c)` spans `paths(rows[r], cols[c])`.
#[derive(Clone)]
struct Layout {
    blocks: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
    total: usize,
}

impl Layout {
    fn new(alg: &AlgebraTable, shapes: Vec<(Vec<usize>, Vec<usize>)>) -> Self {
        let mut total = 0;
        let blocks = shapes
            .into_iter()
            .map(|(rows, cols)| {
                let mut offs = Vec::with_capacity(rows.len() * cols.len());
                for &r in &rows {
                    for &c in &cols {
                        offs.push(total);
                        total += alg.paths(r, c).len();
                    }
                }
                (rows, cols, offs)
            })
            .collect();
        Layout { blocks, total }
    }

    #[inline]
    fn at(&self, k: usize, r: usize, c: usize) -> usize {
        let (_, cols, offs) = &self.blocks[k];
        offs[r * cols.len() + c]
    }

    fn to_algmat(&self, alg: &AlgebraTable, k: usize, v: &[u32]) -> AlgMatrix {
        let (rows, cols, _) = &self.blocks[k];
        let mut m = AlgMatrix::zeros(alg, rows.clone(), cols.clone());
        for (r, &rv) in rows.iter().enumerate() {
            for (c, &cv) in cols.iter().enumerate() {
                let o = self.at(k, r, c);
                let e = m.get_mut(r, c);
                for (s, &b) in alg.paths(rv, cv).iter().enumerate() {
                    e[b] = v[o + s];
                }
            }
        }
        m
    }

    fn write(&self, alg: &AlgebraTable, k: usize, m: &AlgMatrix, v: &mut [u32]) {
        let (rows, cols, _) = &self.blocks[k];
        for (r, &rv) in rows.iter().enumerate() {
            for (c, &cv) in cols.iter().enumerate() {
                let o = self.at(k, r, c);
                let e = m.get(r, c);
                for (s, &b) in alg.paths(rv, cv).iter().enumerate() {
                    v[o + s] = e[b];
                }
            }
        }
    }
}

/// Nonzero entries of a matrix by column: `col[c] = [(r, [(basis, coef)])]`.
fn by_column(m: &AlgMatrix) -> Vec<Vec<(usize, Vec<(usize, u32)>)>> {
    let mut out = vec![Vec::new(); m.ncols()];
    for r in 0..m.nrows() {
        for (c, slot) in out.iter_mut().enumerate() {
            let e: Vec<(usize, u32)> = m.get(r, c).iter().enumerate().filter(|(_, &x)| x != 0).map(|(u, &x)| (u, x)).collect();
            if !e.is_empty() {
                slot.push((r, e));
            }
        }
    }
    out
}

/// Nonzero entries of a matrix by row.
fn by_row(m: &AlgMatrix) -> Vec<Vec<(usize, Vec<(usize, u32)>)>> {
    let mut out = vec![Vec::new(); m.nrows()];
    for (r, slot) in out.iter_mut().enumerate() {
        for c in 0..m.ncols() {
            let e: Vec<(usize, u32)> = m.get(r, c).iter().enumerate().filter(|(_, &x)| x != 0).map(|(u, &x)| (u, x)).collect();
            if !e.is_empty() {
                slot.push((c, e));
            }
        }
    }
    out
}

/// Collects `(row, col, value)` triples into sorted sparse rows.
fn assemble(f: Fp, nrows: usize, mut triples: Vec<(usize, usize, u32)>) -> Vec<SparseRow> {
    triples.sort_unstable_by_key(|t| (t.0, t.1));
    let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
    for (r, c, v) in triples {
        let row = &mut rows[r];
        match row.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(last.1, v),
            _ => row.push((c, v)),
        }
    }
    for row in &mut rows {
        row.retain(|x| x.1 != 0);
    }
    rows
}

/// `Hom(X, Y)` in the homotopy category: a basis of chain maps modulo
/// null-homotopic ones.
#[derive(Clone)]
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    layout_lo: i32,
    layout: Layout,
    boundaries: SparseEchelon,
    free: Vec<usize>,
    pub reps: Vec<ChainMap>,
}

impl std::fmt::Debug for HomSpace {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("HomSpace").field("dim", &self.reps.len()).finish()
    }
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    fn flatten(&self, alg: &AlgebraTable, f: &ChainMap) -> Vec<u32> {
        let lay = &self.layout;
        let mut v = vec![0u32; lay.total];
        for (k, _) in lay.blocks.iter().enumerate() {
            if let Some(m) = f.at(self.layout_lo + k as i32) {
                lay.write(alg, k, m, &mut v);
            }
        }
        v
    }

    /// Coordinates of the class of a chain map in the basis `reps`.
    pub fn coords(&self, alg: &AlgebraTable, f: &ChainMap) -> Vec<u32> {
        let mut v = self.flatten(alg, f);
        self.boundaries.reduce(&mut v);
        self.free.iter().map(|&c| v[c]).collect()
    }

    pub fn combine(&self, alg: &AlgebraTable, coeffs: &[u32]) -> ChainMap {
        let mut acc = ChainMap::zero(alg, &self.source, &self.target);
        for (r, &c) in self.reps.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(alg, &r.scale(alg, c));
            }
        }
        acc
    }

    /// True when the chain map is null-homotopic.
    pub fn is_null(&self, alg: &AlgebraTable, f: &ChainMap) -> bool {
        self.coords(alg, f).iter().all(|&x| x == 0)
    }

    pub fn random_element<R: Rng>(&self, alg: &AlgebraTable, rng: &mut R) -> ChainMap {
        let p = alg.field().char();
        let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
        self.combine(alg, &coeffs)
    }
}

/// Degree-zero morphisms `X -> Y` in the homotopy category.
pub fn hom_space(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex) -> Result<HomSpace> {
    let f = alg.field();
    let nv = alg.num_vertices();
    if [x, y].iter().any(|c| c.terms.iter().flatten().any(|&v| v >= nv)) {
        return Err(Error::AlgebraMismatch);
    }
    if [x, y].iter().any(|c| c.diffs.iter().any(|d| d.entries().first().is_some_and(|e| e.len() != alg.dim()))) {
        return Err(Error::AlgebraMismatch);
    }
    let lo = x.lo();
    let degs: Vec<i32> = x.degrees().collect();
    let vars = Layout::new(alg, degs.iter().map(|&n| (y.term(n).to_vec(), x.term(n).to_vec())).collect());
    let kidx = |n: i32| -> Option<usize> {
        let k = n - lo;
        (k >= 0 && (k as usize) < degs.len()).then_some(k as usize)
    };
    let p = f.char();
    let neg = |v: u32| if v == 0 { 0 } else { p - v };

    // null-homotopic maps: f_n = d_Y^{n-1} h_n + h_{n+1} d_X^n with h_n: X^n -> Y^{n-1}
    let mut gens: Vec<(usize, usize, u32)> = Vec::new();
    let mut ngens = 0;
    for &n in &degs {
        let yrows = y.term(n - 1);
        let xcols = x.term(n);
        if yrows.is_empty() || xcols.is_empty() {
            continue;
        }
        let dy = y.d_ref(n - 1).map(by_column);
        let dx = x.d_ref(n - 1).map(by_row);
        for (r, &rv) in yrows.iter().enumerate() {
            for (c, &cv) in xcols.iter().enumerate() {
                for &b in alg.paths(rv, cv) {
                    let g = ngens;
                    ngens += 1;
                    // d_Y^{n-1} h into f_n
                    if let (Some(dy), Some(k)) = (&dy, kidx(n)) {
                        for (r2, e) in &dy[r] {
                            let o = vars.at(k, *r2, c);
                            for &(u, lam) in e {
                                for &(w, m) in alg.mul_basis(u, b) {
                                    gens.push((g, o + alg.slot(w), f.mul(lam, m)));
                                }
                            }
                        }
                    }
                    // h d_X^{n-1} into f_{n-1}
                    if let (Some(dx), Some(k)) = (&dx, kidx(n - 1)) {
                        for (c2, e) in &dx[c] {
                            let o = vars.at(k, r, *c2);
                            for &(u, lam) in e {
                                for &(w, m) in alg.mul_basis(b, u) {
                                    gens.push((g, o + alg.slot(w), f.mul(lam, m)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let boundaries = SparseEchelon::new(f, vars.total, assemble(f, ngens, gens));

    // chain condition on the columns left after removing boundary pivots
    let mut keep = vec![usize::MAX; vars.total];
    let mut kept = Vec::new();
    for (c, slot) in keep.iter_mut().enumerate() {
        if !boundaries.is_pivot(c) {
            *slot = kept.len();
            kept.push(c);
        }
    }
    let eqs = Layout::new(alg, degs.iter().map(|&n| (y.term(n + 1).to_vec(), x.term(n).to_vec())).collect());
    let mut triples: Vec<(usize, usize, u32)> = Vec::new();
    for (k, &n) in degs.iter().enumerate() {
        if y.term(n + 1).is_empty() {
            continue;
        }
        // d_Y^n f_n
        if let Some(dy) = y.d_ref(n).map(by_column) {
            for (r, &rv) in y.term(n).iter().enumerate() {
                for (c, &cv) in x.term(n).iter().enumerate() {
                    for (s, &b) in alg.paths(rv, cv).iter().enumerate() {
                        let col = keep[vars.at(k, r, c) + s];
                        if col == usize::MAX {
                            continue;
                        }
                        for (r2, e) in &dy[r] {
                            let o = eqs.at(k, *r2, c);
                            for &(u, lam) in e {
                                for &(w, m) in alg.mul_basis(u, b) {
                                    triples.push((o + alg.slot(w), col, f.mul(lam, m)));
                                }
                            }
                        }
                    }
                }
            }
        }
        // - f_{n+1} d_X^n
        if let (Some(dx), Some(k1)) = (x.d_ref(n).map(by_row), kidx(n + 1)) {
            for (r, &rv) in y.term(n + 1).iter().enumerate() {
                for (c1, &cv) in x.term(n + 1).iter().enumerate() {
                    for (s, &b) in alg.paths(rv, cv).iter().enumerate() {
                        let col = keep[vars.at(k1, r, c1) + s];
                        if col == usize::MAX {
                            continue;
                        }
                        for (c, e) in &dx[c1] {
                            let o = eqs.at(k, r, *c);
                            for &(u, lam) in e {
                                for &(w, m) in alg.mul_basis(b, u) {
                                    triples.push((o + alg.slot(w), col, neg(f.mul(lam, m))));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let cycles = SparseEchelon::new(f, kept.len(), assemble(f, eqs.total, triples));
    let free: Vec<usize> = cycles.free_columns().into_iter().map(|c| kept[c]).collect();
    let reps = cycles
        .kernel()
        .into_iter()
        .map(|v| {
            let mut full = vec![0u32; vars.total];
            for (c, &x) in v.iter().enumerate() {
                full[kept[c]] = x;
            }
            ChainMap { lo, maps: (0..degs.len()).map(|k| vars.to_algmat(alg, k, &full)).collect() }
        })
        .collect();
    Ok(HomSpace {
        source: x.clone(),
        target: y.clone(),
        layout_lo: lo,
        layout: vars,
        boundaries,
        free,
        reps,
    })
}

/// `Hom(X, Y[shift])` in the homotopy category.
pub fn hom_homotopy(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex, shift: i32) -> Result<HomSpace> {
    hom_space(alg, x, &y.shift(alg, shift))
}

pub fn hom_dim(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex, shift: i32) -> Result<usize> {
    Ok(hom_homotopy(alg, x, y, shift)?.dim())
}

/// Mapping cone of `f: X -> Y`: degree `n` is `X^{n+1} ⊕ Y^n` with
/// differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex, f: &ChainMap) -> ProjComplex {
    let parts: Vec<i32> = [x.lo() - 1, x.hi() - 1, y.lo(), y.hi()]
        .into_iter()
        .zip([!x.is_zero(), !x.is_zero(), !y.is_zero(), !y.is_zero()])
        .filter_map(|(d, live)| live.then_some(d))
        .collect();
    let (Some(&lo), Some(&hi)) = (parts.iter().min(), parts.iter().max()) else {
        return ProjComplex::zero();
    };
    let term = |n: i32| -> Vec<usize> { x.term(n + 1).iter().chain(y.term(n)).copied().collect() };
    let terms = (lo..=hi).map(term).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let a = x.d(alg, n + 1).neg(alg);
            let b = AlgMatrix::zeros(alg, x.term(n + 2).to_vec(), y.term(n).to_vec());
            let c = f.at_or_zero(alg, n + 1, x, y);
            let d = y.d(alg, n);
            AlgMatrix::blocks(&a, &b, &c, &d)
        })
        .collect();
    ProjComplex::trimmed(lo, terms, diffs)
}

/// Strip contractible summands `P --iso--> P` by Gaussian elimination. The
/// result is homotopy equivalent and has radical differentials.
pub fn minimize(alg: &AlgebraTable, x: &ProjComplex) -> ProjComplex {
    let mut terms = x.terms.clone();
    let mut diffs = x.diffs.clone();
    loop {
        let Some((k, (r, c))) = diffs.iter().enumerate().find_map(|(k, d)| d.invertible_entry(alg).map(|rc| (k, rc))) else {
            break;
        };
        let d = &diffs[k];
        let rest_r: Vec<usize> = (0..d.nrows()).filter(|&i| i != r).collect();
        let rest_c: Vec<usize> = (0..d.ncols()).filter(|&j| j != c).collect();
        let alpha_inv = d.submatrix(&[r], &[c]).inverse(alg).expect("invertible entry");
        let beta = d.submatrix(&[r], &rest_c);
        let gamma = d.submatrix(&rest_r, &[c]);
        let delta = d.submatrix(&rest_r, &rest_c);
        diffs[k] = delta.sub(alg, &gamma.mul(alg, &alpha_inv).mul(alg, &beta));
        if k > 0 {
            let prev = &diffs[k - 1];
            let all: Vec<usize> = (0..prev.ncols()).collect();
            diffs[k - 1] = prev.submatrix(&rest_c, &all);
        }
        if k + 1 < diffs.len() {
            let next = &diffs[k + 1];
            let all: Vec<usize> = (0..next.nrows()).collect();
            diffs[k + 1] = next.submatrix(&all, &rest_r);
        }
        terms[k].remove(c);
        terms[k + 1].remove(r);
    }
    ProjComplex::trimmed(x.lo, terms, diffs)
}

/// Trace form on tops: `Σ_n tr(top(a_n) top(b_n))`.
/// Radical of `End(X)` for a minimal complex, from the trace forms of the
/// tops on each (degree, vertex) block. Null-homotopic maps of a minimal
/// complex have radical components, so the forms are well defined on
/// classes.
pub fn end_radical(alg: &AlgebraTable, end: &HomSpace) -> Vec<ChainMap> {
    let x = end.source();
    let nv = alg.num_vertices();
    let blocks: Vec<Vec<Matrix>> = end
        .reps
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            for n in x.degrees() {
                let labels = x.term(n);
                let top = r.at(n).map(|m| m.top(alg));
                for v in 0..nv {
                    let idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == v).collect();
                    out.push(match &top {
                        Some(t) => Matrix::from_rows(
                            idx.len(),
                            idx.len(),
                            idx.iter().flat_map(|&i| idx.iter().map(move |&j| t.get(i, j))).collect(),
                        ),
                        None => Matrix::zeros(idx.len(), idx.len()),
                    });
                }
            }
            out
        })
        .collect();
    radical_basis(alg.field(), &blocks).iter().map(|c| end.combine(alg, c)).collect()
}

/// Every component is invertible modulo the radical. For minimal complexes
/// this is exactly invertibility in the homotopy category.
pub fn is_top_invertible(alg: &AlgebraTable, g: &ChainMap) -> bool {
    let f = alg.field();
    g.maps.iter().all(|m| m.nrows() == m.ncols() && m.top(alg).is_invertible(f))
}

fn same_shape(x: &ProjComplex, y: &ProjComplex, nv: usize) -> bool {
    x.is_zero() && y.is_zero()
        || x.lo() == y.lo() && x.hi() == y.hi() && x.degrees().all(|n| x.multiplicities(nv, n) == y.multiplicities(nv, n))
}

/// Randomized isomorphism test in the homotopy category. A `true` answer
/// is always correct.
pub fn is_isomorphic(alg: &AlgebraTable, x: &ProjComplex, y: &ProjComplex) -> Result<bool> {
    let x = minimize(alg, x);
    let y = minimize(alg, y);
    if !same_shape(&x, &y, alg.num_vertices()) {
        return Ok(false);
    }
    if x == y {
        return Ok(true);
    }
    let homs = hom_space(alg, &x, &y)?;
    if homs.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    Ok((0..ISO_TRIALS).any(|_| is_top_invertible(alg, &homs.random_element(alg, &mut rng))))
}

fn eval_poly(alg: &AlgebraTable, poly: &[u32], m: &AlgMatrix) -> AlgMatrix {
    let labels = &m.cols;
    let mut acc = AlgMatrix::zeros(alg, labels.clone(), labels.clone());
    let id = AlgMatrix::identity(alg, labels);
    for &c in poly.iter().rev() {
        acc = acc.mul(alg, m).add(alg, &id.scale(alg, c));
    }
    acc
}

/// Split an idempotent endomorphism `e` of `⊕ P_labels`: returns the labels
/// of its image together with `i: P_image -> P` and `p: P -> P_image`,
/// `p i = 1` and `i p = e`.
fn split_idempotent(alg: &AlgebraTable, e: &AlgMatrix) -> (Vec<usize>, AlgMatrix, AlgMatrix) {
    let f = alg.field();
    let t = e.top(alg);
    let labels = &e.rows;
    let mut cols_sel = Vec::new();
    let mut rows_sel = Vec::new();
    for v in 0..alg.num_vertices() {
        let idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == v).collect();
        if idx.is_empty() {
            continue;
        }
        let mut block = Matrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                block.set(a, b, t.get(i, j));
            }
        }
        let piv_c = block.clone().rref(f);
        let sub = Matrix::from_columns(idx.len(), &piv_c.iter().map(|&j| block.column(j)).collect::<Vec<_>>());
        let piv_r = sub.transpose().rref(f);
        cols_sel.extend(piv_c.iter().map(|&j| idx[j]));
        rows_sel.extend(piv_r.iter().map(|&i| idx[i]));
    }
    let all: Vec<usize> = (0..labels.len()).collect();
    let i = e.submatrix(&all, &cols_sel);
    let square = e.submatrix(&rows_sel, &cols_sel);
    let inv = square.inverse(alg).expect("idempotent block is invertible on top");
    let p = inv.mul(alg, &e.submatrix(&rows_sel, &all));
    let image_labels = i.cols.clone();
    (image_labels, i, p)
}

fn split_complex(alg: &AlgebraTable, x: &ProjComplex, e: &ChainMap) -> ProjComplex {
    let pieces: Vec<(Vec<usize>, AlgMatrix, AlgMatrix)> = e.maps.iter().map(|m| split_idempotent(alg, m)).collect();
    let terms = pieces.iter().map(|p| p.0.clone()).collect();
    let diffs = (0..pieces.len().saturating_sub(1))
        .map(|k| pieces[k + 1].2.mul(alg, &x.diffs[k]).mul(alg, &pieces[k].1))
        .collect();
    ProjComplex::trimmed(x.lo, terms, diffs)
}

fn try_split(alg: &AlgebraTable, x: &ProjComplex, phi: &ChainMap, rng: &mut ChaCha8Rng) -> Option<(ProjComplex, ProjComplex)> {
    let f = alg.field();
    let mut mu = vec![1];
    for m in &phi.maps {
        for blk in algmat_to_hom(alg, m).maps {
            if blk.rows() > 0 {
                mu = lcm(f, &mu, &matrix_minpoly(f, &blk));
            }
        }
    }
    let g = coprime_factor(f, &mu, rng)?;
    let ep = primary_idempotent(f, &mu, &g)?;
    let e = ChainMap { lo: phi.lo, maps: phi.maps.iter().map(|m| eval_poly(alg, &ep, m)).collect() };
    let one_minus = ChainMap::identity(alg, x).add(alg, &e.scale(alg, f.neg(1)));
    let a = split_complex(alg, x, &e);
    let b = split_complex(alg, x, &one_minus);
    (!a.is_zero() && !b.is_zero()).then_some((a, b))
}

fn split_rec(alg: &AlgebraTable, x: ProjComplex, rng: &mut ChaCha8Rng, out: &mut Vec<ProjComplex>) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let end = hom_space(alg, &x, &x)?;
    if end.dim() > 1 {
        for _ in 0..SPLIT_TRIALS {
            let phi = end.random_element(alg, rng);
            if let Some((a, b)) = try_split(alg, &x, &phi, rng) {
                split_rec(alg, a, rng, out)?;
                return split_rec(alg, b, rng, out);
            }
        }
    }
    out.push(x);
    Ok(())
}

/// Indecomposable summands of a minimal complex, in a deterministic order.
pub fn decompose_complex(alg: &AlgebraTable, x: &ProjComplex) -> Result<Vec<ProjComplex>> {
    if !x.is_minimal(alg) {
        return Err(Error::NotMinimized);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x2);
    let mut out = Vec::new();
    split_rec(alg, x.clone(), &mut rng, &mut out)?;
    out.sort_by(|a, b| complex_key(a).cmp(&complex_key(b)));
    Ok(out)
}

fn complex_key(x: &ProjComplex) -> (i32, Vec<Vec<usize>>, Vec<Vec<Vec<u32>>>) {
    (x.lo, x.terms.clone(), x.diffs.iter().map(|d| d.entries().to_vec()).collect())
}

/// `H^0` of a complex concentrated in non-positive degrees.
pub fn h0(alg: &AlgebraTable, x: &ProjComplex) -> Result<Module> {
    let x = minimize(alg, x);
    if !x.is_zero() && x.hi() > 0 {
        return Err(Error::PositiveDegreePart);
    }
    let p0 = projective_sum(alg, x.term(0));
    if x.term(0).is_empty() {
        return Ok(p0);
    }
    let d = algmat_to_hom(alg, &x.d(alg, -1));
    Ok(cokernel(alg, &p0, &d).0)
}

/// Dimension vector of `H^p(X)`.
pub fn cohomology_dims(alg: &AlgebraTable, x: &ProjComplex, p: i32) -> Vec<usize> {
    let f = alg.field();
    let here = projective_sum(alg, x.term(p));
    let out = algmat_to_hom(alg, &x.d(alg, p));
    let inc = algmat_to_hom(alg, &x.d(alg, p - 1));
    (0..alg.num_vertices())
        .map(|w| here.dims()[w] - out.maps[w].rank(f) - inc.maps[w].rank(f))
        .collect()
}

/// `[X^0] - [X^{-1}]` for a complex supported in degrees -1 and 0.
pub fn g_vector(alg: &AlgebraTable, x: &ProjComplex) -> Result<Vec<i64>> {
    let x = minimize(alg, x);
    if !x.is_zero() && (x.lo() < -1 || x.hi() > 0) {
        return Err(Error::WrongSupport);
    }
    let n = alg.num_vertices();
    let a = x.multiplicities(n, 0);
    let b = x.multiplicities(n, -1);
    Ok(a.iter().zip(&b).map(|(&p, &q)| p as i64 - q as i64).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraPresentation, Quiver, Relation};

    pub(crate) fn a2() -> AlgebraTable {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        build_algebra(&AlgebraPresentation::path_algebra(q)).unwrap()
    }

    /// `P_2 --a--> P_1` in degrees -1, 0.
    pub(crate) fn p2_to_p1(alg: &AlgebraTable) -> ProjComplex {
        let mut d = AlgMatrix::zeros(alg, vec![0], vec![1]);
        d.set(0, 0, alg.arrow_element(0));
        ProjComplex::new(alg, -1, vec![vec![1], vec![0]], vec![d]).unwrap()
    }

    #[test]
    fn h0_and_g_vector_of_simple_presentation() {
        let alg = a2();
        let x = p2_to_p1(&alg);
        assert_eq!(h0(&alg, &x).unwrap().dims(), &[1, 0]);
        assert_eq!(g_vector(&alg, &x).unwrap(), vec![1, -1]);
        assert_eq!(hom_dim(&alg, &x, &x, 1).unwrap(), 0);
        assert_eq!(hom_dim(&alg, &x, &x, 0).unwrap(), 1);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let alg = a2();
        let x = p2_to_p1(&alg);
        let c = cone(&alg, &x, &x, &ChainMap::identity(&alg, &x));
        assert_eq!(c.size(), 4);
        assert!(minimize(&alg, &c).is_zero());
    }

    #[test]
    fn bad_complexes_rejected() {
        let alg = a2();
        let mut d = AlgMatrix::zeros(&alg, vec![1], vec![0]);
        d.set(0, 0, alg.arrow_element(0));
        assert!(matches!(ProjComplex::new(&alg, 0, vec![vec![0], vec![1]], vec![d]), Err(Error::InvalidComplex(_))));
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let dual = build_algebra(&AlgebraPresentation::new(q, vec![Relation::new(vec![(1, vec![0, 0, 0])])])).unwrap();
        let mut x = AlgMatrix::zeros(&dual, vec![0], vec![0]);
        x.set(0, 0, dual.arrow_element(0));
        let err = ProjComplex::new(&dual, 0, vec![vec![0]; 3], vec![x.clone(), x]);
        assert!(matches!(err, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn shift_and_hom_between_stalks() {
        let alg = a2();
        let p1 = ProjComplex::stalk(&[0], 0);
        let p2 = ProjComplex::stalk(&[1], 0);
        // Hom(P_c, P_r) = e_r Λ e_c
        assert_eq!(hom_dim(&alg, &p2, &p1, 0).unwrap(), 1);
        assert_eq!(hom_dim(&alg, &p1, &p2, 0).unwrap(), 0);
        assert_eq!(hom_dim(&alg, &p1, &p1, 1).unwrap(), 0);
        assert_eq!(p1.shift(&alg, 1).lo(), -1);
        let x = p2_to_p1(&alg);
        // Hom(Λ, X[p]) = H^p(X)
        let lam = ProjComplex::regular(&alg);
        for p in -2..=1 {
            let h: usize = cohomology_dims(&alg, &x, p).iter().sum();
            assert_eq!(hom_dim(&alg, &lam, &x, p).unwrap(), h);
        }
    }

    #[test]
    fn decomposition_of_sum() {
        let alg = a2();
        let x = p2_to_p1(&alg);
        let s = ProjComplex::direct_sum(&alg, &[&x, &ProjComplex::stalk(&[1], 0), &x]);
        let parts = decompose_complex(&alg, &s).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts.iter().filter(|p| is_isomorphic(&alg, p, &x).unwrap()).count(), 2);
        assert!(matches!(
            decompose_complex(&alg, &cone(&alg, &x, &x, &ChainMap::identity(&alg, &x))),
            Err(Error::NotMinimized)
        ));
    }

    #[test]
    fn positive_degree_and_support_errors() {
        let alg = a2();
        let x = ProjComplex::stalk(&[0], 1);
        assert_eq!(h0(&alg, &x).unwrap_err(), Error::PositiveDegreePart);
        assert_eq!(g_vector(&alg, &ProjComplex::stalk(&[0], -2)).unwrap_err(), Error::WrongSupport);
    }
}
