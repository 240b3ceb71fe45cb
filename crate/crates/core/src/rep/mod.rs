//! Finite-dimensional right modules, presented as representations of the
//! bound quiver: one vector space per vertex and one matrix per arrow.
//!
//! For an arrow `a: i -> j` the matrix `map(a)` has shape `dim_j x dim_i`
//! and sends `m` to `m·a`. Vectors of the whole module are laid out vertex
//! by vertex ("global coordinates").

mod decomp;
mod discover;
mod ext;
mod present;

pub use decomp::{decompose, decompose_multiset, is_isomorphic, radical_basis};
pub use discover::{indecomposables, Discovery};
pub use ext::{ext_dim, ext_middle_terms, ExtSpace};
pub use present::{
    algmat_to_hom, dual, injective_sum, min_proj_presentation, nakayama_map, projective_cover, projective_sum,
    tau, tau_inverse, tau_inverse_with, Presentation,
};

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Module {
    /// Build a module, checking matrix shapes and that every relation of the
    /// algebra acts by zero.
    pub fn new(alg: &AlgebraTable, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.arrows.len() {
            return Err(Error::AlgebraMismatch);
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let module = Module { dims, maps };
        module.check_relations(alg)?;
        Ok(module)
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module { dims, maps }
    }

    pub fn zero(alg: &AlgebraTable) -> Self {
        let q = alg.quiver();
        Module { dims: vec![0; q.num_vertices()], maps: vec![Matrix::zeros(0, 0); q.arrows.len()] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Start of vertex `v` in global coordinates.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub(crate) fn compatible(&self, alg: &AlgebraTable) -> Result<()> {
        if self.dims.len() != alg.num_vertices() || self.maps.len() != alg.quiver().arrows.len() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Action of a basis path as a `dim_target x dim_source` matrix.
    pub fn path_action(&self, alg: &AlgebraTable, b: usize) -> Matrix {
        let p = &alg.basis()[b];
        let mut acc = Matrix::identity(self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(alg.field(), &acc);
        }
        acc
    }

    /// Actions of every basis path.
    pub fn path_actions(&self, alg: &AlgebraTable) -> Vec<Matrix> {
        (0..alg.dim()).map(|b| self.path_action(alg, b)).collect()
    }

    fn check_relations(&self, alg: &AlgebraTable) -> Result<()> {
        let f = alg.field();
        let acts = self.path_actions(alg);
        for (ai, arrow) in alg.quiver().arrows.iter().enumerate() {
            let ab = alg.arrow_basis(ai);
            for u in 0..alg.dim() {
                if alg.basis()[u].target != arrow.source {
                    continue;
                }
                let lhs = self.maps[ai].mul(f, &acts[u]);
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for &(k, c) in alg.mul_basis(u, ab) {
                    rhs = rhs.add(f, &acts[k].scale(f, c));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "path {} times arrow {} is not respected",
                        alg.basis_label(u),
                        arrow.id
                    )));
                }
            }
        }
        Ok(())
    }

    /// Apply the arrow `a` to a vector at its source vertex.
    pub fn act(&self, alg: &AlgebraTable, a: usize, v: &[u32]) -> Vec<u32> {
        self.maps[a].apply(alg.field(), v)
    }
}

/// A module homomorphism: one `dim N_v x dim M_v` matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleHom {
    pub maps: Vec<Matrix>,
}

impl ModuleHom {
    pub fn zero(m: &Module, n: &Module) -> Self {
        ModuleHom { maps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleHom { maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: Fp, other: &ModuleHom) -> ModuleHom {
        ModuleHom { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(f, b)).collect() }
    }

    pub fn add(&self, f: Fp, other: &ModuleHom) -> ModuleHom {
        ModuleHom { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(f, b)).collect() }
    }

    pub fn scale(&self, f: Fp, c: u32) -> ModuleHom {
        ModuleHom { maps: self.maps.iter().map(|a| a.scale(f, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn rank(&self, f: Fp) -> usize {
        self.maps.iter().map(|m| m.rank(f)).sum()
    }

    pub fn is_invertible(&self, f: Fp) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && m.is_invertible(f))
    }

    /// Concatenated row-major entries.
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn unflatten(m: &Module, n: &Module, v: &[u32]) -> Self {
        let mut maps = Vec::with_capacity(m.dims.len());
        let mut at = 0;
        for (&a, &b) in m.dims.iter().zip(&n.dims) {
            maps.push(Matrix::from_rows(b, a, v[at..at + a * b].to_vec()));
            at += a * b;
        }
        ModuleHom { maps }
    }

    /// Apply to a vector in global coordinates.
    pub fn apply(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        let mut at = 0;
        for m in &self.maps {
            out.extend(m.apply(f, &v[at..at + m.cols()]));
            at += m.cols();
        }
        out
    }
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub basis: Vec<ModuleHom>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, f: Fp, m: &Module, n: &Module, coeffs: &[u32]) -> ModuleHom {
        let mut acc = ModuleHom::zero(m, n);
        for (h, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(f, &h.scale(f, c));
            }
        }
        acc
    }
}

/// Solve the commuting-square equations `N_a F_s = F_t M_a`.
pub fn hom_space(alg: &AlgebraTable, m: &Module, n: &Module) -> Result<HomBasis> {
    m.compatible(alg)?;
    n.compatible(alg)?;
    let f = alg.field();
    let nv = m.dims.len();
    let mut start = vec![0usize; nv + 1];
    for v in 0..nv {
        start[v + 1] = start[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = start[nv];
    if unknowns == 0 {
        return Ok(HomBasis { basis: Vec::new() });
    }
    let mut rows: Vec<u32> = Vec::new();
    let mut nrows = 0;
    for (ai, arrow) in alg.quiver().arrows.iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ms, mt, nt) = (m.dims[s], m.dims[t], n.dims[t]);
        let ns = n.dims[s];
        if ms == 0 || nt == 0 {
            continue;
        }
        let na = &n.maps[ai];
        let ma = &m.maps[ai];
        for i in 0..nt {
            for j in 0..ms {
                let mut row = vec![0u32; unknowns];
                // (N_a F_s)[i, j] = sum_k N_a[i, k] F_s[k, j]
                for k in 0..ns {
                    let c = na.get(i, k);
                    if c != 0 {
                        let idx = start[s] + k * ms + j;
                        row[idx] = f.add(row[idx], c);
                    }
                }
                // (F_t M_a)[i, j] = sum_l F_t[i, l] M_a[l, j]
                for l in 0..mt {
                    let c = ma.get(l, j);
                    if c != 0 {
                        let idx = start[t] + i * mt + l;
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                rows.extend(row);
                nrows += 1;
            }
        }
    }
    let kernel = if nrows == 0 {
        (0..unknowns)
            .map(|i| {
                let mut v = vec![0u32; unknowns];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(nrows, unknowns, rows).kernel(f)
    };
    Ok(HomBasis { basis: kernel.iter().map(|v| ModuleHom::unflatten(m, n, v)).collect() })
}

pub fn hom_dim(alg: &AlgebraTable, m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(alg, m, n)?.dim())
}

/// `P_i = e_i Λ`, with basis the normal-form paths starting at `i`.
pub fn projective(alg: &AlgebraTable, i: usize) -> Result<Module> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    Ok(projective_sum(alg, &[i]))
}

/// `I_i = D(Λ e_i)`.
pub fn injective(alg: &AlgebraTable, i: usize) -> Result<Module> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    Ok(injective_sum(alg, &[i]))
}

pub fn simple(alg: &AlgebraTable, i: usize) -> Result<Module> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let mut dims = vec![0; alg.num_vertices()];
    dims[i] = 1;
    let maps = alg.quiver().arrows.iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    Ok(Module { dims, maps })
}

pub fn direct_sum(alg: &AlgebraTable, parts: &[&Module]) -> Module {
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut out = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for m in parts {
                let x = &m.maps[ai];
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        out.set(r0 + r, c0 + c, x.get(r, c));
                    }
                }
                r0 += x.rows();
                c0 += x.cols();
            }
            out
        })
        .collect();
    Module { dims, maps }
}

/// Submodule generated by the given vectors (per vertex, in local
/// coordinates) together with its inclusion.
pub fn submodule(alg: &AlgebraTable, m: &Module, gens: &[Vec<Vec<u32>>]) -> (Module, ModuleHom) {
    let f = alg.field();
    let nv = m.dims.len();
    let mut spaces: Vec<Subspace> = (0..nv).map(|v| Subspace::tracked(f, m.dims[v])).collect();
    let mut basis: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nv];
    let mut queue: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, vs) in gens.iter().enumerate() {
        for x in vs {
            queue.push((v, x.clone()));
        }
    }
    while let Some((v, x)) = queue.pop() {
        if !spaces[v].insert(&x) {
            continue;
        }
        for (ai, a) in alg.quiver().arrows.iter().enumerate() {
            if a.source == v {
                queue.push((a.target, m.act(alg, ai, &x)));
            }
        }
        basis[v].push(x);
    }
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let cols: Vec<Vec<u32>> = basis[a.source]
                .iter()
                .map(|x| spaces[a.target].coords(&m.act(alg, ai, x)).expect("submodule is closed"))
                .collect();
            Matrix::from_columns(dims[a.target], &cols)
        })
        .collect();
    let incl = ModuleHom { maps: (0..nv).map(|v| Matrix::from_columns(m.dims[v], &basis[v])).collect() };
    (Module { dims, maps }, incl)
}

/// Quotient by the submodule spanned by the given vectors (which must already
/// be closed under the arrows), with the projection.
pub fn quotient(alg: &AlgebraTable, m: &Module, sub: &[Vec<Vec<u32>>]) -> (Module, ModuleHom) {
    let f = alg.field();
    let nv = m.dims.len();
    let mut projections = Vec::with_capacity(nv);
    let mut free: Vec<Vec<usize>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut s = Subspace::new(f, m.dims[v]);
        for x in &sub[v] {
            s.insert(x);
        }
        let nonpivot: Vec<usize> = (0..m.dims[v]).filter(|j| !s.pivots().contains(j)).collect();
        let cols: Vec<Vec<u32>> = (0..m.dims[v])
            .map(|j| {
                let mut e = vec![0u32; m.dims[v]];
                e[j] = 1;
                s.reduce(&mut e);
                nonpivot.iter().map(|&k| e[k]).collect()
            })
            .collect();
        projections.push(Matrix::from_columns(nonpivot.len(), &cols));
        free.push(nonpivot);
    }
    let dims: Vec<usize> = free.iter().map(|x| x.len()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let full = projections[a.target].mul(f, &m.maps[ai]);
            let cols: Vec<Vec<u32>> = free[a.source].iter().map(|&j| full.column(j)).collect();
            Matrix::from_columns(dims[a.target], &cols)
        })
        .collect();
    (Module { dims, maps }, ModuleHom { maps: projections })
}

pub fn kernel(alg: &AlgebraTable, m: &Module, h: &ModuleHom) -> (Module, ModuleHom) {
    let gens: Vec<Vec<Vec<u32>>> = h.maps.iter().map(|x| x.kernel(alg.field())).collect();
    submodule(alg, m, &gens)
}

/// Image of `h: M -> N` as a submodule of `N`.
pub fn image(alg: &AlgebraTable, n: &Module, h: &ModuleHom) -> (Module, ModuleHom) {
    submodule(alg, n, &columns(h))
}

pub fn cokernel(alg: &AlgebraTable, n: &Module, h: &ModuleHom) -> (Module, ModuleHom) {
    quotient(alg, n, &columns(h))
}

fn columns(h: &ModuleHom) -> Vec<Vec<Vec<u32>>> {
    h.maps.iter().map(|x| (0..x.cols()).map(|j| x.column(j)).collect()).collect()
}

/// `rad M`: the sum of the images of all arrows, per vertex.
pub fn radical_vectors(alg: &AlgebraTable, m: &Module) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![Vec::new(); m.dims.len()];
    for (ai, a) in alg.quiver().arrows.iter().enumerate() {
        let x = &m.maps[ai];
        for j in 0..x.cols() {
            out[a.target].push(x.column(j));
        }
    }
    out
}

pub fn radical(alg: &AlgebraTable, m: &Module) -> (Module, ModuleHom) {
    submodule(alg, m, &radical_vectors(alg, m))
}

/// `M / soc M`, where the socle at `v` is the joint kernel of the arrows
/// leaving `v`.
pub fn mod_socle(alg: &AlgebraTable, m: &Module) -> (Module, ModuleHom) {
    let f = alg.field();
    let soc: Vec<Vec<Vec<u32>>> = (0..m.dims.len())
        .map(|v| {
            let outgoing: Vec<usize> =
                alg.quiver().arrows.iter().enumerate().filter(|(_, a)| a.source == v).map(|(i, _)| i).collect();
            let rows: usize = outgoing.iter().map(|&a| m.maps[a].rows()).sum();
            if rows == 0 {
                return (0..m.dims[v])
                    .map(|j| {
                        let mut e = vec![0u32; m.dims[v]];
                        e[j] = 1;
                        e
                    })
                    .collect();
            }
            let data: Vec<u32> = outgoing.iter().flat_map(|&a| m.maps[a].data().iter().copied()).collect();
            Matrix::from_rows(rows, m.dims[v], data).kernel(f)
        })
        .collect();
    quotient(alg, m, &soc)
}

/// True when `x` is a quotient of a direct sum of copies of `m`, i.e. the
/// trace of `m` in `x` is all of `x`.
pub fn in_fac(alg: &AlgebraTable, x: &Module, m: &Module) -> Result<bool> {
    let f = alg.field();
    let homs = hom_space(alg, m, x)?;
    for v in 0..x.dims.len() {
        let mut s = Subspace::new(f, x.dims[v]);
        for h in &homs.basis {
            for j in 0..h.maps[v].cols() {
                s.insert(&h.maps[v].column(j));
            }
        }
        if s.dim() < x.dims[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_tau_rigid(alg: &AlgebraTable, m: &Module) -> Result<bool> {
    let t = tau(alg, m)?;
    Ok(hom_dim(alg, m, &t)? == 0)
}

pub fn is_projective(alg: &AlgebraTable, m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    Ok(min_proj_presentation(alg, m)?.p1.is_empty())
}
