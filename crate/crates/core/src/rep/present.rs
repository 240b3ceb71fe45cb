//! Projective covers, minimal presentations, the Nakayama functor and the
//! Auslander–Reiten translate.

use super::{kernel, radical_vectors, Module, ModuleHom};
use crate::algebra::AlgebraTable;
use crate::algmat::AlgMatrix;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// `⊕_g P_{labels[g]}`. At vertex `w` the coordinates are the blocks
/// `paths(labels[g], w)` in label order.
pub fn projective_sum(alg: &AlgebraTable, labels: &[usize]) -> Module {
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|w| labels.iter().map(|&g| alg.paths(g, w).len()).sum()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let ab = alg.arrow_basis(ai);
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for &g in labels {
                for (col, &p) in alg.paths(g, a.source).iter().enumerate() {
                    for &(k, c) in alg.mul_basis(p, ab) {
                        m.set(r0 + alg.slot(k), c0 + col, c);
                    }
                }
                r0 += alg.paths(g, a.target).len();
                c0 += alg.paths(g, a.source).len();
            }
            m
        })
        .collect();
    Module::from_parts(dims, maps)
}

/// `⊕_g D(Λ e_{labels[g]})`. At vertex `j` the block for `g` is dual to
/// `paths(j, labels[g])`.
pub fn injective_sum(alg: &AlgebraTable, labels: &[usize]) -> Module {
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|j| labels.iter().map(|&c| alg.paths(j, c).len()).sum()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let ab = alg.arrow_basis(ai);
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for &c in labels {
                // (φ·a)(x) = φ(a·x)
                for (row, &x) in alg.paths(a.target, c).iter().enumerate() {
                    for &(k, coef) in alg.mul_basis(ab, x) {
                        m.set(r0 + row, c0 + alg.slot(k), coef);
                    }
                }
                r0 += alg.paths(a.target, c).len();
                c0 += alg.paths(a.source, c).len();
            }
            m
        })
        .collect();
    Module::from_parts(dims, maps)
}

/// The module map `projective_sum(cols) -> projective_sum(rows)` given by
/// left multiplication with the entries of `m`.
pub fn algmat_to_hom(alg: &AlgebraTable, m: &AlgMatrix) -> ModuleHom {
    let nv = alg.num_vertices();
    let maps = (0..nv)
        .map(|w| {
            let rdim: usize = m.rows.iter().map(|&r| alg.paths(r, w).len()).sum();
            let cdim: usize = m.cols.iter().map(|&c| alg.paths(c, w).len()).sum();
            let mut out = Matrix::zeros(rdim, cdim);
            let mut c0 = 0;
            for (ci, &c) in m.cols.iter().enumerate() {
                let mut r0 = 0;
                for (ri, &r) in m.rows.iter().enumerate() {
                    let lambda = m.get(ri, ci);
                    for (u, &lu) in lambda.iter().enumerate() {
                        if lu == 0 {
                            continue;
                        }
                        for (col, &p) in alg.paths(c, w).iter().enumerate() {
                            for &(k, coef) in alg.mul_basis(u, p) {
                                let i = r0 + alg.slot(k);
                                let v = alg.field().add(out.get(i, c0 + col), alg.field().mul(lu, coef));
                                out.set(i, c0 + col, v);
                            }
                        }
                    }
                    r0 += alg.paths(r, w).len();
                }
                c0 += alg.paths(c, w).len();
            }
            out
        })
        .collect();
    ModuleHom { maps }
}

/// The Nakayama functor on a map of projectives: `ν(m)` from
/// `injective_sum(cols)` to `injective_sum(rows)`.
pub fn nakayama_map(alg: &AlgebraTable, m: &AlgMatrix) -> ModuleHom {
    let f = alg.field();
    let nv = alg.num_vertices();
    let maps = (0..nv)
        .map(|j| {
            let rdim: usize = m.rows.iter().map(|&r| alg.paths(j, r).len()).sum();
            let cdim: usize = m.cols.iter().map(|&c| alg.paths(j, c).len()).sum();
            let mut out = Matrix::zeros(rdim, cdim);
            let mut r0 = 0;
            for (ri, &r) in m.rows.iter().enumerate() {
                let mut c0 = 0;
                for (ci, &c) in m.cols.iter().enumerate() {
                    let lambda = m.get(ri, ci);
                    // entry (γ, p) is the coefficient of p in γ·λ
                    for (row, &gamma) in alg.paths(j, r).iter().enumerate() {
                        for (u, &lu) in lambda.iter().enumerate() {
                            if lu == 0 {
                                continue;
                            }
                            for &(k, coef) in alg.mul_basis(gamma, u) {
                                let col = c0 + alg.slot(k);
                                let v = f.add(out.get(r0 + row, col), f.mul(lu, coef));
                                out.set(r0 + row, col, v);
                            }
                        }
                    }
                    c0 += alg.paths(j, c).len();
                }
                r0 += alg.paths(j, r).len();
            }
            out
        })
        .collect();
    ModuleHom { maps }
}

/// Top generators of `m`: for each vertex, standard basis vectors spanning a
/// complement of the radical.
fn top_generators(alg: &AlgebraTable, m: &Module) -> Vec<(usize, Vec<u32>)> {
    let f = alg.field();
    let rad = radical_vectors(alg, m);
    let mut gens = Vec::new();
    for (v, vs) in rad.iter().enumerate() {
        let mut s = Subspace::new(f, m.dims()[v]);
        for x in vs {
            s.insert(x);
        }
        for j in 0..m.dims()[v] {
            if !s.pivots().contains(&j) {
                let mut e = vec![0u32; m.dims()[v]];
                e[j] = 1;
                gens.push((v, e));
            }
        }
    }
    gens
}

/// Projective cover `projective_sum(labels) -> m`.
pub fn projective_cover(alg: &AlgebraTable, m: &Module) -> (Vec<usize>, ModuleHom) {
    let f = alg.field();
    let gens = top_generators(alg, m);
    let labels: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let acts = m.path_actions(alg);
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut cols = Vec::new();
            for (v, x) in &gens {
                for &p in alg.paths(*v, w) {
                    cols.push(acts[p].apply(f, x));
                }
            }
            Matrix::from_columns(m.dims()[w], &cols)
        })
        .collect();
    (labels, ModuleHom { maps })
}

/// A minimal projective presentation `P1 --d--> P0 --cover--> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    /// rows labelled by `p0`, columns by `p1`
    pub d: AlgMatrix,
    pub cover: ModuleHom,
    /// `ker(cover)` with its inclusion into `P0`
    pub syzygy: Module,
    pub syzygy_incl: ModuleHom,
}

pub fn min_proj_presentation(alg: &AlgebraTable, m: &Module) -> Result<Presentation> {
    m.compatible(alg)?;
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let (p0, cover) = projective_cover(alg, m);
    let p0_mod = projective_sum(alg, &p0);
    let (k, incl) = kernel(alg, &p0_mod, &cover);
    let gens = top_generators(alg, &k);
    let p1: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let mut d = AlgMatrix::zeros(alg, p0.clone(), p1.clone());
    for (h, (w, x)) in gens.iter().enumerate() {
        let y = incl.maps[*w].apply(alg.field(), x);
        let mut at = 0;
        for (g, &v) in p0.iter().enumerate() {
            let mut e = alg.zero();
            for &p in alg.paths(v, *w) {
                e[p] = y[at];
                at += 1;
            }
            d.set(g, h, e);
        }
    }
    Ok(Presentation { p0, p1, d, cover, syzygy: k, syzygy_incl: incl })
}

/// `τM = ker(ν P1 -> ν P0)`; zero for projective (and zero) modules.
pub fn tau(alg: &AlgebraTable, m: &Module) -> Result<Module> {
    m.compatible(alg)?;
    if m.is_zero() {
        return Ok(Module::zero(alg));
    }
    let pres = min_proj_presentation(alg, m)?;
    if pres.p1.is_empty() {
        return Ok(Module::zero(alg));
    }
    let nu = nakayama_map(alg, &pres.d);
    let source = injective_sum(alg, &pres.p1);
    Ok(kernel(alg, &source, &nu).0)
}

/// The vector-space dual, a module over the opposite algebra.
pub fn dual(m: &Module) -> Module {
    Module::from_parts(m.dims().to_vec(), m.maps().iter().map(|x| x.transpose()).collect())
}

/// `τ⁻¹ = D τ D`, computed over the opposite algebra.
pub fn tau_inverse(alg: &AlgebraTable, m: &Module) -> Result<Module> {
    tau_inverse_with(&alg.opposite(), m)
}

/// `τ⁻¹` with a precomputed opposite algebra.
pub fn tau_inverse_with(opposite: &AlgebraTable, m: &Module) -> Result<Module> {
    Ok(dual(&tau(opposite, &dual(m))?))
}

#[cfg(test)]
mod tests {
    use super::super::tests::{a2, dual_numbers};
    use super::super::{injective, is_projective, is_tau_rigid, projective, simple};
    use super::*;

    #[test]
    fn presentation_of_simple_over_a2() {
        let alg = a2();
        let s1 = simple(&alg, 0).unwrap();
        let pres = min_proj_presentation(&alg, &s1).unwrap();
        assert_eq!(pres.p0, vec![0]);
        assert_eq!(pres.p1, vec![1]);
        let a = alg.arrow_basis(0);
        assert_ne!(pres.d.get(0, 0)[a], 0);
        let p1 = projective(&alg, 0).unwrap();
        let pres = min_proj_presentation(&alg, &p1).unwrap();
        assert!(pres.p1.is_empty());
        assert_eq!(min_proj_presentation(&alg, &Module::zero(&alg)).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn presentation_over_dual_numbers() {
        let alg = dual_numbers();
        let s = simple(&alg, 0).unwrap();
        let pres = min_proj_presentation(&alg, &s).unwrap();
        assert_eq!((pres.p0.len(), pres.p1.len()), (1, 1));
        assert_eq!(tau(&alg, &s).unwrap(), s);
    }

    #[test]
    fn tau_over_a2() {
        let alg = a2();
        let s1 = simple(&alg, 0).unwrap();
        let s2 = simple(&alg, 1).unwrap();
        assert_eq!(tau(&alg, &s1).unwrap().dims(), &[0, 1]);
        for i in 0..2 {
            assert!(tau(&alg, &projective(&alg, i).unwrap()).unwrap().is_zero());
        }
        assert_eq!(tau_inverse(&alg, &s2).unwrap().dims(), &[1, 0]);
        assert!(tau_inverse(&alg, &injective(&alg, 0).unwrap()).unwrap().is_zero());
        assert!(is_tau_rigid(&alg, &s1).unwrap());
        let both = super::super::direct_sum(&alg, &[&s1, &s2]);
        assert!(!is_tau_rigid(&alg, &both).unwrap());
        assert!(is_projective(&alg, &projective(&alg, 0).unwrap()).unwrap());
        assert!(!is_projective(&alg, &s1).unwrap());
    }

    #[test]
    fn algmat_hom_matches_presentation() {
        let alg = a2();
        let s1 = simple(&alg, 0).unwrap();
        let pres = min_proj_presentation(&alg, &s1).unwrap();
        let h = algmat_to_hom(&alg, &pres.d);
        assert!(pres.cover.compose(alg.field(), &h).is_zero());
        assert_eq!(h.rank(alg.field()), 1);
    }
}
