//! `Ext¹(A, B) = Hom(ΩA, B) / {h∘ι}` and middle terms of extensions.

use super::decomp::end_radical;
use super::{cokernel, direct_sum, hom_space, is_isomorphic, min_proj_presentation, projective_sum, Module, ModuleHom};
use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

const MAX_LINES: u64 = 20_000;

/// Extension classes of `A` by `B`, represented by maps `ΩA -> B`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    syzygy: Module,
    p0: Module,
    incl: ModuleHom,
    /// basis of a complement of the restricted maps
    pub classes: Vec<ModuleHom>,
    /// restricted maps followed by `classes`, for coordinates
    space: Subspace,
    restricted: usize,
}

impl ExtSpace {
    pub fn new(alg: &AlgebraTable, a: &Module, b: &Module) -> Result<Self> {
        a.compatible(alg)?;
        b.compatible(alg)?;
        let f = alg.field();
        if a.is_zero() || b.is_zero() {
            let z = Module::zero(alg);
            return Ok(ExtSpace {
                syzygy: z.clone(),
                p0: z.clone(),
                incl: ModuleHom::zero(&z, &z),
                classes: Vec::new(),
                space: Subspace::tracked(f, 0),
                restricted: 0,
            });
        }
        let pres = min_proj_presentation(alg, a)?;
        let p0 = projective_sum(alg, &pres.p0);
        let k = pres.syzygy;
        let incl = pres.syzygy_incl;
        let len: usize = k.dims().iter().zip(b.dims()).map(|(x, y)| x * y).sum();
        let mut space = Subspace::tracked(f, len);
        for h in hom_space(alg, &p0, b)?.basis {
            space.insert(&h.compose(f, &incl).flatten());
        }
        let restricted = space.dim();
        let mut classes = Vec::new();
        for xi in hom_space(alg, &k, b)?.basis {
            if space.insert(&xi.flatten()) {
                classes.push(xi);
            }
        }
        Ok(ExtSpace { syzygy: k, p0, incl, classes, space, restricted })
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Coordinates of a map `ΩA -> B` in the class basis.
    pub fn coords(&self, xi: &ModuleHom) -> Vec<u32> {
        let c = self.space.coords(&xi.flatten()).expect("map out of the syzygy");
        c[self.restricted..].to_vec()
    }

    pub fn class(&self, alg: &AlgebraTable, b: &Module, coeffs: &[u32]) -> ModuleHom {
        let f = alg.field();
        let mut acc = ModuleHom::zero(&self.syzygy, b);
        for (x, &c) in self.classes.iter().zip(coeffs) {
            acc = acc.add(f, &x.scale(f, c));
        }
        acc
    }

    /// Pushout of `0 -> ΩA -> P0` along `xi`.
    pub fn middle_term(&self, alg: &AlgebraTable, b: &Module, xi: &ModuleHom) -> Module {
        let f = alg.field();
        let sum = direct_sum(alg, &[&self.p0, b]);
        let minus = xi.scale(f, f.neg(1));
        let maps = self
            .incl
            .maps
            .iter()
            .zip(&minus.maps)
            .map(|(top, bottom)| {
                let mut m = Matrix::zeros(top.rows() + bottom.rows(), top.cols());
                for j in 0..top.cols() {
                    for i in 0..top.rows() {
                        m.set(i, j, top.get(i, j));
                    }
                    for i in 0..bottom.rows() {
                        m.set(top.rows() + i, j, bottom.get(i, j));
                    }
                }
                m
            })
            .collect();
        cokernel(alg, &sum, &ModuleHom { maps }).0
    }
}

pub fn ext_dim(alg: &AlgebraTable, a: &Module, b: &Module) -> Result<usize> {
    Ok(ExtSpace::new(alg, a, b)?.dim())
}

/// Middle terms `E` of `0 -> B -> E -> A -> 0`, one per line of `Ext¹(A, B)`
/// plus the split sequence, without repeated isomorphism classes.
pub fn ext_middle_terms(alg: &AlgebraTable, a: &Module, b: &Module) -> Result<Vec<Module>> {
    let f = alg.field();
    let ext = ExtSpace::new(alg, a, b)?;
    let d = ext.dim();
    let p = f.char() as u64;
    let lines = (0..d).try_fold(0u64, |acc, _| acc.checked_mul(p).and_then(|x| x.checked_add(1)));
    match lines {
        Some(n) if n <= MAX_LINES => {}
        _ => return Err(Error::TooManyExtensionClasses(d)),
    }
    let mut out = vec![direct_sum(alg, &[a, b])];
    for lead in 0..d {
        let rest = d - lead - 1;
        let mut tail = vec![0u32; rest];
        loop {
            let mut coeffs = vec![0u32; d];
            coeffs[lead] = 1;
            coeffs[lead + 1..].copy_from_slice(&tail);
            let e = ext.middle_term(alg, b, &ext.class(alg, b, &coeffs));
            if !out.iter().any(|x| is_isomorphic(alg, x, &e)) {
                out.push(e);
            }
            // next tail in base p
            let mut i = 0;
            while i < rest {
                tail[i] += 1;
                if tail[i] < f.char() {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
            if i == rest {
                break;
            }
        }
    }
    Ok(out)
}

/// Middle term of the almost split sequence `0 -> τX -> E -> X -> 0`, taken
/// from the socle of `Ext¹(X, τX)` under `End(τX)`.
pub(crate) fn almost_split_middle(alg: &AlgebraTable, x: &Module, y: &Module) -> Result<Option<Module>> {
    let f = alg.field();
    let ext = ExtSpace::new(alg, x, y)?;
    let d = ext.dim();
    if d == 0 {
        return Ok(None);
    }
    let end = hom_space(alg, y, y)?;
    let rad = end_radical(alg, y, &end);
    let mut rows: Vec<u32> = Vec::new();
    for r in &rad {
        let images: Vec<Vec<u32>> = ext.classes.iter().map(|xi| ext.coords(&r.compose(f, xi))).collect();
        for i in 0..d {
            rows.extend(images.iter().map(|c| c[i]));
        }
    }
    let socle = if rows.is_empty() {
        vec![{
            let mut e = vec![0u32; d];
            e[0] = 1;
            e
        }]
    } else {
        Matrix::from_rows(rows.len() / d, d, rows).kernel(f)
    };
    let Some(coeffs) = socle.first() else {
        return Ok(None);
    };
    Ok(Some(ext.middle_term(alg, y, &ext.class(alg, y, coeffs))))
}

#[cfg(test)]
mod tests {
    use super::super::tests::a2;
    use super::super::{projective, simple};
    use super::*;

    #[test]
    fn extensions_of_simples_over_a2() {
        let alg = a2();
        let s1 = simple(&alg, 0).unwrap();
        let s2 = simple(&alg, 1).unwrap();
        let p1 = projective(&alg, 0).unwrap();
        assert_eq!(ext_dim(&alg, &s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(&alg, &s2, &s1).unwrap(), 0);
        let terms = ext_middle_terms(&alg, &s1, &s2).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().any(|e| is_isomorphic(&alg, e, &p1)));
        assert!(terms.iter().any(|e| is_isomorphic(&alg, e, &direct_sum(&alg, &[&s1, &s2]))));
        assert_eq!(ext_middle_terms(&alg, &s2, &s1).unwrap().len(), 1);
        let zero = Module::zero(&alg);
        let only = ext_middle_terms(&alg, &zero, &s2).unwrap();
        assert_eq!(only.len(), 1);
        assert!(is_isomorphic(&alg, &only[0], &s2));
    }

    #[test]
    fn almost_split_sequence_of_a2() {
        let alg = a2();
        let s1 = simple(&alg, 0).unwrap();
        let s2 = simple(&alg, 1).unwrap();
        let e = almost_split_middle(&alg, &s1, &s2).unwrap().unwrap();
        assert_eq!(e.dims(), &[1, 1]);
    }
}
