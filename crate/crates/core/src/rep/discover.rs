//! Discovery of all indecomposable modules of a representation-finite
//! algebra by closing the projectives, injectives and simples under the
//! Auslander–Reiten translates and almost split sequences.

use super::ext::almost_split_middle;
use super::{
    decompose, injective, is_isomorphic, is_projective, mod_socle, projective, radical, simple, tau,
    tau_inverse_with, Module,
};
use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};

const MAX_INDECOMPOSABLES: usize = 400;

/// Result of a successful discovery run.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub modules: Vec<Module>,
    pub projective: Vec<bool>,
}

struct Pool<'a> {
    alg: &'a AlgebraTable,
    cap: usize,
    modules: Vec<Module>,
}

impl Pool<'_> {
    /// Add all indecomposable summands of `m`; errors when one is too big.
    fn absorb(&mut self, m: &Module) -> Result<()> {
        for s in decompose(self.alg, m) {
            if s.dim() > self.cap || self.modules.len() >= MAX_INDECOMPOSABLES {
                return Err(Error::CapExceeded(self.cap));
            }
            if !self.modules.iter().any(|x| is_isomorphic(self.alg, x, &s)) {
                self.modules.push(s);
            }
        }
        Ok(())
    }
}

/// Every indecomposable module of total dimension at most `dim_cap`, in
/// discovery order. Fails with `CapExceeded` when the closure produces a
/// larger indecomposable.
pub fn indecomposables(alg: &AlgebraTable, dim_cap: usize) -> Result<Discovery> {
    let n = alg.num_vertices();
    let opposite = alg.opposite();
    let mut pool = Pool { alg, cap: dim_cap, modules: Vec::new() };
    for i in 0..n {
        pool.absorb(&projective(alg, i)?)?;
    }
    for i in 0..n {
        pool.absorb(&simple(alg, i)?)?;
        pool.absorb(&injective(alg, i)?)?;
    }
    let mut done = 0;
    while done < pool.modules.len() {
        let y = pool.modules[done].clone();
        done += 1;
        let proj = is_projective(alg, &y)?;
        if proj {
            pool.absorb(&radical(alg, &y).0)?;
        } else {
            pool.absorb(&tau(alg, &y)?)?;
        }
        let x = tau_inverse_with(&opposite, &y)?;
        if x.is_zero() {
            pool.absorb(&mod_socle(alg, &y).0)?;
        } else {
            pool.absorb(&x)?;
            if let Some(e) = almost_split_middle(alg, &x, &y)? {
                pool.absorb(&e)?;
            }
        }
    }
    let projective = pool.modules.iter().map(|m| is_projective(alg, m)).collect::<Result<Vec<_>>>()?;
    Ok(Discovery { modules: pool.modules, projective })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{a2, dual_numbers};
    use super::*;
    use crate::algebra::{build_algebra, AlgebraPresentation, Quiver};

    #[test]
    fn counts_for_small_algebras() {
        assert_eq!(indecomposables(&a2(), 4).unwrap().modules.len(), 3);
        assert_eq!(indecomposables(&dual_numbers(), 4).unwrap().modules.len(), 2);
        let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let a3 = build_algebra(&AlgebraPresentation::path_algebra(q)).unwrap();
        assert_eq!(indecomposables(&a3, 6).unwrap().modules.len(), 6);
    }

    #[test]
    fn kronecker_exceeds_cap() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let k = build_algebra(&AlgebraPresentation::path_algebra(q)).unwrap();
        assert_eq!(indecomposables(&k, 6).unwrap_err(), Error::CapExceeded(6));
    }
}
