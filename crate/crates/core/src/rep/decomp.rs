//! Krull–Schmidt decomposition via Fitting's lemma, and isomorphism tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, submodule, HomBasis, Module, ModuleHom};
use crate::algebra::AlgebraTable;
use crate::field::Fp;
use crate::linalg::Matrix;
use crate::poly::{coprime_factor, eval_matrix, lcm, matrix_minpoly};

const SPLIT_TRIALS: usize = 24;
const ISO_TRIALS: usize = 24;
const SEED: u64 = 0x51_17_2e_a1;

fn random_combination<R: Rng>(f: Fp, homs: &HomBasis, m: &Module, n: &Module, rng: &mut R) -> ModuleHom {
    let coeffs: Vec<u32> = (0..homs.dim()).map(|_| rng.gen_range(0..f.char())).collect();
    homs.combine(f, m, n, &coeffs)
}

fn matrix_power(f: Fp, m: &Matrix, e: usize) -> Matrix {
    let mut acc = Matrix::identity(m.rows());
    for _ in 0..e {
        acc = acc.mul(f, m);
    }
    acc
}

/// Try to split `m` using one endomorphism. Returns the two Fitting pieces.
fn fitting_split<R: Rng>(alg: &AlgebraTable, m: &Module, phi: &ModuleHom, rng: &mut R) -> Option<(Module, Module)> {
    let f = alg.field();
    let mu = phi.maps.iter().filter(|x| x.rows() > 0).fold(vec![1], |acc, x| lcm(f, &acc, &matrix_minpoly(f, x)));
    let g = coprime_factor(f, &mu, rng)?;
    let mut ker_gens = Vec::new();
    let mut im_gens = Vec::new();
    for x in &phi.maps {
        let gx = matrix_power(f, &eval_matrix(f, &g, x), x.rows());
        ker_gens.push(gx.kernel(f));
        im_gens.push((0..gx.cols()).map(|j| gx.column(j)).collect::<Vec<_>>());
    }
    let (k, _) = submodule(alg, m, &ker_gens);
    let (i, _) = submodule(alg, m, &im_gens);
    if k.is_zero() || i.is_zero() {
        return None;
    }
    Some((k, i))
}

fn split_into(alg: &AlgebraTable, m: Module, rng: &mut ChaCha8Rng, out: &mut Vec<Module>) {
    if m.is_zero() {
        return;
    }
    let f = alg.field();
    let end = hom_space(alg, &m, &m).expect("module over this algebra");
    if end.dim() > 1 {
        for _ in 0..SPLIT_TRIALS {
            let phi = random_combination(f, &end, &m, &m, rng);
            if let Some((a, b)) = fitting_split(alg, &m, &phi, rng) {
                split_into(alg, a, rng, out);
                split_into(alg, b, rng, out);
                return;
            }
        }
    }
    out.push(m);
}

fn sort_key(m: &Module) -> (Vec<usize>, Vec<Vec<u32>>) {
    (m.dims().to_vec(), m.maps().iter().map(|x| x.data().to_vec()).collect())
}

/// Indecomposable summands of `m` (with repetition), in a deterministic order.
pub fn decompose(alg: &AlgebraTable, m: &Module) -> Vec<Module> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    split_into(alg, m.clone(), &mut rng, &mut out);
    out.sort_by_key(sort_key);
    out
}

/// Summands grouped up to isomorphism, each with its multiplicity.
pub fn decompose_multiset(alg: &AlgebraTable, m: &Module) -> Vec<(Module, usize)> {
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for s in decompose(alg, m) {
        match groups.iter_mut().find(|(g, _)| is_isomorphic(alg, g, &s)) {
            Some((_, k)) => *k += 1,
            None => groups.push((s, 1)),
        }
    }
    groups
}

/// Randomized isomorphism test: look for an invertible element of `Hom(m, n)`.
/// A `true` answer is always correct.
pub fn is_isomorphic(alg: &AlgebraTable, m: &Module, n: &Module) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m == n || m.is_zero() {
        return true;
    }
    let f = alg.field();
    let homs = match hom_space(alg, m, n) {
        Ok(h) if h.dim() > 0 => h,
        _ => return false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1);
    (0..ISO_TRIALS).any(|_| random_combination(f, &homs, m, n, &mut rng).is_invertible(f))
}

/// Radical of a matrix algebra acting block-diagonally, given by a basis
/// whose elements are lists of square blocks. Each block contributes the
/// trace form `tr(xy)` on that block and the radical is the common null
/// space. This is exact as long as every simple module of the algebra
/// occurs in some block with multiplicity prime to the characteristic;
/// summing the forms instead would fail as soon as a total multiplicity is
/// divisible by it.
pub fn radical_basis(f: Fp, basis: &[Vec<Matrix>]) -> Vec<Vec<u32>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let nblocks = basis[0].len();
    let mut rows = Vec::new();
    for b in 0..nblocks {
        if basis[0][b].rows() == 0 {
            continue;
        }
        for i in 0..k {
            rows.push((0..k).map(|j| trace_of_product(f, &basis[i][b], &basis[j][b])).collect::<Vec<u32>>());
        }
    }
    if rows.is_empty() {
        return (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
    }
    Matrix::from_rows(rows.len(), k, rows.concat()).kernel(f)
}

/// Radical of `End(m)` given a basis of it.
pub(crate) fn end_radical(alg: &AlgebraTable, m: &Module, end: &HomBasis) -> Vec<ModuleHom> {
    let f = alg.field();
    let blocks: Vec<Vec<Matrix>> = end.basis.iter().map(|h| h.maps.clone()).collect();
    radical_basis(f, &blocks).iter().map(|c| end.combine(f, m, m, c)).collect()
}

fn trace_of_product(f: Fp, a: &Matrix, b: &Matrix) -> u32 {
    let p = f.char() as u64;
    let n = a.rows();
    let mut acc = 0u64;
    for i in 0..n {
        for j in 0..a.cols() {
            acc = (acc + a.get(i, j) as u64 * b.get(j, i) as u64) % p;
        }
    }
    acc as u32
}
