#![allow(dead_code)]

use std::path::PathBuf;

use siltkit::algebra::{build_algebra, AlgebraTable};
use siltkit::homotopy::{cohomology_dims, cone, hom_dim, hom_space, is_isomorphic, minimize, ProjComplex};
use siltkit::io::parse_algebra;
use siltkit::rep::{indecomposables, Module};
use siltkit::silting::{
    geq, initial_silting, interval_membership, is_presilting, mutate, same_object, Direction, SiltingObject,
};
use siltkit::tau_tilt::{fac_closure, Closures};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/algebras").join(format!("{name}.json"))
}

pub fn load(name: &str) -> AlgebraTable {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    build_algebra(&parse_algebra(&text).unwrap()).unwrap()
}

/// Representation-finite corpus algebras with a full indecomposable list.
pub const FINITE: [&str; 6] = ["a2", "a3", "dual_numbers", "preproj_a2", "jacobian_3cycle", "semisimple2"];

pub struct Setup {
    pub alg: AlgebraTable,
    pub indecs: Vec<Module>,
    pub closures: Closures,
}

pub fn setup(name: &str) -> Setup {
    let alg = load(name);
    let indecs = indecomposables(&alg, 30).unwrap().modules;
    let closures = Closures::new(&alg, &indecs).unwrap();
    Setup { alg, indecs, closures }
}

/// Follow a mutation path from `Λ`; summand indices are taken modulo the
/// number of summands.
pub fn walk(alg: &AlgebraTable, steps: &[(usize, bool)]) -> SiltingObject {
    let mut m = initial_silting(alg);
    for &(i, left) in steps {
        let dir = if left { Direction::Left } else { Direction::Right };
        m = mutate(alg, &m, i % m.len(), dir).unwrap();
    }
    m
}

/// Index of the summand of `n` that has no isomorphic copy in `m`.
pub fn new_summand(alg: &AlgebraTable, m: &SiltingObject, n: &SiltingObject) -> usize {
    n.summands()
        .iter()
        .position(|y| !m.summands().iter().any(|x| is_isomorphic(alg, x, y).unwrap()))
        .expect("mutation changes one summand")
}

/// Exact integer determinant by fraction-free elimination.
pub fn det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * if n == 0 { 1 } else { a[n - 1][n - 1] }
}

/// Mutation-path properties that hold for every silting object.
pub fn check_object(alg: &AlgebraTable, m: &SiltingObject, summand: usize) -> Result<(), String> {
    let n = alg.num_vertices();
    if m.len() != n {
        return Err(format!("{} summands, expected {n}", m.len()));
    }
    if !is_presilting(alg, m.complex()).unwrap() {
        return Err("not presilting".into());
    }
    let g = m.k0_key(n);
    if det(g.clone()).abs() != 1 {
        return Err(format!("g-vectors {g:?} are not unimodular"));
    }
    let i = summand % m.len();
    let left = mutate(alg, m, i, Direction::Left).unwrap();
    let j = new_summand(alg, m, &left);
    let back = mutate(alg, &left, j, Direction::Right).unwrap();
    if !same_object(alg, &back, m).unwrap() {
        return Err(format!("right mutation does not undo left mutation at {i}"));
    }
    if !geq(alg, m, &left).unwrap() || geq(alg, &left, m).unwrap() {
        return Err("left mutation is not strictly smaller".into());
    }
    if !is_presilting(alg, left.complex()).unwrap() || left.len() != n {
        return Err("left mutation lost presilting or summand count".into());
    }
    Ok(())
}

/// `dim Hom(Λ, X[p]) = dim H^p(X)` in every degree around the support.
pub fn check_cohomology(alg: &AlgebraTable, x: &ProjComplex) -> Result<(), String> {
    let lam = ProjComplex::regular(alg);
    for p in x.lo() - 1..=x.hi() + 1 {
        let h: usize = cohomology_dims(alg, x, p).iter().sum();
        let hom = hom_dim(alg, &lam, x, p).unwrap();
        if h != hom {
            return Err(format!("degree {p}: H^p has dimension {h}, Hom(Λ, X[p]) has {hom}"));
        }
    }
    Ok(())
}

/// Minimizing the cone of a map between two summands is idempotent and
/// keeps the homotopy type.
pub fn check_minimize(alg: &AlgebraTable, a: &ProjComplex, b: &ProjComplex, coeffs: &[u32]) -> Result<(), String> {
    let h = hom_space(alg, a, b).unwrap();
    let c: Vec<u32> = (0..h.dim()).map(|k| coeffs.get(k).copied().unwrap_or(1) % alg.field().char()).collect();
    let f = h.combine(alg, &c);
    let x = cone(alg, a, b, &f);
    let m = minimize(alg, &x);
    if !m.is_minimal(alg) {
        return Err("minimize output is not minimal".into());
    }
    if minimize(alg, &m) != m {
        return Err("minimize is not idempotent".into());
    }
    if m.size() > x.size() {
        return Err("minimize grew the complex".into());
    }
    for p in x.lo()..=x.hi() {
        if cohomology_dims(alg, &x, p) != cohomology_dims(alg, &m, p) {
            return Err(format!("cohomology changed in degree {p}"));
        }
    }
    Ok(())
}

/// `Fac(H⁰N)` of a 2-term object passes both closure checks and coincides
/// with one of the brute-force torsion classes.
pub fn check_torsion(s: &Setup, m: &SiltingObject, tors: &[siltkit::tau_tilt::TorsionClassSet]) -> Result<(), String> {
    let alg = &s.alg;
    if !interval_membership(alg, m, &initial_silting(alg), 0, 1).unwrap() {
        return Ok(());
    }
    let h = siltkit::homotopy::h0(alg, m.complex()).unwrap();
    let t = fac_closure(alg, &h, &s.indecs, &s.closures).map_err(|e| e.to_string())?;
    if !tors.contains(&t) {
        return Err(format!("Fac(H0) = {:?} is not a brute-force torsion class", t.members));
    }
    Ok(())
}

/// `M ≥ N` and `N ≥ M` only for isomorphic objects.
pub fn check_antisymmetry(alg: &AlgebraTable, m: &SiltingObject, n: &SiltingObject) -> Result<(), String> {
    let both = geq(alg, m, n).unwrap() && geq(alg, n, m).unwrap();
    if both != same_object(alg, m, n).unwrap() {
        return Err(format!("geq both ways is {both} but isomorphism is {}", !both));
    }
    Ok(())
}
