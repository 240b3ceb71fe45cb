//! Support τ-tilting pairs and torsion classes as module-side views of
//! 2-term silting objects, with an exhaustive torsion-class oracle.

use rayon::prelude::*;

use crate::algebra::AlgebraTable;
use crate::algmat::AlgMatrix;
use crate::error::{Error, Result};
use crate::homotopy::{h0, ProjComplex};
use crate::rep::{
    decompose, direct_sum, ext_middle_terms, hom_dim, in_fac, indecomposables, is_isomorphic, is_tau_rigid,
    min_proj_presentation, simple, Module,
};
use crate::silting::{initial_silting, interval_membership, mutate_set, two_silt_interval, Direction, SiltingObject};

const MAX_BRUTE_FORCE: usize = 12;

#[derive(Clone, Debug)]
pub struct SupportTauTiltingPair {
    /// Pairwise non-isomorphic indecomposable summands of `M`.
    pub summands: Vec<Module>,
    /// Vertices `i` with `P_i` in the projective part.
    pub killed: Vec<usize>,
}

impl SupportTauTiltingPair {
    pub fn module(&self, alg: &AlgebraTable) -> Module {
        direct_sum(alg, &self.summands.iter().collect::<Vec<_>>())
    }
}

fn basic_summands(alg: &AlgebraTable, parts: impl IntoIterator<Item = Module>) -> Vec<Module> {
    let mut out: Vec<Module> = Vec::new();
    for s in parts {
        if !out.iter().any(|x| is_isomorphic(alg, x, &s)) {
            out.push(s);
        }
    }
    out
}

/// `(H⁰(N), {i : P_i[1] is a summand})` for `N` in the 2-term interval of `Λ`.
pub fn pair_from_silting(alg: &AlgebraTable, n: &SiltingObject) -> Result<SupportTauTiltingPair> {
    if !interval_membership(alg, n, &initial_silting(alg), 0, 1)? {
        return Err(Error::NotTwoTerm);
    }
    let mut killed = Vec::new();
    let mut parts = Vec::new();
    for s in n.summands() {
        if s.lo() == -1 && s.hi() == -1 && s.term(-1).len() == 1 {
            killed.push(s.term(-1)[0]);
        } else {
            parts.extend(decompose(alg, &h0(alg, s)?));
        }
    }
    killed.sort_unstable();
    Ok(SupportTauTiltingPair { summands: basic_summands(alg, parts), killed })
}

/// Minimal presentation of `M` plus the stalks `P_i[1]`.
pub fn silting_from_pair(alg: &AlgebraTable, pair: &SupportTauTiltingPair) -> Result<ProjComplex> {
    let mut parts = Vec::new();
    for m in &pair.summands {
        let p = min_proj_presentation(alg, m)?;
        parts.push(ProjComplex::new(alg, -1, vec![p.p1.clone(), p.p0.clone()], vec![p.d.clone()])?);
    }
    for &i in &pair.killed {
        parts.push(ProjComplex::stalk(&[i], -1));
    }
    Ok(ProjComplex::direct_sum(alg, &parts.iter().collect::<Vec<_>>()))
}

pub fn is_stt_pair(alg: &AlgebraTable, pair: &SupportTauTiltingPair) -> Result<bool> {
    let m = pair.module(alg);
    if !is_tau_rigid(alg, &m)? {
        return Ok(false);
    }
    if pair.killed.iter().any(|&i| i >= alg.num_vertices() || m.dims()[i] != 0) {
        return Ok(false);
    }
    let mut k = pair.killed.clone();
    k.sort_unstable();
    k.dedup();
    let basic = basic_summands(alg, pair.summands.iter().flat_map(|s| decompose(alg, s)));
    Ok(basic.len() == pair.summands.len() && basic.len() + k.len() == alg.num_vertices())
}

/// A torsion class, as the sorted indices of its indecomposables in a fixed
/// list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClassSet {
    pub members: Vec<usize>,
}

impl TorsionClassSet {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_superset(&self, other: &TorsionClassSet) -> bool {
        other.members.iter().all(|&i| self.contains(i))
    }
}

/// Position of a module in the indecomposable list.
pub fn index_in(alg: &AlgebraTable, indecs: &[Module], m: &Module) -> Option<usize> {
    indecs.iter().position(|x| x.dims() == m.dims() && is_isomorphic(alg, x, m))
}

/// Closure data for a fixed indecomposable list.
pub struct Closures {
    /// `fac[i]`: bitmask of `j` with `X_j ∈ Fac(X_i)`
    pub fac: Vec<u64>,
    /// `ext[a][b]`: summands of middle terms of extensions of `X_a` by `X_b`
    pub ext: Vec<Vec<u64>>,
    /// `hom_zero[i]`: bitmask of `j` with `Hom(X_i, X_j) = 0`
    pub hom_zero: Vec<u64>,
}

impl Closures {
    pub fn new(alg: &AlgebraTable, indecs: &[Module]) -> Result<Self> {
        let n = indecs.len();
        if n > 64 {
            return Err(Error::TooManyIndecomposables(n));
        }
        let fac = indecs
            .par_iter()
            .map(|x| -> Result<u64> {
                let mut mask = 0u64;
                for (j, y) in indecs.iter().enumerate() {
                    if in_fac(alg, y, x)? {
                        mask |= 1 << j;
                    }
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        let ext = indecs
            .par_iter()
            .map(|a| -> Result<Vec<u64>> {
                indecs
                    .iter()
                    .map(|b| -> Result<u64> {
                        let mut mask = 0u64;
                        for e in ext_middle_terms(alg, a, b)? {
                            for s in decompose(alg, &e) {
                                let j = index_in(alg, indecs, &s)
                                    .ok_or_else(|| Error::NotClosed(format!("middle term summand {:?} not listed", s.dims())))?;
                                mask |= 1 << j;
                            }
                        }
                        Ok(mask)
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let hom_zero = indecs
            .par_iter()
            .map(|x| -> Result<u64> {
                let mut mask = 0u64;
                for (j, y) in indecs.iter().enumerate() {
                    if hom_dim(alg, x, y)? == 0 {
                        mask |= 1 << j;
                    }
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Closures { fac, ext, hom_zero })
    }

    pub fn quotient_closed(&self, set: u64) -> bool {
        bits(set).all(|i| self.fac[i] & !set == 0)
    }

    pub fn extension_closed(&self, set: u64) -> bool {
        bits(set).all(|a| bits(set).all(|b| self.ext[a][b] & !set == 0))
    }

    /// `T = ⊥(T⊥)`, computed from Hom vanishing between indecomposables.
    pub fn double_perp_closed(&self, set: u64) -> bool {
        let n = self.fac.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let perp = bits(set).fold(all, |acc, i| acc & self.hom_zero[i]);
        let back = (0..n).filter(|&i| self.hom_zero[i] & perp == perp).fold(0u64, |acc, i| acc | 1 << i);
        back == set
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn to_set(mask: u64) -> TorsionClassSet {
    TorsionClassSet { members: bits(mask).collect() }
}

/// Indecomposables of `indecs` in `Fac(M)`; checks that the result is
/// closed under quotients and extensions.
pub fn fac_closure(alg: &AlgebraTable, m: &Module, indecs: &[Module], closures: &Closures) -> Result<TorsionClassSet> {
    let mut mask = 0u64;
    if !m.is_zero() {
        for (i, x) in indecs.iter().enumerate() {
            if in_fac(alg, x, m)? {
                mask |= 1 << i;
            }
        }
    }
    if !closures.quotient_closed(mask) {
        return Err(Error::NotClosed("Fac(M) misses a quotient".into()));
    }
    if !closures.extension_closed(mask) {
        return Err(Error::NotClosed("Fac(M) misses an extension".into()));
    }
    Ok(to_set(mask))
}

/// Every subset of the list closed under quotients and extensions. Each
/// class found is also checked against the double-perpendicular criterion.
pub fn torsion_classes_bruteforce(closures: &Closures) -> Result<Vec<TorsionClassSet>> {
    let n = closures.fac.len();
    if n > MAX_BRUTE_FORCE {
        return Err(Error::TooManyIndecomposables(n));
    }
    let found: Vec<u64> = (0u64..1 << n)
        .into_par_iter()
        .filter(|&s| closures.quotient_closed(s) && closures.extension_closed(s))
        .collect();
    if let Some(bad) = found.iter().find(|&&s| !closures.double_perp_closed(s)) {
        return Err(Error::NotClosed(format!("class {:?} fails T = ⊥(T⊥)", to_set(*bad).members)));
    }
    Ok(found.into_iter().map(to_set).collect())
}

/// Pairwise non-isomorphic pairs of a list of 2-term silting objects.
pub fn pairs_of(alg: &AlgebraTable, objects: &[SiltingObject]) -> Result<Vec<SupportTauTiltingPair>> {
    let pairs = objects.par_iter().map(|n| pair_from_silting(alg, n)).collect::<Result<Vec<_>>>()?;
    let mut out: Vec<SupportTauTiltingPair> = Vec::new();
    for p in pairs {
        let dup = out.iter().any(|q| {
            q.killed == p.killed
                && q.summands.len() == p.summands.len()
                && is_isomorphic(alg, &q.module(alg), &p.module(alg))
        });
        if !dup {
            out.push(p);
        }
    }
    Ok(out)
}

/// Pairs from the 2-term interval of `Λ`, with the completeness flag of the
/// underlying search.
pub fn enumerate_stt(alg: &AlgebraTable, cap: usize) -> Result<(Vec<SupportTauTiltingPair>, bool)> {
    let iv = two_silt_interval(alg, &initial_silting(alg), cap)?;
    Ok((pairs_of(alg, &iv.objects)?, iv.complete))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauFiniteness {
    Finite(usize),
    Inconclusive(usize),
}

pub fn tau_tilting_finite(alg: &AlgebraTable, cap: usize) -> Result<TauFiniteness> {
    let (pairs, complete) = enumerate_stt(alg, cap)?;
    Ok(if complete { TauFiniteness::Finite(pairs.len()) } else { TauFiniteness::Inconclusive(cap) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    Failed,
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub silt2_count: usize,
    /// Not computed when the interval search is incomplete.
    pub stt_count: Option<usize>,
    /// Not computed when the indecomposables are not all known.
    pub tors_count: Option<usize>,
    pub status: Verification,
    /// g-vectors of each object with the torsion class it maps to, or the
    /// reason for a failure.
    pub witnesses: Vec<String>,
}

/// Check that `N ↦ Fac(H⁰N)` is a bijection from the 2-term interval of `Λ`
/// onto the brute-force torsion classes.
pub fn verify_two_silt_bijection(alg: &AlgebraTable, cap: usize, dim_cap: usize) -> Result<BijectionReport> {
    let nv = alg.num_vertices();
    let iv = two_silt_interval(alg, &initial_silting(alg), cap)?;
    let mut report = BijectionReport {
        silt2_count: iv.objects.len(),
        stt_count: None,
        tors_count: None,
        status: Verification::Inconclusive(String::new()),
        witnesses: Vec::new(),
    };
    let mut reasons = Vec::new();
    if iv.complete {
        report.stt_count = Some(pairs_of(alg, &iv.objects)?.len());
    } else {
        reasons.push(format!("2-term interval search hit cap {cap}"));
    }
    let indecs = match indecomposables(alg, dim_cap) {
        Ok(d) => d.modules,
        Err(Error::CapExceeded(c)) => {
            reasons.push(format!("indecomposable discovery hit dimension cap {c}"));
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    if indecs.len() > MAX_BRUTE_FORCE {
        reasons.push(format!("{} indecomposables exceed the exhaustive scan", indecs.len()));
    }
    if !reasons.is_empty() {
        report.status = Verification::Inconclusive(reasons.join("; "));
        return Ok(report);
    }
    let closures = Closures::new(alg, &indecs)?;
    let tors = torsion_classes_bruteforce(&closures)?;
    report.tors_count = Some(tors.len());
    let images = iv
        .objects
        .par_iter()
        .map(|n| fac_closure(alg, &h0(alg, n.complex())?, &indecs, &closures))
        .collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    for (n, t) in iv.objects.iter().zip(&images) {
        report.witnesses.push(format!("{:?} -> {:?}", n.k0_key(nv), t.members));
        if !tors.contains(t) {
            ok = false;
            report.witnesses.push(format!("image {:?} is not a torsion class", t.members));
        }
    }
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != images.len() {
        ok = false;
        report.witnesses.push("two objects share a torsion class".into());
    }
    if distinct.len() != tors.len() || report.stt_count != Some(tors.len()) {
        ok = false;
        report.witnesses.push(format!("{} images for {} torsion classes", distinct.len(), tors.len()));
    }
    report.status = if ok { Verification::Verified } else { Verification::Failed };
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SimpleTiltReport {
    pub subset: Vec<usize>,
    pub equal: bool,
    pub from_mutation: TorsionClassSet,
    pub from_simples: TorsionClassSet,
}

/// Compare `Fac(H⁰(μ^L_I Λ))` with `{X : Hom(X, ⊕_{i∈I} S_i) = 0}`.
pub fn verify_simple_tilt(alg: &AlgebraTable, subset: &[usize], indecs: &[Module], closures: &Closures) -> Result<SimpleTiltReport> {
    let lam = initial_silting(alg);
    let mut idx = Vec::new();
    for &v in subset {
        if v >= alg.num_vertices() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let stalk = ProjComplex::stalk(&[v], 0);
        idx.push(lam.summands().iter().position(|s| *s == stalk).expect("Λ has every stalk"));
    }
    let n = if idx.is_empty() { lam } else { mutate_set(alg, &lam, &idx, Direction::Left)? };
    let from_mutation = fac_closure(alg, &h0(alg, n.complex())?, indecs, closures)?;
    let simples: Vec<Module> = subset.iter().map(|&v| simple(alg, v)).collect::<Result<_>>()?;
    let s = direct_sum(alg, &simples.iter().collect::<Vec<_>>());
    let mut members = Vec::new();
    for (i, x) in indecs.iter().enumerate() {
        if hom_dim(alg, x, &s)? == 0 {
            members.push(i);
        }
    }
    let from_simples = TorsionClassSet { members };
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    Ok(SimpleTiltReport { subset, equal: from_mutation == from_simples, from_mutation, from_simples })
}

/// The presentation complex of a module in degrees -1 and 0.
pub fn presentation_complex(alg: &AlgebraTable, m: &Module) -> Result<ProjComplex> {
    if m.is_zero() {
        return Ok(ProjComplex::zero());
    }
    let p = min_proj_presentation(alg, m)?;
    let d: AlgMatrix = p.d;
    ProjComplex::new(alg, -1, vec![p.p1, p.p0], vec![d])
}
