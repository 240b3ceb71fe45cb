//! Silting objects in `K^b(proj Λ)`: the partial order, mutation, 2-term
//! intervals, Hasse quivers and discreteness probes.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::homotopy::{
    cone, decompose_complex, end_radical, hom_dim, hom_space, is_isomorphic, minimize, ChainMap, HomSpace, ProjComplex,
};
use crate::algmat::AlgMatrix;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    Left,
    Right,
}

/// A basic silting object, certified by the mutation path that produced it.
#[derive(Clone, Debug)]
pub struct SiltingObject {
    complex: ProjComplex,
    summands: Vec<ProjComplex>,
    provenance: Vec<(Vec<usize>, Direction)>,
}

/// Class in the Grothendieck group: `Σ (-1)^n [X^n]`.
pub fn k0_class(num_vertices: usize, x: &ProjComplex) -> Vec<i64> {
    let mut out = vec![0i64; num_vertices];
    for n in x.degrees() {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        for &v in x.term(n) {
            out[v] += sign;
        }
    }
    out
}

fn summand_order(a: &ProjComplex, b: &ProjComplex, nv: usize) -> std::cmp::Ordering {
    let key = |x: &ProjComplex| {
        (
            k0_class(nv, x),
            x.lo(),
            x.terms().to_vec(),
            x.diffs().iter().map(|d| d.entries().to_vec()).collect::<Vec<_>>(),
        )
    };
    key(a).cmp(&key(b))
}

impl SiltingObject {
    fn from_summands(alg: &AlgebraTable, mut summands: Vec<ProjComplex>, provenance: Vec<(Vec<usize>, Direction)>) -> Self {
        let nv = alg.num_vertices();
        summands.sort_by(|a, b| summand_order(a, b, nv));
        let complex = ProjComplex::direct_sum(alg, &summands.iter().collect::<Vec<_>>());
        SiltingObject { complex, summands, provenance }
    }

    pub fn complex(&self) -> &ProjComplex {
        &self.complex
    }

    pub fn summands(&self) -> &[ProjComplex] {
        &self.summands
    }

    /// Mutation steps from `Λ`: summand indices and direction per step.
    pub fn provenance(&self) -> &[(Vec<usize>, Direction)] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Sorted K₀ classes of the summands; the g-vectors for 2-term objects.
    pub fn k0_key(&self, num_vertices: usize) -> Vec<Vec<i64>> {
        let mut k: Vec<Vec<i64>> = self.summands.iter().map(|s| k0_class(num_vertices, s)).collect();
        k.sort();
        k
    }

    pub fn shift(&self, alg: &AlgebraTable, k: i32) -> ProjComplex {
        self.complex.shift(alg, k)
    }
}

pub fn initial_silting(alg: &AlgebraTable) -> SiltingObject {
    let summands = (0..alg.num_vertices()).map(|i| ProjComplex::stalk(&[i], 0)).collect();
    SiltingObject::from_summands(alg, summands, Vec::new())
}

/// Vanishing of `Hom(X, X[n])` for every `n ≥ 1`.
pub fn is_presilting(alg: &AlgebraTable, x: &ProjComplex) -> Result<bool> {
    let x = minimize(alg, x);
    for n in 1..=(x.hi() - x.lo()).max(0) {
        if hom_dim(alg, &x, &x, n)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Hom(A, B[n]) = 0` for all `n ≥ 1`.
pub fn geq_complex(alg: &AlgebraTable, a: &ProjComplex, b: &ProjComplex) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Ok(true);
    }
    for n in 1..=(b.hi() - a.lo()) {
        if hom_dim(alg, a, b, n)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn geq(alg: &AlgebraTable, m: &SiltingObject, n: &SiltingObject) -> Result<bool> {
    geq_complex(alg, &m.complex, &n.complex)
}

/// `M[k] ≥ N ≥ M[l]`.
pub fn interval_membership(alg: &AlgebraTable, n: &SiltingObject, m: &SiltingObject, k: i32, l: i32) -> Result<bool> {
    Ok(geq_complex(alg, &m.shift(alg, k), &n.complex)? && geq_complex(alg, &n.complex, &m.shift(alg, l))?)
}

/// Isomorphism of basic objects, matching summands with equal K₀ class.
pub fn same_object(alg: &AlgebraTable, a: &SiltingObject, b: &SiltingObject) -> Result<bool> {
    let nv = alg.num_vertices();
    if a.len() != b.len() || a.k0_key(nv) != b.k0_key(nv) {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in &a.summands {
        let mut hit = false;
        for (j, y) in b.summands.iter().enumerate() {
            if !used[j] && k0_class(nv, x) == k0_class(nv, y) && is_isomorphic(alg, x, y)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Homs between all summands of one object, with radicals, reused across
/// the mutations of that object.
struct MutationContext<'a> {
    alg: &'a AlgebraTable,
    obj: &'a SiltingObject,
    homs: Vec<Vec<HomSpace>>,
    radicals: Vec<Vec<ChainMap>>,
}

impl<'a> MutationContext<'a> {
    fn new(alg: &'a AlgebraTable, obj: &'a SiltingObject) -> Result<Self> {
        let s = &obj.summands;
        let homs = s
            .iter()
            .map(|a| s.iter().map(|b| hom_space(alg, a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let radicals = (0..s.len())
            .map(|j| if s.len() > 1 { end_radical(alg, &homs[j][j]) } else { Vec::new() })
            .collect();
        Ok(MutationContext { alg, obj, homs, radicals })
    }

    /// Radical maps `Y_a -> Y_b` between summands of the complement.
    fn rad(&self, a: usize, b: usize) -> &[ChainMap] {
        if a == b {
            &self.radicals[a]
        } else {
            &self.homs[a][b].reps
        }
    }

    fn mutate(&self, chosen: &[usize], dir: Direction) -> Result<SiltingObject> {
        let alg = self.alg;
        let s = &self.obj.summands;
        for &i in chosen {
            if i >= s.len() {
                return Err(Error::SummandOutOfRange(i));
            }
        }
        let rest: Vec<usize> = (0..s.len()).filter(|j| !chosen.contains(j)).collect();
        let x = ProjComplex::direct_sum(alg, &chosen.iter().map(|&i| &s[i]).collect::<Vec<_>>());
        let (new_part, single) = match dir {
            Direction::Left => (self.left(&x, chosen, &rest)?, chosen.len() == 1),
            Direction::Right => (self.right(&x, chosen, &rest)?, chosen.len() == 1),
        };
        let mut summands: Vec<ProjComplex> = rest.iter().map(|&j| s[j].clone()).collect();
        if single {
            summands.push(new_part);
        } else {
            summands.extend(decompose_complex(alg, &new_part)?);
        }
        let mut provenance = self.obj.provenance.clone();
        let mut idx = chosen.to_vec();
        idx.sort_unstable();
        provenance.push((idx, dir));
        Ok(SiltingObject::from_summands(alg, summands, provenance))
    }

    /// Cone of a minimal left approximation: components are Hom classes
    /// `X -> Y_j` spanning Hom modulo compositions through radical maps.
    fn left(&self, x: &ProjComplex, chosen: &[usize], rest: &[usize]) -> Result<ProjComplex> {
        let alg = self.alg;
        let f = alg.field();
        let s = &self.obj.summands;
        let hx: Vec<HomSpace> = match chosen {
            [i] => rest.iter().map(|&j| self.homs[*i][j].clone()).collect(),
            _ => rest.iter().map(|&j| hom_space(alg, x, &s[j])).collect::<Result<_>>()?,
        };
        let mut components: Vec<(usize, ChainMap)> = Vec::new();
        for (jj, &j) in rest.iter().enumerate() {
            let h = &hx[jj];
            let mut sub = Subspace::tracked(f, h.dim());
            for (kk, &k) in rest.iter().enumerate() {
                for g in self.rad(k, j) {
                    for r in &hx[kk].reps {
                        let comp = r.then(alg, g, &s[k], &s[j]);
                        sub.insert(&h.coords(alg, &comp));
                    }
                }
            }
            for t in 0..h.dim() {
                let mut e = vec![0u32; h.dim()];
                e[t] = 1;
                if sub.insert(&e) {
                    components.push((j, h.reps[t].clone()));
                }
            }
        }
        let targets: Vec<&ProjComplex> = components.iter().map(|(j, _)| &s[*j]).collect();
        let t = ProjComplex::direct_sum(alg, &targets);
        let fmap = ChainMap {
            lo: x.lo(),
            maps: x
                .degrees()
                .map(|n| {
                    let parts: Vec<AlgMatrix> = components
                        .iter()
                        .map(|(j, c)| c.at(n).cloned().unwrap_or_else(|| AlgMatrix::zeros(alg, s[*j].term(n).to_vec(), x.term(n).to_vec())))
                        .collect();
                    AlgMatrix::vstack(alg, x.term(n), &parts.iter().collect::<Vec<_>>())
                })
                .collect(),
        };
        Ok(minimize(alg, &cone(alg, x, &t, &fmap)))
    }

    fn right(&self, x: &ProjComplex, chosen: &[usize], rest: &[usize]) -> Result<ProjComplex> {
        let alg = self.alg;
        let f = alg.field();
        let s = &self.obj.summands;
        let hx: Vec<HomSpace> = match chosen {
            [i] => rest.iter().map(|&j| self.homs[j][*i].clone()).collect(),
            _ => rest.iter().map(|&j| hom_space(alg, &s[j], x)).collect::<Result<_>>()?,
        };
        let mut components: Vec<(usize, ChainMap)> = Vec::new();
        for (jj, &j) in rest.iter().enumerate() {
            let h = &hx[jj];
            let mut sub = Subspace::tracked(f, h.dim());
            for (kk, &k) in rest.iter().enumerate() {
                for g in self.rad(j, k) {
                    for r in &hx[kk].reps {
                        let comp = g.then(alg, r, &s[k], x);
                        sub.insert(&h.coords(alg, &comp));
                    }
                }
            }
            for t in 0..h.dim() {
                let mut e = vec![0u32; h.dim()];
                e[t] = 1;
                if sub.insert(&e) {
                    components.push((j, h.reps[t].clone()));
                }
            }
        }
        let sources: Vec<&ProjComplex> = components.iter().map(|(j, _)| &s[*j]).collect();
        let t = ProjComplex::direct_sum(alg, &sources);
        let gmap = ChainMap {
            lo: t.lo(),
            maps: t
                .degrees()
                .map(|n| {
                    let parts: Vec<AlgMatrix> = components
                        .iter()
                        .map(|(j, c)| c.at(n).cloned().unwrap_or_else(|| AlgMatrix::zeros(alg, x.term(n).to_vec(), s[*j].term(n).to_vec())))
                        .collect();
                    AlgMatrix::hstack(alg, x.term(n), &parts.iter().collect::<Vec<_>>())
                })
                .collect(),
        };
        Ok(minimize(alg, &cone(alg, &t, x, &gmap).shift(alg, -1)))
    }
}

/// Mutation at one summand.
pub fn mutate(alg: &AlgebraTable, m: &SiltingObject, summand: usize, dir: Direction) -> Result<SiltingObject> {
    mutate_set(alg, m, &[summand], dir)
}

/// Mutation at the direct sum of several summands.
pub fn mutate_set(alg: &AlgebraTable, m: &SiltingObject, summands: &[usize], dir: Direction) -> Result<SiltingObject> {
    MutationContext::new(alg, m)?.mutate(summands, dir)
}

/// Rebuild an object from its mutation path starting at `Λ`.
pub fn replay(alg: &AlgebraTable, provenance: &[(Vec<usize>, Direction)]) -> Result<SiltingObject> {
    let mut m = initial_silting(alg);
    for (idx, dir) in provenance {
        m = mutate_set(alg, &m, idx, *dir)?;
    }
    Ok(m)
}

/// Result of a 2-term interval search.
#[derive(Clone, Debug)]
pub struct Interval {
    /// Sorted by the K₀ key (g-vectors).
    pub objects: Vec<SiltingObject>,
    pub complete: bool,
    pub cap: usize,
}

/// Keyed store deduplicating objects up to isomorphism.
struct Seen {
    by_key: HashMap<Vec<Vec<i64>>, Vec<usize>>,
    objects: Vec<SiltingObject>,
}

impl Seen {
    fn find(&self, alg: &AlgebraTable, m: &SiltingObject) -> Result<Option<usize>> {
        let key = m.k0_key(alg.num_vertices());
        if let Some(ids) = self.by_key.get(&key) {
            for &i in ids {
                if same_object(alg, &self.objects[i], m)? {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    fn insert(&mut self, alg: &AlgebraTable, m: SiltingObject) -> usize {
        let key = m.k0_key(alg.num_vertices());
        let id = self.objects.len();
        self.by_key.entry(key).or_default().push(id);
        self.objects.push(m);
        id
    }
}

/// The 2-term interval `M ≥ N ≥ M[1]`, explored from `M` by left mutations.
pub fn two_silt_interval(alg: &AlgebraTable, m: &SiltingObject, cap: usize) -> Result<Interval> {
    let mut seen = Seen { by_key: HashMap::new(), objects: Vec::new() };
    seen.insert(alg, m.clone());
    let mut frontier = vec![0usize];
    let mut complete = true;
    'outer: while !frontier.is_empty() {
        let objs: Vec<SiltingObject> = frontier.iter().map(|&i| seen.objects[i].clone()).collect();
        let candidates: Vec<Vec<SiltingObject>> = objs
            .par_iter()
            .map(|o| -> Result<Vec<SiltingObject>> {
                let ctx = MutationContext::new(alg, o)?;
                let mut out = Vec::new();
                for i in 0..o.len() {
                    let n = ctx.mutate(&[i], Direction::Left)?;
                    if interval_membership(alg, &n, m, 0, 1)? {
                        out.push(n);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for n in candidates.into_iter().flatten() {
            if seen.find(alg, &n)?.is_some() {
                continue;
            }
            if seen.objects.len() >= cap {
                complete = false;
                break 'outer;
            }
            next.push(seen.insert(alg, n));
        }
        frontier = next;
    }
    let nv = alg.num_vertices();
    let mut objects = seen.objects;
    objects.sort_by_key(|o| o.k0_key(nv));
    Ok(Interval { objects, complete, cap })
}

/// Hasse quiver of a finite interval.
#[derive(Clone, Debug)]
pub struct Hasse {
    pub nodes: Vec<SiltingObject>,
    /// `(a, b)` with `a > b` a covering relation.
    pub arrows: Vec<(usize, usize)>,
    /// Arrows coincide with the irreducible left mutations inside the set.
    pub matches_mutation: bool,
}

pub fn hasse(alg: &AlgebraTable, set: &[SiltingObject]) -> Result<Hasse> {
    let k = set.len();
    let ge: Vec<Vec<bool>> = set
        .par_iter()
        .map(|a| set.iter().map(|b| geq(alg, a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let top = (0..k).filter(|&a| (0..k).all(|b| ge[a][b])).count();
    let bottom = (0..k).filter(|&b| (0..k).all(|a| ge[a][b])).count();
    if k == 0 || top != 1 || bottom != 1 {
        return Err(Error::NotAnInterval);
    }
    let gt = |a: usize, b: usize| a != b && ge[a][b] && !ge[b][a];
    let mut arrows = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if gt(a, b) && !(0..k).any(|c| gt(a, c) && gt(c, b)) {
                arrows.push((a, b));
            }
        }
    }
    let mut seen = Seen { by_key: HashMap::new(), objects: Vec::new() };
    for o in set {
        seen.insert(alg, o.clone());
    }
    let mut mutation_arrows: Vec<(usize, usize)> = Vec::new();
    for (a, o) in set.iter().enumerate() {
        let ctx = MutationContext::new(alg, o)?;
        for i in 0..o.len() {
            let n = ctx.mutate(&[i], Direction::Left)?;
            if let Some(b) = seen.find(alg, &n)? {
                mutation_arrows.push((a, b));
            }
        }
    }
    mutation_arrows.sort_unstable();
    mutation_arrows.dedup();
    Ok(Hasse { nodes: set.to_vec(), matches_mutation: mutation_arrows == arrows, arrows })
}

/// g-vector rows of each summand, for labels.
pub fn g_matrix(alg: &AlgebraTable, m: &SiltingObject) -> Vec<Vec<i64>> {
    m.k0_key(alg.num_vertices())
}

pub fn hasse_dot(alg: &AlgebraTable, h: &Hasse) -> String {
    let mut s = String::from("digraph hasse {\n  node [shape=box];\n");
    for (i, o) in h.nodes.iter().enumerate() {
        let rows: Vec<String> = g_matrix(alg, o)
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", rows.join("\\n")));
    }
    for (a, b) in &h.arrows {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every explored interval was finite.
    Evidence,
    /// Provenance of each object whose interval hit the cap.
    Inconclusive(Vec<Vec<(Vec<usize>, Direction)>>),
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub depth: usize,
    pub cap: usize,
    /// `(provenance, interval size, complete)` per explored object.
    pub objects: Vec<(Vec<(Vec<usize>, Direction)>, usize, bool)>,
    pub verdict: ProbeVerdict,
}

/// Explore silting objects up to `depth` mutations from `Λ` and compute the
/// 2-term interval below each. Finite search never proves discreteness, so
/// the best outcome is `Evidence`.
pub fn discreteness_probe(alg: &AlgebraTable, depth: usize, cap: usize) -> Result<ProbeReport> {
    let mut seen = Seen { by_key: HashMap::new(), objects: Vec::new() };
    seen.insert(alg, initial_silting(alg));
    let mut queue: VecDeque<(usize, usize)> = VecDeque::from([(0, 0)]);
    while let Some((id, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        let obj = seen.objects[id].clone();
        let ctx = MutationContext::new(alg, &obj)?;
        for i in 0..obj.len() {
            for dir in [Direction::Left, Direction::Right] {
                let n = ctx.mutate(&[i], dir)?;
                if seen.find(alg, &n)?.is_none() {
                    let nid = seen.insert(alg, n);
                    queue.push_back((nid, d + 1));
                }
            }
        }
    }
    let results: Vec<(Vec<(Vec<usize>, Direction)>, usize, bool)> = seen
        .objects
        .par_iter()
        .map(|o| two_silt_interval(alg, o, cap).map(|iv| (o.provenance.clone(), iv.objects.len(), iv.complete)))
        .collect::<Result<_>>()?;
    let hits: Vec<_> = results.iter().filter(|r| !r.2).map(|r| r.0.clone()).collect();
    let verdict = if hits.is_empty() { ProbeVerdict::Evidence } else { ProbeVerdict::Inconclusive(hits) };
    Ok(ProbeReport { depth, cap, objects: results, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraPresentation, Quiver, Relation};
    use crate::homotopy::h0;

    fn a2() -> AlgebraTable {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        build_algebra(&AlgebraPresentation::path_algebra(q)).unwrap()
    }

    fn dual() -> AlgebraTable {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        build_algebra(&AlgebraPresentation::new(q, vec![Relation::new(vec![(1, vec![0, 0])])])).unwrap()
    }

    fn index_of_stalk(m: &SiltingObject, v: usize) -> usize {
        m.summands().iter().position(|s| s == &ProjComplex::stalk(&[v], 0)).unwrap()
    }

    #[test]
    fn left_mutations_of_a2() {
        let alg = a2();
        let lam = initial_silting(&alg);
        let m2 = mutate(&alg, &lam, index_of_stalk(&lam, 1), Direction::Left).unwrap();
        assert_eq!(h0(&alg, m2.complex()).unwrap().dims(), &[2, 1]);
        assert!(interval_membership(&alg, &m2, &lam, 0, 1).unwrap());
        assert!(is_presilting(&alg, m2.complex()).unwrap());
        let m1 = mutate(&alg, &lam, index_of_stalk(&lam, 0), Direction::Left).unwrap();
        assert!(m1.summands().contains(&ProjComplex::stalk(&[0], -1)));
        assert!(geq(&alg, &lam, &m1).unwrap());
        assert!(!geq(&alg, &m1, &lam).unwrap());
    }

    #[test]
    fn mutation_is_an_involution() {
        let alg = a2();
        let lam = initial_silting(&alg);
        for i in 0..2 {
            let n = mutate(&alg, &lam, i, Direction::Left).unwrap();
            let new = n.summands().iter().position(|s| !lam.summands().contains(s)).unwrap();
            let back = mutate(&alg, &n, new, Direction::Right).unwrap();
            assert!(same_object(&alg, &back, &lam).unwrap());
        }
    }

    #[test]
    fn presilting_examples() {
        let alg = a2();
        let mut d = AlgMatrix::zeros(&alg, vec![0], vec![1]);
        d.set(0, 0, alg.arrow_element(0));
        let s1 = ProjComplex::new(&alg, -1, vec![vec![1], vec![0]], vec![d]).unwrap();
        let bad = ProjComplex::direct_sum(&alg, &[&s1, &ProjComplex::stalk(&[1], 0)]);
        assert!(!is_presilting(&alg, &bad).unwrap());
        let good = ProjComplex::direct_sum(&alg, &[&s1, &ProjComplex::stalk(&[0], 0)]);
        assert!(is_presilting(&alg, &good).unwrap());
    }

    #[test]
    fn intervals_of_small_algebras() {
        let alg = a2();
        let iv = two_silt_interval(&alg, &initial_silting(&alg), 50).unwrap();
        assert_eq!((iv.objects.len(), iv.complete), (5, true));
        let h = hasse(&alg, &iv.objects).unwrap();
        assert_eq!(h.arrows.len(), 5);
        assert!(h.matches_mutation);
        let d = dual();
        let iv = two_silt_interval(&d, &initial_silting(&d), 50).unwrap();
        assert_eq!((iv.objects.len(), iv.complete), (2, true));
        assert_eq!(hasse(&d, &iv.objects).unwrap().arrows.len(), 1);
        let small = two_silt_interval(&alg, &initial_silting(&alg), 3).unwrap();
        assert_eq!((small.objects.len(), small.complete), (3, false));
    }

    #[test]
    fn shifted_object_outside_interval() {
        let alg = a2();
        let lam = initial_silting(&alg);
        let shifted = SiltingObject::from_summands(&alg, lam.summands().iter().map(|s| s.shift(&alg, 2)).collect(), Vec::new());
        assert!(!interval_membership(&alg, &shifted, &lam, 0, 1).unwrap());
        assert!(interval_membership(&alg, &lam, &lam, 0, 0).unwrap());
        let m1 = mutate(&alg, &lam, 0, Direction::Left).unwrap();
        let m2 = mutate(&alg, &lam, 1, Direction::Left).unwrap();
        assert_eq!(hasse(&alg, &[m1, m2]).unwrap_err(), Error::NotAnInterval);
        assert!(hasse(&alg, &[lam]).unwrap().arrows.is_empty());
    }

    #[test]
    fn probe_on_local_algebra() {
        let d = dual();
        let r = discreteness_probe(&d, 3, 50).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Evidence);
        assert!(r.objects.iter().all(|o| o.1 == 2));
    }

    #[test]
    fn kronecker_chain_survives_label_counts_divisible_by_p() {
        // over F_3 the complex P_2 -> P_1^2 has three labels in total
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let mut p = AlgebraPresentation::path_algebra(q);
        p.field_char = 3;
        let alg = build_algebra(&p).unwrap();
        let iv = two_silt_interval(&alg, &initial_silting(&alg), 8).unwrap();
        assert!(!iv.complete);
        assert_eq!(iv.objects.len(), 8);
    }
}
