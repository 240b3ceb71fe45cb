//! Quivers with relations and their finite-dimensional quotients `kQ/I`,
//! realized as a normal-form path basis with a full multiplication table.
//!
//! Paths compose left to right: for arrows `a: i -> j` and `b: j -> k` the
//! path `ab` runs from `i` to `k`. Modules are right modules, so `e_i Λ` is
//! spanned by paths starting at `i`.
//!
//! The basis is built one path length at a time. For homogeneous relations
//! the degree-`n` part of the quotient is
//! `(arrows ⊗ A_{n-1}) / span{ r·q : r a relation, q a normal form }`,
//! so only normal forms of the previous degree are ever expanded.
//! Non-homogeneous relations fall back to reducing the whole truncated path
//! space `kQ / R^{L+1}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::Subspace;

pub const DEFAULT_CHAR: u32 = 101;
pub const DEFAULT_TRUNCATION: usize = 30;
const FALLBACK_PATH_LIMIT: usize = 400;
/// Normal forms of a single length beyond which the quotient is treated as
/// infinite dimensional.
const DEGREE_SIZE_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let arrows = arrows
            .iter()
            .map(|(id, s, t)| (id.to_string(), s.to_string(), t.to_string()))
            .collect::<Vec<_>>();
        Self::from_named(vertices, arrows)
    }

    pub fn from_named(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let lookup = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if id.is_empty() || id.contains('.') {
                return Err(Error::InvalidQuiver(format!("bad arrow id {id:?}")));
            }
            if out.iter().any(|a: &Arrow| a.id == id) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {id}")));
            }
            out.push(Arrow { source: lookup(&s)?, target: lookup(&t)?, id });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.id == id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn path_from_ids(&self, ids: &[&str]) -> Result<Vec<usize>> {
        ids.iter().map(|id| self.arrow_index(id)).collect()
    }

    /// True if the quiver has an oriented cycle (loops included).
    pub fn has_oriented_cycle(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen < n
    }

    /// Underlying undirected graph is connected (the empty quiver counts).
    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    /// Check admissibility shape against a quiver; returns (source, target).
    pub fn validate(&self, q: &Quiver) -> Result<(usize, usize)> {
        if self.terms.is_empty() {
            return Err(Error::InvalidRelation("empty relation".into()));
        }
        let mut ends = None;
        for (_, path) in &self.terms {
            if path.len() < 2 {
                return Err(Error::InvalidRelation(format!("path of length {} in a relation", path.len())));
            }
            for &a in path {
                if a >= q.arrows.len() {
                    return Err(Error::InvalidRelation(format!("arrow index {a} out of range")));
                }
            }
            for w in path.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(Error::InvalidRelation(format!(
                        "arrows {} and {} do not compose",
                        q.arrows[w[0]].id, q.arrows[w[1]].id
                    )));
                }
            }
            let st = (q.arrows[path[0]].source, q.arrows[*path.last().unwrap()].target);
            match ends {
                None => ends = Some(st),
                Some(e) if e != st => {
                    return Err(Error::InvalidRelation("paths in a relation are not parallel".into()));
                }
                _ => {}
            }
        }
        Ok(ends.unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field_char: u32,
    pub truncation: usize,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Self {
        AlgebraPresentation { quiver, relations, field_char: DEFAULT_CHAR, truncation: DEFAULT_TRUNCATION }
    }

    /// Path algebra with no relations.
    pub fn path_algebra(quiver: Quiver) -> Self {
        Self::new(quiver, Vec::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A sparse linear combination of basis elements.
pub type Sparse = Vec<(usize, u32)>;

/// An algebra element as a dense coefficient vector over the path basis.
pub type Elem = Vec<u32>;

/// The finite-dimensional algebra `kQ/I` in normal-form coordinates.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    quiver: Quiver,
    field: Fp,
    basis: Vec<BasisPath>,
    idempotents: Vec<usize>,
    /// `mult[u * dim + v]` is the product of basis elements `u` and `v`.
    mult: Vec<Sparse>,
    /// `between[i * n + j]` lists basis paths from `i` to `j` in basis order.
    between: Vec<Vec<usize>>,
    /// position of each basis element inside its `between` block
    slot: Vec<usize>,
    /// basis index of each arrow
    arrow_basis: Vec<usize>,
}

impl AlgebraTable {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn mul_basis(&self, u: usize, v: usize) -> &Sparse {
        &self.mult[u * self.basis.len() + v]
    }

    /// Basis paths from `i` to `j`, i.e. a basis of `e_i Λ e_j`.
    pub fn paths(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i * self.num_vertices() + j]
    }

    /// Index of basis element `b` inside `paths(source, target)`.
    pub fn slot(&self, b: usize) -> usize {
        self.slot[b]
    }

    /// Basis paths starting at `i` (a basis of `e_i Λ`), ordered by target
    /// vertex and then basis order.
    pub fn paths_from(&self, i: usize) -> Vec<usize> {
        (0..self.num_vertices()).flat_map(|j| self.paths(i, j).iter().copied()).collect()
    }

    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        (0..n).map(|i| (0..n).map(|j| self.paths(i, j).len()).collect()).collect()
    }

    pub fn basis_label(&self, b: usize) -> String {
        let p = &self.basis[b];
        if p.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn basis_index_of_label(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&b| self.basis_label(b) == label)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn unit(&self, b: usize) -> Elem {
        let mut e = self.zero();
        e[b] = 1;
        e
    }

    pub fn scaled_idempotent(&self, v: usize, c: u32) -> Elem {
        let mut e = self.zero();
        e[self.idempotents[v]] = c;
        e
    }

    pub fn is_zero(e: &[u32]) -> bool {
        e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Elem {
        let f = self.field;
        let p = f.char() as u64;
        let mut out = vec![0u64; self.dim()];
        let n = self.num_vertices();
        for (u, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let t = self.basis[u].target;
            for w in 0..n {
                for &v in self.paths(t, w) {
                    let y = b[v];
                    if y == 0 {
                        continue;
                    }
                    let c = (x as u64 * y as u64) % p;
                    for &(k, m) in self.mul_basis(u, v) {
                        out[k] = (out[k] + c * m as u64) % p;
                    }
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter().zip(b).map(|(x, y)| self.field.add(*x, *y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Elem {
        a.iter().zip(b).map(|(x, y)| self.field.sub(*x, *y)).collect()
    }

    pub fn scale(&self, a: &[u32], c: u32) -> Elem {
        a.iter().map(|x| self.field.mul(*x, c)).collect()
    }

    /// Evaluate a path (arrow indices) as an algebra element.
    pub fn path_element(&self, path: &[usize]) -> Elem {
        let arrows = &self.quiver.arrows;
        let Some(&last) = path.last() else {
            panic!("path_element needs a nonempty path");
        };
        let mut cur = self.unit(self.idempotents[arrows[last].target]);
        for &a in path.iter().rev() {
            let arrow_elem = self.arrow_element(a);
            cur = self.mul(&arrow_elem, &cur);
        }
        cur
    }

    pub fn arrow_element(&self, a: usize) -> Elem {
        self.unit(self.arrow_basis[a])
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Largest `m` with `rad^m != 0`, plus one.
    pub fn loewy_length(&self) -> usize {
        self.basis.iter().map(|p| p.len()).max().unwrap_or(0) + 1
    }

    /// The opposite algebra: reversed quiver, reversed paths, transposed
    /// multiplication. Right modules over it are left modules over `self`.
    pub fn opposite(&self) -> AlgebraTable {
        let quiver = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
                .collect(),
        };
        let basis = self
            .basis
            .iter()
            .map(|p| BasisPath { arrows: p.arrows.iter().rev().copied().collect(), source: p.target, target: p.source })
            .collect();
        let d = self.dim();
        let mut mult = vec![Vec::new(); d * d];
        for u in 0..d {
            for v in 0..d {
                mult[u * d + v] = self.mult[v * d + u].clone();
            }
        }
        let n = self.num_vertices();
        let mut between = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                between[i * n + j] = self.between[j * n + i].clone();
            }
        }
        AlgebraTable {
            quiver,
            field: self.field,
            basis,
            idempotents: self.idempotents.clone(),
            mult,
            between,
            slot: self.slot.clone(),
            arrow_basis: self.arrow_basis.clone(),
        }
    }

    fn assemble(quiver: Quiver, field: Fp, basis: Vec<BasisPath>, left: &HashMap<(usize, usize), Sparse>) -> Self {
        let n = quiver.num_vertices();
        let d = basis.len();
        let idempotents: Vec<usize> =
            (0..n).map(|v| basis.iter().position(|p| p.arrows.is_empty() && p.source == v).unwrap()).collect();
        let mut between = vec![Vec::new(); n * n];
        let mut slot = vec![0; d];
        for (b, p) in basis.iter().enumerate() {
            let cell = &mut between[p.source * n + p.target];
            slot[b] = cell.len();
            cell.push(b);
        }
        let mut mult = vec![Vec::new(); d * d];
        for u in 0..d {
            for v in 0..d {
                if basis[u].target != basis[v].source {
                    continue;
                }
                let mut cur: Sparse = vec![(v, 1)];
                for &a in basis[u].arrows.iter().rev() {
                    cur = left_mul(field, left, a, &cur);
                }
                mult[u * d + v] = cur;
            }
        }
        let arrow_basis = (0..quiver.arrows.len())
            .map(|a| basis.iter().position(|p| p.arrows.len() == 1 && p.arrows[0] == a).expect("arrows are normal forms"))
            .collect();
        AlgebraTable { quiver, field, basis, idempotents, mult, between, slot, arrow_basis }
    }
}

fn left_mul(f: Fp, left: &HashMap<(usize, usize), Sparse>, a: usize, x: &Sparse) -> Sparse {
    let mut acc: HashMap<usize, u32> = HashMap::new();
    for &(b, c) in x {
        if let Some(img) = left.get(&(a, b)) {
            for &(k, m) in img {
                let e = acc.entry(k).or_insert(0);
                *e = f.add(*e, f.mul(c, m));
            }
        }
    }
    let mut out: Sparse = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

/// Relations with coefficients reduced mod p, like terms merged, zero
/// relations dropped.
fn normalize_relations(p: &AlgebraPresentation, f: Fp) -> Result<Vec<(usize, Vec<(u32, Vec<usize>)>)>> {
    let mut out = Vec::new();
    for r in &p.relations {
        r.validate(&p.quiver)?;
        let mut merged: Vec<(u32, Vec<usize>)> = Vec::new();
        for (c, path) in &r.terms {
            let c = f.from_i64(*c);
            match merged.iter_mut().find(|(_, q)| q == path) {
                Some(entry) => entry.0 = f.add(entry.0, c),
                None => merged.push((c, path.clone())),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        if merged.is_empty() {
            continue;
        }
        let len = merged[0].1.len();
        let homogeneous = merged.iter().all(|(_, q)| q.len() == len);
        out.push((if homogeneous { len } else { 0 }, merged));
    }
    Ok(out)
}

/// Realize `kQ/I` as a normal-form path basis with structure constants.
pub fn build_algebra(p: &AlgebraPresentation) -> Result<AlgebraTable> {
    let f = Fp::new(p.field_char)?;
    if p.truncation < 2 {
        return Err(Error::InvalidRelation(format!("truncation length {} < 2", p.truncation)));
    }
    let rels = normalize_relations(p, f)?;
    if rels.iter().all(|(len, _)| *len > 0) {
        build_graded(p, f, &rels)
    } else {
        build_truncated(p, f, &rels)
    }
}

fn build_graded(p: &AlgebraPresentation, f: Fp, rels: &[(usize, Vec<(u32, Vec<usize>)>)]) -> Result<AlgebraTable> {
    let q = &p.quiver;
    let n = q.num_vertices();
    let mut basis: Vec<BasisPath> = (0..n).map(|v| BasisPath { arrows: vec![], source: v, target: v }).collect();
    let mut left: HashMap<(usize, usize), Sparse> = HashMap::new();
    // degree_ranges[d] = range of basis indices of length d
    let mut degree_ranges = vec![0..n];
    let start = basis.len();
    for (ai, a) in q.arrows.iter().enumerate() {
        left.insert((ai, a.target), vec![(basis.len(), 1)]);
        basis.push(BasisPath { arrows: vec![ai], source: a.source, target: a.target });
    }
    degree_ranges.push(start..basis.len());
    if q.arrows.is_empty() {
        return Ok(AlgebraTable::assemble(q.clone(), f, basis, &left));
    }

    let mut deg = 2;
    loop {
        let prev = degree_ranges[deg - 1].clone();
        // candidates a·w, sorted lexicographically by the full path
        let mut cands: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (ai, a) in q.arrows.iter().enumerate() {
            for w in prev.clone() {
                if basis[w].source == a.target {
                    let mut path = vec![ai];
                    path.extend_from_slice(&basis[w].arrows);
                    cands.push((path, ai, w));
                }
            }
        }
        if cands.is_empty() {
            break;
        }
        cands.sort();
        let nc = cands.len();
        let index: HashMap<(usize, usize), usize> =
            cands.iter().enumerate().map(|(i, (_, a, w))| ((*a, *w), i)).collect();
        // column for candidate i is nc-1-i so that pivots land on the largest paths
        let col = |i: usize| nc - 1 - i;
        let mut span = Subspace::new(f, nc);
        for (len, terms) in rels {
            if *len > deg {
                continue;
            }
            let r_target = q.arrows[*terms[0].1.last().unwrap()].target;
            for qb in degree_ranges[deg - *len].clone() {
                if basis[qb].source != r_target {
                    continue;
                }
                let mut row = vec![0u32; nc];
                for (c, path) in terms {
                    let mut x: Sparse = vec![(qb, 1)];
                    for &a in path[1..].iter().rev() {
                        x = left_mul(f, &left, a, &x);
                    }
                    for (b, m) in x {
                        let i = index[&(path[0], b)];
                        row[col(i)] = f.add(row[col(i)], f.mul(*c, m));
                    }
                }
                span.insert(&row);
            }
        }
        let pivots: Vec<usize> = span.pivots().to_vec();
        let is_pivot = {
            let mut v = vec![false; nc];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let first_new = basis.len();
        let mut new_index = vec![usize::MAX; nc];
        for (i, (path, _, _)) in cands.iter().enumerate() {
            if !is_pivot[col(i)] {
                new_index[i] = basis.len();
                let a = &q.arrows[path[0]];
                let w = &q.arrows[*path.last().unwrap()];
                basis.push(BasisPath { arrows: path.clone(), source: a.source, target: w.target });
            }
        }
        let rows = span.basis();
        for (i, (_, a, w)) in cands.iter().enumerate() {
            let c = col(i);
            let value: Sparse = if !is_pivot[c] {
                vec![(new_index[i], 1)]
            } else {
                let k = pivots.iter().position(|&x| x == c).unwrap();
                let row = &rows[k];
                let mut v: Sparse = Vec::new();
                for j in (c + 1)..nc {
                    if row[j] != 0 {
                        let cand = nc - 1 - j;
                        debug_assert!(!is_pivot[j]);
                        v.push((new_index[cand], f.neg(row[j])));
                    }
                }
                v.sort_unstable();
                v
            };
            left.insert((*a, *w), value);
        }
        degree_ranges.push(first_new..basis.len());
        if basis.len() == first_new {
            break;
        }
        if deg >= p.truncation {
            return Err(Error::NotFiniteDimensional(p.truncation));
        }
        if basis.len() - first_new > DEGREE_SIZE_LIMIT {
            return Err(Error::NotFiniteDimensional(deg));
        }
        deg += 1;
    }
    Ok(AlgebraTable::assemble(q.clone(), f, basis, &left))
}

fn build_truncated(p: &AlgebraPresentation, f: Fp, rels: &[(usize, Vec<(u32, Vec<usize>)>)]) -> Result<AlgebraTable> {
    let q = &p.quiver;
    let n = q.num_vertices();
    let limit = p.truncation;
    // all paths of length <= limit, length-then-lex
    let mut paths: Vec<BasisPath> = (0..n).map(|v| BasisPath { arrows: vec![], source: v, target: v }).collect();
    let mut layer: Vec<BasisPath> = paths.clone();
    for _ in 0..limit {
        let mut next = Vec::new();
        for pth in &layer {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == pth.target {
                    let mut arrows = pth.arrows.clone();
                    arrows.push(ai);
                    next.push(BasisPath { arrows, source: pth.source, target: a.target });
                }
            }
        }
        next.sort_by(|x, y| x.arrows.cmp(&y.arrows));
        paths.extend(next.iter().cloned());
        if paths.len() > FALLBACK_PATH_LIMIT {
            return Err(Error::TruncationTooLarge(paths.len()));
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    let np = paths.len();
    let index: HashMap<Vec<usize>, usize> =
        paths.iter().enumerate().filter(|(_, p)| !p.arrows.is_empty()).map(|(i, p)| (p.arrows.clone(), i)).collect();
    let col = |i: usize| np - 1 - i;
    let mut span = Subspace::new(f, np);
    for (_, terms) in rels {
        let src = q.arrows[terms[0].1[0]].source;
        let tgt = q.arrows[*terms[0].1.last().unwrap()].target;
        for pre in paths.iter().filter(|x| x.target == src) {
            for post in paths.iter().filter(|x| x.source == tgt) {
                let mut row = vec![0u32; np];
                let mut any = false;
                for (c, path) in terms {
                    let mut full = pre.arrows.clone();
                    full.extend_from_slice(path);
                    full.extend_from_slice(&post.arrows);
                    if let Some(&i) = index.get(&full) {
                        row[col(i)] = f.add(row[col(i)], *c);
                        any = true;
                    }
                }
                if any {
                    span.insert(&row);
                }
            }
        }
    }
    let mut is_pivot = vec![false; np];
    for &c in span.pivots() {
        is_pivot[c] = true;
    }
    let mut new_index = vec![usize::MAX; np];
    let mut basis = Vec::new();
    for (i, pth) in paths.iter().enumerate() {
        if !is_pivot[col(i)] {
            if pth.len() >= limit {
                return Err(Error::NotFiniteDimensional(limit));
            }
            new_index[i] = basis.len();
            basis.push(pth.clone());
        }
    }
    let normal_form = |i: usize| -> Sparse {
        let mut v = vec![0u32; np];
        v[col(i)] = 1;
        span.reduce(&mut v);
        let mut out: Sparse = Vec::new();
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                out.push((new_index[np - 1 - c], x));
            }
        }
        out.sort_unstable();
        out
    };
    let mut left: HashMap<(usize, usize), Sparse> = HashMap::new();
    for (ai, a) in q.arrows.iter().enumerate() {
        for (w, bp) in basis.iter().enumerate() {
            if bp.source != a.target {
                continue;
            }
            let mut full = vec![ai];
            full.extend_from_slice(&bp.arrows);
            let value = index.get(&full).map(|&i| normal_form(i)).unwrap_or_default();
            left.insert((ai, w), value);
        }
    }
    Ok(AlgebraTable::assemble(q.clone(), f, basis, &left))
}

/// A Dynkin quiver of type `A_n` (n ≥ 1), `D_n` (n ≥ 4) or `E_6,7,8`,
/// with vertices `1..=n` and arrows `a1, a2, …` pointing towards the
/// higher label. The branch vertex of `D_n` is `n-2`; that of `E_n` is `3`.
pub fn dynkin_quiver(family: char, n: usize) -> Result<Quiver> {
    let mut edges: Vec<(usize, usize)> = match (family.to_ascii_uppercase(), n) {
        ('A', 1..) => (1..n).map(|i| (i, i + 1)).collect(),
        ('D', 4..) => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            e.push((n - 2, n));
            e
        }
        ('E', 6..=8) => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            e.push((3, n));
            e
        }
        _ => return Err(Error::InvalidQuiver(format!("no Dynkin diagram {family}{n}"))),
    };
    edges.sort_unstable();
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| (format!("a{}", k + 1), s.to_string(), t.to_string()))
        .collect();
    Quiver::from_named(names, arrows)
}

/// Doubled quiver with the mesh relations `Σ_{s(α)=i} αα* − Σ_{t(α)=i} α*α`
/// at every vertex `i`.
pub fn preprojective_presentation(orientation: &Quiver) -> Result<AlgebraPresentation> {
    if orientation.has_oriented_cycle() {
        return Err(Error::HasOrientedCycle);
    }
    let mut arrows: Vec<Arrow> = orientation.arrows.clone();
    for a in &orientation.arrows {
        let id = format!("{}*", a.id);
        if orientation.arrows.iter().any(|b| b.id == id) {
            return Err(Error::InvalidQuiver(format!("arrow id {id} clashes with a dual arrow")));
        }
        arrows.push(Arrow { id, source: a.target, target: a.source });
    }
    let m = orientation.arrows.len();
    let quiver = Quiver { vertices: orientation.vertices.clone(), arrows };
    let mut relations = Vec::new();
    for i in 0..quiver.num_vertices() {
        let mut terms = Vec::new();
        for (k, a) in orientation.arrows.iter().enumerate() {
            if a.source == i {
                terms.push((1, vec![k, m + k]));
            }
            if a.target == i {
                terms.push((-1, vec![m + k, k]));
            }
        }
        if !terms.is_empty() {
            relations.push(Relation::new(terms));
        }
    }
    Ok(AlgebraPresentation::new(quiver, relations))
}

/// Relations are the cyclic derivatives of the potential:
/// `∂_a(a_1…a_k) = Σ_{a_i = a} a_{i+1}…a_k a_1…a_{i-1}`.
pub fn jacobian_presentation(q: &Quiver, potential: &[(i64, Vec<usize>)]) -> Result<AlgebraPresentation> {
    let label = |c: &[usize]| c.iter().map(|&a| q.arrows[a].id.clone()).collect::<Vec<_>>().join(".");
    for (_, cycle) in potential {
        if cycle.iter().any(|&a| a >= q.arrows.len()) {
            return Err(Error::NonCyclicTerm("arrow index out of range".into()));
        }
        if cycle.is_empty() {
            return Err(Error::CycleTooShort(0));
        }
        let closes = cycle
            .iter()
            .zip(cycle.iter().cycle().skip(1))
            .all(|(&a, &b)| q.arrows[a].target == q.arrows[b].source);
        if !closes {
            return Err(Error::NonCyclicTerm(label(cycle)));
        }
        if cycle.len() < 3 {
            return Err(Error::CycleTooShort(cycle.len()));
        }
    }
    let mut relations = Vec::new();
    for a in 0..q.arrows.len() {
        let mut terms: Vec<(i64, Vec<usize>)> = Vec::new();
        for (c, cycle) in potential {
            let k = cycle.len();
            for i in 0..k {
                if cycle[i] != a {
                    continue;
                }
                let path: Vec<usize> = (1..k).map(|s| cycle[(i + s) % k]).collect();
                match terms.iter_mut().find(|(_, p)| *p == path) {
                    Some(t) => t.0 += c,
                    None => terms.push((*c, path)),
                }
            }
        }
        terms.retain(|(c, _)| *c != 0);
        if !terms.is_empty() {
            relations.push(Relation::new(terms));
        }
    }
    Ok(AlgebraPresentation::new(q.clone(), relations))
}
