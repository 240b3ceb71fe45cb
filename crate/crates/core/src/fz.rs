//! Quiver mutation on skew-symmetric exchange matrices and the
//! mutation-Dynkin test.
//!
//! `b_ij > 0` counts arrows `i -> j`. A connected quiver is mutation
//! equivalent to a Dynkin quiver iff no member of its mutation class has an
//! entry of absolute value at least 2; a `Dynkin` verdict is only returned
//! once an explicit Dynkin forest has been found in the class.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Quiver;
use crate::error::{Error, Result};

const MAX_CANONICAL: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.rows()
    }
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSkewSymmetric);
        }
        let b: Vec<i64> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in 0..n {
                if b[i * n + j] != -b[j * n + i] {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        Ok(ExchangeMatrix { n, b })
    }

    /// Signed arrow counts of a quiver; loops and 2-cycles cancel.
    pub fn from_quiver(q: &Quiver) -> Self {
        let n = q.num_vertices();
        let mut b = vec![0i64; n * n];
        for a in &q.arrows {
            if a.source != a.target {
                b[a.source * n + a.target] += 1;
                b[a.target * n + a.source] -= 1;
            }
        }
        ExchangeMatrix { n, b }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.b.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n;
        if k >= n {
            return Err(Error::IndexOutOfRange(k));
        }
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                let bij = self.get(i, j);
                b[i * n + j] = if i == k || j == k {
                    -bij
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    bij + bik.signum() * (bik * bkj).max(0)
                };
            }
        }
        Ok(ExchangeMatrix { n, b })
    }

    fn permuted(&self, p: &[usize]) -> Self {
        let n = self.n;
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] = self.get(p[i], p[j]);
            }
        }
        ExchangeMatrix { n, b }
    }

    /// Row-major lexicographic minimum over simultaneous row and column
    /// permutations.
    pub fn canonical_form(&self) -> Result<Self> {
        if self.n > MAX_CANONICAL {
            return Err(Error::TooLarge(self.n));
        }
        let mut search = PermSearch { m: self, best: None, perm: Vec::with_capacity(self.n), used: vec![false; self.n] };
        search.run();
        Ok(self.permuted(&search.best.unwrap_or_default()))
    }

    /// Connected components of the underlying graph, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut part = vec![s];
            comp[s] = out.len();
            let mut at = 0;
            while at < part.len() {
                let v = part[at];
                at += 1;
                for w in 0..self.n {
                    if self.get(v, w) != 0 && comp[w] == usize::MAX {
                        comp[w] = out.len();
                        part.push(w);
                    }
                }
            }
            part.sort_unstable();
            out.push(part);
        }
        out
    }

    /// Dynkin type of the underlying graph when it is a disjoint union of
    /// simply laced Dynkin diagrams.
    pub fn dynkin_type(&self) -> Option<Vec<DynkinType>> {
        if self.max_abs() > 1 {
            return None;
        }
        let mut types = Vec::new();
        for part in self.components() {
            types.push(tree_type(self, &part)?);
        }
        types.sort();
        Some(types)
    }
}

struct PermSearch<'a> {
    m: &'a ExchangeMatrix,
    best: Option<Vec<usize>>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl PermSearch<'_> {
    /// Compare the candidate with the best so far on the entries fixed by
    /// the current prefix that come first in row-major order.
    fn prefix_cmp(&self) -> std::cmp::Ordering {
        let Some(best) = &self.best else { return std::cmp::Ordering::Less };
        let (p, m) = (&self.perm, self.m);
        let k = p.len();
        if k == m.n {
            for i in 0..k {
                for j in 0..k {
                    let c = m.get(p[i], p[j]).cmp(&m.get(best[i], best[j]));
                    if c.is_ne() {
                        return c;
                    }
                }
            }
            return std::cmp::Ordering::Equal;
        }
        for j in 0..k {
            let c = m.get(p[0], p[j]).cmp(&m.get(best[0], best[j]));
            if c.is_ne() {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    }

    fn run(&mut self) {
        let n = self.m.n;
        if !self.perm.is_empty() && self.prefix_cmp().is_gt() {
            return;
        }
        if self.perm.len() == n {
            if self.prefix_cmp().is_lt() {
                self.best = Some(self.perm.clone());
            }
            return;
        }
        for v in 0..n {
            if !self.used[v] {
                self.used[v] = true;
                self.perm.push(v);
                self.run();
                self.perm.pop();
                self.used[v] = false;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Joins component types with `+`, e.g. `A2+A1`.
pub fn type_name(types: &[DynkinType]) -> String {
    types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("+")
}

fn tree_type(m: &ExchangeMatrix, part: &[usize]) -> Option<DynkinType> {
    let size = part.len();
    let nbrs = |v: usize| part.iter().copied().filter(move |&w| m.get(v, w) != 0);
    let edges: usize = part.iter().map(|&v| nbrs(v).count()).sum::<usize>() / 2;
    if edges + 1 != size {
        return None;
    }
    let branch: Vec<usize> = part.iter().copied().filter(|&v| nbrs(v).count() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(size)),
        [c] if nbrs(*c).count() == 3 => {
            let mut arms: Vec<usize> = nbrs(*c)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next: Vec<usize> = nbrs(cur).filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(size)),
                [1, 2, 2..=4] => Some(DynkinType::E(size)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOutcome {
    Exhausted,
    CapExceeded,
    /// A member with an entry of absolute value at least 2, with the
    /// mutation sequence reaching it.
    DoubleArrowFound(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct MutationClass {
    /// Canonical forms in discovery order.
    pub members: Vec<ExchangeMatrix>,
    /// Mutation sequence from the input to a representative of each member.
    pub paths: Vec<Vec<usize>>,
    pub outcome: ClassOutcome,
}

/// Breadth-first search of the mutation class up to relabelling.
pub fn mutation_class(b: &ExchangeMatrix, cap: usize) -> Result<MutationClass> {
    let mut seen: HashMap<ExchangeMatrix, usize> = HashMap::new();
    let mut members = Vec::new();
    let mut paths = Vec::new();
    let mut queue = VecDeque::new();
    let start = b.canonical_form()?;
    if b.max_abs() >= 2 {
        return Ok(MutationClass { members: vec![start], paths: vec![vec![]], outcome: ClassOutcome::DoubleArrowFound(vec![]) });
    }
    seen.insert(start.clone(), 0);
    members.push(start);
    paths.push(Vec::new());
    queue.push_back((b.clone(), Vec::<usize>::new()));
    while let Some((m, path)) = queue.pop_front() {
        for k in 0..m.size() {
            let next = m.mutate(k)?;
            let mut p = path.clone();
            p.push(k);
            if next.max_abs() >= 2 {
                return Ok(MutationClass { members, paths, outcome: ClassOutcome::DoubleArrowFound(p) });
            }
            let c = next.canonical_form()?;
            if seen.contains_key(&c) {
                continue;
            }
            if members.len() >= cap {
                return Ok(MutationClass { members, paths, outcome: ClassOutcome::CapExceeded });
            }
            seen.insert(c.clone(), members.len());
            members.push(c);
            paths.push(p.clone());
            queue.push_back((next, p));
        }
    }
    Ok(MutationClass { members, paths, outcome: ClassOutcome::Exhausted })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynkinVerdict {
    Dynkin(Vec<DynkinType>),
    NotDynkin,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct DynkinReport {
    pub verdict: DynkinVerdict,
    pub class_size: usize,
    /// Mutations from the input to the Dynkin member or to the member with
    /// a multiple arrow.
    pub witness_path: Vec<usize>,
}

pub fn is_mutation_dynkin(b: &ExchangeMatrix, cap: usize) -> Result<DynkinReport> {
    let class = mutation_class(b, cap)?;
    let class_size = class.members.len();
    Ok(match class.outcome {
        ClassOutcome::DoubleArrowFound(p) => DynkinReport { verdict: DynkinVerdict::NotDynkin, class_size, witness_path: p },
        ClassOutcome::CapExceeded => DynkinReport { verdict: DynkinVerdict::Inconclusive, class_size, witness_path: vec![] },
        ClassOutcome::Exhausted => {
            let hit = class.members.iter().zip(&class.paths).find_map(|(m, p)| m.dynkin_type().map(|t| (t, p.clone())));
            match hit {
                Some((t, p)) => DynkinReport { verdict: DynkinVerdict::Dynkin(t), class_size, witness_path: p },
                None => DynkinReport { verdict: DynkinVerdict::Inconclusive, class_size, witness_path: vec![] },
            }
        }
    })
}
