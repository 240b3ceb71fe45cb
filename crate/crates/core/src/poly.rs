//! Univariate polynomials over F_p, just enough to split a minimal polynomial
//! into coprime factors (distinct-degree plus equal-degree factorization).

use rand::Rng;

use crate::field::Fp;
use crate::linalg::Matrix;

/// Coefficients from the constant term upward, no trailing zeros.
pub type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn make_monic(f: Fp, a: Poly) -> Poly {
    let a = trim(a);
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

pub fn sub(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

pub fn mul(f: Fp, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: Fp, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(*b.last().unwrap());
    let mut q = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), inv);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: Fp, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn gcd(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    make_monic(f, a)
}

pub fn derivative(f: Fp, a: &Poly) -> Poly {
    let out = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, (i as u64 % f.char() as u64) as u32)).collect();
    trim(out)
}

fn powmod(f: Fp, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut result = rem(f, &vec![1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

/// Evaluate a polynomial at a square matrix.
pub fn eval_matrix(f: Fp, a: &Poly, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for &c in a.iter().rev() {
        acc = acc.mul(f, m);
        for i in 0..n {
            let v = acc.get(i, i);
            acc.set(i, i, f.add(v, c));
        }
    }
    acc
}

/// Minimal polynomial of `v` under `m` (monic), via the Krylov sequence.
pub fn krylov_minpoly(f: Fp, m: &Matrix, v: &[u32]) -> Poly {
    let n = v.len();
    let mut space = crate::linalg::Subspace::tracked(f, n);
    let mut cur = v.to_vec();
    let mut k = 0;
    loop {
        if let Some(coords) = space.coords(&cur) {
            // m^k v = sum coords[i] m^i v
            let mut poly: Poly = coords.iter().map(|&c| f.neg(c)).collect();
            poly.resize(k + 1, 0);
            poly[k] = 1;
            return poly;
        }
        space.insert(&cur);
        cur = m.apply(f, &cur);
        k += 1;
    }
}

/// Minimal polynomial of a square matrix (monic).
pub fn matrix_minpoly(f: Fp, m: &Matrix) -> Poly {
    let n = m.rows();
    let mut space = crate::linalg::Subspace::tracked(f, n * n);
    let mut cur = Matrix::identity(n);
    let mut k = 0;
    loop {
        if let Some(coords) = space.coords(cur.data()) {
            let mut poly: Poly = coords.iter().map(|&c| f.neg(c)).collect();
            poly.resize(k + 1, 0);
            poly[k] = 1;
            return poly;
        }
        space.insert(cur.data());
        cur = cur.mul(f, m);
        k += 1;
    }
}

pub fn lcm(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let g = gcd(f, a, b);
    make_monic(f, divrem(f, &mul(f, a, b), &g).0)
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(f: Fp, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&lead) => {
            let inv = f.inv(lead);
            let sc = |p: Poly| trim(p.into_iter().map(|c| f.mul(c, inv)).collect());
            (sc(r0), sc(s0), sc(t0))
        }
    }
}

/// Idempotent polynomial for the splitting of `mu` into the part whose
/// irreducible factors divide `g` and the coprime rest: `e ≡ 0` modulo the
/// first part and `e ≡ 1` modulo the rest. `None` if either part is trivial.
pub fn primary_idempotent(f: Fp, mu: &Poly, g: &Poly) -> Option<Poly> {
    let mut rest = make_monic(f, mu.clone());
    let mut primary: Poly = vec![1];
    loop {
        let d = gcd(f, &rest, g);
        if d.len() <= 1 {
            break;
        }
        primary = mul(f, &primary, &d);
        rest = divrem(f, &rest, &d).0;
    }
    if primary.len() <= 1 || rest.len() <= 1 {
        return None;
    }
    let (_, s, _) = ext_gcd(f, &primary, &rest);
    Some(rem(f, &mul(f, &s, &primary), mu))
}

/// Find a proper factor `g` of the squarefree part of `mu` such that `g` and
/// the cofactor are coprime. Returns `None` when the squarefree part is
/// irreducible (or when the attempt is inconclusive).
pub fn coprime_factor<R: Rng>(f: Fp, mu: &Poly, rng: &mut R) -> Option<Poly> {
    let mu = make_monic(f, mu.clone());
    if mu.len() <= 2 {
        return None;
    }
    let d = derivative(f, &mu);
    if d.is_empty() {
        return None;
    }
    let g = gcd(f, &mu, &d);
    let r = make_monic(f, divrem(f, &mu, &g).0);
    if gcd(f, &r, &derivative(f, &r)).len() > 1 {
        return None;
    }
    let n = r.len() - 1;
    if n <= 1 {
        return None;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let p = f.char() as u64;
    for k in 1..=n {
        h = powmod(f, &h, p, &r);
        let g = gcd(f, &r, &sub(f, &h, &x));
        if g.len() <= 1 {
            continue;
        }
        if g.len() < r.len() {
            return Some(g);
        }
        // every irreducible factor has degree k
        if n == k {
            return None;
        }
        return equal_degree_split(f, &r, k, rng);
    }
    None
}

fn equal_degree_split<R: Rng>(f: Fp, r: &Poly, k: usize, rng: &mut R) -> Option<Poly> {
    let p = f.char() as u64;
    let n = r.len() - 1;
    for _ in 0..64 {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..f.char())).collect());
        if a.len() <= 1 {
            continue;
        }
        let probe = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(k-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = rem(f, &mul(f, &t, &t), r);
                acc = trim((0..acc.len().max(t.len()))
                    .map(|i| f.add(acc.get(i).copied().unwrap_or(0), t.get(i).copied().unwrap_or(0)))
                    .collect());
            }
            acc
        } else {
            // a^((p^k - 1)/2) = (prod_{i<k} a^(p^i))^((p-1)/2)
            let mut frob = rem(f, &a, r);
            let mut prod = frob.clone();
            for _ in 1..k {
                frob = powmod(f, &frob, p, r);
                prod = rem(f, &mul(f, &prod, &frob), r);
            }
            sub(f, &powmod(f, &prod, (p - 1) / 2, r), &vec![1])
        };
        let g = gcd(f, r, &probe);
        if g.len() > 1 && g.len() < r.len() {
            return Some(g);
        }
    }
    None
}
