//! Reference computations for checking `normmax-core`. Everything here is
//! written against plain `BigRational` / `BigInt` and shares no code with the
//! library routes it checks. The acceptance checks live in
//! `tests/acceptance.rs`, property tests in [`properties`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use normmax_core::{HPolytope, Halfspace, RationalVector};

#[cfg(test)]
mod properties;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qpow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

pub fn norm_pow(x: &[Q], p: u32) -> Q {
    x.iter().fold(Q::zero(), |acc, c| acc + qpow(&c.abs(), p))
}

/// Gaussian elimination on `A x = b`; `None` unless the solution is unique.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, r)| {
            let mut v = row.clone();
            v.push(r.clone());
            v
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let lead = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=n {
                    let t = &m[c][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `(a, b)` rows of `a^T x <= b`.
pub type Rows = Vec<(Vec<Q>, Q)>;

/// Vertices by solving every square subsystem and keeping feasible points.
pub fn vertices(rows: &Rows, d: usize) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    for s in subsets(rows.len(), d) {
        let a: Vec<Vec<Q>> = s.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Q> = s.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            let feasible = rows.iter().all(|(r, rhs)| dot(r, &x) <= *rhs);
            if feasible {
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_hpoly(rows: &Rows, d: usize) -> HPolytope {
    HPolytope::new(
        d,
        rows.iter()
            .map(|(a, b)| Halfspace::new(RationalVector::new(a.clone()), b.clone()))
            .collect(),
    )
    .unwrap()
}

pub fn coords(v: &RationalVector) -> Vec<Q> {
    v.iter().cloned().collect()
}

fn rand_q<R: Rng>(rng: &mut R, range: i64) -> Q {
    qr(rng.gen_range(-range..=range), rng.gen_range(1..=3))
}

/// A random 0-symmetric bounded H-polytope with rational data: row pairs
/// `±a^T x <= b` until the normals span the space, at most `max_rows` rows.
pub fn random_symmetric_rows<R: Rng>(rng: &mut R, d: usize, max_rows: usize) -> Rows {
    loop {
        let pairs = rng.gen_range(d..=max_rows / 2);
        let mut rows = Rows::new();
        for _ in 0..pairs {
            let a: Vec<Q> = (0..d).map(|_| rand_q(rng, 6)).collect();
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            let b = qr(rng.gen_range(1..=12), rng.gen_range(1..=3));
            rows.push((a.iter().map(|v| -v).collect(), b.clone()));
            rows.push((a, b));
        }
        let normals: Vec<Vec<Q>> = rows.iter().map(|r| r.0.clone()).collect();
        if rank(&normals) == d {
            return rows;
        }
    }
}

/// Random 0-symmetric point set `±v_i` spanning the space.
pub fn random_symmetric_points<R: Rng>(rng: &mut R, d: usize, max_pairs: usize) -> Vec<Vec<Q>> {
    loop {
        let pairs = rng.gen_range(d..=max_pairs);
        let mut pts = Vec::new();
        for _ in 0..pairs {
            let v: Vec<Q> = (0..d).map(|_| rand_q(rng, 5)).collect();
            pts.push(v.iter().map(|c| -c).collect::<Vec<Q>>());
            pts.push(v);
        }
        if rank(&pts) == d {
            return pts;
        }
    }
}

/// Facets `y^T x <= 1` of the hull of a 0-symmetric full-dimensional point
/// set: hyperplanes through `d` of the points that every point satisfies.
pub fn facets_of_points(pts: &[Vec<Q>], d: usize) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    for s in subsets(pts.len(), d) {
        let a: Vec<Vec<Q>> = s.iter().map(|&i| pts[i].clone()).collect();
        let ones = vec![q(1); d];
        if let Some(y) = solve(&a, &ones) {
            if pts.iter().all(|v| dot(&y, v) <= q(1)) {
                out.insert(y);
            }
        }
    }
    out.into_iter().collect()
}

/// Does some `k`-subset of `0..n` form a clique of `edges`?
pub fn has_clique(n: usize, edges: &BTreeSet<(usize, usize)>, k: usize) -> bool {
    if k > n {
        return false;
    }
    subsets(n, k)
        .iter()
        .any(|s| s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| edges.contains(&(u, v)))))
}

/// Edges `(u, v)` with `u < v` selected by `mask` over the pairs in
/// lexicographic order.
pub fn edges_from_mask(n: usize, mask: u64) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                out.insert((u, v));
            }
            bit += 1;
        }
    }
    out
}
