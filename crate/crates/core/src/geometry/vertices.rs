//! Exact vertex enumeration for bounded H-polytopes.
//!
//! Two independent routes produce the same vertex set:
//! [`enumerate_vertices`] solves every `d`-subset of rows (`O(n^d)` square
//! systems) and keeps the feasible solutions, and [`enumerate_vertices_dd`]
//! runs the double description method on the homogenized cone with integer
//! rays. The brute force route is the reference; the incremental route is what
//! makes the 4- and 6-dimensional reduction polytopes tractable.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::linalg::{inverse, rank, solve_square};
use crate::geometry::{HPolytope, RationalVector};
use crate::lp::{solve_lp_max, LpStatus};
use crate::rational::{make_primitive, primitive_integer_vector, Rational};

/// Result of probing a polytope with the `2d` LPs `max ±x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    Unbounded,
    Empty,
}

pub fn boundedness(poly: &HPolytope) -> Result<Boundedness> {
    for i in 0..poly.dim() {
        for sign in [1, -1] {
            let r = solve_lp_max(&RationalVector::unit(poly.dim(), i, sign), poly)?;
            match r.status {
                LpStatus::Optimal => {}
                LpStatus::Unbounded => return Ok(Boundedness::Unbounded),
                LpStatus::Infeasible => return Ok(Boundedness::Empty),
            }
        }
    }
    Ok(Boundedness::Bounded)
}

/// Fails with [`Error::UnboundedPolytope`] unless the polytope is bounded.
/// Returns `false` for the empty polytope.
pub fn ensure_bounded(poly: &HPolytope) -> Result<bool> {
    match boundedness(poly)? {
        Boundedness::Bounded => Ok(true),
        Boundedness::Empty => Ok(false),
        Boundedness::Unbounded => Err(Error::UnboundedPolytope),
    }
}

/// Which enumeration route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexMethod {
    BruteForce,
    DoubleDescription,
    /// Brute force while `C(n, d)` stays below [`BRUTE_FORCE_SUBSETS`].
    #[default]
    Auto,
}

pub const BRUTE_FORCE_SUBSETS: u128 = 20_000;

pub fn vertices(poly: &HPolytope, method: VertexMethod) -> Result<Vec<RationalVector>> {
    match method {
        VertexMethod::BruteForce => enumerate_vertices(poly),
        VertexMethod::DoubleDescription => enumerate_vertices_dd(poly),
        VertexMethod::Auto => {
            if uses_dd(poly, method) {
                enumerate_vertices_dd(poly)
            } else {
                enumerate_vertices(poly)
            }
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Brute force: every nonsingular `d`-subset of rows defines a candidate
/// point, kept when it satisfies all rows. Singular subsets are skipped.
/// Output is sorted lexicographically and duplicate-free.
pub fn enumerate_vertices(poly: &HPolytope) -> Result<Vec<RationalVector>> {
    if !ensure_bounded(poly)? {
        return Ok(Vec::new());
    }
    let d = poly.dim();
    let rows = poly.rows();
    let found: BTreeSet<RationalVector> = Combinations::new(rows.len(), d)
        .par_bridge()
        .filter_map(|subset| {
            let m: Vec<Vec<Rational>> = subset
                .iter()
                .map(|&i| rows[i].normal.coords().to_vec())
                .collect();
            let b: Vec<Rational> = subset.iter().map(|&i| rows[i].rhs.clone()).collect();
            let x = RationalVector::new(solve_square(m, b)?);
            poly.contains(&x).then_some(x)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found.into_iter().collect())
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// An integer vector with a floating-point shadow scaled to max-abs 1, used
/// to decide signs of dot products without big-integer arithmetic whenever
/// the float result is clearly away from zero.
struct Filtered {
    exact: Vec<BigInt>,
    approx: Vec<f64>,
}

impl Filtered {
    fn new(exact: Vec<BigInt>) -> Self {
        let bits = exact.iter().map(|v| v.bits()).max().unwrap_or(0);
        let shift = bits.saturating_sub(60);
        let mut approx: Vec<f64> = exact
            .iter()
            .map(|v| num_traits::ToPrimitive::to_f64(&(v >> shift)).unwrap_or(0.0))
            .collect();
        let max = approx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max > 0.0 {
            approx.iter_mut().for_each(|v| *v /= max);
        }
        Filtered { exact, approx }
    }

    /// Sign of the dot product, exact.
    fn sign_dot(&self, other: &Filtered) -> std::cmp::Ordering {
        let mut dot = 0.0;
        let mut scale = 0.0;
        for (a, b) in self.approx.iter().zip(&other.approx) {
            dot += a * b;
            scale += a.abs();
        }
        // each shadow entry is off by at most 2^-58 of the max-abs entry
        if dot.abs() > 1e-9 * (scale + 1.0) {
            return dot.partial_cmp(&0.0).unwrap();
        }
        int_dot(&self.exact, &other.exact).sign_cmp()
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> std::cmp::Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> std::cmp::Ordering {
        if self.is_positive() {
            std::cmp::Ordering::Greater
        } else if self.is_negative() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Equal
        }
    }
}

struct Ray {
    coords: Filtered,
    zeros: BitSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of an integer matrix by fraction-free elimination.
fn int_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let updated: Vec<BigInt> = row
                .iter()
                .zip(prow)
                .map(|(x, y)| &prow[c] * x - &f * y)
                .collect();
            *row = make_primitive(updated);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

const PRIME: u64 = (1 << 61) - 1;

fn to_mod(v: &BigInt) -> u64 {
    let r = v % BigInt::from(PRIME);
    let r = if r.is_negative() { r + BigInt::from(PRIME) } else { r };
    num_traits::ToPrimitive::to_u64(&r).expect("reduced below the modulus")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Rank modulo [`PRIME`]; never above the rational rank.
fn mod_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c]);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv);
            for (x, y) in row.iter_mut().zip(prow) {
                *x = (*x + PRIME - mul_mod(f, *y)) % PRIME;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Double description method on `C = {(t, x) : t >= 0, b t - A x >= 0}`.
///
/// For a bounded nonempty polytope `C` is pointed and its extreme rays are
/// exactly `(1, v)` for the vertices `v`. Rays are kept as primitive integer
/// vectors; two rays are combined only when they are adjacent, decided by the
/// algebraic test (the constraints tight on both have rank `dim - 2`).
pub fn enumerate_vertices_dd(poly: &HPolytope) -> Result<Vec<RationalVector>> {
    let out: BTreeSet<RationalVector> = dd_homogeneous(poly)?.iter().map(HomogeneousVertex::to_rational).collect();
    Ok(out.into_iter().collect())
}

/// A vertex `x / t` kept as a primitive integer vector with `t > 0`.
pub(crate) struct HomogeneousVertex {
    pub t: BigInt,
    pub x: Vec<BigInt>,
}

impl HomogeneousVertex {
    pub fn to_rational(&self) -> RationalVector {
        let t = Rational::from_integer(self.t.clone());
        RationalVector::new(self.x.iter().map(|c| Rational::from_integer(c.clone()) / &t).collect())
    }
}

/// Whether `method` sends `poly` to the double description route.
pub(crate) fn uses_dd(poly: &HPolytope, method: VertexMethod) -> bool {
    match method {
        VertexMethod::BruteForce => false,
        VertexMethod::DoubleDescription => true,
        VertexMethod::Auto => binomial(poly.len() as u128, poly.dim() as u128) > BRUTE_FORCE_SUBSETS,
    }
}

/// Extreme rays of the homogenized cone, one per vertex.
///
/// A bounded nonempty polytope gives a pointed cone whose rays all have
/// `t > 0`, and an empty one leaves no rays. Anything else is classified by
/// the LP test, so the LPs only run on inputs that are about to be rejected.
pub(crate) fn dd_homogeneous(poly: &HPolytope) -> Result<Vec<HomogeneousVertex>> {
    match dd_cone(poly) {
        Some(rays) => Ok(rays),
        None if !ensure_bounded(poly)? => Ok(Vec::new()),
        None => Err(Error::UnboundedPolytope),
    }
}

fn dd_cone(poly: &HPolytope) -> Option<Vec<HomogeneousVertex>> {
    let d = poly.dim();
    let dim = d + 1;

    let mut cons: Vec<Vec<BigInt>> = Vec::with_capacity(poly.len() + 1);
    let mut t_row = vec![BigInt::zero(); dim];
    t_row[0] = BigInt::from(1);
    cons.push(t_row);
    for h in poly.rows() {
        let mut row = Vec::with_capacity(dim);
        row.push(h.rhs.clone());
        row.extend(h.normal.iter().map(|a| -a));
        let ints = primitive_integer_vector(&row);
        if ints.iter().any(|v| !v.is_zero()) {
            cons.push(ints);
        }
    }
    let ncons = cons.len();

    // Initial simplicial cone from `dim` independent constraints.
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    let as_rational = |row: &[BigInt]| -> Vec<Rational> {
        row.iter().map(|v| Rational::from_integer(v.clone())).collect()
    };
    let mut chosen_rows: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in cons.iter().enumerate() {
        chosen_rows.push(as_rational(row));
        if rank(&chosen_rows) == chosen_rows.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        } else {
            chosen_rows.pop();
        }
    }
    if basis.len() < dim {
        return None;
    }
    let inv = inverse(&chosen_rows).expect("basis rows are independent");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|k| {
            let column: Vec<Rational> = (0..dim).map(|i| inv[i][k].clone()).collect();
            let mut zeros = BitSet::new(ncons);
            for (l, &c) in basis.iter().enumerate() {
                if l != k {
                    zeros.insert(c);
                }
            }
            Ray {
                coords: Filtered::new(primitive_integer_vector(&column)),
                zeros,
            }
        })
        .collect();

    let cons_mod: Vec<Vec<u64>> = cons.iter().map(|row| row.iter().map(to_mod).collect()).collect();
    let cons: Vec<Filtered> = cons.into_iter().map(Filtered::new).collect();
    let in_basis: BTreeSet<usize> = basis.iter().copied().collect();

    // Rays keep their slot for the whole run; `live` lists the current ones
    // and `tight[c]` the slots tight on constraint `c` (dead slots are
    // dropped lazily).
    let mut alive = vec![true; rays.len()];
    let mut live: Vec<usize> = (0..rays.len()).collect();
    let mut tight: Vec<Vec<usize>> = vec![Vec::new(); ncons];
    for (slot, r) in rays.iter().enumerate() {
        for c in r.zeros.ones() {
            tight[c].push(slot);
        }
    }
    let mut sign: Vec<std::cmp::Ordering> = vec![std::cmp::Ordering::Equal; rays.len()];
    let mut shared: Vec<usize> = vec![0; rays.len()];
    let mut touched: Vec<usize> = Vec::new();

    for (idx, h) in cons.iter().enumerate() {
        if in_basis.contains(&idx) {
            continue;
        }
        let mut neg = Vec::new();
        for &slot in &live {
            sign[slot] = h.sign_dot(&rays[slot].coords);
            if sign[slot].is_lt() {
                neg.push(slot);
            }
        }

        let mut exact: HashMap<usize, BigInt> = HashMap::new();
        let mut created: Vec<Ray> = Vec::new();
        for &n in &neg {
            for c in rays[n].zeros.ones() {
                tight[c].retain(|&r| alive[r]);
                for &r in &tight[c] {
                    if !sign[r].is_gt() {
                        continue;
                    }
                    if shared[r] == 0 {
                        touched.push(r);
                    }
                    shared[r] += 1;
                }
            }
            let candidates: Vec<usize> = touched
                .drain(..)
                .filter(|&r| std::mem::take(&mut shared[r]) + 2 >= dim)
                .collect();
            for p in candidates {
                let common = rays[p].zeros.and(&rays[n].zeros);
                // the rank is at most dim - 2, so reaching it modulo a prime settles it
                let modular: Vec<Vec<u64>> = common.ones().map(|i| cons_mod[i].clone()).collect();
                if mod_rank(modular) + 2 != dim {
                    let rows: Vec<Vec<BigInt>> = common.ones().map(|i| cons[i].exact.clone()).collect();
                    if int_rank(rows) + 2 != dim {
                        continue;
                    }
                }
                for i in [p, n] {
                    exact
                        .entry(i)
                        .or_insert_with(|| int_dot(&h.exact, &rays[i].coords.exact));
                }
                let (sp, sn) = (&exact[&p], &exact[&n]);
                let coords: Vec<BigInt> = rays[n]
                    .coords
                    .exact
                    .iter()
                    .zip(&rays[p].coords.exact)
                    .map(|(cn, cp)| sp * cn - sn * cp)
                    .collect();
                let mut zeros = common;
                zeros.insert(idx);
                created.push(Ray {
                    coords: Filtered::new(make_primitive(coords)),
                    zeros,
                });
            }
        }

        for &n in &neg {
            alive[n] = false;
        }
        live.retain(|&slot| alive[slot]);
        for &slot in &live {
            if sign[slot].is_eq() {
                rays[slot].zeros.insert(idx);
                tight[idx].push(slot);
            }
        }
        for r in created {
            let slot = rays.len();
            for c in r.zeros.ones() {
                tight[c].push(slot);
            }
            rays.push(r);
            alive.push(true);
            live.push(slot);
            sign.push(std::cmp::Ordering::Equal);
            shared.push(0);
        }
    }

    let mut out = Vec::with_capacity(live.len());
    for slot in live {
        let mut x = std::mem::take(&mut rays[slot].coords.exact);
        let t = x.remove(0);
        if !t.is_positive() {
            return None;
        }
        out.push(HomogeneousVertex { t, x });
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(v: &[&[i64]]) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = v.iter().map(|p| RationalVector::from_ints(p)).collect();
        out.sort();
        out
    }

    #[test]
    fn square_vertices() {
        let sq = HPolytope::unit_cube(2).unwrap();
        let want = pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(enumerate_vertices(&sq).unwrap(), want);
        assert_eq!(enumerate_vertices_dd(&sq).unwrap(), want);
    }

    #[test]
    fn standard_simplex() {
        let s = HPolytope::from_int_rows(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap();
        let want = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(enumerate_vertices(&s).unwrap(), want);
        assert_eq!(enumerate_vertices_dd(&s).unwrap(), want);
    }

    #[test]
    fn redundant_row_is_ignored() {
        let mut rows = HPolytope::unit_cube(2).unwrap().rows().to_vec();
        rows.push(crate::geometry::Halfspace::new(RationalVector::from_ints(&[1, 0]), int(2)));
        let p = HPolytope::new(2, rows).unwrap();
        assert_eq!(enumerate_vertices(&p).unwrap().len(), 4);
        assert_eq!(enumerate_vertices_dd(&p).unwrap().len(), 4);
    }

    #[test]
    fn unbounded_is_rejected() {
        let half = HPolytope::from_int_rows(2, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert_eq!(enumerate_vertices(&half), Err(Error::UnboundedPolytope));
        assert_eq!(enumerate_vertices_dd(&half), Err(Error::UnboundedPolytope));
    }

    #[test]
    fn empty_polytope_has_no_vertices() {
        let e = HPolytope::from_int_rows(1, &[(&[1], -1), (&[-1], -1)]).unwrap();
        assert!(enumerate_vertices(&e).unwrap().is_empty());
        assert!(enumerate_vertices_dd(&e).unwrap().is_empty());
    }

    #[test]
    fn degenerate_pyramid() {
        // Square pyramid: the apex lies on four facets.
        let p = HPolytope::from_int_rows(
            3,
            &[
                (&[0, 0, -1], 0),
                (&[1, 0, 1], 1),
                (&[-1, 0, 1], 1),
                (&[0, 1, 1], 1),
                (&[0, -1, 1], 1),
            ],
        )
        .unwrap();
        let want = pts(&[&[1, 1, 0], &[1, -1, 0], &[-1, 1, 0], &[-1, -1, 0], &[0, 0, 1]]);
        assert_eq!(enumerate_vertices(&p).unwrap(), want);
        assert_eq!(enumerate_vertices_dd(&p).unwrap(), want);
    }

    #[test]
    fn lower_dimensional_polytope() {
        // Segment x in [-1, 1], y = 0 written with two opposite inequalities.
        let p = HPolytope::from_int_rows(
            2,
            &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 0), (&[0, -1], 0)],
        )
        .unwrap();
        let want = pts(&[&[1, 0], &[-1, 0]]);
        assert_eq!(enumerate_vertices(&p).unwrap(), want);
        assert_eq!(enumerate_vertices_dd(&p).unwrap(), want);
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(binomial(96, 4), 3_321_960);
    }
}
