//! Does `A − A` meet `I(q) = {q(z) : z ∈ Z[i]} ∖ {0}`?

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::BoxSubset;
use crate::error::{domain, Error, Result};
use crate::gaussian::{enumerate_box, Gaussian};
use crate::{GIPolynomial, GaussianInt, SmallGaussian};

/// `a − a′ = q(z) ≠ 0` with `a, a′ ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceWitness {
    pub a: SmallGaussian,
    pub a_prime: SmallGaussian,
    pub z: SmallGaussian,
    pub value: SmallGaussian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceReport {
    pub avoids: bool,
    /// Every `z` with `N(z)` at most this was tested.
    pub radius_squared: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AvoidanceWitness>,
}

/// `R²` such that `N(z) > R²` forces `N(q(z)) > max_norm`.
///
/// With `B = max_{1≤j<d} |a_j|` and `|z| > max(4B, 2)` the tail
/// `a_1 z + … + a_d z^d` has modulus at least `|z|/2`, so
/// `|q(z)| ≥ |z|/2 − |a_0|`, which exceeds `√max_norm` once
/// `N(z) > 8·(N(a_0) + max_norm)`.
pub fn avoidance_radius_squared(q: &GIPolynomial, max_norm: &BigInt) -> Result<BigInt> {
    let d = q.degree()?;
    if d == 0 {
        return domain("avoidance needs a nonconstant polynomial");
    }
    let mid = (1..d).map(|j| q.coeff(j).norm()).max().unwrap_or_default();
    let a = &mid * 16u32;
    let b = (q.coeff(0).norm() + max_norm) * 8u32;
    Ok(a.max(b).max(BigInt::from(4)))
}

/// Gaussian integers with `N(z) ≤ R²`, by norm and then by argument in
/// `[0, 2π)`, so `1` precedes `i`, `−1` and `−i`.
fn disc(r2: &BigInt) -> Result<Vec<SmallGaussian>> {
    let r = r2
        .sqrt()
        .to_i64()
        .filter(|r| *r <= 4000)
        .ok_or_else(|| Error::Limit("avoidance radius too large".into()))?;
    let r2 = r2.to_i64().expect("R ≤ 4000");
    let mut out = Vec::new();
    for b in -r..=r {
        for a in -r..=r {
            if a * a + b * b <= r2 {
                out.push(SmallGaussian::new(a, b));
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), ArgKey(*z)));
    Ok(out)
}

#[derive(PartialEq, Eq)]
struct ArgKey(SmallGaussian);

impl ArgKey {
    /// Quadrant and the point rotated into `re > 0, im ≥ 0`.
    fn split(&self) -> (u8, SmallGaussian) {
        let mut z = self.0;
        for q in 0..4 {
            if z.re > 0 && z.im >= 0 {
                return (q, z);
            }
            z = SmallGaussian::new(z.im, -z.re);
        }
        (0, z)
    }
}

impl Ord for ArgKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (qa, a) = self.split();
        let (qb, b) = other.split();
        qa.cmp(&qb).then_with(|| 0.cmp(&(a.re * b.im - a.im * b.re)))
    }
}

impl PartialOrd for ArgKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `q` over `i128` with checked arithmetic; `None` on overflow or if a
/// coefficient does not fit.
struct SmallEval(Option<Vec<(i128, i128)>>);

impl SmallEval {
    fn new(q: &GIPolynomial) -> Self {
        SmallEval(
            q.coeffs()
                .iter()
                .map(|c| Some((c.re.to_i128()?, c.im.to_i128()?)))
                .collect(),
        )
    }

    fn eval(&self, q: &GIPolynomial, z: &SmallGaussian) -> GaussianInt {
        if let Some(v) = self.0.as_ref().and_then(|cs| horner(cs, z.re as i128, z.im as i128)) {
            return Gaussian::new(BigInt::from(v.0), BigInt::from(v.1));
        }
        q.eval(&GaussianInt::from(*z))
    }
}

fn horner(cs: &[(i128, i128)], zr: i128, zi: i128) -> Option<(i128, i128)> {
    let (mut re, mut im) = (0i128, 0i128);
    for &(cr, ci) in cs.iter().rev() {
        let nr = re.checked_mul(zr)?.checked_sub(im.checked_mul(zi)?)?;
        let ni = re.checked_mul(zi)?.checked_add(im.checked_mul(zr)?)?;
        re = nr.checked_add(cr)?;
        im = ni.checked_add(ci)?;
    }
    Some((re, im))
}

/// The first pair `(a, a′)` (in member order) realising each difference.
fn difference_map(points: &[SmallGaussian]) -> (HashMap<SmallGaussian, (usize, usize)>, i64) {
    let mut map = HashMap::new();
    let mut max = 0;
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            if i != j {
                let d = a - b;
                if d.is_zero() {
                    continue;
                }
                max = max.max(d.norm());
                map.entry(d).or_insert((i, j));
            }
        }
    }
    (map, max)
}

/// A pair of points whose difference is a nonzero value of `q`, found by
/// exhaustive search over every `z` that could reach a difference.
pub fn avoidance_witness(points: &[SmallGaussian], q: &GIPolynomial) -> Result<Option<AvoidanceWitness>> {
    let (diffs, max) = difference_map(points);
    let r2 = avoidance_radius_squared(q, &BigInt::from(max))?;
    if diffs.is_empty() {
        return Ok(None);
    }
    let ev = SmallEval::new(q);
    for z in disc(&r2)? {
        let v = ev.eval(q, &z);
        let Some(v) = v.to_small() else { continue };
        if let Some(&(i, j)) = diffs.get(&v) {
            return Ok(Some(AvoidanceWitness {
                a: points[i],
                a_prime: points[j],
                z,
                value: v,
            }));
        }
    }
    Ok(None)
}

/// `(A − A) ∩ I(q) = ∅`, with a witness when it fails.
pub fn avoidance_check(a: &BoxSubset, q: &GIPolynomial) -> Result<AvoidanceReport> {
    let (_, max) = difference_map(a.members());
    let r2 = avoidance_radius_squared(q, &BigInt::from(max))?;
    let witness = avoidance_witness(a.members(), q)?;
    Ok(AvoidanceReport {
        avoids: witness.is_none(),
        radius_squared: r2.to_string(),
        witness,
    })
}

/// Adjacency masks of the graph on `[N]` (row-major) joining `a ≠ a′`
/// when `a − a′ ∈ I(q)` or `a′ − a ∈ I(q)`.
pub fn difference_graph(n: u64, q: &GIPolynomial) -> Result<Vec<Vec<bool>>> {
    let pts: Vec<SmallGaussian> = enumerate_box(n).collect();
    let span = n as i64 - 1;
    let max = BigInt::from(2 * span * span);
    let r2 = avoidance_radius_squared(q, &max)?;
    let ev = SmallEval::new(q);
    let mut values = std::collections::HashSet::new();
    for z in disc(&r2)? {
        if let Some(v) = ev.eval(q, &z).to_small() {
            if !v.is_zero() && v.re.abs() <= span && v.im.abs() <= span {
                values.insert(v);
            }
        }
    }
    let mut adj = vec![vec![false; pts.len()]; pts.len()];
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            if values.contains(&(a - b)) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(adj)
}

pub const DEFAULT_EXACT_LIMIT: u64 = 4;
/// `11² = 121` vertices still fit a `u128` mask.
pub const MAX_EXACT_LIMIT: u64 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalSet {
    pub mode: SearchMode,
    /// `false` for greedy results, which are only maximal.
    pub optimal: bool,
    pub edges: usize,
    pub set: BoxSubset,
}

pub fn max_avoiding_density(n: u64, q: &GIPolynomial, mode: SearchMode) -> Result<ExtremalSet> {
    max_avoiding_density_with_limit(n, q, mode, DEFAULT_EXACT_LIMIT)
}

/// A largest (exact) or maximal (greedy) subset of `[N]` whose difference
/// set avoids `I(q)`.
pub fn max_avoiding_density_with_limit(n: u64, q: &GIPolynomial, mode: SearchMode, limit: u64) -> Result<ExtremalSet> {
    if limit > MAX_EXACT_LIMIT {
        return domain(format!("exact limit {limit} exceeds {MAX_EXACT_LIMIT}"));
    }
    if mode == SearchMode::Exact && n > limit {
        return Err(Error::Limit(format!("exact search needs N <= {limit}, got {n}")));
    }
    if n == 0 {
        return domain("the box side N must be positive");
    }
    let adj = difference_graph(n, q)?;
    let edges = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2;
    let mask = match mode {
        SearchMode::Greedy => greedy(&adj),
        SearchMode::Exact => {
            let nb: Vec<u128> = adj
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .fold(0u128, |m, (j, _)| m | 1 << j)
                })
                .collect();
            let best = MaxIndependent::new(&nb).solve();
            (0..adj.len()).map(|k| best >> k & 1 == 1).collect()
        }
    };
    Ok(ExtremalSet {
        mode,
        optimal: mode == SearchMode::Exact,
        edges,
        set: BoxSubset::from_mask(n, mask)?,
    })
}

fn greedy(adj: &[Vec<bool>]) -> Vec<bool> {
    let mut chosen = vec![false; adj.len()];
    for v in 0..adj.len() {
        if !(0..v).any(|u| chosen[u] && adj[v][u]) {
            chosen[v] = true;
        }
    }
    chosen
}

/// Branch and bound for a maximum independent set, i.e. a maximum clique
/// of the complement, bounded by greedy colouring. Vertices are taken in
/// box order so the result is deterministic.
struct MaxIndependent {
    /// Complement adjacency, without loops.
    comp: Vec<u128>,
    best: u128,
    best_len: u32,
}

impl MaxIndependent {
    fn new(nb: &[u128]) -> Self {
        let all = if nb.len() == 128 {
            u128::MAX
        } else {
            (1u128 << nb.len()) - 1
        };
        let comp = nb.iter().enumerate().map(|(v, m)| !m & all & !(1u128 << v)).collect();
        MaxIndependent {
            comp,
            best: 0,
            best_len: 0,
        }
    }

    fn solve(mut self) -> u128 {
        let all = if self.comp.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.comp.len()) - 1
        };
        self.expand(0, all);
        self.best
    }

    /// Greedy colouring of `cand`: vertices with their colour bound, in order.
    fn colour(&self, mut cand: u128) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let mut c = 0;
        while cand != 0 {
            c += 1;
            let mut q = cand;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u128 << v);
                // same colour class: pairwise non-adjacent in the complement
                q &= !self.comp[v];
                cand &= !(1u128 << v);
                out.push((v, c));
            }
        }
        out
    }

    fn expand(&mut self, current: u128, mut cand: u128) {
        let order = self.colour(cand);
        for &(v, c) in order.iter().rev() {
            if current.count_ones() + c <= self.best_len {
                return;
            }
            let next = current | 1u128 << v;
            let sub = cand & self.comp[v];
            if sub == 0 {
                if next.count_ones() > self.best_len {
                    self.best_len = next.count_ones();
                    self.best = next;
                }
            } else {
                self.expand(next, sub);
            }
            cand &= !(1u128 << v);
        }
    }
}
