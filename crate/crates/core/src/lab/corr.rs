//! Correlation functionals `E_n E_x E_h f(n)·f(n + p(σ_j(x, h)))`.
//!
//! With `F = N²·f` (an integer) every value is `S / (N⁴·N²·|D|·H^{2j})`
//! for an integer sum `S`. The `h`-average is reduced to the counts of
//! each sum `h_1 + … + h_j`, and the `n`-average to an autocorrelation of
//! `F` at each shift `v = p(σ)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::BoxSubset;
use crate::error::{domain, Error, Result};
use crate::gaussian::{enumerate_box, ShiftedBox};
use crate::json;
use crate::poly::degree_lower_diff;
use crate::{GIPolynomial, GaussianInt, SmallGaussian};

/// `p`, the `x`-domain `D`, the side `H` of the `h`-box `[H]` and the
/// tuple length `j` (`σ_0(x) = x`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationSpec {
    pub p: GIPolynomial,
    pub domain: Vec<SmallGaussian>,
    pub h_side: u64,
    pub j: usize,
}

impl CorrelationSpec {
    pub fn new(p: GIPolynomial, domain: Vec<SmallGaussian>, h_side: u64, j: usize) -> Self {
        CorrelationSpec { p, domain, h_side, j }
    }

    fn check(&self) -> Result<()> {
        if self.domain.is_empty() {
            return domain("the x-domain D is empty");
        }
        if self.h_side == 0 {
            return domain("the h-box side must be positive");
        }
        Ok(())
    }

    /// `|D|·H^{2j}`.
    fn weight_total(&self) -> BigInt {
        BigInt::from(self.domain.len()) * num_traits::pow(BigInt::from(self.h_side), 2 * self.j)
    }

    /// Multiplicity of every shift `v = p(x + s)`, summed over `x ∈ D` and
    /// the `h`-sums `s`.
    fn shift_weights(&self) -> Result<BTreeMap<(i64, i64), BigInt>> {
        let counts = h_sum_counts(self.h_side, self.j)?;
        let mut by_sigma: HashMap<SmallGaussian, BigInt> = HashMap::new();
        for x in &self.domain {
            for (s, c) in &counts {
                *by_sigma.entry(x + s).or_default() += c;
            }
        }
        let mut sigmas: Vec<(SmallGaussian, BigInt)> = by_sigma.into_iter().collect();
        sigmas.sort_by_key(|(s, _)| (s.im, s.re));
        let values: Vec<Option<SmallGaussian>> = sigmas
            .par_iter()
            .map(|(s, _)| self.p.eval(&GaussianInt::from(*s)).to_small())
            .collect();
        let mut out: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((_, c), v) in sigmas.into_iter().zip(values) {
            // shifts that do not fit i64 are far outside any box
            let key = v.map(|v| (v.re, v.im)).unwrap_or((i64::MAX, i64::MAX));
            *out.entry(key).or_default() += c;
        }
        Ok(out)
    }
}

/// `#{h ∈ [H]^j : h_1 + … + h_j = s}` for every reachable `s`.
pub fn h_sum_counts(h_side: u64, j: usize) -> Result<Vec<(SmallGaussian, BigInt)>> {
    if h_side == 0 {
        return domain("the h-box side must be positive");
    }
    let mut acc: HashMap<SmallGaussian, BigInt> = HashMap::from([(SmallGaussian::new(0, 0), BigInt::one())]);
    for _ in 0..j {
        let mut next: HashMap<SmallGaussian, BigInt> = HashMap::new();
        for (s, c) in &acc {
            for h in enumerate_box::<i64>(h_side) {
                *next.entry(s + &h).or_default() += c;
            }
        }
        acc = next;
    }
    let mut out: Vec<_> = acc.into_iter().collect();
    out.sort_by_key(|(s, _)| (s.im, s.re));
    Ok(out)
}

/// `Σ_n u(n)·w(n + v)` over `n ∈ [N]`, for integer weights on `[N]`.
fn shifted_dot(n: u64, u: &[i64], w: &[i64], v: (i64, i64)) -> i128 {
    let s = n as i64;
    if v.0.abs() >= s || v.1.abs() >= s {
        return 0;
    }
    let mut acc = 0i128;
    for b in 1..=s {
        let b2 = b + v.1;
        if b2 < 1 || b2 > s {
            continue;
        }
        for a in 1..=s {
            let a2 = a + v.0;
            if a2 < 1 || a2 > s {
                continue;
            }
            let i = ((b - 1) * s + (a - 1)) as usize;
            let k = ((b2 - 1) * s + (a2 - 1)) as usize;
            acc += u[i] as i128 * w[k] as i128;
        }
    }
    acc
}

fn weighted_sum(n: u64, u: &[i64], w: &[i64], shifts: &BTreeMap<(i64, i64), BigInt>) -> BigInt {
    let parts: Vec<BigInt> = shifts
        .par_iter()
        .map(|(v, c)| c * BigInt::from(shifted_dot(n, u, w, *v)))
        .collect();
    parts.into_iter().sum()
}

/// `E_{n∈[N]} E_{x∈D} E_h f(n)·f(n + p(σ_j(x, h)))`.
pub fn correlation(a: &BoxSubset, spec: &CorrelationSpec) -> Result<BigRational> {
    spec.check()?;
    let n = a.side();
    let f: Vec<i64> = enumerate_box::<i64>(n).map(|z| a.scaled_balanced(&z)).collect();
    let s = weighted_sum(n, &f, &f, &spec.shift_weights()?);
    let nn = BigInt::from(n * n);
    let den = num_traits::pow(nn, 3) * spec.weight_total();
    Ok(BigRational::new(s, den))
}

/// `E_{n∈[N]} E_{x∈D} E_h 1_A(n)·1_A(n + p(σ_j(x, h)))`.
pub fn indicator_correlation(a: &BoxSubset, spec: &CorrelationSpec) -> Result<BigRational> {
    spec.check()?;
    let n = a.side();
    let ind: Vec<i64> = a.mask().iter().map(|&b| b as i64).collect();
    let s = weighted_sum(n, &ind, &ind, &spec.shift_weights()?);
    Ok(BigRational::new(s, BigInt::from(n * n) * spec.weight_total()))
}

/// The four expectations in the expansion of `f(n)·f(n + v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTerms {
    #[serde(serialize_with = "json::rational")]
    pub correlation: BigRational,
    /// `E 1_A(n)·1_A(n+v)`.
    #[serde(serialize_with = "json::rational")]
    pub indicator: BigRational,
    /// `δ·E 1_A(n)·1_[N](n+v)`.
    #[serde(serialize_with = "json::rational")]
    pub cross_left: BigRational,
    /// `δ·E 1_[N](n)·1_A(n+v)`.
    #[serde(serialize_with = "json::rational")]
    pub cross_right: BigRational,
    /// `δ²·E 1_[N](n)·1_[N](n+v)`.
    #[serde(serialize_with = "json::rational")]
    pub box_term: BigRational,
    pub holds: bool,
}

/// Each term is summed separately, directly over `n`, `x` and every
/// tuple `h`, without the reductions used by [`correlation`].
pub fn expansion_terms(a: &BoxSubset, spec: &CorrelationSpec) -> Result<ExpansionTerms> {
    let corr = if spec.domain.is_empty() || spec.h_side == 0 {
        BigRational::zero()
    } else {
        correlation(a, spec)?
    };
    let delta = a.density();
    let n = a.side();
    let mut counts = [0i64; 4];
    let tuples = h_tuples(spec.h_side, spec.j)?;
    for x in &spec.domain {
        for h in &tuples {
            let sigma = h.iter().fold(*x, |s, k| &s + k);
            let v = spec.p.eval(&GaussianInt::from(sigma));
            for m in enumerate_box::<i64>(n) {
                let t = (&GaussianInt::from(m) + &v).to_small();
                let in_a = |z: &SmallGaussian| a.contains(z) as i64;
                let in_box = |z: &SmallGaussian| a.in_box(z) as i64;
                let (ta, tb) = t.map(|t| (in_a(&t), in_box(&t))).unwrap_or((0, 0));
                counts[0] += in_a(&m) * ta;
                counts[1] += in_a(&m) * tb;
                counts[2] += ta;
                counts[3] += tb;
            }
        }
    }
    let total = BigInt::from(n * n) * BigInt::from(spec.domain.len()) * BigInt::from(tuples.len());
    let e = |c: i64| {
        if total.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(c), total.clone())
        }
    };
    let indicator = e(counts[0]);
    let cross_left = &delta * e(counts[1]);
    let cross_right = &delta * e(counts[2]);
    let box_term = &delta * &delta * e(counts[3]);
    let holds = corr == &indicator - &cross_left - &cross_right + &box_term;
    Ok(ExpansionTerms {
        correlation: corr,
        indicator,
        cross_left,
        cross_right,
        box_term,
        holds,
    })
}

/// `correlation = indicator − cross_left − cross_right + box_term`, exactly.
pub fn expansion_identity_check(a: &BoxSubset, spec: &CorrelationSpec) -> Result<bool> {
    Ok(expansion_terms(a, spec)?.holds)
}

fn h_tuples(h_side: u64, j: usize) -> Result<Vec<Vec<SmallGaussian>>> {
    let total = (h_side as u128).checked_pow(2 * j as u32).unwrap_or(u128::MAX);
    if total > 1 << 22 {
        return Err(Error::Limit("too many h-tuples to enumerate".into()));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..j {
        out = out
            .into_iter()
            .flat_map(|t| {
                enumerate_box::<i64>(h_side).map(move |h| {
                    let mut t = t.clone();
                    t.push(h);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// `⌊N^{1/k}⌋`.
pub fn integer_root_floor(n: &BigInt, k: u32) -> Result<BigInt> {
    if n < &BigInt::one() || k == 0 {
        return domain("integer roots need N ≥ 1 and k ≥ 1");
    }
    Ok(n.nth_root(k))
}

/// `D_p(N) = [⌊N^{1/2d}⌋] + c·(1+i)` with `c = ⌈M_p⌉`, so that every
/// point has norm above `M_p²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpDomain {
    pub side: u64,
    pub offset: u64,
    #[serde(serialize_with = "json::decimal")]
    pub mp_squared: BigInt,
    pub points: Vec<SmallGaussian>,
}

pub fn dp_domain(n: u64, p: &GIPolynomial) -> Result<DpDomain> {
    let d = p.degree()?;
    if d == 0 {
        return domain("D_p(N) needs a nonconstant polynomial");
    }
    let side = integer_root_floor(&BigInt::from(n), 2 * d as u32)?
        .to_u64()
        .expect("at most N");
    let mp2 = p.mp_squared()?;
    let mut c = mp2.sqrt();
    if &c * &c < mp2 {
        c += 1;
    }
    let offset = c
        .to_i64()
        .filter(|c| *c < 1 << 20)
        .ok_or_else(|| Error::Limit("M_p too large for D_p(N)".into()))?;
    let points: Vec<SmallGaussian> = ShiftedBox::new(side as i64, SmallGaussian::new(offset, offset))
        .iter()
        .collect();
    for z in &points {
        if BigInt::from(z.norm()) <= mp2 || p.eval(&GaussianInt::from(*z)).is_zero() {
            return Err(Error::Invariant(format!("p vanishes or may vanish at {z} in D_p(N)")));
        }
    }
    Ok(DpDomain {
        side,
        offset: offset as u64,
        mp_squared: mp2,
        points,
    })
}

/// The pair `(k, k′)` of the `h`-box maximizing `|correlation|` for the
/// difference polynomial `p′(y) = p(y + k′) − p(y + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLoweringStep {
    pub p_prime: GIPolynomial,
    pub k: SmallGaussian,
    pub k_prime: SmallGaussian,
    /// Length of the tuple `h` fed to `p′`.
    pub j: usize,
    #[serde(serialize_with = "json::rational")]
    pub correlation: BigRational,
    pub pairs_scanned: usize,
}

/// Scans every ordered pair `k ≠ k′` in `[H]`. For `p` of degree `e`
/// the correlation of `p′` uses tuples of length `e − 2` (`0` when
/// `e ≤ 2`). Ties go to the first pair in enumeration order.
pub fn degree_lowering_step(
    a: &BoxSubset,
    p: &GIPolynomial,
    domain_pts: &[SmallGaussian],
    h_side: u64,
) -> Result<DegreeLoweringStep> {
    let e = p.degree()?;
    if e == 0 {
        return domain("degree lowering needs a nonconstant polynomial");
    }
    let hbox: Vec<SmallGaussian> = enumerate_box(h_side).collect();
    if hbox.len() < 2 {
        return domain("the h-box needs two distinct points");
    }
    let j = e.saturating_sub(2);
    let pairs: Vec<(SmallGaussian, SmallGaussian)> = hbox
        .iter()
        .flat_map(|k| hbox.iter().filter(move |k2| *k2 != k).map(move |k2| (*k, *k2)))
        .collect();
    let results: Vec<(GIPolynomial, BigRational)> = pairs
        .par_iter()
        .map(|(k, k2)| {
            let pp = degree_lower_diff(p, &GaussianInt::from(*k), &GaussianInt::from(*k2))?;
            let spec = CorrelationSpec::new(pp.clone(), domain_pts.to_vec(), h_side, j);
            Ok((pp, correlation(a, &spec)?))
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, (_, c)) in results.iter().enumerate() {
        if c.abs() > results[best].1.abs() {
            best = i;
        }
    }
    let (p_prime, corr) = results[best].clone();
    Ok(DegreeLoweringStep {
        p_prime,
        k: pairs[best].0,
        k_prime: pairs[best].1,
        j,
        correlation: corr,
        pairs_scanned: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(a: i64, b: i64) -> SmallGaussian {
        SmallGaussian::new(a, b)
    }

    /// Direct average over `n`, `x` and every tuple, in reverse order.
    fn naive(a: &BoxSubset, spec: &CorrelationSpec, f: impl Fn(&SmallGaussian) -> BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut count = 0u64;
        let tuples = h_tuples(spec.h_side, spec.j).unwrap();
        let pts: Vec<SmallGaussian> = enumerate_box(a.side()).collect();
        for x in spec.domain.iter().rev() {
            for h in tuples.iter().rev() {
                let sigma = h.iter().fold(*x, |s, k| &s + k);
                let v = spec.p.eval(&GaussianInt::from(sigma)).to_small().unwrap();
                for m in pts.iter().rev() {
                    acc += f(m) * f(&(m + &v));
                    count += 1;
                }
            }
        }
        acc / BigRational::from_integer(count.into())
    }

    #[test]
    fn correlations_match_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..30 {
            let n = 1 + case % 4;
            let a = BoxSubset::random(n, &mut rng).unwrap();
            let p = parse_poly(["x^2", "x^2 + x", "(1+i)x^2 - 1", "x"][case as usize % 4]).unwrap();
            let spec = CorrelationSpec::new(p, vec![g(1, 1), g(0, 2), g(2, -1)], 1 + case % 2, (case % 3) as usize);
            let c = correlation(&a, &spec).unwrap();
            assert_eq!(c, naive(&a, &spec, |z| a.balanced(z)));
            let ind = indicator_correlation(&a, &spec).unwrap();
            let one = |z: &SmallGaussian| {
                if a.contains(z) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            };
            assert_eq!(ind, naive(&a, &spec, one));
            assert!(expansion_identity_check(&a, &spec).unwrap());
        }
    }

    #[test]
    fn trivial_sets() {
        let p = parse_poly("x^2").unwrap();
        let spec = CorrelationSpec::new(p, vec![g(-1, 0)], 2, 1);
        for a in [BoxSubset::full(3).unwrap(), BoxSubset::empty(3).unwrap()] {
            assert!(correlation(&a, &spec).unwrap().is_zero());
        }
        assert!(indicator_correlation(&BoxSubset::empty(3).unwrap(), &spec)
            .unwrap()
            .is_zero());
        assert!(indicator_correlation(&BoxSubset::full(3).unwrap(), &spec).unwrap() > BigRational::zero());
        let empty = CorrelationSpec::new(parse_poly("x").unwrap(), vec![], 1, 0);
        assert!(correlation(&BoxSubset::full(2).unwrap(), &empty).is_err());
    }

    #[test]
    fn h_counts() {
        let c = h_sum_counts(2, 2).unwrap();
        let total: BigInt = c.iter().map(|(_, k)| k.clone()).sum();
        assert_eq!(total, BigInt::from(16));
        assert_eq!(c[0], (g(2, 2), BigInt::one()));
        assert_eq!(h_sum_counts(3, 0).unwrap(), vec![(g(0, 0), BigInt::one())]);
    }

    #[test]
    fn roots() {
        assert_eq!(integer_root_floor(&16.into(), 4).unwrap(), 2.into());
        assert_eq!(integer_root_floor(&1_000_000.into(), 2).unwrap(), 1000.into());
        let n = (BigInt::one() << 64) - 1;
        let r = integer_root_floor(&n, 8).unwrap();
        assert!(num_traits::pow(r.clone(), 8) <= n && num_traits::pow(r + 1, 8) > n);
        assert!(integer_root_floor(&0.into(), 2).is_err());
    }

    #[test]
    fn dp() {
        let d = dp_domain(16, &parse_poly("x^2").unwrap()).unwrap();
        assert_eq!((d.side, d.offset), (2, 2));
        assert_eq!(d.points, vec![g(3, 3), g(4, 3), g(3, 4), g(4, 4)]);
        let d = dp_domain(3, &parse_poly("x^2 - 2").unwrap()).unwrap();
        assert_eq!((d.side, d.offset), (1, 4));
    }

    #[test]
    fn degree_lowering_rescan() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = BoxSubset::random(3, &mut rng).unwrap();
        let p = parse_poly("x^2").unwrap();
        let dom = vec![g(1, 1), g(2, 1)];
        let step = degree_lowering_step(&a, &p, &dom, 2).unwrap();
        assert_eq!(step.j, 0);
        let mut best = BigRational::zero();
        for k in enumerate_box::<i64>(2) {
            for k2 in enumerate_box::<i64>(2) {
                if k != k2 {
                    let pp = &p.shift(&GaussianInt::from(k2)) - &p.shift(&GaussianInt::from(k));
                    let c = correlation(&a, &CorrelationSpec::new(pp, dom.clone(), 2, 0)).unwrap();
                    if c.abs() > best {
                        best = c.abs();
                    }
                }
            }
        }
        assert_eq!(step.correlation.abs(), best);
        let lhs = &p.shift(&GaussianInt::from(step.k_prime)) - &p.shift(&GaussianInt::from(step.k));
        assert_eq!(lhs, step.p_prime);
    }
}
