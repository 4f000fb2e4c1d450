//! Numerical thresholds of the density-increment argument.
//!
//! Values too large to write down are reported through bounds on their
//! binary logarithm (or on the logarithm of that). Logarithms and roots
//! are enclosed in rational brackets with rigorous rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::json;

/// Exact integers are written out up to this many bits.
const EXACT_BITS: u64 = 4096;
/// Working precision (bits) of logarithms and roots.
const PREC: u64 = 96;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn is_pow2(x: &BigInt) -> bool {
    x.is_positive() && (x & (x - 1u32)).is_zero()
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
fn ceil_log2(x: &BigInt) -> BigInt {
    BigInt::from((x - 1u32).bits())
}

/// A closed interval `[lower, upper]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    #[serde(serialize_with = "json::rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "json::rational")]
    pub upper: BigRational,
}

impl Bracket {
    pub fn new(lower: BigRational, upper: BigRational) -> Self {
        debug_assert!(lower <= upper);
        Bracket { lower, upper }
    }

    pub fn point(x: BigRational) -> Self {
        Bracket {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    fn add(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lower + &o.lower, &self.upper + &o.upper)
    }

    /// Multiply by `k ≥ 0`.
    fn scale(&self, k: &BigRational) -> Bracket {
        Bracket::new(&self.lower * k, &self.upper * k)
    }

    /// `ln` of a bracket of positive numbers.
    fn ln(&self) -> Result<Bracket> {
        Ok(Bracket::new(
            ln_bracket(&self.lower)?.lower,
            ln_bracket(&self.upper)?.upper,
        ))
    }

    /// `x^{1/n}` of a bracket of nonnegative numbers.
    fn root(&self, n: u32) -> Bracket {
        let scale = pow2(PREC * n as u64);
        let lo = (&self.lower * rat(scale.clone())).floor().to_integer().nth_root(n);
        let hi = (&self.upper * rat(scale)).ceil().to_integer().nth_root(n) + 1u32;
        let den = pow2(PREC);
        Bracket::new(BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }
}

/// `atanh(y)` for `y ∈ [ylo, yhi] ⊂ [0, 1/2]`, given as fixed-point
/// numerators over `2^p`.
fn atanh_fixed(ylo: &BigInt, yhi: &BigInt, p: u64) -> (BigInt, BigInt) {
    let shift = 2 * p;
    let mut lo = BigInt::zero();
    let mut pw = ylo.clone();
    let y2 = ylo * ylo;
    let mut k = 1u32;
    while !pw.is_zero() {
        lo += &pw / k;
        pw = (&pw * &y2) >> shift;
        k += 2;
    }
    let mut hi = BigInt::zero();
    let mut pw = yhi.clone();
    let y2 = yhi * yhi;
    let mut k = 1u32;
    while pw > BigInt::one() {
        hi += (&pw + (k - 1)) / k;
        // ceiling of pw·y²
        pw = (&pw * &y2 + (pow2(shift) - 1u32)) >> shift;
        k += 2;
    }
    // remaining terms: at most y^{2K+1}/(1 − y²) ≤ (4/3)·pw
    hi += (&pw * 4u32 + 2u32) / 3u32 + 1u32;
    (lo, hi)
}

/// Rigorous bracket of the natural logarithm of `x > 0`.
pub fn ln_bracket(x: &BigRational) -> Result<Bracket> {
    if !x.is_positive() {
        return domain("logarithm of a nonpositive number");
    }
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = rat(2);
    let mut m = x / two.pow(k as i32);
    if m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    if m >= two {
        m /= &two;
        k += 1;
    }
    let p = PREC + 16 + 64;
    let y = (&m - BigRational::one()) / (&m + BigRational::one());
    let scale = rat(pow2(p));
    let ylo = (&y * &scale).floor().to_integer();
    let yhi = (&y * &scale).ceil().to_integer();
    let (mlo, mhi) = atanh_fixed(&ylo, &yhi, p);
    let third = pow2(p) / 3u32;
    let (llo, lhi) = atanh_fixed(&third, &(&third + 1u32), p);
    let (klo, khi) = if k >= 0 {
        (&llo * k, &lhi * k)
    } else {
        (&lhi * k, &llo * k)
    };
    let den = pow2(p);
    Ok(Bracket::new(
        BigRational::new((mlo + klo) * 2u32, den.clone()),
        BigRational::new((mhi + khi) * 2u32, den),
    ))
}

/// `log₂` of a positive integer, to within `1/64`.
fn log2_int(x: &BigInt) -> (BigRational, BigRational) {
    let b = x.bits();
    if is_pow2(x) {
        return (rat(b - 1), rat(b - 1));
    }
    if b > EXACT_BITS {
        return (rat(b - 1), rat(b));
    }
    let y = num_traits::pow(x.clone(), 64);
    let yb = y.bits();
    (
        BigRational::new(BigInt::from(yb - 1), 64.into()),
        BigRational::new(BigInt::from(yb), 64.into()),
    )
}

fn log2_rat(x: &BigRational) -> (BigRational, BigRational) {
    let (nl, nh) = log2_int(x.numer());
    let (dl, dh) = log2_int(x.denom());
    (nl - dh, nh - dl)
}

/// A positive real known exactly, or only through bounds on its binary
/// logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Magnitude {
    Exact {
        #[serde(serialize_with = "json::decimal")]
        value: BigInt,
    },
    /// `2^lower ≤ x ≤ 2^upper`.
    Log2 {
        #[serde(serialize_with = "json::decimal")]
        lower: BigInt,
        #[serde(serialize_with = "json::decimal")]
        upper: BigInt,
    },
    /// `2^(2^lower) ≤ x ≤ 2^(2^upper)`; a negative `lower` only says `x ≥ 1`.
    Log2Log2 {
        #[serde(serialize_with = "json::decimal")]
        lower: BigInt,
        #[serde(serialize_with = "json::decimal")]
        upper: BigInt,
    },
}

impl Magnitude {
    pub fn exact(value: BigInt) -> Self {
        if value.bits() > EXACT_BITS {
            let b = value.bits();
            return Magnitude::log2(BigInt::from(b - 1), BigInt::from(b));
        }
        Magnitude::Exact { value }
    }

    pub fn log2(lower: BigInt, upper: BigInt) -> Self {
        if upper.bits() > EXACT_BITS {
            let (lower, upper) = promote(&lower, &upper);
            return Magnitude::Log2Log2 { lower, upper };
        }
        Magnitude::Log2 { lower, upper }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Magnitude::Exact { .. })
    }

    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Magnitude::Exact { value } => Some(value),
            _ => None,
        }
    }

    fn level(&self) -> u8 {
        match self {
            Magnitude::Exact { .. } => 0,
            Magnitude::Log2 { .. } => 1,
            Magnitude::Log2Log2 { .. } => 2,
        }
    }

    /// Bounds at level 1 (`log₂`) or 2 (`log₂ log₂`).
    fn bounds_at(&self, level: u8) -> (BigInt, BigInt) {
        let (lo, hi) = match self {
            Magnitude::Exact { value } => {
                let b = BigInt::from(value.bits());
                if is_pow2(value) {
                    (&b - 1u32, b - 1u32)
                } else {
                    (&b - 1u32, b)
                }
            }
            Magnitude::Log2 { lower, upper } | Magnitude::Log2Log2 { lower, upper } => (lower.clone(), upper.clone()),
        };
        if level == 2 && self.level() < 2 {
            promote(&lo, &hi)
        } else {
            (lo, hi)
        }
    }

    /// The order of two magnitudes, when their bounds decide it.
    pub fn cmp_known(&self, other: &Magnitude) -> Option<Ordering> {
        if let (Magnitude::Exact { value: a }, Magnitude::Exact { value: b }) = (self, other) {
            return Some(a.cmp(b));
        }
        let level = self.level().max(other.level());
        let (alo, ahi) = self.bounds_at(level);
        let (blo, bhi) = other.bounds_at(level);
        if ahi < blo {
            Some(Ordering::Less)
        } else if alo > bhi {
            Some(Ordering::Greater)
        } else if alo == ahi && blo == bhi && alo == blo && level == 1 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn max(a: &Magnitude, b: &Magnitude) -> Magnitude {
        match a.cmp_known(b) {
            Some(Ordering::Less) => b.clone(),
            Some(_) => a.clone(),
            None => {
                let level = a.level().max(b.level()).max(1);
                let (alo, ahi) = a.bounds_at(level);
                let (blo, bhi) = b.bounds_at(level);
                let (lower, upper) = (alo.max(blo), ahi.max(bhi));
                if level == 1 {
                    Magnitude::log2(lower, upper)
                } else {
                    Magnitude::Log2Log2 { lower, upper }
                }
            }
        }
    }
}

/// From `2^lo ≤ x ≤ 2^hi` to bounds on `log₂ log₂ x`.
fn promote(lo: &BigInt, hi: &BigInt) -> (BigInt, BigInt) {
    let l = if lo >= &BigInt::one() {
        BigInt::from(lo.bits() - 1)
    } else {
        BigInt::from(-1)
    };
    let h = if hi >= &BigInt::one() {
        ceil_log2(hi)
    } else {
        BigInt::zero()
    };
    (l, h)
}

/// `Π base_k^{e_k} · √root`, kept symbolic until it is small enough.
#[derive(Clone, Debug, Default)]
struct Product {
    factors: Vec<(BigRational, BigInt)>,
    root: Option<BigInt>,
}

impl Product {
    fn with(mut self, base: BigRational, e: impl Into<BigInt>) -> Self {
        self.factors.push((base, e.into()));
        self
    }

    fn two(self, e: impl Into<BigInt>) -> Self {
        self.with(rat(2), e)
    }

    /// `M^k` given `M²`.
    fn sqrt_power(mut self, m2: &BigInt, k: &BigInt) -> Self {
        let (half, odd) = k.div_rem(&BigInt::from(2));
        self.factors.push((rat(m2.clone()), half));
        if odd.is_one() {
            self.root = Some(m2.clone());
        }
        self
    }

    fn log2_bounds(&self) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (b, e) in &self.factors {
            let (bl, bh) = log2_rat(b);
            let e = rat(e.clone());
            if e.is_negative() {
                lo += &e * bh;
                hi += &e * bl;
            } else {
                lo += &e * bl;
                hi += &e * bh;
            }
        }
        if let Some(r) = &self.root {
            let (rl, rh) = log2_int(r);
            lo += rl / rat(2);
            hi += rh / rat(2);
        }
        (lo, hi)
    }

    /// `⌈value⌉`.
    fn ceil(&self) -> Magnitude {
        let (lo, hi) = self.log2_bounds();
        if hi <= rat(EXACT_BITS) {
            let mut v = BigRational::one();
            for (b, e) in &self.factors {
                let e = e.to_i32().expect("small exponent");
                v *= b.pow(e);
            }
            let c = match &self.root {
                // ⌈v·√r⌉ is the least n with n² ≥ v²·r
                Some(r) => {
                    let s = (&v * &v * rat(r.clone())).ceil().to_integer();
                    let mut n = s.sqrt();
                    if &n * &n < s {
                        n += 1u32;
                    }
                    n
                }
                None => v.ceil().to_integer(),
            };
            return Magnitude::exact(c);
        }
        let zero = BigRational::zero();
        let lo = if lo > zero {
            lo.floor().to_integer()
        } else {
            BigInt::zero()
        };
        let hi = if hi > zero {
            hi.ceil().to_integer()
        } else {
            BigInt::zero()
        } + 1u32;
        Magnitude::log2(lo, hi)
    }
}

/// `⌈base⌉^exponent`, as written in the threshold `N₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerTerm {
    pub base: Magnitude,
    pub exponent: Magnitude,
    pub value: Magnitude,
}

fn ceil_pow(base: &Product, e: &BigInt) -> PowerTerm {
    let b = base.ceil();
    let exponent = Magnitude::exact(e.clone());
    let value = match (&b, e.to_u64()) {
        (Magnitude::Exact { value }, Some(k)) if value.bits().saturating_mul(k) <= EXACT_BITS => {
            Magnitude::exact(num_traits::pow(value.clone(), k as usize))
        }
        _ if b.level() <= 1 && e.bits() <= EXACT_BITS => {
            let (lo, hi) = b.bounds_at(1);
            Magnitude::log2(e * lo, e * hi)
        }
        _ => {
            let (blo, bhi) = b.bounds_at(2);
            let elo = BigInt::from(e.bits() - 1);
            let ehi = ceil_log2(e);
            let lower = if blo.is_negative() { BigInt::from(-1) } else { elo + blo };
            Magnitude::Log2Log2 {
                lower,
                upper: ehi + bhi,
            }
        }
    };
    PowerTerm {
        base: b,
        exponent,
        value,
    }
}

/// The terms of a maximum and the maximum itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub terms: Vec<Magnitude>,
    pub value: Magnitude,
}

impl Threshold {
    fn of(terms: Vec<Magnitude>) -> Self {
        let value = terms
            .iter()
            .skip(1)
            .fold(terms[0].clone(), |m, t| Magnitude::max(&m, t));
        Threshold { terms, value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepThreshold {
    pub m: u32,
    #[serde(flatten)]
    pub threshold: Threshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N0Report {
    pub first: PowerTerm,
    pub second: PowerTerm,
    pub value: Magnitude,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TMethod {
    /// Iteration in exact rationals.
    Exact,
    /// Outward-rounded dyadic enclosures of every `δ_i`.
    CertifiedInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub d: u32,
    pub r: u32,
    #[serde(serialize_with = "json::rational")]
    pub delta0: BigRational,
    #[serde(serialize_with = "json::decimal")]
    pub mp_squared: BigInt,
    #[serde(serialize_with = "json::rational")]
    pub c: BigRational,
    #[serde(rename = "C")]
    pub big_c: u64,
    #[serde(serialize_with = "json::rational")]
    pub epsilon: BigRational,
    /// `N_r(δ₀, M_p)`.
    pub n_r: Threshold,
    /// `N_{δ₀}` of the density increment lemma, rounded up.
    pub n_delta0: Threshold,
    /// `N_r(δ₀, M_p) ≥ N_{δ₀}`, when the bounds decide it.
    pub n_r_dominates: Option<bool>,
    /// The terms of `N₀` in the linearization step, other than `N_m`.
    pub linearization: Threshold,
    /// The terms of `N_{m+1}` in each degree-lowering step, other than `N_m`.
    pub degree_lowering: Vec<StepThreshold>,
    /// Least `i` with `δ_i > 1`, `δ_{i+1} = δ_i + c·δ_i^C`.
    pub t: Option<u64>,
    pub t_method: Option<TMethod>,
    /// `⌈2t + log_d(2^{2t+1}·t) + 4⌉`.
    pub r_from_t: Option<u64>,
    /// `N₀` of the final iteration, with `M_q = M_p` and `r = r_from_t`.
    pub n0: Option<N0Report>,
    /// `C_q = ((21·ln(4d) + ln ln M_q)/c)^ε`.
    pub c_q: Bracket,
    pub notes: Vec<String>,
}

fn check_delta(delta: &BigRational) -> Result<()> {
    if !delta.is_positive() || delta >= &BigRational::one() {
        return domain("δ must lie in (0, 1)");
    }
    Ok(())
}

/// `c = 2^{-(3·2^{d−1}+3)}` as the exponent `3·2^{d−1}+3`, and `C = 2^{d−1}+1`.
fn constants(d: u32) -> (u64, u64) {
    let h = 1u64 << (d - 1);
    (3 * h + 3, h + 1)
}

/// `N_r(δ, M_p)`.
pub fn n_r(d: u32, r: u32, delta: &BigRational, mp2: &BigInt) -> Result<Threshold> {
    check_delta(delta)?;
    let h = BigInt::from(1u64 << (d - 1));
    let dd = BigInt::from(d);
    let e1 = 4 * num_traits::pow(dd.clone(), r as usize);
    let first = Product::default()
        .two((3 * &h - 1) * &e1)
        .with(delta.clone(), -(&h + 1u32) * &e1);
    let e2 = BigInt::from(8 * d);
    let two_exp = 3 * &h + 2 * &dd * &dd * (2 * &dd + 1) + 9;
    let second = Product::default()
        .two(two_exp * &e2)
        .with(rat(d + 1), (2 * &dd + 2) * &e2)
        .sqrt_power(mp2, &(&dd * &e2))
        .with(delta.clone(), -(&h + 1u32) * &e2);
    Ok(Threshold::of(vec![first.ceil(), second.ceil()]))
}

fn n_delta0(d: u32, r: u32, delta: &BigRational, mp2: &BigInt) -> Threshold {
    let h = BigInt::from(1u64 << (d - 1));
    let dd = BigInt::from(d);
    let dexp = -(&h + 1u32);
    let mp = |p: Product, k: u64| p.sqrt_power(mp2, &BigInt::from(k));
    let t1 = mp(Product::default(), 2 * d as u64);
    let t2 = mp(
        Product::default()
            .two(4 * (3 * &h + 2 * &dd * (&dd + 1)))
            .with(rat(2 * d + 2), 4 * (2 * &dd + 2))
            .with(delta.clone(), 4 * &dexp),
        8,
    );
    let t3 = mp(
        Product::default()
            .two(4 * (3 * &h + 2 * &dd * (2 * &dd + 1) + 9))
            .with(delta.clone(), 4 * &dexp),
        8,
    );
    let t4 = mp(
        Product::default()
            .two(4)
            .with(rat(2 * d + 2), 2 * &dd + 2)
            .with(delta.clone(), -4),
        2,
    );
    let e5 = 4 * num_traits::pow(dd.clone(), r as usize);
    let t5 = Product::default()
        .two((3 * &h - 1) * &e5)
        .with(delta.clone(), &dexp * &e5);
    let t6 = mp(
        Product::default()
            .two(8 * &dd * (3 * &h + &dd * &dd * (2 * &dd + 1) + 9))
            .with(delta.clone(), 8 * &dd * &dexp),
        8 * (d as u64) * (d as u64),
    );
    Threshold::of([t1, t2, t3, t4, t5, t6].iter().map(Product::ceil).collect())
}

fn linearization(d: u32, r: u32, delta: &BigRational, mp2: &BigInt) -> Threshold {
    let h = BigInt::from(1u64 << (d - 1));
    let dd = BigInt::from(d);
    let e1 = 4 * num_traits::pow(dd.clone(), r as usize);
    let t1 = Product::default()
        .two((3 * &h - 1) * &e1)
        .with(delta.clone(), -(&h + 1u32) * &e1);
    let t2 = Product::default()
        .two(4 * (3 * &h + 2 * &dd * (2 * &dd + 1)))
        .with(rat(2 * d + 2), 4 * (2 * &dd + 2))
        .sqrt_power(mp2, &BigInt::from(8))
        .with(delta.clone(), -4 * (&h + 1u32));
    Threshold::of(vec![t1.ceil(), t2.ceil()])
}

fn degree_lowering(d: u32, r: u32, delta: &BigRational, mp2: &BigInt) -> Vec<StepThreshold> {
    let dd = BigInt::from(d);
    (1..d)
        .map(|m| {
            let h = BigInt::from(1u64 << m);
            let e1 = 4 * num_traits::pow(dd.clone(), r as usize);
            let t1 = Product::default()
                .two((3 * &h - 1) * &e1)
                .with(delta.clone(), -(&h + 1u32) * &e1);
            let t2 = Product::default()
                .two(2 * 3 * &h)
                .with(rat(2 * d + 2), 2 * (2 * &dd + 2))
                .sqrt_power(mp2, &BigInt::from(4))
                .with(delta.clone(), -2 * (&h + 1u32));
            StepThreshold {
                m,
                threshold: Threshold::of(vec![t1.ceil(), t2.ceil()]),
            }
        })
        .collect()
}

/// `t` with the last iterate not above 1 and the first above 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TExact {
    pub t: u64,
    pub before: BigRational,
    pub after: BigRational,
}

/// Exact rational iteration; `None` once a denominator exceeds `max_bits`.
pub fn t_exact(d: u32, delta0: &BigRational, max_bits: u64) -> Result<Option<TExact>> {
    check_delta(delta0)?;
    check_d(d)?;
    let (k, cexp) = constants(d);
    let c = BigRational::new(BigInt::one(), pow2(k));
    let mut cur = delta0.clone();
    let one = BigRational::one();
    let mut i = 0;
    loop {
        let next = &cur + &c * cur.pow(cexp as i32);
        i += 1;
        if next > one {
            return Ok(Some(TExact {
                t: i,
                before: cur,
                after: next,
            }));
        }
        if next.denom().bits() > max_bits {
            return Ok(None);
        }
        cur = next;
    }
}

/// `t` certified by enclosures: `δ_{t−1} ≤ before ≤ 1 < after ≤ δ_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCertified {
    pub t: u64,
    pub precision: u64,
    pub before: BigRational,
    pub after: BigRational,
}

/// Interval iteration at increasing precision; fails after `max_steps`.
pub fn t_interval(d: u32, delta0: &BigRational, max_steps: u64) -> Result<TCertified> {
    check_delta(delta0)?;
    check_d(d)?;
    let (k, cexp) = constants(d);
    let mut p = 64u64;
    while p <= 4096 {
        let one = pow2(p);
        let scale = rat(one.clone());
        let mut lo = (delta0 * &scale).floor().to_integer();
        let mut hi = (delta0 * &scale).ceil().to_integer();
        let shift = (cexp - 1) * p + k;
        let round_up = pow2(shift) - 1u32;
        let mut i = 0;
        loop {
            if i >= max_steps {
                return Err(Error::Limit(format!("t exceeds {max_steps} steps")));
            }
            let prev_hi = hi.clone();
            lo = &lo + (num_traits::pow(lo.clone(), cexp as usize) >> shift);
            hi = &hi + ((num_traits::pow(hi.clone(), cexp as usize) + &round_up) >> shift);
            i += 1;
            if hi > one {
                if lo > one {
                    return Ok(TCertified {
                        t: i,
                        precision: p,
                        before: BigRational::new(prev_hi, one.clone()),
                        after: BigRational::new(lo, one),
                    });
                }
                break;
            }
        }
        p *= 2;
    }
    Err(Error::Limit("t could not be certified at 4096 bits".into()))
}

fn check_d(d: u32) -> Result<()> {
    if !(2..=16).contains(&d) {
        return domain("d must lie in [2, 16]");
    }
    Ok(())
}

/// `⌈2t + log_d(2^{2t+1}·t) + 4⌉ = 2t + 4 + e` with `e` least such that
/// `d^e ≥ 2^{2t+1}·t`.
fn r_from_t(d: u32, t: u64) -> Result<u64> {
    let y_ln = ln_bracket(&rat(t))?.add(&ln_bracket(&rat(2))?.scale(&rat(2 * t + 1)));
    let ln_d = ln_bracket(&rat(d))?;
    let lo = (&y_ln.lower / &ln_d.upper).ceil().to_integer();
    let hi = (&y_ln.upper / &ln_d.lower).ceil().to_integer();
    let e = if lo == hi {
        lo
    } else {
        // close to an integer: settle it exactly
        let y = (BigInt::from(t)) << (2 * t + 1);
        let mut e = lo.clone();
        while num_traits::pow(BigInt::from(d), e.to_usize().expect("small")) < y {
            e += 1u32;
        }
        e
    };
    Ok(2 * t + 4 + e.to_u64().expect("small"))
}

fn n0(d: u32, t: u64, r: u64, delta: &BigRational, mp2: &BigInt) -> N0Report {
    let h = BigInt::from(1u64 << (d - 1));
    let dd = BigInt::from(d);
    let first = Product::default().two(3 * &h - 1).with(delta.clone(), -(&h + 1u32));
    let dt = num_traits::pow(dd.clone(), t as usize);
    let second = Product::default()
        .two(3 * &h + 2 * &dd * &dd * (2 * &dd + 1) + 10 + 2 * BigInt::from(t) * &dt * &dd * &dd)
        .with(rat(d + 1), 2 * &dd + 2)
        .sqrt_power(mp2, &dt)
        .with(delta.clone(), -(&h + 1u32));
    let four_d = BigInt::from(4 * d);
    let first = ceil_pow(&first, &num_traits::pow(four_d.clone(), (t + r) as usize));
    let second = ceil_pow(&second, &num_traits::pow(four_d, (t + 2) as usize));
    let value = Magnitude::max(&first.value, &second.value);
    N0Report { first, second, value }
}

/// `C_q` from `M_q²`.
fn c_q(d: u32, mq2: &BigInt) -> Result<Bracket> {
    let (k, cexp) = constants(d);
    let ln_mq = ln_bracket(&rat(mq2.clone()))?.scale(&BigRational::new(1.into(), 2.into()));
    if !ln_mq.lower.is_positive() {
        return domain("M_q must exceed 1");
    }
    let x = ln_bracket(&rat(4 * d))?.scale(&rat(21)).add(&ln_mq.ln()?);
    if !x.lower.is_positive() {
        return Err(Error::Invariant("21·ln(4d) + ln ln M_q is not positive".into()));
    }
    Ok(x.scale(&rat(pow2(k))).root(cexp as u32))
}

/// `C_q/(ln ln N)^ε` enclosed in a bracket.
pub fn final_bound(d: u32, mq2: &BigInt, n: &BigInt) -> Result<Bracket> {
    check_d(d)?;
    if n < &BigInt::from(16) {
        return domain("the final bound needs N ≥ 16");
    }
    let (_, cexp) = constants(d);
    let cq = c_q(d, mq2)?;
    let lnln = ln_bracket(&rat(n.clone()))?.ln()?;
    if !lnln.lower.is_positive() {
        return Err(Error::Invariant("ln ln N is not positive".into()));
    }
    let den = lnln.root(cexp as u32);
    Ok(Bracket::new(&cq.lower / &den.upper, &cq.upper / &den.lower))
}

/// Every threshold constant for degree `d`, parameter `r`, density `δ₀`
/// and `M_p²`.
pub fn threshold_report(d: u32, r: u32, delta0: &BigRational, mp2: &BigInt) -> Result<ThresholdReport> {
    check_d(d)?;
    check_delta(delta0)?;
    if !(4..=64).contains(&r) {
        return domain("r must lie in [4, 64]");
    }
    if !mp2.is_positive() {
        return domain("M_p² must be positive");
    }
    let (k, cexp) = constants(d);
    let mut notes = Vec::new();
    let nr = n_r(d, r, delta0, mp2)?;
    let nd = n_delta0(d, r, delta0, mp2);
    let dominates = nr.value.cmp_known(&nd.value).map(|o| o != Ordering::Less);

    let (t, method) = match t_exact(d, delta0, 20_000)? {
        Some(te) => (Some(te.t), Some(TMethod::Exact)),
        None => match t_interval(d, delta0, 5_000_000) {
            Ok(tc) => (Some(tc.t), Some(TMethod::CertifiedInterval)),
            Err(Error::Limit(m)) => {
                notes.push(format!("t not computed: {m}"));
                (None, None)
            }
            Err(e) => return Err(e),
        },
    };
    let r_t = t.map(|t| r_from_t(d, t)).transpose()?;
    let n0 = match (t, r_t) {
        (Some(t), Some(rt)) if t <= 20_000 => Some(n0(d, t, rt, delta0, mp2)),
        (Some(_), _) => {
            notes.push("N0 not evaluated for t > 20000".into());
            None
        }
        _ => None,
    };
    if d % 2 == 1 {
        notes.push("odd powers of M_p are taken as ⌈M_p^{2k}·√(M_p²)⌉ exactly".into());
    }
    Ok(ThresholdReport {
        d,
        r,
        delta0: delta0.clone(),
        mp_squared: mp2.clone(),
        c: BigRational::new(BigInt::one(), pow2(k)),
        big_c: cexp,
        epsilon: BigRational::new(BigInt::one(), BigInt::from(cexp)),
        n_r: nr,
        n_delta0: nd,
        n_r_dominates: dominates,
        linearization: linearization(d, r, delta0, mp2),
        degree_lowering: degree_lowering(d, r, delta0, mp2),
        t,
        t_method: method,
        r_from_t: r_t,
        n0,
        c_q: c_q(d, mp2)?,
        notes,
    })
}
