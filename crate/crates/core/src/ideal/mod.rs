//! Nonzero ideals of `Z[i]`, represented by generators.
//!
//! `Z[i]` is a principal ideal domain, so an ideal is a Gaussian integer up
//! to units. This module factors ideals into prime powers, enumerates
//! residue systems and solves simultaneous congruences.

mod integer;

pub use integer::{factor_integer, is_prime, primes_up_to, sqrt_mod};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gaussian::{gi_gcd, inverse_mod, ResidueSquare};
use crate::GaussianInt;

/// How a rational prime behaves in `Z[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// A Gaussian prime `π` in canonical form lying over the rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GaussianPrime {
    pub pi: GaussianInt,
    #[serde(serialize_with = "crate::json::decimal")]
    pub p: BigInt,
    pub kind: PrimeKind,
}

impl GaussianPrime {
    /// Classify a Gaussian integer as a prime, if it is one.
    pub fn from_element(z: &GaussianInt) -> Option<Self> {
        let n = z.norm();
        if is_prime(&n) {
            let kind = if n == BigInt::from(2) {
                PrimeKind::Ramified
            } else {
                PrimeKind::Split
            };
            return Some(GaussianPrime {
                pi: z.canonical(),
                p: n,
                kind,
            });
        }
        // inert primes are associates of rational primes p ≡ 3 (mod 4)
        let c = z.canonical();
        if c.im.is_zero() && is_prime(&c.re) && integer::mod4(&c.re) == 3 {
            return Some(GaussianPrime {
                pi: c.clone(),
                p: c.re,
                kind: PrimeKind::Inert,
            });
        }
        None
    }

    /// `N(π)`: `p` for split and ramified primes, `p²` for inert ones.
    pub fn norm(&self) -> BigInt {
        self.pi.norm()
    }

    /// `π^k`.
    pub fn power(&self, k: u32) -> GaussianInt {
        self.pi.pow(k)
    }

    fn order_key(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.pi.re.cmp(&other.pi.re))
            .then_with(|| self.pi.im.cmp(&other.pi.im))
    }
}

impl Ord for GaussianPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key(other)
    }
}

impl PartialOrd for GaussianPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonzero ideal `(α)` with its prime-power decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFactorization {
    pub generator: GaussianInt,
    pub factors: Vec<(GaussianPrime, u32)>,
}

impl IdealFactorization {
    /// The prime powers `π_i^{e_i}`, in factor order.
    pub fn prime_powers(&self) -> Vec<GaussianInt> {
        self.factors.iter().map(|(p, e)| p.power(*e)).collect()
    }

    /// `Π π_i^{e_i}`, an associate of the generator.
    pub fn product(&self) -> GaussianInt {
        self.prime_powers().iter().fold(GaussianInt::one(), |acc, q| &acc * q)
    }

    /// The unit `u` with `generator = u · product()`.
    pub fn unit(&self) -> GaussianInt {
        self.generator
            .div_exact(&self.product())
            .expect("factorization divides its generator")
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.factors.is_empty()
    }
}

/// JSON form: `[{"pi": [re, im], "e": k}, …]`.
impl Serialize for IdealFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.factors.len()))?;
        for (p, e) in &self.factors {
            seq.serialize_element(&FactorEntry { pi: &p.pi, e: *e })?;
        }
        seq.end()
    }
}

struct FactorEntry<'a> {
    pi: &'a GaussianInt,
    e: u32,
}

impl Serialize for FactorEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("pi", self.pi)?;
        m.serialize_entry("e", &self.e)?;
        m.end()
    }
}

/// `v_π(z)`, or `None` for `z = 0`.
pub fn valuation(z: &GaussianInt, pi: &GaussianInt) -> Option<u32> {
    if z.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut w = z.clone();
    while let Some(q) = w.div_exact(pi) {
        w = q;
        v += 1;
    }
    Some(v)
}

/// The Gaussian primes over the rational prime `p`, canonical and sorted.
pub fn primes_over(p: &BigInt) -> Vec<GaussianPrime> {
    match integer::mod4(p) {
        2 => vec![GaussianPrime {
            pi: GaussianInt::from_i64s(1, 1),
            p: p.clone(),
            kind: PrimeKind::Ramified,
        }],
        3 => vec![GaussianPrime {
            pi: GaussianInt::new(p.clone(), BigInt::zero()),
            p: p.clone(),
            kind: PrimeKind::Inert,
        }],
        _ => {
            // x² ≡ −1 (mod p) gives π = gcd(p, x + i)
            let x = sqrt_mod(&(p - 1), p).expect("−1 is a square modulo p ≡ 1 (mod 4)");
            let pz = GaussianInt::new(p.clone(), BigInt::zero());
            let pi = gi_gcd(&pz, &GaussianInt::new(x, BigInt::one())).expect("p is nonzero");
            let mut v = vec![
                GaussianPrime {
                    pi: pi.clone(),
                    p: p.clone(),
                    kind: PrimeKind::Split,
                },
                GaussianPrime {
                    pi: pi.conj().canonical(),
                    p: p.clone(),
                    kind: PrimeKind::Split,
                },
            ];
            v.sort();
            v
        }
    }
}

/// All Gaussian primes of norm at most `bound`, up to associates, ordered by
/// `(N(π), p, Re π, Im π)`.
pub fn gaussian_primes_up_to(bound: u64) -> Vec<GaussianPrime> {
    let mut out: Vec<GaussianPrime> = primes_up_to(bound)
        .into_iter()
        .flat_map(|p| primes_over(&BigInt::from(p)))
        .filter(|g| g.norm() <= BigInt::from(bound))
        .collect();
    out.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
    out
}

/// Factor the ideal `(α)` into Gaussian prime powers, ordered by
/// `(p, Re π, Im π)`. Units give the empty factorization.
pub fn factor_ideal(alpha: &GaussianInt) -> Result<IdealFactorization> {
    if alpha.is_zero() {
        return domain("cannot factor the zero ideal");
    }
    let mut factors = Vec::new();
    for (p, _) in factor_integer(&alpha.norm()) {
        for prime in primes_over(&p) {
            let e = valuation(alpha, &prime.pi).expect("nonzero");
            if e > 0 {
                factors.push((prime, e));
            }
        }
    }
    Ok(IdealFactorization {
        generator: alpha.clone(),
        factors,
    })
}

/// All divisors of `z` up to units, canonical, ordered by `(N, Re, Im)`.
pub fn divisors(z: &GaussianInt) -> Result<Vec<GaussianInt>> {
    let f = factor_ideal(z)?;
    let mut out = vec![GaussianInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * &p.pi;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    let mut out: Vec<GaussianInt> = out.iter().map(|d| d.canonical()).collect();
    out.sort_by(|a, b| {
        a.norm()
            .cmp(&b.norm())
            .then_with(|| a.re.cmp(&b.re))
            .then_with(|| a.im.cmp(&b.im))
    });
    Ok(out)
}

/// `S_m` as a list: `N(m)` pairwise incongruent residues in row-major order.
pub fn residues_mod(modulus: &GaussianInt) -> Result<Vec<GaussianInt>> {
    Ok(ResidueSquare::new(modulus.clone())?.elements())
}

/// Solve `z ≡ s_i (mod m_i)` for pairwise coprime `m_i`. The result is
/// reduced into `S_{Π m_i}`.
pub fn crt(system: &[(GaussianInt, GaussianInt)]) -> Result<GaussianInt> {
    if system.is_empty() {
        return domain("empty congruence system");
    }
    for (i, (_, mi)) in system.iter().enumerate() {
        if mi.is_zero() {
            return domain("zero modulus in congruence system");
        }
        for (_, mj) in &system[i + 1..] {
            if !gi_gcd(mi, mj)?.is_one() {
                return Err(Error::NotCoprime(mi.to_string(), mj.to_string()));
            }
        }
    }
    let (mut x, mut m) = (system[0].0.clone(), system[0].1.clone());
    for (s, n) in &system[1..] {
        // x + m·t ≡ s (mod n)  ⇒  t ≡ (s − x)·m⁻¹ (mod n)
        let inv = inverse_mod(&m, n).expect("coprime moduli");
        let t = (&(s - &x) * &inv).div_rem(n)?.1;
        x = &x + &(&m * &t);
        m = &m * n;
    }
    Ok(ResidueSquare::new(m)?.reduce(&x))
}
