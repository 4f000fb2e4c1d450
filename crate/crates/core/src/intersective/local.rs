//! Roots of a polynomial in the completion `Z[i]_π`, found by a residue
//! tree search and refined by Hensel lifting.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gaussian::{inverse_mod, ResidueSquare};
use crate::ideal::{residues_mod, valuation, GaussianPrime};
use crate::poly::{clear_denominators, discriminant_resultant};
use crate::{GIPolynomial, GaussianInt};

/// A root of `q` modulo `π^k` with its Hensel data.
///
/// `value` is the truncation modulo `π^k` of a genuine root `ρ ∈ Z[i]_π`,
/// reduced into `S_{π^k}`. The derivative valuation `t` refers to the
/// squarefree part `q_sf` of `q` (the derivative of `q` itself vanishes at
/// repeated roots); `None` stands for `t = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicRootApprox {
    pub prime: GaussianPrime,
    pub level: u32,
    pub value: GaussianInt,
    pub derivative_valuation: Option<u32>,
    /// Hensel criterion `k > 2t`.
    pub liftable: bool,
    /// Multiplicity of the squarefree factor of `q` annihilated by the root.
    pub multiplicity: u32,
}

/// Row-major order on residues: imaginary part first, then real part.
pub fn residue_cmp(a: &GaussianInt, b: &GaussianInt) -> Ordering {
    a.im.cmp(&b.im).then_with(|| a.re.cmp(&b.re))
}

/// Every `s ∈ S_{π^k}` with `π^k | q(s)`, in row-major order.
pub fn roots_mod(q: &GIPolynomial, prime: &GaussianPrime, k: u32) -> Result<Vec<GaussianInt>> {
    if k == 0 {
        return domain("roots modulo π^0 are not defined");
    }
    let mut budget = usize::MAX;
    let mut level = level_one(q, prime, &mut budget)?;
    for j in 1..k {
        level = next_level(q, prime, j, &level, &mut budget)?;
    }
    Ok(level)
}

fn spend(budget: &mut usize, n: usize) -> Result<()> {
    if *budget < n {
        return Err(Error::Limit("residue tree node budget exhausted".into()));
    }
    *budget -= n;
    Ok(())
}

fn level_one(p: &GIPolynomial, prime: &GaussianPrime, budget: &mut usize) -> Result<Vec<GaussianInt>> {
    let base = residues_mod(&prime.pi)?;
    spend(budget, base.len())?;
    Ok(base.into_iter().filter(|s| prime.pi.divides(&p.eval(s))).collect())
}

/// Roots modulo `π^{j+1}` from the roots modulo `π^j`.
fn next_level(
    p: &GIPolynomial,
    prime: &GaussianPrime,
    j: u32,
    roots: &[GaussianInt],
    budget: &mut usize,
) -> Result<Vec<GaussianInt>> {
    let base = residues_mod(&prime.pi)?;
    spend(budget, roots.len().saturating_mul(base.len()))?;
    let step = prime.power(j);
    let sq = ResidueSquare::new(prime.power(j + 1))?;
    let mut out = Vec::new();
    for s in roots {
        for u in &base {
            let c = s + &(&step * u);
            if sq.modulus().divides(&p.eval(&c)) {
                out.push(sq.reduce(&c));
            }
        }
    }
    out.sort_by(residue_cmp);
    Ok(out)
}

/// No root of `q` modulo `modulus = π^level`. For small moduli the full
/// residue table `(s, q(s) mod π^level)` is attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub prime: GaussianPrime,
    pub level: u32,
    pub modulus: GaussianInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(GaussianInt, GaussianInt)>>,
}

const TABLE_LIMIT: u64 = 1024;

impl Counterexample {
    fn new(q: &GIPolynomial, prime: &GaussianPrime, level: u32) -> Result<Self> {
        let modulus = prime.power(level);
        let table = if modulus.norm() <= TABLE_LIMIT.into() {
            let sq = ResidueSquare::new(modulus.clone())?;
            Some(
                sq.elements()
                    .into_iter()
                    .map(|s| {
                        let v = sq.reduce(&q.eval(&s));
                        (s, v)
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok(Counterexample {
            prime: prime.clone(),
            level,
            modulus,
            table,
        })
    }

    /// Re-check the claim by exhaustive evaluation over `S_{π^k}`.
    pub fn verify(&self, q: &GIPolynomial) -> Result<bool> {
        if let Some(table) = &self.table {
            let residues = residues_mod(&self.modulus)?;
            if residues.len() != table.len() {
                return Ok(false);
            }
            for ((s, v), r) in table.iter().zip(&residues) {
                if s != r || self.modulus.divides(v) || !self.modulus.divides(&(&q.eval(s) - v)) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        Ok(residues_mod(&self.modulus)?
            .iter()
            .all(|s| !self.modulus.divides(&q.eval(s))))
    }
}

/// What the residue tree says about one prime.
#[derive(Clone, Debug)]
pub(crate) enum LocalOutcome {
    Root(PAdicRootApprox),
    NoRoot(Counterexample),
    Budget(String),
}

/// Data derived once from a nonconstant `q`: its primitive squarefree part
/// `f`, `Res(f, f′)`, and the Yun factors of `q` made integral.
#[derive(Clone, Debug)]
pub struct RootContext {
    q: GIPolynomial,
    f: GIPolynomial,
    df: GIPolynomial,
    disc: GaussianInt,
    /// Entry `i` is the primitive factor of multiplicity `i + 1` (maybe `1`).
    yun: Vec<GIPolynomial>,
    /// Product of the pairwise resultants of the nonconstant Yun factors.
    separation: GaussianInt,
}

impl RootContext {
    pub fn new(q: &GIPolynomial) -> Result<Self> {
        if q.degree()? == 0 {
            return domain("root data needs a nonconstant polynomial");
        }
        let f = q.squarefree_integral()?;
        let df = f.derivative();
        let disc = discriminant_resultant(&f)?;
        let yun: Vec<GIPolynomial> = q
            .to_rational()
            .squarefree_decomposition()?
            .iter()
            .map(|p| clear_denominators(p).primitive_part())
            .collect::<Result<_>>()?;
        let mut separation = GaussianInt::from_i64s(1, 0);
        for (i, gi) in yun.iter().enumerate() {
            for gj in &yun[i + 1..] {
                if gi.is_constant() || gj.is_constant() {
                    continue;
                }
                let r = gi.to_rational().resultant(&gj.to_rational())?;
                let r = r
                    .to_integral()
                    .ok_or_else(|| Error::Invariant("nonintegral resultant".into()))?;
                separation = &separation * &r;
            }
        }
        Ok(RootContext {
            q: q.clone(),
            f,
            df,
            disc,
            yun,
            separation,
        })
    }

    pub fn polynomial(&self) -> &GIPolynomial {
        &self.q
    }

    /// The primitive squarefree part `q_sf`.
    pub fn squarefree(&self) -> &GIPolynomial {
        &self.f
    }

    /// `Res(q_sf, q_sf′)`, never zero.
    pub fn discriminant(&self) -> &GaussianInt {
        &self.disc
    }

    /// `K = 2·v_π(Res(q_sf, q_sf′)) + 1`: every root of `q_sf` in `Z[i]_π`
    /// is visible as a liftable residue modulo `π^K`.
    pub fn decision_level(&self, prime: &GaussianPrime) -> u32 {
        2 * valuation(&self.disc, &prime.pi).expect("nonzero resultant") + 1
    }

    fn deriv_val(&self, prime: &GaussianPrime, s: &GaussianInt) -> Option<u32> {
        valuation(&self.df.eval(s), &prime.pi)
    }

    /// Hensel iteration for `f`, from `f(s) ≡ 0 (mod π^k)` with
    /// `v(f′(s)) = t < k/2` up to level `target`.
    fn lift_raw(&self, prime: &GaussianPrime, s: &GaussianInt, k: u32, t: u32, target: u32) -> GaussianInt {
        let pi = &prime.pi;
        let pit = pi.pow(t);
        let mut s = s.clone();
        let mut k = k;
        while k < target {
            let fs = self.f.eval(&s);
            if !fs.is_zero() {
                // f(s) = π^k·a, f'(s) = π^t·b, step s += π^{k-t}·y with a + b·y ≡ 0 (mod π)
                let a = fs.div_exact(&pi.pow(k)).expect("f(s) vanishes modulo π^k");
                let b = self.df.eval(&s).div_exact(&pit).expect("v(f'(s)) = t");
                let binv = inverse_mod(&b, pi).expect("b is a unit modulo π");
                let y = (&(-&a) * &binv).div_rem(pi).expect("nonzero modulus").1;
                s = &s + &(&pi.pow(k - t) * &y);
            }
            k += 1;
            s = ResidueSquare::new(pi.pow(k)).expect("nonzero").reduce(&s);
        }
        s
    }

    /// `ρ mod π^n` for the unique root `ρ ≡ s (mod π^{k−t})`.
    fn root_value(&self, prime: &GaussianPrime, s: &GaussianInt, k: u32, t: u32, n: u32) -> GaussianInt {
        let lifted = self.lift_raw(prime, s, k, t, (n + t).max(k));
        ResidueSquare::new(prime.power(n)).expect("nonzero").reduce(&lifted)
    }

    fn multiplicity(&self, prime: &GaussianPrime, s: &GaussianInt, k: u32, t: u32) -> Result<u32> {
        let live: Vec<usize> = (0..self.yun.len()).filter(|&i| !self.yun[i].is_constant()).collect();
        if live.len() == 1 {
            return Ok(live[0] as u32 + 1);
        }
        // g_j(ρ) ≠ 0 has valuation at most v(Res(g_i, g_j)) for the g_i with g_i(ρ) = 0
        let level = (valuation(&self.separation, &prime.pi).expect("nonzero") + 1).max(k);
        let v = self.root_value(prime, s, k, t, level);
        let m = prime.power(level);
        let hits: Vec<usize> = live.into_iter().filter(|&i| m.divides(&self.yun[i].eval(&v))).collect();
        match hits.as_slice() {
            [i] => Ok(*i as u32 + 1),
            _ => Err(Error::Invariant(
                "root branch matches no unique squarefree factor".into(),
            )),
        }
    }

    /// All roots of `q` in `Z[i]_π`, as approximations at the decision
    /// level, ordered by their value in `S_{π^K}`.
    pub fn branches(&self, prime: &GaussianPrime, budget: usize) -> Result<Vec<PAdicRootApprox>> {
        let big_k = self.decision_level(prime);
        let mut budget = budget;
        let mut found: Vec<GaussianInt> = Vec::new();
        let mut frontier = level_one(&self.f, prime, &mut budget)?;
        let mut j = 1;
        loop {
            let mut open = Vec::new();
            for s in frontier {
                match self.deriv_val(prime, &s) {
                    // a liftable node holds exactly one root; stop expanding it
                    Some(t) if 2 * t < j => {
                        found.push(self.root_value(prime, &s, j, t, big_k));
                    }
                    _ => open.push(s),
                }
            }
            if j >= big_k || open.is_empty() {
                break;
            }
            frontier = next_level(&self.f, prime, j, &open, &mut budget)?;
            j += 1;
        }
        found.sort_by(residue_cmp);
        found.dedup();
        found
            .into_iter()
            .map(|v| {
                let t = self.deriv_val(prime, &v).expect("simple root of q_sf");
                Ok(PAdicRootApprox {
                    prime: prime.clone(),
                    level: big_k,
                    multiplicity: self.multiplicity(prime, &v, big_k, t)?,
                    value: v,
                    derivative_valuation: Some(t),
                    liftable: 2 * t < big_k,
                })
            })
            .collect()
    }

    /// Move a root approximation to another level. Above the current level
    /// this is Hensel lifting; below it is truncation. Both give the
    /// truncations of the same root.
    pub fn lift(&self, approx: &PAdicRootApprox, target: u32) -> Result<PAdicRootApprox> {
        if !approx.liftable || target == 0 {
            return domain("approximation is not liftable");
        }
        let t = approx
            .derivative_valuation
            .ok_or_else(|| Error::Domain("infinite derivative valuation".into()))?;
        let k = approx.level;
        if 2 * t >= k
            || self.deriv_val(&approx.prime, &approx.value) != Some(t)
            || !approx.prime.power(k).divides(&self.f.eval(&approx.value))
        {
            return domain("Hensel data does not match the polynomial");
        }
        let value = self.root_value(&approx.prime, &approx.value, k, t, target);
        Ok(PAdicRootApprox {
            level: target,
            value,
            ..approx.clone()
        })
    }

    /// The canonical root at `prime`: `0` if `q(0) = 0`, otherwise the
    /// branch with the smallest value at the decision level.
    pub fn canonical_root(&self, prime: &GaussianPrime, budget: usize) -> Result<PAdicRootApprox> {
        let branches = self.branches(prime, budget)?;
        if self.q.coeff(0).is_zero() {
            let zero =
                ResidueSquare::new(prime.power(self.decision_level(prime)))?.reduce(&GaussianInt::from_i64s(0, 0));
            if let Some(b) = branches.iter().find(|b| b.value == zero) {
                return Ok(b.clone());
            }
            return Err(Error::Invariant("zero is a root but no branch sits over it".into()));
        }
        branches
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotIntersective(format!("no root in the completion at {}", prime.pi)))
    }

    pub(crate) fn analyze(&self, prime: &GaussianPrime, max_level: u32, budget: usize) -> Result<LocalOutcome> {
        let k = self.decision_level(prime);
        if k > max_level {
            return Ok(LocalOutcome::Budget(format!(
                "decision level {k} at {} exceeds the effort bound",
                prime.pi
            )));
        }
        match self.canonical_root(prime, budget) {
            Ok(r) => Ok(LocalOutcome::Root(r)),
            Err(Error::NotIntersective(_)) => self.counterexample(prime, budget),
            Err(Error::Limit(m)) => Ok(LocalOutcome::Budget(format!("{m} at {}", prime.pi))),
            Err(e) => Err(e),
        }
    }

    /// `q` has no root in `Z[i]_π`, so its residue tree is finite; walk it
    /// to the first empty level.
    fn counterexample(&self, prime: &GaussianPrime, budget: usize) -> Result<LocalOutcome> {
        let mut budget = budget;
        let mut level = match level_one(&self.q, prime, &mut budget) {
            Ok(l) => l,
            Err(Error::Limit(m)) => return Ok(LocalOutcome::Budget(m)),
            Err(e) => return Err(e),
        };
        let mut j = 1;
        while !level.is_empty() {
            level = match next_level(&self.q, prime, j, &level, &mut budget) {
                Ok(l) => l,
                Err(Error::Limit(m)) => return Ok(LocalOutcome::Budget(format!("{m} at {}", prime.pi))),
                Err(e) => return Err(e),
            };
            j += 1;
        }
        Ok(LocalOutcome::NoRoot(Counterexample::new(&self.q, prime, j)?))
    }
}
