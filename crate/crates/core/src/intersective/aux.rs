//! The auxiliary polynomial `q_a(x) = q(r_a + αx)/γ` of an intersective `q`.

use serde::Serialize;

use super::{decide_intersective, Effort, PAdicRootApprox, RootContext, Verdict};
use crate::error::{domain, Error, Result};
use crate::gaussian::ResidueSquare;
use crate::ideal::{crt, factor_ideal, IdealFactorization};
use crate::lab::{avoidance_witness, AvoidanceWitness};
use crate::poly::mq_bound_check;
use crate::{GIPolynomial, GaussianInt, SmallGaussian};

/// `q`, `α`, the common lift `r_a` of the canonical roots, the generator
/// `γ` of `λ_q(α)` and `q_a` with `γ·q_a(x) = q(r_a + αx)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryConstruction {
    pub q: GIPolynomial,
    pub alpha: GaussianInt,
    pub factorization: IdealFactorization,
    /// Canonical root at each prime of `α`, at the level of its exponent.
    pub local_roots: Vec<PAdicRootApprox>,
    pub r_a: GaussianInt,
    pub gamma: GaussianInt,
    pub q_a: GIPolynomial,
}

impl AuxiliaryConstruction {
    /// Re-check every identity and bound of the construction.
    pub fn verify(&self) -> Result<bool> {
        let d = self.q.degree()?;
        let lhs = self.q_a.scale(&self.gamma);
        let rhs = self.q.shift_scale(&self.r_a, &self.alpha)?;
        let n_alpha = self.alpha.norm();
        Ok(lhs == rhs
            && self.alpha.divides(&self.q.eval(&self.r_a))
            && self.r_a.norm() <= &n_alpha * 4u32
            && self.alpha.divides(&self.gamma)
            && self.gamma.norm() <= num_traits::pow(n_alpha, d)
            && self.q_a.degree()? == d
            && mq_bound_check(&self.q_a, &self.q, &self.alpha)?)
    }
}

/// Checks `q` once and then builds `λ_q`, `r_a` and `q_a` for any `α`.
#[derive(Clone, Debug)]
pub struct AuxiliaryBuilder {
    ctx: RootContext,
    budget: usize,
}

impl AuxiliaryBuilder {
    /// Fails unless `q` is decided intersective within `effort`.
    pub fn new(q: &GIPolynomial, effort: &Effort) -> Result<Self> {
        let v = decide_intersective(q, effort)?;
        match v.verdict {
            Verdict::Intersective => {}
            Verdict::NotIntersective => return Err(Error::NotIntersective(v.note)),
            Verdict::Inconclusive => return Err(Error::Inconclusive(v.note)),
        }
        Ok(AuxiliaryBuilder {
            ctx: RootContext::new(q)?,
            budget: effort.node_budget,
        })
    }

    pub fn polynomial(&self) -> &GIPolynomial {
        self.ctx.polynomial()
    }

    /// The canonical roots `s_{π^e}` for each prime power of `α`.
    pub fn local_roots(&self, fac: &IdealFactorization) -> Result<Vec<PAdicRootApprox>> {
        fac.factors
            .iter()
            .map(|(p, e)| {
                let root = self.ctx.canonical_root(p, self.budget)?;
                self.ctx.lift(&root, *e)
            })
            .collect()
    }

    /// `γ = Π π_i^{m_i·e_i}`, canonical.
    pub fn lambda(&self, fac: &IdealFactorization) -> Result<GaussianInt> {
        let mut gamma = GaussianInt::from_i64s(1, 0);
        for ((p, e), root) in fac.factors.iter().zip(self.local_roots(fac)?) {
            gamma = &gamma * &p.power(root.multiplicity * e);
        }
        Ok(gamma.canonical())
    }

    fn r_from(&self, alpha: &GaussianInt, roots: &[PAdicRootApprox]) -> Result<GaussianInt> {
        let system: Vec<(GaussianInt, GaussianInt)> = roots
            .iter()
            .map(|r| (r.value.clone(), r.prime.power(r.level)))
            .collect();
        let r = ResidueSquare::new(alpha.clone())?.reduce(&crt(&system)?);
        let q = self.polynomial();
        if !alpha.divides(&q.eval(&r)) || r.norm() > alpha.norm() * 4u32 {
            return Err(Error::Invariant(format!(
                "r_a = {r} fails q(r_a) ≡ 0 (mod α) or |r_a| ≤ 2|α|"
            )));
        }
        Ok(r)
    }

    pub fn r_a(&self, alpha: &GaussianInt) -> Result<GaussianInt> {
        let fac = nonunit_factorization(alpha)?;
        self.r_from(alpha, &self.local_roots(&fac)?)
    }

    pub fn build(&self, alpha: &GaussianInt) -> Result<AuxiliaryConstruction> {
        let fac = nonunit_factorization(alpha)?;
        let roots = self.local_roots(&fac)?;
        let r_a = self.r_from(alpha, &roots)?;
        let mut gamma = GaussianInt::from_i64s(1, 0);
        for ((p, e), root) in fac.factors.iter().zip(&roots) {
            gamma = &gamma * &p.power(root.multiplicity * e);
        }
        let gamma = gamma.canonical();
        let q = self.polynomial();
        let d = q.degree()?;
        if !alpha.divides(&gamma) || gamma.norm() > num_traits::pow(alpha.norm(), d) {
            return Err(Error::Invariant(format!("γ = {gamma} violates α | γ or |γ| ≤ |α|^d")));
        }
        let shifted = q.shift_scale(&r_a, alpha)?;
        let q_a = shifted
            .div_exact_scalar(&gamma)
            .ok_or_else(|| Error::Invariant(format!("γ = {gamma} does not divide q(r_a + αx)")))?;
        let out = AuxiliaryConstruction {
            q: q.clone(),
            alpha: alpha.clone(),
            factorization: fac,
            local_roots: roots,
            r_a,
            gamma,
            q_a,
        };
        if !out.verify()? {
            return Err(Error::Invariant("auxiliary construction failed its own checks".into()));
        }
        Ok(out)
    }
}

fn nonunit_factorization(alpha: &GaussianInt) -> Result<IdealFactorization> {
    let fac = factor_ideal(alpha)?;
    if fac.is_unit_ideal() {
        return domain("α must not be a unit");
    }
    Ok(fac)
}

/// `λ_q(𝔞)` for the factored ideal `𝔞`.
pub fn lambda_q(q: &GIPolynomial, fac: &IdealFactorization) -> Result<GaussianInt> {
    AuxiliaryBuilder::new(q, &Effort::default())?.lambda(fac)
}

pub fn build_r_a(q: &GIPolynomial, alpha: &GaussianInt) -> Result<GaussianInt> {
    AuxiliaryBuilder::new(q, &Effort::default())?.r_a(alpha)
}

pub fn build_q_a(q: &GIPolynomial, alpha: &GaussianInt) -> Result<AuxiliaryConstruction> {
    AuxiliaryBuilder::new(q, &Effort::default())?.build(alpha)
}

/// Result of transporting a set along `z ↦ n + γz`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferOutcome {
    /// `(A − A) ∩ I(q) = ∅`.
    pub precondition: bool,
    /// `A′ = {z : n + γz ∈ A}`.
    pub a_prime: Vec<SmallGaussian>,
    /// `(A′ − A′) ∩ I(q_a) = ∅`.
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AvoidanceWitness>,
}

/// Build `A′ = {z : n + γz ∈ A}` and check it avoids `I(q_a)` exhaustively.
pub fn lucier_transfer(a: &[SmallGaussian], aux: &AuxiliaryConstruction, n: &GaussianInt) -> Result<TransferOutcome> {
    let precondition = avoidance_witness(a, &aux.q)?.is_none();
    let mut a_prime = Vec::new();
    for x in a {
        let diff = &GaussianInt::from(*x) - n;
        if let Some(z) = diff.div_exact(&aux.gamma) {
            a_prime.push(
                z.to_small()
                    .ok_or_else(|| Error::Limit("A′ coordinate overflow".into()))?,
            );
        }
    }
    let witness = avoidance_witness(&a_prime, &aux.q_a)?;
    Ok(TransferOutcome {
        precondition,
        holds: witness.is_none(),
        a_prime,
        witness,
    })
}

/// `true` iff `A′` avoids `I(q_a)`.
pub fn lucier_transfer_check(a: &[SmallGaussian], aux: &AuxiliaryConstruction, n: &GaussianInt) -> Result<bool> {
    Ok(lucier_transfer(a, aux, n)?.holds)
}
