//! Intersective polynomials: deciding whether `q` has a root modulo every
//! nonzero ideal, choosing canonical local roots, and the auxiliary
//! polynomial `q_a(x) = q(r_a + αx)/γ`.
//!
//! A polynomial is intersective iff it has a root in every completion
//! `Z[i]_π`. Local roots are found by [`RootContext`]. Primes not dividing
//! `lead(q)·Res(q_sf, q_sf′)` are certified wholesale by a root of `q` in
//! `Q(i)`; without one, primes are checked up to the effort bound and the
//! verdict is at best `inconclusive`.

mod aux;
mod local;

pub use aux::{
    build_q_a, build_r_a, lambda_q, lucier_transfer, lucier_transfer_check, AuxiliaryBuilder, AuxiliaryConstruction,
    TransferOutcome,
};
pub use local::{residue_cmp, roots_mod, Counterexample, PAdicRootApprox, RootContext};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ideal::{divisors, factor_ideal, gaussian_primes_up_to, GaussianPrime};
use crate::{GIPolynomial, GaussianInt, GaussianRational};
use local::LocalOutcome;

/// Limits on the work done by [`decide_intersective`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effort {
    /// Without a global root, primes are checked up to this norm.
    pub prime_norm_bound: u64,
    /// Residue-tree nodes allowed per prime.
    pub node_budget: usize,
    /// Largest Hensel decision level attempted.
    pub max_level: u32,
    /// Candidates `a/b` tried by the rational root test.
    pub candidate_budget: usize,
    /// Largest `lead(q)·Res(q_sf, q_sf′)` (decimal digits of its norm) factored.
    pub max_norm_digits: usize,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            prime_norm_bound: 1000,
            node_budget: 400_000,
            max_level: 64,
            candidate_budget: 200_000,
            max_norm_digits: 60,
        }
    }
}

impl Effort {
    /// Default limits with the given prime-norm bound.
    pub fn with_bound(prime_norm_bound: u64) -> Self {
        Effort {
            prime_norm_bound,
            ..Effort::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Intersective,
    NotIntersective,
    Inconclusive,
}

/// Outcome of [`decide_intersective`] with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectivityVerdict {
    pub verdict: Verdict,
    pub polynomial: GIPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squarefree_part: Option<GIPolynomial>,
    /// `Res(q_sf, q_sf′)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<GaussianInt>,
    /// Primes dividing `lead(q)·Res(q_sf, q_sf′)`.
    pub bad_primes: Vec<GaussianPrime>,
    /// A root in `Q(i)`; it is a root in `Z[i]_π` at every prime not
    /// dividing its denominator, in particular at every good prime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_root: Option<GaussianRational>,
    /// Canonical root at each bad prime.
    pub local_roots: Vec<PAdicRootApprox>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Good primes examined individually (only without a global root).
    pub good_primes_checked: usize,
    pub note: String,
}

impl IntersectivityVerdict {
    fn new(q: &GIPolynomial, verdict: Verdict, note: impl Into<String>) -> Self {
        IntersectivityVerdict {
            verdict,
            polynomial: q.clone(),
            squarefree_part: None,
            discriminant: None,
            bad_primes: Vec::new(),
            global_root: None,
            local_roots: Vec::new(),
            counterexample: None,
            good_primes_checked: 0,
            note: note.into(),
        }
    }

    /// Re-check the certificate from its own contents.
    pub fn verify(&self) -> Result<bool> {
        let q = &self.polynomial;
        match self.verdict {
            Verdict::NotIntersective => match &self.counterexample {
                Some(c) => c.verify(q),
                None => Ok(false),
            },
            Verdict::Intersective => {
                let Some(rho) = &self.global_root else { return Ok(false) };
                if !q.to_rational().eval(rho).is_zero() {
                    return Ok(false);
                }
                if q.is_constant() {
                    return Ok(false);
                }
                let ctx = RootContext::new(q)?;
                for r in &self.local_roots {
                    let k = r.level;
                    let ok = r.liftable && r.prime.power(k).divides(&q.eval(&r.value)) && ctx.lift(r, k + 1).is_ok();
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Verdict::Inconclusive => Ok(true),
        }
    }
}

/// A root of `f` in `Q(i)`, by the rational root test: `a | f(0)` and
/// `b | lead(f)` for a root `a/b` in lowest terms. Integral roots first.
pub fn rational_root(f: &GIPolynomial, budget: usize) -> Result<Option<GaussianRational>> {
    let d = f.degree()?;
    if d == 0 {
        return Ok(None);
    }
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Ok(Some(GaussianInt::zero().to_rational()));
    }
    let nums = divisors(&a0)?;
    let dens = divisors(f.lead()?)?;
    if nums.len().saturating_mul(dens.len()).saturating_mul(4) > budget {
        return Err(Error::Limit("rational root candidates exceed the budget".into()));
    }
    for b in &dens {
        let bpow: Vec<GaussianInt> = std::iter::successors(Some(GaussianInt::one()), |x| Some(x * b))
            .take(d + 1)
            .collect();
        for n in &nums {
            for u in GaussianInt::units() {
                let a = &u * n;
                // Σ c_j a^j b^(d-j) = 0
                let mut acc = GaussianInt::zero();
                let mut apow = GaussianInt::one();
                for (j, c) in f.coeffs().iter().enumerate() {
                    acc += &(&(c * &apow) * &bpow[d - j]);
                    apow = &apow * &a;
                }
                if acc.is_zero() {
                    let rho = &a.to_rational() * &b.to_rational().recip().expect("nonzero");
                    return Ok(Some(rho));
                }
            }
        }
    }
    Ok(None)
}

/// Decide whether `q` has a root modulo every nonzero ideal of `Z[i]`.
pub fn decide_intersective(q: &GIPolynomial, effort: &Effort) -> Result<IntersectivityVerdict> {
    let d = q.degree()?;
    if d == 0 {
        return constant_verdict(q);
    }
    if q.coeff(0).is_zero() {
        let mut v = IntersectivityVerdict::new(
            q,
            Verdict::Intersective,
            "q(0) = 0: the constant sequence 0 is a root everywhere",
        );
        v.global_root = Some(GaussianInt::zero().to_rational());
        return Ok(v);
    }
    let ctx = RootContext::new(q)?;
    let lead_disc = q.lead()? * ctx.discriminant();
    let mut out = IntersectivityVerdict::new(q, Verdict::Inconclusive, "");
    out.squarefree_part = Some(ctx.squarefree().clone());
    out.discriminant = Some(ctx.discriminant().clone());
    if lead_disc.norm().to_string().len() > effort.max_norm_digits {
        out.note = "lead(q)·Res(q_sf, q_sf') is too large to factor within the effort bound".into();
        return Ok(out);
    }
    let bad: Vec<GaussianPrime> = factor_ideal(&lead_disc)?.factors.into_iter().map(|(p, _)| p).collect();
    out.bad_primes = bad.clone();
    let global = match rational_root(ctx.squarefree(), effort.candidate_budget) {
        Ok(r) => r,
        Err(Error::Limit(_)) => None,
        Err(e) => return Err(e),
    };
    out.global_root = global.clone();

    // primes to examine, in (norm, p, π) order
    let mut primes = bad.clone();
    if global.is_none() {
        primes.extend(
            gaussian_primes_up_to(effort.prime_norm_bound)
                .into_iter()
                .filter(|p| !bad.contains(p)),
        );
    }
    primes.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
    let outcomes: Vec<LocalOutcome> = primes
        .par_iter()
        .map(|p| ctx.analyze(p, effort.max_level, effort.node_budget))
        .collect::<Result<_>>()?;
    out.good_primes_checked = primes.iter().filter(|p| !bad.contains(p)).count();

    if let Some(c) = outcomes.iter().find_map(|o| match o {
        LocalOutcome::NoRoot(c) => Some(c.clone()),
        _ => None,
    }) {
        out.verdict = Verdict::NotIntersective;
        out.note = format!("no root modulo ({})^{}", c.prime.pi, c.level);
        out.counterexample = Some(c);
        return Ok(out);
    }
    if let Some(msg) = outcomes.iter().find_map(|o| match o {
        LocalOutcome::Budget(m) => Some(m.clone()),
        _ => None,
    }) {
        out.note = msg;
        return Ok(out);
    }
    for (p, o) in primes.iter().zip(outcomes) {
        if let LocalOutcome::Root(r) = o {
            if bad.contains(p) {
                out.local_roots.push(r);
            }
        }
    }
    if global.is_some() {
        out.verdict = Verdict::Intersective;
        out.note = "global root in Q(i) covers the good primes; every bad prime has a liftable root".into();
    } else {
        out.note = format!(
            "no root in Q(i) and every prime of norm <= {} has a local root; the remaining good primes are unverified",
            effort.prime_norm_bound
        );
    }
    Ok(out)
}

/// A nonzero constant has no root modulo any prime not dividing it.
fn constant_verdict(q: &GIPolynomial) -> Result<IntersectivityVerdict> {
    let c = q.coeff(0);
    let mut bound = 16;
    loop {
        if let Some(p) = gaussian_primes_up_to(bound).into_iter().find(|p| !p.pi.divides(&c)) {
            let witness = local_constant_counterexample(q, &p)?;
            let mut v = IntersectivityVerdict::new(
                q,
                Verdict::NotIntersective,
                format!("nonzero constant is not divisible by {}", p.pi),
            );
            v.counterexample = Some(witness);
            return Ok(v);
        }
        bound *= 4;
        if bound > 1 << 40 {
            return domain("no prime avoids the constant");
        }
    }
}

fn local_constant_counterexample(q: &GIPolynomial, p: &GaussianPrime) -> Result<Counterexample> {
    let modulus = p.pi.clone();
    let sq = crate::gaussian::ResidueSquare::new(modulus.clone())?;
    let table = sq
        .elements()
        .into_iter()
        .map(|s| (s.clone(), sq.reduce(&q.eval(&s))))
        .collect();
    Ok(Counterexample {
        prime: p.clone(),
        level: 1,
        modulus,
        table: Some(table),
    })
}

/// The canonical root of `q` at `prime`.
pub fn choose_canonical_root(q: &GIPolynomial, prime: &GaussianPrime) -> Result<PAdicRootApprox> {
    RootContext::new(q)?.canonical_root(prime, Effort::default().node_budget)
}

/// Lift (or truncate) a root approximation of `q` to `target` level.
pub fn hensel_lift(q: &GIPolynomial, approx: &PAdicRootApprox, target: u32) -> Result<PAdicRootApprox> {
    RootContext::new(q)?.lift(approx, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::residues_mod;
    use crate::{parse_gaussian, parse_poly};

    fn p(s: &str) -> GIPolynomial {
        parse_poly(s).unwrap()
    }

    fn g(s: &str) -> GaussianInt {
        parse_gaussian(s).unwrap()
    }

    fn prime(s: &str) -> GaussianPrime {
        GaussianPrime::from_element(&g(s)).unwrap()
    }

    #[test]
    fn roots_modulo_prime_powers() {
        let zero = roots_mod(&p("x^2"), &prime("1+i"), 1).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(g("1+i").divides(&zero[0]));
        assert!(roots_mod(&p("x^2+x+1"), &prime("1+i"), 1).unwrap().is_empty());
        let roots = roots_mod(&p("x^2+1"), &prime("2+i"), 1).unwrap();
        assert_eq!(roots.len(), 2);
        let m = g("2+i");
        for s in &roots {
            assert!(m.divides(&p("x^2+1").eval(s)));
        }
        // i and -i are both represented
        assert!(roots.iter().any(|s| m.divides(&(s - &g("i")))));
        assert!(roots.iter().any(|s| m.divides(&(s + &g("i")))));
    }

    #[test]
    fn lift_simple_root() {
        let q = p("x^2+1");
        let pr = prime("2+i");
        let root = choose_canonical_root(&q, &pr).unwrap();
        assert_eq!(root.derivative_valuation, Some(0));
        let up = hensel_lift(&q, &root, 4).unwrap();
        let m4 = pr.power(4);
        assert!(m4.divides(&q.eval(&up.value)));
        assert!(roots_mod(&q, &pr, 4).unwrap().contains(&up.value));
        let back = hensel_lift(&q, &up, root.level).unwrap();
        assert_eq!(back.value, root.value);
        // each level reduces to the one below
        for k in 1..6 {
            let lo = hensel_lift(&q, &root, k).unwrap();
            let hi = hensel_lift(&q, &root, k + 1).unwrap();
            assert!(pr.power(k).divides(&(&hi.value - &lo.value)));
        }
    }

    #[test]
    fn exact_root_lifts_as_constant() {
        let q = p("x^2+1");
        let pr = prime("3");
        let root = choose_canonical_root(&q, &pr).unwrap();
        for k in 1..5 {
            let v = hensel_lift(&q, &root, k).unwrap().value;
            let m = pr.power(k);
            assert!(m.divides(&(&v - &g("i"))) || m.divides(&(&v + &g("i"))));
        }
    }

    #[test]
    fn verdicts() {
        let e = Effort::default();
        let v = decide_intersective(&p("x^2"), &e).unwrap();
        assert_eq!(v.verdict, Verdict::Intersective);
        assert!(v.verify().unwrap());
        let v = decide_intersective(&p("x^2+1"), &e).unwrap();
        assert_eq!(v.verdict, Verdict::Intersective);
        assert!(v.verify().unwrap());
        let v = decide_intersective(&p("x^2+x+1"), &e).unwrap();
        assert_eq!(v.verdict, Verdict::NotIntersective);
        let c = v.counterexample.as_ref().unwrap();
        assert_eq!(c.modulus.norm(), 2.into());
        assert!(v.verify().unwrap());
        let v = decide_intersective(&p("3"), &e).unwrap();
        assert_eq!(v.verdict, Verdict::NotIntersective);
        assert!(v.verify().unwrap());
        assert!(decide_intersective(&GIPolynomial::zero(), &e).is_err());
    }

    #[test]
    fn no_global_root_is_inconclusive() {
        // x^2 - 2 has no root in Q(i), so it is never declared intersective
        let v = decide_intersective(&p("x^2-2"), &Effort::with_bound(50)).unwrap();
        assert_ne!(v.verdict, Verdict::Intersective);
        assert!(v.verify().unwrap());
        let v = decide_intersective(&p("(x^2-2)*(x^2+1)"), &Effort::default());
        if let Ok(v) = v {
            assert_eq!(v.verdict, Verdict::Intersective);
        }
    }

    #[test]
    fn multiplicities() {
        let q = p("x^2");
        for s in ["1+i", "2+i", "3"] {
            let r = choose_canonical_root(&q, &prime(s)).unwrap();
            assert_eq!(r.multiplicity, 2);
            assert!(r.prime.power(r.level).divides(&r.value));
        }
        let q = p("x^2*(x-3)");
        let ctx = RootContext::new(&q).unwrap();
        let branches = ctx.branches(&prime("2+i"), 100_000).unwrap();
        assert_eq!(branches.len(), 2);
        for b in &branches {
            let m = b.prime.power(b.level);
            if m.divides(&b.value) {
                assert_eq!(b.multiplicity, 2);
            } else {
                assert!(m.divides(&(&b.value - &g("3"))));
                assert_eq!(b.multiplicity, 1);
            }
        }
        let q = p("x*(x-(1+i))");
        let ctx = RootContext::new(&q).unwrap();
        let branches = ctx.branches(&prime("1+i"), 100_000).unwrap();
        assert_eq!(branches.len(), 2);
        assert!(branches.iter().all(|b| b.multiplicity == 1));
        let a = choose_canonical_root(&q, &prime("1+i")).unwrap();
        let b = choose_canonical_root(&q, &prime("1+i")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn auxiliary_for_square() {
        let q = p("x^2");
        let fac = factor_ideal(&g("2")).unwrap();
        assert_eq!(lambda_q(&q, &fac).unwrap(), g("4"));
        assert_eq!(build_r_a(&q, &g("2")).unwrap(), g("2+2i"));
        let aux = build_q_a(&q, &g("2")).unwrap();
        assert_eq!(aux.q_a, p("(x+1+i)^2"));
        assert!(aux.verify().unwrap());
        for alpha in ["1+i", "3", "2+i", "5", "6+2i"] {
            let aux = build_q_a(&q, &g(alpha)).unwrap();
            assert!(aux.verify().unwrap());
            assert_eq!(aux.q_a.degree().unwrap(), 2);
        }
    }

    #[test]
    fn lambda_is_multiplicative() {
        let q = p("x^2*(x-3)");
        let b = AuxiliaryBuilder::new(&q, &Effort::default()).unwrap();
        let a1 = g("2+i");
        let a2 = g("1+i");
        let l = |z: &GaussianInt| b.lambda(&factor_ideal(z).unwrap()).unwrap();
        assert!(l(&(&a1 * &a2)).is_associate(&(&l(&a1) * &l(&a2))));
    }

    #[test]
    fn linear_auxiliary() {
        let q = p("x");
        let aux = build_q_a(&q, &g("1+i")).unwrap();
        assert!(aux.gamma.is_associate(&g("1+i")));
        assert_eq!(aux.q_a.degree().unwrap(), 1);
        assert!(aux.q_a.lead().unwrap().is_unit());
        assert!(aux.verify().unwrap());
    }

    #[test]
    fn squarefree_gamma_is_alpha() {
        let q = p("x^2+1");
        for alpha in ["2+i", "5", "3+2i"] {
            let aux = build_q_a(&q, &g(alpha)).unwrap();
            assert!(aux.gamma.is_associate(&g(alpha)));
        }
        assert!(build_q_a(&p("x^2+x+1"), &g("2")).is_err());
        assert!(build_q_a(&q, &g("i")).is_err());
    }

    #[test]
    fn transfer() {
        let q = p("x^2");
        let aux = build_q_a(&q, &g("2")).unwrap();
        let a = [crate::SmallGaussian::new(1, 1), crate::SmallGaussian::new(1, 2)];
        let out = lucier_transfer(&a, &aux, &g("1+i")).unwrap();
        assert!(out.precondition && out.holds);
        assert!(lucier_transfer_check(&[], &aux, &g("0")).unwrap());
        // 8+4i − (4+4i) = 4 = q(2)
        let bad = [crate::SmallGaussian::new(4, 4), crate::SmallGaussian::new(8, 4)];
        let out = lucier_transfer(&bad, &aux, &g("0")).unwrap();
        assert!(!out.precondition);
    }

    #[test]
    fn not_intersective_tables_match_enumeration() {
        let q = p("x^2+x+1");
        let v = decide_intersective(&q, &Effort::default()).unwrap();
        let c = v.counterexample.unwrap();
        let residues = residues_mod(&c.modulus).unwrap();
        assert!(residues.iter().all(|s| !c.modulus.divides(&q.eval(s))));
    }
}
