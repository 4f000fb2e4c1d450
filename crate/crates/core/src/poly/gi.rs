//! Operations specific to polynomials with Gaussian-integer coefficients.
//!
//! Magnitude comparisons are done on squared absolute values. In
//! particular `M_p = 2·max|a_j|` is never formed; `M_p² = 4·max N(a_j)` is.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Poly;
use crate::error::{domain, Error, Result};
use crate::gaussian::{gi_gcd, Gaussian};
use crate::scalar::IntScalar;
use crate::{GIPolynomial, GaussianInt, QiPolynomial};

/// Outcome of the root-localization test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonvanishing {
    /// `|z| > M_p`, so `p(z) ≠ 0` (and this was confirmed by evaluation).
    GuaranteedNonzero,
    /// `|z| ≤ M_p`: no guarantee, the caller has to evaluate.
    MustEvaluate,
}

impl<T: IntScalar> Poly<Gaussian<T>> {
    /// `M_p² = 4·max_j N(a_j)`.
    pub fn mp_squared(&self) -> Result<T> {
        let max = self
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .fold(None::<T>, |m, n| match m {
                Some(m) if m >= n => Some(m),
                _ => Some(n),
            })
            .ok_or(Error::ZeroPolynomial)?;
        let four = T::from_u8(4).unwrap();
        Ok(four * max)
    }

    /// Any `z` with `|z| > M_p` is not a root.
    pub fn nonvanishing_check(&self, z: &Gaussian<T>) -> Result<Nonvanishing> {
        if self.is_constant() {
            return domain("nonvanishing check needs a nonconstant polynomial");
        }
        if z.norm() > self.mp_squared()? {
            if self.eval(z).is_zero() {
                return Err(Error::Invariant(format!("root {z} outside the radius M_p")));
            }
            Ok(Nonvanishing::GuaranteedNonzero)
        } else {
            Ok(Nonvanishing::MustEvaluate)
        }
    }

    /// `q(r + αx)`, expanded with exact binomial coefficients.
    pub fn shift_scale(&self, r: &Gaussian<T>, alpha: &Gaussian<T>) -> Result<Self> {
        if alpha.is_zero() {
            return domain("shift_scale with zero scale");
        }
        let d = self.degree()?;
        let binom = Self::pascal(d);
        let mut rpow = vec![Gaussian::one()];
        for k in 1..=d {
            rpow.push(&rpow[k - 1] * r);
        }
        let mut apow = Gaussian::one();
        let mut out = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let mut s = Gaussian::zero();
            for i in j..=d {
                s += &(&(&self.coeffs()[i] * &binom[i][j]) * &rpow[i - j]);
            }
            out.push(&s * &apow);
            apow = &apow * alpha;
        }
        Ok(Poly::new(out))
    }

    /// `q(x + k)`.
    pub fn shift(&self, k: &Gaussian<T>) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.shift_scale(k, &Gaussian::one()).expect("unit scale")
    }

    /// Divide every coefficient by `c`, if all divisions are exact.
    pub fn div_exact_scalar(&self, c: &Gaussian<T>) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs().len());
        for a in self.coeffs() {
            out.push(a.div_exact(c)?);
        }
        Some(Poly::new(out))
    }

    /// Canonical gcd of the coefficients.
    pub fn content(&self) -> Result<Gaussian<T>> {
        let mut g = Gaussian::zero();
        for c in self.coeffs() {
            g = if g.is_zero() { c.canonical() } else { gi_gcd(&g, c)? };
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(g)
    }
}

/// The difference polynomial `p′(y) = p(y + k′) − p(y + k)` with
/// coefficients `b_j = Σ_{i>j} a_i·C(i, j)·(k′^{i−j} − k^{i−j})`.
///
/// The degree drops by exactly one and `b_{d−1} = d·a_d·(k′ − k)`. Also
/// checks the coefficient growth `|b_j| ≤ 2^{2d}·(M_p/2)·max(|k|, |k′|)^d`
/// in squared form.
pub fn degree_lower_diff<T: IntScalar>(
    p: &Poly<Gaussian<T>>,
    k: &Gaussian<T>,
    k2: &Gaussian<T>,
) -> Result<Poly<Gaussian<T>>> {
    let d = p.degree()?;
    if d == 0 {
        return domain("degree lowering needs a nonconstant polynomial");
    }
    if k == k2 {
        return domain("degree lowering with k = k' gives the zero polynomial");
    }
    let binom = Poly::<Gaussian<T>>::pascal(d);
    let mut kp = vec![Gaussian::one()];
    let mut k2p = vec![Gaussian::one()];
    for e in 1..=d {
        kp.push(&kp[e - 1] * k);
        k2p.push(&k2p[e - 1] * k2);
    }
    let a = p.coeffs();
    let b: Vec<Gaussian<T>> = (0..d)
        .map(|j| {
            let mut s = Gaussian::zero();
            for i in j + 1..=d {
                let diff = &k2p[i - j] - &kp[i - j];
                s += &(&(&a[i] * &binom[i][j]) * &diff);
            }
            s
        })
        .collect();
    let out = Poly::new(b);
    if out.degree()? != d - 1 {
        return Err(Error::Invariant(
            "degree lowering did not drop the degree by one".into(),
        ));
    }
    // N(b_j) <= 2^{4d} · (M_p²/4) · K^d with K = max(N(k), N(k'))
    let kmax = if k.norm() > k2.norm() { k.norm() } else { k2.norm() };
    let two = T::from_u8(2).unwrap();
    let bound = num_traits::pow(two, 4 * d) * (p.mp_squared()? / T::from_u8(4).unwrap()) * num_traits::pow(kmax, d);
    if out.coeffs().iter().any(|c| c.norm() > bound) {
        return Err(Error::Invariant("degree-lowering coefficient bound violated".into()));
    }
    Ok(out)
}

/// `M_{q_a}² ≤ 2^{4d}·N(α)^{d−1}·M_q²`, the squared growth bound of the
/// auxiliary polynomial.
pub fn mq_bound_check<T: IntScalar>(
    q_a: &Poly<Gaussian<T>>,
    q: &Poly<Gaussian<T>>,
    alpha: &Gaussian<T>,
) -> Result<bool> {
    let d = q.degree()?;
    let two = T::from_u8(2).unwrap();
    let rhs = num_traits::pow(two, 4 * d) * num_traits::pow(alpha.norm(), d.saturating_sub(1)) * q.mp_squared()?;
    Ok(q_a.mp_squared()? <= rhs)
}

impl GIPolynomial {
    pub fn to_rational(&self) -> QiPolynomial {
        self.map(|c| c.to_rational())
    }

    /// Content-free associate with canonical leading coefficient.
    pub fn primitive_part(&self) -> Result<Self> {
        let c = self.content()?;
        let p = self.div_exact_scalar(&c).expect("content divides every coefficient");
        let u = p.lead()?.canonical_unit();
        Ok(p.scale(&u))
    }

    /// Integral, primitive representative of the squarefree part.
    pub fn squarefree_integral(&self) -> Result<Self> {
        if self.is_constant() {
            self.degree()?;
            return Ok(Poly::constant(GaussianInt::one()));
        }
        clear_denominators(&self.to_rational().squarefree_part()?).primitive_part()
    }
}

/// Multiply by the lcm of all coordinate denominators.
pub fn clear_denominators(p: &QiPolynomial) -> GIPolynomial {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let lr = BigRational::from_integer(l);
    p.map(|c| {
        Gaussian::new(c.re.clone() * lr.clone(), c.im.clone() * lr.clone())
            .to_integral()
            .expect("denominators cleared")
    })
}

/// `Res(p, p′)` of an integral polynomial, computed in `Q(i)`; it is integral.
pub fn discriminant_resultant(p: &GIPolynomial) -> Result<GaussianInt> {
    let r = p.to_rational();
    let res = r.resultant(&r.derivative())?;
    res.to_integral()
        .ok_or_else(|| Error::Invariant("resultant of integral polynomials is not integral".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GIPolynomial;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64s(re, im)
    }
    fn p(cs: &[(i64, i64)]) -> GIPolynomial {
        GIPolynomial::new(cs.iter().map(|&(a, b)| g(a, b)).collect())
    }

    #[test]
    fn mp_squared_examples() {
        assert_eq!(p(&[(0, 0), (0, 0), (1, 0)]).mp_squared().unwrap(), BigInt::from(4));
        assert_eq!(p(&[(1, 1), (0, 0), (3, 0)]).mp_squared().unwrap(), BigInt::from(36));
        assert_eq!(p(&[(0, 0), (2, 2)]).mp_squared().unwrap(), BigInt::from(32));
        assert!(GIPolynomial::zero().mp_squared().is_err());
    }

    #[test]
    fn nonvanishing_examples() {
        let x2 = p(&[(0, 0), (0, 0), (1, 0)]);
        assert_eq!(
            x2.nonvanishing_check(&g(3, 0)).unwrap(),
            Nonvanishing::GuaranteedNonzero
        );
        let x2p1 = p(&[(1, 0), (0, 0), (1, 0)]);
        assert_eq!(x2p1.nonvanishing_check(&g(0, 1)).unwrap(), Nonvanishing::MustEvaluate);
        assert!(x2p1.eval(&g(0, 1)).is_zero());
        assert!(p(&[(3, 0)]).nonvanishing_check(&g(9, 9)).is_err());
        // x^2 - 4: M_p^2 = 64; no zero with 64 < N(z) <= 400
        let q = p(&[(-4, 0), (0, 0), (1, 0)]);
        assert_eq!(q.mp_squared().unwrap(), BigInt::from(64));
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let z = g(a, b);
                let n = a * a + b * b;
                if n > 64 && n <= 400 {
                    assert_eq!(q.nonvanishing_check(&z).unwrap(), Nonvanishing::GuaranteedNonzero);
                }
            }
        }
    }

    #[test]
    fn shift_scale_examples() {
        let x2 = p(&[(0, 0), (0, 0), (1, 0)]);
        assert_eq!(x2.shift_scale(&g(0, 0), &g(1, 0)).unwrap(), x2);
        let r = &g(1, 1) * &g(2, 0);
        assert_eq!(x2.shift_scale(&r, &g(2, 0)).unwrap(), p(&[(0, 8), (8, 8), (4, 0)]));
        assert!(x2.shift_scale(&r, &g(0, 0)).is_err());
    }

    #[test]
    fn degree_lower_examples() {
        let x2 = p(&[(0, 0), (0, 0), (1, 0)]);
        let d = degree_lower_diff(&x2, &g(1, 1), &g(1, 2)).unwrap();
        assert_eq!(d, p(&[(-3, 2), (0, 2)]));
        for s in (-4..=4).flat_map(|a| (-2..=2).map(move |b| g(a, b))) {
            let lhs = &x2.eval(&(&s + &g(1, 2))) - &x2.eval(&(&s + &g(1, 1)));
            assert_eq!(d.eval(&s), lhs);
        }
        let x = p(&[(0, 0), (1, 0)]);
        let c = degree_lower_diff(&x, &g(2, 1), &g(-1, 3)).unwrap();
        assert_eq!(c, p(&[(-3, 2)]));
        assert!(degree_lower_diff(&x2, &g(1, 1), &g(1, 1)).is_err());
    }

    #[test]
    fn mq_bound_example() {
        let q = p(&[(0, 0), (0, 0), (1, 0)]);
        let qa = p(&[(0, 2), (2, 2), (1, 0)]);
        assert!(mq_bound_check(&qa, &q, &g(2, 0)).unwrap());
        assert!(mq_bound_check(&q, &q, &g(1, 0)).unwrap());
    }

    #[test]
    fn squarefree_integral_part() {
        // 2 x^2 (x - 3)
        let q = p(&[(0, 0), (0, 0), (-6, 0), (2, 0)]);
        assert_eq!(q.squarefree_integral().unwrap(), p(&[(0, 0), (-3, 0), (1, 0)]));
        assert_eq!(discriminant_resultant(&p(&[(1, 0), (1, 0), (1, 0)])).unwrap(), g(3, 0));
    }
}
