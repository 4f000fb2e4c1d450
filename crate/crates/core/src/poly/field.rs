//! Euclidean algorithms for polynomials over a field (in practice `Q(i)`).

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

impl<F: Field> Poly<F> {
    /// Scale to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Ok(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            Err(_) => Poly::zero(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead()?.inv().ok_or(Error::ZeroPolynomial)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Invariant("polynomial division left a remainder".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = std::mem::replace(&mut y, r);
        }
        x.monic()
    }

    /// Yun's squarefree decomposition: monic, pairwise coprime `f_1, f_2, …`
    /// with `self = lead · Π f_k^k`. Entry `k - 1` holds `f_k` (possibly 1).
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>> {
        self.degree()?;
        let f = self.monic();
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.div_exact(&a0)?;
        let mut c = df.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        while b.degree()? > 0 {
            let a = Poly::gcd(&b, &d);
            b = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            d = &c - &b.derivative();
            out.push(a);
        }
        while out.last().is_some_and(|p| p.degree() == Ok(0)) {
            out.pop();
        }
        Ok(out)
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        self.degree()?;
        let g = Poly::gcd(self, &self.derivative());
        Ok(self.div_exact(&g)?.monic())
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, other: &Self) -> Result<F> {
        let m = self.degree()?;
        let n = other.degree()?;
        let size = m + n;
        if size == 0 {
            return Ok(F::one());
        }
        let mut mat = vec![vec![F::zero(); size]; size];
        for r in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        Ok(determinant(mat))
    }
}

/// Determinant by Gaussian elimination.
pub(crate) fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            let factor = m[r][col].clone() * inv.clone();
            if factor.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x = x.clone() - p.clone() * factor.clone();
            }
        }
    }
    det
}
