use num_traits::Zero;

use super::Gaussian;
use crate::error::{domain, Result};
use crate::scalar::IntScalar;

/// The residue square `S_α`: a complete residue system modulo `α`.
///
/// Membership is tested on `w = z·conj(α)`: `z ∈ S_α` iff
/// `0 < Re(w) ≤ N(α)` and `0 < Im(w) ≤ N(α)`. This is the square with one
/// corner at the origin spanned by `α` and `iα`, closed on the far sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSquare<T> {
    modulus: Gaussian<T>,
    norm: T,
}

impl<T: IntScalar> ResidueSquare<T> {
    pub fn new(modulus: Gaussian<T>) -> Result<Self> {
        if modulus.is_zero() {
            return domain("residue square of the zero modulus");
        }
        let norm = modulus.norm();
        Ok(ResidueSquare { modulus, norm })
    }

    pub fn modulus(&self) -> &Gaussian<T> {
        &self.modulus
    }

    /// `|S_α| = N(α)`.
    pub fn size(&self) -> &T {
        &self.norm
    }

    pub fn contains(&self, z: &Gaussian<T>) -> bool {
        let w = z * &self.modulus.conj();
        let n = &self.norm;
        w.re > T::zero() && &w.re <= n && w.im > T::zero() && &w.im <= n
    }

    /// The unique member of `S_α` congruent to `z`.
    pub fn reduce(&self, z: &Gaussian<T>) -> Gaussian<T> {
        let w = z * &self.modulus.conj();
        // shift by k·α where k = (floor((Re w - 1)/N), floor((Im w - 1)/N))
        let kr = (w.re - T::one()).div_floor(&self.norm);
        let ki = (w.im - T::one()).div_floor(&self.norm);
        z - &(&Gaussian::new(kr, ki) * &self.modulus)
    }

    /// All `N(α)` members, in row-major order (imaginary part outer).
    pub fn elements(&self) -> Vec<Gaussian<T>> {
        // x + yi with 0 <= x < N/g, 0 <= y < g is a complete residue
        // system, g = gcd(Re α, Im α); reduce it into the square.
        let g = self.modulus.re.gcd(&self.modulus.im);
        let width = self.norm.clone() / g.clone();
        let mut out = Vec::new();
        let mut y = T::zero();
        while y < g {
            let mut x = T::zero();
            while x < width {
                out.push(self.reduce(&Gaussian::new(x.clone(), y.clone())));
                x = x + T::one();
            }
            y = y + T::one();
        }
        out.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap().then(a.re.partial_cmp(&b.re).unwrap()));
        out
    }
}

/// Reduce `z` into the residue square `S_α`.
pub fn residue_square_reduce<T: IntScalar>(z: &Gaussian<T>, alpha: &Gaussian<T>) -> Result<Gaussian<T>> {
    Ok(ResidueSquare::new(alpha.clone())?.reduce(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianInt;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::from_i64s(re, im)
    }

    #[test]
    fn zero_mod_one_plus_i() {
        let w = residue_square_reduce(&g(0, 0), &g(1, 1)).unwrap();
        // enumerate all w with norm <= 4 and keep members congruent to 0
        let sq = ResidueSquare::new(g(1, 1)).unwrap();
        let mut hits = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                let c = g(a, b);
                if c.norm() <= BigInt::from(4) && sq.contains(&c) && g(1, 1).divides(&c) {
                    hits.push(c);
                }
            }
        }
        assert_eq!(hits, vec![w.clone()]);
        assert_eq!(w, g(0, 2));
    }

    #[test]
    fn idempotent_and_periodic() {
        let alpha = g(3, 2);
        let sq = ResidueSquare::new(alpha.clone()).unwrap();
        for a in -6..=6 {
            for b in -6..=6 {
                let z = g(a, b);
                let r = sq.reduce(&z);
                assert!(sq.contains(&r));
                assert!(alpha.congruent(&r, &z));
                assert_eq!(sq.reduce(&r), r);
                assert_eq!(sq.reduce(&(&z + &alpha)), r);
                // |w| <= sqrt(2)|alpha|
                assert!(r.norm() <= BigInt::from(2) * alpha.norm());
            }
        }
    }

    #[test]
    fn elements_form_complete_system() {
        for a in -7i64..=7 {
            for b in -7i64..=7 {
                let alpha = g(a, b);
                if alpha.is_zero() || alpha.norm() > BigInt::from(60) {
                    continue;
                }
                let sq = ResidueSquare::new(alpha.clone()).unwrap();
                let els = sq.elements();
                assert_eq!(els.len(), alpha.norm().to_usize().unwrap());
                for (i, x) in els.iter().enumerate() {
                    assert!(sq.contains(x));
                    for y in &els[i + 1..] {
                        assert!(!alpha.congruent(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(residue_square_reduce(&g(1, 0), &g(0, 0)).is_err());
    }

    #[test]
    fn machine_coordinates() {
        let sq = ResidueSquare::new(crate::Gaussian::<i64>::new(2, 1)).unwrap();
        assert_eq!(sq.elements().len(), 5);
    }
}
