//! Exact arithmetic on Gaussian numbers `a + bi`.
//!
//! With integral coordinates this is the Euclidean domain `Z[i]`: rounded
//! division, gcd, canonical associates and exact divisibility live in the
//! `IntScalar` impl block. With rational coordinates it is the field `Q(i)`.

mod boxes;
mod residue;

pub use boxes::{enumerate_box, GaussBox, ShiftedBox};
pub use residue::{residue_square_reduce, ResidueSquare};

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{Field, FieldScalar, IntScalar, Ring, Scalar};

/// A Gaussian number `re + im·i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn from_re(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian {
            re: T::zero(),
            im: T::one(),
        }
    }

    pub fn from_i64s(re: i64, im: i64) -> Self {
        Gaussian::new(
            T::from_i64(re).expect("coordinate out of range"),
            T::from_i64(im).expect("coordinate out of range"),
        )
    }

    /// The four units `1, i, -1, -i` in that order.
    pub fn units() -> [Self; 4] {
        [Self::one(), Self::i(), -Self::one(), -Self::i()]
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`, the square of the absolute value.
    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Gaussian {
            re: self.re.clone() * k.clone(),
            im: self.im.clone() * k.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `i`, i.e. rotation by a quarter turn.
    pub fn mul_i(&self) -> Self {
        Gaussian {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    /// The four associates `u·z` for `u` in [`Gaussian::units`] order.
    pub fn associates(&self) -> [Self; 4] {
        let a = self.clone();
        let b = a.mul_i();
        let c = b.mul_i();
        let d = c.mul_i();
        [a, b, c, d]
    }
}

impl<T: IntScalar> Gaussian<T> {
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The unique associate with `re > 0, im >= 0`; zero maps to zero.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.associates()
            .into_iter()
            .find(|w| w.re.is_positive() && !w.im.is_negative())
            .expect("exactly one associate lies in the first quadrant")
    }

    /// The unit `u` with `u·self == self.canonical()`.
    pub fn canonical_unit(&self) -> Self {
        if self.is_zero() {
            return Self::one();
        }
        let units = Self::units();
        for (u, w) in units.iter().zip(self.associates()) {
            if w.re.is_positive() && !w.im.is_negative() {
                return u.clone();
            }
        }
        unreachable!("exactly one associate lies in the first quadrant")
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Quotient rounded to the nearest lattice point, so the remainder has
    /// norm at most half the divisor's norm.
    pub fn div_round(&self, d: &Self) -> Result<Self> {
        let n = d.norm();
        if n.is_zero() {
            return domain("division by zero");
        }
        let num = self * &d.conj();
        Ok(Gaussian::new(round_div(&num.re, &n), round_div(&num.im, &n)))
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let q = self.div_round(d)?;
        let r = self - &(&q * d);
        Ok((q, r))
    }

    /// `self / d` when the division is exact, `None` otherwise (or if `d = 0`).
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Gaussian::new(qr, qi))
        } else {
            None
        }
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Whether `a ≡ b (mod self)`.
    pub fn congruent(&self, a: &Self, b: &Self) -> bool {
        self.divides(&(a - b))
    }

    /// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` a gcd (not normalized).
    pub fn gcd_ext(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }
}

/// Greatest common divisor in `Z[i]`, normalized to its canonical associate.
pub fn gi_gcd<T: IntScalar>(a: &Gaussian<T>, b: &Gaussian<T>) -> Result<Gaussian<T>> {
    if a.is_zero() && b.is_zero() {
        return domain("gcd(0, 0) is undefined");
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = std::mem::replace(&mut y, r);
    }
    Ok(x.canonical())
}

/// Inverse of `a` modulo `m`, if `a` and `m` are coprime.
pub fn inverse_mod<T: IntScalar>(a: &Gaussian<T>, m: &Gaussian<T>) -> Option<Gaussian<T>> {
    if m.is_zero() {
        return None;
    }
    let (g, s, _) = Gaussian::gcd_ext(a, m);
    if !g.is_unit() {
        return None;
    }
    // g is a unit, so its inverse is its conjugate.
    Some(&s * &g.conj())
}

fn round_div<T: IntScalar>(x: &T, n: &T) -> T {
    // floor((2x + n) / 2n) for n > 0
    let two = T::one() + T::one();
    (two.clone() * x.clone() + n.clone()).div_floor(&(two * n.clone()))
}

impl<T: FieldScalar> Gaussian<T> {
    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(self.re.clone() / n.clone(), -self.im.clone() / n))
    }
}

impl Gaussian<BigInt> {
    /// Embedding `Z[i] → Q(i)`.
    pub fn to_rational(&self) -> Gaussian<BigRational> {
        Gaussian::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }

    /// Narrowing to machine coordinates, `None` on overflow.
    pub fn to_small(&self) -> Option<Gaussian<i64>> {
        Some(Gaussian::new(self.re.to_i64()?, self.im.to_i64()?))
    }
}

impl From<Gaussian<i64>> for Gaussian<BigInt> {
    fn from(z: Gaussian<i64>) -> Self {
        Gaussian::new(BigInt::from(z.re), BigInt::from(z.im))
    }
}

impl Gaussian<BigRational> {
    /// The value as a Gaussian integer, if both coordinates are integral.
    pub fn to_integral(&self) -> Option<Gaussian<BigInt>> {
        if self.re.is_integer() && self.im.is_integer() {
            Some(Gaussian::new(self.re.to_integer(), self.im.to_integer()))
        } else {
            None
        }
    }
}

// ---- arithmetic ----

impl<'a, T: Scalar> Add<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn add(self, o: &'a Gaussian<T>) -> Gaussian<T> {
        Gaussian::new(self.re.clone() + o.re.clone(), self.im.clone() + o.im.clone())
    }
}

impl<'a, T: Scalar> Sub<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn sub(self, o: &'a Gaussian<T>) -> Gaussian<T> {
        Gaussian::new(self.re.clone() - o.re.clone(), self.im.clone() - o.im.clone())
    }
}

impl<'a, T: Scalar> Mul<&'a Gaussian<T>> for &'a Gaussian<T> {
    type Output = Gaussian<T>;
    fn mul(self, o: &'a Gaussian<T>) -> Gaussian<T> {
        Gaussian::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        )
    }
}

impl<T: Scalar> Add for Gaussian<T> {
    type Output = Gaussian<T>;
    fn add(self, o: Self) -> Self {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: Scalar> Sub for Gaussian<T> {
    type Output = Gaussian<T>;
    fn sub(self, o: Self) -> Self {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl<T: Scalar> Mul for Gaussian<T> {
    type Output = Gaussian<T>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<T: Scalar> Neg for Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl<T: Scalar> Neg for &Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Gaussian<T> {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
}

impl<T: Scalar> AddAssign<&Gaussian<T>> for Gaussian<T> {
    fn add_assign(&mut self, o: &Gaussian<T>) {
        self.re = self.re.clone() + o.re.clone();
        self.im = self.im.clone() + o.im.clone();
    }
}

impl<T: Scalar> SubAssign<&Gaussian<T>> for Gaussian<T> {
    fn sub_assign(&mut self, o: &Gaussian<T>) {
        self.re = self.re.clone() - o.re.clone();
        self.im = self.im.clone() - o.im.clone();
    }
}

impl<T: Scalar> MulAssign<&Gaussian<T>> for Gaussian<T> {
    fn mul_assign(&mut self, o: &Gaussian<T>) {
        *self = &*self * o;
    }
}

impl<T: Scalar> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Scalar> One for Gaussian<T> {
    fn one() -> Self {
        Gaussian::new(T::one(), T::zero())
    }
}

impl<T: Scalar> Ring for Gaussian<T> {
    fn from_int(v: i64) -> Self {
        Gaussian::from_i64s(v, 0)
    }
}

impl<T: FieldScalar> Field for Gaussian<T> {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}

// ---- text and JSON forms ----

impl<T: Scalar> fmt::Display for Gaussian<T> {
    /// `a+bi` or `a-bi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl std::str::FromStr for Gaussian<BigInt> {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_gaussian(s)
    }
}

impl<T: fmt::Display> Serialize for Gaussian<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.re.to_string())?;
        t.serialize_element(&self.im.to_string())?;
        t.end()
    }
}

impl<'de, T> Deserialize<'de> for Gaussian<T>
where
    T: std::str::FromStr,
    T::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        Ok(Gaussian {
            re: re.trim().parse().map_err(de::Error::custom)?,
            im: im.trim().parse().map_err(de::Error::custom)?,
        })
    }
}
