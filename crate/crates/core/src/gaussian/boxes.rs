use num_traits::Zero;

use super::Gaussian;
use crate::scalar::Scalar;

/// The box `[N] = {a + bi : a, b ∈ [1, N]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussBox {
    pub side: u64,
}

impl GaussBox {
    pub fn new(side: u64) -> Self {
        GaussBox { side }
    }

    pub fn len(&self) -> u64 {
        self.side * self.side
    }

    pub fn is_empty(&self) -> bool {
        self.side == 0
    }

    pub fn contains<T: Scalar>(&self, z: &Gaussian<T>) -> bool {
        let lo = T::one();
        let hi = T::from_u64(self.side).expect("side fits the scalar type");
        z.re >= lo && z.re <= hi && z.im >= lo && z.im <= hi
    }

    /// Row-major index of a member (imaginary part outer), 0-based.
    pub fn index_of(&self, re: i64, im: i64) -> Option<usize> {
        let s = self.side as i64;
        if re < 1 || im < 1 || re > s || im > s {
            return None;
        }
        Some(((im - 1) * s + (re - 1)) as usize)
    }

    pub fn iter<T: Scalar>(&self) -> impl Iterator<Item = Gaussian<T>> + '_ {
        let s = self.side;
        (1..=s).flat_map(move |b| (1..=s).map(move |a| Gaussian::new(T::from_u64(a).unwrap(), T::from_u64(b).unwrap())))
    }
}

/// Yields the `N²` members of `[N]` in row-major order (imaginary part outer).
pub fn enumerate_box<T: Scalar>(n: u64) -> impl Iterator<Item = Gaussian<T>> {
    (1..=n).flat_map(move |b| (1..=n).map(move |a| Gaussian::new(T::from_u64(a).unwrap(), T::from_u64(b).unwrap())))
}

/// A translate `[side] + offset`. A side length `<= 0` gives the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedBox<T> {
    pub side: i64,
    pub offset: Gaussian<T>,
}

impl<T: Scalar> ShiftedBox<T> {
    pub fn new(side: i64, offset: Gaussian<T>) -> Self {
        ShiftedBox { side, offset }
    }

    /// `[n + 2·pad] − pad·(1+i)`: contains `[n] + c` whenever
    /// `|Re c|, |Im c| ≤ pad`. This is the shape of the padded boxes
    /// `T_N`, `U_N`, `V_N`.
    pub fn padded(n: i64, pad: i64) -> Self {
        ShiftedBox::new(n + 2 * pad, Gaussian::from_i64s(-pad, -pad))
    }

    /// `[n − 2·pad] + pad·(1+i)`, the inner box of the shape of `W_N`;
    /// may be empty.
    pub fn shrunk(n: i64, pad: i64) -> Self {
        ShiftedBox::new(n - 2 * pad, Gaussian::from_i64s(pad, pad))
    }

    pub fn is_empty(&self) -> bool {
        self.side <= 0
    }

    pub fn len(&self) -> u64 {
        if self.side <= 0 {
            0
        } else {
            (self.side as u64) * (self.side as u64)
        }
    }

    pub fn contains(&self, z: &Gaussian<T>) -> bool {
        if self.is_empty() {
            return false;
        }
        let w = z - &self.offset;
        GaussBox::new(self.side as u64).contains(&w)
    }

    pub fn iter(&self) -> impl Iterator<Item = Gaussian<T>> + '_ {
        let side = if self.side <= 0 { 0 } else { self.side as u64 };
        enumerate_box::<T>(side).map(move |z| &z + &self.offset)
    }

    pub fn is_plain_box(&self) -> bool {
        self.offset.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianInt;

    #[test]
    fn small_boxes() {
        let b1: Vec<GaussianInt> = enumerate_box(1).collect();
        assert_eq!(b1, vec![GaussianInt::from_i64s(1, 1)]);
        let b2: Vec<Gaussian<i64>> = enumerate_box(2).collect();
        assert_eq!(
            b2,
            vec![
                Gaussian::new(1, 1),
                Gaussian::new(2, 1),
                Gaussian::new(1, 2),
                Gaussian::new(2, 2)
            ]
        );
        assert_eq!(enumerate_box::<i64>(7).count(), 49);
        let bx = GaussBox::new(7);
        for (k, z) in bx.iter::<i64>().enumerate() {
            assert_eq!(bx.index_of(z.re, z.im), Some(k));
        }
    }

    #[test]
    fn shifted_boxes() {
        let plain = ShiftedBox::new(3, Gaussian::<i64>::new(0, 0));
        let b: Vec<_> = plain.iter().collect();
        assert_eq!(b, enumerate_box::<i64>(3).collect::<Vec<_>>());
        let moved = ShiftedBox::new(3, Gaussian::<i64>::new(-1, -1));
        assert!(moved.contains(&Gaussian::new(0, 0)));
        assert!(ShiftedBox::<i64>::shrunk(3, 2).is_empty());
        assert_eq!(ShiftedBox::<i64>::shrunk(3, 2).iter().count(), 0);
    }

    #[test]
    fn padded_box_covers_translates() {
        for n in 1..=10i64 {
            for pad in 0..=3i64 {
                let t = ShiftedBox::<i64>::padded(n, pad);
                for z in enumerate_box::<i64>(n as u64) {
                    assert!(t.contains(&z));
                    for cr in -pad..=pad {
                        for ci in -pad..=pad {
                            if cr * cr + ci * ci <= pad * pad {
                                assert!(t.contains(&(z + Gaussian::new(cr, ci))));
                            }
                        }
                    }
                }
            }
        }
    }
}
