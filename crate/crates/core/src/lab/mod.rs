//! Exact experiments on subsets of the box `[N]`: balanced functions,
//! correlation functionals, avoidance of `I(q)`, extremal sets, lattice
//! partitions and the numerical thresholds of the density increment.
//!
//! Every expectation is an exact rational; nothing here uses floating point.

mod avoid;
mod corr;
mod partition;
mod threshold;

pub use avoid::{
    avoidance_check, avoidance_radius_squared, avoidance_witness, difference_graph, max_avoiding_density,
    max_avoiding_density_with_limit, AvoidanceReport, AvoidanceWitness, ExtremalSet, SearchMode, DEFAULT_EXACT_LIMIT,
    MAX_EXACT_LIMIT,
};
pub use corr::{
    correlation, degree_lowering_step, dp_domain, expansion_identity_check, expansion_terms, h_sum_counts,
    indicator_correlation, integer_root_floor, CorrelationSpec, DegreeLoweringStep, DpDomain, ExpansionTerms,
};
pub use partition::{best_lattice, density_on_lattice, lattice_partition, BestLattice, LatticeCell, LatticePartition};
pub use threshold::{
    final_bound, ln_bracket, n_r, t_exact, t_interval, threshold_report, Bracket, Magnitude, N0Report, PowerTerm,
    StepThreshold, TCertified, TExact, TMethod, Threshold, ThresholdReport,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::gaussian::{enumerate_box, GaussBox};
use crate::json::Exact;
use crate::SmallGaussian;

/// A subset `A` of `[N]`, with members kept in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxSubset {
    n: u64,
    mask: Vec<bool>,
    members: Vec<SmallGaussian>,
}

impl BoxSubset {
    /// Duplicates are ignored; a point outside `[N]` is an error.
    pub fn new(n: u64, points: &[SmallGaussian]) -> Result<Self> {
        check_side(n)?;
        let bx = GaussBox::new(n);
        let mut mask = vec![false; (n * n) as usize];
        for z in points {
            match bx.index_of(z.re, z.im) {
                Some(k) => mask[k] = true,
                None => return domain(format!("{z} lies outside [{n}]")),
            }
        }
        Ok(Self::from_mask_unchecked(n, mask))
    }

    /// `mask[k]` says whether the `k`-th point of `[N]` (row-major) is in `A`.
    pub fn from_mask(n: u64, mask: Vec<bool>) -> Result<Self> {
        check_side(n)?;
        if mask.len() as u64 != n * n {
            return domain(format!("mask of length {} for a box of {} points", mask.len(), n * n));
        }
        Ok(Self::from_mask_unchecked(n, mask))
    }

    /// Bit `k` of `bits` selects the `k`-th point; needs `N² ≤ 128`.
    pub fn from_bits(n: u64, bits: u128) -> Result<Self> {
        check_side(n)?;
        if n * n > 128 {
            return domain("bit masks cover at most 128 points");
        }
        let mask = (0..n * n).map(|k| bits >> k & 1 == 1).collect();
        Ok(Self::from_mask_unchecked(n, mask))
    }

    fn from_mask_unchecked(n: u64, mask: Vec<bool>) -> Self {
        let members = enumerate_box::<i64>(n)
            .zip(&mask)
            .filter(|(_, &b)| b)
            .map(|(z, _)| z)
            .collect();
        BoxSubset { n, mask, members }
    }

    pub fn empty(n: u64) -> Result<Self> {
        Self::from_mask(n, vec![false; (n * n) as usize])
    }

    pub fn full(n: u64) -> Result<Self> {
        Self::from_mask(n, vec![true; (n * n) as usize])
    }

    /// Each point is kept independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Result<Self> {
        check_side(n)?;
        let mask = (0..n * n).map(|_| rng.gen::<bool>()).collect();
        Ok(Self::from_mask_unchecked(n, mask))
    }

    pub fn side(&self) -> u64 {
        self.n
    }

    pub fn members(&self) -> &[SmallGaussian] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, z: &SmallGaussian) -> bool {
        GaussBox::new(self.n).index_of(z.re, z.im).is_some_and(|k| self.mask[k])
    }

    pub fn in_box(&self, z: &SmallGaussian) -> bool {
        GaussBox::new(self.n).index_of(z.re, z.im).is_some()
    }

    /// `δ = |A|/N²`.
    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.len()), BigInt::from(self.n * self.n))
    }

    /// `N²·f(z) = N²·1_A(z) − |A|·1_[N](z)`, an integer.
    pub fn scaled_balanced(&self, z: &SmallGaussian) -> i64 {
        let nn = (self.n * self.n) as i64;
        let a = self.len() as i64;
        match GaussBox::new(self.n).index_of(z.re, z.im) {
            Some(k) if self.mask[k] => nn - a,
            Some(_) => -a,
            None => 0,
        }
    }

    /// The balanced function `f = 1_A − δ·1_[N]`; zero outside `[N]`.
    pub fn balanced(&self, z: &SmallGaussian) -> BigRational {
        BigRational::new(BigInt::from(self.scaled_balanced(z)), BigInt::from(self.n * self.n))
    }
}

fn check_side(n: u64) -> Result<()> {
    if n == 0 {
        return domain("the box side N must be positive");
    }
    if n > 1 << 15 {
        return domain("box side too large");
    }
    Ok(())
}

impl Serialize for BoxSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoxSubset", 4)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("size", &self.len())?;
        st.serialize_field("density", &Exact(&self.density()))?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

/// `(E f, E|f|²)` over `[N]`.
pub fn balanced_moments(a: &BoxSubset) -> (BigRational, BigRational) {
    let nn = BigInt::from(a.side() * a.side());
    let mut sum = BigInt::zero();
    let mut sq = BigInt::zero();
    for z in enumerate_box::<i64>(a.side()) {
        let v = BigInt::from(a.scaled_balanced(&z));
        sq += &v * &v;
        sum += v;
    }
    // values carry a factor N²
    let mean = BigRational::new(sum, &nn * &nn);
    let second = BigRational::new(sq, &nn * &nn * &nn);
    (mean, second)
}

/// The laws of the balanced function, each checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedLaws {
    /// `Σ_{n∈[N]} f(n) = 0`.
    pub sum_zero: bool,
    /// `|f| ≤ 1` everywhere, including just outside the box.
    pub one_bounded: bool,
    /// `f` vanishes outside `[N]`.
    pub vanishes_outside: bool,
    /// `E|f|² = δ − δ²`.
    pub second_moment_exact: bool,
    /// `E|f|² ≤ δ`.
    pub second_moment_le_delta: bool,
}

impl BalancedLaws {
    pub fn all(&self) -> bool {
        self.sum_zero
            && self.one_bounded
            && self.vanishes_outside
            && self.second_moment_exact
            && self.second_moment_le_delta
    }
}

pub fn balanced_laws(a: &BoxSubset) -> BalancedLaws {
    let delta = a.density();
    let (mean, second) = balanced_moments(a);
    let n = a.side() as i64;
    let one = BigRational::one();
    let ring = ShiftedRing(n);
    let one_bounded = ring
        .points()
        .chain(enumerate_box::<i64>(a.side()))
        .all(|z| a.balanced(&z).abs() <= one);
    let vanishes_outside = ring.points().all(|z| a.balanced(&z).is_zero());
    BalancedLaws {
        sum_zero: mean.is_zero(),
        one_bounded,
        vanishes_outside,
        second_moment_exact: second == &delta - &delta * &delta,
        second_moment_le_delta: second <= delta,
    }
}

/// The ring of points at distance one outside `[N]`.
struct ShiftedRing(i64);

impl ShiftedRing {
    fn points(&self) -> impl Iterator<Item = SmallGaussian> + '_ {
        let n = self.0;
        (0..=n + 1)
            .flat_map(move |b| (0..=n + 1).map(move |a| SmallGaussian::new(a, b)))
            .filter(move |z| z.re == 0 || z.im == 0 || z.re == n + 1 || z.im == n + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn subsets() {
        let a = BoxSubset::new(
            3,
            &[
                SmallGaussian::new(3, 1),
                SmallGaussian::new(1, 1),
                SmallGaussian::new(1, 1),
            ],
        )
        .unwrap();
        assert_eq!(a.members(), &[SmallGaussian::new(1, 1), SmallGaussian::new(3, 1)]);
        assert_eq!(a.density(), r(2, 9));
        assert!(a.contains(&SmallGaussian::new(3, 1)));
        assert!(!a.contains(&SmallGaussian::new(0, 1)));
        assert!(BoxSubset::new(3, &[SmallGaussian::new(4, 1)]).is_err());
        assert!(BoxSubset::new(0, &[]).is_err());
        let b = BoxSubset::from_bits(2, 0b1001).unwrap();
        assert_eq!(b.members(), &[SmallGaussian::new(1, 1), SmallGaussian::new(2, 2)]);
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"N":2,"size":2,"density":{"num":"1","den":"2"},"members":[["1","1"],["2","2"]]}"#
        );
    }

    #[test]
    fn moments() {
        assert_eq!(balanced_moments(&BoxSubset::empty(3).unwrap()), (r(0, 1), r(0, 1)));
        assert_eq!(balanced_moments(&BoxSubset::full(3).unwrap()), (r(0, 1), r(0, 1)));
        let half = BoxSubset::from_bits(2, 0b0110).unwrap();
        assert_eq!(balanced_moments(&half), (r(0, 1), r(1, 4)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let a = BoxSubset::random(n, &mut rng).unwrap();
            assert!(balanced_laws(&a).all());
        }
    }
}
