//! Exact arithmetic over the Gaussian integers, intersective polynomials and
//! finite experiments on difference sets in boxes of `Z[i]`.
//!
//! The arithmetic core is generic over the scalar type; the aliases below
//! fix the types used by the rest of the crate.

pub mod error;
pub mod gaussian;
pub mod ideal;
pub mod intersective;
pub mod json;
pub mod lab;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod suites;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use gaussian::{
    enumerate_box, gi_gcd, inverse_mod, residue_square_reduce, GaussBox, Gaussian, ResidueSquare, ShiftedBox,
};
pub use ideal::{crt, factor_ideal, residues_mod, GaussianPrime, IdealFactorization, PrimeKind};
pub use intersective::{
    build_q_a, build_r_a, choose_canonical_root, decide_intersective, hensel_lift, lambda_q, lucier_transfer,
    lucier_transfer_check, AuxiliaryBuilder, AuxiliaryConstruction, Effort, IntersectivityVerdict, PAdicRootApprox,
    Verdict,
};
pub use lab::{
    avoidance_check, balanced_moments, correlation, degree_lowering_step, density_on_lattice, dp_domain,
    expansion_identity_check, final_bound, indicator_correlation, integer_root_floor, lattice_partition,
    max_avoiding_density, threshold_report, BoxSubset, CorrelationSpec, SearchMode, ThresholdReport,
};
pub use parse::{parse_gaussian, parse_poly};
pub use poly::{degree_lower_diff, mq_bound_check, Nonvanishing, Poly};

/// Exact rational numbers.
pub type Rational = BigRational;
/// Elements of `Z[i]` with arbitrary precision.
pub type GaussianInt = Gaussian<BigInt>;
/// Elements of `Z[i]` with machine-word coordinates, for hot loops.
pub type SmallGaussian = Gaussian<i64>;
/// Elements of `Q(i)`.
pub type GaussianRational = Gaussian<BigRational>;
/// Polynomials over `Z[i]`.
pub type GIPolynomial = Poly<GaussianInt>;
/// Polynomials over `Q(i)`.
pub type QiPolynomial = Poly<GaussianRational>;
