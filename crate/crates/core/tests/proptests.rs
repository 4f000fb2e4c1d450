use gaussint::lab::{balanced_laws, integer_root_floor};
use gaussint::{
    correlation, crt, degree_lower_diff, gi_gcd, lattice_partition, parse_gaussian, parse_poly, residue_square_reduce,
    BoxSubset, CorrelationSpec, GIPolynomial, GaussianInt, ResidueSquare, SmallGaussian,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gauss(r: i64) -> impl Strategy<Value = GaussianInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| GaussianInt::from_i64s(a, b))
}

fn nonzero(r: i64) -> impl Strategy<Value = GaussianInt> {
    gauss(r).prop_filter("nonzero", |z| z.norm() > 0.into())
}

fn poly(max_deg: usize, r: i64) -> impl Strategy<Value = GIPolynomial> {
    prop::collection::vec(gauss(r), 1..=max_deg + 1).prop_map(GIPolynomial::new)
}

proptest! {
    #[test]
    fn ring_laws(a in gauss(1000), b in gauss(1000), c in gauss(1000)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn gcd_divides_and_is_canonical(a in gauss(500), b in nonzero(500)) {
        let d = gi_gcd(&a, &b).unwrap();
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert_eq!(d.canonical(), d.clone());
        let (g, x, y) = GaussianInt::gcd_ext(&a, &b);
        prop_assert!(g.is_associate(&d));
        prop_assert_eq!(&(&a * &x) + &(&b * &y), g);
    }

    #[test]
    fn reduction_lands_in_square(z in gauss(10_000), alpha in nonzero(40)) {
        let w = residue_square_reduce(&z, &alpha).unwrap();
        prop_assert!(ResidueSquare::new(alpha.clone()).unwrap().contains(&w));
        prop_assert!(alpha.divides(&(&z - &w)));
        prop_assert!(w.norm() <= alpha.norm() * 2u32);
    }

    #[test]
    fn crt_solves_both(s1 in gauss(50), s2 in gauss(50), e1 in 1u32..4, e2 in 1u32..3) {
        let m1 = GaussianInt::from_i64s(1, 1).pow(e1);
        let m2 = GaussianInt::from_i64s(2, 1).pow(e2);
        let z = crt(&[(s1.clone(), m1.clone()), (s2.clone(), m2.clone())]).unwrap();
        prop_assert!(m1.divides(&(&z - &s1)));
        prop_assert!(m2.divides(&(&z - &s2)));
    }

    #[test]
    fn text_round_trip(z in gauss(1 << 40), p in poly(5, 30)) {
        prop_assert_eq!(parse_gaussian(&z.to_string()).unwrap(), z);
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn shift_scale_evaluates(p in poly(4, 20), r in gauss(20), alpha in nonzero(20), z in gauss(20)) {
        let s = p.shift_scale(&r, &alpha).unwrap();
        prop_assert_eq!(s.eval(&z), p.eval(&(&r + &(&alpha * &z))));
        prop_assert_eq!(s.degree().ok(), p.degree().ok());
    }

    #[test]
    fn degree_lowering_identity(p in poly(5, 10), k in gauss(10), k2 in gauss(10), y in gauss(100)) {
        prop_assume!(k != k2 && !p.is_constant());
        let d = degree_lower_diff(&p, &k, &k2).unwrap();
        prop_assert_eq!(d.eval(&y), &p.eval(&(&y + &k2)) - &p.eval(&(&y + &k)));
        prop_assert_eq!(d.degree().unwrap() + 1, p.degree().unwrap());
    }

    #[test]
    fn partitions_cover(m_box in 1u64..=12, a in -3i64..=3, b in -3i64..=3, m in 1u64..=3) {
        let xi = SmallGaussian::new(a, b);
        prop_assume!(xi.norm() > 0 && xi.norm() <= 8);
        let p = lattice_partition(m_box, &xi, m).unwrap();
        prop_assert!(p.verify() && p.exact_cover && p.error_bound_holds);
    }

    #[test]
    fn balanced_function_laws(n in 1u64..=8, seed in any::<u64>()) {
        let a = BoxSubset::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(balanced_laws(&a).all());
    }

    #[test]
    fn correlation_is_order_independent(seed in any::<u64>(), j in 0usize..=2, h in 1u64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = BoxSubset::random(3, &mut rng).unwrap();
        let dom: Vec<SmallGaussian> = (0..3).map(|_| SmallGaussian::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2))).collect();
        let p = parse_poly("x^2+(1+i)x").unwrap();
        let spec = CorrelationSpec::new(p.clone(), dom.clone(), h, j);
        let fast = correlation(&a, &spec).unwrap();
        // reversed sequential sum over every (n, x, h)
        let hs: Vec<Vec<SmallGaussian>> = (0..j).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|t| gaussint::enumerate_box::<i64>(h).map(move |z| { let mut t = t.clone(); t.push(z); t }))
                .collect()
        });
        let mut sum = BigInt::from(0);
        for x in dom.iter().rev() {
            for t in hs.iter().rev() {
                let sigma = t.iter().fold(*x, |acc, z| &acc + z);
                let v = p.eval(&sigma.into()).to_small().unwrap();
                for n in gaussint::enumerate_box::<i64>(3).collect::<Vec<_>>().into_iter().rev() {
                    sum += a.scaled_balanced(&n) * a.scaled_balanced(&(n + v));
                }
            }
        }
        let den = BigInt::from(81 * 9) * BigInt::from(dom.len() as i64) * BigInt::from(h).pow(2 * j as u32);
        prop_assert_eq!(fast, BigRational::new(sum, den));
    }
}

#[test]
fn integer_roots_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let bits = rng.gen_range(1..=200);
        let mut n = BigInt::from(1u32) << (bits - 1);
        n += BigInt::from(rng.gen::<u64>()) * BigInt::from(rng.gen::<u64>());
        let k = rng.gen_range(1..=12);
        let r = integer_root_floor(&n, k).unwrap();
        assert!(num_traits::pow(r.clone(), k as usize) <= n);
        assert!(num_traits::pow(r + 1u32, k as usize) > n);
    }
}
