use gaussint::lab::{
    avoidance_check, balanced_moments, best_lattice, degree_lowering_step, density_on_lattice, dp_domain,
    expansion_identity_check, expansion_terms, final_bound, integer_root_floor, lattice_partition,
    max_avoiding_density, n_r, threshold_report, Magnitude,
};
use gaussint::{
    correlation, indicator_correlation, parse_poly, BoxSubset, CorrelationSpec, GIPolynomial, SearchMode, SmallGaussian,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(a: i64, b: i64) -> SmallGaussian {
    SmallGaussian::new(a, b)
}

fn p(src: &str) -> GIPolynomial {
    parse_poly(src).unwrap()
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn moments() {
    assert_eq!(balanced_moments(&BoxSubset::empty(4).unwrap()), (r(0, 1), r(0, 1)));
    assert_eq!(balanced_moments(&BoxSubset::full(4).unwrap()), (r(0, 1), r(0, 1)));
    let half = BoxSubset::new(2, &[s(1, 1), s(2, 2)]).unwrap();
    assert_eq!(balanced_moments(&half).1, r(1, 4));
}

#[test]
fn avoidance_examples() {
    let q = p("x^2");
    assert!(
        avoidance_check(&BoxSubset::new(2, &[s(1, 1), s(2, 2)]).unwrap(), &q)
            .unwrap()
            .avoids
    );
    let bad = avoidance_check(&BoxSubset::new(2, &[s(1, 1), s(2, 1)]).unwrap(), &q).unwrap();
    assert!(!bad.avoids);
    assert_eq!(bad.witness.unwrap().z, s(1, 0));
    assert!(
        avoidance_check(&BoxSubset::new(3, &[s(2, 3)]).unwrap(), &q)
            .unwrap()
            .avoids
    );
}

#[test]
fn extremal() {
    let q = p("x^2");
    let best = max_avoiding_density(2, &q, SearchMode::Exact).unwrap();
    assert_eq!(best.set.len(), 2);
    assert_eq!(best.set.density(), r(1, 2));
    // no value of norm at most 2(N−1)² is reachable by q = 100x
    let far = max_avoiding_density(3, &p("100x"), SearchMode::Exact).unwrap();
    assert_eq!(far.set.len(), 9);
    let greedy = max_avoiding_density(6, &q, SearchMode::Greedy).unwrap();
    assert!(!greedy.optimal);
    for z in gaussint::enumerate_box::<i64>(6) {
        if !greedy.set.contains(&z) {
            let mut pts = greedy.set.members().to_vec();
            pts.push(z);
            assert!(!avoidance_check(&BoxSubset::new(6, &pts).unwrap(), &q).unwrap().avoids);
        }
    }
    assert!(max_avoiding_density(5, &q, SearchMode::Exact).is_err());
}

#[test]
fn correlations() {
    let q = p("x^2");
    let spec = CorrelationSpec::new(q.clone(), vec![s(1, 0)], 1, 0);
    let one = BoxSubset::new(2, &[s(1, 1)]).unwrap();
    let c = correlation(&one, &spec).unwrap();
    // 4f = 3 at 1+i, −1 elsewhere in [2], 0 outside; only (1+i, 2+i) and (1+2i, 2+2i) contribute
    assert_eq!(c, r(-3 + 1, 16 * 4));
    for a in [BoxSubset::full(3).unwrap(), BoxSubset::empty(3).unwrap()] {
        assert!(correlation(&a, &spec).unwrap().is_zero());
        let t = expansion_terms(&a, &spec).unwrap();
        assert!(t.holds);
    }
    assert!(indicator_correlation(&BoxSubset::empty(3).unwrap(), &spec)
        .unwrap()
        .is_zero());
    assert!(indicator_correlation(&BoxSubset::full(3).unwrap(), &spec).unwrap() > BigRational::zero());
    assert!(correlation(&one, &CorrelationSpec::new(q, vec![], 1, 0)).is_err());
}

#[test]
fn expansion_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for j in 0..=2 {
        let a = BoxSubset::random(3, &mut rng).unwrap();
        let spec = CorrelationSpec::new(p("x^2"), vec![s(1, 0), s(0, 1), s(1, 1)], 2, j);
        assert!(expansion_identity_check(&a, &spec).unwrap());
    }
}

#[test]
fn dp_domains() {
    let q = p("x^2");
    let dp = dp_domain(16, &q).unwrap();
    assert_eq!((dp.side, dp.offset), (2, 2));
    assert_eq!(dp.points, vec![s(3, 3), s(4, 3), s(3, 4), s(4, 4)]);
    assert_eq!(dp_domain(1, &q).unwrap().side, 1);
    let a = BoxSubset::new(3, &[s(1, 1), s(2, 2)]).unwrap();
    let spec = CorrelationSpec::new(q.clone(), dp_domain(3, &q).unwrap().points, 1, 1);
    assert!(indicator_correlation(&a, &spec).unwrap().is_zero());
}

#[test]
fn integer_roots() {
    let b = |x: u64| BigInt::from(x);
    assert_eq!(integer_root_floor(&b(16), 4).unwrap(), b(2));
    assert_eq!(integer_root_floor(&b(1_000_000), 2).unwrap(), b(1000));
    let n = b(u64::MAX);
    let r = integer_root_floor(&n, 8).unwrap();
    assert!(num_traits::pow(r.clone(), 8) <= n && num_traits::pow(r + 1u32, 8) > n);
}

#[test]
fn partitions() {
    let grid = lattice_partition(6, &s(1, 0), 2).unwrap();
    assert!(grid.error_set.is_empty() && grid.exact_cover);
    let tilted = lattice_partition(8, &s(1, 1), 2).unwrap();
    assert!(tilted.exact_cover && tilted.error_bound_holds);
    let mut seen = std::collections::HashMap::new();
    for c in &tilted.cells {
        for z in tilted.cell_points(c) {
            *seen.entry(z).or_insert(0) += 1;
        }
    }
    for z in &tilted.error_set {
        *seen.entry(*z).or_insert(0) += 1;
    }
    assert_eq!(seen.len(), 64);
    assert!(seen.values().all(|&k| k == 1));
    assert!(lattice_partition(4, &s(0, 0), 2).is_err());
}

#[test]
fn lattice_densities() {
    let full = BoxSubset::full(4).unwrap();
    assert_eq!(
        density_on_lattice(&full, &s(-1, -1), &s(2, 0), 2).unwrap(),
        BigRational::one()
    );
    assert!(density_on_lattice(&BoxSubset::empty(4).unwrap(), &s(0, 0), &s(1, 0), 2)
        .unwrap()
        .is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let a = BoxSubset::random(4, &mut rng).unwrap();
    let best = best_lattice(&a, 2).unwrap().unwrap();
    assert!(best.density <= BigRational::one());
    // splitting [4] into four copies of 2·[2] + u averages to the density of A
    let mut sum = BigRational::zero();
    for u in [s(-1, -1), s(0, -1), s(-1, 0), s(0, 0)] {
        sum += density_on_lattice(&a, &u, &s(2, 0), 2).unwrap();
    }
    assert_eq!(sum / BigRational::from_integer(4.into()), a.density());
}

#[test]
fn degree_lowering_mechanism() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = BoxSubset::random(3, &mut rng).unwrap();
    let dom = vec![s(1, 0), s(0, 1)];
    let step = degree_lowering_step(&a, &p("x^2"), &dom, 2).unwrap();
    assert_eq!(step.j, 0);
    let mut max = BigRational::zero();
    for k in gaussint::enumerate_box::<i64>(2) {
        for k2 in gaussint::enumerate_box::<i64>(2) {
            if k == k2 {
                continue;
            }
            let pp = gaussint::degree_lower_diff(&p("x^2"), &k.into(), &k2.into()).unwrap();
            let c = correlation(&a, &CorrelationSpec::new(pp, dom.clone(), 2, 0)).unwrap();
            let abs = if c < BigRational::zero() { -c } else { c };
            if abs > max {
                max = abs;
            }
        }
    }
    let got = if step.correlation < BigRational::zero() {
        -step.correlation.clone()
    } else {
        step.correlation.clone()
    };
    assert_eq!(got, max);
}

#[test]
fn thresholds() {
    let rep = threshold_report(2, 4, &r(1, 2), &BigInt::from(4)).unwrap();
    assert_eq!(rep.c, r(1, 512));
    assert_eq!(rep.big_c, 3);
    assert_eq!(rep.epsilon, r(1, 3));
    assert!(rep.t.is_some());
    let lo = n_r(2, 4, &r(1, 4), &BigInt::from(4)).unwrap();
    let hi = n_r(2, 4, &r(3, 4), &BigInt::from(4)).unwrap();
    assert_ne!(hi.value.cmp_known(&lo.value), Some(std::cmp::Ordering::Greater));
    assert!(matches!(Magnitude::exact(BigInt::from(5)), Magnitude::Exact { .. }));
    let b16 = final_bound(2, &BigInt::from(4), &BigInt::from(16)).unwrap();
    let b_big = final_bound(2, &BigInt::from(4), &BigInt::from(10).pow(40)).unwrap();
    assert!(b16.lower <= b16.upper);
    assert!(b_big.upper < b16.lower);
    assert!(final_bound(2, &BigInt::from(4), &BigInt::from(15)).is_err());
}
