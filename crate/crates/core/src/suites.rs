//! Seeded batch suites. Each suite produces one JSON record per case and a
//! summary with pass/fail counts.
//!
//! Case `i` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64(s)`
//! on stream `i`, so cases are independent of each other and of the order
//! in which they are evaluated. Records are emitted in case order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gaussian::{enumerate_box, ResidueSquare, ShiftedBox};
use crate::intersective::{decide_intersective, AuxiliaryBuilder, AuxiliaryConstruction, Effort, Verdict};
use crate::json::rational_value;
use crate::lab::{
    avoidance_check, avoidance_witness, balanced_laws, dp_domain, expansion_terms, indicator_correlation,
    lattice_partition, max_avoiding_density_with_limit, n_r, t_exact, BoxSubset, CorrelationSpec, SearchMode,
    DEFAULT_EXACT_LIMIT,
};
use crate::poly::{degree_lower_diff, Nonvanishing};
use crate::{parse_gaussian, parse_poly, GIPolynomial, GaussianInt, SmallGaussian};

/// Every suite name, without the `suite:` prefix.
pub const SUITES: &[&str] = &[
    "balanced",
    "expansion-identity",
    "avoidance-zero",
    "extremal",
    "intersective-corpus",
    "aux-construction",
    "lucier-transfer",
    "degree-lowering",
    "partition",
    "thresholds",
    "cauchy",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// `None` runs the suite's default number of cases. Exhaustive suites
    /// are truncated to the first `cases` cases.
    pub cases: Option<usize>,
    pub effort: Effort,
    pub exact_limit: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: None,
            effort: Effort::default(),
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<Value>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, records: Vec<Value>) -> Self {
        let passed = records.iter().filter(|r| r["pass"] == Value::Bool(true)).count();
        let failed = records.len() - passed;
        SuiteReport {
            suite: suite.to_string(),
            seed,
            records,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.records.len(),
            "passed": self.passed,
            "failed": self.failed,
            "pass": self.all_passed(),
        })
    }

    /// One record per line, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&json!({ "summary": self.summary() }).to_string());
        out.push('\n');
        out
    }
}

/// Run a suite by name; `suite:` prefixes are accepted.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let name = name.strip_prefix("suite:").unwrap_or(name);
    let records = match name {
        "balanced" => seeded(cfg, 200, balanced_case),
        "expansion-identity" => seeded(cfg, 500, expansion_case),
        "avoidance-zero" => truncate(cfg, avoidance_zero()?),
        "extremal" => truncate(cfg, extremal(cfg.exact_limit)?),
        "intersective-corpus" => intersective_corpus(cfg)?,
        "aux-construction" => truncate(cfg, aux_construction()?),
        "lucier-transfer" => lucier(cfg)?,
        "degree-lowering" => seeded(cfg, 1000, degree_lowering_case),
        "partition" => partition(cfg)?,
        "thresholds" => truncate(cfg, thresholds()?),
        "cauchy" => seeded(cfg, 100, cauchy_case),
        _ => {
            return Err(Error::Domain(format!(
                "unknown suite `{name}`; known: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport::new(name, cfg.seed, records))
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn seeded(cfg: &SuiteConfig, default: usize, f: fn(usize, &mut ChaCha8Rng) -> Value) -> Vec<Value> {
    let n = cfg.cases.unwrap_or(default);
    (0..n)
        .into_par_iter()
        .map(|i| f(i, &mut case_rng(cfg.seed, i)))
        .collect()
}

fn truncate(cfg: &SuiteConfig, mut records: Vec<Value>) -> Vec<Value> {
    if let Some(n) = cfg.cases {
        records.truncate(n);
    }
    records
}

fn failure(case: usize, e: &Error) -> Value {
    json!({ "case": case, "pass": false, "error": e.to_string() })
}

fn sg(re: i64, im: i64) -> SmallGaussian {
    SmallGaussian::new(re, im)
}

fn random_gaussian<R: Rng>(rng: &mut R, max_norm: i64) -> SmallGaussian {
    let r = max_norm.sqrt();
    loop {
        let z = sg(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if z.norm() <= max_norm {
            return z;
        }
    }
}

/// Degree in `lo..=hi`, coefficient norms at most `max_norm`.
fn random_poly<R: Rng>(rng: &mut R, lo: usize, hi: usize, max_norm: i64) -> GIPolynomial {
    let d = rng.gen_range(lo..=hi);
    let mut coeffs: Vec<GaussianInt> = (0..=d).map(|_| random_gaussian(rng, max_norm).into()).collect();
    while coeffs[d].is_zero() {
        coeffs[d] = random_gaussian(rng, max_norm).into();
    }
    GIPolynomial::new(coeffs)
}

/// Whether `w = q(z)` for some `z`, by search over the disc `|z| ≤ 1 + max_j |c_j|`
/// that contains every root of `q − w` (Cauchy's bound, `|lead| ≥ 1`).
fn takes_value(q: &GIPolynomial, w: &GaussianInt) -> bool {
    let mut shifted = q.coeffs().to_vec();
    shifted[0] = &shifted[0] - w;
    let max = shifted.iter().map(|c| c.norm()).max().unwrap_or_default();
    let r: i64 = (max.sqrt() + 2u32).try_into().expect("small search radius");
    let r2 = BigInt::from(r * r);
    (-r..=r).any(|a| {
        (-r..=r).any(|b| {
            let z = GaussianInt::from_i64s(a, b);
            z.norm() <= r2 && &q.eval(&z) == w
        })
    })
}

fn avoids_by_search(points: &[SmallGaussian], q: &GIPolynomial) -> bool {
    points.iter().all(|a| {
        points
            .iter()
            .all(|b| a == b || !takes_value(q, &GaussianInt::from(a - b)))
    })
}

fn balanced_case(case: usize, rng: &mut ChaCha8Rng) -> Value {
    let n = rng.gen_range(1..=8);
    let a = BoxSubset::random(n, rng).expect("valid side");
    let laws = balanced_laws(&a);
    json!({
        "case": case,
        "N": n,
        "size": a.len(),
        "density": rational_value(&a.density()),
        "laws": laws,
        "pass": laws.all(),
    })
}

fn expansion_case(case: usize, rng: &mut ChaCha8Rng) -> Value {
    let n = rng.gen_range(1..=4);
    let a = BoxSubset::random(n, rng).expect("valid side");
    let p = random_poly(rng, 2, 2, 9);
    let side = rng.gen_range(1..=2);
    let offset = random_gaussian(rng, 8);
    let domain: Vec<SmallGaussian> = ShiftedBox::new(side, offset).iter().collect();
    let h_side = rng.gen_range(1..=2);
    let j = rng.gen_range(0..=2);
    let spec = CorrelationSpec::new(p, domain, h_side, j);
    match expansion_terms(&a, &spec) {
        Ok(t) => json!({
            "case": case,
            "N": n,
            "set": a.members(),
            "p": spec.p.to_string(),
            "domain_offset": offset,
            "domain_side": side,
            "h_side": h_side,
            "j": j,
            "terms": t,
            "pass": t.holds,
        }),
        Err(e) => failure(case, &e),
    }
}

/// All subsets of `[2]` and `[3]` avoiding `I(x²)`: the indicator
/// correlation over `D_p(N)`, and over a disc of nonzero values of `q`,
/// vanishes.
fn avoidance_zero() -> Result<Vec<Value>> {
    let q = parse_poly("x^2")?;
    let disc: Vec<SmallGaussian> = ShiftedBox::new(5, sg(-3, -3))
        .iter()
        .filter(|z: &SmallGaussian| z.re != 0 || z.im != 0)
        .collect();
    let mut out = Vec::new();
    for n in [2u64, 3] {
        let dp = dp_domain(n, &q)?;
        let specs = [
            ("dp", CorrelationSpec::new(q.clone(), dp.points.clone(), 1, 0)),
            ("dp", CorrelationSpec::new(q.clone(), dp.points.clone(), 1, 1)),
            ("disc", CorrelationSpec::new(q.clone(), disc.clone(), 1, 0)),
        ];
        let sets: Vec<BoxSubset> = (0u128..1 << (n * n))
            .map(|bits| BoxSubset::from_bits(n, bits))
            .collect::<Result<_>>()?;
        let rows: Vec<Value> = sets
            .par_iter()
            .filter(|a| avoids_by_search(a.members(), &q))
            .map(|a| {
                let report = avoidance_check(a, &q)?;
                let mut values = Vec::new();
                let mut zero = true;
                for (name, spec) in &specs {
                    let c = indicator_correlation(a, spec)?;
                    zero &= c.is_zero();
                    values.push(json!({ "domain": name, "j": spec.j, "value": rational_value(&c) }));
                }
                Ok(json!({
                    "N": n,
                    "set": a.members(),
                    "library_avoids": report.avoids,
                    "correlations": values,
                    "pass": report.avoids && zero,
                }))
            })
            .collect::<Result<_>>()?;
        out.extend(rows);
    }
    Ok(number(out))
}

fn number(rows: Vec<Value>) -> Vec<Value> {
    rows.into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r["case"] = json!(i);
            r
        })
        .collect()
}

/// Exact extremal sets against the all-subsets oracle.
fn extremal(limit: u64) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for src in ["x^2", "x^2+1", "x", "x^3"] {
        let q = parse_poly(src)?;
        for n in 1..=3u64.min(limit) {
            let found = max_avoiding_density_with_limit(n, &q, SearchMode::Exact, limit)?;
            let best = (0u128..1 << (n * n))
                .into_par_iter()
                .map(|bits| BoxSubset::from_bits(n, bits).expect("small box"))
                .filter(|a| avoids_by_search(a.members(), &q))
                .map(|a| a.len())
                .max()
                .unwrap_or(0);
            let pass = found.optimal && found.set.len() == best && avoids_by_search(found.set.members(), &q);
            out.push(json!({
                "q": src,
                "N": n,
                "size": found.set.len(),
                "density": rational_value(&found.set.density()),
                "oracle_size": best,
                "set": found.set.members(),
                "pass": pass,
            }));
        }
    }
    Ok(number(out))
}

const CORPUS: [&str; 30] = [
    "x^2",
    "x^2+1",
    "x^2+x+1",
    "x",
    "x-(1+i)",
    "x^3",
    "x(x-(1+i))",
    "x^2(x-3)",
    "x^2-2",
    "(x^2-2)(x^2+1)",
    "(x^2-13)(x^2-17)(x^2-221)",
    "2x-1",
    "3x+1",
    "x^2+2",
    "x^2-x",
    "(x-2)(x-3)",
    "x^4-1",
    "x^3-2",
    "(x^2+1)^2",
    "x^2+(1+i)x+i",
    "(2x-1)(3x-1)",
    "(1+i)x-2",
    "ix^2+1",
    "x^2-i",
    "x^5",
    "x^3-x",
    "5x^2-1",
    "x^2+4",
    "(3x-1)^2(x+i)",
    "x^2-5",
];

/// Whether `q` has a root modulo `α`, by enumeration of `S_α` with machine
/// arithmetic reduced at every Horner step.
fn has_root_mod(coeffs: &[SmallGaussian], alpha: &SmallGaussian) -> bool {
    let sq = ResidueSquare::new(*alpha).expect("nonzero");
    let reduced: Vec<SmallGaussian> = coeffs.iter().map(|c| sq.reduce(c)).collect();
    sq.elements().iter().any(|s| {
        let mut acc = sg(0, 0);
        for c in reduced.iter().rev() {
            acc = sq.reduce(&(&(&acc * s) + c));
        }
        sq.reduce(&acc) == sq.reduce(&sg(0, 0))
    })
}

/// Canonical generators of the ideals of norm at most `bound`.
fn ideals_up_to(bound: i64) -> Vec<SmallGaussian> {
    let r = bound.sqrt() + 1;
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 0..=r {
            let z = sg(a, b);
            if z.norm() <= bound {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.im, z.re));
    out
}

fn intersective_corpus(cfg: &SuiteConfig) -> Result<Vec<Value>> {
    let n = cfg.cases.unwrap_or(CORPUS.len()).min(CORPUS.len());
    let ideals = ideals_up_to(1000);
    CORPUS[..n]
        .par_iter()
        .enumerate()
        .map(|(case, src)| {
            let q = parse_poly(src)?;
            let v = decide_intersective(&q, &cfg.effort)?;
            let certificate = v.verify()?;
            let small: Option<Vec<SmallGaussian>> = q.coeffs().iter().map(|c| c.to_small()).collect();
            let small = small.ok_or_else(|| Error::Limit("corpus coefficients must fit i64".into()))?;
            let mut rec = json!({
                "case": case,
                "q": src,
                "verdict": v.verdict,
                "certificate_checks": certificate,
                "note": v.note,
            });
            let pass = match v.verdict {
                Verdict::Intersective => {
                    let missing: Vec<&SmallGaussian> = ideals.iter().filter(|a| !has_root_mod(&small, a)).collect();
                    rec["ideals_swept"] = json!(ideals.len());
                    rec["ideals_without_root"] = json!(missing);
                    certificate && missing.is_empty()
                }
                Verdict::NotIntersective => {
                    let c = v.counterexample.as_ref().expect("counterexample");
                    let m = c
                        .modulus
                        .to_small()
                        .ok_or_else(|| Error::Limit("modulus too large".into()))?;
                    let none = !has_root_mod(&small, &m);
                    rec["modulus"] = json!(c.modulus);
                    rec["modulus_has_no_root"] = json!(none);
                    certificate && none
                }
                Verdict::Inconclusive => certificate,
            };
            rec["pass"] = json!(pass);
            Ok(rec)
        })
        .collect()
}

const AUX_ALPHAS: [&str; 4] = ["2", "1+i", "3", "2+i"];

fn aux_constructions() -> Result<Vec<AuxiliaryConstruction>> {
    let q = parse_poly("x^2")?;
    let b = AuxiliaryBuilder::new(&q, &Effort::default())?;
    AUX_ALPHAS.iter().map(|a| b.build(&parse_gaussian(a)?)).collect()
}

/// Independent re-check of the construction for `q = x²`.
fn aux_construction() -> Result<Vec<Value>> {
    let mut out = Vec::new();
    let closed_form = parse_poly("(x+1+i)^2")?;
    for (case, aux) in aux_constructions()?.into_iter().enumerate() {
        let d = aux.q.degree()?;
        let n_alpha = aux.alpha.norm();
        let identity = (-3..=3).all(|a| {
            (-3..=3).all(|b| {
                let x = GaussianInt::from_i64s(a, b);
                &aux.gamma * &aux.q_a.eval(&x) == aux.q.eval(&(&aux.r_a + &(&aux.alpha * &x)))
            })
        }) && aux.q_a.degree()? == d;
        let r_bound = aux.r_a.norm() <= &n_alpha * 4u32;
        let divides = aux.gamma.div_exact(&aux.alpha).is_some();
        let gamma_bound = aux.gamma.norm() <= num_traits::pow(n_alpha.clone(), d);
        let max_norm = |p: &GIPolynomial| p.coeffs().iter().map(|c| c.norm()).max().unwrap_or_default();
        // M² = 4·max N(a_j) on both sides
        let m_bound = max_norm(&aux.q_a) * 4u32
            <= BigInt::from(1u32 << (4 * d)) * num_traits::pow(n_alpha.clone(), d - 1) * max_norm(&aux.q) * 4u32;
        let closed = aux.alpha != GaussianInt::from_i64s(2, 0) || aux.q_a == closed_form;
        let pass = identity && r_bound && divides && gamma_bound && m_bound && closed && aux.verify()?;
        out.push(json!({
            "case": case,
            "q": aux.q.to_string(),
            "alpha": aux.alpha,
            "r_a": aux.r_a,
            "gamma": aux.gamma,
            "q_a": aux.q_a.to_string(),
            "identity": identity,
            "r_a_bound": r_bound,
            "alpha_divides_gamma": divides,
            "gamma_bound": gamma_bound,
            "m_bound": m_bound,
            "closed_form": closed,
            "pass": pass,
        }));
    }
    Ok(out)
}

/// A random maximal subset of `[N]` avoiding `I(q)`, grown in random order.
fn random_avoiding<R: Rng>(n: u64, q: &GIPolynomial, rng: &mut R) -> Result<Vec<SmallGaussian>> {
    let mut pts: Vec<SmallGaussian> = enumerate_box(n).collect();
    pts.shuffle(rng);
    let mut a: Vec<SmallGaussian> = Vec::new();
    for z in pts {
        a.push(z);
        if avoidance_witness(&a, q)?.is_some() {
            a.pop();
        }
    }
    a.sort_by_key(|z| (z.im, z.re));
    Ok(a)
}

fn lucier(cfg: &SuiteConfig) -> Result<Vec<Value>> {
    let auxes = aux_constructions()?;
    let q = parse_poly("x^2")?;
    let n = cfg.cases.unwrap_or(100);
    (0..n)
        .into_par_iter()
        .map(|case| {
            let rng = &mut case_rng(cfg.seed, case);
            let a = random_avoiding(4, &q, rng)?;
            let aux = &auxes[rng.gen_range(0..auxes.len())];
            // n ≡ a member of A modulo γ, so that A′ is not empty
            let anchor = GaussianInt::from(a[rng.gen_range(0..a.len())]);
            let w = GaussianInt::from(random_gaussian(rng, 2));
            let shift = &anchor - &(&aux.gamma * &w);
            let out = crate::intersective::lucier_transfer(&a, aux, &shift)?;
            let oracle = avoids_by_search(&out.a_prime, &aux.q_a);
            let pre = avoids_by_search(&a, &q);
            Ok(json!({
                "case": case,
                "set": a,
                "alpha": aux.alpha,
                "gamma": aux.gamma,
                "n": shift,
                "a_prime": out.a_prime,
                "precondition": out.precondition,
                "holds": out.holds,
                "pass": pre && out.precondition && out.holds && oracle,
            }))
        })
        .collect()
}

fn degree_lowering_case(case: usize, rng: &mut ChaCha8Rng) -> Value {
    let p = random_poly(rng, 1, 4, 100);
    let k = random_gaussian(rng, 50);
    let mut k2 = random_gaussian(rng, 50);
    while k2 == k {
        k2 = random_gaussian(rng, 50);
    }
    let sigma = GaussianInt::from(random_gaussian(rng, 200));
    let (k, k2) = (GaussianInt::from(k), GaussianInt::from(k2));
    match degree_lower_diff(&p, &k, &k2) {
        Ok(diff) => {
            let lhs = &p.eval(&(&sigma + &k2)) - &p.eval(&(&sigma + &k));
            let identity = lhs == diff.eval(&sigma);
            let drop = diff.degree().ok() == Some(p.degree().expect("nonzero") - 1);
            json!({
                "case": case,
                "p": p.to_string(),
                "k": k,
                "k_prime": k2,
                "sigma": sigma,
                "p_prime": diff.to_string(),
                "identity": identity,
                "degree_drops": drop,
                "pass": identity && drop,
            })
        }
        Err(e) => failure(case, &e),
    }
}

fn partition(cfg: &SuiteConfig) -> Result<Vec<Value>> {
    let xis: Vec<SmallGaussian> = (-3..=3)
        .flat_map(|b| (-3..=3).map(move |a| sg(a, b)))
        .filter(|z| z.norm() >= 1 && z.norm() <= 8)
        .collect();
    let mut grid = Vec::new();
    for m_box in 1..=12u64 {
        for xi in &xis {
            for m in 1..=3u64 {
                grid.push((m_box, *xi, m));
            }
        }
    }
    if let Some(n) = cfg.cases {
        grid.truncate(n);
    }
    grid.par_iter()
        .enumerate()
        .map(|(case, (m_box, xi, m))| {
            let p = lattice_partition(*m_box, xi, *m)?;
            let side = *m_box as i64;
            let mut count = vec![0u32; (side * side) as usize];
            let mut outside = false;
            let mut tally = |z: SmallGaussian| {
                if z.re < 1 || z.im < 1 || z.re > side || z.im > side {
                    outside = true;
                } else {
                    count[((z.im - 1) * side + z.re - 1) as usize] += 1;
                }
            };
            for c in &p.cells {
                for x in enumerate_box::<i64>(*m) {
                    tally(c.base + (xi * &x));
                }
            }
            for z in &p.error_set {
                tally(*z);
            }
            let cover = !outside && count.iter().all(|&c| c == 1);
            let e = p.error_set.len() as i128;
            let bound = e * e <= 256 * (side as i128).pow(2) * (*m as i128).pow(2) * xi.norm() as i128;
            Ok(json!({
                "case": case,
                "M": m_box,
                "xi": xi,
                "m": m,
                "cells": p.cells.len(),
                "error": p.error_set.len(),
                "exact_cover": cover,
                "error_bound": bound,
                "pass": cover && bound && p.exact_cover && p.error_bound_holds,
            }))
        })
        .collect()
}

fn thresholds() -> Result<Vec<Value>> {
    let rat = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let mut out = Vec::new();
    for d in [2u32, 3] {
        let h = 1i64 << (d - 1);
        let c = rat(1, 1i64 << (3 * h + 3));
        let big_c = h + 1;
        let report = crate::lab::threshold_report(d, 4, &rat(127, 128), &BigInt::from(4))?;
        let constants = report.c == c && report.big_c == big_c as u64 && report.epsilon == rat(1, big_c);
        // N_r is antitone in δ
        let deltas = [rat(1, 2), rat(3, 4), rat(7, 8), rat(127, 128)];
        let mut monotone = true;
        for w in deltas.windows(2) {
            let lo = n_r(d, 4, &w[0], &BigInt::from(4))?;
            let hi = n_r(d, 4, &w[1], &BigInt::from(4))?;
            monotone &= matches!(
                hi.value.cmp_known(&lo.value),
                Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal)
            );
        }
        // starting points close enough to 1 for exact iteration
        let starts = if d == 2 {
            [rat(127, 128), rat(255, 256), rat(511, 512)]
        } else {
            [rat(8191, 8192), rat(32767, 32768), rat(65535, 65536)]
        };
        for delta0 in starts {
            let te = t_exact(d, &delta0, 1 << 16)?;
            // independent iteration δ_{i+1} = δ_i + c·δ_i^C
            let mut cur = delta0.clone();
            let mut t = 0u64;
            let mut prev = cur.clone();
            while cur <= BigRational::one() {
                prev = cur.clone();
                cur = &cur + &c * num_traits::pow(cur.clone(), big_c as usize);
                t += 1;
            }
            let agrees = te
                .as_ref()
                .is_some_and(|te| te.t == t && te.before == prev && te.after == cur);
            let bracketed = prev <= BigRational::one() && cur > BigRational::one();
            out.push(json!({
                "d": d,
                "c": rational_value(&c),
                "C": big_c,
                "epsilon": rational_value(&report.epsilon),
                "delta0": rational_value(&delta0),
                "t": t,
                "constants": constants,
                "n_r_monotone": monotone,
                "t_exact_agrees": agrees,
                "pass": constants && monotone && agrees && bracketed,
            }));
        }
    }
    Ok(number(out))
}

fn cauchy_case(case: usize, rng: &mut ChaCha8Rng) -> Value {
    let p = random_poly(rng, 1, 4, 25);
    let mp2 = p.mp_squared().expect("nonzero");
    let mut c = mp2.sqrt();
    if &c * &c < mp2 {
        c += 1u32;
    }
    let c: i64 = c.try_into().expect("small");
    let outer = (c + 5) * (c + 5);
    let mut checked = 0usize;
    let mut roots = HashSet::new();
    let mut guaranteed = true;
    for a in -(c + 5)..=c + 5 {
        for b in -(c + 5)..=c + 5 {
            let z = GaussianInt::from_i64s(a, b);
            let n = z.norm();
            if n <= mp2 || n > BigInt::from(outer) {
                continue;
            }
            checked += 1;
            if p.eval(&z).is_zero() {
                roots.insert((a, b));
            }
            guaranteed &= matches!(p.nonvanishing_check(&z), Ok(Nonvanishing::GuaranteedNonzero));
        }
    }
    json!({
        "case": case,
        "p": p.to_string(),
        "mp_squared": mp2.to_string(),
        "points": checked,
        "roots_found": roots.len(),
        "pass": roots.is_empty() && guaranteed,
    })
}
