//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use gaussint::intersective::Verdict;
use gaussint::suites::{run_suite, SuiteConfig, SuiteReport, SUITES};
use gaussint::{
    decide_intersective, enumerate_box, max_avoiding_density, parse_poly, threshold_report, Effort, SearchMode,
    SmallGaussian,
};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Line {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn suite(name: &str) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let rep = run_suite(name, &SuiteConfig::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
    (rep, start.elapsed())
}

fn counts(rep: &SuiteReport) -> String {
    format!("{}/{} cases", rep.passed, rep.passed + rep.failed)
}

/// Size of the largest subset of [2] whose differences avoid the nonzero squares,
/// by trying all 16 subsets.
fn largest_square_free_subset_of_box2() -> usize {
    let pts: Vec<SmallGaussian> = enumerate_box::<i64>(2).collect();
    let is_square =
        |d: &SmallGaussian| (-2i64..=2).any(|a| (-2i64..=2).any(|b| a * a - b * b == d.re && 2 * a * b == d.im));
    (0u32..16)
        .filter(|mask| {
            let chosen: Vec<&SmallGaussian> = (0..4).filter(|k| mask >> k & 1 == 1).map(|k| &pts[k]).collect();
            chosen
                .iter()
                .all(|a| chosen.iter().all(|b| a == b || !is_square(&(*a - *b))))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

fn main() {
    let secs = Duration::from_secs;
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    let mut run = |id, name, key: &'static str, limit, extra: &dyn Fn() -> Result<String, String>| {
        let (rep, elapsed) = suite(key);
        let (ok_extra, note) = match extra() {
            Ok(s) => (true, s),
            Err(s) => (false, s),
        };
        let ok = rep.all_passed() && ok_extra;
        let mut detail = counts(&rep);
        if !note.is_empty() {
            detail = format!("{detail}; {note}");
        }
        lines.push(Line {
            id,
            name,
            ok,
            detail,
            elapsed,
            limit,
        });
        reports.push((key, rep));
    };
    let none = || Ok(String::new());

    run(1, "balanced-function laws", "balanced", secs(5), &none);
    run(2, "expansion identity", "expansion-identity", secs(60), &none);
    run(
        3,
        "avoidance gives zero indicator correlation",
        "avoidance-zero",
        secs(60),
        &none,
    );
    run(4, "extremal micro-result", "extremal", secs(1), &|| {
        let best =
            max_avoiding_density(2, &parse_poly("x^2").unwrap(), SearchMode::Exact).map_err(|e| e.to_string())?;
        let oracle = largest_square_free_subset_of_box2();
        let density = best.set.density();
        if best.set.len() == 2 && oracle == 2 && density == BigRational::new(1.into(), 2.into()) {
            Ok("x^2 at N=2: size 2, density 1/2, oracle 2".into())
        } else {
            Err(format!("x^2 at N=2: size {}, oracle {oracle}", best.set.len()))
        }
    });
    run(5, "intersectivity corpus", "intersective-corpus", secs(120), &|| {
        let effort = Effort::default();
        let verdict = |s: &str| decide_intersective(&parse_poly(s).unwrap(), &effort).map_err(|e| e.to_string());
        let sq = verdict("x^2")?;
        let sq1 = verdict("x^2+1")?;
        let cyc = verdict("x^2+x+1")?;
        let norm2 = cyc
            .counterexample
            .as_ref()
            .map(|c| c.modulus.norm() == BigInt::from(2))
            .unwrap_or(false);
        if sq.verdict == Verdict::Intersective
            && sq1.verdict == Verdict::Intersective
            && cyc.verdict == Verdict::NotIntersective
            && norm2
        {
            Ok("x^2, x^2+1 intersective; x^2+x+1 fails modulo a norm-2 ideal".into())
        } else {
            Err(format!("verdicts {:?} {:?} {:?}", sq.verdict, sq1.verdict, cyc.verdict))
        }
    });
    run(6, "auxiliary construction", "aux-construction", secs(10), &none);
    run(7, "transfer of avoidance", "lucier-transfer", secs(60), &none);
    run(8, "degree-lowering identity", "degree-lowering", secs(10), &none);
    run(9, "lattice partition", "partition", secs(120), &none);
    run(10, "threshold arithmetic", "thresholds", secs(5), &|| {
        let rep = threshold_report(2, 4, &BigRational::new(1.into(), 2.into()), &BigInt::from(4))
            .map_err(|e| e.to_string())?;
        let formula = BigRational::new(1.into(), BigInt::from(2).pow(3 * 2 + 3));
        let third = BigRational::new(1.into(), 3.into());
        if rep.c == formula && rep.big_c == 3 && rep.epsilon == third {
            Ok("d=2: c = 2^-(3*2^(d-1)+3) = 1/512, C = 3, eps = 1/3".into())
        } else {
            Err(format!("d=2: c = {}, C = {}, eps = {}", rep.c, rep.big_c, rep.epsilon))
        }
    });
    run(11, "nonvanishing beyond M_p", "cauchy", secs(60), &none);

    let start = Instant::now();
    let mut diverged = Vec::new();
    for (key, first) in &reports {
        let (again, _) = suite(key);
        if again.to_jsonl() != first.to_jsonl() {
            diverged.push(*key);
        }
    }
    let covered = reports.len() == SUITES.len();
    lines.push(Line {
        id: 12,
        name: "determinism",
        ok: diverged.is_empty() && covered,
        detail: if diverged.is_empty() {
            format!("{} suites byte-identical on re-run", reports.len())
        } else {
            format!("differs: {}", diverged.join(", "))
        },
        elapsed: start.elapsed(),
        limit: lines.iter().map(|l| l.limit).sum(),
    });

    let mut failed = 0;
    for l in &lines {
        let in_time = l.elapsed <= l.limit;
        let ok = l.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {}: {} [{:.2}s, limit {}s{}]",
            l.id,
            if ok { "PASS" } else { "FAIL" },
            l.name,
            l.detail,
            l.elapsed.as_secs_f64(),
            l.limit.as_secs(),
            if in_time { "" } else { ", over time" },
        );
    }
    println!("acceptance: {} passed, {} failed", lines.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
