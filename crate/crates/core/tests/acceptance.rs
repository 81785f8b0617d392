//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion
//! fails.

mod common;

use std::time::{Duration, Instant};

use fitt::groebner::Ideal;
use fitt::kaehler::kaehler_fitting;
use fitt::rees::{rees_presentation, target_ideal, ReesParams};
use fitt::verify::{
    check_corollary42, check_image_equals_center, check_nonnormal, check_theorem41, default_grid, props,
    FittingIndexPolicy, Status,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(p: u64, n: usize, s: usize, l: usize, v: &[u32]) -> ReesParams {
    ReesParams::new(p, n, s, l, v.to_vec()).expect("valid parameters")
}

fn full_grid() -> Vec<ReesParams> {
    [2, 3].into_iter().flat_map(default_grid).collect()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:.0?}"))
    }
}

fn theorem_grid() -> Outcome {
    let start = Instant::now();
    let grid = full_grid();
    for pr in &grid {
        let t = Instant::now();
        let rep = check_theorem41(pr, FittingIndexPolicy::Corrected).map_err(|e| format!("{pr}: {e}"))?;
        if !rep.charts.iter().all(|c| c.equal) {
            return Err(format!("{pr}: unequal chart in {:?}", rep.charts));
        }
        if !rep.micali_ok {
            return Err(format!("{pr}: binomials do not generate the kernel"));
        }
        within(t.elapsed(), Duration::from_secs(30), &pr.to_string())?;
    }
    within(start.elapsed(), Duration::from_secs(300), "grid")?;
    Ok(format!("{} tuples, all charts equal, kernel = binomials", grid.len()))
}

fn index_discrepancy() -> Outcome {
    let pr = params(2, 3, 2, 2, &[2, 1]);
    let paper = check_theorem41(&pr, FittingIndexPolicy::Paper).map_err(|e| e.to_string())?;
    let corrected = check_theorem41(&pr, FittingIndexPolicy::Corrected).map_err(|e| e.to_string())?;
    if (paper.index_used, paper.status) != (6, Status::Fail) {
        return Err(format!("paper policy: index {} status {:?}", paper.index_used, paper.status));
    }
    if (corrected.index_used, corrected.status) != (4, Status::Pass) {
        return Err(format!("corrected policy: index {} status {:?}", corrected.index_used, corrected.status));
    }
    let rees = rees_presentation(&pr).map_err(|e| e.to_string())?;
    let fitt = kaehler_fitting(&rees, 4);
    let hand = Ideal::parse(rees.ring(), "T2, x3, x2^2, x2^2*T3 - x3*T2").map_err(|e| e.to_string())?;
    let target = target_ideal(&pr).map_err(|e| e.to_string())?;
    if !(fitt.equals(&hand) && fitt.equals(&target)) {
        return Err(format!("Fitt_4 = {fitt} differs from (T2, x3, x2^2) + J"));
    }
    Ok("paper index 6 fails, corrected index 4 passes with Fitt_4 = (T2, x3, x2^2) + J".into())
}

fn negative_control() -> Outcome {
    let pr = params(2, 3, 1, 2, &[2, 2, 1]);
    let run = |i: i64| check_theorem41(&pr, FittingIndexPolicy::Explicit(i)).map_err(|e| e.to_string());
    for bad in [4, 6] {
        let rep = run(bad)?;
        if rep.charts.iter().all(|c| c.equal) {
            return Err(format!("index {bad}: every chart equal"));
        }
    }
    let good = run(5)?;
    if good.status != Status::Pass {
        return Err(format!("index 5: {:?}", good.charts));
    }
    Ok("indices 4 and 6 each break a chart, index 5 passes".into())
}

fn corollary_and_image() -> Outcome {
    let grid = full_grid();
    for pr in &grid {
        let t = Instant::now();
        let cor = check_corollary42(pr, FittingIndexPolicy::Corrected).map_err(|e| format!("{pr}: {e}"))?;
        let image = check_image_equals_center(pr, FittingIndexPolicy::Corrected).map_err(|e| format!("{pr}: {e}"))?;
        if !cor {
            return Err(format!("{pr}: chart Fitting ideal differs from the expected form"));
        }
        if !image {
            return Err(format!("{pr}: image of the chart loci differs from the center"));
        }
        within(t.elapsed(), Duration::from_secs(60), &pr.to_string())?;
    }
    Ok(format!("{} tuples, chart forms and image = center", grid.len()))
}

fn nonnormal() -> Outcome {
    let start = Instant::now();
    for p in [2, 3] {
        let rep = check_nonnormal(p).map_err(|e| e.to_string())?;
        if !rep.sanity {
            return Err(format!("p={p}: sanity membership failed"));
        }
        if !rep.non_normal() {
            return Err(format!("p={p}: {rep:?}"));
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "non-normality")?;
    Ok("p = 2, 3 non-normal; sanity membership holds".into())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let summary = props::run_props(&props::PropsConfig::default());
    let need = [("groebner", 200), ("fitting", 100), ("derivative", 200)];
    for (name, min) in need {
        if summary.cases(name) < min {
            return Err(format!("{name}: {} cases, need {min}", summary.cases(name)));
        }
    }
    if !summary.ok() {
        let failures: Vec<&String> = summary.suites.iter().flat_map(|s| &s.failures).collect();
        return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
    }
    within(start.elapsed(), Duration::from_secs(120), "property suites")?;
    let counts: Vec<String> = summary.suites.iter().map(|s| format!("{} {}", s.name, s.cases)).collect();
    Ok(format!("seed {:#x}: {}, zero failures", summary.seed, counts.join(", ")))
}

fn determinism() -> Outcome {
    for case in common::CASES {
        let (c1, first) = common::run_cli(case.args);
        let (c2, second) = common::run_cli(case.args);
        if first != second || c1 != c2 {
            return Err(format!("{}: two runs differ", case.name));
        }
        if c1 != case.exit {
            return Err(format!("{}: exit code {c1}, expected {}", case.name, case.exit));
        }
        let golden = std::fs::read(common::golden_path(case)).map_err(|e| format!("{}: {e}", case.name))?;
        if golden != first {
            return Err(format!("{}: output differs from golden file", case.name));
        }
    }
    Ok(format!("{} golden files byte-identical across two runs", common::CASES.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 theorem grid", theorem_grid),
        ("2 index discrepancy", index_discrepancy),
        ("3 negative control", negative_control),
        ("4 chart corollary and image", corollary_and_image),
        ("5 non-normal chart", nonnormal),
        ("6 property suites", property_suites),
        ("7 CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
