//! Checks of the Fitting-ideal description of the blow-up of a monomial
//! complete intersection in characteristic `p`, chart by chart.

mod report;
pub mod props;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fitmod::PresentedAlgebra;
use crate::groebner::Ideal;
use crate::kaehler::kaehler_fitting;
use crate::polyring::{CoefficientField, Polynomial, Ring};
use crate::rees::{
    chart_presentation, micali_kernel, rees_presentation, target_ideal, MonomialCi, ReesParams,
};

pub use report::{summary_table, ChartResult, PolicyKind, ReportParams, Status, VerificationReport};

/// Which Fitting index the global comparison uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FittingIndexPolicy {
    /// `n + s + l - 1`, the index as literally stated.
    Paper,
    /// `n + l - s + 1`, the index obtained by splitting off the free
    /// summands for `x_1..x_{s-1}`.
    #[default]
    Corrected,
    Explicit(i64),
}

impl FittingIndexPolicy {
    pub fn index(&self, params: &ReesParams) -> i64 {
        let (n, s, l) = (params.n as i64, params.s as i64, params.l as i64);
        match *self {
            FittingIndexPolicy::Paper => n + s + l - 1,
            FittingIndexPolicy::Corrected => n + l - s + 1,
            FittingIndexPolicy::Explicit(i) => i,
        }
    }

    /// The index on a chart, where one free summand has been split off.
    pub fn chart_index(&self, params: &ReesParams) -> i64 {
        self.index(params) - 1
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            FittingIndexPolicy::Paper => PolicyKind::Paper,
            FittingIndexPolicy::Corrected => PolicyKind::Corrected,
            FittingIndexPolicy::Explicit(_) => PolicyKind::Explicit,
        }
    }
}

impl fmt::Display for FittingIndexPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FittingIndexPolicy::Paper => f.write_str("paper"),
            FittingIndexPolicy::Corrected => f.write_str("corrected"),
            FittingIndexPolicy::Explicit(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for FittingIndexPolicy {
    type Err = Error;

    /// `paper`, `corrected`, or an integer index.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(FittingIndexPolicy::Paper),
            "corrected" => Ok(FittingIndexPolicy::Corrected),
            other => other
                .strip_prefix("explicit:")
                .unwrap_or(other)
                .parse()
                .map(FittingIndexPolicy::Explicit)
                .map_err(|_| Error::Validation(format!("unknown policy {other:?}: use paper, corrected or an integer"))),
        }
    }
}

fn t_var(ring: &Ring, i: usize) -> Polynomial {
    ring.var(&format!("T{i}")).expect("T variable present")
}

/// `Fitt_index(Ω¹)` of the Rees ring, compared with the target ideal after
/// inverting each `T_r`. Also checks that the binomials generate every
/// relation. The corollary and image fields are left unset.
pub fn check_theorem41(params: &ReesParams, policy: FittingIndexPolicy) -> Result<VerificationReport> {
    let rees = rees_presentation(params)?;
    let target = target_ideal(params)?;
    let index = policy.index(params);
    let fitt = kaehler_fitting(&rees, index);
    let mut charts = Vec::new();
    for r in params.s..=params.n {
        let start = Instant::now();
        let equal = fitt.localized_equal(&target, &t_var(rees.ring(), r))?;
        charts.push(ChartResult { r, equal, ms: start.elapsed().as_millis() as u64 });
    }
    let micali_ok = micali_kernel(params)?.equals(rees.relations());
    let mut report = VerificationReport {
        params: Some(params.into()),
        index_used: index,
        policy: policy.kind(),
        charts,
        micali_ok,
        corollary_ok: None,
        image_ok: None,
        status: Status::Pass,
        reason: None,
    };
    report.settle();
    Ok(report)
}

/// Chart Fitting ideal at the chart index.
fn chart_fitting(params: &ReesParams, policy: FittingIndexPolicy, r: usize) -> Result<(PresentedAlgebra, Ideal)> {
    let chart = chart_presentation(params, r)?;
    let fitt = kaehler_fitting(&chart.algebra, policy.chart_index(params));
    Ok((chart.algebra, fitt))
}

/// Expected chart Fitting ideal: the unit ideal for `r <= l`, otherwise
/// `(x_r, U_s..U_l)` plus the chart relations.
fn expected_chart_ideal(params: &ReesParams, r: usize, algebra: &PresentedAlgebra) -> Result<Ideal> {
    let ring = algebra.ring();
    if r <= params.l {
        return Ok(Ideal::unit(ring));
    }
    let mut gens = vec![ring.var(&format!("x{r}"))?];
    for i in params.s..=params.l {
        gens.push(ring.var(&format!("U{i}"))?);
    }
    algebra.relations().with_generators(gens)
}

/// Per-chart form of the corollary: `Fitt_{index-1}` of each chart is the
/// expected linear ideal.
pub fn check_corollary42(params: &ReesParams, policy: FittingIndexPolicy) -> Result<bool> {
    for r in params.s..=params.n {
        let (algebra, fitt) = chart_fitting(params, policy, r)?;
        if !fitt.equals(&expected_chart_ideal(params, r, &algebra)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The chart Fitting ideals for `r > l`, contracted to `k[x1..xn]` and
/// intersected, equal `𝔞`.
pub fn check_image_equals_center(params: &ReesParams, policy: FittingIndexPolicy) -> Result<bool> {
    params.validate()?;
    let ci = params.to_ci();
    let base = ci.base_ring();
    let mut image: Option<Ideal> = None;
    for r in params.l + 1..=params.n {
        let (_, fitt) = chart_fitting(params, policy, r)?;
        let contracted = fitt.contract(&base)?;
        image = Some(match image {
            None => contracted,
            Some(acc) => acc.intersect(&contracted)?,
        });
    }
    let image = image.unwrap_or_else(|| Ideal::unit(&base));
    Ok(image.equals(&ci.ideal_in(&base)))
}

/// Every check on one tuple. Validation problems become a skipped report.
pub fn verify_tuple(params: &ReesParams, policy: FittingIndexPolicy) -> VerificationReport {
    let run = || -> Result<VerificationReport> {
        let mut report = check_theorem41(params, policy)?;
        report.corollary_ok = Some(check_corollary42(params, policy)?);
        report.image_ok = Some(check_image_equals_center(params, policy)?);
        report.settle();
        Ok(report)
    };
    run().unwrap_or_else(|e| VerificationReport::skipped(Some(params.into()), policy.kind(), e.to_string()))
}

/// One grid row: parsed parameters or the reason they could not be read.
pub type GridEntry = (String, Result<ReesParams>);

/// Runs [`verify_tuple`] on each row, on `workers` threads (0 = one per
/// core). Reports come back in input order.
pub fn run_grid(grid: &[GridEntry], policy: FittingIndexPolicy, workers: usize) -> Vec<VerificationReport> {
    let one = |(line, parsed): &GridEntry| match parsed {
        Ok(p) => match p.validate() {
            Ok(()) => verify_tuple(p, policy),
            Err(e) => VerificationReport::skipped(Some(p.into()), policy.kind(), e.to_string()),
        },
        Err(e) => VerificationReport::skipped(None, policy.kind(), format!("{line:?}: {e}")),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
    match pool {
        Ok(pool) => pool.install(|| grid.par_iter().map(one).collect()),
        Err(_) => grid.iter().map(one).collect(),
    }
}

/// Outcome of the non-normality probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonNormalReport {
    pub p: u64,
    /// `x4^{p²} - U x3^p` lies in the chart relations.
    pub integral_witness: bool,
    /// `x4^p` is not in `(x3) + relations`.
    pub not_in_x3: bool,
    /// `x4^{p²}` lies in `(x3^p) + relations`.
    pub sanity: bool,
    /// The chart built by elimination agrees with the closed form.
    pub chart_matches: bool,
    /// Same answer without the free variables `x1, x2`.
    pub reduced_agrees: bool,
}

impl NonNormalReport {
    pub fn non_normal(&self) -> bool {
        self.integral_witness && self.not_in_x3 && self.sanity && self.chart_matches && self.reduced_agrees
    }
}

/// `(integral_witness, not_in_x3, sanity)` for `k[vars, U]/(U x3^p - x4^{p²})`.
fn probe_chart(p: u64, vars: &[&str]) -> Result<(bool, bool, bool, Ideal)> {
    let ring = Ring::new(CoefficientField::Prime(p), vars.iter().copied().chain(["U"]))?;
    let pp = p * p;
    let rel = Ideal::parse(&ring, &format!("U*x3^{p} - x4^{pp}"))?;
    let integral = rel.contains(&ring.parse(&format!("x4^{pp} - U*x3^{p}"))?);
    let not_in_x3 = !rel.with_generators([ring.var("x3")?])?.contains(&ring.parse(&format!("x4^{p}"))?);
    let sanity = rel.with_generators([ring.parse(&format!("x3^{p}"))?])?.contains(&ring.parse(&format!("x4^{pp}"))?);
    Ok((integral, not_in_x3, sanity, rel))
}

/// The chart at `x3^p T` of the blow-up of `(x3^p, x4^{p²})` in
/// `k[x1..x4]` is not normal: `x4^p / x3` is integral but not in it.
pub fn check_nonnormal(p: u64) -> Result<NonNormalReport> {
    if !crate::polyring::is_prime(p) {
        return Err(Error::Validation(format!("p = {p} is not prime")));
    }
    let (integral_witness, not_in_x3, sanity, rel) = probe_chart(p, &["x1", "x2", "x3", "x4"])?;

    let ci = MonomialCi::new(CoefficientField::Prime(p), 4, vec![(3, p as u32), (4, (p * p) as u32)])?;
    let chart = ci.chart_presentation(3)?;
    let renamed: Vec<Polynomial> =
        chart.algebra.ring().vars().iter().map(|v| rel.ring().var(if v == "U4" { "U" } else { v })).collect::<Result<_>>()?;
    let chart_matches = chart.algebra.relations().substitute(rel.ring(), &renamed)?.equals(&rel);

    let (a, b, c, _) = probe_chart(p, &["x3", "x4"])?;
    let reduced_agrees = (a, b, c) == (integral_witness, not_in_x3, sanity);
    Ok(NonNormalReport { p, integral_witness, not_in_x3, sanity, chart_matches, reduced_agrees })
}

/// The parameter tuples `(n, s, l, v)` of the standard grid for `p`.
pub fn default_grid(p: u64) -> Vec<ReesParams> {
    let q = p as u32;
    let rows: [(usize, usize, usize, Vec<u32>); 8] = [
        (2, 1, 1, vec![q, 1]),
        (3, 1, 1, vec![q, 1, 1]),
        (3, 1, 2, vec![q, q, 1]),
        (3, 1, 2, vec![q, q * q, 1]),
        (4, 1, 2, vec![q, q, 1, 1]),
        (4, 1, 3, vec![q, q, q, 1]),
        (3, 2, 2, vec![q, 1]),
        (4, 2, 3, vec![q, q, 1]),
    ];
    rows.into_iter().map(|(n, s, l, v)| ReesParams::new(p, n, s, l, v).expect("grid rows are valid")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: usize, s: usize, l: usize, v: &[u32]) -> ReesParams {
        ReesParams::new(p, n, s, l, v.to_vec()).unwrap()
    }

    #[test]
    fn policies() {
        let a = params(2, 3, 1, 2, &[2, 2, 1]);
        assert_eq!(FittingIndexPolicy::Paper.index(&a), 5);
        assert_eq!(FittingIndexPolicy::Corrected.index(&a), 5);
        let b = params(2, 3, 2, 2, &[2, 1]);
        assert_eq!(FittingIndexPolicy::Paper.index(&b), 6);
        assert_eq!(FittingIndexPolicy::Corrected.index(&b), 4);
        assert_eq!(FittingIndexPolicy::Corrected.chart_index(&b), 3);
        assert_eq!("paper".parse::<FittingIndexPolicy>().unwrap(), FittingIndexPolicy::Paper);
        assert_eq!("7".parse::<FittingIndexPolicy>().unwrap(), FittingIndexPolicy::Explicit(7));
        assert_eq!("explicit:7".parse::<FittingIndexPolicy>().unwrap(), FittingIndexPolicy::Explicit(7));
        assert!("sometimes".parse::<FittingIndexPolicy>().is_err());
        for p in [2, 3] {
            for g in default_grid(p).iter().filter(|g| g.s == 1) {
                assert_eq!(FittingIndexPolicy::Paper.index(g), FittingIndexPolicy::Corrected.index(g));
            }
        }
    }

    #[test]
    fn theorem_small_cases() {
        let rep = check_theorem41(&params(2, 2, 1, 1, &[2, 1]), FittingIndexPolicy::Corrected).unwrap();
        assert_eq!(rep.index_used, 3);
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.charts.len(), 2);

        let rep = check_theorem41(&params(2, 3, 1, 2, &[2, 2, 1]), FittingIndexPolicy::Corrected).unwrap();
        assert_eq!(rep.charts.iter().map(|c| c.r).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(rep.status, Status::Pass);
    }

    #[test]
    fn index_discrepancy() {
        let pr = params(2, 3, 2, 2, &[2, 1]);
        let paper = check_theorem41(&pr, FittingIndexPolicy::Paper).unwrap();
        assert_eq!((paper.index_used, paper.status), (6, Status::Fail));
        let corrected = check_theorem41(&pr, FittingIndexPolicy::Corrected).unwrap();
        assert_eq!((corrected.index_used, corrected.status), (4, Status::Pass));
        let rees = rees_presentation(&pr).unwrap();
        let fitt = kaehler_fitting(&rees, 4);
        assert!(fitt.equals(&target_ideal(&pr).unwrap()));
        assert!(kaehler_fitting(&rees, 6).is_unit());
    }

    #[test]
    fn corollary_and_image_small() {
        let pr = params(2, 2, 1, 1, &[2, 1]);
        let (algebra, fitt) = chart_fitting(&pr, FittingIndexPolicy::Corrected, 2).unwrap();
        assert!(fitt.equals(&Ideal::parse(algebra.ring(), "x2, U1, x1^2 - x2*U1").unwrap()));
        let (_, unit) = chart_fitting(&pr, FittingIndexPolicy::Corrected, 1).unwrap();
        assert!(unit.is_unit());
        assert!(check_corollary42(&pr, FittingIndexPolicy::Corrected).unwrap());
        assert!(check_image_equals_center(&pr, FittingIndexPolicy::Corrected).unwrap());

        let pr = params(3, 3, 1, 1, &[3, 1, 1]);
        let (algebra, fitt) = chart_fitting(&pr, FittingIndexPolicy::Corrected, 3).unwrap();
        assert!(fitt.equals(&algebra.relations().with_generators([algebra.ring().parse("x3").unwrap(), algebra.ring().parse("U1").unwrap()]).unwrap()));
        assert!(check_image_equals_center(&params(2, 3, 1, 1, &[2, 1, 1]), FittingIndexPolicy::Corrected).unwrap());
    }

    #[test]
    fn nonnormal() {
        for p in [2, 3] {
            let rep = check_nonnormal(p).unwrap();
            assert!(rep.non_normal(), "{rep:?}");
        }
        assert!(check_nonnormal(4).is_err());
    }

    #[test]
    fn grid_rows() {
        assert!(run_grid(&[], FittingIndexPolicy::Corrected, 2).is_empty());
        let grid = crate::rees::parse_grid("p=2 n=2 s=1 l=1 v=2,1\np=2 n=2 s=1 l=2 v=2,2\nnonsense\np=2 n=3 s=2 l=2 v=2,1\n");
        let reports = run_grid(&grid, FittingIndexPolicy::Corrected, 3);
        let statuses: Vec<Status> = reports.iter().map(|r| r.status).collect();
        assert_eq!(statuses, vec![Status::Pass, Status::Skipped, Status::Skipped, Status::Pass]);
        assert!(reports[1].reason.as_deref().unwrap().contains("less than n"));
        assert_eq!(reports[3].params.as_ref().unwrap().s, 2);
    }

    #[test]
    fn report_json_shape() {
        let mut rep = verify_tuple(&params(2, 2, 1, 1, &[2, 1]), FittingIndexPolicy::Corrected);
        rep.strip_timing();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["params"]["v"], serde_json::json!([2, 1]));
        assert_eq!(v["policy"], "corrected");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["charts"][0], serde_json::json!({"r": 1, "equal": true, "ms": 0}));
        assert_eq!(v["corollary_ok"], true);
        assert!(v.get("reason").is_none());
    }
}
