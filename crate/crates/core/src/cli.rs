//! The `fitt` command-line tool.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fitmod::{PolyMatrix, PresentedAlgebra, PresentedModule};
use crate::groebner::Ideal;
use crate::kaehler::kaehler_presentation;
use crate::polyring::{parse_polynomial_list, BaseOrder, CoefficientField, MonomialOrder, Polynomial, Ring};
use crate::rees::{self, parse_grid, ReesParams};
use crate::verify::{self, props, FittingIndexPolicy, Status, VerificationReport};

#[derive(Debug, Parser)]
#[command(name = "fitt", version, about = "Groebner bases, Fitting ideals and Rees-ring charts in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
struct RingArgs {
    /// Coefficient field: `p=<prime>` or `rationals`.
    #[arg(long, default_value = "rationals")]
    field: String,
    /// Comma-separated variable names, largest first.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Monomial order: `grevlex`, `lex`, or `elim:<var>,<var>...`.
    #[arg(long, default_value = "grevlex")]
    order: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct GensArgs {
    /// Generators separated by `,` or `;`. May be repeated.
    #[arg(long)]
    gens: Vec<String>,
    /// File with one generator per line (`#` comments allowed).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    l: usize,
    /// Exponents v_s..v_n, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    v: Vec<u32>,
    /// Require v_s..v_l to be powers of p.
    #[arg(long)]
    strict_p_power: bool,
}

#[derive(Debug, Args)]
struct PolicyArgs {
    /// Fitting index: `paper`, `corrected`, or an integer.
    #[arg(long, default_value = "corrected")]
    policy: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Report every chart timing as 0 ms.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Groebner basis.
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
    },
    /// Ideal membership test.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
        /// Polynomial to test.
        #[arg(long)]
        poly: String,
    },
    /// Saturation (I : g^∞).
    Saturate {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
        #[arg(long)]
        by: String,
    },
    /// Intersection of two ideals.
    Intersect {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
        /// Generators of the second ideal.
        #[arg(long, required = true)]
        with: Vec<String>,
    },
    /// Elimination of variables.
    Eliminate {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
        /// Variables to eliminate.
        #[arg(long, value_delimiter = ',', required = true)]
        eliminate: Vec<String>,
    },
    /// Fitting ideal of a presentation matrix over P/(relations).
    Fitting {
        #[command(flatten)]
        ring: RingArgs,
        /// Matrix rows separated by `;`, entries by `,`. Rows are generators.
        #[arg(long)]
        matrix: String,
        /// Relations of the base algebra.
        #[arg(long)]
        relations: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
    },
    /// Jacobian presentation of the Kähler differentials of P/(gens).
    Kaehler {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        gens: GensArgs,
        /// Also print this Fitting ideal.
        #[arg(long, allow_hyphen_values = true)]
        index: Option<i64>,
    },
    /// Rees-ring constructions.
    Rees {
        #[command(subcommand)]
        command: ReesCommand,
    },
    /// Verification runs.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ReesCommand {
    /// Ambient ring, relations, target and exceptional ideals.
    Print {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Presentation of the chart at T_r.
    Chart {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Kernel of the map to the Rees ring, compared with the binomials.
    Micali {
        #[command(flatten)]
        params: ParamsArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Global Fitting ideal against the target, chart by chart.
    Thm41 {
        #[command(flatten)]
        params: ParamsArgs,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Chart Fitting ideals against their expected linear form.
    Cor42 {
        #[command(flatten)]
        params: ParamsArgs,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Image of the chart Fitting loci against the center.
    Image {
        #[command(flatten)]
        params: ParamsArgs,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Non-normality of a chart of the blow-up of (x3^p, x4^{p^2}).
    Nonnormal {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Every check over a grid file.
    Grid {
        /// One parameter line per tuple, e.g. `p=2 n=3 s=1 l=2 v=2,2,1`.
        #[arg(long)]
        grid: PathBuf,
        /// Worker threads (0 = available parallelism).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Seeded randomized law checks.
    Props {
        #[arg(long, default_value_t = props::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        gb_cases: usize,
        #[arg(long, default_value_t = 100)]
        fitting_cases: usize,
        #[arg(long, default_value_t = 200)]
        derivative_cases: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Output of one command and whether it counts as success.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Runs the tool and returns the exit code: 0 on success, 1 when a
/// verification fails, 2 on usage or validation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn build_ring(args: &RingArgs) -> Result<(Ring, MonomialOrder)> {
    let field: CoefficientField = args.field.parse()?;
    let ring = Ring::new(field, args.vars.iter().map(|v| v.trim()))?;
    let order = parse_order(&ring, &args.order)?;
    Ok((ring, order))
}

fn parse_order(ring: &Ring, text: &str) -> Result<MonomialOrder> {
    match text {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => {
            let vars = other
                .strip_prefix("elim:")
                .ok_or_else(|| Error::Validation(format!("unknown order {other:?}: use grevlex, lex or elim:<vars>")))?;
            let block = vars
                .split(',')
                .map(|v| ring.var_index(v.trim()).ok_or_else(|| Error::UnknownVariable(v.trim().to_string())))
                .collect::<Result<Vec<_>>>()?;
            let mut block = block;
            block.sort_unstable();
            block.dedup();
            Ok(MonomialOrder::Block { block, inner: BaseOrder::GrevLex })
        }
    }
}

fn read_gens(ring: &Ring, args: &GensArgs) -> Result<Vec<Polynomial>> {
    let mut gens = Vec::new();
    for chunk in &args.gens {
        gens.extend(parse_polynomial_list(ring, chunk)?);
    }
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        gens.extend(parse_polynomial_list(ring, &text)?);
    }
    if args.gens.is_empty() && args.input.is_none() {
        return Err(Error::Validation("no generators: pass --gens or --input".into()));
    }
    Ok(gens)
}

fn params_of(args: &ParamsArgs) -> Result<ReesParams> {
    let params = ReesParams {
        p: args.p,
        n: args.n,
        s: args.s,
        l: args.l,
        v: args.v.clone(),
        strict_p_power: args.strict_p_power,
    };
    params.validate()?;
    Ok(params)
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(Polynomial::to_string).collect()
}

/// Canonical output for an ideal: its reduced basis under `order`.
fn ideal_outcome(ideal: &Ideal, order: &MonomialOrder, format: Format, extra: serde_json::Value) -> String {
    let basis = strings(&ideal.groebner_basis(order));
    match format {
        Format::Text => basis.iter().map(|g| format!("{g}\n")).collect(),
        Format::Json => {
            let mut obj = json!({
                "ring": ideal.ring().to_string(),
                "basis": basis,
            });
            if let (Some(o), serde_json::Value::Object(e)) = (obj.as_object_mut(), extra) {
                o.extend(e);
            }
            pretty(&obj)
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Gb { ring, gens } => {
            let (r, order) = build_ring(&ring)?;
            let ideal = Ideal::new(&r, read_gens(&r, &gens)?)?;
            Ok(Outcome::ok(ideal_outcome(&ideal, &order, ring.format, json!({ "order": ring.order }))))
        }
        Command::Member { ring, gens, poly } => {
            let (r, order) = build_ring(&ring)?;
            let ideal = Ideal::new(&r, read_gens(&r, &gens)?)?;
            let f = r.parse(&poly)?;
            let member = ideal.contains_under(&f, &order);
            Ok(Outcome::ok(match ring.format {
                Format::Text => format!("{member}\n"),
                Format::Json => pretty(&json!({ "poly": f.to_string(), "member": member })),
            }))
        }
        Command::Saturate { ring, gens, by } => {
            let (r, order) = build_ring(&ring)?;
            let ideal = Ideal::new(&r, read_gens(&r, &gens)?)?;
            let sat = ideal.saturate(&r.parse(&by)?)?;
            Ok(Outcome::ok(ideal_outcome(&sat, &order, ring.format, json!({}))))
        }
        Command::Intersect { ring, gens, with } => {
            let (r, order) = build_ring(&ring)?;
            let a = Ideal::new(&r, read_gens(&r, &gens)?)?;
            let b = Ideal::new(&r, read_gens(&r, &GensArgs { gens: with, input: None })?)?;
            Ok(Outcome::ok(ideal_outcome(&a.intersect(&b)?, &order, ring.format, json!({}))))
        }
        Command::Eliminate { ring, gens, eliminate } => {
            let (r, _) = build_ring(&ring)?;
            let ideal = Ideal::new(&r, read_gens(&r, &gens)?)?;
            let drop = eliminate
                .iter()
                .map(|v| r.var_index(v.trim()).ok_or_else(|| Error::UnknownVariable(v.trim().to_string())))
                .collect::<Result<Vec<_>>>()?;
            let keep: Vec<usize> = (0..r.nvars()).filter(|i| !drop.contains(i)).collect();
            let sub = r.subring(&keep);
            let contracted = ideal.contract(&sub)?;
            Ok(Outcome::ok(ideal_outcome(&contracted, &MonomialOrder::GrevLex, ring.format, json!({}))))
        }
        Command::Fitting { ring, matrix, relations, index } => {
            let (r, order) = build_ring(&ring)?;
            let m = PolyMatrix::parse(&r, &matrix)?;
            let mut rels = Vec::new();
            for chunk in &relations {
                rels.extend(parse_polynomial_list(&r, chunk)?);
            }
            let algebra = PresentedAlgebra::new(Ideal::new(&r, rels)?);
            let module = PresentedModule::with_default_labels(algebra, m)?;
            let fitt = module.fitting_ideal(index);
            Ok(Outcome::ok(ideal_outcome(&fitt, &order, ring.format, json!({ "index": index }))))
        }
        Command::Kaehler { ring, gens, index } => {
            let (r, order) = build_ring(&ring)?;
            let algebra = PresentedAlgebra::new(Ideal::new(&r, read_gens(&r, &gens)?)?);
            let module = kaehler_presentation(&algebra);
            Ok(Outcome::ok(kaehler_output(&module, index, &order, ring.format)))
        }
        Command::Rees { command } => rees_command(command),
        Command::Verify { command } => verify_command(command),
    }
}

fn matrix_rows(module: &PresentedModule) -> Vec<Vec<String>> {
    let m = module.matrix();
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

fn kaehler_output(module: &PresentedModule, index: Option<i64>, order: &MonomialOrder, format: Format) -> String {
    let rows = matrix_rows(module);
    let fitting = index.map(|i| strings(&module.fitting_ideal(i).groebner_basis(order)));
    match format {
        Format::Json => pretty(&json!({
            "ring": module.algebra().ring().to_string(),
            "rows": module.row_labels(),
            "matrix": rows,
            "index": index,
            "fitting": fitting,
        })),
        Format::Text => {
            let mut s = String::new();
            for (label, row) in module.row_labels().iter().zip(&rows) {
                let _ = writeln!(s, "{label}: [{}]", row.join(", "));
            }
            if let (Some(i), Some(gens)) = (index, fitting) {
                let _ = writeln!(s, "Fitt_{i}:");
                for g in gens {
                    let _ = writeln!(s, "  {g}");
                }
            }
            s
        }
    }
}

fn rees_command(command: ReesCommand) -> Result<Outcome> {
    let grevlex = MonomialOrder::GrevLex;
    match command {
        ReesCommand::Print { params, format } => {
            let p = params_of(&params)?;
            let rees = rees::rees_presentation(&p)?;
            let relations = strings(rees.relations().generators());
            let target = strings(&rees::target_ideal(&p)?.groebner_basis(&grevlex));
            let exceptional = strings(&rees::exceptional_ideal(&p)?.groebner_basis(&grevlex));
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({
                    "params": p,
                    "ring": rees.ring().to_string(),
                    "relations": relations,
                    "target": target,
                    "exceptional": exceptional,
                })),
                Format::Text => {
                    let mut s = format!("params: {p}\nring: {}\n", rees.ring());
                    for (name, list) in [("relations", relations), ("target", target), ("exceptional", exceptional)] {
                        let _ = writeln!(s, "{name}:");
                        for g in list {
                            let _ = writeln!(s, "  {g}");
                        }
                    }
                    s
                }
            }))
        }
        ReesCommand::Chart { params, r, format } => {
            let p = params_of(&params)?;
            let chart = rees::chart_presentation(&p, r)?;
            let ring = chart.algebra.ring();
            let relations = strings(chart.algebra.relations().generators());
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({ "params": p, "r": r, "ring": ring.to_string(), "relations": relations })),
                Format::Text => {
                    let mut s = format!("chart r={r}\nring: {ring}\nrelations:\n");
                    for g in relations {
                        let _ = writeln!(s, "  {g}");
                    }
                    s
                }
            }))
        }
        ReesCommand::Micali { params, format } => {
            let p = params_of(&params)?;
            let kernel = rees::micali_kernel(&p)?;
            let equal = kernel.equals(rees::rees_presentation(&p)?.relations());
            let gens = strings(kernel.generators());
            Ok(Outcome {
                ok: equal,
                text: match format {
                    Format::Json => pretty(&json!({ "params": p, "kernel": gens, "equals_relations": equal })),
                    Format::Text => {
                        let mut s = String::from("kernel:\n");
                        for g in gens {
                            let _ = writeln!(s, "  {g}");
                        }
                        let _ = writeln!(s, "equals relations: {equal}");
                        s
                    }
                },
            })
        }
    }
}

fn report_output(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => verify::summary_table(std::slice::from_ref(report)),
    }
}

fn verify_command(command: VerifyCommand) -> Result<Outcome> {
    match command {
        VerifyCommand::Thm41 { params, policy } => single_report(&params, &policy, |r| r.status == Status::Pass),
        VerifyCommand::Cor42 { params, policy } => single_report(&params, &policy, |r| r.corollary_ok == Some(true)),
        VerifyCommand::Image { params, policy } => single_report(&params, &policy, |r| r.image_ok == Some(true)),
        VerifyCommand::Nonnormal { p, format } => {
            let rep = verify::check_nonnormal(p)?;
            let non_normal = rep.non_normal();
            Ok(Outcome {
                ok: non_normal,
                text: match format {
                    Format::Json => pretty(&json!({
                        "p": p,
                        "non_normal": non_normal,
                        "integral_witness": rep.integral_witness,
                        "not_in_x3": rep.not_in_x3,
                        "sanity": rep.sanity,
                        "chart_matches": rep.chart_matches,
                        "reduced_agrees": rep.reduced_agrees,
                    })),
                    Format::Text => format!(
                        "non-normal: {non_normal}\n  integral witness: {}\n  x4^p not in (x3): {}\n  sanity x4^(p^2) in (x3^p): {}\n  chart by elimination matches: {}\n  same without x1, x2: {}\n",
                        rep.integral_witness, rep.not_in_x3, rep.sanity, rep.chart_matches, rep.reduced_agrees
                    ),
                },
            })
        }
        VerifyCommand::Grid { grid, workers, policy } => {
            let pol: FittingIndexPolicy = policy.policy.parse()?;
            let text = std::fs::read_to_string(&grid)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", grid.display())))?;
            let mut reports = verify::run_grid(&parse_grid(&text), pol, workers);
            if policy.no_timing {
                reports.iter_mut().for_each(VerificationReport::strip_timing);
            }
            let ok = reports.iter().all(|r| r.status != Status::Fail);
            let text = match policy.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&reports).expect("serializable")),
                Format::Text => verify::summary_table(&reports),
            };
            Ok(Outcome { text, ok })
        }
        VerifyCommand::Props { seed, gb_cases, fitting_cases, derivative_cases, format } => {
            let summary = props::run_props(&props::PropsConfig { seed, gb_cases, fitting_cases, derivative_cases });
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&summary).expect("serializable")),
                Format::Text => {
                    let mut s = format!("seed: {seed}\n");
                    for suite in &summary.suites {
                        let _ = writeln!(s, "{:<12} {:>5} cases  {} failures", suite.name, suite.cases, suite.failures.len());
                        for f in &suite.failures {
                            let _ = writeln!(s, "  {f}");
                        }
                    }
                    s
                }
            };
            Ok(Outcome { ok: summary.ok(), text })
        }
    }
}

fn single_report(params: &ParamsArgs, policy: &PolicyArgs, passed: impl Fn(&VerificationReport) -> bool) -> Result<Outcome> {
    let p = params_of(params)?;
    let pol: FittingIndexPolicy = policy.policy.parse()?;
    let mut report = verify::verify_tuple(&p, pol);
    if policy.no_timing {
        report.strip_timing();
    }
    Ok(Outcome { ok: passed(&report), text: report_output(&report, policy.format) })
}
