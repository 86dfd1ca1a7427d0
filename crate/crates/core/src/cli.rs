//! The `treelike` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a canonical formula
//! disagreed with its oracle, 3 the model is above the vertex cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::analysis::{dim_equality_scan, scaling_fit, ScalingFit};
use crate::closed_forms::{
    iterate_wiener, params, printed, star_fractal_cases, step_subdivision, wiener_sequence, CayleyState,
    FormulaId, FormulaResult, Tier,
};
use crate::error::Error;
use crate::exact::{ratio_to_string, to_ratio, ExactInt, ExactRatio};
use crate::growth::{grow_with_cap, predicted_counts, Family, ModelSpec, Seed, DEFAULT_VERTEX_CAP};
use crate::random_walk::{mfpt, WalkConfig};
use crate::tree::{wiener_edge_cut, wiener_oracle, Tree};
use crate::verify::{audit, format_params, ledger, records_to_jsonl, AuditGrid, Verdict};

/// Relative `--output` and ledger paths are resolved against this directory
/// when it is set.
pub const OUT_DIR_ENV: &str = "TREELIKE_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("canonical formulas disagree with the oracle")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(Error::SizeCap { .. }) => 3,
            CliError::VerificationFailed => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "treelike",
    version,
    about = "Grow treelike network models and audit their closed forms"
)]
pub struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
    /// `n m` header then one `u v` line per edge.
    Edges,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow a model and print it as an edge list, DOT, CSV or JSON.
    Grow {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
        /// Refuse models predicted to exceed this many vertices.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Wiener index by closed form, with the printed variants and the oracle.
    Wiener {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest model measured by the oracle.
        #[arg(long, default_value_t = 200_000)]
        oracle_cap: usize,
    },
    /// Exact and Monte-Carlo mean first-passage times.
    Mfpt {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Monte-Carlo trials; 0 skips the simulation.
        #[arg(long, default_value_t = 0)]
        mc_trials: u64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Audit every closed form against the oracles.
    Verify {
        /// Seeds up to 12 vertices, m, w up to 4, t up to 3.
        #[arg(long, conflicts_with = "grid")]
        default_grid: bool,
        /// Grid as JSON; without this or --default-grid a small grid is used.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Only audit these formulas (snake_case ids).
        #[arg(long = "formula", value_name = "ID")]
        formulas: Vec<String>,
        /// Where to write the fixed-width ledger.
        #[arg(long, default_value = "ledger.txt")]
        ledger: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fit the mean first-passage scaling law of a family.
    Scale {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 4)]
        t_from: u32,
        #[arg(long, default_value_t = 12)]
        t_to: u32,
        /// Print only the fitted `(x, y)` columns.
        #[arg(long)]
        plot_data: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Parameter triples where two star-fractal families share a fractal dimension.
    SolveDim {
        /// Bound on w, n and m.
        #[arg(long, default_value_t = 50)]
        max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Model flags. A `--config` file uses the `key=value` grammar of
/// [`ModelSpec`]; flags given on the command line override it.
#[derive(Debug, Clone, Default, Args)]
pub struct SpecArgs {
    /// first_order_subdivision, subdivision, star_fractal_1m, star_fractal,
    /// tgraph, cayley or exponential.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(short = 't', long = "steps")]
    pub t: Option<u32>,
    #[arg(short = 'm')]
    pub m: Option<usize>,
    #[arg(short = 'w')]
    pub w: Option<usize>,
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// `edge`, `star:K` or `tree:N:u-v,...`.
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<ModelSpec, CliError> {
        let mut text = match &self.config {
            Some(path) => std::fs::read_to_string(path)?,
            None => String::new(),
        };
        text.push('\n');
        // later tokens win, so flags override the file
        if let Some(f) = &self.family {
            let _ = write!(text, " family={f}");
        }
        if let Some(t) = self.t {
            let _ = write!(text, " t={t}");
        }
        for (key, v) in [("m", self.m), ("w", self.w), ("n", self.n)] {
            if let Some(v) = v {
                let _ = write!(text, " {key}={v}");
            }
        }
        if let Some(s) = &self.seed {
            let _ = write!(text, " seed={s}");
        }
        if !text.contains("family=") {
            return Err(CliError::Usage(
                "missing --family (or family= in --config)".into(),
            ));
        }
        Ok(text.parse()?)
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    run_from(std::env::args_os())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("treelike: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(resolve(path), text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, format: Format) -> CliError {
    CliError::Usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global();
    let text = match &cli.command {
        Command::Grow {
            spec,
            format,
            max_vertices,
        } => cmd_grow(&spec.to_spec()?, *format, *max_vertices)?,
        Command::Wiener {
            spec,
            format,
            oracle_cap,
        } => {
            let (text, canonical_ok) = cmd_wiener(&spec.to_spec()?, *format, *oracle_cap, cli.verbose)?;
            emit(cli, &text)?;
            return if canonical_ok {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            };
        }
        Command::Mfpt {
            spec,
            format,
            mc_trials,
            rng_seed,
            max_vertices,
        } => {
            let cfg = (*mc_trials > 0).then(|| WalkConfig::new(*rng_seed, *mc_trials));
            cmd_mfpt(&spec.to_spec()?, *format, cfg.as_ref(), *max_vertices)?
        }
        Command::Verify {
            default_grid,
            grid,
            formulas,
            ledger,
            format,
        } => {
            let mut g = match grid {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)
                    .map_err(|e| CliError::Usage(format!("bad grid file: {e}")))?,
                None if *default_grid => AuditGrid::default(),
                None => AuditGrid::small(),
            };
            if !formulas.is_empty() {
                let ids = formulas
                    .iter()
                    .map(|f| parse_formula(f))
                    .collect::<Result<Vec<_>, _>>()?;
                g = g.only(&ids);
            }
            let (text, table, ok) = cmd_verify(&g, *format)?;
            std::fs::write(resolve(ledger), table)?;
            emit(cli, &text)?;
            return if ok {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            };
        }
        Command::Scale {
            spec,
            t_from,
            t_to,
            plot_data,
            format,
        } => cmd_scale(&spec.to_spec()?, *t_from, *t_to, *plot_data, *format)?,
        Command::SolveDim { max, format } => cmd_solve_dim(*max, *format)?,
    };
    emit(cli, &text)
}

fn parse_formula(name: &str) -> Result<FormulaId, CliError> {
    FormulaId::ALL
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| CliError::Usage(format!("unknown formula {name:?}")))
}

pub fn cmd_grow(spec: &ModelSpec, format: Format, cap: usize) -> Result<String, CliError> {
    let tree = grow_with_cap(spec, cap)?;
    let predicted = predicted_counts(spec)?;
    let last = predicted.corrected.steps.last().expect("nonempty");
    let header = format!("{spec}; predicted |V|={} |E|={}", last.vertices, last.edges);
    Ok(match format {
        Format::Edges | Format::Text => format!("# {header}\n{}", tree.to_edge_list()),
        Format::Dot => format!("// {header}\n{}", tree.to_dot()),
        Format::Csv => {
            let mut s = format!("# {header}\nu,v\n");
            for (u, v) in tree.edges() {
                let _ = writeln!(s, "{u},{v}");
            }
            s
        }
        Format::Json => json_text(&json!({
            "spec": spec.to_string(),
            "predicted": {
                "vertices": last.vertices.to_string(),
                "edges": last.edges.to_string(),
            },
            "vertices": tree.len(),
            "edges": tree.edges(),
            "generations": tree.generations(),
        })),
    })
}

/// One line of `wiener` output.
#[derive(Clone, Debug, PartialEq)]
pub struct WienerRow {
    pub result: FormulaResult,
    /// Against the oracle, when it ran.
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WienerReport {
    pub spec: ModelSpec,
    pub vertices: ExactInt,
    pub oracle: Option<ExactInt>,
    pub rows: Vec<WienerRow>,
    /// Named intermediate quantities, shown with `--verbose`.
    pub intermediates: Vec<(String, ExactRatio)>,
}

fn result(
    formula: FormulaId,
    tier: Tier,
    params: crate::closed_forms::Params,
    value: Option<ExactRatio>,
) -> FormulaResult {
    FormulaResult {
        formula,
        tier,
        params,
        value,
    }
}

/// Canonical value at `spec.steps`, every printed formula that applies, and
/// the oracle on the grown tree when it has at most `oracle_cap` vertices.
pub fn wiener_report(spec: &ModelSpec, oracle_cap: usize) -> Result<WienerReport, CliError> {
    let seq = wiener_sequence(spec)?;
    let last = seq.last().expect("nonempty");
    let t = spec.steps;
    let mut results = Vec::new();
    let mut intermediates = Vec::new();
    match spec.family {
        Family::Cayley { n } => {
            let n64 = n as u64;
            let on_star = matches!(spec.seed, Seed::Star(k) if k == n);
            if on_star {
                results.push(result(
                    FormulaId::CayleyClosedForm,
                    Tier::Canonical,
                    params([("n", n as i64), ("t", t as i64)]),
                    Some(to_ratio(&last.wiener)),
                ));
                let closed = printed::cayley_closed_form(n64, t);
                intermediates.push(("branch_order".to_string(), closed.branch_order.clone()));
                intermediates.push(("theta".to_string(), closed.theta.clone()));
                intermediates.push(("omega12".to_string(), closed.omega12.clone()));
                intermediates.push(("gamma".to_string(), closed.gamma.clone()));
                results.push(result(
                    FormulaId::CayleyClosedForm,
                    Tier::AsPrinted,
                    params([("n", n as i64), ("t", t as i64)]),
                    Some(closed.value),
                ));
            } else {
                let seed = spec.seed.to_tree()?;
                let start = CayleyState::from_seed(&seed, n64)?;
                let p = params([("n", n as i64), ("order", seed.len() as i64), ("t", t as i64)]);
                results.push(result(
                    FormulaId::CayleyGeneralSeed,
                    Tier::Canonical,
                    p.clone(),
                    Some(to_ratio(&last.wiener)),
                ));
                results.push(result(
                    FormulaId::CayleyGeneralSeed,
                    Tier::AsPrinted,
                    p,
                    Some(printed::cayley_general_expanded(&start, n64, t)),
                ));
            }
        }
        Family::Exponential { m } => {
            let (s0, n0) = (&seq[0].wiener, &seq[0].vertices);
            let p = params([
                ("m", m as i64),
                ("n", n0.try_into().unwrap_or(i64::MAX)),
                ("t", t as i64),
            ]);
            results.push(result(
                FormulaId::ExponentialClosedForm,
                Tier::Canonical,
                p.clone(),
                Some(to_ratio(&last.wiener)),
            ));
            results.push(result(
                FormulaId::ExponentialClosedForm,
                Tier::AsPrinted,
                p,
                Some(printed::exponential_closed_form(s0, n0, m as u64, t)),
            ));
            if spec.seed == Seed::SingleEdge {
                results.push(result(
                    FormulaId::ExponentialEdgeClosedForm,
                    Tier::AsPrinted,
                    params([("m", m as i64), ("t", t as i64)]),
                    Some(printed::exponential_edge_closed_form(m as u64, t)),
                ));
            }
        }
        fam => {
            let (s0, n0) = (&seq[0].wiener, &seq[0].vertices);
            let n0u: u64 = n0
                .try_into()
                .map_err(|_| CliError::Usage("seed too large".into()))?;
            let steps = iterate_wiener(spec, s0, n0u)?;
            let step = steps.last().expect("nonempty");
            results.push(step.canonical.clone());
            results.extend(step.as_printed.iter().cloned());
            if t >= 1 {
                let prev = &seq[seq.len() - 2];
                results.extend(one_step_results(&fam, &prev.wiener, &prev.vertices));
            }
        }
    }

    let oracle = if last.vertices <= BigInt::from(oracle_cap) {
        let tree = grow_with_cap(spec, oracle_cap)?;
        Some(oracle_of(&tree))
    } else {
        None
    };
    let rows = results
        .into_iter()
        .map(|r| {
            let verdict = oracle.as_ref().map(|o| match &r.value {
                None => Verdict::Undefined,
                Some(v) if *v == to_ratio(o) => Verdict::Match,
                Some(_) => Verdict::Mismatch,
            });
            WienerRow { result: r, verdict }
        })
        .collect();
    Ok(WienerReport {
        spec: spec.clone(),
        vertices: last.vertices.clone(),
        oracle,
        rows,
        intermediates,
    })
}

fn oracle_of(t: &Tree) -> ExactInt {
    if t.len() <= 2000 {
        wiener_oracle(t)
    } else {
        wiener_edge_cut(t)
    }
}

/// The one-step theorems applied to the previous step `(s, n)`.
fn one_step_results(fam: &Family, s: &ExactInt, n: &ExactInt) -> Vec<FormulaResult> {
    let (w, m) = fam.edge_operation().expect("edge family");
    let (w, m) = (w as u64, m as u64);
    let ni: i64 = n.try_into().unwrap_or(i64::MAX);
    let mut out = Vec::new();
    if fam.is_subdivision() {
        let p = params([("m", w as i64), ("n", ni)]);
        let canonical = step_subdivision(s, n, w).map(|(v, _)| to_ratio(&v)).ok();
        if w == 1 {
            out.push(result(
                FormulaId::FirstOrderStep,
                Tier::AsPrinted,
                p.clone(),
                Some(printed::first_order_step(s, n)),
            ));
        }
        out.push(result(
            FormulaId::MthOrderStep,
            Tier::Canonical,
            p.clone(),
            canonical,
        ));
        out.push(result(
            FormulaId::MthOrderStep,
            Tier::AsPrinted,
            p,
            Some(printed::mth_order_step(s, n, w)),
        ));
    } else {
        let p = params([("m", m as i64), ("n", ni), ("w", w as i64)]);
        let canonical = to_ratio(&star_fractal_cases(s, n, w, m).total());
        if w == 1 {
            out.push(result(
                FormulaId::OneMStarStep,
                Tier::AsPrinted,
                p.clone(),
                Some(printed::one_m_star_step(s, n, m)),
            ));
        }
        out.push(result(
            FormulaId::WmStarStepCaseSum,
            Tier::Canonical,
            p.clone(),
            Some(canonical),
        ));
        out.push(result(
            FormulaId::WmStarStepCaseSum,
            Tier::AsPrinted,
            p.clone(),
            Some(printed::wm_star_step_case_sum(s, n, w, m)),
        ));
        out.push(result(
            FormulaId::WmStarStepExpanded,
            Tier::AsPrinted,
            p,
            Some(printed::wm_star_step_expanded(s, n, w, m)),
        ));
    }
    out
}

fn verdict_name(v: Option<Verdict>) -> &'static str {
    match v {
        Some(Verdict::Match) => "match",
        Some(Verdict::Mismatch) => "MISMATCH",
        Some(Verdict::Undefined) => "undefined",
        None => "-",
    }
}

fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Canonical => "canonical",
        Tier::AsPrinted => "printed",
    }
}

pub fn cmd_wiener(
    spec: &ModelSpec,
    format: Format,
    oracle_cap: usize,
    verbose: bool,
) -> Result<(String, bool), CliError> {
    let rep = wiener_report(spec, oracle_cap)?;
    let canonical_ok = rep
        .rows
        .iter()
        .all(|r| r.result.tier != Tier::Canonical || r.verdict != Some(Verdict::Mismatch));
    let value = |r: &WienerRow| {
        r.result
            .value
            .as_ref()
            .map_or("undefined".to_string(), ratio_to_string)
    };
    let text = match format {
        Format::Text => {
            let mut s = format!("# {}\nvertices {}\n", rep.spec, rep.vertices);
            match &rep.oracle {
                Some(o) => {
                    let _ = writeln!(s, "oracle {o}");
                }
                None => s.push_str("oracle skipped (above --oracle-cap)\n"),
            }
            for r in &rep.rows {
                let _ = writeln!(
                    s,
                    "{:<28} {:<10} {:>24}  {:<9} {}",
                    r.result.formula.name(),
                    tier_name(r.result.tier),
                    value(r),
                    verdict_name(r.verdict),
                    format_params(&r.result.params)
                );
            }
            if verbose {
                for (k, v) in &rep.intermediates {
                    let _ = writeln!(s, "{k} {}", ratio_to_string(v));
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("formula,tier,value,verdict,params\n");
            for r in &rep.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.result.formula.name(),
                    tier_name(r.result.tier),
                    value(r),
                    verdict_name(r.verdict).to_lowercase(),
                    format_params(&r.result.params)
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(&r.result).expect("results serialise");
                    v["verdict"] = serde_json::to_value(r.verdict).expect("verdict serialises");
                    v
                })
                .collect();
            let mut out = json!({
                "spec": rep.spec.to_string(),
                "vertices": rep.vertices.to_string(),
                "oracle": rep.oracle.as_ref().map(|o| o.to_string()),
                "results": rows,
            });
            if verbose {
                out["intermediates"] = rep
                    .intermediates
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(ratio_to_string(v))))
                    .collect::<serde_json::Map<_, _>>()
                    .into();
            }
            json_text(&out)
        }
        f => return Err(unsupported("wiener", f)),
    };
    Ok((text, canonical_ok))
}

pub fn cmd_mfpt(
    spec: &ModelSpec,
    format: Format,
    mc: Option<&WalkConfig>,
    cap: usize,
) -> Result<String, CliError> {
    let tree = grow_with_cap(spec, cap)?;
    let rep = mfpt(&tree, mc)?;
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(&rep).expect("report serialises");
            v["spec"] = Value::String(spec.to_string());
            json_text(&v)
        }
        Format::Text | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { " " };
            let mut rows = vec![
                ("vertices".to_string(), rep.vertices.to_string()),
                ("wiener".to_string(), ratio_to_string(&rep.wiener)),
                ("exact".to_string(), ratio_to_string(&rep.exact)),
                (
                    "from_wiener_2s_over_v".to_string(),
                    ratio_to_string(&rep.from_wiener_2s_over_v),
                ),
                ("lemma_s_over_v".to_string(), ratio_to_string(&rep.lemma_s_over_v)),
                (
                    "exact_over_lemma".to_string(),
                    ratio_to_string(&rep.exact_over_lemma),
                ),
            ];
            if let Some(mc) = &rep.mc {
                rows.push(("mc_trials".into(), mc.trials.to_string()));
                rows.push(("mc_truncated".into(), mc.truncated.to_string()));
                rows.push(("mc_mean".into(), format!("{:.6}", mc.mean)));
                rows.push(("mc_std_error".into(), format!("{:.6}", mc.std_error)));
            }
            let mut s = if format == Format::Csv {
                "key,value\n".to_string()
            } else {
                format!("# {spec}\n")
            };
            for (k, v) in rows {
                let _ = writeln!(s, "{k}{sep}{v}");
            }
            s
        }
        f => return Err(unsupported("mfpt", f)),
    })
}

/// Returns the output in `format`, the ledger table, and whether the
/// canonical tier passed.
pub fn cmd_verify(grid: &AuditGrid, format: Format) -> Result<(String, String, bool), CliError> {
    let records = audit(grid);
    let l = ledger(&records);
    let table = l.to_text();
    let text = match format {
        Format::Text => table.clone(),
        Format::Json => records_to_jsonl(&records),
        Format::Csv => {
            let mut s = String::from("formula,tier,params,oracle,value,verdict\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.formula.name(),
                    tier_name(r.tier),
                    format_params(&r.params),
                    crate::verify::display_value(&r.oracle_value),
                    crate::verify::display_value(&r.formula_value),
                    verdict_name(Some(r.verdict)).to_lowercase()
                );
            }
            s
        }
        f => return Err(unsupported("verify", f)),
    };
    Ok((text, table, l.canonical_passes()))
}

pub fn cmd_scale(
    spec: &ModelSpec,
    from: u32,
    to: u32,
    plot_data: bool,
    format: Format,
) -> Result<String, CliError> {
    let fit: ScalingFit = scaling_fit(spec, from..=to)?;
    if plot_data {
        let mut s = String::from(if format == Format::Csv { "x,y\n" } else { "# x y\n" });
        let sep = if format == Format::Csv { "," } else { " " };
        for (x, y) in &fit.points {
            let _ = writeln!(s, "{x:.12}{sep}{y:.12}");
        }
        return Ok(s);
    }
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(&fit).expect("fit serialises");
            v["spec"] = Value::String(spec.to_string());
            json_text(&v)
        }
        Format::Text | Format::Csv => {
            let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
            let rows = [
                ("kind", format!("{:?}", fit.kind).to_lowercase()),
                ("exponent", format!("{:.6}", fit.exponent)),
                ("r_squared", format!("{:.6}", fit.r_squared)),
                ("analytic_exponent", format!("{:.6}", fit.analytic_exponent)),
                ("printed_exponent", opt(fit.printed_exponent)),
                ("diameter_exponent", opt(fit.diameter_exponent)),
                ("points", fit.points.len().to_string()),
            ];
            let (mut s, sep) = if format == Format::Csv {
                ("key,value\n".to_string(), ",")
            } else {
                (format!("# {spec} fitted over t={from}..={to}\n"), " ")
            };
            for (k, v) in rows {
                let _ = writeln!(s, "{k}{sep}{v}");
            }
            s
        }
        f => return Err(unsupported("scale", f)),
    })
}

pub fn cmd_solve_dim(max: u64, format: Format) -> Result<String, CliError> {
    let rows = dim_equality_scan(max, max, max);
    Ok(match format {
        Format::Json => json_text(&serde_json::to_value(&rows).expect("rows serialise")),
        Format::Text | Format::Csv => {
            let csv = format == Format::Csv;
            let mut s = if csv {
                "w,n,m,dimension,classes\n".to_string()
            } else {
                format!("{:>4} {:>4} {:>4} {:>12}  classes\n", "w", "n", "m", "dimension")
            };
            for r in &rows {
                let classes = r
                    .classes
                    .iter()
                    .map(|c| {
                        serde_json::to_value(c)
                            .expect("class serialises")
                            .as_str()
                            .unwrap_or("")
                            .to_string()
                    })
                    .collect::<Vec<_>>()
                    .join(";");
                if csv {
                    let _ = writeln!(s, "{},{},{},{:.9},{}", r.w, r.n, r.m, r.dimension, classes);
                } else {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>4} {:>4} {:>12.9}  {}",
                        r.w, r.n, r.m, r.dimension, classes
                    );
                }
            }
            s
        }
        f => return Err(unsupported("solve-dim", f)),
    })
}
