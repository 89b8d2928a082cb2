//! Command-line front end. Output is canonical JSON (sorted keys) or CSV.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gseries::{Alphabet, GradedSeries, Mono};
use crate::hirota::is_bkp_tau;
use crate::partition::StrictPartition;
use crate::qschur::{q_lambda, q_lambda_half};
use crate::rational::{format_rational, int, parse_rational, rat, Rational};
use crate::spectral::{
    annihilation_check, bgw_constraint_coeffs, canonical_commutator_defect, constraint_check_with,
    constraint_operator, grassmannian_basis, ks_invariance_check, qsc_operator, LaurentWindow, Outcome,
};
use crate::tau::{
    bgw_tau, cutjoin_tau, degree_recursion_check, hurwitz_table, hypergeometric_tau, wave_function, SSpec, Strategy,
    TauSpec, WeightData,
};
use crate::wops::{walg_suite, Central};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bkptau", version, about = "Exact BKP tau-functions, Q-functions and W-algebra checks")]
struct Cli {
    /// TOML file with default parameters; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Q_lambda(t) (or Q_lambda(t/2) with --half).
    Qschur {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        cutoff: Option<u32>,
        #[arg(long)]
        half: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a tau-function by the partition sum, the cut-and-join operator, or both.
    Tau {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Route::Sum)]
        route: Route,
        #[arg(long, value_enum, default_value_t = StrategyArg::Tspace)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hirota bilinear check through a bidegree.
    VerifyHirota {
        #[command(flatten)]
        model: ModelArgs,
        /// Series JSON file to check instead of a model.
        #[arg(long)]
        tau_file: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["DT", "DT2"])]
        bidegree: Option<Vec<u32>>,
        /// Check the fixture 1 + t_3, which is not a tau-function.
        #[arg(long)]
        negative_control: bool,
    },
    /// Cut-and-join routes against the partition sum, plus the degree recursion.
    VerifyCutjoin {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Perturb the t_1 coefficient of the partition sum.
        #[arg(long)]
        negative_control: bool,
    },
    /// Spectral curve, Kac–Schwarz invariance and the Grassmannian point.
    VerifyQsc {
        #[command(flatten)]
        model: ModelArgs,
        /// Certify A Psi = 0 down to z^{-window}.
        #[arg(long)]
        window: Option<u32>,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Perturb the z^{-3} coefficient of Psi.
        #[arg(long)]
        negative_control: bool,
    },
    /// The W-algebra suite and the BGW constraint.
    VerifyWalg {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long, value_enum, default_value_t = CentralArg::Twisted)]
        central: CentralArg,
        /// Shift the Virasoro central term and use hbar/3 in the constraint.
        #[arg(long)]
        negative_control: bool,
    },
    /// Psi(z) = tau(-2[z^{-1}]) down to z^{-window}.
    Wave {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Double Q-expansion of a tau with formal second times.
    HurwitzTable {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Default)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Option<ModelKind>,
    #[arg(long = "N", allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Vec<String>,
    /// Second times as `k=v`.
    #[arg(long, allow_hyphen_values = true)]
    s: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    hbar: Option<String>,
    #[arg(long)]
    cutoff: Option<u32>,
    /// Keep the second times formal, with this cutoff.
    #[arg(long)]
    formal_s: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModelKind {
    Bgw,
    Hypergeometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Sum,
    Cutjoin,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Tspace,
    Qbasis,
}

impl StrategyArg {
    fn strategy(self) -> Strategy {
        match self {
            StrategyArg::Tspace => Strategy::TSpace,
            StrategyArg::Qbasis => Strategy::QBasis,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StrategyArg::Tspace => "tspace",
            StrategyArg::Qbasis => "qbasis",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CentralArg {
    Displayed,
    Twisted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A rational written either as a TOML integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RatValue {
    Int(i64),
    Str(String),
}

impl RatValue {
    fn text(&self) -> String {
        match self {
            RatValue::Int(v) => v.to_string(),
            RatValue::Str(s) => s.clone(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Config {
    model: Option<ModelKind>,
    #[serde(rename = "N")]
    n: Option<RatValue>,
    u: Option<Vec<RatValue>>,
    w: Option<Vec<RatValue>>,
    s: Option<BTreeMap<String, RatValue>>,
    hbar: Option<RatValue>,
    cutoff: Option<u32>,
    formal_s: Option<u32>,
    bidegree: Option<[u32; 2]>,
    window: Option<u32>,
}

impl Config {
    fn load(path: &Option<PathBuf>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

struct Model {
    kind: ModelKind,
    n: Rational,
    spec: TauSpec,
}

impl Model {
    fn parameters(&self) -> Value {
        let list = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let mut p = json!({
            "hbar": format_rational(&self.spec.hbar),
            "u": list(&self.spec.weights.numer),
            "w": list(&self.spec.weights.denom),
        });
        if self.kind == ModelKind::Bgw {
            p["N"] = json!(format_rational(&self.n));
        }
        match &self.spec.s {
            SSpec::Specialized(s) => {
                let s: BTreeMap<String, String> = s.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect();
                p["s"] = json!(s);
            }
            SSpec::Formal { cutoff } => p["formal_s"] = json!(cutoff),
        }
        json!({
            "model": match self.kind { ModelKind::Bgw => "bgw", ModelKind::Hypergeometric => "hypergeometric" },
            "parameters": p,
            "cutoff": self.spec.cutoff,
        })
    }

    fn sum(&self) -> Result<GradedSeries> {
        match (self.kind, &self.spec.s) {
            (ModelKind::Bgw, _) => Ok(bgw_tau(&self.n, &self.spec.hbar, self.spec.cutoff)),
            _ => hypergeometric_tau(&self.spec),
        }
    }

    fn with_cutoff(&self, cutoff: u32) -> Model {
        let mut spec = self.spec.clone();
        spec.cutoff = cutoff;
        Model { kind: self.kind, n: self.n.clone(), spec }
    }
}

fn parse_list(flags: &[String], cfg: &Option<Vec<RatValue>>) -> Result<Vec<Rational>> {
    if !flags.is_empty() {
        return flags.iter().map(|s| parse_rational(s)).collect();
    }
    cfg.iter().flatten().map(|v| parse_rational(&v.text())).collect()
}

fn parse_s(flags: &[String], cfg: &Option<BTreeMap<String, RatValue>>) -> Result<Option<BTreeMap<u32, Rational>>> {
    let pairs: Vec<(String, String)> = if !flags.is_empty() {
        flags
            .iter()
            .map(|f| {
                f.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| Error::Parse(format!("expected k=v, got {f:?}")))
            })
            .collect::<Result<_>>()?
    } else if let Some(map) = cfg {
        map.iter().map(|(k, v)| (k.clone(), v.text())).collect()
    } else {
        return Ok(None);
    };
    let mut s = BTreeMap::new();
    for (k, v) in pairs {
        let k: u32 = k.parse().map_err(|_| Error::Parse(format!("invalid time index {k:?}")))?;
        if k % 2 == 0 {
            return Err(Error::InvalidTimeIndex(k as i64));
        }
        s.insert(k, parse_rational(&v)?);
    }
    Ok(Some(s))
}

impl ModelArgs {
    fn resolve(&self, cfg: &Config, default_cutoff: u32) -> Result<Model> {
        let kind = self.model.or(cfg.model).unwrap_or(ModelKind::Bgw);
        let rat_or = |flag: &Option<String>, c: &Option<RatValue>, default: Rational| -> Result<Rational> {
            match (flag, c) {
                (Some(s), _) => parse_rational(s),
                (None, Some(v)) => parse_rational(&v.text()),
                (None, None) => Ok(default),
            }
        };
        let hbar = rat_or(&self.hbar, &cfg.hbar, Rational::one())?;
        let cutoff = self.cutoff.or(cfg.cutoff).unwrap_or(default_cutoff);
        let formal = self.formal_s.or(cfg.formal_s);
        let s = parse_s(&self.s, &cfg.s)?;
        let (n, weights) = match kind {
            ModelKind::Bgw => {
                let n = rat_or(&self.n, &cfg.n, Rational::zero())?;
                (n.clone(), WeightData::bgw(n))
            }
            ModelKind::Hypergeometric => {
                (Rational::zero(), WeightData::new(parse_list(&self.u, &cfg.u)?, parse_list(&self.w, &cfg.w)?))
            }
        };
        let s = match (kind, formal) {
            (ModelKind::Hypergeometric, Some(ds)) => SSpec::Formal { cutoff: ds },
            (ModelKind::Bgw, Some(_)) => return Err(Error::Unsupported("the BGW model fixes s".into())),
            (ModelKind::Bgw, None) => {
                if s.is_some() {
                    return Err(Error::Unsupported("the BGW model fixes s".into()));
                }
                SSpec::Specialized([(1, rat(1, 2))].into_iter().collect())
            }
            (ModelKind::Hypergeometric, None) => {
                SSpec::Specialized(s.unwrap_or_else(|| [(1, rat(1, 2))].into_iter().collect()))
            }
        };
        let spec = TauSpec { weights, s, hbar, cutoff };
        spec.validate()?;
        Ok(Model { kind, n, spec })
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::InsufficientCutoff { .. } | Error::InsufficientWindow { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

fn exit_for_outcome(o: Outcome) -> i32 {
    match o {
        Outcome::Pass => EXIT_PASS,
        Outcome::Fail => EXIT_FAIL,
        Outcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn worst(outcomes: &[Outcome]) -> Outcome {
    if outcomes.contains(&Outcome::Fail) {
        Outcome::Fail
    } else if outcomes.contains(&Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    }
}

fn series_csv(f: &GradedSeries) -> String {
    let mut out = String::new();
    if f.alphabet().is_joint() {
        out.push_str("monomial,monomial2,coeff\n");
        for ((a, b), c) in f.terms() {
            out.push_str(&format!("{a},{b},{}\n", format_rational(c)));
        }
    } else {
        out.push_str("monomial,coeff\n");
        for (a, c) in f.mono_terms() {
            out.push_str(&format!("{a},{}\n", format_rational(c)));
        }
    }
    out
}

fn two_series_csv(a: &GradedSeries, b: &GradedSeries) -> String {
    let mut rows: BTreeMap<Mono, (Rational, Rational)> = BTreeMap::new();
    for (m, c) in a.mono_terms() {
        rows.entry(m.clone()).or_default().0 = c.clone();
    }
    for (m, c) in b.mono_terms() {
        rows.entry(m.clone()).or_default().1 = c.clone();
    }
    let mut out = String::from("monomial,sum,cutjoin\n");
    for (m, (x, y)) in rows {
        out.push_str(&format!("{m},{},{}\n", format_rational(&x), format_rational(&y)));
    }
    out
}

fn laurent_csv(w: &LaurentWindow) -> String {
    let mut out = String::from("power,coeff\n");
    for p in (w.zmin..=w.zmax).rev() {
        let c = w.coeff(p).unwrap_or_else(Rational::zero);
        out.push_str(&format!("{p},{}\n", format_rational(&c)));
    }
    out
}

fn series_value(f: &GradedSeries) -> Value {
    serde_json::to_value(f.to_json()).expect("series serializes")
}

fn parse_lambda(text: &str) -> Result<StrictPartition> {
    let parts = text
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("invalid part {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    StrictPartition::new(parts)
}

struct Emit {
    text: String,
    code: i32,
}

impl Emit {
    fn json(v: Value, code: i32) -> Emit {
        Emit { text: serde_json::to_string(&v).expect("json") + "\n", code }
    }
}

fn execute(cli: Cli) -> Result<Emit> {
    let cfg = Config::load(&cli.config)?;
    match cli.command {
        Command::Qschur { lambda, cutoff, half, format } => {
            let lambda = parse_lambda(&lambda)?;
            let d = cutoff.or(cfg.cutoff).unwrap_or(lambda.size());
            let f = if half { q_lambda_half(&lambda, d) } else { q_lambda(&lambda, d) };
            Ok(match format {
                Format::Json => Emit::json(series_value(&f), EXIT_PASS),
                Format::Csv => Emit { text: series_csv(&f), code: EXIT_PASS },
            })
        }
        Command::Tau { model, route, strategy, format } => {
            let model = model.resolve(&cfg, 8)?;
            let mut out = model.parameters();
            out["route"] = json!(match route {
                Route::Sum => "sum",
                Route::Cutjoin => "cutjoin",
                Route::Both => "both",
            });
            match route {
                Route::Sum => {
                    let f = model.sum()?;
                    if format == Format::Csv {
                        return Ok(Emit { text: series_csv(&f), code: EXIT_PASS });
                    }
                    out["series"] = series_value(&f);
                    Ok(Emit::json(out, EXIT_PASS))
                }
                Route::Cutjoin => {
                    let f = cutjoin_tau(&model.spec, strategy.strategy())?;
                    if format == Format::Csv {
                        return Ok(Emit { text: series_csv(&f), code: EXIT_PASS });
                    }
                    out["strategy"] = json!(strategy.name());
                    out["series"] = series_value(&f);
                    Ok(Emit::json(out, EXIT_PASS))
                }
                Route::Both => {
                    let a = model.sum()?;
                    let b = cutjoin_tau(&model.spec, strategy.strategy())?;
                    let equal = a == b;
                    let code = if equal { EXIT_PASS } else { EXIT_FAIL };
                    if format == Format::Csv {
                        return Ok(Emit { text: two_series_csv(&a, &b), code });
                    }
                    out["strategy"] = json!(strategy.name());
                    out["sum"] = series_value(&a);
                    out["cutjoin"] = series_value(&b);
                    out["equal"] = json!(equal);
                    Ok(Emit::json(out, code))
                }
            }
        }
        Command::VerifyHirota { model, tau_file, bidegree, negative_control } => {
            let [dt, dt2] = match bidegree {
                Some(v) => [v[0], v[1]],
                None => cfg.bidegree.unwrap_or([5, 5]),
            };
            let (tau, source) = if negative_control {
                let one_plus_t3 = GradedSeries::one(Alphabet::T, dt + dt2).add(&GradedSeries::time(3, dt + dt2, int(1))?)?;
                (one_plus_t3, json!("negative-control: 1+t3"))
            } else if let Some(path) = tau_file {
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                (GradedSeries::from_json_str(&text)?, json!(path.display().to_string()))
            } else {
                let model = model.resolve(&cfg, dt + dt2)?;
                (model.sum()?, model.parameters())
            };
            let report = is_bkp_tau(&tau, dt, dt2)?;
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            let mut out = serde_json::to_value(&report).expect("report");
            out["source"] = source;
            Ok(Emit::json(out, code))
        }
        Command::VerifyCutjoin { model, strategy, negative_control } => {
            let model = model.resolve(&cfg, 8)?;
            let mut sum = model.sum()?;
            if negative_control {
                sum = sum.add(&GradedSeries::time(1, sum.cutoff(), int(1))?)?;
            }
            let strategies = match strategy {
                Some(s) => vec![s],
                None => vec![StrategyArg::Tspace, StrategyArg::Qbasis],
            };
            let mut equal = BTreeMap::new();
            for s in strategies {
                equal.insert(s.name(), cutjoin_tau(&model.spec, s.strategy())? == sum);
            }
            let mut pass = equal.values().all(|&e| e);
            let mut out = model.parameters();
            out["equal"] = json!(equal);
            match degree_recursion_check(&model.spec) {
                Ok(report) => {
                    pass &= report.passed;
                    out["recursion"] = serde_json::to_value(&report).expect("report");
                }
                Err(Error::Unsupported(_)) => out["recursion"] = Value::Null,
                Err(e) => return Err(e),
            }
            out["verdict"] = json!(if pass { "pass" } else { "fail" });
            Ok(Emit::json(out, if pass { EXIT_PASS } else { EXIT_FAIL }))
        }
        Command::VerifyQsc { model, window, kmax, negative_control } => {
            let model = model.resolve(&cfg, 12)?;
            let through = -(window.or(cfg.window).unwrap_or(10) as i64);
            let c = model.spec.cutoff;
            let s = model.spec.effective_s()?;
            let weights = &model.spec.weights;
            let mut psi = wave_function(&model.sum()?, c)?;
            if negative_control {
                psi.add(-3, Rational::one());
            }
            let a = qsc_operator(weights, &s)?;
            let curve = annihilation_check(&a, &psi, through)?;
            let phi1 = grassmannian_basis(weights, &s, 1, -(c as i64))?;
            let phi_match = phi1.eq_on_window(&psi);
            let mut commutator_ok = true;
            for n in -3..=3 {
                commutator_ok &= canonical_commutator_defect(weights, &s, &LaurentWindow::monomial(n, -(c as i64)))?.is_zero();
            }
            let ks = ks_invariance_check(weights, &s, kmax, -(c as i64))?;
            let flag = |b: bool| if b { Outcome::Pass } else { Outcome::Fail };
            let verdict = worst(&[curve.outcome, flag(phi_match), flag(commutator_ok), ks.outcome]);
            let mut out = model.parameters();
            out["annihilation"] = serde_json::to_value(&curve).expect("report");
            out["phi1_matches_wave"] = json!(phi_match);
            out["canonical_commutator"] = json!(commutator_ok);
            out["kac_schwarz"] = serde_json::to_value(&ks).expect("report");
            out["verdict"] = serde_json::to_value(verdict).expect("verdict");
            Ok(Emit::json(out, exit_for_outcome(verdict)))
        }
        Command::VerifyWalg { model, window, central, negative_control } => {
            let window = window.or(cfg.window).unwrap_or(8);
            let central = match central {
                CentralArg::Displayed => Central::Displayed,
                CentralArg::Twisted => Central::Twisted,
            };
            let shift = if negative_control { Rational::one() } else { Rational::zero() };
            let checks = walg_suite(window, central, &shift)?;
            let bgw = model.resolve(&cfg, window)?;
            if bgw.kind != ModelKind::Bgw {
                return Err(Error::Unsupported("the constraint is checked for the BGW model".into()));
            }
            let (mut c2, c0) = bgw_constraint_coeffs(&bgw.n, &bgw.spec.hbar);
            if negative_control {
                c2 = &bgw.spec.hbar * rat(1, 3);
            }
            let op = constraint_operator(&c2, &c0, bgw.spec.cutoff)?;
            let constraint = constraint_check_with(&op, &bgw.n, &bgw.spec.hbar, bgw.spec.cutoff)?;
            let pass = checks.iter().all(|c| c.pass) && constraint.outcome == Outcome::Pass;
            let out = json!({
                "window": window,
                "central": match central { Central::Displayed => "displayed", Central::Twisted => "twisted" },
                "checks": checks,
                "constraint": constraint,
                "constraint_parameters": bgw.parameters(),
                "verdict": if pass { "pass" } else { "fail" },
            });
            Ok(Emit::json(out, if pass { EXIT_PASS } else { EXIT_FAIL }))
        }
        Command::Wave { model, window, format } => {
            let model = model.resolve(&cfg, 8)?;
            let k = window.or(cfg.window).unwrap_or(model.spec.cutoff);
            let psi = wave_function(&model.with_cutoff(model.spec.cutoff).sum()?, k)?;
            Ok(match format {
                Format::Json => {
                    let mut out = model.parameters();
                    out["wave"] = serde_json::from_str(&psi.to_json_string()).expect("laurent json");
                    Emit::json(out, EXIT_PASS)
                }
                Format::Csv => Emit { text: laurent_csv(&psi), code: EXIT_PASS },
            })
        }
        Command::HurwitzTable { model, format } => {
            let mut model = model.resolve(&cfg, 6)?;
            if let SSpec::Specialized(_) = model.spec.s {
                if model.kind == ModelKind::Bgw {
                    return Err(Error::Unsupported("hurwitz-table needs --model hypergeometric".into()));
                }
                model.spec.s = SSpec::Formal { cutoff: model.spec.cutoff };
            }
            let table = hurwitz_table(&model.spec)?;
            Ok(match format {
                Format::Csv => Emit { text: table.to_csv(), code: EXIT_PASS },
                Format::Json => {
                    let entries: Vec<Value> = table
                        .entries
                        .iter()
                        .map(|((l, m), c)| json!({"lambda": l, "mu": m, "coeff": format_rational(c)}))
                        .collect();
                    let mut out = model.parameters();
                    out["entries"] = json!(entries);
                    out["diagonal"] = json!(table.is_diagonal());
                    Emit::json(out, EXIT_PASS)
                }
            })
        }
    }
}

/// Runs the command line, writing results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli) {
        Ok(emit) => {
            let _ = out.write_all(emit.text.as_bytes());
            emit.code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"error": e.to_string()}));
            exit_for(&e)
        }
    }
}
