//! `umbral`: command-line front end for the series and verification suites.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use umbral_core::operator::{build_tn, OperatorTerm, Route};
use umbral_core::presets::{FamilySource, FamilySpec};
use umbral_core::rational;
use umbral_core::report::SeriesJson;
use umbral_core::sheffer::{self, BernoulliReport};
use umbral_core::stirling::{self, LimitKind, LimitReport};
use umbral_core::umbral::BinomialFamily;
use umbral_core::verify::{self, Suite, VerifyConfig, ALL_SUITES};
use umbral_core::Rational;

const DEFAULT_ORDER: usize = 12;
const DEFAULT_DEPTH: usize = 6;
/// Limit targets are evaluated at `1/alpha`, which needs a long truncation.
const LIMITS_ORDER: usize = 72;

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Exact series tools for binomial-type sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Flags,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Family: id, exp1, geom, nu, poly(c1, c2, ..) or [c0, c1, ..].
    #[arg(long = "f", global = true, value_name = "SPEC")]
    family: Option<String>,
    /// Truncation order of the family series.
    #[arg(long, global = true, value_name = "N")]
    order: Option<usize>,
    /// Depth in alpha^{-1} (or number of terms).
    #[arg(long, global = true, value_name = "K")]
    depth: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rows of p_n(alpha) for n <= order.
    Pseq,
    /// f, its inverse, f/f' and omega.
    Omega,
    /// q_k(s) = k! [x^k] (x/f)^s for k <= depth.
    Q,
    /// T_n(s, d/ds) for n <= depth.
    Tn,
    /// Terms of the log expansion of p_s(s/alpha).
    Stirling,
    /// Limit samples at alpha for n up to --n-max.
    Limits {
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
    },
    /// Sheffer sequence with l = x/(e^x - 1) and the log experiment.
    Sheffer,
    /// Run one suite or all of them.
    Verify {
        /// series, umbral, operator, stirling, sheffer, conjugation or all.
        suite: String,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    f: Option<String>,
    order: Option<usize>,
    depth: Option<usize>,
    #[serde(default)]
    json: bool,
    out: Option<PathBuf>,
}

struct Settings {
    family: Option<FamilySource>,
    order: usize,
    order_given: bool,
    depth: usize,
    json: bool,
    out: Option<PathBuf>,
}

fn load_config(path: &Path) -> anyhow::Result<ConfigFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow!(
            "config {}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })
}

impl Settings {
    fn resolve(flags: Flags) -> anyhow::Result<Self> {
        let cfg = match &flags.config {
            Some(p) => load_config(p)?,
            None => ConfigFile::default(),
        };
        let family = match flags.family.or(cfg.f) {
            Some(text) => Some(text.parse::<FamilySource>().with_context(|| format!("--f '{text}'"))?),
            None => None,
        };
        let order = flags.order.or(cfg.order);
        Ok(Settings {
            family,
            order: order.unwrap_or(DEFAULT_ORDER),
            order_given: order.is_some(),
            depth: flags.depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH),
            json: flags.json || cfg.json,
            out: flags.out.or(cfg.out),
        })
    }

    fn source(&self) -> FamilySource {
        self.family.clone().unwrap_or(FamilySource::Exp1)
    }

    fn family(&self, order: usize) -> anyhow::Result<BinomialFamily> {
        Ok(FamilySpec::new(self.source(), order).build()?)
    }
}

#[derive(Serialize)]
struct Header {
    command: &'static str,
    family: String,
    order: usize,
}

#[derive(Serialize)]
struct PolyRow {
    n: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct PseqOut {
    #[serde(flatten)]
    header: Header,
    rows: Vec<PolyRow>,
}

#[derive(Serialize)]
struct OmegaOut {
    #[serde(flatten)]
    header: Header,
    f: SeriesJson,
    phi: SeriesJson,
    tau_f: SeriesJson,
    omega: SeriesJson,
}

#[derive(Serialize)]
struct QRow {
    k: usize,
    q: String,
}

#[derive(Serialize)]
struct QOut {
    #[serde(flatten)]
    header: Header,
    rows: Vec<QRow>,
}

#[derive(Serialize)]
struct TnRow {
    n: usize,
    var: String,
    terms: Vec<OperatorTerm>,
}

#[derive(Serialize)]
struct TnOut {
    #[serde(flatten)]
    header: Header,
    operators: Vec<TnRow>,
}

#[derive(Serialize)]
struct GTerm {
    k: usize,
    s_power: i64,
    series: SeriesJson,
}

#[derive(Serialize)]
struct StirlingOut {
    #[serde(flatten)]
    header: Header,
    log_coeff: String,
    integral_term: SeriesJson,
    g: Vec<GTerm>,
}

#[derive(Serialize)]
struct LimitsOut {
    #[serde(flatten)]
    header: Header,
    limits: Vec<LimitReport>,
}

#[derive(Serialize)]
struct ShefferOut {
    #[serde(flatten)]
    header: Header,
    ell: SeriesJson,
    tau: Vec<PolyRow>,
    theta_holds: bool,
    generating_function_holds: bool,
    log_experiment: BernoulliReport,
}

enum Output {
    Text(String),
    Json(String),
}

fn emit<T: Serialize>(s: &Settings, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<Output> {
    Ok(if s.json {
        Output::Json(serde_json::to_string_pretty(value)?)
    } else {
        Output::Text(text())
    })
}

fn header(command: &'static str, s: &Settings, order: usize) -> Header {
    Header {
        command,
        family: s.source().to_string(),
        order,
    }
}

fn pseq(s: &Settings) -> anyhow::Result<Output> {
    let fam = s.family(s.order + 1)?;
    let ps = umbral_core::umbral::p_seq(&fam, s.order)?;
    let out = PseqOut {
        header: header("pseq", s, s.order),
        rows: ps.polys.iter().enumerate().map(|(n, p)| PolyRow { n, coeffs: p.to_strings() }).collect(),
    };
    emit(s, &out, || {
        ps.polys.iter().enumerate().map(|(n, p)| format!("p_{n}(a) = {p}\n")).collect()
    })
}

fn omega(s: &Settings) -> anyhow::Result<Output> {
    let fam = s.family(s.order)?;
    let out = OmegaOut {
        header: header("omega", s, s.order),
        f: (&fam.f).into(),
        phi: (&fam.phi).into(),
        tau_f: (&fam.tau_f).into(),
        omega: (&fam.omega).into(),
    };
    emit(s, &out, || {
        format!(
            "f     = {}\nphi   = {}\nf/f'  = {}\nomega = {}\n",
            fam.f, fam.phi, fam.tau_f, fam.omega
        )
    })
}

fn q(s: &Settings) -> anyhow::Result<Output> {
    let order = s.order.max(s.depth + 2);
    let fam = s.family(order)?;
    let qs = fam.q_at_zero(s.depth + 1)?;
    let out = QOut {
        header: header("q", s, order),
        rows: qs.iter().enumerate().map(|(k, q)| QRow { k, q: q.to_string() }).collect(),
    };
    emit(s, &out, || qs.iter().enumerate().map(|(k, q)| format!("q_{k}(s) = {q}\n")).collect())
}

fn tn(s: &Settings) -> anyhow::Result<Output> {
    let fam = s.family(s.order)?;
    let ops = (0..=s.depth)
        .map(|n| build_tn(&fam, n, Route::Nu))
        .collect::<umbral_core::Result<Vec<_>>>()?;
    let out = TnOut {
        header: header("tn", s, s.order),
        operators: ops
            .iter()
            .enumerate()
            .map(|(n, t)| TnRow { n, var: t.var().to_string(), terms: t.describe() })
            .collect(),
    };
    emit(s, &out, || {
        let mut text = String::new();
        for (n, t) in ops.iter().enumerate() {
            text.push_str(&format!("T_{n}:\n"));
            for j in 0..=t.order() {
                let c = t.coeff(j);
                if !c.is_zero() {
                    text.push_str(&format!("  d^{j}: {c}\n"));
                }
            }
        }
        text
    })
}

fn stirling_cmd(s: &Settings) -> anyhow::Result<Output> {
    let fam = s.family(s.order)?;
    let e = stirling::stirling_terms(&fam, s.depth)?;
    let out = StirlingOut {
        header: header("stirling", s, s.order),
        log_coeff: rational::to_string(&e.log_coeff),
        integral_term: (&e.integral_term).into(),
        g: e.g_terms
            .iter()
            .map(|t| GTerm { k: t.k, s_power: t.s_power, series: (&t.series).into() })
            .collect(),
    };
    emit(s, &out, || {
        let mut text = format!(
            "log coefficient {}\nintegral term {}\n",
            rational::to_string(&e.log_coeff),
            e.integral_term
        );
        for t in &e.g_terms {
            text.push_str(&format!("g_{} (s^{}): {}\n", t.k, t.s_power, t.series));
        }
        text
    })
}

fn limits(s: &Settings, alpha: &str, n_max: usize) -> anyhow::Result<Output> {
    let alpha: Rational = rational::parse(alpha).with_context(|| format!("--alpha '{alpha}'"))?;
    let base = if s.order_given { s.order } else { LIMITS_ORDER };
    let order = base.max(n_max + 8);
    let fam = s.family(order)?;
    let reports = [LimitKind::First, LimitKind::Second, LimitKind::Conclusion]
        .into_iter()
        .map(|k| stirling::limit_check(&fam, k, &alpha, n_max))
        .collect::<umbral_core::Result<Vec<_>>>()?;
    emit(s, &LimitsOut { header: header("limits", s, order), limits: reports.clone() }, || {
        let mut text = String::new();
        for r in &reports {
            text.push_str(&format!("{:?}: {} -> {} at alpha = {}\n", r.kind, r.quantity, r.target, r.alpha));
            text.push_str("     n  error\n");
            for smp in &r.samples {
                text.push_str(&format!("  {:4}  {:.6e}\n", smp.n, smp.error));
            }
        }
        text
    })
}

fn sheffer_cmd(s: &Settings) -> anyhow::Result<Output> {
    let order = s.order.max(8);
    let fam = s.family(order + 8)?;
    let ell = sheffer::bernoulli_ell(order + 8)?;
    let sf = sheffer::tau_seq(&fam, &ell, order)?;
    let theta = sheffer::theta_check(&sf, order)?;
    let gf = sheffer::generating_function_check(&sf, order)?;
    let exp = sheffer::bernoulli_log_experiment(s.depth)?;
    let out = ShefferOut {
        header: header("sheffer", s, order),
        ell: (&sf.ell).into(),
        tau: sf.tau_polys.iter().enumerate().map(|(n, p)| PolyRow { n, coeffs: p.to_strings() }).collect(),
        theta_holds: theta.holds,
        generating_function_holds: gf,
        log_experiment: exp,
    };
    emit(s, &out, || {
        let mut text = String::new();
        for (n, p) in sf.tau_polys.iter().enumerate() {
            text.push_str(&format!("tau_{n}(a) = {p}\n"));
        }
        text.push_str(&format!("theta eigenvalues: {}\n", if theta.holds { "ok" } else { "FAIL" }));
        text.push_str(&format!("generating function: {}\n", if gf { "ok" } else { "FAIL" }));
        let e = &out.log_experiment;
        for c in &e.candidates {
            let hits = c.matches.iter().filter(|m| **m).count();
            text.push_str(&format!("{}: {hits}/{} coefficients match\n", c.name, c.matches.len()));
        }
        for note in &e.notes {
            text.push_str(&format!("note: {note}\n"));
        }
        text
    })
}

fn verify_cmd(s: &Settings, which: &str) -> anyhow::Result<(Output, bool)> {
    let suites: Vec<Suite> = if which == "all" {
        ALL_SUITES.to_vec()
    } else {
        vec![which.parse()?]
    };
    let mut cfg = VerifyConfig { order: s.order, depth: s.depth, ..VerifyConfig::default() };
    if let Some(src) = &s.family {
        cfg.families = vec![src.clone()];
    }
    let report = verify::run(&suites, &cfg);
    let passed = report.passed();
    let out = emit(s, &report, || {
        let mut text = report.to_text();
        for r in &report.suites {
            text.push_str(&verify::summary_line(r));
            text.push('\n');
        }
        text.push_str(if passed { "verify: PASS\n" } else { "verify: FAIL\n" });
        text
    })?;
    Ok((out, passed))
}

fn write_output(s: &Settings, out: Output) -> anyhow::Result<()> {
    let mut text = match out {
        Output::Text(t) | Output::Json(t) => t,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &s.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let s = Settings::resolve(cli.opts)?;
    let (out, ok) = match &cli.command {
        Command::Pseq => (pseq(&s)?, true),
        Command::Omega => (omega(&s)?, true),
        Command::Q => (q(&s)?, true),
        Command::Tn => (tn(&s)?, true),
        Command::Stirling => (stirling_cmd(&s)?, true),
        Command::Limits { alpha, n_max } => (limits(&s, alpha, *n_max)?, true),
        Command::Sheffer => (sheffer_cmd(&s)?, true),
        Command::Verify { suite } => verify_cmd(&s, suite)?,
    };
    write_output(&s, out)?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, r#"{"f": "geom", "order": 9, "depth": 3}"#).unwrap();
        let flags = Flags { order: Some(7), config: Some(path), ..Flags::default() };
        let s = Settings::resolve(flags).unwrap();
        assert_eq!((s.order, s.depth), (7, 3));
        assert_eq!(s.source(), FamilySource::Geom);
    }
}
