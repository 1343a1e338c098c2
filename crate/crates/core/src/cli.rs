//! Command-line front end. Every command prints one JSON document (or a table)
//! on stdout and reports success or failure through [`ExitStatus`] only.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catlin_dangelo::{cd_report, CdError, CdMode, CdParams};
use crate::groebner::{local_multiplicity, origin_isolated, quotient_dimension, GroebnerBasis, MonomialOrder};
use crate::kohn_effective3d::{run_effective3d, Effective3dConfig, Effective3dError};
use crate::kohn_full_radical::{run_full_radical, Caps, FullRadicalError};
use crate::matrix_lab::{compare_procedures, MatrixFile};
use crate::multiplier_core::{verify_certificate, CertificateJson, DomainFile, SpecialDomain};
use crate::polyring::Poly;

pub const REPORT_SCHEMA: &str = "kohn-report/1";

/// Ceiling for the local multiplicity probe of `multiplicity`.
const LOCAL_MULTIPLICITY_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    VerificationFailure,
    InputError,
    CapExceeded,
    Internal,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::VerificationFailure => 1,
            ExitStatus::InputError => 2,
            ExitStatus::CapExceeded => 3,
            ExitStatus::Internal => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Effective,
    Ineffective,
    Both,
}

impl From<ModeArg> for CdMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Effective => CdMode::Effective,
            ModeArg::Ineffective => CdMode::Ineffective,
            ModeArg::Both => CdMode::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kohn", version, about = "Exact multiplier-ideal computations on special domains")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity of the generators at the origin, with the global staircase.
    Multiplicity { domain_file: PathBuf },
    /// Full-real-radical loop; writes a kohn-trace/1 document.
    FullRadical {
        domain_file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_rounds: u32,
        #[arg(long, default_value_t = 64)]
        power_cap: u32,
        #[arg(long, default_value_t = 6)]
        radical_degree_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Effective algorithm in two variables; writes a self-verified kohn-cert/1 certificate.
    Effective3d {
        domain_file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempts per genericity search.
        #[arg(long, default_value_t = 24)]
        retries: u32,
        /// Largest total degree a chain payload may reach.
        #[arg(long, default_value_t = 1024)]
        degree_budget: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The family z1^M, z2^N + z2*z1^K.
    CatlinDangelo {
        #[arg(long = "M")]
        m: u32,
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "K")]
        k: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long, default_value_t = 8)]
        max_rounds: u32,
        #[arg(long, default_value_t = 64)]
        power_cap: u32,
        #[arg(long, default_value_t = 6)]
        radical_degree_cap: u32,
    },
    /// Adjugate vector multiplier of a matrix versus the differential of its determinant.
    MatrixLab { matrix_file: PathBuf },
    /// Replays a certificate against a domain.
    Verify { domain_file: PathBuf, cert_file: PathBuf },
}

/// What a command hands back to `main`: a document for stdout and an exit status.
#[derive(Debug)]
pub struct Outcome {
    pub status: ExitStatus,
    pub report: Value,
}

impl Outcome {
    fn new(status: ExitStatus, report: Value) -> Self {
        Outcome { status, report }
    }

    fn input_error(msg: impl ToString) -> Self {
        Self::error(ExitStatus::InputError, msg)
    }

    fn error(status: ExitStatus, msg: impl ToString) -> Self {
        Outcome::new(
            status,
            json!({"schema": REPORT_SCHEMA, "error": msg.to_string(), "exit_code": status.code()}),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.report).expect("values serialize"),
            Format::Table => render_table(&self.report),
        }
    }
}

/// Flattens a JSON document into `key  value` lines.
pub fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, rows);
                }
            }
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = xs.iter().map(scalar_text).collect();
                rows.push((prefix.to_string(), format!("[{}]", items.join(", "))));
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, rows);
                }
            }
            _ => rows.push((prefix.to_string(), scalar_text(v))),
        }
    }
    fn scalar_text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_domain(path: &Path) -> Result<SpecialDomain, String> {
    let file: DomainFile = read_json(path)?;
    SpecialDomain::from_file(&file).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes through a sibling temporary file so readers never see a partial document.
pub fn write_atomic(path: &Path, value: &impl Serialize) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn show_all(domain: &SpecialDomain, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| domain.show(p)).collect()
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Multiplicity { domain_file } => cmd_multiplicity(domain_file),
        Command::FullRadical {
            domain_file,
            max_rounds,
            power_cap,
            radical_degree_cap,
            out,
        } => {
            let caps = Caps {
                max_rounds: *max_rounds,
                power_cap: *power_cap,
                radical_degree_cap: *radical_degree_cap,
            };
            cmd_full_radical(domain_file, caps, out.as_deref())
        }
        Command::Effective3d {
            domain_file,
            seed,
            retries,
            degree_budget,
            out,
        } => {
            let config = Effective3dConfig {
                seed: *seed,
                retries: *retries,
                max_payload_degree: *degree_budget,
            };
            cmd_effective3d(domain_file, config, out.as_deref())
        }
        Command::CatlinDangelo {
            m,
            n,
            k,
            mode,
            max_rounds,
            power_cap,
            radical_degree_cap,
        } => {
            let caps = Caps {
                max_rounds: *max_rounds,
                power_cap: *power_cap,
                radical_degree_cap: *radical_degree_cap,
            };
            cmd_catlin_dangelo(*m, *n, *k, (*mode).into(), caps)
        }
        Command::MatrixLab { matrix_file } => cmd_matrix_lab(matrix_file),
        Command::Verify { domain_file, cert_file } => cmd_verify(domain_file, cert_file),
    }
}

pub fn cmd_multiplicity(domain_file: &Path) -> Outcome {
    let domain = match load_domain(domain_file) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let gens = domain.generators();
    let isolated = origin_isolated(gens);
    let local = if isolated {
        local_multiplicity(gens, LOCAL_MULTIPLICITY_CAP)
    } else {
        None
    };
    let gb = GroebnerBasis::new(domain.nvars(), gens, MonomialOrder::DegLex);
    let staircase = gb
        .standard_monomials()
        .map(|ms| ms.into_iter().map(|m| domain.show(&Poly::monomial(m, crate::polyring::GaussRat::from_int(1)))).collect::<Vec<_>>());
    let q = match local {
        Some(q) => json!(q),
        None => json!("infinite"),
    };
    let status = if isolated && local.is_none() {
        ExitStatus::CapExceeded
    } else {
        ExitStatus::Success
    };
    Outcome::new(
        status,
        json!({
            "schema": REPORT_SCHEMA,
            "command": "multiplicity",
            "domain": domain.to_file(),
            "q": q,
            "origin_isolated": isolated,
            "global_quotient_dimension": quotient_dimension(gens).to_string(),
            "groebner_basis": show_all(&domain, gb.basis()),
            "staircase": staircase,
            "local_multiplicity_cap": LOCAL_MULTIPLICITY_CAP,
        }),
    )
}

pub fn cmd_full_radical(domain_file: &Path, caps: Caps, out: Option<&Path>) -> Outcome {
    let domain = match load_domain(domain_file) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let outcome = match run_full_radical(&domain, caps) {
        Ok(o) => o,
        Err(e @ FullRadicalError::NotIsolated) => return Outcome::input_error(e),
        Err(e) => return Outcome::error(ExitStatus::Internal, e),
    };
    let trace = outcome.to_json(&domain);
    let status = if outcome.cap_exceeded() {
        ExitStatus::CapExceeded
    } else {
        ExitStatus::Success
    };
    let mut report = serde_json::to_value(&trace).expect("trace serializes");
    if let Some(path) = out {
        if let Err(e) = write_atomic(path, &trace) {
            return Outcome::input_error(format!("{}: {e}", path.display()));
        }
        report["written_to"] = json!(path.display().to_string());
    }
    report["exit_code"] = json!(status.code());
    Outcome::new(status, report)
}

pub fn cmd_effective3d(domain_file: &Path, config: Effective3dConfig, out: Option<&Path>) -> Outcome {
    let domain = match load_domain(domain_file) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let echo = json!({
        "seed": config.seed,
        "retries": config.retries,
        "degree_budget": config.max_payload_degree,
    });
    let run = match run_effective3d(&domain, &config) {
        Ok(r) => r,
        Err(e) => {
            let status = match &e {
                e if e.is_cap() => ExitStatus::CapExceeded,
                Effective3dError::NotTwoDimensional(_) | Effective3dError::NotIsolated | Effective3dError::Unsupported(_) => {
                    ExitStatus::InputError
                }
                _ => ExitStatus::Internal,
            };
            let mut o = Outcome::error(status, e);
            o.report["config"] = echo;
            return o;
        }
    };
    let cert = run.cert.to_json();
    let verdict = verify_certificate(&cert, &domain);
    let status = if verdict.ok {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailure
    };
    let mut report = json!({
        "schema": REPORT_SCHEMA,
        "command": "effective3d",
        "config": echo,
        "domain": domain.to_file(),
        "route": run.route,
        "q": run.q,
        "final_multiplier": cert.steps.last().map(|s| s.payload[0].clone()),
        "final_order": run.final_order.to_string(),
        "formula_order": run.formula_order.to_string(),
        "meets_formula_order": run.final_order >= run.formula_order,
        "wedge_checks": run.wedge_checks,
        "steps": cert.steps.len(),
        "verification": verdict,
        "exit_code": status.code(),
    });
    if let Some(s1) = &run.step_one {
        report["step_one"] = json!({
            "attempts": s1.attempts,
            "h2_star": domain.show(&s1.h2_star),
            "h2_hat": domain.show(&s1.h2_hat),
            "k1": s1.k1,
        });
    }
    if let Some(s2) = &run.step_two {
        report["step_two"] = json!({
            "attempts": s2.attempts,
            "h1": domain.show(&s2.h1),
            "w": show_all(&domain, &s2.w),
            "multiplicities": s2.multiplicities,
            "weierstrass_degree": s2.weierstrass.degree,
            "weierstrass_lead_power": s2.weierstrass.lead_power,
        });
    }
    match out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &cert) {
                return Outcome::input_error(format!("{}: {e}", path.display()));
            }
            report["written_to"] = json!(path.display().to_string());
        }
        None => report["certificate"] = serde_json::to_value(&cert).expect("certificate serializes"),
    }
    Outcome::new(status, report)
}

pub fn cmd_catlin_dangelo(m: u32, n: u32, k: u32, mode: CdMode, caps: Caps) -> Outcome {
    let params = match CdParams::new(m, n, k) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    match cd_report(params, mode, caps) {
        Ok(r) => {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["caps"] = serde_json::to_value(caps).expect("caps serialize");
            v["exit_code"] = json!(0);
            Outcome::new(ExitStatus::Success, v)
        }
        Err(e @ CdError::Params { .. }) => Outcome::input_error(e),
        Err(e) => Outcome::error(ExitStatus::Internal, e),
    }
}

pub fn cmd_matrix_lab(matrix_file: &Path) -> Outcome {
    let file: MatrixFile = match read_json(matrix_file) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e),
    };
    let a = match file.parse() {
        Ok(a) => a,
        Err(e) => return Outcome::input_error(e),
    };
    let report = compare_procedures(&a);
    let mut v = serde_json::to_value(report.to_json(&file.vars)).expect("report serializes");
    v["exit_code"] = json!(0);
    Outcome::new(ExitStatus::Success, v)
}

pub fn cmd_verify(domain_file: &Path, cert_file: &Path) -> Outcome {
    let domain = match load_domain(domain_file) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let cert: CertificateJson = match read_json(cert_file) {
        Ok(c) => c,
        // A certificate that no longer parses has been damaged: a failed check, not bad usage.
        Err(e) if cert_file.exists() => {
            return Outcome::error(ExitStatus::VerificationFailure, format!("certificate unreadable: {e}"))
        }
        Err(e) => return Outcome::input_error(e),
    };
    let verdict = verify_certificate(&cert, &domain);
    let status = if verdict.ok {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailure
    };
    Outcome::new(
        status,
        json!({
            "schema": REPORT_SCHEMA,
            "command": "verify",
            "ok": verdict.ok,
            "steps_checked": verdict.steps_checked,
            "failing_step": verdict.failing_step,
            "reason": verdict.reason,
            "exit_code": status.code(),
        }),
    )
}
