use std::time::Instant;

use charquant_core::engine::{self, ComplexSpec, Family, TruncationParams, VerificationReport};
use charquant_core::field;
use charquant_core::identities::run_identity_suites;
use charquant_core::tensor::CoefficientTag;
use rayon::prelude::*;

use crate::args::{Coefficients, Command};
use crate::document::{ConfigEcho, Skipped};

pub const MAX_PRIME: u32 = 13;
/// Largest top-degree rank over F_p[t] assembled by a single run.
pub const MAX_COLUMNS: usize = 4000;
/// The crystalline check also assembles the wider truncation `M + p`.
pub const MAX_CRYSTALLINE_COLUMNS: usize = 25_000;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or an unsupported configuration: exit code 2.
    Usage(String),
    /// A computation could not complete: exit code 1.
    Failed(String),
}

impl CliError {
    fn from_core(e: charquant_core::Error) -> Self {
        use charquant_core::Error::*;
        match e {
            InvalidModulus(_) | BoundsTooSmall(..) | TruncationTooSmall(_) | UnsupportedCombination(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Job {
    Hochschild(ComplexSpec),
    FullQuant { p: u32, max_order: u32 },
    Resolution(u32),
    Reduced { p: u32, n: usize },
    Azumaya { p: u32, points: Vec<u32> },
    Identities { p: u32, samples: usize, seed: u64, strict: bool },
    TwoSided { p: u32, n: usize },
    Endpoint(u32),
    DoldKan(ComplexSpec),
    Morita { p: u32, m: usize },
}

impl Job {
    pub fn label(&self) -> String {
        match self {
            Job::Hochschild(s) | Job::DoldKan(s) => s.to_string(),
            Job::FullQuant { p, max_order } => format!("full-quant p={p} M={max_order}"),
            Job::Resolution(p) => format!("resolution p={p}"),
            Job::Reduced { p, n } => format!("reduced-complex p={p} N={n}"),
            Job::Azumaya { p, .. } => format!("azumaya p={p}"),
            Job::Identities { p, .. } => format!("identities p={p}"),
            Job::TwoSided { p, n } => format!("two-sided p={p} N={n}"),
            Job::Endpoint(p) => format!("dhoch-endpoint p={p}"),
            Job::Morita { p, m } => format!("fg-composite p={p} m={m}"),
        }
    }

    pub fn run(&self) -> charquant_core::Result<VerificationReport> {
        match self {
            Job::Hochschild(s) => engine::hochschild_cohomology(s),
            Job::FullQuant { p, max_order } => {
                engine::full_quant_check(*p, TruncationParams::with_order(2, *max_order))
            }
            Job::Resolution(p) => engine::resolution_check(*p),
            Job::Reduced { p, n } => engine::reduced_complex(*p, *n),
            Job::Azumaya { p, points } => engine::azumaya_check(*p, points),
            Job::Identities { p, samples, seed, strict } => identities_report(*p, *samples, *seed, *strict),
            Job::TwoSided { p, n } => engine::two_sided_check(*p, *n),
            Job::Endpoint(p) => engine::dhoch_endpoint_check(*p),
            Job::DoldKan(s) => engine::dold_kan_crosscheck(s),
            Job::Morita { p, m } => engine::fg_composite(*p, *m),
        }
    }
}

fn identities_report(p: u32, samples: usize, seed: u64, strict: bool) -> charquant_core::Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("identities", p);
    for o in run_identity_suites(p, samples, seed)? {
        let detail = format!("{} of {} samples failed", o.failures, o.samples);
        if o.gating || strict {
            report.check(o.name.clone(), o.passed(), detail);
        } else {
            report.note(format!("informational: {}: {detail}", o.name));
        }
        if let Some(n) = &o.note {
            report.note(format!("{}: {n}", o.name));
        }
    }
    report.note(format!("seed {seed}, {samples} samples per suite"));
    report.wall_time = start.elapsed();
    Ok(report)
}

/// The jobs for one command plus suites skipped because they exceed desk scale.
pub struct Plan {
    pub jobs: Vec<Job>,
    pub skipped: Vec<Skipped>,
    pub config: ConfigEcho,
}

fn check_primes(ps: &[u32]) -> Result<(), CliError> {
    if ps.is_empty() {
        return Err(CliError::Usage("at least one prime is required".into()));
    }
    for &p in ps {
        if !field::is_prime(p) || p > MAX_PRIME {
            return Err(CliError::Usage(format!("--p must list primes at most {MAX_PRIME}, got {p}")));
        }
    }
    Ok(())
}

fn check_degree(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--max-degree must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    Ok(())
}

fn hochschild_spec(p: u32, coefficients: Coefficients, n: usize, normalized: bool) -> ComplexSpec {
    let coeff = match coefficients {
        Coefficients::Structure => CoefficientTag::O,
        _ => CoefficientTag::Dres,
    };
    ComplexSpec::new(Family::HhRelOprime, coeff, p, TruncationParams::new(n)).normalized(normalized)
}

fn fits(spec: &ComplexSpec) -> bool {
    engine::expected_rank(spec, spec.truncation.max_degree) <= MAX_COLUMNS
}

fn crystalline_fits(p: u32, max_order: u32) -> bool {
    let wide = (max_order + p + 1) as usize;
    p as usize * wide.pow(3) <= MAX_CRYSTALLINE_COLUMNS
}

fn too_large(label: String) -> String {
    format!("{label} exceeds the desk-scale bound; lower --max-degree or --max-order")
}

pub fn plan(command: &Command, format: &str) -> Result<Plan, CliError> {
    let mut config = ConfigEcho::new(command_name(command), format);
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    match command {
        Command::Hochschild { primes, coefficients, max_degree, max_order, normalized } => {
            check_primes(&primes.p)?;
            check_degree(*max_degree)?;
            config.coefficients = Some(coefficients.name().into());
            config.max_degree = Some(*max_degree);
            config.normalized = Some(*normalized);
            if *coefficients == Coefficients::FullD {
                if *normalized {
                    return Err(CliError::Usage("--normalized is not available with --coefficients full-d".into()));
                }
                let orders: Vec<u32> = primes.p.iter().map(|&p| max_order.unwrap_or(2 * p)).collect();
                for (&p, &m) in primes.p.iter().zip(&orders) {
                    if m < 2 * p {
                        return Err(CliError::Usage(format!("--max-order must be at least 2p = {}, got {m}", 2 * p)));
                    }
                    if !crystalline_fits(p, m) {
                        return Err(CliError::Usage(too_large(format!("full-d with p = {p}, M = {m}"))));
                    }
                    jobs.push(Job::FullQuant { p, max_order: m });
                }
                config.max_order = Some(orders);
            } else {
                if max_order.is_some() {
                    return Err(CliError::Usage("--max-order applies only to --coefficients full-d".into()));
                }
                for &p in &primes.p {
                    let spec = hochschild_spec(p, *coefficients, *max_degree, *normalized);
                    if !fits(&spec) {
                        return Err(CliError::Usage(too_large(spec.to_string())));
                    }
                    jobs.push(Job::Hochschild(spec));
                }
            }
        }
        Command::ResolutionCheck { primes } => {
            check_primes(&primes.p)?;
            for &p in &primes.p {
                if p > 7 {
                    return Err(CliError::Usage(format!("resolution-check supports p <= 7, got {p}")));
                }
                jobs.push(Job::Resolution(p));
            }
        }
        Command::ReducedComplex { primes, max_degree } => {
            check_primes(&primes.p)?;
            check_degree(*max_degree)?;
            config.max_degree = Some(*max_degree);
            jobs.extend(primes.p.iter().map(|&p| Job::Reduced { p, n: *max_degree }));
        }
        Command::Azumaya { primes, points } => {
            check_primes(&primes.p)?;
            for &p in &primes.p {
                let pts = points.clone().unwrap_or_else(|| (0..p).collect());
                if let Some(&a) = pts.iter().find(|&&a| a >= p) {
                    return Err(CliError::Usage(format!("fiber point {a} is not in F_{p}")));
                }
                jobs.push(Job::Azumaya { p, points: pts });
            }
            config.points = points.clone();
        }
        Command::Identities { primes, samples, seed, strict } => {
            check_primes(&primes.p)?;
            check_samples(*samples)?;
            config.samples = Some(*samples);
            config.seed = Some(*seed);
            config.strict = Some(*strict);
            jobs.extend(primes.p.iter().map(|&p| Job::Identities {
                p,
                samples: *samples,
                seed: *seed,
                strict: *strict,
            }));
        }
        Command::TwoSided { primes, max_degree } => {
            check_primes(&primes.p)?;
            check_degree(*max_degree)?;
            config.max_degree = Some(*max_degree);
            for &p in &primes.p {
                if p > 3 {
                    return Err(CliError::Usage(format!("two-sided supports p in {{2, 3}}, got {p}")));
                }
                jobs.push(Job::TwoSided { p, n: *max_degree });
            }
        }
        Command::Report { primes, all, max_degree, samples, seed, strict } => {
            check_primes(&primes.p)?;
            check_degree(*max_degree)?;
            check_samples(*samples)?;
            let n = *max_degree;
            config.max_degree = Some(n);
            config.samples = Some(*samples);
            config.seed = Some(*seed);
            config.strict = Some(*strict);
            config.all = Some(*all);
            if *all {
                config.max_order = Some(primes.p.iter().map(|&p| 2 * p).collect());
            }
            for &p in &primes.p {
                let mut push = |job: Job, ok: bool, reason: String| {
                    if ok {
                        jobs.push(job);
                    } else {
                        skipped.push(Skipped { suite: job.label(), p, reason });
                    }
                };
                for coefficients in [Coefficients::RestrictedD, Coefficients::Structure] {
                    let spec = hochschild_spec(p, coefficients, n, false);
                    push(Job::Hochschild(spec), fits(&spec), too_large(spec.to_string()));
                }
                push(Job::Resolution(p), p <= 7, "the resolution check supports p <= 7".into());
                push(Job::Reduced { p, n }, true, String::new());
                push(Job::Azumaya { p, points: (0..p).collect() }, true, String::new());
                push(Job::TwoSided { p, n }, p <= 3, "the two-sided complex is checked for p <= 3".into());
                push(Job::Identities { p, samples: *samples, seed: *seed, strict: *strict }, true, String::new());
                if !*all {
                    continue;
                }
                let normalized = hochschild_spec(p, Coefficients::RestrictedD, n, true);
                push(Job::Hochschild(normalized), fits(&normalized), too_large(normalized.to_string()));
                push(
                    Job::FullQuant { p, max_order: 2 * p },
                    crystalline_fits(p, 2 * p),
                    too_large(format!("full-d with p = {p}, M = {}", 2 * p)),
                );
                push(Job::Endpoint(p), p <= 7, "the endpoint check uses the resolution, limited to p <= 7".into());
                for coefficients in [Coefficients::RestrictedD, Coefficients::Structure] {
                    let spec = hochschild_spec(p, coefficients, 2, false);
                    push(Job::DoldKan(spec), fits(&spec), too_large(spec.to_string()));
                }
                for m in 1..=2 {
                    push(Job::Morita { p, m }, true, String::new());
                }
            }
        }
    }
    config.p = command_primes(command).to_vec();
    Ok(Plan { jobs, skipped, config })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Hochschild { .. } => "hochschild",
        Command::ResolutionCheck { .. } => "resolution-check",
        Command::ReducedComplex { .. } => "reduced-complex",
        Command::Azumaya { .. } => "azumaya",
        Command::Identities { .. } => "identities",
        Command::TwoSided { .. } => "two-sided",
        Command::Report { .. } => "report",
    }
}

fn command_primes(command: &Command) -> &[u32] {
    match command {
        Command::Hochschild { primes, .. }
        | Command::ResolutionCheck { primes }
        | Command::ReducedComplex { primes, .. }
        | Command::Azumaya { primes, .. }
        | Command::Identities { primes, .. }
        | Command::TwoSided { primes, .. }
        | Command::Report { primes, .. } => &primes.p,
    }
}

/// Runs the jobs in parallel and returns reports in job order.
pub fn execute(jobs: &[Job]) -> Result<Vec<VerificationReport>, CliError> {
    jobs.par_iter()
        .map(|job| {
            let label = job.label();
            eprintln!("charquant: running {label}");
            let start = Instant::now();
            let report = job.run().map_err(CliError::from_core)?;
            let verdict = if report.passed() { "pass" } else { "FAIL" };
            eprintln!("charquant: {label}: {verdict} ({:.2}s)", start.elapsed().as_secs_f64());
            Ok(report)
        })
        .collect()
}
