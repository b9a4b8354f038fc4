//! One line per acceptance criterion: verdict, wall time and the time limit.

mod common;

use std::panic;
use std::time::{Duration, Instant};

use charquant_core::engine::*;
use charquant_core::identities::run_identity_suites;
use charquant_core::tensor::CoefficientTag;

const IDENTITY_SAMPLES: usize = 150;
const SEED: u64 = 42;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<String, String>,
}

fn require(report: &VerificationReport) -> Result<String, String> {
    if report.passed() {
        Ok(report.spec.clone().unwrap_or_else(|| format!("{} p={}", report.suite, report.p)))
    } else {
        let failed: Vec<String> = report.failed_checks().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        Err(format!("{} p={}: {}", report.suite, report.p, failed.join("; ")))
    }
}

fn all(parts: Vec<Result<String, String>>) -> Result<String, String> {
    let mut ok = Vec::new();
    for part in parts {
        ok.push(part?);
    }
    Ok(ok.join(", "))
}

fn spec(family: Family, coeff: CoefficientTag, p: u32, n: usize) -> ComplexSpec {
    ComplexSpec::new(family, coeff, p, TruncationParams::new(n))
}

fn operator_coefficients() -> Result<String, String> {
    all([2, 3]
        .into_iter()
        .map(|p| {
            let r = hochschild_cohomology(&spec(Family::HhRelOprime, CoefficientTag::Dres, p, 3).normalized(true))
                .map_err(|e| e.to_string())?;
            let h = &r.summaries;
            if !(h.len() == 3 && h[0].is_free_of_rank(p as usize) && h[1].is_zero() && h[2].is_zero()) {
                return Err(format!("p={p}: unexpected cohomology {h:?}"));
            }
            require(&r)
        })
        .collect())
}

fn resolution() -> Result<String, String> {
    all([2, 3, 5]
        .into_iter()
        .map(|p| resolution_check(p).map_err(|e| e.to_string()).and_then(|r| require(&r)))
        .collect())
}

fn reduced() -> Result<String, String> {
    all([2, 3, 5]
        .into_iter()
        .map(|p| {
            let r = reduced_complex(p, 5).map_err(|e| e.to_string())?;
            let h = &r.summaries;
            if !(h.len() == 5 && h[0].is_free_of_rank(1) && h[1..].iter().all(|s| s.is_zero())) {
                return Err(format!("p={p}: unexpected cohomology {h:?}"));
            }
            require(&r)
        })
        .collect())
}

fn azumaya() -> Result<String, String> {
    all([2, 3, 5]
        .into_iter()
        .map(|p| {
            let points: Vec<u32> = (0..p).collect();
            azumaya_check(p, &points).map_err(|e| e.to_string()).and_then(|r| require(&r))
        })
        .collect())
}

fn two_sided() -> Result<String, String> {
    let r = two_sided_check(2, 2).map_err(|e| e.to_string())?;
    let h = &r.summaries;
    if !(h[0].is_free_of_rank(4) && h[1].is_zero()) {
        return Err(format!("unexpected cohomology {h:?}"));
    }
    require(&r)
}

fn crystalline() -> Result<String, String> {
    let r = full_quant_check(2, TruncationParams::with_order(2, 4)).map_err(|e| e.to_string())?;
    require(&r)
}

fn structure_sheaf() -> Result<String, String> {
    all([2, 3]
        .into_iter()
        .map(|p| {
            let r = hochschild_cohomology(&spec(Family::HhRelOprime, CoefficientTag::O, p, 3))
                .map_err(|e| e.to_string())?;
            let oracle = hypersurface_oracle(p, 3, false).map_err(|e| e.to_string())?;
            if r.summaries != oracle || !r.summaries.iter().all(|s| s.is_free_of_rank(p as usize)) {
                return Err(format!("p={p}: {:?} vs oracle {oracle:?}", r.summaries));
            }
            require(&r)
        })
        .collect())
}

fn identities() -> Result<String, String> {
    let mut informational = Vec::new();
    let mut gated = Vec::new();
    for p in [2, 3] {
        let outcomes = run_identity_suites(p, IDENTITY_SAMPLES, SEED).map_err(|e| e.to_string())?;
        for o in &outcomes {
            if o.blocks() {
                return Err(format!(
                    "{} p={p}: {} of {} failed, first: {:?}",
                    o.name, o.failures, o.samples, o.first_failure
                ));
            }
            if o.gating && p == 2 {
                gated.push(o.name.clone());
            }
            if !o.gating {
                informational.push(format!("{} p={p}: {} of {} fail", o.name, o.failures, o.samples));
            }
        }
    }
    for line in &informational {
        println!("    informational, not gating: {line}");
    }
    Ok(format!("{IDENTITY_SAMPLES} samples per suite at p=2,3, seed {SEED}: {}", gated.join("; ")))
}

fn coherence() -> Result<String, String> {
    let outcome = panic::catch_unwind(|| {
        let columns = common::exhaustive(&common::restricted_specs(2, 2), 2);
        common::sampled(&common::restricted_specs(3, 2), 2, 200, SEED);
        columns
    })
    .map_err(|_| "assembled matrix disagrees with the value-level differential".to_string())?;
    let t = |n, m| TruncationParams::with_order(n, m);
    let mut specs = Vec::new();
    for p in [2, 3] {
        for coeff in [CoefficientTag::O, CoefficientTag::Dres, CoefficientTag::DresOp] {
            specs.push(spec(Family::HhRelOprime, coeff, p, 2));
        }
    }
    for coeff in [CoefficientTag::O, CoefficientTag::Dfull] {
        specs.push(ComplexSpec::new(Family::HhRelOprimeFull, coeff, 2, t(2, 4)));
    }
    let dold_kan = all(specs
        .iter()
        .map(|s| dold_kan_crosscheck(s).map_err(|e| e.to_string()).and_then(|r| require(&r)))
        .collect())?;
    Ok(format!("{outcome} columns exhaustive at p=2, 200 sampled at p=3; Dold-Kan: {dold_kan}"))
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "restricted operator coefficients give O_X in degree 0",
        limit: Duration::from_secs(30),
        run: operator_coefficients,
    },
    Criterion {
        id: 2,
        title: "2-periodic resolution of Dres is exact",
        limit: Duration::from_secs(60),
        run: resolution,
    },
    Criterion {
        id: 3,
        title: "reduced complex is exact except at degree 0",
        limit: Duration::from_secs(5),
        run: reduced,
    },
    Criterion { id: 4, title: "Dres is Azumaya over F_p[t]", limit: Duration::from_secs(10), run: azumaya },
    Criterion {
        id: 5,
        title: "two-sided complex recovers Dres via chi",
        limit: Duration::from_secs(60),
        run: two_sided,
    },
    Criterion {
        id: 6,
        title: "crystalline operator coefficients give O_X (order-truncated)",
        limit: Duration::from_secs(60),
        run: crystalline,
    },
    Criterion {
        id: 7,
        title: "structure-sheaf coefficients are not perfect",
        limit: Duration::from_secs(30),
        run: structure_sheaf,
    },
    Criterion { id: 8, title: "identity suites", limit: Duration::from_secs(60), run: identities },
    Criterion {
        id: 9,
        title: "oracle coherence and Dold-Kan agreement",
        limit: Duration::from_secs(60),
        run: coherence,
    },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = result.is_ok() && in_time;
        let detail = match &result {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!(
            "[{}] {}. {} ({:.3}s, limit {}s): {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
        if !pass {
            failures.push(c.id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
