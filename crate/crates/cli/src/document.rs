use charquant_core::engine::VerificationReport;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub config: ConfigEcho,
    pub reports: Vec<ReportProjection>,
    pub skipped: Vec<Skipped>,
    pub overall_pass: bool,
}

#[derive(Serialize, Debug)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// The effective configuration, defaults included.
#[derive(Serialize, Debug)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub format: String,
    pub p: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    /// One order bound per prime, aligned with `p`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all: Option<bool>,
}

impl ConfigEcho {
    pub fn new(command: &'static str, format: &str) -> Self {
        Self {
            command,
            format: format.to_string(),
            p: Vec::new(),
            coefficients: None,
            max_degree: None,
            max_order: None,
            normalized: None,
            points: None,
            samples: None,
            seed: None,
            strict: None,
            all: None,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Skipped {
    pub suite: String,
    pub p: u32,
    pub reason: String,
}

#[derive(Serialize, Debug)]
pub struct ReportProjection {
    pub suite: String,
    pub p: u32,
    pub spec: Option<String>,
    pub pass: bool,
    pub degrees: Vec<Degree>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct Degree {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl From<&VerificationReport> for ReportProjection {
    fn from(r: &VerificationReport) -> Self {
        Self {
            suite: r.suite.clone(),
            p: r.p,
            spec: r.spec.clone(),
            pass: r.passed(),
            degrees: r
                .summaries
                .iter()
                .map(|s| Degree {
                    degree: s.degree,
                    free_rank: s.free_rank,
                    torsion: s.torsion.iter().map(|t| t.to_coeff_string()).collect(),
                })
                .collect(),
            checks: r
                .checks
                .iter()
                .map(|c| Check { name: c.name.clone(), pass: c.pass, detail: c.detail.clone() })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

impl ReportDocument {
    pub fn new(config: ConfigEcho, reports: &[VerificationReport], skipped: Vec<Skipped>) -> Self {
        let reports: Vec<ReportProjection> = reports.iter().map(ReportProjection::from).collect();
        let overall_pass = !reports.is_empty() && reports.iter().all(|r| r.pass);
        Self {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "charquant", version: env!("CARGO_PKG_VERSION") },
            config,
            reports,
            skipped,
            overall_pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&format!("== {} (p = {}): {}\n", r.suite, r.p, verdict(r.pass)));
            if let Some(spec) = &r.spec {
                out.push_str(&format!("complex: {spec}\n"));
            }
            if !r.degrees.is_empty() {
                let rows: Vec<Vec<String>> = r
                    .degrees
                    .iter()
                    .map(|d| {
                        let torsion = if d.torsion.is_empty() { "-".to_string() } else { d.torsion.join(", ") };
                        vec![format!("H^{}", d.degree), d.free_rank.to_string(), torsion]
                    })
                    .collect();
                out.push_str(&table(&["degree", "free rank", "torsion"], &rows));
            }
            let rows: Vec<Vec<String>> =
                r.checks.iter().map(|c| vec![c.name.clone(), verdict(c.pass).to_string(), c.detail.clone()]).collect();
            out.push_str(&table(&["check", "result", "detail"], &rows));
            for n in &r.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out.push('\n');
        }
        if !self.skipped.is_empty() {
            let rows: Vec<Vec<String>> =
                self.skipped.iter().map(|s| vec![s.suite.clone(), s.p.to_string(), s.reason.clone()]).collect();
            out.push_str("== skipped\n");
            out.push_str(&table(&["suite", "p", "reason"], &rows));
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", verdict(self.overall_pass)));
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Left-aligned columns separated by two spaces; the last column is not padded.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        let mut s = String::new();
        for (i, cell) in cells.into_iter().enumerate() {
            s.push_str(cell);
            if i != last {
                s.push_str(&" ".repeat(widths[i] - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_columns_align() {
        let t = table(&["a", "bb"], &[vec!["long".into(), "x".into()], vec!["s".into(), "y".into()]]);
        assert_eq!(t, "a     bb\n----  --\nlong  x\ns     y\n");
    }

    #[test]
    fn overall_verdict_needs_every_check() {
        let mut ok = VerificationReport::new("a", 2);
        ok.check("c", true, "");
        let mut bad = VerificationReport::new("b", 2);
        bad.check("c", false, "");
        let config = || ConfigEcho::new("report", "json");
        assert!(ReportDocument::new(config(), &[ok.clone()], Vec::new()).overall_pass);
        assert!(!ReportDocument::new(config(), &[ok, bad], Vec::new()).overall_pass);
        assert!(!ReportDocument::new(config(), &[], Vec::new()).overall_pass);
    }
}
