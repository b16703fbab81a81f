//! Serialization of reports: JSON, per-degree CSV and a terminal summary.

use std::fmt::Write as _;

use crate::analyzer::InvariantReport;
use crate::error::AnalyzeError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_NON_ISOLATED: i32 = 3;

pub const CSV_HEADER: &str = "k,milnor,smooth,ar,kr,er,hatJ,sd,defect";

/// Pretty JSON. Field order follows the struct definitions, so equal reports
/// serialize to identical bytes.
pub fn to_json(report: &InvariantReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One row per degree `0..=kmax`; relation columns are empty past their range.
pub fn to_csv(report: &InvariantReport) -> String {
    fn cell<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for k in 0..=report.input.kmax {
        let row = [
            k.to_string(),
            cell(report.milnor.dims.get(k)),
            cell(report.milnor.smooth_dims.get(k)),
            cell(report.syzygy.ar.get(k)),
            cell(report.syzygy.kr.get(k)),
            cell(report.syzygy.er.get(k)),
            cell(report.saturation.hatj_dims.get(k)),
            cell(report.saturation.sd_dims.get(k)),
            cell(report.saturation.defects.get(k)),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn exit_code(result: &Result<InvariantReport, AnalyzeError>) -> i32 {
    match result {
        Ok(r) if r.identities_pass() => EXIT_OK,
        Ok(_) => EXIT_CHECK_FAILED,
        Err(AnalyzeError::NonIsolated(_)) => EXIT_NON_ISOLATED,
        Err(_) => EXIT_USAGE,
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn seq<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Human-readable summary for the terminal.
pub fn summary(report: &InvariantReport) -> String {
    let mut s = String::new();
    let m = &report.milnor;
    let _ = writeln!(
        s,
        "f = {}  (n={}, d={}, field={})",
        report.input.poly, report.input.n, report.input.d, report.input.field
    );
    let _ = writeln!(
        s,
        "T={}  tau={}  st={}  ct={}  mdr={}",
        m.t,
        opt(m.tau),
        opt(m.st),
        opt(m.ct),
        opt(report.syzygy.mdr)
    );
    let sat = &report.saturation;
    let _ = writeln!(
        s,
        "sat={}  a-invariant={}  regularity={}",
        opt(sat.sat),
        opt(sat.a_invariant),
        opt(sat.regularity)
    );
    let _ = writeln!(s, "M(f) dims:   {}", seq(&m.dims));
    let _ = writeln!(s, "smooth dims: {}", seq(&m.smooth_dims));
    if !sat.sd_dims.is_empty() {
        let _ = writeln!(s, "SD dims:     {}", seq(&sat.sd_dims));
        let _ = writeln!(s, "defects:     {}", seq(&sat.defects));
    }
    let _ = writeln!(s, "ER dims:     {}", seq(&report.syzygy.er));
    for row in &report.theorem {
        let _ = writeln!(
            s,
            "  k={}: {} = {} + {}  {}",
            row.k,
            row.lhs,
            row.smooth,
            row.defect,
            if row.pass { "ok" } else { "FAIL" }
        );
    }
    for c in &report.checks {
        let tag = match (c.pass, c.kind) {
            (_, crate::analyzer::CheckKind::NotApplicable) => "n/a",
            (true, _) => "ok",
            (false, crate::analyzer::CheckKind::Conjecture) => "counterexample?",
            (false, crate::analyzer::CheckKind::Identity) => "FAIL",
        };
        let _ = writeln!(s, "  [{tag}] {}", c.name);
    }
    if let Some(ci) = &report.ci {
        let _ = writeln!(
            s,
            "complete intersection: {} (degrees {})",
            ci.verdict,
            ci.degrees.as_ref().map_or_else(|| "none".into(), |d| seq(d))
        );
    }
    for w in &report.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{analyze_text, AnalyzeOptions};
    use crate::parse::parse_vars;

    fn xyz() -> InvariantReport {
        analyze_text("x*y*z", &parse_vars("x,y,z"), &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn exit_codes() {
        let mut r = xyz();
        assert_eq!(exit_code(&Ok(r.clone())), EXIT_OK);
        r.checks[0].pass = false;
        assert_eq!(exit_code(&Ok(r)), EXIT_CHECK_FAILED);
        let bad = analyze_text("x^2*y^2", &parse_vars("x,y,z"), &AnalyzeOptions::default());
        assert_eq!(exit_code(&bad), EXIT_NON_ISOLATED);
        let parse = analyze_text("x +", &parse_vars("x,y,z"), &AnalyzeOptions::default());
        assert_eq!(exit_code(&parse), EXIT_USAGE);
    }

    #[test]
    fn csv_shape() {
        let r = xyz();
        let csv = to_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), r.input.kmax + 2);
        assert!(lines[1].starts_with("0,1,1,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 9));
    }

    #[test]
    fn summary_mentions_invariants() {
        let s = summary(&xyz());
        assert!(s.contains("tau=3"));
        assert!(s.contains("[ok] main-theorem"));
    }

    #[test]
    fn smooth_marks_singular_checks() {
        let r = analyze_text("x^3+y^3+z^3", &parse_vars("x,y,z"), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.milnor.tau, Some(0));
        assert_eq!(exit_code(&Ok(r.clone())), EXIT_OK);
        let na = r.checks.iter().filter(|c| c.kind == crate::analyzer::CheckKind::NotApplicable);
        assert!(na.clone().any(|c| c.name == "er-equals-defect"));
        assert!(na.clone().all(|c| c.lhs.is_null() && c.rhs.is_null()));
        assert!(summary(&r).contains("[n/a] ct-range"));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"not-applicable\""));
    }
}
