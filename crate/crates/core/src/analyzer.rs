//! Orchestration: runs every module on one input, evaluates the identities
//! that relate them and assembles an [`InvariantReport`].
//!
//! Identity failures are recorded as data. Only malformed input, an
//! unsupported shape or a failed isolatedness check end the run early, and the
//! latter still carries a partial report.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::AnalyzeError;
use crate::field::{Field, FieldMode, PrimeField, Rationals};
use crate::graded::dim_s;
use crate::milnor::{milnor_profile, Jacobian, MilnorProfile};
use crate::parse::parse_poly;
use crate::poly::{euler_check, HomogPoly};
use crate::saturation::{
    a_invariant, cm_regularity, gorenstein_symmetry_check, saturation_profile, unimodality_check, SatSliceError,
    SaturationProfile,
};
use crate::syzygy::{koszul_hn_dim, syzygy_profile, SyzygyProfile};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub field: FieldMode,
    /// Truncation degree; defaults to `T + 2n + 4`.
    pub kmax: Option<usize>,
    /// Candidate complete-intersection degrees `a_1..a_n` to test.
    pub ci_degrees: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub poly: String,
    pub vars: Vec<String>,
    pub n: usize,
    pub d: u32,
    pub field: String,
    /// False for modular runs: ranks mod p only bound the rational ones from below.
    pub verified: bool,
    pub kmax: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MilnorSection {
    #[serde(rename = "T")]
    pub t: i64,
    pub tau: Option<usize>,
    pub st: Option<usize>,
    pub ct: Option<usize>,
    pub dims: Vec<usize>,
    pub smooth_dims: Vec<i64>,
    pub isolated: bool,
    pub isolated_method: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SyzygySection {
    pub mdr: Option<usize>,
    pub ar: Vec<usize>,
    pub kr: Vec<usize>,
    pub er: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct SaturationSection {
    pub sat: Option<usize>,
    pub a_invariant: Option<i64>,
    pub regularity: Option<i64>,
    #[serde(rename = "hatJ_dims")]
    pub hatj_dims: Vec<usize>,
    pub sd_dims: Vec<usize>,
    pub defects: Vec<i64>,
    pub a_invariant_closed_form: Option<i64>,
    pub regularity_closed_form: Option<i64>,
    /// Degree from which `Ĵ_k = J_k` was assumed.
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// A proven identity; failure means an engine bug or a bad input.
    Identity,
    /// Evidence for an open conjecture; never counted as a failure.
    Conjecture,
    /// Needs a singular input; recorded for smooth inputs with null sides.
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    pub kind: CheckKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub k: i64,
    /// `dim M(f)_{T-k}`
    pub lhs: i64,
    /// `dim M(f_s)_k`
    pub smooth: i64,
    pub defect: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CiAnalysis {
    /// `recovered` (solved from τ and ct) or `supplied` (user candidates).
    pub source: String,
    pub sum: Option<i64>,
    pub product: Option<i64>,
    pub degrees: Option<Vec<usize>>,
    pub verdict: String,
    pub hilbert_identity: Option<bool>,
    pub saturation_match: Option<bool>,
    pub tau_is_product: Option<bool>,
    pub ct_formula: Option<bool>,
}

pub const CI_COMPATIBLE: &str = "CI-compatible";
pub const CI_INCOMPATIBLE: &str = "not CI-compatible";
pub const CI_NO_SOLUTION: &str = "no integer solution";

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub input: InputEcho,
    pub milnor: MilnorSection,
    pub syzygy: SyzygySection,
    pub saturation: SaturationSection,
    pub checks: Vec<Check>,
    pub theorem: Vec<TheoremRow>,
    pub ci: Option<CiAnalysis>,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    /// Whether every proven identity held (conjecture evidence is ignored).
    pub fn identities_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Identity)
            .all(|c| c.pass)
            && self.theorem.iter().all(|r| r.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Identity && !c.pass)
            .collect()
    }
}

/// Parses `text` and analyzes it, echoing the original text.
pub fn analyze_text(text: &str, vars: &[String], options: &AnalyzeOptions) -> Result<InvariantReport, AnalyzeError> {
    let f = parse_poly(text, vars)?;
    run(&f, text.trim().to_string(), vars, options)
}

/// Analyzes an already parsed form; the echo uses its canonical text.
pub fn analyze(f: &HomogPoly, vars: &[String], options: &AnalyzeOptions) -> Result<InvariantReport, AnalyzeError> {
    run(f, f.format_with(vars), vars, options)
}

fn run(f: &HomogPoly, text: String, vars: &[String], options: &AnalyzeOptions) -> Result<InvariantReport, AnalyzeError> {
    if f.nvars() < 2 {
        return Err(AnalyzeError::Unsupported("need at least two variables".into()));
    }
    if vars.len() != f.nvars() {
        return Err(AnalyzeError::Unsupported("variable list does not match the polynomial".into()));
    }
    if f.degree() < 2 {
        return Err(AnalyzeError::Unsupported(format!("degree {} < 2", f.degree())));
    }
    let n = f.nvars() - 1;
    let t = (n as i64 + 1) * (f.degree() as i64 - 2);
    let window_end = (t + n as i64 + 2) as usize;
    let kmax = options.kmax.unwrap_or((t + 2 * n as i64 + 4) as usize);
    if kmax < window_end {
        return Err(AnalyzeError::Unsupported(format!(
            "kmax {kmax} is below T+n+2 = {window_end}, too small for the stabilization window"
        )));
    }
    if let Some(c) = &options.ci_degrees {
        if c.len() != n || c.contains(&0) {
            return Err(AnalyzeError::Unsupported(format!(
                "expected {n} positive candidate degrees, got {c:?}"
            )));
        }
    }
    let echo = InputEcho {
        poly: text,
        vars: vars.to_vec(),
        n,
        d: f.degree(),
        field: options.field.to_string(),
        verified: options.field.is_exact(),
        kmax,
    };
    match options.field {
        FieldMode::Exact => run_in(Jacobian::new(Rationals, f.clone())?, echo, options),
        FieldMode::Modular(p) => run_in(Jacobian::new(PrimeField::new(p)?, f.clone())?, echo, options),
    }
}

fn run_in<F: Field>(jac: Jacobian<F>, echo: InputEcho, options: &AnalyzeOptions) -> Result<InvariantReport, AnalyzeError> {
    let kmax = echo.kmax;
    let n = jac.n();
    let d = jac.degree();
    let t = jac.t();
    let mut warnings = Vec::new();
    if !echo.verified {
        warnings.push(format!(
            "modular run over {}: dimensions are unverified until confirmed by an exact run",
            echo.field
        ));
    }

    let slices = jac.slices(kmax as u32)?;
    let milnor = milnor_profile(&jac, &slices);
    let mmax = kmax as u32 - (d - 1);
    let syzygy = syzygy_profile(&jac, mmax, t)?;

    let mut checks = vec![
        identity("euler-relation", json!(euler_check(jac.poly())), json!(true)),
        {
            let low = (d - 1) as usize;
            let lhs: Vec<usize> = milnor.milnor.dims[..low.min(kmax + 1)].to_vec();
            let rhs: Vec<usize> = (0..lhs.len()).map(|k| dim_s(jac.nvars(), k as i64)).collect();
            identity_eq("milnor-equals-ring-below-d-1", lhs, rhs)
        },
        identity("koszul-inside-relations", json!(syzygy.koszul_inside_all), json!(true)),
        {
            let low = syzygy.kr.iter().take((d - 1) as usize).copied().collect::<Vec<_>>();
            identity_eq("koszul-zero-below-d-1", low.clone(), vec![0; low.len()])
        },
    ];

    let stabilized = milnor.tau.is_some() && milnor.st.is_some();
    if !milnor.isolated.isolated || !stabilized {
        warnings.push(format!(
            "Milnor dimensions are not constant on [T+1, T+n+2] = [{}, {}]; singularities are not isolated (or kmax is too small)",
            t + 1,
            t + n as i64 + 2
        ));
        let report = InvariantReport {
            input: echo,
            milnor: milnor_section(&milnor),
            syzygy: syzygy_section(&syzygy),
            saturation: SaturationSection::default(),
            checks,
            theorem: Vec::new(),
            ci: None,
            warnings,
        };
        return Err(AnalyzeError::NonIsolated(Box::new(report)));
    }
    warnings.push(format!(
        "isolatedness: heuristic (method {}, window [T+1, T+n+2])",
        milnor.isolated.method
    ));

    let (saturation, _) = saturation_profile(&jac, &milnor, &slices).map_err(|e| match e {
        SatSliceError::Graded(g) => AnalyzeError::Graded(g),
        SatSliceError::Saturation(s) => AnalyzeError::Unsupported(s.to_string()),
    })?;

    checks.extend(cross_checks(&milnor, &syzygy, &saturation, n, d));
    let theorem = if milnor.is_smooth() {
        warnings.push("smooth hypersurface: tau = 0, ct and mdr are undefined; theorem rows not applicable".into());
        Vec::new()
    } else {
        theorem_rows(&milnor, &saturation, n, d)
    };
    if !theorem.is_empty() {
        checks.push(identity(
            "main-theorem",
            json!(theorem.iter().filter(|r| r.pass).count()),
            json!(theorem.len()),
        ));
    }

    let ci = ci_analysis(&milnor, &saturation, options.ci_degrees.as_deref());
    if let Some(ci) = &ci {
        if ci.verdict == CI_INCOMPATIBLE && ci.source == "supplied" {
            warnings.push("supplied complete-intersection degrees are not compatible".into());
        }
    }

    Ok(InvariantReport {
        input: echo,
        milnor: milnor_section(&milnor),
        syzygy: syzygy_section(&syzygy),
        saturation: saturation_section(&saturation),
        checks,
        theorem,
        ci,
        warnings,
    })
}

fn milnor_section(m: &MilnorProfile) -> MilnorSection {
    MilnorSection {
        t: m.t,
        tau: m.tau,
        st: m.st,
        ct: m.ct,
        dims: m.milnor.dims.clone(),
        smooth_dims: m.smooth.clone(),
        isolated: m.isolated.isolated,
        isolated_method: m.isolated.method.to_string(),
    }
}

fn syzygy_section(s: &SyzygyProfile) -> SyzygySection {
    SyzygySection {
        mdr: s.mdr,
        ar: s.ar.clone(),
        kr: s.kr.clone(),
        er: s.er.clone(),
    }
}

fn saturation_section(s: &SaturationProfile) -> SaturationSection {
    SaturationSection {
        sat: Some(s.sat),
        a_invariant: s.a_invariant,
        regularity: s.regularity,
        hatj_dims: s.hatj_dims.clone(),
        sd_dims: s.sd_dims.clone(),
        defects: s.defects.clone(),
        a_invariant_closed_form: s.a_invariant_closed,
        regularity_closed_form: s.regularity_closed,
        bound: Some(s.bound),
    }
}

const SINGULAR_ONLY: [&str; 12] = [
    "ct-equals-mdr-plus-d-minus-2",
    "ct-range",
    "st-at-most-T",
    "a-invariant-closed-form",
    "a-invariant-mdr-form",
    "regularity-closed-form",
    "sat-at-most-max-T-minus-ct-st",
    "defect-vanishes-from-T-minus-ct",
    "er-equals-defect",
    "sat-equals-st-for-large-st",
    "tau-bounded-for-large-ct",
    "T-minus-ct-at-most-st",
];

fn identity(name: &str, lhs: Value, rhs: Value) -> Check {
    let pass = lhs == rhs;
    Check {
        name: name.to_string(),
        lhs,
        rhs,
        pass,
        kind: CheckKind::Identity,
    }
}

fn identity_eq<T: Serialize + PartialEq>(name: &str, lhs: T, rhs: T) -> Check {
    let pass = lhs == rhs;
    Check {
        name: name.to_string(),
        lhs: json!(lhs),
        rhs: json!(rhs),
        pass,
        kind: CheckKind::Identity,
    }
}

fn bound_check(name: &str, lhs: Value, rhs: Value, pass: bool, kind: CheckKind) -> Check {
    Check {
        name: name.to_string(),
        lhs,
        rhs,
        pass,
        kind,
    }
}

/// The per-degree identity `dim M(f)_{T-k} = dim M(f_s)_k + defect_k` for
/// `0 ≤ k ≤ nd - 2n - 1`. The three terms come from ideal codimensions, the
/// closed-form series and the saturation kernels respectively.
pub fn theorem_rows(milnor: &MilnorProfile, sat: &SaturationProfile, n: usize, d: u32) -> Vec<TheoremRow> {
    let top = n as i64 * d as i64 - 2 * n as i64 - 1;
    (0..=top)
        .filter_map(|k| {
            let lhs = milnor.dim(milnor.t - k)? as i64;
            let smooth = milnor.smooth_dim(k);
            let defect = *sat.defects.get(k as usize)?;
            Some(TheoremRow {
                k,
                lhs,
                smooth,
                defect,
                pass: lhs == smooth + defect,
            })
        })
        .collect()
}

fn cross_checks(
    milnor: &MilnorProfile,
    syz: &SyzygyProfile,
    sat: &SaturationProfile,
    n: usize,
    d: u32,
) -> Vec<Check> {
    let t = milnor.t;
    let tau = milnor.tau.expect("isolated and stabilized") as i64;
    let st = milnor.st.expect("isolated and stabilized") as i64;
    let d_i = d as i64;
    let n_i = n as i64;
    let mut checks = Vec::new();

    // ER via kernels against the Koszul-cohomology formula in Milnor dims
    let via_cohomology: Vec<Option<i64>> = (0..syz.er.len())
        .map(|m| koszul_hn_dim(milnor, m as i64 + n_i))
        .collect();
    let er: Vec<Option<i64>> = syz.er.iter().map(|&e| Some(e as i64)).collect();
    checks.push(identity_eq("er-equals-koszul-cohomology", er, via_cohomology));

    let tail_start = (n_i * (d_i - 2)).max(0) as usize;
    let tail: Vec<usize> = syz.er.iter().skip(tail_start).copied().collect();
    checks.push(identity_eq(
        "er-tail-equals-tau",
        tail.iter().map(|&e| e as i64).collect::<Vec<_>>(),
        vec![tau; tail.len()],
    ));

    checks.push(identity_eq(
        "jacobian-inside-saturation",
        sat.j_inside_hatj,
        true,
    ));
    checks.push(identity_eq(
        "defects-nonnegative",
        sat.defects.iter().all(|&x| x >= 0),
        true,
    ));
    checks.push(identity_eq(
        "defects-non-increasing",
        sat.defects.windows(2).all(|w| w[0] >= w[1]),
        true,
    ));

    let t_u = t.max(0) as usize;
    let sd_window: Vec<usize> = (0..=t_u).map(|k| sat.sd_dims.get(k).copied().unwrap_or(0)).collect();
    let mut mirrored = sd_window.clone();
    mirrored.reverse();
    checks.push(bound_check(
        "gorenstein-symmetry",
        json!(sd_window),
        json!(mirrored),
        gorenstein_symmetry_check(&sat.sd_dims, t),
        CheckKind::Identity,
    ));
    checks.push(bound_check(
        "sd-unimodality",
        json!(sd_window),
        json!("non-decreasing below T/2"),
        unimodality_check(&sat.sd_dims, t),
        CheckKind::Conjecture,
    ));

    let Some(ct) = milnor.ct else {
        // smooth input
        let smooth: Vec<i64> = milnor.smooth.clone();
        let dims: Vec<i64> = milnor.milnor.dims.iter().map(|&v| v as i64).collect();
        checks.push(identity_eq("milnor-equals-smooth-series", dims, smooth));
        checks.push(identity_eq("ar-equals-kr", syz.ar.clone(), syz.kr.clone()));
        checks.extend(SINGULAR_ONLY.iter().map(|name| Check {
            name: name.to_string(),
            lhs: Value::Null,
            rhs: Value::Null,
            pass: true,
            kind: CheckKind::NotApplicable,
        }));
        return checks;
    };
    let ct = ct as i64;

    checks.push(identity_eq(
        "ct-equals-mdr-plus-d-minus-2",
        Some(ct),
        syz.mdr.map(|m| m as i64 + d_i - 2),
    ));
    checks.push(bound_check(
        "ct-range",
        json!(ct),
        json!([d_i - 2, t]),
        d_i - 2 <= ct && ct <= t,
        CheckKind::Identity,
    ));
    checks.push(bound_check(
        "st-at-most-T",
        json!(st),
        json!(t),
        st <= t,
        CheckKind::Identity,
    ));
    checks.push(bound_check(
        "a-invariant-closed-form",
        json!(sat.a_invariant),
        json!(t - ct - 1),
        a_invariant(&sat.defects, tau as usize, t, milnor.ct).is_ok(),
        CheckKind::Identity,
    ));
    checks.push(identity_eq(
        "a-invariant-mdr-form",
        sat.a_invariant,
        syz.mdr.map(|m| n_i * d_i - 2 * n_i - 1 - m as i64),
    ));
    checks.push(bound_check(
        "regularity-closed-form",
        json!(sat.regularity),
        json!(sat.regularity_closed),
        cm_regularity(&sat.sd_dims, sat.a_invariant, t, milnor.ct).is_ok(),
        CheckKind::Identity,
    ));
    let bound = (t - ct).max(st);
    checks.push(bound_check(
        "sat-at-most-max-T-minus-ct-st",
        json!(sat.sat),
        json!(bound),
        (sat.sat as i64) <= bound,
        CheckKind::Identity,
    ));
    let first_zero = sat.defects.iter().position(|&x| x == 0).map(|k| k as i64);
    checks.push(identity_eq(
        "defect-vanishes-from-T-minus-ct",
        first_zero,
        Some((t - ct).max(0)),
    ));

    let top = n_i * d_i - 2 * n_i - 1;
    let er_side: Vec<Option<i64>> = (0..=top)
        .map(|k| syz.er.get((top - k) as usize).map(|&e| e as i64))
        .collect();
    let defect_side: Vec<Option<i64>> = (0..=top).map(|k| sat.defects.get(k as usize).copied()).collect();
    checks.push(identity_eq("er-equals-defect", er_side, defect_side));

    if st > n_i * (d_i - 2) {
        checks.push(identity_eq("sat-equals-st-for-large-st", sat.sat as i64, st));
    }
    if 2 * ct >= t {
        let cap = milnor.smooth_dim(t - ct);
        checks.push(bound_check(
            "tau-bounded-for-large-ct",
            json!(tau),
            json!(cap),
            tau <= cap,
            CheckKind::Identity,
        ));
    }
    checks.push(bound_check(
        "T-minus-ct-at-most-st",
        json!(t - ct),
        json!(st),
        t - ct <= st,
        CheckKind::Conjecture,
    ));
    checks
}

/// Coefficients `0..=kmax` of `Π(1 - t^{a_i}) / (1 - t)^{n+1}`.
pub fn ci_series(degrees: &[usize], nvars: usize, kmax: usize) -> Vec<i64> {
    let mut s = vec![0i64; kmax + 1];
    s[0] = 1;
    for &a in degrees {
        for k in (a..=kmax).rev() {
            s[k] -= s[k - a];
        }
    }
    for _ in 0..nvars {
        for k in 1..=kmax {
            s[k] += s[k - 1];
        }
    }
    s
}

/// Smallest-first positive integer pair with the given sum and product.
pub fn solve_degree_pair(sum: i64, product: i64) -> Option<(usize, usize)> {
    (1..=sum / 2)
        .find(|&a| a * (sum - a) == product)
        .map(|a| (a as usize, (sum - a) as usize))
}

/// Tests whether the saturation of `J_f` behaves like a complete intersection
/// of forms of degrees `a_1..a_n`. For `n = 2` the degrees are recovered from
/// `τ = a_1 a_2` and `ct = T - a_1 - a_2 + 2`; otherwise they must be supplied.
pub fn ci_analysis(milnor: &MilnorProfile, sat: &SaturationProfile, supplied: Option<&[usize]>) -> Option<CiAnalysis> {
    let tau = milnor.tau? as i64;
    let ct = milnor.ct? as i64;
    let n = milnor.n;
    let t = milnor.t;
    let (source, sum, product, degrees) = match supplied {
        Some(c) => (
            "supplied",
            c.iter().sum::<usize>() as i64,
            c.iter().product::<usize>() as i64,
            Some(c.to_vec()),
        ),
        None if n == 2 => {
            let sum = t - ct + 2;
            let product = tau;
            let degrees = solve_degree_pair(sum, product).map(|(a, b)| vec![a, b]);
            ("recovered", sum, product, degrees)
        }
        None => return None,
    };
    let Some(degrees) = degrees else {
        return Some(CiAnalysis {
            source: source.into(),
            sum: Some(sum),
            product: Some(product),
            degrees: None,
            verdict: CI_NO_SOLUTION.into(),
            hilbert_identity: None,
            saturation_match: None,
            tau_is_product: None,
            ct_formula: None,
        });
    };
    let kmax = milnor.milnor.kmax();
    let nvars = n + 1;
    let ci = ci_series(&degrees, nvars, kmax);
    let shift = nvars as i64 * (milnor.d as i64 - 1) - sum;
    let ci_at = |j: i64| if j < 0 { 0 } else { ci.get(j as usize).copied().unwrap_or(0) };
    let hilbert_identity = (0..=kmax as i64).all(|k| {
        milnor.dim(k).map(|v| v as i64) == Some(milnor.smooth_dim(k) + ci_at(k - shift))
    });
    let saturation_match = sat
        .hatj_dims
        .iter()
        .enumerate()
        .all(|(k, &h)| h as i64 == dim_s(nvars, k as i64) as i64 - ci_at(k as i64));
    let tau_is_product = tau == product;
    let ct_formula = ct == t - sum + n as i64;
    let ok = hilbert_identity && saturation_match && tau_is_product && ct_formula;
    Some(CiAnalysis {
        source: source.into(),
        sum: Some(sum),
        product: Some(product),
        degrees: Some(degrees),
        verdict: if ok { CI_COMPATIBLE } else { CI_INCOMPATIBLE }.into(),
        hilbert_identity: Some(hilbert_identity),
        saturation_match: Some(saturation_match),
        tau_is_product: Some(tau_is_product),
        ct_formula: Some(ct_formula),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ci_series_two_three() {
        // (1-t^2)(1-t^3)/(1-t)^3
        assert_eq!(ci_series(&[2, 3], 3, 7), vec![1, 3, 5, 6, 6, 6, 6, 6]);
        // a regular sequence of three forms of degree d-1 gives the smooth series
        let s = ci_series(&[3, 3, 3], 3, 8);
        let smooth: Vec<i64> = (0..=8).map(|k| crate::milnor::smooth_series_coeff(2, 4, k)).collect();
        assert_eq!(s, smooth);
    }

    #[test]
    fn degree_pairs() {
        assert_eq!(solve_degree_pair(5, 6), Some((2, 3)));
        assert_eq!(solve_degree_pair(4, 6), None);
        assert_eq!(solve_degree_pair(3, 3), None);
        assert_eq!(solve_degree_pair(3, 2), Some((1, 2)));
        assert_eq!(solve_degree_pair(7, 12), Some((3, 4)));
    }

    #[test]
    fn xyz_report() {
        let vars = crate::parse::parse_vars("x,y,z");
        let r = analyze_text("x*y*z", &vars, &AnalyzeOptions::default()).unwrap();
        assert_eq!(
            r.theorem,
            vec![
                TheoremRow { k: 0, lhs: 3, smooth: 1, defect: 2, pass: true },
                TheoremRow { k: 1, lhs: 3, smooth: 3, defect: 0, pass: true },
            ]
        );
        assert!(r.identities_pass(), "{:?}", r.failed_checks());
        assert_eq!(r.ci.as_ref().unwrap().verdict, CI_NO_SOLUTION);
    }

    #[test]
    fn rejects_bad_options() {
        let vars = crate::parse::parse_vars("x,y,z");
        let opts = AnalyzeOptions {
            kmax: Some(3),
            ..Default::default()
        };
        assert!(matches!(
            analyze_text("x*y*z", &vars, &opts),
            Err(AnalyzeError::Unsupported(_))
        ));
        assert!(matches!(
            analyze_text("x + y", &vars, &AnalyzeOptions::default()),
            Err(AnalyzeError::Unsupported(_))
        ));
        let opts = AnalyzeOptions {
            ci_degrees: Some(vec![1]),
            ..Default::default()
        };
        assert!(matches!(
            analyze_text("x*y*z", &vars, &opts),
            Err(AnalyzeError::Unsupported(_))
        ));
    }
}
