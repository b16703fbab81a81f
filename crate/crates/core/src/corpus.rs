//! Built-in example corpus with golden values.
//!
//! Each golden value names the report field it pins (a JSON pointer into the
//! serialized report) and where the number comes from: a published worked
//! example, or an independent hand derivation.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analyzer::{analyze_text, AnalyzeOptions, InvariantReport};
use crate::error::AnalyzeError;
use crate::field::FieldMode;
use crate::parse::parse_vars;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the published literature for this example.
    Published,
    /// Obtained by an independent hand computation.
    Derived,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub source: Source,
    pub note: &'static str,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.source {
            Source::Published => "published",
            Source::Derived => "derived",
        };
        write!(f, "{tag}: {}", self.note)
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum Expected {
    /// The field must equal this value.
    Exact(Value),
    /// The field is an array whose first entries must equal these.
    Prefix(Vec<i64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Golden {
    pub pointer: &'static str,
    pub expected: Expected,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub poly: &'static str,
    pub vars: &'static str,
    pub golden: Vec<Golden>,
}

fn published(pointer: &'static str, expected: Expected, note: &'static str) -> Golden {
    Golden {
        pointer,
        expected,
        provenance: Provenance {
            source: Source::Published,
            note,
        },
    }
}

fn derived(pointer: &'static str, expected: Expected, note: &'static str) -> Golden {
    Golden {
        pointer,
        expected,
        provenance: Provenance {
            source: Source::Derived,
            note,
        },
    }
}

fn exact(v: Value) -> Expected {
    Expected::Exact(v)
}

fn prefix(v: &[i64]) -> Expected {
    Expected::Prefix(v.to_vec())
}

fn family(name: &'static str, poly: &'static str, d: i64, tau: i64, ci: [i64; 2], tau_note: &'static str) -> CorpusEntry {
    CorpusEntry {
        name,
        poly,
        vars: "x,y,z",
        golden: vec![
            published("/syzygy/mdr", exact(json!(1)), "x^p y^q + z^d family: relation from f_x, f_y in degree 1"),
            published("/milnor/ct", exact(json!(d - 1)), "x^p y^q + z^d family: ct = d - 1"),
            published("/milnor/st", exact(json!(2 * d - 3)), "x^p y^q + z^d family: st = 2d - 3"),
            derived("/milnor/tau", exact(json!(tau)), tau_note),
            derived("/ci/degrees", exact(json!(ci)), "integer roots of a^2 - (T - ct + 2) a + tau"),
        ],
    }
}

/// The built-in corpus.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "three-cuspidal-quartic",
            poly: "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x+y+z)",
            vars: "x,y,z",
            golden: vec![
                published("/milnor/dims", prefix(&[1, 3, 6, 7, 6, 6, 6, 6, 6]), "three-cusp quartic Milnor series"),
                published("/milnor/smooth_dims", prefix(&[1, 3, 6, 7, 6, 3, 1, 0]), "smooth quartic Milnor series"),
                published("/milnor/tau", exact(json!(6)), "three cusps, tau = 3 * 2"),
                published("/milnor/st", exact(json!(4)), "three-cusp quartic: sat = 4 = st"),
                derived("/milnor/ct", exact(json!(4)), "first disagreement of the two series is at degree 5"),
                derived("/syzygy/mdr", exact(json!(2)), "ct - d + 2 with ct = 4"),
                published("/saturation/sat", exact(json!(4)), "three-cusp quartic: sat = 4"),
                published("/saturation/defects", prefix(&[5, 3, 0, 0, 0, 0, 0]), "defects 6-1, 6-3, then 0"),
                published(
                    "/saturation/hatJ_dims",
                    prefix(&[0, 0, 0, 4, 9, 15, 22, 30, 39, 49, 60, 72, 85, 99, 114]),
                    "Ĵ_k = 0 for k <= 2, binomial(k+2,2) - 6 after",
                ),
                published("/saturation/sd_dims", prefix(&[0, 0, 0, 1, 0, 0, 0, 0]), "SD is one-dimensional in degree 3"),
                derived("/saturation/a_invariant", exact(json!(1)), "T - ct - 1 = 6 - 4 - 1"),
                derived("/saturation/regularity", exact(json!(3)), "max(T - ct, sat - 1) = max(2, 3)"),
                derived("/ci/verdict", exact(json!("no integer solution")), "a1 + a2 = 4, a1 a2 = 6 has negative discriminant"),
            ],
        },
        CorpusEntry {
            name: "fermat-quartic",
            poly: "x^4 + y^4 + z^4",
            vars: "x,y,z",
            golden: vec![
                published("/milnor/dims", prefix(&[1, 3, 6, 7, 6, 3, 1, 0, 0]), "smooth quartic Milnor series"),
                derived("/milnor/tau", exact(json!(0)), "smooth curve"),
                derived("/milnor/ct", exact(Value::Null), "undefined for smooth input"),
                derived("/syzygy/mdr", exact(Value::Null), "regular sequence has only Koszul relations"),
            ],
        },
        CorpusEntry {
            name: "xyz-triangle",
            poly: "x*y*z",
            vars: "x,y,z",
            golden: vec![
                derived("/milnor/dims", prefix(&[1, 3, 3, 3, 3, 3]), "S/(yz, xz, xy) by hand"),
                derived("/milnor/tau", exact(json!(3)), "three nodes"),
                published("/milnor/st", exact(json!(1)), "xyz: T - ct = st = 1"),
                derived("/milnor/ct", exact(json!(2)), "T - ct = 1 with T = 3"),
                derived("/syzygy/mdr", exact(json!(1)), "x(yz) - y(xz) = 0"),
                derived("/syzygy/er", prefix(&[0, 2]), "kernel of the 10x9 map at m = 1"),
                published("/saturation/sat", exact(json!(0)), "J_xyz is saturated"),
                published("/saturation/sd_dims", prefix(&[0, 0, 0, 0, 0, 0]), "J_xyz is saturated"),
                derived("/saturation/a_invariant", exact(json!(0)), "T - ct - 1 = 0"),
                derived("/saturation/regularity", exact(json!(1)), "max(T - ct, sat - 1) = 1"),
                derived("/ci/verdict", exact(json!("no integer solution")), "a1 + a2 = 3, a1 a2 = 3"),
            ],
        },
        CorpusEntry {
            name: "line-plus-fermat-cubic",
            poly: "x*(x^3 + y^3 + z^3)",
            vars: "x,y,z",
            golden: vec![
                published("/saturation/sd_dims", prefix(&[0, 1, 3, 4, 3, 1, 0]), "SD sequence 0,1,3,4,3,1,0"),
                derived("/milnor/tau", exact(json!(3)), "line meets the smooth cubic transversally in three nodes"),
            ],
        },
        {
            let mut e = family("xpyq-zd-2-2-4", "x^2*y^2 + z^4", 4, 6, [2, 3], "two A3 points");
            e.golden.extend([
                derived(
                    "/milnor/dims",
                    prefix(&[1, 3, 6, 7, 7, 6, 6]),
                    "smooth series plus the (2,3) complete-intersection series shifted by 4",
                ),
                derived(
                    "/saturation/sd_dims",
                    prefix(&[0, 0, 1, 1, 1, 0, 0]),
                    "Ĵ = (xy, z^3) has dims 0,0,1,4,9,15; J has 0,0,0,3,8,15",
                ),
                derived("/saturation/regularity", exact(json!(4)), "SD is nonzero up to degree 4 = sat - 1"),
            ]);
            e
        },
        family("xpyq-zd-1-2-3", "x*y^2 + z^3", 3, 2, [1, 2], "one A2 point"),
        family("xpyq-zd-2-3-5", "x^2*y^3 + z^5", 5, 12, [3, 4], "an E8 point (tau 8) and an A4 point (tau 4)"),
        CorpusEntry {
            name: "nodal-cubic",
            poly: "z*y^2 - x^3 - x^2*z",
            vars: "x,y,z",
            golden: vec![
                published("/saturation/sat", exact(json!(3)), "one-node curve: sat = T = 3d - 6"),
                derived("/milnor/tau", exact(json!(1)), "single node"),
                published("/milnor/ct", exact(json!(3)), "ct = T exactly for a single node"),
                derived("/syzygy/mdr", exact(json!(2)), "ct - d + 2"),
            ],
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenMismatch {
    pub entry: String,
    pub field: String,
    pub expected: Value,
    pub got: Value,
    pub provenance: String,
}

impl fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} expected {} got {} ({})",
            self.entry, self.field, self.expected, self.got, self.provenance
        )
    }
}

/// Compares a report against an entry's golden values.
pub fn compare(entry: &CorpusEntry, report: &InvariantReport) -> Vec<GoldenMismatch> {
    let value = serde_json::to_value(report).expect("report serializes");
    let mut out = Vec::new();
    for g in &entry.golden {
        let got = value.pointer(g.pointer).cloned().unwrap_or(Value::Null);
        let (ok, expected, got) = match &g.expected {
            Expected::Exact(v) => (got == *v, v.clone(), got),
            Expected::Prefix(p) => {
                let head: Option<Vec<i64>> = got
                    .as_array()
                    .filter(|a| a.len() >= p.len())
                    .and_then(|a| a[..p.len()].iter().map(Value::as_i64).collect());
                let shown = head.clone().map_or(got.clone(), |h| json!(h));
                (head.as_deref() == Some(p.as_slice()), json!(p), shown)
            }
        };
        if !ok {
            out.push(GoldenMismatch {
                entry: entry.name.to_string(),
                field: g.pointer.to_string(),
                expected,
                got,
                provenance: g.provenance.to_string(),
            });
        }
    }
    out
}

#[derive(Debug)]
pub struct EntryOutcome {
    pub name: String,
    pub result: Result<InvariantReport, AnalyzeError>,
    pub mismatches: Vec<GoldenMismatch>,
}

impl EntryOutcome {
    pub fn identities_pass(&self) -> bool {
        matches!(&self.result, Ok(r) if r.identities_pass())
    }
}

#[derive(Debug)]
pub struct CorpusSummary {
    pub field: FieldMode,
    pub outcomes: Vec<EntryOutcome>,
}

impl CorpusSummary {
    /// In exact mode any golden mismatch fails the run. A modular run is
    /// compared against the same (exact) golden values, but a mismatch there
    /// points at an unlucky prime and is only reported.
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| {
            o.identities_pass() && (o.mismatches.is_empty() || !self.field.is_exact())
        })
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &GoldenMismatch> {
        self.outcomes.iter().flat_map(|o| o.mismatches.iter())
    }
}

/// Entries whose name contains `filter` (all when `None`).
pub fn select(filter: Option<&str>) -> Vec<CorpusEntry> {
    builtin_corpus()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .collect()
}

pub fn run_corpus(filter: Option<&str>, field: FieldMode) -> CorpusSummary {
    let options = AnalyzeOptions {
        field,
        ..Default::default()
    };
    let outcomes = select(filter)
        .iter()
        .map(|entry| {
            let result = analyze_text(entry.poly, &parse_vars(entry.vars), &options);
            let mismatches = match &result {
                Ok(r) => compare(entry, r),
                Err(_) => Vec::new(),
            };
            EntryOutcome {
                name: entry.name.to_string(),
                result,
                mismatches,
            }
        })
        .collect();
    CorpusSummary { field, outcomes }
}
