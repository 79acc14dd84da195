//! Deterministic JSON reports and DOT diagrams of chart trees.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::fabric::{stratum_string, Stratum};
use crate::foliated::{stratum_polyhedron, Atlas, BlowupRecord, ChartId, LogSing};
use crate::groebner::{Decision, Fuel, Ideal};
use crate::nnd::{Agreement, Verdict};
use crate::polyhedra::{NewtonPolyhedron, PolyhedraSystem};

pub const SCHEMA_VERSION: &str = "folnewt-report/1";

pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumEntry {
    pub stratum: Vec<String>,
    pub vertices: Vec<Vec<u32>>,
}

/// Entries ordered by stratum size, then labels.
pub fn polyhedra_entries(sys: &PolyhedraSystem) -> Vec<StratumEntry> {
    let mut out: Vec<StratumEntry> = sys
        .iter()
        .map(|(j, n)| StratumEntry {
            stratum: labels(j),
            vertices: n.vertices().to_vec(),
        })
        .collect();
    out.sort_by(|a, b| a.stratum.len().cmp(&b.stratum.len()).then_with(|| a.stratum.cmp(&b.stratum)));
    out
}

fn labels(j: &Stratum) -> Vec<String> {
    j.iter().map(|v| v.name().to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusEntry {
    pub chart: ChartId,
    pub stratum: Vec<String>,
    pub ideal: Ideal,
    pub saturated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogSingSummary {
    pub status: &'static str,
    pub loci: Vec<LocusEntry>,
    pub undetermined: Vec<(ChartId, Vec<String>)>,
}

impl From<&LogSing> for LogSingSummary {
    fn from(l: &LogSing) -> Self {
        match l {
            LogSing::Empty => LogSingSummary {
                status: "empty",
                loci: Vec::new(),
                undetermined: Vec::new(),
            },
            LogSing::Nonempty(loci) => LogSingSummary {
                status: "nonempty",
                loci: loci
                    .iter()
                    .map(|l| LocusEntry {
                        chart: l.chart,
                        stratum: labels(&l.stratum),
                        ideal: l.ideal.clone(),
                        saturated: l.saturated,
                    })
                    .collect(),
                undetermined: Vec::new(),
            },
            LogSing::Undetermined(s) => LogSingSummary {
                status: "undetermined",
                loci: Vec::new(),
                undetermined: s.iter().map(|(c, j)| (*c, labels(j))).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartSummary {
    pub id: ChartId,
    pub divisor: Vec<String>,
    pub free: Vec<String>,
    pub form: BTreeMap<String, String>,
    pub parent: Option<ChartId>,
    pub selector: Option<String>,
}

pub fn leaf_summaries(atlas: &Atlas) -> Vec<ChartSummary> {
    atlas
        .leaves()
        .map(|c| ChartSummary {
            id: c.id,
            divisor: labels(c.divisor()),
            free: labels(c.free()),
            form: c
                .coefficients()
                .iter()
                .map(|(v, p)| (v.name().to_string(), p.to_string()))
                .collect(),
            parent: c.provenance.as_ref().map(|p| p.parent),
            selector: c.provenance.as_ref().map(|p| p.selector.name().to_string()),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Validation {
    pub divisor: Vec<String>,
    pub free: Vec<String>,
    pub logarithmically_regular: bool,
    pub integrable: Decision,
    pub projection_compatible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuelUsage {
    pub max_spair_reductions: u64,
    pub max_terms: usize,
    pub max_blowups: usize,
    pub spair_reductions: u64,
    pub completions: u64,
    pub exhausted_completions: u64,
    pub blowups: usize,
}

impl FuelUsage {
    pub fn new(fuel: &Fuel, max_blowups: usize, blowups: usize) -> Self {
        FuelUsage {
            max_spair_reductions: fuel.max_spair_reductions,
            max_terms: fuel.max_terms,
            max_blowups,
            spair_reductions: fuel.meter.spairs(),
            completions: fuel.meter.completions(),
            exhausted_completions: fuel.meter.exhausted(),
            blowups,
        }
    }
}

/// Everything one CLI invocation computed. Field order and map ordering
/// are fixed, so reruns on the same input differ only in `timings_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input_digest: String,
    pub exit_code: i32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    pub verdicts: BTreeMap<String, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    pub polyhedra: Vec<StratumEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_polyhedra: Option<Vec<StratumEntry>>,
    pub blowups: Vec<BlowupRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaves: Option<Vec<ChartSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub logsing: Option<LogSingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    pub fuel: FuelUsage,
    pub undetermined: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input: {}", self.input_digest);
        let _ = writeln!(s, "outcome: {}", self.outcome);
        if let Some(st) = &self.strategy {
            let _ = writeln!(s, "strategy: {st}");
        }
        for (route, v) in &self.verdicts {
            let _ = writeln!(s, "{route}: {v}");
        }
        if let Some(a) = self.agreement {
            let _ = writeln!(s, "agreement: {}", serde_json::to_value(a).unwrap().as_str().unwrap_or(""));
        }
        let _ = writeln!(s, "polyhedra:");
        for e in &self.polyhedra {
            let _ = writeln!(s, "  {{{}}}: {}", e.stratum.join(","), fmt_vertices(&e.vertices));
        }
        if !self.blowups.is_empty() {
            let _ = writeln!(s, "blow-ups:");
            for b in &self.blowups {
                let c: Vec<&str> = b.center.iter().map(|v| v.name()).collect();
                let _ = writeln!(s, "  {{{}}} -> {}", c.join(","), b.exceptional);
            }
        }
        if let Some(fp) = &self.final_polyhedra {
            let _ = writeln!(s, "final polyhedra:");
            for e in fp {
                let _ = writeln!(s, "  {{{}}}: {}", e.stratum.join(","), fmt_vertices(&e.vertices));
            }
        }
        if let Some(l) = &self.logsing {
            let _ = writeln!(s, "logsing: {}", l.status);
            for locus in &l.loci {
                let gens: Vec<String> = locus.ideal.generators().iter().map(|g| g.to_string()).collect();
                let _ = writeln!(s, "  c{} {{{}}}: <{}>", locus.chart, locus.stratum.join(","), gens.join(", "));
            }
        }
        if let Some(v) = &self.validation {
            let _ = writeln!(s, "logarithmically regular: {}", v.logarithmically_regular);
            let _ = writeln!(s, "integrable: {:?}", v.integrable);
        }
        for u in &self.undetermined {
            let _ = writeln!(s, "undetermined: {u}");
        }
        let _ = writeln!(
            s,
            "fuel: {} S-pair reductions, {} blow-ups",
            self.fuel.spair_reductions, self.fuel.blowups
        );
        s
    }
}

fn fmt_vertices(vs: &[Vec<u32>]) -> String {
    let parts: Vec<String> = vs
        .iter()
        .map(|v| format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    parts.join(" ")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The chart tree: one node per chart labelled with its divisor and the
/// vertices of each stratum polyhedron, one edge per selector.
pub fn atlas_dot(atlas: &Atlas) -> String {
    let mut s = String::from("digraph atlas {\n  node [shape=box, fontname=\"monospace\"];\n");
    for c in atlas.charts() {
        let mut label = format!("{}\\lD = {}\\l", c.name(), dot_escape(&stratum_string(c.divisor())));
        for j in c.strata() {
            let n: NewtonPolyhedron = stratum_polyhedron(c, &j).map(|(_, n)| n).unwrap_or_else(|_| NewtonPolyhedron::trivial());
            let _ = write!(label, "{}: {}\\l", dot_escape(&stratum_string(&j)), fmt_vertices(n.vertices()));
        }
        let leaf = atlas.leaf_ids().contains(&c.id);
        let style = if leaf { "" } else { ", style=dashed" };
        let _ = writeln!(s, "  {} [label=\"{}\"{}];", c.name(), label, style);
    }
    for c in atlas.charts() {
        for &k in atlas.children(c.id) {
            let child = atlas.chart(k);
            let sel = child.provenance.as_ref().map(|p| p.selector.name().to_string()).unwrap_or_default();
            let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", c.name(), child.name(), dot_escape(&sel));
        }
    }
    s.push_str("}\n");
    s
}
