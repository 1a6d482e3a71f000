//! Machine-readable reports and their text renderings.
//!
//! Rationals are written as strings (`"3/2"`), simple roots as 1-based
//! labels (`"α3"`), so every report survives a JSON round trip unchanged.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<String>,
    /// False for a negative verdict or a failed verification.
    pub passed: bool,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Describe(Describe),
    Check(Check),
    Classify(Classify),
    Dualize(Dualize),
    Bounds(Bounds),
    Table(Table),
    Verify(Verify),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorOut {
    pub side: String,
    pub ambient: Vec<String>,
    pub fundamental: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOut {
    #[serde(rename = "type")]
    pub kind: String,
    pub simple_roots: Vec<String>,
    pub highest_root: Vec<String>,
    pub highest_coroot: Vec<String>,
    pub m: Vec<i64>,
    pub m_vee: Vec<i64>,
    pub special: Vec<String>,
    pub cospecial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Describe {
    pub ambient_dim: usize,
    pub semisimple_rank: usize,
    pub num_roots: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub fundamental_weights: Vec<Vec<String>>,
    pub fundamental_coweights: Vec<Vec<String>>,
    pub char_lattice_basis: Vec<Vec<String>>,
    pub cochar_lattice_basis: Vec<Vec<String>>,
    pub factors: Vec<FactorOut>,
    pub galois: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessOut {
    CorootPair { orbit: usize, first: Vec<String>, second: Vec<String>, values: [String; 2] },
    AmpleViolation { simple: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub predicate: String,
    pub vector: VectorOut,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceOut {
    pub factors: Vec<String>,
    pub multiplier: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classify {
    pub vector: VectorOut,
    pub quasi_constant: bool,
    pub kinds: Vec<String>,
    pub pieces: Vec<PieceOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominant: Option<VectorOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayOut {
    pub side: String,
    pub label: String,
    pub ambient: Vec<String>,
    pub lattice_coefficients: Vec<i64>,
    pub fundamental: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dualize {
    pub input: RayOut,
    pub output: RayOut,
    /// Simple roots orthogonal to the cocharacter ray.
    pub levi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOut {
    #[serde(rename = "type")]
    pub kind: String,
    pub excluded: Vec<String>,
    pub eta: Vec<String>,
    pub ratio: String,
    pub min_p: i64,
    pub c: i64,
    pub shortcut: String,
    pub shortcut_value: String,
    pub multiplicity_sum: i64,
    pub sufficiency_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub rows: Vec<BoundOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowOut {
    #[serde(rename = "type")]
    pub kind: String,
    pub simple_roots: String,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub max_rank: usize,
    pub rows: Vec<TableRowOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_vertex: Vec<BoundOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchOut {
    pub coefficients: Vec<i64>,
    pub oracle: bool,
    pub classifier: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityRayOut {
    pub ray: RayOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<RayOut>,
    pub levi: Vec<String>,
    pub quasi_constant: bool,
    pub levi_restriction: bool,
    pub maximal: bool,
    pub round_trip: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOut {
    #[serde(rename = "type")]
    pub kind: String,
    pub chain: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Verify {
    Box {
        lattice: String,
        coeff_bound: i64,
        scanned: u64,
        quasi_constant: u64,
        mismatch_count: u64,
        mismatches: Vec<MismatchOut>,
        dominant_rays: Vec<Vec<i64>>,
    },
    Duality {
        max_multiplier: i64,
        rays: Vec<DualityRayOut>,
        inverse_failures: Vec<RayOut>,
        bijective: bool,
        failures: usize,
    },
    Chain {
        factors: Vec<ChainOut>,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.datum {
            let _ = writeln!(out, "datum: {d}");
        }
        match &self.body {
            Body::Describe(d) => render_describe(&mut out, d),
            Body::Check(c) => {
                let _ = writeln!(out, "vector: {}", vector_text(&c.vector));
                let _ = writeln!(out, "{}: {}", c.predicate, c.holds);
                if let Some(r) = &c.ratio {
                    let _ = writeln!(out, "orbital ratio: {r}");
                }
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "witness: {}", witness_text(w));
                }
            }
            Body::Classify(c) => {
                let _ = writeln!(out, "vector: {}", vector_text(&c.vector));
                let _ = writeln!(out, "quasi-constant: {}", c.quasi_constant);
                if c.quasi_constant {
                    let _ = writeln!(out, "kinds: {}", c.kinds.join(", "));
                    for p in &c.pieces {
                        let _ = writeln!(out, "piece {}: multiplier {}", p.factors.join(" + "), p.multiplier);
                    }
                    if let Some(d) = &c.dominant {
                        let _ = writeln!(out, "dominant: {}", vector_text(d));
                    }
                }
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "witness: {}", witness_text(w));
                }
            }
            Body::Dualize(d) => {
                let _ = writeln!(out, "{} {} -> {} {}", d.input.side, d.input.label, d.output.side, d.output.label);
                let _ = writeln!(out, "input ambient: [{}]", d.input.ambient.join(", "));
                let _ = writeln!(out, "output ambient: [{}]", d.output.ambient.join(", "));
                let _ = writeln!(out, "levi: {{{}}}", d.levi.join(", "));
            }
            Body::Bounds(b) => {
                for r in &b.rows {
                    let _ = writeln!(
                        out,
                        "{} without {{{}}}: R = {}, C = {}, min p = {}, {} = {}, Σm∨ = {}{}",
                        r.kind,
                        r.excluded.join(", "),
                        r.ratio,
                        r.c,
                        r.min_p,
                        r.shortcut,
                        r.shortcut_value,
                        r.multiplicity_sum,
                        if r.sufficiency_only { " (sufficient bound only)" } else { "" }
                    );
                }
            }
            Body::Table(t) => out.push_str(&table_tsv(t)),
            Body::Verify(v) => render_verify(&mut out, v),
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

fn vector_text(v: &VectorOut) -> String {
    format!("{} [{}] (fundamental [{}])", v.side, v.ambient.join(", "), v.fundamental.join(", "))
}

fn witness_text(w: &WitnessOut) -> String {
    match w {
        WitnessOut::CorootPair { orbit, first, second, values } => format!(
            "orbit {orbit}: |<v, [{}]>| = {} but |<v, [{}]>| = {}",
            first.join(", "),
            values[0],
            second.join(", "),
            values[1]
        ),
        WitnessOut::AmpleViolation { simple, value } => format!("pairing with {simple}∨ is {value}, not negative"),
    }
}

fn rows_text(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(" ")
}

fn render_describe(out: &mut String, d: &Describe) {
    let _ = writeln!(out, "ambient dimension: {}", d.ambient_dim);
    let _ = writeln!(out, "semisimple rank: {}", d.semisimple_rank);
    let _ = writeln!(out, "roots: {}", d.num_roots);
    let _ = writeln!(out, "cartan matrix:");
    for row in &d.cartan_matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {}", cells.join(""));
    }
    let _ = writeln!(out, "simple roots: {}", rows_text(&d.simple_roots));
    let _ = writeln!(out, "fundamental weights: {}", rows_text(&d.fundamental_weights));
    let _ = writeln!(out, "fundamental coweights: {}", rows_text(&d.fundamental_coweights));
    for f in &d.factors {
        let _ = writeln!(out, "factor {} ({}):", f.kind, f.simple_roots.join(", "));
        let _ = writeln!(out, "  highest root: [{}]", f.highest_root.join(", "));
        let _ = writeln!(out, "  highest coroot: [{}]", f.highest_coroot.join(", "));
        let _ = writeln!(out, "  m: {:?}  m∨: {:?}", f.m, f.m_vee);
        let _ = writeln!(out, "  special: {{{}}}", f.special.join(", "));
        let _ = writeln!(out, "  cospecial: {{{}}}", f.cospecial.join(", "));
    }
    if !d.galois.is_empty() {
        let _ = writeln!(out, "galois: {:?}", d.galois);
    }
}

fn render_verify(out: &mut String, v: &Verify) {
    match v {
        Verify::Box { lattice, coeff_bound, scanned, quasi_constant, mismatch_count, mismatches, dominant_rays } => {
            let _ = writeln!(out, "box search on {lattice}, coefficients in [-{coeff_bound}, {coeff_bound}]");
            let _ = writeln!(out, "scanned: {scanned}");
            let _ = writeln!(out, "quasi-constant: {quasi_constant}");
            let _ = writeln!(out, "mismatches: {mismatch_count}");
            for m in mismatches {
                let _ = writeln!(out, "  {:?}: oracle {}, classifier {}", m.coefficients, m.oracle, m.classifier);
            }
            let rays: Vec<String> = dominant_rays.iter().map(|r| format!("{r:?}")).collect();
            let _ = writeln!(out, "dominant rays: {}", if rays.is_empty() { "none".into() } else { rays.join(" ") });
        }
        Verify::Duality { rays, inverse_failures, bijective, failures, .. } => {
            for r in rays {
                let dual = r.dual.as_ref().map_or("-".to_string(), |d| d.label.clone());
                let ok = r.quasi_constant && r.levi_restriction && r.maximal && r.round_trip && r.error.is_none();
                let _ = writeln!(
                    out,
                    "{} -> {}  levi {{{}}}  {}",
                    r.ray.label,
                    dual,
                    r.levi.join(", "),
                    if ok { "ok" } else { "FAILED" }
                );
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "  error: {e}");
                }
            }
            for r in inverse_failures {
                let _ = writeln!(out, "inverse round trip failed for {}", r.label);
            }
            let _ = writeln!(out, "rays: {}, bijective: {bijective}, failures: {failures}", rays.len());
        }
        Verify::Chain { factors } => {
            for f in factors {
                let _ = writeln!(out, "{}: {} {}", f.kind, f.chain.join(" "), if f.ok { "ok" } else { "FAILED" });
            }
        }
    }
}

pub fn table_tsv(t: &Table) -> String {
    let mut out = String::from("type\tsimple roots\tC\n");
    for r in &t.rows {
        let _ = writeln!(out, "{}\t{}\t{}", r.kind, r.simple_roots, r.c);
    }
    out
}

pub fn table_markdown(t: &Table) -> String {
    let mut out = String::from("| Type | Simple roots | C |\n|---|---|---|\n");
    for r in &t.rows {
        let _ = writeln!(out, "| {} | {} | {} |", r.kind, r.simple_roots, r.c);
    }
    out
}
