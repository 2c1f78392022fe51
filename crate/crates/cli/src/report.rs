//! Report types and their text/JSON emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use quadop_core::dong::{DongReport, Verdict};
use quadop_core::koszul::dual_operad;
use quadop_core::locality::{LocalityParams, PairOutcome};
use quadop_core::manin::ProductRecipe;
use quadop_core::operad::{Provenance, QuadOperad};
use quadop_core::parse::pretty_print;
use quadop_core::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsOut {
    pub gen: usize,
    pub free3: usize,
    pub relations: usize,
    pub p3: usize,
    pub dual_relations: usize,
    pub dual_p3: usize,
}

/// `swap` lists the nonzero coordinates of `(12)` applied to the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorOut {
    pub name: String,
    pub swap: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadSummary {
    pub name: String,
    pub provenance: String,
    pub generators: Vec<GeneratorOut>,
    pub dims: DimsOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DongSection {
    pub verdict: Verdict,
    pub kernel_dim: usize,
    pub method_agreement: bool,
    pub witnesses: Vec<String>,
    pub witnesses_pqt: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSection {
    pub of: String,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictionaryEntry {
    pub generator: String,
    pub meaning: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSection {
    pub recipe: String,
    pub dims: DimsOut,
    pub dictionary: Vec<DictionaryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalitySection {
    pub params: LocalityParams,
    pub space_dim: usize,
    pub pairs: Vec<PairOutcome>,
    pub all_local: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub operad: OperadSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dong: Option<DongSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locality: Option<LocalitySection>,
}

impl Report {
    pub fn new(operad: OperadSummary) -> Self {
        Report { schema_version: SCHEMA_VERSION, operad, dong: None, dual: None, product: None, locality: None }
    }
}

pub fn dims_of(p: &QuadOperad) -> Result<DimsOut> {
    let d = p.dims();
    let dual = dual_operad(p)?.dims();
    Ok(DimsOut {
        gen: d.gen,
        free3: d.free3,
        relations: d.relations,
        p3: d.p3,
        dual_relations: dual.relations,
        dual_p3: dual.p3,
    })
}

pub fn relation_strings(p: &QuadOperad) -> Vec<String> {
    p.relations().basis_vectors().iter().map(|v| pretty_print(v, p.gens())).collect()
}

pub fn summarize(p: &QuadOperad, with_relations: bool) -> Result<OperadSummary> {
    let g = p.gens();
    let generators = (0..g.dim())
        .map(|j| GeneratorOut {
            name: g.name(j).to_string(),
            swap: (0..g.dim())
                .filter(|&i| !num_traits::Zero::is_zero(&g.swap()[(i, j)]))
                .map(|i| (g.name(i).to_string(), g.swap()[(i, j)].to_string()))
                .collect(),
        })
        .collect();
    let provenance = match p.provenance() {
        Provenance::Textual => "textual".to_string(),
        Provenance::Derived(r) => r.clone(),
    };
    Ok(OperadSummary {
        name: p.name().to_string(),
        provenance,
        generators,
        dims: dims_of(p)?,
        relations: with_relations.then(|| relation_strings(p)),
    })
}

pub fn dong_section(r: &DongReport) -> DongSection {
    DongSection {
        verdict: r.verdict,
        kernel_dim: r.kernel_dim,
        method_agreement: r.method_agreement,
        witnesses: r.witnesses.clone(),
        witnesses_pqt: r.witnesses_pqt.clone(),
    }
}

pub fn product_section(recipe: &ProductRecipe, result: &QuadOperad, cross_check: Option<String>) -> Result<ProductSection> {
    Ok(ProductSection {
        recipe: recipe.describe(),
        dims: dims_of(result)?,
        dictionary: recipe
            .dictionary
            .iter()
            .map(|(g, m)| DictionaryEntry { generator: g.clone(), meaning: m.clone() })
            .collect(),
        cross_check,
    })
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

fn dims_line(d: &DimsOut) -> String {
    format!(
        "gen {}, free3 {}, relations {}, p3 {} (dual: relations {}, p3 {})",
        d.gen, d.free3, d.relations, d.p3, d.dual_relations, d.dual_p3
    )
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    if format == Format::Json {
        return json_bytes(report);
    }
    let mut s = String::new();
    let op = &report.operad;
    if let Some(dong) = &report.dong {
        let _ = writeln!(s, "{}: {}", op.name, dong.verdict);
        if dong.kernel_dim > 0 {
            let _ = writeln!(s, "  kernel dim {}", dong.kernel_dim);
            for w in &dong.witnesses_pqt {
                let _ = writeln!(s, "  witness: {w}");
            }
        }
        let _ = writeln!(s, "  dims: {}", dims_line(&op.dims));
        return s.into_bytes();
    }
    let _ = writeln!(s, "{} [{}]", op.name, op.provenance);
    for g in &op.generators {
        let swap: Vec<String> = g.swap.iter().map(|(n, c)| format!("{c}·{n}")).collect();
        let _ = writeln!(s, "  (12){} = {}", g.name, swap.join(" + "));
    }
    let _ = writeln!(s, "  dims: {}", dims_line(&op.dims));
    if let Some(rel) = &op.relations {
        let _ = writeln!(s, "  relations:");
        for r in rel {
            let _ = writeln!(s, "    {r}");
        }
    }
    if let Some(dual) = &report.dual {
        let _ = writeln!(s, "  dual of {}; relations:", dual.of);
        for r in &dual.relations {
            let _ = writeln!(s, "    {r}");
        }
    }
    if let Some(p) = &report.product {
        let _ = writeln!(s, "  recipe: {}", p.recipe);
        for e in &p.dictionary {
            let _ = writeln!(s, "    {} = {}", e.generator, e.meaning);
        }
        if let Some(c) = &p.cross_check {
            let _ = writeln!(s, "  cross-check: {c}");
        }
    }
    if let Some(l) = &report.locality {
        let p = &l.params;
        let _ = writeln!(
            s,
            "  locality: window {}, n_max {}, k {}, anchor ({}, {}), space dim {}",
            p.window, p.n_max, p.k, p.n, p.m, l.space_dim
        );
        for o in &l.pairs {
            let found = o.min_order.map_or("none".to_string(), |n| format!("N = {n}"));
            let _ = writeln!(s, "    inner {} outer {}: {found}", o.inner, o.outer);
        }
        let _ = writeln!(s, "  all pairs local: {}", l.all_local);
        let _ = writeln!(s, "  note: {}", l.note);
    }
    s.into_bytes()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub provenance: String,
    pub dims: DimsOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub catalog: Vec<CatalogEntry>,
}

pub fn emit_catalog(report: &CatalogReport, format: Format) -> Vec<u8> {
    if format == Format::Json {
        return json_bytes(report);
    }
    let mut s = String::new();
    for e in &report.catalog {
        let _ = writeln!(s, "{:<9} {:<18} {}", e.name, e.provenance, dims_line(&e.dims));
    }
    s.into_bytes()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub schema_version: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<quadop_core::selfcheck::CheckOutcome>,
}

pub fn emit_selfcheck(report: &SelfcheckReport, format: Format) -> Vec<u8> {
    if format == Format::Json {
        return json_bytes(report);
    }
    let mut s = String::new();
    for c in &report.checks {
        let _ = writeln!(s, "{} {:<18} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    let _ = writeln!(s, "selfcheck {}", if report.passed { "passed" } else { "FAILED" });
    s.into_bytes()
}
