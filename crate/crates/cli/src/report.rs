//! Serializable reports. Text output is rendered from the JSON value.

use serde::Serialize;
use serde_json::Value;

use hecke_core::analysis::PairAnalysis;
use hecke_core::group::GroupTable;
use hecke_core::Rational;

pub const SCHEMA: &str = "hecke-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Element {
    pub index: usize,
    pub label: String,
}

impl Element {
    pub fn new(g: &GroupTable, index: usize) -> Element {
        Element { index, label: g.label(index) }
    }
}

fn elements(g: &GroupTable, xs: &[usize]) -> Vec<Element> {
    xs.iter().map(|&x| Element::new(g, x)).collect()
}

fn labels(g: &GroupTable, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x)).collect()
}

fn q(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub toolkit_version: &'static str,
    /// No sampling happens in a pair analysis.
    pub seed: Option<u64>,
    pub input: InputSection,
    pub pair: PairSection,
    pub partial_rep: PartialRepSection,
    pub hecke_algebra: AlgebraSection,
    pub product_law: Option<ProductLawSection>,
    pub crossed_product: Option<CrossedSection>,
    pub contradictions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSection {
    pub group: String,
    pub group_order: usize,
    pub subgroup: Vec<String>,
    pub subgroup_indices: Vec<usize>,
    pub audit_full: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleCosetRow {
    pub rep: Element,
    pub size: usize,
    pub r: usize,
    pub delta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSection {
    pub subgroup_order: usize,
    pub index: usize,
    pub double_cosets: usize,
    pub is_hecke: bool,
    pub double_coset_table: Vec<DoubleCosetRow>,
    pub is_normal: bool,
    pub is_subnormal: bool,
    pub is_protonormal: bool,
    pub protonormal_witness: Option<Element>,
    pub subnormal_violation: Option<[Element; 3]>,
    pub normal_closure: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartialRepSection {
    pub is_partial_rep: bool,
    pub unit: bool,
    pub left_failure: Option<[Element; 2]>,
    pub right_failure: Option<[Element; 2]>,
    pub partial_isometry_failure: Option<Element>,
    pub idempotents_commute: Option<bool>,
    pub idempotents: Option<bool>,
    pub kernel_is_subgroup: Option<bool>,
    pub full_audit_agrees: Option<bool>,
    pub equivalence_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraSection {
    pub dimension: usize,
    pub dictionary_sound: bool,
    pub star_involutive: bool,
    pub sharp_involutive: bool,
    pub star_anti_multiplicative: bool,
    pub sharp_anti_multiplicative: bool,
    pub star_of_sigma_is_sigma_of_inverse: bool,
    pub star_is_form_adjoint: bool,
    pub delta_multiplicative: bool,
    pub lambda_exists: bool,
    pub lambda_is_identity: bool,
    pub lambda_isomorphism: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductLawSection {
    pub product_formula: bool,
    pub pairs_checked: usize,
    pub failures: Vec<[Element; 2]>,
    pub family_size_audit: Option<bool>,
    pub presentation: bool,
    pub basis_rank: usize,
    pub universal_property: bool,
    pub further_properties: bool,
    pub subnormal_consequences: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomRow {
    pub axiom: &'static str,
    pub holds: bool,
    pub witness: Option<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossedSection {
    pub normal_subgroup: Vec<String>,
    pub section: Vec<Element>,
    pub iota_rank: usize,
    pub n_over_h: usize,
    pub products_in_subalgebra: bool,
    pub central_idempotents: bool,
    pub theta_bijective: bool,
    pub cocycle_identities: bool,
    pub cocycle_invertible: bool,
    pub axioms: Vec<AxiomRow>,
    pub dimension: usize,
    pub associative: bool,
    pub unital: bool,
    pub phi_homomorphism: bool,
    pub psi_homomorphism: bool,
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    pub isomorphism: bool,
    pub homomorphic_section: Option<Vec<Element>>,
    pub untwisted: bool,
}

impl AnalysisReport {
    pub fn new(description: &str, g: &GroupTable, a: &PairAnalysis, audit_full: bool) -> AnalysisReport {
        let p = &a.pair;
        let e = &a.equivalence;
        let pair_el = |x: (usize, usize)| [Element::new(g, x.0), Element::new(g, x.1)];
        let subgroup = a.subgroup_elements.clone();
        AnalysisReport {
            schema: SCHEMA,
            toolkit_version: VERSION,
            seed: None,
            input: InputSection {
                group: description.to_string(),
                group_order: p.group_order,
                subgroup: labels(g, &subgroup),
                subgroup_indices: subgroup,
                audit_full,
            },
            pair: PairSection {
                subgroup_order: p.subgroup_order,
                index: p.index,
                double_cosets: p.double_cosets,
                is_hecke: true,
                double_coset_table: p
                    .hecke
                    .reps
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| DoubleCosetRow {
                        rep: Element::new(g, x),
                        size: a.double_coset_sizes[i],
                        r: p.hecke.r[i],
                        delta: q(&p.hecke.delta[i]),
                    })
                    .collect(),
                is_normal: p.is_normal,
                is_subnormal: p.is_subnormal,
                is_protonormal: p.is_protonormal,
                protonormal_witness: p.protonormal_witness.map(|x| Element::new(g, x)),
                subnormal_violation: p
                    .subnormal_triple
                    .map(|(x, h, k)| [Element::new(g, x), Element::new(g, h), Element::new(g, k)]),
                normal_closure: labels(g, &p.normal_closure),
            },
            partial_rep: PartialRepSection {
                is_partial_rep: e.partial_rep.is_partial_rep(),
                unit: e.partial_rep.unit,
                left_failure: e.partial_rep.left_failure.map(pair_el),
                right_failure: e.partial_rep.right_failure.map(pair_el),
                partial_isometry_failure: e.isometry_failure.map(|x| Element::new(g, x)),
                idempotents_commute: e.commutation_failure.map(|c| c.is_none()),
                idempotents: e.idempotents,
                kernel_is_subgroup: e.kernel_is_subgroup,
                full_audit_agrees: e.audit.map(|c| c.is_partial_rep() == e.partial_rep.is_partial_rep()),
                equivalence_holds: e.consistent(),
            },
            hecke_algebra: AlgebraSection {
                dimension: p.double_cosets,
                dictionary_sound: a.dictionary_failure.is_none(),
                star_involutive: a.involutions.star_involutive,
                sharp_involutive: a.involutions.sharp_involutive,
                star_anti_multiplicative: a.involutions.star_anti_multiplicative,
                sharp_anti_multiplicative: a.involutions.sharp_anti_multiplicative,
                star_of_sigma_is_sigma_of_inverse: a.involutions.star_of_sigma,
                star_is_form_adjoint: a.involutions.star_is_form_adjoint,
                delta_multiplicative: a.delta_failure.is_none(),
                lambda_exists: a.lambda.derived,
                lambda_is_identity: a.lambda.is_identity,
                lambda_isomorphism: a.lambda.holds,
            },
            product_law: a.subnormal.as_ref().map(|s| ProductLawSection {
                product_formula: s.product_formula.holds(),
                pairs_checked: s.product_formula.pairs_checked,
                failures: s.product_formula.failures.iter().map(|&f| pair_el(f)).collect(),
                family_size_audit: s.family_audit.map(|f| f.is_none()),
                presentation: s.presentation.relations_hold && s.presentation.structure_matches,
                basis_rank: s.presentation.basis_rank,
                universal_property: s.presentation.universal_identity,
                further_properties: s.further.holds(),
                subnormal_consequences: s.consequences,
            }),
            crossed_product: a.crossed.as_ref().map(|c| {
                let u = a.untwist.as_ref();
                CrossedSection {
                    normal_subgroup: labels(g, &c.normal_subgroup),
                    section: elements(g, &c.section),
                    iota_rank: c.iota_rank,
                    n_over_h: c.n_over_h,
                    products_in_subalgebra: c.build.products_in_a,
                    central_idempotents: c.build.central_idempotents,
                    theta_bijective: c.build.theta_bijective,
                    cocycle_identities: c.build.cocycle_identities,
                    cocycle_invertible: c.build.cocycle_invertible,
                    axioms: c
                        .axioms
                        .all()
                        .iter()
                        .map(|&(axiom, w)| AxiomRow { axiom, holds: w.is_none(), witness: w.map(|(r, s, t)| [r, s, t]) })
                        .collect(),
                    dimension: c.isomorphism.dim,
                    associative: c.isomorphism.associative,
                    unital: c.isomorphism.unital,
                    phi_homomorphism: c.isomorphism.phi_homomorphism,
                    psi_homomorphism: c.isomorphism.psi_homomorphism,
                    phi_psi_identity: c.isomorphism.phi_psi_identity,
                    psi_phi_identity: c.isomorphism.psi_phi_identity,
                    isomorphism: c.holds(),
                    homomorphic_section: u.and_then(|u| u.section.as_ref()).map(|s| elements(g, s)),
                    untwisted: u.is_some_and(|u| u.untwisted()),
                }
            }),
            contradictions: a.contradictions(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("label") && m.contains_key("index") => {
            format!("{} (#{})", scalar(&m["label"]), m["index"])
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !is_record(x)) || a.iter().all(is_element) => {
            format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn is_element(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.len() == 2 && m.contains_key("label") && m.contains_key("index"))
}

fn is_record(v: &Value) -> bool {
    v.is_object() && !is_element(v)
}

fn render_into(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !is_element(v) => {
            if !key.is_empty() {
                out.push_str(&format!("{pad}{key}:\n"));
            }
            let d = if key.is_empty() { depth } else { depth + 1 };
            for (k, x) in m {
                render_into(out, k, x, d);
            }
        }
        Value::Array(a) if a.iter().any(is_record) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in a {
                let line = match x {
                    Value::Object(m) => m.iter().map(|(k, y)| format!("{k}={}", scalar(y))).collect::<Vec<_>>().join("  "),
                    other => scalar(other),
                };
                out.push_str(&format!("{pad}  - {line}\n"));
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
    }
}

/// Indented text view of any report's JSON.
pub fn render_text(json: &str) -> String {
    let v: Value = serde_json::from_str(json).expect("report JSON parses");
    let mut out = String::new();
    render_into(&mut out, "", &v, 0);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusRow {
    pub group: String,
    pub order: usize,
    pub subgroup: Vec<usize>,
    pub index: usize,
    pub double_cosets: usize,
    pub normal: bool,
    pub subnormal: bool,
    pub protonormal: bool,
    pub partial_rep: bool,
    pub weak_identity: bool,
    pub equivalence: bool,
    /// `None` for pairs that are not subnormal.
    pub product_formula: Option<bool>,
    pub crossed_product: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct CorpusTotals {
    pub pairs: usize,
    pub normal: usize,
    pub subnormal: usize,
    pub protonormal: usize,
    pub protonormal_not_subnormal: usize,
    pub equivalence_confirmed: usize,
    pub product_formula_pass: usize,
    pub crossed_product_pass: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusClass {
    pub group: String,
    pub totals: CorpusTotals,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema: &'static str,
    pub toolkit_version: &'static str,
    pub max_order: usize,
    pub totals: CorpusTotals,
    pub by_group: Vec<CorpusClass>,
    pub pairs: Vec<CorpusRow>,
    pub contradictions: Vec<String>,
    /// Caveat on what the protonormal-not-subnormal count can show.
    pub note: &'static str,
}

pub const CORPUS_NOTE: &str = "protonormal_not_subnormal counts finite examples only; \
a zero here is evidence, not a proof that protonormal implies subnormal";

impl CorpusTotals {
    pub fn add(&mut self, r: &CorpusRow) {
        self.pairs += 1;
        self.normal += r.normal as usize;
        self.subnormal += r.subnormal as usize;
        self.protonormal += r.protonormal as usize;
        self.protonormal_not_subnormal += (r.protonormal && !r.subnormal) as usize;
        self.equivalence_confirmed += r.equivalence as usize;
        self.product_formula_pass += (r.product_formula == Some(true)) as usize;
        self.crossed_product_pass += (r.crossed_product == Some(true)) as usize;
    }
}

impl CorpusRow {
    pub fn new(group: &str, a: &PairAnalysis) -> CorpusRow {
        let p = &a.pair;
        CorpusRow {
            group: group.to_string(),
            order: p.group_order,
            subgroup: a.subgroup_elements.clone(),
            index: p.index,
            double_cosets: p.double_cosets,
            normal: p.is_normal,
            subnormal: p.is_subnormal,
            protonormal: p.is_protonormal,
            partial_rep: a.equivalence.partial_rep.is_partial_rep(),
            weak_identity: a.equivalence.isometry_failure.is_none(),
            equivalence: a.equivalence.consistent(),
            product_formula: a.subnormal.as_ref().map(|s| s.product_formula.holds()),
            crossed_product: a.crossed.as_ref().map(|c| c.holds()),
        }
    }
}

/// Fixed-width table for the corpus; reads only the JSON.
pub fn render_corpus_text(json: &str) -> String {
    let v: Value = serde_json::from_str(json).expect("report JSON parses");
    let yn = |x: &Value| match x {
        Value::Bool(true) => "yes",
        Value::Bool(false) => "no",
        _ => "-",
    };
    let mut out = format!(
        "{:<16} {:>5} {:>8} {:>5} {:>6} {:>7} {:>9} {:>11} {:>11}\n",
        "group", "pairs", "normal", "subn", "proto", "p-not-s", "equiv-ok", "product-ok", "crossed-ok"
    );
    let row = |name: &str, t: &Value| {
        format!(
            "{:<16} {:>5} {:>8} {:>5} {:>6} {:>7} {:>9} {:>11} {:>11}\n",
            name,
            t["pairs"].to_string(),
            t["normal"].to_string(),
            t["subnormal"].to_string(),
            t["protonormal"].to_string(),
            t["protonormal_not_subnormal"].to_string(),
            t["equivalence_confirmed"].to_string(),
            t["product_formula_pass"].to_string(),
            t["crossed_product_pass"].to_string()
        )
    };
    for c in v["by_group"].as_array().into_iter().flatten() {
        out.push_str(&row(c["group"].as_str().unwrap_or("?"), &c["totals"]));
    }
    out.push_str(&row("total", &v["totals"]));
    if let Some(n) = v["note"].as_str() {
        out.push_str(&format!("note: {n}\n"));
    }
    let bad: Vec<&Value> = v["pairs"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|r| r["equivalence"] == Value::Bool(false) || r["product_formula"] == Value::Bool(false) || r["crossed_product"] == Value::Bool(false))
        .collect();
    for r in bad {
        out.push_str(&format!(
            "FAILED {} H={} partial_rep={} product={} crossed={}\n",
            r["group"].as_str().unwrap_or("?"),
            r["subgroup"],
            yn(&r["partial_rep"]),
            yn(&r["product_formula"]),
            yn(&r["crossed_product"])
        ));
    }
    for c in v["contradictions"].as_array().into_iter().flatten() {
        out.push_str(&format!("CONTRADICTION {}\n", scalar(c)));
    }
    out
}
