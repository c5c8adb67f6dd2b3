//! Output documents: one deterministic structure serialized as JSON or
//! rendered as text.
//!
//! Serialization is deterministic: inputs are a sorted map, term lists are
//! emitted in ascending exponent (or basis) order, and every
//! arbitrary-precision coefficient is a decimal string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use catsl2::bubbles::CurlExpansion;
use catsl2::cyclo::CycloReport;
use catsl2::grasscoh::SchurClass;
use catsl2::multipoly::MultiPoly;
use catsl2::nilhecke::{NilHeckeElt, SymMatrix};
use catsl2::qscalar::{LaurentPoly, RationalQ};
use catsl2::symfunc::SymFunc;
use catsl2::udot::UdotElt;

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct OutputDocument {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: ResultPayload,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct PolyTerm {
    pub exp: i64,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct MonoTerm {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SymTerm {
    pub partition: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct UdotTerm {
    pub weight: i64,
    pub e_power: u32,
    pub f_power: u32,
    pub coeff: RationalData,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct RationalData {
    pub num: Vec<PolyTerm>,
    pub den: Vec<PolyTerm>,
    pub display: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct NhTerm {
    pub permutation: Vec<u8>,
    pub poly: Vec<MonoTerm>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CurlTermData {
    pub sign: i8,
    pub strand_dots: i64,
    pub bubble_orientation: String,
    pub bubble_dots: i64,
    pub bubble_degree: i64,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct EfRow {
    pub k: i64,
    pub weight: i64,
    pub e_scalar: Vec<PolyTerm>,
    pub f_scalar: Vec<PolyTerm>,
    pub commutator: Vec<PolyTerm>,
    pub quantum_integer: Vec<PolyTerm>,
    pub matches: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CycloData {
    pub a: u32,
    pub big_n: u32,
    pub block: Vec<Vec<SymTerm>>,
    pub rotated_column: Vec<Vec<SymTerm>>,
    pub ideal_match: bool,
    pub total_dim: String,
    pub graded_dim_matrix_ring: Vec<PolyTerm>,
    pub graded_dim_quotient: Option<Vec<PolyTerm>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
#[serde(tag = "kind")]
pub enum ResultPayload {
    Poly {
        terms: Vec<PolyTerm>,
        display: String,
    },
    Rational {
        value: RationalData,
    },
    SymPoly {
        terms: Vec<SymTerm>,
        display: String,
    },
    CPolyList {
        polys: Vec<Vec<MonoTerm>>,
        display: Vec<String>,
    },
    Schur {
        k: u32,
        big_n: u32,
        terms: Vec<SymTerm>,
        display: String,
    },
    Matrix {
        size: usize,
        entries: Vec<Vec<SymTerm>>,
        display: Vec<String>,
    },
    Udot {
        terms: Vec<UdotTerm>,
        display: String,
    },
    NhElt {
        strands: usize,
        terms: Vec<NhTerm>,
        display: String,
    },
    Bool {
        value: bool,
    },
    Curl {
        total_degree: Option<i64>,
        terms: Vec<CurlTermData>,
        display: String,
    },
    Violations {
        violations: Vec<String>,
    },
    EfCheck {
        big_n: u32,
        rows: Vec<EfRow>,
        all_match: bool,
    },
    Cyclo {
        report: CycloData,
    },
}

pub fn poly_terms(p: &LaurentPoly) -> Vec<PolyTerm> {
    p.terms()
        .map(|(e, c)| PolyTerm {
            exp: e,
            coeff: rational_coeff_string(c),
        })
        .collect()
}

fn rational_coeff_string(c: &num_rational::BigRational) -> String {
    if num_traits::One::is_one(c.denom()) {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn rational_data(r: &RationalQ) -> RationalData {
    RationalData {
        num: poly_terms(r.numerator()),
        den: poly_terms(r.denominator()),
        display: r.to_text(),
    }
}

pub fn mono_terms(p: &MultiPoly) -> Vec<MonoTerm> {
    p.terms()
        .map(|(e, c)| MonoTerm {
            exps: e.clone(),
            coeff: rational_coeff_string(c),
        })
        .collect()
}

pub fn sym_terms(f: &SymFunc) -> Vec<SymTerm> {
    f.terms()
        .map(|(l, c)| SymTerm {
            partition: l.parts().to_vec(),
            coeff: rational_coeff_string(c),
        })
        .collect()
}

pub fn schur_terms(s: &SchurClass) -> Vec<SymTerm> {
    s.terms()
        .map(|(l, c)| SymTerm {
            partition: l.parts().to_vec(),
            coeff: rational_coeff_string(c),
        })
        .collect()
}

pub fn udot_terms(x: &UdotElt) -> Vec<UdotTerm> {
    x.terms()
        .map(|(m, c)| UdotTerm {
            weight: m.n,
            e_power: m.a,
            f_power: m.b,
            coeff: rational_data(c),
        })
        .collect()
}

pub fn nh_terms(x: &NilHeckeElt) -> Vec<NhTerm> {
    x.terms()
        .map(|(w, f)| NhTerm {
            permutation: w.one_line().to_vec(),
            poly: mono_terms(f),
        })
        .collect()
}

pub fn matrix_entries(m: &SymMatrix) -> Vec<Vec<SymTerm>> {
    (0..m.size())
        .flat_map(|i| (0..m.size()).map(move |j| (i, j)))
        .map(|(i, j)| sym_terms(m.entry(i, j)))
        .collect()
}

pub fn matrix_display(m: &SymMatrix) -> Vec<String> {
    (0..m.size())
        .map(|i| {
            let row: Vec<String> = (0..m.size())
                .map(|j| m.entry(i, j).to_text())
                .collect();
            format!("[{}]", row.join(", "))
        })
        .collect()
}

pub fn schur_display(s: &SchurClass) -> String {
    let pairs = s.to_pairs();
    if pairs.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (l, c)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let coeff = rational_coeff_string(c);
        if coeff != "1" {
            out.push_str(&coeff);
            out.push('*');
        }
        out.push_str(&format!("s{}", l));
    }
    out
}

pub fn curl_data(c: &CurlExpansion) -> (Option<i64>, Vec<CurlTermData>, String) {
    let terms: Vec<CurlTermData> = c
        .terms
        .iter()
        .map(|t| CurlTermData {
            sign: t.sign,
            strand_dots: t.dots,
            bubble_orientation: t.bubble.orientation.short().into(),
            bubble_dots: t.bubble.dots(),
            bubble_degree: t.bubble.degree(),
        })
        .collect();
    let display = if terms.is_empty() {
        "0".to_string()
    } else {
        terms
            .iter()
            .map(|t| {
                let sign = if t.sign < 0 { "-" } else { "+" };
                let dots = if t.strand_dots == 0 {
                    String::new()
                } else {
                    format!("dot^{} ", t.strand_dots)
                };
                format!(
                    "{sign} {dots}{}({})",
                    t.bubble_orientation, t.bubble_dots
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    (c.total_degree(), terms, display)
}

pub fn cyclo_data(r: &CycloReport) -> CycloData {
    CycloData {
        a: r.a,
        big_n: r.big_n,
        block: matrix_entries(&r.block),
        rotated_column: r.rotated_column.iter().map(sym_terms).collect(),
        ideal_match: r.ideal_match,
        total_dim: r.total_dim.to_string(),
        graded_dim_matrix_ring: poly_terms(&r.graded_dim_matrix_ring),
        graded_dim_quotient: r.graded_dim_quotient.as_ref().map(poly_terms),
    }
}

impl OutputDocument {
    /// The text rendering; one semantic line per printed row.
    pub fn render_text(&self) -> String {
        match &self.result {
            ResultPayload::Poly { display, .. } => display.clone(),
            ResultPayload::Rational { value } => value.display.clone(),
            ResultPayload::SymPoly { display, .. } => display.clone(),
            ResultPayload::CPolyList { display, .. } => {
                if display.is_empty() {
                    "(empty)".to_string()
                } else {
                    display
                        .iter()
                        .enumerate()
                        .map(|(i, d)| format!("g{}: {}", i + 1, d))
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            }
            ResultPayload::Schur { display, .. } => display.clone(),
            ResultPayload::Matrix { display, .. } => display.join("\n"),
            ResultPayload::Udot { display, .. } => display.clone(),
            ResultPayload::NhElt { display, .. } => display.clone(),
            ResultPayload::Bool { value } => value.to_string(),
            ResultPayload::Curl {
                total_degree,
                display,
                ..
            } => match total_degree {
                Some(d) => format!("{display}  (degree {d})"),
                None => display.clone(),
            },
            ResultPayload::Violations { violations } => {
                if violations.is_empty() {
                    "valid".to_string()
                } else {
                    violations.join("\n")
                }
            }
            ResultPayload::EfCheck {
                big_n,
                rows,
                all_match,
            } => {
                let mut lines: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        format!(
                            "k={} n={}: e_k = {}, f_k = {}, e_(k-1)f_k - f_(k+1)e_k = {} vs [n] = {} => {}",
                            r.k,
                            r.weight,
                            terms_display(&r.e_scalar),
                            terms_display(&r.f_scalar),
                            terms_display(&r.commutator),
                            terms_display(&r.quantum_integer),
                            if r.matches { "ok" } else { "MISMATCH" }
                        )
                    })
                    .collect();
                lines.push(format!(
                    "N={}: {}",
                    big_n,
                    if *all_match { "all levels match" } else { "MISMATCH" }
                ));
                lines.join("\n")
            }
            ResultPayload::Cyclo { report } => {
                let mut lines = vec![
                    format!("a={} N={}", report.a, report.big_n),
                    format!("ideal_match: {}", report.ideal_match),
                    format!("total_dim: {}", report.total_dim),
                    format!(
                        "graded_dim_matrix_ring: {}",
                        terms_display(&report.graded_dim_matrix_ring)
                    ),
                ];
                if let Some(q) = &report.graded_dim_quotient {
                    lines.push(format!("graded_dim_quotient: {}", terms_display(q)));
                }
                lines.join("\n")
            }
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

/// Rebuild the descending-order display from a term list (used for report
/// rows that carry terms without a precomputed display).
pub fn terms_display(terms: &[PolyTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().rev().enumerate() {
        let neg = t.coeff.starts_with('-');
        let mag = if neg { &t.coeff[1..] } else { &t.coeff[..] };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = t.exp == 0 || mag != "1";
        if show_coeff {
            out.push_str(mag);
        }
        if t.exp != 0 {
            if show_coeff {
                out.push('*');
            }
            out.push('q');
            if t.exp != 1 {
                out.push_str(&format!("^{}", t.exp));
            }
        }
    }
    out
}
