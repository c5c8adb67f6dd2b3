//! Command-line front end: each subcommand maps 1:1 onto a library
//! operation and prints a deterministic text or JSON document.

pub mod output;
pub mod parse;

use std::collections::BTreeMap;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use catsl2::bubbles::{curl_expand, fake_bubble_expansion, infinite_grassmannian_check, chi_validate};
use catsl2::cyclo::cyclo_report;
use catsl2::grasscoh::{
    ef_scalars, flag_graded_dimension, graded_dimension_gr, ideal_generators, reduce_to_schur,
};
use catsl2::nilhecke::{factorial, theta_matrix, NilHeckeElt};
use catsl2::qscalar::{gauss_binomial, quantum_integer, GaussVar, LaurentPoly};
use catsl2::symfunc::{h_in_e, schur_jacobi_trudi, JtBasis};
use catsl2::udot::{semilinear, tau};

use output::{
    curl_data, cyclo_data, matrix_display, matrix_entries, mono_terms, nh_terms, poly_terms,
    rational_data, schur_display, schur_terms, sym_terms, udot_terms, EfRow, OutputDocument,
    ResultPayload,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum GaussVarArg {
    Q,
    Q2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum BasisArg {
    E,
    H,
}

/// Exact computations for the decategorified side of quantum sl2.
#[derive(Parser, Debug)]
#[command(name = "catsl2", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The quantum integer [n].
    Qint {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// The Gaussian binomial [N choose k] in q or q^2 (nonsymmetric form).
    Qbinom {
        big_n: u32,
        k: u32,
        /// Variable of the binomial.
        #[arg(long, value_enum, default_value_t = GaussVarArg::Q)]
        var: GaussVarArg,
    },
    /// The semilinear form of two E/F words (syntax: E, F, E^a, E(a)).
    Semilinear {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Weight n of the common source idempotent 1_n.
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
    },
    /// tau of an E/F word applied to 1_n.
    Tau {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
    },
    /// Schur function via the Jacobi-Trudi determinant, in the e-basis.
    Schur {
        /// Partition as comma-separated descending integers, e.g. 2,1.
        partition: String,
        #[arg(long, value_enum, default_value_t = BasisArg::E)]
        basis: BasisArg,
    },
    /// The complete symmetric function h_r in the e-basis.
    HInE { r: u32 },
    /// Generators of the Grassmannian ideal I_{k,N}.
    GrassIdeal { k: u32, big_n: u32 },
    /// Reduce a polynomial in c1..ck to the Schur basis of H*(Gr(k,N)).
    GrassReduce {
        poly: String,
        k: u32,
        big_n: u32,
    },
    /// Graded dimension of H*(Gr(k,N)).
    GrassGdim { k: u32, big_n: u32 },
    /// Graded dimension of H*(Fl(k,k+1,N)).
    FlagGdim { k: u32, big_n: u32 },
    /// E/F scalars on Grothendieck classes and the sl2 commutator check.
    EfCheck { big_n: u32 },
    /// theta matrix of a nilHecke expression (syntax: x1..xa, d1..d(a-1)).
    Theta {
        #[arg(long)]
        elt: String,
        #[arg(long)]
        strands: usize,
    },
    /// The idempotent e_a = delta_a del_{w_0}.
    NhIdempotent { a: usize },
    /// The cyclotomic quotient report at (a, N).
    CycloCheck {
        a: u32,
        big_n: u32,
        /// Also run the brute-force quotient dimension oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Fake bubble of degree 2j at weight n, in the e-basis.
    FakeBubble {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        j: i64,
    },
    /// Curl reduction at weight n with j dots.
    Curl {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        j: i64,
    },
    /// Check the infinite Grassmannian equation up to a degree bound.
    InfGrass {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long = "max")]
        max: i64,
    },
    /// Validate chi parameters from a JSON file.
    ChiValidate {
        #[arg(long)]
        file: std::path::PathBuf,
        /// Weight range lower end (defaults to the smallest beta key).
        #[arg(long, allow_hyphen_values = true)]
        min: Option<i64>,
        /// Weight range upper end (defaults to the largest beta key).
        #[arg(long, allow_hyphen_values = true)]
        max: Option<i64>,
    },
}

/// a! size cap for matrix constructions, from CATSL2_MAX_STRANDS
/// (default 4).
fn matrix_bound() -> usize {
    let strands = std::env::var("CATSL2_MAX_STRANDS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(4)
        .min(10);
    factorial(strands)
}

fn doc(command: &str, inputs: &[(&str, String)], result: ResultPayload) -> OutputDocument {
    OutputDocument {
        command: command.into(),
        inputs: inputs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<_, _>>(),
        result,
    }
}

fn poly_payload(p: &LaurentPoly) -> ResultPayload {
    ResultPayload::Poly {
        terms: poly_terms(p),
        display: p.to_text(),
    }
}

pub fn execute(command: &Command) -> Result<OutputDocument, String> {
    match command {
        Command::Qint { n } => {
            let p = quantum_integer(*n);
            Ok(doc("qint", &[("n", n.to_string())], poly_payload(&p)))
        }
        Command::Qbinom { big_n, k, var } => {
            let v = match var {
                GaussVarArg::Q => GaussVar::Q,
                GaussVarArg::Q2 => GaussVar::QSquared,
            };
            let p = gauss_binomial(*big_n, *k, v).map_err(|e| e.to_string())?;
            Ok(doc(
                "qbinom",
                &[
                    ("N", big_n.to_string()),
                    ("k", k.to_string()),
                    ("var", format!("{var:?}").to_lowercase()),
                ],
                poly_payload(&p),
            ))
        }
        Command::Semilinear {
            left,
            right,
            weight,
        } => {
            let lw = parse::parse_word(left)?;
            let rw = parse::parse_word(right)?;
            let x = parse::word_to_udot(&lw, *weight);
            let y = parse::word_to_udot(&rw, *weight);
            let v = semilinear(&x, &y);
            Ok(doc(
                "semilinear",
                &[
                    ("left", left.clone()),
                    ("right", right.clone()),
                    ("weight", weight.to_string()),
                ],
                ResultPayload::Rational {
                    value: rational_data(&v),
                },
            ))
        }
        Command::Tau { word, weight } => {
            let w = parse::parse_word(word)?;
            let x = parse::word_to_udot(&w, *weight);
            let t = tau(&x);
            Ok(doc(
                "tau",
                &[("word", word.clone()), ("weight", weight.to_string())],
                ResultPayload::Udot {
                    terms: udot_terms(&t),
                    display: t.to_text(),
                },
            ))
        }
        Command::Schur { partition, basis } => {
            let lambda = parse::parse_partition(partition)?;
            let b = match basis {
                BasisArg::E => JtBasis::E,
                BasisArg::H => JtBasis::H,
            };
            let s = schur_jacobi_trudi(&lambda, b);
            Ok(doc(
                "schur",
                &[
                    ("partition", partition.clone()),
                    ("basis", format!("{basis:?}").to_lowercase()),
                ],
                ResultPayload::SymPoly {
                    terms: sym_terms(&s),
                    display: s.to_text(),
                },
            ))
        }
        Command::HInE { r } => {
            let h = h_in_e(*r);
            Ok(doc(
                "h-in-e",
                &[("r", r.to_string())],
                ResultPayload::SymPoly {
                    terms: sym_terms(&h),
                    display: h.to_text(),
                },
            ))
        }
        Command::GrassIdeal { k, big_n } => {
            let ideal = ideal_generators(*k, *big_n).map_err(|e| e.to_string())?;
            Ok(doc(
                "grass-ideal",
                &[("k", k.to_string()), ("N", big_n.to_string())],
                ResultPayload::CPolyList {
                    polys: ideal.generators.iter().map(mono_terms).collect(),
                    display: ideal
                        .generators
                        .iter()
                        .map(|g| g.to_text("c"))
                        .collect(),
                },
            ))
        }
        Command::GrassReduce { poly, k, big_n } => {
            if k > big_n {
                return Err("require 0 <= k <= N".into());
            }
            let p = parse::parse_c_poly(poly, *k as usize)?;
            let s = reduce_to_schur(&p, *k, *big_n);
            Ok(doc(
                "grass-reduce",
                &[
                    ("poly", poly.clone()),
                    ("k", k.to_string()),
                    ("N", big_n.to_string()),
                ],
                ResultPayload::Schur {
                    k: *k,
                    big_n: *big_n,
                    terms: schur_terms(&s),
                    display: schur_display(&s),
                },
            ))
        }
        Command::GrassGdim { k, big_n } => {
            let p = graded_dimension_gr(*k, *big_n).map_err(|e| e.to_string())?;
            Ok(doc(
                "grass-gdim",
                &[("k", k.to_string()), ("N", big_n.to_string())],
                poly_payload(&p),
            ))
        }
        Command::FlagGdim { k, big_n } => {
            let p = flag_graded_dimension(*k, *big_n).map_err(|e| e.to_string())?;
            Ok(doc(
                "flag-gdim",
                &[("k", k.to_string()), ("N", big_n.to_string())],
                poly_payload(&p),
            ))
        }
        Command::EfCheck { big_n } => {
            let n = *big_n;
            let mut es: Vec<LaurentPoly> = Vec::new();
            let mut fs: Vec<LaurentPoly> = Vec::new();
            for k in 0..n {
                let (e, f) = ef_scalars(k, n).map_err(|e| e.to_string())?;
                es.push(e);
                fs.push(f);
            }
            let e_at = |k: i64| -> LaurentPoly {
                if k < 0 || k >= n as i64 {
                    LaurentPoly::zero()
                } else {
                    es[k as usize].clone()
                }
            };
            let f_at = |k: i64| -> LaurentPoly {
                if k <= 0 || k > n as i64 {
                    LaurentPoly::zero()
                } else {
                    fs[k as usize - 1].clone()
                }
            };
            let mut rows = Vec::new();
            let mut all_match = true;
            for k in 0..=n as i64 {
                let weight = 2 * k - n as i64;
                let commutator =
                    &(&e_at(k - 1) * &f_at(k)) - &(&f_at(k + 1) * &e_at(k));
                let qi = quantum_integer(weight);
                let matches = commutator == qi;
                all_match &= matches;
                rows.push(EfRow {
                    k,
                    weight,
                    e_scalar: poly_terms(&e_at(k)),
                    f_scalar: poly_terms(&f_at(k)),
                    commutator: poly_terms(&commutator),
                    quantum_integer: poly_terms(&qi),
                    matches,
                });
            }
            Ok(doc(
                "ef-check",
                &[("N", n.to_string())],
                ResultPayload::EfCheck {
                    big_n: n,
                    rows,
                    all_match,
                },
            ))
        }
        Command::Theta { elt, strands } => {
            if *strands < 1 {
                return Err("strand count must be positive".into());
            }
            let x = parse::parse_nh_expr(elt, *strands)?;
            let m = theta_matrix(&x, matrix_bound()).map_err(|e| e.to_string())?;
            Ok(doc(
                "theta",
                &[("elt", elt.clone()), ("strands", strands.to_string())],
                ResultPayload::Matrix {
                    size: m.size(),
                    entries: matrix_entries(&m),
                    display: matrix_display(&m),
                },
            ))
        }
        Command::NhIdempotent { a } => {
            if *a < 1 {
                return Err("strand count must be positive".into());
            }
            let e = NilHeckeElt::e_idempotent(*a);
            Ok(doc(
                "nh-idempotent",
                &[("a", a.to_string())],
                ResultPayload::NhElt {
                    strands: *a,
                    terms: nh_terms(&e),
                    display: e.to_text(),
                },
            ))
        }
        Command::CycloCheck { a, big_n, oracle } => {
            let report =
                cyclo_report(*a, *big_n, *oracle, matrix_bound()).map_err(|e| e.to_string())?;
            Ok(doc(
                "cyclo-check",
                &[
                    ("a", a.to_string()),
                    ("N", big_n.to_string()),
                    ("oracle", oracle.to_string()),
                ],
                ResultPayload::Cyclo {
                    report: cyclo_data(&report),
                },
            ))
        }
        Command::FakeBubble { n, j } => {
            let f = fake_bubble_expansion(*n, *j).map_err(|e| e.to_string())?;
            Ok(doc(
                "fake-bubble",
                &[("n", n.to_string()), ("j", j.to_string())],
                ResultPayload::SymPoly {
                    terms: sym_terms(&f),
                    display: f.to_text(),
                },
            ))
        }
        Command::Curl { n, j } => {
            if *j < 0 {
                return Err("dot count must be nonnegative".into());
            }
            let c = curl_expand(*n, *j);
            let (total_degree, terms, display) = curl_data(&c);
            Ok(doc(
                "curl",
                &[("n", n.to_string()), ("j", j.to_string())],
                ResultPayload::Curl {
                    total_degree,
                    terms,
                    display,
                },
            ))
        }
        Command::InfGrass { n, max } => {
            if *max < 0 {
                return Err("degree bound must be nonnegative".into());
            }
            let ok = infinite_grassmannian_check(*n, *max);
            Ok(doc(
                "inf-grass",
                &[("n", n.to_string()), ("max", max.to_string())],
                ResultPayload::Bool { value: ok },
            ))
        }
        Command::ChiValidate { file, min, max } => {
            let content = std::fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let chi = parse::parse_chi_file(&content)?;
            let lo = min
                .or_else(|| chi.beta.keys().next().copied())
                .ok_or("empty beta map and no --min")?;
            let hi = max
                .or_else(|| chi.beta.keys().next_back().copied())
                .ok_or("empty beta map and no --max")?;
            if lo > hi {
                return Err("empty weight range".into());
            }
            let violations = chi_validate(&chi, lo, hi);
            Ok(doc(
                "chi-validate",
                &[
                    ("file", file.display().to_string()),
                    ("min", lo.to_string()),
                    ("max", hi.to_string()),
                ],
                ResultPayload::Violations {
                    violations: violations.iter().map(|v| v.to_string()).collect(),
                },
            ))
        }
    }
}

/// Runs the CLI; exit code 0 on success, 1 on domain errors, 2 on argument
/// parse errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            }
        }
    };
    match execute(&cli.command) {
        Ok(document) => {
            let rendered = match cli.format {
                Format::Text => document.render_text(),
                Format::Json => document.render_json(),
            };
            let _ = writeln!(out, "{rendered}");
            0
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}
