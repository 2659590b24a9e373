//! `lscat` — command-line front end for the category-invariant toolkit.
//!
//! Input documents are JSON (see `lscat_core::io`); reports are plain text
//! by default or a single deterministic JSON object with `--json`. Exit
//! codes: 0 success, 2 honest interval/exhausted answers, 1 errors.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lscat_core::category::{
    cat, check_inequalities, gcat, gscat, scat, CategoryResult, Certificate, CoverElement,
    GscatMode, Verdict,
};
use lscat_core::collapse::{
    core_complex, core_poset, is_contractible_poset, is_strongly_collapsible,
    same_strong_homotopy_type,
};
use lscat_core::complex::SimplicialComplex;
use lscat_core::functors::{barycentric_subdivision, face_poset, order_complex};
use lscat_core::io::InputDocument;
use lscat_core::poset::{posets_isomorphic, t0_quotient, FinitePoset};
use lscat_core::verify::{verify_cat, verify_gcat, verify_gscat, verify_scat};
use lscat_core::SearchBudget;

#[derive(Parser)]
#[command(name = "lscat", version, about = "Exact LS-category-type invariants of simplicial complexes and finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximum number of visited states per reachability search.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// Include the witness cover and its certificates in the report.
    #[arg(long, global = true)]
    witness: bool,
    /// Emit one deterministic JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for internal exploration order; never changes results.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Cover elements generated by facet subsets (default).
    FacetUnion,
    /// Complete pool of all subcomplexes; tiny inputs only.
    Exhaustive,
}

#[derive(Subcommand)]
enum Command {
    /// Strong-collapse / beat-point core of a complex or finite space.
    Core { input: String },
    /// Whether a finite space is contractible.
    IsContractible { input: String },
    /// Whether a complex strong-collapses to a point.
    IsStronglyCollapsible { input: String },
    /// Simplicial LS-category of a complex.
    Scat { input: String },
    /// Geometric simplicial category of a complex.
    Gscat {
        input: String,
        #[arg(long, value_enum, default_value = "facet-union")]
        mode: ModeArg,
    },
    /// LS-category of a finite space.
    Cat { input: String },
    /// Geometric category of a finite space.
    Gcat { input: String },
    /// Order complex of a finite space.
    Kfun { input: String },
    /// Face poset of a complex.
    Chifun { input: String },
    /// Barycentric subdivision of a complex.
    Sd { input: String },
    /// Opposite order of a finite space.
    Op { input: String },
    /// T0 quotient of a preorder document (le pairs may contain cycles).
    QuotientT0 { input: String },
    /// Whether two complexes (or two finite spaces) have the same
    /// strong homotopy type (resp. homotopy type).
    SameType { first: String, second: String },
    /// Compute all applicable invariants and audit the relations between them.
    CheckInequalities { input: String },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load(path: &str) -> Result<InputDocument> {
    Ok(InputDocument::parse(&read_input(path)?)?)
}

fn load_complex(path: &str) -> Result<(Arc<SimplicialComplex>, Option<String>)> {
    let doc = load(path)?;
    let name = doc.name().map(str::to_string);
    Ok((Arc::new(doc.to_complex()?), name))
}

fn load_poset(path: &str) -> Result<(Arc<FinitePoset>, Option<String>)> {
    let doc = load(path)?;
    let name = doc.name().map(str::to_string);
    Ok((Arc::new(doc.to_poset()?), name))
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum JsonCoverElement {
    Facets(Vec<Vec<String>>),
    Antichain(Vec<String>),
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum JsonCertificate {
    ContiguityChain {
        source_vertices: Vec<String>,
        maps: Vec<Vec<String>>,
    },
    HomotopyFence {
        source_points: Vec<String>,
        maps: Vec<Vec<String>>,
    },
    ComplexCollapse {
        start_facets: Vec<Vec<String>>,
        steps: Vec<(String, String)>,
    },
    PosetCollapse {
        start_points: Vec<String>,
        steps: Vec<(String, String)>,
    },
}

#[derive(Serialize)]
struct ValueReport {
    command: &'static str,
    input: Option<String>,
    lower: usize,
    upper: usize,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<usize>,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<JsonCoverElement>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Vec<JsonCertificate>>,
}

#[derive(Serialize)]
struct BoolReport {
    command: &'static str,
    input: Option<String>,
    value: bool,
}

#[derive(Serialize)]
struct DocumentReport {
    command: &'static str,
    input: Option<String>,
    result: InputDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<(String, String)>>,
}

#[derive(Serialize)]
struct SameTypeReport {
    command: &'static str,
    first: Option<String>,
    second: Option<String>,
    same_type: bool,
}

#[derive(Serialize)]
struct AuditJson {
    command: &'static str,
    input: Option<String>,
    values: Vec<AuditValueJson>,
    checks: Vec<AuditCheckJson>,
}

#[derive(Serialize)]
struct AuditValueJson {
    name: String,
    lower: usize,
    upper: usize,
    exact: bool,
}

#[derive(Serialize)]
struct AuditCheckJson {
    name: String,
    verdict: &'static str,
}

fn json_witness(
    k: Option<&SimplicialComplex>,
    x: Option<&FinitePoset>,
    witness: &[CoverElement],
) -> Vec<JsonCoverElement> {
    witness
        .iter()
        .map(|el| match el {
            CoverElement::FacetSubset(idxs) => {
                let k = k.expect("facet witness implies a complex");
                JsonCoverElement::Facets(
                    idxs.iter()
                        .map(|&i| {
                            k.facets()[i]
                                .vertices()
                                .into_iter()
                                .map(|v| k.name(v).to_string())
                                .collect()
                        })
                        .collect(),
                )
            }
            CoverElement::Antichain(pts) => {
                let x = x.expect("antichain witness implies a poset");
                JsonCoverElement::Antichain(pts.iter().map(|&p| x.name(p).to_string()).collect())
            }
        })
        .collect()
}

fn json_certificates(certs: &[Certificate]) -> Vec<JsonCertificate> {
    certs
        .iter()
        .map(|c| match c {
            Certificate::Contiguity(cc) => {
                let src = cc.chain[0].source();
                JsonCertificate::ContiguityChain {
                    source_vertices: src.vertex_names().to_vec(),
                    maps: cc
                        .chain
                        .iter()
                        .map(|m| {
                            m.assignment()
                                .iter()
                                .map(|&v| m.target().name(v as usize).to_string())
                                .collect()
                        })
                        .collect(),
                }
            }
            Certificate::Homotopy(hc) => {
                let src = hc.chain[0].source();
                JsonCertificate::HomotopyFence {
                    source_points: src.point_names().to_vec(),
                    maps: hc
                        .chain
                        .iter()
                        .map(|m| {
                            m.assignment()
                                .iter()
                                .map(|&p| m.target().name(p as usize).to_string())
                                .collect()
                        })
                        .collect(),
                }
            }
            Certificate::ComplexCollapse(t) => JsonCertificate::ComplexCollapse {
                start_facets: t
                    .start
                    .facets()
                    .iter()
                    .map(|f| {
                        f.vertices()
                            .into_iter()
                            .map(|v| t.start.name(v).to_string())
                            .collect()
                    })
                    .collect(),
                steps: t.steps.clone(),
            },
            Certificate::PosetCollapse(t) => JsonCertificate::PosetCollapse {
                start_points: t.start.point_names().to_vec(),
                steps: t.steps.clone(),
            },
        })
        .collect()
}

fn emit<T: Serialize>(cli: &Cli, report: &T, text: String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string(report).expect("report serialization is infallible")
        );
    } else {
        println!("{text}");
    }
}

fn value_text(command: &str, r: &CategoryResult) -> String {
    if r.exact() {
        format!("{command} = {} (exact, mode {})", r.upper, r.mode)
    } else {
        format!(
            "{command} in [{}, {}] (budget exhausted, mode {})",
            r.lower, r.upper, r.mode
        )
    }
}

fn emit_value(
    cli: &Cli,
    command: &'static str,
    input: Option<String>,
    r: &CategoryResult,
    k: Option<&SimplicialComplex>,
    x: Option<&FinitePoset>,
) -> u8 {
    let report = ValueReport {
        command,
        input,
        lower: r.lower,
        upper: r.upper,
        exact: r.exact(),
        value: r.value(),
        mode: r.mode,
        witness: cli.witness.then(|| json_witness(k, x, &r.witness)),
        certificates: cli.witness.then(|| json_certificates(&r.certificates)),
    };
    let mut text = value_text(command, r);
    if cli.witness {
        for el in &r.witness {
            match el {
                CoverElement::FacetSubset(idxs) => {
                    let k = k.expect("facet witness implies a complex");
                    let parts: Vec<String> = idxs
                        .iter()
                        .map(|&i| {
                            let names: Vec<&str> =
                                k.facets()[i].vertices().into_iter().map(|v| k.name(v)).collect();
                            format!("{{{}}}", names.join(","))
                        })
                        .collect();
                    text.push_str(&format!("\n  element: facets {}", parts.join(" ")));
                }
                CoverElement::Antichain(pts) => {
                    let x = x.expect("antichain witness implies a poset");
                    let names: Vec<&str> = pts.iter().map(|&p| x.name(p)).collect();
                    text.push_str(&format!("\n  element: U({})", names.join(",")));
                }
            }
        }
    }
    emit(cli, &report, text);
    if r.exact() {
        0
    } else {
        2
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let budget = SearchBudget::new(cli.budget);
    match &cli.command {
        Command::Core { input } => {
            let doc = load(input)?;
            let name = doc.name().map(str::to_string);
            let (result, steps) = match &doc {
                InputDocument::Complex { .. } => {
                    let k = doc.to_complex()?;
                    let (core, trace) = core_complex(&k);
                    (InputDocument::from_complex(&core, name.clone()), trace.steps)
                }
                InputDocument::Poset { .. } => {
                    let x = doc.to_poset()?;
                    let (core, trace) = core_poset(&x);
                    (InputDocument::from_poset(&core, name.clone()), trace.steps)
                }
            };
            let text = result.to_json();
            let report = DocumentReport {
                command: "core",
                input: name,
                result,
                steps: cli.witness.then_some(steps),
                classes: None,
            };
            emit(cli, &report, text);
            Ok(0)
        }
        Command::IsContractible { input } => {
            let (x, name) = load_poset(input)?;
            let value = is_contractible_poset(&x);
            let report = BoolReport {
                command: "is-contractible",
                input: name,
                value,
            };
            emit(cli, &report, format!("{value}"));
            Ok(0)
        }
        Command::IsStronglyCollapsible { input } => {
            let (k, name) = load_complex(input)?;
            let value = is_strongly_collapsible(&k);
            let report = BoolReport {
                command: "is-strongly-collapsible",
                input: name,
                value,
            };
            emit(cli, &report, format!("{value}"));
            Ok(0)
        }
        Command::Scat { input } => {
            let (k, name) = load_complex(input)?;
            let r = scat(&k, &budget);
            verify_scat(&k, &r)?;
            Ok(emit_value(cli, "scat", name, &r, Some(&k), None))
        }
        Command::Gscat { input, mode } => {
            let (k, name) = load_complex(input)?;
            let mode = match mode {
                ModeArg::FacetUnion => GscatMode::FacetUnion,
                ModeArg::Exhaustive => GscatMode::Exhaustive,
            };
            let r = gscat(&k, mode, &budget)?;
            verify_gscat(&k, &r)?;
            Ok(emit_value(cli, "gscat", name, &r, Some(&k), None))
        }
        Command::Cat { input } => {
            let (x, name) = load_poset(input)?;
            let r = cat(&x, &budget);
            verify_cat(&x, &r)?;
            Ok(emit_value(cli, "cat", name, &r, None, Some(&x)))
        }
        Command::Gcat { input } => {
            let (x, name) = load_poset(input)?;
            let r = gcat(&x, &budget)?;
            verify_gcat(&x, &r)?;
            Ok(emit_value(cli, "gcat", name, &r, None, Some(&x)))
        }
        Command::Kfun { input } => {
            let (x, name) = load_poset(input)?;
            let result = InputDocument::from_complex(&order_complex(&x), name.clone());
            let text = result.to_json();
            emit(cli, &DocumentReport { command: "kfun", input: name, result, steps: None, classes: None }, text);
            Ok(0)
        }
        Command::Chifun { input } => {
            let (k, name) = load_complex(input)?;
            let result = InputDocument::from_poset(&face_poset(&k), name.clone());
            let text = result.to_json();
            emit(cli, &DocumentReport { command: "chifun", input: name, result, steps: None, classes: None }, text);
            Ok(0)
        }
        Command::Sd { input } => {
            let (k, name) = load_complex(input)?;
            let result = InputDocument::from_complex(&barycentric_subdivision(&k), name.clone());
            let text = result.to_json();
            emit(cli, &DocumentReport { command: "sd", input: name, result, steps: None, classes: None }, text);
            Ok(0)
        }
        Command::Op { input } => {
            let (x, name) = load_poset(input)?;
            let result = InputDocument::from_poset(&x.opposite(), name.clone());
            let text = result.to_json();
            emit(cli, &DocumentReport { command: "op", input: name, result, steps: None, classes: None }, text);
            Ok(0)
        }
        Command::QuotientT0 { input } => {
            let doc = load(input)?;
            let name = doc.name().map(str::to_string);
            let InputDocument::Poset { points, le, .. } = &doc else {
                bail!("quotient-t0 expects a poset document (le pairs may contain cycles)");
            };
            let (q, class) = t0_quotient(points, le)?;
            let classes: Vec<(String, String)> = points
                .iter()
                .zip(&class)
                .map(|(p, &c)| (p.clone(), q.name(c).to_string()))
                .collect();
            let result = InputDocument::from_poset(&q, name.clone());
            let text = result.to_json();
            let report = DocumentReport {
                command: "quotient-t0",
                input: name,
                result,
                steps: None,
                classes: Some(classes),
            };
            emit(cli, &report, text);
            Ok(0)
        }
        Command::SameType { first, second } => {
            let a = load(first)?;
            let b = load(second)?;
            let same_type = match (&a, &b) {
                (InputDocument::Complex { .. }, InputDocument::Complex { .. }) => {
                    same_strong_homotopy_type(&a.to_complex()?, &b.to_complex()?)
                }
                (InputDocument::Poset { .. }, InputDocument::Poset { .. }) => {
                    posets_isomorphic(&core_poset(&a.to_poset()?).0, &core_poset(&b.to_poset()?).0)
                }
                _ => bail!("same-type expects two documents of the same kind"),
            };
            let report = SameTypeReport {
                command: "same-type",
                first: a.name().map(str::to_string),
                second: b.name().map(str::to_string),
                same_type,
            };
            emit(cli, &report, format!("{same_type}"));
            Ok(0)
        }
        Command::CheckInequalities { input } => {
            let doc = load(input)?;
            let name = doc.name().map(str::to_string);
            let report = match &doc {
                InputDocument::Complex { .. } => {
                    check_inequalities(Some(&Arc::new(doc.to_complex()?)), None, &budget)?
                }
                InputDocument::Poset { .. } => {
                    check_inequalities(None, Some(&Arc::new(doc.to_poset()?)), &budget)?
                }
            };
            let mut text = String::new();
            for v in &report.values {
                if v.exact {
                    text.push_str(&format!("{} = {}\n", v.name, v.upper));
                } else {
                    text.push_str(&format!("{} in [{}, {}]\n", v.name, v.lower, v.upper));
                }
            }
            for c in &report.checks {
                let verdict = match c.verdict {
                    Verdict::Holds => "holds",
                    Verdict::Violated => "VIOLATED",
                    Verdict::Inconclusive => "inconclusive",
                };
                text.push_str(&format!("{}: {}\n", c.name, verdict));
            }
            text.pop();
            let json = AuditJson {
                command: "check-inequalities",
                input: name,
                values: report
                    .values
                    .iter()
                    .map(|v| AuditValueJson {
                        name: v.name.clone(),
                        lower: v.lower,
                        upper: v.upper,
                        exact: v.exact,
                    })
                    .collect(),
                checks: report
                    .checks
                    .iter()
                    .map(|c| AuditCheckJson {
                        name: c.name.clone(),
                        verdict: match c.verdict {
                            Verdict::Holds => "holds",
                            Verdict::Violated => "violated",
                            Verdict::Inconclusive => "inconclusive",
                        },
                    })
                    .collect(),
            };
            emit(cli, &json, text);
            if report.any_violated() {
                bail!("an audited inequality is violated on exact values");
            }
            Ok(if report.all_hold() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
