//! Analysis orchestration and report emission.
//!
//! A report is a pure function of the input request: queries are
//! evaluated in order and the JSON field layout is fixed, so identical
//! input text yields byte-identical machine output.

use serde::Serialize;
use thiserror::Error;

use crate::dsl::{AnalysisRequest, Query};
use crate::engine::{
    classical_status, euler_pairing_objects, faltings_orthogonal_class, is_generator,
    semiorthogonality_check, Assumption, Decision, OrthogonalClass, SemiorthResult, Verdict,
};
use crate::formal::{FormalObject, Stability, Support};
use crate::gentime::{gentime_upper_bound, BoundValue, DerivationStep, GenTimeBound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("analysis error in query `{query}`: {message}")]
pub struct AnalysisError {
    pub query: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub genus: u32,
    pub queries: Vec<QueryReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "query")]
pub enum QueryReport {
    #[serde(rename = "analyze")]
    Analyze {
        name: String,
        invariants: InvariantsBlock,
        is_generator: bool,
        classical: VerdictReport,
        gentime: GentimeReport,
    },
    #[serde(rename = "pairing")]
    Pairing {
        left: String,
        right: String,
        euler: i64,
    },
    #[serde(rename = "semiorth")]
    Semiorth {
        left: String,
        right: String,
        #[serde(flatten)]
        result: SemiorthResult,
    },
    #[serde(rename = "faltings")]
    Faltings {
        name: String,
        orthogonal: OrthogonalClass,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsBlock {
    pub total_rank: u32,
    pub total_degree: i64,
    pub mu_max: String,
    pub mu_min: String,
    pub support: Support,
    pub stability: Stability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    pub assumptions_used: Vec<Assumption>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<Verdict> for VerdictReport {
    fn from(v: Verdict) -> Self {
        VerdictReport {
            decision: v.decision,
            rule: v.rule.map(|r| r.number()),
            rule_id: v.rule.map(|r| r.id().to_string()),
            citation: v.citation,
            assumptions_used: v.assumptions_used,
            reason: v.reason,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GentimeReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub derivation: Vec<DerivationStep>,
}

impl From<GenTimeBound> for GentimeReport {
    fn from(b: GenTimeBound) -> Self {
        match b.value {
            BoundValue::Finite(v) => GentimeReport {
                kind: "finite".into(),
                bound: Some(v),
                note: None,
                derivation: b.derivation,
            },
            BoundValue::Unbounded => GentimeReport {
                kind: "unbounded".into(),
                bound: None,
                note: None,
                derivation: b.derivation,
            },
            BoundValue::UnboundedWithNote => GentimeReport {
                kind: "unbounded".into(),
                bound: None,
                note: Some("classical generator, but no generating-time bound is known for this shape".into()),
                derivation: b.derivation,
            },
        }
    }
}

fn invariants(o: &FormalObject) -> InvariantsBlock {
    let (total_rank, total_degree) = o.total_class_sum();
    let (mu_max, mu_min) = o.mu_extremes();
    let class = o.classify();
    InvariantsBlock {
        total_rank,
        total_degree,
        mu_max: mu_max.to_string(),
        mu_min: mu_min.to_string(),
        support: class.support,
        stability: class.stability,
    }
}

/// Assumptions whose labels both occur among the pieces of the object.
fn assumptions_for<'a>(o: &FormalObject, all: &'a [Assumption]) -> Vec<Assumption> {
    let labels: Vec<&str> = o.pieces().filter_map(|p| p.id.as_deref()).collect();
    all.iter()
        .filter(|a| labels.contains(&a.source.as_str()) && labels.contains(&a.target.as_str()))
        .cloned()
        .collect()
}

/// Evaluate every query of a request into a deterministic report.
pub fn run(req: &AnalysisRequest) -> Result<Report, AnalysisError> {
    let c = req.curve;
    let mut queries = Vec::new();
    for q in &req.queries {
        match q {
            Query::Analyze(name) => {
                let o = req.object(name).expect("validated at parse time");
                let relevant = assumptions_for(o, &req.assumptions);
                let verdict = classical_status(o, &c, &relevant).map_err(|e| AnalysisError {
                    query: format!("analyze {name}"),
                    message: e.to_string(),
                })?;
                let bound = gentime_upper_bound(o, &c, &verdict).map_err(|e| AnalysisError {
                    query: format!("analyze {name}"),
                    message: e.to_string(),
                })?;
                queries.push(QueryReport::Analyze {
                    name: name.clone(),
                    invariants: invariants(o),
                    is_generator: is_generator(o, &c),
                    classical: verdict.into(),
                    gentime: bound.into(),
                });
            }
            Query::Pairing(a, b) => {
                let oa = req.object(a).expect("validated");
                let ob = req.object(b).expect("validated");
                queries.push(QueryReport::Pairing {
                    left: a.clone(),
                    right: b.clone(),
                    euler: euler_pairing_objects(oa, ob, &c),
                });
            }
            Query::Semiorth(a, b) => {
                let oa = req.object(a).expect("validated");
                let ob = req.object(b).expect("validated");
                queries.push(QueryReport::Semiorth {
                    left: a.clone(),
                    right: b.clone(),
                    result: semiorthogonality_check(oa, ob, &c),
                });
            }
            Query::Faltings(name) => {
                let o = req.object(name).expect("validated");
                let orthogonal = faltings_orthogonal_class(o, &c).map_err(|e| AnalysisError {
                    query: format!("faltings {name}"),
                    message: e.to_string(),
                })?;
                queries.push(QueryReport::Faltings {
                    name: name.clone(),
                    orthogonal,
                });
            }
        }
    }
    Ok(Report {
        genus: c.genus(),
        queries,
    })
}

/// Machine-readable output: one JSON document per run.
pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serialization is infallible")
}

/// Human-readable output.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("curve: genus {}\n", report.genus));
    for q in &report.queries {
        match q {
            QueryReport::Analyze {
                name,
                invariants,
                is_generator,
                classical,
                gentime,
            } => {
                out.push_str(&format!("\nanalyze {name}\n"));
                out.push_str(&format!(
                    "  invariants: rank {} degree {} mu_max {} mu_min {} {:?} {:?}\n",
                    invariants.total_rank,
                    invariants.total_degree,
                    invariants.mu_max,
                    invariants.mu_min,
                    invariants.support,
                    invariants.stability,
                ));
                out.push_str(&format!("  generator: {is_generator}\n"));
                match (&classical.rule, &classical.citation) {
                    (Some(rule), Some(cite)) => out.push_str(&format!(
                        "  classical: {:?} (rule {rule}: {}, {cite})\n",
                        classical.decision,
                        classical.rule_id.as_deref().unwrap_or(""),
                    )),
                    _ => out.push_str(&format!(
                        "  classical: {:?} ({})\n",
                        classical.decision,
                        classical.reason.as_deref().unwrap_or("undecided"),
                    )),
                }
                for a in &classical.assumptions_used {
                    out.push_str(&format!("    using assumption hom({}, {}) = 0\n", a.source, a.target));
                }
                match gentime.bound {
                    Some(v) => out.push_str(&format!("  generating time: <= {v}\n")),
                    None => out.push_str(&format!(
                        "  generating time: unbounded{}\n",
                        gentime
                            .note
                            .as_deref()
                            .map(|n| format!(" ({n})"))
                            .unwrap_or_default()
                    )),
                }
                for step in &gentime.derivation {
                    out.push_str(&format!(
                        "    {} -> {} ({})\n",
                        step.rule, step.value, step.citation
                    ));
                }
            }
            QueryReport::Pairing { left, right, euler } => {
                out.push_str(&format!("\npairing {left} {right}\n  chi = {euler}\n"));
            }
            QueryReport::Semiorth {
                left,
                right,
                result,
            } => {
                out.push_str(&format!("\nsemiorth {left} {right}\n"));
                match result {
                    SemiorthResult::Possible => {
                        out.push_str("  possible (necessary conditions pass)\n")
                    }
                    SemiorthResult::Impossible(w) => {
                        out.push_str(&format!("  impossible: {w:?}\n"))
                    }
                }
            }
            QueryReport::Faltings { name, orthogonal } => {
                out.push_str(&format!("\nfaltings {name}\n"));
                match orthogonal {
                    OrthogonalClass::Bundle {
                        slope,
                        minimal_rank,
                        minimal_degree,
                    } => out.push_str(&format!(
                        "  orthogonal class: slope {slope}, minimal class ({minimal_rank},{minimal_degree})\n"
                    )),
                    OrthogonalClass::SkyscraperOffSupport => {
                        out.push_str("  orthogonal class: skyscraper at any point outside the support\n")
                    }
                }
            }
        }
    }
    out
}
