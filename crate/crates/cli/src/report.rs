//! Machine-readable run reports.
//!
//! Field order is fixed by the struct layouts, so two identical runs
//! serialize to identical JSON except for `timings_ms`.

use indexmap::IndexMap;
use irrepcount_core::decide::{DecisionMetrics, Verdict};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Inconclusive,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptionsEcho {
    pub quotient_mode: &'static str,
    pub order: &'static str,
    pub max_seconds: u64,
    pub max_degree: u32,
    pub max_basis_size: usize,
    pub length_bound_override: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub file: String,
    pub n: usize,
    pub generators: Option<usize>,
    pub relations: Option<usize>,
    pub options: OptionsEcho,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Metrics {
    pub variables: usize,
    pub relation_generators: usize,
    pub relation_basis_size: usize,
    pub relation_basis_max_degree: u32,
    pub sset_raw_tuples: u128,
    pub sset_evaluated_tuples: u64,
    pub sset_size: usize,
    pub sset_used: usize,
    pub trace_generators: usize,
    pub j_basis_size: usize,
    pub j_basis_max_degree: u32,
    pub algebra_dimension: Option<usize>,
    pub trace_form_rank: Option<usize>,
}

impl From<&DecisionMetrics> for Metrics {
    fn from(m: &DecisionMetrics) -> Self {
        Metrics {
            variables: m.variables,
            relation_generators: m.relation_generators,
            relation_basis_size: m.relation_basis_size,
            relation_basis_max_degree: m.relation_basis_max_degree,
            sset_raw_tuples: m.sset_raw_tuples,
            sset_evaluated_tuples: m.sset_evaluated_tuples,
            sset_size: m.sset_size,
            sset_used: m.sset_used,
            trace_generators: m.trace_generators,
            j_basis_size: m.j_basis_size,
            j_basis_max_degree: m.j_basis_max_degree,
            algebra_dimension: None,
            trace_form_rank: None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub parse: u64,
    pub space: u64,
    pub relations: u64,
    pub sset: u64,
    pub j: u64,
    pub algebraic: u64,
    pub count: u64,
    pub total: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub status: Status,
    pub command: &'static str,
    pub input: InputEcho,
    pub verdict: Option<&'static str>,
    pub count: Option<usize>,
    pub witness: Option<String>,
    /// Trace generator to the degree of its minimal polynomial, in the
    /// canonical generator order.
    pub minimal_polynomials: IndexMap<String, usize>,
    pub limit: Option<String>,
    pub error: Option<String>,
    pub warnings: Vec<String>,
    pub metrics: Option<Metrics>,
    pub timings_ms: Timings,
}

impl RunReport {
    pub fn new(command: &'static str, input: InputEcho) -> Self {
        RunReport {
            status: Status::Error,
            command,
            input,
            verdict: None,
            count: None,
            witness: None,
            minimal_polynomials: IndexMap::new(),
            limit: None,
            error: None,
            warnings: Vec::new(),
            metrics: None,
            timings_ms: Timings::default(),
        }
    }

    pub fn record_verdict(&mut self, v: &Verdict) {
        self.verdict = Some(v.outcome.name());
        self.witness = v.witness.as_ref().map(|w| w.to_string());
        self.minimal_polynomials = v
            .minimal_polynomials
            .iter()
            .map(|r| (r.generator.to_string(), r.polynomial.degree()))
            .collect();
        self.limit = v.limit.as_ref().map(|l| l.to_string());
        self.metrics = Some(Metrics::from(&v.metrics));
        let t = &v.metrics.timings;
        self.timings_ms.space = t.space_ms;
        self.timings_ms.relations = t.relations_ms;
        self.timings_ms.sset = t.sset_ms;
        self.timings_ms.j = t.j_ms;
        self.timings_ms.algebraic = t.algebraic_ms;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
