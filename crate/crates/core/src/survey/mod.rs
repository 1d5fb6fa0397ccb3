//! Exhaustive surveys: enumeration, per-graph classification, aggregation
//! and JSON-lines persistence.

mod enumerate;
mod run;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GroupElement};
use crate::autgroup::{arc_orbits, edge_orbits, set_stabilizer_action};
use crate::compat::{compatible_cayley_search, DEFAULT_NODE_LIMIT};
use crate::graph::cayley_graph;
use crate::stability::{analyze, Status, TrivialReason};
use crate::wilson;

pub use enumerate::{
    enumerate_abelian_cayley, enumerate_connection_sets, group_negation_orbits, is_orbit_representative,
    negation_orbits, DEFAULT_ABELIAN_ORDER_CAP,
};
pub use run::{
    read_records, run_survey, C2Tally, ConditionCounts, SurveyAggregate, SurveyHeader, ViolationCounts,
    SURVEY_FORMAT_VERSION,
};

/// When to run the compatibility search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompatMode {
    /// Only for groups of order at most 16.
    Auto,
    Always,
    Never,
}

pub const AUTO_COMPAT_MAX_ORDER: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyOptions {
    pub compat: CompatMode,
    pub node_limit: u64,
    pub transitivity: bool,
    pub normality: bool,
    /// Keep one set per orbit of group automorphisms.
    pub dedupe_ci: bool,
    /// Keep only circulants satisfying C.2 with this `b`.
    pub c2_b: Option<u64>,
    pub workers: Option<usize>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            compat: CompatMode::Auto,
            node_limit: DEFAULT_NODE_LIMIT,
            transitivity: true,
            normality: true,
            dedupe_ci: false,
            c2_b: None,
            workers: None,
        }
    }
}

/// Connection set as plain residues for circulants, coordinate tuples otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetRepr {
    Cyclic(Vec<u64>),
    Product(Vec<Vec<u64>>),
}

impl SetRepr {
    pub fn new(group: &AbelianGroup, set: &[GroupElement]) -> Self {
        let mut sorted = set.to_vec();
        sorted.sort();
        if group.rank() == 1 {
            SetRepr::Cyclic(sorted.iter().map(|e| e.0[0]).collect())
        } else {
            SetRepr::Product(sorted.into_iter().map(|e| e.0).collect())
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            SetRepr::Cyclic(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            SetRepr::Product(v) => v
                .iter()
                .map(|c| format!("({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionSummary {
    pub c1: bool,
    pub c1_vacuous: bool,
    pub c2: bool,
    pub c2_vacuous: bool,
    pub c2_bs: Vec<u64>,
    pub c2prime: bool,
    pub c3: bool,
    pub c4: bool,
    pub any: bool,
    pub any_corrected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageTimes {
    pub stability: u64,
    pub conditions: u64,
    pub transitivity: u64,
    pub normality: u64,
    pub compat: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyRecord {
    pub group: String,
    pub order: usize,
    pub set: SetRepr,
    pub status: Option<Status>,
    pub aut_order: Option<String>,
    pub dcover_aut_order: Option<String>,
    pub trivial_reasons: Vec<TrivialReason>,
    pub connected: Option<bool>,
    pub bipartite: Option<bool>,
    pub vertex_determining: Option<bool>,
    pub conditions: Option<ConditionSummary>,
    pub arc_transitive: Option<bool>,
    pub edge_transitive: Option<bool>,
    pub normal_cayley: Option<bool>,
    /// `null` when skipped or inconclusive.
    pub compatible: Option<bool>,
    pub compat_inconclusive: bool,
    pub errors: Vec<String>,
    pub elapsed_ms: StageTimes,
}

impl SurveyRecord {
    pub fn key(&self) -> String {
        format!("{}|{}", self.group, self.set.to_text())
    }

    pub fn is_unstable(&self) -> bool {
        matches!(self.status, Some(s) if !s.is_stable())
    }
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Run every stage on `Cay(G,S)`; stage failures land in `errors`.
pub fn classify_one(group: &AbelianGroup, set: &[GroupElement], opts: &SurveyOptions) -> SurveyRecord {
    let mut rec = SurveyRecord {
        group: group.descriptor(),
        order: group.order(),
        set: SetRepr::new(group, set),
        status: None,
        aut_order: None,
        dcover_aut_order: None,
        trivial_reasons: Vec::new(),
        connected: None,
        bipartite: None,
        vertex_determining: None,
        conditions: None,
        arc_transitive: None,
        edge_transitive: None,
        normal_cayley: None,
        compatible: None,
        compat_inconclusive: false,
        errors: Vec::new(),
        elapsed_ms: StageTimes::default(),
    };
    let graph = match cayley_graph(group, set) {
        Ok(g) => g,
        Err(e) => {
            rec.errors.push(format!("graph: {e}"));
            return rec;
        }
    };

    let t = Instant::now();
    let analysis = analyze(&graph);
    rec.elapsed_ms.stability = ms(t);
    let analysis = match analysis {
        Ok(a) => {
            rec.status = Some(a.verdict.status);
            rec.aut_order = Some(a.verdict.aut_order.to_string());
            rec.dcover_aut_order = Some(a.verdict.dcover_aut_order.to_string());
            rec.trivial_reasons = a.verdict.trivial_reasons.clone();
            rec.connected = Some(a.connected);
            rec.bipartite = Some(a.bipartite);
            rec.vertex_determining = Some(a.vertex_determining);
            Some(a)
        }
        Err(e) => {
            rec.errors.push(format!("stability: {e}"));
            None
        }
    };

    if let Some(n) = group.cyclic_order() {
        let t = Instant::now();
        let s: Vec<u64> = set.iter().map(|e| e.0[0]).collect();
        let r = wilson::report(n, &s);
        rec.conditions = Some(ConditionSummary {
            c1: r.c1.holds,
            c1_vacuous: r.c1.vacuous,
            c2: r.c2.holds,
            c2_vacuous: r.c2.vacuous,
            c2_bs: r.c2.all_b,
            c2prime: r.c2prime.holds,
            c3: r.c3.holds,
            c4: r.c4.holds,
            any: r.any,
            any_corrected: r.any_corrected,
        });
        rec.elapsed_ms.conditions = ms(t);
    }

    if let (true, Some(a)) = (opts.transitivity, &analysis) {
        let t = Instant::now();
        match (arc_orbits(&graph, &a.aut), edge_orbits(&graph, &a.aut)) {
            (Ok(arcs), Ok(edges)) => {
                rec.arc_transitive = Some(arcs.len() == 1);
                rec.edge_transitive = Some(edges.len() == 1);
            }
            (Err(e), _) | (_, Err(e)) => rec.errors.push(format!("transitivity: {e}")),
        }
        rec.elapsed_ms.transitivity = ms(t);
    }

    if let (true, Some(a)) = (opts.normality, &analysis) {
        let t = Instant::now();
        match set_stabilizer_action(group, set) {
            Ok(stab) => {
                let expected = num_bigint::BigUint::from(group.order()) * num_bigint::BigUint::from(stab.len());
                rec.normal_cayley = Some(a.aut.order() == expected);
            }
            Err(e) => rec.errors.push(format!("normality: {e}")),
        }
        rec.elapsed_ms.normality = ms(t);
    }

    let run_compat = match opts.compat {
        CompatMode::Always => true,
        CompatMode::Never => false,
        CompatMode::Auto => group.order() <= AUTO_COMPAT_MAX_ORDER,
    };
    if run_compat {
        let t = Instant::now();
        match compatible_cayley_search(group, set, opts.node_limit) {
            Ok(r) => {
                rec.compatible = r.decided();
                rec.compat_inconclusive = r.inconclusive;
            }
            Err(e) => rec.errors.push(format!("compat: {e}")),
        }
        rec.elapsed_ms.compat = ms(t);
    }
    rec
}
