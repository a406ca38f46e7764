use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::checks::{CountingCertificate, LambdaBounds};
use super::reference::TableComparison;
use crate::constraints::LinkResult;
use crate::triples::{TripleConfig, TripleFamily};

/// Anchor id and the formula or fact a step rests on. Step anchors must
/// resolve here.
pub const ANCHORS: &[(&str, &str)] = &[
    ("p-numbers", "p^h_ij from the three-term recurrence of the distance matrices"),
    ("spectrum", "eigenvalues of the tridiagonal matrix L1, multiplicities v / sum_i u_i(theta)^2 k_i"),
    ("eigenmatrices", "P from the standard sequences, Q = v P^-1"),
    ("krein", "q^h_ij = (m_i m_j / v) sum_l P_li P_lj P_lh / k_l^2"),
    ("distance-3-graph", "distance-3 graph with SRG(n^2, 2(n-1), n-2, 2) parameters, n != 4, is the n x n lattice"),
    ("sum-equations", "sum_l [ljh] = p^U_jh - [0jh] and its two companions; [ijh] = 0 when a bounding p-number vanishes"),
    ("triples-211", "(+) for d(u,v) = 2, d(u,w) = 1, d(v,w) = 1"),
    ("triples-223", "(+) for (2,2,3), relabelling v <-> w, lattice rules on [333] and [133]"),
    ("triples-221", "(+) for (2,2,1), relabelling v <-> w, lattice rule [333] = 0"),
    ("triples-222", "(+) for (2,2,2), all relabellings, lattice rule [333] = 0"),
    ("relabel-relations", "[ijh]' = [ihj] and [ijh]* = [jih] evaluated on independent parameter copies"),
    ("pair-count", "pairs (y, z) with y in the (2,2,1) cell and z in the (2,2,3) cell at distance 3, counted from both ends"),
    ("final-count", "p^2_21 vertices forced into Gamma_3(x) ∩ Gamma_3(y) minus v, of size mu - 1"),
    ("lambda-average", "e = p^2_21 [222] + p^2_23 [222], lambda = p^2_22 - 1 - e / p^2_22"),
    ("reference-tables", "set comparison of the bundled claimed tables with the derived integer points"),
];

pub fn anchor_text(id: &str) -> Option<&'static str> {
    ANCHORS.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Ok,
    Infeasible,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub name: String,
    pub anchor: String,
    pub input_digest: String,
    pub output_digest: String,
    pub status: StepStatus,
    pub summary: String,
    pub data: serde_json::Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Infeasible,
    FeasibleUnresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Counting(CountingCertificate),
    EmptyFamily { config: TripleConfig, stage: String },
    InconsistentSystem { config: TripleConfig, equations: Vec<String> },
    LinkCount { link: Box<LinkResult> },
    Parameters { message: String },
}

impl Certificate {
    pub fn counting(&self) -> Option<&CountingCertificate> {
        match self {
            Certificate::Counting(c) => Some(c),
            _ => None,
        }
    }
}

/// One stage of one configuration's family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub config: TripleConfig,
    pub stage: String,
    pub parameters: Vec<String>,
    pub table: BTreeMap<String, String>,
    /// `None` when enumeration exceeded the cap.
    pub points: Option<usize>,
    pub ranges: BTreeMap<String, (i64, i64)>,
}

impl FamilySummary {
    pub fn new(fam: &TripleFamily, stage: &str, points: Option<&[Vec<i64>]>) -> Self {
        let names = crate::triples::cell_names(fam.d);
        let ranges = match points {
            Some(pts) => (0..fam.num_cells())
                .filter_map(|c| super::range(pts, c).map(|r| (names[c].clone(), r)))
                .collect(),
            None => BTreeMap::new(),
        };
        FamilySummary {
            config: fam.config,
            stage: stage.to_string(),
            parameters: fam.parameter_names().iter().map(|s| s.to_string()).collect(),
            table: fam.table().into_iter().collect(),
            points: points.map(<[Vec<i64>]>::len),
            ranges,
        }
    }
}

/// A claimed linear relation between relabelled copies and whether the
/// coupled system implies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub implied: bool,
}

/// The tail of the argument re-run with a stated premise in place of a
/// derived set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionalChain {
    pub premise: String,
    pub premise_points: usize,
    pub premise_222_values: Vec<i64>,
    pub link: Option<LinkResult>,
    pub resolved_221: Option<FamilySummary>,
    pub verdict: Verdict,
    pub certificate: Option<CountingCertificate>,
    pub lambda_bounds: Option<LambdaBounds>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub array: String,
    pub steps: Vec<ProofStep>,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub families: Vec<FamilySummary>,
    pub relation_checks: Vec<RelationCheck>,
    pub link: Option<LinkResult>,
    pub lambda_bounds: Option<LambdaBounds>,
    pub comparisons: Vec<TableComparison>,
    pub branch_membership: BTreeMap<String, bool>,
    pub discrepancies: Vec<String>,
    pub assumptions: Vec<String>,
    pub conditional: Option<ConditionalChain>,
    pub notes: Vec<String>,
}

impl ProofReport {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn family(&self, config: TripleConfig, stage: &str) -> Option<&FamilySummary> {
        self.families.iter().find(|f| f.config == config && f.stage == stage)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "array {}", self.array);
        for (k, step) in self.steps.iter().enumerate() {
            let status = match step.status {
                StepStatus::Ok => "ok",
                StepStatus::Infeasible => "INFEASIBLE",
                StepStatus::Skipped => "skipped",
            };
            let _ = writeln!(s, "{:>2}. {:<22} {:<10} {}", k + 1, step.name, status, step.summary);
        }
        if let Some(link) = &self.link {
            let _ = writeln!(s, "link: {} -> {:?}", link.relation, link.outcomes);
        }
        if let Some(b) = &self.lambda_bounds {
            let _ = writeln!(
                s,
                "lambda bounds: e in [{}, {}], lambda in [{}, {}]",
                b.e_min, b.e_max, b.lambda_min_3dp, b.lambda_max_3dp
            );
        }
        let verdict = match self.verdict {
            Verdict::Infeasible => "INFEASIBLE",
            Verdict::FeasibleUnresolved => "FEASIBLE_UNRESOLVED",
        };
        let _ = writeln!(s, "verdict: {verdict}");
        match &self.certificate {
            Some(Certificate::Counting(c)) => {
                let _ = writeln!(s, "certificate: demand {} > capacity {}", c.demand, c.capacity);
            }
            Some(other) => {
                let _ = writeln!(s, "certificate: {}", serde_json::to_string(other).unwrap_or_default());
            }
            None => {}
        }
        for c in &self.comparisons {
            let _ = writeln!(
                s,
                "table {:<28} reference {:>4} derived {:>4} {}",
                c.table,
                c.reference_points,
                c.derived_points,
                if c.equal { "equal" } else { "DIFFERENT" }
            );
        }
        for d in &self.discrepancies {
            let _ = writeln!(s, "discrepancy: {d}");
        }
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        if let Some(c) = &self.conditional {
            let _ = writeln!(s, "conditional on: {}", c.premise);
            for n in &c.notes {
                let _ = writeln!(s, "  {n}");
            }
            if let Some(cert) = &c.certificate {
                let _ = writeln!(s, "  conditional certificate: demand {} > capacity {}", cert.demand, cert.capacity);
            }
            if let Some(b) = &c.lambda_bounds {
                let _ = writeln!(
                    s,
                    "  conditional lambda bounds: e in [{}, {}], lambda in [{}, {}]",
                    b.e_min, b.e_max, b.lambda_min_3dp, b.lambda_max_3dp
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
