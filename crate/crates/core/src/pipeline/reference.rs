use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::constraints::parse_cell;
use crate::triples::{cell_index, cell_name, TripleConfig};

/// Bundled claimed tables for `{55,54,2;1,1,54}`.
pub const REFERENCE_TABLES_TOML: &str = include_str!("../../data/reference_tables.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawFile {
    format_version: u32,
    table: Vec<RawTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawTable {
    id: String,
    config: String,
    stage: String,
    params: BTreeMap<String, [i64; 2]>,
    entries: BTreeMap<String, String>,
}

/// `constant + sum coeffs[name] * name`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AffineExpr {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl AffineExpr {
    pub fn eval(&self, values: &BTreeMap<String, i64>) -> Option<i64> {
        let mut acc = self.constant;
        for (name, a) in &self.coeffs {
            acc += a * values.get(name)?;
        }
        Some(acc)
    }
}

/// Parses expressions such as `-2*r6 + r7 - 49`, `2r6 + 5` or `52`.
pub fn parse_affine(text: &str) -> Option<AffineExpr> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut expr = AffineExpr::default();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (sign, body) = match term.as_bytes().first()? {
            b'-' => (-1, &term[1..]),
            b'+' => (1, &term[1..]),
            _ => (1, term),
        };
        let body = body.replace('*', "");
        let split = body.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(body.len());
        let (num, var) = body.split_at(split);
        if var.is_empty() {
            expr.constant += sign * num.parse::<i64>().ok()?;
            continue;
        }
        if !var.chars().skip(1).all(|c| c.is_ascii_alphanumeric()) {
            return None;
        }
        let k = if num.is_empty() { 1 } else { num.parse::<i64>().ok()? };
        *expr.coeffs.entry(var.to_string()).or_insert(0) += sign * k;
    }
    expr.coeffs.retain(|_, a| *a != 0);
    Some(expr)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceTable {
    pub id: String,
    pub config: TripleConfig,
    pub stage: String,
    pub params: BTreeMap<String, (i64, i64)>,
    /// Listed cells (indices into the `d^3` layout) with their expressions.
    pub entries: BTreeMap<usize, AffineExpr>,
}

pub fn load_reference_tables(text: &str, d: usize) -> Result<Vec<ReferenceTable>, PipelineError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| PipelineError::Reference(e.to_string()))?;
    raw.table
        .into_iter()
        .map(|t| {
            let bad = |m: String| PipelineError::Reference(format!("table {}: {m}", t.id));
            let config: TripleConfig = t.config.parse().map_err(|_| bad(format!("bad config {}", t.config)))?;
            let mut entries = BTreeMap::new();
            for (key, value) in &t.entries {
                let expr = parse_affine(value).ok_or_else(|| bad(format!("bad expression {value:?}")))?;
                for unknown in expr.coeffs.keys().filter(|n| !t.params.contains_key(*n)) {
                    return Err(bad(format!("unknown parameter {unknown}")));
                }
                for name in key.split('=') {
                    let (i, j, h) = parse_cell(name).ok_or_else(|| bad(format!("bad cell {name}")))?;
                    if [i, j, h].iter().any(|&x| x == 0 || x > d) {
                        return Err(bad(format!("cell {name} out of range")));
                    }
                    if entries.insert(cell_index(d, i, j, h), expr.clone()).is_some() {
                        return Err(bad(format!("cell {name} listed twice")));
                    }
                }
            }
            let params = t.params.iter().map(|(k, &[lo, hi])| (k.clone(), (lo, hi))).collect();
            Ok(ReferenceTable { id: t.id, config, stage: t.stage, params, entries })
        })
        .collect()
}

impl ReferenceTable {
    /// Values of the listed cells over the parameter box, keeping the
    /// assignments where every listed cell is non-negative.
    pub fn projected_points(&self) -> BTreeSet<Vec<i64>> {
        let names: Vec<&String> = self.params.keys().collect();
        let mut out = BTreeSet::new();
        let mut values: BTreeMap<String, i64> = self.params.iter().map(|(k, r)| (k.clone(), r.0)).collect();
        loop {
            let point: Option<Vec<i64>> = self.entries.values().map(|e| e.eval(&values)).collect();
            let point = point.expect("parameters checked at load");
            if point.iter().all(|&x| x >= 0) {
                out.insert(point);
            }
            // odometer over the box
            let mut k = 0;
            loop {
                let Some(name) = names.get(k) else { return out };
                let (lo, hi) = self.params[*name];
                let v = values.get_mut(*name).unwrap();
                if *v < hi {
                    *v += 1;
                    break;
                }
                *v = lo;
                k += 1;
            }
        }
    }

    pub fn cells(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn cell_names(&self, d: usize) -> Vec<String> {
        self.entries.keys().map(|&c| cell_name(d, c)).collect()
    }
}

fn project(point: &[i64], cells: &[usize]) -> Vec<i64> {
    cells.iter().map(|&c| point[c]).collect()
}

/// Lifts projected reference points to full points of `universe` (normally
/// every integer solution of the unconstrained system).
pub fn lift_points(
    table: &ReferenceTable,
    universe: &[Vec<i64>],
) -> (BTreeSet<Vec<i64>>, BTreeSet<Vec<i64>>) {
    let cells = table.cells();
    let mut by_projection: BTreeMap<Vec<i64>, Vec<&Vec<i64>>> = BTreeMap::new();
    for p in universe {
        by_projection.entry(project(p, &cells)).or_default().push(p);
    }
    let mut lifted = BTreeSet::new();
    let mut unliftable = BTreeSet::new();
    for q in table.projected_points() {
        match by_projection.get(&q) {
            Some(ps) => lifted.extend(ps.iter().map(|p| (*p).clone())),
            None => {
                unliftable.insert(q);
            }
        }
    }
    (lifted, unliftable)
}

/// Set comparison of a claimed table with a derived point set, on the cells
/// the table lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison {
    pub table: String,
    pub config: TripleConfig,
    pub stage: String,
    pub cells: Vec<String>,
    pub reference_points: usize,
    pub derived_points: usize,
    /// Claimed points matching no integer solution of the equations.
    pub not_solutions: Vec<Vec<i64>>,
    pub only_in_reference: Vec<Vec<i64>>,
    pub only_in_derived: Vec<Vec<i64>>,
    pub equal: bool,
}

pub fn compare_table(
    table: &ReferenceTable,
    d: usize,
    universe: &[Vec<i64>],
    derived: &[Vec<i64>],
) -> TableComparison {
    let cells = table.cells();
    let reference = table.projected_points();
    let (_, unliftable) = lift_points(table, universe);
    let derived_proj: BTreeSet<Vec<i64>> = derived.iter().map(|p| project(p, &cells)).collect();
    let only_in_reference: Vec<Vec<i64>> = reference.difference(&derived_proj).cloned().collect();
    let only_in_derived: Vec<Vec<i64>> = derived_proj.difference(&reference).cloned().collect();
    TableComparison {
        table: table.id.clone(),
        config: table.config,
        stage: table.stage.clone(),
        cells: table.cell_names(d),
        reference_points: reference.len(),
        derived_points: derived_proj.len(),
        equal: only_in_reference.is_empty() && only_in_derived.is_empty(),
        not_solutions: unliftable.into_iter().collect(),
        only_in_reference,
        only_in_derived,
    }
}

/// True when the single point of a fixed table is among the derived points.
pub fn table_is_member(table: &ReferenceTable, derived: &[Vec<i64>]) -> bool {
    let cells = table.cells();
    let refs = table.projected_points();
    !refs.is_empty() && refs.iter().all(|q| derived.iter().any(|p| project(p, &cells) == *q))
}
