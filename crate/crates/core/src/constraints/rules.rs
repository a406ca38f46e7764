use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ConstraintError;
use crate::drg::{distance_graph_srg_params, ParameterTable, SrgParams};
use crate::exactmath::Rational;
use crate::triples::{cell_index, CellEquation, CellInequality, TripleConfig, TripleFamily};

/// Bundled rule file.
pub const BUILTIN_RULES_TOML: &str = include_str!("../../data/lattice_rules.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleCategory {
    LatticeGeometry,
    Linking,
    Inequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Le,
}

/// One linear constraint on triple cells: `sum coefficients[cell] * [cell] (=|<=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintRule {
    pub id: String,
    /// `duv,duw,dvw`.
    pub config: String,
    pub category: RuleCategory,
    pub relation: Relation,
    pub coefficients: BTreeMap<String, i64>,
    pub rhs: i64,
    pub provenance: String,
    /// Set when the rule is taken as given rather than verified.
    #[serde(default)]
    pub assumption: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFile {
    pub format_version: u32,
    #[serde(rename = "rule", default)]
    pub rules: Vec<ConstraintRule>,
}

impl RuleFile {
    pub fn parse(text: &str) -> Result<Self, ConstraintError> {
        let file: RuleFile = toml::from_str(text).map_err(|e| ConstraintError::RuleFile(e.to_string()))?;
        for r in &file.rules {
            r.validate()?;
        }
        Ok(file)
    }

    pub fn to_toml(&self) -> Result<String, ConstraintError> {
        toml::to_string(self).map_err(|e| ConstraintError::RuleFile(e.to_string()))
    }
}

/// Parses `[ijh]` (or `[i,j,h]`) into 1-based indices.
pub fn parse_cell(name: &str) -> Option<(usize, usize, usize)> {
    let inner = name.trim().strip_prefix('[')?.strip_suffix(']')?;
    let digits: Vec<usize> = if inner.contains(',') {
        inner.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?
    } else {
        inner.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?
    };
    match digits[..] {
        [i, j, h] => Some((i, j, h)),
        _ => None,
    }
}

impl ConstraintRule {
    pub fn config(&self) -> Result<TripleConfig, ConstraintError> {
        self.config
            .parse()
            .map_err(|_| ConstraintError::InvalidRule(self.id.clone(), format!("bad config {:?}", self.config)))
    }

    pub fn validate(&self) -> Result<(), ConstraintError> {
        let bad = |m: &str| Err(ConstraintError::InvalidRule(self.id.clone(), m.to_string()));
        self.config()?;
        if self.provenance.trim().is_empty() {
            return bad("empty provenance");
        }
        if self.coefficients.is_empty() {
            return bad("no coefficients");
        }
        for name in self.coefficients.keys() {
            match parse_cell(name) {
                Some((i, j, h)) if i >= 1 && j >= 1 && h >= 1 => {}
                _ => return bad(&format!("bad cell {name}")),
            }
        }
        Ok(())
    }

    /// Coefficient vector over the `d^3` cells.
    pub fn cell_coeffs(&self, d: usize) -> Result<Vec<Rational>, ConstraintError> {
        let mut v = vec![Rational::zero(); d * d * d];
        for (name, &a) in &self.coefficients {
            let (i, j, h) = parse_cell(name).expect("validated");
            if i > d || j > d || h > d {
                return Err(ConstraintError::InvalidRule(self.id.clone(), format!("{name} out of range for d = {d}")));
            }
            v[cell_index(d, i, j, h)] += &Rational::from(a);
        }
        Ok(v)
    }

    pub fn describe(&self) -> String {
        let lhs: Vec<String> = self
            .coefficients
            .iter()
            .map(|(c, &a)| if a == 1 { c.clone() } else { format!("{a}*{c}") })
            .collect();
        let op = match self.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
        };
        format!("{} {op} {}", lhs.join(" + "), self.rhs)
    }
}

pub fn load_rules(text: &str) -> Result<Vec<ConstraintRule>, ConstraintError> {
    Ok(RuleFile::parse(text)?.rules)
}

/// Lattice order `n` of the distance-`d` graph, if it has the parameters of
/// `L2(n)` with `n != 4` (where those parameters determine the graph).
pub fn lattice_gate(pt: &ParameterTable) -> Result<(SrgParams, u64), ConstraintError> {
    let d = pt.diameter();
    if d != 3 {
        return Err(ConstraintError::LatticeCheckFailed(format!("diameter {d}, rules need diameter 3")));
    }
    let srg = distance_graph_srg_params(pt, d).map_err(|e| ConstraintError::LatticeCheckFailed(e.to_string()))?;
    match srg.lattice_order() {
        Some(n) if n != 4 => Ok((srg, n)),
        _ => Err(ConstraintError::LatticeCheckFailed(format!(
            "distance-{d} graph has parameters {srg}, not those of a lattice graph"
        ))),
    }
}

/// The bundled lattice rules, available only when the distance-3 graph has
/// lattice-graph parameters.
pub fn builtin_rules(pt: &ParameterTable) -> Result<Vec<ConstraintRule>, ConstraintError> {
    lattice_gate(pt)?;
    load_rules(BUILTIN_RULES_TOML)
}

/// Adds the equalities to the linear system and the inequalities to the bounds.
pub fn apply_rules(fam: &TripleFamily, rules: &[ConstraintRule]) -> Result<TripleFamily, ConstraintError> {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for r in rules {
        let cfg = r.config()?;
        if cfg != fam.config {
            return Err(ConstraintError::ConfigMismatch { rule: r.id.clone(), rule_config: cfg, family_config: fam.config });
        }
        let coeffs = r.cell_coeffs(fam.d)?;
        let label = format!("{}: {}", r.id, r.describe());
        match r.relation {
            Relation::Eq => eqs.push(CellEquation { coeffs, rhs: r.rhs.into(), label }),
            Relation::Le => ineqs.push(CellInequality { coeffs, rhs: r.rhs.into(), label }),
        }
    }
    let fam = if eqs.is_empty() { fam.clone() } else { fam.with_equations(eqs)? };
    Ok(fam.with_inequalities(ineqs))
}

/// Rules of the list whose configuration is `cfg`.
pub fn rules_for(rules: &[ConstraintRule], cfg: TripleConfig) -> Vec<ConstraintRule> {
    rules.iter().filter(|r| r.config().ok() == Some(cfg)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bundled_file_round_trips_byte_exact() {
        let file = RuleFile::parse(BUILTIN_RULES_TOML).unwrap();
        assert_eq!(file.to_toml().unwrap(), BUILTIN_RULES_TOML);
        assert_eq!(file.rules.len(), 4);
    }

    #[test]
    fn cell_names_parse() {
        assert_eq!(parse_cell("[133]"), Some((1, 3, 3)));
        assert_eq!(parse_cell("[1,10,2]"), Some((1, 10, 2)));
        assert_eq!(parse_cell("133"), None);
        assert_eq!(parse_cell("[13]"), None);
    }

    #[test]
    fn invalid_rules_rejected() {
        let text = BUILTIN_RULES_TOML.replacen("[333]", "[3x3]", 1);
        assert!(RuleFile::parse(&text).is_err());
    }

    fn rule_strategy() -> impl Strategy<Value = ConstraintRule> {
        (
            "[a-z][a-z0-9-]{0,12}",
            (1usize..4, 1usize..4, 1usize..4),
            prop_oneof![Just(RuleCategory::LatticeGeometry), Just(RuleCategory::Linking), Just(RuleCategory::Inequality)],
            prop_oneof![Just(Relation::Eq), Just(Relation::Le)],
            proptest::collection::btree_map((1usize..4, 1usize..4, 1usize..4), -5i64..6, 1..4),
            -100i64..100,
            "[A-Za-z][A-Za-z0-9 ,.()=]{0,40}",
            any::<bool>(),
        )
            .prop_map(|(id, (a, b, c), category, relation, coeffs, rhs, provenance, assumption)| ConstraintRule {
                id,
                config: format!("{a},{b},{c}"),
                category,
                relation,
                coefficients: coeffs.into_iter().map(|((i, j, h), v)| (format!("[{i}{j}{h}]"), v)).collect(),
                rhs,
                provenance,
                assumption,
            })
    }

    proptest! {
        #[test]
        fn rule_files_round_trip(rules in proptest::collection::vec(rule_strategy(), 0..5)) {
            let file = RuleFile { format_version: 1, rules };
            let text = file.to_toml().unwrap();
            let back = RuleFile::parse(&text).unwrap();
            prop_assert_eq!(&back, &file);
            prop_assert_eq!(back.to_toml().unwrap(), text);
        }
    }
}
