//! Structural constraints beyond the sum equations: lattice facts about the
//! distance-3 graph, kept as data, and double counts linking two families.

mod link;
mod rules;

pub use link::{link_pair_count, LinkOutcome, LinkResult, LinkSide, LinkSpec, PointSet};
pub use rules::{
    apply_rules, builtin_rules, lattice_gate, load_rules, parse_cell, rules_for, ConstraintRule, Relation, RuleCategory,
    RuleFile, BUILTIN_RULES_TOML,
};

use crate::triples::{TripleConfig, TripleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("rule file: {0}")]
    RuleFile(String),
    #[error("rule {0}: {1}")]
    InvalidRule(String, String),
    #[error("lattice check failed: {0}")]
    LatticeCheckFailed(String),
    #[error("rule {rule} is for configuration {rule_config}, family has {family_config}")]
    ConfigMismatch { rule: String, rule_config: TripleConfig, family_config: TripleConfig },
    #[error("linking: {0}")]
    LinkMismatch(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}
