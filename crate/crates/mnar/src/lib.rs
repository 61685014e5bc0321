//! Frequent closed itemset mining and minimal non-redundant association
//! rules.
//!
//! The pipeline has three stages. First, [`mine_closed`] finds the
//! frequent closed itemsets of a transaction database, the itemsets no
//! strict superset can match in support. Second, [`minimal_generators`]
//! attaches to each closed set its inclusion-minimal equal-support
//! subsets, and [`build_lattice`] arranges everything into a DAG ordered
//! by inclusion under a virtual empty root. Third, [`mine_mnar`] walks
//! that lattice and emits the minimal non-redundant rules: antecedents are
//! minimal generators, consequents come from the generator's own closure
//! (exact rules, confidence 1) or a descendant closure (approximate
//! rules), with confidence kept as an exact integer quotient throughout.
//!
//! ```
//! use mnar::{build_lattice, mine_closed, mine_mnar, minimal_generators};
//! use mnar::{MinconfSpec, TransactionDatabase, VerticalIndex};
//!
//! let db = TransactionDatabase::parse("A C T W\nC D W\nA C T W\nA C D W\nA C D T W\nC D T\n");
//! let patterns = mine_closed(&db, 3);
//! let index = VerticalIndex::build(&db);
//! let generators = minimal_generators(&patterns, &index);
//! let lattice = build_lattice(patterns, generators, db.tid_count());
//! let rules = mine_mnar(&lattice, &MinconfSpec::parse("0.8").unwrap());
//! assert_eq!(rules.len(), 9);
//! ```
//!
//! The [`oracle`] module holds brute-force reference implementations of
//! every stage, used by the test suites and the CLI's `--verify` flag.

pub mod cli;
pub mod closed;
pub mod corpus;
pub mod error;
pub mod format;
pub mod itemset;
pub mod lattice;
pub mod mingen;
pub mod oracle;
pub mod ratio;
pub mod rulegen;
pub mod tidset;

#[cfg(test)]
pub(crate) mod testutil;

pub use closed::{count_frequent, mine_closed, resolve_minsup, ClosedPattern, MinsupSpec};
pub use corpus::{TransactionDatabase, VerticalIndex};
pub use error::{Error, Result};
pub use format::{OutputFormat, RuleRecord};
pub use itemset::{ItemId, Itemset};
pub use lattice::{build_lattice, Lattice, LatticeNode, NodeId};
pub use mingen::{minimal_generators, GeneratorSet};
pub use ratio::Ratio;
pub use rulegen::{
    find_rules, mine_mnar, mine_mnar_unpruned, rules_from_node, rules_from_node_unpruned,
    sort_rules, MinconfSpec, Rule,
};
pub use tidset::{Tid, Tidset};
