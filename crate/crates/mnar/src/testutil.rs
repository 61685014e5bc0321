//! Fixtures shared by the unit test suites.

use crate::corpus::TransactionDatabase;
use crate::itemset::Itemset;

/// Six transactions over items A C D T W. Small enough that supports,
/// closures, generators, and rules can all be checked by hand, yet rich
/// enough to exercise every branch of the pipeline.
pub const SAMPLE: &str = "A C T W\nC D W\nA C T W\nA C D W\nA C D T W\nC D T\n";

pub fn sample_db() -> TransactionDatabase {
    TransactionDatabase::parse(SAMPLE)
}

/// Itemset from labels that must exist in `db`.
pub fn iset(db: &TransactionDatabase, labels: &[&str]) -> Itemset {
    db.itemset_of(labels)
        .unwrap_or_else(|| panic!("labels {labels:?} not all present"))
}
