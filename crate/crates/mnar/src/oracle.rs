//! Brute-force reference implementations.
//!
//! Everything here trades speed for obviousness: supports come from
//! horizontal scans, search spaces are enumerated in full, and nothing is
//! shared with the mining code paths beyond the core data types. The test
//! suites compare the clever implementations against these on small
//! inputs; sizes past the enumeration caps are refused rather than
//! silently truncated.

use crate::closed::ClosedPattern;
use crate::corpus::TransactionDatabase;
use crate::error::{Error, Result};
use crate::itemset::{ItemId, Itemset};
use crate::ratio::Ratio;
use crate::rulegen::{sort_rules, Rule};
use crate::tidset::Tidset;

/// Largest item universe the subset-enumeration oracles accept.
pub const MAX_ITEMS: usize = 12;

/// Largest frequent-itemset count the all-rules oracle will partition.
pub const MAX_TAR_ITEMSETS: usize = 4096;

/// Result of closing an itemset. With no covering transaction the
/// intersection is vacuous and defaults to every known item.
pub struct ClosureOutcome {
    pub itemset: Itemset,
    pub vacuous: bool,
}

/// Support by definition: count transactions containing `x`.
pub fn scan_support(db: &TransactionDatabase, x: &Itemset) -> u32 {
    db.transactions().iter().filter(|t| x.is_subset(t)).count() as u32
}

/// Closure by definition: intersect every transaction containing `x`.
pub fn closure(db: &TransactionDatabase, x: &Itemset) -> ClosureOutcome {
    let mut acc: Option<Itemset> = None;
    for t in db.transactions() {
        if x.is_subset(t) {
            acc = Some(match acc {
                None => t.clone(),
                Some(prev) => prev.intersect(t),
            });
        }
    }
    match acc {
        Some(itemset) => ClosureOutcome { itemset, vacuous: false },
        None => ClosureOutcome {
            itemset: (0..db.item_count() as ItemId).collect(),
            vacuous: true,
        },
    }
}

/// Every frequent closed itemset, by checking `closure(x) == x` for each
/// of the `2^n - 1` candidate subsets. Same order as the miner: support
/// descending, ties lexicographic.
pub fn brute_force_closed(db: &TransactionDatabase, minsup: u32) -> Result<Vec<ClosedPattern>> {
    assert!(minsup >= 1, "minsup must be at least 1");
    let table = MaskTable::build(db)?;
    let mut out: Vec<ClosedPattern> = (1..1u32 << table.n)
        .filter(|&m| table.support(m) >= minsup && table.closure(m) == m)
        .map(|m| ClosedPattern {
            itemset: mask_itemset(m),
            support: table.support(m),
            tidset: table.tidset(m),
        })
        .collect();
    out.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.itemset.cmp(&b.itemset))
    });
    Ok(out)
}

/// Minimal generators of a closed itemset by enumerating all of its
/// non-empty subsets and keeping the inclusion-minimal ones that match its
/// support. Rejects inputs that are not closed.
pub fn brute_force_mingens(db: &TransactionDatabase, x: &Itemset) -> Result<Vec<Itemset>> {
    if db.item_count() > MAX_ITEMS {
        return Err(Error::EnumerationCap(format!(
            "{} items exceed the {MAX_ITEMS}-item oracle limit",
            db.item_count()
        )));
    }
    let closed = closure(db, x);
    if closed.vacuous || closed.itemset != *x {
        return Err(Error::NotClosed(format!(
            "{x:?} closes to {:?}",
            closed.itemset
        )));
    }
    let target = scan_support(db, x);
    let items: Vec<ItemId> = x.items().to_vec();
    let mut matching: Vec<u32> = Vec::new();
    for m in 1..1u32 << items.len() {
        let subset: Itemset = items
            .iter()
            .enumerate()
            .filter(|&(i, _)| m & (1 << i) != 0)
            .map(|(_, &it)| it)
            .collect();
        if scan_support(db, &subset) == target {
            matching.push(m);
        }
    }
    let mut gens: Vec<Itemset> = matching
        .iter()
        .filter(|&&m| !matching.iter().any(|&s| s != m && s & m == s))
        .map(|&m| {
            items
                .iter()
                .enumerate()
                .filter(|&(i, _)| m & (1 << i) != 0)
                .map(|(_, &it)| it)
                .collect()
        })
        .collect();
    gens.sort();
    Ok(gens)
}

/// Minimal non-redundant rules straight from the characterization: exact
/// rules send a minimal generator to the rest of its own closure;
/// approximate rules send it into each frequent closed strict superset
/// clearing `minconf`. Confidence is the support quotient, unreduced.
///
/// Generators are re-derived here from the support table rather than via
/// `brute_force_mingens`, whose per-subset rescans are too slow for the
/// conformance sweep; the two agree and the test suite checks it.
pub fn brute_force_mnar(
    db: &TransactionDatabase,
    minsup: u32,
    minconf: Ratio,
) -> Result<Vec<Rule>> {
    assert!(minsup >= 1, "minsup must be at least 1");
    let table = MaskTable::build(db)?;
    let closed: Vec<u32> = (1..1u32 << table.n)
        .filter(|&m| table.support(m) >= minsup && table.closure(m) == m)
        .collect();
    let mut rules: Vec<Rule> = Vec::new();
    for &x in &closed {
        let x_sup = table.support(x);
        for z in table.minimal_generators(x) {
            let antecedent = mask_itemset(z);
            if z != x {
                rules.push(Rule {
                    antecedent: antecedent.clone(),
                    consequent: mask_itemset(x & !z),
                    support: x_sup,
                    confidence: Ratio::new(x_sup as u64, x_sup as u64),
                });
            }
            for &y in &closed {
                if x & y != x || x == y {
                    continue;
                }
                let confidence = Ratio::new(table.support(y) as u64, x_sup as u64);
                if confidence >= minconf {
                    rules.push(Rule {
                        antecedent: antecedent.clone(),
                        consequent: mask_itemset(y & !z),
                        support: table.support(y),
                        confidence,
                    });
                }
            }
        }
    }
    sort_rules(&mut rules);
    Ok(rules)
}

/// The traditional all-rules baseline: every bipartition of every frequent
/// itemset into non-empty antecedent and consequent, filtered by
/// confidence. Redundancy checks in the conformance suite compare the
/// minimal rule set against this.
pub fn brute_force_tar(
    db: &TransactionDatabase,
    minsup: u32,
    minconf: Ratio,
) -> Result<Vec<Rule>> {
    assert!(minsup >= 1, "minsup must be at least 1");
    let table = MaskTable::build(db)?;
    let frequent: Vec<u32> = (1..1u32 << table.n)
        .filter(|&m| table.support(m) >= minsup)
        .collect();
    if frequent.len() > MAX_TAR_ITEMSETS {
        return Err(Error::EnumerationCap(format!(
            "{} frequent itemsets exceed the {MAX_TAR_ITEMSETS} rule-expansion limit",
            frequent.len()
        )));
    }
    let mut rules: Vec<Rule> = Vec::new();
    for &f in &frequent {
        let support = table.support(f);
        // Walk the strict non-empty submasks of f as antecedents.
        let mut a = (f - 1) & f;
        while a != 0 {
            let confidence = Ratio::new(support as u64, table.support(a) as u64);
            if confidence >= minconf {
                rules.push(Rule {
                    antecedent: mask_itemset(a),
                    consequent: mask_itemset(f & !a),
                    support,
                    confidence,
                });
            }
            a = (a - 1) & f;
        }
    }
    sort_rules(&mut rules);
    Ok(rules)
}

/// `r1` is at least as general as `r2`: it assumes no more and concludes
/// no less. Reflexive by design; redundancy arguments pair it with
/// distinctness and equal support and confidence.
pub fn is_more_general(r1: &Rule, r2: &Rule) -> bool {
    r1.antecedent.is_subset(&r2.antecedent) && r2.consequent.is_subset(&r1.consequent)
}

/// Precomputed per-subset supports over a bitmask item universe.
struct MaskTable {
    n: usize,
    tx_masks: Vec<u32>,
    support: Vec<u32>,
}

impl MaskTable {
    fn build(db: &TransactionDatabase) -> Result<MaskTable> {
        let n = db.item_count();
        if n > MAX_ITEMS {
            return Err(Error::EnumerationCap(format!(
                "{n} items exceed the {MAX_ITEMS}-item oracle limit"
            )));
        }
        let tx_masks: Vec<u32> = db
            .transactions()
            .iter()
            .map(|t| t.iter().fold(0u32, |m, i| m | 1 << i))
            .collect();
        // Exact-match counts, then a superset-sum sweep per bit position.
        let mut support = vec![0u32; 1 << n];
        for &m in &tx_masks {
            support[m as usize] += 1;
        }
        for bit in 0..n {
            for m in 0..1usize << n {
                if m & (1 << bit) == 0 {
                    support[m] += support[m | (1 << bit)];
                }
            }
        }
        Ok(MaskTable { n, tx_masks, support })
    }

    fn support(&self, mask: u32) -> u32 {
        self.support[mask as usize]
    }

    fn closure(&self, mask: u32) -> u32 {
        let full = ((1u64 << self.n) - 1) as u32;
        self.tx_masks
            .iter()
            .filter(|&&t| t & mask == mask)
            .fold(full, |acc, &t| acc & t)
    }

    fn tidset(&self, mask: u32) -> Tidset {
        let universe = self.tx_masks.len();
        Tidset::from_tids(
            self.tx_masks
                .iter()
                .enumerate()
                .filter(|&(_, &t)| t & mask == mask)
                .map(|(tid, _)| tid as u32),
            universe,
        )
    }

    /// Minimal generators of a closed mask `x`, ascending. A submask
    /// matches when its support equals `x`'s; by anti-monotonicity it is
    /// minimal exactly when every leave-one-out submask (non-empty ones
    /// only) overshoots that support.
    fn minimal_generators(&self, x: u32) -> Vec<u32> {
        let target = self.support(x);
        let mut gens = Vec::new();
        let mut s = x;
        while s != 0 {
            if self.support(s) == target {
                let single = s.count_ones() == 1;
                let minimal = single
                    || (0..32)
                        .filter(|b| s & (1 << b) != 0)
                        .all(|b| self.support(s & !(1 << b)) > target);
                if minimal {
                    gens.push(s);
                }
            }
            s = (s - 1) & x;
        }
        gens.reverse();
        gens
    }
}

fn mask_itemset(mask: u32) -> Itemset {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}
