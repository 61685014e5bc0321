use std::collections::HashMap;

use crate::corpus::{TransactionDatabase, VerticalIndex};
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::ratio::Ratio;
use crate::tidset::Tidset;

/// Minimum-support threshold as written by the caller: either an absolute
/// transaction count ("3t") or a fraction of the database ("0.5").
#[derive(Clone, Debug)]
pub enum MinsupSpec {
    Absolute(u32),
    Fraction(Ratio),
}

impl MinsupSpec {
    /// Parses "3t" (absolute count, `t` for transactions) or a decimal or
    /// fraction string ("0.5", "1/2").
    pub fn parse(s: &str) -> Result<MinsupSpec> {
        let s = s.trim();
        if let Some(digits) = s.strip_suffix(['t', 'T']) {
            let count: u32 = digits.trim().parse().map_err(|_| {
                Error::Config(format!("cannot parse '{s}' as an absolute support count"))
            })?;
            Ok(MinsupSpec::Absolute(count))
        } else {
            Ok(MinsupSpec::Fraction(Ratio::parse(s)?))
        }
    }
}

/// Turns a threshold spec into an absolute support count for a database of
/// `tid_count` transactions. Fractions round up: any itemset meeting the
/// fractional threshold meets the returned count and vice versa.
///
/// Fractions outside (0, 1] and absolute counts below 1 are configuration
/// errors.
pub fn resolve_minsup(spec: &MinsupSpec, tid_count: u32) -> Result<u32> {
    match spec {
        MinsupSpec::Absolute(n) => {
            if *n < 1 {
                return Err(Error::Config("absolute minsup must be at least 1".into()));
            }
            Ok(*n)
        }
        MinsupSpec::Fraction(r) => {
            if r.num() == 0 || *r > Ratio::ONE {
                return Err(Error::Config(format!(
                    "fractional minsup {r} is outside (0, 1]"
                )));
            }
            // Integer ceiling; f64 rounding must never decide a threshold.
            let num = r.num() as u128 * tid_count as u128;
            Ok(num.div_ceil(r.den() as u128) as u32)
        }
    }
}

/// A closed frequent itemset: no strict superset has the same support.
#[derive(Clone, Debug)]
pub struct ClosedPattern {
    pub itemset: Itemset,
    pub support: u32,
    /// Transactions containing `itemset`; `support` is its cardinality.
    pub tidset: Tidset,
}

/// One member of an equivalence-class during the depth-first search:
/// a candidate itemset plus its exact tidset.
struct Node {
    items: Itemset,
    tidset: Tidset,
}

/// Deduplicates candidate closures by tidset identity. Buckets are keyed by
/// (cardinality, content hash); collisions fall back to full tidset
/// equality, so two distinct tidsets never alias.
struct ClosureStore {
    buckets: HashMap<(u32, u64), Vec<usize>>,
}

impl ClosureStore {
    fn new() -> Self {
        ClosureStore { buckets: HashMap::new() }
    }

    /// Inserts `node` as a closed pattern unless a pattern with the same
    /// tidset is already present (that pattern then contains every item of
    /// `node`, making `node` redundant).
    fn insert(&mut self, node: Node, out: &mut Vec<ClosedPattern>) {
        let key = (node.tidset.cardinality(), node.tidset.content_hash());
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| out[i].tidset == node.tidset) {
            return;
        }
        bucket.push(out.len());
        out.push(ClosedPattern {
            itemset: node.items,
            support: node.tidset.cardinality(),
            tidset: node.tidset,
        });
    }
}

/// Mines all frequent closed itemsets at the given absolute threshold.
///
/// The search runs depth-first over equivalence classes in increasing
/// support order. Comparing the tidsets of two class members `Xi` and `Xj`
/// distinguishes four cases: equal tidsets merge `Xj` into `Xi`; `t(Xi)`
/// inside `t(Xj)` grows `Xi` by `Xj`'s items while `Xj` keeps its own
/// branch; `t(Xj)` inside `t(Xi)` retires `Xj` into a child of `Xi`; and
/// incomparable tidsets spawn a child while `Xj` stays. Children inherit
/// every item `Xi` later absorbs, which keeps their itemsets closed under
/// the same merges. A finished `Xi` is emitted unless a pattern with the
/// identical tidset was emitted before.
///
/// `minsup` must be at least 1; the result is sorted by descending support,
/// ties broken by ascending lexicographic order on item ids.
pub fn mine_closed(db: &TransactionDatabase, minsup: u32) -> Vec<ClosedPattern> {
    assert!(minsup >= 1, "minsup must be at least 1");
    let index = VerticalIndex::build(db);
    let mut roots: Vec<Node> = (0..db.item_count() as u32)
        .filter_map(|item| {
            let tidset = index.tidset(item).unwrap();
            (tidset.cardinality() >= minsup).then(|| Node {
                items: Itemset::singleton(item),
                tidset: tidset.clone(),
            })
        })
        .collect();
    sort_class(&mut roots);

    let mut store = ClosureStore::new();
    let mut out = Vec::new();
    explore(roots, minsup, &mut store, &mut out);

    out.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.itemset.cmp(&b.itemset))
    });
    out
}

/// Ascending support, ties by itemset order: small tidsets first maximizes
/// merge opportunities for the members scanned later.
fn sort_class(class: &mut [Node]) {
    class.sort_by(|a, b| {
        a.tidset
            .cardinality()
            .cmp(&b.tidset.cardinality())
            .then_with(|| a.items.cmp(&b.items))
    });
}

fn explore(mut class: Vec<Node>, minsup: u32, store: &mut ClosureStore, out: &mut Vec<ClosedPattern>) {
    let mut removed = vec![false; class.len()];
    for i in 0..class.len() {
        if removed[i] {
            continue;
        }
        // Tails of retired or incomparable siblings; each becomes a child
        // itemset `Xi ∪ tail` once Xi has absorbed all its merges.
        let mut child_tails: Vec<(Itemset, Tidset)> = Vec::new();
        let mut absorbed = Itemset::empty();
        for j in i + 1..class.len() {
            if removed[j] {
                continue;
            }
            let inter = class[i].tidset.intersect(&class[j].tidset);
            let card = inter.cardinality();
            let i_inside = card == class[i].tidset.cardinality();
            let j_inside = card == class[j].tidset.cardinality();
            match (i_inside, j_inside) {
                (true, true) => {
                    // Same tidset: Xj's items belong to Xi's closure.
                    absorbed = absorbed.union(&class[j].items);
                    removed[j] = true;
                }
                (true, false) => {
                    // Every transaction with Xi has Xj: absorb the items,
                    // but Xj still closes differently on its own.
                    absorbed = absorbed.union(&class[j].items);
                }
                (false, true) => {
                    // Xj occurs only alongside Xi; its closure lives in
                    // Xi's subtree.
                    let tail = class[j].items.clone();
                    removed[j] = true;
                    if card >= minsup {
                        child_tails.push((tail, inter));
                    }
                }
                (false, false) => {
                    if card >= minsup {
                        child_tails.push((class[j].items.clone(), inter));
                    }
                }
            }
        }
        let items = class[i].items.union(&absorbed);
        class[i].items = items.clone();
        if !child_tails.is_empty() {
            let mut child_class: Vec<Node> = child_tails
                .into_iter()
                .map(|(tail, tidset)| Node { items: items.union(&tail), tidset })
                .collect();
            sort_class(&mut child_class);
            explore(child_class, minsup, store, out);
        }
        let node = Node {
            items,
            tidset: std::mem::replace(&mut class[i].tidset, Tidset::sorted(Vec::new())),
        };
        store.insert(node, out);
    }
}

/// Counts all frequent itemsets (closed or not, excluding the empty set)
/// without materializing them, by depth-first tidset intersection.
pub fn count_frequent(db: &TransactionDatabase, minsup: u32) -> u64 {
    assert!(minsup >= 1, "minsup must be at least 1");
    let index = VerticalIndex::build(db);
    let singles: Vec<Tidset> = (0..db.item_count() as u32)
        .filter_map(|item| {
            let ts = index.tidset(item).unwrap();
            (ts.cardinality() >= minsup).then(|| ts.clone())
        })
        .collect();
    let mut count = 0;
    eclat_count(&singles, minsup, &mut count);
    count
}

fn eclat_count(class: &[Tidset], minsup: u32, count: &mut u64) {
    for (k, tidset) in class.iter().enumerate() {
        *count += 1;
        let extensions: Vec<Tidset> = class[k + 1..]
            .iter()
            .map(|other| tidset.intersect(other))
            .filter(|inter| inter.cardinality() >= minsup)
            .collect();
        if !extensions.is_empty() {
            eclat_count(&extensions, minsup, count);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{iset, sample_db};

    #[test]
    fn resolve_minsup_handles_counts_and_fractions() {
        let r = |spec: &str, t: u32| resolve_minsup(&MinsupSpec::parse(spec).unwrap(), t);
        assert_eq!(r("3t", 6).unwrap(), 3);
        assert_eq!(r("3t", 1_000_000).unwrap(), 3);
        assert_eq!(r("0.5", 6).unwrap(), 3);
        assert_eq!(r("0.5", 7).unwrap(), 4);
        assert_eq!(r("1/3", 6).unwrap(), 2);
        assert_eq!(r("0.2", 8124).unwrap(), 1625);
        assert_eq!(r("1", 6).unwrap(), 6);
        assert!(r("0t", 6).is_err());
        assert!(r("0", 6).is_err());
        assert!(r("1.5", 6).is_err());
        assert!(MinsupSpec::parse("t").is_err());
        assert!(MinsupSpec::parse("x").is_err());
    }

    #[test]
    fn sample_closed_sets_are_exact() {
        let db = sample_db();
        let patterns = mine_closed(&db, 3);
        let got: Vec<(Itemset, u32)> = patterns
            .iter()
            .map(|p| (p.itemset.clone(), p.support))
            .collect();
        // Descending support, lexicographic tie-break.
        let want = vec![
            (iset(&db, &["C"]), 6),
            (iset(&db, &["C", "W"]), 5),
            (iset(&db, &["A", "C", "W"]), 4),
            (iset(&db, &["C", "T"]), 4),
            (iset(&db, &["C", "D"]), 4),
            (iset(&db, &["A", "C", "T", "W"]), 3),
            (iset(&db, &["C", "D", "W"]), 3),
        ];
        assert_eq!(got, want);
        for p in &patterns {
            assert_eq!(p.tidset.cardinality(), p.support);
        }
    }

    #[test]
    fn thresholds_trim_the_output() {
        let db = sample_db();
        assert_eq!(mine_closed(&db, 7).len(), 0);
        assert_eq!(mine_closed(&db, 6).len(), 1);
        assert_eq!(mine_closed(&db, 5).len(), 2);
        // minsup 1 on the sample: every closure of a transaction subset.
        let all = mine_closed(&db, 1);
        assert!(all.len() >= 7);
        assert!(all.windows(2).all(|w| w[0].support >= w[1].support));
    }

    #[test]
    fn single_transaction_database() {
        let db = TransactionDatabase::parse("A B C\n");
        let patterns = mine_closed(&db, 1);
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].itemset, iset(&db, &["A", "B", "C"]));
        assert_eq!(patterns[0].support, 1);
    }

    #[test]
    fn empty_database() {
        let db = TransactionDatabase::parse("");
        assert!(mine_closed(&db, 1).is_empty());
        assert_eq!(count_frequent(&db, 1), 0);
    }

    #[test]
    fn frequent_itemset_count_on_sample() {
        let db = sample_db();
        assert_eq!(count_frequent(&db, 3), 19);
        assert_eq!(count_frequent(&db, 6), 1);
        assert_eq!(count_frequent(&db, 7), 0);
    }

    #[test]
    fn closed_mining_matches_brute_force_on_random_databases() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let names: Vec<String> = (0..8).map(|i| format!("i{i}")).collect();
        for round in 0..60 {
            let n_items = rng.gen_range(2..=8);
            let n_rows = rng.gen_range(1..=16);
            let rows: Vec<Vec<&str>> = (0..n_rows)
                .map(|_| {
                    (0..n_items)
                        .filter(|_| rng.gen_bool(0.45))
                        .map(|i| names[i].as_str())
                        .collect()
                })
                .collect();
            let db = TransactionDatabase::from_rows(rows);
            for minsup in 1..=db.tid_count() {
                let mined: Vec<(Itemset, u32)> = mine_closed(&db, minsup)
                    .into_iter()
                    .map(|p| (p.itemset, p.support))
                    .collect();
                let reference: Vec<(Itemset, u32)> =
                    crate::oracle::brute_force_closed(&db, minsup)
                        .unwrap()
                        .into_iter()
                        .map(|p| (p.itemset, p.support))
                        .collect();
                assert_eq!(mined, reference, "round {round} minsup {minsup}");
            }
        }
    }
}
