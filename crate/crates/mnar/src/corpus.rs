use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::Result;
use crate::itemset::{ItemId, Itemset};
use crate::tidset::Tidset;

/// A transaction database in horizontal form.
///
/// Item tokens are interned to dense `ItemId`s in first-seen order;
/// transactions get 0-based tids in input order. Transactions are
/// deduplicated itemsets, so `"A A C"` and `"C A"` both ingest as two
/// items. Empty transactions are legal (they count toward `tid_count`
/// and thus dilute every relative support) even though the line-oriented
/// text format cannot express them, because blank lines are skipped.
pub struct TransactionDatabase {
    transactions: Vec<Itemset>,
    labels: Vec<String>,
    ids: HashMap<String, ItemId>,
}

impl TransactionDatabase {
    /// Parses whitespace-separated item tokens, one transaction per
    /// non-blank line.
    pub fn parse(text: &str) -> TransactionDatabase {
        Self::from_rows(
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| l.split_whitespace()),
        )
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<TransactionDatabase> {
        let reader = BufReader::new(File::open(path)?);
        let mut rows: Vec<Vec<String>> = Vec::new();
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            rows.push(line.split_whitespace().map(str::to_owned).collect());
        }
        Ok(Self::from_rows(rows.iter().map(|r| r.iter().map(String::as_str))))
    }

    /// Builds a database from already-tokenized rows. Unlike the text
    /// formats, this path can produce empty transactions.
    pub fn from_rows<'a>(
        rows: impl IntoIterator<Item = impl IntoIterator<Item = &'a str>>,
    ) -> TransactionDatabase {
        let mut db = TransactionDatabase {
            transactions: Vec::new(),
            labels: Vec::new(),
            ids: HashMap::new(),
        };
        for row in rows {
            let items: Vec<ItemId> = row
                .into_iter()
                .map(|tok| match db.ids.get(tok) {
                    Some(&id) => id,
                    None => {
                        let id = db.labels.len() as ItemId;
                        db.labels.push(tok.to_owned());
                        db.ids.insert(tok.to_owned(), id);
                        id
                    }
                })
                .collect();
            db.transactions.push(Itemset::new(items));
        }
        db
    }

    pub fn tid_count(&self) -> u32 {
        self.transactions.len() as u32
    }

    pub fn item_count(&self) -> usize {
        self.labels.len()
    }

    pub fn transactions(&self) -> &[Itemset] {
        &self.transactions
    }

    pub fn label(&self, item: ItemId) -> &str {
        &self.labels[item as usize]
    }

    pub fn item_id(&self, label: &str) -> Option<ItemId> {
        self.ids.get(label).copied()
    }

    /// Itemset from labels; `None` if any label never occurred.
    pub fn itemset_of(&self, labels: &[&str]) -> Option<Itemset> {
        labels
            .iter()
            .map(|l| self.item_id(l))
            .collect::<Option<Vec<_>>>()
            .map(Itemset::new)
    }

    /// Labels of an itemset, sorted lexicographically for display.
    pub fn labels_of(&self, itemset: &Itemset) -> Vec<&str> {
        let mut v: Vec<&str> = itemset.iter().map(|i| self.label(i)).collect();
        v.sort_unstable();
        v
    }
}

/// Vertical view of a database: one tidset per item.
pub struct VerticalIndex {
    tidsets: Vec<Tidset>,
    tid_count: u32,
}

impl VerticalIndex {
    pub fn build(db: &TransactionDatabase) -> VerticalIndex {
        let universe = db.transactions.len();
        let mut occurrences: Vec<Vec<u32>> = vec![Vec::new(); db.item_count()];
        for (tid, tx) in db.transactions.iter().enumerate() {
            for item in tx.iter() {
                occurrences[item as usize].push(tid as u32);
            }
        }
        VerticalIndex {
            tidsets: occurrences
                .into_iter()
                .map(|tids| Tidset::from_tids(tids, universe))
                .collect(),
            tid_count: db.tid_count(),
        }
    }

    pub fn tid_count(&self) -> u32 {
        self.tid_count
    }

    pub fn tidset(&self, item: ItemId) -> Option<&Tidset> {
        self.tidsets.get(item as usize)
    }

    /// Support of an itemset by tidset intersection. The empty itemset is
    /// contained in every transaction; items the index has never seen have
    /// support 0.
    pub fn support(&self, itemset: &Itemset) -> u32 {
        let mut acc: Option<Tidset> = None;
        let mut items = itemset.iter().peekable();
        while let Some(item) = items.next() {
            let Some(ts) = self.tidset(item) else { return 0 };
            acc = Some(match acc {
                None if items.peek().is_none() => return ts.cardinality(),
                None => ts.clone(),
                // The last intersection only needs a count, not a tidset.
                Some(cur) if items.peek().is_none() => return cur.intersect_count(ts),
                Some(cur) => cur.intersect(ts),
            });
            if acc.as_ref().is_some_and(Tidset::is_empty) {
                return 0;
            }
        }
        self.tid_count
    }
}
