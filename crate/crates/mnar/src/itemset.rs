use std::fmt;

/// Dense item identifier assigned by the ingest pass in first-seen order.
pub type ItemId = u32;

/// A set of items in canonical form: sorted ascending, no duplicates.
///
/// Canonical form makes equality, hashing, and the derived lexicographic
/// order structural, which is what keeps mining output deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    /// Builds an itemset from arbitrary ids, sorting and deduplicating.
    pub fn new(items: impl Into<Vec<ItemId>>) -> Self {
        let mut v = items.into();
        v.sort_unstable();
        v.dedup();
        Itemset(v)
    }

    pub fn singleton(item: ItemId) -> Self {
        Itemset(vec![item])
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.0.iter().copied()
    }

    /// True when every item of `self` is in `other` (not necessarily strictly).
    pub fn is_subset(&self, other: &Itemset) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut rhs = other.0.iter();
        'outer: for &a in &self.0 {
            for &b in rhs.by_ref() {
                match b.cmp(&a) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_strict_subset(&self, other: &Itemset) -> bool {
        self.0.len() < other.0.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    v.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    v.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    v.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Itemset(v)
    }

    /// Items of `self` that are not in `other`.
    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    pub fn intersect(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }
}

impl FromIterator<ItemId> for Itemset {
    fn from_iter<T: IntoIterator<Item = ItemId>>(iter: T) -> Self {
        Itemset::new(iter.into_iter().collect::<Vec<_>>())
    }
}

// Itemsets render as `{0 2 5}` in assertion output.
impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}
