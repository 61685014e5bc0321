/// Transaction identifier, 0-based and dense within one database.
pub type Tid = u32;

/// Databases up to this many transactions use fixed-width bitmaps; larger
/// ones fall back to sorted id arrays, where a bitmap per tidset would cost
/// more to intersect than the ids it encodes.
const BITMAP_MAX_TIDS: usize = 1 << 19;

/// The set of transactions containing some itemset.
///
/// Two interchangeable representations sit behind one interface; every
/// operation, including equality and `content_hash`, treats them as the
/// same abstract set of tids.
#[derive(Clone)]
pub enum Tidset {
    /// Bitmap over a fixed universe `0..64*words.len()`, with the
    /// cardinality cached at construction.
    Bits { words: Vec<u64>, card: u32 },
    /// Sorted, duplicate-free tid array.
    Ids(Vec<Tid>),
}

impl Tidset {
    /// Picks the representation appropriate for a database of
    /// `universe` transactions.
    pub fn from_tids(tids: impl IntoIterator<Item = Tid>, universe: usize) -> Tidset {
        if universe <= BITMAP_MAX_TIDS {
            Tidset::bitmap(tids, universe)
        } else {
            Tidset::sorted(tids.into_iter().collect())
        }
    }

    /// Bitmap-backed tidset; exposed so tests can pin a representation.
    pub fn bitmap(tids: impl IntoIterator<Item = Tid>, universe: usize) -> Tidset {
        let mut words = vec![0u64; universe.div_ceil(64)];
        let mut card = 0;
        for t in tids {
            let (w, b) = (t as usize / 64, t as usize % 64);
            assert!(w < words.len(), "tid {t} outside universe {universe}");
            if words[w] & (1 << b) == 0 {
                words[w] |= 1 << b;
                card += 1;
            }
        }
        Tidset::Bits { words, card }
    }

    /// Array-backed tidset; exposed so tests can pin a representation.
    pub fn sorted(mut tids: Vec<Tid>) -> Tidset {
        tids.sort_unstable();
        tids.dedup();
        Tidset::Ids(tids)
    }

    /// All tids of a database: the tidset of the empty itemset.
    pub fn full(universe: usize) -> Tidset {
        Tidset::from_tids(0..universe as Tid, universe)
    }

    pub fn cardinality(&self) -> u32 {
        match self {
            Tidset::Bits { card, .. } => *card,
            Tidset::Ids(v) => v.len() as u32,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    pub fn contains(&self, tid: Tid) -> bool {
        match self {
            Tidset::Bits { words, .. } => {
                let (w, b) = (tid as usize / 64, tid as usize % 64);
                w < words.len() && words[w] & (1 << b) != 0
            }
            Tidset::Ids(v) => v.binary_search(&tid).is_ok(),
        }
    }

    pub fn intersect(&self, other: &Tidset) -> Tidset {
        match (self, other) {
            (Tidset::Bits { words: a, .. }, Tidset::Bits { words: b, .. }) => {
                let mut card = 0;
                let words: Vec<u64> = a
                    .iter()
                    .zip(b.iter())
                    .map(|(&x, &y)| {
                        let w = x & y;
                        card += w.count_ones();
                        w
                    })
                    .collect();
                Tidset::Bits { words, card }
            }
            (Tidset::Ids(a), Tidset::Ids(b)) => {
                let mut out = Vec::new();
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            out.push(a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                Tidset::Ids(out)
            }
            // Mixed pair: filter the array side through the bitmap side.
            (Tidset::Bits { .. }, Tidset::Ids(v)) | (Tidset::Ids(v), Tidset::Bits { .. }) => {
                let bits = if matches!(self, Tidset::Bits { .. }) { self } else { other };
                Tidset::Ids(v.iter().copied().filter(|&t| bits.contains(t)).collect())
            }
        }
    }

    /// Cardinality of the intersection without materializing it.
    pub fn intersect_count(&self, other: &Tidset) -> u32 {
        match (self, other) {
            (Tidset::Bits { words: a, .. }, Tidset::Bits { words: b, .. }) => a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| (x & y).count_ones())
                .sum(),
            (Tidset::Ids(a), Tidset::Ids(b)) => {
                let (mut i, mut j, mut n) = (0, 0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            n += 1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
                n
            }
            (Tidset::Bits { .. }, Tidset::Ids(v)) | (Tidset::Ids(v), Tidset::Bits { .. }) => {
                let bits = if matches!(self, Tidset::Bits { .. }) { self } else { other };
                v.iter().filter(|&&t| bits.contains(t)).count() as u32
            }
        }
    }

    pub fn is_subset(&self, other: &Tidset) -> bool {
        match (self, other) {
            (Tidset::Bits { words: a, .. }, Tidset::Bits { words: b, .. }) => a
                .iter()
                .zip(b.iter().chain(std::iter::repeat(&0)))
                .all(|(&x, &y)| x & !y == 0),
            _ => self.iter().all(|t| other.contains(t)),
        }
    }

    /// Ascending tid iterator, identical for both representations.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Tid> + '_> {
        match self {
            Tidset::Bits { words, .. } => Box::new(
                words
                    .iter()
                    .enumerate()
                    .flat_map(|(w, &word)| BitIter { word, base: w as u32 * 64 }),
            ),
            Tidset::Ids(v) => Box::new(v.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<Tid> {
        self.iter().collect()
    }

    /// Representation-independent content hash (FNV-1a over ascending
    /// tids), used to bucket tidsets before full equality checks.
    pub fn content_hash(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        for t in self.iter() {
            h ^= t as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

impl PartialEq for Tidset {
    fn eq(&self, other: &Self) -> bool {
        self.cardinality() == other.cardinality() && self.iter().eq(other.iter())
    }
}

impl Eq for Tidset {}

impl std::fmt::Debug for Tidset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter {
    word: u64,
    base: u32,
}

impl Iterator for BitIter {
    type Item = Tid;

    fn next(&mut self) -> Option<Tid> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(self.base + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn both_representations_agree_on_basics() {
        let tids = vec![3u32, 70, 0, 70, 128];
        let bits = Tidset::bitmap(tids.clone(), 200);
        let ids = Tidset::sorted(tids);
        assert_eq!(bits.cardinality(), 4);
        assert_eq!(ids.cardinality(), 4);
        assert_eq!(bits.to_vec(), vec![0, 3, 70, 128]);
        assert_eq!(bits, ids);
        assert_eq!(bits.content_hash(), ids.content_hash());
        assert!(bits.contains(70) && ids.contains(70));
        assert!(!bits.contains(71) && !ids.contains(71));
    }

    #[test]
    fn full_universe() {
        let f = Tidset::full(6);
        assert_eq!(f.cardinality(), 6);
        assert_eq!(f.to_vec(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn small_universes_pick_bitmaps_and_huge_ones_pick_arrays() {
        assert!(matches!(
            Tidset::from_tids([1, 2], 100),
            Tidset::Bits { .. }
        ));
        assert!(matches!(
            Tidset::from_tids([1, 2], BITMAP_MAX_TIDS + 1),
            Tidset::Ids(_)
        ));
    }

    fn tid_vec() -> impl Strategy<Value = Vec<Tid>> {
        proptest::collection::vec(0u32..500, 0..64)
    }

    proptest! {
        #[test]
        fn intersection_agrees_across_representations(a in tid_vec(), b in tid_vec()) {
            let expected: Vec<Tid> = {
                let sa: std::collections::BTreeSet<_> = a.iter().copied().collect();
                let sb: std::collections::BTreeSet<_> = b.iter().copied().collect();
                sa.intersection(&sb).copied().collect()
            };
            let reprs_a = [Tidset::bitmap(a.clone(), 500), Tidset::sorted(a.clone())];
            let reprs_b = [Tidset::bitmap(b.clone(), 500), Tidset::sorted(b.clone())];
            for ta in &reprs_a {
                for tb in &reprs_b {
                    let inter = ta.intersect(tb);
                    prop_assert_eq!(inter.to_vec(), expected.clone());
                    prop_assert_eq!(ta.intersect_count(tb), expected.len() as u32);
                    prop_assert!(inter.is_subset(ta));
                    prop_assert!(inter.is_subset(tb));
                    prop_assert!(inter.cardinality() <= ta.cardinality().min(tb.cardinality()));
                }
            }
        }

        #[test]
        fn subset_matches_set_semantics(a in tid_vec(), b in tid_vec()) {
            let sa: std::collections::BTreeSet<_> = a.iter().copied().collect();
            let sb: std::collections::BTreeSet<_> = b.iter().copied().collect();
            let expected = sa.is_subset(&sb);
            let ta = [Tidset::bitmap(a.clone(), 500), Tidset::sorted(a.clone())];
            let tb = [Tidset::bitmap(b.clone(), 500), Tidset::sorted(b.clone())];
            for x in &ta {
                for y in &tb {
                    prop_assert_eq!(x.is_subset(y), expected);
                }
            }
        }
    }
}
