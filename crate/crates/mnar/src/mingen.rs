use std::collections::HashSet;

use rayon::prelude::*;

use crate::closed::ClosedPattern;
use crate::corpus::VerticalIndex;
use crate::itemset::{ItemId, Itemset};
use crate::tidset::Tidset;

/// The minimal generators of one closed pattern, sorted lexicographically.
pub type GeneratorSet = Vec<Itemset>;

/// Computes the minimal generators of every pattern, in pattern order.
///
/// A minimal generator of a closed itemset `X` is an inclusion-minimal
/// non-empty subset of `X` with the same support as `X`. Every closed
/// itemset has at least one (in the degenerate case, `X` itself).
/// Patterns are independent, so the work is farmed out per pattern.
pub fn minimal_generators(
    patterns: &[ClosedPattern],
    index: &VerticalIndex,
) -> Vec<GeneratorSet> {
    patterns
        .par_iter()
        .map(|p| generators_of(p, index))
        .collect()
}

/// Levelwise search within `pattern.itemset`, smallest subsets first.
///
/// Each level keeps a frontier of non-generators (subsets whose support
/// still exceeds the target) with their tidsets cached; level `k`
/// candidates join two frontier members sharing a `k-2` prefix and are
/// dropped unless every `k-1` subset is itself a frontier member. A
/// candidate missing from the frontier either hit the target support
/// (making any superset non-minimal) or contains one that did, so the drop
/// is exact, not heuristic. Supports come from one incremental tidset
/// intersection per surviving candidate.
fn generators_of(pattern: &ClosedPattern, index: &VerticalIndex) -> GeneratorSet {
    let target = pattern.support;
    let mut gens: Vec<Itemset> = Vec::new();
    let mut frontier: Vec<(Vec<ItemId>, Tidset)> = Vec::new();
    for item in pattern.itemset.iter() {
        let tidset = index.tidset(item).expect("pattern item in index");
        if tidset.cardinality() == target {
            gens.push(Itemset::singleton(item));
        } else {
            frontier.push((vec![item], tidset.clone()));
        }
    }

    let width = pattern.itemset.len();
    let mut level = 1;
    while !frontier.is_empty() && level < width {
        level += 1;
        let member: HashSet<&[ItemId]> = frontier.iter().map(|(v, _)| v.as_slice()).collect();
        let mut next: Vec<(Vec<ItemId>, Tidset)> = Vec::new();
        for a in 0..frontier.len() {
            for b in a + 1..frontier.len() {
                let (va, ta) = &frontier[a];
                let (vb, _) = &frontier[b];
                // The frontier is lexicographic, so once prefixes diverge
                // no later b shares one with a.
                if va[..level - 2] != vb[..level - 2] {
                    break;
                }
                let mut cand = va.clone();
                cand.push(vb[level - 2]);
                if !proper_subsets_on_frontier(&cand, &member) {
                    continue;
                }
                let tidset = ta.intersect(index.tidset(*cand.last().unwrap()).unwrap());
                if tidset.cardinality() == target {
                    gens.push(Itemset::new(cand));
                } else {
                    next.push((cand, tidset));
                }
            }
        }
        debug_assert!(next.windows(2).all(|w| w[0].0 < w[1].0));
        frontier = next;
    }

    // The level-`width` join emits the pattern itself when nothing smaller
    // reaches the target, so the set is never empty.
    debug_assert!(!gens.is_empty() || pattern.itemset.is_empty());
    gens.sort();
    gens
}

/// True when every leave-one-out subset of `cand` is a frontier member.
fn proper_subsets_on_frontier(cand: &[ItemId], member: &HashSet<&[ItemId]>) -> bool {
    let mut sub = Vec::with_capacity(cand.len() - 1);
    (0..cand.len()).all(|skip| {
        sub.clear();
        sub.extend(cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x));
        member.contains(sub.as_slice())
    })
}
