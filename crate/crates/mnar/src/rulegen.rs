use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::lattice::{Lattice, NodeId};
use crate::ratio::Ratio;

/// An association rule `antecedent => consequent`.
///
/// The two sides are disjoint and non-empty. `support` counts transactions
/// containing both sides; `confidence` is kept as the raw quotient
/// support(antecedent ∪ consequent) / support(antecedent), unreduced, so
/// an exact rule mined from support 3 reads `3/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: u32,
    pub confidence: Ratio,
}

impl Rule {
    /// Exact rules hold in every supporting transaction (confidence 1).
    pub fn is_exact(&self) -> bool {
        self.confidence.num() == self.confidence.den()
    }
}

/// Validated minimum-confidence threshold in (0, 1].
#[derive(Clone, Debug)]
pub struct MinconfSpec(Ratio);

impl MinconfSpec {
    pub fn new(threshold: Ratio) -> Result<MinconfSpec> {
        if threshold.num() == 0 || threshold > Ratio::ONE {
            return Err(Error::Config(format!(
                "minconf {threshold} is outside (0, 1]"
            )));
        }
        Ok(MinconfSpec(threshold))
    }

    /// Parses a decimal or fraction string ("0.8", "4/5").
    pub fn parse(s: &str) -> Result<MinconfSpec> {
        MinconfSpec::new(Ratio::parse(s)?)
    }

    pub fn ratio(&self) -> Ratio {
        self.0
    }
}

/// Mines the minimal non-redundant rules of the whole lattice: the union
/// of `rules_from_node` over every pattern node, each visited exactly
/// once, sorted by `sort_rules`. Node traversals are independent and run
/// in parallel.
pub fn mine_mnar(lattice: &Lattice, minconf: &MinconfSpec) -> Vec<Rule> {
    mine_all(lattice, minconf, rules_from_node)
}

/// Like `mine_mnar` but with the confidence gate applied only to rule
/// emission, never to traversal, so every descendant of every source is
/// inspected. Exists to demonstrate that the gated traversal loses
/// nothing; see `rules_from_node_unpruned`.
pub fn mine_mnar_unpruned(lattice: &Lattice, minconf: &MinconfSpec) -> Vec<Rule> {
    mine_all(lattice, minconf, rules_from_node_unpruned)
}

fn mine_all(
    lattice: &Lattice,
    minconf: &MinconfSpec,
    per_node: fn(&Lattice, NodeId, &MinconfSpec) -> Result<Vec<Rule>>,
) -> Vec<Rule> {
    let mut rules: Vec<Rule> = (1..lattice.node_count())
        .into_par_iter()
        .map(|id| per_node(lattice, id, minconf).expect("pattern node id"))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    sort_rules(&mut rules);
    rules
}

/// Rules whose antecedents are minimal generators of `src`: the exact
/// rules into `src` itself, then approximate rules into each descendant
/// that clears `minconf`.
///
/// The descendant walk is breadth-first from `src`'s children. Confidence
/// support(dst)/support(src) only shrinks as dst sinks deeper, so a
/// node that misses the threshold ends its branch: its children are
/// enqueued only inside the passing arm. A visited mark per node keeps the
/// DAG's diamond shapes from yielding a destination twice.
///
/// The virtual root is a valid destination source of nothing: asking for
/// its rules is an error, since its empty itemset has no generators.
pub fn rules_from_node(
    lattice: &Lattice,
    src: NodeId,
    minconf: &MinconfSpec,
) -> Result<Vec<Rule>> {
    walk_from_node(lattice, src, minconf, true)
}

/// `rules_from_node` without the traversal gate: children are enqueued
/// whether or not their confidence passes, and only emission is filtered.
/// Output must equal the gated walk; the conformance suite checks that.
pub fn rules_from_node_unpruned(
    lattice: &Lattice,
    src: NodeId,
    minconf: &MinconfSpec,
) -> Result<Vec<Rule>> {
    walk_from_node(lattice, src, minconf, false)
}

fn walk_from_node(
    lattice: &Lattice,
    src: NodeId,
    minconf: &MinconfSpec,
    gate_traversal: bool,
) -> Result<Vec<Rule>> {
    if src == Lattice::ROOT {
        return Err(Error::RootRuleSource);
    }
    let src_node = lattice.node(src)?;
    let threshold = minconf.ratio();

    // Exact arm: src's generators against src itself, confidence
    // support/support = 1, which no threshold in (0, 1] rejects.
    let mut rules = find_rules(
        lattice,
        src,
        src,
        Ratio::new(src_node.support as u64, src_node.support as u64),
    )?;

    let mut marked = vec![false; lattice.node_count()];
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    for &c in &src_node.children {
        marked[c] = true;
        queue.push_back(c);
    }
    while let Some(dst) = queue.pop_front() {
        let dst_node = lattice.node(dst)?;
        let confidence = Ratio::new(dst_node.support as u64, src_node.support as u64);
        let passes = confidence >= threshold;
        if passes {
            rules.extend(find_rules(lattice, src, dst, confidence)?);
        }
        if passes || !gate_traversal {
            for &c in &dst_node.children {
                if !marked[c] {
                    marked[c] = true;
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(rules)
}

/// Emits one rule per minimal generator `z` of `src`: `z => dst \ z` with
/// the supplied confidence and `dst`'s support. Generators covering all of
/// `dst` (only possible when `dst == src`) yield nothing, as an empty
/// consequent says nothing.
pub fn find_rules(
    lattice: &Lattice,
    src: NodeId,
    dst: NodeId,
    confidence: Ratio,
) -> Result<Vec<Rule>> {
    if src == Lattice::ROOT {
        return Err(Error::RootRuleSource);
    }
    let src_node = lattice.node(src)?;
    let dst_node = lattice.node(dst)?;
    Ok(src_node
        .mgs
        .iter()
        .filter_map(|z| {
            let consequent = dst_node.itemset.difference(z);
            (!consequent.is_empty()).then(|| Rule {
                antecedent: z.clone(),
                consequent,
                support: dst_node.support,
                confidence,
            })
        })
        .collect())
}

/// Canonical report order: confidence descending, support descending, then
/// antecedent and consequent lexicographic. Total over well-formed rule
/// sets, so equal inputs always render identically.
pub fn sort_rules(rules: &mut [Rule]) {
    rules.sort_by(|a, b| {
        b.confidence
            .cmp(&a.confidence)
            .then_with(|| b.support.cmp(&a.support))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
}
