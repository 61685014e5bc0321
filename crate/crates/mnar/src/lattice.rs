use crate::closed::ClosedPattern;
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::mingen::GeneratorSet;
use crate::tidset::Tidset;

/// Index into `Lattice::nodes`; stable for the lifetime of the lattice.
pub type NodeId = usize;

pub struct LatticeNode {
    pub id: NodeId,
    pub itemset: Itemset,
    pub support: u32,
    pub tidset: Tidset,
    pub mgs: GeneratorSet,
    /// Immediate predecessors (maximal strict subsets), ascending by id.
    pub parents: Vec<NodeId>,
    /// Immediate successors (minimal strict supersets), ascending by id.
    pub children: Vec<NodeId>,
}

/// The closed patterns ordered by strict inclusion, with only covering
/// edges kept: `u` is a parent of `v` when `u ⊂ v` and no third pattern
/// sits between them. A virtual empty-itemset root (id 0) adopts every
/// pattern that has no other parent, so the structure is always a single
/// connected DAG rooted at node 0.
pub struct Lattice {
    nodes: Vec<LatticeNode>,
}

impl Lattice {
    pub const ROOT: NodeId = 0;

    pub fn root(&self) -> &LatticeNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: NodeId) -> Result<&LatticeNode> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    /// All nodes, root first, then patterns by descending support with
    /// lexicographic tie-break (the id order).
    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of pattern nodes, excluding the virtual root.
    pub fn pattern_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn find(&self, itemset: &Itemset) -> Option<NodeId> {
        self.nodes.iter().position(|n| &n.itemset == itemset)
    }

    /// Ids reachable from `id` through child edges, excluding `id` itself,
    /// ascending.
    pub fn descendants(&self, id: NodeId) -> Result<Vec<NodeId>> {
        self.node(id)?;
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            for &c in &self.nodes[v].children {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        Ok((0..self.nodes.len()).filter(|&v| seen[v] && v != id).collect())
    }
}

/// Assembles the lattice from mined patterns and their generator sets
/// (`mgs[i]` belongs to `patterns[i]`). `tid_count` sizes the virtual
/// root: its support is the whole database, which makes root-to-child
/// confidence quotients meaningful even though the root itself is never a
/// rule source.
pub fn build_lattice(
    patterns: Vec<ClosedPattern>,
    mgs: Vec<GeneratorSet>,
    tid_count: u32,
) -> Lattice {
    assert_eq!(patterns.len(), mgs.len(), "one generator set per pattern");
    let mut paired: Vec<(ClosedPattern, GeneratorSet)> =
        patterns.into_iter().zip(mgs).collect();
    paired.sort_by(|(a, _), (b, _)| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.itemset.cmp(&b.itemset))
    });

    let mut nodes: Vec<LatticeNode> = Vec::with_capacity(paired.len() + 1);
    nodes.push(LatticeNode {
        id: Lattice::ROOT,
        itemset: Itemset::empty(),
        support: tid_count,
        tidset: Tidset::full(tid_count as usize),
        mgs: Vec::new(),
        parents: Vec::new(),
        children: Vec::new(),
    });
    for (pattern, gens) in paired {
        nodes.push(LatticeNode {
            id: nodes.len(),
            itemset: pattern.itemset,
            support: pattern.support,
            tidset: pattern.tidset,
            mgs: gens,
            parents: Vec::new(),
            children: Vec::new(),
        });
    }

    // Covering edges. Strict subsets have strictly fewer items (and, for
    // closed sets, strictly higher support), so candidate ancestors are
    // pre-filtered by length before the subset test; parents are the
    // maximal candidates.
    for v in 1..nodes.len() {
        let mut candidates: Vec<NodeId> = (1..nodes.len())
            .filter(|&u| {
                u != v
                    && nodes[u].itemset.len() < nodes[v].itemset.len()
                    && nodes[u].itemset.is_subset(&nodes[v].itemset)
            })
            .collect();
        candidates.sort_by_key(|&u| std::cmp::Reverse(nodes[u].itemset.len()));
        let mut parents: Vec<NodeId> = Vec::new();
        for &u in &candidates {
            if !parents
                .iter()
                .any(|&w| nodes[u].itemset.is_strict_subset(&nodes[w].itemset))
            {
                parents.push(u);
            }
        }
        if parents.is_empty() {
            parents.push(Lattice::ROOT);
        }
        parents.sort_unstable();
        nodes[v].parents = parents;
    }
    for v in 1..nodes.len() {
        for p in nodes[v].parents.clone() {
            nodes[p].children.push(v);
        }
    }
    // Children were appended in ascending v order already; make it explicit.
    for node in &mut nodes {
        node.children.sort_unstable();
    }
    Lattice { nodes }
}
