//! Multicast tree: a parent relation rooted at the source covering every
//! receiver, with each tree edge connecting consecutive BFS levels.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{MeshError, Result};
use crate::topology::NodeId;

/// A multicast tree over a subset of the mesh nodes. Every non-source tree
/// node has exactly one parent; the source is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastTree {
    source: NodeId,
    receivers: BTreeSet<NodeId>,
    parent_of: BTreeMap<NodeId, NodeId>,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

impl MulticastTree {
    /// Validates the parent relation: every receiver reaches the source by
    /// parent hops, no cycles, no parent entry for the source itself.
    pub fn new(
        source: NodeId,
        receivers: BTreeSet<NodeId>,
        parent_of: BTreeMap<NodeId, NodeId>,
    ) -> Result<Self> {
        if parent_of.contains_key(&source) {
            return Err(MeshError::InvalidInput(format!(
                "source {source} has a parent entry"
            )));
        }
        for (&child, &parent) in &parent_of {
            if child == parent {
                return Err(MeshError::InvalidInput(format!(
                    "node {child} is its own parent"
                )));
            }
            if parent != source && !parent_of.contains_key(&parent) {
                return Err(MeshError::InvalidInput(format!(
                    "parent {parent} of {child} is not wired to the tree"
                )));
            }
        }
        // Walk each node upward; bounded by the node count, so a longer walk
        // means a cycle.
        let bound = parent_of.len() + 1;
        for &start in parent_of.keys() {
            let mut v = start;
            let mut steps = 0;
            while v != source {
                v = *parent_of.get(&v).ok_or_else(|| {
                    MeshError::InvalidInput(format!("node {v} has no path to the source"))
                })?;
                steps += 1;
                if steps > bound {
                    return Err(MeshError::InvalidInput(format!(
                        "cycle through node {start}"
                    )));
                }
            }
        }
        for &r in &receivers {
            if r == source {
                return Err(MeshError::InvalidInput(format!(
                    "receiver {r} is the source"
                )));
            }
            if !parent_of.contains_key(&r) {
                return Err(MeshError::InvalidInput(format!(
                    "receiver {r} is not in the tree"
                )));
            }
        }
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        children.insert(source, Vec::new());
        for &child in parent_of.keys() {
            children.entry(child).or_default();
        }
        for (&child, &parent) in &parent_of {
            children.get_mut(&parent).unwrap().push(child);
        }
        Ok(MulticastTree {
            source,
            receivers,
            parent_of,
            children,
        })
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn receivers(&self) -> &BTreeSet<NodeId> {
        &self.receivers
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v == self.source || self.parent_of.contains_key(&v)
    }

    pub fn parent_of(&self, v: NodeId) -> Option<NodeId> {
        self.parent_of.get(&v).copied()
    }

    pub fn children_of(&self, v: NodeId) -> &[NodeId] {
        self.children.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All tree nodes ascending by id.
    pub fn nodes(&self) -> Vec<NodeId> {
        self.children.keys().copied().collect()
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    /// Tree edges as `(parent, child)` pairs, ascending by child.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.parent_of.iter().map(|(&c, &p)| (p, c)).collect()
    }

    /// Relay nodes: non-source tree nodes that forward, i.e. have children.
    pub fn relays(&self) -> BTreeSet<NodeId> {
        self.children
            .iter()
            .filter(|&(&v, kids)| v != self.source && !kids.is_empty())
            .map(|(&v, _)| v)
            .collect()
    }

    /// Forwarding nodes: the source plus all relays.
    pub fn forwarders(&self) -> BTreeSet<NodeId> {
        let mut out = self.relays();
        out.insert(self.source);
        out
    }

    /// Hop count from the source along tree edges.
    pub fn depth_of(&self, v: NodeId) -> Option<u32> {
        if v == self.source {
            return Some(0);
        }
        let mut depth = 0;
        let mut cur = v;
        while cur != self.source {
            cur = self.parent_of(cur)?;
            depth += 1;
        }
        Some(depth)
    }

    /// Tree nodes in breadth-first order from the source; children visited
    /// ascending by id.
    pub fn bfs_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut queue = std::collections::VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            queue.extend(self.children_of(u).iter().copied());
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> MulticastTree {
        // 0 -> 1 -> {2, 3}
        MulticastTree::new(
            0,
            BTreeSet::from([2, 3]),
            BTreeMap::from([(1, 0), (2, 1), (3, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn relays_are_internal_non_source_nodes() {
        let t = tiny();
        assert_eq!(t.relays(), BTreeSet::from([1]));
        assert_eq!(t.forwarders(), BTreeSet::from([0, 1]));
        assert_eq!(t.children_of(1), &[2, 3]);
        assert_eq!(t.depth_of(3), Some(2));
        assert_eq!(t.depth_of(0), Some(0));
    }

    #[test]
    fn bfs_order_visits_parents_before_children() {
        let t = tiny();
        let order = t.bfs_order();
        assert_eq!(order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn edges_pair_parent_with_child() {
        let t = tiny();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn rejects_cycle() {
        let err = MulticastTree::new(
            0,
            BTreeSet::from([1]),
            BTreeMap::from([(1, 2), (2, 3), (3, 1)]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_uncovered_receiver() {
        let err = MulticastTree::new(0, BTreeSet::from([5]), BTreeMap::from([(1, 0)]));
        assert!(err.is_err());
    }

    #[test]
    fn rejects_dangling_parent() {
        let err = MulticastTree::new(0, BTreeSet::from([1]), BTreeMap::from([(1, 9)]));
        assert!(err.is_err());
    }

    #[test]
    fn rejects_source_with_parent() {
        let err = MulticastTree::new(0, BTreeSet::new(), BTreeMap::from([(0, 1), (1, 0)]));
        assert!(err.is_err());
    }

    #[test]
    fn source_only_tree_is_valid() {
        let t = MulticastTree::new(0, BTreeSet::new(), BTreeMap::new()).unwrap();
        assert_eq!(t.nodes(), vec![0]);
        assert!(t.relays().is_empty());
    }
}
