//! Level/channel-aware multicast: wires each receiver to the source by a
//! seeded upward walk through the tree mesh, then assigns channels purely
//! from BFS levels so every node of a level shares its interfaces.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::ChannelAssignment;
use crate::error::{MeshError, Result};
use crate::topology::{LevelDecomposition, NodeId, TreeMesh};
use crate::tree::MulticastTree;

/// Builds a multicast tree by processing receivers in ascending id order.
/// Each receiver walks upward level by level; an unwired node picks a
/// uniformly random parent (seeded, no draw consumed when the parent is
/// unique) and the walk stops at the source or at a node that is already
/// part of the tree.
pub fn lca_build_tree(
    tm: &TreeMesh,
    receivers: &BTreeSet<NodeId>,
    seed: u64,
) -> Result<MulticastTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = tm.source();
    let mut parent_of: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for &r in receivers {
        if tm.levels().level_of(r).is_none() {
            return Err(MeshError::UnreachableReceiver(r));
        }
        let mut v = r;
        while v != source && !parent_of.contains_key(&v) {
            let parents = tm.parents_of(v);
            let p = match parents.len() {
                0 => return Err(MeshError::UnreachableReceiver(r)),
                1 => parents[0],
                k => parents[rng.gen_range(0..k)],
            };
            parent_of.insert(v, p);
            v = p;
        }
    }
    MulticastTree::new(source, receivers.clone(), parent_of)
}

/// Level-indexed channel assignment over `channel_count` channels: the
/// source sends on channel 0 and a node at BFS level `i` receives on
/// `(i - 1) mod C` and sends on `i mod C`, so all nodes of a level share
/// the same pair and the link contract holds by construction.
pub fn lca_assign_channels(
    tree: &MulticastTree,
    levels: &LevelDecomposition,
    channel_count: u32,
) -> Result<ChannelAssignment> {
    if channel_count == 0 {
        return Err(MeshError::InvalidInput("channel count must be at least 1".into()));
    }
    let mut asg = ChannelAssignment::new(channel_count);
    asg.set_send(tree.source(), 0);
    for v in tree.nodes() {
        if v == tree.source() {
            continue;
        }
        let level = levels.level_of(v).ok_or_else(|| {
            MeshError::InvalidInput(format!("tree node {v} has no BFS level"))
        })?;
        asg.set_receive(v, (level - 1) % channel_count);
        asg.set_send(v, level % channel_count);
    }
    Ok(asg)
}
