//! Minimum-relay multicast: bottom-up greedy relay selection level by
//! level, plus two send-channel strategies for the resulting tree (plain
//! ascending channels and an interference-minimizing greedy heuristic).

use std::collections::{BTreeMap, BTreeSet};

use crate::assignment::ChannelAssignment;
use crate::error::{MeshError, Result};
use crate::interference::{objective_for_channel, InterferenceParams};
use crate::topology::{MeshNetwork, NodeId, TreeMesh};
use crate::tree::MulticastTree;

/// One set-cover instance: targets that need a parent and candidate parents
/// with the subset of targets each can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInstance {
    pub targets: BTreeSet<NodeId>,
    pub candidates: BTreeMap<NodeId, BTreeSet<NodeId>>,
}

/// Greedy minimum relay cover: repeatedly picks the candidate covering the
/// most still-uncovered targets, breaking ties by smallest node id.
/// Returns the chosen relays in selection order together with the parent
/// assignment (each target mapped to the relay that first covered it).
pub fn min_relay_cover(
    instance: &CoverInstance,
) -> Result<(Vec<NodeId>, BTreeMap<NodeId, NodeId>)> {
    let mut uncovered = instance.targets.clone();
    let mut chosen = Vec::new();
    let mut parent = BTreeMap::new();
    while !uncovered.is_empty() {
        let best = instance
            .candidates
            .iter()
            .map(|(&c, covers)| (covers.intersection(&uncovered).count(), c))
            .filter(|&(gain, _)| gain > 0)
            // max gain, then smallest id among maxima
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, relay)) = best else {
            let stuck = *uncovered.iter().next().unwrap();
            return Err(MeshError::Uncoverable(stuck));
        };
        for &t in instance.candidates[&relay].intersection(&uncovered) {
            parent.insert(t, relay);
        }
        uncovered.retain(|t| !parent.contains_key(t));
        chosen.push(relay);
    }
    Ok((chosen, parent))
}

/// The cover instance solved at one level: `level` is the level of the
/// targets, candidates live one level closer to the source.
#[derive(Debug, Clone)]
pub struct LevelCover {
    pub level: u32,
    pub instance: CoverInstance,
    pub chosen: Vec<NodeId>,
}

/// Builds the minimum-relay multicast tree: starting at the deepest
/// receiver level, each level's receivers and previously chosen relays are
/// covered by a greedy relay selection one level up, so every node's tree
/// depth equals its BFS level.
pub fn mcm_build_tree(tm: &TreeMesh, receivers: &BTreeSet<NodeId>) -> Result<MulticastTree> {
    mcm_build_tree_traced(tm, receivers).map(|(tree, _)| tree)
}

/// Same as [`mcm_build_tree`] but also reports the per-level cover
/// instances and choices.
pub fn mcm_build_tree_traced(
    tm: &TreeMesh,
    receivers: &BTreeSet<NodeId>,
) -> Result<(MulticastTree, Vec<LevelCover>)> {
    let levels = tm.levels();
    let mut by_level: BTreeMap<u32, BTreeSet<NodeId>> = BTreeMap::new();
    for &r in receivers {
        let Some(level) = levels.level_of(r) else {
            return Err(MeshError::UnreachableReceiver(r));
        };
        if level == 0 {
            return Err(MeshError::InvalidInput(format!(
                "receiver {r} is the source"
            )));
        }
        by_level.entry(level).or_default().insert(r);
    }

    let mut parent_of: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut trace = Vec::new();
    let max_level = by_level.keys().next_back().copied().unwrap_or(0);
    let mut pending: BTreeSet<NodeId> = BTreeSet::new();
    for level in (1..=max_level).rev() {
        let mut targets = std::mem::take(&mut pending);
        if let Some(rx) = by_level.get(&level) {
            targets.extend(rx.iter().copied());
        }
        if targets.is_empty() {
            continue;
        }
        let mut candidates: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
        for &t in &targets {
            for &p in tm.parents_of(t) {
                candidates.entry(p).or_default().insert(t);
            }
        }
        let instance = CoverInstance {
            targets: targets.clone(),
            candidates,
        };
        let (chosen, assignment) = min_relay_cover(&instance)?;
        for (&t, &relay) in &assignment {
            parent_of.insert(t, relay);
        }
        for &relay in &chosen {
            if relay != tm.source() {
                pending.insert(relay);
            }
        }
        trace.push(LevelCover {
            level,
            instance,
            chosen,
        });
    }
    let tree = MulticastTree::new(tm.source(), receivers.clone(), parent_of)?;
    Ok((tree, trace))
}

/// Ascending channel assignment: the source sends on channel 0, every node
/// receives on its parent's send channel, and each forwarding node sends
/// one channel above its receive channel, wrapping modulo the channel
/// count. Leaves get no send channel.
pub fn ascending_assignment(
    tree: &MulticastTree,
    channel_count: u32,
) -> Result<ChannelAssignment> {
    if channel_count == 0 {
        return Err(MeshError::InvalidInput("channel count must be at least 1".into()));
    }
    let mut asg = ChannelAssignment::new(channel_count);
    asg.set_send(tree.source(), 0);
    for v in tree.bfs_order() {
        if v != tree.source() {
            let parent = tree.parent_of(v).unwrap();
            let ri = asg
                .send_channel(parent)
                .ok_or(MeshError::MissingSendChannel(parent))?;
            asg.set_receive(v, ri);
            if !tree.children_of(v).is_empty() {
                asg.set_send(v, (ri + 1) % channel_count);
            }
        }
    }
    Ok(asg)
}

/// One heuristic send-channel decision: the node, its receive channel, the
/// already-assigned forwarders considered, and the channel picked.
#[derive(Debug, Clone)]
pub struct AssignmentStep {
    pub node: NodeId,
    pub receive: Option<u32>,
    pub neighbors: Vec<NodeId>,
    pub chosen: u32,
}

/// Interference-minimizing heuristic assignment: forwarding nodes are
/// processed top-down and each picks the send channel minimizing the sum
/// of squared interference ranges against already-assigned forwarders
/// within `neighbor_radius`, ties to the smallest channel. With no such
/// neighbor the ascending rule applies. Receive channels follow the link
/// contract; leaves get no send channel.
pub fn heuristic_assignment(
    tree: &MulticastTree,
    net: &MeshNetwork,
    channel_count: u32,
    params: &InterferenceParams,
    neighbor_radius: f64,
) -> Result<ChannelAssignment> {
    heuristic_assignment_traced(tree, net, channel_count, params, neighbor_radius)
        .map(|(asg, _)| asg)
}

/// Same as [`heuristic_assignment`] but also reports every decision.
pub fn heuristic_assignment_traced(
    tree: &MulticastTree,
    net: &MeshNetwork,
    channel_count: u32,
    params: &InterferenceParams,
    neighbor_radius: f64,
) -> Result<(ChannelAssignment, Vec<AssignmentStep>)> {
    if channel_count == 0 {
        return Err(MeshError::InvalidInput("channel count must be at least 1".into()));
    }
    if !(neighbor_radius > 0.0) {
        return Err(MeshError::InvalidInput(format!(
            "neighbor radius must be positive, got {neighbor_radius}"
        )));
    }
    let mut asg = ChannelAssignment::new(channel_count);
    let mut steps = Vec::new();
    let mut assigned: Vec<NodeId> = Vec::new();
    for v in tree.bfs_order() {
        let ri = if v == tree.source() {
            None
        } else {
            let parent = tree.parent_of(v).unwrap();
            let ri = asg
                .send_channel(parent)
                .ok_or(MeshError::MissingSendChannel(parent))?;
            asg.set_receive(v, ri);
            Some(ri)
        };
        if v != tree.source() && tree.children_of(v).is_empty() {
            continue;
        }
        let neighbors: Vec<NodeId> = assigned
            .iter()
            .copied()
            .filter(|&u| net.distance(u, v) <= neighbor_radius)
            .collect();
        let chosen = if v == tree.source() {
            0
        } else if neighbors.is_empty() {
            (ri.unwrap() + 1) % channel_count
        } else {
            (0..channel_count)
                .map(|c| (objective_for_channel(c, &asg, &neighbors, params), c))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap()
                .1
        };
        asg.set_send(v, chosen);
        assigned.push(v);
        steps.push(AssignmentStep {
            node: v,
            receive: ri,
            neighbors,
            chosen,
        });
    }
    Ok((asg, steps))
}
