//! Mesh network topology: the geometric graph model, seeded random instance
//! generation, BFS level decomposition, and the tree mesh obtained by
//! deleting same-level edges.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MeshError, Result};

/// Dense node identifier in `0..node_count`.
pub type NodeId = usize;

/// Number of placement attempts before `MeshNetwork::generate` gives up.
pub const GENERATION_ATTEMPTS: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn distance(&self, other: &Position) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A static mesh network: mesh routers at fixed positions, a shared
/// communication range, and a symmetric adjacency. Edges follow the
/// unit-disk rule (distance at most the range) unless explicit edges were
/// supplied, which override the geometric derivation.
#[derive(Debug, Clone)]
pub struct MeshNetwork {
    positions: Vec<Position>,
    comm_range: f64,
    neighbors: Vec<Vec<NodeId>>,
    source: NodeId,
    receivers: BTreeSet<NodeId>,
    explicit_edges: bool,
}

impl MeshNetwork {
    /// Builds a network with unit-disk adjacency derived from positions.
    pub fn from_unit_disk(
        positions: Vec<Position>,
        comm_range: f64,
        source: NodeId,
        receivers: BTreeSet<NodeId>,
    ) -> Result<Self> {
        let neighbors = unit_disk_neighbors(&positions, comm_range);
        Self::build(positions, comm_range, neighbors, source, receivers, false)
    }

    /// Builds a network from an explicit edge list. The edge list overrides
    /// the unit-disk rule; positions are still used for distances.
    pub fn with_explicit_edges(
        positions: Vec<Position>,
        comm_range: f64,
        source: NodeId,
        receivers: BTreeSet<NodeId>,
        edges: &[(NodeId, NodeId)],
    ) -> Result<Self> {
        let n = positions.len();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(MeshError::InvalidInput(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u == v {
                return Err(MeshError::InvalidInput(format!("self-loop on node {u}")));
            }
            if !neighbors[u].contains(&v) {
                neighbors[u].push(v);
                neighbors[v].push(u);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self::build(positions, comm_range, neighbors, source, receivers, true)
    }

    fn build(
        positions: Vec<Position>,
        comm_range: f64,
        neighbors: Vec<Vec<NodeId>>,
        source: NodeId,
        receivers: BTreeSet<NodeId>,
        explicit_edges: bool,
    ) -> Result<Self> {
        let n = positions.len();
        if n == 0 {
            return Err(MeshError::InvalidInput("network has no nodes".into()));
        }
        if !(comm_range > 0.0) {
            return Err(MeshError::InvalidInput(format!(
                "communication range must be positive, got {comm_range}"
            )));
        }
        if source >= n {
            return Err(MeshError::InvalidInput(format!(
                "source {source} outside 0..{n}"
            )));
        }
        for &r in &receivers {
            if r >= n {
                return Err(MeshError::InvalidInput(format!(
                    "receiver {r} outside 0..{n}"
                )));
            }
            if r == source {
                return Err(MeshError::InvalidInput(format!(
                    "receiver {r} is the source"
                )));
            }
        }
        let net = MeshNetwork {
            positions,
            comm_range,
            neighbors,
            source,
            receivers,
            explicit_edges,
        };
        let reach = net.reachable_from_source();
        for &r in &net.receivers {
            if !reach[r] {
                return Err(MeshError::UnreachableReceiver(r));
            }
        }
        Ok(net)
    }

    /// Generates a seeded random instance: `n` nodes placed uniformly in a
    /// `side`-by-`side` square, node 0 the source, `k_receivers` receivers
    /// drawn without replacement from the rest. Placement is resampled up
    /// to [`GENERATION_ATTEMPTS`] times until every receiver is connected
    /// to the source.
    pub fn generate(
        n: usize,
        side: f64,
        comm_range: f64,
        k_receivers: usize,
        seed: u64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(MeshError::InvalidInput(format!(
                "need at least 2 nodes, got {n}"
            )));
        }
        if !(side > 0.0) {
            return Err(MeshError::InvalidInput(format!(
                "side length must be positive, got {side}"
            )));
        }
        if !(comm_range > 0.0) {
            return Err(MeshError::InvalidInput(format!(
                "communication range must be positive, got {comm_range}"
            )));
        }
        if k_receivers == 0 || k_receivers > n - 1 {
            return Err(MeshError::InvalidInput(format!(
                "receiver count {k_receivers} outside 1..={}",
                n - 1
            )));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..GENERATION_ATTEMPTS {
            let positions: Vec<Position> = (0..n)
                .map(|_| Position {
                    x: rng.gen_range(0.0..side),
                    y: rng.gen_range(0.0..side),
                })
                .collect();
            let receivers: BTreeSet<NodeId> = rand::seq::index::sample(&mut rng, n - 1, k_receivers)
                .iter()
                .map(|i| i + 1)
                .collect();
            let neighbors = unit_disk_neighbors(&positions, comm_range);
            let candidate = MeshNetwork {
                positions,
                comm_range,
                neighbors,
                source: 0,
                receivers,
                explicit_edges: false,
            };
            let reach = candidate.reachable_from_source();
            if candidate.receivers.iter().all(|&r| reach[r]) {
                return Ok(candidate);
            }
        }
        Err(MeshError::Unsatisfiable {
            attempts: GENERATION_ATTEMPTS,
        })
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn comm_range(&self) -> f64 {
        self.comm_range
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn receivers(&self) -> &BTreeSet<NodeId> {
        &self.receivers
    }

    pub fn position(&self, v: NodeId) -> Position {
        self.positions[v]
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn distance(&self, u: NodeId, v: NodeId) -> f64 {
        self.positions[u].distance(&self.positions[v])
    }

    pub fn has_explicit_edges(&self) -> bool {
        self.explicit_edges
    }

    /// All edges as normalized `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (u, list) in self.neighbors.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn reachable_from_source(&self) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

fn unit_disk_neighbors(positions: &[Position], comm_range: f64) -> Vec<Vec<NodeId>> {
    let n = positions.len();
    let mut neighbors = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if positions[u].distance(&positions[v]) <= comm_range {
                neighbors[u].push(v);
                neighbors[v].push(u);
            }
        }
    }
    neighbors
}

/// BFS hop levels from the source together with each node's parent set
/// (adjacent nodes one level closer to the source, ascending by id).
#[derive(Debug, Clone)]
pub struct LevelDecomposition {
    source: NodeId,
    level: Vec<Option<u32>>,
    parents: Vec<Vec<NodeId>>,
}

impl LevelDecomposition {
    pub fn source(&self) -> NodeId {
        self.source
    }

    /// Hop count from the source, or `None` if unreachable.
    pub fn level_of(&self, v: NodeId) -> Option<u32> {
        self.level[v]
    }

    pub fn parents_of(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v]
    }

    pub fn node_count(&self) -> usize {
        self.level.len()
    }

    pub fn max_level(&self) -> u32 {
        self.level.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Reachable nodes at exactly `level`, ascending by id.
    pub fn nodes_at_level(&self, level: u32) -> Vec<NodeId> {
        (0..self.level.len())
            .filter(|&v| self.level[v] == Some(level))
            .collect()
    }
}

/// Computes BFS levels and parent sets from the network source.
///
/// Fails with [`MeshError::UnreachableReceiver`] if some receiver has no
/// finite hop count.
pub fn bfs_levels(net: &MeshNetwork) -> Result<LevelDecomposition> {
    let n = net.node_count();
    let mut level: Vec<Option<u32>> = vec![None; n];
    let mut queue = VecDeque::new();
    level[net.source()] = Some(0);
    queue.push_back(net.source());
    while let Some(u) = queue.pop_front() {
        let next = level[u].unwrap() + 1;
        for &v in net.neighbors(u) {
            if level[v].is_none() {
                level[v] = Some(next);
                queue.push_back(v);
            }
        }
    }
    for &r in net.receivers() {
        if level[r].is_none() {
            return Err(MeshError::UnreachableReceiver(r));
        }
    }
    let parents = (0..n)
        .map(|v| match level[v] {
            Some(lv) if lv > 0 => net
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| level[u] == Some(lv - 1))
                .collect(),
            _ => Vec::new(),
        })
        .collect();
    Ok(LevelDecomposition {
        source: net.source(),
        level,
        parents,
    })
}

/// The leveled communication structure left after deleting every edge
/// between two nodes of the same level: only edges between consecutive
/// levels remain.
#[derive(Debug, Clone)]
pub struct TreeMesh {
    levels: LevelDecomposition,
    edges: BTreeSet<(NodeId, NodeId)>,
    children: Vec<Vec<NodeId>>,
}

impl TreeMesh {
    pub fn levels(&self) -> &LevelDecomposition {
        &self.levels
    }

    pub fn source(&self) -> NodeId {
        self.levels.source()
    }

    /// Retained edges as normalized `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Parent candidates of `v`: retained neighbors one level up.
    pub fn parents_of(&self, v: NodeId) -> &[NodeId] {
        self.levels.parents_of(v)
    }

    /// Retained neighbors of `v` one level down, ascending by id.
    pub fn children_of(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }
}

/// Deletes all same-level edges of `net`, keeping exactly the edges between
/// consecutive BFS levels.
pub fn build_tree_mesh(net: &MeshNetwork, levels: &LevelDecomposition) -> Result<TreeMesh> {
    if levels.node_count() != net.node_count() || levels.source() != net.source() {
        return Err(MeshError::InvalidInput(
            "level decomposition does not match the network".into(),
        ));
    }
    let mut edges = BTreeSet::new();
    let mut children = vec![Vec::new(); net.node_count()];
    for (u, v) in net.edges() {
        match (levels.level_of(u), levels.level_of(v)) {
            (Some(lu), Some(lv)) if lu + 1 == lv => {
                edges.insert((u, v));
                children[u].push(v);
            }
            (Some(lu), Some(lv)) if lv + 1 == lu => {
                edges.insert((u, v));
                children[v].push(u);
            }
            _ => {}
        }
    }
    Ok(TreeMesh {
        levels: levels.clone(),
        edges,
        children,
    })
}
