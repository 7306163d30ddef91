//! Small hand-built reference meshes used across tests and demos. Both use
//! explicit edge lists so their adjacency stays pinned regardless of the
//! drawn positions.

use std::collections::BTreeSet;

use crate::topology::{MeshNetwork, NodeId, Position};

/// Seed under which the upward-walk tree construction on
/// [`two_branch_mesh`] picks parent a for c and parent d for g, matching
/// the documented reference tree.
pub const TWO_BRANCH_LCA_SEED: u64 = 1;

/// Node names for [`two_branch_mesh`].
pub mod two_branch {
    use super::NodeId;
    pub const S: NodeId = 0;
    pub const A: NodeId = 1;
    pub const B: NodeId = 2;
    pub const C: NodeId = 3;
    pub const D: NodeId = 4;
    pub const E: NodeId = 5;
    pub const F: NodeId = 6;
    pub const G: NodeId = 7;
}

/// Eight-node mesh with two branches below the source and two nodes (c, g)
/// that can each be reached through more than one parent. Receivers are
/// e, f, g. Levels: s=0; a,b=1; c,d,e=2; f,g=3.
pub fn two_branch_mesh() -> MeshNetwork {
    use two_branch::*;
    let positions = vec![
        Position { x: 0.0, y: 0.0 },     // s
        Position { x: -80.0, y: 60.0 },  // a
        Position { x: 80.0, y: 60.0 },   // b
        Position { x: 0.0, y: 120.0 },   // c
        Position { x: 160.0, y: 120.0 }, // d
        Position { x: 80.0, y: 160.0 },  // e
        Position { x: -60.0, y: 200.0 }, // f
        Position { x: 80.0, y: 200.0 },  // g
    ];
    let edges = [
        (S, A),
        (S, B),
        (A, C),
        (B, C),
        (B, D),
        (B, E),
        (C, F),
        (C, G),
        (D, G),
    ];
    MeshNetwork::with_explicit_edges(positions, 100.0, S, BTreeSet::from([E, F, G]), &edges)
        .expect("reference mesh is well formed")
}

/// Node names for [`relay_cover_mesh`].
pub mod relay_cover {
    use super::NodeId;
    pub const SOURCE: NodeId = 0;
    pub const LEFT: NodeId = 1;
    pub const RIGHT: NodeId = 2;
    pub const HUB: NodeId = 3;
    pub const SIDE: NodeId = 4;
    pub const R1: NodeId = 5;
    pub const R2: NodeId = 6;
    pub const R3: NodeId = 7;
}

/// Eight-node mesh where all three receivers sit at level 3 and one level-2
/// node (the hub) covers all of them while the other covers only two, so a
/// minimum relay cover needs exactly one node per level below the source.
/// Receivers are 5, 6, 7. Levels: 0=0; 1,2=1; 3,4=2; 5,6,7=3.
pub fn relay_cover_mesh() -> MeshNetwork {
    use relay_cover::*;
    let positions = vec![
        Position { x: 0.0, y: 0.0 },     // source
        Position { x: -80.0, y: 60.0 },  // left
        Position { x: 80.0, y: 60.0 },   // right
        Position { x: -40.0, y: 130.0 }, // hub
        Position { x: 90.0, y: 130.0 },  // side
        Position { x: -110.0, y: 190.0 }, // r1
        Position { x: -10.0, y: 195.0 }, // r2
        Position { x: 70.0, y: 200.0 },  // r3
    ];
    let edges = [
        (SOURCE, LEFT),
        (SOURCE, RIGHT),
        (LEFT, HUB),
        (RIGHT, SIDE),
        (HUB, R1),
        (HUB, R2),
        (HUB, R3),
        (SIDE, R2),
        (SIDE, R3),
    ];
    MeshNetwork::with_explicit_edges(
        positions,
        100.0,
        SOURCE,
        BTreeSet::from([R1, R2, R3]),
        &edges,
    )
    .expect("reference mesh is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::bfs_levels;

    #[test]
    fn two_branch_levels() {
        let net = two_branch_mesh();
        let levels = bfs_levels(&net).unwrap();
        let want = [0u32, 1, 1, 2, 2, 2, 3, 3];
        for (v, &lv) in want.iter().enumerate() {
            assert_eq!(levels.level_of(v), Some(lv));
        }
    }

    #[test]
    fn relay_cover_levels() {
        let net = relay_cover_mesh();
        let levels = bfs_levels(&net).unwrap();
        let want = [0u32, 1, 1, 2, 2, 3, 3, 3];
        for (v, &lv) in want.iter().enumerate() {
            assert_eq!(levels.level_of(v), Some(lv));
        }
    }
}
