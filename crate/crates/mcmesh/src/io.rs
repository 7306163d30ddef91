//! Serialization: canonical JSON documents for networks, trees, and
//! assignments (stable field order, sorted lists, so identical inputs give
//! byte-identical files), an edge-list text format for weighted graphs,
//! and the shortest-path result record.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::assignment::ChannelAssignment;
use crate::dspcnn::{PathResult, Solver, WeightedGraph};
use crate::error::{MeshError, Result};
use crate::topology::{MeshNetwork, Position};
use crate::tree::MulticastTree;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

/// Network document. `edges` is present only for explicit-adjacency
/// networks; without it the adjacency is derived from positions and range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub nodes: Vec<NodeDoc>,
    pub range: f64,
    pub source: usize,
    pub receivers: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
}

impl NetworkDoc {
    pub fn from_network(net: &MeshNetwork) -> Self {
        NetworkDoc {
            nodes: (0..net.node_count())
                .map(|id| {
                    let Position { x, y } = net.position(id);
                    NodeDoc { id, x, y }
                })
                .collect(),
            range: net.comm_range(),
            source: net.source(),
            receivers: net.receivers().iter().copied().collect(),
            edges: net.has_explicit_edges().then(|| net.edges()),
        }
    }

    pub fn to_network(&self) -> Result<MeshNetwork> {
        let n = self.nodes.len();
        let mut positions = vec![None; n];
        for node in &self.nodes {
            if node.id >= n {
                return Err(MeshError::Parse(format!(
                    "node id {} outside 0..{n}",
                    node.id
                )));
            }
            if positions[node.id]
                .replace(Position {
                    x: node.x,
                    y: node.y,
                })
                .is_some()
            {
                return Err(MeshError::Parse(format!("duplicate node id {}", node.id)));
            }
        }
        let positions: Vec<Position> = positions.into_iter().map(Option::unwrap).collect();
        let receivers: BTreeSet<usize> = self.receivers.iter().copied().collect();
        match &self.edges {
            Some(edges) => MeshNetwork::with_explicit_edges(
                positions,
                self.range,
                self.source,
                receivers,
                edges,
            ),
            None => MeshNetwork::from_unit_disk(positions, self.range, self.source, receivers),
        }
    }
}

/// Tree document: the parent relation as `(parent, child)` pairs sorted by
/// child.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeDoc {
    pub source: usize,
    pub receivers: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDoc {
    pub fn from_tree(tree: &MulticastTree) -> Self {
        TreeDoc {
            source: tree.source(),
            receivers: tree.receivers().iter().copied().collect(),
            edges: tree.edges(),
        }
    }

    pub fn to_tree(&self) -> Result<MulticastTree> {
        let mut parent_of = std::collections::BTreeMap::new();
        for &(parent, child) in &self.edges {
            if parent_of.insert(child, parent).is_some() {
                return Err(MeshError::Parse(format!("node {child} has two parents")));
            }
        }
        MulticastTree::new(
            self.source,
            self.receivers.iter().copied().collect(),
            parent_of,
        )
    }
}

/// Assignment document: receive and send channel tables sorted by node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub channels: u32,
    pub ri: Vec<(usize, u32)>,
    pub si: Vec<(usize, u32)>,
}

impl AssignmentDoc {
    pub fn from_assignment(asg: &ChannelAssignment) -> Self {
        AssignmentDoc {
            channels: asg.channel_count(),
            ri: asg.receive_channels().iter().map(|(&v, &c)| (v, c)).collect(),
            si: asg.send_channels().iter().map(|(&v, &c)| (v, c)).collect(),
        }
    }

    pub fn to_assignment(&self) -> Result<ChannelAssignment> {
        let mut asg = ChannelAssignment::new(self.channels);
        for &(v, c) in &self.ri {
            if c >= self.channels {
                return Err(MeshError::Parse(format!(
                    "receive channel {c} of node {v} outside 0..{}",
                    self.channels
                )));
            }
            asg.set_receive(v, c);
        }
        for &(v, c) in &self.si {
            if c >= self.channels {
                return Err(MeshError::Parse(format!(
                    "send channel {c} of node {v} outside 0..{}",
                    self.channels
                )));
            }
            asg.set_send(v, c);
        }
        Ok(asg)
    }
}

/// Canonical JSON: pretty-printed with a trailing newline; byte-stable for
/// equal values because all document lists are sorted and field order is
/// fixed.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| MeshError::Parse(e.to_string()))
}

/// Parses the weighted-graph edge list: header `n m s g`, then `m` lines
/// `u v length`. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| MeshError::Parse("empty edge list".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 4 {
        return Err(MeshError::Parse(format!(
            "header must be \"n m s g\", got {header:?}"
        )));
    }
    let parse_id = |s: &str, what: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| MeshError::Parse(format!("bad {what}: {s:?}")))
    };
    let n = parse_id(head[0], "vertex count")?;
    let m = parse_id(head[1], "edge count")?;
    let start = parse_id(head[2], "start vertex")?;
    let goal = parse_id(head[3], "goal vertex")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(MeshError::Parse(format!(
                "edge line must be \"u v length\", got {line:?}"
            )));
        }
        let u = parse_id(parts[0], "vertex")?;
        let v = parse_id(parts[1], "vertex")?;
        let l: f64 = parts[2]
            .parse()
            .map_err(|_| MeshError::Parse(format!("bad length: {:?}", parts[2])))?;
        edges.push((u, v, l));
    }
    if edges.len() != m {
        return Err(MeshError::Parse(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    WeightedGraph::new(n, &edges, start, goal)
}

pub fn edge_list_to_string(graph: &WeightedGraph) -> String {
    let edges = graph.edges();
    let mut out = format!(
        "{} {} {} {}\n",
        graph.vertex_count(),
        edges.len(),
        graph.start,
        graph.goal
    );
    for (u, v, l) in edges {
        out.push_str(&format!("{u} {v} {l}\n"));
    }
    out
}

/// Text record of one shortest-path answer.
pub fn path_record_to_string(res: &PathResult) -> String {
    let path: Vec<String> = res.path.iter().map(usize::to_string).collect();
    format!(
        "solver {}\nlength {}\nfired_count {}\npath {}\n",
        res.solver.as_str(),
        res.length,
        res.fired_count,
        path.join(" ")
    )
}

pub fn parse_path_record(text: &str) -> Result<PathResult> {
    let mut solver = None;
    let mut length = None;
    let mut fired = None;
    let mut path = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (key, rest) = line
            .split_once(' ')
            .ok_or_else(|| MeshError::Parse(format!("bad record line: {line:?}")))?;
        match key {
            "solver" => {
                solver = Some(match rest {
                    "dijkstra" => Solver::Dijkstra,
                    "pcnn" => Solver::Pcnn,
                    "dspcnn" => Solver::Dspcnn,
                    other => {
                        return Err(MeshError::Parse(format!("unknown solver {other:?}")))
                    }
                })
            }
            "length" => {
                length = Some(rest.parse().map_err(|_| {
                    MeshError::Parse(format!("bad length: {rest:?}"))
                })?)
            }
            "fired_count" => {
                fired = Some(rest.parse().map_err(|_| {
                    MeshError::Parse(format!("bad fired_count: {rest:?}"))
                })?)
            }
            "path" => {
                path = Some(
                    rest.split_whitespace()
                        .map(|s| {
                            s.parse().map_err(|_| {
                                MeshError::Parse(format!("bad path vertex: {s:?}"))
                            })
                        })
                        .collect::<Result<Vec<usize>>>()?,
                )
            }
            other => return Err(MeshError::Parse(format!("unknown record key {other:?}"))),
        }
    }
    match (solver, length, fired, path) {
        (Some(solver), Some(length), Some(fired_count), Some(path)) => Ok(PathResult {
            path,
            length,
            fired_count,
            solver,
        }),
        _ => Err(MeshError::Parse("incomplete path record".into())),
    }
}

/// Writes a file atomically: the content lands under a temporary name in
/// the target directory and is renamed into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let base = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{base}.tmp-{}", std::process::id()));
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
