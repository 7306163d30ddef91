//! Point-to-point shortest paths via autowave propagation: a single-wave
//! event model, a dual-wave variant where fronts started at both endpoints
//! meet in the middle, and a classical oracle used to cross-check both.
//!
//! All three run a continuous-time event simulation: a vertex fires when
//! the first wavefront reaches it, at the time equal to its graph distance
//! from the wave origin.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{MeshError, Result};
use crate::topology::{MeshNetwork, NodeId};

/// Undirected graph with non-negative edge lengths and a fixed query pair.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
    pub start: usize,
    pub goal: usize,
}

impl WeightedGraph {
    pub fn new(
        vertex_count: usize,
        edges: &[(usize, usize, f64)],
        start: usize,
        goal: usize,
    ) -> Result<Self> {
        if start >= vertex_count || goal >= vertex_count {
            return Err(MeshError::InvalidInput(format!(
                "endpoints ({start}, {goal}) outside 0..{vertex_count}"
            )));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v, l) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(MeshError::InvalidInput(format!(
                    "edge ({u}, {v}) outside 0..{vertex_count}"
                )));
            }
            if !l.is_finite() || l < 0.0 {
                return Err(MeshError::InvalidInput(format!(
                    "edge ({u}, {v}) has invalid length {l}"
                )));
            }
            adjacency[u].push((v, l));
            if u != v {
                adjacency[v].push((u, l));
            }
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        }
        Ok(WeightedGraph {
            adjacency,
            edge_count: edges.len(),
            start,
            goal,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Undirected edges as `(u, v, length)` with `u <= v`, in input order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &(v, l) in list {
                if u <= v {
                    out.push((u, v, l));
                }
            }
        }
        out
    }
}

/// Converts a mesh into a weighted query graph from the mesh source to
/// `goal`, weighting edges either uniformly or by Euclidean length.
pub fn mesh_to_weighted(
    net: &MeshNetwork,
    mode: EdgeWeightMode,
    goal: NodeId,
) -> Result<WeightedGraph> {
    let edges: Vec<(usize, usize, f64)> = net
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let w = match mode {
                EdgeWeightMode::Hops => 1.0,
                EdgeWeightMode::Euclidean => net.distance(u, v),
            };
            (u, v, w)
        })
        .collect();
    WeightedGraph::new(net.node_count(), &edges, net.source(), goal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightMode {
    Hops,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Dijkstra,
    Pcnn,
    Dspcnn,
}

impl Solver {
    pub fn as_str(self) -> &'static str {
        match self {
            Solver::Dijkstra => "dijkstra",
            Solver::Pcnn => "pcnn",
            Solver::Dspcnn => "dspcnn",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub path: Vec<usize>,
    pub length: f64,
    /// Search-space statistic: vertices settled (oracle) or firings.
    pub fired_count: usize,
    pub solver: Solver,
}

/// Classical shortest-path oracle. Ties between equal-length paths are
/// broken toward the smallest predecessor id; `fired_count` is the number
/// of settled vertices when the goal settles.
pub fn dijkstra_oracle(graph: &WeightedGraph) -> Result<PathResult> {
    struct State {
        cost: f64,
        vertex: usize,
    }
    impl PartialEq for State {
        fn eq(&self, other: &Self) -> bool {
            self.cmp(other) == Ordering::Equal
        }
    }
    impl Eq for State {}
    impl PartialOrd for State {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for State {
        // Reversed: BinaryHeap is a max-heap, we want the cheapest state.
        fn cmp(&self, other: &Self) -> Ordering {
            other
                .cost
                .total_cmp(&self.cost)
                .then(other.vertex.cmp(&self.vertex))
        }
    }

    let n = graph.vertex_count();
    let mut dist: Vec<f64> = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut settled_count = 0;
    let mut heap = BinaryHeap::new();
    dist[graph.start] = 0.0;
    heap.push(State {
        cost: 0.0,
        vertex: graph.start,
    });
    while let Some(State { cost, vertex }) = heap.pop() {
        if settled[vertex] {
            continue;
        }
        settled[vertex] = true;
        settled_count += 1;
        if vertex == graph.goal {
            break;
        }
        for &(next, l) in graph.neighbors(vertex) {
            if settled[next] {
                continue;
            }
            let nd = cost + l;
            if nd < dist[next] {
                dist[next] = nd;
                pred[next] = Some(vertex);
                heap.push(State {
                    cost: nd,
                    vertex: next,
                });
            } else if nd == dist[next] && pred[next].map_or(false, |p| vertex < p) {
                pred[next] = Some(vertex);
            }
        }
    }
    if !settled[graph.goal] {
        return Err(MeshError::NoPath {
            start: graph.start,
            goal: graph.goal,
        });
    }
    let mut path = vec![graph.goal];
    while let Some(&p) = pred.get(*path.last().unwrap()).and_then(Option::as_ref) {
        path.push(p);
    }
    path.reverse();
    Ok(PathResult {
        path,
        length: dist[graph.goal],
        fired_count: settled_count,
        solver: Solver::Dijkstra,
    })
}

/// Wave identity in the dual-wave model: one front expands from the start
/// vertex, the other from the goal. Orders start-wave first on time ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WaveTag {
    FromStart,
    FromGoal,
}

impl WaveTag {
    fn index(self) -> usize {
        match self {
            WaveTag::FromStart => 0,
            WaveTag::FromGoal => 1,
        }
    }

    fn opposite(self) -> WaveTag {
        match self {
            WaveTag::FromStart => WaveTag::FromGoal,
            WaveTag::FromGoal => WaveTag::FromStart,
        }
    }
}

/// Where the two wavefronts crossed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Meeting {
    /// A single vertex fired under both tags.
    Vertex(usize),
    /// The fronts crossed inside an edge: `start_end` fired from the start
    /// side, `goal_end` from the goal side; `split` is the distance from
    /// `start_end` to the crossing point.
    Edge {
        start_end: usize,
        goal_end: usize,
        length: f64,
        split: f64,
    },
}

/// Full firing record of a dual-wave run.
#[derive(Debug, Clone)]
pub struct WaveState {
    fire_time: Vec<[Option<f64>; 2]>,
    precursor: Vec<[Option<usize>; 2]>,
    firings: Vec<(f64, WaveTag, usize)>,
    meeting: Option<Meeting>,
}

impl WaveState {
    fn new(n: usize) -> Self {
        WaveState {
            fire_time: vec![[None, None]; n],
            precursor: vec![[None, None]; n],
            firings: Vec::new(),
            meeting: None,
        }
    }

    pub fn fire_time(&self, v: usize, tag: WaveTag) -> Option<f64> {
        self.fire_time[v][tag.index()]
    }

    /// The neighbor whose firing propagated the wave to `v`, if any.
    pub fn precursor(&self, v: usize, tag: WaveTag) -> Option<usize> {
        self.precursor[v][tag.index()]
    }

    /// Firings in processing order: `(time, tag, vertex)`.
    pub fn firings(&self) -> &[(f64, WaveTag, usize)] {
        &self.firings
    }

    pub fn fired_count(&self) -> usize {
        self.firings.len()
    }

    pub fn meeting(&self) -> Option<Meeting> {
        self.meeting
    }

    fn fire(&mut self, v: usize, tag: WaveTag, time: f64, pred: Option<usize>) {
        self.fire_time[v][tag.index()] = Some(time);
        self.precursor[v][tag.index()] = pred;
        self.firings.push((time, tag, v));
    }

    /// Backtracks precursors of `tag` from `v` to the wave origin;
    /// the returned sequence starts at the origin and ends at `v`.
    fn backtrack(&self, mut v: usize, tag: WaveTag) -> Vec<usize> {
        let mut rev = vec![v];
        while let Some(p) = self.precursor(v, tag) {
            rev.push(p);
            v = p;
        }
        rev.reverse();
        rev
    }
}

struct WaveEvent {
    time: f64,
    tag: WaveTag,
    vertex: usize,
    pred: Option<usize>,
}

impl PartialEq for WaveEvent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for WaveEvent {}
impl PartialOrd for WaveEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WaveEvent {
    // Reversed for min-heap behavior: earliest time, then start wave
    // before goal wave, then smaller vertex, then smaller precursor.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.tag.cmp(&self.tag))
            .then_with(|| other.vertex.cmp(&self.vertex))
            .then_with(|| other.pred.cmp(&self.pred))
    }
}

/// Single-wave shortest path: one front expands from the start vertex and
/// the run stops as soon as the goal fires. `fired_count` counts vertices
/// fired up to and including the goal.
pub fn pcnn_shortest_path(graph: &WeightedGraph) -> Result<PathResult> {
    let n = graph.vertex_count();
    let mut state = WaveState::new(n);
    let mut heap = BinaryHeap::new();
    heap.push(WaveEvent {
        time: 0.0,
        tag: WaveTag::FromStart,
        vertex: graph.start,
        pred: None,
    });
    while let Some(ev) = heap.pop() {
        if state.fire_time(ev.vertex, ev.tag).is_some() {
            continue;
        }
        state.fire(ev.vertex, ev.tag, ev.time, ev.pred);
        if ev.vertex == graph.goal {
            return Ok(PathResult {
                path: state.backtrack(graph.goal, WaveTag::FromStart),
                length: ev.time,
                fired_count: state.fired_count(),
                solver: Solver::Pcnn,
            });
        }
        for &(next, l) in graph.neighbors(ev.vertex) {
            if state.fire_time(next, ev.tag).is_none() {
                heap.push(WaveEvent {
                    time: ev.time + l,
                    tag: ev.tag,
                    vertex: next,
                    pred: Some(ev.vertex),
                });
            }
        }
    }
    Err(MeshError::NoPath {
        start: graph.start,
        goal: graph.goal,
    })
}

/// Dual-wave shortest path: fronts expand from both endpoints on a shared
/// timeline. Candidate junctions (a vertex fired by both waves, or an edge
/// whose endpoints fired under opposite tags) are collected as they
/// appear; events keep draining while the next timestamp is at most the
/// crossing time of the best candidate, and the cheapest junction yields
/// the path.
pub fn dspcnn_shortest_path(graph: &WeightedGraph) -> Result<PathResult> {
    dspcnn_with_state(graph).map(|(result, _)| result)
}

/// Same as [`dspcnn_shortest_path`] but also returns the firing record.
pub fn dspcnn_with_state(graph: &WeightedGraph) -> Result<(PathResult, WaveState)> {
    let n = graph.vertex_count();
    let mut state = WaveState::new(n);
    let mut heap = BinaryHeap::new();
    heap.push(WaveEvent {
        time: 0.0,
        tag: WaveTag::FromStart,
        vertex: graph.start,
        pred: None,
    });
    heap.push(WaveEvent {
        time: 0.0,
        tag: WaveTag::FromGoal,
        vertex: graph.goal,
        pred: None,
    });
    // Best junction so far: (total length, meeting description).
    let mut best: Option<(f64, Meeting)> = None;
    while let Some(ev) = heap.pop() {
        if let Some((sum, _)) = best {
            // Crossing time of the best candidate: no event after it can
            // produce a cheaper junction.
            if ev.time > sum / 2.0 {
                break;
            }
        }
        if state.fire_time(ev.vertex, ev.tag).is_some() {
            continue;
        }
        state.fire(ev.vertex, ev.tag, ev.time, ev.pred);
        let other = ev.tag.opposite();
        if let Some(t_other) = state.fire_time(ev.vertex, other) {
            let sum = ev.time + t_other;
            if best.map_or(true, |(b, _)| sum < b) {
                best = Some((sum, Meeting::Vertex(ev.vertex)));
            }
        }
        for &(next, l) in graph.neighbors(ev.vertex) {
            if let Some(t_other) = state.fire_time(next, other) {
                let sum = ev.time + l + t_other;
                if best.map_or(true, |(b, _)| sum < b) {
                    let (start_end, goal_end, t_start) = match ev.tag {
                        WaveTag::FromStart => (ev.vertex, next, ev.time),
                        WaveTag::FromGoal => (next, ev.vertex, t_other),
                    };
                    let meeting = Meeting::Edge {
                        start_end,
                        goal_end,
                        length: l,
                        split: sum / 2.0 - t_start,
                    };
                    best = Some((sum, meeting));
                }
            }
            if state.fire_time(next, ev.tag).is_none() {
                heap.push(WaveEvent {
                    time: ev.time + l,
                    tag: ev.tag,
                    vertex: next,
                    pred: Some(ev.vertex),
                });
            }
        }
    }
    let Some((length, meeting)) = best else {
        return Err(MeshError::NoPath {
            start: graph.start,
            goal: graph.goal,
        });
    };
    state.meeting = Some(meeting);
    let mut path = match meeting {
        Meeting::Vertex(v) => {
            let mut p = state.backtrack(v, WaveTag::FromStart);
            let mut tail = state.backtrack(v, WaveTag::FromGoal);
            tail.reverse(); // now v .. goal
            p.extend(tail.into_iter().skip(1));
            p
        }
        Meeting::Edge {
            start_end,
            goal_end,
            ..
        } => {
            let mut p = state.backtrack(start_end, WaveTag::FromStart);
            let mut tail = state.backtrack(goal_end, WaveTag::FromGoal);
            tail.reverse(); // now goal_end .. goal
            p.extend(tail);
            p
        }
    };
    path.dedup();
    let result = PathResult {
        path,
        length,
        fired_count: state.fired_count(),
        solver: Solver::Dspcnn,
    };
    Ok((result, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_length(graph: &WeightedGraph, path: &[usize]) -> Option<f64> {
        let mut total = 0.0;
        for pair in path.windows(2) {
            let l = graph
                .neighbors(pair[0])
                .iter()
                .find(|&&(v, _)| v == pair[1])
                .map(|&(_, l)| l)?;
            total += l;
        }
        Some(total)
    }

    fn assert_valid(graph: &WeightedGraph, res: &PathResult) {
        assert_eq!(res.path.first(), Some(&graph.start));
        assert_eq!(res.path.last(), Some(&graph.goal));
        let summed = path_length(graph, &res.path).expect("path uses real edges");
        assert!(
            (summed - res.length).abs() <= 1e-9 * summed.max(1.0),
            "path sums to {summed}, reported {}",
            res.length
        );
    }

    /// Connected random graph: spanning tree over a shuffled order plus
    /// extra edges, integer lengths 1..=20.
    fn random_graph(n: usize, extra: usize, seed: u64) -> WeightedGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            edges.push((u, v, rng.gen_range(1..=20) as f64));
        }
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u, v, rng.gen_range(1..=20) as f64));
            }
        }
        let goal = rng.gen_range(1..n);
        WeightedGraph::new(n, &edges, 0, goal).unwrap()
    }

    fn grid_graph(side: usize, start: usize, goal: usize) -> WeightedGraph {
        let idx = |r: usize, c: usize| r * side + c;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                if c + 1 < side {
                    edges.push((idx(r, c), idx(r, c + 1), 1.0));
                }
                if r + 1 < side {
                    edges.push((idx(r, c), idx(r + 1, c), 1.0));
                }
            }
        }
        WeightedGraph::new(side * side, &edges, start, goal).unwrap()
    }

    #[test]
    fn oracle_identity_when_start_is_goal() {
        let g = WeightedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)], 1, 1).unwrap();
        let res = dijkstra_oracle(&g).unwrap();
        assert_eq!(res.path, vec![1]);
        assert_eq!(res.length, 0.0);
        assert_eq!(res.fired_count, 1);
    }

    #[test]
    fn oracle_picks_the_two_hop_route_over_the_heavy_edge() {
        let g =
            WeightedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)], 0, 2).unwrap();
        let res = dijkstra_oracle(&g).unwrap();
        assert_eq!(res.path, vec![0, 1, 2]);
        assert_eq!(res.length, 2.0);
    }

    #[test]
    fn oracle_reports_missing_path() {
        let g = WeightedGraph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)], 0, 3).unwrap();
        match dijkstra_oracle(&g) {
            Err(MeshError::NoPath { start: 0, goal: 3 }) => {}
            other => panic!("expected NoPath, got {other:?}"),
        }
    }

    #[test]
    fn single_wave_chain_fires_in_arrival_order() {
        let g = WeightedGraph::new(3, &[(0, 1, 2.0), (1, 2, 3.0)], 0, 2).unwrap();
        let res = pcnn_shortest_path(&g).unwrap();
        assert_eq!(res.path, vec![0, 1, 2]);
        assert_eq!(res.length, 5.0);
        assert_eq!(res.fired_count, 3);
    }

    #[test]
    fn single_wave_identity() {
        let g = WeightedGraph::new(2, &[(0, 1, 1.0)], 0, 0).unwrap();
        let res = pcnn_shortest_path(&g).unwrap();
        assert_eq!(res.path, vec![0]);
        assert_eq!(res.length, 0.0);
        assert_eq!(res.fired_count, 1);
    }

    #[test]
    fn single_wave_floods_the_grid_before_the_far_corner_fires() {
        let g = grid_graph(4, 0, 15);
        let res = pcnn_shortest_path(&g).unwrap();
        assert_eq!(res.length, 6.0);
        assert_eq!(res.fired_count, 16);
    }

    #[test]
    fn dual_wave_identity() {
        let g = WeightedGraph::new(2, &[(0, 1, 1.0)], 1, 1).unwrap();
        let res = dspcnn_shortest_path(&g).unwrap();
        assert_eq!(res.path, vec![1]);
        assert_eq!(res.length, 0.0);
    }

    #[test]
    fn dual_wave_meets_inside_the_middle_edge() {
        let g =
            WeightedGraph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)], 0, 3).unwrap();
        let (res, state) = dspcnn_with_state(&g).unwrap();
        assert_eq!(res.path, vec![0, 1, 2, 3]);
        assert_eq!(res.length, 3.0);
        assert_eq!(res.fired_count, 4);
        match state.meeting() {
            Some(Meeting::Edge {
                start_end: 1,
                goal_end: 2,
                length,
                split,
            }) => {
                assert_eq!(length, 1.0);
                assert!((split - 0.5).abs() < 1e-12);
            }
            other => panic!("expected meeting inside edge (1, 2), got {other:?}"),
        }
    }

    #[test]
    fn dual_wave_ignores_the_early_heavy_shortcut() {
        // The direct start-goal edge creates the first junction candidate
        // immediately at t=0; only continued draining finds the real path.
        let g = WeightedGraph::new(
            4,
            &[(0, 3, 100.0), (0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)],
            0,
            3,
        )
        .unwrap();
        let res = dspcnn_shortest_path(&g).unwrap();
        assert_eq!(res.length, 3.0);
        assert_eq!(res.path, vec![0, 1, 2, 3]);
    }

    #[test]
    fn dual_wave_handles_zero_length_edges() {
        let g =
            WeightedGraph::new(3, &[(0, 1, 0.0), (1, 2, 0.0)], 0, 2).unwrap();
        let res = dspcnn_shortest_path(&g).unwrap();
        assert_eq!(res.length, 0.0);
        assert_valid(&g, &res);
    }

    #[test]
    fn dual_wave_reports_missing_path() {
        let g = WeightedGraph::new(4, &[(0, 1, 1.0), (2, 3, 1.0)], 0, 3).unwrap();
        assert!(matches!(
            dspcnn_shortest_path(&g),
            Err(MeshError::NoPath { start: 0, goal: 3 })
        ));
    }

    #[test]
    fn firings_are_monotone_and_respect_precursors() {
        let g = random_graph(30, 40, 9);
        let (_, state) = dspcnn_with_state(&g).unwrap();
        let mut prev = 0.0;
        for &(t, _, _) in state.firings() {
            assert!(t >= prev, "firing times regressed");
            prev = t;
        }
        for v in 0..g.vertex_count() {
            for tag in [WaveTag::FromStart, WaveTag::FromGoal] {
                if let (Some(t), Some(p)) = (state.fire_time(v, tag), state.precursor(v, tag)) {
                    let tp = state.fire_time(p, tag).expect("precursor fired");
                    assert!(tp <= t);
                }
            }
        }
    }

    #[test]
    fn all_solvers_agree_on_random_graphs() {
        for seed in 0..120u64 {
            let n = 2 + (seed as usize % 29);
            let g = random_graph(n, n, seed);
            let oracle = dijkstra_oracle(&g).unwrap();
            let single = pcnn_shortest_path(&g).unwrap();
            let dual = dspcnn_shortest_path(&g).unwrap();
            assert_eq!(single.length, oracle.length, "seed {seed}");
            assert_eq!(dual.length, oracle.length, "seed {seed}");
            assert_valid(&g, &oracle);
            assert_valid(&g, &single);
            assert_valid(&g, &dual);
        }
    }

    #[test]
    fn swapping_endpoints_preserves_the_distance() {
        for seed in 200..230u64 {
            let g = random_graph(25, 30, seed);
            let mut swapped = g.clone();
            std::mem::swap(&mut swapped.start, &mut swapped.goal);
            let a = dspcnn_shortest_path(&g).unwrap();
            let b = dspcnn_shortest_path(&swapped).unwrap();
            assert_eq!(a.length, b.length, "seed {seed}");
        }
    }

    #[test]
    fn dual_wave_fires_fewer_vertices_on_the_grid() {
        // Interior endpoints nine hops apart: each half-wave floods far
        // fewer vertices than the full single wave.
        let g = grid_graph(20, 110, 290);
        let single = pcnn_shortest_path(&g).unwrap();
        let dual = dspcnn_shortest_path(&g).unwrap();
        assert_eq!(single.length, dual.length);
        assert!(
            (dual.fired_count as f64) < 0.9 * single.fired_count as f64,
            "dual {} vs single {}",
            dual.fired_count,
            single.fired_count
        );
    }

    #[test]
    fn mesh_conversion_weights() {
        use crate::fixtures;
        use crate::topology::Position;
        use std::collections::BTreeSet;

        let positions = vec![Position { x: 0.0, y: 0.0 }, Position { x: 37.5, y: 0.0 }];
        let net = MeshNetwork::from_unit_disk(positions, 50.0, 0, BTreeSet::from([1])).unwrap();
        let hops = mesh_to_weighted(&net, EdgeWeightMode::Hops, 1).unwrap();
        assert_eq!(hops.edges(), vec![(0, 1, 1.0)]);
        let euclid = mesh_to_weighted(&net, EdgeWeightMode::Euclidean, 1).unwrap();
        assert_eq!(euclid.edges(), vec![(0, 1, 37.5)]);

        // Unit weights make the distance equal the BFS level.
        let mesh = fixtures::two_branch_mesh();
        let g = mesh_to_weighted(&mesh, EdgeWeightMode::Hops, fixtures::two_branch::G).unwrap();
        let res = dspcnn_shortest_path(&g).unwrap();
        assert_eq!(res.length, 3.0);
    }

    #[test]
    fn rejects_negative_and_non_finite_lengths() {
        assert!(WeightedGraph::new(2, &[(0, 1, -1.0)], 0, 1).is_err());
        assert!(WeightedGraph::new(2, &[(0, 1, f64::NAN)], 0, 1).is_err());
        assert!(WeightedGraph::new(2, &[(0, 1, 1.0)], 0, 5).is_err());
    }
}
