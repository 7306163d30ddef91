//! Scenario-driven pipeline execution: a scenario file describes the
//! network, algorithm choices, and seeds; subcommands run a prefix of the
//! pipeline (network, tree, assignment, simulation, shortest paths, sweep)
//! and write canonical artifacts into the output directory.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use mcmesh::io::{
    parse_edge_list, path_record_to_string, to_canonical_json, write_atomic, AssignmentDoc,
    NetworkDoc, TreeDoc,
};
use mcmesh::{
    bfs_levels, build_tree_mesh, dijkstra_oracle, dspcnn_shortest_path, fixtures,
    lca_assign_channels, lca_build_tree, mcm_build_tree, mesh_to_weighted, pcnn_shortest_path,
    simulate_multicast, ChannelAssignment, EdgeWeightMode, InterferenceParams,
    LevelDecomposition, MeshNetwork, MulticastTree, PathResult, SimConfig, WeightedGraph,
    METRICS_CSV_HEADER,
};

pub const TREES_CSV_HEADER: &str = "scenario_id,algorithm,relays,tree_nodes";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Module,
    SchemaMismatch,
    EmptyInput,
    Io,
}

impl ErrorKind {
    fn label(self) -> &'static str {
        match self {
            ErrorKind::Parse => "PARSE_ERROR",
            ErrorKind::Validation => "VALIDATION_ERROR",
            ErrorKind::Module => "MODULE_ERROR",
            ErrorKind::SchemaMismatch => "SCHEMA_MISMATCH",
            ErrorKind::EmptyInput => "EMPTY_INPUT",
            ErrorKind::Io => "IO_ERROR",
        }
    }
}

/// Error with the failing file and pipeline step attached.
#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub file: PathBuf,
    pub step: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(
        kind: ErrorKind,
        file: impl Into<PathBuf>,
        step: &'static str,
        message: impl Into<String>,
    ) -> Self {
        CliError {
            kind,
            file: file.into(),
            step,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} @ {}]: {}",
            self.kind.label(),
            self.file.display(),
            self.step,
            self.message
        )
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Which pipeline prefix a subcommand executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Network,
    Tree,
    Assign,
    Simulate,
    ShortestPath,
    Sweep,
    Full,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub network: Option<NetworkSpec>,
    #[serde(default)]
    pub channels: Option<u32>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub neighbor_radius: Option<f64>,
    #[serde(default)]
    pub tree: Option<String>,
    #[serde(default)]
    pub tree_seed: Option<u64>,
    #[serde(default)]
    pub assignment: Option<String>,
    #[serde(default)]
    pub simulation: Option<SimSpec>,
    #[serde(default)]
    pub shortest_path: Option<SpSpec>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default)]
    pub generate: Option<GenerateSpec>,
    #[serde(default)]
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub inline: Option<NetworkDoc>,
    #[serde(default)]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateSpec {
    pub nodes: usize,
    pub side: f64,
    pub range: f64,
    pub receivers: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    pub slots: u64,
    #[serde(default = "default_rate")]
    pub rate: u32,
    pub seed: u64,
}

fn default_rate() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpSpec {
    pub solvers: Vec<String>,
    #[serde(default)]
    pub graph_file: Option<PathBuf>,
    #[serde(default)]
    pub source: Option<usize>,
    #[serde(default)]
    pub goal: Option<usize>,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mode() -> String {
    "hops".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub seed_start: u64,
    pub seed_count: u64,
    pub channels: Vec<u32>,
}

/// Loads, validates, and executes a scenario stage; returns the artifact
/// paths written, in write order.
pub fn execute(
    stage: Stage,
    scenario_path: &Path,
    out_dir: &Path,
    seed_override: Option<u64>,
    jobs: usize,
) -> CliResult<Vec<PathBuf>> {
    let text = std::fs::read_to_string(scenario_path).map_err(|e| {
        CliError::new(ErrorKind::Io, scenario_path, "load", e.to_string())
    })?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(|e| {
        CliError::new(ErrorKind::Parse, scenario_path, "parse", e.to_string())
    })?;
    std::fs::create_dir_all(out_dir).map_err(|e| {
        CliError::new(ErrorKind::Io, out_dir, "prepare-output", e.to_string())
    })?;
    let runner = Runner {
        scenario,
        scenario_path: scenario_path.to_path_buf(),
        base_dir: scenario_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
        out_dir: out_dir.to_path_buf(),
        seed_override,
        jobs,
    };
    runner.run(stage)
}

struct Runner {
    scenario: Scenario,
    scenario_path: PathBuf,
    base_dir: PathBuf,
    out_dir: PathBuf,
    seed_override: Option<u64>,
    jobs: usize,
}

impl Runner {
    fn err(&self, kind: ErrorKind, step: &'static str, message: impl Into<String>) -> CliError {
        CliError::new(kind, &self.scenario_path, step, message)
    }

    fn validation(&self, step: &'static str, message: impl Into<String>) -> CliError {
        self.err(ErrorKind::Validation, step, message)
    }

    fn module<T>(
        &self,
        step: &'static str,
        result: mcmesh::Result<T>,
    ) -> CliResult<T> {
        result.map_err(|e| self.err(ErrorKind::Module, step, e.to_string()))
    }

    fn artifact(&self, suffix: &str) -> PathBuf {
        self.out_dir.join(format!("{}-{suffix}", self.scenario.name))
    }

    fn write(&self, suffix: &str, contents: &str, written: &mut Vec<PathBuf>) -> CliResult<()> {
        let path = self.artifact(suffix);
        write_atomic(&path, contents)
            .map_err(|e| CliError::new(ErrorKind::Io, &path, "write", e.to_string()))?;
        written.push(path);
        Ok(())
    }

    fn run(&self, stage: Stage) -> CliResult<Vec<PathBuf>> {
        let mut written = Vec::new();
        match stage {
            Stage::Network => {
                let net = self.realize_network()?;
                self.emit_network(&net, &mut written)?;
            }
            Stage::Tree => {
                let net = self.realize_network()?;
                self.emit_network(&net, &mut written)?;
                let (tree, _) = self.build_tree(&net)?;
                self.emit_tree(&tree, &mut written)?;
            }
            Stage::Assign => {
                let net = self.realize_network()?;
                self.emit_network(&net, &mut written)?;
                let (tree, levels) = self.build_tree(&net)?;
                self.emit_tree(&tree, &mut written)?;
                let asg = self.build_assignment(&net, &levels, &tree)?;
                self.emit_assignment(&asg, &mut written)?;
            }
            Stage::Simulate => {
                let net = self.realize_network()?;
                self.emit_network(&net, &mut written)?;
                let (tree, levels) = self.build_tree(&net)?;
                self.emit_tree(&tree, &mut written)?;
                let asg = self.build_assignment(&net, &levels, &tree)?;
                self.emit_assignment(&asg, &mut written)?;
                let row = self.run_simulation(&net, &tree, &asg, &self.scenario.name, None)?;
                let csv = format!("{METRICS_CSV_HEADER}\n{row}\n");
                self.write("metrics.csv", &csv, &mut written)?;
            }
            Stage::ShortestPath => {
                self.run_shortest_paths(&mut written)?;
            }
            Stage::Sweep => {
                self.run_sweep(&mut written)?;
            }
            Stage::Full => {
                // A sweep subsumes the single pipeline (and owns the
                // metrics.csv artifact name), so it replaces that branch.
                if self.scenario.sweep.is_some() {
                    self.run_sweep(&mut written)?;
                } else if self.scenario.network.is_some() {
                    let net = self.realize_network()?;
                    self.emit_network(&net, &mut written)?;
                    if self.scenario.tree.is_some() {
                        let (tree, levels) = self.build_tree(&net)?;
                        self.emit_tree(&tree, &mut written)?;
                        if self.scenario.assignment.is_some() {
                            let asg = self.build_assignment(&net, &levels, &tree)?;
                            self.emit_assignment(&asg, &mut written)?;
                            if self.scenario.simulation.is_some() {
                                let row = self.run_simulation(
                                    &net,
                                    &tree,
                                    &asg,
                                    &self.scenario.name,
                                    None,
                                )?;
                                let csv = format!("{METRICS_CSV_HEADER}\n{row}\n");
                                self.write("metrics.csv", &csv, &mut written)?;
                            }
                        }
                    }
                }
                if self.scenario.shortest_path.is_some() {
                    self.run_shortest_paths(&mut written)?;
                }
            }
        }
        Ok(written)
    }

    fn emit_network(&self, net: &MeshNetwork, written: &mut Vec<PathBuf>) -> CliResult<()> {
        let json = to_canonical_json(&NetworkDoc::from_network(net));
        self.write("network.json", &json, written)
    }

    fn emit_tree(&self, tree: &MulticastTree, written: &mut Vec<PathBuf>) -> CliResult<()> {
        let json = to_canonical_json(&TreeDoc::from_tree(tree));
        self.write("tree.json", &json, written)
    }

    fn emit_assignment(
        &self,
        asg: &ChannelAssignment,
        written: &mut Vec<PathBuf>,
    ) -> CliResult<()> {
        let json = to_canonical_json(&AssignmentDoc::from_assignment(asg));
        self.write("assignment.json", &json, written)
    }

    fn realize_network(&self) -> CliResult<MeshNetwork> {
        let spec = self
            .scenario
            .network
            .as_ref()
            .ok_or_else(|| self.validation("network", "scenario has no network section"))?;
        let sources = [
            spec.generate.is_some(),
            spec.file.is_some(),
            spec.inline.is_some(),
            spec.fixture.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(self.validation(
                "network",
                "network must give exactly one of generate, file, inline, fixture",
            ));
        }
        if let Some(gen) = &spec.generate {
            let seed = self.seed_override.unwrap_or(gen.seed);
            return self.module(
                "network",
                MeshNetwork::generate(gen.nodes, gen.side, gen.range, gen.receivers, seed),
            );
        }
        if let Some(file) = &spec.file {
            let path = self.base_dir.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| {
                CliError::new(ErrorKind::Io, &path, "network", e.to_string())
            })?;
            let doc: NetworkDoc = serde_json::from_str(&text).map_err(|e| {
                CliError::new(ErrorKind::Parse, &path, "network", e.to_string())
            })?;
            return self.module("network", doc.to_network());
        }
        if let Some(doc) = &spec.inline {
            return self.module("network", doc.to_network());
        }
        let fixture = spec.fixture.as_ref().unwrap();
        match fixture.as_str() {
            "two-branch" => Ok(fixtures::two_branch_mesh()),
            "relay-cover" => Ok(fixtures::relay_cover_mesh()),
            other => Err(self.validation("network", format!("unknown fixture {other:?}"))),
        }
    }

    fn build_tree(&self, net: &MeshNetwork) -> CliResult<(MulticastTree, LevelDecomposition)> {
        let algorithm = self
            .scenario
            .tree
            .as_ref()
            .ok_or_else(|| self.validation("tree", "scenario has no tree algorithm"))?;
        let levels = self.module("tree", bfs_levels(net))?;
        let tm = self.module("tree", build_tree_mesh(net, &levels))?;
        let tree = match algorithm.as_str() {
            "lca" => {
                let seed = self.seed_override.or(self.scenario.tree_seed).ok_or_else(|| {
                    self.validation("tree", "tree \"lca\" requires tree_seed")
                })?;
                self.module("tree", lca_build_tree(&tm, net.receivers(), seed))?
            }
            "mcm" => self.module("tree", mcm_build_tree(&tm, net.receivers()))?,
            other => {
                return Err(
                    self.validation("tree", format!("unknown tree algorithm {other:?}"))
                )
            }
        };
        Ok((tree, levels))
    }

    fn interference_params(&self, net: &MeshNetwork, step: &'static str) -> CliResult<InterferenceParams> {
        let delta = self
            .scenario
            .delta
            .ok_or_else(|| self.validation(step, "scenario has no delta"))?;
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(self.validation(step, format!("delta {delta} outside (0, 1]")));
        }
        Ok(InterferenceParams::new(net.comm_range(), delta))
    }

    fn build_assignment(
        &self,
        net: &MeshNetwork,
        levels: &LevelDecomposition,
        tree: &MulticastTree,
    ) -> CliResult<ChannelAssignment> {
        let algorithm = self
            .scenario
            .assignment
            .as_ref()
            .ok_or_else(|| self.validation("assign", "scenario has no assignment algorithm"))?;
        let channels = self
            .scenario
            .channels
            .ok_or_else(|| self.validation("assign", "scenario has no channels"))?;
        self.assignment_for(net, levels, tree, algorithm, channels)
    }

    fn assignment_for(
        &self,
        net: &MeshNetwork,
        levels: &LevelDecomposition,
        tree: &MulticastTree,
        algorithm: &str,
        channels: u32,
    ) -> CliResult<ChannelAssignment> {
        match algorithm {
            "lca" => self.module("assign", lca_assign_channels(tree, levels, channels)),
            "ascending" => self.module("assign", mcmesh::ascending_assignment(tree, channels)),
            "heuristic" => {
                let params = self.interference_params(net, "assign")?;
                let radius = self
                    .scenario
                    .neighbor_radius
                    .unwrap_or(2.0 * net.comm_range());
                self.module(
                    "assign",
                    mcmesh::heuristic_assignment(tree, net, channels, &params, radius),
                )
            }
            other => Err(self.validation(
                "assign",
                format!("unknown assignment algorithm {other:?}"),
            )),
        }
    }

    fn algorithm_label(&self) -> String {
        format!(
            "{}-{}",
            self.scenario.tree.as_deref().unwrap_or("none"),
            self.scenario.assignment.as_deref().unwrap_or("none")
        )
    }

    /// Runs one simulation and renders its metrics row. `sim_seed` replaces
    /// the scenario's simulation seed when set (sweep instances).
    fn run_simulation(
        &self,
        net: &MeshNetwork,
        tree: &MulticastTree,
        asg: &ChannelAssignment,
        scenario_id: &str,
        sim_seed: Option<u64>,
    ) -> CliResult<String> {
        let sim = self
            .scenario
            .simulation
            .as_ref()
            .ok_or_else(|| self.validation("simulate", "scenario has no simulation section"))?;
        let params = self.interference_params(net, "simulate")?;
        let cfg = SimConfig {
            slots: sim.slots,
            packets_per_slot: sim.rate,
            seed: sim_seed.unwrap_or(self.seed_override.unwrap_or(sim.seed)),
            params,
        };
        let metrics = self.module("simulate", simulate_multicast(net, tree, asg, &cfg))?;
        Ok(metrics.csv_row(
            scenario_id,
            &self.algorithm_label(),
            asg.channel_count(),
            params.delta,
        ))
    }

    fn run_shortest_paths(&self, written: &mut Vec<PathBuf>) -> CliResult<()> {
        let sp = self
            .scenario
            .shortest_path
            .as_ref()
            .ok_or_else(|| self.validation("sp", "scenario has no shortest_path section"))?;
        if sp.solvers.is_empty() {
            return Err(self.validation("sp", "shortest_path.solvers is empty"));
        }
        let mut graph: WeightedGraph = if let Some(file) = &sp.graph_file {
            let path = self.base_dir.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| {
                CliError::new(ErrorKind::Io, &path, "sp", e.to_string())
            })?;
            parse_edge_list(&text)
                .map_err(|e| CliError::new(ErrorKind::Parse, &path, "sp", e.to_string()))?
        } else {
            let net = self.realize_network()?;
            let mode = match sp.mode.as_str() {
                "hops" => EdgeWeightMode::Hops,
                "euclidean" => EdgeWeightMode::Euclidean,
                other => {
                    return Err(
                        self.validation("sp", format!("unknown edge weight mode {other:?}"))
                    )
                }
            };
            let goal = sp
                .goal
                .ok_or_else(|| self.validation("sp", "shortest_path.goal is required"))?;
            if goal >= net.node_count() {
                return Err(self.validation(
                    "sp",
                    format!("goal {goal} outside 0..{}", net.node_count()),
                ));
            }
            self.module("sp", mesh_to_weighted(&net, mode, goal))?
        };
        if let Some(source) = sp.source {
            if source >= graph.vertex_count() {
                return Err(self.validation(
                    "sp",
                    format!("source {source} outside 0..{}", graph.vertex_count()),
                ));
            }
            graph.start = source;
        }
        if let Some(goal) = sp.goal {
            if goal >= graph.vertex_count() {
                return Err(self.validation(
                    "sp",
                    format!("goal {goal} outside 0..{}", graph.vertex_count()),
                ));
            }
            graph.goal = goal;
        }
        for solver in &sp.solvers {
            let result: PathResult = match solver.as_str() {
                "dijkstra" => self.module("sp", dijkstra_oracle(&graph))?,
                "pcnn" => self.module("sp", pcnn_shortest_path(&graph))?,
                "dspcnn" => self.module("sp", dspcnn_shortest_path(&graph))?,
                other => {
                    return Err(self.validation("sp", format!("unknown solver {other:?}")))
                }
            };
            self.write(
                &format!("sp-{solver}.txt"),
                &path_record_to_string(&result),
                written,
            )?;
        }
        Ok(())
    }

    fn run_sweep(&self, written: &mut Vec<PathBuf>) -> CliResult<()> {
        let sweep = self
            .scenario
            .sweep
            .as_ref()
            .ok_or_else(|| self.validation("sweep", "scenario has no sweep section"))?;
        if sweep.channels.is_empty() || sweep.seed_count == 0 {
            return Err(self.validation("sweep", "sweep needs channels and seed_count"));
        }
        let gen = self
            .scenario
            .network
            .as_ref()
            .and_then(|n| n.generate.as_ref())
            .ok_or_else(|| {
                self.validation("sweep", "sweep requires a network.generate section")
            })?;
        let tree_alg = self
            .scenario
            .tree
            .as_ref()
            .ok_or_else(|| self.validation("sweep", "sweep requires a tree algorithm"))?;
        if !matches!(tree_alg.as_str(), "lca" | "mcm") {
            return Err(
                self.validation("sweep", format!("unknown tree algorithm {tree_alg:?}"))
            );
        }
        let assign_alg = self
            .scenario
            .assignment
            .as_ref()
            .ok_or_else(|| self.validation("sweep", "sweep requires an assignment algorithm"))?;
        if !matches!(assign_alg.as_str(), "lca" | "ascending" | "heuristic") {
            return Err(self.validation(
                "sweep",
                format!("unknown assignment algorithm {assign_alg:?}"),
            ));
        }
        if self.scenario.simulation.is_none() {
            return Err(self.validation("sweep", "sweep requires a simulation section"));
        }

        let seed_start = self.seed_override.unwrap_or(sweep.seed_start);
        let seeds: Vec<u64> = (seed_start..seed_start + sweep.seed_count).collect();
        // Every per-instance seed (generation, tree randomness, simulation)
        // derives from the instance seed, so rows are independent of sweep
        // execution order and worker count.
        let run_instance = |&seed: &u64| -> CliResult<(Vec<String>, String)> {
            let net = self.module(
                "sweep",
                MeshNetwork::generate(gen.nodes, gen.side, gen.range, gen.receivers, seed),
            )?;
            let levels = self.module("sweep", bfs_levels(&net))?;
            let tm = self.module("sweep", build_tree_mesh(&net, &levels))?;
            let tree = match tree_alg.as_str() {
                "lca" => self.module("sweep", lca_build_tree(&tm, net.receivers(), seed))?,
                _ => self.module("sweep", mcm_build_tree(&tm, net.receivers()))?,
            };
            let scenario_id = format!("{}-s{seed}", self.scenario.name);
            let mut rows = Vec::new();
            for &channels in &sweep.channels {
                let asg = self.assignment_for(&net, &levels, &tree, assign_alg, channels)?;
                let row = self.run_simulation(
                    &net,
                    &tree,
                    &asg,
                    &format!("{scenario_id}-c{channels}"),
                    Some(seed),
                )?;
                rows.push(row);
            }
            let tree_row = format!(
                "{},{},{},{}",
                scenario_id,
                self.algorithm_label(),
                tree.relays().len(),
                tree.node_count()
            );
            Ok((rows, tree_row))
        };

        let results: Vec<CliResult<(Vec<String>, String)>> = if self.jobs == 1 {
            seeds.iter().map(run_instance).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.jobs)
                .build()
                .map_err(|e| self.err(ErrorKind::Io, "sweep", e.to_string()))?;
            pool.install(|| seeds.par_iter().map(run_instance).collect())
        };

        let mut metrics = String::from(METRICS_CSV_HEADER);
        metrics.push('\n');
        let mut trees = String::from(TREES_CSV_HEADER);
        trees.push('\n');
        for result in results {
            let (rows, tree_row) = result?;
            for row in rows {
                metrics.push_str(&row);
                metrics.push('\n');
            }
            trees.push_str(&tree_row);
            trees.push('\n');
        }
        self.write("metrics.csv", &metrics, written)?;
        self.write("trees.csv", &trees, written)
    }
}
