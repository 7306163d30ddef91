//! Slotted multicast delivery simulator: per slot the source injects
//! packets, every forwarding node with a backlog attempts one transmission
//! on its send channel, and conflicting concurrent senders are thinned by
//! a seeded coin until no conflicting pair transmits together. Children
//! tuned to the sender's channel all receive in the same slot.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::ChannelAssignment;
use crate::error::{MeshError, Result};
use crate::interference::{links_conflict, InterferenceParams};
use crate::topology::{MeshNetwork, NodeId};
use crate::tree::MulticastTree;

#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub slots: u64,
    /// Packets the source emits per slot.
    pub packets_per_slot: u32,
    pub seed: u64,
    pub params: InterferenceParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimMetrics {
    /// Packets received per receiver.
    pub delivered: BTreeMap<NodeId, u64>,
    /// Bottleneck rate: min over receivers of delivered / slots.
    pub throughput: f64,
    /// Mean slots from source emission to receiver delivery.
    pub avg_delay: f64,
    /// Transmissions suppressed by conflict deferral.
    pub conflict_losses: u64,
}

pub const METRICS_CSV_HEADER: &str =
    "scenario_id,algorithm,C,delta,throughput,avg_delay,conflict_losses";

impl SimMetrics {
    /// One CSV row matching [`METRICS_CSV_HEADER`].
    pub fn csv_row(&self, scenario_id: &str, algorithm: &str, channels: u32, delta: f64) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            scenario_id,
            algorithm,
            channels,
            delta,
            self.throughput,
            self.avg_delay,
            self.conflict_losses
        )
    }
}

/// Runs the slotted simulation. Fails upfront if the assignment violates
/// the link contract anywhere on the tree.
pub fn simulate_multicast(
    net: &MeshNetwork,
    tree: &MulticastTree,
    assignment: &ChannelAssignment,
    cfg: &SimConfig,
) -> Result<SimMetrics> {
    if cfg.slots == 0 {
        return Err(MeshError::InvalidInput("need at least one slot".into()));
    }
    if cfg.packets_per_slot == 0 {
        return Err(MeshError::InvalidInput("packet rate must be positive".into()));
    }
    assignment.validate_link_contract(tree)?;

    let forwarders: Vec<NodeId> = tree.forwarders().into_iter().collect();
    let k = forwarders.len();
    for &f in &forwarders {
        if assignment.send_channel(f).is_none() {
            return Err(MeshError::MissingSendChannel(f));
        }
    }
    // Conflicts depend only on positions and send channels: precompute.
    let mut conflicts = vec![vec![false; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let c = links_conflict(forwarders[i], forwarders[j], assignment, net, &cfg.params);
            conflicts[i][j] = c;
            conflicts[j][i] = c;
        }
    }

    let source_idx = forwarders
        .binary_search(&tree.source())
        .expect("source forwards");
    // Queue per forwarder holding emission slots, FIFO.
    let mut queues: Vec<VecDeque<u64>> = vec![VecDeque::new(); k];
    let index_of: BTreeMap<NodeId, usize> =
        forwarders.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    let mut delivered: BTreeMap<NodeId, u64> =
        tree.receivers().iter().map(|&r| (r, 0)).collect();
    let mut delay_sum = 0u64;
    let mut delay_count = 0u64;
    let mut conflict_losses = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for slot in 0..cfg.slots {
        for _ in 0..cfg.packets_per_slot {
            queues[source_idx].push_back(slot);
        }
        let attempting: Vec<usize> = (0..k).filter(|&i| !queues[i].is_empty()).collect();
        let mut suppressed = vec![false; k];
        for (a, &i) in attempting.iter().enumerate() {
            for &j in &attempting[(a + 1)..] {
                if suppressed[i] || suppressed[j] || !conflicts[i][j] {
                    continue;
                }
                let loser = if rng.gen_range(0..2u32) == 0 { i } else { j };
                suppressed[loser] = true;
                conflict_losses += 1;
            }
        }
        for &i in &attempting {
            if suppressed[i] {
                continue;
            }
            let emitted = queues[i].pop_front().unwrap();
            let sender = forwarders[i];
            let si = assignment.send_channel(sender);
            for &child in tree.children_of(sender) {
                if assignment.receive_channel(child) != si {
                    continue;
                }
                if let Some(count) = delivered.get_mut(&child) {
                    *count += 1;
                    delay_sum += slot - emitted + 1;
                    delay_count += 1;
                }
                if let Some(&ci) = index_of.get(&child) {
                    queues[ci].push_back(emitted);
                }
            }
        }
    }

    let throughput = delivered
        .values()
        .map(|&d| d as f64 / cfg.slots as f64)
        .fold(f64::INFINITY, f64::min);
    let throughput = if throughput.is_finite() { throughput } else { 0.0 };
    let avg_delay = if delay_count > 0 {
        delay_sum as f64 / delay_count as f64
    } else {
        0.0
    };
    Ok(SimMetrics {
        delivered,
        throughput,
        avg_delay,
        conflict_losses,
    })
}
