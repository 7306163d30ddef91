//! Interference model for multi-channel senders: the interference range of
//! a transmission decays geometrically with channel separation, and two
//! links conflict when the senders sit closer than the interference reach
//! plus the communication range.

use crate::assignment::ChannelAssignment;
use crate::topology::{MeshNetwork, NodeId};

#[derive(Debug, Clone, Copy)]
pub struct InterferenceParams {
    /// Communication range R of every radio.
    pub range: f64,
    /// Decay ratio delta in (0, 1]: each unit of channel separation scales
    /// the interference range by delta.
    pub delta: f64,
}

impl InterferenceParams {
    pub fn new(range: f64, delta: f64) -> Self {
        InterferenceParams { range, delta }
    }
}

/// Interference range between two senders on channels `ch_a` and `ch_b`:
/// `R * delta^|ch_a - ch_b|`. Symmetric in its channel arguments; equal
/// channels give the full range R.
pub fn interference_range(ch_a: u32, ch_b: u32, params: &InterferenceParams) -> f64 {
    let separation = ch_a.abs_diff(ch_b);
    params.range * params.delta.powi(separation as i32)
}

/// Sum of squared interference ranges between `node`'s send channel and the
/// send channels of the given neighbor nodes. Neighbors without a send
/// channel contribute nothing.
pub fn pairwise_objective(
    node: NodeId,
    assignment: &ChannelAssignment,
    neighbors: &[NodeId],
    params: &InterferenceParams,
) -> f64 {
    let Some(own) = assignment.send_channel(node) else {
        return 0.0;
    };
    objective_for_channel(own, assignment, neighbors, params)
}

/// The same sum evaluated for a hypothetical own channel, used when scoring
/// candidate channels before committing one.
pub fn objective_for_channel(
    channel: u32,
    assignment: &ChannelAssignment,
    neighbors: &[NodeId],
    params: &InterferenceParams,
) -> f64 {
    neighbors
        .iter()
        .filter_map(|&v| assignment.send_channel(v))
        .map(|ch| interference_range(channel, ch, params).powi(2))
        .sum()
}

/// Whether two simultaneously transmitting senders conflict: true when the
/// distance between them is strictly below the interference range for their
/// channel separation plus the communication range (the receiver of the
/// closer link can sit inside the interferer's reach).
pub fn links_conflict(
    sender_a: NodeId,
    sender_b: NodeId,
    assignment: &ChannelAssignment,
    net: &MeshNetwork,
    params: &InterferenceParams,
) -> bool {
    let (Some(ch_a), Some(ch_b)) = (
        assignment.send_channel(sender_a),
        assignment.send_channel(sender_b),
    ) else {
        return false;
    };
    let threshold = interference_range(ch_a, ch_b, params) + params.range;
    net.distance(sender_a, sender_b) < threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Position;
    use std::collections::BTreeSet;

    #[test]
    fn same_channel_interference_is_full_range() {
        let p = InterferenceParams::new(250.0, 0.5);
        assert!((interference_range(2, 2, &p) - 250.0).abs() < 1e-12);
    }

    #[test]
    fn separation_two_quarters_the_range() {
        let p = InterferenceParams::new(250.0, 0.5);
        assert!((interference_range(0, 2, &p) - 62.5).abs() < 1e-12);
    }

    #[test]
    fn decay_ratio_other_than_half() {
        let p = InterferenceParams::new(1000.0, 0.4);
        assert!((interference_range(5, 3, &p) - 160.0).abs() < 1e-12);
    }

    #[test]
    fn interference_is_symmetric_and_decreasing_in_separation() {
        let p = InterferenceParams::new(300.0, 0.7);
        let mut prev = f64::INFINITY;
        for sep in 0..=10u32 {
            let ir = interference_range(0, sep, &p);
            assert_eq!(ir, interference_range(sep, 0, &p));
            assert!(ir < prev, "not strictly decreasing at separation {sep}");
            prev = ir;
        }
    }

    #[test]
    fn objective_sums_squared_ranges_of_assigned_neighbors() {
        let p = InterferenceParams::new(10.0, 0.5);
        let mut asg = ChannelAssignment::new(4);
        asg.set_send(1, 0);
        asg.set_send(2, 1);
        // node 3 has no send channel: ignored
        let got = objective_for_channel(0, &asg, &[1, 2, 3], &p);
        let want = (10.0f64).powi(2) + (5.0f64).powi(2);
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn conflict_threshold_is_interference_plus_range() {
        // Two senders 1.4R apart, channel separation 2, delta 0.5:
        // threshold = 0.25R + R = 1.25R < 1.4R, so no conflict.
        let r = 100.0;
        let positions = vec![
            Position { x: 0.0, y: 0.0 },
            Position { x: 1.4 * r, y: 0.0 },
        ];
        let net = MeshNetwork::with_explicit_edges(
            positions,
            r,
            0,
            BTreeSet::new(),
            &[(0, 1)],
        )
        .unwrap();
        let p = InterferenceParams::new(r, 0.5);
        let mut asg = ChannelAssignment::new(4);
        asg.set_send(0, 0);
        asg.set_send(1, 2);
        assert!(!links_conflict(0, 1, &asg, &net, &p));
        // Same channels: threshold 2R > 1.4R, conflict.
        asg.set_send(1, 0);
        assert!(links_conflict(0, 1, &asg, &net, &p));
    }

    #[test]
    fn nodes_without_send_channels_never_conflict() {
        let positions = vec![Position { x: 0.0, y: 0.0 }, Position { x: 1.0, y: 0.0 }];
        let net =
            MeshNetwork::with_explicit_edges(positions, 10.0, 0, BTreeSet::new(), &[(0, 1)])
                .unwrap();
        let p = InterferenceParams::new(10.0, 0.5);
        let asg = ChannelAssignment::new(4);
        assert!(!links_conflict(0, 1, &asg, &net, &p));
    }
}
