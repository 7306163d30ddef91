//! Channel assignment over a multicast tree: each tree node gets a receive
//! interface channel (RI) and forwarding nodes get a send interface channel
//! (SI). The link contract ties a child's RI to its parent's SI.

use std::collections::BTreeMap;

use crate::error::{MeshError, Result};
use crate::topology::NodeId;
use crate::tree::MulticastTree;

/// Channel numbers are `0..channel_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelAssignment {
    channel_count: u32,
    receive: BTreeMap<NodeId, u32>,
    send: BTreeMap<NodeId, u32>,
}

impl ChannelAssignment {
    pub fn new(channel_count: u32) -> Self {
        ChannelAssignment {
            channel_count,
            receive: BTreeMap::new(),
            send: BTreeMap::new(),
        }
    }

    pub fn channel_count(&self) -> u32 {
        self.channel_count
    }

    pub fn set_receive(&mut self, v: NodeId, channel: u32) {
        debug_assert!(channel < self.channel_count);
        self.receive.insert(v, channel);
    }

    pub fn set_send(&mut self, v: NodeId, channel: u32) {
        debug_assert!(channel < self.channel_count);
        self.send.insert(v, channel);
    }

    /// Receive interface channel of `v`, if assigned. The source has none.
    pub fn receive_channel(&self, v: NodeId) -> Option<u32> {
        self.receive.get(&v).copied()
    }

    /// Send interface channel of `v`, if assigned. Leaves have none.
    pub fn send_channel(&self, v: NodeId) -> Option<u32> {
        self.send.get(&v).copied()
    }

    pub fn receive_channels(&self) -> &BTreeMap<NodeId, u32> {
        &self.receive
    }

    pub fn send_channels(&self) -> &BTreeMap<NodeId, u32> {
        &self.send
    }

    /// Checks the link contract over every tree edge: the child listens on
    /// the channel its parent sends on.
    pub fn validate_link_contract(&self, tree: &MulticastTree) -> Result<()> {
        for (parent, child) in tree.edges() {
            let parent_si = self.send_channel(parent);
            let child_ri = self.receive_channel(child);
            if parent_si.is_none() || parent_si != child_ri {
                return Err(MeshError::ContractViolation {
                    parent,
                    child,
                    parent_si,
                    child_ri,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn chain() -> MulticastTree {
        MulticastTree::new(0, BTreeSet::from([2]), BTreeMap::from([(1, 0), (2, 1)])).unwrap()
    }

    #[test]
    fn contract_holds_when_child_listens_on_parent_send() {
        let tree = chain();
        let mut asg = ChannelAssignment::new(3);
        asg.set_send(0, 0);
        asg.set_receive(1, 0);
        asg.set_send(1, 1);
        asg.set_receive(2, 1);
        assert!(asg.validate_link_contract(&tree).is_ok());
    }

    #[test]
    fn contract_violation_reports_the_edge() {
        let tree = chain();
        let mut asg = ChannelAssignment::new(3);
        asg.set_send(0, 0);
        asg.set_receive(1, 0);
        asg.set_send(1, 1);
        asg.set_receive(2, 2);
        match asg.validate_link_contract(&tree) {
            Err(MeshError::ContractViolation {
                parent,
                child,
                parent_si,
                child_ri,
            }) => {
                assert_eq!((parent, child), (1, 2));
                assert_eq!(parent_si, Some(1));
                assert_eq!(child_ri, Some(2));
            }
            other => panic!("expected ContractViolation, got {other:?}"),
        }
    }

    #[test]
    fn missing_parent_send_violates_contract() {
        let tree = chain();
        let mut asg = ChannelAssignment::new(3);
        asg.set_send(0, 0);
        asg.set_receive(1, 0);
        asg.set_receive(2, 1);
        assert!(asg.validate_link_contract(&tree).is_err());
    }
}
