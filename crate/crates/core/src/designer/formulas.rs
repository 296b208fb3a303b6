//! Closed-form steps of the two-layer fat-tree construction.
//!
//! All arithmetic is on integers; the blocking factor is an exact rational.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::units::{ratio_string, BlockingFactor};

/// How an edge switch's ports are divided between nodes and the core layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortSplit {
    pub ports_to_nodes: u64,
    pub ports_to_core: u64,
}

impl PortSplit {
    pub fn resulting_blocking(&self) -> Ratio<u64> {
        Ratio::new(self.ports_to_nodes, self.ports_to_core)
    }
}

/// Port split plus the number of edge switches required for the node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSplit {
    pub ports_to_nodes: u64,
    pub ports_to_core: u64,
    #[serde(with = "ratio_string")]
    pub resulting_blocking: Ratio<u64>,
    pub edge_count: u64,
}

/// Bundle width and number of core switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreStage {
    pub bundle_width: u64,
    pub core_count: u64,
}

impl CoreStage {
    /// Links from one edge switch to core switch `j` (0-based).
    ///
    /// Every core switch but the last receives a full bundle; the last one
    /// takes whatever uplinks remain.
    pub fn links_to_core(&self, uplinks: u64, j: u64) -> u64 {
        debug_assert!(j < self.core_count);
        if j + 1 < self.core_count {
            self.bundle_width
        } else {
            uplinks - (self.core_count - 1) * self.bundle_width
        }
    }
}

/// Largest node-port count `P_En` with `P_En / (P_E - P_En) <= Bl`.
///
/// Returns `None` when the blocking factor is too small to leave a single
/// node port on a switch of this size.
pub fn edge_port_split(edge_ports: u64, bl: BlockingFactor) -> Option<PortSplit> {
    assert!(edge_ports >= 2, "edge switch needs at least two ports");
    let (p, q) = (bl.numer() as u128, bl.denom() as u128);
    let to_nodes = (edge_ports as u128 * p / (p + q)) as u64;
    if to_nodes == 0 {
        return None;
    }
    let to_core = edge_ports - to_nodes;
    assert!(to_core > 0, "finite blocking factor always leaves an uplink");
    Some(PortSplit { ports_to_nodes: to_nodes, ports_to_core: to_core })
}

/// Number of edge switches needed to attach `nodes` at `ports_to_nodes` each.
pub fn edge_count(nodes: u64, ports_to_nodes: u64) -> u64 {
    assert!(ports_to_nodes >= 1);
    nodes.div_ceil(ports_to_nodes)
}

/// Bundle width and core switch count, or `None` when a core switch has
/// fewer ports than there are edge switches.
pub fn core_stage(edge_count: u64, ports_to_core: u64, core_ports: u64) -> Option<CoreStage> {
    if edge_count == 0 || ports_to_core == 0 || core_ports < edge_count {
        return None;
    }
    let bundle_width = (core_ports / edge_count).min(ports_to_core);
    let core_count = ports_to_core.div_ceil(bundle_width);
    debug_assert!(core_count * bundle_width >= ports_to_core);
    debug_assert!((core_count - 1) * bundle_width < ports_to_core);
    Some(CoreStage { bundle_width, core_count })
}

/// Cables for a fully wired fabric; blade nodes reach their switch without cables.
pub fn cable_count(nodes: u64, edge_count: u64, ports_to_core: u64, blade: bool) -> u64 {
    let uplinks = edge_count * ports_to_core;
    if blade {
        uplinks
    } else {
        nodes + uplinks
    }
}

/// Uplinks needed so that `nodes` attached to one switch see at most `bl` blocking.
pub fn uplinks_for(nodes: u64, bl: BlockingFactor) -> u64 {
    (nodes as u128 * bl.denom() as u128).div_ceil(bl.numer() as u128) as u64
}

/// Alternative attachment that spreads nodes evenly over all edge switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformVariant {
    pub nodes_per_edge: u64,
    pub uplinks_per_edge: u64,
    pub stage: CoreStage,
}

/// Even node distribution, kept only when it saves core switches over the
/// maximal-fill baseline and the caller did not ask for expandability.
pub fn uniform_distribution_variant(
    nodes: u64,
    edge_count: u64,
    bl: BlockingFactor,
    core_ports: u64,
    baseline: CoreStage,
    prefer_expandability: bool,
) -> Option<UniformVariant> {
    if prefer_expandability || edge_count == 0 {
        return None;
    }
    let per_edge = nodes.div_ceil(edge_count);
    let uplinks = uplinks_for(per_edge, bl);
    let stage = core_stage(edge_count, uplinks, core_ports)?;
    (stage.core_count < baseline.core_count).then_some(UniformVariant {
        nodes_per_edge: per_edge,
        uplinks_per_edge: uplinks,
        stage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bl(s: &str) -> BlockingFactor {
        s.parse().unwrap()
    }

    #[test]
    fn port_split_examples() {
        let s = edge_port_split(36, bl("1")).unwrap();
        assert_eq!((s.ports_to_nodes, s.ports_to_core), (18, 18));
        assert_eq!(s.resulting_blocking(), Ratio::from_integer(1));
        let s = edge_port_split(36, bl("2")).unwrap();
        assert_eq!((s.ports_to_nodes, s.ports_to_core), (24, 12));
        assert_eq!(s.resulting_blocking(), Ratio::from_integer(2));
        let s = edge_port_split(36, bl("11")).unwrap();
        assert_eq!((s.ports_to_nodes, s.ports_to_core), (33, 3));
        assert_eq!(s.resulting_blocking(), Ratio::from_integer(11));
    }

    #[test]
    fn tiny_blocking_factor_leaves_no_node_port() {
        assert_eq!(edge_port_split(8, bl("1/8")), None);
        assert_eq!(edge_port_split(9, bl("1/8")).unwrap().ports_to_nodes, 1);
    }

    #[test]
    fn edge_count_examples() {
        assert_eq!(edge_count(60, 18), 4);
        assert_eq!(edge_count(1200, 24), 50);
        assert_eq!(edge_count(18, 18), 1);
    }

    #[test]
    fn core_stage_examples() {
        assert_eq!(core_stage(4, 18, 36), Some(CoreStage { bundle_width: 9, core_count: 2 }));
        assert_eq!(core_stage(9, 3, 36), Some(CoreStage { bundle_width: 3, core_count: 1 }));
        assert_eq!(core_stage(14, 16, 90), Some(CoreStage { bundle_width: 6, core_count: 3 }));
        assert_eq!(core_stage(37, 18, 36), None);
    }

    #[test]
    fn last_core_switch_takes_the_remainder() {
        let stage = core_stage(14, 16, 90).unwrap();
        let links: Vec<u64> = (0..3).map(|j| stage.links_to_core(16, j)).collect();
        assert_eq!(links, [6, 6, 4]);
    }

    #[test]
    fn cable_count_examples() {
        assert_eq!(cable_count(60, 4, 18, false), 132);
        assert_eq!(cable_count(224, 14, 16, true), 224);
        assert_eq!(cable_count(0, 0, 0, false), 0);
    }

    #[test]
    fn uplinks_round_up() {
        assert_eq!(uplinks_for(15, bl("1")), 15);
        assert_eq!(uplinks_for(33, bl("11")), 3);
        assert_eq!(uplinks_for(34, bl("11")), 4);
        assert_eq!(uplinks_for(10, bl("3/2")), 7);
    }

    #[test]
    fn uniform_variant_gate() {
        let base = core_stage(4, 18, 36).unwrap();
        // Even spread of 60 nodes over four switches needs the same two cores.
        assert_eq!(uniform_distribution_variant(60, 4, bl("1"), 36, base, false), None);
        // 127 nodes over eight 36-port switches: 16 per switch fit four cores, not five.
        let base = core_stage(8, 18, 36).unwrap();
        assert_eq!(base.core_count, 5);
        let v = uniform_distribution_variant(127, 8, bl("1"), 36, base, false).unwrap();
        assert_eq!(v.nodes_per_edge, 16);
        assert_eq!(v.stage, CoreStage { bundle_width: 4, core_count: 4 });
        assert_eq!(uniform_distribution_variant(127, 8, bl("1"), 36, base, true), None);
    }
}
