use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Catalog;
use crate::designer::{design, uplinks_for, DesignError, DesignRequest, FatTreeDesign, FormFactor, NodeSpec};
use crate::units::{BlockingFactor, Money};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("infeasible: no network with at least one node fits in {0} U")]
    NothingFits(u64),
    #[error("current capacity {current} U exceeds target {target} U")]
    Shrinking { current: u64, target: u64 },
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// The largest cluster whose nodes and switches fit in a given space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizedDesign {
    pub capacity_units: u64,
    pub node_count: u64,
    pub edge_count: u64,
    pub core_count: u64,
    pub switch_rack_units: u64,
    pub design: FatTreeDesign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialVariant {
    /// Every switch of the final network installed from the start.
    AllSwitchesUpfront,
    /// All core switches from the start, edge switches as nodes arrive.
    CoreUpfront,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionPhase {
    pub variant: InitialVariant,
    pub nodes: u64,
    pub edge_switches: u64,
    pub core_switches: u64,
    pub rack_units: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionPlan {
    pub current_capacity_units: u64,
    pub target_capacity_units: u64,
    /// What fits today if growth is ignored.
    pub baseline: SizedDesign,
    pub target: SizedDesign,
    pub target_max_nodes: u64,
    pub core_switches_upfront: u64,
    pub initial: Vec<ExpansionPhase>,
    /// Edge switches to add after the core-upfront start, one phase per switch.
    pub edge_install_schedule: Vec<ExpansionPhase>,
    /// Core ports left after the initial core-upfront phase.
    pub spare_core_ports: u64,
}

impl ExpansionPlan {
    pub fn variant(&self, v: InitialVariant) -> &ExpansionPhase {
        self.initial.iter().find(|p| p.variant == v).expect("both variants are always planned")
    }
}

fn request_for(nodes: u64, bl: BlockingFactor, node: &NodeSpec, cable: Money) -> DesignRequest {
    let mut req = DesignRequest::rack_mounted(nodes, bl, cable);
    req.form_factor = FormFactor::RackMounted(*node);
    req.prefer_expandability = true;
    req
}

/// Largest node count whose nodes plus network fit in `capacity_units`.
pub fn size_for_capacity(
    capacity_units: u64,
    catalog: &Catalog,
    bl: BlockingFactor,
    node: &NodeSpec,
    avg_cable_cost: Money,
) -> Result<SizedDesign, ExpansionError> {
    let mut best = None;
    for n in 2..=capacity_units / node.node_rack_units.max(1) {
        let d = match design(&request_for(n, bl, node, avg_cable_cost), catalog) {
            Ok(r) => r.winner,
            Err(DesignError::InsufficientRadix { .. }) => break,
            Err(DesignError::Infeasible { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        if n * node.node_rack_units + d.metrics.rack_units <= capacity_units {
            best = Some(d);
        }
    }
    let d = best.ok_or(ExpansionError::NothingFits(capacity_units))?;
    Ok(SizedDesign {
        capacity_units,
        node_count: d.node_count,
        edge_count: d.edge_count,
        core_count: d.core_count,
        switch_rack_units: d.metrics.rack_units,
        design: d,
    })
}

/// Sizes the network for the target space and works out how to populate
/// the current space without later rewiring the core.
pub fn expansion_plan(
    current_capacity_units: u64,
    target_capacity_units: u64,
    catalog: &Catalog,
    bl: BlockingFactor,
    node: &NodeSpec,
    avg_cable_cost: Money,
) -> Result<ExpansionPlan, ExpansionError> {
    if current_capacity_units > target_capacity_units {
        return Err(ExpansionError::Shrinking { current: current_capacity_units, target: target_capacity_units });
    }
    let baseline = size_for_capacity(current_capacity_units, catalog, bl, node, avg_cable_cost)?;
    let target = size_for_capacity(target_capacity_units, catalog, bl, node, avg_cable_cost)?;
    let t = &target.design;
    let node_u = node.node_rack_units.max(1);
    let edge_u = t.edge_config.rack_units;
    let core_u = t.core_config.as_ref().map_or(0, |c| c.rack_units) * t.core_count;
    let per_edge = t.split.map_or(t.nodes_per_edge, |s| s.ports_to_nodes);

    let all_up = ExpansionPhase {
        variant: InitialVariant::AllSwitchesUpfront,
        nodes: (current_capacity_units.saturating_sub(target.switch_rack_units) / node_u).min(target.node_count),
        edge_switches: target.edge_count,
        core_switches: target.core_count,
        rack_units: target.switch_rack_units,
    };
    let core_up = (1..=target.edge_count)
        .map(|e| {
            let space = current_capacity_units.saturating_sub(core_u + e * edge_u) / node_u;
            (e, space.min(e * per_edge).min(target.node_count))
        })
        // Most nodes, then fewest switches.
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(e, nodes)| ExpansionPhase {
            variant: InitialVariant::CoreUpfront,
            nodes,
            edge_switches: e,
            core_switches: target.core_count,
            rack_units: core_u + e * edge_u,
        })
        .expect("target has at least one edge switch");

    let mut schedule = Vec::new();
    for e in core_up.edge_switches + 1..=target.edge_count {
        let nodes = (e * per_edge).min(target.node_count);
        schedule.push(ExpansionPhase {
            variant: InitialVariant::CoreUpfront,
            nodes,
            edge_switches: e,
            core_switches: target.core_count,
            rack_units: core_u + e * edge_u,
        });
    }
    let core_ports = t.core_config.as_ref().map_or(0, |c| c.ports) * t.core_count;
    let spare_core_ports = core_ports.saturating_sub(core_up.edge_switches * t.uplinks_per_edge);

    Ok(ExpansionPlan {
        current_capacity_units,
        target_capacity_units,
        target_max_nodes: target.node_count,
        core_switches_upfront: target.core_count,
        initial: vec![all_up, core_up],
        edge_install_schedule: schedule,
        spare_core_ports,
        baseline,
        target,
    })
}

/// Growth of an already built network without touching its core layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionAudit {
    pub extra_capacity_units: u64,
    pub spare_edge_ports: u64,
    pub spare_core_ports: u64,
    pub nodes_via_spare_edge_ports: u64,
    pub new_edge_switches: u64,
    pub nodes_via_new_edge_switches: u64,
    pub max_added_nodes: u64,
    pub total_nodes: u64,
    pub wasted_units: u64,
}

/// Nodes that can be added in `extra_capacity_units` using free edge ports
/// first, then new edge switches hung off free core ports.
pub fn expansion_audit(design: &FatTreeDesign, extra_capacity_units: u64, node: &NodeSpec, bl: BlockingFactor) -> ExpansionAudit {
    let node_u = node.node_rack_units.max(1);
    let per_edge = design.split.map_or(design.nodes_per_edge, |s| s.ports_to_nodes);
    let spare_edge: u64 = design.node_distribution().iter().map(|&n| per_edge.saturating_sub(n)).sum();
    let mut spare_core = match (&design.core_config, design.core) {
        (Some(c), Some(stage)) => (c.ports * stage.core_count).saturating_sub(design.edge_count * design.uplinks_per_edge),
        _ => 0,
    };
    let spare_core_ports = spare_core;
    let mut space = extra_capacity_units;
    let via_edge = spare_edge.min(space / node_u);
    space -= via_edge * node_u;

    let edge_u = design.edge_config.rack_units;
    let mut new_switches = 0;
    let mut via_new = 0;
    if design.core.is_some() {
        while space > edge_u {
            // Largest node count whose uplinks the free core ports can carry.
            let by_core = (0..=per_edge).rev().find(|&m| uplinks_for(m, bl) <= spare_core).unwrap_or(0);
            let m = per_edge.min(by_core).min((space - edge_u) / node_u);
            if m == 0 {
                break;
            }
            spare_core -= uplinks_for(m, bl);
            space -= edge_u + m * node_u;
            new_switches += 1;
            via_new += m;
        }
    }
    let added = via_edge + via_new;
    ExpansionAudit {
        extra_capacity_units,
        spare_edge_ports: spare_edge,
        spare_core_ports,
        nodes_via_spare_edge_ports: via_edge,
        new_edge_switches: new_switches,
        nodes_via_new_edge_switches: via_new,
        max_added_nodes: added,
        total_nodes: design.node_count + added,
        wasted_units: space,
    }
}
