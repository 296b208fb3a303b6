//! Fat-tree synthesis: trivial cases, the edge x core search, constraint
//! filtering and deterministic selection of the optimum.

pub mod constraints;
pub mod formulas;
pub mod objective;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, SwitchConfig};
use crate::units::{BlockingFactor, Kilograms, Money, Watts};

pub use constraints::{check_constraints, ConstraintKind, ConstraintSet, Violation};
pub use formulas::{
    cable_count, core_stage, edge_count, edge_port_split, uniform_distribution_variant, uplinks_for,
    CoreStage, EdgeSplit, PortSplit, UniformVariant,
};
pub use objective::{Objective, TotalCost, WeightedCost};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BladeSpec {
    pub enclosure_capacity: u64,
    pub enclosure_cost: Money,
    pub embedded_edge_switch_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass_through_cost: Option<Money>,
}

/// Physical characteristics of one rack-mounted compute node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub node_rack_units: u64,
    #[serde(default)]
    pub node_power: Watts,
    #[serde(default)]
    pub node_weight: Kilograms,
}

impl Default for NodeSpec {
    fn default() -> NodeSpec {
        NodeSpec { node_rack_units: 1, node_power: Watts::ZERO, node_weight: Kilograms::ZERO }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormFactor {
    Blade(BladeSpec),
    RackMounted(NodeSpec),
}

/// The problem statement handed to [`design`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignRequest {
    pub node_count: u64,
    pub blocking_factor: BlockingFactor,
    pub form_factor: FormFactor,
    pub avg_cable_cost: Money,
    #[serde(default, skip_serializing_if = "ConstraintSet::is_empty")]
    pub constraints: ConstraintSet,
    #[serde(default)]
    pub prefer_expandability: bool,
    /// Price of one compute node, used only for whole-cluster totals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_cost: Option<Money>,
}

impl DesignRequest {
    pub fn rack_mounted(node_count: u64, blocking_factor: BlockingFactor, avg_cable_cost: Money) -> DesignRequest {
        DesignRequest {
            node_count,
            blocking_factor,
            form_factor: FormFactor::RackMounted(NodeSpec::default()),
            avg_cable_cost,
            constraints: ConstraintSet::default(),
            prefer_expandability: false,
            node_cost: None,
        }
    }

    pub fn blade(&self) -> Option<&BladeSpec> {
        match &self.form_factor {
            FormFactor::Blade(b) => Some(b),
            FormFactor::RackMounted(_) => None,
        }
    }

    pub fn is_blade(&self) -> bool {
        self.blade().is_some()
    }

    pub fn validate(&self) -> Result<(), DesignError> {
        let bad = |m: &str| Err(DesignError::InvalidRequest(m.to_string()));
        if self.node_count < 2 {
            return bad("node_count must be at least 2");
        }
        if self.avg_cable_cost < Money::ZERO {
            return bad("avg_cable_cost must not be negative");
        }
        match &self.form_factor {
            FormFactor::Blade(b) => {
                if b.enclosure_capacity < 1 {
                    return bad("enclosure_capacity must be at least 1");
                }
                if b.enclosure_cost < Money::ZERO || b.pass_through_cost.is_some_and(|c| c < Money::ZERO) {
                    return bad("blade costs must not be negative");
                }
            }
            FormFactor::RackMounted(n) => {
                if n.node_rack_units < 1 {
                    return bad("node_rack_units must be at least 1");
                }
                if n.node_power < Watts::ZERO || n.node_weight < Kilograms::ZERO {
                    return bad("node power and weight must not be negative");
                }
            }
        }
        let c = &self.constraints;
        if c.max_network_power.is_some_and(|p| p < Watts::ZERO)
            || c.max_network_cost.is_some_and(|m| m < Money::ZERO)
        {
            return bad("constraint values must not be negative");
        }
        Ok(())
    }

    fn enclosures(&self) -> u64 {
        self.blade().map_or(0, |b| self.node_count.div_ceil(b.enclosure_capacity))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    FatTree,
    Star,
    DirectConnect,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::FatTree => "fat_tree",
            TopologyKind::Star => "star",
            TopologyKind::DirectConnect => "direct_connect",
        })
    }
}

/// Aggregate totals of a design's network equipment and cabling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkMetrics {
    pub switch_cost: Money,
    pub cable_cost: Money,
    pub cost: Money,
    pub power: Watts,
    pub rack_units: u64,
    pub weight: Kilograms,
    pub switch_count: u64,
    pub cable_count: u64,
}

/// A solved network design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatTreeDesign {
    pub kind: TopologyKind,
    pub node_count: u64,
    pub edge_config: SwitchConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub core_config: Option<SwitchConfig>,
    pub edge_count: u64,
    pub core_count: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split: Option<EdgeSplit>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub core: Option<CoreStage>,
    /// Most nodes attached to any single edge switch.
    pub nodes_per_edge: u64,
    /// Wired uplinks (or cross links) per edge switch.
    pub uplinks_per_edge: u64,
    pub pass_through_panels: u64,
    pub cable_count: u64,
    pub objective: Money,
    pub metrics: NetworkMetrics,
    pub uniform_distribution: bool,
    pub max_supported_nodes: u64,
    pub spare_core_ports: u64,
}

impl FatTreeDesign {
    pub fn edge_label(&self) -> String {
        self.edge_config.label()
    }

    pub fn core_label(&self) -> Option<String> {
        self.core_config.as_ref().map(SwitchConfig::label)
    }

    pub fn total_switches(&self) -> u64 {
        self.edge_count + self.core_count
    }

    pub fn bundle_width(&self) -> Option<u64> {
        self.core.map(|c| c.bundle_width)
    }

    /// Nodes attached to each edge switch, in switch order.
    pub fn node_distribution(&self) -> Vec<u64> {
        let e = self.edge_count;
        if e == 0 {
            return Vec::new();
        }
        if self.uniform_distribution {
            let (base, extra) = (self.node_count / e, self.node_count % e);
            return (0..e).map(|i| base + u64::from(i < extra)).collect();
        }
        let mut left = self.node_count;
        (0..e)
            .map(|_| {
                let n = left.min(self.nodes_per_edge);
                left -= n;
                n
            })
            .collect()
    }

    /// Links between edge switch `i` (rows) and core switch `j` (columns).
    pub fn wiring_matrix(&self) -> Vec<Vec<u64>> {
        match self.core {
            Some(stage) => {
                let row: Vec<u64> = (0..stage.core_count)
                    .map(|j| stage.links_to_core(self.uplinks_per_edge, j))
                    .collect();
                vec![row; self.edge_count as usize]
            }
            None => Vec::new(),
        }
    }

    pub fn summary(&self) -> String {
        match &self.core_config {
            Some(core) => format!(
                "{} {}x{} + {}x{}{}",
                self.kind,
                self.edge_count,
                self.edge_label(),
                self.core_count,
                core.label(),
                if self.uniform_distribution { " (uniform)" } else { "" }
            ),
            None if self.pass_through_panels > 0 => format!(
                "{} {}x{} + {} pass-through",
                self.kind,
                self.edge_count,
                self.edge_label(),
                self.pass_through_panels
            ),
            None => format!("{} {}x{}", self.kind, self.edge_count, self.edge_label()),
        }
    }
}

/// Whole-cluster acquisition cost: network, nodes and blade enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterCost {
    pub network: Money,
    pub nodes: Money,
    pub enclosures: Money,
    pub total: Money,
}

pub fn cluster_cost(design: &FatTreeDesign, request: &DesignRequest) -> Option<ClusterCost> {
    let node_cost = request.node_cost?;
    let nodes = node_cost * request.node_count;
    let enclosures = request
        .blade()
        .map_or(Money::ZERO, |b| b.enclosure_cost * request.enclosures());
    let network = design.metrics.cost;
    Some(ClusterCost { network, nodes, enclosures, total: network + nodes + enclosures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub summary: String,
    pub objective: Money,
    pub violations: Vec<Violation>,
}

/// Result of a design run: the optimum plus every feasible alternative, ranked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub node_count: u64,
    pub blocking_factor: BlockingFactor,
    pub currency: String,
    /// Best objective per case; absent when the case does not apply.
    pub direct_connect_objective: Option<Money>,
    pub star_objective: Option<Money>,
    pub fat_tree_objective: Option<Money>,
    pub winner: FatTreeDesign,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cluster_cost: Option<ClusterCost>,
    pub candidates: Vec<FatTreeDesign>,
    pub rejected: Vec<RejectedCandidate>,
}

impl DesignReport {
    /// Copy of the report listing at most `top` ranked candidates.
    pub fn truncated(&self, top: usize) -> DesignReport {
        let mut r = self.clone();
        r.candidates.truncate(top.max(1));
        r
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("unknown switch `{0}`")]
    UnknownSwitch(String),
    #[error(
        "insufficient radix: {requested} nodes requested, largest achievable with this catalog is {largest_achievable}"
    )]
    InsufficientRadix { requested: u64, largest_achievable: u64 },
    #[error("infeasible: no candidate satisfies the constraints ({})", join_violations(.binding))]
    Infeasible { binding: Vec<Violation> },
}

impl DesignError {
    /// True for outcomes that are a property of the problem rather than bad input.
    pub fn is_infeasible(&self) -> bool {
        matches!(self, DesignError::InsufficientRadix { .. } | DesignError::Infeasible { .. })
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Everything needed to price a candidate before the objective is applied.
struct Draft<'a> {
    kind: TopologyKind,
    edge: &'a SwitchConfig,
    edge_count: u64,
    core: Option<(&'a SwitchConfig, CoreStage)>,
    split: Option<EdgeSplit>,
    nodes_per_edge: u64,
    uplinks_per_edge: u64,
    pass_through_panels: u64,
    cable_count: u64,
    uniform: bool,
    max_supported_nodes: u64,
    spare_core_ports: u64,
}

impl Draft<'_> {
    fn finish(self, request: &DesignRequest, objective: &dyn Objective) -> FatTreeDesign {
        let pass_through_cost = request
            .blade()
            .and_then(|b| b.pass_through_cost)
            .unwrap_or(Money::ZERO);
        let (core_cfg, core_count) = match self.core {
            Some((cfg, stage)) => (Some(cfg), stage.core_count),
            None => (None, 0),
        };
        let core_cost = core_cfg.map_or(Money::ZERO, |c| c.cost * core_count);
        let switch_cost =
            self.edge.cost * self.edge_count + core_cost + pass_through_cost * self.pass_through_panels;
        let cable_cost = request.avg_cable_cost * self.cable_count;
        let metrics = NetworkMetrics {
            switch_cost,
            cable_cost,
            cost: switch_cost + cable_cost,
            power: self.edge.power * self.edge_count + core_cfg.map_or(Watts::ZERO, |c| c.power * core_count),
            rack_units: self.edge.rack_units * self.edge_count
                + core_cfg.map_or(0, |c| c.rack_units * core_count),
            weight: self.edge.weight * self.edge_count
                + core_cfg.map_or(Kilograms::ZERO, |c| c.weight * core_count),
            switch_count: self.edge_count + core_count,
            cable_count: self.cable_count,
        };
        FatTreeDesign {
            kind: self.kind,
            node_count: request.node_count,
            edge_config: self.edge.clone(),
            core_config: core_cfg.cloned(),
            edge_count: self.edge_count,
            core_count,
            split: self.split,
            core: self.core.map(|(_, s)| s),
            nodes_per_edge: self.nodes_per_edge,
            uplinks_per_edge: self.uplinks_per_edge,
            pass_through_panels: self.pass_through_panels,
            cable_count: self.cable_count,
            objective: objective.evaluate(&metrics),
            metrics,
            uniform_distribution: self.uniform,
            max_supported_nodes: self.max_supported_nodes,
            spare_core_ports: self.spare_core_ports,
        }
    }
}

/// Node-facing ports usable on an edge switch; blade switches are further
/// capped by the number of blades in their enclosure.
fn effective_split(request: &DesignRequest, edge: &SwitchConfig) -> Option<PortSplit> {
    let split = edge_port_split(edge.ports, request.blocking_factor)?;
    match request.blade() {
        Some(b) if b.enclosure_capacity < split.ports_to_nodes => {
            let to_nodes = b.enclosure_capacity;
            Some(PortSplit { ports_to_nodes: to_nodes, ports_to_core: edge.ports - to_nodes })
        }
        _ => Some(split),
    }
}

fn fat_tree_drafts<'a>(
    request: &DesignRequest,
    edge: &'a SwitchConfig,
    core: &'a SwitchConfig,
) -> Vec<Draft<'a>> {
    let Some(split) = effective_split(request, edge) else {
        return Vec::new();
    };
    let n = request.node_count;
    let e = edge_count(n, split.ports_to_nodes);
    let Some(stage) = core_stage(e, split.ports_to_core, core.ports) else {
        return Vec::new();
    };
    let blade = request.is_blade();
    let edge_split = EdgeSplit {
        ports_to_nodes: split.ports_to_nodes,
        ports_to_core: split.ports_to_core,
        resulting_blocking: split.resulting_blocking(),
        edge_count: e,
    };
    let spare = |uplinks: u64, stage: CoreStage| {
        stage.core_count * (core.ports + core.expandable_ports) - e * uplinks
    };
    let mut drafts = vec![Draft {
        kind: TopologyKind::FatTree,
        edge,
        edge_count: e,
        core: Some((core, stage)),
        split: Some(edge_split),
        nodes_per_edge: split.ports_to_nodes,
        uplinks_per_edge: split.ports_to_core,
        pass_through_panels: 0,
        cable_count: cable_count(n, e, split.ports_to_core, blade),
        uniform: false,
        max_supported_nodes: core.ports * split.ports_to_nodes,
        spare_core_ports: spare(split.ports_to_core, stage),
    }];
    let variant = uniform_distribution_variant(
        n,
        e,
        request.blocking_factor,
        core.ports,
        stage,
        request.prefer_expandability,
    );
    if let Some(v) = variant {
        drafts.push(Draft {
            kind: TopologyKind::FatTree,
            edge,
            edge_count: e,
            core: Some((core, v.stage)),
            split: Some(edge_split),
            nodes_per_edge: v.nodes_per_edge,
            uplinks_per_edge: v.uplinks_per_edge,
            pass_through_panels: 0,
            cable_count: cable_count(n, e, v.uplinks_per_edge, blade),
            uniform: true,
            max_supported_nodes: core.ports * split.ports_to_nodes,
            spare_core_ports: spare(v.uplinks_per_edge, v.stage),
        });
    }
    drafts
}

fn star_drafts<'a>(request: &DesignRequest, catalog: &'a Catalog) -> Vec<Draft<'a>> {
    let n = request.node_count;
    let star = |sw: &'a SwitchConfig, pass_through_panels: u64, cables: u64, max: u64| Draft {
        kind: TopologyKind::Star,
        edge: sw,
        edge_count: 1,
        core: None,
        split: None,
        nodes_per_edge: n,
        uplinks_per_edge: 0,
        pass_through_panels,
        cable_count: cables,
        uniform: false,
        max_supported_nodes: max,
        spare_core_ports: sw.ports + sw.expandable_ports - n,
    };
    match request.blade() {
        None => catalog
            .configs()
            .iter()
            .filter(|sw| sw.ports >= n)
            .map(|sw| star(sw, 0, n, sw.ports))
            .collect(),
        Some(b) => {
            let mut out = Vec::new();
            // One enclosure: its embedded switch already reaches every blade.
            if n <= b.enclosure_capacity {
                if let Some(sw) = catalog.find(&b.embedded_edge_switch_id) {
                    out.push(star(sw, 0, 0, b.enclosure_capacity.min(sw.ports)));
                }
            }
            // Otherwise blades reach an external switch through pass-through panels.
            if b.pass_through_cost.is_some() {
                let panels = request.enclosures();
                out.extend(
                    catalog
                        .configs()
                        .iter()
                        .filter(|sw| sw.ports >= n && sw.label() != b.embedded_edge_switch_id)
                        .map(|sw| star(sw, panels, n, sw.ports)),
                );
            }
            out
        }
    }
}

fn direct_connect_drafts<'a>(request: &DesignRequest, catalog: &'a Catalog) -> Vec<Draft<'a>> {
    let Some(b) = request.blade() else {
        return Vec::new();
    };
    let Some(sw) = catalog.find(&b.embedded_edge_switch_id) else {
        return Vec::new();
    };
    let n = request.node_count;
    let cap = b.enclosure_capacity;
    if !(n > cap && n <= 2 * cap) || sw.ports <= cap {
        return Vec::new();
    }
    let mut out = Vec::new();
    let cross_links = sw.ports - cap;
    let bl = request.blocking_factor;
    // The cross links carry each enclosure's traffic; they must meet the blocking factor.
    if uplinks_for(cap, bl) <= cross_links {
        out.push(Draft {
            kind: TopologyKind::DirectConnect,
            edge: sw,
            edge_count: 2,
            core: None,
            split: None,
            nodes_per_edge: cap,
            uplinks_per_edge: cross_links,
            pass_through_panels: 0,
            cable_count: cross_links,
            uniform: false,
            max_supported_nodes: 2 * cap,
            spare_core_ports: 0,
        });
    }
    if b.pass_through_cost.is_some() && n <= sw.ports {
        out.push(Draft {
            kind: TopologyKind::DirectConnect,
            edge: sw,
            edge_count: 1,
            core: None,
            split: None,
            nodes_per_edge: n,
            uplinks_per_edge: 0,
            pass_through_panels: 1,
            cable_count: n - cap,
            uniform: false,
            max_supported_nodes: sw.ports.min(2 * cap),
            spare_core_ports: 0,
        });
    }
    out
}

fn edge_candidates<'a>(request: &DesignRequest, catalog: &'a Catalog) -> Result<Vec<&'a SwitchConfig>, DesignError> {
    match request.blade() {
        Some(b) => catalog
            .find(&b.embedded_edge_switch_id)
            .map(|sw| vec![sw])
            .ok_or_else(|| DesignError::UnknownSwitch(b.embedded_edge_switch_id.clone())),
        None => Ok(catalog.edge_set().collect()),
    }
}

/// Total order used for ranking: objective, then fewer switches, fewer rack
/// units, then switch labels.
pub fn rank_order(a: &FatTreeDesign, b: &FatTreeDesign) -> Ordering {
    a.objective
        .cmp(&b.objective)
        .then(a.total_switches().cmp(&b.total_switches()))
        .then(a.metrics.rack_units.cmp(&b.metrics.rack_units))
        .then_with(|| a.edge_label().cmp(&b.edge_label()))
        .then_with(|| a.core_label().cmp(&b.core_label()))
        .then(a.kind.cmp(&b.kind))
        .then(a.uniform_distribution.cmp(&b.uniform_distribution))
        .then(a.pass_through_panels.cmp(&b.pass_through_panels))
}

fn best_passing(mut designs: Vec<FatTreeDesign>, constraints: &ConstraintSet) -> Option<FatTreeDesign> {
    designs.retain(|d| check_constraints(d, constraints).is_ok());
    designs.into_iter().min_by(rank_order)
}

/// Two blade enclosures wired switch-to-switch (or through one pass-through panel).
pub fn trivial_direct_connect(request: &DesignRequest, catalog: &Catalog) -> Option<FatTreeDesign> {
    let designs = direct_connect_drafts(request, catalog)
        .into_iter()
        .map(|d| d.finish(request, &TotalCost))
        .collect();
    best_passing(designs, &request.constraints)
}

/// A single switch with at least as many ports as nodes.
pub fn trivial_star(request: &DesignRequest, catalog: &Catalog) -> Option<FatTreeDesign> {
    let mut designs: Vec<FatTreeDesign> = star_drafts(request, catalog)
        .into_iter()
        .map(|d| d.finish(request, &TotalCost))
        .collect();
    designs.retain(|d| check_constraints(d, &request.constraints).is_ok());
    designs.into_iter().min_by(|a, b| {
        a.objective
            .cmp(&b.objective)
            .then(a.edge_config.ports.cmp(&b.edge_config.ports))
            .then_with(|| a.edge_label().cmp(&b.edge_label()))
    })
}

pub fn evaluate_objective(candidate: &FatTreeDesign, objective: &dyn Objective) -> Money {
    objective.evaluate(&candidate.metrics)
}

/// Designs the cost-optimal network for `request`.
pub fn design(request: &DesignRequest, catalog: &Catalog) -> Result<DesignReport, DesignError> {
    design_with(request, catalog, &TotalCost)
}

pub fn design_with(
    request: &DesignRequest,
    catalog: &Catalog,
    objective: &dyn Objective,
) -> Result<DesignReport, DesignError> {
    request.validate()?;
    let edges = edge_candidates(request, catalog)?;

    let mut drafts = direct_connect_drafts(request, catalog);
    drafts.extend(star_drafts(request, catalog));
    for edge in &edges {
        for core in catalog.core_set() {
            drafts.extend(fat_tree_drafts(request, edge, core));
        }
    }
    if drafts.is_empty() {
        return Err(DesignError::InsufficientRadix {
            requested: request.node_count,
            largest_achievable: largest_achievable(request, catalog, &edges),
        });
    }

    let mut feasible = Vec::new();
    let mut rejected = Vec::new();
    for d in drafts {
        let design = d.finish(request, objective);
        match check_constraints(&design, &request.constraints) {
            Ok(()) => feasible.push(design),
            Err(violations) => rejected.push((design, violations)),
        }
    }
    rejected.sort_by(|a, b| rank_order(&a.0, &b.0));
    if feasible.is_empty() {
        let binding = constraints::binding_constraints(rejected.iter().flat_map(|(_, v)| v));
        return Err(DesignError::Infeasible { binding });
    }
    feasible.sort_by(rank_order);

    let best_of = |kind: TopologyKind| {
        feasible.iter().filter(|d| d.kind == kind).map(|d| d.objective).min()
    };
    let winner = feasible[0].clone();
    Ok(DesignReport {
        node_count: request.node_count,
        blocking_factor: request.blocking_factor,
        currency: catalog.currency().to_string(),
        direct_connect_objective: best_of(TopologyKind::DirectConnect),
        star_objective: best_of(TopologyKind::Star),
        fat_tree_objective: best_of(TopologyKind::FatTree),
        cluster_cost: cluster_cost(&winner, request),
        winner,
        candidates: feasible,
        rejected: rejected
            .into_iter()
            .map(|(d, violations)| RejectedCandidate {
                summary: d.summary(),
                objective: d.objective,
                violations,
            })
            .collect(),
    })
}

/// Largest node count any candidate in the catalog could connect.
fn largest_achievable(request: &DesignRequest, catalog: &Catalog, edges: &[&SwitchConfig]) -> u64 {
    let fat_tree = edges
        .iter()
        .filter_map(|e| effective_split(request, e))
        .flat_map(|s| catalog.core_set().map(move |c| c.ports * s.ports_to_nodes))
        .max()
        .unwrap_or(0);
    let star = match request.blade() {
        None => catalog.configs().iter().map(|c| c.ports).max().unwrap_or(0),
        Some(b) => {
            let external = if b.pass_through_cost.is_some() {
                catalog.configs().iter().map(|c| c.ports).max().unwrap_or(0)
            } else {
                0
            };
            external.max(b.enclosure_capacity.min(edges.first().map_or(0, |e| e.ports)))
        }
    };
    fat_tree.max(star)
}
