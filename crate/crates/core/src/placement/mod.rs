//! Rack placement of a designed network and its compute nodes.
//!
//! Items go into racks in serpentine order. Indivisible equipment is placed
//! first, then reserved space, then the remaining core switches, then
//! building blocks (an edge switch plus the nodes wired to it). Switches
//! and nodes stack from the bottom of a rack; edge switches from the top.

mod expansion;
mod render;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::SwitchConfig;
use crate::designer::{FatTreeDesign, NodeSpec, TopologyKind};
use crate::units::{Kilograms, Watts};

pub use expansion::{
    expansion_audit, expansion_plan, size_for_capacity, ExpansionAudit, ExpansionError, ExpansionPhase,
    ExpansionPlan, InitialVariant, SizedDesign,
};
pub use render::{render_front_view, render_top_view};

/// Machine room dimensions and per-rack budgets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoomSpec {
    pub rows: u64,
    pub racks_per_row: u64,
    #[serde(default = "default_rack_units")]
    pub rack_units_per_rack: u64,
    /// Absent means unlimited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rack_weight_budget: Option<Kilograms>,
    /// Power and cooling, folded into one figure. Absent means unlimited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rack_power_budget: Option<Watts>,
}

fn default_rack_units() -> u64 {
    42
}

impl RoomSpec {
    pub fn new(rows: u64, racks_per_row: u64) -> RoomSpec {
        RoomSpec {
            rows,
            racks_per_row,
            rack_units_per_rack: default_rack_units(),
            rack_weight_budget: None,
            rack_power_budget: None,
        }
    }

    pub fn rack_count(&self) -> u64 {
        self.rows * self.racks_per_row
    }

    /// Physical (row, column) of the rack filled `index`-th.
    pub fn serpentine_position(&self, index: u64) -> (u64, u64) {
        let row = index / self.racks_per_row;
        let offset = index % self.racks_per_row;
        let column = if row.is_multiple_of(2) { offset } else { self.racks_per_row - 1 - offset };
        (row, column)
    }

    fn validate(&self) -> Result<(), PlacementError> {
        let bad = |m: &str| Err(PlacementError::InvalidRoom(m.to_string()));
        if self.rows == 0 || self.racks_per_row == 0 || self.rack_units_per_rack == 0 {
            return bad("rows, racks_per_row and rack_units_per_rack must be positive");
        }
        if self.rack_weight_budget.is_some_and(|w| w <= Kilograms::ZERO)
            || self.rack_power_budget.is_some_and(|p| p <= Watts::ZERO)
        {
            return bad("rack budgets must be positive");
        }
        Ok(())
    }
}

/// Where core switches go.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorePlacement {
    /// One contiguous group starting at the first rack.
    #[default]
    FirstRacksContiguous,
    /// One contiguous group in the middle of the racks expected to be used.
    Center,
    /// One contiguous group at the start of each row expected to be used.
    Distributed,
}

/// Space kept free in a rack, counted from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reservation {
    /// Rack index in fill order.
    pub rack: u64,
    pub rack_units: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementOptions {
    /// Split node blocks over the slack of earlier racks once it adds up to a block.
    #[serde(default)]
    pub dense: bool,
    #[serde(default)]
    pub core_policy: CorePlacement,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reserved: Vec<Reservation>,
}

/// An edge switch and the nodes attached to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingBlock {
    pub id: u64,
    pub edge_switch: String,
    pub node_count: u64,
    pub total_rack_units: u64,
    pub total_weight: Kilograms,
    pub total_power: Watts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemKind {
    CoreSwitch,
    EdgeSwitch,
    NodeBlock,
    Reserved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedItem {
    pub kind: ItemKind,
    pub label: String,
    /// Lowest occupied unit, counting from 1 at the bottom.
    pub position: u64,
    pub rack_units: u64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub node_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<u64>,
    pub weight: Kilograms,
    pub power: Watts,
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rack {
    pub index: u64,
    pub row: u64,
    pub column: u64,
    pub items: Vec<PlacedItem>,
    pub used_units: u64,
    pub weight: Kilograms,
    pub power: Watts,
    #[serde(skip)]
    bottom: u64,
    #[serde(skip)]
    top: u64,
}

impl Rack {
    fn new(room: &RoomSpec, index: u64) -> Rack {
        let (row, column) = room.serpentine_position(index);
        Rack {
            index,
            row,
            column,
            items: Vec::new(),
            used_units: 0,
            weight: Kilograms::ZERO,
            power: Watts::ZERO,
            bottom: 1,
            top: room.rack_units_per_rack,
        }
    }

    pub fn is_used(&self) -> bool {
        !self.items.is_empty()
    }

    fn free_units(&self) -> u64 {
        (self.top + 1).saturating_sub(self.bottom)
    }

    /// How many items of the given footprint still fit.
    fn fits(&self, room: &RoomSpec, units: u64, weight: Kilograms, power: Watts, count: u64) -> bool {
        units * count <= self.free_units()
            && room.rack_weight_budget.is_none_or(|b| self.weight + weight * count <= b)
            && room.rack_power_budget.is_none_or(|b| self.power + power * count <= b)
    }

    fn capacity_for(&self, room: &RoomSpec, units: u64, weight: Kilograms, power: Watts) -> u64 {
        let mut n = self.free_units().checked_div(units).unwrap_or(u64::MAX);
        if let Some(b) = room.rack_weight_budget {
            if weight > Kilograms::ZERO {
                n = n.min(((b - self.weight).milli().max(0) / weight.milli()) as u64);
            }
        }
        if let Some(b) = room.rack_power_budget {
            if power > Watts::ZERO {
                n = n.min(((b - self.power).milli().max(0) / power.milli()) as u64);
            }
        }
        n
    }

    fn push(&mut self, mut item: PlacedItem, from_top: bool) {
        if from_top {
            item.position = self.top + 1 - item.rack_units;
            self.top -= item.rack_units;
        } else {
            item.position = self.bottom;
            self.bottom += item.rack_units;
        }
        self.used_units += item.rack_units;
        self.weight += item.weight;
        self.power += item.power;
        self.items.push(item);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackLayout {
    pub room: RoomSpec,
    pub options: PlacementOptions,
    pub blocks: Vec<BuildingBlock>,
    /// Every rack of the room in fill order.
    pub racks: Vec<Rack>,
    pub racks_used: u64,
    pub whole_blocks: Vec<u64>,
    pub spread_blocks: Vec<u64>,
    pub unplaced: Vec<String>,
}

impl RackLayout {
    pub fn placed_nodes(&self) -> u64 {
        self.items().filter(|i| i.kind == ItemKind::NodeBlock).map(|i| i.node_count).sum()
    }

    pub fn placed_switches(&self) -> u64 {
        self.items()
            .filter(|i| matches!(i.kind, ItemKind::CoreSwitch | ItemKind::EdgeSwitch))
            .count() as u64
    }

    pub fn items(&self) -> impl Iterator<Item = &PlacedItem> {
        self.racks.iter().flat_map(|r| r.items.iter())
    }

    /// Racks whose space, weight or power exceed the room budgets.
    pub fn budget_violations(&self) -> Vec<u64> {
        self.racks
            .iter()
            .filter(|r| {
                let units: u64 = r.items.iter().map(|i| i.rack_units).sum();
                let weight: Kilograms = r.items.iter().map(|i| i.weight).sum();
                let power: Watts = r.items.iter().map(|i| i.power).sum();
                units > self.room.rack_units_per_rack
                    || self.room.rack_weight_budget.is_some_and(|b| weight > b)
                    || self.room.rack_power_budget.is_some_and(|b| power > b)
                    || overlaps(&r.items)
            })
            .map(|r| r.index)
            .collect()
    }
}

fn overlaps(items: &[PlacedItem]) -> bool {
    let mut spans: Vec<(u64, u64)> = items.iter().map(|i| (i.position, i.position + i.rack_units)).collect();
    spans.sort();
    spans.windows(2).any(|w| w[1].0 < w[0].1)
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PlacementError {
    #[error("invalid room: {0}")]
    InvalidRoom(String),
    #[error("blade enclosures are not placed; only rack-mounted designs")]
    BladeDesign,
    #[error("room too small: short by {units} U, {weight} and {power}")]
    RoomTooSmall { units: u64, weight: Kilograms, power: Watts },
    #[error("{item} does not fit in an empty rack")]
    ItemTooLarge { item: String },
    #[error("reservation in rack {rack} does not fit")]
    BadReservation { rack: u64 },
    #[error("could not place: {}", .0.join(", "))]
    Unplaced(Vec<String>),
}

/// Building blocks of a design, one per edge switch, in switch order.
pub fn building_blocks(design: &FatTreeDesign, node: &NodeSpec) -> Vec<BuildingBlock> {
    let sw = &design.edge_config;
    design
        .node_distribution()
        .into_iter()
        .enumerate()
        .map(|(i, n)| BuildingBlock {
            id: i as u64 + 1,
            edge_switch: sw.label(),
            node_count: n,
            total_rack_units: sw.rack_units + n * node.node_rack_units,
            total_weight: sw.weight + node.node_weight * n,
            total_power: sw.power + node.node_power * n,
        })
        .collect()
}

struct Planner<'a> {
    room: &'a RoomSpec,
    node: &'a NodeSpec,
    edge: &'a SwitchConfig,
    racks: Vec<Rack>,
    /// Rack currently receiving whole blocks.
    current: usize,
    /// Racks closed with slack, in fill order.
    pool: Vec<usize>,
}

impl Planner<'_> {
    fn switch_item(kind: ItemKind, label: String, sw: &SwitchConfig, block: Option<u64>) -> PlacedItem {
        PlacedItem {
            kind,
            label,
            position: 0,
            rack_units: sw.rack_units,
            node_count: 0,
            block,
            weight: sw.weight,
            power: sw.power,
        }
    }

    fn node_item(&self, block: u64, count: u64) -> PlacedItem {
        PlacedItem {
            kind: ItemKind::NodeBlock,
            label: format!("B{block:02}"),
            position: 0,
            rack_units: count * self.node.node_rack_units,
            node_count: count,
            block: Some(block),
            weight: self.node.node_weight * count,
            power: self.node.node_power * count,
        }
    }

    /// Places a contiguous group of core switches starting at rack `start`.
    fn place_cores(&mut self, cores: &[(String, &SwitchConfig)], start: usize) -> Result<(), PlacementError> {
        let mut r = start;
        for (label, sw) in cores {
            while r < self.racks.len() && !self.racks[r].fits(self.room, sw.rack_units, sw.weight, sw.power, 1) {
                r += 1;
            }
            if r == self.racks.len() {
                return Err(PlacementError::Unplaced(vec![label.clone()]));
            }
            self.racks[r].push(Self::switch_item(ItemKind::CoreSwitch, label.clone(), sw, None), false);
        }
        Ok(())
    }

    fn fits_whole(&self, r: usize, block: &BuildingBlock) -> bool {
        let rack = &self.racks[r];
        rack.fits(self.room, block.total_rack_units, block.total_weight, block.total_power, 1)
    }

    fn place_whole(&mut self, r: usize, block: &BuildingBlock) {
        let edge = Self::switch_item(ItemKind::EdgeSwitch, format!("E{:02}", block.id), self.edge, Some(block.id));
        self.racks[r].push(edge, true);
        if block.node_count > 0 {
            let nodes = self.node_item(block.id, block.node_count);
            self.racks[r].push(nodes, false);
        }
    }

    /// Splits a block over `candidates`: the edge switch whole in the first
    /// rack that takes it, nodes in order wherever they fit. Nothing is
    /// committed unless the whole block fits.
    fn spread(&mut self, candidates: &[usize], block: &BuildingBlock) -> bool {
        let sw = self.edge;
        let Some(&edge_rack) = candidates
            .iter()
            .find(|&&r| self.racks[r].fits(self.room, sw.rack_units, sw.weight, sw.power, 1))
        else {
            return false;
        };
        let mut left = block.node_count;
        let mut plan = Vec::new();
        for &r in candidates {
            if left == 0 {
                break;
            }
            let rack = &self.racks[r];
            let mut room_for = rack.capacity_for(self.room, self.node.node_rack_units, self.node.node_weight, self.node.node_power);
            if r == edge_rack {
                // Leave room for the switch itself.
                let mut probe = rack.clone();
                probe.push(Self::switch_item(ItemKind::EdgeSwitch, String::new(), sw, None), true);
                room_for = probe.capacity_for(self.room, self.node.node_rack_units, self.node.node_weight, self.node.node_power);
            }
            let take = room_for.min(left);
            if take > 0 {
                plan.push((r, take));
                left -= take;
            }
        }
        if left > 0 {
            return false;
        }
        let edge = Self::switch_item(ItemKind::EdgeSwitch, format!("E{:02}", block.id), sw, Some(block.id));
        self.racks[edge_rack].push(edge, true);
        for (r, take) in plan {
            let nodes = self.node_item(block.id, take);
            self.racks[r].push(nodes, false);
        }
        true
    }

    fn close_current(&mut self) {
        if self.racks[self.current].free_units() > 0 {
            self.pool.push(self.current);
        }
        self.current += 1;
    }
}

fn total_demand(design: &FatTreeDesign, node: &NodeSpec, reserved: u64) -> (u64, Kilograms, Watts) {
    let m = &design.metrics;
    let n = design.node_count;
    (
        m.rack_units + n * node.node_rack_units + reserved,
        m.weight + node.node_weight * n,
        m.power + node.node_power * n,
    )
}

fn core_groups(
    design: &FatTreeDesign,
    room: &RoomSpec,
    options: &PlacementOptions,
    node: &NodeSpec,
) -> Vec<(usize, u64)> {
    let reserved: u64 = options.reserved.iter().map(|r| r.rack_units).sum();
    let demand = total_demand(design, node, reserved).0;
    let expected_racks = demand.div_ceil(room.rack_units_per_rack).clamp(1, room.rack_count());
    let c = design.core_count;
    match options.core_policy {
        CorePlacement::FirstRacksContiguous => vec![(0, c)],
        CorePlacement::Center => vec![((expected_racks / 2) as usize, c)],
        CorePlacement::Distributed => {
            let rows = expected_racks.div_ceil(room.racks_per_row).max(1);
            let groups = rows.min(c.max(1));
            (0..groups)
                .map(|g| {
                    let share = c / groups + u64::from(g < c % groups);
                    ((g * room.racks_per_row) as usize, share)
                })
                .collect()
        }
    }
}

/// Packs a design and its nodes into the racks of a room.
pub fn plan_racks(
    design: &FatTreeDesign,
    room: &RoomSpec,
    node: &NodeSpec,
    options: &PlacementOptions,
) -> Result<RackLayout, PlacementError> {
    room.validate()?;
    if design.kind == TopologyKind::DirectConnect || design.pass_through_panels > 0 {
        return Err(PlacementError::BladeDesign);
    }
    let reserved_units: u64 = options.reserved.iter().map(|r| r.rack_units).sum();
    let (units, weight, power) = total_demand(design, node, reserved_units);
    let cap_units = room.rack_count() * room.rack_units_per_rack;
    let cap_weight = room.rack_weight_budget.map(|b| b * room.rack_count());
    let cap_power = room.rack_power_budget.map(|b| b * room.rack_count());
    let short_weight = cap_weight.map_or(Kilograms::ZERO, |c| if weight > c { weight - c } else { Kilograms::ZERO });
    let short_power = cap_power.map_or(Watts::ZERO, |c| if power > c { power - c } else { Watts::ZERO });
    if units > cap_units || short_weight > Kilograms::ZERO || short_power > Watts::ZERO {
        return Err(PlacementError::RoomTooSmall {
            units: units.saturating_sub(cap_units),
            weight: short_weight,
            power: short_power,
        });
    }

    let empty = Rack::new(room, 0);
    let mut switches: Vec<(String, &SwitchConfig)> = vec![(design.edge_label(), &design.edge_config)];
    if let Some(core) = &design.core_config {
        switches.push((core.label(), core));
    }
    for (label, sw) in &switches {
        if !empty.fits(room, sw.rack_units, sw.weight, sw.power, 1) {
            return Err(PlacementError::ItemTooLarge { item: label.clone() });
        }
    }
    if node.node_rack_units > 0 && !empty.fits(room, node.node_rack_units, node.node_weight, node.node_power, 1) {
        return Err(PlacementError::ItemTooLarge { item: "compute node".to_string() });
    }

    let mut planner = Planner {
        room,
        node,
        edge: &design.edge_config,
        racks: (0..room.rack_count()).map(|i| Rack::new(room, i)).collect(),
        current: 0,
        pool: Vec::new(),
    };

    let cores: Vec<(String, &SwitchConfig)> = match &design.core_config {
        Some(core) => (1..=design.core_count).map(|i| (format!("C{i:02}"), core)).collect(),
        None => Vec::new(),
    };
    let groups = core_groups(design, room, options, node);
    let place_groups = |planner: &mut Planner, cores: &[(String, &SwitchConfig)]| {
        let mut next = 0;
        for &(start, count) in &groups {
            let end = (next + count as usize).min(cores.len());
            planner.place_cores(&cores[next..end], start)?;
            next = end;
        }
        Ok::<(), PlacementError>(())
    };
    let modular_cores = design.core_config.as_ref().is_some_and(SwitchConfig::is_modular);
    if modular_cores {
        place_groups(&mut planner, &cores)?;
    }
    for res in &options.reserved {
        let r = res.rack as usize;
        if r >= planner.racks.len() || !planner.racks[r].fits(room, res.rack_units, Kilograms::ZERO, Watts::ZERO, 1) {
            return Err(PlacementError::BadReservation { rack: res.rack });
        }
        let item = PlacedItem {
            kind: ItemKind::Reserved,
            label: "reserved".to_string(),
            position: 0,
            rack_units: res.rack_units,
            node_count: 0,
            block: None,
            weight: Kilograms::ZERO,
            power: Watts::ZERO,
        };
        planner.racks[r].push(item, false);
    }
    if !modular_cores {
        place_groups(&mut planner, &cores)?;
    }

    let blocks = building_blocks(design, node);
    let mut whole_blocks = Vec::new();
    let mut spread_blocks = Vec::new();
    let mut unplaced = Vec::new();
    for block in &blocks {
        loop {
            if planner.current >= planner.racks.len() {
                // Out of fresh racks: last resort is the accumulated slack.
                let pool = planner.pool.clone();
                if planner.spread(&pool, block) {
                    spread_blocks.push(block.id);
                } else {
                    unplaced.push(format!("block {}", block.id));
                }
                break;
            }
            if planner.fits_whole(planner.current, block) {
                planner.place_whole(planner.current, block);
                whole_blocks.push(block.id);
                break;
            }
            let fresh = Rack::new(room, 0);
            let too_big = !fresh.fits(room, block.total_rack_units, block.total_weight, block.total_power, 1);
            if too_big {
                // No rack holds this block whole; split it from here onwards.
                let candidates: Vec<usize> = planner
                    .pool
                    .iter()
                    .copied()
                    .chain(planner.current..planner.racks.len())
                    .collect();
                if planner.spread(&candidates, block) {
                    spread_blocks.push(block.id);
                    planner.pool.retain(|&r| planner.racks[r].free_units() > 0);
                    while planner.current < planner.racks.len()
                        && planner.racks[planner.current].free_units() == 0
                    {
                        planner.current += 1;
                    }
                } else {
                    unplaced.push(format!("block {}", block.id));
                }
                break;
            }
            planner.close_current();
            if options.dense {
                let pool = planner.pool.clone();
                if planner.spread(&pool, block) {
                    spread_blocks.push(block.id);
                    planner.pool.retain(|&r| planner.racks[r].free_units() > 0);
                    break;
                }
            }
        }
    }
    if !unplaced.is_empty() {
        return Err(PlacementError::Unplaced(unplaced));
    }
    let racks_used = planner.racks.iter().filter(|r| r.is_used()).count() as u64;
    Ok(RackLayout {
        room: room.clone(),
        options: options.clone(),
        blocks,
        racks: planner.racks,
        racks_used,
        whole_blocks,
        spread_blocks,
        unplaced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::catalog::load_catalog;
    use crate::designer::{design, DesignRequest};
    use crate::units::{BlockingFactor, Money};

    fn design_for(n: u64) -> FatTreeDesign {
        let cat = load_catalog(bundled::DEMO_CATALOG).unwrap();
        let req = DesignRequest::rack_mounted(n, BlockingFactor::NON_BLOCKING, Money::from_major(80));
        design(&req, &cat).unwrap().winner
    }

    fn options(dense: bool, core_policy: CorePlacement) -> PlacementOptions {
        PlacementOptions { dense, core_policy, reserved: Vec::new() }
    }

    #[test]
    fn serpentine_reverses_every_other_row() {
        let room = RoomSpec::new(3, 4);
        let order: Vec<(u64, u64)> = (0..12).map(|i| room.serpentine_position(i)).collect();
        assert_eq!(&order[..5], &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 3)]);
        assert_eq!(order[7], (1, 0));
        assert_eq!(order[8], (2, 0));
    }

    #[test]
    fn distributed_cores_dense_case() {
        let d = design_for(396);
        assert_eq!((d.edge_count, d.core_count), (22, 18));
        let room = RoomSpec::new(2, 7);
        let dense = plan_racks(&d, &room, &NodeSpec::default(), &options(true, CorePlacement::Distributed)).unwrap();
        assert_eq!(dense.whole_blocks.len(), 19);
        assert_eq!(dense.spread_blocks, [6, 15, 21]);
        assert_eq!(dense.racks_used, 11);
        assert_eq!(dense.placed_nodes(), 396);
        assert_eq!(dense.placed_switches(), 40);
        assert!(dense.budget_violations().is_empty());

        let sparse = plan_racks(&d, &room, &NodeSpec::default(), &options(false, CorePlacement::Distributed)).unwrap();
        assert!(sparse.spread_blocks.is_empty());
        assert_eq!(sparse.racks_used, 12);
    }

    #[test]
    fn contiguous_cores_in_first_rack() {
        let d = design_for(396);
        let room = RoomSpec::new(2, 7);
        let l = plan_racks(&d, &room, &NodeSpec::default(), &options(true, CorePlacement::FirstRacksContiguous)).unwrap();
        let first: Vec<_> = l.racks[0].items.iter().filter(|i| i.kind == ItemKind::CoreSwitch).collect();
        assert_eq!(first.len(), 18);
        assert_eq!(l.spread_blocks.len(), 2);
        assert_eq!(l.racks_used, 11);
    }

    #[test]
    fn edge_switches_sit_at_the_top() {
        let d = design_for(60);
        let l = plan_racks(&d, &RoomSpec::new(1, 4), &NodeSpec::default(), &PlacementOptions::default()).unwrap();
        let top = l.racks[0].items.iter().find(|i| i.kind == ItemKind::EdgeSwitch).unwrap();
        assert_eq!(top.position, 42);
        let core = l.racks[0].items.iter().find(|i| i.kind == ItemKind::CoreSwitch).unwrap();
        assert_eq!(core.position, 1);
    }

    #[test]
    fn center_policy_starts_mid_room() {
        let d = design_for(396);
        let l = plan_racks(&d, &RoomSpec::new(2, 7), &NodeSpec::default(), &options(false, CorePlacement::Center)).unwrap();
        assert!(l.racks[5].items.iter().any(|i| i.kind == ItemKind::CoreSwitch));
        assert!(l.racks[0].items.iter().all(|i| i.kind != ItemKind::CoreSwitch));
    }

    #[test]
    fn weight_budget_limits_racks() {
        let d = design_for(60);
        let mut room = RoomSpec::new(1, 10);
        room.rack_weight_budget = Some(Kilograms::from_units(300));
        let node = NodeSpec { node_rack_units: 1, node_power: Watts::ZERO, node_weight: Kilograms::from_units(20) };
        let l = plan_racks(&d, &room, &node, &PlacementOptions::default()).unwrap();
        assert!(l.budget_violations().is_empty());
        assert!(l.racks_used >= 4);
    }

    #[test]
    fn room_too_small_reports_deficit() {
        let d = design_for(396);
        let err = plan_racks(&d, &RoomSpec::new(1, 5), &NodeSpec::default(), &PlacementOptions::default()).unwrap_err();
        assert_eq!(
            err,
            PlacementError::RoomTooSmall { units: 436 - 210, weight: Kilograms::ZERO, power: Watts::ZERO }
        );
    }

    #[test]
    fn oversized_item_is_rejected() {
        let d = design_for(60);
        let mut room = RoomSpec::new(1, 1000);
        room.rack_units_per_rack = 1;
        let node = NodeSpec { node_rack_units: 2, ..NodeSpec::default() };
        let err = plan_racks(&d, &room, &node, &PlacementOptions::default()).unwrap_err();
        assert_eq!(err, PlacementError::ItemTooLarge { item: "compute node".to_string() });
    }

    #[test]
    fn blocks_larger_than_a_rack_are_split() {
        let d = design_for(60);
        let mut room = RoomSpec::new(1, 10);
        room.rack_units_per_rack = 12;
        let l = plan_racks(&d, &room, &NodeSpec::default(), &PlacementOptions::default()).unwrap();
        assert_eq!(l.placed_nodes(), 60);
        assert!(l.budget_violations().is_empty());
        // The last block has six nodes and fits whole.
        assert_eq!(l.spread_blocks, [1, 2, 3]);
    }

    #[test]
    fn reservations_are_kept_free() {
        let d = design_for(60);
        let opts = PlacementOptions { reserved: vec![Reservation { rack: 0, rack_units: 10 }], ..Default::default() };
        let l = plan_racks(&d, &RoomSpec::new(1, 4), &NodeSpec::default(), &opts).unwrap();
        let r = &l.racks[0].items[0];
        assert_eq!((r.kind, r.position, r.rack_units), (ItemKind::Reserved, 1, 10));
        let bad = PlacementOptions { reserved: vec![Reservation { rack: 9, rack_units: 1 }], ..Default::default() };
        assert_eq!(
            plan_racks(&d, &RoomSpec::new(1, 4), &NodeSpec::default(), &bad).unwrap_err(),
            PlacementError::BadReservation { rack: 9 }
        );
    }
}
