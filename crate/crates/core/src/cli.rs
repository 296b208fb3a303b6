//! The `fattree` command line.
//!
//! Exit status is 0 on success, 2 when the problem has no solution
//! (insufficient radix, unmet constraints, no room) and 1 for usage,
//! input and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bundled;
use crate::catalog::{load_catalog, Catalog};
use crate::designer::{
    design_with, BladeSpec, DesignRequest, FormFactor, NodeSpec, Objective, TotalCost, WeightedCost,
};
use crate::estimator::{lower_bound_estimate, sweep, EstimateError, PortPrecision};
use crate::placement::{
    expansion_audit, expansion_plan, plan_racks, CorePlacement, ExpansionError, PlacementError, PlacementOptions,
    Reservation, RoomSpec,
};
use crate::report;
use crate::units::{BlockingFactor, Kilograms, Money, Watts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fattree", version, about = "Cost-optimal two-layer fat-tree network design")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Design the cheapest network for a node count.
    Design(DesignArgs),
    /// Per-port lower-bound estimate for a single switch model.
    Estimate(EstimateArgs),
    /// Optimal cost next to the per-port estimate over a range of node counts.
    Sweep(SweepArgs),
    /// Place a designed network and its nodes into racks.
    Place(PlaceArgs),
    /// Size a network for future growth and plan the initial installation.
    Expand(ExpandArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Precision {
    Exact,
    Datasheet,
}

impl From<Precision> for PortPrecision {
    fn from(p: Precision) -> PortPrecision {
        match p {
            Precision::Exact => PortPrecision::Exact,
            Precision::Datasheet => PortPrecision::Datasheet,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorePolicy {
    First,
    Center,
    Distributed,
}

impl From<CorePolicy> for CorePlacement {
    fn from(p: CorePolicy) -> CorePlacement {
        match p {
            CorePolicy::First => CorePlacement::FirstRacksContiguous,
            CorePolicy::Center => CorePlacement::Center,
            CorePolicy::Distributed => CorePlacement::Distributed,
        }
    }
}

#[derive(Args, Debug)]
struct CatalogArg {
    /// Switch catalog (JSON). Defaults to the bundled single-switch catalog.
    #[arg(long, value_name = "FILE")]
    catalog: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NodeArgs {
    /// Rack units per compute node.
    #[arg(long, default_value_t = 1, value_name = "U")]
    node_ru: u64,
    /// Power per compute node in watts.
    #[arg(long, value_parser = parse_watts, value_name = "W")]
    node_power: Option<Watts>,
    /// Weight per compute node in kilograms.
    #[arg(long, value_parser = parse_kilograms, value_name = "KG")]
    node_weight: Option<Kilograms>,
}

impl NodeArgs {
    fn spec(&self) -> NodeSpec {
        NodeSpec {
            node_rack_units: self.node_ru,
            node_power: self.node_power.unwrap_or(Watts::ZERO),
            node_weight: self.node_weight.unwrap_or(Kilograms::ZERO),
        }
    }
}

#[derive(Args, Debug)]
struct DesignArgs {
    /// Number of compute nodes.
    #[arg(long, required_unless_present = "request")]
    nodes: Option<u64>,
    /// Blocking factor, an integer or p/q.
    #[arg(long, default_value = "1", value_parser = parse_blocking)]
    blocking: BlockingFactor,
    #[command(flatten)]
    catalog: CatalogArg,
    /// Full design request (JSON) instead of the flags below.
    #[arg(long, value_name = "FILE", conflicts_with = "nodes")]
    request: Option<PathBuf>,
    /// Blades per enclosure; switches to a blade cluster.
    #[arg(long, value_name = "N", requires_all = ["blade_switch", "enclosure_cost"])]
    blade: Option<u64>,
    /// Catalog id of the enclosure's embedded switch.
    #[arg(long, value_name = "ID")]
    blade_switch: Option<String>,
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    enclosure_cost: Option<Money>,
    /// Price of a pass-through panel, enabling pass-through designs.
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    pass_through_cost: Option<Money>,
    /// Upper bound on network rack space.
    #[arg(long, value_name = "U")]
    max_ru: Option<u64>,
    /// Lower bound on free core ports.
    #[arg(long, value_name = "K")]
    min_spare_ports: Option<u64>,
    #[arg(long, value_parser = parse_watts, value_name = "W")]
    max_power: Option<Watts>,
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    max_cost: Option<Money>,
    /// Prefer designs that keep free core ports for growth.
    #[arg(long)]
    prefer_expandability: bool,
    #[arg(long, default_value = "80", value_parser = parse_money, value_name = "MONEY")]
    cable_cost: Money,
    /// Price of one compute node, for whole-cluster totals.
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    node_cost: Option<Money>,
    #[command(flatten)]
    node: NodeArgs,
    /// Add this much per watt to the objective.
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    watt_cost: Option<Money>,
    /// Add this much per rack unit to the objective.
    #[arg(long, value_parser = parse_money, value_name = "MONEY")]
    rack_unit_cost: Option<Money>,
    /// Number of ranked alternatives to report.
    #[arg(long, default_value_t = 5)]
    top: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the wiring diagram of the optimum as DOT.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long)]
    nodes: u64,
    /// Catalog label of the switch used at both layers.
    #[arg(long = "switch", value_name = "ID")]
    switch: String,
    #[command(flatten)]
    catalog: CatalogArg,
    #[arg(long, default_value = "80", value_parser = parse_money, value_name = "MONEY")]
    cable_cost: Money,
    /// Count only uplink cables, as for blade enclosures.
    #[arg(long)]
    blade: bool,
    #[arg(long, value_enum, default_value = "exact")]
    precision: Precision,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Switch for the estimate; defaults to the first one usable at both layers.
    #[arg(long = "switch", value_name = "ID")]
    switch: Option<String>,
    #[command(flatten)]
    catalog: CatalogArg,
    #[arg(long, default_value = "1", value_parser = parse_blocking)]
    blocking: BlockingFactor,
    #[arg(long, default_value = "80", value_parser = parse_money, value_name = "MONEY")]
    cable_cost: Money,
    #[arg(long, value_enum, default_value = "exact")]
    precision: Precision,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct RoomArgs {
    #[arg(long)]
    rows: u64,
    #[arg(long)]
    racks_per_row: u64,
    #[arg(long, default_value_t = 42, value_name = "U")]
    rack_units: u64,
    #[arg(long, value_parser = parse_kilograms, value_name = "KG")]
    rack_weight: Option<Kilograms>,
    #[arg(long, value_parser = parse_watts, value_name = "W")]
    rack_power: Option<Watts>,
}

#[derive(Args, Debug)]
struct PlaceArgs {
    #[arg(long)]
    nodes: u64,
    #[arg(long, default_value = "1", value_parser = parse_blocking)]
    blocking: BlockingFactor,
    #[command(flatten)]
    catalog: CatalogArg,
    #[arg(long, default_value = "80", value_parser = parse_money, value_name = "MONEY")]
    cable_cost: Money,
    #[arg(long)]
    prefer_expandability: bool,
    #[command(flatten)]
    room: RoomArgs,
    #[command(flatten)]
    node: NodeArgs,
    /// Spread building blocks over accumulated slack.
    #[arg(long)]
    dense: bool,
    #[arg(long, value_enum, default_value = "first")]
    core_placement: CorePolicy,
    /// Keep space free: RACK:U, rack counted from 1 in fill order. Repeatable.
    #[arg(long, value_parser = parse_reservation, value_name = "RACK:U")]
    reserve: Vec<Reservation>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Rack space available now.
    #[arg(long, value_name = "U")]
    current_ru: u64,
    /// Rack space expected eventually.
    #[arg(long, value_name = "U")]
    target_ru: u64,
    #[arg(long, default_value = "1", value_parser = parse_blocking)]
    blocking: BlockingFactor,
    #[command(flatten)]
    catalog: CatalogArg,
    #[arg(long, default_value = "80", value_parser = parse_money, value_name = "MONEY")]
    cable_cost: Money,
    #[command(flatten)]
    node: NodeArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_blocking(s: &str) -> Result<BlockingFactor, String> {
    s.parse()
}

fn parse_money(s: &str) -> Result<Money, String> {
    Money::parse_major(s)
}

fn parse_watts(s: &str) -> Result<Watts, String> {
    serde_json::from_str(s).map_err(|_| format!("`{s}` is not a power in watts"))
}

fn parse_kilograms(s: &str) -> Result<Kilograms, String> {
    serde_json::from_str(s).map_err(|_| format!("`{s}` is not a weight in kilograms"))
}

fn parse_reservation(s: &str) -> Result<Reservation, String> {
    let (rack, units) = s.split_once(':').ok_or("expected RACK:U")?;
    let rack: u64 = rack.parse().map_err(|_| format!("bad rack `{rack}`"))?;
    let units: u64 = units.parse().map_err(|_| format!("bad unit count `{units}`"))?;
    if rack == 0 {
        return Err("racks are numbered from 1".to_string());
    }
    Ok(Reservation { rack: rack - 1, rack_units: units })
}

/// A failed command: message and exit status.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn catalog(arg: &CatalogArg) -> Result<Catalog, Failure> {
    match &arg.catalog {
        Some(path) => load_catalog(&read(path)?).map_err(|e| usage(format!("catalog {}: {e}", path.display()))),
        None => Ok(load_catalog(bundled::DEMO_CATALOG).expect("bundled catalog is valid")),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn design_failure(e: crate::designer::DesignError) -> Failure {
    Failure(if e.is_infeasible() { EXIT_INFEASIBLE } else { EXIT_USAGE }, e.to_string())
}

fn cmd_design(a: &DesignArgs) -> Result<String, Failure> {
    let cat = catalog(&a.catalog)?;
    let request = match &a.request {
        Some(path) => serde_json::from_str::<DesignRequest>(&read(path)?)
            .map_err(|e| usage(format!("request {}: {e}", path.display())))?,
        None => {
            let nodes = a.nodes.expect("clap enforces --nodes");
            let mut r = DesignRequest::rack_mounted(nodes, a.blocking, a.cable_cost);
            r.form_factor = match a.blade {
                Some(cap) => FormFactor::Blade(BladeSpec {
                    enclosure_capacity: cap,
                    enclosure_cost: a.enclosure_cost.expect("clap enforces --enclosure-cost"),
                    embedded_edge_switch_id: a.blade_switch.clone().expect("clap enforces --blade-switch"),
                    pass_through_cost: a.pass_through_cost,
                }),
                None => FormFactor::RackMounted(a.node.spec()),
            };
            r.constraints.max_network_rack_units = a.max_ru;
            r.constraints.min_spare_core_ports = a.min_spare_ports;
            r.constraints.max_network_power = a.max_power;
            r.constraints.max_network_cost = a.max_cost;
            r.prefer_expandability = a.prefer_expandability;
            r.node_cost = a.node_cost;
            r
        }
    };
    let weighted;
    let objective: &dyn Objective = if a.watt_cost.is_some() || a.rack_unit_cost.is_some() {
        weighted = WeightedCost {
            per_watt: a.watt_cost.unwrap_or(Money::ZERO),
            per_rack_unit: a.rack_unit_cost.unwrap_or(Money::ZERO),
        };
        &weighted
    } else {
        &TotalCost
    };
    let report = design_with(&request, &cat, objective).map_err(design_failure)?.truncated(a.top);
    if let Some(path) = &a.dot {
        fs::write(path, report::emit_wiring(&report.winner))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match a.format {
        Format::Json => to_json(&report),
        Format::Text => report::render_design(&report),
    })
}

fn estimate_failure(e: EstimateError) -> Failure {
    match e {
        EstimateError::ExceedsRadix { .. } => Failure(EXIT_INFEASIBLE, e.to_string()),
        EstimateError::Design(d) => design_failure(d),
        EstimateError::NoNodes => usage(e.to_string()),
    }
}

fn cmd_estimate(a: &EstimateArgs) -> Result<String, Failure> {
    let cat = catalog(&a.catalog)?;
    let sw = cat.find(&a.switch).ok_or_else(|| usage(format!("unknown switch `{}`", a.switch)))?;
    let est = lower_bound_estimate(a.nodes, sw, a.cable_cost, a.blade, a.precision.into()).map_err(estimate_failure)?;
    Ok(match a.format {
        Format::Json => to_json(&est),
        Format::Text => report::render_estimate(&est, cat.currency()),
    })
}

fn cmd_sweep(a: &SweepArgs) -> Result<String, Failure> {
    let cat = catalog(&a.catalog)?;
    if a.from > a.to {
        return Err(usage("--from must not exceed --to"));
    }
    let sw = match &a.switch {
        Some(id) => cat.find(id).ok_or_else(|| usage(format!("unknown switch `{id}`")))?,
        None => cat
            .configs()
            .iter()
            .find(|c| c.has_role(crate::catalog::Role::Edge) && c.has_role(crate::catalog::Role::Core))
            .ok_or_else(|| usage("no switch usable at both layers; pass --switch"))?,
    };
    let table = sweep(&cat, sw, a.from, a.to, a.blocking, a.cable_cost, a.precision.into());
    Ok(match a.format {
        Format::Json => to_json(&table),
        Format::Text => report::render_sweep(&table),
    })
}

fn placement_failure(e: PlacementError) -> Failure {
    match e {
        PlacementError::RoomTooSmall { .. } | PlacementError::Unplaced(_) | PlacementError::ItemTooLarge { .. } => {
            Failure(EXIT_INFEASIBLE, e.to_string())
        }
        _ => usage(e.to_string()),
    }
}

fn cmd_place(a: &PlaceArgs) -> Result<String, Failure> {
    let cat = catalog(&a.catalog)?;
    let node = a.node.spec();
    let mut request = DesignRequest::rack_mounted(a.nodes, a.blocking, a.cable_cost);
    request.form_factor = FormFactor::RackMounted(node);
    request.prefer_expandability = a.prefer_expandability;
    let winner = crate::designer::design(&request, &cat).map_err(design_failure)?.winner;
    let room = RoomSpec {
        rows: a.room.rows,
        racks_per_row: a.room.racks_per_row,
        rack_units_per_rack: a.room.rack_units,
        rack_weight_budget: a.room.rack_weight,
        rack_power_budget: a.room.rack_power,
    };
    let options = PlacementOptions { dense: a.dense, core_policy: a.core_placement.into(), reserved: a.reserve.clone() };
    let layout = plan_racks(&winner, &room, &node, &options).map_err(placement_failure)?;
    Ok(match a.format {
        Format::Json => to_json(&layout),
        Format::Text => report::render_layout(&layout),
    })
}

#[derive(Serialize)]
struct ExpandOutput {
    plan: crate::placement::ExpansionPlan,
    baseline_audit: crate::placement::ExpansionAudit,
}

fn cmd_expand(a: &ExpandArgs) -> Result<String, Failure> {
    let cat = catalog(&a.catalog)?;
    let node = a.node.spec();
    let plan = expansion_plan(a.current_ru, a.target_ru, &cat, a.blocking, &node, a.cable_cost).map_err(|e| match e {
        ExpansionError::NothingFits(_) => Failure(EXIT_INFEASIBLE, e.to_string()),
        ExpansionError::Design(d) => design_failure(d),
        ExpansionError::Shrinking { .. } => usage(e.to_string()),
    })?;
    let audit = expansion_audit(&plan.baseline.design, a.target_ru - a.current_ru, &node, a.blocking);
    Ok(match a.format {
        Format::Json => to_json(&ExpandOutput { plan, baseline_audit: audit }),
        Format::Text => report::render_expansion(&plan, Some(&audit)),
    })
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Design(a) => cmd_design(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Place(a) => cmd_place(a),
        Command::Expand(a) => cmd_expand(a),
    };
    match result {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
