//! Human-readable renderings of designs, estimates and plans, and DOT
//! wiring diagrams.

use std::fmt::Write;

use num_rational::Ratio;

use crate::designer::{DesignReport, FatTreeDesign, TopologyKind};
use crate::estimator::{PerPortEstimate, SweepTable};
use crate::placement::{ExpansionAudit, ExpansionPlan, InitialVariant, RackLayout};
use crate::units::{ratio_to_decimal, Money, MINOR_PER_MAJOR};

fn opt_money(m: Option<Money>) -> String {
    m.map_or_else(|| "-".to_string(), |m| m.to_string())
}

fn design_lines(out: &mut String, d: &FatTreeDesign, currency: &str) {
    let _ = writeln!(out, "  topology        {}", d.summary());
    match d.split {
        Some(s) => {
            let _ = writeln!(
                out,
                "  edge switches   {} x {} ({} ports to nodes, {} to core, blocking {})",
                d.edge_count,
                d.edge_label(),
                s.ports_to_nodes,
                s.ports_to_core,
                s.resulting_blocking
            );
        }
        None => {
            let _ = writeln!(out, "  switches        {} x {}", d.edge_count, d.edge_label());
        }
    }
    if let (Some(core), Some(stage)) = (&d.core_config, d.core) {
        let _ = writeln!(
            out,
            "  core switches   {} x {} (bundle width {})",
            stage.core_count,
            core.label(),
            stage.bundle_width
        );
        let dist = d.node_distribution();
        let _ = writeln!(
            out,
            "  nodes per edge  {}",
            dist.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        );
        let _ = writeln!(out, "  uplinks / edge  {}", d.uplinks_per_edge);
    }
    if d.pass_through_panels > 0 {
        let _ = writeln!(out, "  pass-through    {}", d.pass_through_panels);
    }
    let m = &d.metrics;
    let _ = writeln!(out, "  cables          {}", d.cable_count);
    let _ = writeln!(out, "  switch cost     {currency} {}", m.switch_cost);
    let _ = writeln!(out, "  cable cost      {currency} {}", m.cable_cost);
    let _ = writeln!(out, "  network cost    {currency} {}", m.cost);
    let _ = writeln!(out, "  per node port   {currency} {}", Money(m.cost.minor() / d.node_count.max(1) as i64));
    let _ = writeln!(out, "  power           {}", m.power);
    let _ = writeln!(out, "  rack units      {}", m.rack_units);
    let _ = writeln!(out, "  weight          {}", m.weight);
    let _ = writeln!(out, "  max nodes       {}", d.max_supported_nodes);
    let _ = writeln!(out, "  spare ports     {}", d.spare_core_ports);
}

pub fn render_design(report: &DesignReport) -> String {
    let cur = &report.currency;
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}, blocking factor {}", report.node_count, report.blocking_factor);
    let _ = writeln!(out, "best direct connect  {}", opt_money(report.direct_connect_objective));
    let _ = writeln!(out, "best star            {}", opt_money(report.star_objective));
    let _ = writeln!(out, "best fat-tree        {}", opt_money(report.fat_tree_objective));
    out.push_str("\noptimal design\n");
    design_lines(&mut out, &report.winner, cur);
    if let Some(c) = &report.cluster_cost {
        out.push_str("\ncluster\n");
        let _ = writeln!(out, "  network         {cur} {}", c.network);
        let _ = writeln!(out, "  nodes           {cur} {}", c.nodes);
        if c.enclosures > Money::ZERO {
            let _ = writeln!(out, "  enclosures      {cur} {}", c.enclosures);
        }
        let _ = writeln!(out, "  total           {cur} {}", c.total);
    }
    out.push_str("\nranked candidates\n");
    for (i, d) in report.candidates.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {:<40} {cur} {:>16}", i + 1, d.summary(), d.objective.to_string());
    }
    if !report.rejected.is_empty() {
        out.push_str("\nrejected by constraints\n");
        for r in &report.rejected {
            let why = r.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            let _ = writeln!(out, "  {:<40} {why}", r.summary);
        }
    }
    out
}

pub fn render_estimate(e: &PerPortEstimate, currency: &str) -> String {
    let minor = |r| Money(crate::units::round_to_step(r, 1));
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}, switch ports {}", e.node_count, e.total_ports);
    let _ = writeln!(out, "  cost per port   {currency} {}", minor(e.cost_per_port));
    let _ = writeln!(out, "  power per port  {} W", ratio_to_decimal(&e.power_per_port, 3));
    let _ = writeln!(out, "  switch cost     {currency} {}", minor(e.est_switch_cost));
    let _ = writeln!(out, "  cables          {} ({currency} {})", e.est_cable_count, e.est_cable_cost);
    let _ = writeln!(out, "  network cost    {currency} {}", minor(e.est_cost));
    let _ = writeln!(out, "  power           {} W", ratio_to_decimal(&e.est_power, 2));
    let _ = writeln!(out, "  rack units      {}", ratio_to_decimal(&e.est_rack_units, 2));
    let _ = writeln!(out, "  weight          {} kg", ratio_to_decimal(&e.est_weight, 2));
    match e.bundle_factor {
        Some(x) => {
            let _ = writeln!(out, "  exact           yes (X = {x})");
        }
        None => out.push_str("  exact           no (lower bound)\n"),
    }
    out
}

/// Tab-separated sweep: node count, actual optimum, per-port estimate.
pub fn render_sweep(t: &SweepTable) -> String {
    let mut out = String::from("nodes\tactual\testimate\texact\n");
    for r in &t.rows {
        let major = |c: Ratio<i64>| ratio_to_decimal(&(c / MINOR_PER_MAJOR), 2);
        let actual = r.actual_cost.map_or_else(|| "-".to_string(), |m| major(m.as_ratio()));
        let est = r.estimated_cost.map_or_else(|| "-".to_string(), major);
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.node_count, actual, est, u8::from(r.exact));
    }
    if let Some(g) = t.median_gap {
        let _ = writeln!(out, "# median gap {}%", ratio_to_decimal(&(g * 100), 2));
    }
    out
}

pub fn render_layout(layout: &RackLayout) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "racks used {}, blocks {} whole, {} spread",
        layout.racks_used,
        layout.whole_blocks.len(),
        layout.spread_blocks.len()
    );
    if !layout.spread_blocks.is_empty() {
        let ids: Vec<String> = layout.spread_blocks.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "spread blocks {}", ids.join(" "));
    }
    out.push('\n');
    out.push_str(&crate::placement::render_top_view(layout));
    out.push('\n');
    out.push_str(&crate::placement::render_front_view(layout));
    out
}

pub fn render_expansion(plan: &ExpansionPlan, audit: Option<&ExpansionAudit>) -> String {
    let mut out = String::new();
    let b = &plan.baseline;
    let t = &plan.target;
    let _ = writeln!(
        out,
        "baseline {} U: {} nodes, {} edge + {} core switches",
        b.capacity_units, b.node_count, b.edge_count, b.core_count
    );
    let _ = writeln!(
        out,
        "target {} U: {} nodes, {} edge + {} core switches, {} U of switches",
        t.capacity_units, t.node_count, t.edge_count, t.core_count, t.switch_rack_units
    );
    for p in &plan.initial {
        let name = match p.variant {
            InitialVariant::AllSwitchesUpfront => "all switches upfront",
            InitialVariant::CoreUpfront => "core upfront",
        };
        let _ = writeln!(
            out,
            "initial, {name}: {} nodes, {} edge + {} core switches",
            p.nodes, p.edge_switches, p.core_switches
        );
    }
    for p in &plan.edge_install_schedule {
        let _ = writeln!(out, "  then {} edge switches: up to {} nodes", p.edge_switches, p.nodes);
    }
    if let Some(a) = audit {
        let _ = writeln!(
            out,
            "growing the baseline by {} U: {} via spare edge ports + {} via {} new edge switches = {} nodes, {} U wasted",
            a.extra_capacity_units,
            a.nodes_via_spare_edge_ports,
            a.nodes_via_new_edge_switches,
            a.new_edge_switches,
            a.total_nodes,
            a.wasted_units
        );
    }
    out
}

/// Wiring diagram in DOT. Thick edges are bundles labelled with their width.
pub fn emit_wiring(d: &FatTreeDesign) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph fattree {{");
    let _ = writeln!(out, "  label=\"{}\";", d.summary());
    out.push_str("  node [shape=box];\n");
    let dist = d.node_distribution();
    let node_ports = match d.kind {
        TopologyKind::FatTree => d.split.map_or(d.nodes_per_edge, |s| s.ports_to_nodes),
        TopologyKind::Star => d.edge_config.ports,
        TopologyKind::DirectConnect => d.nodes_per_edge,
    };
    if let Some(core) = &d.core_config {
        out.push_str("  subgraph core {\n    rank=same;\n");
        for (j, used) in core_port_use(d).iter().enumerate() {
            let unused = core.ports.saturating_sub(*used);
            let _ = write!(out, "    c{} [label=\"C{:02} {}", j + 1, j + 1, core.label());
            if unused > 0 {
                let _ = write!(out, "\\n{unused} ports unused");
            }
            out.push_str("\"];\n");
        }
        out.push_str("  }\n");
    }
    out.push_str("  subgraph edge {\n    rank=same;\n");
    for (i, &n) in dist.iter().enumerate() {
        let _ = write!(out, "    e{} [label=\"E{:02} {}", i + 1, i + 1, d.edge_label());
        let unused = node_ports.saturating_sub(n);
        if unused > 0 && d.kind != TopologyKind::DirectConnect {
            let _ = write!(out, "\\n{n} of {node_ports} node ports used, {unused} unused");
        }
        out.push_str("\"];\n");
    }
    out.push_str("  }\n");
    out.push_str("  node [shape=point];\n");
    let mut k = 0;
    for (i, &n) in dist.iter().enumerate() {
        for _ in 0..n {
            k += 1;
            let _ = writeln!(out, "  n{k} -- e{};", i + 1);
        }
    }
    // Pass-through blades reach the switch directly; they are not behind an edge.
    for _ in dist.iter().sum::<u64>()..d.node_count {
        k += 1;
        let _ = writeln!(out, "  n{k};");
    }
    if d.core.is_some() {
        for (i, row) in d.wiring_matrix().iter().enumerate() {
            for (j, &links) in row.iter().enumerate() {
                if links > 0 {
                    let _ = writeln!(
                        out,
                        "  e{} -- c{} [label=\"{links}\", weight={links}, penwidth={}];",
                        i + 1,
                        j + 1,
                        1 + links.min(9) / 2
                    );
                }
            }
        }
    } else if d.kind == TopologyKind::DirectConnect && d.edge_count == 2 {
        let links = d.uplinks_per_edge;
        let _ = writeln!(out, "  e1 -- e2 [label=\"{links}\", weight={links}, penwidth={}];", 1 + links.min(9) / 2);
    }
    out.push_str("}\n");
    out
}

/// Ports in use on each core switch.
fn core_port_use(d: &FatTreeDesign) -> Vec<u64> {
    let m = d.wiring_matrix();
    let cores = d.core.map_or(0, |s| s.core_count) as usize;
    (0..cores).map(|j| m.iter().map(|row| row[j]).sum()).collect()
}
