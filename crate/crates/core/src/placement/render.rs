use std::fmt::Write;

use super::{ItemKind, RackLayout};

const CELL: usize = 7;

/// Front view of every used rack, side by side, top unit first.
pub fn render_front_view(layout: &RackLayout) -> String {
    let racks: Vec<_> = layout.racks.iter().filter(|r| r.is_used()).collect();
    let height = layout.room.rack_units_per_rack;
    let mut out = String::new();
    let _ = write!(out, "    ");
    for r in &racks {
        let _ = write!(out, " {:^CELL$}", format!("R{:02}", r.index + 1));
    }
    out.push('\n');
    for unit in (1..=height).rev() {
        let _ = write!(out, "{unit:>3} ");
        for r in &racks {
            let cell = r
                .items
                .iter()
                .find(|i| unit >= i.position && unit < i.position + i.rack_units)
                .map(|i| {
                    if unit == i.position + i.rack_units - 1 {
                        match i.kind {
                            ItemKind::NodeBlock => format!("{}x{}", i.label, i.node_count),
                            ItemKind::Reserved => "resv".to_string(),
                            _ => i.label.clone(),
                        }
                    } else {
                        "|".to_string()
                    }
                })
                .unwrap_or_default();
            let mut cell: String = cell.chars().take(CELL).collect();
            if cell.is_empty() {
                cell.push('.');
            }
            let _ = write!(out, "|{cell:^CELL$}");
        }
        out.push_str("|\n");
    }
    out
}

/// Floor plan: one line per row, racks in physical order, showing fill
/// order and used units.
pub fn render_top_view(layout: &RackLayout) -> String {
    let room = &layout.room;
    let mut out = String::new();
    for row in 0..room.rows {
        let arrow = if row % 2 == 0 { "->" } else { "<-" };
        let _ = write!(out, "row {:>2} {arrow} ", row + 1);
        for column in 0..room.racks_per_row {
            let rack = layout
                .racks
                .iter()
                .find(|r| r.row == row && r.column == column)
                .expect("every position has a rack");
            if rack.is_used() {
                let _ = write!(out, "[{:>2}:{:>3}U]", rack.index + 1, rack.used_units);
            } else {
                let _ = write!(out, "[{:^7}]", "--");
            }
        }
        out.push('\n');
    }
    out
}
