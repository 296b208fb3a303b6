//! Lower-bound estimates of network metrics from per-port switch figures.
//!
//! A full two-layer fat-tree of identical `P`-port switches connects
//! `P²/2` nodes with `P` edge and `P/2` core switches, i.e. three switch
//! ports per node. Multiplying per-port cost, power, space and weight by
//! `3N` therefore bounds the real network from below; the bound is tight
//! when `N` divides the full size by a factor of `P/2`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, SwitchConfig};
use crate::designer::{design, DesignError, DesignRequest};
use crate::units::{ratio_string, round_to_step, BlockingFactor, Money, MINOR_PER_MAJOR};

pub use crate::catalog::{per_port_metrics, PerPortMetrics};

/// How per-port figures are derived from a switch's totals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortPrecision {
    /// Exact rationals.
    #[default]
    Exact,
    /// Rounded the way a datasheet quotes them: cost to whole currency
    /// units, power and weight to hundredths. Rack space stays exact.
    Datasheet,
}

impl PerPortMetrics {
    pub fn with_precision(self, precision: PortPrecision) -> PerPortMetrics {
        match precision {
            PortPrecision::Exact => self,
            PortPrecision::Datasheet => PerPortMetrics {
                cost_per_port: Ratio::from_integer(round_to_step(self.cost_per_port, MINOR_PER_MAJOR)),
                power_per_port: Ratio::new(round_to_step(self.power_per_port * 100, 1), 100),
                rack_units_per_port: self.rack_units_per_port,
                weight_per_port: Ratio::new(round_to_step(self.weight_per_port * 100, 1), 100),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerPortEstimate {
    pub node_count: u64,
    pub total_ports: u64,
    pub precision: PortPrecision,
    /// Minor currency units per port.
    #[serde(with = "ratio_string")]
    pub cost_per_port: Ratio<i64>,
    #[serde(with = "ratio_string")]
    pub power_per_port: Ratio<i64>,
    /// Minor currency units, switches only.
    #[serde(with = "ratio_string")]
    pub est_switch_cost: Ratio<i64>,
    pub est_cable_count: u64,
    pub est_cable_cost: Money,
    /// Minor currency units, switches plus cables.
    #[serde(with = "ratio_string")]
    pub est_cost: Ratio<i64>,
    /// Watts.
    #[serde(with = "ratio_string")]
    pub est_power: Ratio<i64>,
    #[serde(with = "ratio_string")]
    pub est_rack_units: Ratio<i64>,
    /// Kilograms.
    #[serde(with = "ratio_string")]
    pub est_weight: Ratio<i64>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bundle_factor: Option<u64>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EstimateError {
    #[error("exceeds radix: {nodes} nodes, a two-layer fat-tree of {ports}-port switches connects at most {max}")]
    ExceedsRadix { nodes: u64, ports: u64, max: u64 },
    #[error("node count must be at least 1")]
    NoNodes,
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Largest network of identical `ports`-port switches: `P²/2` nodes.
pub fn full_size(ports: u64) -> u64 {
    ports * (ports / 2)
}

/// Bundle factor `X` for which the per-port estimate is exact, if any.
///
/// `Some(1)` at the full size `P²/2`; `Some(X)` when `N·X = P²/2` for a
/// factor `1 < X < P/2` of `P/2`.
pub fn exactness_condition(nodes: u64, ports: u64) -> Option<u64> {
    if ports < 4 || !ports.is_multiple_of(2) {
        return None;
    }
    let half = ports / 2;
    let full = ports * half;
    if nodes == full {
        return Some(1);
    }
    (2..half).find(|x| half.is_multiple_of(*x) && nodes * x == full)
}

/// Per-port lower bound for `nodes` on a network built only from `config`.
///
/// Cables are counted as one per node plus one per node-equivalent of
/// uplink capacity (`2N`), or `N` for blades whose node links are internal.
pub fn lower_bound_estimate(
    nodes: u64,
    config: &SwitchConfig,
    avg_cable_cost: Money,
    blade: bool,
    precision: PortPrecision,
) -> Result<PerPortEstimate, EstimateError> {
    if nodes == 0 {
        return Err(EstimateError::NoNodes);
    }
    let max = full_size(config.ports);
    if nodes > max {
        return Err(EstimateError::ExceedsRadix { nodes, ports: config.ports, max });
    }
    let pp = per_port_metrics(config).with_precision(precision);
    let total_ports = 3 * nodes;
    let scale = Ratio::from_integer(total_ports as i64);
    let est_cable_count = if blade { nodes } else { 2 * nodes };
    let est_cable_cost = avg_cable_cost * est_cable_count;
    let est_switch_cost = pp.cost_per_port * scale;
    let bundle_factor = exactness_condition(nodes, config.ports);
    Ok(PerPortEstimate {
        node_count: nodes,
        total_ports,
        precision,
        cost_per_port: pp.cost_per_port,
        power_per_port: pp.power_per_port,
        est_switch_cost,
        est_cable_count,
        est_cable_cost,
        est_cost: est_switch_cost + est_cable_cost.as_ratio(),
        est_power: pp.power_per_port * scale,
        est_rack_units: pp.rack_units_per_port * scale,
        est_weight: pp.weight_per_port * scale,
        exact: bundle_factor.is_some(),
        bundle_factor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub node_count: u64,
    /// Cost of the optimal design, if one exists.
    pub actual_cost: Option<Money>,
    /// Per-port estimate in minor units; only past the star region.
    #[serde(with = "opt_ratio", default)]
    pub estimated_cost: Option<Ratio<i64>>,
    pub exact: bool,
}

impl SweepRow {
    /// Relative shortfall of the estimate, `(actual - est) / actual`.
    pub fn gap(&self) -> Option<Ratio<i64>> {
        let actual = self.actual_cost?.minor();
        let est = self.estimated_cost?;
        (actual > 0).then(|| (Ratio::from_integer(actual) - est) / actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub switch: String,
    pub rows: Vec<SweepRow>,
    #[serde(with = "opt_ratio", default)]
    pub median_gap: Option<Ratio<i64>>,
}

/// Actual optimal cost next to the per-port estimate for every node count in `from..=to`.
pub fn sweep(
    catalog: &Catalog,
    config: &SwitchConfig,
    from: u64,
    to: u64,
    blocking_factor: BlockingFactor,
    avg_cable_cost: Money,
    precision: PortPrecision,
) -> SweepTable {
    let rows: Vec<SweepRow> = (from.max(2)..=to)
        .map(|n| {
            let request = DesignRequest::rack_mounted(n, blocking_factor, avg_cable_cost);
            let actual_cost = design(&request, catalog).ok().map(|r| r.winner.metrics.cost);
            let est = (n > config.ports)
                .then(|| lower_bound_estimate(n, config, avg_cable_cost, false, precision).ok())
                .flatten();
            SweepRow {
                node_count: n,
                actual_cost,
                estimated_cost: est.as_ref().map(|e| e.est_cost),
                exact: est.is_some_and(|e| e.exact),
            }
        })
        .collect();
    let mut gaps: Vec<Ratio<i64>> = rows.iter().filter_map(SweepRow::gap).collect();
    gaps.sort();
    let median_gap = match gaps.len() {
        0 => None,
        len if len % 2 == 1 => Some(gaps[len / 2]),
        len => Some((gaps[len / 2 - 1] + gaps[len / 2]) / 2),
    };
    SweepTable { switch: config.label(), rows, median_gap }
}

mod opt_ratio {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => crate::units::ratio_string::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Ratio<i64>>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| {
            let (n, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let n = n.parse::<i64>().map_err(serde::de::Error::custom)?;
            let q = q.parse::<i64>().map_err(serde::de::Error::custom)?;
            if q == 0 {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            Ok(Ratio::new(n, q))
        })
        .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::catalog::load_catalog;
    use crate::units::ratio_to_decimal;

    fn ib36() -> SwitchConfig {
        load_catalog(bundled::DEMO_CATALOG).unwrap().find("ib36").unwrap().clone()
    }

    #[test]
    fn exactness_factors_for_36_ports() {
        let hits: Vec<(u64, u64)> = (1..=648)
            .filter_map(|n| exactness_condition(n, 36).map(|x| (n, x)))
            .collect();
        assert_eq!(hits, [(72, 9), (108, 6), (216, 3), (324, 2), (648, 1)]);
        assert_eq!(exactness_condition(60, 36), None);
        assert_eq!(exactness_condition(36, 36), None);
        assert_eq!(exactness_condition(10, 5), None);
    }

    #[test]
    fn full_configuration_with_datasheet_figures() {
        let est = lower_bound_estimate(648, &ib36(), Money::from_major(80), false, PortPrecision::Datasheet)
            .unwrap();
        assert_eq!(est.total_ports, 1944);
        assert_eq!(est.est_switch_cost, Ratio::from_integer(59_486_400));
        assert_eq!(ratio_to_decimal(&est.est_power, 0), "8204");
        assert_eq!(est.est_rack_units, Ratio::from_integer(54));
        assert_eq!(est.bundle_factor, Some(1));
    }

    #[test]
    fn full_configuration_with_exact_figures() {
        let est = lower_bound_estimate(648, &ib36(), Money::ZERO, false, PortPrecision::Exact).unwrap();
        // 54 switches at list price and nameplate power.
        assert_eq!(est.est_switch_cost, Ratio::from_integer(54 * 1_100_000));
        assert_eq!(est.est_power, Ratio::from_integer(54 * 152));
    }

    #[test]
    fn estimate_beyond_full_size_is_rejected() {
        let err = lower_bound_estimate(649, &ib36(), Money::ZERO, false, PortPrecision::Exact).unwrap_err();
        assert_eq!(err, EstimateError::ExceedsRadix { nodes: 649, ports: 36, max: 648 });
    }

    #[test]
    fn blade_estimates_count_only_uplink_cables() {
        let est = lower_bound_estimate(72, &ib36(), Money::from_major(80), true, PortPrecision::Exact).unwrap();
        assert_eq!(est.est_cable_count, 72);
    }

    #[test]
    fn hundred_nodes_is_a_strict_lower_bound() {
        let cat = load_catalog(bundled::DEMO_CATALOG).unwrap();
        let est = lower_bound_estimate(100, &ib36(), Money::from_major(80), false, PortPrecision::Exact).unwrap();
        assert!(!est.exact);
        let req = DesignRequest::rack_mounted(100, BlockingFactor::NON_BLOCKING, Money::from_major(80));
        let actual = design(&req, &cat).unwrap().winner.metrics.cost;
        assert!(est.est_cost < actual.as_ratio());
    }

    #[test]
    fn sweep_marks_estimates_only_past_star_region() {
        let cat = load_catalog(bundled::DEMO_CATALOG).unwrap();
        let t = sweep(&cat, &ib36(), 30, 40, BlockingFactor::NON_BLOCKING, Money::from_major(80), PortPrecision::Exact);
        assert_eq!(t.rows.len(), 11);
        assert!(t.rows[6].estimated_cost.is_none());
        assert!(t.rows[7].estimated_cost.is_some());
        assert!(t.median_gap.is_some());
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<SweepTable>(&json).unwrap(), t);
    }
}
