use std::fmt;

use serde::{Deserialize, Serialize};

use crate::designer::FatTreeDesign;
use crate::units::{Money, Watts};

/// Hard limits a design must respect. Absent fields are unconstrained.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_network_rack_units: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_spare_core_ports: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_network_power: Option<Watts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_network_cost: Option<Money>,
}

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        *self == ConstraintSet::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    MaxNetworkRackUnits,
    MinSpareCorePorts,
    MaxNetworkPower,
    MaxNetworkCost,
}

/// A failed constraint with the limit and the candidate's value, both in
/// base units (U, ports, milliwatts, minor currency units).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: ConstraintKind,
    pub limit: i64,
    pub actual: i64,
}

impl Violation {
    fn excess(&self) -> u64 {
        self.actual.abs_diff(self.limit)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constraint {
            ConstraintKind::MaxNetworkRackUnits => write!(
                f,
                "max_network_rack_units: network needs {} U, limit {} U",
                self.actual, self.limit
            ),
            ConstraintKind::MinSpareCorePorts => write!(
                f,
                "min_spare_core_ports: {} spare core ports, at least {} required",
                self.actual, self.limit
            ),
            ConstraintKind::MaxNetworkPower => write!(
                f,
                "max_network_power: network draws {}, limit {}",
                Watts(self.actual),
                Watts(self.limit)
            ),
            ConstraintKind::MaxNetworkCost => write!(
                f,
                "max_network_cost: network costs {}, limit {}",
                Money(self.actual),
                Money(self.limit)
            ),
        }
    }
}

/// Evaluates every present constraint against a candidate.
pub fn check_constraints(candidate: &FatTreeDesign, constraints: &ConstraintSet) -> Result<(), Vec<Violation>> {
    let m = &candidate.metrics;
    let mut violations = Vec::new();
    if let Some(limit) = constraints.max_network_rack_units {
        if m.rack_units > limit {
            violations.push(Violation {
                constraint: ConstraintKind::MaxNetworkRackUnits,
                limit: limit as i64,
                actual: m.rack_units as i64,
            });
        }
    }
    if let Some(limit) = constraints.min_spare_core_ports {
        if candidate.spare_core_ports < limit {
            violations.push(Violation {
                constraint: ConstraintKind::MinSpareCorePorts,
                limit: limit as i64,
                actual: candidate.spare_core_ports as i64,
            });
        }
    }
    if let Some(limit) = constraints.max_network_power {
        if m.power > limit {
            violations.push(Violation {
                constraint: ConstraintKind::MaxNetworkPower,
                limit: limit.milli(),
                actual: m.power.milli(),
            });
        }
    }
    if let Some(limit) = constraints.max_network_cost {
        if m.cost > limit {
            violations.push(Violation {
                constraint: ConstraintKind::MaxNetworkCost,
                limit: limit.minor(),
                actual: m.cost.minor(),
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// For each violated constraint kind, the violation that came closest to passing.
pub(crate) fn binding_constraints<'a, I>(rejections: I) -> Vec<Violation>
where
    I: IntoIterator<Item = &'a Violation>,
{
    let mut closest: Vec<Violation> = Vec::new();
    for v in rejections {
        match closest.iter_mut().find(|c| c.constraint == v.constraint) {
            Some(c) if v.excess() < c.excess() => *c = v.clone(),
            Some(_) => {}
            None => closest.push(v.clone()),
        }
    }
    closest.sort_by_key(|v| v.constraint);
    closest
}
