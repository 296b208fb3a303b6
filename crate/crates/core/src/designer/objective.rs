use crate::designer::NetworkMetrics;
use crate::units::Money;

/// Scores a candidate network; lower is better.
///
/// An objective sees only the aggregate metrics of a design, so any
/// implementation can replace the default acquisition-cost objective.
pub trait Objective: Sync {
    fn evaluate(&self, metrics: &NetworkMetrics) -> Money;
}

/// Switch acquisition cost plus cables at the average cable price.
#[derive(Debug, Clone, Copy, Default)]
pub struct TotalCost;

impl Objective for TotalCost {
    fn evaluate(&self, metrics: &NetworkMetrics) -> Money {
        metrics.cost
    }
}

/// Acquisition cost with power and rack space priced in as well.
#[derive(Debug, Clone, Copy)]
pub struct WeightedCost {
    pub per_watt: Money,
    pub per_rack_unit: Money,
}

impl Objective for WeightedCost {
    fn evaluate(&self, m: &NetworkMetrics) -> Money {
        let power = (m.power.milli() as i128 * self.per_watt.minor() as i128 / 1000) as i64;
        m.cost + Money(power) + self.per_rack_unit * m.rack_units
    }
}

impl<F> Objective for F
where
    F: Fn(&NetworkMetrics) -> Money + Sync,
{
    fn evaluate(&self, metrics: &NetworkMetrics) -> Money {
        self(metrics)
    }
}
