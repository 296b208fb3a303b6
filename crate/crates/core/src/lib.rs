//! Cost-optimal two-layer fat-tree design from a catalog of switches.

pub mod catalog;
pub mod cli;
pub mod designer;
pub mod estimator;
pub mod placement;
pub mod report;
pub mod units;

/// Catalogs and requests shipped with the crate.
pub mod bundled {
    /// A single 36-port switch usable as edge and core.
    pub const DEMO_CATALOG: &str = include_str!("../catalogs/demo.json");
    /// Blade embedded switch, a 36-port switch and a 108-port modular family.
    pub const CASE_STUDY_CATALOG: &str = include_str!("../catalogs/case_study.json");
    /// 224 blade nodes, non-blocking.
    pub const CASE_STUDY_REQUEST: &str = include_str!("../catalogs/case_study_request.json");
}
