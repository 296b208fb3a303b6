//! Switch catalog: loading, validation and expansion of modular families.
//!
//! A catalog document lists monolithic switch models and modular switch
//! families. Each modular family is expanded into one configuration per
//! installed line-card count; every configuration then behaves like an
//! ordinary switch model with its own port count and price.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::{Kilograms, Money, Watts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Edge,
    Core,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Edge => "edge",
            Role::Core => "core",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonolithicSwitchModel {
    pub id: String,
    pub name: String,
    pub ports: u64,
    pub cost: Money,
    pub power: Watts,
    pub rack_units: u64,
    pub weight: Kilograms,
    pub roles: BTreeSet<Role>,
}

/// A chassis switch sold with a variable number of line cards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModularSwitchFamily {
    pub id: String,
    pub chassis_cost: Money,
    pub chassis_rack_units: u64,
    pub chassis_power: Watts,
    pub chassis_weight: Kilograms,
    pub fabric_board_cost: Money,
    /// Boards needed for a non-blocking internal fabric; always installed.
    pub fabric_boards_required: u64,
    pub line_card_cost: Money,
    pub ports_per_line_card: u64,
    pub max_line_cards: u64,
    #[serde(default)]
    pub per_line_card_power: Watts,
    #[serde(default)]
    pub per_line_card_weight: Kilograms,
    pub roles: BTreeSet<Role>,
}

/// One purchasable switch configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchConfig {
    pub source_id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub configured_line_cards: Option<u64>,
    pub ports: u64,
    pub cost: Money,
    pub power: Watts,
    pub rack_units: u64,
    pub weight: Kilograms,
    pub roles: BTreeSet<Role>,
    pub expandable_ports: u64,
}

impl SwitchConfig {
    /// Stable identifier: the model id, or `family/cards` for modular configurations.
    pub fn label(&self) -> String {
        match self.configured_line_cards {
            Some(k) => format!("{}/{}", self.source_id, k),
            None => self.source_id.clone(),
        }
    }

    pub fn is_modular(&self) -> bool {
        self.configured_line_cards.is_some()
    }

    pub fn has_role(&self, role: Role) -> bool {
        self.roles.contains(&role)
    }

    fn sort_key(&self) -> (&str, u64) {
        (&self.source_id, self.ports)
    }
}

/// Expands a modular family into one configuration per line-card count.
pub fn expand_modular(family: &ModularSwitchFamily) -> Vec<SwitchConfig> {
    let fixed_cost =
        family.chassis_cost + family.fabric_board_cost * family.fabric_boards_required;
    (1..=family.max_line_cards)
        .map(|k| SwitchConfig {
            source_id: family.id.clone(),
            configured_line_cards: Some(k),
            ports: k * family.ports_per_line_card,
            cost: fixed_cost + family.line_card_cost * k,
            power: family.chassis_power + family.per_line_card_power * k,
            rack_units: family.chassis_rack_units,
            weight: family.chassis_weight + family.per_line_card_weight * k,
            roles: family.roles.clone(),
            expandable_ports: (family.max_line_cards - k) * family.ports_per_line_card,
        })
        .collect()
}

impl From<&MonolithicSwitchModel> for SwitchConfig {
    fn from(m: &MonolithicSwitchModel) -> SwitchConfig {
        SwitchConfig {
            source_id: m.id.clone(),
            configured_line_cards: None,
            ports: m.ports,
            cost: m.cost,
            power: m.power,
            rack_units: m.rack_units,
            weight: m.weight,
            roles: m.roles.clone(),
            expandable_ports: 0,
        }
    }
}

/// Serialized form of a catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub currency: String,
    #[serde(default)]
    pub monolithic: Vec<MonolithicSwitchModel>,
    #[serde(default)]
    pub modular: Vec<ModularSwitchFamily>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("invalid catalog field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("duplicate switch id `{0}`")]
    DuplicateId(String),
    #[error("catalog empty")]
    Empty,
    #[error("catalog has no switch usable in the {0} role")]
    MissingRole(Role),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Accept catalogs without any core switches (only star designs possible).
    pub star_only: bool,
}

/// Validated catalog with the edge and core sets used by the designer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    document: CatalogDocument,
    configs: Vec<SwitchConfig>,
}

impl Catalog {
    pub fn from_document(document: CatalogDocument, opts: LoadOptions) -> Result<Catalog, CatalogError> {
        validate(&document)?;
        let mut configs: Vec<SwitchConfig> = document
            .monolithic
            .iter()
            .map(SwitchConfig::from)
            .chain(document.modular.iter().flat_map(expand_modular))
            .collect();
        configs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let catalog = Catalog { document, configs };
        if catalog.configs.is_empty() {
            return Err(CatalogError::Empty);
        }
        if catalog.edge_set().next().is_none() && !opts.star_only {
            return Err(CatalogError::MissingRole(Role::Edge));
        }
        if catalog.core_set().next().is_none() && !opts.star_only {
            return Err(CatalogError::MissingRole(Role::Core));
        }
        Ok(catalog)
    }

    pub fn document(&self) -> &CatalogDocument {
        &self.document
    }

    pub fn currency(&self) -> &str {
        &self.document.currency
    }

    /// Every configuration, ordered by id then ascending port count.
    pub fn configs(&self) -> &[SwitchConfig] {
        &self.configs
    }

    pub fn edge_set(&self) -> impl Iterator<Item = &SwitchConfig> {
        self.configs.iter().filter(|c| c.has_role(Role::Edge))
    }

    pub fn core_set(&self) -> impl Iterator<Item = &SwitchConfig> {
        self.configs.iter().filter(|c| c.has_role(Role::Core))
    }

    /// Looks a configuration up by its [`SwitchConfig::label`].
    pub fn find(&self, label: &str) -> Option<&SwitchConfig> {
        self.configs.iter().find(|c| c.label() == label)
    }

    /// A catalog restricted to a subset of configurations, keeping the source document.
    pub fn restricted<F: Fn(&SwitchConfig) -> bool>(&self, keep: F) -> Catalog {
        Catalog {
            document: self.document.clone(),
            configs: self.configs.iter().filter(|c| keep(c)).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document).expect("catalog serializes")
    }
}

/// Parses and validates a catalog document (JSON).
pub fn load_catalog(source: &str) -> Result<Catalog, CatalogError> {
    load_catalog_with(source, LoadOptions::default())
}

pub fn load_catalog_with(source: &str, opts: LoadOptions) -> Result<Catalog, CatalogError> {
    if source.trim().is_empty() {
        return Err(CatalogError::Empty);
    }
    let document: CatalogDocument =
        serde_json::from_str(source).map_err(|e| CatalogError::Parse(e.to_string()))?;
    Catalog::from_document(document, opts)
}

fn invalid(field: String, reason: &str) -> CatalogError {
    CatalogError::Invalid { field, reason: reason.to_string() }
}

fn validate(doc: &CatalogDocument) -> Result<(), CatalogError> {
    if doc.currency.trim().is_empty() {
        return Err(invalid("currency".into(), "must not be empty"));
    }
    let mut ids = HashSet::new();
    for (i, m) in doc.monolithic.iter().enumerate() {
        let f = |name: &str| format!("monolithic[{i}].{name}");
        if m.id.is_empty() {
            return Err(invalid(f("id"), "must not be empty"));
        }
        if m.id.contains('/') {
            return Err(invalid(f("id"), "must not contain `/`"));
        }
        if m.ports < 2 {
            return Err(invalid(f("ports"), "must be at least 2"));
        }
        if m.cost < Money::ZERO {
            return Err(invalid(f("cost"), "must not be negative"));
        }
        if m.power < Watts::ZERO {
            return Err(invalid(f("power"), "must not be negative"));
        }
        if m.rack_units < 1 {
            return Err(invalid(f("rack_units"), "must be at least 1"));
        }
        if m.weight < Kilograms::ZERO {
            return Err(invalid(f("weight"), "must not be negative"));
        }
        if m.roles.is_empty() {
            return Err(invalid(f("roles"), "must not be empty"));
        }
        if !ids.insert(m.id.as_str()) {
            return Err(CatalogError::DuplicateId(m.id.clone()));
        }
    }
    for (i, m) in doc.modular.iter().enumerate() {
        let f = |name: &str| format!("modular[{i}].{name}");
        if m.id.is_empty() {
            return Err(invalid(f("id"), "must not be empty"));
        }
        if m.id.contains('/') {
            return Err(invalid(f("id"), "must not contain `/`"));
        }
        let money = [
            ("chassis_cost", m.chassis_cost),
            ("fabric_board_cost", m.fabric_board_cost),
            ("line_card_cost", m.line_card_cost),
        ];
        for (name, v) in money {
            if v < Money::ZERO {
                return Err(invalid(f(name), "must not be negative"));
            }
        }
        if m.chassis_rack_units < 1 {
            return Err(invalid(f("chassis_rack_units"), "must be at least 1"));
        }
        if m.fabric_boards_required < 1 {
            return Err(invalid(f("fabric_boards_required"), "must be at least 1"));
        }
        if m.ports_per_line_card < 1 {
            return Err(invalid(f("ports_per_line_card"), "must be at least 1"));
        }
        if m.max_line_cards < 1 {
            return Err(invalid(f("max_line_cards"), "must be at least 1"));
        }
        if m.chassis_power < Watts::ZERO || m.per_line_card_power < Watts::ZERO {
            return Err(invalid(f("chassis_power"), "power must not be negative"));
        }
        if m.chassis_weight < Kilograms::ZERO || m.per_line_card_weight < Kilograms::ZERO {
            return Err(invalid(f("chassis_weight"), "weight must not be negative"));
        }
        if m.roles.is_empty() {
            return Err(invalid(f("roles"), "must not be empty"));
        }
        if !ids.insert(m.id.as_str()) {
            return Err(CatalogError::DuplicateId(m.id.clone()));
        }
    }
    Ok(())
}

/// Per-port characteristics of a switch configuration, as exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerPortMetrics {
    /// Minor currency units per port.
    pub cost_per_port: Ratio<i64>,
    /// Watts per port.
    pub power_per_port: Ratio<i64>,
    pub rack_units_per_port: Ratio<i64>,
    /// Kilograms per port.
    pub weight_per_port: Ratio<i64>,
}

pub fn per_port_metrics(config: &SwitchConfig) -> PerPortMetrics {
    let ports = config.ports as i64;
    PerPortMetrics {
        cost_per_port: config.cost.as_ratio() / ports,
        power_per_port: config.power.as_ratio() / ports,
        rack_units_per_port: Ratio::new(config.rack_units as i64, ports),
        weight_per_port: config.weight.as_ratio() / ports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn case_study_family() -> ModularSwitchFamily {
        ModularSwitchFamily {
            id: "mod108".into(),
            chassis_cost: Money::from_major(25_000),
            chassis_rack_units: 6,
            chassis_power: Watts::ZERO,
            chassis_weight: Kilograms::ZERO,
            fabric_board_cost: Money::from_major(9_000),
            fabric_boards_required: 3,
            line_card_cost: Money::from_major(13_000),
            ports_per_line_card: 18,
            max_line_cards: 6,
            per_line_card_power: Watts::ZERO,
            per_line_card_weight: Kilograms::ZERO,
            roles: [Role::Core].into(),
        }
    }

    const ONE_SWITCH: &str = r#"{
        "currency": "USD",
        "monolithic": [
            {"id": "sw36", "name": "36-port", "ports": 36, "cost": 1100000,
             "power": 152, "rack_units": 1, "weight": 7.2, "roles": ["edge", "core"]}
        ]
    }"#;

    #[test]
    fn loads_single_monolithic_model_into_both_sets() {
        let cat = load_catalog(ONE_SWITCH).unwrap();
        assert_eq!(cat.edge_set().count(), 1);
        assert_eq!(cat.core_set().count(), 1);
        let sw = cat.find("sw36").unwrap();
        assert_eq!(sw.cost, Money::from_major(11_000));
        assert_eq!(sw.expandable_ports, 0);
        assert_eq!(sw.weight, Kilograms(7_200));
    }

    #[test]
    fn expands_case_study_family() {
        let configs = expand_modular(&case_study_family());
        let ports: Vec<u64> = configs.iter().map(|c| c.ports).collect();
        assert_eq!(ports, [18, 36, 54, 72, 90, 108]);
        assert_eq!(configs[5].cost, Money::from_major(130_000));
        assert_eq!(configs[4].cost, Money::from_major(117_000));
        assert_eq!(configs[4].expandable_ports, 18);
        assert_eq!(configs[5].expandable_ports, 0);
    }

    #[test]
    fn single_card_family_is_its_full_configuration() {
        let mut fam = case_study_family();
        fam.max_line_cards = 1;
        let configs = expand_modular(&fam);
        assert_eq!(configs.len(), 1);
        assert_eq!(configs[0].ports, 18);
        assert_eq!(configs[0].cost, Money::from_major(25_000 + 27_000 + 13_000));
        assert_eq!(configs[0].expandable_ports, 0);
    }

    #[test]
    fn modular_power_scales_with_cards() {
        let mut fam = case_study_family();
        fam.chassis_power = Watts::from_units(300);
        fam.per_line_card_power = Watts::from_units(50);
        let configs = expand_modular(&fam);
        assert_eq!(configs[0].power, Watts::from_units(350));
        assert_eq!(configs[5].power, Watts::from_units(600));
    }

    #[test]
    fn loads_family_from_document_as_six_core_configs() {
        let doc = CatalogDocument {
            currency: "USD".into(),
            monolithic: vec![],
            modular: vec![case_study_family()],
        };
        let json = serde_json::to_string(&doc).unwrap();
        let cat = load_catalog_with(&json, LoadOptions { star_only: true }).unwrap();
        assert_eq!(cat.core_set().count(), 6);
        assert_eq!(cat.find("mod108/5").unwrap().ports, 90);
        assert_eq!(
            load_catalog(&json).unwrap_err(),
            CatalogError::MissingRole(Role::Edge)
        );
    }

    #[test]
    fn empty_documents_are_rejected() {
        assert_eq!(load_catalog("").unwrap_err(), CatalogError::Empty);
        assert_eq!(
            load_catalog(r#"{"currency": "USD"}"#).unwrap_err(),
            CatalogError::Empty
        );
        assert_eq!(CatalogError::Empty.to_string(), "catalog empty");
    }

    #[test]
    fn schema_violations_name_the_field() {
        let unknown = ONE_SWITCH.replace("\"weight\"", "\"colour\": 1, \"weight\"");
        let err = load_catalog(&unknown).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");

        let missing = ONE_SWITCH.replace("\"cost\": 1100000,", "");
        let err = load_catalog(&missing).unwrap_err();
        assert!(err.to_string().contains("cost"), "{err}");

        let bad = ONE_SWITCH.replace("\"ports\": 36", "\"ports\": 1");
        match load_catalog(&bad).unwrap_err() {
            CatalogError::Invalid { field, .. } => assert_eq!(field, "monolithic[0].ports"),
            e => panic!("unexpected {e}"),
        }

        let no_roles = ONE_SWITCH.replace("[\"edge\", \"core\"]", "[]");
        assert!(matches!(load_catalog(&no_roles), Err(CatalogError::Invalid { .. })));
    }

    #[test]
    fn duplicate_ids_conflict() {
        let doc = CatalogDocument {
            currency: "USD".into(),
            monolithic: vec![MonolithicSwitchModel {
                id: "mod108".into(),
                name: "clash".into(),
                ports: 36,
                cost: Money::from_major(1),
                power: Watts::ZERO,
                rack_units: 1,
                weight: Kilograms::ZERO,
                roles: [Role::Edge].into(),
            }],
            modular: vec![case_study_family()],
        };
        let err = Catalog::from_document(doc, LoadOptions::default()).unwrap_err();
        assert_eq!(err, CatalogError::DuplicateId("mod108".into()));
    }

    #[test]
    fn per_port_values_of_the_36_port_switch() {
        let cat = load_catalog(ONE_SWITCH).unwrap();
        let m = per_port_metrics(cat.find("sw36").unwrap());
        assert_eq!(m.cost_per_port, Ratio::new(1_100_000, 36));
        assert_eq!(crate::units::ratio_to_decimal(&(m.cost_per_port / 100), 1), "305.6");
        assert_eq!(m.power_per_port, Ratio::new(152, 36));
        assert_eq!(crate::units::ratio_to_decimal(&m.power_per_port, 3), "4.222");
        assert_eq!(m.rack_units_per_port, Ratio::new(1, 36));
    }

    #[test]
    fn ordering_is_by_id_then_ports() {
        let doc = CatalogDocument {
            currency: "USD".into(),
            monolithic: vec![MonolithicSwitchModel {
                id: "a36".into(),
                name: "a".into(),
                ports: 36,
                cost: Money::from_major(1),
                power: Watts::ZERO,
                rack_units: 1,
                weight: Kilograms::ZERO,
                roles: [Role::Edge, Role::Core].into(),
            }],
            modular: vec![case_study_family()],
        };
        let cat = Catalog::from_document(doc, LoadOptions::default()).unwrap();
        let labels: Vec<String> = cat.configs().iter().map(SwitchConfig::label).collect();
        assert_eq!(
            labels,
            ["a36", "mod108/1", "mod108/2", "mod108/3", "mod108/4", "mod108/5", "mod108/6"]
        );
    }
}
