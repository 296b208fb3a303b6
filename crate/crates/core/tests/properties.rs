use std::collections::BTreeSet;

use proptest::prelude::*;

use fattree_core::bundled;
use fattree_core::catalog::{
    load_catalog, Catalog, CatalogDocument, LoadOptions, ModularSwitchFamily, MonolithicSwitchModel, Role,
};
use fattree_core::designer::{design, DesignRequest, NodeSpec, TopologyKind};
use fattree_core::placement::{expansion_plan, size_for_capacity, InitialVariant};
use fattree_core::units::{BlockingFactor, Kilograms, Money, Watts};

fn demo() -> Catalog {
    load_catalog(bundled::DEMO_CATALOG).unwrap()
}

fn roles() -> impl Strategy<Value = BTreeSet<Role>> {
    prop_oneof![
        Just(BTreeSet::from([Role::Edge])),
        Just(BTreeSet::from([Role::Core])),
        Just(BTreeSet::from([Role::Edge, Role::Core])),
    ]
}

fn monolithic(i: usize) -> impl Strategy<Value = MonolithicSwitchModel> {
    (2u64..=128, 0i64..10_000_000, 0i64..2_000_000, 1u64..=10, 0i64..100_000, roles()).prop_map(
        move |(ports, cost, mw, ru, g, roles)| MonolithicSwitchModel {
            id: format!("m{i}"),
            name: format!("switch {i}"),
            ports,
            cost: Money(cost),
            power: Watts(mw),
            rack_units: ru,
            weight: Kilograms(g),
            roles,
        },
    )
}

fn modular(i: usize) -> impl Strategy<Value = ModularSwitchFamily> {
    (1u64..=48, 1u64..=12, 0i64..5_000_000, 0u64..=4, roles()).prop_map(move |(per_card, cards, cost, boards, roles)| {
        ModularSwitchFamily {
            id: format!("x{i}"),
            chassis_cost: Money(cost),
            chassis_rack_units: 10,
            chassis_power: Watts(500_000),
            chassis_weight: Kilograms(50_000),
            fabric_board_cost: Money(cost / 3),
            fabric_boards_required: boards,
            line_card_cost: Money(cost / 2),
            ports_per_line_card: per_card,
            max_line_cards: cards,
            per_line_card_power: Watts(40_000),
            per_line_card_weight: Kilograms(3_000),
            roles,
        }
    })
}

fn document() -> impl Strategy<Value = CatalogDocument> {
    (1usize..4, 0usize..3).prop_flat_map(|(m, x)| {
        let mono: Vec<_> = (0..m).map(monolithic).collect();
        let modu: Vec<_> = (0..x).map(modular).collect();
        (mono, modu).prop_map(|(monolithic, modular)| CatalogDocument {
            currency: "USD".to_string(),
            monolithic,
            modular,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn catalog_round_trips(doc in document()) {
        // Random role mixes may lack an edge or core switch; only valid catalogs round-trip.
        if let Ok(cat) = Catalog::from_document(doc, LoadOptions::default()) {
            let again = load_catalog(&cat.to_json()).unwrap();
            prop_assert_eq!(again.configs(), cat.configs());
            prop_assert_eq!(again.document(), cat.document());
        }
    }

    #[test]
    fn wiring_is_consistent(n in 2u64..=648, p in 1u64..=8, q in 1u64..=4) {
        let bl = BlockingFactor::new(p, q).unwrap();
        let req = DesignRequest::rack_mounted(n, bl, Money::from_major(80));
        let Ok(report) = design(&req, &demo()) else { return Ok(()); };
        for d in &report.candidates {
            let dist = d.node_distribution();
            prop_assert_eq!(dist.iter().sum::<u64>(), n);
            if d.kind != TopologyKind::FatTree {
                continue;
            }
            let split = d.split.unwrap();
            prop_assert!(dist.iter().all(|&k| k <= split.ports_to_nodes));
            let m = d.wiring_matrix();
            prop_assert_eq!(m.len() as u64, d.edge_count);
            for row in &m {
                prop_assert_eq!(row.iter().sum::<u64>(), d.uplinks_per_edge);
            }
            let core_ports = d.core_config.as_ref().unwrap().ports;
            for j in 0..d.core_count as usize {
                prop_assert!(m.iter().map(|r| r[j]).sum::<u64>() <= core_ports);
            }
            // Every edge switch honours the blocking factor.
            for &k in &dist {
                prop_assert!(k as u128 * bl.denom() as u128 <= d.uplinks_per_edge as u128 * bl.numer() as u128);
            }
        }
    }

    #[test]
    fn cost_never_drops_with_more_nodes(n in 2u64..648) {
        let cat = demo();
        let cost = |n| {
            let req = DesignRequest::rack_mounted(n, BlockingFactor::NON_BLOCKING, Money::from_major(80));
            design(&req, &cat).unwrap().winner.objective
        };
        prop_assert!(cost(n) <= cost(n + 1));
    }

    #[test]
    fn design_is_deterministic(n in 2u64..=648, p in 1u64..=4) {
        let req = DesignRequest::rack_mounted(n, BlockingFactor::integer(p).unwrap(), Money::from_major(80));
        let cat = load_catalog(bundled::CASE_STUDY_CATALOG).unwrap();
        let a = serde_json::to_string(&design(&req, &cat).ok()).unwrap();
        let b = serde_json::to_string(&design(&req, &cat).ok()).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn growth_plan_is_monotone(current in 20u64..=160, extra in 0u64..=120) {
        let cat = demo();
        let node = NodeSpec::default();
        let bl = BlockingFactor::NON_BLOCKING;
        let cable = Money::from_major(80);
        let plan = expansion_plan(current, current + extra, &cat, bl, &node, cable).unwrap();
        let v1 = plan.variant(InitialVariant::AllSwitchesUpfront).nodes;
        let v2 = plan.variant(InitialVariant::CoreUpfront).nodes;
        prop_assert!(v2 >= v1);
        prop_assert!(plan.target.node_count >= plan.baseline.node_count);
        let bigger = size_for_capacity(current + extra + 1, &cat, bl, &node, cable).unwrap();
        prop_assert!(bigger.node_count >= plan.target.node_count);
    }
}
