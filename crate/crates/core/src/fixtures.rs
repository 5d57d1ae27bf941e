//! The bundled aircraft structure assembly fixture family.
//!
//! A UR10 robot inside a fuselage work cell screws collars onto rivets;
//! each rivet class needs a matching end-effector, the robot mounts one
//! tool at a time, and the goal is every rivet fastened. The generator is
//! parameterized over rivet count and rivet-class count and is
//! byte-deterministic for fixed parameters.
//!
//! The encoding: types {robot, end-effector, rivet, rivet-type, station},
//! predicates {at, equipped, hand-empty, fastened, rivet-has-type,
//! ee-matches-type}, actions {move, equip, unequip, screw}. Stations exist
//! as structure in the work cell (and as the `at`/`move` theory in the
//! domain) but carry no PDDL stereotypes: rivet frame positions travel as
//! opaque product data, so problem instances stay position-free.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::{
    load_product_data, Element, ElementKind, ModelDocument, ProductRecordSet, Relation,
    RelationKind, StereotypeApplication,
};
use crate::profile::{parse_rules, RuleSet};

/// The base fixture's tool magazine holds two end-effectors.
pub const TOOL_MAGAZINE_CAPACITY: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureError {
    /// Counts must be at least one.
    Empty,
    /// More rivet classes than rivets.
    MoreTypesThanRivets { num_rivets: usize, num_types: usize },
    /// More rivet classes than available end-effectors.
    MagazineExceeded { num_types: usize },
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Empty => write!(f, "fixture needs at least one rivet and one type"),
            FixtureError::MoreTypesThanRivets { num_rivets, num_types } => write!(
                f,
                "cannot assign {num_types} rivet classes to {num_rivets} rivet(s)"
            ),
            FixtureError::MagazineExceeded { num_types } => write!(
                f,
                "{num_types} rivet classes exceed the tool magazine capacity of \
                 {TOOL_MAGAZINE_CAPACITY}"
            ),
        }
    }
}

impl std::error::Error for FixtureError {}

/// A generated fixture instance: the model document, the product records,
/// and the annotation rules, plus their canonical on-disk texts.
#[derive(Debug, Clone)]
pub struct AircraftFixture {
    pub model: ModelDocument,
    pub records: ProductRecordSet,
    pub rules: RuleSet,
    num_rivets: usize,
    num_types: usize,
}

const RULES_TEXT: &str = r#"# Product annotation rules for the aircraft assembly fixture.
# Each rivet record becomes one object, one classification atom, and one
# fastening goal. The frame-position column is opaque payload.
key = "id"

[[rule]]
column = "id"
kind = "object"
template = "rivet"

[[rule]]
column = "id"
kind = "init"
template = "(rivet-has-type <id> <rivet-type>)"

[[rule]]
column = "id"
kind = "goal"
template = "(fastened <id>)"
"#;

impl AircraftFixture {
    pub fn num_rivets(&self) -> usize {
        self.num_rivets
    }

    pub fn num_types(&self) -> usize {
        self.num_types
    }

    /// Canonical `.sysmodel` text.
    pub fn model_text(&self) -> String {
        crate::model::save_model(&self.model)
    }

    /// Canonical product CSV text.
    pub fn product_text(&self) -> String {
        product_csv(self.num_rivets, self.num_types)
    }

    /// Canonical `.rules` text.
    pub fn rules_text(&self) -> String {
        RULES_TEXT.to_string()
    }
}

fn type_letter(k: usize) -> char {
    (b'a' + k as u8) as char
}

fn product_csv(num_rivets: usize, num_types: usize) -> String {
    let mut out = String::from("id,frame-position,rivet-type\n");
    for i in 0..num_rivets {
        let frame = i % 2 + 1;
        out.push_str(&format!(
            "r{},frame-{:02},type-{}\n",
            i + 1,
            frame,
            type_letter(i % num_types)
        ));
    }
    out
}

struct ModelBuilder {
    elements: Vec<Element>,
    relations: Vec<Relation>,
}

impl ModelBuilder {
    fn plain(&mut self, id: &str, kind: ElementKind, name: &str, owner: Option<&str>) {
        self.elements.push(Element {
            id: id.to_string(),
            kind,
            name: name.to_string(),
            owner: owner.map(str::to_string),
            stereotypes: Vec::new(),
        });
    }

    fn tagged(
        &mut self,
        id: &str,
        kind: ElementKind,
        name: &str,
        owner: Option<&str>,
        stereotype: &str,
        tags: &[(&str, &str)],
    ) {
        self.elements.push(Element {
            id: id.to_string(),
            kind,
            name: name.to_string(),
            owner: owner.map(str::to_string),
            stereotypes: vec![StereotypeApplication {
                name: stereotype.to_string(),
                tags: tags
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect::<BTreeMap<_, _>>(),
            }],
        });
    }

    fn relate(&mut self, id: &str, kind: RelationKind, source: &str, target: &str) {
        self.relations.push(Relation {
            id: id.to_string(),
            kind,
            source: source.to_string(),
            target: target.to_string(),
        });
    }
}

/// Build the aircraft fixture with `num_rivets` rivets spread round-robin
/// over `num_types` rivet classes (one matching end-effector per class).
pub fn build_aircraft_fixture(
    num_rivets: usize,
    num_types: usize,
) -> Result<AircraftFixture, FixtureError> {
    if num_rivets == 0 || num_types == 0 {
        return Err(FixtureError::Empty);
    }
    if num_types > num_rivets {
        return Err(FixtureError::MoreTypesThanRivets { num_rivets, num_types });
    }
    if num_types > TOOL_MAGAZINE_CAPACITY {
        return Err(FixtureError::MagazineExceeded { num_types });
    }

    use ElementKind::{Activity, Block, Constraint, Part, Value};
    let mut b = ModelBuilder {
        elements: Vec::new(),
        relations: Vec::new(),
    };

    b.tagged(
        "aircraft-assembly",
        Block,
        "Aircraft Assembly System",
        None,
        "pddl-domain",
        &[("name", "aircraft")],
    );

    b.plain("type-library", Block, "Planning Types", Some("aircraft-assembly"));
    for (id, name, pddl) in [
        ("type-robot", "Industrial Robot", "robot"),
        ("type-end-effector", "End Effector", "end-effector"),
        ("type-rivet", "Rivet", "rivet"),
        ("type-rivet-class", "Rivet Classification", "rivet-type"),
        ("type-station", "Work Station", "station"),
    ] {
        b.tagged(id, Block, name, Some("type-library"), "pddl-type", &[("name", pddl)]);
    }

    b.plain("state-vocabulary", Block, "State Vocabulary", Some("aircraft-assembly"));
    for (id, name, pddl, params) in [
        ("pred-at", "Robot Position", "at", "?r - robot ?s - station"),
        ("pred-equipped", "Tool Mounted", "equipped", "?r - robot ?e - end-effector"),
        ("pred-hand-empty", "Flange Free", "hand-empty", "?r - robot"),
        ("pred-fastened", "Collar Fastened", "fastened", "?v - rivet"),
        (
            "pred-rivet-has-type",
            "Rivet Classified",
            "rivet-has-type",
            "?v - rivet ?t - rivet-type",
        ),
        (
            "pred-ee-matches-type",
            "Tool Compatibility",
            "ee-matches-type",
            "?e - end-effector ?t - rivet-type",
        ),
    ] {
        b.tagged(
            id,
            Value,
            name,
            Some("state-vocabulary"),
            "pddl-predicate",
            &[("name", pddl), ("params", params)],
        );
    }

    b.plain("behavior-library", Block, "Assembly Behaviors", Some("aircraft-assembly"));
    struct ActionSpec<'a> {
        id: &'a str,
        label: &'a str,
        pddl: &'a str,
        params: &'a [(&'a str, &'a str)],
        pre: &'a [&'a str],
        eff: &'a [&'a str],
    }
    let actions = [
        ActionSpec {
            id: "act-move",
            label: "Move Between Stations",
            pddl: "move",
            params: &[("?r", "robot"), ("?from", "station"), ("?to", "station")],
            pre: &["(at ?r ?from)"],
            eff: &["(not (at ?r ?from))", "(at ?r ?to)"],
        },
        ActionSpec {
            id: "act-equip",
            label: "Equip End Effector",
            pddl: "equip",
            params: &[("?r", "robot"), ("?e", "end-effector")],
            pre: &["(hand-empty ?r)"],
            eff: &["(not (hand-empty ?r))", "(equipped ?r ?e)"],
        },
        ActionSpec {
            id: "act-unequip",
            label: "Stow End Effector",
            pddl: "unequip",
            params: &[("?r", "robot"), ("?e", "end-effector")],
            pre: &["(equipped ?r ?e)"],
            eff: &["(not (equipped ?r ?e))", "(hand-empty ?r)"],
        },
        ActionSpec {
            id: "act-screw",
            label: "Screw Collar",
            pddl: "screw",
            params: &[
                ("?r", "robot"),
                ("?e", "end-effector"),
                ("?v", "rivet"),
                ("?t", "rivet-type"),
            ],
            pre: &[
                "(equipped ?r ?e)",
                "(ee-matches-type ?e ?t)",
                "(rivet-has-type ?v ?t)",
            ],
            eff: &["(fastened ?v)"],
        },
    ];
    for a in &actions {
        b.tagged(
            a.id,
            Activity,
            a.label,
            Some("behavior-library"),
            "pddl-action",
            &[("name", a.pddl)],
        );
        for (i, (var, ty)) in a.params.iter().enumerate() {
            b.tagged(
                &format!("{}-p{}", a.id, i + 1),
                Value,
                &format!("Parameter {var}"),
                Some(a.id),
                "pddl-parameter",
                &[("name", var), ("type", ty)],
            );
        }
        for (i, lit) in a.pre.iter().enumerate() {
            b.tagged(
                &format!("{}-pre{}", a.id, i + 1),
                Constraint,
                "Precondition",
                Some(a.id),
                "pddl-precondition",
                &[("literal", lit)],
            );
        }
        for (i, lit) in a.eff.iter().enumerate() {
            b.tagged(
                &format!("{}-eff{}", a.id, i + 1),
                Constraint,
                "Effect",
                Some(a.id),
                "pddl-effect",
                &[("literal", lit)],
            );
        }
    }

    // The physical work cell. Frame stations are structure only: rivet
    // positions stay opaque product payload, so no pddl-object here.
    b.plain("fuselage-cell", Block, "Fuselage Work Cell", Some("aircraft-assembly"));
    b.plain("station-frame-01", Part, "Frame Station 01", Some("fuselage-cell"));
    b.plain("station-frame-02", Part, "Frame Station 02", Some("fuselage-cell"));
    b.tagged(
        "ur10-robot",
        Part,
        "UR10 Robotic Arm",
        Some("fuselage-cell"),
        "pddl-object",
        &[("name", "robot1"), ("type", "robot")],
    );
    b.plain("robot-flange", ElementKind::Port, "Tool Flange", Some("ur10-robot"));
    b.plain("tool-magazine", Block, "End Effector Magazine", Some("fuselage-cell"));
    let tool_names = ["ee-alpha", "ee-beta"];
    for (k, tool) in tool_names.iter().enumerate().take(num_types) {
        b.tagged(
            &format!("collar-tool-{}", type_letter(k)),
            Part,
            &format!("Collar Tool {}", type_letter(k).to_ascii_uppercase()),
            Some("tool-magazine"),
            "pddl-object",
            &[("name", tool), ("type", "end-effector")],
        );
    }

    b.plain("rivet-catalog", Block, "Rivet Catalog", Some("aircraft-assembly"));
    for k in 0..num_types {
        let class_name = format!("type-{}", type_letter(k));
        b.tagged(
            &format!("rivet-class-{}", type_letter(k)),
            Block,
            &format!("Rivet Class {}", type_letter(k).to_ascii_uppercase()),
            Some("rivet-catalog"),
            "pddl-object",
            &[("name", class_name.as_str()), ("type", "rivet-type")],
        );
    }

    b.tagged(
        "assembly-mission",
        Block,
        "Collar Assembly Mission",
        Some("aircraft-assembly"),
        "pddl-problem",
        &[("name", "aircraft-base")],
    );
    b.tagged(
        "init-robot-idle",
        Constraint,
        "Robot starts idle",
        Some("assembly-mission"),
        "pddl-init",
        &[("literal", "(hand-empty robot1)")],
    );
    for (k, tool) in tool_names.iter().enumerate().take(num_types) {
        let lit = format!("(ee-matches-type {tool} type-{})", type_letter(k));
        b.tagged(
            &format!("init-tool-{}", type_letter(k)),
            Constraint,
            "Tool compatibility",
            Some("assembly-mission"),
            "pddl-init",
            &[("literal", lit.as_str())],
        );
    }

    for a in &actions {
        b.relate(
            &format!("alloc-{}", a.pddl),
            RelationKind::Allocation,
            a.id,
            "ur10-robot",
        );
    }
    b.relate(
        "assoc-flange-magazine",
        RelationKind::Association,
        "robot-flange",
        "tool-magazine",
    );
    b.relate(
        "dep-mission-cell",
        RelationKind::Dependency,
        "assembly-mission",
        "fuselage-cell",
    );

    let model = ModelDocument {
        model: "Aircraft Assembly".to_string(),
        elements: b.elements,
        relations: b.relations,
    };

    let csv = product_csv(num_rivets, num_types);
    let records = load_product_data(&csv, "id").expect("generated product data is well-formed");
    let rules = parse_rules(RULES_TEXT).expect("bundled rules are well-formed");

    Ok(AircraftFixture {
        model,
        records,
        rules,
        num_rivets,
        num_types,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_enforced() {
        assert_eq!(build_aircraft_fixture(0, 0).unwrap_err(), FixtureError::Empty);
        assert!(matches!(
            build_aircraft_fixture(1, 2).unwrap_err(),
            FixtureError::MoreTypesThanRivets { .. }
        ));
        assert!(matches!(
            build_aircraft_fixture(9, 3).unwrap_err(),
            FixtureError::MagazineExceeded { .. }
        ));
    }

    #[test]
    fn generation_is_byte_deterministic() {
        let a = build_aircraft_fixture(4, 2).unwrap();
        let b = build_aircraft_fixture(4, 2).unwrap();
        assert_eq!(a.model_text(), b.model_text());
        assert_eq!(a.product_text(), b.product_text());
        assert_eq!(a.rules_text(), b.rules_text());
    }

    #[test]
    fn smallest_instance_has_one_tool() {
        let f = build_aircraft_fixture(1, 1).unwrap();
        assert_eq!(f.records.len(), 1);
        let tools: Vec<_> = f
            .model
            .elements
            .iter()
            .filter(|e| e.id.starts_with("collar-tool-"))
            .collect();
        assert_eq!(tools.len(), 1);
    }

    #[test]
    fn rivet_types_are_assigned_round_robin() {
        let f = build_aircraft_fixture(4, 2).unwrap();
        let types: Vec<_> = (0..4)
            .map(|row| f.records.value(row, "rivet-type").unwrap().to_string())
            .collect();
        assert_eq!(types, vec!["type-a", "type-b", "type-a", "type-b"]);
    }

    #[test]
    fn model_is_loadable_and_conformant() {
        let f = build_aircraft_fixture(4, 2).unwrap();
        let reloaded = crate::model::load_model(&f.model_text()).unwrap();
        assert_eq!(reloaded, f.model);
        let diags = crate::profile::check_profile(
            &reloaded,
            crate::profile::StereotypeCatalog::standard(),
        );
        assert!(diags.is_empty(), "{diags:?}");
    }
}
