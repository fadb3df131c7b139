//! The canonical JSON document format and reference resolution.

use std::collections::BTreeSet;

use crate::id::Id;
use crate::ontology::model::*;
use crate::ontology::OntologyError;

/// Parses the canonical JSON document. Enumerations are decoded strictly;
/// the error message names any unknown token and its position.
pub fn parse_json(document: &str) -> Result<InstructionalDesign, OntologyError> {
    serde_json::from_str(document).map_err(|e| OntologyError::Syntax(e.to_string()))
}

/// Serializes to the canonical JSON document: two-space indented, all fields
/// present (`null` for absent options), deterministic for normalized designs.
pub fn to_json(design: &InstructionalDesign) -> String {
    let mut out = serde_json::to_string_pretty(design).expect("design serializes");
    out.push('\n');
    out
}

/// Index of every element id in a design plus its declared external stubs.
pub struct RefIndex {
    ids: BTreeSet<Id>,
    stubs: BTreeSet<Id>,
}

impl RefIndex {
    pub fn build(design: &InstructionalDesign) -> Result<Self, OntologyError> {
        let mut ids = BTreeSet::new();
        for id in design.element_ids() {
            if !ids.insert(id.clone()) {
                return Err(OntologyError::DuplicateId(id.clone()));
            }
        }
        let stubs = design
            .context
            .stub_ids()
            .into_iter()
            .cloned()
            .collect::<BTreeSet<_>>();
        Ok(RefIndex { ids, stubs })
    }

    /// True when `id` names an element of the design or a declared stub.
    pub fn resolves(&self, id: &Id) -> bool {
        self.ids.contains(id) || self.stubs.contains(id)
    }

    pub fn contains_element(&self, id: &Id) -> bool {
        self.ids.contains(id)
    }
}

/// Every (source-description, target) link a design carries.
pub fn links(design: &InstructionalDesign) -> Vec<(String, Id)> {
    let mut out = Vec::new();
    let ctx = &design.context;
    out.push(("context.processRef".to_string(), ctx.process_ref.clone()));
    for id in &ctx.goal_refs {
        out.push(("context.goalRefs".to_string(), id.clone()));
    }
    for id in &ctx.content_refs {
        out.push(("context.contentRefs".to_string(), id.clone()));
    }
    for goal in &design.goals {
        let from = format!("goal {}", goal.id);
        out.push((
            format!("{from} achievedByProcess"),
            goal.achieved_by_process.clone(),
        ));
        for id in &goal.prerequisites {
            out.push((format!("{from} prerequisites"), id.clone()));
        }
        for id in &goal.uses_content {
            out.push((format!("{from} usesContent"), id.clone()));
        }
        for (label, link) in [
            ("previousGoal", &goal.previous_goal),
            ("nextGoal", &goal.next_goal),
            ("hasEvaluation", &goal.has_evaluation),
            ("runsInEnvironment", &goal.runs_in_environment),
        ] {
            if let Some(id) = link {
                out.push((format!("{from} {label}"), id.clone()));
            }
        }
        if let Some(pattern) = &goal.pattern {
            for id in &pattern.applies_to {
                out.push((format!("{from} pattern.appliesTo"), id.clone()));
            }
        }
    }
    for play in &design.process.plays {
        if let Some(id) = &play.associated_goal {
            out.push((format!("play {} associatedGoal", play.id), id.clone()));
        }
        for act in &play.acts {
            if let Some(id) = &act.associated_goal {
                out.push((format!("act {} associatedGoal", act.id), id.clone()));
            }
            for scene in &act.scenes {
                if let Some(id) = &scene.associated_goal {
                    out.push((format!("scene {} associatedGoal", scene.id), id.clone()));
                }
                for instruction in &scene.instructions {
                    for id in &instruction.content_refs {
                        out.push((
                            format!("instruction {} contentRefs", instruction.id),
                            id.clone(),
                        ));
                    }
                }
            }
        }
    }
    for object in &design.content.objects {
        for id in &object.fragment_refs {
            out.push((format!("object {} fragmentRefs", object.id), id.clone()));
        }
    }
    for lo in &design.content.learning_objects {
        out.push((format!("learningObject {} processRef", lo.id), lo.process_ref.clone()));
        for id in &lo.object_refs {
            out.push((format!("learningObject {} objectRefs", lo.id), id.clone()));
        }
    }
    out
}

/// Enforces id uniqueness and that every link resolves to an element or a
/// declared stub. Used by parsing and composition, where broken references
/// are hard errors rather than violations.
pub fn check_references(design: &InstructionalDesign) -> Result<(), OntologyError> {
    let index = RefIndex::build(design)?;
    for (from, to) in links(design) {
        if !index.resolves(&to) {
            return Err(OntologyError::DanglingReference { from, to });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "id": "mini",
        "context": {
            "processRef": "proc",
            "goalRefs": [],
            "contentRefs": [],
            "environmentRef": "stub-environment",
            "evaluationRef": "stub-evaluation",
            "rolesRef": "stub-roles",
            "metadata": {}
        },
        "goals": [],
        "process": {
            "id": "proc",
            "instructionalDesignModel": "Merrill",
            "plays": [{
                "id": "p1",
                "title": "Lesson 1",
                "acts": [{
                    "id": "a1",
                    "kind": "motivating",
                    "scenes": [{
                        "id": "s1",
                        "kind": "familiarWords",
                        "instructions": [{
                            "id": "i1",
                            "principles": ["activation"],
                            "activities": [{
                                "id": "i1-act",
                                "kind": "learning",
                                "description": "listen"
                            }],
                            "contentRefs": [],
                            "guidelines": null,
                            "timeLimit": null
                        }],
                        "guidelines": null,
                        "timeLimit": null,
                        "associatedGoal": null
                    }],
                    "guidelines": null,
                    "timeLimit": null,
                    "associatedGoal": null
                }],
                "guidelines": null,
                "timeLimit": null,
                "associatedGoal": null
            }]
        },
        "content": {"fragments": [], "objects": [], "learningObjects": []},
        "ui": {
            "animationStyle": "standard",
            "colorTheme": "default",
            "animationSpeed": "medium",
            "language": "te",
            "background": "plain"
        },
        "metadata": {}
    }"#;

    #[test]
    fn minimal_document_parses_with_one_instruction() {
        let design = crate::ontology::parse_design(MINIMAL).unwrap();
        assert_eq!(design.process.play_count(), 1);
        assert_eq!(design.process.act_count(), 1);
        assert_eq!(design.process.scene_count(), 1);
        assert_eq!(design.process.instruction_count(), 1);
    }

    #[test]
    fn unknown_act_kind_names_token() {
        let doc = MINIMAL.replace("\"motivating\"", "\"DancingAct\"");
        let err = crate::ontology::parse_design(&doc).unwrap_err();
        assert!(err.to_string().contains("DancingAct"), "got: {err}");
    }

    #[test]
    fn duplicate_id_rejected() {
        let doc = MINIMAL.replace("\"id\": \"a1\"", "\"id\": \"p1\"");
        let err = crate::ontology::parse_design(&doc).unwrap_err();
        assert!(matches!(err, OntologyError::DuplicateId(_)), "got: {err}");
    }

    #[test]
    fn dangling_reference_rejected() {
        let doc = MINIMAL.replace("\"processRef\": \"proc\"", "\"processRef\": \"ghost\"");
        let err = crate::ontology::parse_design(&doc).unwrap_err();
        match err {
            OntologyError::DanglingReference { from, to } => {
                assert_eq!(from, "context.processRef");
                assert_eq!(to.as_str(), "ghost");
            }
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn json_roundtrips() {
        let design = crate::ontology::parse_design(MINIMAL).unwrap();
        let json = to_json(&design);
        let again = crate::ontology::parse_design(&json).unwrap();
        assert_eq!(design, again);
        assert_eq!(to_json(&again), json);
    }
}
