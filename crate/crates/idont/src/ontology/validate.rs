//! Schema validation: every invariant breach is reported as a violation,
//! never an error.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::id::Id;
use crate::ontology::canonical::links;
use crate::ontology::enums::LearningObjectKind;
use crate::ontology::model::*;

/// One invariant breach: a stable rule id, the path of the offending
/// element, and a human-readable message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub path: String,
    pub message: String,
}

impl Violation {
    pub fn new(rule: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            rule: rule.to_string(),
            path: path.into(),
            message: message.into(),
        }
    }
}

pub fn render_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  {} at {}: {}", v.rule, v.path, v.message))
        .collect::<Vec<_>>()
        .join("\n")
}

pub const RULE_DUPLICATE_ID: &str = "DUPLICATE_ID";
pub const RULE_DANGLING_REF: &str = "DANGLING_REF";
pub const RULE_EMPTY_STUB: &str = "EMPTY_STUB";
pub const RULE_CYCLE: &str = "CYCLE";
pub const RULE_NEXT_PREV_MISMATCH: &str = "NEXT_PREV_MISMATCH";
pub const RULE_PROGRESS_RANGE: &str = "PROGRESS_RANGE";
pub const RULE_PRINCIPLE_COVERAGE: &str = "PRINCIPLE_COVERAGE";
pub const RULE_EMPTY_FRAGMENT_REFS: &str = "EMPTY_FRAGMENT_REFS";
pub const RULE_LEVEL_MISMATCH: &str = "LEVEL_MISMATCH";
pub const RULE_UI_LANGUAGE: &str = "UI_LANGUAGE";
pub const RULE_PATTERN_SOURCE_EMPTY: &str = "PATTERN_SOURCE_EMPTY";

/// Checks every schema invariant and returns all breaches. An empty list
/// means the design is schema-valid.
pub fn validate_schema(design: &InstructionalDesign) -> Vec<Violation> {
    let mut out = Vec::new();

    // Id uniqueness. RefIndex refuses duplicate ids, so count them here.
    let mut seen: BTreeMap<&Id, usize> = BTreeMap::new();
    for id in design.element_ids() {
        *seen.entry(id).or_default() += 1;
    }
    for (id, count) in &seen {
        if *count > 1 {
            out.push(Violation::new(
                RULE_DUPLICATE_ID,
                format!("/{id}"),
                format!("id `{id}` declared {count} times"),
            ));
        }
    }

    // Link resolution over the deduplicated id set.
    let ids: BTreeSet<Id> = seen.keys().map(|id| (*id).clone()).collect();
    let stubs: BTreeSet<Id> = design.context.stub_ids().into_iter().cloned().collect();
    for (from, to) in links(design) {
        if !ids.contains(&to) && !stubs.contains(&to) {
            out.push(Violation::new(
                RULE_DANGLING_REF,
                format!("/{to}"),
                format!("{from} does not resolve to `{to}`"),
            ));
        }
    }

    out.extend(check_context_slots(design));
    out.extend(check_goal_graph(design));
    out.extend(check_principle_coverage(design));
    out.extend(check_content(design));
    out.extend(check_ui(design));
    out
}

/// All six context aspect slots must carry non-empty identifiers; the `Id`
/// type enforces non-emptiness, so only the list slots can degenerate here.
/// Stub slots must not alias real elements ambiguously; that is allowed, so
/// nothing further to check for them.
pub fn check_context_slots(design: &InstructionalDesign) -> Vec<Violation> {
    // Id values cannot be empty by construction; this guards programmatic
    // misuse through serde bypass (e.g. future format changes).
    let mut out = Vec::new();
    for (slot, id) in [
        ("environmentRef", &design.context.environment_ref),
        ("evaluationRef", &design.context.evaluation_ref),
        ("rolesRef", &design.context.roles_ref),
    ] {
        if id.as_str().is_empty() {
            out.push(Violation::new(
                RULE_EMPTY_STUB,
                "/context",
                format!("context {slot} stub must be a non-empty identifier"),
            ));
        }
    }
    out
}

fn check_goal_graph(design: &InstructionalDesign) -> Vec<Violation> {
    let mut out = Vec::new();
    let by_id: BTreeMap<&Id, &GoalNode> = design.goals.iter().map(|g| (&g.id, g)).collect();

    for goal in &design.goals {
        if !(0.0..=1.0).contains(&goal.progress) {
            out.push(Violation::new(
                RULE_PROGRESS_RANGE,
                format!("/goals/{}", goal.id),
                format!("progress {} outside [0, 1]", goal.progress),
            ));
        }
        if let Some(pattern) = &goal.pattern {
            if pattern.source_of_pattern.trim().is_empty() {
                out.push(Violation::new(
                    RULE_PATTERN_SOURCE_EMPTY,
                    format!("/goals/{}", goal.id),
                    "goal pattern attached without a source",
                ));
            }
        }
        if let Some(next) = &goal.next_goal {
            match by_id.get(next) {
                Some(n) if n.previous_goal.as_ref() == Some(&goal.id) => {}
                Some(_) => out.push(Violation::new(
                    RULE_NEXT_PREV_MISMATCH,
                    format!("/goals/{}", goal.id),
                    format!("next goal `{next}` does not point back via previousGoal"),
                )),
                None => {}
            }
        }
        if let Some(previous) = &goal.previous_goal {
            match by_id.get(previous) {
                Some(p) if p.next_goal.as_ref() == Some(&goal.id) => {}
                Some(_) => out.push(Violation::new(
                    RULE_NEXT_PREV_MISMATCH,
                    format!("/goals/{}", goal.id),
                    format!("previous goal `{previous}` does not point forward via nextGoal"),
                )),
                None => {}
            }
        }
    }

    // Prerequisite acyclicity: peel nodes without unresolved prerequisites;
    // whatever remains participates in a cycle. Remaining nodes are grouped
    // into strongly connected components for one violation per cycle.
    let mut pending: BTreeMap<&Id, BTreeSet<&Id>> = design
        .goals
        .iter()
        .map(|g| {
            (
                &g.id,
                g.prerequisites
                    .iter()
                    .filter(|p| by_id.contains_key(*p))
                    .collect(),
            )
        })
        .collect();
    loop {
        let ready: Vec<&Id> = pending
            .iter()
            .filter(|(_, deps)| deps.is_empty())
            .map(|(id, _)| *id)
            .collect();
        if ready.is_empty() {
            break;
        }
        for id in &ready {
            pending.remove(*id);
        }
        for deps in pending.values_mut() {
            for id in &ready {
                deps.remove(*id);
            }
        }
    }
    if !pending.is_empty() {
        let stuck: BTreeSet<&Id> = pending.keys().copied().collect();
        let mut reported: BTreeSet<&Id> = BTreeSet::new();
        for &start in &stuck {
            if reported.contains(start) {
                continue;
            }
            let component: BTreeSet<&Id> = stuck
                .iter()
                .copied()
                .filter(|&other| {
                    reaches(other, start, &pending) && reaches(start, other, &pending)
                })
                .collect();
            reported.extend(component.iter().copied());
            let members = component
                .iter()
                .map(|id| id.as_str())
                .collect::<Vec<_>>()
                .join(", ");
            out.push(Violation::new(
                RULE_CYCLE,
                format!("/goals/{start}"),
                format!("prerequisite cycle among goals {{{members}}}"),
            ));
        }
    }
    out
}

fn reaches(from: &Id, to: &Id, graph: &BTreeMap<&Id, BTreeSet<&Id>>) -> bool {
    let mut stack = vec![from];
    let mut seen = BTreeSet::new();
    while let Some(node) = stack.pop() {
        if node == to {
            return true;
        }
        if !seen.insert(node) {
            continue;
        }
        if let Some(deps) = graph.get(node) {
            stack.extend(deps.iter().copied());
        }
    }
    false
}

/// Every scene must carry at least one principle across its instructions.
/// An empty scene is vacuously uncovered and violates too.
pub fn check_principle_coverage(design: &InstructionalDesign) -> Vec<Violation> {
    let mut out = Vec::new();
    for play in &design.process.plays {
        for act in &play.acts {
            for scene in &act.scenes {
                let covered = scene
                    .instructions
                    .iter()
                    .any(|i| !i.principles.is_empty());
                if !covered {
                    out.push(Violation::new(
                        RULE_PRINCIPLE_COVERAGE,
                        format!("/process/play/{}/act/{}/scene/{}", play.id, act.id, scene.id),
                        if scene.instructions.is_empty() {
                            "scene has no instructions, so no principle can cover it".to_string()
                        } else {
                            "no instruction of this scene carries a principle".to_string()
                        },
                    ));
                }
            }
        }
    }
    out
}

fn check_content(design: &InstructionalDesign) -> Vec<Violation> {
    let mut out = Vec::new();
    for object in &design.content.objects {
        if object.fragment_refs.is_empty() {
            out.push(Violation::new(
                RULE_EMPTY_FRAGMENT_REFS,
                format!("/content/objects/{}", object.id),
                "content object aggregates no fragments",
            ));
        }
    }
    let levels: BTreeMap<&Id, ProcessLevel> = design.process_nodes().into_iter().collect();
    for lo in &design.content.learning_objects {
        let required = match lo.kind {
            LearningObjectKind::PlayObject => ProcessLevel::Play,
            LearningObjectKind::ActObject => ProcessLevel::Act,
            LearningObjectKind::SceneObject => ProcessLevel::Scene,
            LearningObjectKind::InstructionObject => ProcessLevel::Instruction,
        };
        match levels.get(&lo.process_ref) {
            Some(level) if *level == required => {}
            Some(level) => out.push(Violation::new(
                RULE_LEVEL_MISMATCH,
                format!("/content/learningObjects/{}", lo.id),
                format!(
                    "{} points at {} `{}`, which is a {}",
                    lo.kind.token(),
                    required.label(),
                    lo.process_ref,
                    level.label()
                ),
            )),
            // Dangling processRef already reported by DANGLING_REF.
            None => {}
        }
    }
    out
}

fn check_ui(design: &InstructionalDesign) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Some(language) = design.metadata.get("language") {
        if language != &design.ui.language {
            out.push(Violation::new(
                RULE_UI_LANGUAGE,
                "/ui",
                format!(
                    "ui language `{}` does not match design language `{language}`",
                    design.ui.language
                ),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_design;

    fn base() -> InstructionalDesign {
        let doc = include_str!("../../tests/data/minimal-design.json");
        parse_design(doc).unwrap()
    }

    #[test]
    fn valid_design_has_no_violations() {
        assert_eq!(validate_schema(&base()), vec![]);
    }

    #[test]
    fn scene_without_principles_violates_coverage() {
        let mut design = base();
        design.process.plays[0].acts[0].scenes[0]
            .instructions
            .iter_mut()
            .for_each(|i| i.principles.clear());
        let violations = validate_schema(&design);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].rule, RULE_PRINCIPLE_COVERAGE);
        assert!(violations[0].path.ends_with("/scene/s1"));
    }

    #[test]
    fn empty_scene_violates_coverage() {
        let mut design = base();
        design.process.plays[0].acts[0].scenes[0].instructions.clear();
        let violations = validate_schema(&design);
        assert!(violations
            .iter()
            .any(|v| v.rule == RULE_PRINCIPLE_COVERAGE));
    }

    #[test]
    fn two_cycle_reported_once_with_both_members() {
        let mut design = base();
        let a = design.goals[0].clone();
        let mut b = a.clone();
        b.id = crate::id::Id::new("goal-b").unwrap();
        design.goals[0].prerequisites = vec![b.id.clone()];
        b.prerequisites = vec![a.id.clone()];
        design.goals.push(b);
        design.normalize();
        let violations = validate_schema(&design);
        let cycles: Vec<&Violation> =
            violations.iter().filter(|v| v.rule == RULE_CYCLE).collect();
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0].message.contains(a.id.as_str()));
        assert!(cycles[0].message.contains("goal-b"));
    }

    #[test]
    fn progress_out_of_range_reported() {
        let mut design = base();
        design.goals[0].progress = 1.5;
        let violations = validate_schema(&design);
        assert!(violations.iter().any(|v| v.rule == RULE_PROGRESS_RANGE));
    }

    #[test]
    fn mismatched_next_prev_reported() {
        let mut design = base();
        let mut b = design.goals[0].clone();
        b.id = crate::id::Id::new("goal-b").unwrap();
        b.previous_goal = None;
        design.goals[0].next_goal = Some(b.id.clone());
        design.goals.push(b);
        design.normalize();
        let violations = validate_schema(&design);
        assert!(violations
            .iter()
            .any(|v| v.rule == RULE_NEXT_PREV_MISMATCH));
    }
}
