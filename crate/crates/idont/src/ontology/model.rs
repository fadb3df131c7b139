//! The composed instructional-design model: context, goals, process tree,
//! content catalog and UI configuration.
//!
//! Reference lists (prerequisites, content refs, goal refs and the three
//! catalogs) are canonically sorted by id so that equality, diffing and both
//! serializations are order-independent. Process-tree children keep their
//! authored order: that order is the lesson.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::id::Id;
use crate::ontology::enums::*;

/// A complete instructional design, the unit of serialization, validation,
/// diffing and packaging.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstructionalDesign {
    pub id: Id,
    pub context: ContextSpec,
    pub goals: Vec<GoalNode>,
    pub process: ProcessTree,
    pub content: ContentCatalog,
    pub ui: UiConfig,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// The context aspect: one slot per collaborating aspect. Environment,
/// evaluation and roles are opaque external stubs; their slots must still
/// carry a non-empty identifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContextSpec {
    pub process_ref: Id,
    pub goal_refs: Vec<Id>,
    pub content_refs: Vec<Id>,
    pub environment_ref: Id,
    pub evaluation_ref: Id,
    pub roles_ref: Id,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl ContextSpec {
    /// Identifiers this context declares as external stubs. Links to these
    /// resolve even though no element with the id exists in the design.
    pub fn stub_ids(&self) -> [&Id; 3] {
        [&self.environment_ref, &self.evaluation_ref, &self.roles_ref]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GoalNode {
    pub id: Id,
    pub name: String,
    pub priority: Level,
    /// Completion fraction in [0, 1].
    pub progress: f64,
    pub deadline: Option<String>,
    pub granularity: Granularity,
    pub knowledge_level: KnowledgeLevel,
    pub cognitive_level: CognitiveLevel,
    #[serde(default)]
    pub prerequisites: Vec<Id>,
    pub previous_goal: Option<Id>,
    pub next_goal: Option<Id>,
    pub achieved_by_process: Id,
    #[serde(default)]
    pub uses_content: Vec<Id>,
    pub has_evaluation: Option<Id>,
    pub runs_in_environment: Option<Id>,
    pub goal_text: Option<String>,
    pub goal_image: Option<String>,
    pub goal_audio: Option<String>,
    pub goal_video: Option<String>,
    pub goal_metadata: Option<String>,
    /// Opaque ABCD classification tag, stored verbatim.
    pub abcd: Option<String>,
    pub pattern: Option<GoalPattern>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GoalPattern {
    pub source_of_pattern: String,
    /// Free text; no structured value domain.
    pub trade_offs: String,
    #[serde(default)]
    pub applies_to: Vec<Id>,
}

/// The process aspect: a strict play → act → scene → instruction hierarchy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProcessTree {
    pub id: Id,
    pub instructional_design_model: String,
    pub plays: Vec<Play>,
}

impl ProcessTree {
    pub const DEFAULT_MODEL: &'static str = "Merrill";

    pub fn play_count(&self) -> usize {
        self.plays.len()
    }

    pub fn act_count(&self) -> usize {
        self.plays.iter().map(|p| p.acts.len()).sum()
    }

    pub fn scene_count(&self) -> usize {
        self.plays
            .iter()
            .flat_map(|p| &p.acts)
            .map(|a| a.scenes.len())
            .sum()
    }

    pub fn instruction_count(&self) -> usize {
        self.plays
            .iter()
            .flat_map(|p| &p.acts)
            .flat_map(|a| &a.scenes)
            .map(|s| s.instructions.len())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Play {
    pub id: Id,
    pub title: String,
    pub acts: Vec<Act>,
    pub guidelines: Option<String>,
    pub time_limit: Option<u32>,
    pub associated_goal: Option<Id>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Act {
    pub id: Id,
    pub kind: ActKind,
    pub scenes: Vec<Scene>,
    pub guidelines: Option<String>,
    pub time_limit: Option<u32>,
    pub associated_goal: Option<Id>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scene {
    pub id: Id,
    pub kind: SceneKind,
    pub instructions: Vec<Instruction>,
    pub guidelines: Option<String>,
    pub time_limit: Option<u32>,
    pub associated_goal: Option<Id>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Instruction {
    pub id: Id,
    /// Principle tags; optional per instruction, but every scene must carry
    /// at least one across its instructions.
    #[serde(default)]
    pub principles: Vec<MerrillPrinciple>,
    pub activities: Vec<Activity>,
    #[serde(default)]
    pub content_refs: Vec<Id>,
    pub guidelines: Option<String>,
    pub time_limit: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Activity {
    pub id: Id,
    pub kind: ActivityKind,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UiConfig {
    pub animation_style: String,
    pub color_theme: String,
    pub animation_speed: Level,
    pub language: String,
    pub background: String,
}

/// The content aspect: raw fragments, typed objects over them, and learning
/// objects tying content to process levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContentCatalog {
    #[serde(default)]
    pub fragments: Vec<ContentFragment>,
    #[serde(default)]
    pub objects: Vec<ContentObject>,
    #[serde(default)]
    pub learning_objects: Vec<LearningObject>,
}

impl ContentCatalog {
    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty() && self.objects.is_empty() && self.learning_objects.is_empty()
    }
}

/// Inline text payloads use the `text:` scheme in `payload_ref`; anything
/// else is an asset path resolved by the packager.
pub const TEXT_PAYLOAD_SCHEME: &str = "text:";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContentFragment {
    pub id: Id,
    pub kind: FragmentKind,
    pub payload_ref: String,
    pub language_tag: String,
}

impl ContentFragment {
    /// The inline text payload, if this fragment carries one.
    pub fn inline_text(&self) -> Option<&str> {
        self.payload_ref.strip_prefix(TEXT_PAYLOAD_SCHEME)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContentObject {
    pub id: Id,
    pub fragment_refs: Vec<Id>,
    pub content_type: ContentType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LearningObject {
    pub id: Id,
    pub kind: LearningObjectKind,
    #[serde(default)]
    pub object_refs: Vec<Id>,
    pub process_ref: Id,
}

/// Which process level an id addresses, for learning-object level checks and
/// path reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessLevel {
    Tree,
    Play,
    Act,
    Scene,
    Instruction,
    Activity,
}

impl ProcessLevel {
    pub fn label(self) -> &'static str {
        match self {
            ProcessLevel::Tree => "process",
            ProcessLevel::Play => "play",
            ProcessLevel::Act => "act",
            ProcessLevel::Scene => "scene",
            ProcessLevel::Instruction => "instruction",
            ProcessLevel::Activity => "activity",
        }
    }
}

impl InstructionalDesign {
    /// Canonicalizes element order: reference lists become sorted,
    /// de-duplicated sets; goals and the three content catalogs sort by id.
    /// Process children keep authored order.
    pub fn normalize(&mut self) {
        fn sort_refs(refs: &mut Vec<Id>) {
            refs.sort();
            refs.dedup();
        }

        sort_refs(&mut self.context.goal_refs);
        sort_refs(&mut self.context.content_refs);
        self.goals.sort_by(|a, b| a.id.cmp(&b.id));
        for goal in &mut self.goals {
            sort_refs(&mut goal.prerequisites);
            sort_refs(&mut goal.uses_content);
            if let Some(pattern) = &mut goal.pattern {
                sort_refs(&mut pattern.applies_to);
            }
        }
        for play in &mut self.process.plays {
            for act in &mut play.acts {
                for scene in &mut act.scenes {
                    for instruction in &mut scene.instructions {
                        sort_refs(&mut instruction.content_refs);
                        instruction.principles.sort();
                        instruction.principles.dedup();
                    }
                }
            }
        }
        self.content.fragments.sort_by(|a, b| a.id.cmp(&b.id));
        self.content.objects.sort_by(|a, b| a.id.cmp(&b.id));
        for object in &mut self.content.objects {
            sort_refs(&mut object.fragment_refs);
        }
        self.content
            .learning_objects
            .sort_by(|a, b| a.id.cmp(&b.id));
        for lo in &mut self.content.learning_objects {
            sort_refs(&mut lo.object_refs);
        }
    }

    /// Walks every process node, reporting its id and level.
    pub fn process_nodes(&self) -> Vec<(&Id, ProcessLevel)> {
        let mut out = vec![(&self.process.id, ProcessLevel::Tree)];
        for play in &self.process.plays {
            out.push((&play.id, ProcessLevel::Play));
            for act in &play.acts {
                out.push((&act.id, ProcessLevel::Act));
                for scene in &act.scenes {
                    out.push((&scene.id, ProcessLevel::Scene));
                    for instruction in &scene.instructions {
                        out.push((&instruction.id, ProcessLevel::Instruction));
                        for activity in &instruction.activities {
                            out.push((&activity.id, ProcessLevel::Activity));
                        }
                    }
                }
            }
        }
        out
    }

    /// All element ids in the design (process nodes, goals, content).
    pub fn element_ids(&self) -> Vec<&Id> {
        let mut out: Vec<&Id> = vec![&self.id];
        out.extend(self.process_nodes().into_iter().map(|(id, _)| id));
        out.extend(self.goals.iter().map(|g| &g.id));
        out.extend(self.content.fragments.iter().map(|f| &f.id));
        out.extend(self.content.objects.iter().map(|o| &o.id));
        out.extend(self.content.learning_objects.iter().map(|l| &l.id));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_design() -> InstructionalDesign {
        InstructionalDesign {
            id: Id::new("d").unwrap(),
            context: ContextSpec {
                process_ref: Id::new("proc").unwrap(),
                goal_refs: vec![],
                content_refs: vec![],
                environment_ref: Id::new("stub-environment").unwrap(),
                evaluation_ref: Id::new("stub-evaluation").unwrap(),
                roles_ref: Id::new("stub-roles").unwrap(),
                metadata: BTreeMap::new(),
            },
            goals: vec![],
            process: ProcessTree {
                id: Id::new("proc").unwrap(),
                instructional_design_model: ProcessTree::DEFAULT_MODEL.to_string(),
                plays: vec![],
            },
            content: ContentCatalog {
                fragments: vec![],
                objects: vec![],
                learning_objects: vec![],
            },
            ui: UiConfig {
                animation_style: "standard".into(),
                color_theme: "default".into(),
                animation_speed: Level::Medium,
                language: "te".into(),
                background: "plain".into(),
            },
            metadata: BTreeMap::new(),
        }
    }

    #[test]
    fn counters_on_empty_tree() {
        let d = tiny_design();
        assert_eq!(d.process.play_count(), 0);
        assert_eq!(d.process.instruction_count(), 0);
        assert_eq!(d.process_nodes().len(), 1);
    }

    #[test]
    fn normalize_sorts_refs() {
        let mut d = tiny_design();
        d.context.goal_refs = vec![
            Id::new("b").unwrap(),
            Id::new("a").unwrap(),
            Id::new("b").unwrap(),
        ];
        d.normalize();
        assert_eq!(
            d.context.goal_refs,
            vec![Id::new("a").unwrap(), Id::new("b").unwrap()]
        );
    }

    #[test]
    fn inline_text_scheme() {
        let frag = ContentFragment {
            id: Id::new("f").unwrap(),
            kind: FragmentKind::Text,
            payload_ref: "text:కల".into(),
            language_tag: "te".into(),
        };
        assert_eq!(frag.inline_text(), Some("కల"));
    }
}
