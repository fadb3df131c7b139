//! Variant deltas: classified diffs between two designs, and patching.
//!
//! A delta classifies differences into structural process changes, content
//! changes, guideline changes, goal changes, UI changes and generic field
//! edits. Applying `diff(a, b)` to `a` reproduces `b` exactly (designs are
//! compared in canonical form).
//!
//! Process children are aligned by a weighted longest-common-subsequence:
//! an id match pairs strongly, a kind match weakly. Removing one act is then
//! a single structural removal, while renaming every id leaves the
//! structural list empty, as kind-isomorphism demands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::id::Id;
use crate::ontology::model::InstructionalDesign;
use crate::ontology::OntologyError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VariantDelta {
    pub structural_changes: Vec<StructuralChange>,
    pub content_changes: Vec<ContentChange>,
    pub guideline_changes: Vec<GuidelineChange>,
    pub goal_changes: Vec<GoalChange>,
    pub ui_changes: Vec<UiChange>,
    /// Field-level edits not covered by the classified lists: ids, titles,
    /// metadata, context, principles, activities and similar node details.
    pub field_changes: Vec<FieldChange>,
}

impl VariantDelta {
    pub fn is_empty(&self) -> bool {
        self.structural_changes.is_empty()
            && self.content_changes.is_empty()
            && self.guideline_changes.is_empty()
            && self.goal_changes.is_empty()
            && self.ui_changes.is_empty()
            && self.field_changes.is_empty()
    }

    pub fn change_count(&self) -> usize {
        self.structural_changes.len()
            + self.content_changes.len()
            + self.guideline_changes.len()
            + self.goal_changes.len()
            + self.ui_changes.len()
            + self.field_changes.len()
    }
}

/// Added/removed/retyped process nodes. Removal paths address the left
/// design, additions and retypes the right one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase")]
pub enum StructuralChange {
    #[serde(rename_all = "camelCase")]
    Added { path: String, node: Value },
    #[serde(rename_all = "camelCase")]
    Removed { path: String },
    #[serde(rename_all = "camelCase")]
    Retyped {
        path: String,
        old_kind: String,
        new_kind: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ContentSection {
    Fragments,
    Objects,
    LearningObjects,
}

impl ContentSection {
    fn key(self) -> &'static str {
        match self {
            ContentSection::Fragments => "fragments",
            ContentSection::Objects => "objects",
            ContentSection::LearningObjects => "learningObjects",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase")]
pub enum ContentChange {
    #[serde(rename_all = "camelCase")]
    Added { section: ContentSection, value: Value },
    #[serde(rename_all = "camelCase")]
    Removed { section: ContentSection, id: String },
    #[serde(rename_all = "camelCase")]
    Modified {
        section: ContentSection,
        id: String,
        value: Value,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GuidelineChange {
    pub path: String,
    pub old: Option<String>,
    pub new: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase")]
pub enum GoalChange {
    #[serde(rename_all = "camelCase")]
    Added { goal: Value },
    #[serde(rename_all = "camelCase")]
    Removed { id: String },
    #[serde(rename_all = "camelCase")]
    Modified { id: String, goal: Value },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UiChange {
    pub field: String,
    pub old: Value,
    pub new: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FieldChange {
    pub path: String,
    pub old: Value,
    pub new: Value,
}

// ---------------------------------------------------------------------------
// Diff
// ---------------------------------------------------------------------------

/// Computes the classified delta between two designs (in canonical form).
pub fn diff(a: &InstructionalDesign, b: &InstructionalDesign) -> VariantDelta {
    let mut na = a.clone();
    na.normalize();
    let mut nb = b.clone();
    nb.normalize();
    let va = serde_json::to_value(&na).expect("design serializes");
    let vb = serde_json::to_value(&nb).expect("design serializes");

    let mut delta = VariantDelta::default();
    for path in ["/id", "/metadata", "/context"] {
        let (oa, ob) = (va.pointer(path).unwrap(), vb.pointer(path).unwrap());
        if oa != ob {
            delta.field_changes.push(FieldChange {
                path: path.to_string(),
                old: oa.clone(),
                new: ob.clone(),
            });
        }
    }

    for field in [
        "animationStyle",
        "colorTheme",
        "animationSpeed",
        "language",
        "background",
    ] {
        let (oa, ob) = (&va["ui"][field], &vb["ui"][field]);
        if oa != ob {
            delta.ui_changes.push(UiChange {
                field: field.to_string(),
                old: oa.clone(),
                new: ob.clone(),
            });
        }
    }

    delta.goal_changes = diff_goals(&va["goals"], &vb["goals"], &mut delta.field_changes);
    for section in [
        ContentSection::Fragments,
        ContentSection::Objects,
        ContentSection::LearningObjects,
    ] {
        diff_content_section(
            &va["content"][section.key()],
            &vb["content"][section.key()],
            section,
            &mut delta,
        );
    }

    diff_process(&va["process"], &vb["process"], &mut delta);
    delta
}

fn id_of(value: &Value) -> &str {
    value["id"].as_str().unwrap_or("")
}

fn by_id_map(list: &[Value]) -> Option<BTreeMap<&str, &Value>> {
    let mut map = BTreeMap::new();
    for item in list {
        if map.insert(id_of(item), item).is_some() {
            return None;
        }
    }
    Some(map)
}

fn diff_goals(a: &Value, b: &Value, fields: &mut Vec<FieldChange>) -> Vec<GoalChange> {
    if a == b {
        return Vec::new();
    }
    let (Some(alist), Some(blist)) = (a.as_array(), b.as_array()) else {
        return Vec::new();
    };
    let (Some(amap), Some(bmap)) = (by_id_map(alist), by_id_map(blist)) else {
        // Duplicate ids: fall back to replacing the whole section.
        fields.push(FieldChange {
            path: "/goals".to_string(),
            old: a.clone(),
            new: b.clone(),
        });
        return Vec::new();
    };
    let mut out = Vec::new();
    for (id, goal) in &amap {
        match bmap.get(id) {
            None => out.push(GoalChange::Removed { id: id.to_string() }),
            Some(other) if **other != **goal => out.push(GoalChange::Modified {
                id: id.to_string(),
                goal: (*other).clone(),
            }),
            Some(_) => {}
        }
    }
    for (id, goal) in &bmap {
        if !amap.contains_key(id) {
            let _ = id;
            out.push(GoalChange::Added {
                goal: (*goal).clone(),
            });
        }
    }
    out
}

fn diff_content_section(a: &Value, b: &Value, section: ContentSection, delta: &mut VariantDelta) {
    if a == b {
        return;
    }
    let (Some(alist), Some(blist)) = (a.as_array(), b.as_array()) else {
        return;
    };
    let (Some(amap), Some(bmap)) = (by_id_map(alist), by_id_map(blist)) else {
        delta.field_changes.push(FieldChange {
            path: format!("/content/{}", section.key()),
            old: a.clone(),
            new: b.clone(),
        });
        return;
    };
    for (id, item) in &amap {
        match bmap.get(id) {
            None => delta.content_changes.push(ContentChange::Removed {
                section,
                id: id.to_string(),
            }),
            Some(other) if **other != **item => delta.content_changes.push(ContentChange::Modified {
                section,
                id: id.to_string(),
                value: (*other).clone(),
            }),
            Some(_) => {}
        }
    }
    for (id, item) in &bmap {
        if !amap.contains_key(id) {
            delta.content_changes.push(ContentChange::Added {
                section,
                value: (*item).clone(),
            });
        }
    }
}

/// Per-level diff plans: which child key to recurse into, whether nodes
/// carry a kind, and which scalar fields to compare.
struct LevelPlan {
    child_key: Option<&'static str>,
    has_kind: bool,
    fields: &'static [&'static str],
}

const PLAY_PLAN: LevelPlan = LevelPlan {
    child_key: Some("acts"),
    has_kind: false,
    fields: &["id", "title", "timeLimit", "associatedGoal"],
};
const ACT_PLAN: LevelPlan = LevelPlan {
    child_key: Some("scenes"),
    has_kind: true,
    fields: &["id", "timeLimit", "associatedGoal"],
};
const SCENE_PLAN: LevelPlan = LevelPlan {
    child_key: Some("instructions"),
    has_kind: true,
    fields: &["id", "timeLimit", "associatedGoal"],
};
const INSTRUCTION_PLAN: LevelPlan = LevelPlan {
    child_key: None,
    has_kind: false,
    fields: &["id", "timeLimit", "principles", "activities", "contentRefs"],
};

fn child_plan(plan: &LevelPlan) -> &'static LevelPlan {
    match plan.child_key {
        Some("acts") => &ACT_PLAN,
        Some("scenes") => &SCENE_PLAN,
        Some("instructions") => &INSTRUCTION_PLAN,
        _ => unreachable!("instruction level has no children"),
    }
}

fn diff_process(a: &Value, b: &Value, delta: &mut VariantDelta) {
    for field in ["id", "instructionalDesignModel"] {
        if a[field] != b[field] {
            delta.field_changes.push(FieldChange {
                path: format!("/process/{field}"),
                old: a[field].clone(),
                new: b[field].clone(),
            });
        }
    }
    let empty = Vec::new();
    let aplays = a["plays"].as_array().unwrap_or(&empty);
    let bplays = b["plays"].as_array().unwrap_or(&empty);
    diff_children(aplays, bplays, "/process/plays", &PLAY_PLAN, delta);
}

/// Weighted-LCS pairing of two child lists: 3 points for an id match,
/// 1 for a kind match (or any pairing at kindless levels), unpairable
/// otherwise. Ties prefer pairing, keeping structural lists short.
fn align(alist: &[Value], blist: &[Value], plan: &LevelPlan) -> Vec<(usize, usize)> {
    let score = |x: &Value, y: &Value| -> u32 {
        if !id_of(x).is_empty() && id_of(x) == id_of(y) {
            3
        } else if !plan.has_kind {
            1
        } else if x["kind"] == y["kind"] {
            1
        } else {
            0
        }
    };
    let (n, m) = (alist.len(), blist.len());
    let mut dp = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            let mut best = dp[i + 1][j].max(dp[i][j + 1]);
            let s = score(&alist[i], &blist[j]);
            if s > 0 {
                best = best.max(dp[i + 1][j + 1] + s);
            }
            dp[i][j] = best;
        }
    }
    let mut pairs = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        let s = score(&alist[i], &blist[j]);
        if s > 0 && dp[i][j] == dp[i + 1][j + 1] + s {
            pairs.push((i, j));
            i += 1;
            j += 1;
        } else if dp[i][j] == dp[i + 1][j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    pairs
}

fn diff_children(
    alist: &[Value],
    blist: &[Value],
    base: &str,
    plan: &LevelPlan,
    delta: &mut VariantDelta,
) {
    let pairs = align(alist, blist, plan);
    let paired_a: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
    let paired_b: Vec<usize> = pairs.iter().map(|(_, j)| *j).collect();

    for i in 0..alist.len() {
        if !paired_a.contains(&i) {
            delta.structural_changes.push(StructuralChange::Removed {
                path: format!("{base}/{i}"),
            });
        }
    }
    for j in 0..blist.len() {
        if !paired_b.contains(&j) {
            delta.structural_changes.push(StructuralChange::Added {
                path: format!("{base}/{j}"),
                node: blist[j].clone(),
            });
        }
    }

    for (i, j) in pairs {
        let (na, nb) = (&alist[i], &blist[j]);
        let path = format!("{base}/{j}");
        if plan.has_kind && na["kind"] != nb["kind"] {
            delta.structural_changes.push(StructuralChange::Retyped {
                path: path.clone(),
                old_kind: na["kind"].as_str().unwrap_or_default().to_string(),
                new_kind: nb["kind"].as_str().unwrap_or_default().to_string(),
            });
        }
        for field in plan.fields {
            if na[*field] != nb[*field] {
                delta.field_changes.push(FieldChange {
                    path: format!("{path}/{field}"),
                    old: na[*field].clone(),
                    new: nb[*field].clone(),
                });
            }
        }
        if na["guidelines"] != nb["guidelines"] {
            delta.guideline_changes.push(GuidelineChange {
                path: path.clone(),
                old: na["guidelines"].as_str().map(str::to_string),
                new: nb["guidelines"].as_str().map(str::to_string),
            });
        }
        if let Some(child_key) = plan.child_key {
            let empty = Vec::new();
            let achildren = na[child_key].as_array().unwrap_or(&empty);
            let bchildren = nb[child_key].as_array().unwrap_or(&empty);
            diff_children(
                achildren,
                bchildren,
                &format!("{path}/{child_key}"),
                child_plan(plan),
                delta,
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Apply
// ---------------------------------------------------------------------------

fn apply_err(message: impl Into<String>) -> OntologyError {
    OntologyError::Apply(message.into())
}

fn split_pointer(path: &str) -> Result<(&str, &str), OntologyError> {
    path.rfind('/')
        .map(|at| (&path[..at], &path[at + 1..]))
        .ok_or_else(|| apply_err(format!("bad path `{path}`")))
}

fn array_at<'v>(root: &'v mut Value, ptr: &str) -> Result<&'v mut Vec<Value>, OntologyError> {
    root.pointer_mut(ptr)
        .and_then(Value::as_array_mut)
        .ok_or_else(|| apply_err(format!("`{ptr}` is not an array")))
}

fn set_at(root: &mut Value, path: &str, value: Value) -> Result<(), OntologyError> {
    let (parent, last) = split_pointer(path)?;
    let target = root
        .pointer_mut(parent)
        .ok_or_else(|| apply_err(format!("path `{parent}` does not exist")))?;
    match target {
        Value::Object(map) => {
            map.insert(last.to_string(), value);
            Ok(())
        }
        Value::Array(items) => {
            let index: usize = last
                .parse()
                .map_err(|_| apply_err(format!("bad index in `{path}`")))?;
            let slot = items
                .get_mut(index)
                .ok_or_else(|| apply_err(format!("index {index} out of range at `{parent}`")))?;
            *slot = value;
            Ok(())
        }
        _ => Err(apply_err(format!("`{parent}` is neither object nor array"))),
    }
}

/// Orders paths by segments, numeric segments numerically.
fn cmp_paths(a: &str, b: &str) -> std::cmp::Ordering {
    let seg = |p: &str| -> Vec<String> { p.split('/').skip(1).map(str::to_string).collect() };
    let (sa, sb) = (seg(a), seg(b));
    for (x, y) in sa.iter().zip(sb.iter()) {
        let ord = match (x.parse::<usize>(), y.parse::<usize>()) {
            (Ok(nx), Ok(ny)) => nx.cmp(&ny),
            _ => x.cmp(y),
        };
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    sa.len().cmp(&sb.len())
}

fn apply_by_id(
    list: &mut Vec<Value>,
    removed: &[String],
    modified: &[(String, Value)],
    added: &[Value],
    what: &str,
) -> Result<(), OntologyError> {
    for id in removed {
        let at = list
            .iter()
            .position(|v| id_of(v) == id)
            .ok_or_else(|| apply_err(format!("{what} `{id}` to remove is absent")))?;
        list.remove(at);
    }
    for (id, value) in modified {
        let slot = list
            .iter_mut()
            .find(|v| id_of(v) == id)
            .ok_or_else(|| apply_err(format!("{what} `{id}` to modify is absent")))?;
        *slot = value.clone();
    }
    for value in added {
        if list.iter().any(|v| id_of(v) == id_of(value)) {
            return Err(apply_err(format!(
                "{what} `{}` to add already exists",
                id_of(value)
            )));
        }
        list.push(value.clone());
    }
    list.sort_by(|x, y| id_of(x).cmp(id_of(y)));
    Ok(())
}

/// Applies a delta to a design, reproducing the design it was diffed
/// against. The input is canonicalized first.
pub fn apply_delta(
    a: &InstructionalDesign,
    delta: &VariantDelta,
) -> Result<InstructionalDesign, OntologyError> {
    let mut base = a.clone();
    base.normalize();
    let mut root = serde_json::to_value(&base).expect("design serializes");

    // Structural surgery: removals in reverse document order on left
    // coordinates, then insertions in forward order on right coordinates,
    // then retypes.
    let mut removals: Vec<&str> = Vec::new();
    let mut additions: Vec<(&str, &Value)> = Vec::new();
    let mut retypes: Vec<(&str, &str)> = Vec::new();
    for change in &delta.structural_changes {
        match change {
            StructuralChange::Removed { path } => removals.push(path),
            StructuralChange::Added { path, node } => additions.push((path, node)),
            StructuralChange::Retyped { path, new_kind, .. } => retypes.push((path, new_kind)),
        }
    }
    removals.sort_by(|x, y| cmp_paths(y, x));
    for path in removals {
        let (parent, last) = split_pointer(path)?;
        let index: usize = last
            .parse()
            .map_err(|_| apply_err(format!("bad index in `{path}`")))?;
        let list = array_at(&mut root, parent)?;
        if index >= list.len() {
            return Err(apply_err(format!("index {index} out of range at `{parent}`")));
        }
        list.remove(index);
    }
    additions.sort_by(|x, y| cmp_paths(x.0, y.0));
    for (path, node) in additions {
        let (parent, last) = split_pointer(path)?;
        let index: usize = last
            .parse()
            .map_err(|_| apply_err(format!("bad index in `{path}`")))?;
        let list = array_at(&mut root, parent)?;
        if index > list.len() {
            return Err(apply_err(format!("index {index} out of range at `{parent}`")));
        }
        list.insert(index, node.clone());
    }
    for (path, new_kind) in retypes {
        set_at(&mut root, &format!("{path}/kind"), json!(new_kind))?;
    }

    for change in &delta.field_changes {
        set_at(&mut root, &change.path, change.new.clone())?;
    }
    for change in &delta.guideline_changes {
        let value = match &change.new {
            Some(text) => json!(text),
            None => Value::Null,
        };
        set_at(&mut root, &format!("{}/guidelines", change.path), value)?;
    }

    let mut removed_goals = Vec::new();
    let mut modified_goals = Vec::new();
    let mut added_goals = Vec::new();
    for change in &delta.goal_changes {
        match change {
            GoalChange::Removed { id } => removed_goals.push(id.clone()),
            GoalChange::Modified { id, goal } => modified_goals.push((id.clone(), goal.clone())),
            GoalChange::Added { goal } => added_goals.push(goal.clone()),
        }
    }
    apply_by_id(
        array_at(&mut root, "/goals")?,
        &removed_goals,
        &modified_goals,
        &added_goals,
        "goal",
    )?;

    for section in [
        ContentSection::Fragments,
        ContentSection::Objects,
        ContentSection::LearningObjects,
    ] {
        let mut removed = Vec::new();
        let mut modified = Vec::new();
        let mut added = Vec::new();
        for change in &delta.content_changes {
            match change {
                ContentChange::Removed { section: s, id } if *s == section => {
                    removed.push(id.clone())
                }
                ContentChange::Modified {
                    section: s,
                    id,
                    value,
                } if *s == section => modified.push((id.clone(), value.clone())),
                ContentChange::Added { section: s, value } if *s == section => {
                    added.push(value.clone())
                }
                _ => {}
            }
        }
        apply_by_id(
            array_at(&mut root, &format!("/content/{}", section.key()))?,
            &removed,
            &modified,
            &added,
            section.key(),
        )?;
    }

    for change in &delta.ui_changes {
        set_at(&mut root, &format!("/ui/{}", change.field), change.new.clone())?;
    }

    let mut applied: InstructionalDesign =
        serde_json::from_value(root).map_err(|e| apply_err(e.to_string()))?;
    applied.normalize();
    Ok(applied)
}

// ---------------------------------------------------------------------------
// Guideline substitution
// ---------------------------------------------------------------------------

/// Replaces guideline texts on the named process nodes; every key must
/// resolve to a process node. The result differs from the input only in
/// guidelines.
pub fn substitute_guidelines(
    design: &InstructionalDesign,
    guideline_map: &BTreeMap<Id, String>,
) -> Result<InstructionalDesign, OntologyError> {
    let node_ids: std::collections::BTreeSet<&Id> = design
        .process_nodes()
        .into_iter()
        .map(|(id, _)| id)
        .collect();
    for key in guideline_map.keys() {
        if !node_ids.contains(key) {
            return Err(OntologyError::UnknownProcessNode(key.clone()));
        }
    }
    let mut out = design.clone();
    for play in &mut out.process.plays {
        if let Some(text) = guideline_map.get(&play.id) {
            play.guidelines = Some(text.clone());
        }
        for act in &mut play.acts {
            if let Some(text) = guideline_map.get(&act.id) {
                act.guidelines = Some(text.clone());
            }
            for scene in &mut act.scenes {
                if let Some(text) = guideline_map.get(&scene.id) {
                    scene.guidelines = Some(text.clone());
                }
                for instruction in &mut scene.instructions {
                    if let Some(text) = guideline_map.get(&instruction.id) {
                        instruction.guidelines = Some(text.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_design;

    fn fixture() -> InstructionalDesign {
        parse_design(include_str!("../../tests/data/minimal-design.json")).unwrap()
    }

    #[test]
    fn identity_diff_is_empty() {
        let d = fixture();
        assert!(diff(&d, &d).is_empty());
    }

    #[test]
    fn guideline_swap_changes_only_guidelines() {
        let d1 = fixture();
        let mut map = BTreeMap::new();
        map.insert(
            Id::new("s1").unwrap(),
            "[hi] दृश्य को ध्यान से देखिए।".to_string(),
        );
        map.insert(Id::new("i1").unwrap(), "[hi] दोहराइए।".to_string());
        let d2 = substitute_guidelines(&d1, &map).unwrap();
        let delta = diff(&d1, &d2);
        assert_eq!(delta.guideline_changes.len(), 2);
        assert!(delta.structural_changes.is_empty());
        assert!(delta.content_changes.is_empty());
        assert!(delta.goal_changes.is_empty());
        assert!(delta.ui_changes.is_empty());
        assert!(delta.field_changes.is_empty());
        assert_eq!(apply_delta(&d1, &delta).unwrap(), d2);
    }

    #[test]
    fn substitute_with_empty_map_is_identity() {
        let d = fixture();
        assert_eq!(substitute_guidelines(&d, &BTreeMap::new()).unwrap(), d);
    }

    #[test]
    fn substitute_unknown_key_errors_with_name() {
        let d = fixture();
        let mut map = BTreeMap::new();
        map.insert(Id::new("scene-999").unwrap(), "x".to_string());
        let err = substitute_guidelines(&d, &map).unwrap_err();
        assert!(err.to_string().contains("scene-999"));
    }

    #[test]
    fn removed_act_is_one_structural_change() {
        let d1 = fixture();
        let mut d2 = d1.clone();
        let removed = d2.process.plays[0].acts.remove(0);
        let _ = removed;
        // Drop the goal/content links into the removed subtree so the
        // variant stays self-contained.
        d2.goals[0].achieved_by_process = d2.process.plays[0].id.clone();
        d2.goals[0].uses_content.clear();
        d2.content.learning_objects[0].object_refs.clear();
        d2.normalize();
        let delta = diff(&d1, &d2);
        assert_eq!(delta.structural_changes.len(), 1);
        assert!(matches!(
            delta.structural_changes[0],
            StructuralChange::Removed { .. }
        ));
        assert_eq!(apply_delta(&d1, &delta).unwrap(), d2);
    }

    #[test]
    fn retyped_act_is_one_structural_change() {
        let d1 = fixture();
        let mut d2 = d1.clone();
        d2.process.plays[0].acts[0].kind = crate::ontology::enums::ActKind::Summary;
        let delta = diff(&d1, &d2);
        assert_eq!(delta.structural_changes.len(), 1);
        assert!(matches!(
            delta.structural_changes[0],
            StructuralChange::Retyped { .. }
        ));
        assert_eq!(apply_delta(&d1, &delta).unwrap(), d2);
    }

    #[test]
    fn renamed_ids_are_not_structural() {
        let d1 = fixture();
        let mut d2 = d1.clone();
        d2.process.plays[0].acts[0].id = Id::new("a1-renamed").unwrap();
        let delta = diff(&d1, &d2);
        assert!(delta.structural_changes.is_empty());
        assert!(!delta.field_changes.is_empty());
        assert_eq!(apply_delta(&d1, &delta).unwrap(), d2);
    }

    #[test]
    fn ui_change_is_classified() {
        let d1 = fixture();
        let mut d2 = d1.clone();
        d2.ui.color_theme = "ocean".to_string();
        let delta = diff(&d1, &d2);
        assert_eq!(delta.ui_changes.len(), 1);
        assert_eq!(delta.ui_changes[0].field, "colorTheme");
        assert_eq!(apply_delta(&d1, &delta).unwrap(), d2);
    }
}
