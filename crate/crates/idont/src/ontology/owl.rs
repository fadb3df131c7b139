//! OWL/XML projection of a design: concepts for every type, subconcepts for
//! every enumeration member, one named individual per design element, object
//! properties for links and data properties for scalars.
//!
//! Output is byte-deterministic: individuals are ordered by IRI and
//! assertions by property name, then value. Ordered process children carry
//! an `index` data property so the tree order survives the round trip.

use std::collections::BTreeMap;

use crate::id::Id;
use crate::ontology::enums::*;
use crate::ontology::model::*;
use crate::ontology::OntologyError;

const ONTOLOGY_XMLNS: &str = "http://www.w3.org/2002/07/owl#";
const PREFIX: &str = "idont";

/// Historical spelling of the factual knowledge token, accepted on parse and
/// optionally emitted for compatibility with earlier exports.
const LEGACY_FACTUAL_TOKEN: &str = "FacutalKnowledge";

#[derive(Debug, Clone, Copy, Default)]
pub struct OwlOptions {
    /// Emit the historical spelling for the factual knowledge level.
    pub legacy_knowledge_spelling: bool,
}

fn iri(type_name: &str, id: &str) -> String {
    format!("{PREFIX}:{type_name}/{id}")
}

fn class_iri(type_name: &str) -> String {
    format!("{PREFIX}:{type_name}")
}

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

struct Individual {
    iri: String,
    class: String,
    data: Vec<(String, String)>,
    objects: Vec<(String, String)>,
}

impl Individual {
    fn new(type_name: &str, id: &str) -> Self {
        Individual {
            iri: iri(type_name, id),
            class: class_iri(type_name),
            data: Vec::new(),
            objects: Vec::new(),
        }
    }

    fn data(&mut self, prop: &str, value: impl Into<String>) {
        self.data.push((prop.to_string(), value.into()));
    }

    fn data_opt(&mut self, prop: &str, value: &Option<String>) {
        if let Some(v) = value {
            self.data(prop, v.clone());
        }
    }

    fn object(&mut self, prop: &str, target: String) {
        self.objects.push((prop.to_string(), target));
    }
}

/// Resolves ids to typed IRIs; unknown ids (declared stubs and anything
/// external) project as `idont:External/<id>`.
struct IriTable {
    by_id: BTreeMap<Id, String>,
}

impl IriTable {
    fn build(design: &InstructionalDesign) -> Self {
        let mut by_id = BTreeMap::new();
        by_id.insert(design.id.clone(), "InstructionalDesign");
        by_id.insert(design.process.id.clone(), "ProcessTree");
        for play in &design.process.plays {
            by_id.insert(play.id.clone(), "Play");
            for act in &play.acts {
                by_id.insert(act.id.clone(), "Act");
                for scene in &act.scenes {
                    by_id.insert(scene.id.clone(), "Scene");
                    for instruction in &scene.instructions {
                        by_id.insert(instruction.id.clone(), "Instruction");
                        for activity in &instruction.activities {
                            by_id.insert(activity.id.clone(), "Activity");
                        }
                    }
                }
            }
        }
        for goal in &design.goals {
            by_id.insert(goal.id.clone(), "GoalNode");
        }
        for fragment in &design.content.fragments {
            by_id.insert(fragment.id.clone(), "ContentFragment");
        }
        for object in &design.content.objects {
            by_id.insert(object.id.clone(), "ContentObject");
        }
        for lo in &design.content.learning_objects {
            by_id.insert(lo.id.clone(), "LearningObject");
        }
        IriTable {
            by_id: by_id
                .into_iter()
                .map(|(id, ty)| {
                    let target = iri(ty, id.as_str());
                    (id, target)
                })
                .collect(),
        }
    }

    fn resolve(&self, id: &Id) -> String {
        self.by_id
            .get(id)
            .cloned()
            .unwrap_or_else(|| iri("External", id.as_str()))
    }
}

fn escape_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#xD;"),
            other => out.push(other),
        }
    }
    out
}

fn escape_attr(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\r' => out.push_str("&#xD;"),
            '\n' => out.push_str("&#xA;"),
            '\t' => out.push_str("&#x9;"),
            other => out.push(other),
        }
    }
    out
}

fn knowledge_token(level: KnowledgeLevel, options: &OwlOptions) -> String {
    if options.legacy_knowledge_spelling && level == KnowledgeLevel::Factual {
        LEGACY_FACTUAL_TOKEN.to_string()
    } else {
        level.token().to_string()
    }
}

/// Serializes a design to the OWL/XML document.
pub fn serialize_owl_xml(design: &InstructionalDesign, options: &OwlOptions) -> String {
    let table = IriTable::build(design);
    let mut individuals = collect_individuals(design, &table, options);
    individuals.sort_by(|a, b| a.iri.cmp(&b.iri));
    for ind in &mut individuals {
        ind.data.sort();
        ind.objects.sort();
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<Ontology xmlns=\"{ONTOLOGY_XMLNS}\" ontologyIRI=\"{}\">\n",
        escape_attr(&iri("InstructionalDesign", design.id.as_str()))
    ));

    // Concept taxonomy: one class per type, one subclass per enum member.
    for type_name in [
        "InstructionalDesign",
        "ContextSpec",
        "GoalNode",
        "GoalPattern",
        "ProcessTree",
        "Play",
        "Act",
        "Scene",
        "Instruction",
        "Activity",
        "UiConfig",
        "ContentCatalog",
        "ContentFragment",
        "ContentObject",
        "LearningObject",
        "External",
        "ActKind",
        "SceneKind",
        "MerrillPrinciple",
        "ActivityKind",
        "Level",
        "Granularity",
        "KnowledgeLevel",
        "CognitiveLevel",
        "FragmentKind",
        "ContentType",
        "LearningObjectKind",
    ] {
        out.push_str(&format!(
            "  <Declaration><Class IRI=\"{}\"/></Declaration>\n",
            escape_attr(&class_iri(type_name))
        ));
    }
    let mut subclass = |concept: &str, member: &str| {
        out.push_str(&format!(
            "  <SubClassOf><Class IRI=\"{}\"/><Class IRI=\"{}\"/></SubClassOf>\n",
            escape_attr(&iri(concept, member)),
            escape_attr(&class_iri(concept))
        ));
    };
    for kind in ActKind::ALL {
        subclass("ActKind", kind.token());
    }
    for kind in SceneKind::ALL {
        subclass("SceneKind", kind.token());
    }
    for principle in MerrillPrinciple::ALL {
        subclass("MerrillPrinciple", principle.token());
    }
    for kind in ActivityKind::ALL {
        subclass("ActivityKind", kind.token());
    }
    for level in Level::ALL {
        subclass("Level", level.token());
    }
    for granularity in Granularity::ALL {
        subclass("Granularity", granularity.token());
    }
    for level in KnowledgeLevel::ALL {
        subclass(
            "KnowledgeLevel",
            &knowledge_token(*level, options),
        );
    }
    for level in CognitiveLevel::ALL {
        subclass("CognitiveLevel", level.token());
    }
    for kind in FragmentKind::ALL {
        subclass("FragmentKind", kind.token());
    }
    for ctype in ContentType::CORE {
        subclass("ContentType", ctype.token());
    }
    for kind in LearningObjectKind::ALL {
        subclass("LearningObjectKind", kind.token());
    }

    for ind in &individuals {
        let ind_iri = escape_attr(&ind.iri);
        out.push_str(&format!(
            "  <Declaration><NamedIndividual IRI=\"{ind_iri}\"/></Declaration>\n"
        ));
        out.push_str(&format!(
            "  <ClassAssertion><Class IRI=\"{}\"/><NamedIndividual IRI=\"{ind_iri}\"/></ClassAssertion>\n",
            escape_attr(&ind.class)
        ));
        for (prop, value) in &ind.data {
            out.push_str(&format!(
                "  <DataPropertyAssertion><DataProperty IRI=\"{}\"/><NamedIndividual IRI=\"{ind_iri}\"/><Literal>{}</Literal></DataPropertyAssertion>\n",
                escape_attr(&format!("{PREFIX}:{prop}")),
                escape_text(value)
            ));
        }
        for (prop, target) in &ind.objects {
            out.push_str(&format!(
                "  <ObjectPropertyAssertion><ObjectProperty IRI=\"{}\"/><NamedIndividual IRI=\"{ind_iri}\"/><NamedIndividual IRI=\"{}\"/></ObjectPropertyAssertion>\n",
                escape_attr(&format!("{PREFIX}:{prop}")),
                escape_attr(target)
            ));
        }
    }
    out.push_str("</Ontology>\n");
    out
}

fn metadata_entries(ind: &mut Individual, metadata: &BTreeMap<String, String>) {
    for (key, value) in metadata {
        let entry = serde_json::to_string(&(key, value)).expect("metadata entry serializes");
        ind.data("metadataEntry", entry);
    }
}

fn collect_individuals(
    design: &InstructionalDesign,
    table: &IriTable,
    options: &OwlOptions,
) -> Vec<Individual> {
    let mut out = Vec::new();
    let design_id = design.id.as_str();

    let mut root = Individual::new("InstructionalDesign", design_id);
    root.object("hasContext", iri("ContextSpec", design_id));
    root.object("hasProcess", table.resolve(&design.process.id));
    root.object("hasContent", iri("ContentCatalog", design_id));
    root.object("hasUiConfig", iri("UiConfig", design_id));
    for goal in &design.goals {
        root.object("hasGoal", table.resolve(&goal.id));
    }
    metadata_entries(&mut root, &design.metadata);
    out.push(root);

    let mut context = Individual::new("ContextSpec", design_id);
    context.object("processRef", table.resolve(&design.context.process_ref));
    for id in &design.context.goal_refs {
        context.object("goalRefs", table.resolve(id));
    }
    for id in &design.context.content_refs {
        context.object("contentRefs", table.resolve(id));
    }
    context.object(
        "environmentRef",
        table.resolve(&design.context.environment_ref),
    );
    context.object(
        "evaluationRef",
        table.resolve(&design.context.evaluation_ref),
    );
    context.object("rolesRef", table.resolve(&design.context.roles_ref));
    metadata_entries(&mut context, &design.context.metadata);
    out.push(context);

    let mut process = Individual::new("ProcessTree", design.process.id.as_str());
    process.data(
        "instructionalDesignModel",
        design.process.instructional_design_model.clone(),
    );
    process.data("noOfPlays", design.process.play_count().to_string());
    process.data("noOfActs", design.process.act_count().to_string());
    process.data("noOfScenes", design.process.scene_count().to_string());
    process.data(
        "noOfInstructions",
        design.process.instruction_count().to_string(),
    );
    for play in &design.process.plays {
        process.object("hasPlay", table.resolve(&play.id));
    }
    out.push(process);

    for (pi, play) in design.process.plays.iter().enumerate() {
        let mut p = Individual::new("Play", play.id.as_str());
        p.data("index", pi.to_string());
        p.data("title", play.title.clone());
        p.data_opt("guidelines", &play.guidelines);
        if let Some(limit) = play.time_limit {
            p.data("hasTimeLimit", limit.to_string());
        }
        if let Some(goal) = &play.associated_goal {
            p.object("hasAssociatedGoal", table.resolve(goal));
        }
        for act in &play.acts {
            p.object("hasAct", table.resolve(&act.id));
        }
        out.push(p);

        for (ai, act) in play.acts.iter().enumerate() {
            let mut a = Individual::new("Act", act.id.as_str());
            a.data("index", ai.to_string());
            a.data("kind", act.kind.token());
            a.object("kindRef", iri("ActKind", act.kind.token()));
            a.data_opt("guidelines", &act.guidelines);
            if let Some(limit) = act.time_limit {
                a.data("hasTimeLimit", limit.to_string());
            }
            if let Some(goal) = &act.associated_goal {
                a.object("hasAssociatedGoal", table.resolve(goal));
            }
            for scene in &act.scenes {
                a.object("hasScene", table.resolve(&scene.id));
            }
            out.push(a);

            for (si, scene) in act.scenes.iter().enumerate() {
                let mut s = Individual::new("Scene", scene.id.as_str());
                s.data("index", si.to_string());
                s.data("kind", scene.kind.token());
                s.object("kindRef", iri("SceneKind", scene.kind.token()));
                s.data_opt("guidelines", &scene.guidelines);
                if let Some(limit) = scene.time_limit {
                    s.data("hasTimeLimit", limit.to_string());
                }
                if let Some(goal) = &scene.associated_goal {
                    s.object("hasAssociatedGoal", table.resolve(goal));
                }
                for instruction in &scene.instructions {
                    s.object("hasInstruction", table.resolve(&instruction.id));
                }
                out.push(s);

                for (ii, instruction) in scene.instructions.iter().enumerate() {
                    let mut i = Individual::new("Instruction", instruction.id.as_str());
                    i.data("index", ii.to_string());
                    for principle in &instruction.principles {
                        i.data("hasPrinciple", principle.token());
                        i.object("principleRef", iri("MerrillPrinciple", principle.token()));
                    }
                    for id in &instruction.content_refs {
                        i.object("usesContent", table.resolve(id));
                    }
                    i.data_opt("guidelines", &instruction.guidelines);
                    if let Some(limit) = instruction.time_limit {
                        i.data("hasTimeLimit", limit.to_string());
                    }
                    for activity in &instruction.activities {
                        i.object("hasActivity", table.resolve(&activity.id));
                    }
                    out.push(i);

                    for (ti, activity) in instruction.activities.iter().enumerate() {
                        let mut t = Individual::new("Activity", activity.id.as_str());
                        t.data("index", ti.to_string());
                        t.data("kind", activity.kind.token());
                        t.object("kindRef", iri("ActivityKind", activity.kind.token()));
                        t.data("description", activity.description.clone());
                        out.push(t);
                    }
                }
            }
        }
    }

    for goal in &design.goals {
        let mut g = Individual::new("GoalNode", goal.id.as_str());
        g.data("hasName", goal.name.clone());
        g.data("goalPriorityLevel", goal.priority.token());
        g.object("priorityRef", iri("Level", goal.priority.token()));
        g.data("goalProgress", goal.progress.to_string());
        g.data_opt("goalDeadline", &goal.deadline);
        g.data("goalGranularity", goal.granularity.token());
        g.object("granularityRef", iri("Granularity", goal.granularity.token()));
        let ktoken = knowledge_token(goal.knowledge_level, options);
        g.data("goalKnowledgeLevel", ktoken.clone());
        g.object("knowledgeLevelRef", iri("KnowledgeLevel", &ktoken));
        g.data("goalCognitiveLevel", goal.cognitive_level.token());
        g.object(
            "cognitiveLevelRef",
            iri("CognitiveLevel", goal.cognitive_level.token()),
        );
        for id in &goal.prerequisites {
            g.object("hasPrerequisites", table.resolve(id));
        }
        if let Some(id) = &goal.previous_goal {
            g.object("previousGoal", table.resolve(id));
        }
        if let Some(id) = &goal.next_goal {
            g.object("nextGoal", table.resolve(id));
        }
        g.object(
            "isAchievedByProcess",
            table.resolve(&goal.achieved_by_process),
        );
        for id in &goal.uses_content {
            g.object("usesContent", table.resolve(id));
        }
        if let Some(id) = &goal.has_evaluation {
            g.object("hasEvaluation", table.resolve(id));
        }
        if let Some(id) = &goal.runs_in_environment {
            g.object("runsInEnvironment", table.resolve(id));
        }
        g.data_opt("goalText", &goal.goal_text);
        g.data_opt("goalImage", &goal.goal_image);
        g.data_opt("goalAudio", &goal.goal_audio);
        g.data_opt("goalVideo", &goal.goal_video);
        g.data_opt("goalMetadata", &goal.goal_metadata);
        g.data_opt("abcd", &goal.abcd);
        if let Some(pattern) = &goal.pattern {
            g.data("sourceOfPattern", pattern.source_of_pattern.clone());
            g.data("tradeOffs", pattern.trade_offs.clone());
            for id in &pattern.applies_to {
                g.object("patternAppliesTo", table.resolve(id));
            }
        }
        out.push(g);
    }

    let mut catalog = Individual::new("ContentCatalog", design_id);
    for fragment in &design.content.fragments {
        catalog.object("hasFragment", table.resolve(&fragment.id));
    }
    for object in &design.content.objects {
        catalog.object("hasContentObject", table.resolve(&object.id));
    }
    for lo in &design.content.learning_objects {
        catalog.object("hasLearningObject", table.resolve(&lo.id));
    }
    out.push(catalog);

    for fragment in &design.content.fragments {
        let mut f = Individual::new("ContentFragment", fragment.id.as_str());
        f.data("kind", fragment.kind.token());
        f.object("kindRef", iri("FragmentKind", fragment.kind.token()));
        f.data("payloadRef", fragment.payload_ref.clone());
        f.data("languageTag", fragment.language_tag.clone());
        out.push(f);
    }
    for object in &design.content.objects {
        let mut o = Individual::new("ContentObject", object.id.as_str());
        o.data("contentType", object.content_type.to_string());
        if let ContentType::Extended(_) = object.content_type {
            // Extended types are open; no subconcept exists to point at.
        } else {
            o.object(
                "contentTypeRef",
                iri("ContentType", object.content_type.token()),
            );
        }
        for id in &object.fragment_refs {
            o.object("hasFragmentRef", table.resolve(id));
        }
        out.push(o);
    }
    for lo in &design.content.learning_objects {
        let mut l = Individual::new("LearningObject", lo.id.as_str());
        l.data("kind", lo.kind.token());
        l.object("kindRef", iri("LearningObjectKind", lo.kind.token()));
        for id in &lo.object_refs {
            l.object("hasObjectRef", table.resolve(id));
        }
        l.object("processRef", table.resolve(&lo.process_ref));
        out.push(l);
    }

    let mut ui = Individual::new("UiConfig", design_id);
    ui.data("animationStyle", design.ui.animation_style.clone());
    ui.data("colorTheme", design.ui.color_theme.clone());
    ui.data("animationSpeed", design.ui.animation_speed.token());
    ui.object(
        "animationSpeedRef",
        iri("Level", design.ui.animation_speed.token()),
    );
    ui.data("language", design.ui.language.clone());
    ui.data("background", design.ui.background.clone());
    out.push(ui);

    out
}

// ---------------------------------------------------------------------------
// XML subset parser
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct XmlNode {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<XmlNode>,
    text: String,
}

impl XmlNode {
    fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a XmlNode> {
        self.children.iter().filter(move |c| c.name == name)
    }
}

struct XmlParser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> XmlParser<'a> {
    fn new(input: &'a str) -> Self {
        XmlParser { input, pos: 0 }
    }

    fn err(&self, message: &str) -> OntologyError {
        OntologyError::Syntax(format!("XML error at byte {}: {message}", self.pos))
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_prolog_and_ws(&mut self) -> Result<(), OntologyError> {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with("<?") {
                match trimmed.find("?>") {
                    Some(end) => self.pos += end + 2,
                    None => return Err(self.err("unterminated processing instruction")),
                }
            } else if trimmed.starts_with("<!--") {
                match trimmed.find("-->") {
                    Some(end) => self.pos += end + 3,
                    None => return Err(self.err("unterminated comment")),
                }
            } else {
                return Ok(());
            }
        }
    }

    fn parse_document(&mut self) -> Result<XmlNode, OntologyError> {
        self.skip_prolog_and_ws()?;
        let root = self.parse_element()?;
        self.skip_prolog_and_ws()?;
        if !self.rest().trim().is_empty() {
            return Err(self.err("trailing content after root element"));
        }
        Ok(root)
    }

    fn parse_element(&mut self) -> Result<XmlNode, OntologyError> {
        if !self.rest().starts_with('<') {
            return Err(self.err("expected `<`"));
        }
        self.pos += 1;
        let name = self.parse_name()?;
        let mut attrs = Vec::new();
        loop {
            self.skip_ws();
            let rest = self.rest();
            if let Some(stripped) = rest.strip_prefix("/>") {
                let _ = stripped;
                self.pos += 2;
                return Ok(XmlNode {
                    name,
                    attrs,
                    children: Vec::new(),
                    text: String::new(),
                });
            }
            if rest.starts_with('>') {
                self.pos += 1;
                break;
            }
            let key = self.parse_name()?;
            self.skip_ws();
            if !self.rest().starts_with('=') {
                return Err(self.err("expected `=` in attribute"));
            }
            self.pos += 1;
            self.skip_ws();
            let quote = self
                .rest()
                .chars()
                .next()
                .filter(|c| *c == '"' || *c == '\'')
                .ok_or_else(|| self.err("expected quoted attribute value"))?;
            self.pos += 1;
            let rest = self.rest();
            let end = rest
                .find(quote)
                .ok_or_else(|| self.err("unterminated attribute value"))?;
            let raw = &rest[..end];
            self.pos += end + 1;
            attrs.push((key, unescape(raw)?));
        }

        let mut children = Vec::new();
        let mut text = String::new();
        loop {
            let rest = self.rest();
            if rest.is_empty() {
                return Err(self.err("unexpected end of input"));
            }
            if let Some(after) = rest.strip_prefix("</") {
                let _ = after;
                self.pos += 2;
                let close = self.parse_name()?;
                self.skip_ws();
                if !self.rest().starts_with('>') {
                    return Err(self.err("malformed closing tag"));
                }
                self.pos += 1;
                if close != name {
                    return Err(self.err(&format!("mismatched closing tag `{close}`")));
                }
                return Ok(XmlNode {
                    name,
                    attrs,
                    children,
                    text,
                });
            }
            if rest.starts_with("<!--") {
                match rest.find("-->") {
                    Some(end) => self.pos += end + 3,
                    None => return Err(self.err("unterminated comment")),
                }
            } else if rest.starts_with('<') {
                children.push(self.parse_element()?);
            } else {
                let end = rest.find('<').unwrap_or(rest.len());
                text.push_str(&unescape(&rest[..end])?);
                self.pos += end;
            }
        }
    }

    fn parse_name(&mut self) -> Result<String, OntologyError> {
        let rest = self.rest();
        let end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == ':'))
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += end;
        Ok(rest[..end].to_string())
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }
}

fn unescape(raw: &str) -> Result<String, OntologyError> {
    if !raw.contains('&') {
        return Ok(raw.to_string());
    }
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(at) = rest.find('&') {
        out.push_str(&rest[..at]);
        rest = &rest[at..];
        let end = rest
            .find(';')
            .ok_or_else(|| OntologyError::Syntax("unterminated entity".to_string()))?;
        let entity = &rest[1..end];
        match entity {
            "amp" => out.push('&'),
            "lt" => out.push('<'),
            "gt" => out.push('>'),
            "quot" => out.push('"'),
            "apos" => out.push('\''),
            _ => {
                let value = if let Some(hex) = entity.strip_prefix("#x") {
                    u32::from_str_radix(hex, 16).ok()
                } else if let Some(dec) = entity.strip_prefix('#') {
                    dec.parse::<u32>().ok()
                } else {
                    None
                };
                let ch = value
                    .and_then(char::from_u32)
                    .ok_or_else(|| OntologyError::Syntax(format!("bad entity `&{entity};`")))?;
                out.push(ch);
            }
        }
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Rebuilder
// ---------------------------------------------------------------------------

#[derive(Debug, Default)]
struct IndividualData {
    class: String,
    data: BTreeMap<String, Vec<String>>,
    objects: BTreeMap<String, Vec<String>>,
}

struct OwlDoc {
    design_iri: String,
    individuals: BTreeMap<String, IndividualData>,
}

fn syntax(message: impl Into<String>) -> OntologyError {
    OntologyError::Syntax(message.into())
}

fn iri_id(target_iri: &str) -> Result<Id, OntologyError> {
    let raw = target_iri
        .rsplit('/')
        .next()
        .ok_or_else(|| syntax(format!("IRI `{target_iri}` has no id segment")))?;
    Id::new(raw).map_err(|e| syntax(e.to_string()))
}

impl OwlDoc {
    fn read(document: &str) -> Result<Self, OntologyError> {
        let root = XmlParser::new(document).parse_document()?;
        if root.name != "Ontology" {
            return Err(syntax(format!("expected root `Ontology`, got `{}`", root.name)));
        }
        let design_iri = root
            .attr("ontologyIRI")
            .ok_or_else(|| syntax("missing ontologyIRI"))?
            .to_string();
        let mut individuals: BTreeMap<String, IndividualData> = BTreeMap::new();

        let named_iri = |node: &XmlNode, which: usize| -> Result<String, OntologyError> {
            node.children_named("NamedIndividual")
                .nth(which)
                .and_then(|n| n.attr("IRI"))
                .map(str::to_string)
                .ok_or_else(|| syntax(format!("{} lacks NamedIndividual #{which}", node.name)))
        };

        for node in &root.children {
            match node.name.as_str() {
                "ClassAssertion" => {
                    let class = node
                        .children_named("Class")
                        .next()
                        .and_then(|c| c.attr("IRI"))
                        .ok_or_else(|| syntax("ClassAssertion lacks Class"))?
                        .to_string();
                    let subject = named_iri(node, 0)?;
                    individuals.entry(subject).or_default().class = class;
                }
                "DataPropertyAssertion" => {
                    let prop = node
                        .children_named("DataProperty")
                        .next()
                        .and_then(|c| c.attr("IRI"))
                        .ok_or_else(|| syntax("DataPropertyAssertion lacks DataProperty"))?;
                    let prop = prop
                        .strip_prefix(&format!("{PREFIX}:"))
                        .unwrap_or(prop)
                        .to_string();
                    let subject = named_iri(node, 0)?;
                    let literal = node
                        .children_named("Literal")
                        .next()
                        .map(|l| l.text.clone())
                        .ok_or_else(|| syntax("DataPropertyAssertion lacks Literal"))?;
                    individuals
                        .entry(subject)
                        .or_default()
                        .data
                        .entry(prop)
                        .or_default()
                        .push(literal);
                }
                "ObjectPropertyAssertion" => {
                    let prop = node
                        .children_named("ObjectProperty")
                        .next()
                        .and_then(|c| c.attr("IRI"))
                        .ok_or_else(|| syntax("ObjectPropertyAssertion lacks ObjectProperty"))?;
                    let prop = prop
                        .strip_prefix(&format!("{PREFIX}:"))
                        .unwrap_or(prop)
                        .to_string();
                    let subject = named_iri(node, 0)?;
                    let target = named_iri(node, 1)?;
                    individuals
                        .entry(subject)
                        .or_default()
                        .objects
                        .entry(prop)
                        .or_default()
                        .push(target);
                }
                // Declarations and SubClassOf axioms carry no instance data.
                "Declaration" | "SubClassOf" => {}
                other => return Err(syntax(format!("unsupported axiom `{other}`"))),
            }
        }
        Ok(OwlDoc {
            design_iri,
            individuals,
        })
    }

    fn individual(&self, iri: &str) -> Result<&IndividualData, OntologyError> {
        self.individuals
            .get(iri)
            .ok_or_else(|| syntax(format!("individual `{iri}` is never asserted")))
    }
}

impl IndividualData {
    fn data_one(&self, prop: &str) -> Option<&str> {
        self.data.get(prop).and_then(|v| v.first()).map(|s| s.as_str())
    }

    fn data_req(&self, prop: &str, iri: &str) -> Result<&str, OntologyError> {
        self.data_one(prop)
            .ok_or_else(|| syntax(format!("`{iri}` lacks data property {prop}")))
    }

    fn data_all(&self, prop: &str) -> &[String] {
        self.data.get(prop).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn object_ids(&self, prop: &str) -> Result<Vec<Id>, OntologyError> {
        self.objects
            .get(prop)
            .map(|targets| targets.iter().map(|t| iri_id(t)).collect())
            .unwrap_or_else(|| Ok(Vec::new()))
    }

    fn object_id_one(&self, prop: &str) -> Result<Option<Id>, OntologyError> {
        Ok(self.object_ids(prop)?.into_iter().next())
    }

    fn object_id_req(&self, prop: &str, iri: &str) -> Result<Id, OntologyError> {
        self.object_id_one(prop)?
            .ok_or_else(|| syntax(format!("`{iri}` lacks object property {prop}")))
    }

    fn object_iris(&self, prop: &str) -> &[String] {
        self.objects.get(prop).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

fn parse_knowledge_level(token: &str) -> Result<KnowledgeLevel, OntologyError> {
    if token == LEGACY_FACTUAL_TOKEN {
        return Ok(KnowledgeLevel::Factual);
    }
    token.parse().map_err(|e: UnknownToken| syntax(e.to_string()))
}

fn parse_enum<T: std::str::FromStr<Err = UnknownToken>>(token: &str) -> Result<T, OntologyError> {
    token.parse().map_err(|e: UnknownToken| syntax(e.to_string()))
}

fn parse_metadata(ind: &IndividualData) -> Result<BTreeMap<String, String>, OntologyError> {
    let mut out = BTreeMap::new();
    for entry in ind.data_all("metadataEntry") {
        let (key, value): (String, String) = serde_json::from_str(entry)
            .map_err(|e| syntax(format!("bad metadata entry `{entry}`: {e}")))?;
        out.insert(key, value);
    }
    Ok(out)
}

fn parse_opt_string(ind: &IndividualData, prop: &str) -> Option<String> {
    ind.data_one(prop).map(str::to_string)
}

fn parse_time_limit(ind: &IndividualData, iri: &str) -> Result<Option<u32>, OntologyError> {
    match ind.data_one("hasTimeLimit") {
        Some(raw) => raw
            .parse::<u32>()
            .map(Some)
            .map_err(|_| syntax(format!("`{iri}` has non-numeric time limit `{raw}`"))),
        None => Ok(None),
    }
}

/// Targets of `prop`, ordered by each target's `index` data property.
fn ordered_children<'d>(
    doc: &'d OwlDoc,
    ind: &IndividualData,
    prop: &str,
) -> Result<Vec<(&'d IndividualData, String)>, OntologyError> {
    let mut with_index = Vec::new();
    for target in ind.object_iris(prop) {
        let child = doc.individual(target)?;
        let index: usize = child
            .data_req("index", target)?
            .parse()
            .map_err(|_| syntax(format!("`{target}` has a non-numeric index")))?;
        with_index.push((index, child, target.clone()));
    }
    with_index.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(with_index
        .into_iter()
        .map(|(_, child, iri)| (child, iri))
        .collect())
}

/// Parses the OWL/XML document back into a design.
pub fn parse_owl_xml(document: &str) -> Result<InstructionalDesign, OntologyError> {
    let doc = OwlDoc::read(document)?;
    let design_iri = doc.design_iri.clone();
    let root = doc.individual(&design_iri)?;
    if root.class != class_iri("InstructionalDesign") {
        return Err(syntax(format!(
            "ontologyIRI `{design_iri}` is not an InstructionalDesign individual"
        )));
    }
    let design_id = iri_id(&design_iri)?;

    // Context.
    let context_iri = root
        .object_iris("hasContext")
        .first()
        .ok_or_else(|| syntax("design lacks hasContext"))?
        .clone();
    let ctx = doc.individual(&context_iri)?;
    let context = ContextSpec {
        process_ref: ctx.object_id_req("processRef", &context_iri)?,
        goal_refs: ctx.object_ids("goalRefs")?,
        content_refs: ctx.object_ids("contentRefs")?,
        environment_ref: ctx.object_id_req("environmentRef", &context_iri)?,
        evaluation_ref: ctx.object_id_req("evaluationRef", &context_iri)?,
        roles_ref: ctx.object_id_req("rolesRef", &context_iri)?,
        metadata: parse_metadata(ctx)?,
    };

    // Process tree.
    let process_iri = root
        .object_iris("hasProcess")
        .first()
        .ok_or_else(|| syntax("design lacks hasProcess"))?
        .clone();
    let proc = doc.individual(&process_iri)?;
    let mut plays = Vec::new();
    for (play_ind, play_iri) in ordered_children(&doc, proc, "hasPlay")? {
        let mut acts = Vec::new();
        for (act_ind, act_iri) in ordered_children(&doc, play_ind, "hasAct")? {
            let mut scenes = Vec::new();
            for (scene_ind, scene_iri) in ordered_children(&doc, act_ind, "hasScene")? {
                let mut instructions = Vec::new();
                for (ins_ind, ins_iri) in ordered_children(&doc, scene_ind, "hasInstruction")? {
                    let mut activities = Vec::new();
                    for (act_ind2, act2_iri) in ordered_children(&doc, ins_ind, "hasActivity")? {
                        activities.push(Activity {
                            id: iri_id(&act2_iri)?,
                            kind: parse_enum(act_ind2.data_req("kind", &act2_iri)?)?,
                            description: act_ind2
                                .data_req("description", &act2_iri)?
                                .to_string(),
                        });
                    }
                    let principles = ins_ind
                        .data_all("hasPrinciple")
                        .iter()
                        .map(|token| parse_enum::<MerrillPrinciple>(token))
                        .collect::<Result<Vec<_>, _>>()?;
                    instructions.push(Instruction {
                        id: iri_id(&ins_iri)?,
                        principles,
                        activities,
                        content_refs: ins_ind.object_ids("usesContent")?,
                        guidelines: parse_opt_string(ins_ind, "guidelines"),
                        time_limit: parse_time_limit(ins_ind, &ins_iri)?,
                    });
                }
                scenes.push(Scene {
                    id: iri_id(&scene_iri)?,
                    kind: parse_enum(scene_ind.data_req("kind", &scene_iri)?)?,
                    instructions,
                    guidelines: parse_opt_string(scene_ind, "guidelines"),
                    time_limit: parse_time_limit(scene_ind, &scene_iri)?,
                    associated_goal: scene_ind.object_id_one("hasAssociatedGoal")?,
                });
            }
            acts.push(Act {
                id: iri_id(&act_iri)?,
                kind: parse_enum(act_ind.data_req("kind", &act_iri)?)?,
                scenes,
                guidelines: parse_opt_string(act_ind, "guidelines"),
                time_limit: parse_time_limit(act_ind, &act_iri)?,
                associated_goal: act_ind.object_id_one("hasAssociatedGoal")?,
            });
        }
        plays.push(Play {
            id: iri_id(&play_iri)?,
            title: play_ind.data_req("title", &play_iri)?.to_string(),
            acts,
            guidelines: parse_opt_string(play_ind, "guidelines"),
            time_limit: parse_time_limit(play_ind, &play_iri)?,
            associated_goal: play_ind.object_id_one("hasAssociatedGoal")?,
        });
    }
    let process = ProcessTree {
        id: iri_id(&process_iri)?,
        instructional_design_model: proc
            .data_req("instructionalDesignModel", &process_iri)?
            .to_string(),
        plays,
    };

    // Goals.
    let mut goals = Vec::new();
    for goal_iri in root.object_iris("hasGoal") {
        let g = doc.individual(goal_iri)?;
        let pattern = if g.data_one("sourceOfPattern").is_some() {
            Some(GoalPattern {
                source_of_pattern: g.data_req("sourceOfPattern", goal_iri)?.to_string(),
                trade_offs: g.data_one("tradeOffs").unwrap_or("").to_string(),
                applies_to: g.object_ids("patternAppliesTo")?,
            })
        } else {
            None
        };
        let progress_raw = g.data_req("goalProgress", goal_iri)?;
        goals.push(GoalNode {
            id: iri_id(goal_iri)?,
            name: g.data_req("hasName", goal_iri)?.to_string(),
            priority: parse_enum(g.data_req("goalPriorityLevel", goal_iri)?)?,
            progress: progress_raw
                .parse()
                .map_err(|_| syntax(format!("bad goalProgress `{progress_raw}`")))?,
            deadline: parse_opt_string(g, "goalDeadline"),
            granularity: parse_enum(g.data_req("goalGranularity", goal_iri)?)?,
            knowledge_level: parse_knowledge_level(g.data_req("goalKnowledgeLevel", goal_iri)?)?,
            cognitive_level: parse_enum(g.data_req("goalCognitiveLevel", goal_iri)?)?,
            prerequisites: g.object_ids("hasPrerequisites")?,
            previous_goal: g.object_id_one("previousGoal")?,
            next_goal: g.object_id_one("nextGoal")?,
            achieved_by_process: g.object_id_req("isAchievedByProcess", goal_iri)?,
            uses_content: g.object_ids("usesContent")?,
            has_evaluation: g.object_id_one("hasEvaluation")?,
            runs_in_environment: g.object_id_one("runsInEnvironment")?,
            goal_text: parse_opt_string(g, "goalText"),
            goal_image: parse_opt_string(g, "goalImage"),
            goal_audio: parse_opt_string(g, "goalAudio"),
            goal_video: parse_opt_string(g, "goalVideo"),
            goal_metadata: parse_opt_string(g, "goalMetadata"),
            abcd: parse_opt_string(g, "abcd"),
            pattern,
        });
    }

    // Content catalog.
    let catalog_iri = root
        .object_iris("hasContent")
        .first()
        .ok_or_else(|| syntax("design lacks hasContent"))?
        .clone();
    let cat = doc.individual(&catalog_iri)?;
    let mut fragments = Vec::new();
    for frag_iri in cat.object_iris("hasFragment") {
        let f = doc.individual(frag_iri)?;
        fragments.push(ContentFragment {
            id: iri_id(frag_iri)?,
            kind: parse_enum(f.data_req("kind", frag_iri)?)?,
            payload_ref: f.data_req("payloadRef", frag_iri)?.to_string(),
            language_tag: f.data_req("languageTag", frag_iri)?.to_string(),
        });
    }
    let mut objects = Vec::new();
    for obj_iri in cat.object_iris("hasContentObject") {
        let o = doc.individual(obj_iri)?;
        let ctype_raw = o.data_req("contentType", obj_iri)?;
        objects.push(ContentObject {
            id: iri_id(obj_iri)?,
            fragment_refs: o.object_ids("hasFragmentRef")?,
            content_type: ctype_raw
                .parse()
                .map_err(|e: UnknownToken| syntax(e.to_string()))?,
        });
    }
    let mut learning_objects = Vec::new();
    for lo_iri in cat.object_iris("hasLearningObject") {
        let l = doc.individual(lo_iri)?;
        learning_objects.push(LearningObject {
            id: iri_id(lo_iri)?,
            kind: parse_enum(l.data_req("kind", lo_iri)?)?,
            object_refs: l.object_ids("hasObjectRef")?,
            process_ref: l.object_id_req("processRef", lo_iri)?,
        });
    }

    // UI.
    let ui_iri = root
        .object_iris("hasUiConfig")
        .first()
        .ok_or_else(|| syntax("design lacks hasUiConfig"))?
        .clone();
    let u = doc.individual(&ui_iri)?;
    let ui = UiConfig {
        animation_style: u.data_req("animationStyle", &ui_iri)?.to_string(),
        color_theme: u.data_req("colorTheme", &ui_iri)?.to_string(),
        animation_speed: parse_enum(u.data_req("animationSpeed", &ui_iri)?)?,
        language: u.data_req("language", &ui_iri)?.to_string(),
        background: u.data_req("background", &ui_iri)?.to_string(),
    };

    Ok(InstructionalDesign {
        id: design_id,
        context,
        goals,
        process,
        content: ContentCatalog {
            fragments,
            objects,
            learning_objects,
        },
        ui,
        metadata: parse_metadata(root)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_design;

    fn fixture() -> InstructionalDesign {
        parse_design(include_str!("../../tests/data/minimal-design.json")).unwrap()
    }

    #[test]
    fn owl_roundtrip_preserves_design() {
        let design = fixture();
        let xml = serialize_owl_xml(&design, &OwlOptions::default());
        let back = parse_design(&xml).unwrap();
        assert_eq!(design, back);
    }

    #[test]
    fn serialization_is_deterministic() {
        let design = fixture();
        let a = serialize_owl_xml(&design, &OwlOptions::default());
        let b = serialize_owl_xml(&design, &OwlOptions::default());
        assert_eq!(a, b);
    }

    #[test]
    fn goal_levels_emit_data_and_object_pair() {
        let design = fixture();
        let xml = serialize_owl_xml(&design, &OwlOptions::default());
        assert!(xml.contains("idont:goalCognitiveLevel"));
        assert!(xml.contains("<Literal>remember</Literal>"));
        assert!(xml.contains("idont:CognitiveLevel/remember"));
    }

    #[test]
    fn taxonomy_without_individuals_for_empty_catalog() {
        let mut design = fixture();
        design.goals.clear();
        design.context.goal_refs.clear();
        design.content = ContentCatalog {
            fragments: vec![],
            objects: vec![],
            learning_objects: vec![],
        };
        design.context.content_refs.clear();
        design.process.plays.clear();
        let xml = serialize_owl_xml(&design, &OwlOptions::default());
        assert!(xml.contains("<Declaration><Class IRI=\"idont:GoalNode\"/></Declaration>"));
        assert!(!xml.contains("idont:GoalNode/"));
        assert!(!xml.contains("idont:Play/"));
        let back = parse_design(&xml).unwrap();
        assert_eq!(design, back);
    }

    #[test]
    fn legacy_spelling_flag_roundtrips() {
        let design = fixture();
        let xml = serialize_owl_xml(
            &design,
            &OwlOptions {
                legacy_knowledge_spelling: true,
            },
        );
        assert!(xml.contains(LEGACY_FACTUAL_TOKEN));
        let back = parse_design(&xml).unwrap();
        assert_eq!(design, back);
    }

    #[test]
    fn payload_with_markup_survives() {
        let mut design = fixture();
        design.content.fragments[0].payload_ref = "text:<a & b> \"quoted\"\nline".to_string();
        let xml = serialize_owl_xml(&design, &OwlOptions::default());
        let back = parse_design(&xml).unwrap();
        assert_eq!(design, back);
    }
}
