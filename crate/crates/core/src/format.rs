//! The JSON interchange format.
//!
//! Every file is a single JSON document with a top-level `"kind"` selecting
//! the object: `"evidence"`, `"beliefs"`, `"situation"`, `"plan"`,
//! `"utilities"`, or `"theta"`. Probabilities, utilities, and weights are
//! canonical rational strings (`"3/10"`, `"2"`); unknown fields are
//! rejected; event families keep their order. Serialization is canonical,
//! so parsing and re-serializing a file is the identity and identical
//! inputs always produce byte-identical output.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::balance::BalancingFunction;
use crate::beliefs::ModelOfBeliefs;
use crate::classify::{Scope, Situation};
use crate::error::Error;
use crate::evidence::{EventRef, ModelOfEvidence, Skeleton};
use crate::plan::{Plan, StateUtilities, WorldUtilities};
use crate::rational::Rat;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown kind {0:?}; expected one of evidence, beliefs, situation, plan, utilities, theta")]
    UnknownKind(String),
    #[error("kind is {found:?}, expected {expected:?}")]
    WrongKind { expected: &'static str, found: String },
    #[error("scope must be \"full\" or a list of belief models")]
    InvalidScope,
    #[error("utilities carrier is {0:?}; expected \"states\" or \"worlds\"")]
    UnknownCarrier(String),
    #[error("utility rows disagree on their keys: alternative {0:?} differs from the first row")]
    RaggedUtilityRows(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

/// Any parsed model file.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFile {
    Evidence(EvidenceFile),
    Beliefs(BeliefsFile),
    Situation(SituationFile),
    Plan(PlanFile),
    Utilities(UtilitiesFile),
    Theta(ThetaFile),
}

impl ModelFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::Evidence(_) => "evidence",
            ModelFile::Beliefs(_) => "beliefs",
            ModelFile::Situation(_) => "situation",
            ModelFile::Plan(_) => "plan",
            ModelFile::Utilities(_) => "utilities",
            ModelFile::Theta(_) => "theta",
        }
    }

    pub fn to_canonical_json(&self) -> String {
        match self {
            ModelFile::Evidence(f) => to_canonical_json(f),
            ModelFile::Beliefs(f) => to_canonical_json(f),
            ModelFile::Situation(f) => to_canonical_json(f),
            ModelFile::Plan(f) => to_canonical_json(f),
            ModelFile::Utilities(f) => to_canonical_json(f),
            ModelFile::Theta(f) => to_canonical_json(f),
        }
    }
}

#[derive(Deserialize)]
struct KindProbe {
    kind: String,
}

/// Parses one model file; JSON errors carry line/column locations.
pub fn parse_model_file(text: &str) -> Result<ModelFile, FormatError> {
    let probe: KindProbe = serde_json::from_str(text)?;
    Ok(match probe.kind.as_str() {
        "evidence" => ModelFile::Evidence(serde_json::from_str(text)?),
        "beliefs" => ModelFile::Beliefs(serde_json::from_str(text)?),
        "situation" => ModelFile::Situation(serde_json::from_str(text)?),
        "plan" => ModelFile::Plan(serde_json::from_str(text)?),
        "utilities" => ModelFile::Utilities(serde_json::from_str(text)?),
        "theta" => ModelFile::Theta(serde_json::from_str(text)?),
        other => return Err(FormatError::UnknownKind(other.to_owned())),
    })
}

/// Pretty-printed JSON with a trailing newline; field order fixed by the
/// struct declarations and map insertion order.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable report");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EvidenceFile {
    pub kind: String,
    pub states: Vec<String>,
    pub prior: IndexMap<String, Rat>,
    pub events: IndexMap<String, Vec<String>>,
}

impl EvidenceFile {
    pub fn to_model(&self) -> Result<ModelOfEvidence, Error> {
        build_evidence(&self.states, &self.prior, &self.events)
    }

    pub fn from_model(model: &ModelOfEvidence) -> EvidenceFile {
        let body = EvidenceBody::from_model(model);
        EvidenceFile {
            kind: "evidence".into(),
            states: body.states,
            prior: body.prior,
            events: body.events,
        }
    }
}

/// Evidence model object nested inside situation files.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EvidenceBody {
    pub states: Vec<String>,
    pub prior: IndexMap<String, Rat>,
    pub events: IndexMap<String, Vec<String>>,
}

impl EvidenceBody {
    pub fn to_model(&self) -> Result<ModelOfEvidence, Error> {
        build_evidence(&self.states, &self.prior, &self.events)
    }

    pub fn from_model(model: &ModelOfEvidence) -> EvidenceBody {
        let skeleton = SkeletonBody::from_skeleton(model.skeleton());
        EvidenceBody {
            states: skeleton.states,
            prior: model
                .skeleton()
                .states()
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), model.prior_of(i).clone()))
                .collect(),
            events: skeleton.events,
        }
    }
}

fn build_evidence(
    states: &[String],
    prior: &IndexMap<String, Rat>,
    events: &IndexMap<String, Vec<String>>,
) -> Result<ModelOfEvidence, Error> {
    let skeleton = build_skeleton(states, events)?;
    ModelOfEvidence::new(
        skeleton,
        prior.iter().map(|(k, v)| (k.as_str(), v.clone())),
    )
}

fn build_skeleton(
    states: &[String],
    events: &IndexMap<String, Vec<String>>,
) -> Result<Skeleton, Error> {
    Skeleton::new(
        states.to_vec(),
        events
            .iter()
            .map(|(name, members)| (name.clone(), members.iter().map(String::as_str).collect::<Vec<_>>())),
    )
}

/// States and events without probabilities; the base of a belief model.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SkeletonBody {
    pub states: Vec<String>,
    pub events: IndexMap<String, Vec<String>>,
}

impl SkeletonBody {
    pub fn to_skeleton(&self) -> Result<Skeleton, Error> {
        build_skeleton(&self.states, &self.events)
    }

    pub fn from_skeleton(skeleton: &Skeleton) -> SkeletonBody {
        SkeletonBody {
            states: skeleton.states().to_vec(),
            events: skeleton
                .events()
                .iter()
                .map(|e| {
                    (
                        e.name().to_owned(),
                        e.members()
                            .iter()
                            .map(|&i| skeleton.state_name(i).to_owned())
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WorldEntry {
    pub state: String,
    pub label: String,
    #[serde(rename = "type")]
    pub world_type: String,
    pub q: Rat,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BeliefsFile {
    pub kind: String,
    pub base: SkeletonBody,
    pub worlds: Vec<WorldEntry>,
}

impl BeliefsFile {
    pub fn to_model(&self) -> Result<ModelOfBeliefs, Error> {
        build_beliefs(&self.base, &self.worlds)
    }

    pub fn from_model(model: &ModelOfBeliefs) -> BeliefsFile {
        let body = BeliefsBody::from_model(model);
        BeliefsFile {
            kind: "beliefs".into(),
            base: body.base,
            worlds: body.worlds,
        }
    }
}

/// Belief model object nested inside situation files.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BeliefsBody {
    pub base: SkeletonBody,
    pub worlds: Vec<WorldEntry>,
}

impl BeliefsBody {
    pub fn to_model(&self) -> Result<ModelOfBeliefs, Error> {
        build_beliefs(&self.base, &self.worlds)
    }

    pub fn from_model(model: &ModelOfBeliefs) -> BeliefsBody {
        BeliefsBody {
            base: SkeletonBody::from_skeleton(model.base()),
            worlds: model
                .worlds()
                .iter()
                .map(|w| WorldEntry {
                    state: model.base().state_name(w.state()).to_owned(),
                    label: w.label().to_owned(),
                    world_type: model.base().events()[w.type_idx()].name().to_owned(),
                    q: w.mass().clone(),
                })
                .collect(),
        }
    }
}

fn build_beliefs(base: &SkeletonBody, worlds: &[WorldEntry]) -> Result<ModelOfBeliefs, Error> {
    let skeleton = base.to_skeleton()?;
    ModelOfBeliefs::new(
        skeleton,
        worlds
            .iter()
            .map(|w| (w.state.as_str(), w.label.clone(), w.world_type.as_str(), w.q.clone())),
    )
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum ScopeEntry {
    Marker(String),
    Explicit(Vec<BeliefsBody>),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SituationFile {
    pub kind: String,
    pub evidence: EvidenceBody,
    pub scope: ScopeEntry,
}

impl SituationFile {
    pub fn to_situation(&self) -> Result<Situation, FormatError> {
        let evidence = self.evidence.to_model()?;
        let scope = match &self.scope {
            ScopeEntry::Marker(s) if s == "full" => Scope::Full,
            ScopeEntry::Marker(_) => return Err(FormatError::InvalidScope),
            ScopeEntry::Explicit(models) => {
                let bound: Result<Vec<ModelOfBeliefs>, Error> =
                    models.iter().map(|m| m.to_model()).collect();
                Scope::Explicit(bound?)
            }
        };
        Ok(Situation { evidence, scope })
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub kind: String,
    pub alternatives: Vec<String>,
    pub choice: IndexMap<String, Vec<String>>,
}

impl PlanFile {
    pub fn to_plan(&self) -> Result<Plan, Error> {
        Plan::new(
            self.alternatives.clone(),
            self.choice
                .iter()
                .map(|(event, chosen)| (EventRef::parse(event), chosen.clone())),
        )
    }

    pub fn from_plan(plan: &Plan) -> PlanFile {
        PlanFile {
            kind: "plan".into(),
            alternatives: plan.alternatives().to_vec(),
            choice: plan
                .choices()
                .iter()
                .map(|(event, chosen)| {
                    (event.to_string(), chosen.iter().cloned().collect::<Vec<_>>())
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ThetaFile {
    pub kind: String,
    pub theta: IndexMap<String, Rat>,
}

impl ThetaFile {
    pub fn to_balancing(&self) -> BalancingFunction {
        BalancingFunction::new(self.theta.iter().map(|(k, v)| (k.clone(), v.clone())))
    }

    pub fn from_balancing(theta: &BalancingFunction) -> ThetaFile {
        ThetaFile {
            kind: "theta".into(),
            theta: theta
                .weights()
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

/// Utility values per alternative. State-contingent tables map state ids to
/// values; world-contingent tables list (state, label, value) triples.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum UtilityRows {
    ByState(IndexMap<String, IndexMap<String, Rat>>),
    ByWorld(IndexMap<String, Vec<WorldUtilityEntry>>),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WorldUtilityEntry {
    pub state: String,
    pub label: String,
    pub value: Rat,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UtilitiesFile {
    pub kind: String,
    pub carrier: String,
    pub values: UtilityRows,
}

impl UtilitiesFile {
    /// Shape check without a model: the carrier tag must match the row
    /// shape and every alternative must cover the same carrier points.
    pub fn check_shape(&self) -> Result<(), FormatError> {
        match (self.carrier.as_str(), &self.values) {
            ("states", UtilityRows::ByState(rows)) => {
                let mut first: Option<(&String, Vec<&String>)> = None;
                for (alt, row) in rows {
                    let keys: Vec<&String> = row.keys().collect();
                    match &first {
                        None => first = Some((alt, keys)),
                        Some((_, expected)) if *expected == keys => {}
                        Some(_) => return Err(FormatError::RaggedUtilityRows(alt.clone())),
                    }
                }
                Ok(())
            }
            ("worlds", UtilityRows::ByWorld(rows)) => {
                let mut first: Option<(&String, Vec<(&String, &String)>)> = None;
                for (alt, row) in rows {
                    let keys: Vec<(&String, &String)> =
                        row.iter().map(|e| (&e.state, &e.label)).collect();
                    match &first {
                        None => first = Some((alt, keys)),
                        Some((_, expected)) if *expected == keys => {}
                        Some(_) => return Err(FormatError::RaggedUtilityRows(alt.clone())),
                    }
                }
                Ok(())
            }
            ("states", _) | ("worlds", _) => Err(FormatError::RaggedUtilityRows(
                "carrier does not match the row shape".into(),
            )),
            (other, _) => Err(FormatError::UnknownCarrier(other.to_owned())),
        }
    }

    pub fn to_state_utilities(&self, skeleton: &Skeleton) -> Result<StateUtilities, FormatError> {
        match &self.values {
            UtilityRows::ByState(rows) if self.carrier == "states" => {
                let entries = rows.iter().map(|(alt, row)| {
                    (
                        alt.clone(),
                        row.iter()
                            .map(|(k, v)| (k.clone(), v.clone()))
                            .collect::<BTreeMap<_, _>>(),
                    )
                });
                Ok(StateUtilities::from_entries(skeleton, entries)?)
            }
            _ => Err(FormatError::UnknownCarrier(self.carrier.clone())),
        }
    }

    pub fn to_world_utilities(&self, model: &ModelOfBeliefs) -> Result<WorldUtilities, FormatError> {
        match &self.values {
            UtilityRows::ByWorld(rows) if self.carrier == "worlds" => {
                let entries = rows.iter().map(|(alt, row)| {
                    (
                        alt.clone(),
                        row.iter()
                            .map(|e| ((e.state.clone(), e.label.clone()), e.value.clone()))
                            .collect::<BTreeMap<_, _>>(),
                    )
                });
                Ok(WorldUtilities::from_entries(model, entries)?)
            }
            _ => Err(FormatError::UnknownCarrier(self.carrier.clone())),
        }
    }

    pub fn from_state_utilities(skeleton: &Skeleton, u: &StateUtilities) -> UtilitiesFile {
        let rows = u
            .alternatives()
            .iter()
            .enumerate()
            .map(|(ai, alt)| {
                (
                    alt.clone(),
                    skeleton
                        .states()
                        .iter()
                        .enumerate()
                        .map(|(si, s)| (s.clone(), u.value(ai, si).clone()))
                        .collect(),
                )
            })
            .collect();
        UtilitiesFile {
            kind: "utilities".into(),
            carrier: "states".into(),
            values: UtilityRows::ByState(rows),
        }
    }

    pub fn from_world_utilities(model: &ModelOfBeliefs, v: &WorldUtilities) -> UtilitiesFile {
        let rows = v
            .alternatives()
            .iter()
            .enumerate()
            .map(|(ai, alt)| {
                (
                    alt.clone(),
                    model
                        .worlds()
                        .iter()
                        .enumerate()
                        .map(|(wi, w)| WorldUtilityEntry {
                            state: model.base().state_name(w.state()).to_owned(),
                            label: w.label().to_owned(),
                            value: v.value(ai, wi).clone(),
                        })
                        .collect(),
                )
            })
            .collect();
        UtilitiesFile {
            kind: "utilities".into(),
            carrier: "worlds".into(),
            values: UtilityRows::ByWorld(rows),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVIDENCE: &str = r#"{
  "kind": "evidence",
  "states": ["e", "h", "f"],
  "prior": { "e": "3/10", "h": "2/5", "f": "3/10" },
  "events": { "Empty": ["e", "h"], "F": ["h", "f"] }
}"#;

    #[test]
    fn evidence_files_round_trip() {
        let parsed = parse_model_file(EVIDENCE).unwrap();
        let ModelFile::Evidence(file) = &parsed else {
            panic!("wrong kind")
        };
        let model = file.to_model().unwrap();
        assert!(model.is_valid());
        let rendered = parsed.to_canonical_json();
        let reparsed = parse_model_file(&rendered).unwrap();
        assert_eq!(parsed, reparsed);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = EVIDENCE.replacen("\"states\"", "\"extra\": 1, \"states\"", 1);
        let err = parse_model_file(&text).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn non_canonical_rationals_are_rejected_with_a_location() {
        let text = EVIDENCE.replace("3/10", "6/20");
        let err = parse_model_file(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("canonical"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let err = parse_model_file(r#"{"kind": "mystery"}"#).unwrap_err();
        assert!(matches!(err, FormatError::UnknownKind(_)));
    }

    #[test]
    fn event_order_survives_round_trips() {
        let text = r#"{
  "kind": "evidence",
  "states": ["a", "b", "c"],
  "prior": { "a": "1/3", "b": "1/3", "c": "1/3" },
  "events": { "Z": ["a", "b"], "A": ["b", "c"], "M": ["c", "a"] }
}"#;
        let ModelFile::Evidence(file) = parse_model_file(text).unwrap() else {
            panic!("wrong kind")
        };
        let names: Vec<&str> = file.events.keys().map(String::as_str).collect();
        assert_eq!(names, vec!["Z", "A", "M"]);
        let model = file.to_model().unwrap();
        let names: Vec<&str> = model.skeleton().events().iter().map(|e| e.name()).collect();
        assert_eq!(names, vec!["Z", "A", "M"]);
    }

    #[test]
    fn situations_parse_both_scopes() {
        let full = r#"{
  "kind": "situation",
  "evidence": {
    "states": ["a", "b"],
    "prior": { "a": "1/2", "b": "1/2" },
    "events": { "A": ["a"], "B": ["b"] }
  },
  "scope": "full"
}"#;
        let ModelFile::Situation(file) = parse_model_file(full).unwrap() else {
            panic!("wrong kind")
        };
        let situation = file.to_situation().unwrap();
        assert!(matches!(situation.scope, Scope::Full));

        let explicit = full.replace(
            "\"full\"",
            r#"[{
  "base": { "states": ["a", "b"], "events": { "A": ["a"], "B": ["b"] } },
  "worlds": [
    { "state": "a", "label": "A", "type": "A", "q": "1/2" },
    { "state": "b", "label": "B", "type": "B", "q": "1/2" }
  ]
}]"#,
        );
        let ModelFile::Situation(file) = parse_model_file(&explicit).unwrap() else {
            panic!("wrong kind")
        };
        let situation = file.to_situation().unwrap();
        match situation.scope {
            Scope::Explicit(models) => assert_eq!(models.len(), 1),
            Scope::Full => panic!("expected explicit scope"),
        }
    }

    #[test]
    fn model_serialization_is_deterministic() {
        let ModelFile::Evidence(file) = parse_model_file(EVIDENCE).unwrap() else {
            panic!("wrong kind")
        };
        let model = file.to_model().unwrap();
        let once = to_canonical_json(&EvidenceFile::from_model(&model));
        let twice = to_canonical_json(&EvidenceFile::from_model(&model));
        assert_eq!(once, twice);
        assert_eq!(once, parse_model_file(&once).unwrap().to_canonical_json());
    }
}
