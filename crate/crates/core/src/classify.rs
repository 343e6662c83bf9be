//! The situation trichotomy.
//!
//! A situation pairs a model of evidence with a scope of conforming belief
//! models — either an explicit list or "all of them". It is classified by
//! how many scope members justify the evidence model: none (type 1, the
//! heuristic posteriors are demonstrably biased), all (type 2, heuristic and
//! sound reasoning coincide), or some but not all (type 3, the observed
//! posteriors cannot settle whether bias occurred).
//!
//! The full scope cannot be enumerated, so full situations are classified by
//! the structural characterization instead: unbalanced models admit no
//! justifying member; almost-sure partitions force every conforming member
//! to justify; balanced models with a positively-overlapping event pair
//! admit both kinds of member.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::balance::{find_balancing, BalanceOutcome};
use crate::beliefs::ModelOfBeliefs;
use crate::construct::nonjustifying_pair;
use crate::error::Error;
use crate::evidence::ModelOfEvidence;

/// Which belief models a situation quantifies over.
#[derive(Clone, Debug)]
pub enum Scope {
    /// Every belief model conforming to the evidence model.
    Full,
    /// An explicit non-empty list; each member must conform.
    Explicit(Vec<ModelOfBeliefs>),
}

#[derive(Clone, Debug)]
pub struct Situation {
    pub evidence: ModelOfEvidence,
    pub scope: Scope,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TypeTag {
    #[serde(rename = "TYPE1")]
    Type1,
    #[serde(rename = "TYPE2")]
    Type2,
    #[serde(rename = "TYPE3")]
    Type3,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Type1 => f.write_str("TYPE1"),
            TypeTag::Type2 => f.write_str("TYPE2"),
            TypeTag::Type3 => f.write_str("TYPE3"),
        }
    }
}

/// Classification along with the facts that decided it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SituationType {
    pub tag: TypeTag,
    pub trail: String,
}

/// Whether every pair of distinct events overlaps only on mass zero.
pub fn is_almost_sure_partition(e: &ModelOfEvidence) -> bool {
    let events = e.skeleton().events();
    for (i, c) in events.iter().enumerate() {
        for d in &events[i + 1..] {
            let overlap: BTreeSet<usize> = c.members().intersection(d.members()).copied().collect();
            if e.mass(&overlap).is_positive() {
                return false;
            }
        }
    }
    true
}

/// Classifies a situation into the trichotomy.
pub fn classify_situation(situation: &Situation) -> Result<SituationType, Error> {
    let e = &situation.evidence;
    let violations = e.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidModel(join(&violations)));
    }

    match &situation.scope {
        Scope::Full => Ok(classify_full(e)),
        Scope::Explicit(models) => classify_explicit(e, models),
    }
}

fn classify_full(e: &ModelOfEvidence) -> SituationType {
    match find_balancing(e) {
        BalanceOutcome::Unbalanced { .. } => SituationType {
            tag: TypeTag::Type1,
            trail: "the evidence model is not balanced, so no conforming belief model justifies it"
                .into(),
        },
        BalanceOutcome::Balanced(_) => {
            if is_almost_sure_partition(e) {
                SituationType {
                    tag: TypeTag::Type2,
                    trail: "the events form an almost-sure partition, so every conforming belief model justifies the evidence model"
                        .into(),
                }
            } else {
                let (first, second) =
                    nonjustifying_pair(e).expect("non-partition models have an overlapping pair");
                SituationType {
                    tag: TypeTag::Type3,
                    trail: format!(
                        "the evidence model is balanced, but events {first:?} and {second:?} overlap with positive mass: some conforming belief models justify it and others do not"
                    ),
                }
            }
        }
    }
}

fn classify_explicit(
    e: &ModelOfEvidence,
    models: &[ModelOfBeliefs],
) -> Result<SituationType, Error> {
    let mut justifying = Vec::new();
    let mut refuting = Vec::new();
    for (index, m) in models.iter().enumerate() {
        let violations = m.validate();
        if !violations.is_empty() {
            return Err(Error::NonConformingScopeModel {
                index,
                failure: violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            });
        }
        match m.check_conformity(e)? {
            crate::beliefs::Conformity::Holds => {}
            crate::beliefs::Conformity::Fails(failure) => {
                return Err(Error::NonConformingScopeModel {
                    index,
                    failure: failure.to_string(),
                })
            }
        }
        if m.check_justification(e)?.holds() {
            justifying.push(index);
        } else {
            refuting.push(index);
        }
    }

    let tag = if justifying.is_empty() {
        TypeTag::Type1
    } else if refuting.is_empty() {
        TypeTag::Type2
    } else {
        TypeTag::Type3
    };
    let trail = format!(
        "{} of {} listed belief models justify the evidence model (justifying: {justifying:?}, non-justifying: {refuting:?})",
        justifying.len(),
        models.len(),
    );
    Ok(SituationType { tag, trail })
}

fn join(violations: &[crate::evidence::EvidenceViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
