//! Crate-wide error type for structural problems: unresolvable names,
//! mismatched structures, unmet preconditions. Violations of the model
//! axioms are not errors; validation returns those as data.

use crate::evidence::EventRef;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("state set is empty")]
    EmptyStates,
    #[error("duplicate state id {0:?}")]
    DuplicateState(String),
    #[error("unknown state id {0:?}")]
    UnknownState(String),
    #[error("duplicate event name {0:?}")]
    DuplicateEvent(String),
    #[error("unknown event name {0:?}")]
    UnknownEvent(String),
    #[error("\"OMEGA\" is reserved and cannot name an event")]
    ReservedEventName,
    #[error("missing prior probability for state {0:?}")]
    MissingPrior(String),
    #[error("duplicate world (state {state:?}, label {label:?})")]
    DuplicateWorld { state: String, label: String },
    #[error("a world's type must be a non-trivial event, not the whole state space")]
    OmegaTypedWorld,
    #[error("conditioning event {0} has zero mass")]
    ZeroMassConditioningEvent(EventRef),
    #[error("belief model is built over a different state space or event family")]
    BaseMismatch,
    #[error("belief model does not justify the evidence model: {0}")]
    NotJustifying(String),
    #[error("not a balancing function: {0}")]
    NotBalancing(String),
    #[error("situation lists a model that does not conform to its evidence model (index {index}): {failure}")]
    NonConformingScopeModel { index: usize, failure: String },
    #[error("skeleton is not a valid evidence structure: {0}")]
    InvalidSkeleton(String),
    #[error("model violates its axioms: {0}")]
    InvalidModel(String),
    #[error("plan does not cover this event family: {0}")]
    PlanMismatch(String),
    #[error("unknown alternative {0:?}")]
    UnknownAlternative(String),
    #[error("duplicate alternative {0:?}")]
    DuplicateAlternative(String),
    #[error("utility table is missing a value for alternative {alternative:?} at {carrier}")]
    MissingUtility { alternative: String, carrier: String },
    #[error("no such world (state {state:?}, label {label:?})")]
    UnknownWorld { state: String, label: String },
    #[error("alternative set is empty")]
    EmptyAlternatives,
    #[error("fewer than two non-trivial events; no belief model can realize every type")]
    DegenerateEventFamily,
}
