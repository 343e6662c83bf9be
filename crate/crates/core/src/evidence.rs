//! Finite models of evidence.
//!
//! A model of evidence is a prior over states of nature together with a
//! family of named observable events. It formalizes heuristic inference:
//! the reasoner conditions directly on the observed event. The whole state
//! space always counts as a (trivial) observable event and is addressed by
//! the reserved marker [`EventRef::Omega`]; the named family holds only the
//! non-trivial events and must cover the state space.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::rational::Rat;

/// Reserved marker for the trivial event (the whole state space) in files
/// and command arguments. Not usable as an event name.
pub const OMEGA_MARKER: &str = "OMEGA";

/// Reference to an observable event: the whole state space or a named
/// member of the non-trivial family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EventRef {
    Omega,
    Named(String),
}

impl EventRef {
    pub fn parse(s: &str) -> EventRef {
        if s == OMEGA_MARKER {
            EventRef::Omega
        } else {
            EventRef::Named(s.to_owned())
        }
    }

    pub fn named(name: impl Into<String>) -> EventRef {
        EventRef::Named(name.into())
    }
}

impl fmt::Display for EventRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventRef::Omega => f.write_str(OMEGA_MARKER),
            EventRef::Named(name) => f.write_str(name),
        }
    }
}

/// A named non-trivial event: a set of state indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedEvent {
    name: String,
    members: BTreeSet<usize>,
}

impl NamedEvent {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }
}

/// States of nature plus the named event family, with no probabilities.
/// Shared between models of evidence and models of beliefs, and the input
/// to plan rationalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Skeleton {
    states: Vec<String>,
    events: Vec<NamedEvent>,
}

impl Skeleton {
    /// Builds a skeleton, resolving event members against the state list.
    /// Fails on unresolvable or duplicate names; whether the family
    /// satisfies the model axioms is a separate validation question.
    pub fn new<S, E, M>(states: Vec<String>, events: E) -> Result<Skeleton, Error>
    where
        E: IntoIterator<Item = (S, M)>,
        S: Into<String>,
        M: IntoIterator,
        M::Item: AsRef<str>,
    {
        if states.is_empty() {
            return Err(Error::EmptyStates);
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let skeleton_states = states;
        let mut named = Vec::new();
        let mut names = BTreeSet::new();
        for (name, members) in events {
            let name: String = name.into();
            if name == OMEGA_MARKER {
                return Err(Error::ReservedEventName);
            }
            if !names.insert(name.clone()) {
                return Err(Error::DuplicateEvent(name));
            }
            let mut set = BTreeSet::new();
            for m in members {
                let m = m.as_ref();
                let idx = skeleton_states
                    .iter()
                    .position(|s| s == m)
                    .ok_or_else(|| Error::UnknownState(m.to_owned()))?;
                set.insert(idx);
            }
            named.push(NamedEvent { name, members: set });
        }
        Ok(Skeleton {
            states: skeleton_states,
            events: named,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, idx: usize) -> &str {
        &self.states[idx]
    }

    pub fn state_index(&self, name: &str) -> Result<usize, Error> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_owned()))
    }

    pub fn events(&self) -> &[NamedEvent] {
        &self.events
    }

    pub fn event_index(&self, name: &str) -> Result<usize, Error> {
        self.events
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::UnknownEvent(name.to_owned()))
    }

    pub fn all_states(&self) -> BTreeSet<usize> {
        (0..self.states.len()).collect()
    }

    /// The set of state indices an event reference denotes.
    pub fn resolve_event(&self, event: &EventRef) -> Result<BTreeSet<usize>, Error> {
        match event {
            EventRef::Omega => Ok(self.all_states()),
            EventRef::Named(name) => Ok(self.events[self.event_index(name)?].members.clone()),
        }
    }

    pub fn resolve_states<'a, I>(&self, names: I) -> Result<BTreeSet<usize>, Error>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.state_index(n)).collect()
    }

    /// References to every observable event: the trivial one first, then
    /// the named family in order.
    pub fn event_refs(&self) -> Vec<EventRef> {
        std::iter::once(EventRef::Omega)
            .chain(self.events.iter().map(|e| EventRef::named(&e.name)))
            .collect()
    }

    /// Set-level axioms shared by every model built over this skeleton.
    pub fn structure_violations(&self) -> Vec<StructureViolation> {
        let mut out = Vec::new();
        if self.events.len() < 2 {
            out.push(StructureViolation::TooFewEvents {
                count: self.events.len(),
            });
        }
        let full: BTreeSet<usize> = self.all_states();
        let mut covered = BTreeSet::new();
        for e in &self.events {
            if e.members.is_empty() {
                out.push(StructureViolation::EmptyEvent {
                    event: e.name.clone(),
                });
            }
            if e.members == full {
                out.push(StructureViolation::EventEqualsStateSpace {
                    event: e.name.clone(),
                });
            }
            covered.extend(e.members.iter().copied());
        }
        for (i, a) in self.events.iter().enumerate() {
            for b in &self.events[i + 1..] {
                if a.members == b.members {
                    out.push(StructureViolation::DuplicateEventExtension {
                        first: a.name.clone(),
                        second: b.name.clone(),
                    });
                }
            }
        }
        if covered != full {
            let missing = full
                .difference(&covered)
                .map(|&i| self.states[i].clone())
                .collect();
            out.push(StructureViolation::EventsDoNotCover { missing });
        }
        out
    }
}

/// Violation of the set-level axioms of the event family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StructureViolation {
    /// Fewer than two non-trivial events; the family cannot both cover the
    /// state space and exclude the trivial event.
    TooFewEvents { count: usize },
    EmptyEvent { event: String },
    /// A named event is extensionally the whole state space; that event is
    /// trivial and must not appear in the family.
    EventEqualsStateSpace { event: String },
    /// Two names denote the same set of states; the family is a set of
    /// events, so this is a repetition.
    DuplicateEventExtension { first: String, second: String },
    /// Every state must lie in some non-trivial event.
    EventsDoNotCover { missing: Vec<String> },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::TooFewEvents { count } => {
                write!(f, "event family has {count} non-trivial event(s); at least 2 are required")
            }
            StructureViolation::EmptyEvent { event } => {
                write!(f, "event {event:?} is empty")
            }
            StructureViolation::EventEqualsStateSpace { event } => {
                write!(f, "event {event:?} equals the whole state space")
            }
            StructureViolation::DuplicateEventExtension { first, second } => {
                write!(f, "events {first:?} and {second:?} contain exactly the same states")
            }
            StructureViolation::EventsDoNotCover { missing } => {
                write!(f, "no event contains state(s) {missing:?}")
            }
        }
    }
}

/// Violation reported by [`ModelOfEvidence::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvidenceViolation {
    Structure(StructureViolation),
    PriorNotNormalized { total: Rat },
    NegativePrior { state: String },
    /// P(B) = 0 for a non-trivial event B.
    EventWithoutMass { event: String },
    /// P(C \ B) = 0 although C is not contained in B: observing B would
    /// also certify C, so C is not a separate piece of evidence.
    NoMassOutside { event: EventRef, outside_of: EventRef },
}

impl fmt::Display for EvidenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceViolation::Structure(s) => s.fmt(f),
            EvidenceViolation::PriorNotNormalized { total } => {
                write!(f, "prior probabilities sum to {total}, not 1")
            }
            EvidenceViolation::NegativePrior { state } => {
                write!(f, "prior probability of state {state:?} is negative")
            }
            EvidenceViolation::EventWithoutMass { event } => {
                write!(f, "event {event:?} has probability 0")
            }
            EvidenceViolation::NoMassOutside { event, outside_of } => {
                write!(
                    f,
                    "event {event} is not contained in {outside_of} yet has no mass outside it"
                )
            }
        }
    }
}

/// A finite model of evidence: states of nature, an exact-rational prior,
/// and the named family of non-trivial observable events.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelOfEvidence {
    skeleton: Skeleton,
    prior: Vec<Rat>,
}

impl ModelOfEvidence {
    /// Attaches a prior to a skeleton. Every state needs exactly one entry.
    pub fn new<'a, I>(skeleton: Skeleton, prior: I) -> Result<ModelOfEvidence, Error>
    where
        I: IntoIterator<Item = (&'a str, Rat)>,
    {
        let mut values: Vec<Option<Rat>> = vec![None; skeleton.states.len()];
        for (name, p) in prior {
            let idx = skeleton.state_index(name)?;
            if values[idx].is_some() {
                return Err(Error::DuplicateState(name.to_owned()));
            }
            values[idx] = Some(p);
        }
        let mut prior = Vec::with_capacity(values.len());
        for (idx, v) in values.into_iter().enumerate() {
            match v {
                Some(p) => prior.push(p),
                None => return Err(Error::MissingPrior(skeleton.states[idx].clone())),
            }
        }
        Ok(ModelOfEvidence { skeleton, prior })
    }

    /// Convenience constructor used throughout the test suites.
    pub fn from_parts<'a, S, E, M, P>(states: Vec<String>, events: E, prior: P) -> Result<Self, Error>
    where
        E: IntoIterator<Item = (S, M)>,
        S: Into<String>,
        M: IntoIterator,
        M::Item: AsRef<str>,
        P: IntoIterator<Item = (&'a str, Rat)>,
    {
        ModelOfEvidence::new(Skeleton::new(states, events)?, prior)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn prior(&self) -> &[Rat] {
        &self.prior
    }

    pub fn prior_of(&self, state: usize) -> &Rat {
        &self.prior[state]
    }

    /// Total prior mass of a set of state indices.
    pub fn mass(&self, states: &BTreeSet<usize>) -> Rat {
        states.iter().map(|&i| &self.prior[i]).sum()
    }

    /// Checks every axiom of a model of evidence and reports the violated
    /// clauses. An empty report means the model is valid.
    pub fn validate(&self) -> Vec<EvidenceViolation> {
        let mut out: Vec<EvidenceViolation> = self
            .skeleton
            .structure_violations()
            .into_iter()
            .map(EvidenceViolation::Structure)
            .collect();

        for (i, p) in self.prior.iter().enumerate() {
            if p.is_negative() {
                out.push(EvidenceViolation::NegativePrior {
                    state: self.skeleton.states[i].clone(),
                });
            }
        }
        let total: Rat = self.prior.iter().sum();
        if total != Rat::one() {
            out.push(EvidenceViolation::PriorNotNormalized { total });
        }

        for e in &self.skeleton.events {
            if self.mass(&e.members).is_zero() {
                out.push(EvidenceViolation::EventWithoutMass {
                    event: e.name.clone(),
                });
            }
        }

        // Pairwise clause over every ordered pair of observable events,
        // the trivial one included.
        let mut family: Vec<(EventRef, BTreeSet<usize>)> = self
            .skeleton
            .events
            .iter()
            .map(|e| (EventRef::named(&e.name), e.members.clone()))
            .collect();
        family.push((EventRef::Omega, self.skeleton.all_states()));
        for (c_ref, c_set) in &family {
            for (b_ref, b_set) in &family {
                if c_ref == b_ref || c_set.is_subset(b_set) {
                    continue;
                }
                let difference: BTreeSet<usize> = c_set.difference(b_set).copied().collect();
                if self.mass(&difference).is_zero() {
                    out.push(EvidenceViolation::NoMassOutside {
                        event: c_ref.clone(),
                        outside_of: b_ref.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Heuristic posterior: the probability of `of` conditional on the
    /// observed event itself, `P(A | B) = P(A and B) / P(B)`. Conditioning
    /// on the trivial event returns the prior probability.
    pub fn conditional_probability(&self, of: &BTreeSet<usize>, given: &EventRef) -> Result<Rat, Error> {
        let b = self.skeleton.resolve_event(given)?;
        let p_b = self.mass(&b);
        if p_b.is_zero() {
            return Err(Error::ZeroMassConditioningEvent(given.clone()));
        }
        let a_and_b: BTreeSet<usize> = of.intersection(&b).copied().collect();
        Ok(self.mass(&a_and_b) / p_b)
    }

    /// Name-based variant of [`Self::conditional_probability`].
    pub fn conditional_probability_named(&self, of: &[&str], given: &EventRef) -> Result<Rat, Error> {
        let a = self.skeleton.resolve_states(of.iter().copied())?;
        self.conditional_probability(&a, given)
    }
}
