//! Finite models of beliefs.
//!
//! A model of beliefs formalizes sound inference in the style of type
//! spaces: the reasoner conditions on its own type — the event "I observed
//! B" — rather than on B itself. Worlds carry a state of nature, a free
//! label, a type drawn from the non-trivial events of a shared [`Skeleton`],
//! and an exact-rational mass.
//!
//! The embedding of state sets into world sets is fixed as the cylinder over
//! the state coordinate: `alpha(A)` is the set of worlds whose state lies in
//! `A`. Belief models therefore carry explicit state coordinates, and
//! conformity to a model of evidence is decided by direct enumeration:
//! marginals must match the prior exactly, and each type's worlds must sit
//! inside the embedded event up to mass zero.
//!
//! Worlds with mass zero are permitted; they participate in the set
//! operations but never affect a verdict.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::evidence::{EventRef, ModelOfEvidence, Skeleton, StructureViolation, OMEGA_MARKER};
use crate::rational::Rat;

/// One state of the world.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct World {
    state: usize,
    label: String,
    type_idx: usize,
    mass: Rat,
}

impl World {
    pub fn state(&self) -> usize {
        self.state
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Index of this world's type among the base skeleton's events.
    pub fn type_idx(&self) -> usize {
        self.type_idx
    }

    pub fn mass(&self) -> &Rat {
        &self.mass
    }
}

/// A finite model of beliefs over a shared skeleton of states and events.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelOfBeliefs {
    base: Skeleton,
    worlds: Vec<World>,
}

impl ModelOfBeliefs {
    /// Builds a model from `(state, label, type, mass)` tuples. Types must
    /// name non-trivial events of the base skeleton, and `(state, label)`
    /// pairs must be unique.
    pub fn new<I, S1, S2, S3>(base: Skeleton, worlds: I) -> Result<ModelOfBeliefs, Error>
    where
        I: IntoIterator<Item = (S1, S2, S3, Rat)>,
        S1: AsRef<str>,
        S2: Into<String>,
        S3: AsRef<str>,
    {
        let mut built = Vec::new();
        let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
        for (state, label, type_name, mass) in worlds {
            let state_idx = base.state_index(state.as_ref())?;
            let type_name = type_name.as_ref();
            if type_name == OMEGA_MARKER {
                return Err(Error::OmegaTypedWorld);
            }
            let type_idx = base.event_index(type_name)?;
            let label: String = label.into();
            if !seen.insert((state_idx, label.clone())) {
                return Err(Error::DuplicateWorld {
                    state: state.as_ref().to_owned(),
                    label,
                });
            }
            built.push(World {
                state: state_idx,
                label,
                type_idx,
                mass,
            });
        }
        Ok(ModelOfBeliefs { base, worlds: built })
    }

    pub fn base(&self) -> &Skeleton {
        &self.base
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    /// Total mass of a set of world indices.
    pub fn mass(&self, worlds: &BTreeSet<usize>) -> Rat {
        worlds.iter().map(|&i| &self.worlds[i].mass).sum()
    }

    /// The worlds in which the reasoner's type is `b`: everything for the
    /// trivial event, otherwise exactly the worlds typed `b`.
    pub fn beta_event(&self, b: &EventRef) -> Result<BTreeSet<usize>, Error> {
        match b {
            EventRef::Omega => Ok((0..self.worlds.len()).collect()),
            EventRef::Named(name) => {
                let idx = self.base.event_index(name)?;
                Ok(self
                    .worlds
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| w.type_idx == idx)
                    .map(|(i, _)| i)
                    .collect())
            }
        }
    }

    /// Cylinder embedding of a set of state indices: the worlds whose state
    /// coordinate lies in the set.
    pub fn alpha_embed(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.worlds
            .iter()
            .enumerate()
            .filter(|(_, w)| states.contains(&w.state))
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks every axiom of a model of beliefs; empty report means valid.
    pub fn validate(&self) -> Vec<BeliefsViolation> {
        let mut out: Vec<BeliefsViolation> = self
            .base
            .structure_violations()
            .into_iter()
            .map(BeliefsViolation::Structure)
            .collect();

        for w in &self.worlds {
            if w.mass.is_negative() {
                out.push(BeliefsViolation::NegativeMass {
                    state: self.base.state_name(w.state).to_owned(),
                    label: w.label.clone(),
                });
            }
        }
        let total: Rat = self.worlds.iter().map(|w| &w.mass).sum();
        if total != Rat::one() {
            out.push(BeliefsViolation::MassNotNormalized { total });
        }

        for (idx, event) in self.base.events().iter().enumerate() {
            let realized = self
                .worlds
                .iter()
                .any(|w| w.type_idx == idx && w.mass.is_positive());
            if !realized {
                out.push(BeliefsViolation::TypeNeverRealized {
                    event: event.name().to_owned(),
                });
            }
            let type_mass: Rat = self
                .worlds
                .iter()
                .filter(|w| w.type_idx == idx)
                .map(|w| &w.mass)
                .sum();
            if !type_mass.is_positive() || type_mass >= Rat::one() {
                out.push(BeliefsViolation::TypeMassDegenerate {
                    event: event.name().to_owned(),
                    mass: type_mass,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Sound posterior: probability that the state of nature lies in `of`,
    /// conditional on the reasoner's type being `given`.
    pub fn sound_posterior(&self, of: &BTreeSet<usize>, given: &EventRef) -> Result<Rat, Error> {
        let beta = self.beta_event(given)?;
        let q_beta = self.mass(&beta);
        if q_beta.is_zero() {
            return Err(Error::ZeroMassConditioningEvent(given.clone()));
        }
        let alpha = self.alpha_embed(of);
        let joint: BTreeSet<usize> = alpha.intersection(&beta).copied().collect();
        Ok(self.mass(&joint) / q_beta)
    }

    /// Name-based variant of [`Self::sound_posterior`].
    pub fn sound_posterior_named(&self, of: &[&str], given: &EventRef) -> Result<Rat, Error> {
        let a = self.base.resolve_states(of.iter().copied())?;
        self.sound_posterior(&a, given)
    }

    /// Decides whether this model conforms to a model of evidence over the
    /// same skeleton: marginals on states equal the prior, and each type's
    /// mass sits inside the embedded event.
    pub fn check_conformity(&self, evidence: &ModelOfEvidence) -> Result<Conformity, Error> {
        if self.base != *evidence.skeleton() {
            return Err(Error::BaseMismatch);
        }
        for state in 0..self.base.states().len() {
            let singleton: BTreeSet<usize> = [state].into();
            let belief_mass = self.mass(&self.alpha_embed(&singleton));
            let prior_mass = evidence.prior_of(state).clone();
            if belief_mass != prior_mass {
                return Ok(Conformity::Fails(ConformityFailure::MarginalMismatch {
                    state: self.base.state_name(state).to_owned(),
                    belief_mass,
                    prior_mass,
                }));
            }
        }
        for event in self.base.events() {
            let beta = self.beta_event(&EventRef::named(event.name()))?;
            let alpha = self.alpha_embed(event.members());
            let stray: BTreeSet<usize> = beta.difference(&alpha).copied().collect();
            let stray_mass = self.mass(&stray);
            if !stray_mass.is_zero() {
                return Ok(Conformity::Fails(ConformityFailure::MassOutsideEvent {
                    event: event.name().to_owned(),
                    stray_mass,
                }));
            }
        }
        Ok(Conformity::Holds)
    }

    /// Decides whether this model justifies the model of evidence: it must
    /// conform, and every type-conditioned posterior must equal the
    /// corresponding event-conditioned posterior. Singletons suffice by
    /// additivity.
    pub fn check_justification(&self, evidence: &ModelOfEvidence) -> Result<Justification, Error> {
        match self.check_conformity(evidence)? {
            Conformity::Holds => {}
            Conformity::Fails(failure) => {
                return Ok(Justification::Fails(JustificationFailure::NotConforming(
                    failure,
                )))
            }
        }
        for given in self.base.event_refs() {
            for state in 0..self.base.states().len() {
                let singleton: BTreeSet<usize> = [state].into();
                let sound = self.sound_posterior(&singleton, &given)?;
                let heuristic = evidence.conditional_probability(&singleton, &given)?;
                if sound != heuristic {
                    return Ok(Justification::Fails(
                        JustificationFailure::PosteriorMismatch {
                            state: self.base.state_name(state).to_owned(),
                            given,
                            sound,
                            heuristic,
                        },
                    ));
                }
            }
        }
        Ok(Justification::Holds)
    }
}

/// Outcome of a conformity check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Conformity {
    Holds,
    Fails(ConformityFailure),
}

impl Conformity {
    pub fn holds(&self) -> bool {
        matches!(self, Conformity::Holds)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConformityFailure {
    /// The belief marginal of some state differs from its prior.
    MarginalMismatch {
        state: String,
        belief_mass: Rat,
        prior_mass: Rat,
    },
    /// Some type carries positive mass on worlds outside its own event.
    MassOutsideEvent { event: String, stray_mass: Rat },
}

impl fmt::Display for ConformityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConformityFailure::MarginalMismatch {
                state,
                belief_mass,
                prior_mass,
            } => write!(
                f,
                "marginal of state {state:?} is {belief_mass}, prior says {prior_mass}"
            ),
            ConformityFailure::MassOutsideEvent { event, stray_mass } => write!(
                f,
                "type {event:?} carries mass {stray_mass} on worlds outside the event"
            ),
        }
    }
}

/// Outcome of a justification check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Justification {
    Holds,
    Fails(JustificationFailure),
}

impl Justification {
    pub fn holds(&self) -> bool {
        matches!(self, Justification::Holds)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JustificationFailure {
    NotConforming(ConformityFailure),
    /// First state and event where the sound and heuristic posteriors part.
    PosteriorMismatch {
        state: String,
        given: EventRef,
        sound: Rat,
        heuristic: Rat,
    },
}

impl fmt::Display for JustificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JustificationFailure::NotConforming(failure) => {
                write!(f, "model does not conform: {failure}")
            }
            JustificationFailure::PosteriorMismatch {
                state,
                given,
                sound,
                heuristic,
            } => write!(
                f,
                "posterior of {state:?} given {given}: sound {sound} vs heuristic {heuristic}"
            ),
        }
    }
}

/// Violation reported by [`ModelOfBeliefs::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BeliefsViolation {
    Structure(StructureViolation),
    MassNotNormalized { total: Rat },
    NegativeMass { state: String, label: String },
    /// No positive-mass world realizes this type.
    TypeNeverRealized { event: String },
    /// The total mass of a type must be strictly between 0 and 1.
    TypeMassDegenerate { event: String, mass: Rat },
}

impl fmt::Display for BeliefsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeliefsViolation::Structure(s) => s.fmt(f),
            BeliefsViolation::MassNotNormalized { total } => {
                write!(f, "world masses sum to {total}, not 1")
            }
            BeliefsViolation::NegativeMass { state, label } => {
                write!(f, "world (state {state:?}, label {label:?}) has negative mass")
            }
            BeliefsViolation::TypeNeverRealized { event } => {
                write!(f, "no world with positive mass has type {event:?}")
            }
            BeliefsViolation::TypeMassDegenerate { event, mass } => {
                write!(f, "type {event:?} has total mass {mass}, not strictly between 0 and 1")
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::evidence::fixtures::{gauge, partition};

    fn states(m: &ModelOfBeliefs, names: &[&str]) -> BTreeSet<usize> {
        m.base().resolve_states(names.iter().copied()).unwrap()
    }

    #[test]
    fn gauge_beliefs_model_is_valid() {
        assert_eq!(gauge_beliefs().validate(), vec![]);
    }

    #[test]
    fn beta_collects_worlds_by_type() {
        let m = gauge_beliefs();
        let empty = m.beta_event(&EventRef::named("Empty")).unwrap();
        let labels: Vec<&str> = empty.iter().map(|&i| m.worlds()[i].label()).collect();
        assert_eq!(labels, vec!["Empty", "Empty", "Empty"]);
        assert_eq!(empty.len(), 3);
        assert_eq!(
            m.beta_event(&EventRef::Omega).unwrap().len(),
            m.worlds().len()
        );
    }

    #[test]
    fn alpha_is_the_cylinder_over_states() {
        let m = gauge_beliefs();
        let e_only = m.alpha_embed(&states(&m, &["e"]));
        assert_eq!(e_only.len(), 2);
        assert!(m.alpha_embed(&BTreeSet::new()).is_empty());
        assert_eq!(
            m.alpha_embed(&m.base().all_states()).len(),
            m.worlds().len()
        );
    }

    #[test]
    fn validation_catches_missing_and_degenerate_types() {
        let base = gauge().skeleton().clone();
        let no_f = ModelOfBeliefs::new(
            base.clone(),
            [
                ("e", "w0", "Empty", Rat::new(1, 2)),
                ("h", "w1", "Empty", Rat::new(1, 2)),
            ],
        )
        .unwrap();
        let report = no_f.validate();
        assert!(report.contains(&BeliefsViolation::TypeNeverRealized { event: "F".into() }));
        assert!(report.contains(&BeliefsViolation::TypeMassDegenerate {
            event: "F".into(),
            mass: Rat::zero(),
        }));
        assert!(report.contains(&BeliefsViolation::TypeMassDegenerate {
            event: "Empty".into(),
            mass: Rat::one(),
        }));
    }

    #[test]
    fn sound_posteriors_match_hand_calculation() {
        let m = gauge_beliefs();
        assert_eq!(
            m.sound_posterior(&states(&m, &["e"]), &EventRef::named("Empty"))
                .unwrap(),
            Rat::new(3, 5)
        );
        assert_eq!(
            m.sound_posterior(&states(&m, &["h"]), &EventRef::named("Empty"))
                .unwrap(),
            Rat::new(2, 5)
        );
        // Conditioning on the trivial event returns the marginal.
        assert_eq!(
            m.sound_posterior(&states(&m, &["h"]), &EventRef::Omega)
                .unwrap(),
            Rat::new(2, 5)
        );
    }

    #[test]
    fn sound_exceeds_heuristic_on_the_shared_gauge_reading() {
        let beliefs = gauge_beliefs();
        let evidence = gauge();
        let sound = beliefs
            .sound_posterior(&states(&beliefs, &["e"]), &EventRef::named("Empty"))
            .unwrap();
        let heuristic = evidence
            .conditional_probability_named(&["e"], &EventRef::named("Empty"))
            .unwrap();
        assert_eq!(sound, Rat::new(3, 5));
        assert_eq!(heuristic, Rat::new(3, 7));
        assert!(sound > heuristic);
    }

    #[test]
    fn conformity_holds_for_the_matched_pair() {
        assert!(gauge_beliefs().check_conformity(&gauge()).unwrap().holds());
    }

    #[test]
    fn conformity_fails_on_marginal_mismatch() {
        let outcome = confident_middle_beliefs().check_conformity(&gauge()).unwrap();
        match outcome {
            Conformity::Fails(ConformityFailure::MarginalMismatch {
                state,
                belief_mass,
                prior_mass,
            }) => {
                assert_eq!(state, "e");
                assert_eq!(belief_mass, Rat::new(1, 10));
                assert_eq!(prior_mass, Rat::new(3, 10));
            }
            other => panic!("expected marginal mismatch, got {other:?}"),
        }
    }

    #[test]
    fn conformity_fails_on_mass_outside_the_event() {
        let base = gauge().skeleton().clone();
        let stray = ModelOfBeliefs::new(
            base,
            [
                ("e", "w0", "F", Rat::new(3, 10)),
                ("h", "w1", "Empty", Rat::new(2, 5)),
                ("f", "w2", "F", Rat::new(3, 10)),
            ],
        )
        .unwrap();
        match stray.check_conformity(&gauge()).unwrap() {
            Conformity::Fails(ConformityFailure::MassOutsideEvent { event, stray_mass }) => {
                assert_eq!(event, "F");
                assert_eq!(stray_mass, Rat::new(3, 10));
            }
            other => panic!("expected stray-mass failure, got {other:?}"),
        }
    }

    #[test]
    fn conformity_requires_matching_base() {
        let other = partition();
        assert!(matches!(
            gauge_beliefs().check_conformity(&other),
            Err(Error::BaseMismatch)
        ));
    }

    #[test]
    fn matched_pair_conforms_but_does_not_justify() {
        let outcome = gauge_beliefs().check_justification(&gauge()).unwrap();
        match outcome {
            Justification::Fails(JustificationFailure::PosteriorMismatch {
                sound,
                heuristic,
                ..
            }) => {
                assert_ne!(sound, heuristic);
            }
            other => panic!("expected a posterior mismatch, got {other:?}"),
        }
        // The specific mismatch on the shared state used by the impossibility
        // argument: split mass halves the posterior relative to conditioning
        // on the event itself.
        let sound = gauge_beliefs()
            .sound_posterior_named(&["h"], &EventRef::named("Empty"))
            .unwrap();
        let heuristic = gauge()
            .conditional_probability_named(&["h"], &EventRef::named("Empty"))
            .unwrap();
        assert_eq!(sound, Rat::new(2, 5));
        assert_eq!(heuristic, Rat::new(4, 7));
    }

    #[test]
    fn almost_sure_partition_forces_justification() {
        let e = partition();
        let m = ModelOfBeliefs::new(
            e.skeleton().clone(),
            [
                ("a", "w", "A", Rat::new(1, 2)),
                ("b", "w", "B", Rat::new(1, 2)),
            ],
        )
        .unwrap();
        assert!(m.check_justification(&e).unwrap().holds());
    }

    #[test]
    fn conforming_marginals_decompose_over_types() {
        let m = gauge_beliefs();
        let e = gauge();
        for state in 0..e.skeleton().states().len() {
            let singleton: BTreeSet<usize> = [state].into();
            let alpha = m.alpha_embed(&singleton);
            let mut decomposed = Rat::zero();
            for event in m.base().events() {
                let beta = m.beta_event(&EventRef::named(event.name())).unwrap();
                let joint: BTreeSet<usize> = alpha.intersection(&beta).copied().collect();
                decomposed += m.mass(&joint);
            }
            assert_eq!(decomposed, m.mass(&alpha));
            assert_eq!(decomposed, e.prior_of(state).clone());
        }
    }

    #[test]
    fn justification_on_subsets_reduces_to_singletons() {
        // For the justifying pair of a partition model, every subset/event
        // combination agrees, not only singletons.
        let e = partition();
        let m = ModelOfBeliefs::new(
            e.skeleton().clone(),
            [
                ("a", "w", "A", Rat::new(1, 2)),
                ("b", "w", "B", Rat::new(1, 2)),
            ],
        )
        .unwrap();
        let subsets: Vec<Vec<&str>> = vec![vec![], vec!["a"], vec!["b"], vec!["a", "b"]];
        for sub in subsets {
            let a = e.skeleton().resolve_states(sub.iter().copied()).unwrap();
            for given in e.skeleton().event_refs() {
                let sound = m.sound_posterior(&a, &given).unwrap();
                let heuristic = e.conditional_probability(&a, &given).unwrap();
                assert_eq!(sound, heuristic);
            }
        }
    }
}
