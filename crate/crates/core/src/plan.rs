//! Plans and their rationalizability.
//!
//! A plan assigns a non-empty set of chosen alternatives to every observable
//! event, the trivial one included. Two notions of optimality can generate a
//! plan: conditioning on events of a model of evidence, or conditioning on
//! types of a model of beliefs. This module computes plans from given
//! models and utilities, and decides the inverse questions — does *some*
//! model plus utilities make a given plan the exact argmax correspondence? —
//! by strict linear feasibility, returning a replayable witness when the
//! answer is yes.
//!
//! For the evidence question the free measure and the utilities enter only
//! through the products `weight = prior * utility`, so feasibility is
//! decided on those folded weights; any full-support prior then realizes a
//! feasible weight system, and the witness uses the uniform one. A variant
//! with the prior pinned is also provided; there the folded weights of
//! mass-zero states are forced to vanish.
//!
//! For the beliefs question only the per-type integrals of each utility
//! matter, together with their sums at the trivial event. The witness is
//! the minimal model realizing given integrals: one world per type, uniform
//! type masses.

use std::collections::{BTreeMap, BTreeSet};

use crate::beliefs::{ModelOfBeliefs, World};
use crate::error::Error;
use crate::evidence::{EventRef, ModelOfEvidence, Skeleton};
use crate::feasibility::{solve_strict_feasibility, FeasibilityOutcome, LinConstraint, Relation, VarId};
use crate::rational::Rat;

/// A plan: the alternative set and one non-empty choice set per observable
/// event.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Plan {
    alternatives: Vec<String>,
    choices: BTreeMap<EventRef, BTreeSet<String>>,
}

impl Plan {
    pub fn new<I, C, S>(alternatives: Vec<String>, choices: I) -> Result<Plan, Error>
    where
        I: IntoIterator<Item = (EventRef, C)>,
        C: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if alternatives.is_empty() {
            return Err(Error::EmptyAlternatives);
        }
        let mut seen = BTreeSet::new();
        for a in &alternatives {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateAlternative(a.clone()));
            }
        }
        let mut map: BTreeMap<EventRef, BTreeSet<String>> = BTreeMap::new();
        for (event, chosen) in choices {
            let mut set = BTreeSet::new();
            for a in chosen {
                let a: String = a.into();
                if !alternatives.contains(&a) {
                    return Err(Error::UnknownAlternative(a));
                }
                set.insert(a);
            }
            if set.is_empty() {
                return Err(Error::PlanMismatch(format!(
                    "choice set for event {event} is empty"
                )));
            }
            if map.insert(event.clone(), set).is_some() {
                return Err(Error::PlanMismatch(format!("event {event} listed twice")));
            }
        }
        Ok(Plan {
            alternatives,
            choices: map,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn choice(&self, event: &EventRef) -> Option<&BTreeSet<String>> {
        self.choices.get(event)
    }

    pub fn choices(&self) -> &BTreeMap<EventRef, BTreeSet<String>> {
        &self.choices
    }

    /// The plan must assign a choice set to exactly the observable events of
    /// the skeleton.
    pub fn ensure_covers(&self, skeleton: &Skeleton) -> Result<(), Error> {
        let required: BTreeSet<EventRef> = skeleton.event_refs().into_iter().collect();
        for event in &required {
            if !self.choices.contains_key(event) {
                return Err(Error::PlanMismatch(format!("no choice set for event {event}")));
            }
        }
        for event in self.choices.keys() {
            if !required.contains(event) {
                return Err(Error::PlanMismatch(format!(
                    "choice set for unknown event {event}"
                )));
            }
        }
        Ok(())
    }
}

/// State-contingent utilities: one exact-rational value per (alternative,
/// state) pair, total on both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateUtilities {
    alternatives: Vec<String>,
    n_states: usize,
    values: Vec<Vec<Rat>>,
}

impl StateUtilities {
    pub fn from_fn<F>(skeleton: &Skeleton, alternatives: Vec<String>, f: F) -> Result<Self, Error>
    where
        F: Fn(&str, &str) -> Rat,
    {
        check_alternatives(&alternatives)?;
        let values = alternatives
            .iter()
            .map(|alt| {
                skeleton
                    .states()
                    .iter()
                    .map(|state| f(alt, state))
                    .collect()
            })
            .collect();
        Ok(StateUtilities {
            alternatives,
            n_states: skeleton.states().len(),
            values,
        })
    }

    /// Builds from explicit per-alternative maps, requiring totality.
    pub fn from_entries<I>(skeleton: &Skeleton, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (String, BTreeMap<String, Rat>)>,
    {
        let mut alternatives = Vec::new();
        let mut values = Vec::new();
        for (alt, by_state) in entries {
            for state in by_state.keys() {
                skeleton.state_index(state)?;
            }
            let row: Result<Vec<Rat>, Error> = skeleton
                .states()
                .iter()
                .map(|state| {
                    by_state.get(state).cloned().ok_or_else(|| Error::MissingUtility {
                        alternative: alt.clone(),
                        carrier: format!("state {state:?}"),
                    })
                })
                .collect();
            alternatives.push(alt);
            values.push(row?);
        }
        check_alternatives(&alternatives)?;
        Ok(StateUtilities {
            alternatives,
            n_states: skeleton.states().len(),
            values,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn value(&self, alt: usize, state: usize) -> &Rat {
        &self.values[alt][state]
    }
}

/// World-contingent utilities for a specific belief model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WorldUtilities {
    alternatives: Vec<String>,
    n_worlds: usize,
    values: Vec<Vec<Rat>>,
}

impl WorldUtilities {
    pub fn from_fn<F>(model: &ModelOfBeliefs, alternatives: Vec<String>, f: F) -> Result<Self, Error>
    where
        F: Fn(&str, &World) -> Rat,
    {
        check_alternatives(&alternatives)?;
        let values = alternatives
            .iter()
            .map(|alt| model.worlds().iter().map(|w| f(alt, w)).collect())
            .collect();
        Ok(WorldUtilities {
            alternatives,
            n_worlds: model.worlds().len(),
            values,
        })
    }

    /// Builds from per-alternative maps keyed by (state, label), requiring
    /// totality on the model's worlds.
    pub fn from_entries<I>(model: &ModelOfBeliefs, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (String, BTreeMap<(String, String), Rat>)>,
    {
        let keys: Vec<(String, String)> = model
            .worlds()
            .iter()
            .map(|w| {
                (
                    model.base().state_name(w.state()).to_owned(),
                    w.label().to_owned(),
                )
            })
            .collect();
        let mut alternatives = Vec::new();
        let mut values = Vec::new();
        for (alt, by_world) in entries {
            for key in by_world.keys() {
                if !keys.contains(key) {
                    return Err(Error::UnknownWorld {
                        state: key.0.clone(),
                        label: key.1.clone(),
                    });
                }
            }
            let row: Result<Vec<Rat>, Error> = keys
                .iter()
                .map(|key| {
                    by_world.get(key).cloned().ok_or_else(|| Error::MissingUtility {
                        alternative: alt.clone(),
                        carrier: format!("world (state {:?}, label {:?})", key.0, key.1),
                    })
                })
                .collect();
            alternatives.push(alt);
            values.push(row?);
        }
        check_alternatives(&alternatives)?;
        Ok(WorldUtilities {
            alternatives,
            n_worlds: model.worlds().len(),
            values,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds
    }

    pub fn value(&self, alt: usize, world: usize) -> &Rat {
        &self.values[alt][world]
    }
}

fn check_alternatives(alternatives: &[String]) -> Result<(), Error> {
    if alternatives.is_empty() {
        return Err(Error::EmptyAlternatives);
    }
    let mut seen = BTreeSet::new();
    for a in alternatives {
        if !seen.insert(a.as_str()) {
            return Err(Error::DuplicateAlternative(a.clone()));
        }
    }
    Ok(())
}

/// Unnormalized expected utility of an alternative on an event:
/// the utility integrated against the prior over the event's states.
pub fn evidence_event_utility(
    e: &ModelOfEvidence,
    u: &StateUtilities,
    alternative: &str,
    event: &EventRef,
) -> Result<Rat, Error> {
    if u.n_states != e.skeleton().states().len() {
        return Err(Error::BaseMismatch);
    }
    let alt = alt_index(&u.alternatives, alternative)?;
    let members = e.skeleton().resolve_event(event)?;
    Ok(members.iter().map(|&s| u.value(alt, s) * e.prior_of(s)).sum())
}

/// Unnormalized expected utility of an alternative on a type: the utility
/// integrated against the world masses of the type's worlds.
pub fn belief_event_utility(
    m: &ModelOfBeliefs,
    v: &WorldUtilities,
    alternative: &str,
    event: &EventRef,
) -> Result<Rat, Error> {
    if v.n_worlds != m.worlds().len() {
        return Err(Error::BaseMismatch);
    }
    let alt = alt_index(&v.alternatives, alternative)?;
    let worlds = m.beta_event(event)?;
    Ok(worlds
        .iter()
        .map(|&w| v.value(alt, w) * m.worlds()[w].mass())
        .sum())
}

fn alt_index(alternatives: &[String], name: &str) -> Result<usize, Error> {
    alternatives
        .iter()
        .position(|a| a == name)
        .ok_or_else(|| Error::UnknownAlternative(name.to_owned()))
}

/// The argmax correspondence of conditional expected utility on a model of
/// evidence: for each observable event, the alternatives maximizing the
/// event-integrated utility. Ties produce multi-element choice sets.
pub fn plan_from_evidence(e: &ModelOfEvidence, u: &StateUtilities) -> Result<Plan, Error> {
    if u.n_states != e.skeleton().states().len() {
        return Err(Error::BaseMismatch);
    }
    let mut choices = Vec::new();
    for event in e.skeleton().event_refs() {
        let members = e.skeleton().resolve_event(&event)?;
        let scores: Vec<Rat> = (0..u.alternatives.len())
            .map(|alt| members.iter().map(|&s| u.value(alt, s) * e.prior_of(s)).sum())
            .collect();
        choices.push((event, argmax(&u.alternatives, &scores)));
    }
    Plan::new(u.alternatives.clone(), choices)
}

/// The argmax correspondence of conditional expected utility on a model of
/// beliefs, conditioning on types.
pub fn plan_from_beliefs(m: &ModelOfBeliefs, v: &WorldUtilities) -> Result<Plan, Error> {
    if v.n_worlds != m.worlds().len() {
        return Err(Error::BaseMismatch);
    }
    let mut choices = Vec::new();
    for event in m.base().event_refs() {
        let worlds = m.beta_event(&event)?;
        let scores: Vec<Rat> = (0..v.alternatives.len())
            .map(|alt| {
                worlds
                    .iter()
                    .map(|&w| v.value(alt, w) * m.worlds()[w].mass())
                    .sum()
            })
            .collect();
        choices.push((event, argmax(&v.alternatives, &scores)));
    }
    Plan::new(v.alternatives.clone(), choices)
}

fn argmax(alternatives: &[String], scores: &[Rat]) -> Vec<String> {
    let best = scores.iter().max().expect("alternatives are non-empty");
    alternatives
        .iter()
        .zip(scores)
        .filter(|(_, s)| *s == best)
        .map(|(a, _)| a.clone())
        .collect()
}

/// Outcome of a rationalizability query.
#[derive(Clone, Debug)]
pub enum Rationalization<W> {
    Feasible(W),
    Infeasible { slack: Rat },
}

impl<W> Rationalization<W> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Rationalization::Feasible(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Rationalization::Feasible(w) => Some(w),
            Rationalization::Infeasible { .. } => None,
        }
    }
}

/// Witness that a model of evidence rationalizes the plan: replaying it
/// through [`plan_from_evidence`] reproduces the plan exactly.
#[derive(Clone, Debug)]
pub struct EvidenceWitness {
    pub model: ModelOfEvidence,
    pub utilities: StateUtilities,
}

/// Witness that a model of beliefs rationalizes the plan: replaying it
/// through [`plan_from_beliefs`] reproduces the plan exactly.
#[derive(Clone, Debug)]
pub struct BeliefsWitness {
    pub model: ModelOfBeliefs,
    pub utilities: WorldUtilities,
}

fn weight_var(alt: usize, state: usize) -> VarId {
    VarId::new(format!("w{alt:03}s{state:03}"))
}

fn type_var(alt: usize, event: usize) -> VarId {
    VarId::new(format!("m{alt:03}e{event:03}"))
}

/// Decides whether some model of evidence over this skeleton, together with
/// some utilities, makes the plan the exact conditional-expected-utility
/// argmax. The prior is free; the returned witness uses the uniform one.
pub fn rationalize_by_evidence(
    skeleton: &Skeleton,
    plan: &Plan,
) -> Result<Rationalization<EvidenceWitness>, Error> {
    let n = skeleton.states().len() as i64;
    let uniform = ModelOfEvidence::new(
        skeleton.clone(),
        skeleton
            .states()
            .iter()
            .map(|s| (s.as_str(), Rat::new(1, n)))
            .collect::<Vec<_>>(),
    )?;
    let violations = uniform.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidSkeleton(join_violations(&violations)));
    }

    let outcome = solve_weight_system(skeleton, plan, None)?;
    match outcome.witness {
        None => Ok(Rationalization::Infeasible {
            slack: outcome.slack,
        }),
        Some(weights) => {
            let utilities = StateUtilities::from_fn(
                skeleton,
                plan.alternatives().to_vec(),
                |alt_name, state_name| {
                    let alt = alt_index(plan.alternatives(), alt_name).expect("own alternatives");
                    let state = skeleton.state_index(state_name).expect("own states");
                    // utility = weight / prior, and the uniform prior is 1/n.
                    lookup(&weights, weight_var(alt, state)) * Rat::from(n)
                },
            )?;
            let witness = EvidenceWitness {
                model: uniform,
                utilities,
            };
            debug_assert_eq!(&plan_from_evidence(&witness.model, &witness.utilities).unwrap(), plan);
            Ok(Rationalization::Feasible(witness))
        }
    }
}

/// The pinned-prior variant: the supplied model's prior is kept and only the
/// utilities are searched for.
pub fn rationalize_by_evidence_with_prior(
    e: &ModelOfEvidence,
    plan: &Plan,
) -> Result<Rationalization<EvidenceWitness>, Error> {
    let violations = e.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidModel(join_violations(&violations)));
    }

    let outcome = solve_weight_system(e.skeleton(), plan, Some(e.prior()))?;
    match outcome.witness {
        None => Ok(Rationalization::Infeasible {
            slack: outcome.slack,
        }),
        Some(weights) => {
            let utilities = StateUtilities::from_fn(
                e.skeleton(),
                plan.alternatives().to_vec(),
                |alt_name, state_name| {
                    let alt = alt_index(plan.alternatives(), alt_name).expect("own alternatives");
                    let state = e.skeleton().state_index(state_name).expect("own states");
                    let p = e.prior_of(state);
                    if p.is_zero() {
                        // The weight is pinned to zero there; any utility
                        // works, zero keeps the witness canonical.
                        Rat::zero()
                    } else {
                        &lookup(&weights, weight_var(alt, state)) / p
                    }
                },
            )?;
            let witness = EvidenceWitness {
                model: e.clone(),
                utilities,
            };
            debug_assert_eq!(&plan_from_evidence(&witness.model, &witness.utilities).unwrap(), plan);
            Ok(Rationalization::Feasible(witness))
        }
    }
}

/// Decides whether some model of beliefs over this skeleton, together with
/// some utilities, makes the plan the exact type-conditioned argmax. The
/// witness is minimal: one world per type, uniform type masses.
pub fn rationalize_by_beliefs(
    skeleton: &Skeleton,
    plan: &Plan,
) -> Result<Rationalization<BeliefsWitness>, Error> {
    plan.ensure_covers(skeleton)?;
    if skeleton.events().len() < 2 {
        return Err(Error::DegenerateEventFamily);
    }
    let structure = skeleton.structure_violations();
    if !structure.is_empty() {
        return Err(Error::InvalidSkeleton(
            structure
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }

    let alts = plan.alternatives();
    let chosen_sets = resolve_choices(skeleton, plan)?;
    let n_events = skeleton.events().len();

    let mut constraints = Vec::new();
    for (event_idx, chosen) in chosen_sets.iter().enumerate().skip(1) {
        // Named events: compare the per-type integrals directly.
        let event_idx = event_idx - 1;
        push_argmax_constraints(&mut constraints, alts.len(), chosen, |alt| {
            vec![(type_var(alt, event_idx), Rat::one())]
        });
    }
    // The trivial event compares the sums of the per-type integrals; this
    // is the linkage that gives prior-versus-posterior choices their force.
    push_argmax_constraints(&mut constraints, alts.len(), &chosen_sets[0], |alt| {
        (0..n_events)
            .map(|event_idx| (type_var(alt, event_idx), Rat::one()))
            .collect()
    });

    let outcome = solve_strict_feasibility(&constraints);
    match outcome.witness {
        None => Ok(Rationalization::Infeasible {
            slack: outcome.slack,
        }),
        Some(masses) => {
            let k = Rat::new(1, n_events as i64);
            let worlds: Vec<(String, String, String, Rat)> = skeleton
                .events()
                .iter()
                .map(|event| {
                    let first_state = *event.members().iter().next().expect("events are non-empty");
                    (
                        skeleton.state_name(first_state).to_owned(),
                        event.name().to_owned(),
                        event.name().to_owned(),
                        k.clone(),
                    )
                })
                .collect();
            let model = ModelOfBeliefs::new(skeleton.clone(), worlds)?;
            let scale = Rat::from(n_events as i64);
            let utilities =
                WorldUtilities::from_fn(&model, plan.alternatives().to_vec(), |alt_name, world| {
                    let alt = alt_index(plan.alternatives(), alt_name).expect("own alternatives");
                    // Integral over the type equals mass * value; scale so the
                    // integral reproduces the solved variable.
                    &lookup(&masses, type_var(alt, world.type_idx())) * &scale
                })?;
            let witness = BeliefsWitness { model, utilities };
            debug_assert!(witness.model.is_valid());
            debug_assert_eq!(&plan_from_beliefs(&witness.model, &witness.utilities).unwrap(), plan);
            Ok(Rationalization::Feasible(witness))
        }
    }
}

/// Builds the folded-weight system for the evidence question. With a pinned
/// prior, weights of mass-zero states are forced to zero.
fn solve_weight_system(
    skeleton: &Skeleton,
    plan: &Plan,
    prior: Option<&[Rat]>,
) -> Result<FeasibilityOutcome, Error> {
    plan.ensure_covers(skeleton)?;
    let alts = plan.alternatives();
    let chosen_sets = resolve_choices(skeleton, plan)?;
    let event_refs = skeleton.event_refs();

    let mut constraints = Vec::new();
    for (ref_idx, chosen) in chosen_sets.iter().enumerate() {
        let members = skeleton.resolve_event(&event_refs[ref_idx])?;
        push_argmax_constraints(&mut constraints, alts.len(), chosen, |alt| {
            members
                .iter()
                .map(|&s| (weight_var(alt, s), Rat::one()))
                .collect()
        });
    }
    if let Some(prior) = prior {
        for (state, p) in prior.iter().enumerate() {
            if p.is_zero() {
                for alt in 0..alts.len() {
                    constraints.push(
                        LinConstraint::new(Relation::Eq, Rat::zero())
                            .term(weight_var(alt, state), Rat::one()),
                    );
                }
            }
        }
    }
    Ok(solve_strict_feasibility(&constraints))
}

/// Resolves the plan's choice sets to alternative indices, ordered like
/// `skeleton.event_refs()`.
fn resolve_choices(skeleton: &Skeleton, plan: &Plan) -> Result<Vec<BTreeSet<usize>>, Error> {
    skeleton
        .event_refs()
        .iter()
        .map(|event| {
            let chosen = plan
                .choice(event)
                .ok_or_else(|| Error::PlanMismatch(format!("no choice set for event {event}")))?;
            chosen
                .iter()
                .map(|a| alt_index(plan.alternatives(), a))
                .collect()
        })
        .collect()
}

/// Emits the argmax shape for one event: chosen alternatives tie exactly,
/// and each strictly beats every unchosen one. `score_terms` names the
/// solver variables whose sum is the alternative's score.
fn push_argmax_constraints<F>(
    constraints: &mut Vec<LinConstraint>,
    n_alts: usize,
    chosen: &BTreeSet<usize>,
    score_terms: F,
) where
    F: Fn(usize) -> Vec<(VarId, Rat)>,
{
    let chosen_vec: Vec<usize> = chosen.iter().copied().collect();
    for (i, &a) in chosen_vec.iter().enumerate() {
        for &b in &chosen_vec[i + 1..] {
            let mut c = LinConstraint::new(Relation::Eq, Rat::zero());
            for (var, coef) in score_terms(a) {
                c = c.term(var, coef);
            }
            for (var, coef) in score_terms(b) {
                c = c.term(var, -coef);
            }
            constraints.push(c);
        }
    }
    for &a in &chosen_vec {
        for other in 0..n_alts {
            if chosen.contains(&other) {
                continue;
            }
            let mut c = LinConstraint::new(Relation::Gt, Rat::zero());
            for (var, coef) in score_terms(a) {
                c = c.term(var, coef);
            }
            for (var, coef) in score_terms(other) {
                c = c.term(var, -coef);
            }
            constraints.push(c);
        }
    }
}

fn lookup(witness: &BTreeMap<VarId, Rat>, var: VarId) -> Rat {
    witness.get(&var).cloned().unwrap_or_else(Rat::zero)
}

fn join_violations(violations: &[crate::evidence::EvidenceViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::beliefs::fixtures::{gauge_beliefs, confident_middle_beliefs};
    use crate::evidence::fixtures::gauge;

    fn uniform_gauge_skeleton() -> Skeleton {
        gauge().skeleton().clone()
    }

    #[test]
    fn guessing_on_the_gauge_prior_always_picks_the_heavy_state() {
        let e = gauge();
        let u = guessing_utilities(&e);
        let plan = plan_from_evidence(&e, &u).unwrap();
        assert_eq!(plan, bet_middle_plan());
    }

    #[test]
    fn guessing_on_a_uniform_prior_yields_the_heuristic_plan() {
        let skeleton = uniform_gauge_skeleton();
        let uniform = ModelOfEvidence::new(
            skeleton.clone(),
            [
                ("e", Rat::new(1, 3)),
                ("h", Rat::new(1, 3)),
                ("f", Rat::new(1, 3)),
            ],
        )
        .unwrap();
        let u = guessing_utilities(&uniform);
        let plan = plan_from_evidence(&uniform, &u).unwrap();
        assert_eq!(plan, heuristic_guess_plan());
    }

    #[test]
    fn constant_utilities_tie_everything() {
        let e = gauge();
        let u = StateUtilities::from_fn(
            e.skeleton(),
            vec!["x".into(), "y".into()],
            |_, _| Rat::one(),
        )
        .unwrap();
        let plan = plan_from_evidence(&e, &u).unwrap();
        for event in e.skeleton().event_refs() {
            assert_eq!(plan.choice(&event).unwrap().len(), 2);
        }
    }

    #[test]
    fn wager_beliefs_produce_the_wager_plan_with_stated_margins() {
        let m = wager_beliefs();
        let v = wager_utilities(&m);
        let plan = plan_from_beliefs(&m, &v).unwrap();
        assert_eq!(plan, wager_plan());

        let margin = |event: &EventRef| {
            let w = belief_event_utility(&m, &v, "w", event).unwrap();
            let d = belief_event_utility(&m, &v, "d", event).unwrap();
            w - d
        };
        assert_eq!(margin(&EventRef::Omega), Rat::from(2));
        assert_eq!(margin(&EventRef::named("H")), Rat::from(4));
        assert_eq!(margin(&EventRef::named("Empty")), Rat::from(-1));
        assert_eq!(margin(&EventRef::named("F")), Rat::from(-1));
    }

    #[test]
    fn confident_beliefs_rationalize_the_middle_bet() {
        let m = confident_middle_beliefs();
        let v = WorldUtilities::from_fn(
            &m,
            vec!["e".into(), "h".into(), "f".into()],
            |alt, world| {
                if alt == m.base().state_name(world.state()) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            },
        )
        .unwrap();
        let plan = plan_from_beliefs(&m, &v).unwrap();
        assert_eq!(plan, bet_middle_plan());
    }

    #[test]
    fn type_indicator_utilities_reproduce_named_events_but_can_fail_a_priori() {
        // Indicator-of-the-chosen-set utilities replay each type's choice
        // set, but the prior-stage choice is a genuine extra condition: here
        // it collapses to the middle alternative alone.
        let m = gauge_beliefs();
        let plan = heuristic_guess_plan();
        let v = WorldUtilities::from_fn(
            &m,
            plan.alternatives().to_vec(),
            |alt, world| {
                let type_name = m.base().events()[world.type_idx()].name();
                if plan
                    .choice(&EventRef::named(type_name))
                    .unwrap()
                    .contains(alt)
                {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            },
        )
        .unwrap();
        let replayed = plan_from_beliefs(&m, &v).unwrap();
        for event in m.base().events() {
            let event = EventRef::named(event.name());
            assert_eq!(replayed.choice(&event), plan.choice(&event));
        }
        let at_prior = replayed.choice(&EventRef::Omega).unwrap();
        assert_ne!(at_prior, plan.choice(&EventRef::Omega).unwrap());
        assert_eq!(at_prior.iter().collect::<Vec<_>>(), vec!["h"]);
    }

    #[test]
    fn wager_plan_is_rational_by_beliefs_but_not_by_evidence() {
        let skeleton = wager_skeleton();
        let plan = wager_plan();

        let by_beliefs = rationalize_by_beliefs(&skeleton, &plan).unwrap();
        let witness = by_beliefs.witness().expect("rational by beliefs");
        assert!(witness.model.is_valid());
        assert_eq!(
            plan_from_beliefs(&witness.model, &witness.utilities).unwrap(),
            plan
        );

        let by_evidence = rationalize_by_evidence(&skeleton, &plan).unwrap();
        assert!(!by_evidence.is_feasible());
    }

    #[test]
    fn heuristic_guess_plan_is_rational_by_evidence_but_not_by_beliefs() {
        let skeleton = uniform_gauge_skeleton();
        let plan = heuristic_guess_plan();

        let by_evidence = rationalize_by_evidence(&skeleton, &plan).unwrap();
        let witness = by_evidence.witness().expect("rational by evidence");
        assert_eq!(
            plan_from_evidence(&witness.model, &witness.utilities).unwrap(),
            plan
        );

        let by_beliefs = rationalize_by_beliefs(&skeleton, &plan).unwrap();
        assert!(!by_beliefs.is_feasible());
    }

    #[test]
    fn middle_bet_is_rational_both_ways() {
        let skeleton = uniform_gauge_skeleton();
        let plan = bet_middle_plan();
        assert!(rationalize_by_evidence(&skeleton, &plan).unwrap().is_feasible());
        assert!(rationalize_by_beliefs(&skeleton, &plan).unwrap().is_feasible());
    }

    #[test]
    fn constant_plan_is_trivially_rational() {
        let skeleton = uniform_gauge_skeleton();
        let plan = Plan::new(
            vec!["a".into(), "b".into()],
            [
                (EventRef::Omega, vec!["a"]),
                (EventRef::named("Empty"), vec!["a"]),
                (EventRef::named("F"), vec!["a"]),
            ],
        )
        .unwrap();
        assert!(rationalize_by_evidence(&skeleton, &plan).unwrap().is_feasible());
        assert!(rationalize_by_beliefs(&skeleton, &plan).unwrap().is_feasible());
    }

    #[test]
    fn pinned_prior_keeps_the_supplied_model() {
        let e = gauge();
        let plan = bet_middle_plan();
        let outcome = rationalize_by_evidence_with_prior(&e, &plan).unwrap();
        let witness = outcome.witness().expect("feasible with the gauge prior");
        assert_eq!(witness.model, e);
        assert_eq!(
            plan_from_evidence(&witness.model, &witness.utilities).unwrap(),
            plan
        );
    }

    #[test]
    fn pinned_prior_pins_weights_of_null_states() {
        let e = ModelOfEvidence::from_parts(
            vec!["a".into(), "b".into(), "z".into()],
            [("A", vec!["a", "z"]), ("B", vec!["b", "z"])],
            [
                ("a", Rat::new(1, 2)),
                ("b", Rat::new(1, 2)),
                ("z", Rat::zero()),
            ],
        )
        .unwrap();
        let plan = Plan::new(
            vec!["x".into(), "y".into()],
            [
                (EventRef::Omega, vec!["x"]),
                (EventRef::named("A"), vec!["x"]),
                (EventRef::named("B"), vec!["x"]),
            ],
        )
        .unwrap();
        let outcome = rationalize_by_evidence_with_prior(&e, &plan).unwrap();
        let witness = outcome.witness().expect("constant plans are rational");
        assert_eq!(
            plan_from_evidence(&witness.model, &witness.utilities).unwrap(),
            plan
        );
    }

    #[test]
    fn plan_must_cover_exactly_the_observable_events() {
        let skeleton = uniform_gauge_skeleton();
        let missing = Plan::new(
            vec!["a".into()],
            [(EventRef::Omega, vec!["a"]), (EventRef::named("Empty"), vec!["a"])],
        )
        .unwrap();
        assert!(matches!(
            rationalize_by_evidence(&skeleton, &missing),
            Err(Error::PlanMismatch(_))
        ));
    }

    #[test]
    fn degenerate_event_families_are_rejected_for_beliefs() {
        let skeleton = Skeleton::new(
            vec!["a".into(), "b".into()],
            [("A", vec!["a", "b"])],
        )
        .unwrap();
        let plan = Plan::new(
            vec!["x".into()],
            [(EventRef::Omega, vec!["x"]), (EventRef::named("A"), vec!["x"])],
        )
        .unwrap();
        assert!(matches!(
            rationalize_by_beliefs(&skeleton, &plan),
            Err(Error::DegenerateEventFamily)
        ));
    }
}
