//! Balancedness of a model of evidence.
//!
//! A model of evidence is balanced when positive weights can be assigned to
//! the non-trivial events so that, for every state carrying prior mass, the
//! weights of the events containing that state sum to exactly 1. Balancedness
//! is precisely the condition under which some belief model justifies the
//! evidence model, so this module is the decision procedure behind the
//! situation trichotomy.
//!
//! States of prior mass zero impose no equation; that is the almost-sure
//! quantifier of the definition taken literally.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::evidence::{EventRef, ModelOfEvidence};
use crate::beliefs::ModelOfBeliefs;
use crate::feasibility::{solve_strict_feasibility, LinConstraint, Relation};
use crate::rational::Rat;

/// Positive weights on the non-trivial events, summing to 1 across the
/// events containing each state of positive prior mass.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BalancingFunction {
    theta: BTreeMap<String, Rat>,
}

impl BalancingFunction {
    pub fn new<I, S>(weights: I) -> BalancingFunction
    where
        I: IntoIterator<Item = (S, Rat)>,
        S: Into<String>,
    {
        BalancingFunction {
            theta: weights.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// The same weight on every event.
    pub fn constant(e: &ModelOfEvidence, value: Rat) -> BalancingFunction {
        BalancingFunction {
            theta: e
                .skeleton()
                .events()
                .iter()
                .map(|ev| (ev.name().to_owned(), value.clone()))
                .collect(),
        }
    }

    pub fn weight(&self, event: &str) -> Option<&Rat> {
        self.theta.get(event)
    }

    pub fn weights(&self) -> &BTreeMap<String, Rat> {
        &self.theta
    }
}

#[derive(Clone, Debug)]
pub enum BalanceOutcome {
    Balanced(BalancingFunction),
    /// No weight assignment exists; the margin program's optimum is kept as
    /// a diagnostic (zero or negative).
    Unbalanced { slack: Rat },
}

impl BalanceOutcome {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceOutcome::Balanced(_))
    }

    pub fn balancing(&self) -> Option<&BalancingFunction> {
        match self {
            BalanceOutcome::Balanced(theta) => Some(theta),
            BalanceOutcome::Unbalanced { .. } => None,
        }
    }
}

/// Searches for a balancing function by strict linear feasibility: one
/// equation per positive-mass state, one strict positivity constraint per
/// event.
pub fn find_balancing(e: &ModelOfEvidence) -> BalanceOutcome {
    let mut constraints = Vec::new();
    for (state, p) in e.prior().iter().enumerate() {
        if !p.is_positive() {
            continue;
        }
        let mut c = LinConstraint::new(Relation::Eq, Rat::one());
        for event in e.skeleton().events() {
            if event.members().contains(&state) {
                c = c.term(event.name(), Rat::one());
            }
        }
        constraints.push(c);
    }
    for event in e.skeleton().events() {
        constraints.push(LinConstraint::new(Relation::Gt, Rat::zero()).term(event.name(), Rat::one()));
    }

    let outcome = solve_strict_feasibility(&constraints);
    match outcome.witness {
        Some(witness) => {
            let theta: BTreeMap<String, Rat> = witness
                .into_iter()
                .map(|(var, value)| (var.as_str().to_owned(), value))
                .collect();
            // The equations cap each weight at 1 already (every event holds
            // some positive-mass state in a valid model); keep the guarantee
            // explicit.
            assert!(
                theta.values().all(|v| *v <= Rat::one()),
                "balancing weight above 1"
            );
            BalanceOutcome::Balanced(BalancingFunction { theta })
        }
        None => BalanceOutcome::Unbalanced {
            slack: outcome.slack,
        },
    }
}

/// Exact re-check of the balancing conditions.
pub fn verify_balancing(e: &ModelOfEvidence, theta: &BalancingFunction) -> bool {
    let events = e.skeleton().events();
    if theta.theta.len() != events.len() {
        return false;
    }
    for event in events {
        match theta.weight(event.name()) {
            Some(w) if w.is_positive() && *w <= Rat::one() => {}
            _ => return false,
        }
    }
    for (state, p) in e.prior().iter().enumerate() {
        if !p.is_positive() {
            continue;
        }
        let total: Rat = events
            .iter()
            .filter(|ev| ev.members().contains(&state))
            .map(|ev| theta.weight(ev.name()).expect("checked above"))
            .sum();
        if total != Rat::one() {
            return false;
        }
    }
    true
}

/// Reads the balancing function off a justifying belief model: each event's
/// weight is its type mass divided by its prior mass.
pub fn extract_balancing(
    m: &ModelOfBeliefs,
    e: &ModelOfEvidence,
) -> Result<BalancingFunction, Error> {
    match m.check_justification(e)? {
        crate::beliefs::Justification::Holds => {}
        crate::beliefs::Justification::Fails(failure) => {
            return Err(Error::NotJustifying(failure.to_string()))
        }
    }
    let mut theta = BTreeMap::new();
    for event in e.skeleton().events() {
        let beta = m.beta_event(&EventRef::named(event.name()))?;
        let q_beta = m.mass(&beta);
        let p_b = e.mass(event.members());
        theta.insert(event.name().to_owned(), q_beta / p_b);
    }
    let theta = BalancingFunction { theta };
    debug_assert!(verify_balancing(e, &theta));
    Ok(theta)
}
