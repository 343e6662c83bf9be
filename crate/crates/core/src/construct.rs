//! Canonical belief-model constructions over a model of evidence.
//!
//! Three builders, all deterministic functions of the input and of the
//! event enumeration order:
//!
//! * [`build_conforming`] always produces a conforming model, by spreading
//!   each state's prior mass over geometrically weighted copies of the event
//!   family.
//! * [`build_justifying`] turns a balancing function into a justifying
//!   model: one world per (state, containing event) pair, with mass equal to
//!   the event weight times the prior. This is the finite form of the
//!   interval-stacking construction: only the induced world masses matter,
//!   so the continuum machinery collapses to this table.
//! * [`build_conforming_nonjustifying`] mixes half of the justifying model
//!   with a half that funnels every state to its first containing event.
//!   The funnel inflates one type's mass without adding overlap mass,
//!   strictly deflating a type-conditioned posterior below its heuristic
//!   counterpart. When the events form an almost-sure partition there is no
//!   room for the funnel and no such model exists.

use num_bigint::BigInt;
use num_traits::One;

use crate::balance::{verify_balancing, BalancingFunction};
use crate::beliefs::ModelOfBeliefs;
use crate::error::Error;
use crate::evidence::ModelOfEvidence;
use crate::rational::Rat;

/// A conforming belief model for any valid model of evidence.
///
/// Worlds are (state, event-column) pairs. Column `s` (1-based, in input
/// order) carries weight `2^-s / t` with `t` the total of those weights, so
/// each state's mass splits across columns and the marginals reproduce the
/// prior. A world's type is its column's event when the state belongs to it,
/// otherwise the first event containing the state.
pub fn build_conforming(e: &ModelOfEvidence) -> ModelOfBeliefs {
    let skeleton = e.skeleton();
    let n = skeleton.events().len() as u32;
    // t = sum of 2^-s for s = 1..n, i.e. (2^n - 1) / 2^n.
    let two_n = BigInt::from(2).pow(n);
    let t = Rat::from_big(&two_n - BigInt::one(), two_n);

    let mut worlds = Vec::new();
    for state in 0..skeleton.states().len() {
        let state_name = skeleton.state_name(state).to_owned();
        for (s, column) in skeleton.events().iter().enumerate() {
            let weight = Rat::from_big(BigInt::one(), BigInt::from(2).pow(s as u32 + 1));
            let mass = &weight * e.prior_of(state) / &t;
            let type_name = if column.members().contains(&state) {
                column.name().to_owned()
            } else {
                first_containing_event(e, state).to_owned()
            };
            worlds.push((state_name.clone(), column.name().to_owned(), type_name, mass));
        }
    }
    let model = ModelOfBeliefs::new(skeleton.clone(), worlds).expect("construction is well-formed");
    debug_assert!(model.check_conformity(e).map(|c| c.holds()).unwrap_or(false));
    model
}

fn first_containing_event(e: &ModelOfEvidence, state: usize) -> &str {
    e.skeleton()
        .events()
        .iter()
        .find(|ev| ev.members().contains(&state))
        .map(|ev| ev.name())
        .expect("valid models cover every state")
}

/// A justifying belief model from a balancing function.
///
/// One world per (state, containing event) pair with mass
/// `theta(event) * prior(state)`; the type mass of each event comes out as
/// `theta(event)` times its prior mass, and every type-conditioned posterior
/// collapses to the event-conditioned one.
pub fn build_justifying(
    e: &ModelOfEvidence,
    theta: &BalancingFunction,
) -> Result<ModelOfBeliefs, Error> {
    if !verify_balancing(e, theta) {
        return Err(Error::NotBalancing(
            "weights do not balance this model".into(),
        ));
    }
    let skeleton = e.skeleton();
    let mut worlds = Vec::new();
    for event in skeleton.events() {
        let weight = theta.weight(event.name()).expect("verified above");
        for &state in event.members() {
            worlds.push((
                skeleton.state_name(state).to_owned(),
                event.name().to_owned(),
                event.name().to_owned(),
                weight * e.prior_of(state),
            ));
        }
    }
    let model = ModelOfBeliefs::new(skeleton.clone(), worlds).expect("construction is well-formed");
    debug_assert!(model
        .check_justification(e)
        .map(|j| j.holds())
        .unwrap_or(false));
    Ok(model)
}

/// The ordered event pair the counterexample construction singles out: the
/// first pair (in input order) with overlap of positive mass, oriented so
/// that the second member is not contained in the first. `None` exactly when
/// the events form an almost-sure partition.
pub fn nonjustifying_pair(e: &ModelOfEvidence) -> Option<(String, String)> {
    let events = e.skeleton().events();
    for (i, c) in events.iter().enumerate() {
        for (j, d) in events.iter().enumerate() {
            if i == j {
                continue;
            }
            let overlap: std::collections::BTreeSet<usize> =
                c.members().intersection(d.members()).copied().collect();
            if !e.mass(&overlap).is_positive() {
                continue;
            }
            if d.members().is_subset(c.members()) {
                return Some((d.name().to_owned(), c.name().to_owned()));
            }
            return Some((c.name().to_owned(), d.name().to_owned()));
        }
    }
    None
}

/// A conforming model that fails justification, or `None` when the events
/// form an almost-sure partition (in which case every conforming model
/// justifies and no counterexample exists).
pub fn build_conforming_nonjustifying(
    e: &ModelOfEvidence,
    theta: &BalancingFunction,
) -> Result<Option<ModelOfBeliefs>, Error> {
    if !verify_balancing(e, theta) {
        return Err(Error::NotBalancing(
            "weights do not balance this model".into(),
        ));
    }
    let Some((first, second)) = nonjustifying_pair(e) else {
        return Ok(None);
    };

    let skeleton = e.skeleton();
    // Re-enumerate with the selected pair up front; the funnel below sends
    // each state to its first containing event under this order.
    let mut order: Vec<usize> = Vec::with_capacity(skeleton.events().len());
    order.push(skeleton.event_index(&first).expect("selected from family"));
    order.push(skeleton.event_index(&second).expect("selected from family"));
    for idx in 0..skeleton.events().len() {
        if !order.contains(&idx) {
            order.push(idx);
        }
    }

    let funnel_target = |state: usize| -> usize {
        *order
            .iter()
            .find(|&&idx| skeleton.events()[idx].members().contains(&state))
            .expect("valid models cover every state")
    };

    let half = Rat::new(1, 2);
    let mut worlds = Vec::new();
    for &idx in &order {
        let event = &skeleton.events()[idx];
        let weight = theta.weight(event.name()).expect("verified above");
        for &state in event.members() {
            let mut mass = weight * e.prior_of(state) * &half;
            if funnel_target(state) == idx {
                mass += e.prior_of(state) * &half;
            }
            worlds.push((
                skeleton.state_name(state).to_owned(),
                event.name().to_owned(),
                event.name().to_owned(),
                mass,
            ));
        }
    }
    let model = ModelOfBeliefs::new(skeleton.clone(), worlds).expect("construction is well-formed");
    debug_assert!(model.check_conformity(e).map(|c| c.holds()).unwrap_or(false));
    debug_assert!(!model
        .check_justification(e)
        .map(|j| j.holds())
        .unwrap_or(true));
    Ok(Some(model))
}
