//! Exact decision-theoretic machinery for heuristic versus sound Bayesian
//! inference on finite models.
//!
//! The library distinguishes two formalizations of how a reasoner updates on
//! an observation. A *model of evidence* conditions directly on the observed
//! event; a *model of beliefs* conditions on the reasoner's own type, the
//! event "I observed this". The two can disagree — the classic inferential
//! puzzles live exactly in that gap — and this crate decides, in exact
//! rational arithmetic, when they must agree, when they cannot, and when the
//! data cannot tell:
//!
//! * validation of both model kinds ([`evidence`], [`beliefs`]);
//! * heuristic and sound posteriors, conformity, and justification;
//! * balancedness, the weight condition equivalent to justifiability
//!   ([`balance`]), decided by an exact strict-feasibility solver
//!   ([`feasibility`]);
//! * explicit belief-model constructions: conforming, justifying, and
//!   conforming-but-not-justifying ([`construct`]);
//! * the situation trichotomy ([`classify`]);
//! * plans and rationalizability by evidence or by beliefs ([`plan`]).
//!
//! All quantities are arbitrary-precision rationals ([`rational::Rat`]);
//! every decision procedure is deterministic and returns witnesses that can
//! be replayed through the forward operations. The [`format`] module defines
//! the JSON interchange format used by the command-line front end.

pub mod balance;
pub mod beliefs;
pub mod classify;
pub mod construct;
pub mod error;
pub mod evidence;
pub mod feasibility;
pub mod format;
pub mod plan;
pub mod rational;

pub use balance::{extract_balancing, find_balancing, verify_balancing, BalanceOutcome, BalancingFunction};
pub use beliefs::{Conformity, ConformityFailure, Justification, JustificationFailure, ModelOfBeliefs, World};
pub use classify::{classify_situation, is_almost_sure_partition, Scope, Situation, SituationType, TypeTag};
pub use construct::{build_conforming, build_conforming_nonjustifying, build_justifying, nonjustifying_pair};
pub use error::Error;
pub use evidence::{EventRef, ModelOfEvidence, Skeleton, OMEGA_MARKER};
pub use feasibility::{solve_strict_feasibility, FeasibilityOutcome, LinConstraint, Relation, VarId, Verdict};
pub use plan::{
    belief_event_utility, evidence_event_utility, plan_from_beliefs, plan_from_evidence,
    rationalize_by_beliefs, rationalize_by_evidence, rationalize_by_evidence_with_prior,
    BeliefsWitness, EvidenceWitness, Plan, Rationalization, StateUtilities, WorldUtilities,
};
pub use rational::Rat;
