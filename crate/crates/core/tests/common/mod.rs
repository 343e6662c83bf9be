//! Shared helpers for the integration suites: fixture loading and seeded
//! random model generators.

#![allow(dead_code)]

pub mod grid;

use std::path::PathBuf;

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use evibel::beliefs::ModelOfBeliefs;
use evibel::evidence::{EventRef, ModelOfEvidence, Skeleton};
use evibel::format::{parse_model_file, ModelFile};
use evibel::plan::Plan;
use evibel::rational::Rat;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> ModelFile {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    parse_model_file(&text).unwrap_or_else(|e| panic!("parsing {name}: {e}"))
}

pub fn evidence_fixture(name: &str) -> ModelOfEvidence {
    match load_fixture(name) {
        ModelFile::Evidence(f) => f.to_model().unwrap(),
        other => panic!("{name} is a {:?} file", other.kind()),
    }
}

pub fn beliefs_fixture(name: &str) -> ModelOfBeliefs {
    match load_fixture(name) {
        ModelFile::Beliefs(f) => f.to_model().unwrap(),
        other => panic!("{name} is a {:?} file", other.kind()),
    }
}

pub fn plan_fixture(name: &str) -> Plan {
    match load_fixture(name) {
        ModelFile::Plan(f) => f.to_plan().unwrap(),
        other => panic!("{name} is a {:?} file", other.kind()),
    }
}

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A random valid model of evidence with 2..=max_states states and
/// 2..=max_events events. Rejection-sampled against the full axiom check,
/// so every model returned is valid; priors may give some states mass zero.
pub fn random_valid_evidence(
    rng: &mut ChaCha12Rng,
    max_states: usize,
    max_events: usize,
) -> ModelOfEvidence {
    for _ in 0..100_000 {
        let n_states = rng.random_range(2..=max_states);
        let n_events = rng.random_range(2..=max_events);
        let states: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();

        let weights: Vec<i64> = (0..n_states).map(|_| rng.random_range(0..=6)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        let prior: Vec<(String, Rat)> = states
            .iter()
            .zip(&weights)
            .map(|(s, &w)| (s.clone(), Rat::new(w, total)))
            .collect();

        let mut events = Vec::new();
        for ei in 0..n_events {
            let mut members: Vec<String> = states
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .cloned()
                .collect();
            if members.is_empty() {
                members.push(states.choose(rng).unwrap().clone());
            }
            events.push((format!("E{ei}"), members));
        }

        let Ok(skeleton) = Skeleton::new(states, events) else {
            continue;
        };
        let Ok(model) =
            ModelOfEvidence::new(skeleton, prior.iter().map(|(s, r)| (s.as_str(), r.clone())))
        else {
            continue;
        };
        if model.validate().is_empty() {
            return model;
        }
    }
    panic!("could not sample a valid evidence model");
}

/// A random valid model of evidence whose events partition the states.
pub fn random_partition_evidence(rng: &mut ChaCha12Rng, max_states: usize) -> ModelOfEvidence {
    loop {
        let n_states = rng.random_range(2..=max_states);
        let n_events = rng.random_range(2..=n_states);
        let states: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();

        // Deal each state into a group, then require every group non-empty.
        let mut groups: Vec<Vec<String>> = vec![Vec::new(); n_events];
        for s in &states {
            groups[rng.random_range(0..n_events)].push(s.clone());
        }
        if groups.iter().any(|g| g.is_empty()) {
            continue;
        }

        let weights: Vec<i64> = (0..n_states).map(|_| rng.random_range(1..=6)).collect();
        let total: i64 = weights.iter().sum();
        let prior: Vec<(String, Rat)> = states
            .iter()
            .zip(&weights)
            .map(|(s, &w)| (s.clone(), Rat::new(w, total)))
            .collect();

        let events = groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("E{i}"), g));
        let skeleton = Skeleton::new(states, events).unwrap();
        let model = ModelOfEvidence::new(skeleton, prior.iter().map(|(s, r)| (s.as_str(), r.clone())))
            .unwrap();
        if model.validate().is_empty() {
            return model;
        }
    }
}

/// A random balanced model whose events overlap with positive mass: a
/// partition of at least three cells plus the union of two distinct cells.
/// Weights t on the joined cells, 1-t on the union, and 1 elsewhere balance
/// it for any t strictly between 0 and 1.
pub fn random_balanced_overlapping_evidence(
    rng: &mut ChaCha12Rng,
    max_states: usize,
) -> ModelOfEvidence {
    loop {
        let base = random_partition_evidence(rng, max_states);
        let cells = base.skeleton().events();
        if cells.len() < 3 {
            continue;
        }
        let i = rng.random_range(0..cells.len());
        let j = (i + 1 + rng.random_range(0..cells.len() - 1)) % cells.len();
        let union: Vec<String> = cells[i]
            .members()
            .union(cells[j].members())
            .map(|&s| base.skeleton().state_name(s).to_owned())
            .collect();

        let mut events: Vec<(String, Vec<String>)> = cells
            .iter()
            .map(|ev| {
                (
                    ev.name().to_owned(),
                    ev.members()
                        .iter()
                        .map(|&s| base.skeleton().state_name(s).to_owned())
                        .collect(),
                )
            })
            .collect();
        events.push(("EX".to_owned(), union));

        let skeleton = Skeleton::new(base.skeleton().states().to_vec(), events).unwrap();
        let prior: Vec<(String, Rat)> = base
            .skeleton()
            .states()
            .iter()
            .enumerate()
            .map(|(idx, s)| (s.clone(), base.prior_of(idx).clone()))
            .collect();
        let model =
            ModelOfEvidence::new(skeleton, prior.iter().map(|(s, r)| (s.as_str(), r.clone())))
                .unwrap();
        if model.validate().is_empty() {
            return model;
        }
    }
}

/// A random belief model conforming to `e`: each state's mass is split
/// across the events containing it with random nonnegative proportions.
/// Rejection-sampled against validity (every type must keep positive mass).
pub fn random_conforming_beliefs(rng: &mut ChaCha12Rng, e: &ModelOfEvidence) -> ModelOfBeliefs {
    for _ in 0..100_000 {
        let skeleton = e.skeleton();
        let mut worlds: Vec<(String, String, String, Rat)> = Vec::new();
        for (state_idx, state) in skeleton.states().iter().enumerate() {
            let containing: Vec<&str> = skeleton
                .events()
                .iter()
                .filter(|ev| ev.members().contains(&state_idx))
                .map(|ev| ev.name())
                .collect();
            let mut shares: Vec<i64> = (0..containing.len())
                .map(|_| rng.random_range(0..=4))
                .collect();
            if shares.iter().sum::<i64>() == 0 {
                let bump = rng.random_range(0..shares.len());
                shares[bump] = 1;
            }
            let total: i64 = shares.iter().sum();
            for (event, &share) in containing.iter().zip(&shares) {
                let mass = e.prior_of(state_idx) * &Rat::new(share, total);
                worlds.push((state.clone(), (*event).to_owned(), (*event).to_owned(), mass));
            }
        }
        let model = ModelOfBeliefs::new(skeleton.clone(), worlds).unwrap();
        if model.validate().is_empty() && model.check_conformity(e).unwrap().holds() {
            return model;
        }
    }
    panic!("could not sample a conforming belief model");
}

/// A random plan over two alternatives covering the skeleton's events.
pub fn random_two_alternative_plan(rng: &mut ChaCha12Rng, skeleton: &Skeleton) -> Plan {
    let alternatives = vec!["a1".to_string(), "a2".to_string()];
    let choices: Vec<(EventRef, Vec<String>)> = skeleton
        .event_refs()
        .into_iter()
        .map(|event| {
            let chosen = match rng.random_range(0..3) {
                0 => vec!["a1".to_string()],
                1 => vec!["a2".to_string()],
                _ => alternatives.clone(),
            };
            (event, chosen)
        })
        .collect();
    Plan::new(alternatives, choices).unwrap()
}
