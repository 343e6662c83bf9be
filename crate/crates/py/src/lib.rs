//! Python bindings.
//!
//! Thin wrappers over the core types. Models move across the boundary as
//! JSON strings in the same format the CLI reads, and probabilities come
//! back as canonical rational strings, so nothing is ever rounded.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use evibel::balance::{
    extract_balancing, find_balancing, verify_balancing, BalanceOutcome, BalancingFunction,
};
use evibel::classify::{classify_situation, is_almost_sure_partition, Scope, Situation};
use evibel::construct::{
    build_conforming, build_conforming_nonjustifying, build_justifying, nonjustifying_pair,
};
use evibel::evidence::EventRef;
use evibel::format::{
    parse_model_file, BeliefsFile, EvidenceFile, ModelFile, PlanFile, UtilitiesFile,
};
use evibel::plan::{
    plan_from_beliefs, plan_from_evidence, rationalize_by_beliefs, rationalize_by_evidence,
    rationalize_by_evidence_with_prior, Rationalization,
};
use evibel::rational::Rat;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn theta_from_dict(theta: &Bound<'_, PyDict>) -> PyResult<BalancingFunction> {
    let mut weights: Vec<(String, Rat)> = Vec::new();
    for (k, v) in theta.iter() {
        let name: String = k.extract()?;
        let value: String = v.extract()?;
        let rat: Rat = value.parse().map_err(value_error)?;
        weights.push((name, rat));
    }
    Ok(BalancingFunction::new(weights))
}

fn theta_to_dict<'py>(py: Python<'py>, theta: &BalancingFunction) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    for (k, v) in theta.weights() {
        dict.set_item(k, v.to_string())?;
    }
    Ok(dict)
}

/// A finite model of evidence: states, an exact-rational prior, and named
/// observable events.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct EvidenceModel {
    inner: evibel::ModelOfEvidence,
}

#[pymethods]
impl EvidenceModel {
    /// Parses a `kind: "evidence"` JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_model_file(text).map_err(value_error)? {
            ModelFile::Evidence(file) => Ok(EvidenceModel {
                inner: file.to_model().map_err(value_error)?,
            }),
            other => Err(value_error(format!(
                "expected kind \"evidence\", found {:?}",
                other.kind()
            ))),
        }
    }

    fn to_json(&self) -> String {
        evibel::format::to_canonical_json(&EvidenceFile::from_model(&self.inner))
    }

    fn states(&self) -> Vec<String> {
        self.inner.skeleton().states().to_vec()
    }

    fn events(&self) -> Vec<String> {
        self.inner
            .skeleton()
            .events()
            .iter()
            .map(|e| e.name().to_owned())
            .collect()
    }

    /// Violated axioms as human-readable strings; empty means valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    /// Heuristic posterior of a set of states given an event name (or
    /// "OMEGA"), as a canonical rational string.
    fn posterior(&self, of: Vec<String>, given: &str) -> PyResult<String> {
        let of: Vec<&str> = of.iter().map(String::as_str).collect();
        let p = self
            .inner
            .conditional_probability_named(&of, &EventRef::parse(given))
            .map_err(value_error)?;
        Ok(p.to_string())
    }

    /// A balancing function as a dict of rational strings, or None.
    fn find_balancing<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match find_balancing(&self.inner) {
            BalanceOutcome::Balanced(theta) => Ok(Some(theta_to_dict(py, &theta)?)),
            BalanceOutcome::Unbalanced { .. } => Ok(None),
        }
    }

    fn verify_balancing(&self, theta: &Bound<'_, PyDict>) -> PyResult<bool> {
        Ok(verify_balancing(&self.inner, &theta_from_dict(theta)?))
    }

    fn is_partition(&self) -> bool {
        is_almost_sure_partition(&self.inner)
    }

    /// Classifies the situation quantifying over every conforming belief
    /// model; returns (tag, trail).
    fn classify_full(&self) -> PyResult<(String, String)> {
        let classified = classify_situation(&Situation {
            evidence: self.inner.clone(),
            scope: Scope::Full,
        })
        .map_err(value_error)?;
        Ok((classified.tag.to_string(), classified.trail))
    }

    fn build_conforming(&self) -> PyResult<BeliefModel> {
        if !self.inner.is_valid() {
            return Err(value_error("model violates its axioms"));
        }
        Ok(BeliefModel {
            inner: build_conforming(&self.inner),
        })
    }

    fn build_justifying(&self, theta: &Bound<'_, PyDict>) -> PyResult<BeliefModel> {
        if !self.inner.is_valid() {
            return Err(value_error("model violates its axioms"));
        }
        let theta = theta_from_dict(theta)?;
        Ok(BeliefModel {
            inner: build_justifying(&self.inner, &theta).map_err(value_error)?,
        })
    }

    /// A conforming model that fails justification, or None when the events
    /// form an almost-sure partition.
    fn build_counterexample(&self, theta: &Bound<'_, PyDict>) -> PyResult<Option<BeliefModel>> {
        if !self.inner.is_valid() {
            return Err(value_error("model violates its axioms"));
        }
        let theta = theta_from_dict(theta)?;
        Ok(build_conforming_nonjustifying(&self.inner, &theta)
            .map_err(value_error)?
            .map(|inner| BeliefModel { inner }))
    }

    /// The overlapping event pair the counterexample construction uses.
    fn overlap_pair(&self) -> Option<(String, String)> {
        nonjustifying_pair(&self.inner)
    }
}

/// A finite model of beliefs: worlds with state, label, type, and mass.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct BeliefModel {
    inner: evibel::ModelOfBeliefs,
}

#[pymethods]
impl BeliefModel {
    /// Parses a `kind: "beliefs"` JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_model_file(text).map_err(value_error)? {
            ModelFile::Beliefs(file) => Ok(BeliefModel {
                inner: file.to_model().map_err(value_error)?,
            }),
            other => Err(value_error(format!(
                "expected kind \"beliefs\", found {:?}",
                other.kind()
            ))),
        }
    }

    fn to_json(&self) -> String {
        evibel::format::to_canonical_json(&BeliefsFile::from_model(&self.inner))
    }

    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    /// Sound posterior of a set of states given a type (event name or
    /// "OMEGA"), as a canonical rational string.
    fn posterior(&self, of: Vec<String>, given: &str) -> PyResult<String> {
        let of: Vec<&str> = of.iter().map(String::as_str).collect();
        let q = self
            .inner
            .sound_posterior_named(&of, &EventRef::parse(given))
            .map_err(value_error)?;
        Ok(q.to_string())
    }

    /// (holds, failure-description-or-None)
    fn conforms_to(&self, evidence: &EvidenceModel) -> PyResult<(bool, Option<String>)> {
        match self.inner.check_conformity(&evidence.inner).map_err(value_error)? {
            evibel::Conformity::Holds => Ok((true, None)),
            evibel::Conformity::Fails(f) => Ok((false, Some(f.to_string()))),
        }
    }

    /// (holds, failure-description-or-None)
    fn justifies(&self, evidence: &EvidenceModel) -> PyResult<(bool, Option<String>)> {
        match self
            .inner
            .check_justification(&evidence.inner)
            .map_err(value_error)?
        {
            evibel::Justification::Holds => Ok((true, None)),
            evibel::Justification::Fails(f) => Ok((false, Some(f.to_string()))),
        }
    }

    /// Reads the balancing function off a justifying model.
    fn extract_balancing<'py>(
        &self,
        py: Python<'py>,
        evidence: &EvidenceModel,
    ) -> PyResult<Bound<'py, PyDict>> {
        let theta = extract_balancing(&self.inner, &evidence.inner).map_err(value_error)?;
        theta_to_dict(py, &theta)
    }
}

/// A plan: alternatives plus one non-empty choice set per observable event.
#[pyclass(name = "Plan", skip_from_py_object)]
#[derive(Clone)]
struct PyPlan {
    inner: evibel::Plan,
}

#[pymethods]
impl PyPlan {
    /// Parses a `kind: "plan"` JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_model_file(text).map_err(value_error)? {
            ModelFile::Plan(file) => Ok(PyPlan {
                inner: file.to_plan().map_err(value_error)?,
            }),
            other => Err(value_error(format!(
                "expected kind \"plan\", found {:?}",
                other.kind()
            ))),
        }
    }

    fn to_json(&self) -> String {
        evibel::format::to_canonical_json(&PlanFile::from_plan(&self.inner))
    }

    /// Decides rationalizability by evidence over the skeleton of the given
    /// model (prior free unless fixed_prior). Returns the witness as a dict
    /// {"model": json, "utilities": json} or None when infeasible.
    #[pyo3(signature = (skeleton, fixed_prior = false))]
    fn rationalize_by_evidence<'py>(
        &self,
        py: Python<'py>,
        skeleton: &EvidenceModel,
        fixed_prior: bool,
    ) -> PyResult<Option<Bound<'py, PyDict>>> {
        let outcome = if fixed_prior {
            rationalize_by_evidence_with_prior(&skeleton.inner, &self.inner)
        } else {
            rationalize_by_evidence(skeleton.inner.skeleton(), &self.inner)
        }
        .map_err(value_error)?;
        match outcome {
            Rationalization::Infeasible { .. } => Ok(None),
            Rationalization::Feasible(witness) => {
                let dict = PyDict::new(py);
                dict.set_item(
                    "model",
                    evibel::format::to_canonical_json(&EvidenceFile::from_model(&witness.model)),
                )?;
                dict.set_item(
                    "utilities",
                    evibel::format::to_canonical_json(&UtilitiesFile::from_state_utilities(
                        witness.model.skeleton(),
                        &witness.utilities,
                    )),
                )?;
                // Replaying the witness must reproduce this plan.
                let replay = plan_from_evidence(&witness.model, &witness.utilities)
                    .map_err(value_error)?;
                dict.set_item("replays", replay == self.inner)?;
                Ok(Some(dict))
            }
        }
    }

    /// Decides rationalizability by beliefs over the skeleton of the given
    /// model. Returns the witness as a dict or None when infeasible.
    fn rationalize_by_beliefs<'py>(
        &self,
        py: Python<'py>,
        skeleton: &EvidenceModel,
    ) -> PyResult<Option<Bound<'py, PyDict>>> {
        match rationalize_by_beliefs(skeleton.inner.skeleton(), &self.inner).map_err(value_error)? {
            Rationalization::Infeasible { .. } => Ok(None),
            Rationalization::Feasible(witness) => {
                let dict = PyDict::new(py);
                dict.set_item(
                    "model",
                    evibel::format::to_canonical_json(&BeliefsFile::from_model(&witness.model)),
                )?;
                dict.set_item(
                    "utilities",
                    evibel::format::to_canonical_json(&UtilitiesFile::from_world_utilities(
                        &witness.model,
                        &witness.utilities,
                    )),
                )?;
                let replay =
                    plan_from_beliefs(&witness.model, &witness.utilities).map_err(value_error)?;
                dict.set_item("replays", replay == self.inner)?;
                Ok(Some(dict))
            }
        }
    }
}

/// Classifies a `kind: "situation"` JSON document; returns (tag, trail).
#[pyfunction]
fn classify(text: &str) -> PyResult<(String, String)> {
    match parse_model_file(text).map_err(value_error)? {
        ModelFile::Situation(file) => {
            let situation = file.to_situation().map_err(value_error)?;
            let classified = classify_situation(&situation).map_err(value_error)?;
            Ok((classified.tag.to_string(), classified.trail))
        }
        other => Err(value_error(format!(
            "expected kind \"situation\", found {:?}",
            other.kind()
        ))),
    }
}

#[pymodule]
fn evibel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EvidenceModel>()?;
    m.add_class::<BeliefModel>()?;
    m.add_class::<PyPlan>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
