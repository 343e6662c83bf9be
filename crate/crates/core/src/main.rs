//! Command-line front end.
//!
//! Every subcommand reads JSON model files, prints a human-readable report
//! (or, with `--json`, only the machine-readable one), and exits with:
//! 0 for valid/feasible/true verdicts, 1 for invalid/infeasible/false
//! verdicts, 2 for malformed or axiom-violating inputs, 3 for I/O failures.
//! Reports are canonical: the same inputs always produce identical bytes.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use evibel::balance::{find_balancing, verify_balancing, BalanceOutcome, BalancingFunction};
use evibel::beliefs::ModelOfBeliefs;
use evibel::classify::classify_situation;
use evibel::construct::{
    build_conforming, build_conforming_nonjustifying, build_justifying, nonjustifying_pair,
};
use evibel::evidence::{EventRef, ModelOfEvidence};
use evibel::format::{
    parse_model_file, to_canonical_json, BeliefsFile, EvidenceFile, ModelFile, UtilitiesFile,
};
use evibel::plan::{
    plan_from_beliefs, plan_from_evidence, rationalize_by_beliefs, rationalize_by_evidence,
    rationalize_by_evidence_with_prior, Plan, Rationalization,
};
use evibel::rational::Rat;
use evibel::TypeTag;

#[derive(Parser)]
#[command(
    name = "evibel",
    version,
    about = "Exact tools for evidence models, belief models, balancedness, and plan rationalizability"
)]
struct Cli {
    /// Print only the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and check every axiom of its kind.
    Validate { file: PathBuf },
    /// Posterior probabilities: heuristic, and sound when a belief model is supplied.
    Posterior {
        /// Evidence model file.
        file: PathBuf,
        /// States whose posterior probability is computed (comma-separated).
        #[arg(long, value_delimiter = ',')]
        of: Vec<String>,
        /// Conditioning event name, or OMEGA for the prior.
        #[arg(long)]
        given: String,
        /// Belief model file supplying the sound posterior for comparison.
        #[arg(long)]
        sound: Option<PathBuf>,
    },
    /// Decide balancedness; print a balancing function if one exists.
    Balance { file: PathBuf },
    /// Check whether a belief model conforms to and justifies an evidence model.
    Justify {
        /// Belief model file.
        beliefs: PathBuf,
        /// Evidence model file to check against.
        #[arg(long)]
        against: PathBuf,
    },
    /// Build a belief model over an evidence model.
    Construct {
        #[arg(value_enum)]
        variant: ConstructVariant,
        /// Evidence model file.
        file: PathBuf,
        /// Balancing weights file; defaults to solving for weights.
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Classify a situation file into the trichotomy.
    Classify { file: PathBuf },
    /// Decide whether a plan is rationalizable over a skeleton.
    Rationalize {
        /// Plan file.
        plan: PathBuf,
        /// Evidence file supplying states and events (and, with
        /// --fixed-prior, the prior).
        #[arg(long)]
        skeleton: PathBuf,
        #[arg(long, value_enum)]
        by: Mode,
        /// Keep the skeleton file's prior instead of treating it as free.
        #[arg(long)]
        fixed_prior: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructVariant {
    Conforming,
    Justifying,
    Counterexample,
}

impl fmt::Display for ConstructVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructVariant::Conforming => f.write_str("conforming"),
            ConstructVariant::Justifying => f.write_str("justifying"),
            ConstructVariant::Counterexample => f.write_str("counterexample"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Evidence,
    Beliefs,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Evidence => f.write_str("evidence"),
            Mode::Beliefs => f.write_str("beliefs"),
        }
    }
}

enum Failure {
    Io(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 3,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Input(m) => m,
        }
    }
}

impl From<evibel::format::FormatError> for Failure {
    fn from(e: evibel::format::FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<evibel::Error> for Failure {
    fn from(e: evibel::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitter = Emitter { json: cli.json };
    match run(cli.command, &emitter) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

struct Emitter {
    json: bool,
}

impl Emitter {
    fn emit<T: Serialize>(&self, report: &T, text: &str) {
        if self.json {
            print!("{}", to_canonical_json(report));
        } else {
            println!("{text}");
        }
    }
}

fn run(command: Command, emitter: &Emitter) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => cmd_validate(&file, emitter),
        Command::Posterior {
            file,
            of,
            given,
            sound,
        } => cmd_posterior(&file, &of, &given, sound.as_deref(), emitter),
        Command::Balance { file } => cmd_balance(&file, emitter),
        Command::Justify { beliefs, against } => cmd_justify(&beliefs, &against, emitter),
        Command::Construct {
            variant,
            file,
            theta,
        } => cmd_construct(variant, &file, theta.as_deref(), emitter),
        Command::Classify { file } => cmd_classify(&file, emitter),
        Command::Rationalize {
            plan,
            skeleton,
            by,
            fixed_prior,
        } => cmd_rationalize(&plan, &skeleton, by, fixed_prior, emitter),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_file(path: &Path) -> Result<ModelFile, Failure> {
    let text = read_file(path)?;
    parse_model_file(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_evidence(path: &Path) -> Result<ModelOfEvidence, Failure> {
    match load_file(path)? {
        ModelFile::Evidence(file) => Ok(file.to_model()?),
        other => Err(Failure::Input(format!(
            "{}: expected an evidence file, found kind {:?}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_valid_evidence(path: &Path) -> Result<ModelOfEvidence, Failure> {
    let model = load_evidence(path)?;
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(Failure::Input(format!(
            "{}: invalid evidence model: {}",
            path.display(),
            join_display(&violations)
        )))
    }
}

fn load_beliefs(path: &Path) -> Result<ModelOfBeliefs, Failure> {
    match load_file(path)? {
        ModelFile::Beliefs(file) => Ok(file.to_model()?),
        other => Err(Failure::Input(format!(
            "{}: expected a beliefs file, found kind {:?}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_valid_beliefs(path: &Path) -> Result<ModelOfBeliefs, Failure> {
    let model = load_beliefs(path)?;
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(Failure::Input(format!(
            "{}: invalid belief model: {}",
            path.display(),
            join_display(&violations)
        )))
    }
}

fn load_plan(path: &Path) -> Result<Plan, Failure> {
    match load_file(path)? {
        ModelFile::Plan(file) => Ok(file.to_plan()?),
        other => Err(Failure::Input(format!(
            "{}: expected a plan file, found kind {:?}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_theta(path: &Path) -> Result<BalancingFunction, Failure> {
    match load_file(path)? {
        ModelFile::Theta(file) => Ok(file.to_balancing()),
        other => Err(Failure::Input(format!(
            "{}: expected a theta file, found kind {:?}",
            path.display(),
            other.kind()
        ))),
    }
}

fn join_display<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

// ---------------------------------------------------------------------------
// validate

#[derive(Serialize)]
struct ValidateReport {
    command: &'static str,
    file: String,
    kind: String,
    valid: bool,
    violations: Vec<String>,
}

fn cmd_validate(path: &Path, emitter: &Emitter) -> Result<u8, Failure> {
    let file = load_file(path)?;
    let violations: Vec<String> = match &file {
        ModelFile::Evidence(f) => f
            .to_model()?
            .validate()
            .iter()
            .map(|v| v.to_string())
            .collect(),
        ModelFile::Beliefs(f) => f
            .to_model()?
            .validate()
            .iter()
            .map(|v| v.to_string())
            .collect(),
        ModelFile::Situation(f) => {
            let situation = f.to_situation()?;
            let mut violations: Vec<String> = situation
                .evidence
                .validate()
                .iter()
                .map(|v| format!("evidence: {v}"))
                .collect();
            if let evibel::Scope::Explicit(models) = &situation.scope {
                for (i, m) in models.iter().enumerate() {
                    for v in m.validate() {
                        violations.push(format!("scope[{i}]: {v}"));
                    }
                    match m.check_conformity(&situation.evidence) {
                        Ok(evibel::Conformity::Holds) => {}
                        Ok(evibel::Conformity::Fails(f)) => {
                            violations.push(format!("scope[{i}] does not conform: {f}"))
                        }
                        Err(e) => violations.push(format!("scope[{i}]: {e}")),
                    }
                }
            }
            violations
        }
        ModelFile::Plan(f) => match f.to_plan() {
            Ok(_) => vec![],
            Err(e) => vec![e.to_string()],
        },
        ModelFile::Utilities(f) => match f.check_shape() {
            Ok(()) => vec![],
            Err(e) => vec![e.to_string()],
        },
        ModelFile::Theta(f) => f
            .theta
            .iter()
            .filter(|(_, v)| !v.is_positive() || **v > Rat::one())
            .map(|(k, v)| format!("weight of {k:?} is {v}, outside (0, 1]"))
            .collect(),
    };

    let report = ValidateReport {
        command: "validate",
        file: path.display().to_string(),
        kind: file.kind().to_owned(),
        valid: violations.is_empty(),
        violations: violations.clone(),
    };
    let text = if violations.is_empty() {
        format!("{}: valid {} file", path.display(), file.kind())
    } else {
        format!(
            "{}: invalid {} file\n  - {}",
            path.display(),
            file.kind(),
            violations.join("\n  - ")
        )
    };
    emitter.emit(&report, &text);
    Ok(if report.valid { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// posterior

#[derive(Serialize)]
struct PosteriorReport {
    command: &'static str,
    file: String,
    of: Vec<String>,
    given: String,
    heuristic: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    sound: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bias: Option<String>,
}

fn cmd_posterior(
    path: &Path,
    of: &[String],
    given: &str,
    sound_path: Option<&Path>,
    emitter: &Emitter,
) -> Result<u8, Failure> {
    if of.is_empty() {
        return Err(Failure::Input("--of needs at least one state".into()));
    }
    let evidence = load_valid_evidence(path)?;
    let given_ref = EventRef::parse(given);
    let of_refs: Vec<&str> = of.iter().map(String::as_str).collect();
    let heuristic = evidence.conditional_probability_named(&of_refs, &given_ref)?;

    let mut sound = None;
    let mut bias = None;
    if let Some(sound_path) = sound_path {
        let beliefs = load_valid_beliefs(sound_path)?;
        if beliefs.base() != evidence.skeleton() {
            return Err(Failure::Input(format!(
                "{}: belief model is built over a different state space or event family",
                sound_path.display()
            )));
        }
        let q = beliefs.sound_posterior_named(&of_refs, &given_ref)?;
        bias = Some(match q.cmp(&heuristic) {
            std::cmp::Ordering::Greater => format!("sound exceeds heuristic ({q} > {heuristic})"),
            std::cmp::Ordering::Less => format!("heuristic exceeds sound ({heuristic} > {q})"),
            std::cmp::Ordering::Equal => "sound equals heuristic".to_string(),
        });
        sound = Some(q);
    }

    let mut text = format!(
        "heuristic posterior P[{{{}}} | {}] = {}",
        of.join(","),
        given_ref,
        heuristic
    );
    if let Some(q) = &sound {
        text.push_str(&format!(
            "\nsound posterior   Q[{{{}}} | type {}] = {}",
            of.join(","),
            given_ref,
            q
        ));
    }
    if let Some(b) = &bias {
        text.push_str(&format!("\nbias: {b}"));
    }

    let report = PosteriorReport {
        command: "posterior",
        file: path.display().to_string(),
        of: of.to_vec(),
        given: given_ref.to_string(),
        heuristic,
        sound,
        bias,
    };
    emitter.emit(&report, &text);
    Ok(0)
}

// ---------------------------------------------------------------------------
// balance

#[derive(Serialize)]
struct BalanceReport {
    command: &'static str,
    file: String,
    balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<IndexMap<String, Rat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slack: Option<Rat>,
}

fn theta_in_event_order(e: &ModelOfEvidence, theta: &BalancingFunction) -> IndexMap<String, Rat> {
    e.skeleton()
        .events()
        .iter()
        .map(|ev| {
            (
                ev.name().to_owned(),
                theta.weight(ev.name()).expect("covers the family").clone(),
            )
        })
        .collect()
}

fn cmd_balance(path: &Path, emitter: &Emitter) -> Result<u8, Failure> {
    let evidence = load_valid_evidence(path)?;
    match find_balancing(&evidence) {
        BalanceOutcome::Balanced(theta) => {
            let ordered = theta_in_event_order(&evidence, &theta);
            let text = format!(
                "balanced; theta: {}",
                ordered
                    .iter()
                    .map(|(k, v)| format!("{k} = {v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let report = BalanceReport {
                command: "balance",
                file: path.display().to_string(),
                balanced: true,
                theta: Some(ordered),
                slack: None,
            };
            emitter.emit(&report, &text);
            Ok(0)
        }
        BalanceOutcome::Unbalanced { slack } => {
            let text = format!("unbalanced (margin {slack}); no weight assignment exists");
            let report = BalanceReport {
                command: "balance",
                file: path.display().to_string(),
                balanced: false,
                theta: None,
                slack: Some(slack),
            };
            emitter.emit(&report, &text);
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// justify

#[derive(Serialize)]
struct JustifyReport {
    command: &'static str,
    beliefs: String,
    against: String,
    conforms: bool,
    justifies: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

fn cmd_justify(beliefs_path: &Path, evidence_path: &Path, emitter: &Emitter) -> Result<u8, Failure> {
    let beliefs = load_valid_beliefs(beliefs_path)?;
    let evidence = load_valid_evidence(evidence_path)?;
    let conformity = beliefs.check_conformity(&evidence)?;
    let justification = beliefs.check_justification(&evidence)?;
    let failure = match &justification {
        evibel::Justification::Holds => None,
        evibel::Justification::Fails(f) => Some(f.to_string()),
    };
    let report = JustifyReport {
        command: "justify",
        beliefs: beliefs_path.display().to_string(),
        against: evidence_path.display().to_string(),
        conforms: conformity.holds(),
        justifies: justification.holds(),
        failure: failure.clone(),
    };
    let text = match failure {
        None => "the belief model conforms and justifies the evidence model".to_string(),
        Some(f) => format!(
            "conforms: {}; justifies: false\n  {f}",
            conformity.holds()
        ),
    };
    emitter.emit(&report, &text);
    Ok(if report.justifies { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// construct

#[derive(Serialize)]
struct GapReport {
    first_event: String,
    second_event: String,
    sound: Rat,
    heuristic: Rat,
}

#[derive(Serialize)]
struct ConstructReport {
    command: &'static str,
    variant: String,
    file: String,
    possible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<IndexMap<String, Rat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<BeliefsFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<GapReport>,
}

fn cmd_construct(
    variant: ConstructVariant,
    path: &Path,
    theta_path: Option<&Path>,
    emitter: &Emitter,
) -> Result<u8, Failure> {
    let evidence = load_valid_evidence(path)?;
    if variant == ConstructVariant::Conforming && theta_path.is_some() {
        return Err(Failure::Input(
            "--theta does not apply to the conforming construction".into(),
        ));
    }

    let mut report = ConstructReport {
        command: "construct",
        variant: variant.to_string(),
        file: path.display().to_string(),
        possible: true,
        reason: None,
        theta: None,
        model: None,
        gap: None,
    };

    if variant == ConstructVariant::Conforming {
        let model = build_conforming(&evidence);
        report.model = Some(BeliefsFile::from_model(&model));
        let text = format!(
            "built a conforming belief model with {} worlds",
            model.worlds().len()
        );
        emitter.emit(&report, &text);
        return Ok(0);
    }

    // The other two constructions need balancing weights.
    let theta = match theta_path {
        Some(p) => {
            let theta = load_theta(p)?;
            if !verify_balancing(&evidence, &theta) {
                return Err(Failure::Input(format!(
                    "{}: weights do not balance this model",
                    p.display()
                )));
            }
            theta
        }
        None => match find_balancing(&evidence) {
            BalanceOutcome::Balanced(theta) => theta,
            BalanceOutcome::Unbalanced { slack } => {
                report.possible = false;
                report.reason = Some(match variant {
                    ConstructVariant::Justifying => format!(
                        "the evidence model is unbalanced (margin {slack}); no justifying model exists"
                    ),
                    _ => format!(
                        "the evidence model is unbalanced (margin {slack}); this construction needs balancing weights, and every conforming model already fails justification here"
                    ),
                });
                let text = report.reason.clone().unwrap();
                emitter.emit(&report, &text);
                return Ok(1);
            }
        },
    };
    report.theta = Some(theta_in_event_order(&evidence, &theta));

    match variant {
        ConstructVariant::Justifying => {
            let model = build_justifying(&evidence, &theta)?;
            report.model = Some(BeliefsFile::from_model(&model));
            let text = format!(
                "built a justifying belief model with {} worlds",
                model.worlds().len()
            );
            emitter.emit(&report, &text);
            Ok(0)
        }
        ConstructVariant::Counterexample => {
            match build_conforming_nonjustifying(&evidence, &theta)? {
                None => {
                    report.possible = false;
                    report.reason = Some(
                        "the events form an almost-sure partition; every conforming model justifies"
                            .into(),
                    );
                    let text = report.reason.clone().unwrap();
                    emitter.emit(&report, &text);
                    Ok(1)
                }
                Some(model) => {
                    let (first, second) =
                        nonjustifying_pair(&evidence).expect("counterexample exists");
                    let overlap: BTreeSet<usize> = {
                        let a = evidence
                            .skeleton()
                            .resolve_event(&EventRef::named(&first))?;
                        let b = evidence
                            .skeleton()
                            .resolve_event(&EventRef::named(&second))?;
                        a.intersection(&b).copied().collect()
                    };
                    let sound = model.sound_posterior(&overlap, &EventRef::named(&second))?;
                    let heuristic =
                        evidence.conditional_probability(&overlap, &EventRef::named(&second))?;
                    let text = format!(
                        "built a conforming, non-justifying belief model with {} worlds\nposterior of the {first:?}-and-{second:?} overlap given type {second:?}: sound {sound} < heuristic {heuristic}",
                        model.worlds().len()
                    );
                    report.gap = Some(GapReport {
                        first_event: first,
                        second_event: second,
                        sound,
                        heuristic,
                    });
                    report.model = Some(BeliefsFile::from_model(&model));
                    emitter.emit(&report, &text);
                    Ok(0)
                }
            }
        }
        ConstructVariant::Conforming => unreachable!("handled above"),
    }
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    file: String,
    tag: TypeTag,
    trail: String,
}

fn cmd_classify(path: &Path, emitter: &Emitter) -> Result<u8, Failure> {
    let situation = match load_file(path)? {
        ModelFile::Situation(file) => file.to_situation()?,
        other => {
            return Err(Failure::Input(format!(
                "{}: expected a situation file, found kind {:?}",
                path.display(),
                other.kind()
            )))
        }
    };
    let classified = classify_situation(&situation)?;
    let report = ClassifyReport {
        command: "classify",
        file: path.display().to_string(),
        tag: classified.tag,
        trail: classified.trail.clone(),
    };
    let text = format!("{}: {}", classified.tag, classified.trail);
    emitter.emit(&report, &text);
    Ok(0)
}

// ---------------------------------------------------------------------------
// rationalize

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessModel {
    Evidence(EvidenceFile),
    Beliefs(BeliefsFile),
}

#[derive(Serialize)]
struct WitnessReport {
    model: WitnessModel,
    utilities: UtilitiesFile,
}

#[derive(Serialize)]
struct RationalizeReport {
    command: &'static str,
    plan: String,
    skeleton: String,
    by: String,
    fixed_prior: bool,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    slack: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessReport>,
}

fn cmd_rationalize(
    plan_path: &Path,
    skeleton_path: &Path,
    by: Mode,
    fixed_prior: bool,
    emitter: &Emitter,
) -> Result<u8, Failure> {
    let plan = load_plan(plan_path)?;
    let skeleton_model = load_evidence(skeleton_path)?;

    let mut report = RationalizeReport {
        command: "rationalize",
        plan: plan_path.display().to_string(),
        skeleton: skeleton_path.display().to_string(),
        by: by.to_string(),
        fixed_prior,
        feasible: false,
        slack: None,
        witness: None,
    };

    match by {
        Mode::Evidence => {
            let outcome = if fixed_prior {
                rationalize_by_evidence_with_prior(&skeleton_model, &plan)?
            } else {
                rationalize_by_evidence(skeleton_model.skeleton(), &plan)?
            };
            match outcome {
                Rationalization::Infeasible { slack } => {
                    report.slack = Some(slack.clone());
                    let text =
                        format!("infeasible by evidence (margin {slack}): no model of evidence and utilities make this plan the argmax");
                    emitter.emit(&report, &text);
                    Ok(1)
                }
                Rationalization::Feasible(witness) => {
                    // The witness must replay to the plan exactly.
                    debug_assert_eq!(
                        plan_from_evidence(&witness.model, &witness.utilities)?,
                        plan
                    );
                    report.feasible = true;
                    let text = format!(
                        "feasible by evidence; witness prior: {}",
                        witness
                            .model
                            .skeleton()
                            .states()
                            .iter()
                            .enumerate()
                            .map(|(i, s)| format!("{s} = {}", witness.model.prior_of(i)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    report.witness = Some(WitnessReport {
                        model: WitnessModel::Evidence(EvidenceFile::from_model(&witness.model)),
                        utilities: UtilitiesFile::from_state_utilities(
                            witness.model.skeleton(),
                            &witness.utilities,
                        ),
                    });
                    emitter.emit(&report, &text);
                    Ok(0)
                }
            }
        }
        Mode::Beliefs => {
            if fixed_prior {
                return Err(Failure::Input(
                    "--fixed-prior applies only to --by evidence".into(),
                ));
            }
            match rationalize_by_beliefs(skeleton_model.skeleton(), &plan)? {
                Rationalization::Infeasible { slack } => {
                    report.slack = Some(slack.clone());
                    let text =
                        format!("infeasible by beliefs (margin {slack}): no model of beliefs and utilities make this plan the argmax");
                    emitter.emit(&report, &text);
                    Ok(1)
                }
                Rationalization::Feasible(witness) => {
                    debug_assert_eq!(
                        plan_from_beliefs(&witness.model, &witness.utilities)?,
                        plan
                    );
                    report.feasible = true;
                    let text = format!(
                        "feasible by beliefs; minimal witness with {} worlds (uniform type masses)",
                        witness.model.worlds().len()
                    );
                    report.witness = Some(WitnessReport {
                        model: WitnessModel::Beliefs(BeliefsFile::from_model(&witness.model)),
                        utilities: UtilitiesFile::from_world_utilities(
                            &witness.model,
                            &witness.utilities,
                        ),
                    });
                    emitter.emit(&report, &text);
                    Ok(0)
                }
            }
        }
    }
}
