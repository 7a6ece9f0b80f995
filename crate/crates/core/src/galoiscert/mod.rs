//! Certificates for `Gal(u(x²)) = W(D_m)` and the Prym premises that depend on it.
//!
//! A certificate is an ordered list of rule applications. Each premise is either
//! a [`Leaf`] (a primitive computation stored with its inputs and recomputed
//! value) or a reference to an earlier step, so the steps form a DAG whose
//! leaves can be replayed independently of the code that produced them.

mod chain;
mod chebotarev;
mod containment;
mod leaf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, DEFAULT_PRIME_BUDGET};

pub use chain::{certify_prym, certify_wdm_over_q, cyclotomic_descent};
pub use chebotarev::{
    chebotarev_verdict, frobenius_types, sample_primes, verdict_from_types, ChebotarevOutcome, ClassStat,
    SamplingOptions, MIN_SAMPLES,
};
pub use containment::{even_containment, BaseField, Containment};
pub use leaf::{Leaf, LeafOutcome};

pub const SCHEMA_VERSION: &str = "prym-cert/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    IrredX2,
    SmCert,
    EvenContainment,
    IrredDelta,
    SquareRoot,
    TwoGroup,
    ChebotarevVerdict,
    CyclotomicDescent,
    Centralizer,
    PrymPremises,
}

/// One checked fact. `value` and `holds` come from evaluating `leaf`, or copy the
/// conclusion of the referenced `step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub fact: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf: Option<Leaf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<String>,
    pub value: Value,
    pub holds: bool,
}

impl Premise {
    pub fn from_leaf(fact: impl Into<String>, leaf: Leaf) -> Result<Premise> {
        let o = leaf.evaluate()?;
        Ok(Premise {
            fact: fact.into(),
            leaf: Some(leaf),
            step: None,
            value: o.value,
            holds: o.holds,
        })
    }

    pub fn from_step(step: &Step) -> Premise {
        Premise {
            fact: step.conclusion.clone(),
            leaf: None,
            step: Some(step.id.clone()),
            value: Value::Bool(step.holds),
            holds: step.holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub id: String,
    pub rule: Rule,
    pub premises: Vec<Premise>,
    pub conclusion: String,
    /// All premises hold.
    pub holds: bool,
}

impl Step {
    pub fn new(id: &str, rule: Rule, premises: Vec<Premise>, conclusion: impl Into<String>) -> Step {
        let holds = premises.iter().all(|p| p.holds);
        Step {
            id: id.to_string(),
            rule,
            premises,
            conclusion: conclusion.into(),
            holds,
        }
    }

    pub fn first_failure(&self) -> Option<&Premise> {
        self.premises.iter().find(|p| !p.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    /// Every step holds and none relies on sampling.
    Deterministic,
    /// Supported by Frobenius statistics only.
    Probabilistic { note: String },
    Refuted { reason: String },
    Inconclusive { failed_premise: String },
}

impl Verdict {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Verdict::Deterministic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    /// Follows from the steps of this certificate.
    Proved,
    /// Statistical evidence only.
    Probable,
    Refuted,
    /// Premises checked here; the conclusion is taken from the literature.
    Attributed,
    /// A premise failed.
    Unsupported,
    /// A closed-form value, computed.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub status: ClaimStatus,
    pub basis: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Invocation {
    CertifyWdmOverQ { m: u64, c: i64 },
    CyclotomicDescent { p: u64, r: u64, m: u64, c: i64 },
    CertifyPrym { p: u64, r: u64, c: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub prime_budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsample: Option<usize>,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        let s = SamplingOptions::default();
        CertifyConfig {
            samples: s.samples,
            seed: s.seed,
            prime_budget: DEFAULT_PRIME_BUDGET,
            subsample: s.subsample,
        }
    }
}

impl CertifyConfig {
    pub fn sampling(&self) -> SamplingOptions {
        SamplingOptions {
            samples: self.samples,
            seed: self.seed,
            subsample: self.subsample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub invocation: Invocation,
    #[serde(flatten)]
    pub config: CertifyConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    pub m: u64,
    /// `2m + 1 = deg x·u(x²)`
    pub n: u64,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub tool_version: String,
    pub run_config: RunConfig,
    pub params: Params,
    /// `h = u(x²)`
    pub polynomial: IntPoly,
    pub field: BaseField,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
    pub claims: Vec<Claim>,
}

impl Certificate {
    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let cert: Certificate = serde_json::from_str(text)?;
        if cert.version != SCHEMA_VERSION {
            return Err(Error::Certificate(format!(
                "unsupported schema {:?}, expected {SCHEMA_VERSION:?}",
                cert.version
            )));
        }
        Ok(cert)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub leaves_checked: usize,
    /// Descriptions of every disagreement found.
    pub mismatches: Vec<String>,
    /// Re-running the recorded invocation gives an identical certificate.
    pub reproduced: bool,
    pub verdict: Verdict,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.reproduced
    }
}

/// Recomputes every leaf, checks step references and `holds` flags, and re-runs
/// the recorded invocation.
pub fn replay(cert: &Certificate) -> Result<ReplayReport> {
    let mut mismatches = Vec::new();
    let mut leaves_checked = 0;
    let mut seen: Vec<&Step> = Vec::new();
    for step in &cert.steps {
        for premise in &step.premises {
            match (&premise.leaf, &premise.step) {
                (Some(leaf), None) => {
                    leaves_checked += 1;
                    let o = leaf.evaluate()?;
                    if o.value != premise.value || o.holds != premise.holds {
                        mismatches.push(format!("{}: leaf {:?} recomputes differently", step.id, premise.fact));
                    }
                }
                (None, Some(id)) => match seen.iter().find(|s| &s.id == id) {
                    Some(earlier) if earlier.holds == premise.holds => {}
                    Some(_) => mismatches.push(format!("{}: reference to {id} disagrees", step.id)),
                    None => mismatches.push(format!("{}: reference to unknown or later step {id}", step.id)),
                },
                _ => mismatches.push(format!("{}: premise {:?} is neither a leaf nor a step", step.id, premise.fact)),
            }
        }
        if step.holds != step.premises.iter().all(|p| p.holds) {
            mismatches.push(format!("{}: holds flag inconsistent with premises", step.id));
        }
        seen.push(step);
    }
    let rerun = run(&cert.run_config)?;
    let reproduced = serde_json::to_string(&rerun)? == serde_json::to_string(cert)?;
    Ok(ReplayReport {
        leaves_checked,
        mismatches,
        reproduced,
        verdict: rerun.verdict,
    })
}

/// Executes a recorded invocation.
pub fn run(rc: &RunConfig) -> Result<Certificate> {
    match rc.invocation {
        Invocation::CertifyWdmOverQ { m, c } => certify_wdm_over_q(m, c, &rc.config),
        Invocation::CyclotomicDescent { p, r, m, c } => {
            let base = certify_wdm_over_q(m, c, &rc.config)?;
            cyclotomic_descent(&base, p, r)
        }
        Invocation::CertifyPrym { p, r, c } => certify_prym(p, r, c, &rc.config),
    }
}
