//! Named, self-checking computations with structured reports.
//!
//! Every check recomputes its actual value from the library; expected
//! values are either pinned literals or come from small independent
//! oracles inside the scenario.

mod catalog;
pub mod corpus;
mod report;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::field::{Element, FieldTower};
use crate::forms::{QuadForm, Verdict};
use crate::quaternion::{Quat, QuaternionAlgebra};

pub use report::{
    Check, ErrorKind, Provenance, Report, ScenarioError, ScenarioReport, Status, REPORT_VERSION,
};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_CORPUS_SIZE: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub corpus_size: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            corpus_size: DEFAULT_CORPUS_SIZE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("unknown scenario `{0}`; run `list` to see the registry")]
    UnknownScenario(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub description: &'static str,
}

/// Why a scenario stopped before finishing its checks.
#[derive(Debug)]
pub(crate) enum Halt {
    Unknown(String),
    Algebra(AlgebraError),
}

impl From<AlgebraError> for Halt {
    fn from(e: AlgebraError) -> Halt {
        Halt::Algebra(e)
    }
}

pub(crate) type Step = std::result::Result<(), Halt>;

/// Stops the scenario if `v` is undecided.
pub(crate) fn decisive(v: &Verdict, what: &str) -> Step {
    match v {
        Verdict::Unknown(reason) => Err(Halt::Unknown(format!(
            "undecided verdict for {what} ({})",
            reason.code()
        ))),
        _ => Ok(()),
    }
}

#[derive(Default)]
pub(crate) struct Checks {
    list: Vec<Check>,
}

impl Checks {
    pub(crate) fn record(
        &mut self,
        label: impl Into<String>,
        provenance: Provenance,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) {
        self.list.push(Check {
            label: label.into(),
            expected: expected.into(),
            actual: actual.into(),
            provenance,
            pass,
        });
    }

    /// Passes when the rendered strings agree.
    pub(crate) fn text(
        &mut self,
        label: impl Into<String>,
        provenance: Provenance,
        expected: &str,
        actual: impl ToString,
    ) {
        let actual = actual.to_string();
        let pass = expected == actual;
        self.record(label, provenance, expected, actual, pass);
    }

    /// Parses `expected` in `field` and compares values.
    pub(crate) fn element(
        &mut self,
        label: impl Into<String>,
        provenance: Provenance,
        field: &FieldTower,
        expected: &str,
        actual: &Element,
    ) {
        let pass = field.parse(expected).is_ok_and(|e| e == *actual);
        self.record(label, provenance, expected, field.format(actual), pass);
    }

    /// Parses `expected` in the algebra and compares values.
    pub(crate) fn quat(
        &mut self,
        label: impl Into<String>,
        provenance: Provenance,
        algebra: &QuaternionAlgebra,
        expected: &str,
        actual: &Quat,
    ) {
        let pass = algebra.parse(expected).is_ok_and(|e| e == *actual);
        self.record(label, provenance, expected, algebra.format(actual), pass);
    }

    pub(crate) fn form(
        &mut self,
        label: impl Into<String>,
        provenance: Provenance,
        expected: &str,
        actual: Option<&QuadForm>,
    ) {
        let pass = match (expected.parse::<QuadForm>(), actual) {
            (Ok(e), Some(a)) => e == *a,
            _ => false,
        };
        let actual = actual.map_or_else(|| "none".to_string(), |a| a.to_string());
        self.record(label, provenance, expected, actual, pass);
    }
}

type Body = fn(&RunOptions, &mut Checks) -> Step;

const REGISTRY: [(ScenarioInfo, Body); 8] = [
    (
        ScenarioInfo {
            name: "ed-laurent-real",
            description: "R((t)) is ED: <1, a, b, -ab> is isotropic for all 16 pairs of square classes {1, -1, t, -t}",
        },
        catalog::ed_laurent_real,
    ),
    (
        ScenarioInfo {
            name: "tp-laurent",
            description: "R((t))/Q((t)) is totally positive: random forms isotropic over R((t)) are weakly isotropic over Q((t))",
        },
        catalog::tp_laurent,
    ),
    (
        ScenarioInfo {
            name: "counterexample-involution",
            description: "(2, t) with h = <j, k>: transfer <1, -t, sqrt2, t*sqrt2>, strongly anisotropic over Q((t)), weakly isotropic over R((t))",
        },
        catalog::counterexample_involution,
    ),
    (
        ScenarioInfo {
            name: "hamilton-weak-isotropy",
            description: "Hamilton quaternions with Int(i)∘γ: anisotropic, signature 0, weakly isotropic via 1, j",
        },
        catalog::hamilton_weak_isotropy,
    ),
    (
        ScenarioInfo {
            name: "hermitian-square-failure",
            description: "(t, t) with Int(i)∘γ: a sum of hermitian squares equals 2j, which is not a hermitian square since Nrd(2j) = -4t",
        },
        catalog::hermitian_square_failure,
    ),
    (
        ScenarioInfo {
            name: "quadratic-descent-forms",
            description: "Q(sqrt2)/Q with 2 a sum of squares: weak isotropy of rational forms descends from the extension",
        },
        catalog::quadratic_descent_forms,
    ),
    (
        ScenarioInfo {
            name: "becher-arithmetic",
            description: "Double centralizer for index 2^n and a subfield L of degree 2^(n-2) inside F_py: [C_D(L) : L] = 2^4",
        },
        catalog::becher_arithmetic,
    ),
    (
        ScenarioInfo {
            name: "marshall-quaternions",
            description: "Pythagorean index of quaternion algebras: (s, t) with s a sum of squares splits over F_py; ordering criterion table",
        },
        catalog::marshall_quaternions,
    ),
];

/// The registry in its stable order.
pub fn list_scenarios() -> Vec<ScenarioInfo> {
    REGISTRY.iter().map(|(info, _)| *info).collect()
}

fn execute(info: &ScenarioInfo, body: Body, options: &RunOptions) -> ScenarioReport {
    let mut checks = Checks::default();
    let outcome = body(options, &mut checks);
    let error = match outcome {
        Ok(()) => None,
        Err(Halt::Unknown(message)) => Some(ScenarioError {
            kind: ErrorKind::InternalUnknownVerdict,
            message,
        }),
        Err(Halt::Algebra(e)) => Some(ScenarioError {
            kind: ErrorKind::Algebra,
            message: e.to_string(),
        }),
    };
    let status = if error.is_some() {
        Status::Error
    } else if checks.list.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    ScenarioReport {
        name: info.name.to_string(),
        status,
        checks: checks.list,
        error,
    }
}

fn report(options: &RunOptions, scenarios: Vec<ScenarioReport>) -> Report {
    Report {
        version: REPORT_VERSION,
        seed: options.seed,
        corpus_size: options.corpus_size,
        scenarios,
    }
}

pub fn run_scenario(name: &str, options: &RunOptions) -> Result<Report, LookupError> {
    let (info, body) = REGISTRY
        .iter()
        .find(|(info, _)| info.name == name)
        .ok_or_else(|| LookupError::UnknownScenario(name.to_string()))?;
    Ok(report(options, vec![execute(info, *body, options)]))
}

/// Runs every scenario; the report lists them in registry order.
pub fn run_all(options: &RunOptions) -> Report {
    let results = REGISTRY
        .iter()
        .map(|(info, body)| execute(info, *body, options))
        .collect();
    report(options, results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let names: Vec<_> = list_scenarios().iter().map(|s| s.name).collect();
        assert_eq!(names.len(), 8);
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert_eq!(
            run_scenario("nope", &RunOptions::default()),
            Err(LookupError::UnknownScenario("nope".into()))
        );
    }

    #[test]
    fn exit_codes() {
        let mut r = run_scenario("becher-arithmetic", &RunOptions::default()).unwrap();
        assert_eq!(r.exit_code(), 0);
        r.scenarios[0].checks[0].pass = false;
        r.scenarios[0].status = Status::Fail;
        assert_eq!(r.exit_code(), 1);
        r.scenarios[0].status = Status::Error;
        r.scenarios[0].error = Some(ScenarioError {
            kind: ErrorKind::InternalUnknownVerdict,
            message: "x".into(),
        });
        assert_eq!(r.exit_code(), 3);
    }
}
