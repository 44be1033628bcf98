//! Run configuration shared by the command line and `--config` files.

use std::path::PathBuf;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::anneal::ScheduleOverrides;
use crate::model::Coeff;
use crate::oracles::{Signal, SIMON_MAX_BITS, SIMON_MIN_BITS};
use crate::protocol::{
    trial_hidden_string, BvOptions, JPolicy, Problem, SimonMode, SimonOptions, SolverKind,
    DEFAULT_PROBES, MIN_PROBES,
};
use crate::{BitVector, Error, Result};

/// Hidden string source: an explicit integer or a seeded random draw.
/// Serialized as a JSON number or the string `"random"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HiddenSpec {
    Value(u64),
    #[default]
    Random,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum HiddenSpecRepr {
    Value(u64),
    Text(String),
}

impl Serialize for HiddenSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            HiddenSpec::Value(v) => HiddenSpecRepr::Value(v),
            HiddenSpec::Random => HiddenSpecRepr::Text("random".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HiddenSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match HiddenSpecRepr::deserialize(d)? {
            HiddenSpecRepr::Value(v) => Ok(HiddenSpec::Value(v)),
            HiddenSpecRepr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl std::str::FromStr for HiddenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            return Ok(HiddenSpec::Random);
        }
        let parsed = match s.strip_prefix("0b") {
            Some(bits) => u64::from_str_radix(bits, 2),
            None => s.parse(),
        };
        parsed
            .map(HiddenSpec::Value)
            .map_err(|_| Error::Validation(format!("--a expects an integer or `random`, got {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JPolicyKind {
    Fixed,
    #[default]
    Cycle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Qubo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problem: Option<Problem>,
    pub n: Option<usize>,
    pub hidden_a: HiddenSpec,
    pub seed: u64,
    pub mode: SimonMode,
    pub j: usize,
    pub j_policy: JPolicyKind,
    pub solver: SolverKind,
    pub signal: Signal,
    /// Rational literal such as `"1"` or `"3/2"`.
    pub penalty_scale: String,
    /// Defaults to `64 * n` annealing runs.
    pub budget: Option<u64>,
    pub schedule: ScheduleOverrides,
    pub probes: usize,
    /// Widths for `bench`; defaults to `[n]`.
    pub n_values: Option<Vec<usize>>,
    pub trials: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub blind: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: None,
            n: None,
            hidden_a: HiddenSpec::Random,
            seed: 0,
            mode: SimonMode::Coupled,
            j: 1,
            j_policy: JPolicyKind::Cycle,
            solver: SolverKind::Anneal,
            signal: Signal::Indicator,
            penalty_scale: "1".into(),
            budget: None,
            schedule: ScheduleOverrides::default(),
            probes: DEFAULT_PROBES,
            n_values: None,
            trials: 10,
            out: None,
            format: OutputFormat::Json,
            blind: false,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn problem(&self) -> Result<Problem> {
        self.problem
            .ok_or_else(|| Error::Validation("--problem is required".into()))
    }

    pub fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Validation("--n is required".into()))
    }

    pub fn penalty_scale(&self) -> Result<Coeff> {
        let c: Coeff = self
            .penalty_scale
            .parse()
            .map_err(|_| Error::Validation(format!("invalid penalty scale {:?}", self.penalty_scale)))?;
        if !c.is_positive() {
            return Err(Error::Validation("penalty scale must be positive".into()));
        }
        Ok(c)
    }

    /// Range checks that do not depend on the subcommand.
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            if self.problem == Some(Problem::Simon) && !(SIMON_MIN_BITS..=SIMON_MAX_BITS).contains(&n) {
                return Err(Error::Validation(format!(
                    "Simon instances need {SIMON_MIN_BITS} <= n <= {SIMON_MAX_BITS}, got {n}"
                )));
            }
            if self.problem == Some(Problem::Simon) && (self.j == 0 || self.j > n) {
                return Err(Error::Validation(format!("--j must be in 1..={n}, got {}", self.j)));
            }
            if let HiddenSpec::Value(v) = self.hidden_a {
                if n < 64 && v >> n != 0 {
                    return Err(Error::Validation(format!("--a {v} does not fit in {n} bits")));
                }
                if self.problem == Some(Problem::Simon) && v == 0 {
                    return Err(Error::Validation("Simon's hidden string must be nonzero".into()));
                }
            }
        }
        if self.budget == Some(0) {
            return Err(Error::Validation("--budget must be at least 1".into()));
        }
        if self.probes < MIN_PROBES {
            return Err(Error::Validation(format!("--probes must be at least {MIN_PROBES}")));
        }
        self.penalty_scale()?;
        if let (Some(t0), Some(t1)) = (self.schedule.t_initial, self.schedule.t_final) {
            if t0 < t1 {
                return Err(Error::Validation("--t0 must be at least --t1".into()));
            }
        }
        for t in [self.schedule.t_initial, self.schedule.t_final].into_iter().flatten() {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Validation("temperatures must be positive".into()));
            }
        }
        if self.schedule.sweeps == Some(0) || self.schedule.restarts == Some(0) {
            return Err(Error::Validation("--sweeps and --restarts must be positive".into()));
        }
        Ok(())
    }

    /// The concrete hidden string for a width, drawing from the seed when random.
    pub fn hidden_string(&self, problem: Problem, n: usize) -> BitVector {
        match self.hidden_a {
            HiddenSpec::Value(v) => BitVector::from_integer(v, n),
            HiddenSpec::Random => trial_hidden_string(problem, n, self.seed),
        }
    }

    pub fn bv_options(&self) -> BvOptions {
        BvOptions {
            solver: self.solver,
            schedule: self.schedule,
            probes: self.probes,
        }
    }

    pub fn simon_options(&self, n: usize) -> Result<SimonOptions> {
        let j_policy = match self.j_policy {
            JPolicyKind::Fixed => JPolicy::Fixed(self.j),
            JPolicyKind::Cycle => JPolicy::Cycle,
        };
        let mut opts = SimonOptions::new(self.mode, j_policy, self.budget.unwrap_or(64 * n as u64));
        opts.signal = self.signal;
        opts.penalty_scale = self.penalty_scale()?;
        opts.schedule = self.schedule;
        opts.probes = self.probes;
        Ok(opts)
    }
}
