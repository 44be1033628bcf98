//! End-to-end recovery protocols and call-count experiments.
//!
//! One "AQC call" is one complete annealing run (all restarts of a schedule)
//! that yields one candidate. Query counts are read from the oracle's own
//! counter, so everything a protocol does is accounted for, including the
//! queries made inside an oracle-coupled energy function.

use std::time::Instant;

use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anneal::{anneal, anneal_black_box, default_schedule, AnnealSchedule, ScheduleOverrides};
use crate::builders::{build_bv_qubo, build_simon_literal_qubo_scaled, CoupledObjective};
use crate::model::{exhaustive_solve, Coeff, DEFAULT_ENUMERATION_CAP};
use crate::oracles::{BvOracle, Signal, SimonOracle};
use crate::rng::{self, derive_seed, HIDDEN_STREAM, PROBE_STREAM};
use crate::{BitVector, Error, Result};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PROBES: usize = 16;
pub const MIN_PROBES: usize = 4;
pub const BENCH_MAX_TRIALS: usize = 1000;
pub const BENCH_SIMON_COUPLED_MAX_BITS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Bv,
    Simon,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exhaustive,
    #[default]
    Anneal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimonMode {
    /// Anneal the displayed matrix; `gw`/`gy` are free bits.
    Literal,
    /// Anneal the objective whose signal term queries the oracle.
    #[default]
    Coupled,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JPolicy {
    /// Constrain the same 1-based index on every call.
    Fixed(usize),
    /// Advance `j` through `1..=n` round-robin, one step per call.
    #[default]
    Cycle,
}

impl JPolicy {
    pub fn j_for_call(self, call: u64, n: usize) -> usize {
        match self {
            JPolicy::Fixed(j) => j,
            JPolicy::Cycle => (call % n as u64) as usize + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BvOptions {
    pub solver: SolverKind,
    /// Applied on top of [`default_schedule`] when annealing.
    pub schedule: ScheduleOverrides,
    pub probes: usize,
}

impl Default for BvOptions {
    fn default() -> Self {
        Self {
            solver: SolverKind::Anneal,
            schedule: ScheduleOverrides::default(),
            probes: DEFAULT_PROBES,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimonOptions {
    pub mode: SimonMode,
    pub j_policy: JPolicy,
    /// Maximum number of annealing runs.
    pub budget: u64,
    pub signal: Signal,
    pub penalty_scale: Coeff,
    /// Applied on top of the mode's default schedule.
    pub schedule: ScheduleOverrides,
    pub probes: usize,
}

impl SimonOptions {
    pub fn new(mode: SimonMode, j_policy: JPolicy, budget: u64) -> Self {
        Self {
            mode,
            j_policy,
            budget,
            signal: Signal::Indicator,
            penalty_scale: Coeff::one(),
            schedule: ScheduleOverrides::default(),
            probes: DEFAULT_PROBES,
        }
    }
}

/// One annealing run of the Simon protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimonCall {
    pub call: u64,
    pub j: usize,
    pub w: BitVector,
    pub y: BitVector,
    pub anneal_energy: f64,
    /// `g(w) != g(y)` as 0/1; absent when `w = y` and no query was spent.
    pub signal: Option<u8>,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub problem: Problem,
    pub n: usize,
    pub seed: u64,
    /// Filled in by callers that are allowed to see it; protocols never are.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hidden_a: Option<BitVector>,
    pub recovered_a: Option<BitVector>,
    pub recovered_a_int: Option<u64>,
    pub success: bool,
    pub aqc_calls: u64,
    pub oracle_queries: u64,
    pub energy_evaluations: u64,
    pub diagnostics: Vec<String>,
    pub trace: Vec<SimonCall>,
    /// The only nondeterministic field.
    pub wall_time_secs: f64,
}

impl ExperimentReport {
    fn new(problem: Problem, n: usize, seed: u64) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            problem,
            n,
            seed,
            hidden_a: None,
            recovered_a: None,
            recovered_a_int: None,
            success: false,
            aqc_calls: 0,
            oracle_queries: 0,
            energy_evaluations: 0,
            diagnostics: Vec::new(),
            trace: Vec::new(),
            wall_time_secs: 0.0,
        }
    }

    fn set_recovered(&mut self, a: BitVector) {
        self.recovered_a_int = a.to_integer();
        self.recovered_a = Some(a);
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parse and validate a report document.
    pub fn from_json(s: &str) -> Result<Self> {
        let report: ExperimentReport = serde_json::from_str(s)?;
        if report.schema_version != REPORT_SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported report schema_version {}",
                report.schema_version
            )));
        }
        if report.success && report.recovered_a.is_none() {
            return Err(Error::Validation("successful report without recovered_a".into()));
        }
        if let Some(a) = &report.recovered_a {
            if a.len() != report.n {
                return Err(Error::Validation("recovered_a length differs from n".into()));
            }
        }
        Ok(report)
    }
}

/// Build the diagonal model from `n` oracle queries, solve it, and check the
/// answer against `probes` random parity queries.
pub fn solve_bv(oracle: &BvOracle, options: &BvOptions, seed: u64) -> Result<ExperimentReport> {
    let started = Instant::now();
    let n = oracle.n();
    let queries_before = oracle.queries();
    let mut report = ExperimentReport::new(Problem::Bv, n, seed);

    let model = build_bv_qubo(oracle)?;
    let candidate = match options.solver {
        SolverKind::Exhaustive => {
            let spectrum = exhaustive_solve(&model, DEFAULT_ENUMERATION_CAP)?;
            if spectrum.ground_count() != 1 {
                report
                    .diagnostics
                    .push(format!("ground state is {}-fold degenerate", spectrum.ground_count()));
            }
            spectrum.ground_states().swap_remove(0)
        }
        SolverKind::Anneal => {
            let schedule = options.schedule.resolve(|| default_schedule(&model))?;
            let result = anneal(&model, &schedule, seed)?;
            report.energy_evaluations = result.energy_evaluations;
            result.best_assignment
        }
    };
    report.aqc_calls = 1;

    let mut probe_rng = rng::seeded(seed, PROBE_STREAM);
    let mut mismatches = 0;
    for _ in 0..options.probes {
        let w = BitVector::random(n, &mut probe_rng);
        if oracle.query(&w)? != w.dot(&candidate)? {
            mismatches += 1;
        }
    }
    if mismatches == 0 {
        report.success = true;
    } else {
        report.diagnostics.push(format!(
            "candidate disagreed with the oracle on {mismatches} of {} probes",
            options.probes
        ));
    }
    report.set_recovered(candidate);
    report.oracle_queries = oracle.queries() - queries_before;
    report.wall_time_secs = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Bitwise xor of a collision pair.
pub fn xor_recover(w: &BitVector, y: &BitVector) -> Result<BitVector> {
    w.xor(y)
}

/// Probe the promise for `candidate`: `g(w') = g(w' ⊕ candidate)` on
/// `probes` random inputs (at least [`MIN_PROBES`]), plus one check that a
/// random `e ∉ {0, candidate}` does not collide. Zero or wrongly sized
/// candidates are rejected.
pub fn verify_simon(oracle: &SimonOracle, candidate: &BitVector, probes: usize, seed: u64) -> bool {
    let n = oracle.n();
    if candidate.len() != n || candidate.is_zero() {
        return false;
    }
    let g = |w: &BitVector| oracle.query(w).expect("lengths checked");
    let mut rng = rng::seeded(seed, PROBE_STREAM);
    for _ in 0..probes.max(MIN_PROBES) {
        let w = BitVector::random(n, &mut rng);
        if g(&w) != g(&(&w ^ candidate)) {
            return false;
        }
    }
    let e = loop {
        let e = BitVector::random(n, &mut rng);
        if !e.is_zero() && &e != candidate {
            break e;
        }
    };
    let w = BitVector::random(n, &mut rng);
    g(&w) != g(&(&w ^ &e))
}

/// Search for a collision pair with repeated annealing runs, then recover the
/// hidden string as `w ⊕ y`.
pub fn solve_simon(oracle: &SimonOracle, options: &SimonOptions, seed: u64) -> Result<ExperimentReport> {
    if options.budget == 0 {
        return Err(Error::Validation("budget must be at least 1".into()));
    }
    let started = Instant::now();
    let n = oracle.n();
    if let JPolicy::Fixed(j) = options.j_policy {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
    }
    let queries_before = oracle.queries();
    let mut report = ExperimentReport::new(Problem::Simon, n, seed);

    for call in 0..options.budget {
        let j = options.j_policy.j_for_call(call, n);
        let call_seed = derive_seed(seed, call);
        let result = match options.mode {
            SimonMode::Literal => {
                let model = build_simon_literal_qubo_scaled(n, j, options.penalty_scale)?;
                let schedule = options.schedule.resolve(|| default_schedule(&model))?;
                anneal(&model, &schedule, call_seed)?
            }
            SimonMode::Coupled => {
                let objective = CoupledObjective::new(oracle, j, options.signal)?
                    .with_penalty_scale(options.penalty_scale);
                let schedule = options.schedule.resolve(|| {
                    AnnealSchedule::for_flip_bound(
                        objective.n_vars(),
                        objective.flip_bound().to_f64().unwrap_or(1.0),
                    )
                })?;
                let energy = |bits: &[bool]| {
                    objective
                        .energy_joint(bits)
                        .expect("annealer passes 2n bits")
                        .to_f64()
                        .expect("rational converts to f64")
                };
                anneal_black_box(energy, objective.n_vars(), &schedule, call_seed)?
            }
        };
        report.aqc_calls += 1;
        report.energy_evaluations += result.energy_evaluations;

        // Literal mode: the gw/gy outputs carry no information and are dropped.
        let bits = result.best_assignment.as_slice();
        let w = BitVector::from_bits(bits[..n].to_vec());
        let y = BitVector::from_bits(bits[n..2 * n].to_vec());
        let mut entry = SimonCall {
            call,
            j,
            w: w.clone(),
            y: y.clone(),
            anneal_energy: result.best_energy,
            signal: None,
            accepted: false,
        };
        if w != y {
            let collide = oracle.query(&w)? == oracle.query(&y)?;
            entry.signal = Some(u8::from(!collide));
            if collide {
                let candidate = xor_recover(&w, &y)?;
                if verify_simon(oracle, &candidate, options.probes, call_seed) {
                    entry.accepted = true;
                    report.success = true;
                    report.set_recovered(candidate);
                } else {
                    report
                        .diagnostics
                        .push(format!("call {call}: collision {w} / {y} failed verification"));
                }
            }
        }
        report.trace.push(entry);
        if report.success {
            break;
        }
    }

    if !report.success {
        report
            .diagnostics
            .push(format!("no verified collision within {} calls", options.budget));
    }
    report.oracle_queries = oracle.queries() - queries_before;
    report.wall_time_secs = started.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub seed: u64,
    pub bv: BvOptions,
    pub simon: SimonOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub median: f64,
    /// Population standard deviation, so a single trial reports 0.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                mean: 0.0,
                median: 0.0,
                stddev: 0.0,
                min: 0.0,
                max: 0.0,
            };
        }
        let len = values.len() as f64;
        let mean = values.iter().sum::<f64>() / len;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / len;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len().is_multiple_of(2) {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        } else {
            sorted[mid]
        };
        Self {
            mean,
            median,
            stddev: var.sqrt(),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub aqc_calls: Stats,
    pub oracle_queries: Stats,
    /// Mean calls over successful trials only.
    pub mean_calls_successful: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub schema_version: u32,
    pub problem: Problem,
    pub seed: u64,
    pub mode: Option<SimonMode>,
    pub rows: Vec<BenchRow>,
}

/// Hidden string for trial `trial` at width `n`; nonzero for Simon.
pub fn trial_hidden_string(problem: Problem, n: usize, trial_seed: u64) -> BitVector {
    let mut rng = rng::seeded(trial_seed, HIDDEN_STREAM);
    loop {
        let a = BitVector::random(n, &mut rng);
        if problem == Problem::Bv || !a.is_zero() {
            return a;
        }
    }
}

pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(seed, n as u64), trial as u64)
}

/// Run `trials` fresh instances per width and summarise calls and queries.
/// Trials run in parallel; rows are assembled in `(n, trial)` order.
pub fn bench_calls(problem: Problem, n_values: &[usize], trials: usize, config: &BenchConfig) -> Result<BenchTable> {
    if trials == 0 || trials > BENCH_MAX_TRIALS {
        return Err(Error::Size(format!("trials must be in 1..={BENCH_MAX_TRIALS}, got {trials}")));
    }
    for &n in n_values {
        if problem == Problem::Simon
            && config.simon.mode == SimonMode::Coupled
            && n > BENCH_SIMON_COUPLED_MAX_BITS
        {
            return Err(Error::Size(format!(
                "coupled Simon benches are limited to n <= {BENCH_SIMON_COUPLED_MAX_BITS}, got {n}"
            )));
        }
    }

    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let reports = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let ts = trial_seed(config.seed, n, trial);
                let a = trial_hidden_string(problem, n, ts);
                match problem {
                    Problem::Bv => solve_bv(&BvOracle::new(a), &config.bv, ts),
                    Problem::Simon => solve_simon(&SimonOracle::new(n, &a, ts)?, &config.simon, ts),
                }
            })
            .collect::<Result<Vec<_>>>()?;

        let calls: Vec<f64> = reports.iter().map(|r| r.aqc_calls as f64).collect();
        let queries: Vec<f64> = reports.iter().map(|r| r.oracle_queries as f64).collect();
        let ok: Vec<f64> = reports
            .iter()
            .filter(|r| r.success)
            .map(|r| r.aqc_calls as f64)
            .collect();
        rows.push(BenchRow {
            n,
            trials,
            successes: ok.len(),
            success_rate: ok.len() as f64 / trials as f64,
            aqc_calls: Stats::of(&calls),
            oracle_queries: Stats::of(&queries),
            mean_calls_successful: (!ok.is_empty()).then(|| Stats::of(&ok).mean),
        });
    }
    Ok(BenchTable {
        schema_version: REPORT_SCHEMA_VERSION,
        problem,
        seed: config.seed,
        mode: (problem == Problem::Simon).then_some(config.simon.mode),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(a: u64, n: usize) -> BitVector {
        BitVector::from_integer(a, n)
    }

    #[test]
    fn bv_exhaustive_recovers_42() {
        let oracle = BvOracle::new(bv(42, 6));
        let opts = BvOptions {
            solver: SolverKind::Exhaustive,
            ..BvOptions::default()
        };
        let r = solve_bv(&oracle, &opts, 1).unwrap();
        assert!(r.success);
        assert_eq!(r.recovered_a_int, Some(42));
        assert_eq!(r.oracle_queries, 6 + 16);
        assert_eq!(r.aqc_calls, 1);
    }

    #[test]
    fn bv_zero_string() {
        let r = solve_bv(&BvOracle::new(BitVector::zeros(5)), &BvOptions::default(), 3).unwrap();
        assert!(r.success);
        assert_eq!(r.recovered_a_int, Some(0));
    }

    #[test]
    fn bv_bad_schedule_reports_failure_not_error() {
        // One sweep at a hot temperature leaves bits wrong with high probability.
        let oracle = BvOracle::new(BitVector::from_integer(u64::MAX, 64));
        let opts = BvOptions {
            schedule: AnnealSchedule::new(1, 1000.0, 1000.0, 1).unwrap().into(),
            ..BvOptions::default()
        };
        let r = solve_bv(&oracle, &opts, 0).unwrap();
        assert!(!r.success);
        assert!(!r.diagnostics.is_empty());
        assert_eq!(r.oracle_queries, 64 + 16);
    }

    #[test]
    fn xor_cases() {
        assert_eq!(xor_recover(&bv(0b110, 3), &bv(0b011, 3)).unwrap(), bv(0b101, 3));
        assert!(xor_recover(&bv(5, 3), &bv(5, 3)).unwrap().is_zero());
        assert!(xor_recover(&bv(5, 3), &bv(5, 4)).is_err());
    }

    #[test]
    fn verify_accepts_truth_and_rejects_neighbours() {
        let a = bv(0b1011, 4);
        let oracle = SimonOracle::new(4, &a, 8).unwrap();
        for probes in [0, 1, 16] {
            assert!(verify_simon(&oracle, &a, probes, 2));
        }
        assert!(!verify_simon(&oracle, &(&a ^ &bv(1, 4)), 16, 2));
        assert!(!verify_simon(&oracle, &BitVector::zeros(4), 16, 2));
        assert!(!verify_simon(&oracle, &bv(1, 3), 16, 2));
    }

    #[test]
    fn verify_spends_at_least_min_probes() {
        let a = bv(0b11, 2);
        let oracle = SimonOracle::new(2, &a, 0).unwrap();
        assert!(verify_simon(&oracle, &a, 0, 0));
        assert_eq!(oracle.queries(), 2 * MIN_PROBES as u64 + 2);
    }

    #[test]
    fn simon_coupled_recovers_1011() {
        let a = bv(0b1011, 4);
        let oracle = SimonOracle::new(4, &a, 21).unwrap();
        let opts = SimonOptions::new(SimonMode::Coupled, JPolicy::Cycle, 64);
        let r = solve_simon(&oracle, &opts, 5).unwrap();
        assert!(r.success);
        assert_eq!(r.recovered_a, Some(a));
        assert_eq!(r.aqc_calls as usize, r.trace.len());
        assert_eq!(r.oracle_queries, oracle.queries());
        assert!(r.trace.last().unwrap().accepted);
    }

    #[test]
    fn simon_budget_exhaustion_is_reported() {
        // a_1 = 0 while the literal ground states all have w_1 != y_1.
        let a = bv(0b110, 3);
        let oracle = SimonOracle::new(3, &a, 4).unwrap();
        let mut opts = SimonOptions::new(SimonMode::Literal, JPolicy::Fixed(1), 3);
        opts.schedule = AnnealSchedule::new(30, 6.0, 0.01, 1).unwrap().into();
        let r = solve_simon(&oracle, &opts, 1).unwrap();
        assert!(!r.success);
        assert_eq!(r.aqc_calls, 3);
        assert_eq!(r.trace.len(), 3);
        assert!(r.recovered_a.is_none());
    }

    #[test]
    fn simon_rejects_equal_candidates_without_querying() {
        // Short schedules leave some candidates with w = y; none may be accepted.
        let a = bv(0b01, 2);
        let oracle = SimonOracle::new(2, &a, 0).unwrap();
        let mut opts = SimonOptions::new(SimonMode::Coupled, JPolicy::Fixed(2), 20);
        opts.schedule = AnnealSchedule::new(5, 6.0, 0.01, 1).unwrap().into();
        let r = solve_simon(&oracle, &opts, 9).unwrap();
        for c in &r.trace {
            if c.w == c.y {
                assert!(!c.accepted);
                assert_eq!(c.signal, None);
            }
        }
    }

    #[test]
    fn simon_rejects_bad_options() {
        let oracle = SimonOracle::new(3, &bv(1, 3), 0).unwrap();
        let opts = SimonOptions::new(SimonMode::Coupled, JPolicy::Cycle, 0);
        assert!(solve_simon(&oracle, &opts, 0).is_err());
        let opts = SimonOptions::new(SimonMode::Coupled, JPolicy::Fixed(4), 1);
        assert!(solve_simon(&oracle, &opts, 0).is_err());
    }

    #[test]
    fn j_cycles_round_robin() {
        let js: Vec<_> = (0..7).map(|c| JPolicy::Cycle.j_for_call(c, 3)).collect();
        assert_eq!(js, vec![1, 2, 3, 1, 2, 3, 1]);
        assert_eq!(JPolicy::Fixed(2).j_for_call(5, 3), 2);
    }

    #[test]
    fn stats_edge_cases() {
        let s = Stats::of(&[4.0]);
        assert_eq!((s.mean, s.median, s.stddev), (4.0, 4.0, 0.0));
        let s = Stats::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.median, 2.5);
        assert!((s.stddev - 1.25f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bench_bv_counts_queries_exactly() {
        let config = BenchConfig {
            seed: 4,
            bv: BvOptions::default(),
            simon: SimonOptions::new(SimonMode::Coupled, JPolicy::Cycle, 8),
        };
        let table = bench_calls(Problem::Bv, &[3, 9], 5, &config).unwrap();
        for row in &table.rows {
            assert_eq!(row.oracle_queries.min, (row.n + 16) as f64);
            assert_eq!(row.oracle_queries.max, (row.n + 16) as f64);
            assert_eq!(row.aqc_calls.mean, 1.0);
            assert_eq!(row.success_rate, 1.0);
        }
        let single = bench_calls(Problem::Bv, &[4], 1, &config).unwrap();
        assert_eq!(single.rows[0].aqc_calls.stddev, 0.0);
    }

    #[test]
    fn bench_limits() {
        let config = BenchConfig {
            seed: 0,
            bv: BvOptions::default(),
            simon: SimonOptions::new(SimonMode::Coupled, JPolicy::Cycle, 8),
        };
        assert!(bench_calls(Problem::Simon, &[15], 1, &config).is_err());
        assert!(bench_calls(Problem::Bv, &[4], 0, &config).is_err());
        assert!(bench_calls(Problem::Bv, &[4], 1001, &config).is_err());
    }

    #[test]
    fn report_json_validation() {
        let r = solve_bv(&BvOracle::new(bv(5, 3)), &BvOptions::default(), 0).unwrap();
        let json = r.to_json().unwrap();
        assert_eq!(ExperimentReport::from_json(&json).unwrap(), r);
        let bumped = json.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(ExperimentReport::from_json(&bumped).is_err());
    }
}
