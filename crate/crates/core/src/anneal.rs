//! Simulated annealing ground-state search.
//!
//! Metropolis single-flip dynamics under a geometric temperature schedule.
//! Each sweep visits every variable once in a freshly shuffled order. Restart
//! `r` draws from ChaCha8 stream `r` of the run seed, so a run is a pure
//! function of `(objective, schedule, seed)`.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::model::QuboModel;
use crate::{rng, BitVector, Error, Result};

pub const DEFAULT_T_FINAL: f64 = 0.01;
pub const DEFAULT_SWEEPS_PER_VAR: usize = 100;
pub const DEFAULT_RESTARTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub sweeps: usize,
    pub t_initial: f64,
    pub t_final: f64,
    pub restarts: usize,
}

impl AnnealSchedule {
    pub fn new(sweeps: usize, t_initial: f64, t_final: f64, restarts: usize) -> Result<Self> {
        let s = Self {
            sweeps,
            t_initial,
            t_final,
            restarts,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSchedule(m.to_string()));
        if self.sweeps == 0 {
            return bad("sweeps must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if !(self.t_initial.is_finite() && self.t_initial > 0.0) {
            return bad("t_initial must be a positive number");
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return bad("t_final must be a positive number");
        }
        if self.t_initial < self.t_final {
            return bad("t_initial must be at least t_final");
        }
        Ok(())
    }

    /// Schedule for `n_vars` variables whose largest single-flip energy change
    /// is `flip_bound`. The starting temperature is floored at 1.
    pub fn for_flip_bound(n_vars: usize, flip_bound: f64) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::EmptyModel);
        }
        Self::new(
            DEFAULT_SWEEPS_PER_VAR * n_vars,
            flip_bound.max(1.0),
            DEFAULT_T_FINAL,
            DEFAULT_RESTARTS,
        )
    }

    /// Per-sweep geometric factor `(t_final / t_initial)^(1 / (sweeps - 1))`.
    pub fn decay(&self) -> f64 {
        if self.sweeps <= 1 {
            return 1.0;
        }
        (self.t_final / self.t_initial).powf(1.0 / (self.sweeps - 1) as f64)
    }

    /// Temperature of sweep `k`. The last sweep runs at `t_final`; a
    /// single-sweep schedule runs entirely at `t_final`.
    pub fn temperature(&self, k: usize) -> f64 {
        if self.sweeps <= 1 {
            return self.t_final;
        }
        let frac = k as f64 / (self.sweeps - 1) as f64;
        self.t_initial * (self.t_final / self.t_initial).powf(frac)
    }
}

/// Partial schedule; unset fields fall back to a model's default schedule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScheduleOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweeps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_initial: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
}

impl ScheduleOverrides {
    pub fn apply(&self, base: AnnealSchedule) -> Result<AnnealSchedule> {
        AnnealSchedule::new(
            self.sweeps.unwrap_or(base.sweeps),
            self.t_initial.unwrap_or(base.t_initial),
            self.t_final.unwrap_or(base.t_final),
            self.restarts.unwrap_or(base.restarts),
        )
    }

    /// Resolve against a lazily computed default, which is only needed when
    /// some field is unset.
    pub fn resolve(&self, base: impl FnOnce() -> Result<AnnealSchedule>) -> Result<AnnealSchedule> {
        match (self.sweeps, self.t_initial, self.t_final, self.restarts) {
            (Some(sweeps), Some(t0), Some(t1), Some(restarts)) => AnnealSchedule::new(sweeps, t0, t1, restarts),
            _ => self.apply(base()?),
        }
    }
}

impl From<AnnealSchedule> for ScheduleOverrides {
    fn from(s: AnnealSchedule) -> Self {
        Self {
            sweeps: Some(s.sweeps),
            t_initial: Some(s.t_initial),
            t_final: Some(s.t_final),
            restarts: Some(s.restarts),
        }
    }
}

/// Default schedule for a model: `t_initial` is the largest
/// `|h_i| + sum_j |J_ij|` (at least 1), `t_final = 0.01`,
/// `100 * n_vars` sweeps and 8 restarts.
pub fn default_schedule(model: &QuboModel) -> Result<AnnealSchedule> {
    let bound = model
        .flip_bounds()
        .into_iter()
        .max()
        .and_then(|b| b.to_f64())
        .unwrap_or(0.0);
    AnnealSchedule::for_flip_bound(model.n_vars(), bound)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealResult {
    pub best_assignment: BitVector,
    pub best_energy: f64,
    pub restarts_used: usize,
    /// Incremental ΔE computations for models, callback invocations for
    /// black-box objectives.
    pub energy_evaluations: u64,
    pub seed: u64,
    /// Best energy seen so far at the end of every sweep, restarts in order.
    #[serde(skip)]
    pub best_trace: Vec<f64>,
}

trait Landscape {
    /// Full energy of `state`; resets any incremental bookkeeping.
    fn energy(&mut self, state: &[bool]) -> f64;
    /// Energy change of flipping `i`. Leaves `state` as it found it.
    fn delta(&mut self, state: &mut [bool], i: usize) -> f64;
    fn flip(&mut self, state: &mut [bool], i: usize);
    fn evaluations(&self) -> u64;
}

struct ModelLandscape {
    linear: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
    field: Vec<f64>,
    evaluations: u64,
}

impl ModelLandscape {
    fn new(model: &QuboModel) -> Self {
        let f = |c: crate::Coeff| c.to_f64().expect("rational converts to f64");
        let n = model.n_vars();
        let mut linear = vec![0.0; n];
        for (i, h) in model.linear_terms() {
            linear[i] = f(h);
        }
        let mut neighbors = vec![Vec::new(); n];
        for ((i, j), c) in model.quadratic_terms() {
            neighbors[i].push((j, f(c)));
            neighbors[j].push((i, f(c)));
        }
        Self {
            field: linear.clone(),
            linear,
            neighbors,
            evaluations: 0,
        }
    }
}

impl Landscape for ModelLandscape {
    fn energy(&mut self, state: &[bool]) -> f64 {
        self.field.copy_from_slice(&self.linear);
        let mut e = 0.0;
        for (i, &on) in state.iter().enumerate() {
            if on {
                e += self.linear[i];
                for &(j, c) in &self.neighbors[i] {
                    self.field[j] += c;
                    if j < i && state[j] {
                        e += c;
                    }
                }
            }
        }
        e
    }

    fn delta(&mut self, state: &mut [bool], i: usize) -> f64 {
        self.evaluations += 1;
        if state[i] {
            -self.field[i]
        } else {
            self.field[i]
        }
    }

    fn flip(&mut self, state: &mut [bool], i: usize) {
        let sign = if state[i] { -1.0 } else { 1.0 };
        state[i] = !state[i];
        for &(j, c) in &self.neighbors[i] {
            self.field[j] += sign * c;
        }
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

struct BlackBox<F> {
    energy: F,
    evaluations: u64,
}

impl<F: FnMut(&[bool]) -> f64> Landscape for BlackBox<F> {
    fn energy(&mut self, state: &[bool]) -> f64 {
        self.evaluations += 1;
        (self.energy)(state)
    }

    fn delta(&mut self, state: &mut [bool], i: usize) -> f64 {
        let before = self.energy(state);
        state[i] = !state[i];
        let after = self.energy(state);
        state[i] = !state[i];
        after - before
    }

    fn flip(&mut self, state: &mut [bool], i: usize) {
        state[i] = !state[i];
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

fn run<L: Landscape>(
    landscape: &mut L,
    n_vars: usize,
    schedule: &AnnealSchedule,
    seed: u64,
    start: Option<&BitVector>,
) -> Result<AnnealResult> {
    schedule.validate()?;
    if let Some(s) = start {
        if s.len() != n_vars {
            return Err(Error::Dimension {
                expected: n_vars,
                found: s.len(),
            });
        }
    }
    let temperatures: Vec<f64> = (0..schedule.sweeps).map(|k| schedule.temperature(k)).collect();
    let mut best: Option<(f64, Vec<bool>)> = None;
    let mut best_trace = Vec::with_capacity(schedule.sweeps * schedule.restarts);
    let mut order: Vec<usize> = (0..n_vars).collect();

    for restart in 0..schedule.restarts {
        let mut rng = rng::seeded(seed, restart as u64);
        let mut state: Vec<bool> = match start {
            Some(s) => s.as_slice().to_vec(),
            None => (0..n_vars).map(|_| rng.random::<bool>()).collect(),
        };
        let mut energy = landscape.energy(&state);
        let mut restart_best = (energy, state.clone());

        for &t in &temperatures {
            order.shuffle(&mut rng);
            for &i in &order {
                let de = landscape.delta(&mut state, i);
                if de <= 0.0 || rng.random::<f64>() < (-de / t).exp() {
                    landscape.flip(&mut state, i);
                    energy += de;
                    if energy < restart_best.0 {
                        restart_best = (energy, state.clone());
                    }
                }
            }
            let so_far = best.as_ref().map_or(restart_best.0, |b| b.0.min(restart_best.0));
            best_trace.push(so_far);
        }

        // Ties go to the lexicographically least assignment.
        let better = match &best {
            None => true,
            Some((e, s)) => restart_best.0 < *e || (restart_best.0 == *e && restart_best.1 < *s),
        };
        if better {
            best = Some(restart_best);
        }
    }

    let (best_energy, best_bits) = best.expect("at least one restart");
    Ok(AnnealResult {
        best_assignment: BitVector::from_bits(best_bits),
        best_energy,
        restarts_used: schedule.restarts,
        energy_evaluations: landscape.evaluations(),
        seed,
        best_trace,
    })
}

/// Anneal an explicit model with incremental O(degree) energy updates.
pub fn anneal(model: &QuboModel, schedule: &AnnealSchedule, seed: u64) -> Result<AnnealResult> {
    run(&mut ModelLandscape::new(model), model.n_vars(), schedule, seed, None)
}

/// As [`anneal`], but every restart starts from `start` instead of a random
/// assignment.
pub fn anneal_from(
    model: &QuboModel,
    schedule: &AnnealSchedule,
    seed: u64,
    start: &BitVector,
) -> Result<AnnealResult> {
    run(&mut ModelLandscape::new(model), model.n_vars(), schedule, seed, Some(start))
}

/// Anneal an objective known only through evaluations. Each proposed flip
/// costs two calls; the callback must be deterministic during the run.
pub fn anneal_black_box<F>(energy: F, n_vars: usize, schedule: &AnnealSchedule, seed: u64) -> Result<AnnealResult>
where
    F: FnMut(&[bool]) -> f64,
{
    let mut landscape = BlackBox {
        energy,
        evaluations: 0,
    };
    run(&mut landscape, n_vars, schedule, seed, None)
}
