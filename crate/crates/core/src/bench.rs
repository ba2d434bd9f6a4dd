//! Seeded experiment harness: key sizes and attack timings per dimension.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::attack::{doubling_phase, search_exponent, ProbeStrategy};
use crate::error::{Error, Result};
use crate::protocol::{shared_key, run_exchange, ProtocolParams};
use crate::semidirect::{OpCounter, SemigroupOpKind};
use crate::tropical::TropicalMatrix;

pub const CSV_HEADER: &str = "k,alpha_bits,time_mprime_s,time_full_s,t_over_k3,t_over_alpha15,trials,plateau_fraction";

/// Bits needed to write `matrix` down: per entry, the magnitude bit length
/// plus one sign bit.
pub fn measure_alpha(matrix: &TropicalMatrix) -> u64 {
    matrix.entry_bit_lengths().iter().map(|b| b + 1).sum()
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub k_list: Vec<usize>,
    pub entry_bound: u64,
    pub key_bits: u32,
    pub op: SemigroupOpKind,
    pub trials: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k_list: (1..=12).map(|i| 5 * i).collect(),
            entry_bound: 1000,
            key_bits: 200,
            op: SemigroupOpKind::Circ,
            trials: 40,
            seed: 0,
        }
    }
}

/// One successful trial.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub alpha_bits: u64,
    pub time_mprime: Duration,
    pub time_full: Duration,
    pub plateau: bool,
    pub op_count: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub k: usize,
    pub alpha_bits: f64,
    /// Mean time to find `m'`; the ratio columns are derived from this one.
    pub time_mprime_s: f64,
    /// Mean time including key derivation.
    pub time_full_s: f64,
    pub t_over_k3: f64,
    pub t_over_alpha15: f64,
    pub trials: usize,
    /// Fraction of trials where `m' ≠ m`.
    pub plateau_fraction: f64,
}

/// Seed for trial `index`: `seed + index`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

/// Setup, exchange, then a timed attack on Alice's message. The recovered
/// key is checked against the parties' key before any timing is returned.
pub fn run_trial(k: usize, entry_bound: u64, key_bits: u32, op: SemigroupOpKind, seed: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ProtocolParams::setup(k, entry_bound, key_bits, op, &mut rng)?;
    let exchange = run_exchange(params, &mut rng)?;
    let transcript = &exchange.transcript;
    let params = &transcript.params;
    let target = &transcript.alice_message;

    let mut counter = OpCounter::new();
    let start = Instant::now();
    let (t, cache) = doubling_phase(params.op(), params.base(), target, params.key_bits(), &mut counter)?;
    let (m_prime, eve_pair) = search_exponent(&cache, target, t, ProbeStrategy::Cached, &mut counter)?;
    let time_mprime = start.elapsed();
    let key = shared_key(params.op(), &eve_pair, &transcript.bob_message)?;
    let time_full = start.elapsed();

    if &key != exchange.shared_key() {
        return Err(Error::AttackFailed(format!(
            "k = {k}, seed = {seed}: recovered key differs from the shared key (m' = {m_prime})"
        )));
    }
    Ok(TrialOutcome {
        alpha_bits: measure_alpha(target),
        time_mprime,
        time_full,
        plateau: &m_prime != exchange.alice.exponent(),
        op_count: counter.get(),
    })
}

/// Averages `trials` outcomes for one dimension.
pub fn summarize(k: usize, outcomes: &[TrialOutcome]) -> ExperimentRow {
    let n = outcomes.len().max(1) as f64;
    let alpha = outcomes.iter().map(|o| o.alpha_bits as f64).sum::<f64>() / n;
    let t = outcomes.iter().map(|o| o.time_mprime.as_secs_f64()).sum::<f64>() / n;
    let full = outcomes.iter().map(|o| o.time_full.as_secs_f64()).sum::<f64>() / n;
    let plateaus = outcomes.iter().filter(|o| o.plateau).count() as f64;
    ExperimentRow {
        k,
        alpha_bits: alpha,
        time_mprime_s: t,
        time_full_s: full,
        t_over_k3: t / (k as f64).powi(3),
        t_over_alpha15: t / alpha.powf(1.5),
        trials: outcomes.len(),
        plateau_fraction: plateaus / n,
    }
}

/// Runs every `(k, trial)` cell sequentially on the calling thread. Cells are
/// visited trial-major (all dimensions for trial 0, then trial 1, …) so that
/// slow phases of the host spread evenly over the dimensions.
pub fn run_experiment(config: &RunConfig) -> Result<Vec<ExperimentRow>> {
    run_experiment_with(config, |_, _| {})
}

/// As [`run_experiment`], reporting each finished trial to `progress`.
pub fn run_experiment_with(config: &RunConfig, mut progress: impl FnMut(usize, &TrialOutcome)) -> Result<Vec<ExperimentRow>> {
    if config.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if config.k_list.is_empty() {
        return Err(Error::invalid("no dimensions to run"));
    }
    let mut outcomes: Vec<Vec<TrialOutcome>> = vec![Vec::with_capacity(config.trials); config.k_list.len()];
    for i in 0..config.trials {
        for (&k, cell) in config.k_list.iter().zip(outcomes.iter_mut()) {
            let o = run_trial(k, config.entry_bound, config.key_bits, config.op, trial_seed(config.seed, i))?;
            progress(k, &o);
            cell.push(o);
        }
    }
    Ok(config.k_list.iter().zip(&outcomes).map(|(&k, o)| summarize(k, o)).collect())
}

/// `x` with six significant digits, switching to exponent form outside
/// `[1e-4, 1e6)`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

pub fn write_csv<W: Write>(rows: &[ExperimentRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.k,
            format_sig6(r.alpha_bits),
            format_sig6(r.time_mprime_s),
            format_sig6(r.time_full_s),
            format_sig6(r.t_over_k3),
            format_sig6(r.t_over_alpha15),
            r.trials,
            format_sig6(r.plateau_fraction),
        )?;
    }
    Ok(())
}
