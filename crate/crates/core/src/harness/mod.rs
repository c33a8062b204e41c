//! Seeded, parallel Monte-Carlo estimation of logical error rates.
//!
//! Every trial draws its randomness from a generator keyed by `(master_seed, p, sigma, trial)`,
//! so results do not depend on the worker count, and different decoder modes at the same grid
//! point see the same errors and the same syndrome noise.

mod config;

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{CodeSpec, ExperimentConfig, StopRule};

use crate::code::CssCode;
use crate::decoder::{decode, prior_llrs, DecodeResult, DecoderConfig, DecoderMode, TannerGraph};
use crate::error::{check_dim, Result};
use crate::gf2::{mat_vec_mod2, BitVector, RowSpace};
use crate::noise::{observe_syndrome, sample_depolarizing, NoiseParams, PauliErrorVector};
use crate::real::Real;

/// A code with the decoding graphs and stabilizer row spaces precomputed.
#[derive(Clone, Debug)]
pub struct PreparedCode {
    pub code: CssCode,
    /// Graph of `H_Z`, decoding the X part of the error.
    pub x_graph: TannerGraph,
    /// Graph of `H_X`, decoding the Z part of the error.
    pub z_graph: TannerGraph,
    x_stabilizers: RowSpace,
    z_stabilizers: RowSpace,
}

impl PreparedCode {
    pub fn new(code: CssCode) -> Self {
        Self {
            x_graph: TannerGraph::new(&code.h_z),
            z_graph: TannerGraph::new(&code.h_x),
            x_stabilizers: RowSpace::new(&code.h_x.to_dense()),
            z_stabilizers: RowSpace::new(&code.h_z.to_dense()),
            code,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Success,
    LogicalError,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Success => "SUCCESS",
            Classification::LogicalError => "LOGICAL_ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub converged_x: bool,
    pub converged_z: bool,
    pub iterations_x: usize,
    pub iterations_z: usize,
    pub classification: Classification,
}

/// Decodes one residual side: zero syndrome and a stabilizer means success.
fn residual_ok(
    syndrome_graph: &TannerGraph,
    stabilizers: &RowSpace,
    residual: &BitVector,
) -> Result<bool> {
    if residual.is_zero() {
        return Ok(true);
    }
    check_dim("residual length", syndrome_graph.n(), residual.len())?;
    if !syndrome_graph.syndrome(residual).is_zero() {
        return Ok(false);
    }
    stabilizers.contains(residual)
}

/// Success iff both residuals `e ⊕ x̂` have trivial syndrome and lie in the matching
/// stabilizer row space. Non-convergence plays no role.
pub fn classify(
    prepared: &PreparedCode,
    e: &PauliErrorVector,
    x_hat_x: &BitVector,
    x_hat_z: &BitVector,
) -> Result<Classification> {
    let n = prepared.code.n;
    check_dim("classify e_x", n, e.e_x.len())?;
    check_dim("classify e_z", n, e.e_z.len())?;
    check_dim("classify x_hat_x", n, x_hat_x.len())?;
    check_dim("classify x_hat_z", n, x_hat_z.len())?;
    let r_x = e.e_x.xor(x_hat_x);
    let r_z = e.e_z.xor(x_hat_z);
    let ok = residual_ok(&prepared.x_graph, &prepared.x_stabilizers, &r_x)?
        && residual_ok(&prepared.z_graph, &prepared.z_stabilizers, &r_z)?;
    Ok(if ok {
        Classification::Success
    } else {
        Classification::LogicalError
    })
}

/// Classification straight from the matrices, without precomputed structures.
pub fn classify_residuals(code: &CssCode, r_x: &BitVector, r_z: &BitVector) -> Result<Classification> {
    let bad = !mat_vec_mod2(&code.h_z, r_x)?.is_zero()
        || !mat_vec_mod2(&code.h_x, r_z)?.is_zero()
        || !crate::gf2::in_rowspace(&code.h_x.to_dense(), r_x)?
        || !crate::gf2::in_rowspace(&code.h_z.to_dense(), r_z)?;
    Ok(if bad {
        Classification::LogicalError
    } else {
        Classification::Success
    })
}

/// Everything produced by one trial, for callers that need more than the outcome.
#[derive(Clone, Debug)]
pub struct TrialDetail {
    pub error: PauliErrorVector,
    pub x_side: DecodeResult,
    pub z_side: DecodeResult,
    pub outcome: TrialOutcome,
}

/// Samples an error, measures both syndromes, decodes each side and classifies.
///
/// `Perfect` mode measures without syndrome noise regardless of `params.sigma`; the noise draws
/// are still consumed so the random stream matches the other modes.
pub fn run_trial<T: Real, R: rand::Rng + ?Sized>(
    prepared: &PreparedCode,
    params: NoiseParams,
    config: &DecoderConfig,
    rng: &mut R,
) -> Result<TrialDetail> {
    let code = &prepared.code;
    let error = sample_depolarizing(code.n, params.p, rng);
    let sigma = if config.mode == DecoderMode::Perfect {
        T::zero()
    } else {
        T::of(params.sigma)
    };
    let llr_sat = T::of(config.llr_sat);
    let s_x = prepared.x_graph.syndrome(&error.e_x);
    let s_z = prepared.z_graph.syndrome(&error.e_z);
    let obs_x = observe_syndrome(&s_x, sigma, llr_sat, rng);
    let obs_z = observe_syndrome(&s_z, sigma, llr_sat, rng);
    let prior: Vec<T> = prior_llrs(code.n, params.p, config.prior_mode, config.llr_sat);
    let x_side = decode(&prepared.x_graph, &prior, &obs_x, config)?;
    let z_side = decode(&prepared.z_graph, &prior, &obs_z, config)?;
    let classification = classify(prepared, &error, &x_side.x_hat, &z_side.x_hat)?;
    let outcome = TrialOutcome {
        trial_index: 0,
        converged_x: x_side.converged,
        converged_z: z_side.converged,
        iterations_x: x_side.iterations,
        iterations_z: z_side.iterations,
        classification,
    };
    Ok(TrialDetail {
        error,
        x_side,
        z_side,
        outcome,
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Generator for trial `trial` at grid point `(p, sigma)`.
pub fn trial_rng(master_seed: u64, p: f64, sigma: f64, trial: u64) -> ChaCha8Rng {
    let key = splitmix64(master_seed ^ splitmix64(p.to_bits() ^ splitmix64(sigma.to_bits())));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(trial);
    rng
}

/// Binomial standard error `sqrt(q (1 - q) / trials)` with `q = errors / trials`.
pub fn stderr_estimate(errors: u64, trials: u64) -> f64 {
    assert!(trials > 0, "standard error needs at least one trial");
    let q = errors as f64 / trials as f64;
    (q * (1.0 - q) / trials as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateStats {
    pub code: String,
    pub mode: DecoderMode,
    pub p: f64,
    pub sigma: f64,
    pub beta: f64,
    pub gamma_cutoff: f64,
    pub l_max: usize,
    pub trials: u64,
    pub logical_errors: u64,
    pub ler: f64,
    pub ler_stderr: f64,
    /// Mean iterations over both sides' decodings, non-converged ones counted at `l_max`.
    pub avg_iterations: f64,
    /// Mean iterations over converged decodings only; NaN when none converged.
    pub avg_iterations_converged: f64,
    pub seed: u64,
}

impl AggregateStats {
    /// Normal-approximation 95% interval for the logical error rate.
    pub fn ler_interval95(&self) -> (f64, f64) {
        (
            (self.ler - 1.96 * self.ler_stderr).max(0.0),
            (self.ler + 1.96 * self.ler_stderr).min(1.0),
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    trials: u64,
    logical_errors: u64,
    iterations: u64,
    converged: u64,
    converged_iterations: u64,
}

impl Tally {
    fn add(&mut self, o: &TrialOutcome) {
        self.trials += 1;
        self.logical_errors += (o.classification == Classification::LogicalError) as u64;
        self.iterations += (o.iterations_x + o.iterations_z) as u64;
        for (c, it) in [(o.converged_x, o.iterations_x), (o.converged_z, o.iterations_z)] {
            if c {
                self.converged += 1;
                self.converged_iterations += it as u64;
            }
        }
    }
}

/// Grid point as passed to progress callbacks.
#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub mode: DecoderMode,
    pub p: f64,
    pub sigma: f64,
    pub trials: u64,
    pub logical_errors: u64,
}

const BATCH: u64 = 1024;

/// Runs one grid point on the current rayon pool.
pub fn run_point<T: Real>(
    prepared: &PreparedCode,
    params: NoiseParams,
    decoder: &DecoderConfig,
    stop_rule: StopRule,
    master_seed: u64,
    progress: &mut (dyn FnMut(Progress) + Send),
) -> Result<AggregateStats> {
    decoder.validate()?;
    let max_trials = stop_rule.max_trials();
    let target = stop_rule.error_target();
    let mut tally = Tally::default();
    let mut next = 0u64;
    'batches: while next < max_trials {
        let end = (next + BATCH).min(max_trials);
        let outcomes = (next..end)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(master_seed, params.p, params.sigma, t);
                run_trial::<T, _>(prepared, params, decoder, &mut rng).map(|d| TrialOutcome {
                    trial_index: t,
                    ..d.outcome
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for o in &outcomes {
            tally.add(o);
            if target.is_some_and(|k| tally.logical_errors >= k) {
                break 'batches;
            }
        }
        next = end;
        progress(Progress {
            mode: decoder.mode,
            p: params.p,
            sigma: params.sigma,
            trials: tally.trials,
            logical_errors: tally.logical_errors,
        });
    }
    let ler = tally.logical_errors as f64 / tally.trials as f64;
    Ok(AggregateStats {
        code: prepared.code.name.clone(),
        mode: decoder.mode,
        p: params.p,
        sigma: params.sigma,
        beta: decoder.beta,
        gamma_cutoff: decoder.gamma_cutoff,
        l_max: decoder.l_max,
        trials: tally.trials,
        logical_errors: tally.logical_errors,
        ler,
        ler_stderr: stderr_estimate(tally.logical_errors, tally.trials),
        avg_iterations: tally.iterations as f64 / (2 * tally.trials) as f64,
        avg_iterations_converged: if tally.converged == 0 {
            f64::NAN
        } else {
            tally.converged_iterations as f64 / tally.converged as f64
        },
        seed: master_seed,
    })
}

/// Runs every `(p, sigma, mode)` grid point, in that nesting order, on `workers` threads.
pub fn run_experiment<T: Real>(
    config: &ExperimentConfig,
    prepared: &PreparedCode,
    workers: usize,
    progress: &mut (dyn FnMut(Progress) + Send),
) -> Result<Vec<AggregateStats>> {
    config.validate()?;
    let mut params = Vec::new();
    for &p in &config.p_grid {
        for &sigma in &config.sigma_grid {
            params.push(NoiseParams::new(p, sigma)?);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| crate::Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut out = Vec::new();
        for &np in &params {
            for &mode in &config.modes {
                let decoder = config.decoder.with_mode(mode);
                out.push(run_point::<T>(
                    prepared,
                    np,
                    &decoder,
                    config.stop_rule,
                    config.master_seed,
                    progress,
                )?);
            }
        }
        Ok(out)
    })
}

pub const CSV_SCHEMA_LINE: &str = "# qsynd-sweep v1";
pub const CSV_HEADER: &str = "code,mode,p,sigma,beta,gamma_cutoff,l_max,trials,logical_errors,ler,ler_stderr,avg_iterations,avg_iterations_converged,seed";

pub fn write_csv<W: Write>(out: &mut W, rows: &[AggregateStats]) -> std::io::Result<()> {
    writeln!(out, "{CSV_SCHEMA_LINE}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.code,
            r.mode,
            r.p,
            r.sigma,
            r.beta,
            r.gamma_cutoff,
            r.l_max,
            r.trials,
            r.logical_errors,
            r.ler,
            r.ler_stderr,
            r.avg_iterations,
            r.avg_iterations_converged,
            r.seed
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests;
