//! Normalized min-sum decoding on the syndrome Tanner graph.
//!
//! One flooding iteration is: variable update, check update (standard or soft), syndrome-belief
//! update (soft modes, from the second iteration on), hard decision, halting test.

mod config;
mod graph;

use std::io::Write;

pub use config::{DecoderConfig, DecoderMode, PriorMode};
pub use graph::{build_graph, TannerGraph};

use crate::error::{check_dim, Result};
use crate::gf2::{mat_vec_mod2, BitVector, SparseBitMatrix};
use crate::noise::{Sign, SyndromeObservation};
use crate::real::Real;

/// Message-passing state for one decode. All magnitudes stay within `llr_sat`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoderState<T> {
    /// Per-variable prior LLR.
    pub lambda: Vec<T>,
    /// Per-edge variable-to-check messages.
    pub nu: Vec<T>,
    /// Per-edge check-to-variable messages.
    pub mu: Vec<T>,
    /// Per-check syndrome sign belief.
    pub s_tilde: Vec<Sign>,
    /// Per-check syndrome reliability belief, never negative.
    pub gamma_tilde: Vec<T>,
    /// Measured (thresholded) syndrome signs.
    pub measured_sign: Vec<Sign>,
    /// Measured reliabilities `|llr|`.
    pub measured_reliability: Vec<T>,
    pub iteration: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub x_hat: BitVector,
    pub converged: bool,
    pub iterations: usize,
    /// Final syndrome belief as bits (`Minus` -> 1). Equals the measured syndrome outside soft modes.
    pub revised_syndrome: BitVector,
}

/// Prior LLR `ln((1-q)/q)` for every variable, with `q` from `prior_mode`, clamped to `llr_sat`.
pub fn prior_llrs<T: Real>(n: usize, p: f64, prior_mode: PriorMode, llr_sat: f64) -> Vec<T> {
    let q = prior_mode.flip_probability(p);
    let llr = ((1.0 - q) / q).ln();
    let llr = if llr.is_nan() { 0.0 } else { llr.clamp(-llr_sat, llr_sat) };
    vec![T::of(llr); n]
}

pub fn init_state<T: Real>(
    graph: &TannerGraph,
    prior: &[T],
    observation: &SyndromeObservation<T>,
    config: &DecoderConfig,
) -> Result<DecoderState<T>> {
    check_dim("prior length", graph.n(), prior.len())?;
    check_dim("observation length", graph.m(), observation.m())?;
    let llr_sat = T::of(config.llr_sat);
    let lambda: Vec<T> = prior.iter().map(|&l| l.clamp_abs(llr_sat)).collect();
    let nu = (0..graph.edge_count())
        .map(|e| lambda[graph.edge_var(e)])
        .collect();
    let measured_reliability: Vec<T> = if config.mode == DecoderMode::Perfect {
        vec![llr_sat; graph.m()]
    } else {
        observation
            .llr
            .iter()
            .map(|g| g.abs().min(llr_sat))
            .collect()
    };
    Ok(DecoderState {
        lambda,
        nu,
        mu: vec![T::zero(); graph.edge_count()],
        s_tilde: observation.hard_sign.clone(),
        gamma_tilde: measured_reliability.clone(),
        measured_sign: observation.hard_sign.clone(),
        measured_reliability,
        iteration: 0,
    })
}

/// `nu(i,j) = lambda_j + sum of mu(i',j)` over the other checks `i'` of `j`.
pub fn variable_update<T: Real>(state: &mut DecoderState<T>, graph: &TannerGraph, config: &DecoderConfig) {
    let llr_sat = T::of(config.llr_sat);
    for j in 0..graph.n() {
        let edges = graph.var_edges(j);
        for &e in edges {
            let mut sum = state.lambda[j];
            for &other in edges {
                if other != e {
                    sum = sum + state.mu[other];
                }
            }
            state.nu[e] = sum.clamp_abs(llr_sat);
        }
    }
}

/// Extrinsic sign products and minima over the `nu` entering one check.
struct CheckSummary<T> {
    sign: Sign,
    min1: T,
    min2: T,
    argmin: usize,
}

fn summarize<T: Real>(nu: &[T], edges: std::ops::Range<usize>) -> CheckSummary<T> {
    let mut s = CheckSummary {
        sign: Sign::Plus,
        min1: T::infinity(),
        min2: T::infinity(),
        argmin: usize::MAX,
    };
    for e in edges {
        let v = nu[e];
        s.sign = s.sign.times(Sign::of(v));
        let a = v.abs();
        if a < s.min1 {
            s.min2 = s.min1;
            s.min1 = a;
            s.argmin = e;
        } else if a < s.min2 {
            s.min2 = a;
        }
    }
    s
}

impl<T: Real> CheckSummary<T> {
    /// Sign and magnitude of the product/minimum over the check's edges other than `e`.
    #[inline]
    fn extrinsic(&self, nu: &[T], e: usize) -> (Sign, T) {
        let mag = if e == self.argmin { self.min2 } else { self.min1 };
        (self.sign.times(Sign::of(nu[e])), mag)
    }
}

/// Shared min-sum check rule. `reliability` caps the magnitude of checks at or below the cutoff.
fn check_rule<T: Real>(
    state: &mut DecoderState<T>,
    graph: &TannerGraph,
    config: &DecoderConfig,
    inputs: impl Fn(&DecoderState<T>, usize) -> (Sign, Option<T>),
) {
    let beta = T::of(config.beta);
    let llr_sat = T::of(config.llr_sat);
    for i in 0..graph.m() {
        let edges = graph.check_edges(i);
        if edges.is_empty() {
            continue;
        }
        let summary = summarize(&state.nu, edges.clone());
        let (syndrome_sign, cap) = inputs(state, i);
        for e in edges {
            let (sign, mut mag) = summary.extrinsic(&state.nu, e);
            // an empty extrinsic set (degree-1 check) is treated as saturated
            mag = mag.min(llr_sat);
            if let Some(cap) = cap {
                mag = mag.min(cap);
            }
            let signed = syndrome_sign.times(sign).value::<T>() * mag;
            state.mu[e] = (beta * signed).clamp_abs(llr_sat);
        }
    }
}

/// Normalized min-sum check update driven by the measured syndrome signs.
pub fn check_update_standard<T: Real>(state: &mut DecoderState<T>, graph: &TannerGraph, config: &DecoderConfig) {
    check_rule(state, graph, config, |st, i| (st.measured_sign[i], None));
}

/// Soft-syndrome check update: checks whose reliability does not exceed the cutoff have their
/// outgoing magnitude capped by that reliability.
pub fn check_update_soft<T: Real>(state: &mut DecoderState<T>, graph: &TannerGraph, config: &DecoderConfig) {
    let cutoff = T::of(config.gamma_cutoff);
    let evolving = config.evolving_check_inputs;
    check_rule(state, graph, config, |st, i| {
        let (sign, g) = if evolving {
            (st.s_tilde[i], st.gamma_tilde[i])
        } else {
            (st.measured_sign[i], st.measured_reliability[i])
        };
        (sign, if g > cutoff { None } else { Some(g) })
    });
}

/// Updates the per-check syndrome beliefs from all incoming `nu`. Returns the checks whose
/// sign flipped.
///
/// When the weakest incoming message beats the current reliability, a belief that agrees with
/// the incoming sign product takes that magnitude as its new reliability (`Soft` only), and a
/// belief that disagrees flips sign.
pub fn syndrome_belief_update<T: Real>(
    state: &mut DecoderState<T>,
    graph: &TannerGraph,
    config: &DecoderConfig,
) -> Vec<usize> {
    let update_reliability = config.mode == DecoderMode::Soft;
    let mut flipped = Vec::new();
    for i in 0..graph.m() {
        let edges = graph.check_edges(i);
        if edges.is_empty() {
            continue;
        }
        let summary = summarize(&state.nu, edges);
        if summary.min1 > state.gamma_tilde[i] {
            if summary.sign == state.s_tilde[i] {
                if update_reliability {
                    state.gamma_tilde[i] = summary.min1;
                }
            } else {
                state.s_tilde[i] = state.s_tilde[i].flipped();
                flipped.push(i);
            }
        }
    }
    flipped
}

/// Hard decision: bit `j` is set iff `lambda_j + sum of incoming mu` is negative.
pub fn decide<T: Real>(state: &DecoderState<T>, graph: &TannerGraph) -> BitVector {
    let mut x = BitVector::zeros(graph.n());
    for j in 0..graph.n() {
        let total = graph
            .var_edges(j)
            .iter()
            .fold(state.lambda[j], |acc, &e| acc + state.mu[e]);
        if total < T::zero() {
            x.set(j, true);
        }
    }
    x
}

/// True iff the syndrome of `x_hat`, read as signs, equals `target`.
pub fn halt_check(x_hat: &BitVector, h: &SparseBitMatrix, target: &[Sign]) -> Result<bool> {
    check_dim("halt target", h.rows(), target.len())?;
    let s = mat_vec_mod2(h, x_hat)?;
    Ok(target.iter().enumerate().all(|(i, t)| t.bit() == s.get(i)))
}

fn graph_halts(x_hat: &BitVector, graph: &TannerGraph, target: &[Sign]) -> bool {
    (0..graph.m()).all(|i| graph.check_parity(i, x_hat) == target[i].bit())
}

fn signs_to_bits(signs: &[Sign]) -> BitVector {
    BitVector::from_bools(&signs.iter().map(|s| s.bit()).collect::<Vec<_>>())
}

pub const TRACE_CSV_HEADER: &str = "iteration,edge,check,variable,nu,mu,s_tilde,flipped";

fn write_trace<T: Real>(
    out: &mut dyn Write,
    state: &DecoderState<T>,
    graph: &TannerGraph,
    flipped: &[usize],
) -> std::io::Result<()> {
    for e in 0..graph.edge_count() {
        let i = graph.edge_check(e);
        let s = if state.s_tilde[i].is_minus() { -1 } else { 1 };
        let f = flipped.binary_search(&i).is_ok() as u8;
        writeln!(
            out,
            "{},{e},{i},{},{},{},{s},{f}",
            state.iteration,
            graph.edge_var(e),
            state.nu[e],
            state.mu[e]
        )?;
    }
    Ok(())
}

/// Runs the decoder to convergence or `l_max` iterations.
pub fn decode<T: Real>(
    graph: &TannerGraph,
    prior: &[T],
    observation: &SyndromeObservation<T>,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode_traced(graph, prior, observation, config, None)
}

/// [`decode`] that also writes one CSV row per edge per iteration to `trace`.
pub fn decode_traced<T: Real>(
    graph: &TannerGraph,
    prior: &[T],
    observation: &SyndromeObservation<T>,
    config: &DecoderConfig,
    mut trace: Option<&mut dyn Write>,
) -> Result<DecodeResult> {
    config.validate()?;
    let mut state = init_state(graph, prior, observation, config)?;
    let soft = config.mode.is_soft();
    let mut x_hat = BitVector::zeros(graph.n());
    for iteration in 1..=config.l_max {
        state.iteration = iteration;
        variable_update(&mut state, graph, config);
        let flipped = if soft {
            check_update_soft(&mut state, graph, config);
            // beliefs start at the measured values and evolve from the second iteration
            if iteration > 1 {
                syndrome_belief_update(&mut state, graph, config)
            } else {
                Vec::new()
            }
        } else {
            check_update_standard(&mut state, graph, config);
            Vec::new()
        };
        if let Some(out) = trace.as_deref_mut() {
            write_trace(out, &state, graph, &flipped)?;
        }
        x_hat = decide(&state, graph);
        let target = if soft { &state.s_tilde } else { &state.measured_sign };
        if graph_halts(&x_hat, graph, target) {
            return Ok(DecodeResult {
                x_hat,
                converged: true,
                iterations: iteration,
                revised_syndrome: signs_to_bits(&state.s_tilde),
            });
        }
    }
    Ok(DecodeResult {
        x_hat,
        converged: false,
        iterations: config.l_max,
        revised_syndrome: signs_to_bits(&state.s_tilde),
    })
}

/// A Tanner graph bundled with a decoder configuration.
#[derive(Clone, Debug)]
pub struct Decoder {
    pub graph: TannerGraph,
    pub config: DecoderConfig,
}

impl Decoder {
    pub fn new(h: &SparseBitMatrix, config: DecoderConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            graph: TannerGraph::new(h),
            config,
        })
    }

    pub fn decode<T: Real>(&self, prior: &[T], observation: &SyndromeObservation<T>) -> Result<DecodeResult> {
        decode(&self.graph, prior, observation, &self.config)
    }
}
