//! Syndrome-based normalized min-sum decoding of CSS quantum LDPC codes with perfect, hard and
//! soft (analog) syndrome inputs, lifted-product code construction and a Monte-Carlo harness.
//!
//! Message-passing types are generic over [`Real`] (`f32` or `f64`); the aliases below fix the
//! scalar for the common cases.

pub mod code;
pub mod decoder;
mod error;
pub mod gf2;
pub mod harness;
pub mod noise;
mod real;

pub use error::{Error, Result};
pub use real::Real;

pub use code::{lifted_product, lp_tanner, tanner_base, CssCode, QcBaseMatrix};
pub use decoder::{DecodeResult, DecoderConfig, DecoderMode, PriorMode, TannerGraph};
pub use gf2::{BitMatrix, BitVector, SparseBitMatrix};
pub use harness::{AggregateStats, Classification, ExperimentConfig, PreparedCode, StopRule};
pub use noise::{NoiseParams, PauliErrorVector, Sign};

pub type SyndromeObservation = noise::SyndromeObservation<f64>;
pub type SyndromeObservationF32 = noise::SyndromeObservation<f32>;
pub type DecoderState = decoder::DecoderState<f64>;
pub type DecoderStateF32 = decoder::DecoderState<f32>;
