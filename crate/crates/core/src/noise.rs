//! Depolarizing data-qubit errors and Gaussian syndrome measurement noise.

use std::io::Write;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_dim, Error, Result};
use crate::gf2::{mat_vec_mod2, BitVector, SparseBitMatrix};
use crate::real::Real;

/// Bipolar syndrome value: `Plus` is a satisfied check (bit 0), `Minus` unsatisfied (bit 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `Minus` for negative values, `Plus` otherwise.
    #[inline]
    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    #[inline]
    pub fn bit(self) -> bool {
        self.is_minus()
    }

    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    #[inline]
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Binary (X-part, Z-part) representation of an `n`-qubit Pauli error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliErrorVector {
    pub e_x: BitVector,
    pub e_z: BitVector,
}

impl PauliErrorVector {
    pub fn identity(n: usize) -> Self {
        Self {
            e_x: BitVector::zeros(n),
            e_z: BitVector::zeros(n),
        }
    }

    pub fn new(e_x: BitVector, e_z: BitVector) -> Result<Self> {
        check_dim("pauli error halves", e_x.len(), e_z.len())?;
        Ok(Self { e_x, e_z })
    }

    pub fn n(&self) -> usize {
        self.e_x.len()
    }

    /// Parses a string over `I X Y Z` (case-insensitive, whitespace ignored).
    pub fn from_pauli_string(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut e = Self::identity(chars.len());
        for (j, c) in chars.into_iter().enumerate() {
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => e.e_x.set(j, true),
                'Z' => e.e_z.set(j, true),
                'Y' => {
                    e.e_x.set(j, true);
                    e.e_z.set(j, true);
                }
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected Pauli character {other:?}"),
                    })
                }
            }
        }
        Ok(e)
    }

    pub fn to_pauli_string(&self) -> String {
        (0..self.n())
            .map(|j| match (self.e_x.get(j), self.e_z.get(j)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.n())
            .filter(|&j| self.e_x.get(j) || self.e_z.get(j))
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    pub p: f64,
    pub sigma: f64,
}

impl NoiseParams {
    pub fn new(p: f64, sigma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!("depolarizing probability {p} outside [0, 1]")));
        }
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::InvalidConfig(format!("syndrome noise sigma {sigma} must be finite and >= 0")));
        }
        Ok(Self { p, sigma })
    }
}

/// Default LLR saturation magnitude.
pub const DEFAULT_LLR_SAT: f64 = 30.0;

/// Analog syndrome readout: raw values, thresholded signs and clamped LLRs.
#[derive(Clone, Debug, PartialEq)]
pub struct SyndromeObservation<T> {
    pub raw: Vec<T>,
    pub hard_sign: Vec<Sign>,
    pub llr: Vec<T>,
}

impl<T: Real> SyndromeObservation<T> {
    pub fn m(&self) -> usize {
        self.raw.len()
    }

    /// Noiseless readout of `s_bits`.
    pub fn noiseless(s_bits: &BitVector, llr_sat: T) -> Self {
        let hard_sign: Vec<Sign> = (0..s_bits.len()).map(|i| Sign::from_bit(s_bits.get(i))).collect();
        Self {
            raw: hard_sign.iter().map(|s| s.value()).collect(),
            llr: hard_sign.iter().map(|s| s.value::<T>() * llr_sat).collect(),
            hard_sign,
        }
    }

    /// Builds an observation from raw analog values.
    ///
    /// `sigma = 0` yields `llr = sign * llr_sat`.
    pub fn from_raw(raw: Vec<T>, sigma: T, llr_sat: T) -> Self {
        let hard_sign: Vec<Sign> = raw.iter().map(|&r| Sign::of(r)).collect();
        let llr = raw
            .iter()
            .zip(&hard_sign)
            .map(|(&r, s)| {
                if sigma == T::zero() {
                    s.value::<T>() * llr_sat
                } else {
                    (T::of(2.0) * r / (sigma * sigma)).clamp_abs(llr_sat)
                }
            })
            .collect();
        Self { raw, hard_sign, llr }
    }

    /// Thresholded syndrome as bits (`Minus` -> 1).
    pub fn hard_bits(&self) -> BitVector {
        BitVector::from_bools(&self.hard_sign.iter().map(|s| s.bit()).collect::<Vec<_>>())
    }
}

/// Samples i.i.d. depolarizing errors: X, Y, Z each with probability `p/3`.
pub fn sample_depolarizing<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> PauliErrorVector {
    let mut e = PauliErrorVector::identity(n);
    let third = p / 3.0;
    for j in 0..n {
        let u: f64 = rng.random();
        if u < third {
            e.e_x.set(j, true);
        } else if u < 2.0 * third {
            e.e_x.set(j, true);
            e.e_z.set(j, true);
        } else if u < p {
            e.e_z.set(j, true);
        }
    }
    e
}

pub fn ideal_syndrome(h: &SparseBitMatrix, e: &BitVector) -> Result<BitVector> {
    mat_vec_mod2(h, e)
}

/// Bipolar syndrome plus `N(0, sigma^2)` noise per check.
///
/// One standard normal is drawn per check even when `sigma = 0`, so runs that differ only in
/// `sigma` consume identical random streams.
pub fn observe_syndrome<T: Real, R: Rng + ?Sized>(
    s_bits: &BitVector,
    sigma: T,
    llr_sat: T,
    rng: &mut R,
) -> SyndromeObservation<T> {
    let raw = (0..s_bits.len())
        .map(|i| {
            let z: f64 = rng.sample(StandardNormal);
            Sign::from_bit(s_bits.get(i)).value::<T>() + sigma * T::of(z)
        })
        .collect();
    SyndromeObservation::from_raw(raw, sigma, llr_sat)
}

/// Appends `trial,check,raw,llr` rows for one observation.
pub fn write_observation_csv<T: Real, W: Write>(
    out: &mut W,
    trial: u64,
    obs: &SyndromeObservation<T>,
) -> std::io::Result<()> {
    for (i, (r, g)) in obs.raw.iter().zip(&obs.llr).enumerate() {
        writeln!(out, "{trial},{i},{r},{g}")?;
    }
    Ok(())
}

pub const OBSERVATION_CSV_HEADER: &str = "trial,check,raw,llr";
