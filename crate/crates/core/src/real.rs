use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used for messages and LLRs: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("representable constant")
    }

    /// `-1` for negative values, `+1` otherwise (including zero).
    #[inline]
    fn sgn(self) -> Self {
        if self < Self::zero() {
            -Self::one()
        } else {
            Self::one()
        }
    }

    #[inline]
    fn clamp_abs(self, bound: Self) -> Self {
        self.max(-bound).min(bound)
    }
}

impl Real for f32 {}
impl Real for f64 {}
