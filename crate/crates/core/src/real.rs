use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type used for rotation angles and unitary entries.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Tolerance below which an angle (mod 2π) counts as zero.
    fn angle_tol() -> Self;

    /// Default tolerance for phase-aligned unitary comparison.
    fn verify_tol() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Reduce into `(-π, π]`.
    fn normalize_angle(self) -> Self {
        let two_pi = Self::TAU();
        let mut a = self % two_pi;
        if a <= -Self::PI() {
            a = a + two_pi;
        } else if a > Self::PI() {
            a = a - two_pi;
        }
        a
    }

    /// True when the angle is a multiple of 2π within [`Real::angle_tol`].
    fn is_zero_angle(self) -> bool {
        self.normalize_angle().abs() < Self::angle_tol()
    }
}

impl Real for f64 {
    fn angle_tol() -> Self {
        1e-12
    }
    fn verify_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn angle_tol() -> Self {
        1e-6
    }
    fn verify_tol() -> Self {
        1e-4
    }
}
