use num_complex::Complex;

use crate::Real;

/// Rewrites `Rx(a3)·Rz(a2)·Rx(a1)` (so `a1` acts first) as
/// `Rz(b3)·Rx(b2)·Rz(b1)` up to global phase, returning `(b1, b2, b3)`.
///
/// With
///
/// ```text
/// z1 = cos(a2/2)·cos((a1+a3)/2) + i·sin(a2/2)·cos((a1-a3)/2)
/// z2 = cos(a2/2)·sin((a1+a3)/2) - i·sin(a2/2)·sin((a1-a3)/2)
/// ```
///
/// the angles are `b1 = arg z1 + arg z2`, `b3 = arg z1 - arg z2` and
/// `b2 = 2·arg(|z1| + i|z2|)`. The half-angle rotation convention makes the
/// middle angle twice the arctangent. `arg 0` is taken as 0, which keeps the
/// degenerate cases `z1 = 0` (`b2 = π`) and `z2 = 0` (`b2 = 0`) total.
/// Outputs are normalised to `(-π, π]`.
pub fn euler_xzx_to_zxz<T: Real>(a1: T, a2: T, a3: T) -> (T, T, T) {
    let two = T::lit(2.0);
    let (half2, sum, diff) = (a2 / two, (a1 + a3) / two, (a1 - a3) / two);
    let z1 = Complex::new(half2.cos() * sum.cos(), half2.sin() * diff.cos());
    let z2 = Complex::new(half2.cos() * sum.sin(), -(half2.sin() * diff.sin()));
    let arg = |z: Complex<T>| {
        if z.norm() == T::zero() {
            T::zero()
        } else {
            z.arg()
        }
    };
    let (p1, p2) = (arg(z1), arg(z2));
    let b1 = p1 + p2;
    let b2 = two * z2.norm().atan2(z1.norm());
    let b3 = p1 - p2;
    (b1.normalize_angle(), b2.normalize_angle(), b3.normalize_angle())
}

/// Colour-swapped dual: `Rz(a3)·Rx(a2)·Rz(a1)` as `Rx(b3)·Rz(b2)·Rx(b1)`.
///
/// Conjugating both sides by a Hadamard swaps the bases, so the same angles work.
pub fn euler_zxz_to_xzx<T: Real>(a1: T, a2: T, a3: T) -> (T, T, T) {
    euler_xzx_to_zxz(a1, a2, a3)
}
