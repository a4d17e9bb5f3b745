//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `max(floor, k * epsilon)`: a tolerance that degrades gracefully for `f32`.
    fn tol(floor: f64, k: f64) -> Self {
        Self::of(floor).max(Self::epsilon() * Self::of(k))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Neumaier compensated summation with a fixed, caller-determined order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let s = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - s) + x;
        } else {
            self.carry += (x - s) + self.sum;
        }
        self.sum = s;
    }

    pub fn total(&self) -> T {
        self.sum + self.carry
    }
}

/// Compensated sum of complex values, component-wise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum<T> {
    re: CompensatedSum<T>,
    im: CompensatedSum<T>,
}

impl<T: Real> ComplexSum<T> {
    pub fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    pub fn add(&mut self, z: num_complex::Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> num_complex::Complex<T> {
        num_complex::Complex::new(self.re.total(), self.im.total())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.total() - 1e-15).abs() < 1e-28);
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(f64::tol(1e-14, 4.0), 1e-14);
        assert!(f32::tol(1e-14, 4.0) > 1e-7);
    }
}
