use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BiPoly, StepSystem};
use crate::error::{Error, Result};

/// Truncated power series in `z`: coefficients of `z^0..=z^order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `1 / (1 - self)` for a series without constant term.
    fn geometric(&self) -> Self {
        debug_assert!(self.coeffs[0].is_zero());
        let order = self.order();
        let mut out = vec![BigInt::zero(); order + 1];
        out[0] = BigInt::one();
        for k in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = acc;
        }
        Self { coeffs: out }
    }

    fn pow(&self, e: usize) -> Self {
        let mut out = Self::from_coeffs(vec![BigInt::one()], self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn shift_by_z(&self) -> Self {
        let mut coeffs = vec![BigInt::zero()];
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    fn scale(&self, c: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{c}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{c}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// `Phi(s) = sum over allowed d of weight(d) * s^(1 - d)`.
fn step_generating_function(sys: StepSystem, s: &PowerSeries) -> PowerSeries {
    let order = s.order();
    let mut phi = PowerSeries::from_coeffs(vec![BigInt::one()], order);
    for &(d, w) in sys.isolated_steps() {
        phi = phi.add(&s.pow((1 - d) as usize).scale(w));
    }
    let (top, w) = sys.tail();
    let tail = s.pow((1 - top) as usize).mul(&s.geometric()).scale(w);
    phi.add(&tail)
}

/// Solves `t = z * Phi(t)` by fixed-point iteration; iteration `k` fixes the
/// coefficient of `z^k`, and it only needs that many terms.
pub fn series_from_equation(sys: StepSystem, order: usize) -> PowerSeries {
    let mut t = PowerSeries::zero(0);
    for k in 1..=order {
        let lifted = t.truncate(k);
        t = step_generating_function(sys, &lifted).shift_by_z();
    }
    t.truncate(order)
}

/// Whether `P(z, s(z))` vanishes through `z^order`.
pub fn check_defining_polynomial(p: &BiPoly, s: &PowerSeries, order: usize) -> Result<bool> {
    if order > s.order() {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds the series order {}",
            s.order()
        )));
    }
    let s = s.truncate(order);
    let mut total = PowerSeries::zero(order);
    let mut power = PowerSeries::from_coeffs(vec![BigInt::one()], order);
    for (k, coeff) in p.coeffs_t().iter().enumerate() {
        if k > 0 {
            power = power.mul(&s);
        }
        let c = PowerSeries::from_coeffs(
            coeff.coeffs().iter().take(order + 1).cloned().collect(),
            order,
        );
        total = total.add(&c.mul(&power));
    }
    Ok(total.coeffs.iter().all(Zero::is_zero))
}
