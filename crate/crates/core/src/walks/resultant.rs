use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{BiPoly, IntPoly};
use crate::error::{Error, Result};

/// Discriminant of `P(z, t)` with respect to `t`, in three normalizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminant {
    /// `Res_t(P, dP/dt)`.
    pub resultant: IntPoly,
    /// `(-1)^(n(n-1)/2) * resultant / lc_t(P)` for `n = deg_t P`.
    pub raw: IntPoly,
    /// Primitive part of `raw` with a positive leading coefficient.
    pub normalized: IntPoly,
    /// `normalized` with every factor `z` removed. These factors only
    /// contribute the root `z = 0`.
    pub z_power: usize,
    pub z_free: IntPoly,
}

impl Discriminant {
    pub fn to_json(&self) -> Value {
        json!({
            "resultant": self.resultant.to_json(),
            "raw": self.raw.to_json(),
            "normalized": self.normalized.to_json(),
            "z_power": self.z_power,
            "z_free": self.z_free.to_json(),
        })
    }
}

/// Determinant by fraction-free Gaussian elimination over `Z[z]`.
fn bareiss_determinant(mut m: Vec<Vec<IntPoly>>) -> Result<IntPoly> {
    let n = m.len();
    let mut sign = false;
    let mut prev = IntPoly::constant(BigInt::from(1));
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(IntPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

fn sylvester(p: &BiPoly, q: &BiPoly) -> Vec<Vec<IntPoly>> {
    let dp = p.degree_t().unwrap_or(0);
    let dq = q.degree_t().unwrap_or(0);
    let size = dp + dq;
    let mut rows = Vec::with_capacity(size);
    let mut push_shifts = |poly: &BiPoly, count: usize| {
        let deg = poly.degree_t().unwrap_or(0);
        for shift in 0..count {
            let mut row = vec![IntPoly::zero(); size];
            // Columns run from t^(size-1) down to t^0.
            for k in 0..=deg {
                row[shift + deg - k] = poly.coeffs_t()[k].clone();
            }
            rows.push(row);
        }
    };
    push_shifts(p, dq);
    push_shifts(q, dp);
    rows
}

/// `Res_t(p, q)` as a Sylvester determinant.
pub fn resultant_wrt_t(p: &BiPoly, q: &BiPoly) -> Result<IntPoly> {
    match (p.degree_t(), q.degree_t()) {
        (Some(a), Some(b)) if a + b > 0 => bareiss_determinant(sylvester(p, q)),
        (Some(_), Some(_)) => Ok(IntPoly::constant(BigInt::from(1))),
        _ => Ok(IntPoly::zero()),
    }
}

pub fn discriminant_wrt_t(p: &BiPoly) -> Result<Discriminant> {
    let n = match p.degree_t() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Degenerate("polynomial is constant in t".into())),
    };
    let resultant = resultant_wrt_t(p, &p.derivative_t())?;
    let lead = p.leading_t().expect("nonconstant");
    let mut raw = resultant.exact_div(lead)?;
    if (n * (n - 1) / 2) % 2 == 1 {
        raw = raw.neg();
    }
    let normalized = raw.primitive();
    let (z_power, z_free) = normalized.strip_variable_power();
    Ok(Discriminant {
        resultant,
        raw,
        normalized,
        z_power,
        z_free,
    })
}
