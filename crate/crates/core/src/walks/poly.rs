use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Integer polynomial in one variable, coefficients by ascending degree with
/// no trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `self / divisor` when the division is exact over the integers.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Degenerate("division by the zero polynomial".into()))?;
        let lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree() else {
            return Ok(Self::zero());
        };
        if top < dd {
            return Err(Error::Degenerate("inexact polynomial division".into()));
        }
        let mut quot = vec![BigInt::zero(); top - dd + 1];
        for k in (0..=top - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Degenerate("inexact polynomial division".into()));
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Degenerate("inexact polynomial division".into()));
        }
        Ok(Self::new(quot))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Removes the largest power of the variable dividing `self`; returns
    /// that power and the quotient.
    pub fn strip_variable_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return Self::zero();
        }
        let g = if self.leading().is_some_and(|l| l.is_negative()) {
            -g
        } else {
            g
        };
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Whether `self = (p/q) * other` for some nonzero rational `p/q`.
    pub fn is_scalar_multiple_of(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() || self.degree() != other.degree() {
            return false;
        }
        let (a, b) = (self.leading().unwrap(), other.leading().unwrap());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(x, y)| x * b == y * a)
    }

    /// Degree-ascending JSON array; coefficients beyond `i64` become strings.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(bigint_json).collect())
    }

    /// Inverse of [`IntPoly::to_json`]: integers or decimal strings.
    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value.as_array().ok_or_else(|| poly_parse_error("expected an array"))?;
        items
            .iter()
            .map(|v| match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| poly_parse_error(&format!("{n} is not an integer"))),
                Value::String(t) => t
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| poly_parse_error(&format!("{t:?} is not an integer"))),
                other => Err(poly_parse_error(&format!("unexpected {other}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

fn poly_parse_error(detail: &str) -> Error {
    Error::Parse {
        what: "polynomial",
        detail: detail.to_string(),
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    c.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::String(c.to_string()))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.coeffs, "z")
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial in `z` and `t`, stored as coefficients (polynomials in `z`)
/// of ascending powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    by_t: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut by_t: Vec<IntPoly>) -> Self {
        while by_t.last().is_some_and(IntPoly::is_zero) {
            by_t.pop();
        }
        Self { by_t }
    }

    /// From `(coefficient, z power, t power)` terms.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let top = terms.iter().map(|&(_, _, t)| t + 1).max().unwrap_or(0);
        let mut by_t = vec![IntPoly::zero(); top];
        for &(c, zk, tk) in terms {
            by_t[tk] = by_t[tk].add(&IntPoly::monomial(BigInt::from(c), zk));
        }
        Self::new(by_t)
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.by_t.len().checked_sub(1)
    }

    pub fn coeffs_t(&self) -> &[IntPoly] {
        &self.by_t
    }

    pub fn leading_t(&self) -> Option<&IntPoly> {
        self.by_t.last()
    }

    pub fn derivative_t(&self) -> Self {
        Self::new(
            self.by_t
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigInt::from(k)))
                .collect(),
        )
    }

    /// Outer array over powers of `t`, inner arrays over powers of `z`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.by_t.iter().map(IntPoly::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let items = value.as_array().ok_or_else(|| poly_parse_error("expected an array of arrays"))?;
        items
            .iter()
            .map(IntPoly::from_json)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.by_t.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let big = IntPoly::new(vec![BigInt::from(3), BigInt::from(i64::MAX) * 4, BigInt::from(-1)]);
        assert_eq!(IntPoly::from_json(&big.to_json()).unwrap(), big);
        let p = BiPoly::from_terms(&[(1, 0, 2), (-1, 1, 0), (5, 3, 1)]);
        assert_eq!(BiPoly::from_json(&p.to_json()).unwrap(), p);
        assert!(IntPoly::from_json(&serde_json::json!([1, 0.5])).is_err());
        assert!(BiPoly::from_json(&serde_json::json!([1])).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64s(&[1, 1]);
        let b = IntPoly::from_i64s(&[-1, 1]);
        assert_eq!(a.mul(&b), IntPoly::from_i64s(&[-1, 0, 1]));
        assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        assert!(IntPoly::from_i64s(&[1, 0, 1]).exact_div(&b).is_err());
        assert!(IntPoly::from_i64s(&[1, 2]).exact_div(&IntPoly::from_i64s(&[2])).is_err());
        assert_eq!(IntPoly::from_i64s(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::from_i64s(&[5, 3, 2]).derivative(), IntPoly::from_i64s(&[3, 4]));
    }

    #[test]
    fn normalisation() {
        let p = IntPoly::from_i64s(&[0, 0, 6, -4]);
        let (k, q) = p.strip_variable_power();
        assert_eq!(k, 2);
        assert_eq!(q.primitive(), IntPoly::from_i64s(&[-3, 2]));
        assert!(q.is_scalar_multiple_of(&IntPoly::from_i64s(&[-3, 2])));
        assert!(!q.is_scalar_multiple_of(&IntPoly::from_i64s(&[3, 2])));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64s(&[-4, -19, 0, 1]).to_string(), "-4 - 19z + z^3");
        let p = BiPoly::from_terms(&[(1, 1, 4), (1, 0, 2), (-1, 0, 1), (-1, 1, 1), (1, 1, 0)]);
        assert_eq!(p.to_string(), "(z) + (-1 - z)t + (1)t^2 + (z)t^4");
        assert_eq!(p.derivative_t().degree_t(), Some(3));
    }
}
