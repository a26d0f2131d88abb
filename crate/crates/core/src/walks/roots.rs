use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::IntPoly;

/// Every returned bracket is at most this wide.
pub const ROOT_BRACKET_WIDTH: f64 = 1e-10;

/// A real root in `[lo, hi]`: either `lo == hi` is an exact root, or the
/// polynomial takes opposite signs at the two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    /// The input polynomial also has a repeated factor vanishing in the bracket.
    pub multiplicity_suspect: bool,
}

impl CertifiedRoot {
    pub fn value(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value(),
            "lo": self.lo_f64(),
            "hi": self.hi_f64(),
            "lo_exact": self.lo.to_string(),
            "hi_exact": self.hi.to_string(),
            "width": self.width(),
            "multiplicity_suspect": self.multiplicity_suspect,
        })
    }
}

/// Polynomial over the rationals, ascending, trimmed.
#[derive(Debug, Clone, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn from_int(p: &IntPoly) -> Self {
        Self::trimmed(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn trimmed(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    fn derivative(&self) -> Self {
        Self::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let Some(top) = self.degree().filter(|&t| t >= dd) else {
            return (Self(Vec::new()), self.clone());
        };
        let mut quot = vec![BigRational::zero(); top - dd + 1];
        for k in (0..=top - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::trimmed(quot), Self::trimmed(rem))
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(l) => Self(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(Self(r.0.into_iter().map(|c| -c).collect()));
        }
        chain.pop();
        chain
    }
}

fn sign_changes(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in `(a, b]`; needs `a` not to be a root.
fn count_roots(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(chain, a) - sign_changes(chain, b)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// A point strictly inside `(a, b)` where `p` does not vanish.
fn split_point(p: &QPoly, a: &BigRational, b: &BigRational) -> BigRational {
    let width = b - a;
    for den in 2u32.. {
        for num in 1..den {
            let x = a + &width * BigRational::new(num.into(), den.into());
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
    }
    unreachable!()
}

fn narrow_enough(a: &BigRational, b: &BigRational) -> bool {
    (b - a) * BigRational::from_integer(BigInt::from(10_000_000_000u64)) <= BigRational::one()
}

/// Shrinks `(a, b]`, known to hold exactly one root of the squarefree `p`.
fn refine(p: &QPoly, mut a: BigRational, mut b: BigRational) -> (BigRational, BigRational) {
    let sa = p.sign_at(&a);
    if p.sign_at(&b) == 0 {
        return (b.clone(), b);
    }
    while !narrow_enough(&a, &b) {
        let m = (&a + &b) * half();
        match p.sign_at(&m) {
            0 => return (m.clone(), m),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    (a, b)
}

fn isolate(
    p: &QPoly,
    chain: &[QPoly],
    a: BigRational,
    b: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    match count_roots(chain, &a, &b) {
        0 => {}
        1 => out.push(refine(p, a, b)),
        _ => {
            let m = split_point(p, &a, &b);
            isolate(p, chain, a, m.clone(), out);
            isolate(p, chain, m, b, out);
        }
    }
}

/// Distinct real roots of `p` in `(0, 1]`, in increasing order, each in a
/// bracket of width at most [`ROOT_BRACKET_WIDTH`].
///
/// Isolation runs on the squarefree part with Sturm sequences and exact
/// rational arithmetic, so no root is missed or counted twice. A root of a
/// repeated factor of `p` is flagged as `multiplicity_suspect`.
pub fn positive_roots_in_unit_interval(p: &IntPoly) -> Vec<CertifiedRoot> {
    let (_, p) = p.strip_variable_power();
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let q = QPoly::from_int(&p);
    let g = QPoly::gcd(&q, &q.derivative());
    let squarefree = q.div_rem(&g).0;
    let chain = squarefree.sturm_chain();
    let mut brackets = Vec::new();
    isolate(&squarefree, &chain, BigRational::zero(), BigRational::one(), &mut brackets);

    let repeated = g.degree().unwrap_or(0) > 0;
    let g_chain = if repeated { g.sturm_chain() } else { Vec::new() };
    brackets
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity_suspect = repeated
                && (g.sign_at(&lo) == 0 || (lo != hi && count_roots(&g_chain, &lo, &hi) > 0));
            CertifiedRoot {
                lo,
                hi,
                multiplicity_suspect,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(p: &[i64]) -> Vec<f64> {
        positive_roots_in_unit_interval(&IntPoly::from_i64s(p))
            .iter()
            .map(CertifiedRoot::value)
            .collect()
    }

    #[test]
    fn linear() {
        assert_eq!(values(&[-1, 2]), [0.5]);
        assert_eq!(values(&[-1, 1]), [1.0]);
        assert!(values(&[1, 1]).is_empty());
        assert!(values(&[0, 0, 3]).is_empty());
    }

    #[test]
    fn brackets_are_certified() {
        // (z^2 + 5z - 3)(5z - 2)(z^2 + z - 1)
        let p = IntPoly::from_i64s(&[-3, 5, 1])
            .mul(&IntPoly::from_i64s(&[-2, 5]))
            .mul(&IntPoly::from_i64s(&[-1, 1, 1]));
        let roots = positive_roots_in_unit_interval(&p);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let want = [golden, 0.4, (-5.0 + 37f64.sqrt()) / 2.0];
        let mut want = want.to_vec();
        want.sort_by(f64::total_cmp);
        assert_eq!(roots.len(), 3);
        for (r, w) in roots.iter().zip(&want) {
            assert!(r.width() <= ROOT_BRACKET_WIDTH);
            assert!(r.lo_f64() <= *w + 1e-15 && *w <= r.hi_f64() + 1e-15);
            let s = |x: &BigRational| QPoly::from_int(&p).sign_at(x);
            assert!(r.lo == r.hi || s(&r.lo) * s(&r.hi) < 0);
            assert!(!r.multiplicity_suspect);
        }
    }

    #[test]
    fn repeated_roots_are_flagged() {
        // (4z - 1)^2 (z - 2)
        let p = IntPoly::from_i64s(&[-1, 4])
            .mul(&IntPoly::from_i64s(&[-1, 4]))
            .mul(&IntPoly::from_i64s(&[-2, 1]));
        let roots = positive_roots_in_unit_interval(&p);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].multiplicity_suspect);
        assert_eq!(roots[0].value(), 0.25);
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000z - 500)(1000z - 501)
        let p = IntPoly::from_i64s(&[-500, 1000]).mul(&IntPoly::from_i64s(&[-501, 1000]));
        let v = values(p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>().as_slice());
        assert_eq!(v.len(), 2);
        assert!((v[0] - 0.5).abs() < 1e-10 && (v[1] - 0.501).abs() < 1e-10);
    }
}
