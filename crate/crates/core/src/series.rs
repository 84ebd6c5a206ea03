//! Poincaré polynomials and rational Poincaré series `p(t) / (1 - t²)^k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Polynomial in `t` with signed integer coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for Polynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<i64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c · t^n`.
    pub fn monomial(n: usize, c: i64) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Polynomial::new(v)
    }

    /// `1 - t²`.
    pub fn one_minus_t2() -> Self {
        Polynomial::new(vec![1, 0, -1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c < 0)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Shift by `t^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.coeffs);
        Polynomial::new(v)
    }

    pub fn scale(&self, c: i64) -> Self {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Coefficients `0..=n`, padded with zeros.
    pub fn window(&self, n: usize) -> Vec<i64> {
        (0..=n).map(|i| self.coeff(i)).collect()
    }

    /// Exact division by `1 - t²`, if it divides.
    pub fn div_one_minus_t2(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        // p = (1 - t²) q  ⇔  q_n = p_n + q_{n-2}
        let d = self.degree();
        if d < 2 {
            return None;
        }
        let mut q = vec![0i64; d - 1];
        for n in 0..d - 1 {
            q[n] = self.coeff(n) + if n >= 2 { q[n - 2] } else { 0 };
        }
        let q = Polynomial::new(q);
        (&q * &Polynomial::one_minus_t2() == *self).then_some(q)
    }

    /// Division by `1 + t`: quotient and the remainder `p(-1)`.
    pub fn div_one_plus_t(&self) -> (Self, i64) {
        if self.is_zero() {
            return (Polynomial::zero(), 0);
        }
        let d = self.degree();
        let mut q = vec![0i64; d];
        let mut carry = 0;
        for n in 0..d {
            carry = self.coeff(n) - carry;
            q[n] = carry;
        }
        let remainder = self.coeff(d) - carry;
        (Polynomial::new(q), remainder)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (n, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".into(),
                (1, m) => format!("{m}t"),
                (_, 1) => format!("t^{n}"),
                (_, m) => format!("{m}t^{n}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

/// A polynomial known to have non-negative coefficients, such as the
/// generating function of cohomology dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PoincarePolynomial(Polynomial);

impl TryFrom<Vec<i64>> for PoincarePolynomial {
    type Error = AlgebraError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        PoincarePolynomial::new(Polynomial::new(v))
    }
}

impl From<PoincarePolynomial> for Vec<i64> {
    fn from(p: PoincarePolynomial) -> Self {
        p.0.coeffs
    }
}

impl PoincarePolynomial {
    pub fn new(p: Polynomial) -> Result<Self> {
        match p.first_negative() {
            Some(n) => Err(AlgebraError::Invalid(format!("negative coefficient in degree {n} of a dimension series"))),
            None => Ok(PoincarePolynomial(p)),
        }
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        PoincarePolynomial(Polynomial::new(dims.iter().map(|&d| d as i64).collect()))
    }

    pub fn one() -> Self {
        PoincarePolynomial(Polynomial::one())
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.0
    }

    pub fn total(&self) -> i64 {
        self.0.eval(1)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `t = -1` evaluation, the Euler characteristic of a Poincaré polynomial.
pub fn euler_at_minus_one(p: &Polynomial) -> i64 {
    p.eval(-1)
}

/// `numerator / (1 - t²)^den_exp`, kept in canonical form: the numerator is
/// not divisible by `1 - t²` unless `den_exp` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Polynomial,
    pub den_exp: u32,
}

impl RationalSeries {
    pub fn new(numerator: Polynomial, den_exp: u32) -> Self {
        RationalSeries { numerator, den_exp }.canonical()
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalSeries { numerator: p, den_exp: 0 }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    pub fn canonical(mut self) -> Self {
        if self.numerator.is_zero() {
            self.den_exp = 0;
            return self;
        }
        while self.den_exp > 0 {
            match self.numerator.div_one_minus_t2() {
                Some(q) => {
                    self.numerator = q;
                    self.den_exp -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.den_exp == 0
    }

    /// Numerator over the larger denominator `(1 - t²)^k`, `k >= den_exp`.
    pub fn numerator_at(&self, k: u32) -> Polynomial {
        assert!(k >= self.den_exp);
        &self.numerator * &Polynomial::one_minus_t2().pow(k - self.den_exp)
    }

    /// Coefficients of the power series through degree `n`.
    pub fn expand(&self, n: usize) -> Vec<i64> {
        // 1/(1 - t²)^k = Σ_j C(j + k - 1, k - 1) t^{2j}
        let k = self.den_exp as i64;
        let inv: Vec<i64> = (0..=n)
            .map(|m| {
                if k == 0 {
                    i64::from(m == 0)
                } else if m % 2 == 1 {
                    0
                } else {
                    binomial(m as i64 / 2 + k - 1, k - 1)
                }
            })
            .collect();
        (0..=n)
            .map(|m| (0..=m).map(|i| self.numerator.coeff(i) * inv[m - i]).sum())
            .collect()
    }

    /// Multiply by `(1 - t²)^k` and return the resulting series.
    pub fn times_one_minus_t2_pow(&self, k: u32) -> RationalSeries {
        if k >= self.den_exp {
            RationalSeries::polynomial(&self.numerator * &Polynomial::one_minus_t2().pow(k - self.den_exp))
        } else {
            RationalSeries::new(self.numerator.clone(), self.den_exp - k)
        }
    }

    pub fn scale(&self, c: i64) -> RationalSeries {
        RationalSeries::new(self.numerator.scale(c), self.den_exp)
    }

    pub fn shift(&self, n: usize) -> RationalSeries {
        RationalSeries::new(self.numerator.shift(n), self.den_exp)
    }

    /// Value of the numerator at `t = 1` after clearing to `(1 - t²)^k`.
    pub fn leading_multiplicity(&self, k: u32) -> Option<i64> {
        (k >= self.den_exp).then(|| self.numerator_at(k).eval(1))
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_exp {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (1 - t^2)", self.numerator),
            k => write!(f, "({}) / (1 - t^2)^{k}", self.numerator),
        }
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let k = self.den_exp.max(rhs.den_exp);
        RationalSeries::new(&self.numerator_at(k) + &rhs.numerator_at(k), k)
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self + &rhs.scale(-1)
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        RationalSeries::new(&self.numerator * &rhs.numerator, self.den_exp + rhs.den_exp)
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Outcome of dividing a Morse–Poincaré difference by `1 + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MorseGap {
    /// `M - P = (1 + t) Q` with `Q` non-negative; `Q = 0` means perfect.
    Satisfied { quotient: RationalSeries },
    /// The inequalities fail first in `degree`.
    Violated { degree: usize, reason: String },
}

impl MorseGap {
    pub fn is_perfect(&self) -> bool {
        matches!(self, MorseGap::Satisfied { quotient } if quotient.numerator.is_zero())
    }
}

/// Divide `morse - poincare` by `1 + t` and require a non-negative quotient.
///
/// For a polynomial difference the division must be exact. For a series
/// with denominator the quotient is again a series, checked through degree
/// `window`.
pub fn morse_gap(morse: &RationalSeries, poincare: &RationalSeries, window: usize) -> MorseGap {
    let diff = morse - poincare;
    let expansion = diff.expand(window);
    if let Some(n) = expansion.iter().position(|&c| c < 0) {
        return MorseGap::Violated { degree: n, reason: "Morse series is smaller than the Poincaré series".into() };
    }
    if diff.is_polynomial() {
        let d = &diff.numerator;
        let deg = d.degree();
        let mut prev = 0i64;
        let mut q = Vec::new();
        for n in 0..=deg.max(1) {
            let qn = d.coeff(n) - prev;
            if qn < 0 {
                return MorseGap::Violated { degree: n, reason: "quotient by (1+t) has a negative coefficient".into() };
            }
            if n >= deg && qn != 0 {
                return MorseGap::Violated { degree: n, reason: "difference is not divisible by (1+t)".into() };
            }
            q.push(qn);
            prev = qn;
        }
        return MorseGap::Satisfied { quotient: RationalSeries::polynomial(Polynomial::new(q)) };
    }
    // D / (1 + t) = D (1 - t) / (1 - t²)
    let quotient = RationalSeries::new(
        &diff.numerator * &Polynomial::new(vec![1, -1]),
        diff.den_exp + 1,
    );
    match quotient.expand(window).iter().position(|&c| c < 0) {
        Some(n) => MorseGap::Violated { degree: n, reason: "quotient by (1+t) has a negative coefficient".into() },
        None => MorseGap::Satisfied { quotient },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Polynomial {
        Polynomial::new(v.to_vec())
    }

    #[test]
    fn sum_of_series_cancels_denominator() {
        let a = RationalSeries::new(p(&[1, 0, 1]), 1);
        let b = RationalSeries::new(p(&[1, 0, -1]), 1);
        assert_eq!(&a + &b, RationalSeries::new(p(&[2]), 1));
    }

    #[test]
    fn shifted_geometric_series() {
        let s = &RationalSeries::polynomial(p(&[0, 0, 1])) * &RationalSeries::new(p(&[1]), 1);
        assert_eq!(s.expand(6), vec![0, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn cubic_over_one_minus_t2() {
        // oracle: Cauchy product with 1, 0, 1, 0, ...
        let num = [1i64, 1, 1, 1];
        let oracle: Vec<i64> = (0..8usize)
            .map(|n| (0..=n.min(3)).filter(|i| (n - i) % 2 == 0).map(|i| num[i]).sum())
            .collect();
        assert_eq!(oracle, vec![1, 1, 2, 2, 2, 2, 2, 2]);
        let s = RationalSeries::new(p(&[1, 1, 1, 1]), 1);
        assert_eq!(s.expand(7), oracle);
    }

    #[test]
    fn canonical_form_divides_out() {
        let s = RationalSeries::new(&p(&[1, 1]) * &Polynomial::one_minus_t2(), 2);
        assert_eq!(s, RationalSeries { numerator: p(&[1, 1]), den_exp: 1 });
        assert_eq!(s.clone().canonical(), s);
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_at_minus_one(&p(&[1, 0, 1])), 2);
        assert_eq!(euler_at_minus_one(&p(&[1, 0, 2, 0, 1])), 4);
        assert_eq!(euler_at_minus_one(&p(&[1, 1])), 0);
    }

    #[test]
    fn gap_zero_is_perfect() {
        let m = RationalSeries::polynomial(p(&[1, 0, 1]));
        assert!(morse_gap(&m, &m, 10).is_perfect());
    }

    #[test]
    fn gap_one_plus_t_times_t2() {
        let pp = RationalSeries::polynomial(p(&[1]));
        let m = RationalSeries::polynomial(p(&[1, 0, 1, 1]));
        assert_eq!(
            morse_gap(&m, &pp, 10),
            MorseGap::Satisfied { quotient: RationalSeries::polynomial(p(&[0, 0, 1])) }
        );
    }

    #[test]
    fn gap_t_is_violated_in_degree_one() {
        let pp = RationalSeries::polynomial(p(&[1]));
        let m = RationalSeries::polynomial(p(&[1, 1]));
        assert!(matches!(morse_gap(&m, &pp, 10), MorseGap::Violated { degree: 1, .. }));
    }

    #[test]
    fn gap_t2_is_violated_in_degree_two() {
        let pp = RationalSeries::polynomial(p(&[1, 0, 1]));
        let m = RationalSeries::polynomial(p(&[1, 0, 2]));
        assert!(matches!(morse_gap(&m, &pp, 10), MorseGap::Violated { degree: 2, .. }));
    }

    #[test]
    fn negative_difference_is_violated() {
        let pp = RationalSeries::polynomial(p(&[1, 0, 1]));
        let m = RationalSeries::polynomial(p(&[1]));
        assert!(matches!(morse_gap(&m, &pp, 10), MorseGap::Violated { degree: 2, .. }));
    }

    #[test]
    fn division_helpers() {
        assert_eq!(p(&[0, 1, 1]).div_one_plus_t(), (p(&[0, 1]), 0));
        assert_eq!(p(&[0, 1]).div_one_plus_t(), (p(&[0]), 1));
        assert_eq!(p(&[1, 0, -1]).div_one_minus_t2(), Some(p(&[1])));
        assert_eq!(p(&[1, 0, 1]).div_one_minus_t2(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 2, -1]).to_string(), "1 + 2t^2 - t^3");
        assert_eq!(RationalSeries::new(p(&[1, 0, 1]), 1).to_string(), "(1 + t^2) / (1 - t^2)");
    }

    #[test]
    fn poincare_polynomial_rejects_negative() {
        assert!(PoincarePolynomial::try_from(vec![1, -1]).is_err());
        assert_eq!(PoincarePolynomial::from_dims(&[1, 0, 1]).total(), 2);
    }
}
