use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{render_terms, AlgebraError};

/// Sparse Laurent polynomial in one variable with arbitrary-precision
/// integer coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurent1 {
    terms: Vec<(i64, BigInt)>,
}

impl IntLaurent1 {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// combining repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: HashMap<i64, BigInt> = HashMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<i64, BigInt>) -> Self {
        let mut terms: Vec<(i64, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(e, _)| *e);
        Self { terms }
    }

    /// Caller guarantees sorted, unique, nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(i64, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// `Some((c, e))` when the polynomial is the single term `c * x^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Lowest and highest exponent.
    pub fn degree_bounds(&self) -> Result<(i64, i64), AlgebraError> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(AlgebraError::ZeroPolynomial),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul_term(&self, c: &BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (e + exp, x * c)).collect() }
    }

    /// Substitutes `x -> x^k` for `k > 0`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        assert!(k > 0, "exponent scale must be positive");
        Self { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by `c`; panics if inexact.
    pub(crate) fn div_coefficients_exact(&self, c: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact coefficient division");
                    (*e, q)
                })
                .collect(),
        }
    }

    /// Value at `x = 1` (`minus = false`) or `x = -1` (`minus = true`).
    pub fn eval_unit(&self, minus: bool) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if minus && e.rem_euclid(2) == 1 { -c } else { c.clone() })
            .sum()
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((c, e)) = divisor.as_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (x, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return Err(AlgebraError::NotDivisible);
                }
                terms.push((x - e, q));
            }
            return Ok(Self { terms });
        }
        let (dlo, dhi) = divisor.degree_bounds()?;
        let (alo, ahi) = self.degree_bounds()?;
        if ahi - alo < dhi - dlo {
            return Err(AlgebraError::NotDivisible);
        }
        let lead = &divisor.terms.last().unwrap().1;
        // Long division from the top; the quotient spans [alo - dlo, ahi - dhi].
        let qlo = alo - dlo;
        let mut rem: std::collections::BTreeMap<i64, BigInt> =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        let mut quotient = Vec::new();
        while let Some((&top, _)) = rem.iter().next_back() {
            let qexp = top - dhi;
            if qexp < qlo {
                return Err(AlgebraError::NotDivisible);
            }
            let coeff = rem.remove(&top).unwrap();
            let (q, r) = coeff.div_rem(lead);
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            for (de, dc) in &divisor.terms[..divisor.terms.len() - 1] {
                let slot = rem.entry(de + qexp).or_default();
                *slot -= &q * dc;
                if slot.is_zero() {
                    rem.remove(&(de + qexp));
                }
            }
            quotient.push((qexp, q));
        }
        quotient.reverse();
        Ok(Self { terms: quotient })
    }

    /// Canonical text with variable name `var`, terms by descending exponent.
    pub fn to_text(&self, var: &str) -> String {
        render_terms(self.terms.iter().rev().map(|(e, c)| (c, vec![(var, *e)])))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = self.as_monomial() {
            return other.mul_term(c, e);
        }
        if let Some((c, e)) = other.as_monomial() {
            return self.mul_term(c, e);
        }
        mul_dense(self, other).unwrap_or_else(|| mul_sparse(self, other))
    }
}

fn exponent_stride(p: &IntLaurent1) -> i64 {
    let base = p.terms[0].0;
    p.terms.iter().fold(0i64, |g, (e, _)| g.gcd(&(e - base)))
}

fn max_abs_i64(p: &IntLaurent1) -> Option<u64> {
    p.terms.iter().try_fold(0u64, |m, (_, c)| c.to_i64().map(|v| m.max(v.unsigned_abs())))
}

/// Dense convolution over a common exponent stride with `i128`
/// accumulation; `None` when overflow cannot be ruled out or the dense
/// buffer would be much larger than the sparse product.
fn mul_dense(a: &IntLaurent1, b: &IntLaurent1) -> Option<IntLaurent1> {
    let ma = max_abs_i64(a)? as u128;
    let mb = max_abs_i64(b)? as u128;
    let shorter = a.len().min(b.len()) as u128;
    if ma.checked_mul(mb)?.checked_mul(shorter)? >= (1u128 << 126) {
        return None;
    }
    let stride = exponent_stride(a).gcd(&exponent_stride(b)).max(1);
    let (alo, ahi) = (a.terms[0].0, a.terms.last().unwrap().0);
    let (blo, bhi) = (b.terms[0].0, b.terms.last().unwrap().0);
    let len = ((ahi - alo) / stride + (bhi - blo) / stride + 1) as usize;
    if len > 8 * a.len() * b.len() + 64 || len > (1 << 26) {
        return None;
    }
    let bv: Vec<(usize, i128)> =
        b.terms.iter().map(|(e, c)| (((e - blo) / stride) as usize, c.to_i64().unwrap() as i128)).collect();
    let mut acc = vec![0i128; len];
    for (ea, ca) in &a.terms {
        let off = ((ea - alo) / stride) as usize;
        let ca = ca.to_i64().unwrap() as i128;
        for (ob, cb) in &bv {
            acc[off + ob] += ca * cb;
        }
    }
    let base = alo + blo;
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(k, c)| (base + k as i64 * stride, BigInt::from(c)))
        .collect();
    Some(IntLaurent1 { terms })
}

fn mul_sparse(a: &IntLaurent1, b: &IntLaurent1) -> IntLaurent1 {
    let mut acc: HashMap<i64, BigInt> = HashMap::with_capacity(a.len() * b.len().min(64));
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            *acc.entry(ea + eb).or_default() += ca * cb;
        }
    }
    IntLaurent1::from_map(acc)
}

impl fmt::Display for IntLaurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Debug for IntLaurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurent1({})", self.to_text("t"))
    }
}

impl Neg for &IntLaurent1 {
    type Output = IntLaurent1;
    fn neg(self) -> IntLaurent1 {
        IntLaurent1 { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for IntLaurent1 {
    type Output = IntLaurent1;
    fn neg(mut self) -> IntLaurent1 {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add<&IntLaurent1> for &IntLaurent1 {
    type Output = IntLaurent1;
    fn add(self, rhs: &IntLaurent1) -> IntLaurent1 {
        self.add_impl(rhs, false)
    }
}

impl Sub<&IntLaurent1> for &IntLaurent1 {
    type Output = IntLaurent1;
    fn sub(self, rhs: &IntLaurent1) -> IntLaurent1 {
        self.add_impl(rhs, true)
    }
}

impl Mul<&IntLaurent1> for &IntLaurent1 {
    type Output = IntLaurent1;
    fn mul(self, rhs: &IntLaurent1) -> IntLaurent1 {
        self.mul_impl(rhs)
    }
}

impl Add for IntLaurent1 {
    type Output = IntLaurent1;
    fn add(self, rhs: IntLaurent1) -> IntLaurent1 {
        self.add_impl(&rhs, false)
    }
}

impl Sub for IntLaurent1 {
    type Output = IntLaurent1;
    fn sub(self, rhs: IntLaurent1) -> IntLaurent1 {
        self.add_impl(&rhs, true)
    }
}

impl Mul for IntLaurent1 {
    type Output = IntLaurent1;
    fn mul(self, rhs: IntLaurent1) -> IntLaurent1 {
        self.mul_impl(&rhs)
    }
}

impl AddAssign<&IntLaurent1> for IntLaurent1 {
    fn add_assign(&mut self, rhs: &IntLaurent1) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&IntLaurent1> for IntLaurent1 {
    fn sub_assign(&mut self, rhs: &IntLaurent1) {
        *self = self.add_impl(rhs, true);
    }
}

impl std::iter::Sum for IntLaurent1 {
    fn sum<I: Iterator<Item = IntLaurent1>>(iter: I) -> Self {
        let mut acc: HashMap<i64, BigInt> = HashMap::new();
        for p in iter {
            for (e, c) in p.terms {
                *acc.entry(e).or_default() += c;
            }
        }
        Self::from_map(acc)
    }
}

impl IntLaurent1 {
    /// Sign of the coefficient at the lowest exponent.
    pub(crate) fn leading_low_is_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> IntLaurent1 {
        IntLaurent1::from_terms(terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, 1), (-1, 1)]);
        let b = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn exact_division_examples() {
        let qint = p(&[(2, 1), (-2, -1)]);
        let a = p(&[(1, 1), (-1, -1)]);
        assert_eq!(qint.exact_div(&a).unwrap(), p(&[(1, 1), (-1, 1)]));
        let num = p(&[(12, 1), (-8, 1), (-4, -1), (0, -1)]);
        assert_eq!(num.exact_div(&qint).unwrap(), p(&[(10, 1), (6, 1), (2, 1), (-6, -1)]));
        let err = p(&[(1, 1), (0, 1)]).exact_div(&p(&[(1, 1), (0, -1)]));
        assert_eq!(err, Err(AlgebraError::NotDivisible));
        assert_eq!(a.exact_div(&IntLaurent1::zero()), Err(AlgebraError::DivByZero));
    }

    #[test]
    fn degree_bounds_examples() {
        assert_eq!(p(&[(2, 1), (-2, 1)]).degree_bounds(), Ok((-2, 2)));
        let jt = p(&[(-2, 1), (-6, 1), (-10, 1), (-18, -1)]);
        assert_eq!(jt.degree_bounds(), Ok((-18, -2)));
        assert_eq!(IntLaurent1::zero().degree_bounds(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn text_is_descending() {
        let jt = p(&[(-2, 1), (-6, 1), (-10, 1), (-18, -1)]);
        assert_eq!(jt.to_string(), "t^-2 + t^-6 + t^-10 - t^-18");
        assert_eq!(p(&[(0, -3), (4, 2)]).to_string(), "2*t^4 - 3");
        assert_eq!(IntLaurent1::zero().to_string(), "0");
        assert_eq!(p(&[(1, -1)]).to_string(), "-t");
    }

    #[test]
    fn dense_and_sparse_products_agree() {
        let a = p(&[(-8, 3), (0, -2), (12, 5), (40, 1)]);
        let b = p(&[(-4, 1), (4, -7), (100, 2)]);
        assert_eq!(mul_dense(&a, &b).unwrap(), mul_sparse(&a, &b));
        let big = IntLaurent1::monomial(BigInt::from(i64::MAX) * 4, 3) + p(&[(0, 1)]);
        assert!(mul_dense(&big, &a).is_none());
        assert_eq!(&big * &a, mul_sparse(&big, &a));
    }
}
