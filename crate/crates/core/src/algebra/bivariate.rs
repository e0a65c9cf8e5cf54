use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{render_terms, AlgebraError, IntLaurent1};

/// Sparse Laurent polynomial in commuting `t` and `M` over the integers.
///
/// Terms are stored sorted by `(M-exponent, t-exponent)`; no stored
/// coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurent2 {
    terms: Vec<((i64, i64), BigInt)>,
}

impl IntLaurent2 {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * t^t_exp * M^m_exp`.
    pub fn monomial(c: impl Into<BigInt>, t_exp: i64, m_exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![((m_exp, t_exp), c)] }
        }
    }

    /// From `(t-exponent, M-exponent, coefficient)` triples.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: HashMap<(i64, i64), BigInt> = HashMap::new();
        for (t, m, c) in terms {
            *acc.entry((m, t)).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<(i64, i64), BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(k, _)| *k);
        Self { terms }
    }

    /// Embeds a polynomial in `t` alone.
    pub fn from_t(p: &IntLaurent1) -> Self {
        Self { terms: p.terms().iter().map(|(e, c)| ((0, *e), c.clone())).collect() }
    }

    /// Embeds a polynomial in `M` alone.
    pub fn from_m(p: &IntLaurent1) -> Self {
        Self { terms: p.terms().iter().map(|(e, c)| ((*e, 0), c.clone())).collect() }
    }

    /// Iterates `(t-exponent, M-exponent, coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(|((m, t), c)| (*t, *m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1 == BigInt::from(1)
    }

    /// `Some((c, t, m))` when this is a single term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64, i64)> {
        match self.terms.as_slice() {
            [((m, t), c)] => Some((c, *t, *m)),
            _ => None,
        }
    }

    pub fn coefficient(&self, t_exp: i64, m_exp: i64) -> BigInt {
        self.terms
            .binary_search_by_key(&(m_exp, t_exp), |(k, _)| *k)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn t_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.terms.iter().map(|((_, t), _)| *t).min()?;
        let hi = self.terms.iter().map(|((_, t), _)| *t).max()?;
        Some((lo, hi))
    }

    pub fn m_bounds(&self) -> Option<(i64, i64)> {
        Some((self.terms.first()?.0 .0, self.terms.last()?.0 .0))
    }

    /// Multiplication by `c * t^t_exp * M^m_exp`.
    pub fn mul_monomial(&self, c: &BigInt, t_exp: i64, m_exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|((m, t), x)| ((m + m_exp, t + t_exp), x * c)).collect() }
    }

    pub fn shift(&self, t_exp: i64, m_exp: i64) -> Self {
        Self { terms: self.terms.iter().map(|((m, t), c)| ((m + m_exp, t + t_exp), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_monomial(c, 0, 0)
    }

    /// Twist `M -> t^{2j} M`.
    pub fn shift_m(&self, j: i64) -> Self {
        if j == 0 {
            return self.clone();
        }
        // (m, t) order is preserved because m is untouched.
        Self { terms: self.terms.iter().map(|((m, t), c)| ((*m, t + 2 * j * m), c.clone())).collect() }
    }

    /// Substitutes `M -> t^{2n}`.
    pub fn substitute_m(&self, n: i64) -> IntLaurent1 {
        IntLaurent1::from_terms(self.terms.iter().map(|((m, t), c)| (t + 2 * n * m, c.clone())))
    }

    /// Substitutes `M -> M^k` for `k > 0`.
    pub fn scale_m_exponents(&self, k: i64) -> Self {
        assert!(k > 0, "exponent scale must be positive");
        Self { terms: self.terms.iter().map(|((m, t), c)| ((m * k, *t), c.clone())).collect() }
    }

    /// Value at `t = -1` as a polynomial in `M`.
    pub fn eval_t_minus1(&self) -> IntLaurent1 {
        IntLaurent1::from_terms(
            self.terms.iter().map(|((m, t), c)| (*m, if t.rem_euclid(2) == 1 { -c } else { c.clone() })),
        )
    }

    /// Coefficients of the powers of `M`, each a polynomial in `t`.
    pub fn m_slices(&self) -> Vec<(i64, IntLaurent1)> {
        let mut out: Vec<(i64, Vec<(i64, BigInt)>)> = Vec::new();
        for ((m, t), c) in &self.terms {
            match out.last_mut() {
                Some((lm, v)) if lm == m => v.push((*t, c.clone())),
                _ => out.push((*m, vec![(*t, c.clone())])),
            }
        }
        out.into_iter().map(|(m, v)| (m, IntLaurent1::from_sorted_unchecked(v))).collect()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
        }
        g
    }

    pub(crate) fn div_coefficients_exact(&self, c: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact coefficient division");
                    (*k, q)
                })
                .collect(),
        }
    }

    /// Sign of the first stored term in canonical order.
    pub(crate) fn first_is_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    /// Exact quotient in the Laurent ring, by lex long division (`t` major).
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((c, dt, dm)) = divisor.as_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for ((m, t), x) in &self.terms {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return Err(AlgebraError::NotDivisible);
                }
                terms.push(((m - dm, t - dt), q));
            }
            return Ok(Self { terms });
        }
        let (atl, ath) = self.t_bounds().unwrap();
        let (dtl, dth) = divisor.t_bounds().unwrap();
        let (aml, amh) = self.m_bounds().unwrap();
        let (dml, dmh) = divisor.m_bounds().unwrap();
        let (qtl, qth) = (atl - dtl, ath - dth);
        let (qml, qmh) = (aml - dml, amh - dmh);
        if qtl > qth || qml > qmh {
            return Err(AlgebraError::NotDivisible);
        }
        // Keys are (t, m) so the last entry is the lex-leading term.
        let mut rem: BTreeMap<(i64, i64), BigInt> = self.terms.iter().map(|((m, t), c)| ((*t, *m), c.clone())).collect();
        let mut dterms: Vec<((i64, i64), &BigInt)> = divisor.terms.iter().map(|((m, t), c)| ((*t, *m), c)).collect();
        dterms.sort_unstable_by_key(|(k, _)| *k);
        let ((lt, lm), lead) = *dterms.last().unwrap();
        let rest = &dterms[..dterms.len() - 1];
        let mut quotient = Vec::new();
        while let Some((&(rt, rm), _)) = rem.iter().next_back() {
            let (qt, qm) = (rt - lt, rm - lm);
            if qt < qtl || qt > qth || qm < qml || qm > qmh {
                return Err(AlgebraError::NotDivisible);
            }
            let coeff = rem.remove(&(rt, rm)).unwrap();
            let (q, r) = coeff.div_rem(lead);
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            for ((dt, dm), dc) in rest {
                let key = (dt + qt, dm + qm);
                let slot = rem.entry(key).or_default();
                *slot -= &q * *dc;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push(((qm, qt), q));
        }
        quotient.sort_unstable_by_key(|(k, _)| *k);
        Ok(Self { terms: quotient })
    }

    /// Canonical text: ascending `M`, then descending `t`.
    pub fn to_text(&self) -> String {
        let mut order: Vec<&((i64, i64), BigInt)> = self.terms.iter().collect();
        order.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then(b.0 .1.cmp(&a.0 .1)));
        render_terms(order.into_iter().map(|((m, t), c)| (c, vec![("t", *t), ("M", *m)])))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, if negate { -&b[j].1 } else { b[j].1.clone() }));
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
        if let Some((c, t, m)) = self.as_monomial() {
            return other.mul_monomial(c, t, m);
        }
        if let Some((c, t, m)) = other.as_monomial() {
            return self.mul_monomial(c, t, m);
        }
        let mut acc: HashMap<(i64, i64), BigInt> = HashMap::with_capacity(self.len() * other.len());
        for ((ma, ta), ca) in &self.terms {
            for ((mb, tb), cb) in &other.terms {
                *acc.entry((ma + mb, ta + tb)).or_default() += ca * cb;
            }
        }
        Self::from_map(acc)
    }
}

impl fmt::Display for IntLaurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for IntLaurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurent2({})", self.to_text())
    }
}

impl Neg for &IntLaurent2 {
    type Output = IntLaurent2;
    fn neg(self) -> IntLaurent2 {
        IntLaurent2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for IntLaurent2 {
    type Output = IntLaurent2;
    fn neg(self) -> IntLaurent2 {
        -&self
    }
}

impl Add<&IntLaurent2> for &IntLaurent2 {
    type Output = IntLaurent2;
    fn add(self, rhs: &IntLaurent2) -> IntLaurent2 {
        self.add_impl(rhs, false)
    }
}

impl Sub<&IntLaurent2> for &IntLaurent2 {
    type Output = IntLaurent2;
    fn sub(self, rhs: &IntLaurent2) -> IntLaurent2 {
        self.add_impl(rhs, true)
    }
}

impl Mul<&IntLaurent2> for &IntLaurent2 {
    type Output = IntLaurent2;
    fn mul(self, rhs: &IntLaurent2) -> IntLaurent2 {
        self.mul_impl(rhs)
    }
}

impl Add for IntLaurent2 {
    type Output = IntLaurent2;
    fn add(self, rhs: IntLaurent2) -> IntLaurent2 {
        self.add_impl(&rhs, false)
    }
}

impl Sub for IntLaurent2 {
    type Output = IntLaurent2;
    fn sub(self, rhs: IntLaurent2) -> IntLaurent2 {
        self.add_impl(&rhs, true)
    }
}

impl Mul for IntLaurent2 {
    type Output = IntLaurent2;
    fn mul(self, rhs: IntLaurent2) -> IntLaurent2 {
        self.mul_impl(&rhs)
    }
}

impl AddAssign<&IntLaurent2> for IntLaurent2 {
    fn add_assign(&mut self, rhs: &IntLaurent2) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&IntLaurent2> for IntLaurent2 {
    fn sub_assign(&mut self, rhs: &IntLaurent2) {
        *self = self.add_impl(rhs, true);
    }
}

impl std::iter::Sum for IntLaurent2 {
    fn sum<I: Iterator<Item = IntLaurent2>>(iter: I) -> Self {
        let mut acc: HashMap<(i64, i64), BigInt> = HashMap::new();
        for p in iter {
            for (k, c) in p.terms {
                *acc.entry(k).or_default() += c;
            }
        }
        Self::from_map(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> IntLaurent2 {
        IntLaurent2::from_terms(terms.iter().copied())
    }

    #[test]
    fn products() {
        assert_eq!(&p(&[(1, 0, 1), (-1, 0, 1)]) * &p(&[(1, 0, 1), (-1, 0, -1)]), p(&[(2, 0, 1), (-2, 0, -1)]));
        assert_eq!(&p(&[(2, 1, 1)]) * &p(&[(0, -1, 1)]), p(&[(2, 0, 1)]));
        assert_eq!(&p(&[(0, 0, 1), (0, 1, 1)]) * &p(&[(0, 0, 1), (0, 1, -1)]), p(&[(0, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p(&[(3, 2, 1)]).substitute_m(2), IntLaurent1::monomial(1, 11));
        assert!(p(&[(0, 1, 1), (0, -1, -1)]).substitute_m(0).is_zero());
        let d = p(&[(22, 10, 1), (-18, -10, 1), (-6, -2, -1), (2, 2, -1)]);
        let expect = IntLaurent1::from_terms([(42, 1), (-38, 1), (-10, -1), (6, -1)]);
        assert_eq!(d.substitute_m(1), expect);
    }

    #[test]
    fn twist_examples() {
        assert_eq!(p(&[(0, 1, 1)]).shift_m(1), p(&[(2, 1, 1)]));
        assert_eq!(p(&[(3, 0, 1)]).shift_m(5), p(&[(3, 0, 1)]));
        assert_eq!(p(&[(0, 2, 1), (0, -1, 1)]).shift_m(2), p(&[(8, 2, 1), (-4, -1, 1)]));
    }

    #[test]
    fn bivariate_division() {
        let a = p(&[(1, 1, 1), (-1, 0, 2), (3, -2, -5)]);
        let b = p(&[(0, 1, 1), (2, 0, -1), (0, 0, 7)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let off = &prod + &p(&[(0, 0, 1)]);
        assert_eq!(off.exact_div(&b), Err(AlgebraError::NotDivisible));
        assert_eq!(p(&[(1, 0, 1), (0, 0, 1)]).exact_div(&p(&[(1, 0, 1), (0, 0, -1)])), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn text_order() {
        let d = p(&[(22, 10, 1), (-18, -10, 1), (-6, -2, -1), (2, 2, -1)]);
        assert_eq!(d.to_string(), "t^-18*M^-10 - t^-6*M^-2 - t^2*M^2 + t^22*M^10");
        assert_eq!(p(&[(0, 0, 3), (1, 1, -1)]).to_string(), "3 - t*M");
    }
}
