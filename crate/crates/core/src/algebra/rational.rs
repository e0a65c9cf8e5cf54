use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, IntLaurent1, IntLaurent2};

/// Element of `Q(t, M)` kept as `num / den` with cheap normalization only:
/// the denominator carries no monomial factor, integer content is shared
/// out, the denominator's first term is positive, and an exact quotient
/// collapses the fraction. No polynomial gcd is taken.
#[derive(Clone)]
pub struct RationalTM {
    num: IntLaurent2,
    den: IntLaurent2,
}

impl RationalTM {
    pub fn new(num: IntLaurent2, den: IntLaurent2) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        Self { num: IntLaurent2::zero(), den: IntLaurent2::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntLaurent2::one())
    }

    pub fn from_poly(num: IntLaurent2) -> Self {
        Self { num, den: IntLaurent2::one() }
    }

    pub fn num(&self) -> &IntLaurent2 {
        &self.num
    }

    pub fn den(&self) -> &IntLaurent2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(num: IntLaurent2, den: IntLaurent2) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (tl, _) = den.t_bounds().unwrap();
        let (ml, _) = den.m_bounds().unwrap();
        let (mut num, mut den) = (num.shift(-tl, -ml), den.shift(-tl, -ml));
        if den.first_is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_coefficients_exact(&g);
            den = den.div_coefficients_exact(&g);
        }
        if !den.is_one() {
            if let Ok(q) = num.exact_div(&den) {
                return Self { num: q, den: IntLaurent2::one() };
            }
        }
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::canonical(&self.num + &other.num, self.den.clone());
        }
        if other.den.is_one() {
            return Self::canonical(&self.num + &(&other.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return Self::canonical(&(&self.num * &other.den) + &other.num, other.den.clone());
        }
        if let Ok(k) = self.den.exact_div(&other.den) {
            return Self::canonical(&self.num + &(&other.num * &k), self.den.clone());
        }
        if let Ok(k) = other.den.exact_div(&self.den) {
            return Self::canonical(&(&self.num * &k) + &other.num, other.den.clone());
        }
        Self::canonical(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (mut a, mut b) = (self.num.clone(), self.den.clone());
        let (mut c, mut d) = (other.num.clone(), other.den.clone());
        if !d.is_one() {
            if let Ok(q) = a.exact_div(&d) {
                a = q;
                d = IntLaurent2::one();
            }
        }
        if !b.is_one() {
            if let Ok(q) = c.exact_div(&b) {
                c = q;
                b = IntLaurent2::one();
            }
        }
        Self::canonical(&a * &c, &b * &d)
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn mul_poly(&self, p: &IntLaurent2) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Twist `M -> t^{2j} M` applied to numerator and denominator.
    pub fn shift_m(&self, j: i64) -> Self {
        Self::canonical(self.num.shift_m(j), self.den.shift_m(j))
    }

    /// Value equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Limit as `t -> -1`, cancelling common factors of `t + 1`.
    pub fn limit_t_minus1(&self) -> Result<RationalM, AlgebraError> {
        let t_plus_1 = IntLaurent2::from_terms([(1, 0, 1), (0, 0, 1)]);
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        loop {
            let (n0, d0) = (num.eval_t_minus1(), den.eval_t_minus1());
            if !d0.is_zero() {
                return RationalM::new(n0, d0);
            }
            if !n0.is_zero() {
                return Err(AlgebraError::PoleAtMinusOne);
            }
            num = num.exact_div(&t_plus_1)?;
            den = den.exact_div(&t_plus_1)?;
        }
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }
}

impl PartialEq for RationalTM {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<IntLaurent2> for RationalTM {
    fn from(p: IntLaurent2) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalTM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalTM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalTM({})", self.to_text())
    }
}

/// Element of `Q(M)`, normalized like [`RationalTM`]; polynomials are
/// univariate Laurent polynomials in `M`.
#[derive(Clone)]
pub struct RationalM {
    num: IntLaurent1,
    den: IntLaurent1,
}

impl RationalM {
    pub fn new(num: IntLaurent1, den: IntLaurent1) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        Self { num: IntLaurent1::zero(), den: IntLaurent1::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntLaurent1::one())
    }

    pub fn from_poly(num: IntLaurent1) -> Self {
        Self { num, den: IntLaurent1::one() }
    }

    /// `c * M^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_poly(IntLaurent1::monomial(c, e))
    }

    pub fn num(&self) -> &IntLaurent1 {
        &self.num
    }

    pub fn den(&self) -> &IntLaurent1 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn canonical(num: IntLaurent1, den: IntLaurent1) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lo = den.min_exponent().unwrap();
        let (mut num, mut den) = (num.shift(-lo), den.shift(-lo));
        if den.leading_low_is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_coefficients_exact(&g);
            den = den.div_coefficients_exact(&g);
        }
        if !den.is_one() {
            if let Ok(q) = num.exact_div(&den) {
                return Self { num: q, den: IntLaurent1::one() };
            }
        }
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::canonical(&self.num + &other.num, self.den.clone());
        }
        Self::canonical(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::canonical(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitutes `M -> M^k`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        Self::canonical(self.num.scale_exponents(k), self.den.scale_exponents(k))
    }

    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Fully reduced form, dividing out the polynomial gcd of numerator and
    /// denominator.
    pub fn reduced(&self) -> Self {
        if self.den.is_one() || self.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.max_exponent() == g.min_exponent() {
            return self.clone();
        }
        let num = self.num.exact_div(&g).expect("gcd divides numerator");
        let den = self.den.exact_div(&g).expect("gcd divides denominator");
        Self::canonical(num, den)
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text("M")
        } else {
            format!("({})/({})", self.num.to_text("M"), self.den.to_text("M"))
        }
    }
}

/// Primitive-remainder gcd of two Laurent polynomials, up to a unit.
fn poly_gcd(a: &IntLaurent1, b: &IntLaurent1) -> IntLaurent1 {
    let normalize = |p: &IntLaurent1| -> BTreeMap<i64, BigInt> {
        let lo = p.min_exponent().unwrap_or(0);
        let c = p.content();
        p.terms().iter().map(|(e, x)| (e - lo, x / &c)).collect()
    };
    let mut x = normalize(a);
    let mut y = normalize(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_remainder(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(r) };
    }
    IntLaurent1::from_terms(x)
}

fn degree(p: &BTreeMap<i64, BigInt>) -> i64 {
    p.keys().next_back().copied().unwrap_or(-1)
}

fn primitive(p: BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    let g = p.values().fold(BigInt::zero(), |g, c| g.gcd(c));
    let lead_neg = p.values().next_back().map(|c| c.is_negative()).unwrap_or(false);
    let g = if lead_neg { -g } else { g };
    p.into_iter().map(|(e, c)| (e, c / &g)).collect()
}

fn pseudo_remainder(a: &BTreeMap<i64, BigInt>, b: &BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    let db = degree(b);
    let lb = b[&db].clone();
    let mut r = a.clone();
    while !r.is_empty() && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r[&dr].clone();
        for c in r.values_mut() {
            *c *= &lb;
        }
        for (e, c) in b {
            let key = e + dr - db;
            let slot = r.entry(key).or_default();
            *slot -= &lr * c;
            if slot.is_zero() {
                r.remove(&key);
            }
        }
        // Keep coefficient growth in check.
        if !r.is_empty() {
            let g = r.values().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_one() {
                for c in r.values_mut() {
                    *c /= &g;
                }
            }
        }
    }
    r
}

impl PartialEq for RationalM {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalM({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(terms: &[(i64, i64, i64)]) -> IntLaurent2 {
        IntLaurent2::from_terms(terms.iter().copied())
    }

    fn m(terms: &[(i64, i64)]) -> IntLaurent1 {
        IntLaurent1::from_terms(terms.iter().copied())
    }

    #[test]
    fn limit_with_common_factor() {
        let f = RationalTM::new(p2(&[(1, 1, 1), (-1, 1, -1)]), p2(&[(1, 0, 1), (-1, 0, -1)])).unwrap();
        assert_eq!(f.limit_t_minus1().unwrap(), RationalM::monomial(1, 1));
        let g = RationalTM::new(p2(&[(1, 1, 1), (0, 1, 1), (1, 0, 1), (0, 0, 1)]), p2(&[(1, 1, 1), (0, 1, 1)])).unwrap();
        let expect = RationalM::new(m(&[(1, 1), (0, 1)]), m(&[(1, 1)])).unwrap();
        assert_eq!(g.limit_t_minus1().unwrap(), expect);
    }

    #[test]
    fn limit_of_s2_b() {
        let b = p2(&[(22, 10, 1), (-18, -10, 1), (-6, -2, -1), (2, 2, -1)]).shift(-24, -12);
        let lim = RationalTM::from_poly(b).limit_t_minus1().unwrap();
        assert_eq!(lim, RationalM::from_poly(m(&[(-2, 1), (-22, 1), (-14, -1), (-10, -1)])));
    }

    #[test]
    fn pole_detected() {
        let f = RationalTM::new(IntLaurent2::one(), p2(&[(1, 0, 1), (0, 0, 1)])).unwrap();
        assert_eq!(f.limit_t_minus1().unwrap_err(), AlgebraError::PoleAtMinusOne);
    }

    #[test]
    fn canonical_form() {
        let f = RationalTM::new(p2(&[(0, 0, 6)]), p2(&[(3, 2, -4), (5, 2, 2)])).unwrap();
        assert_eq!(f.den().t_bounds(), Some((0, 2)));
        assert_eq!(f.den().m_bounds(), Some((0, 0)));
        assert!(!f.den().first_is_negative());
        assert_eq!(f.den().content(), BigInt::from(1));
        let again = RationalTM::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(again.num(), f.num());
        assert_eq!(again.den(), f.den());
        assert!(RationalTM::new(IntLaurent2::zero(), p2(&[(1, 1, 3)])).unwrap().den().is_one());
    }

    #[test]
    fn rational_m_gcd_reduction() {
        let a = m(&[(3, 1), (0, -1)]);
        let b = m(&[(2, 1), (0, -1)]);
        let r = RationalM::new(a.clone(), b.clone()).unwrap().reduced();
        assert_eq!(r.num(), &m(&[(2, 1), (1, 1), (0, 1)]));
        assert_eq!(r.den(), &m(&[(1, 1), (0, 1)]));
    }
}
