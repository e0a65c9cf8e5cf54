use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{IntLaurent2, RationalTM};

/// Laurent polynomial in `L` with coefficients in `Q(t, M)`, multiplied
/// under `L * f(t, M) = f(t, t^2 M) * L`.
#[derive(Clone, Default)]
pub struct SkewOperator {
    coeffs: BTreeMap<i64, RationalTM>,
}

impl SkewOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalTM::one())
    }

    /// `L^k`.
    pub fn l_power(k: i64) -> Self {
        Self::term(RationalTM::one(), k)
    }

    /// `f * L^k`.
    pub fn term(f: RationalTM, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !f.is_zero() {
            coeffs.insert(k, f);
        }
        Self { coeffs }
    }

    pub fn constant(f: RationalTM) -> Self {
        Self::term(f, 0)
    }

    pub fn poly(p: IntLaurent2) -> Self {
        Self::constant(RationalTM::from_poly(p))
    }

    /// From `(L-exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, RationalTM)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, f) in terms {
            out.add_term(k, &f);
        }
        out
    }

    fn add_term(&mut self, k: i64, f: &RationalTM) {
        if f.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&k) {
            Some(g) => g.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &RationalTM)> + '_ {
        self.coeffs.iter().map(|(k, f)| (*k, f))
    }

    pub fn coefficient(&self, k: i64) -> RationalTM {
        self.coeffs.get(&k).cloned().unwrap_or_else(RationalTM::zero)
    }

    /// Highest power of `L`.
    pub fn l_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn l_low(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &other.coeffs {
            out.add_term(*k, f);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, f)| (*k, f.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Skew product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                out.add_term(a + b, &f.mul(&g.shift_m(*a)));
            }
        }
        out
    }

    /// Left multiplication by a scalar `c`, i.e. `c * self`.
    pub fn left_scale(&self, c: &RationalTM) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, f)| (*k, c.mul(f))))
    }

    pub fn has_polynomial_coefficients(&self) -> bool {
        self.coeffs.values().all(RationalTM::is_polynomial)
    }

    /// Returns `(c * self, c)` with `c` chosen so every coefficient of the
    /// product is a polynomial with content one.
    pub fn clear_denominators(&self) -> (SkewOperator, RationalTM) {
        let mut c = IntLaurent2::one();
        for f in self.coeffs.values() {
            let d = f.den();
            if d.is_one() || c.exact_div(d).is_ok() {
                continue;
            }
            c = match d.exact_div(&c) {
                Ok(_) => d.clone(),
                Err(_) => &c * d,
            };
        }
        let nums: Vec<(i64, IntLaurent2)> = self
            .coeffs
            .iter()
            .map(|(k, f)| {
                let k_factor = c.exact_div(f.den()).expect("common denominator is a multiple");
                (*k, f.num() * &k_factor)
            })
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |g, (_, p)| g.gcd(&p.content()));
        let (nums, scale) = if g.is_one() || g.is_zero() {
            (nums, RationalTM::from_poly(c))
        } else {
            let reduced = nums.into_iter().map(|(k, p)| (k, p.div_coefficients_exact(&g))).collect();
            let scale = RationalTM::new(c, IntLaurent2::monomial(g, 0, 0)).expect("nonzero content");
            (reduced, scale)
        };
        let cleared = Self {
            coeffs: nums.into_iter().map(|(k, p)| (k, RationalTM::from_poly(p))).collect(),
        };
        (cleared, scale)
    }

    /// Exact value equality, coefficientwise.
    pub fn equals(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|((a, f), (b, g))| a == b && f.equals(g))
    }

    /// `(coef)*L^d` terms in ascending `d`, joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(k, f)| format!("({})*L^{}", f.to_text(), k))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl PartialEq for SkewOperator {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewOperator({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64, i64)]) -> RationalTM {
        RationalTM::from_poly(IntLaurent2::from_terms(terms.iter().copied()))
    }

    #[test]
    fn l_times_m_twists() {
        let l = SkewOperator::l_power(1);
        let m = SkewOperator::constant(poly(&[(0, 1, 1)]));
        assert_eq!(l.mul(&m), SkewOperator::term(poly(&[(2, 1, 1)]), 1));
    }

    #[test]
    fn constant_coefficients_commute() {
        let a = SkewOperator::from_terms([(1, RationalTM::one()), (0, poly(&[(0, 0, -1)]))]);
        let b = SkewOperator::from_terms([(1, RationalTM::one()), (0, RationalTM::one())]);
        let expect = SkewOperator::from_terms([(2, RationalTM::one()), (0, poly(&[(0, 0, -1)]))]);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn l_squared_twist() {
        let f = SkewOperator::constant(poly(&[(0, 1, 1), (0, -1, -1)]));
        let out = SkewOperator::l_power(2).mul(&f);
        assert_eq!(out, SkewOperator::term(poly(&[(4, 1, 1), (-4, -1, -1)]), 2));
    }

    #[test]
    fn clearing_simple_denominator() {
        let m_minus_1 = IntLaurent2::from_terms([(0, 1, 1), (0, 0, -1)]);
        let inv = RationalTM::new(IntLaurent2::one(), m_minus_1.clone()).unwrap();
        let p = SkewOperator::from_terms([(1, inv), (0, RationalTM::one())]);
        let (pc, c) = p.clear_denominators();
        let expect = SkewOperator::from_terms([(1, RationalTM::one()), (0, RationalTM::from_poly(m_minus_1.clone()))]);
        // The denominator is canonicalized to 1 - M, so c and Pc carry a sign.
        assert!(pc == expect || pc == expect.neg());
        let c_abs = RationalTM::from_poly(m_minus_1);
        assert!(c.equals(&c_abs) || c.equals(&c_abs.neg()));
        assert_eq!(SkewOperator::constant(c).mul(&p), pc);
    }

    #[test]
    fn clearing_polynomial_operator_is_identity() {
        let p = SkewOperator::from_terms([(2, RationalTM::one()), (1, poly(&[(2, 0, -1), (-2, 0, -1)])), (0, RationalTM::one())]);
        let (pc, c) = p.clear_denominators();
        assert_eq!(pc, p);
        assert!(c.equals(&RationalTM::one()));
    }
}
