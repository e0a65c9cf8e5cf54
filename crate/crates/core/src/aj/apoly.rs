use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::algebra::{IntLaurent1, RationalM};
use crate::jones::{CablingParams, ParamError};

/// Polynomial in `L` with coefficients in `Q(M)`; `L` and `M` commute.
#[derive(Clone, Default)]
pub struct LPolynomialOverM {
    coeffs: BTreeMap<i64, RationalM>,
}

impl LPolynomialOverM {
    pub fn from_terms<I: IntoIterator<Item = (i64, RationalM)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// From `(L-exponent, coefficient, M-exponent)` monomials.
    pub fn from_monomials(terms: &[(i64, i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(l, c, m)| (l, RationalM::monomial(c, m))))
    }

    fn add_term(&mut self, k: i64, c: RationalM) {
        let sum = match self.coeffs.remove(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, k: i64) -> RationalM {
        self.coeffs.get(&k).cloned().unwrap_or_else(RationalM::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &RationalM)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                out.add_term(a + b, f.mul(g));
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalM) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, f)| (*k, f.mul(c))))
    }

    /// Substitutes `M -> M^k`.
    pub fn substitute_m_power(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(l, c)| (*l, c.scale_exponents(k))).collect() }
    }

    /// Equality up to one nonzero factor in `Q(M)`, by cross-multiplication.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.coeffs.keys().ne(other.coeffs.keys()) {
            return false;
        }
        let (&k0, f0) = self.coeffs.iter().next().unwrap();
        let g0 = &other.coeffs[&k0];
        self.coeffs.iter().all(|(k, f)| f.mul(g0).equals(&other.coeffs[k].mul(f0)))
    }

    /// `self / other` as a scalar when the two are projectively equal.
    pub fn ratio_to(&self, other: &Self) -> Option<RationalM> {
        if !self.projectively_equal(other) || self.is_zero() {
            return None;
        }
        let k = self.degree().unwrap();
        self.coeffs[&k].div(&other.coeffs[&k]).ok()
    }

    /// Divided by the leading coefficient, coefficients reduced.
    pub fn monic(&self) -> Self {
        let Some(k) = self.degree() else {
            return self.clone();
        };
        let lead = self.coeffs[&k].clone();
        Self {
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, c.div(&lead).expect("nonzero leading coefficient").reduced())).collect(),
        }
    }

    /// Descending in `L`, e.g. `L^2 + (M^2 - 1)*L + (-M^4)`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let power = |k: i64| match k {
            1 => "L".to_string(),
            _ => format!("L^{k}"),
        };
        self.coeffs
            .iter()
            .rev()
            .map(|(k, c)| {
                let coef = c.to_text();
                match (*k, coef.as_str()) {
                    (0, _) => format!("({coef})"),
                    (_, "1") => power(*k),
                    _ => format!("({coef})*{}", power(*k)),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl PartialEq for LPolynomialOverM {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|((a, f), (b, g))| a == b && f.equals(g))
    }
}

impl fmt::Display for LPolynomialOverM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LPolynomialOverM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPolynomialOverM({})", self.to_text())
    }
}

fn check_pair(p: i64, q: i64) -> Result<(), ParamError> {
    if q < 2 || p.gcd(&q) != 1 || p == 0 {
        return Err(ParamError(format!("need gcd(p, q) = 1 and q >= 2, got ({p}, {q})")));
    }
    Ok(())
}

pub fn f_poly(p: i64, q: i64) -> Result<LPolynomialOverM, ParamError> {
    check_pair(p, q)?;
    let terms: &[(i64, i64, i64)] = match (q == 2, p > 0) {
        (true, true) => &[(1, 1, 2 * p), (0, 1, 0)],
        (true, false) => &[(1, 1, 0), (0, 1, -2 * p)],
        (false, true) => &[(2, 1, 2 * p * q), (0, -1, 0)],
        (false, false) => &[(2, 1, 0), (0, -1, -2 * p * q)],
    };
    Ok(LPolynomialOverM::from_monomials(terms))
}

pub fn g_poly(p: i64, q: i64) -> Result<LPolynomialOverM, ParamError> {
    check_pair(p, q)?;
    let terms: &[(i64, i64, i64)] = if p > 0 { &[(1, 1, p * q), (0, -1, 0)] } else { &[(1, 1, 0), (0, -1, -p * q)] };
    Ok(LPolynomialOverM::from_monomials(terms))
}

/// A-polynomial of the cable as a product of `L - 1`, `F_{(r,s)}` and the
/// torus factor at `M^{s^2}`.
pub fn cabled_a_polynomial(params: &CablingParams) -> Result<LPolynomialOverM, ParamError> {
    let CablingParams { p, q, r, s } = *params;
    let torus_factor = if s % 2 == 1 { f_poly(p, q)? } else { g_poly(p, q)? };
    let l_minus_1 = LPolynomialOverM::from_monomials(&[(1, 1, 0), (0, -1, 0)]);
    Ok(l_minus_1.mul(&f_poly(r, s)?).mul(&torus_factor.substitute_m_power(s * s)))
}

/// `M^e` as an `M`-polynomial.
pub(crate) fn m_pow(e: i64) -> IntLaurent1 {
    IntLaurent1::monomial(1, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64, i64)]) -> LPolynomialOverM {
        LPolynomialOverM::from_monomials(terms)
    }

    #[test]
    fn monic_text() {
        let f = LPolynomialOverM::from_monomials(&[(1, 2, 6), (0, 2, 0)]);
        assert_eq!(f.monic().to_text(), "L + (M^-6)");
        assert_eq!(f_poly(5, 3).unwrap().to_text(), "(M^30)*L^2 + (-1)");
    }

    #[test]
    fn factor_polynomials() {
        assert_eq!(f_poly(3, 2).unwrap(), lp(&[(1, 1, 6), (0, 1, 0)]));
        assert_eq!(f_poly(-3, 2).unwrap(), lp(&[(1, 1, 0), (0, 1, 6)]));
        assert_eq!(g_poly(3, 2).unwrap(), lp(&[(1, 1, 6), (0, -1, 0)]));
        assert_eq!(f_poly(5, 3).unwrap(), lp(&[(2, 1, 30), (0, -1, 0)]));
        assert!(f_poly(4, 2).is_err());
    }

    #[test]
    fn cabled_examples() {
        let l1 = lp(&[(1, 1, 0), (0, -1, 0)]);
        let a = cabled_a_polynomial(&CablingParams::new(3, 2, 13, 2).unwrap()).unwrap();
        assert_eq!(a, l1.mul(&lp(&[(1, 1, 26), (0, 1, 0)])).mul(&lp(&[(1, 1, 24), (0, -1, 0)])));
        let a = cabled_a_polynomial(&CablingParams::new(3, 2, 31, 3).unwrap()).unwrap();
        assert_eq!(a, l1.mul(&lp(&[(2, 1, 186), (0, -1, 0)])).mul(&lp(&[(1, 1, 54), (0, 1, 0)])));
        let a = cabled_a_polynomial(&CablingParams::new(5, 3, -1, 2).unwrap()).unwrap();
        assert_eq!(a, l1.mul(&lp(&[(1, 1, 0), (0, 1, 2)])).mul(&lp(&[(1, 1, 60), (0, -1, 0)])));
    }

    #[test]
    fn projective_equality() {
        let a = lp(&[(1, 1, 6), (0, 1, 0)]);
        let b = a.scale(&RationalM::new(m_pow(3), IntLaurent1::from_terms([(1, 1), (0, 1)])).unwrap());
        assert!(a.projectively_equal(&b));
        assert!(!a.projectively_equal(&lp(&[(1, 1, 6), (0, -1, 0)])));
        assert!(!a.projectively_equal(&lp(&[(1, 1, 6)])));
    }
}
