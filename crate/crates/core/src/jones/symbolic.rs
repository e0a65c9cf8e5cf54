use serde::{Deserialize, Serialize};

use super::JonesError;
use crate::algebra::{qint_denominator, IntLaurent1, IntLaurent2};

/// `delta_j`, the inhomogeneous term of the torus two-step recurrence.
pub fn delta_term(p: i64, q: i64, j: i64) -> IntLaurent1 {
    delta_numerator(p, q, j)
        .exact_div(&qint_denominator())
        .expect("delta numerator is divisible by t^2 - t^-2")
}

fn delta_numerator(p: i64, q: i64, j: i64) -> IntLaurent1 {
    let a = 2 * (p + q) * (j + 1);
    let b = 2 * (q - p) * (j + 1);
    IntLaurent1::from_terms([(a + 2, 1), (-a + 2, 1), (b - 2, -1), (-b - 2, -1)])
}

/// An expression in `(t, M)` standing for a sequence in `n` via
/// `M -> t^{2n}`, optionally divided by `t^2 - t^-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSequence {
    pub num: IntLaurent2,
    pub needs_qint_div: bool,
}

impl SymbolicSequence {
    pub fn realize(&self, n: i64) -> Result<IntLaurent1, JonesError> {
        let v = self.num.substitute_m(n);
        if self.needs_qint_div {
            Ok(v.exact_div(&qint_denominator())?)
        } else {
            Ok(v)
        }
    }

    /// The sequence at `n + k`, i.e. `L^k` applied.
    pub fn shifted(&self, k: i64) -> Self {
        Self { num: self.num.shift_m(k), needs_qint_div: self.needs_qint_div }
    }

    /// Multiplication by `c * t^{alpha n + beta}`.
    pub fn scaled(&self, c: i64, alpha: i64, beta: i64) -> Result<Self, JonesError> {
        let mono = tn_monomial(c, alpha, beta)?;
        Ok(Self { num: &self.num * &mono, needs_qint_div: self.needs_qint_div })
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.needs_qint_div, other.needs_qint_div, "mixed normalizations");
        Self { num: &self.num + &other.num, needs_qint_div: self.needs_qint_div }
    }
}

/// `c * t^{alpha n + beta}` written as `c * M^{alpha/2} t^beta`.
fn tn_monomial(c: i64, alpha: i64, beta: i64) -> Result<IntLaurent2, JonesError> {
    if alpha % 2 != 0 {
        return Err(JonesError::OddMCoefficient(alpha));
    }
    Ok(IntLaurent2::monomial(c, beta, alpha / 2))
}

/// `delta_{an+b}` with `n` symbolic.
pub fn symbolic_delta(p: i64, q: i64, a: i64, b: i64) -> Result<SymbolicSequence, JonesError> {
    // Each numerator exponent is (alpha n + beta) with j + 1 = a n + b + 1.
    let (u, v) = (2 * (p + q), 2 * (q - p));
    let terms = [(u * a, u * (b + 1) + 2, 1), (-u * a, -u * (b + 1) + 2, 1), (v * a, v * (b + 1) - 2, -1), (-v * a, -v * (b + 1) - 2, -1)];
    let mut num = IntLaurent2::zero();
    for (alpha, beta, c) in terms {
        num += &tn_monomial(c, alpha, beta)?;
    }
    Ok(SymbolicSequence { num, needs_qint_div: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    S,
    U,
    V,
}

/// `S_n`, `U_n` or `V_n` with `n` symbolic.
pub fn symbolic_sum(kind: SumKind, p: i64, q: i64, s: i64) -> Result<SymbolicSequence, JonesError> {
    let mut acc = SymbolicSequence { num: IntLaurent2::zero(), needs_qint_div: true };
    match kind {
        SumKind::S => {
            let pq = p * q;
            for k in 1..=s {
                let d = symbolic_delta(p, q, s, 3 * s - 1 - 2 * k)?;
                let term = d.scaled(1, -4 * pq * s * k + 2 * pq * s, 4 * pq * k * k - 12 * pq * s * k + 6 * pq * s)?;
                acc = acc.add(&term);
            }
        }
        SumKind::V => {
            if s % 2 != 0 {
                return Err(JonesError::BadParams(format!("V needs even s, got {s}")));
            }
            let pq = p * q;
            for k in 1..=s / 2 {
                let d = symbolic_delta(p, q, s, 2 * s - 1 - 2 * k)?;
                let term = d.scaled(1, -4 * pq * s * k + 2 * pq * s, 4 * pq * k * k - 8 * pq * s * k + 4 * pq * s)?;
                acc = acc.add(&term);
            }
        }
        SumKind::U => {
            for k in 1..=s {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let qint = &tn_monomial(1, 4 * s, 8 * s - 2 - 4 * k)? - &tn_monomial(1, -4 * s, -8 * s + 2 + 4 * k)?;
                let pre = tn_monomial(sign, 2 * p * s - 4 * p * s * k, 2 * p * k * k - 8 * p * s * k + 2 * p * k + 4 * p * s)?;
                acc = acc.add(&SymbolicSequence { num: &qint * &pre, needs_qint_div: true });
            }
        }
    }
    Ok(acc)
}

/// The same sums evaluated at a concrete `n`, straight from their
/// definitions.
pub fn direct_sum(kind: SumKind, p: i64, q: i64, s: i64, n: i64) -> Result<IntLaurent1, JonesError> {
    let pq = p * q;
    let mut acc = IntLaurent1::zero();
    match kind {
        SumKind::S => {
            for k in 1..=s {
                let e = -4 * pq * s * k * n + 2 * pq * s * n + 4 * pq * k * k - 12 * pq * s * k + 6 * pq * s;
                acc += &delta_term(p, q, s * (n + 3) - 1 - 2 * k).shift(e);
            }
        }
        SumKind::V => {
            if s % 2 != 0 {
                return Err(JonesError::BadParams(format!("V needs even s, got {s}")));
            }
            for k in 1..=s / 2 {
                let e = -4 * pq * s * n * k + 2 * pq * s * n + 4 * pq * k * k - 8 * pq * s * k + 4 * pq * s;
                acc += &delta_term(p, q, s * (n + 2) - 1 - 2 * k).shift(e);
            }
        }
        SumKind::U => {
            let den = qint_denominator();
            for k in 1..=s {
                let e = 2 * p * s * n - 4 * p * s * n * k + 2 * p * k * k - 8 * p * s * k + 2 * p * k + 4 * p * s;
                let a = 4 * s * n + 8 * s - 2 - 4 * k;
                let qint = IntLaurent1::from_terms([(a, 1), (-a, -1)]).exact_div(&den)?;
                let term = qint.shift(e);
                if k % 2 == 1 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> IntLaurent1 {
        IntLaurent1::from_terms(terms.iter().copied())
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_term(3, 2, 0), p(&[(10, 1), (6, 1), (2, 1), (-6, -1)]));
        assert_eq!(delta_term(3, 2, 1), p(&[(20, 1), (16, 1), (12, 1), (8, 1), (4, 1), (-8, -1), (-12, -1), (-16, -1)]));
    }

    #[test]
    fn symbolic_delta_shape() {
        let d = symbolic_delta(3, 2, 2, 1).unwrap();
        let expect = IntLaurent2::from_terms([(22, 10, 1), (-18, -10, 1), (-6, -2, -1), (2, 2, -1)]);
        assert_eq!(d.num, expect);
        assert!(d.needs_qint_div);
        assert_eq!(d.realize(0).unwrap(), delta_term(3, 2, 1));
        let ds = symbolic_delta(5, 3, 3, 2).unwrap();
        for n in 0..4 {
            assert_eq!(ds.realize(n).unwrap(), delta_term(5, 3, 3 * (n + 1) - 1));
        }
    }

    #[test]
    fn sums_agree_with_direct_forms() {
        for n in 0..4 {
            let s = symbolic_sum(SumKind::S, 5, 3, 3).unwrap();
            assert_eq!(s.realize(n).unwrap(), direct_sum(SumKind::S, 5, 3, 3, n).unwrap());
            let u = symbolic_sum(SumKind::U, 3, 2, 3).unwrap();
            assert_eq!(u.realize(n).unwrap(), direct_sum(SumKind::U, 3, 2, 3, n).unwrap());
            let v = symbolic_sum(SumKind::V, 5, 3, 4).unwrap();
            assert_eq!(v.realize(n).unwrap(), direct_sum(SumKind::V, 5, 3, 4, n).unwrap());
        }
    }

    #[test]
    fn v_with_s2_is_one_term() {
        let v = symbolic_sum(SumKind::V, 3, 2, 2).unwrap();
        let d = symbolic_delta(3, 2, 2, 1).unwrap().scaled(1, -24, -24).unwrap();
        assert_eq!(v.num, d.num);
        assert!(symbolic_sum(SumKind::V, 3, 2, 3).is_err());
    }

    #[test]
    fn odd_m_coefficient_guard() {
        let d = symbolic_delta(3, 2, 1, 0).unwrap();
        assert_eq!(d.scaled(1, 3, 0), Err(JonesError::OddMCoefficient(3)));
    }
}
