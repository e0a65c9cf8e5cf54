use rayon::prelude::*;
use serde::Serialize;

use super::{DiscreteSequence, SkewOperator};
use crate::algebra::IntLaurent1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApplyError {
    #[error("a coefficient denominator vanishes at n = {0}")]
    DenominatorVanishes(i64),
    #[error("operator value at n = {0} is not a Laurent polynomial")]
    NotLaurent(i64),
}

/// `(P f)(n) = sum_i P_i(t, t^{2n}) f(n + i)`.
pub fn apply_operator<S: DiscreteSequence + ?Sized>(op: &SkewOperator, f: &S, n: i64) -> Result<IntLaurent1, ApplyError> {
    let mut num = IntLaurent1::zero();
    let mut den = IntLaurent1::one();
    for (i, coeff) in op.coeffs() {
        let cn = coeff.num().substitute_m(n);
        if cn.is_zero() {
            continue;
        }
        let term = &cn * &*f.eval(n + i);
        if coeff.is_polynomial() {
            num += &(&term * &den);
            continue;
        }
        let cd = coeff.den().substitute_m(n);
        if cd.is_zero() {
            return Err(ApplyError::DenominatorVanishes(n));
        }
        if cd == den {
            num += &term;
        } else {
            num = &(&num * &cd) + &(&term * &den);
            den = &den * &cd;
        }
    }
    num.exact_div(&den).map_err(|_| ApplyError::NotLaurent(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub passed: bool,
    pub n_lo: i64,
    pub n_hi: i64,
    pub first_failure: Option<i64>,
    /// Text of the nonzero residue at the first failure.
    pub residue: Option<String>,
}

/// Applies the denominator-cleared form of `op` at every `n` in range.
pub fn check_annihilation<S: DiscreteSequence + ?Sized>(op: &SkewOperator, f: &S, n_lo: i64, n_hi: i64) -> AnnihilationReport {
    assert!(n_lo <= n_hi, "empty range");
    let cleared = if op.has_polynomial_coefficients() { op.clone() } else { op.clear_denominators().0 };
    let residues: Vec<(i64, IntLaurent1)> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| (n, apply_operator(&cleared, f, n).expect("polynomial coefficients apply everywhere")))
        .collect();
    let failure = residues.into_iter().find(|(_, r)| !r.is_zero());
    AnnihilationReport {
        passed: failure.is_none(),
        n_lo,
        n_hi,
        first_failure: failure.as_ref().map(|(n, _)| *n),
        residue: failure.map(|(_, r)| r.to_string()),
    }
}
