//! Exact Laurent polynomials in `t` and `(t, M)` and their fraction fields.

mod bivariate;
mod laurent;
mod rational;

pub use bivariate::IntLaurent2;
pub use laurent::IntLaurent1;
pub use rational::{RationalM, RationalTM};

use num_bigint::BigInt;
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivByZero,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("denominator vanishes at t = -1")]
    PoleAtMinusOne,
}

/// `t^2 - t^-2` as a univariate polynomial.
pub fn qint_denominator() -> IntLaurent1 {
    IntLaurent1::from_terms([(2, 1), (-2, -1)])
}

/// Renders signed terms as `c*x^a*y^b`, joined by ` + ` / ` - `.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a BigInt, Vec<(&'a str, i64)>)>,
{
    let mut out = String::new();
    for (coeff, vars) in terms {
        let negative = coeff.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        let powers: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if !abs.is_one() || powers.is_empty() {
            factors.push(abs.to_string());
        }
        factors.extend(powers);
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
