//! A-polynomials of cables, the annihilator construction, and the checks
//! tying `P(-1, M, L)` to the A-polynomial.

mod annihilator;
mod apoly;
mod checks;

pub use annihilator::{
    a_poly, build_ab, build_annihilator, case_data, evaluate_annihilator_at_minus1, AnnihilatorBundle, AnnihilatorError,
    CaseData,
};
pub use apoly::{cabled_a_polynomial, f_poly, g_poly, LPolynomialOverM};
pub use checks::{
    b_closed_form, compare_aj, compare_aj_with, determinant_at_minus1, determinant_check, determinant_closed_form,
    AjReport, DeterminantReport,
};
