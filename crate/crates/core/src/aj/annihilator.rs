

use super::apoly::LPolynomialOverM;
use crate::algebra::{AlgebraError, IntLaurent2, RationalTM};
use crate::jones::{symbolic_delta, symbolic_sum, CablingParams, CaseTag, JonesError, SumKind};
use crate::qtorus::SkewOperator;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnnihilatorError {
    #[error("b vanishes identically")]
    BZero,
    #[error(transparent)]
    Jones(#[from] JonesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Pieces shared by the constructions for `s >= 3`.
///
/// With `Y = L^2 - M^{-2rs} t^{-4rs}` one has
/// `Y J_C = a J_{T,s(n+1)-1} + e delta_{s(n+1)-1}`, and a case-dependent
/// `X = L^h - x` sends `J_{T,s(n+1)-1}` to `W / (t^2 - t^-2)`.
#[derive(Debug, Clone)]
pub struct CaseData {
    pub tag: CaseTag,
    pub a: IntLaurent2,
    pub e: IntLaurent2,
    /// Numerator of `delta_{s(n+1)-1}`.
    pub delta: IntLaurent2,
    pub h: i64,
    pub x: IntLaurent2,
    /// Numerator of `W`, the `S`, `U` or `V` sum.
    pub w: IntLaurent2,
}

fn mono(c: i64, t: i64, m: i64) -> IntLaurent2 {
    IntLaurent2::monomial(c, t, m)
}

/// `a(t, M)`, the coefficient of `J_{T,s(n+1)-1}` in the cable recurrence.
pub fn a_poly(params: &CablingParams) -> IntLaurent2 {
    let CablingParams { r, s, .. } = *params;
    let pqs = params.pqs();
    &mono(1, -2 * r * s + 2 * r - 4 * pqs, r - r * s - 2 * pqs) - &mono(1, -2 * r * s - 2 * r, -r - r * s)
}

fn e_poly(params: &CablingParams) -> IntLaurent2 {
    let CablingParams { r, s, .. } = *params;
    let pqs = params.pqs();
    mono(1, -2 * r * s + 2 * r - 2 * pqs, r - r * s - pqs)
}

pub fn case_data(params: &CablingParams) -> Result<CaseData, AnnihilatorError> {
    let CablingParams { p, q, s, .. } = *params;
    let tag = params.case_tag();
    let pq = p * q;
    let (h, x, kind) = match tag {
        CaseTag::SOddQGt2 => (2, mono(1, -8 * pq * s * s + 4 * pq * s, -2 * pq * s * s), SumKind::S),
        CaseTag::SOddQ2 => (1, mono(-1, 4 * p * s - 6 * p * s * s, -2 * p * s * s), SumKind::U),
        CaseTag::SEvenGt2 => (1, mono(1, -3 * pq * s * s + 2 * pq * s, -pq * s * s), SumKind::V),
        CaseTag::SEq2 => return Err(JonesError::BadParams("s = 2 has its own construction".into()).into()),
    };
    Ok(CaseData {
        tag,
        a: a_poly(params),
        e: e_poly(params),
        delta: symbolic_delta(p, q, s, s - 1)?.num,
        h,
        x,
        w: symbolic_sum(kind, p, q, s)?.num,
    })
}

/// `(a, b)` where `b / (t^2 - t^-2)` is the inhomogeneous side of the
/// final relation before `L - 1` is applied.
pub fn build_ab(params: &CablingParams) -> Result<(IntLaurent2, RationalTM), AnnihilatorError> {
    let CablingParams { p, q, .. } = *params;
    if params.case_tag() == CaseTag::SEq2 {
        let delta = symbolic_delta(p, q, 2, 1)?.num;
        let b = &mono(1, -4 * p * q, -2 * p * q) * &delta;
        return Ok((a_poly(params), RationalTM::from_poly(b)));
    }
    let d = case_data(params)?;
    let ed = &d.e * &d.delta;
    let through = RationalTM::new(ed.shift_m(d.h), d.a.shift_m(d.h))?;
    let held = RationalTM::new(&d.x * &ed, d.a.clone())?;
    let b = RationalTM::from_poly(d.w.clone()).add(&through).sub(&held);
    Ok((d.a, b))
}

#[derive(Debug, Clone)]
pub struct AnnihilatorBundle {
    pub params: CablingParams,
    pub case_tag: CaseTag,
    /// Factors in left-to-right order.
    pub factors: Vec<SkewOperator>,
    pub a: IntLaurent2,
    pub b: RationalTM,
    pub p: SkewOperator,
}

impl AnnihilatorBundle {
    pub fn l_degree(&self) -> i64 {
        self.p.l_degree().unwrap_or(0)
    }
}

fn op(terms: &[(i64, IntLaurent2)]) -> SkewOperator {
    SkewOperator::from_terms(terms.iter().map(|(k, f)| (*k, RationalTM::from_poly(f.clone()))))
}

/// Builds `P = (L - 1) b^{-1} X a^{-1} Y` (or the `s = 2` variant).
pub fn build_annihilator(params: &CablingParams) -> Result<AnnihilatorBundle, AnnihilatorError> {
    let CablingParams { p, q, r, s } = *params;
    let (a, b) = build_ab(params)?;
    if b.limit_t_minus1()?.is_zero() {
        return Err(AnnihilatorError::BZero);
    }
    let one = IntLaurent2::one();
    let l_minus_1 = op(&[(1, one.clone()), (0, -&one)]);
    let b_inv = SkewOperator::constant(b.inv()?);
    let factors = if params.case_tag() == CaseTag::SEq2 {
        let pq = p * q;
        vec![
            l_minus_1,
            b_inv,
            op(&[(1, one.clone()), (0, mono(-1, -8 * pq, -4 * pq))]),
            op(&[(0, mono(1, 0, r))]),
            op(&[(1, one), (0, mono(1, -2 * r, -2 * r))]),
        ]
    } else {
        let d = case_data(params)?;
        vec![
            l_minus_1,
            b_inv,
            op(&[(d.h, one.clone()), (0, -&d.x)]),
            SkewOperator::constant(RationalTM::new(one.clone(), a.clone())?),
            op(&[(2, one), (0, mono(-1, -4 * r * s, -2 * r * s))]),
        ]
    };
    // Right to left keeps intermediate coefficients small.
    let product = factors.iter().rev().skip(1).fold(factors.last().unwrap().clone(), |acc, f| f.mul(&acc));
    Ok(AnnihilatorBundle { params: *params, case_tag: params.case_tag(), factors, a, b, p: product })
}

/// `P(-1, M, L)`, coefficientwise limits.
pub fn evaluate_annihilator_at_minus1(bundle: &AnnihilatorBundle) -> Result<LPolynomialOverM, AlgebraError> {
    let mut terms = Vec::new();
    for (k, c) in bundle.p.coeffs() {
        terms.push((k, c.limit_t_minus1()?));
    }
    Ok(LPolynomialOverM::from_terms(terms))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::KnotSequences;
    use crate::qtorus::check_annihilation;

    fn params(p: i64, q: i64, r: i64, s: i64) -> CablingParams {
        CablingParams::new(p, q, r, s).unwrap()
    }

    #[test]
    fn case_tags_and_l_degrees() {
        for (pr, tag, deg) in [
            (params(3, 2, 13, 2), CaseTag::SEq2, 3),
            (params(3, 2, 31, 3), CaseTag::SOddQ2, 4),
            (params(5, 3, 121, 4), CaseTag::SEvenGt2, 4),
            (params(5, 3, 76, 5), CaseTag::SOddQGt2, 5),
        ] {
            let bundle = build_annihilator(&pr).unwrap();
            assert_eq!(bundle.case_tag, tag);
            assert_eq!(bundle.l_degree(), deg);
        }
    }

    #[test]
    fn s2_b_matches_expansion() {
        let (_, b) = build_ab(&params(3, 2, 13, 2)).unwrap();
        let expected = &mono(1, -24, -12)
            * &IntLaurent2::from_terms([(22, 10, 1), (-18, -10, 1), (-6, -2, -1), (2, 2, -1)]);
        assert_eq!(b, RationalTM::from_poly(expected));
    }

    #[test]
    fn a_at_minus1() {
        let pr = params(3, 2, 31, 3);
        let a = a_poly(&pr).eval_t_minus1();
        assert_eq!(a, crate::algebra::IntLaurent1::from_terms([(31 - 93 - 36, 1), (-31 - 93, -1)]));
    }

    #[test]
    fn factors_remultiply_to_p() {
        for pr in [params(3, 2, 13, 2), params(3, 2, -1, 3), params(-5, 3, 7, 4)] {
            let bundle = build_annihilator(&pr).unwrap();
            let left = bundle.factors.iter().fold(SkewOperator::one(), |acc, f| acc.mul(f));
            assert_eq!(left, bundle.p);
        }
    }

    #[test]
    fn annihilates_small_cables() {
        for pr in [params(3, 2, 13, 2), params(3, 2, -1, 3), params(3, 2, 5, 2), params(-3, 2, 1, 4)] {
            let bundle = build_annihilator(&pr).unwrap();
            let seqs = KnotSequences::new(pr);
            let report = check_annihilation(&bundle.p, &*seqs.cable, 1, 6);
            assert!(report.passed, "{pr}: {report:?}");
        }
    }

    #[test]
    fn s2_shape_at_minus1() {
        let bundle = build_annihilator(&params(3, 2, 13, 2)).unwrap();
        let got = evaluate_annihilator_at_minus1(&bundle).unwrap();
        let shape = LPolynomialOverM::from_monomials(&[(1, 1, 0), (0, -1, 0)])
            .mul(&LPolynomialOverM::from_monomials(&[(1, 1, 0), (0, -1, -24)]))
            .mul(&LPolynomialOverM::from_monomials(&[(1, 1, 0), (0, 1, -26)]));
        assert!(got.projectively_equal(&shape));
    }
}
