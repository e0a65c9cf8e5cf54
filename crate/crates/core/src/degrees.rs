//! Closed-form extreme t-degrees of torus and cable colored Jones polynomials.

use rayon::prelude::*;
use serde::Serialize;

use crate::jones::{validate_torus, CablingParams, KnotSequences, ParamError};
use crate::qtorus::DiscreteSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreePrediction {
    pub lowest: Option<i64>,
    pub highest: Option<i64>,
}

/// `(1 - (-1)^k) / 2 * x`, taken literally.
fn alt(k: i64, x: i64) -> i64 {
    (1 - if k.rem_euclid(2) == 0 { 1 } else { -1 }) * x / 2
}

pub fn predicted_torus_degrees(p: i64, q: i64, n: i64) -> Result<DegreePrediction, ParamError> {
    validate_torus(p, q)?;
    if n < 1 {
        return Err(ParamError(format!("color n = {n} must be positive")));
    }
    let pq = p * q;
    let quad = -pq * n * n + pq;
    let (lowest, highest) = if p > q {
        (quad + alt(n - 1, (p - 2) * (q - 2)), 2 * (p + q - pq) * n + 2 * (pq - p - q))
    } else {
        (2 * (p - q - pq) * n + 2 * (pq - p + q), quad + alt(n - 1, (p + 2) * (q - 2)))
    };
    Ok(DegreePrediction { lowest: Some(lowest), highest: Some(highest) })
}

pub fn predicted_cable_degrees(params: &CablingParams, n: i64) -> Result<DegreePrediction, ParamError> {
    if n < 1 {
        return Err(ParamError(format!("color n = {n} must be positive")));
    }
    let CablingParams { p, q, r, s } = *params;
    let (pq, pqs) = (p * q, params.pqs());
    let pqs2 = pqs * s;
    let far = -pqs2 * n * n + (2 * pqs2 - 2 * pqs + 2 * r - 2 * r * s) * n + 2 * r * s - 2 * r + 2 * pqs - pqs2;
    let near = -r * s * n * n + r * s;
    let (lowest, highest) = if p > q {
        let sign_pq = (p - 2) * (q - 2);
        let lowest = Some(if r < pqs {
            far + alt((n - 1) * s, sign_pq)
        } else {
            near + alt(n - 1, (s - 2) * (r - pqs)) + alt((n - 1) * s, sign_pq)
        });
        (lowest, (r < 0).then(|| near + alt(n - 1, (s - 2) * (r - 2 * pq + 2 * p + 2 * q))))
    } else {
        let sign_pq = (p + 2) * (q - 2);
        let highest = Some(if r > pqs {
            far + alt((n - 1) * s, sign_pq)
        } else {
            near + alt(n - 1, (s - 2) * (r - pqs)) + alt((n - 1) * s, sign_pq)
        });
        ((r > 0).then(|| near + alt(n - 1, (s - 2) * (r - 2 * pq + 2 * p - 2 * q))), highest)
    };
    Ok(DegreePrediction { lowest, highest })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lowest,
    Highest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Knot {
    Torus,
    Cable,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub knot: Knot,
    pub n: i64,
    pub side: Side,
    pub predicted: i64,
    pub actual: i64,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeAudit {
    pub params: CablingParams,
    pub passed: bool,
    pub checked: usize,
    /// Sides with no formula, left unchecked.
    pub unpredicted: usize,
    pub rows: Vec<DegreeRow>,
}

impl DegreeAudit {
    pub fn mismatches(&self) -> impl Iterator<Item = &DegreeRow> {
        self.rows.iter().filter(|r| !r.matches)
    }
}

fn compare(knot: Knot, n: i64, pred: DegreePrediction, actual: (i64, i64), rows: &mut Vec<DegreeRow>) -> usize {
    let mut missing = 0;
    for (side, predicted, actual) in [(Side::Lowest, pred.lowest, actual.0), (Side::Highest, pred.highest, actual.1)] {
        match predicted {
            Some(predicted) => rows.push(DegreeRow { knot, n, side, predicted, actual, matches: predicted == actual }),
            None => missing += 1,
        }
    }
    missing
}

/// Compares predictions with computed polynomials for `n` in `2..=n_max`
/// (cable) and `2..=torus_n_max` (torus).
pub fn audit_degrees_with(
    seqs: &KnotSequences,
    n_max: i64,
    torus_n_max: i64,
) -> Result<DegreeAudit, ParamError> {
    let params = seqs.params;
    let CablingParams { p, q, .. } = params;
    let per_n = |knot: Knot, n: i64| -> Result<(Vec<DegreeRow>, usize), ParamError> {
        let (pred, poly) = match knot {
            Knot::Torus => (predicted_torus_degrees(p, q, n)?, seqs.torus.eval(n)),
            Knot::Cable => (predicted_cable_degrees(&params, n)?, seqs.cable.eval(n)),
        };
        let actual = poly.degree_bounds().map_err(|_| ParamError(format!("J({n}) vanishes")))?;
        let mut rows = Vec::new();
        let missing = compare(knot, n, pred, actual, &mut rows);
        Ok((rows, missing))
    };
    let jobs: Vec<(Knot, i64)> = (2..=torus_n_max)
        .map(|n| (Knot::Torus, n))
        .chain((2..=n_max).map(|n| (Knot::Cable, n)))
        .collect();
    let parts = jobs.par_iter().map(|&(k, n)| per_n(k, n)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    let mut unpredicted = 0;
    for (r, m) in parts {
        rows.extend(r);
        unpredicted += m;
    }
    Ok(DegreeAudit {
        params,
        passed: rows.iter().all(|r| r.matches),
        checked: rows.len(),
        unpredicted,
        rows,
    })
}

pub fn audit_degrees(params: &CablingParams, n_max: i64) -> Result<DegreeAudit, ParamError> {
    if n_max < 2 {
        return Err(ParamError(format!("n_max = {n_max} must be at least 2")));
    }
    audit_degrees_with(&KnotSequences::new(*params), n_max, n_max)
}
