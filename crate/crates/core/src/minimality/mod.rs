//! Bounded searches for annihilators of lower L-degree.
//!
//! Two modes. The exact search takes integer coefficients of `t^a M^b L^i`
//! in a box and solves the homogeneous system over the rationals. The
//! screen fixes `t` at a point of `F_p` and lets each `D_i` be an arbitrary
//! polynomial in `M` of bounded width; full rank there rules out every
//! annihilator with that `M`-width over `Q(t)`, whatever its `t`-degrees.
//!
//! A "none" verdict is evidence inside the box only.

pub mod field;
pub mod linalg;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::aj::{build_annihilator, AnnihilatorError};
use crate::algebra::{IntLaurent1, IntLaurent2, RationalTM};
use crate::jones::{CablingParams, KnotSequences};
use crate::qtorus::{check_annihilation, DiscreteSequence, SkewOperator};
use linalg::{int_dot_sparse, mod_dot, IntEchelon, ModEchelon};

/// Largest default `M` half-width for the screen.
pub const DEFAULT_M_SPAN_CAP: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinimalityError {
    #[error("system too small: {equations} equations for {unknowns} unknowns (need at least twice as many)")]
    SystemTooSmall { equations: usize, unknowns: usize },
    #[error("bad search bounds: {0}")]
    BadBounds(String),
    #[error(transparent)]
    Annihilator(#[from] AnnihilatorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub l_degree: i64,
    /// `None` selects the screen with `t` specialized.
    pub t_span: Option<i64>,
    pub m_span: i64,
    pub n_lo: i64,
    pub n_hi: i64,
}

impl SearchBounds {
    fn validate(&self) -> Result<(), MinimalityError> {
        let bad = |m: &str| Err(MinimalityError::BadBounds(m.into()));
        if self.l_degree < 1 {
            return bad("L-degree must be at least 1");
        }
        if self.m_span < 0 || self.t_span.is_some_and(|t| t < 0) {
            return bad("spans must be nonnegative");
        }
        if self.n_lo < 1 || self.n_hi < self.n_lo {
            return bad("need 1 <= n_lo <= n_hi");
        }
        Ok(())
    }

    fn t_width(&self) -> usize {
        self.t_span.map_or(1, |t| 2 * t as usize + 1)
    }

    fn m_width(&self) -> usize {
        2 * self.m_span as usize + 1
    }

    pub fn unknowns(&self) -> usize {
        (self.l_degree as usize + 1) * self.t_width() * self.m_width()
    }

    /// Column of the coefficient of `t^a M^b L^i`.
    fn column(&self, i: i64, a: i64, b: i64) -> usize {
        let ts = self.t_span.unwrap_or(0);
        ((i as usize * self.t_width()) + (a + ts) as usize) * self.m_width() + (b + self.m_span) as usize
    }

    fn unpack(&self, col: usize) -> (i64, i64, i64) {
        let ts = self.t_span.unwrap_or(0);
        let b = (col % self.m_width()) as i64 - self.m_span;
        let rest = col / self.m_width();
        let a = (rest % self.t_width()) as i64 - ts;
        (rest as i64 / self.t_width() as i64, a, b)
    }

    /// Smallest `n_hi` from `n_lo` for which the screen is overdetermined.
    pub fn screen_n_hi(l_degree: i64, m_span: i64, n_lo: i64) -> i64 {
        let unknowns = (l_degree + 1) * (2 * m_span + 1);
        n_lo + 2 * unknowns + 7
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    Screen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NoAnnihilatorWithinBounds,
    Found,
    /// A solution on the searched range failed on a wider range.
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::NoAnnihilatorWithinBounds => "no annihilator within bounds",
            Verdict::Found => "annihilator found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub bounds: SearchBounds,
    pub l_degree_searched: i64,
    pub unknowns: usize,
    pub equations: usize,
    pub nullity: usize,
    pub verdict: Verdict,
    /// A nullspace element of least L-degree, exact mode only.
    pub operator: Option<String>,
    #[serde(skip)]
    pub basis: Vec<SkewOperator>,
    #[serde(skip)]
    basis_vectors: Vec<Vec<BigInt>>,
}

impl SearchReport {
    /// Whether `op` lies in the span of the exact nullspace.
    pub fn nullspace_contains(&self, op: &SkewOperator) -> bool {
        let Some(v) = operator_vector(op, &self.bounds) else {
            return false;
        };
        let mut ech = IntEchelon::new(self.unknowns);
        for b in &self.basis_vectors {
            ech.insert(b.clone());
        }
        !ech.insert(v)
    }
}

fn operator_vector(op: &SkewOperator, bounds: &SearchBounds) -> Option<Vec<BigInt>> {
    let ts = bounds.t_span?;
    let mut v = vec![BigInt::zero(); bounds.unknowns()];
    for (i, c) in op.coeffs() {
        if !c.den().is_one() || !(0..=bounds.l_degree).contains(&i) {
            return None;
        }
        for (a, b, coeff) in c.num().iter() {
            if a.abs() > ts || b.abs() > bounds.m_span {
                return None;
            }
            v[bounds.column(i, a, b)] = coeff.clone();
        }
    }
    Some(v)
}

fn vector_operator(v: &[BigInt], bounds: &SearchBounds) -> SkewOperator {
    let mut per_l: BTreeMap<i64, Vec<(i64, i64, BigInt)>> = BTreeMap::new();
    for (col, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (i, a, b) = bounds.unpack(col);
        per_l.entry(i).or_default().push((a, b, c.clone()));
    }
    SkewOperator::from_terms(
        per_l.into_iter().map(|(i, terms)| (i, RationalTM::from_poly(IntLaurent2::from_terms(terms)))),
    )
}

/// Sparse rows of the exact system, one per `(n, t-exponent)`.
fn exact_rows<S: DiscreteSequence + ?Sized>(seq: &S, bounds: &SearchBounds) -> Vec<Vec<(usize, BigInt)>> {
    let ts = bounds.t_span.expect("exact mode");
    let per_n = |n: i64| {
        let mut rows: HashMap<i64, Vec<(usize, BigInt)>> = HashMap::new();
        for i in 0..=bounds.l_degree {
            let j = seq.eval(n + i);
            for a in -ts..=ts {
                for b in -bounds.m_span..=bounds.m_span {
                    let col = bounds.column(i, a, b);
                    let shift = a + 2 * n * b;
                    for (e, c) in j.terms() {
                        rows.entry(e + shift).or_default().push((col, c.clone()));
                    }
                }
            }
        }
        let mut rows: Vec<(i64, Vec<(usize, BigInt)>)> = rows.into_iter().collect();
        rows.sort_by_key(|(e, _)| *e);
        rows.into_iter().map(|(_, mut r)| {
            r.sort_by_key(|(c, _)| *c);
            r
        })
        .collect::<Vec<_>>()
    };
    let parts: Vec<Vec<Vec<(usize, BigInt)>>> = (bounds.n_lo..=bounds.n_hi).into_par_iter().map(per_n).collect();
    parts.into_iter().flatten().collect()
}

/// Upper bound on the number of exact equations, from degree ranges alone.
fn exact_equation_bound<S: DiscreteSequence + ?Sized>(seq: &S, bounds: &SearchBounds) -> usize {
    let ts = bounds.t_span.unwrap_or(0);
    (bounds.n_lo..=bounds.n_hi)
        .map(|n| {
            let ranges: Vec<(i64, i64)> =
                (0..=bounds.l_degree).filter_map(|i| seq.eval(n + i).degree_bounds().ok()).collect();
            let mut spans: Vec<(i64, i64)> = ranges
                .iter()
                .flat_map(|&(lo, hi)| {
                    (-bounds.m_span..=bounds.m_span).map(move |b| (lo + 2 * n * b - ts, hi + 2 * n * b + ts))
                })
                .collect();
            spans.sort_unstable();
            let mut total = 0i64;
            let mut cur: Option<(i64, i64)> = None;
            for (lo, hi) in spans {
                cur = match cur {
                    Some((clo, chi)) if lo <= chi + 1 => Some((clo, chi.max(hi))),
                    Some((clo, chi)) => {
                        total += chi - clo + 1;
                        Some((lo, hi))
                    }
                    None => Some((lo, hi)),
                };
            }
            if let Some((clo, chi)) = cur {
                total += chi - clo + 1;
            }
            total as usize
        })
        .sum()
}

fn too_small(equations: usize, unknowns: usize) -> Result<(), MinimalityError> {
    if equations < 2 * unknowns {
        return Err(MinimalityError::SystemTooSmall { equations, unknowns });
    }
    Ok(())
}

fn wider(bounds: &SearchBounds) -> i64 {
    ((bounds.n_hi - bounds.n_lo + 1) / 2).max(4)
}

/// Exact box search over integer coefficients.
pub fn search_exact<S: DiscreteSequence + ?Sized>(seq: &S, bounds: &SearchBounds) -> Result<SearchReport, MinimalityError> {
    bounds.validate()?;
    if bounds.t_span.is_none() {
        return Err(MinimalityError::BadBounds("exact search needs a t-span".into()));
    }
    let unknowns = bounds.unknowns();
    too_small(exact_equation_bound(seq, bounds), unknowns)?;
    let rows = exact_rows(seq, bounds);
    let equations = rows.len();
    too_small(equations, unknowns)?;

    // Rows independent mod p seed the exact elimination.
    let mut modular = ModEchelon::new(unknowns);
    let mut chosen = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut dense = vec![0u64; unknowns];
        for (j, c) in row {
            dense[*j] = field::from_bigint(c);
        }
        if modular.insert(dense) {
            chosen.push(k);
            if modular.is_full() {
                break;
            }
        }
    }
    let dense = |row: &[(usize, BigInt)]| {
        let mut d = vec![BigInt::zero(); unknowns];
        for (j, c) in row {
            d[*j] = c.clone();
        }
        d
    };
    let basis_vectors = if modular.is_full() {
        Vec::new()
    } else {
        let mut ech = IntEchelon::new(unknowns);
        for &k in &chosen {
            ech.insert(dense(&rows[k]));
        }
        let candidate = ech.nullspace();
        let all_hold = candidate.iter().all(|x| rows.iter().all(|r| int_dot_sparse(r, x).is_zero()));
        if all_hold {
            candidate
        } else {
            let mut ech = IntEchelon::new(unknowns);
            for r in &rows {
                ech.insert(dense(r));
            }
            ech.nullspace()
        }
    };

    let mut basis: Vec<SkewOperator> = basis_vectors.iter().map(|v| vector_operator(v, bounds)).collect();
    basis.sort_by_key(|op| (op.l_degree(), op.coeffs().map(|(_, c)| c.num().len()).sum::<usize>()));
    let operator = basis.first().cloned();
    let verdict = match &operator {
        None => Verdict::NoAnnihilatorWithinBounds,
        Some(op) => {
            let hi = bounds.n_hi + wider(bounds);
            if check_annihilation(op, seq, bounds.n_lo, hi).passed {
                Verdict::Found
            } else {
                Verdict::Inconclusive
            }
        }
    };
    Ok(SearchReport {
        mode: SearchMode::Exact,
        bounds: *bounds,
        l_degree_searched: bounds.l_degree,
        unknowns,
        equations,
        nullity: basis_vectors.len(),
        verdict,
        operator: operator.map(|op| op.to_text()),
        basis,
        basis_vectors,
    })
}

/// Row for `n` of the screen: `tau^{2nb} f(n + i)` in column `(i, b)`.
fn screen_row(values: &[u64], n: i64, bounds: &SearchBounds, tau: u64) -> Vec<u64> {
    let mut row = vec![0u64; bounds.unknowns()];
    let m = field::pow(tau, 2 * n);
    let m_inv = field::inv(m);
    for i in 0..=bounds.l_degree {
        let f = values[(n + i) as usize];
        let mut x = field::mul(f, field::pow(m_inv, bounds.m_span));
        for b in -bounds.m_span..=bounds.m_span {
            row[bounds.column(i, 0, b)] = x;
            x = field::mul(x, m);
        }
    }
    row
}

/// Screen with `t` specialized; `values[n]` must be `f(n)(tau)` for
/// `n` up to `n_hi + l_degree + wider(bounds)`.
fn screen_values(values: &[u64], bounds: &SearchBounds, tau: u64) -> Result<SearchReport, MinimalityError> {
    bounds.validate()?;
    let unknowns = bounds.unknowns();
    let equations = (bounds.n_hi - bounds.n_lo + 1) as usize;
    too_small(equations, unknowns)?;
    let mut ech = ModEchelon::new(unknowns);
    for n in bounds.n_lo..=bounds.n_hi {
        ech.insert(screen_row(values, n, bounds, tau));
        if ech.is_full() {
            break;
        }
    }
    let nullity = unknowns - ech.rank();
    let verdict = if nullity == 0 {
        Verdict::NoAnnihilatorWithinBounds
    } else {
        let x = &ech.nullspace()[0];
        let extra = bounds.n_hi + 1..=bounds.n_hi + wider(bounds);
        if extra.into_iter().all(|n| mod_dot(&screen_row(values, n, bounds, tau), x) == 0) {
            Verdict::Found
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(SearchReport {
        mode: SearchMode::Screen,
        bounds: *bounds,
        l_degree_searched: bounds.l_degree,
        unknowns,
        equations,
        nullity,
        verdict,
        operator: None,
        basis: Vec::new(),
        basis_vectors: Vec::new(),
    })
}

fn values_needed(bounds: &SearchBounds) -> i64 {
    bounds.n_hi + bounds.l_degree + wider(bounds)
}

/// Screen for an arbitrary sequence, evaluating its polynomials at `tau`.
pub fn screen_sequence<S: DiscreteSequence + ?Sized>(seq: &S, bounds: &SearchBounds) -> Result<SearchReport, MinimalityError> {
    bounds.validate()?;
    let values: Vec<u64> = (0..=values_needed(bounds)).map(|n| field::eval_at(&seq.eval(n), field::TAU)).collect();
    screen_values(&values, bounds, field::TAU)
}

/// Search for an annihilator of `J_{C,n}` within `bounds`.
pub fn search_bounded_annihilator(params: &CablingParams, bounds: &SearchBounds) -> Result<SearchReport, MinimalityError> {
    bounds.validate()?;
    match bounds.t_span {
        Some(_) => search_exact(&*KnotSequences::new(*params).cable, bounds),
        None => {
            too_small((bounds.n_hi - bounds.n_lo + 1) as usize, bounds.unknowns())?;
            let values = field::cable_values(params, values_needed(bounds), field::TAU);
            screen_values(&values, bounds, field::TAU)
        }
    }
}

/// `M`-width of the cleared constructed annihilator.
pub fn annihilator_m_width(params: &CablingParams) -> Result<i64, MinimalityError> {
    let bundle = build_annihilator(params)?;
    let (cleared, _) = bundle.p.clear_denominators();
    let (lo, hi) = cleared
        .coeffs()
        .filter_map(|(_, c)| c.num().m_bounds())
        .fold((i64::MAX, i64::MIN), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
    Ok(hi - lo)
}

/// Screen one L-degree below the constructed annihilator. The `M`
/// half-width is the constructed support width, capped.
pub fn default_bounds(params: &CablingParams) -> Result<SearchBounds, MinimalityError> {
    let l_degree = build_annihilator(params)?.l_degree() - 1;
    let m_span = annihilator_m_width(params)?.min(DEFAULT_M_SPAN_CAP);
    Ok(SearchBounds {
        l_degree,
        t_span: None,
        m_span,
        n_lo: 1,
        n_hi: SearchBounds::screen_n_hi(l_degree, m_span, 1),
    })
}

/// `L^2 - (t^2 + t^-2) L + 1`.
pub fn unknot_recurrence() -> SkewOperator {
    let c = |t: &[(i64, i64)]| RationalTM::from_poly(IntLaurent2::from_t(&IntLaurent1::from_terms(t.iter().copied())));
    SkewOperator::from_terms([(2, c(&[(0, 1)])), (1, c(&[(2, -1), (-2, -1)])), (0, c(&[(0, 1)]))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::UnknotSequence;

    fn exact(l: i64, span: i64, n_hi: i64) -> SearchBounds {
        SearchBounds { l_degree: l, t_span: Some(span), m_span: span, n_lo: 1, n_hi }
    }

    #[test]
    fn columns_round_trip() {
        let b = exact(2, 3, 10);
        for col in 0..b.unknowns() {
            let (i, t, m) = b.unpack(col);
            assert_eq!(b.column(i, t, m), col);
        }
    }

    #[test]
    fn unknot_degree_two_contains_quantum_recurrence() {
        let report = search_exact(&UnknotSequence, &exact(2, 4, 10)).unwrap();
        assert_eq!(report.verdict, Verdict::Found);
        assert!(report.nullspace_contains(&unknot_recurrence()));
    }

    #[test]
    fn unknot_degree_one_has_first_order_recurrence() {
        // (M^2 - 1) L - (t^2 M^2 - t^-2) annihilates the quantum integers.
        let report = search_exact(&UnknotSequence, &exact(1, 4, 10)).unwrap();
        assert_eq!(report.verdict, Verdict::Found);
        let first = SkewOperator::from_terms([
            (1, RationalTM::from_poly(IntLaurent2::from_terms([(0, 2, 1), (0, 0, -1)]))),
            (0, RationalTM::from_poly(IntLaurent2::from_terms([(2, 2, -1), (-2, 0, 1)]))),
        ]);
        assert!(report.nullspace_contains(&first));
        assert!(check_annihilation(&first, &UnknotSequence, 1, 20).passed);
    }

    #[test]
    fn unknot_without_m_has_no_first_order_recurrence() {
        let b = SearchBounds { l_degree: 1, t_span: Some(4), m_span: 0, n_lo: 1, n_hi: 10 };
        let report = search_exact(&UnknotSequence, &b).unwrap();
        assert_eq!(report.verdict, Verdict::NoAnnihilatorWithinBounds);
    }

    #[test]
    fn screen_agrees_on_unknot() {
        let none = SearchBounds { l_degree: 1, t_span: None, m_span: 0, n_lo: 1, n_hi: 20 };
        assert_eq!(screen_sequence(&UnknotSequence, &none).unwrap().verdict, Verdict::NoAnnihilatorWithinBounds);
        let some = SearchBounds { l_degree: 1, t_span: None, m_span: 1, n_lo: 1, n_hi: 20 };
        assert_eq!(screen_sequence(&UnknotSequence, &some).unwrap().verdict, Verdict::Found);
    }

    #[test]
    fn too_small_is_reported() {
        let b = SearchBounds { l_degree: 2, t_span: None, m_span: 5, n_lo: 1, n_hi: 10 };
        assert!(matches!(screen_sequence(&UnknotSequence, &b), Err(MinimalityError::SystemTooSmall { .. })));
        let params = CablingParams::new(3, 2, 13, 2).unwrap();
        let huge = SearchBounds { l_degree: 2, t_span: Some(296), m_span: 100, n_lo: 1, n_hi: 14 };
        assert!(matches!(search_bounded_annihilator(&params, &huge), Err(MinimalityError::SystemTooSmall { .. })));
    }

    #[test]
    fn s2_cable_screen() {
        let params = CablingParams::new(3, 2, 13, 2).unwrap();
        let bounds = default_bounds(&params).unwrap();
        assert_eq!(bounds.l_degree, 2);
        let report = search_bounded_annihilator(&params, &bounds).unwrap();
        assert_eq!(report.verdict, Verdict::NoAnnihilatorWithinBounds);
        let m_span = (annihilator_m_width(&params).unwrap() + 1) / 2;
        let at_degree = SearchBounds { l_degree: 3, m_span, n_hi: SearchBounds::screen_n_hi(3, m_span, 1), ..bounds };
        assert_eq!(search_bounded_annihilator(&params, &at_degree).unwrap().verdict, Verdict::Found);
    }
}
