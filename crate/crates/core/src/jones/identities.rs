use std::fmt;

use serde::Serialize;

use super::colored::{unknot_jones, KnotSequences};
use super::params::CablingParams;
use super::symbolic::{delta_term, direct_sum, SumKind};
use crate::algebra::IntLaurent1;
use crate::qtorus::DiscreteSequence;

/// The recurrence identities among torus and cable Jones values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `J_{T,n+2} = t^{-4pq(n+1)} J_{T,n} + t^{-2pq(n+1)} delta_n`.
    TorusStep,
    /// One-step recurrence for `q = 2`.
    Q2Step,
    /// Two-step recurrence of `J_C` through `J_{T,s(n+1)-1}`.
    CableStep,
    /// The two-step torus recurrence applied `m` times.
    Peel(i64),
    /// `Peel(s)` at index `s(n+3) - 1`, closed by `S_n`.
    PeelS,
    /// The `q = 2` recurrence applied `m` times.
    Q2Peel(i64),
    /// `Q2Peel(s)` at index `s(n+2) - 1`, closed by `U_n`; odd `s`.
    Q2PeelS,
    /// `Peel(s/2)` at index `s(n+2) - 1`, closed by `V_n`; even `s`.
    HalfPeel,
    /// The two one-step relations used for `s = 2`.
    S2Step,
}

impl IdentityId {
    pub fn name(&self) -> String {
        match self {
            IdentityId::TorusStep => "TORUS_STEP".into(),
            IdentityId::Q2Step => "Q2_STEP".into(),
            IdentityId::CableStep => "CABLE_STEP".into(),
            IdentityId::Peel(m) => format!("PEEL({m})"),
            IdentityId::PeelS => "PEEL_S".into(),
            IdentityId::Q2Peel(m) => format!("Q2_PEEL({m})"),
            IdentityId::Q2PeelS => "Q2_PEEL_S".into(),
            IdentityId::HalfPeel => "HALF_PEEL".into(),
            IdentityId::S2Step => "S2_STEP".into(),
        }
    }

    pub fn applies_to(&self, params: &CablingParams) -> bool {
        match self {
            IdentityId::Q2Step | IdentityId::Q2Peel(_) => params.q == 2,
            IdentityId::Q2PeelS => params.q == 2 && params.s % 2 == 1,
            IdentityId::HalfPeel => params.s % 2 == 0,
            IdentityId::S2Step => params.s == 2,
            _ => true,
        }
    }

    /// Every identity relevant to `params`, with peel depths up to 4.
    pub fn all_for(params: &CablingParams) -> Vec<IdentityId> {
        let mut ids = vec![IdentityId::TorusStep, IdentityId::CableStep];
        ids.extend((1..=4).map(IdentityId::Peel));
        ids.push(IdentityId::PeelS);
        ids.push(IdentityId::Q2Step);
        ids.extend((1..=4).map(IdentityId::Q2Peel));
        ids.extend([IdentityId::Q2PeelS, IdentityId::HalfPeel, IdentityId::S2Step]);
        ids.retain(|id| id.applies_to(params));
        ids
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub passed: bool,
    pub n_lo: i64,
    pub n_hi: i64,
    pub first_failure: Option<i64>,
    pub residue: Option<String>,
}

/// Checks `id` for every `n` in `[n_lo, n_hi]`.
pub fn verify_identity(id: IdentityId, params: &CablingParams, n_lo: i64, n_hi: i64) -> IdentityReport {
    verify_identity_with(&KnotSequences::new(*params), id, n_lo, n_hi)
}

pub fn verify_identity_with(seqs: &KnotSequences, id: IdentityId, n_lo: i64, n_hi: i64) -> IdentityReport {
    assert!(id.applies_to(&seqs.params), "{id} does not apply to {}", seqs.params);
    let mut failure = None;
    for n in n_lo..=n_hi {
        let residue = residue(seqs, id, n);
        if !residue.is_zero() {
            failure = Some((n, residue));
            break;
        }
    }
    IdentityReport {
        id: id.name(),
        passed: failure.is_none(),
        n_lo,
        n_hi,
        first_failure: failure.as_ref().map(|(n, _)| *n),
        residue: failure.map(|(_, r)| r.to_string()),
    }
}

/// Left side minus right side at `n`.
fn residue(seqs: &KnotSequences, id: IdentityId, n: i64) -> IntLaurent1 {
    let CablingParams { p, q, r, s } = seqs.params;
    let pq = p * q;
    let jt = |k: i64| seqs.torus.eval(k);
    let jc = |k: i64| seqs.cable.eval(k);
    match id {
        IdentityId::TorusStep => {
            let rhs = &jt(n).shift(-4 * pq * (n + 1)) + &delta_term(p, q, n).shift(-2 * pq * (n + 1));
            &*jt(n + 2) - &rhs
        }
        IdentityId::Q2Step => {
            let rhs = &unknot_jones(2 * n + 1).shift(-2 * p * n) - &jt(n).shift(-(4 * n + 2) * p);
            &*jt(n + 1) - &rhs
        }
        IdentityId::CableStep => {
            let idx = s * (n + 1) - 1;
            let coeff = IntLaurent1::from_terms([
                (2 * (r - r * s) * n - 2 * r * s + 2 * r - 4 * pq * s * (n + 1), 1),
                (2 * (-r - r * s) * n - 2 * r * s - 2 * r, -1),
            ]);
            let rhs = &(&jc(n).shift(-4 * r * s * n - 4 * r * s) + &(&coeff * &*jt(idx)))
                + &delta_term(p, q, idx).shift(2 * (r - r * s) * n - 2 * r * s + 2 * r - 2 * pq * s * (n + 1));
            &*jc(n + 2) - &rhs
        }
        IdentityId::Peel(m) => {
            let mut rhs = jt(n - 2 * m).shift(-4 * pq * m * (n + 1) + 4 * pq * m * (m + 1));
            for k in 1..=m {
                rhs += &delta_term(p, q, n - 2 * k).shift((-4 * pq * k + 2 * pq) * n + 4 * pq * k * k - 4 * pq * k + 2 * pq);
            }
            &*jt(n) - &rhs
        }
        IdentityId::PeelS => {
            let pqs = pq * s;
            let rhs = &jt(s * (n + 1) - 1).shift(-4 * pqs * s * n - 8 * pqs * s + 4 * pqs)
                + &direct_sum(SumKind::S, p, q, s, n).expect("valid sum");
            &*jt(s * (n + 3) - 1) - &rhs
        }
        IdentityId::Q2Peel(m) => {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let mut rhs = jt(n - m).shift((-4 * m * n + 2 * m * m) * p);
            if sign < 0 {
                rhs = -rhs;
            }
            for k in 1..=m {
                let term = unknot_jones(2 * n + 1 - 2 * k).shift(-(4 * k - 2) * p * n + (2 * k * k - 2 * k + 2) * p);
                if k % 2 == 1 {
                    rhs += &term;
                } else {
                    rhs -= &term;
                }
            }
            &*jt(n) - &rhs
        }
        IdentityId::Q2PeelS => {
            let rhs = &direct_sum(SumKind::U, p, q, s, n).expect("valid sum")
                - &jt(s * (n + 1) - 1).shift(-4 * p * s * s * n + 4 * p * s - 6 * p * s * s);
            &*jt(s * (n + 2) - 1) - &rhs
        }
        IdentityId::HalfPeel => {
            let pqs = pq * s;
            let rhs = &jt(s * (n + 1) - 1).shift(-2 * pqs * s * n - 3 * pqs * s + 2 * pqs)
                + &direct_sum(SumKind::V, p, q, s, n).expect("valid sum");
            &*jt(s * (n + 2) - 1) - &rhs
        }
        IdentityId::S2Step => {
            let cable = &jt(2 * n + 1).shift(-2 * r * n) - &jc(n).shift(-4 * r * n - 2 * r);
            let torus = &jt(2 * n + 1).shift(-8 * pq * (n + 1)) + &delta_term(p, q, 2 * n + 1).shift(-4 * pq * (n + 1));
            let first = &*jc(n + 1) - &cable;
            if !first.is_zero() {
                return first;
            }
            &*jt(2 * n + 3) - &torus
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_on_small_tuples() {
        for (p, q, r, s) in [(3, 2, 13, 2), (3, 2, 31, 3), (5, 3, 121, 4), (5, 3, -1, 3), (-5, 3, -7, 2)] {
            let params = CablingParams::new(p, q, r, s).unwrap();
            let seqs = KnotSequences::new(params);
            for id in IdentityId::all_for(&params) {
                let report = verify_identity_with(&seqs, id, 1, 5);
                assert!(report.passed, "{id} failed for {params}: {report:?}");
            }
        }
    }

    #[test]
    fn printed_peel_s_sign_fails() {
        // The variant with -4pqs in the prefactor does not hold.
        let params = CablingParams::new(5, 3, 76, 3).unwrap();
        let seqs = KnotSequences::new(params);
        let (p, q, s) = (5, 3, 3);
        let pqs = p * q * s;
        let n = 1;
        let rhs = &seqs.torus.eval(s * (n + 1) - 1).shift(-4 * pqs * s * n - 8 * pqs * s - 4 * pqs)
            + &direct_sum(SumKind::S, p, q, s, n).unwrap();
        assert_ne!(*seqs.torus.eval(s * (n + 3) - 1), rhs);
    }
}
