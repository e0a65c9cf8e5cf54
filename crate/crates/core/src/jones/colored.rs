use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::params::{validate_torus, CablingParams, ParamError};
use crate::algebra::IntLaurent1;
use crate::qtorus::DiscreteSequence;

/// Balanced quantum integer `(t^{2n} - t^{-2n}) / (t^2 - t^{-2})`.
pub fn unknot_jones(n: i64) -> IntLaurent1 {
    let mut acc = HashMap::new();
    add_unknot(&mut acc, n, 0, 1);
    collect(acc)
}

/// Adds `sign * t^shift * J_{U,n}` into `acc`.
fn add_unknot(acc: &mut HashMap<i64, i64>, n: i64, shift: i64, sign: i64) {
    let sign = sign * n.signum();
    let k = n.abs();
    for j in 0..k {
        *acc.entry(shift + 2 * (k - 1) - 4 * j).or_insert(0) += sign;
    }
}

fn collect(acc: HashMap<i64, i64>) -> IntLaurent1 {
    IntLaurent1::from_terms(acc.into_iter().filter(|(_, c)| *c != 0))
}

/// Colored Jones of the `(p, q)`-torus knot by direct summation.
///
/// The half-integer index `k` runs as `m = 2k` over integers with
/// `m = n - 1 (mod 2)`.
pub fn torus_jones(p: i64, q: i64, n: i64) -> Result<IntLaurent1, ParamError> {
    validate_torus(p, q)?;
    Ok(torus_jones_unchecked(p, q, n))
}

fn torus_jones_unchecked(p: i64, q: i64, n: i64) -> IntLaurent1 {
    if n == 0 {
        return IntLaurent1::zero();
    }
    if n < 0 {
        return -torus_jones_unchecked(p, q, -n);
    }
    let base = -p * q * (n * n - 1);
    let mut acc = HashMap::new();
    for m in (-(n - 1)..=(n - 1)).step_by(2) {
        add_unknot(&mut acc, m * q + 1, base + p * q * m * m + 2 * p * m, 1);
    }
    collect(acc)
}

/// Colored Jones of the torus knot by iterating the two-step recurrence
/// from `J_{T,0} = 0`, `J_{T,1} = 1`. Returns indices `0..=n_max`.
pub fn torus_jones_by_recurrence(p: i64, q: i64, n_max: i64) -> Result<Vec<IntLaurent1>, ParamError> {
    validate_torus(p, q)?;
    let mut out = vec![IntLaurent1::zero(), IntLaurent1::one()];
    for n in 0..=(n_max - 2) {
        let prev = out[n as usize].shift(-4 * p * q * (n + 1));
        let next = &prev + &super::delta_term(p, q, n).shift(-2 * p * q * (n + 1));
        out.push(next);
    }
    out.truncate((n_max + 1).max(0) as usize);
    Ok(out)
}

fn cable_from<S: DiscreteSequence + ?Sized>(params: &CablingParams, torus: &S, n: i64) -> IntLaurent1 {
    if n == 0 {
        return IntLaurent1::zero();
    }
    if n < 0 {
        return -cable_from(params, torus, -n);
    }
    let (r, s) = (params.r, params.s);
    let base = -r * s * (n * n - 1);
    let mut acc: HashMap<i64, i64> = HashMap::new();
    let mut wide: HashMap<i64, BigInt> = HashMap::new();
    for m in (-(n - 1)..=(n - 1)).step_by(2) {
        let shift = base + r * s * m * m + 2 * r * m;
        let jt = torus.eval(m * s + 1);
        for (e, c) in jt.terms() {
            match c.to_i64() {
                Some(v) => *acc.entry(e + shift).or_insert(0) += v,
                None => *wide.entry(e + shift).or_default() += c,
            }
        }
    }
    IntLaurent1::from_terms(acc.into_iter().map(|(e, c)| (e, BigInt::from(c))).chain(wide))
}

/// Colored Jones of the `(r, s)`-cable over the `(p, q)`-torus knot.
pub fn cabled_jones(params: &CablingParams, n: i64) -> IntLaurent1 {
    let torus = TorusSequence::new(params.p, params.q).expect("validated parameters");
    cable_from(params, &torus, n)
}

type Cache = RwLock<HashMap<i64, Arc<IntLaurent1>>>;

fn cached(cache: &Cache, n: i64, compute: impl FnOnce() -> IntLaurent1) -> Arc<IntLaurent1> {
    if let Some(v) = cache.read().unwrap().get(&n) {
        return Arc::clone(v);
    }
    let value = Arc::new(compute());
    Arc::clone(cache.write().unwrap().entry(n).or_insert(value))
}

/// Memoized `n -> J_{T,n}`; negative `n` is served by odd symmetry.
pub struct TorusSequence {
    p: i64,
    q: i64,
    cache: Cache,
}

impl TorusSequence {
    pub fn new(p: i64, q: i64) -> Result<Self, ParamError> {
        validate_torus(p, q)?;
        Ok(Self { p, q, cache: RwLock::new(HashMap::new()) })
    }
}

impl DiscreteSequence for TorusSequence {
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        match n {
            0 => Arc::new(IntLaurent1::zero()),
            n if n < 0 => Arc::new(-&*self.eval(-n)),
            n => cached(&self.cache, n, || torus_jones_unchecked(self.p, self.q, n)),
        }
    }
}

/// Memoized `n -> J_{C,n}` sharing a torus memo.
pub struct CableSequence {
    params: CablingParams,
    torus: Arc<TorusSequence>,
    cache: Cache,
}

impl CableSequence {
    pub fn new(params: CablingParams, torus: Arc<TorusSequence>) -> Self {
        Self { params, torus, cache: RwLock::new(HashMap::new()) }
    }

    pub fn torus(&self) -> &Arc<TorusSequence> {
        &self.torus
    }
}

impl DiscreteSequence for CableSequence {
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        match n {
            0 => Arc::new(IntLaurent1::zero()),
            n if n < 0 => Arc::new(-&*self.eval(-n)),
            n => cached(&self.cache, n, || cable_from(&self.params, &*self.torus, n)),
        }
    }
}

/// `n -> J_{U,n}`.
pub struct UnknotSequence;

impl DiscreteSequence for UnknotSequence {
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        Arc::new(unknot_jones(n))
    }
}

/// Shared sequences for one parameter tuple.
pub struct KnotSequences {
    pub params: CablingParams,
    pub torus: Arc<TorusSequence>,
    pub cable: Arc<CableSequence>,
}

impl KnotSequences {
    pub fn new(params: CablingParams) -> Self {
        let torus = Arc::new(TorusSequence::new(params.p, params.q).expect("validated parameters"));
        let cable = Arc::new(CableSequence::new(params, Arc::clone(&torus)));
        Self { params, torus, cable }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> IntLaurent1 {
        IntLaurent1::from_terms(terms.iter().copied())
    }

    #[test]
    fn unknot_values() {
        assert_eq!(unknot_jones(1), IntLaurent1::one());
        assert_eq!(unknot_jones(2), p(&[(2, 1), (-2, 1)]));
        assert_eq!(unknot_jones(-3), p(&[(4, -1), (0, -1), (-4, -1)]));
        assert!(unknot_jones(0).is_zero());
    }

    #[test]
    fn trefoil_values() {
        assert_eq!(torus_jones(3, 2, 1).unwrap(), IntLaurent1::one());
        assert_eq!(torus_jones(3, 2, 2).unwrap(), p(&[(-2, 1), (-6, 1), (-10, 1), (-18, -1)]));
        let j3 = p(&[(-4, 1), (-8, 1), (-12, 1), (-16, 1), (-20, 1), (-32, -1), (-36, -1), (-40, -1), (-48, 1)]);
        assert_eq!(torus_jones(3, 2, 3).unwrap(), j3);
        assert_eq!(torus_jones(3, 2, -3).unwrap(), -j3);
        assert!(torus_jones(2, 3, 1).is_err());
    }

    #[test]
    fn cable_values() {
        let params = CablingParams::new(3, 2, 13, 2).unwrap();
        let expect = p(&[(-30, 1), (-34, 1), (-38, 1), (-42, 1), (-46, 1), (-58, -1), (-62, -1), (-66, -1), (-74, 1), (-78, -1)]);
        assert_eq!(cabled_jones(&params, 2), expect);
        assert_eq!(cabled_jones(&params, 1), IntLaurent1::one());
        assert!(cabled_jones(&params, 0).is_zero());
        let seq = KnotSequences::new(params);
        assert_eq!(*seq.cable.eval(2), expect);
        assert_eq!(*seq.cable.eval(-2), -expect);
    }

    #[test]
    fn recurrence_oracle_matches_direct_sum() {
        let rec = torus_jones_by_recurrence(3, 2, 3).unwrap();
        assert_eq!(rec.len(), 4);
        for (n, v) in rec.iter().enumerate() {
            assert_eq!(*v, torus_jones(3, 2, n as i64).unwrap());
        }
    }
}
