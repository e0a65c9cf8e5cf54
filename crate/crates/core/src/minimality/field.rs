//! Arithmetic modulo the Mersenne prime `2^61 - 1`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::IntLaurent1;
use crate::jones::CablingParams;

pub const MODULUS: u64 = (1 << 61) - 1;

/// Fixed evaluation point for `t`; its multiplicative order is far beyond
/// any exponent that occurs here.
pub const TAU: u64 = 0x1d5c_28a1_9e37_b3f1 % MODULUS;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

#[inline]
pub fn neg(a: u64) -> u64 {
    sub(0, a)
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let s = (x as u64 & MODULUS) + (x >> 61) as u64;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn pow_u(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

/// `base^e` for any integer `e`; `base` must be nonzero when `e < 0`.
pub fn pow(base: u64, e: i64) -> u64 {
    pow_u(base, e.rem_euclid(MODULUS as i64 - 1) as u64)
}

pub fn inv(a: u64) -> u64 {
    assert_ne!(a, 0, "inverse of zero");
    pow_u(a, MODULUS - 2)
}

pub fn from_i64(v: i64) -> u64 {
    v.rem_euclid(MODULUS as i64) as u64
}

pub fn from_bigint(v: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("reduced residue")
}

/// `f(tau)`.
pub fn eval_at(f: &IntLaurent1, tau: u64) -> u64 {
    f.terms().iter().fold(0, |acc, (e, c)| add(acc, mul(from_bigint(c), pow(tau, *e))))
}

/// `J_{T,j}(tau)` for `j` in `0..=j_max`, by the torus sum with running
/// partial sums.
pub fn torus_values(p: i64, q: i64, j_max: i64, tau: u64) -> Vec<u64> {
    let pq = p * q;
    let inv_den = inv(sub(pow(tau, 2), pow(tau, -2)));
    let term = |m: i64| {
        let x = m * q + 1;
        mul(pow(tau, pq * m * m + 2 * p * m), sub(pow(tau, 2 * x), pow(tau, -2 * x)))
    };
    let mut sums: Vec<u64> = Vec::with_capacity(j_max.max(1) as usize + 1);
    let mut out = vec![0u64];
    for j in 1..=j_max {
        let s = match j {
            1 => term(0),
            2 => add(term(-1), term(1)),
            _ => add(sums[j as usize - 3], add(term(j - 1), term(1 - j))),
        };
        sums.push(s);
        out.push(mul(mul(pow(tau, -pq * (j * j - 1)), s), inv_den));
    }
    out
}

/// `J_{C,n}(tau)` for `n` in `0..=n_max`.
pub fn cable_values(params: &CablingParams, n_max: i64, tau: u64) -> Vec<u64> {
    let CablingParams { p, q, r, s } = *params;
    let torus = torus_values(p, q, n_max * s + 1, tau);
    let jt = |j: i64| if j >= 0 { torus[j as usize] } else { neg(torus[(-j) as usize]) };
    let term = |m: i64| mul(pow(tau, r * s * m * m + 2 * r * m), jt(m * s + 1));
    let mut sums: Vec<u64> = Vec::new();
    let mut out = vec![0u64];
    for n in 1..=n_max {
        let c = match n {
            1 => term(0),
            2 => add(term(-1), term(1)),
            _ => add(sums[n as usize - 3], add(term(n - 1), term(1 - n))),
        };
        sums.push(c);
        out.push(mul(pow(tau, -r * s * (n * n - 1)), c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::{cabled_jones, torus_jones};

    #[test]
    fn field_basics() {
        let a = from_i64(-5);
        assert_eq!(add(a, 5), 0);
        assert_eq!(mul(inv(a), a), 1);
        assert_eq!(mul(pow(TAU, -7), pow(TAU, 7)), 1);
        assert_eq!(from_bigint(&BigInt::from(-1)), MODULUS - 1);
    }

    #[test]
    fn torus_values_match_polynomials() {
        for (p, q) in [(3, 2), (-5, 3)] {
            let vals = torus_values(p, q, 9, TAU);
            for j in 1..=9 {
                assert_eq!(vals[j as usize], eval_at(&torus_jones(p, q, j).unwrap(), TAU), "({p},{q}) j={j}");
            }
        }
    }

    #[test]
    fn cable_values_match_polynomials() {
        for params in [CablingParams::new(3, 2, 13, 2).unwrap(), CablingParams::new(-3, 2, -7, 3).unwrap()] {
            let vals = cable_values(&params, 6, TAU);
            for n in 1..=6 {
                assert_eq!(vals[n as usize], eval_at(&cabled_jones(&params, n), TAU), "{params} n={n}");
            }
        }
    }
}
