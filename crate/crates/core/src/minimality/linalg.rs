//! Row echelon forms over `F_p` and over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field;

/// Incremental echelon form over `F_p`; pivot rows are normalized to 1.
pub struct ModEchelon {
    width: usize,
    pivots: BTreeMap<usize, Vec<u64>>,
}

impl ModEchelon {
    pub fn new(width: usize) -> Self {
        Self { width, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    /// Reduces `row` and keeps it if independent. Returns whether it was kept.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let mut col = 0;
        while col < self.width {
            if row[col] == 0 {
                col += 1;
                continue;
            }
            match self.pivots.get(&col) {
                Some(piv) => {
                    let f = row[col];
                    for j in col..self.width {
                        if piv[j] != 0 {
                            row[j] = field::sub(row[j], field::mul(f, piv[j]));
                        }
                    }
                    col += 1;
                }
                None => {
                    let inv = field::inv(row[col]);
                    for v in row[col..].iter_mut() {
                        *v = field::mul(*v, inv);
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
        false
    }

    /// A basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let free: Vec<usize> = (0..self.width).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; self.width];
                x[f] = 1;
                for (&c, row) in self.pivots.iter().rev() {
                    let s = (c + 1..self.width).fold(0, |acc, j| field::add(acc, field::mul(row[j], x[j])));
                    x[c] = field::neg(s);
                }
                x
            })
            .collect()
    }
}

pub fn mod_dot(row: &[u64], x: &[u64]) -> u64 {
    row.iter().zip(x).fold(0, |acc, (a, b)| field::add(acc, field::mul(*a, *b)))
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Echelon form over the integers, rows kept primitive.
pub struct IntEchelon {
    width: usize,
    pivots: BTreeMap<usize, Vec<BigInt>>,
}

impl IntEchelon {
    pub fn new(width: usize) -> Self {
        Self { width, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let mut col = 0;
        while col < self.width {
            if row[col].is_zero() {
                col += 1;
                continue;
            }
            match self.pivots.get(&col) {
                Some(piv) => {
                    let (a, b) = (piv[col].clone(), row[col].clone());
                    for j in col..self.width {
                        row[j] = &a * &row[j] - &b * &piv[j];
                    }
                    make_primitive(&mut row[col..]);
                    col += 1;
                }
                None => {
                    make_primitive(&mut row);
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
        false
    }

    /// A basis of the right nullspace as primitive integer vectors whose
    /// last nonzero entry is positive.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let free: Vec<usize> = (0..self.width).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.width];
                x[f] = BigRational::one();
                for (&c, row) in self.pivots.iter().rev() {
                    let mut s = BigRational::zero();
                    for j in c + 1..self.width {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            s += &x[j] * BigRational::from_integer(row[j].clone());
                        }
                    }
                    x[c] = -s / BigRational::from_integer(row[c].clone());
                }
                let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
                let mut out: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
                make_primitive(&mut out);
                if out.iter().rev().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
                    for v in out.iter_mut() {
                        *v = -&*v;
                    }
                }
                out
            })
            .collect()
    }
}

pub fn int_dot_sparse(row: &[(usize, BigInt)], x: &[BigInt]) -> BigInt {
    row.iter().map(|(j, c)| c * &x[*j]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn modular_rank_and_nullspace() {
        let mut e = ModEchelon::new(3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 1]));
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(mod_dot(&[1, 2, 3], &ns[0]), 0);
        assert_eq!(mod_dot(&[0, 1, 1], &ns[0]), 0);
    }

    #[test]
    fn integer_nullspace_is_primitive() {
        let mut e = IntEchelon::new(3);
        e.insert(big(&[2, 4, 6]));
        e.insert(big(&[0, 3, 3]));
        assert!(!e.insert(big(&[2, 7, 9])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.nullspace(), vec![big(&[-1, -1, 1])]);
    }
}
