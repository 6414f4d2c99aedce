//! Row reduction over `F_p`, `p = 2^61 − 1`. Used as a cheap rank lower
//! bound: the rank of rational vectors is at least their rank mod `p`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::vector::SparseVec;
use crate::rational::Rational;

pub const MODULUS: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, MODULUS - 2)
}

fn reduce_big(x: &BigInt) -> u64 {
    let r = x % BigInt::from(MODULUS);
    let r = r.to_i128().expect("remainder fits");
    r.rem_euclid(MODULUS as i128) as u64
}

/// `x mod p`, or `None` when the denominator vanishes mod `p`.
pub fn reduce(x: &Rational) -> Option<u64> {
    let d = reduce_big(&x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_big(&x.numer()), inv(d)))
}

/// Incremental dense echelon form over `F_p`.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    ambient: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModpEchelon {
    pub fn new(ambient: usize) -> Self {
        ModpEchelon {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v mod p`; returns whether the rank grew. Vectors with a
    /// denominator divisible by `p` are rejected (`false`).
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut dense = vec![0u64; self.ambient];
        for (i, x) in v.entries() {
            match reduce(x) {
                Some(y) => dense[*i] = y,
                None => return false,
            }
        }
        for (pivot, row) in &self.rows {
            let c = dense[*pivot];
            if c != 0 {
                let neg = MODULUS - c;
                for (d, &r) in dense.iter_mut().zip(row) {
                    if r != 0 {
                        *d = (*d + mul(neg, r)) % MODULUS;
                    }
                }
            }
        }
        let Some(pivot) = dense.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(dense[pivot]);
        for d in dense.iter_mut() {
            *d = mul(*d, s);
        }
        self.rows.push((pivot, dense));
        true
    }
}
