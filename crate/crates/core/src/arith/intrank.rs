//! Incremental fraction-free rank over Z (and hence Q).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row echelon basis over the integers, kept primitive (content 1, positive
/// leading entry). Vectors are inserted one at a time; each insertion
/// reports whether the vector was independent of the rows seen so far.
#[derive(Clone, Debug, Default)]
pub struct IntegerEchelon {
    len: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new(len: usize) -> Self {
        IntegerEchelon {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            make_primitive(&mut v);
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut v);
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// Inserts a rational vector after clearing denominators.
    pub fn insert_rational(&mut self, v: &[BigRational]) -> bool {
        self.insert(clear_denominators(v))
    }
}

pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Divides by the gcd of the entries and makes the leading entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if lead_neg {
            *x = -&*x;
        }
    }
}
