//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored as coordinate vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` modulo the N-th cyclotomic polynomial, so every
//! element has exactly one representation and equality is coefficient-wise.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field Q(ζ_N) together with the reduction data needed for products.
#[derive(Debug)]
pub struct CyclotomicField {
    order: usize,
    /// Φ_N as integer coefficients, lowest degree first; monic of degree φ(N).
    modulus: Vec<BigInt>,
    /// `x^k mod Φ_N` for `k < 2·φ(N) - 1`.
    powers: Vec<Vec<BigRational>>,
}

pub type FieldRef = Arc<CyclotomicField>;

/// Fields are determined by their order.
impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(order: usize) -> FieldRef {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(2 * phi);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..(2 * phi).max(1) {
            powers.push(cur.clone());
            cur = shift_reduce(&cur, &modulus);
        }
        Arc::new(CyclotomicField {
            order,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree of the extension, φ(N).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Multiply a reduced polynomial by x and reduce modulo the monic `modulus`.
fn shift_reduce(p: &[BigRational], modulus: &[BigInt]) -> Vec<BigRational> {
    let phi = p.len();
    let top = p[phi - 1].clone();
    let mut out = vec![BigRational::zero(); phi];
    for k in (1..phi).rev() {
        out[k] = p[k - 1].clone();
    }
    if !top.is_zero() {
        for (k, c) in out.iter_mut().enumerate() {
            *c -= &top * BigRational::from_integer(modulus[k].clone());
        }
    }
    out
}

/// Φ_N with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quot
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct Scalar {
    field: FieldRef,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero(field: &FieldRef) -> Self {
        Scalar {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &FieldRef, q: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = q;
        s
    }

    pub fn from_ratio(field: &FieldRef, num: i64, den: i64) -> Self {
        Self::from_rational(field, BigRational::new(num.into(), den.into()))
    }

    /// ζ_N^k for any integer k (negative exponents allowed).
    pub fn zeta_pow(field: &FieldRef, k: i64) -> Self {
        let n = field.order() as i64;
        let k = k.rem_euclid(n) as usize;
        // ζ^k for k < n; reduce repeatedly when k exceeds the cached range.
        let cached = field.powers.len();
        if k < cached {
            return Scalar {
                field: field.clone(),
                coeffs: field.powers[k].clone(),
            };
        }
        let mut coeffs = field.powers[cached - 1].clone();
        for _ in cached - 1..k {
            coeffs = shift_reduce(&coeffs, &field.modulus);
        }
        Scalar {
            field: field.clone(),
            coeffs,
        }
    }

    /// `q · ζ^k`.
    pub fn monomial(field: &FieldRef, q: BigRational, k: i64) -> Self {
        Self::zeta_pow(field, k).scale(&q)
    }

    /// Builds a scalar from power-basis coordinates.
    pub fn from_coords(field: &FieldRef, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::DimensionMismatch {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        Ok(Scalar {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check_field(&self, other: &Scalar) {
        assert_eq!(
            self.field.order(),
            other.field.order(),
            "scalars from different cyclotomic fields"
        );
    }

    /// The φ(N)×φ(N) rational matrix of multiplication by `self`; column k
    /// holds the coordinates of `self·ζ^k`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let phi = self.field.degree();
        let mut cols = Vec::with_capacity(phi);
        let mut cur = self.coeffs.clone();
        for _ in 0..phi {
            cols.push(cur.clone());
            cur = shift_reduce(&cur, &self.field.modulus);
        }
        (0..phi)
            .map(|i| (0..phi).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Scalar::from_rational(&self.field, q.recip()));
        }
        // Solve M·x = e_0 where M is the multiplication matrix.
        let phi = self.field.degree();
        let mut m = self.multiplication_matrix();
        for (i, row) in m.iter_mut().enumerate() {
            row.push(if i == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=phi {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|mut row| row.pop().unwrap()).collect();
        Ok(Scalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Reports show scalars in their display form, e.g. `"1/2 - z^3"`.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_field(rhs);
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.check_field(rhs);
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check_field(rhs);
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        let phi = self.field.degree();
        let mut acc = vec![BigRational::zero(); phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, p) in self.field.powers[i + j].iter().enumerate() {
                    if !p.is_zero() {
                        acc[k] += &ab * p;
                    }
                }
            }
        }
        Scalar {
            field: self.field.clone(),
            coeffs: acc,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
