//! Exact linear algebra over Q(ζ_N): reduced echelon forms, rank, kernels and
//! subspaces with canonical bases.

use super::cyclotomic::{FieldRef, Scalar};
use crate::error::{Error, Result};

/// A bilinear multiplication on coordinate vectors.
pub trait Bilinear {
    fn ambient_dim(&self) -> usize;
    fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar>;
}

pub fn zero_vec(field: &FieldRef, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n]
}

pub fn unit_vec(field: &FieldRef, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = Scalar::one(field);
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Gauss–Jordan elimination. Pivots are chosen column by column, taking the
/// first remaining row with a nonzero entry. Returns the nonzero rows of the
/// reduced echelon form and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].inv().expect("pivot is nonzero");
        for v in rows[top].iter_mut().skip(col) {
            *v = &*v * &inv;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(matrix: &[Vec<Scalar>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let field = matrix[0]
        .first()
        .map(|s| s.field().clone());
    let Some(field) = field else { return 0 };
    let ncols = matrix[0].len();
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut prev = Scalar::one(&field);
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][col].clone();
        for i in r + 1..m.len() {
            let lead = m[i][col].clone();
            for c in col..ncols {
                let num = &(&pivot * &m[i][c]) - &(&lead * &m[r][c]);
                m[i][c] = num.div(&prev).expect("previous pivot is nonzero");
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// A subspace of F^n, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let vectors: Vec<_> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        let (basis, pivots) = rref(vectors, ambient_dim);
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    /// Span of a set of standard basis vectors.
    pub fn coordinate(field: &FieldRef, ambient_dim: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let basis = ids.iter().map(|&i| unit_vec(field, ambient_dim, i)).collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: ids,
        }
    }

    pub fn full(field: &FieldRef, ambient_dim: usize) -> Self {
        Self::coordinate(field, ambient_dim, 0..ambient_dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction by the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o = &*o - &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, vs)
    }

    /// `span{ u·v : u ∈ basis(self), v ∈ basis(other) }`.
    pub fn product<M: Bilinear + ?Sized>(&self, other: &Subspace, mult: &M) -> Result<Subspace> {
        let n = mult.ambient_dim();
        for d in [self.ambient_dim, other.ambient_dim] {
            if d != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d,
                });
            }
        }
        let mut prods = Vec::with_capacity(self.dim() * other.dim());
        for u in &self.basis {
            for v in &other.basis {
                let w = mult.mul_vec(u, v);
                if !is_zero_vec(&w) {
                    prods.push(w);
                }
            }
        }
        Subspace::span(n, prods)
    }
}

/// Basis of `{ x : x·M = 0 }` for an `rows × cols` matrix M.
pub fn left_kernel(field: &FieldRef, matrix: &[Vec<Scalar>], rows: usize, cols: usize) -> Subspace {
    let transposed: Vec<Vec<Scalar>> = (0..cols)
        .map(|c| (0..rows).map(|r| matrix[r][c].clone()).collect())
        .collect();
    right_kernel(field, &transposed, rows)
}

/// Basis of `{ x : M·x = 0 }` where M has `ncols` columns.
pub fn right_kernel(field: &FieldRef, matrix: &[Vec<Scalar>], ncols: usize) -> Subspace {
    let (red, pivots) = rref(
        matrix.iter().filter(|r| !is_zero_vec(r)).cloned().collect(),
        ncols,
    );
    let mut vecs = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vec(field, ncols);
        v[free] = Scalar::one(field);
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        vecs.push(v);
    }
    Subspace::span(ncols, vecs).expect("kernel vectors have matching length")
}
