//! Algebras given by structure constants on a fixed basis.

use crate::arith::{right_kernel, zero_vec, Bilinear, FieldRef, Scalar, Subspace};
use crate::error::{Error, Result};

/// Sparse structure constants: `b_a · b_b = Σ c_k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    field: FieldRef,
    dim: usize,
    entries: Vec<Vec<(usize, Scalar)>>,
}

impl StructureTable {
    pub fn zero(field: &FieldRef, dim: usize) -> Self {
        StructureTable {
            field: field.clone(),
            dim,
            entries: vec![Vec::new(); dim * dim],
        }
    }

    pub fn from_fn(field: &FieldRef, dim: usize, f: impl Fn(usize, usize) -> Vec<(usize, Scalar)>) -> Self {
        let mut t = Self::zero(field, dim);
        for a in 0..dim {
            for b in 0..dim {
                t.set(a, b, f(a, b));
            }
        }
        t
    }

    /// The full matrix algebra `M_n` on matrix units `e_{i,j}` at index `i·n + j`.
    pub fn matrix_algebra(field: &FieldRef, n: usize) -> Self {
        Self::from_fn(field, n * n, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            if j == k {
                vec![(i * n + l, Scalar::one(field))]
            } else {
                Vec::new()
            }
        })
    }

    /// Sets the product of two basis elements, merging repeated targets and
    /// dropping zero coefficients.
    pub fn set(&mut self, a: usize, b: usize, value: Vec<(usize, Scalar)>) {
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(value.len());
        for (k, c) in value {
            assert!(k < self.dim, "target {k} out of range");
            match merged.iter_mut().find(|(j, _)| *j == k) {
                Some((_, acc)) => *acc = &*acc + &c,
                None => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by_key(|(k, _)| *k);
        self.entries[a * self.dim + b] = merged;
    }

    pub fn get(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.entries[a * self.dim + b]
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_rational(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|(_, c)| c.as_rational().is_some())
    }

    /// Product of a coordinate vector with a basis element on the right.
    pub fn mul_basis_right(&self, x: &[Scalar], b: usize) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim);
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in self.get(a, b) {
                out[*k] = &out[*k] + &(xa * c);
            }
        }
        out
    }

    /// Triples of basis elements on which `(ab)c ≠ a(bc)`.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut bad = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    let mut lhs = zero_vec(&self.field, n);
                    for (k, x) in ab {
                        for (m, y) in self.get(*k, c) {
                            lhs[*m] = &lhs[*m] + &(x * y);
                        }
                    }
                    let mut rhs = zero_vec(&self.field, n);
                    for (k, x) in self.get(b, c) {
                        for (m, y) in self.get(a, *k) {
                            rhs[*m] = &rhs[*m] + &(x * y);
                        }
                    }
                    if lhs != rhs {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }

    /// `tr(L_{b_k})` for each basis element.
    fn left_traces(&self) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| {
                let mut t = Scalar::zero(&self.field);
                for m in 0..self.dim {
                    if let Some((_, c)) = self.get(k, m).iter().find(|(j, _)| *j == m) {
                        t = &t + c;
                    }
                }
                t
            })
            .collect()
    }

    /// The radical in characteristic zero: the kernel of the trace form
    /// `(x, y) ↦ tr(L_{xy})`.
    pub fn trace_form_radical(&self) -> Subspace {
        let tau = self.left_traces();
        let form: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| {
                        let mut s = Scalar::zero(&self.field);
                        for (k, c) in self.get(a, b) {
                            s = &s + &(c * &tau[*k]);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        right_kernel(&self.field, &form, self.dim)
    }

    /// `{ x : x b = b x for every basis element b }`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for k in 0..n {
            let mut block = vec![zero_vec(&self.field, n); n];
            for a in 0..n {
                for (m, c) in self.get(a, k) {
                    block[*m][a] = &block[*m][a] + c;
                }
                for (m, c) in self.get(k, a) {
                    block[*m][a] = &block[*m][a] - c;
                }
            }
            rows.extend(block);
        }
        right_kernel(&self.field, &rows, n)
    }

    /// The subalgebra spanned by the basis elements `ids`, re-indexed in
    /// the given order. Fails if the span is not closed under products.
    pub fn restrict(&self, ids: &[usize]) -> Result<StructureTable> {
        let mut pos = vec![usize::MAX; self.dim];
        for (p, &i) in ids.iter().enumerate() {
            pos[i] = p;
        }
        let mut t = StructureTable::zero(&self.field, ids.len());
        for (pa, &a) in ids.iter().enumerate() {
            for (pb, &b) in ids.iter().enumerate() {
                let mut v = Vec::new();
                for (k, c) in self.get(a, b) {
                    if pos[*k] == usize::MAX {
                        return Err(Error::Validation(format!(
                            "basis product {a}*{b} leaves the span of {ids:?}"
                        )));
                    }
                    v.push((pos[*k], c.clone()));
                }
                t.set(pa, pb, v);
            }
        }
        Ok(t)
    }
}

impl Bilinear for StructureTable {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim);
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let entry = self.get(a, b);
                if entry.is_empty() {
                    continue;
                }
                let xy = xa * yb;
                for (k, c) in entry {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }
}
