//! Normalized 2-cocycles `f: H × H → F*` and twisted group algebras `F^f H`.

use std::sync::Arc;

use crate::arith::{right_kernel, zero_vec, FieldRef, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// A validated normalized 2-cocycle. `values[a][b] = f(h_a, h_b)` where
/// `h_a` is the a-th element of the subgroup in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    subgroup: Subgroup,
    values: Vec<Vec<Scalar>>,
}

/// Triples `(a, b, c)` of group elements on which
/// `f(a,b)·f(ab,c) = f(b,c)·f(a,bc)` fails.
pub fn cocycle_violations(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    values: &[Vec<Scalar>],
) -> Vec<(usize, usize, usize)> {
    let pos = |x: usize| subgroup.position(x).expect("closed subgroup");
    let f = |x: usize, y: usize| &values[pos(x)][pos(y)];
    let mut bad = Vec::new();
    for &a in subgroup.elements() {
        for &b in subgroup.elements() {
            for &c in subgroup.elements() {
                let ab = group.mul(a, b);
                let bc = group.mul(b, c);
                if f(a, b) * f(ab, c) != f(b, c) * f(a, bc) {
                    bad.push((a, b, c));
                }
            }
        }
    }
    bad
}

impl TwoCocycle {
    pub fn validate(group: &FiniteGroup, subgroup: Subgroup, values: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = subgroup.order();
        if values.len() != m || values.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: values.len(),
            });
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::ZeroCocycleValue {
                        a: subgroup.elements()[i],
                        b: subgroup.elements()[j],
                    });
                }
            }
        }
        let triples = cocycle_violations(group, &subgroup, &values);
        if !triples.is_empty() {
            return Err(Error::CocycleViolation { triples });
        }
        let e = subgroup.position(group.identity()).expect("subgroup has identity");
        let bad: Vec<usize> = (0..m)
            .filter(|&a| !values[e][a].is_one() || !values[a][e].is_one())
            .map(|a| subgroup.elements()[a])
            .collect();
        if !bad.is_empty() {
            return Err(Error::NotNormalized {
                hint: format!(
                    "f(e,x) or f(x,e) differs from 1 for x in {bad:?}; divide every value by f(e,e) = {} to get the cohomologous normalized cocycle",
                    values[e][e]
                ),
            });
        }
        Ok(TwoCocycle { subgroup, values })
    }

    pub fn trivial(field: &FieldRef, subgroup: Subgroup) -> Self {
        let m = subgroup.order();
        TwoCocycle {
            values: vec![vec![Scalar::one(field); m]; m],
            subgroup,
        }
    }

    /// `∂t(a,b) = t(a)·t(b)/t(ab)` after rescaling `t` so that `t(e) = 1`;
    /// always a normalized cocycle.
    pub fn coboundary(group: &FiniteGroup, subgroup: Subgroup, t: &[Scalar]) -> Result<Self> {
        let m = subgroup.order();
        if t.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: t.len(),
            });
        }
        let e = subgroup.position(group.identity()).expect("identity");
        let te_inv = t[e].inv()?;
        let t: Vec<Scalar> = t.iter().map(|x| x * &te_inv).collect();
        let mut values = Vec::with_capacity(m);
        for (a, &ha) in subgroup.elements().iter().enumerate() {
            let mut row = Vec::with_capacity(m);
            for (b, &hb) in subgroup.elements().iter().enumerate() {
                let ab = subgroup.position(group.mul(ha, hb)).expect("closed");
                row.push((&t[a] * &t[b]).div(&t[ab])?);
            }
            values.push(row);
        }
        TwoCocycle::validate(group, subgroup, values)
    }

    /// The class of `f(aⁱbʲ, aᵏbˡ) = (-1)^{jk}` on a Klein four-group, with `a`
    /// and `b` the two smallest non-identity elements.
    pub fn klein_class(field: &FieldRef, group: &FiniteGroup, subgroup: Subgroup) -> Result<Self> {
        let e = group.identity();
        let others: Vec<usize> = subgroup.elements().iter().copied().filter(|&x| x != e).collect();
        if subgroup.order() != 4 || others.iter().any(|&x| group.mul(x, x) != e) {
            return Err(Error::InvalidSubgroup("not a Klein four-group".into()));
        }
        let (a, b) = (others[0], others[1]);
        let coords = |x: usize| -> (usize, usize) {
            for i in 0..2 {
                for j in 0..2 {
                    if group.mul(group.pow(a, i), group.pow(b, j)) == x {
                        return (i, j);
                    }
                }
            }
            unreachable!("element outside the Klein group")
        };
        let values = subgroup
            .elements()
            .iter()
            .map(|&x| {
                subgroup
                    .elements()
                    .iter()
                    .map(|&y| {
                        let (_, j) = coords(x);
                        let (k, _) = coords(y);
                        Scalar::from_int(field, if j * k % 2 == 1 { -1 } else { 1 })
                    })
                    .collect()
            })
            .collect();
        TwoCocycle::validate(group, subgroup, values)
    }

    /// Pointwise product of two cocycles on the same subgroup.
    pub fn product(&self, other: &TwoCocycle) -> TwoCocycle {
        assert_eq!(self.subgroup, other.subgroup);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x * y).collect())
            .collect();
        TwoCocycle {
            subgroup: self.subgroup.clone(),
            values,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    /// `f(h_a, h_b)` by subgroup positions.
    pub fn at(&self, a: usize, b: usize) -> &Scalar {
        &self.values[a][b]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_one)
    }
}

/// `F^f H` with basis `u_h` in the subgroup's element order.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    group: Arc<FiniteGroup>,
    cocycle: TwoCocycle,
    field: FieldRef,
}

impl TwistedGroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>, cocycle: TwoCocycle, field: FieldRef) -> Self {
        TwistedGroupAlgebra {
            group,
            cocycle,
            field,
        }
    }

    pub fn dim(&self) -> usize {
        self.cocycle.subgroup.order()
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.cocycle.subgroup
    }

    /// `u_a·u_b = f(a,b)·u_{ab}` on positions.
    pub fn basis_mul(&self, a: usize, b: usize) -> (Scalar, usize) {
        let h = self.subgroup().elements();
        let ab = self.group.mul(h[a], h[b]);
        (
            self.cocycle.at(a, b).clone(),
            self.subgroup().position(ab).expect("closed"),
        )
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim());
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (c, ab) = self.basis_mul(a, b);
                out[ab] = &out[ab] + &(&(xa * yb) * &c);
            }
        }
        out
    }

    /// Center, as the common kernel of `x ↦ x·u_h − u_h·x`.
    pub fn center(&self) -> Subspace {
        let m = self.dim();
        // rows: for each h and each output coordinate, the linear functional in x
        let mut rows = Vec::new();
        for h in 0..m {
            let mut block = vec![zero_vec(&self.field, m); m];
            for a in 0..m {
                let (c1, p1) = self.basis_mul(a, h);
                let (c2, p2) = self.basis_mul(h, a);
                block[p1][a] = &block[p1][a] + &c1;
                block[p2][a] = &block[p2][a] - &c2;
            }
            rows.extend(block);
        }
        right_kernel(&self.field, &rows, m)
    }
}
