//! G-simple algebras `C = F^f H ⊗ M_r(F)` with the grading
//! `deg(u_h ⊗ e_{i,j}) = g_i⁻¹ h g_j`, where `(g_1, …, g_r)` is the grading tuple.
//!
//! Local basis order is lexicographic in `(h, i, j)`, with `h` running over
//! the positions of `H`'s elements in ascending index order. Matrix indices
//! are 0-based throughout.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{zero_vec, Bilinear, FieldRef, Scalar, Subspace};
use crate::cocycle::{TwistedGroupAlgebra, TwoCocycle};
use crate::error::{Error, Result};
use crate::group::{right_cosets, CosetPartition, FiniteGroup, Side, Subgroup};

/// The basis element `u_h ⊗ e_{i,j}`; `h` is a position in `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Unit {
    pub h: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub unit: Unit,
    pub coeff: Scalar,
}

/// Value of a product of basis units: always zero, the empty product, or a
/// scalar multiple of one unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MonomialValue {
    One,
    Zero,
    Term(Scalar, Unit),
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedMonomial {
    pub factors: Vec<Factor>,
    pub degree: usize,
    pub value: MonomialValue,
}

/// Right-coset structure of the grading tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EBlockDecomposition {
    /// Right coset `H g_i` of each tuple entry, as an index into `coset_representatives`.
    pub coset_of_index: Vec<usize>,
    pub coset_representatives: Vec<usize>,
    /// `t_c` = number of tuple entries in coset `c`; zeros included.
    pub block_sizes: Vec<usize>,
    pub block_of_index: Vec<usize>,
}

impl EBlockDecomposition {
    pub fn len(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_sizes.is_empty()
    }

    pub fn indices_of_block(&self, b: usize) -> Vec<usize> {
        (0..self.block_of_index.len())
            .filter(|&i| self.block_of_index[i] == b)
            .collect()
    }

    /// `Σ t_c²`.
    pub fn identity_component_dim(&self) -> usize {
        self.block_sizes.iter().map(|t| t * t).sum()
    }
}

/// Monomials `X`, `E`, `Y` with `XEY` acting as the identity on a unit.
#[derive(Clone, Debug, Serialize)]
pub struct Padding {
    pub x: GradedMonomial,
    pub e: GradedMonomial,
    pub y: GradedMonomial,
}

#[derive(Clone, Debug)]
pub struct GSimpleAlgebra {
    group: Arc<FiniteGroup>,
    field: FieldRef,
    twisted: TwistedGroupAlgebra,
    tuple: Vec<usize>,
}

impl GSimpleAlgebra {
    pub fn new(group: Arc<FiniteGroup>, field: FieldRef, cocycle: TwoCocycle, tuple: Vec<usize>) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::InvalidComponent {
                component: 0,
                reason: "grading tuple must have length r >= 1".into(),
            });
        }
        if let Some(&g) = tuple.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidComponent {
                component: 0,
                reason: format!("tuple entry {g} is not a group element"),
            });
        }
        let twisted = TwistedGroupAlgebra::new(group.clone(), cocycle, field.clone());
        Ok(GSimpleAlgebra {
            group,
            field,
            twisted,
            tuple,
        })
    }

    /// `F[H] ⊗ M_r` with trivial cocycle.
    pub fn untwisted(group: Arc<FiniteGroup>, field: FieldRef, subgroup: Subgroup, tuple: Vec<usize>) -> Result<Self> {
        let c = TwoCocycle::trivial(&field, subgroup);
        Self::new(group, field, c, tuple)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.twisted.subgroup()
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        self.twisted.cocycle()
    }

    pub fn twisted(&self) -> &TwistedGroupAlgebra {
        &self.twisted
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn r(&self) -> usize {
        self.tuple.len()
    }

    pub fn h_order(&self) -> usize {
        self.subgroup().order()
    }

    pub fn dim(&self) -> usize {
        self.h_order() * self.r() * self.r()
    }

    pub fn identity_position(&self) -> usize {
        self.subgroup()
            .position(self.group.identity())
            .expect("subgroup contains identity")
    }

    pub fn index_of(&self, u: Unit) -> usize {
        (u.h * self.r() + u.i) * self.r() + u.j
    }

    pub fn unit_of(&self, idx: usize) -> Unit {
        let r = self.r();
        Unit {
            h: idx / (r * r),
            i: (idx / r) % r,
            j: idx % r,
        }
    }

    pub fn units(&self) -> impl Iterator<Item = Unit> + '_ {
        (0..self.dim()).map(|k| self.unit_of(k))
    }

    /// `1 ⊗ e_{i,j}`.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Unit {
        Unit {
            h: self.identity_position(),
            i,
            j,
        }
    }

    pub fn idempotent(&self, i: usize) -> Unit {
        self.matrix_unit(i, i)
    }

    /// Group element carried by a subgroup position.
    pub fn h_element(&self, pos: usize) -> usize {
        self.subgroup().elements()[pos]
    }

    pub fn degree(&self, u: Unit) -> usize {
        let g = &self.group;
        g.mul(
            g.mul(g.inv(self.tuple[u.i]), self.h_element(u.h)),
            self.tuple[u.j],
        )
    }

    /// `C_g` as a subspace of the local coordinate space.
    pub fn component(&self, g: usize) -> Subspace {
        let ids = (0..self.dim()).filter(|&k| self.degree(self.unit_of(k)) == g);
        Subspace::coordinate(&self.field, self.dim(), ids)
    }

    /// `(u_h ⊗ e_{i,j})(u_{h'} ⊗ e_{k,l}) = δ_{jk} f(h,h') u_{hh'} ⊗ e_{i,l}`.
    pub fn unit_mul(&self, a: Unit, b: Unit) -> Option<(Scalar, Unit)> {
        if a.j != b.i {
            return None;
        }
        let (c, h) = self.twisted.basis_mul(a.h, b.h);
        Some((c, Unit { h, i: a.i, j: b.j }))
    }

    pub fn identity_vector(&self) -> Vec<Scalar> {
        let mut v = zero_vec(&self.field, self.dim());
        for i in 0..self.r() {
            v[self.index_of(self.idempotent(i))] = Scalar::one(&self.field);
        }
        v
    }

    pub fn value_vector(&self, value: &MonomialValue) -> Vec<Scalar> {
        match value {
            MonomialValue::One => self.identity_vector(),
            MonomialValue::Zero => zero_vec(&self.field, self.dim()),
            MonomialValue::Term(c, u) => {
                let mut v = zero_vec(&self.field, self.dim());
                v[self.index_of(*u)] = c.clone();
                v
            }
        }
    }

    pub fn evaluate(&self, factors: &[Factor]) -> MonomialValue {
        let mut acc = MonomialValue::One;
        for f in factors {
            acc = match acc {
                MonomialValue::One => MonomialValue::Term(f.coeff.clone(), f.unit),
                MonomialValue::Zero => return MonomialValue::Zero,
                MonomialValue::Term(c, u) => match self.unit_mul(u, f.unit) {
                    None => return MonomialValue::Zero,
                    Some((s, w)) => MonomialValue::Term(&(&c * &s) * &f.coeff, w),
                },
            };
        }
        acc
    }

    pub fn monomial(&self, factors: Vec<Factor>) -> GradedMonomial {
        let degree = self
            .group
            .product(factors.iter().map(|f| self.degree(f.unit)));
        let value = self.evaluate(&factors);
        GradedMonomial {
            factors,
            degree,
            value,
        }
    }

    fn plain(&self, unit: Unit) -> Factor {
        Factor {
            unit,
            coeff: Scalar::one(&self.field),
        }
    }

    /// Reorders the tuple so entries in the same right `H`-coset are
    /// contiguous, blocks ordered by coset representative. Returns the new
    /// algebra and `perm` with `new_tuple[p] = old_tuple[perm[p]]`.
    pub fn canonical_reorder(&self) -> (GSimpleAlgebra, Vec<usize>) {
        let blocks = self.e_block_decomposition();
        let mut perm: Vec<usize> = (0..self.r()).collect();
        perm.sort_by_key(|&i| blocks.block_of_index[i]);
        let tuple = perm.iter().map(|&i| self.tuple[i]).collect();
        let reordered = GSimpleAlgebra {
            group: self.group.clone(),
            field: self.field.clone(),
            twisted: self.twisted.clone(),
            tuple,
        };
        (reordered, perm)
    }

    pub fn right_coset_partition(&self) -> CosetPartition {
        right_cosets(&self.group, self.subgroup())
    }

    pub fn e_block_decomposition(&self) -> EBlockDecomposition {
        let parts = self.right_coset_partition();
        debug_assert!(parts.cosets.iter().all(|c| c.side == Side::Right));
        let coset_of_index: Vec<usize> = self.tuple.iter().map(|&g| parts.index_of[g]).collect();
        let mut block_sizes = vec![0; parts.len()];
        for &c in &coset_of_index {
            block_sizes[c] += 1;
        }
        EBlockDecomposition {
            block_of_index: coset_of_index.clone(),
            coset_of_index,
            coset_representatives: parts.cosets.iter().map(|c| c.representative).collect(),
            block_sizes,
        }
    }

    /// The unique unit `u_h ⊗ e_{i,j}` of degree e, if `i` and `j` lie in the same block.
    pub fn identity_degree_unit(&self, i: usize, j: usize) -> Option<Unit> {
        let g = &self.group;
        let h = g.mul(self.tuple[i], g.inv(self.tuple[j]));
        self.subgroup().position(h).map(|h| Unit { h, i, j })
    }

    /// Checks that the degree-e units are exactly the block-diagonal ones,
    /// that their number is `Σ t²`, and that they multiply inside their block.
    pub fn verify_e_blocks(&self) -> bool {
        let blocks = self.e_block_decomposition();
        let e = self.group.identity();
        let e_units: Vec<Unit> = self.units().filter(|&u| self.degree(u) == e).collect();
        if e_units.len() != blocks.identity_component_dim() {
            return false;
        }
        for &a in &e_units {
            if blocks.block_of_index[a.i] != blocks.block_of_index[a.j] {
                return false;
            }
            for &b in &e_units {
                match self.unit_mul(a, b) {
                    Some((_, w)) => {
                        if self.degree(w) != e {
                            return false;
                        }
                    }
                    None => {
                        if a.j == b.i {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The product of all `r²` units `1 ⊗ e_{i,j}` along an Eulerian circuit
    /// of the complete directed graph with loops, starting with the loop at
    /// `k`. Value `1 ⊗ e_{k,k}`.
    pub fn string_monomial(&self, k: usize) -> GradedMonomial {
        assert!(k < self.r(), "diagonal index out of range");
        let factors = eulerian_circuit(self.r(), k)
            .into_iter()
            .map(|(i, j)| self.plain(self.matrix_unit(i, j)))
            .collect();
        self.monomial(factors)
    }

    /// `Ẑ`: the string monomial with each loop `1⊗e_{i,i}` replaced by
    /// `u_{h_1}⊗e_{i,i}·z·u_{h_2}⊗e_{i,i}·z ⋯ u_{h_m}⊗e_{i,i}·z` (z = 1⊗e_{i,i}),
    /// whose prefix products run through `H` in ascending order starting at e,
    /// followed by a correcting factor `λ u_h ⊗ e_{k,k}` when needed so the
    /// value is exactly `1 ⊗ e_{k,k}`.
    pub fn enhanced_string_monomial(&self, k: usize) -> GradedMonomial {
        let z = self.string_monomial(k);
        if self.h_order() == 1 {
            return z;
        }
        let e_pos = self.identity_position();
        let mut prefixes = vec![e_pos];
        prefixes.extend((0..self.h_order()).filter(|&p| p != e_pos));
        let g = &self.group;
        let steps: Vec<usize> = prefixes
            .iter()
            .enumerate()
            .map(|(t, &p)| {
                if t == 0 {
                    e_pos
                } else {
                    let prev = self.h_element(prefixes[t - 1]);
                    let step = g.mul(g.inv(prev), self.h_element(p));
                    self.subgroup().position(step).expect("closed")
                }
            })
            .collect();
        let mut factors = Vec::new();
        for f in z.factors {
            if f.unit.i == f.unit.j {
                let i = f.unit.i;
                for &h in &steps {
                    factors.push(self.plain(Unit { h, i, j: i }));
                    factors.push(self.plain(self.idempotent(i)));
                }
            } else {
                factors.push(f);
            }
        }
        let MonomialValue::Term(c, u) = self.evaluate(&factors) else {
            unreachable!("the replaced word multiplies out to a nonzero term")
        };
        debug_assert!(u.i == k && u.j == k);
        if !(c.is_one() && u.h == e_pos) {
            let h_inv = self
                .subgroup()
                .position(g.inv(self.h_element(u.h)))
                .expect("closed");
            let (f_val, _) = self.twisted.basis_mul(u.h, h_inv);
            let lambda = (&c * &f_val).inv().expect("cocycle values are units");
            factors.push(Factor {
                unit: Unit { h: h_inv, i: k, j: k },
                coeff: lambda,
            });
        }
        self.monomial(factors)
    }

    /// Splits `Ẑ` (for `k = i` on the left, `k = j` on the right of
    /// `u_h ⊗ e_{i,j}`) just before its first factor `1 ⊗ e_{0,0}` and
    /// inserts `E = Ẑ` for `k = 0` there.
    pub fn pad_monomial(&self, b: Unit, side: Side) -> Padding {
        let k = match side {
            Side::Left => b.i,
            Side::Right => b.j,
        };
        let zhat = self.enhanced_string_monomial(k);
        let e00 = self.idempotent(0);
        let cut = zhat
            .factors
            .iter()
            .position(|f| f.unit == e00 && f.coeff.is_one())
            .expect("every idempotent occurs in the enhanced string");
        let (x, y) = zhat.factors.split_at(cut);
        Padding {
            x: self.monomial(x.to_vec()),
            e: self.enhanced_string_monomial(0),
            y: self.monomial(y.to_vec()),
        }
    }
}

impl Bilinear for GSimpleAlgebra {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim());
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some((c, w)) = self.unit_mul(self.unit_of(a), self.unit_of(b)) {
                    let k = self.index_of(w);
                    out[k] = &out[k] + &(&(xa * yb) * &c);
                }
            }
        }
        out
    }
}

/// Hierholzer's algorithm on the complete directed graph with loops on `r`
/// vertices, from `start`. Out-edges are taken loop first, then by ascending
/// target. Returns the circuit as a list of edges.
pub fn eulerian_circuit(r: usize, start: usize) -> Vec<(usize, usize)> {
    let adj: Vec<Vec<usize>> = (0..r)
        .map(|v| std::iter::once(v).chain((0..r).filter(|&w| w != v)).collect())
        .collect();
    let mut next = vec![0usize; r];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(r * r + 1);
    while let Some(&v) = stack.last() {
        if next[v] < adj[v].len() {
            let w = adj[v][next[v]];
            next[v] += 1;
            stack.push(w);
        } else {
            circuit.push(stack.pop().expect("nonempty"));
        }
    }
    circuit.reverse();
    circuit.windows(2).map(|w| (w[0], w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CyclotomicField;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn elementary(g: Arc<FiniteGroup>, tuple: Vec<usize>) -> GSimpleAlgebra {
        let f = CyclotomicField::new(g.order());
        let h = Subgroup::trivial(&g);
        GSimpleAlgebra::untwisted(g, f, h, tuple).unwrap()
    }

    #[test]
    fn degrees_of_m2_with_c2_grading() {
        let a = elementary(c2(), vec![0, 1]);
        assert_eq!(a.degree(a.matrix_unit(0, 1)), 1);
        let ce = a.component(0);
        assert_eq!(ce.dim(), 2);
        assert!(ce.contains(&a.value_vector(&MonomialValue::Term(Scalar::one(a.field()), a.matrix_unit(1, 1)))));
    }

    #[test]
    fn full_subgroup_identity_component() {
        let g = c2();
        let f = CyclotomicField::new(2);
        let a = GSimpleAlgebra::untwisted(g.clone(), f, Subgroup::whole(&g), vec![0, 0]).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.component(0).dim(), 4);
        assert!(a.units().filter(|&u| a.degree(u) == 0).all(|u| u.h == 0));
    }

    #[test]
    fn reorder_examples() {
        let a = elementary(c2(), vec![1, 0, 1]);
        let (b, perm) = a.canonical_reorder();
        assert_eq!(b.tuple(), &[0, 1, 1]);
        assert_eq!(perm, vec![1, 0, 2]);
        let (_, perm) = elementary(c2(), vec![0, 1, 1]).canonical_reorder();
        assert_eq!(perm, vec![0, 1, 2]);
        let g = c2();
        let f = CyclotomicField::new(2);
        let whole = GSimpleAlgebra::untwisted(g.clone(), f, Subgroup::whole(&g), vec![1, 0, 1]).unwrap();
        assert_eq!(whole.canonical_reorder().1, vec![0, 1, 2]);
    }

    #[test]
    fn e_blocks() {
        let a = elementary(c2(), vec![0, 1]);
        assert_eq!(a.e_block_decomposition().block_sizes, vec![1, 1]);
        let g = c2();
        let f = CyclotomicField::new(2);
        let b = GSimpleAlgebra::untwisted(g.clone(), f, Subgroup::whole(&g), vec![0, 0]).unwrap();
        assert_eq!(b.e_block_decomposition().block_sizes, vec![2]);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let c = elementary(c3, vec![0, 0, 1]);
        // cosets {0},{1},{2} ordered by representative
        assert_eq!(c.e_block_decomposition().block_sizes, vec![2, 1, 0]);
        assert!(a.verify_e_blocks() && b.verify_e_blocks() && c.verify_e_blocks());
    }

    #[test]
    fn circuit_r2() {
        assert_eq!(eulerian_circuit(2, 0), vec![(0, 0), (0, 1), (1, 1), (1, 0)]);
        assert_eq!(eulerian_circuit(1, 0), vec![(0, 0)]);
    }

    #[test]
    fn string_monomial_r1_is_single_factor() {
        let a = elementary(c2(), vec![1]);
        let z = a.string_monomial(0);
        assert_eq!(z.factors.len(), 1);
        assert_eq!(z.value, MonomialValue::Term(Scalar::one(a.field()), a.idempotent(0)));
    }

    #[test]
    fn enhanced_over_c2() {
        let g = c2();
        let f = CyclotomicField::new(2);
        let a = GSimpleAlgebra::untwisted(g.clone(), f.clone(), Subgroup::whole(&g), vec![0]).unwrap();
        let zh = a.enhanced_string_monomial(0);
        let hs: Vec<usize> = zh.factors.iter().map(|x| x.unit.h).collect();
        // u_e, z, u_g, z, then u_g to cancel the accumulated u_g
        assert_eq!(hs, vec![0, 0, 1, 0, 1]);
        assert_eq!(zh.value, MonomialValue::Term(Scalar::one(&f), a.idempotent(0)));
    }

    #[test]
    fn trivial_h_enhanced_is_plain_string() {
        let a = elementary(Arc::new(FiniteGroup::cyclic(3)), vec![0, 2, 1]);
        for k in 0..3 {
            assert_eq!(a.enhanced_string_monomial(k).factors, a.string_monomial(k).factors);
        }
    }

    #[test]
    fn padding_acts_trivially() {
        let g = c2();
        let f = CyclotomicField::new(2);
        let a = GSimpleAlgebra::untwisted(g.clone(), f.clone(), Subgroup::whole(&g), vec![0, 1]).unwrap();
        for b in a.units().collect::<Vec<_>>() {
            for side in [Side::Left, Side::Right] {
                let p = a.pad_monomial(b, side);
                let mut word: Vec<Factor> = Vec::new();
                let bf = Factor { unit: b, coeff: Scalar::one(&f) };
                if side == Side::Right {
                    word.push(bf.clone());
                }
                word.extend(p.x.factors.iter().cloned());
                word.extend(p.e.factors.iter().cloned());
                word.extend(p.y.factors.iter().cloned());
                if side == Side::Left {
                    word.push(bf);
                }
                assert_eq!(a.evaluate(&word), MonomialValue::Term(Scalar::one(&f), b));
                assert_eq!(p.e.factors[0].unit, a.idempotent(0));
                assert_eq!(p.e.value, MonomialValue::Term(Scalar::one(&f), a.idempotent(0)));
            }
        }
    }
}
