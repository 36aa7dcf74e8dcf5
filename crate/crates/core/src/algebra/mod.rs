//! Finite-dimensional G-graded algebras `A = S_G ⊕ J` given by their graded
//! Wedderburn–Malcev data.
//!
//! Global basis ids list each G-simple component's local basis in order,
//! followed by the radical basis.

mod chain;
mod table;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use chain::{ChainProblem, ExponentReport, FactorRole, Lambda, LambdaFactor};
pub use table::StructureTable;

use crate::arith::{zero_vec, Bilinear, FieldRef, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::group::{abelian_characters, quotient_group, FiniteGroup, Quotient, Side, Subgroup};
use crate::gsimple::{GSimpleAlgebra, Unit};

/// The idempotent `1 ⊗ e_{i,i}` of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeirceLabel {
    pub component: usize,
    pub index: usize,
}

/// A homogeneous radical basis element. A label of `None` means every
/// idempotent annihilates the element on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalElement {
    pub degree: usize,
    pub left: Option<PeirceLabel>,
    pub right: Option<PeirceLabel>,
}

/// A declared product `b_left · b_right` with at least one radical factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProduct {
    pub left: usize,
    pub right: usize,
    pub value: Vec<(usize, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisRef {
    Semisimple { component: usize, unit: Unit },
    Radical(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Violation {
    NotAssociative { a: usize, b: usize, c: usize },
    Grading { left: usize, right: usize, target: usize, expected: usize, found: usize },
    NotIdeal { left: usize, right: usize, target: usize },
    NotNilpotent { stable_dim: usize },
    Peirce { radical: usize, side: Side, component: usize, index: usize },
    ComponentsNotOrthogonal { left: usize, right: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(
                serde_json::to_string(&self.violations).expect("serializable"),
            ))
        }
    }
}

/// A simple factor `M_t` of `A_e`: one nonzero e-block of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EBlock {
    pub component: usize,
    pub block: usize,
    pub size: usize,
    pub ids: Vec<usize>,
}

/// The identity component with its Wedderburn–Malcev decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EPart {
    pub blocks: Vec<EBlock>,
    pub radical_ids: Vec<usize>,
    pub basis_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SplitMethod {
    Characters { characters: Vec<Vec<usize>> },
    Declared,
}

#[derive(Clone, Debug, Serialize)]
pub struct UngradedSplit {
    /// Per G-simple component, how it was split.
    pub methods: Vec<SplitMethod>,
    /// `(component, dim)` for each simple piece, in search order.
    pub pieces: Vec<(usize, usize)>,
    pub report: ExponentReport,
}

/// A regrading by `G/N`, kept at the basis level.
#[derive(Clone, Debug, Serialize)]
pub struct Regrading {
    #[serde(skip)]
    pub quotient: Quotient,
    pub degrees: Vec<usize>,
    pub identity_component: Vec<usize>,
    /// Basis ids whose original degree lies in `N`.
    pub expected_identity_component: Vec<usize>,
    pub grading_compatible: bool,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub quotient_order: usize,
}

impl Regrading {
    pub fn identity_component_matches(&self) -> bool {
        self.identity_component == self.expected_identity_component
    }

    /// `|G/N|²·|N|² = |G|²`.
    pub fn order_arithmetic_holds(&self) -> bool {
        let (q, n, g) = (self.quotient_order, self.subgroup_order, self.group_order);
        q * q * n * n == g * g
    }
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    group: Arc<FiniteGroup>,
    field: FieldRef,
    components: Vec<GSimpleAlgebra>,
    offsets: Vec<usize>,
    radical: Vec<RadicalElement>,
    radical_start: usize,
    products: Vec<RadicalProduct>,
    splits: Vec<Option<Vec<Vec<Vec<Scalar>>>>>,
    table: StructureTable,
    degrees: Vec<usize>,
}

impl GradedAlgebra {
    pub fn new(
        group: Arc<FiniteGroup>,
        field: FieldRef,
        components: Vec<GSimpleAlgebra>,
        radical: Vec<RadicalElement>,
        products: Vec<RadicalProduct>,
    ) -> Result<Self> {
        let mut offsets = Vec::with_capacity(components.len());
        let mut next = 0;
        for (c, comp) in components.iter().enumerate() {
            if comp.group().table() != group.table() {
                return Err(Error::InvalidComponent {
                    component: c,
                    reason: "component is graded by a different group".into(),
                });
            }
            if comp.field().order() != field.order() {
                return Err(Error::InvalidComponent {
                    component: c,
                    reason: "component uses a different scalar field".into(),
                });
            }
            offsets.push(next);
            next += comp.dim();
        }
        let radical_start = next;
        let dim = radical_start + radical.len();
        for (k, rho) in radical.iter().enumerate() {
            if rho.degree >= group.order() {
                return Err(Error::Validation(format!(
                    "radical element {k} has degree {} outside the group",
                    rho.degree
                )));
            }
            for label in [rho.left, rho.right].into_iter().flatten() {
                let ok = components
                    .get(label.component)
                    .is_some_and(|c| label.index < c.r());
                if !ok {
                    return Err(Error::Validation(format!(
                        "radical element {k} has Peirce label {label:?} with no such idempotent"
                    )));
                }
            }
        }
        let mut table = StructureTable::zero(&field, dim);
        for (c, comp) in components.iter().enumerate() {
            for a in 0..comp.dim() {
                for b in 0..comp.dim() {
                    if let Some((s, w)) = comp.unit_mul(comp.unit_of(a), comp.unit_of(b)) {
                        table.set(offsets[c] + a, offsets[c] + b, vec![(offsets[c] + comp.index_of(w), s)]);
                    }
                }
            }
        }
        let mut declared = BTreeSet::new();
        for p in &products {
            if p.left >= dim || p.right >= dim || p.value.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Validation(format!(
                    "product {}*{} refers to a basis id outside 0..{dim}",
                    p.left, p.right
                )));
            }
            if p.left < radical_start && p.right < radical_start {
                return Err(Error::Validation(format!(
                    "product {}*{} has no radical factor; semisimple products are fixed by the components",
                    p.left, p.right
                )));
            }
            if !declared.insert((p.left, p.right)) {
                return Err(Error::Validation(format!(
                    "product {}*{} is declared twice",
                    p.left, p.right
                )));
            }
            table.set(p.left, p.right, p.value.clone());
        }
        let mut degrees = Vec::with_capacity(dim);
        for comp in &components {
            degrees.extend(comp.units().map(|u| comp.degree(u)));
        }
        degrees.extend(radical.iter().map(|r| r.degree));
        let splits = vec![None; components.len()];
        Ok(GradedAlgebra {
            group,
            field,
            components,
            offsets,
            radical,
            radical_start,
            products,
            splits,
            table,
            degrees,
        })
    }

    /// Attaches a decomposition of a component into simple algebras, each
    /// given by a basis in the component's local coordinates. Checked when
    /// the ungraded exponent is computed.
    pub fn with_split(mut self, component: usize, blocks: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let comp = self.components.get(component).ok_or_else(|| Error::InvalidComponent {
            component,
            reason: "no such component".into(),
        })?;
        let n = comp.dim();
        if let Some(v) = blocks.iter().flatten().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        self.splits[component] = Some(blocks);
        Ok(self)
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

    pub fn components(&self) -> &[GSimpleAlgebra] {
        &self.components
    }

    pub fn radical(&self) -> &[RadicalElement] {
        &self.radical
    }

    pub fn products(&self) -> &[RadicalProduct] {
        &self.products
    }

    pub fn split(&self, component: usize) -> Option<&Vec<Vec<Vec<Scalar>>>> {
        self.splits[component].as_ref()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn radical_start(&self) -> usize {
        self.radical_start
    }

    pub fn radical_ids(&self) -> std::ops::Range<usize> {
        self.radical_start..self.dim()
    }

    pub fn offset(&self, component: usize) -> usize {
        self.offsets[component]
    }

    pub fn component_ids(&self, component: usize) -> std::ops::Range<usize> {
        let o = self.offsets[component];
        o..o + self.components[component].dim()
    }

    pub fn global_id(&self, component: usize, unit: Unit) -> usize {
        self.offsets[component] + self.components[component].index_of(unit)
    }

    pub fn idempotent_id(&self, label: PeirceLabel) -> usize {
        let comp = &self.components[label.component];
        self.global_id(label.component, comp.idempotent(label.index))
    }

    pub fn locate(&self, id: usize) -> BasisRef {
        if id >= self.radical_start {
            return BasisRef::Radical(id - self.radical_start);
        }
        let c = self.offsets.partition_point(|&o| o <= id) - 1;
        BasisRef::Semisimple {
            component: c,
            unit: self.components[c].unit_of(id - self.offsets[c]),
        }
    }

    pub fn degree(&self, id: usize) -> usize {
        self.degrees[id]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Peirce labels of any basis element.
    pub fn peirce(&self, id: usize) -> (Option<PeirceLabel>, Option<PeirceLabel>) {
        match self.locate(id) {
            BasisRef::Radical(k) => (self.radical[k].left, self.radical[k].right),
            BasisRef::Semisimple { component, unit } => (
                Some(PeirceLabel {
                    component,
                    index: unit.i,
                }),
                Some(PeirceLabel {
                    component,
                    index: unit.j,
                }),
            ),
        }
    }

    pub fn all_idempotents(&self) -> Vec<PeirceLabel> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.r()).map(move |i| PeirceLabel { component: c, index: i }))
            .collect()
    }

    pub fn unit_vector(&self, id: usize) -> Vec<Scalar> {
        crate::arith::unit_vec(&self.field, self.dim(), id)
    }

    pub fn radical_subspace(&self) -> Subspace {
        Subspace::coordinate(&self.field, self.dim(), self.radical_ids())
    }

    pub fn component_subspace(&self, component: usize) -> Subspace {
        Subspace::coordinate(&self.field, self.dim(), self.component_ids(component))
    }

    /// Basis ids of degree `g`.
    pub fn homogeneous_ids(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.degrees[k] == g).collect()
    }

    /// Smallest `t ≥ 1` with `J^t = 0`, or `None` if the powers stabilize
    /// at a nonzero subspace.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let j = self.radical_subspace();
        let mut power = j.clone();
        let mut t = 1;
        while !power.is_zero() {
            let next = power.product(&j, &self.table).expect("same ambient space");
            if next.dim() == power.dim() {
                return None;
            }
            power = next;
            t += 1;
        }
        Some(t)
    }

    /// Bound on the number of semisimple factors in a nonzero chain.
    fn chain_bound(&self) -> usize {
        self.nilpotency_index().unwrap_or(self.radical.len() + 1)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (a, b, c) in self.table.associativity_violations() {
            violations.push(Violation::NotAssociative { a, b, c });
        }
        let g = &self.group;
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let expected = g.mul(self.degrees[a], self.degrees[b]);
                let involves_radical = a >= self.radical_start || b >= self.radical_start;
                for (k, _) in self.table.get(a, b) {
                    if self.degrees[*k] != expected {
                        violations.push(Violation::Grading {
                            left: a,
                            right: b,
                            target: *k,
                            expected,
                            found: self.degrees[*k],
                        });
                    }
                    if involves_radical && *k < self.radical_start {
                        violations.push(Violation::NotIdeal {
                            left: a,
                            right: b,
                            target: *k,
                        });
                    }
                }
                if let (BasisRef::Semisimple { component: c1, .. }, BasisRef::Semisimple { component: c2, .. }) =
                    (self.locate(a), self.locate(b))
                {
                    if c1 != c2 && !self.table.get(a, b).is_empty() {
                        violations.push(Violation::ComponentsNotOrthogonal { left: a, right: b });
                    }
                }
            }
        }
        if self.nilpotency_index().is_none() {
            let j = self.radical_subspace();
            let mut power = j.clone();
            loop {
                let next = power.product(&j, &self.table).expect("same ambient space");
                if next.dim() == power.dim() {
                    break;
                }
                power = next;
            }
            violations.push(Violation::NotNilpotent {
                stable_dim: power.dim(),
            });
        }
        let one = Scalar::one(&self.field);
        for (k, rho) in self.radical.iter().enumerate() {
            let x = self.radical_start + k;
            for label in self.all_idempotents() {
                let e = self.idempotent_id(label);
                for (side, declared, prod) in [
                    (Side::Left, rho.left, self.table.get(e, x)),
                    (Side::Right, rho.right, self.table.get(x, e)),
                ] {
                    let ok = if declared == Some(label) {
                        prod.len() == 1 && prod[0].0 == x && prod[0].1 == one
                    } else {
                        prod.is_empty()
                    };
                    if !ok {
                        violations.push(Violation::Peirce {
                            radical: k,
                            side,
                            component: label.component,
                            index: label.index,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Radical computed from the structure constants alone.
    pub fn radical_oracle(&self) -> Subspace {
        self.table.trace_form_radical()
    }

    /// Compares the declared radical with the trace-form radical.
    pub fn radical_check(&self) -> Result<()> {
        let oracle = self.radical_oracle();
        let declared = self.radical_subspace();
        if oracle != declared {
            return Err(Error::MismatchWithDeclaredRadical {
                declared: declared.dim(),
                oracle: oracle.dim(),
            });
        }
        Ok(())
    }

    pub fn conj_problem(&self) -> ChainProblem<'_> {
        ChainProblem {
            mult: &self.table,
            components: (0..self.components.len())
                .map(|c| self.component_subspace(c))
                .collect(),
            weights: self.components.iter().map(GSimpleAlgebra::dim).collect(),
            radical: self.radical_subspace(),
            max_len: self.chain_bound(),
        }
    }

    /// `exp_conj^G`: the largest total dimension of distinct G-simple
    /// components appearing in a nonzero product `S J S ⋯ J S`.
    pub fn exp_conj_graded(&self) -> Result<ExponentReport> {
        self.conj_problem().search()
    }

    pub fn e_part(&self) -> Result<EPart> {
        let e = self.group.identity();
        let mut blocks = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            let dec = comp.e_block_decomposition();
            for (b, &size) in dec.block_sizes.iter().enumerate() {
                if size == 0 {
                    continue;
                }
                let idx = dec.indices_of_block(b);
                let mut ids = Vec::with_capacity(size * size);
                for &i in &idx {
                    for &j in &idx {
                        let u = comp
                            .identity_degree_unit(i, j)
                            .expect("indices in one block give a degree-e unit");
                        ids.push(self.global_id(c, u));
                    }
                }
                ids.sort_unstable();
                blocks.push(EBlock {
                    component: c,
                    block: b,
                    size,
                    ids,
                });
            }
        }
        let radical_ids: Vec<usize> = self.radical_ids().filter(|&k| self.degrees[k] == e).collect();
        let basis_ids = self.homogeneous_ids(e);
        let part = EPart {
            blocks,
            radical_ids,
            basis_ids,
        };
        self.check_e_part(&part)?;
        Ok(part)
    }

    /// Certifies that the e-blocks and degree-e radical elements form a
    /// Wedderburn–Malcev decomposition of `A_e`.
    fn check_e_part(&self, part: &EPart) -> Result<()> {
        let mut covered: Vec<usize> = part.blocks.iter().flat_map(|b| b.ids.iter().copied()).collect();
        covered.extend(&part.radical_ids);
        covered.sort_unstable();
        if covered != part.basis_ids {
            return Err(Error::Validation(
                "e-blocks and degree-e radical do not span the identity component".into(),
            ));
        }
        let sub = self.table.restrict(&part.basis_ids)?;
        let rad = sub.trace_form_radical();
        let positions = part
            .radical_ids
            .iter()
            .map(|k| part.basis_ids.binary_search(k).expect("covered"));
        let declared = Subspace::coordinate(&self.field, part.basis_ids.len(), positions);
        if rad != declared {
            return Err(Error::MismatchWithDeclaredRadical {
                declared: declared.dim(),
                oracle: rad.dim(),
            });
        }
        for block in &part.blocks {
            let t = self.table.restrict(&block.ids)?;
            if !t.trace_form_radical().is_zero() || t.center().dim() != 1 {
                return Err(Error::Validation(format!(
                    "e-block {} of component {} is not a full matrix algebra",
                    block.block, block.component
                )));
            }
        }
        Ok(())
    }

    pub fn e_problem(&self, part: &EPart) -> ChainProblem<'_> {
        ChainProblem {
            mult: &self.table,
            components: part
                .blocks
                .iter()
                .map(|b| Subspace::coordinate(&self.field, self.dim(), b.ids.iter().copied()))
                .collect(),
            weights: part.blocks.iter().map(|b| b.size * b.size).collect(),
            radical: Subspace::coordinate(&self.field, self.dim(), part.radical_ids.iter().copied()),
            max_len: self.chain_bound(),
        }
    }

    /// `exp(A_e)` by chain search over the e-blocks.
    pub fn exp_e(&self) -> Result<(EPart, ExponentReport)> {
        let part = self.e_part()?;
        let report = self.e_problem(&part).search()?;
        Ok((part, report))
    }

    /// Simple pieces of each component as subspaces of `A`, with the method used.
    pub fn ungraded_pieces(&self) -> Result<(Vec<SplitMethod>, Vec<(usize, Subspace)>)> {
        let mut methods = Vec::new();
        let mut pieces = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            if let Some(blocks) = &self.splits[c] {
                for s in self.declared_pieces(c, blocks)? {
                    pieces.push((c, s));
                }
                methods.push(SplitMethod::Declared);
                continue;
            }
            let h = comp.subgroup();
            if !comp.cocycle().is_trivial() {
                return Err(Error::UnsupportedSplit {
                    component: c,
                    reason: "nontrivial cocycle and no declared split".into(),
                });
            }
            let chars = abelian_characters(&self.group, h, self.field.order())
                .map_err(|reason| Error::UnsupportedSplit { component: c, reason })?;
            let m = h.order();
            let r = comp.r();
            let inv_m = Scalar::from_ratio(&self.field, 1, m as i64);
            let n = self.field.order() as i64;
            for chi in &chars {
                // ε_χ = (1/|H|) Σ_h χ(h)⁻¹ u_h, and ε_χ ⊗ M_r is simple
                let mut vecs = Vec::with_capacity(r * r);
                for i in 0..r {
                    for j in 0..r {
                        let mut v = zero_vec(&self.field, self.dim());
                        for (hp, &a) in chi.iter().enumerate() {
                            let id = self.global_id(c, Unit { h: hp, i, j });
                            v[id] = &Scalar::zeta_pow(&self.field, (n - a as i64) % n) * &inv_m;
                        }
                        vecs.push(v);
                    }
                }
                pieces.push((c, Subspace::span(self.dim(), vecs)?));
            }
            methods.push(SplitMethod::Characters { characters: chars });
        }
        Ok((methods, pieces))
    }

    fn declared_pieces(&self, c: usize, blocks: &[Vec<Vec<Scalar>>]) -> Result<Vec<Subspace>> {
        let unsupported = |reason: String| Error::UnsupportedSplit { component: c, reason };
        let offset = self.offsets[c];
        let mut spaces = Vec::new();
        for (b, vecs) in blocks.iter().enumerate() {
            let global: Vec<Vec<Scalar>> = vecs
                .iter()
                .map(|v| {
                    let mut g = zero_vec(&self.field, self.dim());
                    g[offset..offset + v.len()].clone_from_slice(v);
                    g
                })
                .collect();
            let s = Subspace::span(self.dim(), global)?;
            let t = subalgebra_table(&self.table, &s)
                .map_err(|_| unsupported(format!("declared block {b} is not a subalgebra")))?;
            // central simple over F keeps its dimension over the algebraic closure
            if !t.trace_form_radical().is_zero() || t.center().dim() != 1 {
                return Err(unsupported(format!("declared block {b} is not central simple")));
            }
            spaces.push(s);
        }
        let mut total = Subspace::zero(self.dim());
        for s in &spaces {
            total = total.sum(s)?;
        }
        if total.dim() != spaces.iter().map(Subspace::dim).sum::<usize>()
            || total.dim() != self.components[c].dim()
        {
            return Err(unsupported("declared blocks do not form a direct sum equal to the component".into()));
        }
        for (x, s) in spaces.iter().enumerate() {
            for (y, t) in spaces.iter().enumerate() {
                if x != y && !s.product(t, &self.table)?.is_zero() {
                    return Err(unsupported(format!("declared blocks {x} and {y} do not annihilate")));
                }
            }
        }
        Ok(spaces)
    }

    /// `exp(A)` of the ungraded algebra, after splitting each G-simple
    /// component into simple algebras.
    pub fn exp_ungraded_full(&self) -> Result<UngradedSplit> {
        let (methods, pieces) = self.ungraded_pieces()?;
        let problem = ChainProblem {
            mult: &self.table,
            weights: pieces.iter().map(|(_, s)| s.dim()).collect(),
            components: pieces.iter().map(|(_, s)| s.clone()).collect(),
            radical: self.radical_subspace(),
            max_len: self.chain_bound(),
        };
        let report = problem.search()?;
        Ok(UngradedSplit {
            methods,
            pieces: pieces.iter().map(|(c, s)| (*c, s.dim())).collect(),
            report,
        })
    }

    /// Regrades by `G/N`; the result is kept at the basis level since the
    /// components need not stay in normal form.
    pub fn quotient_regrade(&self, normal: &Subgroup) -> Result<Regrading> {
        let quotient = quotient_group(&self.group, normal)?;
        let degrees: Vec<usize> = self.degrees.iter().map(|&g| quotient.projection[g]).collect();
        let e_bar = quotient.group.identity();
        let identity_component = (0..self.dim()).filter(|&k| degrees[k] == e_bar).collect();
        let expected_identity_component = (0..self.dim())
            .filter(|&k| normal.contains(self.degrees[k]))
            .collect();
        let qg = &quotient.group;
        let grading_compatible = (0..self.dim()).all(|a| {
            (0..self.dim()).all(|b| {
                self.table
                    .get(a, b)
                    .iter()
                    .all(|(k, _)| degrees[*k] == qg.mul(degrees[a], degrees[b]))
            })
        });
        Ok(Regrading {
            group_order: self.group.order(),
            subgroup_order: normal.order(),
            quotient_order: qg.order(),
            quotient,
            degrees,
            identity_component,
            expected_identity_component,
            grading_compatible,
        })
    }
}

impl Bilinear for GradedAlgebra {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.table.mul_vec(x, y)
    }
}

/// Structure constants of a subalgebra in the echelon basis of `s`.
pub fn subalgebra_table(mult: &StructureTable, s: &Subspace) -> Result<StructureTable> {
    let basis = s.basis();
    let mut t = StructureTable::zero(mult.field(), basis.len());
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let p = mult.mul_vec(x, y);
            if !s.contains(&p) {
                return Err(Error::Validation("span is not closed under products".into()));
            }
            let coords = s
                .pivots()
                .iter()
                .enumerate()
                .filter(|(_, &col)| !p[col].is_zero())
                .map(|(k, &col)| (k, p[col].clone()))
                .collect();
            t.set(a, b, coords);
        }
    }
    Ok(t)
}
