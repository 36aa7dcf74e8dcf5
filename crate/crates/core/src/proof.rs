//! The counting argument behind `exp_conj^G(A) ≤ |G|² exp(A_e)`, carried
//! out on a concrete instance.
//!
//! A maximal chain witness `Λ = z₁ v₁ z₂ ⋯ v_n z_{n+1}` is padded into
//! `Ω = E₁ v′₁ E₂ ⋯ v′_n E_{n+1}`, where each `E_i` is an enhanced string
//! monomial of the i-th component and each `v′_i` is a radical element
//! absorbing the padding around `v_i`. For every `g ∈ G`, `Ω` is cut at the
//! positions where its prefix degree equals `g`; the idempotent that fits
//! each cut (its e-stop) selects an e-block, and counting how many `g`
//! select each block yields the bound.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{BasisRef, ExponentReport, GradedAlgebra, PeirceLabel};
use crate::arith::{is_zero_vec, Bilinear, Scalar};
use crate::error::{Error, Result};
use crate::group::Side;
use crate::gsimple::{Factor, GradedMonomial, MonomialValue, Unit};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OmegaFactorKind {
    Semisimple { component: usize, unit: Unit, id: usize, coeff: Scalar },
    /// A product of basis elements carried as one radical factor.
    Composite { constituents: Vec<(usize, Scalar)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaFactor {
    pub kind: OmegaFactorKind,
    #[serde(skip)]
    pub value: Vec<Scalar>,
    pub degree: usize,
    pub left: PeirceLabel,
    pub right: PeirceLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaMonomial {
    pub factors: Vec<OmegaFactor>,
    /// Factor ranges `[start, end)` of `E₁, …, E_{n+1}`.
    pub e_ranges: Vec<(usize, usize)>,
    /// Positions of the composite radical factors `v′_i`.
    pub radical_positions: Vec<usize>,
    pub chain: Vec<usize>,
    pub g0: usize,
    #[serde(skip)]
    pub value: Vec<Scalar>,
}

impl OmegaMonomial {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn product(alg: &GradedAlgebra, values: impl IntoIterator<Item = Vec<Scalar>>) -> Option<Vec<Scalar>> {
    values.into_iter().reduce(|acc, v| alg.mul_vec(&acc, &v))
}

fn scaled_unit(alg: &GradedAlgebra, id: usize, coeff: &Scalar) -> Vec<Scalar> {
    let mut v = alg.unit_vector(id);
    v[id] = coeff.clone();
    v
}

fn semisimple_factor(alg: &GradedAlgebra, component: usize, f: &Factor) -> OmegaFactor {
    let comp = &alg.components()[component];
    let id = alg.global_id(component, f.unit);
    OmegaFactor {
        value: scaled_unit(alg, id, &f.coeff),
        degree: comp.degree(f.unit),
        left: PeirceLabel {
            component,
            index: f.unit.i,
        },
        right: PeirceLabel {
            component,
            index: f.unit.j,
        },
        kind: OmegaFactorKind::Semisimple {
            component,
            unit: f.unit,
            id,
            coeff: f.coeff.clone(),
        },
    }
}

fn composite_factor(alg: &GradedAlgebra, parts: Vec<OmegaFactor>) -> Result<OmegaFactor> {
    let g = alg.group();
    let first = parts.first().expect("composite factors are nonempty");
    let last = parts.last().expect("composite factors are nonempty");
    let (left, right) = (first.left, last.right);
    let degree = g.product(parts.iter().map(|p| p.degree));
    let value = product(alg, parts.iter().map(|p| p.value.clone())).expect("nonempty");
    if !alg.radical_subspace().contains(&value) {
        return Err(Error::Validation("composite factor left the radical".into()));
    }
    let constituents = parts
        .into_iter()
        .map(|p| match p.kind {
            OmegaFactorKind::Semisimple { id, coeff, .. } => (id, coeff),
            OmegaFactorKind::Composite { .. } => unreachable!("constituents are basis elements"),
        })
        .collect();
    Ok(OmegaFactor {
        kind: OmegaFactorKind::Composite { constituents },
        value,
        degree,
        left,
        right,
    })
}

fn radical_basis_factor(alg: &GradedAlgebra, id: usize) -> Result<OmegaFactor> {
    let (left, right) = alg.peirce(id);
    let (Some(left), Some(right)) = (left, right) else {
        return Err(Error::PeirceUndetermined {
            g: alg.degree(id),
            position: id,
            reason: format!("radical basis element {id} has an empty Peirce label"),
        });
    };
    Ok(OmegaFactor {
        kind: OmegaFactorKind::Semisimple {
            component: usize::MAX,
            unit: Unit { h: 0, i: 0, j: 0 },
            id,
            coeff: Scalar::one(alg.field()),
        },
        value: alg.unit_vector(id),
        degree: alg.degree(id),
        left,
        right,
    })
}

fn monomial_factors(alg: &GradedAlgebra, component: usize, m: &GradedMonomial) -> Vec<OmegaFactor> {
    m.factors.iter().map(|f| semisimple_factor(alg, component, f)).collect()
}

/// Builds `Ω` from the chain witness of `exp_conj^G`. Each `z_i` is padded
/// on the right as `z_i X_i E_i Y_i`; the pieces `Y_i v_i z_{i+1} X_{i+1}`
/// become the composite radical factors, and `z₁X₁` and `Y_{n+1}` are dropped.
pub fn omega_construct(alg: &GradedAlgebra, report: &ExponentReport) -> Result<OmegaMonomial> {
    let lambda = report
        .lambda
        .as_ref()
        .ok_or_else(|| Error::WitnessExtractionFailed("the algebra has no semisimple part".into()))?;
    let ids = lambda
        .basis_ids()
        .ok_or_else(|| Error::WitnessExtractionFailed("witness factors are not basis elements".into()))?;
    let mut zs = Vec::new();
    let mut vs = Vec::new();
    for (k, &id) in ids.iter().enumerate() {
        match (k % 2, alg.locate(id)) {
            (0, BasisRef::Semisimple { component, unit }) => zs.push((component, unit)),
            (1, BasisRef::Radical(_)) => vs.push(id),
            _ => {
                return Err(Error::WitnessExtractionFailed(format!(
                    "witness factor {k} has the wrong kind"
                )))
            }
        }
    }
    let chain: Vec<usize> = zs.iter().map(|(c, _)| *c).collect();
    let mut distinct = chain.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != chain.len() {
        return Err(Error::WitnessExtractionFailed(format!(
            "witness chain {chain:?} repeats a component"
        )));
    }
    let pads: Vec<_> = zs
        .iter()
        .map(|&(c, u)| alg.components()[c].pad_monomial(u, Side::Right))
        .collect();
    let mut factors = Vec::new();
    let mut e_ranges = Vec::new();
    let mut radical_positions = Vec::new();
    for (i, pad) in pads.iter().enumerate() {
        let c = zs[i].0;
        let comp = &alg.components()[c];
        let e00 = comp.idempotent(0);
        let one = MonomialValue::Term(Scalar::one(alg.field()), e00);
        if pad.e.factors.first().map(|f| f.unit) != Some(e00) || pad.e.value != one {
            return Err(Error::Validation(format!(
                "padding monomial of component {c} does not start with and evaluate to 1⊗e_00"
            )));
        }
        let start = factors.len();
        factors.extend(monomial_factors(alg, c, &pad.e));
        e_ranges.push((start, factors.len()));
        if i + 1 < pads.len() {
            let (c2, u2) = zs[i + 1];
            let mut parts = monomial_factors(alg, c, &pad.y);
            parts.push(radical_basis_factor(alg, vs[i])?);
            parts.push(semisimple_factor(
                alg,
                c2,
                &Factor {
                    unit: u2,
                    coeff: Scalar::one(alg.field()),
                },
            ));
            parts.extend(monomial_factors(alg, c2, &pads[i + 1].x));
            radical_positions.push(factors.len());
            factors.push(composite_factor(alg, parts)?);
        }
    }
    let value = product(alg, factors.iter().map(|f| f.value.clone())).expect("nonempty");
    if is_zero_vec(&value) {
        return Err(Error::Validation("Ω evaluates to zero".into()));
    }
    // Λ = (z₁X₁)·Ω·Y_{n+1}
    let (c1, u1) = zs[0];
    let (cl, _) = *zs.last().expect("nonempty");
    let mut outer = vec![alg.unit_vector(alg.global_id(c1, u1))];
    outer.extend(monomial_factors(alg, c1, &pads[0].x).into_iter().map(|f| f.value));
    outer.push(value.clone());
    outer.extend(
        monomial_factors(alg, cl, &pads.last().expect("nonempty").y)
            .into_iter()
            .map(|f| f.value),
    );
    if product(alg, outer).expect("nonempty") != lambda.value {
        return Err(Error::Validation("padding changed the value of Λ".into()));
    }
    let g0 = alg.group().product(factors.iter().map(|f| f.degree));
    Ok(OmegaMonomial {
        factors,
        e_ranges,
        radical_positions,
        chain,
        g0,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EStop {
    /// Number of factors before the cut.
    pub cut: usize,
    pub label: PeirceLabel,
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub g: usize,
    pub exists: bool,
    /// `[start, end)` factor ranges.
    pub x: Option<(usize, usize)>,
    pub sigmas: Vec<(usize, usize)>,
    pub y: Option<(usize, usize)>,
    pub estops: Vec<EStop>,
    /// Component → the e-block its e-stops determine.
    pub blocks: BTreeMap<usize, usize>,
    pub d: usize,
}

/// Cuts `Ω = X_g Σ₁ ⋯ Σ_d Y` at every position whose prefix degree is `g`
/// and identifies the e-stop at each cut from the Peirce labels of the
/// neighbouring factors, cross-checked by trying every idempotent.
pub fn omega_decompose(alg: &GradedAlgebra, omega: &OmegaMonomial, g: usize) -> Result<Decomposition> {
    let grp = alg.group();
    let len = omega.len();
    let mut prefix_deg = vec![grp.identity(); len + 1];
    for (q, f) in omega.factors.iter().enumerate() {
        prefix_deg[q + 1] = grp.mul(prefix_deg[q], f.degree);
    }
    let cuts: Vec<usize> = (1..=len).filter(|&q| prefix_deg[q] == g).collect();
    if cuts.is_empty() {
        return Ok(Decomposition {
            g,
            exists: false,
            x: None,
            sigmas: Vec::new(),
            y: None,
            estops: Vec::new(),
            blocks: BTreeMap::new(),
            d: 0,
        });
    }
    let x = (0, cuts[0]);
    let sigmas: Vec<(usize, usize)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    let y = (*cuts.last().expect("nonempty"), len);
    check_segments(alg, omega, g, x, &sigmas, y)?;

    let mut estops = Vec::with_capacity(cuts.len());
    for &q in &cuts {
        let before = omega.factors[q - 1].right;
        if let Some(after) = omega.factors.get(q).map(|f| f.left) {
            if after != before {
                return Err(Error::Validation(format!(
                    "Peirce labels disagree at cut {q}: {before:?} then {after:?}"
                )));
            }
        }
        let block = alg.components()[before.component]
            .e_block_decomposition()
            .block_of_index[before.index];
        estops.push(EStop {
            cut: q,
            label: before,
            block,
        });
    }
    brute_force_estops(alg, omega, &estops, g)?;

    let mut blocks = BTreeMap::new();
    for s in &estops {
        if let Some(&b) = blocks.get(&s.label.component) {
            if b != s.block {
                return Err(Error::CensusViolation(format!(
                    "for g = {g}, e-stops in component {} determine blocks {b} and {}",
                    s.label.component, s.block
                )));
            }
        }
        blocks.insert(s.label.component, s.block);
    }
    Ok(Decomposition {
        g,
        exists: true,
        x: Some(x),
        d: sigmas.len(),
        sigmas,
        y: Some(y),
        estops,
        blocks,
    })
}

/// Rescans the segments: each has the expected degree and no proper
/// nonempty prefix of that degree.
fn check_segments(
    alg: &GradedAlgebra,
    omega: &OmegaMonomial,
    g: usize,
    x: (usize, usize),
    sigmas: &[(usize, usize)],
    y: (usize, usize),
) -> Result<()> {
    let grp = alg.group();
    let minimal = |(a, b): (usize, usize), target: usize| {
        let mut d = grp.identity();
        for q in a..b {
            d = grp.mul(d, omega.factors[q].degree);
            if d == target && q + 1 < b {
                return false;
            }
        }
        d == target
    };
    let bad = |what: &str| Err(Error::Validation(format!("decomposition for g = {g}: {what}")));
    if !minimal(x, g) {
        return bad("X has the wrong degree or a proper prefix of degree g");
    }
    if let Some(s) = sigmas.iter().find(|&&s| !minimal(s, grp.identity())) {
        return bad(&format!("segment {s:?} is not a minimal degree-e segment"));
    }
    let y_deg = grp.product((y.0..y.1).map(|q| omega.factors[q].degree));
    if y_deg != grp.mul(grp.inv(g), omega.g0) {
        return bad("Y does not have degree g⁻¹g₀");
    }
    Ok(())
}

/// Tries every idempotent at every cut: exactly the chosen e-stop keeps the
/// product nonzero, and inserting all e-stops leaves the value unchanged.
fn brute_force_estops(alg: &GradedAlgebra, omega: &OmegaMonomial, estops: &[EStop], g: usize) -> Result<()> {
    let len = omega.len();
    let mut prefix: Vec<Option<Vec<Scalar>>> = vec![None; len + 1];
    for q in 0..len {
        let f = &omega.factors[q].value;
        prefix[q + 1] = Some(match &prefix[q] {
            None => f.clone(),
            Some(p) => alg.mul_vec(p, f),
        });
    }
    let mut suffix: Vec<Option<Vec<Scalar>>> = vec![None; len + 1];
    for q in (0..len).rev() {
        let f = &omega.factors[q].value;
        suffix[q] = Some(match &suffix[q + 1] {
            None => f.clone(),
            Some(s) => alg.mul_vec(f, s),
        });
    }
    let idempotents = alg.all_idempotents();
    for s in estops {
        let mut fitting = Vec::new();
        for &label in &idempotents {
            let mut v = alg.unit_vector(alg.idempotent_id(label));
            if let Some(p) = &prefix[s.cut] {
                v = alg.mul_vec(p, &v);
            }
            if let Some(t) = &suffix[s.cut] {
                v = alg.mul_vec(&v, t);
            }
            if !is_zero_vec(&v) {
                fitting.push((label, v));
            }
        }
        if fitting.len() != 1 || fitting[0].0 != s.label || fitting[0].1 != omega.value {
            return Err(Error::PeirceUndetermined {
                g,
                position: s.cut,
                reason: format!(
                    "idempotents keeping Ω nonzero: {:?}",
                    fitting.iter().map(|(l, _)| l).collect::<Vec<_>>()
                ),
            });
        }
    }
    let mut values = Vec::with_capacity(len + estops.len());
    let mut next = estops.iter().peekable();
    for q in 0..len {
        values.push(omega.factors[q].value.clone());
        if let Some(s) = next.next_if(|s| s.cut == q + 1) {
            values.push(alg.unit_vector(alg.idempotent_id(s.label)));
        }
    }
    if product(alg, values).expect("nonempty") != omega.value {
        return Err(Error::Validation(format!(
            "inserting the e-stops for g = {g} changed the value of Ω"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCensus {
    pub component: usize,
    pub subgroup_order: usize,
    /// `[G:H_m]`, the number of e-blocks including empty ones.
    pub index: usize,
    pub block_sizes: Vec<usize>,
    /// For each block, the group elements whose decomposition selects it.
    pub fibers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummationIdentity {
    /// `Σ_g Σ_m b²_{g,m}`.
    pub lhs: usize,
    /// `Σ_m |H_m| Σ_{j represented} b²_{m,j}`.
    pub rhs: usize,
    pub holds: bool,
}

/// For one `g`: the blocks met by the e-stops, in order, form a nonzero
/// chain in `A_e`, so `exp(A_e) ≥ Σ b²`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockChainCheck {
    pub g: usize,
    pub blocks: Vec<(usize, usize)>,
    pub sum_of_squares: usize,
    pub chain_nonzero: bool,
    pub exp_e: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusTable {
    pub decompositions: Vec<Decomposition>,
    pub components: Vec<ComponentCensus>,
    pub all_exist: bool,
    /// `b[g][m]`: size of the block of component `m` selected by `g`, or 0.
    pub b: Vec<Vec<usize>>,
    pub summation: Option<SummationIdentity>,
    pub block_chains: Vec<BlockChainCheck>,
}

pub fn estop_census(alg: &GradedAlgebra, omega: &OmegaMonomial) -> Result<CensusTable> {
    let grp = alg.group();
    let decompositions = grp
        .elements()
        .map(|g| omega_decompose(alg, omega, g))
        .collect::<Result<Vec<_>>>()?;
    let q = alg.components().len();
    let mut components: Vec<ComponentCensus> = alg
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            let sizes = comp.e_block_decomposition().block_sizes;
            ComponentCensus {
                component: c,
                subgroup_order: comp.h_order(),
                index: sizes.len(),
                fibers: vec![Vec::new(); sizes.len()],
                block_sizes: sizes,
            }
        })
        .collect();
    let mut b = vec![vec![0; q]; grp.order()];
    for dec in &decompositions {
        for (&c, &blk) in &dec.blocks {
            components[c].fibers[blk].push(dec.g);
            b[dec.g][c] = components[c].block_sizes[blk];
        }
    }
    for cc in &components {
        for (blk, fiber) in cc.fibers.iter().enumerate() {
            if !fiber.is_empty() && fiber.len() != cc.subgroup_order {
                let table = serde_json::to_string(&components).expect("serializable");
                return Err(Error::CensusViolation(format!(
                    "block {blk} of component {} is selected by {} elements, expected |H| = {}; table {table}",
                    cc.component,
                    fiber.len(),
                    cc.subgroup_order
                )));
            }
        }
    }
    let all_exist = decompositions.iter().all(|d| d.exists);
    let summation = all_exist.then(|| {
        let lhs = b.iter().flatten().map(|x| x * x).sum();
        let rhs = components
            .iter()
            .map(|cc| {
                cc.subgroup_order
                    * cc.fibers
                        .iter()
                        .zip(&cc.block_sizes)
                        .filter(|(f, _)| !f.is_empty())
                        .map(|(_, t)| t * t)
                        .sum::<usize>()
            })
            .sum();
        SummationIdentity {
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    });
    if let Some(s) = &summation {
        if !s.holds {
            return Err(Error::CensusViolation(format!(
                "summation identity fails: {} != {}",
                s.lhs, s.rhs
            )));
        }
    }

    let (part, exp_e) = alg.exp_e()?;
    let problem = alg.e_problem(&part);
    let mut block_chains = Vec::new();
    for dec in decompositions.iter().filter(|d| d.exists) {
        let mut seq: Vec<(usize, usize)> = Vec::new();
        for s in &dec.estops {
            let key = (s.label.component, s.block);
            if seq.last() != Some(&key) {
                seq.push(key);
            }
        }
        let chain: Vec<usize> = seq
            .iter()
            .map(|&(c, blk)| {
                part.blocks
                    .iter()
                    .position(|eb| eb.component == c && eb.block == blk)
                    .expect("e-stops lie in nonzero blocks")
            })
            .collect();
        let chain_nonzero = !problem.chain_product(&chain)?.is_zero();
        let sum_of_squares = b[dec.g].iter().map(|x| x * x).sum();
        if !chain_nonzero || sum_of_squares > exp_e.value {
            return Err(Error::CensusViolation(format!(
                "for g = {}, blocks {seq:?} give Σb² = {sum_of_squares} against exp(A_e) = {} (chain nonzero: {chain_nonzero})",
                dec.g, exp_e.value
            )));
        }
        block_chains.push(BlockChainCheck {
            g: dec.g,
            blocks: seq,
            sum_of_squares,
            chain_nonzero,
            exp_e: exp_e.value,
        });
    }
    Ok(CensusTable {
        decompositions,
        components,
        all_exist,
        b,
        summation,
        block_chains,
    })
}

/// `(Σb)² ≤ w·Σb²`, certified by `r·Σb² − (Σb)² = Σ_{i<j}(b_i − b_j)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchySchwarzCertificate {
    pub entries: Vec<u64>,
    pub weight: u64,
    pub lhs: u128,
    pub rhs: u128,
    pub pairwise_squares: u128,
    pub holds: bool,
    pub equality: bool,
}

pub fn cauchy_schwarz_check(b: &[u64], weight: u64) -> Result<CauchySchwarzCertificate> {
    let r = b.len() as u64;
    if weight < r {
        return Err(Error::Validation(format!(
            "weight {weight} is smaller than the number of entries {r}"
        )));
    }
    let sum: u128 = b.iter().map(|&x| x as u128).sum();
    let sum_sq: u128 = b.iter().map(|&x| (x as u128) * (x as u128)).sum();
    let mut pairwise: u128 = 0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let d = b[i].abs_diff(b[j]) as u128;
            pairwise += d * d;
        }
    }
    let lhs = sum * sum;
    let rhs = weight as u128 * sum_sq;
    assert_eq!(r as u128 * sum_sq - lhs, pairwise, "Lagrange identity");
    // rhs − lhs = (w − r)·Σb² + Σ_{i<j}(b_i − b_j)²
    let gap = (weight - r) as u128 * sum_sq + pairwise;
    assert_eq!(rhs - lhs, gap);
    Ok(CauchySchwarzCertificate {
        entries: b.to_vec(),
        weight,
        lhs,
        rhs,
        pairwise_squares: pairwise,
        holds: lhs <= rhs,
        equality: gap == 0,
    })
}

/// Per component: `dim = |H| r² ≤ |H|·[G:H]·Σ_j b_j² = |G|·Σ_j b_j²`.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentBound {
    pub component: usize,
    pub dim: usize,
    pub bound: usize,
    pub certificate: CauchySchwarzCertificate,
}

/// `L ≤ |G|·Σ_m Σ_j b²_{m,j} ≤ |G|·Σ_g Σ_m b²_{g,m} ≤ |G|²·exp(A_e)` over the
/// witness chain. The middle step needs every nonzero block of the chain's
/// components to be selected by some `g`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundChain {
    pub lhs: usize,
    pub block_bound: usize,
    pub census_bound: usize,
    pub rhs: usize,
    pub steps_hold: [bool; 3],
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CensusOutcome {
    Done { table: Box<CensusTable>, bound_chain: BoundChain },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct BzReport {
    pub lhs: usize,
    pub exp_e: usize,
    pub group_order: usize,
    pub rhs: usize,
    pub slack: usize,
    pub equality: bool,
    pub conj_chain: Vec<usize>,
    pub conj_witness: Vec<usize>,
    pub e_chain: Vec<(usize, usize)>,
    pub e_witness: Vec<usize>,
    pub component_bounds: Vec<ComponentBound>,
    pub omega: Option<OmegaMonomial>,
    pub census: CensusOutcome,
}

/// Computes both sides of `exp_conj^G(A) ≤ |G|²·exp(A_e)` and, where the
/// witness allows it, the full census behind the bound.
pub fn verify_bz(alg: &GradedAlgebra) -> Result<BzReport> {
    let conj = alg.exp_conj_graded()?;
    let (part, exp_e) = alg.exp_e()?;
    let n = alg.group().order();
    let lhs = conj.value;
    let rhs = n * n * exp_e.value;
    if lhs > rhs {
        return Err(Error::InequalityViolated { lhs, rhs });
    }
    let mut component_bounds = Vec::new();
    for (c, comp) in alg.components().iter().enumerate() {
        let sizes: Vec<u64> = comp
            .e_block_decomposition()
            .block_sizes
            .iter()
            .map(|&t| t as u64)
            .collect();
        let certificate = cauchy_schwarz_check(&sizes, sizes.len() as u64)?;
        let sum_sq: usize = sizes.iter().map(|&t| (t * t) as usize).sum();
        let dim = comp.dim();
        let bound = n * sum_sq;
        if !certificate.holds || dim > bound {
            return Err(Error::InequalityViolated { lhs: dim, rhs: bound });
        }
        component_bounds.push(ComponentBound {
            component: c,
            dim,
            bound,
            certificate,
        });
    }
    let (omega, census) = match omega_construct(alg, &conj) {
        Err(e) => (
            None,
            CensusOutcome::Skipped {
                reason: e.to_string(),
            },
        ),
        Ok(omega) => match estop_census(alg, &omega) {
            Ok(table) => {
                let block_bound: usize = conj.chain.iter().map(|&c| component_bounds[c].bound).sum();
                let census_bound = n * table.b.iter().flatten().map(|x| x * x).sum::<usize>();
                let bound_chain = BoundChain {
                    lhs,
                    block_bound,
                    census_bound,
                    rhs,
                    steps_hold: [lhs <= block_bound, block_bound <= census_bound, census_bound <= rhs],
                };
                (
                    Some(omega),
                    CensusOutcome::Done {
                        table: Box::new(table),
                        bound_chain,
                    },
                )
            }
            Err(e @ (Error::CensusViolation(_) | Error::InequalityViolated { .. })) => return Err(e),
            Err(e) => (
                Some(omega),
                CensusOutcome::Skipped {
                    reason: e.to_string(),
                },
            ),
        },
    };
    let ids = |r: &ExponentReport| {
        r.lambda
            .as_ref()
            .and_then(|l| l.basis_ids())
            .unwrap_or_default()
    };
    Ok(BzReport {
        lhs,
        exp_e: exp_e.value,
        group_order: n,
        rhs,
        slack: rhs - lhs,
        equality: lhs == rhs,
        conj_witness: ids(&conj),
        conj_chain: conj.chain.clone(),
        e_chain: exp_e
            .chain
            .iter()
            .map(|&k| (part.blocks[k].component, part.blocks[k].block))
            .collect(),
        e_witness: ids(&exp_e),
        component_bounds,
        omega,
        census,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::arith::CyclotomicField;
    use crate::generators::{gen_chain, gen_elementary, gen_group_algebra, ChainPlan, CocyclePlan, ComponentPlan, LinkPlan};
    use crate::group::{make_group, FiniteGroup, GroupSpec};
    use std::sync::Arc;

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(make_group(&GroupSpec::parse(spec).unwrap()).unwrap())
    }

    fn m2_c2() -> GradedAlgebra {
        let g = grp("cyclic:2");
        gen_elementary(g.clone(), CyclotomicField::new(2), vec![0, 1]).unwrap()
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let c = cauchy_schwarz_check(&[1, 2], 2).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds, c.equality), (9, 10, true, false));
        let c = cauchy_schwarz_check(&[2, 2], 2).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equality), (16, 16, true));
        let c = cauchy_schwarz_check(&[3, 0, 0], 3).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (9, 27, true));
        // the zero vector is an equality case for every weight
        assert!(cauchy_schwarz_check(&[0, 0], 5).unwrap().equality);
        assert!(cauchy_schwarz_check(&[1, 1], 1).is_err());
    }

    #[test]
    fn tight_instance() {
        let r = verify_bz(&m2_c2()).unwrap();
        assert_eq!((r.lhs, r.exp_e, r.rhs, r.equality), (4, 1, 4, true));
        let CensusOutcome::Done { table, bound_chain } = r.census else {
            panic!("census should run")
        };
        assert!(table.all_exist);
        assert_eq!(table.components[0].fibers, vec![vec![0], vec![1]]);
        assert_eq!(bound_chain.steps_hold, [true, true, true]);
    }

    #[test]
    fn omega_for_m2() {
        let a = m2_c2();
        let conj = a.exp_conj_graded().unwrap();
        let omega = omega_construct(&a, &conj).unwrap();
        let units: Vec<(usize, usize)> = omega
            .factors
            .iter()
            .map(|f| match &f.kind {
                OmegaFactorKind::Semisimple { unit, .. } => (unit.i, unit.j),
                _ => panic!("no radical here"),
            })
            .collect();
        assert_eq!(units, vec![(0, 0), (0, 1), (1, 1), (1, 0)]);
        assert_eq!(omega.g0, 0);
        let d = omega_decompose(&a, &omega, 1).unwrap();
        // prefix degrees: e, g, g, e
        assert_eq!(d.x, Some((0, 2)));
        assert_eq!(d.sigmas, vec![(2, 3)]);
        assert_eq!(d.y, Some((3, 4)));
        assert!(d.estops.iter().all(|s| s.label.index == 1));
    }

    #[test]
    fn group_algebra_census() {
        let g = grp("cyclic:2");
        let a = gen_group_algebra(g, CyclotomicField::new(2)).unwrap();
        let conj = a.exp_conj_graded().unwrap();
        let omega = omega_construct(&a, &conj).unwrap();
        let hs: Vec<usize> = omega
            .factors
            .iter()
            .map(|f| match &f.kind {
                OmegaFactorKind::Semisimple { unit, .. } => unit.h,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(hs, vec![0, 0, 1, 0, 1]);
        let table = estop_census(&a, &omega).unwrap();
        assert_eq!(table.components[0].fibers, vec![vec![0, 1]]);
        let s = table.summation.unwrap();
        assert_eq!((s.lhs, s.rhs), (2, 2));
    }

    #[test]
    fn group_algebras_have_slack() {
        for k in 1..=6 {
            let g = grp(&format!("cyclic:{k}"));
            let a = gen_group_algebra(g, CyclotomicField::new(k)).unwrap();
            let r = verify_bz(&a).unwrap();
            assert_eq!((r.lhs, r.exp_e, r.slack), (k, 1, k * k - k));
        }
    }

    #[test]
    fn ut2_census_crosses_components() {
        let g = grp("cyclic:2");
        let one = ComponentPlan {
            subgroup: vec![0],
            cocycle: CocyclePlan::Trivial,
            tuple: vec![0],
        };
        let plan = ChainPlan {
            components: vec![one.clone(), one],
            links: vec![LinkPlan {
                from: PeirceLabel { component: 0, index: 0 },
                to: PeirceLabel { component: 1, index: 0 },
                degree: 1,
            }],
        };
        let a = gen_chain(g, CyclotomicField::new(2), &plan).unwrap();
        let r = verify_bz(&a).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 4));
        let omega = r.omega.unwrap();
        assert_eq!(omega.radical_positions.len(), 1);
        let CensusOutcome::Done { table, .. } = r.census else {
            panic!("census should run")
        };
        // g = e stops only in component 0, g = g only in component 1
        assert_eq!(table.decompositions[0].blocks.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(table.decompositions[1].blocks.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn missing_prefix_degree_means_no_decomposition() {
        let g = grp("cyclic:2");
        let a = gen_elementary(g, CyclotomicField::new(2), vec![0, 0]).unwrap();
        let conj = a.exp_conj_graded().unwrap();
        let omega = omega_construct(&a, &conj).unwrap();
        let d = omega_decompose(&a, &omega, 1).unwrap();
        assert!(!d.exists && d.estops.is_empty());
    }
}
