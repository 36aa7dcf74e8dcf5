//! Seeded construction of valid graded algebras.
//!
//! Multi-component instances are tensor algebras over the semisimple part:
//! each link `a → b` adds a free bimodule generator `w` with
//! `(1⊗e_{i,i}) w (1⊗e_{j,j}) = w` for chosen diagonal indices `i` of
//! component `a` and `j` of component `b`, and homogeneous of a chosen
//! degree. The radical is spanned by paths `s₀ w₁ s₁ ⋯ w_k s_k` through
//! links with increasing component ids, so it is nilpotent and any link
//! degree gives a valid grading.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, PeirceLabel, RadicalElement, RadicalProduct};
use crate::arith::{CyclotomicField, FieldRef, Scalar};
use crate::cocycle::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{make_group, FiniteGroup, GroupSpec, Subgroup};
use crate::gsimple::{GSimpleAlgebra, Unit};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocyclePlan {
    Trivial,
    /// `∂t` for `t(h) = (num/den)·ζ^zeta_pow`, one triple per subgroup element.
    Coboundary { values: Vec<(i64, i64, i64)> },
    /// The nontrivial class on a Klein four-group, times an optional coboundary.
    Klein { twist: Option<Vec<(i64, i64, i64)>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPlan {
    pub subgroup: Vec<usize>,
    pub cocycle: CocyclePlan,
    pub tuple: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkPlan {
    pub from: PeirceLabel,
    pub to: PeirceLabel,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPlan {
    pub components: Vec<ComponentPlan>,
    pub links: Vec<LinkPlan>,
}

fn coboundary_scalars(field: &FieldRef, values: &[(i64, i64, i64)]) -> Vec<Scalar> {
    values
        .iter()
        .map(|&(num, den, k)| &Scalar::from_ratio(field, num, den) * &Scalar::zeta_pow(field, k))
        .collect()
}

pub fn build_cocycle(group: &FiniteGroup, field: &FieldRef, subgroup: Subgroup, plan: &CocyclePlan) -> Result<TwoCocycle> {
    match plan {
        CocyclePlan::Trivial => Ok(TwoCocycle::trivial(field, subgroup)),
        CocyclePlan::Coboundary { values } => {
            TwoCocycle::coboundary(group, subgroup, &coboundary_scalars(field, values))
        }
        CocyclePlan::Klein { twist } => {
            let k = TwoCocycle::klein_class(field, group, subgroup.clone())?;
            match twist {
                None => Ok(k),
                Some(values) => {
                    let t = TwoCocycle::coboundary(group, subgroup, &coboundary_scalars(field, values))?;
                    Ok(k.product(&t))
                }
            }
        }
    }
}

pub fn build_component(group: &Arc<FiniteGroup>, field: &FieldRef, plan: &ComponentPlan) -> Result<GSimpleAlgebra> {
    let h = Subgroup::new(group, plan.subgroup.clone())?;
    let f = build_cocycle(group, field, h, &plan.cocycle)?;
    GSimpleAlgebra::new(group.clone(), field.clone(), f, plan.tuple.clone())
}

/// `F[G]` with its fine grading: one component, `H = G`, `r = 1`, no radical.
pub fn gen_group_algebra(group: Arc<FiniteGroup>, field: FieldRef) -> Result<GradedAlgebra> {
    let plan = ChainPlan {
        components: vec![ComponentPlan {
            subgroup: Subgroup::whole(&group).elements().to_vec(),
            cocycle: CocyclePlan::Trivial,
            tuple: vec![group.identity()],
        }],
        links: Vec::new(),
    };
    gen_chain(group, field, &plan)
}

/// `M_r` with the elementary grading given by `tuple`.
pub fn gen_elementary(group: Arc<FiniteGroup>, field: FieldRef, tuple: Vec<usize>) -> Result<GradedAlgebra> {
    let plan = ChainPlan {
        components: vec![ComponentPlan {
            subgroup: vec![group.identity()],
            cocycle: CocyclePlan::Trivial,
            tuple,
        }],
        links: Vec::new(),
    };
    gen_chain(group, field, &plan)
}

/// One radical basis element: a path of links and the semisimple units
/// between them (`segments.len() == path.len() + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PathElement {
    path: Vec<usize>,
    segments: Vec<Unit>,
}

fn link_paths(plan: &ChainPlan) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..plan.links.len()).map(|l| vec![l]).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = plan.links[*p.last().expect("nonempty")].to.component;
            for (l, link) in plan.links.iter().enumerate() {
                if link.from.component == end {
                    let mut q = p.clone();
                    q.push(l);
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn path_elements(plan: &ChainPlan, comps: &[GSimpleAlgebra], path: &[usize]) -> Vec<PathElement> {
    let links: Vec<&LinkPlan> = path.iter().map(|&l| &plan.links[l]).collect();
    let k = links.len();
    // choices for each segment
    let mut choices: Vec<Vec<Unit>> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let (c, row, col): (usize, Option<usize>, Option<usize>) = if m == 0 {
            (links[0].from.component, None, Some(links[0].from.index))
        } else if m == k {
            (links[k - 1].to.component, Some(links[k - 1].to.index), None)
        } else {
            (links[m].from.component, Some(links[m - 1].to.index), Some(links[m].from.index))
        };
        let comp = &comps[c];
        let rows: Vec<usize> = row.map_or_else(|| (0..comp.r()).collect(), |i| vec![i]);
        let cols: Vec<usize> = col.map_or_else(|| (0..comp.r()).collect(), |j| vec![j]);
        let mut v = Vec::new();
        for h in 0..comp.h_order() {
            for &i in &rows {
                for &j in &cols {
                    v.push(Unit { h, i, j });
                }
            }
        }
        choices.push(v);
    }
    let mut out = vec![Vec::new()];
    for opts in &choices {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for u in opts {
                let mut p: Vec<Unit> = prefix.clone();
                p.push(*u);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|segments| PathElement {
            path: path.to_vec(),
            segments,
        })
        .collect()
}

/// Total dimension the plan would produce, without building it.
pub fn planned_dim(plan: &ChainPlan) -> usize {
    let sizes: Vec<(usize, usize)> = plan
        .components
        .iter()
        .map(|c| (c.subgroup.len(), c.tuple.len()))
        .collect();
    let semisimple: usize = sizes.iter().map(|(h, r)| h * r * r).sum();
    let radical: usize = link_paths(plan)
        .iter()
        .map(|p| {
            let first = plan.links[p[0]].from.component;
            let last = plan.links[*p.last().expect("nonempty")].to.component;
            let mut d = sizes[first].0 * sizes[first].1 * sizes[last].0 * sizes[last].1;
            for w in p.windows(2) {
                d *= sizes[plan.links[w[1]].from.component].0;
            }
            d
        })
        .sum();
    semisimple + radical
}

/// The tensor algebra over the components generated by the plan's links.
pub fn gen_chain(group: Arc<FiniteGroup>, field: FieldRef, plan: &ChainPlan) -> Result<GradedAlgebra> {
    let comps = plan
        .components
        .iter()
        .map(|c| build_component(&group, &field, c))
        .collect::<Result<Vec<_>>>()?;
    for (l, link) in plan.links.iter().enumerate() {
        let ok = link.from.component < link.to.component
            && link.to.component < comps.len()
            && link.from.index < comps[link.from.component].r()
            && link.to.index < comps[link.to.component].r()
            && link.degree < group.order();
        if !ok {
            return Err(Error::Validation(format!(
                "link {l} must join a lower to a higher component with valid indices and degree"
            )));
        }
    }
    let mut offsets = Vec::new();
    let mut next = 0;
    for c in &comps {
        offsets.push(next);
        next += c.dim();
    }
    let radical_start = next;
    let mut elements: Vec<PathElement> = Vec::new();
    for p in link_paths(plan) {
        elements.extend(path_elements(plan, &comps, &p));
    }
    let index: HashMap<PathElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(k, e)| (e.clone(), radical_start + k))
        .collect();
    let g = &group;
    let radical: Vec<RadicalElement> = elements
        .iter()
        .map(|e| {
            let first = plan.links[e.path[0]].from.component;
            let last = plan.links[*e.path.last().expect("nonempty")].to.component;
            let mut deg = comps[first].degree(e.segments[0]);
            for (m, &l) in e.path.iter().enumerate() {
                let c = plan.links[l].to.component;
                deg = g.mul(g.mul(deg, plan.links[l].degree), comps[c].degree(e.segments[m + 1]));
            }
            RadicalElement {
                degree: deg,
                left: Some(PeirceLabel {
                    component: first,
                    index: e.segments[0].i,
                }),
                right: Some(PeirceLabel {
                    component: last,
                    index: e.segments.last().expect("nonempty").j,
                }),
            }
        })
        .collect();
    let mut products = Vec::new();
    for (k, e) in elements.iter().enumerate() {
        let id = radical_start + k;
        let first = plan.links[e.path[0]].from.component;
        let last = plan.links[*e.path.last().expect("nonempty")].to.component;
        for u in comps[first].units() {
            if let Some((s, w)) = comps[first].unit_mul(u, e.segments[0]) {
                let mut f = e.clone();
                f.segments[0] = w;
                products.push(RadicalProduct {
                    left: offsets[first] + comps[first].index_of(u),
                    right: id,
                    value: vec![(index[&f], s)],
                });
            }
        }
        for u in comps[last].units() {
            let end = e.segments.len() - 1;
            if let Some((s, w)) = comps[last].unit_mul(e.segments[end], u) {
                let mut f = e.clone();
                f.segments[end] = w;
                products.push(RadicalProduct {
                    left: id,
                    right: offsets[last] + comps[last].index_of(u),
                    value: vec![(index[&f], s)],
                });
            }
        }
        for (k2, e2) in elements.iter().enumerate() {
            let start2 = plan.links[e2.path[0]].from.component;
            if start2 != last {
                continue;
            }
            let end = e.segments.len() - 1;
            if let Some((s, w)) = comps[last].unit_mul(e.segments[end], e2.segments[0]) {
                let mut path = e.path.clone();
                path.extend(&e2.path);
                let mut segments = e.segments[..end].to_vec();
                segments.push(w);
                segments.extend(&e2.segments[1..]);
                let f = PathElement { path, segments };
                products.push(RadicalProduct {
                    left: id,
                    right: radical_start + k2,
                    value: vec![(index[&f], s)],
                });
            }
        }
    }
    GradedAlgebra::new(group, field, comps, radical, products)
}

fn random_t(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<(i64, i64, i64)> {
    (0..m)
        .map(|_| {
            let num = *[1i64, -1, 2, -2, 3].choose(rng).expect("nonempty");
            let den = *[1i64, 2, 3].choose(rng).expect("nonempty");
            (num, den, rng.gen_range(0..n as i64))
        })
        .collect()
}

fn is_klein(group: &FiniteGroup, h: &Subgroup) -> bool {
    h.order() == 4 && h.elements().iter().all(|&x| group.mul(x, x) == group.identity())
}

fn random_cocycle(rng: &mut ChaCha8Rng, group: &FiniteGroup, h: &Subgroup, n: usize) -> CocyclePlan {
    let roll = rng.gen_range(0..3);
    if is_klein(group, h) && roll == 0 {
        let twist = rng.gen_bool(0.5).then(|| random_t(rng, 4, n));
        return CocyclePlan::Klein { twist };
    }
    if roll == 1 && h.order() > 1 {
        CocyclePlan::Coboundary {
            values: random_t(rng, h.order(), n),
        }
    } else {
        CocyclePlan::Trivial
    }
}

/// Groups of order at most 6.
pub const SUITE_GROUPS: [&str; 8] = [
    "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "klein", "symmetric:3",
];

pub const SUITE_MAX_DIM: usize = 20;

fn random_plan(rng: &mut ChaCha8Rng, group: &FiniteGroup, max_components: usize) -> ChainPlan {
    let subgroups = group.all_subgroups();
    let q = rng.gen_range(1..=max_components);
    let mut components = Vec::with_capacity(q);
    for _ in 0..q {
        let h = subgroups.choose(rng).expect("trivial subgroup exists").clone();
        // linked components multiply radical dimensions, so keep them small
        let r = rng.gen_range(1..=if q == 1 { 3 } else { 2 });
        let tuple = (0..r).map(|_| rng.gen_range(0..group.order())).collect();
        components.push(ComponentPlan {
            cocycle: random_cocycle(rng, group, &h, group.order()),
            subgroup: h.elements().to_vec(),
            tuple,
        });
    }
    let mut links = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            if rng.gen_bool(0.75) {
                links.push(LinkPlan {
                    from: PeirceLabel {
                        component: a,
                        index: rng.gen_range(0..components[a].tuple.len()),
                    },
                    to: PeirceLabel {
                        component: b,
                        index: rng.gen_range(0..components[b].tuple.len()),
                    },
                    degree: rng.gen_range(0..group.order()),
                });
            }
        }
    }
    ChainPlan { components, links }
}

/// A randomized instance for the validation suite.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub seed: u64,
    pub group: GroupSpec,
    pub plan: ChainPlan,
    pub algebra: GradedAlgebra,
}

/// Deterministic in `seed`: a group of order ≤ 6, at most three components,
/// and total dimension at most [`SUITE_MAX_DIM`]. Oversized draws are
/// rejected and redrawn from the same stream.
pub fn suite_case(seed: u64) -> Result<SuiteCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = GroupSpec::parse(SUITE_GROUPS.choose(&mut rng).expect("nonempty"))?;
    let group = Arc::new(make_group(&spec)?);
    let field = CyclotomicField::new(group.order());
    loop {
        let plan = random_plan(&mut rng, &group, 3);
        if planned_dim(&plan) > SUITE_MAX_DIM {
            continue;
        }
        let algebra = gen_chain(group.clone(), field.clone(), &plan)?;
        return Ok(SuiteCase {
            seed,
            group: spec,
            plan,
            algebra,
        });
    }
}

/// A random G-simple component for string-monomial checks: `r ≤ 5`,
/// `|H| ≤ 4`, cocycles from coboundaries and the Klein class.
pub fn random_string_case(rng: &mut ChaCha8Rng) -> Result<GSimpleAlgebra> {
    let specs = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "klein", "symmetric:3", "dihedral:4"];
    let spec = GroupSpec::parse(specs.choose(rng).expect("nonempty"))?;
    let group = Arc::new(make_group(&spec)?);
    let field = CyclotomicField::new(group.order());
    let small: Vec<Subgroup> = group.all_subgroups().into_iter().filter(|h| h.order() <= 4).collect();
    let h = small.choose(rng).expect("trivial subgroup exists").clone();
    let plan = if is_klein(&group, &h) && rng.gen_bool(0.5) {
        CocyclePlan::Klein {
            twist: rng.gen_bool(0.5).then(|| random_t(rng, 4, group.order())),
        }
    } else {
        CocyclePlan::Coboundary {
            values: random_t(rng, h.order(), group.order()),
        }
    };
    let r = rng.gen_range(1..=5);
    let tuple = (0..r).map(|_| rng.gen_range(0..group.order())).collect();
    let f = build_cocycle(&group, &field, h, &plan)?;
    GSimpleAlgebra::new(group, field, f, tuple)
}
