//! The JSON instance format shared by every command.
//!
//! Basis ids are global: the components come first, each listing
//! `u_h ⊗ e_{i,j}` at local index `(h·r + i)·r + j` with `h` the position of
//! the element inside the sorted subgroup, followed by the radical basis in
//! order. Peirce labels are `[component, diagonal index]`, both 0-based.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{GradedAlgebra, PeirceLabel, RadicalElement, RadicalProduct};
use crate::arith::{CyclotomicField, FieldRef, Scalar};
use crate::cocycle::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{make_group, FiniteGroup, GroupSpec, Subgroup};
use crate::gsimple::GSimpleAlgebra;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable giving the default cyclotomic order when an
/// instance does not fix one.
pub const FIELD_ORDER_ENV: &str = "GEXP_CYCLOTOMIC_ORDER";

/// `num/den · ζ^zeta_pow`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub num: i64,
    #[serde(default = "one_i64")]
    pub den: i64,
    #[serde(default)]
    pub zeta_pow: i64,
}

fn one_i64() -> i64 {
    1
}

/// A scalar in `Q(ζ_N)`: an integer, a single term, or a sum of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Term(Term),
    Sum(Vec<Term>),
}

impl ScalarSpec {
    pub fn to_scalar(&self, field: &FieldRef) -> Result<Scalar> {
        let term = |t: &Term| {
            if t.den == 0 {
                return Err(Error::DivisionByZero);
            }
            Ok(Scalar::monomial(
                field,
                BigRational::new(t.num.into(), t.den.into()),
                t.zeta_pow,
            ))
        };
        match self {
            ScalarSpec::Int(n) => Ok(Scalar::from_int(field, *n)),
            ScalarSpec::Term(t) => term(t),
            ScalarSpec::Sum(ts) => ts
                .iter()
                .try_fold(Scalar::zero(field), |acc, t| Ok(&acc + &term(t)?)),
        }
    }

    pub fn from_scalar(s: &Scalar) -> Result<ScalarSpec> {
        let small = |x: &BigInt| {
            x.to_i64()
                .ok_or_else(|| Error::Validation(format!("coefficient {x} does not fit in 64 bits")))
        };
        let mut terms = Vec::new();
        for (k, c) in s.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(Term {
                num: small(c.numer())?,
                den: small(c.denom())?,
                zeta_pow: k as i64,
            });
        }
        Ok(match terms.as_slice() {
            [] => ScalarSpec::Int(0),
            [t] if t.zeta_pow == 0 && t.den == 1 => ScalarSpec::Int(t.num),
            [t] => ScalarSpec::Term(t.clone()),
            _ => ScalarSpec::Sum(terms),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub cyclotomic_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub subgroup: Vec<usize>,
    /// `m × m` values `f(h_a, h_b)` over the sorted subgroup; absent means trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<ScalarSpec>>>,
    pub tuple: Vec<usize>,
    /// A decomposition into simple blocks, each given by a basis of local
    /// coordinate vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<Vec<Vec<ScalarSpec>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalBasisSpec {
    pub degree: usize,
    /// `[left, right]`, each `[component, index]` or null; null for both.
    #[serde(default)]
    pub peirce: Option<[Option<[usize; 2]>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: usize,
    pub right: usize,
    pub value: Vec<(usize, ScalarSpec)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalSpec {
    #[serde(default)]
    pub basis: Vec<RadicalBasisSpec>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub group: GroupSpec,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub radical: RadicalSpec,
}

fn label(l: Option<[usize; 2]>) -> Option<PeirceLabel> {
    l.map(|[component, index]| PeirceLabel { component, index })
}

fn unlabel(l: Option<PeirceLabel>) -> Option<[usize; 2]> {
    l.map(|l| [l.component, l.index])
}

/// Explicit order, then the environment variable, then `|G|`.
pub fn resolve_field_order(explicit: Option<usize>, group_order: usize) -> Result<usize> {
    if let Some(n) = explicit {
        return Ok(n);
    }
    match std::env::var(FIELD_ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Schema {
            path: FIELD_ORDER_ENV.into(),
            message: format!("not a positive integer: {v:?}"),
        }),
        Err(_) => Ok(group_order),
    }
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let inst: Instance = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        if inst.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema {
                path: "schema_version".into(),
                message: format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    inst.schema_version
                ),
            });
        }
        Ok(inst)
    }

    pub fn load(path: &Path) -> Result<Instance> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    /// SHA-256 of the compact re-serialization, so formatting and key order
    /// in the source file do not matter.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("instances always serialize");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn field_order(&self) -> Result<usize> {
        let g = make_group(&self.group).map_err(|e| e.at("group"))?;
        resolve_field_order(self.field.as_ref().map(|f| f.cyclotomic_order), g.order())
    }

    /// Builds and structurally checks the algebra. Errors are wrapped with
    /// the path of the offending part of the instance.
    pub fn build(&self) -> Result<GradedAlgebra> {
        let group = Arc::new(make_group(&self.group).map_err(|e| e.at("group"))?);
        let n = resolve_field_order(self.field.as_ref().map(|f| f.cyclotomic_order), group.order())
            .map_err(|e| e.at("field"))?;
        if n == 0 {
            return Err(Error::Schema {
                path: "field.cyclotomic_order".into(),
                message: "must be positive".into(),
            });
        }
        let field = CyclotomicField::new(n);
        let mut components = Vec::with_capacity(self.components.len());
        for (c, spec) in self.components.iter().enumerate() {
            let path = format!("components[{c}]");
            components.push(build_component(&group, &field, spec).map_err(|e| match e {
                Error::AtPath { path: inner, source } => source.at(format!("{path}.{inner}")),
                e => e.at(path.clone()),
            })?);
        }
        let radical = self
            .radical
            .basis
            .iter()
            .map(|b| {
                let [l, r] = b.peirce.unwrap_or([None, None]);
                RadicalElement {
                    degree: b.degree,
                    left: label(l),
                    right: label(r),
                }
            })
            .collect();
        let products = self
            .radical
            .products
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let value = p
                    .value
                    .iter()
                    .map(|(t, s)| Ok((*t, s.to_scalar(&field)?)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.at(format!("radical.products[{k}]")))?;
                Ok(RadicalProduct {
                    left: p.left,
                    right: p.right,
                    value,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut alg = GradedAlgebra::new(group, field.clone(), components, radical, products)?;
        for (c, spec) in self.components.iter().enumerate() {
            if let Some(blocks) = &spec.split {
                let blocks = blocks
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|v| v.iter().map(|s| s.to_scalar(&field)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.at(format!("components[{c}].split")))?;
                alg = alg
                    .with_split(c, blocks)
                    .map_err(|e| e.at(format!("components[{c}].split")))?;
            }
        }
        Ok(alg)
    }

    /// The instance describing `alg`, whose group is given by `group`.
    pub fn from_algebra(group: &GroupSpec, alg: &GradedAlgebra) -> Result<Instance> {
        let spec_of = |s: &Scalar| ScalarSpec::from_scalar(s);
        let mut components = Vec::new();
        for (c, comp) in alg.components().iter().enumerate() {
            let cocycle = if comp.cocycle().is_trivial() {
                None
            } else {
                Some(
                    comp.cocycle()
                        .values()
                        .iter()
                        .map(|row| row.iter().map(spec_of).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                )
            };
            let split = alg
                .split(c)
                .map(|blocks| {
                    blocks
                        .iter()
                        .map(|b| {
                            b.iter()
                                .map(|v| v.iter().map(spec_of).collect::<Result<Vec<_>>>())
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            components.push(ComponentSpec {
                subgroup: comp.subgroup().elements().to_vec(),
                cocycle,
                tuple: comp.tuple().to_vec(),
                split,
            });
        }
        let basis = alg
            .radical()
            .iter()
            .map(|r| RadicalBasisSpec {
                degree: r.degree,
                peirce: match (r.left, r.right) {
                    (None, None) => None,
                    (l, r) => Some([unlabel(l), unlabel(r)]),
                },
            })
            .collect();
        let products = alg
            .products()
            .iter()
            .map(|p| {
                Ok(ProductSpec {
                    left: p.left,
                    right: p.right,
                    value: p
                        .value
                        .iter()
                        .map(|(t, s)| Ok((*t, spec_of(s)?)))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            schema_version: SCHEMA_VERSION,
            field: Some(FieldSpec {
                cyclotomic_order: alg.field().order(),
            }),
            group: group.clone(),
            components,
            radical: RadicalSpec { basis, products },
        })
    }
}

fn build_component(group: &Arc<FiniteGroup>, field: &FieldRef, spec: &ComponentSpec) -> Result<GSimpleAlgebra> {
    let h = Subgroup::new(group, spec.subgroup.clone()).map_err(|e| e.at("subgroup"))?;
    let cocycle = match &spec.cocycle {
        None => TwoCocycle::trivial(field, h),
        Some(rows) => {
            let values = rows
                .iter()
                .map(|row| row.iter().map(|s| s.to_scalar(field)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.at("cocycle"))?;
            TwoCocycle::validate(group, h, values).map_err(|e| e.at("cocycle"))?
        }
    };
    GSimpleAlgebra::new(group.clone(), field.clone(), cocycle, spec.tuple.clone()).map_err(|e| e.at("tuple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, ChainPlan, CocyclePlan, ComponentPlan, LinkPlan};

    const M2_C2: &str = r#"{
        "schema_version": 1,
        "group": {"kind": "cyclic", "k": 2},
        "components": [{"subgroup": [0], "tuple": [0, 1]}]
    }"#;

    #[test]
    fn minimal_instance_builds() {
        let inst = Instance::from_json(M2_C2).unwrap();
        let a = inst.build().unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.field().order(), inst.field_order().unwrap());
    }

    #[test]
    fn unknown_fields_are_rejected_with_a_path() {
        let text = M2_C2.replace(r#""tuple": [0, 1]"#, r#""tuple": [0, 1], "colour": 3"#);
        match Instance::from_json(&text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "components[0].colour"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_cocycle_is_located() {
        let text = r#"{
            "schema_version": 1,
            "group": {"kind": "cyclic", "k": 2},
            "components": [{"subgroup": [0, 1], "cocycle": [[1, 1], [1, 0]], "tuple": [0]}]
        }"#;
        let err = Instance::from_json(text).unwrap().build().unwrap_err();
        match &err {
            Error::AtPath { path, source } => {
                assert_eq!(path, "components[0].cocycle");
                assert!(matches!(**source, Error::ZeroCocycleValue { a: 1, b: 1 }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cocycle_identity_failure_is_located() {
        // on C3 with f(g,g) = 2 and every other value 1, (g,g,g) breaks the identity
        let text = r#"{
            "schema_version": 1,
            "group": {"kind": "cyclic", "k": 3},
            "components": [{"subgroup": [0, 1, 2], "cocycle": [[1, 1, 1], [1, 2, 1], [1, 1, 1]], "tuple": [0]}]
        }"#;
        let err = Instance::from_json(text).unwrap().build().unwrap_err();
        assert!(matches!(err.root(), Error::CocycleViolation { .. }));
        assert!(err.to_string().starts_with("at components[0].cocycle:"));
    }

    #[test]
    fn digest_ignores_formatting() {
        let a = Instance::from_json(M2_C2).unwrap();
        let compact: String = M2_C2.split_whitespace().collect();
        let b = Instance::from_json(&compact).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }

    #[test]
    fn algebras_survive_a_trip_through_json() {
        let g = Arc::new(make_group(&GroupSpec::parse("klein").unwrap()).unwrap());
        let field = CyclotomicField::new(4);
        let plan = ChainPlan {
            components: vec![
                ComponentPlan {
                    subgroup: vec![0, 1, 2, 3],
                    cocycle: CocyclePlan::Klein {
                        twist: Some(vec![(1, 1, 0), (2, 1, 1), (1, 3, 0), (1, 1, 3)]),
                    },
                    tuple: vec![0],
                },
                ComponentPlan {
                    subgroup: vec![0],
                    cocycle: CocyclePlan::Trivial,
                    tuple: vec![0, 2],
                },
            ],
            links: vec![LinkPlan {
                from: PeirceLabel { component: 0, index: 0 },
                to: PeirceLabel { component: 1, index: 1 },
                degree: 3,
            }],
        };
        let a = gen_chain(g, field, &plan).unwrap();
        let spec = GroupSpec::parse("klein").unwrap();
        let inst = Instance::from_algebra(&spec, &a).unwrap();
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
        let b = back.build().unwrap();
        assert_eq!(b.table(), a.table());
        assert_eq!(b.degrees(), a.degrees());
    }

    #[test]
    fn scalar_specs() {
        let f = CyclotomicField::new(6);
        let s = ScalarSpec::Sum(vec![
            Term { num: 1, den: 2, zeta_pow: 0 },
            Term { num: -3, den: 1, zeta_pow: 1 },
        ]);
        let x = s.to_scalar(&f).unwrap();
        assert_eq!(ScalarSpec::from_scalar(&x).unwrap().to_scalar(&f).unwrap(), x);
        assert_eq!(ScalarSpec::from_scalar(&Scalar::from_int(&f, -4)).unwrap(), ScalarSpec::Int(-4));
    }
}
