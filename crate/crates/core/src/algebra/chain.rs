//! Maximal nonzero products `S_{i₁} J S_{i₂} J ⋯ J S_{i_s}` over a list of
//! semisimple pieces and a radical.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{is_zero_vec, Bilinear, Scalar, Subspace};
use crate::error::{Error, Result};

/// Semisimple pieces, their weights, and the radical, all as subspaces of
/// one ambient algebra.
pub struct ChainProblem<'a> {
    pub mult: &'a dyn Bilinear,
    pub components: Vec<Subspace>,
    pub weights: Vec<usize>,
    pub radical: Subspace,
    /// Chains have at most this many semisimple factors.
    pub max_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum FactorRole {
    Semisimple { component: usize },
    Radical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaFactor {
    pub role: FactorRole,
    pub element: Vec<Scalar>,
    /// Set when the element is a single basis vector.
    pub basis_id: Option<usize>,
}

/// `z₁ v₁ z₂ ⋯ v_n z_{n+1}` with a nonzero value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lambda {
    pub factors: Vec<LambdaFactor>,
    pub value: Vec<Scalar>,
}

impl Lambda {
    /// Number of radical factors.
    pub fn n(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.role == FactorRole::Radical)
            .count()
    }

    pub fn basis_ids(&self) -> Option<Vec<usize>> {
        self.factors.iter().map(|f| f.basis_id).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub value: usize,
    pub chain: Vec<usize>,
    pub lambda: Option<Lambda>,
}

fn single_basis_id(v: &[Scalar]) -> Option<usize> {
    let mut nz = v.iter().enumerate().filter(|(_, x)| !x.is_zero());
    match (nz.next(), nz.next()) {
        (Some((i, x)), None) if x.is_one() => Some(i),
        _ => None,
    }
}

struct State {
    chain: Vec<usize>,
    space: Subspace,
    mask: u128,
    value: usize,
}

impl<'a> ChainProblem<'a> {
    fn weight_of(&self, mask: u128) -> usize {
        (0..self.components.len())
            .filter(|c| mask >> c & 1 == 1)
            .map(|c| self.weights[c])
            .sum()
    }

    /// Product subspace of an explicit chain; zero if any step vanishes.
    pub fn chain_product(&self, chain: &[usize]) -> Result<Subspace> {
        let n = self.mult.ambient_dim();
        let Some((&first, rest)) = chain.split_first() else {
            return Ok(Subspace::zero(n));
        };
        let mut space = self.components[first].clone();
        for &c in rest {
            if space.is_zero() {
                break;
            }
            space = space
                .product(&self.radical, self.mult)?
                .product(&self.components[c], self.mult)?;
        }
        Ok(space)
    }

    /// Breadth-first search by chain length. Within a length, chains are
    /// generated in lexicographic order, and a state (product subspace,
    /// set of visited components) reached again is dropped since its
    /// continuations are dominated. The first chain reaching the maximal
    /// value is therefore the shortest, then lexicographically smallest.
    pub fn search(&self) -> Result<ExponentReport> {
        let q = self.components.len();
        assert!(q < 128, "fewer than 128 semisimple pieces");
        let total: usize = self.weights.iter().sum();
        let mut best: (usize, Vec<usize>) = (0, Vec::new());
        let mut seen: HashSet<(Subspace, u128)> = HashSet::new();
        let mut level = Vec::new();
        for c in 0..q {
            if self.components[c].is_zero() {
                continue;
            }
            let st = State {
                chain: vec![c],
                space: self.components[c].clone(),
                mask: 1u128 << c,
                value: self.weights[c],
            };
            if st.value > best.0 {
                best = (st.value, st.chain.clone());
            }
            if seen.insert((st.space.clone(), st.mask)) {
                level.push(st);
            }
        }
        let mut len = 1;
        while !level.is_empty() && len < self.max_len && best.0 < total {
            len += 1;
            let mut next = Vec::new();
            for st in &level {
                let open = !st.mask & ((1u128 << q) - 1);
                if st.value + self.weight_of(open) <= best.0 {
                    continue;
                }
                let pj = st.space.product(&self.radical, self.mult)?;
                if pj.is_zero() {
                    continue;
                }
                for c in 0..q {
                    let space = pj.product(&self.components[c], self.mult)?;
                    if space.is_zero() {
                        continue;
                    }
                    let mask = st.mask | 1u128 << c;
                    let value = self.weight_of(mask);
                    let mut chain = st.chain.clone();
                    chain.push(c);
                    if value > best.0 {
                        best = (value, chain.clone());
                    }
                    if value + self.weight_of(!mask & ((1u128 << q) - 1)) <= best.0 {
                        continue;
                    }
                    if seen.insert((space.clone(), mask)) {
                        next.push(State {
                            chain,
                            space,
                            mask,
                            value,
                        });
                    }
                }
            }
            level = next;
        }
        let lambda = if best.1.is_empty() {
            None
        } else {
            Some(self.lambda_witness(&best.1)?)
        };
        Ok(ExponentReport {
            value: best.0,
            chain: best.1,
            lambda,
        })
    }

    /// Chooses one basis vector of each factor space of the chain so the
    /// product stays nonzero: at every step the chosen prefix must still
    /// multiply the remaining factor spaces to something nonzero.
    pub fn lambda_witness(&self, chain: &[usize]) -> Result<Lambda> {
        let mut spaces: Vec<(FactorRole, &Subspace)> = Vec::new();
        for (k, &c) in chain.iter().enumerate() {
            if k > 0 {
                spaces.push((FactorRole::Radical, &self.radical));
            }
            spaces.push((FactorRole::Semisimple { component: c }, &self.components[c]));
        }
        // suffix[k] = product of spaces k.., None for the empty suffix
        let mut suffix: Vec<Option<Subspace>> = vec![None; spaces.len() + 1];
        for k in (0..spaces.len()).rev() {
            suffix[k] = Some(match &suffix[k + 1] {
                None => spaces[k].1.clone(),
                Some(rest) => spaces[k].1.product(rest, self.mult)?,
            });
        }
        if suffix[0].as_ref().is_none_or(Subspace::is_zero) {
            return Err(Error::WitnessExtractionFailed(format!(
                "chain {chain:?} has zero product"
            )));
        }
        let mut current: Option<Vec<Scalar>> = None;
        let mut factors = Vec::new();
        for (k, (role, space)) in spaces.iter().enumerate() {
            let pick = space.basis().iter().find_map(|x| {
                let prefix = match &current {
                    None => x.clone(),
                    Some(cur) => self.mult.mul_vec(cur, x),
                };
                if is_zero_vec(&prefix) {
                    return None;
                }
                let alive = match &suffix[k + 1] {
                    None => true,
                    Some(rest) => rest
                        .basis()
                        .iter()
                        .any(|y| !is_zero_vec(&self.mult.mul_vec(&prefix, y))),
                };
                alive.then(|| (x.clone(), prefix))
            });
            let Some((x, prefix)) = pick else {
                return Err(Error::WitnessExtractionFailed(format!(
                    "no basis element of factor {k} keeps chain {chain:?} nonzero"
                )));
            };
            factors.push(LambdaFactor {
                role: role.clone(),
                basis_id: single_basis_id(&x),
                element: x,
            });
            current = Some(prefix);
        }
        Ok(Lambda {
            factors,
            value: current.expect("chain is nonempty"),
        })
    }
}
