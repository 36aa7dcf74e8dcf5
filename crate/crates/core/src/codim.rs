//! Codimensions by brute force: `c_n(A)` is the rank of the matrix whose
//! rows are the `n!` multilinear monomials `x_{σ(1)} ⋯ x_{σ(n)}` and whose
//! columns are all evaluations on basis tuples, one column per output
//! coordinate.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::StructureTable;
use crate::arith::{IntegerEchelon, Scalar};
use crate::error::{Error, Result};

/// `n!·dim^{n+1}` for `n = 6`, `dim = 4`.
pub const DEFAULT_BUDGET: usize = 720 * 16384;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CodimMode {
    Full,
    /// Evaluate on `count` random basis tuples only; the rank is a lower bound.
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimResult {
    pub n: usize,
    pub c_n: usize,
    #[serde(flatten)]
    pub mode: CodimMode,
    pub lower_bound_only: bool,
    /// `(rows, columns)` of the evaluation matrix.
    pub matrix_shape: (usize, usize),
    /// Columns that were nonzero and distinct up to the point the rank was known.
    pub distinct_columns: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimTable {
    pub dim: usize,
    pub n_max: usize,
    pub entries: BTreeMap<usize, usize>,
    /// `c_n^{1/n}` for each `n`, for comparison with the exponent.
    pub growth: Vec<(usize, f64)>,
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(factorial(n));
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The coefficients of the standard polynomial `s_n = Σ sgn(σ) x_{σ(1)}⋯x_{σ(n)}`
/// in the order of [`permutations_lex`].
pub fn standard_polynomial(n: usize) -> Vec<i64> {
    permutations_lex(n)
        .iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            if inversions % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

trait Coeff: Clone + Eq + Hash {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

struct Table<T> {
    dim: usize,
    entries: Vec<Vec<(usize, T)>>,
    zero: T,
}

impl<T: Coeff> Table<T> {
    fn basis_vec(&self, b: usize, one: &T) -> Vec<T> {
        let mut v = vec![self.zero.clone(); self.dim];
        v[b] = one.clone();
        v
    }

    fn mul_basis_right(&self, x: &[T], b: usize) -> Vec<T> {
        let mut out = vec![self.zero.clone(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in &self.entries[a * self.dim + b] {
                out[*k] = out[*k].add(&xa.mul(c));
            }
        }
        out
    }

    /// The values of all `n!` monomials on the tuple, in lexicographic
    /// order of permutations, sharing work along common prefixes.
    fn monomial_values(&self, tuple: &[usize], one: &T) -> Vec<Vec<T>> {
        let n = tuple.len();
        let mut out = Vec::with_capacity(factorial(n));
        let mut used = vec![false; n];
        self.extend(None, tuple, &mut used, 0, one, &mut out);
        out
    }

    fn extend(
        &self,
        prefix: Option<&[T]>,
        tuple: &[usize],
        used: &mut [bool],
        depth: usize,
        one: &T,
        out: &mut Vec<Vec<T>>,
    ) {
        if depth == tuple.len() {
            out.push(prefix.expect("n ≥ 1").to_vec());
            return;
        }
        for v in 0..tuple.len() {
            if used[v] {
                continue;
            }
            let next = match prefix {
                None => self.basis_vec(tuple[v], one),
                Some(p) => self.mul_basis_right(p, tuple[v]),
            };
            used[v] = true;
            if next.iter().all(Coeff::is_zero) {
                // every completion is zero as well
                let remaining = factorial(tuple.len() - depth - 1);
                out.extend(std::iter::repeat_n(vec![self.zero.clone(); self.dim], remaining));
            } else {
                self.extend(Some(&next), tuple, used, depth + 1, one, out);
            }
            used[v] = false;
        }
    }
}

/// Incremental row echelon form over `Q(ζ_N)` with unit pivots.
struct ScalarEchelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl ScalarEchelon {
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Feeds the columns of the evaluation matrix for the given tuples into
/// `insert` until it reports the rank is full. Returns the number of
/// distinct nonzero columns seen.
fn feed_columns<T: Coeff>(
    table: &Table<T>,
    one: &T,
    tuples: impl Iterator<Item = Vec<usize>>,
    mut insert: impl FnMut(Vec<T>) -> bool,
) -> usize {
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    for tuple in tuples {
        let values = table.monomial_values(&tuple, one);
        for k in 0..table.dim {
            let column: Vec<T> = values.iter().map(|v| v[k].clone()).collect();
            if column.iter().all(Coeff::is_zero) || !seen.insert(column.clone()) {
                continue;
            }
            if insert(column) {
                return seen.len();
            }
        }
    }
    seen.len()
}

fn all_tuples(dim: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = code % dim;
            code /= dim;
        }
        t
    })
}

fn check_budget(n: usize, dim: usize, columns: usize, budget: usize) -> Result<(usize, usize)> {
    let rows = factorial(n);
    let cols = columns.saturating_mul(dim);
    if rows.saturating_mul(cols) > budget {
        return Err(Error::BudgetExceeded {
            n,
            dim,
            rows,
            cols,
            budget,
        });
    }
    Ok((rows, cols))
}

/// `c_n(A)`, exactly in full mode or as a lower bound in sample mode.
pub fn codimension(a: &StructureTable, n: usize, mode: &CodimMode, budget: usize) -> Result<CodimResult> {
    if n == 0 {
        return Err(Error::Validation("codimensions start at n = 1".into()));
    }
    let dim = a.dim();
    if dim == 0 {
        return Ok(CodimResult {
            n,
            c_n: 0,
            mode: mode.clone(),
            lower_bound_only: false,
            matrix_shape: (factorial(n), 0),
            distinct_columns: 0,
        });
    }
    let (tuples, lower_bound_only): (Box<dyn Iterator<Item = Vec<usize>>>, bool) = match mode {
        CodimMode::Full => {
            let count = dim.checked_pow(n as u32).unwrap_or(usize::MAX);
            check_budget(n, dim, count, budget)?;
            (Box::new(all_tuples(dim, n)), false)
        }
        CodimMode::Sample { count, seed } => {
            check_budget(n, dim, *count, budget)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let sample: Vec<Vec<usize>> = (0..*count)
                .map(|_| (0..n).map(|_| rng.gen_range(0..dim)).collect())
                .collect();
            (Box::new(sample.into_iter()), true)
        }
    };
    let columns = match mode {
        CodimMode::Full => dim.pow(n as u32),
        CodimMode::Sample { count, .. } => *count,
    };
    let matrix_shape = (factorial(n), columns * dim);
    let rows = factorial(n);

    let (c_n, distinct_columns) = if a.is_rational() {
        let table = Table {
            dim,
            entries: (0..dim * dim)
                .map(|ab| {
                    a.get(ab / dim, ab % dim)
                        .iter()
                        .map(|(k, c)| (*k, c.as_rational().expect("rational table").clone()))
                        .collect()
                })
                .collect(),
            zero: BigRational::zero(),
        };
        let mut echelon = IntegerEchelon::new(rows);
        let seen = feed_columns(&table, &num_traits::One::one(), tuples, |col| {
            echelon.insert_rational(&col);
            echelon.is_full()
        });
        (echelon.rank(), seen)
    } else {
        let field = a.field();
        let table = Table {
            dim,
            entries: (0..dim * dim).map(|ab| a.get(ab / dim, ab % dim).to_vec()).collect(),
            zero: Scalar::zero(field),
        };
        let mut echelon = ScalarEchelon { rows: Vec::new() };
        let seen = feed_columns(&table, &Scalar::one(field), tuples, |col| {
            echelon.insert(col);
            echelon.rows.len() == rows
        });
        (echelon.rows.len(), seen)
    };
    Ok(CodimResult {
        n,
        c_n,
        mode: mode.clone(),
        lower_bound_only,
        matrix_shape,
        distinct_columns,
    })
}

pub fn codim_profile(a: &StructureTable, n_max: usize, budget: usize) -> Result<CodimTable> {
    let mut entries = BTreeMap::new();
    let mut growth = Vec::new();
    for n in 1..=n_max {
        let c = codimension(a, n, &CodimMode::Full, budget)?.c_n;
        entries.insert(n, c);
        growth.push((n, (c as f64).powf(1.0 / n as f64)));
    }
    Ok(CodimTable {
        dim: a.dim(),
        n_max,
        entries,
        growth,
    })
}

/// Whether the multilinear polynomial with the given coefficients (in the
/// order of [`permutations_lex`]) vanishes on every basis tuple.
pub fn is_identity(a: &StructureTable, n: usize, coeffs: &[Scalar], budget: usize) -> Result<bool> {
    if coeffs.len() != factorial(n) {
        return Err(Error::DimensionMismatch {
            expected: factorial(n),
            found: coeffs.len(),
        });
    }
    let dim = a.dim();
    check_budget(n, dim, dim.pow(n as u32), budget)?;
    let field = a.field();
    let table = Table {
        dim,
        entries: (0..dim * dim).map(|ab| a.get(ab / dim, ab % dim).to_vec()).collect(),
        zero: Scalar::zero(field),
    };
    let one = Scalar::one(field);
    for tuple in all_tuples(dim, n) {
        let values = table.monomial_values(&tuple, &one);
        for k in 0..dim {
            let mut s = Scalar::zero(field);
            for (c, v) in coeffs.iter().zip(&values) {
                if !c.is_zero() && !v[k].is_zero() {
                    s = &s + &(c * &v[k]);
                }
            }
            if !s.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CyclotomicField;

    fn ut2() -> StructureTable {
        let f = CyclotomicField::new(1);
        let one = Scalar::one(&f);
        StructureTable::from_fn(&f, 3, |a, b| match (a, b) {
            (0, 0) => vec![(0, one.clone())],
            (1, 1) => vec![(1, one.clone())],
            (0, 2) | (2, 1) => vec![(2, one.clone())],
            _ => vec![],
        })
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations_lex(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(standard_polynomial(3), vec![1, -1, -1, 1, 1, -1]);
    }

    #[test]
    fn m2_small_codimensions() {
        let f = CyclotomicField::new(1);
        let m2 = StructureTable::matrix_algebra(&f, 2);
        let t = codim_profile(&m2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.entries.values().copied().collect::<Vec<_>>(), vec![1, 2, 6]);
    }

    #[test]
    fn ut2_codimensions() {
        let t = codim_profile(&ut2(), 4, DEFAULT_BUDGET).unwrap();
        // 2^{n-1}(n-2) + 2
        assert_eq!(t.entries.values().copied().collect::<Vec<_>>(), vec![1, 2, 6, 18]);
    }

    #[test]
    fn commutator_product_vanishes_on_ut2() {
        // [x1,x2][x3,x4]
        let f = CyclotomicField::new(1);
        let perms = permutations_lex(4);
        let mut coeffs = vec![Scalar::zero(&f); 24];
        for (s1, a, b) in [(1, 0, 1), (-1, 1, 0)] {
            for (s2, c, d) in [(1, 2, 3), (-1, 3, 2)] {
                let k = perms.iter().position(|p| *p == vec![a, b, c, d]).unwrap();
                coeffs[k] = Scalar::from_int(&f, s1 * s2);
            }
        }
        assert!(is_identity(&ut2(), 4, &coeffs, DEFAULT_BUDGET).unwrap());
        let m2 = StructureTable::matrix_algebra(&f, 2);
        assert!(!is_identity(&m2, 4, &coeffs, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn cyclotomic_path_agrees() {
        // M2 over Q(ζ_3) in the basis e11, ζe12, e21, e22
        let f = CyclotomicField::new(3);
        let mut m2 = StructureTable::matrix_algebra(&f, 2);
        let z = Scalar::zeta_pow(&f, 1);
        m2.set(1, 2, vec![(0, z.clone())]);
        m2.set(2, 1, vec![(3, z)]);
        assert!(!m2.is_rational());
        let c: Vec<usize> = (1..=3)
            .map(|n| codimension(&m2, n, &CodimMode::Full, DEFAULT_BUDGET).unwrap().c_n)
            .collect();
        assert_eq!(c, vec![1, 2, 6]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = CyclotomicField::new(1);
        let m2 = StructureTable::matrix_algebra(&f, 2);
        let err = codimension(&m2, 7, &CodimMode::Full, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { n: 7, dim: 4, rows: 5040, .. }));
    }

    #[test]
    fn sampling_gives_lower_bounds() {
        let f = CyclotomicField::new(1);
        let m2 = StructureTable::matrix_algebra(&f, 2);
        let full = codimension(&m2, 3, &CodimMode::Full, DEFAULT_BUDGET).unwrap().c_n;
        for seed in 0..5 {
            let s = codimension(&m2, 3, &CodimMode::Sample { count: 8, seed }, DEFAULT_BUDGET).unwrap();
            assert!(s.lower_bound_only && s.c_n <= full);
        }
    }
}
