//! Finite groups given by Cayley tables, subgroups, cosets and quotients.
//!
//! Elements are integer indices into the table. Products are written
//! `mul(a, b)` for `ab`; conjugation uses the convention `g⁻¹Hg`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GroupAxiom, Result};

/// Serialized description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { k: usize },
    /// Dihedral group of order `2k`.
    Dihedral { k: usize },
    Symmetric { k: usize },
    /// Direct product; elements are indexed in mixed radix, first factor most significant.
    Product { factors: Vec<GroupSpec> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    /// Parses `cyclic:3`, `dihedral:4`, `symmetric:3`, `klein` or `abelian:2,2`.
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let bad = || Error::Schema {
            path: "group".into(),
            message: format!("cannot parse group description {s:?}"),
        };
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = |a: &str| a.trim().parse::<usize>().map_err(|_| bad());
        Ok(match kind {
            "cyclic" => GroupSpec::Cyclic { k: num(arg)? },
            "dihedral" => GroupSpec::Dihedral { k: num(arg)? },
            "symmetric" => GroupSpec::Symmetric { k: num(arg)? },
            "klein" => GroupSpec::Product {
                factors: vec![GroupSpec::Cyclic { k: 2 }, GroupSpec::Cyclic { k: 2 }],
            },
            "abelian" => GroupSpec::Product {
                factors: arg
                    .split(',')
                    .map(|a| num(a).map(|k| GroupSpec::Cyclic { k }))
                    .collect::<Result<_>>()?,
            },
            _ => return Err(bad()),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let positive = |k: usize| {
        if k == 0 {
            Err(Error::InvalidGroup(vec![GroupAxiom::NoIdentity]))
        } else {
            Ok(k)
        }
    };
    match spec {
        GroupSpec::Cyclic { k } => Ok(FiniteGroup::cyclic(positive(*k)?)),
        GroupSpec::Dihedral { k } => Ok(FiniteGroup::dihedral(positive(*k)?)),
        GroupSpec::Symmetric { k } => Ok(FiniteGroup::symmetric(positive(*k)?)),
        GroupSpec::Product { factors } => {
            let mut g = FiniteGroup::cyclic(1);
            for f in factors {
                g = g.direct_product(&make_group(f)?);
            }
            Ok(g)
        }
        GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
    }
}

impl FiniteGroup {
    /// Validates a Cayley table, reporting every violated axiom.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let mut violations = Vec::new();
        if n == 0 {
            return Err(Error::InvalidGroup(vec![GroupAxiom::NoIdentity]));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                violations.push(GroupAxiom::NotSquare {
                    rows: n,
                    row: i,
                    len: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    violations.push(GroupAxiom::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidGroup(violations));
        }
        for i in 0..n {
            let row: BTreeSet<_> = table[i].iter().collect();
            if row.len() != n {
                violations.push(GroupAxiom::NotLatinSquare {
                    line: "row".into(),
                    index: i,
                });
            }
            let col: BTreeSet<_> = (0..n).map(|r| table[r][i]).collect();
            if col.len() != n {
                violations.push(GroupAxiom::NotLatinSquare {
                    line: "column".into(),
                    index: i,
                });
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a));
        if identity.is_none() {
            violations.push(GroupAxiom::NoIdentity);
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        violations.push(GroupAxiom::NotAssociative { a, b, c });
                        break 'assoc;
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidGroup(violations));
        }
        let identity = identity.expect("checked above");
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("latin square"))
            .collect();
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    fn from_trusted(table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a))
            .expect("identity");
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("inverse"))
            .collect();
        FiniteGroup {
            table,
            identity,
            inverses,
        }
    }

    pub fn cyclic(k: usize) -> Self {
        Self::from_trusted(
            (0..k)
                .map(|a| (0..k).map(|b| (a + b) % k).collect())
                .collect(),
        )
    }

    /// `r^a s^b` has index `a + k·b`; `s r s = r⁻¹`.
    pub fn dihedral(k: usize) -> Self {
        let n = 2 * k;
        let table = (0..n)
            .map(|x| {
                let (a, b) = (x % k, x / k);
                (0..n)
                    .map(|y| {
                        let (c, d) = (y % k, y / k);
                        let rot = if b == 0 { (a + c) % k } else { (a + k - c) % k };
                        rot + k * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_trusted(table)
    }

    /// Permutations of `0..k` in lexicographic order; `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = (0..k).map(|x| s[t[x]]).collect();
                        index(&st)
                    })
                    .collect()
            })
            .collect();
        Self::from_trusted(table)
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_trusted(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Left-to-right product of a sequence; the identity for an empty one.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g⁻¹ h g`.
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// Every subgroup, ordered by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let s = self.closure(&gens);
                if found.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
        subs.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        subs
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut stack: Vec<usize> = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set.into_iter().collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: Vec<usize>) -> Result<Self> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidSubgroup(format!("element {x} is not in the group")));
        }
        if elements.binary_search(&group.identity()).is_err() {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for &a in &elements {
            if elements.binary_search(&group.inv(a)).is_err() {
                return Err(Error::InvalidSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elements {
                if elements.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {a}*{b} = {}",
                        group.mul(a, b)
                    )));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: vec![group.identity()],
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: group.elements().collect(),
        }
    }

    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: group.closure(gens),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|g| self.elements.iter().all(|&h| self.contains(group.conjugate(h, g))))
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| group.mul(a, b) == group.mul(b, a)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self, group: &FiniteGroup) -> usize {
        self.elements
            .iter()
            .map(|&a| group.element_order(a))
            .fold(1, num_integer::lcm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A left coset `gH` or right coset `Hg`. The representative is the
/// smallest element index of the coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coset {
    pub representative: usize,
    pub side: Side,
    pub elements: Vec<usize>,
}

/// The cosets of a subgroup, ordered by representative, with the inverse map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub cosets: Vec<Coset>,
    pub index_of: Vec<usize>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

pub fn cosets(group: &FiniteGroup, subgroup: &Subgroup, side: Side) -> CosetPartition {
    let mut index_of = vec![usize::MAX; group.order()];
    let mut cosets = Vec::new();
    for g in group.elements() {
        if index_of[g] != usize::MAX {
            continue;
        }
        let mut elements: Vec<usize> = subgroup
            .elements()
            .iter()
            .map(|&h| match side {
                Side::Right => group.mul(h, g),
                Side::Left => group.mul(g, h),
            })
            .collect();
        elements.sort_unstable();
        for &x in &elements {
            index_of[x] = cosets.len();
        }
        cosets.push(Coset {
            representative: elements[0],
            side,
            elements,
        });
    }
    CosetPartition { cosets, index_of }
}

pub fn right_cosets(group: &FiniteGroup, subgroup: &Subgroup) -> CosetPartition {
    cosets(group, subgroup, Side::Right)
}

pub fn left_cosets(group: &FiniteGroup, subgroup: &Subgroup) -> CosetPartition {
    cosets(group, subgroup, Side::Left)
}

/// `g⁻¹ H g`.
pub fn conjugate_subgroup(group: &FiniteGroup, subgroup: &Subgroup, g: usize) -> Subgroup {
    let mut elements: Vec<usize> = subgroup
        .elements()
        .iter()
        .map(|&h| group.conjugate(h, g))
        .collect();
    elements.sort_unstable();
    Subgroup { elements }
}

/// `G/H` with its projection; quotient elements are the cosets in
/// representative order.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub cosets: CosetPartition,
}

pub fn quotient_group(group: &FiniteGroup, normal: &Subgroup) -> Result<Quotient> {
    if !normal.is_normal(group) {
        return Err(Error::NotNormal {
            subgroup: normal.elements().to_vec(),
        });
    }
    let parts = left_cosets(group, normal);
    let m = parts.len();
    let table = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let x = group.mul(parts.cosets[a].representative, parts.cosets[b].representative);
                    parts.index_of[x]
                })
                .collect()
        })
        .collect();
    let quotient = FiniteGroup::from_table(table)?;
    Ok(Quotient {
        group: quotient,
        projection: parts.index_of.clone(),
        cosets: parts,
    })
}

/// All characters of an abelian subgroup with values in the N-th roots of
/// unity. Each character is the list of exponents `a` with `χ(h) = ζ_N^a`,
/// aligned with the subgroup's sorted element list.
pub fn abelian_characters(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    n: usize,
) -> std::result::Result<Vec<Vec<usize>>, String> {
    if !subgroup.is_abelian(group) {
        return Err("subgroup is not abelian".into());
    }
    let exp = subgroup.exponent(group);
    if !n.is_multiple_of(exp) {
        return Err(format!(
            "cyclotomic order {n} is not divisible by the subgroup exponent {exp}"
        ));
    }
    // Extend characters one generator at a time.
    let mut current: Vec<usize> = vec![group.identity()];
    let mut chars: Vec<Vec<(usize, usize)>> = vec![vec![(group.identity(), 0)]];
    for &g in subgroup.elements() {
        if current.contains(&g) {
            continue;
        }
        let mut m = 1;
        let mut gm = g;
        while !current.contains(&gm) {
            gm = group.mul(gm, g);
            m += 1;
        }
        let mut next_elems = Vec::new();
        for j in 0..m {
            let gj = group.pow(g, j);
            for &k in &current {
                next_elems.push(group.mul(k, gj));
            }
        }
        let mut next_chars = Vec::new();
        for chi in &chars {
            let lookup = |x: usize| chi.iter().find(|(y, _)| *y == x).unwrap().1;
            let target = lookup(gm);
            for b in (0..n).filter(|b| (m * b) % n == target) {
                let mut ext = Vec::new();
                for j in 0..m {
                    let gj = group.pow(g, j);
                    for &k in &current {
                        ext.push((group.mul(k, gj), (lookup(k) + j * b) % n));
                    }
                }
                next_chars.push(ext);
            }
        }
        current = next_elems;
        chars = next_chars;
    }
    let out: Vec<Vec<usize>> = chars
        .into_iter()
        .map(|chi| {
            subgroup
                .elements()
                .iter()
                .map(|&h| chi.iter().find(|(y, _)| *y == h).unwrap().1)
                .collect()
        })
        .collect();
    debug_assert_eq!(out.len(), subgroup.order());
    Ok(out)
}
