use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::MatrixQ;
use crate::perm::{distinct_arrangements, Perm};
use crate::rational::Rational;

/// Position of `entries` (values in `1..=m`) in the lexicographic tensor
/// basis: `Σ_k (i_k − 1)·m^{r−k}`.
pub fn tensor_index(m: usize, entries: &[u8]) -> usize {
    entries
        .iter()
        .fold(0usize, |acc, &v| acc * m + (v as usize - 1))
}

/// Inverse of [`tensor_index`].
pub fn tensor_entries(m: usize, r: usize, mut index: usize) -> Vec<u8> {
    let mut out = vec![0u8; r];
    for k in (0..r).rev() {
        out[k] = (index % m) as u8 + 1;
        index /= m;
    }
    out
}

/// All multi-indices in `{1..m}^r`, in tensor-basis order.
pub fn all_tensor_entries(m: usize, r: usize) -> Vec<Vec<u8>> {
    (0..m.pow(r as u32))
        .map(|k| tensor_entries(m, r, k))
        .collect()
}

/// Number of entries `≤ n`.
pub fn rank_of(entries: &[u8], n: usize) -> usize {
    entries.iter().filter(|&&v| (v as usize) <= n).count()
}

/// A multi-index `i ∈ {1..m}^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    m: usize,
    entries: Vec<u8>,
}

impl MultiIndex {
    pub fn new(m: usize, entries: Vec<u8>) -> Result<Self> {
        if m == 0 || m > u8::MAX as usize {
            return Err(Error::InvalidInput(format!("unsupported m = {m}")));
        }
        if let Some(v) = entries.iter().find(|&&v| v == 0 || v as usize > m) {
            return Err(Error::InvalidInput(format!("entry {v} outside 1..={m}")));
        }
        Ok(MultiIndex { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn index(&self) -> usize {
        tensor_index(self.m, &self.entries)
    }

    /// `#{k : i_k ≤ n}`.
    pub fn rank(&self, n: usize) -> usize {
        rank_of(&self.entries, n)
    }

    /// `σ.i` with `(σ.i)_k = i_{σ^{-1}(k)}`.
    pub fn permuted(&self, sigma: &Perm) -> MultiIndex {
        MultiIndex {
            m: self.m,
            entries: permute_entries(&self.entries, sigma),
        }
    }
}

/// `(σ.i)_{σ(p)} = i_p`.
pub fn permute_entries(entries: &[u8], sigma: &Perm) -> Vec<u8> {
    let mut out = vec![0u8; entries.len()];
    for (p, &v) in entries.iter().enumerate() {
        out[sigma.apply(p)] = v;
    }
    out
}

/// The 𝔖_r-orbit of a pair of multi-indices, stored as its sorted multiset
/// of column pairs `(i_k, j_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitPair {
    m: usize,
    pairs: Vec<(u8, u8)>,
}

impl OrbitPair {
    pub fn from_pairs(m: usize, mut pairs: Vec<(u8, u8)>) -> Self {
        pairs.sort_unstable();
        OrbitPair { m, pairs }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    /// Row multi-index of the sorted representative.
    pub fn first(&self) -> Vec<u8> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    /// Column multi-index of the sorted representative.
    pub fn second(&self) -> Vec<u8> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Rank of the row index.
    pub fn rank(&self, n: usize) -> usize {
        self.pairs.iter().filter(|p| p.0 as usize <= n).count()
    }

    /// Every `(row, col)` tensor-basis position in the orbit.
    pub fn support(&self) -> Vec<(usize, usize)> {
        distinct_arrangements(&self.pairs)
            .into_iter()
            .map(|arr| {
                let i: Vec<u8> = arr.iter().map(|p| p.0).collect();
                let j: Vec<u8> = arr.iter().map(|p| p.1).collect();
                (tensor_index(self.m, &i), tensor_index(self.m, &j))
            })
            .collect()
    }
}

impl fmt::Display for OrbitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i: String = self.first().iter().map(|v| v.to_string()).collect();
        let j: String = self.second().iter().map(|v| v.to_string()).collect();
        write!(f, "xi[{i},{j}]")
    }
}

/// Canonical orbit of `(i, j)`.
pub fn canonical_orbit(i: &MultiIndex, j: &MultiIndex) -> Result<OrbitPair> {
    if i.m != j.m || i.r() != j.r() {
        return Err(Error::DimensionMismatch {
            expected: format!("m={}, r={}", i.m, i.r()),
            got: format!("m={}, r={}", j.m, j.r()),
        });
    }
    Ok(orbit_of(i.m, &i.entries, &j.entries))
}

pub(crate) fn orbit_of(m: usize, i: &[u8], j: &[u8]) -> OrbitPair {
    OrbitPair::from_pairs(m, i.iter().copied().zip(j.iter().copied()).collect())
}

/// All multisets of size `r` drawn from `types`, as orbit pairs.
pub fn orbits_over(m: usize, types: &[(u8, u8)], r: usize) -> Vec<OrbitPair> {
    let mut types = types.to_vec();
    types.sort_unstable();
    types.dedup();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(
        m: usize,
        types: &[(u8, u8)],
        start: usize,
        left: usize,
        cur: &mut Vec<(u8, u8)>,
        out: &mut Vec<OrbitPair>,
    ) {
        if left == 0 {
            out.push(OrbitPair {
                m,
                pairs: cur.clone(),
            });
            return;
        }
        for t in start..types.len() {
            cur.push(types[t]);
            rec(m, types, t, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(m, &types, 0, r, &mut cur, &mut out);
    out
}

pub fn all_pair_types(m: usize) -> Vec<(u8, u8)> {
    (1..=m as u8)
        .flat_map(|a| (1..=m as u8).map(move |b| (a, b)))
        .collect()
}

/// Basis orbits of `S(m, r)`.
pub fn all_orbits(m: usize, r: usize) -> Vec<OrbitPair> {
    orbits_over(m, &all_pair_types(m), r)
}

/// `C(m² + r − 1, r)`.
pub fn schur_dim(m: usize, r: usize) -> u128 {
    crate::combinatorics::binomial(m * m + r - 1, r)
}

/// A rational combination of basis elements `ξ_{i,j}` of `S(m, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiElement {
    m: usize,
    r: usize,
    terms: BTreeMap<OrbitPair, Rational>,
}

impl XiElement {
    pub fn zero(m: usize, r: usize) -> Self {
        XiElement {
            m,
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(o: &OrbitPair) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(o.clone(), Rational::one());
        XiElement {
            m: o.m,
            r: o.r(),
            terms,
        }
    }

    pub fn from_terms<I>(m: usize, r: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (OrbitPair, Rational)>,
    {
        let mut out = XiElement::zero(m, r);
        for (o, c) in terms {
            out.add_term(o, &c);
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<OrbitPair, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, o: &OrbitPair) -> Rational {
        self.terms.get(o).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, o: OrbitPair, c: &Rational) {
        debug_assert_eq!((o.m, o.r()), (self.m, self.r));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(o) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &XiElement) -> XiElement {
        let mut out = self.clone();
        for (o, c) in &other.terms {
            out.add_term(o.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> XiElement {
        if c.is_zero() {
            return XiElement::zero(self.m, self.r);
        }
        XiElement {
            m: self.m,
            r: self.r,
            terms: self.terms.iter().map(|(o, v)| (o.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &XiElement) -> XiElement {
        self.add(&other.scale(&Rational::from_int(-1)))
    }
}

/// Arrangements `s` of the multiset at each group of positions, combined.
/// `groups[g]` lists positions; `values[g]` the multiset to place there.
fn grouped_arrangements(r: usize, groups: &[Vec<usize>], values: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; r]];
    for (pos, vals) in groups.iter().zip(values) {
        let arrs = distinct_arrangements(vals);
        let mut next = Vec::with_capacity(out.len() * arrs.len());
        for base in &out {
            for arr in &arrs {
                let mut s = base.clone();
                for (p, v) in pos.iter().zip(arr) {
                    s[*p] = *v;
                }
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Positions grouped by value of `key`, with the matching values of `vals`.
fn group_by_value(key: &[u8], vals: &[u8]) -> (Vec<Vec<usize>>, Vec<Vec<u8>>) {
    let mut map: BTreeMap<u8, (Vec<usize>, Vec<u8>)> = BTreeMap::new();
    for (p, (&k, &v)) in key.iter().zip(vals).enumerate() {
        let e = map.entry(k).or_default();
        e.0.push(p);
        e.1.push(v);
    }
    map.into_values().unzip()
}

/// `ξ_{i,j}·ξ_{k,l}`: the coefficient of `ξ_{i,q}` counts `s` with
/// `(i,j) ∼ (i,s)` and `(k,l) ∼ (s,q)`.
pub fn xi_basis_product(a: &OrbitPair, b: &OrbitPair) -> Vec<(OrbitPair, Rational)> {
    let (i, j) = (a.first(), a.second());
    let (k, l) = (b.first(), b.second());
    let mut js = j.clone();
    let mut ks = k.clone();
    js.sort_unstable();
    ks.sort_unstable();
    if js != ks {
        return Vec::new();
    }
    let r = i.len();
    // s ranges over rearrangements of j that fix i.
    let (i_groups, j_vals) = group_by_value(&i, &j);
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for s in grouped_arrangements(r, &i_groups, &j_vals) {
        // q ranges over columns with (s, q) in the orbit of (k, l).
        let mut need: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
        for (&kv, &lv) in k.iter().zip(&l) {
            need.entry(kv).or_default().push(lv);
        }
        let (s_groups, _) = group_by_value(&s, &s);
        let vals: Vec<Vec<u8>> = s_groups.iter().map(|g| need[&s[g[0]]].clone()).collect();
        for q in grouped_arrangements(r, &s_groups, &vals) {
            *counts.entry(q).or_insert(0) += 1;
        }
    }
    let mut out: BTreeMap<OrbitPair, u64> = BTreeMap::new();
    for (q, c) in counts {
        let o = orbit_of(a.m, &i, &q);
        let prev = out.insert(o, c);
        debug_assert!(
            prev.is_none_or(|p| p == c),
            "orbit coefficient not constant"
        );
    }
    out.into_iter()
        .map(|(o, c)| (o, Rational::from_int(c as i64)))
        .collect()
}

pub fn xi_multiply(a: &XiElement, b: &XiElement) -> Result<XiElement> {
    if (a.m, a.r) != (b.m, b.r) {
        return Err(Error::DimensionMismatch {
            expected: format!("m={}, r={}", a.m, a.r),
            got: format!("m={}, r={}", b.m, b.r),
        });
    }
    let mut out = XiElement::zero(a.m, a.r);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let c = cx * cy;
            for (o, v) in xi_basis_product(x, y) {
                out.add_term(o, &(&v * &c));
            }
        }
    }
    Ok(out)
}

/// Matrix of `a` on the tensor basis: `ξ_{i,j}` has a 1 at every
/// `(index(i'), index(j'))` with `(i', j')` in the orbit.
pub fn xi_to_matrix(a: &XiElement) -> MatrixQ {
    let n = a.m.pow(a.r as u32);
    let mut entries = Vec::new();
    for (o, c) in &a.terms {
        for (row, col) in o.support() {
            entries.push((row, col, c.clone()));
        }
    }
    MatrixQ::from_entries(n, n, entries)
}

/// Reads a matrix back into the ξ-basis; fails if it is not constant on
/// orbits (i.e. does not commute with the symmetric group action).
pub fn matrix_to_xi(mat: &MatrixQ, m: usize, r: usize) -> Result<XiElement> {
    let n = m.pow(r as u32);
    if mat.rows() != n || mat.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", mat.rows(), mat.cols()),
        });
    }
    let mut seen: BTreeMap<OrbitPair, (Rational, usize)> = BTreeMap::new();
    for (row, col, x) in mat.entries() {
        let o = orbit_of(m, &tensor_entries(m, r, row), &tensor_entries(m, r, col));
        let e = seen.entry(o).or_insert_with(|| (x.clone(), 0));
        if &e.0 != x {
            return Err(Error::InvalidInput(
                "matrix is not constant on symmetric group orbits".into(),
            ));
        }
        e.1 += 1;
    }
    let mut out = XiElement::zero(m, r);
    for (o, (x, count)) in seen {
        if count != o.support().len() {
            return Err(Error::InvalidInput(
                "matrix does not fill a symmetric group orbit".into(),
            ));
        }
        out.add_term(o, &x);
    }
    Ok(out)
}

/// Permutation of tensor positions: `η_i ↦ η_{σ.i}`.
pub fn psi_of_permutation(sigma: &Perm, m: usize) -> MatrixQ {
    let r = sigma.degree();
    let n = m.pow(r as u32);
    MatrixQ::from_entries(
        n,
        n,
        (0..n).map(|col| {
            let i = tensor_entries(m, r, col);
            (
                tensor_index(m, &permute_entries(&i, sigma)),
                col,
                Rational::one(),
            )
        }),
    )
}
