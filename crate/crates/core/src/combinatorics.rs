//! Partitions, compositions and the dimension counts built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

/// A weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// allowed and ignored by equality-relevant accessors such as [`Partition::len`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: entries }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn part(&self, k: usize) -> usize {
        self.parts.get(k).copied().unwrap_or(0)
    }

    /// Without trailing zeros.
    pub fn trimmed(&self) -> Partition {
        Partition {
            parts: self.parts[..self.len()].to_vec(),
        }
    }

    /// Padded with zeros (or trimmed of zeros) to exactly `n` entries.
    pub fn padded(&self, n: usize) -> Result<Partition> {
        if self.len() > n {
            return Err(Error::InvalidInput(format!(
                "{self} has more than {n} nonzero parts"
            )));
        }
        let mut parts = self.parts[..self.len()].to_vec();
        parts.resize(n, 0);
        Ok(Partition { parts })
    }

    /// Row lengths of the conjugate shape.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition {
            parts: (0..first)
                .map(|c| self.parts.iter().filter(|&&p| p > c).count())
                .collect(),
        }
    }

    /// Parts joined by commas, e.g. `2,1,0`; used as a table label.
    pub fn label(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A tuple of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    entries: Vec<usize>,
}

impl Composition {
    pub fn new(entries: Vec<usize>) -> Self {
        Composition { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The dominant weight in the same Weyl orbit.
    pub fn dominant(&self) -> Partition {
        Partition::from_unsorted(self.entries.clone())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Compositions of `total` into exactly `n` parts, reverse lexicographic.
pub fn compositions_of(total: usize, n: usize) -> Vec<Composition> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(rest);
            out.push(Composition::new(cur.clone()));
            cur.pop();
            return;
        }
        for first in (0..=rest).rev() {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Composition::new(Vec::new()));
        }
        return out;
    }
    rec(total, n, &mut Vec::new(), &mut out);
    out
}

/// All `s ∈ ℕ^n` with `|s| ≤ r`, by increasing total then reverse lexicographic.
pub fn compositions_bounded(n: usize, r: usize) -> Vec<Composition> {
    (0..=r).flat_map(|t| compositions_of(t, n)).collect()
}

/// Partitions of `l` into at most `max_parts` nonzero parts, reverse
/// lexicographic, without trailing zeros.
pub fn partitions_of(l: usize, max_parts: usize) -> Vec<Partition> {
    fn rec(
        rest: usize,
        max_part: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for first in (1..=rest.min(max_part)).rev() {
            cur.push(first);
            rec(rest - first, first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(l, l, max_parts, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of standard Young tableaux of shape `λ`, by the hook-length formula.
pub fn dim_specht(lambda: &Partition) -> u64 {
    let shape = lambda.trimmed();
    let conj = shape.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.part(j) - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (factorial(shape.size()) / hooks) as u64
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=n`.
pub fn dim_weyl(lambda: &Partition, n: usize) -> u64 {
    let shape = lambda.trimmed();
    if shape.len() > n {
        return 0;
    }
    let rows = shape.parts().to_vec();
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();

    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        let mut total = 0;
        for v in lo..=n {
            grid[i][j] = v;
            total += fill(k + 1, cells, grid, n);
        }
        grid[i][j] = 0;
        total
    }
    fill(0, &cells, &mut grid, n)
}

/// Whether `λ` interlaces `μ` in `GL_{m}`: `μ_1 ≥ λ_1 ≥ μ_2 ≥ … ≥ λ_{m−1} ≥ μ_m`.
pub fn interlaces(lambda: &Partition, mu: &Partition, m: usize) -> Result<bool> {
    if m == 0 || mu.len() > m {
        return Err(Error::InvalidInput(format!(
            "{mu} does not fit in {m} parts"
        )));
    }
    if lambda.len() > m - 1 {
        return Ok(false);
    }
    Ok((0..m - 1).all(|k| mu.part(k) >= lambda.part(k) && lambda.part(k) >= mu.part(k + 1)))
}

/// `Σ_{λ ∈ Par(l, n)} (dim S^λ)²`, with `d(n, 0) = 1`.
pub fn d_small(n: usize, l: usize) -> u64 {
    partitions_of(l, n)
        .iter()
        .map(|p| dim_specht(p).pow(2))
        .sum()
}

/// Number of distinct rearrangements of `γ` padded to `n` entries.
pub fn orbit_length(gamma: &Partition, n: usize) -> Result<u64> {
    let padded = gamma.padded(n)?;
    let mut counts = std::collections::BTreeMap::new();
    for &p in padded.parts() {
        *counts.entry(p).or_insert(0usize) += 1;
    }
    let denom: u128 = counts.values().map(|&c| factorial(c)).product();
    Ok((factorial(n) / denom) as u64)
}

/// Branching identity `Σ_{μ ⊢ r, ℓ(μ) ≤ n+1, λ ≲ μ} dim S^μ = C(r,l)·dim S^λ`
/// for every `λ ∈ Par(l, n)`, `0 ≤ l ≤ r`.
pub fn branching_duality_check(n: usize, r: usize) -> Report {
    let mut report = Report::new("branching duality", n, r);
    let mus = partitions_of(r, n + 1);
    for l in 0..=r {
        for lambda in partitions_of(l, n) {
            let lhs: u64 = mus
                .iter()
                .filter(|mu| interlaces(&lambda, mu, n + 1).expect("μ has at most n+1 parts"))
                .map(dim_specht)
                .sum();
            let rhs = binomial(r, l) as u64 * dim_specht(&lambda);
            report.expect(format!("l={l} lambda={lambda}"), lhs, rhs);
        }
    }
    report
}

/// `Σ_l Σ_{λ ∈ Par(l,n)} dim L^λ_n · C(r,l) · dim S^λ = (n+1)^r`.
pub fn tensor_bookkeeping(n: usize, r: usize) -> Report {
    let mut report = Report::new("tensor bookkeeping", n, r);
    let lhs: u64 = (0..=r)
        .map(|l| {
            partitions_of(l, n)
                .iter()
                .map(|p| dim_weyl(p, n) * binomial(r, l) as u64 * dim_specht(p))
                .sum::<u64>()
        })
        .sum();
    report.expect("multiplicity sum", lhs, ((n + 1) as u64).pow(r as u32));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_listing() {
        assert_eq!(partitions_of(0, 2), vec![Partition::empty()]);
        assert_eq!(partitions_of(2, 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(partitions_of(3, 2), vec![p(&[3]), p(&[2, 1])]);
        assert!(partitions_of(2, 0).is_empty());
        assert_eq!(partitions_of(5, 5).len(), 7);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn specht_and_weyl_examples() {
        assert_eq!(dim_specht(&p(&[2])), 1);
        assert_eq!(dim_specht(&p(&[1, 1])), 1);
        assert_eq!(dim_specht(&p(&[2, 1])), 2);
        assert_eq!(dim_specht(&Partition::empty()), 1);
        assert_eq!(dim_weyl(&p(&[1]), 3), 3);
        assert_eq!(dim_weyl(&p(&[1, 1]), 2), 1);
        assert_eq!(dim_weyl(&p(&[2, 1]), 2), 2);
        assert_eq!(dim_weyl(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(dim_weyl(&Partition::empty(), 2), 1);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[1]), &p(&[2, 0]), 2).unwrap());
        assert!(interlaces(&p(&[1]), &p(&[1, 1]), 2).unwrap());
        assert!(!interlaces(&p(&[2]), &p(&[1, 1]), 2).unwrap());
        assert!(interlaces(&p(&[1]), &p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(d_small(2, 2), 2);
        assert_eq!(d_small(2, 3), 5);
        assert_eq!(d_small(1, 0), 1);
        assert_eq!(orbit_length(&p(&[1, 0]), 2).unwrap(), 2);
        assert_eq!(orbit_length(&p(&[1, 1]), 2).unwrap(), 1);
        assert_eq!(orbit_length(&p(&[2, 1, 0]), 3).unwrap(), 6);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn compositions() {
        let c = compositions_bounded(2, 2);
        let listed: Vec<Vec<usize>> = c.iter().map(|c| c.entries().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(compositions_bounded(3, 2).len(), 10);
    }

    #[test]
    fn branching_examples() {
        let r = branching_duality_check(1, 2);
        assert!(r.passed());
        let c = r.get("l=1 lambda=(1)").unwrap();
        assert_eq!(c.computed, Some(2usize.into()));
        let r = branching_duality_check(2, 2);
        assert_eq!(
            r.get("l=1 lambda=(1)").unwrap().computed,
            Some(2usize.into())
        );
    }

    #[test]
    fn bookkeeping_examples() {
        assert!(tensor_bookkeeping(1, 2).passed());
        assert!(tensor_bookkeeping(2, 2).passed());
        assert!(tensor_bookkeeping(3, 1).passed());
    }
}
