use std::collections::HashMap;

use super::vector::{lincomb, SparseVec};
use crate::error::{mismatch, Result};
use crate::rational::Rational;

/// Incremental row echelon form. Rows are normalized so their leading
/// entry is 1, but are not back-substituted until [`Echelon::into_subspace`].
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column it touches.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let entries = v.entries();
            let start = entries.partition_point(|(c, _)| *c < from);
            let hit = entries[start..]
                .iter()
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            match hit {
                None => return v,
                Some((c, x)) => {
                    let row = &self.rows[self.pivot_row[&c]];
                    v = v.axpy(&(-x), row);
                    from = c + 1;
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|i| i < self.ambient));
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.recip().expect("leading entry is nonzero");
        let row = r.scale(&inv);
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Back-substitutes into canonical reduced row echelon form.
    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if let Some(c) = row.get_ref(p) {
                    let c = -c.clone();
                    *row = row.axpy(&c, pivot_row);
                }
            }
        }
        Subspace::from_rref_parts(self.ambient, rows, pivots)
    }
}

/// A subspace of `Q^ambient` stored in reduced row echelon form, which is
/// canonical: two subspaces are equal iff their stored rows are equal.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_index: HashMap<usize, usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    fn from_rref_parts(ambient: usize, rows: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let pivot_index = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Subspace {
            ambient,
            rows,
            pivots,
            pivot_index,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::from_rref_parts(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rref_parts(
            ambient,
            (0..ambient).map(SparseVec::unit).collect(),
            (0..ambient).collect(),
        )
    }

    pub fn from_vectors<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivot_index.contains_key(c))
            .collect()
    }

    /// Splits `v` into basis coordinates and the remainder outside the span.
    /// Coordinates can be read off the pivot entries directly because every
    /// basis row vanishes at the other rows' pivots.
    pub fn decompose(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let coords: Vec<(usize, Rational)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.pivot_index.get(c).map(|&k| (k, x.clone())))
            .collect();
        let residual = lincomb(
            std::iter::once((Rational::one(), v))
                .chain(coords.iter().map(|(k, x)| (-x.clone(), &self.rows[*k]))),
        );
        (SparseVec::from_sorted_unchecked(coords), residual)
    }

    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.decompose(v).1
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        self.decompose(v).1.is_zero()
    }

    /// Coordinates with respect to [`Subspace::basis`], if `v` lies in the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (c, r) = self.decompose(v);
        r.is_zero().then_some(c)
    }

    /// The vector with the given basis coordinates.
    pub fn combine(&self, coords: &SparseVec) -> SparseVec {
        lincomb(
            coords
                .entries()
                .iter()
                .map(|(k, x)| (x.clone(), &self.rows[*k])),
        )
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(mismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vec(r)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_vectors(
            self.ambient,
            self.rows.iter().chain(other.rows.iter()),
        ))
    }

    /// `self ∩ other`: the combinations of `self`'s basis whose remainder
    /// modulo `other` vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let residuals: Vec<SparseVec> = self.rows.iter().map(|r| other.residual(r)).collect();
        let kernel = kernel_of_images(&residuals, self.ambient);
        let vectors: Vec<SparseVec> = kernel.basis().iter().map(|x| self.combine(x)).collect();
        Ok(Subspace::from_vectors(self.ambient, vectors.iter()))
    }

    /// Image of the subspace under a linear map given on basis vectors.
    pub fn map<F>(&self, target_ambient: usize, f: F) -> Subspace
    where
        F: Fn(&SparseVec) -> SparseVec,
    {
        let images: Vec<SparseVec> = self.rows.iter().map(f).collect();
        Subspace::from_vectors(target_ambient, images.iter())
    }
}

/// Solution space of the homogeneous system whose rows are `equations`.
pub fn null_space<I>(equations: I, nvars: usize) -> Subspace
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut ech = Echelon::new(nvars);
    for eq in equations {
        if !eq.is_zero() {
            ech.insert(&eq);
            if ech.rank() == nvars {
                break;
            }
        }
    }
    let rref = ech.into_subspace();
    let free = rref.free_columns();
    let slot: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let mut solutions: Vec<Vec<(usize, Rational)>> =
        free.iter().map(|&f| vec![(f, Rational::one())]).collect();
    for (row, &p) in rref.rows.iter().zip(rref.pivots.iter()) {
        for (c, x) in row.entries() {
            if let Some(&k) = slot.get(c) {
                solutions[k].push((p, -x.clone()));
            }
        }
    }
    let vectors: Vec<SparseVec> = solutions.into_iter().map(SparseVec::from_entries).collect();
    Subspace::from_vectors(nvars, vectors.iter())
}

/// `{x : Σ x_i images[i] = 0}` as a subspace of `Q^images.len()`.
pub fn kernel_of_images(images: &[SparseVec], image_dim: usize) -> Subspace {
    let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); image_dim];
    for (i, img) in images.iter().enumerate() {
        for (c, x) in img.entries() {
            columns[*c].push((i, x.clone()));
        }
    }
    null_space(
        columns
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(SparseVec::from_sorted_unchecked),
        images.len(),
    )
}
