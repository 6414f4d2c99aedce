use std::fmt;

use super::subspace::{null_space, Echelon, Subspace};
use super::vector::{lincomb, SparseVec};
use crate::error::{mismatch, Result};
use crate::rational::Rational;

/// Sparse rational matrix stored as one sparse vector per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row
                .entries()
                .iter()
                .map(|(c, x)| format!("{c}:{x}"))
                .collect();
            writeln!(f, "  {{{}}}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        MatrixQ {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, x) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range");
            buckets[r].push((c, x));
        }
        MatrixQ {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|c| c < cols)));
        MatrixQ {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        MatrixQ::from_entries(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, &x)| (i, j, Rational::from_int(x)))
            }),
        )
    }

    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        MatrixQ::from_entries(n, n, [(i, j, Rational::one())])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.entries().iter().map(move |(j, x)| (i, j.to_owned(), x)))
    }

    pub fn try_mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(mismatch(
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                lincomb(
                    row.entries()
                        .iter()
                        .map(|(k, a)| (a.clone(), &other.data[*k])),
                )
            })
            .collect();
        Ok(MatrixQ {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &MatrixQ) -> MatrixQ {
        self.try_mul(other).expect("incompatible matrix shapes")
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(self.data.iter().enumerate().filter_map(|(i, row)| {
            let x = row.dot(v);
            (!x.is_zero()).then_some((i, x))
        }))
    }

    fn zip_rows(&self, other: &MatrixQ, c: &Rational) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.axpy(c, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &MatrixQ) -> MatrixQ {
        self.zip_rows(other, &Rational::one())
    }

    pub fn sub(&self, other: &MatrixQ) -> MatrixQ {
        self.zip_rows(other, &Rational::from_int(-1))
    }

    pub fn axpy(&self, c: &Rational, other: &MatrixQ) -> MatrixQ {
        self.zip_rows(other, c)
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &MatrixQ) -> MatrixQ {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> MatrixQ {
        MatrixQ::from_entries(
            self.cols,
            self.rows,
            self.entries().map(|(i, j, x)| (j, i, x.clone())),
        )
    }

    pub fn kron(&self, other: &MatrixQ) -> MatrixQ {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Vec::new();
        for (i1, j1, a) in self.entries() {
            for (i2, j2, b) in other.entries() {
                out.push((i1 * r2 + i2, j1 * c2 + j2, a * b));
            }
        }
        MatrixQ::from_entries(self.rows * r2, self.cols * c2, out)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i].get(i))
            .sum()
    }

    /// Flattening `(row, col) ↦ row·cols + col`.
    pub fn flatten(&self) -> SparseVec {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.nnz());
        for (i, row) in self.data.iter().enumerate() {
            out.extend(row.entries().iter().map(|(j, x)| (i * cols + j, x.clone())));
        }
        SparseVec::from_sorted_unchecked(out)
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVec) -> MatrixQ {
        MatrixQ::from_entries(
            rows,
            cols,
            v.entries()
                .iter()
                .map(|(k, x)| (k / cols, k % cols, x.clone())),
        )
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (MatrixQ, usize, Vec<usize>) {
        let mut ech = Echelon::new(self.cols);
        for row in &self.data {
            ech.insert(row);
        }
        let sub = ech.into_subspace();
        let rank = sub.dim();
        let pivots = sub.pivots().to_vec();
        let mut data = sub.basis().to_vec();
        data.resize(self.rows, SparseVec::new());
        (
            MatrixQ {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            rank,
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan on `[A | I]`.
    pub fn inverse(&self) -> Option<MatrixQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new(2 * n);
        for (i, row) in self.data.iter().enumerate() {
            ech.insert(&row.add(&SparseVec::unit(n + i)));
        }
        let sub = ech.into_subspace();
        if sub.dim() != n || sub.pivots().iter().any(|&p| p >= n) {
            return None;
        }
        Some(MatrixQ {
            rows: n,
            cols: n,
            data: sub.basis().iter().map(|r| r.slice(n..2 * n)).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> MatrixQ {
        let mut out = MatrixQ::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Dense integer form, if every entry is an integer fitting `i64`.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (i, j, x) in self.entries() {
            out[i][j] = x.to_i64()?;
        }
        Some(out)
    }

    /// Dense form with entries rendered as `p/q` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let mut out = vec![vec!["0".to_string(); self.cols]; self.rows];
        for (i, j, x) in self.entries() {
            out[i][j] = x.to_string();
        }
        out
    }
}

/// Span of the flattenings of `mats`, which must share a shape.
pub fn span(mats: &[MatrixQ]) -> Result<Subspace> {
    let Some(first) = mats.first() else {
        return Ok(Subspace::zero(0));
    };
    let (r, c) = (first.rows, first.cols);
    let mut ech = Echelon::new(r * c);
    for m in mats {
        if (m.rows, m.cols) != (r, c) {
            return Err(mismatch(
                format!("{r}x{c}"),
                format!("{}x{}", m.rows, m.cols),
            ));
        }
        ech.insert(&m.flatten());
    }
    Ok(ech.into_subspace())
}

/// Span of the flattenings of `mats` inside the `size×size` matrix space.
pub fn span_in(size: usize, mats: &[MatrixQ]) -> Result<Subspace> {
    if mats.is_empty() {
        return Ok(Subspace::zero(size * size));
    }
    let s = span(mats)?;
    if s.ambient() != size * size {
        return Err(mismatch(size * size, s.ambient()));
    }
    Ok(s)
}

/// `{X : X·A = A·X for every generator A}`, flattened.
pub fn commutant(size: usize, generators: &[MatrixQ]) -> Result<Subspace> {
    for g in generators {
        if (g.rows, g.cols) != (size, size) {
            return Err(mismatch(
                format!("{size}x{size}"),
                format!("{}x{}", g.rows, g.cols),
            ));
        }
    }
    let nvars = size * size;
    let var = |i: usize, j: usize| i * size + j;
    let mut equations = Vec::new();
    for a in generators {
        let at = a.transpose();
        // (XA − AX)_{ik} = Σ_j X_ij A_jk − Σ_j A_ij X_jk
        for i in 0..size {
            for k in 0..size {
                let mut eq: Vec<(usize, Rational)> = Vec::new();
                for (j, x) in at.row(k).entries() {
                    eq.push((var(i, *j), x.clone()));
                }
                for (j, x) in a.row(i).entries() {
                    eq.push((var(*j, k), -x.clone()));
                }
                let eq = SparseVec::from_entries(eq);
                if !eq.is_zero() {
                    equations.push(eq);
                }
            }
        }
    }
    equations.sort_by_key(|x| x.nnz());
    equations.dedup();
    Ok(null_space(equations, nvars))
}

/// Unflattens every basis vector of a matrix subspace.
pub fn subspace_matrices(size: usize, s: &Subspace) -> Vec<MatrixQ> {
    s.basis()
        .iter()
        .map(|v| MatrixQ::unflatten(size, size, v))
        .collect()
}
