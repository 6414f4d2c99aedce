use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::{span, MatrixQ};
use super::subspace::{kernel_of_images, null_space, Echelon, Subspace};
use super::vector::{lincomb, SparseVec};
use crate::error::{mismatch, Error, Result};
use crate::rational::Rational;

/// Structure constants of a finite-dimensional algebra in a fixed basis:
/// `b_i·b_j = Σ_k table[i·dim + j]_k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    dim: usize,
    table: Vec<SparseVec>,
    identity: Option<SparseVec>,
}

impl Structure {
    pub fn new(dim: usize, table: Vec<SparseVec>, identity: Option<SparseVec>) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(mismatch(dim * dim, table.len()));
        }
        Ok(Structure {
            dim,
            table,
            identity,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> Option<&SparseVec> {
        self.identity.as_ref()
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::with_capacity(x.nnz() * y.nnz());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                terms.push((a * b, &self.table[i * self.dim + j]));
            }
        }
        lincomb(terms)
    }

    pub fn power(&self, x: &SparseVec, k: usize) -> SparseVec {
        match k {
            0 => self
                .identity
                .clone()
                .expect("power 0 needs an identity element"),
            _ => {
                let mut out = x.clone();
                for _ in 1..k {
                    out = self.mul(&out, x);
                }
                out
            }
        }
    }

    pub fn is_idempotent(&self, x: &SparseVec) -> bool {
        &self.mul(x, x) == x
    }

    /// Trace of left multiplication by the basis element `m`.
    fn left_trace(&self, m: usize) -> Rational {
        (0..self.dim)
            .map(|k| self.table[m * self.dim + k].get(k))
            .sum()
    }

    /// Kernel of the trace form `(x, y) ↦ tr(L_{xy})`; in characteristic
    /// zero this is the Jacobson radical.
    pub fn radical(&self) -> Subspace {
        let t: Vec<Rational> = (0..self.dim).map(|m| self.left_trace(m)).collect();
        let t = SparseVec::from_dense(&t);
        let rows = (0..self.dim).map(|i| {
            SparseVec::from_entries(
                (0..self.dim).map(|j| (j, self.table[i * self.dim + j].dot(&t))),
            )
        });
        // The form is symmetric, so its rows double as the equations.
        null_space(rows.collect::<Vec<_>>(), self.dim)
    }

    pub fn center(&self) -> Subspace {
        // Σ_i z_i (c_ij^m − c_ji^m) = 0 for every j and m.
        let mut equations = Vec::new();
        for j in 0..self.dim {
            let mut by_m: std::collections::BTreeMap<usize, Vec<(usize, Rational)>> =
                Default::default();
            for i in 0..self.dim {
                let d = self.table[i * self.dim + j].sub(&self.table[j * self.dim + i]);
                for (m, x) in d.into_entries() {
                    by_m.entry(m).or_default().push((i, x));
                }
            }
            equations.extend(by_m.into_values().map(SparseVec::from_entries));
        }
        null_space(equations, self.dim)
    }

    /// `e·A·f` as a subspace of coordinates; `e` and `f` must be idempotent.
    pub fn corner(&self, e: &SparseVec, f: &SparseVec) -> Result<Subspace> {
        for (name, x) in [("left", e), ("right", f)] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(format!("{name} corner element")));
            }
        }
        let images: Vec<SparseVec> = (0..self.dim)
            .map(|i| {
                let ei = self.mul(e, &SparseVec::unit(i));
                self.mul(&ei, f)
            })
            .collect();
        Ok(Subspace::from_vectors(self.dim, images.iter()))
    }

    /// The structure on a subspace closed under multiplication, in the
    /// subspace's canonical basis. `unit` (ambient coordinates) overrides
    /// the inherited identity, as needed for corner algebras `eAe`.
    pub fn subalgebra(&self, sub: &Subspace, unit: Option<&SparseVec>) -> Result<Structure> {
        let d = sub.dim();
        let basis = sub.basis();
        let mut table = Vec::with_capacity(d * d);
        for a in basis {
            for b in basis {
                let p = self.mul(a, b);
                let c = sub
                    .coords(&p)
                    .ok_or_else(|| Error::NotClosed("subalgebra product".into()))?;
                table.push(c);
            }
        }
        let identity = match unit.or(self.identity.as_ref()) {
            Some(u) => sub.coords(u),
            None => None,
        };
        Structure::new(d, table, identity)
    }

    /// The quotient by a two-sided ideal, in the basis of images of the
    /// ideal's free columns.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Structure> {
        if ideal.ambient() != self.dim {
            return Err(mismatch(self.dim, ideal.ambient()));
        }
        let free = ideal.free_columns();
        let slot: std::collections::HashMap<usize, usize> =
            free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let project = |v: &SparseVec| {
            let r = ideal.residual(v);
            SparseVec::from_entries(r.into_entries().into_iter().map(|(c, x)| (slot[&c], x)))
        };
        let mut table = Vec::with_capacity(free.len() * free.len());
        for &a in &free {
            for &b in &free {
                table.push(project(&self.table[a * self.dim + b]));
            }
        }
        let identity = self.identity.as_ref().map(project);
        Structure::new(free.len(), table, identity)
    }

    /// Number of blocks: `dim Z − dim(Z ∩ rad)`, confirmed by exhibiting that
    /// many orthogonal idempotents in `Z/(Z ∩ rad)`.
    pub fn block_count(&self) -> Result<usize> {
        let z = self.center();
        let j = self.radical();
        let zj = z.intersect(&j)?;
        let zs = self.subalgebra(&z, None)?;
        let zj_in_z: Vec<SparseVec> = zj
            .basis()
            .iter()
            .map(|v| z.coords(v).expect("Z ∩ J lies in Z"))
            .collect();
        let zj_in_z = Subspace::from_vectors(z.dim(), zj_in_z.iter());
        let quotient = zs.quotient(&zj_in_z)?;
        let idempotents = split_commutative(&quotient)?;
        if idempotents.len() != quotient.dim() {
            return Err(Error::SplitUnverified(format!(
                "found {} idempotents in a {}-dimensional central quotient",
                idempotents.len(),
                quotient.dim()
            )));
        }
        Ok(quotient.dim())
    }
}

/// Primitive idempotents of a commutative semisimple algebra that splits
/// over the rationals, found by splitting along minimal polynomials of the
/// basis elements.
pub fn split_commutative(alg: &Structure) -> Result<Vec<SparseVec>> {
    let one = alg
        .identity
        .clone()
        .ok_or_else(|| Error::SplitUnverified("quotient has no identity".into()))?;
    if alg.dim == 0 {
        return Ok(Vec::new());
    }
    let mut idems = vec![one.clone()];
    for b in 0..alg.dim {
        if idems.len() == alg.dim {
            break;
        }
        let mut next = Vec::new();
        for f in &idems {
            let x = alg.mul(f, &SparseVec::unit(b));
            let poly = minimal_polynomial(alg, f, &x);
            let roots = rational_roots(&poly)?;
            if roots.len() + 1 != poly.len() {
                return Err(Error::SplitUnverified(format!(
                    "minimal polynomial of degree {} has {} distinct rational roots",
                    poly.len() - 1,
                    roots.len()
                )));
            }
            for (i, ci) in roots.iter().enumerate() {
                let mut e = f.clone();
                for (k, ck) in roots.iter().enumerate() {
                    if k == i {
                        continue;
                    }
                    let factor = x.axpy(&(-ck.clone()), f).scale(&(ci - ck).recip().unwrap());
                    e = alg.mul(&e, &factor);
                }
                if !e.is_zero() {
                    next.push(e);
                }
            }
        }
        idems = next;
    }
    let sum = idems.iter().fold(SparseVec::new(), |acc, e| acc.add(e));
    let orthogonal = idems.iter().enumerate().all(|(i, e)| {
        alg.is_idempotent(e)
            && idems[i + 1..]
                .iter()
                .all(|f| alg.mul(e, f).is_zero() && alg.mul(f, e).is_zero())
    });
    if sum != one || !orthogonal {
        return Err(Error::SplitUnverified(
            "idempotents fail orthogonality or completeness".into(),
        ));
    }
    Ok(idems)
}

/// Monic minimal polynomial of `x` inside `f·A` (unit `f`), coefficients
/// listed from the constant term up.
fn minimal_polynomial(alg: &Structure, f: &SparseVec, x: &SparseVec) -> Vec<Rational> {
    let mut powers = vec![f.clone()];
    loop {
        let next = alg.mul(powers.last().unwrap(), x);
        powers.push(next);
        let kernel = kernel_of_images(&powers, alg.dim);
        if let Some(c) = kernel.basis().first() {
            let k = powers.len() - 1;
            let lead = c.get(k);
            let inv = lead.recip().expect("earlier powers are independent");
            return (0..=k).map(|i| &c.get(i) * &inv).collect();
        }
    }
}

fn small_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= 1_000_000_000_000)
        .ok_or_else(|| Error::SplitUnverified("polynomial coefficient too large".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational roots by the rational root theorem.
fn rational_roots(poly: &[Rational]) -> Result<Vec<Rational>> {
    let lcm = poly
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = &ints[low];
    let an = ints.last().unwrap();
    let eval = |t: &Rational| {
        poly.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * t) + c)
    };
    if low + 1 < ints.len() {
        for p in small_divisors(a0)? {
            for q in small_divisors(an)? {
                if Integer::gcd(&p, &q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let t = Rational::from(num_rational::BigRational::new(
                        BigInt::from(p) * sign,
                        BigInt::from(q),
                    ));
                    if eval(&t).is_zero() && !roots.contains(&t) {
                        roots.push(t);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// A concretely realized algebra of `size×size` matrices.
#[derive(Clone, Debug)]
pub struct AlgebraHandle {
    size: usize,
    span: Subspace,
    basis: Vec<MatrixQ>,
    structure: Structure,
}

impl AlgebraHandle {
    /// Wraps a span that must be closed under multiplication and contain
    /// the identity; both are verified.
    pub fn from_span(size: usize, span: Subspace) -> Result<Self> {
        if span.ambient() != size * size {
            return Err(mismatch(size * size, span.ambient()));
        }
        let basis: Vec<MatrixQ> = span
            .basis()
            .iter()
            .map(|v| MatrixQ::unflatten(size, size, v))
            .collect();
        let d = basis.len();
        let mut table = Vec::with_capacity(d * d);
        for a in &basis {
            for b in &basis {
                let p = a.mul(b).flatten();
                let c = span.coords(&p).ok_or_else(|| {
                    Error::NotClosed(format!("product escapes a {d}-dimensional span"))
                })?;
                table.push(c);
            }
        }
        let identity = span
            .coords(&MatrixQ::identity(size).flatten())
            .ok_or_else(|| Error::NotClosed("identity is not in the span".into()))?;
        Ok(AlgebraHandle {
            size,
            span,
            basis,
            structure: Structure::new(d, table, Some(identity))?,
        })
    }

    pub fn from_matrices(size: usize, mats: &[MatrixQ]) -> Result<Self> {
        let s = if mats.is_empty() {
            Subspace::zero(size * size)
        } else {
            span(mats)?
        };
        AlgebraHandle::from_span(size, s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatrixQ] {
        &self.basis
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn identity_coords(&self) -> &SparseVec {
        self.structure
            .identity
            .as_ref()
            .expect("verified at construction")
    }

    pub fn coords(&self, m: &MatrixQ) -> Option<SparseVec> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        self.span.coords(&m.flatten())
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        self.coords(m).is_some()
    }

    pub fn element(&self, coords: &SparseVec) -> MatrixQ {
        MatrixQ::unflatten(self.size, self.size, &self.span.combine(coords))
    }

    /// Maps a coordinate subspace to the corresponding matrix subspace.
    pub fn to_matrix_subspace(&self, coords: &Subspace) -> Subspace {
        coords.map(self.size * self.size, |c| self.span.combine(c))
    }

    pub fn radical(&self) -> Subspace {
        self.structure.radical()
    }

    pub fn center(&self) -> Subspace {
        self.structure.center()
    }

    pub fn corner(&self, e: &SparseVec, f: &SparseVec) -> Result<Subspace> {
        self.structure.corner(e, f)
    }

    pub fn block_count(&self) -> Result<usize> {
        self.structure.block_count()
    }

    /// Commutant of this algebra inside the full matrix space.
    pub fn commutant(&self) -> Result<Subspace> {
        super::matrix::commutant(self.size, &self.basis)
    }
}

/// The unital algebra generated by `seed`: starting from `span(seed ∪ {I})`,
/// newly added elements are multiplied on the right by the seed until the
/// rank stops growing.
pub fn algebra_closure(size: usize, seed: &[MatrixQ]) -> Result<AlgebraHandle> {
    for s in seed {
        if (s.rows(), s.cols()) != (size, size) {
            return Err(mismatch(
                format!("{size}x{size}"),
                format!("{}x{}", s.rows(), s.cols()),
            ));
        }
    }
    let mut ech = Echelon::new(size * size);
    let mut frontier = Vec::new();
    for m in std::iter::once(MatrixQ::identity(size)).chain(seed.iter().cloned()) {
        if ech.insert(&m.flatten()) {
            frontier.push(m);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for s in seed {
                let p = f.mul(s);
                if ech.insert(&p.flatten()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    AlgebraHandle::from_span(size, ech.into_subspace())
}
