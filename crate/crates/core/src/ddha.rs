//! Operators of the degenerate double Hecke algebra acting on the enhanced
//! tensor space: partial permutations `x_σ^I`, rank-restricted position
//! permutations `Ψ_l(τ)`, the algebra `D(n, r)` they span, and its
//! invariant subalgebras.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{binomial, d_small, dim_specht, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::linalg::{
    kernel_of_images, span_in, AlgebraHandle, Echelon, MatrixQ, SparseVec, Subspace,
};
use crate::perm::Perm;
use crate::rational::Rational;
use crate::report::Report;
use crate::schur::{
    all_tensor_entries, orbits_over, permute_entries, phi_of_group_element, psi_of_permutation,
    rank_of, tensor_index, unipotent_basis, xi_to_matrix,
};

/// A subset `I ⊆ {1, …, r}` (stored 0-based, increasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSet {
    members: Vec<usize>,
}

impl PositionSet {
    /// From 1-based positions.
    pub fn new(mut members: Vec<usize>, r: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&p| p == 0 || p > r) {
            return Err(Error::InvalidInput(format!(
                "{members:?} not inside 1..={r}"
            )));
        }
        Ok(PositionSet {
            members: members.into_iter().map(|p| p - 1).collect(),
        })
    }

    /// `{1, …, l}`.
    pub fn initial(l: usize) -> Self {
        PositionSet {
            members: (0..l).collect(),
        }
    }

    /// All `l`-subsets of `{1..r}` in lexicographic order.
    pub fn all(r: usize, l: usize) -> Vec<PositionSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(l);
        fn rec(start: usize, r: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<PositionSet>) {
            if cur.len() == l {
                out.push(PositionSet {
                    members: cur.clone(),
                });
                return;
            }
            for p in start..r {
                cur.push(p);
                rec(p + 1, r, l, cur, out);
                cur.pop();
            }
        }
        rec(0, r, l, &mut cur, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// 0-based members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self, r: usize) -> Vec<usize> {
        (0..r).filter(|p| !self.members.contains(p)).collect()
    }

    pub fn image(&self, tau: &Perm) -> PositionSet {
        let mut members: Vec<usize> = self.members.iter().map(|&p| tau.apply(p)).collect();
        members.sort_unstable();
        PositionSet { members }
    }
}

impl std::fmt::Display for PositionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The permutation sending `I` onto `J` and the complement of `I` onto the
/// complement of `J`, both order-preservingly.
pub fn tau_between(target: &PositionSet, source: &PositionSet, r: usize) -> Perm {
    assert_eq!(target.len(), source.len());
    let mut images = vec![0usize; r];
    for (&s, &t) in source.members.iter().zip(&target.members) {
        images[s] = t;
    }
    for (s, t) in source.complement(r).into_iter().zip(target.complement(r)) {
        images[s] = t;
    }
    Perm::from_images(images).expect("bijection by construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorLabel {
    XSigmaI { sigma: Perm, positions: PositionSet },
    PsiL { tau: Perm, l: usize },
    Psi { tau: Perm },
}

/// A matrix on `(Q^{n+1})^{⊗r}` with a description of where it came from.
#[derive(Clone, Debug)]
pub struct TensorOperator {
    pub matrix: MatrixQ,
    pub label: OperatorLabel,
}

fn small_positions(i: &[u8], n: usize) -> Vec<usize> {
    (0..i.len()).filter(|&k| i[k] as usize <= n).collect()
}

/// Permutes the entries at positions `I` by `σ` on basis vectors whose
/// entries `≤ n` sit exactly at `I`; annihilates every other basis vector.
pub fn x_sigma_i(sigma: &Perm, set: &PositionSet, n: usize, r: usize) -> Result<TensorOperator> {
    if sigma.degree() != set.len() {
        return Err(Error::InvalidInput(format!(
            "permutation of degree {} for a {}-element position set",
            sigma.degree(),
            set.len()
        )));
    }
    if set.members.iter().any(|&p| p >= r) {
        return Err(Error::InvalidInput(format!("{set} not inside 1..={r}")));
    }
    let m = n + 1;
    let size = m.pow(r as u32);
    let entries = all_tensor_entries(m, r)
        .into_iter()
        .filter(|i| small_positions(i, n) == set.members)
        .map(|i| {
            let mut j = i.clone();
            for (k, &p) in set.members.iter().enumerate() {
                j[set.members[sigma.apply(k)]] = i[p];
            }
            (tensor_index(m, &j), tensor_index(m, &i), Rational::one())
        });
    Ok(TensorOperator {
        matrix: MatrixQ::from_entries(size, size, entries),
        label: OperatorLabel::XSigmaI {
            sigma: sigma.clone(),
            positions: set.clone(),
        },
    })
}

/// `Ψ(τ)` restricted to rank-`l` basis vectors, zero elsewhere.
pub fn psi_l(tau: &Perm, l: usize, n: usize) -> TensorOperator {
    let m = n + 1;
    let r = tau.degree();
    let size = m.pow(r as u32);
    let entries = all_tensor_entries(m, r)
        .into_iter()
        .filter(|i| rank_of(i, n) == l)
        .map(|i| {
            (
                tensor_index(m, &permute_entries(&i, tau)),
                tensor_index(m, &i),
                Rational::one(),
            )
        });
    TensorOperator {
        matrix: MatrixQ::from_entries(size, size, entries),
        label: OperatorLabel::PsiL {
            tau: tau.clone(),
            l,
        },
    }
}

pub fn psi(tau: &Perm, n: usize) -> TensorOperator {
    TensorOperator {
        matrix: psi_of_permutation(tau, n + 1),
        label: OperatorLabel::Psi { tau: tau.clone() },
    }
}

/// `x_σ^{l̲}`.
fn x_initial(sigma: &Perm, n: usize, r: usize) -> MatrixQ {
    x_sigma_i(sigma, &PositionSet::initial(sigma.degree()), n, r)
        .expect("initial segment is valid")
        .matrix
}

#[derive(Default)]
struct RelationTally {
    instances: usize,
    failures: usize,
}

impl RelationTally {
    fn check(&mut self, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

/// Instantiates every defining relation with `s_i ↦ Ψ(s_i)` and
/// `x_σ^{(l)} ↦ x_σ^{l̲}` and compares both sides as matrices.
pub fn ddha_relation_check(n: usize, r: usize) -> Report {
    let mut report = Report::new("ddha relations", n, r);
    let size = (n + 1).pow(r as u32);
    let id = MatrixQ::identity(size);
    let s: Vec<MatrixQ> = (1..r)
        .map(|i| psi_of_permutation(&Perm::simple(r, i), n + 1))
        .collect();
    let s_at = |i: usize| &s[i - 1];
    let mut x: HashMap<(usize, Perm), MatrixQ> = HashMap::new();
    for l in 0..=r {
        for sigma in Perm::all(l) {
            let mat = x_initial(&sigma, n, r);
            x.insert((l, sigma), mat);
        }
    }
    let xs = |l: usize, p: &Perm| &x[&(l, p.clone())];

    let mut involution = RelationTally::default();
    let mut far = RelationTally::default();
    let mut braid = RelationTally::default();
    for i in 1..r {
        involution.check(s_at(i).mul(s_at(i)) == id);
        for j in 1..r {
            if i.abs_diff(j) > 1 {
                far.check(s_at(i).mul(s_at(j)) == s_at(j).mul(s_at(i)));
            } else if i.abs_diff(j) == 1 {
                let lhs = s_at(i).mul(s_at(j)).mul(s_at(i));
                let rhs = s_at(j).mul(s_at(i)).mul(s_at(j));
                braid.check(lhs == rhs);
            }
        }
    }

    let mut multiplicative = RelationTally::default();
    let mut absorb = RelationTally::default();
    let mut fix = RelationTally::default();
    let mut orthogonal = RelationTally::default();
    for l in 0..=r {
        let perms = Perm::all(l);
        for sigma in &perms {
            for mu in &perms {
                multiplicative.check(xs(l, sigma).mul(xs(l, mu)) == *xs(l, &sigma.compose(mu)));
            }
            for i in 1..r {
                if i < l {
                    let si = Perm::simple(l, i);
                    absorb.check(s_at(i).mul(xs(l, sigma)) == *xs(l, &si.compose(sigma)));
                    absorb.check(xs(l, sigma).mul(s_at(i)) == *xs(l, &sigma.compose(&si)));
                } else if i > l {
                    fix.check(s_at(i).mul(xs(l, sigma)) == *xs(l, sigma));
                    fix.check(xs(l, sigma).mul(s_at(i)) == *xs(l, sigma));
                }
            }
            for k in 0..=r {
                if k == l {
                    continue;
                }
                for gamma in Perm::all(k) {
                    orthogonal.check(xs(l, sigma).mul(xs(k, &gamma)).is_zero());
                }
            }
        }
    }

    for (name, t) in [
        ("involution", involution),
        ("far commutation", far),
        ("braid", braid),
        ("x multiplicative", multiplicative),
        ("s absorbed below l", absorb),
        ("s trivial above l", fix),
        ("rank orthogonality", orthogonal),
    ] {
        report.record(format!("{name} instances"), t.instances);
        report.expect(format!("{name} failures"), t.failures, 0usize);
    }
    report
}

/// `D(n, r)` with its rank pieces `D_l` (as flattened matrix subspaces).
#[derive(Clone, Debug)]
pub struct DAlgebra {
    pub n: usize,
    pub r: usize,
    pub handle: AlgebraHandle,
    pub pieces: Vec<Subspace>,
}

impl DAlgebra {
    pub fn size(&self) -> usize {
        self.handle.size()
    }

    pub fn dim(&self) -> usize {
        self.handle.dim()
    }
}

/// `dim D(n,r)_l = d(n,l)·C(r,l)²`.
pub fn d_piece_dim_formula(n: usize, r: usize, l: usize) -> u128 {
    d_small(n, l) as u128 * binomial(r, l).pow(2)
}

/// Spanning set of `D_l`: `Ψ(τ)·x_σ^I` over all `τ ∈ 𝔖_r` when
/// `all_tau`, otherwise over the coset representatives `τ_{JI}`.
pub fn d_piece(n: usize, r: usize, l: usize, all_tau: bool) -> Result<Subspace> {
    let size = (n + 1).pow(r as u32);
    let sets = PositionSet::all(r, l);
    let mut seen: HashSet<SparseVec> = HashSet::new();
    let mut ech = Echelon::new(size * size);
    let taus_all = if all_tau { Perm::all(r) } else { Vec::new() };
    for set in &sets {
        let taus: Vec<Perm> = if all_tau {
            taus_all.clone()
        } else {
            sets.iter().map(|j| tau_between(j, set, r)).collect()
        };
        for sigma in Perm::all(l) {
            let x = x_sigma_i(&sigma, set, n, r)?.matrix;
            for tau in &taus {
                let v = psi_of_permutation(tau, n + 1).mul(&x).flatten();
                if seen.insert(v.clone()) {
                    ech.insert(&v);
                }
            }
        }
    }
    Ok(ech.into_subspace())
}

/// Builds `D(n, r) = ⊕_l D_l`; the enumeration uses every `τ` up to
/// `r = 5` and coset representatives beyond.
pub fn d_algebra(n: usize, r: usize) -> Result<DAlgebra> {
    let size = (n + 1).pow(r as u32);
    let pieces = (0..=r)
        .map(|l| d_piece(n, r, l, r <= 5))
        .collect::<Result<Vec<_>>>()?;
    let total = Subspace::from_vectors(size * size, pieces.iter().flat_map(|p| p.basis().iter()));
    let handle = AlgebraHandle::from_span(size, total)?;
    Ok(DAlgebra {
        n,
        r,
        handle,
        pieces,
    })
}

/// Dimension and direct-sum checks for `D(n, r)`.
pub fn d_dimension_check(n: usize, r: usize) -> Result<Report> {
    let d = d_algebra(n, r)?;
    let size2 = d.size() * d.size();
    let mut report = Report::new("ddha dimensions", n, r);
    for (l, piece) in d.pieces.iter().enumerate() {
        let isotypic: u128 = partitions_of(l, n)
            .iter()
            .map(|p| (binomial(r, l) * dim_specht(p) as u128).pow(2))
            .sum();
        report.expect_with_oracle(
            format!("dim D_{l}"),
            piece.dim(),
            d_piece_dim_formula(n, r, l) as usize,
            isotypic as usize,
        );
        let others = Subspace::from_vectors(
            size2,
            d.pieces
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != l)
                .flat_map(|(_, p)| p.basis().iter()),
        );
        report.expect(
            format!("D_{l} meets the other pieces trivially"),
            piece.intersect(&others)?.dim(),
            0usize,
        );
        if r <= 5 {
            let cosets = d_piece(n, r, l, false)?;
            report.assert(format!("D_{l} coset enumeration agrees"), cosets == *piece);
        }
    }
    let formula: u128 = (0..=r).map(|l| d_piece_dim_formula(n, r, l)).sum();
    report.expect("dim D", d.dim(), formula as usize);
    Ok(report)
}

/// Checks the product rule of the basis `Ψ_l(τ_{JI})·x_σ^I` (`n ≥ l`):
/// the product of the `(L,K,μ)` and `(J,I,σ)` elements is the `(L,I,μσ)`
/// element when `J = K` and zero otherwise.
pub fn structure_constants_check(n: usize, r: usize, l: usize) -> Result<Report> {
    if n < l {
        return Err(Error::InvalidInput(format!(
            "needs n ≥ l, got n={n}, l={l}"
        )));
    }
    let mut report = Report::new(format!("structure constants l={l}"), n, r);
    let sets = PositionSet::all(r, l);
    let perms = Perm::all(l);
    let mut elems: HashMap<(usize, usize, usize), MatrixQ> = HashMap::new();
    for (ji, j) in sets.iter().enumerate() {
        for (ii, i) in sets.iter().enumerate() {
            let tau = psi_l(&tau_between(j, i, r), l, n).matrix;
            for (si, sigma) in perms.iter().enumerate() {
                let x = x_sigma_i(sigma, i, n, r)?.matrix;
                elems.insert((ji, ii, si), tau.mul(&x));
            }
        }
    }
    let expected_count = binomial(r, l) as usize * binomial(r, l) as usize * perms.len();
    report.expect("basis size", elems.len(), expected_count);
    let size = (n + 1).pow(r as u32);
    let all: Vec<MatrixQ> = elems.values().cloned().collect();
    report.expect("basis rank", span_in(size, &all)?.dim(), expected_count);

    let perm_index: HashMap<Perm, usize> = perms
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), k))
        .collect();
    let mut instances = 0usize;
    let mut failures = 0usize;
    let mut zero_instances = 0usize;
    for (&(lj, kj, mu), left) in &elems {
        for (&(jj, ij, sigma), right) in &elems {
            let prod = left.mul(right);
            let ok = if kj == jj {
                let composed = perms[mu].compose(&perms[sigma]);
                prod == elems[&(lj, ij, perm_index[&composed])]
            } else {
                zero_instances += 1;
                prod.is_zero()
            };
            instances += 1;
            if !ok {
                failures += 1;
            }
        }
    }
    report.record("product instances", instances);
    report.record("zero product instances", zero_instances);
    report.expect("product failures", failures, 0usize);
    Ok(report)
}

/// Fixed vectors of `Φ(I + E_{k,k+1})`, `k < n`, inside the `λ`-weight
/// space of `V^{⊗l} ⊗ η^{⊗(r−l)}`, as a subspace of the tensor space.
pub fn specht_realization(lambda: &Partition, n: usize, r: usize) -> Result<Subspace> {
    let l = lambda.size();
    if lambda.len() > n || l > r {
        return Err(Error::InvalidInput(format!(
            "{lambda} is not a partition with at most {n} parts of size at most {r}"
        )));
    }
    let m = n + 1;
    let size = m.pow(r as u32);
    let mut weight: Vec<u8> = Vec::new();
    for (k, &c) in lambda.parts().iter().enumerate() {
        weight.extend(std::iter::repeat_n(k as u8 + 1, c));
    }
    weight.sort_unstable();
    let weight_basis: Vec<usize> = all_tensor_entries(m, r)
        .into_iter()
        .filter(|i| {
            let mut head = i[..l].to_vec();
            head.sort_unstable();
            head == weight && i[l..].iter().all(|&v| v as usize == m)
        })
        .map(|i| tensor_index(m, &i))
        .collect();
    let raisers: Vec<MatrixQ> = (1..n)
        .map(|k| {
            let mut u = MatrixQ::identity(m);
            u = u.add(&MatrixQ::elementary(m, k - 1, k));
            xi_to_matrix(&phi_of_group_element(&u, r)).sub(&MatrixQ::identity(size))
        })
        .collect();
    let images: Vec<SparseVec> = weight_basis
        .iter()
        .map(|&b| {
            let unit = SparseVec::unit(b);
            let mut parts = Vec::new();
            for (k, u) in raisers.iter().enumerate() {
                parts.extend(
                    u.mul_vec(&unit)
                        .into_entries()
                        .into_iter()
                        .map(|(c, x)| (k * size + c, x)),
                );
            }
            SparseVec::from_entries(parts)
        })
        .collect();
    let kernel = kernel_of_images(&images, raisers.len().max(1) * size);
    Ok(kernel.map(size, |c| {
        SparseVec::from_entries(
            c.entries()
                .iter()
                .map(|(k, x)| (weight_basis[*k], x.clone())),
        )
    }))
}

/// `(V̄^{⊗r})^{𝔖_r}`; also checks that it equals the combined column space
/// of the matrices `ξ_{i(n+1)^{r−l}, (n+1)^r}`.
pub fn symmetric_invariants(n: usize, r: usize) -> Result<Subspace> {
    let m = n + 1;
    let size = m.pow(r as u32);
    let id = MatrixQ::identity(size);
    let generators: Vec<MatrixQ> = (1..r)
        .map(|i| psi_of_permutation(&Perm::simple(r, i), m).sub(&id))
        .collect();
    let fixed = if generators.is_empty() {
        Subspace::full(size)
    } else {
        let images: Vec<SparseVec> = (0..size)
            .map(|b| {
                let unit = SparseVec::unit(b);
                let mut parts = Vec::new();
                for (k, g) in generators.iter().enumerate() {
                    parts.extend(
                        g.mul_vec(&unit)
                            .into_entries()
                            .into_iter()
                            .map(|(c, x)| (k * size + c, x)),
                    );
                }
                SparseVec::from_entries(parts)
            })
            .collect();
        kernel_of_images(&images, generators.len() * size)
    };

    let top = m as u8;
    let mut types: Vec<(u8, u8)> = (1..=top).map(|a| (a, top)).collect();
    types.sort_unstable();
    let source = SparseVec::unit(tensor_index(m, &vec![top; r]));
    let columns: Vec<SparseVec> = orbits_over(m, &types, r)
        .iter()
        .map(|o| xi_to_matrix(&crate::schur::XiElement::basis(o)).mul_vec(&source))
        .collect();
    let image = Subspace::from_vectors(size, columns.iter());
    if image != fixed {
        return Err(Error::ConstructionDisagreement(format!(
            "symmetric tensors have dim {} but the ξ column space has dim {}",
            fixed.dim(),
            image.dim()
        )));
    }
    Ok(fixed)
}

/// `span{Ψ(σ) : σ ∈ 𝔖_r}` in the flattened matrix space.
pub fn psi_span(n: usize, r: usize) -> Subspace {
    let size = (n + 1).pow(r as u32);
    let mats: Vec<MatrixQ> = Perm::all(r)
        .iter()
        .map(|s| psi_of_permutation(s, n + 1))
        .collect();
    span_in(size, &mats).expect("shapes agree")
}

fn coords_to_matrices(d: &DAlgebra, coords: &Subspace) -> Subspace {
    d.handle.to_matrix_subspace(coords)
}

/// `{φ ∈ D : [Φ(e^{aη_k}), φ] = 0}` for `k = 1..n`, `a = 1..r+1`, then
/// re-checked at one random larger `a`.
pub fn d_v_invariants_in(d: &DAlgebra, seed: u64) -> Result<Subspace> {
    let (n, r) = (d.n, d.r);
    let size = d.size();
    let size2 = size * size;
    let mut constraints = Vec::new();
    for k in 1..=n {
        for a in 1..=(r as i64 + 1) {
            constraints.push(xi_to_matrix(&phi_of_group_element(
                &unipotent_basis(n, k, a),
                r,
            )));
        }
    }
    let basis = d.handle.basis();
    let images: Vec<SparseVec> = basis
        .iter()
        .map(|b| {
            let mut parts = Vec::new();
            for (c, u) in constraints.iter().enumerate() {
                parts.extend(
                    u.commutator(b)
                        .flatten()
                        .into_entries()
                        .into_iter()
                        .map(|(k, x)| (c * size2 + k, x)),
                );
            }
            SparseVec::from_entries(parts)
        })
        .collect();
    let kernel = kernel_of_images(&images, constraints.len().max(1) * size2);
    let solution = coords_to_matrices(d, &kernel);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.gen_range(r as i64 + 2..=1000);
    for k in 1..=n {
        let u = xi_to_matrix(&phi_of_group_element(&unipotent_basis(n, k, a), r));
        for v in solution.basis() {
            let phi = MatrixQ::unflatten(size, size, v);
            if !u.commutator(&phi).is_zero() {
                return Err(Error::ConstructionDisagreement(format!(
                    "invariant fails at a = {a}, k = {k}"
                )));
            }
        }
    }
    Ok(solution)
}

pub fn d_v_invariants(n: usize, r: usize, seed: u64) -> Result<Subspace> {
    d_v_invariants_in(&d_algebra(n, r)?, seed)
}

/// `{φ ∈ D : φ kills every symmetric tensor}`.
pub fn d_ann_in(d: &DAlgebra) -> Result<Subspace> {
    let size = d.size();
    let sym = symmetric_invariants(d.n, d.r)?;
    let images: Vec<SparseVec> = d
        .handle
        .basis()
        .iter()
        .map(|b| {
            let mut parts = Vec::new();
            for (k, v) in sym.basis().iter().enumerate() {
                parts.extend(
                    b.mul_vec(v)
                        .into_entries()
                        .into_iter()
                        .map(|(c, x)| (k * size + c, x)),
                );
            }
            SparseVec::from_entries(parts)
        })
        .collect();
    let kernel = kernel_of_images(&images, sym.dim().max(1) * size);
    Ok(coords_to_matrices(d, &kernel))
}

pub fn d_ann(n: usize, r: usize) -> Result<Subspace> {
    d_ann_in(&d_algebra(n, r)?)
}
