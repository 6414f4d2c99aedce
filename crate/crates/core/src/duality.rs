//! Centralizer identities on the (enhanced) tensor space: classical
//! Schur–Weyl, Levi duality with `D(n, r)`, parabolic duality with its
//! `V`-invariants, restriction to `V^{⊗r}`, mixed-tensor invariants and the
//! `n ≥ r` probe.

use crate::combinatorics::{binomial, dim_specht, factorial, partitions_of};
use crate::ddha::{
    d_algebra, d_ann_in, d_piece_dim_formula, d_v_invariants_in, psi_span, DAlgebra,
};
use crate::error::Result;
use crate::linalg::{commutant, span_in, MatrixQ, SparseVec, Subspace};
use crate::parabolic::ParabolicAlgebra;
use crate::perm::Perm;
use crate::rational::Rational;
use crate::report::Report;
use crate::schur::{
    all_orbits, all_tensor_entries, diagonal, group_image_span, levi_basis, phi_of_group_element,
    psi_of_permutation, schur_dim, tensor_index, unipotent_basis, xi_to_matrix, GroupSpec,
    XiElement,
};

/// One subspace identity `left = right` with a witness on failure.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub n: usize,
    pub r: usize,
    pub check_name: String,
    pub left_dim: usize,
    pub right_dim: usize,
    pub equal: bool,
    /// Some basis element of one side outside the other, as `p/q` strings.
    pub witness: Option<Vec<Vec<String>>>,
    /// Supporting checks (reverse direction, sandwiches, dimension oracles).
    pub checks: Report,
}

impl DualityReport {
    fn new(
        n: usize,
        r: usize,
        name: &str,
        size: usize,
        left: &Subspace,
        right: &Subspace,
    ) -> Result<Self> {
        let forward = right.contains(left)?;
        let backward = left.contains(right)?;
        let witness = if forward && backward {
            None
        } else {
            let (from, into) = if forward {
                (right, left)
            } else {
                (left, right)
            };
            from.basis()
                .iter()
                .find(|v| !into.contains_vec(v))
                .map(|v| MatrixQ::unflatten(size, size, v).to_strings())
        };
        let mut checks = Report::new(name, n, r);
        checks.assert(format!("{name}: left in right"), forward);
        checks.assert(format!("{name}: right in left"), backward);
        Ok(DualityReport {
            n,
            r,
            check_name: name.to_string(),
            left_dim: left.dim(),
            right_dim: right.dim(),
            equal: forward && backward,
            witness,
            checks,
        })
    }

    pub fn passed(&self) -> bool {
        self.equal && self.checks.passed()
    }

    pub fn into_report(self) -> Report {
        let mut out = Report::new(self.check_name.clone(), self.n, self.r);
        out.expect(
            format!("{} dims", self.check_name),
            self.left_dim,
            self.right_dim,
        );
        if let Some(w) = &self.witness {
            out.with_detail(format!("witness {w:?}"));
        }
        out.absorb("", self.checks);
        out
    }
}

fn tensor_size(m: usize, r: usize) -> usize {
    m.pow(r as u32)
}

fn orbit_matrices(orbits: &[crate::schur::OrbitPair]) -> Vec<MatrixQ> {
    orbits
        .iter()
        .map(|o| xi_to_matrix(&XiElement::basis(o)))
        .collect()
}

fn simple_transpositions(m: usize, r: usize) -> Vec<MatrixQ> {
    (1..r)
        .map(|i| psi_of_permutation(&Perm::simple(r, i), m))
        .collect()
}

/// `Σ_{λ ⊢ r, ℓ(λ) ≤ m} (dim S^λ)²`, the dimension of `ℂΨ(𝔖_r)` on
/// `(Q^m)^{⊗r}`.
pub fn psi_span_dim_formula(m: usize, r: usize) -> u64 {
    partitions_of(r, m)
        .iter()
        .map(|l| dim_specht(l).pow(2))
        .sum()
}

/// `commutant(S(m,r)) = ℂΨ(𝔖_r)` and `commutant(Ψ(𝔖_r)) = S(m,r)`.
pub fn classical_sw_check(m: usize, r: usize) -> Result<DualityReport> {
    let size = tensor_size(m, r);
    let schur = orbit_matrices(&all_orbits(m, r));
    let schur_span = span_in(size, &schur)?;
    let psi = span_in(
        size,
        &Perm::all(r)
            .iter()
            .map(|s| psi_of_permutation(s, m))
            .collect::<Vec<_>>(),
    )?;
    let n = m.saturating_sub(1);
    let mut out = DualityReport::new(
        n,
        r,
        "classical commutant",
        size,
        &commutant(size, &schur)?,
        &psi,
    )?;
    out.checks.expect_with_oracle(
        "commutant dim",
        out.left_dim,
        psi.dim(),
        psi_span_dim_formula(m, r) as usize,
    );
    let reverse = if r > 1 {
        commutant(size, &simple_transpositions(m, r))?
    } else {
        Subspace::full(size * size)
    };
    out.checks
        .assert("commutant of Psi equals S(m,r)", reverse == schur_span);
    out.checks
        .expect("S(m,r) dim", schur_span.dim(), schur_dim(m, r) as usize);
    Ok(out)
}

/// `commutant(𝒮ℒ(n,r)) = D(n,r)` and `commutant(D(n,r)) = 𝒮ℒ(n,r)`.
pub fn levi_duality_check(n: usize, r: usize, seed: u64) -> Result<DualityReport> {
    let d = d_algebra(n, r)?;
    levi_duality_with(&d, seed)
}

pub fn levi_duality_with(d: &DAlgebra, seed: u64) -> Result<DualityReport> {
    let (n, r) = (d.n, d.r);
    let size = d.size();
    let levi = orbit_matrices(&levi_basis(n, r));
    let levi_span = span_in(size, &levi)?;
    let mut out = DualityReport::new(
        n,
        r,
        "levi commutant",
        size,
        &commutant(size, &levi)?,
        d.handle.span(),
    )?;
    let reverse = commutant(size, d.handle.basis())?;
    out.checks
        .assert("commutant of D equals Levi algebra", reverse == levi_span);
    let image = group_image_span(GroupSpec::Levi { n }, r, seed)?;
    out.checks.assert(
        "Levi group image equals Levi orbit span",
        *image.handle.span() == levi_span,
    );
    out.checks
        .expect("Levi dim", levi_span.dim(), binomial(n * n + r, r) as usize);
    let formula: u128 = (0..=r).map(|l| d_piece_dim_formula(n, r, l)).sum();
    out.checks.expect("D dim", d.dim(), formula as usize);
    Ok(out)
}

/// The `D^V` dimension stated for small cases, where one is stated.
pub fn published_dv_dim(n: usize, r: usize) -> Option<usize> {
    match (n, r) {
        (_, 1) => Some(1),
        (n, 2) if n >= 2 => Some(2),
        (1, 2) => Some(3),
        _ => None,
    }
}

/// `commutant(𝒫(n,r)) = D(n,r)^V`, plus the sandwich
/// `ℂΨ(𝔖_r) ⊆ D^V ⊆ ℂΨ(𝔖_r) + D_ann`.
pub fn parabolic_duality_check(
    p: &ParabolicAlgebra,
    d: &DAlgebra,
    seed: u64,
) -> Result<DualityReport> {
    let (n, r) = (p.n, p.r);
    let size = d.size();
    let dv = d_v_invariants_in(d, seed)?;
    let comm = p.handle.commutant()?;
    let mut out = DualityReport::new(n, r, "parabolic commutant", size, &comm, &dv)?;
    let psi = psi_span(n, r);
    let ann = d_ann_in(d)?;
    out.checks
        .assert("sandwich: Psi in D^V", dv.contains(&psi)?);
    out.checks.assert(
        "sandwich: D^V in Psi + D_ann",
        psi.sum(&ann)?.contains(&dv)?,
    );
    out.checks.record("D_ann dim", ann.dim());
    if let Some(published) = published_dv_dim(n, r) {
        out.checks
            .compare_published("D^V dim vs published", dv.dim(), published);
    } else {
        out.checks.record("D^V dim", dv.dim());
    }
    Ok(out)
}

fn inner_indices(n: usize, r: usize) -> Vec<usize> {
    all_tensor_entries(n + 1, r)
        .into_iter()
        .filter(|i| i.iter().all(|&v| v as usize <= n))
        .map(|i| tensor_index(n + 1, &i))
        .collect()
}

/// Every element of `commutant(ℰ(n,r))` preserves `V^{⊗r}`, and restriction
/// maps the commutant onto `ℂΨ(𝔖_r)|_{V^{⊗r}}`.
pub fn restriction_stability_check(n: usize, r: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("restriction stability", n, r);
    let size = tensor_size(n + 1, r);
    let enhanced = group_image_span(GroupSpec::Enhanced { n }, r, seed)?;
    let comm = enhanced.handle.commutant()?;
    report.record("commutant dim", comm.dim());
    let inner = inner_indices(n, r);
    let is_inner: Vec<bool> = {
        let mut v = vec![false; size];
        for &k in &inner {
            v[k] = true;
        }
        v
    };
    let small = tensor_size(n, r);
    let mut leaks = 0usize;
    let mut restricted = Vec::with_capacity(comm.dim());
    for b in comm.basis() {
        let x = MatrixQ::unflatten(size, size, b);
        if x.entries().any(|(i, j, _)| is_inner[j] && !is_inner[i]) {
            leaks += 1;
        }
        let entries = inner.iter().enumerate().flat_map(|(a, &i)| {
            let x = &x;
            inner
                .iter()
                .enumerate()
                .map(move |(c, &j)| (a, c, x.get(i, j)))
        });
        restricted.push(MatrixQ::from_entries(small, small, entries));
    }
    report.expect("elements leaking out of V^r", leaks, 0usize);
    let image = span_in(small, &restricted)?;
    let psi_inner = span_in(
        small,
        &Perm::all(r)
            .iter()
            .map(|s| psi_of_permutation(s, n))
            .collect::<Vec<_>>(),
    )?;
    report.assert("restriction image equals Psi on V^r", image == psi_inner);
    report.expect_with_oracle(
        "restriction image dim",
        image.dim(),
        psi_inner.dim(),
        psi_span_dim_formula(n, r) as usize,
    );
    report.assert("Psi inside the commutant", comm.contains(&psi_span(n, r))?);
    Ok(report)
}

/// `C_σ = Σ_i η_{σ.i} ⊗ η*_i` as a vector of `V̄^{⊗r} ⊗ (V̄*)^{⊗r}`.
pub fn mixed_tensor(sigma: &Perm, n: usize) -> SparseVec {
    let m = n + 1;
    let r = sigma.degree();
    let size = tensor_size(m, r);
    SparseVec::from_entries(all_tensor_entries(m, r).into_iter().map(|i| {
        let image = crate::schur::permute_entries(&i, sigma);
        (
            tensor_index(m, &image) * size + tensor_index(m, &i),
            Rational::one(),
        )
    }))
}

/// `v ⊗ f ↦ (x ↦ f(x)·v)`.
pub fn mixed_to_endomorphism(t: &SparseVec, size: usize) -> MatrixQ {
    MatrixQ::unflatten(size, size, t)
}

/// Conjugation generators of the parabolic group on `End(V̄^{⊗r})`:
/// unipotents at `a = 1..r+1`, sampled Levi elements, `G_m` at `1..r+2`.
fn parabolic_generators(n: usize, r: usize, seed: u64) -> Result<Vec<MatrixQ>> {
    let mut gens = Vec::new();
    for k in 1..=n {
        for a in 1..=(r as i64 + 1) {
            gens.push(xi_to_matrix(&phi_of_group_element(
                &unipotent_basis(n, k, a),
                r,
            )));
        }
    }
    let levi = group_image_span(GroupSpec::Levi { n }, r, seed)?;
    gens.extend(
        levi.generators
            .iter()
            .map(|g| xi_to_matrix(&phi_of_group_element(g, r))),
    );
    for c in 1..=(r as i64 + 2) {
        let g = diagonal(&[vec![1; n], vec![c]].concat());
        gens.push(xi_to_matrix(&phi_of_group_element(&g, r)));
    }
    Ok(gens)
}

/// `T(C_σ) = Ψ(σ)`; the parabolic-fixed part of `End(V̄^{⊗r})` against
/// `span{C_σ}`, asserted equal exactly when `D^V = ℂΨ(𝔖_r)`.
pub fn mixed_invariants_check(p: &ParabolicAlgebra, dv_is_psi: bool, seed: u64) -> Result<Report> {
    let (n, r) = (p.n, p.r);
    let mut report = Report::new("mixed invariants", n, r);
    let size = tensor_size(n + 1, r);
    let mut mismatched = 0usize;
    let mut cs = Vec::new();
    for sigma in Perm::all(r) {
        let c = mixed_tensor(&sigma, n);
        if mixed_to_endomorphism(&c, size) != psi_of_permutation(&sigma, n + 1) {
            mismatched += 1;
        }
        cs.push(c);
    }
    report.expect("T(C_sigma) != Psi(sigma)", mismatched, 0usize);
    let c_span = Subspace::from_vectors(size * size, cs.iter());
    let fixed = commutant(size, &parabolic_generators(n, r, seed)?)?;
    report.assert(
        "fixed space equals commutant of the algebra",
        fixed == p.handle.commutant()?,
    );
    report.record_against("invariant dim", fixed.dim(), c_span.dim());
    if dv_is_psi {
        report.assert("invariants spanned by C_sigma", fixed == c_span);
        if n >= r {
            report.compare_published("invariant dim vs r!", fixed.dim(), factorial(r) as usize);
        }
    } else {
        report.record("invariants spanned by C_sigma", fixed == c_span);
    }
    Ok(report)
}

/// Records whether `D^V = ℂΨ(𝔖_r)`; nothing is asserted.
pub fn conjecture_probe(d: &DAlgebra, seed: u64) -> Result<Report> {
    let mut report = Report::new("invariants probe", d.n, d.r);
    let dv = d_v_invariants_in(d, seed)?;
    let psi = psi_span(d.n, d.r);
    report.record("D^V dim", dv.dim());
    report.record("Psi span dim", psi.dim());
    report.record("D^V equals Psi span", dv == psi);
    Ok(report)
}

/// `𝒮ℒ(n,r) ⊆ 𝒫(n,r) ⊆ S(n+1,r)` and `ℰ(n,r) ⊆ 𝒫(n,r)`, with commutants
/// ordered the other way.
pub fn monotonicity_chain(p: &ParabolicAlgebra, seed: u64) -> Result<Report> {
    let (n, r) = (p.n, p.r);
    let mut report = Report::new("monotonicity", n, r);
    let size = tensor_size(n + 1, r);
    let levi = orbit_matrices(&levi_basis(n, r));
    let levi_span = span_in(size, &levi)?;
    let full = orbit_matrices(&all_orbits(n + 1, r));
    let full_span = span_in(size, &full)?;
    let enhanced = group_image_span(GroupSpec::Enhanced { n }, r, seed)?;
    let par = p.handle.span();
    report.assert("Levi in parabolic", par.contains(&levi_span)?);
    report.assert(
        "enhanced in parabolic",
        par.contains(enhanced.handle.span())?,
    );
    report.assert("parabolic in S(n+1,r)", full_span.contains(par)?);

    let c_levi = commutant(size, &levi)?;
    let c_par = p.handle.commutant()?;
    let c_full = commutant(size, &full)?;
    let c_enh = enhanced.handle.commutant()?;
    report.assert("commutant: parabolic in Levi", c_levi.contains(&c_par)?);
    report.assert("commutant: parabolic in enhanced", c_enh.contains(&c_par)?);
    report.assert("commutant: S(n+1,r) in parabolic", c_par.contains(&c_full)?);
    report.assert(
        "commutant dims ordered",
        c_full.dim() <= c_par.dim() && c_par.dim() <= c_levi.dim(),
    );
    report.record(
        "commutant dims",
        vec![c_full.dim(), c_par.dim(), c_enh.dim(), c_levi.dim()],
    );
    Ok(report)
}
