use std::collections::{BTreeMap, BTreeSet};

use super::basis::{
    all_tensor_entries, matrix_to_xi, orbit_of, orbits_over, rank_of, tensor_index, OrbitPair,
    XiElement,
};
use super::group::{diagonal, phi_of_group_element};
use crate::combinatorics::{binomial, compositions_bounded, compositions_of, Composition};
use crate::error::{Error, Result};
use crate::linalg::MatrixQ;
use crate::rational::Rational;

/// Pair types `(a, b)` with `a, b ≤ n`, plus `(n+1, n+1)`.
pub fn levi_types(n: usize) -> Vec<(u8, u8)> {
    let n = n as u8;
    let mut out: Vec<(u8, u8)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    out.push((n + 1, n + 1));
    out
}

/// Levi types plus the column `(a, n+1)`, `a ≤ n`.
pub fn parabolic_types(n: usize) -> Vec<(u8, u8)> {
    let mut out = levi_types(n);
    out.extend((1..=n as u8).map(|a| (a, n as u8 + 1)));
    out.sort_unstable();
    out
}

/// Orbits whose pairs avoid mixing the inner block with `n+1`.
pub fn levi_basis(n: usize, r: usize) -> Vec<OrbitPair> {
    orbits_over(n + 1, &levi_types(n), r)
}

/// [`levi_basis`] grouped by the rank of the row index.
pub fn levi_grading(n: usize, r: usize) -> BTreeMap<usize, Vec<OrbitPair>> {
    let mut out: BTreeMap<usize, Vec<OrbitPair>> = BTreeMap::new();
    for o in levi_basis(n, r) {
        out.entry(o.rank(n)).or_default().push(o);
    }
    out
}

/// `C(n² + r, r)`.
pub fn levi_dim_formula(n: usize, r: usize) -> u128 {
    binomial(n * n + r, r)
}

/// `Σ_{k=0}^{r} C(n+k−1, k)`.
pub fn omega_dim_formula(n: usize, r: usize) -> u128 {
    (0..=r).map(|k| binomial(n + k - 1, k)).sum()
}

/// `Σ_{k=0}^{r} C(n+k−1, k)·C(n+k, k)`, the published dimension of the
/// parabolic Schur algebra.
pub fn parabolic_dim_formula(n: usize, r: usize) -> u128 {
    (0..=r)
        .map(|k| binomial(n + k - 1, k) * binomial(n + k, k))
        .sum()
}

/// `π̃_s = (1^{s_1} … n^{s_n} (n+1)^{r−|s|})`.
pub fn pi_tilde(n: usize, r: usize, s: &Composition) -> Vec<u8> {
    let mut out = Vec::with_capacity(r);
    for (k, &c) in s.entries().iter().enumerate() {
        out.extend(std::iter::repeat_n(k as u8 + 1, c));
    }
    out.resize(r, n as u8 + 1);
    out
}

/// Orbits of `(π̃_s, (j_1 … j_{|s|} (n+1)^{r−|s|}))` over `s ∈ ℕ^n_r` and
/// `j ∈ {1..n+1}^{|s|}`, duplicates removed.
pub fn parabolic_candidate_e(n: usize, r: usize) -> Vec<OrbitPair> {
    let mut out = BTreeSet::new();
    for s in compositions_bounded(n, r) {
        let first = pi_tilde(n, r, &s);
        let t = s.total();
        for j in all_tensor_entries(n + 1, t) {
            let mut second = j;
            second.resize(r, n as u8 + 1);
            out.insert(orbit_of(n + 1, &first, &second));
        }
    }
    out.into_iter().collect()
}

/// `θ_{s,t}`: `s_k` copies of `(k, n+1)`, `t_k` copies of `(k, k)` and
/// `t_{n+1}` copies of `(n+1, n+1)`.
pub fn theta_orbit(n: usize, s: &Composition, t: &Composition) -> OrbitPair {
    let top = n as u8 + 1;
    let mut pairs = Vec::new();
    for (k, &c) in s.entries().iter().enumerate() {
        pairs.extend(std::iter::repeat_n((k as u8 + 1, top), c));
    }
    for (k, &c) in t.entries().iter().enumerate() {
        pairs.extend(std::iter::repeat_n((k as u8 + 1, k as u8 + 1), c));
    }
    OrbitPair::from_pairs(n + 1, pairs)
}

#[derive(Clone, Debug)]
pub struct ThetaTerm {
    pub s: Composition,
    pub t: Composition,
    pub element: XiElement,
}

#[derive(Clone, Debug)]
pub struct ThetaElements {
    pub theta: Vec<ThetaTerm>,
    /// `(s, Θ_s)` for `s ∈ ℕ^n_r`.
    pub big_theta: Vec<(Composition, XiElement)>,
    /// `ε_0, …, ε_r`.
    pub epsilon: Vec<XiElement>,
}

/// Projection onto the span of `η_i` with exactly `l` entries `≤ n`.
pub fn epsilon_matrix(n: usize, r: usize, l: usize) -> MatrixQ {
    let m = n + 1;
    let size = m.pow(r as u32);
    MatrixQ::from_entries(
        size,
        size,
        all_tensor_entries(m, r)
            .into_iter()
            .filter(|i| rank_of(i, n) == l)
            .map(|i| {
                let k = tensor_index(m, &i);
                (k, k, Rational::one())
            }),
    )
}

/// The θ, Θ and ε families. `ε_l` is read off its projection matrix, and
/// is checked against the `G_m` image: `Φ(diag(1,…,1,c)) = Σ_l c^{r−l} ε_l`.
pub fn theta_elements(n: usize, r: usize) -> Result<ThetaElements> {
    let m = n + 1;
    let mut theta = Vec::new();
    let mut big_theta = Vec::new();
    for s in compositions_bounded(n, r) {
        let mut sum = XiElement::zero(m, r);
        for t in compositions_of(r - s.total(), n + 1) {
            let element = XiElement::basis(&theta_orbit(n, &s, &t));
            sum = sum.add(&element);
            theta.push(ThetaTerm {
                s: s.clone(),
                t,
                element,
            });
        }
        big_theta.push((s, sum));
    }
    let epsilon = (0..=r)
        .map(|l| matrix_to_xi(&epsilon_matrix(n, r, l), m, r))
        .collect::<Result<Vec<_>>>()?;

    let c = Rational::from_int(2);
    let from_gm = phi_of_group_element(&diagonal(&[vec![1; n], vec![2]].concat()), r);
    let combined = epsilon
        .iter()
        .enumerate()
        .fold(XiElement::zero(m, r), |acc, (l, e)| {
            acc.add(&e.scale(&c.pow((r - l) as u32)))
        });
    if combined != from_gm {
        return Err(Error::ConstructionDisagreement(
            "rank projections disagree with the G_m image".into(),
        ));
    }
    Ok(ThetaElements {
        theta,
        big_theta,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::span;
    use crate::schur::basis::{xi_multiply, xi_to_matrix};
    use crate::schur::group::{phi_of_group_element, unipotent};

    #[test]
    fn levi_basis_examples() {
        let b = levi_basis(1, 2);
        let listed: Vec<Vec<(u8, u8)>> = b.iter().map(|o| o.pairs().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![(1, 1), (1, 1)],
                vec![(1, 1), (2, 2)],
                vec![(2, 2), (2, 2)]
            ]
        );
        assert_eq!(levi_basis(2, 2).len(), 15);
        assert_eq!(levi_basis(2, 3).len() as u128, levi_dim_formula(2, 3));
    }

    #[test]
    fn candidate_e_examples() {
        assert_eq!(parabolic_candidate_e(1, 2).len(), 6);
        assert_eq!(parabolic_candidate_e(1, 1).len(), 3);
        assert_eq!(parabolic_candidate_e(2, 2).len(), 28);
        assert_eq!(parabolic_dim_formula(2, 2), 25);
        assert_eq!(parabolic_dim_formula(1, 3), 10);
    }

    #[test]
    fn theta_for_one_variable() {
        // θ_{e^v} = a·ξ_{(1),(2)} + ξ_{(1),(1)} + ξ_{(2),(2)} for n = r = 1.
        let th = theta_elements(1, 1).unwrap();
        let a = Rational::from_int(3);
        let total = th
            .big_theta
            .iter()
            .fold(XiElement::zero(2, 1), |acc, (s, x)| {
                acc.add(&x.scale(&a.pow(s.total() as u32)))
            });
        assert_eq!(xi_to_matrix(&total), unipotent(std::slice::from_ref(&a)));
        assert_eq!(total, phi_of_group_element(&unipotent(&[a]), 1));
    }

    #[test]
    fn theta_sum_is_unipotent_image() {
        // Φ(e^v) = Σ_s v^s Θ_s for v = (2, −1).
        let th = theta_elements(2, 2).unwrap();
        let v = [Rational::from_int(2), Rational::from_int(-1)];
        let total = th
            .big_theta
            .iter()
            .fold(XiElement::zero(3, 2), |acc, (s, x)| {
                let c = s
                    .entries()
                    .iter()
                    .zip(&v)
                    .fold(Rational::one(), |c, (&e, vk)| &c * &vk.pow(e as u32));
                acc.add(&x.scale(&c))
            });
        assert_eq!(total, phi_of_group_element(&unipotent(&v), 2));
    }

    #[test]
    fn omega_dimensions() {
        for (n, r, d) in [(1, 2, 3), (2, 2, 6), (1, 3, 4)] {
            let th = theta_elements(n, r).unwrap();
            let mats: Vec<MatrixQ> = th.big_theta.iter().map(|(_, x)| xi_to_matrix(x)).collect();
            assert_eq!(span(&mats).unwrap().dim(), d);
            assert_eq!(omega_dim_formula(n, r), d as u128);
        }
    }

    #[test]
    fn epsilon_is_orthogonal_decomposition() {
        let th = theta_elements(2, 2).unwrap();
        let mut sum = XiElement::zero(3, 2);
        for (l, el) in th.epsilon.iter().enumerate() {
            sum = sum.add(el);
            for (q, eq) in th.epsilon.iter().enumerate() {
                let p = xi_multiply(el, eq).unwrap();
                if l == q {
                    assert_eq!(&p, el);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        assert_eq!(xi_to_matrix(&sum), MatrixQ::identity(9));
    }
}
