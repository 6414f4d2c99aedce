use proptest::prelude::*;
use pschur::combinatorics::binomial;
use pschur::linalg::{span, span_in};
use pschur::schur::{
    all_orbits, group_image_span, levi_basis, levi_dim_formula, omega_dim_formula,
    parabolic_candidate_e, phi_of_group_element, psi_of_permutation, schur_dim, xi_multiply,
    xi_to_matrix, GroupSpec, XiElement,
};
use pschur::{MatrixQ, Perm, Rational};

#[test]
fn full_schur_dimensions() {
    for (m, r, d) in [(2, 2, 10), (3, 2, 45), (2, 3, 20)] {
        let mats: Vec<MatrixQ> = all_orbits(m, r)
            .iter()
            .map(|o| xi_to_matrix(&XiElement::basis(o)))
            .collect();
        let s = span(&mats).unwrap();
        assert_eq!(s.dim(), d, "({m},{r})");
        assert_eq!(schur_dim(m, r), d as u128);
        assert_eq!(binomial(m * m + r - 1, r), d as u128);
    }
}

#[test]
fn full_group_image_is_the_schur_algebra() {
    for (m, r) in [(2, 2), (2, 3), (3, 2)] {
        let image = group_image_span(GroupSpec::FullGl { m }, r, 3).unwrap();
        assert_eq!(image.handle.dim() as u128, schur_dim(m, r));
    }
}

#[test]
fn unipotent_image_dimensions() {
    for (n, r, d) in [(1, 2, 3), (2, 2, 6), (1, 3, 4), (2, 3, 10)] {
        let image = group_image_span(GroupSpec::UnipotentV { n }, r, 9).unwrap();
        assert_eq!(image.handle.dim(), d, "({n},{r})");
        assert_eq!(omega_dim_formula(n, r), d as u128);
    }
}

#[test]
fn levi_and_candidate_dimensions() {
    for (n, r) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        assert_eq!(levi_basis(n, r).len() as u128, levi_dim_formula(n, r));
        let image = group_image_span(GroupSpec::Levi { n }, r, 4).unwrap();
        assert_eq!(image.handle.dim() as u128, levi_dim_formula(n, r));
        let e = parabolic_candidate_e(n, r);
        let parabolic = group_image_span(GroupSpec::Parabolic { n }, r, 4).unwrap();
        let e_span = span_in(
            (n + 1).pow(r as u32),
            &e.iter()
                .map(|o| xi_to_matrix(&XiElement::basis(o)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(&e_span, parabolic.handle.span(), "({n},{r})");
    }
    assert_eq!(levi_dim_formula(2, 2), 15);
    assert_eq!(levi_dim_formula(2, 3), 35);
}

#[test]
fn psi_is_a_representation() {
    for (m, r) in [(2, 3), (3, 3), (2, 4)] {
        let perms = Perm::all(r);
        for s in &perms {
            for t in &perms {
                let lhs = psi_of_permutation(s, m).mul(&psi_of_permutation(t, m));
                assert_eq!(lhs, psi_of_permutation(&s.compose(t), m));
            }
        }
    }
}

fn small_matrix(m: usize) -> impl Strategy<Value = MatrixQ> {
    proptest::collection::vec(-4i64..=4, m * m).prop_map(move |v| {
        MatrixQ::from_entries(
            m,
            m,
            v.into_iter()
                .enumerate()
                .map(|(k, x)| (k / m, k % m, Rational::from_int(x))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_is_multiplicative(g in small_matrix(3), h in small_matrix(3), r in 1usize..=3) {
        let lhs = xi_multiply(&phi_of_group_element(&g, r), &phi_of_group_element(&h, r)).unwrap();
        prop_assert_eq!(lhs, phi_of_group_element(&g.mul(&h), r));
    }

    #[test]
    fn phi_matrix_is_tensor_power(g in small_matrix(2), r in 1usize..=3) {
        let mut power = g.clone();
        for _ in 1..r {
            power = power.kron(&g);
        }
        prop_assert_eq!(xi_to_matrix(&phi_of_group_element(&g, r)), power);
    }
}
