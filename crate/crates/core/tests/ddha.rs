use pschur::combinatorics::{dim_specht, partitions_of, Partition};
use pschur::ddha::{
    d_algebra, d_ann_in, d_dimension_check, d_v_invariants_in, ddha_relation_check, psi_l,
    psi_span, specht_realization, structure_constants_check, symmetric_invariants, x_sigma_i,
    PositionSet,
};
use pschur::linalg::{span_in, MatrixQ, SparseVec};
use pschur::schur::{
    embed_block, phi_of_group_element, psi_of_permutation, tensor_index, xi_to_matrix,
};
use pschur::{Perm, Rational};

#[test]
fn relations_hold() {
    for (n, r) in [(1, 2), (2, 2), (2, 3)] {
        let rep = ddha_relation_check(n, r);
        assert!(rep.passed(), "({n},{r}) {:?}", rep.failures());
    }
}

#[test]
fn piece_dimensions() {
    for (n, r, total) in [(1, 2, 6), (2, 2, 7), (2, 3, 33), (1, 3, 20)] {
        let rep = d_dimension_check(n, r).unwrap();
        assert!(rep.passed(), "({n},{r}) {:?}", rep.failures());
        assert_eq!(
            rep.get("dim D")
                .unwrap()
                .computed
                .as_ref()
                .and_then(|v| v.as_int()),
            Some(total)
        );
    }
}

#[test]
fn structure_constants() {
    for (n, r, l) in [(2, 2, 2), (2, 3, 2), (3, 3, 3), (2, 3, 1)] {
        let rep = structure_constants_check(n, r, l).unwrap();
        assert!(rep.passed(), "({n},{r},{l}) {:?}", rep.failures());
    }
    assert!(structure_constants_check(1, 2, 2).is_err());
}

fn sample_levi(n: usize, seed: i64) -> MatrixQ {
    // A fixed invertible lower-triangular-plus-shift matrix.
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push((i, i, Rational::from_int(seed + i as i64 + 1)));
        if i + 1 < n {
            entries.push((i, i + 1, Rational::from_int(seed - 2)));
        }
    }
    MatrixQ::from_entries(n, n, entries)
}

#[test]
fn levi_equivariance() {
    for (n, r) in [(1, 2), (2, 2), (2, 3)] {
        let g = embed_block(
            &sample_levi(n, 3),
            &vec![Rational::zero(); n],
            &Rational::one(),
        )
        .unwrap();
        let phi = xi_to_matrix(&phi_of_group_element(&g, r));
        for l in 0..=r {
            for set in PositionSet::all(r, l) {
                for sigma in Perm::all(l) {
                    let x = x_sigma_i(&sigma, &set, n, r).unwrap().matrix;
                    assert!(phi.commutator(&x).is_zero());
                }
            }
            for tau in Perm::all(r) {
                assert!(phi.commutator(&psi_l(&tau, l, n).matrix).is_zero());
            }
        }
    }
}

#[test]
fn conjugation_moves_position_sets() {
    let (n, r) = (2, 3);
    let size = 27;
    for l in 1..=r {
        for set in PositionSet::all(r, l) {
            for tau in Perm::all(r) {
                let p = psi_of_permutation(&tau, n + 1);
                let pinv = psi_of_permutation(&tau.inverse(), n + 1);
                let target = set.image(&tau);
                let family: Vec<MatrixQ> = Perm::all(l)
                    .iter()
                    .map(|m| x_sigma_i(m, &target, n, r).unwrap().matrix)
                    .collect();
                let family = span_in(size, &family).unwrap();
                for sigma in Perm::all(l) {
                    let x = x_sigma_i(&sigma, &set, n, r).unwrap().matrix;
                    assert!(family.contains_vec(&p.mul(&x).mul(&pinv).flatten()));
                }
            }
        }
    }
}

#[test]
fn specht_dimensions_and_stability() {
    for (n, r) in [(2, 3), (3, 3)] {
        for l in 0..=r {
            for lam in partitions_of(l, n) {
                let s = specht_realization(&lam, n, r).unwrap();
                assert_eq!(s.dim() as u64, dim_specht(&lam), "{lam} at ({n},{r})");
                for sigma in Perm::all(l) {
                    let mut images: Vec<usize> = sigma.images().to_vec();
                    images.extend(l..r);
                    let p = psi_of_permutation(&Perm::from_images(images).unwrap(), n + 1);
                    for v in s.basis() {
                        assert!(s.contains_vec(&p.mul_vec(v)));
                    }
                }
            }
        }
    }
    let too_long = Partition::new(vec![1, 1, 1]).unwrap();
    assert!(specht_realization(&too_long, 2, 3).is_err());
}

#[test]
fn symmetric_invariant_dimensions() {
    for (n, r, d) in [(1, 2, 3), (2, 2, 6), (1, 3, 4), (2, 3, 10), (3, 1, 4)] {
        assert_eq!(symmetric_invariants(n, r).unwrap().dim(), d);
    }
}

#[test]
fn invariants_and_sandwich() {
    for (n, r) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        let d = d_algebra(n, r).unwrap();
        let dv = d_v_invariants_in(&d, 7).unwrap();
        let ann = d_ann_in(&d).unwrap();
        let ps = psi_span(n, r);
        assert!(dv.contains(&ps).unwrap(), "({n},{r})");
        assert!(ps.sum(&ann).unwrap().contains(&dv).unwrap(), "({n},{r})");
        // Σ c_σ Ψ(σ) kills symmetric tensors exactly when Σ c_σ = 0.
        assert_eq!(ps.intersect(&ann).unwrap().dim(), ps.dim() - 1);
        let size = d.size();
        assert!(!ann.contains_vec(&MatrixQ::identity(size).flatten()));
    }
    for n in 1..=3 {
        let d = d_algebra(n, 1).unwrap();
        assert_eq!(d_v_invariants_in(&d, 3).unwrap().dim(), 1);
        assert_eq!(d_ann_in(&d).unwrap().dim(), 0);
    }
}

#[test]
fn annihilator_kills_symmetric_tensors() {
    let d = d_algebra(1, 2).unwrap();
    let ann = d_ann_in(&d).unwrap();
    assert!(ann.dim() > 0);
    let sym = symmetric_invariants(1, 2).unwrap();
    for a in ann.basis() {
        let m = MatrixQ::unflatten(4, 4, a);
        for v in sym.basis() {
            assert!(m.mul_vec(v).is_zero());
        }
    }
    // η_12 − η_21 is antisymmetric, so the rank-1 swap acts by −1 there.
    let anti =
        SparseVec::unit(tensor_index(2, &[1, 2])).sub(&SparseVec::unit(tensor_index(2, &[2, 1])));
    let swap = psi_l(&Perm::simple(2, 1), 1, 1).matrix;
    assert_eq!(swap.mul_vec(&anti), anti.scale(&Rational::from_int(-1)));
}
