use std::collections::BTreeMap;

use proptest::prelude::*;
use pschur::combinatorics::{
    binomial, branching_duality_check, dim_specht, dim_weyl, interlaces, partitions_of,
    tensor_bookkeeping, Partition,
};

/// Counts standard tableaux by removing corners, memoized on the shape.
fn syt_by_corners(shape: Vec<usize>, memo: &mut BTreeMap<Vec<usize>, u64>) -> u64 {
    if shape.iter().all(|&p| p == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(&shape) {
        return v;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let next = shape.get(i + 1).copied().unwrap_or(0);
        if shape[i] > next {
            let mut smaller = shape.clone();
            smaller[i] -= 1;
            total += syt_by_corners(smaller, memo);
        }
    }
    memo.insert(shape, total);
    total
}

/// `Π_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
fn weyl_product(lambda: &Partition, n: usize) -> u64 {
    let Ok(padded) = lambda.padded(n) else {
        return 0;
    };
    let l = padded.parts();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            num *= (l[i] - l[j] + j - i) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64
}

#[test]
fn hook_length_matches_corner_recursion() {
    let mut memo = BTreeMap::new();
    for size in 0..=9 {
        for lam in partitions_of(size, size.max(1)) {
            assert_eq!(
                dim_specht(&lam),
                syt_by_corners(lam.parts().to_vec(), &mut memo),
                "{lam}"
            );
        }
    }
}

#[test]
fn tableau_count_matches_weyl_product() {
    for n in 1..=4 {
        for size in 0..=6 {
            for lam in partitions_of(size, n) {
                assert_eq!(dim_weyl(&lam, n), weyl_product(&lam, n), "{lam} n={n}");
            }
        }
    }
}

#[test]
fn schur_weyl_sum_is_tensor_dimension() {
    for n in 1..=4 {
        for l in 0..=6 {
            let total: u64 = partitions_of(l, n)
                .iter()
                .map(|p| dim_weyl(p, n) * dim_specht(p))
                .sum();
            assert_eq!(total, (n as u64).pow(l as u32), "n={n} l={l}");
        }
    }
}

#[test]
fn branching_duality_grid() {
    for n in 1..=3 {
        for r in 1..=6 {
            let rep = branching_duality_check(n, r);
            assert!(rep.passed(), "({n},{r}) {:?}", rep.failures());
            let expected: usize = (0..=r).map(|l| partitions_of(l, n).len()).sum();
            assert_eq!(rep.checks.len(), expected);
        }
    }
}

#[test]
fn branching_first_example() {
    let rep = branching_duality_check(1, 2);
    assert_eq!(
        rep.get("l=1 lambda=(1)").unwrap().computed,
        Some(2usize.into())
    );
}

#[test]
fn bookkeeping_grid() {
    for n in 1..=3 {
        for r in 1..=5 {
            assert!(tensor_bookkeeping(n, r).passed(), "({n},{r})");
        }
    }
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0usize..6, 0..5).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn conjugate_is_an_involution(p in partition_strategy()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.trimmed());
    }

    #[test]
    fn specht_dim_is_conjugation_invariant(p in partition_strategy()) {
        prop_assert_eq!(dim_specht(&p), dim_specht(&p.conjugate()));
    }

    #[test]
    fn dropping_the_last_part_interlaces(mu in partition_strategy(), extra in 1usize..3) {
        let mu = mu.trimmed();
        let m = mu.len() + extra;
        let lambda = Partition::from_unsorted(mu.parts()[..mu.len().saturating_sub(1)].to_vec());
        prop_assert!(interlaces(&lambda, &mu, m).unwrap());
    }

    #[test]
    fn pascal_rule(n in 1usize..30, k in 1usize..30) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}
