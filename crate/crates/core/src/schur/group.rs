use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{orbits_over, xi_to_matrix, OrbitPair, XiElement};
use crate::error::{Error, Result};
use crate::linalg::{algebra_closure, span_in, AlgebraHandle, MatrixQ, ModpEchelon, SparseVec};
use crate::rational::Rational;

/// 1-based `(row, col)` matrix positions.
pub type Positions = Vec<(u8, u8)>;

/// Matrix groups inside `GL(n+1)`, written in the basis `η_1, …, η_n, η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// All of `GL(m)`.
    FullGl { m: usize },
    /// `GL_n × G_m`, block diagonal.
    Levi { n: usize },
    /// Block upper triangular `[[A, b], [0, c]]`.
    Parabolic { n: usize },
    /// `[[A, b], [0, 1]]`.
    Enhanced { n: usize },
    /// `diag(1, …, 1, c)`.
    Gm { n: usize },
    /// Diagonal matrices.
    Torus { n: usize },
    /// `[[I, v], [0, 1]]`.
    UnipotentV { n: usize },
}

impl GroupSpec {
    pub fn size(&self) -> usize {
        match *self {
            GroupSpec::FullGl { m } => m,
            GroupSpec::Levi { n }
            | GroupSpec::Parabolic { n }
            | GroupSpec::Enhanced { n }
            | GroupSpec::Gm { n }
            | GroupSpec::Torus { n }
            | GroupSpec::UnipotentV { n } => n + 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupSpec::FullGl { .. } => "full-gl",
            GroupSpec::Levi { .. } => "levi",
            GroupSpec::Parabolic { .. } => "parabolic",
            GroupSpec::Enhanced { .. } => "enhanced",
            GroupSpec::Gm { .. } => "gm",
            GroupSpec::Torus { .. } => "torus",
            GroupSpec::UnipotentV { .. } => "unipotent",
        }
    }

    /// `(allowed, units)`: matrix positions (1-based) that may be nonzero,
    /// and the subset frozen to 1.
    pub fn positions(&self) -> (Positions, Positions) {
        let m = self.size() as u8;
        let n = m - 1;
        let diag: Vec<(u8, u8)> = (1..=m).map(|k| (k, k)).collect();
        let inner: Vec<(u8, u8)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
        let column: Vec<(u8, u8)> = (1..=n).map(|a| (a, m)).collect();
        let corner = vec![(m, m)];
        match self {
            GroupSpec::FullGl { .. } => (
                (1..=m).flat_map(|a| (1..=m).map(move |b| (a, b))).collect(),
                vec![],
            ),
            GroupSpec::Levi { .. } => ([inner, corner].concat(), vec![]),
            GroupSpec::Parabolic { .. } => ([inner, column, corner].concat(), vec![]),
            GroupSpec::Enhanced { .. } => ([inner, column, corner.clone()].concat(), corner),
            GroupSpec::Gm { .. } => (diag.clone(), diag[..n as usize].to_vec()),
            GroupSpec::Torus { .. } => (diag, vec![]),
            GroupSpec::UnipotentV { .. } => ([diag.clone(), column].concat(), diag),
        }
    }

    /// Deterministic parameter grid for the one-parameter-per-entry groups
    /// (`Gm`, small tori): every entry value in `{1, …, r+2}`.
    pub fn parameter_grid(&self, r: usize) -> Option<Vec<MatrixQ>> {
        let m = self.size();
        let values: Vec<i64> = (1..=(r as i64 + 2)).collect();
        match *self {
            GroupSpec::Gm { n } => Some(
                values
                    .iter()
                    .map(|&c| diagonal(&[vec![1; n], vec![c]].concat()))
                    .collect(),
            ),
            GroupSpec::Torus { .. } if values.len().pow(m as u32) <= 4096 => {
                let mut out = Vec::new();
                let total = values.len().pow(m as u32);
                for mut k in 0..total {
                    let mut d = Vec::with_capacity(m);
                    for _ in 0..m {
                        d.push(values[k % values.len()]);
                        k /= values.len();
                    }
                    out.push(diagonal(&d));
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// A random element of the group: integer entries in `[−5, 5]` at the
    /// free positions (torus-type entries in `{1, …, r+2}`), resampled until
    /// invertible.
    pub fn sample<R: Rng>(&self, rng: &mut R, r: usize) -> MatrixQ {
        let m = self.size();
        let (allowed, units) = self.positions();
        let torus_like = matches!(self, GroupSpec::Gm { .. } | GroupSpec::Torus { .. });
        loop {
            let entries = allowed.iter().map(|&(a, b)| {
                let v = if units.contains(&(a, b)) {
                    1
                } else if torus_like {
                    rng.gen_range(1..=(r as i64 + 2))
                } else {
                    rng.gen_range(-5..=5)
                };
                (a as usize - 1, b as usize - 1, Rational::from_int(v))
            });
            let g = MatrixQ::from_entries(m, m, entries);
            if g.is_invertible() {
                return g;
            }
        }
    }
}

pub fn diagonal(values: &[i64]) -> MatrixQ {
    let n = values.len();
    MatrixQ::from_entries(
        n,
        n,
        values
            .iter()
            .enumerate()
            .map(|(k, &v)| (k, k, Rational::from_int(v))),
    )
}

/// The block matrix `[[A, b], [0, c]]` of size `n+1`.
pub fn embed_block(a: &MatrixQ, b: &[Rational], c: &Rational) -> Result<MatrixQ> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n} block and length-{n} column"),
            got: format!(
                "{}x{} block and length-{} column",
                a.rows(),
                a.cols(),
                b.len()
            ),
        });
    }
    if !a.is_invertible() {
        return Err(Error::SingularParameters("A is singular".into()));
    }
    if c.is_zero() {
        return Err(Error::SingularParameters("c = 0".into()));
    }
    let mut entries: Vec<(usize, usize, Rational)> =
        a.entries().map(|(i, j, x)| (i, j, x.clone())).collect();
    entries.extend(b.iter().enumerate().map(|(i, x)| (i, n, x.clone())));
    entries.push((n, n, c.clone()));
    Ok(MatrixQ::from_entries(n + 1, n + 1, entries))
}

/// `(g, v) ↦ [[g, v], [0, 1]]`, the enhanced group element.
pub fn embed_enhanced(g: &MatrixQ, v: &[Rational]) -> Result<MatrixQ> {
    embed_block(g, v, &Rational::one())
}

/// `e^v = [[I, v], [0, 1]]`.
pub fn unipotent(v: &[Rational]) -> MatrixQ {
    embed_enhanced(&MatrixQ::identity(v.len()), v).expect("identity block is invertible")
}

/// `e^{a·η_k}` (k is 1-based).
pub fn unipotent_basis(n: usize, k: usize, a: i64) -> MatrixQ {
    let mut v = vec![Rational::zero(); n];
    v[k - 1] = Rational::from_int(a);
    unipotent(&v)
}

/// `Φ(g) = g^{⊗r}` in the ξ-basis: the coefficient of `ξ_{p,q}` is
/// `Π_k g_{p_k q_k}`.
pub fn phi_of_group_element(g: &MatrixQ, r: usize) -> XiElement {
    let m = g.rows();
    let support: Vec<(u8, u8)> = g
        .entries()
        .map(|(i, j, _)| (i as u8 + 1, j as u8 + 1))
        .collect();
    XiElement::from_terms(
        m,
        r,
        orbits_over(m, &support, r).into_iter().map(|o| {
            let c = o.pairs().iter().fold(Rational::one(), |acc, &(p, q)| {
                &acc * &g.get(p as usize - 1, q as usize - 1)
            });
            (o, c)
        }),
    )
}

/// Number of distinct monomials `Π g_{p_k q_k}` over size-`r` multisets of
/// `allowed`, with positions in `units` contributing the constant 1.
pub fn monomial_span_dim(allowed: &[(u8, u8)], r: usize, units: &[(u8, u8)]) -> usize {
    let m = allowed
        .iter()
        .map(|&(a, b)| a.max(b) as usize)
        .max()
        .unwrap_or(1);
    let mut seen: HashSet<Vec<(u8, u8)>> = HashSet::new();
    for o in orbits_over(m, allowed, r) {
        let key: Vec<(u8, u8)> = o
            .pairs()
            .iter()
            .copied()
            .filter(|p| !units.contains(p))
            .collect();
        seen.insert(key);
    }
    seen.len()
}

/// Span of sampled group images, with the sampling diagnostics.
#[derive(Clone, Debug)]
pub struct GroupImage {
    pub spec: GroupSpec,
    pub handle: AlgebraHandle,
    pub oracle_dim: usize,
    pub samples_drawn: usize,
    /// The sampled elements whose images raised the rank.
    pub generators: Vec<MatrixQ>,
}

const BATCH: usize = 8;
const STABLE_BATCHES: usize = 3;

/// Orbits grouped by the monomial they carry once unit positions are
/// dropped; `Φ(g)` is constant on each class.
fn monomial_classes(orbits: &[OrbitPair], units: &[(u8, u8)]) -> Vec<Vec<usize>> {
    let mut classes: HashMap<Vec<(u8, u8)>, Vec<usize>> = HashMap::new();
    for (k, o) in orbits.iter().enumerate() {
        let key: Vec<(u8, u8)> = o
            .pairs()
            .iter()
            .copied()
            .filter(|p| !units.contains(p))
            .collect();
        classes.entry(key).or_default().push(k);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

/// Span of `Φ(g)` over sampled `g`, verified closed under multiplication.
///
/// Every sample is checked exactly to be constant on monomial classes, so
/// the sampled span lies in the class span, whose dimension is
/// [`monomial_span_dim`]. Sampling stops once the rank mod `p` (a lower
/// bound for the rational rank) is unchanged for three consecutive
/// batches; reaching the class count then proves the two spans equal.
pub fn group_image_span(spec: GroupSpec, r: usize, seed: u64) -> Result<GroupImage> {
    let m = spec.size();
    let (allowed, units) = spec.positions();
    let oracle_dim = monomial_span_dim(&allowed, r, &units);
    let orbits = orbits_over(m, &allowed, r);
    let slot: HashMap<&OrbitPair, usize> = orbits.iter().enumerate().map(|(k, o)| (o, k)).collect();
    let classes = monomial_classes(&orbits, &units);
    let class_of: Vec<usize> = {
        let mut v = vec![0; orbits.len()];
        for (c, members) in classes.iter().enumerate() {
            for &k in members {
                v[k] = c;
            }
        }
        v
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ech = ModpEchelon::new(classes.len());
    let mut generators = Vec::new();
    let mut drawn = 0usize;
    let mut consider = |g: MatrixQ, ech: &mut ModpEchelon| -> Result<()> {
        let x = phi_of_group_element(&g, r);
        let mut per_class: Vec<Option<Rational>> = vec![None; classes.len()];
        for (o, c) in x.terms() {
            let k = *slot.get(o).ok_or_else(|| {
                Error::NotClosed(format!("{} sample leaves its orbit types", spec.name()))
            })?;
            per_class[class_of[k]] = Some(c.clone());
        }
        let coords = SparseVec::from_entries(
            per_class
                .iter()
                .enumerate()
                .filter_map(|(c, v)| v.clone().map(|v| (c, v))),
        );
        for (c, members) in classes.iter().enumerate() {
            let want = coords.get(c);
            if members.iter().any(|&k| x.coefficient(&orbits[k]) != want) {
                return Err(Error::ConstructionDisagreement(format!(
                    "{} sample is not constant on a monomial class",
                    spec.name()
                )));
            }
        }
        if ech.insert(&coords) {
            generators.push(g);
        }
        Ok(())
    };

    if let Some(grid) = spec.parameter_grid(r) {
        drawn = grid.len();
        for g in grid {
            consider(g, &mut ech)?;
        }
    } else {
        let max_samples = 4 * oracle_dim + 64;
        let mut stable = 0;
        while stable < STABLE_BATCHES && drawn < max_samples {
            let before = ech.rank();
            for _ in 0..BATCH {
                consider(spec.sample(&mut rng, r), &mut ech)?;
            }
            drawn += BATCH;
            stable = if ech.rank() == before { stable + 1 } else { 0 };
        }
    }

    let sampled = ech.rank();
    if sampled != oracle_dim {
        return Err(Error::OracleMismatch {
            what: format!("{} image span", spec.name()),
            computed: sampled,
            oracle: oracle_dim,
        });
    }
    let size = m.pow(r as u32);
    let class_matrices: Vec<MatrixQ> = classes
        .iter()
        .map(|members| {
            xi_to_matrix(&XiElement::from_terms(
                m,
                r,
                members
                    .iter()
                    .map(|&k| (orbits[k].clone(), Rational::one())),
            ))
        })
        .collect();
    let handle = match AlgebraHandle::from_span(size, span_in(size, &class_matrices)?) {
        Ok(h) => h,
        Err(Error::NotClosed(_)) => {
            let closed = algebra_closure(size, &class_matrices)?;
            return Err(Error::OracleMismatch {
                what: format!("{} image closure", spec.name()),
                computed: closed.dim(),
                oracle: oracle_dim,
            });
        }
        Err(e) => return Err(e),
    };
    Ok(GroupImage {
        spec,
        handle,
        oracle_dim,
        samples_drawn: drawn,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::basis::xi_multiply;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn unipotent_matrix_shape() {
        let u = unipotent(&[q(2), q(3)]);
        let want = MatrixQ::from_i64(&[vec![1, 0, 2], vec![0, 1, 3], vec![0, 0, 1]]);
        assert_eq!(u, want);
        assert_eq!(
            embed_enhanced(&MatrixQ::identity(2), &[q(0), q(0)]).unwrap(),
            MatrixQ::identity(3)
        );
    }

    #[test]
    fn embedding_rejects_singular_parameters() {
        let sing = MatrixQ::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(
            embed_block(&sing, &[q(0), q(0)], &q(1)),
            Err(Error::SingularParameters(_))
        ));
        assert!(matches!(
            embed_block(&MatrixQ::identity(2), &[q(0), q(0)], &q(0)),
            Err(Error::SingularParameters(_))
        ));
    }

    #[test]
    fn enhanced_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let spec = GroupSpec::Levi { n: 2 };
        for _ in 0..10 {
            let g1 = spec.sample(&mut rng, 1);
            let g2 = spec.sample(&mut rng, 1);
            let a1 = MatrixQ::from_entries(
                2,
                2,
                g1.entries()
                    .filter(|(i, j, _)| *i < 2 && *j < 2)
                    .map(|(i, j, x)| (i, j, x.clone())),
            );
            let a2 = MatrixQ::from_entries(
                2,
                2,
                g2.entries()
                    .filter(|(i, j, _)| *i < 2 && *j < 2)
                    .map(|(i, j, x)| (i, j, x.clone())),
            );
            if !a1.is_invertible() || !a2.is_invertible() {
                continue;
            }
            let v1 = vec![q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5))];
            let v2 = vec![q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5))];
            let lhs = embed_enhanced(&a1, &v1)
                .unwrap()
                .mul(&embed_enhanced(&a2, &v2).unwrap());
            let g1v2 = a1.mul_vec(&SparseVec::from_dense(&v2));
            let v = g1v2.add(&SparseVec::from_dense(&v1)).to_dense(2);
            let rhs = embed_enhanced(&a1.mul(&a2), &v).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_examples() {
        let id = phi_of_group_element(&MatrixQ::identity(2), 2);
        assert_eq!(xi_to_matrix(&id), MatrixQ::identity(4));
        let g = MatrixQ::from_i64(&[vec![1, 7], vec![0, 1]]);
        let x = phi_of_group_element(&g, 1);
        assert_eq!(x.terms().len(), 3);
        assert_eq!(xi_to_matrix(&x), g);
    }

    #[test]
    fn phi_is_tensor_power_and_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = GroupSpec::FullGl { m: 2 };
        for _ in 0..4 {
            let g = spec.sample(&mut rng, 3);
            let h = spec.sample(&mut rng, 3);
            let pg = phi_of_group_element(&g, 3);
            let ph = phi_of_group_element(&h, 3);
            assert_eq!(xi_to_matrix(&pg), g.kron(&g).kron(&g));
            assert_eq!(
                xi_multiply(&pg, &ph).unwrap(),
                phi_of_group_element(&g.mul(&h), 3)
            );
        }
    }

    #[test]
    fn monomial_oracle_examples() {
        assert_eq!(monomial_span_dim(&[(1, 1), (2, 2)], 2, &[]), 3);
        assert_eq!(monomial_span_dim(&[(1, 1), (1, 2), (2, 2)], 2, &[]), 6);
        assert_eq!(
            monomial_span_dim(&[(1, 1), (1, 2), (2, 2)], 1, &[(2, 2)]),
            3
        );
    }

    #[test]
    fn image_spans_match_oracle() {
        let cases = [
            (GroupSpec::Levi { n: 1 }, 2, 3),
            (GroupSpec::Parabolic { n: 1 }, 2, 6),
            (GroupSpec::FullGl { m: 2 }, 2, 10),
            (GroupSpec::Gm { n: 2 }, 3, 4),
            (GroupSpec::UnipotentV { n: 2 }, 2, 6),
            (GroupSpec::Enhanced { n: 1 }, 2, 6),
            (GroupSpec::Torus { n: 1 }, 2, 3),
        ];
        for (spec, r, dim) in cases {
            let img = group_image_span(spec, r, 42).unwrap();
            assert_eq!(img.handle.dim(), dim, "{spec:?}");
        }
    }
}
