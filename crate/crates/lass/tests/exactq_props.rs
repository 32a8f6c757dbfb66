//! Property-based invariants for the exact linear algebra layer.

use num_traits::Zero;
use proptest::prelude::*;

use lass::exactq::{ExactMatrix, QuotientSpace, Scalar, Subspace};

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |entries| {
            let mut m = ExactMatrix::zeros(r, c);
            for (k, &e) in entries.iter().enumerate() {
                m.set(k / c, k % c, Scalar::from_integer(e.into()));
            }
            m
        })
    })
}

/// Two generating sets for subspaces of the same ambient space.
fn subspace_pair_strategy(
    ambient: usize,
) -> impl Strategy<Value = (Subspace, Subspace)> {
    let gens = move |n: usize| {
        proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, ambient),
            0..=n,
        )
        .prop_map(move |vecs| {
            let vectors: Vec<Vec<Scalar>> = vecs
                .iter()
                .map(|v| v.iter().map(|&e| Scalar::from_integer(e.into())).collect())
                .collect();
            Subspace::from_vectors(ambient, &vectors)
        })
    };
    (gens(4), gens(4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix_strategy(6)) {
        prop_assert_eq!(m.kernel().dim() + m.rank(), m.cols());
    }

    #[test]
    fn image_dim_is_rank(m in matrix_strategy(6)) {
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn sum_intersect_dimension_formula((a, b) in subspace_pair_strategy(5)) {
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
        prop_assert!(sum.contains_subspace(&a) && sum.contains_subspace(&b));
        prop_assert!(a.contains_subspace(&meet) && b.contains_subspace(&meet));
    }

    #[test]
    fn canonicalization_is_span_invariant(m in matrix_strategy(6)) {
        // Shuffling and rescaling the generating columns must yield
        // bit-identical basis data.
        let s = m.image();
        let mut cols: Vec<Vec<Scalar>> = (0..m.cols()).rev().map(|j| m.col(j)).collect();
        for (i, c) in cols.iter_mut().enumerate() {
            let factor = Scalar::from_integer(((i as i64 % 3) + 1).into());
            for x in c.iter_mut() {
                *x = &*x * &factor;
            }
        }
        let shuffled = Subspace::from_vectors(m.rows(), &cols);
        prop_assert_eq!(s.basis(), shuffled.basis());
    }

    #[test]
    fn quotient_identities((a, b) in subspace_pair_strategy(5)) {
        let num = a.sum(&b).unwrap();
        let den = a;
        let q = QuotientSpace::new(num.clone(), den.clone()).unwrap();
        prop_assert_eq!(q.dim(), num.dim() - den.dim());
        // Projector is a left inverse of the representatives...
        let composite = q.projector().mul(q.representatives());
        prop_assert_eq!(composite, ExactMatrix::identity(q.dim()));
        // ...and annihilates the denominator.
        for j in 0..den.dim() {
            prop_assert!(q.project(&den.basis().col(j)).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn preimage_contains_kernel(m in matrix_strategy(5), seed in 0u64..1000) {
        // A random target subspace inside the codomain.
        let cols: Vec<Vec<Scalar>> = (0..m.rows())
            .map(|i| {
                (0..m.rows())
                    .map(|j| Scalar::from_integer((((seed as i64) + (i * j) as i64) % 3 - 1).into()))
                    .collect()
            })
            .take(2)
            .collect();
        let target = Subspace::from_vectors(m.rows(), &cols);
        let pre = m.preimage(&target).unwrap();
        prop_assert!(pre.contains_subspace(&m.kernel()));
        for j in 0..pre.dim() {
            prop_assert!(target.contains(&m.mul_vec(&pre.basis().col(j))));
        }
    }
}
