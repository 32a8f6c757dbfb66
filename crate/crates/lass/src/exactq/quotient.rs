use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use super::subspace::Subspace;
use super::LinAlgError;

/// A quotient num/den of nested subspaces of Q^n, with a fixed choice of
/// representatives and a projector returning quotient coordinates.
///
/// The representatives are the numerator basis vectors sitting at the
/// non-pivot positions of the denominator expressed in numerator
/// coordinates, which makes the construction deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpace {
    ambient_dim: usize,
    numerator: Subspace,
    denominator: Subspace,
    representatives: ExactMatrix,
    projector: ExactMatrix,
}

impl QuotientSpace {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self, LinAlgError> {
        if numerator.ambient_dim() != denominator.ambient_dim() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "quotient ambient {} vs {}",
                numerator.ambient_dim(),
                denominator.ambient_dim()
            )));
        }
        if !numerator.contains_subspace(&denominator) {
            return Err(LinAlgError::NotContained(
                "denominator is not contained in numerator".into(),
            ));
        }
        let ambient = numerator.ambient_dim();

        // Denominator basis in numerator coordinates, one column per vector.
        let den_in_num: Vec<Vec<Scalar>> = (0..denominator.dim())
            .map(|j| numerator.coords(&denominator.basis().col(j)).unwrap())
            .collect();
        let den_coords = ExactMatrix::from_columns(numerator.dim(), &den_in_num);
        let (_, den_pivots) = den_coords.transpose().rref();
        let free: Vec<usize> = (0..numerator.dim())
            .filter(|i| !den_pivots.contains(i))
            .collect();
        let representatives = numerator.basis().select_columns(&free);

        // Complete den ⊕ reps ⊕ (ambient complement of num) to a basis of Q^n,
        // then read the projector off the middle block of the inverse.
        let (_, num_pivots) = numerator.basis().transpose().rref();
        let ambient_free: Vec<usize> = (0..ambient).filter(|i| !num_pivots.contains(i)).collect();
        let complement = ExactMatrix::identity(ambient).select_columns(&ambient_free);
        let full = denominator
            .basis()
            .hstack(&representatives)
            .hstack(&complement);
        let inv = full.inverse().expect("den+reps+complement must be a basis");
        let rep_rows: Vec<usize> =
            (denominator.dim()..denominator.dim() + representatives.cols()).collect();
        let projector = inv.select_rows(&rep_rows);

        Ok(QuotientSpace {
            ambient_dim: ambient,
            numerator,
            denominator,
            representatives,
            projector,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Ambient column per quotient basis vector.
    pub fn representatives(&self) -> &ExactMatrix {
        &self.representatives
    }

    /// Quotient coordinates of an ambient vector; left inverse of
    /// `representatives`, kills the denominator.
    pub fn projector(&self) -> &ExactMatrix {
        &self.projector
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projector.mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::qi;
    use super::*;
    use num_traits::Zero;

    #[test]
    fn full_by_zero() {
        let q = QuotientSpace::new(Subspace::full(2), Subspace::zero(2)).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(
            q.projector().mul(q.representatives()),
            ExactMatrix::identity(2)
        );
    }

    #[test]
    fn num_equals_den() {
        let s = Subspace::from_vectors(3, &[vec![qi(1), qi(2), qi(3)]]);
        let q = QuotientSpace::new(s.clone(), s).unwrap();
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn plane_by_diagonal() {
        let den = Subspace::from_vectors(2, &[vec![qi(1), qi(1)]]);
        let q = QuotientSpace::new(Subspace::full(2), den.clone()).unwrap();
        assert_eq!(q.dim(), 1);
        // projector annihilates the denominator, inverts the representative
        let d = q.project(&[qi(1), qi(1)]);
        assert!(d.iter().all(|x| x.is_zero()));
        assert_eq!(
            q.projector().mul(q.representatives()),
            ExactMatrix::identity(1)
        );
    }

    #[test]
    fn containment_error() {
        let num = Subspace::from_vectors(2, &[vec![qi(1), qi(0)]]);
        let den = Subspace::from_vectors(2, &[vec![qi(0), qi(1)]]);
        assert!(matches!(
            QuotientSpace::new(num, den),
            Err(LinAlgError::NotContained(_))
        ));
    }
}
