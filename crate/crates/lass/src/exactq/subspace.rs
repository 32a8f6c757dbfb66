use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use super::LinAlgError;

/// A linear subspace of Q^n, stored with a canonical basis so that equal
/// spans have bit-identical data: the basis columns are the nonzero rows of
/// the reduced row echelon form of the generators, transposed back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::identity(ambient_dim),
        }
    }

    /// Span of the columns of `generators`, canonicalized.
    pub fn from_columns(generators: &ExactMatrix) -> Self {
        let (red, pivots) = generators.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            ambient_dim: generators.rows(),
            basis: red.select_rows(&rows).transpose(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::from_columns(&ExactMatrix::from_columns(ambient_dim, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        self.basis.solve(v).is_some()
    }

    /// Coordinates of `v` in this subspace's basis, if `v` lies in it.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.iter().all(|x| x.is_zero()) {
            return Some(vec![Scalar::zero(); self.dim()]);
        }
        self.basis.solve(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|j| self.contains(&other.basis.col(j)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_columns(&self.basis.hstack(&other.basis)))
    }

    /// Intersection via the kernel of the stacked bases: a·u = b·v.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let stacked = self.basis.hstack(&other.basis.scale(&-Scalar::from_integer(1.into())));
        let ker = kernel_columns(&stacked);
        let vectors: Vec<Vec<Scalar>> = (0..ker.cols())
            .map(|j| {
                let u: Vec<Scalar> = (0..self.dim()).map(|i| ker.get(i, j).clone()).collect();
                self.basis.mul_vec(&u)
            })
            .collect();
        Ok(Subspace::from_vectors(self.ambient_dim, &vectors))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Columns spanning {x | m·x = 0}.
pub fn kernel_columns(m: &ExactMatrix) -> ExactMatrix {
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut out = ExactMatrix::zeros(m.cols(), free.len());
    for (j, &f) in free.iter().enumerate() {
        out.set(f, j, Scalar::from_integer(1.into()));
        for (r, &p) in pivots.iter().enumerate() {
            out.set(p, j, -red.get(r, f).clone());
        }
    }
    out
}

impl ExactMatrix {
    pub fn kernel(&self) -> Subspace {
        Subspace::from_columns(&kernel_columns(self))
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_columns(self)
    }

    /// {x | self·x ∈ s}. Contains the kernel.
    pub fn preimage(&self, s: &Subspace) -> Result<Subspace, LinAlgError> {
        if s.ambient_dim() != self.rows() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "preimage: subspace ambient {} vs matrix rows {}",
                s.ambient_dim(),
                self.rows()
            )));
        }
        // self·x = S·y  <=>  (x, y) in ker [self | -S]
        let stacked = self.hstack(&s.basis().scale(&-Scalar::from_integer(1.into())));
        let ker = kernel_columns(&stacked);
        let vectors: Vec<Vec<Scalar>> = (0..ker.cols())
            .map(|j| (0..self.cols()).map(|i| ker.get(i, j).clone()).collect())
            .collect();
        Ok(Subspace::from_vectors(self.cols(), &vectors))
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::qi;
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::zeros(2, 2).kernel(), Subspace::full(2));
        assert_eq!(ExactMatrix::identity(3).kernel(), Subspace::zero(3));
        let m = ExactMatrix::from_i64(&[&[1, 2]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[qi(-2), qi(1)]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(ExactMatrix::identity(2).image(), Subspace::full(2));
        assert_eq!(ExactMatrix::zeros(3, 2).image(), Subspace::zero(3));
        let m = ExactMatrix::from_i64(&[&[1], &[2]]);
        let im = m.image();
        assert_eq!(im.dim(), 1);
        assert!(im.contains(&[qi(1), qi(2)]));
    }

    #[test]
    fn sum_intersect_examples() {
        let e1 = Subspace::from_vectors(2, &[vec![qi(1), qi(0)]]);
        let e2 = Subspace::from_vectors(2, &[vec![qi(0), qi(1)]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(2));
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);

        let a = Subspace::from_vectors(3, &[vec![qi(1), qi(1), qi(0)]]);
        let b = Subspace::from_vectors(3, &[vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]]);
        assert_eq!(a.intersect(&b).unwrap(), a);
        assert!(b.contains_subspace(&a));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(LinAlgError::DimensionMismatch(_))));
    }

    #[test]
    fn preimage_examples() {
        let m = ExactMatrix::identity(2);
        assert_eq!(m.preimage(&Subspace::full(2)).unwrap(), Subspace::full(2));
        assert_eq!(m.preimage(&Subspace::zero(2)).unwrap(), m.kernel());
        let e1 = Subspace::from_vectors(2, &[vec![qi(1), qi(0)]]);
        assert_eq!(m.preimage(&e1).unwrap(), e1);
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::from_vectors(3, &[vec![qi(2), qi(4), qi(0)], vec![qi(1), qi(1), qi(1)]]);
        let b = Subspace::from_vectors(3, &[vec![qi(1), qi(2), qi(0)], vec![qi(3), qi(5), qi(1)]]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }
}
