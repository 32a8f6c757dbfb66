//! Graded cochain complexes over Q, descending filtrations by subcomplexes,
//! and plain cohomology.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactq::{ExactMatrix, LinAlgError, QuotientSpace, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("d∘d ≠ 0 starting at degree {degree}")]
    DSquareNonzero { degree: i64 },
    #[error("differential at degree {degree} has shape {got_rows}×{got_cols}, expected {want_rows}×{want_cols}")]
    ShapeMismatch {
        degree: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("filtration not nested at (p={p}, degree={n})")]
    NotNested { p: i64, n: i64 },
    #[error("filtration not d-stable at (p={p}, degree={n})")]
    NotStable { p: i64, n: i64 },
    #[error("filtration subspace at (p={p}, degree={n}) has ambient dim {got}, expected {want}")]
    FiltrationShape { p: i64, n: i64, got: usize, want: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Finitely supported graded vector space with basis labels per degree.
/// Labels are display metadata only; all algebra runs on indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GradedSpace {
    degrees: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_degree(&mut self, n: i64, labels: Vec<String>) {
        if labels.is_empty() {
            self.degrees.remove(&n);
        } else {
            self.degrees.insert(n, labels);
        }
    }

    pub fn set_dim(&mut self, n: i64, dim: usize) {
        self.set_degree(n, (0..dim).map(|i| format!("C{n}[{i}]")).collect());
    }

    pub fn dim(&self, n: i64) -> usize {
        self.degrees.get(&n).map_or(0, |l| l.len())
    }

    pub fn labels(&self, n: i64) -> &[String] {
        self.degrees.get(&n).map_or(&[], |l| l.as_slice())
    }

    /// Degree window [min, max] over nonzero degrees, or None when trivial.
    pub fn window(&self) -> Option<(i64, i64)> {
        let min = *self.degrees.keys().next()?;
        let max = *self.degrees.keys().next_back()?;
        Some((min, max))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainComplex {
    spaces: GradedSpace,
    differentials: BTreeMap<i64, ExactMatrix>,
}

impl CochainComplex {
    pub fn new(spaces: GradedSpace, differentials: BTreeMap<i64, ExactMatrix>) -> Self {
        CochainComplex {
            spaces,
            differentials,
        }
    }

    pub fn spaces(&self) -> &GradedSpace {
        &self.spaces
    }

    pub fn dim(&self, n: i64) -> usize {
        self.spaces.dim(n)
    }

    /// The map C^n -> C^{n+1}; zero matrix of the right shape if unset.
    pub fn differential(&self, n: i64) -> ExactMatrix {
        match self.differentials.get(&n) {
            Some(m) => m.clone(),
            None => ExactMatrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.spaces.window()
    }

    /// Asserts d∘d = 0 in every degree; reports the first violating degree.
    pub fn check_complex(&self) -> Result<(), CochainError> {
        let Some((lo, hi)) = self.window() else {
            return Ok(());
        };
        for n in lo..=hi {
            let d = self.differential(n);
            if d.rows() != self.dim(n + 1) || d.cols() != self.dim(n) {
                return Err(CochainError::ShapeMismatch {
                    degree: n,
                    got_rows: d.rows(),
                    got_cols: d.cols(),
                    want_rows: self.dim(n + 1),
                    want_cols: self.dim(n),
                });
            }
        }
        for n in lo..=hi {
            if !self.differential(n + 1).mul(&self.differential(n)).is_zero() {
                return Err(CochainError::DSquareNonzero { degree: n });
            }
        }
        Ok(())
    }

    /// ker(d_n)/im(d_{n-1}).
    pub fn cohomology(&self, n: i64) -> Result<QuotientSpace, CochainError> {
        let kernel = self.differential(n).kernel();
        let image = self.differential(n - 1).image();
        Ok(QuotientSpace::new(kernel, image)?)
    }

    pub fn betti(&self, n: i64) -> usize {
        self.cohomology(n).map_or(0, |q| q.dim())
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        match self.window() {
            Some((lo, hi)) => (lo..=hi).map(|n| self.betti(n)).collect(),
            None => Vec::new(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self.window() {
            Some((lo, hi)) => (lo..=hi)
                .map(|n| {
                    let sign = if (n.rem_euclid(2)) == 0 { 1 } else { -1 };
                    sign * self.dim(n) as i64
                })
                .sum(),
            None => 0,
        }
    }
}

/// A descending filtration F^0 ⊇ F^1 ⊇ … of a cochain complex by
/// d-stable subcomplexes, finite: F^p = 0 for p beyond the stored bound.
///
/// Only p ≥ 1 pieces are stored; F^0 C^n = C^n and negative p alias F^0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: CochainComplex,
    filtration: BTreeMap<(i64, i64), Subspace>,
    bound: i64,
}

impl FilteredComplex {
    pub fn new(complex: CochainComplex, filtration: BTreeMap<(i64, i64), Subspace>) -> Self {
        let bound = filtration
            .keys()
            .map(|&(p, _)| p)
            .max()
            .unwrap_or(0)
            .max(0);
        FilteredComplex {
            complex,
            filtration,
            bound,
        }
    }

    /// Trivial filtration: F^p = 0 for p ≥ 1.
    pub fn trivial(complex: CochainComplex) -> Self {
        Self::new(complex, BTreeMap::new())
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Smallest bound with F^p = 0 for all p > bound.
    pub fn filtration_bound(&self) -> i64 {
        self.bound
    }

    pub fn filt(&self, p: i64, n: i64) -> Subspace {
        if p <= 0 {
            return Subspace::full(self.complex.dim(n));
        }
        match self.filtration.get(&(p, n)) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.complex.dim(n)),
        }
    }

    /// Asserts nesting and d-stability of every filtration piece.
    pub fn check_filtration(&self) -> Result<(), CochainError> {
        self.complex.check_complex()?;
        let Some((lo, hi)) = self.complex.window() else {
            return Ok(());
        };
        for (&(p, n), s) in &self.filtration {
            if s.ambient_dim() != self.complex.dim(n) {
                return Err(CochainError::FiltrationShape {
                    p,
                    n,
                    got: s.ambient_dim(),
                    want: self.complex.dim(n),
                });
            }
        }
        for n in lo..=hi {
            let d = self.complex.differential(n);
            for p in 1..=self.bound {
                let fp = self.filt(p, n);
                if !self.filt(p - 1, n).contains_subspace(&fp) {
                    return Err(CochainError::NotNested { p, n });
                }
                let target = self.filt(p, n + 1);
                for j in 0..fp.dim() {
                    if !target.contains(&d.mul_vec(&fp.basis().col(j))) {
                        return Err(CochainError::NotStable { p, n });
                    }
                }
            }
        }
        Ok(())
    }

    /// dims of F^p H^n := image(H^n(F^p C) -> H^n(C)), for p = 0..bound+1.
    ///
    /// Computed as dim((ker d_n ∩ F^p) + im d_{n-1}) - dim(im d_{n-1}); this
    /// is the convergence oracle for the spectral sequence.
    pub fn induced_filtration_on_h(&self, n: i64) -> Result<Vec<usize>, CochainError> {
        let kernel = self.complex.differential(n).kernel();
        let image = self.complex.differential(n - 1).image();
        let mut dims = Vec::new();
        for p in 0..=self.bound + 1 {
            let zp = kernel.intersect(&self.filt(p, n))?;
            let total = zp.sum(&image)?;
            dims.push(total.dim() - image.dim());
        }
        Ok(dims)
    }
}
