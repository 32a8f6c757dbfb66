//! Finite-dimensional Lie algebras over Q, their representations, derived
//! representations (dual, tensor, exterior and symmetric powers, Bott), and
//! the Chevalley-Eilenberg complex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{CochainComplex, GradedSpace};
use crate::exactq::{parse_scalar, scalar_to_string, ExactMatrix, LinAlgError, Scalar, Subspace};
use crate::multiindex::{exponents_of_degree, ExteriorBasis};
use num_traits::Zero;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CeError {
    #[error("bracket antisymmetry fails at pair ({i}, {j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails at triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("representation is not flat at pair ({i}, {j})")]
    NotFlat { i: usize, j: usize },
    #[error("representation matrix {i} has wrong shape")]
    RepShape { i: usize },
    #[error("representation is over a Lie algebra of dim {got}, expected {want}")]
    RepAlgebraMismatch { got: usize, want: usize },
    #[error("subalgebra is not closed under the bracket at pair ({i}, {j})")]
    NotClosed { i: usize, j: usize },
    #[error("subalgebra basis columns are not independent")]
    DependentBasis,
    #[error("subspace is not an ideal: [e{i}, h{j}] escapes")]
    NotIdeal { i: usize, j: usize },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    pub fn new(dim: usize, brackets: Vec<Vec<Vec<Scalar>>>, labels: Option<Vec<String>>) -> Self {
        assert_eq!(brackets.len(), dim);
        for row in &brackets {
            assert_eq!(row.len(), dim);
            for entry in row {
                assert_eq!(entry.len(), dim);
            }
        }
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        assert_eq!(labels.len(), dim);
        LieAlgebra {
            dim,
            labels,
            brackets,
        }
    }

    pub fn abelian(dim: usize) -> Self {
        let zero_row = vec![vec![Scalar::zero(); dim]; dim];
        Self::new(dim, vec![zero_row; dim], None)
    }

    /// Builds from a sparse list of bracket coefficients for i < j; the
    /// antisymmetric counterparts are filled in automatically.
    pub fn from_sparse(
        dim: usize,
        entries: &[(usize, usize, Vec<(usize, Scalar)>)],
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut brackets = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (i, j, coeffs) in entries {
            for (k, c) in coeffs {
                brackets[*i][*j][*k] = c.clone();
                brackets[*j][*i][*k] = -c.clone();
            }
        }
        Self::new(dim, brackets, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_coeffs(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    /// [u, v] for arbitrary coordinate vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.brackets[i][j][k].is_zero() {
                        out[k] = &out[k] + &f * &self.brackets[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> Result<(), CeError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = &self.brackets[i][j][k];
                    let rhs = &self.brackets[j][i][k];
                    if !(lhs + rhs).is_zero() {
                        return Err(CeError::Antisymmetry { i, j });
                    }
                }
            }
        }
        let basis = ExactMatrix::identity(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let ei = basis.col(i);
                    let ej = basis.col(j);
                    let ek = basis.col(k);
                    let mut total = self.bracket(&ei, &self.bracket(&ej, &ek));
                    for (a, t) in self
                        .bracket(&ej, &self.bracket(&ek, &ei))
                        .into_iter()
                        .enumerate()
                    {
                        total[a] = &total[a] + t;
                    }
                    for (a, t) in self
                        .bracket(&ek, &self.bracket(&ei, &ej))
                        .into_iter()
                        .enumerate()
                    {
                        total[a] = &total[a] + t;
                    }
                    if total.iter().any(|x| !x.is_zero()) {
                        return Err(CeError::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis permutation, for invariance testing: new e_i = old e_{perm[i]}.
    pub fn permute_basis(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut inv = vec![0; self.dim];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut brackets = vec![vec![vec![Scalar::zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    brackets[i][j][inv[k]] = self.brackets[perm[i]][perm[j]][k].clone();
                }
            }
        }
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(self.dim, brackets, Some(labels))
    }
}

/// Flat action: matrices rho_i with rho([e_i,e_j]) = rho_i rho_j - rho_j rho_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra_dim: usize,
    carrier_dim: usize,
    matrices: Vec<ExactMatrix>,
}

impl Representation {
    pub fn new(algebra_dim: usize, carrier_dim: usize, matrices: Vec<ExactMatrix>) -> Self {
        assert_eq!(matrices.len(), algebra_dim);
        for m in &matrices {
            assert_eq!((m.rows(), m.cols()), (carrier_dim, carrier_dim));
        }
        Representation {
            algebra_dim,
            carrier_dim,
            matrices,
        }
    }

    pub fn trivial(algebra_dim: usize, carrier_dim: usize) -> Self {
        Self::new(
            algebra_dim,
            carrier_dim,
            vec![ExactMatrix::zeros(carrier_dim, carrier_dim); algebra_dim],
        )
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn matrix(&self, i: usize) -> &ExactMatrix {
        &self.matrices[i]
    }

    /// rho applied to an algebra coordinate vector.
    pub fn action_of(&self, u: &[Scalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.carrier_dim, self.carrier_dim);
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.matrices[i].scale(c));
            }
        }
        out
    }

    pub fn check_flat(&self, g: &LieAlgebra) -> Result<(), CeError> {
        if g.dim() != self.algebra_dim {
            return Err(CeError::RepAlgebraMismatch {
                got: self.algebra_dim,
                want: g.dim(),
            });
        }
        for i in 0..self.algebra_dim {
            for j in i + 1..self.algebra_dim {
                let commutator = self.matrices[i]
                    .mul(&self.matrices[j])
                    .sub(&self.matrices[j].mul(&self.matrices[i]));
                let mut bracket_action = ExactMatrix::zeros(self.carrier_dim, self.carrier_dim);
                for (k, c) in g.bracket_coeffs(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        bracket_action = bracket_action.add(&self.matrices[k].scale(c));
                    }
                }
                if commutator != bracket_action {
                    return Err(CeError::NotFlat { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn dual(&self) -> Representation {
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.transpose().scale(&-Scalar::from_integer(1.into())))
            .collect();
        Self::new(self.algebra_dim, self.carrier_dim, matrices)
    }

    pub fn tensor(&self, other: &Representation) -> Representation {
        assert_eq!(self.algebra_dim, other.algebra_dim);
        let dim = self.carrier_dim * other.carrier_dim;
        let matrices = (0..self.algebra_dim)
            .map(|i| {
                let mut m = ExactMatrix::zeros(dim, dim);
                for a in 0..self.carrier_dim {
                    for b in 0..other.carrier_dim {
                        let col = a * other.carrier_dim + b;
                        for s in 0..self.carrier_dim {
                            let v = self.matrices[i].get(s, a);
                            if !v.is_zero() {
                                let row = s * other.carrier_dim + b;
                                let acc = m.get(row, col) + v;
                                m.set(row, col, acc);
                            }
                        }
                        for s in 0..other.carrier_dim {
                            let v = other.matrices[i].get(s, b);
                            if !v.is_zero() {
                                let row = a * other.carrier_dim + s;
                                let acc = m.get(row, col) + v;
                                m.set(row, col, acc);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self::new(self.algebra_dim, dim, matrices)
    }

    /// Derivation action on the sorted-multi-index basis of the p-th
    /// exterior power.
    pub fn exterior_power(&self, p: usize) -> Representation {
        let basis = ExteriorBasis::new(self.carrier_dim, p);
        let dim = basis.len();
        let matrices = (0..self.algebra_dim)
            .map(|i| {
                let rho = &self.matrices[i];
                let mut m = ExactMatrix::zeros(dim, dim);
                for (col, combo) in basis.combos().iter().enumerate() {
                    for (slot, &orig) in combo.iter().enumerate() {
                        for s in 0..self.carrier_dim {
                            let v = rho.get(s, orig);
                            if v.is_zero() {
                                continue;
                            }
                            let mut indices = combo.clone();
                            indices[slot] = s;
                            if let Some((row, sign)) = basis.lookup(&indices) {
                                let acc =
                                    m.get(row, col) + v * Scalar::from_integer(sign.into());
                                m.set(row, col, acc);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self::new(self.algebra_dim, dim, matrices)
    }

    /// Derivation action on the monomial basis of the p-th symmetric power,
    /// exponent vectors ordered as in `exponents_of_degree`.
    pub fn sym_power(&self, p: usize) -> Representation {
        let exps = exponents_of_degree(self.carrier_dim, p);
        let index: BTreeMap<Vec<usize>, usize> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let dim = exps.len();
        let matrices = (0..self.algebra_dim)
            .map(|i| {
                let rho = &self.matrices[i];
                let mut m = ExactMatrix::zeros(dim, dim);
                for (col, alpha) in exps.iter().enumerate() {
                    for j in 0..self.carrier_dim {
                        if alpha[j] == 0 {
                            continue;
                        }
                        let mult = Scalar::from_integer((alpha[j] as i64).into());
                        for s in 0..self.carrier_dim {
                            let v = rho.get(s, j);
                            if v.is_zero() {
                                continue;
                            }
                            let mut beta = alpha.clone();
                            beta[j] -= 1;
                            beta[s] += 1;
                            let row = index[&beta];
                            let acc = m.get(row, col) + v * &mult;
                            m.set(row, col, acc);
                        }
                    }
                }
                m
            })
            .collect();
        Self::new(self.algebra_dim, dim, matrices)
    }

    /// Conjugated representation T^{-1} rho T, for basis-invariance tests.
    pub fn conjugate(&self, t: &ExactMatrix) -> Result<Representation, CeError> {
        let inv = t.inverse()?;
        let matrices = self.matrices.iter().map(|m| inv.mul(&m.mul(t))).collect();
        Ok(Self::new(self.algebra_dim, self.carrier_dim, matrices))
    }

    /// Pullback along a basis permutation of the algebra: matches
    /// `LieAlgebra::permute_basis`.
    pub fn permute_algebra_basis(&self, perm: &[usize]) -> Representation {
        let matrices = perm.iter().map(|&i| self.matrices[i].clone()).collect();
        Self::new(self.algebra_dim, self.carrier_dim, matrices)
    }
}

/// A subalgebra of `parent` spanned by the columns of `basis`.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    parent: LieAlgebra,
    basis: ExactMatrix,
}

impl Subalgebra {
    pub fn new(parent: LieAlgebra, basis: ExactMatrix) -> Result<Self, CeError> {
        assert_eq!(basis.rows(), parent.dim());
        if basis.rank() != basis.cols() {
            return Err(CeError::DependentBasis);
        }
        let sub = Subalgebra { parent, basis };
        sub.check_closed()?;
        Ok(sub)
    }

    /// Span of the given standard basis vectors.
    pub fn from_indices(parent: LieAlgebra, indices: &[usize]) -> Result<Self, CeError> {
        let basis = ExactMatrix::identity(parent.dim()).select_columns(indices);
        Self::new(parent, basis)
    }

    fn check_closed(&self) -> Result<(), CeError> {
        let span = Subspace::from_columns(&self.basis);
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let b = self.parent.bracket(&self.basis.col(i), &self.basis.col(j));
                if !span.contains(&b) {
                    return Err(CeError::NotClosed { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn span(&self) -> Subspace {
        Subspace::from_columns(&self.basis)
    }

    pub fn is_ideal(&self) -> Result<(), CeError> {
        let span = self.span();
        let id = ExactMatrix::identity(self.parent.dim());
        for i in 0..self.parent.dim() {
            for j in 0..self.dim() {
                let b = self.parent.bracket(&id.col(i), &self.basis.col(j));
                if !span.contains(&b) {
                    return Err(CeError::NotIdeal { i, j });
                }
            }
        }
        Ok(())
    }

    /// The subalgebra as an abstract Lie algebra in its own basis.
    pub fn as_lie_algebra(&self) -> LieAlgebra {
        let k = self.dim();
        let mut brackets = vec![vec![vec![Scalar::zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                let b = self.parent.bracket(&self.basis.col(i), &self.basis.col(j));
                let coords = self
                    .basis
                    .solve(&b)
                    .expect("closed subalgebra bracket must solve");
                brackets[i][j] = coords;
            }
        }
        LieAlgebra::new(k, brackets, None)
    }

    /// Restriction of a parent representation to the subalgebra basis.
    pub fn restrict_rep(&self, v: &Representation) -> Representation {
        let matrices = (0..self.dim())
            .map(|j| v.action_of(&self.basis.col(j)))
            .collect();
        Representation::new(self.dim(), v.carrier_dim(), matrices)
    }

    /// Standard basis vectors at the non-pivot coordinates of the echelon
    /// span; the deterministic complement used for quotients and Bott.
    pub fn complement_indices(&self) -> Vec<usize> {
        let span = self.span();
        let (_, pivots) = span.basis().transpose().rref();
        (0..self.parent.dim())
            .filter(|i| !pivots.contains(i))
            .collect()
    }

    /// Coordinates-in-complement projection g -> Q^{dim g - dim h} along h.
    pub fn complement_projection(&self) -> ExactMatrix {
        let n = self.parent.dim();
        let span = self.span();
        let comp = ExactMatrix::identity(n).select_columns(&self.complement_indices());
        let full = span.basis().hstack(&comp);
        let inv = full.inverse().expect("h + complement is a basis");
        inv.select_rows(&(span.dim()..n).collect::<Vec<_>>())
    }
}

/// Structure constants of g/h in the deterministic complement coordinates.
pub fn quotient_lie_algebra(h: &Subalgebra) -> Result<LieAlgebra, CeError> {
    h.is_ideal()?;
    let comp = h.complement_indices();
    let proj = h.complement_projection();
    let m = comp.len();
    let id = ExactMatrix::identity(h.parent().dim());
    let mut brackets = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for (a, &i) in comp.iter().enumerate() {
        for (b, &j) in comp.iter().enumerate() {
            brackets[a][b] = proj.mul_vec(&h.parent().bracket(&id.col(i), &id.col(j)));
        }
    }
    let labels = comp
        .iter()
        .map(|&i| format!("{}~", h.parent().labels()[i]))
        .collect();
    Ok(LieAlgebra::new(m, brackets, Some(labels)))
}

/// Bott representation of h on g/h in complement coordinates:
/// nabla_beta(alpha-bar) = [beta, alpha] mod h.
pub fn bott_rep(h: &Subalgebra) -> Representation {
    let comp = h.complement_indices();
    let proj = h.complement_projection();
    let id = ExactMatrix::identity(h.parent().dim());
    let matrices = (0..h.dim())
        .map(|j| {
            let beta = h.basis().col(j);
            let cols: Vec<Vec<Scalar>> = comp
                .iter()
                .map(|&i| proj.mul_vec(&h.parent().bracket(&beta, &id.col(i))))
                .collect();
            ExactMatrix::from_columns(comp.len(), &cols)
        })
        .collect();
    Representation::new(h.dim(), comp.len(), matrices)
}

/// Basis labels "ξ1∧ξ3⊗v2" for the degree-k piece of the CE complex.
fn ce_labels(g: &LieAlgebra, basis: &ExteriorBasis, carrier_dim: usize) -> Vec<String> {
    let mut labels = Vec::new();
    for combo in basis.combos() {
        let wedge = if combo.is_empty() {
            "1".to_string()
        } else {
            combo
                .iter()
                .map(|&i| format!("ξ{}", i + 1))
                .collect::<Vec<_>>()
                .join("∧")
        };
        for a in 0..carrier_dim {
            if carrier_dim == 1 {
                labels.push(wedge.clone());
            } else {
                labels.push(format!("{wedge}⊗v{}", a + 1));
            }
        }
        let _ = g;
    }
    labels
}

/// The Chevalley-Eilenberg complex of g with coefficients in V:
/// C^k = ∧^k g* ⊗ V with the Koszul differential, ∇ = rho.
pub fn ce_complex(g: &LieAlgebra, v: &Representation) -> Result<CochainComplex, CeError> {
    g.check_jacobi()?;
    v.check_flat(g)?;
    let n = g.dim();
    let m = v.carrier_dim();
    let mut spaces = GradedSpace::new();
    let mut differentials = BTreeMap::new();
    let bases: Vec<ExteriorBasis> = (0..=n + 1).map(|k| ExteriorBasis::new(n, k)).collect();
    for k in 0..=n {
        spaces.set_degree(k as i64, ce_labels(g, &bases[k], m));
    }
    for k in 0..n {
        let source = &bases[k];
        let target = &bases[k + 1];
        let mut d = ExactMatrix::zeros(target.len() * m, source.len() * m);
        for (jrow, combo) in target.combos().iter().enumerate() {
            // term 1: sum_i (-1)^i rho(e_{J_i}) omega(J minus i)
            for (i, &ji) in combo.iter().enumerate() {
                let mut rest: Vec<usize> = combo.clone();
                rest.remove(i);
                let src_idx = source.position(&rest);
                let sign = if i % 2 == 0 { 1i64 } else { -1 };
                let rho = v.matrix(ji);
                for a in 0..m {
                    for b in 0..m {
                        let val = rho.get(b, a);
                        if val.is_zero() {
                            continue;
                        }
                        let row = jrow * m + b;
                        let col = src_idx * m + a;
                        let acc = d.get(row, col) + val * Scalar::from_integer(sign.into());
                        d.set(row, col, acc);
                    }
                }
            }
            // term 2: sum_{i<l} (-1)^{i+l} omega([e_{J_i}, e_{J_l}], J minus {i,l})
            for i in 0..combo.len() {
                for l in i + 1..combo.len() {
                    let mut rest: Vec<usize> = combo.clone();
                    rest.remove(l);
                    rest.remove(i);
                    let pair_sign = if (i + l) % 2 == 0 { 1i64 } else { -1 };
                    for (s, c) in g.bracket_coeffs(combo[i], combo[l]).iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut indices = vec![s];
                        indices.extend_from_slice(&rest);
                        let Some((src_idx, sort_sgn)) = source.lookup(&indices) else {
                            continue;
                        };
                        let coeff =
                            c * Scalar::from_integer((pair_sign * sort_sgn).into());
                        for a in 0..m {
                            let row = jrow * m + a;
                            let col = src_idx * m + a;
                            let acc = d.get(row, col) + &coeff;
                            d.set(row, col, acc);
                        }
                    }
                }
            }
        }
        differentials.insert(k as i64, d);
    }
    let complex = CochainComplex::new(spaces, differentials);
    debug_assert!(complex.check_complex().is_ok());
    Ok(complex)
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    /// target index (as string key) -> coefficient "p/q"
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationSpec {
    pub dim: usize,
    pub matrices: Vec<ExactMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSpec>,
}

impl LieAlgebraSpec {
    pub fn build(&self) -> Result<(LieAlgebra, Representation), CeError> {
        let mut entries = Vec::new();
        for b in &self.brackets {
            if b.i >= self.dim || b.j >= self.dim {
                return Err(CeError::BadInput(format!(
                    "bracket index ({}, {}) out of range for dim {}",
                    b.i, b.j, self.dim
                )));
            }
            let mut coeffs = Vec::new();
            for (k, c) in &b.coeffs {
                let k: usize = k
                    .parse()
                    .map_err(|_| CeError::BadInput(format!("bad coefficient key {k:?}")))?;
                if k >= self.dim {
                    return Err(CeError::BadInput(format!(
                        "bracket target {k} out of range for dim {}",
                        self.dim
                    )));
                }
                coeffs.push((k, parse_scalar(c).map_err(CeError::LinAlg)?));
            }
            entries.push((b.i, b.j, coeffs));
        }
        let g = LieAlgebra::from_sparse(self.dim, &entries, self.basis.clone());
        let v = match &self.representation {
            Some(spec) => {
                if spec.matrices.len() != self.dim {
                    return Err(CeError::BadInput(format!(
                        "expected {} representation matrices, got {}",
                        self.dim,
                        spec.matrices.len()
                    )));
                }
                for (i, mat) in spec.matrices.iter().enumerate() {
                    if mat.rows() != spec.dim || mat.cols() != spec.dim {
                        return Err(CeError::RepShape { i });
                    }
                }
                Representation::new(self.dim, spec.dim, spec.matrices.clone())
            }
            None => Representation::trivial(self.dim, 1),
        };
        Ok((g, v))
    }

    pub fn from_lie_algebra(g: &LieAlgebra, v: Option<&Representation>) -> Self {
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let coeffs: BTreeMap<String, String> = g
                    .bracket_coeffs(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k.to_string(), scalar_to_string(c)))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketSpec { i, j, coeffs });
                }
            }
        }
        LieAlgebraSpec {
            dim: g.dim(),
            basis: Some(g.labels().to_vec()),
            brackets,
            representation: v.map(|v| RepresentationSpec {
                dim: v.carrier_dim(),
                matrices: (0..v.algebra_dim()).map(|i| v.matrix(i).clone()).collect(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Stock algebras used across tests and the catalog
// ---------------------------------------------------------------------------

/// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> LieAlgebra {
    use crate::exactq::qi;
    LieAlgebra::from_sparse(
        3,
        &[
            (0, 1, vec![(1, qi(2))]),
            (0, 2, vec![(2, qi(-2))]),
            (1, 2, vec![(0, qi(1))]),
        ],
        Some(vec!["h".into(), "e".into(), "f".into()]),
    )
}

/// Heisenberg with basis (x, y, z): [x,y] = z.
pub fn heisenberg3() -> LieAlgebra {
    use crate::exactq::qi;
    LieAlgebra::from_sparse(
        3,
        &[(0, 1, vec![(2, qi(1))])],
        Some(vec!["x".into(), "y".into(), "z".into()]),
    )
}

/// aff(1) with basis (e1, e2): [e1,e2] = e2.
pub fn aff1() -> LieAlgebra {
    use crate::exactq::qi;
    LieAlgebra::from_sparse(2, &[(0, 1, vec![(1, qi(1))])], None)
}

/// The standard 2-dim representation of sl2 in the (h, e, f) basis.
pub fn sl2_standard_rep() -> Representation {
    Representation::new(
        3,
        2,
        vec![
            ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            ExactMatrix::from_i64(&[&[0, 1], &[0, 0]]),
            ExactMatrix::from_i64(&[&[0, 0], &[1, 0]]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::qi;

    #[test]
    fn jacobi_checks() {
        assert!(LieAlgebra::abelian(3).check_jacobi().is_ok());
        assert!(sl2().check_jacobi().is_ok());
        assert!(heisenberg3().check_jacobi().is_ok());
        // antisymmetry violation: c[0][1] = e2 AND c[1][0] = +e2
        let mut brackets = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        brackets[0][1][2] = qi(1);
        brackets[1][0][2] = qi(1);
        let bad = LieAlgebra::new(3, brackets, None);
        assert_eq!(bad.check_jacobi(), Err(CeError::Antisymmetry { i: 0, j: 1 }));
    }

    #[test]
    fn flatness_checks() {
        let g = sl2();
        assert!(sl2_standard_rep().check_flat(&g).is_ok());
        assert!(Representation::trivial(3, 4).check_flat(&g).is_ok());
        let bad = Representation::new(
            3,
            1,
            vec![
                ExactMatrix::from_i64(&[&[1]]),
                ExactMatrix::from_i64(&[&[1]]),
                ExactMatrix::from_i64(&[&[0]]),
            ],
        );
        // [h,e] = 2e needs rho_[h,e] = 2 rho_e = 2, but commutator is 0
        assert_eq!(bad.check_flat(&g), Err(CeError::NotFlat { i: 0, j: 1 }));
    }

    #[test]
    fn ce_complex_betti_numbers() {
        // abelian: zero differential, b_k = C(n,k)
        let g = LieAlgebra::abelian(3);
        let c = ce_complex(&g, &Representation::trivial(3, 1)).unwrap();
        assert_eq!(c.betti_vector(), vec![1, 3, 3, 1]);

        // aff(1): b = (1, 1, 0)
        let c = ce_complex(&aff1(), &Representation::trivial(2, 1)).unwrap();
        assert_eq!(c.betti_vector(), vec![1, 1, 0]);

        // sl2: Whitehead in degrees 1 and 2
        let c = ce_complex(&sl2(), &Representation::trivial(3, 1)).unwrap();
        assert_eq!(c.betti_vector(), vec![1, 0, 0, 1]);

        // Heisenberg: b = (1, 2, 2, 1)
        let c = ce_complex(&heisenberg3(), &Representation::trivial(3, 1)).unwrap();
        assert_eq!(c.betti_vector(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn ce_complex_is_a_complex_with_coefficients() {
        let g = sl2();
        let v = sl2_standard_rep();
        let c = ce_complex(&g, &v).unwrap();
        assert!(c.check_complex().is_ok());
        // H^*(sl2, standard) = 0 (nontrivial irreducible coefficients)
        assert_eq!(c.betti_vector(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn derived_representations() {
        let g = sl2();
        let v = sl2_standard_rep();
        // dual of trivial is trivial
        assert_eq!(
            Representation::trivial(3, 2).dual(),
            Representation::trivial(3, 2)
        );
        // double dual returns the original matrices
        assert_eq!(v.dual().dual(), v);
        // S^2(standard): h-eigenvalues (2, 0, -2)
        let s2 = v.sym_power(2);
        assert!(s2.check_flat(&g).is_ok());
        assert_eq!(
            *s2.matrix(0),
            ExactMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]])
        );
        // top exterior power acts by the trace character
        let top = v.exterior_power(2);
        assert!(top.check_flat(&g).is_ok());
        for i in 0..3 {
            assert_eq!(top.matrix(i).get(0, 0), &qi(0)); // sl2 is traceless
        }
        let w = Representation::new(1, 2, vec![ExactMatrix::from_i64(&[&[1, 0], &[0, 3]])]);
        assert_eq!(w.exterior_power(2).matrix(0).get(0, 0), &qi(4));
    }

    #[test]
    fn quotients_and_bott() {
        // Heisenberg / center = abelian Q^2
        let g = heisenberg3();
        let center = Subalgebra::from_indices(g.clone(), &[2]).unwrap();
        let q = quotient_lie_algebra(&center).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q
            .bracket(&[qi(1), qi(0)], &[qi(0), qi(1)])
            .iter()
            .all(|x| x.is_zero()));

        // aff(1) / span{e2} = abelian Q
        let a = aff1();
        let ideal = Subalgebra::from_indices(a.clone(), &[1]).unwrap();
        assert_eq!(quotient_lie_algebra(&ideal).unwrap().dim(), 1);

        // sl2 Cartan: Bott rep on (e-bar, f-bar) is diag(2, -2)
        let s = sl2();
        let cartan = Subalgebra::from_indices(s.clone(), &[0]).unwrap();
        let bott = bott_rep(&cartan);
        assert_eq!(
            *bott.matrix(0),
            ExactMatrix::from_i64(&[&[2, 0], &[0, -2]])
        );
        assert!(bott.check_flat(&cartan.as_lie_algebra()).is_ok());

        // Heisenberg, h = span{x}: Bott on (y-bar, z-bar) is nilpotent y -> z
        let h = Subalgebra::from_indices(g.clone(), &[0]).unwrap();
        let bott = bott_rep(&h);
        assert_eq!(*bott.matrix(0), ExactMatrix::from_i64(&[&[0, 0], &[1, 0]]));

        // non-ideal rejected
        let e_span = Subalgebra::from_indices(s.clone(), &[1]).unwrap();
        assert!(quotient_lie_algebra(&e_span).is_err());

        // non-subalgebra rejected: span{h, e + f} in sl2
        let bad = Subalgebra::new(
            s,
            ExactMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, 1]]),
        );
        assert!(matches!(bad, Err(CeError::NotClosed { .. })));
    }

    #[test]
    fn unimodular_poincare_duality() {
        for g in [sl2(), heisenberg3()] {
            let c = ce_complex(&g, &Representation::trivial(3, 1)).unwrap();
            let b = c.betti_vector();
            let n = b.len();
            for k in 0..n {
                assert_eq!(b[k], b[n - 1 - k]);
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        let g = heisenberg3();
        let spec = LieAlgebraSpec::from_lie_algebra(&g, None);
        let json = serde_json::to_string(&spec).unwrap();
        let back: LieAlgebraSpec = serde_json::from_str(&json).unwrap();
        let (g2, v2) = back.build().unwrap();
        assert_eq!(g2, g);
        assert_eq!(v2, Representation::trivial(3, 1));
    }
}
