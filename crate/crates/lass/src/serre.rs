//! The Hochschild-Serre filtration of a subalgebra h ⊂ g, the E0/E1
//! identifications against the Bott-representation oracle, and the E2
//! identification H^p(g/h, H^q(h,V)) for ideals.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::ce::{
    bott_rep, ce_complex, quotient_lie_algebra, CeError, LieAlgebra, Representation, Subalgebra,
};
use crate::cochain::{CochainError, FilteredComplex};
use crate::exactq::{ExactMatrix, LinAlgError, QuotientSpace, Scalar, Subspace};
use crate::multiindex::{combinations, ExteriorBasis};
use crate::spectral::{Engine, SpectralError};
use num_traits::Zero;

#[derive(Debug, Error)]
pub enum SerreError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("pr map at (p={p}, q={q}) is not invertible")]
    PrNotInvertible { p: i64, q: i64 },
    #[error("pr map at (p={p}, q={q}) does not intertwine d0 with the CE differential")]
    PrNotIntertwining { p: i64, q: i64 },
    #[error("lifted cochain is not closed after contraction (generator {generator}, q={q})")]
    ContractionNotClosed { generator: usize, q: i64 },
}

/// Evaluates the wedge-determinant of each k-multi-index against k argument
/// vectors: result[i] = det of the rows of `args` picked by combo i.
pub(crate) fn wedge_determinants(basis: &ExteriorBasis, args: &[Vec<Scalar>]) -> Vec<Scalar> {
    let k = args.len();
    basis
        .combos()
        .iter()
        .map(|combo| {
            debug_assert_eq!(combo.len(), k);
            let mut m = ExactMatrix::zeros(k, k);
            for (j, &idx) in combo.iter().enumerate() {
                for (l, arg) in args.iter().enumerate() {
                    m.set(j, l, arg[idx].clone());
                }
            }
            m.determinant()
        })
        .collect()
}

/// Evaluates a V-valued cochain (coefficients over basis × V) on argument
/// vectors; returns the m-dim value.
pub(crate) fn eval_cochain(
    coeffs: &[Scalar],
    basis: &ExteriorBasis,
    m: usize,
    args: &[Vec<Scalar>],
) -> Vec<Scalar> {
    let dets = wedge_determinants(basis, args);
    let mut out = vec![Scalar::zero(); m];
    for (i, det) in dets.iter().enumerate() {
        if det.is_zero() {
            continue;
        }
        for a in 0..m {
            out[a] = &out[a] + det * &coeffs[i * m + a];
        }
    }
    out
}

/// A Lie algebra with the Hochschild-Serre filtration of a subalgebra.
pub struct HsInstance {
    g: LieAlgebra,
    h: Subalgebra,
    v: Representation,
    filtered: FilteredComplex,
}

/// Builds the filtration F^p C^n = {ω | ω vanishes whenever n-p+1 arguments
/// come from h}, computed as the kernel of the evaluation constraints.
pub fn hs_filtration(
    g: &LieAlgebra,
    h: Subalgebra,
    v: &Representation,
) -> Result<HsInstance, SerreError> {
    let complex = ce_complex(g, v)?;
    let n_amb = g.dim();
    let m = v.carrier_dim();
    let h_cols: Vec<Vec<Scalar>> = (0..h.dim()).map(|j| h.basis().col(j)).collect();
    let std_cols: Vec<Vec<Scalar>> = {
        let id = ExactMatrix::identity(n_amb);
        (0..n_amb).map(|j| id.col(j)).collect()
    };
    let mut filtration = BTreeMap::new();
    for n in 1..=n_amb {
        let basis = ExteriorBasis::new(n_amb, n);
        let dim_cn = basis.len() * m;
        for p in 1..=n {
            let t = n - p + 1;
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for h_combo in combinations(h.dim(), t) {
                for rest_combo in combinations(n_amb, n - t) {
                    let mut args: Vec<Vec<Scalar>> =
                        h_combo.iter().map(|&i| h_cols[i].clone()).collect();
                    args.extend(rest_combo.iter().map(|&j| std_cols[j].clone()));
                    let dets = wedge_determinants(&basis, &args);
                    for a in 0..m {
                        let mut row = vec![Scalar::zero(); dim_cn];
                        for (i, det) in dets.iter().enumerate() {
                            row[i * m + a] = det.clone();
                        }
                        rows.push(row);
                    }
                }
            }
            let subspace = if rows.is_empty() {
                Subspace::full(dim_cn)
            } else {
                ExactMatrix::from_columns(dim_cn, &rows).transpose().kernel()
            };
            filtration.insert((p as i64, n as i64), subspace);
        }
    }
    let filtered = FilteredComplex::new(complex, filtration);
    Ok(HsInstance {
        g: g.clone(),
        h,
        v: v.clone(),
        filtered,
    })
}

impl HsInstance {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.h
    }

    pub fn coefficients(&self) -> &Representation {
        &self.v
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine::new(&self.filtered)
    }

    /// The E0/E1 oracle model at filtration level p: the CE complex of h
    /// with coefficients in ∧^p(g/h)* ⊗ V.
    pub fn page_model(&self, p: usize) -> Result<PageModel, SerreError> {
        let h_alg = self.h.as_lie_algebra();
        let dual_bott = bott_rep(&self.h).dual();
        let rep = dual_bott.exterior_power(p).tensor(&self.h.restrict_rep(&self.v));
        let complex = ce_complex(&h_alg, &rep)?;
        Ok(PageModel {
            h_alg,
            rep,
            complex,
            p,
        })
    }

    /// Evaluates pr(ω)(α_1..α_q) = ω(α_1..α_q, ·,...,·) on an ambient
    /// (p+q)-cochain, reading off the dual complement basis components.
    pub fn pr_eval(&self, p: i64, q: i64, omega: &[Scalar]) -> Vec<Scalar> {
        let n = (p + q) as usize;
        let m = self.v.carrier_dim();
        let amb_basis = ExteriorBasis::new(self.g.dim(), n);
        let comp = self.h.complement_indices();
        let id = ExactMatrix::identity(self.g.dim());
        let h_combos = combinations(self.h.dim(), q.max(0) as usize);
        let comp_combos = combinations(comp.len(), p.max(0) as usize);
        let mut out = Vec::with_capacity(h_combos.len() * comp_combos.len() * m);
        for h_combo in &h_combos {
            for comp_combo in &comp_combos {
                let mut args: Vec<Vec<Scalar>> =
                    h_combo.iter().map(|&i| self.h.basis().col(i)).collect();
                args.extend(comp_combo.iter().map(|&i| id.col(comp[i])));
                out.extend(eval_cochain(omega, &amb_basis, m, &args));
            }
        }
        out
    }

    /// Matrix of pr: E_0^{p,q} -> Ω^q(h, ∧^p(g/h)* ⊗ V) in the engine's E_0
    /// coordinates.
    pub fn e0_pr_map(&self, engine: &Engine<'_>, p: i64, q: i64) -> Result<ExactMatrix, SerreError> {
        let e0 = engine.e_entry(0, p, q)?;
        let m = self.v.carrier_dim();
        let model_dim = combinations(self.h.dim(), q.max(0) as usize).len()
            * combinations(self.h.complement_indices().len(), p.max(0) as usize).len()
            * m;
        let mut cols = Vec::with_capacity(e0.dim());
        for j in 0..e0.dim() {
            cols.push(self.pr_eval(p, q, &e0.representatives().col(j)));
        }
        Ok(ExactMatrix::from_columns(model_dim, &cols))
    }

    /// Verifies that pr is invertible and intertwines the engine's d_0 with
    /// the model CE differential.
    pub fn e0_check(&self, engine: &Engine<'_>, p: i64, q: i64) -> Result<(), SerreError> {
        let pr_q = self.e0_pr_map(engine, p, q)?;
        if pr_q.rows() != pr_q.cols() || pr_q.inverse().is_err() {
            return Err(SerreError::PrNotInvertible { p, q });
        }
        let pr_q1 = self.e0_pr_map(engine, p, q + 1)?;
        let d0 = engine.d_r_matrix(0, p, q)?;
        let model = self.page_model(p as usize)?;
        let d_model = model.complex.differential(q);
        if pr_q1.mul(&d0) != d_model.mul(&pr_q) {
            return Err(SerreError::PrNotIntertwining { p, q });
        }
        Ok(())
    }

    /// Engine E1 dimension vs the H^q(h, ∧^p(g/h)* ⊗ V) oracle, plus the
    /// descent of pr to an isomorphism on E1.
    pub fn e1_identification(
        &self,
        engine: &Engine<'_>,
        p: i64,
        q: i64,
    ) -> Result<IdentificationVerdict, SerreError> {
        let engine_dim = engine.e_entry(1, p, q)?.dim();
        let model = self.page_model(p.max(0) as usize)?;
        let oracle_dim = if p < 0 { 0 } else { model.complex.betti(q) };
        let mut ok = engine_dim == oracle_dim;
        if ok && engine_dim > 0 {
            // pr sends E1 representatives to closed model cochains; their
            // classes must span the model cohomology.
            let e1 = engine.e_entry(1, p, q)?;
            let d_model = model.complex.differential(q);
            let h_model = model.complex.cohomology(q)?;
            let mut classes = Vec::new();
            for j in 0..e1.dim() {
                let m_cochain = self.pr_eval(p, q, &e1.representatives().col(j));
                if !d_model.mul_vec(&m_cochain).iter().all(|x| x.is_zero()) {
                    ok = false;
                    break;
                }
                classes.push(h_model.project(&m_cochain));
            }
            if ok {
                let class_matrix = ExactMatrix::from_columns(h_model.dim(), &classes);
                ok = class_matrix.rank() == oracle_dim;
            }
        }
        Ok(IdentificationVerdict {
            p,
            q,
            engine_dim,
            oracle_dim,
            ok,
        })
    }

    /// Engine E2 dimension vs the H^p(g/h, H^q(h,V)) oracle (h must be an
    /// ideal).
    pub fn e2_identification(
        &self,
        engine: &Engine<'_>,
        p: i64,
        q: i64,
    ) -> Result<IdentificationVerdict, SerreError> {
        let engine_dim = engine.e_entry(2, p, q)?.dim();
        let oracle_dim = if q < 0 || p < 0 {
            0
        } else {
            let b = quotient_lie_algebra(&self.h)?;
            let (rho, _) = induced_rep_on_h(&self.h, &self.v, q)?;
            rho.check_flat(&b)?;
            ce_complex(&b, &rho)?.betti(p)
        };
        Ok(IdentificationVerdict {
            p,
            q,
            engine_dim,
            oracle_dim,
            ok: engine_dim == oracle_dim,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentificationVerdict {
    pub p: i64,
    pub q: i64,
    pub engine_dim: usize,
    pub oracle_dim: usize,
    pub ok: bool,
}

/// The oracle model for E0/E1 at filtration level p.
pub struct PageModel {
    pub h_alg: LieAlgebra,
    pub rep: Representation,
    pub complex: crate::cochain::CochainComplex,
    pub p: usize,
}

/// Lifts a cochain η in C^q(h, V) to C^q(g, V) by composing with the
/// projection g -> h along the deterministic complement (the extension by
/// zero on monomials with a complement factor).
pub fn lift_cochain(
    h: &Subalgebra,
    v_dim: usize,
    q: usize,
    eta: &[Scalar],
) -> Vec<Scalar> {
    let n = h.parent().dim();
    let k = h.dim();
    // projection onto h coordinates along the complement
    let comp = ExactMatrix::identity(n).select_columns(&h.complement_indices());
    let full = h.basis().hstack(&comp);
    let inv = full.inverse().expect("h + complement is a basis");
    let pi = inv.select_rows(&(0..k).collect::<Vec<_>>());

    let amb_basis = ExteriorBasis::new(n, q);
    let h_basis = ExteriorBasis::new(k, q);
    let mut out = vec![Scalar::zero(); amb_basis.len() * v_dim];
    for (i, combo) in amb_basis.combos().iter().enumerate() {
        let args: Vec<Vec<Scalar>> = combo.iter().map(|&l| pi.col(l)).collect();
        let value = eval_cochain(eta, &h_basis, v_dim, &args);
        for a in 0..v_dim {
            out[i * v_dim + a] = value[a].clone();
        }
    }
    out
}

/// Restriction of an ambient q-cochain to the subalgebra basis.
pub fn restrict_cochain(
    h: &Subalgebra,
    v_dim: usize,
    q: usize,
    omega: &[Scalar],
) -> Vec<Scalar> {
    let amb_basis = ExteriorBasis::new(h.parent().dim(), q);
    let h_basis = ExteriorBasis::new(h.dim(), q);
    let mut out = vec![Scalar::zero(); h_basis.len() * v_dim];
    for (i, combo) in h_basis.combos().iter().enumerate() {
        let args: Vec<Vec<Scalar>> = combo.iter().map(|&j| h.basis().col(j)).collect();
        let value = eval_cochain(omega, &amb_basis, v_dim, &args);
        for a in 0..v_dim {
            out[i * v_dim + a] = value[a].clone();
        }
    }
    out
}

/// Contraction ι_x ω of an ambient (q+1)-cochain with a vector given as a
/// standard basis index.
fn contract_with_basis_vector(
    n_amb: usize,
    v_dim: usize,
    q: usize,
    idx: usize,
    omega: &[Scalar],
) -> Vec<Scalar> {
    let basis_q1 = ExteriorBasis::new(n_amb, q + 1);
    let basis_q = ExteriorBasis::new(n_amb, q);
    let mut out = vec![Scalar::zero(); basis_q.len() * v_dim];
    for (i, combo) in basis_q.combos().iter().enumerate() {
        let mut indices = vec![idx];
        indices.extend_from_slice(combo);
        if let Some((pos, sign)) = basis_q1.lookup(&indices) {
            for a in 0..v_dim {
                let val = &omega[pos * v_dim + a] * Scalar::from_integer(sign.into());
                out[i * v_dim + a] = val;
            }
        }
    }
    out
}

/// The representation of g/h on H^q(h, V|_h) for an ideal h, realized on
/// the chosen cohomology basis via ∇_b [η] = [i*(ι_{σ(b)} d η̃)] with the
/// zero-extension lift η̃ and σ the deterministic complement splitting.
///
/// Returns the matrices together with the cohomology quotient fixing the
/// basis they act on.
pub fn induced_rep_on_h(
    h: &Subalgebra,
    v: &Representation,
    q: i64,
) -> Result<(Representation, QuotientSpace), SerreError> {
    h.is_ideal()?;
    let g = h.parent();
    let m = v.carrier_dim();
    let h_alg = h.as_lie_algebra();
    let vh = h.restrict_rep(v);
    let ch = ce_complex(&h_alg, &vh)?;
    let hq = ch.cohomology(q)?;
    let cg = ce_complex(g, v)?;
    let d_g = cg.differential(q);
    let d_h = ch.differential(q);
    let comp = h.complement_indices();
    let q_us = q.max(0) as usize;
    let mut matrices = Vec::with_capacity(comp.len());
    for (gen, &c_idx) in comp.iter().enumerate() {
        let mut cols = Vec::with_capacity(hq.dim());
        for j in 0..hq.dim() {
            let eta = hq.representatives().col(j);
            let lifted = lift_cochain(h, m, q_us, &eta);
            let d_lifted = d_g.mul_vec(&lifted);
            let contracted =
                contract_with_basis_vector(g.dim(), m, q_us, c_idx, &d_lifted);
            let restricted = restrict_cochain(h, m, q_us, &contracted);
            if !d_h.mul_vec(&restricted).iter().all(|x| x.is_zero()) {
                return Err(SerreError::ContractionNotClosed { generator: gen, q });
            }
            cols.push(hq.project(&restricted));
        }
        matrices.push(ExactMatrix::from_columns(hq.dim(), &cols));
    }
    Ok((Representation::new(comp.len(), hq.dim(), matrices), hq))
}
