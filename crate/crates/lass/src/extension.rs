//! Abelian extensions 0 -> l -> g -> B -> 0: splittings, the curvature
//! 2-form, the extension class in H²(B, l), the contraction i_γ, and the
//! verification that the page-two differential of the Hochschild-Serre
//! spectral sequence of l ⊂ g is (−1)^p i_[γ] after transport.

use serde::Serialize;
use thiserror::Error;

use crate::ce::{ce_complex, quotient_lie_algebra, CeError, LieAlgebra, Representation, Subalgebra};
use crate::cochain::{CochainComplex, CochainError};
use crate::exactq::{ExactMatrix, LinAlgError, Scalar};
use crate::multiindex::ExteriorBasis;
use crate::serre::{eval_cochain, hs_filtration, SerreError};
use crate::spectral::{Engine, SpectralError};
use num_traits::Zero;

/// Global sign of the contraction oracle relative to the engine's d₂,
/// calibrated once against the brute-force d₂ on the Heisenberg/center
/// instance (see `d2_heisenberg_calibration`): with the shuffle signs of
/// `contract_igamma` the engine's d₂ is −(−1)^p i_γ, so the oracle carries
/// this extra −1. Do not change one without re-running the calibration.
pub const IGAMMA_GLOBAL_SIGN: i64 = -1;

#[derive(Debug, Error)]
pub enum ExtError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Serre(#[from] Box<SerreError>),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("the ideal is not abelian: [l_{i}, l_{j}] != 0")]
    NotAbelian { i: usize, j: usize },
    #[error("coefficients do not restrict trivially to the ideal (generator {0})")]
    CoefficientsNotTrivialOnIdeal(usize),
    #[error("sigma is not a splitting: projection of sigma is not the identity")]
    BadSplitting,
    #[error("curvature value at ({i},{j}) escapes the ideal")]
    CurvatureEscapesIdeal { i: usize, j: usize },
    #[error("curvature is not closed for the induced B-action on l")]
    CurvatureNotClosed,
    #[error("transported E2 representative is not closed in the model at (p={p}, q={q})")]
    TransportNotClosed { p: i64, q: i64 },
    #[error("contraction image is not closed in the model at (p={p}, q={q})")]
    ContractionNotClosed { p: i64, q: i64 },
}

impl From<SerreError> for ExtError {
    fn from(e: SerreError) -> Self {
        ExtError::Serre(Box::new(e))
    }
}

/// g together with an abelian ideal l, the quotient B = g/l, a splitting
/// σ: B -> g, and coefficients V on which l acts by zero.
pub struct AbelianExtension {
    g: LieAlgebra,
    l: Subalgebra,
    b: LieAlgebra,
    sigma: ExactMatrix,
    v: Representation,
    nabla: Representation,
}

/// Alternating l-valued 2-form on B; coefficients are pair-major over the
/// lex basis of ∧²B, times l-coordinates.
#[derive(Debug, Clone)]
pub struct CurvatureForm {
    pairs: ExteriorBasis,
    l_dim: usize,
    coeffs: Vec<Scalar>,
}

impl CurvatureForm {
    /// γ(b_i, b_j) in l-coordinates, for i < j.
    pub fn value(&self, i: usize, j: usize) -> &[Scalar] {
        let pos = self.pairs.position(&[i, j]);
        &self.coeffs[pos * self.l_dim..(pos + 1) * self.l_dim]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// The class [γ] in H²(B, l), with the coordinates taken in the chosen
/// cohomology basis.
#[derive(Debug, Clone)]
pub struct ExtensionClass {
    pub coords: Vec<Scalar>,
}

impl ExtensionClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct D2Verdict {
    pub pq: [i64; 2],
    pub engine_rank: usize,
    pub oracle_rank: usize,
    pub equal: bool,
}

impl AbelianExtension {
    /// Builds the extension with the deterministic complement splitting.
    pub fn new(g: &LieAlgebra, l: Subalgebra, v: &Representation) -> Result<Self, ExtError> {
        Self::with_splitting(g, l, v, None)
    }

    pub fn with_splitting(
        g: &LieAlgebra,
        l: Subalgebra,
        v: &Representation,
        sigma: Option<ExactMatrix>,
    ) -> Result<Self, ExtError> {
        l.is_ideal()?;
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let w = g.bracket(&l.basis().col(i), &l.basis().col(j));
                if !w.iter().all(|x| x.is_zero()) {
                    return Err(ExtError::NotAbelian { i, j });
                }
            }
        }
        for t in 0..l.dim() {
            if !v.action_of(&l.basis().col(t)).is_zero() {
                return Err(ExtError::CoefficientsNotTrivialOnIdeal(t));
            }
        }
        let b = quotient_lie_algebra(&l)?;
        let sigma = sigma.unwrap_or_else(|| {
            ExactMatrix::identity(g.dim()).select_columns(&l.complement_indices())
        });
        if l.complement_projection().mul(&sigma) != ExactMatrix::identity(b.dim()) {
            return Err(ExtError::BadSplitting);
        }
        // B-action on l: nabla_b x = [σ(b), x]; flat because l is abelian.
        let mut matrices = Vec::with_capacity(b.dim());
        for j in 0..b.dim() {
            let mut cols = Vec::with_capacity(l.dim());
            for t in 0..l.dim() {
                let w = g.bracket(&sigma.col(j), &l.basis().col(t));
                let coords = l
                    .basis()
                    .solve(&w)
                    .ok_or(ExtError::CurvatureEscapesIdeal { i: j, j: t })?;
                cols.push(coords);
            }
            matrices.push(ExactMatrix::from_columns(l.dim(), &cols));
        }
        let nabla = Representation::new(b.dim(), l.dim(), matrices);
        nabla.check_flat(&b)?;
        Ok(AbelianExtension {
            g: g.clone(),
            l,
            b,
            sigma,
            v: v.clone(),
            nabla,
        })
    }

    pub fn total(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn ideal(&self) -> &Subalgebra {
        &self.l
    }

    pub fn quotient(&self) -> &LieAlgebra {
        &self.b
    }

    pub fn splitting(&self) -> &ExactMatrix {
        &self.sigma
    }

    pub fn nabla(&self) -> &Representation {
        &self.nabla
    }

    /// γ(b_i, b_j) = [σb_i, σb_j]_g − σ([b_i, b_j]_B); closed for ∇.
    pub fn curvature(&self) -> Result<CurvatureForm, ExtError> {
        let nb = self.b.dim();
        let nl = self.l.dim();
        let pairs = ExteriorBasis::new(nb, 2);
        let mut coeffs = Vec::with_capacity(pairs.len() * nl);
        for combo in pairs.combos() {
            let (i, j) = (combo[0], combo[1]);
            let mut w = self.g.bracket(&self.sigma.col(i), &self.sigma.col(j));
            let proj = self.sigma.mul_vec(self.b.bracket_coeffs(i, j));
            for (a, p) in w.iter_mut().zip(proj) {
                *a = &*a - p;
            }
            let coords = self
                .l
                .basis()
                .solve(&w)
                .ok_or(ExtError::CurvatureEscapesIdeal { i, j })?;
            coeffs.extend(coords);
        }
        let gamma = CurvatureForm {
            pairs,
            l_dim: nl,
            coeffs,
        };
        let d2 = ce_complex(&self.b, &self.nabla)?.differential(2);
        if !d2.mul_vec(&gamma.coeffs).iter().all(|x| x.is_zero()) {
            return Err(ExtError::CurvatureNotClosed);
        }
        Ok(gamma)
    }

    /// [γ] ∈ H²(B, l); zero iff some shifted splitting is flat.
    pub fn extension_class(&self) -> Result<ExtensionClass, ExtError> {
        let gamma = self.curvature()?;
        let h2 = ce_complex(&self.b, &self.nabla)?.cohomology(2)?;
        Ok(ExtensionClass {
            coords: h2.project(&gamma.coeffs),
        })
    }

    /// The B-representation on Ω^q(l, V) = ∧^q l* ⊗ V; because l acts on V
    /// by zero and is abelian, this space IS H^q(l, V).
    pub fn coefficient_rep(&self, q: usize) -> Representation {
        let v_on_b = Representation::new(
            self.b.dim(),
            self.v.carrier_dim(),
            (0..self.b.dim())
                .map(|j| self.v.action_of(&self.sigma.col(j)))
                .collect(),
        );
        self.nabla.dual().exterior_power(q).tensor(&v_on_b)
    }

    /// CE complex of B with coefficients in Ω^q(l, V).
    pub fn model_complex(&self, q: usize) -> Result<CochainComplex, ExtError> {
        Ok(ce_complex(&self.b, &self.coefficient_rep(q))?)
    }

    /// Matrix of i_γ: C^p(B, Ω^q(l,V)) -> C^{p+2}(B, Ω^{q−1}(l,V)),
    /// (i_γω)(b_1..b_{p+2}) = Σ_{i<j} (−1)^{i+j−1} ι_{γ(b_i,b_j)} ω(..b̂_i..b̂_j..)
    /// with ι inserting into the first ∧•l*-slot. For q = 0 the target is 0.
    pub fn contract_igamma(&self, gamma: &CurvatureForm, p: usize, q: usize) -> ExactMatrix {
        let nb = self.b.dim();
        let nl = self.l.dim();
        let m = self.v.carrier_dim();
        let bp = ExteriorBasis::new(nb, p);
        let bp2 = ExteriorBasis::new(nb, p + 2);
        let lq = ExteriorBasis::new(nl, q);
        let src_dim = bp.len() * lq.len() * m;
        if q == 0 {
            return ExactMatrix::zeros(bp2.len() * m * 0, src_dim);
        }
        let lq1 = ExteriorBasis::new(nl, q - 1);
        let mut out = ExactMatrix::zeros(bp2.len() * lq1.len() * m, src_dim);
        for (pos_out, big) in bp2.combos().iter().enumerate() {
            for i in 0..p + 2 {
                for j in i + 1..p + 2 {
                    let rest: Vec<usize> = big
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| *t != i && *t != j)
                        .map(|(_, &x)| x)
                        .collect();
                    let pos_in = bp.position(&rest);
                    let pair_sign = if (i + j) % 2 == 0 { -1i64 } else { 1 };
                    let x = gamma.value(big[i], big[j]);
                    // ι_x(ξ_L ⊗ v) = Σ_t (−1)^t x^{L_t} ξ_{L\t} ⊗ v
                    for (pos_l, lcombo) in lq.combos().iter().enumerate() {
                        for (t, &lt) in lcombo.iter().enumerate() {
                            if x[lt].is_zero() {
                                continue;
                            }
                            let reduced: Vec<usize> = lcombo
                                .iter()
                                .enumerate()
                                .filter(|(s, _)| *s != t)
                                .map(|(_, &y)| y)
                                .collect();
                            let pos_l1 = lq1.position(&reduced);
                            let t_sign = if t % 2 == 0 { 1i64 } else { -1 };
                            let c = &x[lt] * Scalar::from_integer((pair_sign * t_sign).into());
                            for a in 0..m {
                                let row = (pos_out * lq1.len() + pos_l1) * m + a;
                                let col = (pos_in * lq.len() + pos_l) * m + a;
                                let acc = out.get(row, col) + &c;
                                out.set(row, col, acc);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Evaluates an ambient (p+q)-cochain into C^p(B, Ω^q(l,V)) by feeding
    /// it p splitting lifts followed by q ideal basis vectors.
    pub fn model_eval(&self, p: usize, q: usize, omega: &[Scalar]) -> Vec<Scalar> {
        let m = self.v.carrier_dim();
        let amb = ExteriorBasis::new(self.g.dim(), p + q);
        let bp = ExteriorBasis::new(self.b.dim(), p);
        let lq = ExteriorBasis::new(self.l.dim(), q);
        let mut out = Vec::with_capacity(bp.len() * lq.len() * m);
        for pcombo in bp.combos() {
            for lcombo in lq.combos() {
                let mut args: Vec<Vec<Scalar>> =
                    pcombo.iter().map(|&i| self.sigma.col(i)).collect();
                args.extend(lcombo.iter().map(|&t| self.l.basis().col(t)));
                out.extend(eval_cochain(omega, &amb, m, &args));
            }
        }
        out
    }

    /// Transport of engine E₂^{p,q} representatives into H^p(B, Ω^q(l,V)):
    /// evaluate, assert closedness in the model, project to cohomology.
    fn transport(
        &self,
        engine: &Engine<'_>,
        p: i64,
        q: i64,
    ) -> Result<ExactMatrix, ExtError> {
        let e2 = engine.e_entry(2, p, q)?;
        let cq = self.model_complex(q as usize)?;
        let hp = cq.cohomology(p)?;
        let d_model = cq.differential(p);
        let mut cols = Vec::with_capacity(e2.dim());
        for j in 0..e2.dim() {
            let phi = self.model_eval(p as usize, q as usize, &e2.representatives().col(j));
            if !d_model.mul_vec(&phi).iter().all(|x| x.is_zero()) {
                return Err(ExtError::TransportNotClosed { p, q });
            }
            cols.push(hp.project(&phi));
        }
        Ok(ExactMatrix::from_columns(hp.dim(), &cols))
    }

    /// Verifies d₂ = (−1)^p i_[γ] at every (p,q) after transporting the
    /// engine's page-two entries into the H^p(B, Ω^q(l,V)) model.
    pub fn d2_check(&self) -> Result<Vec<D2Verdict>, ExtError> {
        let gamma = self.curvature()?;
        let inst = hs_filtration(&self.g, self.l.clone(), &self.v)?;
        inst.filtered().check_filtration()?;
        let engine = inst.engine();
        let mut verdicts = Vec::new();
        for p in 0..=self.b.dim() as i64 {
            for q in 0..=self.l.dim() as i64 {
                let d2 = engine.d_r_matrix(2, p, q)?;
                let engine_rank = d2.rank();
                if q == 0 || engine.e_entry(2, p, q)?.dim() == 0 {
                    // target Ω^{−1} := 0, or nothing to check
                    verdicts.push(D2Verdict {
                        pq: [p, q],
                        engine_rank,
                        oracle_rank: 0,
                        equal: engine_rank == 0,
                    });
                    continue;
                }
                let t_src = self.transport(&engine, p, q)?;
                let t_tgt = self.transport(&engine, p + 2, q - 1)?;
                let lhs = t_tgt.mul(&d2);
                // oracle: project i_γ of the evaluated representatives
                let igamma = self.contract_igamma(&gamma, p as usize, q as usize);
                let cq1 = self.model_complex(q as usize - 1)?;
                let hp2 = cq1.cohomology(p + 2)?;
                let d_tgt = cq1.differential(p + 2);
                let e2 = engine.e_entry(2, p, q)?;
                let sign = IGAMMA_GLOBAL_SIGN * if p % 2 == 0 { 1 } else { -1 };
                let mut cols = Vec::with_capacity(e2.dim());
                for j in 0..e2.dim() {
                    let phi = self.model_eval(p as usize, q as usize, &e2.representatives().col(j));
                    let contracted = igamma.mul_vec(&phi);
                    if !d_tgt.mul_vec(&contracted).iter().all(|x| x.is_zero()) {
                        return Err(ExtError::ContractionNotClosed { p, q });
                    }
                    cols.push(hp2.project(&contracted));
                }
                let rhs =
                    ExactMatrix::from_columns(hp2.dim(), &cols).scale(&Scalar::from_integer(sign.into()));
                verdicts.push(D2Verdict {
                    pq: [p, q],
                    engine_rank,
                    oracle_rank: rhs.rank(),
                    equal: lhs == rhs && t_src.rank() == t_src.cols(),
                });
            }
        }
        Ok(verdicts)
    }

    /// Cochain-map identity: d ∘ i_γ = − i_γ ∘ d on C^p(B, Ω^q(l,V)), i.e.
    /// ω ↦ (−1)^p i_γ ω commutes with the model differentials.
    pub fn igamma_cochain_map_check(
        &self,
        gamma: &CurvatureForm,
        p: usize,
        q: usize,
    ) -> Result<bool, ExtError> {
        if q == 0 {
            return Ok(true);
        }
        let cq = self.model_complex(q)?;
        let cq1 = self.model_complex(q - 1)?;
        let lhs = cq1.differential(p as i64 + 2).mul(&self.contract_igamma(gamma, p, q));
        let rhs = self
            .contract_igamma(gamma, p + 1, q)
            .mul(&cq.differential(p as i64))
            .scale(&Scalar::from_integer((-1).into()));
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::heisenberg3;
    use crate::exactq::qi;

    fn trivial(n: usize, m: usize) -> Representation {
        Representation::trivial(n, m)
    }

    fn heisenberg_center() -> AbelianExtension {
        let g = heisenberg3();
        let l = Subalgebra::from_indices(g.clone(), &[2]).unwrap();
        AbelianExtension::new(&g, l, &trivial(3, 1)).unwrap()
    }

    /// 5-dim nilpotent: [e1,e2] = e4, [e1,e4] = e5; l = span{e4,e5},
    /// B = Q³ abelian with a nontrivial ∇ and γ(b1,b2) = e4.
    fn fivedim() -> (LieAlgebra, Subalgebra) {
        let g = LieAlgebra::from_sparse(
            5,
            &[(0, 1, vec![(3, qi(1))]), (0, 3, vec![(4, qi(1))])],
            None,
        );
        g.check_jacobi().unwrap();
        let l = Subalgebra::from_indices(g.clone(), &[3, 4]).unwrap();
        (g, l)
    }

    #[test]
    fn direct_product_has_zero_curvature_and_class() {
        // g = Q² ⊕ Q (all brackets zero)
        let g = LieAlgebra::abelian(3);
        let l = Subalgebra::from_indices(g.clone(), &[2]).unwrap();
        let ext = AbelianExtension::new(&g, l, &trivial(3, 1)).unwrap();
        let gamma = ext.curvature().unwrap();
        assert!(gamma.is_zero());
        assert!(ext.extension_class().unwrap().is_zero());
        for v in ext.d2_check().unwrap() {
            assert!(v.equal && v.engine_rank == 0 && v.oracle_rank == 0);
        }
    }

    #[test]
    fn heisenberg_curvature_is_the_bracket_cocycle() {
        let ext = heisenberg_center();
        let gamma = ext.curvature().unwrap();
        assert_eq!(gamma.value(0, 1), &[qi(1)]);
        let class = ext.extension_class().unwrap();
        assert_eq!(class.coords.len(), 1);
        assert!(!class.is_zero());
    }

    #[test]
    fn shifted_splitting_same_class() {
        // σ' = σ + λ with λ(x̄) = z lands in the same class (here even the
        // same γ: B is abelian and ∇ trivial).
        let g = heisenberg3();
        let l = Subalgebra::from_indices(g.clone(), &[2]).unwrap();
        let mut sigma = ExactMatrix::identity(3).select_columns(&[0, 1]);
        sigma.set(2, 0, qi(1));
        let ext = AbelianExtension::with_splitting(&g, l, &trivial(3, 1), Some(sigma)).unwrap();
        let base = heisenberg_center();
        assert_eq!(
            ext.curvature().unwrap().coeffs(),
            base.curvature().unwrap().coeffs()
        );
        assert_eq!(
            ext.extension_class().unwrap().coords,
            base.extension_class().unwrap().coords
        );
    }

    #[test]
    fn aff1_class_vanishes() {
        let g = crate::ce::aff1();
        let l = Subalgebra::from_indices(g.clone(), &[1]).unwrap();
        let ext = AbelianExtension::new(&g, l, &trivial(2, 1)).unwrap();
        assert!(ext.extension_class().unwrap().is_zero());
        for v in ext.d2_check().unwrap() {
            assert!(v.equal, "{v:?}");
        }
    }

    #[test]
    fn fivedim_curvature_and_cochain_map() {
        let (g, l) = fivedim();
        let ext = AbelianExtension::new(&g, l, &trivial(5, 1)).unwrap();
        let gamma = ext.curvature().unwrap();
        assert_eq!(gamma.value(0, 1), &[qi(1), qi(0)]);
        assert_eq!(gamma.value(0, 2), &[qi(0), qi(0)]);
        // ∇_{b1} e4 = e5
        assert_eq!(ext.nabla().matrix(0).get(1, 0), &qi(1));
        for p in 0..=1usize {
            for q in 1..=2usize {
                assert!(
                    ext.igamma_cochain_map_check(&gamma, p, q).unwrap(),
                    "cochain map fails at (p={p}, q={q})"
                );
            }
        }
    }

    #[test]
    fn fivedim_d2_check() {
        let (g, l) = fivedim();
        let ext = AbelianExtension::new(&g, l, &trivial(5, 1)).unwrap();
        for v in ext.d2_check().unwrap() {
            assert!(v.equal, "{v:?}");
        }
    }

    #[test]
    fn d2_heisenberg_calibration() {
        // The single calibration point for the i_γ sign convention: the
        // transported engine d₂ at (0,1) must equal +(−1)^0 i_[γ].
        let ext = heisenberg_center();
        let verdicts = ext.d2_check().unwrap();
        let at01 = verdicts.iter().find(|v| v.pq == [0, 1]).unwrap();
        assert_eq!(at01.engine_rank, 1);
        assert_eq!(at01.oracle_rank, 1);
        assert!(at01.equal);
        for v in &verdicts {
            assert!(v.equal, "{v:?}");
        }
    }

    #[test]
    fn heisenberg_igamma_on_zeta_is_nonzero() {
        // ω = ζ the generator of Ω⁰(B, l*): i_γω = ξ̄_x ∧ ξ̄_y, nonzero.
        let ext = heisenberg_center();
        let gamma = ext.curvature().unwrap();
        let m = ext.contract_igamma(&gamma, 0, 1);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(!m.get(0, 0).is_zero());
    }

    #[test]
    fn rejects_nonabelian_ideal() {
        // In aff(1) ⊕ aff(1)... simpler: the full heisenberg as an ideal of
        // itself is NOT abelian.
        let g = heisenberg3();
        let l = Subalgebra::from_indices(g.clone(), &[0, 1, 2]).unwrap();
        assert!(matches!(
            AbelianExtension::new(&g, l, &trivial(3, 1)),
            Err(ExtError::NotAbelian { .. })
        ));
    }

    #[test]
    fn rejects_nontrivial_ideal_action_on_v() {
        let g = crate::ce::aff1();
        let l = Subalgebra::from_indices(g.clone(), &[1]).unwrap();
        // V = Q with e2 acting by 1
        let v = Representation::new(
            2,
            1,
            vec![ExactMatrix::zeros(1, 1), ExactMatrix::identity(1)],
        );
        assert!(matches!(
            AbelianExtension::new(&g, l, &v),
            Err(ExtError::CoefficientsNotTrivialOnIdeal(_))
        ));
    }
}
