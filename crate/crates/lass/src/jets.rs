//! Polynomial Lie algebroids over a vector space W whose origin is
//! invariant (the anchor vanishes at 0), their order-k jet complexes
//! ∧^• g* ⊗ Pol^{≤k}(W) ⊗ V with the maximal-ideal filtration, and the
//! first-page / linearisable-degeneration verdicts.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::ce::{ce_complex, CeError, LieAlgebra, Representation};
use crate::cochain::{CochainComplex, CochainError, FilteredComplex, GradedSpace};
use crate::exactq::{qi, ExactMatrix, LinAlgError, Scalar};
use crate::multiindex::{exponents_of_degree, ExteriorBasis};
use crate::serre::IdentificationVerdict;
use crate::spectral::{Engine, SpectralError};
use num_traits::Zero;

#[derive(Debug, Error)]
pub enum JetError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("anchor of generator {0} does not vanish at the origin")]
    AnchorNotVanishing(usize),
    #[error("polynomial coefficient of degree > {k} in generator {gen}")]
    DegreeTooHigh { gen: usize, k: usize },
    #[error("structure functions are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("truncated Jacobi identity fails at generators ({0}, {1}, {2})")]
    JacobiFailed(usize, usize, usize),
    #[error("anchor is not bracket-compatible at generators ({0}, {1})")]
    AnchorCompatFailed(usize, usize),
    #[error("instance is not a linear action algebroid")]
    NotLinear,
    #[error("E1 degeneration fails: nonzero d_{r} on a linear instance")]
    NotDegenerate { r: i64 },
    #[error("total cohomology does not match the product formula in degree {0}")]
    ProductFormulaMismatch(i64),
}

/// Sparse polynomial in m variables over Q; keys are exponent vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(expo: Vec<usize>, coeff: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(expo, coeff);
        p
    }

    pub fn add_term(&mut self, expo: Vec<usize>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo).or_insert_with(Scalar::zero);
        *entry = &*entry + coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .min()
            .unwrap_or(0)
    }

    /// Drops all terms of total degree > k.
    pub fn truncate(&self, k: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.iter().sum::<usize>() <= k {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// ∂/∂w_i.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * qi(e[i] as i64));
        }
        out
    }

    pub fn coeff(&self, expo: &[usize]) -> Scalar {
        self.terms.get(expo).cloned().unwrap_or_else(Scalar::zero)
    }
}

/// A polynomial Lie algebroid over W = Q^m with the origin invariant,
/// truncated at jet order k: anchor fields P_a = Σ_i P_a^i(w) ∂_i with
/// P_a(0) = 0, structure functions c_{ab}^d(w).
#[derive(Debug, Clone)]
pub struct PolyJetAlgebroid {
    fiber_dim: usize,
    base_dim: usize,
    order: usize,
    anchor: Vec<Vec<Poly>>,
    c: Vec<Vec<Vec<Poly>>>,
}

impl PolyJetAlgebroid {
    pub fn new(
        fiber_dim: usize,
        base_dim: usize,
        order: usize,
        anchor: Vec<Vec<Poly>>,
        c: Vec<Vec<Vec<Poly>>>,
    ) -> Result<Self, JetError> {
        assert_eq!(anchor.len(), fiber_dim);
        assert_eq!(c.len(), fiber_dim);
        for (a, field) in anchor.iter().enumerate() {
            assert_eq!(field.len(), base_dim);
            for p in field {
                if !p.is_zero() && p.min_degree() == 0 {
                    return Err(JetError::AnchorNotVanishing(a));
                }
                if p.max_degree() > order.max(0) {
                    return Err(JetError::DegreeTooHigh { gen: a, k: order });
                }
            }
        }
        for a in 0..fiber_dim {
            assert_eq!(c[a].len(), fiber_dim);
            for b in 0..fiber_dim {
                assert_eq!(c[a][b].len(), fiber_dim);
                for d in 0..fiber_dim {
                    if c[a][b][d].max_degree() > order {
                        return Err(JetError::DegreeTooHigh { gen: a, k: order });
                    }
                    if c[a][b][d].add(&c[b][a][d]) != Poly::zero() {
                        return Err(JetError::NotAntisymmetric(a, b));
                    }
                }
            }
        }
        Ok(PolyJetAlgebroid {
            fiber_dim,
            base_dim,
            order,
            anchor,
            c,
        })
    }

    /// g ⋉ W for a flat representation ρ of g on W: the anchor of e_a is
    /// the linear field with matrix −ρ(a) (fixed by the vertical-lift
    /// identity [X, V^ver] = (∇_aV)^ver; d² = 0 on the sl2 instance pins
    /// this sign), and constant structure functions.
    pub fn action_algebroid(
        g: &LieAlgebra,
        rho: &Representation,
        order: usize,
    ) -> Result<Self, JetError> {
        rho.check_flat(g)?;
        let n = g.dim();
        let m = rho.carrier_dim();
        let mut anchor = Vec::with_capacity(n);
        for a in 0..n {
            let mat = rho.matrix(a);
            let mut field = Vec::with_capacity(m);
            for i in 0..m {
                let mut p = Poly::zero();
                for j in 0..m {
                    let mut e = vec![0usize; m];
                    e[j] = 1;
                    p.add_term(e, -mat.get(i, j).clone());
                }
                field.push(p.truncate(order));
            }
            anchor.push(field);
        }
        let mut c = vec![vec![vec![Poly::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for (d, coeff) in g.bracket_coeffs(a, b).iter().enumerate() {
                    c[a][b][d] = Poly::monomial(vec![0; m], coeff.clone());
                }
            }
        }
        PolyJetAlgebroid::new(n, m, order, anchor, c)
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn anchor_field(&self, gen: usize) -> &[Poly] {
        &self.anchor[gen]
    }

    pub fn structure_function(&self, a: usize, b: usize, d: usize) -> &Poly {
        &self.c[a][b][d]
    }

    /// True when the anchor is exactly linear and the structure functions
    /// are constant (an action algebroid).
    pub fn is_linear(&self) -> bool {
        self.anchor
            .iter()
            .flatten()
            .all(|p| p.is_zero() || p.max_degree() <= 1)
            && self
                .c
                .iter()
                .flatten()
                .flatten()
                .all(|p| p.is_zero() || p.max_degree() == 0)
    }

    /// Linearization at 0: the fiber Lie algebra (constant terms of c) and
    /// the induced representation on W* (matrices B_aᵀ, B_a = linear part
    /// of the anchor of e_a; Pol^j then carries S^j of this).
    pub fn linearization(&self) -> (LieAlgebra, Representation) {
        let n = self.fiber_dim;
        let m = self.base_dim;
        let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    brackets[a][b][d] = self.c[a][b][d].coeff(&vec![0; m]);
                }
            }
        }
        let g0 = LieAlgebra::new(n, brackets, None);
        let mut matrices = Vec::with_capacity(n);
        for a in 0..n {
            // (B_a)ᵀ[i][j] = coefficient of w_i in P_a^j
            let mut mt = ExactMatrix::zeros(m, m);
            for j in 0..m {
                for i in 0..m {
                    let mut e = vec![0usize; m];
                    e[i] = 1;
                    mt.set(i, j, self.anchor[a][j].coeff(&e));
                }
            }
            matrices.push(mt);
        }
        (g0, Representation::new(n, m, matrices))
    }

    /// The same algebroid truncated at a (lower) jet order.
    pub fn with_order(&self, order: usize) -> Result<Self, JetError> {
        PolyJetAlgebroid::new(
            self.fiber_dim,
            self.base_dim,
            order,
            self.anchor
                .iter()
                .map(|f| f.iter().map(|p| p.truncate(order)).collect())
                .collect(),
            self.c
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|col| col.iter().map(|p| p.truncate(order)).collect())
                        .collect()
                })
                .collect(),
        )
    }

    /// L_{♯a} f = Σ_i P_a^i ∂_i f, truncated at the jet order.
    pub fn lie_derivative(&self, gen: usize, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in 0..self.base_dim {
            out = out.add(&self.anchor[gen][i].mul(&f.deriv(i)));
        }
        out.truncate(self.order)
    }

    /// Antisymmetry, truncated Jacobi for the generator brackets, and
    /// anchor-bracket compatibility, all modulo degree > k.
    pub fn check_axioms_mod(&self) -> Result<(), JetError> {
        let n = self.fiber_dim;
        let k = self.order;
        // Jacobiator(e_a,e_b,e_c) = Σ_cyc [e_a, [e_b, e_c]] with
        // [e_a, f e_d] = f [e_a, e_d] + (L_{♯a} f) e_d.
        for a in 0..n {
            for b in a + 1..n {
                for cc in b + 1..n {
                    let mut total = vec![Poly::zero(); n];
                    for &(x, y, z) in &[(a, b, cc), (b, cc, a), (cc, a, b)] {
                        for d in 0..n {
                            let f = &self.c[y][z][d];
                            if f.is_zero() {
                                continue;
                            }
                            for e in 0..n {
                                total[e] = total[e]
                                    .add(&f.mul(&self.c[x][d][e]).truncate(k));
                            }
                            total[d] = total[d].add(&self.lie_derivative(x, f));
                        }
                    }
                    if total.iter().any(|p| !p.is_zero()) {
                        return Err(JetError::JacobiFailed(a, b, cc));
                    }
                }
            }
        }
        // ♯[e_a, e_b] = [♯e_a, ♯e_b] mod I^{k+1}
        for a in 0..n {
            for b in a + 1..n {
                for i in 0..self.base_dim {
                    let mut lhs = Poly::zero();
                    for d in 0..n {
                        lhs = lhs.add(&self.c[a][b][d].mul(&self.anchor[d][i]).truncate(k));
                    }
                    let rhs = self
                        .lie_derivative(a, &self.anchor[b][i])
                        .add(&self.lie_derivative(b, &self.anchor[a][i]).scale(&qi(-1)))
                        .truncate(k);
                    if lhs.truncate(k) != rhs {
                        return Err(JetError::AnchorCompatFailed(a, b));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Graded-lex monomial basis of Pol^{≤k}(Q^m) with an index map.
fn monomial_basis(m: usize, k: usize) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let mut monos = Vec::new();
    for d in 0..=k {
        monos.extend(exponents_of_degree(m, d));
    }
    let index = monos
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    (monos, index)
}

/// The jet complex C^t = ∧^t g* ⊗ Pol^{≤k}(W) ⊗ V with the truncated
/// Koszul differential, filtered by polynomial degree.
pub struct JetComplex {
    filtered: FilteredComplex,
    monomials: Vec<Vec<usize>>,
    v_dim: usize,
}

impl JetComplex {
    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine::new(&self.filtered)
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.filtered.complex().betti_vector()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }
}

/// Builds the jet complex of A with constant coefficients V (a
/// representation of the fiber algebra).
pub fn jet_complex(a: &PolyJetAlgebroid, v: &Representation) -> Result<JetComplex, JetError> {
    assert_eq!(v.algebra_dim(), a.fiber_dim());
    let n = a.fiber_dim();
    let k = a.order();
    let dv = v.carrier_dim();
    let (monos, mono_idx) = monomial_basis(a.base_dim(), k);
    let nm = monos.len();

    let mut spaces = GradedSpace::new();
    let bases: Vec<ExteriorBasis> = (0..=n).map(|t| ExteriorBasis::new(n, t)).collect();
    for (t, basis) in bases.iter().enumerate() {
        spaces.set_dim(t as i64, basis.len() * nm * dv);
    }

    let mut differentials = BTreeMap::new();
    for t in 0..n {
        let src = &bases[t];
        let tgt = &bases[t + 1];
        let mut d = ExactMatrix::zeros(tgt.len() * nm * dv, src.len() * nm * dv);
        let mut add = |row: usize, col: usize, val: Scalar| {
            if !val.is_zero() {
                let acc = d.get(row, col) + val;
                d.set(row, col, acc);
            }
        };
        for (pos_i, combo_i) in src.combos().iter().enumerate() {
            for (mi, alpha) in monos.iter().enumerate() {
                let alpha_poly = Poly::monomial(alpha.clone(), qi(1));
                for (pos_j, combo_j) in tgt.combos().iter().enumerate() {
                    // ∇ terms: drop one argument of J, must leave I
                    for (l, &gen) in combo_j.iter().enumerate() {
                        let rest: Vec<usize> = combo_j
                            .iter()
                            .enumerate()
                            .filter(|(s, _)| *s != l)
                            .map(|(_, &x)| x)
                            .collect();
                        if rest != *combo_i {
                            continue;
                        }
                        let sgn = if l % 2 == 0 { qi(1) } else { qi(-1) };
                        // Lie-derivative part on the monomial
                        let lf = a.lie_derivative(gen, &alpha_poly);
                        for (e, cf) in lf.terms() {
                            let row_m = mono_idx[e];
                            for b in 0..dv {
                                add(
                                    (pos_j * nm + row_m) * dv + b,
                                    (pos_i * nm + mi) * dv + b,
                                    cf * &sgn,
                                );
                            }
                        }
                        // coefficient action on V
                        let rho = v.matrix(gen);
                        for b2 in 0..dv {
                            for b in 0..dv {
                                add(
                                    (pos_j * nm + mi) * dv + b2,
                                    (pos_i * nm + mi) * dv + b,
                                    rho.get(b2, b) * &sgn,
                                );
                            }
                        }
                    }
                    // bracket-insertion terms
                    for l in 0..t + 1 {
                        for s in l + 1..t + 1 {
                            let rest: Vec<usize> = combo_j
                                .iter()
                                .enumerate()
                                .filter(|(u, _)| *u != l && *u != s)
                                .map(|(_, &x)| x)
                                .collect();
                            let pair_sgn = if (l + s) % 2 == 0 { 1i64 } else { -1 };
                            for dgen in 0..n {
                                let cpoly = a.structure_function(combo_j[l], combo_j[s], dgen);
                                if cpoly.is_zero() {
                                    continue;
                                }
                                let mut indices = vec![dgen];
                                indices.extend_from_slice(&rest);
                                let Some((pos, ins_sgn)) = src.lookup(&indices) else {
                                    continue;
                                };
                                if pos != pos_i {
                                    continue;
                                }
                                let product = cpoly.mul(&alpha_poly).truncate(k);
                                for (e, cf) in product.terms() {
                                    let row_m = mono_idx[e];
                                    let sgn = qi(pair_sgn * ins_sgn);
                                    for b in 0..dv {
                                        add(
                                            (pos_j * nm + row_m) * dv + b,
                                            (pos_i * nm + mi) * dv + b,
                                            cf * &sgn,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        differentials.insert(t as i64, d);
    }
    let complex = CochainComplex::new(spaces, differentials);
    complex.check_complex()?;

    // F^p = span of basis elements with monomial degree ≥ p
    let mut filtration = BTreeMap::new();
    for (t, basis) in bases.iter().enumerate() {
        let dim_t = basis.len() * nm * dv;
        for p in 1..=k {
            let mut vectors = Vec::new();
            for pos in 0..basis.len() {
                for (mi, alpha) in monos.iter().enumerate() {
                    if alpha.iter().sum::<usize>() >= p {
                        for b in 0..dv {
                            let mut col = vec![Scalar::zero(); dim_t];
                            col[(pos * nm + mi) * dv + b] = qi(1);
                            vectors.push(col);
                        }
                    }
                }
            }
            filtration.insert(
                (p as i64, t as i64),
                crate::exactq::Subspace::from_vectors(dim_t, &vectors),
            );
        }
    }
    let filtered = FilteredComplex::new(complex, filtration);
    filtered.check_filtration()?;
    Ok(JetComplex {
        filtered,
        monomials: monos,
        v_dim: dv,
    })
}

/// E₁^{p,q} vs the oracle H^{p+q}(g₀, S^p W* ⊗ V) for p ≤ k (0 beyond).
pub fn e1_invariant_check(
    a: &PolyJetAlgebroid,
    v: &Representation,
) -> Result<Vec<IdentificationVerdict>, JetError> {
    let jc = jet_complex(a, v)?;
    let engine = jc.engine();
    let (g0, w_dual) = a.linearization();
    g0.check_jacobi()?;
    w_dual.check_flat(&g0)?;
    let k = a.order() as i64;
    let n = a.fiber_dim() as i64;
    let mut verdicts = Vec::new();
    for p in 0..=k + 1 {
        let oracle_complex = if p <= k {
            Some(ce_complex(&g0, &w_dual.sym_power(p as usize).tensor(v))?)
        } else {
            None
        };
        for t in 0..=n {
            let q = t - p;
            let engine_dim = engine.e_entry(1, p, q)?.dim();
            let oracle_dim = oracle_complex.as_ref().map_or(0, |c| c.betti(t));
            verdicts.push(IdentificationVerdict {
                p,
                q,
                engine_dim,
                oracle_dim,
                ok: engine_dim == oracle_dim,
            });
        }
    }
    Ok(verdicts)
}

/// For a linear action algebroid: all d_r = 0 (r ≥ 1) and the product
/// formula H^t(J^k) = Σ_{j≤k} dim H^t(g₀, S^j W* ⊗ V).
pub fn linearisable_stabilization_check(
    a: &PolyJetAlgebroid,
    v: &Representation,
) -> Result<(), JetError> {
    if !a.is_linear() {
        return Err(JetError::NotLinear);
    }
    let jc = jet_complex(a, v)?;
    let engine = jc.engine();
    for r in 1..=engine.infinity_page() {
        if !engine.page(r)?.all_differentials_zero() {
            return Err(JetError::NotDegenerate { r });
        }
    }
    let (g0, w_dual) = a.linearization();
    let totals = jc.betti_vector();
    for t in 0..=a.fiber_dim() as i64 {
        let mut sum = 0;
        for j in 0..=a.order() {
            sum += ce_complex(&g0, &w_dual.sym_power(j).tensor(v))?.betti(t);
        }
        if totals[t as usize] != sum {
            return Err(JetError::ProductFormulaMismatch(t));
        }
    }
    Ok(())
}

/// Whether the scaling pullback m_λ* (multiplying the degree-j coefficients
/// by λ^j) commutes with the differential; holds for linear instances,
/// reported (not asserted) otherwise.
#[derive(Debug, Clone)]
pub struct PullbackVerdict {
    pub commutes: bool,
    pub failing_degree: Option<i64>,
}

pub fn scalar_pullback_check(
    a: &PolyJetAlgebroid,
    v: &Representation,
    lambda: &Scalar,
) -> Result<PullbackVerdict, JetError> {
    assert!(!lambda.is_zero());
    let jc = jet_complex(a, v)?;
    let complex = jc.filtered().complex();
    let n = a.fiber_dim();
    let nm = jc.monomials().len();
    let dv = jc.v_dim();
    let scaling = |t: usize| {
        let ext = ExteriorBasis::new(n, t);
        let mut s = ExactMatrix::zeros(ext.len() * nm * dv, ext.len() * nm * dv);
        for pos in 0..ext.len() {
            for (mi, alpha) in jc.monomials().iter().enumerate() {
                let deg = alpha.iter().sum::<usize>();
                let mut factor = Scalar::from_integer(1.into());
                for _ in 0..deg {
                    factor = &factor * lambda;
                }
                for b in 0..dv {
                    let i = (pos * nm + mi) * dv + b;
                    s.set(i, i, factor.clone());
                }
            }
        }
        s
    };
    for t in 0..n {
        let d = complex.differential(t as i64);
        if d.mul(&scaling(t)) != scaling(t + 1).mul(&d) {
            return Ok(PullbackVerdict {
                commutes: false,
                failing_degree: Some(t as i64),
            });
        }
    }
    Ok(PullbackVerdict {
        commutes: true,
        failing_degree: None,
    })
}

/// n = m = 1, anchor ♯e = w²∂_w, trivial bracket: the standard
/// non-linearisable control.
pub fn quadratic_vector_field_algebroid(order: usize) -> PolyJetAlgebroid {
    PolyJetAlgebroid::new(
        1,
        1,
        order,
        vec![vec![Poly::monomial(vec![2], qi(1))]],
        vec![vec![vec![Poly::zero()]]],
    )
    .expect("valid by construction")
}

/// g = Q acting on W = Q by scaling (ρ(e) = 1).
pub fn scaling_algebroid(order: usize) -> PolyJetAlgebroid {
    let g = LieAlgebra::abelian(1);
    let rho = Representation::new(1, 1, vec![ExactMatrix::identity(1)]);
    PolyJetAlgebroid::action_algebroid(&g, &rho, order).expect("valid by construction")
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct FieldTerm {
    pub coord: usize,
    pub monomial: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct AnchorSpec {
    pub gen: usize,
    pub field: Vec<FieldTerm>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct GenTerm {
    pub gen: usize,
    pub monomial: Vec<usize>,
    pub coeff: String,
}

/// One structure function c_{ab}; the (b,a) entry is filled by antisymmetry.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct StructureFunctionSpec {
    pub a: usize,
    pub b: usize,
    pub coeffs: Vec<GenTerm>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct JetSpec {
    pub fiber_dim: usize,
    pub base_dim: usize,
    pub order: usize,
    #[serde(default)]
    pub anchor: Vec<AnchorSpec>,
    #[serde(default)]
    pub structure_functions: Vec<StructureFunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<crate::ce::RepresentationSpec>,
}

impl JetSpec {
    pub fn build(&self) -> Result<(PolyJetAlgebroid, Representation), JetError> {
        let n = self.fiber_dim;
        let m = self.base_dim;
        let mut anchor = vec![vec![Poly::zero(); m]; n];
        for a in &self.anchor {
            assert!(a.gen < n, "anchor generator out of range");
            for t in &a.field {
                assert!(t.coord < m && t.monomial.len() == m, "bad anchor term");
                anchor[a.gen][t.coord].add_term(
                    t.monomial.clone(),
                    crate::exactq::parse_scalar(&t.coeff)?,
                );
            }
        }
        let mut c = vec![vec![vec![Poly::zero(); n]; n]; n];
        for s in &self.structure_functions {
            assert!(s.a < n && s.b < n, "structure function index out of range");
            for t in &s.coeffs {
                assert!(t.gen < n && t.monomial.len() == m, "bad structure term");
                let coeff = crate::exactq::parse_scalar(&t.coeff)?;
                c[s.a][s.b][t.gen].add_term(t.monomial.clone(), coeff.clone());
                c[s.b][s.a][t.gen].add_term(t.monomial.clone(), -coeff);
            }
        }
        let algebroid = PolyJetAlgebroid::new(n, m, self.order, anchor, c)?;
        let v = match &self.representation {
            Some(spec) => Representation::new(n, spec.dim, spec.matrices.clone()),
            None => Representation::trivial(n, 1),
        };
        Ok((algebroid, v))
    }
}
