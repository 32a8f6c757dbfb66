//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line.  All comparisons are exact integer equalities.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lass::catalog::{self, PayloadSpec};
use lass::ce::{ce_complex, LieAlgebra, Representation, Subalgebra};
use lass::cochain::{CochainComplex, FilteredComplex, GradedSpace};
use lass::exactq::{ExactMatrix, Scalar, Subspace};
use lass::extension::AbelianExtension;
use lass::jets::{
    e1_invariant_check, jet_complex, linearisable_stabilization_check, PolyJetAlgebroid,
};
use lass::serre::hs_filtration;
use lass::spectral::Engine;

fn report(n: usize, title: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {n} ({title}): PASS"),
        Err(e) => println!("criterion {n} ({title}): FAIL — {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {n} failed: {e}");
    }
}

fn ok(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- criterion 1

#[test]
fn criterion_1_whitehead_vanishing() {
    report(1, "Whitehead vanishing", (|| {
        for name in ["sl2", "so3"] {
            let entry = catalog::load(name).map_err(|e| e.to_string())?;
            let (g, v) = entry.lie_algebra().map_err(|e| e.to_string())?;
            let betti = ce_complex(&g, &v)
                .map_err(|e| e.to_string())?
                .betti_vector();
            ok(betti == vec![1, 0, 0, 1], || {
                format!("{name}: betti {betti:?} != [1,0,0,1]")
            })?;
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 2

#[test]
fn criterion_2_e2_identification() {
    report(2, "Hochschild–Serre E2 identification", (|| {
        for name in ["heisenberg_center", "aff1_ideal"] {
            let entry = catalog::load(name).map_err(|e| e.to_string())?;
            let (g, h, v) = entry.hs().map_err(|e| e.to_string())?;
            let n = g.dim() as i64;
            let inst = hs_filtration(&g, h, &v).map_err(|e| e.to_string())?;
            let engine = inst.engine();
            for p in 0..=n {
                for q in -1..=n {
                    let verdict = inst
                        .e2_identification(&engine, p, q)
                        .map_err(|e| e.to_string())?;
                    ok(verdict.ok, || {
                        format!(
                            "{name}: E2^({p},{q}) engine {} != oracle {}",
                            verdict.engine_dim, verdict.oracle_dim
                        )
                    })?;
                }
            }
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 3

#[test]
fn criterion_3_d2_theorem() {
    report(3, "d2 equals contraction with the extension class", (|| {
        let entry = catalog::load("heisenberg_center").map_err(|e| e.to_string())?;
        let (g, h, v) = entry.hs().map_err(|e| e.to_string())?;
        let ext = AbelianExtension::new(&g, h, &v).map_err(|e| e.to_string())?;
        ok(
            !ext.extension_class().map_err(|e| e.to_string())?.is_zero(),
            || "heisenberg_center: extension class unexpectedly zero".into(),
        )?;
        let verdicts = ext.d2_check().map_err(|e| e.to_string())?;
        let mut saw_rank_one_at_01 = false;
        for verdict in &verdicts {
            ok(verdict.equal, || {
                format!(
                    "d2 at ({},{}) engine != oracle (ranks {} vs {})",
                    verdict.pq[0], verdict.pq[1], verdict.engine_rank, verdict.oracle_rank
                )
            })?;
            if verdict.pq == [0, 1] {
                saw_rank_one_at_01 = verdict.engine_rank == 1 && verdict.oracle_rank == 1;
            }
        }
        ok(saw_rank_one_at_01, || {
            "d2 at (0,1) is not a rank-1 pair".into()
        })
    })());
}

// ---------------------------------------------------------------- criterion 4

#[test]
fn criterion_4_convergence_on_catalog() {
    report(4, "convergence on every catalog HS instance", (|| {
        for name in catalog::list() {
            let entry = catalog::load(name).map_err(|e| e.to_string())?;
            if !matches!(entry.payload, PayloadSpec::Hs { .. }) {
                continue;
            }
            let (g, h, v) = entry.hs().map_err(|e| e.to_string())?;
            let dim_g = g.dim() as i64;
            let betti = ce_complex(&g, &v)
                .map_err(|e| e.to_string())?
                .betti_vector();
            let inst = hs_filtration(&g, h, &v).map_err(|e| e.to_string())?;
            let engine = inst.engine();
            for r in dim_g + 1..=dim_g + 3 {
                let page = engine.page(r).map_err(|e| e.to_string())?;
                ok(page.all_differentials_zero(), || {
                    format!("{name}: d_{r} nonzero past dim g = {dim_g}")
                })?;
            }
            let e_inf = engine.e_infinity_betti().map_err(|e| e.to_string())?;
            ok(e_inf == betti, || {
                format!("{name}: E_infinity totals {e_inf:?} != betti {betti:?}")
            })?;
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 5

#[test]
fn criterion_5_first_page_wide_case() {
    report(5, "sl2_cartan first page, d2 and E_infinity", (|| {
        let entry = catalog::load("sl2_cartan").map_err(|e| e.to_string())?;
        let (g, h, v) = entry.hs().map_err(|e| e.to_string())?;
        let n = g.dim() as i64;
        let inst = hs_filtration(&g, h, &v).map_err(|e| e.to_string())?;
        let engine = inst.engine();
        for p in 0..=n {
            for q in -1..=n {
                let verdict = inst
                    .e1_identification(&engine, p, q)
                    .map_err(|e| e.to_string())?;
                ok(verdict.ok, || {
                    format!(
                        "E1^({p},{q}) engine {} != oracle {}",
                        verdict.engine_dim, verdict.oracle_dim
                    )
                })?;
            }
        }
        let page2 = engine.page(2).map_err(|e| e.to_string())?;
        for (&(p, q), m) in &page2.differentials {
            let rank = m.rank();
            let expected = if (p, q) == (0, 1) { 1 } else { 0 };
            ok(rank == expected, || {
                format!("d2 at ({p},{q}) has rank {rank}, expected {expected}")
            })?;
        }
        let r_inf = engine.infinity_page();
        let page_inf = engine.page(r_inf).map_err(|e| e.to_string())?;
        for (&(p, q), entry) in &page_inf.entries {
            let dim = entry.space.dim();
            let expected = usize::from((p, q) == (0, 0) || (p, q) == (2, 1));
            ok(dim == expected, || {
                format!("E_infinity^({p},{q}) = {dim}, expected {expected}")
            })?;
        }
        ok(page_inf.dim(0, 0) == 1 && page_inf.dim(2, 1) == 1, || {
            "E_infinity support missing (0,0) or (2,1)".into()
        })
    })());
}

// ---------------------------------------------------------------- criterion 6

#[test]
fn criterion_6_jet_first_page() {
    report(6, "finite-jet first page identification", (|| {
        let entry = catalog::load("sl2_standard_jet").map_err(|e| e.to_string())?;
        let (a3, v) = entry.jet().map_err(|e| e.to_string())?;
        for k in 1..=3usize {
            let a = a3.with_order(k).map_err(|e| e.to_string())?;
            for verdict in e1_invariant_check(&a, &v).map_err(|e| e.to_string())? {
                ok(verdict.ok, || {
                    format!(
                        "sl2_standard_jet k={k}: E1^({},{}) engine {} != oracle {}",
                        verdict.p, verdict.q, verdict.engine_dim, verdict.oracle_dim
                    )
                })?;
            }
        }
        let entry = catalog::load("quadratic_jet").map_err(|e| e.to_string())?;
        let (a, v) = entry.jet().map_err(|e| e.to_string())?;
        for verdict in e1_invariant_check(&a, &v).map_err(|e| e.to_string())? {
            ok(verdict.ok, || {
                format!(
                    "quadratic_jet: E1^({},{}) engine {} != oracle {}",
                    verdict.p, verdict.q, verdict.engine_dim, verdict.oracle_dim
                )
            })?;
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 7

#[test]
fn criterion_7_linearisable_degeneration() {
    report(7, "linearisable degeneration and negative control", (|| {
        let entry = catalog::load("sl2_standard_jet").map_err(|e| e.to_string())?;
        let (a3, v) = entry.jet().map_err(|e| e.to_string())?;
        for k in 1..=3usize {
            let a = a3.with_order(k).map_err(|e| e.to_string())?;
            linearisable_stabilization_check(&a, &v)
                .map_err(|e| format!("sl2_standard_jet k={k}: {e}"))?;
        }
        let entry = catalog::load("scaling_jet").map_err(|e| e.to_string())?;
        let (a, v) = entry.jet().map_err(|e| e.to_string())?;
        linearisable_stabilization_check(&a, &v).map_err(|e| format!("scaling_jet: {e}"))?;

        // Negative control: the quadratic field is not linearisable and its
        // first page does not degenerate, yet convergence still holds.
        let entry = catalog::load("quadratic_jet").map_err(|e| e.to_string())?;
        let (a, v) = entry.jet().map_err(|e| e.to_string())?;
        let jc = jet_complex(&a, &v).map_err(|e| e.to_string())?;
        let engine = jc.engine();
        let d1 = engine.d_r_matrix(1, 1, -1).map_err(|e| e.to_string())?;
        ok(d1.rank() == 1, || {
            format!("quadratic_jet: d1 at (1,-1) has rank {}, expected 1", d1.rank())
        })?;
        let betti = jc.betti_vector();
        ok(betti == vec![2, 2], || {
            format!("quadratic_jet: betti {betti:?} != [2, 2]")
        })?;
        engine
            .convergence_check()
            .map_err(|e| format!("quadratic_jet convergence: {e}"))
    })());
}

// ---------------------------------------------------------------- criterion 8

/// Full self-consistency battery for one filtered complex: page turning,
/// convergence, d_r ∘ d_r = 0, and independence of d_r from the choice of
/// representatives.
fn self_consistency(filtered: &FilteredComplex, rng: &mut ChaCha8Rng) -> Result<(), String> {
    filtered.check_filtration().map_err(|e| e.to_string())?;
    let engine = Engine::new(filtered);
    let r_inf = engine.infinity_page();
    for r in 0..=r_inf {
        engine
            .turn_page_check(r)
            .map_err(|e| format!("turn_page r={r}: {e}"))?;
    }
    engine
        .convergence_check()
        .map_err(|e| format!("convergence: {e}"))?;
    for r in 1..=r_inf {
        let page = engine.page(r).map_err(|e| e.to_string())?;
        for &(p, q) in page.entries.keys() {
            let first = engine.d_r_matrix(r, p, q).map_err(|e| e.to_string())?;
            let second = engine
                .d_r_matrix(r, p + r, q - r + 1)
                .map_err(|e| e.to_string())?;
            if !second.mul(&first).is_zero() {
                return Err(format!("d_{r} ∘ d_{r} != 0 at ({p},{q})"));
            }
            // Representative perturbation: shifting a class representative
            // by a denominator element must not change its d_r image.
            let source = engine.e_entry(r, p, q).map_err(|e| e.to_string())?;
            let target = engine
                .e_entry(r, p + r, q - r + 1)
                .map_err(|e| e.to_string())?;
            if source.dim() == 0 || source.denominator().dim() == 0 {
                continue;
            }
            let d = filtered.complex().differential(p + q);
            for j in 0..source.dim() {
                let mut vector = source.representatives().col(j);
                let den = source.denominator().basis();
                for c in 0..den.cols() {
                    let coeff = Scalar::from_integer(rng.gen_range(-3i64..=3).into());
                    for (vi, v) in vector.iter_mut().enumerate() {
                        *v += den.get(vi, c) * &coeff;
                    }
                }
                let perturbed = target.project(&d.mul_vec(&vector));
                let column = first.col(j);
                if perturbed != column {
                    return Err(format!(
                        "d_{r} at ({p},{q}) depends on the representative (column {j})"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Random invertible matrix: unit lower × unit upper triangular with small
/// integer off-diagonal entries, then a random row permutation.
fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut l = ExactMatrix::identity(n);
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Scalar::from_integer(rng.gen_range(-2i64..=2).into()));
            u.set(j, i, Scalar::from_integer(rng.gen_range(-2i64..=2).into()));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut p = ExactMatrix::zeros(n, n);
    for (i, &pi) in perm.iter().enumerate() {
        p.set(i, pi, Scalar::from_integer(1.into()));
    }
    p.mul(&l).mul(&u)
}

/// A random filtered complex: a direct sum of elementary two-term complexes
/// in a standard basis, conjugated degreewise by random invertible matrices,
/// filtered by F^p C^n = W^n_p + d(W^{n-1}_p) for random nested flags W.
fn random_filtered_complex(seed: u64) -> (FilteredComplex, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 3i64;
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(1..=7)).collect();
    // Arrows e_src -> e_tgt between consecutive degrees; a target is never
    // reused as a source one degree up, so d ∘ d = 0 holds by construction.
    let mut blocked: Vec<usize> = Vec::new();
    let mut raw_d: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for n in 0..top {
        let (dn, dn1) = (dims[n as usize], dims[n as usize + 1]);
        let sources: Vec<usize> = (0..dn).filter(|i| !blocked.contains(i)).collect();
        let count = rng.gen_range(0..=sources.len().min(dn1));
        let mut src_pool = sources;
        let mut tgt_pool: Vec<usize> = (0..dn1).collect();
        let mut m = ExactMatrix::zeros(dn1, dn);
        let mut targets = Vec::new();
        for _ in 0..count {
            let s = src_pool.swap_remove(rng.gen_range(0..src_pool.len()));
            let t = tgt_pool.swap_remove(rng.gen_range(0..tgt_pool.len()));
            m.set(t, s, Scalar::from_integer(1.into()));
            targets.push(t);
        }
        raw_d.insert(n, m);
        blocked = targets;
    }
    let p_mats: Vec<ExactMatrix> = dims
        .iter()
        .map(|&d| random_invertible(d, &mut rng))
        .collect();
    let mut spaces = GradedSpace::new();
    for (n, &d) in dims.iter().enumerate() {
        spaces.set_dim(n as i64, d);
    }
    let mut differentials = BTreeMap::new();
    for n in 0..top {
        let conj = p_mats[n as usize + 1]
            .mul(&raw_d[&n])
            .mul(&p_mats[n as usize].inverse().unwrap());
        differentials.insert(n, conj);
    }
    let complex = CochainComplex::new(spaces, differentials);

    // Random flags: W^n_1 ⊇ W^n_2 ⊇ W^n_3 spanned by prefixes of a fixed
    // random vector list per degree.
    let p_max = 3i64;
    let mut flags: BTreeMap<(i64, i64), Subspace> = BTreeMap::new();
    for n in 0..=top {
        let dim = dims[n as usize];
        let vectors: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Scalar::from_integer(rng.gen_range(-2i64..=2).into()))
                    .collect()
            })
            .collect();
        let mut count = rng.gen_range(0..=dim);
        for p in 1..=p_max {
            flags.insert((p, n), Subspace::from_vectors(dim, &vectors[..count]));
            count = rng.gen_range(0..=count);
        }
    }
    let mut filtration = BTreeMap::new();
    for n in 0..=top {
        for p in 1..=p_max {
            let mut f = flags[&(p, n)].clone();
            if n > 0 {
                let image = complex
                    .differential(n - 1)
                    .mul(flags[&(p, n - 1)].basis())
                    .image();
                f = f.sum(&image).unwrap();
            }
            filtration.insert((p, n), f);
        }
    }
    (FilteredComplex::new(complex, filtration), rng)
}

/// Every catalog entry's filtered complex, in a uniform shape.
fn catalog_filtered_complexes() -> Vec<(String, FilteredComplex)> {
    let mut out = Vec::new();
    for name in catalog::list() {
        let entry = catalog::load(name).unwrap();
        let filtered = match &entry.payload {
            PayloadSpec::LieAlgebra(_) => {
                let (g, v) = entry.lie_algebra().unwrap();
                FilteredComplex::trivial(ce_complex(&g, &v).unwrap())
            }
            PayloadSpec::Hs { .. } => {
                let (g, h, v) = entry.hs().unwrap();
                hs_filtration(&g, h, &v).unwrap().filtered().clone()
            }
            PayloadSpec::Jet(_) => {
                let (a, v) = entry.jet().unwrap();
                jet_complex(&a, &v).unwrap().filtered().clone()
            }
        };
        out.push((name.to_string(), filtered));
    }
    out
}

#[test]
fn criterion_8_engine_self_consistency() {
    report(8, "engine self-consistency", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for (name, filtered) in catalog_filtered_complexes() {
            self_consistency(&filtered, &mut rng).map_err(|e| format!("catalog {name}: {e}"))?;
        }
        for seed in 0..50u64 {
            let (filtered, mut rng) = random_filtered_complex(seed);
            let total: usize = {
                let (lo, hi) = filtered.complex().window().unwrap();
                (lo..=hi).map(|n| filtered.complex().dim(n)).sum()
            };
            ok(total <= 30, || {
                format!("seed {seed}: total dim {total} > 30")
            })?;
            self_consistency(&filtered, &mut rng).map_err(|e| format!("seed {seed}: {e}"))?;
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------- criterion 9

/// Dimension table of every page up to stabilization plus every nonzero
/// d_r rank: the full basis-independent signature of a filtered complex.
fn ss_signature(filtered: &FilteredComplex) -> BTreeMap<(i64, i64, i64), (usize, usize)> {
    let engine = Engine::new(filtered);
    let r_inf = engine.infinity_page();
    let mut sig = BTreeMap::new();
    for r in 0..=r_inf {
        let page = engine.page(r).unwrap();
        for (&(p, q), entry) in &page.entries {
            let rank = page.differentials.get(&(p, q)).map_or(0, |m| m.rank());
            if entry.space.dim() > 0 || rank > 0 {
                sig.insert((r, p, q), (entry.space.dim(), rank));
            }
        }
    }
    sig
}

/// General linear change of basis f_i = Σ_k T_{ki} e_k of a Lie algebra.
fn conjugate_algebra(g: &LieAlgebra, t: &ExactMatrix) -> LieAlgebra {
    let inv = t.inverse().unwrap();
    let n = g.dim();
    let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let new = inv.mul_vec(&g.bracket(&t.col(i), &t.col(j)));
            for (k, c) in new.into_iter().enumerate() {
                brackets[i][j][k] = c;
            }
        }
    }
    LieAlgebra::new(n, brackets, None)
}

/// The same representation read through the change of basis `t` of the
/// algebra and `s` of the carrier.
fn conjugate_rep(v: &Representation, t: &ExactMatrix, s: &ExactMatrix) -> Representation {
    let n = v.algebra_dim();
    let matrices = (0..n).map(|i| v.action_of(&t.col(i))).collect();
    Representation::new(n, v.carrier_dim(), matrices)
        .conjugate(s)
        .unwrap()
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

#[test]
fn criterion_9_basis_invariance() {
    report(9, "page-table basis invariance", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xBA5E);
        for name in catalog::list() {
            let entry = catalog::load(name).map_err(|e| e.to_string())?;
            match &entry.payload {
                PayloadSpec::LieAlgebra(_) => {
                    let (g, v) = entry.lie_algebra().map_err(|e| e.to_string())?;
                    let base =
                        ss_signature(&FilteredComplex::trivial(
                            ce_complex(&g, &v).map_err(|e| e.to_string())?,
                        ));
                    let perm = random_perm(g.dim(), &mut rng);
                    let gp = g.permute_basis(&perm);
                    let vp = v.permute_algebra_basis(&perm);
                    let sig = ss_signature(&FilteredComplex::trivial(
                        ce_complex(&gp, &vp).map_err(|e| e.to_string())?,
                    ));
                    ok(sig == base, || format!("{name}: permuted signature differs"))?;
                }
                PayloadSpec::Hs { subalgebra, .. } => {
                    let (g, h, v) = entry.hs().map_err(|e| e.to_string())?;
                    let base = ss_signature(
                        hs_filtration(&g, h.clone(), &v)
                            .map_err(|e| e.to_string())?
                            .filtered(),
                    );
                    // Basis permutation of g (subalgebra indices follow).
                    let perm = random_perm(g.dim(), &mut rng);
                    let mut inv = vec![0; g.dim()];
                    for (new, &old) in perm.iter().enumerate() {
                        inv[old] = new;
                    }
                    let gp = g.permute_basis(&perm);
                    let indices: Vec<usize> = subalgebra.iter().map(|&i| inv[i]).collect();
                    let hp = Subalgebra::from_indices(gp.clone(), &indices)
                        .map_err(|e| e.to_string())?;
                    let vp = v.permute_algebra_basis(&perm);
                    let sig = ss_signature(
                        hs_filtration(&gp, hp, &vp)
                            .map_err(|e| e.to_string())?
                            .filtered(),
                    );
                    ok(sig == base, || format!("{name}: permuted signature differs"))?;
                    // General conjugation of g together with the coefficients.
                    let t = random_invertible(g.dim(), &mut rng);
                    let gc = conjugate_algebra(&g, &t);
                    gc.check_jacobi().map_err(|e| e.to_string())?;
                    let vc = conjugate_rep(&v, &t, &ExactMatrix::identity(v.carrier_dim()));
                    let hc = Subalgebra::new(
                        gc.clone(),
                        t.inverse().unwrap().mul(h.basis()),
                    )
                    .map_err(|e| e.to_string())?;
                    let sig = ss_signature(
                        hs_filtration(&gc, hc, &vc)
                            .map_err(|e| e.to_string())?
                            .filtered(),
                    );
                    ok(sig == base, || {
                        format!("{name}: conjugated signature differs")
                    })?;
                }
                PayloadSpec::Jet(_) => {
                    let (a, v) = entry.jet().map_err(|e| e.to_string())?;
                    let base = ss_signature(
                        jet_complex(&a, &v)
                            .map_err(|e| e.to_string())?
                            .filtered(),
                    );
                    let n = a.fiber_dim();
                    let perm = random_perm(n, &mut rng);
                    let anchor = perm.iter().map(|&i| a.anchor_field(i).to_vec()).collect();
                    let mut c = vec![vec![vec![lass::jets::Poly::zero(); n]; n]; n];
                    for i in 0..n {
                        for j in 0..n {
                            for d in 0..n {
                                c[i][j][d] =
                                    a.structure_function(perm[i], perm[j], perm[d]).clone();
                            }
                        }
                    }
                    let ap = PolyJetAlgebroid::new(n, a.base_dim(), a.order(), anchor, c)
                        .map_err(|e| e.to_string())?;
                    let vp = v.permute_algebra_basis(&perm);
                    let sig = ss_signature(
                        jet_complex(&ap, &vp)
                            .map_err(|e| e.to_string())?
                            .filtered(),
                    );
                    ok(sig == base, || format!("{name}: permuted signature differs"))?;
                }
            }
        }
        // Representation conjugation with a genuinely nonabelian carrier:
        // heisenberg_center with the 2-dimensional module x ↦ [[0,1],[0,0]].
        let entry = catalog::load("heisenberg_center").map_err(|e| e.to_string())?;
        let (g, h, _) = entry.hs().map_err(|e| e.to_string())?;
        let mut rho_x = ExactMatrix::zeros(2, 2);
        rho_x.set(0, 1, Scalar::from_integer(1.into()));
        let v = Representation::new(
            g.dim(),
            2,
            vec![rho_x, ExactMatrix::zeros(2, 2), ExactMatrix::zeros(2, 2)],
        );
        v.check_flat(&g).map_err(|e| e.to_string())?;
        let base = ss_signature(
            hs_filtration(&g, h.clone(), &v)
                .map_err(|e| e.to_string())?
                .filtered(),
        );
        let s = random_invertible(2, &mut rng);
        let vc = v.conjugate(&s).map_err(|e| e.to_string())?;
        vc.check_flat(&g).map_err(|e| e.to_string())?;
        let sig = ss_signature(
            hs_filtration(&g, h, &vc)
                .map_err(|e| e.to_string())?
                .filtered(),
        );
        ok(sig == base, || {
            "heisenberg_center: conjugated-coefficient signature differs".into()
        })
    })());
}
