//! The spectral sequence of a finite filtered cochain complex: Z-spaces,
//! E_r^{p,q} quotients, induced differentials d_r, page turning,
//! stabilization, and convergence against the induced filtration on H.
//!
//! E_{r+1} is always computed from the closed-form Z/B quotient; iterated
//! cohomology of (E_r, d_r) is the independent cross-check exposed by
//! `turn_page_check`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::cochain::{CochainError, FilteredComplex};
use crate::exactq::{ExactMatrix, LinAlgError, QuotientSpace, Subspace};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("representative image escapes the target Z-space at (r={r}, p={p}, q={q})")]
    EscapedRepresentative { r: i64, p: i64, q: i64 },
    #[error("page turn mismatch at (r={r}, p={p}, q={q}): closed-form dim {closed_form}, cohomology dim {cohomology}")]
    PageTurnMismatch {
        r: i64,
        p: i64,
        q: i64,
        closed_form: usize,
        cohomology: usize,
    },
    #[error("convergence mismatch in degree {n} at p={p}: E_inf dim {e_inf}, graded H dim {graded_h}")]
    ConvergenceMismatch {
        n: i64,
        p: i64,
        e_inf: usize,
        graded_h: usize,
    },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub space: QuotientSpace,
}

#[derive(Debug, Clone)]
pub struct Page {
    pub r: i64,
    pub entries: BTreeMap<(i64, i64), PageEntry>,
    pub differentials: BTreeMap<(i64, i64), ExactMatrix>,
}

impl Page {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).map_or(0, |e| e.space.dim())
    }

    pub fn all_differentials_zero(&self) -> bool {
        self.differentials.values().all(|m| m.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .values()
            .filter(|e| e.space.dim() > 0)
            .map(|e| serde_json::json!({"p": e.p, "q": e.q, "dim": e.space.dim()}))
            .collect();
        let differentials: Vec<_> = self
            .differentials
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(p, q), m)| {
                serde_json::json!({
                    "from": [p, q],
                    "to": [p + self.r, q - self.r + 1],
                    "rank": m.rank(),
                })
            })
            .collect();
        serde_json::json!({"r": self.r, "entries": entries, "differentials": differentials})
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizationReport {
    pub r_star: i64,
    /// Dimension tables per page index 0..=r_star, keyed by (p, q).
    pub page_dims: Vec<BTreeMap<(i64, i64), usize>>,
}

/// Lazy per-(r, p, q) computation with memoization keyed by (r, p, total
/// degree); all values are immutable once inserted.
pub struct Engine<'a> {
    filtered: &'a FilteredComplex,
    z_memo: Mutex<HashMap<(i64, i64, i64), Subspace>>,
    e_memo: Mutex<HashMap<(i64, i64, i64), QuotientSpace>>,
}

impl<'a> Engine<'a> {
    pub fn new(filtered: &'a FilteredComplex) -> Self {
        Engine {
            filtered,
            z_memo: Mutex::new(HashMap::new()),
            e_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn filtered(&self) -> &FilteredComplex {
        self.filtered
    }

    fn window(&self) -> (i64, i64) {
        self.filtered.complex().window().unwrap_or((0, -1))
    }

    /// Upper bound for interesting p: F^p = 0 beyond it.
    pub fn p_bound(&self) -> i64 {
        self.filtered.filtration_bound()
    }

    /// Smallest page from which all entries are frozen.
    pub fn infinity_page(&self) -> i64 {
        self.p_bound() + 1
    }

    /// Z_r^{p,q} = F^p C^{p+q} ∩ d^{-1}(F^{p+r} C^{p+q+1}); Z_{-1} := F^p.
    pub fn z_space(&self, r: i64, p: i64, q: i64) -> Result<Subspace, SpectralError> {
        let n = p + q;
        if let Some(z) = self.z_memo.lock().unwrap().get(&(r, p, n)) {
            return Ok(z.clone());
        }
        let fp = self.filtered.filt(p, n);
        let z = if r < 0 {
            fp
        } else {
            let d = self.filtered.complex().differential(n);
            let target = self.filtered.filt(p + r, n + 1);
            fp.intersect(&d.preimage(&target)?)?
        };
        self.z_memo.lock().unwrap().insert((r, p, n), z.clone());
        Ok(z)
    }

    /// E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}).
    pub fn e_entry(&self, r: i64, p: i64, q: i64) -> Result<QuotientSpace, SpectralError> {
        let n = p + q;
        if let Some(e) = self.e_memo.lock().unwrap().get(&(r, p, n)) {
            return Ok(e.clone());
        }
        let num = self.z_space(r, p, q)?;
        let den_a = self.z_space(r - 1, p + 1, q - 1)?;
        let src = self.z_space(r - 1, p - r + 1, q + r - 2)?;
        let d_prev = self.filtered.complex().differential(n - 1);
        let mapped: Vec<Vec<_>> = (0..src.dim())
            .map(|j| d_prev.mul_vec(&src.basis().col(j)))
            .collect();
        let den_b = Subspace::from_vectors(self.filtered.complex().dim(n), &mapped);
        let den = den_a.sum(&den_b)?;
        let e = QuotientSpace::new(num, den)?;
        self.e_memo.lock().unwrap().insert((r, p, n), e.clone());
        Ok(e)
    }

    /// Matrix of d_r: E_r^{p,q} -> E_r^{p+r,q-r+1} on the chosen
    /// representatives. Valid for r >= 0 (r = 0 is the degree-internal
    /// differential on the associated graded).
    pub fn d_r_matrix(&self, r: i64, p: i64, q: i64) -> Result<ExactMatrix, SpectralError> {
        let source = self.e_entry(r, p, q)?;
        let (tp, tq) = (p + r, q - r + 1);
        let target = self.e_entry(r, tp, tq)?;
        let d = self.filtered.complex().differential(p + q);
        let target_z = self.z_space(r, tp, tq)?;
        let mut cols = Vec::with_capacity(source.dim());
        for j in 0..source.dim() {
            let w = d.mul_vec(&source.representatives().col(j));
            if !target_z.contains(&w) {
                return Err(SpectralError::EscapedRepresentative { r, p, q });
            }
            cols.push(target.project(&w));
        }
        Ok(ExactMatrix::from_columns(target.dim(), &cols))
    }

    /// All entries and differentials of the r-th page over the support
    /// window (p in 0..=bound, total degree inside the complex window).
    pub fn page(&self, r: i64) -> Result<Page, SpectralError> {
        let (lo, hi) = self.window();
        let mut entries = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for p in 0..=self.p_bound() {
            for n in lo..=hi {
                let q = n - p;
                let space = self.e_entry(r, p, q)?;
                if space.dim() > 0 {
                    entries.insert((p, q), PageEntry { p, q, space });
                }
            }
        }
        if r >= 0 {
            for &(p, q) in entries.keys() {
                let m = self.d_r_matrix(r, p, q)?;
                if m.rows() > 0 && m.cols() > 0 {
                    differentials.insert((p, q), m);
                }
            }
        }
        Ok(Page {
            r,
            entries,
            differentials,
        })
    }

    /// Independently recompute E_{r+1} as cohomology of (E_r, d_r) and
    /// compare against the closed-form quotients.
    pub fn turn_page_check(&self, r: i64) -> Result<(), SpectralError> {
        let (lo, hi) = self.window();
        for p in 0..=self.p_bound() + r + 1 {
            for n in lo..=hi {
                let q = n - p;
                let closed_form = self.e_entry(r + 1, p, q)?.dim();
                let outgoing = self.d_r_matrix(r, p, q)?;
                let incoming = self.d_r_matrix(r, p - r, q + r - 1)?;
                let cohomology = outgoing.kernel().dim() - incoming.rank();
                if closed_form != cohomology {
                    return Err(SpectralError::PageTurnMismatch {
                        r,
                        p,
                        q,
                        closed_form,
                        cohomology,
                    });
                }
            }
        }
        Ok(())
    }

    /// Smallest page r* >= 1 such that d_s = 0 for all s >= r*, together
    /// with the page dimension tables up to r*.
    pub fn stabilization(&self) -> Result<StabilizationReport, SpectralError> {
        let last = self.infinity_page();
        // d_s vanishes for every s > bound + 1 (F^{p+s} shifts out of the
        // window), so it suffices to scan s = 1..=bound+1.
        let mut r_star = 1;
        for s in (1..=last).rev() {
            if !self.page(s)?.all_differentials_zero() {
                r_star = s + 1;
                break;
            }
        }
        let mut page_dims = Vec::new();
        for r in 0..=r_star {
            let page = self.page(r)?;
            page_dims.push(
                page.entries
                    .iter()
                    .map(|(&k, e)| (k, e.space.dim()))
                    .collect(),
            );
        }
        Ok(StabilizationReport { r_star, page_dims })
    }

    /// E_infinity dims per (p, n-p) must match the successive differences of
    /// the induced filtration on H^n.
    pub fn convergence_check(&self) -> Result<(), SpectralError> {
        let (lo, hi) = self.window();
        let r_inf = self.infinity_page();
        for n in lo..=hi {
            let induced = self.filtered.induced_filtration_on_h(n)?;
            for p in 0..=self.p_bound() {
                let e_inf = self.e_entry(r_inf, p, n - p)?.dim();
                let graded_h = induced[p as usize] - induced[p as usize + 1];
                if e_inf != graded_h {
                    return Err(SpectralError::ConvergenceMismatch {
                        n,
                        p,
                        e_inf,
                        graded_h,
                    });
                }
            }
        }
        Ok(())
    }

    /// Total Betti numbers recovered from E_infinity row sums, degree by
    /// degree over the complex window.
    pub fn e_infinity_betti(&self) -> Result<Vec<usize>, SpectralError> {
        let (lo, hi) = self.window();
        let r_inf = self.infinity_page();
        let mut out = Vec::new();
        for n in lo..=hi {
            let mut total = 0;
            for p in 0..=self.p_bound() {
                total += self.e_entry(r_inf, p, n - p)?.dim();
            }
            out.push(total);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{CochainComplex, GradedSpace};
    use std::collections::BTreeMap as Map;

    fn zero_complex(dims: &[usize]) -> CochainComplex {
        let mut spaces = GradedSpace::new();
        for (n, &d) in dims.iter().enumerate() {
            spaces.set_dim(n as i64, d);
        }
        CochainComplex::new(spaces, Map::new())
    }

    #[test]
    fn trivial_filtration_first_page_is_cohomology() {
        let c = zero_complex(&[1, 2, 1]);
        let f = FilteredComplex::trivial(c);
        let eng = Engine::new(&f);
        // r = 0 at p = 0 is the whole degree; z-space with r >= 1 is ker d.
        assert_eq!(eng.e_entry(0, 0, 1).unwrap().dim(), 2);
        assert_eq!(eng.z_space(1, 0, 1).unwrap().dim(), 2);
        assert_eq!(eng.e_entry(1, 0, 1).unwrap().dim(), 2);
        // all pages beyond agree (zero differential complex)
        assert_eq!(eng.e_entry(5, 0, 1).unwrap().dim(), 2);
        let report = eng.stabilization().unwrap();
        assert_eq!(report.r_star, 1);
        eng.turn_page_check(0).unwrap();
        eng.turn_page_check(1).unwrap();
        eng.convergence_check().unwrap();
    }

    #[test]
    fn two_step_filtration_on_acyclic_complex() {
        // C: Q -> Q with d = id; F^1 = (0 in degree 0, all of C^1).
        let mut spaces = GradedSpace::new();
        spaces.set_dim(0, 1);
        spaces.set_dim(1, 1);
        let mut diffs = Map::new();
        diffs.insert(0, ExactMatrix::identity(1));
        let c = CochainComplex::new(spaces, diffs);
        let mut filt = Map::new();
        filt.insert((1, 1), Subspace::full(1));
        let f = FilteredComplex::new(c, filt);
        f.check_filtration().unwrap();
        let eng = Engine::new(&f);
        // E_0^{0,0} = C^0, E_0^{1,0} = C^1; d_1 kills both.
        assert_eq!(eng.e_entry(0, 0, 0).unwrap().dim(), 1);
        assert_eq!(eng.e_entry(0, 1, 0).unwrap().dim(), 1);
        let d1 = eng.d_r_matrix(1, 0, 0).unwrap();
        assert_eq!(d1.rank(), 1);
        assert_eq!(eng.e_entry(2, 0, 0).unwrap().dim(), 0);
        assert_eq!(eng.e_entry(2, 1, 0).unwrap().dim(), 0);
        eng.turn_page_check(0).unwrap();
        eng.turn_page_check(1).unwrap();
        eng.convergence_check().unwrap();
        assert_eq!(eng.stabilization().unwrap().r_star, 2);
    }
}
