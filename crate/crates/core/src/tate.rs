//! Truncated semifree resolutions of the degree-zero ring, built by
//! stagewise adjunction of generators that kill negative cohomology, and
//! windowed computation of the co-reduction `RHom(H⁰A, −)` through the
//! finite graded pieces of the Hom complex.

use crate::complex::{CohomologyTable, FPModule, FreeComplex};
use crate::dg::{monomials_of_degree, AlgElt, DGAlgebra, DGGen, DGModule, GenMono};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Coeff, FieldKind};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Cap on the total number of adjoined generators across all stages.
pub const DEFAULT_RANK_BUDGET: usize = 64;

/// A truncated resolution of `H⁰A` over `A`: the original algebra extended
/// by adjoined generators, with cycles killed in every degree strictly
/// between `depth` and 0.
#[derive(Clone, Debug)]
pub struct TateResolution<K> {
    original: Arc<DGAlgebra<K>>,
    extended: Arc<DGAlgebra<K>>,
    depth: i64,
}

impl<K: Coeff> TateResolution<K> {
    pub fn original(&self) -> &Arc<DGAlgebra<K>> {
        &self.original
    }

    /// The resolution algebra (original generators plus adjoined ones).
    pub fn extended(&self) -> &Arc<DGAlgebra<K>> {
        &self.extended
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// The adjoined generators, in adjunction order.
    pub fn adjoined(&self) -> &[DGGen] {
        &self.extended.gens()[self.original.ngens()..]
    }

    /// `(name, degree, parity, differential)` rows for reports.
    pub fn adjoined_summary(&self) -> Vec<(String, i64, &'static str, String)> {
        let orig = self.original.ngens();
        self.extended.gens()[orig..]
            .iter()
            .enumerate()
            .map(|(k, g)| {
                (
                    g.name.clone(),
                    g.degree,
                    if g.is_odd() { "odd" } else { "even" },
                    self.extended.display_elt(self.extended.diff_of(orig + k)),
                )
            })
            .collect()
    }

    /// Re-verify the defining property: the free module over the extended
    /// algebra has zero cohomology in every degree strictly between
    /// `depth` and 0 (and unchanged `H⁰`).
    pub fn certify(&self, budget: &mut Budget) -> Result<()> {
        if self.depth >= 0 {
            return Ok(());
        }
        let free = DGModule::free(self.extended.clone(), 0);
        let table = free.dg_cohomology(Some((self.depth + 1, 0)), budget)?;
        for (n, module) in &table.entries {
            if *n < 0 && !module.is_zero(budget)? {
                return Err(Error::Invalid(format!(
                    "resolution has nonzero cohomology in degree {n}"
                )));
            }
            if *n == 0 && module.is_zero(budget)? {
                return Err(Error::Invalid(
                    "resolution lost the degree-zero cohomology".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Kernel generators of the underlying differential in one degree,
/// returned as algebra elements, with columns that already lie in the span
/// of boundaries and previously kept cycles greedily skipped.
fn fresh_cycles<K: Coeff>(
    algebra: &Arc<DGAlgebra<K>>,
    complex: &FreeComplex<K>,
    degree: i64,
    budget: &mut Budget,
) -> Result<Vec<AlgElt<K>>> {
    let rank = complex.rank(degree);
    if rank == 0 {
        return Ok(Vec::new());
    }
    let base = algebra.base();
    let free = DGModule::free(algebra.clone(), 0);
    let basis = free.underlying_basis(degree);
    debug_assert_eq!(basis.len(), rank);
    let kernel = base.module_syzygies(&complex.diff(degree), budget)?;
    let image = complex.diff(degree - 1);
    let mut span: Vec<Vec<Poly<K>>> = image.columns();
    let mut kept: Vec<AlgElt<K>> = Vec::new();
    for col in kernel {
        let mat = Matrix::from_columns(base.nvars(), rank, span.clone());
        if base.module_lift(&col, &mat, budget)?.is_some() {
            continue; // already a boundary or reachable from kept cycles
        }
        let mut elt = algebra.zero_elt();
        for ((_, mono), p) in basis.iter().zip(&col) {
            elt.add_term(mono.clone(), p.clone());
        }
        kept.push(elt);
        span.push(col);
    }
    Ok(kept)
}

/// Build a truncated resolution of `H⁰A` over `A` by repeatedly adjoining
/// generators of degree `i − 1` whose differentials generate the cycles of
/// the topmost nonzero `H^i` with `depth < i < 0`. Characteristic 0 only.
pub fn tate_resolve<K: Coeff>(
    algebra: &Arc<DGAlgebra<K>>,
    depth: i64,
    budget: &mut Budget,
) -> Result<TateResolution<K>> {
    if *algebra.base().field() != FieldKind::Rationals {
        return Err(Error::CharacteristicZeroOnly);
    }
    if depth > 0 {
        return Err(Error::Invalid(format!(
            "resolution depth must be ≤ 0, got {depth}"
        )));
    }
    algebra.validate()?;
    let mut current = algebra.clone();
    let mut name_counter = 0usize;
    let mut stages = 0i64;
    loop {
        let free = DGModule::free(current.clone(), 0);
        let complex = if current.infinite_rank() {
            free.underlying_complex(Some((depth - 1, 1)))?
        } else {
            free.underlying_complex(None)?
        };
        let mut adjoined_this_stage = false;
        for i in (depth + 1..0).rev() {
            let cycles = fresh_cycles(&current, &complex, i, budget)?;
            if cycles.is_empty() {
                continue;
            }
            let mut gens = current.gens().to_vec();
            let mut diffs: Vec<AlgElt<K>> = (0..current.ngens())
                .map(|k| current.diff_of(k).pad_gens(cycles.len()))
                .collect();
            let n_new = cycles.len();
            for z in cycles {
                let name = loop {
                    name_counter += 1;
                    let cand = format!("y{name_counter}");
                    let taken = current.base().vars().iter().any(|v| *v == cand)
                        || gens.iter().any(|g| g.name == cand);
                    if !taken {
                        break cand;
                    }
                };
                gens.push(DGGen { name, degree: i - 1 });
                diffs.push(z.pad_gens(n_new));
            }
            if gens.len() - algebra.ngens() > DEFAULT_RANK_BUDGET {
                return Err(Error::RankBudget { budget: DEFAULT_RANK_BUDGET });
            }
            current = DGAlgebra::new(current.base().clone(), gens, diffs)?;
            adjoined_this_stage = true;
            break;
        }
        if !adjoined_this_stage {
            break;
        }
        stages += 1;
        if stages > -depth + 1 {
            return Err(Error::Invalid(
                "resolution stages did not strictly descend; this is a bug".into(),
            ));
        }
    }
    Ok(TateResolution { original: algebra.clone(), extended: current, depth })
}

/// `(inf, sup)` degree bounds of the underlying complex of a module over a
/// finite-rank algebra.
fn module_bounds<K: Coeff>(m: &DGModule<K>) -> Result<(i64, i64)> {
    if m.algebra().infinite_rank() {
        return Err(Error::Invalid(
            "co-reduction needs a finite-rank algebra so the target module is bounded".into(),
        ));
    }
    let gens_total: i64 = m.algebra().gens().iter().map(|g| g.degree).sum();
    let bmin = m.basis().iter().map(|(_, d)| *d).min().unwrap_or(0);
    let bmax = m.basis().iter().map(|(_, d)| *d).max().unwrap_or(0);
    Ok((bmin + gens_total, bmax))
}

/// The resolution depth needed to certify a co-reduction window `[lo, hi]`
/// against a target with the given `inf`: deep resolution degrees pair with
/// high Hom degrees, so the bound is driven by `hi`.
pub fn required_depth(inf: i64, window_hi: i64) -> i64 {
    (inf - window_hi - 1).min(-1)
}

/// A windowed co-reduction result, with the data needed to restate the
/// certified range.
#[derive(Clone, Debug)]
pub struct Coreduction<K> {
    pub table: CohomologyTable<K>,
    pub window: (i64, i64),
    pub depth: i64,
    pub resolution: TateResolution<K>,
}

/// Split a differential of a resolution monomial into
/// `(adjoined part → coefficient over the original algebra)`.
fn split_resolution_diff<K: Coeff>(
    extended: &Arc<DGAlgebra<K>>,
    orig_ngens: usize,
    beta: &GenMono,
) -> BTreeMap<GenMono, AlgElt<K>> {
    let mut embedded = vec![0u32; extended.ngens()];
    embedded[orig_ngens..].copy_from_slice(&beta.0);
    let d = extended.d_mono(&GenMono(embedded));
    let mut out: BTreeMap<GenMono, AlgElt<K>> = BTreeMap::new();
    for (m, p) in d.terms() {
        let orig = GenMono(m.0[..orig_ngens].to_vec());
        let adj = GenMono(m.0[orig_ngens..].to_vec());
        out.entry(adj)
            .or_insert_with(|| AlgElt::zero(orig_ngens, p.nvars()))
            .add_term(orig, p.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Cohomology of `Hom_A(P, M)` on `[lo, hi]`, presented over `H⁰A`, where
/// `P` is a truncated resolution of `H⁰A`. Exact on the window when
/// `depth ≤ inf(M) − hi − 1`. Hom elements are graded-linear
/// (`φ(a·w) = (−1)^{|φ||a|} a·φ(w)`) with differential
/// `dφ = d_M∘φ − (−1)^{|φ|} φ∘d_P`.
pub fn coreduction<K: Coeff>(
    m: &DGModule<K>,
    window: (i64, i64),
    depth: Option<i64>,
    budget: &mut Budget,
) -> Result<Coreduction<K>> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Invalid(format!("empty window [{lo}, {hi}]")));
    }
    m.validate()?;
    let (inf, sup) = module_bounds(m)?;
    let needed = required_depth(inf, hi);
    let depth = match depth {
        None => needed,
        Some(d) if d <= needed => d,
        Some(d) => return Err(Error::InsufficientDepth { given: d, required: needed }),
    };
    let resolution = tate_resolve(m.algebra(), depth, budget)?;
    let extended = resolution.extended().clone();
    let orig_ngens = m.algebra().ngens();
    let adjoined: Vec<DGGen> = resolution.adjoined().to_vec();
    let algebra = m.algebra().clone();
    let base = algebra.base().clone();
    let nvars = base.nvars();

    // Per Hom-degree n: triples (resolution monomial w, target monomial m',
    // module basis k) with |m'| + |b_k| − |w| = n and |w| ≥ depth.
    let mut hom_basis: BTreeMap<i64, Vec<(GenMono, GenMono, usize)>> = BTreeMap::new();
    for n in lo - 1..=hi + 1 {
        let mut list = Vec::new();
        let w_lo = (inf - n).max(depth);
        let w_hi = (sup - n).min(0);
        for w_deg in (w_lo..=w_hi).rev() {
            for w in monomials_of_degree(&adjoined, w_deg) {
                for (k, mono) in m.underlying_basis(w_deg + n) {
                    list.push((w.clone(), mono, k));
                }
            }
        }
        if !list.is_empty() {
            hom_basis.insert(n, list);
        }
    }

    // differentials of every relevant resolution monomial, pre-split
    let mut splits: BTreeMap<GenMono, BTreeMap<GenMono, AlgElt<K>>> = BTreeMap::new();
    for list in hom_basis.values() {
        for (w, _, _) in list {
            if !splits.contains_key(w) {
                splits.insert(w.clone(), split_resolution_diff(&extended, orig_ngens, w));
            }
        }
    }

    let mut ranks = BTreeMap::new();
    for (&n, list) in &hom_basis {
        ranks.insert(n, list.len());
    }
    let mut diffs = BTreeMap::new();
    for n in lo - 1..=hi {
        let (Some(src), Some(tgt)) = (hom_basis.get(&n), hom_basis.get(&(n + 1))) else {
            continue;
        };
        let index_of: BTreeMap<(&GenMono, &GenMono, usize), usize> = tgt
            .iter()
            .enumerate()
            .map(|(r, (w, mono, k))| ((w, mono, k.to_owned()), r))
            .collect();
        let scatter = |mat: &mut Matrix<K>,
                           col: usize,
                           w: &GenMono,
                           value: &[AlgElt<K>],
                           negate: bool| {
            for (k2, elt) in value.iter().enumerate() {
                for (m2, p) in elt.terms() {
                    if let Some(&r) = index_of.get(&(w, m2, k2)) {
                        let add = if negate { p.neg() } else { p.clone() };
                        mat.set(r, col, mat.get(r, col).add(&add));
                    }
                }
            }
        };
        let mut mat = Matrix::zero(tgt.len(), src.len(), nvars);
        let n_odd = n.rem_euclid(2) == 1;
        for (col, (w_a, mono, k)) in src.iter().enumerate() {
            let m_elt = AlgElt::term(mono.clone(), Poly::one(nvars));
            // d_M(m'·b_k): component k gets d_A(m'), component i gets
            // (−1)^{|m'|} m'·a_{ik}
            let mut value: Vec<AlgElt<K>> = vec![algebra.zero_elt(); m.rank()];
            let dm = algebra.d_elt(&m_elt);
            value[*k] = value[*k].add(&dm);
            let m_deg = mono.degree(algebra.gens());
            for i in 0..m.rank() {
                let a = m.entry(i, *k);
                if a.is_zero() {
                    continue;
                }
                let prod = m_elt.mul(a, algebra.gens());
                let prod = if m_deg.rem_euclid(2) == 1 { prod.neg() } else { prod };
                value[i] = value[i].add(&prod);
            }
            scatter(&mut mat, col, w_a, &value, false);
            // −(−1)^n φ(d_P(w_β)) for every β whose differential reaches
            // w_α with coefficient c: value is (−1)^{n|c|} c·m'·b_k
            let w_a_deg = w_a.degree(&adjoined);
            for (w_b, split) in &splits {
                let w_b_deg = w_b.degree(&adjoined);
                if w_b_deg >= w_a_deg {
                    continue;
                }
                let Some(c) = split.get(w_a) else { continue };
                let c_deg = w_b_deg + 1 - w_a_deg;
                let mut v = c.mul(&m_elt, algebra.gens());
                let lin_odd = (n * c_deg).rem_euclid(2) == 1;
                // total sign: −(−1)^n · (−1)^{n·|c|}
                let negate = !n_odd; // −(−1)^n
                let negate = negate ^ lin_odd;
                if negate {
                    v = v.neg();
                }
                let mut value: Vec<AlgElt<K>> = vec![algebra.zero_elt(); m.rank()];
                value[*k] = v;
                scatter(&mut mat, col, w_b, &value, false);
            }
        }
        let mat = mat.map(|p| base.nf(p));
        if !mat.is_zero() {
            diffs.insert(n, mat);
        }
    }
    let hom = FreeComplex::new(base, ranks, diffs)?;
    hom.validate()?;
    let table = hom.cohomology_table(budget)?;
    let h0 = algebra.h0()?;
    let mut entries = BTreeMap::new();
    for n in lo..=hi {
        let entry = match table.get(n) {
            Some(module) => FPModule::new(h0.clone(), module.relations().clone()),
            None => FPModule::free(h0.clone(), 0),
        };
        entries.insert(n, entry);
    }
    Ok(Coreduction {
        table: CohomologyTable { entries },
        window,
        depth,
        resolution,
    })
}

/// Cohomology of `Hom_A(P, H⁰A)` on `[lo, hi]` — the co-reduction with the
/// degree-zero ring itself as target (the module `H⁰A` is not finite
/// semifree, so it cannot be passed to [`coreduction`] directly). The
/// algebra acts on the target through the augmentation, so the Hom complex
/// is a free complex over `H⁰A` with one generator per resolution monomial.
pub fn coreduction_restricted<K: Coeff>(
    algebra: &Arc<DGAlgebra<K>>,
    window: (i64, i64),
    depth: Option<i64>,
    budget: &mut Budget,
) -> Result<Coreduction<K>> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Invalid(format!("empty window [{lo}, {hi}]")));
    }
    let needed = required_depth(0, hi);
    let depth = match depth {
        None => needed,
        Some(d) if d <= needed => d,
        Some(d) => return Err(Error::InsufficientDepth { given: d, required: needed }),
    };
    let resolution = tate_resolve(algebra, depth, budget)?;
    let extended = resolution.extended().clone();
    let orig_ngens = algebra.ngens();
    let adjoined: Vec<DGGen> = resolution.adjoined().to_vec();
    let h0 = algebra.h0()?;
    let nvars = h0.nvars();

    // Hom^n has one H⁰A-generator per resolution monomial of degree −n.
    let mut per_degree: BTreeMap<i64, Vec<GenMono>> = BTreeMap::new();
    for n in lo - 1..=hi + 1 {
        if -n < depth || -n > 0 {
            continue;
        }
        let ws = monomials_of_degree(&adjoined, -n);
        if !ws.is_empty() {
            per_degree.insert(n, ws);
        }
    }
    let mut ranks = BTreeMap::new();
    for (&n, ws) in &per_degree {
        ranks.insert(n, ws.len());
    }
    let mut diffs = BTreeMap::new();
    for n in lo - 1..=hi {
        let (Some(src), Some(tgt)) = (per_degree.get(&n), per_degree.get(&(n + 1))) else {
            continue;
        };
        // (dφ_α)(w_β) = −(−1)^n · image of c_{αβ} in H⁰A, where
        // d_P(w_β) = Σ c_{γβ} w_γ and |w_β| = −(n+1), |w_α| = −n
        let mut mat = Matrix::zero(tgt.len(), src.len(), nvars);
        let negate = n.rem_euclid(2) == 0; // −(−1)^n
        for (row, w_b) in tgt.iter().enumerate() {
            let split = split_resolution_diff(&extended, orig_ngens, w_b);
            for (col, w_a) in src.iter().enumerate() {
                let Some(c) = split.get(w_a) else { continue };
                let cbar = h0.nf(&c.base_part());
                if cbar.is_zero() {
                    continue;
                }
                mat.set(row, col, if negate { cbar.neg() } else { cbar });
            }
        }
        if !mat.is_zero() {
            diffs.insert(n, mat);
        }
    }
    let hom = FreeComplex::new(h0.clone(), ranks, diffs)?;
    hom.validate()?;
    let table = hom.cohomology_table(budget)?;
    let mut entries = BTreeMap::new();
    for n in lo..=hi {
        let entry = match table.entries.get(&n) {
            Some(module) => module.clone(),
            None => FPModule::free(h0.clone(), 0),
        };
        entries.insert(n, entry);
    }
    Ok(Coreduction {
        table: CohomologyTable { entries },
        window,
        depth,
        resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PresentedRing;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qring(vars: &[&str]) -> Arc<PresentedRing<Q>> {
        PresentedRing::polynomial(
            FieldKind::Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn exterior_e() -> Arc<DGAlgebra<Q>> {
        // Λ(e) over ℚ: |e| = −1, de = 0
        let r = qring(&[]);
        DGAlgebra::new(
            r,
            vec![DGGen { name: "e".into(), degree: -1 }],
            vec![AlgElt::zero(1, 0)],
        )
        .unwrap()
    }

    fn poly_t() -> Arc<DGAlgebra<Q>> {
        // ℚ[t]: |t| = −2, dt = 0
        let r = qring(&[]);
        DGAlgebra::new(
            r,
            vec![DGGen { name: "t".into(), degree: -2 }],
            vec![AlgElt::zero(1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn regular_koszul_needs_no_adjunction() {
        let r = qring(&["x"]);
        let a =
            DGAlgebra::koszul(r.clone(), vec!["e".into()], vec![r.parse("x").unwrap()]).unwrap();
        let mut b = Budget::standard();
        let res = tate_resolve(&a, -5, &mut b).unwrap();
        assert!(res.adjoined().is_empty());
        res.certify(&mut b).unwrap();
    }

    #[test]
    fn exterior_algebra_adjoins_one_even_generator() {
        let a = exterior_e();
        let mut b = Budget::standard();
        let res = tate_resolve(&a, -5, &mut b).unwrap();
        let adj = res.adjoined();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].degree, -2);
        assert!(!adj[0].is_odd());
        let summary = res.adjoined_summary();
        assert_eq!(summary[0].3, "e");
        res.certify(&mut b).unwrap();
    }

    #[test]
    fn even_generator_resolves_finitely_with_one_odd_adjunction() {
        let a = poly_t();
        let mut b = Budget::standard();
        let res = tate_resolve(&a, -7, &mut b).unwrap();
        let adj = res.adjoined();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].degree, -3);
        assert!(adj[0].is_odd());
        assert_eq!(res.adjoined_summary()[0].3, "t");
        res.certify(&mut b).unwrap();
    }

    #[test]
    fn ext_pattern_over_the_exterior_algebra() {
        let a = exterior_e();
        let mut b = Budget::standard();
        let co = coreduction_restricted(&a, (0, 4), None, &mut b).unwrap();
        let dims: Vec<usize> = (0..=4)
            .map(|n| co.table.get(n).unwrap().k_dimension(&mut b).unwrap().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn coreduction_of_the_exterior_algebra_itself_sits_in_degree_minus_one() {
        // RHom_{Λ(e)}(ℚ, Λ(e)) ≃ ℚ concentrated in degree −1
        let a = exterior_e();
        let m = DGModule::free(a.clone(), 0);
        let mut b = Budget::standard();
        let co = coreduction(&m, (-2, 2), None, &mut b).unwrap();
        let dims: Vec<(i64, usize)> = (-2..=2)
            .map(|n| {
                (n, co.table.get(n).unwrap().k_dimension(&mut b).unwrap().unwrap())
            })
            .collect();
        assert_eq!(dims, vec![(-2, 0), (-1, 1), (0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn coreduction_of_a_contractible_module_vanishes_everywhere() {
        let a = exterior_e();
        let m = DGModule::free(a.clone(), 0);
        let cone = m.cone_scalar(&a.base().one());
        let mut b = Budget::standard();
        let co = coreduction(&cone, (-3, 3), None, &mut b).unwrap();
        for n in -3..=3 {
            assert!(co.table.get(n).unwrap().is_zero(&mut b).unwrap(), "degree {n}");
        }
    }

    #[test]
    fn coreduction_over_a_regular_koszul_algebra_is_plain_hom() {
        // A = K(ℚ[x]; x) resolves H⁰A by itself: Hom_A(A, A) ≅ A, so the
        // co-reduction table is the cohomology of A: H⁰A in degree 0.
        let r = qring(&["x"]);
        let a =
            DGAlgebra::koszul(r.clone(), vec!["e".into()], vec![r.parse("x").unwrap()]).unwrap();
        let m = DGModule::free(a.clone(), 0);
        let mut b = Budget::standard();
        let co = coreduction(&m, (-2, 2), None, &mut b).unwrap();
        assert!(co.resolution.adjoined().is_empty());
        for n in -2..=2 {
            let dim = co.table.get(n).unwrap().k_dimension(&mut b).unwrap().unwrap();
            assert_eq!(dim, usize::from(n == 0), "degree {n}");
        }
    }

    #[test]
    fn insufficient_depth_is_reported_with_the_requirement() {
        let a = exterior_e();
        let m = DGModule::free(a.clone(), 0);
        let mut b = Budget::standard();
        // inf(M) = −1, hi = 4 → required −6; −3 is too shallow
        let err = coreduction(&m, (0, 4), Some(-3), &mut b).unwrap_err();
        assert_eq!(err, Error::InsufficientDepth { given: -3, required: -6 });
    }

    #[test]
    fn characteristic_p_is_rejected() {
        use crate::scalar::Fp;
        let r: Arc<PresentedRing<Fp>> =
            PresentedRing::polynomial(FieldKind::Prime(7), vec![]).unwrap();
        let a = DGAlgebra::new(
            r,
            vec![DGGen { name: "e".into(), degree: -1 }],
            vec![AlgElt::zero(1, 0)],
        )
        .unwrap();
        let mut b = Budget::standard();
        assert_eq!(
            tate_resolve(&a, -3, &mut b).unwrap_err(),
            Error::CharacteristicZeroOnly
        );
    }

    #[test]
    fn restricted_ext_over_the_nonregular_koszul_algebra() {
        // A = K(ℚ[x]/(x²); x): the cycle x·e is killed by one even
        // generator y₁ (|y₁| = −2, dy₁ = x·e) and the resolution finishes,
        // so the restricted pattern is even-concentrated like Λ(e)'s.
        let tmpvars = qring(&["x"]);
        let base = PresentedRing::new(
            FieldKind::Rationals,
            vec!["x".into()],
            vec![tmpvars.parse("x^2").unwrap()],
        )
        .unwrap();
        let a = DGAlgebra::koszul(base.clone(), vec!["e".into()], vec![base.parse("x").unwrap()])
            .unwrap();
        let mut b = Budget::standard();
        let co = coreduction_restricted(&a, (0, 2), None, &mut b).unwrap();
        let adj = co.resolution.adjoined();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].degree, -2);
        assert_eq!(co.resolution.adjoined_summary()[0].3, "x*e");
        let dims: Vec<usize> = (0..=2)
            .map(|n| co.table.get(n).unwrap().k_dimension(&mut b).unwrap().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 1]);
    }
}
