//! Bounded complexes of finite free modules over a presented ring:
//! validation, cohomology presentations, truncation tables, tensor
//! products, and fibers at rational points.

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::matrix::{Matrix, ScalarMat};
use crate::poly::Poly;
use crate::ring::{Ideal, PresentedRing};
use crate::scalar::Coeff;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A point of the variety of the ring: one coordinate per variable, at
/// which every relation vanishes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint<K> {
    coords: Vec<K>,
}

impl<K: Coeff> RationalPoint<K> {
    pub fn new(ring: &PresentedRing<K>, coords: Vec<K>) -> Result<RationalPoint<K>> {
        if coords.len() != ring.nvars() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                ring.nvars()
            )));
        }
        for r in ring.relations() {
            if !r.eval(&coords).is_zero() {
                return Err(Error::PointOffVariety { relation: ring.display(r) });
            }
        }
        Ok(RationalPoint { coords })
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }
}

/// A finitely presented module: cokernel of the relation matrix, whose
/// rows index generators and columns index relations.
#[derive(Clone, Debug)]
pub struct FPModule<K> {
    ring: Arc<PresentedRing<K>>,
    relations: Matrix<K>,
}

impl<K: Coeff> FPModule<K> {
    pub fn new(ring: Arc<PresentedRing<K>>, relations: Matrix<K>) -> FPModule<K> {
        let relations = relations.map(|p| ring.nf(p));
        FPModule { ring, relations }
    }

    /// Free module of the given rank (no relations).
    pub fn free(ring: Arc<PresentedRing<K>>, rank: usize) -> FPModule<K> {
        let nvars = ring.nvars();
        FPModule { ring, relations: Matrix::zero(rank, 0, nvars) }
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn num_gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix<K> {
        &self.relations
    }

    /// Zeroth Fitting ideal: maximal minors of the presentation. With no
    /// generators this is the unit ideal; with fewer relation columns than
    /// generators it is the zero ideal. Its vanishing locus is the support.
    pub fn fitting_ideal(&self) -> Ideal<K> {
        let g = self.num_gens();
        if g == 0 {
            return Ideal::unit(self.ring.clone());
        }
        if self.relations.cols() < g {
            return Ideal::zero(self.ring.clone());
        }
        Ideal::new(self.ring.clone(), self.relations.minors(g))
    }

    /// The module is zero: every generator lies in the relation span.
    pub fn is_zero(&self, budget: &mut Budget) -> Result<bool> {
        let g = self.num_gens();
        if g == 0 {
            return Ok(true);
        }
        for i in 0..g {
            let mut e = vec![self.ring.zero(); g];
            e[i] = self.ring.one();
            if self.ring.module_lift(&e, &self.relations, budget)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension of `M ⊗ κ(a)` over the field: generators minus the rank
    /// of the relation matrix evaluated at the point.
    pub fn fiber_dim(&self, point: &RationalPoint<K>) -> usize {
        let rank = self.relations.eval(point.coords()).rank();
        self.num_gens() - rank
    }

    /// Dimension over the ground field of the whole module, or `None` when
    /// it is infinite-dimensional. Counts standard monomials against a
    /// Gröbner basis of the relation submodule.
    pub fn k_dimension(&self, budget: &mut Budget) -> Result<Option<usize>> {
        let g = self.num_gens();
        if g == 0 {
            return Ok(Some(0));
        }
        let cols = self.relations.columns();
        let gb = self.ring.submodule_basis(&cols, g, budget)?;
        let order = self.ring.order();
        let module_order = crate::monomial::MonomialOrder::PositionOverTerm(
            crate::monomial::BaseOrder::GrevLex,
        );
        let _ = order;
        let mut leads: Vec<Vec<crate::monomial::Monomial>> = vec![Vec::new(); g];
        for v in &gb {
            if let Some(((pos, m), _)) = v.leading(module_order) {
                leads[pos].push(m.clone());
            }
        }
        let n = self.ring.nvars();
        let mut total = 0usize;
        for pos_leads in &leads {
            // Finite iff each variable has a pure power among the leads
            // (for n = 0 the single monomial 1 must be a lead or not).
            let mut bounds = vec![0u32; n];
            for i in 0..n {
                let mut bound = None;
                for m in pos_leads {
                    let pure = (0..n).all(|j| j == i || m.0[j] == 0);
                    if pure && m.0.get(i).copied().unwrap_or(0) > 0 {
                        let e = m.0[i];
                        bound = Some(bound.map_or(e, |b: u32| b.min(e)));
                    }
                }
                match bound {
                    Some(e) => bounds[i] = e,
                    None => return Ok(None),
                }
            }
            if n == 0 {
                let killed = pos_leads.iter().any(|m| m.is_one());
                total += usize::from(!killed);
                continue;
            }
            // Enumerate exponent boxes below the bounds and keep standard
            // monomials (not divisible by any lead).
            let mut stack = vec![vec![0u32; 0]];
            while let Some(partial) = stack.pop() {
                if partial.len() == n {
                    let m = crate::monomial::Monomial(partial);
                    if !pos_leads.iter().any(|l| l.divides(&m)) {
                        total += 1;
                    }
                    continue;
                }
                let i = partial.len();
                for e in 0..bounds[i].max(1) {
                    let mut next = partial.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
        Ok(Some(total))
    }
}

/// Map degree → cohomology presentation; degrees with zero modules may be
/// present, so use [`CohomologyTable::nonzero_degrees`] for the support.
#[derive(Clone, Debug)]
pub struct CohomologyTable<K> {
    pub entries: BTreeMap<i64, FPModule<K>>,
}

impl<K: Coeff> CohomologyTable<K> {
    pub fn get(&self, n: i64) -> Option<&FPModule<K>> {
        self.entries.get(&n)
    }

    pub fn nonzero_degrees(&self, budget: &mut Budget) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for (n, m) in &self.entries {
            if !m.is_zero(budget)? {
                out.push(*n);
            }
        }
        Ok(out)
    }

    /// Fiber dimensions of every entry at a point.
    pub fn fiber_dims(&self, point: &RationalPoint<K>) -> BTreeMap<i64, usize> {
        self.entries.iter().map(|(n, m)| (*n, m.fiber_dim(point))).collect()
    }
}

/// Which side of a smart truncation to keep.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TruncSide {
    /// Degrees ≤ n.
    AtMost,
    /// Degrees > n.
    Above,
}

/// A bounded complex of finite free modules, cohomological convention:
/// `d^n : X^n → X^{n+1}` and `d^{n+1} ∘ d^n = 0` modulo the ring relations.
#[derive(Clone, Debug)]
pub struct FreeComplex<K> {
    ring: Arc<PresentedRing<K>>,
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix<K>>,
}

impl<K: Coeff> PartialEq for FreeComplex<K> {
    fn eq(&self, other: &Self) -> bool {
        if !PresentedRing::same_ring(&self.ring, &other.ring) || self.ranks != other.ranks {
            return false;
        }
        let degrees: std::collections::BTreeSet<i64> =
            self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        degrees.iter().all(|&n| self.diff(n) == other.diff(n))
    }
}

impl<K: Coeff> Eq for FreeComplex<K> {}

/// One nonzero entry of a composite `d∘d`, reported by validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Violation {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub entry: String,
}

impl<K: Coeff> FreeComplex<K> {
    /// Build a complex from ranks and differentials. Checks shapes and
    /// arities and puts every entry in canonical form; `d∘d = 0` is NOT
    /// checked here — see [`FreeComplex::validate`].
    pub fn new(
        ring: Arc<PresentedRing<K>>,
        ranks: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix<K>>,
    ) -> Result<FreeComplex<K>> {
        let ranks: BTreeMap<i64, usize> =
            ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        let mut clean: BTreeMap<i64, Matrix<K>> = BTreeMap::new();
        for (n, m) in diffs {
            let want_rows = ranks.get(&(n + 1)).copied().unwrap_or(0);
            let want_cols = ranks.get(&n).copied().unwrap_or(0);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(Error::Invalid(format!(
                    "differential at degree {n} has shape {}×{}, expected {want_rows}×{want_cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.nvars() != ring.nvars() {
                return Err(Error::Invalid(format!(
                    "differential at degree {n} uses {} variables, ring has {}",
                    m.nvars(),
                    ring.nvars()
                )));
            }
            let m = m.map(|p| ring.nf(p));
            if !m.is_zero() {
                clean.insert(n, m);
            }
        }
        Ok(FreeComplex { ring, ranks, diffs: clean })
    }

    /// The zero complex.
    pub fn zero(ring: Arc<PresentedRing<K>>) -> FreeComplex<K> {
        FreeComplex { ring, ranks: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Free module of a given rank concentrated in one degree.
    pub fn concentrated(
        ring: Arc<PresentedRing<K>>,
        degree: i64,
        rank: usize,
    ) -> FreeComplex<K> {
        let mut ranks = BTreeMap::new();
        if rank > 0 {
            ranks.insert(degree, rank);
        }
        FreeComplex { ring, ranks, diffs: BTreeMap::new() }
    }

    /// Two-term complex `R --f--> R` in degrees `lo`, `lo+1`.
    pub fn two_term(
        ring: Arc<PresentedRing<K>>,
        lo: i64,
        f: Poly<K>,
    ) -> Result<FreeComplex<K>> {
        let nvars = ring.nvars();
        let mut ranks = BTreeMap::new();
        ranks.insert(lo, 1);
        ranks.insert(lo + 1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(lo, Matrix::from_rows(nvars, vec![vec![f]]));
        FreeComplex::new(ring, ranks, diffs)
    }

    /// Koszul complex on a sequence of ring elements, in degrees `−c..0`:
    /// basis in degree `−k` indexed by the size-`k` subsets in
    /// lexicographic order, with `d(e_S) = Σ_t (−1)^{t−1} f_{i_t} e_{S∖i_t}`.
    pub fn koszul(
        ring: Arc<PresentedRing<K>>,
        elements: &[Poly<K>],
    ) -> Result<FreeComplex<K>> {
        let c = elements.len();
        let nvars = ring.nvars();
        for f in elements {
            if f.nvars() != nvars {
                return Err(Error::Invalid("Koszul element arity mismatch".into()));
            }
        }
        let subsets: Vec<Vec<Vec<usize>>> =
            (0..=c).map(|k| combinations(c, k)).collect();
        let mut ranks = BTreeMap::new();
        for (k, subs) in subsets.iter().enumerate() {
            ranks.insert(-(k as i64), subs.len());
        }
        let mut diffs = BTreeMap::new();
        for k in 1..=c {
            // d^{-k} : degree −k → −k+1
            let source = &subsets[k];
            let target = &subsets[k - 1];
            let index_of = |s: &[usize]| target.iter().position(|t| t == s).unwrap();
            let mut m = Matrix::zero(target.len(), source.len(), nvars);
            for (col, s) in source.iter().enumerate() {
                for (t, &i) in s.iter().enumerate() {
                    let mut reduced = s.clone();
                    reduced.remove(t);
                    let row = index_of(&reduced);
                    let sign = if t % 2 == 0 { 1 } else { -1 };
                    let entry = if sign == 1 {
                        elements[i].clone()
                    } else {
                        elements[i].neg()
                    };
                    m.set(row, col, m.get(row, col).add(&entry));
                }
            }
            diffs.insert(-(k as i64), m);
        }
        FreeComplex::new(ring, ranks, diffs)
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// Degree range with nonzero ranks, or `None` for the zero complex.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.ranks.keys().next()?;
        let hi = self.ranks.keys().next_back()?;
        Some((*lo, *hi))
    }

    /// The differential `d^n`, materialized as a zero matrix when absent.
    pub fn diff(&self, n: i64) -> Matrix<K> {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.rank(n + 1), self.rank(n), self.ring.nvars()),
        }
    }

    /// All nonzero composites `d^{n+1} ∘ d^n`, as entry-level violations.
    pub fn d2_violations(&self) -> Vec<D2Violation> {
        let mut out = Vec::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        for n in lo..hi {
            let comp = self.diff(n + 1).mul(&self.diff(n)).map(|p| self.ring.nf(p));
            for i in 0..comp.rows() {
                for j in 0..comp.cols() {
                    let e = comp.get(i, j);
                    if !e.is_zero() {
                        out.push(D2Violation {
                            degree: n,
                            row: i,
                            col: j,
                            entry: self.ring.display(e),
                        });
                    }
                }
            }
        }
        out
    }

    /// Fails with a report when some composite is nonzero.
    pub fn validate(&self) -> Result<()> {
        let v = self.d2_violations();
        if v.is_empty() {
            Ok(())
        } else {
            let mut msg = String::from("d∘d ≠ 0:");
            for viol in v.iter().take(4) {
                msg.push_str(&format!(
                    " [degree {} entry ({},{}) = {}]",
                    viol.degree, viol.row, viol.col, viol.entry
                ));
            }
            if v.len() > 4 {
                msg.push_str(&format!(" … and {} more", v.len() - 4));
            }
            Err(Error::Invalid(msg))
        }
    }

    /// Shift by `s`: `(X[s])^n = X^{n+s}`, differential scaled by `(−1)^s`.
    pub fn shift(&self, s: i64) -> FreeComplex<K> {
        let ranks = self.ranks.iter().map(|(n, r)| (n - s, *r)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(n, m)| {
                let m = if s.rem_euclid(2) == 0 { m.clone() } else { m.neg() };
                (n - s, m)
            })
            .collect();
        FreeComplex { ring: self.ring.clone(), ranks, diffs }
    }

    /// Direct sum, first summand's basis first in every degree.
    pub fn direct_sum(&self, other: &FreeComplex<K>) -> FreeComplex<K> {
        assert!(PresentedRing::same_ring(&self.ring, &other.ring));
        let mut ranks = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i64> =
            self.ranks.keys().chain(other.ranks.keys()).copied().collect();
        for &n in &degrees {
            let r = self.rank(n) + other.rank(n);
            if r > 0 {
                ranks.insert(n, r);
            }
        }
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let a = self.diff(n);
            let b = other.diff(n);
            let rows = self.rank(n + 1) + other.rank(n + 1);
            let cols = self.rank(n) + other.rank(n);
            let mut m = Matrix::zero(rows, cols, self.ring.nvars());
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(self.rank(n + 1) + i, self.rank(n) + j, b.get(i, j).clone());
                }
            }
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        FreeComplex { ring: self.ring.clone(), ranks, diffs }
    }

    /// Total tensor product with Koszul signs. In degree `n` the basis is
    /// grouped by blocks `X^p ⊗ Y^q` (p ascending), each block ordered by
    /// (i, j) with the second factor's index fastest.
    pub fn tensor(&self, other: &FreeComplex<K>) -> FreeComplex<K> {
        assert!(PresentedRing::same_ring(&self.ring, &other.ring));
        let nvars = self.ring.nvars();
        let (Some((alo, ahi)), Some((blo, bhi))) =
            (self.degree_range(), other.degree_range())
        else {
            return FreeComplex::zero(self.ring.clone());
        };
        // blocks(n) = [(p, q, offset)] for each nonzero X^p, Y^q with p+q=n
        let block_table = |n: i64| -> Vec<(i64, i64, usize)> {
            let mut out = Vec::new();
            let mut off = 0;
            for p in alo..=ahi {
                let q = n - p;
                let (rp, rq) = (self.rank(p), other.rank(q));
                if rp > 0 && rq > 0 {
                    out.push((p, q, off));
                    off += rp * rq;
                }
            }
            out
        };
        let mut ranks = BTreeMap::new();
        for n in (alo + blo)..=(ahi + bhi) {
            let total: usize =
                block_table(n).iter().map(|(p, q, _)| self.rank(*p) * other.rank(*q)).sum();
            if total > 0 {
                ranks.insert(n, total);
            }
        }
        let rank_of = |blocks: &[(i64, i64, usize)]| -> usize {
            blocks.last().map_or(0, |(p, q, off)| off + self.rank(*p) * other.rank(*q))
        };
        let mut diffs = BTreeMap::new();
        for n in (alo + blo)..=(ahi + bhi) {
            let src = block_table(n);
            let tgt = block_table(n + 1);
            let (rows, cols) = (rank_of(&tgt), rank_of(&src));
            if rows == 0 || cols == 0 {
                continue;
            }
            let tgt_off = |p: i64, q: i64| -> Option<usize> {
                tgt.iter().find(|(tp, tq, _)| *tp == p && *tq == q).map(|(_, _, o)| *o)
            };
            let mut m = Matrix::zero(rows, cols, nvars);
            for &(p, q, off) in &src {
                let (rp, rq) = (self.rank(p), other.rank(q));
                // d_X ⊗ 1 : block (p, q) → (p+1, q)
                if let Some(to) = tgt_off(p + 1, q) {
                    let dx = self.diff(p);
                    for i2 in 0..dx.rows() {
                        for i in 0..rp {
                            let e = dx.get(i2, i);
                            if e.is_zero() {
                                continue;
                            }
                            for j in 0..rq {
                                let (r, c) = (to + i2 * rq + j, off + i * rq + j);
                                m.set(r, c, m.get(r, c).add(e));
                            }
                        }
                    }
                }
                // (−1)^p (1 ⊗ d_Y) : block (p, q) → (p, q+1)
                if let Some(to) = tgt_off(p, q + 1) {
                    let dy = other.diff(q);
                    let negate = p.rem_euclid(2) == 1;
                    for j2 in 0..dy.rows() {
                        for j in 0..rq {
                            let e = dy.get(j2, j);
                            if e.is_zero() {
                                continue;
                            }
                            let e = if negate { e.neg() } else { e.clone() };
                            for i in 0..rp {
                                let (r, c) = (to + i * dy.rows() + j2, off + i * rq + j);
                                m.set(r, c, m.get(r, c).add(&e));
                            }
                        }
                    }
                }
            }
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        FreeComplex { ring: self.ring.clone(), ranks, diffs }
    }

    /// Evaluate every differential at a point.
    pub fn fiber(&self, point: &RationalPoint<K>) -> BTreeMap<i64, ScalarMat<K>> {
        self.diffs.iter().map(|(n, m)| (*n, m.eval(point.coords()))).collect()
    }

    /// Cohomology dimensions of the fiber complex at a point, by exact
    /// rank computation: `dim H^n = rank(n) − rank d^n(a) − rank d^{n−1}(a)`.
    pub fn fiber_dims(&self, point: &RationalPoint<K>) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        let rank_at = |n: i64| -> usize {
            match self.diffs.get(&n) {
                Some(m) => m.eval(point.coords()).rank(),
                None => 0,
            }
        };
        for n in lo..=hi {
            if self.rank(n) == 0 {
                out.insert(n, 0);
                continue;
            }
            let dim = self.rank(n) - rank_at(n) - rank_at(n - 1);
            out.insert(n, dim);
        }
        out
    }

    /// Presentation of `H^n = ker d^n / im d^{n−1}`: generators are the
    /// kernel generators `K` of `d^n`; relations are the lifts of the
    /// columns of `d^{n−1}` through `K` together with the syzygies of `K`.
    pub fn cohomology(&self, n: i64, budget: &mut Budget) -> Result<FPModule<K>> {
        self.validate()?;
        let nvars = self.ring.nvars();
        if self.rank(n) == 0 {
            return Ok(FPModule::new(self.ring.clone(), Matrix::zero(0, 0, nvars)));
        }
        let dn = self.diff(n);
        let kernel = self.ring.module_syzygies(&dn, budget)?;
        let g = kernel.len();
        let kmat = Matrix::from_columns(nvars, self.rank(n), kernel.clone());
        let mut rel_cols: Vec<Vec<Poly<K>>> = Vec::new();
        if self.rank(n - 1) > 0 {
            let prev = self.diff(n - 1);
            for col in prev.columns() {
                let lift = self
                    .ring
                    .module_lift(&col, &kmat, budget)?
                    .ok_or_else(|| {
                        Error::Invalid(
                            "image of the previous differential escapes the kernel".into(),
                        )
                    })?;
                rel_cols.push(lift);
            }
        }
        rel_cols.extend(self.ring.module_syzygies(&kmat, budget)?);
        let rels = Matrix::from_columns(nvars, g, rel_cols);
        Ok(FPModule::new(self.ring.clone(), rels))
    }

    /// Cohomology table over the whole degree range.
    pub fn cohomology_table(&self, budget: &mut Budget) -> Result<CohomologyTable<K>> {
        let mut entries = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for n in lo..=hi {
                entries.insert(n, self.cohomology(n, budget)?);
            }
        }
        Ok(CohomologyTable { entries })
    }

    /// `sup`, `inf`, and amplitude, derived from cohomology (not ranks);
    /// `None` for an acyclic complex.
    pub fn amplitude(&self, budget: &mut Budget) -> Result<Option<(i64, i64)>> {
        let table = self.cohomology_table(budget)?;
        let degs = table.nonzero_degrees(budget)?;
        match (degs.first(), degs.last()) {
            (Some(&lo), Some(&hi)) => Ok(Some((lo, hi))),
            _ => Ok(None),
        }
    }

    /// Cohomology table of a smart truncation: degrees on the kept side
    /// inherit `H^i(C)`, the other degrees are zero.
    pub fn smart_truncate(
        &self,
        n: i64,
        side: TruncSide,
        budget: &mut Budget,
    ) -> Result<CohomologyTable<K>> {
        let full = self.cohomology_table(budget)?;
        let kept = full
            .entries
            .into_iter()
            .filter(|(i, _)| match side {
                TruncSide::AtMost => *i <= n,
                TruncSide::Above => *i > n,
            })
            .collect();
        Ok(CohomologyTable { entries: kept })
    }

    /// The three cohomology tables of `smt^{≤n}C → C → smt^{>n}C`.
    pub fn truncation_triangle(
        &self,
        n: i64,
        budget: &mut Budget,
    ) -> Result<(CohomologyTable<K>, CohomologyTable<K>, CohomologyTable<K>)> {
        let below = self.smart_truncate(n, TruncSide::AtMost, budget)?;
        let full = self.cohomology_table(budget)?;
        let above = self.smart_truncate(n, TruncSide::Above, budget)?;
        Ok((below, full, above))
    }
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap<K> {
    source: FreeComplex<K>,
    target: FreeComplex<K>,
    mats: BTreeMap<i64, Matrix<K>>,
}

impl<K: Coeff> ChainMap<K> {
    pub fn new(
        source: FreeComplex<K>,
        target: FreeComplex<K>,
        mats: BTreeMap<i64, Matrix<K>>,
    ) -> Result<ChainMap<K>> {
        if !PresentedRing::same_ring(source.ring(), target.ring()) {
            return Err(Error::Incompatible("chain map across different rings".into()));
        }
        let ring = source.ring().clone();
        let mut clean: BTreeMap<i64, Matrix<K>> = BTreeMap::new();
        for (n, m) in mats {
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) {
                return Err(Error::Invalid(format!(
                    "chain map at degree {n} has shape {}×{}, expected {}×{}",
                    m.rows(),
                    m.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
            clean.insert(n, m.map(|p| ring.nf(p)));
        }
        let cm = ChainMap { source, target, mats: clean };
        cm.check_commutes()?;
        Ok(cm)
    }

    /// `c · id` as a map `X → X`.
    pub fn scalar(x: &FreeComplex<K>, c: &Poly<K>) -> Result<ChainMap<K>> {
        let mut mats = BTreeMap::new();
        for (&n, &r) in x.ranks() {
            mats.insert(n, Matrix::identity(r, x.ring().nvars()).scale(c));
        }
        ChainMap::new(x.clone(), x.clone(), mats)
    }

    fn mat(&self, n: i64) -> Matrix<K> {
        match self.mats.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(
                self.target.rank(n),
                self.source.rank(n),
                self.source.ring().nvars(),
            ),
        }
    }

    fn check_commutes(&self) -> Result<()> {
        let ring = self.source.ring();
        let degrees: std::collections::BTreeSet<i64> = self
            .source
            .ranks()
            .keys()
            .chain(self.target.ranks().keys())
            .copied()
            .collect();
        for &n in &degrees {
            let lhs = self.target.diff(n).mul(&self.mat(n));
            let rhs = self.mat(n + 1).mul(&self.source.diff(n));
            if !lhs.add(&rhs.neg()).map(|p| ring.nf(p)).is_zero() {
                return Err(Error::Invalid(format!(
                    "map does not commute with differentials at degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Mapping cone: `C^n = Y^n ⊕ X^{n+1}` with
    /// `d(y, x) = (d_Y y + f x, −d_X x)`.
    pub fn cone(&self) -> FreeComplex<K> {
        let ring = self.source.ring().clone();
        let nvars = ring.nvars();
        let x = &self.source;
        let y = &self.target;
        let mut degrees: std::collections::BTreeSet<i64> = y.ranks().keys().copied().collect();
        degrees.extend(x.ranks().keys().map(|n| n - 1));
        let mut ranks = BTreeMap::new();
        for &n in &degrees {
            let r = y.rank(n) + x.rank(n + 1);
            if r > 0 {
                ranks.insert(n, r);
            }
        }
        let rank = |n: i64| y.rank(n) + x.rank(n + 1);
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let (rows, cols) = (rank(n + 1), rank(n));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = Matrix::zero(rows, cols, nvars);
            let dy = y.diff(n);
            for i in 0..dy.rows() {
                for j in 0..dy.cols() {
                    m.set(i, j, dy.get(i, j).clone());
                }
            }
            let f = self.mat(n + 1);
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    m.set(i, y.rank(n) + j, f.get(i, j).clone());
                }
            }
            let dx = x.diff(n + 1);
            for i in 0..dx.rows() {
                for j in 0..dx.cols() {
                    m.set(y.rank(n + 1) + i, y.rank(n) + j, dx.get(i, j).neg());
                }
            }
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        FreeComplex { ring, ranks, diffs }
    }
}

/// All size-`k` subsets of `0..n`, each ascending, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}
