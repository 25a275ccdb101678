//! Buchberger's algorithm for ideals and submodules of free modules,
//! with syzygies and lifts through a tag-block elimination order.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::{BaseOrder, Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::scalar::Coeff;
use std::collections::{BTreeMap, BTreeSet};

/// Default S-pair budget for a single Gröbner run.
pub const DEFAULT_SPAIR_BUDGET: u64 = 200_000;

/// Counts S-pair reductions; exceeding the limit aborts with a clean error.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn standard() -> Budget {
        Budget::new(DEFAULT_SPAIR_BUDGET)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::ResourceLimit { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::standard()
    }
}

/// Element of a free module `R^rank`: finite map `(position, monomial) → coeff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec<K> {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<(usize, Monomial), K>,
}

impl<K: Coeff> ModVec<K> {
    pub fn zero(rank: usize, nvars: usize) -> ModVec<K> {
        ModVec { rank, nvars, terms: BTreeMap::new() }
    }

    /// Embed a column vector into positions `0..col.len()` of `R^rank`.
    pub fn from_column(col: &[Poly<K>], rank: usize, nvars: usize) -> ModVec<K> {
        let mut v = ModVec::zero(rank, nvars);
        for (pos, p) in col.iter().enumerate() {
            for (m, k) in p.terms() {
                v.add_term(pos, m.clone(), k.clone());
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, pos: usize, m: Monomial, k: K) {
        debug_assert!(pos < self.rank);
        debug_assert_eq!(m.nvars(), self.nvars);
        if k.is_zero() {
            return;
        }
        match self.terms.entry((pos, m)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + k;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn sub_scaled(&mut self, other: &ModVec<K>, shift: &Monomial, c: &K) {
        for ((pos, m), k) in &other.terms {
            self.add_term(*pos, m.mul(shift), -(k.clone() * c.clone()));
        }
    }

    /// Leading term under `order`: `((position, monomial), coefficient)`.
    pub fn leading(&self, order: MonomialOrder) -> Option<((usize, &Monomial), &K)> {
        self.terms
            .iter()
            .max_by(|((pa, ma), _), ((pb, mb), _)| order.cmp_term((*pa, ma), (*pb, mb)))
            .map(|((p, m), k)| ((*p, m), k))
    }

    pub fn monic(&self, order: MonomialOrder) -> ModVec<K> {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.try_inv().expect("nonzero leading coefficient");
                let mut out = ModVec::zero(self.rank, self.nvars);
                for ((p, m), k) in &self.terms {
                    out.terms.insert((*p, m.clone()), k.clone() * inv.clone());
                }
                out
            }
        }
    }

    /// The component at `pos` as a polynomial.
    pub fn component(&self, pos: usize) -> Poly<K> {
        let mut p = Poly::zero(self.nvars);
        for ((q, m), k) in &self.terms {
            if *q == pos {
                p.add_term(m.clone(), k.clone());
            }
        }
        p
    }

    /// Whether any term lives at a position `< bound`.
    pub fn has_term_below(&self, bound: usize) -> bool {
        self.terms.keys().any(|(p, _)| *p < bound)
    }
}

/// Full normal form of `f` against `basis` (every term reduced).
///
/// Deterministic: divisors are tried in basis order. When `basis` is a
/// Gröbner basis the result is the unique remainder.
pub fn reduce_modvec<K: Coeff>(
    f: &ModVec<K>,
    basis: &[ModVec<K>],
    order: MonomialOrder,
) -> ModVec<K> {
    let leads: Vec<Option<((usize, Monomial), K)>> = basis
        .iter()
        .map(|g| g.leading(order).map(|((p, m), c)| ((p, m.clone()), c.clone())))
        .collect();
    reduce_with_leads(f, basis, &leads, order)
}

fn reduce_with_leads<K: Coeff>(
    f: &ModVec<K>,
    basis: &[ModVec<K>],
    leads: &[Option<((usize, Monomial), K)>],
    order: MonomialOrder,
) -> ModVec<K> {
    let mut work = f.clone();
    let mut out = ModVec::zero(f.rank, f.nvars);
    'outer: while let Some(((pos, mono), coeff)) = work
        .leading(order)
        .map(|((p, m), c)| ((p, m.clone()), c.clone()))
    {
        for (g, lead) in basis.iter().zip(leads) {
            let Some(((gp, gm), gc)) = lead else { continue };
            if *gp == pos {
                if let Some(shift) = gm.div_into(&mono) {
                    let factor = coeff.clone()
                        * gc.try_inv().expect("nonzero leading coefficient");
                    work.sub_scaled(g, &shift, &factor);
                    continue 'outer;
                }
            }
        }
        // Irreducible leading term: move it to the result.
        work.terms.remove(&(pos, mono.clone()));
        out.add_term(pos, mono, coeff);
    }
    out
}

fn spair<K: Coeff>(
    f: &ModVec<K>,
    g: &ModVec<K>,
    order: MonomialOrder,
) -> ModVec<K> {
    let ((_, fm), fc) = f.leading(order).expect("nonzero");
    let ((_, gm), gc) = g.leading(order).expect("nonzero");
    let lcm = fm.lcm(gm);
    let fshift = fm.div_into(&lcm).unwrap();
    let gshift = gm.div_into(&lcm).unwrap();
    let mut s = ModVec::zero(f.rank, f.nvars);
    let finv = fc.try_inv().expect("nonzero");
    let ginv = gc.try_inv().expect("nonzero");
    s.sub_scaled(f, &fshift, &(-finv));
    s.sub_scaled(g, &gshift, &ginv);
    s
}

/// Buchberger's algorithm on module vectors; returns the reduced Gröbner
/// basis, sorted by ascending leading term. The coprimality (product)
/// criterion is applied only in rank 1, where it is valid; the chain
/// criterion is applied in its treated-set form, which is module-safe.
pub fn buchberger<K: Coeff>(
    gens: Vec<ModVec<K>>,
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<ModVec<K>>> {
    let mut basis: Vec<ModVec<K>> = Vec::new();
    let mut leads: Vec<(usize, Monomial)> = Vec::new();
    let rank = gens.first().map(|g| g.rank).unwrap_or(1);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = g.monic(order);
        let ((p, m), _) = g.leading(order).unwrap();
        leads.push((p, m.clone()));
        basis.push(g);
    }

    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let enqueue = |queue: &mut BTreeSet<(u64, usize, usize)>,
                       pending: &mut BTreeSet<(usize, usize)>,
                       leads: &[(usize, Monomial)],
                       i: usize,
                       j: usize| {
        let (li, lj) = (&leads[i], &leads[j]);
        if li.0 != lj.0 {
            return; // different leading positions: no S-pair
        }
        let deg = li.1.lcm(&lj.1).degree();
        queue.insert((deg, i, j));
        pending.insert((i, j));
    };

    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut queue, &mut pending, &leads, i, j);
        }
    }

    while let Some(&entry) = queue.iter().next() {
        let (_, i, j) = entry;
        queue.remove(&entry);
        pending.remove(&(i, j));
        let (pi, mi) = &leads[i];
        let (_, mj) = &leads[j];
        if rank == 1 && mi.coprime(mj) {
            continue;
        }
        let lcm = mi.lcm(mj);
        // Chain criterion: some k divides the lcm and both cross pairs are
        // already treated.
        let mut skip = false;
        for (k, (pk, mk)) in leads.iter().enumerate() {
            if k == i || k == j || pk != pi {
                continue;
            }
            if mk.divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if !pending.contains(&a) && !pending.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        budget.charge()?;
        let s = spair(&basis[i], &basis[j], order);
        let nf = reduce_modvec(&s, &basis, order);
        if nf.is_zero() {
            continue;
        }
        let nf = nf.monic(order);
        let ((p, m), _) = nf.leading(order).unwrap();
        let new = basis.len();
        leads.push((p, m.clone()));
        basis.push(nf);
        for k in 0..new {
            enqueue(&mut queue, &mut pending, &leads, k, new);
        }
    }

    Ok(reduce_basis(basis, order))
}

/// Minimalize and tail-reduce a Gröbner basis; sort ascending by lead.
fn reduce_basis<K: Coeff>(basis: Vec<ModVec<K>>, order: MonomialOrder) -> Vec<ModVec<K>> {
    let leads: Vec<(usize, Monomial)> = basis
        .iter()
        .map(|g| {
            let ((p, m), _) = g.leading(order).unwrap();
            (p, m.clone())
        })
        .collect();
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (pi, mi) = &leads[i];
            let (pj, mj) = &leads[j];
            if pi == pj && mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<ModVec<K>> =
        basis.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(g, _)| g).collect();
    // Tail-reduce each element against the others.
    let mut reduced: Vec<ModVec<K>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<ModVec<K>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce_modvec(&minimal[i], &others, order).monic(order));
    }
    reduced.sort_by(|a, b| {
        let ((pa, ma), _) = a.leading(order).unwrap();
        let ((pb, mb), _) = b.leading(order).unwrap();
        order.cmp_term((pa, ma), (pb, mb))
    });
    reduced
}

// ---------------------------------------------------------------------------
// Ideal-level entry points (rank 1)
// ---------------------------------------------------------------------------

fn poly_to_vec<K: Coeff>(p: &Poly<K>) -> ModVec<K> {
    ModVec::from_column(std::slice::from_ref(p), 1, p.nvars())
}

fn vec_to_poly<K: Coeff>(v: &ModVec<K>) -> Poly<K> {
    v.component(0)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Deterministic for fixed input and order; `{0}` yields the empty basis.
pub fn groebner_basis<K: Coeff>(
    gens: &[Poly<K>],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Poly<K>>> {
    let vecs: Vec<ModVec<K>> = gens.iter().map(poly_to_vec).collect();
    let gb = buchberger(vecs, order, budget)?;
    Ok(gb.iter().map(vec_to_poly).collect())
}

/// Unique remainder of `f` modulo a Gröbner basis.
pub fn normal_form<K: Coeff>(f: &Poly<K>, basis: &[Poly<K>], order: MonomialOrder) -> Poly<K> {
    let bvecs: Vec<ModVec<K>> = basis.iter().map(poly_to_vec).collect();
    vec_to_poly(&reduce_modvec(&poly_to_vec(f), &bvecs, order))
}

/// Whether a reduced Gröbner basis presents the unit ideal.
pub fn is_unit_basis<K: Coeff>(basis: &[Poly<K>]) -> bool {
    basis.iter().any(|p| !p.is_zero() && p.is_constant())
}

// ---------------------------------------------------------------------------
// Module computations via the tag block
// ---------------------------------------------------------------------------

/// The module order used for syzygy/lift extraction: position-over-term.
/// Value positions precede tag positions, so value ≫ tag — an elimination
/// order for the tag block.
fn module_order(order: MonomialOrder) -> MonomialOrder {
    match order {
        MonomialOrder::Lex => MonomialOrder::PositionOverTerm(BaseOrder::Lex),
        _ => MonomialOrder::PositionOverTerm(BaseOrder::GrevLex),
    }
}

/// Gröbner basis of the submodule of `R^rank` generated by `gens`
/// (columns), via [`buchberger`]; used for membership and kernel tests.
pub fn module_groebner<K: Coeff>(
    gens: &[Vec<Poly<K>>],
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<ModVec<K>>> {
    let vecs: Vec<ModVec<K>> =
        gens.iter().map(|c| ModVec::from_column(c, rank, nvars)).collect();
    buchberger(vecs, module_order(order), budget)
}

struct TaggedBasis<K> {
    gb: Vec<ModVec<K>>,
    value_rank: usize,
    tag_rank: usize,
    nvars: usize,
}

/// Compute a GB of `{ col_j ⊕ ε_j } ∪ { extras (untagged) }` inside
/// `R^{value_rank} ⊕ R^{#cols}` under the elimination order.
fn tagged_groebner<K: Coeff>(
    columns: &[Vec<Poly<K>>],
    value_rank: usize,
    nvars: usize,
    extras: &[Vec<Poly<K>>],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<TaggedBasis<K>> {
    let tag_rank = columns.len();
    let total = value_rank + tag_rank;
    let mut gens: Vec<ModVec<K>> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), value_rank);
        let mut v = ModVec::from_column(col, total, nvars);
        v.add_term(value_rank + j, Monomial::one(nvars), K::one());
        gens.push(v);
    }
    for col in extras {
        assert_eq!(col.len(), value_rank);
        gens.push(ModVec::from_column(col, total, nvars));
    }
    let gb = buchberger(gens, module_order(order), budget)?;
    Ok(TaggedBasis { gb, value_rank, tag_rank, nvars })
}

/// Syzygies of the columns of `m`, with optional untagged `extras` (used by
/// quotient rings: relations times each basis vector). Each returned column
/// `v` satisfies `m · v ∈ span(extras)` — exactly zero when `extras` is
/// empty.
pub fn module_syzygies_raw<K: Coeff>(
    m: &Matrix<K>,
    extras: &[Vec<Poly<K>>],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Vec<Poly<K>>>> {
    let cols = m.columns();
    let tb = tagged_groebner(&cols, m.rows(), m.nvars(), extras, order, budget)?;
    let mut out = Vec::new();
    for g in &tb.gb {
        if g.has_term_below(tb.value_rank) {
            continue;
        }
        let col: Vec<Poly<K>> =
            (0..tb.tag_rank).map(|j| g.component(tb.value_rank + j)).collect();
        if col.iter().any(|p| !p.is_zero()) {
            out.push(col);
        }
    }
    Ok(out)
}

/// Express `target` in the column span of `m` (modulo `extras`), or report
/// that it is not in the image.
pub fn module_lift_raw<K: Coeff>(
    target: &[Poly<K>],
    m: &Matrix<K>,
    extras: &[Vec<Poly<K>>],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Option<Vec<Poly<K>>>> {
    assert_eq!(target.len(), m.rows());
    let cols = m.columns();
    let tb = tagged_groebner(&cols, m.rows(), m.nvars(), extras, order, budget)?;
    let total = tb.value_rank + tb.tag_rank;
    let t = ModVec::from_column(target, total, tb.nvars);
    let nf = reduce_modvec(&t, &tb.gb, module_order(order));
    if nf.has_term_below(tb.value_rank) {
        return Ok(None);
    }
    let lift: Vec<Poly<K>> =
        (0..tb.tag_rank).map(|j| nf.component(tb.value_rank + j).neg()).collect();
    Ok(Some(lift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldKind;
    use num_rational::BigRational;

    type Q = BigRational;

    fn vars2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn qp(s: &str) -> Poly<Q> {
        crate::parse::parse_poly(s, &vars2(), FieldKind::Rationals).unwrap()
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let mut b = Budget::standard();
        let gb =
            groebner_basis::<Q>(&[Poly::zero(2)], MonomialOrder::GrevLex, &mut b).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn principal_ideal_is_already_reduced() {
        let mut b = Budget::standard();
        let gb = groebner_basis(&[qp("x - 1")], MonomialOrder::Lex, &mut b).unwrap();
        assert_eq!(gb, vec![qp("x - 1")]);
    }

    #[test]
    fn textbook_lex_basis() {
        // {x*y - 1, y^2 - 1} under lex x > y gives {x - y, y^2 - 1}
        let mut b = Budget::standard();
        let gb =
            groebner_basis(&[qp("x*y - 1"), qp("y^2 - 1")], MonomialOrder::Lex, &mut b)
                .unwrap();
        let mut shown: Vec<String> = gb.iter().map(|p| p.display(&vars2())).collect();
        shown.sort();
        assert_eq!(shown, vec!["x - y".to_string(), "y^2 - 1".to_string()]);
        // both input generators must reduce to zero against the basis
        for g in [qp("x*y - 1"), qp("y^2 - 1")] {
            assert!(normal_form(&g, &gb, MonomialOrder::Lex).is_zero());
        }
        // and the witness identity x - y = y*(xy-1) - x*(y^2-1) holds
        let witness = qp("y").mul(&qp("x*y - 1")).sub(&qp("x").mul(&qp("y^2 - 1")));
        assert_eq!(witness, qp("x - y"));
    }

    #[test]
    fn normal_form_is_idempotent_and_detects_membership() {
        let mut b = Budget::standard();
        let basis = groebner_basis(
            &[qp("x*y - 1"), qp("y^2 - 1")],
            MonomialOrder::Lex,
            &mut b,
        )
        .unwrap();
        let f = qp("x^2*y + y^2");
        let nf = normal_form(&f, &basis, MonomialOrder::Lex);
        let nf2 = normal_form(&nf, &basis, MonomialOrder::Lex);
        assert_eq!(nf, nf2);
        // x^2 is a multiple of x: membership via zero normal form
        let xb = vec![qp("x")];
        assert!(normal_form(&qp("x^2"), &xb, MonomialOrder::GrevLex).is_zero());
        assert_eq!(normal_form(&qp("x + 1"), &xb, MonomialOrder::GrevLex), qp("1"));
    }

    #[test]
    fn groebner_output_is_stable_across_runs() {
        let gens = [qp("x^2 + y"), qp("x*y + 1"), qp("y^3 - x")];
        let mut b1 = Budget::standard();
        let mut b2 = Budget::standard();
        let g1 = groebner_basis(&gens, MonomialOrder::GrevLex, &mut b1).unwrap();
        let g2 = groebner_basis(&gens, MonomialOrder::GrevLex, &mut b2).unwrap();
        assert_eq!(g1, g2);
        for g in &gens {
            assert!(normal_form(g, &g1, MonomialOrder::GrevLex).is_zero());
        }
    }

    #[test]
    fn budget_exceeded_is_a_clean_error() {
        let mut b = Budget::new(1);
        let r = groebner_basis(
            &[qp("x^3 - 2*x*y"), qp("x^2*y - 2*y^2 + x")],
            MonomialOrder::GrevLex,
            &mut b,
        );
        assert_eq!(r.unwrap_err(), Error::ResourceLimit { budget: 1 });
    }

    #[test]
    fn syzygies_of_a_nonzerodivisor_are_trivial() {
        let x = qp("x");
        let m = Matrix::from_rows(2, vec![vec![x]]);
        let mut b = Budget::standard();
        let syz = module_syzygies_raw(&m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        assert!(syz.is_empty());
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        // M = [x, y]: syzygies generated by (y, -x)
        let m = Matrix::from_rows(2, vec![vec![qp("x"), qp("y")]]);
        let mut b = Budget::standard();
        let syz = module_syzygies_raw(&m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        assert_eq!(syz.len(), 1);
        let v = &syz[0];
        // check M·v = 0
        let mv = qp("x").mul(&v[0]).add(&qp("y").mul(&v[1]));
        assert!(mv.is_zero());
        // v is ±(y, -x)
        let is_plus = v[0] == qp("y") && v[1] == qp("-x");
        let is_minus = v[0] == qp("-y") && v[1] == qp("x");
        assert!(is_plus || is_minus, "{:?}", v);
    }

    #[test]
    fn equal_columns_give_a_unit_syzygy() {
        let m = Matrix::from_rows(2, vec![vec![qp("x"), qp("x")]]);
        let mut b = Budget::standard();
        let syz = module_syzygies_raw(&m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        // (1, -1) must be in the span; since x·(v0+v1) = 0 forces v0+v1 = 0,
        // every syzygy is a multiple of (1,-1); the GB gives exactly it.
        assert!(syz.iter().any(|v| {
            (v[0] == qp("1") && v[1] == qp("-1")) || (v[0] == qp("-1") && v[1] == qp("1"))
        }));
        for v in &syz {
            assert!(qp("x").mul(&v[0]).add(&qp("x").mul(&v[1])).is_zero());
        }
    }

    #[test]
    fn lifts_through_column_spans() {
        // target = x·e1, M = [x] → (1)
        let m = Matrix::from_rows(2, vec![vec![qp("x")]]);
        let mut b = Budget::standard();
        let lift =
            module_lift_raw(&[qp("x")], &m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        assert_eq!(lift, Some(vec![qp("1")]));
        // target = e1, M = [x] → not in image
        let lift =
            module_lift_raw(&[qp("1")], &m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        assert_eq!(lift, None);
        // target = (xy), M = [x, y] → some v with x v0 + y v1 = xy
        let m2 = Matrix::from_rows(2, vec![vec![qp("x"), qp("y")]]);
        let lift = module_lift_raw(&[qp("x*y")], &m2, &[], MonomialOrder::GrevLex, &mut b)
            .unwrap()
            .expect("xy is in (x, y)");
        let got = qp("x").mul(&lift[0]).add(&qp("y").mul(&lift[1]));
        assert_eq!(got, qp("x*y"));
    }

    #[test]
    fn syzygy_columns_annihilate_the_matrix_exactly() {
        // A fatter example: M = [[x, y, x+y], [y, x, x-y]]
        let m = Matrix::from_rows(
            2,
            vec![vec![qp("x"), qp("y"), qp("x + y")], vec![qp("y"), qp("x"), qp("x - y")]],
        );
        let mut b = Budget::standard();
        let syz = module_syzygies_raw(&m, &[], MonomialOrder::GrevLex, &mut b).unwrap();
        assert!(!syz.is_empty());
        for v in &syz {
            let mv = m.apply(v);
            assert!(mv.iter().all(|p| p.is_zero()), "nonzero M·v for {v:?}");
        }
    }

    #[test]
    fn unit_ideal_detection() {
        let mut b = Budget::standard();
        let gb = groebner_basis(&[qp("x"), qp("x - 1")], MonomialOrder::GrevLex, &mut b)
            .unwrap();
        assert!(is_unit_basis(&gb));
        assert_eq!(gb, vec![qp("1")]);
    }
}
