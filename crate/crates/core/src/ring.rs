//! Finitely presented commutative rings `k[x₁,…,xₙ]/I` over an exact field,
//! with canonical-form arithmetic and quotient-aware module computations.

use crate::error::{Error, Result};
use crate::groebner::{
    self, is_unit_basis, normal_form, Budget, ModVec,
};
use crate::matrix::Matrix;
use crate::monomial::MonomialOrder;
use crate::parse;
use crate::poly::Poly;
use crate::scalar::{Coeff, FieldKind};
use std::sync::{Arc, RwLock};

/// A presented ring `k[vars]/(relations)`, constructed only when it is not
/// the zero ring. Relations are stored as a reduced Gröbner basis, so
/// element comparison works through normal forms.
#[derive(Debug)]
pub struct PresentedRing<K> {
    field: FieldKind,
    vars: Vec<String>,
    relations: Vec<Poly<K>>,
    relations_gb: Vec<Poly<K>>,
    order: MonomialOrder,
}

impl<K: Coeff> PresentedRing<K> {
    /// Build `k[vars]/(relations)`; fails with [`Error::ZeroRing`] when the
    /// relations generate the unit ideal.
    pub fn new(
        field: FieldKind,
        vars: Vec<String>,
        relations: Vec<Poly<K>>,
    ) -> Result<Arc<PresentedRing<K>>> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Invalid(format!("bad variable name: {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable name: {v}")));
            }
        }
        let nvars = vars.len();
        for r in &relations {
            if r.nvars() != nvars {
                return Err(Error::Invalid(
                    "relation arity does not match the variable count".into(),
                ));
            }
        }
        let order = MonomialOrder::GrevLex;
        let mut budget = Budget::standard();
        let relations_gb = groebner::groebner_basis(&relations, order, &mut budget)?;
        if is_unit_basis(&relations_gb) {
            return Err(Error::ZeroRing);
        }
        Ok(Arc::new(PresentedRing { field, vars, relations, relations_gb, order }))
    }

    /// A polynomial ring (no relations).
    pub fn polynomial(field: FieldKind, vars: Vec<String>) -> Result<Arc<PresentedRing<K>>> {
        PresentedRing::new(field, vars, Vec::new())
    }

    /// Quotient of `base` by additional relations (same variables).
    pub fn quotient(
        base: &Arc<PresentedRing<K>>,
        extra: Vec<Poly<K>>,
    ) -> Result<Arc<PresentedRing<K>>> {
        let mut rels = base.relations.clone();
        rels.extend(extra);
        PresentedRing::new(base.field.clone(), base.vars.clone(), rels)
    }

    pub fn field(&self) -> &FieldKind {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly<K>] {
        &self.relations
    }

    pub fn relations_gb(&self) -> &[Poly<K>] {
        &self.relations_gb
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn zero(&self) -> Poly<K> {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly<K> {
        Poly::one(self.nvars())
    }

    pub fn var(&self, i: usize) -> Poly<K> {
        Poly::var(self.nvars(), i)
    }

    /// Canonical representative: normal form against the relation basis.
    pub fn nf(&self, p: &Poly<K>) -> Poly<K> {
        if self.relations_gb.is_empty() {
            p.clone()
        } else {
            normal_form(p, &self.relations_gb, self.order)
        }
    }

    pub fn is_zero_elt(&self, p: &Poly<K>) -> bool {
        self.nf(p).is_zero()
    }

    pub fn eq_elts(&self, a: &Poly<K>, b: &Poly<K>) -> bool {
        self.is_zero_elt(&a.sub(b))
    }

    /// Parse an element and put it in canonical form.
    pub fn parse(&self, text: &str) -> Result<Poly<K>> {
        let p = parse::parse_poly(text, &self.vars, self.field.clone())?;
        Ok(self.nf(&p))
    }

    pub fn display(&self, p: &Poly<K>) -> String {
        p.display(&self.vars)
    }

    /// Two handles present the same ring (same field, variables, relations).
    pub fn same_ring(a: &Arc<PresentedRing<K>>, b: &Arc<PresentedRing<K>>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.field == b.field && a.vars == b.vars && a.relations_gb == b.relations_gb)
    }

    /// The untagged extra generators that encode the quotient: every
    /// relation times every basis vector of `R^rank`.
    fn quotient_extras(&self, rank: usize) -> Vec<Vec<Poly<K>>> {
        let mut extras = Vec::new();
        for r in &self.relations_gb {
            for i in 0..rank {
                let mut col = vec![self.zero(); rank];
                col[i] = r.clone();
                extras.push(col);
            }
        }
        extras
    }

    /// Generators of `{ v : M·v = 0 in (R/I)^rows }` for a matrix over this
    /// ring. Entries are reduced to canonical form first.
    pub fn module_syzygies(
        &self,
        m: &Matrix<K>,
        budget: &mut Budget,
    ) -> Result<Vec<Vec<Poly<K>>>> {
        let m = m.map(|p| self.nf(p));
        let extras = self.quotient_extras(m.rows());
        let syz = groebner::module_syzygies_raw(&m, &extras, self.order, budget)?;
        Ok(syz
            .into_iter()
            .map(|col| col.into_iter().map(|p| self.nf(&p)).collect::<Vec<_>>())
            .filter(|col: &Vec<Poly<K>>| col.iter().any(|p| !p.is_zero()))
            .collect())
    }

    /// Solve `M·v = target` over this ring, if possible.
    pub fn module_lift(
        &self,
        target: &[Poly<K>],
        m: &Matrix<K>,
        budget: &mut Budget,
    ) -> Result<Option<Vec<Poly<K>>>> {
        let m = m.map(|p| self.nf(p));
        let target: Vec<Poly<K>> = target.iter().map(|p| self.nf(p)).collect();
        let extras = self.quotient_extras(m.rows());
        let lift = groebner::module_lift_raw(&target, &m, &extras, self.order, budget)?;
        Ok(lift.map(|col| col.into_iter().map(|p| self.nf(&p)).collect()))
    }

    /// Gröbner basis of the submodule of `(R/I)^rank` spanned by `gens`,
    /// for repeated membership tests.
    pub fn submodule_basis(
        &self,
        gens: &[Vec<Poly<K>>],
        rank: usize,
        budget: &mut Budget,
    ) -> Result<Vec<ModVec<K>>> {
        let mut all: Vec<Vec<Poly<K>>> = gens.to_vec();
        all.extend(self.quotient_extras(rank));
        groebner::module_groebner(&all, rank, self.nvars(), self.order, budget)
    }

    /// Membership of `f` in the radical of `(gens) + I`, by the trick of
    /// inverting `f` with a fresh variable and testing for the unit ideal.
    /// Returns the verdict together with the size of the auxiliary basis.
    pub fn radical_member(
        &self,
        f: &Poly<K>,
        gens: &[Poly<K>],
        budget: &mut Budget,
    ) -> Result<RadicalWitness> {
        let n = self.nvars();
        let mut aug: Vec<Poly<K>> = Vec::new();
        for g in gens.iter().chain(self.relations_gb.iter()) {
            aug.push(g.pad_vars(1));
        }
        // 1 - z·f, where z is the fresh last variable
        let zf = f.pad_vars(1).mul(&Poly::var(n + 1, n));
        aug.push(Poly::one(n + 1).sub(&zf));
        let gb = groebner::groebner_basis(&aug, MonomialOrder::GrevLex, budget)?;
        Ok(RadicalWitness { member: is_unit_basis(&gb), auxiliary_gb_size: gb.len() })
    }
}

/// Outcome of a radical-membership test, with the auxiliary basis size kept
/// for certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalWitness {
    pub member: bool,
    pub auxiliary_gb_size: usize,
}

/// Finitely generated ideal of a presented ring, with a cached Gröbner basis
/// (generators together with the ring relations).
#[derive(Debug)]
pub struct Ideal<K> {
    ring: Arc<PresentedRing<K>>,
    gens: Vec<Poly<K>>,
    gb: RwLock<Option<Vec<Poly<K>>>>,
}

impl<K: Coeff> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        let cached = self.gb.read().expect("ideal cache lock").clone();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: RwLock::new(cached) }
    }
}

impl<K: Coeff> Ideal<K> {
    /// New ideal; generators are put in canonical form and zeros dropped.
    /// The empty generator list presents the zero ideal.
    pub fn new(ring: Arc<PresentedRing<K>>, gens: Vec<Poly<K>>) -> Ideal<K> {
        let mut normalized: Vec<Poly<K>> = Vec::new();
        for g in gens {
            let g = ring.nf(&g);
            if !g.is_zero() && !normalized.contains(&g) {
                normalized.push(g);
            }
        }
        Ideal { ring, gens: normalized, gb: RwLock::new(None) }
    }

    pub fn zero(ring: Arc<PresentedRing<K>>) -> Ideal<K> {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Arc<PresentedRing<K>>) -> Ideal<K> {
        let one = ring.one();
        Ideal::new(ring, vec![one])
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<K>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Gröbner basis of generators + ring relations. Cached on success.
    pub fn basis(&self, budget: &mut Budget) -> Result<Vec<Poly<K>>> {
        if let Some(b) = self.gb.read().expect("ideal cache lock").as_ref() {
            return Ok(b.clone());
        }
        let mut all = self.gens.clone();
        all.extend(self.ring.relations_gb().iter().cloned());
        let gb = groebner::groebner_basis(&all, self.ring.order(), budget)?;
        *self.gb.write().expect("ideal cache lock") = Some(gb.clone());
        Ok(gb)
    }

    pub fn contains(&self, f: &Poly<K>, budget: &mut Budget) -> Result<bool> {
        let gb = self.basis(budget)?;
        Ok(normal_form(f, &gb, self.ring.order()).is_zero())
    }

    /// The ideal is all of the ring.
    pub fn is_unit(&self, budget: &mut Budget) -> Result<bool> {
        Ok(is_unit_basis(&self.basis(budget)?))
    }

    /// `f` lies in the radical of this ideal.
    pub fn radical_contains(&self, f: &Poly<K>, budget: &mut Budget) -> Result<RadicalWitness> {
        self.ring.radical_member(f, &self.gens, budget)
    }

    /// Product ideal: one generator per pair, units elided. If either side
    /// is the zero ideal the product is the zero ideal.
    pub fn product(&self, other: &Ideal<K>) -> Ideal<K> {
        assert!(PresentedRing::same_ring(&self.ring, &other.ring));
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ideal::zero(self.ring.clone());
        }
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(self.ring.clone(), gens)
    }

    /// Sum ideal: concatenated generators.
    pub fn sum(&self, other: &Ideal<K>) -> Ideal<K> {
        assert!(PresentedRing::same_ring(&self.ring, &other.ring));
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    /// Equality as ideals (mutual containment).
    pub fn equals(&self, other: &Ideal<K>, budget: &mut Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !other.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn poly_ring() -> Arc<PresentedRing<Q>> {
        PresentedRing::polynomial(FieldKind::Rationals, vec!["x".into(), "y".into()])
            .unwrap()
    }

    fn fat_point() -> Arc<PresentedRing<Q>> {
        // Q[x, y]/(x^2, x*y, y^2)
        let r = poly_ring();
        let rels = vec![
            r.parse("x^2").unwrap(),
            r.parse("x*y").unwrap(),
            r.parse("y^2").unwrap(),
        ];
        PresentedRing::new(FieldKind::Rationals, vec!["x".into(), "y".into()], rels).unwrap()
    }

    #[test]
    fn unit_relations_are_rejected() {
        let r = poly_ring();
        let rels = vec![r.parse("x").unwrap(), r.parse("x - 1").unwrap()];
        let e = PresentedRing::new(FieldKind::Rationals, vec!["x".into(), "y".into()], rels);
        assert_eq!(e.unwrap_err(), Error::ZeroRing);
    }

    #[test]
    fn canonical_forms_identify_equal_elements() {
        let r = fat_point();
        let a = r.parse("x^2 + x + 1").unwrap();
        let b = r.parse("x + 1").unwrap();
        assert_eq!(a, b);
        assert!(r.is_zero_elt(&r.parse("x*y").unwrap()));
        assert!(!r.is_zero_elt(&r.parse("x").unwrap()));
    }

    #[test]
    fn no_variables_is_the_base_field() {
        let r: Arc<PresentedRing<Q>> =
            PresentedRing::polynomial(FieldKind::Rationals, vec![]).unwrap();
        assert_eq!(r.nvars(), 0);
        let c = r.parse("5").unwrap();
        assert!(!c.is_zero());
        assert!(r.parse("2 + 3").unwrap() == c);
    }

    #[test]
    fn syzygies_over_a_quotient_see_the_relations() {
        // Over Q[x,y]/(x^2, xy, y^2), the 1×1 matrix [x] has syzygies
        // (x), (y) — the annihilator of x — none of which exist over Q[x,y].
        let r = fat_point();
        let m = Matrix::from_rows(2, vec![vec![r.parse("x").unwrap()]]);
        let mut b = Budget::standard();
        let syz = r.module_syzygies(&m, &mut b).unwrap();
        let shown: Vec<String> = syz.iter().map(|v| r.display(&v[0])).collect();
        assert!(shown.contains(&"x".to_string()), "{shown:?}");
        assert!(shown.contains(&"y".to_string()), "{shown:?}");
        // every syzygy column annihilates x in the quotient
        for v in &syz {
            assert!(r.is_zero_elt(&r.parse("x").unwrap().mul(&v[0])));
        }
    }

    #[test]
    fn lift_respects_the_relations() {
        let r = fat_point();
        // x·1 = x: target x through [x]
        let m = Matrix::from_rows(2, vec![vec![r.parse("x").unwrap()]]);
        let mut b = Budget::standard();
        let lift = r.module_lift(&[r.parse("x").unwrap()], &m, &mut b).unwrap().unwrap();
        let residue = r.parse("x").unwrap().mul(&lift[0]).sub(&r.parse("x").unwrap());
        assert!(r.is_zero_elt(&residue));
        // 1 is not a multiple of x
        let none = r.module_lift(&[r.one()], &m, &mut b).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn radical_membership_with_witness_sizes() {
        let r = poly_ring();
        let gens = vec![
            r.parse("x^2").unwrap(),
            r.parse("x*y").unwrap(),
            r.parse("y^2").unwrap(),
        ];
        let mut b = Budget::standard();
        // x + y vanishes wherever x² , xy, y² do (only the origin)
        let w = r.radical_member(&r.parse("x + y").unwrap(), &gens, &mut b).unwrap();
        assert!(w.member);
        assert!(w.auxiliary_gb_size >= 1);
        // x - 1 does not vanish at the origin
        let w2 = r.radical_member(&r.parse("x - 1").unwrap(), &gens, &mut b).unwrap();
        assert!(!w2.member);
    }

    #[test]
    fn ideal_algebra_products_and_sums() {
        let r = poly_ring();
        let i = Ideal::new(r.clone(), vec![r.parse("x").unwrap()]);
        let j = Ideal::new(r.clone(), vec![r.parse("y").unwrap()]);
        let p = i.product(&j);
        assert_eq!(p.gens(), &[r.parse("x*y").unwrap()]);
        let s = i.sum(&j);
        assert_eq!(s.gens().len(), 2);
        let z = Ideal::zero(r.clone());
        assert!(i.product(&z).is_zero_ideal());
        let mut b = Budget::standard();
        assert!(s.contains(&r.parse("3*x - 2*y").unwrap(), &mut b).unwrap());
        assert!(!s.contains(&r.one(), &mut b).unwrap());
        assert!(!s.is_unit(&mut b).unwrap());
        assert!(Ideal::unit(r.clone()).is_unit(&mut b).unwrap());
    }

    #[test]
    fn ideal_equality_is_mutual_containment() {
        let r = poly_ring();
        let i = Ideal::new(r.clone(), vec![r.parse("x").unwrap(), r.parse("y").unwrap()]);
        let j = Ideal::new(
            r.clone(),
            vec![r.parse("x + y").unwrap(), r.parse("x - y").unwrap()],
        );
        let mut b = Budget::standard();
        assert!(i.equals(&j, &mut b).unwrap());
        let k = Ideal::new(r.clone(), vec![r.parse("x").unwrap()]);
        assert!(!i.equals(&k, &mut b).unwrap());
    }
}
