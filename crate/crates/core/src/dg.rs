//! Non-positive commutative DG-algebras presented by semifree generators
//! over a base ring, and finite semifree DG-modules over them: validation,
//! degree-zero cohomology ring, tensor products, underlying complexes,
//! cohomology tables, and reduction to the degree-zero ring.

use crate::complex::{CohomologyTable, FPModule, FreeComplex};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::matrix::Matrix;
use crate::parse::{self, ExprContext};
use crate::poly::Poly;
use crate::ring::PresentedRing;
use crate::scalar::Coeff;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// A monomial in the algebra generators: one exponent per generator.
/// Odd-degree generators never carry an exponent above 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GenMono(pub Vec<u32>);

impl GenMono {
    pub fn one(ngens: usize) -> GenMono {
        GenMono(vec![0; ngens])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, gens: &[DGGen]) -> i64 {
        self.0.iter().zip(gens).map(|(&e, g)| e as i64 * g.degree).sum()
    }

    /// Descending-lexicographic comparison (larger exponent vector first);
    /// on 0/1 vectors this matches subset-lexicographic order.
    pub fn desc_lex(a: &GenMono, b: &GenMono) -> std::cmp::Ordering {
        b.0.cmp(&a.0)
    }

    /// Merge two generator monomials with the graded sign rule. Returns
    /// `None` when an odd generator would square to zero; otherwise the
    /// product monomial and the sign `(−1)^{Σ_{i>j, both odd} a_i b_j}`.
    fn mul(&self, other: &GenMono, gens: &[DGGen]) -> Option<(i32, GenMono)> {
        let n = gens.len();
        let mut exps = vec![0u32; n];
        let mut swaps: u64 = 0;
        // suffix counts of odd exponents in self
        let mut odd_suffix = vec![0u64; n + 1];
        for i in (0..n).rev() {
            odd_suffix[i] =
                odd_suffix[i + 1] + if gens[i].is_odd() { self.0[i] as u64 } else { 0 };
        }
        for j in 0..n {
            let (a, b) = (self.0[j], other.0[j]);
            if gens[j].is_odd() {
                if a + b > 1 {
                    return None;
                }
                swaps += b as u64 * odd_suffix[j + 1];
            }
            exps[j] = a + b;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, GenMono(exps)))
    }
}

/// One semifree generator of a DG-algebra: strictly negative degree,
/// exterior when odd, polynomial when even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DGGen {
    pub name: String,
    pub degree: i64,
}

impl DGGen {
    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// An element of the DG-algebra: base-ring coefficients against generator
/// monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElt<K> {
    ngens: usize,
    nvars: usize,
    terms: BTreeMap<GenMono, Poly<K>>,
}

impl<K: Coeff> AlgElt<K> {
    pub fn zero(ngens: usize, nvars: usize) -> AlgElt<K> {
        AlgElt { ngens, nvars, terms: BTreeMap::new() }
    }

    pub fn from_base(ngens: usize, p: Poly<K>) -> AlgElt<K> {
        let mut out = AlgElt::zero(ngens, p.nvars());
        if !p.is_zero() {
            out.terms.insert(GenMono::one(ngens), p);
        }
        out
    }

    pub fn generator(ngens: usize, nvars: usize, i: usize) -> AlgElt<K> {
        let mut m = GenMono::one(ngens);
        m.0[i] = 1;
        let mut out = AlgElt::zero(ngens, nvars);
        out.terms.insert(m, Poly::one(nvars));
        out
    }

    pub fn term(m: GenMono, p: Poly<K>) -> AlgElt<K> {
        let mut out = AlgElt::zero(m.0.len(), p.nvars());
        if !p.is_zero() {
            out.terms.insert(m, p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenMono, &Poly<K>)> {
        self.terms.iter()
    }

    /// Coefficient of the trivial generator monomial.
    pub fn base_part(&self) -> Poly<K> {
        self.terms
            .get(&GenMono::one(self.ngens))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_term(&mut self, m: GenMono, p: Poly<K>) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&p);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgElt<K>) -> AlgElt<K> {
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> AlgElt<K> {
        AlgElt {
            ngens: self.ngens,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AlgElt<K>) -> AlgElt<K> {
        self.add(&other.neg())
    }

    pub fn scale_base(&self, p: &Poly<K>) -> AlgElt<K> {
        let mut out = AlgElt::zero(self.ngens, self.nvars);
        for (m, q) in &self.terms {
            out.add_term(m.clone(), q.mul(p));
        }
        out
    }

    /// Graded product with the Koszul sign rule.
    pub fn mul(&self, other: &AlgElt<K>, gens: &[DGGen]) -> AlgElt<K> {
        let mut out = AlgElt::zero(self.ngens, self.nvars);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((sign, m)) = ma.mul(mb, gens) {
                    let p = pa.mul(pb);
                    out.add_term(m, if sign < 0 { p.neg() } else { p });
                }
            }
        }
        out
    }

    /// Reinterpret over an algebra with `extra` generators appended.
    pub fn pad_gens(&self, extra: usize) -> AlgElt<K> {
        let ngens = self.ngens + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, p)| {
                let mut e = m.0.clone();
                e.resize(ngens, 0);
                (GenMono(e), p.clone())
            })
            .collect();
        AlgElt { ngens, nvars: self.nvars, terms }
    }

    /// Apply a map to every base coefficient (e.g. a normal form).
    pub fn map_base(&self, f: impl Fn(&Poly<K>) -> Poly<K>) -> AlgElt<K> {
        let mut out = AlgElt::zero(self.ngens, self.nvars);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), f(p));
        }
        out
    }

    /// The set of generator-monomial degrees present.
    pub fn degrees(&self, gens: &[DGGen]) -> Vec<i64> {
        let mut degs: Vec<i64> = self.terms.keys().map(|m| m.degree(gens)).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// Zero, or homogeneous of exactly the given degree.
    pub fn is_homogeneous_of(&self, d: i64, gens: &[DGGen]) -> bool {
        self.terms.keys().all(|m| m.degree(gens) == d)
    }

    pub fn display(&self, vars: &[String], gens: &[DGGen]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&GenMono> = self.terms.keys().collect();
        keys.sort_by(|a, b| GenMono::desc_lex(a, b));
        let mut out = String::new();
        for m in keys {
            let p = &self.terms[m];
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        gens[i].name.clone()
                    } else {
                        format!("{}^{}", gens[i].name, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&p.display(vars));
            } else if p.is_constant() && p == &Poly::one(p.nvars()) {
                out.push_str(&mono.join("*"));
            } else {
                let coeff = p.display(vars);
                let needs_parens = p.num_terms() > 1;
                if needs_parens {
                    out.push_str(&format!("({})*{}", coeff, mono.join("*")));
                } else {
                    out.push_str(&format!("{}*{}", coeff, mono.join("*")));
                }
            }
        }
        out
    }
}

/// Expression context for parsing algebra elements: identifiers resolve to
/// base variables or generators.
struct AlgCtx<'a, K> {
    ring: &'a PresentedRing<K>,
    gens: &'a [DGGen],
}

impl<'a, K: Coeff> ExprContext for AlgCtx<'a, K> {
    type Elt = AlgElt<K>;

    fn from_decimal(&self, digits: &str) -> Result<AlgElt<K>> {
        let base = parse::PolyContext::<K>::new(self.ring.vars(), *self.ring.field());
        Ok(AlgElt::from_base(self.gens.len(), base.from_decimal(digits)?))
    }

    fn from_ratio(&self, num: &str, den: &str) -> Result<AlgElt<K>> {
        let base = parse::PolyContext::<K>::new(self.ring.vars(), *self.ring.field());
        Ok(AlgElt::from_base(self.gens.len(), base.from_ratio(num, den)?))
    }

    fn symbol(&self, name: &str) -> Result<AlgElt<K>> {
        if let Some(i) = self.ring.vars().iter().position(|v| v == name) {
            return Ok(AlgElt::from_base(
                self.gens.len(),
                Poly::var(self.ring.nvars(), i),
            ));
        }
        if let Some(i) = self.gens.iter().position(|g| g.name == name) {
            return Ok(AlgElt::generator(self.gens.len(), self.ring.nvars(), i));
        }
        Err(Error::Parse {
            offset: 0,
            message: format!("unknown variable or generator `{name}`"),
        })
    }

    fn add(&self, a: AlgElt<K>, b: AlgElt<K>) -> AlgElt<K> {
        a.add(&b)
    }

    fn sub(&self, a: AlgElt<K>, b: AlgElt<K>) -> AlgElt<K> {
        a.sub(&b)
    }

    fn neg(&self, a: AlgElt<K>) -> AlgElt<K> {
        a.neg()
    }

    fn mul(&self, a: AlgElt<K>, b: AlgElt<K>) -> AlgElt<K> {
        a.mul(&b, self.gens)
    }

    fn pow(&self, a: AlgElt<K>, e: u32) -> AlgElt<K> {
        let one = AlgElt::from_base(self.gens.len(), Poly::one(self.ring.nvars()));
        let mut acc = one;
        for _ in 0..e {
            acc = acc.mul(&a, self.gens);
        }
        acc
    }
}

/// A non-positive commutative DG-algebra: base ring in degree 0 plus
/// finitely many semifree generators in strictly negative degrees, with a
/// differential given on generators and extended by the Leibniz rule.
#[derive(Debug)]
pub struct DGAlgebra<K> {
    base: Arc<PresentedRing<K>>,
    gens: Vec<DGGen>,
    diffs: Vec<AlgElt<K>>,
    h0_cache: OnceLock<Result<Arc<PresentedRing<K>>>>,
    amp_cache: OnceLock<Option<(i64, i64)>>,
}

impl<K: Coeff> DGAlgebra<K> {
    /// Build a DG-algebra presentation. Shape constraints (name hygiene,
    /// strictly negative degrees, differential degrees, dependence on
    /// earlier generators only) are enforced here; `d∘d = 0` is checked by
    /// [`DGAlgebra::validate`].
    pub fn new(
        base: Arc<PresentedRing<K>>,
        gens: Vec<DGGen>,
        diffs: Vec<AlgElt<K>>,
    ) -> Result<Arc<DGAlgebra<K>>> {
        if diffs.len() != gens.len() {
            return Err(Error::Invalid(
                "one differential per generator is required".into(),
            ));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.name.is_empty()
                || !g.name.chars().next().unwrap().is_ascii_alphabetic()
                || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Invalid(format!("bad generator name: {:?}", g.name)));
            }
            if base.vars().contains(&g.name) {
                return Err(Error::Invalid(format!(
                    "generator {} shadows a base variable",
                    g.name
                )));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator name: {}", g.name)));
            }
            if g.degree >= 0 {
                return Err(Error::Invalid(format!(
                    "generator {} has degree {}, expected strictly negative",
                    g.name, g.degree
                )));
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            if !d.is_homogeneous_of(gens[i].degree + 1, &gens) {
                return Err(Error::Invalid(format!(
                    "d({}) is not homogeneous of degree {}",
                    gens[i].name,
                    gens[i].degree + 1
                )));
            }
            if d.terms.keys().any(|m| m.0[i..].iter().any(|&e| e > 0)) {
                return Err(Error::Invalid(format!(
                    "d({}) must use only earlier generators",
                    gens[i].name
                )));
            }
        }
        let diffs = diffs
            .into_iter()
            .map(|d| d.map_base(|p| base.nf(p)))
            .collect();
        Ok(Arc::new(DGAlgebra {
            base,
            gens,
            diffs,
            h0_cache: OnceLock::new(),
            amp_cache: OnceLock::new(),
        }))
    }

    /// Koszul DG-algebra `K(base; f₁..f_c)`: exterior generators in degree
    /// −1 with `d(eᵢ) = fᵢ`.
    pub fn koszul(
        base: Arc<PresentedRing<K>>,
        names: Vec<String>,
        elements: Vec<Poly<K>>,
    ) -> Result<Arc<DGAlgebra<K>>> {
        if names.len() != elements.len() {
            return Err(Error::Invalid("one name per Koszul element".into()));
        }
        let gens: Vec<DGGen> =
            names.into_iter().map(|name| DGGen { name, degree: -1 }).collect();
        let ngens = gens.len();
        let diffs = elements
            .into_iter()
            .map(|f| AlgElt::from_base(ngens, f))
            .collect();
        DGAlgebra::new(base, gens, diffs)
    }

    pub fn base(&self) -> &Arc<PresentedRing<K>> {
        &self.base
    }

    pub fn gens(&self) -> &[DGGen] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn diff_of(&self, i: usize) -> &AlgElt<K> {
        &self.diffs[i]
    }

    /// True when some generator has even degree, making the algebra
    /// infinite-rank over the base: whole-algebra computations then require
    /// an explicit degree window.
    pub fn infinite_rank(&self) -> bool {
        self.gens.iter().any(|g| !g.is_odd())
    }

    pub fn zero_elt(&self) -> AlgElt<K> {
        AlgElt::zero(self.ngens(), self.base.nvars())
    }

    pub fn one_elt(&self) -> AlgElt<K> {
        AlgElt::from_base(self.ngens(), self.base.one())
    }

    pub fn parse_elt(&self, text: &str) -> Result<AlgElt<K>> {
        let ctx = AlgCtx { ring: &self.base, gens: &self.gens };
        let e = parse::parse_expr(text, &ctx)?;
        Ok(e.map_base(|p| self.base.nf(p)))
    }

    pub fn display_elt(&self, e: &AlgElt<K>) -> String {
        e.display(self.base.vars(), &self.gens)
    }

    /// Differential of a generator monomial, by the Leibniz rule
    /// `d(u·v) = d(u)·v + (−1)^{|u|} u·d(v)`.
    pub(crate) fn d_mono(&self, m: &GenMono) -> AlgElt<K> {
        let Some(i) = m.0.iter().position(|&e| e > 0) else {
            return self.zero_elt();
        };
        let k = m.0[i];
        // u = g_i^k, v = the rest
        let mut v = m.clone();
        v.0[i] = 0;
        // d(u) = k·g_i^{k−1}·d(g_i)
        let mut pow = GenMono::one(self.ngens());
        pow.0[i] = k - 1;
        let kk = K::from_int(k as i64, self.base.field());
        let du = AlgElt::term(pow, Poly::constant(self.base.nvars(), kk))
            .mul(&self.diffs[i], &self.gens);
        // d(u)·v
        let mut out = du.mul(&AlgElt::term(v.clone(), Poly::one(self.base.nvars())), &self.gens);
        // + (−1)^{|u|} u·d(v)
        if !v.is_one() {
            let dv = self.d_mono(&v);
            let u = AlgElt::term(
                {
                    let mut u = GenMono::one(self.ngens());
                    u.0[i] = k;
                    u
                },
                Poly::one(self.base.nvars()),
            );
            let udv = u.mul(&dv, &self.gens);
            let u_deg = k as i64 * self.gens[i].degree;
            out = if u_deg.rem_euclid(2) == 1 { out.sub(&udv) } else { out.add(&udv) };
        }
        out
    }

    /// Differential of an arbitrary element.
    pub fn d_elt(&self, x: &AlgElt<K>) -> AlgElt<K> {
        let mut out = self.zero_elt();
        for (m, p) in &x.terms {
            out = out.add(&self.d_mono(m).scale_base(p));
        }
        out.map_base(|p| self.base.nf(p))
    }

    /// Check `d∘d = 0` on every generator; reports the offenders.
    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            let dd = self.d_elt(&self.diffs[i]);
            if !dd.is_zero() {
                bad.push(format!("d(d({})) = {}", g.name, self.display_elt(&dd)));
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("Leibniz/d² failure: {}", bad.join("; "))))
        }
    }

    /// The degree-zero cohomology ring: base modulo the differentials of
    /// the degree-(−1) generators. Fails with [`Error::ZeroRing`] when that
    /// ideal is the unit ideal. Cached per algebra, so every computation
    /// sharing this algebra shares one ring handle.
    pub fn h0(&self) -> Result<Arc<PresentedRing<K>>> {
        self.h0_cache
            .get_or_init(|| {
                let killers: Vec<Poly<K>> = self
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.degree == -1)
                    .map(|(i, _)| self.diffs[i].base_part())
                    .collect();
                PresentedRing::quotient(&self.base, killers)
            })
            .clone()
    }

    /// Two handles present the same algebra.
    pub fn same_algebra(a: &Arc<DGAlgebra<K>>, b: &Arc<DGAlgebra<K>>) -> bool {
        Arc::ptr_eq(a, b)
            || (PresentedRing::same_ring(&a.base, &b.base)
                && a.gens == b.gens
                && a.diffs == b.diffs)
    }
}

/// Certified amplitude of the algebra: `Some((inf, sup))` of the nonzero
/// cohomology of the rank-1 free module, or `None` when the algebra is
/// infinite-rank (no finite-amplitude certificate) or acyclic.
pub fn algebra_amplitude<K: Coeff>(
    algebra: &Arc<DGAlgebra<K>>,
    budget: &mut Budget,
) -> Result<Option<(i64, i64)>> {
    if let Some(v) = algebra.amp_cache.get() {
        return Ok(*v);
    }
    if algebra.infinite_rank() {
        return Ok(None);
    }
    let free = DGModule::free(algebra.clone(), 0);
    let table = free.dg_cohomology(None, budget)?;
    let degs = table.nonzero_degrees(budget)?;
    let amp = match (degs.first(), degs.last()) {
        (Some(&lo), Some(&hi)) => Some((lo, hi)),
        _ => None,
    };
    let _ = algebra.amp_cache.set(amp);
    Ok(amp)
}

/// A finite semifree DG-module: free graded basis with a differential
/// matrix over the algebra; `d(b_j) = Σ_i a_{ij}·b_i` with entry `(i,j)` of
/// degree `deg(b_j) + 1 − deg(b_i)`.
#[derive(Clone, Debug)]
pub struct DGModule<K> {
    algebra: Arc<DGAlgebra<K>>,
    basis: Vec<(String, i64)>,
    diff: Vec<Vec<AlgElt<K>>>,
}

impl<K: Coeff> DGModule<K> {
    /// Build a module; shape and degree constraints are enforced here,
    /// `d² = 0` by [`DGModule::validate`].
    pub fn new(
        algebra: Arc<DGAlgebra<K>>,
        basis: Vec<(String, i64)>,
        diff: Vec<Vec<AlgElt<K>>>,
    ) -> Result<DGModule<K>> {
        let r = basis.len();
        for (i, (name, _)) in basis.iter().enumerate() {
            if name.is_empty() || basis[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::Invalid(format!("bad or duplicate basis name: {name:?}")));
            }
        }
        if diff.len() != r || diff.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid(format!(
                "differential must be a {r}×{r} matrix over the algebra"
            )));
        }
        let gens = &algebra.gens;
        let mut clean = diff;
        for (i, row) in clean.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = e.map_base(|p| algebra.base.nf(p));
                if e.is_zero() {
                    continue;
                }
                let want = basis[j].1 + 1 - basis[i].1;
                if want > 0 {
                    return Err(Error::Invalid(format!(
                        "entry d({} → {}) would need positive degree {want}; \
                         the algebra is non-positive",
                        basis[j].0, basis[i].0
                    )));
                }
                if !e.is_homogeneous_of(want, gens) {
                    return Err(Error::Invalid(format!(
                        "entry d({} → {}) is not homogeneous of degree {want}",
                        basis[j].0, basis[i].0
                    )));
                }
            }
        }
        Ok(DGModule { algebra, basis, diff: clean })
    }

    /// Rank-1 free module concentrated in one degree (the algebra itself
    /// when the degree is 0).
    pub fn free(algebra: Arc<DGAlgebra<K>>, degree: i64) -> DGModule<K> {
        let z = algebra.zero_elt();
        DGModule {
            algebra,
            basis: vec![("u".into(), degree)],
            diff: vec![vec![z]],
        }
    }

    /// Koszul DG-module `K(A; f₁..f_c)` on degree-0 base elements: basis
    /// indexed by subsets (sizes ascending, each size in lexicographic
    /// order), `d(e_S) = Σ_t (−1)^{t−1} f_{i_t} e_{S∖i_t}`.
    pub fn koszul(algebra: Arc<DGAlgebra<K>>, elements: &[Poly<K>]) -> Result<DGModule<K>> {
        let c = elements.len();
        let nvars = algebra.base.nvars();
        for f in elements {
            if f.nvars() != nvars {
                return Err(Error::Invalid("Koszul element arity mismatch".into()));
            }
        }
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for k in 0..=c {
            subsets.extend(crate::complex::combinations(c, k));
        }
        let name_of = |s: &[usize]| -> String {
            if s.is_empty() {
                "u".to_string()
            } else {
                format!(
                    "e{}",
                    s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")
                )
            }
        };
        let basis: Vec<(String, i64)> =
            subsets.iter().map(|s| (name_of(s), -(s.len() as i64))).collect();
        let r = basis.len();
        let mut diff = vec![vec![algebra.zero_elt(); r]; r];
        let index_of = |s: &[usize]| subsets.iter().position(|t| t == s).unwrap();
        for (j, s) in subsets.iter().enumerate() {
            for (t, &g) in s.iter().enumerate() {
                let mut reduced = s.clone();
                reduced.remove(t);
                let i = index_of(&reduced);
                let f = if t % 2 == 0 { elements[g].clone() } else { elements[g].neg() };
                diff[i][j] =
                    diff[i][j].add(&AlgElt::from_base(algebra.ngens(), f));
            }
        }
        DGModule::new(algebra, basis, diff)
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra<K>> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgElt<K> {
        &self.diff[i][j]
    }

    /// Check `d² = 0`: for all k, j the Leibniz expansion
    /// `d(a_{kj}) + Σ_i (−1)^{|a_{ij}|} a_{ij}·a_{ki}` must vanish.
    pub fn validate(&self) -> Result<()> {
        self.algebra.validate()?;
        let r = self.rank();
        let gens = &self.algebra.gens;
        let mut bad = Vec::new();
        for j in 0..r {
            for k in 0..r {
                let mut acc = self.algebra.d_elt(&self.diff[k][j]);
                for i in 0..r {
                    let a_ij = &self.diff[i][j];
                    if a_ij.is_zero() || self.diff[k][i].is_zero() {
                        continue;
                    }
                    let deg = self.basis[j].1 + 1 - self.basis[i].1;
                    let prod = a_ij.mul(&self.diff[k][i], gens);
                    acc = if deg.rem_euclid(2) == 1 { acc.sub(&prod) } else { acc.add(&prod) };
                }
                acc = acc.map_base(|p| self.algebra.base.nf(p));
                if !acc.is_zero() {
                    bad.push(format!(
                        "d²({})|{} = {}",
                        self.basis[j].0,
                        self.basis[k].0,
                        self.algebra.display_elt(&acc)
                    ));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("d² ≠ 0: {}", bad.join("; "))))
        }
    }

    /// Shift by `s`: basis degrees drop by `s`; for odd `s` each entry is
    /// twisted to `−(−1)^{|a_{ij}|} a_{ij}`, which preserves `d² = 0`.
    pub fn shift(&self, s: i64) -> DGModule<K> {
        let basis: Vec<(String, i64)> =
            self.basis.iter().map(|(n, d)| (n.clone(), d - s)).collect();
        let odd = s.rem_euclid(2) == 1;
        let mut diff = self.diff.clone();
        if odd {
            for (i, row) in diff.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let deg = self.basis[j].1 + 1 - self.basis[i].1;
                    *e = if deg.rem_euclid(2) == 1 { e.clone() } else { e.neg() };
                }
            }
        }
        DGModule { algebra: self.algebra.clone(), basis, diff }
    }

    /// Direct sum; basis names are regenerated to stay distinct.
    pub fn direct_sum(&self, other: &DGModule<K>) -> DGModule<K> {
        assert!(DGAlgebra::same_algebra(&self.algebra, &other.algebra));
        let mut basis = Vec::new();
        for (idx, (_, d)) in self.basis.iter().enumerate() {
            basis.push((format!("a{idx}"), *d));
        }
        for (idx, (_, d)) in other.basis.iter().enumerate() {
            basis.push((format!("b{idx}"), *d));
        }
        let (r1, r2) = (self.rank(), other.rank());
        let mut diff = vec![vec![self.algebra.zero_elt(); r1 + r2]; r1 + r2];
        for i in 0..r1 {
            for j in 0..r1 {
                diff[i][j] = self.diff[i][j].clone();
            }
        }
        for i in 0..r2 {
            for j in 0..r2 {
                diff[r1 + i][r1 + j] = other.diff[i][j].clone();
            }
        }
        DGModule { algebra: self.algebra.clone(), basis, diff }
    }

    /// Tensor product over the algebra: basis pairs, differential by the
    /// Leibniz rule with sign `(−1)^{|b_j|}` on the second factor, plus the
    /// Koszul sign for moving the entry past `b_j`.
    pub fn tensor(&self, other: &DGModule<K>) -> DGModule<K> {
        assert!(DGAlgebra::same_algebra(&self.algebra, &other.algebra));
        let (r1, r2) = (self.rank(), other.rank());
        let mut basis = Vec::new();
        for i in 0..r1 {
            for k in 0..r2 {
                basis.push((format!("t{i}x{k}"), self.basis[i].1 + other.basis[k].1));
            }
        }
        let flat = |i: usize, k: usize| i * r2 + k;
        let mut diff = vec![vec![self.algebra.zero_elt(); r1 * r2]; r1 * r2];
        for j in 0..r1 {
            for l in 0..r2 {
                let col = flat(j, l);
                // d_M ⊗ 1: entry (i,l) ← a_{ij}
                for i in 0..r1 {
                    let a = &self.diff[i][j];
                    if !a.is_zero() {
                        diff[flat(i, l)][col] = diff[flat(i, l)][col].add(a);
                    }
                }
                // (−1)^{|b_j|} b_j ⊗ d_N: entry (j,k) ← ±c_{kl}
                for k in 0..r2 {
                    let c = &other.diff[k][l];
                    if c.is_zero() {
                        continue;
                    }
                    let centry_deg = other.basis[l].1 + 1 - other.basis[k].1;
                    let sign_exp = self.basis[j].1 * (1 + centry_deg);
                    let signed = if sign_exp.rem_euclid(2) == 1 { c.neg() } else { c.clone() };
                    diff[flat(j, k)][col] = diff[flat(j, k)][col].add(&signed);
                }
            }
        }
        DGModule { algebra: self.algebra.clone(), basis, diff }
    }

    /// Mapping cone of `c·id` for a degree-0 base element `c`. The cone of
    /// the identity (`c = 1`) is contractible.
    pub fn cone_scalar(&self, c: &Poly<K>) -> DGModule<K> {
        let r = self.rank();
        let shifted = self.shift(1);
        let mut basis = Vec::new();
        for (idx, (_, d)) in self.basis.iter().enumerate() {
            basis.push((format!("y{idx}"), *d));
        }
        for (idx, (_, d)) in shifted.basis.iter().enumerate() {
            basis.push((format!("x{idx}"), *d));
        }
        let mut diff = vec![vec![self.algebra.zero_elt(); 2 * r]; 2 * r];
        for i in 0..r {
            for j in 0..r {
                diff[i][j] = self.diff[i][j].clone();
                diff[r + i][r + j] = shifted.diff[i][j].clone();
            }
        }
        let ce = AlgElt::from_base(self.algebra.ngens(), self.algebra.base.nf(c));
        for j in 0..r {
            diff[j][r + j] = diff[j][r + j].add(&ce);
        }
        DGModule { algebra: self.algebra.clone(), basis, diff }
    }

    /// All generator monomials of the given degree (descending-lex order).
    fn monomials_of_degree(&self, target: i64) -> Vec<GenMono> {
        monomials_of_degree(&self.algebra.gens, target)
    }

    /// Per-degree base-ring basis `(module basis index, generator
    /// monomial)` of the underlying complex, ordered by basis index, then
    /// monomials descending-lex.
    pub(crate) fn underlying_basis(&self, degree: i64) -> Vec<(usize, GenMono)> {
        let mut out = Vec::new();
        for (j, (_, bd)) in self.basis.iter().enumerate() {
            for m in self.monomials_of_degree(degree - bd) {
                out.push((j, m));
            }
        }
        out
    }

    /// The underlying complex of free base-ring modules. For finite-rank
    /// algebras the full complex is returned; infinite-rank algebras
    /// require a window `[lo, hi]`, and cohomology of the result is
    /// certified only on the interior `[lo+1, hi−1]`.
    pub fn underlying_complex(&self, window: Option<(i64, i64)>) -> Result<FreeComplex<K>> {
        self.validate()?;
        let (lo, hi) = match (window, self.algebra.infinite_rank()) {
            (Some((lo, hi)), _) => {
                if lo > hi {
                    return Err(Error::Invalid(format!("empty window [{lo}, {hi}]")));
                }
                (lo, hi)
            }
            (None, true) => return Err(Error::WindowRequired),
            (None, false) => {
                // degrees spanned by basis × subsets of odd generators
                let gens_total: i64 = self
                    .algebra
                    .gens
                    .iter()
                    .map(|g| g.degree)
                    .sum();
                let bmin = self.basis.iter().map(|(_, d)| *d).min().unwrap_or(0);
                let bmax = self.basis.iter().map(|(_, d)| *d).max().unwrap_or(0);
                (bmin + gens_total, bmax)
            }
        };
        let base = self.algebra.base.clone();
        let nvars = base.nvars();
        let gens = &self.algebra.gens;
        let mut ranks = BTreeMap::new();
        let mut bases: BTreeMap<i64, Vec<(usize, GenMono)>> = BTreeMap::new();
        for n in lo..=hi {
            let b = self.underlying_basis(n);
            if !b.is_empty() {
                ranks.insert(n, b.len());
                bases.insert(n, b);
            }
        }
        let mut diffs = BTreeMap::new();
        for n in lo..hi {
            let (Some(src), Some(tgt)) = (bases.get(&n), bases.get(&(n + 1))) else {
                continue;
            };
            let index_of: BTreeMap<(usize, &GenMono), usize> =
                tgt.iter().enumerate().map(|(r, (j, m))| ((*j, m), r)).collect();
            let mut mat = Matrix::zero(tgt.len(), src.len(), nvars);
            for (col, (j, m)) in src.iter().enumerate() {
                // d(e^m · b_j) = d(e^m)·b_j + (−1)^{|m|} e^m · d(b_j)
                let mut images: Vec<(usize, AlgElt<K>)> = Vec::new();
                let dm = self.algebra.d_mono(m);
                if !dm.is_zero() {
                    images.push((*j, dm));
                }
                let m_deg = m.degree(gens);
                let m_elt = AlgElt::term(m.clone(), Poly::one(nvars));
                for (i, row) in self.diff.iter().enumerate() {
                    let a = &row[*j];
                    if a.is_zero() {
                        continue;
                    }
                    let prod = m_elt.mul(a, gens);
                    let prod =
                        if m_deg.rem_euclid(2) == 1 { prod.neg() } else { prod };
                    if !prod.is_zero() {
                        images.push((i, prod));
                    }
                }
                for (i, elt) in images {
                    for (m2, p) in elt.terms() {
                        if let Some(&r) = index_of.get(&(i, m2)) {
                            mat.set(r, col, mat.get(r, col).add(p));
                        }
                        // monomials outside the window are dropped; this
                        // only affects the uncertified boundary degrees
                    }
                }
            }
            let mat = mat.map(|p| base.nf(p));
            if !mat.is_zero() {
                diffs.insert(n, mat);
            }
        }
        FreeComplex::new(base, ranks, diffs)
    }

    /// Cohomology table over `H⁰A`. For infinite-rank algebras the window
    /// is mandatory; internally the underlying complex is built on
    /// `[lo−1, hi+1]` so every reported degree is certified.
    pub fn dg_cohomology(
        &self,
        window: Option<(i64, i64)>,
        budget: &mut Budget,
    ) -> Result<CohomologyTable<K>> {
        let h0 = self.algebra.h0()?;
        let (complex, report_range) = match (window, self.algebra.infinite_rank()) {
            (None, true) => return Err(Error::WindowRequired),
            (Some((lo, hi)), _) => {
                (self.underlying_complex(Some((lo - 1, hi + 1)))?, Some((lo, hi)))
            }
            (None, false) => (self.underlying_complex(None)?, None),
        };
        let table = complex.cohomology_table(budget)?;
        let mut entries = BTreeMap::new();
        for (n, module) in table.entries {
            if let Some((lo, hi)) = report_range {
                if n < lo || n > hi {
                    continue;
                }
            }
            entries.insert(n, FPModule::new(h0.clone(), module.relations().clone()));
        }
        if let Some((lo, hi)) = report_range {
            for n in lo..=hi {
                entries
                    .entry(n)
                    .or_insert_with(|| FPModule::free(h0.clone(), 0));
            }
        }
        Ok(CohomologyTable { entries })
    }

    /// Reduction to the degree-zero ring: every algebra generator dies,
    /// base coefficients are reduced. Basis order within each degree is
    /// the module's basis-list order. Computes `H⁰A ⊗_A −`, which is the
    /// derived reduction because the module is semifree.
    pub fn reduce_to_h0(&self) -> Result<FreeComplex<K>> {
        self.validate()?;
        let h0 = self.algebra.h0()?;
        let nvars = h0.nvars();
        let mut degrees: Vec<i64> = self.basis.iter().map(|(_, d)| *d).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let per_degree: BTreeMap<i64, Vec<usize>> = degrees
            .iter()
            .map(|&n| {
                (
                    n,
                    (0..self.rank()).filter(|&j| self.basis[j].1 == n).collect::<Vec<_>>(),
                )
            })
            .collect();
        let mut ranks = BTreeMap::new();
        for (&n, idx) in &per_degree {
            ranks.insert(n, idx.len());
        }
        let mut diffs = BTreeMap::new();
        for &n in per_degree.keys() {
            let Some(tgt) = per_degree.get(&(n + 1)) else { continue };
            let src = &per_degree[&n];
            let mut m = Matrix::zero(tgt.len(), src.len(), nvars);
            for (col, &j) in src.iter().enumerate() {
                for (row, &i) in tgt.iter().enumerate() {
                    let p = h0.nf(&self.diff[i][j].base_part());
                    m.set(row, col, p);
                }
            }
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        FreeComplex::new(h0, ranks, diffs)
    }

    /// All cohomology vanishes (finite-rank algebras only).
    pub fn is_acyclic(&self, budget: &mut Budget) -> Result<bool> {
        let table = self.dg_cohomology(None, budget)?;
        Ok(table.nonzero_degrees(budget)?.is_empty())
    }
}

/// All monomials of the given degree in the listed generators
/// (descending-lex order), with exponent bounds induced by the degrees.
pub(crate) fn monomials_of_degree(gens: &[DGGen], target: i64) -> Vec<GenMono> {
    let n = gens.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        gens: &[DGGen],
        i: usize,
        remaining: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<GenMono>,
    ) {
        if i == gens.len() {
            if remaining == 0 {
                out.push(GenMono(cur.clone()));
            }
            return;
        }
        let d = gens[i].degree; // strictly negative
        let max_e = if gens[i].is_odd() {
            1
        } else {
            (remaining / d).max(0) as u32
        };
        for e in 0..=max_e {
            let used = e as i64 * d;
            if used < remaining {
                break; // more negative than needed
            }
            cur[i] = e;
            rec(gens, i + 1, remaining - used, cur, out);
        }
        cur[i] = 0;
    }
    rec(gens, 0, target, &mut cur, &mut out);
    out.sort_by(GenMono::desc_lex);
    out
}

/// Derived sup/inf/amplitude of a cohomology table.
pub fn table_amplitude<K: Coeff>(
    table: &CohomologyTable<K>,
    budget: &mut Budget,
) -> Result<Option<(i64, i64)>> {
    let degs = table.nonzero_degrees(budget)?;
    Ok(match (degs.first(), degs.last()) {
        (Some(&lo), Some(&hi)) => Some((lo, hi)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::RationalPoint;
    use crate::scalar::FieldKind;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qring(vars: &[&str]) -> Arc<PresentedRing<Q>> {
        PresentedRing::polynomial(
            FieldKind::Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn koszul_x() -> Arc<DGAlgebra<Q>> {
        let r = qring(&["x"]);
        DGAlgebra::koszul(r.clone(), vec!["e".into()], vec![r.parse("x").unwrap()]).unwrap()
    }

    fn koszul_xy() -> Arc<DGAlgebra<Q>> {
        let r = qring(&["x", "y"]);
        DGAlgebra::koszul(
            r.clone(),
            vec!["e1".into(), "e2".into()],
            vec![r.parse("x").unwrap(), r.parse("y").unwrap()],
        )
        .unwrap()
    }

    fn poly_t() -> Arc<DGAlgebra<Q>> {
        // ℚ[t] with |t| = −2, dt = 0
        let r = qring(&[]);
        DGAlgebra::new(
            r.clone(),
            vec![DGGen { name: "t".into(), degree: -2 }],
            vec![AlgElt::zero(1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn koszul_algebra_validates_and_has_the_right_h0() {
        let a = koszul_x();
        assert!(a.validate().is_ok());
        assert!(!a.infinite_rank());
        let h0 = a.h0().unwrap();
        assert!(h0.is_zero_elt(&h0.parse("x").unwrap()));
        assert!(!h0.is_zero_elt(&h0.parse("1").unwrap()));
    }

    #[test]
    fn h0_of_the_fat_point_koszul_algebra_is_the_field() {
        let rels: Vec<crate::poly::Poly<Q>> = {
            let tmp = qring(&["x", "y"]);
            vec![
                tmp.parse("x^2").unwrap(),
                tmp.parse("x*y").unwrap(),
                tmp.parse("y^2").unwrap(),
            ]
        };
        let base = PresentedRing::new(
            FieldKind::Rationals,
            vec!["x".into(), "y".into()],
            rels,
        )
        .unwrap();
        let a = DGAlgebra::koszul(
            base.clone(),
            vec!["e1".into(), "e2".into()],
            vec![base.parse("x").unwrap(), base.parse("y").unwrap()],
        )
        .unwrap();
        let h0 = a.h0().unwrap();
        // H⁰ = ℚ[x,y]/(x, y, …): both variables vanish
        assert!(h0.is_zero_elt(&h0.parse("x").unwrap()));
        assert!(h0.is_zero_elt(&h0.parse("y").unwrap()));
        assert!(!h0.is_zero_elt(&h0.parse("7").unwrap()));
    }

    #[test]
    fn even_generator_flags_infinite_rank_and_h0_is_the_base() {
        let a = poly_t();
        assert!(a.validate().is_ok());
        assert!(a.infinite_rank());
        let h0 = a.h0().unwrap();
        assert_eq!(h0.nvars(), 0);
        assert!(!h0.is_zero_elt(&h0.one()));
    }

    #[test]
    fn product_signs_are_graded_commutative() {
        let a = koszul_xy();
        let e1 = a.parse_elt("e1").unwrap();
        let e2 = a.parse_elt("e2").unwrap();
        let gens = a.gens();
        // e2·e1 = −e1·e2
        assert_eq!(e2.mul(&e1, gens), e1.mul(&e2, gens).neg());
        // odd squares vanish
        assert!(e1.mul(&e1, gens).is_zero());
        assert!(a.parse_elt("e1^2").unwrap().is_zero());
        // even generators commute and accumulate
        let t = poly_t();
        let te = t.parse_elt("t").unwrap();
        let t2 = te.mul(&te, t.gens());
        assert!(!t2.is_zero());
        assert_eq!(t2, t.parse_elt("t^2").unwrap());
    }

    #[test]
    fn leibniz_differential_on_products() {
        let a = koszul_xy();
        // d(e1*e2) = x·e2 − y·e1
        let prod = a.parse_elt("e1*e2").unwrap();
        let d = a.d_elt(&prod);
        let expected = a.parse_elt("x*e2 - y*e1").unwrap();
        assert_eq!(d, expected);
        // d is a differential: d(d(e1*e2)) = 0
        assert!(a.d_elt(&d).is_zero());
    }

    #[test]
    fn missigned_differential_is_reported_as_a_leibniz_failure() {
        // gens e1, e2 (degree −1, de_i = x, y) and w (degree −2);
        // correct: d(w) = x·e2 − y·e1; mis-signed: x·e2 + y·e1
        let r = qring(&["x", "y"]);
        let gens = vec![
            DGGen { name: "e1".into(), degree: -1 },
            DGGen { name: "e2".into(), degree: -1 },
            DGGen { name: "w".into(), degree: -2 },
        ];
        let mk = |expr: &str| -> Arc<DGAlgebra<Q>> {
            let tmp = DGAlgebra::new(
                r.clone(),
                gens.clone(),
                vec![AlgElt::zero(3, 2), AlgElt::zero(3, 2), AlgElt::zero(3, 2)],
            )
            .unwrap();
            let diffs = vec![
                tmp.parse_elt("x").unwrap(),
                tmp.parse_elt("y").unwrap(),
                tmp.parse_elt(expr).unwrap(),
            ];
            DGAlgebra::new(r.clone(), gens.clone(), diffs).unwrap()
        };
        assert!(mk("x*e2 - y*e1").validate().is_ok());
        let bad = mk("x*e2 + y*e1");
        let err = bad.validate().unwrap_err();
        assert!(format!("{err}").contains("d(d(w))"), "{err}");
    }

    #[test]
    fn underlying_complex_of_the_free_module_recovers_the_koszul_complex() {
        let a = koszul_x();
        let free = DGModule::free(a.clone(), 0);
        let c = free.underlying_complex(None).unwrap();
        let expected =
            FreeComplex::koszul(a.base().clone(), &[a.base().parse("x").unwrap()]).unwrap();
        assert_eq!(c, expected);

        let a2 = koszul_xy();
        let free2 = DGModule::free(a2.clone(), 0);
        let c2 = free2.underlying_complex(None).unwrap();
        let expected2 = FreeComplex::koszul(
            a2.base().clone(),
            &[a2.base().parse("x").unwrap(), a2.base().parse("y").unwrap()],
        )
        .unwrap();
        assert_eq!(c2, expected2);
        assert_eq!(c2.rank(-1), 2);
    }

    #[test]
    fn windowed_underlying_complex_of_the_polynomial_algebra() {
        let a = poly_t();
        let free = DGModule::free(a.clone(), 0);
        assert_eq!(free.underlying_complex(None).unwrap_err(), Error::WindowRequired);
        let c = free.underlying_complex(Some((-6, 0))).unwrap();
        for n in [-6i64, -4, -2, 0] {
            assert_eq!(c.rank(n), 1, "degree {n}");
        }
        for n in [-5i64, -3, -1] {
            assert_eq!(c.rank(n), 0, "degree {n}");
        }
        assert!(c.diff(-2).is_zero() && c.diff(-1).is_zero());
        let mut b = Budget::standard();
        let table = free.dg_cohomology(Some((-5, 0)), &mut b).unwrap();
        let nz = table.nonzero_degrees(&mut b).unwrap();
        assert_eq!(nz, vec![-4, -2, 0]);
        for n in nz {
            assert_eq!(table.get(n).unwrap().k_dimension(&mut b).unwrap(), Some(1));
        }
    }

    #[test]
    fn cohomology_of_the_nonregular_koszul_algebra_has_amplitude_one() {
        // A = K(ℚ[x]/(x²); x): H⁰ = ℚ, H^{−1} = ℚ·(x e)
        let base = PresentedRing::new(
            FieldKind::Rationals,
            vec!["x".into()],
            vec![{
                let tmp = qring(&["x"]);
                tmp.parse("x^2").unwrap()
            }],
        )
        .unwrap();
        let a = DGAlgebra::koszul(base.clone(), vec!["e".into()], vec![base.parse("x").unwrap()])
            .unwrap();
        let free = DGModule::free(a.clone(), 0);
        let mut b = Budget::standard();
        let table = free.dg_cohomology(None, &mut b).unwrap();
        assert_eq!(table.nonzero_degrees(&mut b).unwrap(), vec![-1, 0]);
        assert_eq!(table.get(0).unwrap().k_dimension(&mut b).unwrap(), Some(1));
        assert_eq!(table.get(-1).unwrap().k_dimension(&mut b).unwrap(), Some(1));
        assert_eq!(algebra_amplitude(&a, &mut b).unwrap(), Some((-1, 0)));
    }

    #[test]
    fn regular_koszul_algebra_has_amplitude_zero() {
        let a = koszul_x();
        let mut b = Budget::standard();
        assert_eq!(algebra_amplitude(&a, &mut b).unwrap(), Some((0, 0)));
        let a2 = koszul_xy();
        assert_eq!(algebra_amplitude(&a2, &mut b).unwrap(), Some((0, 0)));
    }

    #[test]
    fn cone_of_the_identity_is_acyclic_and_reduces_to_an_acyclic_complex() {
        let a = koszul_x();
        let free = DGModule::free(a.clone(), 0);
        let cone = free.cone_scalar(&a.base().one());
        assert!(cone.validate().is_ok());
        let mut b = Budget::standard();
        assert!(cone.is_acyclic(&mut b).unwrap());
        let red = cone.reduce_to_h0().unwrap();
        assert!(red.validate().is_ok());
        assert_eq!(red.amplitude(&mut b).unwrap(), None);
    }

    #[test]
    fn koszul_module_reduces_to_the_base_changed_koszul_complex() {
        // reduce(K(A; f)) = K(H⁰A; f̄), identical matrices
        let a = koszul_xy();
        let f = vec![a.base().parse("x + y").unwrap(), a.base().parse("x*y").unwrap()];
        let m = DGModule::koszul(a.clone(), &f).unwrap();
        assert!(m.validate().is_ok());
        let red = m.reduce_to_h0().unwrap();
        let h0 = a.h0().unwrap();
        let fbar: Vec<crate::poly::Poly<Q>> = f.iter().map(|p| h0.nf(p)).collect();
        let expected = FreeComplex::koszul(h0.clone(), &fbar).unwrap();
        assert_eq!(red, expected);
    }

    #[test]
    fn reduction_of_the_free_module_is_the_degree_zero_ring() {
        let a = koszul_xy();
        let free = DGModule::free(a.clone(), 0);
        let red = free.reduce_to_h0().unwrap();
        assert_eq!(red.rank(0), 1);
        assert_eq!(red.degree_range(), Some((0, 0)));
        let mut b = Budget::standard();
        assert_eq!(red.amplitude(&mut b).unwrap(), Some((0, 0)));
    }

    #[test]
    fn tensor_of_koszul_modules_validates_and_matches_the_joint_module() {
        let a = koszul_xy();
        let kx = DGModule::koszul(a.clone(), &[a.base().parse("x").unwrap()]).unwrap();
        let ky = DGModule::koszul(a.clone(), &[a.base().parse("y").unwrap()]).unwrap();
        let t = kx.tensor(&ky);
        assert!(t.validate().is_ok());
        let joint = DGModule::koszul(
            a.clone(),
            &[a.base().parse("x").unwrap(), a.base().parse("y").unwrap()],
        )
        .unwrap();
        // same cohomology fiber dimensions over the base at sampled points
        let ct = t.underlying_complex(None).unwrap();
        let cj = joint.underlying_complex(None).unwrap();
        for ax in -2..=2 {
            for ay in -2..=2 {
                let p = RationalPoint::new(
                    a.base(),
                    vec![Q::from_integer(ax.into()), Q::from_integer(ay.into())],
                )
                .unwrap();
                assert_eq!(ct.fiber_dims(&p), cj.fiber_dims(&p));
            }
        }
    }

    #[test]
    fn tensor_with_the_rank_one_free_module_preserves_cohomology() {
        let a = koszul_x();
        let m = DGModule::koszul(a.clone(), &[a.base().parse("x").unwrap()]).unwrap();
        let unit = DGModule::free(a.clone(), 0);
        let t = m.tensor(&unit);
        assert!(t.validate().is_ok());
        let mut b = Budget::standard();
        let tm = m.dg_cohomology(None, &mut b).unwrap();
        let tt = t.dg_cohomology(None, &mut b).unwrap();
        assert_eq!(
            tm.nonzero_degrees(&mut b).unwrap(),
            tt.nonzero_degrees(&mut b).unwrap()
        );
        for (n, module) in &tm.entries {
            let other = tt.get(*n).unwrap();
            assert_eq!(
                module.k_dimension(&mut b).unwrap(),
                other.k_dimension(&mut b).unwrap(),
                "degree {n}"
            );
        }
    }

    #[test]
    fn shifts_and_sums_stay_valid_and_shift_moves_cohomology() {
        let a = koszul_xy();
        let m = DGModule::koszul(a.clone(), &[a.base().parse("x + y").unwrap()]).unwrap();
        let s = m.shift(1);
        assert!(s.validate().is_ok());
        let mut b = Budget::standard();
        let tm = m.dg_cohomology(None, &mut b).unwrap();
        let ts = s.dg_cohomology(None, &mut b).unwrap();
        let dm = tm.nonzero_degrees(&mut b).unwrap();
        let ds = ts.nonzero_degrees(&mut b).unwrap();
        assert_eq!(dm.iter().map(|n| n - 1).collect::<Vec<_>>(), ds);
        let sum = m.direct_sum(&s);
        assert!(sum.validate().is_ok());
    }

    #[test]
    fn parse_round_trips_through_display() {
        let a = koszul_xy();
        for text in ["x*e1 - 2*e2", "e1*e2", "(x + y)*e1 + 1", "x^2 - e1*e2"] {
            let e = a.parse_elt(text).unwrap();
            let shown = a.display_elt(&e);
            let again = a.parse_elt(&shown).unwrap();
            assert_eq!(e, again, "{text} → {shown}");
        }
    }

    #[test]
    fn entry_degree_violations_are_rejected_at_construction() {
        let a = koszul_x();
        // d(b) = e·c with deg(b) = 0, deg(c) = 0 needs degree +1: rejected
        let e = a.parse_elt("e").unwrap();
        let err = DGModule::new(
            a.clone(),
            vec![("b".into(), 0), ("c".into(), 0)],
            vec![
                vec![a.zero_elt(), a.zero_elt()],
                vec![e.clone(), a.zero_elt()],
            ],
        )
        .unwrap_err();
        assert!(format!("{err}").contains("degree"));
        // well-formed but d² ≠ 0 passes construction and fails validate:
        // d(c) = e·b gives d²(c) = d(e)·b = x·b
        let bad = DGModule::new(
            a.clone(),
            vec![("b".into(), 0), ("c".into(), -2)],
            vec![
                vec![a.zero_elt(), a.parse_elt("e").unwrap()],
                vec![a.zero_elt(), a.zero_elt()],
            ],
        )
        .unwrap();
        assert!(bad.validate().is_err());
    }
}
