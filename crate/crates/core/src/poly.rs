//! Exact multivariate polynomials over a [`Coeff`] field.

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::Coeff;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Multivariate polynomial: a finite map exponent-vector → nonzero coefficient.
///
/// The polynomial knows its arity; variable names live in the ring and are
/// supplied for display/parsing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<K> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

/// `a^e` by repeated squaring.
pub fn coeff_pow<K: Coeff>(a: &K, mut e: u32) -> K {
    let mut base = a.clone();
    let mut acc = K::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

impl<K: Coeff> Poly<K> {
    pub fn zero(nvars: usize) -> Poly<K> {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, k: K) -> Poly<K> {
        let mut p = Poly::zero(nvars);
        if !k.is_zero() {
            p.terms.insert(Monomial::one(nvars), k);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly<K> {
        Poly::constant(nvars, K::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly<K> {
        Poly::term(Monomial::var(nvars, i), K::one())
    }

    pub fn term(m: Monomial, k: K) -> Poly<K> {
        let mut p = Poly::zero(m.nvars());
        if !k.is_zero() {
            p.terms.insert(m, k);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff_of(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Monomial, k: K) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if k.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly<K>) -> Poly<K> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(m.clone(), k.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<K> {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), -k.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly<K>) -> Poly<K> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Poly<K> {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Multiply by the single term `k·m`.
    pub fn mul_term(&self, m: &Monomial, k: &K) -> Poly<K> {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (tm, tk) in &self.terms {
            out.add_term(tm.mul(m), tk.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly<K>) -> Poly<K> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, k) in &self.terms {
            for (n, l) in &other.terms {
                out.add_term(m.mul(n), k.clone() * l.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly<K> {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &K)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_mono(a, b))
            .map(|(m, k)| (m, k))
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Poly<K> {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.try_inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Evaluate at a point (one coordinate per variable).
    pub fn eval(&self, coords: &[K]) -> K {
        debug_assert_eq!(coords.len(), self.nvars);
        let mut acc = K::zero();
        for (m, k) in &self.terms {
            let mut t = k.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * coeff_pow(&coords[i], e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// View in a ring with `extra` more variables appended.
    pub fn pad_vars(&self, extra: usize) -> Poly<K> {
        Poly {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, k)| (m.pad(extra), k.clone())).collect(),
        }
    }

    /// Drop trailing variables, which must not occur in any term.
    pub fn shrink_vars(&self, nvars: usize) -> Poly<K> {
        debug_assert!(self
            .terms
            .keys()
            .all(|m| m.0[nvars..].iter().all(|&e| e == 0)));
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (Monomial(m.0[..nvars].to_vec()), k.clone()))
                .collect(),
        }
    }

    /// Terms sorted descending under `order` (display / division order).
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &K)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| order.cmp_mono(b, a));
        ts
    }

    /// Render with the given variable names; deterministic (grevlex-descending).
    pub fn display(&self, vars: &[String]) -> String {
        debug_assert_eq!(vars.len(), self.nvars);
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, k) in self.sorted_terms(MonomialOrder::GrevLex) {
            let ks = k.to_string();
            let (neg, mag) = match ks.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, ks),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(out, "{mag}");
            } else if mag == "1" {
                let _ = write!(out, "{}", m.display(vars));
            } else {
                let _ = write!(out, "{}*{}", mag, m.display(vars));
            }
        }
        out
    }
}
