//! Monomials (exponent vectors) and term orders.

use std::cmp::Ordering;
use std::fmt::Write as _;

/// A monomial in a fixed polynomial ring, as an exponent vector.
///
/// The derived `Ord` (lexicographic on the raw vector) is used only for
/// canonical map storage; Gröbner computations compare through
/// [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when it exists.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Append `extra` fresh variables (exponent 0).
    pub fn pad(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat(0).take(extra));
        Monomial(e)
    }

    /// Render with the given variable names, `*`-separated, `^` powers.
    pub fn display(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            if e == 1 {
                let _ = write!(out, "{}", vars[i]);
            } else {
                let _ = write!(out, "{}^{}", vars[i], e);
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Term order on monomials (and, through positions, on free-module terms).
///
/// `PositionOverTerm` orders module terms by position first (earlier basis
/// vectors are larger), breaking ties with its base order; on ring monomials
/// it behaves as its base order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    PositionOverTerm(BaseOrder),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BaseOrder {
    GrevLex,
    Lex,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GrevLex
    }
}

impl MonomialOrder {
    fn base(&self) -> BaseOrder {
        match self {
            MonomialOrder::GrevLex => BaseOrder::GrevLex,
            MonomialOrder::Lex => BaseOrder::Lex,
            MonomialOrder::PositionOverTerm(b) => *b,
        }
    }

    /// Compare two monomials of the same arity.
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.base() {
            BaseOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            BaseOrder::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Graded reverse lex: the rightmost differing exponent decides,
                // with the *smaller* exponent winning.
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Compare free-module terms `(position, monomial)`.
    pub fn cmp_term(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self {
            MonomialOrder::PositionOverTerm(_) => match a.0.cmp(&b.0) {
                // Lower position = earlier basis vector = larger term.
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => self.cmp_mono(a.1, b.1),
            },
            _ => match self.cmp_mono(a.1, b.1) {
                Ordering::Equal => match a.0.cmp(&b.0) {
                    Ordering::Less => Ordering::Greater,
                    Ordering::Greater => Ordering::Less,
                    Ordering::Equal => Ordering::Equal,
                },
                ord => ord,
            },
        }
    }
}
