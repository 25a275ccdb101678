//! Independent brute-force validators: deterministic rational-point grids,
//! fiber-wise support sampling, exhaustive low-power radical membership,
//! a second Gaussian-elimination implementation of fiber cohomology, and
//! seeded random instance generators for cross-check harnesses.
//!
//! Nothing in this module shares algorithmic machinery with the engine
//! routes it checks: support sampling goes through scalar fibers instead
//! of Fitting ideals, radical membership through explicit powers instead
//! of an auxiliary variable, and fiber dimensions through a column
//! reduction written here instead of the matrix layer's row echelon.

use crate::complex::{FreeComplex, RationalPoint};
use crate::error::Result;
use crate::groebner::Budget;
use crate::matrix::{Matrix, ScalarMat};
use crate::poly::Poly;
use crate::ring::{Ideal, PresentedRing};
use crate::scalar::Coeff;
use crate::strata::SupportIdeal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Default seed for every reproducible sampling recipe in the artifact.
pub const DEFAULT_SEED: u64 = 0x5E1F;

/// A deterministic set of rational points on the variety of a ring: the
/// full integer box `{−2..2}^n` filtered by the relations, plus a fixed
/// number of rejection-sampled extras with coordinates in `{−9..9}` drawn
/// from a seeded stream. Reproducible from (ring, seed, extra) alone.
#[derive(Clone, Debug)]
pub struct PointGrid<K: Coeff> {
    ring: Arc<PresentedRing<K>>,
    points: Vec<RationalPoint<K>>,
}

impl<K: Coeff> PointGrid<K> {
    pub fn standard(ring: Arc<PresentedRing<K>>, seed: u64, extra: usize) -> PointGrid<K> {
        let n = ring.nvars();
        let mut points: Vec<RationalPoint<K>> = Vec::new();
        let mut coords = vec![-2i64; n];
        'box_walk: loop {
            let c: Vec<K> =
                coords.iter().map(|&v| K::from_int(v, ring.field())).collect();
            if let Ok(p) = RationalPoint::new(&ring, c) {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            for i in 0..n {
                if coords[i] < 2 {
                    coords[i] += 1;
                    coords[..i].fill(-2);
                    continue 'box_walk;
                }
            }
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut added = 0;
        let mut attempts = 0;
        while n > 0 && added < extra && attempts < 200 * extra.max(1) {
            attempts += 1;
            let c: Vec<K> = (0..n)
                .map(|_| K::from_int(rng.gen_range(-9..=9), ring.field()))
                .collect();
            if let Ok(p) = RationalPoint::new(&ring, c) {
                if !points.contains(&p) {
                    points.push(p);
                    added += 1;
                }
            }
        }
        PointGrid { ring, points }
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn points(&self) -> &[RationalPoint<K>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn display_point(&self, p: &RationalPoint<K>) -> String {
        let inner = p
            .coords()
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        format!("({inner})")
    }
}

/// Whether every generator of the ideal vanishes at the point.
pub fn point_in_vanishing_locus<K: Coeff>(ideal: &Ideal<K>, p: &RationalPoint<K>) -> bool {
    ideal.gens().iter().all(|g| g.eval(p.coords()).is_zero())
}

/// Per grid point: is the point in the support of the complex? Decided on
/// the fiber: the point is in the support iff some fiber cohomology
/// dimension is nonzero.
pub fn sample_support<K: Coeff>(
    x: &FreeComplex<K>,
    grid: &PointGrid<K>,
) -> Vec<(RationalPoint<K>, bool)> {
    grid.points()
        .iter()
        .map(|p| {
            let dims = x.fiber_dims(p);
            (p.clone(), dims.values().any(|&d| d != 0))
        })
        .collect()
}

/// Agreement record between an engine-computed support and point
/// sampling, embedded in machine reports.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub points_checked: usize,
    pub mismatches: Vec<String>,
    pub agree: bool,
}

/// Check `V(supp.ideal)` against fiber sampling of `x` at every grid
/// point: membership booleans must coincide everywhere.
pub fn support_crosscheck<K: Coeff>(
    x: &FreeComplex<K>,
    supp: &SupportIdeal<K>,
    grid: &PointGrid<K>,
) -> CrosscheckReport {
    let mut mismatches = Vec::new();
    for (p, in_support) in sample_support(x, grid) {
        let in_locus = point_in_vanishing_locus(supp.ideal(), &p);
        if in_support != in_locus {
            mismatches.push(grid.display_point(&p));
        }
    }
    CrosscheckReport {
        points_checked: grid.len(),
        mismatches: mismatches.clone(),
        agree: mismatches.is_empty(),
    }
}

/// Outcome of the brute-force radical test: it may give up, but it never
/// guesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BruteAnswer {
    Member,
    NonMember,
    Unknown,
}

/// Brute-force radical membership: `Member` if `f^k ∈ I` for some
/// `k ≤ max_power` by normal form; `NonMember` if some grid point of
/// `V(I)` has `f ≠ 0`; `Unknown` otherwise.
pub fn brute_radical_member<K: Coeff>(
    f: &Poly<K>,
    ideal: &Ideal<K>,
    max_power: u32,
    grid: &PointGrid<K>,
    budget: &mut Budget,
) -> Result<BruteAnswer> {
    let ring = ideal.ring();
    let mut power = ring.one();
    for _ in 1..=max_power {
        power = ring.nf(&power.mul(f));
        if ideal.contains(&power, budget)? {
            return Ok(BruteAnswer::Member);
        }
    }
    for p in grid.points() {
        if point_in_vanishing_locus(ideal, p) && !f.eval(p.coords()).is_zero() {
            return Ok(BruteAnswer::NonMember);
        }
    }
    Ok(BruteAnswer::Unknown)
}

/// Rank by column reduction (left to right, normalizing each pivot),
/// deliberately a different elimination orientation from the matrix
/// layer's row echelon.
fn column_rank<K: Coeff>(m: &ScalarMat<K>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut work: Vec<Vec<K>> = (0..cols)
        .map(|j| (0..rows).map(|i| m.get(i, j).clone()).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for j in 0..cols {
        for &(prow, pcol) in &pivots {
            let factor = work[j][prow].clone();
            if factor.is_zero() {
                continue;
            }
            for i in 0..rows {
                let v = work[j][i].clone() - factor.clone() * work[pcol][i].clone();
                work[j][i] = v;
            }
        }
        if let Some(i) = (0..rows).find(|&i| !work[j][i].is_zero()) {
            let inv = work[j][i].try_inv().expect("nonzero pivot");
            for v in work[j].iter_mut() {
                *v = v.clone() * inv.clone();
            }
            pivots.push((i, j));
        }
    }
    pivots.len()
}

/// Fiber cohomology dimensions by the column-reduction route. Must agree
/// with the engine's fiber computation on every input.
pub fn dense_cohomology_dims<K: Coeff>(
    x: &FreeComplex<K>,
    a: &RationalPoint<K>,
) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = x.degree_range() else { return out };
    let fibers = x.fiber(a);
    let rank_at = |n: i64| fibers.get(&n).map(column_rank).unwrap_or(0);
    for n in lo..=hi {
        if x.rank(n) == 0 {
            out.insert(n, 0);
            continue;
        }
        out.insert(n, x.rank(n) - rank_at(n) - rank_at(n - 1));
    }
    out
}

/// Random polynomial: up to `max_terms` monomials of total degree at most
/// `max_deg` with small nonzero integer coefficients, in canonical form.
pub fn random_poly<K: Coeff>(
    ring: &Arc<PresentedRing<K>>,
    rng: &mut ChaCha8Rng,
    max_deg: u32,
    max_terms: usize,
) -> Poly<K> {
    let n = ring.nvars();
    let mut acc = Poly::zero(n);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let c = loop {
            let c = rng.gen_range(-3..=3i64);
            if c != 0 {
                break c;
            }
        };
        let mut term = Poly::constant(n, K::from_int(c, ring.field()));
        if n > 0 {
            for _ in 0..rng.gen_range(0..=max_deg) {
                term = term.mul(&Poly::var(n, rng.gen_range(0..n)));
            }
        }
        acc = acc.add(&term);
    }
    ring.nf(&acc)
}

/// The two-term complex `[R --f--> R]` in degrees −1, 0 for a random `f`;
/// any single matrix satisfies `d² = 0`, so this always constructs.
pub fn random_two_term<K: Coeff>(
    ring: &Arc<PresentedRing<K>>,
    rng: &mut ChaCha8Rng,
    max_deg: u32,
) -> FreeComplex<K> {
    let f = random_poly(ring, rng, max_deg, 2);
    let mut ranks = BTreeMap::new();
    ranks.insert(-1, 1);
    ranks.insert(0, 1);
    let mut diffs = BTreeMap::new();
    diffs.insert(-1, Matrix::from_rows(ring.nvars(), vec![vec![f]]));
    FreeComplex::new(ring.clone(), ranks, diffs)
        .expect("a single differential always squares to zero")
}

/// Tensor product of `factors` random two-term complexes: a valid complex
/// with `factors + 1` terms, Koszul-like but with arbitrary entries.
pub fn random_tensor_complex<K: Coeff>(
    ring: &Arc<PresentedRing<K>>,
    rng: &mut ChaCha8Rng,
    factors: usize,
    max_deg: u32,
) -> FreeComplex<K> {
    let mut acc = random_two_term(ring, rng, max_deg);
    for _ in 1..factors.max(1) {
        acc = acc.tensor(&random_two_term(ring, rng, max_deg));
    }
    acc
}
