//! The verdict layer: support ideals of complexes and DG-modules inside
//! `Spec(H⁰A)`, support containment with radical-membership certificates,
//! builds/finitely-builds decisions, the tensor-support law, membership in
//! thick subcategories cut out by specialization-closed sets, and
//! support comparisons across the reduction functor.

use crate::complex::FreeComplex;
use crate::dg::{algebra_amplitude, DGModule};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::ring::{Ideal, PresentedRing};
use crate::scalar::Coeff;
use serde::Serialize;
use std::sync::Arc;

/// Support of an object as a closed subset `V(ideal) ⊆ Spec(ring)`. Only
/// the radical of the ideal is meaningful; equality of supports is mutual
/// radical containment, never normalization.
#[derive(Clone, Debug)]
pub struct SupportIdeal<K: Coeff> {
    ring: Arc<PresentedRing<K>>,
    ideal: Ideal<K>,
}

impl<K: Coeff> SupportIdeal<K> {
    pub fn new(ring: Arc<PresentedRing<K>>, ideal: Ideal<K>) -> SupportIdeal<K> {
        SupportIdeal { ring, ideal }
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal<K> {
        &self.ideal
    }

    /// The whole spectrum: `V(0)`.
    pub fn everything(ring: Arc<PresentedRing<K>>) -> SupportIdeal<K> {
        let ideal = Ideal::zero(ring.clone());
        SupportIdeal { ring, ideal }
    }

    /// The empty set: `V(1)`.
    pub fn empty(ring: Arc<PresentedRing<K>>) -> SupportIdeal<K> {
        let ideal = Ideal::unit(ring.clone());
        SupportIdeal { ring, ideal }
    }

    /// Mutual radical containment.
    pub fn equal(&self, other: &SupportIdeal<K>, budget: &mut Budget) -> Result<bool> {
        Ok(supp_contains(self, other, budget)?.answer == Answer::Yes
            && supp_contains(other, self, budget)?.answer == Answer::Yes)
    }

    pub fn display_gens(&self) -> Vec<String> {
        self.ideal.gens().iter().map(|g| self.ring.display(g)).collect()
    }
}

/// A specialization-closed subset, represented as a finite union of closed
/// sets `∪_j V(I_j)`.
#[derive(Clone, Debug)]
pub struct SpecializationClosedSet<K: Coeff> {
    ring: Arc<PresentedRing<K>>,
    components: Vec<Ideal<K>>,
}

impl<K: Coeff> SpecializationClosedSet<K> {
    pub fn new(
        ring: Arc<PresentedRing<K>>,
        components: Vec<Ideal<K>>,
    ) -> Result<SpecializationClosedSet<K>> {
        for c in &components {
            if !PresentedRing::same_ring(c.ring(), &ring) {
                return Err(Error::Incompatible(
                    "closed-set component over a different ring".into(),
                ));
            }
        }
        Ok(SpecializationClosedSet { ring, components })
    }

    pub fn ring(&self) -> &Arc<PresentedRing<K>> {
        &self.ring
    }

    pub fn components(&self) -> &[Ideal<K>] {
        &self.components
    }

    /// One ideal whose vanishing locus is the whole union:
    /// `V(I₁) ∪ … ∪ V(I_r) = V(I₁·…·I_r)`. An empty union is `V(1) = ∅`.
    pub fn union_ideal(&self) -> Ideal<K> {
        let mut acc = Ideal::unit(self.ring.clone());
        for c in &self.components {
            acc = acc.product(c);
        }
        acc
    }
}

/// Outcome of a verdict: inapplicability is first-class, distinct from no.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Inapplicable,
}

/// One radical-membership check backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertEntry {
    pub generator: String,
    pub member_of_radical: bool,
    pub auxiliary_gb_size: usize,
}

/// Which hypotheses of the licensing theorem were established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub amplitude: Option<i64>,
    pub finite_rank: bool,
}

/// A certified answer: never a bare yes/no. `theorem` names the licensing
/// classification result; `certificate` carries the per-generator
/// radical-membership witnesses that re-check independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub theorem: String,
    pub certificate: Vec<CertEntry>,
    pub applicability: Applicability,
}

pub const THM_BUILDS: &str = "builds-iff-support-containment";
pub const THM_FINITELY_BUILDS: &str = "finitely-builds-iff-support-containment-for-compacts";
pub const THM_THICK: &str = "thick-subcategories-are-specialization-closed-supports";
pub const THM_SUPP_CONTAINS: &str = "support-containment-by-radical-membership";
pub const THM_REDUCTION_SUPP: &str = "reduction-preserves-support";
pub const THM_REDUCTION_BUILDS: &str = "reduction-determines-building";
pub const THM_TENSOR: &str = "tensor-support-intersection";
pub const THM_INAPPLICABLE: &str = "stratification-requires-finite-amplitude";

/// Support of a complex: `V(∏ᵢ Fitt₀(H^i))` over the complex's ring. Unit
/// factors (vanishing cohomology) are dropped; a zero factor (a degree
/// with full support) short-circuits to the whole spectrum.
pub fn support_of_complex<K: Coeff>(
    x: &FreeComplex<K>,
    budget: &mut Budget,
) -> Result<SupportIdeal<K>> {
    let ring = x.ring().clone();
    let table = x.cohomology_table(budget)?;
    let mut acc: Option<Ideal<K>> = None;
    for module in table.entries.values() {
        let f = module.fitting_ideal();
        if f.is_unit(budget)? {
            continue;
        }
        if f.is_zero_ideal() {
            return Ok(SupportIdeal::everything(ring));
        }
        acc = Some(match acc {
            None => f,
            Some(a) => a.product(&f),
        });
    }
    Ok(match acc {
        None => SupportIdeal::empty(ring),
        Some(ideal) => SupportIdeal { ring, ideal },
    })
}

/// Support of a DG-module inside `Spec(H⁰A)`, through its cohomology
/// table. Requires a finite-rank algebra (otherwise no window-free
/// cohomology, hence no certified support).
pub fn support_of<K: Coeff>(m: &DGModule<K>, budget: &mut Budget) -> Result<SupportIdeal<K>> {
    let h0 = m.algebra().h0()?;
    let table = m.dg_cohomology(None, budget)?;
    let mut acc: Option<Ideal<K>> = None;
    for module in table.entries.values() {
        let f = module.fitting_ideal();
        if f.is_unit(budget)? {
            continue;
        }
        if f.is_zero_ideal() {
            return Ok(SupportIdeal::everything(h0));
        }
        acc = Some(match acc {
            None => f,
            Some(a) => a.product(&f),
        });
    }
    Ok(match acc {
        None => SupportIdeal::empty(h0),
        Some(ideal) => SupportIdeal { ring: h0, ideal },
    })
}

fn radical_certificate<K: Coeff>(
    big: &SupportIdeal<K>,
    small: &SupportIdeal<K>,
    budget: &mut Budget,
) -> Result<(bool, Vec<CertEntry>)> {
    let mut all = true;
    let mut cert = Vec::new();
    for g in big.ideal.gens() {
        let w = small.ideal.radical_contains(g, budget)?;
        all &= w.member;
        cert.push(CertEntry {
            generator: big.ring.display(g),
            member_of_radical: w.member,
            auxiliary_gb_size: w.auxiliary_gb_size,
        });
    }
    Ok((all, cert))
}

/// Decide `V(small.ideal) ⊆ V(big.ideal)`: every generator of the big
/// ideal must lie in the radical of the small one. An empty generator list
/// on the big side is the whole spectrum — vacuously yes.
pub fn supp_contains<K: Coeff>(
    big: &SupportIdeal<K>,
    small: &SupportIdeal<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    if !PresentedRing::same_ring(&big.ring, &small.ring) {
        return Err(Error::Incompatible(
            "support containment needs both supports over the same ring".into(),
        ));
    }
    let (all, cert) = radical_certificate(big, small, budget)?;
    Ok(Verdict {
        answer: if all { Answer::Yes } else { Answer::No },
        theorem: THM_SUPP_CONTAINS.into(),
        certificate: cert,
        applicability: Applicability { amplitude: None, finite_rank: true },
    })
}

/// Recompute the radical memberships behind a containment verdict and
/// check they reproduce it (generators, flags, and final answer).
pub fn reverify_containment<K: Coeff>(
    big: &SupportIdeal<K>,
    small: &SupportIdeal<K>,
    verdict: &Verdict,
    budget: &mut Budget,
) -> Result<bool> {
    let (all, cert) = radical_certificate(big, small, budget)?;
    let answer_matches = match verdict.answer {
        Answer::Yes => all,
        Answer::No => !all,
        Answer::Inapplicable => false,
    };
    Ok(answer_matches
        && cert.len() == verdict.certificate.len()
        && cert
            .iter()
            .zip(&verdict.certificate)
            .all(|(a, b)| {
                a.generator == b.generator && a.member_of_radical == b.member_of_radical
            }))
}

fn amplitude_gate<K: Coeff>(
    m: &DGModule<K>,
    budget: &mut Budget,
) -> Result<std::result::Result<Applicability, Verdict>> {
    m.algebra().h0()?;
    let amp = algebra_amplitude(m.algebra(), budget)?;
    Ok(match amp {
        Some((lo, hi)) => Ok(Applicability { amplitude: Some(hi - lo), finite_rank: true }),
        None => Err(Verdict {
            answer: Answer::Inapplicable,
            theorem: THM_INAPPLICABLE.into(),
            certificate: Vec::new(),
            applicability: Applicability {
                amplitude: None,
                finite_rank: !m.algebra().infinite_rank(),
            },
        }),
    })
}

fn builds_with_theorem<K: Coeff>(
    m: &DGModule<K>,
    n: &DGModule<K>,
    theorem: &str,
    budget: &mut Budget,
) -> Result<Verdict> {
    if !crate::dg::DGAlgebra::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Incompatible(
            "builds verdicts need both modules over the same algebra".into(),
        ));
    }
    let applicability = match amplitude_gate(m, budget)? {
        Ok(a) => a,
        Err(v) => return Ok(v),
    };
    let supp_m = support_of(m, budget)?;
    let supp_n = support_of(n, budget)?;
    let inner = supp_contains(&supp_m, &supp_n, budget)?;
    Ok(Verdict {
        answer: inner.answer,
        theorem: theorem.into(),
        certificate: inner.certificate,
        applicability,
    })
}

/// Does `M` build `N` (N lies in the localizing subcategory generated by
/// M)? Decided by support containment; refused (`inapplicable`) when the
/// algebra has no finite-amplitude certificate.
pub fn builds<K: Coeff>(
    m: &DGModule<K>,
    n: &DGModule<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    builds_with_theorem(m, n, THM_BUILDS, budget)
}

/// Does `M` finitely build `N` (thick subcategory instead of localizing)?
/// Same support criterion; the inputs here are always compact because the
/// representation is finite semifree.
pub fn finitely_builds<K: Coeff>(
    m: &DGModule<K>,
    n: &DGModule<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    builds_with_theorem(m, n, THM_FINITELY_BUILDS, budget)
}

/// A two-sided support comparison: both containment verdicts plus the
/// participating ideals' printed generators.
#[derive(Clone, Debug, Serialize)]
pub struct SupportComparison {
    pub theorem: String,
    pub left_gens: Vec<String>,
    pub right_gens: Vec<String>,
    pub left_contains_right: Verdict,
    pub right_contains_left: Verdict,
    pub equal: bool,
}

fn compare_supports<K: Coeff>(
    left: &SupportIdeal<K>,
    right: &SupportIdeal<K>,
    theorem: &str,
    budget: &mut Budget,
) -> Result<SupportComparison> {
    let fwd = supp_contains(left, right, budget)?;
    let bwd = supp_contains(right, left, budget)?;
    let equal = fwd.answer == Answer::Yes && bwd.answer == Answer::Yes;
    Ok(SupportComparison {
        theorem: theorem.into(),
        left_gens: left.display_gens(),
        right_gens: right.display_gens(),
        left_contains_right: fwd,
        right_contains_left: bwd,
        equal,
    })
}

/// Verify the tensor law `supp(M ⊗ N) = supp(M) ∩ supp(N)`: the left side
/// is computed from the tensor module's cohomology, the right side as
/// `V(J_M + J_N)`, and the report carries both directions' certificates.
pub fn tensor_support_check<K: Coeff>(
    m: &DGModule<K>,
    n: &DGModule<K>,
    budget: &mut Budget,
) -> Result<SupportComparison> {
    if !crate::dg::DGAlgebra::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Incompatible(
            "the tensor law needs both modules over the same algebra".into(),
        ));
    }
    let tensor = m.tensor(n);
    let left = support_of(&tensor, budget)?;
    let supp_m = support_of(m, budget)?;
    let supp_n = support_of(n, budget)?;
    let right = SupportIdeal {
        ring: supp_m.ring.clone(),
        ideal: supp_m.ideal.sum(&supp_n.ideal),
    };
    compare_supports(&left, &right, THM_TENSOR, budget)
}

/// Verify `supp(M) = supp(reduce_to_h0(M))` by mutual radical containment.
pub fn reduction_supp_check<K: Coeff>(
    m: &DGModule<K>,
    budget: &mut Budget,
) -> Result<SupportComparison> {
    let left = support_of(m, budget)?;
    let reduced = m.reduce_to_h0()?;
    let right = support_of_complex(&reduced, budget)?;
    compare_supports(&left, &right, THM_REDUCTION_SUPP, budget)
}

/// Check that `builds(M, N)` agrees with the same support criterion
/// computed entirely on the reduced side (over `H⁰A`).
#[derive(Clone, Debug, Serialize)]
pub struct ReductionBuildsReport {
    pub theorem: String,
    pub algebra_side: Verdict,
    pub reduced_side: Verdict,
    pub agree: bool,
}

pub fn reduction_builds_check<K: Coeff>(
    m: &DGModule<K>,
    n: &DGModule<K>,
    budget: &mut Budget,
) -> Result<ReductionBuildsReport> {
    let algebra_side = builds(m, n, budget)?;
    let rm = support_of_complex(&m.reduce_to_h0()?, budget)?;
    let rn = support_of_complex(&n.reduce_to_h0()?, budget)?;
    let reduced_side = supp_contains(&rm, &rn, budget)?;
    let agree = match algebra_side.answer {
        Answer::Inapplicable => false,
        a => a == reduced_side.answer,
    };
    Ok(ReductionBuildsReport {
        theorem: THM_REDUCTION_BUILDS.into(),
        algebra_side,
        reduced_side,
        agree,
    })
}

/// Membership of a support in a specialization-closed set: the union of
/// closed components is encoded as the product ideal, so the test is one
/// radical containment (no primary decomposition).
pub fn thick_membership_support<K: Coeff>(
    supp: &SupportIdeal<K>,
    s: &SpecializationClosedSet<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    if !PresentedRing::same_ring(&supp.ring, &s.ring) {
        return Err(Error::Incompatible(
            "thick membership needs the set over the object's ring".into(),
        ));
    }
    let union = SupportIdeal { ring: s.ring.clone(), ideal: s.union_ideal() };
    let inner = supp_contains(&union, supp, budget)?;
    Ok(Verdict {
        answer: inner.answer,
        theorem: THM_THICK.into(),
        certificate: inner.certificate,
        applicability: Applicability { amplitude: None, finite_rank: true },
    })
}

/// Thick-subcategory membership for a DG-module (amplitude-gated).
pub fn thick_membership<K: Coeff>(
    m: &DGModule<K>,
    s: &SpecializationClosedSet<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    let applicability = match amplitude_gate(m, budget)? {
        Ok(a) => a,
        Err(v) => return Ok(v),
    };
    let supp = support_of(m, budget)?;
    let mut v = thick_membership_support(&supp, s, budget)?;
    v.applicability = applicability;
    Ok(v)
}

/// Thick-subcategory membership for a plain complex over the set's ring.
pub fn thick_membership_complex<K: Coeff>(
    x: &FreeComplex<K>,
    s: &SpecializationClosedSet<K>,
    budget: &mut Budget,
) -> Result<Verdict> {
    let supp = support_of_complex(x, budget)?;
    thick_membership_support(&supp, s, budget)
}
