//! Executes a parsed session: builds the declared objects over the declared
//! field, runs each command sequentially, and produces a deterministic
//! report. The same session and seed always yield byte-identical JSON.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use strata_core::complex::FreeComplex;
use strata_core::dg::{DGAlgebra, DGGen, DGModule};
use strata_core::error::Error;
use strata_core::groebner::{Budget, DEFAULT_SPAIR_BUDGET};
use strata_core::oracle::{
    brute_radical_member, support_crosscheck, BruteAnswer, PointGrid, DEFAULT_SEED,
};
use strata_core::poly::Poly;
use strata_core::ring::{Ideal, PresentedRing};
use strata_core::scalar::{Coeff, FieldKind};
use strata_core::strata::{
    builds, finitely_builds, reduction_supp_check, reverify_containment, support_of,
    support_of_complex, tensor_support_check, thick_membership, thick_membership_complex, Answer,
    SpecializationClosedSet, SupportIdeal,
};
use strata_core::tate::{coreduction, coreduction_restricted, tate_resolve};

use crate::session::{print_command, Command, Decl, Expect, Session};

/// Default number of extra random grid points used by oracle cross-checks.
pub const DEFAULT_EXTRA_POINTS: usize = 10;
/// Default power bound for the brute-force radical-membership oracle.
pub const DEFAULT_MAX_POWER: u32 = 8;

/// Effective run settings. Command-line overrides win over session options,
/// which win over the defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub spair_budget: u64,
    pub window: Option<(i64, i64)>,
    pub depth: Option<i64>,
    pub extra_points: usize,
    pub max_power: u32,
}

/// Command-line overrides; `None` defers to the session file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub spair_budget: Option<u64>,
    pub window: Option<(i64, i64)>,
    pub depth: Option<i64>,
}

impl RunConfig {
    pub fn resolve(session: &Session, over: &Overrides) -> RunConfig {
        let o = &session.options;
        RunConfig {
            seed: over.seed.or(o.seed).unwrap_or(DEFAULT_SEED),
            spair_budget: over.spair_budget.or(o.spair_budget).unwrap_or(DEFAULT_SPAIR_BUDGET),
            window: over.window.or(o.window),
            depth: over.depth.or(o.depth),
            extra_points: o.extra_points.unwrap_or(DEFAULT_EXTRA_POINTS),
            max_power: o.max_power.unwrap_or(DEFAULT_MAX_POWER),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub session: String,
    pub field: String,
    pub seed: u64,
    pub spair_budget: u64,
    pub commands: Vec<CommandReport>,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub status: String,
}

/// A finished run plus the flag the exit code needs.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: Report,
    pub budget_exceeded: bool,
}

/// Run a session. `Err` means the declarations themselves could not be
/// built (a semantic error in the file); command failures are reported
/// inside the `Ok` outcome.
pub fn run_session(
    session: &Session,
    name: &str,
    cfg: &RunConfig,
) -> Result<RunOutcome, String> {
    match session.field {
        FieldKind::Rationals => run_typed::<num_rational::BigRational>(session, name, cfg),
        FieldKind::Prime(_) => run_typed::<strata_core::Fp>(session, name, cfg),
    }
}

struct Objects<K: Coeff> {
    algebras: BTreeMap<String, Arc<DGAlgebra<K>>>,
    modules: BTreeMap<String, DGModule<K>>,
    complexes: BTreeMap<String, FreeComplex<K>>,
}

enum Target<'a, K: Coeff> {
    Algebra(&'a Arc<DGAlgebra<K>>),
    Module(&'a DGModule<K>),
    Complex(&'a FreeComplex<K>),
}

impl<K: Coeff> Objects<K> {
    fn target(&self, name: &str) -> Target<'_, K> {
        if let Some(a) = self.algebras.get(name) {
            Target::Algebra(a)
        } else if let Some(m) = self.modules.get(name) {
            Target::Module(m)
        } else {
            Target::Complex(&self.complexes[name])
        }
    }

    fn module(&self, name: &str) -> &DGModule<K> {
        &self.modules[name]
    }

    fn algebra(&self, name: &str) -> &Arc<DGAlgebra<K>> {
        &self.algebras[name]
    }
}

fn parse_polys<K: Coeff>(
    ring: &Arc<PresentedRing<K>>,
    texts: &[String],
) -> Result<Vec<Poly<K>>, Error> {
    texts.iter().map(|t| ring.parse(t)).collect()
}

fn build_objects<K: Coeff>(session: &Session) -> Result<Objects<K>, String> {
    let mut rings: BTreeMap<String, Arc<PresentedRing<K>>> = BTreeMap::new();
    let mut obj = Objects {
        algebras: BTreeMap::new(),
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
    };
    for decl in &session.decls {
        let name = decl.name();
        let built: Result<(), Error> = (|| {
            match decl {
                Decl::Ring { vars, relations, .. } => {
                    let plain = PresentedRing::<K>::polynomial(
                        session.field,
                        vars.clone(),
                    )?;
                    let rels = parse_polys(&plain, relations)?;
                    let ring = if rels.is_empty() {
                        plain
                    } else {
                        PresentedRing::quotient(&plain, rels)?
                    };
                    rings.insert(name.to_string(), ring);
                }
                Decl::AlgebraKoszul { ring, elements, .. } => {
                    let ring = &rings[ring];
                    let elems = parse_polys(ring, elements)?;
                    let names = (1..=elems.len()).map(|i| format!("e{i}")).collect();
                    let a = DGAlgebra::koszul(ring.clone(), names, elems)?;
                    a.validate()?;
                    obj.algebras.insert(name.to_string(), a);
                }
                Decl::AlgebraDg { ring, gens, diffs, .. } => {
                    let ring = &rings[ring];
                    let dg_gens: Vec<DGGen> = gens
                        .iter()
                        .map(|(n, d)| DGGen { name: n.clone(), degree: *d })
                        .collect();
                    // parse the differentials through a zero-differential
                    // copy of the algebra, which knows the generator names
                    let shell = DGAlgebra::new(
                        ring.clone(),
                        dg_gens.clone(),
                        vec![strata_core::dg::AlgElt::zero(dg_gens.len(), ring.nvars()); dg_gens.len()],
                    )?;
                    let mut elts = vec![shell.zero_elt(); dg_gens.len()];
                    for (gen, rhs) in diffs {
                        let idx = gens.iter().position(|(n, _)| n == gen).unwrap();
                        elts[idx] = shell.parse_elt(rhs)?;
                    }
                    let a = DGAlgebra::new(ring.clone(), dg_gens, elts)?;
                    a.validate()?;
                    obj.algebras.insert(name.to_string(), a);
                }
                Decl::ModuleFree { algebra, degree, .. } => {
                    let a = obj.algebras[algebra].clone();
                    obj.modules.insert(name.to_string(), DGModule::free(a, *degree));
                }
                Decl::ModuleKoszul { algebra, elements, .. } => {
                    let a = obj.algebras[algebra].clone();
                    let elems = parse_polys(a.base(), elements)?;
                    let m = DGModule::koszul(a, &elems)?;
                    m.validate()?;
                    obj.modules.insert(name.to_string(), m);
                }
                Decl::ModuleCone { module, scalar, .. } => {
                    let m = &obj.modules[module];
                    let c = m.algebra().base().parse(scalar)?;
                    obj.modules.insert(name.to_string(), m.cone_scalar(&c));
                }
                Decl::ModuleTensor { left, right, .. } => {
                    let t = obj.modules[left].tensor(&obj.modules[right]);
                    obj.modules.insert(name.to_string(), t);
                }
                Decl::ModuleSum { left, right, .. } => {
                    let s = obj.modules[left].direct_sum(&obj.modules[right]);
                    obj.modules.insert(name.to_string(), s);
                }
                Decl::ModuleShift { module, by, .. } => {
                    obj.modules.insert(name.to_string(), obj.modules[module].shift(*by));
                }
                Decl::ModuleDg { algebra, basis, diffs, .. } => {
                    let a = obj.algebras[algebra].clone();
                    let r = basis.len();
                    let mut diff = vec![vec![a.zero_elt(); r]; r];
                    for (src, terms) in diffs {
                        let j = basis.iter().position(|(n, _)| n == src).unwrap();
                        for (coeff, tgt) in terms {
                            let i = basis.iter().position(|(n, _)| n == tgt).unwrap();
                            diff[i][j] = a.parse_elt(coeff)?;
                        }
                    }
                    let m = DGModule::new(a, basis.clone(), diff)?;
                    m.validate()?;
                    obj.modules.insert(name.to_string(), m);
                }
                Decl::ComplexKoszul { ring, elements, .. } => {
                    let ring = &rings[ring];
                    let elems = parse_polys(ring, elements)?;
                    let x = FreeComplex::koszul(ring.clone(), &elems)?;
                    x.validate()?;
                    obj.complexes.insert(name.to_string(), x);
                }
            }
            Ok(())
        })();
        built.map_err(|e| format!("building `{name}`: {e}"))?;
    }
    Ok(obj)
}

fn run_typed<K: Coeff>(
    session: &Session,
    name: &str,
    cfg: &RunConfig,
) -> Result<RunOutcome, String> {
    let obj = build_objects::<K>(session)?;
    let mut commands = Vec::new();
    let mut budget_exceeded = false;
    let (mut passed_total, mut failed_total) = (0usize, 0usize);
    let mut any_error = false;

    for cmd in &session.commands {
        let mut checks = Vec::new();
        let result = exec_command(&obj, cmd, cfg, &mut checks);
        let failed_here = checks.iter().filter(|c| !c.passed).count();
        passed_total += checks.len() - failed_here;
        failed_total += failed_here;
        let (status, detail, error) = match result {
            Ok(detail) => {
                let status = if failed_here > 0 { "check-failed" } else { "ok" };
                (status, Some(detail), None)
            }
            Err(e) => {
                if matches!(e, Error::ResourceLimit { .. } | Error::RankBudget { .. }) {
                    budget_exceeded = true;
                }
                any_error = true;
                ("error", None, Some(e.to_string()))
            }
        };
        commands.push(CommandReport {
            command: print_command(cmd),
            status: status.to_string(),
            checks,
            detail,
            error,
        });
    }

    let status = if budget_exceeded {
        "budget-exceeded"
    } else if any_error {
        "error"
    } else if failed_total > 0 {
        "check-failed"
    } else {
        "ok"
    };
    let field = match session.field {
        FieldKind::Rationals => "rationals".to_string(),
        FieldKind::Prime(p) => format!("prime {p}"),
    };
    Ok(RunOutcome {
        report: Report {
            session: name.to_string(),
            field,
            seed: cfg.seed,
            spair_budget: cfg.spair_budget,
            commands,
            checks_passed: passed_total,
            checks_failed: failed_total,
            status: status.to_string(),
        },
        budget_exceeded,
    })
}

fn check(checks: &mut Vec<CheckReport>, name: &str, passed: bool) {
    checks.push(CheckReport { name: name.to_string(), passed });
}

fn expect_to_answer(e: Expect) -> Answer {
    match e {
        Expect::Yes => Answer::Yes,
        Expect::No => Answer::No,
        Expect::Inapplicable => Answer::Inapplicable,
    }
}

fn ring_desc<K: Coeff>(ring: &PresentedRing<K>) -> Value {
    let rels: Vec<String> = ring.relations().iter().map(|r| ring.display(r)).collect();
    json!({ "variables": ring.vars(), "relations": rels })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

/// Cohomology rows for a table: degree, presentation size, dimension.
fn table_rows<K: Coeff>(
    table: &strata_core::complex::CohomologyTable<K>,
    budget: &mut Budget,
) -> Result<Vec<Value>, Error> {
    let mut rows = Vec::new();
    for (n, m) in &table.entries {
        let dim = m.k_dimension(budget)?;
        rows.push(json!({
            "degree": n,
            "generators": m.num_gens(),
            "dimension": dim,
            "zero": m.is_zero(budget)?,
        }));
    }
    Ok(rows)
}

/// Fitting-route support versus fibre sampling on a grid over the support ring.
fn grid_crosscheck<K: Coeff>(
    complex: &FreeComplex<K>,
    supp: &SupportIdeal<K>,
    cfg: &RunConfig,
    checks: &mut Vec<CheckReport>,
) -> Value {
    let grid = PointGrid::standard(supp.ring().clone(), cfg.seed, cfg.extra_points);
    let rep = support_crosscheck(complex, supp, &grid);
    check(checks, "sampled-points-agree", rep.agree);
    to_value(&rep)
}

fn exec_command<K: Coeff>(
    obj: &Objects<K>,
    cmd: &Command,
    cfg: &RunConfig,
    checks: &mut Vec<CheckReport>,
) -> Result<Value, Error> {
    let budget = &mut Budget::new(cfg.spair_budget);
    match cmd {
        Command::Validate { target } => {
            let kind = match obj.target(target) {
                Target::Algebra(a) => {
                    a.validate()?;
                    "algebra"
                }
                Target::Module(m) => {
                    m.validate()?;
                    "module"
                }
                Target::Complex(x) => {
                    x.validate()?;
                    "complex"
                }
            };
            check(checks, "differential-squares-to-zero", true);
            Ok(json!({ "target": target, "kind": kind }))
        }

        Command::Cohomology { target, window, expect_nonzero } => {
            let window = window.or(cfg.window);
            let table = match obj.target(target) {
                Target::Module(m) => m.dg_cohomology(window, budget)?,
                Target::Complex(x) => x.cohomology_table(budget)?,
                Target::Algebra(_) => unreachable!("parser restricts cohomology targets"),
            };
            let rows = table_rows(&table, budget)?;
            let nonzero = table.nonzero_degrees(budget)?;
            if let Some(expected) = expect_nonzero {
                let mut expected = expected.clone();
                expected.sort_unstable();
                expected.dedup();
                check(checks, "expected-nonzero-degrees", expected == nonzero);
            }
            Ok(json!({
                "target": target,
                "window": window.map(|(lo, hi)| vec![lo, hi]),
                "entries": rows,
                "nonzero_degrees": nonzero,
            }))
        }

        Command::Support { target } => {
            let (supp, reduced) = match obj.target(target) {
                Target::Module(m) => (support_of(m, budget)?, m.reduce_to_h0()?),
                Target::Complex(x) => (support_of_complex(x, budget)?, x.clone()),
                Target::Algebra(_) => unreachable!("parser restricts support targets"),
            };
            let oracle = grid_crosscheck(&reduced, &supp, cfg, checks);
            Ok(json!({
                "target": target,
                "spectrum_of": ring_desc(supp.ring()),
                "generators": supp.display_gens(),
                "oracle": oracle,
            }))
        }

        Command::Builds { m, n, expect } | Command::FinitelyBuilds { m, n, expect } => {
            let fin = matches!(cmd, Command::FinitelyBuilds { .. });
            let (m, n) = (obj.module(m), obj.module(n));
            let verdict =
                if fin { finitely_builds(m, n, budget)? } else { builds(m, n, budget)? };
            let mut detail = json!({ "verdict": to_value(&verdict) });
            if verdict.answer != Answer::Inapplicable {
                let supp_m = support_of(m, budget)?;
                let supp_n = support_of(n, budget)?;
                let rev = reverify_containment(&supp_m, &supp_n, &verdict, budget)?;
                check(checks, "certificate-reverifies", rev);
                // independent route: explicit powers plus sampled points,
                // which must not contradict any certificate entry
                let grid =
                    PointGrid::standard(supp_m.ring().clone(), cfg.seed, cfg.extra_points);
                let (mut agreed, mut unknown) = (0usize, 0usize);
                let mut contradictions: Vec<String> = Vec::new();
                for (g, entry) in
                    supp_m.ideal().gens().iter().zip(&verdict.certificate)
                {
                    let brute =
                        brute_radical_member(g, supp_n.ideal(), cfg.max_power, &grid, budget)?;
                    match brute {
                        BruteAnswer::Unknown => unknown += 1,
                        BruteAnswer::Member if entry.member_of_radical => agreed += 1,
                        BruteAnswer::NonMember if !entry.member_of_radical => agreed += 1,
                        _ => contradictions.push(entry.generator.clone()),
                    }
                }
                check(checks, "oracle-non-contradiction", contradictions.is_empty());
                detail["support_left"] = to_value(&supp_m.display_gens());
                detail["support_right"] = to_value(&supp_n.display_gens());
                detail["oracle"] = json!({
                    "route": "explicit-powers-and-sampled-points",
                    "agreed": agreed,
                    "unknown": unknown,
                    "contradictions": contradictions,
                });
            }
            if let Some(e) = expect {
                check(checks, "expected-answer", verdict.answer == expect_to_answer(*e));
            }
            Ok(detail)
        }

        Command::TensorCheck { m, n } => {
            let (m, n) = (obj.module(m), obj.module(n));
            let cmp = tensor_support_check(m, n, budget)?;
            check(checks, "routes-agree", cmp.equal);
            let t = m.tensor(n);
            let supp_t = support_of(&t, budget)?;
            let oracle = grid_crosscheck(&t.reduce_to_h0()?, &supp_t, cfg, checks);
            Ok(json!({ "comparison": to_value(&cmp), "oracle": oracle }))
        }

        Command::Reduce { target } => {
            let m = obj.module(target);
            let reduced = m.reduce_to_h0()?;
            let ring = reduced.ring();
            let ranks: BTreeMap<String, usize> =
                reduced.ranks().iter().map(|(n, r)| (n.to_string(), *r)).collect();
            let mut diffs = serde_json::Map::new();
            if let Some((lo, hi)) = reduced.degree_range() {
                for d in lo..hi {
                    if reduced.rank(d) > 0 && reduced.rank(d + 1) > 0 {
                        diffs.insert(d.to_string(), json!(reduced.diff(d).display(ring.vars())));
                    }
                }
            }
            let mut detail = json!({
                "target": target,
                "over": ring_desc(ring),
                "ranks": ranks,
                "differentials": diffs,
            });
            if !m.algebra().infinite_rank() {
                let module_acyclic = m.is_acyclic(budget)?;
                let reduction_acyclic =
                    reduced.cohomology_table(budget)?.nonzero_degrees(budget)?.is_empty();
                check(checks, "conservativity-agreement", module_acyclic == reduction_acyclic);
                detail["module_acyclic"] = json!(module_acyclic);
                detail["reduction_acyclic"] = json!(reduction_acyclic);
            }
            Ok(detail)
        }

        Command::Coreduce { target, restricted, window, depth, expect_dims } => {
            let depth = depth.or(cfg.depth);
            let cor = if *restricted {
                coreduction_restricted(obj.algebra(target), *window, depth, budget)?
            } else {
                coreduction(obj.module(target), *window, depth, budget)?
            };
            let rows = table_rows(&cor.table, budget)?;
            if let Some(expected) = expect_dims {
                let mut actual = Vec::new();
                let mut all_finite = true;
                for d in window.0..=window.1 {
                    match cor.table.get(d) {
                        None => actual.push(0),
                        Some(m) => match m.k_dimension(budget)? {
                            Some(dim) => actual.push(dim),
                            None => all_finite = false,
                        },
                    }
                }
                check(
                    checks,
                    "expected-dimensions",
                    all_finite && &actual == expected,
                );
            }
            let adjoined: Vec<Value> = cor
                .resolution
                .adjoined_summary()
                .into_iter()
                .map(|(name, degree, kind, diff)| {
                    json!({ "name": name, "degree": degree, "kind": kind, "d": diff })
                })
                .collect();
            Ok(json!({
                "target": target,
                "restricted": restricted,
                "window": [cor.window.0, cor.window.1],
                "depth": cor.depth,
                "adjoined": adjoined,
                "entries": rows,
            }))
        }

        Command::Truncate { algebra, depth } => {
            let res = tate_resolve(obj.algebra(algebra), *depth, budget)?;
            res.certify(budget)?;
            check(checks, "resolution-certified", true);
            let adjoined: Vec<Value> = res
                .adjoined_summary()
                .into_iter()
                .map(|(name, degree, kind, diff)| {
                    json!({ "name": name, "degree": degree, "kind": kind, "d": diff })
                })
                .collect();
            Ok(json!({
                "target": algebra,
                "depth": res.depth(),
                "adjoined": adjoined,
            }))
        }

        Command::ThickMember { target, components, expect } => {
            let (ring, verdict) = match obj.target(target) {
                Target::Module(m) => {
                    let ring = m.algebra().h0()?;
                    let set = closed_set(&ring, components)?;
                    (ring.clone(), thick_membership(m, &set, budget)?)
                }
                Target::Complex(x) => {
                    let ring = x.ring().clone();
                    let set = closed_set(&ring, components)?;
                    (ring, thick_membership_complex(x, &set, budget)?)
                }
                Target::Algebra(_) => unreachable!("parser restricts thick-member targets"),
            };
            if let Some(e) = expect {
                check(checks, "expected-answer", verdict.answer == expect_to_answer(*e));
            }
            let union = closed_set(&ring, components)?.union_ideal();
            let union_gens: Vec<String> =
                union.gens().iter().map(|g| ring.display(g)).collect();
            Ok(json!({
                "target": target,
                "union_ideal": union_gens,
                "verdict": to_value(&verdict),
            }))
        }

        Command::Crosscheck { target } => match obj.target(target) {
            Target::Module(m) => {
                let cmp = reduction_supp_check(m, budget)?;
                check(checks, "reduction-preserves-support", cmp.equal);
                let supp = support_of(m, budget)?;
                let oracle = grid_crosscheck(&m.reduce_to_h0()?, &supp, cfg, checks);
                Ok(json!({
                    "target": target,
                    "comparison": to_value(&cmp),
                    "oracle": oracle,
                }))
            }
            Target::Complex(x) => {
                let supp = support_of_complex(x, budget)?;
                let oracle = grid_crosscheck(x, &supp, cfg, checks);
                Ok(json!({
                    "target": target,
                    "generators": supp.display_gens(),
                    "oracle": oracle,
                }))
            }
            Target::Algebra(_) => unreachable!("parser restricts crosscheck targets"),
        },
    }
}

fn closed_set<K: Coeff>(
    ring: &Arc<PresentedRing<K>>,
    components: &[Vec<String>],
) -> Result<SpecializationClosedSet<K>, Error> {
    let mut ideals = Vec::new();
    for comp in components {
        ideals.push(Ideal::new(ring.clone(), parse_polys(ring, comp)?));
    }
    SpecializationClosedSet::new(ring.clone(), ideals)
}
