//! Session files: a line-oriented format declaring rings, DG-algebras,
//! modules, and complexes, followed by commands. Parsing reports
//! line-numbered diagnostics; printing emits a canonical form such that
//! parse ∘ print ∘ parse = parse.
//!
//! Grammar (one declaration or command per line, `#` starts a comment):
//!
//! ```text
//! field rationals | field prime <p>
//! option seed <n> | option spair-budget <n> | option window <lo> <hi>
//!   | option depth <d> | option extra-points <n> | option max-power <k>
//! ring <N> : <vars> [/ <poly>, ...]
//! algebra <N> = koszul <Ring> on <poly>, ...
//! algebra <N> = dg <Ring> with <gen>:<deg>, ... [where d <gen> = <elt>; ...]
//! module <N> = free <Alg> at <deg>
//! module <N> = koszul <Alg> on <poly>, ...
//! module <N> = cone <Mod> by <poly>
//! module <N> = tensor <Mod> <Mod>
//! module <N> = sum <Mod> <Mod>
//! module <N> = shift <Mod> by <s>
//! module <N> = dg <Alg> with <b>:<deg>, ... [where d <b> = [<elt>]*<b> + ...; ...]
//! complex <N> = koszul <Ring> on <poly>, ...
//! validate <name>
//! cohomology <name> [window <lo> <hi>] [expect nonzero <d>, ...]
//! support <name>
//! builds <M> <N> [expect yes|no|inapplicable]
//! finitely-builds <M> <N> [expect yes|no|inapplicable]
//! tensor-check <M> <N>
//! reduce <M>
//! coreduce <M> window <lo> <hi> [depth <d>] [expect <n>, ...]
//! coreduce restricted <Alg> window <lo> <hi> [depth <d>] [expect <n>, ...]
//! truncate <Alg> depth <d>
//! thick-member <name> in (<poly>, ...) [; (<poly>, ...)] [expect yes|no|inapplicable]
//! crosscheck <name>
//! ```

use std::collections::HashMap;
use std::fmt;
use strata_core::FieldKind;

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub field: FieldKind,
    pub options: SessionOptions,
    pub decls: Vec<Decl>,
    pub commands: Vec<Command>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SessionOptions {
    pub seed: Option<u64>,
    pub spair_budget: Option<u64>,
    pub window: Option<(i64, i64)>,
    pub depth: Option<i64>,
    pub extra_points: Option<usize>,
    pub max_power: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Algebra,
    Module,
    Complex,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Ring => write!(f, "ring"),
            Kind::Algebra => write!(f, "algebra"),
            Kind::Module => write!(f, "module"),
            Kind::Complex => write!(f, "complex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Ring { name: String, vars: Vec<String>, relations: Vec<String> },
    AlgebraKoszul { name: String, ring: String, elements: Vec<String> },
    AlgebraDg { name: String, ring: String, gens: Vec<(String, i64)>, diffs: Vec<(String, String)> },
    ModuleFree { name: String, algebra: String, degree: i64 },
    ModuleKoszul { name: String, algebra: String, elements: Vec<String> },
    ModuleCone { name: String, module: String, scalar: String },
    ModuleTensor { name: String, left: String, right: String },
    ModuleSum { name: String, left: String, right: String },
    ModuleShift { name: String, module: String, by: i64 },
    ModuleDg {
        name: String,
        algebra: String,
        basis: Vec<(String, i64)>,
        diffs: Vec<(String, Vec<(String, String)>)>,
    },
    ComplexKoszul { name: String, ring: String, elements: Vec<String> },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring { name, .. }
            | Decl::AlgebraKoszul { name, .. }
            | Decl::AlgebraDg { name, .. }
            | Decl::ModuleFree { name, .. }
            | Decl::ModuleKoszul { name, .. }
            | Decl::ModuleCone { name, .. }
            | Decl::ModuleTensor { name, .. }
            | Decl::ModuleSum { name, .. }
            | Decl::ModuleShift { name, .. }
            | Decl::ModuleDg { name, .. }
            | Decl::ComplexKoszul { name, .. } => name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Decl::Ring { .. } => Kind::Ring,
            Decl::AlgebraKoszul { .. } | Decl::AlgebraDg { .. } => Kind::Algebra,
            Decl::ComplexKoszul { .. } => Kind::Complex,
            _ => Kind::Module,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Yes,
    No,
    Inapplicable,
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Yes => write!(f, "yes"),
            Expect::No => write!(f, "no"),
            Expect::Inapplicable => write!(f, "inapplicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Validate { target: String },
    Cohomology { target: String, window: Option<(i64, i64)>, expect_nonzero: Option<Vec<i64>> },
    Support { target: String },
    Builds { m: String, n: String, expect: Option<Expect> },
    FinitelyBuilds { m: String, n: String, expect: Option<Expect> },
    TensorCheck { m: String, n: String },
    Reduce { target: String },
    Coreduce {
        target: String,
        restricted: bool,
        window: (i64, i64),
        depth: Option<i64>,
        expect_dims: Option<Vec<usize>>,
    },
    Truncate { algebra: String, depth: i64 },
    ThickMember { target: String, components: Vec<Vec<String>>, expect: Option<Expect> },
    Crosscheck { target: String },
}

/// A line-numbered diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_commas(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in comma-separated list".into());
        }
        out.push(part.to_string());
    }
    Ok(out)
}

fn parse_int<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T, String> {
    tok.parse().map_err(|_| format!("expected {what}, found `{tok}`"))
}

/// `<name>:<degree>` pairs.
fn parse_graded_names(s: &str) -> Result<Vec<(String, i64)>, String> {
    let mut out = Vec::new();
    for part in split_commas(s)? {
        let (name, deg) = part
            .split_once(':')
            .ok_or_else(|| format!("expected `name:degree`, found `{part}`"))?;
        let name = name.trim();
        if !is_ident(name) {
            return Err(format!("bad name `{name}`"));
        }
        out.push((name.to_string(), parse_int(deg.trim(), "an integer degree")?));
    }
    Ok(out)
}

/// `d <name> = <rhs>` clauses separated by `;`.
fn parse_d_clauses(s: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for clause in s.split(';') {
        let clause = clause.trim();
        let rest = clause
            .strip_prefix("d ")
            .ok_or_else(|| format!("expected `d <name> = ...`, found `{clause}`"))?;
        let (name, rhs) = rest
            .split_once('=')
            .ok_or_else(|| format!("missing `=` in differential clause `{clause}`"))?;
        let name = name.trim();
        if !is_ident(name) {
            return Err(format!("bad name `{name}` in differential clause"));
        }
        out.push((name.to_string(), rhs.trim().to_string()));
    }
    Ok(out)
}

/// Module differential right-hand side: `[<elt>]*<basis> + ...` (or `0`).
fn parse_module_terms(rhs: &str) -> Result<Vec<(String, String)>, String> {
    let rhs = rhs.trim();
    if rhs == "0" {
        return Ok(Vec::new());
    }
    // split on '+' outside brackets
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in rhs.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth = depth.checked_sub(1).ok_or("unbalanced `]`")?;
            }
            '+' if depth == 0 => {
                terms.push(&rhs[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced `[` in differential term".into());
    }
    terms.push(&rhs[start..]);
    let mut out = Vec::new();
    for term in terms {
        let term = term.trim();
        let inner = term
            .strip_prefix('[')
            .ok_or_else(|| format!("expected `[coefficient]*basis`, found `{term}`"))?;
        let (coeff, rest) = inner
            .split_once(']')
            .ok_or_else(|| format!("missing `]` in term `{term}`"))?;
        let basis = rest
            .trim()
            .strip_prefix('*')
            .ok_or_else(|| format!("expected `*<basis>` after `]` in `{term}`"))?
            .trim();
        if !is_ident(basis) {
            return Err(format!("bad basis name `{basis}` in differential term"));
        }
        out.push((coeff.trim().to_string(), basis.to_string()));
    }
    Ok(out)
}

/// Take a trailing ` expect <answer>` clause off a command tail.
fn take_expect_answer(s: &str) -> Result<(&str, Option<Expect>), String> {
    if let Some(pos) = s.rfind(" expect ") {
        let answer = s[pos + 8..].trim();
        let expect = match answer {
            "yes" => Expect::Yes,
            "no" => Expect::No,
            "inapplicable" => Expect::Inapplicable,
            other => return Err(format!("expected yes/no/inapplicable, found `{other}`")),
        };
        Ok((s[..pos].trim_end(), Some(expect)))
    } else {
        Ok((s, None))
    }
}

struct Parser {
    names: HashMap<String, Kind>,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn lookup(&self, name: &str, allowed: &[Kind]) -> Result<Kind, String> {
        match self.names.get(name) {
            None => Err(format!("unknown name `{name}` (not declared above)")),
            Some(k) if allowed.contains(k) => Ok(*k),
            Some(k) => Err(format!(
                "`{name}` is a {k}; expected one of: {}",
                allowed.iter().map(Kind::to_string).collect::<Vec<_>>().join(", ")
            )),
        }
    }

    fn declare(&mut self, name: &str, kind: Kind) -> Result<(), String> {
        if !is_ident(name) {
            return Err(format!("bad declaration name `{name}`"));
        }
        if self.names.insert(name.to_string(), kind).is_some() {
            return Err(format!("`{name}` is declared twice"));
        }
        Ok(())
    }

    fn parse_decl(&mut self, line: &str) -> Result<Decl, String> {
        let (head, _) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "ring" => {
                let rest = line["ring".len()..].trim();
                let (name, body) = rest
                    .split_once(':')
                    .ok_or("expected `ring <name> : <vars> [/ <relations>]`")?;
                let name = name.trim();
                let (vars_part, rels_part) = match body.split_once('/') {
                    Some((v, r)) => (v.trim(), Some(r.trim())),
                    None => (body.trim(), None),
                };
                let vars = if vars_part.is_empty() {
                    Vec::new()
                } else {
                    let vars = split_commas(vars_part)?;
                    for v in &vars {
                        if !is_ident(v) {
                            return Err(format!("bad variable name `{v}`"));
                        }
                    }
                    vars
                };
                let relations = match rels_part {
                    Some(r) => split_commas(r)?,
                    None => Vec::new(),
                };
                Ok(Decl::Ring { name: name.to_string(), vars, relations })
            }
            "algebra" => {
                let rest = line["algebra".len()..].trim();
                let (name, body) =
                    rest.split_once('=').ok_or("expected `algebra <name> = ...`")?;
                let name = name.trim().to_string();
                let body = body.trim();
                if let Some(tail) = body.strip_prefix("koszul ") {
                    let (ring, elts) = tail
                        .split_once(" on ")
                        .ok_or("expected `koszul <ring> on <elements>`")?;
                    let ring = ring.trim();
                    self.lookup(ring, &[Kind::Ring])?;
                    let elements = split_commas(elts)?;
                    Ok(Decl::AlgebraKoszul { name, ring: ring.to_string(), elements })
                } else if let Some(tail) = body.strip_prefix("dg ") {
                    let (ring, gens_part) = tail
                        .split_once(" with ")
                        .ok_or("expected `dg <ring> with <gen>:<deg>, ...`")?;
                    let ring = ring.trim();
                    self.lookup(ring, &[Kind::Ring])?;
                    let (gens_text, where_text) = match gens_part.split_once(" where ") {
                        Some((g, w)) => (g, Some(w)),
                        None => (gens_part, None),
                    };
                    let gens = parse_graded_names(gens_text)?;
                    let diffs = match where_text {
                        Some(w) => parse_d_clauses(w)?,
                        None => Vec::new(),
                    };
                    for (g, _) in &diffs {
                        if !gens.iter().any(|(n, _)| n == g) {
                            return Err(format!("differential for undeclared generator `{g}`"));
                        }
                    }
                    Ok(Decl::AlgebraDg { name, ring: ring.to_string(), gens, diffs })
                } else {
                    Err("expected `koszul ...` or `dg ...` after `=`".into())
                }
            }
            "module" => {
                let rest = line["module".len()..].trim();
                let (name, body) =
                    rest.split_once('=').ok_or("expected `module <name> = ...`")?;
                let name = name.trim().to_string();
                let body = body.trim();
                let decl = if let Some(tail) = body.strip_prefix("free ") {
                    let (alg, deg) = tail
                        .split_once(" at ")
                        .ok_or("expected `free <algebra> at <degree>`")?;
                    let alg = alg.trim();
                    self.lookup(alg, &[Kind::Algebra])?;
                    Decl::ModuleFree {
                        name: name.clone(),
                        algebra: alg.to_string(),
                        degree: parse_int(deg.trim(), "an integer degree")?,
                    }
                } else if let Some(tail) = body.strip_prefix("koszul ") {
                    let (alg, elts) = tail
                        .split_once(" on ")
                        .ok_or("expected `koszul <algebra> on <elements>`")?;
                    let alg = alg.trim();
                    self.lookup(alg, &[Kind::Algebra])?;
                    Decl::ModuleKoszul {
                        name: name.clone(),
                        algebra: alg.to_string(),
                        elements: split_commas(elts)?,
                    }
                } else if let Some(tail) = body.strip_prefix("cone ") {
                    let (module, scalar) =
                        tail.split_once(" by ").ok_or("expected `cone <module> by <scalar>`")?;
                    let module = module.trim();
                    self.lookup(module, &[Kind::Module])?;
                    Decl::ModuleCone {
                        name: name.clone(),
                        module: module.to_string(),
                        scalar: scalar.trim().to_string(),
                    }
                } else if let Some(tail) = body.strip_prefix("tensor ") {
                    let mut it = tail.split_whitespace();
                    let (l, r) = (
                        it.next().ok_or("expected `tensor <m> <n>`")?,
                        it.next().ok_or("expected `tensor <m> <n>`")?,
                    );
                    if it.next().is_some() {
                        return Err("expected exactly two operands for `tensor`".into());
                    }
                    self.lookup(l, &[Kind::Module])?;
                    self.lookup(r, &[Kind::Module])?;
                    Decl::ModuleTensor { name: name.clone(), left: l.into(), right: r.into() }
                } else if let Some(tail) = body.strip_prefix("sum ") {
                    let mut it = tail.split_whitespace();
                    let (l, r) = (
                        it.next().ok_or("expected `sum <m> <n>`")?,
                        it.next().ok_or("expected `sum <m> <n>`")?,
                    );
                    if it.next().is_some() {
                        return Err("expected exactly two operands for `sum`".into());
                    }
                    self.lookup(l, &[Kind::Module])?;
                    self.lookup(r, &[Kind::Module])?;
                    Decl::ModuleSum { name: name.clone(), left: l.into(), right: r.into() }
                } else if let Some(tail) = body.strip_prefix("shift ") {
                    let (module, by) =
                        tail.split_once(" by ").ok_or("expected `shift <module> by <s>`")?;
                    let module = module.trim();
                    self.lookup(module, &[Kind::Module])?;
                    Decl::ModuleShift {
                        name: name.clone(),
                        module: module.to_string(),
                        by: parse_int(by.trim(), "an integer shift")?,
                    }
                } else if let Some(tail) = body.strip_prefix("dg ") {
                    let (alg, basis_part) = tail
                        .split_once(" with ")
                        .ok_or("expected `dg <algebra> with <basis>:<deg>, ...`")?;
                    let alg = alg.trim();
                    self.lookup(alg, &[Kind::Algebra])?;
                    let (basis_text, where_text) = match basis_part.split_once(" where ") {
                        Some((b, w)) => (b, Some(w)),
                        None => (basis_part, None),
                    };
                    let basis = parse_graded_names(basis_text)?;
                    let mut diffs = Vec::new();
                    if let Some(w) = where_text {
                        for (b, rhs) in parse_d_clauses(w)? {
                            if !basis.iter().any(|(n, _)| n == &b) {
                                return Err(format!(
                                    "differential for undeclared basis element `{b}`"
                                ));
                            }
                            let terms = parse_module_terms(&rhs)?;
                            for (_, target) in &terms {
                                if !basis.iter().any(|(n, _)| n == target) {
                                    return Err(format!(
                                        "differential hits undeclared basis element `{target}`"
                                    ));
                                }
                            }
                            diffs.push((b, terms));
                        }
                    }
                    Decl::ModuleDg { name: name.clone(), algebra: alg.to_string(), basis, diffs }
                } else {
                    return Err(
                        "expected one of free/koszul/cone/tensor/sum/shift/dg after `=`".into()
                    );
                };
                Ok(decl)
            }
            "complex" => {
                let rest = line["complex".len()..].trim();
                let (name, body) =
                    rest.split_once('=').ok_or("expected `complex <name> = ...`")?;
                let name = name.trim().to_string();
                let body = body.trim();
                if let Some(tail) = body.strip_prefix("koszul ") {
                    let (ring, elts) = tail
                        .split_once(" on ")
                        .ok_or("expected `koszul <ring> on <elements>`")?;
                    let ring = ring.trim();
                    self.lookup(ring, &[Kind::Ring])?;
                    let elements = split_commas(elts)?;
                    Ok(Decl::ComplexKoszul { name, ring: ring.to_string(), elements })
                } else {
                    Err("expected `koszul ...` after `=`".into())
                }
            }
            _ => unreachable!("parse_decl called on a non-declaration"),
        }
    }

    fn parse_command(&mut self, line: &str) -> Result<Command, String> {
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "validate" => {
                self.lookup(rest, &[Kind::Algebra, Kind::Module, Kind::Complex])?;
                Ok(Command::Validate { target: rest.to_string() })
            }
            "cohomology" => {
                let mut target = rest;
                let mut window = None;
                let mut expect_nonzero = None;
                if let Some(pos) = target.find(" expect nonzero ") {
                    let list = &target[pos + " expect nonzero ".len()..];
                    expect_nonzero = Some(
                        split_commas(list)?
                            .iter()
                            .map(|t| parse_int(t, "an integer degree"))
                            .collect::<Result<Vec<i64>, _>>()?,
                    );
                    target = target[..pos].trim_end();
                }
                if let Some(pos) = target.find(" window ") {
                    let toks: Vec<&str> =
                        target[pos + " window ".len()..].split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err("expected `window <lo> <hi>`".into());
                    }
                    window = Some((
                        parse_int(toks[0], "an integer")?,
                        parse_int(toks[1], "an integer")?,
                    ));
                    target = target[..pos].trim_end();
                }
                self.lookup(target, &[Kind::Module, Kind::Complex])?;
                Ok(Command::Cohomology { target: target.to_string(), window, expect_nonzero })
            }
            "support" => {
                self.lookup(rest, &[Kind::Module, Kind::Complex])?;
                Ok(Command::Support { target: rest.to_string() })
            }
            "builds" | "finitely-builds" => {
                let (names, expect) = take_expect_answer(rest)?;
                let toks: Vec<&str> = names.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(format!("expected `{head} <m> <n>`"));
                }
                self.lookup(toks[0], &[Kind::Module])?;
                self.lookup(toks[1], &[Kind::Module])?;
                let (m, n) = (toks[0].to_string(), toks[1].to_string());
                Ok(if head == "builds" {
                    Command::Builds { m, n, expect }
                } else {
                    Command::FinitelyBuilds { m, n, expect }
                })
            }
            "tensor-check" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err("expected `tensor-check <m> <n>`".into());
                }
                self.lookup(toks[0], &[Kind::Module])?;
                self.lookup(toks[1], &[Kind::Module])?;
                Ok(Command::TensorCheck { m: toks[0].to_string(), n: toks[1].to_string() })
            }
            "reduce" => {
                self.lookup(rest, &[Kind::Module])?;
                Ok(Command::Reduce { target: rest.to_string() })
            }
            "coreduce" => {
                let (restricted, mut tail) = match rest.strip_prefix("restricted ") {
                    Some(t) => (true, t.trim()),
                    None => (false, rest),
                };
                let mut expect_dims = None;
                if let Some(pos) = tail.rfind(" expect ") {
                    let list = &tail[pos + 8..];
                    expect_dims = Some(
                        split_commas(list)?
                            .iter()
                            .map(|t| parse_int(t, "a dimension"))
                            .collect::<Result<Vec<usize>, _>>()?,
                    );
                    tail = tail[..pos].trim_end();
                }
                let mut depth = None;
                if let Some(pos) = tail.rfind(" depth ") {
                    depth = Some(parse_int(tail[pos + 7..].trim(), "an integer depth")?);
                    tail = tail[..pos].trim_end();
                }
                let (target, win) = tail
                    .split_once(" window ")
                    .ok_or("expected `coreduce ... window <lo> <hi>`")?;
                let target = target.trim();
                let toks: Vec<&str> = win.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err("expected `window <lo> <hi>`".into());
                }
                let window =
                    (parse_int(toks[0], "an integer")?, parse_int(toks[1], "an integer")?);
                self.lookup(target, &[if restricted { Kind::Algebra } else { Kind::Module }])?;
                Ok(Command::Coreduce {
                    target: target.to_string(),
                    restricted,
                    window,
                    depth,
                    expect_dims,
                })
            }
            "truncate" => {
                let (alg, depth) = rest
                    .split_once(" depth ")
                    .ok_or("expected `truncate <algebra> depth <d>`")?;
                let alg = alg.trim();
                self.lookup(alg, &[Kind::Algebra])?;
                Ok(Command::Truncate {
                    algebra: alg.to_string(),
                    depth: parse_int(depth.trim(), "an integer depth")?,
                })
            }
            "thick-member" => {
                let (body, expect) = take_expect_answer(rest)?;
                let (target, comps) = body
                    .split_once(" in ")
                    .ok_or("expected `thick-member <name> in (<polys>); ...`")?;
                let target = target.trim();
                self.lookup(target, &[Kind::Module, Kind::Complex])?;
                let mut components = Vec::new();
                for comp in comps.split(';') {
                    let comp = comp.trim();
                    let inner = comp
                        .strip_prefix('(')
                        .and_then(|c| c.strip_suffix(')'))
                        .ok_or_else(|| format!("expected `(<polys>)`, found `{comp}`"))?;
                    components.push(split_commas(inner)?);
                }
                Ok(Command::ThickMember { target: target.to_string(), components, expect })
            }
            "crosscheck" => {
                self.lookup(rest, &[Kind::Module, Kind::Complex])?;
                Ok(Command::Crosscheck { target: rest.to_string() })
            }
            other => Err(format!("unknown command `{other}`")),
        }
    }
}

/// Parse a session file; on failure return every line diagnostic found.
pub fn parse_session(text: &str) -> Result<Session, Vec<Diagnostic>> {
    let mut field: Option<FieldKind> = None;
    let mut options = SessionOptions::default();
    let mut decls = Vec::new();
    let mut commands = Vec::new();
    let mut parser = Parser { names: HashMap::new(), diagnostics: Vec::new() };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let head = line.split_whitespace().next().unwrap_or("");
        let result: Result<(), String> = (|| {
            match head {
                "field" => {
                    let spec = line["field".len()..].trim();
                    let kind = if spec == "rationals" {
                        FieldKind::Rationals
                    } else if let Some(p) = spec.strip_prefix("prime ") {
                        let p: u64 = parse_int(p.trim(), "a prime modulus")?;
                        FieldKind::prime(p).map_err(|e| e.to_string())?
                    } else {
                        return Err("expected `field rationals` or `field prime <p>`".into());
                    };
                    if field.replace(kind).is_some() {
                        return Err("field is declared twice".into());
                    }
                }
                "option" => {
                    let rest = line["option".len()..].trim();
                    let (key, val) = rest
                        .split_once(' ')
                        .ok_or("expected `option <key> <value>`")?;
                    let val = val.trim();
                    match key {
                        "seed" => options.seed = Some(parse_int(val, "an unsigned integer")?),
                        "spair-budget" => {
                            options.spair_budget = Some(parse_int(val, "an unsigned integer")?)
                        }
                        "window" => {
                            let toks: Vec<&str> = val.split_whitespace().collect();
                            if toks.len() != 2 {
                                return Err("expected `option window <lo> <hi>`".into());
                            }
                            options.window = Some((
                                parse_int(toks[0], "an integer")?,
                                parse_int(toks[1], "an integer")?,
                            ));
                        }
                        "depth" => options.depth = Some(parse_int(val, "an integer")?),
                        "extra-points" => {
                            options.extra_points = Some(parse_int(val, "an unsigned integer")?)
                        }
                        "max-power" => {
                            options.max_power = Some(parse_int(val, "an unsigned integer")?)
                        }
                        other => return Err(format!("unknown option `{other}`")),
                    }
                }
                "ring" | "algebra" | "module" | "complex" => {
                    let decl = parser.parse_decl(line)?;
                    parser.declare(decl.name(), decl.kind())?;
                    decls.push(decl);
                }
                _ => {
                    commands.push(parser.parse_command(line)?);
                }
            }
            Ok(())
        })();
        if let Err(message) = result {
            parser.diagnostics.push(Diagnostic { line: lineno, message });
        }
    }

    if field.is_none() {
        parser
            .diagnostics
            .push(Diagnostic { line: 0, message: "missing `field` declaration".into() });
    }
    if !parser.diagnostics.is_empty() {
        return Err(parser.diagnostics);
    }
    Ok(Session { field: field.unwrap(), options, decls, commands })
}

fn print_graded(pairs: &[(String, i64)]) -> String {
    pairs.iter().map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>().join(", ")
}

/// Canonical session text; `parse_session(print_session(s))` equals `s`.
pub fn print_session(s: &Session) -> String {
    let mut out = String::new();
    match s.field {
        FieldKind::Rationals => out.push_str("field rationals\n"),
        FieldKind::Prime(p) => out.push_str(&format!("field prime {p}\n")),
    }
    let o = &s.options;
    if let Some(v) = o.seed {
        out.push_str(&format!("option seed {v}\n"));
    }
    if let Some(v) = o.spair_budget {
        out.push_str(&format!("option spair-budget {v}\n"));
    }
    if let Some((lo, hi)) = o.window {
        out.push_str(&format!("option window {lo} {hi}\n"));
    }
    if let Some(v) = o.depth {
        out.push_str(&format!("option depth {v}\n"));
    }
    if let Some(v) = o.extra_points {
        out.push_str(&format!("option extra-points {v}\n"));
    }
    if let Some(v) = o.max_power {
        out.push_str(&format!("option max-power {v}\n"));
    }
    for d in &s.decls {
        match d {
            Decl::Ring { name, vars, relations } => {
                out.push_str(&format!("ring {name} : {}", vars.join(", ")));
                if !relations.is_empty() {
                    out.push_str(&format!(" / {}", relations.join(", ")));
                }
                out.push('\n');
            }
            Decl::AlgebraKoszul { name, ring, elements } => {
                out.push_str(&format!(
                    "algebra {name} = koszul {ring} on {}\n",
                    elements.join(", ")
                ));
            }
            Decl::AlgebraDg { name, ring, gens, diffs } => {
                out.push_str(&format!("algebra {name} = dg {ring} with {}", print_graded(gens)));
                if !diffs.is_empty() {
                    let clauses: Vec<String> =
                        diffs.iter().map(|(g, e)| format!("d {g} = {e}")).collect();
                    out.push_str(&format!(" where {}", clauses.join("; ")));
                }
                out.push('\n');
            }
            Decl::ModuleFree { name, algebra, degree } => {
                out.push_str(&format!("module {name} = free {algebra} at {degree}\n"));
            }
            Decl::ModuleKoszul { name, algebra, elements } => {
                out.push_str(&format!(
                    "module {name} = koszul {algebra} on {}\n",
                    elements.join(", ")
                ));
            }
            Decl::ModuleCone { name, module, scalar } => {
                out.push_str(&format!("module {name} = cone {module} by {scalar}\n"));
            }
            Decl::ModuleTensor { name, left, right } => {
                out.push_str(&format!("module {name} = tensor {left} {right}\n"));
            }
            Decl::ModuleSum { name, left, right } => {
                out.push_str(&format!("module {name} = sum {left} {right}\n"));
            }
            Decl::ModuleShift { name, module, by } => {
                out.push_str(&format!("module {name} = shift {module} by {by}\n"));
            }
            Decl::ModuleDg { name, algebra, basis, diffs } => {
                out.push_str(&format!("module {name} = dg {algebra} with {}", print_graded(basis)));
                if !diffs.is_empty() {
                    let clauses: Vec<String> = diffs
                        .iter()
                        .map(|(b, terms)| {
                            let rhs = if terms.is_empty() {
                                "0".to_string()
                            } else {
                                terms
                                    .iter()
                                    .map(|(c, t)| format!("[{c}]*{t}"))
                                    .collect::<Vec<_>>()
                                    .join(" + ")
                            };
                            format!("d {b} = {rhs}")
                        })
                        .collect();
                    out.push_str(&format!(" where {}", clauses.join("; ")));
                }
                out.push('\n');
            }
            Decl::ComplexKoszul { name, ring, elements } => {
                out.push_str(&format!(
                    "complex {name} = koszul {ring} on {}\n",
                    elements.join(", ")
                ));
            }
        }
    }
    for c in &s.commands {
        out.push_str(&print_command(c));
        out.push('\n');
    }
    out
}

/// The canonical one-line form of a command.
pub fn print_command(c: &Command) -> String {
    match c {
        Command::Validate { target } => format!("validate {target}"),
        Command::Cohomology { target, window, expect_nonzero } => {
            let mut out = format!("cohomology {target}");
            if let Some((lo, hi)) = window {
                out.push_str(&format!(" window {lo} {hi}"));
            }
            if let Some(degs) = expect_nonzero {
                let list: Vec<String> = degs.iter().map(i64::to_string).collect();
                out.push_str(&format!(" expect nonzero {}", list.join(", ")));
            }
            out
        }
        Command::Support { target } => format!("support {target}"),
        Command::Builds { m, n, expect } => {
            let mut out = format!("builds {m} {n}");
            if let Some(e) = expect {
                out.push_str(&format!(" expect {e}"));
            }
            out
        }
        Command::FinitelyBuilds { m, n, expect } => {
            let mut out = format!("finitely-builds {m} {n}");
            if let Some(e) = expect {
                out.push_str(&format!(" expect {e}"));
            }
            out
        }
        Command::TensorCheck { m, n } => format!("tensor-check {m} {n}"),
        Command::Reduce { target } => format!("reduce {target}"),
        Command::Coreduce { target, restricted, window, depth, expect_dims } => {
            let mut out = String::from("coreduce ");
            if *restricted {
                out.push_str("restricted ");
            }
            out.push_str(&format!("{target} window {} {}", window.0, window.1));
            if let Some(d) = depth {
                out.push_str(&format!(" depth {d}"));
            }
            if let Some(dims) = expect_dims {
                let list: Vec<String> = dims.iter().map(usize::to_string).collect();
                out.push_str(&format!(" expect {}", list.join(", ")));
            }
            out
        }
        Command::Truncate { algebra, depth } => format!("truncate {algebra} depth {depth}"),
        Command::ThickMember { target, components, expect } => {
            let comps: Vec<String> =
                components.iter().map(|c| format!("({})", c.join(", "))).collect();
            let mut out = format!("thick-member {target} in {}", comps.join("; "));
            if let Some(e) = expect {
                out.push_str(&format!(" expect {e}"));
            }
            out
        }
        Command::Crosscheck { target } => format!("crosscheck {target}"),
    }
}
