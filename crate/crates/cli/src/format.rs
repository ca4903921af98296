//! Line-oriented text format for complexes, filtered complexes, balanced components and map sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use flavorkit_core::chain::{ChainComplex, Completeness, GradedMap, GradedModule, ModuleRef};
use flavorkit_core::connsum::{ConnSumMaps, FilteredComplex};
use flavorkit_core::exactlin::Ring;
use flavorkit_core::flavors::{BalancedComponents, Comp, Part};
use flavorkit_core::Error as CoreError;
use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed: {law} ({src} -> {dst})")]
    Validation { law: String, src: String, dst: String },
    #[error("{0}")]
    Core(CoreError),
}

impl From<CoreError> for FormatError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Validation { law, src, dst } => FormatError::Validation { law, src, dst },
            other => FormatError::Core(other),
        }
    }
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

/// Names of the nine blocks of a connected-sum map set, in file order.
pub const MAP_ROLES: [&str; 9] = ["V0", "V1", "V0d", "V1d", "H", "A", "B", "C", "D"];

/// Candidate connected-sum maps by generator name; resolved against the two complexes later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSet {
    pub name: String,
    pub ring: Ring,
    /// degree of `V₀`
    pub degree: i64,
    pub blocks: BTreeMap<String, Vec<(String, String, BigInt)>>,
}

#[derive(Clone, Debug)]
pub enum Document {
    Complex(ChainComplex),
    Filtered(FilteredComplex),
    Balanced(BalancedComponents),
    Maps(MapSet),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Filtered(_) => "filtered",
            Document::Balanced(_) => "balanced",
            Document::Maps(_) => "maps",
        }
    }
}

fn perr<T>(line: usize, message: impl Into<String>) -> FormatResult<T> {
    Err(FormatError::Parse { line, message: message.into() })
}

fn int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> FormatResult<T> {
    tok.parse().or_else(|_| perr(line, format!("{what} `{tok}` is not an integer")))
}

fn big(line: usize, tok: &str) -> FormatResult<BigInt> {
    tok.parse().or_else(|_| perr(line, format!("coefficient `{tok}` is not an integer")))
}

/// Entry lines collected before the module is known.
#[derive(Default)]
struct Entries(Vec<(usize, String, String, BigInt)>);

impl Entries {
    fn fill(&self, m: &mut GradedMap) -> FormatResult<()> {
        for (line, s, t, v) in &self.0 {
            let (Some(a), Some(b)) = (m.source.index_of(s), m.target.index_of(t)) else {
                return perr(*line, format!("unknown generator in `{s} {t}`"));
            };
            if m.source.degree(a) + m.degree != m.target.degree(b) {
                return Err(FormatError::Validation { law: "homogeneity".into(), src: s.clone(), dst: t.clone() });
            }
            m.add_entry(a, b, v);
        }
        Ok(())
    }
}

struct ComplexDraft {
    name: String,
    filtered: bool,
    ring: Ring,
    modulus: i64,
    gens: Vec<(usize, String, i64)>,
    d: Entries,
    u: Entries,
    y: Entries,
    actions: BTreeSet<String>,
    du: Vec<(usize, String, String, BigInt, i64)>,
}

struct BalancedDraft {
    name: String,
    ring: Ring,
    parts: BTreeMap<Part, Vec<(usize, String, i64)>>,
    current: Option<Part>,
    complete: Vec<(usize, Part, Completeness)>,
    maps: Vec<(usize, Comp, Entries)>,
}

struct MapsDraft {
    set: MapSet,
    current: Option<String>,
}

enum Draft {
    Complex(ComplexDraft),
    Balanced(BalancedDraft),
    Maps(MapsDraft),
}

fn module(gens: &[(usize, String, i64)], modulus: i64) -> FormatResult<ModuleRef> {
    let mut m = GradedModule::new(modulus);
    for (line, name, deg) in gens {
        if m.push(name.clone(), *deg).is_err() {
            return perr(*line, format!("duplicate generator `{name}`"));
        }
    }
    Ok(m.into_ref())
}

fn parse_ring(line: usize, tok: &str) -> FormatResult<Ring> {
    tok.parse().or_else(|e: flavorkit_core::exactlin::RingParseError| perr(line, e.to_string()))
}

fn parse_completeness(line: usize, toks: &[&str]) -> FormatResult<Completeness> {
    let (mut finite, mut from, mut upto) = (BTreeSet::new(), None, None);
    for t in toks {
        if let Some(a) = t.strip_prefix(">=") {
            from = Some(int(line, a, "tail")?);
        } else if let Some(b) = t.strip_prefix("<=") {
            upto = Some(int(line, b, "tail")?);
        } else {
            finite.insert(int(line, t, "degree")?);
        }
    }
    Ok(Completeness::from_parts(finite, from, upto))
}

impl ComplexDraft {
    fn finish(self) -> FormatResult<Document> {
        let m = module(&self.gens, self.modulus)?;
        if self.filtered {
            let mut f = FilteredComplex::new(self.name, self.ring, m);
            for (line, s, t, c, e) in self.du {
                match f.add_term(&s, &t, e, c) {
                    Err(CoreError::UnknownGenerator(g)) => return perr(line, format!("unknown generator `{g}`")),
                    r => r?,
                }
            }
            return Ok(Document::Filtered(f));
        }
        if let Some((line, ..)) = self.du.first() {
            return perr(*line, "`dU` entries belong to filtered complexes");
        }
        let mut d = GradedMap::zero(&m, &m, -1, self.ring);
        self.d.fill(&mut d)?;
        let mut c = ChainComplex::new(self.name, m.clone(), d);
        if self.actions.contains("u") || !self.u.0.is_empty() {
            let mut u = GradedMap::zero(&m, &m, -2, self.ring);
            self.u.fill(&mut u)?;
            c.u = Some(u);
        }
        if self.actions.contains("y") || !self.y.0.is_empty() {
            let mut y = GradedMap::zero(&m, &m, 1, self.ring);
            self.y.fill(&mut y)?;
            c.y = Some(y);
        }
        Ok(Document::Complex(c))
    }
}

impl BalancedDraft {
    fn finish(self) -> FormatResult<Document> {
        let get = |p: Part| -> FormatResult<ModuleRef> { module(self.parts.get(&p).map_or(&[][..], |v| v), 0) };
        let mut bc = match BalancedComponents::new(self.name, self.ring, get(Part::O)?, get(Part::S)?, get(Part::U)?) {
            Err(CoreError::DuplicateGenerator(g)) => return perr(0, format!("generator `{g}` appears in two parts")),
            r => r?,
        };
        for (_, p, c) in self.complete {
            bc.complete.insert(p, c);
        }
        for (line, comp, entries) in self.maps {
            let mut m = bc.get(comp);
            entries.fill(&mut m).map_err(|e| match e {
                FormatError::Parse { message, .. } => FormatError::Parse { line, message: format!("{comp}: {message}") },
                other => other,
            })?;
            bc.set(comp, m)?;
        }
        Ok(Document::Balanced(bc))
    }
}

/// Parses every block of a file without checking the algebraic laws.
pub fn parse_raw(text: &str) -> FormatResult<Vec<Document>> {
    let mut docs = Vec::new();
    let mut draft: Option<Draft> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        let args = &toks[1..];
        let want = |n: usize| -> FormatResult<()> {
            if args.len() != n {
                return perr(line, format!("`{head}` takes {n} argument(s), got {}", args.len()));
            }
            Ok(())
        };
        match (&mut draft, head) {
            (None, "complex" | "filtered") => {
                want(1)?;
                draft = Some(Draft::Complex(ComplexDraft {
                    name: args[0].into(),
                    filtered: head == "filtered",
                    ring: Ring::Integers,
                    modulus: 0,
                    gens: Vec::new(),
                    d: Entries::default(),
                    u: Entries::default(),
                    y: Entries::default(),
                    actions: BTreeSet::new(),
                    du: Vec::new(),
                }));
            }
            (None, "balanced") => {
                want(1)?;
                draft = Some(Draft::Balanced(BalancedDraft {
                    name: args[0].into(),
                    ring: Ring::Integers,
                    parts: BTreeMap::new(),
                    current: None,
                    complete: Vec::new(),
                    maps: Vec::new(),
                }));
            }
            (None, "maps") => {
                want(1)?;
                draft = Some(Draft::Maps(MapsDraft {
                    set: MapSet { name: args[0].into(), ring: Ring::Integers, degree: 1, blocks: BTreeMap::new() },
                    current: None,
                }));
            }
            (None, _) => return perr(line, format!("expected a block header, found `{head}`")),
            (Some(_), "end") => {
                want(0)?;
                docs.push(match draft.take().expect("open block") {
                    Draft::Complex(c) => c.finish()?,
                    Draft::Balanced(b) => b.finish()?,
                    Draft::Maps(m) => Document::Maps(m.set),
                });
            }
            (Some(Draft::Complex(c)), _) => match head {
                "ring" => {
                    want(1)?;
                    c.ring = parse_ring(line, args[0])?;
                }
                "mod" => {
                    want(1)?;
                    let k: i64 = int(line, args[0], "modulus")?;
                    if k < 0 || k % 2 != 0 || (c.filtered && k != 0) {
                        return perr(line, format!("modulus {k} is not allowed here"));
                    }
                    c.modulus = k;
                }
                "gen" => {
                    want(2)?;
                    c.gens.push((line, args[0].into(), int(line, args[1], "degree")?));
                }
                "actions" => {
                    for a in args {
                        if !matches!(*a, "u" | "y") {
                            return perr(line, format!("unknown action `{a}`"));
                        }
                        c.actions.insert(a.to_string());
                    }
                }
                "d" | "u" | "y" if !c.filtered => {
                    want(3)?;
                    let e = (line, args[0].to_string(), args[1].to_string(), big(line, args[2])?);
                    match head {
                        "d" => c.d.0.push(e),
                        "u" => c.u.0.push(e),
                        _ => c.y.0.push(e),
                    }
                }
                "dU" => {
                    want(4)?;
                    c.du.push((line, args[0].into(), args[1].into(), big(line, args[2])?, int(line, args[3], "exponent")?));
                }
                _ => return perr(line, format!("unexpected `{head}` in a {} block", if c.filtered { "filtered" } else { "complex" })),
            },
            (Some(Draft::Balanced(b)), _) => match head {
                "ring" => {
                    want(1)?;
                    b.ring = parse_ring(line, args[0])?;
                }
                "part" => {
                    want(1)?;
                    let p: Part = args[0].parse().or_else(|e: String| perr(line, e))?;
                    b.parts.entry(p).or_default();
                    b.current = Some(p);
                }
                "gen" => {
                    want(2)?;
                    let Some(p) = b.current else { return perr(line, "`gen` before any `part`") };
                    if !b.maps.is_empty() {
                        return perr(line, "generators must precede maps");
                    }
                    b.parts.get_mut(&p).expect("opened").push((line, args[0].into(), int(line, args[1], "degree")?));
                }
                "complete" => {
                    let Some((p, rest)) = args.split_first() else { return perr(line, "`complete` needs a part") };
                    let p: Part = p.parse().or_else(|e: String| perr(line, e))?;
                    b.complete.push((line, p, parse_completeness(line, rest)?));
                }
                "map" => {
                    want(1)?;
                    let c: Comp = args[0].parse().or_else(|e: String| perr(line, e))?;
                    b.current = None;
                    b.maps.push((line, c, Entries::default()));
                }
                "e" => {
                    want(3)?;
                    let Some(m) = b.maps.last_mut() else { return perr(line, "`e` before any `map`") };
                    m.2 .0.push((line, args[0].into(), args[1].into(), big(line, args[2])?));
                }
                _ => return perr(line, format!("unexpected `{head}` in a balanced block")),
            },
            (Some(Draft::Maps(m)), _) => match head {
                "ring" => {
                    want(1)?;
                    m.set.ring = parse_ring(line, args[0])?;
                }
                "degree" => {
                    want(1)?;
                    m.set.degree = int(line, args[0], "degree")?;
                }
                "map" => {
                    want(1)?;
                    if !MAP_ROLES.contains(&args[0]) {
                        return perr(line, format!("unknown map `{}`", args[0]));
                    }
                    m.set.blocks.entry(args[0].into()).or_default();
                    m.current = Some(args[0].into());
                }
                "e" => {
                    want(3)?;
                    let Some(role) = &m.current else { return perr(line, "`e` before any `map`") };
                    let v = big(line, args[2])?;
                    m.set.blocks.get_mut(role).expect("opened").push((args[0].into(), args[1].into(), v));
                }
                _ => return perr(line, format!("unexpected `{head}` in a maps block")),
            },
        }
    }
    if draft.is_some() {
        return perr(last, "missing `end`");
    }
    Ok(docs)
}

/// Parses and validates: complexes must satisfy their laws and filtered complexes `∂² = 0`.
pub fn parse(text: &str) -> FormatResult<Vec<Document>> {
    let docs = parse_raw(text)?;
    for d in &docs {
        match d {
            Document::Complex(c) => c.validate().into_result()?,
            Document::Filtered(f) => f.check_square()?,
            _ => {}
        }
    }
    Ok(docs)
}

fn entries(out: &mut String, key: &str, m: &GradedMap) {
    for (s, t, v) in m.entries() {
        let (a, b) = m.witness(s, t);
        let _ = writeln!(out, "{key} {a} {b} {v}");
    }
}

fn gens(out: &mut String, m: &ModuleRef) {
    for g in m.gens() {
        let _ = writeln!(out, "gen {} {}", g.name, g.degree);
    }
}

pub fn print_complex(c: &ChainComplex) -> String {
    let mut out = format!("complex {}\nring {}\n", c.name, c.ring);
    if c.module.modulus() != 0 {
        let _ = writeln!(out, "mod {}", c.module.modulus());
    }
    let acts: Vec<&str> = [("u", c.u.is_some()), ("y", c.y.is_some())].iter().filter(|a| a.1).map(|a| a.0).collect();
    if !acts.is_empty() {
        let _ = writeln!(out, "actions {}", acts.join(" "));
    }
    gens(&mut out, &c.module);
    entries(&mut out, "d", &c.d);
    if let Some(u) = &c.u {
        entries(&mut out, "u", u);
    }
    if let Some(y) = &c.y {
        entries(&mut out, "y", y);
    }
    out.push_str("end\n");
    out
}

pub fn print_filtered(f: &FilteredComplex) -> String {
    let mut out = format!("filtered {}\nring {}\n", f.name, f.ring);
    gens(&mut out, &f.module);
    for (&(s, t), p) in &f.entries {
        for (e, c) in p {
            let _ = writeln!(out, "dU {} {} {c} {e}", f.module.name(s), f.module.name(t));
        }
    }
    out.push_str("end\n");
    out
}

fn completeness_line(c: &Completeness) -> Option<String> {
    if c.is_full() {
        return None;
    }
    let mut toks: Vec<String> = Vec::new();
    if let Some(a) = c.upper_tail() {
        toks.push(format!(">={a}"));
    }
    if let Some(b) = c.lower_tail() {
        toks.push(format!("<={b}"));
    }
    toks.extend(c.finite().iter().map(|k| k.to_string()));
    Some(toks.join(" "))
}

pub fn print_balanced(b: &BalancedComponents) -> String {
    let mut out = format!("balanced {}\nring {}\n", b.name, b.ring);
    for p in Part::ALL {
        let _ = writeln!(out, "part {}", p.tag());
        gens(&mut out, b.module(p));
    }
    for p in Part::ALL {
        if let Some(line) = b.complete.get(&p).and_then(completeness_line) {
            let _ = writeln!(out, "complete {} {line}", p.tag());
        }
    }
    for (c, m) in b.components() {
        let _ = writeln!(out, "map {c}");
        entries(&mut out, "e", m);
    }
    out.push_str("end\n");
    out
}

pub fn print_maps(m: &MapSet) -> String {
    let mut out = format!("maps {}\nring {}\ndegree {}\n", m.name, m.ring, m.degree);
    for role in MAP_ROLES {
        if let Some(es) = m.blocks.get(role) {
            let _ = writeln!(out, "map {role}");
            for (s, t, v) in es {
                let _ = writeln!(out, "e {s} {t} {v}");
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn print(d: &Document) -> String {
    match d {
        Document::Complex(c) => print_complex(c),
        Document::Filtered(f) => print_filtered(f),
        Document::Balanced(b) => print_balanced(b),
        Document::Maps(m) => print_maps(m),
    }
}

pub fn print_all(docs: &[Document]) -> String {
    docs.iter().map(print).collect::<Vec<_>>().join("\n")
}

impl MapSet {
    /// Records the nonzero entries of concrete maps by generator name.
    pub fn from_maps(name: &str, m: &ConnSumMaps) -> MapSet {
        let mut blocks = BTreeMap::new();
        for (role, g) in MAP_ROLES.iter().zip(role_maps(m)) {
            let es: Vec<_> = g
                .entries()
                .map(|(s, t, v)| {
                    let (a, b) = g.witness(s, t);
                    (a, b, v.clone())
                })
                .collect();
            if !es.is_empty() {
                blocks.insert(role.to_string(), es);
            }
        }
        MapSet { name: name.into(), ring: m.v0.ring, degree: m.v0.degree, blocks }
    }

    /// Resolves the blocks against `C_#` and `Ĉ_⊔`.
    pub fn resolve(&self, sharp: &ChainComplex, sum: &ChainComplex) -> FormatResult<ConnSumMaps> {
        let dv = self.degree;
        let (sh, su) = (&sharp.module, &sum.module);
        let shapes: [(&ModuleRef, &ModuleRef, i64); 9] = [
            (sh, su, dv),
            (sh, su, dv - 1),
            (su, sh, 1 - dv),
            (su, sh, -dv),
            (sh, sh, 1),
            (su, su, 1),
            (su, su, 2),
            (su, su, 0),
            (su, su, 1),
        ];
        let mut out = Vec::with_capacity(9);
        for (role, (s, t, k)) in MAP_ROLES.iter().zip(shapes) {
            let mut g = GradedMap::zero(s, t, k, self.ring);
            let es = self.blocks.get(*role).map(|v| v.iter().map(|(a, b, c)| (0, a.clone(), b.clone(), c.clone())).collect());
            Entries(es.unwrap_or_default()).fill(&mut g).map_err(|e| match e {
                FormatError::Parse { message, .. } => FormatError::Parse { line: 0, message: format!("map {role}: {message}") },
                other => other,
            })?;
            out.push(g);
        }
        let mut it = out.into_iter();
        let mut next = || it.next().expect("nine blocks");
        Ok(ConnSumMaps {
            v0: next(),
            v1: next(),
            v0d: next(),
            v1d: next(),
            h_sharp: next(),
            a: next(),
            b: next(),
            cc: next(),
            d: next(),
        })
    }
}

fn role_maps(m: &ConnSumMaps) -> [&GradedMap; 9] {
    [&m.v0, &m.v1, &m.v0d, &m.v1d, &m.h_sharp, &m.a, &m.b, &m.cc, &m.d]
}
