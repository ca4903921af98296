use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::chain::{Completeness, GradedMap, ModuleRef};
use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// Summand of a balanced complex: irreducible (`o`), boundary-stable (`s`) and boundary-unstable (`u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    O,
    S,
    U,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::O, Part::S, Part::U];

    /// Offset between the bar grading and the stored grading.
    fn sigma(self) -> i64 {
        (self == Part::U) as i64
    }

    pub fn tag(self) -> &'static str {
        match self {
            Part::O => "o",
            Part::S => "s",
            Part::U => "u",
        }
    }
}

impl FromStr for Part {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "o" => Ok(Part::O),
            "s" => Ok(Part::S),
            "u" => Ok(Part::U),
            _ => Err(format!("unknown part `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// irreducible differential counts
    D,
    /// reducible differential counts
    DBar,
    U,
    UBar,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::D => "d",
            Kind::DBar => "dbar",
            Kind::U => "U",
            Kind::UBar => "Ubar",
        }
    }

    fn allowed(self) -> &'static [(Part, Part)] {
        use Part::*;
        match self {
            Kind::D => &[(O, O), (O, S), (U, O), (U, S)],
            Kind::DBar => &[(S, S), (U, U), (S, U), (U, S)],
            Kind::U => &[(O, O), (U, O), (O, S), (U, S)],
            Kind::UBar => &[(S, U), (U, U), (S, S), (U, S)],
        }
    }

    /// Degree of a component in the stored grading.
    pub fn degree(self, src: Part, dst: Part) -> i64 {
        match self {
            Kind::D => -1,
            Kind::U => -2,
            Kind::DBar => -1 + dst.sigma() - src.sigma(),
            Kind::UBar => -2 + dst.sigma() - src.sigma(),
        }
    }
}

/// Component `kind^src_dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comp {
    pub kind: Kind,
    pub src: Part,
    pub dst: Part,
}

impl Comp {
    pub fn new(kind: Kind, src: Part, dst: Part) -> Result<Comp> {
        if !kind.allowed().contains(&(src, dst)) {
            return Err(Error::Shape(format!("no component {}:{}->{}", kind.tag(), src.tag(), dst.tag())));
        }
        Ok(Comp { kind, src, dst })
    }

    pub fn all() -> Vec<Comp> {
        let mut v = Vec::new();
        for kind in [Kind::D, Kind::DBar, Kind::U, Kind::UBar] {
            for &(src, dst) in kind.allowed() {
                v.push(Comp { kind, src, dst });
            }
        }
        v
    }

    pub fn degree(self) -> i64 {
        self.kind.degree(self.src, self.dst)
    }
}

impl fmt::Display for Comp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self.kind.tag(), self.src.tag(), self.dst.tag())
    }
}

impl FromStr for Comp {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (k, rest) = s.split_once(':').ok_or_else(|| format!("bad component `{s}`"))?;
        let (a, b) = rest.split_once("->").ok_or_else(|| format!("bad component `{s}`"))?;
        let kind = match k {
            "d" => Kind::D,
            "dbar" => Kind::DBar,
            "U" => Kind::U,
            "Ubar" => Kind::UBar,
            _ => return Err(format!("unknown map kind `{k}`")),
        };
        Comp::new(kind, a.parse()?, b.parse()?).map_err(|e| e.to_string())
    }
}

/// The three generator sets with every component map. Generators of `C^u` are stored in
/// the grading where the `u`-summand of `C̄` sits one degree lower.
#[derive(Clone, Debug)]
pub struct BalancedComponents {
    pub name: String,
    pub ring: Ring,
    pub o: ModuleRef,
    pub s: ModuleRef,
    pub u: ModuleRef,
    maps: BTreeMap<Comp, GradedMap>,
    /// per part, in the stored grading
    pub complete: BTreeMap<Part, Completeness>,
}

impl BalancedComponents {
    pub fn new(name: impl Into<String>, ring: Ring, o: ModuleRef, s: ModuleRef, u: ModuleRef) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for m in [&o, &s, &u] {
            if m.modulus() != 0 {
                return Err(Error::ModulusUnsupported);
            }
            for g in m.gens() {
                if !seen.insert(g.name.clone()) {
                    return Err(Error::DuplicateGenerator(g.name.clone()));
                }
            }
        }
        let complete = Part::ALL.iter().map(|&p| (p, Completeness::full())).collect();
        Ok(BalancedComponents { name: name.into(), ring, o, s, u, maps: BTreeMap::new(), complete })
    }

    pub fn module(&self, p: Part) -> &ModuleRef {
        match p {
            Part::O => &self.o,
            Part::S => &self.s,
            Part::U => &self.u,
        }
    }

    pub fn part_of(&self, name: &str) -> Option<(Part, usize)> {
        Part::ALL.iter().find_map(|&p| self.module(p).index_of(name).map(|i| (p, i)))
    }

    /// The component, zero when unset.
    pub fn get(&self, c: Comp) -> GradedMap {
        self.maps.get(&c).cloned().unwrap_or_else(|| {
            GradedMap::zero(self.module(c.src), self.module(c.dst), c.degree(), self.ring)
        })
    }

    pub fn get_k(&self, kind: Kind, src: Part, dst: Part) -> GradedMap {
        self.get(Comp { kind, src, dst })
    }

    pub fn set(&mut self, c: Comp, m: GradedMap) -> Result<()> {
        if m.degree != c.degree() {
            return Err(Error::Shape(format!("{c} must have degree {}, got {}", c.degree(), m.degree)));
        }
        if let Some((s, t)) = m.inhomogeneous_entry() {
            let (a, b) = m.witness(s, t);
            return Err(Error::Validation { law: "homogeneity".into(), src: a, dst: b });
        }
        self.maps.insert(c, m);
        Ok(())
    }

    /// Adds `coeff` to the `src -> dst` entry of a component, by generator name.
    pub fn add_entry(&mut self, c: Comp, src: &str, dst: &str, coeff: i64) -> Result<()> {
        let mut m = self.get(c);
        let si = self.module(c.src).lookup(src)?;
        let di = self.module(c.dst).lookup(dst)?;
        m.add_entry(si, di, &num_bigint::BigInt::from(coeff));
        self.set(c, m)
    }

    /// Nonzero components in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (&Comp, &GradedMap)> {
        self.maps.iter().filter(|(_, m)| !m.is_zero())
    }
}
