use std::fmt;

use super::map::{same_module, GradedMap};
use super::module::ModuleRef;
use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// Graded module with a differential of degree -1 and optional circle actions
/// `u` (degree -2) and `y` (degree +1).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub name: String,
    pub ring: Ring,
    pub module: ModuleRef,
    pub d: GradedMap,
    pub u: Option<GradedMap>,
    pub y: Option<GradedMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Homogeneity,
    DSquared,
    UCommutes,
    YAnticommutes,
    YSquared,
}

impl Law {
    pub const ALL: [Law; 5] = [Law::Homogeneity, Law::DSquared, Law::UCommutes, Law::YAnticommutes, Law::YSquared];

    pub fn tag(self) -> &'static str {
        match self {
            Law::Homogeneity => "homogeneity",
            Law::DSquared => "d^2=0",
            Law::UCommutes => "dU-Ud=0",
            Law::YAnticommutes => "dY+Yd=0",
            Law::YSquared => "Y^2=0",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: Law,
    pub passed: bool,
    /// (source generator, target generator) of a nonzero entry of the failing composite.
    pub witness: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub results: Vec<LawResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        self.results.iter().filter(|r| !r.passed).map(|r| r.law).collect()
    }

    pub fn first_failure(&self) -> Option<&LawResult> {
        self.results.iter().find(|r| !r.passed)
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(r) => {
                let (src, dst) = r.witness.clone().unwrap_or_default();
                Err(Error::Validation { law: r.law.tag().to_string(), src, dst })
            }
        }
    }
}

fn law_from(law: Law, m: &GradedMap) -> LawResult {
    match m.first_entry() {
        None => LawResult { law, passed: true, witness: None },
        Some((s, t)) => LawResult { law, passed: false, witness: Some(m.witness(s, t)) },
    }
}

impl ChainComplex {
    pub fn new(name: impl Into<String>, module: ModuleRef, d: GradedMap) -> Self {
        ChainComplex { name: name.into(), ring: d.ring, module, d, u: None, y: None }
    }

    pub fn with_u(mut self, u: GradedMap) -> Self {
        self.u = Some(u);
        self
    }

    pub fn with_y(mut self, y: GradedMap) -> Self {
        self.y = Some(y);
        self
    }

    pub fn without_actions(&self) -> Self {
        ChainComplex { u: None, y: None, ..self.clone() }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.module.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.is_empty()
    }

    pub fn u_action(&self) -> Result<&GradedMap> {
        self.u.as_ref().ok_or_else(|| Error::MissingUAction(self.name.clone()))
    }

    pub fn y_action(&self) -> Result<&GradedMap> {
        self.y.as_ref().ok_or_else(|| Error::MissingYAction(self.name.clone()))
    }

    pub fn require_z_graded(&self) -> Result<()> {
        if self.module.modulus() != 0 {
            return Err(Error::ModulusUnsupported);
        }
        Ok(())
    }

    fn endo_ok(&self, m: &GradedMap) -> bool {
        same_module(&m.source, &self.module) && same_module(&m.target, &self.module)
    }

    /// Checks every structural law and reports each one with a witness on failure.
    pub fn validate(&self) -> ValidationReport {
        let mut results = Vec::new();
        let maps: Vec<(&GradedMap, i64)> = std::iter::once((&self.d, -1))
            .chain(self.u.iter().map(|u| (u, -2)))
            .chain(self.y.iter().map(|y| (y, 1)))
            .collect();
        let mut homog = LawResult { law: Law::Homogeneity, passed: true, witness: None };
        for (m, deg) in &maps {
            if !self.endo_ok(m) {
                homog = LawResult { law: Law::Homogeneity, passed: false, witness: None };
                break;
            }
            if m.degree != *deg {
                homog = LawResult { law: Law::Homogeneity, passed: false, witness: None };
                break;
            }
            if let Some((s, t)) = m.inhomogeneous_entry() {
                homog = LawResult { law: Law::Homogeneity, passed: false, witness: Some(m.witness(s, t)) };
                break;
            }
        }
        let shapes_ok = maps.iter().all(|(m, _)| self.endo_ok(m));
        results.push(homog);
        if !shapes_ok {
            return ValidationReport { results };
        }
        let d = &self.d;
        results.push(law_from(Law::DSquared, &d.compose(d)));
        if let Some(u) = &self.u {
            results.push(law_from(Law::UCommutes, &d.compose(u).sub(&u.compose(d))));
        }
        if let Some(y) = &self.y {
            results.push(law_from(Law::YAnticommutes, &d.compose(y).add(&y.compose(d))));
            results.push(law_from(Law::YSquared, &y.compose(y)));
        }
        ValidationReport { results }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().into_result()?;
        Ok(self)
    }
}
