use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// Ordered list of named generators with integer degrees.
///
/// With a positive modulus `c` the degrees are residues in `[0, c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedModule {
    gens: Vec<Generator>,
    modulus: i64,
    index: BTreeMap<String, usize>,
}

pub type ModuleRef = Arc<GradedModule>;

impl GradedModule {
    pub fn new(modulus: i64) -> Self {
        assert!(modulus >= 0 && modulus % 2 == 0, "modulus must be even and nonnegative");
        GradedModule { gens: Vec::new(), modulus, index: BTreeMap::new() }
    }

    pub fn from_gens<S: Into<String>>(gens: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut m = GradedModule::new(0);
        for (n, d) in gens {
            m.push(n, d)?;
        }
        Ok(m)
    }

    pub fn push(&mut self, name: impl Into<String>, degree: i64) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        let k = self.gens.len();
        let degree = self.norm(degree);
        self.index.insert(name.clone(), k);
        self.gens.push(Generator { name, degree });
        Ok(k)
    }

    pub fn into_ref(self) -> ModuleRef {
        Arc::new(self)
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn norm(&self, d: i64) -> i64 {
        if self.modulus > 0 {
            d.rem_euclid(self.modulus)
        } else {
            d
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.gens[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Indices of the generators in degree `d` (in module order).
    pub fn in_degree(&self, d: i64) -> Vec<usize> {
        let d = self.norm(d);
        (0..self.gens.len()).filter(|&i| self.gens[i].degree == d).collect()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn degree_span(&self) -> Option<(i64, i64)> {
        let lo = self.gens.iter().map(|g| g.degree).min()?;
        let hi = self.gens.iter().map(|g| g.degree).max()?;
        Some((lo, hi))
    }

    /// Copy with every degree shifted by `s`.
    pub fn shifted(&self, s: i64) -> GradedModule {
        let mut m = GradedModule::new(self.modulus);
        for g in &self.gens {
            m.push(g.name.clone(), g.degree + s).expect("names stay unique");
        }
        m
    }

    /// Copy with every name prefixed.
    pub fn prefixed(&self, prefix: &str) -> GradedModule {
        let mut m = GradedModule::new(self.modulus);
        for g in &self.gens {
            m.push(format!("{prefix}{}", g.name), g.degree).expect("names stay unique");
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let mut m = GradedModule::new(0);
        m.push("a", 0).unwrap();
        assert_eq!(m.push("a", 1), Err(Error::DuplicateGenerator("a".into())));
    }

    #[test]
    fn modulus_reduces_degrees() {
        let mut m = GradedModule::new(4);
        m.push("a", -1).unwrap();
        m.push("b", 7).unwrap();
        assert_eq!(m.degree(0), 3);
        assert_eq!(m.in_degree(-5), vec![0, 1]);
    }
}
