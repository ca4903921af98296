use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::ChainComplex;
use super::map::{same_module, GradedMap};
use super::window::Window;
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroup, GroupHom, Presentation};

/// Homology groups by degree; absent degrees are trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub groups: BTreeMap<i64, AbelianGroup>,
}

impl HomologyTable {
    pub fn get(&self, j: i64) -> AbelianGroup {
        self.groups.get(&j).cloned().unwrap_or_default()
    }

    pub fn nonzero(&self) -> Vec<(i64, &AbelianGroup)> {
        self.groups.iter().filter(|(_, g)| !g.is_trivial()).map(|(j, g)| (*j, g)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(|g| g.is_trivial())
    }

    pub fn restricted(&self, degrees: &[i64]) -> HomologyTable {
        HomologyTable { groups: degrees.iter().map(|&j| (j, self.get(j))).collect() }
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, g) in &self.groups {
            writeln!(f, "H_{j} = {g}")?;
        }
        Ok(())
    }
}

/// Degrees reported by default: the generator span widened by one.
pub fn default_degrees(c: &ChainComplex) -> Vec<i64> {
    if c.module.modulus() > 0 {
        return (0..c.module.modulus()).collect();
    }
    match c.module.degree_span() {
        None => Vec::new(),
        Some((lo, hi)) => (lo - 1..=hi + 1).collect(),
    }
}

pub fn homology_at(c: &ChainComplex, j: i64) -> Result<AbelianGroup> {
    let d_out = c.d.block(j);
    let d_in = c.d.block(j + 1);
    Ok(crate::exactlin::homology_of_pair_over(&d_in, &d_out, c.ring)?)
}

/// Per-degree homology; the window restricts the computed degrees.
pub fn homology(c: &ChainComplex, window: Option<Window>) -> Result<HomologyTable> {
    c.validate().into_result()?;
    let degrees: Vec<i64> = match window {
        Some(w) => w.degrees().collect(),
        None => default_degrees(c),
    };
    homology_in(c, &degrees)
}

pub fn homology_in(c: &ChainComplex, degrees: &[i64]) -> Result<HomologyTable> {
    let mut groups = BTreeMap::new();
    for &j in degrees {
        groups.insert(c.module.norm(j), homology_at(c, j)?);
    }
    Ok(HomologyTable { groups })
}

/// Lazily computed homology presentations of one complex.
pub struct HomologyCache<'a> {
    pub complex: &'a ChainComplex,
    cache: RefCell<BTreeMap<i64, Rc<Presentation>>>,
}

impl<'a> HomologyCache<'a> {
    pub fn new(complex: &'a ChainComplex) -> Self {
        HomologyCache { complex, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn at(&self, j: i64) -> Result<Rc<Presentation>> {
        let j = self.complex.module.norm(j);
        if let Some(p) = self.cache.borrow().get(&j) {
            return Ok(p.clone());
        }
        let d_out = self.complex.d.block(j);
        let d_in = self.complex.d.block(j + 1);
        let p = Rc::new(Presentation::new(&d_in, &d_out, self.complex.ring)?);
        self.cache.borrow_mut().insert(j, p.clone());
        Ok(p)
    }

    /// Global vector supported on degree `j` from local coordinates.
    pub fn embed(&self, j: i64, local: &[BigInt]) -> Vec<BigInt> {
        embed(self.complex, j, local)
    }

    pub fn localize(&self, j: i64, global: &[BigInt]) -> Vec<BigInt> {
        localize(self.complex, j, global)
    }
}

pub fn embed(c: &ChainComplex, j: i64, local: &[BigInt]) -> Vec<BigInt> {
    let idx = c.module.in_degree(j);
    let mut v = vec![BigInt::zero(); c.module.len()];
    for (k, &i) in idx.iter().enumerate() {
        v[i] = local[k].clone();
    }
    v
}

pub fn localize(c: &ChainComplex, j: i64, global: &[BigInt]) -> Vec<BigInt> {
    c.module.in_degree(j).iter().map(|&i| global[i].clone()).collect()
}

/// Checks `f ∂₁ − (−1)^{deg f} ∂₂ f = 0`.
pub fn is_chain_map(f: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
    if !same_module(&f.source, &src.module) || !same_module(&f.target, &tgt.module) {
        return false;
    }
    let lhs = f.compose(&src.d);
    let rhs = tgt.d.compose(f);
    let r = if f.degree.rem_euclid(2) == 0 { lhs.sub(&rhs) } else { lhs.add(&rhs) };
    r.is_zero() && f.inhomogeneous_entry().is_none()
}

/// Map induced on homology, per source degree.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degree: i64,
    pub per_degree: BTreeMap<i64, GroupHom>,
}

impl InducedMap {
    pub fn is_iso_at(&self, j: i64) -> bool {
        self.per_degree.get(&j).is_some_and(|h| h.is_iso())
    }

    pub fn iso_everywhere(&self) -> bool {
        self.per_degree.values().all(|h| h.is_iso())
    }
}

pub fn induced_between(
    f: &GradedMap,
    src: &HomologyCache,
    tgt: &HomologyCache,
    j: i64,
) -> Result<GroupHom> {
    let ps = src.at(j)?;
    let pt = tgt.at(j + f.degree)?;
    let mut images = Vec::with_capacity(ps.len());
    for k in 0..ps.len() {
        let z = src.embed(j, &ps.rep(k));
        let fz = f.apply(&z);
        let local = tgt.localize(j + f.degree, &fz);
        images.push(pt.class_of(&local)?);
    }
    Ok(GroupHom::from_images(&ps, &pt, &images))
}

/// Lifts classes to cycles, pushes them forward and re-expresses them in the target presentation.
pub fn induced_on_homology(
    f: &GradedMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
    degrees: &[i64],
) -> Result<InducedMap> {
    if !is_chain_map(f, src, tgt) {
        return Err(Error::NotAChainMap(format!("{} -> {}", src.name, tgt.name)));
    }
    let cs = HomologyCache::new(src);
    let ct = HomologyCache::new(tgt);
    let mut per_degree = BTreeMap::new();
    for &j in degrees {
        per_degree.insert(j, induced_between(f, &cs, &ct, j)?);
    }
    Ok(InducedMap { degree: f.degree, per_degree })
}
