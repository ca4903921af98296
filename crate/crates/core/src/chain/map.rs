use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::module::{GradedModule, ModuleRef};
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Ring};

/// Homogeneous linear map of a fixed degree; the matrix has one row per target
/// generator and one column per source generator.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub degree: i64,
    pub ring: Ring,
    matrix: IntMatrix,
}

pub(crate) fn same_module(a: &ModuleRef, b: &ModuleRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.ring == other.ring
            && same_module(&self.source, &other.source)
            && same_module(&self.target, &other.target)
            && self.matrix == other.matrix
    }
}

impl GradedMap {
    pub fn zero(source: &ModuleRef, target: &ModuleRef, degree: i64, ring: Ring) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            ring,
            matrix: IntMatrix::zeros(target.len(), source.len()),
        }
    }

    pub fn identity(m: &ModuleRef, ring: Ring) -> Self {
        GradedMap { source: m.clone(), target: m.clone(), degree: 0, ring, matrix: IntMatrix::identity(m.len()) }
    }

    pub fn from_matrix(source: &ModuleRef, target: &ModuleRef, degree: i64, ring: Ring, matrix: IntMatrix) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (target.len(), source.len()), "matrix shape");
        GradedMap { source: source.clone(), target: target.clone(), degree, ring, matrix: matrix.reduced(ring) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, src: usize, dst: usize) -> BigInt {
        self.matrix.get(dst, src)
    }

    pub fn set(&mut self, src: usize, dst: usize, v: BigInt) {
        let v = self.ring.reduce(v);
        self.matrix.set(dst, src, v);
    }

    pub fn add_entry(&mut self, src: usize, dst: usize, v: &BigInt) {
        let cur = self.matrix.get(dst, src);
        self.set(src, dst, cur + v);
    }

    pub fn add_by_name(&mut self, src: &str, dst: &str, v: &BigInt) -> Result<()> {
        let s = self.source.lookup(src)?;
        let t = self.target.lookup(dst)?;
        self.add_entry(s, t, v);
        Ok(())
    }

    /// Nonzero entries as (source index, target index, coefficient).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.matrix.iter().map(|(i, j, v)| (j, i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// First entry connecting generators whose degrees do not differ by `degree`.
    pub fn inhomogeneous_entry(&self) -> Option<(usize, usize)> {
        for (s, t, _) in self.entries() {
            let want = self.target.norm(self.source.degree(s) + self.degree);
            if self.target.degree(t) != want {
                return Some((s, t));
            }
        }
        None
    }

    pub fn first_entry(&self) -> Option<(usize, usize)> {
        self.entries().next().map(|(s, t, _)| (s, t))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        assert!(same_module(&first.target, &self.source), "composition of incompatible maps");
        GradedMap {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: first.degree + self.degree,
            ring: self.ring,
            matrix: self.matrix.mul(&first.matrix).reduced(self.ring),
        }
    }

    fn check_same_shape(&self, other: &GradedMap) {
        assert!(
            same_module(&self.source, &other.source) && same_module(&self.target, &other.target),
            "sum of maps with different endpoints"
        );
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.check_same_shape(other);
        let mut m = self.clone();
        m.matrix = self.matrix.add(&other.matrix).reduced(self.ring);
        m
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.check_same_shape(other);
        let mut m = self.clone();
        m.matrix = self.matrix.sub(&other.matrix).reduced(self.ring);
        m
    }

    pub fn neg(&self) -> GradedMap {
        let mut m = self.clone();
        m.matrix = self.matrix.neg().reduced(self.ring);
        m
    }

    pub fn scale(&self, c: i64) -> GradedMap {
        let mut m = self.clone();
        m.matrix = self.matrix.scale(&BigInt::from(c)).reduced(self.ring);
        m
    }

    pub fn sign(&self, positive: bool) -> GradedMap {
        if positive {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn with_degree(mut self, degree: i64) -> GradedMap {
        self.degree = degree;
        self
    }

    /// Same coefficients viewed between other modules of equal size.
    pub fn retarget(&self, source: &ModuleRef, target: &ModuleRef, degree: i64) -> GradedMap {
        GradedMap::from_matrix(source, target, degree, self.ring, self.matrix.clone())
    }

    /// Block from the source generators of degree `src_deg` to the target generators
    /// of degree `src_deg + degree`, in module order.
    pub fn block(&self, src_deg: i64) -> IntMatrix {
        let cols = self.source.in_degree(src_deg);
        let rows = self.target.in_degree(src_deg + self.degree);
        self.matrix.submatrix(&rows, &cols)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(v).into_iter().map(|x| self.ring.reduce(x)).collect()
    }

    /// Restriction to generators present (by name) in smaller source/target modules.
    pub fn restrict(&self, source: &ModuleRef, target: &ModuleRef) -> GradedMap {
        let mut out = GradedMap::zero(source, target, self.degree, self.ring);
        let smap: Vec<Option<usize>> =
            (0..self.source.len()).map(|i| source.index_of(self.source.name(i))).collect();
        let tmap: Vec<Option<usize>> =
            (0..self.target.len()).map(|i| target.index_of(self.target.name(i))).collect();
        for (s, t, v) in self.entries() {
            if let (Some(a), Some(b)) = (smap[s], tmap[t]) {
                out.matrix.set(b, a, v.clone());
            }
        }
        out
    }

    /// Names of the generators of a witness entry.
    pub fn witness(&self, src: usize, dst: usize) -> (String, String) {
        (self.source.name(src).to_string(), self.target.name(dst).to_string())
    }

    pub fn max_abs(&self) -> BigInt {
        self.matrix.max_abs()
    }
}

/// Concatenation of graded modules with per-summand name prefixes and degree shifts.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: ModuleRef,
    pub parts: Vec<ModuleRef>,
    pub offsets: Vec<usize>,
    pub shifts: Vec<i64>,
}

impl DirectSum {
    pub fn new(parts: &[(&str, &ModuleRef, i64)]) -> Result<DirectSum> {
        let modulus = parts.first().map_or(0, |p| p.1.modulus());
        let mut m = GradedModule::new(modulus);
        let mut offsets = Vec::new();
        let mut shifts = Vec::new();
        for (prefix, part, shift) in parts {
            if part.modulus() != modulus {
                return Err(Error::Shape("summands with different moduli".into()));
            }
            offsets.push(m.len());
            shifts.push(*shift);
            for g in part.gens() {
                m.push(format!("{prefix}{}", g.name), g.degree + shift)?;
            }
        }
        Ok(DirectSum {
            module: m.into_ref(),
            parts: parts.iter().map(|p| p.1.clone()).collect(),
            offsets,
            shifts,
        })
    }

    pub fn len(&self) -> usize {
        self.module.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.is_empty()
    }

    /// Inclusion of summand `k`; its degree is the summand's shift.
    pub fn inject(&self, k: usize, ring: Ring) -> GradedMap {
        let part = &self.parts[k];
        let mut m = GradedMap::zero(part, &self.module, self.shifts[k], ring);
        for i in 0..part.len() {
            m.set(i, self.offsets[k] + i, BigInt::one());
        }
        m
    }

    pub fn project(&self, k: usize, ring: Ring) -> GradedMap {
        let part = &self.parts[k];
        let mut m = GradedMap::zero(&self.module, part, -self.shifts[k], ring);
        for i in 0..part.len() {
            m.set(self.offsets[k] + i, i, BigInt::one());
        }
        m
    }

    /// Assembles a map `source -> target` of degree `degree` (in the sum gradings) from
    /// blocks `(target summand, source summand, map between the summands)`.
    pub fn assemble(
        source: &DirectSum,
        target: &DirectSum,
        degree: i64,
        ring: Ring,
        blocks: &[(usize, usize, &GradedMap)],
    ) -> Result<GradedMap> {
        let mut out = GradedMap::zero(&source.module, &target.module, degree, ring);
        for &(t, s, b) in blocks {
            if !same_module(&b.source, &source.parts[s]) || !same_module(&b.target, &target.parts[t]) {
                return Err(Error::Shape(format!("block ({t},{s}) has the wrong endpoints")));
            }
            let eff = b.degree + target.shifts[t] - source.shifts[s];
            if !b.is_zero() && eff != degree {
                return Err(Error::Shape(format!(
                    "block ({t},{s}) has degree {eff} in the sum grading, expected {degree}"
                )));
            }
            for (i, j, v) in b.entries() {
                out.add_entry(source.offsets[s] + i, target.offsets[t] + j, v);
            }
        }
        Ok(out)
    }

    /// Block (target summand t, source summand s) of a map between sums.
    pub fn block_of(source: &DirectSum, target: &DirectSum, map: &GradedMap, t: usize, s: usize) -> GradedMap {
        let sp = &source.parts[s];
        let tp = &target.parts[t];
        let deg = map.degree - target.shifts[t] + source.shifts[s];
        let mut out = GradedMap::zero(sp, tp, deg, map.ring);
        let (so, to) = (source.offsets[s], target.offsets[t]);
        for (i, j, v) in map.entries() {
            if i >= so && i < so + sp.len() && j >= to && j < to + tp.len() {
                out.set(i - so, j - to, v.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(g: &[(&str, i64)]) -> ModuleRef {
        GradedModule::from_gens(g.iter().map(|(n, d)| (n.to_string(), *d))).unwrap().into_ref()
    }

    #[test]
    fn compose_and_blocks() {
        let m = module(&[("a", 0), ("b", 1), ("c", 2)]);
        let mut d = GradedMap::zero(&m, &m, -1, Ring::Integers);
        d.add_by_name("b", "a", &BigInt::from(2)).unwrap();
        d.add_by_name("c", "b", &BigInt::from(3)).unwrap();
        assert!(d.inhomogeneous_entry().is_none());
        let dd = d.compose(&d);
        assert_eq!(dd.degree, -2);
        assert_eq!(dd.entry(2, 0), BigInt::from(6));
        assert_eq!(d.block(1), IntMatrix::from_rows(&[vec![2]]));
    }

    #[test]
    fn field_reduction() {
        let m = module(&[("a", 0), ("b", 1)]);
        let mut d = GradedMap::zero(&m, &m, -1, Ring::Prime(2));
        d.add_by_name("b", "a", &BigInt::from(2)).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn sums_round_trip() {
        let a = module(&[("x", 0)]);
        let b = module(&[("x", 0), ("y", 2)]);
        let s = DirectSum::new(&[("a.", &a, 0), ("b.", &b, -1)]).unwrap();
        assert_eq!(s.module.degree(2), 1);
        let inj = s.inject(1, Ring::Integers);
        let pr = s.project(1, Ring::Integers);
        assert_eq!(pr.compose(&inj), GradedMap::identity(&b, Ring::Integers));
    }
}
