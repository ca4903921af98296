use std::collections::BTreeSet;

use num_traits::One;

use super::complex::ChainComplex;
use super::homology::{induced_between, is_chain_map, HomologyCache};
use super::map::GradedMap;
use super::window::Completeness;
use crate::error::{Error, Result};
use crate::exactlin::{exact_at, invariant_factors, GroupHom, Solver};

/// `0 → A --f--> B --g--> C → 0` at the chain level.
#[derive(Clone, Debug)]
pub struct ShortExact<'a> {
    pub a: &'a ChainComplex,
    pub b: &'a ChainComplex,
    pub c: &'a ChainComplex,
    pub f: &'a GradedMap,
    pub g: &'a GradedMap,
}

impl<'a> ShortExact<'a> {
    pub fn new(
        a: &'a ChainComplex,
        b: &'a ChainComplex,
        c: &'a ChainComplex,
        f: &'a GradedMap,
        g: &'a GradedMap,
    ) -> Result<Self> {
        let s = ShortExact { a, b, c, f, g };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        if !is_chain_map(self.f, self.a, self.b) || !is_chain_map(self.g, self.b, self.c) {
            return Err(Error::NotAChainMap("short exact sequence legs".into()));
        }
        if !self.g.compose(self.f).is_zero() {
            return Err(Error::Shape("g∘f ≠ 0".into()));
        }
        let ring = self.a.ring;
        let unit = |m: &crate::exactlin::IntMatrix| invariant_factors(m, ring).iter().all(|x| x.is_one() || *x == -num_bigint::BigInt::one());
        for k in self.b.module.degrees() {
            let fk = self.f.block(k - self.f.degree);
            let gk = self.g.block(k);
            let (na, nc) = (fk.cols(), gk.rows());
            let nb = self.b.module.in_degree(k).len();
            let rf = invariant_factors(&fk, ring).len();
            let rg = invariant_factors(&gk, ring).len();
            if rf != na || rg != nc || rf + rg != nb || !unit(&fk) || !unit(&gk) {
                return Err(Error::Shape(format!("not short exact in degree {k}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LesSpot {
    A,
    B,
    C,
}

/// One position of the long exact sequence, indexed by the degree of the middle group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub spot: LesSpot,
    pub degree: i64,
    pub exact: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LesCertificate {
    pub nodes: Vec<LesNode>,
}

impl LesCertificate {
    pub fn all_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn checked(&self) -> usize {
        self.nodes.len()
    }

    pub fn first_failure(&self) -> Option<&LesNode> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

/// Homology maps of a short exact sequence, including the snake connecting map.
pub struct LesMaps<'s, 'a> {
    pub ses: &'s ShortExact<'a>,
    pub ha: HomologyCache<'a>,
    pub hb: HomologyCache<'a>,
    pub hc: HomologyCache<'a>,
}

impl<'s, 'a> LesMaps<'s, 'a> {
    pub fn new(ses: &'s ShortExact<'a>) -> Self {
        LesMaps { ha: HomologyCache::new(ses.a), hb: HomologyCache::new(ses.b), hc: HomologyCache::new(ses.c), ses }
    }

    /// Degree of δ: H(C) → H(A).
    pub fn delta_degree(&self) -> i64 {
        -1 - self.ses.f.degree - self.ses.g.degree
    }

    pub fn f_at(&self, n: i64) -> Result<GroupHom> {
        induced_between(self.ses.f, &self.ha, &self.hb, n)
    }

    pub fn g_at(&self, k: i64) -> Result<GroupHom> {
        induced_between(self.ses.g, &self.hb, &self.hc, k)
    }

    /// δ at C-degree `m`: lift along g, apply ∂, pull back along f.
    pub fn delta_at(&self, m: i64) -> Result<GroupHom> {
        let (f, g) = (self.ses.f, self.ses.g);
        let kb = m - g.degree;
        let na = kb - 1 - f.degree;
        let pc = self.hc.at(m)?;
        let pa = self.ha.at(na)?;
        let ring = self.ses.a.ring;
        let lift_g = Solver::new(&g.block(kb), ring);
        let lift_f = Solver::new(&f.block(na), ring);
        let d_b = self.ses.b.d.block(kb);
        let mut images = Vec::with_capacity(pc.len());
        for k in 0..pc.len() {
            let z = pc.rep(k);
            let b = lift_g.solve(&z).ok_or_else(|| Error::Shape(format!("g not onto in degree {kb}")))?;
            let db = d_b.apply(&b);
            let a = lift_f.solve(&db).ok_or_else(|| Error::Shape(format!("∂b not in the image of f, degree {}", kb - 1)))?;
            images.push(pa.class_of(&a)?);
        }
        Ok(GroupHom::from_images(&pc, &pa, &images))
    }
}

fn all_degrees(ses: &ShortExact) -> BTreeSet<i64> {
    let (fa, gb) = (ses.f.degree, ses.g.degree);
    let mut out = BTreeSet::new();
    for k in ses.b.module.degrees() {
        out.extend([k - 1, k, k + 1]);
    }
    for n in ses.a.module.degrees() {
        out.extend([n + fa - 1, n + fa, n + fa + 1]);
    }
    for m in ses.c.module.degrees() {
        out.extend([m - gb - 1, m - gb, m - gb + 1]);
    }
    out
}

/// Checks exactness of the long exact sequence wherever all three groups involved sit in safe degrees.
pub fn verify_exact_at(
    ses: &ShortExact,
    ca: &Completeness,
    cb: &Completeness,
    cc: &Completeness,
) -> Result<LesCertificate> {
    let maps = LesMaps::new(ses);
    let (al, be) = (ses.f.degree, ses.g.degree);
    let dl = maps.delta_degree();
    let mut nodes = Vec::new();
    for k in all_degrees(ses) {
        // B_k: A_{k−α} → B_k → C_{k+β}
        if ca.is_safe(k - al) && cb.is_safe(k) && cc.is_safe(k + be) {
            let ok = exact_at(&maps.f_at(k - al)?, &maps.g_at(k)?);
            nodes.push(LesNode { spot: LesSpot::B, degree: k, exact: ok });
        }
        // C_m with m = k + β: B_k → C_m → A_{m+δ}
        let m = k + be;
        if cb.is_safe(k) && cc.is_safe(m) && ca.is_safe(m + dl) && cb.is_safe(k - 1) {
            let ok = exact_at(&maps.g_at(k)?, &maps.delta_at(m)?);
            nodes.push(LesNode { spot: LesSpot::C, degree: m, exact: ok });
        }
        // A_n with n = k − α − 1 ... uses δ from C_{n−δ}
        let n = k - al;
        let mc = n - dl;
        if cc.is_safe(mc) && ca.is_safe(n) && cb.is_safe(k) && cb.is_safe(mc - be) && cb.is_safe(mc - be - 1) {
            let ok = exact_at(&maps.delta_at(mc)?, &maps.f_at(n)?);
            nodes.push(LesNode { spot: LesSpot::A, degree: n, exact: ok });
        }
    }
    Ok(LesCertificate { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::module::GradedModule;
    use crate::exactlin::Ring;
    use num_bigint::BigInt;

    // 0 → Z[0] → (Z[1] --2--> Z[0]) → Z[1] → 0: δ is multiplication by 2.
    fn ses_parts() -> (ChainComplex, ChainComplex, ChainComplex, GradedMap, GradedMap) {
        let r = Ring::Integers;
        let ma = GradedModule::from_gens([("a", 0)]).unwrap().into_ref();
        let mb = GradedModule::from_gens([("b0", 0), ("b1", 1)]).unwrap().into_ref();
        let mc = GradedModule::from_gens([("c", 1)]).unwrap().into_ref();
        let a = ChainComplex::new("A", ma.clone(), GradedMap::zero(&ma, &ma, -1, r));
        let mut db = GradedMap::zero(&mb, &mb, -1, r);
        db.add_entry(1, 0, &BigInt::from(2));
        let b = ChainComplex::new("B", mb.clone(), db);
        let c = ChainComplex::new("C", mc.clone(), GradedMap::zero(&mc, &mc, -1, r));
        let mut f = GradedMap::zero(&ma, &mb, 0, r);
        f.add_entry(0, 0, &BigInt::one());
        let mut g = GradedMap::zero(&mb, &mc, 0, r);
        g.add_entry(1, 0, &BigInt::one());
        (a, b, c, f, g)
    }

    #[test]
    fn snake_map_is_multiplication() {
        let (a, b, c, f, g) = ses_parts();
        let ses = ShortExact::new(&a, &b, &c, &f, &g).unwrap();
        let maps = LesMaps::new(&ses);
        let d = maps.delta_at(1).unwrap();
        assert_eq!(d.matrix.get(0, 0).magnitude(), &BigInt::from(2).magnitude().clone());
        let cert = verify_exact_at(&ses, &Completeness::full(), &Completeness::full(), &Completeness::full()).unwrap();
        assert!(cert.checked() >= 3);
        assert!(cert.all_exact());
    }

    #[test]
    fn non_saturated_inclusion_rejected() {
        let (a, b, c, mut f, g) = ses_parts();
        f.set(0, 0, BigInt::from(3));
        assert!(ShortExact::new(&a, &b, &c, &f, &g).is_err());
    }
}
