use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{
    default_degrees, homology_in, induced_between, ChainComplex, Completeness, GradedMap, GradedModule, HomologyCache,
    HomologyTable, Window,
};
use crate::error::Result;

use super::flavor::{default_window, e_name, e_y, e_y_partial, EComplex, Flavor};
use super::functor::{s_u, s_u_completeness, su_name};

/// Shifts tried when matching two homology tables.
pub const SHIFT_RANGE: std::ops::RangeInclusive<i64> = -4..=4;

/// Measured shift of `H(E^∘ S_U(C))` against the E1 page.
pub fn pinned_shift_a(flavor: Flavor) -> Option<i64> {
    match flavor {
        Flavor::Minus => Some(1),
        Flavor::Plus | Flavor::Hat => Some(0),
        Flavor::Infinity => None,
    }
}

/// Measured shift of `H(S_U E⁻(X))` against `H(X)`.
pub const PINNED_SHIFT_B: i64 = -1;

/// Comparison of two homology tables up to a uniform degree shift:
/// left at `j` is matched with right at `j − shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub shift: Option<i64>,
    pub matching: Vec<i64>,
    pub vacuous: bool,
    pub degrees: Vec<i64>,
    pub left: HomologyTable,
    pub right: HomologyTable,
}

impl ShiftReport {
    /// Compares `left` on `degrees` with a right side known at every degree.
    pub fn compare(left: HomologyTable, degrees: Vec<i64>, right: HomologyTable) -> ShiftReport {
        let dset: BTreeSet<i64> = degrees.iter().copied().collect();
        let right_nz: Vec<i64> = right.nonzero().into_iter().map(|(j, _)| j).collect();
        let mut matching = Vec::new();
        for s in SHIFT_RANGE {
            let covered = right_nz.iter().all(|r| dset.contains(&(r + s)));
            if covered && degrees.iter().all(|&j| left.get(j) == right.get(j - s)) {
                matching.push(s);
            }
        }
        let vacuous = right_nz.is_empty() && degrees.iter().all(|&j| left.get(j).is_trivial());
        let shift = if matching.len() == 1 { Some(matching[0]) } else { None };
        ShiftReport { shift, matching, vacuous, degrees, left, right }
    }

    pub fn consistent_with(&self, s: i64) -> bool {
        self.vacuous || self.matching.contains(&s)
    }

    pub fn matched(&self) -> bool {
        self.vacuous || self.shift.is_some()
    }
}

/// Isomorphism check of an explicit comparison map on homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub degree: i64,
    pub checked: Vec<i64>,
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub shift: ShiftReport,
    pub map: Option<MapCheck>,
}

impl KoszulReport {
    pub fn passed(&self, pinned: Option<i64>) -> bool {
        let shift_ok = match pinned {
            Some(p) => self.shift.consistent_with(p),
            None => self.shift.vacuous,
        };
        shift_ok && self.map.as_ref().is_none_or(|m| m.iso)
    }
}

/// `C ⊗_{K[u]} V^∘` with differential `−∂`:
/// minus is `C·u`, plus keeps `C` in place, infinity vanishes for finite `C`,
/// hat is the derived quotient `cone(U)`.
pub fn e1_page(c: &ChainComplex, flavor: Flavor, window: Option<&Window>) -> Result<ChainComplex> {
    let u = c.u_action()?;
    let ring = c.ring;
    let name = format!("E1{}({})", flavor.tag(), c.name);
    let full = match flavor {
        Flavor::Minus => {
            let mut m = GradedModule::new(0);
            for g in c.module.gens() {
                m.push(e_name(&g.name, 1), g.degree - 2)?;
            }
            let m = m.into_ref();
            ChainComplex::new(name, m.clone(), c.d.neg().retarget(&m, &m, -1))
        }
        Flavor::Plus => {
            let m = c.module.clone();
            ChainComplex::new(name, m, c.d.neg())
        }
        Flavor::Infinity => {
            let m = GradedModule::new(0).into_ref();
            ChainComplex::new(name, m.clone(), GradedMap::zero(&m, &m, -1, ring))
        }
        Flavor::Hat => {
            let s = s_u(c)?;
            let n = c.module.len();
            let mut d = GradedMap::zero(&s.module, &s.module, -1, ring);
            for (a, b, v) in c.d.entries() {
                d.add_entry(a, b, &-v.clone());
                d.add_entry(n + a, n + b, v);
            }
            for (a, b, v) in u.entries() {
                d.add_entry(a, n + b, v);
            }
            ChainComplex::new(name, s.module.clone(), d)
        }
    };
    Ok(match window {
        None => full,
        Some(w) => truncate(&full, w)?,
    })
}

/// Brutal truncation to the generators with degree in the window.
pub fn truncate(c: &ChainComplex, w: &Window) -> Result<ChainComplex> {
    let mut m = GradedModule::new(0);
    for g in c.module.gens().iter().filter(|g| w.contains(g.degree)) {
        m.push(g.name.clone(), g.degree)?;
    }
    let m = m.into_ref();
    let mut out = ChainComplex::new(c.name.clone(), m.clone(), c.d.restrict(&m, &m));
    out.u = c.u.as_ref().map(|u| u.restrict(&m, &m));
    out.y = c.y.as_ref().map(|y| y.restrict(&m, &m));
    Ok(out)
}

fn iso_on(f: &GradedMap, src: &ChainComplex, tgt: &ChainComplex, degrees: &[i64]) -> Result<MapCheck> {
    let (cs, ct) = (HomologyCache::new(src), HomologyCache::new(tgt));
    let mut iso = true;
    for &j in degrees {
        iso &= induced_between(f, &cs, &ct, j)?.is_iso();
    }
    Ok(MapCheck { degree: f.degree, checked: degrees.to_vec(), iso })
}

/// Repeated application of `−U` to a basis vector, `(−U)^k e_g` for `k = 0..=max`.
fn neg_u_powers(u: &GradedMap, g: usize, max: i64) -> Vec<Vec<BigInt>> {
    let n = u.source.len();
    let mut v = vec![BigInt::zero(); n];
    v[g] = BigInt::one();
    let mut out = vec![v.clone()];
    for _ in 0..max.max(0) {
        v = u.apply(&v).into_iter().map(|x| -x).collect();
        out.push(v.clone());
    }
    out
}

/// `κ: E⁻S_U(X) → X`, `b|y ⊗ uⁿ ↦ (−U)^{n−1} b`, odd of degree +1.
pub fn kappa(c: &ChainComplex, e: &EComplex) -> Result<GradedMap> {
    let u = c.u_action()?;
    let n = c.module.len();
    let mut out = GradedMap::zero(&e.complex.module, &c.module, 1, c.ring);
    for (&(g, k), &idx) in &e.index {
        if g < n {
            continue;
        }
        let pw = neg_u_powers(u, g - n, k - 1);
        for (t, v) in pw[(k - 1) as usize].iter().enumerate() {
            if !v.is_zero() {
                out.add_entry(idx, t, v);
            }
        }
    }
    Ok(out)
}

/// `ι: X → E⁺S_U(X)`, `c ↦ Σ_k (−U)^k c|1 ⊗ u^{−k}`.
pub fn iota(c: &ChainComplex, e: &EComplex) -> Result<GradedMap> {
    let u = c.u_action()?;
    let mut out = GradedMap::zero(&c.module, &e.complex.module, 0, c.ring);
    let depth = c.module.len() as i64 + 1;
    for g in 0..c.module.len() {
        for (k, vec) in neg_u_powers(u, g, depth).iter().enumerate() {
            for (t, v) in vec.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if let Some(j) = e.locate(t, -(k as i64)) {
                    out.add_entry(g, j, v);
                }
            }
        }
    }
    Ok(out)
}

/// `λ: X → S_U E⁻(X)`, `z ↦ Yz⊗u|1 + z⊗u|y`, odd of degree −1.
pub fn lambda(x: &ChainComplex, e: &EComplex, su: &ChainComplex) -> Result<GradedMap> {
    let y = x.y_action()?;
    let half = e.complex.module.len();
    let mut out = GradedMap::zero(&x.module, &su.module, -1, x.ring);
    for g in 0..x.module.len() {
        if let Some(j) = e.locate(g, 1) {
            out.add_entry(g, half + j, &BigInt::one());
        }
    }
    for (s, t, v) in y.entries() {
        if let Some(j) = e.locate(t, 1) {
            out.add_entry(s, j, v);
        }
    }
    Ok(out)
}

/// `H(E^∘ S_U(C))` against the E1 page, plus the explicit Koszul map where one exists.
pub fn koszul_a(c: &ChainComplex, flavor: Flavor, window: Option<Window>) -> Result<KoszulReport> {
    c.validate().into_result()?;
    let w = window.unwrap_or_else(|| default_window(&c.module));
    let s = s_u(c)?;
    let e = e_y(&s, flavor, &w)?;
    let safe = e.safe_degrees();
    let left = homology_in(&e.complex, &safe)?;
    let page = e1_page(c, flavor, None)?;
    let right = homology_in(&page, &default_degrees(&page))?;
    let shift = ShiftReport::compare(left, safe.clone(), right);
    let map = match flavor {
        Flavor::Minus => {
            let k = kappa(c, &e)?;
            Some(iso_on(&k, &e.complex, c, &safe)?)
        }
        Flavor::Plus => {
            let i = iota(c, &e)?;
            let src: Vec<i64> = default_degrees(c).into_iter().filter(|j| safe.contains(j)).collect();
            Some(iso_on(&i, c, &e.complex, &src)?)
        }
        _ => None,
    };
    Ok(KoszulReport { shift, map })
}

/// `H(S_U E⁻(X))` against `H(X)`, plus the cycle map `λ`.
pub fn koszul_b(x: &ChainComplex, window: Option<Window>) -> Result<KoszulReport> {
    x.validate().into_result()?;
    let w = window.unwrap_or_else(|| default_window(&x.module));
    let e = e_y_partial(x, &Completeness::full(), Flavor::Minus, &w)?;
    let su = s_u(&e.complex)?;
    let comp = s_u_completeness(&e.completeness);
    let safe = comp.safe_in(w.lo..=w.hi + 1);
    let left = homology_in(&su, &safe)?;
    let right = homology_in(x, &default_degrees(x))?;
    let shift = ShiftReport::compare(left, safe.clone(), right);
    let l = lambda(x, &e, &su)?;
    let src: Vec<i64> = default_degrees(x).into_iter().filter(|j| safe.contains(&(j - 1))).collect();
    let map = Some(iso_on(&l, x, &su, &src)?);
    Ok(KoszulReport { shift, map })
}

/// Name of `g|ε ⊗ uⁿ` in `E^∘ S_U(C)`.
pub fn esu_name(g: &str, y: bool, n: i64) -> String {
    e_name(&su_name(g, y), n)
}
