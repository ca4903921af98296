use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{ChainComplex, Completeness, GradedMap, GradedModule, ModuleRef, Window};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Minus,
    Infinity,
    Plus,
    Hat,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Minus, Flavor::Infinity, Flavor::Plus, Flavor::Hat];

    pub fn tag(self) -> &'static str {
        match self {
            Flavor::Minus => "minus",
            Flavor::Infinity => "inf",
            Flavor::Plus => "plus",
            Flavor::Hat => "hat",
        }
    }

    /// Whether `u^n` is a basis element of the coefficient module.
    pub fn has_exponent(self, n: i64) -> bool {
        match self {
            Flavor::Minus => n >= 1,
            Flavor::Infinity => true,
            Flavor::Plus => n <= 0,
            Flavor::Hat => n == 0,
        }
    }

    pub fn bounded(self) -> bool {
        self == Flavor::Hat
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minus" | "-" => Ok(Flavor::Minus),
            "inf" | "infinity" => Ok(Flavor::Infinity),
            "plus" | "+" => Ok(Flavor::Plus),
            "hat" => Ok(Flavor::Hat),
            _ => Err(format!("unknown flavor `{s}`")),
        }
    }
}

/// Position of `g*u^n` in a flavor module, keyed by base generator and exponent.
pub type EIndex = BTreeMap<(usize, i64), usize>;

pub fn e_name(g: &str, n: i64) -> String {
    format!("{g}*u^{n}")
}

/// `E^∘(X)` cut down to a degree window, with the u-action as `U`.
#[derive(Clone, Debug)]
pub struct EComplex {
    pub complex: ChainComplex,
    pub flavor: Flavor,
    pub window: Window,
    pub completeness: Completeness,
    pub base: ModuleRef,
    /// (base generator, exponent) -> generator index
    pub index: EIndex,
}

impl EComplex {
    pub fn safe_degrees(&self) -> Vec<i64> {
        self.completeness.safe_in(self.window.degrees())
    }

    pub fn locate(&self, g: usize, n: i64) -> Option<usize> {
        self.index.get(&(g, n)).copied()
    }
}

/// Exponents `n` in the flavor with `deg g − 2n` inside the window.
fn exponents(flavor: Flavor, deg: i64, w: &Window) -> impl Iterator<Item = i64> {
    // deg − 2n ∈ [lo, hi]  ⇔  n ∈ [ceil((deg−hi)/2), floor((deg−lo)/2)]
    let lo_n = (deg - w.hi).div_euclid(2) + ((deg - w.hi).rem_euclid(2) != 0) as i64;
    let hi_n = (deg - w.lo).div_euclid(2);
    (lo_n..=hi_n).filter(move |&n| flavor.has_exponent(n))
}

pub fn e_module(base: &ModuleRef, flavor: Flavor, window: &Window) -> Result<(ModuleRef, EIndex)> {
    if base.modulus() != 0 {
        return Err(Error::ModulusUnsupported);
    }
    let mut m = GradedModule::new(0);
    let mut index = BTreeMap::new();
    // ordered by output degree, then base order
    let mut cells: Vec<(i64, usize, i64)> = Vec::new();
    for (i, g) in base.gens().iter().enumerate() {
        for n in exponents(flavor, g.degree, window) {
            cells.push((g.degree - 2 * n, i, n));
        }
    }
    cells.sort();
    for (deg, i, n) in cells {
        let k = m.push(e_name(base.name(i), n), deg)?;
        index.insert((i, n), k);
    }
    Ok((m.into_ref(), index))
}

/// Completeness of the windowed `E^∘(X)` from that of `X`.
pub fn e_completeness(base: &ModuleRef, x: &Completeness, flavor: Flavor, window: &Window) -> Completeness {
    let (n_lo, n_hi) = match flavor {
        Flavor::Minus => (Some(1), None),
        Flavor::Infinity => (None, None),
        Flavor::Plus => (None, Some(0)),
        Flavor::Hat => (Some(0), Some(0)),
    };
    let in_full = |k: i64| base.gens().iter().any(|g| (g.degree - k).rem_euclid(2) == 0 && flavor.has_exponent((g.degree - k) / 2));
    let mut out = BTreeSet::new();
    for k in window.lo - 1..=window.hi + 1 {
        let slice_ok = window.contains(k) || !in_full(k);
        if slice_ok && x.complete_along(k, n_lo, n_hi) {
            out.insert(k);
        }
    }
    Completeness::only(out)
}

/// Per source generator, the (target, coefficient) pairs of a map.
pub(crate) fn adjacency(f: &GradedMap) -> Vec<Vec<(usize, BigInt)>> {
    let mut adj = vec![Vec::new(); f.source.len()];
    for (s, t, v) in f.entries() {
        adj[s].push((t, v.clone()));
    }
    adj
}

/// `(X ⊗ V^∘, ∂⊗1 + Y⊗u)` on the window.
pub fn e_y(x: &ChainComplex, flavor: Flavor, window: &Window) -> Result<EComplex> {
    e_y_partial(x, &Completeness::full(), flavor, window)
}

pub fn e_y_partial(x: &ChainComplex, xc: &Completeness, flavor: Flavor, window: &Window) -> Result<EComplex> {
    let y = x.y_action()?;
    let (m, index) = e_module(&x.module, flavor, window)?;
    let ring = x.ring;
    let mut d = GradedMap::zero(&m, &m, -1, ring);
    let mut u = GradedMap::zero(&m, &m, -2, ring);
    let dx = adjacency(&x.d);
    let yx = adjacency(y);
    for (&(g, n), &k) in &index {
        for (t, v) in &dx[g] {
            if let Some(&j) = index.get(&(*t, n)) {
                d.add_entry(k, j, v);
            }
        }
        for (t, v) in &yx[g] {
            if let Some(&j) = index.get(&(*t, n + 1)) {
                d.add_entry(k, j, v);
            }
        }
        if let Some(&j) = index.get(&(g, n + 1)) {
            u.add_entry(k, j, &BigInt::one());
        }
    }
    let complex = ChainComplex::new(format!("E{}({})", flavor.tag(), x.name), m, d).with_u(u);
    Ok(EComplex {
        complex,
        flavor,
        window: *window,
        completeness: e_completeness(&x.module, xc, flavor, window),
        base: x.module.clone(),
        index,
    })
}

/// `φ⊗1` between two windowed flavor complexes; terms leaving the target window are dropped.
pub fn e_map(phi: &GradedMap, src: &EComplex, tgt: &EComplex) -> GradedMap {
    let mut out = GradedMap::zero(&src.complex.module, &tgt.complex.module, phi.degree, phi.ring);
    let adj = adjacency(phi);
    for (&(g, n), &k) in &src.index {
        for (t, v) in &adj[g] {
            if let Some(j) = tgt.locate(*t, n) {
                out.add_entry(k, j, v);
            }
        }
    }
    out
}

/// Multiplication by `u^shift` followed by the reindexing `u^n ↦ u^{n+shift}`, as a map of degree `−2·shift`.
pub fn u_power(src: &EComplex, tgt: &EComplex, shift: i64) -> GradedMap {
    let ring = src.complex.ring;
    let mut out = GradedMap::zero(&src.complex.module, &tgt.complex.module, -2 * shift, ring);
    for (&(g, n), &k) in &src.index {
        if let Some(j) = tgt.locate(g, n + shift) {
            out.add_entry(k, j, &BigInt::one());
        }
    }
    out
}

/// Window covering every class of a finite complex under any flavor functor.
pub fn default_window(x: &ModuleRef) -> Window {
    match x.degree_span() {
        Some((lo, hi)) => Window { lo: lo - 6, hi: hi + 6 },
        None => Window { lo: -2, hi: 2 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::circle::functor::s_u;
    use crate::exactlin::Ring;

    fn pt() -> ChainComplex {
        let m = GradedModule::from_gens([("e", 0)]).unwrap().into_ref();
        ChainComplex::new("pt", m.clone(), GradedMap::zero(&m, &m, -1, Ring::Integers))
            .with_u(GradedMap::zero(&m, &m, -2, Ring::Integers))
    }

    #[test]
    fn minus_of_point_is_one_class() {
        let s = s_u(&pt()).unwrap();
        let w = Window::new(-9, 9).unwrap();
        let e = e_y(&s, Flavor::Minus, &w).unwrap();
        assert!(e.complex.validate().passed());
        let h = homology(&e.complex, None).unwrap();
        let safe = e.safe_degrees();
        assert!(safe.contains(&-8) && safe.contains(&8));
        let nz: Vec<_> = h.restricted(&safe).nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect();
        assert_eq!(nz, vec![(-1, "Z".to_string())]);
    }

    #[test]
    fn hat_is_identity_functor() {
        let s = s_u(&pt()).unwrap();
        let e = e_y(&s, Flavor::Hat, &Window::new(-3, 3).unwrap()).unwrap();
        assert_eq!(e.complex.module.len(), s.module.len());
        assert_eq!(homology(&e.complex, None).unwrap(), homology(&s, None).unwrap());
    }

    #[test]
    fn infinity_with_zero_differential() {
        let m = GradedModule::from_gens([("a", 0), ("b", 1), ("c", 2)]).unwrap().into_ref();
        let x = ChainComplex::new("x", m.clone(), GradedMap::zero(&m, &m, -1, Ring::Integers))
            .with_y(GradedMap::zero(&m, &m, 1, Ring::Integers));
        let e = e_y(&x, Flavor::Infinity, &Window::new(-6, 6).unwrap()).unwrap();
        let h = homology(&e.complex, None).unwrap();
        for j in e.safe_degrees() {
            let want = if j.rem_euclid(2) == 0 { "Z^2" } else { "Z" };
            assert_eq!(h.get(j).to_string(), want, "degree {j}");
        }
    }

    #[test]
    fn plus_of_point() {
        let s = s_u(&pt()).unwrap();
        let e = e_y(&s, Flavor::Plus, &Window::new(-6, 10).unwrap()).unwrap();
        let h = homology(&e.complex, None).unwrap().restricted(&e.safe_degrees());
        let nz: Vec<_> = h.nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect();
        assert_eq!(nz, vec![(0, "Z".to_string())]);
    }
}
