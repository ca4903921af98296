use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{
    verify_exact_at, ChainComplex, Completeness, GradedMap, GradedModule, LesCertificate, ModuleRef, ShortExact,
    Window,
};
use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// Finite Laurent polynomial in `U`, as exponent -> coefficient.
pub type Laurent = BTreeMap<i64, BigInt>;

/// A complex over `K[U, U⁻¹]` on named generators, `deg U = −2`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub name: String,
    pub ring: Ring,
    pub module: ModuleRef,
    /// (src, dst) -> coefficient of `dst` in `∂ src`
    pub entries: BTreeMap<(usize, usize), Laurent>,
}

impl FilteredComplex {
    pub fn new(name: impl Into<String>, ring: Ring, module: ModuleRef) -> Self {
        FilteredComplex { name: name.into(), ring, module, entries: BTreeMap::new() }
    }

    /// Adds `coeff·U^exp` to the `src -> dst` entry; the term must satisfy
    /// `deg dst = deg src − 1 + 2·exp`.
    pub fn add_term(&mut self, src: &str, dst: &str, exp: i64, coeff: impl Into<BigInt>) -> Result<()> {
        let (s, t) = (self.module.lookup(src)?, self.module.lookup(dst)?);
        if self.module.degree(t) != self.module.degree(s) - 1 + 2 * exp {
            return Err(Error::Validation {
                law: "degree homogeneity".into(),
                src: src.into(),
                dst: format!("{dst} (U^{exp})"),
            });
        }
        let c = self.ring.reduce(coeff.into());
        let slot = self.entries.entry((s, t)).or_default();
        let v = slot.entry(exp).or_insert_with(BigInt::zero);
        *v = self.ring.reduce(&*v + c);
        if v.is_zero() {
            slot.remove(&exp);
        }
        if slot.is_empty() {
            self.entries.remove(&(s, t));
        }
        Ok(())
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, i64, &BigInt)> {
        self.entries.iter().flat_map(|(&(s, t), p)| p.iter().map(move |(&e, c)| (s, t, e, c)))
    }

    /// `∂² = 0` over the Laurent ring; the first nonzero entry is returned as a witness.
    pub fn check_square(&self) -> Result<()> {
        let mut sq: BTreeMap<(usize, usize), Laurent> = BTreeMap::new();
        for (s, m, e1, c1) in self.terms() {
            for (&(m2, t), p) in self.entries.range((m, 0)..(m + 1, 0)) {
                debug_assert_eq!(m2, m);
                for (&e2, c2) in p {
                    *sq.entry((s, t)).or_default().entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
                }
            }
        }
        for ((s, t), p) in sq {
            if p.values().any(|c| !self.ring.reduce(c.clone()).is_zero()) {
                return Err(Error::Validation {
                    law: "∂² = 0".into(),
                    src: self.module.name(s).into(),
                    dst: self.module.name(t).into(),
                });
            }
        }
        Ok(())
    }

    /// First term with a negative exponent.
    pub fn negative_term(&self) -> Option<(usize, usize, i64)> {
        self.terms().find(|t| t.2 < 0).map(|(s, t, e, _)| (s, t, e))
    }
}

/// Every exponent of the differential is nonnegative, so `CM⁻` is a subcomplex.
pub fn check_positivity(f: &FilteredComplex) -> bool {
    f.negative_term().is_none()
}

fn cm_name(g: &str, n: i64) -> String {
    format!("{g}.U^{n}")
}

/// The four flavors over `K`, each cut to the window, with `U` as the u-action.
#[derive(Clone, Debug)]
pub struct CmFlavors {
    pub window: Window,
    pub minus: ChainComplex,
    pub infinity: ChainComplex,
    pub plus: ChainComplex,
    pub hat: ChainComplex,
    /// `0 → CM⁻ → CM^∞ → CM⁺ → 0`
    pub first: LesCertificate,
    /// `0 → U·CM⁻ → CM⁻ → ĈM → 0`
    pub second: LesCertificate,
}

impl CmFlavors {
    pub fn passed(&self) -> bool {
        self.first.all_exact() && self.second.all_exact()
    }

    pub fn complexes(&self) -> [(&'static str, &ChainComplex); 4] {
        [("minus", &self.minus), ("inf", &self.infinity), ("plus", &self.plus), ("hat", &self.hat)]
    }
}

/// Which `U`-powers a flavor keeps.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Range {
    Minus,
    Infinity,
    Plus,
    Hat,
}

impl Range {
    fn keeps(self, n: i64) -> bool {
        match self {
            Range::Minus => n >= 0,
            Range::Infinity => true,
            Range::Plus => n < 0,
            Range::Hat => n == 0,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Range::Minus => "CM-",
            Range::Infinity => "CMinf",
            Range::Plus => "CM+",
            Range::Hat => "CMhat",
        }
    }
}

/// Expansion `g·Uⁿ` of degree `deg g − 2n`, for the generators landing in the window.
fn expand(f: &FilteredComplex, range: Range, w: &Window) -> Result<ChainComplex> {
    let mut cells = Vec::new();
    for (i, g) in f.module.gens().iter().enumerate() {
        // deg − 2n ∈ [lo, hi]
        let n_lo = (g.degree - w.hi + 1).div_euclid(2);
        let n_hi = (g.degree - w.lo).div_euclid(2);
        for n in (n_lo..=n_hi).filter(|&n| range.keeps(n) && w.contains(g.degree - 2 * n)) {
            cells.push((g.degree - 2 * n, i, n));
        }
    }
    cells.sort();
    let mut m = GradedModule::new(0);
    let mut index = BTreeMap::new();
    for &(deg, i, n) in &cells {
        index.insert((i, n), m.push(cm_name(f.module.name(i), n), deg)?);
    }
    let m = m.into_ref();
    let mut d = GradedMap::zero(&m, &m, -1, f.ring);
    let mut u = GradedMap::zero(&m, &m, -2, f.ring);
    for (&(i, n), &k) in &index {
        for (&(s, t), p) in f.entries.range((i, 0)..(i + 1, 0)) {
            debug_assert_eq!(s, i);
            for (&e, c) in p {
                if let Some(&j) = index.get(&(t, n + e)) {
                    d.add_entry(k, j, c);
                }
            }
        }
        if let Some(&j) = index.get(&(i, n + 1)) {
            u.add_entry(k, j, &BigInt::one());
        }
    }
    Ok(ChainComplex::new(format!("{}({})", range.tag(), f.name), m, d).with_u(u))
}

/// Map sending each generator to the generator of the same name, when present.
fn by_name(src: &ChainComplex, tgt: &ChainComplex, degree: i64) -> Result<GradedMap> {
    let mut out = GradedMap::zero(&src.module, &tgt.module, degree, src.ring);
    for (k, g) in src.module.gens().iter().enumerate() {
        if let Some(j) = tgt.module.index_of(&g.name) {
            out.add_entry(k, j, &BigInt::one());
        }
    }
    Ok(out)
}

/// `g·Uⁿ ↦ g·Uⁿ⁺¹`.
fn u_shift(src: &ChainComplex, tgt: &ChainComplex) -> Result<GradedMap> {
    let mut out = GradedMap::zero(&src.module, &tgt.module, -2, src.ring);
    for (k, h) in src.module.gens().iter().enumerate() {
        let (base, n) = h.name.rsplit_once(".U^").expect("expanded generator");
        let n: i64 = n.parse().expect("exponent");
        if let Some(j) = tgt.module.index_of(&cm_name(base, n + 1)) {
            out.add_entry(k, j, &BigInt::one());
        }
    }
    Ok(out)
}

fn window_completeness(w: &Window) -> Completeness {
    Completeness::only(w.degrees().collect::<BTreeSet<_>>())
}

/// Expands a positive filtered complex to the four flavors and certifies both long exact sequences.
pub fn cm_flavors(f: &FilteredComplex, window: &Window) -> Result<CmFlavors> {
    if let Some((s, t, e)) = f.negative_term() {
        return Err(Error::PositivityViolated {
            src: f.module.name(s).into(),
            dst: f.module.name(t).into(),
            exponent: e,
        });
    }
    f.check_square()?;
    let minus = expand(f, Range::Minus, window)?;
    let infinity = expand(f, Range::Infinity, window)?;
    let plus = expand(f, Range::Plus, window)?;
    let hat = expand(f, Range::Hat, window)?;
    let wc = window_completeness(window);

    let incl = by_name(&minus, &infinity, 0)?;
    let proj = by_name(&infinity, &plus, 0)?;
    let ses = ShortExact::new(&minus, &infinity, &plus, &incl, &proj)?;
    let first = verify_exact_at(&ses, &wc, &wc, &wc)?;

    let up = Window { lo: window.lo + 2, hi: window.hi + 2 };
    let minus_up = expand(f, Range::Minus, &up)?;
    let u = u_shift(&minus_up, &minus)?;
    let to_hat = by_name(&minus, &hat, 0)?;
    let ses = ShortExact::new(&minus_up, &minus, &hat, &u, &to_hat)?;
    let second = verify_exact_at(&ses, &window_completeness(&up), &wc, &wc)?;

    Ok(CmFlavors { window: *window, minus, infinity, plus, hat, first, second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology_in, induced_between, HomologyCache};

    fn filtered(gens: &[(&str, i64)], terms: &[(&str, &str, i64, i64)]) -> FilteredComplex {
        let m = GradedModule::from_gens(gens.iter().copied()).unwrap().into_ref();
        let mut f = FilteredComplex::new("F", Ring::Integers, m);
        for &(s, t, e, c) in terms {
            f.add_term(s, t, e, c).unwrap();
        }
        f
    }

    fn nonzero(c: &ChainComplex, w: &Window) -> Vec<(i64, String)> {
        let safe = window_completeness(w).safe_in(w.degrees());
        homology_in(c, &safe).unwrap().nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect()
    }

    #[test]
    fn positivity_examples() {
        assert!(check_positivity(&filtered(&[("a", 1), ("b", 0)], &[("a", "b", 0, 1)])));
        assert!(!check_positivity(&filtered(&[("a", 1), ("b", -2)], &[("a", "b", -1, 1)])));
        let f = filtered(&[("c", 0), ("a", 0), ("b", 1)], &[("a", "b", 1, 1)]);
        assert!(check_positivity(&f));
    }

    #[test]
    fn homogeneity_is_enforced() {
        let m = GradedModule::from_gens([("a", 1), ("b", 0)]).unwrap().into_ref();
        let mut f = FilteredComplex::new("F", Ring::Integers, m);
        assert!(f.add_term("a", "b", 1, 1).is_err());
    }

    #[test]
    fn single_generator_flavors() {
        let f = filtered(&[("c", 0)], &[]);
        let w = Window::new(-8, 4).unwrap();
        let cm = cm_flavors(&f, &w).unwrap();
        assert!(cm.passed());
        assert!(cm.first.checked() > 0 && cm.second.checked() > 0);
        let z = |js: &[i64]| js.iter().map(|&j| (j, "Z".to_string())).collect::<Vec<_>>();
        assert_eq!(nonzero(&cm.minus, &w), z(&[-6, -4, -2, 0]));
        assert_eq!(nonzero(&cm.hat, &w), z(&[0]));
        assert_eq!(nonzero(&cm.plus, &w), z(&[2]));
        assert_eq!(nonzero(&cm.infinity, &w), z(&[-6, -4, -2, 0, 2]));
    }

    #[test]
    fn hat_drops_positive_exponents() {
        let f = filtered(&[("a", 0), ("b", 1)], &[("a", "b", 1, 1)]);
        let cm = cm_flavors(&f, &Window::new(-6, 4).unwrap()).unwrap();
        assert!(cm.hat.d.is_zero());
        assert!(!cm.minus.d.is_zero());
        assert!(cm.passed());
    }

    #[test]
    fn negative_exponent_is_rejected() {
        let f = filtered(&[("a", 1), ("b", -2)], &[("a", "b", -1, 1)]);
        assert!(matches!(cm_flavors(&f, &Window::new(-4, 4).unwrap()), Err(Error::PositivityViolated { exponent: -1, .. })));
    }

    #[test]
    fn square_zero_is_checked() {
        let f = filtered(&[("a", 2), ("b", 1), ("c", 0)], &[("a", "b", 0, 1), ("b", "c", 0, 1)]);
        assert!(f.check_square().is_err());
        let g = filtered(&[("a", 2), ("b", 1), ("b2", 1), ("c", 0)], &[("a", "b", 0, 1), ("a", "b2", 0, 1), ("b", "c", 0, 1), ("b2", "c", 0, -1)]);
        assert!(g.check_square().is_ok());
    }

    #[test]
    fn u_commutes_with_inclusion_on_homology() {
        let f = filtered(&[("a", 0), ("b", 1), ("x", 0), ("y", 1)], &[("b", "a", 0, 2), ("x", "y", 1, 1)]);
        let w = Window::new(-6, 4).unwrap();
        let cm = cm_flavors(&f, &w).unwrap();
        let incl = by_name(&cm.minus, &cm.infinity, 0).unwrap();
        let (um, ui) = (cm.minus.u.as_ref().unwrap(), cm.infinity.u.as_ref().unwrap());
        assert_eq!(ui.compose(&incl), incl.compose(um));
        let (hm, hi) = (HomologyCache::new(&cm.minus), HomologyCache::new(&cm.infinity));
        for j in -3..=1 {
            let a = induced_between(&ui.compose(&incl), &hm, &hi, j).unwrap();
            let b = induced_between(&incl.compose(um), &hm, &hi, j).unwrap();
            assert!(a.same_as(&b));
        }
    }
}
