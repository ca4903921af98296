use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{ChainComplex, Completeness, GradedMap, GradedModule, ModuleRef, PMorphism};
use crate::error::{Error, Result};

pub fn su_name(g: &str, y: bool) -> String {
    format!("{g}|{}", if y { "y" } else { "1" })
}

/// `M ⊗ K[y]`: generators `g|1` then `g|y`, the latter one degree higher.
pub fn su_module(m: &ModuleRef) -> Result<ModuleRef> {
    if m.modulus() != 0 {
        return Err(Error::ModulusUnsupported);
    }
    let mut out = GradedModule::new(0);
    for y in [false, true] {
        for g in m.gens() {
            out.push(su_name(&g.name, y), g.degree + y as i64)?;
        }
    }
    Ok(out.into_ref())
}

/// Places `a` on the `|1 -> |1` block, `c` on `|1 -> |y` and `b` on `|y -> |y`.
fn blocks(src: &ModuleRef, tgt: &ModuleRef, degree: i64, a: &GradedMap, c: Option<&GradedMap>, b: &GradedMap) -> GradedMap {
    let (ns, nt) = (a.source.len(), a.target.len());
    let mut out = GradedMap::zero(src, tgt, degree, a.ring);
    for (s, t, v) in a.entries() {
        out.add_entry(s, t, v);
    }
    for (s, t, v) in b.entries() {
        out.add_entry(ns + s, nt + t, v);
    }
    if let Some(c) = c {
        for (s, t, v) in c.entries() {
            out.add_entry(s, nt + t, v);
        }
    }
    out
}

/// `(C ⊗ K[y], ∂⊗ȷ + U⊗y)`, with Y the multiplication by `y`.
pub fn s_u(c: &ChainComplex) -> Result<ChainComplex> {
    let u = c.u_action()?;
    let m = su_module(&c.module)?;
    let d = blocks(&m, &m, -1, &c.d, Some(u), &c.d.neg());
    let n = c.module.len();
    let mut y = GradedMap::zero(&m, &m, 1, c.ring);
    for i in 0..n {
        y.add_entry(i, n + i, &BigInt::one());
    }
    Ok(ChainComplex::new(format!("S({})", c.name), m, d).with_y(y))
}

/// Completeness of `S_U(C)` given that of `C`.
pub fn s_u_completeness(c: &Completeness) -> Completeness {
    c.doubled()
}

/// `Φ⊗ȷ^{deg Φ} + K_Φ⊗y`.
pub fn s_u_map(p: &PMorphism, src: &ChainComplex, tgt: &ChainComplex) -> Result<GradedMap> {
    p.validate(src, tgt)?;
    Ok(s_u_map_unchecked(p, &su_module(&src.module)?, &su_module(&tgt.module)?))
}

pub(crate) fn s_u_map_unchecked(p: &PMorphism, sm: &ModuleRef, tm: &ModuleRef) -> GradedMap {
    let even = p.degree().rem_euclid(2) == 0;
    blocks(sm, tm, p.degree(), &p.phi, Some(&p.k), &p.phi.sign(even))
}

/// The y-free part `Φ⊗1` of a plain map, used where no witness is needed.
pub fn s_u_plain(phi: &GradedMap) -> Result<GradedMap> {
    let sm = su_module(&phi.source)?;
    let tm = su_module(&phi.target)?;
    let even = phi.degree.rem_euclid(2) == 0;
    Ok(blocks(&sm, &tm, phi.degree, phi, None, &phi.sign(even)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::exactlin::Ring;

    fn ab() -> ChainComplex {
        let m = GradedModule::from_gens([("a", 0), ("b", 2)]).unwrap().into_ref();
        let mut u = GradedMap::zero(&m, &m, -2, Ring::Integers);
        u.add_entry(1, 0, &BigInt::one());
        ChainComplex::new("ab", m.clone(), GradedMap::zero(&m, &m, -1, Ring::Integers)).with_u(u)
    }

    #[test]
    fn point_doubles() {
        let m = GradedModule::from_gens([("e", 0)]).unwrap().into_ref();
        let c = ChainComplex::new("pt", m.clone(), GradedMap::zero(&m, &m, -1, Ring::Integers))
            .with_u(GradedMap::zero(&m, &m, -2, Ring::Integers));
        let s = s_u(&c).unwrap();
        assert!(s.validate().passed());
        let h = homology(&s, None).unwrap();
        assert_eq!(h.get(0).to_string(), "Z");
        assert_eq!(h.get(1).to_string(), "Z");
    }

    #[test]
    fn u_kills_middle() {
        let s = s_u(&ab()).unwrap();
        assert!(s.validate().passed());
        let h = homology(&s, None).unwrap();
        let nz: Vec<_> = h.nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect();
        assert_eq!(nz, vec![(0, "Z".to_string()), (3, "Z".to_string())]);
    }

    #[test]
    fn identity_goes_to_identity() {
        let c = ab();
        let p = PMorphism::identity(&c);
        let f = s_u_map(&p, &c, &c).unwrap();
        let s = s_u(&c).unwrap();
        assert_eq!(f, GradedMap::identity(&s.module, c.ring));
    }
}
