use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{homology, homology_in, tensor, tensor_name, ChainComplex, Completeness, GradedMap, GradedModule, HomologyTable, Window};
use crate::circle::{e_name, e_y, s_u, s_u_completeness, su_name, truncate, Flavor, ShiftReport};
use crate::error::{Error, Result};
use crate::exactlin::Ring;

/// Uniform degree shift of the first connected-sum case.
pub const CASE1_SHIFT: i64 = 1;

/// `C₁ ⊗ C₂` with `U_⊔ = U₁⊗1 − 1⊗U₂`.
pub fn product_complex(c1: &ChainComplex, c2: &ChainComplex) -> Result<ChainComplex> {
    c1.validate().into_result()?;
    c2.validate().into_result()?;
    c1.u_action()?;
    c2.u_action()?;
    let t = tensor(c1, c2)?;
    let u = t.left_u.expect("checked").sub(&t.right_u.expect("checked"));
    t.complex.with_u(u).validated()
}

/// `S_{U_⊔}` of a product: `D_⊔ = [[∂_⊔, 0], [U_⊔, −∂_⊔]]`.
pub fn s_u_sum(p: &ChainComplex) -> Result<ChainComplex> {
    s_u(p)
}

fn model_name(y: bool, k: i64) -> String {
    if y {
        format!("y2u2^{k}")
    } else {
        format!("u2^{k}")
    }
}

/// `K[u₂, y₂]` up to `u₂`-exponent `n`, with `∂ = 0` and `U₂` the multiplication by `u₂`.
pub fn case1_model(ring: Ring, n: i64) -> Result<ChainComplex> {
    let mut m = GradedModule::new(0);
    for k in 0..=n {
        m.push(model_name(false, k), -2 * k)?;
        m.push(model_name(true, k), 1 - 2 * k)?;
    }
    let m = m.into_ref();
    let mut u = GradedMap::zero(&m, &m, -2, ring);
    for k in 0..n {
        for y in [false, true] {
            u.add_by_name(&model_name(y, k), &model_name(y, k + 1), &BigInt::one())?;
        }
    }
    Ok(ChainComplex::new("M2", m.clone(), GradedMap::zero(&m, &m, -1, ring)).with_u(u))
}

/// `H_j(C) ⊕ H_{j−1}(C)`, the homology of `C ⊗ Λ[y₂]`.
fn with_exterior(h: &HomologyTable) -> HomologyTable {
    let mut groups = BTreeMap::new();
    for (&j, g) in &h.groups {
        for k in [j, j + 1] {
            let cur = groups.remove(&k).unwrap_or_default();
            groups.insert(k, g.direct_sum(&cur));
        }
    }
    HomologyTable { groups }
}

/// Homology of `S_{U_⊔}(C₁ ⊗ K[u₂, y₂])` against `H(C₁) ⊗ Λ[y₂]`, compared on window-safe degrees.
pub fn case1_check(c1: &ChainComplex, n: i64, window: &Window) -> Result<ShiftReport> {
    let model = case1_model(c1.ring, n)?;
    let p = product_complex(c1, &model)?;
    let s = s_u_sum(&p)?;
    // the model is complete from degree −2n up; the tensor inherits that from the finite factor
    let pc = Completeness::at_least(-2 * n).tensor_finite(&c1.module.degrees());
    let safe = s_u_completeness(&pc).safe_in(window.degrees());
    let left = homology_in(&s, &safe)?;
    let right = with_exterior(&homology(c1, None)?);
    Ok(ShiftReport::compare(left, safe, right))
}

fn v_name(n: i64) -> String {
    format!("u1^{n}")
}

/// Entry-exact comparison of `S_{U_⊔}(V^∘(u₁) ⊗ C)` with `E^∘(S_{−U}(C))` on the window,
/// under `(u₁ⁿ ⊗ c)|ε ↔ c|ε ⊗ uⁿ`.
pub fn case2_check(c: &ChainComplex, flavor: Flavor, window: &Window) -> Result<bool> {
    c.validate().into_result()?;
    let ring = c.ring;
    let mut neg = c.clone();
    neg.u = Some(c.u_action()?.neg());
    let right = e_y(&s_u(&neg)?, flavor, window)?;
    let exps: Vec<i64> = right.index.keys().map(|k| k.1).collect();
    let (Some(&lo), Some(&hi)) = (exps.iter().min(), exps.iter().max()) else {
        return Ok(true);
    };

    let mut vm = GradedModule::new(0);
    for n in (lo..=hi).filter(|&n| flavor.has_exponent(n)) {
        vm.push(v_name(n), -2 * n)?;
    }
    let vm = vm.into_ref();
    let mut vu = GradedMap::zero(&vm, &vm, -2, ring);
    for n in lo..hi {
        if let (Some(a), Some(b)) = (vm.index_of(&v_name(n)), vm.index_of(&v_name(n + 1))) {
            vu.add_entry(a, b, &BigInt::one());
        }
    }
    let v = ChainComplex::new(format!("V{}", flavor.tag()), vm.clone(), GradedMap::zero(&vm, &vm, -1, ring)).with_u(vu);
    let left = truncate(&s_u_sum(&product_complex(&v, c)?)?, window)?;

    let rc = &right.complex;
    let mut phi = vec![usize::MAX; left.module.len()];
    let mut seen = 0;
    for (g, n) in right.index.keys().copied() {
        let base = c.module.name(g % c.module.len());
        let y = g >= c.module.len();
        let ln = su_name(&tensor_name(&v_name(n), base), y);
        let rn = e_name(&su_name(base, y), n);
        let (Some(a), Ok(b)) = (left.module.index_of(&ln), rc.module.lookup(&rn)) else {
            return Err(Error::IdentificationFailed(format!("{rn} has no partner {ln}")));
        };
        if left.module.degree(a) != rc.module.degree(b) {
            return Err(Error::IdentificationFailed(format!("degree of {ln} vs {rn}")));
        }
        phi[a] = b;
        seen += 1;
    }
    if seen != left.module.len() {
        return Err(Error::IdentificationFailed(format!("{} vs {} generators", left.module.len(), seen)));
    }
    let mut moved = GradedMap::zero(&rc.module, &rc.module, -1, ring);
    for (s, t, x) in left.d.entries() {
        moved.add_entry(phi[s], phi[t], x);
    }
    if let Some((s, t)) = moved.sub(&rc.d).first_entry() {
        let (sn, tn) = rc.d.witness(s, t);
        return Err(Error::IdentificationFailed(format!(
            "d({sn}) at {tn}: {} vs {}",
            moved.entry(s, t),
            rc.d.entry(s, t)
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_complex, rng, Params};

    fn z(name: &str, gens: &[(&str, i64)], d: &[(&str, &str, i64)]) -> ChainComplex {
        let m = GradedModule::from_gens(gens.iter().copied()).unwrap().into_ref();
        let mut dm = GradedMap::zero(&m, &m, -1, Ring::Integers);
        for &(s, t, v) in d {
            dm.add_by_name(s, t, &BigInt::from(v)).unwrap();
        }
        ChainComplex::new(name, m.clone(), dm).with_u(GradedMap::zero(&m, &m, -2, Ring::Integers))
    }

    fn point() -> ChainComplex {
        z("pt", &[("e", 0)], &[])
    }

    fn table(t: &HomologyTable) -> Vec<(i64, String)> {
        t.nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect()
    }

    #[test]
    fn product_with_point_is_the_factor() {
        let c1 = z("ab", &[("a", 1), ("b", 0)], &[("a", "b", 3)]);
        let p = product_complex(&c1, &point()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.d.entry(0, 1), BigInt::from(3));
        assert!(p.u.unwrap().is_zero());
    }

    #[test]
    fn case1_model_gives_minus_u2() {
        let m = case1_model(Ring::Integers, 2).unwrap();
        let p = product_complex(&point(), &m).unwrap();
        let u = p.u.unwrap();
        let (s, t) = (p.module.lookup(&tensor_name("e", "u2^0")).unwrap(), p.module.lookup(&tensor_name("e", "u2^1")).unwrap());
        assert_eq!(u.entry(s, t), BigInt::from(-1));
    }

    #[test]
    fn case1_point() {
        let r = case1_check(&point(), 4, &Window::new(-6, 6).unwrap()).unwrap();
        assert_eq!(table(&r.left), vec![(1, "Z".into()), (2, "Z".into())]);
        assert_eq!(r.shift, Some(CASE1_SHIFT));
    }

    #[test]
    fn case1_acyclic_and_torsion() {
        let w = Window::new(-6, 6).unwrap();
        let acyc = case1_check(&z("ab", &[("a", 1), ("b", 0)], &[("a", "b", 1)]), 4, &w).unwrap();
        assert!(acyc.vacuous && acyc.left.is_zero());
        let tors = case1_check(&z("ab", &[("a", 1), ("b", 0)], &[("a", "b", 2)]), 4, &w).unwrap();
        assert_eq!(table(&tors.left), vec![(1, "Z/2".into()), (2, "Z/2".into())]);
        assert!(tors.consistent_with(CASE1_SHIFT));
    }

    #[test]
    fn case2_hat_and_point_minus() {
        let w = Window::new(-4, -1).unwrap();
        assert!(case2_check(&point(), Flavor::Minus, &w).unwrap());
        // the hand expansion: one entry e|1*u^1 -> e|y*u^2 with coefficient 1
        let right = e_y(&s_u(&point()).unwrap(), Flavor::Minus, &w).unwrap();
        assert_eq!(right.complex.len(), 4);
        let es: Vec<_> = right.complex.d.entries().map(|(s, t, v)| (right.complex.d.witness(s, t), v.clone())).collect();
        assert_eq!(es, vec![(("e|1*u^1".to_string(), "e|y*u^2".to_string()), BigInt::one())]);
        let c = z("ab", &[("a", 1), ("b", 0)], &[("a", "b", 2)]);
        assert!(case2_check(&c, Flavor::Hat, &Window::new(-3, 4).unwrap()).unwrap());
    }

    #[test]
    fn case2_random_all_flavors() {
        let mut g = rng(11);
        let p = Params { max_rank: 4, ..Params::default() };
        for _ in 0..10 {
            let c = random_complex(&mut g, &p, "C", true, false);
            for f in Flavor::ALL {
                assert!(case2_check(&c, f, &Window::new(-8, 8).unwrap()).unwrap(), "{f}");
            }
        }
    }
}
