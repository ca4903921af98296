use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{homology, ChainComplex, Completeness, GradedMap, GradedModule, ModuleRef};
use crate::circle::{s_u, s_u_completeness};
use crate::exactlin::AbelianGroup;
use crate::error::{Error, Result};
use crate::exactlin::Ring;
use crate::random::{random_complex, Params, Rand};

use super::assemble::assemble;
use super::components::{BalancedComponents, Comp, Kind, Part};

/// Reducible model `C_T ⊗ K[x, x⁻¹]` truncated to exponents `[−n, n]`.
#[derive(Clone, Debug)]
pub struct TowerParams {
    pub base: ChainComplex,
    pub n: i64,
    /// `(k, A)` adds `A(g)·x^{n+k}` to `Ū(g·xⁿ)`; `A` has degree `2k − 2` and commutes with `∂`.
    pub higher_terms: Vec<(i64, GradedMap)>,
}

impl TowerParams {
    pub fn new(base: ChainComplex, n: i64) -> TowerParams {
        TowerParams { base, n, higher_terms: Vec::new() }
    }
}

pub fn tower_name(g: &str, n: i64) -> String {
    format!("{g}.x^{n}")
}

/// Exact completeness of one tower summand on a finite range, with the tail that is known complete.
fn tower_completeness(base: &ModuleRef, n: i64, unstable: bool) -> Completeness {
    let (lo, hi) = base.degree_span().unwrap_or((0, 0));
    let lift = unstable as i64;
    let in_part = |e: i64| if unstable { e >= 1 } else { e <= 0 };
    let complete_at = |k: i64| {
        base.gens().iter().all(|g| {
            let diff = g.degree + lift - k;
            if diff.rem_euclid(2) != 0 {
                return true;
            }
            let e = diff / 2;
            !in_part(e) || (-n..=n).contains(&e)
        })
    };
    let (r_lo, r_hi) = (lo - 2 * n - 6, hi + 2 * n + 6);
    let finite: BTreeSet<i64> = (r_lo..=r_hi).filter(|&k| complete_at(k)).collect();
    let tail = if unstable { Completeness::at_least(r_hi + 1) } else { Completeness::at_most(r_lo - 1) };
    tail.with_degrees(finite)
}

pub fn tower_model(params: &TowerParams) -> Result<BalancedComponents> {
    let base = &params.base;
    base.validate().into_result()?;
    base.require_z_graded()?;
    let n = params.n;
    if n < 1 {
        return Err(Error::Shape("tower depth must be positive".into()));
    }
    let ring = base.ring;
    let bm = &base.module;
    let mut s = GradedModule::new(0);
    let mut u = GradedModule::new(0);
    for e in -n..=n {
        for g in bm.gens() {
            if e <= 0 {
                s.push(tower_name(&g.name, e), g.degree - 2 * e)?;
            } else {
                u.push(tower_name(&g.name, e), g.degree - 2 * e + 1)?;
            }
        }
    }
    let (s, u) = (s.into_ref(), u.into_ref());
    let o = GradedModule::new(0).into_ref();
    let mut bc = BalancedComponents::new(format!("tower({},{n})", base.name), ring, o, s, u)?;
    bc.complete.insert(Part::S, tower_completeness(bm, n, false));
    bc.complete.insert(Part::U, tower_completeness(bm, n, true));

    let locate = |e: i64, gi: usize| -> Option<(Part, usize)> {
        if !(-n..=n).contains(&e) {
            return None;
        }
        let name = tower_name(bm.name(gi), e);
        bc.part_of(&name)
    };
    let mut maps: std::collections::BTreeMap<Comp, GradedMap> = Default::default();
    let mut add = |kind: Kind, from: (Part, usize), to: (Part, usize), v: &BigInt| {
        let c = Comp { kind, src: from.0, dst: to.0 };
        let m = maps.entry(c).or_insert_with(|| bc.get(c));
        m.add_entry(from.1, to.1, v);
    };
    for e in -n..=n {
        for (gi, ti, v) in base.d.entries() {
            if let (Some(a), Some(b)) = (locate(e, gi), locate(e, ti)) {
                add(Kind::DBar, a, b, v);
            }
        }
        for gi in 0..bm.len() {
            if let (Some(a), Some(b)) = (locate(e, gi), locate(e + 1, gi)) {
                add(Kind::UBar, a, b, &BigInt::one());
            }
        }
        for (k, a_map) in &params.higher_terms {
            if *k < 1 || a_map.degree != 2 * k - 2 {
                return Err(Error::Shape("higher U-terms must raise the exponent".into()));
            }
            for (gi, ti, v) in a_map.entries() {
                if let (Some(a), Some(b)) = (locate(e, gi), locate(e + k, ti)) {
                    add(Kind::UBar, a, b, v);
                }
            }
        }
    }
    for (c, m) in maps {
        bc.set(c, m)?;
    }
    Ok(bc)
}

/// `H(S_U(C̄))` of a tower, split into safe degrees and truncation artifacts.
#[derive(Clone, Debug)]
pub struct TowerVanishing {
    pub safe: Vec<i64>,
    /// nonzero groups at safe degrees; empty when the tower behaves
    pub safe_classes: Vec<(i64, AbelianGroup)>,
    /// nonzero groups outside the safe degrees
    pub edge_classes: Vec<(i64, AbelianGroup)>,
}

impl TowerVanishing {
    pub fn vanishes(&self) -> bool {
        !self.safe.is_empty() && self.safe_classes.is_empty()
    }
}

pub fn tower_vanishing(params: &TowerParams) -> Result<TowerVanishing> {
    let b = assemble(&tower_model(params)?)?;
    let x = s_u(&b.bar)?;
    let comp = s_u_completeness(&b.bar_completeness());
    let h = homology(&x, None)?;
    let safe: Vec<i64> = h.groups.keys().copied().filter(|&j| comp.is_safe(j)).collect();
    let (mut safe_classes, mut edge_classes) = (Vec::new(), Vec::new());
    for (j, g) in h.nonzero() {
        if comp.is_safe(j) { &mut safe_classes } else { &mut edge_classes }.push((j, g.clone()));
    }
    Ok(TowerVanishing { safe, safe_classes, edge_classes })
}

/// Single generator of degree 0 with zero differential.
pub fn point(ring: Ring) -> ChainComplex {
    let m = GradedModule::from_gens([("e", 0)]).expect("one name").into_ref();
    ChainComplex::new("pt", m.clone(), GradedMap::zero(&m, &m, -1, ring))
}

/// Two generators in degrees 0 and 1 with zero differential.
pub fn pair(ring: Ring) -> ChainComplex {
    let m = GradedModule::from_gens([("e", 0), ("f", 1)]).expect("distinct names").into_ref();
    ChainComplex::new("pair", m.clone(), GradedMap::zero(&m, &m, -1, ring))
}

/// `a ∈ C^o`, `b ∈ C^s`, `c ∈ C^u` with `∂^o_s a = b`, `∂^u_o c = a`, `∂̄^u_s c = −b`.
pub fn coupled_triangle() -> Result<BalancedComponents> {
    let m = |n: &str, d: i64| GradedModule::from_gens([(n, d)]).map(|g| g.into_ref());
    let mut bc = BalancedComponents::new("triangle", Ring::Integers, m("a", 1)?, m("b", 0)?, m("c", 2)?)?;
    bc.add_entry("d:o->s".parse().unwrap(), "a", "b", 1)?;
    bc.add_entry("d:u->o".parse().unwrap(), "c", "a", 1)?;
    bc.add_entry("dbar:u->s".parse().unwrap(), "c", "b", -1)?;
    Ok(bc)
}

/// Point tower plus an irreducible `a` with `∂^o_s a = e·x⁰`.
pub fn coupled_tower_s(n: i64) -> Result<BalancedComponents> {
    let mut bc = tower_model(&TowerParams::new(point(Ring::Integers), n))?;
    let o = GradedModule::from_gens([("a", 1)])?.into_ref();
    bc = rebase_o(bc, o)?;
    bc.add_entry("d:o->s".parse().unwrap(), "a", &tower_name("e", 0), 1)?;
    bc.name = format!("tower-s({n})");
    Ok(bc)
}

/// Point tower plus an irreducible `a` with `∂^u_o (e·x¹) = a`.
pub fn coupled_tower_u(n: i64) -> Result<BalancedComponents> {
    let mut bc = tower_model(&TowerParams::new(point(Ring::Integers), n))?;
    let o = GradedModule::from_gens([("a", -2)])?.into_ref();
    bc = rebase_o(bc, o)?;
    bc.add_entry("d:u->o".parse().unwrap(), &tower_name("e", 1), "a", 1)?;
    bc.name = format!("tower-u({n})");
    Ok(bc)
}

/// Same components over a new `C^o` (which must start empty).
fn rebase_o(bc: BalancedComponents, o: ModuleRef) -> Result<BalancedComponents> {
    let mut out = BalancedComponents::new(bc.name.clone(), bc.ring, o, bc.s.clone(), bc.u.clone())?;
    out.complete = bc.complete.clone();
    out.complete.insert(Part::O, Completeness::full());
    for (c, m) in bc.components() {
        out.set(*c, m.clone())?;
    }
    Ok(out)
}

/// All three parts random, every cross component zero.
pub fn random_decoupled(r: &mut Rand, p: &Params) -> Result<BalancedComponents> {
    let co = random_complex(r, p, "o", true, false);
    let cs = random_complex(r, p, "s", true, false);
    let cu = random_complex(r, p, "u", true, false);
    let mut bc = BalancedComponents::new("decoupled", p.ring, co.module.clone(), cs.module.clone(), cu.module.clone())?;
    let set = |bc: &mut BalancedComponents, k: Kind, part: Part, m: &GradedMap| bc.set(Comp { kind: k, src: part, dst: part }, m.clone());
    set(&mut bc, Kind::D, Part::O, &co.d)?;
    set(&mut bc, Kind::U, Part::O, co.u.as_ref().unwrap())?;
    set(&mut bc, Kind::DBar, Part::S, &cs.d)?;
    set(&mut bc, Kind::UBar, Part::S, cs.u.as_ref().unwrap())?;
    set(&mut bc, Kind::DBar, Part::U, &cu.d)?;
    set(&mut bc, Kind::UBar, Part::U, cu.u.as_ref().unwrap())?;
    Ok(bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology_in;

    #[test]
    fn point_tower_shape() {
        let bc = tower_model(&TowerParams::new(point(Ring::Integers), 3)).unwrap();
        let b = assemble(&bc).unwrap();
        let degs: Vec<i64> = b.bar.module.gens().iter().map(|g| g.degree).collect::<BTreeSet<_>>().into_iter().collect();
        assert_eq!(degs, vec![-6, -4, -2, 0, 2, 4, 6]);
    }

    #[test]
    fn point_tower_vanishes_with_two_edge_classes() {
        for n in 2..=5 {
            let v = tower_vanishing(&TowerParams::new(point(Ring::Integers), n)).unwrap();
            assert!(v.vanishes(), "N={n}: {:?}", v.safe_classes);
            let expect_safe: Vec<i64> = (-2 * n + 1..2 * n + 1).collect();
            assert!(expect_safe.iter().all(|j| v.safe.contains(j)));
            let edges: Vec<(i64, String)> = v.edge_classes.iter().map(|(j, g)| (*j, g.to_string())).collect();
            assert_eq!(edges, vec![(-2 * n, "Z".into()), (2 * n + 1, "Z".into())]);
        }
    }

    #[test]
    fn two_torsion_per_level() {
        let m = GradedModule::from_gens([("a", 0), ("b", 1)]).unwrap().into_ref();
        let mut d = GradedMap::zero(&m, &m, -1, Ring::Integers);
        d.add_entry(1, 0, &BigInt::from(2));
        let base = ChainComplex::new("z2", m, d);
        let b = assemble(&tower_model(&TowerParams::new(base, 2)).unwrap()).unwrap();
        let comp = b.bar_completeness();
        let safe: Vec<i64> = (-8..=8).filter(|&j| comp.is_safe(j)).collect();
        assert!(!safe.is_empty());
        let h = homology_in(&b.bar, &safe).unwrap();
        for j in safe {
            let expect = if j.rem_euclid(2) == 0 { "Z/2" } else { "0" };
            assert_eq!(h.get(j).to_string(), expect, "degree {j}");
        }
    }
}
