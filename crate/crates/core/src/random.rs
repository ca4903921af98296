//! Seeded random instances: complexes with circle actions, p-morphisms and equivariant maps.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{ChainComplex, GradedMap, GradedModule, ModuleRef, PMorphism};
use crate::exactlin::{rank_and_kernel_over, IntMatrix, Ring};

pub use rand::SeedableRng;
pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub max_rank: usize,
    pub deg_lo: i64,
    pub deg_hi: i64,
    pub bound: i64,
    pub ring: Ring,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_rank: 6, deg_lo: -6, deg_hi: 6, bound: 3, ring: Ring::Integers }
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn within(m: &GradedMap, bound: i64) -> bool {
    m.max_abs() <= big(bound)
}

/// Random module with at least one generator.
pub fn random_module(r: &mut Rand, p: &Params, prefix: &str) -> ModuleRef {
    let n = r.gen_range(1..=p.max_rank);
    // cluster degrees so that differentials have room to act
    let centre = r.gen_range(p.deg_lo + 1..=p.deg_hi - 1);
    let mut m = GradedModule::new(0);
    for i in 0..n {
        let d = (centre + r.gen_range(-1..=2)).clamp(p.deg_lo, p.deg_hi);
        m.push(format!("{prefix}{i}"), d).expect("fresh names");
    }
    m.into_ref()
}

/// Random differential: elementary pieces `b ↦ c·a` conjugated by a unimodular degree-preserving change of basis.
pub fn random_differential(r: &mut Rand, m: &ModuleRef, p: &Params) -> GradedMap {
    let ring = p.ring;
    for _ in 0..64 {
        let mut d0 = GradedMap::zero(m, m, -1, ring);
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.shuffle(r);
        let mut used = vec![false; m.len()];
        for &b in &order {
            if used[b] || r.gen_bool(0.15) {
                continue;
            }
            let cands: Vec<usize> = (0..m.len()).filter(|&a| !used[a] && a != b && m.degree(a) == m.degree(b) - 1).collect();
            if let Some(&a) = cands.choose(r) {
                let c = *[1, 1, 2, 3, -1, -2].choose(r).unwrap();
                d0.add_entry(b, a, &big(c));
                used[a] = true;
                used[b] = true;
            }
        }
        let (pm, pinv) = random_unimodular(r, m, ring);
        let d = pm.compose(&d0).compose(&pinv);
        if within(&d, p.bound) {
            return d;
        }
    }
    GradedMap::zero(m, m, -1, ring)
}

/// Degree-0 automorphism and its inverse built from elementary row operations.
fn random_unimodular(r: &mut Rand, m: &ModuleRef, ring: Ring) -> (GradedMap, GradedMap) {
    let mut pm = GradedMap::identity(m, ring);
    let mut pinv = GradedMap::identity(m, ring);
    let ops = r.gen_range(0..=2 * m.len());
    for _ in 0..ops {
        let i = r.gen_range(0..m.len());
        let j = r.gen_range(0..m.len());
        if i == j || m.degree(i) != m.degree(j) {
            continue;
        }
        let t = *[1, -1].choose(r).unwrap();
        // e_j ↦ e_j + t e_i on the basis side
        let mut e = GradedMap::identity(m, ring);
        e.add_entry(j, i, &big(t));
        let mut einv = GradedMap::identity(m, ring);
        einv.add_entry(j, i, &big(-t));
        pm = e.compose(&pm);
        pinv = pinv.compose(&einv);
    }
    (pm, pinv)
}

/// Integral basis of the maps satisfying a linear constraint, where `shapes` lists the
/// unknown maps and `constraint` returns the maps that must vanish.
pub fn solution_basis(
    shapes: &[(ModuleRef, ModuleRef, i64)],
    ring: Ring,
    constraint: &dyn Fn(&[GradedMap]) -> Vec<GradedMap>,
) -> Vec<Vec<GradedMap>> {
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for (k, (s, t, deg)) in shapes.iter().enumerate() {
        for i in 0..s.len() {
            for j in t.in_degree(s.degree(i) + deg) {
                slots.push((k, i, j));
            }
        }
    }
    let zero_maps = || -> Vec<GradedMap> { shapes.iter().map(|(s, t, d)| GradedMap::zero(s, t, *d, ring)).collect() };
    let mut columns = Vec::with_capacity(slots.len());
    let mut rows = 0;
    for &(k, i, j) in &slots {
        let mut maps = zero_maps();
        maps[k].add_entry(i, j, &BigInt::from(1));
        let out = constraint(&maps);
        let mut col = Vec::new();
        for o in &out {
            let (nr, nc) = (o.target.len(), o.source.len());
            let mut flat = vec![BigInt::zero(); nr * nc];
            for (s, t, v) in o.entries() {
                flat[t * nc + s] = v.clone();
            }
            col.extend(flat);
        }
        rows = col.len();
        columns.push(col);
    }
    if slots.is_empty() {
        return Vec::new();
    }
    let a = IntMatrix::from_columns(rows, &columns);
    let (_, ker) = rank_and_kernel_over(&a, ring);
    (0..ker.cols())
        .map(|c| {
            let v = ker.column(c);
            let mut maps = zero_maps();
            for (x, &(k, i, j)) in v.iter().zip(&slots) {
                if !x.is_zero() {
                    maps[k].add_entry(i, j, x);
                }
            }
            maps
        })
        .collect()
}

/// Small random combination of basis solutions, rejected if any entry exceeds the bound.
pub fn random_solution(r: &mut Rand, basis: &[Vec<GradedMap>], zero: Vec<GradedMap>, bound: i64, tries: usize) -> Vec<GradedMap> {
    if basis.is_empty() {
        return zero;
    }
    for _ in 0..tries {
        let mut acc = zero.clone();
        let terms = r.gen_range(1..=basis.len().min(3));
        for _ in 0..terms {
            let b = basis.choose(r).unwrap();
            let c = *[1i64, -1, 1, 2].choose(r).unwrap();
            for (a, m) in acc.iter_mut().zip(b) {
                *a = a.add(&m.scale(c));
            }
        }
        if acc.iter().all(|m| within(m, bound)) {
            return acc;
        }
    }
    zero
}

/// Random U-action commuting with `d`.
pub fn random_u(r: &mut Rand, m: &ModuleRef, d: &GradedMap, p: &Params) -> GradedMap {
    let basis = solution_basis(&[(m.clone(), m.clone(), -2)], p.ring, &|x| vec![d.compose(&x[0]).sub(&x[0].compose(d))]);
    let zero = vec![GradedMap::zero(m, m, -2, p.ring)];
    random_solution(r, &basis, zero, p.bound, 20).remove(0)
}

/// Random Y-action anticommuting with `d` and squaring to zero.
pub fn random_y(r: &mut Rand, m: &ModuleRef, d: &GradedMap, p: &Params) -> GradedMap {
    let basis = solution_basis(&[(m.clone(), m.clone(), 1)], p.ring, &|x| vec![d.compose(&x[0]).add(&x[0].compose(d))]);
    for _ in 0..20 {
        let zero = vec![GradedMap::zero(m, m, 1, p.ring)];
        let y = random_solution(r, &basis, zero, p.bound, 5).remove(0);
        if y.compose(&y).is_zero() {
            return y;
        }
    }
    GradedMap::zero(m, m, 1, p.ring)
}

/// Random validated complex with the requested actions.
pub fn random_complex(r: &mut Rand, p: &Params, name: &str, with_u: bool, with_y: bool) -> ChainComplex {
    let m = random_module(r, p, name);
    let d = random_differential(r, &m, p);
    let mut c = ChainComplex::new(name, m.clone(), d.clone());
    if with_u {
        c.u = Some(random_u(r, &m, &d, p));
    }
    if with_y {
        c.y = Some(random_y(r, &m, &d, p));
    }
    debug_assert!(c.validate().passed());
    c
}

/// Random p-morphism `src -> tgt` of the given degree.
pub fn random_pmorphism(r: &mut Rand, src: &ChainComplex, tgt: &ChainComplex, degree: i64, bound: i64) -> PMorphism {
    let ring = src.ring;
    let (d1, d2) = (src.d.clone(), tgt.d.clone());
    let (u1, u2) = (src.u.clone().expect("U"), tgt.u.clone().expect("U"));
    let even = degree.rem_euclid(2) == 0;
    let shapes =
        [(src.module.clone(), tgt.module.clone(), degree), (src.module.clone(), tgt.module.clone(), degree - 1)];
    let basis = solution_basis(&shapes, ring, &|x| {
        let (phi, k) = (&x[0], &x[1]);
        let chain = phi.compose(&d1).sub(&d2.compose(phi).sign(even));
        let kd = k.compose(&d1);
        let law = phi.compose(&u1).sub(&u2.compose(phi)).add(&kd.sign(even)).add(&d2.compose(k));
        vec![chain, law]
    });
    let zero = shapes.iter().map(|(s, t, d)| GradedMap::zero(s, t, *d, ring)).collect();
    let mut v = random_solution(r, &basis, zero, bound, 20);
    let k = v.pop().unwrap();
    PMorphism { phi: v.pop().unwrap(), k }
}

/// Random chain map `src -> tgt` that intertwines the Y-actions with the Koszul sign.
pub fn random_y_map(r: &mut Rand, src: &ChainComplex, tgt: &ChainComplex, degree: i64, bound: i64) -> GradedMap {
    let ring = src.ring;
    let (d1, d2) = (src.d.clone(), tgt.d.clone());
    let (y1, y2) = (src.y.clone().expect("Y"), tgt.y.clone().expect("Y"));
    let even = degree.rem_euclid(2) == 0;
    let basis = solution_basis(&[(src.module.clone(), tgt.module.clone(), degree)], ring, &|x| {
        let f = &x[0];
        vec![f.compose(&d1).sub(&d2.compose(f).sign(even)), f.compose(&y1).sub(&y2.compose(f).sign(even))]
    });
    let zero = vec![GradedMap::zero(&src.module, &tgt.module, degree, ring)];
    random_solution(r, &basis, zero, bound, 20).remove(0)
}

/// Largest absolute coefficient in a complex's structure maps.
pub fn max_coefficient(c: &ChainComplex) -> BigInt {
    let mut m = c.d.max_abs();
    for a in [&c.u, &c.y].into_iter().flatten() {
        m = m.max(a.max_abs());
    }
    m.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_complexes_validate() {
        let mut r = rng(7);
        let mut nonzero = 0;
        for i in 0..40 {
            let p = Params { ring: if i % 2 == 0 { Ring::Integers } else { Ring::Prime(2) }, ..Params::default() };
            let c = random_complex(&mut r, &p, "g", true, true);
            assert!(c.validate().passed());
            assert!(max_coefficient(&c) <= big(3));
            nonzero += (!c.d.is_zero()) as usize;
        }
        assert!(nonzero > 10);
    }

    #[test]
    fn generated_pmorphisms_validate() {
        let mut r = rng(11);
        let p = Params::default();
        for _ in 0..10 {
            let a = random_complex(&mut r, &p, "a", true, false);
            let b = random_complex(&mut r, &p, "b", true, false);
            let f = random_pmorphism(&mut r, &a, &b, 0, 3);
            f.validate(&a, &b).unwrap();
        }
    }
}
