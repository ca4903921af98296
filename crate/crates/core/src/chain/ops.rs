use num_traits::Zero;

use super::complex::ChainComplex;
use super::homology::is_chain_map;
use super::map::{DirectSum, GradedMap};
use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Ring, Solver};

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 0
}

/// Block-diagonal sum of complexes; circle actions are summed when every summand has them.
pub fn direct_sum(parts: &[(&str, &ChainComplex)]) -> Result<(ChainComplex, DirectSum)> {
    let ring = parts.first().map_or(Ring::Integers, |p| p.1.ring);
    let summands: Vec<(&str, &_, i64)> = parts.iter().map(|(p, c)| (*p, &c.module, 0)).collect();
    let sum = DirectSum::new(&summands)?;
    let diag = |pick: &dyn Fn(&ChainComplex) -> Option<&GradedMap>, deg: i64| -> Result<Option<GradedMap>> {
        let mut blocks = Vec::new();
        for (k, (_, c)) in parts.iter().enumerate() {
            match pick(c) {
                Some(m) => blocks.push((k, k, m)),
                None => return Ok(None),
            }
        }
        Ok(Some(DirectSum::assemble(&sum, &sum, deg, ring, &blocks)?))
    };
    let d = diag(&|c| Some(&c.d), -1)?.expect("differentials always present");
    let name = parts.iter().map(|(_, c)| c.name.as_str()).collect::<Vec<_>>().join("+");
    let mut out = ChainComplex::new(name, sum.module.clone(), d);
    out.u = diag(&|c| c.u.as_ref(), -2)?;
    out.y = diag(&|c| c.y.as_ref(), 1)?;
    Ok((out, sum))
}

/// Mapping cone `A ⊕ B` with differential `[[∂_A, 0], [f, ∂_B]]` for an odd chain map
/// `f: A -> B` of degree -1.
pub fn cone(a: &ChainComplex, b: &ChainComplex, f: &GradedMap, prefixes: (&str, &str)) -> Result<(ChainComplex, DirectSum)> {
    if f.degree != -1 || !is_chain_map(f, a, b) {
        return Err(Error::NotAChainMap(format!("cone map {} -> {}", a.name, b.name)));
    }
    let sum = DirectSum::new(&[(prefixes.0, &a.module, 0), (prefixes.1, &b.module, 0)])?;
    let d = DirectSum::assemble(&sum, &sum, -1, a.ring, &[(0, 0, &a.d), (1, 0, f), (1, 1, &b.d)])?;
    let c = ChainComplex::new(format!("cone({})", f_name(a, b)), sum.module.clone(), d);
    c.validate().into_result()?;
    Ok((c, sum))
}

fn f_name(a: &ChainComplex, b: &ChainComplex) -> String {
    format!("{}->{}", a.name, b.name)
}

/// Tensor product with the raw factor actions exposed for the caller to combine.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub complex: ChainComplex,
    /// `U₁ ⊗ 1`
    pub left_u: Option<GradedMap>,
    /// `1 ⊗ U₂`
    pub right_u: Option<GradedMap>,
    /// `Y₁ ⊗ 1`
    pub left_y: Option<GradedMap>,
    /// `(−1)^{|a|} a ⊗ Y₂ b`
    pub right_y: Option<GradedMap>,
    pub left_len: usize,
    pub right_len: usize,
}

impl TensorProduct {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right_len + j
    }
}

pub fn tensor_name(a: &str, b: &str) -> String {
    format!("{a}*{b}")
}

/// `C1 ⊗ C2` with differential `∂₁⊗1 + (−1)^{deg a} 1⊗∂₂`.
pub fn tensor(c1: &ChainComplex, c2: &ChainComplex) -> Result<TensorProduct> {
    if c1.module.modulus() != 0 || c2.module.modulus() != 0 {
        return Err(Error::ModulusUnsupported);
    }
    if c1.ring != c2.ring {
        return Err(Error::RingMismatch(c1.ring.to_string(), c2.ring.to_string()));
    }
    let ring = c1.ring;
    let (m1, m2) = (&c1.module, &c2.module);
    let (n1, n2) = (m1.len(), m2.len());
    let mut m = GradedModule::new(0);
    for i in 0..n1 {
        for j in 0..n2 {
            m.push(tensor_name(m1.name(i), m2.name(j)), m1.degree(i) + m2.degree(j))?;
        }
    }
    let m = m.into_ref();
    let idx = |i: usize, j: usize| i * n2 + j;
    let left = |f: &GradedMap| {
        let mut out = GradedMap::zero(&m, &m, f.degree, ring);
        for (s, t, v) in f.entries() {
            for j in 0..n2 {
                out.add_entry(idx(s, j), idx(t, j), v);
            }
        }
        out
    };
    let right = |f: &GradedMap, signed: bool| {
        let mut out = GradedMap::zero(&m, &m, f.degree, ring);
        for (s, t, v) in f.entries() {
            for i in 0..n1 {
                let neg = signed && m1.degree(i).rem_euclid(2) == 1;
                let c = if neg { -v.clone() } else { v.clone() };
                out.add_entry(idx(i, s), idx(i, t), &c);
            }
        }
        out
    };
    let d = left(&c1.d).add(&right(&c2.d, true));
    let complex = ChainComplex::new(tensor_name(&c1.name, &c2.name), m.clone(), d);
    Ok(TensorProduct {
        left_u: c1.u.as_ref().map(left),
        right_u: c2.u.as_ref().map(|u| right(u, false)),
        left_y: c1.y.as_ref().map(left),
        right_y: c2.y.as_ref().map(|y| right(y, true)),
        complex,
        left_len: n1,
        right_len: n2,
    })
}

/// Suspension `ΣX` (degrees +1, differential −∂) together with σ: ΣX → X of degree −1
/// and its inverse. The U-action is carried over unchanged.
pub fn suspension(c: &ChainComplex) -> Result<(ChainComplex, GradedMap, GradedMap)> {
    let m = c.module.prefixed("s").shifted(1).into_ref();
    let d = c.d.neg().retarget(&m, &m, -1);
    let mut s = ChainComplex::new(format!("s{}", c.name), m.clone(), d);
    if let Some(u) = &c.u {
        s.u = Some(u.retarget(&m, &m, -2));
    }
    let sigma = GradedMap::from_matrix(&m, &c.module, -1, c.ring, IntMatrix::identity(m.len()));
    let sigma_inv = GradedMap::from_matrix(&c.module, &m, 1, c.ring, IntMatrix::identity(m.len()));
    Ok((s, sigma, sigma_inv))
}

/// `f − g = ∂₂ K + (−1)^{deg f} K ∂₁`.
pub fn verify_homotopy(f: &GradedMap, g: &GradedMap, k: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
    if f.degree != g.degree || k.degree != f.degree + 1 {
        return false;
    }
    let lhs = f.sub(g);
    let a = tgt.d.compose(k);
    let b = k.compose(&src.d);
    let rhs = if parity(f.degree) { a.add(&b) } else { a.sub(&b) };
    lhs == rhs
}

/// A degree +1 map `H` with `∂H + H∂ = Id`, when one exists.
pub fn contracting_homotopy(c: &ChainComplex) -> Result<Option<GradedMap>> {
    c.require_z_graded()?;
    let ring = c.ring;
    let mut h = GradedMap::zero(&c.module, &c.module, 1, ring);
    let Some((lo, hi)) = c.module.degree_span() else { return Ok(Some(h)) };
    for j in lo..=hi {
        let here = c.module.in_degree(j);
        if here.is_empty() {
            continue;
        }
        let up = c.module.in_degree(j + 1);
        let below = c.module.in_degree(j - 1);
        let d_up = c.d.block(j + 1);
        let solver = Solver::new(&d_up, ring);
        // rhs = Id − H_{j−1} ∂_j on degree j
        let d_here = c.d.block(j);
        let h_below = h.matrix().submatrix(&here, &below);
        let rhs = IntMatrix::identity(here.len()).sub(&h_below.mul(&d_here));
        for (col, &src) in here.iter().enumerate() {
            let Some(x) = solver.solve(&rhs.column(col)) else { return Ok(None) };
            for (r, v) in x.iter().enumerate() {
                if !v.is_zero() {
                    h.add_entry(src, up[r], v);
                }
            }
        }
    }
    let check = c.d.compose(&h).add(&h.compose(&c.d));
    Ok((check == GradedMap::identity(&c.module, ring).with_degree(0)).then_some(h))
}

/// Chain map with a homotopy witness for its failure to commute with U:
/// `φU₁ − U₂φ + (−1)^{deg φ} K∂₁ + ∂₂K = 0`.
#[derive(Clone, Debug)]
pub struct PMorphism {
    pub phi: GradedMap,
    pub k: GradedMap,
}

impl PMorphism {
    pub fn identity(c: &ChainComplex) -> PMorphism {
        PMorphism {
            phi: GradedMap::identity(&c.module, c.ring),
            k: GradedMap::zero(&c.module, &c.module, -1, c.ring),
        }
    }

    pub fn degree(&self) -> i64 {
        self.phi.degree
    }

    /// Residual of the U-law; zero exactly when the witness is valid.
    pub fn u_defect(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<GradedMap> {
        let u1 = src.u_action()?;
        let u2 = tgt.u_action()?;
        let a = self.phi.compose(u1).sub(&u2.compose(&self.phi));
        let kd = self.k.compose(&src.d);
        let dk = tgt.d.compose(&self.k);
        let signed = if parity(self.degree()) { kd } else { kd.neg() };
        Ok(a.add(&signed).add(&dk))
    }

    pub fn validate(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<()> {
        if self.k.degree != self.degree() - 1 {
            return Err(Error::NotAPMorphism("witness has the wrong degree".into()));
        }
        if !is_chain_map(&self.phi, src, tgt) {
            return Err(Error::NotAPMorphism("underlying map is not a chain map".into()));
        }
        let r = self.u_defect(src, tgt)?;
        if let Some((s, t)) = r.first_entry() {
            let (a, b) = r.witness(s, t);
            return Err(Error::NotAPMorphism(format!("U-law fails on {a} -> {b}")));
        }
        Ok(())
    }

    /// `(Ψ∘Φ, K_Ψ Φ + (−1)^{deg Ψ} Ψ K_Φ)`.
    pub fn then(&self, psi: &PMorphism) -> PMorphism {
        let a = psi.k.compose(&self.phi);
        let b = psi.phi.compose(&self.k);
        let k = if parity(psi.degree()) { a.add(&b) } else { a.sub(&b) };
        PMorphism { phi: psi.phi.compose(&self.phi), k }
    }

    pub fn add(&self, other: &PMorphism) -> PMorphism {
        PMorphism { phi: self.phi.add(&other.phi), k: self.k.add(&other.k) }
    }
}
