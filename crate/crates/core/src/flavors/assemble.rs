use crate::chain::{is_chain_map, ChainComplex, Completeness, DirectSum, GradedMap, PMorphism};
use crate::error::{Error, Result};

use super::components::{BalancedComponents, Kind, Part};

/// Identities checked on an assembled bundle, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BundleLaw {
    HatSquare,
    BarSquare,
    CheckSquare,
    IChain,
    JChain,
    PChain,
    IU,
    JU,
    PU,
    HatU,
    BarU,
    CheckU,
}

impl BundleLaw {
    pub const ALL: [BundleLaw; 12] = [
        BundleLaw::HatSquare,
        BundleLaw::BarSquare,
        BundleLaw::CheckSquare,
        BundleLaw::IChain,
        BundleLaw::JChain,
        BundleLaw::PChain,
        BundleLaw::IU,
        BundleLaw::JU,
        BundleLaw::PU,
        BundleLaw::HatU,
        BundleLaw::BarU,
        BundleLaw::CheckU,
    ];

    /// Equation tag cited in reports.
    pub fn tag(self) -> &'static str {
        match self {
            BundleLaw::HatSquare => "eq:hat-d",
            BundleLaw::BarSquare | BundleLaw::CheckSquare => "d^2=0",
            BundleLaw::IChain | BundleLaw::JChain | BundleLaw::PChain => "eq:ijk",
            BundleLaw::IU | BundleLaw::JU | BundleLaw::PU => "eq:U-i",
            BundleLaw::HatU | BundleLaw::BarU | BundleLaw::CheckU => "dU-Ud=0",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BundleLaw::HatSquare => "hat-d^2=0",
            BundleLaw::BarSquare => "bar-d^2=0",
            BundleLaw::CheckSquare => "check-d^2=0",
            BundleLaw::IChain => "i-chain",
            BundleLaw::JChain => "j-chain",
            BundleLaw::PChain => "p-chain",
            BundleLaw::IU => "i-U",
            BundleLaw::JU => "j-U",
            BundleLaw::PU => "p-U",
            BundleLaw::HatU => "hat-U",
            BundleLaw::BarU => "bar-U",
            BundleLaw::CheckU => "check-U",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCheck {
    pub law: BundleLaw,
    pub passed: bool,
    pub witness: Option<(String, String)>,
}

/// `(Ĉ, C̄, Č)` with `i: C̄ → Č`, `j: Č → Ĉ`, `p: Ĉ → C̄` and their U-homotopies.
#[derive(Clone, Debug)]
pub struct FlavorBundle {
    pub components: BalancedComponents,
    pub hat: ChainComplex,
    pub bar: ChainComplex,
    pub check: ChainComplex,
    /// summands `(o, u)`
    pub hat_sum: DirectSum,
    /// summands `(s, u)`, the latter shifted down by one
    pub bar_sum: DirectSum,
    /// summands `(o, s)`
    pub check_sum: DirectSum,
    pub i: PMorphism,
    pub j: PMorphism,
    pub p: PMorphism,
}

impl FlavorBundle {
    pub fn hat_completeness(&self) -> Completeness {
        let c = &self.components.complete;
        c[&Part::O].intersect(&c[&Part::U])
    }

    pub fn bar_completeness(&self) -> Completeness {
        let c = &self.components.complete;
        c[&Part::S].intersect(&c[&Part::U].shifted(-1))
    }

    pub fn check_completeness(&self) -> Completeness {
        let c = &self.components.complete;
        c[&Part::O].intersect(&c[&Part::S])
    }

    /// Every identity, in checking order.
    pub fn check_all(&self) -> Vec<BundleCheck> {
        BundleLaw::ALL.iter().map(|&l| self.check(l)).collect()
    }

    pub fn check(&self, law: BundleLaw) -> BundleCheck {
        let residual = match law {
            BundleLaw::HatSquare => Ok(self.hat.d.compose(&self.hat.d)),
            BundleLaw::BarSquare => Ok(self.bar.d.compose(&self.bar.d)),
            BundleLaw::CheckSquare => Ok(self.check.d.compose(&self.check.d)),
            BundleLaw::IChain => Ok(chain_residual(&self.i.phi, &self.bar, &self.check)),
            BundleLaw::JChain => Ok(chain_residual(&self.j.phi, &self.check, &self.hat)),
            BundleLaw::PChain => Ok(chain_residual(&self.p.phi, &self.hat, &self.bar)),
            BundleLaw::IU => self.i.u_defect(&self.bar, &self.check),
            BundleLaw::JU => self.j.u_defect(&self.check, &self.hat),
            BundleLaw::PU => self.p.u_defect(&self.hat, &self.bar),
            BundleLaw::HatU => Ok(u_residual(&self.hat)),
            BundleLaw::BarU => Ok(u_residual(&self.bar)),
            BundleLaw::CheckU => Ok(u_residual(&self.check)),
        };
        match residual {
            Ok(r) => {
                let witness = r.first_entry().map(|(s, t)| r.witness(s, t));
                BundleCheck { law, passed: witness.is_none(), witness }
            }
            Err(_) => BundleCheck { law, passed: false, witness: None },
        }
    }

    pub fn first_failure(&self) -> Option<BundleCheck> {
        BundleLaw::ALL.iter().map(|&l| self.check(l)).find(|c| !c.passed)
    }
}

fn chain_residual(f: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> GradedMap {
    let a = f.compose(&src.d);
    let b = tgt.d.compose(f);
    if f.degree.rem_euclid(2) == 0 {
        a.sub(&b)
    } else {
        a.add(&b)
    }
}

fn u_residual(c: &ChainComplex) -> GradedMap {
    let u = c.u.as_ref().expect("assembled complexes carry U");
    c.d.compose(u).sub(&u.compose(&c.d))
}

/// Builds the bundle without checking any identity.
pub fn assemble_unchecked(bc: &BalancedComponents) -> Result<FlavorBundle> {
    use Kind::{DBar, UBar, D};
    use Part::*;
    let r = bc.ring;
    let g = |k: Kind, a: Part, b: Part| bc.get_k(k, a, b);
    let hat_sum = DirectSum::new(&[("", &bc.o, 0), ("", &bc.u, 0)])?;
    let bar_sum = DirectSum::new(&[("", &bc.s, 0), ("", &bc.u, -1)])?;
    let check_sum = DirectSum::new(&[("", &bc.o, 0), ("", &bc.s, 0)])?;

    let (d_oo, d_os, d_uo, d_us) = (g(D, O, O), g(D, O, S), g(D, U, O), g(D, U, S));
    let (b_ss, b_uu, b_su, b_us) = (g(DBar, S, S), g(DBar, U, U), g(DBar, S, U), g(DBar, U, S));
    let (u_oo, u_uo, u_os, u_us) = (g(Kind::U, O, O), g(Kind::U, U, O), g(Kind::U, O, S), g(Kind::U, U, S));
    let (v_su, v_uu, v_ss, v_us) = (g(UBar, S, U), g(UBar, U, U), g(UBar, S, S), g(UBar, U, S));

    let asm = |src: &DirectSum, tgt: &DirectSum, deg: i64, blocks: &[(usize, usize, &GradedMap)]| {
        DirectSum::assemble(src, tgt, deg, r, blocks)
    };

    let h10 = b_su.compose(&d_os).neg();
    let h11 = b_uu.neg().sub(&b_su.compose(&d_us));
    let d_hat = asm(&hat_sum, &hat_sum, -1, &[(0, 0, &d_oo), (0, 1, &d_uo), (1, 0, &h10), (1, 1, &h11)])?;
    let d_bar = asm(&bar_sum, &bar_sum, -1, &[(0, 0, &b_ss), (0, 1, &b_us), (1, 0, &b_su), (1, 1, &b_uu)])?;
    let c01 = d_uo.compose(&b_su).neg();
    let c11 = b_ss.sub(&d_us.compose(&b_su));
    let d_check = asm(&check_sum, &check_sum, -1, &[(0, 0, &d_oo), (0, 1, &c01), (1, 0, &d_os), (1, 1, &c11)])?;

    let uh10 = v_su.compose(&d_os).sub(&b_su.compose(&u_os));
    let uh11 = v_uu.add(&v_su.compose(&d_us)).sub(&b_su.compose(&u_us));
    let u_hat = asm(&hat_sum, &hat_sum, -2, &[(0, 0, &u_oo), (0, 1, &u_uo), (1, 0, &uh10), (1, 1, &uh11)])?;
    let u_bar = asm(&bar_sum, &bar_sum, -2, &[(0, 0, &v_ss), (0, 1, &v_us), (1, 0, &v_su), (1, 1, &v_uu)])?;
    let uc01 = d_uo.compose(&v_su).neg().sub(&u_uo.compose(&b_su));
    let uc11 = v_ss.sub(&d_us.compose(&v_su)).sub(&u_us.compose(&b_su));
    let u_check = asm(&check_sum, &check_sum, -2, &[(0, 0, &u_oo), (0, 1, &uc01), (1, 0, &u_os), (1, 1, &uc11)])?;

    let id_o = GradedMap::identity(&bc.o, r);
    let id_s = GradedMap::identity(&bc.s, r);
    let id_u = GradedMap::identity(&bc.u, r);
    let i = asm(&bar_sum, &check_sum, 0, &[(0, 1, &d_uo.neg()), (1, 0, &id_s), (1, 1, &d_us.neg())])?;
    let j = asm(&check_sum, &hat_sum, 0, &[(0, 0, &id_o), (1, 1, &b_su.neg())])?;
    let p = asm(&hat_sum, &bar_sum, -1, &[(0, 0, &d_os), (0, 1, &d_us), (1, 1, &id_u)])?;
    let k_i = asm(&bar_sum, &check_sum, -1, &[(0, 1, &u_uo.neg()), (1, 1, &u_us.neg())])?;
    let k_j = asm(&check_sum, &hat_sum, -1, &[(1, 1, &v_su)])?;
    let k_p = asm(&hat_sum, &bar_sum, -2, &[(0, 0, &u_os), (0, 1, &u_us)])?;

    let name = &bc.name;
    Ok(FlavorBundle {
        components: bc.clone(),
        hat: ChainComplex::new(format!("{name}^"), hat_sum.module.clone(), d_hat).with_u(u_hat),
        bar: ChainComplex::new(format!("{name}-"), bar_sum.module.clone(), d_bar).with_u(u_bar),
        check: ChainComplex::new(format!("{name}v"), check_sum.module.clone(), d_check).with_u(u_check),
        hat_sum,
        bar_sum,
        check_sum,
        i: PMorphism { phi: i, k: k_i },
        j: PMorphism { phi: j, k: k_j },
        p: PMorphism { phi: p, k: k_p },
    })
}

/// Builds the bundle and verifies every identity; the first failure is reported by tag.
pub fn assemble(bc: &BalancedComponents) -> Result<FlavorBundle> {
    let b = assemble_unchecked(bc)?;
    if let Some(f) = b.first_failure() {
        let w = f.witness.map(|(s, t)| format!(" on {s} -> {t}")).unwrap_or_default();
        return Err(Error::AssemblyInconsistent(format!("{} [{}]{w}", f.law.tag(), f.law.name())));
    }
    debug_assert!(is_chain_map(&b.i.phi, &b.bar, &b.check));
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavors::tower::{coupled_tower_s, coupled_tower_u, coupled_triangle, pair, point, random_decoupled, tower_model, TowerParams};
    use crate::random::{rng, Params};
    use crate::exactlin::Ring;

    #[test]
    fn golden_instances_assemble() {
        for bc in [coupled_triangle().unwrap(), coupled_tower_s(3).unwrap(), coupled_tower_u(3).unwrap()] {
            let b = assemble_unchecked(&bc).unwrap();
            let fails: Vec<_> = b.check_all().into_iter().filter(|c| !c.passed).collect();
            assert!(fails.is_empty(), "{}: {fails:?}", bc.name);
        }
        let t = tower_model(&TowerParams::new(point(Ring::Integers), 3)).unwrap();
        assert_eq!(t.s.len() + t.u.len(), 7);
        assemble(&t).unwrap();
    }

    #[test]
    fn decoupled_instances_assemble() {
        let mut r = rng(3);
        for _ in 0..20 {
            assemble(&random_decoupled(&mut r, &Params::default()).unwrap()).unwrap();
        }
    }

    #[test]
    fn perturbed_dbar_su_names_u_law() {
        let mut bc = tower_model(&TowerParams::new(pair(Ring::Integers), 3)).unwrap();
        assemble(&bc).unwrap();
        let (src, dst) = (crate::flavors::tower_name("e", 0), crate::flavors::tower_name("f", 1));
        bc.add_entry("dbar:s->u".parse().unwrap(), &src, &dst, 1).unwrap();
        let b = assemble_unchecked(&bc).unwrap();
        let f = b.first_failure().expect("perturbation must be caught");
        assert_eq!(f.law.tag(), "eq:U-i");
        match assemble(&bc) {
            Err(crate::Error::AssemblyInconsistent(msg)) => assert!(msg.starts_with("eq:U-i"), "{msg}"),
            other => panic!("expected AssemblyInconsistent, got {:?}", other.map(|_| ())),
        }
    }
}
