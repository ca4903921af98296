use crate::chain::{cone, ChainComplex, DirectSum, GradedMap, PMorphism};
use crate::circle::{s_u, s_u_map_unchecked, s_u_plain, su_module};
use crate::error::Result;

use super::assemble::FlavorBundle;

/// Identities relating `Č` to the cone `Ě` of `p`, before and after `S_U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeIdentity {
    LK,
    KL,
    JBarK,
    KIMinusIBar,
    ConeU,
    KMorphism,
    LMorphism,
    SuLK,
    SuJ,
    SuKL,
    SuKI,
    ReducedJP,
    ReducedIP,
    ReducedU,
}

impl ConeIdentity {
    pub const ALL: [ConeIdentity; 14] = [
        ConeIdentity::LK,
        ConeIdentity::KL,
        ConeIdentity::JBarK,
        ConeIdentity::KIMinusIBar,
        ConeIdentity::ConeU,
        ConeIdentity::KMorphism,
        ConeIdentity::LMorphism,
        ConeIdentity::SuLK,
        ConeIdentity::SuJ,
        ConeIdentity::SuKL,
        ConeIdentity::SuKI,
        ConeIdentity::ReducedJP,
        ConeIdentity::ReducedIP,
        ConeIdentity::ReducedU,
    ];

    pub fn tag(self) -> &'static str {
        use ConeIdentity::*;
        match self {
            LK => "eq:1",
            KL => "eq:2",
            JBarK => "eq:3",
            KIMinusIBar => "eq:4",
            ConeU | KMorphism | LMorphism => "eq:U-i",
            SuLK | SuJ => "eq:S1",
            SuKL | SuKI => "eq:S2",
            ReducedJP | ReducedIP | ReducedU => "reduced",
        }
    }

    pub fn formula(self) -> &'static str {
        use ConeIdentity::*;
        match self {
            LK => "lk = Id",
            KL => "kl = Id + ěK + Kě",
            JBarK => "j = j̄k",
            KIMinusIBar => "ki − ī = ě(Kī) + (Kī)∂̄",
            ConeU => "[ě, U_ě] = 0",
            KMorphism => "kǓ − U_ě k + Ǩ_j∂̌ + ěǨ_j = 0",
            LMorphism => "lU_ě − Ǔl + Ǩ_iě + ∂̌Ǩ_i = 0",
            SuLK => "S_U(l)S_U(k) = Id",
            SuJ => "S_U(j) = S_U(j̄)S_U(k)",
            SuKL => "S_U(k)S_U(l) = Id + S_U(ě)(K⊗ȷ) + (K⊗ȷ)S_U(ě)",
            SuKI => "S_U(k)S_U(i) − S_U(ī) = S_U(ě)𝕂 + 𝕂S_U(∂̄)",
            ReducedJP => "K_j Π_o − Π_u K_p = 0",
            ReducedIP => "Π_s K_i + K_p Π_u = 0",
            ReducedU => "Û Π_u − Π_u Ū − K_j i + j K_i = 0",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConeCheck {
    pub identity: ConeIdentity,
    pub passed: bool,
    pub witness: Option<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct ConeReport {
    pub checks: Vec<ConeCheck>,
}

impl ConeReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, id: ConeIdentity) -> Option<&ConeCheck> {
        self.checks.iter().find(|c| c.identity == id)
    }

    pub fn failures(&self) -> Vec<&ConeCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// `Ě` with its U-map and the comparison maps to `Č`.
#[derive(Clone, Debug)]
pub struct ConeData {
    /// `Ě = Ĉ ⊕ C̄` with `ě = [[∂̂,0],[p,∂̄]]` and `U_ě = [[Û,0],[K_p,Ū]]`.
    pub e: ChainComplex,
    pub sum: DirectSum,
    pub k: PMorphism,
    pub l: PMorphism,
    pub i_bar: PMorphism,
    pub j_bar: PMorphism,
    /// `K = [[0, −Π_u],[0, 0]]`.
    pub homotopy: GradedMap,
    pub pi_s: GradedMap,
    pub pi_o: GradedMap,
    pub pi_u: GradedMap,
}

fn whole(m: &ChainComplex) -> Result<DirectSum> {
    DirectSum::new(&[("", &m.module, 0)])
}

/// Builds `Ě`, `k`, `l`, `ī`, `j̄` and `K` from an assembled bundle.
pub fn cone_data(b: &FlavorBundle) -> Result<ConeData> {
    let r = b.components.ring;
    let (hs, bs, cs) = (&b.hat_sum, &b.bar_sum, &b.check_sum);
    let (e, sum) = cone(&b.hat, &b.bar, &b.p.phi, ("h:", "b:"))?;
    let asm = DirectSum::assemble;

    let u_e = asm(&sum, &sum, -2, r, &[(0, 0, b.hat.u.as_ref().unwrap()), (1, 0, &b.p.k), (1, 1, b.bar.u.as_ref().unwrap())])?;
    let e = e.renamed(format!("E({})", b.components.name)).with_u(u_e);

    let id_o = GradedMap::identity(&b.components.o, r);
    let id_s = GradedMap::identity(&b.components.s, r);
    let id_u = GradedMap::identity(&b.components.u, r);
    let pi_s = asm(cs, bs, 0, r, &[(0, 1, &id_s)])?;
    let pi_o = asm(hs, cs, 0, r, &[(0, 0, &id_o)])?;
    let pi_u = asm(bs, hs, 1, r, &[(1, 1, &id_u)])?;

    let (wc, wh, wb) = (whole(&b.check)?, whole(&b.hat)?, whole(&b.bar)?);
    let k = asm(&wc, &sum, 0, r, &[(0, 0, &b.j.phi), (1, 0, &pi_s)])?;
    let k_k = asm(&wc, &sum, -1, r, &[(0, 0, &b.j.k)])?;
    let l = asm(&sum, &wc, 0, r, &[(0, 0, &pi_o), (0, 1, &b.i.phi)])?;
    let k_l = asm(&sum, &wc, -1, r, &[(0, 1, &b.i.k)])?;
    let i_bar = asm(&wb, &sum, 0, r, &[(1, 0, &GradedMap::identity(&b.bar.module, r))])?;
    let j_bar = asm(&sum, &wh, 0, r, &[(0, 0, &GradedMap::identity(&b.hat.module, r))])?;
    let homotopy = asm(&sum, &sum, 1, r, &[(0, 1, &pi_u.neg())])?;

    let zero = |a: &GradedMap| GradedMap::zero(&a.source, &a.target, -1, r);
    Ok(ConeData {
        k: PMorphism { phi: k, k: k_k },
        l: PMorphism { phi: l, k: k_l },
        i_bar: PMorphism { k: zero(&i_bar), phi: i_bar },
        j_bar: PMorphism { k: zero(&j_bar), phi: j_bar },
        e,
        sum,
        homotopy,
        pi_s,
        pi_o,
        pi_u,
    })
}

fn residual(id: ConeIdentity, lhs: &GradedMap, rhs: &GradedMap) -> ConeCheck {
    let diff = lhs.sub(rhs);
    let witness = diff.first_entry().map(|(s, t)| diff.witness(s, t));
    ConeCheck { identity: id, passed: witness.is_none(), witness }
}

fn vanishes(id: ConeIdentity, m: &GradedMap) -> ConeCheck {
    let witness = m.first_entry().map(|(s, t)| m.witness(s, t));
    ConeCheck { identity: id, passed: witness.is_none(), witness }
}

/// Checks every identity entry-exactly. `K_j` in the reduced identities is `−(homotopy of j)`.
pub fn cone_identities(b: &FlavorBundle) -> Result<ConeReport> {
    check_cone(b, &cone_data(b)?)
}

/// As [`cone_identities`], for caller-supplied cone data.
pub fn check_cone(b: &FlavorBundle, c: &ConeData) -> Result<ConeReport> {
    use ConeIdentity::*;
    let r = b.components.ring;
    let e = &c.e;
    let kk = &c.homotopy;
    let mut out = Vec::new();

    let id_check = GradedMap::identity(&b.check.module, r);
    let id_e = GradedMap::identity(&e.module, r);
    out.push(residual(LK, &c.l.phi.compose(&c.k.phi), &id_check));
    let ek = e.d.compose(kk).add(&kk.compose(&e.d));
    out.push(residual(KL, &c.k.phi.compose(&c.l.phi), &id_e.add(&ek.with_degree(0))));
    out.push(residual(JBarK, &b.j.phi, &c.j_bar.phi.compose(&c.k.phi)));
    let ki = kk.compose(&c.i_bar.phi);
    let rhs = e.d.compose(&ki).add(&ki.compose(&b.bar.d)).with_degree(0);
    out.push(residual(KIMinusIBar, &c.k.phi.compose(&b.i.phi).sub(&c.i_bar.phi), &rhs));

    let ue = e.u.as_ref().unwrap();
    out.push(vanishes(ConeU, &e.d.compose(ue).sub(&ue.compose(&e.d))));
    out.push(vanishes(KMorphism, &c.k.u_defect(&b.check, e)?));
    out.push(vanishes(LMorphism, &c.l.u_defect(e, &b.check)?));

    let su = |p: &PMorphism| -> Result<GradedMap> {
        Ok(s_u_map_unchecked(p, &su_module(&p.phi.source)?, &su_module(&p.phi.target)?))
    };
    let (sk, sl, si, sj) = (su(&c.k)?, su(&c.l)?, su(&b.i)?, su(&b.j)?);
    let (sib, sjb) = (su(&c.i_bar)?, su(&c.j_bar)?);
    let s_e = s_u(e)?;
    let s_bar = s_u(&b.bar)?;
    let kj = s_u_plain(kk)?;
    let id_se = GradedMap::identity(&s_e.module, r);
    out.push(residual(SuLK, &sl.compose(&sk), &GradedMap::identity(&su_module(&b.check.module)?, r)));
    out.push(residual(SuJ, &sj, &sjb.compose(&sk)));
    let h = s_e.d.compose(&kj).add(&kj.compose(&s_e.d)).with_degree(0);
    out.push(residual(SuKL, &sk.compose(&sl), &id_se.add(&h)));
    let bk = kj.compose(&sib);
    let rhs = s_e.d.compose(&bk).add(&bk.compose(&s_bar.d)).with_degree(0);
    out.push(residual(SuKI, &sk.compose(&si).sub(&sib), &rhs));

    let k_j = b.j.k.neg();
    out.push(vanishes(ReducedJP, &k_j.compose(&c.pi_o).sub(&c.pi_u.compose(&b.p.k))));
    out.push(vanishes(ReducedIP, &c.pi_s.compose(&b.i.k).add(&b.p.k.compose(&c.pi_u))));
    let (uh, ub) = (b.hat.u.as_ref().unwrap(), b.bar.u.as_ref().unwrap());
    let red = uh
        .compose(&c.pi_u)
        .sub(&c.pi_u.compose(ub))
        .sub(&k_j.compose(&b.i.phi))
        .add(&b.j.phi.compose(&b.i.k));
    out.push(vanishes(ReducedU, &red));
    Ok(ConeReport { checks: out })
}
