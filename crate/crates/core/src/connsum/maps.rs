use crate::chain::{ChainComplex, GradedMap};
use crate::error::{Error, Result};

/// Candidate maps between the summed complex `C_#` and `S_{U_⊔}(Ĉ_⊔)`.
///
/// `V₀: C_# → Ĉ_⊔` is odd and `V₁: C_# → Ĉ_⊔` even, landing in the `1` and `y` summands;
/// `V₁†: Ĉ_⊔ → C_#` is odd and `V₀†: Ĉ_⊔ → C_#` even, read off the `1` and `y` summands.
/// `H#` has degree +1 on `C_#`; `[[A, B], [C, D]]` is a degree +1 map of `S_{U_⊔}(Ĉ_⊔)` in block form.
#[derive(Clone, Debug)]
pub struct ConnSumMaps {
    pub v0: GradedMap,
    pub v1: GradedMap,
    pub v0d: GradedMap,
    pub v1d: GradedMap,
    pub h_sharp: GradedMap,
    pub a: GradedMap,
    pub b: GradedMap,
    pub cc: GradedMap,
    pub d: GradedMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SumIdentity {
    V0Chain,
    V1Chain,
    V0dChain,
    V1dChain,
    SharpComposite,
    SumComposite,
}

impl SumIdentity {
    pub const ALL: [SumIdentity; 6] = [
        SumIdentity::V0Chain,
        SumIdentity::V1Chain,
        SumIdentity::V0dChain,
        SumIdentity::V1dChain,
        SumIdentity::SharpComposite,
        SumIdentity::SumComposite,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            SumIdentity::V0Chain => "∂̂_⊔V₀ + V₀∂_# = 0",
            SumIdentity::V1Chain => "∂̂_⊔V₁ − V₁∂_# − Û_⊔V₀ = 0",
            SumIdentity::V0dChain => "∂_#V₀† − V₀†∂̂_⊔ = 0",
            SumIdentity::V1dChain => "∂_#V₁† + V₁†∂̂_⊔ + V₀†Û_⊔ = 0",
            SumIdentity::SharpComposite => "V₁†V₀ + V₀†V₁ = Id_# + [∂_#, H_#]",
            SumIdentity::SumComposite => "V∘V† = Id + [D_⊔, [[A, B], [C, D]]]",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumCheck {
    pub identity: SumIdentity,
    pub passed: bool,
    /// first nonzero residual entry
    pub witness: Option<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct SumMapsReport {
    pub checks: Vec<SumCheck>,
}

impl SumMapsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&SumCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn shape(m: &GradedMap, name: &str, src: &ChainComplex, tgt: &ChainComplex, degree: i64) -> Result<()> {
    if *m.source != *src.module || *m.target != *tgt.module {
        return Err(Error::Shape(format!("{name}: endpoints")));
    }
    if m.degree != degree {
        return Err(Error::Shape(format!("{name}: degree {} (expected {degree})", m.degree)));
    }
    Ok(())
}

fn check(identity: SumIdentity, residuals: &[&GradedMap]) -> SumCheck {
    let witness = residuals.iter().find_map(|r| r.first_entry().map(|(s, t)| r.witness(s, t)));
    SumCheck { identity, passed: witness.is_none(), witness }
}

/// Checks the four chain-map identities and both composite identities entry-exactly.
///
/// `sharp` is `(C_#, ∂_#)`; `sum` is `Ĉ_⊔` with its U-action.
pub fn verify_sum_maps(sharp: &ChainComplex, sum: &ChainComplex, m: &ConnSumMaps) -> Result<SumMapsReport> {
    let u = sum.u_action()?;
    let (ds, dp) = (&sharp.d, &sum.d);
    let dv = m.v0.degree;
    let dvd = m.v1d.degree;
    if dv.rem_euclid(2) != 1 || dvd.rem_euclid(2) != 1 {
        return Err(Error::Shape("V₀ and V₁† must be odd".into()));
    }
    if dv + dvd != 0 {
        return Err(Error::Shape("V†V must have degree 0".into()));
    }
    shape(&m.v0, "V0", sharp, sum, dv)?;
    shape(&m.v1, "V1", sharp, sum, dv - 1)?;
    shape(&m.v1d, "V1d", sum, sharp, dvd)?;
    shape(&m.v0d, "V0d", sum, sharp, dvd + 1)?;
    shape(&m.h_sharp, "H#", sharp, sharp, 1)?;
    shape(&m.a, "A", sum, sum, 1)?;
    shape(&m.b, "B", sum, sum, 2)?;
    shape(&m.cc, "C", sum, sum, 0)?;
    shape(&m.d, "D", sum, sum, 1)?;

    let r1 = dp.compose(&m.v0).add(&m.v0.compose(ds));
    let r2 = dp.compose(&m.v1).sub(&m.v1.compose(ds)).sub(&u.compose(&m.v0));
    let r3 = ds.compose(&m.v0d).sub(&m.v0d.compose(dp));
    let r4 = ds.compose(&m.v1d).add(&m.v1d.compose(dp)).add(&m.v0d.compose(u));

    let id_s = GradedMap::identity(&sharp.module, sharp.ring);
    let comm_h = ds.compose(&m.h_sharp).add(&m.h_sharp.compose(ds));
    let c1 = m.v1d.compose(&m.v0).add(&m.v0d.compose(&m.v1)).sub(&id_s).sub(&comm_h);

    // [D_⊔, M] = D_⊔M + MD_⊔ in blocks, with D_⊔ = [[∂, 0], [U, −∂]]
    let id_p = GradedMap::identity(&sum.module, sum.ring);
    let (a, b, c, d) = (&m.a, &m.b, &m.cc, &m.d);
    let k11 = dp.compose(a).add(&a.compose(dp)).add(&b.compose(u));
    let k12 = dp.compose(b).sub(&b.compose(dp));
    let k21 = u.compose(a).sub(&dp.compose(c)).add(&c.compose(dp)).add(&d.compose(u));
    let k22 = u.compose(b).sub(&dp.compose(d)).sub(&d.compose(dp));
    let b11 = m.v0.compose(&m.v1d).sub(&id_p).sub(&k11);
    let b12 = m.v0.compose(&m.v0d).sub(&k12);
    let b21 = m.v1.compose(&m.v1d).sub(&k21);
    let b22 = m.v1.compose(&m.v0d).sub(&id_p).sub(&k22);

    Ok(SumMapsReport {
        checks: vec![
            check(SumIdentity::V0Chain, &[&r1]),
            check(SumIdentity::V1Chain, &[&r2]),
            check(SumIdentity::V0dChain, &[&r3]),
            check(SumIdentity::V1dChain, &[&r4]),
            check(SumIdentity::SharpComposite, &[&c1]),
            check(SumIdentity::SumComposite, &[&b11, &b12, &b21, &b22]),
        ],
    })
}
