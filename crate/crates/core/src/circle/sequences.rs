use crate::chain::{verify_exact_at, ChainComplex, Completeness, GradedMap, LesCertificate, ShortExact, Window};
use crate::error::Result;

use super::flavor::{e_map, e_y_partial, u_power, EComplex, Flavor};

/// `0 → E⁻ → E^∞ → E⁺ → 0` and `0 → E⁻ --u--> E⁻ → E^∧ → 0` on a window, with their long exact sequences.
#[derive(Clone, Debug)]
pub struct FundamentalSequences {
    pub minus: EComplex,
    pub infinity: EComplex,
    pub plus: EComplex,
    /// `E⁻` on the window raised by two, the source of `u`
    pub minus_up: EComplex,
    pub hat: EComplex,
    pub incl: GradedMap,
    pub proj: GradedMap,
    pub umul: GradedMap,
    pub to_hat: GradedMap,
    pub first: LesCertificate,
    pub second: LesCertificate,
}

impl FundamentalSequences {
    pub fn first_ses(&self) -> Result<ShortExact<'_>> {
        ShortExact::new(&self.minus.complex, &self.infinity.complex, &self.plus.complex, &self.incl, &self.proj)
    }

    pub fn second_ses(&self) -> Result<ShortExact<'_>> {
        ShortExact::new(&self.minus_up.complex, &self.minus.complex, &self.hat.complex, &self.umul, &self.to_hat)
    }

    pub fn all_exact(&self) -> bool {
        self.first.all_exact() && self.second.all_exact()
    }
}

pub fn fundamental_sequences(x: &ChainComplex, xc: &Completeness, window: &Window) -> Result<FundamentalSequences> {
    let up = Window { lo: window.lo + 2, hi: window.hi + 2 };
    let minus = e_y_partial(x, xc, Flavor::Minus, window)?;
    let infinity = e_y_partial(x, xc, Flavor::Infinity, window)?;
    let plus = e_y_partial(x, xc, Flavor::Plus, window)?;
    let minus_up = e_y_partial(x, xc, Flavor::Minus, &up)?;
    let hat = e_y_partial(x, xc, Flavor::Hat, &up)?;
    let id = GradedMap::identity(&x.module, x.ring);
    let incl = e_map(&id, &minus, &infinity);
    let proj = e_map(&id, &infinity, &plus);
    let umul = u_power(&minus_up, &minus, 1);
    let to_hat = u_power(&minus, &hat, -1);
    let mut out = FundamentalSequences {
        minus,
        infinity,
        plus,
        minus_up,
        hat,
        incl,
        proj,
        umul,
        to_hat,
        first: LesCertificate::default(),
        second: LesCertificate::default(),
    };
    out.first = {
        let ses = out.first_ses()?;
        verify_exact_at(&ses, &out.minus.completeness, &out.infinity.completeness, &out.plus.completeness)?
    };
    out.second = {
        let ses = out.second_ses()?;
        verify_exact_at(&ses, &out.minus_up.completeness, &out.minus.completeness, &out.hat.completeness)?
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::GradedModule;
    use crate::exactlin::Ring;
    use num_bigint::BigInt;

    #[test]
    fn point_sequences_exact() {
        let m = GradedModule::from_gens([("e", 0)]).unwrap().into_ref();
        let x = ChainComplex::new("pt", m.clone(), GradedMap::zero(&m, &m, -1, Ring::Integers))
            .with_y(GradedMap::zero(&m, &m, 1, Ring::Integers));
        let f = fundamental_sequences(&x, &Completeness::full(), &Window::new(-8, 8).unwrap()).unwrap();
        assert!(f.first.checked() > 10 && f.second.checked() > 10);
        assert!(f.all_exact());
    }

    #[test]
    fn y_nonzero_sequences_exact() {
        let m = GradedModule::from_gens([("a", 0), ("b", 1), ("c", 1), ("e", 2)]).unwrap().into_ref();
        let r = Ring::Integers;
        let mut d = GradedMap::zero(&m, &m, -1, r);
        d.add_entry(1, 0, &BigInt::from(2));
        d.add_entry(3, 2, &BigInt::from(-2));
        let mut y = GradedMap::zero(&m, &m, 1, r);
        y.add_entry(0, 2, &BigInt::from(1));
        y.add_entry(1, 3, &BigInt::from(1));
        let x = ChainComplex::new("x", m.clone(), d).with_y(y);
        assert!(x.validate().passed());
        let f = fundamental_sequences(&x, &Completeness::full(), &Window::new(-6, 8).unwrap()).unwrap();
        assert!(f.all_exact());
    }
}
