use crate::chain::{
    homology_in, induced_on_homology, ChainComplex, Completeness, HomologyTable, LesCertificate, Window,
};
use crate::circle::{default_window, e_y_partial, fundamental_sequences, s_u, s_u_completeness, Flavor};
use crate::error::Result;

use super::assemble::FlavorBundle;

/// `H(E^∘ S_U(C))` for the four flavors with both long exact sequences.
#[derive(Clone, Debug)]
pub struct FourFlavors {
    pub window: Window,
    /// minus, infinity, plus, hat; each restricted to its safe degrees
    pub tables: [HomologyTable; 4],
    /// `E⁻ → E^∞ → E⁺`
    pub first: LesCertificate,
    /// `E⁻ --u--> E⁻ → E^∧`
    pub second: LesCertificate,
    /// The hat table agrees with `H(S_U(C))` wherever both are known.
    pub hat_matches_su: bool,
}

impl FourFlavors {
    pub fn table(&self, f: Flavor) -> &HomologyTable {
        &self.tables[Flavor::ALL.iter().position(|&g| g == f).expect("listed")]
    }

    pub fn passed(&self) -> bool {
        self.first.all_exact() && self.second.all_exact() && self.hat_matches_su
    }
}

pub fn four_flavors(c: &ChainComplex, window: Option<Window>) -> Result<FourFlavors> {
    four_flavors_partial(c, &Completeness::full(), window)
}

/// As [`four_flavors`] for a truncated input whose completeness is known.
pub fn four_flavors_partial(c: &ChainComplex, cc: &Completeness, window: Option<Window>) -> Result<FourFlavors> {
    c.validate().into_result()?;
    let x = s_u(c)?;
    let xc = s_u_completeness(cc);
    let window = window.unwrap_or_else(|| default_window(&x.module));
    let seqs = fundamental_sequences(&x, &xc, &window)?;
    let mut tables = Vec::with_capacity(4);
    for f in Flavor::ALL {
        let e = e_y_partial(&x, &xc, f, &window)?;
        tables.push(homology_in(&e.complex, &e.safe_degrees())?);
    }
    let tables: [HomologyTable; 4] = tables.try_into().expect("four flavors");
    let hat = &tables[3];
    let degrees: Vec<i64> = hat.groups.keys().copied().filter(|&k| xc.is_safe(k)).collect();
    let su = homology_in(&x, &degrees)?;
    let hat_matches_su = degrees.iter().all(|&k| su.get(k) == hat.get(k));
    Ok(FourFlavors { window, tables, first: seqs.first, second: seqs.second, hat_matches_su })
}

/// Whether `Ū` induces isomorphisms `H_j(C̄) → H_{j−2}(C̄)` for consecutive safe degrees.
#[derive(Clone, Debug)]
pub struct Localization {
    pub pairs: Vec<(i64, bool)>,
}

impl Localization {
    pub fn passed(&self) -> bool {
        !self.pairs.is_empty() && self.pairs.iter().all(|p| p.1)
    }
}

pub fn localization_check(b: &FlavorBundle) -> Result<Localization> {
    let comp = b.bar_completeness();
    let u = b.bar.u.as_ref().expect("assembled complexes carry U");
    let Some((lo, hi)) = b.bar.module.degree_span() else {
        return Ok(Localization { pairs: Vec::new() });
    };
    let degrees: Vec<i64> = (lo..=hi).filter(|&j| comp.is_safe(j) && comp.is_safe(j - 2)).collect();
    let ind = induced_on_homology(u, &b.bar, &b.bar, &degrees)?;
    Ok(Localization { pairs: degrees.iter().map(|&j| (j, ind.is_iso_at(j))).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{GradedMap, GradedModule};
    use crate::exactlin::Ring;
    use crate::flavors::{assemble, point, tower_model, TowerParams};
    use num_bigint::BigInt;

    fn single() -> ChainComplex {
        let m = GradedModule::from_gens([("e", 0)]).unwrap().into_ref();
        let z = |d| GradedMap::zero(&m, &m, d, Ring::Integers);
        ChainComplex::new("pt", m.clone(), z(-1)).with_u(z(-2))
    }

    fn nonzero(t: &HomologyTable) -> Vec<(i64, String)> {
        t.nonzero().into_iter().map(|(j, g)| (j, g.to_string())).collect()
    }

    #[test]
    fn single_generator_tables() {
        let f = four_flavors(&single(), None).unwrap();
        assert!(f.passed());
        assert_eq!(nonzero(f.table(Flavor::Minus)), vec![(-1, "Z".into())]);
        assert!(f.table(Flavor::Infinity).is_zero());
        assert_eq!(nonzero(f.table(Flavor::Plus)), vec![(0, "Z".into())]);
        assert_eq!(nonzero(f.table(Flavor::Hat)), vec![(0, "Z".into()), (1, "Z".into())]);
    }

    #[test]
    fn acyclic_input_vanishes() {
        let m = GradedModule::from_gens([("a", 0), ("b", 1)]).unwrap().into_ref();
        let mut d = GradedMap::zero(&m, &m, -1, Ring::Integers);
        d.add_entry(1, 0, &BigInt::from(1));
        let c = ChainComplex::new("ab", m.clone(), d).with_u(GradedMap::zero(&m, &m, -2, Ring::Integers));
        let f = four_flavors(&c, None).unwrap();
        assert!(f.passed());
        assert!(f.tables.iter().all(|t| t.is_zero()));
    }

    #[test]
    fn tower_u_is_invertible_on_safe_pairs() {
        let b = assemble(&tower_model(&TowerParams::new(point(Ring::Integers), 3)).unwrap()).unwrap();
        assert!(localization_check(&b).unwrap().passed());
    }
}
