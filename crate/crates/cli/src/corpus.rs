//! The shipped golden corpus: input files and the runs whose machine reports are frozen.

use flavorkit_core::chain::{direct_sum, ChainComplex, GradedMap, GradedModule};
use flavorkit_core::circle::Flavor;
use flavorkit_core::connsum::{ConnSumMaps, FilteredComplex};
use flavorkit_core::exactlin::Ring;
use flavorkit_core::flavors::{
    coupled_tower_s, coupled_tower_u, coupled_triangle, pair, point, random_decoupled, tower_model, tower_name,
    BalancedComponents, Comp, Kind, Part, TowerParams,
};
use flavorkit_core::random::{random_complex, rng, Params};
use flavorkit_core::Result;
use num_bigint::BigInt;

use crate::commands::{Command, Direction, Options};
use crate::format::{print_all, Document, MapSet};

pub const CORPUS_VERSION: &str = "v1";
pub const DEFAULT_SEED: u64 = 2024;

const R: Ring = Ring::Integers;

fn with_zero_u(c: ChainComplex) -> ChainComplex {
    let u = GradedMap::zero(&c.module, &c.module, -2, c.ring);
    c.with_u(u)
}

fn complex(name: &str, gens: &[(&str, i64)], d: &[(&str, &str, i64)]) -> Result<ChainComplex> {
    let m = GradedModule::from_gens(gens.iter().copied())?.into_ref();
    let mut dm = GradedMap::zero(&m, &m, -1, R);
    for &(s, t, v) in d {
        dm.add_by_name(s, t, &BigInt::from(v))?;
    }
    Ok(with_zero_u(ChainComplex::new(name, m, dm)))
}

/// The pair tower with one extra `∂̄^s_u` entry; its `j` fails the U-law.
pub fn perturbed_tower() -> Result<BalancedComponents> {
    let mut bc = tower_model(&TowerParams::new(pair(R), 3))?;
    bc.name = "perturbed".into();
    bc.add_entry(Comp::new(Kind::DBar, Part::S, Part::U)?, &tower_name("e", 0), &tower_name("f", 1), 1)?;
    Ok(bc)
}

/// `C_# = Σ⁻¹Ĉ ⊕ Ĉ` with the shift isomorphisms as `V₀, V₁†` and identities as `V₁, V₀†`.
pub fn desuspension_maps(sum: &ChainComplex) -> Result<(ChainComplex, ConnSumMaps)> {
    let xm = sum.module.prefixed("s").shifted(-1).into_ref();
    let x = ChainComplex::new("sX", xm.clone(), sum.d.neg().retarget(&xm, &xm, -1));
    let up = GradedMap::identity(&sum.module, R).retarget(&xm, &sum.module, 1);
    let down = GradedMap::identity(&sum.module, R).retarget(&sum.module, &xm, -1);
    let (sharp, ds) = direct_sum(&[("x:", &x), ("y:", &sum.without_actions())])?;
    let sharp = with_zero_u(sharp.renamed("sharp"));
    let z = |s: &ChainComplex, t: &ChainComplex, k| GradedMap::zero(&s.module, &t.module, k, R);
    let maps = ConnSumMaps {
        v0: up.compose(&ds.project(0, R)),
        v1: ds.project(1, R),
        v0d: ds.inject(1, R),
        v1d: ds.inject(0, R).compose(&down),
        h_sharp: z(&sharp, &sharp, 1),
        a: z(sum, sum, 1),
        b: z(sum, sum, 2),
        cc: z(sum, sum, 0),
        d: z(sum, sum, 1),
    };
    Ok((sharp, maps))
}

fn filtered_example() -> Result<FilteredComplex> {
    let m = GradedModule::from_gens([("c", 0), ("a", 0), ("b", 1), ("x", 3), ("y", 2)])?.into_ref();
    let mut f = FilteredComplex::new("F", R, m);
    f.add_term("a", "b", 1, 1)?;
    f.add_term("x", "y", 0, 2)?;
    Ok(f)
}

/// Input files of the corpus, by file name.
pub fn corpus_files(seed: u64) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    let mut put = |name: &str, docs: Vec<Document>| files.push((name.to_string(), print_all(&docs)));
    put("single.fk", vec![Document::Complex(complex("pt", &[("e", 0)], &[])?)]);
    put("twotorsion.fk", vec![Document::Complex(complex("z2", &[("a", 1), ("b", 0)], &[("a", "b", 2)])?)]);
    let mut t3 = tower_model(&TowerParams::new(point(R), 3))?;
    t3.name = "tower3".into();
    put("tower3.fk", vec![Document::Balanced(t3)]);
    put("triangle.fk", vec![Document::Balanced(coupled_triangle()?)]);
    put("tower_s3.fk", vec![Document::Balanced(coupled_tower_s(3)?)]);
    put("tower_u3.fk", vec![Document::Balanced(coupled_tower_u(3)?)]);
    put("perturbed.fk", vec![Document::Balanced(perturbed_tower()?)]);
    put("filtered.fk", vec![Document::Filtered(filtered_example()?)]);
    let sum = complex("sum", &[("p", 2), ("q", 1), ("r", 1)], &[("p", "q", 3)])?;
    let (sharp, maps) = desuspension_maps(&sum)?;
    put(
        "sum_maps.fk",
        vec![Document::Complex(sharp), Document::Complex(sum), Document::Maps(MapSet::from_maps("desuspension", &maps))],
    );
    let mut g = rng(seed);
    let p = Params { max_rank: 4, ..Params::default() };
    put("random.fk", vec![Document::Complex(random_complex(&mut g, &p, "R", true, true))]);
    let mut dec = random_decoupled(&mut g, &p)?;
    dec.name = "decoupled".into();
    put("decoupled.fk", vec![Document::Balanced(dec)]);
    Ok(files)
}

/// One frozen run: command, input file (if any) and options.
#[derive(Clone, Debug)]
pub struct Run {
    pub command: Command,
    pub file: Option<&'static str>,
    pub options: Options,
    pub expected_exit: i32,
}

impl Run {
    /// File name of the frozen machine report.
    pub fn report_name(&self) -> String {
        let mut s = format!("{}.{}", self.file.map_or("none", |f| f.trim_end_matches(".fk")), self.command.name());
        if let Some(f) = self.options.flavor {
            s.push('.');
            s.push_str(f.tag());
        }
        if let Some(d) = self.options.direction {
            s.push_str(if d == Direction::A { ".a" } else { ".b" });
        }
        if let Some(n) = self.options.n {
            s.push_str(&format!(".n{n}"));
        }
        s + ".out"
    }
}

pub fn corpus_runs() -> Vec<Run> {
    use Command::*;
    let plain = |command, file, expected_exit| Run { command, file: Some(file), options: Options::default(), expected_exit };
    let mut runs = Vec::new();
    for c in [Verify, Homology, Su, Flavors, ConsumCase1, ConsumCase2] {
        runs.push(plain(c, "single.fk", 0));
    }
    runs.push(Run { options: Options { direction: Some(Direction::A), flavor: Some(Flavor::Minus), ..Options::default() }, ..plain(Koszul, "single.fk", 0) });
    for c in [Verify, Flavors, ConsumCase1, ConsumCase2] {
        runs.push(plain(c, "twotorsion.fk", 0));
    }
    for f in ["tower3.fk", "triangle.fk", "tower_s3.fk", "tower_u3.fk", "decoupled.fk"] {
        runs.push(plain(Verify, f, 0));
        runs.push(plain(Ladder, f, 0));
    }
    runs.push(plain(Verify, "perturbed.fk", 1));
    runs.push(plain(Verify, "filtered.fk", 0));
    runs.push(plain(CmFlavors, "filtered.fk", 0));
    runs.push(plain(ConsumVerify, "sum_maps.fk", 0));
    for c in [Verify, Homology, Su, Ey, Flavors, ConsumCase2] {
        runs.push(plain(c, "random.fk", 0));
    }
    for d in [Direction::A, Direction::B] {
        runs.push(Run { options: Options { direction: Some(d), ..Options::default() }, ..plain(Koszul, "random.fk", 0) });
    }
    for n in [2, 3, 4, 5] {
        runs.push(Run { command: Tower, file: None, options: Options { n: Some(n), ..Options::default() }, expected_exit: 0 });
    }
    runs
}
