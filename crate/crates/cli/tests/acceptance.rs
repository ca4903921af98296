//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use flavorkit_cli::corpus::{corpus_files, corpus_runs, DEFAULT_SEED};
use flavorkit_cli::format::{parse, Document};
use flavorkit_cli::{run, Format};
use flavorkit_core::chain::{ChainComplex, GradedMap, Law, PMorphism, Window};
use flavorkit_core::circle::{
    default_window, e_map, e_y, koszul_a, koszul_b, pinned_shift_a, s_u_map, Flavor, PINNED_SHIFT_B,
};
use flavorkit_core::connsum::{case1_check, case2_check, cm_flavors, FilteredComplex, CASE1_SHIFT};
use flavorkit_core::exactlin::{invariant_factors, rank_over, Ring};
use flavorkit_core::flavors::{
    assemble, check_cone, cone_data, cone_identities, coupled_tower_s, coupled_tower_u, coupled_triangle,
    four_flavors, ladder_check, point, random_decoupled, tower_vanishing, ConeData, ConeIdentity, FlavorBundle,
    TowerParams,
};
use flavorkit_core::random::{random_complex, random_pmorphism, random_y_map, rng, Params, Rand};
use num_bigint::BigInt;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/v1")
}

fn admissible(m: &GradedMap) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for s in 0..m.source.len() {
        for t in 0..m.target.len() {
            if m.target.degree(t) == m.source.degree(s) + m.degree {
                v.push((s, t));
            }
        }
    }
    v
}

fn failed(c: &ChainComplex) -> BTreeSet<Law> {
    c.validate().failed_laws().into_iter().collect()
}

fn laws_suite() -> Outcome {
    let start = Instant::now();
    let (mut complexes, mut caught, mut benign, mut gens) = (0, 0, 0, 0);
    for (ring, seed) in [(Ring::Integers, 100), (Ring::Prime(2), 200)] {
        let mut g = rng(seed);
        let p = Params { max_rank: 8, deg_lo: -6, deg_hi: 6, bound: 3, ring };
        for i in 0..100 {
            let c = random_complex(&mut g, &p, "c", true, true);
            ensure(c.validate().passed(), || format!("{ring} #{i} fails validation"))?;
            complexes += 1;
            gens += c.module.len();
            type Slot = fn(&mut ChainComplex) -> &mut GradedMap;
            let slots: [(&str, Slot, &[Law]); 3] = [
                ("d", |c| &mut c.d, &[Law::DSquared, Law::UCommutes, Law::YAnticommutes]),
                ("U", |c| c.u.as_mut().unwrap(), &[Law::UCommutes]),
                ("Y", |c| c.y.as_mut().unwrap(), &[Law::YAnticommutes, Law::YSquared]),
            ];
            for (name, slot, allowed) in slots {
                let mut probe = c.clone();
                let spots = admissible(slot(&mut probe));
                if !spots.is_empty() {
                    let (s, t) = spots[g.gen_range(0..spots.len())];
                    let mut q = c.clone();
                    slot(&mut q).add_entry(s, t, &BigInt::from(1));
                    let f = failed(&q);
                    ensure(f.iter().all(|l| allowed.contains(l)), || format!("{name} perturbation tripped {f:?}"))?;
                    if f.is_empty() {
                        benign += 1;
                    } else {
                        caught += 1;
                    }
                }
                // an entry of the wrong degree is a homogeneity violation and nothing else is reported first
                let m = slot(&mut probe);
                let bad: Vec<(usize, usize)> = (0..m.source.len())
                    .flat_map(|s| (0..m.target.len()).map(move |t| (s, t)))
                    .filter(|&(s, t)| m.target.degree(t) != m.source.degree(s) + m.degree)
                    .collect();
                if let Some(&(s, t)) = bad.first() {
                    let mut q = c.clone();
                    slot(&mut q).add_entry(s, t, &BigInt::from(1));
                    let first = q.validate().first_failure().map(|r| r.law);
                    ensure(first == Some(Law::Homogeneity), || format!("{name} inhomogeneous entry gave {first:?}"))?;
                    caught += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{complexes} complexes ({gens} generators), {caught} perturbations caught, {benign} harmless, {secs:.1}s"))
}

fn koszul_duality() -> Outcome {
    let pt = point(Ring::Integers);
    let pt = pt.clone().with_u(GradedMap::zero(&pt.module, &pt.module, -2, pt.ring));
    for f in Flavor::ALL {
        let r = e(koszul_a(&pt, f, None))?;
        ensure(r.shift.shift == pinned_shift_a(f) || (pinned_shift_a(f).is_none() && r.shift.vacuous), || {
            format!("point {}: measured {:?}", f.tag(), r.shift.matching)
        })?;
    }
    let rb = e(koszul_b(&s_u_ready(&pt), None))?;
    ensure(rb.passed(Some(PINNED_SHIFT_B)), || "point direction b".into())?;
    let mut g = rng(7);
    let p = Params { max_rank: 4, ..Params::default() };
    let n = 100;
    let mut live = 0;
    for i in 0..n {
        let c = random_complex(&mut g, &p, "c", true, false);
        for f in Flavor::ALL {
            let r = e(koszul_a(&c, f, None))?;
            if !r.shift.vacuous {
                live += 1;
            }
            ensure(r.passed(pinned_shift_a(f)), || format!("#{i} {}: {:?}", f.tag(), r.shift.matching))?;
            if f == Flavor::Hat {
                let same = r.shift.degrees.iter().all(|&j| r.shift.left.get(j) == r.shift.right.get(j));
                ensure(same, || format!("#{i} hat groups differ"))?;
            }
        }
        let x = random_complex(&mut g, &p, "x", false, true);
        let r = e(koszul_b(&x, None))?;
        ensure(r.passed(Some(PINNED_SHIFT_B)), || format!("#{i} direction b: {:?}", r.shift.matching))?;
    }
    Ok(format!("{n} instances, {live} non-vacuous flavor runs, shifts minus +1, plus 0, hat 0, b {PINNED_SHIFT_B}"))
}

/// The point as a Y-complex with zero action.
fn s_u_ready(c: &ChainComplex) -> ChainComplex {
    let y = GradedMap::zero(&c.module, &c.module, 1, c.ring);
    c.without_actions().with_y(y)
}

fn golden_docs() -> Result<Vec<(String, Vec<Document>)>, String> {
    let mut out = Vec::new();
    for (name, _) in e(corpus_files(DEFAULT_SEED))? {
        let text = e(std::fs::read_to_string(corpus_dir().join(&name)))?;
        if name == "perturbed.fk" {
            continue;
        }
        out.push((name, e(parse(&text))?));
    }
    Ok(out)
}

fn random_filtered(g: &mut Rand, c: &ChainComplex) -> FilteredComplex {
    let mut f = FilteredComplex::new("F", c.ring, c.module.clone());
    for (s, t, v) in c.d.entries() {
        f.add_term(c.module.name(s), c.module.name(t), 0, v.clone()).unwrap();
    }
    let n = c.module.len();
    for _ in 0..4 {
        let (s, t) = (g.gen_range(0..n), g.gen_range(0..n));
        if c.module.degree(t) == c.module.degree(s) + 1 {
            let mut h = f.clone();
            h.add_term(c.module.name(s), c.module.name(t), 1, BigInt::from(1)).unwrap();
            if h.check_square().is_ok() {
                f = h;
            }
        }
    }
    f
}

fn exact_sequences() -> Outcome {
    let (mut complexes, mut filtered, mut ladders) = (0, 0, 0);
    let mut g = rng(31);
    let p = Params { max_rank: 4, ..Params::default() };
    let mut plain = Vec::new();
    let mut bundles = Vec::new();
    for _ in 0..30 {
        plain.push(random_complex(&mut g, &p, "c", true, false));
    }
    for _ in 0..10 {
        bundles.push(e(assemble(&e(random_decoupled(&mut g, &p))?))?);
    }
    let mut filt: Vec<FilteredComplex> = plain.iter().map(|c| random_filtered(&mut g, c)).collect();
    for (name, docs) in golden_docs()? {
        for d in docs {
            match d {
                Document::Complex(c) if c.u.is_some() && c.y.is_none() => plain.push(c),
                Document::Filtered(f) => filt.push(f),
                Document::Balanced(b) => bundles.push(e(assemble(&b))?),
                _ => {}
            }
        }
        let _ = name;
    }
    for c in &plain {
        let ff = e(four_flavors(c, None))?;
        ensure(ff.passed(), || format!("{}: fundamental sequences", c.name))?;
        complexes += 1;
    }
    for f in &filt {
        let cm = e(cm_flavors(f, &default_window(&f.module)))?;
        ensure(cm.passed(), || format!("{}: filtered sequences", f.name))?;
        filtered += 1;
    }
    for b in &bundles {
        let l = e(ladder_check(b, None))?;
        ensure(l.passed(), || format!("{}: ladder", b.components.name))?;
        ladders += 1;
    }
    Ok(format!("{complexes} complexes, {filtered} filtered, {ladders} ladders"))
}

fn tower() -> Outcome {
    for n in 2..=5 {
        let v = e(tower_vanishing(&TowerParams::new(point(Ring::Integers), n)))?;
        ensure(v.vanishes(), || format!("N={n}: classes {:?}", v.safe_classes))?;
        ensure(v.edge_classes.len() == 2, || format!("N={n}: {} edge classes", v.edge_classes.len()))?;
    }
    Ok("N=2..5 vanish with two edge classes each".into())
}

#[derive(Clone, Copy)]
enum Target {
    K,
    L,
    KWitness,
    LWitness,
    Homotopy,
    UCone,
    JWitness,
    PWitness,
    IWitness,
}

fn slot<'a>(b: &'a mut FlavorBundle, c: &'a mut ConeData, t: Target) -> &'a mut GradedMap {
    match t {
        Target::K => &mut c.k.phi,
        Target::L => &mut c.l.phi,
        Target::KWitness => &mut c.k.k,
        Target::LWitness => &mut c.l.k,
        Target::Homotopy => &mut c.homotopy,
        Target::UCone => c.e.u.as_mut().unwrap(),
        Target::JWitness => &mut b.j.k,
        Target::PWitness => &mut b.p.k,
        Target::IWitness => &mut b.i.k,
    }
}

fn falsified(bundles: &[FlavorBundle], id: ConeIdentity, targets: &[Target]) -> Result<bool, String> {
    for b0 in bundles {
        let c0 = e(cone_data(b0))?;
        for &t in targets {
            let (mut pb, mut pc) = (b0.clone(), c0.clone());
            for (s, d) in admissible(slot(&mut pb, &mut pc, t)) {
                let (mut b, mut c) = (b0.clone(), c0.clone());
                slot(&mut b, &mut c, t).add_entry(s, d, &BigInt::from(1));
                if matches!(t, Target::PWitness) {
                    c = e(cone_data(&b))?;
                }
                if !e(check_cone(&b, &c))?.get(id).unwrap().passed {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn cone() -> Outcome {
    let mut g = rng(53);
    let p = Params { max_rank: 4, ..Params::default() };
    let n = 50;
    for i in 0..n {
        let b = e(assemble(&e(random_decoupled(&mut g, &p))?))?;
        let r = e(cone_identities(&b))?;
        ensure(r.all_passed(), || format!("decoupled #{i}: {:?}", r.failures()))?;
    }
    let golden = vec![
        e(assemble(&e(coupled_triangle())?))?,
        e(assemble(&e(coupled_tower_s(3))?))?,
        e(assemble(&e(coupled_tower_u(3))?))?,
    ];
    for b in &golden {
        let r = e(cone_identities(b))?;
        ensure(r.all_passed(), || format!("{}: {:?}", b.components.name, r.failures()))?;
    }
    use ConeIdentity::*;
    use Target::*;
    let plan: [(ConeIdentity, &[Target]); 14] = [
        (LK, &[L]),
        (KL, &[Homotopy]),
        (JBarK, &[K]),
        (KIMinusIBar, &[Homotopy]),
        (ConeU, &[UCone]),
        (KMorphism, &[KWitness]),
        (LMorphism, &[LWitness]),
        (SuLK, &[LWitness, KWitness]),
        (SuJ, &[KWitness]),
        (SuKL, &[Homotopy]),
        (SuKI, &[Homotopy]),
        (ReducedJP, &[JWitness]),
        (ReducedIP, &[PWitness]),
        (ReducedU, &[IWitness, JWitness]),
    ];
    for (id, targets) in plan {
        ensure(falsified(&golden, id, targets)?, || format!("{id:?} never fails under perturbation"))?;
    }
    Ok(format!("{n} decoupled, {} coupled, 14 identities falsifiable", golden.len()))
}

fn case1() -> Outcome {
    let parse_one = |name: &str| -> Result<ChainComplex, String> {
        let text = e(std::fs::read_to_string(corpus_dir().join(name)))?;
        match e(parse(&text))?.remove(0) {
            Document::Complex(c) => Ok(c),
            _ => Err(format!("{name} holds no complex")),
        }
    };
    let mut inputs = vec![parse_one("single.fk")?, parse_one("twotorsion.fk")?];
    let mut g = rng(61);
    let p = Params { max_rank: 4, ..Params::default() };
    for _ in 0..10 {
        inputs.push(random_complex(&mut g, &p, "c", true, false));
    }
    let n = 4;
    let mut shifted = 0;
    for c in &inputs {
        let hi = c.module.degree_span().map_or(0, |s| s.1);
        let r = e(case1_check(c, n, &Window { lo: -2 * n, hi: hi + 4 }))?;
        ensure(r.consistent_with(CASE1_SHIFT), || format!("{}: shifts {:?}", c.name, r.matching))?;
        if !r.vacuous {
            shifted += 1;
        }
    }
    ensure(shifted >= 2, || "point and 2-torsion must be non-vacuous".into())?;
    Ok(format!("{} inputs, {shifted} with nonzero homology, shift +1", inputs.len()))
}

fn case2() -> Outcome {
    let mut g = rng(71);
    let p = Params { max_rank: 4, ..Params::default() };
    let n = 20;
    for i in 0..n {
        let c = random_complex(&mut g, &p, "c", true, false);
        for f in Flavor::ALL {
            let ok = e(case2_check(&c, f, &Window { lo: -8, hi: 8 }))?;
            ensure(ok, || format!("#{i} {}", f.tag()))?;
        }
    }
    Ok(format!("{n} inputs across four flavors"))
}

fn injective(m: &GradedMap) -> bool {
    rank_over(m.matrix(), m.ring) == m.matrix().cols()
}

fn surjective(m: &GradedMap) -> bool {
    let f = invariant_factors(m.matrix(), m.ring);
    f.len() == m.matrix().rows() && f.iter().all(|x| m.ring.inverse(x).is_some())
}

fn su(m: &PMorphism, s: &ChainComplex, t: &ChainComplex) -> Result<GradedMap, String> {
    e(s_u_map(m, s, t))
}

fn functoriality() -> Outcome {
    let mut g = rng(83);
    // a narrow degree range so that degree-zero maps between unrelated complexes exist
    let p = Params { max_rank: 4, deg_lo: -1, deg_hi: 1, ..Params::default() };
    let n = 50;
    let w = Window { lo: -12, hi: 12 };
    let mut nonzero = 0;
    for i in 0..n {
        let (a, b, c) = (
            random_complex(&mut g, &p, "a", true, false),
            random_complex(&mut g, &p, "b", true, false),
            random_complex(&mut g, &p, "c", true, false),
        );
        let (f, f2, h) = (random_pmorphism(&mut g, &a, &b, 0, 2), random_pmorphism(&mut g, &a, &b, 0, 2), random_pmorphism(&mut g, &b, &c, 0, 2));
        let comp = su(&f.then(&h), &a, &c)?;
        if !comp.is_zero() {
            nonzero += 1;
        }
        ensure(comp == su(&h, &b, &c)?.compose(&su(&f, &a, &b)?), || format!("#{i} S_U composition"))?;
        let sum = su(&f.add(&f2), &a, &b)?;
        ensure(sum == su(&f, &a, &b)?.add(&su(&f2, &a, &b)?), || format!("#{i} S_U addition"))?;
        let sf = su(&f, &a, &b)?;
        ensure(injective(&f.phi) == injective(&sf), || format!("#{i} S_U injectivity"))?;
        ensure(surjective(&f.phi) == surjective(&sf), || format!("#{i} S_U surjectivity"))?;

        let (x, y, z) = (
            random_complex(&mut g, &p, "x", false, true),
            random_complex(&mut g, &p, "y", false, true),
            random_complex(&mut g, &p, "z", false, true),
        );
        let (u, u2, v) = (random_y_map(&mut g, &x, &y, 0, 2), random_y_map(&mut g, &x, &y, 0, 2), random_y_map(&mut g, &y, &z, 0, 2));
        for fl in Flavor::ALL {
            let (ex, ey, ez) = (e(e_y(&x, fl, &w))?, e(e_y(&y, fl, &w))?, e(e_y(&z, fl, &w))?);
            let eu = e_map(&u, &ex, &ey);
            if !v.compose(&u).is_zero() {
                nonzero += 1;
            }
            ensure(e_map(&v.compose(&u), &ex, &ez) == e_map(&v, &ey, &ez).compose(&eu), || format!("#{i} E {} composition", fl.tag()))?;
            ensure(e_map(&u.add(&u2), &ex, &ey) == eu.add(&e_map(&u2, &ex, &ey)), || format!("#{i} E {} addition", fl.tag()))?;
            ensure(injective(&u) == injective(&eu), || format!("#{i} E {} injectivity", fl.tag()))?;
            ensure(surjective(&u) == surjective(&eu), || format!("#{i} E {} surjectivity", fl.tag()))?;
        }
    }
    Ok(format!("{n} composable pairs for S_U and each flavor, {nonzero} nonzero composites"))
}

fn determinism() -> Outcome {
    let dir = corpus_dir();
    for (name, text) in e(corpus_files(DEFAULT_SEED))? {
        let disk = e(std::fs::read_to_string(dir.join(&name)))?;
        ensure(disk == text, || format!("{name} differs from its generator"))?;
    }
    let runs = corpus_runs();
    for r in &runs {
        let input = match r.file {
            Some(f) => Some(e(std::fs::read_to_string(dir.join(f)))?),
            None => None,
        };
        let render = || run(r.command, input.as_deref(), &r.options).map(|rep| rep.render(Format::Machine));
        let (a, b) = (e(render())?, e(render())?);
        ensure(a == b, || format!("{} differs between runs", r.report_name()))?;
        let frozen = e(std::fs::read_to_string(dir.join("expected").join(r.report_name())))?;
        ensure(a == frozen, || format!("{} differs from the frozen report", r.report_name()))?;
    }
    Ok(format!("{} reports byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("law suite", laws_suite),
        ("Koszul duality", koszul_duality),
        ("exact sequences", exact_sequences),
        ("tower vanishing", tower),
        ("cone identities", cone),
        ("connected sum case 1", case1),
        ("connected sum case 2", case2),
        ("functoriality", functoriality),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("PASS {}. {name}: {d} [{secs:.1}s]", i + 1),
            Err(d) => {
                all = false;
                println!("FAIL {}. {name}: {d} [{secs:.1}s]", i + 1)
            }
        }
    }
    if !all {
        std::process::exit(1);
    }
}
