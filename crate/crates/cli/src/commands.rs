//! The subcommands, each turning parsed input into a report.

use std::str::FromStr;

use flavorkit_core::chain::{homology, homology_in, ChainComplex, Window};
use flavorkit_core::circle::{
    default_window, e_y, koszul_a, koszul_b, pinned_shift_a, s_u, Flavor, ShiftReport, PINNED_SHIFT_B,
};
use flavorkit_core::connsum::{
    case1_check, case2_check, check_positivity, cm_flavors, verify_sum_maps, FilteredComplex, SumIdentity, CASE1_SHIFT,
};
use flavorkit_core::flavors::{
    assemble, assemble_unchecked, cone_identities, four_flavors, ladder_check, point, tower_vanishing,
    BalancedComponents, TowerParams,
};
use flavorkit_core::random::{random_complex, rng, Params};
use flavorkit_core::Error as CoreError;

use crate::format::{parse, parse_raw, Document, FormatError, MapSet};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Homology,
    Su,
    Ey,
    Flavors,
    Koszul,
    Ladder,
    Tower,
    CmFlavors,
    ConsumCase1,
    ConsumCase2,
    ConsumVerify,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Verify,
        Command::Homology,
        Command::Su,
        Command::Ey,
        Command::Flavors,
        Command::Koszul,
        Command::Ladder,
        Command::Tower,
        Command::CmFlavors,
        Command::ConsumCase1,
        Command::ConsumCase2,
        Command::ConsumVerify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Homology => "homology",
            Command::Su => "su",
            Command::Ey => "ey",
            Command::Flavors => "flavors",
            Command::Koszul => "koszul",
            Command::Ladder => "ladder",
            Command::Tower => "tower",
            Command::CmFlavors => "cmflavors",
            Command::ConsumCase1 => "consum-case1",
            Command::ConsumCase2 => "consum-case2",
            Command::ConsumVerify => "consum-verify",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    A,
    B,
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "a" => Ok(Direction::A),
            "b" => Ok(Direction::B),
            _ => Err(format!("unknown direction `{s}` (expected a or b)")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub window: Option<Window>,
    pub flavor: Option<Flavor>,
    pub n: Option<i64>,
    pub direction: Option<Direction>,
    pub seed: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

pub type RunResult<T> = Result<T, RunError>;

fn usage<T>(msg: impl Into<String>) -> RunResult<T> {
    Err(RunError::Usage(msg.into()))
}

fn one<'a, T>(docs: &'a [Document], pick: impl Fn(&'a Document) -> Option<&'a T>, what: &str) -> RunResult<&'a T> {
    let found: Vec<&T> = docs.iter().filter_map(pick).collect();
    match found.as_slice() {
        [x] => Ok(x),
        [] => usage(format!("input holds no {what}")),
        _ => usage(format!("input holds more than one {what}")),
    }
}

fn complex(docs: &[Document]) -> RunResult<&ChainComplex> {
    one(docs, |d| if let Document::Complex(c) = d { Some(c) } else { None }, "complex")
}

fn filtered(docs: &[Document]) -> RunResult<&FilteredComplex> {
    one(docs, |d| if let Document::Filtered(c) = d { Some(c) } else { None }, "filtered complex")
}

fn balanced(docs: &[Document]) -> RunResult<&BalancedComponents> {
    one(docs, |d| if let Document::Balanced(c) = d { Some(c) } else { None }, "balanced block")
}

fn flavors(o: &Options) -> Vec<Flavor> {
    o.flavor.map_or_else(|| Flavor::ALL.to_vec(), |f| vec![f])
}

fn signed(s: i64) -> String {
    if s > 0 {
        format!("+{s}")
    } else {
        s.to_string()
    }
}

fn shift_summary(r: &mut Report, s: &ShiftReport) {
    let shift = match s.shift {
        Some(k) => signed(k),
        None if s.vacuous => "any".into(),
        None => "none".into(),
    };
    r.summary(&[("shift", shift), ("match", if s.matched() { "yes" } else { "no" }.into())]);
}

/// Runs a command on the text of its input file, if any.
pub fn run(cmd: Command, input: Option<&str>, o: &Options) -> RunResult<Report> {
    let mut r = Report::new(cmd.name());
    let needs_input = !matches!(cmd, Command::Tower | Command::Koszul);
    let text = match input {
        Some(t) => t,
        None if needs_input => return usage(format!("`{}` needs an input file", cmd.name())),
        None => "",
    };
    match cmd {
        Command::Verify => verify(&mut r, &parse_raw(text)?)?,
        Command::ConsumVerify => {
            let docs = parse(text)?;
            verify_maps(&mut r, &docs)?;
        }
        Command::Homology => {
            let docs = parse(text)?;
            let c = complex(&docs)?;
            r.section(&c.name);
            r.table(&match o.window {
                Some(w) => homology_in(c, &w.degrees().collect::<Vec<_>>())?,
                None => homology(c, None)?,
            });
        }
        Command::Su => {
            let docs = parse(text)?;
            let c = complex(&docs)?;
            let s = s_u(c)?;
            r.section(&s.name);
            r.table(&match o.window {
                Some(w) => homology_in(&s, &w.degrees().collect::<Vec<_>>())?,
                None => homology(&s, None)?,
            });
        }
        Command::Ey => {
            let docs = parse(text)?;
            let c = complex(&docs)?;
            let w = o.window.unwrap_or_else(|| default_window(&c.module));
            for f in flavors(o) {
                let e = e_y(c, f, &w)?;
                r.section(f.tag());
                r.table(&homology_in(&e.complex, &e.safe_degrees())?);
            }
        }
        Command::Flavors => {
            let docs = parse(text)?;
            let ff = four_flavors(complex(&docs)?, o.window)?;
            for f in Flavor::ALL {
                r.section(f.tag());
                r.table(ff.table(f));
            }
            r.section("checks");
            r.les("eq:E-sq1", "minus->inf->plus", &ff.first);
            r.les("eq:E-sq2", "minus-u->minus->hat", &ff.second);
            r.check("hat=S_U", "hat table equals H(S_U)", ff.hat_matches_su, None);
        }
        Command::Koszul => koszul(&mut r, input, o)?,
        Command::Ladder => {
            let docs = parse(text)?;
            let b = assemble(balanced(&docs)?)?;
            let l = ladder_check(&b, o.window)?;
            r.section("cone");
            r.les("eq:induced-KM1", "S_U(bar)->S_U(cone)->S_U(hat)", &l.cone_les);
            for (k, iso) in &l.j_iso {
                r.check("eq:induced-KM1", format!("S_U(j) iso at {k}"), *iso, None);
            }
            for row in &l.rows {
                r.section(row.name);
                r.les("eq:E-sq1", "first sequence", &row.seqs.first);
                r.les("eq:E-sq2", "second sequence", &row.seqs.second);
            }
            r.section("squares");
            let bad = l.squares.iter().find(|s| !s.commutes);
            let detail = match bad {
                Some(s) => format!("{} {:?} at {}", s.map, s.square, s.degree),
                None => format!("{} squares", l.squares.len()),
            };
            r.check("naturality", "ladder squares commute", bad.is_none(), Some(detail));
        }
        Command::Tower => {
            let base = match input {
                Some(t) => complex(&parse(t)?)?.clone(),
                None => point(flavorkit_core::exactlin::Ring::Integers),
            };
            let n = o.n.unwrap_or(3);
            let v = tower_vanishing(&TowerParams::new(base, n))?;
            r.section("safe");
            for (j, g) in &v.safe_classes {
                r.group(*j, g.clone());
            }
            r.section("edge");
            for (j, g) in &v.edge_classes {
                r.group(*j, g.clone());
            }
            r.summary(&[("n", n.to_string()), ("safe_degrees", v.safe.len().to_string()), ("edge_classes", v.edge_classes.len().to_string())]);
            r.check("lem:tower", "H(S_U(bar)) vanishes at safe degrees", v.vanishes(), None);
        }
        Command::CmFlavors => {
            let docs = parse(text)?;
            let f = filtered(&docs)?;
            r.section("positivity");
            r.check("n>=0", "differential exponents nonnegative", check_positivity(f), None);
            if !check_positivity(f) {
                return Ok(r);
            }
            let w = match o.window {
                Some(w) => w,
                None => default_window(&f.module),
            };
            let cm = cm_flavors(f, &w)?;
            let safe: Vec<i64> = w.degrees().filter(|&j| w.contains(j - 1) && w.contains(j + 1)).collect();
            for (name, c) in cm.complexes() {
                r.section(name);
                r.table(&homology_in(c, &safe)?);
            }
            r.section("checks");
            r.les("eq:fund-short", "CM- -> CMinf -> CM+", &cm.first);
            r.les("eq:fund-short", "U CM- -> CM- -> CMhat", &cm.second);
        }
        Command::ConsumCase1 => {
            let docs = parse(text)?;
            let c = complex(&docs)?;
            let n = o.n.unwrap_or(4);
            let hi = c.module.degree_span().map_or(0, |s| s.1);
            let w = o.window.unwrap_or(Window { lo: -2 * n, hi: hi + 4 });
            let s = case1_check(c, n, &w)?;
            r.section("S_U(product)");
            r.table(&s.left);
            shift_summary(&mut r, &s);
            r.check("sec:case1", format!("uniform shift {}", signed(CASE1_SHIFT)), s.consistent_with(CASE1_SHIFT), None);
        }
        Command::ConsumCase2 => {
            let docs = parse(text)?;
            let c = complex(&docs)?;
            let w = o.window.unwrap_or_else(|| default_window(&c.module));
            for f in flavors(o) {
                match case2_check(c, f, &w) {
                    Ok(ok) => r.check("eq:S=eq:E", f.tag(), ok, None),
                    Err(CoreError::IdentificationFailed(m)) => r.check("eq:S=eq:E", f.tag(), false, Some(m)),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(r)
}

fn koszul(r: &mut Report, input: Option<&str>, o: &Options) -> RunResult<()> {
    let c = match (input, o.seed) {
        (Some(t), _) => complex(&parse(t)?)?.clone(),
        (None, Some(seed)) => random_complex(&mut rng(seed), &Params::default(), "R", true, true),
        (None, None) => return usage("`koszul` needs an input file or --seed"),
    };
    match o.direction.unwrap_or(Direction::A) {
        Direction::A => {
            for f in flavors(o) {
                let k = koszul_a(&c, f, o.window)?;
                r.section(format!("a/{}", f.tag()));
                shift_summary(r, &k.shift);
                let pinned = pinned_shift_a(f);
                let expect = pinned.map_or("vanishing".to_string(), signed);
                r.check("thm:koszul", format!("shift {expect}"), k.passed(pinned), None);
            }
        }
        Direction::B => {
            let mut y = c.clone();
            if y.y.is_none() {
                return usage("direction b needs a complex with a Y-action");
            }
            y.u = None;
            let k = koszul_b(&y, o.window)?;
            r.section("b");
            shift_summary(r, &k.shift);
            r.check("thm:koszul", format!("shift {}", signed(PINNED_SHIFT_B)), k.passed(Some(PINNED_SHIFT_B)), None);
        }
    }
    Ok(())
}

fn witness(w: &Option<(String, String)>) -> Option<String> {
    w.as_ref().map(|(a, b)| format!("{a} -> {b}"))
}

fn verify(r: &mut Report, docs: &[Document]) -> RunResult<()> {
    if docs.iter().any(|d| matches!(d, Document::Maps(_))) {
        return verify_maps(r, docs);
    }
    for d in docs {
        match d {
            Document::Complex(c) => {
                r.section(format!("complex {}", c.name));
                for res in c.validate().results {
                    r.check(res.law.tag(), "law", res.passed, witness(&res.witness));
                }
            }
            Document::Filtered(f) => {
                r.section(format!("filtered {}", f.name));
                let sq = f.check_square();
                let detail = match &sq {
                    Err(CoreError::Validation { src, dst, .. }) => Some(format!("{src} -> {dst}")),
                    _ => None,
                };
                r.check("d^2=0", "Laurent square", sq.is_ok(), detail);
                r.check("n>=0", "differential exponents nonnegative", check_positivity(f), None);
            }
            Document::Balanced(bc) => {
                r.section(format!("balanced {}", bc.name));
                let b = assemble_unchecked(bc)?;
                let checks = b.check_all();
                for c in &checks {
                    r.check(c.law.tag(), c.law.name(), c.passed, witness(&c.witness));
                }
                if checks.iter().all(|c| c.passed) {
                    r.section("cone");
                    for c in cone_identities(&b)?.checks {
                        r.check(c.identity.tag(), c.identity.formula(), c.passed, witness(&c.witness));
                    }
                }
            }
            Document::Maps(_) => unreachable!("handled above"),
        }
    }
    Ok(())
}

fn verify_maps(r: &mut Report, docs: &[Document]) -> RunResult<()> {
    let cs: Vec<&ChainComplex> = docs.iter().filter_map(|d| if let Document::Complex(c) = d { Some(c) } else { None }).collect();
    let ms: Vec<&MapSet> = docs.iter().filter_map(|d| if let Document::Maps(m) = d { Some(m) } else { None }).collect();
    let ([sharp, sum], [m]) = (cs.as_slice(), ms.as_slice()) else {
        return usage("a map file holds the summed complex, the product complex and one maps block, in that order");
    };
    let maps = m.resolve(sharp, sum)?;
    let rep = verify_sum_maps(sharp, sum, &maps)?;
    r.section(format!("maps {}", m.name));
    for c in rep.checks {
        let tag = match c.identity {
            SumIdentity::SharpComposite | SumIdentity::SumComposite => "eq:cob-comp",
            _ => "eq:chain-maps",
        };
        r.check(tag, c.identity.formula(), c.passed, witness(&c.witness));
    }
    Ok(())
}
