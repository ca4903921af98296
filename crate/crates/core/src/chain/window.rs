use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Inclusive degree interval used to slice infinite-rank complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Window> {
        if lo > hi {
            return Err(Error::InvalidWindow(lo, hi));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn widen(&self, by: i64) -> Window {
        Window { lo: self.lo - by, hi: self.hi + by }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("window `{s}` is not of the form lo..hi"))?;
        let lo = a.trim().parse::<i64>().map_err(|e| format!("window lower bound: {e}"))?;
        let hi = b.trim().parse::<i64>().map_err(|e| format!("window upper bound: {e}"))?;
        Window::new(lo, hi).map_err(|e| e.to_string())
    }
}

/// Records, for a sliced complex, the degrees at which every generator of the
/// untruncated complex survived the slicing: a finite set plus optional complete tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    finite: BTreeSet<i64>,
    from: Option<i64>,
    upto: Option<i64>,
}

/// Stand-in for −∞; stays far from overflow under the small shifts applied here.
const LOW: i64 = i64::MIN / 4;

impl Completeness {
    /// Nothing was removed.
    pub fn full() -> Completeness {
        Completeness { finite: BTreeSet::new(), from: Some(LOW), upto: None }
    }

    /// Only the listed degrees are complete.
    pub fn only(set: BTreeSet<i64>) -> Completeness {
        Completeness { finite: set, from: None, upto: None }
    }

    /// Every degree `≥ a`.
    pub fn at_least(a: i64) -> Completeness {
        Completeness { finite: BTreeSet::new(), from: Some(a), upto: None }
    }

    /// Every degree `≤ b`.
    pub fn at_most(b: i64) -> Completeness {
        Completeness { finite: BTreeSet::new(), from: None, upto: Some(b) }
    }

    /// A finite set of complete degrees together with optional tails `≥ from` and `≤ upto`.
    pub fn from_parts(finite: BTreeSet<i64>, from: Option<i64>, upto: Option<i64>) -> Completeness {
        Completeness { finite, from, upto }.normalized()
    }

    /// The finite degrees listed outside the tails.
    pub fn finite(&self) -> &BTreeSet<i64> {
        &self.finite
    }

    /// Adds individual complete degrees.
    pub fn with_degrees(mut self, ks: impl IntoIterator<Item = i64>) -> Completeness {
        self.finite.extend(ks);
        self.normalized()
    }

    fn normalized(mut self) -> Completeness {
        if let (Some(a), Some(b)) = (self.from, self.upto) {
            if a <= b + 1 {
                return Completeness::full();
            }
        }
        let (from, upto) = (self.from, self.upto);
        self.finite.retain(|&k| !(from.is_some_and(|a| k >= a) || upto.is_some_and(|b| k <= b)));
        self
    }

    pub fn is_complete(&self, k: i64) -> bool {
        self.finite.contains(&k) || self.from.is_some_and(|a| k >= a) || self.upto.is_some_and(|b| k <= b)
    }

    /// Homology at `j` agrees with the untruncated complex.
    pub fn is_safe(&self, j: i64) -> bool {
        self.is_complete(j - 1) && self.is_complete(j) && self.is_complete(j + 1)
    }

    pub fn is_full(&self) -> bool {
        self.from.is_some_and(|a| a <= LOW / 2)
    }

    pub fn lower_tail(&self) -> Option<i64> {
        self.upto
    }

    pub fn upper_tail(&self) -> Option<i64> {
        self.from
    }

    /// Safe degrees within `range`.
    pub fn safe_in(&self, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
        range.filter(|&j| self.is_safe(j)).collect()
    }

    /// Degrees that could be complete without lying in a tail.
    fn interesting(&self, spread: i64) -> BTreeSet<i64> {
        let mut out: BTreeSet<i64> = BTreeSet::new();
        for &k in &self.finite {
            out.extend(k - spread..=k + spread);
        }
        for t in [self.from, self.upto].into_iter().flatten() {
            if t > LOW / 2 {
                out.extend(t - spread..=t + spread);
            }
        }
        out
    }

    fn rebuild(&self, from: Option<i64>, upto: Option<i64>, cands: BTreeSet<i64>, test: impl Fn(i64) -> bool) -> Completeness {
        if self.is_full() {
            return Completeness::full();
        }
        let finite = cands.into_iter().filter(|&k| test(k)).collect();
        Completeness { finite, from, upto }.normalized()
    }

    /// Completeness of `X ⊗ K[y]` with `deg y = 1`: degree k uses X at k and k-1.
    pub fn doubled(&self) -> Completeness {
        self.rebuild(self.from.map(|a| a + 1), self.upto, self.interesting(2), |k| {
            self.is_complete(k) && self.is_complete(k - 1)
        })
    }

    /// Completeness of `F ⊗ X` for a finite untruncated `F` with generator degrees `degs`.
    pub fn tensor_finite(&self, degs: &BTreeSet<i64>) -> Completeness {
        let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else { return Completeness::full() };
        let spread = hi - lo + 2 + lo.abs().max(hi.abs());
        self.rebuild(self.from.map(|a| a + hi), self.upto.map(|b| b + lo), self.interesting(spread), |k| {
            degs.iter().all(|&c| self.is_complete(k - c))
        })
    }

    pub fn shifted(&self, by: i64) -> Completeness {
        if self.is_full() {
            return Completeness::full();
        }
        Completeness {
            finite: self.finite.iter().map(|k| k + by).collect(),
            from: self.from.map(|a| a + by),
            upto: self.upto.map(|b| b + by),
        }
    }

    pub fn intersect(&self, other: &Completeness) -> Completeness {
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        let from = match (self.from, other.from) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let upto = match (self.upto, other.upto) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        let mut cands = self.interesting(1);
        cands.extend(other.interesting(1));
        for (f, u) in [(self.from, other.upto), (other.from, self.upto)] {
            if let (Some(a), Some(b)) = (f, u) {
                cands.extend(a..=b);
            }
        }
        let out = Completeness { finite: cands.into_iter().filter(|&k| self.is_complete(k) && other.is_complete(k)).collect(), from, upto };
        out.normalized()
    }

    /// Whether `k + 2n` is complete for every `n` accepted by `allowed`, given that
    /// `allowed` holds on an interval (possibly unbounded) of integers.
    pub fn complete_along(&self, k: i64, n_lo: Option<i64>, n_hi: Option<i64>) -> bool {
        if self.is_full() {
            return true;
        }
        if n_hi.is_none() && self.from.is_none() {
            return false;
        }
        if n_lo.is_none() && self.upto.is_none() {
            return false;
        }
        // only degrees outside both tails need checking, and those form a bounded set
        let lo = n_lo.unwrap_or_else(|| (self.upto.unwrap() - k).div_euclid(2) - 1);
        let hi = n_hi.unwrap_or_else(|| (self.from.unwrap() - k).div_euclid(2) + 1);
        (lo..=hi).all(|n| self.is_complete(k + 2 * n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_window() {
        let w: Window = "-4..6".parse().unwrap();
        assert_eq!(w, Window { lo: -4, hi: 6 });
        assert!("3..1".parse::<Window>().is_err());
        assert!("3-1".parse::<Window>().is_err());
    }

    #[test]
    fn safety_needs_neighbours() {
        let c = Completeness::only((0..=4).collect());
        assert_eq!(c.safe_in(-2..=6), vec![1, 2, 3]);
        assert_eq!(c.doubled().safe_in(-2..=6), vec![2, 3]);
        assert!(Completeness::full().is_safe(100));
    }

    #[test]
    fn tails_survive_combinators() {
        let c = Completeness::at_least(3).with_degrees([0, 1]);
        assert!(Completeness::at_least(3).intersect(&Completeness::only([0, 1].into())).safe_in(-5..=5).is_empty());
        assert!(c.is_complete(0) && !c.is_complete(2) && c.is_complete(50));
        let d = c.doubled();
        assert!(d.is_complete(1) && !d.is_complete(0) && !d.is_complete(3) && d.is_complete(4));
        let t = Completeness::at_most(0).tensor_finite(&[0, 1].into());
        assert!(t.is_complete(0) && !t.is_complete(1) && t.is_complete(-40));
        let band = Completeness::at_least(0).intersect(&Completeness::at_most(5));
        assert!(band.is_complete(3) && !band.is_complete(6) && !band.is_complete(-1));
        assert!(Completeness::at_least(2).complete_along(0, Some(1), None));
        assert!(!Completeness::at_least(2).complete_along(0, Some(0), None));
        assert!(!Completeness::at_least(2).complete_along(0, None, Some(0)));
    }
}
