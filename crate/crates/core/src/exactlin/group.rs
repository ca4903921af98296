use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with d1 | d2 | ... | dk, each >= 2.
///
/// Over a prime field the same type records a vector space: `free_rank` is the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds the canonical form from an arbitrary list of cyclic orders (0 meaning Z).
    pub fn from_orders<'a>(orders: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let mut free = 0;
        let mut cyc = Vec::new();
        for o in orders {
            if o.is_zero() {
                free += 1;
            } else {
                let a = if *o < BigInt::zero() { -o.clone() } else { o.clone() };
                if !a.is_one() {
                    cyc.push(a);
                }
            }
        }
        AbelianGroup { free_rank: free, torsion: invariant_chain(cyc) }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion: invariant_chain(t) }
    }

    /// Number of generators in the canonical presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

/// Converts a list of cyclic orders (each >= 2) into the invariant-factor chain.
fn invariant_chain(orders: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    if orders.is_empty() {
        return orders;
    }
    // Repeatedly replace (a, b) by (gcd, lcm) until the list is a divisibility chain.
    let mut v = orders;
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|x| !x.is_one());
    v
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
