use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient ring: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[derive(Default)]
pub enum Ring {
    #[default]
    Integers,
    Prime(u64),
}


impl Ring {
    pub fn is_field(self) -> bool {
        matches!(self, Ring::Prime(_))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Integers => 0,
            Ring::Prime(p) => p,
        }
    }

    /// Canonical representative (entries over F_p live in [0, p)).
    pub fn reduce(self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::Prime(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn reduce_ref(self, x: &BigInt) -> BigInt {
        self.reduce(x.clone())
    }

    /// Size used to pick elimination pivots.
    pub fn size(self, x: &BigInt) -> BigInt {
        match self {
            Ring::Integers => x.abs(),
            Ring::Prime(_) => {
                if x.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Euclidean division `a = q*b + r` with r smaller than b (r = 0 over a field).
    pub fn div_rem(self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        match self {
            Ring::Integers => {
                let (q, r) = a.div_mod_floor(b);
                (q, r)
            }
            Ring::Prime(_) => {
                let inv = self.inverse(b).expect("division by zero in prime field");
                (self.reduce(a * inv), BigInt::zero())
            }
        }
    }

    /// Multiplicative inverse when it exists.
    pub fn inverse(self, a: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => {
                if a.is_one() || (-a).is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Ring::Prime(p) => {
                let p = BigInt::from(p);
                let a = a.mod_floor(&p);
                if a.is_zero() {
                    return None;
                }
                let e = a.extended_gcd(&p);
                Some(e.x.mod_floor(&p))
            }
        }
    }

    /// Unit that brings `a` to its canonical associate (positive over Z, one over F_p).
    pub fn normalizing_unit(self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            Ring::Prime(_) => self.inverse(a).unwrap_or_else(BigInt::one),
        }
    }

    pub fn divides(self, a: &BigInt, b: &BigInt) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        match self {
            Ring::Integers => (b % a).is_zero(),
            Ring::Prime(_) => true,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown ring `{0}` (expected Z or F<p> with p prime)")]
pub struct RingParseError(pub String);

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FromStr for Ring {
    type Err = RingParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        if let Some(rest) = s.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u64>() {
                if is_prime(p) && p < (1 << 31) {
                    return Ok(Ring::Prime(p));
                }
            }
        }
        Err(RingParseError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::Prime(2));
        assert!("F4".parse::<Ring>().is_err());
        assert_eq!(Ring::Prime(7).to_string(), "F7");
    }

    #[test]
    fn field_inverse() {
        let r = Ring::Prime(7);
        for a in 1..7 {
            let inv = r.inverse(&BigInt::from(a)).unwrap();
            assert_eq!(r.reduce(inv * a), BigInt::one());
        }
        assert_eq!(r.inverse(&BigInt::from(14)), None);
    }
}
