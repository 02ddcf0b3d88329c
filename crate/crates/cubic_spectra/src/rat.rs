//! Exact rational scalars.
//!
//! `Rat` is a reduced fraction of arbitrary-precision integers with positive
//! denominator; `num-rational` maintains both invariants on every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "a" or "a/b" with an optional sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// 2^k as a rational, k may be negative.
pub fn pow2(k: i64) -> Rat {
    let two = rat_i(2);
    if k >= 0 {
        Rat::from_integer(BigInt::one() << (k as usize))
    } else {
        Rat::one() / Rat::from_integer(BigInt::one() << ((-k) as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_i(7));
        assert!(parse_rat("1/0").is_none());
        // denominator stays positive
        let r = Rat::new(BigInt::from(3), BigInt::from(-6));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(r, rat(-1, 2));
    }
}
