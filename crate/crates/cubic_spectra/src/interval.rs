//! Rational interval arithmetic for certified sign evaluation.

use crate::rat::{sign, Rat};
use crate::upoly::UPoly;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        RatInterval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> Rat {
        self.hi.clone() - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if determined: +1, -1, or None when the interval straddles 0.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval { lo: self.lo.clone() + &o.lo, hi: self.hi.clone() + &o.hi }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            self.lo.clone() * &o.lo,
            self.lo.clone() * &o.hi,
            self.hi.clone() * &o.lo,
            self.hi.clone() * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    /// Division, defined only when the divisor excludes zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.contains_zero(), "interval division by interval containing zero");
        let inv = RatInterval {
            lo: Rat::from_integer(1.into()) / o.hi.clone(),
            hi: Rat::from_integer(1.into()) / o.lo.clone(),
        };
        self.mul(&inv)
    }

    /// Interval Horner evaluation of a univariate polynomial.
    pub fn eval_upoly(p: &UPoly, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in p.0.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

pub fn sign_rat(r: &Rat) -> i8 {
    sign(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn interval_ops() {
        let a = RatInterval::new(rat_i(1), rat_i(2));
        let b = RatInterval::new(rat_i(-1), rat_i(1));
        assert_eq!(a.mul(&b), RatInterval::new(rat_i(-2), rat_i(2)));
        assert_eq!(a.sign(), Some(1));
        assert_eq!(b.sign(), None);
    }

    #[test]
    fn horner() {
        let p = UPoly::from_coeffs(vec![rat_i(-2), rat_i(0), rat_i(1)]); // x^2-2
        let x = RatInterval::new(rat(14, 10), rat(15, 10));
        let v = RatInterval::eval_upoly(&p, &x);
        assert!(v.contains_zero());
    }
}
