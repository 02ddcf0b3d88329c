//! Real algebraic numbers as (squarefree polynomial, isolating interval),
//! with exact sign determination of polynomial expressions at the number.

use crate::interval::RatInterval;
use crate::rat::{sign, Rat};
use crate::roots::RootBox;
use crate::upoly::UPoly;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct RealAlg {
    poly: UPoly,
    lo: Rat,
    hi: Rat,
    exact: Option<Rat>,
}

impl RealAlg {
    pub fn from_rational(r: Rat) -> Self {
        RealAlg { poly: UPoly::x(), lo: r.clone(), hi: r.clone(), exact: Some(r) }
    }

    /// Adopts a root box; the box's squarefree defining factor comes along.
    pub fn from_root_box(factor: &UPoly, b: &RootBox) -> Self {
        RealAlg {
            poly: factor.clone(),
            lo: b.lo().clone(),
            hi: b.hi().clone(),
            exact: b.exact.clone(),
        }
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn exact(&self) -> Option<&Rat> {
        self.exact.as_ref()
    }

    pub fn defining_poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn refine_step(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let m = (self.lo.clone() + &self.hi) / crate::rat::rat_i(2);
        let fm = self.poly.eval(&m);
        if fm.is_zero() {
            self.lo = m.clone();
            self.hi = m.clone();
            self.exact = Some(m);
            return;
        }
        let flo = self.poly.eval(&self.lo);
        if sign(&flo) * sign(&fm) < 0 {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    pub fn refine_below(&mut self, w: &Rat) {
        while self.exact.is_none() && (self.hi.clone() - &self.lo) >= *w {
            self.refine_step();
        }
    }

    /// Exact sign of q(α). Zero is detected algebraically via
    /// gcd(defining polynomial, q) having a root in the isolating interval.
    pub fn sign_of(&mut self, q: &UPoly) -> i8 {
        if q.is_zero() {
            return 0;
        }
        if let Some(r) = &self.exact {
            return sign(&q.eval(r));
        }
        let g = self.poly.gcd(q);
        if g.degree().unwrap_or(0) > 0 {
            // a root of g inside the isolating interval must be α itself
            let glo = g.eval(&self.lo);
            let ghi = g.eval(&self.hi);
            if glo.is_zero() || ghi.is_zero() {
                // endpoint collision: nudge by refining and retry
                self.refine_step();
                return self.sign_of(q);
            }
            if g.count_roots_between(&self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        // q(α) != 0: refine until the interval sign is determined
        loop {
            let iv = RatInterval::eval_upoly(q, &self.interval());
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return s;
                }
            }
            self.refine_step();
            if let Some(r) = &self.exact {
                return sign(&q.eval(r));
            }
        }
    }

    /// Sign of the rational-function value num(α)/den(α); den(α) must be
    /// nonzero (checked).
    pub fn sign_of_fraction(&mut self, num: &UPoly, den: &UPoly) -> i8 {
        let sd = self.sign_of(den);
        assert!(sd != 0, "denominator vanishes at the algebraic point");
        self.sign_of(num) * sd
    }

    /// Compares α with a rational threshold.
    pub fn cmp_rat(&mut self, c: &Rat) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if let Some(r) = &self.exact {
            return r.cmp(c);
        }
        loop {
            if &self.hi < c {
                return Ordering::Less;
            }
            if &self.lo > c {
                return Ordering::Greater;
            }
            // c inside: is α = c?
            if self.poly.eval(c).is_zero() && self.lo < *c && *c < self.hi {
                self.lo = c.clone();
                self.hi = c.clone();
                self.exact = Some(c.clone());
                return Ordering::Equal;
            }
            self.refine_step();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use crate::roots::isolate_real_roots;

    #[test]
    fn sqrt2_signs() {
        let f = UPoly::from_coeffs(vec![rat_i(-2), rat_i(0), rat_i(1)]);
        let boxes = isolate_real_roots(&f).unwrap();
        let mut a = RealAlg::from_root_box(&f, &boxes[1]); // +sqrt(2)
        // sign of x - 1 at sqrt 2: positive
        assert_eq!(a.sign_of(&UPoly::from_coeffs(vec![rat_i(-1), rat_i(1)])), 1);
        // sign of x^2 - 2: exact zero
        assert_eq!(a.sign_of(&f), 0);
        // sign of x - 3/2: negative (sqrt2 < 1.5)
        assert_eq!(a.sign_of(&UPoly::from_coeffs(vec![rat(-3, 2), rat_i(1)])), -1);
        assert_eq!(a.cmp_rat(&rat(3, 2)), std::cmp::Ordering::Less);
    }
}
