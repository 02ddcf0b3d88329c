//! Dense univariate polynomials over ℚ: the workhorse for root isolation,
//! Sturm counts and fiber queries.

use crate::poly::RatPoly;
use crate::rat::{sign, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients by ascending power; the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly(pub Vec<Rat>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(vec![])
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while matches!(c.last(), Some(t) if t.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UPoly(vec![Rat::zero(), Rat::one()])
    }

    /// Extracts the dense coefficient list of a one-variable `RatPoly`.
    /// Panics when the polynomial involves another variable.
    pub fn from_ratpoly(p: &RatPoly, var: usize) -> Self {
        let mut c = vec![Rat::zero(); p.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (e, k) in p.terms() {
            for (i, &x) in e.iter().enumerate() {
                assert!(i == var || x == 0, "polynomial is not univariate in the chosen variable");
            }
            c[e[var] as usize] = k.clone();
        }
        Self::from_coeffs(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.0.len() - 1);
        for (k, a) in self.0.iter().enumerate().skip(1) {
            c.push(a * Rat::from_integer(BigInt::from(k)));
        }
        Self::from_coeffs(c)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut c = vec![Rat::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            c[i] += a;
        }
        for (i, b) in rhs.0.iter().enumerate() {
            c[i] += b;
        }
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let dr = rhs.degree().unwrap();
        let lead = rhs.leading();
        let mut quot = vec![Rat::zero(); self.0.len().saturating_sub(dr)];
        while let Some(d) = rem.degree() {
            if d < dr {
                break;
            }
            let q = rem.leading() / &lead;
            let shift = d - dr;
            quot[shift] = q.clone();
            let mut c = rem.0;
            for (j, b) in rhs.0.iter().enumerate() {
                c[shift + j] -= &q * b;
            }
            rem = Self::from_coeffs(c);
        }
        (Self::from_coeffs(quot), rem)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading();
            a.scale(&(Rat::one() / l))
        }
    }

    /// Squarefree part `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let l = q.leading();
        q.scale(&(Rat::one() / l))
    }

    /// Yun's squarefree decomposition: list of (factor, multiplicity) with
    /// pairwise-coprime monic factors, product of factor^mult = self/lc.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero());
        let lc = self.leading();
        let f = self.scale(&(Rat::one() / lc));
        if f.degree() == Some(0) {
            return vec![];
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut out = vec![];
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    let l = b.leading();
                    out.push((b.scale(&(Rat::one() / l)), i));
                }
                break;
            }
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            i += 1;
        }
        out
    }

    /// Integer polynomial proportional to `self` with coprime coefficients
    /// and positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut den = BigInt::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * &den / c.denom()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().unwrap().is_negative() {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        ints
    }

    /// Sturm sequence (self, self', -rem, ...).
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                return seq;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.neg());
        }
    }

    /// Number of distinct real roots in the open interval (a, b), via Sturm.
    /// Both endpoints must be non-roots.
    pub fn count_roots_between(&self, a: &Rat, b: &Rat) -> usize {
        let seq = self.sturm_sequence();
        assert!(!self.eval(a).is_zero() && !self.eval(b).is_zero(), "endpoint is a root");
        let variations = |x: &Rat| {
            let mut last = 0i8;
            let mut v = 0usize;
            for p in &seq {
                let s = sign(&p.eval(x));
                if s != 0 {
                    if last != 0 && s != last {
                        v += 1;
                    }
                    last = s;
                }
            }
            v
        };
        variations(a) - variations(b)
    }

    /// Number of distinct real roots strictly below `c` (non-root).
    pub fn count_roots_below(&self, c: &Rat) -> usize {
        let bound = self.root_bound();
        let lo = -&bound - Rat::one();
        if *c <= lo {
            return 0;
        }
        self.count_roots_between(&lo, c)
    }

    pub fn count_real_roots(&self) -> usize {
        let bound = self.root_bound();
        let lo = -&bound - Rat::one();
        let hi = bound + Rat::one();
        self.count_roots_between(&lo, &hi)
    }

    /// Cauchy bound: every real root has |x| <= 1 + max |a_i / a_n|.
    pub fn root_bound(&self) -> Rat {
        let lead = self.leading();
        assert!(!lead.is_zero());
        let mut m = Rat::zero();
        for c in &self.0[..self.0.len() - 1] {
            let r = (c / &lead).abs();
            if r > m {
                m = r;
            }
        }
        m + Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = p(&[2, -3, 0, 1]);
        let sf = f.squarefree_part();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, p(&[-2, 1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p(&[2, 1]), 1)); // x+2
        assert_eq!(dec[1], (p(&[-1, 1]), 2)); // (x-1)^2
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2: two real roots
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.count_real_roots(), 2);
        // x^2 + 1: none
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(f.count_roots_below(&rat_i(0)), 1);
    }
}
