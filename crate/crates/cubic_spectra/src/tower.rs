//! Iterated quadratic extensions ℚ(√d₁)(√d₂)…: exact arithmetic, square
//! detection, and certified sign evaluation for real-embedded towers.
//!
//! An element of the level-k field is a vector of 2^k rationals in the
//! product basis of the adjoined square roots. A generator is only adjoined
//! after verifying its radicand is not already a square in the tower, which
//! keeps representations canonical and zero tests sound.

use crate::interval::RatInterval;
use crate::rat::{rat_i, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
#[allow(unused_imports)]
use num_traits::sign::Signed as _;

/// Element of the tower at some level; `coeffs.len() == 1 << level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElem {
    pub level: usize,
    pub coeffs: Vec<Rat>,
}

impl TElem {
    pub fn rational(r: Rat) -> Self {
        TElem { level: 0, coeffs: vec![r] }
    }

    pub fn zero(level: usize) -> Self {
        TElem { level, coeffs: vec![Rat::zero(); 1 << level] }
    }

    pub fn one(level: usize) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[0] = Rat::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn halves(&self) -> (TElem, TElem) {
        let n = self.coeffs.len() / 2;
        (
            TElem { level: self.level - 1, coeffs: self.coeffs[..n].to_vec() },
            TElem { level: self.level - 1, coeffs: self.coeffs[n..].to_vec() },
        )
    }

    fn join(a: TElem, b: TElem) -> TElem {
        let mut coeffs = a.coeffs;
        coeffs.extend(b.coeffs);
        TElem { level: a.level + 1, coeffs }
    }
}

/// A tower of real or complex quadratic extensions. Each generator g_k
/// satisfies g_k² = radicand[k] (an element of level k). For real-embedded
/// towers every radicand is positive and g_k denotes the positive root.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    radicands: Vec<TElem>,
    /// Interval enclosure of each generator, when the tower is real so far.
    real: bool,
}

impl Tower {
    pub fn new() -> Self {
        Tower { radicands: vec![], real: true }
    }

    pub fn level(&self) -> usize {
        self.radicands.len()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Lifts an element to the top level.
    pub fn lift(&self, e: &TElem) -> TElem {
        let mut out = e.clone();
        while out.level < self.level() {
            let lvl = out.level;
            out = TElem::join(out, TElem::zero(lvl));
        }
        out
    }

    pub fn add(&self, a: &TElem, b: &TElem) -> TElem {
        let (a, b) = (self.lift(a), self.lift(b));
        TElem {
            level: a.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &TElem) -> TElem {
        TElem { level: a.level, coeffs: a.coeffs.iter().map(|x| -x.clone()).collect() }
    }

    pub fn sub(&self, a: &TElem, b: &TElem) -> TElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &TElem, b: &TElem) -> TElem {
        let (a, b) = (self.lift(a), self.lift(b));
        self.mul_at(&a, &b, a.level)
    }

    fn mul_at(&self, a: &TElem, b: &TElem, level: usize) -> TElem {
        if level == 0 {
            return TElem::rational(a.coeffs[0].clone() * &b.coeffs[0]);
        }
        let (a0, a1) = a.halves();
        let (b0, b1) = b.halves();
        let d = &self.radicands[level - 1];
        let lo = self.add(
            &self.mul_at(&a0, &b0, level - 1),
            &self.mul_at(&self.mul_at(&a1, &b1, level - 1), d, level - 1),
        );
        let hi = self.add(&self.mul_at(&a0, &b1, level - 1), &self.mul_at(&a1, &b0, level - 1));
        TElem::join(self.truncate(&lo, level - 1), self.truncate(&hi, level - 1))
    }

    /// Reduces an element known to live at `level` back to that width.
    fn truncate(&self, e: &TElem, level: usize) -> TElem {
        if e.level <= level {
            let mut out = e.clone();
            while out.level < level {
                let lvl = out.level;
                out = TElem::join(out, TElem::zero(lvl));
            }
            return out;
        }
        // higher coefficients must vanish
        debug_assert!(e.coeffs[(1 << level)..].iter().all(|c| c.is_zero()));
        TElem { level, coeffs: e.coeffs[..(1 << level)].to_vec() }
    }

    pub fn inv(&self, a: &TElem) -> TElem {
        assert!(!a.is_zero(), "inversion of zero");
        let a = self.lift(a);
        self.inv_at(&a, a.level)
    }

    fn inv_at(&self, a: &TElem, level: usize) -> TElem {
        if level == 0 {
            return TElem::rational(Rat::one() / a.coeffs[0].clone());
        }
        let (a0, a1) = a.halves();
        let d = &self.radicands[level - 1];
        // (a0 + a1 g)^-1 = (a0 - a1 g) / (a0^2 - a1^2 d)
        let n = self.sub(
            &self.mul_at(&a0, &a0, level - 1),
            &self.mul_at(&self.mul_at(&a1, &a1, level - 1), d, level - 1),
        );
        let n = self.truncate(&n, level - 1);
        assert!(!n.is_zero(), "radicand was a square: inconsistent tower");
        let ninv = self.inv_at(&n, level - 1);
        let lo = self.mul_at(&a0, &ninv, level - 1);
        let hi = self.neg(&self.mul_at(&a1, &ninv, level - 1));
        TElem::join(self.truncate(&lo, level - 1), self.truncate(&hi, level - 1))
    }

    pub fn div(&self, a: &TElem, b: &TElem) -> TElem {
        self.mul(a, &self.inv(b))
    }

    /// Square root inside the tower, if one exists.
    pub fn sqrt(&self, e: &TElem) -> Option<TElem> {
        let e = self.lift(e);
        self.sqrt_at(&e, e.level)
    }

    fn sqrt_at(&self, e: &TElem, level: usize) -> Option<TElem> {
        if level == 0 {
            let r = &e.coeffs[0];
            if r.is_negative() {
                return None;
            }
            if r.is_zero() {
                return Some(TElem::rational(Rat::zero()));
            }
            let ns = r.numer().sqrt();
            let ds = r.denom().sqrt();
            if &ns * &ns == *r.numer() && &ds * &ds == *r.denom() {
                return Some(TElem::rational(Rat::new(ns, ds)));
            }
            return None;
        }
        let (a, b) = e.halves();
        let d = &self.radicands[level - 1];
        if b.is_zero() {
            // sqrt in the lower field, or y * g with y^2 = a / d
            if let Some(x) = self.sqrt_at(&a, level - 1) {
                return Some(TElem::join(x, TElem::zero(level - 1)));
            }
            if !a.is_zero() {
                let q = self.truncate(&self.div(&a, d), level - 1);
                if let Some(y) = self.sqrt_at(&q, level - 1) {
                    return Some(TElem::join(TElem::zero(level - 1), y));
                }
            }
            return None;
        }
        // (x + y g)^2 = x^2 + y^2 d + 2 x y g: solve x^2 as a root of
        // t^2 - a t + b^2 d / 4
        let b2d =
            self.truncate(&self.mul_at(&self.mul_at(&b, &b, level - 1), d, level - 1), level - 1);
        let disc = self.sub(
            &self.truncate(&self.mul_at(&a, &a, level - 1), level - 1),
            &b2d,
        );
        let disc = self.truncate(&disc, level - 1);
        let n = self.sqrt_at(&disc, level - 1)?;
        let half = TElem::rational(Rat::new(BigInt::one(), BigInt::from(2)));
        for sgn in [1i8, -1] {
            let t = if sgn > 0 { self.add(&a, &n) } else { self.sub(&a, &n) };
            let x2 = self.truncate(&self.mul(&t, &self.lift_low(&half, level - 1)), level - 1);
            if let Some(x) = self.sqrt_at(&x2, level - 1) {
                if x.is_zero() {
                    continue;
                }
                let two_x = self.add(&x, &x);
                let y = self.truncate(&self.div(&b, &two_x), level - 1);
                return Some(TElem::join(x, y));
            }
        }
        None
    }

    fn lift_low(&self, e: &TElem, level: usize) -> TElem {
        let mut out = e.clone();
        while out.level < level {
            let lvl = out.level;
            out = TElem::join(out, TElem::zero(lvl));
        }
        out
    }

    /// Adjoins √r (r a current-level element). Returns the generator, or the
    /// existing square root if r is already a square. `Err` when r = 0.
    pub fn adjoin_sqrt(&mut self, r: &TElem) -> Result<TElem, ()> {
        if r.is_zero() {
            return Err(());
        }
        let r = self.lift(r);
        if let Some(s) = self.sqrt(&r) {
            return Ok(self.lift(&s));
        }
        if self.real {
            // stays real only if r > 0
            if self.sign(&r) < 0 {
                self.real = false;
            }
        }
        self.radicands.push(r);
        let lvl = self.level();
        let mut g = TElem::zero(lvl);
        g.coeffs[1 << (lvl - 1)] = Rat::one();
        Ok(g)
    }

    /// Interval enclosure of an element of a real tower, at dyadic precision
    /// 2^-prec on each generator.
    pub fn enclose(&self, e: &TElem, prec: i64) -> RatInterval {
        assert!(self.real, "interval evaluation needs a real tower");
        let gens: Vec<RatInterval> =
            (0..self.level()).map(|k| self.gen_interval(k, prec)).collect();
        self.enclose_with(e, &gens)
    }

    fn enclose_with(&self, e: &TElem, gens: &[RatInterval]) -> RatInterval {
        fn go(coeffs: &[Rat], level: usize, gens: &[RatInterval]) -> RatInterval {
            if level == 0 {
                return RatInterval::point(coeffs[0].clone());
            }
            let n = coeffs.len() / 2;
            let lo = go(&coeffs[..n], level - 1, gens);
            let hi = go(&coeffs[n..], level - 1, gens);
            lo.add(&hi.mul(&gens[level - 1]))
        }
        go(&e.coeffs, e.level, gens)
    }

    fn gen_interval(&self, k: usize, prec: i64) -> RatInterval {
        // positive square root of radicands[k], bisected to width 2^-prec
        let mut sub_prec = prec + 2;
        loop {
            let gens: Vec<RatInterval> =
                (0..k).map(|j| self.gen_interval(j, sub_prec)).collect();
            let d = self.enclose_with(&self.radicands[k], &gens);
            if d.lo.is_negative() || d.lo.is_zero() {
                sub_prec += 8;
                continue;
            }
            let mut lo = Rat::zero();
            let mut hi = if d.hi >= Rat::one() { d.hi.clone() } else { Rat::one() };
            let target = crate::rat::pow2(-prec);
            while hi.clone() - &lo > target {
                let m = (lo.clone() + &hi) / rat_i(2);
                let m2 = m.clone() * &m;
                if m2 <= d.lo {
                    lo = m;
                } else if m2 >= d.hi {
                    hi = m;
                } else {
                    // radicand interval too wide to decide: refine it
                    sub_prec += 8;
                    break;
                }
            }
            if hi.clone() - &lo <= target {
                return RatInterval::new(lo, hi);
            }
        }
    }

    /// Exact sign of a real-tower element.
    pub fn sign(&self, e: &TElem) -> i8 {
        assert!(self.real, "sign evaluation needs a real tower");
        if e.is_zero() {
            return 0;
        }
        let mut prec = 8i64;
        loop {
            let iv = self.enclose(e, prec);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return s;
                }
            }
            prec *= 2;
            assert!(prec < 1 << 20, "sign evaluation failed to converge");
        }
    }
}

/// Dense polynomials with tower coefficients (ascending powers).
#[derive(Clone, Debug)]
pub struct TPoly(pub Vec<TElem>);

impl TPoly {
    pub fn normalize(mut self, t: &Tower) -> Self {
        let _ = t;
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, t: &Tower, x: &TElem) -> TElem {
        let mut acc = TElem::zero(0);
        for c in self.0.iter().rev() {
            acc = t.add(&t.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, _t: &Tower) -> TPoly {
        if self.0.len() <= 1 {
            return TPoly(vec![]);
        }
        TPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| {
                    let mut s = c.clone();
                    s.coeffs.iter_mut().for_each(|r| *r *= rat_i(k as i64));
                    s
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, t: &Tower, rhs: &TPoly) -> (TPoly, TPoly) {
        let dr = rhs.degree().expect("division by zero polynomial");
        let lead_inv = t.inv(&rhs.0[dr]);
        let mut rem = self.0.clone();
        let mut quot = vec![TElem::zero(0); self.0.len().saturating_sub(dr)];
        while rem.len() > dr {
            let q = t.mul(rem.last().unwrap(), &lead_inv);
            let shift = rem.len() - 1 - dr;
            quot[shift] = q.clone();
            for (j, b) in rhs.0.iter().enumerate() {
                let sub = t.mul(&q, b);
                rem[shift + j] = t.sub(&rem[shift + j], &sub);
            }
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.len() > dr + shift {
                // leading term failed to cancel: numerical impossibility
                panic!("tower division failed to reduce degree");
            }
        }
        (TPoly(quot).normalize(t), TPoly(rem).normalize(t))
    }

    pub fn gcd(&self, t: &Tower, rhs: &TPoly) -> TPoly {
        let mut a = self.clone().normalize(t);
        let mut b = rhs.clone().normalize(t);
        while b.degree().is_some() {
            let (_, r) = a.div_rem(t, &b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = t.inv(&a.0[d]);
            TPoly(a.0.iter().map(|c| t.mul(c, &inv)).collect())
        } else {
            a
        }
    }

    /// Squarefree decomposition over the tower field (Yun): pairwise
    /// coprime monic factors with multiplicities.
    pub fn squarefree_factors(&self, t: &Tower) -> Vec<(TPoly, usize)> {
        let f = self.clone().normalize(t);
        let d = f.degree().unwrap_or(0);
        if d == 0 {
            return vec![];
        }
        let df = f.derivative(t);
        let mut a = f.gcd(t, &df);
        let mut b = f.div_rem(t, &a).0;
        let mut c = df.div_rem(t, &a).0;
        let mut out = vec![];
        let mut i = 1usize;
        loop {
            let bp = b.derivative(t);
            let dpoly = sub_tpoly(t, &c, &bp);
            if dpoly.degree().is_none() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((make_monic(t, &b), i));
                }
                break;
            }
            a = b.gcd(t, &dpoly);
            if a.degree().unwrap_or(0) > 0 {
                out.push((make_monic(t, &a), i));
            }
            b = b.div_rem(t, &a).0;
            c = dpoly.div_rem(t, &a).0;
            i += 1;
        }
        out
    }

    /// Multiplicity profile: (multiplicity, degree of that factor).
    pub fn squarefree_profile(&self, t: &Tower) -> Vec<(usize, usize)> {
        self.squarefree_factors(t)
            .into_iter()
            .map(|(f, m)| (m, f.degree().unwrap_or(0)))
            .collect()
    }

    /// Sturm sequence over the tower field.
    pub fn sturm_sequence(&self, t: &Tower) -> Vec<TPoly> {
        let mut seq = vec![self.clone().normalize(t), self.derivative(t).normalize(t)];
        loop {
            let n = seq.len();
            if seq[n - 1].degree().is_none() {
                seq.pop();
                return seq;
            }
            let (_, r) = seq[n - 2].div_rem(t, &seq[n - 1]);
            let neg = TPoly(r.0.iter().map(|c| t.neg(c)).collect()).normalize(t);
            seq.push(neg);
        }
    }
}

fn sub_tpoly(t: &Tower, a: &TPoly, b: &TPoly) -> TPoly {
    let n = a.0.len().max(b.0.len());
    let mut c = vec![TElem::zero(0); n];
    for (i, x) in a.0.iter().enumerate() {
        c[i] = t.add(&c[i], x);
    }
    for (i, x) in b.0.iter().enumerate() {
        c[i] = t.sub(&c[i], x);
    }
    TPoly(c).normalize(t)
}

fn make_monic(t: &Tower, f: &TPoly) -> TPoly {
    match f.degree() {
        None => f.clone(),
        Some(d) => {
            let inv = t.inv(&f.0[d]);
            TPoly(f.0.iter().map(|c| t.mul(c, &inv)).collect())
        }
    }
}

/// Sign variations of a Sturm sequence at a rational point (real tower).
fn variations_at(t: &Tower, seq: &[TPoly], x: &Rat) -> usize {
    let xe = TElem::rational(x.clone());
    let mut last = 0i8;
    let mut v = 0;
    for p in seq {
        let s = t.sign(&p.eval(t, &xe));
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Isolates the real roots of a squarefree polynomial over a real tower:
/// rational-endpoint intervals, plus exact rational roots when hit.
pub fn isolate_tpoly_roots(t: &Tower, f: &TPoly) -> Vec<(Rat, Rat, Option<Rat>)> {
    assert!(t.is_real());
    let d = match f.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    if d == 1 {
        // exact root -c0/c1 lives in the tower; return an enclosing interval
        let r = t.neg(&t.div(&f.0[0], &f.0[1]));
        if let Some(q) = t.lift(&r).is_rational() {
            return vec![(q.clone(), q.clone(), Some(q))];
        }
        let mut prec = 16;
        loop {
            let iv = t.enclose(&r, prec);
            if iv.lo < iv.hi {
                let e = f.eval(t, &TElem::rational(iv.lo.clone()));
                let e2 = f.eval(t, &TElem::rational(iv.hi.clone()));
                if t.sign(&e) != 0 && t.sign(&e2) != 0 {
                    return vec![(iv.lo, iv.hi, None)];
                }
            }
            prec *= 2;
        }
    }
    let seq = f.sturm_sequence(t);
    // root bound from an interval enclosure of the coefficients
    let mut bound = Rat::one();
    let lead = f.0.last().unwrap();
    let mut prec = 24;
    let lead_iv = loop {
        let iv = t.enclose(lead, prec);
        if !iv.contains_zero() {
            break iv;
        }
        prec *= 2;
    };
    let lead_abs = if lead_iv.lo > Rat::zero() { lead_iv.lo.clone() } else { -lead_iv.hi.clone() };
    for c in &f.0[..f.0.len() - 1] {
        let iv = t.enclose(c, 24);
        let m = iv.lo.clone().abs().max(iv.hi.clone().abs()) / &lead_abs;
        if m > bound {
            bound = m;
        }
    }
    let mut lo = -(bound.clone() + Rat::one());
    let mut hi = bound + Rat::one();
    while t.sign(&f.eval(t, &TElem::rational(lo.clone()))) == 0 {
        lo = lo - Rat::one();
    }
    while t.sign(&f.eval(t, &TElem::rational(hi.clone()))) == 0 {
        hi = hi + Rat::one();
    }
    let n = variations_at(t, &seq, &lo) - variations_at(t, &seq, &hi);
    let mut out = vec![];
    bisect_tpoly(t, f, &seq, lo, hi, n, &mut out, 0);
    out
}

#[allow(clippy::too_many_arguments)]
fn bisect_tpoly(
    t: &Tower,
    f: &TPoly,
    seq: &[TPoly],
    lo: Rat,
    hi: Rat,
    n: usize,
    out: &mut Vec<(Rat, Rat, Option<Rat>)>,
    depth: usize,
) {
    assert!(depth < 512, "tower root isolation failed to converge");
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((lo, hi, None));
        return;
    }
    let m = (lo.clone() + &hi) / crate::rat::rat_i(2);
    if t.sign(&f.eval(t, &TElem::rational(m.clone()))) == 0 {
        let mut step = (hi.clone() - &lo) / crate::rat::rat_i(64);
        loop {
            let ml = m.clone() - &step;
            let mr = m.clone() + &step;
            let fl = t.sign(&f.eval(t, &TElem::rational(ml.clone())));
            let fr = t.sign(&f.eval(t, &TElem::rational(mr.clone())));
            if ml > lo
                && mr < hi
                && fl != 0
                && fr != 0
                && variations_at(t, seq, &ml) - variations_at(t, seq, &mr) == 1
            {
                let nl = variations_at(t, seq, &lo) - variations_at(t, seq, &ml);
                let nr = variations_at(t, seq, &mr) - variations_at(t, seq, &hi);
                bisect_tpoly(t, f, seq, lo, ml, nl, out, depth + 1);
                out.push((m.clone(), m.clone(), Some(m)));
                bisect_tpoly(t, f, seq, mr, hi, nr, out, depth + 1);
                return;
            }
            step = step / crate::rat::rat_i(4);
        }
    }
    let nl = variations_at(t, seq, &lo) - variations_at(t, seq, &m);
    let nr = n - nl;
    bisect_tpoly(t, f, seq, lo, m.clone(), nl, out, depth + 1);
    bisect_tpoly(t, f, seq, m, hi, nr, out, depth + 1);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic_in_q_sqrt2_sqrt3() {
        let mut t = Tower::new();
        let s2 = t.adjoin_sqrt(&TElem::rational(rat_i(2))).unwrap();
        let s3 = t.adjoin_sqrt(&TElem::rational(rat_i(3))).unwrap();
        let s2 = t.lift(&s2);
        // (√2 + √3)^2 = 5 + 2√6
        let s = t.add(&s2, &s3);
        let sq = t.mul(&s, &s);
        let five = t.lift(&TElem::rational(rat_i(5)));
        let rest = t.sub(&sq, &five);
        // rest = 2√6 = 2 √2 √3: square it: 24
        let r2 = t.mul(&rest, &rest);
        assert_eq!(r2.is_rational(), Some(rat_i(24)));
        // √6 must be recognized as a square in this tower
        assert!(t.sqrt(&TElem::rational(rat_i(6))).is_some());
        assert!(t.sqrt(&TElem::rational(rat_i(5))).is_none());
        // signs: √2 - 1 > 0, 1 - √2 < 0
        let one = t.lift(&TElem::rational(rat_i(1)));
        assert_eq!(t.sign(&t.sub(&s2, &one)), 1);
        assert_eq!(t.sign(&t.sub(&one, &s2)), -1);
    }

    #[test]
    fn inversion() {
        let mut t = Tower::new();
        let s2 = t.adjoin_sqrt(&TElem::rational(rat_i(2))).unwrap();
        // 1 / (1 + √2) = √2 - 1
        let one = t.lift(&TElem::rational(rat_i(1)));
        let x = t.add(&one, &s2);
        let inv = t.inv(&x);
        let expect = t.sub(&s2, &one);
        assert_eq!(t.sub(&inv, &expect).is_zero(), true);
    }

    #[test]
    fn rational_sqrt_detection() {
        let t = Tower::new();
        assert_eq!(
            t.sqrt(&TElem::rational(rat(9, 4))).unwrap().is_rational(),
            Some(rat(3, 2))
        );
        assert!(t.sqrt(&TElem::rational(rat(2, 3))).is_none());
    }
}
