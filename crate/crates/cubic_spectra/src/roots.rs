//! Certified real-root isolation: Sturm-count bisection on the squarefree
//! part, multiplicities from the squarefree decomposition, boxes refinable
//! to any width. Endpoints of every returned interval are non-roots.

use crate::poly::PolyError;
use crate::rat::{rat_i, sign, Rat};
use crate::upoly::UPoly;
use num_traits::Zero;

/// An isolating interval for one real root.
///
/// The certified polynomial has exactly `multiplicity` roots (counted with
/// multiplicity) in the open interval; distinct roots get disjoint boxes.
#[derive(Clone, Debug)]
pub struct RootBox {
    lo: Rat,
    hi: Rat,
    pub multiplicity: usize,
    /// Set when the root is known exactly (then lo = hi = the root).
    pub exact: Option<Rat>,
    /// Squarefree factor with a simple root in the box, sign-changing on it.
    factor: UPoly,
}

impl RootBox {
    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn mid(&self) -> Rat {
        (self.lo.clone() + &self.hi) / rat_i(2)
    }

    pub fn width(&self) -> Rat {
        self.hi.clone() - &self.lo
    }

    pub fn factor(&self) -> &UPoly {
        &self.factor
    }

    /// Halves the box once, keeping the root inside.
    pub fn refine_step(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let m = self.mid();
        let fm = self.factor.eval(&m);
        if fm.is_zero() {
            self.exact = Some(m.clone());
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        let flo = self.factor.eval(&self.lo);
        if sign(&flo) * sign(&fm) < 0 {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    /// Refines until width < `w`.
    pub fn refine_below(&mut self, w: &Rat) {
        while self.exact.is_none() && &self.width() >= w {
            self.refine_step();
        }
    }

    pub fn contains(&self, r: &Rat) -> bool {
        match &self.exact {
            Some(e) => e == r,
            None => &self.lo < r && r < &self.hi,
        }
    }

    pub fn overlaps(&self, other: &RootBox) -> bool {
        let (alo, ahi) = (&self.lo, &self.hi);
        let (blo, bhi) = (&other.lo, &other.hi);
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) => blo < a && a < bhi,
            (None, Some(b)) => alo < b && b < ahi,
            (None, None) => alo < bhi && blo < ahi,
        }
    }

    /// Converts to a real algebraic number carrying the defining factor.
    pub fn to_alg(&self) -> crate::realalg::RealAlg {
        crate::realalg::RealAlg::from_root_box(&self.factor, self)
    }
}

/// Simplest rational in the closed interval [lo, hi] (continued-fraction
/// descent).
fn simplest_in_closed(lo: &Rat, hi: &Rat) -> Rat {
    use num_traits::One;
    debug_assert!(lo <= hi);
    let zero = Rat::zero();
    if lo <= &zero && &zero <= hi {
        return zero;
    }
    if lo > &zero {
        let c = lo.ceil();
        if &c <= hi {
            return c;
        }
        let n = lo.floor();
        let r = simplest_in_closed(&(Rat::one() / (hi - &n)), &(Rat::one() / (lo - &n)));
        n + Rat::one() / r
    } else {
        -simplest_in_closed(&-hi.clone(), &-lo.clone())
    }
}

/// Tries to recognize the unique root in the open interval as a rational.
fn rational_in(f: &UPoly, lo: &Rat, hi: &Rat) -> Option<Rat> {
    if lo >= hi {
        return None;
    }
    let cand = simplest_in_closed(lo, hi);
    if &cand > lo && &cand < hi && f.eval(&cand).is_zero() {
        return Some(cand);
    }
    None
}

/// Sturm-bisection isolation of a squarefree polynomial on an interval with
/// non-root endpoints; pushes boxes with non-root endpoints.
fn bisect(
    f: &UPoly,
    seq: &[UPoly],
    lo: Rat,
    hi: Rat,
    n: usize,
    out: &mut Vec<(Rat, Rat, Option<Rat>)>,
) {
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((lo, hi, None));
        return;
    }
    let m = (lo.clone() + &hi) / rat_i(2);
    if f.eval(&m).is_zero() {
        // exact rational root at the midpoint; fence it off with non-root
        // points just left and right
        let mut step = (hi.clone() - &lo) / rat_i(64);
        loop {
            let ml = m.clone() - &step;
            let mr = m.clone() + &step;
            if ml > lo
                && mr < hi
                && !f.eval(&ml).is_zero()
                && !f.eval(&mr).is_zero()
                && variations(seq, &ml) - variations(seq, &mr) == 1
            {
                let nl = variations(seq, &lo) - variations(seq, &ml);
                let nr = variations(seq, &mr) - variations(seq, &hi);
                debug_assert_eq!(nl + nr + 1, n);
                bisect(f, seq, lo, ml, nl, out);
                out.push((m.clone(), m.clone(), Some(m)));
                bisect(f, seq, mr, hi, nr, out);
                return;
            }
            step = step / rat_i(4);
        }
    }
    let nl = variations(seq, &lo) - variations(seq, &m);
    let nr = n - nl;
    bisect(f, seq, lo, m.clone(), nl, out);
    bisect(f, seq, m, hi, nr, out);
}

fn variations(seq: &[UPoly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut v = 0usize;
    for p in seq {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Isolates all real roots of a squarefree polynomial.
fn isolate_squarefree(f: &UPoly) -> Vec<(Rat, Rat, Option<Rat>)> {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return vec![];
    }
    if d == 1 {
        let r = -f.0[0].clone() / &f.0[1];
        return vec![(r.clone(), r.clone(), Some(r))];
    }
    let seq = f.sturm_sequence();
    let b = f.root_bound();
    let lo = -b.clone() - rat_i(1);
    let hi = b + rat_i(1);
    // endpoints beyond the root bound are never roots
    let n = variations(&seq, &lo) - variations(&seq, &hi);
    let mut out = vec![];
    bisect(f, &seq, lo, hi, n, &mut out);
    out
}

/// Isolates all real roots with multiplicities; disjoint boxes, ascending.
pub fn isolate_real_roots(f: &UPoly) -> Result<Vec<RootBox>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Degenerate("zero polynomial has no isolated roots".into()));
    }
    let mut boxes: Vec<RootBox> = vec![];
    for (factor, mult) in f.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (mut lo, mut hi, mut exact) in isolate_squarefree(&factor) {
            if exact.is_none() {
                // opportunistic rational recognition after a little refinement
                let mut probe = RootBox {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    multiplicity: mult,
                    exact: None,
                    factor: factor.clone(),
                };
                for _ in 0..8 {
                    probe.refine_step();
                }
                if let Some(e) = &probe.exact {
                    exact = Some(e.clone());
                    lo = e.clone();
                    hi = e.clone();
                } else if let Some(r) = rational_in(&factor, &probe.lo, &probe.hi) {
                    exact = Some(r.clone());
                    lo = r.clone();
                    hi = r;
                } else {
                    lo = probe.lo;
                    hi = probe.hi;
                }
            }
            boxes.push(RootBox { lo, hi, multiplicity: mult, exact, factor: factor.clone() });
        }
    }
    boxes.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    // refine until pairwise disjoint (roots are distinct across factors)
    loop {
        let mut again = false;
        for i in 1..boxes.len() {
            let (l, r) = boxes.split_at_mut(i);
            let a = &mut l[i - 1];
            let b = &mut r[0];
            if a.overlaps(b) {
                a.refine_step();
                b.refine_step();
                again = true;
            }
        }
        if !again {
            break;
        }
        boxes.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    }
    Ok(boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{pow2, rat};

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn sqrt2_boxes() {
        let f = p(&[-2, 0, 1]);
        let r = isolate_real_roots(&f).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].contains(&rat(-141421, 100000)));
        assert!(r[1].contains(&rat(141421, 100000)));
        assert!(r.iter().all(|b| b.multiplicity == 1));
    }

    #[test]
    fn no_real_roots() {
        let f = p(&[1, 0, 1]);
        assert!(isolate_real_roots(&f).unwrap().is_empty());
    }

    #[test]
    fn zero_poly_rejected() {
        assert!(isolate_real_roots(&UPoly::zero()).is_err());
    }

    #[test]
    fn root_at_dyadic_midpoint() {
        // roots at -1, 0, 1 plus irrational ones; bisection hits them exactly
        let f = p(&[0, 1]).mul(&p(&[-1, 1])).mul(&p(&[1, 1])).mul(&p(&[-7, 0, 1]));
        let r = isolate_real_roots(&f).unwrap();
        assert_eq!(r.len(), 5);
        let exact: Vec<Rat> = r.iter().filter_map(|b| b.exact.clone()).collect();
        assert!(exact.contains(&rat_i(0)));
        assert!(exact.contains(&rat_i(1)));
        assert!(exact.contains(&rat_i(-1)));
    }

    #[test]
    fn mixed_multiplicities_with_exact_rational() {
        // (x - 1/3)^2 (x^2 - 5)
        let lin = UPoly::from_coeffs(vec![rat(-1, 3), rat_i(1)]);
        let f = lin.mul(&lin).mul(&p(&[-5, 0, 1]));
        let r = isolate_real_roots(&f).unwrap();
        assert_eq!(r.len(), 3);
        let exact: Vec<_> = r.iter().filter(|b| b.exact.is_some()).collect();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].exact.clone().unwrap(), rat(1, 3));
        assert_eq!(exact[0].multiplicity, 2);
        let mults: Vec<_> = r.iter().map(|b| b.multiplicity).collect();
        assert_eq!(mults.iter().sum::<usize>(), 4);
    }

    #[test]
    fn refinement_stability() {
        let f = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1])).mul(&p(&[1, 1]));
        let mut r = isolate_real_roots(&f).unwrap();
        let n = r.len();
        assert_eq!(n, 5);
        for b in &mut r {
            let w = (b.width() / pow2(10)).max(rat(1, 1_000_000_000));
            b.refine_below(&w);
        }
        assert_eq!(r.len(), n);
        for i in 1..r.len() {
            assert!(!r[i - 1].overlaps(&r[i]));
        }
    }
}
