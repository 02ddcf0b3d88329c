//! Singular locus of a ternary squarefree form by bivariate elimination:
//! candidate x-coordinates from resultants, fiber gcds through subresultant
//! specialization, exact verification of the third gradient equation, and
//! Morse typing of real singular points via Hessian signs.

use super::CurveError;
use crate::poly::{RatPoly, Vars};
use crate::rat::{rat_i, Rat};
use crate::realalg::RealAlg;
use crate::roots::isolate_real_roots;
use crate::subres;
use crate::upoly::UPoly;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LocalType {
    CrossNode,
    SolitaryNode,
    Cusp,
    Other,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularPoint {
    /// False for a conjugate pair of imaginary singular points.
    pub real: bool,
    pub local_type: Option<LocalType>,
    /// Isolating intervals of affine chart coordinates, for real points.
    pub location: Option<((String, String), (String, String))>,
    /// True when the point lies on the line at infinity of the input chart.
    pub at_infinity: bool,
}

#[derive(Clone, Debug)]
pub enum SingularLocus {
    Smooth,
    SingularPoints(Vec<SingularPoint>),
}

/// Rational function of one variable with exact sign evaluation at a real
/// algebraic argument.
struct RatFun {
    num: UPoly,
    den: UPoly,
}

impl RatFun {
    fn sign_at(&self, a: &mut RealAlg) -> i8 {
        a.sign_of_fraction(&self.num, &self.den)
    }
}

/// Substitutes y = num(x)/den(x) into a bivariate p(x, y) and clears
/// denominators: returns N with p(x, num/den) = N / den^(deg_y p).
fn subst_y(p: &RatPoly, num: &UPoly, den: &UPoly) -> (UPoly, usize) {
    let coeffs = p.coeffs_in(1);
    let d = coeffs.len().saturating_sub(1);
    let mut acc = UPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cu = UPoly::from_ratpoly(c, 0);
        let mut t = cu;
        for _ in 0..i {
            t = t.mul(num);
        }
        for _ in 0..(d - i) {
            t = t.mul(den);
        }
        acc = acc.add(&t);
    }
    (acc, d)
}

/// Affine singular points (z ≠ 0) after the linear change
/// (x, y) -> (x + k y, j x + y); returns None when the position is not
/// generic enough and a different (k, j) should be tried.
#[allow(clippy::type_complexity)]
fn affine_singulars(
    f: &RatPoly,
    k: i64,
    j: i64,
) -> Result<Option<(usize, Vec<(RealAlg, RatFun, Option<LocalType>)>)>, CurveError> {
    let vars2 = Vars::new(["x", "y"]);
    let x = RatPoly::var(&vars2, "x");
    let y = RatPoly::var(&vars2, "y");
    let one = RatPoly::one(&vars2);
    let gx = x.add(&y.scale(&rat_i(k)));
    let gy = y.add(&x.scale(&rat_i(j)));
    let g = f.substitute(&[gx, gy, one]);
    let d = f.total_degree().unwrap();
    // y-regular in the new coordinates
    let lead = g
        .coeffs_in(1)
        .get(d as usize)
        .cloned()
        .unwrap_or_else(|| RatPoly::zero(&vars2));
    if lead.constant_value().is_none() || lead.is_zero() {
        return Ok(None);
    }
    let g_y = g.derivative(1);
    let g_x = g.derivative(0);
    let r1 = subres::resultant(&g, &g_y, 1).map_err(|e| CurveError::Internal(e.to_string()))?;
    let r2 = subres::resultant(&g, &g_x, 1).map_err(|e| CurveError::Internal(e.to_string()))?;
    if r1.is_zero() || r2.is_zero() {
        return Ok(None);
    }
    let r1u = UPoly::from_ratpoly(&r1, 0);
    let r2u = UPoly::from_ratpoly(&r2, 0);
    let cand = r1u.gcd(&r2u).squarefree_part();
    if cand.degree().unwrap_or(0) == 0 {
        return Ok(Some((0, vec![])));
    }
    // fiber gcd data
    let b1poly = subres::subresultant_poly(&g, &g_y, 1, 1);
    let b1c = b1poly.coeffs_in(1);
    let b1 = UPoly::from_ratpoly(b1c.get(1).unwrap_or(&RatPoly::zero(&vars2)), 0);
    let b0 = UPoly::from_ratpoly(b1c.first().unwrap_or(&RatPoly::zero(&vars2)), 0);
    if b1.is_zero() {
        return Ok(None);
    }
    // genericity: no candidate may kill the degree-1 subresultant
    if cand.gcd(&b1).degree().unwrap_or(0) > 0 {
        return Ok(None);
    }
    // verified singular x-locus: g_x must vanish at (x, -b0/b1)
    let neg_b0 = b0.neg();
    let (e_num, _) = subst_y(&g_x, &neg_b0, &b1);
    let s_locus = cand.gcd(&e_num).squarefree_part();
    let total = s_locus.degree().unwrap_or(0);
    if total == 0 {
        return Ok(Some((0, vec![])));
    }
    let roots = isolate_real_roots(&s_locus).map_err(|e| CurveError::Internal(e.to_string()))?;
    let mut out = vec![];
    for b in &roots {
        let mut alpha = b.to_alg();
        let y0 = RatFun { num: neg_b0.clone(), den: b1.clone() };
        // Morse data
        let gxx = g.derivative(0).derivative(0);
        let gxy = g.derivative(0).derivative(1);
        let gyy = g.derivative(1).derivative(1);
        let det = gxx.mul(&gyy).sub(&gxy.mul(&gxy));
        let (det_num, det_deg) = subst_y(&det, &neg_b0, &b1);
        let mut s = alpha.sign_of(&det_num);
        if det_deg % 2 == 1 {
            s *= alpha.sign_of(&b1);
        }
        let local = if s < 0 {
            Some(LocalType::CrossNode)
        } else if s > 0 {
            Some(LocalType::SolitaryNode)
        } else {
            Some(classify_degenerate(&g, &neg_b0, &b1, &mut alpha))
        };
        out.push((alpha, y0, local));
    }
    Ok(Some((total, out)))
}

/// Distinguishes a cusp from worse degenerations when the Hessian
/// determinant vanishes: Hessian nonzero and nonvanishing third derivative
/// along its kernel direction.
fn classify_degenerate(
    g: &RatPoly,
    neg_b0: &UPoly,
    b1: &UPoly,
    alpha: &mut RealAlg,
) -> LocalType {
    let gxx = g.derivative(0).derivative(0);
    let gxy = g.derivative(0).derivative(1);
    let gyy = g.derivative(1).derivative(1);
    let sig = |p: &RatPoly, a: &mut RealAlg| -> i8 {
        let (n, deg) = subst_y(p, neg_b0, b1);
        let mut s = a.sign_of(&n);
        if deg % 2 == 1 {
            s *= a.sign_of(b1);
        }
        s
    };
    let sxx = sig(&gxx, alpha);
    let sxy = sig(&gxy, alpha);
    let syy = sig(&gyy, alpha);
    if sxx == 0 && sxy == 0 && syy == 0 {
        return LocalType::Other;
    }
    // kernel direction (u, v) of the rank-1 Hessian: (h12, -h11) when the
    // first row is nonzero, else (h22, -h12). Third-order term along it:
    let (u, v): (RatPoly, RatPoly) = if sxx != 0 || sxy != 0 {
        (gxy.clone(), gxx.neg())
    } else {
        (gyy.clone(), gxy.neg())
    };
    let d3 = |a: u32, b: u32| -> RatPoly {
        let mut p = g.clone();
        for _ in 0..a {
            p = p.derivative(0);
        }
        for _ in 0..b {
            p = p.derivative(1);
        }
        p
    };
    let three = RatPoly::constant(g.vars(), rat_i(3));
    let t = d3(3, 0)
        .mul(&u.pow(3))
        .add(&three.mul(&d3(2, 1)).mul(&u.pow(2)).mul(&v))
        .add(&three.mul(&d3(1, 2)).mul(&u).mul(&v.pow(2)))
        .add(&d3(0, 3).mul(&v.pow(3)));
    if sig(&t, alpha) != 0 {
        LocalType::Cusp
    } else {
        LocalType::Other
    }
}

/// Singular points on the line z = 0: common roots of the three gradient
/// binary forms, plus a direct check of the corner point [1:0:0].
fn infinity_singulars(f: &RatPoly) -> Result<Vec<SingularPoint>, CurveError> {
    let mut out = vec![];
    // binary restrictions (x = t, y = 1, z = 0)
    let tvars = Vars::new(["t"]);
    let t = RatPoly::var(&tvars, "t");
    let one = RatPoly::one(&tvars);
    let zero = RatPoly::zero(&tvars);
    let subs = [t.clone(), one, zero];
    let parts: Vec<UPoly> = (0..3)
        .map(|i| UPoly::from_ratpoly(&f.derivative(i).substitute(&subs), 0))
        .collect();
    let mut gc = parts[0].gcd(&parts[1]);
    gc = gc.gcd(&parts[2]);
    let gc = if gc.is_zero() { UPoly::zero() } else { gc.squarefree_part() };
    if gc.degree().unwrap_or(0) > 0 {
        let total = gc.degree().unwrap();
        let roots = isolate_real_roots(&gc).map_err(|e| CurveError::Internal(e.to_string()))?;
        for b in &roots {
            // Morse type in the chart y = 1 with affine coordinates (x, z)
            let vars2 = Vars::new(["x", "y"]);
            let gx = RatPoly::var(&vars2, "x");
            let gz = RatPoly::var(&vars2, "y");
            let gone = RatPoly::one(&vars2);
            let gch = f.substitute(&[gx, gone, gz]);
            let mut alpha = b.to_alg();
            let local = morse_at_axis(&gch, &mut alpha);
            out.push(SingularPoint {
                real: true,
                local_type: Some(local),
                location: Some((
                    (b.lo().to_string(), b.hi().to_string()),
                    ("0".into(), "0".into()),
                )),
                at_infinity: true,
            });
        }
        let imag_pairs = (total - roots.len()) / 2;
        for _ in 0..imag_pairs {
            out.push(SingularPoint {
                real: false,
                local_type: None,
                location: None,
                at_infinity: true,
            });
        }
    }
    // corner point [1:0:0]
    let corner = [rat_i(1), rat_i(0), rat_i(0)];
    if (0..3).all(|i| f.derivative(i).eval(&corner).is_zero()) {
        let vars2 = Vars::new(["x", "y"]);
        let gy = RatPoly::var(&vars2, "x");
        let gz = RatPoly::var(&vars2, "y");
        let gone = RatPoly::one(&vars2);
        let gch = f.substitute(&[gone, gy, gz]);
        let mut zero_alg = RealAlg::from_rational(Rat::zero());
        let local = morse_at_axis(&gch, &mut zero_alg);
        out.push(SingularPoint {
            real: true,
            local_type: Some(local),
            location: Some((("0".into(), "0".into()), ("0".into(), "0".into()))),
            at_infinity: true,
        });
    }
    Ok(out)
}

/// Morse type of the singular point (α, 0) of a bivariate g.
fn morse_at_axis(g: &RatPoly, alpha: &mut RealAlg) -> LocalType {
    let one = UPoly::constant(Rat::from_integer(1.into()));
    let zero_num = UPoly::zero();
    let gxx = g.derivative(0).derivative(0);
    let gxy = g.derivative(0).derivative(1);
    let gyy = g.derivative(1).derivative(1);
    let det = gxx.mul(&gyy).sub(&gxy.mul(&gxy));
    let (n, _) = subst_y(&det, &zero_num, &one);
    let s = alpha.sign_of(&n);
    if s < 0 {
        LocalType::CrossNode
    } else if s > 0 {
        LocalType::SolitaryNode
    } else {
        classify_degenerate(g, &zero_num, &one, alpha)
    }
}

const AFFINE_TRIES: [(i64, i64); 10] =
    [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (2, 0), (0, 2), (2, 1), (3, -1)];

/// Classifies the singular locus of a squarefree ternary form of degree ≤ 5.
pub fn singular_locus(f: &RatPoly) -> Result<SingularLocus, CurveError> {
    if f.vars().len() != 3 {
        return Err(CurveError::Internal("expected a ternary form".into()));
    }
    if f.is_zero() || !subres::is_squarefree(f) {
        return Err(CurveError::NotSquareFree);
    }
    let mut affine = None;
    for (k, j) in AFFINE_TRIES {
        if let Some(res) = affine_singulars(f, k, j)? {
            // report locations in the sheared coordinates only through
            // intervals; shear-invariant data only
            affine = Some(((k, j), res));
            break;
        }
    }
    let Some(((_k, _j), (total, reals))) = affine else {
        return Err(CurveError::ChartFailure);
    };
    let mut points = vec![];
    for (alpha, y0, local) in &reals {
        let mut a = alpha.clone();
        let iv = a.interval();
        // y-interval via the rational function
        let mut den_a = alpha.clone();
        let ds = den_a.sign_of(&y0.den);
        debug_assert!(ds != 0);
        let yiv = {
            let n = crate::interval::RatInterval::eval_upoly(&y0.num, &iv);
            let d = crate::interval::RatInterval::eval_upoly(&y0.den, &iv);
            if d.contains_zero() {
                None
            } else {
                Some(n.div(&d))
            }
        };
        points.push(SingularPoint {
            real: true,
            local_type: *local,
            location: Some((
                (iv.lo.to_string(), iv.hi.to_string()),
                yiv.map(|y| (y.lo.to_string(), y.hi.to_string()))
                    .unwrap_or(("?".into(), "?".into())),
            )),
            at_infinity: false,
        });
    }
    let imag_pairs = (total - reals.len()) / 2;
    for _ in 0..imag_pairs {
        points.push(SingularPoint {
            real: false,
            local_type: None,
            location: None,
            at_infinity: false,
        });
    }
    points.extend(infinity_singulars(f)?);
    if points.is_empty() {
        Ok(SingularLocus::Smooth)
    } else {
        Ok(SingularLocus::SingularPoints(points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars3() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(&vars3(), s).unwrap()
    }

    #[test]
    fn fermat_quintic_smooth() {
        let f = p("x^5 + y^5 + z^5");
        assert!(matches!(singular_locus(&f).unwrap(), SingularLocus::Smooth));
    }

    #[test]
    fn nodal_cubic_cross_node() {
        // x^2 z - y^2 z + y^3: node at origin of the z = 1 chart
        let f = p("x^2*z - y^2*z + y^3");
        match singular_locus(&f).unwrap() {
            SingularLocus::SingularPoints(pts) => {
                let real: Vec<_> = pts.iter().filter(|q| q.real).collect();
                assert_eq!(real.len(), 1);
                assert_eq!(real[0].local_type, Some(LocalType::CrossNode));
            }
            _ => panic!("expected singular"),
        }
    }

    #[test]
    fn solitary_node_detected() {
        // x^2 z + y^2 z + y^3: solitary point at origin
        let f = p("x^2*z + y^2*z + y^3");
        match singular_locus(&f).unwrap() {
            SingularLocus::SingularPoints(pts) => {
                let real: Vec<_> = pts.iter().filter(|q| q.real).collect();
                assert_eq!(real.len(), 1);
                assert_eq!(real[0].local_type, Some(LocalType::SolitaryNode));
            }
            _ => panic!("expected singular"),
        }
    }

    #[test]
    fn cusp_detected() {
        let f = p("y^2*z - x^3");
        match singular_locus(&f).unwrap() {
            SingularLocus::SingularPoints(pts) => {
                let real: Vec<_> = pts.iter().filter(|q| q.real).collect();
                assert!(real
                    .iter()
                    .any(|q| q.local_type == Some(LocalType::Cusp)));
            }
            _ => panic!("expected singular"),
        }
    }

    #[test]
    fn conic_times_cubic_imaginary_nodes() {
        // (xz - y^2)(x^3 + y^3 + z^3): six imaginary intersection points
        // (three conjugate pairs), no real singular points
        let f = p("x*z - y^2").mul(&p("x^3 + y^3 + z^3"));
        match singular_locus(&f).unwrap() {
            SingularLocus::SingularPoints(pts) => {
                assert!(pts.iter().all(|q| !q.real));
                assert_eq!(pts.len(), 3);
            }
            _ => panic!("expected singular"),
        }
    }

    #[test]
    fn not_squarefree_rejected() {
        let f = p("x + y").pow(2).mul(&p("z"));
        assert_eq!(singular_locus(&f).unwrap_err(), CurveError::NotSquareFree);
    }
}
