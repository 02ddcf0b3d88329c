//! Resultants, subresultants, multivariate gcd and squarefree structure.
//!
//! The resultant uses the Sylvester matrix with the rows of the first
//! argument on top; determinants of polynomial matrices are computed by
//! fraction-free Bareiss elimination (every division is exact in ℚ[x…]).
//! Sign convention frozen here: `resultant(y^2 - x, y, y) = -x`.

use crate::poly::{PolyError, RatPoly, Vars};
use crate::rat::Rat;
use num_traits::{One, Zero};

/// Fraction-free determinant of a square polynomial matrix.
pub fn poly_det(mut m: Vec<Vec<RatPoly>>) -> RatPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        panic!("empty matrix");
    }
    let vars = m[0][0].vars().clone();
    let mut sign = false;
    let mut prev = RatPoly::one(&vars);
    for k in 0..n {
        // pivot
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return RatPoly::zero(&vars);
            };
            m.swap(k, p);
            sign = !sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = RatPoly::zero(&vars);
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant eliminating `var`; rows of `f` first.
/// Degenerate when both arguments are constant in `var`.
pub fn resultant(f: &RatPoly, g: &RatPoly, var: usize) -> Result<RatPoly, PolyError> {
    assert_eq!(f.vars(), g.vars());
    let vars = f.vars().clone();
    if f.is_zero() || g.is_zero() {
        return Ok(RatPoly::zero(&vars));
    }
    let m = f.degree_in(var).unwrap() as usize;
    let n = g.degree_in(var).unwrap() as usize;
    if m == 0 && n == 0 {
        return Err(PolyError::Degenerate(
            "resultant of two polynomials constant in the eliminated variable".into(),
        ));
    }
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(g.pow(m as u32));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let size = m + n;
    let zero = RatPoly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for (i, row) in mat.iter_mut().enumerate().take(n) {
        for (k, c) in fc.iter().enumerate() {
            row[i + (m - k)] = c.clone();
        }
    }
    for (i, row) in mat.iter_mut().skip(n).enumerate() {
        for (k, c) in gc.iter().enumerate() {
            row[i + (n - k)] = c.clone();
        }
    }
    Ok(poly_det(mat))
}

/// Content of `f` as a polynomial in `var`: gcd of its coefficients.
fn content_in(f: &RatPoly, var: usize) -> RatPoly {
    let cs = f.coeffs_in(var);
    let mut acc = RatPoly::zero(f.vars());
    for c in cs {
        if !c.is_zero() {
            acc = gcd_multi(&acc, &c);
        }
    }
    acc
}

/// Pseudo-remainder of f by g in `var`: lc(g)^(df-dg+1) f mod g.
fn pseudo_rem(f: &RatPoly, g: &RatPoly, var: usize) -> RatPoly {
    let dg = g.degree_in(var).unwrap();
    let lg = g.leading_coeff_in(var);
    let x = RatPoly::var_idx(f.vars(), var);
    let mut r = f.clone();
    loop {
        let dr = match r.degree_in(var) {
            None => return r,
            Some(d) => d,
        };
        if dr < dg {
            return r;
        }
        let lr = r.leading_coeff_in(var);
        let shift = x.pow(dr - dg);
        r = r.mul(&lg).sub(&g.mul(&lr).mul(&shift));
        if let Some(d2) = r.degree_in(var) {
            assert!(d2 < dr, "pseudo-division failed to reduce degree");
        }
    }
}

/// Multivariate gcd over ℚ by primitive PRS, normalized to a primitive
/// polynomial with positive leading coefficient. gcd(0,0) = 0.
pub fn gcd_multi(f: &RatPoly, g: &RatPoly) -> RatPoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let vars = f.vars().clone();
    // choose a variable where both are non-constant; if none, any variable
    // appearing in exactly one of them forces the gcd down to contents.
    let var = (0..vars.len()).find(|&v| {
        f.degree_in(v).unwrap_or(0) > 0 && g.degree_in(v).unwrap_or(0) > 0
    });
    let var = match var {
        Some(v) => v,
        None => {
            // at most constants share: gcd of contents in some active variable
            if f.is_constant() || g.is_constant() {
                return RatPoly::one(&vars);
            }
            let vf = (0..vars.len()).find(|&v| f.degree_in(v).unwrap_or(0) > 0).unwrap();
            let cf = content_in(f, vf);
            return gcd_multi(&cf, g);
        }
    };
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let cont = gcd_multi(&cf, &cg);
    let mut a = f.exact_div(&cf);
    let mut b = g.exact_div(&cg);
    if a.degree_in(var).unwrap_or(0) < b.degree_in(var).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            let prim = a.exact_div(&content_in(&a, var));
            return cont.mul(&prim).primitive_part();
        }
        if b.degree_in(var).unwrap_or(0) == 0 {
            return cont.primitive_part();
        }
        let r = pseudo_rem(&a, &b, var);
        a = b;
        b = if r.is_zero() { r } else { r.exact_div(&content_in(&r, var)) };
    }
}

/// Squarefree decomposition with respect to `var` (Yun): pairwise coprime
/// primitive factors with multiplicities. The product of factor^mult equals
/// the input up to a nonzero rational scalar and a factor constant in `var`.
pub fn squarefree_decomposition(f: &RatPoly, var: usize) -> Vec<(RatPoly, usize)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let prim = f.exact_div(&content_in(f, var)).primitive_part();
    if prim.degree_in(var).unwrap_or(0) == 0 {
        return vec![];
    }
    let df = prim.derivative(var);
    let mut a = gcd_multi(&prim, &df);
    let mut b = prim.exact_div(&a);
    let mut c = df.exact_div(&a);
    let mut out = vec![];
    let mut i = 1usize;
    loop {
        let d = c.sub(&b.derivative(var));
        if d.is_zero() {
            if b.degree_in(var).unwrap_or(0) > 0 {
                out.push((b.primitive_part(), i));
            }
            break;
        }
        a = gcd_multi(&b, &d);
        if a.degree_in(var).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        i += 1;
    }
    out
}

/// Squarefree part with respect to `var`.
pub fn squarefree_part(f: &RatPoly, var: usize) -> RatPoly {
    let dec = squarefree_decomposition(f, var);
    let mut acc = RatPoly::one(f.vars());
    for (p, _) in dec {
        acc = acc.mul(&p);
    }
    acc
}

/// True when the polynomial is squarefree jointly in all its variables
/// (no repeated non-constant factor).
pub fn is_squarefree(f: &RatPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    for v in 0..f.vars().len() {
        if f.degree_in(v).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd_multi(f, &f.derivative(v));
        if g.total_degree().unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

/// The j-th subresultant polynomial of (P, Q) with respect to `var`,
/// by the determinantal definition (entries are coefficients in the other
/// variables). Requires deg P > deg Q ≥ j.
pub fn subresultant_poly(p: &RatPoly, q: &RatPoly, var: usize, j: usize) -> RatPoly {
    let vars = p.vars().clone();
    let dp = p.degree_in(var).unwrap() as usize;
    let dq = q.degree_in(var).unwrap() as usize;
    assert!(dp > dq && j <= dq);
    if j == dq {
        // convention: sResP_dq proportional to Q itself
        return q.clone();
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let rows = (dq - j) + (dp - j);
    let fixed_cols = dp + dq - 2 * j - 1;
    let zero = RatPoly::zero(&vars);
    let coef = |cs: &[RatPoly], k: i64| -> RatPoly {
        if k < 0 || k as usize >= cs.len() {
            zero.clone()
        } else {
            cs[k as usize].clone()
        }
    };
    // row r (0-based): y^(dq-j-1-r) * P for r < dq-j, else y^(dp-j-1-r') * Q
    // column c < fixed_cols: coefficient of y^(dp+dq-j-1-c)
    // final column: coefficient of y^k (the polynomial column), k = 0..=j
    let x = RatPoly::var_idx(&vars, var);
    let mut acc = RatPoly::zero(&vars);
    for k in 0..=j {
        let mut m = vec![vec![zero.clone(); fixed_cols + 1]; rows];
        for (r, row) in m.iter_mut().enumerate() {
            let (cs, shift) = if r < dq - j {
                (&pc, dq - j - 1 - r)
            } else {
                (&qc, dp - j - 1 - (r - (dq - j)))
            };
            for (c, cell) in row.iter_mut().enumerate().take(fixed_cols) {
                let deg = (dp + dq - j - 1 - c) as i64 - shift as i64;
                *cell = coef(cs, deg);
            }
            row[fixed_cols] = coef(cs, k as i64 - shift as i64);
        }
        let d = poly_det(m);
        acc = acc.add(&d.mul(&x.pow(k as u32)));
    }
    acc
}

/// Principal subresultant coefficients sres_j for j = 0..deg Q: the
/// coefficient of `var`^j in the j-th subresultant polynomial.
pub fn principal_subresultants(p: &RatPoly, q: &RatPoly, var: usize) -> Vec<RatPoly> {
    let dq = q.degree_in(var).unwrap() as usize;
    (0..=dq)
        .map(|j| {
            let s = subresultant_poly(p, q, var, j);
            s.coeffs_in(var).get(j).cloned().unwrap_or_else(|| RatPoly::zero(p.vars()))
        })
        .collect()
}

/// Discriminant-style eliminant: resultant(f, df/dvar, var).
pub fn discriminant_in(f: &RatPoly, var: usize) -> Result<RatPoly, PolyError> {
    resultant(f, &f.derivative(var), var)
}

/// Convenience: parse-and-build variable sets for tests.
pub fn vars3() -> Vars {
    Vars::new(["x", "y", "z"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(&vars3(), s).unwrap()
    }

    #[test]
    fn resultant_linear_pair() {
        // res(y-1, y+1; y) = 2
        let vars = vars3();
        let f = p("y - 1");
        let g = p("y + 1");
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r, RatPoly::constant(&vars, rat_i(2)));
    }

    #[test]
    fn resultant_sign_convention() {
        // res(y^2 - x, y; y) = -x with f-rows-first Sylvester
        let f = p("y^2 - x");
        let g = p("y");
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r, p("-1*x"));
    }

    #[test]
    fn resultant_vs_direct_sylvester_for_cusp() {
        // f = y^2 - x^3, res(f, f_y; y) must be a monomial in x
        let f = p("y^2 - x^3");
        let fy = f.derivative(1);
        let r = resultant(&f, &fy, 1).unwrap();
        // direct 3x3 Sylvester: rows [1,0,-x^3],[2,0,0],[0,2,0] -> det = 4x^3
        let vars = vars3();
        let direct = poly_det(vec![
            vec![p("1"), p("0*x"), p("-1*x^3")],
            vec![p("2"), p("0*x"), p("0*x")],
            vec![p("0*x"), p("2"), p("0*x")],
        ]);
        assert_eq!(r, direct);
        assert_eq!(r, RatPoly::constant(&vars, rat_i(-4)).mul(&p("x^3")));
    }

    #[test]
    fn resultant_detects_common_factor() {
        let f = p("x - y").mul(&p("x + y + 1"));
        let g = p("x - y").mul(&p("x + 2"));
        let r = resultant(&f, &g, 0).unwrap();
        assert!(r.is_zero());
        let g2 = p("x + 2");
        let r2 = resultant(&f, &g2, 0).unwrap();
        assert!(!r2.is_zero());
    }

    #[test]
    fn gcd_multi_basic() {
        let f = p("x^2 - y^2");
        let g = p("x^2 + 2*x*y + y^2");
        let d = gcd_multi(&f, &g);
        assert_eq!(d, p("x + y"));
    }

    #[test]
    fn squarefree_structure() {
        // (x-1)^2 (x+2) in variable x
        let f = p("x - 1").pow(2).mul(&p("x + 2"));
        let dec = squarefree_decomposition(&f, 0);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p("x + 2"), 1));
        assert_eq!(dec[1], (p("x - 1"), 2));
        assert_eq!(squarefree_part(&f, 0), p("x + 2").mul(&p("x - 1")));
        // squarefree input unchanged (up to normalization)
        let g = p("x^2 + y");
        assert_eq!(squarefree_part(&g, 0), g);
    }

    #[test]
    fn squarefree_mixed_degree_ten() {
        // construct degree-10 product with mixed multiplicities, recover them
        let f1 = p("x - 1");
        let f2 = p("x + 1");
        let f3 = p("x^2 - 3");
        let f = f1.pow(3).mul(&f2.pow(1)).mul(&f3.pow(3));
        let dec = squarefree_decomposition(&f, 0);
        // multiplicity 1: (x+1); multiplicity 3: (x-1)(x^2-3)
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p("x + 1"), 1));
        assert_eq!(dec[1].1, 3);
        assert_eq!(dec[1].0, f1.mul(&f3).primitive_part());
    }

    #[test]
    fn subresultant_gcd_specialization() {
        // P = (y - x)(y - 2)(y + 1), Q = P_y; principal subresultants vanish
        // exactly where the fiber has a multiple root
        let f = p("y - x").mul(&p("y - 2")).mul(&p("y + 1"));
        let fy = f.derivative(1);
        let sres = principal_subresultants(&f, &fy, 1);
        // sres_0 = resultant: vanishes at x = 2 and x = -1
        let r0 = &sres[0];
        assert!(r0.specialize(0, &rat_i(2)).is_zero());
        assert!(r0.specialize(0, &rat_i(-1)).is_zero());
        assert!(!r0.specialize(0, &rat_i(5)).is_zero());
        // at x = 2 the gcd has degree 1: sres_1 nonzero there
        assert!(!sres[1].specialize(0, &rat_i(2)).is_zero());
        // the degree-1 subresultant polynomial vanishes at the double root
        let s1 = subresultant_poly(&f, &fy, 1, 1);
        let at2 = s1.specialize(0, &rat_i(2));
        let u = crate::upoly::UPoly::from_ratpoly(&at2, 1);
        assert!(u.eval(&rat_i(2)).is_zero());
    }
}
