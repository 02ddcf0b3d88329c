//! Marked cubic threefolds: canonical coordinates for a marked line, the
//! fundamental matrix, spectral quintic and theta-conic, smoothness and
//! line-type diagnostics, and the local quadric/cubic pair at a node.

use crate::poly::{det3, RatPoly, Vars};
use crate::quadform::{gram_of_quadratic, SymMat};
use crate::rat::Rat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ThreefoldError {
    #[error("the given line does not lie on the cubic")]
    LineNotOnCubic,
    #[error("the two points span no line (projectively equal)")]
    DegenerateSpan,
    #[error("the cubic is not singular at the given point")]
    NotSingularThere,
    #[error("the singularity is worse than quadratic (no degree-2 part)")]
    WorseThanQuadratic,
    #[error("input polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("expected {0} variables")]
    WrongArity(usize),
    #[error("marked point fails a precondition: {0}")]
    BadPoint(String),
}

/// A cubic threefold in coordinates where the marked line is x = y = z = 0:
/// u²L11 + 2uv L12 + v² L22 + 2u Q1 + 2v Q2 + C with the six entry
/// polynomials homogeneous of degrees 1, 1, 1, 2, 2, 3 in (x, y, z).
#[derive(Clone, Debug)]
pub struct MarkedCubic {
    /// Three-variable polynomial ring (x, y, z) of the plane of the net.
    pub pvars: Vars,
    pub l11: RatPoly,
    pub l12: RatPoly,
    pub l22: RatPoly,
    pub q1: RatPoly,
    pub q2: RatPoly,
    pub c: RatPoly,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LineSmoothness {
    SmoothAlongLine,
    SingularOnLine,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LineType {
    Simple,
    Multiple,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ResidualConicStatus {
    RealCircle,
    Empty,
    SingularFiber,
}

/// Spectral quintic and theta-conic with degeneracy flags.
#[derive(Clone, Debug)]
pub struct SpectralPair {
    pub quintic: RatPoly,
    pub theta: RatPoly,
    pub quintic_vanishes: bool,
    pub theta_vanishes: bool,
}

/// Local data of a cubic threefold at a node: after moving the node to
/// (0,0,0,0,1) the equation reads f3 + v f2 = 0 in the remaining variables.
#[derive(Clone, Debug)]
pub struct NodalData {
    /// Four local variables.
    pub lvars: Vars,
    pub f2: RatPoly,
    pub f3: RatPoly,
    /// Signature of the degree-2 part (real nodes).
    pub signature: (usize, usize),
}

impl MarkedCubic {
    pub fn fundamental_matrix(&self) -> [[RatPoly; 3]; 3] {
        [
            [self.l11.clone(), self.l12.clone(), self.q1.clone()],
            [self.l12.clone(), self.l22.clone(), self.q2.clone()],
            [self.q1.clone(), self.q2.clone(), self.c.clone()],
        ]
    }

    /// Reassembles the quintary cubic in the canonical coordinates
    /// (x, y, z, u, v).
    pub fn to_quintary(&self) -> RatPoly {
        let vars5 = Vars::new(["x", "y", "z", "u", "v"]);
        let lift = |p: &RatPoly| -> RatPoly {
            let mut acc = RatPoly::zero(&vars5);
            for (e, c) in p.terms() {
                let e5 = vec![e[0], e[1], e[2], 0, 0];
                acc = acc.add(&RatPoly::monomial(&vars5, e5, c.clone()));
            }
            acc
        };
        let u = RatPoly::var(&vars5, "u");
        let v = RatPoly::var(&vars5, "v");
        let two = RatPoly::constant(&vars5, Rat::from_integer(2.into()));
        u.pow(2)
            .mul(&lift(&self.l11))
            .add(&two.mul(&u).mul(&v).mul(&lift(&self.l12)))
            .add(&v.pow(2).mul(&lift(&self.l22)))
            .add(&two.mul(&u).mul(&lift(&self.q1)))
            .add(&two.mul(&v).mul(&lift(&self.q2)))
            .add(&lift(&self.c))
    }
}

/// Change projective coordinates so the marked line becomes x = y = z = 0,
/// and extract the six entry polynomials.
///
/// The line is spanned by two points p, q of P⁴ with rational coordinates;
/// canonical coordinates are unique only up to the stabilizer of the line,
/// and every downstream predicate is invariant under that stabilizer.
pub fn canonicalize(
    cubic: &RatPoly,
    p: &[Rat; 5],
    q: &[Rat; 5],
) -> Result<MarkedCubic, ThreefoldError> {
    if cubic.vars().len() != 5 {
        return Err(ThreefoldError::WrongArity(5));
    }
    if !cubic.is_homogeneous_of(3) || cubic.is_zero() {
        return Err(ThreefoldError::NotHomogeneous(3));
    }
    // rank of [p; q] must be 2
    let mut m = vec![p.to_vec(), q.to_vec()];
    if rank2(&mut m) < 2 {
        return Err(ThreefoldError::DegenerateSpan);
    }
    // build invertible M with columns e1..e3 completing {p, q}:
    // new coordinates (x, y, z, u, v) with points M e4 = p, M e5 = q
    let mut cols: Vec<Vec<Rat>> = vec![];
    for i in 0..5 {
        let mut e = vec![Rat::zero(); 5];
        e[i] = Rat::from_integer(1.into());
        let mut test = vec![p.to_vec(), q.to_vec()];
        test.extend(cols.iter().cloned());
        test.push(e.clone());
        let r = test.len();
        if rank2(&mut test) == r {
            cols.push(e);
        }
        if cols.len() == 3 {
            break;
        }
    }
    assert_eq!(cols.len(), 3, "basis completion failed");
    cols.push(p.to_vec());
    cols.push(q.to_vec());
    // substitute: old coordinate vector = M * new vector
    let vars5 = cubic.vars().clone();
    let new_vars = Vars::new(["x", "y", "z", "u", "v"]);
    let images: Vec<RatPoly> = (0..5)
        .map(|old_i| {
            let mut acc = RatPoly::zero(&new_vars);
            for (new_j, col) in cols.iter().enumerate() {
                let c = col[old_i].clone();
                if !c.is_zero() {
                    acc = acc.add(&RatPoly::var_idx(&new_vars, new_j).scale(&c));
                }
            }
            acc
        })
        .collect();
    let _ = vars5;
    let g = cubic.substitute(&images);
    extract_marked(&g)
}

/// Extracts the six entry polynomials from a quintary cubic already
/// containing the line x = y = z = 0 (variables ordered x, y, z, u, v).
pub fn extract_marked(g: &RatPoly) -> Result<MarkedCubic, ThreefoldError> {
    let vars = g.vars().clone();
    assert_eq!(vars.len(), 5);
    let pvars = Vars::new(["x", "y", "z"]);
    let mut l11 = RatPoly::zero(&pvars);
    let mut l12 = RatPoly::zero(&pvars);
    let mut l22 = RatPoly::zero(&pvars);
    let mut q1 = RatPoly::zero(&pvars);
    let mut q2 = RatPoly::zero(&pvars);
    let mut c = RatPoly::zero(&pvars);
    let half = Rat::new(1.into(), 2.into());
    for (e, coef) in g.terms() {
        let (du, dv) = (e[3], e[4]);
        let m3 = vec![e[0], e[1], e[2]];
        let mono = |co: Rat| RatPoly::monomial(&pvars, m3.clone(), co);
        match (du, dv) {
            (3, 0) | (2, 1) | (1, 2) | (0, 3) => return Err(ThreefoldError::LineNotOnCubic),
            (2, 0) => l11 = l11.add(&mono(coef.clone())),
            (1, 1) => l12 = l12.add(&mono(coef.clone() * &half)),
            (0, 2) => l22 = l22.add(&mono(coef.clone())),
            (1, 0) => q1 = q1.add(&mono(coef.clone() * &half)),
            (0, 1) => q2 = q2.add(&mono(coef.clone() * &half)),
            (0, 0) => c = c.add(&mono(coef.clone())),
            _ => unreachable!("cubic has degree 3"),
        }
    }
    Ok(MarkedCubic { pvars, l11, l12, l22, q1, q2, c })
}

fn rank2(rows: &mut Vec<Vec<Rat>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, |x| x.len());
    let mut mat: Vec<Vec<Rat>> = rows.clone();
    for c in 0..ncols {
        let Some(pi) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else { continue };
        mat.swap(r, pi);
        let inv = Rat::from_integer(1.into()) / mat[r][c].clone();
        for i in 0..mat.len() {
            if i == r || mat[i][c].is_zero() {
                continue;
            }
            let f = mat[i][c].clone() * &inv;
            for j in 0..ncols {
                let v = mat[i][j].clone() - &f * &mat[r][j];
                mat[i][j] = v;
            }
        }
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    r
}

pub fn spectral_pair(mc: &MarkedCubic) -> SpectralPair {
    let quintic = det3(&mc.fundamental_matrix());
    let theta = mc.l11.mul(&mc.l22).sub(&mc.l12.mul(&mc.l12));
    SpectralPair {
        quintic_vanishes: quintic.is_zero(),
        theta_vanishes: theta.is_zero(),
        quintic,
        theta,
    }
}

/// Gram matrix of the theta-conic in (x, y, z).
pub fn theta_gram(mc: &MarkedCubic) -> SymMat {
    let theta = mc.l11.mul(&mc.l22).sub(&mc.l12.mul(&mc.l12));
    if theta.is_zero() {
        return SymMat::zero(3);
    }
    gram_of_quadratic(&theta, &[0, 1, 2])
}

/// Smooth along the marked line iff the theta form has rank ≥ 2
/// (rank ≤ 1 means a complete square or zero).
pub fn line_smoothness(mc: &MarkedCubic) -> LineSmoothness {
    if theta_gram_rank(mc) >= 2 {
        LineSmoothness::SmoothAlongLine
    } else {
        LineSmoothness::SingularOnLine
    }
}

fn theta_gram_rank(mc: &MarkedCubic) -> usize {
    let theta = mc.l11.mul(&mc.l22).sub(&mc.l12.mul(&mc.l12));
    if theta.is_zero() {
        0
    } else {
        gram_of_quadratic(&theta, &[0, 1, 2]).rank()
    }
}

/// Multiple iff the three linear forms are linearly dependent; equivalently
/// the theta-conic splits into two lines (rank 2).
pub fn line_type(mc: &MarkedCubic) -> LineType {
    let rows: Vec<Vec<Rat>> = [&mc.l11, &mc.l12, &mc.l22]
        .iter()
        .map(|l| {
            (0..3)
                .map(|i| {
                    let mut e = vec![0u32; 3];
                    e[i] = 1;
                    l.terms()
                        .find(|(ee, _)| **ee == e)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Rat::zero)
                })
                .collect()
        })
        .collect();
    let mut m = rows;
    if rank2(&mut m) <= 2 {
        LineType::Multiple
    } else {
        LineType::Simple
    }
}

/// Classifies the residual conic over a rational point of the net plane by
/// the signature of the evaluated fundamental matrix.
pub fn residual_conic_status(mc: &MarkedCubic, s: &[Rat; 3]) -> ResidualConicStatus {
    let eval = |p: &RatPoly| p.eval(s);
    let rows = vec![
        vec![eval(&mc.l11), eval(&mc.l12), eval(&mc.q1)],
        vec![eval(&mc.l12), eval(&mc.l22), eval(&mc.q2)],
        vec![eval(&mc.q1), eval(&mc.q2), eval(&mc.c)],
    ];
    let m = SymMat::from_rows(rows);
    if m.det().is_zero() {
        return ResidualConicStatus::SingularFiber;
    }
    match m.signature() {
        (3, 0) | (0, 3) => ResidualConicStatus::Empty,
        (2, 1) | (1, 2) => ResidualConicStatus::RealCircle,
        sig => unreachable!("nonsingular 3x3 with signature {sig:?}"),
    }
}

/// Local data at a node of a quintary cubic: exact coordinate change
/// placing the node at (0,0,0,0,1), then X = v·f2 + f3.
pub fn quadrocubic(cubic: &RatPoly, node: &[Rat; 5]) -> Result<NodalData, ThreefoldError> {
    if cubic.vars().len() != 5 {
        return Err(ThreefoldError::WrongArity(5));
    }
    if !cubic.is_homogeneous_of(3) || cubic.is_zero() {
        return Err(ThreefoldError::NotHomogeneous(3));
    }
    // coordinate change: new e5 -> node, complete with standard vectors
    let mut cols: Vec<Vec<Rat>> = vec![];
    for i in 0..5 {
        let mut e = vec![Rat::zero(); 5];
        e[i] = Rat::from_integer(1.into());
        let mut test = vec![node.to_vec()];
        test.extend(cols.iter().cloned());
        test.push(e.clone());
        let r = test.len();
        if rank2(&mut test) == r {
            cols.push(e);
        }
        if cols.len() == 4 {
            break;
        }
    }
    cols.push(node.to_vec());
    let new_vars = Vars::new(["x", "y", "z", "w", "v"]);
    let images: Vec<RatPoly> = (0..5)
        .map(|old_i| {
            let mut acc = RatPoly::zero(&new_vars);
            for (new_j, col) in cols.iter().enumerate() {
                let c = col[old_i].clone();
                if !c.is_zero() {
                    acc = acc.add(&RatPoly::var_idx(&new_vars, new_j).scale(&c));
                }
            }
            acc
        })
        .collect();
    let g = cubic.substitute(&images);
    // group by powers of v (index 4): g = c3 v^3 + c2(lin) v^2 + f2 v + f3
    let lvars = Vars::new(["x", "y", "z", "w"]);
    let mut parts: [RatPoly; 4] = std::array::from_fn(|_| RatPoly::zero(&lvars));
    for (e, coef) in g.terms() {
        let dv = e[4] as usize;
        let e4 = vec![e[0], e[1], e[2], e[3]];
        parts[dv] = parts[dv].add(&RatPoly::monomial(&lvars, e4, coef.clone()));
    }
    if !parts[3].is_zero() || !parts[2].is_zero() {
        // value or gradient nonzero at the node
        return Err(ThreefoldError::NotSingularThere);
    }
    let f2 = parts[1].clone();
    let f3 = parts[0].clone();
    if f2.is_zero() {
        return Err(ThreefoldError::WorseThanQuadratic);
    }
    let signature = gram_of_quadratic(&f2, &[0, 1, 2, 3]).signature();
    Ok(NodalData { lvars, f2, f3, signature })
}

/// Consistency report for the spectral pair of a line through one node
/// (theta a double line) or through two nodes (quintic divisible by the
/// theta line).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodalSpectralReport {
    pub theta_rank: usize,
    /// Theta = c·L² when rank 1: the line L in canonical plane coordinates.
    pub theta_line: Option<String>,
    /// For a two-node line: quintic divisible by the theta line.
    pub quintic_divisible_by_theta_line: bool,
    /// For one-node data with definite tangent-plane section: the two
    /// contracted ruling generators are imaginary.
    pub generators_imaginary: Option<bool>,
}

/// Builds the marked cubic for the line from the node (0,0,0,0,1) in
/// direction `dir` (a point of the local quadric {f2 = 0}), and verifies the
/// stated spectral degenerations.
pub fn project_quadrocubic(
    nd: &NodalData,
    dir: &[Rat; 4],
) -> Result<(SpectralPair, NodalSpectralReport), ThreefoldError> {
    let dval = nd.f2.eval(dir);
    if !dval.is_zero() {
        return Err(ThreefoldError::BadPoint("direction is not on the local quadric".into()));
    }
    if !nd.f3.eval(dir).is_zero() {
        return Err(ThreefoldError::BadPoint(
            "direction is not on the quadrocubic (cubic part nonzero)".into(),
        ));
    }
    // reconstruct the quintary cubic v*f2 + f3 and the line span
    let vars5 = Vars::new(["x", "y", "z", "w", "v"]);
    let lift = |p: &RatPoly| -> RatPoly {
        let mut acc = RatPoly::zero(&vars5);
        for (e, c) in p.terms() {
            acc = acc.add(&RatPoly::monomial(
                &vars5,
                vec![e[0], e[1], e[2], e[3], 0],
                c.clone(),
            ));
        }
        acc
    };
    let v = RatPoly::var(&vars5, "v");
    let cubic = v.mul(&lift(&nd.f2)).add(&lift(&nd.f3));
    let node = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::from_integer(1.into())];
    let dir5 = [dir[0].clone(), dir[1].clone(), dir[2].clone(), dir[3].clone(), Rat::zero()];
    let mc = canonicalize(&cubic, &node, &dir5)?;
    let sp = spectral_pair(&mc);
    let theta_rank = if sp.theta_vanishes { 0 } else { theta_gram(&mc).rank() };
    let theta_line = if theta_rank == 1 { Some(extract_double_line(&sp.theta)) } else { None };
    let quintic_divisible = if theta_rank == 1 && !sp.quintic_vanishes {
        let l = double_line_poly(&sp.theta);
        sp.quintic.try_exact_div(&l).is_some()
    } else {
        false
    };
    // reality of the two ruling generators of {f2=0} through `dir`:
    // restrict f2 to the tangent plane at dir and read the signature of the
    // induced rank-2 form.
    let generators_imaginary = generators_imaginary(nd, dir);
    Ok((
        sp,
        NodalSpectralReport {
            theta_rank,
            theta_line,
            quintic_divisible_by_theta_line: quintic_divisible,
            generators_imaginary,
        },
    ))
}

/// For a rank-1 theta c·L², returns L as a polynomial (primitive).
fn double_line_poly(theta: &RatPoly) -> RatPoly {
    // theta = c * L^2: extract L from the Gram matrix column space
    let g = gram_of_quadratic(theta, &[0, 1, 2]);
    // find a nonzero row i: L proportional to (g[i][0], g[i][1], g[i][2])
    let vars = theta.vars().clone();
    for i in 0..3 {
        let row: Vec<Rat> = (0..3).map(|j| g.get(i, j).clone()).collect();
        if row.iter().any(|c| !c.is_zero()) {
            let mut l = RatPoly::zero(&vars);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    l = l.add(&RatPoly::var_idx(&vars, j).scale(c));
                }
            }
            return l.primitive_part();
        }
    }
    unreachable!("rank-1 form has a nonzero row")
}

fn extract_double_line(theta: &RatPoly) -> String {
    double_line_poly(theta).to_text()
}

/// Whether the two generators of the local quadric through `dir` are a
/// conjugate imaginary pair: the tangent-plane section of {f2=0} at `dir`
/// is a rank-2 form; definite means imaginary generators. None when the
/// section degenerates.
fn generators_imaginary(nd: &NodalData, dir: &[Rat; 4]) -> Option<bool> {
    // gradient of f2 at dir = normal of the tangent plane
    let grad: Vec<Rat> = (0..4).map(|i| nd.f2.derivative(i).eval(dir)).collect();
    if grad.iter().all(|g| g.is_zero()) {
        return None;
    }
    // parametrize the tangent plane {grad · x = 0}: basis of the kernel
    let mut basis: Vec<Vec<Rat>> = vec![];
    let piv = (0..4).find(|&i| !grad[i].is_zero()).unwrap();
    for j in 0..4 {
        if j == piv {
            continue;
        }
        let mut v = vec![Rat::zero(); 4];
        v[j] = grad[piv].clone();
        v[piv] = -grad[j].clone();
        basis.push(v);
    }
    // f2 restricted to the plane: 3x3 Gram in the basis coordinates
    let g4 = gram_of_quadratic(&nd.f2, &[0, 1, 2, 3]);
    let mut rows = vec![vec![Rat::zero(); 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let mut s = Rat::zero();
            for i in 0..4 {
                for j in 0..4 {
                    s += g4.get(i, j) * &basis[a][i] * &basis[b][j];
                }
            }
            rows[a][b] = s;
        }
    }
    let m = SymMat::from_rows(rows);
    let (p, q) = m.signature();
    if p + q != 2 {
        return None; // degenerate section; not expected at a smooth quadric point
    }
    Some(p == 2 || q == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn vars5() -> Vars {
        Vars::new(["x", "y", "z", "u", "v"])
    }

    fn p5(s: &str) -> RatPoly {
        RatPoly::parse(&vars5(), s).unwrap()
    }

    fn e4() -> [Rat; 5] {
        [rat_i(0), rat_i(0), rat_i(0), rat_i(1), rat_i(0)]
    }

    fn e5() -> [Rat; 5] {
        [rat_i(0), rat_i(0), rat_i(0), rat_i(0), rat_i(1)]
    }

    #[test]
    fn identity_extraction() {
        // already canonical: L11=x, L12=y, L22=z, Q1=Q2=0, C=x^3+y^3+z^3
        let g = p5("u^2*x + 2*u*v*y + v^2*z + x^3 + y^3 + z^3");
        let mc = canonicalize(&g, &e4(), &e5()).unwrap();
        let pv = mc.pvars.clone();
        assert_eq!(mc.l11, RatPoly::parse(&pv, "x").unwrap());
        assert_eq!(mc.l12, RatPoly::parse(&pv, "y").unwrap());
        assert_eq!(mc.l22, RatPoly::parse(&pv, "z").unwrap());
        assert!(mc.q1.is_zero() && mc.q2.is_zero());
        let sp = spectral_pair(&mc);
        let want = RatPoly::parse(&pv, "x*z - y^2")
            .unwrap()
            .mul(&RatPoly::parse(&pv, "x^3 + y^3 + z^3").unwrap());
        assert_eq!(sp.quintic, want);
        assert_eq!(sp.theta, RatPoly::parse(&pv, "x*z - y^2").unwrap());
        assert!(!sp.quintic_vanishes && !sp.theta_vanishes);
    }

    #[test]
    fn line_not_on_cubic() {
        let g = p5("u^3 + x^3 + y^3 + z^3");
        assert_eq!(canonicalize(&g, &e4(), &e5()).unwrap_err(), ThreefoldError::LineNotOnCubic);
    }

    #[test]
    fn degenerate_span() {
        let g = p5("u^2*x + 2*u*v*y + v^2*z + x^3");
        let p = e4();
        let q = [rat_i(0), rat_i(0), rat_i(0), rat_i(2), rat_i(0)];
        assert_eq!(canonicalize(&g, &p, &q).unwrap_err(), ThreefoldError::DegenerateSpan);
    }

    #[test]
    fn degenerate_quintic_flag() {
        // Q1 = Q2 = C = 0: det vanishes identically
        let g = p5("u^2*x + 2*u*v*y + v^2*z");
        let mc = canonicalize(&g, &e4(), &e5()).unwrap();
        let sp = spectral_pair(&mc);
        assert!(sp.quintic_vanishes);
        assert!(!sp.theta_vanishes);
    }

    #[test]
    fn smoothness_and_type() {
        let mk = |l11: &str, l12: &str, l22: &str| {
            let g = format!("u^2*({l11}) + 2*u*v*({l12}) + v^2*({l22})");
            // hand-expand since the parser has no parentheses: build directly
            let pv = Vars::new(["x", "y", "z"]);
            MarkedCubic {
                pvars: pv.clone(),
                l11: RatPoly::parse(&pv, l11).unwrap(),
                l12: RatPoly::parse(&pv, l12).unwrap(),
                l22: RatPoly::parse(&pv, l22).unwrap(),
                q1: RatPoly::zero(&pv),
                q2: RatPoly::zero(&pv),
                c: RatPoly::parse(&pv, "x^3 + y^3 + z^3").unwrap(),
            };
            let _ = g;
            MarkedCubic {
                pvars: pv.clone(),
                l11: RatPoly::parse(&pv, l11).unwrap(),
                l12: RatPoly::parse(&pv, l12).unwrap(),
                l22: RatPoly::parse(&pv, l22).unwrap(),
                q1: RatPoly::zero(&pv),
                q2: RatPoly::zero(&pv),
                c: RatPoly::parse(&pv, "x^3 + y^3 + z^3").unwrap(),
            }
        };
        let a = mk("x", "y", "z");
        assert_eq!(line_smoothness(&a), LineSmoothness::SmoothAlongLine);
        assert_eq!(line_type(&a), LineType::Simple);
        let b = mk("x", "0*x", "x");
        assert_eq!(line_smoothness(&b), LineSmoothness::SingularOnLine);
        let c = mk("0*x", "0*x", "0*x");
        assert_eq!(line_smoothness(&c), LineSmoothness::SingularOnLine);
        let d = mk("x", "y", "x + y");
        assert_eq!(line_smoothness(&d), LineSmoothness::SmoothAlongLine);
        assert_eq!(line_type(&d), LineType::Multiple);
        // rank-2 theta of d factors into two distinct lines over C:
        // diagonalization has exactly two nonzero entries
        let theta = d.l11.mul(&d.l22).sub(&d.l12.mul(&d.l12));
        let g = gram_of_quadratic(&theta, &[0, 1, 2]);
        let (p, q) = g.signature();
        assert_eq!(p + q, 2);
    }

    #[test]
    fn residual_conic_classification() {
        // identity evaluation -> Empty; diag(1,1,-1) -> RealCircle
        let pv = Vars::new(["x", "y", "z"]);
        let mc = MarkedCubic {
            pvars: pv.clone(),
            l11: RatPoly::parse(&pv, "x").unwrap(),
            l12: RatPoly::zero(&pv),
            l22: RatPoly::parse(&pv, "x").unwrap(),
            q1: RatPoly::zero(&pv),
            q2: RatPoly::zero(&pv),
            c: RatPoly::parse(&pv, "x^3").unwrap(),
        };
        let s = [rat_i(1), rat_i(0), rat_i(0)];
        assert_eq!(residual_conic_status(&mc, &s), ResidualConicStatus::Empty);
        let mc2 = MarkedCubic { c: RatPoly::parse(&pv, "-1*x^3").unwrap(), ..mc.clone() };
        assert_eq!(residual_conic_status(&mc2, &s), ResidualConicStatus::RealCircle);
    }

    #[test]
    fn canonicalize_roundtrip_under_coordinate_change() {
        // apply an invertible rational change mixing the line into general
        // position, then canonicalize back: the spectral pair agrees up to
        // a linear change in (x,y,z) and a scalar. We check the invariant
        // consequences: theta rank, quintic degree, line type.
        let g = p5("u^2*x + 2*u*v*y + v^2*z + 2*u*x^2 + 2*v*y^2 + x^3 + y^3 + z^3 + x*y*z");
        let mc0 = canonicalize(&g, &e4(), &e5()).unwrap();
        let sp0 = spectral_pair(&mc0);
        // change of coordinates: a shear sending e4 -> e4 + e1, e5 -> e5 - e3
        let vars = vars5();
        let images = vec![
            RatPoly::parse(&vars, "x + u").unwrap(),
            RatPoly::parse(&vars, "y - v").unwrap(),
            RatPoly::parse(&vars, "z + 2*u").unwrap(),
            RatPoly::parse(&vars, "u + v").unwrap(),
            RatPoly::parse(&vars, "v - u").unwrap(),
        ];
        let g2 = g.substitute(&images);
        // the line x=y=z=0 maps: find two points spanning the image line
        // under the INVERSE substitution; easier: transform the span points
        // by the matrix of the map sending new->old... the images define
        // old_coord = row(new); we need points p with images vanishing on
        // x,y,z rows. Take new-basis points of the line in g2: solve.
        // The map above sends a point with new coords n to old coords
        // A n where A rows are the coefficient rows of `images`.
        // The line in g (old) is old-e4, old-e5; its preimage points satisfy
        // A n = e4, e5: solve two linear systems.
        let a_rows: Vec<Vec<Rat>> = images
            .iter()
            .map(|im| {
                (0..5)
                    .map(|j| {
                        let mut e = vec![0u32; 5];
                        e[j] = 1;
                        im.terms()
                            .find(|(ee, _)| **ee == e)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rat::zero)
                    })
                    .collect()
            })
            .collect();
        let solve_for = |target: [i64; 5]| -> [Rat; 5] {
            // Gaussian solve A n = t
            let mut m: Vec<Vec<Rat>> = a_rows
                .iter()
                .zip(target.iter())
                .map(|(r, &t)| {
                    let mut row = r.clone();
                    row.push(rat_i(t));
                    row
                })
                .collect();
            for c in 0..5 {
                let p = (c..5).find(|&i| !m[i][c].is_zero()).unwrap();
                m.swap(c, p);
                let d = m[c][c].clone();
                for j in 0..6 {
                    m[c][j] = m[c][j].clone() / &d;
                }
                for i in 0..5 {
                    if i == c {
                        continue;
                    }
                    let f = m[i][c].clone();
                    for j in 0..6 {
                        let v = m[i][j].clone() - &f * &m[c][j];
                        m[i][j] = v;
                    }
                }
            }
            std::array::from_fn(|i| m[i][5].clone())
        };
        let p = solve_for([0, 0, 0, 1, 0]);
        let q = solve_for([0, 0, 0, 0, 1]);
        let mc1 = canonicalize(&g2, &p, &q).unwrap();
        let sp1 = spectral_pair(&mc1);
        assert_eq!(sp0.quintic.total_degree(), sp1.quintic.total_degree());
        assert_eq!(theta_gram(&mc0).rank(), theta_gram(&mc1).rank());
        assert_eq!(line_type(&mc0), line_type(&mc1));
        assert_eq!(line_smoothness(&mc0), line_smoothness(&mc1));
    }

    #[test]
    fn quadrocubic_signatures() {
        // affine x^2+y^2+z^2-w^2 + cubic at the v-node: signature (3,1)
        let g = p5("v*x^2 + v*y^2 + v*z^2 - v*u^2 + x^3 + y^3 + z^3 + u^3 + x*y*u");
        let node = [rat_i(0), rat_i(0), rat_i(0), rat_i(0), rat_i(1)];
        let nd = quadrocubic(&g, &node).unwrap();
        assert_eq!(nd.signature, (3, 1));
        // signature (2,2)
        let g2 = p5("v*x^2 + v*y^2 - v*z^2 - v*u^2 + x^3 + y^3 + z^3 + u^3");
        let nd2 = quadrocubic(&g2, &node).unwrap();
        assert_eq!(nd2.signature, (2, 2));
        // not singular there
        let g3 = p5("v^2*x + u^2*x + x^3 + y^3 + z^3");
        assert!(matches!(
            quadrocubic(&g3, &node).unwrap_err(),
            ThreefoldError::NotSingularThere
        ));
    }

    #[test]
    fn one_node_theta_is_double_line() {
        // X = v f2 + f3 with a line through the node: theta rank 1
        let pvars = Vars::new(["x", "y", "z", "w"]);
        let f2 = RatPoly::parse(&pvars, "x*w - y*z").unwrap();
        let f3 = RatPoly::parse(&pvars, "x^3 + y^3 + z^3 + w^3 + x*y*w").unwrap();
        let nd = NodalData { lvars: pvars.clone(), f2: f2.clone(), f3, signature: (2, 2) };
        // direction on the quadrocubic: f2(0,0,1,-1) = 0, f3(0,0,1,-1) = 0
        let dir = [rat_i(0), rat_i(0), rat_i(1), rat_i(-1)];
        let (sp, rep) = project_quadrocubic(&nd, &dir).unwrap();
        assert_eq!(rep.theta_rank, 1);
        assert!(!sp.quintic_vanishes);
    }
}
