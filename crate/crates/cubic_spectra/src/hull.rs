//! Exact convex-hull predicates for five-point configurations in ℝ³ and the
//! 3+2 bipartition of points on an ellipsoid quadric.

use crate::quadform::SymMat;
use crate::rat::{sign, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("points are not in linearly general position (four coplanar)")]
    NotGeneral,
    #[error("expected exactly five points")]
    WrongCount,
}

pub type Point3 = [Rat; 3];

/// Sign of the orientation determinant of (b-a, c-a, d-a).
pub fn orient3(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i8 {
    let col = |p: &Point3| [p[0].clone() - &a[0], p[1].clone() - &a[1], p[2].clone() - &a[2]];
    let (u, v, w) = (col(b), col(c), col(d));
    let det = u[0].clone() * (&v[1] * &w[2] - &v[2] * &w[1])
        - u[1].clone() * (&v[0] * &w[2] - &v[2] * &w[0])
        + u[2].clone() * (&v[0] * &w[1] - &v[1] * &w[0]);
    sign(&det)
}

/// Convex hull of 5 points in linearly general position by exhaustive facet
/// enumeration; returns the valency of each point (число of hull edges).
pub fn hull_valencies(pts: &[Point3]) -> Result<Vec<usize>, HullError> {
    if pts.len() != 5 {
        return Err(HullError::WrongCount);
    }
    // general position: no 4 coplanar
    for q in combinations4() {
        if orient3(&pts[q[0]], &pts[q[1]], &pts[q[2]], &pts[q[3]]) == 0 {
            return Err(HullError::NotGeneral);
        }
    }
    // facets: triples with the remaining two points strictly on one side
    let mut edges = std::collections::BTreeSet::new();
    for t in combinations3() {
        let rest: Vec<usize> = (0..5).filter(|i| !t.contains(i)).collect();
        let s1 = orient3(&pts[t[0]], &pts[t[1]], &pts[t[2]], &pts[rest[0]]);
        let s2 = orient3(&pts[t[0]], &pts[t[1]], &pts[t[2]], &pts[rest[1]]);
        if s1 == s2 {
            edges.insert((t[0], t[1]));
            edges.insert((t[0], t[2]));
            edges.insert((t[1], t[2]));
        }
    }
    let mut val = vec![0usize; 5];
    for &(a, b) in &edges {
        val[a] += 1;
        val[b] += 1;
    }
    Ok(val)
}

/// The Segre 3+2 bipartition: the triple of valency-4 vertices and the pair
/// of valency-3 vertices of the convex hull.
pub fn segre_bipartition(pts: &[Point3]) -> Result<(Vec<usize>, Vec<usize>), HullError> {
    let val = hull_valencies(pts)?;
    let triple: Vec<usize> = (0..5).filter(|&i| val[i] == 4).collect();
    let pair: Vec<usize> = (0..5).filter(|&i| val[i] == 3).collect();
    if triple.len() != 3 || pair.len() != 2 {
        return Err(HullError::NotGeneral);
    }
    Ok((triple, pair))
}

/// Independent route to the same bipartition: a vertex belongs to the triple
/// exactly when the central projection of the other four points from it (to
/// a transverse plane) lands in convex position.
pub fn projection_bipartition(pts: &[Point3]) -> Result<(Vec<usize>, Vec<usize>), HullError> {
    if pts.len() != 5 {
        return Err(HullError::WrongCount);
    }
    let mut triple = vec![];
    let mut pair = vec![];
    for i in 0..5 {
        let others: Vec<usize> = (0..5).filter(|&j| j != i).collect();
        // orientation of the projected quadruple: point j is inside the
        // triangle of the others iff the three orientations agree; convex
        // position iff no point is inside the triangle of the rest.
        let mut convex = true;
        for &j in &others {
            let tri: Vec<usize> = others.iter().copied().filter(|&k| k != j).collect();
            // j inside cone(tri) as seen from pts[i]: all orientation signs
            // of (i, two of tri, j) match the sign of the third vertex
            let s01 = orient3(&pts[i], &pts[tri[0]], &pts[tri[1]], &pts[j]);
            let s12 = orient3(&pts[i], &pts[tri[1]], &pts[tri[2]], &pts[j]);
            let s20 = orient3(&pts[i], &pts[tri[2]], &pts[tri[0]], &pts[j]);
            let c01 = orient3(&pts[i], &pts[tri[0]], &pts[tri[1]], &pts[tri[2]]);
            let c12 = orient3(&pts[i], &pts[tri[1]], &pts[tri[2]], &pts[tri[0]]);
            let c20 = orient3(&pts[i], &pts[tri[2]], &pts[tri[0]], &pts[tri[1]]);
            if s01 == 0 || s12 == 0 || s20 == 0 {
                return Err(HullError::NotGeneral);
            }
            if s01 == c01 && s12 == c12 && s20 == c20 {
                convex = false; // j lies in the cone spanned by the others
            }
        }
        if convex {
            triple.push(i);
        } else {
            pair.push(i);
        }
    }
    if triple.len() != 3 || pair.len() != 2 {
        return Err(HullError::NotGeneral);
    }
    Ok((triple, pair))
}

/// Verifies that the points lie on the quadric xᵀ G x̂ = 0 where x̂ = (x, 1):
/// convenience for tests that place configurations on an ellipsoid.
pub fn on_affine_quadric(g: &SymMat, p: &Point3) -> bool {
    let x = [p[0].clone(), p[1].clone(), p[2].clone(), Rat::from_integer(1.into())];
    let mut acc = Rat::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += g.get(i, j) * &x[i] * &x[j];
        }
    }
    acc.is_zero()
}

fn combinations3() -> Vec<[usize; 3]> {
    let mut out = vec![];
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn combinations4() -> Vec<[usize; 4]> {
    let mut out = vec![];
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                for d in c + 1..5 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn pt(x: i64, y: i64, z: i64) -> Point3 {
        [rat_i(x), rat_i(y), rat_i(z)]
    }

    #[test]
    fn poles_and_equator() {
        // north + south pole, 3 equatorial points on the unit sphere
        // (rational points via Pythagorean triples)
        let pts = vec![
            pt(0, 0, 1),
            pt(0, 0, -1),
            [rat_i(1), rat_i(0), rat_i(0)],
            [rat(-3, 5), rat(4, 5), rat_i(0)],
            [rat(-3, 5), rat(-4, 5), rat_i(0)],
        ];
        let (triple, pair) = segre_bipartition(&pts).unwrap();
        assert_eq!(triple, vec![2, 3, 4]);
        assert_eq!(pair, vec![0, 1]);
        let (t2, p2) = projection_bipartition(&pts).unwrap();
        assert_eq!((t2, p2), (triple, pair));
    }

    #[test]
    fn coplanar_rejected() {
        let pts = vec![pt(0, 0, 1), pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(2, 3, 0)];
        assert_eq!(segre_bipartition(&pts).unwrap_err(), HullError::NotGeneral);
    }

    #[test]
    fn perturbed_simplex_matches_projection_oracle() {
        let pts = vec![
            [rat(3, 5), rat(4, 5), rat_i(0)],
            [rat(-4, 5), rat(3, 5), rat_i(0)],
            [rat(-3, 5), rat(-4, 5), rat_i(0)],
            [rat(12, 13), rat_i(0), rat(5, 13)],
            [rat_i(0), rat(-5, 13), rat(-12, 13)],
        ];
        let a = segre_bipartition(&pts).unwrap();
        let b = projection_bipartition(&pts).unwrap();
        assert_eq!(a, b);
    }
}
