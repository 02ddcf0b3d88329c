//! Exact point location against a sweep: ray-casting parity, segment
//! crossings with component classification, convexity of four ovals, and
//! certified near-component sampling.

use super::sweep::{count_below, fiber_at, Sweep};
use super::{ClassCode, CurveError};
use crate::interval::RatInterval;
use crate::poly::{RatPoly, Vars};
use crate::rat::{rat, rat_i, sign, Rat};
use crate::roots::isolate_real_roots;
use crate::upoly::UPoly;
use num_traits::Zero;

/// Whether the rational point lies inside the closed region bounded by the
/// given two-sided component (ray-casting parity on the vertical ray going
/// down). The point must be off the curve and over a non-critical x.
pub fn point_in_component(
    sweep: &Sweep,
    point: &(Rat, Rat),
    comp: usize,
) -> Result<bool, CurveError> {
    let (x, y) = point;
    if !sweep.g.eval(&[x.clone(), y.clone()]).is_zero() {
        // fine: strictly off the curve
    } else {
        return Err(CurveError::NonGenericLine("test point lies on the curve".into()));
    }
    let slab = sweep
        .slab_of(x)
        .ok_or_else(|| CurveError::NonGenericLine("test point over a critical x".into()))?;
    let mut fiber = fiber_at(&sweep.g, x)?;
    let ranks: Vec<usize> = (0..fiber.len())
        .filter(|&r| sweep.comp_of[slab].get(r) == Some(&comp))
        .collect();
    let mut comp_fiber: Vec<_> = ranks.iter().map(|&r| fiber[r].clone()).collect();
    let below = count_below(&mut comp_fiber, y);
    let _ = &mut fiber;
    Ok(below % 2 == 1)
}

/// A transversal crossing of a segment with the curve.
#[derive(Clone, Debug)]
pub struct SegmentCrossing {
    pub component: usize,
}

/// Crossings of the open segment (p, q) with the curve, classified by
/// component. Errors with `NonGenericLine` on tangential intersections or
/// endpoints on the curve.
pub fn segment_crossings(
    sweep: &Sweep,
    p: &(Rat, Rat),
    q: &(Rat, Rat),
) -> Result<Vec<SegmentCrossing>, CurveError> {
    let g = &sweep.g;
    if !g.eval(&[p.0.clone(), p.1.clone()]).is_zero()
        && !g.eval(&[q.0.clone(), q.1.clone()]).is_zero()
    {
    } else {
        return Err(CurveError::NonGenericLine("segment endpoint on the curve".into()));
    }
    if p.0 == q.0 {
        // vertical segment
        let slab = sweep
            .slab_of(&p.0)
            .ok_or_else(|| CurveError::NonGenericLine("vertical segment at critical x".into()))?;
        let mut fiber = fiber_at(g, &p.0)?;
        let (ylo, yhi) = if p.1 < q.1 { (&p.1, &q.1) } else { (&q.1, &p.1) };
        let mut out = vec![];
        for (r, b) in fiber.iter_mut().enumerate() {
            loop {
                if let Some(e) = &b.exact {
                    if e > ylo && e < yhi {
                        out.push(SegmentCrossing { component: sweep.comp_of[slab][r] });
                    }
                    break;
                }
                if b.lo() >= ylo && b.hi() <= yhi {
                    out.push(SegmentCrossing { component: sweep.comp_of[slab][r] });
                    break;
                }
                if b.hi() <= ylo || b.lo() >= yhi {
                    break;
                }
                b.refine_step();
            }
        }
        return Ok(out);
    }
    // parametrize and restrict
    let tvars = Vars::new(["t"]);
    let t = RatPoly::var(&tvars, "t");
    let xt = RatPoly::constant(&tvars, p.0.clone())
        .add(&t.scale(&(q.0.clone() - &p.0)));
    let yt = RatPoly::constant(&tvars, p.1.clone())
        .add(&t.scale(&(q.1.clone() - &p.1)));
    let h3 = g.substitute(&[xt, yt]);
    let h = UPoly::from_ratpoly(&h3, 0);
    if h.is_zero() {
        return Err(CurveError::NonGenericLine("segment lies on the curve".into()));
    }
    let roots = isolate_real_roots(&h).map_err(|e| CurveError::Internal(e.to_string()))?;
    let zero = Rat::zero();
    let one = rat_i(1);
    let mut out = vec![];
    for mut b in roots {
        // keep roots strictly inside (0,1)
        loop {
            if let Some(e) = &b.exact {
                if e <= &zero || e >= &one {
                    break;
                }
            }
            if b.hi() <= &zero || b.lo() >= &one {
                break;
            }
            if b.lo() > &zero && b.hi() < &one {
                if b.multiplicity != 1 {
                    return Err(CurveError::NonGenericLine(
                        "tangential segment-curve intersection".into(),
                    ));
                }
                out.push(SegmentCrossing {
                    component: classify_crossing(sweep, p, q, &mut b)?,
                });
                break;
            }
            if b.exact.is_some() {
                // exact root at 0 or 1 was excluded above; exact inside
                // handled by the strict branch
                break;
            }
            b.refine_step();
        }
    }
    Ok(out)
}

/// Identifies the component whose arc the segment crosses at parameter box
/// `tb`, by the rank change of "arcs below the segment" across the crossing.
fn classify_crossing(
    sweep: &Sweep,
    p: &(Rat, Rat),
    q: &(Rat, Rat),
    tb: &mut crate::roots::RootBox,
) -> Result<usize, CurveError> {
    let dx = q.0.clone() - &p.0;
    let x_of = |t: &Rat| p.0.clone() + t * dx.clone();
    let y_of = |x: &Rat| {
        // line through p, q evaluated at x
        let slope = (q.1.clone() - &p.1) / (q.0.clone() - &p.0);
        p.1.clone() + (x.clone() - &p.0) * slope
    };
    for _ in 0..512 {
        let (t1, t2) = match &tb.exact {
            Some(e) => {
                let w = rat(1, 1 << 24);
                (e.clone() - &w, e.clone() + &w)
            }
            None => (tb.lo().clone(), tb.hi().clone()),
        };
        let (mut xa, mut xb) = (x_of(&t1), x_of(&t2));
        if xa > xb {
            std::mem::swap(&mut xa, &mut xb);
        }
        let slab_a = sweep.slab_of(&xa);
        let slab_b = sweep.slab_of(&xb);
        match (slab_a, slab_b) {
            (Some(a), Some(b)) if a == b => {
                let ya = y_of(&xa);
                let yb = y_of(&xb);
                if sweep.g.eval(&[xa.clone(), ya.clone()]).is_zero()
                    || sweep.g.eval(&[xb.clone(), yb.clone()]).is_zero()
                {
                    tb.refine_step();
                    continue;
                }
                let mut fa = fiber_at(&sweep.g, &xa)?;
                let mut fb = fiber_at(&sweep.g, &xb)?;
                let ba = count_below(&mut fa, &ya);
                let bb = count_below(&mut fb, &yb);
                if ba.abs_diff(bb) == 1 {
                    let rank = ba.min(bb);
                    return Ok(sweep.comp_of[a][rank]);
                }
                // other crossings still inside the x-window
                tb.refine_step();
            }
            _ => tb.refine_step(),
        }
    }
    Err(CurveError::Internal("crossing classification did not converge".into()))
}

/// A rational point strictly off the curve, adjacent to an arc of the
/// component (just above it in some slab).
pub fn near_component_point(sweep: &Sweep, comp: usize) -> Result<(Rat, Rat), CurveError> {
    for (si, row) in sweep.comp_of.iter().enumerate() {
        for (r, &c) in row.iter().enumerate() {
            if c != comp {
                continue;
            }
            let x = sweep.samples[si].clone();
            let mut fiber = sweep.fibers[si].clone();
            for _ in 0..64 {
                let hi = fiber[r].hi().clone();
                let gap = if r + 1 < fiber.len() {
                    let next_lo = fiber[r + 1].lo().clone();
                    if next_lo <= hi {
                        fiber[r].refine_step();
                        fiber[r + 1].refine_step();
                        continue;
                    }
                    (next_lo - &hi) / rat_i(4)
                } else {
                    rat_i(1)
                };
                let y = hi.clone() + gap.min(rat(1, 64));
                if !sweep.g.eval(&[x.clone(), y.clone()]).is_zero() {
                    return Ok((x, y));
                }
                fiber[r].refine_step();
            }
        }
    }
    Err(CurveError::Internal("no adjacent point found for component".into()))
}

/// Certified sign of a ternary form t (in chart coordinates) on the given
/// curve component: refine an arc box until the interval sign of t along it
/// is constant. Skips tangency arcs and tries elsewhere.
pub fn component_sign(sweep: &Sweep, comp: usize, t_chart: &RatPoly) -> Result<i8, CurveError> {
    for (si, row) in sweep.comp_of.iter().enumerate() {
        for (r, &c) in row.iter().enumerate() {
            if c != comp {
                continue;
            }
            let x = &sweep.samples[si];
            let tx = t_chart.specialize(0, x);
            let tu = UPoly::from_ratpoly(&tx, 1);
            let mut b = sweep.fibers[si][r].clone();
            for _ in 0..256 {
                if let Some(e) = &b.exact {
                    let v = tu.eval(e);
                    if v.is_zero() {
                        break; // tangency point: try another arc
                    }
                    return Ok(sign(&v));
                }
                let iv = RatInterval::eval_upoly(
                    &tu,
                    &RatInterval::new(b.lo().clone(), b.hi().clone()),
                );
                if let Some(s) = iv.sign() {
                    if s != 0 {
                        return Ok(s);
                    }
                }
                b.refine_step();
            }
        }
    }
    Err(CurveError::Internal(
        "sign of the form on the component could not be certified".into(),
    ))
}

/// Orientation of the triple (a, b, c) in the plane.
fn orient2(a: &(Rat, Rat), b: &(Rat, Rat), c: &(Rat, Rat)) -> i8 {
    let v = (b.0.clone() - &a.0) * (c.1.clone() - &a.1)
        - (b.1.clone() - &a.1) * (c.0.clone() - &a.0);
    sign(&v)
}

fn point_in_triangle(p: &(Rat, Rat), tri: [&(Rat, Rat); 3]) -> Option<bool> {
    let s1 = orient2(tri[0], tri[1], p);
    let s2 = orient2(tri[1], tri[2], p);
    let s3 = orient2(tri[2], tri[0], p);
    if s1 == 0 || s2 == 0 || s3 == 0 {
        return None; // degenerate: caller re-centers
    }
    Some(s1 == s2 && s2 == s3)
}

/// Decides the four-oval type by the convexity criterion: the quintic is of
/// type I exactly when its four ovals are not in convex position. The check
/// uses one interior witness per oval, demands that the triangle edges used
/// stay clear of the one-sided component, and re-centers witnesses before
/// giving up with `ConvexityUndecided`.
pub fn convexity_class(
    sweep: &Sweep,
    oval_comps: &[usize],
    witnesses: &[(Rat, Rat)],
    j_comp: usize,
) -> Result<ClassCode, CurveError> {
    assert_eq!(oval_comps.len(), 4);
    let mut wit: Vec<(Rat, Rat)> = witnesses.to_vec();
    for _attempt in 0..3 {
        match convexity_once(sweep, oval_comps, &wit, j_comp) {
            Ok(Some(code)) => return Ok(code),
            Ok(None) | Err(CurveError::NonGenericLine(_)) => {
                // re-center: nudge each witness up inside its oval
                wit = recenter(sweep, oval_comps, &wit)?;
            }
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::ConvexityUndecided)
}

fn recenter(
    sweep: &Sweep,
    oval_comps: &[usize],
    wit: &[(Rat, Rat)],
) -> Result<Vec<(Rat, Rat)>, CurveError> {
    let mut out = vec![];
    for (i, w) in wit.iter().enumerate() {
        // move the witness to the midpoint between the two arcs bounding it
        // at a slightly shifted x inside the same slab
        let slab = sweep
            .slab_of(&w.0)
            .ok_or_else(|| CurveError::Internal("witness over critical x".into()))?;
        let lo = if slab == 0 {
            w.0.clone() - rat_i(1)
        } else {
            sweep.criticals[slab - 1].hi().clone()
        };
        let x2 = (w.0.clone() + lo) / rat_i(2) + rat(1, 7919);
        let cand = (x2, w.1.clone());
        // keep the y between the oval's bounding arcs at the new x
        match interior_y(sweep, oval_comps[i], &cand.0) {
            Ok(y) => out.push((cand.0, y)),
            Err(_) => out.push(w.clone()),
        }
    }
    Ok(out)
}

fn interior_y(sweep: &Sweep, comp: usize, x: &Rat) -> Result<Rat, CurveError> {
    let slab = sweep
        .slab_of(x)
        .ok_or_else(|| CurveError::NonGenericLine("x over a critical".into()))?;
    let mut fiber = fiber_at(&sweep.g, x)?;
    let ranks: Vec<usize> = (0..fiber.len())
        .filter(|&r| sweep.comp_of[slab].get(r) == Some(&comp))
        .collect();
    if ranks.len() < 2 {
        return Err(CurveError::Internal("component has no pair of arcs here".into()));
    }
    let r0 = ranks[0];
    for _ in 0..128 {
        let hi0 = fiber[r0].hi().clone();
        let lo1 = fiber[r0 + 1].lo().clone();
        if hi0 < lo1 {
            return Ok((hi0 + lo1) / rat_i(2));
        }
        fiber[r0].refine_step();
        fiber[r0 + 1].refine_step();
    }
    Err(CurveError::Internal("fiber refinement budget exhausted".into()))
}

fn convexity_once(
    sweep: &Sweep,
    oval_comps: &[usize],
    wit: &[(Rat, Rat)],
    j_comp: usize,
) -> Result<Option<ClassCode>, CurveError> {
    let mut valid_noncontaining = 0;
    for m in 0..4 {
        let tri_idx: Vec<usize> = (0..4).filter(|&i| i != m).collect();
        let tri = [&wit[tri_idx[0]], &wit[tri_idx[1]], &wit[tri_idx[2]]];
        // edges must avoid the one-sided component
        let mut j_free = true;
        let mut oval_m_on_edges = false;
        for e in 0..3 {
            let a = tri[e];
            let b = tri[(e + 1) % 3];
            let crossings = segment_crossings(sweep, a, b)?;
            if crossings.iter().any(|c| c.component == j_comp) {
                j_free = false;
            }
            if crossings.iter().any(|c| c.component == oval_comps[m]) {
                oval_m_on_edges = true;
            }
        }
        if !j_free {
            continue;
        }
        match point_in_triangle(&wit[m], tri) {
            None => return Ok(None), // degenerate, re-center
            Some(true) => {
                if !oval_m_on_edges {
                    // a J-free triangle of three ovals containing the fourth
                    return Ok(Some(ClassCode::J4I));
                }
                return Ok(None);
            }
            Some(false) => {
                if oval_m_on_edges {
                    return Ok(None);
                }
                valid_noncontaining += 1;
            }
        }
    }
    if valid_noncontaining == 4 {
        return Ok(Some(ClassCode::J4II));
    }
    Ok(None)
}
