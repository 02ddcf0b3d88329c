//! The exact vertical sweep: slabs, fibers, arc gluing, components, class
//! codes.

use super::{ChartInfo, ClassCode, CurveError, CurveTopology, OvalInfo};
use crate::poly::{RatPoly, Vars};
use crate::rat::{rat_i, sign, Rat};
use crate::roots::{isolate_real_roots, RootBox};
use crate::subres;
use crate::upoly::UPoly;
use num_traits::Zero;

/// Sweep decomposition of a real affine curve g(x, y) = 0 in a generic
/// sheared chart, with arcs glued into connected components of the
/// projective real locus.
#[derive(Clone, Debug)]
pub struct Sweep {
    /// Bivariate polynomial in the chart, variables (x, y).
    pub g: RatPoly,
    pub degree: u32,
    /// Homogeneous chart transform: original = m · (x, y, z)ᵀ of the chart.
    pub chart_matrix: [[Rat; 3]; 3],
    pub chart: ChartInfo,
    pub criticals: Vec<RootBox>,
    /// Rational sample x-values, one per slab (len = criticals + 1).
    pub samples: Vec<Rat>,
    /// Fiber root boxes over each sample, ascending in y.
    pub fibers: Vec<Vec<RootBox>>,
    /// Component id of each arc: comp_of[slab][rank].
    pub comp_of: Vec<Vec<usize>>,
    pub n_components: usize,
    /// Crossings with the chart's line at infinity, per component.
    pub crossings: Vec<usize>,
    /// Fold events per critical: (kind, rank of the lower fold arc).
    pub events: Vec<FoldEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoldEvent {
    /// Fiber counts equal; arcs pass through in order.
    Pass,
    /// Two new arcs appear on the right at ranks (q, q+1).
    Birth { q: usize },
    /// Arcs at ranks (q, q+1) on the left merge and die.
    Death { q: usize },
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
            r
        } else {
            i
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Dehomogenizes a ternary form in the chart z = 1 after the coordinate
/// change `m` (original = m · new), returning a bivariate polynomial.
pub fn to_chart(f: &RatPoly, m: &[[Rat; 3]; 3]) -> RatPoly {
    let vars2 = Vars::new(["x", "y"]);
    let x = RatPoly::var(&vars2, "x");
    let y = RatPoly::var(&vars2, "y");
    let one = RatPoly::one(&vars2);
    let images: Vec<RatPoly> = (0..3)
        .map(|i| {
            let mut acc = RatPoly::zero(&vars2);
            for (j, v) in [&x, &y, &one].iter().enumerate() {
                if !m[i][j].is_zero() {
                    acc = acc.add(&v.scale(&m[i][j]));
                }
            }
            acc
        })
        .collect();
    f.substitute(&images)
}

/// Candidate chart moves: identity first, then transforms mixing the line
/// at infinity.
fn chart_matrices() -> Vec<[[Rat; 3]; 3]> {
    let id = |i: usize, j: usize| if i == j { rat_i(1) } else { rat_i(0) };
    let mut out = vec![];
    let base: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let _ = base;
    out.push(std::array::from_fn(|i| std::array::from_fn(|j| id(i, j))));
    let mats: [[[i64; 3]; 3]; 7] = [
        [[1, 0, 0], [0, 1, 0], [1, 0, 1]],
        [[1, 0, 0], [0, 1, 0], [0, 1, 1]],
        [[1, 0, 0], [0, 1, 0], [1, 1, 1]],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
        [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[1, 0, 0], [0, 1, 0], [-1, 1, 1]],
        [[1, 0, 1], [0, 1, 1], [1, 1, 0]],
    ];
    for m in mats {
        out.push(std::array::from_fn(|i| std::array::from_fn(|j| rat_i(m[i][j]))));
    }
    out
}

const SHEARS: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 5, -5];

fn compose_shear(m: &[[Rat; 3]; 3], k: i64) -> [[Rat; 3]; 3] {
    // new x-variable enters as x + k y: multiply on the right by the shear
    let k = rat_i(k);
    std::array::from_fn(|i| {
        [m[i][0].clone(), m[i][1].clone() + &m[i][0] * &k, m[i][2].clone()]
    })
}

/// Degree form of a bivariate polynomial (its top-degree part), as a
/// univariate polynomial in the slope m (coefficient list of f_d(1, m)).
fn slope_poly(g: &RatPoly, d: u32) -> UPoly {
    let mut coeffs = vec![Rat::zero(); d as usize + 1];
    for (e, c) in g.terms() {
        if e[0] + e[1] == d {
            coeffs[e[1] as usize] = c.clone();
        }
    }
    UPoly::from_coeffs(coeffs)
}

fn is_squarefree_upoly(f: &UPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    f.gcd(&f.derivative()).degree().unwrap_or(0) == 0
}

impl Sweep {
    /// Builds a sweep for the ternary squarefree form `f`, searching charts
    /// and shears until the position is generic.
    pub fn build(f: &RatPoly) -> Result<Sweep, CurveError> {
        let d = f.total_degree().unwrap_or(0);
        if d == 0 || d > 5 {
            return Err(CurveError::BadDegree(d));
        }
        for (ci, base) in chart_matrices().into_iter().enumerate() {
            for k in SHEARS {
                let m = compose_shear(&base, k);
                match Sweep::try_build(f, m, ChartInfo { chart_index: ci, shear: k }, d) {
                    Ok(s) => return Ok(s),
                    Err(CurveError::ChartFailure) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
        Err(CurveError::ChartFailure)
    }

    fn try_build(
        f: &RatPoly,
        m: [[Rat; 3]; 3],
        chart: ChartInfo,
        d: u32,
    ) -> Result<Sweep, CurveError> {
        let g = to_chart(f, &m);
        // y-regular: coefficient of y^d is a nonzero constant
        let slope = slope_poly(&g, d);
        if slope.degree() != Some(d as usize) || !is_squarefree_upoly(&slope) {
            return Err(CurveError::ChartFailure);
        }
        // transversality at infinity: the degree form must be squarefree
        // including the root at infinity; deg condition above covers it.
        let gy = g.derivative(1);
        let disc_poly = subres::resultant(&g, &gy, 1).map_err(|_| CurveError::ChartFailure)?;
        if disc_poly.is_zero() {
            return Err(CurveError::ChartFailure);
        }
        let disc = UPoly::from_ratpoly(&disc_poly, 0);
        if !is_squarefree_upoly(&disc) {
            return Err(CurveError::ChartFailure);
        }
        let ey_poly = subres::resultant(&g, &gy, 0).map_err(|_| CurveError::ChartFailure)?;
        if ey_poly.is_zero() {
            return Err(CurveError::ChartFailure);
        }
        let ey = UPoly::from_ratpoly(&ey_poly, 1).squarefree_part();
        let mut criticals = isolate_real_roots(&disc.squarefree_part())
            .map_err(|e| CurveError::Internal(e.to_string()))?;
        // tighten critical boxes
        for b in &mut criticals {
            let w = b.width() / rat_i(1 << 16);
            b.refine_below(&w.max(crate::rat::rat(1, 1_000_000)));
        }
        // slab samples
        let mut samples = vec![];
        if criticals.is_empty() {
            samples.push(Rat::zero());
        } else {
            samples.push(criticals[0].lo().floor() - rat_i(1));
            for i in 1..criticals.len() {
                let a = criticals[i - 1].hi().clone();
                let b = criticals[i].lo().clone();
                debug_assert!(a < b || (criticals[i - 1].exact.is_some() && a <= b));
                samples.push((a + b) / rat_i(2));
            }
            samples.push(criticals.last().unwrap().hi().ceil() + rat_i(1));
        }
        // exact-critical guard: samples must not equal a critical value
        for (i, c) in criticals.iter().enumerate() {
            for s in &samples {
                if c.contains(s) {
                    return Err(CurveError::Internal(format!(
                        "sample hit critical {i}: report a chart bug"
                    )));
                }
            }
        }
        let fibers: Vec<Vec<RootBox>> = samples
            .iter()
            .map(|s| fiber_at(&g, s))
            .collect::<Result<_, _>>()?;
        // glue arcs
        let offsets: Vec<usize> = {
            let mut o = vec![0];
            for f in &fibers {
                o.push(o.last().unwrap() + f.len());
            }
            o
        };
        let total: usize = offsets[fibers.len()];
        let mut uf = UnionFind::new(total);
        let mut events = vec![];
        for i in 0..criticals.len() {
            let (left, right) = (i, i + 1);
            let n_l = fibers[left].len();
            let n_r = fibers[right].len();
            let ev = if n_l == n_r {
                for j in 0..n_l {
                    uf.union(offsets[left] + j, offsets[right] + j);
                }
                FoldEvent::Pass
            } else if n_r == n_l + 2 {
                let q = fold_rank(&g, &ey, &mut criticals[i], true)?;
                for j in 0..n_l {
                    let jr = if j < q { j } else { j + 2 };
                    uf.union(offsets[left] + j, offsets[right] + jr);
                }
                uf.union(offsets[right] + q, offsets[right] + q + 1);
                FoldEvent::Birth { q }
            } else if n_l == n_r + 2 {
                let q = fold_rank(&g, &ey, &mut criticals[i], false)?;
                for j in 0..n_r {
                    let jl = if j < q { j } else { j + 2 };
                    uf.union(offsets[left] + jl, offsets[right] + j);
                }
                uf.union(offsets[left] + q, offsets[left] + q + 1);
                FoldEvent::Death { q }
            } else {
                return Err(CurveError::Internal(format!(
                    "fiber count jumped by {} at critical {i}",
                    n_r as i64 - n_l as i64
                )));
            };
            events.push(ev);
        }
        // gluing through the line at infinity: real slopes ascending
        let slopes = isolate_real_roots(&slope.squarefree_part())
            .map_err(|e| CurveError::Internal(e.to_string()))?;
        let k_inf = slopes.len();
        let n_first = fibers.first().map_or(0, |f| f.len());
        let n_last = fibers.last().map_or(0, |f| f.len());
        if n_first != k_inf || n_last != k_inf {
            // ends unaccounted for: the chart is bad (tangency at infinity
            // was excluded, so this indicates a non-generic slope pattern)
            return Err(CurveError::ChartFailure);
        }
        let mut crossings_of_arc: Vec<usize> = vec![0; total];
        let last_off = offsets[fibers.len() - 1];
        for t in 0..k_inf {
            // right end with slope rank t meets left end with slope rank t;
            // left fiber ascending y corresponds to descending slope
            let left_rank = k_inf - 1 - t;
            uf.union(last_off + t, offsets[0] + left_rank);
            crossings_of_arc[last_off + t] += 1;
        }
        // components
        let mut comp_ids = std::collections::BTreeMap::new();
        let mut comp_of = vec![];
        for (si, f) in fibers.iter().enumerate() {
            let mut row = vec![];
            for j in 0..f.len() {
                let r = uf.find(offsets[si] + j);
                let n = comp_ids.len();
                let id = *comp_ids.entry(r).or_insert(n);
                row.push(id);
            }
            comp_of.push(row);
        }
        let n_components = comp_ids.len();
        let mut crossings = vec![0usize; n_components];
        for (arc, &c) in crossings_of_arc.iter().enumerate() {
            if c > 0 {
                // locate the slab/rank of this arc id
                let si = offsets.iter().position(|&o| o > arc).unwrap() - 1;
                let j = arc - offsets[si];
                crossings[comp_of[si][j]] += c;
            }
        }
        Ok(Sweep {
            g,
            degree: d,
            chart_matrix: m,
            chart,
            criticals,
            samples,
            fibers,
            comp_of,
            n_components,
            crossings,
            events,
        })
    }

    /// Component ids of the one-sided component (odd crossings). Exactly one
    /// for odd-degree curves.
    pub fn one_sided_component(&self) -> Option<usize> {
        let odd: Vec<usize> =
            (0..self.n_components).filter(|&c| self.crossings[c] % 2 == 1).collect();
        if odd.len() == 1 {
            Some(odd[0])
        } else {
            None
        }
    }

    /// Slab index containing the rational x (None if x collides with a
    /// critical box).
    pub fn slab_of(&self, x: &Rat) -> Option<usize> {
        let mut slab = 0usize;
        for c in &self.criticals {
            if c.contains(x) {
                return None;
            }
            if x > c.hi() {
                slab += 1;
            } else if x < c.lo() {
                break;
            } else {
                return None;
            }
        }
        Some(slab)
    }

    /// Fresh fiber at a non-critical rational x.
    pub fn fiber(&self, x: &Rat) -> Result<Vec<RootBox>, CurveError> {
        fiber_at(&self.g, x)
    }

    /// Component of the arc with the given fiber rank at x (x non-critical).
    pub fn component_at(&self, x: &Rat, rank: usize) -> Option<usize> {
        let slab = self.slab_of(x)?;
        self.comp_of.get(slab).and_then(|r| r.get(rank)).copied()
    }
}

pub(crate) fn fiber_at(g: &RatPoly, x: &Rat) -> Result<Vec<RootBox>, CurveError> {
    let s = g.specialize(0, x);
    if s.is_zero() {
        return Err(CurveError::Internal("fiber polynomial vanished".into()));
    }
    let u = UPoly::from_ratpoly(&s, 1);
    if u.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    isolate_real_roots(&u).map_err(|e| CurveError::Internal(e.to_string()))
}

/// Counts roots of a fiber strictly below a non-root rational.
pub(crate) fn count_below(fiber: &mut [RootBox], c: &Rat) -> usize {
    let mut n = 0;
    for b in fiber.iter_mut() {
        loop {
            if let Some(e) = &b.exact {
                if e < c {
                    n += 1;
                }
                break;
            }
            if b.hi() <= c {
                n += 1;
                break;
            }
            if b.lo() >= c {
                break;
            }
            b.refine_step();
        }
    }
    n
}

/// Counts fiber roots inside the open interval (c, d); all comparisons are
/// certified by refinement (no root equals c or d by precondition).
fn count_inside(fiber: &mut [RootBox], c: &Rat, d: &Rat) -> usize {
    let mut n = 0;
    for b in fiber.iter_mut() {
        loop {
            if let Some(e) = &b.exact {
                if e > c && e < d {
                    n += 1;
                }
                break;
            }
            if b.lo() >= c && b.hi() <= d {
                n += 1;
                break;
            }
            if b.hi() <= c || b.lo() >= d {
                break;
            }
            b.refine_step();
        }
    }
    n
}

/// Locates the fold rank at a birth/death critical via a certified window:
/// a y-interval (c, d) around the fold with no arc crossing its horizontal
/// boundaries over (a, b), zero fiber roots inside on one side and two on
/// the other. Returns the number of fiber roots strictly below the window.
fn fold_rank(
    g: &RatPoly,
    ey: &UPoly,
    crit: &mut RootBox,
    birth: bool,
) -> Result<usize, CurveError> {
    let mut candidates: Vec<RootBox> = isolate_real_roots(ey)
        .map_err(|e| CurveError::Internal(e.to_string()))?;
    let gy_zero_side = |x: &Rat, c: &Rat| -> bool {
        // true when g(x, c) = 0 (degenerate window boundary)
        g.eval(&[x.clone(), c.clone()]).is_zero()
    };
    for _round in 0..80 {
        // current sandwich points
        let (a, b) = match &crit.exact {
            Some(e) => {
                let w = crate::rat::rat(1, 1 << 20);
                (e.clone() - &w, e.clone() + &w)
            }
            None => (crit.lo().clone(), crit.hi().clone()),
        };
        let mut fa = fiber_at(g, &a)?;
        let mut fb = fiber_at(g, &b)?;
        let (small, big): (&mut Vec<RootBox>, &mut Vec<RootBox>) =
            if birth { (&mut fa, &mut fb) } else { (&mut fb, &mut fa) };
        if big.len() != small.len() + 2 {
            // sandwich too wide (extra folds of other criticals inside)
            refine_crit(crit);
            continue;
        }
        for cand in candidates.iter_mut() {
            for _ in 0..24 {
                let (c, d) = match &cand.exact {
                    Some(e) => {
                        let w = crate::rat::rat(1, 1 << 20);
                        (e.clone() - &w, e.clone() + &w)
                    }
                    None => (cand.lo().clone(), cand.hi().clone()),
                };
                if gy_zero_side(&a, &c)
                    || gy_zero_side(&a, &d)
                    || gy_zero_side(&b, &c)
                    || gy_zero_side(&b, &d)
                {
                    cand.refine_step();
                    continue;
                }
                // no arc may cross the horizontal window boundaries over (a,b)
                let cross_c = UPoly::from_ratpoly(&g.specialize(1, &c), 0)
                    .count_roots_between(&a, &b);
                let cross_d = UPoly::from_ratpoly(&g.specialize(1, &d), 0)
                    .count_roots_between(&a, &b);
                if cross_c != 0 || cross_d != 0 {
                    cand.refine_step();
                    continue;
                }
                let inside_small = count_inside(small, &c, &d);
                let inside_big = count_inside(big, &c, &d);
                if inside_small == 0 && inside_big == 2 {
                    let q = count_below(big, &c);
                    return Ok(q);
                }
                if inside_small == 0 && inside_big == 0 {
                    // nothing of this critical in the window: wrong candidate
                    break;
                }
                // window still contains passing arcs: shrink it
                cand.refine_step();
                continue;
            }
        }
        refine_crit(crit);
    }
    Err(CurveError::Internal("fold window certification exhausted its budget".into()))
}

fn refine_crit(crit: &mut RootBox) {
    for _ in 0..4 {
        crit.refine_step();
    }
}

/// Full topology of a smooth real plane quintic.
pub fn topology(f: &RatPoly, must_be_smooth: bool) -> Result<(CurveTopology, Sweep), CurveError> {
    let d = f.total_degree().unwrap_or(0);
    if d != 5 {
        return Err(CurveError::BadDegree(d));
    }
    if !subres::is_squarefree(f) {
        return Err(CurveError::SingularInput);
    }
    if must_be_smooth {
        match super::singular_locus(f)? {
            super::SingularLocus::Smooth => {}
            super::SingularLocus::SingularPoints(_) => return Err(CurveError::SingularInput),
        }
    }
    let sweep = Sweep::build(f)?;
    assemble_topology(sweep)
}

pub(crate) fn assemble_topology(sweep: Sweep) -> Result<(CurveTopology, Sweep), CurveError> {
    let j = sweep
        .one_sided_component()
        .ok_or_else(|| CurveError::Internal("no unique one-sided component".into()))?;
    // every even component must avoid the line at infinity; otherwise the
    // chart is unusable for region bookkeeping
    for c in 0..sweep.n_components {
        if c != j && sweep.crossings[c] > 0 {
            return Err(CurveError::ChartFailure);
        }
    }
    let mut oval_comps: Vec<usize> = (0..sweep.n_components).filter(|&c| c != j).collect();
    oval_comps.sort_unstable();
    // witnesses
    let mut witnesses: Vec<(Rat, Rat)> = vec![];
    for &c in &oval_comps {
        witnesses.push(oval_witness(&sweep, c)?);
    }
    // nesting: parent = the smallest oval strictly containing this one
    let k = oval_comps.len();
    let mut inside = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a != b {
                inside[a][b] =
                    super::point_in_component(&sweep, &witnesses[a], oval_comps[b])?;
            }
        }
    }
    let mut parents: Vec<Option<usize>> = vec![None; k];
    for a in 0..k {
        // ovals containing a, choose the innermost (contained in all others)
        let containers: Vec<usize> = (0..k).filter(|&b| inside[a][b]).collect();
        if containers.len() == 1 {
            parents[a] = Some(containers[0]);
        } else if containers.len() > 1 {
            let inner = containers
                .iter()
                .copied()
                .find(|&b| containers.iter().all(|&c| c == b || inside[b][c]));
            parents[a] = inner;
        }
    }
    let nested_pairs = parents.iter().filter(|p| p.is_some()).count();
    let class_code = match (k, nested_pairs) {
        (0, 0) => ClassCode::J,
        (1, 0) => ClassCode::J1,
        (2, 0) => ClassCode::J2,
        (2, 1) => ClassCode::JNest,
        (3, 0) => ClassCode::J3,
        (4, 0) => super::convexity_class(&sweep, &oval_comps, &witnesses, j)?,
        (5, 0) => ClassCode::J5,
        (6, 0) => ClassCode::J6,
        _ => {
            return Err(CurveError::Internal(format!(
                "unexpected oval structure: {k} ovals, {nested_pairs} nested"
            )))
        }
    };
    let jw = super::near_component_point(&sweep, j)?;
    let ovals: Vec<OvalInfo> = witnesses
        .iter()
        .zip(&parents)
        .map(|((x, y), p)| OvalInfo {
            witness: (x.to_string(), y.to_string()),
            parent: *p,
        })
        .collect();
    let topo = CurveTopology {
        class_code,
        ovals,
        j_witness: (jw.0.to_string(), jw.1.to_string()),
        chart: sweep.chart.clone(),
        oval_count: k,
    };
    Ok((topo, sweep))
}

/// Interior witness of an oval: a rational point just above its lowest arc
/// in some slab.
fn oval_witness(sweep: &Sweep, comp: usize) -> Result<(Rat, Rat), CurveError> {
    for (si, row) in sweep.comp_of.iter().enumerate() {
        let ranks: Vec<usize> =
            (0..row.len()).filter(|&r| row[r] == comp).collect();
        if ranks.len() < 2 {
            continue;
        }
        let x = sweep.samples[si].clone();
        let mut fiber = sweep.fibers[si].clone();
        let r0 = ranks[0];
        // point strictly between fiber roots r0 and r0+1
        loop {
            let hi0 = fiber[r0].hi().clone();
            let lo1 = fiber[r0 + 1].lo().clone();
            if hi0 < lo1 {
                let y = (hi0 + lo1) / rat_i(2);
                return Ok((x, y));
            }
            fiber[r0].refine_step();
            fiber[r0 + 1].refine_step();
        }
    }
    Err(CurveError::Internal("oval with fewer than two arcs in every slab".into()))
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
    fn fermat_quintic_is_class_j() {
        let f = p("x^5 + y^5 + z^5");
        let (topo, sweep) = topology(&f, true).unwrap();
        assert_eq!(topo.class_code, ClassCode::J);
        assert_eq!(topo.oval_count, 0);
        assert_eq!(sweep.n_components, 1);
    }

    #[test]
    fn circle_times_cubic_rejected_as_singular() {
        // (x^2+y^2-z^2)(x^3+y^3+z^3) has intersection nodes
        let f = p("x^2 + y^2 - z^2").mul(&p("x^3 + y^3 + z^3"));
        assert_eq!(topology(&f, true).unwrap_err(), CurveError::SingularInput);
    }

    #[test]
    fn quintic_with_one_oval() {
        // J+1 instance: one small oval around a pencil base point
        // f = L (G1^2 + G2^2) - eps with one base point on L>0 side
        // G1 = y - x^2-ish... build exactly as conics through 4 points but
        // here directly: L = z - 10x? Use the generator from the oracle
        // tests; here a hand instance:
        // L = x, G1 = x^2 + y^2 - z^2-ish... simplest validated case:
        // f = x*((x-z)^2+y^2)*(x+z)... that is degree 4; make quintic:
        let l = p("x");
        let q1 = p("x - z").pow(2).add(&p("y").pow(2));
        let q2 = p("x + 2*z").pow(2).add(&p("y^2 + y^2"));
        let eps = RatPoly::constant(&vars3(), crate::rat::rat(1, 1000));
        let f = l.mul(&q1).mul(&q2).sub(&eps.mul(&p("z^5")));
        let (topo, _) = topology(&f, true).unwrap();
        // near z = 1: x ((x-1)^2+y^2)((x+2)^2+2y^2) = eps: an oval around
        // (1,0) where x > 0, J near the line x = 0, nothing at (-2,0).
        assert_eq!(topo.class_code, ClassCode::J1);
    }
}
