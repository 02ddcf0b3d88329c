//! GF(2) homology layer: symplectic bit-vector spaces with a conjugation
//! involution, the kernel/image subgroups of 1+c, the characteristic
//! element, quadratic functions, Arf invariants, difference classes and the
//! two-step quotient isometry.
//!
//! Vectors are bitmasks in a `u16` (dimension ≤ 16; quintic homology needs
//! 12). All linear algebra is exact GF(2) elimination on machine words.

use crate::atlas::{quintic_class, Klein, QuinticCode};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vec2 = u16;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("standard model failed verification: {0}")]
    ModelVerificationFailed(String),
    #[error("class is not in the kernel of 1+c")]
    NotInK,
    #[error("difference class must be nonzero")]
    ZeroClass,
    #[error("function is not quadratic with respect to the form")]
    NotQuadratic,
}

fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

/// A GF(2) vector space with symplectic form, involution and a reference
/// real quadratic function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadSpace {
    pub dim: usize,
    /// gram[i] = bitmask of j with e_i · e_j = 1 (alternating, zero diagonal).
    pub gram: Vec<Vec2>,
    /// conj[j] = image of basis vector e_j.
    pub conj: Vec<Vec2>,
    /// Bitmask of basis vectors with q0 = 1.
    pub q0_basis: Vec2,
}

impl QuadSpace {
    pub fn form(&self, x: Vec2, y: Vec2) -> u8 {
        let mut acc = 0u8;
        let mut m = x;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            acc ^= parity((self.gram[i] & y) as u32);
        }
        acc
    }

    pub fn apply(map: &[Vec2], x: Vec2) -> Vec2 {
        let mut acc = 0;
        let mut m = x;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            acc ^= map[j];
        }
        acc
    }

    pub fn conj_apply(&self, x: Vec2) -> Vec2 {
        Self::apply(&self.conj, x)
    }

    /// The quadratic extension of the basis values:
    /// q(x) = Σ q0(e_i) + Σ_{i<j} e_i·e_j over bits of x.
    pub fn q0(&self, x: Vec2) -> u8 {
        self.q_of(self.q0_basis, x)
    }

    /// Quadratic function with given basis values, polar form = gram.
    pub fn q_of(&self, basis_values: Vec2, x: Vec2) -> u8 {
        let mut v = parity((basis_values & x) as u32);
        let mut m = x;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            v ^= parity((self.gram[i] & m) as u32);
        }
        v
    }

    /// phi_c = 1 + c as a basis-image table.
    pub fn one_plus_c(&self) -> Vec<Vec2> {
        (0..self.dim).map(|j| (1 << j) ^ self.conj[j]).collect()
    }

    /// Structural validity: involution, form-compatibility, nondegeneracy,
    /// realness of q0.
    pub fn check_structure(&self) -> Result<(), Gf2Error> {
        let n = self.dim;
        for i in 0..n {
            if self.gram[i] & (1 << i) != 0 {
                return Err(Gf2Error::ModelVerificationFailed("nonzero diagonal".into()));
            }
            for j in 0..n {
                let a = (self.gram[i] >> j) & 1;
                let b = (self.gram[j] >> i) & 1;
                if a != b {
                    return Err(Gf2Error::ModelVerificationFailed("form not symmetric".into()));
                }
            }
        }
        if rank(&self.gram.iter().map(|&r| r).collect::<Vec<_>>()) != n {
            return Err(Gf2Error::ModelVerificationFailed("degenerate form".into()));
        }
        for j in 0..n {
            if self.conj_apply(self.conj[j]) != (1 << j) {
                return Err(Gf2Error::ModelVerificationFailed("conj is not an involution".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.form(self.conj[i], self.conj[j]);
                let rhs = ((self.gram[i] >> j) & 1) as u8;
                if lhs != rhs {
                    return Err(Gf2Error::ModelVerificationFailed(
                        "conj does not preserve the form".into(),
                    ));
                }
            }
        }
        // realness of q0 on basis and pairwise sums
        for i in 0..n {
            if self.q0(self.conj[i]) != self.q0(1 << i) {
                return Err(Gf2Error::ModelVerificationFailed("q0 not real on basis".into()));
            }
            for j in i + 1..n {
                let x = (1u16 << i) | (1 << j);
                if self.q0(self.conj_apply(x)) != self.q0(x) {
                    return Err(Gf2Error::ModelVerificationFailed(
                        "q0 not real on pairwise sums".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Rank of a list of GF(2) vectors.
pub fn rank(vecs: &[Vec2]) -> usize {
    let mut basis: Vec<Vec2> = vec![];
    for &v in vecs {
        let mut v = v;
        for &b in &basis {
            let pivot = 1 << (15 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// Reduced basis (row echelon, distinct pivots) of the span.
pub fn echelon_basis(vecs: &[Vec2]) -> Vec<Vec2> {
    let mut basis: Vec<Vec2> = vec![];
    for &v in vecs {
        let mut v = v;
        for &b in &basis {
            let pivot = 1 << (15 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_by_key(|b| std::cmp::Reverse(*b));
        }
    }
    basis
}

pub fn in_span(basis: &[Vec2], v: Vec2) -> bool {
    let mut v = v;
    for &b in basis {
        let pivot = 1 << (15 - b.leading_zeros());
        if v & pivot != 0 {
            v ^= b;
        }
    }
    v == 0
}

/// Kernel basis of a linear map given by basis images.
pub fn kernel_basis(map: &[Vec2], dim: usize) -> Vec<Vec2> {
    // track (image ; preimage) pairs through elimination
    let mut rows: Vec<(Vec2, Vec2)> = (0..dim).map(|j| (map[j], 1u16 << j)).collect();
    let mut ker = vec![];
    let mut basis: Vec<(Vec2, Vec2)> = vec![];
    for (mut img, mut pre) in rows.drain(..) {
        for &(bi, bp) in &basis {
            let pivot = 1 << (15 - bi.leading_zeros());
            if img & pivot != 0 {
                img ^= bi;
                pre ^= bp;
            }
        }
        if img == 0 {
            ker.push(pre);
        } else {
            basis.push((img, pre));
        }
    }
    ker
}

/// Solves M x = b for the linear map with basis images `map`; returns any
/// solution.
pub fn solve(map: &[Vec2], dim: usize, b: Vec2) -> Option<Vec2> {
    let mut basis: Vec<(Vec2, Vec2)> = vec![];
    for j in 0..dim {
        let mut img = map[j];
        let mut pre = 1u16 << j;
        for &(bi, bp) in &basis {
            let pivot = 1 << (15 - bi.leading_zeros());
            if img & pivot != 0 {
                img ^= bi;
                pre ^= bp;
            }
        }
        if img != 0 {
            basis.push((img, pre));
        }
    }
    let mut v = b;
    let mut pre = 0u16;
    for &(bi, bp) in &basis {
        let pivot = 1 << (15 - bi.leading_zeros());
        if v & pivot != 0 {
            v ^= bi;
            pre ^= bp;
        }
    }
    if v == 0 {
        Some(pre)
    } else {
        None
    }
}

/// Enumerates all vectors in the span of a basis (2^k elements).
pub fn span_elements(basis: &[Vec2]) -> Vec<Vec2> {
    let k = basis.len();
    (0..(1u32 << k))
        .map(|mask| {
            let mut v = 0u16;
            for (i, &b) in basis.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v ^= b;
                }
            }
            v
        })
        .collect()
}

/// Subgroup data attached to the involution: K = ker(1+c), I = im(1+c),
/// the characteristic element w_c, the discrepancy d = rank I, and the
/// partition I = I0 ∪ I1 by the value of x·cx on preimages.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub k_basis: Vec<Vec2>,
    pub i_basis: Vec<Vec2>,
    pub i0_basis: Vec<Vec2>,
    /// Some representative of I1 when it is nonempty.
    pub i1_rep: Option<Vec2>,
    pub w_c: Vec2,
    pub d: usize,
}

impl SubgroupLattice {
    pub fn in_k(&self, v: Vec2) -> bool {
        in_span(&self.k_basis, v)
    }

    pub fn in_i(&self, v: Vec2) -> bool {
        in_span(&self.i_basis, v)
    }

    pub fn in_i0(&self, v: Vec2) -> bool {
        in_span(&self.i0_basis, v)
    }
}

pub fn subgroup_lattice(v: &QuadSpace) -> SubgroupLattice {
    let phi = v.one_plus_c();
    let k_basis = echelon_basis(&kernel_basis(&phi, v.dim));
    let images: Vec<Vec2> = (0..v.dim).map(|j| phi[j]).collect();
    let i_basis = echelon_basis(&images);
    let d = i_basis.len();
    // w_c: unique solution of x·cx = x·w for all x (the map x -> x·cx is
    // linear because c preserves the form)
    let ell: Vec2 = {
        let mut bits = 0u16;
        for i in 0..v.dim {
            if v.form(1 << i, v.conj[i as usize]) == 1 {
                bits |= 1 << i;
            }
        }
        bits
    };
    // need w with form(e_i, w) = ell_i: gram * w = ell
    let gram_map: Vec<Vec2> = (0..v.dim)
        .map(|j| {
            let mut col = 0u16;
            for i in 0..v.dim {
                if (v.gram[i] >> j) & 1 == 1 {
                    col |= 1 << i;
                }
            }
            col
        })
        .collect();
    let w_c = solve(&gram_map, v.dim, ell).expect("nondegenerate form always solves w_c");
    // I0 = phi_c(V0) with V0 = { x : x·cx = 0 } = kernel of the functional
    // x -> form(x, w_c)
    let v0_map: Vec<Vec2> = (0..v.dim)
        .map(|j| {
            if v.form(1 << j, w_c) == 1 {
                1u16
            } else {
                0u16
            }
        })
        .collect();
    let v0_basis = kernel_basis(&v0_map, v.dim);
    let i0_images: Vec<Vec2> = v0_basis.iter().map(|&x| QuadSpace::apply(&phi, x)).collect();
    let i0_basis = echelon_basis(&i0_images);
    // I1 representative: any image of x with x·cx = 1
    let mut i1_rep = None;
    for j in 0..v.dim {
        if v.form(1 << j, v.conj[j]) == 1 {
            i1_rep = Some(phi[j]);
            break;
        }
    }
    SubgroupLattice { k_basis, i_basis, i0_basis, i1_rep, w_c, d }
}

/// Arf invariant of a quadratic function given by its basis values, via
/// symplectic-basis reduction Σ q(a_i) q(b_i).
pub fn arf(v: &QuadSpace, basis_values: Vec2) -> u8 {
    // build a symplectic basis of the whole space
    let mut remaining: Vec<Vec2> = (0..v.dim).map(|j| 1u16 << j).collect();
    let mut pairs: Vec<(Vec2, Vec2)> = vec![];
    while !remaining.is_empty() {
        // pick u = first remaining, find w with u·w = 1
        let u = remaining[0];
        let w = remaining
            .iter()
            .copied()
            .find(|&w| v.form(u, w) == 1)
            .expect("nondegenerate form yields a dual vector");
        // reduce the rest against the hyperbolic pair (u, w)
        let mut next = vec![];
        for &x in &remaining {
            if x == u || x == w {
                continue;
            }
            let mut y = x;
            if v.form(y, w) == 1 {
                y ^= u;
            }
            if v.form(u, y) == 1 {
                y ^= w;
            }
            if y != 0 {
                next.push(y);
            }
        }
        pairs.push((u, w));
        remaining = next;
    }
    let mut a = 0u8;
    for (x, y) in pairs {
        a ^= v.q_of(basis_values, x) & v.q_of(basis_values, y);
    }
    a
}

/// Brute-force Arf: q has Arf 0 iff it takes value 0 more often than 1.
pub fn arf_bruteforce(v: &QuadSpace, basis_values: Vec2) -> u8 {
    let mut zeros = 0usize;
    for x in 0..(1u32 << v.dim) {
        if v.q_of(basis_values, x as Vec2) == 0 {
            zeros += 1;
        }
    }
    if zeros > (1 << (v.dim - 1)) {
        0
    } else {
        1
    }
}

/// Builds the 12-dimensional standard model of the involution for a quintic
/// deformation class, then verifies rank(1+c) = d, w_c = 0 iff Klein type I,
/// and Arf(q0) = 1.
///
/// Blocks on symplectic pairs (a_k, b_k): identity pairs; transvection pairs
/// c(a)=a, c(b)=a+b (type II, one per unit of discrepancy); and for type I
/// paired 4-dimensional blocks c(a1)=a1, c(b1)=b1+a2, c(a2)=a2, c(b2)=b2+a1.
/// q0 is 1 on the forced generators, and the lexicographically least
/// completion with Arf = 1 is chosen.
pub fn standard_model(class: QuinticCode) -> Result<QuadSpace, Gf2Error> {
    let info = quintic_class(class);
    let d = info.d as usize;
    let dim = 12usize;
    let a = |k: usize| 2 * k; // index of a_k
    let b = |k: usize| 2 * k + 1;
    let mut gram = vec![0u16; dim];
    for k in 0..6 {
        gram[a(k)] |= 1 << b(k);
        gram[b(k)] |= 1 << a(k);
    }
    let mut conj: Vec<Vec2> = (0..dim).map(|j| 1u16 << j).collect();
    let mut forced_one: Vec2 = 0; // q0 = 1 forced by realness
    let mut forced_zero: Vec2 = 0;
    let mut arf_slots: Vec<usize> = vec![]; // free b-indices whose a has q0=1
    match info.klein {
        Klein::II => {
            // pairs 0..d-1 transvection, rest identity
            for k in 0..d {
                conj[b(k)] = (1 << b(k)) | (1 << a(k));
                forced_one |= 1 << a(k); // realness forces q0(a)=1
                arf_slots.push(b(k));
            }
            for k in d..6 {
                forced_one |= 1 << a(k); // oval-like generator
                arf_slots.push(b(k));
            }
        }
        Klein::I => {
            let t = d / 2;
            debug_assert_eq!(2 * t, d);
            for blk in 0..t {
                let (k1, k2) = (2 * blk, 2 * blk + 1);
                conj[b(k1)] = (1 << b(k1)) | (1 << a(k2));
                conj[b(k2)] = (1 << b(k2)) | (1 << a(k1));
                forced_zero |= (1 << a(k1)) | (1 << a(k2)); // realness forces 0
            }
            for k in d..6 {
                forced_one |= 1 << a(k);
                arf_slots.push(b(k));
            }
        }
    }
    // q0 basis values: forced ones, all free slots 0, then fix Arf = 1 by
    // flipping the last slot that enters the Arf sum (lexicographically
    // least valid assignment).
    let mut q0 = forced_one;
    let _ = forced_zero;
    let space = QuadSpace { dim, gram: gram.clone(), conj: conj.clone(), q0_basis: q0 };
    let mut current = arf(&space, q0);
    if current != 1 {
        let slot = *arf_slots
            .last()
            .ok_or_else(|| Gf2Error::ModelVerificationFailed("no free Arf slot".into()))?;
        q0 |= 1 << slot;
        current = arf(&QuadSpace { dim, gram: gram.clone(), conj: conj.clone(), q0_basis: q0 }, q0);
    }
    if current != 1 {
        return Err(Gf2Error::ModelVerificationFailed("could not reach Arf = 1".into()));
    }
    let space = QuadSpace { dim, gram, conj, q0_basis: q0 };
    verify_model(&space, class)?;
    Ok(space)
}

/// Post-construction checks demanded of every standard model.
pub fn verify_model(v: &QuadSpace, class: QuinticCode) -> Result<(), Gf2Error> {
    v.check_structure()?;
    let info = quintic_class(class);
    let lat = subgroup_lattice(v);
    if lat.d != info.d as usize {
        return Err(Gf2Error::ModelVerificationFailed(format!(
            "rank(1+c) = {} but class {} has discrepancy {}",
            lat.d, class, info.d
        )));
    }
    let wc_zero = lat.w_c == 0;
    if wc_zero != (info.klein == Klein::I) {
        return Err(Gf2Error::ModelVerificationFailed(format!(
            "w_c {} zero but class {} has Klein type {}",
            if wc_zero { "is" } else { "is not" },
            class,
            info.klein
        )));
    }
    if arf(v, v.q0_basis) != 1 {
        return Err(Gf2Error::ModelVerificationFailed("Arf(q0) must be 1 for quintics".into()));
    }
    Ok(())
}

/// Quotient h^⊥ / h for h ∈ K \ {0}: induced form, involution, and q0 when
/// q0(h) = 0. Returns the smaller space plus its discrepancy d'.
pub fn quotient_by(v: &QuadSpace, h: Vec2) -> Result<(QuadSpace, usize), Gf2Error> {
    if h == 0 {
        return Err(Gf2Error::ZeroClass);
    }
    if v.conj_apply(h) != h {
        return Err(Gf2Error::NotInK);
    }
    // h^⊥: kernel of x -> form(x, h)
    let perp_map: Vec<Vec2> =
        (0..v.dim).map(|j| if v.form(1 << j, h) == 1 { 1u16 } else { 0u16 }).collect();
    let perp = echelon_basis(&kernel_basis(&perp_map, v.dim));
    debug_assert_eq!(perp.len(), v.dim - 1);
    debug_assert!(in_span(&perp, h));
    // choose a complement of h inside h^⊥: reduce h against the basis and
    // drop one vector carrying its pivot
    let mut reps: Vec<Vec2> = vec![];
    {
        // echelon basis of perp together with h first ensures h is a pivot row
        let mut with_h = vec![h];
        with_h.extend(perp.iter().copied());
        let ech = echelon_basis(&with_h);
        // h is in the span; remove the row whose pivot matches h's top bit
        // after reduction. Simpler: take all echelon rows that are not needed
        // to express h... we just drop one row r such that the span of the
        // rest together with h is still perp.
        for (i, _) in ech.iter().enumerate() {
            let mut test: Vec<Vec2> = ech.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &r)| r).collect();
            test.push(h);
            let full = echelon_basis(&test);
            if full.len() == ech.len() && ech.iter().all(|&r| in_span(&full, r)) {
                reps = ech.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &r)| r).collect();
                break;
            }
        }
    }
    assert_eq!(reps.len(), v.dim - 2, "complement construction failed");
    let n2 = reps.len();
    // coordinates: new basis f_i = reps[i] (mod h)
    let mut gram2 = vec![0u16; n2];
    for i in 0..n2 {
        for j in 0..n2 {
            if v.form(reps[i], reps[j]) == 1 {
                gram2[i] |= 1 << j;
            }
        }
    }
    // conj': express c(reps[j]) in the basis reps ∪ {h}
    let mut basis_with_h = reps.clone();
    basis_with_h.push(h);
    let coords = |x: Vec2| -> Vec2 {
        // solve sum over chosen reps (+ maybe h) = x
        let map: Vec<Vec2> = basis_with_h.clone();
        let sol = solve_coords(&map, x).expect("vector lies in h-perp");
        // drop the h coordinate
        sol & !(1u16 << n2)
    };
    let conj2: Vec<Vec2> = (0..n2).map(|j| coords(v.conj_apply(reps[j]))).collect();
    // induced q0 only when q0(h) = 0; otherwise keep the basis values of the
    // representatives but mark nothing special (descent is still evaluated on
    // representatives; callers that need a genuine quadratic descent must
    // have q0(h) = 0, which holds in every use below).
    let mut q0_2 = 0u16;
    for (i, &r) in reps.iter().enumerate() {
        if v.q0(r) == 1 {
            q0_2 |= 1 << i;
        }
    }
    let out = QuadSpace { dim: n2, gram: gram2, conj: conj2, q0_basis: q0_2 };
    let phi2 = out.one_plus_c();
    let dprime = rank(&phi2);
    Ok((out, dprime))
}

/// Solves for coordinates of x in the given spanning list (bit i of the
/// result = coefficient of list[i]).
fn solve_coords(list: &[Vec2], x: Vec2) -> Option<Vec2> {
    let mut basis: Vec<(Vec2, Vec2)> = vec![];
    for (i, &v) in list.iter().enumerate() {
        let mut img = v;
        let mut pre = 1u16 << i;
        for &(bi, bp) in &basis {
            let pivot = 1 << (15 - bi.leading_zeros());
            if img & pivot != 0 {
                img ^= bi;
                pre ^= bp;
            }
        }
        if img != 0 {
            basis.push((img, pre));
        }
    }
    let mut v = x;
    let mut pre = 0u16;
    for &(bi, bp) in &basis {
        let pivot = 1 << (15 - bi.leading_zeros());
        if v & pivot != 0 {
            v ^= bi;
            pre ^= bp;
        }
    }
    if v == 0 {
        Some(pre)
    } else {
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffMode {
    Perfect,
    Skew,
}

/// Difference classes available in each mode: `Perfect` returns K0 \ I,
/// `Skew` returns I0* = (K0 ∩ I) \ {0} split into (h = w_c, h ≠ w_c).
#[derive(Clone, Debug)]
pub struct DifferenceClasses {
    pub classes: Vec<Vec2>,
    /// Skew mode only: classes equal to w_c (admissible mixed).
    pub mixed: Vec<Vec2>,
    /// Skew mode only: classes different from w_c (type-preserving).
    pub type_preserving: Vec<Vec2>,
}

pub fn admissible_difference_classes(v: &QuadSpace, mode: DiffMode) -> DifferenceClasses {
    let lat = subgroup_lattice(v);
    let k_all = span_elements(&lat.k_basis);
    match mode {
        DiffMode::Perfect => {
            let classes: Vec<Vec2> = k_all
                .into_iter()
                .filter(|&h| h != 0 && v.q0(h) == 0 && !lat.in_i(h))
                .collect();
            DifferenceClasses { classes, mixed: vec![], type_preserving: vec![] }
        }
        DiffMode::Skew => {
            let classes: Vec<Vec2> = k_all
                .into_iter()
                .filter(|&h| h != 0 && v.q0(h) == 0 && lat.in_i(h))
                .collect();
            let mixed = classes.iter().copied().filter(|&h| h == lat.w_c).collect();
            let type_preserving = classes.iter().copied().filter(|&h| h != lat.w_c).collect();
            DifferenceClasses { classes, mixed, type_preserving }
        }
    }
}

/// A random symplectic transvection x -> x + (x·v) v.
fn transvection(v: &QuadSpace, t: Vec2) -> Vec<Vec2> {
    (0..v.dim)
        .map(|j| {
            let mut img = 1u16 << j;
            if v.form(1 << j, t) == 1 {
                img ^= t;
            }
            img
        })
        .collect()
}

/// Conjugates the involution of a model by a random symplectic map built
/// from transvections; the result is again a symplectic involution with the
/// same invariants.
pub fn fuzz_involution<R: Rng>(v: &QuadSpace, rng: &mut R) -> QuadSpace {
    let mut ts: Vec<Vec2> = vec![];
    for _ in 0..24 {
        let t = (rng.gen::<u16>()) & ((1 << v.dim) - 1);
        if t != 0 {
            ts.push(t);
        }
    }
    // T = product of transvections; c' = T c T^{-1}, T^{-1} = reverse product
    let apply_t = |x: Vec2, v: &QuadSpace| {
        let mut y = x;
        for &t in &ts {
            let m = transvection(v, t);
            y = QuadSpace::apply(&m, y);
        }
        y
    };
    let apply_t_inv = |x: Vec2, v: &QuadSpace| {
        let mut y = x;
        for &t in ts.iter().rev() {
            let m = transvection(v, t);
            y = QuadSpace::apply(&m, y);
        }
        y
    };
    let conj2: Vec<Vec2> =
        (0..v.dim).map(|j| apply_t(v.conj_apply(apply_t_inv(1 << j, v)), v)).collect();
    // transport q0 through T as well: q0'(x) = q0(T^{-1} x)
    let mut q0_2 = 0u16;
    for j in 0..v.dim {
        if v.q0(apply_t_inv(1 << j, v)) == 1 {
            q0_2 |= 1 << j;
        }
    }
    QuadSpace { dim: v.dim, gram: v.gram.clone(), conj: conj2, q0_basis: q0_2 }
}

/// Model dump: basis labels plus hex-packed rows, for the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDump {
    pub class: String,
    pub labels: Vec<String>,
    pub gram_hex: Vec<String>,
    pub conj_hex: Vec<String>,
    pub q0_hex: String,
}

pub fn dump_model(class: QuinticCode, v: &QuadSpace) -> ModelDump {
    let labels = (0..6).flat_map(|k| [format!("a{}", k + 1), format!("b{}", k + 1)]).collect();
    ModelDump {
        class: class.to_string(),
        labels,
        gram_hex: v.gram.iter().map(|r| format!("{r:03x}")).collect(),
        conj_hex: v.conj.iter().map(|r| format!("{r:03x}")).collect(),
        q0_hex: format!("{:03x}", v.q0_basis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::QUINTIC_CODES;

    #[test]
    fn models_verify() {
        for &code in &QUINTIC_CODES {
            let m = standard_model(code).unwrap();
            assert_eq!(m.dim, 12);
        }
    }

    #[test]
    fn j6_model_is_identity() {
        let m = standard_model(QuinticCode::J6).unwrap();
        for j in 0..12 {
            assert_eq!(m.conj[j], 1 << j);
        }
        let lat = subgroup_lattice(&m);
        assert_eq!(lat.w_c, 0);
        assert_eq!(lat.d, 0);
    }

    #[test]
    fn j_model_subgroups() {
        let m = standard_model(QuinticCode::J).unwrap();
        let lat = subgroup_lattice(&m);
        assert_eq!(lat.d, 6);
        assert_eq!(lat.k_basis.len(), 6);
        assert_ne!(lat.w_c, 0);
        // K and I mutual annihilators with I ⊆ K forces I = K here
        for &i in &lat.i_basis {
            assert!(lat.in_k(i));
        }
        assert_eq!(lat.i_basis.len(), 6);
        // w_c ∈ I0 since d = 6 is even
        assert!(lat.in_i0(lat.w_c));
    }

    #[test]
    fn jnest_model_rank_and_type() {
        let m = standard_model(QuinticCode::JNest).unwrap();
        let lat = subgroup_lattice(&m);
        assert_eq!(lat.d, 4);
        assert_eq!(lat.w_c, 0);
    }

    #[test]
    fn arf_facts() {
        let m = standard_model(QuinticCode::J3).unwrap();
        // q = 0 on a symplectic basis has Arf 0
        assert_eq!(arf(&m, 0), 0);
        assert_eq!(arf_bruteforce(&m, 0), 0);
        // q0 of any standard model: Arf 1, and matches brute force
        assert_eq!(arf(&m, m.q0_basis), 1);
        assert_eq!(arf_bruteforce(&m, m.q0_basis), 1);
    }

    #[test]
    fn arf_difference_identity_sample() {
        let m = standard_model(QuinticCode::J2).unwrap();
        for h in [1u16, 5, 37, 1023, 4095] {
            // (q0 + h*)(e_i) = q0(e_i) + h·e_i
            let mut bv = m.q0_basis;
            for i in 0..m.dim {
                if m.form(h, 1 << i) == 1 {
                    bv ^= 1 << i;
                }
            }
            assert_eq!(arf(&m, bv), m.q0(h) ^ 1);
        }
    }

    #[test]
    fn quotient_rank_laws() {
        let m = standard_model(QuinticCode::J).unwrap();
        let lat = subgroup_lattice(&m);
        // h ∈ I0 \ {0}: d' = d - 2
        let h = lat
            .i0_basis
            .iter()
            .copied()
            .find(|&h| h != 0)
            .expect("I0 nonempty for class J");
        let (_, dprime) = quotient_by(&m, h).unwrap();
        assert_eq!(dprime, 4);
        // c = id: any nonzero h gives d = d' = 0
        let id = standard_model(QuinticCode::J6).unwrap();
        let (_, d0) = quotient_by(&id, 0b11).unwrap();
        assert_eq!(d0, 0);
        // h ∈ K \ I: d' = d (J2 model has K strictly larger than I)
        let m2 = standard_model(QuinticCode::J2).unwrap();
        let lat2 = subgroup_lattice(&m2);
        let h2 = span_elements(&lat2.k_basis)
            .into_iter()
            .find(|&h| h != 0 && !lat2.in_i(h))
            .unwrap();
        let (_, d2) = quotient_by(&m2, h2).unwrap();
        assert_eq!(d2, lat2.d);
        // errors
        assert_eq!(quotient_by(&m, 0).unwrap_err(), Gf2Error::ZeroClass);
    }

    #[test]
    fn difference_class_sets() {
        // J+6: skew set empty (d = 0)
        let m6 = standard_model(QuinticCode::J6).unwrap();
        assert!(admissible_difference_classes(&m6, DiffMode::Skew).classes.is_empty());
        // J: both w_c and another class in I0*
        let mj = standard_model(QuinticCode::J).unwrap();
        let dc = admissible_difference_classes(&mj, DiffMode::Skew);
        assert_eq!(dc.mixed.len(), 1);
        assert!(!dc.type_preserving.is_empty());
        // J+5: K0 \ I nonempty
        let m5 = standard_model(QuinticCode::J5).unwrap();
        assert!(!admissible_difference_classes(&m5, DiffMode::Perfect).classes.is_empty());
    }

    #[test]
    fn fuzzed_involutions_keep_invariants() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &code in &QUINTIC_CODES {
            let m = standard_model(code).unwrap();
            for _ in 0..5 {
                let f = fuzz_involution(&m, &mut rng);
                f.check_structure().unwrap();
                let lat = subgroup_lattice(&f);
                assert_eq!(lat.d, quintic_class(code).d as usize);
                assert_eq!(lat.w_c == 0, quintic_class(code).klein == Klein::I);
            }
        }
    }
}
