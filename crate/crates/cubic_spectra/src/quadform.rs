//! Exact symmetric matrices over ℚ: signature, rank, Gram matrices of
//! quadratic forms. No floating point: signatures come from symmetric
//! Gaussian reduction with congruence transformations.

use crate::poly::RatPoly;
use crate::rat::{sign, Rat};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMat {
    pub n: usize,
    /// Row-major dense entries; kept symmetric.
    pub a: Vec<Rat>,
}

impl SymMat {
    pub fn zero(n: usize) -> Self {
        SymMat { n, a: vec![Rat::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        for i in 0..n {
            for j in 0..n {
                assert_eq!(rows[i][j], rows[j][i], "matrix is not symmetric");
            }
        }
        SymMat { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.n + j] = v;
    }

    /// Signature (p, q): numbers of positive and negative eigenvalues,
    /// via exact congruence reduction. p + q + nullity = n.
    pub fn signature(&self) -> (usize, usize) {
        let mut m = self.clone();
        let n = m.n;
        let mut p = 0usize;
        let mut q = 0usize;
        let mut k = 0usize;
        while k < n {
            // find a nonzero diagonal entry at or after k
            if m.get(k, k).is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                    m.swap_rows_cols(k, i);
                } else if let Some((i, j)) = m.find_offdiag(k) {
                    // congruence: add row/col j to row/col i to surface
                    // a nonzero diagonal entry (char 0, so 2*a_ij != 0)
                    m.add_row_col(i, j);
                    if i != k {
                        m.swap_rows_cols(k, i);
                    }
                } else {
                    break; // all-zero block, only nullity remains
                }
            }
            let d = m.get(k, k).clone();
            if sign(&d) > 0 {
                p += 1;
            } else {
                q += 1;
            }
            for i in k + 1..n {
                let f = m.get(i, k) / &d;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                }
                for j in k..n {
                    let v = m.get(j, i) - &f * m.get(j, k);
                    m.set(j, i, v);
                }
            }
            k += 1;
        }
        (p, q)
    }

    pub fn rank(&self) -> usize {
        let (p, q) = self.signature();
        p + q
    }

    pub fn det(&self) -> Rat {
        // plain fraction Gaussian elimination
        let mut m = self.a.clone();
        let n = self.n;
        let mut det = Rat::from_integer(1.into());
        for k in 0..n {
            let piv = (k..n).find(|&i| !m[i * n + k].is_zero());
            let Some(piv) = piv else { return Rat::zero() };
            if piv != k {
                for j in 0..n {
                    m.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = m[k * n + k].clone();
            det *= &d;
            for i in k + 1..n {
                let f = m[i * n + k].clone() / &d;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m[i * n + j].clone() - &f * &m[k * n + j];
                    m[i * n + j] = v;
                }
            }
        }
        det
    }

    fn swap_rows_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for c in 0..n {
            self.a.swap(i * n + c, j * n + c);
        }
        for r in 0..n {
            self.a.swap(r * n + i, r * n + j);
        }
    }

    fn add_row_col(&mut self, i: usize, j: usize) {
        let n = self.n;
        for c in 0..n {
            let v = self.a[i * n + c].clone() + &self.a[j * n + c];
            self.a[i * n + c] = v;
        }
        for r in 0..n {
            let v = self.a[r * n + i].clone() + &self.a[r * n + j];
            self.a[r * n + i] = v;
        }
    }

    fn find_offdiag(&self, k: usize) -> Option<(usize, usize)> {
        for i in k..self.n {
            for j in i + 1..self.n {
                if !self.get(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Congruence transform Uᵀ A U for a square rational matrix U (rows of U
    /// indexed like A).
    pub fn congruence(&self, u: &[Vec<Rat>]) -> SymMat {
        let n = self.n;
        assert_eq!(u.len(), n);
        let mut au = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for k in 0..n {
                    s += self.get(i, k) * &u[k][j];
                }
                au[i * n + j] = s;
            }
        }
        let mut out = SymMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for k in 0..n {
                    s += &u[k][i] * &au[k * n + j];
                }
                out.set(i, j, s);
            }
        }
        out
    }
}

/// Gram matrix of a quadratic form in the given variables:
/// f = xᵀ G x with G symmetric, so off-diagonal entries are half the mixed
/// coefficients.
pub fn gram_of_quadratic(f: &RatPoly, var_indices: &[usize]) -> SymMat {
    let n = var_indices.len();
    let mut g = SymMat::zero(n);
    let half = Rat::new(1.into(), 2.into());
    for (e, c) in f.terms() {
        // locate the (at most two) active variables
        let mut active = vec![];
        for (pos, &vi) in var_indices.iter().enumerate() {
            match e[vi] {
                0 => {}
                1 => active.push((pos, 1u32)),
                2 => active.push((pos, 2u32)),
                _ => panic!("not a quadratic form in the selected variables"),
            }
        }
        let deg: u32 = active.iter().map(|&(_, d)| d).sum();
        assert!(deg == 2, "term of degree != 2 in the selected variables");
        match active.as_slice() {
            [(i, 2)] => {
                let v = g.get(*i, *i).clone() + c;
                g.set(*i, *i, v);
            }
            [(i, 1), (j, 1)] => {
                let v = g.get(*i, *j).clone() + c * &half;
                g.set(*i, *j, v.clone());
                g.set(*j, *i, v);
            }
            _ => unreachable!(),
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Vars;
    use crate::rat::rat_i;

    #[test]
    fn diag_signature() {
        let d = SymMat::from_rows(vec![
            vec![rat_i(1), rat_i(0), rat_i(0), rat_i(0)],
            vec![rat_i(0), rat_i(1), rat_i(0), rat_i(0)],
            vec![rat_i(0), rat_i(0), rat_i(1), rat_i(0)],
            vec![rat_i(0), rat_i(0), rat_i(0), rat_i(-1)],
        ]);
        assert_eq!(d.signature(), (3, 1));
        assert_eq!(SymMat::zero(3).signature(), (0, 0));
    }

    #[test]
    fn offdiagonal_hyperbolic() {
        // [[0,1],[1,0]] has signature (1,1)
        let m = SymMat::from_rows(vec![vec![rat_i(0), rat_i(1)], vec![rat_i(1), rat_i(0)]]);
        assert_eq!(m.signature(), (1, 1));
    }

    #[test]
    fn congruence_invariance() {
        let d = SymMat::from_rows(vec![
            vec![rat_i(1), rat_i(0), rat_i(0)],
            vec![rat_i(0), rat_i(-1), rat_i(0)],
            vec![rat_i(0), rat_i(0), rat_i(-1)],
        ]);
        let u = vec![
            vec![rat_i(1), rat_i(2), rat_i(0)],
            vec![rat_i(0), rat_i(1), rat_i(3)],
            vec![rat_i(1), rat_i(0), rat_i(1)],
        ];
        // u is unimodular-ish (det != 0); signature must persist
        let m = d.congruence(&u);
        assert_eq!(m.signature(), (1, 2));
    }

    #[test]
    fn gram_extraction() {
        let vars = Vars::new(["x", "y", "z"]);
        let f = RatPoly::parse(&vars, "x^2 + 4*x*y - 2*y^2 + z^2").unwrap();
        let g = gram_of_quadratic(&f, &[0, 1, 2]);
        assert_eq!(g.get(0, 1), &rat_i(2));
        assert_eq!(g.signature(), (2, 1));
    }
}
