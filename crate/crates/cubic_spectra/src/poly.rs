//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are keyed by exponent tuples in a `BTreeMap`, so iteration order —
//! and therefore printing — is canonical. No zero coefficient is ever
//! stored. All arithmetic requires operands to share a variable set.

use crate::rat::{parse_rat, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Ordered variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        let v: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!v.is_empty(), "empty variable set");
        Vars(Arc::new(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

pub type Expt = Vec<u32>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("variable sets differ")]
    VarMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("{0}")]
    Degenerate(String),
}

/// Sparse polynomial over ℚ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    vars: Vars,
    terms: BTreeMap<Expt, Rat>,
}

impl RatPoly {
    pub fn zero(vars: &Vars) -> Self {
        RatPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Self {
        let i = vars.index_of(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::var_idx(vars, i)
    }

    pub fn var_idx(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn monomial(vars: &Vars, expt: Expt, c: Rat) -> Self {
        assert_eq!(expt.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(expt, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expt, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; -1 encoded as None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    fn insert_term(&mut self, e: Expt, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Expt = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] = k - 1;
            out.insert_term(e2, c * Rat::from_integer(k.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. Images may live in any
    /// common variable set.
    pub fn substitute(&self, images: &[RatPoly]) -> RatPoly {
        assert_eq!(images.len(), self.vars.len());
        let tv = images[0].vars.clone();
        assert!(images.iter().all(|p| p.vars == tv));
        let mut acc = RatPoly::zero(&tv);
        for (e, c) in &self.terms {
            let mut t = RatPoly::constant(&tv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Specializes one variable to a rational value, keeping the variable set.
    pub fn specialize(&self, var: usize, value: &Rat) -> RatPoly {
        let mut out = RatPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            let mut t = c.clone();
            for _ in 0..k {
                t *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.insert_term(e2, t);
        }
        out
    }

    /// Dense coefficient list in `var`: index = power of `var`, entries are
    /// polynomials with exponent 0 in `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<RatPoly> {
        let d = match self.degree_in(var) {
            None => return vec![],
            Some(d) => d as usize,
        };
        let mut out = vec![RatPoly::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].insert_term(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Vars, var: usize, coeffs: &[RatPoly]) -> RatPoly {
        let mut acc = RatPoly::zero(vars);
        let x = RatPoly::var_idx(vars, var);
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(k as u32)));
        }
        acc
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coeff_in(&self, var: usize) -> RatPoly {
        match self.degree_in(var) {
            None => RatPoly::zero(&self.vars),
            Some(d) => {
                let mut out = RatPoly::zero(&self.vars);
                for (e, c) in &self.terms {
                    if e[var] == d {
                        let mut e2 = e.clone();
                        e2[var] = 0;
                        out.insert_term(e2, c.clone());
                    }
                }
                out
            }
        }
    }

    /// Exact division; panics if `rhs` does not divide `self`.
    /// Used only where divisibility is guaranteed by construction.
    pub fn exact_div(&self, rhs: &Self) -> Self {
        self.try_exact_div(rhs).expect("exact division failed")
    }

    /// Long division by leading terms in the graded-lex order used by the
    /// term map; returns None when the division leaves a remainder.
    pub fn try_exact_div(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.vars, rhs.vars, "variable sets differ");
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = RatPoly::zero(&self.vars);
        let (de, dc) = rhs.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            if !re.iter().zip(&de).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Expt = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = rc / &dc;
            let m = RatPoly::monomial(&self.vars, qe, qc);
            quot = quot.add(&m);
            rem = rem.sub(&m.mul(rhs));
        }
        Some(quot)
    }

    /// Divides by the content (gcd of coefficients) and makes the leading
    /// coefficient positive. Projectively harmless normalization.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &den_lcm / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        let lead = self.terms.iter().next_back().unwrap().1;
        if (lead * &scale) < Rat::zero() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Homogenizes a polynomial in (x, y) to a ternary form of degree d by
    /// padding with powers of the new last variable.
    pub fn homogenize_to(&self, tvars: &Vars, d: u32) -> RatPoly {
        assert_eq!(self.vars.len() + 1, tvars.len());
        let mut out = RatPoly::zero(tvars);
        for (e, c) in &self.terms {
            let total: u32 = e.iter().sum();
            assert!(total <= d, "degree exceeds homogenization target");
            let mut e2 = e.clone();
            e2.push(d - total);
            out.insert_term(e2, c.clone());
        }
        out
    }

    /// Renders in canonical (sorted exponent) order.
    pub fn to_text(&self) -> String {
        format!("{self}")
    }

    /// Parses the polynomial grammar
    /// `poly := term (('+'|'-') term)*` ;
    /// `term := coeff ('*' factor)* | factor ('*' factor)*` ;
    /// `factor := var ('^' uint)?` ; `coeff := int ('/' uint)?`.
    pub fn parse(vars: &Vars, text: &str) -> Result<Self, PolyError> {
        Parser { vars, text, pos: 0, line: 1, col: 1 }.parse_poly()
    }
}

struct Parser<'a> {
    vars: &'a Vars,
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn parse_poly(&mut self) -> Result<RatPoly, PolyError> {
        let mut acc = RatPoly::zero(self.vars);
        self.skip_ws();
        let mut sign = 1i64;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.bump();
                if c == '-' {
                    sign = -1;
                }
            }
        }
        loop {
            let term = self.parse_term()?;
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<RatPoly, PolyError> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.parse_coeff()?;
                RatPoly::constant(self.vars, coeff)
            }
            Some(c) if c.is_alphabetic() || c == '_' => self.parse_factor()?,
            Some(c) => return Err(self.err(format!("expected coefficient or variable, found {c:?}"))),
            None => return Err(self.err("unexpected end of input")),
        };
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                let f = self.parse_factor()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_coeff(&mut self) -> Result<Rat, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let mut lit = self.text[start..self.pos].to_string();
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let dstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if dstart == self.pos {
                return Err(self.err("expected denominator digits after '/'"));
            }
            lit.push('/');
            lit.push_str(&self.text[dstart..self.pos]);
        }
        parse_rat(&lit).ok_or_else(|| self.err(format!("bad rational literal `{lit}`")))
    }

    fn parse_factor(&mut self) -> Result<RatPoly, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected a variable name"));
        }
        let name = &self.text[start..self.pos];
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| self.err(format!("variable `{name}` not in the declared list")))?;
        let mut p = RatPoly::var_idx(self.vars, idx);
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let estart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if estart == self.pos {
                return Err(self.err("expected exponent digits after '^'"));
            }
            let e: u32 = self.text[estart..self.pos]
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            p = p.pow(e);
        }
        Ok(p)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            let mut wrote = false;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.names()[i])?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Determinant of a 3×3 polynomial matrix by direct cofactor expansion.
/// Multilinear in rows and sign-alternating under row swaps.
pub fn det3(m: &[[RatPoly; 3]; 3]) -> RatPoly {
    let a = &m[0];
    let minor = |r1: &[RatPoly; 3], r2: &[RatPoly; 3], i: usize, j: usize| {
        r1[i].mul(&r2[j]).sub(&r1[j].mul(&r2[i]))
    };
    let m0 = minor(&m[1], &m[2], 1, 2);
    let m1 = minor(&m[1], &m[2], 0, 2);
    let m2 = minor(&m[1], &m[2], 0, 1);
    a[0].mul(&m0).sub(&a[1].mul(&m1)).add(&a[2].mul(&m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn xyz() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    #[test]
    fn parse_roundtrip() {
        let vars = xyz();
        let p = RatPoly::parse(&vars, "2*x^2*y - 3/4*z + 1").unwrap();
        let q = RatPoly::parse(&vars, &p.to_text()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.total_degree(), Some(3));
    }

    #[test]
    fn parse_error_has_position() {
        let vars = xyz();
        let e = RatPoly::parse(&vars, "x + $").unwrap_err();
        match e {
            PolyError::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn parse_rejects_undeclared_variable() {
        let vars = xyz();
        assert!(RatPoly::parse(&vars, "x + w").is_err());
    }

    #[test]
    fn det3_identity_is_one() {
        let vars = xyz();
        let mut m: [[RatPoly; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| RatPoly::zero(&vars)));
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = RatPoly::one(&vars);
        }
        assert_eq!(det3(&m), RatPoly::one(&vars));
    }

    #[test]
    fn det3_block_case() {
        // [[x,y,0],[y,z,0],[0,0,C]] -> C*(xz - y^2) with C = x^3+y^3+z^3
        let vars = xyz();
        let p = |s: &str| RatPoly::parse(&vars, s).unwrap();
        let m = [
            [p("x"), p("y"), p("0*x")],
            [p("y"), p("z"), p("0*x")],
            [p("0*x"), p("0*x"), p("x^3 + y^3 + z^3")],
        ];
        let want = p("x^3 + y^3 + z^3").mul(&p("x*z - y^2"));
        assert_eq!(det3(&m), want);
    }

    #[test]
    fn exact_division() {
        let vars = xyz();
        let p = |s: &str| RatPoly::parse(&vars, s).unwrap();
        let a = p("x^2 - y^2");
        let b = p("x - y");
        assert_eq!(a.exact_div(&b), p("x + y"));
        assert!(a.try_exact_div(&p("x - z")).is_none());
    }

    #[test]
    fn substitution_specialize() {
        let vars = xyz();
        let p = RatPoly::parse(&vars, "x^2 + y*z").unwrap();
        let v = p.eval(&[rat_i(2), rat_i(3), rat_i(5)]);
        assert_eq!(v, rat_i(19));
        let s = p.specialize(0, &rat_i(2));
        assert_eq!(s, RatPoly::parse(&vars, "4 + y*z").unwrap());
    }
}
