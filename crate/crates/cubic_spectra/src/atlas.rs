//! Immutable encoding of the deformation classification: the nine classes of
//! real plane quintics and of real cubic threefolds, their Smith
//! discrepancies and Klein types, the two adjacency graphs with quadrocubic
//! edge labels, the Fano component tables, the monodromy-orbit data, and the
//! 18 spectral matchings.
//!
//! Everything here is data plus rule evaluation; nothing is derived at run
//! time from geometry. Each row carries a citation key (a stable identifier
//! of the table row) so pipeline reports can point at the exact datum that
//! justified a verdict.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub enum Klein {
    I,
    II,
}

impl fmt::Display for Klein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Klein::I => write!(f, "I"),
            Klein::II => write!(f, "II"),
        }
    }
}

/// Deformation classes of non-singular real plane quintics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub enum QuinticCode {
    J,
    J1,
    J2,
    J3,
    J4I,
    J4II,
    J5,
    J6,
    JNest,
}

pub const QUINTIC_CODES: [QuinticCode; 9] = [
    QuinticCode::J,
    QuinticCode::J1,
    QuinticCode::J2,
    QuinticCode::J3,
    QuinticCode::J4I,
    QuinticCode::J4II,
    QuinticCode::J5,
    QuinticCode::J6,
    QuinticCode::JNest,
];

impl fmt::Display for QuinticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuinticCode::J => "J",
            QuinticCode::J1 => "J+1",
            QuinticCode::J2 => "J+2",
            QuinticCode::J3 => "J+3",
            QuinticCode::J4I => "J+4_I",
            QuinticCode::J4II => "J+4_II",
            QuinticCode::J5 => "J+5",
            QuinticCode::J6 => "J+6",
            QuinticCode::JNest => "J+1<1>",
        };
        write!(f, "{s}")
    }
}

/// Deformation classes of non-singular real cubic threefolds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub enum CubicCode {
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C3I,
    C1I,
    C1I2,
}

pub const CUBIC_CODES: [CubicCode; 9] = [
    CubicCode::C0,
    CubicCode::C1,
    CubicCode::C2,
    CubicCode::C3,
    CubicCode::C4,
    CubicCode::C5,
    CubicCode::C3I,
    CubicCode::C1I,
    CubicCode::C1I2,
];

impl fmt::Display for CubicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CubicCode::C0 => "C0",
            CubicCode::C1 => "C1",
            CubicCode::C2 => "C2",
            CubicCode::C3 => "C3",
            CubicCode::C4 => "C4",
            CubicCode::C5 => "C5",
            CubicCode::C3I => "C3_I",
            CubicCode::C1I => "C1_I",
            CubicCode::C1I2 => "C1_I(2)",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuinticClass {
    pub code: QuinticCode,
    /// Smith discrepancy: half the total-Betti-number gap, = rank(1+c).
    pub d: u8,
    pub klein: Klein,
    pub ovals: u8,
    pub nested: bool,
    pub real_locus: String,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicClass {
    pub code: CubicCode,
    pub d: u8,
    pub klein: Klein,
    pub real_locus: String,
    pub connected: bool,
    pub citation: String,
}

pub fn quintic_class(code: QuinticCode) -> QuinticClass {
    use QuinticCode::*;
    let (d, klein, ovals, nested, locus) = match code {
        J => (6, Klein::II, 0, false, "one-sided J only"),
        J1 => (5, Klein::II, 1, false, "J and 1 oval"),
        J2 => (4, Klein::II, 2, false, "J and 2 disjoint ovals"),
        J3 => (3, Klein::II, 3, false, "J and 3 disjoint ovals"),
        J4I => (2, Klein::I, 4, false, "J and 4 disjoint ovals, not in convex position"),
        J4II => (2, Klein::II, 4, false, "J and 4 disjoint ovals in convex position"),
        J5 => (1, Klein::II, 5, false, "J and 5 disjoint ovals"),
        J6 => (0, Klein::I, 6, false, "J and 6 disjoint ovals (M-curve)"),
        JNest => (4, Klein::I, 2, true, "J and a nest of 2 ovals"),
    };
    QuinticClass {
        code,
        d,
        klein,
        ovals,
        nested,
        real_locus: locus.into(),
        citation: format!("quintic-classes/{code}"),
    }
}

pub fn cubic_class(code: CubicCode) -> CubicClass {
    use CubicCode::*;
    let (d, klein, locus, connected) = match code {
        C0 => (5, Klein::II, "RP3", true),
        C1 => (4, Klein::II, "RP3 # H", true),
        C2 => (3, Klein::II, "RP3 # 2H", true),
        C3 => (2, Klein::II, "RP3 # 3H", true),
        C4 => (1, Klein::II, "RP3 # 4H", true),
        C5 => (0, Klein::I, "RP3 # 5H", true),
        C3I => (2, Klein::I, "RP3 # 3H", true),
        C1I => (4, Klein::I, "Sigma(2,4,6)", true),
        C1I2 => (4, Klein::I, "RP3 + S3", false),
    };
    CubicClass {
        code,
        d,
        klein,
        real_locus: locus.into(),
        connected,
        citation: format!("cubic-classes/{code}"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub enum MatchCategory {
    Perfect,
    SkewTypePreserving,
    SkewAdmissibleMixed,
    NotSpectral,
}

impl fmt::Display for MatchCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatchCategory::Perfect => "perfect",
            MatchCategory::SkewTypePreserving => "skew-type-preserving",
            MatchCategory::SkewAdmissibleMixed => "skew-admissible-mixed",
            MatchCategory::NotSpectral => "not-spectral",
        };
        write!(f, "{s}")
    }
}

/// Rule evaluation for a pair of deformation classes:
/// perfect when discrepancies and Klein types agree; skew when the quintic
/// discrepancy exceeds the cubic one by exactly 2 (then type-preserving for
/// equal Klein types, admissible mixed when the cubic has type I with
/// connected real locus and the quintic type II); anything else is not a
/// spectral matching.
pub fn matching_category(cx: CubicCode, qx: QuinticCode) -> MatchCategory {
    let c = cubic_class(cx);
    let q = quintic_class(qx);
    if c.d == q.d && c.klein == q.klein {
        return MatchCategory::Perfect;
    }
    if q.d == c.d + 2 {
        if c.klein == q.klein {
            return MatchCategory::SkewTypePreserving;
        }
        if c.klein == Klein::I && c.connected && q.klein == Klein::II {
            return MatchCategory::SkewAdmissibleMixed;
        }
    }
    MatchCategory::NotSpectral
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatchingRecord {
    pub cubic: CubicCode,
    pub quintic: QuinticCode,
    pub category: MatchCategory,
    pub citation: String,
}

/// The 18 spectral matchings, sorted by (category, cubic, quintic):
/// 9 perfect, 6 type-preserving skew, 3 admissible mixed skew.
pub fn enumerate_matchings() -> Vec<MatchingRecord> {
    let mut out = vec![];
    for &cx in &CUBIC_CODES {
        for &qx in &QUINTIC_CODES {
            let cat = matching_category(cx, qx);
            if cat != MatchCategory::NotSpectral {
                out.push(MatchingRecord {
                    cubic: cx,
                    quintic: qx,
                    category: cat,
                    citation: format!("matching-list/{cat}/{cx}-{qx}"),
                });
            }
        }
    }
    out.sort_by(|a, b| {
        a.category
            .cmp(&b.category)
            .then(a.cubic.cmp(&b.cubic))
            .then(a.quintic.cmp(&b.quintic))
    });
    out
}

/// Edge labels of the cubic-threefold adjacency graph: the deformation class
/// of the quadrocubic realizing the wall (number of real components, with an
/// `I` marker for the Klein-type-I cases).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum QuadrocubicLabel {
    K(u8),
    KI(u8),
}

impl fmt::Display for QuadrocubicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadrocubicLabel::K(k) => write!(f, "{k}"),
            QuadrocubicLabel::KI(k) => write!(f, "{k}_I"),
        }
    }
}

/// Adjacency graph on the quintic classes (chains plus the three side
/// vertices).
pub fn quintic_adjacency() -> Vec<(QuinticCode, QuinticCode)> {
    use QuinticCode::*;
    vec![
        (J6, J5),
        (J5, J4II),
        (J4I, J3),
        (J4II, J3),
        (J3, J2),
        (JNest, J1),
        (J2, J1),
        (J1, J),
    ]
}

/// Adjacency graph on the cubic classes, with quadrocubic edge labels.
pub fn cubic_adjacency() -> Vec<(CubicCode, CubicCode, QuadrocubicLabel)> {
    use CubicCode::*;
    use QuadrocubicLabel::*;
    vec![
        (C5, C4, K(5)),
        (C4, C3, K(4)),
        (C3I, C2, KI(3)),
        (C3, C2, K(3)),
        (C2, C1, K(2)),
        (C1I, C0, KI(1)),
        (C1, C0, K(1)),
        (C1I2, C0, K(0)),
    ]
}

pub fn quintic_adjacent(a: QuinticCode, b: QuinticCode) -> bool {
    quintic_adjacency().iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
}

pub fn cubic_adjacent(a: CubicCode, b: CubicCode) -> Option<QuadrocubicLabel> {
    cubic_adjacency()
        .iter()
        .find(|&&(x, y, _)| (x, y) == (a, b) || (y, x) == (a, b))
        .map(|&(_, _, l)| l)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphReport {
    pub smith_adjacency_ok: bool,
    pub klein_principle_ok: bool,
    pub isomorphic: bool,
    /// Vertex map cubic -> quintic realizing the isomorphism, when found.
    pub isomorphism: Vec<(CubicCode, QuinticCode)>,
}

/// Checks the two stated structural properties of both graphs and finds an
/// explicit combinatorial isomorphism by backtracking.
pub fn graph_properties_check() -> GraphReport {
    let mut smith = true;
    let mut klein = true;
    for (a, b) in quintic_adjacency() {
        let (ca, cb) = (quintic_class(a), quintic_class(b));
        if (ca.d as i8 - cb.d as i8).abs() != 1 {
            smith = false;
        }
        for (x, y) in [(&ca, &cb), (&cb, &ca)] {
            if x.klein == Klein::I && x.d >= y.d {
                klein = false;
            }
        }
    }
    for (a, b, _) in cubic_adjacency() {
        let (ca, cb) = (cubic_class(a), cubic_class(b));
        if (ca.d as i8 - cb.d as i8).abs() != 1 {
            smith = false;
        }
        for (x, y) in [(&ca, &cb), (&cb, &ca)] {
            if x.klein == Klein::I && x.d >= y.d {
                klein = false;
            }
        }
    }
    // backtracking search for a graph isomorphism
    let qe = quintic_adjacency();
    let ce = cubic_adjacency();
    let deg_q = |v: QuinticCode| qe.iter().filter(|&&(a, b)| a == v || b == v).count();
    let deg_c = |v: CubicCode| ce.iter().filter(|&&(a, b, _)| a == v || b == v).count();
    let mut map: Vec<Option<QuinticCode>> = vec![None; 9];
    let idx = |c: CubicCode| CUBIC_CODES.iter().position(|&x| x == c).unwrap();
    fn ok(
        map: &[Option<QuinticCode>],
        ce: &[(CubicCode, CubicCode, QuadrocubicLabel)],
        qe: &[(QuinticCode, QuinticCode)],
        idx: &dyn Fn(CubicCode) -> usize,
    ) -> bool {
        for &(a, b, _) in ce {
            if let (Some(x), Some(y)) = (map[idx(a)], map[idx(b)]) {
                let adj = qe.iter().any(|&(p, q)| (p, q) == (x, y) || (q, p) == (x, y));
                if !adj {
                    return false;
                }
            }
        }
        true
    }
    fn bt(
        k: usize,
        map: &mut Vec<Option<QuinticCode>>,
        used: &mut [bool; 9],
        ce: &[(CubicCode, CubicCode, QuadrocubicLabel)],
        qe: &[(QuinticCode, QuinticCode)],
        idx: &dyn Fn(CubicCode) -> usize,
        deg_q: &dyn Fn(QuinticCode) -> usize,
        deg_c: &dyn Fn(CubicCode) -> usize,
    ) -> bool {
        if k == 9 {
            return true;
        }
        let c = CUBIC_CODES[k];
        for (qi, &q) in QUINTIC_CODES.iter().enumerate() {
            if used[qi] || deg_q(q) != deg_c(c) {
                continue;
            }
            map[k] = Some(q);
            used[qi] = true;
            if ok(map, ce, qe, idx) && bt(k + 1, map, used, ce, qe, idx, deg_q, deg_c) {
                return true;
            }
            map[k] = None;
            used[qi] = false;
        }
        false
    }
    let mut used = [false; 9];
    let isomorphic = bt(0, &mut map, &mut used, &ce, &qe, &idx, &deg_q, &deg_c);
    let isomorphism = if isomorphic {
        CUBIC_CODES.iter().map(|&c| (c, map[idx(c)].unwrap())).collect()
    } else {
        vec![]
    };
    GraphReport { smith_adjacency_ok: smith, klein_principle_ok: klein, isomorphic, isomorphism }
}

/// Monodromy orbit structure on the torus components of the real Fano locus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TorusOrbits {
    /// No torus components at all.
    NoTori,
    /// A single transitive orbit.
    Transitive,
    /// Two orbits of sizes 6 (type I) and 9 (type II).
    Split6and9,
    /// Two orbits of 3 tori each.
    Split3and3,
}

/// Selector for the component of the real Fano locus carrying the line.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FanoComponent {
    /// The unique odd-Euler-characteristic component.
    Odd,
    /// Any torus (classes with a transitive orbit).
    Torus,
    /// Torus in the type-I orbit.
    TorusI,
    /// Torus in the type-II orbit.
    TorusII,
    /// The second non-orientable component (exotic class only).
    NonOrientableSecond,
}

/// Tag for the difference class of a skew matching: `HI` when it equals the
/// characteristic element w_c, `HII` otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum HTag {
    HI,
    HII,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanoRow {
    pub cubic: CubicCode,
    /// Odd component of the real Fano locus.
    pub odd_component: String,
    pub torus_count: u8,
    pub orbits: TorusOrbits,
    /// Expected quintic class for a line on the odd component.
    pub odd_choice: QuinticCode,
    /// Expected quintic class (with optional difference-class tag) for each
    /// non-odd selector available in this class.
    pub other_choices: Vec<(FanoComponent, QuinticCode, Option<HTag>)>,
    pub citation: String,
}

pub fn fano_lookup(cx: CubicCode) -> FanoRow {
    use CubicCode::*;
    use FanoComponent::*;
    use QuinticCode::*;
    let (odd, tori, orbits, odd_choice, others): (
        &str,
        u8,
        TorusOrbits,
        QuinticCode,
        Vec<(FanoComponent, QuinticCode, Option<HTag>)>,
    ) = match cx {
        C0 => ("N5", 0, TorusOrbits::NoTori, J1, vec![]),
        C1 => ("N5", 1, TorusOrbits::Transitive, J2, vec![(Torus, J, Some(HTag::HII))]),
        C2 => ("N5", 3, TorusOrbits::Transitive, J3, vec![(Torus, J1, None)]),
        C3 => ("N5", 6, TorusOrbits::Transitive, J4II, vec![(Torus, J2, Some(HTag::HII))]),
        C4 => ("N5", 10, TorusOrbits::Transitive, J5, vec![(Torus, J3, None)]),
        C5 => (
            "N5",
            15,
            TorusOrbits::Split6and9,
            J6,
            vec![(TorusI, J4I, None), (TorusII, J4II, Some(HTag::HI))],
        ),
        C3I => (
            "N5",
            6,
            TorusOrbits::Split3and3,
            J4I,
            vec![(TorusI, JNest, None), (TorusII, J2, Some(HTag::HI))],
        ),
        C1I => ("RP2", 0, TorusOrbits::NoTori, JNest, vec![(
            NonOrientableSecond,
            J,
            Some(HTag::HI),
        )]),
        C1I2 => ("N5", 0, TorusOrbits::NoTori, JNest, vec![]),
    };
    FanoRow {
        cubic: cx,
        odd_component: odd.into(),
        torus_count: tori,
        orbits,
        odd_choice,
        other_choices: others,
        citation: format!("fano-table/{cx}"),
    }
}

/// Expected quintic class for a line on the selected Fano component.
pub fn expected_quintic(
    cx: CubicCode,
    selector: FanoComponent,
) -> Option<(QuinticCode, Option<HTag>)> {
    let row = fano_lookup(cx);
    if selector == FanoComponent::Odd {
        return Some((row.odd_choice, None));
    }
    row.other_choices
        .iter()
        .find(|&&(s, _, _)| s == selector)
        .map(|&(_, q, t)| (q, t))
}

/// Stated monodromy group of the permutation action on the real Fano
/// components, per cubic class.
pub fn monodromy_facts(cx: CubicCode) -> String {
    use CubicCode::*;
    match cx {
        C5 => "S_{123,456}: permutations of 6 symbols preserving the partition {1,2,3}|{4,5,6}"
            .into(),
        C4 => "S_5".into(),
        C3 => "S_4".into(),
        C2 => "S_3".into(),
        C1 => "S_2".into(),
        C0 => "trivial (single component)".into(),
        // orbit-derived descriptors: the stated data is the orbit structure
        C3I => "two orbits of 3 tori, cyclically permuted (orbit-derived)".into(),
        C1I => "trivial on {RP2, N6} (components preserved; orbit-derived)".into(),
        C1I2 => "trivial (single component)".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighteen_matchings() {
        let m = enumerate_matchings();
        assert_eq!(m.len(), 18);
        let perfect = m.iter().filter(|r| r.category == MatchCategory::Perfect).count();
        let tp = m.iter().filter(|r| r.category == MatchCategory::SkewTypePreserving).count();
        let mixed = m.iter().filter(|r| r.category == MatchCategory::SkewAdmissibleMixed).count();
        assert_eq!((perfect, tp, mixed), (9, 6, 3));
        // no skew record has cubic class C0
        assert!(m
            .iter()
            .filter(|r| r.category != MatchCategory::Perfect)
            .all(|r| r.cubic != CubicCode::C0));
    }

    #[test]
    fn named_categories() {
        assert_eq!(
            matching_category(CubicCode::C5, QuinticCode::J6),
            MatchCategory::Perfect
        );
        assert_eq!(
            matching_category(CubicCode::C1I2, QuinticCode::J),
            MatchCategory::NotSpectral
        );
        assert_eq!(
            matching_category(CubicCode::C5, QuinticCode::J4II),
            MatchCategory::SkewAdmissibleMixed
        );
        assert_eq!(
            matching_category(CubicCode::C5, QuinticCode::J4I),
            MatchCategory::SkewTypePreserving
        );
        assert_eq!(
            matching_category(CubicCode::C1I, QuinticCode::J),
            MatchCategory::SkewAdmissibleMixed
        );
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            cubic_adjacent(CubicCode::C0, CubicCode::C1I2),
            Some(QuadrocubicLabel::K(0))
        );
        assert!(quintic_adjacent(QuinticCode::J6, QuinticCode::J5));
        assert_eq!(cubic_adjacent(CubicCode::C5, CubicCode::C3), None);
    }

    #[test]
    fn graphs_are_isomorphic_and_graded() {
        let r = graph_properties_check();
        assert!(r.smith_adjacency_ok);
        assert!(r.klein_principle_ok);
        assert!(r.isomorphic);
        // the isomorphism must send perfect-matching partners to each other
        // on the chain part
        let pairs: std::collections::HashMap<_, _> =
            r.isomorphism.iter().cloned().collect();
        assert_eq!(pairs[&CubicCode::C5], QuinticCode::J6);
        assert_eq!(pairs[&CubicCode::C0], QuinticCode::J1);
    }

    #[test]
    fn fano_rows() {
        let c5 = fano_lookup(CubicCode::C5);
        assert_eq!(c5.torus_count, 15);
        assert_eq!(c5.orbits, TorusOrbits::Split6and9);
        assert_eq!(
            expected_quintic(CubicCode::C5, FanoComponent::Odd),
            Some((QuinticCode::J6, None))
        );
        assert_eq!(
            expected_quintic(CubicCode::C5, FanoComponent::TorusI),
            Some((QuinticCode::J4I, None))
        );
        assert_eq!(
            expected_quintic(CubicCode::C1I2, FanoComponent::Odd),
            Some((QuinticCode::JNest, None))
        );
        assert_eq!(
            expected_quintic(CubicCode::C1I, FanoComponent::NonOrientableSecond),
            Some((QuinticCode::J, Some(HTag::HI)))
        );
        // every matching record's (d, type) data is consistent with the rule
        for r in enumerate_matchings() {
            let c = cubic_class(r.cubic);
            let q = quintic_class(r.quintic);
            match r.category {
                MatchCategory::Perfect => {
                    assert_eq!(c.d, q.d);
                    assert_eq!(c.klein, q.klein);
                }
                MatchCategory::SkewTypePreserving => {
                    assert_eq!(q.d, c.d + 2);
                    assert_eq!(c.klein, q.klein);
                }
                MatchCategory::SkewAdmissibleMixed => {
                    assert_eq!(q.d, c.d + 2);
                    assert_eq!(c.klein, Klein::I);
                    assert!(c.connected);
                    assert_eq!(q.klein, Klein::II);
                }
                MatchCategory::NotSpectral => unreachable!(),
            }
        }
    }
}
