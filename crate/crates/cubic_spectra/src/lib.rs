//! Exact-arithmetic toolkit for real cubic threefolds with a marked line.
//!
//! The library computes, over ℚ and finite quadratic extensions of ℚ:
//!
//! * the fundamental matrix, spectral quintic and theta-conic of a marked
//!   cubic threefold, with smoothness and line-type diagnostics
//!   ([`threefold`]);
//! * certified topology of real plane curves of degree ≤ 5 and the
//!   quintic/conic mutual-position tests (contact, visibility, skew
//!   criterion) ([`curve`]);
//! * the GF(2) homology layer: symplectic spaces with involution, Smith
//!   discrepancy, Arf invariants and difference classes ([`gf2`]);
//! * line censuses of real cubic surfaces through the pencil-of-planes
//!   spectrum ([`surface`]);
//! * an immutable atlas of the deformation classification: class
//!   invariants, the 18 spectral matchings, adjacency graphs and Fano
//!   component tables ([`atlas`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every predicate is a sign, rank or multiplicity condition. Floating
//! point never enters a decision.

pub mod atlas;
pub mod curve;
pub mod gf2;
pub mod hull;
pub mod interval;
pub mod poly;
pub mod quadform;
pub mod rat;
pub mod realalg;
pub mod report;
pub mod roots;
pub mod subres;
pub mod surface;
pub mod threefold;
pub mod tower;
pub mod upoly;

mod guide;

pub use poly::{PolyError, RatPoly, Vars};
pub use rat::Rat;
pub use roots::RootBox;
