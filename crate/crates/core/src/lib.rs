//! Rational invariants of the lower central series of finitely presented
//! groups in degrees one and two, and the Kähler-group obstructions that
//! can be read off from them.
//!
//! The pipeline runs a [`Presentation`] through the degree-two Magnus
//! expansion of its relators ([`magnus`]), builds the maps `d0` and `d1`
//! and the graded Lie algebra `Gr L_2(G)` ([`lie2`]), and feeds the
//! resulting dimensions to [`obstructions`]. [`oracle`] recomputes the same
//! dimensions through the free 2-step nilpotent group, independently of the
//! Magnus route.
//!
//! The linear algebra and series code is generic over [`Scalar`]; the
//! aliases below fix it to arbitrary-precision rationals, which is what the
//! pipeline uses.

pub mod lie2;
pub mod linalg;
pub mod magnus;
pub mod obstructions;
pub mod oracle;
pub mod presentation;
pub mod scalar;

pub use presentation::{parse_presentation, ParseError, Presentation, Word};
pub use scalar::Scalar;

/// Exact rationals.
pub type Q = num_rational::BigRational;
pub type RationalMatrix = linalg::Matrix<Q>;
pub type RationalQuotientBasis = linalg::QuotientBasis<Q>;
pub type TruncatedSeries2 = magnus::TruncatedSeries<Q>;
pub type Bch2Element = oracle::BchElement<Q>;

/// Fixed-width rationals, for callers who know their inputs stay small.
pub type SmallRationalMatrix = linalg::Matrix<num_rational::Rational64>;

pub fn binomial2(q: usize) -> usize {
    linalg::pair_count(q)
}
