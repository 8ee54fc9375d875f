//! Slope theory for vector bundles on a smooth projective curve, given by
//! their semistable graded pieces.
//!
//! Pieces are trusted to be semistable. The polygon computed here is the
//! concave hull of the supplied slope data, which is the Harder–Narasimhan
//! polygon exactly when that assertion holds. Torsion is modelled by leaving
//! it out of the piece list. Only characteristic zero is modelled, so the
//! Frobenius-normalized minimal slope coincides with `mu_min`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_num::{binomial, Rational};

/// One semistable graded piece of rank `rank` and degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemistablePiece {
    rank: u64,
    degree: Rational,
}

impl SemistablePiece {
    pub fn new(rank: u64, degree: Rational) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { rank, degree })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn slope(&self) -> Rational {
        &self.degree / rank_q(self.rank)
    }
}

fn rank_q(r: u64) -> Rational {
    Rational::from_integer(BigInt::from(r))
}

/// A formal direct sum of semistable pieces with a rational twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBundle {
    pieces: Vec<SemistablePiece>,
    twist: Rational,
    label: Option<String>,
}

impl CurveBundle {
    pub fn new(pieces: Vec<SemistablePiece>, twist: Rational) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyBundle);
        }
        Ok(Self { pieces, twist, label: None })
    }

    /// Convenience constructor from `(rank, integer degree)` pairs.
    pub fn from_pairs(pairs: &[(u64, i64)], twist: Rational) -> Result<Self> {
        let pieces = pairs
            .iter()
            .map(|&(r, d)| SemistablePiece::new(r, Rational::from_integer(BigInt::from(d))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces, twist)
    }

    /// The line bundle of degree `d`.
    pub fn line(d: Rational) -> Self {
        Self { pieces: vec![SemistablePiece { rank: 1, degree: d }], twist: Rational::zero(), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn pieces(&self) -> &[SemistablePiece] {
        &self.pieces
    }

    pub fn twist_value(&self) -> &Rational {
        &self.twist
    }

    pub fn rank(&self) -> u64 {
        self.pieces.iter().map(|p| p.rank).sum()
    }

    /// Total degree including the twist contribution `rank * twist`.
    pub fn degree(&self) -> Rational {
        let raw: Rational = self.pieces.iter().map(|p| p.degree.clone()).sum();
        raw + &self.twist * rank_q(self.rank())
    }

    /// Slopes of the pieces, twist included.
    pub fn slopes(&self) -> Vec<Rational> {
        self.pieces.iter().map(|p| p.slope() + &self.twist).collect()
    }

    /// The same bundle with the twist folded into the piece degrees.
    pub fn untwisted(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| SemistablePiece { rank: p.rank, degree: &p.degree + &self.twist * rank_q(p.rank) })
            .collect();
        Self { pieces, twist: Rational::zero(), label: self.label.clone() }
    }
}

impl fmt::Display for CurveBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pieces.iter().map(|p| format!("{}:{}", p.rank, p.degree)).collect();
        write!(f, "{}", body.join(","))?;
        if !self.twist.is_zero() {
            write!(f, " twist={}", self.twist)?;
        }
        Ok(())
    }
}

/// Concave polygon of cumulative (rank, degree) starting at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNPolygon {
    vertices: Vec<(u64, Rational)>,
}

impl HNPolygon {
    pub fn vertices(&self) -> &[(u64, Rational)] {
        &self.vertices
    }

    /// Slopes of the successive segments, strictly decreasing.
    pub fn segment_slopes(&self) -> Vec<Rational> {
        self.vertices
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / rank_q(w[1].0 - w[0].0))
            .collect()
    }

    pub fn mu_max(&self) -> Rational {
        self.segment_slopes().into_iter().next().expect("non-empty polygon")
    }

    pub fn mu_min(&self) -> Rational {
        self.segment_slopes().into_iter().last().expect("non-empty polygon")
    }
}

/// Sorts pieces by twisted slope (decreasing), merges equal slopes and
/// accumulates (rank, degree) vertices.
pub fn hn_polygon(b: &CurveBundle) -> HNPolygon {
    let mut segments: Vec<(u64, Rational)> = b
        .untwisted()
        .pieces
        .iter()
        .map(|p| (p.rank, p.degree.clone()))
        .collect();
    segments.sort_by(|x, y| {
        let sx = &x.1 / rank_q(x.0);
        let sy = &y.1 / rank_q(y.0);
        sy.cmp(&sx)
    });
    let mut merged: Vec<(u64, Rational)> = Vec::new();
    for (r, d) in segments {
        match merged.last_mut() {
            Some(last) if &last.1 / rank_q(last.0) == &d / rank_q(r) => {
                last.0 += r;
                last.1 += d;
            }
            _ => merged.push((r, d)),
        }
    }
    let mut vertices = vec![(0u64, Rational::zero())];
    for (r, d) in merged {
        let (pr, pd) = vertices.last().unwrap().clone();
        vertices.push((pr + r, pd + d));
    }
    HNPolygon { vertices }
}

pub fn mu_min(b: &CurveBundle) -> Rational {
    b.slopes().into_iter().min().expect("non-empty bundle")
}

pub fn mu_max(b: &CurveBundle) -> Rational {
    b.slopes().into_iter().max().expect("non-empty bundle")
}

/// Frobenius-normalized minimal slope; equal to [`mu_min`] in characteristic 0.
pub fn mu_bar_min(b: &CurveBundle) -> Rational {
    mu_min(b)
}

/// Seshadri constant at a point of multiplicity `mult_x`, computed from the
/// pullback of the bundle to the normalization.
pub fn seshadri_on_curve(b: &CurveBundle, mult_x: u64) -> Result<Rational> {
    if mult_x == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(mu_bar_min(b) / rank_q(mult_x))
}

fn merge_equal_slopes(pieces: Vec<SemistablePiece>) -> Vec<SemistablePiece> {
    let mut out: Vec<SemistablePiece> = Vec::new();
    for p in pieces {
        let slope = p.slope();
        match out.iter_mut().find(|q| q.slope() == slope) {
            Some(q) => {
                q.rank += p.rank;
                q.degree += p.degree;
            }
            None => out.push(p),
        }
    }
    out.sort_by(|x, y| y.slope().cmp(&x.slope()));
    out
}

fn piece_tensor(a: &SemistablePiece, b: &SemistablePiece) -> SemistablePiece {
    SemistablePiece {
        rank: a.rank * b.rank,
        degree: &a.degree * rank_q(b.rank) + &b.degree * rank_q(a.rank),
    }
}

pub fn tensor(b1: &CurveBundle, b2: &CurveBundle) -> CurveBundle {
    let pieces = b1
        .pieces
        .iter()
        .flat_map(|p| b2.pieces.iter().map(move |q| piece_tensor(p, q)))
        .collect();
    CurveBundle { pieces, twist: &b1.twist + &b2.twist, label: None }
}

fn piece_sym(p: &SemistablePiece, k: u64) -> Result<SemistablePiece> {
    let rank = binomial(p.rank + k - 1, p.rank - 1)
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("symmetric power rank overflows 64 bits".into()))?;
    let slope = p.slope() * rank_q(k);
    Ok(SemistablePiece { rank, degree: slope * rank_q(rank) })
}

/// All compositions of `m` into `parts` nonnegative summands.
fn compositions(m: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![m]];
    }
    (0..=m)
        .flat_map(|first| {
            compositions(m - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `Sym^m` via the decomposition of a symmetric power of a direct sum.
pub fn sym(b: &CurveBundle, m: u64) -> Result<CurveBundle> {
    let trivial = SemistablePiece { rank: 1, degree: Rational::zero() };
    if m == 0 {
        return CurveBundle::new(vec![trivial], Rational::zero());
    }
    let mut pieces = Vec::new();
    for comp in compositions(m, b.pieces.len()) {
        let mut acc = trivial.clone();
        for (p, &k) in b.pieces.iter().zip(&comp) {
            if k > 0 {
                acc = piece_tensor(&acc, &piece_sym(p, k)?);
            }
        }
        pieces.push(acc);
    }
    CurveBundle::new(merge_equal_slopes(pieces), &b.twist * rank_q(m))
}

/// Direct sum; differing twists are folded into the degrees first.
pub fn direct_sum(b1: &CurveBundle, b2: &CurveBundle) -> CurveBundle {
    let (x, y) = if b1.twist == b2.twist { (b1.clone(), b2.clone()) } else { (b1.untwisted(), b2.untwisted()) };
    let mut pieces = x.pieces;
    pieces.extend(y.pieces);
    CurveBundle { pieces, twist: x.twist, label: None }
}

pub fn dual(b: &CurveBundle) -> CurveBundle {
    let pieces = b.pieces.iter().map(|p| SemistablePiece { rank: p.rank, degree: -&p.degree }).collect();
    CurveBundle { pieces, twist: -&b.twist, label: None }
}

pub fn det(b: &CurveBundle) -> CurveBundle {
    CurveBundle::line(b.degree())
}

pub fn twist(b: &CurveBundle, t: &Rational) -> CurveBundle {
    CurveBundle { pieces: b.pieces.clone(), twist: &b.twist + t, label: b.label.clone() }
}

pub fn is_nef(b: &CurveBundle) -> bool {
    mu_min(b) >= Rational::zero()
}

pub fn is_ample(b: &CurveBundle) -> bool {
    mu_min(b) > Rational::zero()
}

/// Slope of a bundle, `degree / rank`.
pub fn slope(b: &CurveBundle) -> Rational {
    b.degree() / rank_q(b.rank())
}
