//! Seshadri constants on a variety from curve-restriction catalogs, the
//! one-sided bound combinators, the toric fixed-point rule and a small
//! catalog of known values for tangent bundles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::curve_bundles::{seshadri_on_curve, CurveBundle};
use crate::error::{Error, Result};
use crate::exact_num::{binomial, nth_root, ExactOrInterval, Rational};

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Self::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Self::NegInfinity => false,
            Self::Finite(r) => r.is_positive(),
            Self::PosInfinity => true,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Self::NegInfinity => 0,
            Self::Finite(_) => 1,
            Self::PosInfinity => 2,
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        Self::Finite(r)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInfinity => write!(f, "-inf"),
            Self::Finite(r) => write!(f, "{r}"),
            Self::PosInfinity => write!(f, "inf"),
        }
    }
}

/// A curve through the point, its multiplicity there, and the pullback of
/// the bundle to its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRestriction {
    pub curve_label: String,
    pub mult_x: u64,
    pub restricted: CurveBundle,
}

impl CurveRestriction {
    pub fn new(curve_label: impl Into<String>, mult_x: u64, restricted: CurveBundle) -> Result<Self> {
        if mult_x == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(Self { curve_label: curve_label.into(), mult_x, restricted })
    }

    pub fn value(&self) -> Rational {
        seshadri_on_curve(&self.restricted, self.mult_x).expect("multiplicity checked at construction")
    }
}

/// Bounds on the Seshadri constant at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriEstimate {
    /// Infimum over the supplied curves.
    pub upper: ExtendedRational,
    /// Set when the supplied curves are asserted to include a minimizing one.
    pub catalog_complete: bool,
    pub lower: Option<ExtendedRational>,
}

impl SeshadriEstimate {
    pub fn upper_only(upper: ExtendedRational) -> Self {
        Self { upper, catalog_complete: false, lower: None }
    }

    pub fn exact(value: ExtendedRational) -> Self {
        Self { upper: value, catalog_complete: true, lower: None }
    }

    /// The exact value, available only for complete catalogs.
    pub fn exact_value(&self) -> Option<&ExtendedRational> {
        self.catalog_complete.then_some(&self.upper)
    }

    /// Best certified lower bound: the exact value when known, else `lower`.
    pub fn certified_lower(&self) -> Option<&ExtendedRational> {
        let exact = self.exact_value();
        match (exact, self.lower.as_ref()) {
            (Some(e), Some(l)) => Some(e.max(l)),
            (Some(e), None) => Some(e),
            (None, l) => l,
        }
    }
}

/// Minimum over the restrictions; an empty catalog gives `+inf`.
pub fn estimate_from_catalog(restrictions: &[CurveRestriction], complete: bool) -> SeshadriEstimate {
    let upper = restrictions
        .iter()
        .map(|r| ExtendedRational::Finite(r.value()))
        .min()
        .unwrap_or(ExtendedRational::PosInfinity);
    SeshadriEstimate { upper, catalog_complete: complete, lower: None }
}

/// Smallest summand degree over all invariant lines through a torus-fixed point.
pub fn toric_seshadri(invariant_line_splittings: &[Vec<i64>]) -> Result<i64> {
    if invariant_line_splittings.is_empty() {
        return Err(Error::InvalidInput("at least one invariant line is required".into()));
    }
    invariant_line_splittings
        .iter()
        .map(|line| {
            line.iter()
                .copied()
                .min()
                .ok_or_else(|| Error::InvalidInput("an invariant line has no summands".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(|mins| mins.into_iter().min().expect("non-empty"))
}

/// `(s / (binom(n+r-1, n) * mult))^(1/n)` from the top Segre number of the dual.
pub fn segre_upper_bound(
    s_n_dual: &Rational,
    n: u32,
    r: u64,
    mult_x: u64,
    precision: &Rational,
) -> Result<ExactOrInterval> {
    if s_n_dual.is_negative() {
        return Err(Error::InvalidInput(format!("Segre number {s_n_dual} is negative")));
    }
    if n == 0 || r == 0 {
        return Err(Error::InvalidInput("n and r must be positive".into()));
    }
    if mult_x == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let denom = binomial(u64::from(n) + r - 1, u64::from(n)) * BigInt::from(mult_x);
    nth_root(&(s_n_dual / Rational::from_integer(denom)), n, precision)
}

/// Upper bound from the determinant: `eps_det / r`.
pub fn det_upper_bound(eps_det: &Rational, r: u64) -> Result<Rational> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(eps_det / Rational::from_integer(BigInt::from(r)))
}

/// One factor in a tensor product with a known lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundPart {
    /// A tensor factor with Seshadri constant at least `bound`.
    Factor { label: String, bound: Rational },
    /// `Sym^degree` of a bundle with Seshadri constant at least `bound`.
    SymPower { label: String, degree: u64, bound: Rational },
    /// A twist by `t * h` with `t >= 0` and the constant of `h` at least `bound`.
    Twist { label: String, t: Rational, bound: Rational },
}

impl BoundPart {
    pub fn factor(label: impl Into<String>, bound: Rational) -> Self {
        Self::Factor { label: label.into(), bound }
    }

    pub fn label(&self) -> &str {
        match self {
            Self::Factor { label, .. } | Self::SymPower { label, .. } | Self::Twist { label, .. } => label,
        }
    }

    fn contribution(&self) -> Result<Rational> {
        match self {
            Self::Factor { bound, .. } => Ok(bound.clone()),
            Self::SymPower { degree, bound, .. } => Ok(bound * Rational::from_integer(BigInt::from(*degree))),
            Self::Twist { t, bound, .. } => {
                if t.is_negative() {
                    return Err(Error::InvalidInput(format!("twist coefficient {t} must be nonnegative")));
                }
                Ok(t * bound)
            }
        }
    }
}

/// Lower bound for the tensor product of the parts: the sum of contributions.
pub fn combine_lower_bounds(parts: &[BoundPart]) -> Result<Rational> {
    parts.iter().map(BoundPart::contribution).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmplenessVerdict {
    Ample,
    NotAmple,
    Unknown,
}

impl fmt::Display for AmplenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Ample => "Ample",
            Self::NotAmple => "NotAmple",
            Self::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// Verdict over estimates at a covering family of points.
pub fn ampleness_verdict(point_estimates: &[SeshadriEstimate]) -> AmplenessVerdict {
    let zero = ExtendedRational::Finite(Rational::zero());
    if point_estimates.iter().any(|e| e.exact_value().is_some_and(|v| *v <= zero)) {
        return AmplenessVerdict::NotAmple;
    }
    let lowers: Option<Vec<&ExtendedRational>> =
        point_estimates.iter().map(SeshadriEstimate::certified_lower).collect();
    match lowers {
        Some(ls) if !ls.is_empty() && ls.iter().all(|l| l.is_positive()) => AmplenessVerdict::Ample,
        _ => AmplenessVerdict::Unknown,
    }
}

/// Classes of varieties with a known Seshadri constant of the tangent bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnownVariety {
    ProjectiveSpace(u32),
    HomogeneousNonPn,
    GeneralTypeOrPsefCanonical,
    CalabiYauLike,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Exact(ExtendedRational),
    UpperBound(ExtendedRational),
}

impl CatalogEntry {
    pub fn note(&self) -> &'static str {
        match self {
            Self::Exact(_) => "exact value at every point",
            Self::UpperBound(_) => "upper bound at every point",
        }
    }
}

pub fn known_value(kind: KnownVariety) -> Result<CatalogEntry> {
    let fin = |n: i64| ExtendedRational::Finite(Rational::from_integer(BigInt::from(n)));
    Ok(match kind {
        KnownVariety::ProjectiveSpace(0) => {
            return Err(Error::InvalidInput("projective space needs dimension at least 1".into()))
        }
        KnownVariety::ProjectiveSpace(1) => CatalogEntry::Exact(fin(2)),
        KnownVariety::ProjectiveSpace(_) => CatalogEntry::Exact(fin(1)),
        KnownVariety::HomogeneousNonPn => CatalogEntry::Exact(fin(0)),
        // the value at a general point
        KnownVariety::GeneralTypeOrPsefCanonical => CatalogEntry::Exact(ExtendedRational::NegInfinity),
        KnownVariety::CalabiYauLike => CatalogEntry::UpperBound(fin(0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::{int, rat};

    fn line_restriction(label: &str, pairs: &[(u64, i64)], mult: u64) -> CurveRestriction {
        CurveRestriction::new(label, mult, CurveBundle::from_pairs(pairs, int(0)).unwrap()).unwrap()
    }

    #[test]
    fn catalog_estimates() {
        let tp2 = [line_restriction("line", &[(1, 2), (1, 1)], 1)];
        assert_eq!(estimate_from_catalog(&tp2, false).upper, int(1).into());
        let one = [line_restriction("c", &[(1, 5)], 1)];
        assert_eq!(estimate_from_catalog(&one, true).exact_value(), Some(&int(5).into()));
        let two = [
            line_restriction("a", &[(2, 3)], 1),
            line_restriction("b", &[(3, 4)], 1),
        ];
        assert_eq!(estimate_from_catalog(&two, false).upper, rat(4, 3).into());
        assert_eq!(estimate_from_catalog(&[], false).upper, ExtendedRational::PosInfinity);
    }

    #[test]
    fn toric_rule() {
        assert_eq!(toric_seshadri(&[vec![2, 1, 1], vec![2, 1, 1]]).unwrap(), 1);
        assert_eq!(toric_seshadri(&[vec![2]]).unwrap(), 2);
        assert_eq!(toric_seshadri(&[vec![3, 4], vec![2, 6]]).unwrap(), 2);
        assert!(toric_seshadri(&[]).is_err());
        assert!(toric_seshadri(&[vec![]]).is_err());
    }

    #[test]
    fn segre_bounds() {
        let p = rat(1, 1_000_000);
        assert_eq!(segre_upper_bound(&int(12), 2, 2, 1, &p).unwrap(), ExactOrInterval::Exact(int(2)));
        assert_eq!(segre_upper_bound(&int(1), 1, 1, 1, &p).unwrap(), ExactOrInterval::Exact(int(1)));
        assert_eq!(segre_upper_bound(&int(16), 4, 1, 1, &p).unwrap(), ExactOrInterval::Exact(int(2)));
        assert!(segre_upper_bound(&int(-1), 2, 2, 1, &p).is_err());
    }

    #[test]
    fn det_bounds() {
        assert_eq!(det_upper_bound(&int(3), 2).unwrap(), rat(3, 2));
        assert_eq!(det_upper_bound(&int(0), 5).unwrap(), int(0));
        assert_eq!(det_upper_bound(&rat(7, 2), 3).unwrap(), rat(7, 6));
        assert!(det_upper_bound(&int(1), 0).is_err());
    }

    #[test]
    fn lower_bound_combinators() {
        let parts = [BoundPart::factor("V", int(1)), BoundPart::factor("W", rat(1, 2))];
        assert_eq!(combine_lower_bounds(&parts).unwrap(), rat(3, 2));
        let sym = [BoundPart::SymPower { label: "V".into(), degree: 3, bound: int(2) }];
        assert_eq!(combine_lower_bounds(&sym).unwrap(), int(6));
        let tw = [
            BoundPart::factor("V", rat(1, 3)),
            BoundPart::Twist { label: "h".into(), t: rat(1, 2), bound: int(4) },
        ];
        assert_eq!(combine_lower_bounds(&tw).unwrap(), rat(7, 3));
        let bad = [BoundPart::Twist { label: "h".into(), t: int(-1), bound: int(1) }];
        assert!(combine_lower_bounds(&bad).is_err());
    }

    #[test]
    fn verdicts() {
        let exact1 = SeshadriEstimate::exact(int(1).into());
        assert_eq!(ampleness_verdict(&[exact1.clone(), exact1.clone()]), AmplenessVerdict::Ample);
        let exact0 = SeshadriEstimate::exact(int(0).into());
        assert_eq!(ampleness_verdict(&[exact1.clone(), exact0]), AmplenessVerdict::NotAmple);
        let ub = SeshadriEstimate::upper_only(int(2).into());
        assert_eq!(ampleness_verdict(&[ub.clone(), ub]), AmplenessVerdict::Unknown);
        assert_eq!(ampleness_verdict(&[]), AmplenessVerdict::Unknown);
        let lb = SeshadriEstimate { upper: int(3).into(), catalog_complete: false, lower: Some(rat(1, 2).into()) };
        assert_eq!(ampleness_verdict(&[lb, exact1]), AmplenessVerdict::Ample);
    }

    #[test]
    fn catalog_values() {
        assert_eq!(known_value(KnownVariety::ProjectiveSpace(1)).unwrap(), CatalogEntry::Exact(int(2).into()));
        assert_eq!(known_value(KnownVariety::ProjectiveSpace(4)).unwrap(), CatalogEntry::Exact(int(1).into()));
        assert_eq!(known_value(KnownVariety::HomogeneousNonPn).unwrap(), CatalogEntry::Exact(int(0).into()));
        assert_eq!(
            known_value(KnownVariety::GeneralTypeOrPsefCanonical).unwrap(),
            CatalogEntry::Exact(ExtendedRational::NegInfinity)
        );
        assert_eq!(known_value(KnownVariety::CalabiYauLike).unwrap(), CatalogEntry::UpperBound(int(0).into()));
        assert!(known_value(KnownVariety::ProjectiveSpace(0)).is_err());
    }

    #[test]
    fn extended_order() {
        let mut v = vec![ExtendedRational::PosInfinity, int(3).into(), ExtendedRational::NegInfinity, int(-7).into()];
        v.sort();
        assert_eq!(v, vec![ExtendedRational::NegInfinity, int(-7).into(), int(3).into(), ExtendedRational::PosInfinity]);
    }
}
