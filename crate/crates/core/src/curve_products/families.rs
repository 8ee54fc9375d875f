use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::certify::{NefCertificate, Sampling};
use super::{is_nonneg, qi, CxCClass, Generality, Genus};
use crate::error::{Error, Result};
use crate::exact_num::{sqrt_floor, QuadExt, Rational};

/// Families of classes known to be nef.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    Fiber,
    NonnegativeCriterion,
    VojtaCurve,
    VojtaCurveSwapped,
    KernelBundle,
    KernelBundleSwapped,
    Kouvidakis,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::Fiber,
        FamilyTag::NonnegativeCriterion,
        FamilyTag::VojtaCurve,
        FamilyTag::VojtaCurveSwapped,
        FamilyTag::KernelBundle,
        FamilyTag::KernelBundleSwapped,
        FamilyTag::Kouvidakis,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fiber => "fiber",
            Self::NonnegativeCriterion => "nonnegative-criterion",
            Self::VojtaCurve => "vojta-curve",
            Self::VojtaCurveSwapped => "vojta-curve-swapped",
            Self::KernelBundle => "kernel-bundle",
            Self::KernelBundleSwapped => "kernel-bundle-swapped",
            Self::Kouvidakis => "kouvidakis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == s)
    }

    /// Hypothesis on the curve needed for members of the family to be nef.
    pub fn generality(self) -> Generality {
        match self {
            Self::Fiber | Self::NonnegativeCriterion | Self::VojtaCurve | Self::VojtaCurveSwapped => {
                Generality::Arbitrary
            }
            Self::KernelBundle | Self::KernelBundleSwapped => Generality::General,
            Self::Kouvidakis => Generality::VeryGeneral,
        }
    }

    /// Smallest genus for which the family is available.
    pub fn min_genus(self) -> u32 {
        match self {
            Self::KernelBundle | Self::KernelBundleSwapped | Self::Kouvidakis => 3,
            _ => 2,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            Self::VojtaCurve => Self::VojtaCurveSwapped,
            Self::VojtaCurveSwapped => Self::VojtaCurve,
            Self::KernelBundle => Self::KernelBundleSwapped,
            Self::KernelBundleSwapped => Self::KernelBundle,
            other => other,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A nef class together with the family that certifies it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub class: CxCClass,
    pub family: FamilyTag,
}

impl Generator {
    pub fn new(class: CxCClass, family: FamilyTag) -> Self {
        Self { class, family }
    }

    pub fn generality(&self) -> Generality {
        self.family.generality()
    }

    pub fn swapped(&self) -> Self {
        Self { class: self.class.swapped(), family: self.family.swapped() }
    }

    /// Checks from scratch that the class belongs to its family.
    pub fn validate(&self, g: Genus) -> std::result::Result<(), String> {
        let fail = |why: &str| Err(format!("{} is not a {} class: {why}", self.class, self.family));
        if g.get() < self.family.min_genus() {
            return fail(&format!("needs genus at least {}", self.family.min_genus()));
        }
        let (a, b, c) = (self.class.a(), self.class.b(), self.class.c());
        let minus_one = qi(-1);
        match self.family {
            FamilyTag::Fiber => {
                if self.class != CxCClass::f1() && self.class != CxCClass::f2() {
                    return fail("not a fiber");
                }
            }
            FamilyTag::NonnegativeCriterion => {
                let bound = c.scale(&(Rational::from_integer(BigInt::from(2)) * g.q() - Rational::from_integer(BigInt::from(2))));
                let pairing = a.try_add(b).and_then(|s| s.try_sub(&bound)).map_err(|e| e.to_string())?;
                if !(is_nonneg(a) && is_nonneg(b) && is_nonneg(c) && is_nonneg(&pairing)) {
                    return fail("needs a, b, c >= 0 and a + b >= c(2g - 2)");
                }
            }
            FamilyTag::VojtaCurve | FamilyTag::VojtaCurveSwapped => {
                let (x, y) = if self.family == FamilyTag::VojtaCurve { (a, b) } else { (b, a) };
                if *c != minus_one {
                    return fail("diagonal coefficient must be -1");
                }
                let u = y.add_rational(&-Rational::one());
                if u.sign() <= 0 || u > qi(1) {
                    return fail("the f2 parameter must lie in (1, 2]");
                }
                let curve = vojta2_curve_a(g, &u).map_err(|e| e.to_string())?;
                if *x < curve {
                    return fail("lies below the curve");
                }
            }
            FamilyTag::KernelBundle | FamilyTag::KernelBundleSwapped => {
                let (x, y) = if self.family == FamilyTag::KernelBundle { (a, b) } else { (b, a) };
                if *c != minus_one {
                    return fail("diagonal coefficient must be -1");
                }
                let Some(d) = x.to_rational().filter(|d| d.is_integer()) else {
                    return fail("the f1 coefficient must be an integer");
                };
                if d < Rational::from_integer(BigInt::from(thm_ii_threshold(g))) {
                    return fail("the f1 coefficient is below the threshold");
                }
                let need = Rational::one() + g.q() / (d - g.q());
                if *y < QuadExt::from_rational(need) {
                    return fail("the f2 coefficient is too small");
                }
            }
            FamilyTag::Kouvidakis => {
                if *c != minus_one {
                    return fail("diagonal coefficient must be -1");
                }
                let k = QuadExt::from_rational(kouvidakis_coefficient(g));
                if *a < k || *b < k {
                    return fail("coefficients below g/floor(sqrt g) + 1");
                }
            }
        }
        Ok(())
    }
}

/// `1 + 2 sqrt(g(g-1))`, the smallest `a` covered by the first Vojta family.
pub fn vojta_threshold(g: Genus) -> QuadExt {
    let gg = g.q() * (g.q() - Rational::one());
    QuadExt::sqrt_of(&gg).expect("nonnegative").scale(&Rational::from_integer(BigInt::from(2))).add_rational(&Rational::one())
}

/// `b = 1 + 2g / (a - 1 + sqrt((a-1)^2 - 4g(g-1)))` for `a >= 1 + 2 sqrt(g(g-1))`.
pub fn vojta_b(g: Genus, a: &QuadExt) -> Result<QuadExt> {
    let threshold = vojta_threshold(g);
    if *a < threshold {
        return Err(Error::BelowVojtaThreshold { a: a.to_string(), threshold: threshold.to_string() });
    }
    let x = a.add_rational(&-Rational::one());
    let four_gg = Rational::from_integer(BigInt::from(4)) * g.q() * (g.q() - Rational::one());
    let disc = x.try_mul(&x)?.add_rational(&-four_gg);
    let root = disc.sqrt()?;
    // rationalized: 1 + (x - root) / (2(g-1))
    let denom = Rational::from_integer(BigInt::from(2)) * (g.q() - Rational::one());
    Ok(x.try_sub(&root)?.scale(&denom.recip()).add_rational(&Rational::one()))
}

/// `A(u) = g/u + (g-1)u + 1`, the `f1` coefficient on the second Vojta family at `b = 1 + u`.
pub fn vojta2_curve_a(g: Genus, u: &QuadExt) -> Result<QuadExt> {
    if u.sign() <= 0 {
        return Err(Error::InvalidInput(format!("b = 1 + ({u}) must exceed 1")));
    }
    let gq = g.q();
    Ok(u.recip()?.scale(&gq).try_add(&u.scale(&(&gq - Rational::one())))?.add_rational(&Rational::one()))
}

/// `a = g/(b-1) + (b-1)(g-1) + 1` for `b > 1`.
pub fn vojta2_a(g: Genus, b: &QuadExt) -> Result<QuadExt> {
    vojta2_curve_a(g, &b.add_rational(&-Rational::one()))
}

pub(crate) fn kouvidakis_coefficient(g: Genus) -> Rational {
    let s = sqrt_floor(&BigInt::from(g.get()));
    g.q() / Rational::from_integer(s) + Rational::one()
}

/// `(g/floor(sqrt g) + 1)(f1 + f2) - d`.
pub fn kouvidakis_class(g: Genus) -> (CxCClass, NefCertificate) {
    let k = kouvidakis_coefficient(g);
    let class = CxCClass::rational(k.clone(), k, -Rational::one());
    let cert = NefCertificate::from_generator(Generator::new(class.clone(), FamilyTag::Kouvidakis));
    (class, cert)
}

/// `floor(3g/2) + 3`.
pub fn thm_ii_threshold(g: Genus) -> i64 {
    i64::from(3 * g.get() / 2) + 3
}

/// `d f1 + (1 + g/(d-g)) f2 - d` for integers `d >= floor(3g/2) + 3`, `g >= 3`.
pub fn thm_ii_class(g: Genus, d: i64) -> Result<(CxCClass, NefCertificate)> {
    if g.get() < 3 {
        return Err(Error::GenusTooSmall { min: 3, got: g.get() });
    }
    let threshold = thm_ii_threshold(g);
    if d < threshold {
        return Err(Error::BelowKernelThreshold { d, threshold });
    }
    let dq = Rational::from_integer(BigInt::from(d));
    let b = Rational::one() + g.q() / (&dq - g.q());
    let class = CxCClass::rational(dq, b, -Rational::one());
    let cert = NefCertificate::from_generator(Generator::new(class.clone(), FamilyTag::KernelBundle));
    Ok((class, cert))
}

/// `(g-1)(f1 + f2) + d`.
pub fn theta_class(g: Genus) -> CxCClass {
    let k = g.q() - Rational::one();
    CxCClass::rational(k.clone(), k, Rational::one())
}

/// `a f1 + (1 + g/(a-1)) f2 - d`, which has self-intersection 0.
pub fn conjecture_class(g: Genus, a: &QuadExt) -> Result<CxCClass> {
    let x = a.add_rational(&-Rational::one());
    if x.sign() <= 0 {
        return Err(Error::InvalidInput(format!("a = {a} must exceed 1")));
    }
    let b = x.recip()?.scale(&g.q()).add_rational(&Rational::one());
    CxCClass::plane_point(a.clone(), b)
}

/// Vojta curve point at `b = 1 + u`.
pub(crate) fn vojta_generator(g: Genus, u: &QuadExt) -> Result<Generator> {
    let a = vojta2_curve_a(g, u)?;
    Ok(Generator::new(CxCClass::plane_point(a, u.add_rational(&Rational::one()))?, FamilyTag::VojtaCurve))
}

/// Nef generators up to the given generality: fibers, the nonnegative
/// criterion classes, sampled Vojta curve points with their swaps, the
/// kernel-bundle points with their swaps, and the Kouvidakis point.
pub fn generator_set(g: Genus, max_generality: Generality, sampling: &Sampling) -> Vec<Generator> {
    let mut out = vec![
        Generator::new(CxCClass::f1(), FamilyTag::Fiber),
        Generator::new(CxCClass::f2(), FamilyTag::Fiber),
        Generator::new(theta_class(g), FamilyTag::NonnegativeCriterion),
    ];
    let two_g_minus_two = BigInt::from(2 * i64::from(g.get()) - 2);
    let extremal = CxCClass::rational(Rational::from_integer(two_g_minus_two), Rational::zero(), Rational::one());
    out.push(Generator::new(extremal.clone(), FamilyTag::NonnegativeCriterion));
    out.push(Generator::new(extremal.swapped(), FamilyTag::NonnegativeCriterion));
    let n = sampling.vojta_points.max(1);
    for j in 1..=n {
        let u = QuadExt::from_rational(Rational::new(BigInt::from(j), BigInt::from(n)));
        let p = vojta_generator(g, &u).expect("u > 0");
        out.push(p.swapped());
        out.push(p);
    }
    if max_generality >= Generality::General && g.get() >= 3 {
        let gi = i64::from(g.get());
        let k_max = (gi - 5).div_euclid(2);
        for k in 1..=k_max {
            let (class, _) = thm_ii_class(g, 2 * gi - k).expect("index range respects the threshold");
            let p = Generator::new(class, FamilyTag::KernelBundle);
            out.push(p.swapped());
            out.push(p);
        }
    }
    if max_generality >= Generality::VeryGeneral && g.get() >= 3 {
        out.push(Generator::new(kouvidakis_class(g).0, FamilyTag::Kouvidakis));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::{int, rat};

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn quad(p: Rational, q: Rational, d: i64) -> QuadExt {
        QuadExt::new(p, q, BigInt::from(d)).unwrap()
    }

    #[test]
    fn vojta_b_values() {
        let b = vojta_b(g(2), &qi(5)).unwrap();
        assert_eq!(b, quad(int(3), int(-1), 2));
        assert!((b.to_f64() - (1.0 + 4.0 / (4.0 + 2.0 * 2f64.sqrt()))).abs() < 1e-12);
        let t = quad(int(1), int(2), 2);
        assert_eq!(vojta_b(g(2), &t).unwrap(), quad(int(1), int(1), 2));
        assert!(matches!(vojta_b(g(2), &qi(3)), Err(Error::BelowVojtaThreshold { .. })));
    }

    #[test]
    fn vojta2_values() {
        assert_eq!(vojta2_a(g(7), &qi(2)).unwrap(), qi(14));
        assert_eq!(vojta2_a(g(7), &QuadExt::from_rational(rat(13, 6))).unwrap(), qi(14));
        assert_eq!(vojta2_a(g(2), &qi(2)).unwrap(), qi(4));
        assert!(vojta2_a(g(2), &qi(1)).is_err());
    }

    #[test]
    fn both_vojta_families_share_the_curve() {
        let a = qi(20);
        let b = vojta_b(g(3), &a).unwrap();
        assert_eq!(vojta2_a(g(3), &b).unwrap(), a);
    }

    #[test]
    fn named_classes() {
        assert_eq!(kouvidakis_class(g(9)).0, CxCClass::from_ints(4, 4, -1));
        assert_eq!(kouvidakis_class(g(4)).0, CxCClass::from_ints(3, 3, -1));
        assert_eq!(kouvidakis_class(g(7)).0, CxCClass::rational(rat(9, 2), rat(9, 2), int(-1)));
        assert_eq!(thm_ii_class(g(7), 13).unwrap().0, CxCClass::rational(int(13), rat(13, 6), int(-1)));
        assert_eq!(thm_ii_class(g(3), 7).unwrap().0, CxCClass::rational(int(7), rat(7, 4), int(-1)));
        assert_eq!(
            thm_ii_class(g(7), 12).unwrap_err(),
            Error::BelowKernelThreshold { d: 12, threshold: 13 }
        );
        assert!(thm_ii_class(g(2), 10).is_err());
    }

    #[test]
    fn generator_contents() {
        let s = Sampling::default();
        let gens = generator_set(g(7), Generality::VeryGeneral, &s);
        let has = |a: Rational, b: Rational| gens.iter().any(|x| x.class == CxCClass::rational(a.clone(), b.clone(), int(-1)));
        assert!(has(int(13), rat(13, 6)));
        assert!(has(rat(13, 6), int(13)));
        assert!(has(rat(9, 2), rat(9, 2)));
        let arb = generator_set(g(7), Generality::Arbitrary, &s);
        assert!(arb.iter().all(|x| x.generality() == Generality::Arbitrary));
        assert!(arb.iter().any(|x| x.class == CxCClass::f1()));
        let g5 = generator_set(g(5), Generality::VeryGeneral, &s);
        assert!(!g5.iter().any(|x| matches!(x.family, FamilyTag::KernelBundle | FamilyTag::KernelBundleSwapped)));
        for x in &gens {
            x.validate(g(7)).unwrap();
        }
    }

    #[test]
    fn validation_rejects_impostors() {
        let fake = Generator::new(CxCClass::from_ints(8, 2, -1), FamilyTag::VojtaCurve);
        assert!(fake.validate(g(7)).is_err());
        let fake = Generator::new(CxCClass::rational(int(12), rat(13, 6), int(-1)), FamilyTag::KernelBundle);
        assert!(fake.validate(g(7)).is_err());
        let fake = Generator::new(CxCClass::from_ints(4, 4, -1), FamilyTag::Kouvidakis);
        assert!(fake.validate(g(7)).is_err());
        let fake = Generator::new(CxCClass::from_ints(1, 1, 1), FamilyTag::NonnegativeCriterion);
        assert!(fake.validate(g(3)).is_err());
    }

    #[test]
    fn conjecture_classes_are_isotropic() {
        let c = conjecture_class(g(5), &qi(3)).unwrap();
        assert_eq!(super::super::self_intersection(&c, g(5)), qi(0));
        assert!(conjecture_class(g(5), &qi(1)).is_err());
    }
}
