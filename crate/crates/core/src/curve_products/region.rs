use num_traits::{One, Signed};

use super::certify::{certify_nef, Verdict};
use super::{CxCClass, Generality, Genus};
use crate::error::{Error, Result};
use crate::exact_num::Rational;

/// One grid point of a region sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub a: Rational,
    pub b: Rational,
    pub verdict: Verdict,
    pub generality: Generality,
}

/// Certifies `a f1 + b f2 - d` on the grid `a_lo + i*step <= a_hi`,
/// `b_lo + j*step <= b_hi`, row by row in `b`.
pub fn region_sample(
    g: Genus,
    a_range: (&Rational, &Rational),
    b_range: (&Rational, &Rational),
    step: &Rational,
    max_generality: Generality,
) -> Result<Vec<GridCell>> {
    if !step.is_positive() {
        return Err(Error::InvalidInput(format!("step {step} must be positive")));
    }
    let axis = |(lo, hi): (&Rational, &Rational)| {
        let mut out = Vec::new();
        let mut x = lo.clone();
        while &x <= hi {
            out.push(x.clone());
            x += step;
        }
        out
    };
    let (xs, ys) = (axis(a_range), axis(b_range));
    let mut cells = Vec::with_capacity(xs.len() * ys.len());
    for b in &ys {
        for a in &xs {
            let class = CxCClass::rational(a.clone(), b.clone(), -Rational::one());
            let cert = certify_nef(&class, g, max_generality);
            cells.push(GridCell { a: a.clone(), b: b.clone(), verdict: cert.verdict, generality: cert.generality });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::{int, rat};

    #[test]
    fn genus_seven_band() {
        let g7 = Genus::new(7).unwrap();
        let cells = region_sample(g7, (&int(1), &int(20)), (&int(1), &int(5)), &rat(1, 4), Generality::VeryGeneral).unwrap();
        assert_eq!(cells.len(), 77 * 17);
        let at = |a: i64, b: i64| cells.iter().find(|c| c.a == int(a) && c.b == int(b)).unwrap().verdict;
        assert_eq!(at(14, 2), Verdict::Nef);
        assert_eq!(at(8, 2), Verdict::Unknown);
        assert_eq!(at(1, 1), Verdict::NotNef);
    }

    #[test]
    fn empty_and_bad_ranges() {
        let g3 = Genus::new(3).unwrap();
        assert!(region_sample(g3, (&int(5), &int(1)), (&int(1), &int(2)), &int(1), Generality::Arbitrary).unwrap().is_empty());
        assert!(region_sample(g3, (&int(1), &int(2)), (&int(1), &int(2)), &int(0), Generality::Arbitrary).is_err());
    }

    #[test]
    fn kouvidakis_cell() {
        let g9 = Genus::new(9).unwrap();
        let cells = region_sample(g9, (&int(4), &int(4)), (&int(4), &int(4)), &int(1), Generality::VeryGeneral).unwrap();
        assert_eq!(cells[0].verdict, Verdict::Nef);
        assert_eq!(cells[0].generality, Generality::VeryGeneral);
    }
}
