use num_traits::One;

use super::families::vojta2_curve_a;
use super::{qi, Genus};
use crate::error::{Error, Result};
use crate::exact_num::{QuadExt, Rational};

/// A line through a point touching the curve `a = g/u + (g-1)u + 1`,
/// `b = 1 + u`, `u` in `(0, 1]`.
///
/// The line is `a = a_intercept + da_db * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyRecord {
    pub from: (QuadExt, QuadExt),
    pub touch_u: QuadExt,
    pub touch: (QuadExt, QuadExt),
    pub da_db: QuadExt,
    pub a_intercept: QuadExt,
    /// Discriminant of the line meeting the curve; zero for a tangent.
    pub discriminant: QuadExt,
}

impl TangencyRecord {
    pub fn a_at(&self, b: &QuadExt) -> Result<QuadExt> {
        self.a_intercept.try_add(&self.da_db.try_mul(b)?)
    }

    /// `db/da`, or `None` for a vertical line.
    pub fn db_da(&self) -> Option<QuadExt> {
        self.da_db.recip().ok()
    }
}

/// Every tangent from `point = (a, b)` to the curve with touch parameter in `(0, 1]`.
pub fn tangent_lines(g: Genus, point: (&QuadExt, &QuadExt)) -> Result<Vec<TangencyRecord>> {
    let (ap, bp) = point;
    let gq = g.q();
    let up = bp.add_rational(&-Rational::one());
    // K u^2 + 2g u - g u_P = 0
    let k = up.scale(&(&gq - Rational::one())).try_sub(ap)?.add_rational(&Rational::one());
    let mut roots = Vec::new();
    if k.is_zero() {
        roots.push(up.scale(&Rational::new(1.into(), 2.into())));
    } else {
        let disc = k.try_mul(&up)?.add_rational(&gq).scale(&gq);
        if disc.sign() < 0 {
            return Err(Error::NoTangency);
        }
        let root = disc.sqrt()?;
        let kinv = k.recip()?;
        for sgn in [1, -1] {
            let num = root.scale(&Rational::from_integer(sgn.into())).add_rational(&-gq.clone());
            let u = num.try_mul(&kinv)?;
            if !roots.contains(&u) {
                roots.push(u);
            }
        }
    }
    let mut out = Vec::new();
    for u in roots {
        if u.sign() <= 0 || u > qi(1) {
            continue;
        }
        out.push(record(g, (ap.clone(), bp.clone()), u)?);
    }
    out.sort_by(|x, y| y.touch_u.cmp(&x.touch_u));
    Ok(out)
}

/// The tangent from `point` whose touch point is nearest `b = 2`.
pub fn tangent_from_point(g: Genus, point: (&QuadExt, &QuadExt)) -> Result<TangencyRecord> {
    tangent_lines(g, point)?.into_iter().next().ok_or(Error::NoTangency)
}

fn record(g: Genus, from: (QuadExt, QuadExt), u: QuadExt) -> Result<TangencyRecord> {
    let gq = g.q();
    let a_t = vojta2_curve_a(g, &u)?;
    // slope in the u coordinate: A'(u) = (g - 1) - g/u^2
    let s = u.try_mul(&u)?.recip()?.scale(&-gq.clone()).add_rational(&(&gq - Rational::one()));
    let m = a_t.try_sub(&s.try_mul(&u)?)?;
    // (g - 1 - s) u^2 + (1 - m) u + g = 0 has a double root
    let one_minus_m = (-&m).add_rational(&Rational::one());
    let lead = (-&s).add_rational(&(&gq - Rational::one()));
    let discriminant = one_minus_m.try_mul(&one_minus_m)?.try_sub(&lead.scale(&(Rational::from_integer(4.into()) * &gq)))?;
    Ok(TangencyRecord {
        from,
        touch: (a_t, u.add_rational(&Rational::one())),
        touch_u: u,
        a_intercept: m.try_sub(&s)?,
        da_db: s,
        discriminant,
    })
}
