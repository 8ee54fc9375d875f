//! Re-evaluates certificate documents from their text alone.
//!
//! Nothing here calls the certifier or its verifier: family membership,
//! pairings and the witness sums are recomputed from the closed forms on
//! C x C (`f1^2 = f2^2 = 0`, `f1.f2 = f1.d = f2.d = 1`, `d^2 = 2 - 2g`).

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use seshadri_core::exact_num::{parse_quad, sqrt_floor, Biquad, BiquadField, QuadExt, Rational};

use crate::doc::{CertificateDocument, CertificateEntry, ClassDoc, WitnessDoc, CERT_SCHEMA};
use crate::parse::parse_class;

type Check = Result<(), String>;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn level(s: &str) -> Result<u8, String> {
    match s {
        "arbitrary" => Ok(0),
        "general" => Ok(1),
        "very-general" => Ok(2),
        other => Err(format!("unknown generality `{other}`")),
    }
}

#[derive(Clone)]
struct Triple {
    a: QuadExt,
    b: QuadExt,
    c: QuadExt,
}

fn num(s: &str) -> Result<QuadExt, String> {
    parse_quad(s).map_err(|e| format!("`{s}`: {e}"))
}

fn read_class(doc: &ClassDoc) -> Result<Triple, String> {
    let t = Triple { a: num(&doc.a)?, b: num(&doc.b)?, c: num(&doc.c)? };
    let parsed = parse_class(&doc.text).map_err(|e| format!("class text `{}`: {}", doc.text, e.message))?;
    if (parsed.a(), parsed.b(), parsed.c()) != (&t.a, &t.b, &t.c) {
        return Err(format!("class text `{}` disagrees with its coefficients", doc.text));
    }
    Ok(t)
}

// generator classes repeat across certificates; both tables only hold
// results that were fully checked
const MEMO_LIMIT: usize = 1 << 12;

thread_local! {
    static CLASSES: RefCell<HashMap<ClassDoc, Triple>> = RefCell::default();
    static MEMBERS: RefCell<HashSet<(String, ClassDoc, u32)>> = RefCell::default();
}

fn read_generator(doc: &ClassDoc) -> Result<Triple, String> {
    if let Some(t) = CLASSES.with(|m| m.borrow().get(doc).cloned()) {
        return Ok(t);
    }
    let t = read_class(doc)?;
    CLASSES.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_LIMIT {
            m.clear();
        }
        m.insert(doc.clone(), t.clone());
    });
    Ok(t)
}

fn check_generator(family: &str, doc: &ClassDoc, t: &Triple, g: u32) -> Check {
    let key = (family.to_string(), doc.clone(), g);
    if MEMBERS.with(|m| m.borrow().contains(&key)) {
        return Ok(());
    }
    check_member(family, t, g)?;
    MEMBERS.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_LIMIT {
            m.clear();
        }
        m.insert(key);
    });
    Ok(())
}

fn mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, String> {
    x.try_mul(y).map_err(|e| e.to_string())
}

fn add(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, String> {
    x.try_add(y).map_err(|e| e.to_string())
}

/// `D.f1`, `D.f2`, `D.d`, `D.D` for `D = a f1 + b f2 + c d`.
fn pairings(t: &Triple, g: u32) -> Result<[(&'static str, QuadExt); 4], String> {
    let dd = q(2) - q(2) * q(i64::from(g));
    let df1 = add(&t.b, &t.c)?;
    let df2 = add(&t.a, &t.c)?;
    let dd_ = add(&add(&t.a, &t.b)?, &t.c.scale(&dd))?;
    let ab = mul(&t.a, &t.b)?;
    let cab = mul(&t.c, &add(&t.a, &t.b)?)?;
    let cc = mul(&t.c, &t.c)?;
    let square = add(&add(&ab.scale(&q(2)), &cab.scale(&q(2)))?, &cc.scale(&dd))?;
    Ok([("D.f1", df1), ("D.f2", df2), ("D.d", dd_), ("D.D", square)])
}

fn family_level(family: &str) -> Result<u8, String> {
    match family {
        "fiber" | "nonnegative-criterion" | "vojta-curve" | "vojta-curve-swapped" => Ok(0),
        "kernel-bundle" | "kernel-bundle-swapped" => Ok(1),
        "kouvidakis" => Ok(2),
        other => Err(format!("unknown family `{other}`")),
    }
}

/// Checks that `t` lies in the named family of nef classes.
fn check_member(family: &str, t: &Triple, g: u32) -> Check {
    let gq = q(i64::from(g));
    let minus_one = QuadExt::from_int(-1);
    let fail = |why: &str| Err(format!("{family} generator {}, {}, {}: {why}", t.a, t.b, t.c));
    let (x, y) = if family.ends_with("-swapped") { (&t.b, &t.a) } else { (&t.a, &t.b) };
    match family {
        "fiber" => {
            let zero = QuadExt::zero();
            let one = QuadExt::one();
            let ok = t.c == zero && ((t.a == one && t.b == zero) || (t.a == zero && t.b == one));
            if !ok {
                return fail("not f1 or f2");
            }
        }
        "nonnegative-criterion" => {
            let slack = add(&add(&t.a, &t.b)?, &t.c.scale(&(q(2) - q(2) * &gq)))?;
            if [&t.a, &t.b, &t.c, &slack].iter().any(|v| v.sign() < 0) {
                return fail("needs a, b, c >= 0 and a + b >= (2g - 2)c");
            }
        }
        "vojta-curve" | "vojta-curve-swapped" => {
            if t.c != minus_one {
                return fail("d coefficient is not -1");
            }
            let u = y.add_rational(&-Rational::one());
            if u.sign() <= 0 || u.add_rational(&-Rational::one()).sign() > 0 {
                return fail("parameter outside (1, 2]");
            }
            // x >= g/u + (g-1)u + 1, multiplied through by u > 0
            let lhs = mul(x, &u)?;
            let rhs = add(&mul(&u, &u)?.scale(&(&gq - Rational::one())), &u)?.add_rational(&gq);
            if lhs.try_sub(&rhs).map_err(|e| e.to_string())?.sign() < 0 {
                return fail("below the curve");
            }
        }
        "kernel-bundle" | "kernel-bundle-swapped" => {
            if g < 3 {
                return fail("needs g >= 3");
            }
            if t.c != minus_one {
                return fail("d coefficient is not -1");
            }
            let Some(dv) = x.to_rational().filter(Rational::is_integer) else {
                return fail("degree is not an integer");
            };
            if dv < q(i64::from(3 * g / 2) + 3) {
                return fail("degree below floor(3g/2) + 3");
            }
            let need = Rational::one() + &gq / (dv - &gq);
            if y.add_rational(&-need).sign() < 0 {
                return fail("second coefficient too small");
            }
        }
        "kouvidakis" => {
            if g < 3 {
                return fail("needs g >= 3");
            }
            if t.c != minus_one {
                return fail("d coefficient is not -1");
            }
            let k = &gq / Rational::from_integer(sqrt_floor(&BigInt::from(g))) + Rational::one();
            if t.a.add_rational(&-k.clone()).sign() < 0 || t.b.add_rational(&-k).sign() < 0 {
                return fail("coefficients below g/floor(sqrt g) + 1");
            }
        }
        other => return Err(format!("unknown family `{other}`")),
    }
    Ok(())
}

fn check_combination(entry: &CertificateEntry, d: &Triple, g: u32, terms: &[crate::doc::TermDoc]) -> Check {
    let cert_level = level(&entry.generality)?;
    let mut parsed = Vec::with_capacity(terms.len());
    let mut radicands: Vec<BigInt> = Vec::new();
    let mut note = |x: &QuadExt| {
        if !x.is_rational() && !radicands.contains(x.d()) {
            radicands.push(x.d().clone());
        }
    };
    for x in [&d.a, &d.b, &d.c] {
        note(x);
    }
    let mut families: Vec<&str> = Vec::new();
    for t in terms {
        let w = num(&t.weight)?;
        let class = read_generator(&t.class)?;
        if w.sign() < 0 {
            return Err(format!("negative weight {w}"));
        }
        if family_level(&t.family)? > cert_level {
            return Err(format!("{} needs more than a {} point", t.family, entry.generality));
        }
        check_generator(&t.family, &t.class, &class, g)?;
        for x in [&w, &class.a, &class.b, &class.c] {
            note(x);
        }
        if !families.contains(&t.family.as_str()) {
            families.push(&t.family);
        }
        parsed.push((w, class));
    }
    let expected_family = if families.is_empty() { "fiber".to_string() } else { families.join("+") };
    if entry.family != expected_family {
        return Err(format!("family `{}` does not match the terms ({expected_family})", entry.family));
    }
    if radicands.len() > 2 {
        return Err("more than two radicands in one certificate".into());
    }
    let field = BiquadField::new(
        radicands.first().cloned().unwrap_or_else(BigInt::zero),
        radicands.get(1).cloned().unwrap_or_else(BigInt::zero),
    );
    let embed = |x: &QuadExt| field.embed(x).map_err(|e| e.to_string());
    let zero = field.from_rational(Rational::zero());
    let mut sums: [Biquad; 3] = [zero.clone(), zero.clone(), zero];
    for (w, class) in &parsed {
        let w = embed(w)?;
        for (s, x) in sums.iter_mut().zip([&class.a, &class.b, &class.c]) {
            *s = s.add(&w.mul(&embed(x)?));
        }
    }
    if !embed(&d.c)?.sub(&sums[2]).is_zero() {
        return Err("weighted d coefficients do not add up".into());
    }
    // the remainder must be a nonnegative combination of the fibers
    for (x, s, name) in [(&d.a, &sums[0], "f1"), (&d.b, &sums[1], "f2")] {
        if embed(x)?.sub(s).sign() < 0 {
            return Err(format!("weighted {name} coefficients exceed the class"));
        }
    }
    Ok(())
}

/// Rechecks one certificate for genus `g`.
pub fn recheck_entry(entry: &CertificateEntry, g: u32, max_generality: &str) -> Check {
    if g < 2 {
        return Err(format!("genus {g} is below 2"));
    }
    let d = read_class(&entry.class)?;
    let cert_level = level(&entry.generality)?;
    if cert_level > level(max_generality)? {
        return Err(format!("generality {} exceeds the allowed {max_generality}", entry.generality));
    }
    let values = pairings(&d, g)?;
    match (entry.verdict.as_str(), &entry.witness) {
        ("nef", WitnessDoc::Combination { terms }) => {
            if let Some((name, v)) = values.iter().find(|(_, v)| v.sign() < 0) {
                return Err(format!("a nef class cannot have {name} = {v}"));
            }
            check_combination(entry, &d, g, terms)
        }
        ("not-nef", WitnessDoc::Pairing { pairing, value }) => {
            let claimed = num(value)?;
            let Some((_, actual)) = values.iter().find(|(name, _)| name == pairing) else {
                return Err(format!("unknown pairing `{pairing}`"));
            };
            if *actual != claimed {
                return Err(format!("{pairing} is {actual}, the document says {claimed}"));
            }
            if claimed.sign() >= 0 {
                return Err(format!("{pairing} = {claimed} is not negative"));
            }
            Ok(())
        }
        ("unknown", WitnessDoc::None) => Ok(()),
        (v, _) => Err(format!("verdict `{v}` does not match its witness")),
    }
}

/// Rechecks every certificate in a document.
pub fn recheck_document(doc: &CertificateDocument) -> Check {
    if doc.schema != CERT_SCHEMA {
        return Err(format!("unsupported schema `{}`", doc.schema));
    }
    for (i, entry) in doc.certificates.iter().enumerate() {
        recheck_entry(entry, doc.genus, &doc.max_generality)
            .map_err(|e| format!("certificate {} ({}): {e}", i + 1, entry.class.text))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::CertificateEntry;
    use seshadri_core::curve_products::{certify_nef, Generality, Genus};

    fn entry(g: u32, text: &str, level: Generality) -> CertificateEntry {
        let d = parse_class(text).unwrap();
        CertificateEntry::new(&d, &certify_nef(&d, Genus::new(g).unwrap(), level))
    }

    #[test]
    fn goldens_recheck() {
        for text in ["13 f1 + 13/6 f2 - d", "13.7 f1 + 2 f2 - d", "14 f1 + 2 f2 - d", "8 f1 + 2 f2 - d", "2 f1 + 2 f2 - d"] {
            let e = entry(7, text, Generality::VeryGeneral);
            recheck_entry(&e, 7, "very-general").unwrap();
        }
    }

    #[test]
    fn tampering_is_caught() {
        let mut e = entry(7, "13.7 f1 + 2 f2 - d", Generality::General);
        recheck_entry(&e, 7, "general").unwrap();
        assert!(recheck_entry(&e, 7, "arbitrary").is_err());
        e.class.a = "13".into();
        e.class.text = "13 f1 + 2 f2 - d".into();
        assert!(recheck_entry(&e, 7, "general").is_err());

        let mut e = entry(7, "2 f1 + 2 f2 - d", Generality::Arbitrary);
        assert_eq!(e.witness, WitnessDoc::Pairing { pairing: "D.D".into(), value: "-12".into() });
        e.witness = WitnessDoc::Pairing { pairing: "D.D".into(), value: "-11".into() };
        assert!(recheck_entry(&e, 7, "arbitrary").is_err());

        let mut e = entry(7, "14 f1 + 2 f2 - d", Generality::Arbitrary);
        if let WitnessDoc::Combination { terms } = &mut e.witness {
            terms[0].family = "kouvidakis".into();
        }
        assert!(recheck_entry(&e, 7, "arbitrary").is_err());
    }

    #[test]
    fn membership_checks() {
        let t = |a: &str, b: &str| Triple { a: parse_quad(a).unwrap(), b: parse_quad(b).unwrap(), c: QuadExt::from_int(-1) };
        // A(1) = 2g at b = 2
        check_member("vojta-curve", &t("14", "2"), 7).unwrap();
        assert!(check_member("vojta-curve", &t("13", "2"), 7).is_err());
        check_member("vojta-curve-swapped", &t("2", "14"), 7).unwrap();
        check_member("kernel-bundle", &t("13", "13/6"), 7).unwrap();
        assert!(check_member("kernel-bundle", &t("12", "13/6"), 7).is_err());
        check_member("kouvidakis", &t("9", "9"), 7).unwrap();
    }
}
