//! Text grammars for divisor classes on C x C, curve bundles and plain numbers.
//!
//! Classes are signed sums of terms `coef sym` with `sym` one of `f1`, `f2`,
//! `d` (alias `delta`). A coefficient is an integer, a fraction, a decimal,
//! `q*sqrt(n)`, `sqrt(n)` or a parenthesized surd such as `(13 + 2/7*sqrt(6))`.
//! Bundles are comma lists of `rank:degree` followed by an optional `twist=t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use seshadri_core::curve_bundles::{CurveBundle, SemistablePiece};
use seshadri_core::curve_products::CxCClass;
use seshadri_core::exact_num::{parse_quad, parse_rational, QuadExt, Rational};
use seshadri_core::error::Error as CoreError;

/// A syntax or value error at a character column of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(input: &str, column: usize, message: impl Into<String>) -> Self {
        Self { input: input.to_string(), column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (column {})", self.message, self.column + 1)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.column))
    }
}

impl std::error::Error for ParseError {}

/// A parsed value together with normalization notes.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub notes: Vec<String>,
}

fn describe(e: &CoreError) -> String {
    match e {
        CoreError::DivisionByZero => "zero denominator".into(),
        other => other.to_string(),
    }
}

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, chars: src.chars().collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.chars.get(self.pos + i) == Some(&c))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.src, column, message)
    }
}

fn is_number_char(c: char) -> bool {
    c.is_ascii_digit() || c == '.' || c == '/'
}

/// Reads `sqrt(` ... `)` at the cursor and returns the normalized root.
fn read_sqrt(cur: &mut Cursor, notes: &mut Vec<String>) -> Result<QuadExt, ParseError> {
    let start = cur.pos;
    cur.pos += "sqrt(".len();
    cur.skip_ws();
    let arg_at = cur.pos;
    let text = cur.take_while(|c| c != ')');
    if !cur.eat(')') {
        return Err(cur.err(start, "unclosed `sqrt(`"));
    }
    let radicand = parse_rational(text.trim()).map_err(|e| cur.err(arg_at, describe(&e)))?;
    if radicand.is_negative() {
        return Err(cur.err(arg_at, format!("negative radicand {radicand}")));
    }
    let root = QuadExt::sqrt_of(&radicand).map_err(|e| cur.err(arg_at, describe(&e)))?;
    if let Some(note) = normalization_note(&radicand, &root) {
        notes.push(note);
    }
    Ok(root)
}

fn normalization_note(radicand: &Rational, root: &QuadExt) -> Option<String> {
    let squarefree = radicand.is_integer() && root.q().is_one() && root.d() == radicand.numer();
    (!squarefree).then(|| format!("sqrt({radicand}) normalized to {root}"))
}

/// Notes for every `sqrt(...)` inside a parenthesized surd.
fn surd_notes(text: &str, notes: &mut Vec<String>) {
    let mut rest = text;
    while let Some(i) = rest.find("sqrt(") {
        let tail = &rest[i + 5..];
        let Some(j) = tail.find(')') else { return };
        if let Ok(r) = parse_rational(tail[..j].trim()) {
            if let Ok(root) = QuadExt::sqrt_of(&r) {
                notes.extend(normalization_note(&r, &root));
            }
        }
        rest = &tail[j..];
    }
}

fn read_coefficient(cur: &mut Cursor, notes: &mut Vec<String>) -> Result<Option<QuadExt>, ParseError> {
    let start = cur.pos;
    if cur.eat('(') {
        let mut depth = 1;
        let inner_at = cur.pos;
        while depth > 0 {
            match cur.peek() {
                None => return Err(cur.err(start, "unclosed `(`")),
                Some('(') => depth += 1,
                Some(')') => depth -= 1,
                _ => {}
            }
            cur.pos += 1;
        }
        let inner: String = cur.chars[inner_at..cur.pos - 1].iter().collect();
        let value = parse_quad(&inner).map_err(|e| cur.err(inner_at, describe(&e)))?;
        surd_notes(&inner, notes);
        return Ok(Some(value));
    }
    if cur.starts_with("sqrt(") {
        return read_sqrt(cur, notes).map(Some);
    }
    if !cur.peek().is_some_and(is_number_char) {
        return Ok(None);
    }
    let text = cur.take_while(is_number_char);
    let k = parse_rational(&text).map_err(|e| cur.err(start, describe(&e)))?;
    let save = cur.pos;
    cur.skip_ws();
    if cur.eat('*') {
        cur.skip_ws();
        if cur.starts_with("sqrt(") {
            let root = read_sqrt(cur, notes)?;
            return Ok(Some(root.scale(&k)));
        }
        // `3*f1`: leave the symbol for the caller
        return Ok(Some(QuadExt::from_rational(k)));
    }
    cur.pos = save;
    Ok(Some(QuadExt::from_rational(k)))
}

/// Parses a class such as `13 f1 + 13/6 f2 - d`.
pub fn parse_class(text: &str) -> Result<CxCClass, ParseError> {
    parse_class_with_notes(text).map(|p| p.value)
}

pub fn parse_class_with_notes(text: &str) -> Result<Parsed<CxCClass>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut notes = Vec::new();
    let mut coefs = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
    let mut first = true;
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.err(0, "empty class"));
    }
    if text.trim() == "0" {
        let z = QuadExt::zero();
        let value = CxCClass::new(z.clone(), z.clone(), z).map_err(|e| cur.err(0, describe(&e)))?;
        return Ok(Parsed { value, notes });
    }
    loop {
        let term_at = cur.pos;
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if first {
            false
        } else {
            return Err(cur.err(cur.pos, "expected `+` or `-`"));
        };
        cur.skip_ws();
        let coef_at = cur.pos;
        let coef = read_coefficient(&mut cur, &mut notes)?;
        cur.skip_ws();
        cur.eat('*');
        cur.skip_ws();
        let sym_at = cur.pos;
        let sym = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        let slot = match sym.as_str() {
            "f1" => 0,
            "f2" => 1,
            "d" | "delta" => 2,
            "" if coef.is_some() => return Err(cur.err(sym_at, "missing symbol after coefficient (expected f1, f2 or d)")),
            "" => return Err(cur.err(coef_at, "expected a coefficient or one of f1, f2, d")),
            other => return Err(cur.err(sym_at, format!("unknown symbol `{other}` (expected f1, f2 or d)"))),
        };
        let mut value = coef.unwrap_or_else(QuadExt::one);
        if negative {
            value = value.scale(&-Rational::one());
        }
        coefs[slot] = coefs[slot]
            .try_add(&value)
            .map_err(|e| cur.err(term_at, describe(&e)))?;
        first = false;
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
    }
    let [a, b, c] = coefs;
    let value = CxCClass::new(a, b, c).map_err(|e| cur.err(0, describe(&e)))?;
    Ok(Parsed { value, notes })
}

/// Parses a bundle such as `1:1,1:2 twist=-1/2`.
pub fn parse_bundle(text: &str) -> Result<CurveBundle, ParseError> {
    let mut cur = Cursor::new(text);
    let mut pieces = Vec::new();
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.err(0, "empty bundle (expected rank:degree pieces)"));
    }
    loop {
        cur.skip_ws();
        let rank_at = cur.pos;
        let rank_text = cur.take_while(|c| c.is_ascii_digit());
        if rank_text.is_empty() {
            return Err(cur.err(rank_at, "expected a rank"));
        }
        let rank: u64 = rank_text.parse().map_err(|_| cur.err(rank_at, "rank out of range"))?;
        if rank == 0 {
            return Err(cur.err(rank_at, "rank must be at least 1"));
        }
        cur.skip_ws();
        if !cur.eat(':') {
            return Err(cur.err(cur.pos, "expected `:` between rank and degree"));
        }
        cur.skip_ws();
        let deg_at = cur.pos;
        let deg_text = cur.take_while(|c| is_number_char(c) || c == '-' || c == '+');
        if deg_text.is_empty() {
            return Err(cur.err(deg_at, "expected a degree"));
        }
        let degree = parse_rational(&deg_text).map_err(|e| cur.err(deg_at, describe(&e)))?;
        pieces.push(SemistablePiece::new(rank, degree).map_err(|e| cur.err(rank_at, describe(&e)))?);
        cur.skip_ws();
        if !cur.eat(',') {
            break;
        }
    }
    let mut twist = Rational::zero();
    if !cur.at_end() {
        let key_at = cur.pos;
        if !cur.starts_with("twist") {
            return Err(cur.err(key_at, "expected `,` or `twist=`"));
        }
        cur.pos += "twist".len();
        cur.skip_ws();
        if !cur.eat('=') {
            return Err(cur.err(cur.pos, "expected `=` after `twist`"));
        }
        cur.skip_ws();
        let t_at = cur.pos;
        let t_text = cur.take_while(|c| !c.is_whitespace());
        twist = parse_rational(&t_text).map_err(|e| cur.err(t_at, describe(&e)))?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.err(cur.pos, "unexpected trailing input"));
        }
    }
    CurveBundle::new(pieces, twist).map_err(|e| cur.err(0, describe(&e)))
}

/// Parses a rational or surd given as a flag value.
pub fn parse_number(text: &str) -> Result<QuadExt, ParseError> {
    let at = text.len() - text.trim_start().len();
    parse_quad(text).map_err(|e| ParseError::new(text, at, describe(&e)))
}

pub fn parse_rational_arg(text: &str) -> Result<Rational, ParseError> {
    let at = text.len() - text.trim_start().len();
    parse_rational(text).map_err(|e| ParseError::new(text, at, describe(&e)))
}

/// Parses a precision such as `1e-12`, `0.001` or `1/1000`; it must be positive.
pub fn parse_precision(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let value = match t.split_once(['e', 'E']) {
        Some((mant, exp)) => {
            let m = parse_rational(mant).map_err(|e| ParseError::new(text, 0, describe(&e)))?;
            let e: i32 = exp
                .parse()
                .map_err(|_| ParseError::new(text, mant.len() + 1, format!("invalid exponent `{exp}`")))?;
            let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
            if e < 0 {
                m / Rational::from_integer(p)
            } else {
                m * Rational::from_integer(p)
            }
        }
        None => parse_rational_arg(t)?,
    };
    if !value.is_positive() {
        return Err(ParseError::new(text, 0, "precision must be positive"));
    }
    Ok(value)
}

/// Splits `lo:hi` into two rationals.
pub fn parse_range(text: &str) -> Result<(Rational, Rational), ParseError> {
    let Some((lo, hi)) = text.split_once(':') else {
        return Err(ParseError::new(text, 0, "expected a range `lo:hi`"));
    };
    let lo_v = parse_rational(lo).map_err(|e| ParseError::new(text, 0, describe(&e)))?;
    let hi_v = parse_rational(hi).map_err(|e| ParseError::new(text, lo.chars().count() + 1, describe(&e)))?;
    Ok((lo_v, hi_v))
}

/// Splits `a,b` into two surds.
pub fn parse_point(text: &str) -> Result<(QuadExt, QuadExt), ParseError> {
    let Some((a, b)) = text.split_once(',') else {
        return Err(ParseError::new(text, 0, "expected a point `a,b`"));
    };
    let a_v = parse_quad(a).map_err(|e| ParseError::new(text, 0, describe(&e)))?;
    let b_v = parse_quad(b).map_err(|e| ParseError::new(text, a.chars().count() + 1, describe(&e)))?;
    Ok((a_v, b_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use seshadri_core::exact_num::rat;

    fn q(n: i64, d: i64) -> QuadExt {
        QuadExt::from_rational(rat(n, d))
    }

    #[test]
    fn simple_classes() {
        assert_eq!(parse_class("f1 + f2 - d").unwrap(), CxCClass::from_ints(1, 1, -1));
        assert_eq!(parse_class("13 f1 + 13/6 f2 - d").unwrap(), CxCClass::rational(rat(13, 1), rat(13, 6), rat(-1, 1)));
        assert_eq!(parse_class("13.7 f1 + 2 f2 - delta").unwrap(), CxCClass::rational(rat(137, 10), rat(2, 1), rat(-1, 1)));
        assert_eq!(parse_class("-2*f1 + f1 - 3d").unwrap(), CxCClass::from_ints(-1, 0, -3));
    }

    #[test]
    fn surd_coefficients() {
        let c = parse_class("(13 + 2/7*sqrt(6)) f1 + 2 f2 - d").unwrap();
        assert_eq!(c.a(), &parse_quad("13 + 2/7*sqrt(6)").unwrap());
        let c = parse_class("2*sqrt(3) f1 - sqrt(3) f2").unwrap();
        assert_eq!(c.b(), &parse_quad("-sqrt(3)").unwrap());
        assert_eq!(c.c(), &q(0, 1));
    }

    #[test]
    fn zero_class_round_trips() {
        let z = parse_class("0").unwrap();
        assert!(z.a().is_zero() && z.b().is_zero() && z.c().is_zero());
        assert_eq!(parse_class(&z.to_string()).unwrap(), z);
        assert!(parse_class("00 f1 0").is_err());
    }

    #[test]
    fn non_squarefree_radicands_are_noted() {
        let p = parse_class_with_notes("sqrt(8) f1 + (1 + sqrt(18)) f2").unwrap();
        assert_eq!(p.value.a(), &parse_quad("2*sqrt(2)").unwrap());
        assert_eq!(p.notes.len(), 2);
        assert!(p.notes[0].contains("2*sqrt(2)"), "{:?}", p.notes);
        assert!(parse_class_with_notes("sqrt(2) f1").unwrap().notes.is_empty());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_class("f1 + x2 - d").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(e.message.contains("unknown symbol"));
        let e = parse_class("1/0 f1").unwrap_err();
        assert_eq!(e.message, "zero denominator");
        let e = parse_class("sqrt(2) f1 + sqrt(3) f2").unwrap_err();
        assert!(e.message.contains("different quadratic fields"), "{e}");
        assert!(parse_class("f1 f2").unwrap_err().message.contains("expected `+`"));
        assert!(parse_class("").is_err());
        assert!(parse_class("2").is_err());
        let shown = parse_class("f1 + x2").unwrap_err().to_string();
        assert!(shown.ends_with("       ^"), "{shown}");
    }

    #[test]
    fn bundles() {
        let b = parse_bundle("1:1,1:2 twist=-1/2").unwrap();
        assert_eq!(b, CurveBundle::from_pairs(&[(1, 1), (1, 2)], rat(-1, 2)).unwrap());
        assert_eq!(b.to_string(), "1:1,1:2 twist=-1/2");
        let b = parse_bundle(" 2:-3/2 , 1:0").unwrap();
        assert_eq!(b.rank(), 3);
        assert_eq!(parse_bundle("0:1").unwrap_err().column, 0);
        assert_eq!(parse_bundle("1:1,1:x").unwrap_err().column, 6);
        assert!(parse_bundle("1:1 twist").is_err());
        assert!(parse_bundle("1:1 tw=1").is_err());
    }

    #[test]
    fn precision_forms() {
        assert_eq!(parse_precision("1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_precision("1/1000").unwrap(), rat(1, 1000));
        assert!(parse_precision("0").is_err());
        assert!(parse_precision("-1e-3").is_err());
    }
}
