use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::families::{generator_set, vojta_generator, FamilyTag, Generator};
use super::tangency::tangent_lines;
use super::{necessary_conditions, qi, CxCClass, Generality, Genus, Necessary, Pairing};
use crate::exact_num::{quad_sign, simplest_between, to_f64, Biquad, BiquadField, QuadExt, Rational, RationalInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Nef,
    NotNef,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nef => "nef",
            Self::NotNef => "not-nef",
            Self::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Nef, Self::NotNef, Self::Unknown].into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub weight: QuadExt,
    pub generator: Generator,
}

/// Evidence behind a verdict.
///
/// A combination certifies `D = sum w_i G_i + x f1 + y f2` with `x, y >= 0`:
/// the `d` coefficients match exactly and the `f1`, `f2` coefficients of the
/// sum do not exceed those of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Pairing { pairing: Pairing, value: QuadExt },
    Combination(Vec<WitnessTerm>),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCertificate {
    pub verdict: Verdict,
    pub generality: Generality,
    pub family: String,
    pub witness: Witness,
}

impl NefCertificate {
    pub fn from_generator(generator: Generator) -> Self {
        Self::combination(vec![WitnessTerm { weight: qi(1), generator }])
    }

    fn combination(terms: Vec<WitnessTerm>) -> Self {
        let generality = terms.iter().map(|t| t.generator.generality()).max().unwrap_or(Generality::Arbitrary);
        let mut tags: Vec<FamilyTag> = Vec::new();
        for t in &terms {
            if !tags.contains(&t.generator.family) {
                tags.push(t.generator.family);
            }
        }
        let family = if tags.is_empty() {
            FamilyTag::Fiber.to_string()
        } else {
            tags.iter().map(|t| t.as_str()).collect::<Vec<_>>().join("+")
        };
        Self { verdict: Verdict::Nef, generality, family, witness: Witness::Combination(terms) }
    }

    fn unknown(generality: Generality) -> Self {
        Self { verdict: Verdict::Unknown, generality, family: "none".into(), witness: Witness::None }
    }

    pub fn is_nef(&self) -> bool {
        self.verdict == Verdict::Nef
    }
}

/// How densely the continuous families are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sampling {
    /// Points `b = 1 + j/N`, `j = 1..=N`, on the Vojta curve.
    pub vojta_points: u32,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { vojta_points: 64 }
    }
}

#[derive(Clone, Debug)]
struct Vertex {
    a: Rational,
    b: Rational,
    generator: Generator,
}

#[derive(Clone, Debug)]
struct Segment {
    start: Vertex,
    touch: Generator,
    // rational lower bounds for both coordinates along the segment
    floor: (Rational, Rational),
    approx: [(f64, f64); 2],
}

impl Segment {
    fn new(start: Vertex, touch: Generator) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(1u64 << 20));
        let lo = |x: &QuadExt| x.enclose(&w).lo().clone();
        let floor = (
            start.a.clone().min(lo(touch.class.a())),
            start.b.clone().min(lo(touch.class.b())),
        );
        let approx = [
            (to_f64(&start.a), touch.class.a().to_f64()),
            (to_f64(&start.b), touch.class.b().to_f64()),
        ];
        Self { start, touch, floor, approx }
    }

    /// Coarse float screen. It only rejects when the parameter range is
    /// empty by a wide margin, so exact tests decide everything else.
    fn clearly_misses(&self, query: [f64; 2]) -> bool {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for ((s, t), q) in self.approx.iter().zip(query) {
            let (r, d) = (q - s, t - s);
            if d.abs() < 1e-3 {
                continue;
            }
            let x = r / d;
            if d > 0.0 {
                hi = hi.min(x);
            } else {
                lo = lo.max(x);
            }
        }
        lo > hi + 1e-6 * (1.0 + lo.abs() + hi.abs())
    }
}

/// The plane slice `d = -1` of the cone generated at one generality level:
/// the convex hull of the generator points and both Vojta curves, plus the
/// positive quadrant.
#[derive(Clone, Debug)]
pub struct NefRegion {
    genus: Genus,
    level: Generality,
    chain: Vec<Vertex>,
    segments: Vec<Segment>,
}

impl NefRegion {
    pub fn build(g: Genus, level: Generality, sampling: &Sampling) -> Self {
        let points: Vec<Vertex> = generator_set(g, level, sampling)
            .into_iter()
            .filter(|x| x.class.c() == &qi(-1))
            .map(|x| Vertex {
                a: x.class.a().to_rational().expect("rational generator"),
                b: x.class.b().to_rational().expect("rational generator"),
                generator: x,
            })
            .collect();
        let chain = lower_left_chain(&points);
        let mut segments = Vec::new();
        for v in points.iter().filter(|v| !matches!(v.generator.family, FamilyTag::VojtaCurve | FamilyTag::VojtaCurveSwapped)) {
            for swapped in [false, true] {
                let (pa, pb) = if swapped { (&v.b, &v.a) } else { (&v.a, &v.b) };
                let (pa, pb) = (QuadExt::from_rational(pa.clone()), QuadExt::from_rational(pb.clone()));
                if curve_point_below(g, &pa, &pb).is_some() {
                    continue;
                }
                let Ok(lines) = tangent_lines(g, (&pa, &pb)) else { continue };
                for line in lines {
                    let Ok(touch) = CxCClass::plane_point(line.touch.0.clone(), line.touch.1.clone()) else { continue };
                    let mut touch = Generator::new(touch, FamilyTag::VojtaCurve);
                    if swapped {
                        touch = touch.swapped();
                    }
                    segments.push(Segment::new(v.clone(), touch));
                }
            }
        }
        Self { genus: g, level, chain, segments }
    }

    pub fn level(&self) -> Generality {
        self.level
    }

    /// Vertices of the lower-left boundary of the hull of the generator points.
    pub fn chain(&self) -> Vec<&Generator> {
        self.chain.iter().map(|v| &v.generator).collect()
    }

    /// Tangent segments from generator points to the Vojta curves.
    pub fn segments(&self) -> Vec<(&Generator, &Generator)> {
        self.segments.iter().map(|s| (&s.start.generator, &s.touch)).collect()
    }

    /// Decides whether `(a, b)` lies in the region, returning convex weights
    /// (summing to 1) on generators dominated by the point.
    pub fn contains(&self, a: &QuadExt, b: &QuadExt) -> Option<Vec<WitnessTerm>> {
        if let Some(t) = self.chain_test(a, b) {
            return Some(t);
        }
        if let Some(gen) = curve_point_below(self.genus, a, b) {
            return Some(vec![WitnessTerm { weight: qi(1), generator: gen }]);
        }
        if let Some(gen) = curve_point_below(self.genus, b, a) {
            return Some(vec![WitnessTerm { weight: qi(1), generator: gen.swapped() }]);
        }
        let query = [a.to_f64(), b.to_f64()];
        self.segments
            .iter()
            .filter(|s| cmp_rational(a, &s.floor.0).is_ge() && cmp_rational(b, &s.floor.1).is_ge())
            .filter(|s| !s.clearly_misses(query))
            .find_map(|s| segment_test(s, a, b))
    }

    fn chain_test(&self, a: &QuadExt, b: &QuadExt) -> Option<Vec<WitnessTerm>> {
        let first = self.chain.first()?;
        let last = self.chain.last()?;
        if cmp_rational(a, &first.a).is_lt() || cmp_rational(b, &last.b).is_lt() {
            return None;
        }
        let i = self.chain.partition_point(|v| cmp_rational(a, &v.a).is_ge()) - 1;
        if i + 1 == self.chain.len() {
            return Some(vec![WitnessTerm { weight: qi(1), generator: last.generator.clone() }]);
        }
        let (v, w) = (&self.chain[i], &self.chain[i + 1]);
        let span = (&w.a - &v.a).recip();
        let lambda = a.scale(&-span.clone()).add_rational(&(&w.a * &span));
        let mu = (-&lambda).add_rational(&Rational::one());
        let line_b = lambda.scale(&v.b).try_add(&mu.scale(&w.b)).ok()?;
        if *b < line_b {
            return None;
        }
        let terms = [(lambda, &v.generator), (mu, &w.generator)]
            .into_iter()
            .filter(|(x, _)| !x.is_zero())
            .map(|(weight, g)| WitnessTerm { weight, generator: g.clone() })
            .collect();
        Some(terms)
    }
}

fn cmp_rational(x: &QuadExt, r: &Rational) -> Ordering {
    if x.is_rational() {
        return x.p().cmp(r);
    }
    quad_sign(&(x.p() - r), x.q(), x.d()).cmp(&0)
}

/// Pareto-minimal points forming the convex lower-left boundary, sorted by `a`.
fn lower_left_chain(points: &[Vertex]) -> Vec<Vertex> {
    let mut sorted: Vec<&Vertex> = points.iter().collect();
    sorted.sort_by(|x, y| x.a.cmp(&y.a).then(x.b.cmp(&y.b)));
    let mut pareto: Vec<&Vertex> = Vec::new();
    for p in sorted {
        if pareto.last().map_or(true, |q| p.b < q.b) {
            pareto.push(p);
        }
    }
    let mut hull: Vec<&Vertex> = Vec::new();
    for p in pareto {
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (&q.a - &o.a) * (&p.b - &o.b) - (&q.b - &o.b) * (&p.a - &o.a);
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    hull.into_iter().cloned().collect()
}

/// A Vojta curve point dominated by `(a, b)`, if any.
fn curve_point_below(g: Genus, a: &QuadExt, b: &QuadExt) -> Option<Generator> {
    let u = b.add_rational(&-Rational::one());
    if u.sign() <= 0 {
        return None;
    }
    let u = if u > qi(1) { qi(1) } else { u };
    let gen = vojta_generator(g, &u).ok()?;
    (gen.class.a() <= a).then_some(gen)
}

/// Finds `t` in `[0, 1]` with `(a, b) >= (1 - t) start + t touch`.
fn segment_test(seg: &Segment, a: &QuadExt, b: &QuadExt) -> Option<Vec<WitnessTerm>> {
    let start = [&seg.start.a, &seg.start.b];
    let touch = [seg.touch.class.a(), seg.touch.class.b()];
    let query = [a, b];
    let mut lower: Vec<(QuadExt, QuadExt)> = Vec::new();
    let mut upper: Vec<(QuadExt, QuadExt)> = Vec::new();
    let mut parts = Vec::new();
    for k in 0..2 {
        let delta = touch[k].add_rational(&-start[k].clone());
        let r = query[k].add_rational(&-start[k].clone());
        match delta.sign() {
            0 => {
                if r.sign() < 0 {
                    return None;
                }
            }
            s if s > 0 => upper.push((r.clone(), delta.clone())),
            _ => lower.push((r.clone(), delta.clone())),
        }
        parts.push((r, delta));
    }
    let t = choose_parameter(&lower, &upper)?;
    for (r, delta) in &parts {
        if *r < t.try_mul(delta).ok()? {
            return None;
        }
    }
    let s = (-&t).add_rational(&Rational::one());
    let terms = [(s, &seg.start.generator), (t, &seg.touch)]
        .into_iter()
        .filter(|(x, _)| !x.is_zero())
        .map(|(weight, g)| WitnessTerm { weight, generator: g.clone() })
        .collect();
    Some(terms)
}

/// Sign of `x.0/x.1 - y.0/y.1`, or `None` across different fields.
fn cmp_fraction(x: &(QuadExt, QuadExt), y: &(QuadExt, QuadExt)) -> Option<i8> {
    let diff = x.0.try_mul(&y.1).ok()?.try_sub(&y.0.try_mul(&x.1).ok()?).ok()?;
    Some(diff.sign() * x.1.sign() * y.1.sign())
}

enum Choice {
    Empty,
    Value(QuadExt),
    Open,
}

/// Decides the parameter range by exact comparisons alone. `Open` means
/// the range has interior but neither end is a convenient value.
fn exact_choice(lower: &[(QuadExt, QuadExt)], upper: &[(QuadExt, QuadExt)]) -> Option<Choice> {
    let zero = (qi(0), qi(1));
    let one = (qi(1), qi(1));
    let mut lo = &zero;
    for x in lower {
        if cmp_fraction(x, lo)? > 0 {
            lo = x;
        }
    }
    let mut hi = &one;
    for x in upper {
        if cmp_fraction(x, hi)? < 0 {
            hi = x;
        }
    }
    Some(match cmp_fraction(lo, hi)? {
        s if s > 0 => Choice::Empty,
        0 => Choice::Value(lo.0.try_div(&lo.1).ok()?),
        _ if lo.0.is_zero() => Choice::Value(qi(0)),
        _ if hi.0 == hi.1 => Choice::Value(qi(1)),
        _ => Choice::Open,
    })
}

/// Picks a value in `[max(0, r/delta over lower), min(1, r/delta over upper)]`,
/// exact when the bounds meet, rational otherwise.
fn choose_parameter(lower: &[(QuadExt, QuadExt)], upper: &[(QuadExt, QuadExt)]) -> Option<QuadExt> {
    match exact_choice(lower, upper) {
        Some(Choice::Empty) => return None,
        Some(Choice::Value(t)) => return Some(t),
        _ => {}
    }
    let mut width = Rational::new(BigInt::one(), BigInt::one() << 16);
    for _ in 0..16 {
        let enc = |(r, d): &(QuadExt, QuadExt)| r.enclose(&width).div(&d.enclose(&width)).ok();
        let lo: Option<Vec<RationalInterval>> = lower.iter().map(enc).collect();
        let hi: Option<Vec<RationalInterval>> = upper.iter().map(enc).collect();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            let lo_hi = lo.iter().map(|x| x.hi().clone()).fold(Rational::zero(), |m, x| m.max(x));
            let lo_lo = lo.iter().map(|x| x.lo().clone()).fold(Rational::zero(), |m, x| m.max(x));
            let hi_lo = hi.iter().map(|x| x.lo().clone()).fold(Rational::one(), |m, x| m.min(x));
            let hi_hi = hi.iter().map(|x| x.hi().clone()).fold(Rational::one(), |m, x| m.min(x));
            if lo_lo > hi_hi {
                return None;
            }
            if lo_hi < hi_lo {
                return Some(QuadExt::from_rational(simplest_between(&lo_hi, &hi_lo)));
            }
            if lo_hi == hi_lo && lo_lo == lo_hi && hi_lo == hi_hi {
                return Some(QuadExt::from_rational(lo_hi));
            }
        }
        width = &width * &width;
    }
    None
}

/// Certifies nefness of classes for one genus, caching the regions per level.
#[derive(Debug)]
pub struct NefCertifier {
    genus: Genus,
    sampling: Sampling,
    regions: [OnceLock<NefRegion>; 3],
}

impl NefCertifier {
    pub fn new(g: Genus, sampling: Sampling) -> Self {
        Self { genus: g, sampling, regions: Default::default() }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn region(&self, level: Generality) -> &NefRegion {
        let idx = level as usize;
        self.regions[idx].get_or_init(|| NefRegion::build(self.genus, level, &self.sampling))
    }

    pub fn certify(&self, d: &CxCClass, max_generality: Generality) -> NefCertificate {
        let g = self.genus;
        if let Necessary::Fail { pairing, value } = necessary_conditions(d, g) {
            return NefCertificate {
                verdict: Verdict::NotNef,
                generality: Generality::Arbitrary,
                family: "necessary-condition".into(),
                witness: Witness::Pairing { pairing, value },
            };
        }
        let (a, b, c) = (d.a(), d.b(), d.c());
        match c.sign() {
            0 => {
                let terms = [(a, CxCClass::f1()), (b, CxCClass::f2())]
                    .into_iter()
                    .filter(|(w, _)| !w.is_zero())
                    .map(|(w, class)| WitnessTerm { weight: w.clone(), generator: Generator::new(class, FamilyTag::Fiber) })
                    .collect();
                NefCertificate::combination(terms)
            }
            1 => {
                if a.sign() < 0 || b.sign() < 0 {
                    return NefCertificate::unknown(Generality::Arbitrary);
                }
                NefCertificate::combination(extremal_terms(g, a, c))
            }
            _ => {
                let scale = -c;
                let (Ok(qa), Ok(qb)) = (a.try_div(&scale), b.try_div(&scale)) else {
                    return NefCertificate::unknown(max_generality);
                };
                for level in Generality::ALL.into_iter().filter(|l| *l <= max_generality) {
                    let Some(terms) = self.region(level).contains(&qa, &qb) else { continue };
                    let scaled: Option<Vec<WitnessTerm>> = terms
                        .into_iter()
                        .map(|t| Some(WitnessTerm { weight: t.weight.try_mul(&scale).ok()?, generator: t.generator }))
                        .collect();
                    if let Some(terms) = scaled {
                        return NefCertificate::combination(terms);
                    }
                }
                NefCertificate::unknown(max_generality)
            }
        }
    }
}

/// `D = w1 ((2g-2) f1 + d) + w2 ((2g-2) f2 + d) + x f1 + y f2` for `c > 0`.
fn extremal_terms(g: Genus, a: &QuadExt, c: &QuadExt) -> Vec<WitnessTerm> {
    let k = Rational::from_integer(BigInt::from(2 * i64::from(g.get()) - 2));
    let e1 = CxCClass::rational(k.clone(), Rational::zero(), Rational::one());
    let a_over_k = a.scale(&k.recip());
    let w1 = if a_over_k < *c { a_over_k } else { c.clone() };
    let w2 = c.try_sub(&w1).expect("same field");
    [(w1, e1.clone()), (w2, e1.swapped())]
        .into_iter()
        .filter(|(w, _)| !w.is_zero())
        .map(|(weight, class)| WitnessTerm { weight, generator: Generator::new(class, FamilyTag::NonnegativeCriterion) })
        .collect()
}

fn shared_certifier(g: Genus) -> Arc<NefCertifier> {
    static CACHE: OnceLock<Mutex<HashMap<Genus, Arc<NefCertifier>>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    map.entry(g).or_insert_with(|| Arc::new(NefCertifier::new(g, Sampling::default()))).clone()
}

/// Certifies `d` with the default sampling, trying weaker hypotheses first.
pub fn certify_nef(d: &CxCClass, g: Genus, max_generality: Generality) -> NefCertificate {
    shared_certifier(g).certify(d, max_generality)
}

/// Rechecks a certificate by exact arithmetic, independently of how it was found.
pub fn verify_certificate(cert: &NefCertificate, d: &CxCClass, g: Genus) -> Result<(), String> {
    match (&cert.verdict, &cert.witness) {
        (Verdict::NotNef, Witness::Pairing { pairing, value }) => {
            let actual = pairing.evaluate(d, g);
            if &actual != value {
                return Err(format!("{pairing} is {actual}, certificate says {value}"));
            }
            if value.sign() >= 0 {
                return Err(format!("{pairing} = {value} is not negative"));
            }
            Ok(())
        }
        (Verdict::Nef, Witness::Combination(terms)) => verify_combination(terms, cert.generality, d, g),
        (Verdict::Unknown, Witness::None) => Ok(()),
        (v, _) => Err(format!("witness does not match verdict {v}")),
    }
}

fn verify_combination(terms: &[WitnessTerm], generality: Generality, d: &CxCClass, g: Genus) -> Result<(), String> {
    let mut radicands: Vec<BigInt> = Vec::new();
    let mut note = |x: &QuadExt| {
        if !x.is_rational() && !radicands.contains(x.d()) {
            radicands.push(x.d().clone());
        }
    };
    for x in [d.a(), d.b(), d.c()] {
        note(x);
    }
    for t in terms {
        note(&t.weight);
        for x in [t.generator.class.a(), t.generator.class.b(), t.generator.class.c()] {
            note(x);
        }
    }
    let field = BiquadField::new(
        radicands.first().cloned().unwrap_or_else(BigInt::zero),
        radicands.get(1).cloned().unwrap_or_else(BigInt::zero),
    );
    let embed = |x: &QuadExt| field.embed(x).map_err(|e| e.to_string());
    let zero = field.from_rational(Rational::zero());
    let mut sums: [Biquad; 3] = [zero.clone(), zero.clone(), zero];
    for t in terms {
        if t.weight.sign() < 0 {
            return Err(format!("negative weight {}", t.weight));
        }
        t.generator.validate(g)?;
        if t.generator.generality() > generality {
            return Err(format!("{} needs a {} curve", t.generator.class, t.generator.generality()));
        }
        let w = embed(&t.weight)?;
        let coefs = [t.generator.class.a(), t.generator.class.b(), t.generator.class.c()];
        for (sum, coef) in sums.iter_mut().zip(coefs) {
            *sum = sum.add(&w.mul(&embed(coef)?));
        }
    }
    let [sa, sb, sc] = sums;
    if !embed(d.c())?.sub(&sc).is_zero() {
        return Err("the d coefficients differ".into());
    }
    if embed(d.a())?.sub(&sa).sign() < 0 {
        return Err("the f1 coefficient of the combination is too large".into());
    }
    if embed(d.b())?.sub(&sb).sign() < 0 {
        return Err("the f2 coefficient of the combination is too large".into());
    }
    Ok(())
}
