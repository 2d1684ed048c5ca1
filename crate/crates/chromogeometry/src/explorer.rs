//! Randomized spot-checks of the colored laws.
//!
//! Every law in this module is an exact algebraic identity, so a single
//! counterexample would be a real finding, not noise. The checker draws
//! random configurations over a chosen domain — bounded-height rationals or
//! a prime field — evaluates one law per trial, and collects the outcomes
//! into a [`TrialReport`] whose JSON form is byte-stable: the same
//! `(law, domain, trials, master_seed)` always yields the same report.
//!
//! Determinism comes from per-trial seeding. Trial `i` runs on its own
//! ChaCha stream seeded with `trial_seed(master_seed, i)`, a SplitMix64
//! mix of the master seed and the index, so trials are independent of each
//! other and of evaluation order; failures are recorded in index order.
//!
//! A trial can be *skipped* instead of evaluated when the draw violates a
//! documented precondition. The categories are fixed:
//!
//! * `degenerate-triangle` — drawn vertices coincide, or the triangle
//!   collapses where the law needs a proper one;
//! * `degenerate-construction` — a zero vector, zero scale, or repeated
//!   parameter in a constructed configuration;
//! * `null-line` — a drawn line or leg is null in a color the law measures;
//! * `parallel-lines` — two drawn lines that never meet;
//! * `undefined-spread` — a spread the law divides through is undefined;
//! * `zero-quadrance` — a quadrance the law divides through is zero;
//! * `focus-on-directrix` — the drawn focus lies on the drawn directrix;
//! * `no-quadratic-part` — six drawn coefficients with no degree-2 term;
//! * `no-diagonals` — a drawn conic admits no diagonal analysis in some
//!   color (no center, degenerate, or the quadratic obstruction).
//!
//! Every report satisfies `trials_requested = trials_valid + skips`;
//! failures count as valid trials whose check came out false. Each failure
//! embeds the full drawn configuration, which [`replay`] re-executes on its
//! own, printing every sub-expression along the way.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::conics::{
    grammola_analyze, parabola_chromatics, parabola_conic, Conic, ConicError, FocusDirectrixPair,
};
use crate::field::{Field, FieldElement, FieldError};
use crate::metric::{
    dot, is_null_line, is_parallel, is_perpendicular, line_intersection, perp, quadrance,
    quadrance_square_identity, spread_harmonic, vector_quadrance, vectors_perpendicular, Color,
    Line, Point, Vec2,
};
use crate::trig::{
    archimedes, check_cross_law, check_spread_law, check_triple_spread, profile, spread_law_ratio,
    Triangle, TrigError,
};

const SKIP_DEGENERATE: &str = "degenerate-triangle";
const SKIP_CONSTRUCTION: &str = "degenerate-construction";
const SKIP_NULL_LINE: &str = "null-line";
const SKIP_PARALLEL: &str = "parallel-lines";
const SKIP_SPREAD: &str = "undefined-spread";
const SKIP_ZERO_QUADRANCE: &str = "zero-quadrance";
const SKIP_FOCUS_ON_DIRECTRIX: &str = "focus-on-directrix";
const SKIP_NO_QUADRATIC: &str = "no-quadratic-part";
const SKIP_NO_DIAGONALS: &str = "no-diagonals";

/// Problems outside the laws themselves: unknown law names, malformed
/// domains, and configurations that do not parse back.
#[derive(Debug, Error)]
pub enum ExplorerError {
    /// A law name that is not in the catalog.
    #[error("unknown law {0:?}")]
    UnknownLaw(String),
    /// A domain spec that is neither `rational` nor `fp:<p>`.
    #[error("unknown domain {0:?} (expected \"rational\" or \"fp:<p>\")")]
    BadDomain(String),
    /// A serialized configuration missing keys or holding bad values.
    #[error("bad configuration: {0}")]
    BadConfig(String),
    /// A field-level failure while reading a configuration.
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The ten laws the checker knows, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawId {
    /// Perpendicularity at a vertex is equivalent to the two-quadrance sum.
    PythagorasIff,
    /// Archimedes' function vanishes exactly on collinear triples.
    TripleQuadIff,
    /// The three spread/quadrance ratios of a triangle agree.
    SpreadLaw,
    /// `(Q₁+Q₂−Q₃)² = 4Q₁Q₂(1−s₃)`.
    CrossLaw,
    /// `(s₁+s₂+s₃)² = 2(s₁²+s₂²+s₃²) + 4s₁s₂s₃`.
    TripleSpread,
    /// The blue quadrance squared is the sum of the red and green squares.
    QuadranceSquareIdentity,
    /// Reciprocal colored spreads of a line pair sum to 2.
    SpreadHarmonic2,
    /// Archimedes' function is `σ_c · 16·area²` in every color.
    ArchimedesSign,
    /// A parabola's three colored focus/directrix pairs interlock.
    ParabolaIncidence,
    /// Corner-quadrance products agree across colors up to the color sign.
    GrammolaSignLaw,
}

impl LawId {
    /// Every law, in catalog order.
    pub const ALL: [LawId; 10] = [
        LawId::PythagorasIff,
        LawId::TripleQuadIff,
        LawId::SpreadLaw,
        LawId::CrossLaw,
        LawId::TripleSpread,
        LawId::QuadranceSquareIdentity,
        LawId::SpreadHarmonic2,
        LawId::ArchimedesSign,
        LawId::ParabolaIncidence,
        LawId::GrammolaSignLaw,
    ];

    /// The stable snake_case name used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            LawId::PythagorasIff => "pythagoras_iff",
            LawId::TripleQuadIff => "triple_quad_iff",
            LawId::SpreadLaw => "spread_law",
            LawId::CrossLaw => "cross_law",
            LawId::TripleSpread => "triple_spread",
            LawId::QuadranceSquareIdentity => "quadrance_square_identity",
            LawId::SpreadHarmonic2 => "spread_harmonic_2",
            LawId::ArchimedesSign => "archimedes_sign",
            LawId::ParabolaIncidence => "parabola_incidence",
            LawId::GrammolaSignLaw => "grammola_sign_law",
        }
    }

    /// The inverse of [`LawId::name`].
    pub fn parse(text: &str) -> Result<LawId, ExplorerError> {
        LawId::ALL
            .into_iter()
            .find(|law| law.name() == text)
            .ok_or_else(|| ExplorerError::UnknownLaw(text.to_owned()))
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The law catalog as one comma-joined string — the input clients hash when
/// they want a fingerprint of the checked law set.
pub fn law_catalog() -> String {
    LawId::ALL.map(LawId::name).join(",")
}

/// Where configurations are drawn from: the rationals with a height bound,
/// or a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    field: Field,
    height: u32,
}

impl Domain {
    /// Bounded-height rationals: numerators in `[-height, height]`,
    /// denominators in `[1, height]`. A zero height is bumped to one.
    pub fn rational(height: u32) -> Domain {
        Domain {
            field: Field::rational(),
            height: height.max(1),
        }
    }

    /// The field of `p` elements, uniform draws.
    pub fn prime(p: u64) -> Result<Domain, FieldError> {
        Ok(Domain {
            field: Field::prime(p)?,
            height: 0,
        })
    }

    /// Parse a domain spec: `"rational"` (with the given height bound) or
    /// `"fp:<p>"`.
    pub fn parse(text: &str, height: u32) -> Result<Domain, ExplorerError> {
        if text == "rational" {
            return Ok(Domain::rational(height));
        }
        if let Some(p) = text.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| ExplorerError::BadDomain(text.to_owned()))?;
            return Ok(Domain::prime(p)?);
        }
        Err(ExplorerError::BadDomain(text.to_owned()))
    }

    /// The underlying field.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The height bound for rational draws; zero for prime fields.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// Short display form, `rational` or `fp:<p>`.
    pub fn label(&self) -> String {
        self.field.to_string()
    }

    /// The JSON descriptor used in reports.
    pub fn descriptor(&self) -> Json {
        match self.field.prime_modulus() {
            Some(p) => json!({"kind": "prime", "p": p}),
            None => json!({"kind": "rational", "height": self.height}),
        }
    }

    fn draw_element(&self, rng: &mut ChaCha8Rng) -> FieldElement {
        match self.field.prime_modulus() {
            Some(p) => {
                let r = rng.gen_range(0..p);
                self.field.from_i64(r as i64)
            }
            None => {
                let h = i64::from(self.height);
                let n = rng.gen_range(-h..=h);
                let d = rng.gen_range(1..=h);
                self.field
                    .from_ratio(n, d)
                    .expect("denominator drawn nonzero")
            }
        }
    }

    fn draw_point(&self, rng: &mut ChaCha8Rng) -> Point {
        Point::new(self.draw_element(rng), self.draw_element(rng))
    }

    fn draw_vector(&self, rng: &mut ChaCha8Rng) -> Vec2 {
        Vec2::new(self.draw_element(rng), self.draw_element(rng))
    }

    /// Draw an honest line: the direction pair is redrawn until nonzero,
    /// so "not actually a line" never burns a trial.
    fn draw_line(&self, rng: &mut ChaCha8Rng) -> Line {
        loop {
            let a = self.draw_element(rng);
            let b = self.draw_element(rng);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let c = self.draw_element(rng);
            return Line::new(a, b, c).expect("direction drawn nonzero");
        }
    }
}

fn draw_color(rng: &mut ChaCha8Rng) -> Color {
    Color::ALL[rng.gen_range(0..3)]
}

/// SplitMix64's finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The seed of trial `index` under `master_seed`: a SplitMix64 mix of the
/// two, so every trial gets an independent stream and any subrange of
/// trials can be reproduced without replaying the ones before it.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index))
}

// ---------------------------------------------------------------------------
// Configurations: draw, serialize, parse back.

fn element_json(x: &FieldElement) -> Json {
    x.to_json()
}

fn point_json(p: &Point) -> Json {
    Json::Array(vec![element_json(&p.x), element_json(&p.y)])
}

fn vec_json(v: &Vec2) -> Json {
    Json::Array(vec![element_json(&v.x), element_json(&v.y)])
}

fn line_json(l: &Line) -> Json {
    let (a, b, c) = l.coefficients();
    Json::Array(vec![element_json(a), element_json(b), element_json(c)])
}

fn triangle_json(points: &[Point; 3]) -> Json {
    Json::Array(points.iter().map(point_json).collect())
}

fn want<'j>(cfg: &'j Json, key: &str) -> Result<&'j Json, ExplorerError> {
    cfg.get(key)
        .ok_or_else(|| ExplorerError::BadConfig(format!("missing key {key:?}")))
}

fn parse_element(field: &Field, json: &Json) -> Result<FieldElement, ExplorerError> {
    Ok(field.parse_element(json)?)
}

fn parse_fixed<'j, const N: usize>(json: &'j Json, what: &str) -> Result<[&'j Json; N], ExplorerError> {
    let arr = json
        .as_array()
        .ok_or_else(|| ExplorerError::BadConfig(format!("{what} must be an array")))?;
    if arr.len() != N {
        return Err(ExplorerError::BadConfig(format!(
            "{what} needs exactly {N} entries, got {}",
            arr.len()
        )));
    }
    let mut out = [json; N];
    for (slot, value) in out.iter_mut().zip(arr.iter()) {
        *slot = value;
    }
    Ok(out)
}

fn parse_point(field: &Field, json: &Json) -> Result<Point, ExplorerError> {
    let [x, y] = parse_fixed::<2>(json, "a point")?;
    Ok(Point::new(parse_element(field, x)?, parse_element(field, y)?))
}

fn parse_vec(field: &Field, json: &Json) -> Result<Vec2, ExplorerError> {
    let [x, y] = parse_fixed::<2>(json, "a vector")?;
    Ok(Vec2::new(parse_element(field, x)?, parse_element(field, y)?))
}

fn parse_line(field: &Field, json: &Json) -> Result<Line, ExplorerError> {
    let [a, b, c] = parse_fixed::<3>(json, "a line")?;
    Line::new(
        parse_element(field, a)?,
        parse_element(field, b)?,
        parse_element(field, c)?,
    )
    .map_err(|e| ExplorerError::BadConfig(format!("not a line: {e}")))
}

fn parse_triangle(field: &Field, json: &Json) -> Result<[Point; 3], ExplorerError> {
    let [a, b, c] = parse_fixed::<3>(json, "a triangle")?;
    Ok([
        parse_point(field, a)?,
        parse_point(field, b)?,
        parse_point(field, c)?,
    ])
}

fn parse_color(json: &Json) -> Result<Color, ExplorerError> {
    let text = json
        .as_str()
        .ok_or_else(|| ExplorerError::BadConfig("color must be a string".into()))?;
    Color::parse(text).ok_or_else(|| ExplorerError::BadConfig(format!("unknown color {text:?}")))
}

fn draw_config(law: LawId, domain: &Domain, rng: &mut ChaCha8Rng) -> Json {
    match law {
        LawId::PythagorasIff => json!({
            "color": draw_color(rng).to_string(),
            "apex": point_json(&domain.draw_point(rng)),
            "leg": vec_json(&domain.draw_vector(rng)),
            "scale": element_json(&domain.draw_element(rng)),
            "triangle": triangle_json(&[
                domain.draw_point(rng),
                domain.draw_point(rng),
                domain.draw_point(rng),
            ]),
        }),
        LawId::TripleQuadIff => json!({
            "color": draw_color(rng).to_string(),
            "base": point_json(&domain.draw_point(rng)),
            "dir": vec_json(&domain.draw_vector(rng)),
            "t1": element_json(&domain.draw_element(rng)),
            "t2": element_json(&domain.draw_element(rng)),
            "triangle": triangle_json(&[
                domain.draw_point(rng),
                domain.draw_point(rng),
                domain.draw_point(rng),
            ]),
        }),
        LawId::SpreadLaw | LawId::CrossLaw | LawId::TripleSpread => json!({
            "color": draw_color(rng).to_string(),
            "triangle": triangle_json(&[
                domain.draw_point(rng),
                domain.draw_point(rng),
                domain.draw_point(rng),
            ]),
        }),
        LawId::QuadranceSquareIdentity => json!({
            "first": point_json(&domain.draw_point(rng)),
            "second": point_json(&domain.draw_point(rng)),
        }),
        LawId::SpreadHarmonic2 => json!({
            "lines": [
                line_json(&domain.draw_line(rng)),
                line_json(&domain.draw_line(rng)),
            ],
        }),
        LawId::ArchimedesSign => json!({
            "triangle": triangle_json(&[
                domain.draw_point(rng),
                domain.draw_point(rng),
                domain.draw_point(rng),
            ]),
        }),
        LawId::ParabolaIncidence => json!({
            "color": draw_color(rng).to_string(),
            "focus": point_json(&domain.draw_point(rng)),
            "directrix": line_json(&domain.draw_line(rng)),
        }),
        LawId::GrammolaSignLaw => json!({
            "coefficients": Json::Array(
                (0..6).map(|_| element_json(&domain.draw_element(rng))).collect(),
            ),
        }),
    }
}

// ---------------------------------------------------------------------------
// Evaluation.

/// What one trial came to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Preconditions held and the law checked out.
    Pass,
    /// A documented precondition failed; the named category is counted.
    Skip(&'static str),
    /// Preconditions held and the law did not check out.
    Fail,
}

/// Transcript sink: off during bulk verification, on for failures and
/// replays.
enum Log {
    Off,
    On(Vec<String>),
}

impl Log {
    fn say<F: FnOnce() -> String>(&mut self, line: F) {
        if let Log::On(lines) = self {
            lines.push(line());
        }
    }

    fn lines(self) -> Vec<String> {
        match self {
            Log::On(lines) => lines,
            Log::Off => Vec::new(),
        }
    }
}

/// Log both sides of an equality and report whether it holds.
fn eq(log: &mut Log, what: &str, lhs: &FieldElement, rhs: &FieldElement) -> bool {
    log.say(|| format!("{what}: {lhs} vs {rhs}"));
    let ok = lhs == rhs;
    if !ok {
        log.say(|| format!("MISMATCH in {what}"));
    }
    ok
}

/// Test-only sabotage, to prove a broken law is actually reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fault {
    None,
    /// Flip the expected sign in the Archimedes sign law.
    FlipArchimedesSign,
}

fn evaluate(
    law: LawId,
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    evaluate_inner(law, field, cfg, log, Fault::None)
}

fn evaluate_inner(
    law: LawId,
    field: &Field,
    cfg: &Json,
    log: &mut Log,
    fault: Fault,
) -> Result<Outcome, ExplorerError> {
    match law {
        LawId::PythagorasIff => eval_pythagoras_iff(field, cfg, log),
        LawId::TripleQuadIff => eval_triple_quad_iff(field, cfg, log),
        LawId::SpreadLaw => eval_spread_law(field, cfg, log),
        LawId::CrossLaw => eval_cross_law(field, cfg, log),
        LawId::TripleSpread => eval_triple_spread(field, cfg, log),
        LawId::QuadranceSquareIdentity => eval_quadrance_square(field, cfg, log),
        LawId::SpreadHarmonic2 => eval_spread_harmonic(field, cfg, log),
        LawId::ArchimedesSign => eval_archimedes_sign(field, cfg, log, fault),
        LawId::ParabolaIncidence => eval_parabola_incidence(field, cfg, log),
        LawId::GrammolaSignLaw => eval_grammola_sign(field, cfg, log),
    }
}

fn coincident(points: &[Point; 3]) -> bool {
    points[0] == points[1] || points[0] == points[2] || points[1] == points[2]
}

fn eval_pythagoras_iff(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    let color = parse_color(want(cfg, "color")?)?;
    let apex = parse_point(field, want(cfg, "apex")?)?;
    let leg = parse_vec(field, want(cfg, "leg")?)?;
    let scale = parse_element(field, want(cfg, "scale")?)?;
    let free = parse_triangle(field, want(cfg, "triangle")?)?;

    // Constructed direction: a genuine right angle forces the quadrance sum.
    if leg.is_zero() || scale.is_zero() {
        return Ok(Outcome::Skip(SKIP_CONSTRUCTION));
    }
    if vector_quadrance(color, &leg).is_zero() {
        // A null leg is parallel to its own perp; no triangle comes out.
        return Ok(Outcome::Skip(SKIP_NULL_LINE));
    }
    let b = apex.translate(&leg);
    let c = apex.translate(&perp(color, &leg).scale(&scale));
    let q_ab = quadrance(color, &apex, &b);
    let q_ac = quadrance(color, &apex, &c);
    let q_bc = quadrance(color, &b, &c);
    log.say(|| format!("{color} legs from constructed right vertex: Q {q_ab} and {q_ac}"));
    if !eq(log, "leg quadrances sum to the span", &q_ab.add(&q_ac), &q_bc) {
        return Ok(Outcome::Fail);
    }
    let right = Triangle::new(apex, b, c).expect("vertices distinct by construction");
    let prof = profile(&right, color).expect("non-null leg keeps the triangle proper");
    let apex_spread = prof.spreads[0]
        .clone()
        .expect("perp of a non-null vector is non-null");
    if !eq(log, "spread at the constructed right vertex", &apex_spread, &field.one()) {
        return Ok(Outcome::Fail);
    }

    // Free direction: for an arbitrary triple, the sum holds exactly when
    // the sides at the far vertex are perpendicular.
    if coincident(&free) {
        return Ok(Outcome::Skip(SKIP_DEGENERATE));
    }
    let [a1, a2, a3] = &free;
    let d = dot(color, &a3.to(a1), &a3.to(a2));
    let sum = quadrance(color, a2, a3).add(&quadrance(color, a1, a3));
    let q3 = quadrance(color, a1, a2);
    log.say(|| format!("free triple: dot at A3 is {d}; Q1+Q2 = {sum}, Q3 = {q3}"));
    if d.is_zero() != (sum == q3) {
        log.say(|| "MISMATCH: perpendicularity and the quadrance sum disagree".into());
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

fn eval_triple_quad_iff(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    let color = parse_color(want(cfg, "color")?)?;
    let base = parse_point(field, want(cfg, "base")?)?;
    let dir = parse_vec(field, want(cfg, "dir")?)?;
    let t1 = parse_element(field, want(cfg, "t1")?)?;
    let t2 = parse_element(field, want(cfg, "t2")?)?;
    let free = parse_triangle(field, want(cfg, "triangle")?)?;

    // Constructed direction: three distinct collinear points.
    if dir.is_zero() || t1.is_zero() || t2.is_zero() || t1 == t2 {
        return Ok(Outcome::Skip(SKIP_CONSTRUCTION));
    }
    let p2 = base.translate(&dir.scale(&t1));
    let p3 = base.translate(&dir.scale(&t2));
    let q1 = quadrance(color, &p2, &p3);
    let q2 = quadrance(color, &base, &p3);
    let q3 = quadrance(color, &base, &p2);
    let arch = archimedes(&q1, &q2, &q3);
    log.say(|| format!("collinear triple quadrances ({q1}, {q2}, {q3}): A = {arch}"));
    if !arch.is_zero() {
        log.say(|| "MISMATCH: nonzero Archimedes on a collinear triple".into());
        return Ok(Outcome::Fail);
    }

    // Free direction: Archimedes equals the signed-area form, so it is
    // nonzero exactly off the collinear locus.
    if coincident(&free) {
        return Ok(Outcome::Skip(SKIP_DEGENERATE));
    }
    let [a1, a2, a3] = free;
    let t = Triangle::new(a1, a2, a3).expect("coincidence screened above");
    let [q1, q2, q3] = t.quadrances(color);
    let arch = archimedes(&q1, &q2, &q3);
    let area_form = t.signed_area().square().mul_i64(16 * color.sign());
    if !eq(log, "Archimedes vs signed-area form", &arch, &area_form) {
        return Ok(Outcome::Fail);
    }
    if !t.is_degenerate() && arch.is_zero() {
        log.say(|| "MISMATCH: zero Archimedes on a non-collinear triple".into());
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

/// Shared front half of the triangle laws: screen coincident vertices,
/// then profile in the given color.
fn profiled(
    field: &Field,
    cfg: &Json,
) -> Result<Result<(Color, crate::trig::TriangleProfile), &'static str>, ExplorerError> {
    let color = parse_color(want(cfg, "color")?)?;
    let points = parse_triangle(field, want(cfg, "triangle")?)?;
    if coincident(&points) {
        return Ok(Err(SKIP_DEGENERATE));
    }
    let [a1, a2, a3] = points;
    let t = Triangle::new(a1, a2, a3).expect("coincidence screened above");
    match profile(&t, color) {
        Ok(p) => Ok(Ok((color, p))),
        Err(TrigError::DegenerateTriangle) => Ok(Err(SKIP_DEGENERATE)),
        Err(e) => Err(ExplorerError::BadConfig(format!(
            "profile failed unexpectedly: {e}"
        ))),
    }
}

fn eval_spread_law(field: &Field, cfg: &Json, log: &mut Log) -> Result<Outcome, ExplorerError> {
    let (_, prof) = match profiled(field, cfg)? {
        Ok(p) => p,
        Err(skip) => return Ok(Outcome::Skip(skip)),
    };
    let ratios = match check_spread_law(&prof) {
        Ok(r) => r,
        Err(TrigError::UndefinedSpread { .. }) => return Ok(Outcome::Skip(SKIP_SPREAD)),
        Err(TrigError::ZeroQuadrance { .. }) => return Ok(Outcome::Skip(SKIP_ZERO_QUADRANCE)),
        Err(e) => return Err(ExplorerError::BadConfig(format!("spread law: {e}"))),
    };
    let common = spread_law_ratio(&prof).expect("zero quadrances screened above");
    log.say(|| format!("ratios s_i/Q_i: {}, {}, {}", ratios[0], ratios[1], ratios[2]));
    for ratio in &ratios {
        if !eq(log, "ratio vs closed form", ratio, &common) {
            return Ok(Outcome::Fail);
        }
    }
    Ok(Outcome::Pass)
}

fn eval_cross_law(field: &Field, cfg: &Json, log: &mut Log) -> Result<Outcome, ExplorerError> {
    let (_, prof) = match profiled(field, cfg)? {
        Ok(p) => p,
        Err(skip) => return Ok(Outcome::Skip(skip)),
    };
    let (lhs, rhs) = match check_cross_law(&prof) {
        Ok(sides) => sides,
        Err(TrigError::UndefinedSpread { .. }) => return Ok(Outcome::Skip(SKIP_SPREAD)),
        Err(e) => return Err(ExplorerError::BadConfig(format!("cross law: {e}"))),
    };
    if !eq(log, "cross law sides", &lhs, &rhs) {
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

fn eval_triple_spread(field: &Field, cfg: &Json, log: &mut Log) -> Result<Outcome, ExplorerError> {
    let (_, prof) = match profiled(field, cfg)? {
        Ok(p) => p,
        Err(skip) => return Ok(Outcome::Skip(skip)),
    };
    let [s1, s2, s3] = &prof.spreads;
    let (Some(s1), Some(s2), Some(s3)) = (s1.as_ref(), s2.as_ref(), s3.as_ref()) else {
        return Ok(Outcome::Skip(SKIP_SPREAD));
    };
    log.say(|| format!("spreads {s1}, {s2}, {s3}"));
    let (lhs, rhs) = check_triple_spread(s1, s2, s3);
    if !eq(log, "triple spread sides", &lhs, &rhs) {
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

fn eval_quadrance_square(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    let first = parse_point(field, want(cfg, "first")?)?;
    let second = parse_point(field, want(cfg, "second")?)?;
    let (lhs, rhs) = quadrance_square_identity(&first, &second);
    if !eq(log, "blue² vs red² + green²", &lhs, &rhs) {
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

fn eval_spread_harmonic(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    let [l1, l2] = parse_fixed::<2>(want(cfg, "lines")?, "the line pair")?;
    let l1 = parse_line(field, l1)?;
    let l2 = parse_line(field, l2)?;
    if is_parallel(&l1.direction(), &l2.direction()) {
        return Ok(Outcome::Skip(SKIP_PARALLEL));
    }
    for color in Color::ALL {
        if is_null_line(color, &l1) || is_null_line(color, &l2) {
            return Ok(Outcome::Skip(SKIP_NULL_LINE));
        }
    }
    let sum = spread_harmonic(&l1, &l2)
        .expect("non-parallel non-null lines have three nonzero spreads");
    if !eq(log, "sum of reciprocal spreads", &sum, &field.from_i64(2)) {
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}

fn eval_archimedes_sign(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
    fault: Fault,
) -> Result<Outcome, ExplorerError> {
    let points = parse_triangle(field, want(cfg, "triangle")?)?;
    if coincident(&points) {
        return Ok(Outcome::Skip(SKIP_DEGENERATE));
    }
    let [a1, a2, a3] = points;
    let t = Triangle::new(a1, a2, a3).expect("coincidence screened above");
    let area16 = t.signed_area().square().mul_i64(16);
    for color in Color::ALL {
        let [q1, q2, q3] = t.quadrances(color);
        let arch = archimedes(&q1, &q2, &q3);
        let mut sign = color.sign();
        if fault == Fault::FlipArchimedesSign {
            sign = -sign;
        }
        let expected = area16.mul_i64(sign);
        if !eq(log, &format!("{color} Archimedes vs signed area"), &arch, &expected) {
            return Ok(Outcome::Fail);
        }
    }
    Ok(Outcome::Pass)
}

fn eval_parabola_incidence(
    field: &Field,
    cfg: &Json,
    log: &mut Log,
) -> Result<Outcome, ExplorerError> {
    let color = parse_color(want(cfg, "color")?)?;
    let focus = parse_point(field, want(cfg, "focus")?)?;
    let directrix = parse_line(field, want(cfg, "directrix")?)?;
    for c in Color::ALL {
        if is_null_line(c, &directrix) {
            return Ok(Outcome::Skip(SKIP_NULL_LINE));
        }
    }
    if directrix.contains(&focus) {
        return Ok(Outcome::Skip(SKIP_FOCUS_ON_DIRECTRIX));
    }
    let k = match parabola_conic(color, &focus, &directrix) {
        Ok(k) => k,
        Err(e) => {
            log.say(|| format!("parabola construction failed: {e}"));
            return Ok(Outcome::Fail);
        }
    };
    let known = FocusDirectrixPair {
        color,
        focus,
        directrix,
        ecc2: field.one(),
    };
    let ch = match parabola_chromatics(&k, &known) {
        Ok(ch) => ch,
        // A derived altitude or derived directrix can come out null even
        // when the drawn directrix is not; that is a precondition failure
        // of the derived construction, not a law violation.
        Err(ConicError::NullAltitude(_) | ConicError::NullDirectrix(_)) => {
            return Ok(Outcome::Skip(SKIP_NULL_LINE))
        }
        Err(e) => {
            log.say(|| format!("chromatic derivation failed: {e}"));
            return Ok(Outcome::Fail);
        }
    };
    for c in Color::ALL {
        let pair = ch.pair(c);
        let [s, t] = c.others();
        let meet = line_intersection(&ch.pair(s).directrix, &ch.pair(t).directrix);
        log.say(|| format!("{c} focus {:?}; other directrices meet at {meet:?}", pair.focus));
        if meet.as_ref() != Some(&pair.focus) {
            log.say(|| format!("MISMATCH: {c} focus is not the meet of the other directrices"));
            return Ok(Outcome::Fail);
        }
        if !is_perpendicular(c, &ch.pair(s).directrix, &ch.pair(t).directrix) {
            log.say(|| format!("MISMATCH: {s} and {t} directrices not {c}-perpendicular"));
            return Ok(Outcome::Fail);
        }
        if !vectors_perpendicular(c, &ch.axis_direction, &pair.directrix.direction()) {
            log.say(|| format!("MISMATCH: axis not {c}-perpendicular to the {c} directrix"));
            return Ok(Outcome::Fail);
        }
        match pair.conic() {
            Ok(regenerated) if regenerated == k => {}
            other => {
                log.say(|| format!("MISMATCH: {c} pair regenerates {other:?}"));
                return Ok(Outcome::Fail);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn eval_grammola_sign(field: &Field, cfg: &Json, log: &mut Log) -> Result<Outcome, ExplorerError> {
    let raw = parse_fixed::<6>(want(cfg, "coefficients")?, "the coefficient list")?;
    let mut coeffs = Vec::with_capacity(6);
    for value in raw {
        coeffs.push(parse_element(field, value)?);
    }
    let coeffs: [FieldElement; 6] = coeffs.try_into().expect("six parsed above");
    let k = match Conic::new(coeffs) {
        Ok(k) => k,
        Err(ConicError::NoQuadraticPart) => return Ok(Outcome::Skip(SKIP_NO_QUADRATIC)),
        Err(e) => return Err(ExplorerError::BadConfig(format!("not a conic: {e}"))),
    };
    let mut products = Vec::with_capacity(3);
    for color in Color::ALL {
        match grammola_analyze(color, &k) {
            Ok(g) => {
                let (qa, qb) = &g.corner_quadrances;
                let mut product = qa.mul(qb);
                while product.field() != field {
                    match product.project_to_base() {
                        Some(p) => product = p,
                        None => {
                            log.say(|| {
                                format!("MISMATCH: {color} corner product {product} is irrational")
                            });
                            return Ok(Outcome::Fail);
                        }
                    }
                }
                log.say(|| format!("{color} corner-quadrance product {product}"));
                products.push(product);
            }
            Err(
                ConicError::NoCenter | ConicError::DegenerateConic | ConicError::NoDiagonals(_),
            ) => return Ok(Outcome::Skip(SKIP_NO_DIAGONALS)),
            Err(e) => {
                log.say(|| format!("diagonal analysis failed unexpectedly: {e}"));
                return Ok(Outcome::Fail);
            }
        }
    }
    if !eq(log, "blue product vs negated red", &products[0], &products[1].neg()) {
        return Ok(Outcome::Fail);
    }
    if !eq(log, "blue product vs negated green", &products[0], &products[2].neg()) {
        return Ok(Outcome::Fail);
    }
    if let Some(sign) = products[0].real_sign() {
        log.say(|| format!("blue product sign {sign:+}"));
        if sign != 1 {
            log.say(|| "MISMATCH: blue corner product not positive".into());
            return Ok(Outcome::Fail);
        }
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------------------
// Reports.

/// One failed trial: the index, the full drawn configuration, and the
/// transcript of the failing evaluation.
#[derive(Debug, Clone)]
pub struct Failure {
    /// The trial index under the master seed.
    pub index: u64,
    /// The complete drawn configuration, as serialized for replay.
    pub config: Json,
    /// Every sub-expression of the failing check, in evaluation order.
    pub transcript: Vec<String>,
}

impl Failure {
    /// The JSON form embedded in reports.
    pub fn to_json(&self) -> Json {
        json!({
            "trial": self.index,
            "config": self.config,
            "transcript": self.transcript,
        })
    }
}

/// The outcome of verifying one law over one domain.
#[derive(Debug, Clone)]
pub struct TrialReport {
    /// Which law ran.
    pub law: LawId,
    /// Where configurations were drawn from.
    pub domain: Domain,
    /// How many trials were requested.
    pub trials_requested: u64,
    /// How many drew valid configurations and were actually checked;
    /// failed checks count as valid trials.
    pub trials_valid: u64,
    /// Skipped trials by category; see the module docs for the catalog.
    pub skips: BTreeMap<&'static str, u64>,
    /// The failures, in trial order. Empty means the law held everywhere.
    pub failures: Vec<Failure>,
    /// The seed the whole run derives from.
    pub master_seed: u64,
}

impl TrialReport {
    /// Total skipped trials across categories.
    pub fn skip_total(&self) -> u64 {
        self.skips.values().sum()
    }

    /// Whether the law held on every valid trial.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The stable JSON form: keys sort alphabetically, failures keep trial
    /// order, so equal inputs serialize to equal bytes.
    pub fn to_json(&self) -> Json {
        let skips: BTreeMap<String, u64> = self
            .skips
            .iter()
            .map(|(k, v)| ((*k).to_owned(), *v))
            .collect();
        json!({
            "law": self.law.name(),
            "field": self.domain.descriptor(),
            "master_seed": self.master_seed,
            "trials_requested": self.trials_requested,
            "trials_valid": self.trials_valid,
            "skips": skips,
            "failures": self.failures.iter().map(Failure::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Run `trials` random checks of one law and collect the report. The
/// result is a pure function of the arguments; see the module docs for the
/// seeding and skip rules.
pub fn verify(law: LawId, domain: &Domain, trials: u64, master_seed: u64) -> TrialReport {
    verify_inner(law, domain, trials, master_seed, Fault::None)
}

fn verify_inner(
    law: LawId,
    domain: &Domain,
    trials: u64,
    master_seed: u64,
    fault: Fault,
) -> TrialReport {
    let mut report = TrialReport {
        law,
        domain: domain.clone(),
        trials_requested: trials,
        trials_valid: 0,
        skips: BTreeMap::new(),
        failures: Vec::new(),
        master_seed,
    };
    let field = domain.field().clone();
    for index in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(master_seed, index));
        let config = draw_config(law, domain, &mut rng);
        let outcome = evaluate_inner(law, &field, &config, &mut Log::Off, fault)
            .expect("drawn configurations always parse");
        match outcome {
            Outcome::Pass => report.trials_valid += 1,
            Outcome::Skip(category) => *report.skips.entry(category).or_insert(0) += 1,
            Outcome::Fail => {
                report.trials_valid += 1;
                let mut log = Log::On(Vec::new());
                let replayed = evaluate_inner(law, &field, &config, &mut log, fault)
                    .expect("a config that evaluated once parses again");
                debug_assert_eq!(replayed, Outcome::Fail);
                report.failures.push(Failure {
                    index,
                    config,
                    transcript: log.lines(),
                });
            }
        }
    }
    debug_assert_eq!(report.trials_requested, report.trials_valid + report.skip_total());
    report
}

/// Verify every law in the catalog, in catalog order.
pub fn verify_all(domain: &Domain, trials: u64, master_seed: u64) -> Vec<TrialReport> {
    LawId::ALL
        .into_iter()
        .map(|law| verify(law, domain, trials, master_seed))
        .collect()
}

/// A replayed configuration: the outcome plus the full transcript.
#[derive(Debug, Clone)]
pub struct Replay {
    /// What the re-run came to.
    pub outcome: Outcome,
    /// Every sub-expression printed during the re-run.
    pub transcript: Vec<String>,
}

/// Re-execute one serialized configuration — typically a failure record's
/// `config` — and narrate every sub-expression. Malformed configurations
/// come back as errors rather than outcomes.
pub fn replay(law: LawId, domain: &Domain, config: &Json) -> Result<Replay, ExplorerError> {
    let mut log = Log::On(Vec::new());
    let outcome = evaluate(law, domain.field(), config, &mut log)?;
    Ok(Replay {
        outcome,
        transcript: log.lines(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Domain {
        Domain::prime(10007).unwrap()
    }

    fn rat() -> Domain {
        Domain::rational(8)
    }

    #[test]
    fn law_names_round_trip() {
        for law in LawId::ALL {
            assert_eq!(LawId::parse(law.name()).unwrap(), law);
        }
        assert!(LawId::parse("spread_lore").is_err());
        assert_eq!(law_catalog().split(',').count(), 10);
    }

    #[test]
    fn domain_parsing() {
        assert_eq!(Domain::parse("rational", 12).unwrap(), Domain::rational(12));
        assert_eq!(Domain::parse("fp:10007", 12).unwrap(), fp());
        assert!(Domain::parse("fp:2", 1).is_err());
        assert!(Domain::parse("fp:10008", 1).is_err());
        assert!(Domain::parse("real", 1).is_err());
    }

    #[test]
    fn trial_seeds_spread_out() {
        let mut seen = std::collections::HashSet::new();
        for master in [0u64, 1, 42] {
            for index in 0..50 {
                seen.insert(trial_seed(master, index));
            }
        }
        assert_eq!(seen.len(), 150);
    }

    #[test]
    fn every_law_holds_over_the_prime_field() {
        let domain = fp();
        for law in LawId::ALL {
            let report = verify(law, &domain, 40, 1);
            assert!(
                report.passed(),
                "{law} failed over {}: {:?}",
                domain.label(),
                report.failures.first().map(|f| &f.transcript)
            );
            assert_eq!(report.trials_requested, report.trials_valid + report.skip_total());
            assert!(report.trials_valid > 0, "{law} never drew a valid trial");
        }
    }

    #[test]
    fn every_law_holds_over_bounded_rationals() {
        let domain = rat();
        for law in LawId::ALL {
            let report = verify(law, &domain, 30, 2);
            assert!(
                report.passed(),
                "{law} failed over rationals: {:?}",
                report.failures.first().map(|f| &f.transcript)
            );
            assert_eq!(report.trials_requested, report.trials_valid + report.skip_total());
            assert!(report.trials_valid > 0, "{law} never drew a valid trial");
        }
    }

    #[test]
    fn reports_are_byte_stable() {
        for (law, domain) in [
            (LawId::SpreadLaw, fp()),
            (LawId::ParabolaIncidence, rat()),
            (LawId::GrammolaSignLaw, fp()),
        ] {
            let a = serde_json::to_string(&verify(law, &domain, 25, 7).to_json()).unwrap();
            let b = serde_json::to_string(&verify(law, &domain, 25, 7).to_json()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn different_seeds_draw_different_configurations() {
        let domain = fp();
        let a = verify(LawId::SpreadLaw, &domain, 10, 1).to_json();
        let b = verify(LawId::SpreadLaw, &domain, 10, 2).to_json();
        assert_ne!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    /// Over F₁₃ the blue metric has null lines (−1 is the square of 5), so
    /// the harmonic law must skip some draws and still verify the rest.
    #[test]
    fn harmonic_law_skips_null_draws_over_f13() {
        let domain = Domain::prime(13).unwrap();
        let report = verify(LawId::SpreadHarmonic2, &domain, 300, 3);
        assert!(report.passed());
        assert!(report.skip_total() > 0, "expected null-line skips over F13");
        assert!(report.trials_valid > 0);
        assert!(report.skips.contains_key(SKIP_NULL_LINE));
    }

    #[test]
    fn skip_accounting_balances() {
        let report = verify(LawId::SpreadLaw, &Domain::rational(2), 200, 11);
        assert!(report.passed());
        assert!(report.skip_total() > 0, "tiny heights should hit degeneracies");
        assert_eq!(report.trials_requested, report.trials_valid + report.skip_total());
    }

    #[test]
    fn replay_narrates_a_passing_configuration() {
        let domain = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(9, 0));
        let config = draw_config(LawId::ArchimedesSign, &domain, &mut rng);
        let replayed = replay(LawId::ArchimedesSign, &domain, &config).unwrap();
        assert_eq!(replayed.outcome, Outcome::Pass);
        assert!(!replayed.transcript.is_empty());
    }

    #[test]
    fn replay_rejects_malformed_configurations() {
        let domain = fp();
        let err = replay(LawId::SpreadLaw, &domain, &json!({"color": "blue"})).unwrap_err();
        assert!(matches!(err, ExplorerError::BadConfig(_)));
        let err = replay(
            LawId::SpreadLaw,
            &domain,
            &json!({"color": "mauve", "triangle": []}),
        )
        .unwrap_err();
        assert!(matches!(err, ExplorerError::BadConfig(_)));
    }

    /// Sabotaging a law must surface as reported mismatches whose recorded
    /// configurations replay clean against the honest checker.
    #[test]
    fn injected_fault_is_reported() {
        let domain = rat();
        let report = verify_inner(LawId::ArchimedesSign, &domain, 30, 5, Fault::FlipArchimedesSign);
        assert!(!report.passed(), "flipped sign must fail");
        assert_eq!(report.trials_valid as usize, report.failures.len());
        let failure = &report.failures[0];
        assert!(
            failure.transcript.iter().any(|l| l.contains("MISMATCH")),
            "transcript must flag the mismatch: {:?}",
            failure.transcript
        );
        let honest = replay(LawId::ArchimedesSign, &domain, &failure.config).unwrap();
        assert_eq!(honest.outcome, Outcome::Pass);
    }
}
