//! Points, lines, and the three colored metrical structures.
//!
//! Each color `c` equips the plane with a quadratic form on vectors:
//!
//! | color | quadrance of `(a, b)` | perpendicular of `(a, b)` |
//! |-------|----------------------|---------------------------|
//! | blue  | `a² + b²`            | `(−b, a)`                 |
//! | red   | `a² − b²`            | `(b, a)`                  |
//! | green | `2ab`                | `(−a, b)`                 |
//!
//! Red and green have *null* directions of zero quadrance (slopes `±1`,
//! respectively horizontal/vertical); lines in those directions have no
//! spreads or altitude feet, and every such operation here reports that
//! explicitly instead of dividing by zero.
//!
//! Lines are stored projectively normalized — the first nonzero coefficient
//! of `(a, b)` is scaled to one — so structural equality is equality of
//! lines. The *spread* between lines `l₁`, `l₂` is
//! `σ_c (a₁b₂ − a₂b₁)² / (N_c(l₁) N_c(l₂))` with `σ` positive for blue and
//! negative otherwise; `N_c` is the coefficient form matching the color
//! (`a² + b²`, `a² − b²`, `2ab`). A spread is `1` exactly for perpendicular
//! lines and `0` exactly for parallel ones.

use std::fmt;

use crate::field::{Field, FieldElement, FieldError};

/// One of the three metrical colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// The Euclidean form `a² + b²`.
    Blue,
    /// The hyperbolic form `a² − b²`.
    Red,
    /// The hyperbolic form `2ab` in null coordinates.
    Green,
}

impl Color {
    /// All three colors, in canonical order.
    pub const ALL: [Color; 3] = [Color::Blue, Color::Red, Color::Green];

    /// The sign `σ_c` in the spread and triangle-area conventions:
    /// `+1` for blue, `−1` for red and green.
    pub fn sign(self) -> i64 {
        match self {
            Color::Blue => 1,
            Color::Red => -1,
            Color::Green => -1,
        }
    }

    /// The other two colors, in canonical order.
    pub fn others(self) -> [Color; 2] {
        match self {
            Color::Blue => [Color::Red, Color::Green],
            Color::Red => [Color::Blue, Color::Green],
            Color::Green => [Color::Blue, Color::Red],
        }
    }

    /// Parse `"blue"`, `"red"`, or `"green"`.
    pub fn parse(text: &str) -> Option<Color> {
        match text {
            "blue" => Some(Color::Blue),
            "red" => Some(Color::Red),
            "green" => Some(Color::Green),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Red => "red",
            Color::Green => "green",
        })
    }
}

/// Errors from metric constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    /// A line through two points needs the points distinct.
    #[error("coincident points determine no line")]
    CoincidentPoints,
    /// A line needs `(a, b) ≠ (0, 0)`.
    #[error("line coefficients (a, b) must not both vanish")]
    InvalidLine,
    /// The line is null in the given color, so the requested construction
    /// (spread denominator, altitude foot, point-line quadrance) degenerates.
    #[error("line is {color}-null")]
    NullLine {
        /// The color in which the line is null.
        color: Color,
    },
    /// Scalar-level failure bubbled up from the field.
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A displacement vector with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    /// First coordinate.
    pub x: FieldElement,
    /// Second coordinate.
    pub y: FieldElement,
}

/// An affine point with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    /// First coordinate.
    pub x: FieldElement,
    /// Second coordinate.
    pub y: FieldElement,
}

impl Vec2 {
    /// Bundle two coordinates; they must share a field.
    pub fn new(x: FieldElement, y: FieldElement) -> Vec2 {
        assert!(x.field() == y.field(), "vector coordinates from different fields");
        Vec2 { x, y }
    }

    /// The common field of the coordinates.
    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_i64(field: &Field, x: i64, y: i64) -> Vec2 {
        Vec2::new(field.from_i64(x), field.from_i64(y))
    }

    /// Componentwise negation.
    pub fn neg(&self) -> Vec2 {
        Vec2::new(self.x.neg(), self.y.neg())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2::new(self.x.add(&other.x), self.y.add(&other.y))
    }

    /// Scalar multiple.
    pub fn scale(&self, t: &FieldElement) -> Vec2 {
        Vec2::new(self.x.mul(t), self.y.mul(t))
    }

    /// Both components zero.
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Point {
    /// Bundle two coordinates; they must share a field.
    pub fn new(x: FieldElement, y: FieldElement) -> Point {
        assert!(x.field() == y.field(), "point coordinates from different fields");
        Point { x, y }
    }

    /// The common field of the coordinates.
    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_i64(field: &Field, x: i64, y: i64) -> Point {
        Point::new(field.from_i64(x), field.from_i64(y))
    }

    /// The displacement `other − self`.
    pub fn to(&self, other: &Point) -> Vec2 {
        Vec2::new(other.x.sub(&self.x), other.y.sub(&self.y))
    }

    /// Translate by a vector.
    pub fn translate(&self, v: &Vec2) -> Point {
        Point::new(self.x.add(&v.x), self.y.add(&v.y))
    }

    /// Lift into a larger field.
    pub fn embed(&self, field: &Field) -> Result<Point, FieldError> {
        Ok(Point::new(field.embed(&self.x)?, field.embed(&self.y)?))
    }
}

/// A line `a·x + b·y + c = 0`, stored with its first nonzero coefficient of
/// `(a, b)` normalized to one so that equal lines are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl Line {
    /// Build a line from coefficients, normalizing the scale. Fails when
    /// `a` and `b` are both zero.
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Line, MetricError> {
        assert!(
            a.field() == b.field() && b.field() == c.field(),
            "line coefficients from different fields"
        );
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(MetricError::InvalidLine);
        };
        let inv = lead.checked_inv().expect("leading coefficient is nonzero");
        Ok(Line {
            a: a.mul(&inv),
            b: b.mul(&inv),
            c: c.mul(&inv),
        })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_i64(field: &Field, a: i64, b: i64, c: i64) -> Result<Line, MetricError> {
        Line::new(field.from_i64(a), field.from_i64(b), field.from_i64(c))
    }

    /// The line through two distinct points.
    pub fn through(a1: &Point, a2: &Point) -> Result<Line, MetricError> {
        let d = a1.to(a2);
        if d.is_zero() {
            return Err(MetricError::CoincidentPoints);
        }
        // Normal (dy, −dx), constant chosen so a1 lies on the line.
        let a = d.y.clone();
        let b = d.x.neg();
        let c = a.mul(&a1.x).add(&b.mul(&a1.y)).neg();
        Line::new(a, b, c)
    }

    /// Normalized coefficients `(a, b, c)`.
    pub fn coefficients(&self) -> (&FieldElement, &FieldElement, &FieldElement) {
        (&self.a, &self.b, &self.c)
    }

    /// The common field of the coefficients.
    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// A direction vector `(−b, a)`.
    pub fn direction(&self) -> Vec2 {
        Vec2::new(self.b.neg(), self.a.clone())
    }

    /// `a·x + b·y + c` at a point: zero exactly on the line.
    pub fn evaluate(&self, p: &Point) -> FieldElement {
        self.a.mul(&p.x).add(&self.b.mul(&p.y)).add(&self.c)
    }

    /// True when the point satisfies the line equation.
    pub fn contains(&self, p: &Point) -> bool {
        self.evaluate(p).is_zero()
    }

    /// The parallel line through a given point.
    pub fn parallel_through(&self, p: &Point) -> Line {
        let c = self.a.mul(&p.x).add(&self.b.mul(&p.y)).neg();
        Line {
            a: self.a.clone(),
            b: self.b.clone(),
            c,
        }
    }

    /// The line through `p` with direction `v` (nonzero).
    pub fn through_with_direction(p: &Point, v: &Vec2) -> Result<Line, MetricError> {
        if v.is_zero() {
            return Err(MetricError::InvalidLine);
        }
        let a = v.y.clone();
        let b = v.x.neg();
        let c = a.mul(&p.x).add(&b.mul(&p.y)).neg();
        Line::new(a, b, c)
    }

    /// Lift into a larger field.
    pub fn embed(&self, field: &Field) -> Result<Line, FieldError> {
        Ok(Line {
            a: field.embed(&self.a)?,
            b: field.embed(&self.b)?,
            c: field.embed(&self.c)?,
        })
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]x + [{}]y + [{}] = 0", self.a, self.b, self.c)
    }
}

/// The color's quadratic form on a vector.
pub fn vector_quadrance(c: Color, v: &Vec2) -> FieldElement {
    match c {
        Color::Blue => v.x.square().add(&v.y.square()),
        Color::Red => v.x.square().sub(&v.y.square()),
        Color::Green => v.x.mul(&v.y).mul_i64(2),
    }
}

/// The quadrance between two points: the form applied to their difference.
pub fn quadrance(c: Color, a1: &Point, a2: &Point) -> FieldElement {
    vector_quadrance(c, &a1.to(a2))
}

/// The color's symmetric bilinear form; `dot(c, v, v)` is the quadrance.
pub fn dot(c: Color, v1: &Vec2, v2: &Vec2) -> FieldElement {
    match c {
        Color::Blue => v1.x.mul(&v2.x).add(&v1.y.mul(&v2.y)),
        Color::Red => v1.x.mul(&v2.x).sub(&v1.y.mul(&v2.y)),
        Color::Green => v1.x.mul(&v2.y).add(&v2.x.mul(&v1.y)),
    }
}

/// The color's quarter-turn: `B(a,b) = (−b,a)`, `R(a,b) = (b,a)`,
/// `G(a,b) = (−a,b)`. Each output is perpendicular to its input in that
/// color, and perpendicular to a null vector is parallel to it.
pub fn perp(c: Color, v: &Vec2) -> Vec2 {
    match c {
        Color::Blue => Vec2::new(v.y.neg(), v.x.clone()),
        Color::Red => Vec2::new(v.y.clone(), v.x.clone()),
        Color::Green => Vec2::new(v.x.neg(), v.y.clone()),
    }
}

/// The planar cross determinant `a₁b₂ − a₂b₁`.
pub fn cross(v1: &Vec2, v2: &Vec2) -> FieldElement {
    v1.x.mul(&v2.y).sub(&v2.x.mul(&v1.y))
}

/// True when the vectors are dependent.
pub fn is_parallel(v1: &Vec2, v2: &Vec2) -> bool {
    cross(v1, v2).is_zero()
}

/// True when the vectors are `c`-perpendicular.
pub fn vectors_perpendicular(c: Color, v1: &Vec2, v2: &Vec2) -> bool {
    dot(c, v1, v2).is_zero()
}

/// True when the lines' directions are `c`-perpendicular.
pub fn is_perpendicular(c: Color, l1: &Line, l2: &Line) -> bool {
    vectors_perpendicular(c, &l1.direction(), &l2.direction())
}

/// The coefficient form `N_c` of a line: `a² + b²`, `a² − b²`, or `2ab` on
/// the normalized coefficients. Zero exactly when the line is `c`-null.
pub fn line_norm(c: Color, l: &Line) -> FieldElement {
    match c {
        Color::Blue => l.a.square().add(&l.b.square()),
        Color::Red => l.a.square().sub(&l.b.square()),
        Color::Green => l.a.mul(&l.b).mul_i64(2),
    }
}

/// True when the line's direction has zero `c`-quadrance.
pub fn is_null_line(c: Color, l: &Line) -> bool {
    line_norm(c, l).is_zero()
}

/// The spread between two lines, or `None` when either is `c`-null.
pub fn spread(c: Color, l1: &Line, l2: &Line) -> Option<FieldElement> {
    let n1 = line_norm(c, l1);
    let n2 = line_norm(c, l2);
    if n1.is_zero() || n2.is_zero() {
        return None;
    }
    let x = l1.a.mul(&l2.b).sub(&l2.a.mul(&l1.b));
    let s = x
        .square()
        .checked_div(&n1.mul(&n2))
        .expect("norms checked nonzero");
    Some(s.mul_i64(c.sign()))
}

/// The meeting point of two lines, or `None` when they are parallel
/// (including equal).
pub fn line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let det = l1.a.mul(&l2.b).sub(&l2.a.mul(&l1.b));
    if det.is_zero() {
        return None;
    }
    let det_inv = det.checked_inv().expect("determinant is nonzero");
    // Cramer on a·x + b·y = −c.
    let x = l1.b.mul(&l2.c).sub(&l2.b.mul(&l1.c)).mul(&det_inv);
    let y = l2.a.mul(&l1.c).sub(&l1.a.mul(&l2.c)).mul(&det_inv);
    Some(Point::new(x, y))
}

/// The `c`-altitude from a point to a line, with its foot. The altitude
/// runs through `a` in the direction perpendicular to `l`; for a `c`-null
/// line that direction is parallel to `l` and no foot exists.
pub fn altitude_foot(c: Color, a: &Point, l: &Line) -> Result<(Line, Point), MetricError> {
    if is_null_line(c, l) {
        return Err(MetricError::NullLine { color: c });
    }
    let dir = perp(c, &l.direction());
    let altitude = Line::through_with_direction(a, &dir)?;
    let foot = line_intersection(&altitude, l)
        .expect("altitude to a non-null line meets it");
    Ok((altitude, foot))
}

/// The quadrance from a point to a line: `(a·x + b·y + c)² / N_c(l)`,
/// equal to the quadrance from the point to the altitude foot.
pub fn quadrance_point_line(c: Color, x: &Point, l: &Line) -> Result<FieldElement, MetricError> {
    let n = line_norm(c, l);
    if n.is_zero() {
        return Err(MetricError::NullLine { color: c });
    }
    Ok(l.evaluate(x).square().checked_div(&n).expect("norm is nonzero"))
}

/// The two sides of the colored quadrance identity for a point pair:
/// `(Q_blue², Q_red² + Q_green²)`. They are always equal; returning both
/// keeps the check honest.
pub fn quadrance_square_identity(a1: &Point, a2: &Point) -> (FieldElement, FieldElement) {
    let qb = quadrance(Color::Blue, a1, a2);
    let qr = quadrance(Color::Red, a1, a2);
    let qg = quadrance(Color::Green, a1, a2);
    (qb.square(), qr.square().add(&qg.square()))
}

/// The sum `1/s_blue + 1/s_red + 1/s_green` of reciprocal spreads of a line
/// pair, or `None` when any spread is undefined (a null line) or zero
/// (parallel lines). When defined the sum is the constant `2`.
pub fn spread_harmonic(l1: &Line, l2: &Line) -> Option<FieldElement> {
    let mut acc = l1.field().zero();
    for c in Color::ALL {
        let s = spread(c, l1, l2)?;
        if s.is_zero() {
            return None;
        }
        acc = acc.add(&s.checked_inv().expect("spread checked nonzero"));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rational()
    }

    fn p(x: i64, y: i64) -> Point {
        Point::from_i64(&q(), x, y)
    }

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::from_i64(&q(), x, y)
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::from_i64(&q(), a, b, c).unwrap()
    }

    fn rat(n: i64, m: i64) -> FieldElement {
        q().from_ratio(n, m).unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng) -> Point {
        Point::new(
            q().from_ratio(rng.gen_range(-12..=12), rng.gen_range(1..=8)).unwrap(),
            q().from_ratio(rng.gen_range(-12..=12), rng.gen_range(1..=8)).unwrap(),
        )
    }

    #[test]
    fn quadrances_of_a_three_four_displacement() {
        let a = p(0, 0);
        let b = p(3, 4);
        assert_eq!(quadrance(Color::Blue, &a, &b), rat(25, 1));
        assert_eq!(quadrance(Color::Red, &a, &b), rat(-7, 1));
        assert_eq!(quadrance(Color::Green, &a, &b), rat(24, 1));
    }

    #[test]
    fn quadrance_squares_satisfy_the_color_identity() {
        let (lhs, rhs) = quadrance_square_identity(&p(0, 0), &p(3, 4));
        assert_eq!(lhs, rat(625, 1));
        assert_eq!(rhs, rat(49 + 576, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (lhs, rhs) = quadrance_square_identity(&random_point(&mut rng), &random_point(&mut rng));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn perpendicular_maps_produce_perpendicular_vectors() {
        assert_eq!(perp(Color::Blue, &v(2, 3)), v(-3, 2));
        assert_eq!(perp(Color::Red, &v(2, 3)), v(3, 2));
        assert_eq!(perp(Color::Green, &v(2, 3)), v(-2, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let w = random_point(&mut rng).to(&p(0, 0));
            for c in Color::ALL {
                assert!(vectors_perpendicular(c, &w, &perp(c, &w)));
                // The quarter-turn preserves the quadrance up to the color sign.
                let q1 = vector_quadrance(c, &w);
                let q2 = vector_quadrance(c, &perp(c, &w));
                assert_eq!(q2, q1.mul_i64(c.sign()));
            }
        }
    }

    #[test]
    fn perpendicular_map_iterates_like_a_quarter_turn() {
        let w = v(5, -7);
        assert_eq!(perp(Color::Blue, &perp(Color::Blue, &w)), w.neg());
        assert_eq!(perp(Color::Red, &perp(Color::Red, &w)), w);
        assert_eq!(perp(Color::Green, &perp(Color::Green, &w)), w);
    }

    #[test]
    fn dots_agree_with_quadrances_and_detect_perpendicularity() {
        assert_eq!(dot(Color::Green, &v(2, -2), &v(4, 4)), rat(0, 1));
        assert!(vectors_perpendicular(Color::Red, &v(2, -3), &v(3, -2)));
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let w = random_point(&mut rng).to(&p(0, 0));
            for c in Color::ALL {
                assert_eq!(dot(c, &w, &w), vector_quadrance(c, &w));
            }
        }
    }

    #[test]
    fn lines_through_points_are_canonical() {
        let l = Line::through(&p(0, 0), &p(1, 2)).unwrap();
        assert_eq!(l, line(2, -1, 0));
        let (a, b, c) = l.coefficients();
        assert_eq!(a, &rat(1, 1));
        assert_eq!(b, &rat(-1, 2));
        assert!(c.is_zero());
        assert_eq!(Line::through(&p(2, 1), &p(-2, -1)).unwrap(), line(1, -2, 0));
        assert_eq!(
            Line::through(&p(0, 0), &p(0, 0)),
            Err(MetricError::CoincidentPoints)
        );
        // Scale-equivalent coefficients collapse to one representative.
        assert_eq!(line(2, 4, 6), line(1, 2, 3));
        assert_eq!(line(0, 3, 6), line(0, 1, 2));
        assert_eq!(
            Line::from_i64(&q(), 0, 0, 5),
            Err(MetricError::InvalidLine)
        );
    }

    #[test]
    fn spreads_match_the_worked_line_pairs() {
        let l1 = line(1, -1, 0);
        let l2 = line(1, 0, 0);
        assert_eq!(spread(Color::Blue, &l1, &l2), Some(rat(1, 2)));
        // The first line is red-null, so the red spread is undefined.
        assert_eq!(spread(Color::Red, &l1, &l2), None);
        let l3 = line(1, 1, 0);
        assert_eq!(spread(Color::Green, &l1, &l3), Some(rat(1, 1)));
        assert!(is_perpendicular(Color::Green, &l1, &l3));
    }

    #[test]
    fn spread_is_one_exactly_for_perpendicular_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(314);
        let mut seen_perpendicular = 0;
        for _ in 0..2000 {
            let a = rng.gen_range(-6..=6);
            let b = rng.gen_range(-6..=6);
            let a2 = rng.gen_range(-6..=6);
            let b2 = rng.gen_range(-6..=6);
            let (Ok(l1), Ok(l2)) = (
                Line::from_i64(&q(), a, b, rng.gen_range(-4..=4)),
                Line::from_i64(&q(), a2, b2, rng.gen_range(-4..=4)),
            ) else {
                continue;
            };
            for c in Color::ALL {
                if let Some(s) = spread(c, &l1, &l2) {
                    assert_eq!(s.is_one(), is_perpendicular(c, &l1, &l2), "{c} {l1} {l2}");
                    assert_eq!(s.is_zero(), is_parallel(&l1.direction(), &l2.direction()));
                    assert_eq!(spread(c, &l2, &l1), Some(s.clone()));
                    if s.is_one() {
                        seen_perpendicular += 1;
                    }
                }
            }
        }
        assert!(seen_perpendicular > 20, "perpendicular draws should occur");
    }

    #[test]
    fn altitudes_land_on_their_feet() {
        let (alt, foot) = altitude_foot(Color::Blue, &p(0, 0), &line(1, 1, -2)).unwrap();
        assert_eq!(foot, p(1, 1));
        assert!(alt.contains(&p(0, 0)));
        let (_, foot) = altitude_foot(Color::Red, &p(0, 0), &line(0, 1, -1)).unwrap();
        assert_eq!(foot, p(0, 1));
        let (_, foot) = altitude_foot(Color::Green, &p(0, 0), &line(1, 1, -2)).unwrap();
        assert_eq!(foot, p(1, 1));
        assert_eq!(
            altitude_foot(Color::Red, &p(0, 0), &line(1, 1, 0)),
            Err(MetricError::NullLine { color: Color::Red })
        );
        assert_eq!(
            altitude_foot(Color::Green, &p(1, 1), &line(0, 1, -4)),
            Err(MetricError::NullLine { color: Color::Green })
        );
    }

    #[test]
    fn point_line_quadrance_agrees_with_the_foot_construction() {
        assert_eq!(
            quadrance_point_line(Color::Blue, &p(0, 0), &line(2, 1, -6)).unwrap(),
            rat(36, 5)
        );
        assert_eq!(
            quadrance_point_line(Color::Red, &p(0, 0), &line(3, -1, -16)).unwrap(),
            rat(32, 1)
        );
        assert_eq!(
            quadrance_point_line(Color::Green, &p(1, 1), &line(1, 2, -7)).unwrap(),
            rat(4, 1)
        );
        assert_eq!(
            quadrance_point_line(Color::Red, &p(0, 0), &line(1, 1, 0)),
            Err(MetricError::NullLine { color: Color::Red })
        );
        let mut rng = ChaCha8Rng::seed_from_u64(88);
        for _ in 0..400 {
            let x = random_point(&mut rng);
            let a = rng.gen_range(-5..=5);
            let b = rng.gen_range(-5..=5);
            let Ok(l) = Line::from_i64(&q(), a, b, rng.gen_range(-5..=5)) else {
                continue;
            };
            for c in Color::ALL {
                match altitude_foot(c, &x, &l) {
                    Ok((_, foot)) => {
                        assert_eq!(
                            quadrance_point_line(c, &x, &l).unwrap(),
                            quadrance(c, &x, &foot)
                        );
                    }
                    Err(MetricError::NullLine { .. }) => {
                        assert!(quadrance_point_line(c, &x, &l).is_err());
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn altitudes_of_different_colors_pair_up_perpendicularly() {
        // The blue and red altitudes to any line are green-perpendicular,
        // and cyclically: this is direction algebra, null or not.
        let mut rng = ChaCha8Rng::seed_from_u64(412);
        for _ in 0..300 {
            let d = random_point(&mut rng).to(&p(0, 0));
            if d.is_zero() {
                continue;
            }
            let b = perp(Color::Blue, &d);
            let r = perp(Color::Red, &d);
            let g = perp(Color::Green, &d);
            assert!(vectors_perpendicular(Color::Green, &b, &r));
            assert!(vectors_perpendicular(Color::Blue, &r, &g));
            assert!(vectors_perpendicular(Color::Red, &b, &g));
        }
    }

    #[test]
    fn reciprocal_spreads_sum_to_two() {
        let l1 = line(2, 1, 0);
        let l2 = line(1, 3, 0);
        assert_eq!(spread(Color::Blue, &l1, &l2), Some(rat(1, 2)));
        assert_eq!(spread(Color::Red, &l1, &l2), Some(rat(25, 24)));
        assert_eq!(spread(Color::Green, &l1, &l2), Some(rat(-25, 24)));
        assert_eq!(spread_harmonic(&l1, &l2), Some(rat(2, 1)));
        // Equal lines have all spreads zero: the sum is undefined.
        assert_eq!(spread_harmonic(&l1, &l1), None);
        // A null line in any color also leaves the sum undefined.
        assert_eq!(spread_harmonic(&line(1, 1, 0), &l2), None);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let two = rat(2, 1);
        let mut checked = 0;
        for _ in 0..800 {
            let (Ok(l1), Ok(l2)) = (
                Line::from_i64(&q(), rng.gen_range(-7..=7), rng.gen_range(-7..=7), rng.gen_range(-3..=3)),
                Line::from_i64(&q(), rng.gen_range(-7..=7), rng.gen_range(-7..=7), rng.gen_range(-3..=3)),
            ) else {
                continue;
            };
            if let Some(h) = spread_harmonic(&l1, &l2) {
                assert_eq!(h, two);
                checked += 1;
            }
        }
        assert!(checked > 100, "generic draws should define the sum");
    }

    #[test]
    fn line_intersections_solve_both_equations() {
        let l1 = line(1, -1, -2);
        let l2 = line(1, 1, -4);
        let x = line_intersection(&l1, &l2).unwrap();
        assert_eq!(x, p(3, 1));
        assert_eq!(line_intersection(&l1, &l1), None);
        assert_eq!(line_intersection(&line(1, 2, 0), &line(2, 4, 5)), None);
    }

    #[test]
    fn null_lines_are_the_degenerate_directions() {
        // Red: slopes ±1; green: horizontal and vertical.
        assert!(is_null_line(Color::Red, &line(1, 1, 3)));
        assert!(is_null_line(Color::Red, &line(1, -1, 0)));
        assert!(is_null_line(Color::Green, &line(1, 0, 2)));
        assert!(is_null_line(Color::Green, &line(0, 1, -5)));
        assert!(!is_null_line(Color::Blue, &line(1, 1, 0)));
        // Over F₁₃, −1 is a square, so blue-null lines exist: 5² = −1.
        let f = Field::prime(13).unwrap();
        let l = Line::from_i64(&f, 1, 5, 0).unwrap();
        assert!(is_null_line(Color::Blue, &l));
    }
}
