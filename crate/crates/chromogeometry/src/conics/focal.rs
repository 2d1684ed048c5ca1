//! Focus/directrix, two-focus, and diagonal-pair descriptions of conics,
//! in each of the three colors.

use crate::field::{extend_by_sqrt, Field, FieldElement};
use crate::metric::{
    self, dot, is_null_line, is_parallel, line_norm, perp, quadrance, quadrance_point_line, spread,
    vector_quadrance, Color, Line, MetricError, Point, Vec2,
};
use crate::trig::{archimedes, Triangle};

use super::{
    linear_product, point_cmp, poly_add, poly_scale, poly_sub, quadrance_poly, sample, Conic,
    ConicError, Linear, MeetResult,
};

fn color_index(c: Color) -> usize {
    match c {
        Color::Blue => 0,
        Color::Red => 1,
        Color::Green => 2,
    }
}

fn third_color(a: Color, b: Color) -> Color {
    debug_assert_ne!(a, b);
    *Color::ALL
        .iter()
        .find(|c| **c != a && **c != b)
        .expect("two distinct colors leave one")
}

/// Map a null-line failure from an altitude construction to the conic-level
/// error; anything else passes through.
fn altitude_error(e: MetricError) -> ConicError {
    match e {
        MetricError::NullLine { color } => ConicError::NullAltitude(color),
        other => ConicError::Metric(other),
    }
}

/// One colored focus/directrix description of a conic: the locus of points
/// whose quadrance to `focus` is `ecc2` times their quadrance to
/// `directrix`, both measured in `color`.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusDirectrixPair {
    /// The color of the two quadrances.
    pub color: Color,
    /// The fixed point.
    pub focus: Point,
    /// The fixed line.
    pub directrix: Line,
    /// The squared eccentricity. The eccentricity itself generally lies
    /// outside the field, so only its square is carried.
    pub ecc2: FieldElement,
}

impl FocusDirectrixPair {
    /// The conic this pair describes.
    pub fn conic(&self) -> Result<Conic, ConicError> {
        conic_from_focus_directrix(self.color, &self.focus, &self.directrix, &self.ecc2)
    }
}

/// The conic of all points `X` with `Q_c(X, F) = ecc2 · Q_c(X, l)`.
///
/// Clearing the one denominator, the defining polynomial is
/// `Q_c(X, F)·N_c(l) − ecc2·(a·x + b·y + c)²` on the line's normalized
/// coefficients. The directrix must not be `c`-null (its quadrance would be
/// undefined) and the focus must not lie on it (the locus would degenerate).
pub fn conic_from_focus_directrix(
    c: Color,
    focus: &Point,
    directrix: &Line,
    ecc2: &FieldElement,
) -> Result<Conic, ConicError> {
    if is_null_line(c, directrix) {
        return Err(ConicError::NullDirectrix(c));
    }
    if directrix.contains(focus) {
        return Err(ConicError::FocusOnDirectrix);
    }
    let n = line_norm(c, directrix);
    let (la, lb, lc) = directrix.coefficients();
    let lin: Linear = [la.clone(), lb.clone(), lc.clone()];
    let lhs = poly_scale(&quadrance_poly(c, focus), &n);
    let rhs = poly_scale(&linear_product(&lin, &lin), ecc2);
    Conic::new(poly_sub(&lhs, &rhs))
}

/// The parabola with focus `F` and directrix `l` in color `c`: the
/// eccentricity-one case `Q_c(X, F) = Q_c(X, l)`. The quadratic part of the
/// result is always singular.
pub fn parabola_conic(c: Color, focus: &Point, directrix: &Line) -> Result<Conic, ConicError> {
    let field = focus.field();
    let k = conic_from_focus_directrix(c, focus, directrix, &field.one())?;
    assert!(
        k.det2().is_zero(),
        "an eccentricity-one conic has a singular quadratic part"
    );
    Ok(k)
}

/// The conic of all points `X` whose quadrances `Q₁ = Q_c(X, F₁)` and
/// `Q₂ = Q_c(X, F₂)` satisfy the Archimedes relation
/// `−(Q₁−Q₂)² + 2K(Q₁+Q₂) − K² = 0`.
///
/// The quadratic parts of `Q₁` and `Q₂` cancel in `Q₁ − Q₂`, so the
/// expansion stays quadratic. `K = 0` yields the doubled line `(Q₁−Q₂)² = 0`.
pub fn quadrola_conic(
    c: Color,
    f1: &Point,
    f2: &Point,
    k: &FieldElement,
) -> Result<Conic, ConicError> {
    if f1 == f2 {
        return Err(ConicError::CoincidentFoci);
    }
    let q1 = quadrance_poly(c, f1);
    let q2 = quadrance_poly(c, f2);
    let diff = poly_sub(&q1, &q2);
    assert!(
        diff[..3].iter().all(|t| t.is_zero()),
        "quadrance difference must be linear"
    );
    let lin: Linear = [diff[3].clone(), diff[4].clone(), diff[5].clone()];
    let field = k.field();
    let mut poly = poly_scale(&linear_product(&lin, &lin), &field.from_i64(-1));
    poly = poly_add(&poly, &poly_scale(&poly_add(&q1, &q2), &k.mul_i64(2)));
    poly[5] = poly[5].sub(&k.square());
    Conic::new(poly)
}

/// One pair of opposite foci of a two-focus description, with the polar
/// directrix and Archimedes constant belonging to that pair.
#[derive(Debug, Clone)]
pub struct QuadrolaPair {
    /// The two foci, canonically ordered.
    pub foci: (Point, Point),
    /// The directrices, each the polar line of the focus in the same slot.
    pub directrices: (Line, Line),
    /// The constant `K` with `A(Q₁, Q₂, K) = 0` on the conic. Conjugate
    /// pairs of the same conic may carry conjugate constants.
    pub k: FieldElement,
}

/// The full two-focus analysis of a central conic in one color.
#[derive(Debug, Clone)]
pub struct QuadrolaData {
    /// The color of the analysis.
    pub color: Color,
    /// The four points of the conic where the tangent runs parallel to a
    /// null direction of the color, expressed in `tower`.
    pub directrix_points: [Point; 4],
    /// The two opposite-focus pairs formed by intersecting those tangents.
    pub pairs: [QuadrolaPair; 2],
    /// The field all coordinates live in: the conic's field extended by
    /// at most two square roots.
    pub tower: Field,
}

/// The two null directions of a color, when the field admits them. Red
/// and green null directions are rational; blue ones need a square root
/// of `−1`.
fn null_directions(c: Color, field: &Field) -> Result<[Vec2; 2], ConicError> {
    let one = field.one();
    match c {
        Color::Red => Ok([
            Vec2::new(one.clone(), one.clone()),
            Vec2::new(one.clone(), one.neg()),
        ]),
        Color::Green => Ok([
            Vec2::new(one.clone(), field.zero()),
            Vec2::new(field.zero(), one),
        ]),
        Color::Blue => {
            let i = field
                .from_i64(-1)
                .sqrt()
                .ok_or(ConicError::NoNullDirections(Color::Blue))?;
            Ok([Vec2::new(one.clone(), i.clone()), Vec2::new(one, i.neg())])
        }
    }
}

/// The line of points whose tangent direction is conjugate to `d`: where
/// the gradient of the conic is orthogonal to `d` in the plain bilinear
/// sense, i.e. where tangents run parallel to `d`.
fn conjugate_diameter(k: &Conic, d: &Vec2) -> Result<Line, ConicError> {
    let [a, b, c, dd, e, _] = k.coefficients();
    Line::new(
        a.mul(&d.x).mul_i64(2).add(&b.mul(&d.y)),
        b.mul(&d.x).add(&c.mul(&d.y).mul_i64(2)),
        dd.mul(&d.x).add(&e.mul(&d.y)),
    )
    .map_err(ConicError::Metric)
}

/// Find the Archimedes constant of a focus pair by matching two coefficient
/// slots of `−(Q₁−Q₂)² + 2K(Q₁+Q₂) − K²` against the conic, up to scale.
/// The caller verifies the full reconstruction afterwards.
fn solve_quadrola_k(
    c: Color,
    f1: &Point,
    f2: &Point,
    target: &Conic,
) -> FieldElement {
    let q1 = quadrance_poly(c, f1);
    let q2 = quadrance_poly(c, f2);
    let diff = poly_sub(&q1, &q2);
    let lin: Linear = [diff[3].clone(), diff[4].clone(), diff[5].clone()];
    let field = f1.field();
    let a_part = poly_scale(&linear_product(&lin, &lin), &field.from_i64(-1));
    let b_part = poly_scale(&poly_add(&q1, &q2), &field.from_i64(2));
    let cs = target.coefficients();
    // Every slot but the constant one is linear in (K, μ):
    //   a_i + K·b_i = μ·c_i.
    for i in 0..5 {
        for j in (i + 1)..5 {
            let det = cs[i].mul(&b_part[j]).sub(&b_part[i].mul(&cs[j]));
            if det.is_zero() {
                continue;
            }
            let num = a_part[i].mul(&cs[j]).sub(&cs[i].mul(&a_part[j]));
            return num.checked_div(&det).expect("nonzero determinant");
        }
    }
    unreachable!("a tangent-constructed focus pair determines its constant")
}

/// Two-focus analysis: find the four points where tangents run parallel to
/// the color's null directions, intersect those tangents into two pairs of
/// opposite foci, pair each focus with its polar directrix, and recover the
/// Archimedes constant of each pair.
///
/// The four foci always form a parallelogram centered at the conic's
/// center whose sides are perpendicular in both other colors — this is
/// asserted, as is the reconstruction of the conic from each pair.
pub fn quadrola_foci(c: Color, k: &Conic) -> Result<QuadrolaData, ConicError> {
    let center = k.center().ok_or(ConicError::NoCenter)?;
    if k.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    let field = k.field();
    let dirs = null_directions(c, field)?;
    let diameters = [
        conjugate_diameter(k, &dirs[0])?,
        conjugate_diameter(k, &dirs[1])?,
    ];

    // First pass classifies each tangent family and collects the
    // discriminants that genuinely enlarge the field.
    let mut radicands = Vec::new();
    for diam in &diameters {
        match k.meet_line(diam)? {
            MeetResult::Two { tower, discriminant, .. } => {
                if tower != *field {
                    if discriminant.real_sign() == Some(-1) {
                        return Err(ConicError::NoSuchTangent(c));
                    }
                    radicands.push(discriminant);
                }
            }
            // A diameter meeting the conic at most once means the null
            // direction is asymptotic: no tangent family there.
            MeetResult::One(_) | MeetResult::Empty => {
                return Err(ConicError::NoSuchTangent(c));
            }
        }
    }

    // Join both extensions into one tower and redo the meets there, so all
    // four directrix points share a field.
    let mut tower = field.clone();
    for r in &radicands {
        tower = extend_by_sqrt(&tower, &tower.embed(r)?)?.field;
    }
    let k_t = k.embed(&tower)?;
    let mut points = Vec::with_capacity(4);
    for diam in &diameters {
        match k_t.meet_line(&diam.embed(&tower)?)? {
            MeetResult::Two { points: p, tower: t, .. } => {
                assert!(t == tower, "joined tower contains both discriminant roots");
                points.extend(p);
            }
            _ => unreachable!("the first pass saw two intersections"),
        }
    }
    let directrix_points: [Point; 4] = points.try_into().expect("two points per family");

    let mut tangents = Vec::with_capacity(4);
    for (i, p) in directrix_points.iter().enumerate() {
        let t = k_t.tangent_at(p)?;
        let d = [&dirs[i / 2].x, &dirs[i / 2].y];
        let d = Vec2::new(tower.embed(d[0])?, tower.embed(d[1])?);
        assert!(
            is_parallel(&t.direction(), &d),
            "tangent at a directrix point runs along the null direction"
        );
        tangents.push(t);
    }

    let cross = |i: usize, j: usize| {
        metric::line_intersection(&tangents[i], &tangents[j])
            .expect("tangents from different null families are not parallel")
    };
    // Cyclic order around the parallelogram: each consecutive pair of
    // corners shares one tangent line.
    let corners = [cross(0, 2), cross(0, 3), cross(1, 3), cross(1, 2)];
    let center_t = center.embed(&tower)?;
    let double_center = Vec2::new(center_t.x.mul_i64(2), center_t.y.mul_i64(2));
    for (a, b) in [(0, 2), (1, 3)] {
        assert!(
            corners[a].x.add(&corners[b].x) == double_center.x
                && corners[a].y.add(&corners[b].y) == double_center.y,
            "opposite foci are symmetric through the center"
        );
    }
    let side1 = corners[0].to(&corners[1]);
    let side2 = corners[1].to(&corners[2]);
    for other in c.others() {
        assert!(
            dot(other, &side1, &side2).is_zero(),
            "the focus parallelogram is a rectangle in the other two colors"
        );
    }

    let mut pairs = Vec::with_capacity(2);
    for (a, b) in [(0, 2), (1, 3)] {
        let (f1, f2) = if point_cmp(&corners[a], &corners[b]).is_le() {
            (corners[a].clone(), corners[b].clone())
        } else {
            (corners[b].clone(), corners[a].clone())
        };
        let kv = solve_quadrola_k(c, &f1, &f2, &k_t);
        let recon = quadrola_conic(c, &f1, &f2, &kv)?;
        assert!(recon == k_t, "the focus pair and constant rebuild the conic");
        let d1 = k_t.polar_line(&f1)?;
        let d2 = k_t.polar_line(&f2)?;
        pairs.push(QuadrolaPair {
            foci: (f1, f2),
            directrices: (d1, d2),
            k: kv,
        });
    }
    pairs.sort_by(|p, q| point_cmp(&p.foci.0, &q.foci.0));
    let pairs: [QuadrolaPair; 2] = pairs.try_into().expect("two pairs");

    let mut directrices = Vec::with_capacity(4);
    for p in &pairs {
        directrices.push(&p.directrices.0);
        directrices.push(&p.directrices.1);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let (di, dj) = (directrices[i].direction(), directrices[j].direction());
            assert!(
                is_parallel(&di, &dj) || dot(c, &di, &dj).is_zero(),
                "directrices of one color are parallel or perpendicular"
            );
        }
    }

    Ok(QuadrolaData {
        color: c,
        directrix_points,
        pairs,
        tower,
    })
}

/// The diagonal-pair description of a central conic in one color.
#[derive(Debug, Clone)]
pub struct GrammolaData {
    /// The color of the analysis.
    pub color: Color,
    /// The two lines through the center such that the colored quadrances
    /// from any point of the conic to them sum to `constant`. They live in
    /// the conic's field or one quadratic extension of it.
    pub diagonals: (Line, Line),
    /// The constant quadrance sum, in the conic's field.
    pub constant: FieldElement,
    /// Quadrances of the two sides of the rectangle cut out by the
    /// diagonal intersections with the conic, canonically ordered,
    /// expressed in `tower`.
    pub corner_quadrances: (FieldElement, FieldElement),
    /// The colored spread between the diagonals, in the conic's field.
    pub diagonal_spread: FieldElement,
    /// The field the corners live in: the diagonal field extended by at
    /// most two more square roots.
    pub tower: Field,
}

/// The trace pairing of the quadratic part against the color's form:
/// `A + C` for blue, `A − C` for red, `B` for green. The diagonal pair
/// exists only when this is nonzero.
fn color_trace(c: Color, k: &Conic) -> FieldElement {
    let [a, b, cc, ..] = k.coefficients();
    match c {
        Color::Blue => a.add(cc),
        Color::Red => a.sub(cc),
        Color::Green => b.clone(),
    }
}

/// Diagonal-pair analysis: find the two lines `l₁, l₂` through the center
/// and the constant `k` with `Q_c(X, l₁) + Q_c(X, l₂) = k` for every `X` on
/// the conic.
///
/// Writing the quadrance sum as a quadratic form and matching it against
/// the conic's quadratic part forces the normal direction `n` of each
/// diagonal to satisfy
/// `C·nₓ² − B·nₓn_y + A·n_y² = λ·det₂·N_c(n)` with `λ = 2 / trace_c`;
/// the two projective roots are the diagonal normals, and the constant is
/// `λ` times the negated center value. Every call re-verifies the constant
/// sum at five sampled points of the conic, since the diagonal algorithm
/// has no external oracle.
pub fn grammola_analyze(c: Color, k: &Conic) -> Result<GrammolaData, ConicError> {
    let center = k.center().ok_or(ConicError::NoCenter)?;
    if k.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    let field = k.field();
    let phi = color_trace(c, k);
    if phi.is_zero() {
        return Err(ConicError::NoDiagonals(c));
    }
    let lam = field.from_i64(2).checked_div(&phi)?;
    let ld = lam.mul(&k.det2());
    let [a, b, cc, ..] = k.coefficients();
    let (u, v, w) = match c {
        Color::Blue => (cc.sub(&ld), b.neg(), a.sub(&ld)),
        Color::Red => (cc.sub(&ld), b.neg(), a.add(&ld)),
        Color::Green => (cc.clone(), b.add(&ld.mul_i64(2)).neg(), a.clone()),
    };

    // Projective roots of u·nₓ² + v·nₓ·n_y + w·n_y² = 0.
    let (diag_field, normals) = if u.is_zero() && v.is_zero() && w.is_zero() {
        // The matching is vacuous: every direction works, which only
        // happens when the quadratic part is itself a multiple of the
        // color form. No distinguished pair exists.
        return Err(ConicError::NoDiagonals(c));
    } else if u.is_zero() {
        if v.is_zero() {
            return Err(ConicError::NoDiagonals(c));
        }
        let n1 = Vec2::new(field.one(), field.zero());
        let n2 = Vec2::new(w.neg(), v.clone());
        (field.clone(), [n1, n2])
    } else {
        let disc = v.square().sub(&u.mul(&w).mul_i64(4));
        if disc.is_zero() || disc.real_sign() == Some(-1) {
            return Err(ConicError::NoDiagonals(c));
        }
        let ext = extend_by_sqrt(field, &disc)?;
        let diag_field = ext.field;
        let denom = diag_field
            .embed(&u.mul_i64(2))?
            .checked_inv()
            .expect("u is nonzero");
        let vv = diag_field.embed(&v)?;
        let one = diag_field.one();
        let roots = [ext.root.clone(), ext.root.neg()]
            .map(|r| vv.neg().add(&r).mul(&denom));
        let normals = roots.map(|t| Vec2::new(t, one.clone()));
        (diag_field, normals)
    };

    let center_d = center.embed(&diag_field)?;
    let mut diagonals = Vec::with_capacity(2);
    for n in &normals {
        let cval = n.x.mul(&center_d.x).add(&n.y.mul(&center_d.y)).neg();
        let l = Line::new(n.x.clone(), n.y.clone(), cval).map_err(ConicError::Metric)?;
        if is_null_line(c, &l) {
            return Err(ConicError::NoDiagonals(c));
        }
        diagonals.push(l);
    }
    let (l1, l2) = (diagonals.remove(0), diagonals.remove(0));
    if metric::vectors_perpendicular(c, &l1.direction(), &l2.direction()) {
        // A perpendicular pair is excluded from the description by fiat.
        return Err(ConicError::NoDiagonals(c));
    }
    let s = spread(c, &l1, &l2).expect("both diagonals are non-null");
    let mut diagonal_spread = s;
    while diagonal_spread.field() != field {
        diagonal_spread = diagonal_spread
            .project_to_base()
            .expect("the diagonal spread is symmetric in the conjugate pair");
    }

    let f0 = k.evaluate(&center).neg();
    let constant = lam.mul(&f0);

    // Corners: meet each diagonal with the conic, lifting to a common
    // tower as discriminants demand.
    let k_d = k.embed(&diag_field)?;
    let (p1, mid_tower) = match k_d.meet_line(&l1)? {
        MeetResult::Two { points, tower, .. } => (points, tower),
        _ => unreachable!("a diagonal of a central conic meets it twice"),
    };
    let k_m = k.embed(&mid_tower)?;
    let (p2, tower) = match k_m.meet_line(&l2.embed(&mid_tower)?)? {
        MeetResult::Two { points, tower, .. } => (points, tower),
        _ => unreachable!("a diagonal of a central conic meets it twice"),
    };
    let p1 = [p1[0].embed(&tower)?, p1[1].embed(&tower)?];
    let q_side1 = quadrance(c, &p1[0], &p2[0]);
    let q_side2 = quadrance(c, &p2[0], &p1[1]);
    let corner_quadrances = if q_side1.canonical_cmp(&q_side2).is_le() {
        (q_side1, q_side2)
    } else {
        (q_side2, q_side1)
    };

    // Self-check: the quadrance sum must equal the constant at sample
    // points of the conic beyond the corners themselves.
    let k_t = k.embed(&tower)?;
    let l1_t = l1.embed(&tower)?;
    let l2_t = l2.embed(&tower)?;
    let constant_t = tower.embed(&constant)?;
    let samples = sample::chord_points(&k_t, &p1[0], 5);
    assert!(samples.len() == 5, "a non-degenerate conic yields five chords");
    for x in &samples {
        let s1 = quadrance_point_line(c, x, &l1_t)?;
        let s2 = quadrance_point_line(c, x, &l2_t)?;
        assert!(
            s1.add(&s2) == constant_t,
            "quadrance sum to the diagonals is constant on the conic"
        );
    }

    Ok(GrammolaData {
        color: c,
        diagonals: (l1, l2),
        constant,
        corner_quadrances,
        diagonal_spread,
        tower,
    })
}

/// Sum of reciprocal diagonal spreads over the three colors. For any conic
/// where all three diagonal-pair analyses succeed this equals one; the
/// caller asserts, this reports.
pub fn grammola_spread_identity(k: &Conic) -> Result<FieldElement, ConicError> {
    let mut sum = k.field().zero();
    for c in Color::ALL {
        let g = grammola_analyze(c, k)?;
        sum = sum.add(&g.diagonal_spread.checked_inv()?);
    }
    Ok(sum)
}

/// A label for one of the distinguished points of [`ParabolaChromatics`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChromaticPoint {
    /// The colored vertex: axis line through that focus, met with the
    /// parabola.
    Vertex(Color),
    /// The colored base: axis line through that focus, met with that
    /// directrix.
    Base(Color),
    /// The meet of the tangents at the other two colors' vertices.
    TangentMeet(Color),
}

impl std::fmt::Display for ChromaticPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChromaticPoint::Vertex(c) => write!(f, "V_{c}"),
            ChromaticPoint::Base(c) => write!(f, "X_{c}"),
            ChromaticPoint::TangentMeet(c) => write!(f, "Y_{c}"),
        }
    }
}

/// The three-colored structure of one parabola: a focus/directrix pair in
/// every color, all describing the same curve.
#[derive(Debug, Clone)]
pub struct ParabolaChromatics {
    /// The blue, red, and green pairs, in that order, each with squared
    /// eccentricity one.
    pub pairs: [FocusDirectrixPair; 3],
    /// The common axis direction, canonically scaled: the null direction
    /// of the quadratic part, perpendicular to each directrix in its own
    /// color.
    pub axis_direction: Vec2,
    /// Per-color vertices: the single meet of the axis line through each
    /// focus with the parabola. Indexed blue, red, green.
    pub vertices: [Point; 3],
    /// Per-color bases: the meet of the same axis lines with the matching
    /// directrix.
    pub bases: [Point; 3],
    /// Per-color tangent meets: `Y_c` is where the vertex tangents of the
    /// other two colors cross, absent when those tangents are parallel.
    pub tangent_meets: [Option<Point>; 3],
}

impl ParabolaChromatics {
    /// The pair of one color.
    pub fn pair(&self, c: Color) -> &FocusDirectrixPair {
        &self.pairs[color_index(c)]
    }

    /// The vertex of one color.
    pub fn vertex(&self, c: Color) -> &Point {
        &self.vertices[color_index(c)]
    }

    /// The base point of one color.
    pub fn base(&self, c: Color) -> &Point {
        &self.bases[color_index(c)]
    }

    /// The tangent meet of one color, when it exists.
    pub fn tangent_meet(&self, c: Color) -> Option<&Point> {
        self.tangent_meets[color_index(c)].as_ref()
    }

    /// Which of the labeled point triples are collinear. All triples over
    /// the vertices, bases, and available tangent meets are examined; no
    /// particular collinearity is promised, the caller sees what holds.
    pub fn collinear_triples(&self) -> Vec<[ChromaticPoint; 3]> {
        let mut labeled: Vec<(ChromaticPoint, &Point)> = Vec::new();
        for c in Color::ALL {
            labeled.push((ChromaticPoint::Vertex(c), self.vertex(c)));
        }
        for c in Color::ALL {
            labeled.push((ChromaticPoint::Base(c), self.base(c)));
        }
        for c in Color::ALL {
            if let Some(p) = self.tangent_meet(c) {
                labeled.push((ChromaticPoint::TangentMeet(c), p));
            }
        }
        let mut out = Vec::new();
        for i in 0..labeled.len() {
            for j in (i + 1)..labeled.len() {
                for l in (j + 1)..labeled.len() {
                    let (p, q, r) = (labeled[i].1, labeled[j].1, labeled[l].1);
                    if metric::cross(&p.to(q), &p.to(r)).is_zero() {
                        out.push([labeled[i].0, labeled[j].0, labeled[l].0]);
                    }
                }
            }
        }
        out
    }
}

/// The axis direction of a parabola: the kernel of its quadratic part,
/// canonically scaled.
fn parabola_axis(k: &Conic) -> Vec2 {
    let [a, b, ..] = k.coefficients();
    let raw = if !a.is_zero() {
        Vec2::new(b.half(), a.neg())
    } else {
        // A zero with a singular quadratic part forces B = 0, leaving
        // the kernel along the first axis.
        Vec2::new(a.field().one(), a.field().zero())
    };
    let lead = if !raw.x.is_zero() { raw.x.clone() } else { raw.y.clone() };
    raw.scale(&lead.checked_inv().expect("kernel direction is nonzero"))
}

/// Derive the focus/directrix pair of `target` color from a known pair:
/// the new focus is the foot of the target-colored altitude from the known
/// focus to the known directrix, and the new directrix is the altitude
/// line of the remaining color.
fn derive_pair(known: &FocusDirectrixPair, target: Color) -> Result<FocusDirectrixPair, ConicError> {
    let third = third_color(known.color, target);
    let (_, foot) = metric::altitude_foot(target, &known.focus, &known.directrix)
        .map_err(altitude_error)?;
    let (directrix, _) = metric::altitude_foot(third, &known.focus, &known.directrix)
        .map_err(altitude_error)?;
    Ok(FocusDirectrixPair {
        color: target,
        focus: foot,
        directrix,
        ecc2: known.focus.field().one(),
    })
}

/// From one focus/directrix pair of a parabola, construct the other two
/// and the full incidence apparatus.
///
/// The derived pairs regenerate the same conic; the three foci are the
/// pairwise intersections of the three directrices; and the directrices
/// are pairwise perpendicular, each pair in the color missing from it.
/// All of that is asserted. The axis direction, per-color vertices, bases,
/// and tangent meets come out alongside.
pub fn parabola_chromatics(
    k: &Conic,
    known: &FocusDirectrixPair,
) -> Result<ParabolaChromatics, ConicError> {
    if !k.det2().is_zero() || k.is_degenerate() {
        return Err(ConicError::NotAParabola);
    }
    if !known.ecc2.is_one() {
        return Err(ConicError::InconsistentPair);
    }
    if known.conic()? != *k {
        return Err(ConicError::InconsistentPair);
    }

    let mut pairs: [Option<FocusDirectrixPair>; 3] = [None, None, None];
    pairs[color_index(known.color)] = Some(known.clone());
    for target in known.color.others() {
        let derived = derive_pair(known, target)?;
        assert!(
            derived.conic()? == *k,
            "a derived pair regenerates the parabola"
        );
        pairs[color_index(target)] = Some(derived);
    }
    let pairs = pairs.map(|p| p.expect("all three colors filled"));

    // Incidences: each focus is where the other two directrices cross.
    for c in Color::ALL {
        let [s, t] = c.others();
        let meet = metric::line_intersection(
            &pairs[color_index(s)].directrix,
            &pairs[color_index(t)].directrix,
        )
        .expect("directrices of different colors are not parallel");
        assert!(
            meet == pairs[color_index(c)].focus,
            "each focus is the meet of the other two directrices"
        );
        assert!(
            metric::is_perpendicular(
                c,
                &pairs[color_index(s)].directrix,
                &pairs[color_index(t)].directrix,
            ),
            "directrix pairs are perpendicular in the missing color"
        );
    }

    let axis = parabola_axis(k);
    for p in &pairs {
        assert!(
            is_parallel(&axis, &perp(p.color, &p.directrix.direction())),
            "the axis is perpendicular to each directrix in its color"
        );
    }

    let mut vertices = Vec::with_capacity(3);
    let mut bases = Vec::with_capacity(3);
    let mut tangents = Vec::with_capacity(3);
    for p in &pairs {
        let axis_line = Line::through_with_direction(&p.focus, &axis)
            .map_err(ConicError::Metric)?;
        let v = match k.meet_line(&axis_line)? {
            MeetResult::One(v) => v,
            _ => unreachable!("an axis line meets a parabola exactly once"),
        };
        let base = metric::line_intersection(&axis_line, &p.directrix)
            .expect("the axis crosses a non-null directrix");
        tangents.push(k.tangent_at(&v).expect("a parabola has no singular points"));
        vertices.push(v);
        bases.push(base);
    }
    let vertices: [Point; 3] = vertices.try_into().expect("three vertices");
    let bases: [Point; 3] = bases.try_into().expect("three bases");

    let tangent_meets = [0, 1, 2].map(|i| {
        let (s, t) = ((i + 1) % 3, (i + 2) % 3);
        metric::line_intersection(&tangents[s], &tangents[t])
    });

    Ok(ParabolaChromatics {
        pairs,
        axis_direction: axis,
        vertices,
        bases,
        tangent_meets,
    })
}

/// Reflect a direction vector in a tangent line, measured in one color:
/// split the vector into tangent-parallel and color-perpendicular parts
/// and negate the perpendicular one. An involution that preserves the
/// colored quadrance of the vector.
pub fn reflect_direction(c: Color, tangent: &Line, incoming: &Vec2) -> Result<Vec2, ConicError> {
    if is_null_line(c, tangent) {
        return Err(ConicError::NullTangent(c));
    }
    let p = perp(c, &tangent.direction());
    let q = vector_quadrance(c, &p);
    let beta = dot(c, incoming, &p).checked_div(&q)?;
    Ok(incoming.add(&p.scale(&beta.mul_i64(-2))))
}

/// One color's worth of [`common_focus_directrix_family`] output. Each
/// part can fail independently — a directrix null in one color kills that
/// color's parabola and foot but not the others — so each is a `Result`.
#[derive(Debug)]
pub struct FamilyMember {
    /// The color of this member.
    pub color: Color,
    /// The parabola of this color over the shared focus and directrix.
    pub conic: Result<Conic, ConicError>,
    /// The foot of this color's altitude from the focus to the directrix.
    pub foot: Result<Point, ConicError>,
    /// The triangle of the focus and the feet of the *other* two colors:
    /// the member's own two derived foci.
    pub focal_triangle: Result<Triangle, ConicError>,
}

/// Three parabolas sharing one focus and directrix, one per color, with
/// the altitude feet and per-member focal triangles.
#[derive(Debug)]
pub struct FocusDirectrixFamily {
    /// The shared focus.
    pub focus: Point,
    /// The shared directrix.
    pub directrix: Line,
    /// The blue, red, and green members, in that order.
    pub members: [FamilyMember; 3],
}

impl FocusDirectrixFamily {
    /// The member of one color.
    pub fn member(&self, c: Color) -> &FamilyMember {
        &self.members[color_index(c)]
    }
}

/// Build the family of the three colored parabolas over one focus and
/// directrix. Only a focus sitting on the directrix is fatal; every other
/// degeneracy is reported per part.
pub fn common_focus_directrix_family(
    focus: &Point,
    directrix: &Line,
) -> Result<FocusDirectrixFamily, ConicError> {
    if directrix.contains(focus) {
        return Err(ConicError::FocusOnDirectrix);
    }
    let feet: Vec<Result<Point, ConicError>> = Color::ALL
        .iter()
        .map(|&c| {
            metric::altitude_foot(c, focus, directrix)
                .map(|(_, foot)| foot)
                .map_err(altitude_error)
        })
        .collect();
    let members = Color::ALL.map(|c| {
        let [s, t] = c.others();
        let focal_triangle = match (&feet[color_index(s)], &feet[color_index(t)]) {
            (Ok(fs), Ok(ft)) => Triangle::new(focus.clone(), fs.clone(), ft.clone())
                .map_err(ConicError::Trig),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        FamilyMember {
            color: c,
            conic: parabola_conic(c, focus, directrix),
            foot: feet[color_index(c)].clone(),
            focal_triangle,
        }
    });
    Ok(FocusDirectrixFamily {
        focus: focus.clone(),
        directrix: directrix.clone(),
        members,
    })
}

/// The Archimedes function `(Q₁ + Q₂ + Q₃)² − 2(Q₁² + Q₂² + Q₃²)` read as
/// a check that `K` is consistent with two quadrances: zero exactly when
/// the three quantities can be the quadrances of three collinear points.
/// Re-exported view for quadrola verification at sampled points.
pub fn quadrola_residual(
    c: Color,
    x: &Point,
    f1: &Point,
    f2: &Point,
    k: &FieldElement,
) -> FieldElement {
    let q1 = quadrance(c, x, f1);
    let q2 = quadrance(c, x, f2);
    archimedes(&q1, &q2, k)
}
