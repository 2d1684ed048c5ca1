//! Conics and their colored focal structure.
//!
//! A [`Conic`] is the zero set of a degree-two polynomial
//! `A·x² + B·xy + C·y² + D·x + E·y + F`, stored up to scale so that equal
//! loci compare equal. On top of the bare locus this module builds the
//! colored apparatus: focus/directrix descriptions in each of the three
//! metrics, two-focus descriptions via the Archimedes function, and
//! diagonal-pair descriptions where the sum of quadrances to two fixed
//! lines is constant. Constructions that genuinely leave the base field
//! (directrix points, corners) return their results together with the
//! quadratic tower they live in.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{extend_by_sqrt, Field, FieldElement, FieldError};
use crate::metric::{Color, Line, MetricError, Point, Vec2};
use crate::trig::TrigError;

mod focal;
mod sample;

pub use focal::{
    common_focus_directrix_family, conic_from_focus_directrix, grammola_analyze,
    grammola_spread_identity, parabola_chromatics, parabola_conic, quadrola_conic, quadrola_foci,
    quadrola_residual, reflect_direction, ChromaticPoint, FamilyMember, FocusDirectrixFamily,
    FocusDirectrixPair, GrammolaData, ParabolaChromatics, QuadrolaData, QuadrolaPair,
};
pub use sample::{axis_points, chord_points, rational_point, sweep_points};

/// Failure modes of conic construction and analysis.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConicError {
    /// All three quadratic coefficients are zero.
    #[error("quadratic part is identically zero")]
    NoQuadraticPart,
    /// The symmetric 3×3 matrix of the conic is singular.
    #[error("conic is degenerate")]
    DegenerateConic,
    /// The conic has no center (its quadratic part is singular).
    #[error("conic has no center")]
    NoCenter,
    /// The polar line of this point has no affine part.
    #[error("polar line is undefined for this point")]
    PolarUndefined,
    /// The point lies on the conic but has zero gradient there.
    #[error("point is a singular point of the conic")]
    SingularPoint,
    /// A tangent was requested at a point not on the conic.
    #[error("point does not lie on the conic")]
    NotOnConic,
    /// The pole of this line lies at infinity.
    #[error("pole lies at infinity")]
    PoleAtInfinity,
    /// Every point of the line satisfies the conic's equation.
    #[error("line is contained in the conic")]
    LineOnConic,
    /// The directrix is a null line of the requested color.
    #[error("directrix is a {0} null line")]
    NullDirectrix(Color),
    /// The focus lies on the directrix.
    #[error("focus lies on the directrix")]
    FocusOnDirectrix,
    /// A two-focus description needs two distinct foci.
    #[error("the two foci coincide")]
    CoincidentFoci,
    /// No tangents parallel to a null direction of this color exist.
    #[error("no {0} tangent family exists")]
    NoSuchTangent(Color),
    /// The field contains no null directions of this color.
    #[error("field has no {0} null directions")]
    NoNullDirections(Color),
    /// No valid diagonal pair of this color exists over the field or its
    /// real quadratic extensions.
    #[error("no {0} diagonal pair exists")]
    NoDiagonals(Color),
    /// The conic is not a parabola.
    #[error("conic is not a parabola")]
    NotAParabola,
    /// The supplied focus/directrix pair does not describe the conic.
    #[error("focus/directrix pair does not describe this conic")]
    InconsistentPair,
    /// An altitude used to derive a focus/directrix pair is parallel to
    /// the directrix.
    #[error("the {0} altitude degenerates")]
    NullAltitude(Color),
    /// Reflection in a tangent line that is null in the mirror color.
    #[error("tangent is a {0} null line")]
    NullTangent(Color),
    /// A metric-level failure.
    #[error(transparent)]
    Metric(#[from] MetricError),
    /// A triangle-level failure.
    #[error(transparent)]
    Trig(#[from] TrigError),
    /// A field-level failure.
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Intersection of a line with a conic.
#[derive(Debug, Clone)]
pub enum MeetResult {
    /// The substituted equation has no root in any quadratic extension
    /// (it is linear with no solution, or a nonzero constant).
    Empty,
    /// A single intersection point: either a tangency or a line parallel
    /// to an asymptotic direction.
    One(Point),
    /// Two intersection points, expressed in `tower` — the original field
    /// when the discriminant is a square there, otherwise its extension
    /// by the discriminant's square root.
    Two {
        /// The intersection points, canonically ordered.
        points: [Point; 2],
        /// The field the points live in.
        tower: Field,
        /// The discriminant of the substituted quadratic, in the original
        /// field. Its square root separates the two points.
        discriminant: FieldElement,
    },
}

/// A plane conic `A·x² + B·xy + C·y² + D·x + E·y + F = 0`, stored with the
/// first nonzero quadratic coefficient scaled to one. Two conics compare
/// equal exactly when they have the same zero locus with the same
/// polynomial up to scale.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    coeffs: [FieldElement; 6],
}

impl Conic {
    /// Build a conic from `[A, B, C, D, E, F]`, normalizing the scale.
    /// Fails when the quadratic part vanishes identically.
    pub fn new(coeffs: [FieldElement; 6]) -> Result<Conic, ConicError> {
        let field = coeffs[0].field().clone();
        assert!(
            coeffs.iter().all(|c| *c.field() == field),
            "conic coefficients from different fields"
        );
        let lead = coeffs[..3].iter().find(|c| !c.is_zero());
        let inv = match lead {
            Some(l) => l.checked_inv().expect("nonzero leading coefficient"),
            None => return Err(ConicError::NoQuadraticPart),
        };
        Ok(Conic {
            coeffs: coeffs.map(|c| c.mul(&inv)),
        })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_i64(field: &Field, coeffs: [i64; 6]) -> Result<Conic, ConicError> {
        Conic::new(coeffs.map(|c| field.from_i64(c)))
    }

    /// The common field of the coefficients.
    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    /// The normalized coefficients `[A, B, C, D, E, F]`.
    pub fn coefficients(&self) -> &[FieldElement; 6] {
        &self.coeffs
    }

    /// Value of the defining polynomial at a point.
    pub fn evaluate(&self, p: &Point) -> FieldElement {
        let [a, b, c, d, e, f] = &self.coeffs;
        let (x, y) = (&p.x, &p.y);
        let quad = a.mul(&x.square()).add(&b.mul(x).mul(y)).add(&c.mul(&y.square()));
        quad.add(&d.mul(x)).add(&e.mul(y)).add(f)
    }

    /// Whether a point lies on the conic.
    pub fn contains(&self, p: &Point) -> bool {
        self.evaluate(p).is_zero()
    }

    /// The quadratic part evaluated on a direction vector:
    /// `A·vx² + B·vx·vy + C·vy²`.
    pub fn quadratic_form(&self, v: &Vec2) -> FieldElement {
        let [a, b, c, ..] = &self.coeffs;
        a.mul(&v.x.square())
            .add(&b.mul(&v.x).mul(&v.y))
            .add(&c.mul(&v.y.square()))
    }

    /// Gradient of the defining polynomial at a point:
    /// `(2A·x + B·y + D, B·x + 2C·y + E)`. Normal to the tangent line at
    /// regular points of the conic.
    pub fn gradient(&self, p: &Point) -> Vec2 {
        let [a, b, c, d, e, _] = &self.coeffs;
        Vec2::new(
            a.mul(&p.x).mul_i64(2).add(&b.mul(&p.y)).add(d),
            b.mul(&p.x).add(&c.mul(&p.y).mul_i64(2)).add(e),
        )
    }

    /// Determinant of the quadratic part `[[A, B/2], [B/2, C]]`. Zero
    /// exactly for parabolas and degenerate parallel-line pairs.
    pub fn det2(&self) -> FieldElement {
        let [a, b, c, ..] = &self.coeffs;
        a.mul(c).sub(&b.half().square())
    }

    /// Determinant of the full symmetric matrix
    /// `[[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, F]]`.
    pub fn det3(&self) -> FieldElement {
        let [a, b, c, d, e, f] = &self.coeffs;
        let (b2, d2, e2) = (b.half(), d.half(), e.half());
        let m00 = c.mul(f).sub(&e2.square());
        let m01 = b2.mul(f).sub(&e2.mul(&d2));
        let m02 = b2.mul(&e2).sub(&c.mul(&d2));
        a.mul(&m00).sub(&b2.mul(&m01)).add(&d2.mul(&m02))
    }

    /// Whether the conic is degenerate (a line pair or worse).
    pub fn is_degenerate(&self) -> bool {
        self.det3().is_zero()
    }

    /// The unique center of symmetry, when the quadratic part is
    /// invertible; `None` for parabolas and parallel-line pairs.
    pub fn center(&self) -> Option<Point> {
        let [a, b, c, d, e, _] = &self.coeffs;
        let det = a.mul(c).mul_i64(4).sub(&b.square());
        if det.is_zero() {
            return None;
        }
        let x = b.mul(e).sub(&c.mul(d).mul_i64(2));
        let y = b.mul(d).sub(&a.mul(e).mul_i64(2));
        let inv = det.checked_inv().expect("nonzero determinant");
        Some(Point::new(x.mul(&inv), y.mul(&inv)))
    }

    /// The polar line of a point: the matrix product of the symmetric
    /// 3×3 matrix with `(x, y, 1)`, read as line coefficients. For a point
    /// on the conic this is the tangent there. Fails when the result has
    /// no affine part (the point is the center of a central conic, or a
    /// singular point).
    pub fn polar_line(&self, p: &Point) -> Result<Line, ConicError> {
        let (la, lb, lc) = self.polar_coefficients(p);
        Line::new(la, lb, lc).map_err(|_| ConicError::PolarUndefined)
    }

    fn polar_coefficients(&self, p: &Point) -> (FieldElement, FieldElement, FieldElement) {
        let [a, b, c, d, e, f] = &self.coeffs;
        let (b2, d2, e2) = (b.half(), d.half(), e.half());
        (
            a.mul(&p.x).add(&b2.mul(&p.y)).add(&d2),
            b2.mul(&p.x).add(&c.mul(&p.y)).add(&e2),
            d2.mul(&p.x).add(&e2.mul(&p.y)).add(f),
        )
    }

    /// The pole of a line: the point whose polar is the given line.
    /// Inverts the 3×3 matrix by Cramer's rule, so the conic must be
    /// non-degenerate; fails with [`ConicError::PoleAtInfinity`] when the
    /// solution's last homogeneous coordinate vanishes.
    pub fn pole(&self, l: &Line) -> Result<Point, ConicError> {
        let det = self.det3();
        if det.is_zero() {
            return Err(ConicError::DegenerateConic);
        }
        let [a, b, c, d, e, f] = &self.coeffs;
        let (b2, d2, e2) = (b.half(), d.half(), e.half());
        let m = [
            [a.clone(), b2.clone(), d2.clone()],
            [b2.clone(), c.clone(), e2.clone()],
            [d2, e2, f.clone()],
        ];
        let (la, lb, lc) = l.coefficients();
        let rhs = [la.clone(), lb.clone(), lc.clone()];
        let inv = det.checked_inv().expect("nonzero determinant");
        let col = |i: usize| {
            let pick = |r: usize, j: usize| if j == i { &rhs[r] } else { &m[r][j] };
            let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
                pick(r1, c1).mul(pick(r2, c2)).sub(&pick(r1, c2).mul(pick(r2, c1)))
            };
            pick(0, 0)
                .mul(&minor(1, 2, 1, 2))
                .sub(&pick(0, 1).mul(&minor(1, 2, 0, 2)))
                .add(&pick(0, 2).mul(&minor(1, 2, 0, 1)))
                .mul(&inv)
        };
        let (ux, uy, uz) = (col(0), col(1), col(2));
        if uz.is_zero() {
            return Err(ConicError::PoleAtInfinity);
        }
        let zi = uz.checked_inv().expect("nonzero last coordinate");
        Ok(Point::new(ux.mul(&zi), uy.mul(&zi)))
    }

    /// The tangent line at a point of the conic.
    pub fn tangent_at(&self, p: &Point) -> Result<Line, ConicError> {
        if !self.contains(p) {
            return Err(ConicError::NotOnConic);
        }
        // On the conic, an all-zero gradient makes the whole polar row
        // vanish, so a degenerate polar here means a singular point.
        self.polar_line(p).map_err(|_| ConicError::SingularPoint)
    }

    /// Intersect with a line: parameterize the line, substitute, and solve
    /// the resulting quadratic. When the discriminant is not a square the
    /// two points are returned in the field extended by its square root.
    /// The line must live in the conic's field; embed one side first if
    /// they differ.
    pub fn meet_line(&self, l: &Line) -> Result<MeetResult, ConicError> {
        assert!(
            l.field() == self.field(),
            "line and conic from different fields"
        );
        let field = self.field();
        let (la, lb, lc) = l.coefficients();
        let base = if !lb.is_zero() {
            Point::new(field.zero(), lc.checked_div(lb)?.neg())
        } else {
            Point::new(lc.checked_div(la)?.neg(), field.zero())
        };
        let dir = l.direction();
        let q2 = self.quadratic_form(&dir);
        let g = self.gradient(&base);
        let q1 = g.x.mul(&dir.x).add(&g.y.mul(&dir.y));
        let q0 = self.evaluate(&base);

        if q2.is_zero() {
            if q1.is_zero() {
                return if q0.is_zero() {
                    Err(ConicError::LineOnConic)
                } else {
                    Ok(MeetResult::Empty)
                };
            }
            let t = q0.checked_div(&q1)?.neg();
            return Ok(MeetResult::One(base.translate(&dir.scale(&t))));
        }

        let disc = q1.square().sub(&q2.mul(&q0).mul_i64(4));
        if disc.is_zero() {
            let t = q1.neg().checked_div(&q2.mul_i64(2))?;
            return Ok(MeetResult::One(base.translate(&dir.scale(&t))));
        }
        let ext = extend_by_sqrt(field, &disc)?;
        let tower = ext.field;
        let root = ext.root;
        let base = base.embed(&tower)?;
        let dir = Vec2::new(tower.embed(&dir.x)?, tower.embed(&dir.y)?);
        let q1 = tower.embed(&q1)?;
        let q2 = tower.embed(&q2)?;
        let denom = q2.mul_i64(2).checked_inv().expect("q2 is nonzero");
        let mut points = [root.clone(), root.neg()].map(|r| {
            let t = q1.neg().add(&r).mul(&denom);
            base.translate(&dir.scale(&t))
        });
        if point_cmp(&points[1], &points[0]).is_lt() {
            points.swap(0, 1);
        }
        Ok(MeetResult::Two {
            points,
            tower,
            discriminant: disc,
        })
    }

    /// Lift into a larger field.
    pub fn embed(&self, field: &Field) -> Result<Conic, FieldError> {
        let mut out = Vec::with_capacity(6);
        for c in &self.coeffs {
            out.push(field.embed(c)?);
        }
        Ok(Conic {
            coeffs: out.try_into().expect("six coefficients"),
        })
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const MONOMIALS: [&str; 6] = ["x²", "xy", "y²", "x", "y", ""];
        let mut first = true;
        for (c, m) in self.coeffs.iter().zip(MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c}){m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Deterministic coordinate order on points of one field.
fn point_cmp(a: &Point, b: &Point) -> Ordering {
    a.x.canonical_cmp(&b.x).then_with(|| a.y.canonical_cmp(&b.y))
}

/// A degree-≤2 polynomial in two variables as raw coefficients
/// `[xx, xy, yy, x, y, 1]`; the building block for the focal expansions.
type Poly6 = [FieldElement; 6];

/// A linear polynomial `a·x + b·y + c` as raw coefficients.
type Linear = [FieldElement; 3];

fn poly_add(p: &Poly6, q: &Poly6) -> Poly6 {
    [0, 1, 2, 3, 4, 5].map(|i| p[i].add(&q[i]))
}

fn poly_sub(p: &Poly6, q: &Poly6) -> Poly6 {
    [0, 1, 2, 3, 4, 5].map(|i| p[i].sub(&q[i]))
}

fn poly_scale(p: &Poly6, t: &FieldElement) -> Poly6 {
    [0, 1, 2, 3, 4, 5].map(|i| p[i].mul(t))
}

/// Product of two linear polynomials.
fn linear_product(l: &Linear, m: &Linear) -> Poly6 {
    [
        l[0].mul(&m[0]),
        l[0].mul(&m[1]).add(&l[1].mul(&m[0])),
        l[1].mul(&m[1]),
        l[0].mul(&m[2]).add(&l[2].mul(&m[0])),
        l[1].mul(&m[2]).add(&l[2].mul(&m[1])),
        l[2].mul(&m[2]),
    ]
}

/// The quadrance from a variable point `(x, y)` to a fixed point, as a
/// polynomial in the variables.
fn quadrance_poly(c: Color, f: &Point) -> Poly6 {
    let field = f.field();
    let lx: Linear = [field.one(), field.zero(), f.x.neg()];
    let ly: Linear = [field.zero(), field.one(), f.y.neg()];
    match c {
        Color::Blue => poly_add(&linear_product(&lx, &lx), &linear_product(&ly, &ly)),
        Color::Red => poly_sub(&linear_product(&lx, &lx), &linear_product(&ly, &ly)),
        Color::Green => poly_scale(&linear_product(&lx, &ly), &field.from_i64(2)),
    }
}
