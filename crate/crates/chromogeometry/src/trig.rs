//! Triangle-level rational trigonometry in the three colors.
//!
//! A triangle's data in a color is its three quadrances `Qᵢ` (opposite
//! vertex `Aᵢ`, so `Q₁ = Q(A₂, A₃)` and cyclically) and its three spreads
//! `sᵢ` at the vertices. The quantity tying them together is the quadratic
//! function
//!
//! ```text
//! A(Q₁, Q₂, Q₃) = (Q₁ + Q₂ + Q₃)² − 2(Q₁² + Q₂² + Q₃²)
//! ```
//!
//! which equals `16·area²` in blue and `−16·area²` in red and green — the
//! signed area itself is color-independent. The laws checked here:
//!
//! * **Spread law** — `s₁/Q₁ = s₂/Q₂ = s₃/Q₃`, with common value
//!   `A(Q₁,Q₂,Q₃) / (4 Q₁Q₂Q₃)` in the same color.
//! * **Cross law** — `(Q₁ + Q₂ − Q₃)² = 4 Q₁Q₂ (1 − s₃)`. Its `s₃ = 1` and
//!   `s₃ = 0` specializations are Pythagoras' theorem and the triple quad
//!   formula.
//! * **Triple spread formula** —
//!   `(s₁ + s₂ + s₃)² = 2(s₁² + s₂² + s₃²) + 4 s₁s₂s₃`.
//!
//! The check functions return both sides (or all ratios) rather than a
//! boolean, so tests and the random explorer stay honest about what was
//! computed.

use crate::field::FieldElement;
use crate::metric::{
    self, cross, quadrance, spread, Color, Line, MetricError, Point,
};

/// Errors from triangle constructions and law checks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrigError {
    /// Triangles need three pairwise distinct vertices.
    #[error("triangle vertices must be pairwise distinct")]
    CoincidentVertices,
    /// The vertices are collinear, so the side lines through each vertex
    /// coincide and no spread exists there.
    #[error("triangle is degenerate: collinear vertices")]
    DegenerateTriangle,
    /// A law needs a spread that is undefined because a side line is null.
    #[error("spread at vertex {vertex} is undefined in {color}")]
    UndefinedSpread {
        /// The color of the profile.
        color: Color,
        /// 1-based vertex index.
        vertex: usize,
    },
    /// A law divides by a quadrance that is zero.
    #[error("quadrance opposite vertex {vertex} is zero")]
    ZeroQuadrance {
        /// 1-based vertex index.
        vertex: usize,
    },
    /// Line-level failure bubbled up from the metric layer.
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Three pairwise distinct points. Collinear (degenerate) triangles are
/// allowed and flagged by [`Triangle::is_degenerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    /// Build a triangle from pairwise distinct vertices.
    pub fn new(a1: Point, a2: Point, a3: Point) -> Result<Triangle, TrigError> {
        if a1 == a2 || a1 == a3 || a2 == a3 {
            return Err(TrigError::CoincidentVertices);
        }
        Ok(Triangle {
            vertices: [a1, a2, a3],
        })
    }

    /// The vertices `[A₁, A₂, A₃]`.
    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    /// True when the vertices are collinear.
    pub fn is_degenerate(&self) -> bool {
        let [a1, a2, a3] = &self.vertices;
        cross(&a1.to(a2), &a1.to(a3)).is_zero()
    }

    /// The side lines `[l₁, l₂, l₃]` with `lᵢ` opposite `Aᵢ`
    /// (`l₁` joins `A₂` and `A₃`, cyclically).
    pub fn side_lines(&self) -> [Line; 3] {
        let [a1, a2, a3] = &self.vertices;
        let join = |p: &Point, q: &Point| {
            Line::through(p, q).expect("vertices are pairwise distinct")
        };
        [join(a2, a3), join(a1, a3), join(a1, a2)]
    }

    /// The quadrances `[Q₁, Q₂, Q₃]` with `Qᵢ` opposite `Aᵢ`.
    pub fn quadrances(&self, c: Color) -> [FieldElement; 3] {
        let [a1, a2, a3] = &self.vertices;
        [
            quadrance(c, a2, a3),
            quadrance(c, a1, a3),
            quadrance(c, a1, a2),
        ]
    }

    /// Half the determinant of `(A₂ − A₁, A₃ − A₁)`: positive for one
    /// orientation, negative for the other, zero exactly when degenerate.
    /// The same in all three colors.
    pub fn signed_area(&self) -> FieldElement {
        let [a1, a2, a3] = &self.vertices;
        cross(&a1.to(a2), &a1.to(a3)).half()
    }

    /// Translate every vertex by the same vector.
    pub fn translate(&self, v: &metric::Vec2) -> Triangle {
        let [a1, a2, a3] = &self.vertices;
        Triangle {
            vertices: [a1.translate(v), a2.translate(v), a3.translate(v)],
        }
    }
}

/// `A(Q₁,Q₂,Q₃) = (Q₁+Q₂+Q₃)² − 2(Q₁²+Q₂²+Q₃²)`. Zero exactly when the
/// quadrances come from collinear points; otherwise `σ_c · 16·area²` for
/// the quadrances of a triangle in color `c`.
pub fn archimedes(q1: &FieldElement, q2: &FieldElement, q3: &FieldElement) -> FieldElement {
    let sum = q1.add(q2).add(q3);
    let squares = q1.square().add(&q2.square()).add(&q3.square());
    sum.square().sub(&squares.mul_i64(2))
}

/// A triangle's quadrances, spreads, and squared area in one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleProfile {
    /// The color everything below is measured in.
    pub color: Color,
    /// `[Q₁, Q₂, Q₃]`, `Qᵢ` opposite `Aᵢ`.
    pub quadrances: [FieldElement; 3],
    /// `[s₁, s₂, s₃]`, `sᵢ` at vertex `Aᵢ`; `None` where a side line
    /// through the vertex is `color`-null.
    pub spreads: [Option<FieldElement>; 3],
    /// `16·area²`, color-independent; equals `σ_color · A(Q₁,Q₂,Q₃)`.
    pub area2_16: FieldElement,
}

impl TriangleProfile {
    /// `A(Q₁,Q₂,Q₃)` of this profile's quadrances.
    pub fn archimedes(&self) -> FieldElement {
        let [q1, q2, q3] = &self.quadrances;
        archimedes(q1, q2, q3)
    }

    /// The spread at a 1-based vertex index, or the explanatory error.
    fn spread_at(&self, vertex: usize) -> Result<&FieldElement, TrigError> {
        self.spreads[vertex - 1]
            .as_ref()
            .ok_or(TrigError::UndefinedSpread {
                color: self.color,
                vertex,
            })
    }
}

/// Measure a triangle in one color. Fails for degenerate triangles, whose
/// side lines through each vertex coincide.
pub fn profile(t: &Triangle, c: Color) -> Result<TriangleProfile, TrigError> {
    if t.is_degenerate() {
        return Err(TrigError::DegenerateTriangle);
    }
    let [l1, l2, l3] = t.side_lines();
    // sᵢ sits at vertex Aᵢ, between the two side lines through Aᵢ.
    let spreads = [
        spread(c, &l2, &l3),
        spread(c, &l1, &l3),
        spread(c, &l1, &l2),
    ];
    let area = t.signed_area();
    Ok(TriangleProfile {
        color: c,
        quadrances: t.quadrances(c),
        spreads,
        area2_16: area.square().mul_i64(16),
    })
}

/// The three spread-law ratios `[s₁/Q₁, s₂/Q₂, s₃/Q₃]`. The law says they
/// are equal, with common value [`spread_law_ratio`]; returning all three
/// keeps the check independent of that closed form.
pub fn check_spread_law(p: &TriangleProfile) -> Result<[FieldElement; 3], TrigError> {
    let mut ratios = Vec::with_capacity(3);
    for vertex in 1..=3 {
        let s = p.spread_at(vertex)?;
        let q = &p.quadrances[vertex - 1];
        if q.is_zero() {
            return Err(TrigError::ZeroQuadrance { vertex });
        }
        ratios.push(s.checked_div(q).expect("quadrance checked nonzero"));
    }
    Ok(ratios.try_into().expect("three ratios collected"))
}

/// The closed form of the spread-law common value,
/// `A(Q₁,Q₂,Q₃) / (4 Q₁Q₂Q₃)` — equivalently `σ · 16·area² / (4 Q₁Q₂Q₃)`.
pub fn spread_law_ratio(p: &TriangleProfile) -> Result<FieldElement, TrigError> {
    let [q1, q2, q3] = &p.quadrances;
    for (vertex, q) in [q1, q2, q3].into_iter().enumerate() {
        if q.is_zero() {
            return Err(TrigError::ZeroQuadrance { vertex: vertex + 1 });
        }
    }
    let denom = q1.mul(q2).mul(q3).mul_i64(4);
    Ok(p.archimedes()
        .checked_div(&denom)
        .expect("quadrances checked nonzero"))
}

/// Both sides of the cross law at vertex `A₃`:
/// `(Q₁ + Q₂ − Q₃)²` and `4 Q₁Q₂ (1 − s₃)`.
pub fn check_cross_law(
    p: &TriangleProfile,
) -> Result<(FieldElement, FieldElement), TrigError> {
    let s3 = p.spread_at(3)?;
    let [q1, q2, q3] = &p.quadrances;
    let lhs = q1.add(q2).sub(q3).square();
    let one = s3.field().one();
    let rhs = q1.mul(q2).mul_i64(4).mul(&one.sub(s3));
    Ok((lhs, rhs))
}

/// Both sides of the triple spread formula:
/// `(s₁ + s₂ + s₃)²` and `2(s₁² + s₂² + s₃²) + 4 s₁s₂s₃`. They agree
/// whenever the arguments are the three spreads of a triangle.
pub fn check_triple_spread(
    s1: &FieldElement,
    s2: &FieldElement,
    s3: &FieldElement,
) -> (FieldElement, FieldElement) {
    let lhs = s1.add(s2).add(s3).square();
    let squares = s1.square().add(&s2.square()).add(&s3.square());
    let rhs = squares.mul_i64(2).add(&s1.mul(s2).mul(s3).mul_i64(4));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::metric::{is_perpendicular, perp, vector_quadrance, Vec2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rational()
    }

    fn rat(n: i64, m: i64) -> FieldElement {
        q().from_ratio(n, m).unwrap()
    }

    fn tri(points: [(i64, i64); 3]) -> Triangle {
        let [a, b, c] = points.map(|(x, y)| Point::from_i64(&q(), x, y));
        Triangle::new(a, b, c).unwrap()
    }

    /// The worked triangle with side vectors (2,−3), (3,4), (5,1).
    fn worked_triangle() -> Triangle {
        tri([(0, 0), (5, 1), (2, -3)])
    }

    fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
        match field.prime_modulus() {
            Some(p) => field.from_i64(rng.gen_range(0..p.min(1 << 31)) as i64),
            None => field
                .from_ratio(rng.gen_range(-15..=15), rng.gen_range(1..=6))
                .unwrap(),
        }
    }

    fn random_triangle(field: &Field, rng: &mut ChaCha8Rng) -> Option<Triangle> {
        let mut point = || {
            Point::new(random_element(field, rng), random_element(field, rng))
        };
        Triangle::new(point(), point(), point()).ok()
    }

    #[test]
    fn archimedes_matches_the_worked_values() {
        assert_eq!(
            archimedes(&rat(13, 1), &rat(25, 1), &rat(26, 1)),
            rat(1156, 1)
        );
        assert_eq!(archimedes(&rat(5, 1), &rat(20, 1), &rat(45, 1)), rat(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let quad = random_element(&q(), &mut rng);
            assert!(archimedes(&quad, &quad, &q().zero()).is_zero());
        }
    }

    #[test]
    fn signed_area_follows_orientation() {
        let t = tri([(0, 0), (2, -3), (5, 1)]);
        assert_eq!(t.signed_area(), rat(17, 2));
        let swapped = tri([(0, 0), (5, 1), (2, -3)]);
        assert_eq!(swapped.signed_area(), rat(-17, 2));
        let flat = tri([(0, 0), (1, 2), (3, 6)]);
        assert_eq!(flat.signed_area(), rat(0, 1));
        assert!(flat.is_degenerate());
        assert_eq!(
            profile(&flat, Color::Blue),
            Err(TrigError::DegenerateTriangle)
        );
    }

    #[test]
    fn coincident_vertices_are_rejected() {
        let a = Point::from_i64(&q(), 1, 2);
        let b = Point::from_i64(&q(), 3, 4);
        assert_eq!(
            Triangle::new(a.clone(), a.clone(), b.clone()),
            Err(TrigError::CoincidentVertices)
        );
        assert_eq!(
            Triangle::new(a.clone(), b.clone(), b.clone()),
            Err(TrigError::CoincidentVertices)
        );
    }

    #[test]
    fn profiles_of_the_worked_triangle_in_all_colors() {
        let t = worked_triangle();
        let sixteen_area2 = rat(1156, 1);

        let blue = profile(&t, Color::Blue).unwrap();
        assert_eq!(blue.quadrances, [rat(25, 1), rat(13, 1), rat(26, 1)]);
        assert_eq!(blue.archimedes(), rat(1156, 1));
        assert_eq!(blue.area2_16, sixteen_area2);
        assert_eq!(blue.spreads[2], Some(rat(289, 325)));

        let red = profile(&t, Color::Red).unwrap();
        assert_eq!(red.quadrances, [rat(-7, 1), rat(-5, 1), rat(24, 1)]);
        assert_eq!(red.archimedes(), rat(-1156, 1));
        assert_eq!(red.area2_16, sixteen_area2);

        let green = profile(&t, Color::Green).unwrap();
        assert_eq!(green.quadrances, [rat(24, 1), rat(-12, 1), rat(10, 1)]);
        assert_eq!(green.archimedes(), rat(-1156, 1));
        assert_eq!(green.area2_16, sixteen_area2);
    }

    #[test]
    fn spread_law_ratios_agree_with_the_closed_form() {
        let t = worked_triangle();
        let blue = profile(&t, Color::Blue).unwrap();
        let ratios = check_spread_law(&blue).unwrap();
        assert_eq!(ratios[0], rat(289, 8450));
        assert_eq!(ratios[1], ratios[0]);
        assert_eq!(ratios[2], ratios[0]);
        assert_eq!(spread_law_ratio(&blue).unwrap(), rat(289, 8450));

        let red = profile(&t, Color::Red).unwrap();
        let ratios = check_spread_law(&red).unwrap();
        assert_eq!(ratios[0], rat(-289, 840));
        assert_eq!(ratios[1], ratios[0]);
        assert_eq!(ratios[2], ratios[0]);
        assert_eq!(spread_law_ratio(&red).unwrap(), rat(-289, 840));

        let green = profile(&t, Color::Green).unwrap();
        let ratios = check_spread_law(&green).unwrap();
        assert_eq!(spread_law_ratio(&green).unwrap(), ratios[0]);
    }

    #[test]
    fn cross_law_holds_and_specializes() {
        let blue = profile(&worked_triangle(), Color::Blue).unwrap();
        let (lhs, rhs) = check_cross_law(&blue).unwrap();
        assert_eq!(lhs, rat(144, 1));
        assert_eq!(rhs, rat(144, 1));
        // s₃ = 1 forces the right side to 0: Pythagoras.
        let right = tri([(4, 2), (-1, 2), (0, 0)]);
        let p = profile(&right, Color::Blue).unwrap();
        assert_eq!(p.spreads[2], Some(rat(1, 1)));
        let (lhs, rhs) = check_cross_law(&p).unwrap();
        assert!(rhs.is_zero());
        assert!(lhs.is_zero());
        assert_eq!(p.quadrances[2], p.quadrances[0].add(&p.quadrances[1]));
    }

    #[test]
    fn triple_spread_formula_on_the_right_triangle_spreads() {
        let check = |a: FieldElement, b: FieldElement, c: FieldElement| {
            let (lhs, rhs) = check_triple_spread(&a, &b, &c);
            assert_eq!(lhs, rhs);
        };
        check(rat(1, 1), rat(1, 5), rat(4, 5));
        check(rat(1, 1), rat(-4, 5), rat(9, 5));
        check(rat(1, 1), rat(-1, 3), rat(4, 3));
        check(rat(0, 1), rat(0, 1), rat(0, 1));
    }

    #[test]
    fn right_triangles_have_quotient_spreads_in_every_color() {
        // One hand-built right triangle per color, legs from the origin.
        let cases = [
            (Color::Blue, tri([(4, 2), (-1, 2), (0, 0)]), [5, 20, 25]),
            (Color::Red, tri([(3, 0), (0, 2), (0, 0)]), [-4, 9, 5]),
            (Color::Green, tri([(-4, -2), (2, -1), (0, 0)]), [-4, 16, 12]),
        ];
        for (c, t, quads) in cases {
            let [l1, l2, _] = t.side_lines();
            assert!(is_perpendicular(c, &l1, &l2), "legs meet at A₃");
            let p = profile(&t, c).unwrap();
            let expected = quads.map(|n| rat(n, 1));
            assert_eq!(p.quadrances, expected);
            assert_eq!(p.quadrances[2], p.quadrances[0].add(&p.quadrances[1]));
            assert_eq!(p.spreads[2], Some(rat(1, 1)));
            let hyp = &p.quadrances[2];
            assert_eq!(
                p.spreads[0],
                Some(p.quadrances[0].checked_div(hyp).unwrap())
            );
            assert_eq!(
                p.spreads[1],
                Some(p.quadrances[1].checked_div(hyp).unwrap())
            );
            let (s1, s2) = (p.spreads[0].clone().unwrap(), p.spreads[1].clone().unwrap());
            assert!(s1.add(&s2).is_one(), "non-right spreads sum to 1");
        }
    }

    #[test]
    fn laws_hold_for_random_triangles_over_two_fields() {
        for field in [Field::rational(), Field::prime(10007).unwrap()] {
            let mut rng = ChaCha8Rng::seed_from_u64(2026);
            let mut full_checks = 0;
            let mut produced = 0;
            while produced < 1000 {
                let Some(t) = random_triangle(&field, &mut rng) else {
                    continue;
                };
                if t.is_degenerate() {
                    continue;
                }
                produced += 1;
                for c in Color::ALL {
                    let p = profile(&t, c).unwrap();
                    // σ-sign law, valid even where spreads are not.
                    assert_eq!(p.archimedes().mul_i64(c.sign()), p.area2_16);
                    let Ok(ratios) = check_spread_law(&p) else {
                        continue;
                    };
                    let common = spread_law_ratio(&p).unwrap();
                    assert_eq!(ratios, [common.clone(), common.clone(), common]);
                    let (lhs, rhs) = check_cross_law(&p).unwrap();
                    assert_eq!(lhs, rhs);
                    let [s1, s2, s3] = p.spreads.clone().map(Option::unwrap);
                    let (lhs, rhs) = check_triple_spread(&s1, &s2, &s3);
                    assert_eq!(lhs, rhs);
                    full_checks += 1;
                }
            }
            assert!(full_checks > 1500, "most draws exercise all laws");
        }
    }

    #[test]
    fn pythagoras_goes_both_ways() {
        // Engineered perpendicular legs in each color, then the biconditional
        // on unconstrained random triangles.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let field = q();
        let mut engineered = 0;
        for _ in 0..400 {
            let a3 = Point::new(
                random_element(&field, &mut rng),
                random_element(&field, &mut rng),
            );
            let d = Vec2::new(
                random_element(&field, &mut rng),
                random_element(&field, &mut rng),
            );
            if d.is_zero() {
                continue;
            }
            for c in Color::ALL {
                let e = perp(c, &d);
                if vector_quadrance(c, &d).is_zero() {
                    continue; // null leg: the "right angle" collapses
                }
                let a1 = a3.translate(&d);
                let a2 = a3.translate(&e);
                let Ok(t) = Triangle::new(a1, a2, a3.clone()) else {
                    continue;
                };
                if t.is_degenerate() {
                    continue;
                }
                let [q1, q2, q3] = t.quadrances(c);
                assert_eq!(q1.add(&q2), q3);
                engineered += 1;
            }
        }
        assert!(engineered > 300);
        for _ in 0..400 {
            let Some(t) = random_triangle(&field, &mut rng) else {
                continue;
            };
            if t.is_degenerate() {
                continue;
            }
            let [l1, l2, _] = t.side_lines();
            for c in Color::ALL {
                let [q1, q2, q3] = t.quadrances(c);
                let pythagorean = q1.add(&q2) == q3;
                assert_eq!(pythagorean, is_perpendicular(c, &l1, &l2));
            }
        }
    }

    #[test]
    fn triple_quad_detects_collinearity_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let field = q();
        for _ in 0..300 {
            let Some(t) = random_triangle(&field, &mut rng) else {
                continue;
            };
            for c in Color::ALL {
                let [q1, q2, q3] = t.quadrances(c);
                assert_eq!(archimedes(&q1, &q2, &q3).is_zero(), t.is_degenerate());
            }
        }
        // Distinct collinear points, including null directions.
        for d in [(1, 2), (1, 1), (1, 0), (0, 1)] {
            let a = Point::from_i64(&field, 3, -2);
            let step = Vec2::from_i64(&field, d.0, d.1);
            let t = Triangle::new(
                a.clone(),
                a.translate(&step),
                a.translate(&step.scale(&field.from_i64(3))),
            )
            .unwrap();
            assert!(t.is_degenerate());
            for c in Color::ALL {
                let [q1, q2, q3] = t.quadrances(c);
                assert!(archimedes(&q1, &q2, &q3).is_zero());
            }
        }
    }

    #[test]
    fn profiles_are_translation_invariant_and_permute_with_relabeling() {
        let t = worked_triangle();
        let shift = Vec2::from_i64(&q(), -7, 11);
        let moved = t.translate(&shift);
        for c in Color::ALL {
            assert_eq!(profile(&t, c).unwrap(), profile(&moved, c).unwrap());
        }
        // Swapping A₁ and A₂ swaps (Q₁, s₁) with (Q₂, s₂) and flips area.
        let [a1, a2, a3] = t.vertices().clone();
        let swapped = Triangle::new(a2, a1, a3).unwrap();
        assert_eq!(swapped.signed_area(), t.signed_area().neg());
        for c in Color::ALL {
            let p = profile(&t, c).unwrap();
            let s = profile(&swapped, c).unwrap();
            assert_eq!(s.quadrances[0], p.quadrances[1]);
            assert_eq!(s.quadrances[1], p.quadrances[0]);
            assert_eq!(s.quadrances[2], p.quadrances[2]);
            assert_eq!(s.spreads[0], p.spreads[1]);
            assert_eq!(s.spreads[1], p.spreads[0]);
            assert_eq!(s.spreads[2], p.spreads[2]);
            assert_eq!(s.area2_16, p.area2_16);
        }
    }

    #[test]
    fn law_checks_report_why_they_cannot_run() {
        // A red-null side line leaves a spread undefined.
        let t = tri([(0, 0), (1, 1), (3, 0)]);
        let p = profile(&t, Color::Red).unwrap();
        assert!(p.spreads.iter().any(Option::is_none));
        assert!(matches!(
            check_spread_law(&p),
            Err(TrigError::UndefinedSpread {
                color: Color::Red,
                ..
            })
        ));
        // A null side has quadrance zero AND a null line, so the spreads at
        // its endpoints go missing first; the closed-form ratio reports the
        // zero quadrance directly.
        let t = tri([(0, 0), (2, 2), (5, 0)]);
        let p = profile(&t, Color::Red).unwrap();
        assert_eq!(p.quadrances[2], rat(0, 1));
        assert!(p.spreads[0].is_none() && p.spreads[1].is_none());
        assert!(p.spreads[2].is_some(), "s₃ does not involve the null side");
        assert_eq!(
            check_spread_law(&p),
            Err(TrigError::UndefinedSpread {
                color: Color::Red,
                vertex: 1
            })
        );
        assert_eq!(
            spread_law_ratio(&p),
            Err(TrigError::ZeroQuadrance { vertex: 3 })
        );
    }
}
