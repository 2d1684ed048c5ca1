//! Exact point sampling on conics.
//!
//! Verification code needs points that genuinely lie on a conic. When the
//! conic has a point over its own field, chords through it parameterize as
//! many more as wanted without leaving the field; otherwise coordinate
//! sweeps produce points in quadratic extensions, one tower per sweep line.

use crate::metric::{Line, Point, Vec2};

use super::{Conic, MeetResult};

/// Search for a point of the conic over its own field, by meeting it with
/// a fixed family of vertical and horizontal lines of small height. The
/// search is deterministic and bounded; `None` means no point was found,
/// not that none exists — though for the sweep to miss, every tried line
/// must have an irrational (or complex) pair of intersections.
pub fn rational_point(k: &Conic) -> Option<Point> {
    let field = k.field();
    let mut values = Vec::new();
    for n in 0..=16i64 {
        values.push(field.from_i64(n));
        if n > 0 {
            values.push(field.from_i64(-n));
        }
    }
    for den in [2i64, 3] {
        for num in 1..=15i64 {
            if num % den == 0 {
                continue;
            }
            if let Ok(v) = field.from_ratio(num, den) {
                values.push(v.clone());
                values.push(v.neg());
            }
        }
    }
    let one = field.one();
    let zero = field.zero();
    for v in values {
        for (a, b) in [(&one, &zero), (&zero, &one)] {
            let line = Line::new(a.clone(), b.clone(), v.neg())
                .expect("coordinate lines are valid");
            match k.meet_line(&line) {
                Ok(MeetResult::One(p)) => return Some(p),
                Ok(MeetResult::Two { points, tower, .. }) if tower == *field => {
                    return Some(points[0].clone());
                }
                Ok(_) => {}
                // A line inside the conic: any of its points will do.
                Err(super::ConicError::LineOnConic) => {
                    if b.is_zero() {
                        return Some(Point::new(v.clone(), zero.clone()));
                    }
                    return Some(Point::new(zero.clone(), v.clone()));
                }
                Err(_) => {}
            }
        }
    }
    None
}

/// Up to `count` further points of the conic, found by intersecting chords
/// of small slope through a known point `base`. All results live in the
/// base point's field: the second root of a quadratic with one known root
/// is a rational expression. The base point itself is never returned.
pub fn chord_points(k: &Conic, base: &Point, count: usize) -> Vec<Point> {
    debug_assert!(k.contains(base), "chord base must lie on the conic");
    let field = k.field();
    let mut dirs = vec![Vec2::from_i64(field, 0, 1)];
    let bound = (4 * count + 24) as i64;
    for m in 0..=bound {
        dirs.push(Vec2::from_i64(field, 1, m));
        if m > 0 {
            dirs.push(Vec2::from_i64(field, 1, -m));
        }
    }
    let mut out = Vec::with_capacity(count);
    for dir in dirs {
        if out.len() == count {
            break;
        }
        let q2 = k.quadratic_form(&dir);
        if q2.is_zero() {
            continue;
        }
        let g = k.gradient(base);
        let q1 = g.x.mul(&dir.x).add(&g.y.mul(&dir.y));
        if q1.is_zero() {
            // The chord is tangent at the base point.
            continue;
        }
        let s = q1.checked_div(&q2).expect("nonzero quadratic term").neg();
        let p = base.translate(&dir.scale(&s));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Up to `count` points of the conic from vertical and horizontal line
/// sweeps. Unlike [`chord_points`] the results may live in quadratic
/// extensions of the conic's field, and different points may live in
/// different extensions; callers needing a common field must embed.
pub fn sweep_points(k: &Conic, count: usize) -> Vec<Point> {
    let field = k.field();
    let one = field.one();
    let zero = field.zero();
    let mut out: Vec<Point> = Vec::with_capacity(count);
    let bound = (2 * count + 16) as i64;
    let mut values = vec![0i64];
    for n in 1..=bound {
        values.push(n);
        values.push(-n);
    }
    'outer: for v in values {
        let v = field.from_i64(v);
        for (a, b) in [(&one, &zero), (&zero, &one)] {
            if out.len() >= count {
                break 'outer;
            }
            let line = Line::new(a.clone(), b.clone(), v.neg())
                .expect("coordinate lines are valid");
            match k.meet_line(&line) {
                Ok(MeetResult::One(p)) => {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
                Ok(MeetResult::Two { points, .. }) => {
                    for p in points {
                        if out.len() < count && !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Up to `count` points of a parabola, one per line parallel to its axis.
/// Each such line meets the parabola exactly once and the meet is a linear
/// solve, so every point lives in the conic's own field.
pub fn axis_points(k: &Conic, axis: &Vec2, count: usize) -> Vec<Point> {
    let field = k.field();
    let mut out = Vec::with_capacity(count);
    let bound = (2 * count + 16) as i64;
    let mut offsets = vec![0i64];
    for n in 1..=bound {
        offsets.push(n);
        offsets.push(-n);
    }
    for i in offsets {
        if out.len() == count {
            break;
        }
        // Base points transversal to the axis, so the lines are distinct.
        let base = if !axis.y.is_zero() {
            Point::from_i64(field, i, 0)
        } else {
            Point::from_i64(field, 0, i)
        };
        let line = Line::through_with_direction(&base, axis)
            .expect("axis direction is nonzero");
        if let Ok(MeetResult::One(p)) = k.meet_line(&line) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}
