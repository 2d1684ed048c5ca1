//! Scene files and their execution.
//!
//! A scene is a JSON document with four parts:
//!
//! ```json
//! {
//!   "field": {"kind": "rational"},
//!   "objects": [
//!     {"name": "A", "point": ["0", "0"]},
//!     {"name": "l", "line": ["2", "1", "-6"]},
//!     {"name": "k", "conic": ["2", "-4", "5", "0", "0", "-6"]},
//!     {"name": "T", "triangle": ["A", "B", "C"]}
//!   ],
//!   "queries": [
//!     {"op": "grammola", "color": "blue", "args": ["k"]}
//!   ],
//!   "window": {"min": [-6, -6], "max": [6, 6], "samples": 512}
//! }
//! ```
//!
//! Objects are a list so definition order is explicit; triangles refer to
//! previously defined points by name. Queries run in order; a query that
//! fails produces an error record in the report and the remaining queries
//! still run. Every field element in a report uses the exact text encoding
//! of the core library, and values living in a quadratic tower come with
//! the tower's descriptor so they can be parsed back.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value as Json};

use chromogeometry::conics::{
    self, grammola_analyze, parabola_chromatics, parabola_conic, quadrola_foci, Conic,
    FocusDirectrixPair, MeetResult,
};
use chromogeometry::field::FieldElement;
use chromogeometry::metric::{self, Line, Point};
use chromogeometry::trig::{self, Triangle};
use chromogeometry::{Color, Field};

/// A named drawable or reference object.
pub enum SceneObject {
    /// A point with exact coordinates.
    Point(Point),
    /// A line from its three coefficients.
    Line(Line),
    /// A conic from its six coefficients.
    Conic(Conic),
    /// A triangle naming three previously defined points.
    Triangle([String; 3]),
}

/// One query: an op name, an optional color, argument references, and
/// free-form parameters. The raw JSON is kept so reports echo queries
/// byte-for-byte.
pub struct Query {
    pub op: String,
    pub color: Option<Color>,
    pub args: Vec<String>,
    pub params: Map<String, Json>,
    pub raw: Json,
}

/// The plot window for rendering.
#[derive(Clone, Copy)]
pub struct Window {
    pub min: (f64, f64),
    pub max: (f64, f64),
    pub samples: usize,
}

impl Default for Window {
    fn default() -> Window {
        Window {
            min: (-8.0, -8.0),
            max: (8.0, 8.0),
            samples: 512,
        }
    }
}

/// A parsed scene.
pub struct Scene {
    pub field: Field,
    pub objects: Vec<(String, SceneObject)>,
    index: BTreeMap<String, usize>,
    pub queries: Vec<Query>,
    pub window: Option<Window>,
}

fn bad(msg: impl Into<String>) -> String {
    msg.into()
}

fn as_object<'j>(json: &'j Json, what: &str) -> Result<&'j Map<String, Json>, String> {
    json.as_object()
        .ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn as_array<'j>(json: &'j Json, what: &str) -> Result<&'j Vec<Json>, String> {
    json.as_array()
        .ok_or_else(|| bad(format!("{what} must be a JSON array")))
}

fn fixed<'j, const N: usize>(json: &'j Json, what: &str) -> Result<[&'j Json; N], String> {
    let arr = as_array(json, what)?;
    if arr.len() != N {
        return Err(bad(format!("{what} needs {N} entries, got {}", arr.len())));
    }
    let mut out = [json; N];
    for (slot, v) in out.iter_mut().zip(arr) {
        *slot = v;
    }
    Ok(out)
}

fn element(field: &Field, json: &Json, what: &str) -> Result<FieldElement, String> {
    field
        .parse_element(json)
        .map_err(|e| bad(format!("{what}: {e}")))
}

fn point(field: &Field, json: &Json, what: &str) -> Result<Point, String> {
    let [x, y] = fixed::<2>(json, what)?;
    Ok(Point::new(element(field, x, what)?, element(field, y, what)?))
}

fn line(field: &Field, json: &Json, what: &str) -> Result<Line, String> {
    let [a, b, c] = fixed::<3>(json, what)?;
    Line::new(
        element(field, a, what)?,
        element(field, b, what)?,
        element(field, c, what)?,
    )
    .map_err(|e| bad(format!("{what}: {e}")))
}

fn conic(field: &Field, json: &Json, what: &str) -> Result<Conic, String> {
    let [a, b, c, d, e, f] = fixed::<6>(json, what)?;
    let coeffs = [
        element(field, a, what)?,
        element(field, b, what)?,
        element(field, c, what)?,
        element(field, d, what)?,
        element(field, e, what)?,
        element(field, f, what)?,
    ];
    Conic::new(coeffs).map_err(|e| bad(format!("{what}: {e}")))
}

impl Scene {
    /// Parse a scene document. Any failure here is a parse error — the
    /// caller should not run queries.
    pub fn parse(doc: &Json) -> Result<Scene, String> {
        let top = as_object(doc, "the scene")?;
        for key in top.keys() {
            if !matches!(key.as_str(), "field" | "objects" | "queries" | "window") {
                return Err(bad(format!("unknown scene key {key:?}")));
            }
        }
        let field = match top.get("field") {
            Some(desc) => Field::from_json(desc).map_err(|e| bad(format!("field: {e}")))?,
            None => Field::rational(),
        };

        let mut objects = Vec::new();
        let mut index = BTreeMap::new();
        if let Some(list) = top.get("objects") {
            for (slot, entry) in as_array(list, "objects")?.iter().enumerate() {
                let entry = as_object(entry, "an object entry")?;
                let name = entry
                    .get("name")
                    .and_then(Json::as_str)
                    .ok_or_else(|| bad(format!("object #{slot} needs a \"name\" string")))?
                    .to_owned();
                if index.contains_key(&name) {
                    return Err(bad(format!("object {name:?} defined twice")));
                }
                let what = format!("object {name:?}");
                let kinds: Vec<&String> =
                    entry.keys().filter(|k| k.as_str() != "name").collect();
                let [kind] = kinds.as_slice() else {
                    return Err(bad(format!("{what} needs exactly one kind key")));
                };
                let body = &entry[kind.as_str()];
                let object = match kind.as_str() {
                    "point" => SceneObject::Point(point(&field, body, &what)?),
                    "line" => SceneObject::Line(line(&field, body, &what)?),
                    "conic" => SceneObject::Conic(conic(&field, body, &what)?),
                    "triangle" => {
                        let [a, b, c] = fixed::<3>(body, &what)?;
                        let mut refs = Vec::new();
                        for r in [a, b, c] {
                            let r = r
                                .as_str()
                                .ok_or_else(|| bad(format!("{what}: point references must be strings")))?;
                            if !matches!(
                                index.get(r).map(|i: &usize| &objects[*i]),
                                Some((_, SceneObject::Point(_)))
                            ) {
                                return Err(bad(format!(
                                    "{what}: {r:?} is not a previously defined point"
                                )));
                            }
                            refs.push(r.to_owned());
                        }
                        SceneObject::Triangle(refs.try_into().expect("three refs"))
                    }
                    other => return Err(bad(format!("{what}: unknown kind {other:?}"))),
                };
                index.insert(name.clone(), objects.len());
                objects.push((name, object));
            }
        }

        let mut queries = Vec::new();
        if let Some(list) = top.get("queries") {
            for (slot, entry) in as_array(list, "queries")?.iter().enumerate() {
                let what = format!("query #{slot}");
                let obj = as_object(entry, &what)?;
                let op = obj
                    .get("op")
                    .and_then(Json::as_str)
                    .ok_or_else(|| bad(format!("{what} needs an \"op\" string")))?
                    .to_owned();
                let color = match obj.get("color") {
                    None => None,
                    Some(c) => {
                        let text = c
                            .as_str()
                            .ok_or_else(|| bad(format!("{what}: color must be a string")))?;
                        Some(
                            Color::parse(text)
                                .ok_or_else(|| bad(format!("{what}: unknown color {text:?}")))?,
                        )
                    }
                };
                let mut args = Vec::new();
                if let Some(list) = obj.get("args") {
                    for a in as_array(list, &format!("{what} args"))? {
                        args.push(
                            a.as_str()
                                .ok_or_else(|| {
                                    bad(format!("{what}: args must be object names"))
                                })?
                                .to_owned(),
                        );
                    }
                }
                let params = match obj.get("params") {
                    None => Map::new(),
                    Some(p) => as_object(p, &format!("{what} params"))?.clone(),
                };
                queries.push(Query {
                    op,
                    color,
                    args,
                    params,
                    raw: entry.clone(),
                });
            }
        }

        let window = match top.get("window") {
            None => None,
            Some(w) => {
                let obj = as_object(w, "window")?;
                let corner = |key: &str| -> Result<(f64, f64), String> {
                    let [x, y] = fixed::<2>(
                        obj.get(key)
                            .ok_or_else(|| bad(format!("window needs {key:?}")))?,
                        &format!("window {key}"),
                    )?;
                    let x = x
                        .as_f64()
                        .ok_or_else(|| bad("window corners must be numbers"))?;
                    let y = y
                        .as_f64()
                        .ok_or_else(|| bad("window corners must be numbers"))?;
                    Ok((x, y))
                };
                let samples = match obj.get("samples") {
                    None => Window::default().samples,
                    Some(s) => s
                        .as_u64()
                        .filter(|&s| (2..=100_000).contains(&s))
                        .ok_or_else(|| bad("window samples must be a count"))?
                        as usize,
                };
                Some(Window {
                    min: corner("min")?,
                    max: corner("max")?,
                    samples,
                })
            }
        };

        Ok(Scene {
            field,
            objects,
            index,
            queries,
            window,
        })
    }

    /// Look an object up by name.
    pub fn object(&self, name: &str) -> Option<&SceneObject> {
        self.index.get(name).map(|&i| &self.objects[i].1)
    }

    fn want_point(&self, name: &str) -> Result<&Point, String> {
        match self.object(name) {
            Some(SceneObject::Point(p)) => Ok(p),
            Some(_) => Err(bad(format!("{name:?} is not a point"))),
            None => Err(bad(format!("unknown reference {name:?}"))),
        }
    }

    fn want_line(&self, name: &str) -> Result<&Line, String> {
        match self.object(name) {
            Some(SceneObject::Line(l)) => Ok(l),
            Some(_) => Err(bad(format!("{name:?} is not a line"))),
            None => Err(bad(format!("unknown reference {name:?}"))),
        }
    }

    fn want_conic(&self, name: &str) -> Result<&Conic, String> {
        match self.object(name) {
            Some(SceneObject::Conic(k)) => Ok(k),
            Some(_) => Err(bad(format!("{name:?} is not a conic"))),
            None => Err(bad(format!("unknown reference {name:?}"))),
        }
    }

    fn want_triangle(&self, name: &str) -> Result<Triangle, String> {
        match self.object(name) {
            Some(SceneObject::Triangle(refs)) => {
                let [a, b, c] = refs;
                Triangle::new(
                    self.want_point(a)?.clone(),
                    self.want_point(b)?.clone(),
                    self.want_point(c)?.clone(),
                )
                .map_err(|e| bad(format!("{name:?}: {e}")))
            }
            Some(_) => Err(bad(format!("{name:?} is not a triangle"))),
            None => Err(bad(format!("unknown reference {name:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Value serialization.

pub fn element_json(x: &FieldElement) -> Json {
    x.to_json()
}

pub fn point_json(p: &Point) -> Json {
    Json::Array(vec![element_json(&p.x), element_json(&p.y)])
}

pub fn line_json(l: &Line) -> Json {
    let (a, b, c) = l.coefficients();
    Json::Array(vec![element_json(a), element_json(b), element_json(c)])
}

pub fn conic_json(k: &Conic) -> Json {
    Json::Array(k.coefficients().iter().map(element_json).collect())
}

fn optional<T>(value: Option<T>, f: impl FnOnce(T) -> Json) -> Json {
    match value {
        Some(v) => f(v),
        None => Json::Null,
    }
}

// ---------------------------------------------------------------------------
// Execution.

/// One executed query: the echoed query and either a value or an error.
pub struct QueryResult {
    pub query: Json,
    pub outcome: Result<Json, String>,
}

/// The full report of a scene run.
pub struct Report {
    pub field: Field,
    pub results: Vec<QueryResult>,
}

impl Report {
    /// Whether any query produced an error record.
    pub fn has_errors(&self) -> bool {
        self.results.iter().any(|r| r.outcome.is_err())
    }

    /// The stable JSON form: object keys sort alphabetically and results
    /// keep query order, so a fixed scene always serializes identically.
    pub fn to_json(&self) -> Json {
        let results: Vec<Json> = self
            .results
            .iter()
            .map(|r| match &r.outcome {
                Ok(value) => json!({"query": r.query, "value": value}),
                Err(message) => json!({"query": r.query, "error": message}),
            })
            .collect();
        json!({
            "field": self.field.to_json(),
            "results": results,
        })
    }

    /// The printed form: pretty JSON and a trailing newline.
    pub fn to_text(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_json()).expect("reports serialize cleanly");
        text.push('\n');
        text
    }
}

/// Execute every query in order. Per-query failures become error records,
/// never aborts.
pub fn execute(scene: &Scene) -> Report {
    let results = scene
        .queries
        .iter()
        .map(|q| QueryResult {
            query: q.raw.clone(),
            outcome: run_query(scene, q),
        })
        .collect();
    Report {
        field: scene.field.clone(),
        results,
    }
}

fn want_color(q: &Query) -> Result<Color, String> {
    q.color
        .ok_or_else(|| bad(format!("op {:?} needs a color", q.op)))
}

fn arity<'q, const N: usize>(q: &'q Query) -> Result<[&'q str; N], String> {
    if q.args.len() != N {
        return Err(bad(format!(
            "op {:?} takes {N} arguments, got {}",
            q.op,
            q.args.len()
        )));
    }
    let mut out = [""; N];
    for (slot, a) in out.iter_mut().zip(&q.args) {
        *slot = a;
    }
    Ok(out)
}

fn run_query(scene: &Scene, q: &Query) -> Result<Json, String> {
    match q.op.as_str() {
        "quadrance" => {
            let color = want_color(q)?;
            let [a, b] = arity::<2>(q)?;
            let value = metric::quadrance(color, scene.want_point(a)?, scene.want_point(b)?);
            Ok(element_json(&value))
        }
        "spread" => {
            let color = want_color(q)?;
            let [a, b] = arity::<2>(q)?;
            let value = metric::spread(color, scene.want_line(a)?, scene.want_line(b)?);
            Ok(optional(value, |s| element_json(&s)))
        }
        "signed_area" => {
            let [t] = arity::<1>(q)?;
            let t = scene.want_triangle(t)?;
            Ok(element_json(&t.signed_area()))
        }
        "profile" => {
            let color = want_color(q)?;
            let [t] = arity::<1>(q)?;
            let t = scene.want_triangle(t)?;
            let prof = trig::profile(&t, color).map_err(|e| bad(e.to_string()))?;
            let ratio = trig::spread_law_ratio(&prof).ok();
            Ok(json!({
                "quadrances": prof.quadrances.iter().map(element_json).collect::<Vec<_>>(),
                "spreads": prof
                    .spreads
                    .iter()
                    .map(|s| optional(s.as_ref(), element_json))
                    .collect::<Vec<_>>(),
                "archimedes": element_json(&prof.archimedes()),
                "area16": element_json(&prof.area2_16),
                "spread_law_ratio": optional(ratio.as_ref(), element_json),
            }))
        }
        "evaluate" => {
            let [k, p] = arity::<2>(q)?;
            let value = scene.want_conic(k)?.evaluate(scene.want_point(p)?);
            Ok(element_json(&value))
        }
        "center" => {
            let [k] = arity::<1>(q)?;
            Ok(optional(scene.want_conic(k)?.center(), |c| point_json(&c)))
        }
        "tangent" => {
            let [k, p] = arity::<2>(q)?;
            let t = scene
                .want_conic(k)?
                .tangent_at(scene.want_point(p)?)
                .map_err(|e| bad(e.to_string()))?;
            Ok(line_json(&t))
        }
        "meet" => {
            let [k, l] = arity::<2>(q)?;
            let met = scene
                .want_conic(k)?
                .meet_line(scene.want_line(l)?)
                .map_err(|e| bad(e.to_string()))?;
            Ok(match met {
                MeetResult::Empty => json!({"kind": "empty"}),
                MeetResult::One(p) => json!({"kind": "one", "point": point_json(&p)}),
                MeetResult::Two {
                    points,
                    tower,
                    discriminant,
                } => json!({
                    "kind": "two",
                    "points": points.iter().map(point_json).collect::<Vec<_>>(),
                    "discriminant": element_json(&discriminant),
                    "tower": tower.to_json(),
                }),
            })
        }
        "grammola" => {
            let color = want_color(q)?;
            let [k] = arity::<1>(q)?;
            let g = grammola_analyze(color, scene.want_conic(k)?).map_err(|e| bad(e.to_string()))?;
            Ok(json!({
                "diagonals": [line_json(&g.diagonals.0), line_json(&g.diagonals.1)],
                "constant": element_json(&g.constant),
                "corner_quadrances": [
                    element_json(&g.corner_quadrances.0),
                    element_json(&g.corner_quadrances.1),
                ],
                "diagonal_spread": element_json(&g.diagonal_spread),
                "tower": g.tower.to_json(),
            }))
        }
        "quadrola" => {
            let color = want_color(q)?;
            let [k] = arity::<1>(q)?;
            let data = quadrola_foci(color, scene.want_conic(k)?).map_err(|e| bad(e.to_string()))?;
            let pairs: Vec<Json> = data
                .pairs
                .iter()
                .map(|pair| {
                    json!({
                        "foci": [point_json(&pair.foci.0), point_json(&pair.foci.1)],
                        "directrices": [
                            line_json(&pair.directrices.0),
                            line_json(&pair.directrices.1),
                        ],
                        "k": element_json(&pair.k),
                    })
                })
                .collect();
            Ok(json!({
                "directrix_points": data.directrix_points.iter().map(point_json).collect::<Vec<_>>(),
                "pairs": pairs,
                "tower": data.tower.to_json(),
            }))
        }
        "focus_directrix_conic" => {
            let color = want_color(q)?;
            let [f, l] = arity::<2>(q)?;
            let ecc2 = match q.params.get("ecc2") {
                Some(e) => element(&scene.field, e, "ecc2")?,
                None => scene.field.one(),
            };
            let k = conics::conic_from_focus_directrix(
                color,
                scene.want_point(f)?,
                scene.want_line(l)?,
                &ecc2,
            )
            .map_err(|e| bad(e.to_string()))?;
            Ok(json!({"coefficients": conic_json(&k)}))
        }
        "parabola_chromatics" => {
            let color = want_color(q)?;
            let [f, l] = arity::<2>(q)?;
            let focus = scene.want_point(f)?;
            let directrix = scene.want_line(l)?;
            let k = parabola_conic(color, focus, directrix).map_err(|e| bad(e.to_string()))?;
            let known = FocusDirectrixPair {
                color,
                focus: focus.clone(),
                directrix: directrix.clone(),
                ecc2: scene.field.one(),
            };
            let ch = parabola_chromatics(&k, &known).map_err(|e| bad(e.to_string()))?;
            let pairs: Vec<Json> = ch
                .pairs
                .iter()
                .map(|p| {
                    json!({
                        "color": p.color.to_string(),
                        "focus": point_json(&p.focus),
                        "directrix": line_json(&p.directrix),
                    })
                })
                .collect();
            let triples: Vec<Json> = ch
                .collinear_triples()
                .into_iter()
                .map(|t| Json::Array(t.iter().map(|p| Json::String(p.to_string())).collect()))
                .collect();
            Ok(json!({
                "conic": conic_json(&k),
                "pairs": pairs,
                "axis": [element_json(&ch.axis_direction.x), element_json(&ch.axis_direction.y)],
                "vertices": ch.vertices.iter().map(point_json).collect::<Vec<_>>(),
                "bases": ch.bases.iter().map(point_json).collect::<Vec<_>>(),
                "tangent_meets": ch
                    .tangent_meets
                    .iter()
                    .map(|m| optional(m.as_ref(), point_json))
                    .collect::<Vec<_>>(),
                "collinear_triples": triples,
            }))
        }
        "family" => {
            let [f, l] = arity::<2>(q)?;
            let family = conics::common_focus_directrix_family(
                scene.want_point(f)?,
                scene.want_line(l)?,
            )
            .map_err(|e| bad(e.to_string()))?;
            let members: Vec<Json> = family
                .members
                .iter()
                .map(|m| {
                    let conic = match &m.conic {
                        Ok(k) => conic_json(k),
                        Err(e) => json!({"error": e.to_string()}),
                    };
                    let foot = match &m.foot {
                        Ok(p) => point_json(p),
                        Err(e) => json!({"error": e.to_string()}),
                    };
                    let triangle = match &m.focal_triangle {
                        Ok(t) => Json::Array(t.vertices().iter().map(point_json).collect()),
                        Err(e) => json!({"error": e.to_string()}),
                    };
                    json!({
                        "color": m.color.to_string(),
                        "conic": conic,
                        "foot": foot,
                        "focal_triangle": triangle,
                    })
                })
                .collect();
            Ok(json!({"members": members}))
        }
        other => Err(bad(format!("unknown op {other:?}"))),
    }
}
