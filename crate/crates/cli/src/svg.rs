//! Deterministic SVG drawings: divisors on a fundamental domain, slices of
//! section polyhedra, and stable intersections.

use std::fmt::Write;

use trop_theta::divisor::{IntersectionReport, WeightedComplex};
use trop_theta::matrix::QMatrix;
use trop_theta::num::to_f64;
use trop_theta::polyhedra::VRep;
use trop_theta::theta::SectionPolyhedron;
use trop_theta::{Error, Rat, Result};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 30.0;
const COLORS: [&str; 2] = ["#1f4e9c", "#b03a2e"];

fn fmt(v: f64) -> String {
    // avoid "-0.00"
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Maps a bounding box onto the canvas, flipping `y`.
struct View {
    lo: [f64; 2],
    scale: f64,
}

impl View {
    fn fit(points: &[[f64; 2]]) -> View {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if points.is_empty() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        View {
            lo,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, p: [f64; 2]) -> (String, String) {
        let x = MARGIN + (p[0] - self.lo[0]) * self.scale;
        let y = SIZE - MARGIN - (p[1] - self.lo[1]) * self.scale;
        (fmt(x), fmt(y))
    }
}

struct Doc(String);

impl Doc {
    fn new() -> Doc {
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        )
        .unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        Doc(s)
    }

    fn line(&mut self, v: &View, a: [f64; 2], b: [f64; 2], stroke: &str, width: f64, dash: bool) {
        let (x1, y1) = v.map(a);
        let (x2, y2) = v.map(b);
        let dash = if dash {
            r#" stroke-dasharray="4 3""#
        } else {
            ""
        };
        writeln!(
            self.0,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}"{dash}/>"#
        )
        .unwrap();
    }

    fn dot(&mut self, v: &View, p: [f64; 2], r: f64, fill: &str) {
        let (x, y) = v.map(p);
        writeln!(
            self.0,
            r#"<circle cx="{x}" cy="{y}" r="{r}" fill="{fill}"/>"#
        )
        .unwrap();
    }

    fn text(&mut self, v: &View, p: [f64; 2], label: &str) {
        let (x, y) = v.map(p);
        writeln!(
            self.0,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" font-weight="bold">{label}</text>"#
        )
        .unwrap();
    }

    fn finish(mut self) -> String {
        self.0.push_str("</svg>\n");
        self.0
    }
}

fn pt(v: &[Rat]) -> [f64; 2] {
    [to_f64(&v[0]), v.get(1).map_or(0.0, to_f64)]
}

fn add(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * b[0], a[1] + t * b[1]]
}

/// Corners of the fundamental parallelepiped `L [0, 1]^2` in drawing order.
fn domain(c: &WeightedComplex) -> Option<Vec<[f64; 2]>> {
    let l = c.lattice_matrix()?;
    let corner = |a: i64, b: i64| {
        pt(&l.mul_vec(&[Rat::from_integer(a.into()), Rat::from_integer(b.into())]))
    };
    Some(match c.ambient_dim {
        1 => vec![corner(0, 0), pt(&l.mul_vec(&[Rat::from_integer(1.into())]))],
        _ => vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)],
    })
}

/// Segments of a curve, rays cut at length `reach`.
fn segments(c: &WeightedComplex, reach: f64) -> Result<Vec<([f64; 2], [f64; 2], i64)>> {
    c.cells
        .iter()
        .map(|cell| {
            let (a, d, bounded) = cell.as_edge().ok_or(Error::NotPureCurve)?;
            let a = pt(a);
            let d = pt(&d);
            let end = if bounded {
                add(a, d, 1.0)
            } else {
                let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
                add(a, d, reach / len)
            };
            Ok((a, end, cell.weight))
        })
        .collect()
}

fn reach(c: &WeightedComplex) -> f64 {
    let mut r: f64 = 1.0;
    for cell in &c.cells {
        for v in &cell.vertices {
            let p = pt(v);
            r = r.max(p[0].abs()).max(p[1].abs());
        }
    }
    r + 1.0
}

fn draw_curve(
    doc: &mut Doc,
    view: &View,
    segs: &[([f64; 2], [f64; 2], i64)],
    color: &str,
    labels: bool,
) {
    for (a, b, w) in segs {
        doc.line(view, *a, *b, color, 1.5, false);
        if labels {
            let m = add(*a, [b[0] - a[0], b[1] - a[1]], 0.5);
            doc.text(view, m, &w.to_string());
        }
    }
}

/// A divisor with its weights; on a torus the fundamental domain is outlined.
pub fn divisor_svg(c: &WeightedComplex) -> Result<String> {
    let mut doc = Doc::new();
    match c.ambient_dim {
        1 => {
            let dom = domain(c).unwrap_or_else(|| vec![[0.0, 0.0], [1.0, 0.0]]);
            let view = View::fit(&[[dom[0][0], -0.5], [dom[1][0], 0.5]]);
            doc.line(&view, dom[0], dom[1], "#777", 1.0, true);
            for cell in &c.cells {
                let p = pt(&cell.vertices[0]);
                doc.dot(&view, p, 4.0, COLORS[0]);
                doc.text(&view, add(p, [0.0, 0.08], 1.0), &cell.weight.to_string());
            }
        }
        2 => {
            let segs = segments(c, reach(c))?;
            let mut pts: Vec<[f64; 2]> = segs.iter().flat_map(|(a, b, _)| [*a, *b]).collect();
            let dom = domain(c);
            if let Some(d) = &dom {
                pts.extend(d.iter().copied());
            }
            let view = View::fit(&pts);
            if let Some(d) = &dom {
                for k in 0..d.len() {
                    doc.line(&view, d[k], d[(k + 1) % d.len()], "#777", 1.0, true);
                }
            }
            draw_curve(&mut doc, &view, &segs, COLORS[0], true);
        }
        n => return Err(Error::TooHighDimensional(n)),
    }
    Ok(doc.finish())
}

/// Oblique projection for three-dimensional slices.
fn project(v: &[f64]) -> [f64; 2] {
    match v.len() {
        1 => [v[0], 0.0],
        2 => [v[0], v[1]],
        _ => [v[0] + 0.45 * v[2], v[1] + 0.3 * v[2]],
    }
}

/// Pairs of vertices spanning an edge: their common tight inequalities have
/// rank `d - 1`.
fn polytope_edges(
    p: &trop_theta::polyhedra::RationalPolyhedron,
    verts: &[Vec<Rat>],
) -> Vec<(usize, usize)> {
    let d = p.ambient_dim;
    let tight: Vec<Vec<usize>> = verts
        .iter()
        .map(|x| {
            (0..p.ineqs.len())
                .filter(|&k| p.ineqs[k].eval(x) == p.ineqs[k].c)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let common: Vec<Vec<Rat>> = tight[i]
                .iter()
                .filter(|k| tight[j].contains(k))
                .map(|&k| p.ineqs[k].a.clone())
                .chain(p.eqs.iter().map(|h| h.a.clone()))
                .collect();
            if !common.is_empty() && QMatrix::from_rows(common).rank() == d - 1 {
                out.push((i, j));
            }
        }
    }
    out
}

/// The slice `Im φ ∩ {t_k = 0}` as a wireframe with marked vertices.
pub fn slice_svg(sp: &SectionPolyhedron) -> Result<String> {
    let d = sp.slice.ambient_dim;
    if d == 0 || d > 3 {
        return Err(Error::TooHighDimensional(d + 1));
    }
    let VRep { vertices, rays, .. } = &sp.slice_vertices;
    if !rays.is_empty() {
        return Err(Error::NotApplicable("the slice is unbounded".into()));
    }
    let proj: Vec<[f64; 2]> = vertices
        .iter()
        .map(|v| project(&v.iter().map(to_f64).collect::<Vec<_>>()))
        .collect();
    let view = View::fit(&proj);
    let mut doc = Doc::new();
    let edges = if d == 1 {
        if vertices.len() == 2 {
            vec![(0, 1)]
        } else {
            Vec::new()
        }
    } else {
        polytope_edges(&sp.slice, vertices)
    };
    for (i, j) in edges {
        doc.line(&view, proj[i], proj[j], COLORS[0], 1.5, false);
    }
    for p in &proj {
        doc.dot(&view, *p, 3.0, COLORS[1]);
    }
    Ok(doc.finish())
}

/// Two curves and their stable intersection points with multiplicities.
pub fn intersection_svg(
    c1: &WeightedComplex,
    c2: &WeightedComplex,
    report: &IntersectionReport,
) -> Result<String> {
    if c1.ambient_dim != 2 {
        return Err(Error::TooHighDimensional(c1.ambient_dim));
    }
    let r = reach(c1).max(reach(c2));
    let s1 = segments(c1, r)?;
    let s2 = segments(c2, r)?;
    let mut pts: Vec<[f64; 2]> = s1
        .iter()
        .chain(&s2)
        .flat_map(|(a, b, _)| [*a, *b])
        .collect();
    let dom = domain(c1);
    if let Some(d) = &dom {
        pts.extend(d.iter().copied());
    }
    let view = View::fit(&pts);
    let mut doc = Doc::new();
    if let Some(d) = &dom {
        for k in 0..d.len() {
            doc.line(&view, d[k], d[(k + 1) % d.len()], "#777", 1.0, true);
        }
    }
    draw_curve(&mut doc, &view, &s1, COLORS[0], false);
    draw_curve(&mut doc, &view, &s2, COLORS[1], false);
    for p in &report.points {
        let x = pt(&p.point);
        doc.dot(&view, x, 4.0, "black");
        doc.text(
            &view,
            add(x, [0.05, 0.05], 1.0),
            &p.multiplicity.to_string(),
        );
    }
    Ok(doc.finish())
}
