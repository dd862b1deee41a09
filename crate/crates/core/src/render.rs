//! Deterministic SVG drawings of arc systems on the flat square tori.
//!
//! Every arc is developed into the plane and drawn as one polyline that
//! starts in the fundamental square; the triangulation is tiled underneath
//! wherever an arc wanders.

use std::fmt::Write;

use crate::arc::ArcClass;
use crate::error::{Error, Result};
use crate::intersection::{is_side, ArcPath};
use crate::layout::{place_chords, StrandRanks};
use crate::triangulation::{next, Corner, IdealTriangulation, Side};

type P = (f64, f64);

/// Pixels per unit of the square.
const SCALE: f64 = 160.0;
const MARGIN: f64 = 0.15;
const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#393b79", "#843c39",
];

/// Corner positions of each fixture triangle in the unit square.
pub fn planar_corners(t: &IdealTriangulation) -> Result<Vec<[P; 3]>> {
    let c = (0.5, 0.5);
    match t.name() {
        "torus-1-marked" => Ok(vec![[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], [(0.0, 0.0), (1.0, 1.0), (0.0, 1.0)]]),
        "torus-2-marked" => Ok(vec![
            [(0.0, 0.0), (1.0, 0.0), c],
            [(1.0, 0.0), (1.0, 1.0), c],
            [(1.0, 1.0), (0.0, 1.0), c],
            [(0.0, 1.0), (0.0, 0.0), c],
        ]),
        other => Err(Error::Invalid(format!("no planar picture for {other}"))),
    }
}

fn lerp(a: P, b: P, s: f64) -> P {
    (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s)
}

fn add(a: P, b: P) -> P {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

/// Translation placing the triangle of `b` next to the triangle of `a`, glued along `a`.
fn shift(corners: &[[P; 3]], a: Side, b: Side) -> P {
    sub(corners[a.triangle][a.side], corners[b.triangle][next(b.side)])
}

fn intersect(p1: P, p2: P, q1: P, q2: P) -> P {
    let d = sub(p2, p1);
    let e = sub(q2, q1);
    let den = d.0 * e.1 - d.1 * e.0;
    let w = sub(q1, p1);
    let s = (w.0 * e.1 - w.1 * e.0) / den;
    lerp(p1, p2, s)
}

fn num(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    // avoid printing negative zero
    format!("{:.2}", if r == 0.0 { 0.0 } else { r })
}

fn pt(p: P) -> String {
    format!("{},{}", num(p.0 * SCALE), num(-p.1 * SCALE))
}

/// SVG picture of `arcs` on `t`. Crossings are marked with small circles.
pub fn render_svg(t: &IdealTriangulation, arcs: &[ArcClass]) -> Result<String> {
    let corners = planar_corners(t)?;
    let paths: Vec<ArcPath> = arcs.iter().map(|a| ArcPath::new(t, a)).collect();
    let ranks = StrandRanks::new(t, arcs);
    let view: Vec<&[u32]> = (0..arcs.len()).map(|i| ranks.of(i)).collect();
    let placed = place_chords(t, &paths, &view);

    let position = |tri: usize, k: usize| -> P {
        let (port, _) = placed.keys[tri][k];
        if !is_side(port) {
            return corners[tri][port as usize / 2];
        }
        let s = (port as usize - 1) / 2;
        let on_side: Vec<usize> = (0..placed.keys[tri].len()).filter(|&i| placed.keys[tri][i].0 == port).collect();
        let m = on_side.iter().position(|&i| i == k).expect("strand on its side");
        lerp(corners[tri][s], corners[tri][next(s)], (m + 1) as f64 / (on_side.len() + 1) as f64)
    };

    // develop each arc piece by piece
    let mut lines: Vec<Vec<P>> = vec![Vec::new(); arcs.len()];
    let mut chords_of: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); arcs.len()];
    for (tri, list) in placed.chords.iter().enumerate() {
        for (x, c) in list.iter().enumerate() {
            chords_of[c.arc].push((c.piece, tri, x));
        }
    }
    for (i, pieces) in chords_of.iter_mut().enumerate() {
        pieces.sort_unstable();
        let mut offset = (0.0, 0.0);
        for (k, &(_, tri, x)) in pieces.iter().enumerate() {
            let c = &placed.chords[tri][x];
            if k == 0 {
                lines[i].push(position(tri, c.from));
            } else {
                let prev = paths[i].tris[k - 1] as usize;
                let s = (paths[i].exit[k - 1] as usize - 1) / 2;
                let out = Side::new(prev, s);
                let into = t.neighbor(out).expect("crossed side is glued");
                offset = add(offset, shift(&corners, out, into));
            }
            lines[i].push(add(offset, position(tri, c.to)));
        }
    }

    let mut crossings: Vec<P> = Vec::new();
    for (tri, list) in placed.chords.iter().enumerate() {
        let n = placed.keys[tri].len();
        let between = |x: usize, a: usize, b: usize| {
            let off = (x + n - a) % n;
            off != 0 && off < (b + n - a) % n
        };
        for (x, a) in list.iter().enumerate() {
            for b in &list[x + 1..] {
                let shared = [b.from, b.to].iter().any(|&e| e == a.from || e == a.to);
                if !shared && between(b.from, a.from, a.to) != between(b.to, a.from, a.to) {
                    let p = |k| position(tri, k);
                    crossings.push(intersect(p(a.from), p(a.to), p(b.from), p(b.to)));
                }
            }
        }
    }

    let (mut lo, mut hi) = ((0.0f64, 0.0f64), (1.0f64, 1.0f64));
    for p in lines.iter().flatten() {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    let tiles_x = (lo.0.floor() as i64)..(hi.0.ceil() as i64);
    let tiles_y = (lo.1.floor() as i64)..(hi.1.ceil() as i64);
    let (x0, y0) = (tiles_x.start as f64 - MARGIN, tiles_y.start as f64 - MARGIN);
    let (x1, y1) = (tiles_x.end as f64 + MARGIN, tiles_y.end as f64 + MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(x0 * SCALE),
        num(-y1 * SCALE),
        num((x1 - x0) * SCALE),
        num((y1 - y0) * SCALE),
        num((x1 - x0) * SCALE),
        num((y1 - y0) * SCALE)
    );
    let _ = writeln!(svg, r#"<title>{} with {} arcs</title>"#, t.name(), arcs.len());
    let _ = writeln!(svg, r##"<g id="skeleton" fill="none" stroke="#b0b0b0" stroke-width="1">"##);
    for i in tiles_x.clone() {
        for j in tiles_y.clone() {
            let home = i == 0 && j == 0;
            for tri in &corners {
                let pts: Vec<String> = tri.iter().map(|&c| pt(add(c, (i as f64, j as f64)))).collect();
                let style = if home { r##" stroke="#606060" stroke-width="1.5""## } else { "" };
                let _ = writeln!(svg, r#"<polygon points="{}"{}/>"#, pts.join(" "), style);
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<g id="arcs" fill="none" stroke-width="2.5" stroke-linejoin="round">"#);
    for (i, line) in lines.iter().enumerate() {
        let pts: Vec<String> = line.iter().map(|&p| pt(p)).collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="arc" data-arc="{i}" stroke="{}" points="{}"/>"#,
            PALETTE[i % PALETTE.len()],
            pts.join(" ")
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g id="crossings" fill="#ffffff" stroke="#000000" stroke-width="1">"##);
    for p in &crossings {
        let (x, y) = (num(p.0 * SCALE), num(-p.1 * SCALE));
        let _ = writeln!(svg, r#"<circle class="crossing" cx="{x}" cy="{y}" r="3.5"/>"#);
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g id="marked" fill="#000000">"##);
    for point in 0..t.points().len() {
        let c = (0..t.triangle_count())
            .flat_map(|tri| (0..3).map(move |k| Corner::new(tri, k)))
            .find(|&c| t.point_at(c) == point)
            .expect("every marked point is a vertex");
        let (x, y) = (num(corners[c.triangle][c.corner].0 * SCALE), num(-corners[c.triangle][c.corner].1 * SCALE));
        let _ = writeln!(svg, r#"<circle class="marked" data-point="{point}" cx="{x}" cy="{y}" r="6"/>"#);
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::construct_hexagon_system;
    use crate::triangulation::{standard_fixture, FIXTURE_NAMES};

    #[test]
    fn gluings_are_translations() {
        for name in FIXTURE_NAMES {
            let t = standard_fixture(name).unwrap();
            let corners = planar_corners(&t).unwrap();
            for e in t.edges() {
                let a = e.first;
                let b = t.neighbor(a).unwrap();
                let d = shift(&corners, a, b);
                let moved = add(corners[b.triangle][b.side], d);
                assert_eq!(moved, corners[a.triangle][next(a.side)], "{name}");
                assert!(d.0.fract() == 0.0 && d.1.fract() == 0.0);
            }
        }
    }

    #[test]
    fn hexagon_picture() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let s = construct_hexagon_system(&t).unwrap();
        let svg = render_svg(&t, s.members()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 12);
        assert_eq!(svg.matches(r#"class="marked""#).count(), 2);
        assert_eq!(svg.matches(r#"class="crossing""#).count(), s.total_crossings());
        assert_eq!(svg, render_svg(&t, s.members()).unwrap());
    }

    #[test]
    fn empty_picture_is_the_skeleton() {
        let t = standard_fixture("torus-2-marked").unwrap();
        let svg = render_svg(&t, &[]).unwrap();
        assert!(!svg.contains("<polyline"));
        assert_eq!(svg.matches("<polygon").count(), 4);
        assert!(svg.ends_with("</svg>\n"));
    }
}
