//! Planar SVG rendering of a scenario and its path.

use std::fmt::Write as _;

use sphereworld::{PiecewisePath64, SphereId};

use crate::scenario::{Engine, Prepared};

const SIZE: f64 = 800.0;
const PALETTE: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RenderError {
    NotPlanar(usize),
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::NotPlanar(n) => write!(f, "rendering needs n = 2, scenario has n = {n}"),
        }
    }
}

impl std::error::Error for RenderError {}

/// Maps world coordinates into the picture with `y` pointing up.
struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        SIZE / 2.0 + (x - self.cx) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        SIZE / 2.0 - (y - self.cy) * self.scale
    }

    fn len(&self, r: f64) -> f64 {
        r * self.scale
    }
}

fn bounds(prepared: &Prepared, path: Option<&PiecewisePath64>) -> (f64, f64, f64) {
    if let Engine::World(p) = &prepared.engine {
        let r0 = p.world().work_radius();
        return (0.0, 0.0, 1.05 * r0);
    }
    let mut pts: Vec<[f64; 2]> = Vec::new();
    if let Engine::Euclidean(p) = &prepared.engine {
        pts.extend(p.punctures().iter().map(|q| [q[0], q[1]]));
    }
    for c in [&prepared.start, &prepared.goal] {
        pts.extend(c.points().iter().map(|q| [q[0], q[1]]));
    }
    if let Some(path) = path {
        pts.extend(path.samples().flat_map(|c| c.points().iter().map(|q| [q[0], q[1]])));
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &pts {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let half = ((hi[0] - lo[0]).max(hi[1] - lo[1]) / 2.0).max(1.0) * 1.1;
    ((lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0, half)
}

fn circle(out: &mut String, f: &Frame, x: f64, y: f64, r: f64, style: &str) {
    let _ = writeln!(
        out,
        r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" {style}/>"#,
        f.x(x),
        f.y(y),
        f.len(r)
    );
}

/// Workspace, obstacles, collar shells, punctures and one polyline per robot.
/// The output depends only on the inputs.
pub fn render_svg(prepared: &Prepared, path: Option<&PiecewisePath64>) -> Result<String, RenderError> {
    let n = prepared.engine.dim();
    if n != 2 {
        return Err(RenderError::NotPlanar(n));
    }
    let (cx, cy, half) = bounds(prepared, path);
    let f = Frame { cx, cy, scale: SIZE / (2.0 * half) };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    match &prepared.engine {
        Engine::World(p) => {
            let world = p.world();
            let atlas = p.atlas();
            let r0 = world.work_radius();
            circle(&mut out, &f, 0.0, 0.0, r0, r##"fill="#f7f7f7" stroke="#000000" stroke-width="2""##);
            let dashed = r##"fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="6 4""##;
            circle(&mut out, &f, 0.0, 0.0, r0 - atlas.width(SphereId::Outer), dashed);
            for (i, ob) in world.obstacles().iter().enumerate() {
                let (x, y) = (ob.center[0], ob.center[1]);
                circle(&mut out, &f, x, y, ob.radius + atlas.width(SphereId::Obstacle(i)), dashed);
                circle(&mut out, &f, x, y, ob.radius, r##"fill="#bbbbbb" stroke="#000000" stroke-width="1.5""##);
                // the obstacle collapses onto its center, the puncture's preimage
                circle(&mut out, &f, x, y, 3.0 / f.scale, r##"fill="#000000""##);
            }
        }
        Engine::Euclidean(p) => {
            for q in p.punctures() {
                let (x, y) = (f.x(q[0]), f.y(q[1]));
                let _ = writeln!(
                    out,
                    r##"<path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="#000000" stroke-width="2"/>"##,
                    x - 5.0, y - 5.0, x + 5.0, y + 5.0, x - 5.0, y + 5.0, x + 5.0, y - 5.0
                );
            }
        }
    }

    for robot in 0..prepared.start.k() {
        let color = PALETTE[robot % PALETTE.len()];
        if let Some(path) = path {
            let mut points = String::new();
            let mut last: Option<(String, String)> = None;
            for c in path.samples() {
                let q = c.point(robot);
                let xy = (format!("{:.3}", f.x(q[0])), format!("{:.3}", f.y(q[1])));
                // joins repeat samples; skip exact duplicates
                if last.as_ref() != Some(&xy) {
                    if !points.is_empty() {
                        points.push(' ');
                    }
                    let _ = write!(points, "{},{}", xy.0, xy.1);
                    last = Some(xy);
                }
            }
            let _ = writeln!(
                out,
                r#"<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>"#
            );
        }
        let s = prepared.start.point(robot);
        let g = prepared.goal.point(robot);
        circle(&mut out, &f, s[0], s[1], 5.0 / f.scale, &format!(r#"fill="{color}""#));
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="10" height="10" fill="none" stroke="{color}" stroke-width="2"/>"#,
            f.x(g[0]) - 5.0,
            f.y(g[1]) - 5.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
