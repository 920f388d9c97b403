//! Deterministic SVG chart of a planar multi-polytope: supporting lines and
//! chambers labeled by Duistermaat-Heckman values.

use std::collections::BTreeMap;
use std::fmt::Write;

use multifan_core::exactmath::{dot, from_f64, sign, to_f64, QVector, Rational};
use multifan_core::polytope::MultiPolytope;
use multifan_core::{Error, Result};

pub const CANVAS: u32 = 800;
const GRID: usize = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    pub witness: (f64, f64),
    pub value: Rational,
    pub samples: usize,
}

/// Chambers met by a perturbed grid over the view box, keyed by the sign
/// pattern of the supporting hyperplanes.
pub fn chambers(p: &MultiPolytope, v: &[Rational], view: [f64; 4]) -> Result<Vec<Chamber>> {
    let [x0, y0, w, h] = view;
    let eval = p.dh_evaluator(v)?;
    let live = p.fan.complex().vertices();
    let mut groups: BTreeMap<Vec<i32>, (f64, f64, usize)> = BTreeMap::new();
    for i in 0..GRID {
        for j in 0..GRID {
            // off-center sampling keeps grid points off rational lines
            let x = x0 + w * (i as f64 + 0.5 + 0.0137) / GRID as f64;
            let y = y0 + h * (j as f64 + 0.5 + 0.0071) / GRID as f64;
            let u = [from_f64(x), from_f64(y)];
            let key: Vec<i32> = live
                .iter()
                .map(|&k| sign(&(dot(&u, &p.fan.lambda()[k]) - &p.c[k])))
                .collect();
            if key.contains(&0) {
                continue;
            }
            let e = groups.entry(key).or_insert((0.0, 0.0, 0));
            e.0 += x;
            e.1 += y;
            e.2 += 1;
        }
    }
    let mut out = Vec::new();
    for (_, (sx, sy, k)) in groups {
        let c = (sx / k as f64, sy / k as f64);
        let u: QVector = vec![from_f64(c.0), from_f64(c.1)];
        match eval.eval(&u) {
            Ok(d) => out.push(Chamber {
                witness: c,
                value: d.value,
                samples: k,
            }),
            Err(Error::OnHyperplane(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// View box `[x, y, w, h]`: the vertex bounding box scaled by 1.2 about its
/// center (a unit box if degenerate).
pub fn view_box(p: &MultiPolytope) -> Result<[f64; 4]> {
    let (lo, hi) = p.bounding_box()?;
    let (lx, ly, hx, hy) = (
        to_f64(&lo[0]),
        to_f64(&lo[1]),
        to_f64(&hi[0]),
        to_f64(&hi[1]),
    );
    let w = ((hx - lx) * 1.2).max(1.0);
    let h = ((hy - ly) * 1.2).max(1.0);
    let cx = (lx + hx) / 2.0;
    let cy = (ly + hy) / 2.0;
    Ok([cx - w / 2.0, cy - h / 2.0, w, h])
}

fn clip_line(a: f64, b: f64, c: f64, view: [f64; 4]) -> Option<((f64, f64), (f64, f64))> {
    // a x + b y = c against the box
    let [x0, y0, w, h] = view;
    let (x1, y1) = (x0 + w, y0 + h);
    let mut pts = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = (c - a * x) / b;
            if y >= y0 && y <= y1 {
                pts.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = (c - b * y) / a;
            if x >= x0 && x <= x1 {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    pts.dedup();
    if pts.len() < 2 {
        return None;
    }
    Some((pts[0], pts[pts.len() - 1]))
}

pub fn render(p: &MultiPolytope, v: &[Rational]) -> Result<String> {
    if p.fan.n() != 2 {
        return Err(Error::Dimension("plots need n = 2".into()));
    }
    if p.fan.is_zero() {
        return Err(Error::Precondition("empty fan has nothing to plot".into()));
    }
    let view = view_box(p)?;
    let [x0, y0, w, h] = view;
    let stroke = w.max(h) / 400.0;
    let font = w.max(h) / 30.0;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="{:.3} {:.3} {:.3} {:.3}">"#,
        x0,
        -(y0 + h),
        w,
        h
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="white"/>"#,
        x0,
        -(y0 + h),
        w,
        h
    )
    .unwrap();
    for i in p.fan.complex().vertices() {
        let l = &p.fan.lambda()[i];
        if let Some(((ax, ay), (bx, by))) =
            clip_line(to_f64(&l[0]), to_f64(&l[1]), to_f64(&p.c[i]), view)
        {
            writeln!(
                s,
                r#"<line data-vertex="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="{:.3}"/>"#,
                i + 1,
                ax,
                -ay,
                bx,
                -by,
                stroke
            )
            .unwrap();
        }
    }
    for (_, u) in p.vertices()? {
        writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="black"/>"#,
            to_f64(&u[0]),
            -to_f64(&u[1]),
            stroke * 3.0
        )
        .unwrap();
    }
    for ch in chambers(p, v, view)? {
        writeln!(
            s,
            r#"<text class="dh" x="{:.3}" y="{:.3}" font-size="{:.3}" text-anchor="middle">{}</text>"#,
            ch.witness.0,
            -ch.witness.1,
            font,
            ch.value
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
