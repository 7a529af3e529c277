//! SVG pictures of planar arrangements.
//!
//! Clipping is done in exact arithmetic and coordinates are rounded to
//! hundredths of a pixel only when printed, so output is byte-stable.

use std::fmt::Write as _;

use hkit_core::arrangement::{ArrangementSpec, WallKind};
use hkit_core::{Int, Rat};
use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

const CANVAS: i64 = 400;
const MARGIN: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlotError {
    #[error("only planar arrangements can be drawn, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("plot window is empty")]
    EmptyWindow,
}

impl PlotError {
    pub fn code(&self) -> &'static str {
        match self {
            PlotError::UnsupportedDimension(_) => "unsupported_dimension",
            PlotError::EmptyWindow => "empty_window",
        }
    }
}

/// Axis-parallel box `[xmin, xmax] × [ymin, ymax]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub xmin: Rat,
    pub xmax: Rat,
    pub ymin: Rat,
    pub ymax: Rat,
}

impl Window {
    /// `[−r, r]²`.
    pub fn square(r: i64) -> Self {
        let r = Rat::from_integer(Int::from(r));
        Window { xmin: -r.clone(), xmax: r.clone(), ymin: -r.clone(), ymax: r }
    }

    fn is_empty(&self) -> bool {
        self.xmin >= self.xmax || self.ymin >= self.ymax
    }

    fn inside(&self, x: &Rat, y: &Rat) -> bool {
        &self.xmin <= x && x <= &self.xmax && &self.ymin <= y && y <= &self.ymax
    }

    fn to_px(&self, x: &Rat, y: &Rat) -> (String, String) {
        let span = Rat::from_integer(Int::from(CANVAS));
        let off = Rat::from_integer(Int::from(MARGIN));
        let px = &off + (x - &self.xmin) / (&self.xmax - &self.xmin) * &span;
        let py = &off + (&self.ymax - y) / (&self.ymax - &self.ymin) * &span;
        (hundredths(&px), hundredths(&py))
    }
}

/// Decimal rendering rounded half up to two places.
fn hundredths(r: &Rat) -> String {
    let scaled = r * Rat::from_integer(Int::from(100)) + Rat::new(Int::one(), Int::from(2));
    let v = scaled.floor().to_integer();
    let neg = v.sign() == Sign::Minus;
    let a = v.abs();
    let hundred = Int::from(100);
    let whole = &a / &hundred;
    let frac = &a % &hundred;
    format!("{}{}.{:0>2}", if neg { "-" } else { "" }, whole, frac.to_string())
}

/// Endpoints of `b₁x + b₂y = λ` inside the window, if it crosses it in a segment.
fn clip(b1: &Rat, b2: &Rat, l: &Rat, w: &Window) -> Option<((Rat, Rat), (Rat, Rat))> {
    let mut pts: Vec<(Rat, Rat)> = Vec::new();
    if !b2.is_zero() {
        for x in [&w.xmin, &w.xmax] {
            let y = (l - b1 * x) / b2;
            pts.push((x.clone(), y));
        }
    }
    if !b1.is_zero() {
        for y in [&w.ymin, &w.ymax] {
            let x = (l - b2 * y) / b1;
            pts.push((x, y.clone()));
        }
    }
    pts.retain(|(x, y)| w.inside(x, y));
    pts.sort();
    pts.dedup();
    if pts.len() < 2 {
        return None;
    }
    let last = pts.pop()?;
    Some((pts.swap_remove(0), last))
}

/// Square window `[−r, r]²` containing every crossing of two walls, with
/// `r ≥ 4`.
pub fn fit_window(arr: &ArrangementSpec) -> Window {
    let mut r = Rat::from_integer(Int::from(4));
    if arr.dim() == 2 {
        let hs: Vec<_> = arr.hyperplanes().collect();
        for (i, h) in hs.iter().enumerate() {
            for g in &hs[i + 1..] {
                let (a, b) = (&h.normal().coords()[0], &h.normal().coords()[1]);
                let (c, d) = (&g.normal().coords()[0], &g.normal().coords()[1]);
                let det = Rat::from_integer(a * d - b * c);
                if det.is_zero() {
                    continue;
                }
                let (l, m) = (h.offset(), g.offset());
                let x = (l * Rat::from_integer(d.clone()) - m * Rat::from_integer(b.clone())) / &det;
                let y = (m * Rat::from_integer(a.clone()) - l * Rat::from_integer(c.clone())) / &det;
                for v in [x.abs(), y.abs()] {
                    let bound = v.ceil() + Rat::one();
                    if bound > r {
                        r = bound;
                    }
                }
            }
        }
    }
    Window { xmin: -r.clone(), xmax: r.clone(), ymin: -r.clone(), ymax: r }
}

/// One line per hyperplane, stroke width proportional to multiplicity,
/// labelled with its normal and multiplicity.
pub fn plot_arrangement(arr: &ArrangementSpec, window: &Window) -> Result<String, PlotError> {
    if arr.dim() != 2 {
        return Err(PlotError::UnsupportedDimension(arr.dim()));
    }
    if window.is_empty() {
        return Err(PlotError::EmptyWindow);
    }
    let size = CANVAS + 2 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let (x0, y0) = window.to_px(&window.xmin, &window.ymax);
    let _ = writeln!(
        out,
        r##"  <rect x="{x0}" y="{y0}" width="{CANVAS}" height="{CANVAS}" fill="white" stroke="#bbbbbb" stroke-width="1"/>"##
    );
    for c in arr.components() {
        let h = &c.hyperplane;
        let b: Vec<Rat> = h.normal().coords().iter().map(|x| Rat::from_integer(x.clone())).collect();
        let Some(((xa, ya), (xb, yb))) = clip(&b[0], &b[1], h.offset(), window) else {
            continue;
        };
        let (pxa, pya) = window.to_px(&xa, &ya);
        let (pxb, pyb) = window.to_px(&xb, &yb);
        let colour = match c.kind {
            WallKind::FirstKind => "#b03030",
            WallKind::SecondKind => "#202020",
            WallKind::Unknown => "#707070",
        };
        let _ = writeln!(
            out,
            r#"  <line x1="{pxa}" y1="{pya}" x2="{pxb}" y2="{pyb}" stroke="{colour}" stroke-width="{}"/>"#,
            c.multiplicity
        );
        let offset = if h.offset().is_zero() { String::new() } else { format!(" = {}", h.offset()) };
        let _ = writeln!(
            out,
            r#"  <text x="{pxb}" y="{pyb}" font-family="monospace" font-size="12" fill="{colour}">b={}{offset} m={}</text>"#,
            h.normal(),
            c.multiplicity
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
