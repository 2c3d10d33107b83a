//! Minimal SVG 1.1 output for the three scenes.

use std::fmt::Write;

use parabolic_core::horocycle::Circle;
use parabolic_core::Complex64;

/// Something to draw.
#[derive(Debug, Clone)]
pub enum Scene {
    /// `L∞` through `alpha` along `direction`, plus horocycle circles.
    Horocycles {
        alpha: Complex64,
        direction: Complex64,
        circles: Vec<Circle<f64>>,
    },
    /// Finite orbit points with their indices.
    Orbit {
        alpha: Option<Complex64>,
        points: Vec<(i64, Complex64)>,
    },
    /// `|a_n - b_n|` against `n`, with a horizontal rule at `threshold`.
    Separation { values: Vec<(usize, f64)>, threshold: f64 },
}

const SIZE: f64 = 800.0;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Bounds {
    fn empty() -> Self {
        Self {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn include(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.max_x = self.max_x.max(x);
        self.min_y = self.min_y.min(y);
        self.max_y = self.max_y.max(y);
    }

    fn is_empty(&self) -> bool {
        self.min_x > self.max_x
    }

    /// Pads each side by `frac` of the larger extent; degenerate boxes grow
    /// to unit size.
    fn padded(self, frac: f64) -> Self {
        if self.is_empty() {
            return Self {
                min_x: -1.0,
                max_x: 1.0,
                min_y: -1.0,
                max_y: 1.0,
            };
        }
        let span = (self.max_x - self.min_x).max(self.max_y - self.min_y);
        let pad = if span > 0.0 { span * frac } else { 1.0 };
        Self {
            min_x: self.min_x - pad,
            max_x: self.max_x + pad,
            min_y: self.min_y - pad,
            max_y: self.max_y + pad,
        }
    }

    fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

fn open(out: &mut String, b: &Bounds) {
    // y is flipped by negating coordinates, so the view box spans -max_y..-min_y
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(SIZE),
        num(SIZE * b.height() / b.width()),
        num(b.min_x),
        num(-b.max_y),
        num(b.width()),
        num(b.height())
    );
}

fn line(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), stroke: &str, width: f64, dash: Option<f64>) {
    let dash = dash.map_or(String::new(), |d| {
        format!(r#" stroke-dasharray="{} {}""#, num(d), num(d))
    });
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"{dash}/>"#,
        num(x1),
        num(-y1),
        num(x2),
        num(-y2),
        num(width)
    );
}

fn axes(out: &mut String, b: &Bounds, width: f64) {
    if b.min_y <= 0.0 && 0.0 <= b.max_y {
        line(out, (b.min_x, 0.0), (b.max_x, 0.0), "#999999", width, None);
    }
    if b.min_x <= 0.0 && 0.0 <= b.max_x {
        line(out, (0.0, b.min_y), (0.0, b.max_y), "#999999", width, None);
    }
}

fn marker(out: &mut String, z: Complex64, r: f64, fill: &str) {
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
        num(z.re),
        num(-z.im),
        num(r)
    );
}

fn horocycles(alpha: Complex64, direction: Complex64, circles: &[Circle<f64>]) -> String {
    let mut b = Bounds::empty();
    b.include(alpha.re, alpha.im);
    for k in circles {
        b.include(k.center.re - k.radius, k.center.im - k.radius);
        b.include(k.center.re + k.radius, k.center.im + k.radius);
    }
    let b = b.padded(0.1);
    let w = 0.003 * b.width().max(b.height());
    let reach = 2.0 * b.width().hypot(b.height());

    let mut out = String::new();
    open(&mut out, &b);
    let far = |t: f64| {
        let z = alpha + direction * t;
        (z.re, z.im)
    };
    line(&mut out, far(-reach), far(reach), "#000000", w, None);
    let normal = direction * Complex64::new(0.0, 1.0);
    let far_n = |t: f64| {
        let z = alpha + normal * t;
        (z.re, z.im)
    };
    line(&mut out, far_n(-reach), far_n(reach), "#999999", w, Some(4.0 * w));
    for k in circles {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#1f5fbf" stroke-width="{}"/>"##,
            num(k.center.re),
            num(-k.center.im),
            num(k.radius),
            num(w)
        );
    }
    marker(&mut out, alpha, 3.0 * w, "#c0392b");
    out.push_str("</svg>\n");
    out
}

fn orbit(alpha: Option<Complex64>, points: &[(i64, Complex64)]) -> String {
    let mut b = Bounds::empty();
    for (_, z) in points {
        b.include(z.re, z.im);
    }
    if let (Some(a), false) = (alpha, points.is_empty()) {
        b.include(a.re, a.im);
    }
    let b = b.padded(0.1);
    let w = 0.002 * b.width().max(b.height());

    let mut out = String::new();
    open(&mut out, &b);
    axes(&mut out, &b, w);
    if !points.is_empty() {
        if let Some(a) = alpha {
            marker(&mut out, a, 4.0 * w, "#c0392b");
        }
    }
    let font = 12.0 * w;
    for (n, z) in points {
        marker(&mut out, *z, 2.5 * w, "#1f5fbf");
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" font-family="sans-serif">{n}</text>"#,
            num(z.re + 3.0 * w),
            num(-z.im - 3.0 * w),
            num(font)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn separation(values: &[(usize, f64)], threshold: f64) -> String {
    let max_n = values.iter().map(|v| v.0).max().unwrap_or(1).max(1) as f64;
    let max_y = values
        .iter()
        .map(|v| v.1)
        .filter(|y| y.is_finite())
        .fold(threshold, f64::max);
    let b = Bounds {
        min_x: 0.0,
        max_x: max_n,
        min_y: 0.0,
        max_y: max_y * 1.1,
    };
    // plot in pixel space: 800 x 400 with a 50px frame
    let (pw, ph, m) = (SIZE, SIZE / 2.0, 50.0);
    let px = |n: f64| m + (pw - 2.0 * m) * n / b.max_x;
    let py = |y: f64| ph - m - (ph - 2.0 * m) * y / b.max_y;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(pw),
        num(ph),
        num(pw),
        num(ph)
    );
    let mut axis = |x1: f64, y1: f64, x2: f64, y2: f64, extra: &str| {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000" stroke-width="1"{extra}/>"##,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    };
    axis(px(0.0), py(0.0), px(b.max_x), py(0.0), "");
    axis(px(0.0), py(0.0), px(0.0), py(b.max_y), "");
    axis(
        px(0.0),
        py(threshold),
        px(b.max_x),
        py(threshold),
        r#" stroke-dasharray="6 4" class="threshold""#,
    );

    // one polyline per run of finite values
    let mut runs: Vec<Vec<(f64, f64)>> = vec![vec![]];
    for &(n, y) in values {
        if y.is_finite() {
            runs.last_mut().unwrap().push((px(n as f64), py(y)));
        } else if !runs.last().unwrap().is_empty() {
            runs.push(vec![]);
        }
    }
    for run in runs.iter().filter(|r| !r.is_empty()) {
        let pts: Vec<String> = run.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#1f5fbf" stroke-width="1.5"/>"##,
            pts.join(" ")
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" font-family="sans-serif">{}</text>"#,
        num(px(b.max_x) - 30.0),
        num(py(threshold) - 4.0),
        threshold
    );
    out.push_str("</svg>\n");
    out
}

pub fn render_svg(scene: &Scene) -> String {
    match scene {
        Scene::Horocycles {
            alpha,
            direction,
            circles,
        } => horocycles(*alpha, *direction, circles),
        Scene::Orbit { alpha, points } => orbit(*alpha, points),
        Scene::Separation { values, threshold } => separation(values, *threshold),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-2.5), "-2.500000");
    }

    #[test]
    fn empty_orbit_has_axes_only() {
        let svg = render_svg(&Scene::Orbit {
            alpha: None,
            points: vec![],
        });
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(!svg.contains("<circle"));
        assert!(svg.contains(r#"viewBox="-1.000000 -1.000000 2.000000 2.000000""#));
    }

    #[test]
    fn horocycle_margin() {
        let circles = vec![Circle {
            center: c(0.0, 1.0),
            radius: 1.0,
        }];
        let svg = render_svg(&Scene::Horocycles {
            alpha: c(0.0, 0.0),
            direction: c(1.0, 0.0),
            circles,
        });
        // box [-1,1]x[0,2] padded by 0.2
        assert!(svg.contains(r#"viewBox="-1.200000 -2.200000 2.400000 2.400000""#));
    }

    #[test]
    fn separation_skips_infinite_values() {
        let svg = render_svg(&Scene::Separation {
            values: vec![(0, 0.0), (1, f64::INFINITY), (2, 0.5), (3, 2.0)],
            threshold: 1.0,
        });
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
