//! SVG drawings of arc diagrams and cluster quivers over a window.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::arcs::{Arc, ArcFamily, Window};
use crate::quiver::Quiver;

const UNIT: i64 = 40;
const MARGIN: i64 = 30;

pub enum Subject<'a> {
    Family(&'a ArcFamily),
    Quiver(&'a Quiver<Arc>),
}

pub fn render_svg(subject: Subject<'_>, w: Window) -> String {
    match subject {
        Subject::Family(f) => render_family(f, w, &BTreeSet::new()),
        Subject::Quiver(q) => render_quiver(q, w),
    }
}

struct Canvas {
    lo: i64,
    baseline: i64,
    out: String,
}

impl Canvas {
    fn new(w: Window) -> Self {
        let span = w.hi() - w.lo();
        let width = span * UNIT + 2 * MARGIN;
        let baseline = span * UNIT / 2 + 2 * MARGIN;
        let height = baseline + 2 * MARGIN;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        out.push_str(concat!(
            "<defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
            "<path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
            "<style>.arc{fill:none;stroke:#234;stroke-width:1.5}.tick{stroke:#555}.axis{stroke:#555}",
            ".label{font:11px sans-serif;text-anchor:middle}.fountain{fill:#c33}",
            ".vertex{fill:#236}.edge{stroke:#236;marker-end:url(#head)}",
            "path[data-highlight]{stroke:#c60;stroke-width:3}</style>\n",
        ));
        let mut canvas = Canvas {
            lo: w.lo(),
            baseline,
            out,
        };
        canvas.axis(w);
        canvas
    }

    fn x(&self, v: i64) -> i64 {
        MARGIN + (v - self.lo) * UNIT
    }

    fn axis(&mut self, w: Window) {
        let (y, x0, x1) = (self.baseline, self.x(w.lo()), self.x(w.hi()));
        let _ = writeln!(
            self.out,
            r#"<line class="axis" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}"/>"#
        );
        for v in w.lo()..=w.hi() {
            let x = self.x(v);
            let _ = writeln!(
                self.out,
                r#"<line class="tick" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
                y - 4,
                y + 4
            );
            let _ = writeln!(
                self.out,
                r#"<text class="label" x="{x}" y="{}">{v}</text>"#,
                y + 18
            );
        }
    }

    /// Top of the semicircle over `a`.
    fn apex(&self, a: Arc) -> (i64, i64) {
        let (x0, x1) = (self.x(a.left()), self.x(a.right()));
        ((x0 + x1) / 2, self.baseline - (x1 - x0) / 2)
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// Arc diagram with fountain markers; `highlight` arcs get a
/// `data-highlight` attribute.
pub fn render_family(family: &ArcFamily, w: Window, highlight: &BTreeSet<Arc>) -> String {
    let mut c = Canvas::new(w);
    for a in family.arcs_in_window(w) {
        let (x0, x1) = (c.x(a.left()), c.x(a.right()));
        let r = (x1 - x0) / 2;
        let mark = if highlight.contains(&a) {
            " data-highlight=\"true\""
        } else {
            ""
        };
        let _ = writeln!(
            c.out,
            r#"<path class="arc" data-arc="{},{}"{mark} d="M{x0},{y} A{r},{r} 0 0 1 {x1},{y}"/>"#,
            a.left(),
            a.right(),
            y = c.baseline
        );
    }
    let classes = family.classify();
    let markers = [
        ("both", &classes.fountains),
        ("left", &classes.left_fountains),
        ("right", &classes.right_fountains),
    ];
    for (side, vertices) in markers {
        for &v in vertices.iter().filter(|&&v| w.contains(v)) {
            if side != "both" && classes.fountains.contains(&v) {
                continue;
            }
            let _ = writeln!(
                c.out,
                r#"<circle class="fountain" data-side="{side}" cx="{}" cy="{}" r="5"/>"#,
                c.x(v),
                c.baseline
            );
        }
    }
    c.finish()
}

/// Vertices at arc apexes, one directed edge per arrow.
pub fn render_quiver(q: &Quiver<Arc>, w: Window) -> String {
    let mut c = Canvas::new(w);
    for (a, b, n) in q.arrows() {
        let ((x0, y0), (x1, y1)) = (c.apex(*a), c.apex(*b));
        for _ in 0..n {
            let _ = writeln!(
                c.out,
                r#"<line class="edge" data-from="{},{}" data-to="{},{}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#,
                a.left(),
                a.right(),
                b.left(),
                b.right()
            );
        }
    }
    for &v in q.vertices() {
        let (x, y) = c.apex(v);
        let _ = writeln!(
            c.out,
            r#"<circle class="vertex" data-arc="{},{}" cx="{x}" cy="{y}" r="4"/>"#,
            v.left(),
            v.right()
        );
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::canonical::{fountain, leapfrog};
    use crate::quiver::cluster_quiver;

    fn count(doc: &str, class: &str) -> usize {
        doc.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn fountain_counts() {
        let w = Window::new(-3, 3).unwrap();
        let doc = render_svg(Subject::Family(&fountain()), w);
        assert_eq!(count(&doc, "arc"), 4);
        assert_eq!(count(&doc, "tick"), 7);
        assert_eq!(count(&doc, "fountain"), 1);
        assert!(doc.starts_with("<svg") && doc.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_counts() {
        let doc = render_svg(
            Subject::Family(&ArcFamily::empty()),
            Window::new(0, 2).unwrap(),
        );
        assert_eq!(count(&doc, "arc"), 0);
        assert_eq!(count(&doc, "tick"), 3);
    }

    #[test]
    fn leapfrog_quiver_counts() {
        let w = Window::new(-4, 4).unwrap();
        let q = cluster_quiver(&leapfrog(), w);
        let doc = render_svg(Subject::Quiver(&q), w);
        assert_eq!(count(&doc, "vertex"), 7);
        assert_eq!(count(&doc, "edge"), 6);
        assert_eq!(count(&doc, "tick"), 9);
    }

    #[test]
    fn highlight_marks_one_path() {
        let w = Window::new(-3, 3).unwrap();
        let hl = BTreeSet::from([Arc::new(0, 2).unwrap()]);
        let doc = render_family(&fountain(), w, &hl);
        assert_eq!(doc.matches("data-highlight").count(), 2);
        assert_eq!(count(&doc, "arc"), 4);
    }

    #[test]
    fn well_formed_tags() {
        let doc = render_svg(Subject::Family(&leapfrog()), Window::new(-4, 4).unwrap());
        assert_eq!(doc.matches('<').count(), doc.matches('>').count());
        let opened = doc.matches("<svg").count();
        assert_eq!(opened, doc.matches("</svg>").count());
    }
}
