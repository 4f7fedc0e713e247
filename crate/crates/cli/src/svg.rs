use std::fmt::Write as _;

use polyrips_core::Barcode;

pub const WIDTH: f64 = 800.0;
pub const ROW_HEIGHT: f64 = 40.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;

/// One horizontal bar per interval on a fixed 800-pixel axis from 0 to
/// `r_n`. Ephemeral summaries are dotted; open ends are hollow.
pub fn render(b: &Barcode, rn: f64) -> String {
    let rows = b.intervals.len().max(1);
    let height = ROW_HEIGHT * rows as f64;
    let x = |r: f64| LEFT + (r / rn).clamp(0.0, 1.0) * (WIDTH - LEFT - RIGHT);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(s, "<title>P_{} barcode, {} convention</title>", b.n, b.convention.as_str());
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<line x1="{0}" y1="0" x2="{0}" y2="{height}" stroke="#999" stroke-dasharray="4 4"/>"##,
        x(rn)
    );
    for (i, iv) in b.intervals.iter().enumerate() {
        let y = ROW_HEIGHT * i as f64 + ROW_HEIGHT / 2.0;
        let colour = if iv.dim % 2 == 0 { "#c0392b" } else { "#2c3e50" };
        let label = if iv.multiplicity == 1 {
            format!("H{}", iv.dim)
        } else {
            format!("H{} \u{d7}{}", iv.dim, iv.multiplicity)
        };
        let _ = writeln!(
            s,
            r#"<text x="8" y="{}" font-family="sans-serif" font-size="14">{label}</text>"#,
            y + 5.0
        );
        let (x0, x1) = (x(iv.birth), x(iv.death));
        let dash = if iv.ephemeral { r#" stroke-dasharray="2 5""# } else { "" };
        if x1 - x0 > 0.5 {
            let _ = writeln!(
                s,
                r#"<line x1="{x0:.2}" y1="{y}" x2="{x1:.2}" y2="{y}" stroke="{colour}" stroke-width="4"{dash}/>"#
            );
        }
        for (px, closed) in [(x0, iv.birth_closed), (x1, iv.death_closed)] {
            let fill = if closed { colour } else { "white" };
            let _ = writeln!(
                s,
                r#"<circle cx="{px:.2}" cy="{y}" r="4" fill="{fill}" stroke="{colour}" stroke-width="1.5"{dash}/>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyrips_core::predictor::barcode;
    use polyrips_core::{r_n, Convention};

    #[test]
    fn canvas_and_rows() {
        let b = barcode(15, Convention::Strict).unwrap();
        let svg = render(&b, r_n(15).unwrap());
        let h = ROW_HEIGHT * b.intervals.len() as f64;
        assert!(svg.starts_with(&format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="{h}""#)));
        assert_eq!(svg.matches("<text").count(), b.intervals.len());
        assert!(!svg.contains("stroke-dasharray=\"2 5\""));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn ephemeral_bars_are_dotted() {
        let b = barcode(6, Convention::Closed).unwrap();
        let svg = render(&b, r_n(6).unwrap());
        assert!(svg.contains("stroke-dasharray=\"2 5\""));
        assert!(svg.contains("H2 \u{d7}4"));
    }
}
