//! Which types `(n, s)` a genus-2 Lefschetz fibration over the sphere can have.
//!
//! Three constraints are checked: `n + 12s ≡ 0 (mod 10)`, `n + 7s ≥ 20` and
//! `2n − s ≥ 5`. The last one comes from `b2− ≥ s + 1` combined with
//! `b1 ≤ 2`, which forces `b1 ≥ 4 − 2(2n − s)/5`.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::signature_from_type;
use crate::monodromy::NSType;

/// Types marked as realized by an explicit monodromy in the published plot of
/// the `n ≤ 20, s ≤ 15` window (transcribed data).
pub const PLOTTED_KNOWN: [(usize, usize); 20] = [
    (4, 3),
    (6, 2),
    (8, 6),
    (10, 5),
    (10, 10),
    (12, 4),
    (12, 9),
    (14, 3),
    (14, 8),
    (14, 13),
    (16, 2),
    (16, 7),
    (16, 12),
    (18, 1),
    (18, 6),
    (18, 11),
    (20, 0),
    (20, 5),
    (20, 10),
    (20, 15),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CatalogStatus {
    Known,
    Unknown,
    Inadmissible,
}

impl CatalogStatus {
    pub fn name(self) -> &'static str {
        match self {
            CatalogStatus::Known => "known",
            CatalogStatus::Unknown => "unknown",
            CatalogStatus::Inadmissible => "inadmissible",
        }
    }
}

impl fmt::Display for CatalogStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NSReport {
    pub n: usize,
    pub s: usize,
    pub mod10_ok: bool,
    pub bk_ok: bool,
    pub sharp_ok: bool,
    pub b1_forced: Option<i64>,
    pub b2_plus: Option<i64>,
    pub status: CatalogStatus,
}

impl NSReport {
    pub fn admissible(&self) -> bool {
        self.mod10_ok && self.bk_ok && self.sharp_ok
    }

    pub fn ns(&self) -> NSType {
        NSType::new(self.n, self.s)
    }
}

fn sharp_value(n: usize, s: usize) -> i64 {
    2 * n as i64 - s as i64
}

fn constraints(n: usize, s: usize) -> (bool, bool, bool) {
    (
        (n + 12 * s) % 10 == 0,
        n + 7 * s >= 20,
        sharp_value(n, s) >= 5,
    )
}

/// Smallest `b1` compatible with `b2− ≥ s + 1`, i.e. `⌈4 − 2(2n − s)/5⌉`,
/// clamped at zero.
pub fn b1_lower_bound(n: usize, s: usize) -> i64 {
    let num = 20 - 2 * sharp_value(n, s);
    // ceil(num / 5) for any sign of num
    let ceil = num.div_euclid(5) + i64::from(num.rem_euclid(5) != 0);
    ceil.max(0)
}

fn is_known(n: usize, s: usize) -> bool {
    PLOTTED_KNOWN.contains(&(n, s)) || crate::catalog::known_types().contains(&NSType::new(n, s))
}

/// Evaluates the three constraints at `(n, s)`.
pub fn admissible(n: usize, s: usize) -> Result<NSReport> {
    if n == 0 && s == 0 {
        return Err(Error::Precondition(
            "(0,0) is the trivial fibration; the constraints do not apply".into(),
        ));
    }
    let (mod10_ok, bk_ok, sharp_ok) = constraints(n, s);
    let ok = mod10_ok && bk_ok && sharp_ok;
    let b1_forced = (ok && sharp_value(n, s) == 5).then_some(2);
    let b2_plus = b1_forced.map(|b1| b2plus(n, s, b1)).transpose()?;
    let status = if !ok {
        CatalogStatus::Inadmissible
    } else if is_known(n, s) {
        CatalogStatus::Known
    } else {
        CatalogStatus::Unknown
    };
    Ok(NSReport {
        n,
        s,
        mod10_ok,
        bk_ok,
        sharp_ok,
        b1_forced,
        b2_plus,
        status,
    })
}

/// `b2+ = (n + 2s)/5 + b1 − 3`.
pub fn b2plus(n: usize, s: usize, b1: i64) -> Result<i64> {
    let num = n as i64 + 2 * s as i64;
    if num % 5 != 0 {
        return Err(Error::NonIntegral(format!(
            "b2+ = ({n} + 2·{s})/5 + b1 - 3 is not an integer"
        )));
    }
    Ok(num / 5 + b1 - 3)
}

/// The types with `b2+ = 1`. Such a type lies on `n + 2s = 10k` with
/// `b1 = 4 − 2k`, so only `k = 1, 2` can occur.
pub fn b2plus_one_types() -> Vec<(NSReport, i64)> {
    let mut out = Vec::new();
    for k in 1..=2usize {
        let b1 = 4 - 2 * k as i64;
        for s in (0..=5 * k).rev() {
            let n = 10 * k - 2 * s;
            let Ok(r) = admissible(n, s) else { continue };
            if r.admissible() && b1 >= b1_lower_bound(n, s) {
                out.push((r, b1));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub k: i64,
    pub n: usize,
    pub s: usize,
    pub b1: i64,
    pub euler: i64,
    pub signature: i64,
    pub b2: i64,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub sharp_value: i64,
    pub admissible: bool,
    pub indecomposable: bool,
}

/// Invariants forced on a fibration of type `(2k, 4k − 5)`.
pub fn family_invariants(k: i64) -> Result<FamilyReport> {
    if k < 2 {
        return Err(Error::Precondition(format!("family index must be at least 2, got {k}")));
    }
    let n = 2 * k as usize;
    let s = 4 * k as usize - 5;
    let report = admissible(n, s)?;
    let b1 = report.b1_forced.unwrap_or(2);
    let euler = n as i64 + s as i64 - 4;
    let signature = signature_from_type(NSType::new(n, s))?;
    let b2 = euler - 2 + 2 * b1;
    let b2_plus = b2plus(n, s, b1)?;
    let indecomposable = matches!(indecomposability_check(n, s)?, Decomposition::Indecomposable(_));
    Ok(FamilyReport {
        k,
        n,
        s,
        b1,
        euler,
        signature,
        b2,
        b2_plus,
        b2_minus: b2 - b2_plus,
        sharp_value: sharp_value(n, s),
        admissible: report.admissible(),
        indecomposable,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// `2n − s = 5`: two summands would each contribute at least 5.
    SharpLine,
    /// No pair of admissible types adds up to `(n, s)`.
    NoAdmissibleSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    Indecomposable(Certificate),
    /// Admissible splits exist, so the constraints alone decide nothing.
    Inconclusive(Vec<(NSType, NSType)>),
}

/// All ways to write `(n, s)` as a sum of two admissible types, each pair
/// listed once with the lexicographically smaller summand first.
pub fn admissible_splits(n: usize, s: usize) -> Vec<(NSType, NSType)> {
    let mut out = Vec::new();
    for n1 in 0..=n {
        for s1 in 0..=s {
            let (n2, s2) = (n - n1, s - s1);
            if (n1, s1) > (n2, s2) || (n1 == 0 && s1 == 0) || (n2 == 0 && s2 == 0) {
                continue;
            }
            let ok = |a, b| {
                let (x, y, z) = constraints(a, b);
                x && y && z
            };
            if ok(n1, s1) && ok(n2, s2) {
                out.push((NSType::new(n1, s1), NSType::new(n2, s2)));
            }
        }
    }
    out
}

pub fn indecomposability_check(n: usize, s: usize) -> Result<Decomposition> {
    let r = admissible(n, s)?;
    if !r.admissible() {
        return Err(Error::Precondition(format!("({n},{s}) is not admissible")));
    }
    if sharp_value(n, s) == 5 {
        return Ok(Decomposition::Indecomposable(Certificate::SharpLine));
    }
    let splits = admissible_splits(n, s);
    if splits.is_empty() {
        Ok(Decomposition::Indecomposable(Certificate::NoAdmissibleSplit))
    } else {
        Ok(Decomposition::Inconclusive(splits))
    }
}

/// Admissible points of the window, sorted by `(n, s)`.
pub fn enumerate_types(n_max: usize, s_max: usize) -> Result<Vec<NSReport>> {
    if n_max > 100 || s_max > 100 {
        return Err(Error::Precondition(format!(
            "window ({n_max},{s_max}) too large; both bounds must be at most 100"
        )));
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        for s in 0..=s_max {
            if n == 0 && s == 0 {
                continue;
            }
            let r = admissible(n, s)?;
            if r.admissible() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for FigureFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(FigureFormat::Csv),
            "svg" => Ok(FigureFormat::Svg),
            _ => Err(Error::Precondition(format!("format must be csv or svg, got `{s}`"))),
        }
    }
}

pub const CSV_HEADER: &str = "n,s,status,b1_forced,b2_plus";

fn opt(x: Option<i64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render_csv(reports: &[NSReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            r.s,
            r.status,
            opt(r.b1_forced),
            opt(r.b2_plus)
        );
    }
    out
}

/// Endpoints of the segment `2n − s = c` inside `[0, n_max] × [0, s_max]`.
pub fn line_segment(c: i64, n_max: usize, s_max: usize) -> Option<((f64, f64), (f64, f64))> {
    let c = c as f64;
    let (nm, sm) = (n_max as f64, s_max as f64);
    // s = 2n - c, so s = 0 at n = c/2 and s = s_max at n = (s_max + c)/2.
    let start = if c >= 0.0 { (c / 2.0, 0.0) } else { (0.0, -c) };
    let mut end = ((sm + c) / 2.0, sm);
    if end.0 > nm {
        end = (nm, 2.0 * nm - c);
    }
    (start.0 <= nm && start.1 <= sm && end.1 >= start.1).then_some((start, end))
}

pub fn render_svg(reports: &[NSReport], n_max: usize, s_max: usize) -> String {
    const SCALE: f64 = 30.0;
    const MARGIN: f64 = 40.0;
    let width = n_max as f64 * SCALE + 2.0 * MARGIN;
    let height = s_max as f64 * SCALE + 2.0 * MARGIN;
    let x = |n: f64| MARGIN + n * SCALE;
    let y = |s: f64| height - MARGIN - s * SCALE;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0.0),
        y(0.0),
        x(n_max as f64),
        y(0.0)
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0.0),
        y(0.0),
        x(0.0),
        y(s_max as f64)
    );
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-size="14">n</text>"#,
        x(n_max as f64) + 10.0,
        y(0.0) + 5.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-size="14">s</text>"#,
        x(0.0) - 5.0,
        y(s_max as f64) - 10.0
    );
    for (c, color) in [(3, "red"), (5, "blue")] {
        if let Some(((n1, s1), (n2, s2))) = line_segment(c, n_max, s_max) {
            let _ = writeln!(
                out,
                r#"  <line class="bound" data-c="{c}" data-n1="{n1}" data-s1="{s1}" data-n2="{n2}" data-s2="{s2}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
                x(n1),
                y(s1),
                x(n2),
                y(s2)
            );
        }
    }
    for r in reports {
        let fill = if r.status == CatalogStatus::Known { "black" } else { "none" };
        let _ = writeln!(
            out,
            r#"  <circle data-n="{}" data-s="{}" data-status="{}" cx="{}" cy="{}" r="5" fill="{fill}" stroke="black"/>"#,
            r.n,
            r.s,
            r.status,
            x(r.n as f64),
            y(r.s as f64)
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_figure(reports: &[NSReport], format: FigureFormat, n_max: usize, s_max: usize) -> String {
    match format {
        FigureFormat::Csv => render_csv(reports),
        FigureFormat::Svg => render_svg(reports, n_max, s_max),
    }
}

pub fn emit_figure(
    reports: &[NSReport],
    format: FigureFormat,
    n_max: usize,
    s_max: usize,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, render_figure(reports, format, n_max, s_max))?;
    Ok(())
}
