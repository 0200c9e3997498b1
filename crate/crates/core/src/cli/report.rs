use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::parse::{format_complex, format_complex_short};
use crate::riley::{
    longitude_trace_closed, longitude_trace_direct, riley_roots, NonabelianRep, RileyRoots,
};
use crate::torsion::{surgery_torsion, tap_closed, torsion_knot, SurgerySlope};
use crate::{Error, Result, C64};

pub type Pair = [f64; 2];

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn unpair(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotJson {
    pub m: i64,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TapJson {
    pub cm1: Pair,
    pub c0: Pair,
    pub c1: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurgeryJson {
    pub p: i64,
    pub q: i64,
    pub torsion: Option<Pair>,
    pub extension_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub y: Pair,
    pub z: Pair,
    pub residual: f64,
    pub tap: TapJson,
    pub torsion_knot: Option<Pair>,
    pub longitude_trace: Pair,
    pub surgery: Option<SurgeryJson>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedJson {
    pub y: Pair,
    pub flags: Vec<String>,
}

/// Everything `invariants` reports for one knot and meridian trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub knot: KnotJson,
    pub x: Pair,
    pub roots: Vec<RootJson>,
    #[serde(default)]
    pub excluded: Vec<ExcludedJson>,
}

impl InvariantsReport {
    /// Largest Riley residual over the reported roots.
    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// Whether any root carries a flag that marks a numerical failure.
    pub fn has_numerical_failure(&self) -> bool {
        self.roots
            .iter()
            .any(|r| r.flags.iter().any(|f| f == "surgery_dual_path_mismatch"))
    }
}

fn root_entry(rep: &NonabelianRep, slope: Option<SurgerySlope>) -> Result<RootJson> {
    let tap = tap_closed(rep);
    let torsion = match torsion_knot(rep) {
        Ok(t) => Some(pair(t.value)),
        Err(Error::ParabolicMeridian) => None,
        Err(e) => return Err(e),
    };
    let trace = longitude_trace_closed(rep).unwrap_or_else(|_| longitude_trace_direct(rep));
    let mut flags: Vec<String> = rep.flags.iter().map(|f| f.as_str().to_string()).collect();
    let surgery = match slope {
        None => None,
        Some(slope) => {
            let residual = crate::torsion::surgery_extension_residual(rep, slope);
            let torsion = match surgery_torsion(rep, slope) {
                Ok(t) => {
                    flags.extend(t.flags.iter().map(|f| f.as_str().to_string()));
                    Some(pair(t.value))
                }
                Err(Error::MeridianTraceDegenerate) => None,
                Err(Error::DualPathMismatch(_)) | Err(Error::DegenerateDenominator(_)) => {
                    flags.push("surgery_dual_path_mismatch".to_string());
                    None
                }
                Err(e) => return Err(e),
            };
            Some(SurgeryJson {
                p: slope.p(),
                q: slope.q(),
                torsion,
                extension_residual: residual,
            })
        }
    };
    Ok(RootJson {
        y: pair(rep.y),
        z: pair(rep.z),
        residual: rep.riley_residual,
        tap: TapJson {
            cm1: pair(tap.coeff(-1)),
            c0: pair(tap.coeff(0)),
            c1: pair(tap.coeff(1)),
        },
        torsion_knot: torsion,
        longitude_trace: pair(trace),
        surgery,
        flags,
    })
}

pub fn build_report_from(
    m: i64,
    n: i64,
    x: C64,
    roots: &RileyRoots,
    slope: Option<SurgerySlope>,
) -> Result<InvariantsReport> {
    Ok(InvariantsReport {
        knot: KnotJson { m, n },
        x: pair(x),
        roots: roots
            .reps
            .iter()
            .map(|rep| root_entry(rep, slope))
            .collect::<Result<_>>()?,
        excluded: roots
            .excluded
            .iter()
            .map(|&y| ExcludedJson {
                y: pair(y),
                flags: vec!["reducible_candidate".to_string()],
            })
            .collect(),
    })
}

pub fn build_report(m: i64, n: i64, x: C64, slope: Option<SurgerySlope>) -> Result<InvariantsReport> {
    let roots = riley_roots(m, n, x)?;
    build_report_from(m, n, x, &roots, slope)
}

/// JSON number formatting with 17 significant digits; non-finite values
/// become `null`.
struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if !v.is_finite() {
            return w.write_all(b"null");
        }
        let v = if v == 0.0 { 0.0 } else { v };
        write!(w, "{v:.16e}")
    }
}

pub fn write_json<W: Write + ?Sized>(report: &InvariantsReport, w: &mut W) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *w, FixedDigits);
    report.serialize(&mut ser).map_err(io::Error::other)?;
    writeln!(w)
}

fn opt_complex(p: Option<Pair>) -> String {
    p.map(|p| format_complex(unpair(p))).unwrap_or_default()
}

pub fn write_csv<W: Write + ?Sized>(report: &InvariantsReport, w: &mut W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "m", "n", "x", "root", "y", "z", "residual", "cm1", "c0", "c1", "torsion_knot",
        "longitude_trace", "p", "q", "surgery_torsion", "extension_residual", "flags",
    ])?;
    let x = format_complex(unpair(report.x));
    for (i, r) in report.roots.iter().enumerate() {
        let (p, q, st, er) = match &r.surgery {
            Some(s) => (
                s.p.to_string(),
                s.q.to_string(),
                opt_complex(s.torsion),
                format!("{:.16e}", s.extension_residual),
            ),
            None => Default::default(),
        };
        out.write_record([
            report.knot.m.to_string(),
            report.knot.n.to_string(),
            x.clone(),
            i.to_string(),
            format_complex(unpair(r.y)),
            format_complex(unpair(r.z)),
            format!("{:.16e}", r.residual),
            format_complex(unpair(r.tap.cm1)),
            format_complex(unpair(r.tap.c0)),
            format_complex(unpair(r.tap.c1)),
            opt_complex(r.torsion_knot),
            format_complex(unpair(r.longitude_trace)),
            p,
            q,
            st,
            er,
            r.flags.join(";"),
        ])?;
    }
    out.flush()
}

pub fn write_pretty<W: Write + ?Sized>(report: &InvariantsReport, w: &mut W) -> io::Result<()> {
    let s = |p: Pair| format_complex_short(unpair(p));
    writeln!(
        w,
        "J({},{}) at x = {}: {} nonabelian representation(s)",
        2 * report.knot.m,
        2 * report.knot.n,
        s(report.x),
        report.roots.len()
    )?;
    for (i, r) in report.roots.iter().enumerate() {
        writeln!(w, "root {i}")?;
        writeln!(w, "  y                {}", s(r.y))?;
        writeln!(w, "  z                {}", s(r.z))?;
        writeln!(w, "  residual         {:e}", r.residual)?;
        writeln!(
            w,
            "  twisted Alexander ({}) t^-1 + ({}) + ({}) t",
            s(r.tap.cm1),
            s(r.tap.c0),
            s(r.tap.c1)
        )?;
        match r.torsion_knot {
            Some(t) => writeln!(w, "  knot torsion     {}", s(t))?,
            None => writeln!(w, "  knot torsion     n/a: x=2")?,
        }
        writeln!(w, "  longitude trace  {}", s(r.longitude_trace))?;
        if let Some(sg) = &r.surgery {
            match sg.torsion {
                Some(t) => writeln!(w, "  surgery {}/{}      torsion {}", sg.p, sg.q, s(t))?,
                None => writeln!(w, "  surgery {}/{}      torsion n/a: x in {{0, 2}}", sg.p, sg.q)?,
            }
            writeln!(w, "  extension residual {:e}", sg.extension_residual)?;
        }
        if !r.flags.is_empty() {
            writeln!(w, "  flags            {}", r.flags.join(", "))?;
        }
    }
    for e in &report.excluded {
        writeln!(w, "excluded y = {} ({})", s(e.y), e.flags.join(", "))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub x: C64,
    pub root: usize,
    pub y: C64,
    pub torsion_knot: Option<C64>,
    pub longitude_trace: C64,
}

/// One row per (grid point, root), roots in their sorted order.
pub fn table_rows(m: i64, n: i64, xs: &[C64]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &x in xs {
        let roots = riley_roots(m, n, x)?;
        for (i, rep) in roots.reps.iter().enumerate() {
            rows.push(TableRow {
                x,
                root: i,
                y: rep.y,
                torsion_knot: torsion_knot(rep).ok().map(|t| t.value),
                longitude_trace: longitude_trace_closed(rep)
                    .unwrap_or_else(|_| longitude_trace_direct(rep)),
            });
        }
    }
    Ok(rows)
}

pub fn write_table<W: Write + ?Sized>(rows: &[TableRow], w: &mut W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "root", "y", "torsion_knot", "longitude_trace"])?;
    for r in rows {
        out.write_record([
            format_complex(r.x),
            r.root.to_string(),
            format_complex(r.y),
            r.torsion_knot.map(format_complex).unwrap_or_default(),
            format_complex(r.longitude_trace),
        ])?;
    }
    out.flush()
}
